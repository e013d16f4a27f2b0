#![no_main]

use libfuzzer_sys::fuzz_target;

use chanprob::{Effect, ProductSpace, Space};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let test: ProductSpace = Space::binary("Test", "t", "f").into();
    if let Ok(effect) = Effect::parse(&test, text) {
        assert!(effect.values().iter().all(|v| v.is_finite() && *v >= 0.0));
    }
    // a two-wire space exercises the dotted-tuple label syntax
    let pair = ProductSpace::new(vec![
        Space::binary("A", "a", "b"),
        Space::binary("B", "u", "v"),
    ]);
    let _ = Effect::parse(&pair, text);
});
