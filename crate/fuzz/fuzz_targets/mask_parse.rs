#![no_main]

use libfuzzer_sys::fuzz_target;

use chanprob::Mask;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(mask) = text.parse::<Mask>() {
            // display round-trips through the parser
            let echoed: Mask = mask.to_string().parse().unwrap();
            assert_eq!(echoed, mask);
        }
    }
});
