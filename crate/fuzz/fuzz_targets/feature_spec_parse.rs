#![no_main]

use libfuzzer_sys::fuzz_target;

use chanprob::GaussianFeatureSpec;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(spec) = text.parse::<GaussianFeatureSpec>() {
            assert!(spec.stddev > 0.0);
            assert!(spec.mean.is_finite());
        }
    }
});
