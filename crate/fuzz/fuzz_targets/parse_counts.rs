#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(counts) = gepner::parse::parse_counts(s) {
            assert!(!counts.0.is_empty());
            let _ = counts.total();
        }
    }
});
