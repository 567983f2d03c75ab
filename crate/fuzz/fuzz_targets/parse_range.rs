#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok((lo, hi)) = gepner::parse::parse_range(s) {
            assert!(1 <= lo && lo <= hi);
        }
    }
});
