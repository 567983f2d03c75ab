#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(word) = gepner::parse::parse_word(s) {
            // anything that parses must be a valid word the statistics accept
            assert!(word.0.iter().all(|&l| l >= 1));
            let _ = gepner::stats::gep(&word);
            let _ = gepner::stats::inv(&word);
            let _ = gepner::stats::maj(&word);
        }
    }
});
