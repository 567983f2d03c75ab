#![no_main]

use libfuzzer_sys::fuzz_target;

use gepner::stats::{gep, GepState, Word};

fuzz_target!(|data: &[u8]| {
    // map arbitrary bytes onto {1,2,3}-words and check the O(1)-per-letter
    // replay against the cubic definition
    let letters: Vec<u32> = data.iter().take(64).map(|b| (b % 3) as u32 + 1).collect();
    let word = Word::new(letters).unwrap();
    let replayed = GepState::replay(&word).unwrap();
    assert_eq!(replayed.gep, gep(&word));
});
