#![no_main]

use libfuzzer_sys::fuzz_target;

use gepner::envelope::Envelope;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(env) = Envelope::from_json(s) {
            // canonical serialization must be a fixed point
            let once = env.to_canonical_json();
            let twice = Envelope::from_json(&once).unwrap().to_canonical_json();
            assert_eq!(once, twice);
        }
    }
});
