#![no_main]

use econlex::depparse::parse_votes;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(votes) = parse_votes(text) {
        assert!(votes.keys().all(|k| !k.is_empty()));
    }
});
