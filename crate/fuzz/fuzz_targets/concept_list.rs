#![no_main]

use econlex::corpus::{tokenize, ConceptList};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(list) = ConceptList::parse(text) {
        let tokens = tokenize(text);
        for m in list.match_tokens(&tokens) {
            assert!(list.contains(&m));
        }
    }
});
