#![no_main]

use econlex::corpus::ConceptList;
use econlex::depparse::{extract_noun_phrases, modifiers_are_grounded, parse_conllu_str, RelationConfig};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(sentences) = parse_conllu_str(text) else { return };
    let concepts = ConceptList::parse("economy\ninflation\ninterest rate\n").unwrap();
    let config = RelationConfig::default();
    for s in &sentences {
        for p in extract_noun_phrases(s, &concepts, &config) {
            assert!(modifiers_are_grounded(s, &p));
        }
    }
});
