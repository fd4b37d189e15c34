#![no_main]

use econlex::corpus::{extract_records, ingest, ConceptList, IngestOptions};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let docs: Vec<_> = ingest(data, IngestOptions::default()).filter_map(Result::ok).collect();
    let concepts = ConceptList::parse("economy\ninflation\ninterest rates\n").unwrap();
    for r in extract_records(&docs, &concepts) {
        assert!(!r.tokens.is_empty());
        assert!(!r.matched_concepts.is_empty());
    }
    let _ = ingest(data, IngestOptions { strict: true, exclude_topic: Some("sport".into()) }).count();
});
