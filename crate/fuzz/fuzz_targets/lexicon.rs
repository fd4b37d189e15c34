#![no_main]

use econlex::lexicon::{parse_lexicon, Granularity, LexiconFormat};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    for format in [LexiconFormat::Tsv, LexiconFormat::Csv] {
        for g in [Granularity::Categorical, Granularity::FineGrained] {
            if let Ok(lex) = parse_lexicon("fuzz", text, format, g) {
                assert!(lex.iter().all(|(_, s)| (-1.0..=1.0).contains(&s)));
                let again = parse_lexicon("fuzz", &lex.to_delimited(format), format, g).unwrap();
                assert_eq!(again.entries(), lex.entries());
            }
        }
    }
});
