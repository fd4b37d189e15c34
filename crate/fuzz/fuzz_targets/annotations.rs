#![no_main]

use econlex::annotate::{aggregate, parse_annotations};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(sheets) = parse_annotations(data) {
        for s in &sheets {
            if let Ok(t) = aggregate(s) {
                assert!((-1.0..=1.0).contains(&t.median_score));
            }
        }
    }
});
