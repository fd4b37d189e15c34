#![no_main]

use econlex::annotate::parse_review_flags;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let _ = parse_review_flags(data);
});
