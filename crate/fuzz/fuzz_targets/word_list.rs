#![no_main]

use econlex::lexicon::{parse_word_list, Lexicon};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let (neg, pos) = text.split_once('\u{0}').unwrap_or((text, ""));
    let _ = Lexicon::from_word_lists("fuzz", parse_word_list(neg), parse_word_list(pos));
});
