#![no_main]

use econlex::econ::{parse_series_csv, write_series_csv};
use econlex::Frequency;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    for freq in [Frequency::Monthly, Frequency::Daily] {
        if let Ok(s) = parse_series_csv(data, freq) {
            let text = write_series_csv(&s, freq);
            assert_eq!(parse_series_csv(text.as_bytes(), freq).unwrap(), s);
        }
    }
});
