#![no_main]

use ainfty::instance::parse_series_json;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Some((&trunc, rest)) = data.split_first() else { return };
    let Ok(text) = std::str::from_utf8(rest) else { return };
    let trunc = u32::from(trunc % 16) + 1;
    if let Ok(s) = parse_series_json(text, trunc) {
        assert!(s.terms().all(|(k, _)| k < trunc));
    }
});
