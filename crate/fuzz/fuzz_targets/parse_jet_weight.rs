#![no_main]

use jetoper::json::*;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(v) = parse_text(text) else { return };
    if let Ok(w) = jet_weight_from_json(&v) {
        let out = jet_weight_to_json(&w);
        assert_eq!(jet_weight_to_json(&jet_weight_from_json(&out).unwrap()), out);
    }
});
