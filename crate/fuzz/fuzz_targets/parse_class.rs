#![no_main]

use jetoper::json::*;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(v) = parse_text(text) else { return };
    if let Ok(c) = class_from_json(&v) {
        let out = class_to_json(&c);
        assert_eq!(class_to_json(&class_from_json(&out).unwrap()), out);
    }
});
