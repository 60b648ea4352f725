#![no_main]

use jetoper::json::*;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(v) = parse_text(text) else { return };
    if let Ok((alg, c)) = connection_from_json(&v) {
        let out = connection_to_json(&alg, &c);
        let (alg2, c2) = connection_from_json(&out).unwrap();
        assert_eq!(connection_to_json(&alg2, &c2), out);
    }
});
