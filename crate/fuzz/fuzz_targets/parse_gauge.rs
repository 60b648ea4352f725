#![no_main]

use jetoper::json::*;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(v) = parse_text(text) else { return };
    for rank in 1..=2 {
        let alg = jetoper::liealg::ChevalleyAlgebra::build("A", rank).unwrap();
        if let Ok(s) = gauge_from_json(&alg, &v) {
            let out = gauge_to_json(&alg, &s);
            assert_eq!(gauge_to_json(&alg, &gauge_from_json(&alg, &out).unwrap()), out);
        }
    }
});
