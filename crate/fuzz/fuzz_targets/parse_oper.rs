#![no_main]

use jetoper::json::*;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(v) = parse_text(text) else { return };
    if let Ok(doc) = oper_from_json(&v) {
        let out = oper_to_json(&doc.alg, doc.order, &doc.x);
        let again = oper_from_json(&out).unwrap();
        assert_eq!(oper_to_json(&again.alg, again.order, &again.x), out);
    }
});
