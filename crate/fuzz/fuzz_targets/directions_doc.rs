#![no_main]

use libfuzzer_sys::fuzz_target;
use shadowfit::io::{parse_directions_doc, DirectionsDoc};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(set) = parse_directions_doc(text).and_then(|d| d.to_set()) {
        let doc = DirectionsDoc::from_set(&set);
        assert_eq!(doc.to_set().expect("writer output parses"), set);
    }
});
