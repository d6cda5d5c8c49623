#![no_main]

use libfuzzer_sys::fuzz_target;
use shadowfit::io::{parse_input_doc, InputDoc};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    match parse_input_doc(text) {
        Ok(InputDoc::Polytope(doc)) => {
            let _ = doc.points();
        }
        Ok(InputDoc::Directions(doc)) => {
            let _ = doc.to_set();
        }
        Err(_) => {}
    }
});
