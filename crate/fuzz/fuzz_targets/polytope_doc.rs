#![no_main]

use libfuzzer_sys::fuzz_target;
use shadowfit::io::{parse_polytope_doc, read_polytope, write_polytope};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(doc) = parse_polytope_doc(text) else {
        return;
    };
    // hulls are expensive; keep iterations fast
    if doc.vertices.len() > 12 || doc.dim > 3 {
        let _ = doc.points();
        return;
    }
    if let Ok(p) = doc.to_polytope() {
        let back = read_polytope(&write_polytope(&p)).expect("writer output parses");
        assert_eq!(back, p);
    }
});
