#![no_main]

use libfuzzer_sys::fuzz_target;
use shadowfit::io::{parse_bundle_doc, BundleDoc};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(doc) = parse_bundle_doc(text) else {
        return;
    };
    if doc.l.vertices.len() > 12 || doc.s.vertices.len() > 12 || doc.l.dim > 3 {
        return;
    }
    if let Ok(bundle) = doc.to_bundle() {
        let again = BundleDoc::from_bundle(&bundle);
        assert_eq!(again.to_bundle().expect("writer output parses"), bundle);
    }
});
