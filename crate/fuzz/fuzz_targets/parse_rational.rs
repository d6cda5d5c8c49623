#![no_main]

use libfuzzer_sys::fuzz_target;
use shadowfit::io::{format_rational, parse_rational};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(r) = parse_rational(text) {
        // lowest terms survive a second pass unchanged
        let again = parse_rational(&format_rational(&r)).expect("writer output parses");
        assert_eq!(again, r);
    }
});
