//! JSON documents: bundle round trips, tampering, pinned generator output
//! and replay of the checked-in fuzz seeds.

use std::path::Path;

use shadowfit::containment::SubspaceSampler;
use shadowfit::corpus::{cross_polytope, random_polytope, random_symmetric_polytope};
use shadowfit::counterexample::{construct, fresh_seed, verify_bundle};
use shadowfit::io::{
    parse_bundle_doc, parse_directions_doc, parse_input_doc, parse_polytope_doc, parse_rational,
    read_bundle, read_polytope, write_bundle, write_polytope, BundleDoc,
};
use shadowfit::linalg::{frac, int};

fn octahedron_bundle() -> shadowfit::counterexample::CounterexampleBundle {
    let l = cross_polytope(3);
    construct(&l, 2, SubspaceSampler::new(11, 10, 2), 200, &frac(1, 2)).unwrap()
}

#[test]
fn bundle_round_trip_verifies() {
    let b = octahedron_bundle();
    let text = write_bundle(&b);
    let back = read_bundle(&text).unwrap();
    assert_eq!(back, b);
    assert_eq!(write_bundle(&back), text);
    let check = verify_bundle(&back, fresh_seed(11), 300).unwrap();
    assert!(check.passed(), "{check:?}");
}

#[test]
fn tampered_bundles_fail_verification() {
    let b = octahedron_bundle();
    let doc = BundleDoc::from_bundle(&b);

    let mut no_slack = doc.clone();
    no_slack.alpha = "1".into();
    let check = verify_bundle(&no_slack.to_bundle().unwrap(), 5, 50).unwrap();
    assert!(!check.exact.alpha_above_one && !check.passed());

    let mut bad_multiplier = doc.clone();
    bad_multiplier.noncontainment[0].value = "5".into();
    let check = verify_bundle(&bad_multiplier.to_bundle().unwrap(), 5, 50).unwrap();
    assert!(!check.exact.certificate_verifies);

    // a scale past every shadow bound shows up in the sampled half
    let mut too_big = doc;
    too_big.alpha = "3".into();
    let check = verify_bundle(&too_big.to_bundle().unwrap(), 5, 50).unwrap();
    assert!(check.exact.passed() && !check.sampled.all_pass());
    assert!(check.sampled.first_failure.is_some());
}

#[test]
fn bundle_with_unknown_normal_is_rejected() {
    let mut doc = BundleDoc::from_bundle(&octahedron_bundle());
    doc.family[0].normal = vec!["7".into(), "0".into(), "0".into()];
    assert!(doc.to_bundle().is_err());
}

#[test]
fn golden_generator_output() {
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let cases = [
        ("random-2d-seed1.json", random_polytope(1, 2, 6, 5).unwrap()),
        ("random-3d-seed7.json", random_polytope(7, 3, 7, 4).unwrap()),
        ("symmetric-3d-seed2.json", random_symmetric_polytope(2, 3, 4, 3).unwrap()),
    ];
    for (file, p) in cases {
        let text = std::fs::read_to_string(golden.join(file)).unwrap();
        assert_eq!(read_polytope(&text).unwrap(), p, "{file}");
        assert_eq!(write_polytope(&p).trim(), text.trim(), "{file}");
    }
}

#[test]
fn rational_literals_normalize() {
    assert_eq!(parse_rational("-10/4").unwrap(), frac(-5, 2));
    assert_eq!(parse_rational("00012").unwrap(), int(12));
}

/// Every checked-in fuzz seed must parse or be rejected without panicking.
#[test]
fn fuzz_seeds_replay() {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus");
    let mut seen = 0;
    for (target, parse) in [
        ("parse_rational", (|s: &str| parse_rational(s).map(|_| ())) as fn(&str) -> _),
        ("polytope_doc", |s: &str| parse_polytope_doc(s).and_then(|d| d.to_polytope()).map(|_| ())),
        ("directions_doc", |s: &str| parse_directions_doc(s).and_then(|d| d.to_set()).map(|_| ())),
        ("input_doc", |s: &str| parse_input_doc(s).map(|_| ())),
        ("bundle_doc", |s: &str| parse_bundle_doc(s).and_then(|d| d.to_bundle()).map(|_| ())),
    ] {
        let dir = root.join(target);
        for entry in std::fs::read_dir(&dir).unwrap_or_else(|e| panic!("{}: {e}", dir.display())) {
            let bytes = std::fs::read(entry.unwrap().path()).unwrap();
            if let Ok(text) = std::str::from_utf8(&bytes) {
                let _ = parse(text);
            }
            seen += 1;
        }
    }
    assert!(seen >= 10);
}
