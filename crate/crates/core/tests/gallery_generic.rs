//! Gallery suites at scalars other than the CLI defaults, and codec roundtrips
//! on gallery objects.

use cocycle_core::codec::{decode, encode, Document};
use cocycle_core::gallery::{dim32_suite, dim81_suite, Family};
use cocycle_core::{Cyc, Report};

fn failures(r: &Report) -> Vec<String> {
    r.failures().map(|c| format!("{}  [{}]", c.line(), c.witness.clone().unwrap_or_default())).collect()
}

#[test]
fn dim32_families_at_generic_scalars() {
    for (f, n) in [(Family::F1, 8), (Family::F2, 8), (Family::F3, 4)] {
        let s = dim32_suite(f, Cyc::from_int(n, 2), Cyc::zeta(n, 1), Cyc::from_int(n, -3), 11).unwrap();
        assert!(s.report.all_pass(), "{f}: {:?}", failures(&s.report));
    }
}

#[test]
fn dim32_with_vanishing_scalars_is_the_biproduct() {
    let s = dim32_suite(Family::F2, Cyc::zero(8), Cyc::from_int(8, 4), Cyc::zero(8), 1).unwrap();
    assert!(s.report.all_pass(), "{:?}", failures(&s.report));
}

#[test]
fn dim81_at_distinct_scalars() {
    let n = 3;
    let s = dim81_suite(Cyc::from_int(n, 2), Cyc::from_int(n, 3), Cyc::zeta(n, 1).scale_int(5), 5).unwrap();
    assert!(s.report.all_pass(), "{:?}", failures(&s.report));
    // the reference values are exact at these scalars too
    let two = s.report.find("α(x1^2x2⊗x1x2^2) = qa1a2").unwrap();
    assert!(two.passed());
}

#[test]
fn gallery_dumps_roundtrip_byte_identically() {
    let s = dim32_suite(Family::F1, Cyc::from_int(8, 1), Cyc::from_int(8, 1), Cyc::from_int(8, 1), 0).unwrap();
    for (name, doc) in &s.dumps {
        let text = encode(doc);
        let back = decode(&text).unwrap();
        assert_eq!(&back, doc, "{name}");
        assert_eq!(encode(&back), text, "{name}");
    }
    let (_, bp) = s.dumps.iter().find(|(n, _)| n == "biproduct").unwrap();
    let Document::Algebra(a) = bp else { panic!("biproduct dump is an algebra") };
    assert_eq!(a.basis.len(), 32);
    assert_eq!(a.field_order, 8);
}
