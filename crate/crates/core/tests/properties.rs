//! Randomized invariants.

use cocycle_core::codec::{decode, encode, Document};
use cocycle_core::gallery::{gamma32, random_bilinear_balanced, random_h_linear, rescaling_witness, Biproduct, Family, QLSDatum};
use cocycle_core::scalar::{gauss_binomial, q_integer};
use cocycle_core::twist::{is_two_cocycle, omega_extend, omega_restrict, twist_bialgebra};
use cocycle_core::{BilForm, Cyc, Rat};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::sync::OnceLock;

fn cyc(n: u32) -> impl Strategy<Value = Cyc> {
    prop::collection::vec((-6i64..=6, 1i64..=4), 0..6).prop_map(move |cs| {
        Cyc::from_coeffs(n, cs.into_iter().map(|(p, q)| Rat::new(p, q)).take(cocycle_core::scalar::phi(n)).collect())
    })
}

fn f1() -> &'static (QLSDatum, Biproduct) {
    static CELL: OnceLock<(QLSDatum, Biproduct)> = OnceLock::new();
    CELL.get_or_init(|| {
        let d = QLSDatum::dim32(Family::F1, Cyc::zero(8), Cyc::zero(8), Cyc::zero(8)).unwrap();
        let bp = Biproduct::new(&d).unwrap();
        (d, bp)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn field_axioms(a in cyc(12), b in cyc(12), c in cyc(12)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
        prop_assert_eq!(Cyc::parse(12, &a.to_coeff_string()).unwrap(), a);
    }

    #[test]
    fn q_pascal(n in 1i64..10, k in 1i64..10, ord in prop::sample::select(vec![2u32, 3, 4, 6, 8, 9, 12])) {
        // [n k] = [n-1 k-1] + q^k [n-1 k]
        let q = Cyc::zeta(ord, 1);
        let lhs = gauss_binomial(n, k, &q);
        let rhs = &gauss_binomial(n - 1, k - 1, &q) + &(&q.pow(k).unwrap() * &gauss_binomial(n - 1, k, &q));
        prop_assert_eq!(lhs, rhs);
        // (n)_q = 1 + q(n-1)_q
        let qn = q_integer(n as u32, &q);
        prop_assert_eq!(qn, &Cyc::one(ord) + &(&q * &q_integer(n as u32 - 1, &q)));
    }

    #[test]
    fn omega_correspondence_is_bijective(seed in any::<u64>()) {
        let (_, bp) = f1();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = random_h_linear(&bp.r, &mut rng).unwrap();
        prop_assert_eq!(omega_restrict(&omega_extend(&u, &bp.r).unwrap(), &bp.r).unwrap(), u);
        let g = random_bilinear_balanced(&bp.datum, &mut rng).unwrap();
        prop_assert_eq!(omega_extend(&omega_restrict(&g, &bp.r).unwrap(), &bp.r).unwrap(), g);
    }

    #[test]
    fn cocycle_documents_roundtrip(vals in prop::collection::vec(cyc(8), 16)) {
        let form = BilForm { dim: 4, vals };
        let doc = Document::Cocycle { basis: (0..4).map(|i| format!("e{i}")).collect(), field_order: 8, form };
        let text = encode(&doc);
        prop_assert_eq!(decode(&text).unwrap(), doc);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn lifting_scalars_rescale(l1 in 1i64..4, l2 in -3i64..-1, a in -3i64..4) {
        let d = QLSDatum::dim32(Family::F1, Cyc::from_int(8, 1), Cyc::from_int(8, 2), Cyc::from_int(8, a)).unwrap();
        prop_assert_eq!(rescaling_witness(&d, &Cyc::from_int(8, l1), &Cyc::from_int(8, l2)).unwrap(), None);
    }

    #[test]
    fn gamma_family_twists_back(a1 in -3i64..4, a2 in -3i64..4, a in -3i64..4) {
        let (d0, bp) = f1();
        let d = d0.with_scalars(Cyc::from_int(8, a1), Cyc::from_int(8, a2), Cyc::from_int(8, a)).unwrap();
        let g = gamma32(&d, bp);
        let cert = is_two_cocycle(&g, bp.a(), Some(&bp.hsub())).unwrap();
        prop_assert!(cert.in_z2h());
        let t = twist_bialgebra(bp.a(), &cert).unwrap();
        let back = twist_bialgebra(&t, &is_two_cocycle(&cert.inverse, &t, None).unwrap()).unwrap();
        prop_assert_eq!(&back, bp.a());
    }
}
