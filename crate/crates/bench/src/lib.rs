//! Shared fixtures for the kernel benchmarks.

use cocycle_core::gallery::{gamma32, Biproduct, Family, QLSDatum};
use cocycle_core::{BilForm, Cyc};

pub struct Fixture {
    pub datum: QLSDatum,
    pub biproduct: Biproduct,
    pub gamma: BilForm,
}

/// Dimension-32 family F1 with a₁ = 2, a₂ = 3, a = 5.
pub fn dim32() -> Fixture {
    let n = 8;
    let datum = QLSDatum::dim32(Family::F1, Cyc::from_int(n, 2), Cyc::from_int(n, 3), Cyc::from_int(n, 5)).expect("valid datum");
    let biproduct = Biproduct::new(&datum).expect("biproduct");
    let gamma = gamma32(&datum, &biproduct);
    Fixture { datum, biproduct, gamma }
}

/// Dimension-81 quantum plane with a₁ = a₂ = 1, a = 2.
pub fn dim81() -> QLSDatum {
    QLSDatum::dim81(Cyc::from_int(3, 1), Cyc::from_int(3, 1), Cyc::from_int(3, 2)).expect("valid datum")
}
