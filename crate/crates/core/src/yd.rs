//! Yetter-Drinfeld modules over a Hopf algebra H, the braiding, braided
//! tensor coalgebras and the maps Ψ and Φ.

use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hopfcore::{AlgebraPresentation, Coalgebra, Term2};
use crate::linalg::{Acc, LinMap, SparseVec};
use crate::report::Report;
use crate::scalar::Cyc;

/// Left action and left coaction of `hopf` on a basis-indexed space.
#[derive(Clone, Debug)]
pub struct YdStructure {
    pub hopf: Arc<AlgebraPresentation>,
    pub basis: Vec<String>,
    /// act[h][v] = h·v.
    pub act: Vec<Vec<SparseVec>>,
    /// coact[v] = Σ v₍₋₁₎ ⊗ v₍₀₎ as (h, v', coefficient).
    pub coact: Vec<Vec<Term2>>,
}

impl PartialEq for YdStructure {
    fn eq(&self, o: &Self) -> bool {
        self.act == o.act && self.coact == o.coact && *self.hopf == *o.hopf
    }
}

/// Coalgebra object of the YD category; `one` is the coaugmentation if any.
#[derive(Clone, Debug, PartialEq)]
pub struct BraidedCoalgebra {
    pub yd: YdStructure,
    pub coalg: Coalgebra,
    pub one: Option<SparseVec>,
}

fn same_hopf(a: &Arc<AlgebraPresentation>, b: &Arc<AlgebraPresentation>) -> Result<()> {
    if Arc::ptr_eq(a, b) || **a == **b {
        Ok(())
    } else {
        Err(Error::Invalid("structures are over different Hopf algebras".into()))
    }
}

impl YdStructure {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn n(&self) -> u32 {
        self.hopf.field_order
    }

    /// Trivial action ε(h)v and coaction 1⊗v.
    pub fn trivial(hopf: Arc<AlgebraPresentation>, basis: Vec<String>) -> Result<Self> {
        let eps = hopf.coalg()?.eps.clone();
        let unit = hopf.one();
        let d = basis.len();
        let n = hopf.field_order;
        let act = (0..hopf.dim()).map(|h| (0..d).map(|v| SparseVec::basis(v, n).scale(&eps[h])).collect()).collect();
        let coact = (0..d).map(|v| unit.0.iter().map(|(h, c)| (*h, v, c.clone())).collect()).collect();
        Ok(YdStructure { hopf, basis, act, coact })
    }

    /// x·v for x ∈ H, v ∈ V given as vectors.
    pub fn act_vec(&self, x: &SparseVec, v: &SparseVec) -> SparseVec {
        let mut acc = Acc::new(self.dim());
        for (h, a) in &x.0 {
            for (i, b) in &v.0 {
                acc.add_vec(&self.act[*h][*i], &(a * b));
            }
        }
        acc.finish()
    }

    /// Basis element h acting on a vector.
    pub fn act_basis(&self, h: usize, v: &SparseVec) -> SparseVec {
        let mut acc = Acc::new(self.dim());
        for (i, b) in &v.0 {
            acc.add_vec(&self.act[h][*i], b);
        }
        acc.finish()
    }

    /// ρ(v) as a vector in H⊗V, index h·dim + v.
    pub fn coact_vec(&self, v: &SparseVec) -> SparseVec {
        let d = self.dim();
        let mut e = Vec::new();
        for (i, a) in &v.0 {
            for (h, w, c) in &self.coact[*i] {
                e.push((h * d + w, a * c));
            }
        }
        SparseVec::from_entries(e)
    }

    /// The action as a linear map per basis element of H.
    pub fn action_map(&self, h: usize) -> LinMap {
        LinMap { dom: self.dim(), cod: self.dim(), cols: self.act[h].clone() }
    }
}

/// Module, comodule and YD compatibility axioms, exhaustive on basis tuples.
pub fn validate_yd(v: &YdStructure) -> Result<Report> {
    let h = &*v.hopf;
    let (m, c, s) = (h.alg()?, h.coalg()?, h.s()?);
    let (hd, d) = (h.dim(), v.dim());
    if v.act.len() != hd || v.act.iter().any(|r| r.len() != d) || v.coact.len() != d {
        return Err(Error::Dimension("YD tables do not match the space".into()));
    }
    let n = v.n();
    let label = |i: usize| v.basis[i].clone();
    let mut rep = Report::new();
    rep.timed("module unit", || {
        (0..d).find_map(|i| {
            let e = SparseVec::basis(i, n);
            (v.act_vec(&m.unit, &e) != e).then(|| label(i))
        })
    });
    rep.timed("module associativity", || {
        (0..hd * hd).into_par_iter().find_map_first(|xy| {
            let (x, y) = (xy / hd, xy % hd);
            (0..d).find_map(|i| {
                let l = v.act_vec(&m.mult[x][y], &SparseVec::basis(i, n));
                let r = v.act_basis(x, &v.act[y][i]);
                (l != r).then(|| format!("({}, {}, {})", h.label(x), h.label(y), label(i)))
            })
        })
    });
    rep.timed("comodule counit", || {
        (0..d).find_map(|i| {
            let mut acc = Acc::new(d);
            for (x, w, k) in &v.coact[i] {
                acc.add(*w, &(&c.eps[*x] * k));
            }
            (acc.finish() != SparseVec::basis(i, n)).then(|| label(i))
        })
    });
    rep.timed("comodule coassociativity", || {
        (0..d).into_par_iter().find_map_first(|i| {
            let mut l = Vec::new();
            let mut r = Vec::new();
            for (x, w, k) in &v.coact[i] {
                for (x1, x2, a) in &c.delta[*x] {
                    l.push(((x1 * hd + x2) * d + w, k * a));
                }
                for (y, u, b) in &v.coact[*w] {
                    r.push(((x * hd + y) * d + u, k * b));
                }
            }
            (SparseVec::from_entries(l) != SparseVec::from_entries(r)).then(|| label(i))
        })
    });
    rep.timed("YD compatibility", || {
        (0..hd * d).into_par_iter().find_map_first(|xi| {
            let (x, i) = (xi / d, xi % d);
            let lhs = v.coact_vec(&v.act[x][i]);
            let mut acc = Acc::new(hd * d);
            for (legs, k) in c.iterate(x, 2) {
                for (y, w, b) in &v.coact[i] {
                    let hy = m.mul(&m.mult[legs[0]][*y], &s.cols[legs[2]]);
                    let hw = &v.act[legs[1]][*w];
                    let kb = &k * b;
                    for (p, u) in &hy.0 {
                        for (q, t) in &hw.0 {
                            acc.add(p * d + q, &(&(u * t) * &kb));
                        }
                    }
                }
            }
            (lhs != acc.finish()).then(|| format!("({}, {})", h.label(x), label(i)))
        })
    });
    Ok(rep)
}

/// c_{V,W}(v⊗w) = v₍₋₁₎·w ⊗ v₍₀₎ from V⊗W (index v·dimW + w) to W⊗V.
pub fn braiding(v: &YdStructure, w: &YdStructure) -> Result<LinMap> {
    same_hopf(&v.hopf, &w.hopf)?;
    let (dv, dw) = (v.dim(), w.dim());
    let n = v.n();
    let cols = (0..dv * dw)
        .map(|k| {
            let (i, j) = (k / dw, k % dw);
            let mut acc = Acc::new(dw * dv);
            for (h, u, c) in &v.coact[i] {
                for (t, b) in &w.act[*h][j].0 {
                    acc.add(t * dv + u, &(c * b));
                }
            }
            let _ = n;
            acc.finish()
        })
        .collect();
    Ok(LinMap { dom: dv * dw, cod: dw * dv, cols })
}

/// Codiagonal YD structure on V⊗W, index v·dimW + w.
pub fn tensor_yd(v: &YdStructure, w: &YdStructure) -> Result<YdStructure> {
    same_hopf(&v.hopf, &w.hopf)?;
    let h = &*v.hopf;
    let (c, m) = (h.coalg()?, h.alg()?);
    let (dv, dw) = (v.dim(), w.dim());
    let basis: Vec<String> = (0..dv * dw).map(|k| format!("{}⊗{}", v.basis[k / dw], w.basis[k % dw])).collect();
    let act = (0..h.dim())
        .into_par_iter()
        .map(|x| {
            (0..dv * dw)
                .map(|k| {
                    let (i, j) = (k / dw, k % dw);
                    let mut e = Vec::new();
                    for (x1, x2, a) in &c.delta[x] {
                        for (p, u) in &v.act[*x1][i].0 {
                            for (q, t) in &w.act[*x2][j].0 {
                                e.push((p * dw + q, &(a * u) * t));
                            }
                        }
                    }
                    SparseVec::from_entries(e)
                })
                .collect()
        })
        .collect();
    let coact = (0..dv * dw)
        .map(|k| {
            let (i, j) = (k / dw, k % dw);
            let mut e: Vec<Term2> = Vec::new();
            for (h1, p, a) in &v.coact[i] {
                for (h2, q, b) in &w.coact[j] {
                    for (g, u) in &m.mult[*h1][*h2].0 {
                        e.push((*g, p * dw + q, &(a * b) * u));
                    }
                }
            }
            merge_terms(e)
        })
        .collect();
    Ok(YdStructure { hopf: v.hopf.clone(), basis, act, coact })
}

/// Sorts and merges (a, b, c) terms, dropping zeros.
pub fn merge_terms(mut e: Vec<Term2>) -> Vec<Term2> {
    e.sort_by_key(|x| (x.0, x.1));
    let mut out: Vec<Term2> = Vec::with_capacity(e.len());
    for (a, b, c) in e {
        match out.last_mut() {
            Some((p, q, d)) if *p == a && *q == b => *d += &c,
            _ => out.push((a, b, c)),
        }
    }
    out.retain(|t| !t.2.is_zero());
    out
}

/// C⊗D with the codiagonal YD structure and
/// Δ(x⊗y) = (x⁽¹⁾ ⊗ x⁽²⁾₍₋₁₎·y⁽¹⁾) ⊗ (x⁽²⁾₍₀₎ ⊗ y⁽²⁾), ε = ε⊗ε.
pub fn braided_tensor_coalgebra(cc: &BraidedCoalgebra, dd: &BraidedCoalgebra) -> Result<BraidedCoalgebra> {
    let yd = tensor_yd(&cc.yd, &dd.yd)?;
    let (dc, dw) = (cc.yd.dim(), dd.yd.dim());
    let t = dc * dw;
    let delta = (0..t)
        .into_par_iter()
        .map(|k| {
            let (x, y) = (k / dw, k % dw);
            let mut e: Vec<Term2> = Vec::new();
            for (x1, x2, a) in &cc.coalg.delta[x] {
                for (h, x20, b) in &cc.yd.coact[*x2] {
                    let ab = a * b;
                    for (y1, y2, c) in &dd.coalg.delta[y] {
                        for (u, d) in &dd.yd.act[*h][*y1].0 {
                            e.push((x1 * dw + u, x20 * dw + y2, &(&ab * c) * d));
                        }
                    }
                }
            }
            merge_terms(e)
        })
        .collect();
    let eps = (0..t).map(|k| &cc.coalg.eps[k / dw] * &dd.coalg.eps[k % dw]).collect();
    let one = match (&cc.one, &dd.one) {
        (Some(a), Some(b)) => Some(SparseVec::from_entries(
            a.0.iter().flat_map(|(i, x)| b.0.iter().map(move |(j, y)| (i * dw + j, x * y))).collect(),
        )),
        _ => None,
    };
    Ok(BraidedCoalgebra { yd, coalg: Coalgebra { delta, eps }, one })
}

/// Axioms of a (coaugmented) coalgebra in the YD category.
pub fn validate_braided_coalgebra(b: &BraidedCoalgebra) -> Result<Report> {
    let mut rep = validate_yd(&b.yd)?;
    let h = &*b.yd.hopf;
    let (hc, hm) = (h.coalg()?, h.alg()?);
    let d = b.yd.dim();
    let hd = h.dim();
    let n = b.yd.n();
    let p = AlgebraPresentation {
        field_order: n,
        basis: b.yd.basis.clone(),
        algebra: None,
        coalgebra: Some(b.coalg.clone()),
        antipode: None,
        verified: None,
    };
    rep.extend(crate::hopfcore::validation_report(&p, crate::hopfcore::Level::Coalgebra)?);
    let label = |i: usize| b.yd.basis[i].clone();
    rep.timed("comultiplication H-linear", || {
        (0..hd * d).into_par_iter().find_map_first(|xi| {
            let (x, i) = (xi / d, xi % d);
            let lhs = b.coalg.apply(&b.yd.act[x][i]);
            let mut e = Vec::new();
            for (x1, x2, a) in &hc.delta[x] {
                for (i1, i2, c) in &b.coalg.delta[i] {
                    for (p, u) in &b.yd.act[*x1][*i1].0 {
                        for (q, t) in &b.yd.act[*x2][*i2].0 {
                            e.push((p * d + q, &(&(a * c) * u) * t));
                        }
                    }
                }
            }
            (lhs != SparseVec::from_entries(e)).then(|| format!("({}, {})", h.label(x), label(i)))
        })
    });
    rep.timed("counit H-linear", || {
        (0..hd * d).find_map(|xi| {
            let (x, i) = (xi / d, xi % d);
            (b.coalg.counit_of(&b.yd.act[x][i]) != &hc.eps[x] * &b.coalg.eps[i]).then(|| format!("({}, {})", h.label(x), label(i)))
        })
    });
    rep.timed("comultiplication H-colinear", || {
        (0..d).into_par_iter().find_map_first(|i| {
            // (ρ_{V⊗V})Δ(v) vs v₍₋₁₎ ⊗ Δ(v₍₀₎), both in H⊗V⊗V
            let mut l = Vec::new();
            for (i1, i2, c) in &b.coalg.delta[i] {
                for (h1, p, a) in &b.yd.coact[*i1] {
                    for (h2, q, t) in &b.yd.coact[*i2] {
                        for (g, u) in &hm.mult[*h1][*h2].0 {
                            l.push(((g * d + p) * d + q, &(&(c * a) * t) * u));
                        }
                    }
                }
            }
            let mut r = Vec::new();
            for (g, w, a) in &b.yd.coact[i] {
                for (p, q, c) in &b.coalg.delta[*w] {
                    r.push(((g * d + p) * d + q, a * c));
                }
            }
            (SparseVec::from_entries(l) != SparseVec::from_entries(r)).then(|| label(i))
        })
    });
    rep.timed("counit H-colinear", || {
        (0..d).find_map(|i| {
            let mut acc = Acc::new(hd);
            for (g, w, a) in &b.yd.coact[i] {
                acc.add(*g, &(a * &b.coalg.eps[*w]));
            }
            (acc.finish() != hm.unit.scale(&b.coalg.eps[i])).then(|| label(i))
        })
    });
    if let Some(one) = &b.one {
        rep.timed("coaugmentation", || {
            let mut bad = None;
            for x in 0..hd {
                if b.yd.act_basis(x, one) != one.scale(&hc.eps[x]) {
                    bad = Some(format!("{}·1", h.label(x)));
                    break;
                }
            }
            if bad.is_none() {
                let mut e = Vec::new();
                for (g, a) in &hm.unit.0 {
                    for (i, c) in &one.0 {
                        e.push((g * d + i, a * c));
                    }
                }
                if b.yd.coact_vec(one) != SparseVec::from_entries(e) {
                    bad = Some("ρ(1)".into());
                }
            }
            if bad.is_none() {
                let mut e = Vec::new();
                for (i, a) in &one.0 {
                    for (j, c) in &one.0 {
                        e.push((i * d + j, a * c));
                    }
                }
                if b.coalg.apply(one) != SparseVec::from_entries(e) || !b.coalg.counit_of(one).is_one() {
                    bad = Some("Δ(1)".into());
                }
            }
            bad
        });
    }
    Ok(rep)
}

/// Ψ(α) = (H⊗α)ρ_C.
pub fn psi(c: &YdStructure, alpha: &[Cyc]) -> LinMap {
    let hd = c.hopf.dim();
    let cols = (0..c.dim())
        .map(|i| {
            let mut acc = Acc::new(hd);
            for (h, w, a) in &c.coact[i] {
                if !alpha[*w].is_zero() {
                    acc.add(*h, &(a * &alpha[*w]));
                }
            }
            acc.finish()
        })
        .collect();
    LinMap { dom: c.dim(), cod: hd, cols }
}

/// Ψ⁻¹(σ) = ε_H∘σ.
pub fn psi_inverse(hopf: &AlgebraPresentation, sigma: &LinMap) -> Result<Vec<Cyc>> {
    let eps = &hopf.coalg()?.eps;
    Ok(sigma.cols.iter().map(|v| v.dot_dense(eps)).collect())
}

/// Φ(α)(x⊗m) = x₍₁₎ ⊗ α(x₍₂₎)·m on C⊗M, index x·dimM + m.
pub fn phi(c: &Coalgebra, alpha: &LinMap, m: &YdStructure) -> LinMap {
    let dm = m.dim();
    let dc = c.dim();
    let cols = (0..dc * dm)
        .into_par_iter()
        .map(|k| {
            let (x, i) = (k / dm, k % dm);
            let e = SparseVec::basis(i, m.n());
            let mut acc = Acc::new(dc * dm);
            for (x1, x2, a) in &c.delta[x] {
                if alpha.cols[*x2].is_zero() {
                    continue;
                }
                for (j, b) in &m.act_vec(&alpha.cols[*x2], &e).0 {
                    acc.add(x1 * dm + j, &(a * b));
                }
            }
            acc.finish()
        })
        .collect();
    LinMap { dom: dc * dm, cod: dc * dm, cols }
}

/// H itself with the adjoint action and Δ as coaction.
pub fn adjoint_yd(hopf: Arc<AlgebraPresentation>) -> Result<YdStructure> {
    let act = crate::hopfcore::adjoint_action(&hopf)?;
    let coact = hopf.coalg()?.delta.clone();
    Ok(YdStructure { basis: hopf.basis.clone(), hopf, act, coact })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopfcore::{group_hopf_algebra, GroupData};

    fn c3() -> Arc<AlgebraPresentation> {
        Arc::new(group_hopf_algebra(&GroupData::cyclic(3, "c"), 3).unwrap())
    }

    /// One-dimensional YD module K_g^χ with g = c, χ(c) = ζ3.
    fn line(h: &Arc<AlgebraPresentation>) -> YdStructure {
        let act = (0..3).map(|k| vec![SparseVec::single(0, Cyc::zeta(3, k as i64))]).collect();
        YdStructure { hopf: h.clone(), basis: vec!["x".into()], act, coact: vec![vec![(1, 0, Cyc::one(3))]] }
    }

    #[test]
    fn trivial_module_braids_by_flip() {
        let h = c3();
        let v = YdStructure::trivial(h.clone(), vec!["a".into(), "b".into()]).unwrap();
        assert!(validate_yd(&v).unwrap().all_pass());
        let c = braiding(&v, &v).unwrap();
        for k in 0..4 {
            assert_eq!(c.cols[k], SparseVec::basis((k % 2) * 2 + k / 2, 3));
        }
    }

    #[test]
    fn line_braiding_is_character_value() {
        let h = c3();
        let v = line(&h);
        assert!(validate_yd(&v).unwrap().all_pass());
        let c = braiding(&v, &v).unwrap();
        assert_eq!(c.cols[0], SparseVec::single(0, Cyc::zeta(3, 1)));
    }

    #[test]
    fn broken_compatibility_is_caught() {
        let h = c3();
        let mut v = line(&h);
        v.coact = vec![vec![(0, 0, Cyc::one(3))]];
        assert!(validate_yd(&v).unwrap().all_pass(), "abelian H: any grading is compatible");
        v.act[1][0] = SparseVec::single(0, Cyc::from_int(3, 2));
        let r = validate_yd(&v).unwrap();
        assert!(!r.find("module associativity").unwrap().passed());
    }

    #[test]
    fn psi_of_counit_is_unit_counit() {
        let h = c3();
        let v = line(&h);
        let p = psi(&v, &[Cyc::one(3)]);
        assert_eq!(p.cols[0], SparseVec::basis(1, 3));
        assert_eq!(psi_inverse(&h, &p).unwrap(), vec![Cyc::one(3)]);
    }
}
