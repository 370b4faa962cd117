//! 2-cocycles on bialgebras, cocycle twists, the Ω/Ω′ correspondence with
//! R-cocycles, the deformed pre-bialgebra (R^υ, ξ_υ), convolution exp/log and
//! the λ-integral identities.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hopfcore::{
    antipode_of_twist, convolution_inverse, convolve, convolve_maps, is_integral, validation_report, Algebra,
    AlgebraPresentation, BilForm, Coalgebra, CoalgebraLike, Level,
};
use crate::linalg::{Acc, LinMap, SparseVec};
use crate::prebialgebra::PreBialgebra;
use crate::report::{Check, Report};
use crate::scalar::{Cyc, Rat};
use crate::yd::{braided_tensor_coalgebra, braiding, phi, psi, BraidedCoalgebra};

/// Sub-Hopf algebra σ: H → A used for H-bilinearity and H-balance.
#[derive(Clone, Debug)]
pub struct HopfSub {
    pub h: Arc<AlgebraPresentation>,
    pub sigma: LinMap,
}

/// Hash of the canonical structure constants (labels, tables, unit, counit,
/// antipode); verification flags are excluded.
pub fn fingerprint(a: &AlgebraPresentation) -> u64 {
    let mut h = DefaultHasher::new();
    a.field_order.hash(&mut h);
    a.basis.hash(&mut h);
    let hv = |v: &SparseVec, h: &mut DefaultHasher| {
        v.len().hash(h);
        for (i, c) in &v.0 {
            i.hash(h);
            c.to_coeff_string().hash(h);
        }
    };
    if let Some(m) = &a.algebra {
        1u8.hash(&mut h);
        for row in &m.mult {
            for v in row {
                hv(v, &mut h);
            }
        }
        hv(&m.unit, &mut h);
    }
    if let Some(c) = &a.coalgebra {
        2u8.hash(&mut h);
        for t in &c.delta {
            t.len().hash(&mut h);
            for (x, y, k) in t {
                (x, y).hash(&mut h);
                k.to_coeff_string().hash(&mut h);
            }
        }
        for e in &c.eps {
            e.to_coeff_string().hash(&mut h);
        }
    }
    if let Some(s) = &a.antipode {
        3u8.hash(&mut h);
        for v in &s.cols {
            hv(v, &mut h);
        }
    }
    h.finish()
}

/// A 2-cocycle verified exhaustively against the base with the recorded
/// fingerprint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleCertificate {
    pub form: BilForm,
    pub inverse: BilForm,
    pub base: u64,
    pub normalized: bool,
    pub cocycle: bool,
    /// None when no sub-Hopf algebra was supplied.
    pub h_bilinear: Option<bool>,
    pub h_balanced: Option<bool>,
}

impl CocycleCertificate {
    /// In Z²_H(A,K): H-bilinear (and hence balanced) cocycle.
    pub fn in_z2h(&self) -> bool {
        self.cocycle && self.normalized && self.h_bilinear == Some(true) && self.h_balanced == Some(true)
    }

    pub fn check_base(&self, a: &AlgebraPresentation) -> Result<()> {
        if fingerprint(a) == self.base {
            Ok(())
        } else {
            Err(Error::CertificateMismatch)
        }
    }
}

fn lbl(a: &AlgebraPresentation, idx: &[usize]) -> String {
    let p: Vec<&str> = idx.iter().map(|&i| a.label(i)).collect();
    format!("({})", p.join(", "))
}

/// L[y][z] = Σ γ(y₍₁₎⊗z₍₁₎) y₍₂₎z₍₂₎.
fn left_table(gamma: &BilForm, c: &Coalgebra, m: &Algebra) -> Vec<SparseVec> {
    let n = c.dim();
    (0..n * n)
        .into_par_iter()
        .map(|k| {
            let (y, z) = (k / n, k % n);
            let mut acc = Acc::new(n);
            for (y1, y2, a) in &c.delta[y] {
                for (z1, z2, b) in &c.delta[z] {
                    let g = gamma.get(*y1, *z1);
                    if !g.is_zero() {
                        acc.add_vec(&m.mult[*y2][*z2], &(&(a * b) * g));
                    }
                }
            }
            acc.finish()
        })
        .collect()
}

/// Exhaustive check of the normalized 2-cocycle conditions, plus
/// H-bilinearity and H-balance when `hsub` is given.
pub fn is_two_cocycle(gamma: &BilForm, a: &AlgebraPresentation, hsub: Option<&HopfSub>) -> Result<CocycleCertificate> {
    let (m, c) = (a.alg()?, a.coalg()?);
    let n = a.dim();
    if gamma.dim != n {
        return Err(Error::Dimension("form does not match the algebra".into()));
    }
    let inverse = gamma.inverse(c)?;
    let one = &m.unit;
    for x in 0..n {
        let l: Cyc = gamma.eval_right(x, one);
        let r: Cyc = gamma.eval_left(one, x);
        if l != c.eps[x] || r != c.eps[x] {
            return Err(Error::CheckFailed { check: "cocycle normalization".into(), witness: lbl(a, &[x]) });
        }
    }
    let lt = left_table(gamma, c, m);
    let bad = (0..n).into_par_iter().find_map_first(|x| {
        for y in 0..n {
            let lxy = &lt[x * n + y];
            for z in 0..n {
                let lhs = gamma.eval_right(x, &lt[y * n + z]);
                let rhs = gamma.eval_left(lxy, z);
                if lhs != rhs {
                    return Some((x, y, z));
                }
            }
        }
        None
    });
    if let Some((x, y, z)) = bad {
        return Err(Error::CheckFailed { check: "cocycle condition".into(), witness: lbl(a, &[x, y, z]) });
    }
    let (mut hb, mut hbal) = (None, None);
    if let Some(hs) = hsub {
        let hc = hs.h.coalg()?;
        let hd = hs.h.dim();
        let bil = (0..hd * n).into_par_iter().all(|k| {
            let (h, x) = (k / n, k % n);
            let hx = m.mul(&hs.sigma.cols[h], &SparseVec::basis(x, a.field_order));
            let xh = m.mul(&SparseVec::basis(x, a.field_order), &hs.sigma.cols[h]);
            (0..n).all(|y| {
                gamma.eval_left(&hx, y) == &hc.eps[h] * gamma.get(x, y) && gamma.eval_right(y, &xh) == gamma.get(y, x) * &hc.eps[h]
            })
        });
        let bal = (0..hd * n).into_par_iter().all(|k| {
            let (h, x) = (k / n, k % n);
            let xh = m.mul(&SparseVec::basis(x, a.field_order), &hs.sigma.cols[h]);
            (0..n).all(|y| {
                let hy = m.mul(&hs.sigma.cols[h], &SparseVec::basis(y, a.field_order));
                gamma.eval_left(&xh, y) == gamma.eval_right(x, &hy)
            })
        });
        hb = Some(bil);
        hbal = Some(bal);
    }
    Ok(CocycleCertificate {
        form: gamma.clone(),
        inverse,
        base: fingerprint(a),
        normalized: true,
        cocycle: true,
        h_bilinear: hb,
        h_balanced: hbal,
    })
}

/// x·y = β(x₍₁₎⊗y₍₁₎) x₍₂₎y₍₂₎ γ(x₍₃₎⊗y₍₃₎), computed in two passes.
pub fn conjugated_product(c: &Coalgebra, m: &Algebra, beta: &BilForm, gamma: &BilForm) -> Vec<Vec<SparseVec>> {
    let n = c.dim();
    // R[x][y] = Σ x₍₁₎y₍₁₎ γ(x₍₂₎⊗y₍₂₎)
    let right: Vec<SparseVec> = (0..n * n)
        .into_par_iter()
        .map(|k| {
            let (x, y) = (k / n, k % n);
            let mut acc = Acc::new(n);
            for (x1, x2, a) in &c.delta[x] {
                for (y1, y2, b) in &c.delta[y] {
                    let g = gamma.get(*x2, *y2);
                    if !g.is_zero() {
                        acc.add_vec(&m.mult[*x1][*y1], &(&(a * b) * g));
                    }
                }
            }
            acc.finish()
        })
        .collect();
    (0..n)
        .into_par_iter()
        .map(|x| {
            (0..n)
                .map(|y| {
                    let mut acc = Acc::new(n);
                    for (x1, x2, a) in &c.delta[x] {
                        for (y1, y2, b) in &c.delta[y] {
                            let g = beta.get(*x1, *y1);
                            if !g.is_zero() {
                                acc.add_vec(&right[x2 * n + y2], &(&(a * b) * g));
                            }
                        }
                    }
                    acc.finish()
                })
                .collect()
        })
        .collect()
}

/// A^γ: same coalgebra and unit, product γ(x₍₁₎⊗y₍₁₎)x₍₂₎y₍₂₎γ⁻¹(x₍₃₎⊗y₍₃₎),
/// antipode S^γ when A has one. Validated before returning.
pub fn twist_bialgebra(a: &AlgebraPresentation, cert: &CocycleCertificate) -> Result<AlgebraPresentation> {
    cert.check_base(a)?;
    let (m, c) = (a.alg()?, a.coalg()?);
    let mult = conjugated_product(c, m, &cert.form, &cert.inverse);
    let mut t = AlgebraPresentation {
        field_order: a.field_order,
        basis: a.basis.clone(),
        algebra: Some(Algebra { mult, unit: m.unit.clone() }),
        coalgebra: a.coalgebra.clone(),
        antipode: None,
        verified: None,
    };
    if a.antipode.is_some() {
        t.antipode = Some(antipode_of_twist(a, &cert.form, &cert.inverse)?);
    }
    let level = if t.antipode.is_some() { Level::Hopf } else { Level::Bialgebra };
    let rep = validation_report(&t, level)?;
    if let Some(f) = rep.failures().next() {
        return Err(Error::CheckFailed { check: format!("twisted {}", f.name), witness: f.witness.clone().unwrap_or_default() });
    }
    t.verified = Some(level);
    Ok(t)
}

/// The magma _βA_γ.
pub fn deformed_product(a: &AlgebraPresentation, beta: &BilForm, gamma: &BilForm) -> Result<Algebra> {
    let (m, c) = (a.alg()?, a.coalg()?);
    Ok(Algebra { mult: conjugated_product(c, m, beta, gamma), unit: m.unit.clone() })
}

/// First non-associative basis triple of a product table.
pub fn associativity_witness(m: &Algebra) -> Option<(usize, usize, usize)> {
    let n = m.dim();
    (0..n * n).into_par_iter().find_map_first(|ij| {
        let (i, j) = (ij / n, ij % n);
        (0..n).find_map(|k| (m.mul_basis_right(&m.mult[i][j], k) != m.mul_basis_left(i, &m.mult[j][k])).then_some((i, j, k)))
    })
}

pub fn is_unital(m: &Algebra, n: u32) -> bool {
    (0..m.dim()).all(|i| {
        let e = SparseVec::basis(i, n);
        m.mul(&m.unit, &e) == e && m.mul(&e, &m.unit) == e
    })
}

/// γ∗β certified on A from β ∈ Z²(A) and γ ∈ Z²(A^β).
pub fn compose_staged_cocycles(
    a: &AlgebraPresentation,
    beta: &CocycleCertificate,
    gamma: &CocycleCertificate,
    hsub: Option<&HopfSub>,
) -> Result<CocycleCertificate> {
    beta.check_base(a)?;
    let ab = twist_bialgebra(a, beta)?;
    if gamma.check_base(&ab).is_err() {
        return Err(Error::Invalid("second cocycle was not certified on the first twist".into()));
    }
    let c = a.coalg()?;
    let prod = gamma.form.convolve(&beta.form, c);
    is_two_cocycle(&prod, a, hsub)
}

/// Index of r#1 in a smash product basis r·|H| + h, as a vector.
fn r_hash_one(p: &PreBialgebra, r: usize) -> SparseVec {
    let hd = p.hopf().dim();
    SparseVec::from_entries(p.hopf().one().0.iter().map(|(g, c)| (r * hd + g, c.clone())).collect())
}

/// Ω(γ)(r⊗s) = γ(r#1 ⊗ s#1).
pub fn omega_restrict(gamma: &BilForm, p: &PreBialgebra) -> Result<BilForm> {
    let (d, hd) = (p.dim(), p.hopf().dim());
    if gamma.dim != d * hd {
        return Err(Error::Invalid("form is not on a smash product of this pre-bialgebra".into()));
    }
    let mut out = BilForm::zero(d);
    for r in 0..d {
        let rv = r_hash_one(p, r);
        for s in 0..d {
            let sv = r_hash_one(p, s);
            let mut acc = Cyc::zero(1);
            for (i, a) in &rv.0 {
                acc += &(a * &gamma.eval_right(*i, &sv));
            }
            out.set(r, s, acc);
        }
    }
    Ok(out)
}

/// Ω′(υ)(x#h ⊗ y#h′) = υ(x ⊗ h·y) ε(h′).
pub fn omega_extend(upsilon: &BilForm, p: &PreBialgebra) -> Result<BilForm> {
    let (d, hd) = (p.dim(), p.hopf().dim());
    if upsilon.dim != d {
        return Err(Error::Dimension("form is not on R⊗R".into()));
    }
    let heps = &p.hopf().coalg()?.eps;
    let ad = d * hd;
    let mut out = BilForm::zero(ad);
    for k in 0..ad {
        let (x, _h) = (k / hd, k % hd);
        for l in 0..ad {
            let (y, h2) = (l / hd, l % hd);
            if heps[h2].is_zero() {
                continue;
            }
            let v = upsilon.eval_right(x, &p.r.yd.act[k % hd][y]);
            if !v.is_zero() {
                out.set(k, l, &v * &heps[h2]);
            }
        }
    }
    Ok(out)
}

/// Convolution on the braided coalgebra R⊗R.
pub fn r_convolve(p: &PreBialgebra, f: &BilForm, g: &BilForm) -> Result<BilForm> {
    let rr = p.rr()?;
    Ok(BilForm { dim: f.dim, vals: convolve(&rr.coalg, &f.vals, &g.vals) })
}

/// An R-cocycle verified against a pre-bialgebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RCocycleCertificate {
    pub form: BilForm,
    pub inverse: BilForm,
}

/// Normalized, left H-linear υ: R⊗R → K satisfying
/// (ε⊗υ)∗υ(R⊗m) = (υ⊗ε)∗{υ(m⊗R)Φ(ξ)} on the braided R⊗R⊗R.
pub fn is_r_cocycle(upsilon: &BilForm, p: &PreBialgebra) -> Result<RCocycleCertificate> {
    let d = p.dim();
    let rr = p.rr()?;
    let inv = convolution_inverse(&rr.coalg, &upsilon.vals)?;
    let one = p.unit()?;
    let eps = &p.r.coalg.eps;
    let lb = |idx: &[usize]| {
        let v: Vec<&str> = idx.iter().map(|&i| p.basis()[i].as_str()).collect();
        format!("({})", v.join(", "))
    };
    for r in 0..d {
        if upsilon.eval_right(r, one) != eps[r] || upsilon.eval_left(one, r) != eps[r] {
            return Err(Error::CheckFailed { check: "R-cocycle normalization".into(), witness: lb(&[r]) });
        }
    }
    let heps = &p.hopf().coalg()?.eps;
    for x in 0..p.hopf().dim() {
        for z in 0..d * d {
            let v = rr.yd.act[x][z].dot_dense(&upsilon.vals);
            if v != &heps[x] * &upsilon.vals[z] {
                return Err(Error::CheckFailed {
                    check: "R-cocycle H-linearity".into(),
                    witness: format!("({}, {})", p.hopf().label(x), lb(&[z / d, z % d])),
                });
            }
        }
    }
    let rrr = braided_tensor_coalgebra(&rr, &p.r)?;
    let t = d * d * d;
    let (f1, g1, f2, g2) = r_cocycle_sides(upsilon, p, &rr)?;
    let l = convolve(&rrr.coalg, &f1, &g1);
    let r = convolve(&rrr.coalg, &f2, &g2);
    if let Some(k) = (0..t).find(|&k| l[k] != r[k]) {
        return Err(Error::CheckFailed { check: "R-cocycle condition".into(), witness: lb(&[k / (d * d), (k / d) % d, k % d]) });
    }
    Ok(RCocycleCertificate { form: upsilon.clone(), inverse: BilForm { dim: d, vals: inv } })
}

type Sides = (Vec<Cyc>, Vec<Cyc>, Vec<Cyc>, Vec<Cyc>);

/// The four functionals ε⊗υ, υ(R⊗m), υ⊗ε, υ(m⊗R)Φ(ξ) on R⊗R⊗R.
fn r_cocycle_sides(u: &BilForm, p: &PreBialgebra, rr: &BraidedCoalgebra) -> Result<Sides> {
    let d = p.dim();
    let eps = &p.r.coalg.eps;
    let t = d * d * d;
    let f1: Vec<Cyc> = (0..t).map(|k| &eps[k / (d * d)] * u.get((k / d) % d, k % d)).collect();
    let g1: Vec<Cyc> = (0..t).map(|k| u.eval_right(k / (d * d), &p.mult[(k / d) % d][k % d])).collect();
    let f2: Vec<Cyc> = (0..t).map(|k| u.get(k / (d * d), (k / d) % d) * &eps[k % d]).collect();
    let ph = phi(&rr.coalg, &p.xi_map(), &p.r.yd);
    let g2: Vec<Cyc> = (0..t)
        .into_par_iter()
        .map(|k| {
            let mut acc = Cyc::zero(1);
            for (j, c) in &ph.cols[k].0 {
                let (rs, w) = (j / d, j % d);
                let v = u.eval_left(&p.mult[rs / d][rs % d], w);
                if !v.is_zero() {
                    acc += &(c * &v);
                }
            }
            acc
        })
        .collect();
    Ok((f1, g1, f2, g2))
}

/// (R^υ, ξ_υ): m_{R^υ} = (υ⊗m⊗υ⁻¹)Δ²_{R⊗R}, ξ_υ = u_Hυ ∗ ξ ∗ Ψ(υ⁻¹).
pub fn xi_twist(p: &PreBialgebra, cert: &RCocycleCertificate) -> Result<PreBialgebra> {
    let d = p.dim();
    let h = p.hopf().clone();
    let hm = h.alg()?;
    let rr = p.rr()?;
    let (u, ui) = (&cert.form, &cert.inverse);
    let mut mult = vec![vec![SparseVec::zero(); d]; d];
    for z in 0..d * d {
        let mut acc = Acc::new(d);
        for (legs, c) in rr.coalg.iterate(z, 2) {
            let a = &u.vals[legs[0]];
            let b = &ui.vals[legs[2]];
            if a.is_zero() || b.is_zero() {
                continue;
            }
            acc.add_vec(&p.mult[legs[1] / d][legs[1] % d], &(&(a * b) * &c));
        }
        mult[z / d][z % d] = acc.finish();
    }
    let uh = LinMap { dom: d * d, cod: h.dim(), cols: u.vals.iter().map(|v| hm.unit.scale(v)).collect() };
    let ps = psi(&rr.yd, &ui.vals);
    let x1 = convolve_maps(&rr.coalg, hm, &uh, &p.xi_map());
    let xi = convolve_maps(&rr.coalg, hm, &x1, &ps);
    Ok(PreBialgebra { r: p.r.clone(), mult, xi: xi.cols })
}

/// The smash-product identity (R#_ξH)^γ = R^{γ_R}#_{ξ_{γ_R}}H as exact
/// structure-constant equality.
pub fn smash_twist_identity(p: &PreBialgebra, smash_a: &AlgebraPresentation, gamma: &CocycleCertificate) -> Result<Report> {
    let mut rep = Report::new();
    let twisted = twist_bialgebra(smash_a, gamma)?;
    let gr = omega_restrict(&gamma.form, p)?;
    let rc = is_r_cocycle(&gr, p)?;
    rep.push(Check::pass("Ω(γ) is an R-cocycle"));
    let q = xi_twist(p, &rc)?;
    let other = crate::prebialgebra::smash_product(&q)?;
    let (m1, m2) = (twisted.alg()?, other.a.alg()?);
    let n = twisted.dim();
    let w = (0..n * n).find(|&k| m1.mult[k / n][k % n] != m2.mult[k / n][k % n]);
    rep.push(Check::from_witness("(R#_ξH)^γ = R^{γ_R}#_{ξ_{γ_R}}H", w.map(|k| lbl(&twisted, &[k / n, k % n]))));
    rep.push(Check::from_witness(
        "same coalgebra",
        (twisted.coalgebra != other.a.coalgebra).then(|| "comultiplication".to_string()),
    ));
    Ok(rep)
}

fn nilpotent_series(c: &dyn CoalgebraLike, base: &[Cyc], coef: impl Fn(usize) -> Rat, cap: usize) -> Result<Vec<Cyc>> {
    // Σ_{k≥1} coef(k) base^k
    let mut sum = vec![Cyc::zero(1); c.dim()];
    let mut p = base.to_vec();
    for k in 1..=cap {
        if p.iter().all(Cyc::is_zero) {
            return Ok(sum);
        }
        let ck = Cyc::from_rat(1, coef(k));
        for (s, v) in sum.iter_mut().zip(&p) {
            if !v.is_zero() {
                *s += &(v * &ck);
            }
        }
        p = convolve(c, &p, base);
    }
    if p.iter().all(Cyc::is_zero) {
        Ok(sum)
    } else {
        Err(Error::NotNilpotent(cap))
    }
}

fn factorial(k: usize) -> Rat {
    (1..=k as i64).fold(Rat::one(), |a, i| &a * &Rat::from_int(i))
}

/// exp_∗(η) = ε + Σ ηᵏ/k! for convolution-nilpotent η on A⊗A.
pub fn conv_exp(eta: &BilForm, c: &Coalgebra, cap: usize) -> Result<BilForm> {
    let sq = crate::hopfcore::TensorSquare(c);
    let s = nilpotent_series(&sq, &eta.vals, |k| factorial(k).recip().expect("k! > 0"), cap)?;
    Ok(BilForm::counit(c).add(&BilForm { dim: eta.dim, vals: s }))
}

/// log_∗(γ) = Σ (−1)^{k+1}(γ−ε)ᵏ/k for convolution-unipotent γ on A⊗A.
pub fn conv_log(gamma: &BilForm, c: &Coalgebra, cap: usize) -> Result<BilForm> {
    let sq = crate::hopfcore::TensorSquare(c);
    let base = gamma.sub(&BilForm::counit(c));
    let s = nilpotent_series(&sq, &base.vals, |k| Rat::new(if k % 2 == 1 { 1 } else { -1 }, k as i64), cap)?;
    Ok(BilForm { dim: gamma.dim, vals: s })
}

/// Nilpotency index of f on A⊗A: least k with fᵏ = 0, up to `cap`.
pub fn nilpotency_index(f: &BilForm, c: &Coalgebra, cap: usize) -> Option<usize> {
    let sq = crate::hopfcore::TensorSquare(c);
    let mut p = f.vals.clone();
    for k in 1..=cap {
        if p.iter().all(Cyc::is_zero) {
            return Some(k);
        }
        p = convolve(&sq, &p, &f.vals);
    }
    None
}

/// λ∘ξ as a form on R⊗R.
pub fn lambda_xi(p: &PreBialgebra, lambda: &[Cyc]) -> BilForm {
    BilForm { dim: p.dim(), vals: p.xi.iter().map(|v| v.dot_dense(lambda)).collect() }
}

/// ξ ∗ [(H⊗λξ)ρ_{R⊗R}] = u_H λ∘ξ exhaustively; `omega_r` (when given) is used
/// to evaluate both sides of the two λξ equivalences as notes.
pub fn lambda_xi_identities(p: &PreBialgebra, lambda: &[Cyc], omega_r: Option<&BilForm>) -> Result<Report> {
    let h = p.hopf().clone();
    if !is_integral(&h, lambda)? {
        return Err(Error::Invalid("λ is not an integral".into()));
    }
    let hm = h.alg()?;
    let rr = p.rr()?;
    let d = p.dim();
    let lx = lambda_xi(p, lambda);
    let lhs = convolve_maps(&rr.coalg, hm, &p.xi_map(), &psi(&rr.yd, &lx.vals));
    let rhs = LinMap { dom: d * d, cod: h.dim(), cols: lx.vals.iter().map(|v| hm.unit.scale(v)).collect() };
    let mut rep = Report::new();
    let lb = |k: usize| format!("({}, {})", p.basis()[k / d], p.basis()[k % d]);
    rep.push(Check::from_witness("ξ ∗ Ψ(λξ) = u_H λξ", lhs.first_difference(&rhs).map(lb)));
    if let Some(w) = omega_r {
        let winv = BilForm { dim: d, vals: convolution_inverse(&rr.coalg, &w.vals)? };
        let counit = BilForm { dim: d, vals: (0..d * d).map(|k| &p.r.coalg.eps[k / d] * &p.r.coalg.eps[k % d]).collect() };
        let pair = |f: &BilForm| -> BilForm {
            // (λ⊗f)ρ_{R⊗R}
            BilForm {
                dim: d,
                vals: (0..d * d)
                    .map(|z| {
                        let mut acc = Cyc::zero(1);
                        for (g, w2, c) in &rr.yd.coact[z] {
                            acc += &(&(c * &lambda[*g]) * &f.vals[*w2]);
                        }
                        acc
                    })
                    .collect(),
            }
        };
        let a1 = lx == winv;
        let b1 = pair(w) == counit;
        rep.push(Check::note("λξ = ω⁻¹ vs (λ⊗ω)ρ = ε⊗ε", format!("left {a1}, right {b1}")));
        let xinv = crate::prebialgebra::sweedler_inverse(p)?;
        let lxi = BilForm { dim: d, vals: xinv.cols.iter().map(|v| v.dot_dense(lambda)).collect() };
        let a2 = lxi == *w;
        let b2 = pair(&winv) == counit;
        rep.push(Check::note("λξ⁻¹ = ω vs (λ⊗ω⁻¹)ρ = ε⊗ε", format!("left {a2}, right {b2}")));
    }
    Ok(rep)
}

/// Convolution ω∗μ of a scalar form and a map on the braided R⊗R.
fn form_map_conv(rr: &BraidedCoalgebra, d: usize, w: &BilForm, mu: &LinMap, z: usize, left_form: bool) -> SparseVec {
    let mut acc = Acc::new(d);
    for (z1, z2, c) in &rr.coalg.delta[z] {
        let (f, m) = if left_form { (&w.vals[*z1], &mu.cols[*z2]) } else { (&w.vals[*z2], &mu.cols[*z1]) };
        if !f.is_zero() {
            acc.add_vec(m, &(c * f));
        }
    }
    acc.finish()
}

/// Commutation (ω∗μ)(x⊗y) = (μ∗ω)(x⊗y) for pairs meeting the braided
/// cocommutativity hypotheses, plus ω∗m_R∗ω⁻¹ = m_R when c² = id.
pub fn braided_commutation_check(p: &PreBialgebra, omega: &BilForm, mu: &LinMap, pairs: &[(usize, usize)]) -> Result<Report> {
    let d = p.dim();
    let n = p.field_order();
    let rr = p.rr()?;
    let c = braiding(&p.r.yd, &p.r.yd)?;
    let c2 = c.compose(&c)?;
    let heps = &p.hopf().coalg()?.eps;
    let mut rep = Report::new();
    let lb = |i: usize| p.basis()[i].clone();
    rep.timed("ω left H-linear", || {
        (0..p.hopf().dim() * d * d).find_map(|k| {
            let (x, z) = (k / (d * d), k % (d * d));
            (rr.yd.act[x][z].dot_dense(&omega.vals) != &heps[x] * &omega.vals[z]).then(|| format!("({}, {})", p.hopf().label(x), z))
        })
    });
    for &(x, y) in pairs {
        let dx = p.r.coalg.apply(&SparseVec::basis(x, n));
        let dy = p.r.coalg.apply(&SparseVec::basis(y, n));
        let name = format!("commutation at ({}, {})", lb(x), lb(y));
        if c.apply(&dx) != dx || c.apply(&dy) != dy {
            rep.push(Check::fail(name, "hypothesis (i): cΔ ≠ Δ"));
            continue;
        }
        // (R⊗c²⊗R)(Δx⊗Δy) = Δx⊗Δy
        let mut moved = Acc::new(d * d * d * d);
        for (i, a) in &dx.0 {
            let (x1, x2) = (i / d, i % d);
            for (j, b) in &dy.0 {
                let (y1, y2) = (j / d, j % d);
                for (k, e) in &c2.cols[x2 * d + y1].0 {
                    moved.add(((x1 * d + k / d) * d + k % d) * d + y2, &(&(a * b) * e));
                }
            }
        }
        let mut orig = Acc::new(d * d * d * d);
        for (i, a) in &dx.0 {
            for (j, b) in &dy.0 {
                orig.add(i * d * d + j, &(a * b));
            }
        }
        if moved.finish() != orig.finish() {
            rep.push(Check::fail(name, "hypothesis (ii): (R⊗c²⊗R)(Δ⊗Δ) moves x⊗y"));
            continue;
        }
        let z = x * d + y;
        let l = form_map_conv(&rr, d, omega, mu, z, true);
        let r = form_map_conv(&rr, d, omega, mu, z, false);
        rep.push(Check::from_witness(name, (l != r).then(|| format!("({}, {})", lb(x), lb(y)))));
    }
    let c2_id = c2 == LinMap::identity(d * d, n);
    if c2_id {
        let inv = convolution_inverse(&rr.coalg, &omega.vals);
        match inv {
            Ok(wi) => {
                let wi = BilForm { dim: d, vals: wi };
                let mr = p.mult_map();
                let left: Vec<SparseVec> = (0..d * d).map(|z| form_map_conv(&rr, d, omega, &mr, z, true)).collect();
                let lm = LinMap { dom: d * d, cod: d, cols: left };
                let full: Vec<SparseVec> = (0..d * d)
                    .map(|z| {
                        let mut acc = Acc::new(d);
                        for (z1, z2, c) in &rr.coalg.delta[z] {
                            if !wi.vals[*z2].is_zero() {
                                acc.add_vec(&lm.cols[*z1], &(c * &wi.vals[*z2]));
                            }
                        }
                        acc.finish()
                    })
                    .collect();
                let w = (0..d * d).find(|&z| full[z] != mr.cols[z]);
                rep.push(Check::from_witness("ω∗m_R∗ω⁻¹ = m_R", w.map(|z| format!("({}, {})", lb(z / d), lb(z % d)))));
            }
            Err(e) => rep.push(Check::note("ω∗m_R∗ω⁻¹ = m_R", format!("ω not invertible: {e}"))),
        }
    } else {
        rep.push(Check::note("ω∗m_R∗ω⁻¹ = m_R", "c² ≠ id on R⊗R; commutation alone does not force it"));
    }
    Ok(rep)
}

/// Convolution preserved by Ω: Ω(γ∗γ′) = Ω(γ)∗Ω(γ′).
pub fn omega_preserves_convolution(p: &PreBialgebra, smash: &AlgebraPresentation, g1: &BilForm, g2: &BilForm) -> Result<bool> {
    let c = smash.coalg()?;
    let prod = g1.convolve(g2, c);
    let l = omega_restrict(&prod, p)?;
    let r = r_convolve(p, &omega_restrict(g1, p)?, &omega_restrict(g2, p)?)?;
    Ok(l == r)
}

/// Φ(Ψ(υ)) vs Φ(u_Hυ) on R⊗R⊗R (instance evaluation only).
pub fn phi_psi_comparison(p: &PreBialgebra, upsilon: &BilForm) -> Result<bool> {
    let h = p.hopf().clone();
    let hm = h.alg()?;
    let rr = p.rr()?;
    let d = p.dim();
    let ps = psi(&rr.yd, &upsilon.vals);
    let uh = LinMap { dom: d * d, cod: h.dim(), cols: upsilon.vals.iter().map(|v| hm.unit.scale(v)).collect() };
    Ok(phi(&rr.coalg, &ps, &p.r.yd) == phi(&rr.coalg, &uh, &p.r.yd))
}

/// Both sides of the cocycle condition on one basis triple:
/// (γ(x₍₁₎⊗y₍₁₎)γ(x₍₂₎y₍₂₎⊗z), γ(y₍₁₎⊗z₍₁₎)γ(x⊗y₍₂₎z₍₂₎)).
pub fn cocycle_sides(gamma: &BilForm, a: &AlgebraPresentation, x: usize, y: usize, z: usize) -> Result<(Cyc, Cyc)> {
    let (m, c) = (a.alg()?, a.coalg()?);
    let lxy = left_entry(gamma, c, m, x, y);
    let lyz = left_entry(gamma, c, m, y, z);
    Ok((gamma.eval_left(&lxy, z), gamma.eval_right(x, &lyz)))
}

fn left_entry(gamma: &BilForm, c: &Coalgebra, m: &Algebra, y: usize, z: usize) -> SparseVec {
    let mut acc = Acc::new(c.dim());
    for (y1, y2, a) in &c.delta[y] {
        for (z1, z2, b) in &c.delta[z] {
            let g = gamma.get(*y1, *z1);
            if !g.is_zero() {
                acc.add_vec(&m.mult[*y2][*z2], &(&(a * b) * g));
            }
        }
    }
    acc.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery::{gamma32, Biproduct, Family, QLSDatum};

    fn setup(a: i64) -> (QLSDatum, Biproduct) {
        let n = 8;
        let d = QLSDatum::dim32(Family::F1, Cyc::from_int(n, a), Cyc::from_int(n, 2 * a), Cyc::from_int(n, 3 * a)).unwrap();
        let bp = Biproduct::new(&d).unwrap();
        (d, bp)
    }

    #[test]
    fn counit_is_a_trivial_cocycle() {
        let (_, bp) = setup(1);
        let e = BilForm::counit(bp.a().coalg().unwrap());
        let cert = is_two_cocycle(&e, bp.a(), Some(&bp.hsub())).unwrap();
        assert!(cert.in_z2h());
        assert_eq!(twist_bialgebra(bp.a(), &cert).unwrap(), *bp.a());
    }

    #[test]
    fn unnormalized_form_is_rejected() {
        let (_, bp) = setup(1);
        let mut e = BilForm::counit(bp.a().coalg().unwrap());
        e.set(0, 0, Cyc::from_int(8, 2));
        match is_two_cocycle(&e, bp.a(), None) {
            Err(Error::CheckFailed { check, .. }) => assert_eq!(check, "cocycle normalization"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn certificate_is_bound_to_its_base() {
        let (d, bp) = setup(1);
        let g = gamma32(&d, &bp);
        let cert = is_two_cocycle(&g, bp.a(), None).unwrap();
        let other = twist_bialgebra(bp.a(), &cert).unwrap();
        assert_eq!(twist_bialgebra(&other, &cert).unwrap_err(), Error::CertificateMismatch);
    }

    #[test]
    fn exp_inverts_log_on_unipotent_forms() {
        let (d, bp) = setup(1);
        let c = bp.a().coalg().unwrap();
        let g = gamma32(&d, &bp);
        let eta = conv_log(&g, c, 6).unwrap();
        assert_eq!(conv_exp(&eta, c, 6).unwrap(), g);
        assert!(nilpotency_index(&g.sub(&BilForm::counit(c)), c, 6).is_some());
    }

    #[test]
    fn restriction_is_an_r_cocycle_and_twists_xi() {
        let (d, bp) = setup(1);
        let g = gamma32(&d, &bp);
        let up = omega_restrict(&g, &bp.r).unwrap();
        let rc = is_r_cocycle(&up, &bp.r).unwrap();
        let p = xi_twist(&bp.r, &rc).unwrap();
        assert!(!p.has_trivial_xi());
        assert!(phi_psi_comparison(&bp.r, &up).unwrap());
    }

    #[test]
    fn cocycle_sides_agree_on_a_cocycle() {
        let (d, bp) = setup(1);
        let g = gamma32(&d, &bp);
        let (l, r) = cocycle_sides(&g, bp.a(), 8, 16, 24).unwrap();
        assert_eq!(l, r);
    }
}
