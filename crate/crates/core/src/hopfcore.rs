//! Finite-dimensional (co)algebras, bialgebras and Hopf algebras given by
//! structure constants; convolution; axiom validation; group algebras.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{solve, Acc, LinMap, SparseVec};
use crate::report::Report;
use crate::scalar::Cyc;

/// Comultiplication term x₍₁₎ ⊗ x₍₂₎ with coefficient.
pub type Term2 = (usize, usize, Cyc);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coalgebra {
    pub delta: Vec<Vec<Term2>>,
    pub eps: Vec<Cyc>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    /// mult[i][j] = e_i · e_j.
    pub mult: Vec<Vec<SparseVec>>,
    pub unit: SparseVec,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Level {
    Coalgebra,
    Algebra,
    Bialgebra,
    Hopf,
}

impl std::str::FromStr for Level {
    type Err = Error;
    fn from_str(s: &str) -> Result<Level> {
        match s {
            "coalgebra" => Ok(Level::Coalgebra),
            "algebra" => Ok(Level::Algebra),
            "bialgebra" => Ok(Level::Bialgebra),
            "hopf" => Ok(Level::Hopf),
            _ => Err(Error::Invalid(format!("unknown level {s:?}"))),
        }
    }
}

/// Labeled basis plus whichever structure maps are present.
#[derive(Clone, Debug)]
pub struct AlgebraPresentation {
    pub field_order: u32,
    pub basis: Vec<String>,
    pub algebra: Option<Algebra>,
    pub coalgebra: Option<Coalgebra>,
    pub antipode: Option<LinMap>,
    /// Highest level whose axioms have been verified exhaustively.
    pub verified: Option<Level>,
}

impl PartialEq for AlgebraPresentation {
    /// Structural equality; verification flags are ignored.
    fn eq(&self, o: &Self) -> bool {
        self.basis == o.basis && self.algebra == o.algebra && self.coalgebra == o.coalgebra && self.antipode == o.antipode
    }
}

impl Coalgebra {
    pub fn dim(&self) -> usize {
        self.eps.len()
    }

    /// Δ of an arbitrary vector as a sparse tensor indexed i·dim + j.
    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let n = self.dim();
        let mut e = Vec::new();
        for (i, c) in &v.0 {
            for (a, b, d) in &self.delta[*i] {
                e.push((a * n + b, c * d));
            }
        }
        SparseVec::from_entries(e)
    }

    pub fn counit_of(&self, v: &SparseVec) -> Cyc {
        v.dot_dense(&self.eps)
    }

    /// Left-nested iterate Δ^k(e_i) = (Δ⊗id^{k-1})Δ^{k-1}(e_i) as (legs, coefficient).
    pub fn iterate(&self, i: usize, k: usize) -> Vec<(Vec<usize>, Cyc)> {
        let mut cur: Vec<(Vec<usize>, Cyc)> = vec![(vec![i], Cyc::one(1))];
        for _ in 0..k {
            let mut next: Vec<(Vec<usize>, Cyc)> = Vec::new();
            for (legs, c) in &cur {
                for (a, b, d) in &self.delta[legs[0]] {
                    let mut l = Vec::with_capacity(legs.len() + 1);
                    l.push(*a);
                    l.push(*b);
                    l.extend_from_slice(&legs[1..]);
                    next.push((l, c * d));
                }
            }
            next.sort_by(|x, y| x.0.cmp(&y.0));
            let mut merged: Vec<(Vec<usize>, Cyc)> = Vec::with_capacity(next.len());
            for (l, c) in next {
                match merged.last_mut() {
                    Some((m, d)) if *m == l => *d += &c,
                    _ => merged.push((l, c)),
                }
            }
            merged.retain(|(_, c)| !c.is_zero());
            cur = merged;
        }
        cur
    }

    /// Basis elements b with Δ(b) = b⊗b and ε(b) = 1.
    pub fn grouplike_basis(&self) -> Vec<usize> {
        (0..self.dim())
            .filter(|&i| {
                let d = &self.delta[i];
                d.len() == 1 && d[0].0 == i && d[0].1 == i && d[0].2.is_one() && self.eps[i].is_one()
            })
            .collect()
    }

    /// Ordinary tensor product coalgebra C⊗D, index c·dim(D) + d.
    pub fn tensor(&self, other: &Coalgebra) -> Coalgebra {
        let m = other.dim();
        let mut delta = Vec::with_capacity(self.dim() * m);
        let mut eps = Vec::with_capacity(self.dim() * m);
        for x in 0..self.dim() {
            for y in 0..m {
                let mut t = Vec::new();
                for (x1, x2, c) in &self.delta[x] {
                    for (y1, y2, d) in &other.delta[y] {
                        t.push((x1 * m + y1, x2 * m + y2, c * d));
                    }
                }
                delta.push(t);
                eps.push(&self.eps[x] * &other.eps[y]);
            }
        }
        Coalgebra { delta, eps }
    }
}

impl Algebra {
    pub fn dim(&self) -> usize {
        self.mult.len()
    }

    pub fn mul(&self, a: &SparseVec, b: &SparseVec) -> SparseVec {
        let mut acc = Acc::new(self.dim());
        for (i, x) in &a.0 {
            for (j, y) in &b.0 {
                acc.add_vec(&self.mult[*i][*j], &(x * y));
            }
        }
        acc.finish()
    }

    /// Product of a basis element with a vector on the right.
    pub fn mul_basis_left(&self, i: usize, b: &SparseVec) -> SparseVec {
        let mut acc = Acc::new(self.dim());
        for (j, y) in &b.0 {
            acc.add_vec(&self.mult[i][*j], y);
        }
        acc.finish()
    }

    pub fn mul_basis_right(&self, a: &SparseVec, j: usize) -> SparseVec {
        let mut acc = Acc::new(self.dim());
        for (i, x) in &a.0 {
            acc.add_vec(&self.mult[*i][j], x);
        }
        acc.finish()
    }
}

impl AlgebraPresentation {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn alg(&self) -> Result<&Algebra> {
        self.algebra.as_ref().ok_or(Error::MissingStructure("multiplication"))
    }

    pub fn coalg(&self) -> Result<&Coalgebra> {
        self.coalgebra.as_ref().ok_or(Error::MissingStructure("comultiplication"))
    }

    pub fn s(&self) -> Result<&LinMap> {
        self.antipode.as_ref().ok_or(Error::MissingStructure("antipode"))
    }

    pub fn one(&self) -> SparseVec {
        self.algebra.as_ref().map(|a| a.unit.clone()).unwrap_or_default()
    }

    pub fn label(&self, i: usize) -> &str {
        self.basis.get(i).map(String::as_str).unwrap_or("?")
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.basis.iter().position(|b| b == label)
    }

    fn tuple_label(&self, idx: &[usize]) -> String {
        let parts: Vec<&str> = idx.iter().map(|&i| self.label(i)).collect();
        format!("({})", parts.join(", "))
    }

    fn check_dims(&self, level: Level) -> Result<()> {
        let n = self.dim();
        if level == Level::Coalgebra || level >= Level::Bialgebra {
            let c = self.coalg()?;
            if c.dim() != n || c.delta.len() != n {
                return Err(Error::Dimension("comultiplication table size".into()));
            }
            if c.delta.iter().flatten().any(|(a, b, _)| *a >= n || *b >= n) {
                return Err(Error::Dimension("comultiplication index out of range".into()));
            }
        }
        if level >= Level::Algebra {
            let a = self.alg()?;
            if a.mult.len() != n || a.mult.iter().any(|r| r.len() != n) {
                return Err(Error::Dimension("multiplication table size".into()));
            }
            if a.mult.iter().flatten().flat_map(|v| v.0.iter()).any(|(i, _)| *i >= n) {
                return Err(Error::Dimension("multiplication index out of range".into()));
            }
        }
        if level == Level::Hopf {
            let s = self.s()?;
            if s.dom != n || s.cod != n {
                return Err(Error::Dimension("antipode size".into()));
            }
        }
        Ok(())
    }
}

/// Exhaustive axiom check at the requested level. On success the
/// presentation's `verified` flag is raised.
pub fn validate_structure(a: &mut AlgebraPresentation, level: Level) -> Result<Report> {
    let r = validation_report(a, level)?;
    if r.all_pass() && a.verified.is_none_or(|v| v < level) {
        a.verified = Some(level);
    }
    Ok(r)
}

/// Same as [`validate_structure`] without touching the flags.
pub fn validation_report(a: &AlgebraPresentation, level: Level) -> Result<Report> {
    a.check_dims(level)?;
    let n = a.dim();
    let mut rep = Report::new();
    let with_coalg = level == Level::Coalgebra || level >= Level::Bialgebra;
    if with_coalg {
        let c = a.coalg()?;
        rep.timed("coassociativity", || {
            (0..n).into_par_iter().find_map_first(|i| {
                let mut l = Vec::new();
                let mut r = Vec::new();
                for (x1, x2, k) in &c.delta[i] {
                    for (y1, y2, m) in &c.delta[*x1] {
                        l.push(((y1 * n + y2) * n + x2, k * m));
                    }
                    for (y1, y2, m) in &c.delta[*x2] {
                        r.push(((x1 * n + y1) * n + y2, k * m));
                    }
                }
                (SparseVec::from_entries(l) != SparseVec::from_entries(r)).then(|| a.tuple_label(&[i]))
            })
        });
        rep.timed("counit", || {
            (0..n).into_par_iter().find_map_first(|i| {
                let mut l = Acc::new(n);
                let mut r = Acc::new(n);
                for (x1, x2, k) in &c.delta[i] {
                    l.add(*x2, &(&c.eps[*x1] * k));
                    r.add(*x1, &(&c.eps[*x2] * k));
                }
                let e = SparseVec::basis(i, a.field_order);
                (l.finish() != e || r.finish() != e).then(|| a.tuple_label(&[i]))
            })
        });
    }
    if level >= Level::Algebra {
        let m = a.alg()?;
        rep.timed("associativity", || {
            (0..n * n).into_par_iter().find_map_first(|ij| {
                let (i, j) = (ij / n, ij % n);
                let ab = &m.mult[i][j];
                (0..n).find_map(|k| {
                    let l = m.mul_basis_right(ab, k);
                    let r = m.mul_basis_left(i, &m.mult[j][k]);
                    (l != r).then(|| a.tuple_label(&[i, j, k]))
                })
            })
        });
        rep.timed("unit", || {
            (0..n).find_map(|i| {
                let e = SparseVec::basis(i, a.field_order);
                let l = m.mul(&m.unit, &e);
                let r = m.mul(&e, &m.unit);
                (l != e || r != e).then(|| a.tuple_label(&[i]))
            })
        });
    }
    if level >= Level::Bialgebra {
        let c = a.coalg()?;
        let m = a.alg()?;
        rep.timed("comultiplication is multiplicative", || {
            (0..n * n).into_par_iter().find_map_first(|ij| {
                let (i, j) = (ij / n, ij % n);
                let lhs = c.apply(&m.mult[i][j]);
                let mut e = Vec::new();
                for (a1, a2, x) in &c.delta[i] {
                    for (b1, b2, y) in &c.delta[j] {
                        let xy = x * y;
                        for (p, u) in &m.mult[*a1][*b1].0 {
                            for (q, v) in &m.mult[*a2][*b2].0 {
                                e.push((p * n + q, &(&xy * u) * v));
                            }
                        }
                    }
                }
                (lhs != SparseVec::from_entries(e)).then(|| a.tuple_label(&[i, j]))
            })
        });
        rep.timed("counit is multiplicative", || {
            (0..n * n).into_par_iter().find_map_first(|ij| {
                let (i, j) = (ij / n, ij % n);
                (c.counit_of(&m.mult[i][j]) != &c.eps[i] * &c.eps[j]).then(|| a.tuple_label(&[i, j]))
            })
        });
        rep.timed("unit is grouplike", || {
            let d = c.apply(&m.unit);
            let mut e = Vec::new();
            for (i, x) in &m.unit.0 {
                for (j, y) in &m.unit.0 {
                    e.push((i * n + j, x * y));
                }
            }
            let ok = d == SparseVec::from_entries(e) && c.counit_of(&m.unit).is_one();
            (!ok).then(|| "1".to_string())
        });
    }
    if level == Level::Hopf {
        let c = a.coalg()?;
        let m = a.alg()?;
        let s = a.s()?;
        rep.timed("antipode", || {
            (0..n).into_par_iter().find_map_first(|i| {
                let mut l = Acc::new(n);
                let mut r = Acc::new(n);
                for (x1, x2, k) in &c.delta[i] {
                    l.add_vec(&m.mul_basis_right(&s.cols[*x1], *x2), k);
                    r.add_vec(&m.mul_basis_left(*x1, &s.cols[*x2]), k);
                }
                let e = m.unit.scale(&c.eps[i]);
                (l.finish() != e || r.finish() != e).then(|| a.tuple_label(&[i]))
            })
        });
    }
    Ok(rep)
}

/// Coalgebra whose convolution dual is used: either an explicit table or the
/// tensor square of one (for bilinear forms), avoiding materialization.
pub trait CoalgebraLike: Sync {
    fn dim(&self) -> usize;
    fn eps(&self, i: usize) -> Cyc;
    fn for_each_term(&self, i: usize, f: &mut dyn FnMut(usize, usize, &Cyc));
    fn grouplikes(&self) -> Vec<usize>;
}

impl CoalgebraLike for Coalgebra {
    fn dim(&self) -> usize {
        self.eps.len()
    }
    fn eps(&self, i: usize) -> Cyc {
        self.eps[i].clone()
    }
    fn for_each_term(&self, i: usize, f: &mut dyn FnMut(usize, usize, &Cyc)) {
        for (a, b, c) in &self.delta[i] {
            f(*a, *b, c);
        }
    }
    fn grouplikes(&self) -> Vec<usize> {
        self.grouplike_basis()
    }
}

/// The tensor coalgebra A⊗A (ordinary flip structure), index x·n + y.
pub struct TensorSquare<'a>(pub &'a Coalgebra);

impl CoalgebraLike for TensorSquare<'_> {
    fn dim(&self) -> usize {
        self.0.dim() * self.0.dim()
    }
    fn eps(&self, i: usize) -> Cyc {
        let n = self.0.dim();
        &self.0.eps[i / n] * &self.0.eps[i % n]
    }
    fn for_each_term(&self, i: usize, f: &mut dyn FnMut(usize, usize, &Cyc)) {
        let n = self.0.dim();
        for (x1, x2, c) in &self.0.delta[i / n] {
            for (y1, y2, d) in &self.0.delta[i % n] {
                f(x1 * n + y1, x2 * n + y2, &(c * d));
            }
        }
    }
    fn grouplikes(&self) -> Vec<usize> {
        let g = self.0.grouplike_basis();
        let n = self.0.dim();
        let mut out: Vec<usize> = g.iter().flat_map(|a| g.iter().map(move |b| a * n + b)).collect();
        out.sort_unstable();
        out
    }
}

pub fn counit_functional<C: CoalgebraLike + ?Sized>(c: &C) -> Vec<Cyc> {
    (0..c.dim()).map(|i| c.eps(i)).collect()
}

/// (f∗g)(x) = f(x₍₁₎)g(x₍₂₎) for scalar functionals.
pub fn convolve<C: CoalgebraLike + ?Sized>(c: &C, f: &[Cyc], g: &[Cyc]) -> Vec<Cyc> {
    (0..c.dim())
        .into_par_iter()
        .map(|i| {
            let mut acc = Cyc::zero(1);
            c.for_each_term(i, &mut |a, b, k| {
                if !f[a].is_zero() && !g[b].is_zero() {
                    acc += &(&(&f[a] * &g[b]) * k);
                }
            });
            acc
        })
        .collect()
}

/// Convolution of linear maps C → A.
pub fn convolve_maps<C: CoalgebraLike + ?Sized>(c: &C, alg: &Algebra, f: &LinMap, g: &LinMap) -> LinMap {
    let cols = (0..c.dim())
        .into_par_iter()
        .map(|i| {
            let mut acc = Acc::new(alg.dim());
            c.for_each_term(i, &mut |a, b, k| {
                if !f.cols[a].is_zero() && !g.cols[b].is_zero() {
                    acc.add_vec(&alg.mul(&f.cols[a], &g.cols[b]), k);
                }
            });
            acc.finish()
        })
        .collect();
    LinMap { dom: c.dim(), cod: alg.dim(), cols }
}

/// u_A∘ε_C.
pub fn unit_map<C: CoalgebraLike + ?Sized>(c: &C, alg: &Algebra) -> LinMap {
    LinMap { dom: c.dim(), cod: alg.dim(), cols: (0..c.dim()).map(|i| alg.unit.scale(&c.eps(i))).collect() }
}

fn sub(f: &[Cyc], g: &[Cyc]) -> Vec<Cyc> {
    f.iter().zip(g).map(|(a, b)| a - b).collect()
}

fn add(f: &[Cyc], g: &[Cyc]) -> Vec<Cyc> {
    f.iter().zip(g).map(|(a, b)| a + b).collect()
}

/// Σ_{k≥0} n^k for a convolution-nilpotent n; errors past `cap` powers.
pub fn neumann_series<C: CoalgebraLike + ?Sized>(c: &C, n: &[Cyc], cap: usize) -> Result<Vec<Cyc>> {
    let mut sum = counit_functional(c);
    let mut p = n.to_vec();
    for _ in 0..cap {
        if p.iter().all(Cyc::is_zero) {
            return Ok(sum);
        }
        sum = add(&sum, &p);
        p = convolve(c, &p, n);
    }
    if p.iter().all(Cyc::is_zero) {
        Ok(sum)
    } else {
        Err(Error::NotNilpotent(cap))
    }
}

/// Inverse Σ(ε−f)ⁿ for f with ε−f nilpotent (connected coaugmented domain, f(1)=1).
pub fn geometric_inverse<C: CoalgebraLike + ?Sized>(c: &C, f: &[Cyc]) -> Result<Vec<Cyc>> {
    let n = sub(&counit_functional(c), f);
    neumann_series(c, &n, c.dim() + 1)
}

/// Two-sided convolution inverse of a scalar functional.
///
/// On a pointed domain whose coradical is spanned by grouplike basis vectors,
/// t = Σ f(g)⁻¹e_g* makes ε − f∗t vanish on the coradical, hence nilpotent,
/// and f⁻¹ = t ∗ Σ(ε − f∗t)ᵏ. Otherwise a dense solve is used on small domains.
pub fn convolution_inverse<C: CoalgebraLike + ?Sized>(c: &C, f: &[Cyc]) -> Result<Vec<Cyc>> {
    let dim = c.dim();
    let eps = counit_functional(c);
    let gl = c.grouplikes();
    let mut candidate = None;
    if gl.iter().all(|&g| !f[g].is_zero()) {
        let mut t = vec![Cyc::zero(1); dim];
        for &g in &gl {
            t[g] = f[g].inv()?;
        }
        let n = sub(&eps, &convolve(c, f, &t));
        if let Ok(s) = neumann_series(c, &n, dim + 1) {
            candidate = Some(convolve(c, &t, &s));
        }
    }
    let g = match candidate {
        Some(g) => g,
        None if dim <= 400 => dense_inverse(c, f)?,
        None => return Err(Error::NotInvertible("series did not terminate and domain too large for a dense solve".into())),
    };
    let l = convolve(c, f, &g);
    let r = convolve(c, &g, f);
    if l != eps || r != eps {
        let at = (0..dim).find(|&i| l[i] != eps[i] || r[i] != eps[i]).unwrap_or(0);
        return Err(Error::NotInvertible(format!("defect at basis index {at}")));
    }
    Ok(g)
}

/// Solves f ∗ g = ε as a linear system in g.
pub fn dense_inverse<C: CoalgebraLike + ?Sized>(c: &C, f: &[Cyc]) -> Result<Vec<Cyc>> {
    let dim = c.dim();
    let mut m = vec![vec![Cyc::zero(1); dim]; dim];
    for (i, row) in m.iter_mut().enumerate() {
        c.for_each_term(i, &mut |a, b, k| {
            if !f[a].is_zero() {
                row[b] += &(&f[a] * k);
            }
        });
    }
    solve(&m, &counit_functional(c))
}

/// Inverse of a map C → A via Σ(uε − f)ⁿ; requires nilpotency.
pub fn geometric_inverse_map<C: CoalgebraLike + ?Sized>(c: &C, alg: &Algebra, f: &LinMap) -> Result<LinMap> {
    let u = unit_map(c, alg);
    let n = LinMap { dom: f.dom, cod: f.cod, cols: u.cols.iter().zip(&f.cols).map(|(a, b)| a.sub(b)).collect() };
    let mut sum = u.clone();
    let mut p = n.clone();
    for _ in 0..=c.dim() {
        if p.cols.iter().all(SparseVec::is_zero) {
            return Ok(sum);
        }
        sum = LinMap { dom: sum.dom, cod: sum.cod, cols: sum.cols.iter().zip(&p.cols).map(|(a, b)| a.add(b)).collect() };
        p = convolve_maps(c, alg, &p, &n);
    }
    Err(Error::NotNilpotent(c.dim() + 1))
}

/// Inverse of an element of a finite-dimensional algebra by a dense solve.
pub fn element_inverse(alg: &Algebra, x: &SparseVec, n: u32) -> Result<SparseVec> {
    let d = alg.dim();
    // column j of the matrix is e_j · x; solve (·x) y = 1
    let cols: Vec<Vec<Cyc>> = (0..d).map(|j| alg.mul_basis_left(j, x).to_dense(d, n)).collect();
    let m: Vec<Vec<Cyc>> = (0..d).map(|i| (0..d).map(|j| cols[j][i].clone()).collect()).collect();
    let y = SparseVec::from_dense(solve(&m, &alg.unit.to_dense(d, n))?);
    if alg.mul(x, &y) != alg.unit {
        return Err(Error::NotInvertible("element has only a one-sided inverse".into()));
    }
    Ok(y)
}

/// Antipode as the convolution inverse of the identity on a pointed bialgebra
/// whose coradical is spanned by grouplike basis vectors.
pub fn antipode_by_series(a: &AlgebraPresentation) -> Result<LinMap> {
    let (m, c) = (a.alg()?, a.coalg()?);
    let n = a.dim();
    let id = LinMap::identity(n, a.field_order);
    let mut t = LinMap::zero(n, n);
    for g in c.grouplike_basis() {
        t.cols[g] = element_inverse(m, &SparseVec::basis(g, a.field_order), a.field_order)?;
    }
    let u = unit_map(c, m);
    let it = convolve_maps(c, m, &id, &t);
    let nil = LinMap { dom: n, cod: n, cols: u.cols.iter().zip(&it.cols).map(|(x, y)| x.sub(y)).collect() };
    let mut sum = u;
    let mut p = nil.clone();
    for _ in 0..=n {
        if p.cols.iter().all(SparseVec::is_zero) {
            let s = convolve_maps(c, m, &t, &sum);
            return Ok(s);
        }
        sum = LinMap { dom: n, cod: n, cols: sum.cols.iter().zip(&p.cols).map(|(x, y)| x.add(y)).collect() };
        p = convolve_maps(c, m, &p, &nil);
    }
    Err(Error::NotNilpotent(n + 1))
}

/// Connectedness of a coaugmented coalgebra (coradical = K·1): the augmentation
/// ideal {f : f(1) = 0} of the dual algebra is nilpotent.
pub fn is_connected(c: &Coalgebra, one: &SparseVec, n: u32) -> bool {
    let d = c.dim();
    let row: Vec<Cyc> = one.to_dense(d, n);
    let ideal: Vec<Vec<Cyc>> = crate::linalg::kernel(&[row], d, n);
    let mut power = ideal.clone();
    for _ in 0..=d {
        if power.is_empty() {
            return true;
        }
        let mut next: Vec<Vec<Cyc>> = Vec::new();
        for p in &power {
            for f in &ideal {
                next.push(convolve(c, p, f));
            }
        }
        let mut red = next;
        let piv = crate::linalg::rref(&mut red);
        red.truncate(piv.len());
        if red.len() == power.len() && !red.is_empty() {
            // a nonzero power stabilized: not nilpotent
            return false;
        }
        power = red;
    }
    power.is_empty()
}

/// Scalar-valued map on A⊗A stored densely, index x·n + y.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilForm {
    pub dim: usize,
    pub vals: Vec<Cyc>,
}

impl BilForm {
    pub fn zero(dim: usize) -> Self {
        BilForm { dim, vals: vec![Cyc::zero(1); dim * dim] }
    }

    /// ε⊗ε.
    pub fn counit(c: &Coalgebra) -> Self {
        let n = c.dim();
        BilForm { dim: n, vals: (0..n * n).map(|i| &c.eps[i / n] * &c.eps[i % n]).collect() }
    }

    pub fn get(&self, i: usize, j: usize) -> &Cyc {
        &self.vals[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Cyc) {
        self.vals[i * self.dim + j] = v;
    }

    /// Evaluates on u ⊗ e_j for a vector u.
    pub fn eval_left(&self, u: &SparseVec, j: usize) -> Cyc {
        let mut acc = Cyc::zero(1);
        for (i, c) in &u.0 {
            let v = self.get(*i, j);
            if !v.is_zero() {
                acc += &(c * v);
            }
        }
        acc
    }

    pub fn eval_right(&self, i: usize, w: &SparseVec) -> Cyc {
        let mut acc = Cyc::zero(1);
        for (j, c) in &w.0 {
            let v = self.get(i, *j);
            if !v.is_zero() {
                acc += &(c * v);
            }
        }
        acc
    }

    pub fn support(&self) -> Vec<(usize, usize)> {
        (0..self.vals.len()).filter(|&k| !self.vals[k].is_zero()).map(|k| (k / self.dim, k % self.dim)).collect()
    }

    pub fn convolve(&self, other: &BilForm, c: &Coalgebra) -> BilForm {
        BilForm { dim: self.dim, vals: convolve(&TensorSquare(c), &self.vals, &other.vals) }
    }

    pub fn inverse(&self, c: &Coalgebra) -> Result<BilForm> {
        Ok(BilForm { dim: self.dim, vals: convolution_inverse(&TensorSquare(c), &self.vals)? })
    }

    pub fn sub(&self, other: &BilForm) -> BilForm {
        BilForm { dim: self.dim, vals: sub(&self.vals, &other.vals) }
    }

    pub fn add(&self, other: &BilForm) -> BilForm {
        BilForm { dim: self.dim, vals: add(&self.vals, &other.vals) }
    }

    pub fn scale(&self, k: &Cyc) -> BilForm {
        BilForm { dim: self.dim, vals: self.vals.iter().map(|v| v * k).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.vals.iter().all(Cyc::is_zero)
    }

    /// First pair where the forms differ.
    pub fn first_difference(&self, other: &BilForm) -> Option<(usize, usize)> {
        (0..self.vals.len()).find(|&k| self.vals[k] != other.vals[k]).map(|k| (k / self.dim, k % self.dim))
    }
}

/// Finite abelian group ∏ C_{orders[k]}; elements are mixed-radix indices with
/// the last factor varying fastest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupData {
    pub orders: Vec<u32>,
    pub names: Vec<String>,
}

/// Character given by exponents: χ(generator k) = ζ_N^{exps[k]}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    pub exps: Vec<i64>,
}

impl GroupData {
    pub fn new(orders: Vec<u32>, names: Vec<&str>) -> Result<Self> {
        if orders.is_empty() || orders.len() != names.len() || orders.contains(&0) {
            return Err(Error::Invalid("group needs matching positive orders and names".into()));
        }
        Ok(GroupData { orders, names: names.into_iter().map(String::from).collect() })
    }

    pub fn cyclic(n: u32, name: &str) -> Self {
        GroupData { orders: vec![n], names: vec![name.to_string()] }
    }

    pub fn size(&self) -> usize {
        self.orders.iter().map(|&o| o as usize).product()
    }

    pub fn encode(&self, e: &[i64]) -> usize {
        let mut idx = 0usize;
        for (k, &o) in self.orders.iter().enumerate() {
            idx = idx * o as usize + e[k].rem_euclid(o as i64) as usize;
        }
        idx
    }

    pub fn decode(&self, mut idx: usize) -> Vec<i64> {
        let mut e = vec![0i64; self.orders.len()];
        for k in (0..self.orders.len()).rev() {
            let o = self.orders[k] as usize;
            e[k] = (idx % o) as i64;
            idx /= o;
        }
        e
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        let (x, y) = (self.decode(a), self.decode(b));
        self.encode(&x.iter().zip(&y).map(|(p, q)| p + q).collect::<Vec<_>>())
    }

    pub fn inv(&self, a: usize) -> usize {
        self.encode(&self.decode(a).iter().map(|p| -p).collect::<Vec<_>>())
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        self.encode(&self.decode(a).iter().map(|p| p * k).collect::<Vec<_>>())
    }

    pub fn label(&self, a: usize) -> String {
        let e = self.decode(a);
        let parts: Vec<String> = e.iter().zip(&self.names).filter(|(p, _)| **p != 0)
            .map(|(p, n)| if *p == 1 { n.clone() } else { format!("{n}^{p}") })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(" ")
        }
    }

    /// χ(a) in Q(ζ_N).
    pub fn chi(&self, ch: &Character, a: usize, n: u32) -> Cyc {
        let e = self.decode(a);
        Cyc::zeta(n, e.iter().zip(&ch.exps).map(|(p, q)| p * q).sum())
    }

    /// Character values must be roots of unity of order dividing the factor order.
    pub fn check_character(&self, ch: &Character, n: u32) -> Result<()> {
        if ch.exps.len() != self.orders.len() {
            return Err(Error::Invalid("character arity".into()));
        }
        for (k, &o) in self.orders.iter().enumerate() {
            if (ch.exps[k] * o as i64).rem_euclid(n as i64) != 0 {
                return Err(Error::Invalid(format!("character value on generator {k} has order not dividing {o}")));
            }
        }
        Ok(())
    }

    pub fn char_mul(&self, a: &Character, b: &Character) -> Character {
        Character { exps: a.exps.iter().zip(&b.exps).map(|(x, y)| x + y).collect() }
    }

    pub fn char_pow(&self, a: &Character, k: i64) -> Character {
        Character { exps: a.exps.iter().map(|x| x * k).collect() }
    }

    pub fn char_is_trivial(&self, a: &Character, n: u32) -> bool {
        (0..self.orders.len()).all(|k| {
            let mut e = vec![0i64; self.orders.len()];
            e[k] = 1;
            self.chi(a, self.encode(&e), n).is_one()
        })
    }
}

/// K[Γ] with Δ(g)=g⊗g, ε(g)=1, S(g)=g⁻¹; verified at level hopf.
pub fn group_hopf_algebra(g: &GroupData, field_order: u32) -> Result<AlgebraPresentation> {
    let n = g.size();
    let one = || Cyc::one(field_order);
    let mult = (0..n).map(|a| (0..n).map(|b| SparseVec::basis(g.mul(a, b), field_order)).collect()).collect();
    let delta = (0..n).map(|a| vec![(a, a, one())]).collect();
    let mut h = AlgebraPresentation {
        field_order,
        basis: (0..n).map(|a| g.label(a)).collect(),
        algebra: Some(Algebra { mult, unit: SparseVec::basis(0, field_order) }),
        coalgebra: Some(Coalgebra { delta, eps: vec![one(); n] }),
        antipode: Some(LinMap { dom: n, cod: n, cols: (0..n).map(|a| SparseVec::basis(g.inv(a), field_order)).collect() }),
        verified: None,
    };
    let rep = validate_structure(&mut h, Level::Hopf)?;
    if !rep.all_pass() {
        return Err(Error::Invalid(format!("group algebra failed validation: {:?}", rep.failures().next())));
    }
    Ok(h)
}

/// Λ(g) = δ_{g,1} on a group algebra (basis element 0 is the identity);
/// errors if it is not a two-sided integral.
pub fn total_integral(h: &AlgebraPresentation) -> Result<Vec<Cyc>> {
    let n = h.dim();
    let unit = h.one();
    let Some((e, _)) = unit.0.first().filter(|_| unit.len() == 1) else {
        return Err(Error::Invalid("unit is not a basis element".into()));
    };
    let mut lam = vec![Cyc::zero(h.field_order); n];
    lam[*e] = Cyc::one(h.field_order);
    if !is_integral(h, &lam)? {
        return Err(Error::Invalid("δ_{g,1} is not an integral".into()));
    }
    Ok(lam)
}

/// h₍₁₎λ(h₍₂₎) = λ(h)1 = λ(h₍₁₎)h₍₂₎ on every basis element.
pub fn is_integral(h: &AlgebraPresentation, lam: &[Cyc]) -> Result<bool> {
    let c = h.coalg()?;
    let one = h.one();
    for i in 0..h.dim() {
        let mut l = Acc::new(h.dim());
        let mut r = Acc::new(h.dim());
        for (a, b, k) in &c.delta[i] {
            l.add(*a, &(&lam[*b] * k));
            r.add(*b, &(&lam[*a] * k));
        }
        let want = one.scale(&lam[i]);
        if l.finish() != want || r.finish() != want {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Adjoint action table: act[h][m] = h₍₁₎ m S(h₍₂₎).
pub fn adjoint_action(h: &AlgebraPresentation) -> Result<Vec<Vec<SparseVec>>> {
    let (m, c, s) = (h.alg()?, h.coalg()?, h.s()?);
    let n = h.dim();
    Ok((0..n)
        .map(|x| {
            (0..n)
                .map(|y| {
                    let mut acc = Acc::new(n);
                    for (a, b, k) in &c.delta[x] {
                        acc.add_vec(&m.mul(&m.mult[*a][y], &s.cols[*b]), k);
                    }
                    acc.finish()
                })
                .collect()
        })
        .collect())
}

/// S^γ(x) = γ(x₍₁₎⊗S(x₍₂₎)) S(x₍₃₎) γ⁻¹(S(x₍₄₎)⊗x₍₅₎) with left-nested Δ⁴.
pub fn antipode_of_twist(a: &AlgebraPresentation, gamma: &BilForm, gamma_inv: &BilForm) -> Result<LinMap> {
    let (c, s) = (a.coalg()?, a.s()?);
    let n = a.dim();
    let cols = (0..n)
        .into_par_iter()
        .map(|x| {
            let mut acc = Acc::new(n);
            for (legs, k) in c.iterate(x, 4) {
                let g1 = gamma.eval_right(legs[0], &s.cols[legs[1]]);
                if g1.is_zero() {
                    continue;
                }
                let g2 = gamma_inv.eval_left(&s.cols[legs[3]], legs[4]);
                if g2.is_zero() {
                    continue;
                }
                acc.add_vec(&s.cols[legs[2]], &(&(&g1 * &g2) * &k));
            }
            acc.finish()
        })
        .collect();
    Ok(LinMap { dom: n, cod: n, cols })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c9_antipode_and_validation() {
        let g = GroupData::cyclic(9, "c");
        let h = group_hopf_algebra(&g, 9).unwrap();
        assert_eq!(h.verified, Some(Level::Hopf));
        let c = h.index_of("c").unwrap();
        let c8 = h.index_of("c^8").unwrap();
        assert_eq!(h.s().unwrap().cols[c], SparseVec::basis(c8, 9));
    }

    #[test]
    fn counit_failure_has_witness() {
        // one-dimensional space with Δ(x) = x⊗x but ε(x) = 0
        let p = AlgebraPresentation {
            field_order: 1,
            basis: vec!["x".into()],
            algebra: None,
            coalgebra: Some(Coalgebra { delta: vec![vec![(0, 0, Cyc::one(1))]], eps: vec![Cyc::zero(1)] }),
            antipode: None,
            verified: None,
        };
        let r = validation_report(&p, Level::Coalgebra).unwrap();
        let c = r.find("counit").unwrap();
        assert_eq!(c.witness.as_deref(), Some("(x)"));
        assert!(r.find("coassociativity").unwrap().passed());
    }

    #[test]
    fn missing_structure_is_an_error() {
        let p = AlgebraPresentation { field_order: 1, basis: vec!["x".into()], algebra: None, coalgebra: None, antipode: None, verified: None };
        assert_eq!(validation_report(&p, Level::Algebra).unwrap_err(), Error::MissingStructure("multiplication"));
    }

    #[test]
    fn integral_and_adjoint_action() {
        let g = GroupData::new(vec![2, 4], vec!["g", "h"]).unwrap();
        let h = group_hopf_algebra(&g, 4).unwrap();
        let lam = total_integral(&h).unwrap();
        assert!(lam[0].is_one());
        assert!(lam[1..].iter().all(Cyc::is_zero));
        let act = adjoint_action(&h).unwrap();
        for (x, row) in act.iter().enumerate() {
            for (y, v) in row.iter().enumerate() {
                let _ = x;
                assert_eq!(*v, SparseVec::basis(y, 4));
            }
        }
        assert_eq!(g.label(g.encode(&[1, 2])), "g h^2");
    }

    #[test]
    fn counit_is_convolution_unit_and_self_inverse() {
        let g = GroupData::cyclic(3, "c");
        let h = group_hopf_algebra(&g, 3).unwrap();
        let c = h.coalg().unwrap();
        let eps = counit_functional(c);
        let f: Vec<Cyc> = vec![Cyc::from_int(3, 2), Cyc::zeta(3, 1), Cyc::from_int(3, -1)];
        assert_eq!(convolve(c, &f, &eps), f);
        assert_eq!(convolution_inverse(c, &eps).unwrap(), eps);
        let fi = convolution_inverse(c, &f).unwrap();
        assert_eq!(convolve(c, &f, &fi), eps);
        assert_eq!(dense_inverse(c, &f).unwrap(), fi);
    }

    #[test]
    fn iterate_matches_manual_delta2() {
        let g = GroupData::cyclic(2, "g");
        let h = group_hopf_algebra(&g, 2).unwrap();
        let c = h.coalg().unwrap();
        let d = c.iterate(1, 2);
        assert_eq!(d, vec![(vec![1, 1, 1], Cyc::one(1))]);
    }
}
