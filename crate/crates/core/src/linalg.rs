//! Sparse vectors, linear maps between basis-indexed spaces and exact
//! Gaussian elimination.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Cyc;

/// Sparse vector: strictly increasing indices, no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SparseVec(pub Vec<(usize, Cyc)>);

impl SparseVec {
    pub fn zero() -> Self {
        SparseVec(Vec::new())
    }

    pub fn basis(i: usize, n: u32) -> Self {
        SparseVec(vec![(i, Cyc::one(n))])
    }

    pub fn single(i: usize, c: Cyc) -> Self {
        if c.is_zero() {
            SparseVec::zero()
        } else {
            SparseVec(vec![(i, c)])
        }
    }

    /// Builds from unsorted entries, merging duplicates and dropping zeros.
    pub fn from_entries(mut e: Vec<(usize, Cyc)>) -> Self {
        e.sort_by_key(|(i, _)| *i);
        let mut out: Vec<(usize, Cyc)> = Vec::with_capacity(e.len());
        for (i, c) in e {
            match out.last_mut() {
                Some((j, d)) if *j == i => *d += &c,
                _ => out.push((i, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        SparseVec(out)
    }

    pub fn from_dense(d: Vec<Cyc>) -> Self {
        SparseVec(d.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect())
    }

    pub fn to_dense(&self, dim: usize, n: u32) -> Vec<Cyc> {
        let mut d = vec![Cyc::zero(n); dim];
        for (i, c) in &self.0 {
            d[*i] = c.clone();
        }
        d
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<&Cyc> {
        self.0.binary_search_by_key(&i, |(j, _)| *j).ok().map(|k| &self.0[k].1)
    }

    pub fn iter(&self) -> impl Iterator<Item = &(usize, Cyc)> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn scale(&self, c: &Cyc) -> SparseVec {
        if c.is_zero() {
            return SparseVec::zero();
        }
        SparseVec(self.0.iter().map(|(i, v)| (*i, v * c)).filter(|(_, v)| !v.is_zero()).collect())
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i].clone());
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                out.push(b[j].clone());
                j += 1;
            } else {
                let s = &a[i].1 + &b[j].1;
                if !s.is_zero() {
                    out.push((a[i].0, s));
                }
                i += 1;
                j += 1;
            }
        }
        SparseVec(out)
    }

    pub fn sub(&self, other: &SparseVec) -> SparseVec {
        self.add(&other.scale(&Cyc::from_int(1, -1)))
    }

    /// Σ v_i w_i against a dense vector.
    pub fn dot_dense(&self, w: &[Cyc]) -> Cyc {
        let mut acc = Cyc::zero(1);
        for (i, c) in &self.0 {
            if !w[*i].is_zero() {
                acc += &(c * &w[*i]);
            }
        }
        acc
    }
}

/// Accumulator producing a [`SparseVec`]; terms are merged on `finish`.
pub struct Acc {
    terms: Vec<(usize, Cyc)>,
}

impl Acc {
    /// `dim` is a capacity hint only.
    pub fn new(dim: usize) -> Self {
        Acc { terms: Vec::with_capacity(dim.min(16)) }
    }

    pub fn add(&mut self, i: usize, c: &Cyc) {
        if !c.is_zero() {
            self.terms.push((i, c.clone()));
        }
    }

    pub fn add_vec(&mut self, v: &SparseVec, c: &Cyc) {
        if c.is_zero() {
            return;
        }
        if c.is_one() {
            return self.add_vec_unit(v);
        }
        for (i, x) in &v.0 {
            self.terms.push((*i, x * c));
        }
    }

    pub fn add_vec_unit(&mut self, v: &SparseVec) {
        self.terms.extend(v.0.iter().cloned());
    }

    pub fn finish(mut self) -> SparseVec {
        self.terms.sort_by_key(|t| t.0);
        let mut out: Vec<(usize, Cyc)> = Vec::with_capacity(self.terms.len());
        for (i, c) in self.terms {
            match out.last_mut() {
                Some((j, d)) if *j == i => *d += &c,
                _ => out.push((i, c)),
            }
        }
        out.retain(|t| !t.1.is_zero());
        SparseVec(out)
    }
}

/// Linear map between basis-indexed spaces, stored as sparse images of the
/// domain basis vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinMap {
    pub dom: usize,
    pub cod: usize,
    pub cols: Vec<SparseVec>,
}

impl LinMap {
    pub fn new(dom: usize, cod: usize, cols: Vec<SparseVec>) -> Result<Self> {
        if cols.len() != dom {
            return Err(Error::Dimension(format!("{} columns for domain of dimension {dom}", cols.len())));
        }
        if let Some((i, _)) = cols.iter().flat_map(|c| c.0.iter()).find(|(i, _)| *i >= cod) {
            return Err(Error::Dimension(format!("row index {i} out of range {cod}")));
        }
        Ok(LinMap { dom, cod, cols })
    }

    pub fn identity(dim: usize, n: u32) -> Self {
        LinMap { dom: dim, cod: dim, cols: (0..dim).map(|i| SparseVec::basis(i, n)).collect() }
    }

    pub fn zero(dom: usize, cod: usize) -> Self {
        LinMap { dom, cod, cols: vec![SparseVec::zero(); dom] }
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut acc = Acc::new(self.cod);
        for (i, c) in &v.0 {
            acc.add_vec(&self.cols[*i], c);
        }
        acc.finish()
    }

    /// self ∘ other.
    pub fn compose(&self, other: &LinMap) -> Result<LinMap> {
        if other.cod != self.dom {
            return Err(Error::Dimension(format!("compose {}→{} after {}→{}", self.dom, self.cod, other.dom, other.cod)));
        }
        Ok(LinMap { dom: other.dom, cod: self.cod, cols: other.cols.iter().map(|c| self.apply(c)).collect() })
    }

    /// First column where the two maps differ.
    pub fn first_difference(&self, other: &LinMap) -> Option<usize> {
        (0..self.dom.min(other.dom)).find(|&i| self.cols[i] != other.cols[i])
    }
}

/// Gaussian elimination to reduced row echelon form; returns pivot columns.
pub fn rref(m: &mut [Vec<Cyc>]) -> Vec<usize> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("nonzero pivot");
        for j in c..cols {
            if !m[r][j].is_zero() {
                m[r][j] = &m[r][j] * &inv;
            }
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    if !m[r][j].is_zero() {
                        let t = &f * &m[r][j];
                        m[i][j] -= &t;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of the kernel of a dense matrix (rows × cols), in reduced form:
/// each kernel vector has a 1 at its free column and 0 at the other free columns.
pub fn kernel(m: &[Vec<Cyc>], cols: usize, n: u32) -> Vec<Vec<Cyc>> {
    let mut a: Vec<Vec<Cyc>> = m.to_vec();
    let pivots = rref(&mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Cyc::zero(n); cols];
            v[f] = Cyc::one(n);
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -&a[r][f];
            }
            v
        })
        .collect()
}

/// Solves M x = b for square M; errors when M is singular.
pub fn solve(m: &[Vec<Cyc>], b: &[Cyc]) -> Result<Vec<Cyc>> {
    let n = m.len();
    let mut a: Vec<Vec<Cyc>> = m.iter().zip(b).map(|(row, bi)| {
        let mut r = row.clone();
        r.push(bi.clone());
        r
    }).collect();
    let pivots = rref(&mut a);
    if pivots.len() < n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
        return Err(Error::NotInvertible(format!("singular system, rank {} of {n}", pivots.iter().filter(|&&p| p < n).count())));
    }
    Ok(a.into_iter().map(|r| r[n].clone()).collect())
}

/// Rank of a list of sparse vectors in a space of dimension `dim`.
pub fn rank(vs: &[SparseVec], dim: usize, n: u32) -> usize {
    let mut m: Vec<Vec<Cyc>> = vs.iter().map(|v| v.to_dense(dim, n)).collect();
    rref(&mut m).len()
}

/// Subspace with a basis in reduced form so coordinates can be read off at
/// the pivot positions.
#[derive(Clone, Debug)]
pub struct Subspace {
    pub ambient: usize,
    pub basis: Vec<SparseVec>,
    pub pivots: Vec<usize>,
}

impl Subspace {
    /// Builds from basis vectors that are unit vectors at distinct positions or
    /// otherwise already reduced at the given pivots.
    pub fn from_reduced(ambient: usize, basis: Vec<SparseVec>, pivots: Vec<usize>) -> Self {
        Subspace { ambient, basis, pivots }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of a vector assumed to lie in the subspace.
    pub fn coords(&self, v: &SparseVec) -> SparseVec {
        SparseVec(
            self.pivots.iter().enumerate()
                .filter_map(|(k, &p)| v.get(p).map(|c| (k, c.clone())))
                .collect(),
        )
    }

    /// Coordinates together with a membership test.
    pub fn try_coords(&self, v: &SparseVec) -> Option<SparseVec> {
        let c = self.coords(v);
        let mut acc = Acc::new(self.ambient);
        for (k, x) in &c.0 {
            acc.add_vec(&self.basis[*k], x);
        }
        (acc.finish() == *v).then_some(c)
    }

    pub fn embed(&self, coords: &SparseVec) -> SparseVec {
        let mut acc = Acc::new(self.ambient);
        for (k, x) in &coords.0 {
            acc.add_vec(&self.basis[*k], x);
        }
        acc.finish()
    }
}

/// Formats a sparse vector against basis labels, e.g. "2·x1 - 1#c".
pub fn fmt_vec(v: &SparseVec, labels: &[String]) -> String {
    if v.is_zero() {
        return "0".into();
    }
    let mut s = String::new();
    for (k, (i, c)) in v.0.iter().enumerate() {
        let coef = c.to_string();
        let lab = labels.get(*i).map(String::as_str).unwrap_or("?");
        let wrapped = if c.coeffs().len() > 1 { format!("({coef})") } else { coef };
        if k > 0 {
            s.push_str(" + ");
        }
        if c.is_one() {
            s.push_str(lab);
        } else {
            s.push_str(&format!("{wrapped}·{lab}"));
        }
    }
    s
}

impl fmt::Display for SparseVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(i, c)| format!("{c}·e{i}")).collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(v: i64) -> Cyc {
        Cyc::from_int(3, v)
    }

    #[test]
    fn kernel_of_rank_one() {
        let m = vec![vec![c(1), c(2), c(3)]];
        let k = kernel(&m, 3, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            let dot = &(&(&m[0][0] * &v[0]) + &(&m[0][1] * &v[1])) + &(&m[0][2] * &v[2]);
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn solve_two_by_two() {
        let m = vec![vec![c(2), c(1)], vec![c(1), c(1)]];
        let x = solve(&m, &[c(3), c(2)]).unwrap();
        assert_eq!(x, vec![c(1), c(1)]);
        assert!(solve(&[vec![c(1), c(1)], vec![c(2), c(2)]], &[c(0), c(0)]).is_err());
    }

    #[test]
    fn sparse_add_cancels() {
        let a = SparseVec::from_entries(vec![(2, c(1)), (0, c(1)), (2, c(1))]);
        assert_eq!(a, SparseVec(vec![(0, c(1)), (2, c(2))]));
        assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn compose_dimension_mismatch() {
        let f = LinMap::identity(2, 3);
        let g = LinMap::zero(3, 3);
        assert!(f.compose(&g).is_err());
    }
}
