//! Exact arithmetic in cyclotomic fields Q(ζ_n) and q-combinatorics.
//!
//! Elements are stored in the power basis 1, ζ, …, ζ^{φ(n)-1} modulo the
//! n-th cyclotomic polynomial. Coefficients are exact rationals; small values
//! stay on machine integers and promote to big integers on overflow.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest supported cyclotomic order.
pub const MAX_ORDER: u32 = 1024;

/// Exact rational number.
#[derive(Clone, Debug)]
pub enum Rat {
    Small(Ratio<i64>),
    Big(Box<BigRational>),
}

impl Rat {
    pub fn zero() -> Self {
        Rat::Small(Ratio::from_integer(0))
    }

    pub fn one() -> Self {
        Rat::Small(Ratio::from_integer(1))
    }

    pub fn from_int(v: i64) -> Self {
        Rat::Small(Ratio::from_integer(v))
    }

    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Rat::from_big(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    fn from_big(b: BigRational) -> Self {
        match (b.numer().to_i64(), b.denom().to_i64()) {
            (Some(n), Some(d)) if n != i64::MIN && d != i64::MIN => {
                Rat::Small(Ratio::new_raw(n, d))
            }
            _ => Rat::Big(Box::new(b)),
        }
    }

    fn to_big(&self) -> BigRational {
        match self {
            Rat::Small(r) => BigRational::new_raw(BigInt::from(*r.numer()), BigInt::from(*r.denom())),
            Rat::Big(b) => (**b).clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Rat::Small(r) => r.numer().is_zero(),
            Rat::Big(b) => b.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Rat::Small(r) => r.is_one(),
            Rat::Big(b) => b.is_one(),
        }
    }

    pub fn recip(&self) -> Result<Rat> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rat::from_big(self.to_big().recip()))
    }

    pub fn signum(&self) -> i32 {
        match self {
            Rat::Small(r) => r.numer().signum() as i32,
            Rat::Big(b) => {
                if b.is_positive() {
                    1
                } else if b.is_negative() {
                    -1
                } else {
                    0
                }
            }
        }
    }

    /// Numerator and denominator when both fit in machine integers.
    pub fn as_small(&self) -> Option<(i64, i64)> {
        match self {
            Rat::Small(r) => Some((*r.numer(), *r.denom())),
            Rat::Big(_) => None,
        }
    }
}

impl PartialEq for Rat {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Rat::Small(a), Rat::Small(b)) => a == b,
            _ => self.to_big() == other.to_big(),
        }
    }
}

impl Eq for Rat {}

impl PartialOrd for Rat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rat {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Rat::Small(a), Rat::Small(b)) => a.cmp(b),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl Add for &Rat {
    type Output = Rat;
    fn add(self, rhs: &Rat) -> Rat {
        if let (Rat::Small(a), Rat::Small(b)) = (self, rhs) {
            if let Some(s) = a.checked_add(b) {
                return Rat::Small(s);
            }
        }
        Rat::from_big(self.to_big() + rhs.to_big())
    }
}

impl Sub for &Rat {
    type Output = Rat;
    fn sub(self, rhs: &Rat) -> Rat {
        if let (Rat::Small(a), Rat::Small(b)) = (self, rhs) {
            if let Some(s) = a.checked_sub(b) {
                return Rat::Small(s);
            }
        }
        Rat::from_big(self.to_big() - rhs.to_big())
    }
}

impl Mul for &Rat {
    type Output = Rat;
    fn mul(self, rhs: &Rat) -> Rat {
        if let (Rat::Small(a), Rat::Small(b)) = (self, rhs) {
            if let Some(s) = a.checked_mul(b) {
                return Rat::Small(s);
            }
        }
        Rat::from_big(self.to_big() * rhs.to_big())
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        match self {
            Rat::Small(r) if *r.numer() != i64::MIN => Rat::Small(Ratio::new_raw(-r.numer(), *r.denom())),
            _ => Rat::from_big(-self.to_big()),
        }
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rat::Small(r) => {
                if *r.denom() == 1 {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Rat::Big(b) => {
                if b.denom().is_one() {
                    write!(f, "{}", b.numer())
                } else {
                    write!(f, "{}/{}", b.numer(), b.denom())
                }
            }
        }
    }
}

impl FromStr for Rat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Rat> {
        let t = s.trim();
        let bad = || Error::MalformedScalar(s.to_string());
        if t.is_empty() {
            return Err(bad());
        }
        let (n, d) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Ok(Rat::from_big(BigRational::new(n, d)))
    }
}

/// Precomputed data for Q(ζ_n).
#[derive(Debug)]
struct FieldCtx {
    phi: usize,
    /// Power-basis coordinates of ζ^k for k in 0..n.
    powers: Vec<Vec<i64>>,
}

static CTX: [OnceLock<FieldCtx>; (MAX_ORDER + 1) as usize] =
    [const { OnceLock::new() }; (MAX_ORDER + 1) as usize];

/// Integer coefficients of the n-th cyclotomic polynomial, lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    assert!(n >= 1);
    // x^n - 1 divided by Φ_d for every proper divisor d.
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            num = poly_div_exact(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let lead = den[dd];
    debug_assert!(lead == 1);
    let qd = num.len() - 1 - dd;
    let mut quot = vec![0i64; qd + 1];
    for i in (0..=qd).rev() {
        let c = rem[i + dd] / lead;
        quot[i] = c;
        for (j, dj) in den.iter().enumerate() {
            rem[i + j] -= c * dj;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

fn ctx(n: u32) -> &'static FieldCtx {
    assert!((1..=MAX_ORDER).contains(&n), "field order {n} out of range");
    CTX[n as usize].get_or_init(|| {
        let poly = cyclotomic_polynomial(n);
        let phi = poly.len() - 1;
        let mut powers = Vec::with_capacity(n as usize);
        let mut cur = vec![0i64; phi];
        cur[0] = 1;
        for _ in 0..n {
            powers.push(cur.clone());
            // multiply by x and reduce with the monic relation
            let top = cur[phi - 1];
            let mut next = vec![0i64; phi];
            for i in (1..phi).rev() {
                next[i] = cur[i - 1];
            }
            for i in 0..phi {
                next[i] -= top * poly[i];
            }
            cur = next;
        }
        FieldCtx { phi, powers }
    })
}

/// Euler totient of n, i.e. the degree of Q(ζ_n).
pub fn phi(n: u32) -> usize {
    ctx(n).phi
}

/// Element of Q(ζ_n) in the power basis; trailing zero coefficients are trimmed.
#[derive(Clone, Debug)]
pub struct Cyc {
    n: u32,
    c: Vec<Rat>,
}

fn trim(mut c: Vec<Rat>) -> Vec<Rat> {
    while c.last().is_some_and(|r| r.is_zero()) {
        c.pop();
    }
    c
}

impl Cyc {
    pub fn zero(n: u32) -> Self {
        Cyc { n, c: Vec::new() }
    }

    pub fn one(n: u32) -> Self {
        Cyc { n, c: vec![Rat::one()] }
    }

    pub fn from_int(n: u32, v: i64) -> Self {
        Cyc::from_rat(n, Rat::from_int(v))
    }

    pub fn from_rat(n: u32, r: Rat) -> Self {
        Cyc { n, c: trim(vec![r]) }
    }

    /// ζ_n^k for any integer k.
    pub fn zeta(n: u32, k: i64) -> Self {
        let e = k.rem_euclid(n as i64) as usize;
        let c = ctx(n).powers[e].iter().map(|&v| Rat::from_int(v)).collect();
        Cyc { n, c: trim(c) }
    }

    /// Builds an element from power-basis coefficients, reducing any excess.
    pub fn from_coeffs(n: u32, coeffs: Vec<Rat>) -> Self {
        let cx = ctx(n);
        if coeffs.len() <= cx.phi {
            return Cyc { n, c: trim(coeffs) };
        }
        let mut acc = vec![Rat::zero(); cx.phi];
        for (i, a) in coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (t, &p) in cx.powers[i % n as usize].iter().enumerate() {
                if p != 0 {
                    acc[t] = &acc[t] + &(a * &Rat::from_int(p));
                }
            }
        }
        Cyc { n, c: trim(acc) }
    }

    pub fn order(&self) -> u32 {
        self.n
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }

    /// The rational value when the element lies in Q.
    pub fn as_rational(&self) -> Option<Rat> {
        match self.c.len() {
            0 => Some(Rat::zero()),
            1 => Some(self.c[0].clone()),
            _ => None,
        }
    }

    /// Embeds into Q(ζ_m); requires n | m.
    pub fn lift(&self, m: u32) -> Result<Cyc> {
        if m == self.n {
            return Ok(self.clone());
        }
        if !m.is_multiple_of(self.n) {
            return Err(Error::OrderMismatch(self.n, m));
        }
        if m > MAX_ORDER {
            return Err(Error::UnsupportedOrder(m));
        }
        let step = (m / self.n) as usize;
        let cx = ctx(m);
        let mut acc = vec![Rat::zero(); cx.phi];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (t, &p) in cx.powers[(i * step) % m as usize].iter().enumerate() {
                if p != 0 {
                    acc[t] = &acc[t] + &(a * &Rat::from_int(p));
                }
            }
        }
        Ok(Cyc { n: m, c: trim(acc) })
    }

    fn common(a: &Cyc, b: &Cyc) -> (std::borrow::Cow<'static, ()>, u32) {
        (std::borrow::Cow::Owned(()), a.n.lcm(&b.n))
    }

    fn coerced<'a>(a: &'a Cyc, b: &'a Cyc) -> (std::borrow::Cow<'a, Cyc>, std::borrow::Cow<'a, Cyc>) {
        use std::borrow::Cow;
        if a.n == b.n {
            return (Cow::Borrowed(a), Cow::Borrowed(b));
        }
        // rationals embed in every field without recomputation
        if a.c.len() <= 1 {
            return (Cow::Owned(Cyc { n: b.n, c: a.c.clone() }), Cow::Borrowed(b));
        }
        if b.c.len() <= 1 {
            return (Cow::Borrowed(a), Cow::Owned(Cyc { n: a.n, c: b.c.clone() }));
        }
        let (_, m) = Cyc::common(a, b);
        let la = a.lift(m).expect("lcm order supported");
        let lb = b.lift(m).expect("lcm order supported");
        (Cow::Owned(la), Cow::Owned(lb))
    }

    pub fn inv(&self) -> Result<Cyc> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.c.len() == 1 {
            return Ok(Cyc { n: self.n, c: vec![self.c[0].recip()?] });
        }
        // Solve (a·ζ^j)_j x = e_0 by Gaussian elimination.
        let p = ctx(self.n).phi;
        let mut m: Vec<Vec<Rat>> = vec![vec![Rat::zero(); p + 1]; p];
        let mut col = self.clone();
        let z = Cyc::zeta(self.n, 1);
        for j in 0..p {
            for (i, v) in col.c.iter().enumerate() {
                m[i][j] = v.clone();
            }
            col = &col * &z;
        }
        m[0][p] = Rat::one();
        for k in 0..p {
            let piv = (k..p).find(|&r| !m[r][k].is_zero()).ok_or(Error::DivisionByZero)?;
            m.swap(k, piv);
            let inv = m[k][k].recip()?;
            for j in k..=p {
                m[k][j] = &m[k][j] * &inv;
            }
            for r in 0..p {
                if r != k && !m[r][k].is_zero() {
                    let f = m[r][k].clone();
                    for j in k..=p {
                        let t = &f * &m[k][j];
                        m[r][j] = &m[r][j] - &t;
                    }
                }
            }
        }
        Ok(Cyc { n: self.n, c: trim(m.into_iter().map(|row| row[p].clone()).collect()) })
    }

    pub fn pow(&self, e: i64) -> Result<Cyc> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = Cyc::one(self.n);
        let mut b = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            k >>= 1;
        }
        Ok(acc)
    }

    pub fn scale_int(&self, k: i64) -> Cyc {
        let r = Rat::from_int(k);
        Cyc { n: self.n, c: trim(self.c.iter().map(|a| a * &r).collect()) }
    }

    /// Canonical coefficient string "c0,c1,…" with trailing zeros trimmed; zero is "0".
    pub fn to_coeff_string(&self) -> String {
        if self.c.is_empty() {
            return "0".to_string();
        }
        self.c.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(",")
    }

    /// Parses "c0,c1,…" (each a rational "p" or "p/q") as an element of Q(ζ_n).
    pub fn parse(n: u32, s: &str) -> Result<Cyc> {
        if n == 0 || n > MAX_ORDER {
            return Err(Error::UnsupportedOrder(n));
        }
        let parts: Vec<Rat> = s.split(',').map(|p| p.parse()).collect::<Result<_>>()?;
        if parts.len() > phi(n) {
            return Err(Error::MalformedScalar(s.to_string()));
        }
        Ok(Cyc::from_coeffs(n, parts))
    }
}

impl PartialEq for Cyc {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = Cyc::coerced(self, other);
        a.c == b.c
    }
}

impl Eq for Cyc {}

impl Add for &Cyc {
    type Output = Cyc;
    fn add(self, rhs: &Cyc) -> Cyc {
        let (a, b) = Cyc::coerced(self, rhs);
        let (long, short) = if a.c.len() >= b.c.len() { (&a.c, &b.c) } else { (&b.c, &a.c) };
        let mut c = long.clone();
        for (i, v) in short.iter().enumerate() {
            c[i] = &c[i] + v;
        }
        Cyc { n: a.n.max(b.n), c: trim(c) }
    }
}

impl Sub for &Cyc {
    type Output = Cyc;
    fn sub(self, rhs: &Cyc) -> Cyc {
        self + &(-rhs)
    }
}

impl Neg for &Cyc {
    type Output = Cyc;
    fn neg(self) -> Cyc {
        Cyc { n: self.n, c: self.c.iter().map(|r| -r).collect() }
    }
}

impl Neg for Cyc {
    type Output = Cyc;
    fn neg(self) -> Cyc {
        -&self
    }
}

impl Mul for &Cyc {
    type Output = Cyc;
    fn mul(self, rhs: &Cyc) -> Cyc {
        if self.c.is_empty() || rhs.c.is_empty() {
            return Cyc::zero(self.n.max(rhs.n));
        }
        if self.c.len() == 1 {
            let s = &self.c[0];
            return Cyc { n: if rhs.c.len() == 1 { self.n.max(rhs.n) } else { rhs.n }, c: trim(rhs.c.iter().map(|v| s * v).collect()) };
        }
        if rhs.c.len() == 1 {
            let s = &rhs.c[0];
            return Cyc { n: self.n, c: trim(self.c.iter().map(|v| v * s).collect()) };
        }
        let (a, b) = Cyc::coerced(self, rhs);
        let n = a.n;
        let cx = ctx(n);
        let mut acc = vec![Rat::zero(); cx.phi];
        for (i, x) in a.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.c.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let p = x * y;
                let k = i + j;
                if k < cx.phi {
                    acc[k] = &acc[k] + &p;
                } else {
                    for (t, &e) in cx.powers[k % n as usize].iter().enumerate() {
                        match e {
                            0 => {}
                            1 => acc[t] = &acc[t] + &p,
                            -1 => acc[t] = &acc[t] - &p,
                            _ => acc[t] = &acc[t] + &(&p * &Rat::from_int(e)),
                        }
                    }
                }
            }
        }
        Cyc { n, c: trim(acc) }
    }
}

impl Add for Cyc {
    type Output = Cyc;
    fn add(self, rhs: Cyc) -> Cyc {
        &self + &rhs
    }
}

impl Sub for Cyc {
    type Output = Cyc;
    fn sub(self, rhs: Cyc) -> Cyc {
        &self - &rhs
    }
}

impl Mul for Cyc {
    type Output = Cyc;
    fn mul(self, rhs: Cyc) -> Cyc {
        &self * &rhs
    }
}

impl AddAssign<&Cyc> for Cyc {
    fn add_assign(&mut self, rhs: &Cyc) {
        if rhs.c.is_empty() {
            return;
        }
        if self.n == rhs.n || rhs.c.len() <= 1 && self.c.len() > 1 {
            if self.c.len() < rhs.c.len() {
                self.c.resize(rhs.c.len(), Rat::zero());
            }
            for (i, v) in rhs.c.iter().enumerate() {
                self.c[i] = &self.c[i] + v;
            }
            let c = std::mem::take(&mut self.c);
            self.c = trim(c);
        } else {
            *self = &*self + rhs;
        }
    }
}

impl SubAssign<&Cyc> for Cyc {
    fn sub_assign(&mut self, rhs: &Cyc) {
        *self += &(-rhs);
    }
}

impl fmt::Display for Cyc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, r) in self.c.iter().enumerate() {
            if r.is_zero() {
                continue;
            }
            let neg = r.signum() < 0;
            let mag = if neg { -r } else { r.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}·")?;
                    }
                    if i == 1 {
                        write!(f, "ζ{}", self.n)?;
                    } else {
                        write!(f, "ζ{}^{i}", self.n)?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// q-integer (j)_q = 1 + q + … + q^{j-1}.
pub fn q_integer(j: u32, q: &Cyc) -> Cyc {
    let mut acc = Cyc::zero(q.order());
    let mut p = Cyc::one(q.order());
    for _ in 0..j {
        acc += &p;
        p = &p * q;
    }
    acc
}

/// (m)!_q = ∏_{j=1..m} (j)_q.
pub fn q_factorial(m: u32, q: &Cyc) -> Cyc {
    (1..=m).fold(Cyc::one(q.order()), |acc, j| &acc * &q_integer(j, q))
}

/// Memoized Gaussian binomials built row by row from the q-Pascal recurrence.
#[derive(Clone, Debug)]
pub struct QBinomialTable {
    q: Cyc,
    q_pows: Vec<Cyc>,
    rows: Vec<Vec<Cyc>>,
}

impl QBinomialTable {
    pub fn new(q: Cyc) -> Self {
        let one = Cyc::one(q.order());
        QBinomialTable { q_pows: vec![one.clone()], rows: vec![vec![one]], q }
    }

    pub fn q(&self) -> &Cyc {
        &self.q
    }

    fn q_pow(&mut self, k: usize) -> Cyc {
        while self.q_pows.len() <= k {
            let next = self.q_pows.last().unwrap() * &self.q;
            self.q_pows.push(next);
        }
        self.q_pows[k].clone()
    }

    /// binom(n,k)_q; zero whenever n, k or n−k is negative.
    pub fn get(&mut self, n: i64, k: i64) -> Cyc {
        if n < 0 || k < 0 || k > n {
            return Cyc::zero(self.q.order());
        }
        let n = n as usize;
        while self.rows.len() <= n {
            let m = self.rows.len();
            let mut row = Vec::with_capacity(m + 1);
            for k in 0..=m {
                let left = if k == 0 { Cyc::zero(self.q.order()) } else { self.rows[m - 1][k - 1].clone() };
                let right = if k < m { &self.q_pow(k) * &self.rows[m - 1][k] } else { Cyc::zero(self.q.order()) };
                row.push(&left + &right);
            }
            self.rows.push(row);
        }
        self.rows[n][k as usize].clone()
    }

    /// Number of memoized rows.
    pub fn rows(&self) -> usize {
        self.rows.len()
    }
}

/// binom(n,k)_q via a fresh table.
pub fn gauss_binomial(n: i64, k: i64, q: &Cyc) -> Cyc {
    QBinomialTable::new(q.clone()).get(n, k)
}

/// Outcome of one identity family in [`verify_q_identities`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityOutcome {
    pub name: String,
    pub cases: usize,
    pub counterexample: Option<String>,
}

impl IdentityOutcome {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Exhaustively checks the q-Chu–Vandermonde formula, binom(r+k,k)_q = 1 at a
/// primitive r-th root for k < r, and the q ↔ q⁻¹ symmetry, at ζ_m for each
/// order m. The boundary k = r of the second identity is recorded separately:
/// there binom(2r,r)_q = 2.
pub fn verify_q_identities(max_n: i64, orders: &[u32]) -> Vec<IdentityOutcome> {
    let mut chu = IdentityOutcome { name: "q-Chu-Vandermonde".into(), cases: 0, counterexample: None };
    let mut gm = IdentityOutcome { name: "binom(r+k,k)_q = 1 (k < r)".into(), cases: 0, counterexample: None };
    let mut gm_edge = IdentityOutcome { name: "binom(2r,r)_q = 2 (k = r)".into(), cases: 0, counterexample: None };
    let mut inv = IdentityOutcome { name: "binom(n,k)_{q^-1} q^{k(n-k)} = binom(n,k)_q".into(), cases: 0, counterexample: None };
    for &m in orders {
        let q = Cyc::zeta(m, 1);
        let qi = Cyc::zeta(m, -1);
        let mut t = QBinomialTable::new(q.clone());
        let mut ti = QBinomialTable::new(qi);
        for a in 0..=max_n {
            for b in 0..=max_n {
                for r in 0..=max_n {
                    let mut lhs = Cyc::zero(m);
                    for k in 0..=r {
                        let e = (a - k) * (r - k);
                        let term = &(&t.get(a, k) * &t.get(b, r - k)) * &Cyc::zeta(m, e);
                        lhs += &term;
                    }
                    chu.cases += 1;
                    if chu.counterexample.is_none() && lhs != t.get(a + b, r) {
                        chu.counterexample = Some(format!("order {m}: a={a} b={b} r={r}"));
                    }
                }
            }
        }
        let r = m as i64;
        for k in 0..=max_n.min(r) {
            let v = t.get(r + k, k);
            if k < r {
                gm.cases += 1;
                if gm.counterexample.is_none() && !v.is_one() {
                    gm.counterexample = Some(format!("order {m}: k={k} gives {v}"));
                }
            } else {
                gm_edge.cases += 1;
                if gm_edge.counterexample.is_none() && v != Cyc::from_int(m, 2) {
                    gm_edge.counterexample = Some(format!("order {m}: binom(2r,r) = {v}"));
                }
            }
        }
        for n in 0..=max_n {
            for k in 0..=max_n {
                let e = if k <= n { k * (n - k) } else { 0 };
                let lhs = &ti.get(n, k) * &Cyc::zeta(m, e);
                inv.cases += 1;
                if inv.counterexample.is_none() && lhs != t.get(n, k) {
                    inv.counterexample = Some(format!("order {m}: n={n} k={k}"));
                }
            }
        }
    }
    vec![chu, gm, gm_edge, inv]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polynomials_small() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(8), vec![1, 0, 0, 0, 1]);
        assert_eq!(cyclotomic_polynomial(9), vec![1, 0, 0, 1, 0, 0, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn cube_root_sum_vanishes() {
        let z = Cyc::zeta(3, 1);
        let s = &(&z + &(&z * &z)) + &Cyc::one(3);
        assert!(s.is_zero());
    }

    #[test]
    fn inverse_of_i_is_i_cubed() {
        let z = Cyc::zeta(4, 1);
        assert_eq!(z.inv().unwrap(), Cyc::zeta(4, 3));
        assert_eq!(z.inv().unwrap(), z.pow(3).unwrap());
    }

    #[test]
    fn one_plus_q_squared_at_cube_root() {
        // (1+ζ)^2 = 1 + 2ζ + ζ^2 and ζ^2 = -1 - ζ, so the square is ζ.
        let q = Cyc::zeta(3, 1);
        let s = &Cyc::one(3) + &q;
        let expanded = Cyc::from_coeffs(3, vec![Rat::one(), Rat::from_int(2), Rat::one()]);
        assert_eq!(&s * &s, expanded);
        assert_eq!(&s * &s, q);
    }

    #[test]
    fn zeta_has_order_n() {
        for n in [1u32, 2, 3, 4, 6, 8, 9, 12] {
            let z = Cyc::zeta(n, 1);
            assert!(z.pow(n as i64).unwrap().is_one(), "order {n}");
            if n > 1 {
                assert!(!z.pow(n as i64 / 2).unwrap().is_one() || n == 1);
            }
        }
    }

    #[test]
    fn inversion_of_zero_fails() {
        assert_eq!(Cyc::zero(8).inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn lift_preserves_values() {
        let a = Cyc::zeta(4, 1);
        let b = a.lift(8).unwrap();
        assert_eq!(b, Cyc::zeta(8, 2));
        assert_eq!(&Cyc::zeta(3, 1) * &Cyc::zeta(4, 1), Cyc::zeta(12, 7));
    }

    #[test]
    fn parse_roundtrip_and_half() {
        let h = Cyc::parse(8, "1/2").unwrap();
        assert_eq!(h.as_rational(), Some(Rat::new(1, 2)));
        let x = Cyc::parse(8, "1,-2/3,0,5").unwrap();
        assert_eq!(Cyc::parse(8, &x.to_coeff_string()).unwrap(), x);
        assert!(Cyc::parse(3, "1,2,3").is_err());
        assert!(Cyc::parse(3, "1/0").is_err());
        assert!(Cyc::parse(3, "abc").is_err());
    }

    #[test]
    fn big_rationals_promote() {
        let big = Rat::from_int(i64::MAX);
        let s = &big + &big;
        assert!(matches!(s, Rat::Big(_)));
        let back = &s - &big;
        assert_eq!(back, big);
        assert!(matches!(back, Rat::Small(_)));
    }

    #[test]
    fn q_factorial_two_is_one_plus_q() {
        let q = Cyc::zeta(3, 1);
        assert_eq!(q_factorial(2, &q), &Cyc::one(3) + &q);
        assert!(q_factorial(0, &q).is_one());
    }

    #[test]
    fn binomial_edges() {
        let q = Cyc::zeta(2, 1);
        let mut t = QBinomialTable::new(q);
        assert!(t.get(5, 0).is_one());
        assert!(t.get(3, 1).is_one());
        assert!(t.get(3, -1).is_zero());
        assert!(t.get(-1, 0).is_zero());
        assert!(t.get(2, 3).is_zero());
    }

    #[test]
    fn chu_vandermonde_brute_force_oracle() {
        // Independent oracle: binomials from the product formula over Q(ζ_3)[x]
        // evaluated at generic points is overkill; instead expand the sum directly
        // with binomials computed from q-factorial quotients at a transcendental-like
        // stand-in, here the rational q = 2, where no q-integer vanishes.
        let q2 = Cyc::from_int(1, 2);
        let fac = |m: u32| q_factorial(m, &q2);
        let binom = |n: i64, k: i64| -> Cyc {
            if n < 0 || k < 0 || k > n {
                return Cyc::zero(1);
            }
            &(&fac(n as u32) * &fac(k as u32).inv().unwrap()) * &fac((n - k) as u32).inv().unwrap()
        };
        let mut t = QBinomialTable::new(q2.clone());
        for n in 0..7 {
            for k in 0..7 {
                assert_eq!(t.get(n, k), binom(n, k));
            }
        }
        // a = b = r = 2 at ζ_3 by direct summation
        let q = Cyc::zeta(3, 1);
        let mut t = QBinomialTable::new(q.clone());
        let lhs = (0..=2).fold(Cyc::zero(3), |acc, k| {
            &acc + &(&(&t.get(2, k) * &t.get(2, 2 - k)) * &q.pow((2 - k) * (2 - k)).unwrap())
        });
        assert_eq!(lhs, t.get(4, 2));
    }

    #[test]
    fn q_identities_small_orders() {
        let out = verify_q_identities(8, &[2, 3, 4, 8]);
        for o in &out {
            assert!(o.passed(), "{}: {:?}", o.name, o.counterexample);
        }
    }
}
