//! Symmetric functions in k alphabets, and truncated formal series in s with
//! such coefficients: Adams operators, plethystic Exp/Log.
//!
//! Multi-alphabet functions are stored in the canonical power-sum basis: the
//! key `(l^1, ..., l^k)` denotes `p_{l^1}[X_1] ... p_{l^k}[X_k]`. The series
//! variable s never enters the coefficient field; it is the array index.
//!
//! The layer is generic over an exact scalar ring ([`SeriesScalar`]): the
//! production field Q(z, w), and the factored form the kernel builder uses
//! to avoid polynomial gcds.

use crate::error::{Error, Result};
use crate::field::FieldElem;
use crate::partition::Partition;
use crate::rat::{rat, rat_int, BigRat};
use crate::symfunc::{Basis, SymFunc1};
use std::collections::BTreeMap;
use std::fmt;

/// Scalar requirements of the series layer: an exact commutative ring with
/// rational scaling and the variable twist z -> z^n, w -> w^n of the Adams
/// operators. Division by ring elements is never needed here.
pub trait SeriesScalar: Clone + PartialEq + Eq + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn scale_rat(&self, r: &BigRat) -> Self;
    fn adams_vars(&self, n: u32) -> Self;
}

impl SeriesScalar for FieldElem {
    fn zero() -> Self {
        FieldElem::zero()
    }
    fn one() -> Self {
        FieldElem::one()
    }
    fn is_zero(&self) -> bool {
        FieldElem::is_zero(self)
    }
    fn is_one(&self) -> bool {
        FieldElem::is_one(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale_rat(&self, r: &BigRat) -> Self {
        self * &FieldElem::from_rat(r)
    }
    fn adams_vars(&self, n: u32) -> Self {
        self.adams(n)
    }
}

/// Multi-alphabet symmetric function in the power-sum basis, generic over
/// the coefficient scalar.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiSym<R: SeriesScalar> {
    k: usize,
    coeffs: BTreeMap<Vec<Partition>, R>,
}

/// Multi-alphabet function over the canonical field Q(z, w).
pub type MultiSymFunc = MultiSym<FieldElem>;

impl<R: SeriesScalar> MultiSym<R> {
    pub fn zero(k: usize) -> Self {
        assert!(k >= 1, "at least one alphabet");
        MultiSym {
            k,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(k: usize) -> Self {
        let mut f = MultiSym::zero(k);
        f.add_term(vec![Partition::empty(); k], R::one());
        f
    }

    pub fn alphabets(&self) -> usize {
        self.k
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1
            && self
                .coeffs
                .get(&vec![Partition::empty(); self.k])
                .is_some_and(|c| c.is_one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Partition>, &R)> {
        self.coeffs.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, key: &[Partition]) -> R {
        self.coeffs.get(key).cloned().unwrap_or_else(R::zero)
    }

    pub fn add_term(&mut self, key: Vec<Partition>, c: R) {
        assert_eq!(key.len(), self.k, "key arity");
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.coeffs.entry(key) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let v = e.get().add(&c);
                if v.is_zero() {
                    e.remove();
                } else {
                    e.insert(v);
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.k != other.k {
            return Err(Error::SizeMismatch("alphabet count".to_string()));
        }
        let mut out = self.clone();
        for (key, c) in &other.coeffs {
            out.add_term(key.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &R) -> Self {
        if c.is_zero() {
            return MultiSym::zero(self.k);
        }
        MultiSym {
            k: self.k,
            coeffs: self
                .coeffs
                .iter()
                .map(|(k, v)| (k.clone(), v.mul(c)))
                .collect(),
        }
    }

    pub fn scale_rat(&self, r: &BigRat) -> Self {
        MultiSym {
            k: self.k,
            coeffs: self
                .coeffs
                .iter()
                .map(|(k, v)| (k.clone(), v.scale_rat(r)))
                .filter(|(_, v)| !v.is_zero())
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.k != other.k {
            return Err(Error::SizeMismatch("alphabet count".to_string()));
        }
        let mut out = MultiSym::zero(self.k);
        for (ka, ca) in &self.coeffs {
            for (kb, cb) in &other.coeffs {
                let key: Vec<Partition> = ka
                    .iter()
                    .zip(kb.iter())
                    .map(|(a, b)| a.merge(b))
                    .collect();
                out.add_term(key, ca.mul(cb));
            }
        }
        Ok(out)
    }

    /// The n-th Adams operator: `p_m[X_j] -> p_{nm}[X_j]` in every alphabet
    /// and z -> z^n, w -> w^n on coefficients.
    pub fn adams(&self, n: u32) -> Self {
        let mut out = MultiSym::zero(self.k);
        for (key, c) in &self.coeffs {
            let new_key: Vec<Partition> = key
                .iter()
                .map(|p| Partition::new(p.parts().iter().map(|&x| x * n).collect()))
                .collect();
            out.add_term(new_key, c.adams_vars(n));
        }
        out
    }

    /// Product over alphabets of single-alphabet Hall pairings, extended
    /// bilinearly.
    pub fn pair(&self, other: &Self) -> Result<R> {
        if self.k != other.k {
            return Err(Error::SizeMismatch("alphabet count".to_string()));
        }
        let mut acc = R::zero();
        for (key, ca) in &self.coeffs {
            if let Some(cb) = other.coeffs.get(key) {
                let mut z = 1i64;
                for p in key {
                    z *= p.z_lambda() as i64;
                }
                acc = acc.add(&ca.mul(cb).scale_rat(&rat_int(z)));
            }
        }
        Ok(acc)
    }

    /// Relabels alphabets by the permutation `perm` (alphabet j of the result
    /// is alphabet `perm[j]` of the input).
    pub fn permute_alphabets(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.k);
        let mut out = MultiSym::zero(self.k);
        for (key, c) in &self.coeffs {
            let new_key: Vec<Partition> = perm.iter().map(|&j| key[j].clone()).collect();
            out.add_term(new_key, c.clone());
        }
        out
    }

    /// Maps coefficients into another scalar.
    pub fn map_scalar<S: SeriesScalar>(&self, f: impl Fn(&R) -> S) -> MultiSym<S> {
        MultiSym {
            k: self.k,
            coeffs: self
                .coeffs
                .iter()
                .map(|(k, v)| (k.clone(), f(v)))
                .filter(|(_, v)| !v.is_zero())
                .collect(),
        }
    }

    /// Total degree per alphabet must be uniform; returns it when so.
    pub fn uniform_degree(&self) -> Option<u32> {
        let mut deg = None;
        for key in self.coeffs.keys() {
            for p in key {
                match deg {
                    None => deg = Some(p.size()),
                    Some(d) if d == p.size() => {}
                    _ => return None,
                }
            }
        }
        deg
    }
}

impl MultiSymFunc {
    /// Tensor product of one single-alphabet factor per alphabet.
    pub fn from_factors(factors: &[SymFunc1<FieldElem>]) -> Result<Self> {
        let k = factors.len();
        let mut out = MultiSymFunc::one(k);
        for (j, f) in factors.iter().enumerate() {
            out = out.mul_alphabet(j, f)?;
        }
        Ok(out)
    }

    /// Multiplies by a single-alphabet symmetric function placed in
    /// alphabet `j`.
    pub fn mul_alphabet(&self, j: usize, f: &SymFunc1<FieldElem>) -> Result<Self> {
        let fp = f.convert(Basis::PowerSum)?;
        let mut out = MultiSymFunc::zero(self.k);
        for (key, c) in &self.coeffs {
            for (lam, d) in fp.terms() {
                let mut new_key = key.clone();
                new_key[j] = new_key[j].merge(lam);
                out.add_term(new_key, c * d);
            }
        }
        Ok(out)
    }
}

impl<R: SeriesScalar + fmt::Display> fmt::Display for MultiSym<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (key, c) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for (j, p) in key.iter().enumerate() {
                if !p.is_empty() {
                    let parts: Vec<String> =
                        p.parts().iter().map(|x| x.to_string()).collect();
                    write!(f, "*p[{}][X{}]", parts.join(","), j + 1)?;
                }
            }
        }
        Ok(())
    }
}

impl<R: SeriesScalar + fmt::Display> fmt::Debug for MultiSym<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Formal series in s truncated at total degree `trunc`; `coeffs[d]` is the
/// coefficient of s^d.
#[derive(Clone, PartialEq, Eq)]
pub struct Series<R: SeriesScalar> {
    k: usize,
    trunc: usize,
    coeffs: Vec<MultiSym<R>>,
    truncated: bool,
}

/// Series over the canonical field Q(z, w).
pub type SymSeries = Series<FieldElem>;

impl<R: SeriesScalar> Series<R> {
    pub fn zero(k: usize, trunc: usize) -> Self {
        Series {
            k,
            trunc,
            coeffs: vec![MultiSym::zero(k); trunc + 1],
            truncated: false,
        }
    }

    pub fn one(k: usize, trunc: usize) -> Self {
        let mut s = Series::zero(k, trunc);
        s.coeffs[0] = MultiSym::one(k);
        s
    }

    pub fn alphabets(&self) -> usize {
        self.k
    }

    pub fn truncation(&self) -> usize {
        self.trunc
    }

    pub fn was_truncated(&self) -> bool {
        self.truncated
    }

    pub fn coeff(&self, d: usize) -> &MultiSym<R> {
        &self.coeffs[d]
    }

    pub fn set_coeff(&mut self, d: usize, f: MultiSym<R>) {
        assert_eq!(f.alphabets(), self.k);
        self.coeffs[d] = f;
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.k != other.k || self.trunc != other.trunc {
            return Err(Error::SizeMismatch("series shape".to_string()));
        }
        let mut out = Series::zero(self.k, self.trunc);
        out.truncated = self.truncated || other.truncated;
        for d in 0..=self.trunc {
            out.coeffs[d] = self.coeffs[d].add(&other.coeffs[d])?;
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.k != other.k || self.trunc != other.trunc {
            return Err(Error::SizeMismatch("series shape".to_string()));
        }
        let mut out = Series::zero(self.k, self.trunc);
        out.truncated = self.truncated || other.truncated;
        for i in 0..=self.trunc {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=self.trunc - i {
                if other.coeffs[j].is_zero() {
                    continue;
                }
                let prod = self.coeffs[i].mul(&other.coeffs[j])?;
                out.coeffs[i + j] = out.coeffs[i + j].add(&prod)?;
            }
        }
        Ok(out)
    }

    pub fn scale_rat(&self, r: &BigRat) -> Self {
        Series {
            k: self.k,
            trunc: self.trunc,
            coeffs: self.coeffs.iter().map(|f| f.scale_rat(r)).collect(),
            truncated: self.truncated,
        }
    }

    /// The n-th Adams operator; terms pushed past the truncation are dropped
    /// and flagged.
    pub fn adams(&self, n: u32) -> Self {
        let mut out = Series::zero(self.k, self.trunc);
        out.truncated = self.truncated;
        for d in 0..=self.trunc {
            if self.coeffs[d].is_zero() {
                continue;
            }
            let nd = d * n as usize;
            if nd > self.trunc {
                out.truncated = true;
                continue;
            }
            out.coeffs[nd] = self.coeffs[d].adams(n);
        }
        out
    }
}

impl<R: SeriesScalar + fmt::Display> fmt::Debug for Series<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in 0..=self.trunc {
            writeln!(f, "s^{d}: {}", self.coeffs[d])?;
        }
        Ok(())
    }
}

fn moebius(n: u32) -> i64 {
    let mut n = n;
    let mut primes = 0;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            primes += 1;
        }
        p += 1;
    }
    if n > 1 {
        primes += 1;
    }
    if primes % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Ordinary formal-series exponential of a series with zero constant term,
/// by the degree-by-degree derivative recursion `d E_d = sum j P_j E_{d-j}`.
fn series_exp<R: SeriesScalar>(p: &Series<R>) -> Result<Series<R>> {
    let mut e = Series::zero(p.k, p.trunc);
    e.truncated = p.truncated;
    e.coeffs[0] = MultiSym::one(p.k);
    for d in 1..=p.trunc {
        let mut acc = MultiSym::zero(p.k);
        for j in 1..=d {
            if p.coeffs[j].is_zero() || e.coeffs[d - j].is_zero() {
                continue;
            }
            let term = p.coeffs[j]
                .scale_rat(&rat_int(j as i64))
                .mul(&e.coeffs[d - j])?;
            acc = acc.add(&term)?;
        }
        e.coeffs[d] = acc.scale_rat(&rat(1, d as i64));
    }
    Ok(e)
}

/// Ordinary formal-series logarithm of a series with constant term 1.
fn series_log<R: SeriesScalar>(h: &Series<R>) -> Result<Series<R>> {
    let mut l = Series::zero(h.k, h.trunc);
    l.truncated = h.truncated;
    for d in 1..=h.trunc {
        let mut acc = h.coeffs[d].clone();
        for j in 1..d {
            if l.coeffs[j].is_zero() || h.coeffs[d - j].is_zero() {
                continue;
            }
            let term = l.coeffs[j]
                .scale_rat(&rat(-(j as i64), d as i64))
                .mul(&h.coeffs[d - j])?;
            acc = acc.add(&term)?;
        }
        l.coeffs[d] = acc;
    }
    Ok(l)
}

/// Plethystic exponential `Exp[g] = exp(sum adams(m, g)/m)`, truncated.
pub fn pleth_exp<R: SeriesScalar>(g: &Series<R>) -> Result<Series<R>> {
    if !g.coeffs[0].is_zero() {
        return Err(Error::InvalidInput(
            "plethystic Exp needs zero constant term".to_string(),
        ));
    }
    let mut p = Series::zero(g.k, g.trunc);
    p.truncated = g.truncated;
    for m in 1..=g.trunc.max(1) as u32 {
        let am = g.adams(m);
        let scaled = am.scale_rat(&rat(1, m as i64));
        p = p.add(&scaled)?;
    }
    series_exp(&p)
}

/// Plethystic logarithm, inverse to [`pleth_exp`]:
/// `Log[h] = sum moebius(m)/m adams(m, log h)`.
pub fn pleth_log<R: SeriesScalar>(h: &Series<R>) -> Result<Series<R>> {
    if !h.coeffs[0].is_one() {
        return Err(Error::InvalidInput(
            "plethystic Log needs constant term 1".to_string(),
        ));
    }
    let l = series_log(h)?;
    let mut out = Series::zero(h.k, h.trunc);
    out.truncated = h.truncated;
    for m in 1..=h.trunc.max(1) as u32 {
        let mu = moebius(m);
        if mu == 0 {
            continue;
        }
        let am = l.adams(m);
        let scaled = am.scale_rat(&rat(mu, m as i64));
        out = out.add(&scaled)?;
    }
    Ok(out)
}

/// Product over alphabets of Hall pairings (function-level alias to
/// match the operation vocabulary).
pub fn pair_multi(f: &MultiSymFunc, g: &MultiSymFunc) -> Result<FieldElem> {
    f.pair(g)
}
