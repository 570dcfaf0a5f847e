//! Symmetric functions of bounded degree in one alphabet: the five classical
//! bases, base change, products, the Hall pairing, Kostka numbers, and
//! Adams-twisted Schur functions of types.
//!
//! The internal pivot basis is p: the pairing is diagonal there and the
//! plethystic operations of the series layer only ever touch power sums.

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::partition::{Partition, TypeOmega};
use crate::rat::BigRat;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

pub const DEFAULT_DEGREE_BOUND: usize = 8;

/// Hard ceiling on base-change table degree; beyond this the combinatorial
/// blow-up is no longer desk-scale.
pub const MAX_TABLE_DEGREE: u32 = 14;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Basis {
    Monomial,
    Elementary,
    Complete,
    PowerSum,
    Schur,
}

impl Basis {
    pub fn letter(self) -> char {
        match self {
            Basis::Monomial => 'm',
            Basis::Elementary => 'e',
            Basis::Complete => 'h',
            Basis::PowerSum => 'p',
            Basis::Schur => 's',
        }
    }
}

/// Base-change data for one homogeneous degree.
///
/// `to_p[b][i][j]` is the coefficient of `p_(mu_j)` in `b_(lambda_i)`, and
/// `from_p[b][j][i]` the coefficient of `b_(lambda_i)` in `p_(mu_j)`, with
/// partitions indexed by their position in `parts`.
pub struct DegreeTables {
    pub degree: u32,
    pub parts: Vec<Partition>,
    pub index: HashMap<Partition, usize>,
    pub z: Vec<u64>,
    /// Character table: `chi[i][j]` = character of the representation
    /// indexed by `parts[i]` at the class of cycle type `parts[j]`.
    pub chi: Vec<Vec<i64>>,
    to_p: [Vec<Vec<BigRat>>; 4],
    from_p: [Vec<Vec<BigRat>>; 4],
}

fn basis_slot(b: Basis) -> Option<usize> {
    match b {
        Basis::Monomial => Some(0),
        Basis::Elementary => Some(1),
        Basis::Complete => Some(2),
        Basis::Schur => Some(3),
        Basis::PowerSum => None,
    }
}

impl DegreeTables {
    fn build(n: u32) -> DegreeTables {
        let parts = Partition::all(n);
        let index: HashMap<Partition, usize> =
            parts.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let np = parts.len();
        let z: Vec<u64> = parts.iter().map(|p| p.z_lambda()).collect();

        let mut memo = HashMap::new();
        let mut chi = vec![vec![0i64; np]; np];
        for (i, lam) in parts.iter().enumerate() {
            for (j, mu) in parts.iter().enumerate() {
                chi[i][j] = chi_rec(lam, mu.parts(), &mut memo);
            }
        }

        // s_lambda = sum_mu chi[lambda][mu]/z_mu p_mu
        let mut s_to_p = vec![vec![BigRat::zero(); np]; np];
        for i in 0..np {
            for j in 0..np {
                s_to_p[i][j] = BigRat::new(chi[i][j].into(), (z[j] as i64).into());
            }
        }
        // p_mu = sum_lambda chi[lambda][mu] s_lambda
        let mut s_from_p = vec![vec![BigRat::zero(); np]; np];
        for j in 0..np {
            for i in 0..np {
                s_from_p[j][i] = BigRat::from_integer(chi[i][j].into());
            }
        }

        // h_lambda, e_lambda expanded in p by convolution over parts
        let mut h_to_p = vec![vec![BigRat::zero(); np]; np];
        let mut e_to_p = vec![vec![BigRat::zero(); np]; np];
        for (i, lam) in parts.iter().enumerate() {
            for (mu, c) in expand_multiplicative(lam, false) {
                h_to_p[i][index[&mu]] = c;
            }
            for (mu, c) in expand_multiplicative(lam, true) {
                e_to_p[i][index[&mu]] = c;
            }
        }
        let h_from_p = invert_matrix(&h_to_p).expect("h/p base change is invertible");
        let e_from_p = invert_matrix(&e_to_p).expect("e/p base change is invertible");

        // p_mu = sum_nu <p_mu, h_nu> m_nu, with <p_mu, h_nu> = z_mu * [p_mu] h_nu
        let mut m_from_p = vec![vec![BigRat::zero(); np]; np];
        for j in 0..np {
            for i in 0..np {
                m_from_p[j][i] =
                    &h_to_p[i][j] * &BigRat::from_integer((z[j] as i64).into());
            }
        }
        let m_to_p = invert_matrix(&m_from_p).expect("m/p base change is invertible");

        DegreeTables {
            degree: n,
            parts,
            index,
            z,
            chi,
            to_p: [m_to_p, e_to_p, h_to_p, s_to_p],
            from_p: [m_from_p, e_from_p, h_from_p, s_from_p],
        }
    }

    pub fn to_p(&self, b: Basis) -> &Vec<Vec<BigRat>> {
        &self.to_p[basis_slot(b).expect("p has no table")]
    }

    pub fn from_p(&self, b: Basis) -> &Vec<Vec<BigRat>> {
        &self.from_p[basis_slot(b).expect("p has no table")]
    }
}

/// h_r (or e_r when `sign` is set) expanded in power sums, then multiplied
/// over the parts of `lam`.
fn expand_multiplicative(lam: &Partition, sign: bool) -> BTreeMap<Partition, BigRat> {
    let mut acc = BTreeMap::new();
    acc.insert(Partition::empty(), BigRat::one());
    for &part in lam.parts() {
        let mut next: BTreeMap<Partition, BigRat> = BTreeMap::new();
        for rho in Partition::all(part) {
            let mut c = BigRat::new(1.into(), (rho.z_lambda() as i64).into());
            if sign && (part - rho.len() as u32) % 2 == 1 {
                c = -c;
            }
            for (mu, a) in &acc {
                let key = mu.merge(&rho);
                let term = a * &c;
                *next.entry(key).or_insert_with(BigRat::zero) += term;
            }
        }
        acc = next;
    }
    acc.retain(|_, c| !c.is_zero());
    acc
}

/// Murnaghan-Nakayama recursion on beta sets.
fn chi_rec(
    lam: &Partition,
    mu_parts: &[u32],
    memo: &mut HashMap<(Partition, Vec<u32>), i64>,
) -> i64 {
    if lam.is_empty() {
        return if mu_parts.is_empty() { 1 } else { 0 };
    }
    if mu_parts.is_empty() {
        return 0;
    }
    let key = (lam.clone(), mu_parts.to_vec());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let r = mu_parts[0];
    let rest = &mu_parts[1..];
    let len = lam.len();
    let beta: Vec<u32> = lam
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &p)| p + (len - 1 - i) as u32)
        .collect();
    let mut total = 0i64;
    for i in 0..beta.len() {
        if beta[i] < r {
            continue;
        }
        let target = beta[i] - r;
        if beta.contains(&target) {
            continue;
        }
        let height = beta
            .iter()
            .filter(|&&b| b > target && b < beta[i])
            .count();
        let sign = if height % 2 == 0 { 1 } else { -1 };
        let mut new_beta = beta.clone();
        new_beta[i] = target;
        new_beta.sort_unstable_by(|a, b| b.cmp(a));
        let new_parts: Vec<u32> = new_beta
            .iter()
            .enumerate()
            .map(|(j, &b)| b - (len - 1 - j) as u32)
            .collect();
        let new_lam = Partition::new(new_parts);
        total += sign * chi_rec(&new_lam, rest, memo);
    }
    memo.insert(key, total);
    total
}

/// Exact Gauss-Jordan inversion over Q.
pub fn invert_matrix(m: &[Vec<BigRat>]) -> Option<Vec<Vec<BigRat>>> {
    let n = m.len();
    let mut a: Vec<Vec<BigRat>> = m.to_vec();
    let mut inv: Vec<Vec<BigRat>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigRat::one() } else { BigRat::zero() })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] /= &p;
            inv[col][j] /= &p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                let d1 = &a[col][j] * &f;
                a[r][j] -= d1;
                let d2 = &inv[col][j] * &f;
                inv[r][j] -= d2;
            }
        }
    }
    Some(inv)
}

static TABLES: OnceLock<Mutex<HashMap<u32, Arc<DegreeTables>>>> = OnceLock::new();

/// Base-change tables for one degree, built once and shared.
pub fn tables(n: u32) -> Result<Arc<DegreeTables>> {
    if n > MAX_TABLE_DEGREE {
        return Err(Error::DegreeBound {
            needed: n as usize,
            bound: MAX_TABLE_DEGREE as usize,
        });
    }
    let lock = TABLES.get_or_init(|| Mutex::new(HashMap::new()));
    let mut map = lock.lock().expect("table lock");
    Ok(map
        .entry(n)
        .or_insert_with(|| Arc::new(DegreeTables::build(n)))
        .clone())
}

/// Symmetric function in one alphabet over the scalar `R`.
///
/// Mixed degrees are allowed; homogeneous components are tracked by key size.
/// Equality compares basis and coefficients; the degree bound and truncation
/// flag are bookkeeping.
#[derive(Clone)]
pub struct SymFunc1<R: Coeff> {
    basis: Basis,
    coeffs: BTreeMap<Partition, R>,
    degree_bound: usize,
    truncated: bool,
}

impl<R: Coeff> SymFunc1<R> {
    pub fn zero(basis: Basis) -> Self {
        SymFunc1 {
            basis,
            coeffs: BTreeMap::new(),
            degree_bound: DEFAULT_DEGREE_BOUND,
            truncated: false,
        }
    }

    pub fn zero_with_bound(basis: Basis, degree_bound: usize) -> Self {
        SymFunc1 {
            basis,
            coeffs: BTreeMap::new(),
            degree_bound,
            truncated: false,
        }
    }

    /// The basis element itself, e.g. `s_lambda`.
    pub fn unit(basis: Basis, lam: Partition) -> Result<Self> {
        SymFunc1::unit_with_bound(basis, lam, DEFAULT_DEGREE_BOUND)
    }

    pub fn unit_with_bound(basis: Basis, lam: Partition, degree_bound: usize) -> Result<Self> {
        let mut f = SymFunc1::zero_with_bound(basis, degree_bound);
        f.add_term(lam, R::one())?;
        Ok(f)
    }

    pub fn one(basis: Basis) -> Self {
        let mut f = SymFunc1::zero(basis);
        f.add_term(Partition::empty(), R::one()).expect("degree 0");
        f
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn degree_bound(&self) -> usize {
        self.degree_bound
    }

    pub fn was_truncated(&self) -> bool {
        self.truncated
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &R)> {
        self.coeffs.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, lam: &Partition) -> R {
        self.coeffs.get(lam).cloned().unwrap_or_else(R::zero)
    }

    /// Maximum homogeneous degree present.
    pub fn degree(&self) -> u32 {
        self.coeffs.keys().map(|p| p.size()).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, lam: Partition, c: R) -> Result<()> {
        if lam.size() as usize > self.degree_bound {
            return Err(Error::DegreeBound {
                needed: lam.size() as usize,
                bound: self.degree_bound,
            });
        }
        if c.is_zero() {
            return Ok(());
        }
        use std::collections::btree_map::Entry;
        match self.coeffs.entry(lam) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let v = e.get().clone() + c;
                if v.is_zero() {
                    e.remove();
                } else {
                    e.insert(v);
                }
            }
        }
        Ok(())
    }

    pub fn scale(&self, c: &R) -> Self {
        if c.is_zero() {
            return SymFunc1::zero_with_bound(self.basis, self.degree_bound);
        }
        SymFunc1 {
            basis: self.basis,
            coeffs: self
                .coeffs
                .iter()
                .map(|(k, v)| (k.clone(), v.clone() * c.clone()))
                .filter(|(_, v)| !v.is_zero())
                .collect(),
            degree_bound: self.degree_bound,
            truncated: self.truncated,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.truncated |= other.truncated;
        let rhs = other.convert(self.basis)?;
        for (k, v) in rhs.coeffs {
            out.add_term(k, v)?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&(-R::one())))
    }

    /// Re-expresses the same element in another basis (exact round trips).
    pub fn convert(&self, target: Basis) -> Result<Self> {
        if target == self.basis {
            return Ok(self.clone());
        }
        let in_p = self.to_p()?;
        if target == Basis::PowerSum {
            return Ok(in_p);
        }
        // group p-keys by degree and apply from_p per degree
        let mut out = SymFunc1::zero_with_bound(target, self.degree_bound);
        out.truncated = self.truncated;
        let mut by_degree: BTreeMap<u32, Vec<(&Partition, &R)>> = BTreeMap::new();
        for (k, v) in &in_p.coeffs {
            by_degree.entry(k.size()).or_default().push((k, v));
        }
        for (deg, entries) in by_degree {
            let t = tables(deg)?;
            let mat = t.from_p(target);
            for (mu, c) in entries {
                let j = t.index[mu];
                for (i, lam) in t.parts.iter().enumerate() {
                    let m = &mat[j][i];
                    if m.is_zero() {
                        continue;
                    }
                    out.add_term(lam.clone(), c.clone() * R::from_rat(m))?;
                }
            }
        }
        Ok(out)
    }

    fn to_p(&self) -> Result<Self> {
        if self.basis == Basis::PowerSum {
            return Ok(self.clone());
        }
        let mut out = SymFunc1::zero_with_bound(Basis::PowerSum, self.degree_bound);
        out.truncated = self.truncated;
        let mut by_degree: BTreeMap<u32, Vec<(&Partition, &R)>> = BTreeMap::new();
        for (k, v) in &self.coeffs {
            by_degree.entry(k.size()).or_default().push((k, v));
        }
        for (deg, entries) in by_degree {
            let t = tables(deg)?;
            let mat = t.to_p(self.basis);
            for (lam, c) in entries {
                let i = t.index[lam];
                for (j, mu) in t.parts.iter().enumerate() {
                    let m = &mat[i][j];
                    if m.is_zero() {
                        continue;
                    }
                    out.add_term(mu.clone(), c.clone() * R::from_rat(m))?;
                }
            }
        }
        Ok(out)
    }

    /// Product, computed in the p-basis where multiplication concatenates
    /// indices; components above the degree bound are dropped and flagged.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        let a = self.to_p()?;
        let b = other.to_p()?;
        let mut out = SymFunc1::zero_with_bound(Basis::PowerSum, self.degree_bound);
        out.truncated = a.truncated || b.truncated;
        for (ka, ca) in &a.coeffs {
            for (kb, cb) in &b.coeffs {
                if (ka.size() + kb.size()) as usize > self.degree_bound {
                    out.truncated = true;
                    continue;
                }
                out.add_term(ka.merge(kb), ca.clone() * cb.clone())?;
            }
        }
        out.convert(self.basis)
    }

    /// Hall pairing, the bilinear extension of `<p_l, p_m> = delta z_l`.
    pub fn hall_pairing(&self, other: &Self) -> Result<R> {
        let a = self.to_p()?;
        let b = other.to_p()?;
        let mut acc = R::zero();
        for (k, ca) in &a.coeffs {
            if let Some(cb) = b.coeffs.get(k) {
                let z = R::from_rat(&BigRat::from_integer((k.z_lambda() as i64).into()));
                acc = acc + ca.clone() * cb.clone() * z;
            }
        }
        Ok(acc)
    }

    /// The index-scaling part of the n-th Adams operator: p_m -> p_{nm}.
    /// Scalar coefficients are untouched (the series layer twists its own
    /// z, w coefficients).
    pub fn adams_index(&self, n: u32) -> Result<Self> {
        let p = self.to_p()?;
        let mut out = SymFunc1::zero_with_bound(
            Basis::PowerSum,
            self.degree_bound.max((self.degree() * n) as usize),
        );
        for (k, c) in &p.coeffs {
            let scaled = Partition::new(k.parts().iter().map(|&x| x * n).collect());
            out.add_term(scaled, c.clone())?;
        }
        Ok(out)
    }

    /// Maps coefficients into another scalar type.
    pub fn map_coeffs<S: Coeff>(&self, f: impl Fn(&R) -> S) -> SymFunc1<S> {
        SymFunc1 {
            basis: self.basis,
            coeffs: self
                .coeffs
                .iter()
                .map(|(k, v)| (k.clone(), f(v)))
                .filter(|(_, v)| !v.is_zero())
                .collect(),
            degree_bound: self.degree_bound,
            truncated: self.truncated,
        }
    }
}

impl<R: Coeff> PartialEq for SymFunc1<R> {
    fn eq(&self, other: &Self) -> bool {
        self.basis == other.basis && self.coeffs == other.coeffs
    }
}

impl<R: Coeff> Eq for SymFunc1<R> {}

impl<R: Coeff> fmt::Display for SymFunc1<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let letter = self.basis.letter();
        let mut first = true;
        for (lam, c) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let cs = c.render();
            // only plain numbers go unparenthesized
            let atom = cs.chars().all(|ch| ch.is_ascii_digit() || ch == '-');
            let parts: Vec<String> = lam.parts().iter().map(|p| p.to_string()).collect();
            let mono = format!("{letter}[{}]", parts.join(","));
            if c.is_one() {
                write!(f, "{mono}")?;
            } else if atom {
                write!(f, "{cs}*{mono}")?;
            } else {
                write!(f, "({cs})*{mono}")?;
            }
        }
        Ok(())
    }
}

impl<R: Coeff> fmt::Debug for SymFunc1<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Kostka number `<h_nu, s_lambda>`: multiplicity of the Schur function
/// s_lambda in h_nu, a nonnegative integer.
pub fn kostka(nu: &Partition, lam: &Partition) -> Result<u64> {
    if nu.size() != lam.size() {
        return Err(Error::SizeMismatch(format!(
            "kostka: |{nu}| != |{lam}|"
        )));
    }
    let h: SymFunc1<BigRat> =
        SymFunc1::unit_with_bound(Basis::Complete, nu.clone(), nu.size() as usize)?;
    let s: SymFunc1<BigRat> =
        SymFunc1::unit_with_bound(Basis::Schur, lam.clone(), lam.size() as usize)?;
    let v = h.hall_pairing(&s)?;
    if !v.denom().is_one() {
        return Err(Error::Internal(format!("kostka not an integer: {v}")));
    }
    let n = v.numer();
    if n < &0.into() {
        return Err(Error::Internal(format!("kostka negative: {v}")));
    }
    n.to_string().parse().map_err(|_| {
        Error::Internal("kostka overflow".to_string())
    })
}

/// The Adams-twisted Schur function of a type, expanded in the Schur basis.
/// Its coefficients are the twisted Littlewood-Richardson numbers.
pub fn twisted_schur(t: &TypeOmega) -> Result<SymFunc1<BigRat>> {
    let deg = t.degree() as usize;
    let mut acc: SymFunc1<BigRat> = SymFunc1::one(Basis::PowerSum);
    acc = SymFunc1 {
        degree_bound: deg.max(1),
        ..acc
    };
    for (d, omega) in t.pairs() {
        let s: SymFunc1<BigRat> =
            SymFunc1::unit_with_bound(Basis::Schur, omega.clone(), deg.max(1))?;
        let factor = s.adams_index(*d)?;
        acc = acc.multiply(&factor)?;
    }
    acc.convert(Basis::Schur)
}
