//! Brute-force validation over small prime fields: solution counting for the
//! surface-group relation with conjugacy-class constraints in GL_n(F_q), and
//! point counts of Fricke cubic surfaces.
//!
//! Everything here is exhaustive enumeration with hard size guards; prime
//! fields only.

use crate::error::{Error, Result};
use crate::partition::Partition;
use std::collections::HashSet;

pub const MAX_RANK: usize = 3;
const LOOP_GUARD: u64 = 1_000_000_000;

/// Small dense matrix over F_q; the modulus travels alongside.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct FqMat {
    n: usize,
    a: [u64; 9],
}

impl FqMat {
    pub fn zero(n: usize) -> Self {
        assert!((1..=MAX_RANK).contains(&n));
        FqMat { n, a: [0; 9] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = FqMat::zero(n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn scalar(n: usize, c: u64) -> Self {
        let mut m = FqMat::zero(n);
        for i in 0..n {
            m.set(i, i, c);
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.a[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.a[i * self.n + j] = v;
    }

    pub fn mul(&self, rhs: &FqMat, q: u64) -> FqMat {
        let n = self.n;
        let mut out = FqMat::zero(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0u64;
                for l in 0..n {
                    acc = (acc + self.get(i, l) * rhs.get(l, j)) % q;
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn sub(&self, rhs: &FqMat, q: u64) -> FqMat {
        let n = self.n;
        let mut out = FqMat::zero(n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, (q + self.get(i, j) - rhs.get(i, j)) % q);
            }
        }
        out
    }

    pub fn rank(&self, q: u64) -> usize {
        let n = self.n;
        let mut m = *self;
        let mut rank = 0;
        for col in 0..n {
            let pivot = (rank..n).find(|&r| m.get(r, col) != 0);
            let Some(pr) = pivot else { continue };
            for j in 0..n {
                let tmp = m.get(rank, j);
                m.set(rank, j, m.get(pr, j));
                m.set(pr, j, tmp);
            }
            let inv = mod_inv(m.get(rank, col), q);
            for j in 0..n {
                m.set(rank, j, m.get(rank, j) * inv % q);
            }
            for r in 0..n {
                if r != rank && m.get(r, col) != 0 {
                    let f = m.get(r, col);
                    for j in 0..n {
                        let v = (q + m.get(r, j) - f * m.get(rank, j) % q) % q;
                        m.set(r, j, v);
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn is_invertible(&self, q: u64) -> bool {
        self.rank(q) == self.n
    }

    pub fn inverse(&self, q: u64) -> Option<FqMat> {
        let n = self.n;
        let mut m = *self;
        let mut inv = FqMat::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| m.get(r, col) != 0)?;
            for j in 0..n {
                let tmp = m.get(col, j);
                m.set(col, j, m.get(pivot, j));
                m.set(pivot, j, tmp);
                let tmp = inv.get(col, j);
                inv.set(col, j, inv.get(pivot, j));
                inv.set(pivot, j, tmp);
            }
            let f = mod_inv(m.get(col, col), q);
            for j in 0..n {
                m.set(col, j, m.get(col, j) * f % q);
                inv.set(col, j, inv.get(col, j) * f % q);
            }
            for r in 0..n {
                if r != col && m.get(r, col) != 0 {
                    let f = m.get(r, col);
                    for j in 0..n {
                        let v = (q + m.get(r, j) - f * m.get(col, j) % q) % q;
                        m.set(r, j, v);
                        let v = (q + inv.get(r, j) - f * inv.get(col, j) % q) % q;
                        inv.set(r, j, v);
                    }
                }
            }
        }
        Some(inv)
    }
}

fn mod_inv(a: u64, q: u64) -> u64 {
    // q is a small prime: Fermat
    mod_pow(a % q, q - 2, q)
}

fn mod_pow(mut b: u64, mut e: u64, q: u64) -> u64 {
    let mut acc = 1u64;
    b %= q;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % q;
        }
        b = b * b % q;
        e >>= 1;
    }
    acc
}

pub fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= q {
        if q.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Order of GL_n(F_q): product over i of (q^n - q^i).
pub fn group_size(n: u32, q: u64) -> u64 {
    let qn = mod_free_pow(q, n);
    let mut acc = 1u64;
    for i in 0..n {
        acc *= qn - mod_free_pow(q, i);
    }
    acc
}

fn mod_free_pow(b: u64, e: u32) -> u64 {
    (0..e).fold(1u64, |acc, _| acc * b)
}

/// Conjugacy-class data over F_q: distinct eigenvalues in F_q^* with Jordan
/// partitions; multiplicities sum to the rank.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FqClassSpec {
    eigenvalues: Vec<(u64, Partition)>,
}

impl FqClassSpec {
    pub fn new(q: u64, eigenvalues: Vec<(u64, Partition)>) -> Result<Self> {
        if eigenvalues.is_empty() {
            return Err(Error::InvalidInput("class without eigenvalues".to_string()));
        }
        let mut seen = HashSet::new();
        for (v, lam) in &eigenvalues {
            let v = v % q;
            if v == 0 {
                return Err(Error::InvalidInput("eigenvalue 0".to_string()));
            }
            if !seen.insert(v) {
                return Err(Error::InvalidInput("repeated eigenvalue".to_string()));
            }
            if lam.is_empty() {
                return Err(Error::InvalidInput("empty Jordan partition".to_string()));
            }
        }
        Ok(FqClassSpec {
            eigenvalues: eigenvalues
                .into_iter()
                .map(|(v, lam)| (v % q, lam))
                .collect(),
        })
    }

    /// Regular semisimple class with the given distinct eigenvalues.
    pub fn regular_semisimple(q: u64, values: &[u64]) -> Result<Self> {
        FqClassSpec::new(
            q,
            values.iter().map(|&v| (v, Partition::row(1))).collect(),
        )
    }

    pub fn eigenvalues(&self) -> &[(u64, Partition)] {
        &self.eigenvalues
    }

    pub fn rank(&self) -> u32 {
        self.eigenvalues.iter().map(|(_, lam)| lam.size()).sum()
    }

    /// Jordan representative: block diagonal of Jordan blocks.
    pub fn representative(&self, q: u64) -> FqMat {
        let n = self.rank() as usize;
        let mut m = FqMat::zero(n);
        let mut at = 0;
        for (v, lam) in &self.eigenvalues {
            for &block in lam.parts() {
                for r in 0..block as usize {
                    m.set(at + r, at + r, v % q);
                    if r + 1 < block as usize {
                        m.set(at + r, at + r + 1, 1);
                    }
                }
                at += block as usize;
            }
        }
        m
    }

    /// The Jordan type of `x` relative to this spec's eigenvalue list, or
    /// `None` when `x` has different eigenvalue structure.
    pub fn jordan_type_of(&self, x: &FqMat, q: u64) -> Option<Vec<Partition>> {
        let n = self.rank() as usize;
        let mut total = 0u32;
        let mut out = Vec::with_capacity(self.eigenvalues.len());
        for (v, lam) in &self.eigenvalues {
            let shifted = x.sub(&FqMat::scalar(n, *v % q), q);
            // rank sequence of powers determines the column counts
            let mut cols = Vec::new();
            let mut prev = n;
            let mut pow = FqMat::identity(n);
            for _ in 0..n {
                pow = pow.mul(&shifted, q);
                let r = pow.rank(q);
                if prev == r {
                    break;
                }
                cols.push((prev - r) as u32);
                prev = r;
            }
            let nu = lam.size();
            let found: u32 = cols.iter().sum();
            if found > nu {
                return None;
            }
            total += found;
            out.push(Partition::new(cols).transpose());
        }
        if total != self.rank() {
            return None;
        }
        Some(out)
    }

    /// True when `x` lies in the Zariski closure of the class: same
    /// eigenvalue structure with Jordan types dominated componentwise.
    pub fn closure_contains(&self, x: &FqMat, q: u64) -> bool {
        match self.jordan_type_of(x, q) {
            None => false,
            Some(types) => types
                .iter()
                .zip(self.eigenvalues.iter())
                .all(|(rho, (_, mu))| rho.dominance_leq(mu)),
        }
    }

    /// True when `x` lies in the class itself.
    pub fn class_contains(&self, x: &FqMat, q: u64) -> bool {
        match self.jordan_type_of(x, q) {
            None => false,
            Some(types) => types
                .iter()
                .zip(self.eigenvalues.iter())
                .all(|(rho, (_, mu))| rho == mu),
        }
    }
}

/// Iterates over all n x n matrices over F_q.
fn for_each_matrix(n: usize, q: u64, mut f: impl FnMut(&FqMat)) {
    let cells = n * n;
    let mut m = FqMat::zero(n);
    loop {
        f(&m);
        // increment base-q counter
        let mut i = 0;
        loop {
            if i == cells {
                return;
            }
            m.a[i] += 1;
            if m.a[i] < q {
                break;
            }
            m.a[i] = 0;
            i += 1;
        }
    }
}

fn enumeration_guard(n: usize, q: u64) -> Result<()> {
    // q <= 13 for n = 3; ranks 1 and 2 stretch to 17 so that a held-out
    // prime beyond the interpolation samples stays available
    let q_max = if n <= 2 { 17 } else { 13 };
    if n > MAX_RANK || q > q_max {
        return Err(Error::SizeGuard(format!(
            "class enumeration limited to n <= {MAX_RANK}, q <= {q_max} (got n={n}, q={q})"
        )));
    }
    let mut cost = 1u64;
    for _ in 0..n * n {
        cost = cost.saturating_mul(q);
    }
    if cost > 100_000_000 {
        return Err(Error::SizeGuard(format!(
            "matrix enumeration cost {cost} too large"
        )));
    }
    Ok(())
}

/// All elements of the conjugacy class (conjugates of the Jordan
/// representative), deduplicated.
pub fn class_elements(spec: &FqClassSpec, q: u64) -> Result<Vec<FqMat>> {
    let n = spec.rank() as usize;
    enumeration_guard(n, q)?;
    let mut out = Vec::new();
    for_each_matrix(n, q, |m| {
        if spec.class_contains(m, q) {
            out.push(*m);
        }
    });
    Ok(out)
}

/// All elements of the Zariski closure of the class.
pub fn closure_elements(spec: &FqClassSpec, q: u64) -> Result<Vec<FqMat>> {
    let n = spec.rank() as usize;
    enumeration_guard(n, q)?;
    let mut out = Vec::new();
    for_each_matrix(n, q, |m| {
        if spec.closure_contains(m, q) {
            out.push(*m);
        }
    });
    Ok(out)
}

fn all_gl(n: usize, q: u64) -> Result<Vec<FqMat>> {
    enumeration_guard(n, q)?;
    let mut out = Vec::new();
    for_each_matrix(n, q, |m| {
        if m.is_invertible(q) {
            out.push(*m);
        }
    });
    Ok(out)
}

/// The finite-field mirror of the genericity condition: total eigenvalue
/// product 1 in F_q^*, no proper equal-size sub-multiset product 1.
pub fn fq_is_generic(specs: &[FqClassSpec], q: u64) -> bool {
    let n = specs[0].rank();
    let mut total = 1u64;
    for s in specs {
        for (v, lam) in s.eigenvalues() {
            total = total * mod_pow(*v, lam.size() as u64, q) % q;
        }
    }
    if total != 1 {
        return false;
    }
    for r in 1..n {
        let mut cross: HashSet<u64> = HashSet::new();
        cross.insert(1);
        for s in specs {
            let sums = fq_submultiset_products(s, r, q);
            let mut next = HashSet::new();
            for a in &cross {
                for b in &sums {
                    next.insert(a * b % q);
                }
            }
            cross = next;
        }
        if cross.contains(&1) {
            return false;
        }
    }
    true
}

fn fq_submultiset_products(spec: &FqClassSpec, r: u32, q: u64) -> HashSet<u64> {
    let mut by_count: Vec<HashSet<u64>> = vec![HashSet::new(); r as usize + 1];
    by_count[0].insert(1);
    for (v, lam) in spec.eigenvalues() {
        let mult = lam.size().min(r);
        let mut next = by_count.clone();
        for c in 0..=(r as usize) {
            for base in &by_count[c] {
                let mut acc = *base;
                for take in 1..=(mult as usize) {
                    if c + take > r as usize {
                        break;
                    }
                    acc = acc * v % q;
                    next[c + take].insert(acc);
                }
            }
        }
        by_count = next;
    }
    by_count[r as usize].clone()
}

/// Counts solutions of the surface-group relation with monodromies in the
/// class closures, divided by |PGL_n(F_q)|. Divisibility is asserted; a
/// failure signals non-generic data or a bug.
pub fn count_points(g: u32, q: u64, specs: &[FqClassSpec]) -> Result<u64> {
    if !is_prime(q) {
        return Err(Error::InvalidInput(format!("{q} is not prime")));
    }
    if specs.is_empty() {
        return Err(Error::InvalidInput("need at least one class".to_string()));
    }
    let n = specs[0].rank();
    for s in specs {
        if s.rank() != n {
            return Err(Error::SizeMismatch("class ranks differ".to_string()));
        }
    }
    if !fq_is_generic(specs, q) {
        return Err(Error::NonGeneric);
    }

    let gl = all_gl(n as usize, q)?;
    let closures: Vec<Vec<FqMat>> = specs
        .iter()
        .map(|s| closure_elements(s, q))
        .collect::<Result<_>>()?;

    // estimated loop count
    let mut estimate = 1u64;
    for _ in 0..2 * g {
        estimate = estimate.saturating_mul(gl.len() as u64);
    }
    for c in closures.iter().take(specs.len() - 1) {
        estimate = estimate.saturating_mul(c.len() as u64);
    }
    if estimate > LOOP_GUARD {
        return Err(Error::SizeGuard(format!(
            "estimated loop count {estimate} exceeds {LOOP_GUARD}"
        )));
    }

    let last = specs.len() - 1;
    let mut count = 0u64;

    // prefix = product of commutators, then X_1 .. X_{k-1}; X_k solved
    let mut handle_products = Vec::new();
    enumerate_handles(&gl, g as usize, q, FqMat::identity(n as usize), &mut handle_products);

    for hp in &handle_products {
        count += count_puncture_chains(hp, &closures, 0, last, q, specs);
    }

    let pgl = group_size(n, q) / (q - 1);
    if !count.is_multiple_of(pgl) {
        return Err(Error::Internal(format!(
            "solution count {count} not divisible by |PGL| = {pgl}"
        )));
    }
    Ok(count / pgl)
}

fn enumerate_handles(gl: &[FqMat], g: usize, q: u64, acc: FqMat, out: &mut Vec<FqMat>) {
    if g == 0 {
        out.push(acc);
        return;
    }
    for a in gl {
        let ai = a.inverse(q).expect("invertible");
        for b in gl {
            let bi = b.inverse(q).expect("invertible");
            let comm = a.mul(b, q).mul(&ai, q).mul(&bi, q);
            enumerate_handles(gl, g - 1, q, acc.mul(&comm, q), out);
        }
    }
}

fn count_puncture_chains(
    prefix: &FqMat,
    closures: &[Vec<FqMat>],
    at: usize,
    last: usize,
    q: u64,
    specs: &[FqClassSpec],
) -> u64 {
    if at == last {
        // X_last is determined: prefix * X_last = Id
        let x = prefix.inverse(q).expect("invertible");
        return if specs[last].closure_contains(&x, q) {
            1
        } else {
            0
        };
    }
    let mut acc = 0;
    for x in &closures[at] {
        acc += count_puncture_chains(&prefix.mul(x, q), closures, at + 1, last, q, specs);
    }
    acc
}

/// Number of points on the Fricke cubic
/// x y z + x^2 + y^2 + z^2 + A x + B y + C z + D = 0 over F_q, with the
/// constants determined by the four trace parameters.
pub fn fricke_count(q: u64, traces: (u64, u64, u64, u64)) -> u64 {
    let (t1, t2, t3, t123) = (traces.0 % q, traces.1 % q, traces.2 % q, traces.3 % q);
    let neg = |x: u64| (q - x % q) % q;
    let a = (neg(t1 * t123 % q) + neg(t2 * t3 % q)) % q;
    let b = (neg(t2 * t123 % q) + neg(t1 * t3 % q)) % q;
    let c = (neg(t3 * t123 % q) + neg(t1 * t2 % q)) % q;
    let d = (t1 * t2 % q * t3 % q * t123 % q
        + t1 * t1 % q
        + t2 * t2 % q
        + t3 * t3 % q
        + t123 * t123 % q
        + neg(4))
        % q;
    let mut count = 0;
    for x in 0..q {
        for y in 0..q {
            for z in 0..q {
                let v = (x * y % q * z % q
                    + x * x % q
                    + y * y % q
                    + z * z % q
                    + a * x % q
                    + b * y % q
                    + c * z % q
                    + d)
                    % q;
                if v == 0 {
                    count += 1;
                }
            }
        }
    }
    count
}

/// Searches for a generic k-tuple of regular semisimple rank-2 classes over
/// F_q (deterministic first find). Returns `None` when no such tuple exists
/// (which genuinely happens for q = 3).
pub fn search_generic_rss_rank2(k: usize, q: u64) -> Option<Vec<FqClassSpec>> {
    let units: Vec<u64> = (1..q).collect();
    let mut pairs = Vec::new();
    for i in 0..units.len() {
        for j in i + 1..units.len() {
            pairs.push((units[i], units[j]));
        }
    }
    let mut choice = vec![0usize; k];
    loop {
        let specs: Vec<FqClassSpec> = choice
            .iter()
            .map(|&c| FqClassSpec::regular_semisimple(q, &[pairs[c].0, pairs[c].1]).unwrap())
            .collect();
        if fq_is_generic(&specs, q) {
            return Some(specs);
        }
        let mut i = 0;
        loop {
            if i == k {
                return None;
            }
            choice[i] += 1;
            if choice[i] < pairs.len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// Searches for a generic 4-tuple of determinant-one regular semisimple
/// rank-2 classes {l, l^{-1}} over F_q, returning the eigenvalue choices.
/// These are the classes cut out by trace coordinates on the four-punctured
/// sphere.
pub fn search_generic_sl2_rss(q: u64) -> Option<[u64; 4]> {
    let candidates: Vec<u64> = (2..q - 1).filter(|&l| l * l % q != 1).collect();
    for &l1 in &candidates {
        for &l2 in &candidates {
            for &l3 in &candidates {
                for &l4 in &candidates {
                    let specs: Vec<FqClassSpec> = [l1, l2, l3, l4]
                        .iter()
                        .map(|&l| {
                            FqClassSpec::regular_semisimple(q, &[l, mod_inv(l, q)]).unwrap()
                        })
                        .collect();
                    if fq_is_generic(&specs, q) {
                        return Some([l1, l2, l3, l4]);
                    }
                }
            }
        }
    }
    None
}

/// Lagrange interpolation through exact integer samples (q_i, y_i),
/// returning the unique polynomial of degree < #samples.
pub fn lagrange_interpolate(samples: &[(u64, u64)]) -> crate::unipoly::UniPoly {
    use crate::rat::rat_int;
    use crate::unipoly::UniPoly;
    let mut acc = UniPoly::zero();
    for (i, &(xi, yi)) in samples.iter().enumerate() {
        let mut term = UniPoly::constant(rat_int(yi as i64));
        for (j, &(xj, _)) in samples.iter().enumerate() {
            if i == j {
                continue;
            }
            // (x - xj) / (xi - xj)
            let num = UniPoly::from_coeffs(vec![rat_int(-(xj as i64)), rat_int(1)]);
            let den = rat_int(xi as i64 - xj as i64);
            term = &term * &num.scale(&(rat_int(1) / den));
        }
        acc = &acc + &term;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat_int;

    fn p(parts: &[u32]) -> Partition {
        Partition::from(parts)
    }

    #[test]
    fn group_size_examples() {
        assert_eq!(group_size(1, 7), 6);
        assert_eq!(group_size(2, 3), 48);
        assert_eq!(group_size(2, 2), 6);
    }

    #[test]
    fn class_size_examples() {
        // central class: single element
        let spec = FqClassSpec::new(3, vec![(2, p(&[1, 1]))]).unwrap();
        assert_eq!(class_elements(&spec, 3).unwrap().len(), 1);
        // n=2 regular semisimple over F_3: 48 / (q-1)^2 = 12
        let spec = FqClassSpec::regular_semisimple(3, &[1, 2]).unwrap();
        assert_eq!(class_elements(&spec, 3).unwrap().len(), 12);
        // single Jordan block J_2(1) over F_3: 48 / (q (q-1)) = 8
        let spec = FqClassSpec::new(3, vec![(1, p(&[2]))]).unwrap();
        assert_eq!(class_elements(&spec, 3).unwrap().len(), 8);
        // closure adds the central stratum: 8 + 1
        assert_eq!(closure_elements(&spec, 3).unwrap().len(), 9);
    }

    #[test]
    fn jordan_type_detection() {
        let spec = FqClassSpec::new(5, vec![(2, p(&[2, 1]))]).unwrap();
        let rep = spec.representative(5);
        assert_eq!(
            spec.jordan_type_of(&rep, 5).unwrap(),
            vec![p(&[2, 1])]
        );
        assert!(spec.class_contains(&rep, 5));
        // the central matrix 2*Id lies in the closure, not the class
        let central = FqMat::scalar(3, 2);
        assert!(!spec.class_contains(&central, 5));
        assert!(spec.closure_contains(&central, 5));
        // wrong eigenvalue
        let other = FqMat::scalar(3, 1);
        assert_eq!(spec.jordan_type_of(&other, 5), None);
    }

    #[test]
    fn count_points_rank_one() {
        // n=1, g=0, k=2, specs {a}, {a^{-1}}: single solution
        for q in [3u64, 5, 7] {
            let specs = vec![
                FqClassSpec::new(q, vec![(2, p(&[1]))]).unwrap(),
                FqClassSpec::new(q, vec![(mod_inv(2, q), p(&[1]))]).unwrap(),
            ];
            assert_eq!(count_points(0, q, &specs).unwrap(), 1);
        }
        // n=1, genus g, k=1, spec {1}: (q-1)^{2g} for all primes up to 13
        for q in [3u64, 5, 7, 11, 13] {
            let specs = vec![FqClassSpec::new(q, vec![(1, p(&[1]))]).unwrap()];
            assert_eq!(count_points(0, q, &specs).unwrap(), 1);
            assert_eq!(count_points(1, q, &specs).unwrap(), (q - 1) * (q - 1));
        }
    }

    #[test]
    fn count_points_rejects_non_generic() {
        // n=1, k=1, eigenvalue != 1 violates the product condition
        let specs = vec![FqClassSpec::new(5, vec![(2, p(&[1]))]).unwrap()];
        assert!(matches!(count_points(0, 5, &specs), Err(Error::NonGeneric)));
    }

    #[test]
    fn rss_search_small_fields() {
        // no generic rank-2 rss tuple exists over F_3 (the only rss class is
        // {1, 2} and picking 1 from each puncture multiplies to 1)
        assert!(search_generic_rss_rank2(3, 3).is_none());
        assert!(search_generic_rss_rank2(4, 3).is_none());
        assert!(search_generic_sl2_rss(3).is_none());
        // three punctures work from F_5 on; four need F_7
        assert!(search_generic_rss_rank2(3, 5).is_some());
        assert!(search_generic_rss_rank2(4, 5).is_none());
        assert!(search_generic_sl2_rss(5).is_none());
        assert!(search_generic_rss_rank2(4, 7).is_some());
        assert!(search_generic_sl2_rss(7).is_some());
    }

    #[test]
    fn fricke_symmetry() {
        // permuting the first three trace parameters permutes (A, B, C) and
        // (x, y, z) with it, so the count is invariant
        for q in [3u64, 5, 7] {
            let (a, b, c, d) = (2, 3 % q, 5 % q, 1);
            let base = fricke_count(q, (a, b, c, d));
            assert_eq!(fricke_count(q, (b, a, c, d)), base);
            assert_eq!(fricke_count(q, (c, b, a, d)), base);
            assert_eq!(fricke_count(q, (a, c, b, d)), base);
        }
    }

    #[test]
    fn cayley_cubic_count_f3() {
        // Cayley parameters A = B = C = 0, D = -4: independent exhaustive scan
        let mut expected = 0;
        let q = 3u64;
        for x in 0..q {
            for y in 0..q {
                for z in 0..q {
                    let v = (x * y % q * z % q + x * x + y * y + z * z + (q - 4 % q)) % q;
                    if v == 0 {
                        expected += 1;
                    }
                }
            }
        }
        // trace parameters (-2, 2, 2, 2) produce exactly the Cayley constants
        let got = fricke_count(3, (3 - 2, 2, 2, 2));
        assert_eq!(got, expected);
    }

    #[test]
    fn lagrange_matches_samples() {
        let samples = [(3u64, 22u64), (5, 46), (7, 78)];
        let poly = lagrange_interpolate(&samples);
        for &(x, y) in &samples {
            assert_eq!(poly.eval(&rat_int(x as i64)), rat_int(y as i64));
        }
        // q^2 + 4q + 1 hits those samples
        assert_eq!(poly.coeff(2), rat_int(1));
        assert_eq!(poly.coeff(1), rat_int(4));
        assert_eq!(poly.coeff(0), rat_int(1));
    }
}
