//! The Cauchy function Omega, the hook-normalization factor, and the
//! degree-n kernel with its specializations.
//!
//! The kernel of degree n is the s^n coefficient of
//! (z^2 - 1)(1 - w^2) Log Omega, stored in the power-sum multi-basis; pairing
//! it against Schur-type probes and specializing (z, w) -> (-1, v) produces
//! the cohomological polynomials of the character-variety layer.

use crate::error::{Error, Result};
use crate::field::FieldElem;
use crate::macdonald::htilde;
use crate::multisym::{pleth_log, MultiSym, MultiSymFunc, Series, SeriesScalar, SymSeries};
use crate::partition::Partition;
use crate::rat::{rat_int, BigRat};
use crate::symfunc::Basis;
use crate::unipoly::{UniPoly, UniRat};
use crate::zwpoly::ZWPoly;
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

/// Rational function whose denominator is kept as a multiset of binomial
/// factors z^a - w^b (the shape of every hook-factor denominator). Additions
/// take least common multiples of factor multisets, so no polynomial gcd is
/// ever run while a kernel is being assembled; the one reduction happens at
/// the end, by trial division against the cyclotomic refinement of the
/// factors.
#[derive(Clone, PartialEq, Eq, Debug)]
struct Factored {
    num: ZWPoly,
    den: BTreeMap<(u32, u32), u32>,
}

impl Factored {
    fn from_poly(num: ZWPoly) -> Self {
        Factored {
            num,
            den: BTreeMap::new(),
        }
    }

    fn with_den(num: ZWPoly, den: BTreeMap<(u32, u32), u32>) -> Self {
        if num.is_zero() {
            return Factored::from_poly(ZWPoly::zero());
        }
        Factored { num, den }
    }

    /// The product of a multiset of binomial factors.
    fn expand(den: &BTreeMap<(u32, u32), u32>) -> ZWPoly {
        let mut acc = ZWPoly::one();
        for (&(a, b), &m) in den {
            acc = &acc * &ZWPoly::z_pow_minus_w_pow(a, b).pow(m);
        }
        acc
    }

    /// Reduces to a canonical `FieldElem` by trial division of the numerator
    /// against the irreducible refinement of the denominator factors.
    fn finalize(&self) -> FieldElem {
        if self.num.is_zero() {
            return FieldElem::zero();
        }
        let mut num = self.num.clone();
        let mut den = ZWPoly::one();
        for (&(a, b), &m) in &self.den {
            for piece in binomial_irreducible_factors(a, b) {
                let mut left = m;
                while left > 0 {
                    match num.exact_div(&piece) {
                        Ok(q) => {
                            num = q;
                            left -= 1;
                        }
                        Err(_) => break,
                    }
                }
                if left > 0 {
                    den = &den * &piece.pow(left);
                }
            }
        }
        FieldElem::from_reduced(num, den).expect("nonzero denominator")
    }
}

/// Cyclotomic polynomial coefficients (integer) by iterated division.
fn cyclotomic(c: u32) -> UniPoly {
    let mut num = UniPoly::monomial(rat_int(1), c as usize);
    num = &num - &UniPoly::one();
    let mut den = UniPoly::one();
    for e in 1..c {
        if c.is_multiple_of(e) {
            den = &den * &cyclotomic(e);
        }
    }
    let (q, r) = num.div_rem(&den);
    debug_assert!(r.is_zero());
    q
}

/// The irreducible factors of z^a - w^b over Q: with d = gcd(a, b) and
/// u = z^(a/d), v = w^(b/d), the product over c | d of the homogenized
/// cyclotomics Phi_c(u, v).
fn binomial_irreducible_factors(a: u32, b: u32) -> Vec<ZWPoly> {
    let d = num_integer::gcd(a, b);
    debug_assert!(d > 0, "zero binomial");
    let au = a / d;
    let bv = b / d;
    let mut out = Vec::new();
    for c in 1..=d {
        if !d.is_multiple_of(c) {
            continue;
        }
        let phi = cyclotomic(c);
        let deg = phi.degree().unwrap_or(0);
        let mut piece = ZWPoly::zero();
        for (i, coeff) in phi.coeffs().iter().enumerate() {
            if coeff == &BigRat::from_integer(0.into()) {
                continue;
            }
            piece = &piece
                + &ZWPoly::monomial(coeff.clone(), au * i as u32, bv * (deg - i) as u32);
        }
        out.push(piece);
    }
    out
}

impl SeriesScalar for Factored {
    fn zero() -> Self {
        Factored::from_poly(ZWPoly::zero())
    }
    fn one() -> Self {
        Factored::from_poly(ZWPoly::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        // lcm of the factor multisets
        let mut lcm = self.den.clone();
        for (k, m) in &other.den {
            let e = lcm.entry(*k).or_insert(0);
            *e = (*e).max(*m);
        }
        let mut comp_a: BTreeMap<(u32, u32), u32> = BTreeMap::new();
        let mut comp_b: BTreeMap<(u32, u32), u32> = BTreeMap::new();
        for (k, m) in &lcm {
            let da = self.den.get(k).copied().unwrap_or(0);
            let db = other.den.get(k).copied().unwrap_or(0);
            if *m > da {
                comp_a.insert(*k, m - da);
            }
            if *m > db {
                comp_b.insert(*k, m - db);
            }
        }
        let na = &self.num * &Factored::expand(&comp_a);
        let nb = &other.num * &Factored::expand(&comp_b);
        Factored::with_den(&na + &nb, lcm)
    }
    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Factored::zero();
        }
        let mut den = self.den.clone();
        for (k, m) in &other.den {
            *den.entry(*k).or_insert(0) += m;
        }
        Factored::with_den(&self.num * &other.num, den)
    }
    fn scale_rat(&self, r: &BigRat) -> Self {
        Factored::with_den(self.num.scale(r), self.den.clone())
    }
    fn adams_vars(&self, n: u32) -> Self {
        Factored::with_den(
            self.num.map_exponents(n),
            self.den
                .iter()
                .map(|(&(a, b), &m)| ((a * n, b * n), m))
                .collect(),
        )
    }
}

/// The degree-n kernel for (genus, punctures) = (g, k).
#[derive(Clone, PartialEq, Eq)]
pub struct KernelResult {
    pub n: u32,
    pub g: u32,
    pub k: usize,
    kernel: MultiSymFunc,
}

impl KernelResult {
    pub fn kernel(&self) -> &MultiSymFunc {
        &self.kernel
    }

    /// Wraps a precomputed kernel after checking the degree invariant.
    pub fn from_parts(n: u32, g: u32, k: usize, kernel: MultiSymFunc) -> Result<Self> {
        if kernel.alphabets() != k {
            return Err(Error::ShapeMismatch("kernel alphabet count".to_string()));
        }
        for (key, _) in kernel.terms() {
            if key.iter().any(|p| p.size() != n) {
                return Err(Error::Internal(format!(
                    "kernel key is not degree {n} in every alphabet"
                )));
            }
        }
        Ok(KernelResult { n, g, k, kernel })
    }
}

/// Hook factor of a partition at genus g: product over cells with arm a and
/// leg l of `(z^(2a+1) - w^(2l+1))^(2g) / ((z^(2a+2) - w^(2l)) (z^(2a) - w^(2l+2)))`.
pub fn hook_factor(lam: &Partition, g: u32) -> FieldElem {
    let mut num = ZWPoly::one();
    let mut den = ZWPoly::one();
    for c in lam.cells() {
        let (a, l) = lam.arm_leg(c).expect("cell inside diagram");
        num = &num * &ZWPoly::z_pow_minus_w_pow(2 * a + 1, 2 * l + 1).pow(2 * g);
        den = &den * &ZWPoly::z_pow_minus_w_pow(2 * a + 2, 2 * l);
        den = &den * &ZWPoly::z_pow_minus_w_pow(2 * a, 2 * l + 2);
    }
    FieldElem::new(num, den).expect("hook denominator nonzero")
}

/// The k-alphabet, genus-g Cauchy function truncated at s^n_max: the sum
/// over `|lambda| <= n_max` of `hook_factor * prod_j Htilde_lambda[X_j] s^|lambda|`.
pub fn omega(g: u32, k: usize, n_max: u32) -> Result<SymSeries> {
    let factored = omega_factored(g, k, n_max)?;
    let mut series = SymSeries::zero(k, n_max as usize);
    for d in 0..=n_max as usize {
        series.set_coeff(d, factored.coeff(d).map_scalar(Factored::finalize));
    }
    Ok(series)
}

/// The numerator and factor multiset of one hook factor.
fn hook_factor_factored(lam: &Partition, g: u32) -> Factored {
    let mut num = ZWPoly::one();
    let mut den: BTreeMap<(u32, u32), u32> = BTreeMap::new();
    for c in lam.cells() {
        let (a, l) = lam.arm_leg(c).expect("cell inside diagram");
        num = &num * &ZWPoly::z_pow_minus_w_pow(2 * a + 1, 2 * l + 1).pow(2 * g);
        *den.entry((2 * a + 2, 2 * l)).or_insert(0) += 1;
        *den.entry((2 * a, 2 * l + 2)).or_insert(0) += 1;
    }
    Factored::with_den(num, den)
}

fn omega_factored(g: u32, k: usize, n_max: u32) -> Result<Series<Factored>> {
    let mut series = Series::zero(k, n_max as usize);
    series.set_coeff(0, MultiSym::one(k));
    for d in 1..=n_max {
        let mut coeff: MultiSym<Factored> = MultiSym::zero(k);
        for lam in Partition::all(d) {
            let h = htilde(&lam)?;
            // tensor the Schur expansion into every alphabet, with
            // polynomial (denominator-free) coefficients
            let hp = h.convert(Basis::PowerSum)?;
            let mut tensor: MultiSym<Factored> = MultiSym::one(k);
            for j in 0..k {
                let mut next = MultiSym::zero(k);
                for (key, c) in tensor.terms() {
                    for (mu, d2) in hp.terms() {
                        let mut new_key = key.clone();
                        new_key[j] = new_key[j].merge(mu);
                        let num = match d2.poly() {
                            Ok(p) => p.clone(),
                            Err(_) => unreachable!("Macdonald coefficients are polynomial"),
                        };
                        next.add_term(new_key, c.mul(&Factored::from_poly(num)));
                    }
                }
                tensor = next;
            }
            coeff = coeff.add(&tensor.scale(&hook_factor_factored(&lam, g)))?;
        }
        series.set_coeff(d as usize, coeff);
    }
    Ok(series)
}

/// The factor (z^2 - 1)(1 - w^2) that regularizes the Log coefficients.
pub fn regularizing_factor() -> FieldElem {
    let z2m1 = &ZWPoly::monomial(rat_int(1), 2, 0) - &ZWPoly::one();
    let onemw2 = &ZWPoly::one() - &ZWPoly::monomial(rat_int(1), 0, 2);
    FieldElem::from_poly(&z2m1 * &onemw2)
}

fn compute_kernel(n: u32, g: u32, k: usize) -> Result<KernelResult> {
    if n < 1 {
        return Err(Error::InvalidInput("kernel degree must be >= 1".to_string()));
    }
    // only |lambda| <= n terms of Omega are consulted by Log at degree n
    let om = omega_factored(g, k, n)?;
    let log = pleth_log(&om)?;
    let reg = Factored::from_poly(regularizing_factor().num().clone());
    let kernel = log
        .coeff(n as usize)
        .scale(&reg)
        .map_scalar(Factored::finalize);
    KernelResult::from_parts(n, g, k, kernel)
}

type KernelMap = HashMap<(u32, u32, usize), Arc<KernelResult>>;

static KERNELS: OnceLock<Mutex<KernelMap>> = OnceLock::new();

/// The degree-n HLV kernel, memoized on (n, g, k).
pub fn hlv_kernel(n: u32, g: u32, k: usize) -> Result<Arc<KernelResult>> {
    let lock = KERNELS.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(kr) = lock.lock().expect("kernel lock").get(&(n, g, k)) {
        return Ok(kr.clone());
    }
    let kr = Arc::new(compute_kernel(n, g, k)?);
    lock.lock()
        .expect("kernel lock")
        .entry((n, g, k))
        .or_insert_with(|| kr.clone());
    Ok(kr)
}

/// Stores an externally loaded kernel (cache path); validated by the
/// `KernelResult` constructor.
pub fn install_kernel(kr: KernelResult) {
    let lock = KERNELS.get_or_init(|| Mutex::new(HashMap::new()));
    lock.lock()
        .expect("kernel lock")
        .entry((kr.n, kr.g, kr.k))
        .or_insert_with(|| Arc::new(kr));
}

pub fn cached_kernel_keys() -> Vec<(u32, u32, usize)> {
    let lock = KERNELS.get_or_init(|| Mutex::new(HashMap::new()));
    let mut keys: Vec<_> = lock.lock().expect("kernel lock").keys().copied().collect();
    keys.sort();
    keys
}

/// Pairs the kernel with a probe, then substitutes (z, w) -> (z_val, w_val).
pub fn pair_and_substitute(
    kr: &KernelResult,
    probe: &MultiSymFunc,
    z_val: &UniPoly,
    w_val: &UniPoly,
) -> Result<UniRat> {
    let paired = probe.pair(kr.kernel())?;
    if paired.is_zero() {
        return UniRat::new(UniPoly::zero(), UniPoly::one());
    }
    paired.substitute(z_val, w_val)
}

/// Pairing followed by specialization and the polynomiality assertion; this
/// is the workhorse behind every Poincaré-type output.
pub fn specialize_pair(
    kr: &KernelResult,
    probe: &MultiSymFunc,
    z_val: &UniPoly,
    w_val: &UniPoly,
) -> Result<UniPoly> {
    pair_and_substitute(kr, probe, z_val, w_val)?.poly_assert()
}

/// Probe builder: the product of Schur functions `s_{lam_j}[X_j]`.
pub fn schur_probe(lams: &[Partition]) -> Result<MultiSymFunc> {
    let factors: Vec<_> = lams
        .iter()
        .map(|lam| {
            crate::symfunc::SymFunc1::<FieldElem>::unit_with_bound(
                Basis::Schur,
                lam.clone(),
                lam.size().max(1) as usize,
            )
        })
        .collect::<Result<_>>()?;
    MultiSymFunc::from_factors(&factors)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::from(parts)
    }

    fn z() -> ZWPoly {
        ZWPoly::monomial(rat_int(1), 1, 0)
    }

    fn w() -> ZWPoly {
        ZWPoly::monomial(rat_int(1), 0, 1)
    }

    #[test]
    fn hook_factor_examples() {
        assert!(hook_factor(&Partition::empty(), 3).is_one());
        // single cell, g = 0: 1/((z^2 - 1)(1 - w^2))
        let f = hook_factor(&p(&[1]), 0);
        let expected = FieldElem::new(
            ZWPoly::one(),
            &(&z().pow(2) - &ZWPoly::one()) * &(&ZWPoly::one() - &w().pow(2)),
        )
        .unwrap();
        assert_eq!(f, expected);
        // single cell, g = 1: (z - w)^2 over the same denominator
        let f = hook_factor(&p(&[1]), 1);
        let expected = FieldElem::new(
            (&z() - &w()).pow(2),
            &(&z().pow(2) - &ZWPoly::one()) * &(&ZWPoly::one() - &w().pow(2)),
        )
        .unwrap();
        assert_eq!(f, expected);
    }

    #[test]
    fn omega_low_degrees() {
        let om = omega(1, 2, 1).unwrap();
        assert!(om.coeff(0).is_one());
        // s^1 coefficient: hook * p_1[X1] p_1[X2] with Htilde_(1) = s_1 = p_1
        let c = om.coeff(1);
        let key = vec![p(&[1]), p(&[1])];
        assert_eq!(c.coeff(&key), hook_factor(&p(&[1]), 1));
        assert_eq!(c.num_terms(), 1);
    }

    #[test]
    fn degree_one_kernel_closed_form() {
        for g in 0..=3u32 {
            for k in 1..=3usize {
                let kr = hlv_kernel(1, g, k).unwrap();
                let expected_coeff = FieldElem::from_poly((&z() - &w()).pow(2 * g));
                let key = vec![p(&[1]); k];
                assert_eq!(kr.kernel().coeff(&key), expected_coeff, "g={g}, k={k}");
                assert_eq!(kr.kernel().num_terms(), 1);
            }
        }
    }

    #[test]
    fn specialize_pair_examples() {
        let v = UniPoly::var();
        let neg1 = UniPoly::constant(rat_int(-1));
        // n=1, g=1, k=1, probe s_(1): (z - w)^2 at (-1, v) -> (1 + v)^2
        let kr = hlv_kernel(1, 1, 1).unwrap();
        let probe = schur_probe(&[p(&[1])]).unwrap();
        let out = specialize_pair(&kr, &probe, &neg1, &v).unwrap();
        let expected = UniPoly::from_coeffs(vec![rat_int(1), rat_int(2), rat_int(1)]);
        assert_eq!(out, expected);
        // n=1, g=0, k=3: kernel is the product of p_1's, pairing gives 1
        let kr = hlv_kernel(1, 0, 3).unwrap();
        let probe = schur_probe(&[p(&[1]), p(&[1]), p(&[1])]).unwrap();
        let out = specialize_pair(&kr, &probe, &neg1, &v).unwrap();
        assert_eq!(out, UniPoly::one());
        // zero probe pairs to zero
        let zero = MultiSymFunc::zero(3);
        let out = specialize_pair(&kr, &zero, &neg1, &v).unwrap();
        assert!(out.is_zero());
    }

    #[test]
    fn degree_two_pairings_are_polynomial() {
        let v = UniPoly::var();
        let neg1 = UniPoly::constant(rat_int(-1));
        for g in 0..=1u32 {
            for k in 1..=2usize {
                let kr = hlv_kernel(2, g, k).unwrap();
                for lams in cartesian(&Partition::all(2), k) {
                    let probe = schur_probe(&lams).unwrap();
                    let out = specialize_pair(&kr, &probe, &neg1, &v).unwrap();
                    for c in out.coeffs() {
                        assert!(c.denom() == &1.into(), "non-integer coefficient");
                        assert!(c.numer() >= &0.into(), "negative coefficient {out}");
                    }
                }
            }
        }
    }

    #[test]
    fn kernel_is_symmetric_in_alphabets() {
        let kr = hlv_kernel(2, 1, 2).unwrap();
        let swapped = kr.kernel().permute_alphabets(&[1, 0]);
        assert_eq!(&swapped, kr.kernel());
        let kr = hlv_kernel(2, 0, 3).unwrap();
        let rotated = kr.kernel().permute_alphabets(&[2, 0, 1]);
        assert_eq!(&rotated, kr.kernel());
    }

    fn cartesian(parts: &[Partition], k: usize) -> Vec<Vec<Partition>> {
        let mut out = vec![Vec::new()];
        for _ in 0..k {
            let mut next = Vec::new();
            for prefix in &out {
                for p in parts {
                    let mut v = prefix.clone();
                    v.push(p.clone());
                    next.push(v);
                }
            }
            out = next;
        }
        out
    }
}
