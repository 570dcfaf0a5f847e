//! Sparse bivariate polynomials over [`BigRat`] in the formal variables z and w.
//!
//! Only nonnegative exponents are stored. The q, t parameters of the kernel
//! live here through q = z^2, t = w^2; helpers that display or fold even
//! exponents are provided for that purpose.

use crate::error::Error;
use crate::rat::{rat_int, rat_to_string, BigRat};
use crate::unipoly::UniPoly;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Sparse polynomial in z, w: map from exponent pairs to nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct ZWPoly {
    terms: BTreeMap<(u32, u32), BigRat>,
}

impl ZWPoly {
    pub fn zero() -> Self {
        ZWPoly::default()
    }

    pub fn one() -> Self {
        ZWPoly::monomial(rat_int(1), 0, 0)
    }

    pub fn constant(c: BigRat) -> Self {
        ZWPoly::monomial(c, 0, 0)
    }

    pub fn monomial(c: BigRat, ez: u32, ew: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((ez, ew), c);
        }
        ZWPoly { terms }
    }

    /// `z^a - w^b`, the building block of the hook factors.
    pub fn z_pow_minus_w_pow(a: u32, b: u32) -> Self {
        &ZWPoly::monomial(rat_int(1), a, 0) - &ZWPoly::monomial(rat_int(1), 0, b)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.contains_key(&(0, 0)))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigRat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, ez: u32, ew: u32) -> BigRat {
        self.terms
            .get(&(ez, ew))
            .cloned()
            .unwrap_or_else(BigRat::zero)
    }

    pub fn deg_z(&self) -> u32 {
        self.terms.keys().map(|k| k.0).max().unwrap_or(0)
    }

    pub fn deg_w(&self) -> u32 {
        self.terms.keys().map(|k| k.1).max().unwrap_or(0)
    }

    fn insert_term(&mut self, key: (u32, u32), c: BigRat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Leading exponent pair under graded-lexicographic order with z before w.
    pub fn leading_monomial_grlex(&self) -> Option<(u32, u32)> {
        self.terms
            .keys()
            .copied()
            .max_by_key(|&(a, b)| (a + b, a))
    }

    pub fn leading_coeff_grlex(&self) -> BigRat {
        match self.leading_monomial_grlex() {
            Some(k) => self.terms[&k].clone(),
            None => BigRat::zero(),
        }
    }

    pub fn scale(&self, c: &BigRat) -> ZWPoly {
        if c.is_zero() {
            return ZWPoly::zero();
        }
        ZWPoly {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (*k, v * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> ZWPoly {
        let mut acc = ZWPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Swaps the two variables.
    pub fn swap_vars(&self) -> ZWPoly {
        ZWPoly {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), c)| ((b, a), c.clone()))
                .collect(),
        }
    }

    /// Substitutes z -> z^m, w -> w^m.
    pub fn map_exponents(&self, m: u32) -> ZWPoly {
        ZWPoly {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), c)| ((a * m, b * m), c.clone()))
                .collect(),
        }
    }

    /// Exact division; errors when `div` does not divide `self`.
    pub fn exact_div(&self, div: &ZWPoly) -> Result<ZWPoly, Error> {
        if div.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut rem = self.clone();
        let mut quot = ZWPoly::zero();
        let (dz, dw) = div.leading_monomial_grlex().unwrap();
        let dc = div.terms[&(dz, dw)].clone();
        while let Some((rz, rw)) = rem.leading_monomial_grlex() {
            if rz < dz || rw < dw {
                return Err(Error::Internal(format!(
                    "exact_div: {div} does not divide {self}"
                )));
            }
            let qkey = (rz - dz, rw - dw);
            let qc = &rem.terms[&(rz, rw)] / &dc;
            quot.insert_term(qkey, qc.clone());
            for (&(a, b), c) in &div.terms {
                rem.insert_term((a + qkey.0, b + qkey.1), -(c * &qc));
            }
        }
        Ok(quot)
    }

    /// Views the polynomial as a polynomial in z with coefficients in Q[w].
    fn z_slices(&self) -> Vec<UniPoly> {
        let dz = self.deg_z() as usize;
        let mut slices = vec![Vec::new(); dz + 1];
        for (&(a, b), c) in &self.terms {
            let v = &mut slices[a as usize];
            if v.len() <= b as usize {
                v.resize(b as usize + 1, BigRat::zero());
            }
            v[b as usize] = c.clone();
        }
        slices.into_iter().map(UniPoly::from_coeffs).collect()
    }

    fn from_z_slices(slices: Vec<UniPoly>) -> ZWPoly {
        let mut p = ZWPoly::zero();
        for (a, s) in slices.into_iter().enumerate() {
            for (b, c) in s.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    p.terms.insert((a as u32, b as u32), c.clone());
                }
            }
        }
        p
    }

    /// Gcd, normalized so that the graded-lex leading coefficient is 1.
    ///
    /// Computed as content times primitive-part gcd, the latter through a
    /// primitive pseudo-remainder sequence in `(Q[w])[z]`.
    pub fn gcd(&self, other: &ZWPoly) -> ZWPoly {
        if self.is_zero() {
            return other.normalized_grlex();
        }
        if other.is_zero() {
            return self.normalized_grlex();
        }
        let (cont_a, pp_a) = content_pp(self.z_slices());
        let (cont_b, pp_b) = content_pp(other.z_slices());
        let cont_g = cont_a.gcd(&cont_b);
        let pp_g = pp_gcd(pp_a, pp_b);
        let g = mul_slices_by_wpoly(pp_g, &cont_g);
        ZWPoly::from_z_slices(g).normalized_grlex()
    }

    fn normalized_grlex(&self) -> ZWPoly {
        if self.is_zero() {
            return ZWPoly::zero();
        }
        let lc = self.leading_coeff_grlex();
        self.scale(&(rat_int(1) / lc))
    }

    /// Evaluates at z = `zv`, w = `wv`.
    pub fn eval(&self, zv: &UniPoly, wv: &UniPoly) -> UniPoly {
        let mut zpows: Vec<UniPoly> = vec![UniPoly::one()];
        let mut wpows: Vec<UniPoly> = vec![UniPoly::one()];
        let mut acc = UniPoly::zero();
        for (&(a, b), c) in &self.terms {
            while zpows.len() <= a as usize {
                let next = &zpows[zpows.len() - 1] * zv;
                zpows.push(next);
            }
            while wpows.len() <= b as usize {
                let next = &wpows[wpows.len() - 1] * wv;
                wpows.push(next);
            }
            let term = &zpows[a as usize] * &wpows[b as usize];
            acc = &acc + &term.scale(c);
        }
        acc
    }

    /// Rewrites monomials z^a w^b as sign * u^(shift - a + b) v^b with
    /// sign = (-1)^a; this realizes z -> -1/u, w -> v*u after the caller
    /// clears denominators with u^shift. The result reuses this type with
    /// (u, v) in place of (z, w). Requires shift >= deg_z.
    pub fn subst_uv(&self, shift: u32) -> ZWPoly {
        let mut out = ZWPoly::zero();
        for (&(a, b), c) in &self.terms {
            debug_assert!(shift >= a);
            let coeff = if a % 2 == 1 { -c.clone() } else { c.clone() };
            out.insert_term((shift - a + b, b), coeff);
        }
        out
    }

    /// Folds z^(2i) w^(2j) into z^i w^j; errors when any exponent is odd.
    /// Used to present polynomials in q = z^2, t = w^2 (or q = u^2).
    pub fn fold_even_exponents(&self) -> Result<ZWPoly, Error> {
        let mut terms = BTreeMap::new();
        for (&(a, b), c) in &self.terms {
            if a % 2 != 0 || b % 2 != 0 {
                return Err(Error::NonPolynomial(format!(
                    "odd exponent pair ({a}, {b}) survives"
                )));
            }
            terms.insert((a / 2, b / 2), c.clone());
        }
        Ok(ZWPoly { terms })
    }

    /// Folds z^(2i) into z^i leaving the second exponent alone; errors on odd
    /// first exponents. Realizes q = u^2 after the -1/sqrt(q) substitution.
    pub fn fold_even_z(&self) -> Result<ZWPoly, Error> {
        let mut terms = BTreeMap::new();
        for (&(a, b), c) in &self.terms {
            if a % 2 != 0 {
                return Err(Error::NonPolynomial(format!(
                    "odd power u^{a} survives"
                )));
            }
            terms.insert((a / 2, b), c.clone());
        }
        Ok(ZWPoly { terms })
    }

    /// The polynomial as univariate in z; errors when w occurs.
    pub fn to_unipoly_z(&self) -> Result<UniPoly, Error> {
        let mut coeffs = vec![BigRat::zero(); self.deg_z() as usize + 1];
        for (&(a, b), c) in &self.terms {
            if b != 0 {
                return Err(Error::NonPolynomial(
                    "second variable present".to_string(),
                ));
            }
            coeffs[a as usize] = c.clone();
        }
        Ok(UniPoly::from_coeffs(coeffs))
    }

    /// Exponentwise substitution w -> constant, returning a polynomial in z
    /// (kept in this type with e_w = 0).
    pub fn eval_w(&self, wv: &BigRat) -> ZWPoly {
        let mut out = ZWPoly::zero();
        let mut pows: Vec<BigRat> = vec![rat_int(1)];
        for (&(a, b), c) in &self.terms {
            while pows.len() <= b as usize {
                let next = &pows[pows.len() - 1] * wv;
                pows.push(next);
            }
            out.insert_term((a, 0), c * &pows[b as usize]);
        }
        out
    }

    /// Renders with the given variable names; when `halve` is set, exponents
    /// are divided by two (for q = z^2, t = w^2 displays; caller guarantees
    /// evenness).
    pub fn render(&self, vz: &str, vw: &str, halve: bool) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (&(a, b), c) in &self.terms {
            let (a, b) = if halve { (a / 2, b / 2) } else { (a, b) };
            let mut factors = Vec::new();
            if a > 0 {
                factors.push(if a == 1 {
                    vz.to_string()
                } else {
                    format!("{vz}^{a}")
                });
            }
            if b > 0 {
                factors.push(if b == 1 {
                    vw.to_string()
                } else {
                    format!("{vw}^{b}")
                });
            }
            let mono = factors.join("*");
            let s = if mono.is_empty() {
                rat_to_string(c)
            } else if c.is_one() {
                mono
            } else if (-c).is_one() {
                format!("-{mono}")
            } else {
                format!("{}*{}", rat_to_string(c), mono)
            };
            parts.push(s);
        }
        parts.join(" + ")
    }
}

/// Content (monic gcd of the w-coefficients) and primitive part of z-slices.
fn content_pp(slices: Vec<UniPoly>) -> (UniPoly, Vec<UniPoly>) {
    let mut cont = UniPoly::zero();
    for s in &slices {
        cont = cont.gcd(s);
        if cont.is_one() {
            break;
        }
    }
    if cont.is_zero() {
        return (UniPoly::zero(), slices);
    }
    let pp = slices
        .iter()
        .map(|s| {
            let (q, r) = s.div_rem(&cont);
            debug_assert!(r.is_zero());
            q
        })
        .collect();
    (cont, pp)
}

fn mul_slices_by_wpoly(slices: Vec<UniPoly>, f: &UniPoly) -> Vec<UniPoly> {
    slices.iter().map(|s| s * f).collect()
}

fn slices_deg(slices: &[UniPoly]) -> Option<usize> {
    slices.iter().rposition(|s| !s.is_zero())
}

fn trim_slices(mut slices: Vec<UniPoly>) -> Vec<UniPoly> {
    while slices.last().is_some_and(|s| s.is_zero()) {
        slices.pop();
    }
    slices
}

/// Pseudo-remainder of a by b in (Q[w])[z]; both nonzero, deg a >= deg b.
fn pseudo_rem(a: &[UniPoly], b: &[UniPoly]) -> Vec<UniPoly> {
    let mut r: Vec<UniPoly> = a.to_vec();
    let db = slices_deg(b).unwrap();
    let lb = &b[db];
    loop {
        let dr = match slices_deg(&r) {
            Some(d) if d >= db => d,
            _ => return trim_slices(r),
        };
        let lr = r[dr].clone();
        // r = lb * r - lr * z^(dr-db) * b
        for s in r.iter_mut() {
            *s = &*s * lb;
        }
        for (i, bs) in b.iter().enumerate() {
            let delta = bs * &lr;
            r[dr - db + i] = &r[dr - db + i] - &delta;
        }
        r = trim_slices(r);
    }
}

/// Gcd of primitive polynomials in (Q[w])[z] via a primitive PRS.
fn pp_gcd(a: Vec<UniPoly>, b: Vec<UniPoly>) -> Vec<UniPoly> {
    let (mut a, mut b) = if slices_deg(&a) >= slices_deg(&b) {
        (a, b)
    } else {
        (b, a)
    };
    loop {
        match slices_deg(&b) {
            None => return a,
            Some(0) => return vec![UniPoly::one()],
            Some(_) => {}
        }
        let r = pseudo_rem(&a, &b);
        let (_, r_pp) = content_pp(r);
        a = b;
        b = r_pp;
    }
}

impl Add for &ZWPoly {
    type Output = ZWPoly;
    fn add(self, rhs: &ZWPoly) -> ZWPoly {
        let mut out = self.clone();
        for (&k, c) in &rhs.terms {
            out.insert_term(k, c.clone());
        }
        out
    }
}

impl Sub for &ZWPoly {
    type Output = ZWPoly;
    fn sub(self, rhs: &ZWPoly) -> ZWPoly {
        let mut out = self.clone();
        for (&k, c) in &rhs.terms {
            out.insert_term(k, -c.clone());
        }
        out
    }
}

impl Neg for &ZWPoly {
    type Output = ZWPoly;
    fn neg(self) -> ZWPoly {
        ZWPoly {
            terms: self.terms.iter().map(|(k, c)| (*k, -c.clone())).collect(),
        }
    }
}

impl Mul for &ZWPoly {
    type Output = ZWPoly;
    fn mul(self, rhs: &ZWPoly) -> ZWPoly {
        let mut out = ZWPoly::zero();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &rhs.terms {
                out.insert_term((a1 + a2, b1 + b2), c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for ZWPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("z", "w", false))
    }
}

impl fmt::Debug for ZWPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> ZWPoly {
        ZWPoly::monomial(rat_int(1), 1, 0)
    }

    fn w() -> ZWPoly {
        ZWPoly::monomial(rat_int(1), 0, 1)
    }

    #[test]
    fn grlex_leading_term() {
        // z^2*w + z*w^2 + z^3: leading is z^3? total degrees 3,3,3; z-exp 2,1,3.
        let p = &(&(&z().pow(2) * &w()) + &(&z() * &w().pow(2))) + &z().pow(3);
        assert_eq!(p.leading_monomial_grlex(), Some((3, 0)));
    }

    #[test]
    fn exact_div_round_trip() {
        let a = &(&z() - &w()) * &(&z() + &w());
        let q = a.exact_div(&(&z() - &w())).unwrap();
        assert_eq!(q, &z() + &w());
        assert!(ZWPoly::one().exact_div(&(&z() - &w())).is_err());
    }

    #[test]
    fn gcd_cancels_common_factor() {
        // gcd((z-w)^2 (z+1), (z-w)(w+1)) = z - w
        let a = &(&z() - &w()).pow(2) * &(&z() + &ZWPoly::one());
        let b = &(&z() - &w()) * &(&w() + &ZWPoly::one());
        assert_eq!(a.gcd(&b), &z() - &w());
    }

    #[test]
    fn gcd_coprime_is_one() {
        let a = &z().pow(2) - &ZWPoly::one();
        let b = &w().pow(2) - &ZWPoly::one();
        assert!(a.gcd(&b).is_one());
    }

    #[test]
    fn gcd_pure_w_content() {
        // gcd((1-w^2) z, (1-w)(1+z)) = 1 - w ... up to normalization w - 1
        let one = ZWPoly::one();
        let a = &(&one - &w().pow(2)) * &z();
        let b = &(&one - &w()) * &(&one + &z());
        let g = a.gcd(&b);
        // normalized: leading grlex coeff 1 -> w - 1
        assert_eq!(g, &w() - &one);
    }

    #[test]
    fn ring_axioms_small_random() {
        // deterministic small pseudo-random polynomials
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        let mut rand_poly = || {
            let mut p = ZWPoly::zero();
            for _ in 0..4 {
                let a = (next() % 3) as u32;
                let b = (next() % 3) as u32;
                let c = (next() % 7) as i64 - 3;
                p = &p + &ZWPoly::monomial(rat_int(c), a, b);
            }
            p
        };
        for _ in 0..25 {
            let (a, b, c) = (rand_poly(), rand_poly(), rand_poly());
            assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            assert_eq!(&a * &b, &b * &a);
        }
    }
}
