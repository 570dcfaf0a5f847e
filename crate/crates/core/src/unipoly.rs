//! Dense univariate polynomials and reduced rational functions over [`BigRat`].
//!
//! The formal variable is written `v` throughout; this is the target of the
//! kernel specialization (z, w) -> (-1, v).

use crate::error::Error;
use crate::rat::{rat_int, rat_to_string, BigRat};
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Univariate polynomial; `coeffs[i]` is the coefficient of `v^i`.
/// No trailing zeros are stored; zero is the empty vector.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct UniPoly {
    coeffs: Vec<BigRat>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly::constant(rat_int(1))
    }

    pub fn constant(c: BigRat) -> Self {
        let mut p = UniPoly { coeffs: vec![c] };
        p.trim();
        p
    }

    /// The variable `v` itself.
    pub fn var() -> Self {
        UniPoly::from_coeffs(vec![rat_int(0), rat_int(1)])
    }

    /// `c * v^e`.
    pub fn monomial(c: BigRat, e: usize) -> Self {
        if c.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![BigRat::zero(); e + 1];
        coeffs[e] = c;
        UniPoly { coeffs }
    }

    pub fn from_coeffs(coeffs: Vec<BigRat>) -> Self {
        let mut p = UniPoly { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the polynomial; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, e: usize) -> BigRat {
        self.coeffs.get(e).cloned().unwrap_or_else(BigRat::zero)
    }

    pub fn coeffs(&self) -> &[BigRat] {
        &self.coeffs
    }

    pub fn leading_coeff(&self) -> BigRat {
        self.coeffs.last().cloned().unwrap_or_else(BigRat::zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn scale(&self, c: &BigRat) -> UniPoly {
        if c.is_zero() {
            return UniPoly::zero();
        }
        UniPoly {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Multiply by `v^e`.
    pub fn shift(&self, e: usize) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![BigRat::zero(); e];
        coeffs.extend(self.coeffs.iter().cloned());
        UniPoly { coeffs }
    }

    pub fn pow(&self, e: u32) -> UniPoly {
        let mut acc = UniPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, x: &BigRat) -> BigRat {
        let mut acc = BigRat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Euclidean division; panics only if `div` is zero.
    pub fn div_rem(&self, div: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!div.is_zero(), "division by zero polynomial");
        let dd = div.degree().unwrap();
        let lc = div.leading_coeff();
        let mut rem = self.clone();
        let mut quot = vec![BigRat::zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let f = rem.leading_coeff() / &lc;
            quot[rd - dd] = f.clone();
            for (i, c) in div.coeffs.iter().enumerate() {
                let idx = rd - dd + i;
                let delta = c * &f;
                rem.coeffs[idx] -= delta;
            }
            rem.trim();
        }
        (UniPoly::from_coeffs(quot), rem)
    }

    /// Monic gcd (Euclidean algorithm; coefficients form a field).
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let lc = a.leading_coeff();
        a.scale(&(rat_int(1) / lc))
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) + rhs.coeff(i));
        }
        UniPoly::from_coeffs(coeffs)
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        self + &(-rhs)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![BigRat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        UniPoly::from_coeffs(coeffs)
    }
}

impl UniPoly {
    /// Human-readable rendering with a chosen variable name.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (e, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let s = match e {
                0 => rat_to_string(c),
                _ => {
                    let head = if c.is_one() {
                        var.to_string()
                    } else if (-c).is_one() {
                        format!("-{var}")
                    } else {
                        format!("{}*{var}", rat_to_string(c))
                    };
                    if e > 1 {
                        format!("{head}^{e}")
                    } else {
                        head
                    }
                }
            };
            parts.push(s);
        }
        parts.join(" + ")
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("v"))
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Reduced univariate rational function with monic denominator.
#[derive(Clone, PartialEq, Eq)]
pub struct UniRat {
    num: UniPoly,
    den: UniPoly,
}

impl UniRat {
    pub fn new(num: UniPoly, den: UniPoly) -> Result<Self, Error> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(UniRat {
                num,
                den: UniPoly::one(),
            });
        }
        let g = num.gcd(&den);
        let (mut num, r) = num.div_rem(&g);
        debug_assert!(r.is_zero());
        let (mut den, r) = den.div_rem(&g);
        debug_assert!(r.is_zero());
        let lc = den.leading_coeff();
        let inv = rat_int(1) / lc;
        num = num.scale(&inv);
        den = den.scale(&inv);
        Ok(UniRat { num, den })
    }

    pub fn num(&self) -> &UniPoly {
        &self.num
    }

    pub fn den(&self) -> &UniPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Returns the numerator when the reduced denominator is 1.
    ///
    /// A nontrivial denominator here always signals a mathematical
    /// inconsistency upstream (the paired, specialized kernel entries must be
    /// polynomials), hence the dedicated error.
    pub fn poly_assert(&self) -> Result<UniPoly, Error> {
        if self.den.is_one() {
            Ok(self.num.clone())
        } else {
            Err(Error::NonPolynomial(format!(
                "residual denominator {}",
                self.den
            )))
        }
    }
}

impl Mul for &UniRat {
    type Output = UniRat;
    fn mul(self, rhs: &UniRat) -> UniRat {
        UniRat::new(&self.num * &rhs.num, &self.den * &rhs.den).expect("nonzero denominators")
    }
}

impl Add for &UniRat {
    type Output = UniRat;
    fn add(self, rhs: &UniRat) -> UniRat {
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        UniRat::new(num, &self.den * &rhs.den).expect("nonzero denominators")
    }
}

impl fmt::Display for UniRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for UniRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
