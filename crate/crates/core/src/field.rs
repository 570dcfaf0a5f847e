//! The coefficient field Q(z, w): normalized rational functions in z and w.
//!
//! Canonical form: gcd(num, den) = 1, denominator nonzero with graded-lex
//! leading coefficient 1, and zero stored as 0/1. Equal values therefore have
//! identical representations and `==` is semantic equality.

use crate::error::{Error, Result};
use crate::rat::{rat_int, BigRat};
use crate::unipoly::{UniPoly, UniRat};
use crate::zwpoly::ZWPoly;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Clone, PartialEq, Eq)]
pub struct FieldElem {
    num: ZWPoly,
    den: ZWPoly,
}

impl FieldElem {
    pub fn new(num: ZWPoly, den: ZWPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(FieldElem {
                num: ZWPoly::zero(),
                den: ZWPoly::one(),
            });
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g)?, den.exact_div(&g)?)
        };
        let lc = den.leading_coeff_grlex();
        let inv = rat_int(1) / lc;
        Ok(FieldElem {
            num: num.scale(&inv),
            den: den.scale(&inv),
        })
    }

    pub fn from_poly(p: ZWPoly) -> Self {
        FieldElem {
            num: p,
            den: ZWPoly::one(),
        }
    }

    /// Constructor for callers that already hold a fully reduced fraction
    /// (gcd 1); skips the gcd and only normalizes the leading coefficient.
    /// The kernel builder uses this after its trial-division reduction.
    pub(crate) fn from_reduced(num: ZWPoly, den: ZWPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(FieldElem::zero());
        }
        debug_assert!(num.gcd(&den).is_one(), "from_reduced got a reducible fraction");
        let lc = den.leading_coeff_grlex();
        let inv = rat_int(1) / lc;
        Ok(FieldElem {
            num: num.scale(&inv),
            den: den.scale(&inv),
        })
    }

    pub fn from_rat(r: &BigRat) -> Self {
        FieldElem::from_poly(ZWPoly::constant(r.clone()))
    }

    pub fn from_int(n: i64) -> Self {
        FieldElem::from_rat(&rat_int(n))
    }

    pub fn zero() -> Self {
        FieldElem::from_poly(ZWPoly::zero())
    }

    pub fn one() -> Self {
        FieldElem::from_poly(ZWPoly::one())
    }

    pub fn num(&self) -> &ZWPoly {
        &self.num
    }

    pub fn den(&self) -> &ZWPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the denominator is 1.
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The numerator, provided the denominator is 1.
    pub fn poly(&self) -> Result<&ZWPoly> {
        if self.is_polynomial() {
            Ok(&self.num)
        } else {
            Err(Error::NonPolynomial(format!("residual denominator {}", self.den)))
        }
    }

    pub fn inv(&self) -> Result<FieldElem> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        FieldElem::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: u32) -> FieldElem {
        FieldElem::new(self.num.pow(e), self.den.pow(e)).expect("nonzero denominator")
    }

    /// The coefficient twist of the n-th Adams operator: z -> z^n, w -> w^n.
    pub fn adams(&self, n: u32) -> FieldElem {
        FieldElem::new(self.num.map_exponents(n), self.den.map_exponents(n))
            .expect("nonzero denominator")
    }

    /// Specializes z and w to univariate polynomial values, returning a
    /// reduced univariate rational function.
    ///
    /// Errors when the denominator vanishes identically under the
    /// substitution (specialize only after clearing the (z^2-1)(1-w^2)
    /// factors).
    pub fn substitute(&self, z_val: &UniPoly, w_val: &UniPoly) -> Result<UniRat> {
        let den = self.den.eval(z_val, w_val);
        if den.is_zero() {
            return Err(Error::SpecializationPole(format!(
                "denominator {} vanishes",
                self.den
            )));
        }
        let num = self.num.eval(z_val, w_val);
        UniRat::new(num, den)
    }

    /// Realizes z -> -1/u, w -> v*u, returning a rational function in (u, v)
    /// stored in the same representation (z-slot = u, w-slot = v).
    pub fn subst_neg_inv_u_vu(&self) -> FieldElem {
        let shift = self.num.deg_z().max(self.den.deg_z());
        FieldElem::new(self.num.subst_uv(shift), self.den.subst_uv(shift))
            .expect("nonzero denominator")
    }
}

impl Add for &FieldElem {
    type Output = FieldElem;
    fn add(self, rhs: &FieldElem) -> FieldElem {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let g = self.den.gcd(&rhs.den);
        let (da, db) = if g.is_one() {
            (self.den.clone(), rhs.den.clone())
        } else {
            (
                self.den.exact_div(&g).expect("gcd divides"),
                rhs.den.exact_div(&g).expect("gcd divides"),
            )
        };
        let num = &(&self.num * &db) + &(&rhs.num * &da);
        let den = &self.den * &db; // = da * db * g
        FieldElem::new(num, den).expect("nonzero denominator")
    }
}

impl Sub for &FieldElem {
    type Output = FieldElem;
    fn sub(self, rhs: &FieldElem) -> FieldElem {
        self + &(-rhs)
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        FieldElem {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &FieldElem {
    type Output = FieldElem;
    fn mul(self, rhs: &FieldElem) -> FieldElem {
        if self.is_zero() || rhs.is_zero() {
            return FieldElem::zero();
        }
        // cross-reduce before multiplying to keep intermediate degrees low
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let n1 = if g1.is_one() {
            self.num.clone()
        } else {
            self.num.exact_div(&g1).expect("gcd divides")
        };
        let d2 = if g1.is_one() {
            rhs.den.clone()
        } else {
            rhs.den.exact_div(&g1).expect("gcd divides")
        };
        let n2 = if g2.is_one() {
            rhs.num.clone()
        } else {
            rhs.num.exact_div(&g2).expect("gcd divides")
        };
        let d1 = if g2.is_one() {
            self.den.clone()
        } else {
            self.den.exact_div(&g2).expect("gcd divides")
        };
        FieldElem::new(&n1 * &n2, &d1 * &d2).expect("nonzero denominator")
    }
}

impl Div for &FieldElem {
    type Output = FieldElem;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &FieldElem) -> FieldElem {
        self * &rhs.inv().expect("division by zero FieldElem")
    }
}

// by-value operator forwarding, so FieldElem satisfies the num-traits bounds
// used by the generic symmetric-function layer

impl Add for FieldElem {
    type Output = FieldElem;
    fn add(self, rhs: FieldElem) -> FieldElem {
        &self + &rhs
    }
}

impl Sub for FieldElem {
    type Output = FieldElem;
    fn sub(self, rhs: FieldElem) -> FieldElem {
        &self - &rhs
    }
}

impl Mul for FieldElem {
    type Output = FieldElem;
    fn mul(self, rhs: FieldElem) -> FieldElem {
        &self * &rhs
    }
}

impl Div for FieldElem {
    type Output = FieldElem;
    fn div(self, rhs: FieldElem) -> FieldElem {
        &self / &rhs
    }
}

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        -&self
    }
}

impl num_traits::Zero for FieldElem {
    fn zero() -> Self {
        FieldElem::zero()
    }
    fn is_zero(&self) -> bool {
        FieldElem::is_zero(self)
    }
}

impl num_traits::One for FieldElem {
    fn one() -> Self {
        FieldElem::one()
    }
    fn is_one(&self) -> bool {
        FieldElem::is_one(self)
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn zp() -> ZWPoly {
        ZWPoly::monomial(rat_int(1), 1, 0)
    }

    fn wp() -> ZWPoly {
        ZWPoly::monomial(rat_int(1), 0, 1)
    }

    #[test]
    fn inverse_pair_multiplies_to_one() {
        let a = FieldElem::new(zp(), wp()).unwrap();
        let b = FieldElem::new(wp(), zp()).unwrap();
        assert!((&a * &b).is_one());
    }

    #[test]
    fn gcd_cancellation_on_construction() {
        // (z^2 - 1)/(z - 1) -> z + 1
        let num = &zp().pow(2) - &ZWPoly::one();
        let den = &zp() - &ZWPoly::one();
        let f = FieldElem::new(num, den).unwrap();
        assert!(f.is_polynomial());
        assert_eq!(f.num(), &(&zp() + &ZWPoly::one()));
    }

    #[test]
    fn additive_inverse_cancels() {
        // 1/(1 - w^2) + 1/(w^2 - 1) = 0
        let one = ZWPoly::one();
        let a = FieldElem::new(one.clone(), &one - &wp().pow(2)).unwrap();
        let b = FieldElem::new(one.clone(), &wp().pow(2) - &one).unwrap();
        assert!((&a + &b).is_zero());
    }

    #[test]
    fn canonical_form_unique() {
        // same value through two routes -> identical representation
        let one = ZWPoly::one();
        // route 1: (z - w)/(1 - w^2)
        let f1 = FieldElem::new(&zp() - &wp(), &one - &wp().pow(2)).unwrap();
        // route 2: ((z - w)(z + 1)) / ((1 - w^2)(z + 1))
        let zp1 = &zp() + &one;
        let f2 = FieldElem::new(&(&zp() - &wp()) * &zp1, &(&one - &wp().pow(2)) * &zp1).unwrap();
        assert_eq!(f1.num(), f2.num());
        assert_eq!(f1.den(), f2.den());
        // denominator normalized: grlex leading coefficient 1
        assert!(f1.den().leading_coeff_grlex().is_one());
    }

    #[test]
    fn substitute_examples() {
        let v = UniPoly::var();
        let neg1 = UniPoly::constant(rat_int(-1));
        // (z - w)^2 at z = -1, w = v -> (1 + v)^2
        let f = FieldElem::from_poly((&zp() - &wp()).pow(2));
        let r = f.substitute(&neg1, &v).unwrap();
        let expected = UniPoly::from_coeffs(vec![rat_int(1), rat_int(2), rat_int(1)]);
        assert_eq!(r.poly_assert().unwrap(), expected);
        // (z^2 - 1)/(z - w) at z = -1, w = v -> 0
        let f = FieldElem::new(&zp().pow(2) - &ZWPoly::one(), &zp() - &wp()).unwrap();
        assert!(f.substitute(&neg1, &v).unwrap().is_zero());
        // 1/(z^2 - 1) at z = -1 -> pole
        let f = FieldElem::new(ZWPoly::one(), &zp().pow(2) - &ZWPoly::one()).unwrap();
        assert!(matches!(
            f.substitute(&neg1, &v),
            Err(Error::SpecializationPole(_))
        ));
    }

    #[test]
    fn substitute_is_ring_morphism() {
        let v = UniPoly::var();
        let neg1 = UniPoly::constant(rat_int(-1));
        let two = ZWPoly::constant(rat_int(2));
        let a = FieldElem::new(&zp() - &wp(), &zp() + &two).unwrap();
        let b = FieldElem::new(&zp().pow(2) + &wp(), &wp() + &ZWPoly::one()).unwrap();
        let lhs = (&a * &b).substitute(&neg1, &v).unwrap();
        let rhs = &a.substitute(&neg1, &v).unwrap() * &b.substitute(&neg1, &v).unwrap();
        assert_eq!(lhs, rhs);
        let lhs = (&a + &b).substitute(&neg1, &v).unwrap();
        let rhs = &a.substitute(&neg1, &v).unwrap() + &b.substitute(&neg1, &v).unwrap();
        assert_eq!(lhs, rhs);
    }
}
