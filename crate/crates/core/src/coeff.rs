//! Coefficient scalar abstraction for the symmetric-function layer.
//!
//! The same machinery runs over plain rationals (base-change tables, Kostka
//! numbers, twisted Littlewood-Richardson work) and over the rational
//! function field Q(z, w) (Macdonald polynomials and the kernel). Both are
//! exact fields; floating point is never used.

use crate::field::FieldElem;
use crate::rat::{rat_to_string, BigRat};
use num_traits::{One, Zero};
use std::fmt::Debug;
use std::ops::{Div, Neg, Sub};

pub trait Coeff:
    Clone
    + PartialEq
    + Eq
    + Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Div<Output = Self>
    + 'static
{
    fn from_rat(r: &BigRat) -> Self;

    /// Exact rational content if the scalar is a constant, else `None`.
    fn to_rat(&self) -> Option<BigRat>;

    /// Rendering for the textual symmetric-function format.
    fn render(&self) -> String;
}

impl Coeff for BigRat {
    fn from_rat(r: &BigRat) -> Self {
        r.clone()
    }

    fn to_rat(&self) -> Option<BigRat> {
        Some(self.clone())
    }

    fn render(&self) -> String {
        rat_to_string(self)
    }
}

impl Coeff for FieldElem {
    fn from_rat(r: &BigRat) -> Self {
        FieldElem::from_rat(r)
    }

    fn to_rat(&self) -> Option<BigRat> {
        if !self.den().is_one() || !self.num().is_constant() {
            return None;
        }
        Some(self.num().coeff(0, 0))
    }

    fn render(&self) -> String {
        format!("{self}")
    }
}
