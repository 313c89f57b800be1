//! Sparse univariate polynomials with big-integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::{par, Error, Result};

/// Exponent -> non-zero coefficient.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct SparsePolynomial {
    terms: BTreeMap<u32, BigInt>,
}

impl SparsePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial(coeff: impl Into<BigInt>, exp: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff.into());
        p
    }

    /// From `(coefficient, exponent)` pairs; like terms are combined.
    pub fn from_terms<C: Into<BigInt>>(terms: impl IntoIterator<Item = (C, u32)>) -> Self {
        let mut p = Self::zero();
        for (c, e) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    fn add_term(&mut self, exp: u32, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_insert_with(BigInt::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    pub fn coeff(&self, exp: u32) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &BigInt)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.mul_truncated(other, None)
    }

    /// Product keeping only terms of codegree `<= max_codegree` relative to
    /// the product's degree. Exact for those terms since every factor's
    /// leading term is kept.
    pub fn mul_truncated(&self, other: &Self, max_codegree: Option<u32>) -> Self {
        let (Some(da), Some(db)) = (self.degree(), other.degree()) else {
            return Self::zero();
        };
        let top = da + db;
        let floor = max_codegree.map_or(0, |c| top.saturating_sub(c));
        let mut out = Self::zero();
        for (ea, ca) in self.terms.iter().rev() {
            if ea + db < floor {
                break;
            }
            for (eb, cb) in other.terms.iter().rev() {
                if ea + eb < floor {
                    break;
                }
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }

    /// `self^e` by repeated squaring.
    pub fn pow(&self, e: u32) -> Self {
        self.pow_truncated(e, None)
    }

    pub fn pow_truncated(&self, mut e: u32, max_codegree: Option<u32>) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul_truncated(&base, max_codegree);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_truncated(&base, max_codegree);
            }
        }
        result
    }

    /// Coefficient of `x^{deg - d}`.
    pub fn codegree_coefficient(&self, d: u32) -> Result<BigInt> {
        let degree = self.degree().unwrap_or(0);
        if d > degree {
            return Err(Error::OutOfRange {
                d: d as usize,
                degree: degree as usize,
            });
        }
        Ok(self.coeff(degree - d))
    }
}

impl Mul for &SparsePolynomial {
    type Output = SparsePolynomial;

    fn mul(self, rhs: Self) -> SparsePolynomial {
        SparsePolynomial::mul(self, rhs)
    }
}

impl fmt::Debug for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (&e, c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let unit = mag.is_one();
            match e {
                0 => write!(f, "{mag}")?,
                1 if unit => write!(f, "x")?,
                1 => write!(f, "{mag}x")?,
                _ if unit => write!(f, "x^{e}")?,
                _ => write!(f, "{mag}x^{e}")?,
            }
        }
        Ok(())
    }
}

/// Factors `(polynomial, power)` of the characteristic polynomial of the
/// Rowling hypergraph:
/// `x^133 (x^3-1)^27 (x^15-13x^12+65x^9-147x^6+157x^3-64)^12 (x^6-x^3+2)^6 (x^6-17x^3+64)^3`.
pub fn rowling_factors() -> Vec<(SparsePolynomial, u32)> {
    vec![
        (SparsePolynomial::monomial(1, 1), 133),
        (SparsePolynomial::from_terms([(1, 3), (-1, 0)]), 27),
        (
            SparsePolynomial::from_terms([
                (1, 15),
                (-13, 12),
                (65, 9),
                (-147, 6),
                (157, 3),
                (-64, 0),
            ]),
            12,
        ),
        (SparsePolynomial::from_terms([(1, 6), (-1, 3), (2, 0)]), 6),
        (SparsePolynomial::from_terms([(1, 6), (-17, 3), (64, 0)]), 3),
    ]
}

/// Expands the factored Rowling characteristic polynomial (degree 448).
/// With `max_codegree`, only coefficients down to that codegree are kept.
pub fn expand_phi_rowling(max_codegree: Option<u32>) -> SparsePolynomial {
    let factors = rowling_factors();
    let powers = par::map(&factors, |(p, e)| p.pow_truncated(*e, max_codegree));
    powers
        .iter()
        .fold(SparsePolynomial::one(), |acc, p| acc.mul_truncated(p, max_codegree))
}
