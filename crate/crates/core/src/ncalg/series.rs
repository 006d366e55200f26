use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use super::poly::NcPoly;
use super::word::Alphabet;
use crate::error::{Error, Result};

/// A non-commutative series known up to (and including) degree `cutoff`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruncSeries {
    poly: NcPoly,
    cutoff: u32,
}

impl TruncSeries {
    pub fn new(poly: NcPoly, cutoff: u32) -> Self {
        TruncSeries {
            poly: poly.truncated(cutoff),
            cutoff,
        }
    }

    pub fn zero(alphabet: Alphabet, cutoff: u32) -> Self {
        TruncSeries::new(NcPoly::zero(alphabet), cutoff)
    }

    pub fn one(alphabet: Alphabet, cutoff: u32) -> Self {
        TruncSeries::new(NcPoly::one(alphabet), cutoff)
    }

    pub fn poly(&self) -> &NcPoly {
        &self.poly
    }

    pub fn into_poly(self) -> NcPoly {
        self.poly
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    pub fn alphabet(&self) -> Alphabet {
        self.poly.alphabet()
    }

    fn check_cutoff(&self, other: &TruncSeries) -> Result<()> {
        if self.cutoff != other.cutoff {
            return Err(Error::CutoffMismatch {
                left: self.cutoff,
                right: other.cutoff,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, rhs: &TruncSeries) -> Result<TruncSeries> {
        self.check_cutoff(rhs)?;
        Ok(TruncSeries {
            poly: self.poly.try_add(&rhs.poly)?,
            cutoff: self.cutoff,
        })
    }

    pub fn try_sub(&self, rhs: &TruncSeries) -> Result<TruncSeries> {
        self.check_cutoff(rhs)?;
        Ok(TruncSeries {
            poly: self.poly.try_sub(&rhs.poly)?,
            cutoff: self.cutoff,
        })
    }

    pub fn try_mul(&self, rhs: &TruncSeries) -> Result<TruncSeries> {
        self.check_cutoff(rhs)?;
        if self.alphabet() != rhs.alphabet() {
            return Err(Error::AlphabetMismatch {
                left: self.alphabet(),
                right: rhs.alphabet(),
            });
        }
        Ok(TruncSeries {
            poly: self.poly.mul_upto(&rhs.poly, Some(self.cutoff)),
            cutoff: self.cutoff,
        })
    }

    pub fn reverse(&self) -> TruncSeries {
        TruncSeries {
            poly: self.poly.reverse(),
            cutoff: self.cutoff,
        }
    }

    /// Degree-preserving, so truncation commutes with it.
    pub fn delta(&self) -> Result<TruncSeries> {
        Ok(TruncSeries {
            poly: self.poly.delta()?,
            cutoff: self.cutoff,
        })
    }

    /// `1/(1 - u) = sum_k u^k`, for `u` without constant term.
    pub fn geom_inverse(&self) -> Result<TruncSeries> {
        if !self.poly.constant_term().is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let mut sum = TruncSeries::one(self.alphabet(), self.cutoff);
        let mut power = sum.clone();
        loop {
            power = power.try_mul(self)?;
            if power.poly.is_zero() {
                return Ok(sum);
            }
            sum = sum.try_add(&power)?;
        }
    }

    /// Checks `delta(1/(1-u)) = 1/(1-u) * delta(u) * 1/(1-u)` coefficientwise
    /// up to the cutoff.
    pub fn delta_geom_identity_check(&self) -> Result<bool> {
        let inv = self.geom_inverse()?;
        let lhs = inv.delta()?;
        let rhs = inv.try_mul(&self.delta()?)?.try_mul(&inv)?;
        Ok(lhs == rhs)
    }

    /// See [`NcPoly::substitute_line`]; the result has exactly `cutoff + 1`
    /// coefficients.
    pub fn substitute_line(&self) -> Result<Vec<BigInt>> {
        let mut coeffs = self.poly.substitute_line()?;
        coeffs.resize(self.cutoff as usize + 1, BigInt::zero());
        Ok(coeffs)
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O(deg {})", self.poly, self.cutoff + 1)
    }
}
