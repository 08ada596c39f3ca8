//! Exact virtual objects: rational combinations of basis elements.

use std::fmt;

use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::ring::{FusionRing, UNIT};

#[derive(Debug, Clone)]
pub struct RingElement<'r> {
    ring: &'r FusionRing,
    coeffs: Vec<Rational64>,
}

impl PartialEq for RingElement<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.ring, other.ring) && self.coeffs == other.coeffs
    }
}

impl<'r> RingElement<'r> {
    pub fn zero(ring: &'r FusionRing) -> Self {
        Self {
            ring,
            coeffs: vec![Rational64::from_integer(0); ring.rank()],
        }
    }

    pub fn unit(ring: &'r FusionRing) -> Self {
        Self::basis(ring, UNIT)
    }

    /// `[X_i]`. Panics if `i` is out of range.
    pub fn basis(ring: &'r FusionRing, i: usize) -> Self {
        let mut e = Self::zero(ring);
        e.coeffs[i] = Rational64::from_integer(1);
        e
    }

    pub fn from_coeffs(ring: &'r FusionRing, coeffs: Vec<Rational64>) -> Result<Self> {
        if coeffs.len() != ring.rank() {
            return Err(Error::LengthMismatch {
                expected: ring.rank(),
                found: coeffs.len(),
            });
        }
        Ok(Self { ring, coeffs })
    }

    pub fn from_ints(ring: &'r FusionRing, coeffs: &[i64]) -> Result<Self> {
        Self::from_coeffs(
            ring,
            coeffs
                .iter()
                .map(|&c| Rational64::from_integer(c))
                .collect(),
        )
    }

    pub fn ring(&self) -> &'r FusionRing {
        self.ring
    }

    pub fn coeffs(&self) -> &[Rational64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational64 {
        self.coeffs[i]
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.coeffs.len())
            .filter(|&i| self.coeffs[i] != Rational64::from_integer(0))
            .collect()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs
            .iter()
            .all(|c| *c >= Rational64::from_integer(0))
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if std::ptr::eq(self.ring, other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    /// Bilinear extension of the basis products.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let zero = Rational64::from_integer(0);
        let mut out = Self::zero(self.ring);
        for (i, &a) in self.coeffs.iter().enumerate().filter(|(_, c)| **c != zero) {
            for (j, &b) in other.coeffs.iter().enumerate().filter(|(_, c)| **c != zero) {
                for &(k, v) in self.ring.product(i, j) {
                    out.coeffs[k] += a * b * Rational64::from_integer(v as i64);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self {
            ring: self.ring,
            coeffs,
        })
    }

    pub fn scale(&self, factor: Rational64) -> Self {
        Self {
            ring: self.ring,
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// Coefficients permuted by the duality involution.
    pub fn dual(&self) -> Self {
        let mut out = Self::zero(self.ring);
        for (i, &c) in self.coeffs.iter().enumerate() {
            out.coeffs[self.ring.dual(i)] = c;
        }
        out
    }

    /// The multiplicity form `m(a, b) = Σ a_i b_i`.
    pub fn form_m(&self, other: &Self) -> Result<Rational64> {
        self.same_ring(other)?;
        Ok(self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a * b)
            .sum())
    }
}

impl fmt::Display for RingElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let support = self.support();
        if support.is_empty() {
            return f.write_str("0");
        }
        for (n, i) in support.into_iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            let c = self.coeffs[i];
            if c != Rational64::from_integer(1) {
                write!(f, "{c}·")?;
            }
            write!(f, "[{}]", self.ring.label(i))?;
        }
        Ok(())
    }
}
