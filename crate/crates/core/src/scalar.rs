//! Scalar abstraction shared by every numeric routine in the crate.
//!
//! Network quantities (cpu, capacity, bandwidth, loads, influence weights)
//! are generic over [`Scalar`], implemented for `f32` and `f64`. The exact
//! feasibility oracle additionally runs its linear program over any
//! [`LpField`], which includes arbitrary-precision rationals.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num::{BigInt, BigRational, Signed, Zero};
use num_traits::{Float, FromPrimitive, ToPrimitive};
use serde::de::DeserializeOwned;
use serde::Serialize;

/// Floating-point scalar used for resources, loads and weights.
pub trait Scalar:
    Float
    + FromPrimitive
    + ToPrimitive
    + Sum
    + Default
    + Debug
    + Display
    + Serialize
    + DeserializeOwned
    + Send
    + Sync
    + 'static
{
    /// Absolute slack used by inequality checks (`a <= b + tol`).
    fn tolerance() -> Self;

    /// Lossy conversion from an `f64` literal.
    #[inline]
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("f64 literal representable")
    }

    #[inline]
    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    #[inline]
    fn tolerance() -> Self {
        1e-9
    }
}

impl Scalar for f32 {
    #[inline]
    fn tolerance() -> Self {
        1e-4
    }
}

/// Ordered field for the small linear programs solved by the exact oracle.
///
/// `f64` pivots with a tolerance; [`BigRational`] pivots exactly.
pub trait LpField: Clone + Debug + PartialOrd + Signed {
    /// Values with magnitude at or below this are treated as zero.
    fn pivot_tolerance() -> Self;

    fn from_f64_exact(v: f64) -> Option<Self>;

    fn to_f64_lossy(&self) -> f64;

    #[inline]
    fn is_positive_tol(&self) -> bool {
        *self > Self::pivot_tolerance()
    }

    #[inline]
    fn is_negative_tol(&self) -> bool {
        *self < -Self::pivot_tolerance()
    }
}

impl LpField for f64 {
    fn pivot_tolerance() -> Self {
        1e-12
    }

    fn from_f64_exact(v: f64) -> Option<Self> {
        v.is_finite().then_some(v)
    }

    fn to_f64_lossy(&self) -> f64 {
        *self
    }
}

impl LpField for BigRational {
    fn pivot_tolerance() -> Self {
        BigRational::zero()
    }

    fn from_f64_exact(v: f64) -> Option<Self> {
        BigRational::from_float(v)
    }

    fn to_f64_lossy(&self) -> f64 {
        let (n, d) = (self.numer(), self.denom());
        match (n.to_f64(), d.to_f64()) {
            (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
            _ => {
                // Scale both down until they fit.
                let shift = n.bits().max(d.bits()).saturating_sub(1000);
                let n: BigInt = n >> shift;
                let d: BigInt = d >> shift;
                n.to_f64().unwrap_or(f64::NAN) / d.to_f64().unwrap_or(f64::NAN)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_roundtrip_is_exact() {
        let r = BigRational::from_f64_exact(0.1).unwrap();
        assert_eq!(r.to_f64_lossy(), 0.1);
        assert!(BigRational::from_f64_exact(f64::NAN).is_none());
    }

    #[test]
    fn literals() {
        assert_eq!(<f32 as Scalar>::lit(0.5), 0.5f32);
        assert_eq!(<f64 as Scalar>::from_count(7), 7.0);
    }
}
