//! Scalar abstraction for quantities that are rational in exact mode.
//!
//! The engine itself only instantiates [`crate::Rational`]; `f64` exists so
//! reports can show approximate values computed along the same code path.

use std::fmt::Debug;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, Signed};

pub trait Scalar: Num + Clone + PartialOrd + Debug {
    /// `num / den` in this scalar type. `den` must be nonzero.
    fn from_ratio(num: i64, den: i64) -> Self;

    fn from_int(value: i64) -> Self {
        Self::from_ratio(value, 1)
    }
}

impl Scalar for f64 {
    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }
}

impl Scalar for f32 {
    fn from_ratio(num: i64, den: i64) -> Self {
        num as f32 / den as f32
    }
}

impl<T> Scalar for Ratio<T>
where
    T: Clone + Integer + Signed + FromPrimitive + Debug,
{
    fn from_ratio(num: i64, den: i64) -> Self {
        let num = T::from_i64(num).expect("numerator fits scalar");
        let den = T::from_i64(den).expect("denominator fits scalar");
        Ratio::new(num, den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_reduces() {
        let r: Ratio<i64> = Scalar::from_ratio(6, -4);
        assert_eq!(r, Ratio::new(-3, 2));
        let big: Ratio<i128> = Scalar::from_int(7);
        assert_eq!(big, Ratio::from_integer(7));
    }

    #[test]
    fn float_matches_rational() {
        let f: f64 = Scalar::from_ratio(-2, 5);
        assert!((f + 0.4).abs() < 1e-12);
    }
}
