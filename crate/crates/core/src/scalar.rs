//! Scalar abstraction for the LP core.
//!
//! The LP core needs an ordered field with exact arithmetic that exposes
//! its elements as fractions over an integer ring, so the simplex tableau
//! can run fraction-free. `Ord` is part of the bound so IEEE floats cannot
//! be plugged in.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{FromPrimitive, Num, NumAssign, One, Signed, Zero};

/// An ordered field with exact arithmetic, presented as fractions over an
/// integer ring.
///
/// The by-reference hooks exist because elimination loops are dominated
/// by `x -= a * b`; implementations backed by heap integers should avoid
/// the clones the defaults perform. The simplex tableau works on
/// [`ExactField::Int`] directly and never touches fractions while pivoting.
pub trait ExactField: Num + Signed + Clone + Ord + Debug + Display + FromPrimitive {
    type Int: ExactInt;

    /// Lift a (small) integer into the field.
    fn from_int(value: i64) -> Self {
        Self::from_i64(value).expect("every exact field contains the integers")
    }

    /// `self -= a * b`
    fn sub_mul_assign(&mut self, a: &Self, b: &Self) {
        *self = self.clone() - a.clone() * b.clone();
    }

    /// `self /= d`
    fn div_assign_ref(&mut self, d: &Self) {
        *self = self.clone() / d.clone();
    }

    fn div_ref(&self, d: &Self) -> Self {
        self.clone() / d.clone()
    }

    /// Numerator and (positive) denominator.
    fn to_parts(&self) -> (Self::Int, Self::Int);

    /// `numer / denom`; `denom` must be nonzero.
    fn from_parts(numer: Self::Int, denom: Self::Int) -> Self;
}

/// Integer ring underneath an [`ExactField`], with the fused operations
/// fraction-free elimination needs.
pub trait ExactInt: Integer + Signed + Clone + Debug + Display + Send + Sync {
    /// `(self * p - f * a) / d`, where the division is known to be exact.
    fn cross_div(&self, p: &Self, f: &Self, a: &Self, d: &Self) -> Self;

    /// `self * p / d`, where the division is known to be exact.
    fn scale_div(&self, p: &Self, d: &Self) -> Self;

    fn mul_ref(&self, other: &Self) -> Self;
}

impl ExactInt for BigInt {
    fn cross_div(&self, p: &Self, f: &Self, a: &Self, d: &Self) -> Self {
        let mut v = self * p;
        v -= f * a;
        if d.is_one() {
            v
        } else {
            v / d
        }
    }

    fn scale_div(&self, p: &Self, d: &Self) -> Self {
        let v = self * p;
        if d.is_one() {
            v
        } else {
            v / d
        }
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
}

macro_rules! machine_int {
    ($($t:ty),*) => {$(
        impl ExactInt for $t {
            fn cross_div(&self, p: &Self, f: &Self, a: &Self, d: &Self) -> Self {
                (self * p - f * a) / d
            }

            fn scale_div(&self, p: &Self, d: &Self) -> Self {
                self * p / d
            }

            fn mul_ref(&self, other: &Self) -> Self {
                self * other
            }
        }
    )*};
}

machine_int!(i64, i128);

impl<T> ExactField for Ratio<T>
where
    T: ExactInt + NumAssign + FromPrimitive,
    Ratio<T>: FromPrimitive,
{
    type Int = T;

    fn sub_mul_assign(&mut self, a: &Self, b: &Self) {
        *self -= &(a * b);
    }

    fn div_assign_ref(&mut self, d: &Self) {
        *self /= d;
    }

    fn div_ref(&self, d: &Self) -> Self {
        self / d
    }

    fn to_parts(&self) -> (T, T) {
        (self.numer().clone(), self.denom().clone())
    }

    fn from_parts(numer: T, denom: T) -> Self {
        Ratio::new(numer, denom)
    }
}

/// Lift a non-negative integer into a big rational.
pub fn rational_from_u64(value: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(value))
}

/// `p/q` form, or just `p` for integers.
pub fn format_exact(value: &BigRational) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Decimal rendering with a fixed number of places, rounded half away from zero.
pub fn format_decimal(value: &BigRational, places: u32) -> String {
    let scale = BigInt::from(10u32).pow(places);
    let negative = value.is_negative();
    let magnitude = value.abs();
    let two = BigInt::from(2);
    // round(|v| * 10^places) = floor((2 * n * scale + d) / (2 * d))
    let scaled =
        (&two * magnitude.numer() * &scale + magnitude.denom()) / (&two * magnitude.denom());
    let (whole, frac) = scaled.div_rem(&scale);
    let sign = if negative && !scaled.is_zero() { "-" } else { "" };
    if places == 0 {
        return format!("{sign}{whole}");
    }
    let frac = frac.to_string();
    let pad = "0".repeat(places as usize - frac.len());
    format!("{sign}{whole}.{pad}{frac}")
}

/// Smallest integer not below `value`.
pub fn ceil_to_u64(value: &BigRational) -> Option<u64> {
    use num_traits::ToPrimitive;
    value.ceil().to_integer().to_u64()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn decimal_rounding() {
        assert_eq!(format_decimal(&q(2, 1), 6), "2.000000");
        assert_eq!(format_decimal(&q(1, 3), 6), "0.333333");
        assert_eq!(format_decimal(&q(2, 3), 6), "0.666667");
        assert_eq!(format_decimal(&q(-2, 3), 6), "-0.666667");
        assert_eq!(format_decimal(&q(1, 2_000_000), 6), "0.000001");
        assert_eq!(format_decimal(&q(-1, 4_000_000), 6), "0.000000");
        assert_eq!(format_decimal(&q(7, 2), 0), "4");
    }

    #[test]
    fn exact_form() {
        assert_eq!(format_exact(&q(6, 4)), "3/2");
        assert_eq!(format_exact(&q(-4, 2)), "-2");
        assert_eq!(ceil_to_u64(&q(5, 2)), Some(3));
    }
}
