use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{Num, One, Signed, Zero};

/// An exact field of characteristic zero.
///
/// Elimination never divides; instead rows are rescaled through
/// [`Field::make_primitive`], which keeps entries small for types that know
/// how (integral content removal for the rationals).
pub trait Field: Clone + Debug + PartialEq + Num + Neg<Output = Self> + Send + Sync + 'static {
    /// Rescale a sparse row by a nonzero scalar so its entries stay small.
    fn make_primitive(row: &mut [(usize, Self)]) {
        let _ = row;
    }

    fn from_i64(v: i64) -> Self;
}

impl Field for BigRational {
    fn make_primitive(row: &mut [(usize, Self)]) {
        if row.is_empty() {
            return;
        }
        let mut lcm = BigInt::one();
        for (_, v) in row.iter() {
            lcm = lcm.lcm(v.denom());
        }
        let mut gcd = BigInt::zero();
        for (_, v) in row.iter() {
            let scaled = v.numer() * (&lcm / v.denom());
            gcd = gcd.gcd(&scaled);
        }
        if gcd.is_zero() {
            return;
        }
        if row[0].1.is_negative() {
            gcd = -gcd;
        }
        for (_, v) in row.iter_mut() {
            let scaled = v.numer() * (&lcm / v.denom());
            *v = BigRational::from_integer(scaled / &gcd);
        }
    }

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
}

impl Field for Ratio<i64> {
    fn make_primitive(row: &mut [(usize, Self)]) {
        if let Some((_, lead)) = row.first().cloned() {
            for (_, v) in row.iter_mut() {
                *v /= lead;
            }
        }
    }

    fn from_i64(v: i64) -> Self {
        Ratio::from_integer(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn primitive_row_is_integral_and_coprime() {
        let mut row = vec![(0, q(-2, 3)), (4, q(4, 9)), (7, q(2, 1))];
        BigRational::make_primitive(&mut row);
        let vals: Vec<_> = row.iter().map(|(_, v)| v.clone()).collect();
        assert_eq!(vals, vec![q(3, 1), q(-2, 1), q(-9, 1)]);
    }

    #[test]
    fn rationals_are_lowest_terms() {
        let x = q(6, -4);
        assert_eq!(x.numer(), &BigInt::from(-3));
        assert_eq!(x.denom(), &BigInt::from(2));
        assert_eq!(q(0, 5).denom(), &BigInt::from(1));
    }
}
