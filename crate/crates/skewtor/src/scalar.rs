//! Exact scalar arithmetic.
//!
//! Every numeric quantity in this crate is an arbitrary-precision rational.
//! `BigRational` keeps values in lowest terms with a positive denominator,
//! so equality is exact and there is no floating point anywhere.

use num_bigint::BigInt;
use num_rational::BigRational;

pub type Scalar = BigRational;

/// Integer scalar.
pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

/// Rational scalar `p/q`. Panics on `q == 0`.
pub fn rat(p: i64, q: i64) -> Scalar {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Renders a scalar as `p` or `p/q` in lowest terms.
pub fn display(s: &Scalar) -> String {
    if s.is_integer() {
        s.numer().to_string()
    } else {
        format!("{}/{}", s.numer(), s.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn lowest_terms_and_positive_denominator() {
        let s = rat(4, -6);
        assert_eq!(s, rat(-2, 3));
        assert_eq!(display(&s), "-2/3");
        assert!(rat(0, 5).is_zero());
        assert_eq!(display(&int(7)), "7");
    }
}
