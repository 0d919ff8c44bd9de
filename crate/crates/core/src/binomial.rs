//! Binomial coefficients with an arbitrary integer upper argument.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Falling-factorial binomial `a (a-1) ... (a-b+1) / b!`, exact for any
/// integer `a`. For negative `a` this equals `(-1)^b C(b - a - 1, b)`.
pub fn gen_binomial(a: i64, b: u32) -> BigInt {
    if b == 0 {
        return BigInt::one();
    }
    if a < 0 {
        let upper = i128::from(b) - i128::from(a) - 1;
        let magnitude = binomial_nonneg(upper as u128, b);
        return if b.is_multiple_of(2) { magnitude } else { -magnitude };
    }
    if (a as u64) < u64::from(b) {
        return BigInt::zero();
    }
    binomial_nonneg(a as u128, b)
}

fn binomial_nonneg(n: u128, b: u32) -> BigInt {
    let b = u128::from(b).min(n - u128::from(b).min(n));
    let mut acc = BigInt::one();
    for i in 0..b {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(gen_binomial(-1, 2), BigInt::from(1));
        assert_eq!(gen_binomial(-5, 2), BigInt::from(15));
        assert_eq!(gen_binomial(3, 2), BigInt::from(3));
        assert_eq!(gen_binomial(-1, 0), BigInt::from(1));
        assert_eq!(gen_binomial(2, 5), BigInt::from(0));
        assert_eq!(gen_binomial(-2, 3), BigInt::from(-4));
        assert_eq!(gen_binomial(0, 0), BigInt::from(1));
        assert_eq!(gen_binomial(0, 1), BigInt::from(0));
    }

    #[test]
    fn large_argument_is_exact() {
        // C(100, 50)
        let expected: BigInt = "100891344545564193334812497256".parse().unwrap();
        assert_eq!(gen_binomial(100, 50), expected);
    }
}
