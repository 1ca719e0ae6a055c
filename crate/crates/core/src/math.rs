//! Exact integer helpers.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

/// Binomial coefficient `C(n, r)`, zero when `r < 0` or `r > n` or `n < 0`.
pub fn binom(n: i64, r: i64) -> BigUint {
    if n < 0 || r < 0 || r > n {
        return BigUint::zero();
    }
    let r = r.min(n - r);
    let mut acc = BigUint::one();
    for i in 0..r {
        acc *= BigUint::from((n - i) as u64);
        acc /= BigUint::from((i + 1) as u64);
    }
    acc
}

/// Signed difference of two naturals.
pub fn signed_diff(a: &BigUint, b: &BigUint) -> BigInt {
    BigInt::from(a.clone()) - BigInt::from(b.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pascal_rows() {
        for n in 0..20i64 {
            for r in 1..n {
                assert_eq!(binom(n, r), binom(n - 1, r - 1) + binom(n - 1, r));
            }
        }
        assert_eq!(binom(8, 4), BigUint::from(70u32));
        assert_eq!(binom(3, 5), BigUint::zero());
        assert_eq!(binom(-1, 0), BigUint::zero());
        assert_eq!(binom(0, 0), BigUint::one());
    }
}
