//! Small exact-arithmetic helpers shared across modules.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Binomial coefficient C(n, k) as an exact integer; 0 when k > n.
pub fn binom(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut out = BigInt::one();
    for i in 0..k {
        out *= BigInt::from(n - i);
        out = exact_div(out, &BigInt::from(i + 1));
    }
    out
}

/// `q^e` as an exact integer.
pub fn qpow(q: u64, e: usize) -> BigInt {
    BigInt::from(q).pow(e as u32)
}

/// `(-1)^s`.
pub fn sign(s: usize) -> BigInt {
    if s % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// Exact integer division; panics if the division leaves a remainder, which
/// would indicate a transcription error in a closed-form product.
pub fn exact_div(a: BigInt, b: &BigInt) -> BigInt {
    let (quot, rem) = num_integer_div_rem(a, b);
    assert!(rem.is_zero(), "inexact division: remainder {rem} by {b}");
    quot
}

fn num_integer_div_rem(a: BigInt, b: &BigInt) -> (BigInt, BigInt) {
    let quot = &a / b;
    let rem = &a - &quot * b;
    (quot, rem)
}

/// Asserts a count is nonnegative and returns it; alternating sums over the
/// subspace lattice must never go negative.
pub fn assert_nonnegative(v: BigInt, what: &str) -> BigInt {
    assert!(
        !v.is_negative(),
        "{what} evaluated to the negative value {v}"
    );
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binom(4, 2), BigInt::from(6));
        assert_eq!(binom(6, 3), BigInt::from(20));
        assert_eq!(binom(3, 5), BigInt::from(0));
        assert_eq!(binom(5, 0), BigInt::from(1));
    }

    #[test]
    #[should_panic(expected = "inexact division")]
    fn inexact_division_panics() {
        exact_div(BigInt::from(7), &BigInt::from(2));
    }
}
