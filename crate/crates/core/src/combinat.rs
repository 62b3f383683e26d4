//! Integer and rational combinatorial helpers.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exact::{int, Rational};

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `C(n, k)`, zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

pub fn binomial_q(n: i64, k: i64) -> Rational {
    Rational::from_integer(binomial(n, k))
}

/// Generalized binomial `C(x, k) = x (x-1) ... (x-k+1) / k!` for rational `x`;
/// zero for negative `k`.
pub fn binomial_general(x: &Rational, k: i64) -> Rational {
    if k < 0 {
        return int(0);
    }
    let mut acc = int(1);
    for i in 0..k {
        acc *= x - int(i);
        acc /= int(i + 1);
    }
    acc
}

/// Rising factorial `(x)_n`.
pub fn pochhammer(x: &Rational, n: u64) -> Rational {
    let mut acc = int(1);
    for i in 0..n {
        acc *= x + int(i as i64);
    }
    acc
}

pub fn sign(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}
