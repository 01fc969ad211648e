//! Scalar arithmetic modulo single-precision primes.
//!
//! "Single precision" here means a modulus below 2^32, so that the product
//! of two reduced residues fits in a `u64` before reduction.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::ToPrimitive;

/// Exclusive upper bound on every modulus handled by this crate.
pub const MODULUS_LIMIT: u64 = 1 << 32;

#[inline]
pub fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    a * b % p
}

pub fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `p` by the extended Euclidean algorithm, or `None`
/// when `gcd(a, p) != 1`.
pub fn inv_mod(a: u64, p: u64) -> Option<u64> {
    let (mut old_r, mut r) = (i128::from(a % p), i128::from(p));
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let quot = old_r / r;
        (old_r, r) = (r, old_r - quot * r);
        (old_s, s) = (s, old_s - quot * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(i128::from(p)) as u64)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Smallest prime strictly greater than `after` and below [`MODULUS_LIMIT`].
pub fn next_prime(after: u64) -> Option<u64> {
    let mut candidate = after.checked_add(1)?;
    while candidate < MODULUS_LIMIT {
        if is_prime(candidate) {
            return Some(candidate);
        }
        candidate += 1;
    }
    None
}

pub fn reduce_biguint(x: &BigUint, p: u64) -> u64 {
    (x % p).to_u64().expect("residue fits in u64")
}

/// Canonical representative in `[0, p)` of a signed integer.
pub fn reduce_bigint(x: &BigInt, p: u64) -> u64 {
    let r = reduce_biguint(x.magnitude(), p);
    match x.sign() {
        Sign::Minus if r != 0 => p - r,
        _ => r,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_round_trips() {
        for p in [3u64, 5, 101, 10007, 4294967291] {
            for a in [1u64, 2, p - 1, p / 2 + 1] {
                let inv = inv_mod(a, p).unwrap();
                assert_eq!(mul_mod(a, inv, p), 1);
            }
        }
        assert_eq!(inv_mod(0, 7), None);
        assert_eq!(inv_mod(6, 9), None);
    }

    #[test]
    fn primes() {
        assert_eq!(next_prime(10), Some(11));
        assert_eq!(next_prime(2), Some(3));
        assert_eq!(next_prime(13), Some(17));
        assert!(is_prime(4294967291));
        assert_eq!(next_prime(4294967291), None);
        let small: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn signed_reduction() {
        assert_eq!(reduce_bigint(&BigInt::from(-1), 7), 6);
        assert_eq!(reduce_bigint(&BigInt::from(-14), 7), 0);
        assert_eq!(reduce_bigint(&BigInt::from(15), 7), 1);
        assert_eq!(pow_mod(3, 4, 5), 1);
        assert_eq!(pow_mod(5, 0, 1), 0);
    }
}
