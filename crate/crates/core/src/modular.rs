//! Scalar arithmetic in `Z_q`.

use crate::{Error, Result};

/// Largest modulus accepted anywhere in the crate; keeps products inside `u64`.
pub const MAX_MODULUS: u64 = 1 << 31;

pub fn check_modulus(q: u64) -> Result<()> {
    if (2..MAX_MODULUS).contains(&q) {
        Ok(())
    } else {
        Err(Error::BadModulus(q))
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p < 4 {
        return true;
    }
    if p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) && p < MAX_MODULUS {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// Smallest prime factor of `q >= 2`.
pub fn smallest_prime_factor(q: u64) -> u64 {
    let mut d = 2;
    while d * d <= q {
        if q.is_multiple_of(d) {
            return d;
        }
        d += 1;
    }
    q
}

#[inline]
pub fn add(a: u64, b: u64, q: u64) -> u64 {
    let s = a + b;
    if s >= q {
        s - q
    } else {
        s
    }
}

#[inline]
pub fn sub(a: u64, b: u64, q: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + q - b
    }
}

#[inline]
pub fn mul(a: u64, b: u64, q: u64) -> u64 {
    (a * b) % q
}

#[inline]
pub fn neg(a: u64, q: u64) -> u64 {
    if a == 0 {
        0
    } else {
        q - a
    }
}

/// Reduce a signed integer into `{0, .., q-1}`.
#[inline]
pub fn reduce_i64(v: i64, q: u64) -> u64 {
    v.rem_euclid(q as i64) as u64
}

/// Symmetric representative of `a` in `(-q/2, q/2]`.
#[inline]
pub fn symmetric(a: u64, q: u64) -> i64 {
    if a > q / 2 {
        a as i64 - q as i64
    } else {
        a as i64
    }
}

pub fn pow(mut base: u64, mut exp: u64, q: u64) -> u64 {
    let mut acc = 1 % q;
    base %= q;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul(acc, base, q);
        }
        base = mul(base, base, q);
        exp >>= 1;
    }
    acc
}

/// Multiplicative inverse modulo a prime.
#[inline]
pub fn inv(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow(a, p - 2, p)
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        let small: Vec<u64> = (0..30).filter(|&p| is_prime(p)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(is_prime(10007));
        assert!(check_prime(4).is_err());
    }

    #[test]
    fn inverses() {
        for p in [2u64, 3, 5, 7, 13, 10007] {
            for a in 1..p.min(200) {
                assert_eq!(mul(a, inv(a, p), p), 1);
            }
        }
    }

    #[test]
    fn symmetric_lift() {
        assert_eq!(symmetric(2, 3), -1);
        assert_eq!(symmetric(1, 2), 1);
        assert_eq!(symmetric(3, 4), -1);
        assert_eq!(symmetric(2, 4), 2);
        assert_eq!(smallest_prime_factor(6), 2);
        assert_eq!(smallest_prime_factor(9), 3);
        assert_eq!(smallest_prime_factor(7), 7);
    }
}
