use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::{Error, Result};

/// Fractional bits of the fixed-point arithmetic.
const PREC: u32 = 512;
/// Digits printed in the decimal fields of a report.
const DIGITS: usize = 40;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EntropyBound {
    /// `H(eps/2)` in nats.
    pub h: f64,
    /// `N_p H(eps/2)`.
    pub lhs: f64,
    /// `b_2 ln 2`.
    pub rhs: f64,
    pub holds: bool,
    pub h_decimal: String,
    pub lhs_decimal: String,
    pub rhs_decimal: String,
}

/// Compare `N_p H(eps/2)` with `b_2 ln 2`, where
/// `H(x) = -x ln x - (1 - x) ln(1 - x)`.
///
/// `eps` is taken as the exact binary fraction it holds, and logarithms are
/// evaluated in fixed point with 512 fractional bits.
pub fn entropy_bound(n_p: u64, b2: u64, eps: f64) -> Result<EntropyBound> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::InvalidInput(format!("eps = {eps} must lie in (0, 1)")));
    }
    let (num, shift) = dyadic(eps / 2.0);
    // x = num / 2^shift, 1 - x = (2^shift - num) / 2^shift
    let one_minus = (BigInt::one() << shift) - &num;
    let x_fixed = to_fixed(&num, shift);
    let y_fixed = to_fixed(&one_minus, shift);
    let h = -((&x_fixed * ln_dyadic(&num, shift)) >> PREC) - ((&y_fixed * ln_dyadic(&one_minus, shift)) >> PREC);
    let lhs = &h * BigInt::from(n_p);
    let rhs = ln2() * BigInt::from(b2);
    Ok(EntropyBound {
        h: to_f64(&h),
        lhs: to_f64(&lhs),
        rhs: to_f64(&rhs),
        holds: lhs < rhs,
        h_decimal: to_decimal(&h),
        lhs_decimal: to_decimal(&lhs),
        rhs_decimal: to_decimal(&rhs),
    })
}

/// Exact `(m, s)` with `v = m / 2^s`, for finite positive `v`.
fn dyadic(v: f64) -> (BigInt, u32) {
    let bits = v.to_bits();
    let exp = ((bits >> 52) & 0x7ff) as i32;
    let frac = bits & ((1u64 << 52) - 1);
    let (mant, e) = if exp == 0 { (frac, -1074) } else { (frac | (1 << 52), exp - 1075) };
    // v = mant * 2^e with e < 0 for v < 1
    let tz = mant.trailing_zeros() as i32;
    let (mant, e) = (mant >> tz, e + tz);
    debug_assert!(e <= 0);
    (BigInt::from(mant), (-e) as u32)
}

fn to_fixed(num: &BigInt, shift: u32) -> BigInt {
    if shift <= PREC {
        num << (PREC - shift)
    } else {
        num >> (shift - PREC)
    }
}

/// `ln(num / 2^shift)` in fixed point.
fn ln_dyadic(num: &BigInt, shift: u32) -> BigInt {
    // num = m 2^(bits-1) with m in [1, 2)
    let bits = num.bits() as i64;
    let k = bits - 1 - shift as i64;
    let m = to_fixed(num, (bits - 1) as u32);
    ln_unit(&m) + ln2() * BigInt::from(k)
}

/// `ln m` for fixed-point `m` in `[1, 2)`: `2 atanh((m - 1) / (m + 1))`.
fn ln_unit(m: &BigInt) -> BigInt {
    let one = BigInt::one() << PREC;
    let y = ((m - &one) << PREC) / (m + &one);
    atanh2(&y)
}

/// `2 atanh(y)` for fixed-point `|y| <= 1/3`.
fn atanh2(y: &BigInt) -> BigInt {
    let y2 = (y * y) >> PREC;
    let mut term = y.clone();
    let mut sum = BigInt::zero();
    let mut k = 1u32;
    while !term.is_zero() {
        sum += &term / BigInt::from(k);
        term = (&term * &y2) >> PREC;
        k += 2;
    }
    sum << 1
}

fn ln2() -> BigInt {
    static LN2: OnceLock<BigInt> = OnceLock::new();
    LN2.get_or_init(|| atanh2(&((BigInt::one() << PREC) / BigInt::from(3)))).clone()
}

fn to_f64(v: &BigInt) -> f64 {
    // keep 64 significant bits before the conversion
    let extra = (v.bits() as i64 - 64).max(0) as u32;
    let head = (v >> extra).to_f64().unwrap_or(f64::NAN);
    head * 2f64.powi(extra as i32 - PREC as i32)
}

fn to_decimal(v: &BigInt) -> String {
    let scaled = (v.abs() * BigInt::from(10u32).pow(DIGITS as u32)) >> PREC;
    let s = format!("{:0>width$}", scaled.to_string(), width = DIGITS + 1);
    let (int, frac) = s.split_at(s.len() - DIGITS);
    let sign = if v.is_negative() { "-" } else { "" };
    format!("{sign}{int}.{frac}")
}

#[cfg(test)]
mod tests {
    use super::*;

    use crate::verify::{same_leading_digits as same_digits, ENTROPY_ORACLE as ORACLE};

    #[test]
    fn matches_frozen_oracle() {
        for (n_p, b2, eps, h, lhs, rhs, holds) in ORACLE {
            let r = entropy_bound(n_p, b2, eps).unwrap();
            assert_eq!(r.holds, holds, "{n_p} {b2} {eps}");
            for (got, want) in [(r.h, h), (r.lhs, lhs), (r.rhs, rhs)] {
                let want: f64 = want.parse().unwrap();
                assert!((got - want).abs() <= 1e-12 * want.abs().max(1.0), "{got} vs {want}");
            }
            assert!(same_digits(&r.h_decimal, h, 22), "{} vs {h}", r.h_decimal);
            assert!(same_digits(&r.lhs_decimal, lhs, 22), "{} vs {lhs}", r.lhs_decimal);
            assert!(same_digits(&r.rhs_decimal, rhs, 22), "{} vs {rhs}", r.rhs_decimal);
        }
    }

    #[test]
    fn limits_and_errors() {
        let r = entropy_bound(36, 9, 0.01).unwrap();
        assert!((r.h - 0.0314).abs() < 1e-4 && (r.lhs - 1.13).abs() < 1e-2 && (r.rhs - 6.24).abs() < 1e-2);
        let tiny = entropy_bound(1_000_000, 1, 1e-300).unwrap();
        assert!(tiny.holds && tiny.lhs < 1e-290);
        assert!(entropy_bound(36, 9, 0.0).is_err());
        assert!(entropy_bound(36, 9, 1.0).is_err());
        assert!(entropy_bound(36, 9, f64::NAN).is_err());
    }

    #[test]
    fn fixed_point_logs() {
        assert!((to_f64(&ln2()) - std::f64::consts::LN_2).abs() < 1e-16);
        let (n, s) = dyadic(0.375);
        assert_eq!((n, s), (BigInt::from(3), 3));
        assert!((to_f64(&ln_dyadic(&BigInt::from(3), 3)) - 0.375f64.ln()).abs() < 1e-15);
        assert_eq!(to_decimal(&(BigInt::one() << (PREC - 1))), format!("0.5{}", "0".repeat(DIGITS - 1)));
    }
}
