//! Certified fixed-point enclosures of base-2 logarithms.
//!
//! An enclosure at precision `p` is a pair of integers `(lo, hi)` with
//! `lo / 2^p <= log2(q) <= hi / 2^p`. Everything is integer arithmetic: the
//! natural logarithm comes from `ln y = 2 atanh((y-1)/(y+1))` with an explicit
//! truncation bound, and `ln 2 = 2 atanh(1/3)`.

use num::bigint::{BigInt, BigUint, Sign};
use num::{Integer, One, Zero};

/// Enclosure of `atanh(num/den)` scaled by `2^p`, for `0 <= num/den <= 1/3`.
fn atanh_fixed(num: &BigUint, den: &BigUint, p: u32) -> (BigInt, BigInt) {
    if num.is_zero() {
        return (BigInt::zero(), BigInt::zero());
    }
    let guard = 2 * (32 - p.leading_zeros()) + 8;
    let q = p + guard;
    let num2 = num * num;
    let den2 = den * den;
    // pw_k ~ z^(2k+1) * 2^q, floored at every step; each step adds < 1 ulp of error
    // and shrinks earlier error by z^2 < 1.
    let mut pw: BigUint = (num << q as usize) / den;
    let mut sum = BigUint::zero();
    let mut k: u64 = 0;
    loop {
        let term = &pw / BigUint::from(2 * k + 1);
        if term.is_zero() {
            break;
        }
        sum += term;
        pw = (pw * &num2) / &den2;
        k += 1;
    }
    // Error per term is at most (k + 2) ulps; the tail is below 2 ulps since the
    // first omitted term vanished and later ones shrink by at least 1/9.
    let err = BigUint::from((k + 2) * (k + 3) + 4);
    let lo = if sum > err { &sum - &err } else { BigUint::zero() };
    let hi = &sum + &err;
    (
        BigInt::from(lo >> guard as usize),
        BigInt::from_biguint(Sign::Plus, (hi >> guard as usize) + 1u32),
    )
}

/// Enclosure of `log2(q)` for `q >= 1`, scaled by `2^p`.
pub fn log2_enclosure(q: &BigUint, p: u32) -> (BigInt, BigInt) {
    assert!(!q.is_zero(), "log2 of zero");
    let s = q.bits() - 1;
    let base = BigInt::from(s) << p as usize;
    let pow = BigUint::one() << s as usize;
    if *q == pow {
        return (base.clone(), base);
    }
    // y = q / 2^s in (1, 2); z = (y - 1)/(y + 1) = (q - 2^s)/(q + 2^s) < 1/3.
    let num = q - &pow;
    let den = q + &pow;
    let work = p + 8;
    let (ylo, yhi) = atanh_fixed(&num, &den, work);
    let (tlo, thi) = atanh_fixed(&BigUint::one(), &BigUint::from(3u32), work);
    // log2 y = atanh(z) / atanh(1/3)
    let scale = BigInt::one() << p as usize;
    let lo = (ylo * &scale).div_floor(&thi);
    let hi = (yhi * &scale).div_ceil(&tlo);
    (base.clone() + lo, base + hi)
}

/// Floor of `log2(log2(q))` for `q >= 2`, computed exactly from bit lengths.
pub fn floor_log2_log2(q: &BigUint) -> u64 {
    assert!(q.bits() >= 2, "needs q >= 2");
    // 2^(2^a) <= q  iff  q.bits() - 1 >= 2^a
    let top = q.bits() - 1;
    63 - top.leading_zeros() as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(q: u64, p: u32) {
        let (lo, hi) = log2_enclosure(&BigUint::from(q), p);
        let scale = 2f64.powi(p as i32);
        let v = (q as f64).log2();
        let lo = lo.to_string().parse::<f64>().unwrap() / scale;
        let hi = hi.to_string().parse::<f64>().unwrap() / scale;
        assert!(lo <= v + 1e-12 && v - 1e-12 <= hi, "q={q} lo={lo} v={v} hi={hi}");
        assert!(hi - lo < 1e-9, "enclosure too wide for q={q}");
    }

    #[test]
    fn encloses_known_logs() {
        for q in [1, 2, 3, 5, 7, 40, 255, 256, 257, 1_000_003, u64::MAX] {
            check(q, 48);
        }
    }

    #[test]
    fn powers_of_two_are_exact() {
        let (lo, hi) = log2_enclosure(&(BigUint::one() << 1000usize), 20);
        assert_eq!(lo, hi);
        assert_eq!(lo, BigInt::from(1000) << 20usize);
    }

    #[test]
    fn enclosure_width_shrinks() {
        let q = BigUint::from(40u32);
        let (a, b) = log2_enclosure(&q, 64);
        let (c, d) = log2_enclosure(&q, 256);
        assert!(b - a <= BigInt::from(64));
        assert!(d - c <= BigInt::from(64));
    }

    #[test]
    fn double_log_floor() {
        assert_eq!(floor_log2_log2(&BigUint::from(2u32)), 0);
        assert_eq!(floor_log2_log2(&BigUint::from(3u32)), 0);
        assert_eq!(floor_log2_log2(&BigUint::from(4u32)), 1);
        assert_eq!(floor_log2_log2(&BigUint::from(255u32)), 2);
        assert_eq!(floor_log2_log2(&BigUint::from(256u32)), 3);
        assert_eq!(floor_log2_log2(&(BigUint::one() << 1024usize)), 10);
    }
}
