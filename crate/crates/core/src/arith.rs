//! Integer helpers shared by the lattice and scaling code.

use alloc::vec::Vec;

/// Nonnegative gcd, with `gcd(0, x) = |x|`.
pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a as i64
}

/// Gcd of a family; the empty or all-zero family gives 0.
pub fn gcd_all<I: IntoIterator<Item = i64>>(values: I) -> i64 {
    values.into_iter().fold(0, gcd)
}

pub fn lcm(a: i64, b: i64) -> i64 {
    if a == 0 || b == 0 {
        return 0;
    }
    (a / gcd(a, b) * b).abs()
}

/// `a | b` with the convention that 0 divides only 0.
pub fn divides(a: i64, b: i64) -> bool {
    if a == 0 {
        b == 0
    } else {
        b % a == 0
    }
}

/// Reduce `r` modulo `n`; a zero modulus leaves `r` untouched.
pub fn reduce(r: i64, n: i64) -> i64 {
    if n == 0 {
        r
    } else {
        r.rem_euclid(n)
    }
}

/// p-adic valuation of a nonzero integer. `None` stands for ν_p(0) = ∞.
pub fn valuation(p: u64, x: i64) -> Option<u32> {
    if x == 0 {
        return None;
    }
    let mut x = x.unsigned_abs();
    let mut v = 0;
    while x % p == 0 {
        x /= p;
        v += 1;
    }
    Some(v)
}

/// Distinct prime factors in increasing order.
pub fn prime_factors(x: i64) -> Vec<u64> {
    let mut x = x.unsigned_abs();
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= x {
        if x % p == 0 {
            out.push(p);
            while x % p == 0 {
                x /= p;
            }
        }
        p += 1;
    }
    if x > 1 {
        out.push(x);
    }
    out
}

pub(crate) fn pow(p: u64, e: u32) -> i64 {
    (p as i64).pow(e)
}
