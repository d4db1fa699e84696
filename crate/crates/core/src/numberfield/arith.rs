//! Rational-integer helpers: factorization, Kronecker symbol, p-adic parts,
//! and Hensel lifting of quadratic roots.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

const TRIAL_LIMIT: u64 = 1_000_000;

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Prime factorization by trial division up to 10⁶, then a primality test
/// on the cofactor.
pub fn factor_u64(mut n: u64) -> Result<Vec<(u64, u32)>> {
    let mut out = Vec::new();
    if n == 0 {
        return Err(Error::ZeroInput);
    }
    let mut p = 2u64;
    while p <= TRIAL_LIMIT && p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        if p * p > n || is_prime(n) {
            out.push((n, 1));
        } else {
            return Err(Error::FactorizationOverflow(format!(
                "composite cofactor {n} has no factor below {TRIAL_LIMIT}"
            )));
        }
    }
    Ok(out)
}

/// Factorization of |n| for a nonzero big integer below 2^63.
pub fn factor_bigint(n: &BigInt) -> Result<Vec<(u64, u32)>> {
    if n.is_zero() {
        return Err(Error::ZeroInput);
    }
    let m = n
        .abs()
        .to_i64()
        .ok_or_else(|| Error::FactorizationOverflow(format!("{n} exceeds 2^63")))?;
    factor_u64(m as u64)
}

/// Kronecker symbol (a/n) for n ≥ 1.
pub fn kronecker(a: i64, n: u64) -> i32 {
    if n == 0 {
        return if a.abs() == 1 { 1 } else { 0 };
    }
    let mut a = a as i128;
    let mut n = n as i128;
    let mut result = 1;
    // factor out 2s from n
    while n % 2 == 0 {
        n /= 2;
        if a % 2 == 0 {
            return 0;
        }
        let r = a.rem_euclid(8);
        if r == 3 || r == 5 {
            result = -result;
        }
    }
    // Jacobi symbol (a/n), n odd
    a = a.rem_euclid(n);
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            let r = n % 8;
            if r == 3 || r == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// p-adic valuation of a nonzero integer.
pub fn v_p_int(n: &BigInt, p: u64) -> i64 {
    debug_assert!(!n.is_zero());
    let p = BigInt::from(p);
    let mut m = n.clone();
    let mut e = 0;
    loop {
        let (q, r) = m.div_rem(&p);
        if !r.is_zero() {
            return e;
        }
        m = q;
        e += 1;
    }
}

/// p-adic valuation of a rational; `None` for zero.
pub fn v_p(r: &BigRational, p: u64) -> Option<i64> {
    if r.is_zero() {
        return None;
    }
    Some(v_p_int(r.numer(), p) - v_p_int(r.denom(), p))
}

/// Inverse of a modulo m (gcd must be 1).
pub fn inv_mod(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

/// p-adic fractional part {r}_p ∈ ℤ[1/p] ∩ [0, 1) with r − {r}_p ∈ ℤ_(p).
pub fn frac_p(r: &BigRational, p: u64) -> BigRational {
    if r.is_zero() {
        return BigRational::zero();
    }
    let e = v_p_int(r.denom(), p);
    if e <= 0 {
        return BigRational::zero();
    }
    let pe = BigInt::from(p).pow(e as u32);
    let d_prime = r.denom() / &pe;
    let inv = inv_mod(&d_prime, &pe).expect("cofactor is prime to p");
    let n = (r.numer() * inv).mod_floor(&pe);
    BigRational::new(n, pe)
}

/// Fractional part in [0, 1) of a rational.
pub fn frac(r: &BigRational) -> BigRational {
    r - r.floor()
}

/// Square root of a modulo an odd prime p, if a is a residue (Tonelli–Shanks).
pub fn sqrt_mod_prime(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if p == 2 {
        return Some(a);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    let mut q = p - 1;
    let mut s = 0;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let mut z = 2;
    while pow_mod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = mul_mod(tt, tt, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}

/// Roots in [0, p) of X² − tX + n modulo a prime p, sorted ascending.
pub fn quadratic_roots_mod_p(t: i64, n: i64, p: u64) -> Vec<u64> {
    let pm = p as i128;
    let f = |x: i128| (x * x - t as i128 * x + n as i128).rem_euclid(pm);
    if p < 64 {
        return (0..p).filter(|&x| f(x as i128) == 0).collect();
    }
    let disc = (t as i128 * t as i128 - 4 * n as i128).rem_euclid(pm) as u64;
    let Some(r) = sqrt_mod_prime(disc, p) else {
        return Vec::new();
    };
    let inv2 = (p as i128 + 1) / 2;
    let t = (t as i128).rem_euclid(pm);
    let r1 = ((t + r as i128) * inv2).rem_euclid(pm) as u64;
    let r2 = ((t - r as i128) * inv2).rem_euclid(pm) as u64;
    let mut v = vec![r1, r2];
    v.sort_unstable();
    v.dedup();
    v
}

/// Lifts a simple root r0 of X² − tX + n mod p to a root modulo p^k by Newton iteration.
pub fn hensel_lift(t: i64, n: i64, r0: u64, p: u64, k: u32) -> Result<BigInt> {
    let m = BigInt::from(p).pow(k.max(1));
    let (t, n) = (BigInt::from(t), BigInt::from(n));
    let f = |x: &BigInt| (x * x - &t * x + &n).mod_floor(&m);
    let mut r = BigInt::from(r0).mod_floor(&m);
    for _ in 0..80 {
        let fr = f(&r);
        if fr.is_zero() {
            return Ok(r);
        }
        let deriv = (BigInt::from(2) * &r - &t).mod_floor(&m);
        let inv = inv_mod(&deriv, &m).ok_or(Error::HenselFailure(p))?;
        r = (&r - fr * inv).mod_floor(&m);
    }
    Err(Error::HenselFailure(p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn factor_small() {
        assert_eq!(factor_u64(360).unwrap(), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factor_u64(1).unwrap(), vec![]);
        assert_eq!(factor_u64(1_000_000_007).unwrap(), vec![(1_000_000_007, 1)]);
        let big = 1_000_000_007u64 * 998_244_353;
        assert!(factor_u64(big).is_err());
        assert!(is_prime(998_244_353));
        assert!(!is_prime(561));
    }

    #[test]
    fn kronecker_values() {
        assert_eq!(kronecker(-4, 3), -1);
        assert_eq!(kronecker(-4, 5), 1);
        assert_eq!(kronecker(-4, 2), 0);
        assert_eq!(kronecker(5, 2), -1);
        assert_eq!(kronecker(5, 11), 1);
        assert_eq!(kronecker(-20, 3), 1);
        assert_eq!(kronecker(-20, 7), 1);
        assert_eq!(kronecker(-20, 11), -1);
        assert_eq!(kronecker(17, 2), 1);
    }

    #[test]
    fn p_adic_fractional_parts() {
        assert_eq!(frac_p(&q(1, 6), 2), q(1, 2));
        assert_eq!(frac_p(&q(1, 6), 3), q(2, 3));
        assert_eq!(frac_p(&q(1, 3), 3), q(1, 3));
        assert_eq!(frac_p(&q(5, 7), 3), q(0, 1));
    }

    #[test]
    fn hensel_lifts_sqrt_minus_one() {
        // ω = i in Q(i): X² + 1, split at 5
        let roots = quadratic_roots_mod_p(0, 1, 5);
        assert_eq!(roots, vec![2, 3]);
        let r = hensel_lift(0, 1, 2, 5, 6).unwrap();
        let m = BigInt::from(5).pow(6u32);
        assert!(((&r * &r + BigInt::from(1)) % &m).is_zero());
    }

    proptest! {
        #[test]
        fn factorization_multiplies_back(n in 1u64..5_000_000) {
            let f = factor_u64(n).unwrap();
            let prod: u64 = f.iter().map(|&(p, e)| p.pow(e)).product();
            prop_assert_eq!(prod, n);
            for (p, _) in f { prop_assert!(is_prime(p)); }
        }

        #[test]
        fn frac_p_sums_to_integer(n in -1000i64..1000, d in 1i64..1000) {
            // r − Σ_p {r}_p is an integer
            let r = q(n, d);
            let mut acc = r.clone();
            for (p, _) in factor_u64(d as u64).unwrap() {
                acc -= frac_p(&r, p);
            }
            prop_assert!(acc.is_integer());
        }

        #[test]
        fn tonelli_shanks(p_idx in 0usize..6, a in 1u64..10_000) {
            let p = [101u64, 103, 7919, 65537, 1_000_003, 998_244_353][p_idx];
            if let Some(r) = sqrt_mod_prime(a, p) {
                prop_assert_eq!(mul_mod(r, r, p), a % p);
            } else {
                prop_assert_eq!(pow_mod(a % p, (p - 1) / 2, p), p - 1);
            }
        }
    }
}
