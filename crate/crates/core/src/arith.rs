//! Integer and rational helpers shared by the local modules.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod_u64(mut b: u64, mut e: u64, m: u64) -> u64 {
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
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = x.abs_diff(y).gcd(&n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

fn factor_u64_into(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    for p in [2u64, 3, 5, 7, 11, 13] {
        if n % p == 0 {
            out.push(p);
            factor_u64_into(n / p, out);
            return;
        }
    }
    let d = pollard_rho(n);
    factor_u64_into(d, out);
    factor_u64_into(n / d, out);
}

/// Distinct prime divisors of a nonzero integer, ascending.
///
/// Integers beyond 64 bits are stripped of factors below 10^6 first; a
/// remaining cofactor wider than 64 bits is reported as a precondition error.
pub fn prime_divisors(n: &BigInt) -> Result<Vec<u64>> {
    if n.is_zero() {
        return Err(Error::pre("zero has no prime factorization"));
    }
    let mut m: BigUint = n.magnitude().clone();
    let mut out = Vec::new();
    if m.to_u64().is_none() {
        let mut p = 2u64;
        while p < 1_000_000 && m.to_u64().is_none() {
            let bp = BigUint::from(p);
            if (&m % &bp).is_zero() {
                out.push(p);
                while (&m % &bp).is_zero() {
                    m /= &bp;
                }
            }
            p += if p == 2 { 1 } else { 2 };
        }
    }
    let small = m
        .to_u64()
        .ok_or_else(|| Error::pre("integer too large to factor"))?;
    factor_u64_into(small, &mut out);
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Primes dividing numerator or denominator of a nonzero rational.
pub fn rational_prime_support(x: &Q) -> Result<Vec<u64>> {
    let mut ps = prime_divisors(x.numer())?;
    ps.extend(prime_divisors(x.denom())?);
    ps.sort_unstable();
    ps.dedup();
    Ok(ps)
}

/// (p, k) with q = p^k, or `None` if q is not a prime power.
pub fn prime_power_base(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..).take_while(|d| d * d <= q).find(|d| q % d == 0).unwrap_or(q);
    let (mut r, mut k) = (q, 0);
    while r % p == 0 {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p, k))
}

/// Integer square root if n is a perfect square.
pub fn exact_sqrt(n: u64) -> Option<u64> {
    let r = (n as f64).sqrt().round() as u64;
    (r.saturating_sub(1)..=r + 1).find(|&s| s * s == n)
}

/// v_p of a nonzero integer.
pub fn val_int(n: &BigInt, p: u64) -> u32 {
    debug_assert!(!n.is_zero());
    let bp = BigInt::from(p);
    let mut m = n.clone();
    let mut v = 0;
    loop {
        let (quo, rem) = m.div_rem(&bp);
        if !rem.is_zero() {
            return v;
        }
        m = quo;
        v += 1;
    }
}

/// v_p of a rational; `None` for zero.
pub fn val_rat(x: &Q, p: u64) -> Option<i64> {
    if x.is_zero() {
        None
    } else {
        Some(val_int(x.numer(), p) as i64 - val_int(x.denom(), p) as i64)
    }
}

/// Strip every factor of p, returning (v_p(x), x / p^v).
pub fn split_valuation(x: &Q, p: u64) -> (i64, Q) {
    let v = val_rat(x, p).expect("nonzero rational");
    (v, x / pow_q(p, v))
}

/// p^e as a rational, e possibly negative.
pub fn pow_q(p: u64, e: i64) -> Q {
    let base = BigInt::from(p).pow(e.unsigned_abs() as u32);
    if e >= 0 {
        Q::from_integer(base)
    } else {
        Q::new(BigInt::one(), base)
    }
}

pub fn big_pow(p: u64, e: u32) -> BigInt {
    BigInt::from(p).pow(e)
}

/// Least nonnegative residue.
pub fn modp(a: &BigInt, m: &BigInt) -> BigInt {
    let r = a.mod_floor(m);
    debug_assert!(r.sign() != Sign::Minus);
    r
}

/// Inverse of a modulo m, if gcd(a, m) = 1.
pub fn mod_inv(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = modp(a, m).extended_gcd(m);
    if e.gcd.is_one() {
        Some(modp(&e.x, m))
    } else {
        None
    }
}

/// Reduce a p-integral rational modulo m = p^k. `None` if the denominator
/// is divisible by p.
pub fn rat_mod(x: &Q, m: &BigInt) -> Option<BigInt> {
    let inv = mod_inv(x.denom(), m)?;
    Some(modp(&(x.numer() * inv), m))
}

/// Reduce a p-integral rational modulo a small prime p.
pub fn rat_mod_u64(x: &Q, p: u64) -> Option<u64> {
    rat_mod(x, &BigInt::from(p)).map(|r| r.to_u64().expect("residue below p"))
}

pub fn pow_mod_small(b: u64, e: u64, m: u64) -> u64 {
    pow_mod_u64(b, e, m)
}

pub fn inv_mod_small(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow_mod_u64(a, p - 2, p)
}

/// Legendre symbol (a / p) for odd prime p, in {-1, 0, 1}.
pub fn legendre(a: u64, p: u64) -> i8 {
    let a = a % p;
    if a == 0 {
        return 0;
    }
    if pow_mod_u64(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// Smallest quadratic non-residue modulo an odd prime.
pub fn least_nonresidue(p: u64) -> u64 {
    (2..p).find(|&a| legendre(a, p) == -1).expect("odd prime")
}

/// Smallest primitive root modulo an odd prime.
pub fn primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let mut fs = Vec::new();
    factor_u64_into(p - 1, &mut fs);
    fs.sort_unstable();
    fs.dedup();
    (2..p)
        .find(|&g| fs.iter().all(|&f| pow_mod_u64(g, (p - 1) / f, p) != 1))
        .expect("primitive root exists")
}

/// Discrete logarithm base a primitive root, by table walk (small p only).
pub fn discrete_log(a: u64, g: u64, p: u64) -> Option<u64> {
    let a = a % p;
    let mut x = 1 % p;
    for k in 0..p - 1 {
        if x == a {
            return Some(k);
        }
        x = mul_mod(x, g, p);
    }
    None
}

/// Sign of a rational as -1, 0, 1.
pub fn sign_q(x: &Q) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_negative() {
        -1
    } else {
        1
    }
}
