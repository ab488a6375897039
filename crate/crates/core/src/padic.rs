//! Truncated p-adic numbers with exact valuations.
//!
//! A nonzero element is `p^valuation * unit` where the unit is known modulo
//! `p^precision` (relative precision). Zero is a flagged value with infinite
//! valuation. Arithmetic propagates the smaller precision and never claims
//! more digits than its inputs justify.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::{big_pow, mod_inv, modp, pow_q, rat_mod, split_valuation, Q};
use crate::error::{Error, Result};
use crate::poly::MonicPoly;

pub const DEFAULT_PRECISION: u32 = 20;

/// A p-adic valuation, +∞ only for zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinity,
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
            (Valuation::Finite(_), Valuation::Infinity) => Ordering::Less,
            (Valuation::Infinity, Valuation::Finite(_)) => Ordering::Greater,
            (Valuation::Infinity, Valuation::Infinity) => Ordering::Equal,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinity => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PAdicNumber {
    prime: u64,
    valuation: Valuation,
    unit: BigInt,
    precision: u32,
}

impl PAdicNumber {
    fn check_prime(p: u64) -> Result<()> {
        if crate::arith::is_prime(p) {
            Ok(())
        } else {
            Err(Error::pre(format!("{p} is not prime")))
        }
    }

    pub fn zero(prime: u64, precision: u32) -> Self {
        PAdicNumber {
            prime,
            valuation: Valuation::Infinity,
            unit: BigInt::zero(),
            precision,
        }
    }

    /// Embed a rational exactly: the valuation is extracted before the unit
    /// part is truncated.
    pub fn from_rational(x: &Q, prime: u64, precision: u32) -> Result<Self> {
        Self::check_prime(prime)?;
        if precision == 0 {
            return Err(Error::pre("precision must be positive"));
        }
        if x.is_zero() {
            return Ok(Self::zero(prime, precision));
        }
        let (v, u) = split_valuation(x, prime);
        let modulus = big_pow(prime, precision);
        let unit = rat_mod(&u, &modulus).expect("unit part is p-integral");
        Ok(PAdicNumber {
            prime,
            valuation: Valuation::Finite(v),
            unit,
            precision,
        })
    }

    pub fn from_integer(n: i64, prime: u64, precision: u32) -> Result<Self> {
        Self::from_rational(&Q::from_integer(n.into()), prime, precision)
    }

    /// An integer known only modulo p^abs_precision.
    pub fn from_residue(r: &BigInt, prime: u64, abs_precision: u32) -> Result<Self> {
        Self::check_prime(prime)?;
        let modulus = big_pow(prime, abs_precision);
        let r = modp(r, &modulus);
        if r.is_zero() {
            return Ok(Self::zero(prime, abs_precision.max(1)));
        }
        let v = crate::arith::val_int(&r, prime);
        let precision = abs_precision - v;
        let unit = modp(&(&r / big_pow(prime, v)), &big_pow(prime, precision));
        Ok(PAdicNumber {
            prime,
            valuation: Valuation::Finite(v as i64),
            unit,
            precision,
        })
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn valuation(&self) -> Valuation {
        self.valuation
    }

    pub fn unit(&self) -> &BigInt {
        &self.unit
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn is_zero(&self) -> bool {
        self.valuation == Valuation::Infinity
    }

    /// Exponent of the last known digit: the value is determined modulo
    /// p^(valuation + precision). `None` for zero.
    pub fn absolute_precision(&self) -> Option<i64> {
        match self.valuation {
            Valuation::Finite(v) => Some(v + self.precision as i64),
            Valuation::Infinity => None,
        }
    }

    /// The canonical rational representative p^v * unit.
    pub fn to_rational(&self) -> Q {
        match self.valuation {
            Valuation::Infinity => Q::zero(),
            Valuation::Finite(v) => pow_q(self.prime, v) * Q::from_integer(self.unit.clone()),
        }
    }

    /// Normalized absolute value, |p|_p = 1/p.
    pub fn norm(&self) -> Q {
        match self.valuation {
            Valuation::Infinity => Q::zero(),
            Valuation::Finite(v) => pow_q(self.prime, -v),
        }
    }

    fn same_prime(&self, o: &Self) -> Result<()> {
        if self.prime == o.prime {
            Ok(())
        } else {
            Err(Error::pre(format!(
                "mixing Q_{} and Q_{}",
                self.prime, o.prime
            )))
        }
    }

    pub fn neg(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let m = big_pow(self.prime, self.precision);
        PAdicNumber {
            unit: modp(&-&self.unit, &m),
            ..self.clone()
        }
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.same_prime(o)?;
        let precision = self.precision.min(o.precision);
        match (self.valuation, o.valuation) {
            (Valuation::Finite(a), Valuation::Finite(b)) => {
                let m = big_pow(self.prime, precision);
                Ok(PAdicNumber {
                    prime: self.prime,
                    valuation: Valuation::Finite(a + b),
                    unit: modp(&(&self.unit * &o.unit), &m),
                    precision,
                })
            }
            _ => Ok(Self::zero(self.prime, precision)),
        }
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.same_prime(o)?;
        let (a, b) = match (self.absolute_precision(), o.absolute_precision()) {
            (None, _) => return Ok(o.clone()),
            (_, None) => return Ok(self.clone()),
            (Some(a), Some(b)) => (a, b),
        };
        let abs = a.min(b);
        let (Valuation::Finite(va), Valuation::Finite(vb)) = (self.valuation, o.valuation) else {
            unreachable!()
        };
        let base = va.min(vb);
        // Both summands as integers scaled by p^-base, known modulo p^(abs-base).
        let digits = (abs - base) as u32;
        let m = big_pow(self.prime, digits);
        let lift = |x: &Self, v: i64| -> BigInt { &x.unit * big_pow(x.prime, (v - base) as u32) };
        let s = modp(&(lift(self, va) + lift(o, vb)), &m);
        if s.is_zero() {
            return Ok(Self::zero(self.prime, self.precision.min(o.precision)));
        }
        let shift = crate::arith::val_int(&s, self.prime);
        let precision = digits - shift;
        let unit = modp(&(&s / big_pow(self.prime, shift)), &big_pow(self.prime, precision));
        Ok(PAdicNumber {
            prime: self.prime,
            valuation: Valuation::Finite(base + shift as i64),
            unit,
            precision,
        })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn inverse(&self) -> Result<Self> {
        match self.valuation {
            Valuation::Infinity => Err(Error::NotInvertible),
            Valuation::Finite(v) => {
                let m = big_pow(self.prime, self.precision);
                Ok(PAdicNumber {
                    prime: self.prime,
                    valuation: Valuation::Finite(-v),
                    unit: mod_inv(&self.unit, &m).expect("unit is invertible"),
                    precision: self.precision,
                })
            }
        }
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        self.mul(&o.inverse()?)
    }
}

impl fmt::Display for PAdicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.valuation {
            Valuation::Infinity => write!(f, "0 (mod {}^{})", self.prime, self.precision),
            Valuation::Finite(v) => write!(
                f,
                "{p}^{v} * {u} (mod {p}^{e})",
                p = self.prime,
                u = self.unit,
                e = v + self.precision as i64
            ),
        }
    }
}

/// Normalized absolute value; 0 for zero.
pub fn padic_norm(x: &PAdicNumber) -> Q {
    x.norm()
}

/// Is a p-adic unit a square in Z_p^×?
///
/// Odd p: Euler's criterion on the residue. p = 2: unit ≡ 1 mod 8, which
/// needs at least three known digits.
pub fn is_unit_square(u: &PAdicNumber) -> Result<bool> {
    match u.valuation {
        Valuation::Finite(0) => {}
        Valuation::Finite(v) => return Err(Error::NotAUnit(v)),
        Valuation::Infinity => return Err(Error::NotAUnit(i64::MAX)),
    }
    let p = u.prime;
    if p == 2 {
        if u.precision < 3 {
            return Err(Error::pre("2-adic square test needs precision >= 3"));
        }
        Ok((&u.unit % 8u32).to_u32() == Some(1))
    } else {
        let r = (&u.unit % p).to_u64().unwrap();
        Ok(crate::arith::legendre(r, p) == 1)
    }
}

/// Is a nonzero rational a square in Q_p?
pub fn is_square_in_qp(x: &Q, p: u64) -> Result<bool> {
    if x.is_zero() {
        return Ok(true);
    }
    let (v, _) = split_valuation(x, p);
    if v.is_odd() {
        return Ok(false);
    }
    let u = PAdicNumber::from_rational(x, p, DEFAULT_PRECISION)?;
    let unit = PAdicNumber {
        valuation: Valuation::Finite(0),
        ..u
    };
    is_unit_square(&unit)
}

fn eval_mod(poly: &MonicPoly, x: &BigInt, m: &BigInt) -> Result<BigInt> {
    let mut acc = BigInt::zero();
    for c in poly.coeffs().iter().rev() {
        let c = rat_mod(c, m).ok_or_else(|| Error::pre(format!("coefficient {c} is not p-integral")))?;
        acc = modp(&(acc * x + c), m);
    }
    Ok(acc)
}

/// Lift a simple root of P modulo p to a root modulo p^N by Newton iteration.
pub fn hensel_lift(poly: &MonicPoly, r0: &BigInt, p: u64, target_precision: u32) -> Result<PAdicNumber> {
    PAdicNumber::check_prime(p)?;
    if target_precision == 0 {
        return Err(Error::pre("target precision must be positive"));
    }
    let bp = BigInt::from(p);
    if !eval_mod(poly, r0, &bp)?.is_zero() {
        return Err(Error::pre(format!("P({r0}) is not 0 mod {p}")));
    }
    let deriv = poly.as_poly().derivative();
    let deriv_mod = |x: &BigInt, m: &BigInt| -> Result<BigInt> {
        let mut acc = BigInt::zero();
        for c in deriv.coeffs().iter().rev() {
            let c = rat_mod(c, m).ok_or_else(|| Error::pre("coefficient is not p-integral"))?;
            acc = modp(&(acc * x + c), m);
        }
        Ok(acc)
    };
    if deriv_mod(r0, &bp)?.is_zero() {
        return Err(Error::SimpleRootViolated(format!("P'({r0}) = 0 mod {p}")));
    }
    let mut r = modp(r0, &bp);
    let mut k: u32 = 1;
    while k < target_precision {
        k = (2 * k).min(target_precision);
        let m = big_pow(p, k);
        let fx = eval_mod(poly, &r, &m)?;
        let dfx = deriv_mod(&r, &m)?;
        let inv = mod_inv(&dfx, &m).expect("derivative stays a unit");
        r = modp(&(&r - fx * inv), &m);
    }
    debug_assert!(eval_mod(poly, &r, &big_pow(p, target_precision))?.is_zero());
    PAdicNumber::from_residue(&r, p, target_precision)
}

impl PAdicNumber {
    /// Residue of an integral element modulo p^k.
    pub fn residue_mod(&self, k: u32) -> Result<BigInt> {
        match self.valuation {
            Valuation::Infinity => Ok(BigInt::zero()),
            Valuation::Finite(v) if v < 0 => Err(Error::pre("element is not integral")),
            Valuation::Finite(v) => {
                if (v as u64) + (self.precision as u64) < (k as u64) {
                    return Err(Error::pre("not enough precision"));
                }
                let m = big_pow(self.prime, k);
                Ok(modp(&(&self.unit * big_pow(self.prime, v as u32)), &m))
            }
        }
    }

    pub fn is_one(&self) -> bool {
        self.valuation == Valuation::Finite(0) && self.unit.is_one()
    }
}
