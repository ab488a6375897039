//! Dense univariate polynomials over Q and F_p.
//!
//! `QPoly` stores coefficients constant term first; the vector is empty for
//! the zero polynomial and otherwise ends in a nonzero entry. `MonicPoly` is
//! the carrier for characteristic polynomials: degree at least one, leading
//! coefficient exactly one.

pub mod fp;
pub mod sturm;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::arith::{qi, Q};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct QPoly {
    coeffs: Vec<Q>,
}

impl QPoly {
    fn normalize(mut self) -> Self {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        self
    }

    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        QPoly::constant(Q::one())
    }

    pub fn x() -> Self {
        QPoly::from_coeffs(vec![Q::zero(), Q::one()])
    }

    pub fn constant(c: Q) -> Self {
        QPoly { coeffs: vec![c] }.normalize()
    }

    pub fn from_coeffs(coeffs: Vec<Q>) -> Self {
        QPoly { coeffs }.normalize()
    }

    pub fn from_ints(cs: &[i64]) -> Self {
        QPoly::from_coeffs(cs.iter().map(|&c| qi(c)).collect())
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Q {
        self.coeffs.get(i).cloned().unwrap_or_else(Q::zero)
    }

    pub fn leading(&self) -> Option<&Q> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &Q) -> Self {
        QPoly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> Self {
        QPoly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| a * qi(i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.coeffs
            .iter()
            .rev()
            .fold(Q::zero(), |acc, c| acc * x + c)
    }

    /// Scale so the leading coefficient is one. Zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => QPoly::zero(),
            Some(l) => {
                let inv = l.recip();
                self.scale(&inv)
            }
        }
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &QPoly) -> (QPoly, QPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead_inv = d.leading().unwrap().recip();
        let mut rem = self.coeffs.clone();
        let n = self.coeffs.len();
        if n <= dd {
            return (QPoly::zero(), self.clone());
        }
        let mut quo = vec![Q::zero(); n - dd];
        for i in (dd..n).rev() {
            let c = &rem[i] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                let t = &c * dj;
                rem[i - dd + j] -= t;
            }
            quo[i - dd] = c;
        }
        rem.truncate(dd);
        (QPoly::from_coeffs(quo), QPoly::from_coeffs(rem))
    }

    pub fn rem(&self, d: &QPoly) -> QPoly {
        self.div_rem(d).1
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, other: &QPoly) -> QPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// P(X + a).
    pub fn shift(&self, a: &Q) -> QPoly {
        // Horner in the ring Q[X] with X replaced by X + a.
        let lin = QPoly::from_coeffs(vec![a.clone(), Q::one()]);
        self.coeffs
            .iter()
            .rev()
            .fold(QPoly::zero(), |acc, c| &(&acc * &lin) + &QPoly::constant(c.clone()))
    }

    pub fn pow(&self, e: u32) -> QPoly {
        let mut acc = QPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// gcd(P, P') is constant.
    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => self.gcd(&self.derivative()).degree() == Some(0),
        }
    }
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        QPoly::from_coeffs((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        QPoly::from_coeffs((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![Q::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::from_coeffs(out)
    }
}

fn write_poly(f: &mut fmt::Formatter<'_>, coeffs: &[Q]) -> fmt::Result {
    if coeffs.is_empty() {
        return f.write_str("0");
    }
    let mut first = true;
    for (i, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        if first {
            if neg {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if neg { " - " } else { " + " })?;
        }
        first = false;
        let unit = mag.is_one();
        if !unit || i == 0 {
            write!(f, "{mag}")?;
        }
        match i {
            0 => {}
            1 => f.write_str("X")?,
            _ => write!(f, "X^{i}")?,
        }
    }
    Ok(())
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, &self.coeffs)
    }
}

/// Monic polynomial of positive degree with exact rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonicPoly(QPoly);

impl MonicPoly {
    /// Coefficients constant term first; the last must be exactly one.
    pub fn new(coeffs: Vec<Q>) -> Result<Self> {
        let p = QPoly::from_coeffs(coeffs);
        match (p.degree(), p.leading()) {
            (Some(d), Some(l)) if d >= 1 && l.is_one() => Ok(MonicPoly(p)),
            (Some(0), _) | (None, _) => Err(Error::pre("monic polynomial needs degree >= 1")),
            _ => Err(Error::pre("leading coefficient must be exactly 1")),
        }
    }

    pub fn from_ints(cs: &[i64]) -> Result<Self> {
        MonicPoly::new(cs.iter().map(|&c| qi(c)).collect())
    }

    /// Promote a nonzero polynomial of positive degree by dividing through
    /// by its leading coefficient.
    pub fn from_poly_normalized(p: &QPoly) -> Result<Self> {
        MonicPoly::new(p.monic().coeffs.clone())
    }

    /// Product of (X - r) over the given roots.
    pub fn from_roots(roots: &[Q]) -> Result<Self> {
        let p = roots.iter().fold(QPoly::one(), |acc, r| {
            &acc * &QPoly::from_coeffs(vec![-r.clone(), Q::one()])
        });
        MonicPoly::new(p.coeffs)
    }

    pub fn degree(&self) -> usize {
        self.0.degree().unwrap()
    }

    pub fn coeffs(&self) -> &[Q] {
        self.0.coeffs()
    }

    pub fn coeff(&self, i: usize) -> Q {
        self.0.coeff(i)
    }

    pub fn as_poly(&self) -> &QPoly {
        &self.0
    }

    pub fn constant_term(&self) -> Q {
        self.0.coeff(0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.0.is_squarefree()
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.0.eval(x)
    }

    pub fn mul(&self, other: &MonicPoly) -> MonicPoly {
        MonicPoly(&self.0 * &other.0)
    }

    pub fn shift(&self, a: &Q) -> MonicPoly {
        MonicPoly(self.0.shift(a))
    }
}

impl fmt::Display for MonicPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::q;

    #[test]
    fn division_identity() {
        let a = QPoly::from_ints(&[3, 0, -3, -1, 1]);
        let b = QPoly::from_ints(&[1, 2]);
        let (quo, rem) = a.div_rem(&b);
        assert_eq!(&(&quo * &b) + &rem, a);
        assert!(rem.degree().unwrap_or(0) < 1);
    }

    #[test]
    fn gcd_detects_repeated_root() {
        let p = QPoly::from_ints(&[1, -2, 1]);
        assert_eq!(p.gcd(&p.derivative()), QPoly::from_ints(&[-1, 1]));
        assert!(!p.is_squarefree());
        assert!(QPoly::from_ints(&[-2, 0, 1]).is_squarefree());
    }

    #[test]
    fn shift_moves_roots() {
        let p = MonicPoly::from_roots(&[qi(1), q(3, 2)]).unwrap();
        let s = p.shift(&qi(1));
        assert!(s.eval(&qi(0)).is_zero());
        assert!(s.eval(&q(1, 2)).is_zero());
    }

    #[test]
    fn monic_rejects_bad_leading() {
        assert!(MonicPoly::from_ints(&[1, 2]).is_err());
        assert!(MonicPoly::from_ints(&[5]).is_err());
        assert!(MonicPoly::from_ints(&[1, 0, 1]).is_ok());
    }

    #[test]
    fn display_is_readable() {
        let p = MonicPoly::from_ints(&[4, -2, 1]).unwrap();
        assert_eq!(p.to_string(), "X^2 - 2X + 4");
        assert_eq!(QPoly::from_coeffs(vec![q(-1, 2)]).to_string(), "-1/2");
    }
}
