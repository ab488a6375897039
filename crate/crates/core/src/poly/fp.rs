//! Polynomials over a prime field F_p, p < 2^32.

use crate::arith::{inv_mod_small, rat_mod_u64};
use crate::error::{Error, Result};

use super::QPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl FpPoly {
    fn normalize(mut self) -> Self {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        self
    }

    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let coeffs = coeffs.into_iter().map(|c| c % p).collect();
        FpPoly { p, coeffs }.normalize()
    }

    pub fn zero(p: u64) -> Self {
        FpPoly { p, coeffs: vec![] }
    }

    pub fn x(p: u64) -> Self {
        FpPoly::new(p, vec![0, 1])
    }

    /// Reduce a p-integral rational polynomial.
    pub fn reduce(poly: &QPoly, p: u64) -> Result<Self> {
        let cs = poly
            .coeffs()
            .iter()
            .map(|c| {
                rat_mod_u64(c, p)
                    .ok_or_else(|| Error::pre(format!("coefficient {c} is not {p}-integral")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FpPoly::new(p, cs))
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn add(&self, o: &FpPoly) -> FpPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        FpPoly::new(self.p, (0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &FpPoly) -> FpPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        FpPoly::new(
            self.p,
            (0..n).map(|i| self.coeff(i) + self.p - o.coeff(i)).collect(),
        )
    }

    pub fn mul(&self, o: &FpPoly) -> FpPoly {
        if self.is_zero() || o.is_zero() {
            return FpPoly::zero(self.p);
        }
        let p = self.p as u128;
        let mut out = vec![0u128; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in o.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a as u128 * b as u128) % p;
            }
        }
        FpPoly::new(self.p, out.into_iter().map(|c| c as u64).collect())
    }

    pub fn div_rem(&self, d: &FpPoly) -> (FpPoly, FpPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let p = self.p;
        let inv = inv_mod_small(d.coeffs[dd], p);
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (FpPoly::zero(p), self.clone());
        }
        let mut quo = vec![0u64; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = (rem[i] as u128 * inv as u128 % p as u128) as u64;
            if c == 0 {
                continue;
            }
            for (j, &dj) in d.coeffs.iter().enumerate() {
                let t = (c as u128 * dj as u128 % p as u128) as u64;
                rem[i - dd + j] = (rem[i - dd + j] + p - t) % p;
            }
            quo[i - dd] = c;
        }
        rem.truncate(dd);
        (FpPoly::new(p, quo), FpPoly::new(p, rem))
    }

    pub fn rem(&self, d: &FpPoly) -> FpPoly {
        self.div_rem(d).1
    }

    pub fn monic(&self) -> FpPoly {
        match self.coeffs.last() {
            None => self.clone(),
            Some(&l) => {
                let inv = inv_mod_small(l, self.p);
                FpPoly::new(
                    self.p,
                    self.coeffs
                        .iter()
                        .map(|&c| (c as u128 * inv as u128 % self.p as u128) as u64)
                        .collect(),
                )
            }
        }
    }

    pub fn gcd(&self, o: &FpPoly) -> FpPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> FpPoly {
        FpPoly::new(
            self.p,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| (c as u128 * (i as u128 % self.p as u128) % self.p as u128) as u64)
                .collect(),
        )
    }

    /// Squarefree in F_p[X]: gcd with the derivative is constant and the
    /// derivative is nonzero (or the polynomial is constant).
    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => {
                let d = self.derivative();
                !d.is_zero() && self.gcd(&d).degree() == Some(0)
            }
        }
    }

    /// self^(p) modulo m, i.e. the Frobenius image of a residue class.
    fn frobenius_mod(&self, m: &FpPoly) -> FpPoly {
        let mut result = FpPoly::new(self.p, vec![1]);
        let mut base = self.rem(m);
        let mut e = self.p;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        result
    }

    /// Degrees of the irreducible factors of a squarefree polynomial, ascending,
    /// via distinct-degree factorization.
    pub fn factor_degrees(&self) -> Result<Vec<usize>> {
        if !self.is_squarefree() {
            return Err(Error::pre("distinct-degree factorization needs a squarefree input"));
        }
        let p = self.p;
        let mut f = self.monic();
        let mut out = Vec::new();
        let mut h = FpPoly::x(p).rem(&f);
        let mut i = 1;
        while let Some(df) = f.degree() {
            if df < 2 * i {
                break;
            }
            h = h.frobenius_mod(&f);
            let g = h.sub(&FpPoly::x(p)).gcd(&f);
            let dg = g.degree().unwrap();
            if dg > 0 {
                out.extend(std::iter::repeat_n(i, dg / i));
                f = f.div_rem(&g).0;
                h = h.rem(&f);
            }
            i += 1;
        }
        if let Some(df) = f.degree() {
            if df > 0 {
                out.push(df);
            }
        }
        out.sort_unstable();
        Ok(out)
    }

    /// Roots in F_p, by exhaustion.
    pub fn roots(&self) -> Vec<u64> {
        (0..self.p).filter(|&a| self.eval(a) == 0).collect()
    }

    pub fn eval(&self, x: u64) -> u64 {
        let p = self.p as u128;
        self.coeffs
            .iter()
            .rev()
            .fold(0u128, |acc, &c| (acc * x as u128 + c as u128) % p) as u64
    }
}
