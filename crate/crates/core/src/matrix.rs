//! Square matrices over commutative rings and their characteristic polynomials.

use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::Q;
use crate::error::{Error, Result};
use crate::poly::{MonicPoly, QPoly};

/// Minimal commutative ring interface. `zero_like` and `one_like` let
/// elements carry parameters (such as the radicand of a quadratic ring).
pub trait Ring: Clone + PartialEq + fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
}

impl Ring for Q {
    fn zero_like(&self) -> Self {
        Q::zero()
    }
    fn one_like(&self) -> Self {
        Q::one()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

/// x + y·√d in Q[√d].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quad {
    pub x: Q,
    pub y: Q,
    pub d: Q,
}

impl Quad {
    pub fn new(x: Q, y: Q, d: Q) -> Self {
        Quad { x, y, d }
    }

    pub fn rational(x: Q, d: &Q) -> Self {
        Quad { x, y: Q::zero(), d: d.clone() }
    }

    /// The image under √d ↦ -√d.
    pub fn conj(&self) -> Self {
        Quad { x: self.x.clone(), y: -&self.y, d: self.d.clone() }
    }
}

impl Ring for Quad {
    fn zero_like(&self) -> Self {
        Quad::rational(Q::zero(), &self.d)
    }
    fn one_like(&self) -> Self {
        Quad::rational(Q::one(), &self.d)
    }
    fn add(&self, o: &Self) -> Self {
        Quad::new(&self.x + &o.x, &self.y + &o.y, self.d.clone())
    }
    fn sub(&self, o: &Self) -> Self {
        Quad::new(&self.x - &o.x, &self.y - &o.y, self.d.clone())
    }
    fn mul(&self, o: &Self) -> Self {
        Quad::new(
            &self.x * &o.x + &self.d * &self.y * &o.y,
            &self.x * &o.y + &self.y * &o.x,
            self.d.clone(),
        )
    }
    fn neg(&self) -> Self {
        Quad::new(-&self.x, -&self.y, self.d.clone())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.x) && Zero::is_zero(&self.y)
    }
}

/// Dense square matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<R> {
    n: usize,
    data: Vec<R>,
}

pub type QMatrix = Matrix<Q>;

impl<R: Ring> Matrix<R> {
    pub fn from_rows(rows: Vec<Vec<R>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::pre("matrix must be at least 1x1"));
        }
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::ShapeMismatch(format!("expected {n} entries in every row")));
        }
        Ok(Matrix { n, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Matrix { n, data }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R) {
        self.data[i * self.n + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<R>> {
        self.data.chunks(self.n).map(|c| c.to_vec()).collect()
    }

    fn sample(&self) -> &R {
        &self.data[0]
    }

    pub fn identity_like(&self) -> Self {
        let (z, o) = (self.sample().zero_like(), self.sample().one_like());
        Matrix::from_fn(self.n, |i, j| if i == j { o.clone() } else { z.clone() })
    }

    pub fn add(&self, o: &Self) -> Self {
        Matrix {
            n: self.n,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn scale(&self, c: &R) -> Self {
        Matrix { n: self.n, data: self.data.iter().map(|a| a.mul(c)).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.n;
        let zero = self.sample().zero_like();
        Matrix::from_fn(n, |i, j| {
            (0..n).fold(zero.clone(), |acc, k| acc.add(&self.get(i, k).mul(o.get(k, j))))
        })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Ring::is_zero)
    }

    /// Coefficients of det(X·I - M), constant term first, via Berkowitz's
    /// division-free recurrence.
    pub fn char_poly_coeffs(&self) -> Vec<R> {
        let zero = self.sample().zero_like();
        let one = self.sample().one_like();
        // Highest degree first while building.
        let mut vect = vec![one.clone()];
        for r in 0..self.n {
            // Toeplitz column [1, -a_rr, -R C, -R M C, ..., -R M^{r-1} C]
            let mut col = Vec::with_capacity(r + 2);
            col.push(one.clone());
            col.push(self.get(r, r).neg());
            let mut v: Vec<R> = (0..r).map(|i| self.get(i, r).clone()).collect();
            for _ in 0..r {
                let rc = (0..r).fold(zero.clone(), |acc, k| acc.add(&self.get(r, k).mul(&v[k])));
                col.push(rc.neg());
                v = (0..r)
                    .map(|i| (0..r).fold(zero.clone(), |acc, k| acc.add(&self.get(i, k).mul(&v[k]))))
                    .collect();
            }
            vect = (0..r + 2)
                .map(|i| {
                    (0..=i.min(r))
                        .filter(|&j| i - j < col.len())
                        .fold(zero.clone(), |acc, j| acc.add(&col[i - j].mul(&vect[j])))
                })
                .collect();
        }
        vect.reverse();
        vect
    }

    pub fn determinant(&self) -> R {
        let c0 = self.char_poly_coeffs().swap_remove(0);
        if self.n % 2 == 0 {
            c0
        } else {
            c0.neg()
        }
    }

    /// Evaluate a polynomial with coefficients in R (constant first) at M.
    pub fn eval_poly(&self, coeffs: &[R]) -> Self {
        let mut acc = self.identity_like().scale(&self.sample().zero_like());
        for c in coeffs.iter().rev() {
            acc = acc.mul(self).add(&self.identity_like().scale(c));
        }
        acc
    }
}

impl QMatrix {
    pub fn from_int_rows(rows: &[&[i64]]) -> Result<Self> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Q::from_integer(x.into())).collect())
                .collect(),
        )
    }

    pub fn char_poly(&self) -> MonicPoly {
        MonicPoly::new(self.char_poly_coeffs()).expect("characteristic polynomial is monic")
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, |i, j| if i == j { Q::one() } else { Q::zero() })
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.n;
        let mut a = self.rows();
        let mut inv = QMatrix::identity(n).rows();
        for c in 0..n {
            let piv = (c..n).find(|&r| !Zero::is_zero(&a[r][c])).ok_or(Error::NotInvertible)?;
            a.swap(c, piv);
            inv.swap(c, piv);
            let s = a[c][c].recip();
            for j in 0..n {
                a[c][j] *= &s;
                inv[c][j] *= &s;
            }
            for r in 0..n {
                if r != c && !Zero::is_zero(&a[r][c]) {
                    let f = a[r][c].clone();
                    for j in 0..n {
                        let (t1, t2) = (&f * &a[c][j], &f * &inv[c][j]);
                        a[r][j] -= t1;
                        inv[r][j] -= t2;
                    }
                }
            }
        }
        Matrix::from_rows(inv)
    }

    pub fn eval_qpoly(&self, p: &QPoly) -> Self {
        self.eval_poly(p.coeffs())
    }
}

impl Serialize for QMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = self
            .rows()
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect())
            .collect();
        rows.serialize(s)
    }
}
