//! Independent oracles shared by the integration tests. None of these call
//! into the library's own algorithms.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Dense polynomial over F_p, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fp {
    p: u64,
    c: Vec<u64>,
}

impl Fp {
    pub fn new(p: u64, c: Vec<u64>) -> Fp {
        let mut f = Fp { p, c: c.into_iter().map(|x| x % p).collect() };
        f.trim();
        f
    }

    pub fn from_ints(p: u64, c: &[i64]) -> Fp {
        Fp::new(p, c.iter().map(|x| x.rem_euclid(p as i64) as u64).collect())
    }

    fn trim(&mut self) {
        while self.c.last() == Some(&0) {
            self.c.pop();
        }
    }

    pub fn deg(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    fn inv(&self, a: u64) -> u64 {
        let mut r = 1;
        let (mut b, mut e) = (a % self.p, self.p - 2);
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % self.p;
            }
            b = b * b % self.p;
            e >>= 1;
        }
        r
    }

    pub fn sub(&self, o: &Fp) -> Fp {
        let n = self.c.len().max(o.c.len());
        let c = (0..n)
            .map(|i| {
                let a = self.c.get(i).copied().unwrap_or(0);
                let b = o.c.get(i).copied().unwrap_or(0);
                (a + self.p - b) % self.p
            })
            .collect();
        Fp::new(self.p, c)
    }

    pub fn mul(&self, o: &Fp) -> Fp {
        if self.is_zero() || o.is_zero() {
            return Fp::new(self.p, vec![]);
        }
        let mut c = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] = (c[i + j] + a * b) % self.p;
            }
        }
        Fp::new(self.p, c)
    }

    pub fn divmod(&self, d: &Fp) -> (Fp, Fp) {
        let dd = d.deg().expect("division by zero polynomial");
        let li = self.inv(d.c[dd]);
        let mut r = self.c.clone();
        let mut quo = vec![0u64; self.c.len().saturating_sub(dd).max(1)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let t = r[r.len() - 1] * li % self.p;
            quo[k] = t;
            for (j, dc) in d.c.iter().enumerate() {
                r[k + j] = (r[k + j] + self.p * self.p - t * dc % self.p) % self.p;
            }
            while r.last() == Some(&0) {
                r.pop();
            }
        }
        (Fp::new(self.p, quo), Fp::new(self.p, r))
    }

    pub fn gcd(&self, o: &Fp) -> Fp {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.divmod(&b).1;
            a = b;
            b = r;
        }
        if let Some(d) = a.deg() {
            let li = a.inv(a.c[d]);
            a = Fp::new(a.p, a.c.iter().map(|x| x * li % a.p).collect());
        }
        a
    }

    fn powmod(&self, mut e: u64, m: &Fp) -> Fp {
        let mut base = self.divmod(m).1;
        let mut acc = Fp::new(self.p, vec![1]);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).divmod(m).1;
            }
            base = base.mul(&base).divmod(m).1;
            e >>= 1;
        }
        acc
    }

    pub fn derivative(&self) -> Fp {
        let c = self.c.iter().enumerate().skip(1).map(|(i, a)| (i as u64 % self.p) * a % self.p).collect();
        Fp::new(self.p, c)
    }

    pub fn squarefree(&self) -> bool {
        self.gcd(&self.derivative()).deg() == Some(0)
    }

    /// Irreducible factor degrees of a squarefree polynomial by
    /// distinct-degree factorization, sorted descending.
    pub fn ddf(&self) -> Vec<usize> {
        let p = self.p;
        let x = Fp::new(p, vec![0, 1]);
        let mut f = self.clone();
        let mut h = x.clone();
        let mut out = Vec::new();
        let mut k = 0;
        while let Some(d) = f.deg() {
            if d == 0 {
                break;
            }
            k += 1;
            if 2 * k > d {
                out.push(d);
                break;
            }
            h = h.powmod(p, &f);
            let g = f.gcd(&h.sub(&x));
            let gd = g.deg().unwrap();
            if gd > 0 {
                out.extend(std::iter::repeat_n(k, gd / k));
                f = f.divmod(&g).0;
                h = h.divmod(&f).1;
            }
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }
}

/// Degrees of every irreducible factor of a monic integer polynomial over
/// F_p found by trial division against every monic polynomial of degree at
/// most half the degree. Exponential; small cases only.
pub fn trial_division_degrees(p: u64, coeffs: &[i64]) -> Vec<usize> {
    let mut f = Fp::from_ints(p, coeffs);
    let mut out = Vec::new();
    let mut d = 1;
    while let Some(n) = f.deg() {
        if n == 0 {
            break;
        }
        if 2 * d > n {
            out.push(n);
            break;
        }
        let mut found = false;
        for idx in 0..p.pow(d as u32) {
            let mut c: Vec<u64> = (0..d).map(|i| idx / p.pow(i as u32) % p).collect();
            c.push(1);
            let g = Fp::new(p, c);
            let (quo, r) = f.divmod(&g);
            if r.is_zero() {
                out.push(d);
                f = quo;
                found = true;
                break;
            }
        }
        if !found {
            d += 1;
        }
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

/// Every sub-multiset of `degrees` has total divisible by u.
pub fn subset_sums_divisible(degrees: &[usize], u: usize) -> bool {
    (0u32..1 << degrees.len()).all(|mask| {
        let s: usize = degrees.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, d)| d).sum();
        s % u == 0
    })
}

/// Squarefree integer with the same square class as a nonzero rational.
pub fn square_class(x: &Q) -> i64 {
    let n = (x.numer() * x.denom()).to_i64().expect("small");
    let sign = n.signum();
    let mut m = n.abs();
    let mut out = 1;
    let mut f = 2;
    while f * f <= m {
        while m % (f * f) == 0 {
            m /= f * f;
        }
        if m % f == 0 {
            out *= f;
            m /= f;
        }
        f += 1;
    }
    sign * out * m
}

/// (a, b)_p for squarefree integers by searching for a primitive solution of
/// a x² + b y² = z² modulo p³ (odd p) or 2⁶.
pub fn hilbert_brute(a: i64, b: i64, p: u64) -> i8 {
    let k = if p == 2 { 6 } else { 3 };
    let m = p.pow(k) as i64;
    let mut any_sq = vec![false; m as usize];
    let mut unit_sq = vec![false; m as usize];
    for z in 0..m {
        let r = (z * z % m) as usize;
        any_sq[r] = true;
        if z % p as i64 != 0 {
            unit_sq[r] = true;
        }
    }
    let (a, b) = (a.rem_euclid(m), b.rem_euclid(m));
    for x in 0..m {
        for y in 0..m {
            let r = ((a * (x * x % m) + b * (y * y % m)) % m) as usize;
            let xy_unit = x % p as i64 != 0 || y % p as i64 != 0;
            if (xy_unit && any_sq[r]) || unit_sq[r] {
                return 1;
            }
        }
    }
    -1
}

/// (a, b)_∞.
pub fn hilbert_real(a: &Q, b: &Q) -> i8 {
    if a.is_negative() && b.is_negative() {
        -1
    } else {
        1
    }
}

/// F_9 = F_3[i]/(i² + 1), element (x, y) for x + y i.
pub fn f9_mul(a: (u8, u8), b: (u8, u8)) -> (u8, u8) {
    let re = (a.0 * b.0 + 2 * (a.1 * b.1)) % 3;
    let im = (a.0 * b.1 + a.1 * b.0) % 3;
    (re, im)
}

/// Number of one-dimensional subspaces of F_q^n, counted as orbits of the
/// scalar action on nonzero vectors. Equals the number of cosets of K in
/// K diag(ϖ, 1, …, 1) K.
pub fn count_lines(q: u64, n: usize) -> usize {
    let elems: Vec<(u8, u8)> = if q == 9 {
        (0..9).map(|i| (i % 3, i / 3)).collect()
    } else {
        (0..q as u8).map(|i| (i, 0)).collect()
    };
    let mul = |a: (u8, u8), b: (u8, u8)| -> (u8, u8) {
        if q == 9 {
            f9_mul(a, b)
        } else {
            ((a.0 as u64 * b.0 as u64 % q) as u8, 0)
        }
    };
    let units: Vec<(u8, u8)> = elems.iter().copied().filter(|&e| e != (0, 0)).collect();
    let total = elems.len().pow(n as u32);
    let vec_of = |mut idx: usize| -> Vec<(u8, u8)> {
        (0..n)
            .map(|_| {
                let e = elems[idx % elems.len()];
                idx /= elems.len();
                e
            })
            .collect()
    };
    let mut seen = std::collections::HashSet::new();
    let mut lines = 0;
    for idx in 1..total {
        let v = vec_of(idx);
        if seen.contains(&v) {
            continue;
        }
        lines += 1;
        for &u in &units {
            seen.insert(v.iter().map(|&x| mul(u, x)).collect::<Vec<_>>());
        }
    }
    lines
}
