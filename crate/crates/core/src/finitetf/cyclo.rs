//! Exact elements of cyclotomic fields with small integer data.
//!
//! A value is Σ_k num[k]·ζ_m^k / den with ζ_m = exp(2πi/m). The power basis
//! is redundant; equality reduces modulo the m-th cyclotomic polynomial.
//! Numerators are `i128`, which is ample for sums over groups of a few
//! hundred elements of inputs bounded by 2^62; overflow is an internal error.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_complex::Complex64;
use num_integer::Integer;

#[derive(Clone, Debug)]
pub struct Cyc {
    m: u32,
    num: Vec<i128>,
    den: i128,
}

fn overflow() -> ! {
    panic!("cyclotomic arithmetic overflow")
}

fn cyclotomic_poly(m: u32) -> Vec<i128> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Vec<i128>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&m) {
        return p.clone();
    }
    // x^m - 1 divided by Φ_d for every proper divisor d.
    let mut p = vec![0i128; m as usize + 1];
    p[0] = -1;
    p[m as usize] = 1;
    for d in (1..m).filter(|d| m % d == 0) {
        let q = cyclotomic_poly(d);
        p = exact_div(&p, &q);
    }
    cache.lock().unwrap().insert(m, p.clone());
    p
}

/// Quotient of monic integer polynomials known to divide exactly.
fn exact_div(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let mut quo = vec![0i128; a.len() - db];
    for i in (db..a.len()).rev() {
        let c = rem[i];
        quo[i - db] = c;
        for (j, &bj) in b.iter().enumerate() {
            rem[i - db + j] -= c * bj;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quo
}

fn reduce_mod(mut v: Vec<i128>, phi: &[i128]) -> Vec<i128> {
    let d = phi.len() - 1;
    for i in (d..v.len()).rev() {
        let c = v[i];
        if c != 0 {
            for (j, &pj) in phi.iter().enumerate() {
                v[i - d + j] = v[i - d + j].checked_sub(c.checked_mul(pj).unwrap_or_else(|| overflow())).unwrap_or_else(|| overflow());
            }
        }
    }
    v.truncate(d);
    v
}

impl Cyc {
    pub fn zero() -> Self {
        Cyc { m: 1, num: vec![0], den: 1 }
    }

    pub fn one() -> Self {
        Cyc::int(1)
    }

    pub fn int(n: i128) -> Self {
        Cyc { m: 1, num: vec![n], den: 1 }
    }

    pub fn rational(n: i128, d: i128) -> Self {
        assert!(d != 0, "zero denominator");
        Cyc { m: 1, num: vec![n], den: d }.normalized()
    }

    /// ζ_m^k.
    pub fn root(m: u32, k: i64) -> Self {
        assert!(m > 0);
        let mut num = vec![0i128; m as usize];
        num[k.rem_euclid(m as i64) as usize] = 1;
        Cyc { m, num, den: 1 }
    }

    /// (re + im·i) / den.
    pub fn gaussian(re: i128, im: i128, den: i128) -> Self {
        assert!(den != 0, "zero denominator");
        Cyc { m: 4, num: vec![re, im, 0, 0], den }.normalized()
    }

    pub fn order(&self) -> u32 {
        self.m
    }

    fn normalized(mut self) -> Self {
        if self.den < 0 {
            self.den = -self.den;
            self.num.iter_mut().for_each(|x| *x = -*x);
        }
        let g = self.num.iter().fold(self.den, |g, &x| g.gcd(&x));
        if g > 1 {
            self.den /= g;
            self.num.iter_mut().for_each(|x| *x /= g);
        }
        self
    }

    fn lifted(&self, m: u32) -> Vec<i128> {
        let step = (m / self.m) as usize;
        let mut out = vec![0i128; m as usize];
        for (k, &c) in self.num.iter().enumerate() {
            out[k * step] = c;
        }
        out
    }

    pub fn add(&self, o: &Cyc) -> Cyc {
        let m = self.m.lcm(&o.m);
        let l = self.den.lcm(&o.den);
        let (fa, fb) = (l / self.den, l / o.den);
        let (a, b) = (self.lifted(m), o.lifted(m));
        let num = a
            .iter()
            .zip(&b)
            .map(|(x, y)| {
                x.checked_mul(fa)
                    .and_then(|p| y.checked_mul(fb).and_then(|q| p.checked_add(q)))
                    .unwrap_or_else(|| overflow())
            })
            .collect();
        Cyc { m, num, den: l }.normalized()
    }

    pub fn neg(&self) -> Cyc {
        Cyc { m: self.m, num: self.num.iter().map(|x| -x).collect(), den: self.den }
    }

    pub fn sub(&self, o: &Cyc) -> Cyc {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Cyc) -> Cyc {
        let m = self.m.lcm(&o.m);
        let (a, b) = (self.lifted(m), o.lifted(m));
        let mu = m as usize;
        let mut num = vec![0i128; mu];
        for (i, &x) in a.iter().enumerate().filter(|(_, x)| **x != 0) {
            for (j, &y) in b.iter().enumerate().filter(|(_, y)| **y != 0) {
                let t = x.checked_mul(y).unwrap_or_else(|| overflow());
                num[(i + j) % mu] = num[(i + j) % mu].checked_add(t).unwrap_or_else(|| overflow());
            }
        }
        let den = self.den.checked_mul(o.den).unwrap_or_else(|| overflow());
        Cyc { m, num, den }.normalized()
    }

    /// self · ζ_m^k, a rotation of coefficients.
    pub fn mul_root(&self, m: u32, k: i64) -> Cyc {
        let mm = self.m.lcm(&m);
        let a = self.lifted(mm);
        let shift = (k.rem_euclid(m as i64) as usize) * (mm / m) as usize;
        let mu = mm as usize;
        let mut num = vec![0i128; mu];
        for (i, &x) in a.iter().enumerate() {
            num[(i + shift) % mu] = x;
        }
        Cyc { m: mm, num, den: self.den }
    }

    pub fn mul_int(&self, n: i128) -> Cyc {
        Cyc {
            m: self.m,
            num: self.num.iter().map(|x| x.checked_mul(n).unwrap_or_else(|| overflow())).collect(),
            den: self.den,
        }
        .normalized()
    }

    pub fn div_int(&self, n: i128) -> Cyc {
        assert!(n != 0, "division by zero");
        Cyc { m: self.m, num: self.num.clone(), den: self.den.checked_mul(n).unwrap_or_else(|| overflow()) }
            .normalized()
    }

    /// Complex conjugate: ζ^k ↦ ζ^{-k}.
    pub fn conj(&self) -> Cyc {
        let mu = self.m as usize;
        let mut num = vec![0i128; mu];
        for (k, &c) in self.num.iter().enumerate() {
            num[(mu - k) % mu] = c;
        }
        Cyc { m: self.m, num, den: self.den }
    }

    /// Coordinates in the basis 1, ζ, ..., ζ^{φ(m)-1}, with the denominator.
    pub fn canonical(&self) -> (u32, Vec<i128>, i128) {
        let r = reduce_mod(self.num.clone(), &cyclotomic_poly(self.m));
        (self.m, r, self.den)
    }

    /// True when every stored coefficient is zero; cheaper than
    /// [`Cyc::is_zero`] but blind to relations among roots of unity.
    pub fn is_zero_fast(&self) -> bool {
        self.num.iter().all(|&c| c == 0)
    }

    pub fn is_zero(&self) -> bool {
        self.canonical().1.iter().all(|&c| c == 0)
    }

    /// (numerator, denominator) if the value is rational.
    pub fn as_rational(&self) -> Option<(i128, i128)> {
        let (_, r, den) = self.canonical();
        if r.iter().skip(1).all(|&c| c == 0) {
            let n = r.first().copied().unwrap_or(0);
            let g = n.gcd(&den).max(1);
            Some((n / g, den / g))
        } else {
            None
        }
    }

    /// Evaluated from the reduced coordinates, so an exact zero gives 0.
    pub fn to_c64(&self) -> Complex64 {
        let m = self.m as f64;
        let (_, num, _) = self.canonical();
        let s: Complex64 = num
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(|(k, &c)| Complex64::from_polar(c as f64, 2.0 * std::f64::consts::PI * k as f64 / m))
            .sum();
        s / self.den as f64
    }
}

impl PartialEq for Cyc {
    fn eq(&self, o: &Cyc) -> bool {
        self.sub(o).is_zero()
    }
}

impl fmt::Display for Cyc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some((n, d)) = self.as_rational() {
            return if d == 1 { write!(f, "{n}") } else { write!(f, "{n}/{d}") };
        }
        let (m, r, den) = self.canonical();
        let terms: Vec<String> = r
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(|(k, &c)| match k {
                0 => c.to_string(),
                1 => format!("{c}*z{m}"),
                _ => format!("{c}*z{m}^{k}"),
            })
            .collect();
        let body = terms.join(" + ").replace("+ -", "- ");
        if den == 1 {
            write!(f, "{body}")
        } else {
            write!(f, "({body})/{den}")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_poly(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn roots_of_unity_relations() {
        // 1 + ζ3 + ζ3² = 0
        let s = Cyc::one().add(&Cyc::root(3, 1)).add(&Cyc::root(3, 2));
        assert!(s.is_zero());
        // i² = -1 in two presentations
        assert_eq!(Cyc::root(4, 1).mul(&Cyc::root(4, 1)), Cyc::int(-1));
        assert_eq!(Cyc::root(12, 3), Cyc::gaussian(0, 1, 1));
        assert_eq!(Cyc::root(6, 1).add(&Cyc::root(6, 5)), Cyc::one());
        assert_eq!(Cyc::root(5, 2).conj(), Cyc::root(5, 3));
    }

    #[test]
    fn rational_detection_and_display() {
        let x = Cyc::gaussian(3, 4, 6).mul(&Cyc::gaussian(3, -4, 1));
        assert_eq!(x.as_rational(), Some((25, 6)));
        assert_eq!(x.to_string(), "25/6");
        assert_eq!(Cyc::root(3, 1).as_rational(), None);
        assert!((Cyc::root(8, 1).to_c64() - Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4)).norm() < 1e-15);
    }
}
