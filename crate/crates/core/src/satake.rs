//! Unramified representations of GL_n over a local field with residue
//! field of size q, through their Satake parameters, and the spherical
//! Hecke algebra as symmetric Laurent polynomials.
//!
//! A parameter is an unordered n-tuple of nonzero complex numbers
//! x_i = q^{z_i}. A Hecke element is a polynomial in e_1, ..., e_{n-1},
//! e_n^{±1}, where e_k is the k-th elementary symmetric function of the
//! x_i; its trace on a representation is its value at the parameter.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::{Complex, Complex64};
use num_traits::{Num, One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Serialize, Serializer};

use crate::arith::{exact_sqrt, prime_power_base, Q};
use crate::error::{Error, Result};

/// Tolerance on complex comparisons.
pub const EPS: f64 = 1e-9;

pub type CQ = Complex<Q>;

fn close(a: Complex64, b: Complex64, eps: f64) -> bool {
    (a - b).norm() <= eps * 1f64.max(a.norm()).max(b.norm())
}

fn to_c64(z: &CQ) -> Complex64 {
    use num_traits::ToPrimitive;
    Complex64::new(z.re.to_f64().unwrap_or(f64::NAN), z.im.to_f64().unwrap_or(f64::NAN))
}

fn check_q(q: u64) -> Result<()> {
    prime_power_base(q)
        .map(|_| ())
        .ok_or_else(|| Error::pre(format!("residue field size {q} is not a prime power")))
}

/// e_0, ..., e_n of the given values.
fn elementary<T: Clone + Num>(xs: &[T]) -> Vec<T> {
    let mut e = vec![T::zero(); xs.len() + 1];
    e[0] = T::one();
    for (i, x) in xs.iter().enumerate() {
        for k in (1..=i + 1).rev() {
            e[k] = e[k].clone() + e[k - 1].clone() * x.clone();
        }
    }
    e
}

fn ipow<T: Clone + Num>(x: &T, e: i64) -> T {
    let base = if e < 0 { T::one() / x.clone() } else { x.clone() };
    (0..e.unsigned_abs()).fold(T::one(), |acc, _| acc * base.clone())
}

/// Satake parameter of an unramified representation of GL_n.
#[derive(Clone, Debug)]
pub struct SatakeParams {
    q: u64,
    xs: Vec<Complex64>,
    exact: Option<Vec<CQ>>,
}

impl SatakeParams {
    pub fn new(q: u64, xs: Vec<Complex64>) -> Result<Self> {
        check_q(q)?;
        if xs.is_empty() {
            return Err(Error::pre("rank must be at least 1"));
        }
        if xs.iter().any(|x| x.norm() == 0.0 || !x.re.is_finite() || !x.im.is_finite()) {
            return Err(Error::pre("Satake parameters must be finite and nonzero"));
        }
        Ok(SatakeParams { q, xs, exact: None })
    }

    pub fn from_exact(q: u64, xs: Vec<CQ>) -> Result<Self> {
        if xs.iter().any(Zero::is_zero) {
            return Err(Error::pre("Satake parameters must be nonzero"));
        }
        let mut p = SatakeParams::new(q, xs.iter().map(to_c64).collect())?;
        p.exact = Some(xs);
        Ok(p)
    }

    /// x_i = q^{z_i}.
    pub fn from_exponents(q: u64, zs: &[Complex64]) -> Result<Self> {
        let lq = (q as f64).ln();
        SatakeParams::new(q, zs.iter().map(|z| (z * lq).exp()).collect())
    }

    /// The trivial representation: x_i = q^{(n+1)/2 - i}.
    pub fn trivial(n: usize, q: u64) -> Result<Self> {
        check_q(q)?;
        if n == 0 {
            return Err(Error::pre("rank must be at least 1"));
        }
        if n % 2 == 1 {
            let xs = (1..=n as i64)
                .map(|i| {
                    let e = (n as i64 + 1) / 2 - i;
                    CQ::new(ipow(&Q::from_integer(q.into()), e), Q::zero())
                })
                .collect();
            return SatakeParams::from_exact(q, xs);
        }
        let zs: Vec<Complex64> = (1..=n)
            .map(|i| Complex64::new((n as f64 + 1.0) / 2.0 - i as f64, 0.0))
            .collect();
        SatakeParams::from_exponents(q, &zs)
    }

    pub fn rank(&self) -> usize {
        self.xs.len()
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn xs(&self) -> &[Complex64] {
        &self.xs
    }

    pub fn exact(&self) -> Option<&[CQ]> {
        self.exact.as_deref()
    }

    /// Multiset equality, exact when both sides are exact.
    pub fn same_class(&self, other: &SatakeParams) -> bool {
        if self.q != other.q || self.rank() != other.rank() {
            return false;
        }
        if let (Some(a), Some(b)) = (&self.exact, &other.exact) {
            let mut rest = b.clone();
            return a.iter().all(|x| match rest.iter().position(|y| y == x) {
                Some(i) => {
                    rest.swap_remove(i);
                    true
                }
                None => false,
            });
        }
        multiset_close(&self.xs, &other.xs)
    }
}

fn multiset_close(a: &[Complex64], b: &[Complex64]) -> bool {
    let mut used = vec![false; b.len()];
    a.len() == b.len()
        && a.iter().all(|x| {
            let hit = (0..b.len()).find(|&i| !used[i] && close(*x, b[i], EPS));
            hit.map(|i| used[i] = true).is_some()
        })
}

/// |log_q |x_i|| ≤ n/2 for all i, and the multiset of log_q |x_i| is
/// symmetric about zero.
pub fn in_w(p: &SatakeParams) -> bool {
    let n = p.rank() as f64;
    let lq = (p.q as f64).ln();
    let mut logs: Vec<f64> = p.xs.iter().map(|x| x.norm().ln() / lq).collect();
    if logs.iter().any(|l| l.abs() > n / 2.0 + EPS) {
        return false;
    }
    logs.sort_by(f64::total_cmp);
    logs.iter().zip(logs.iter().rev()).all(|(a, b)| (a + b).abs() <= EPS * 1f64.max(a.abs()))
}

/// The multiset {x_i} equals {1/conj(x_i)}.
pub fn is_hermitian(p: &SatakeParams) -> bool {
    if let Some(ex) = &p.exact {
        let dual: Vec<CQ> = ex.iter().map(|x| CQ::one() / x.conj()).collect();
        let other = SatakeParams { q: p.q, xs: p.xs.clone(), exact: Some(dual) };
        return p.same_class(&other);
    }
    let dual: Vec<Complex64> = p.xs.iter().map(|x| 1.0 / x.conj()).collect();
    multiset_close(&p.xs, &dual)
}

/// A coefficient with an optional exact value.
#[derive(Clone, Debug, PartialEq)]
pub struct Coeff {
    pub approx: Complex64,
    pub exact: Option<CQ>,
}

impl Coeff {
    pub fn exact(z: CQ) -> Self {
        Coeff { approx: to_c64(&z), exact: Some(z) }
    }

    pub fn approx(z: Complex64) -> Self {
        Coeff { approx: z, exact: None }
    }

    fn add(&self, o: &Coeff) -> Coeff {
        Coeff {
            approx: self.approx + o.approx,
            exact: match (&self.exact, &o.exact) {
                (Some(a), Some(b)) => Some(a + b),
                _ => None,
            },
        }
    }

    fn mul(&self, o: &Coeff) -> Coeff {
        Coeff {
            approx: self.approx * o.approx,
            exact: match (&self.exact, &o.exact) {
                (Some(a), Some(b)) => Some(a * b),
                _ => None,
            },
        }
    }

    fn conj(&self) -> Coeff {
        Coeff { approx: self.approx.conj(), exact: self.exact.as_ref().map(|z| z.conj()) }
    }

    fn is_zero(&self) -> bool {
        match &self.exact {
            Some(z) => z.is_zero(),
            None => self.approx == Complex64::zero(),
        }
    }
}

/// Exponent vector (a_1, ..., a_n) of e_1^{a_1} ... e_n^{a_n}; only a_n may
/// be negative.
type Monomial = Vec<i64>;

/// Element of the spherical Hecke algebra of GL_n with residue field size q.
#[derive(Clone, Debug, PartialEq)]
pub struct HeckeElement {
    n: usize,
    q: u64,
    terms: BTreeMap<Monomial, Coeff>,
}

impl HeckeElement {
    pub fn zero(n: usize, q: u64) -> Self {
        HeckeElement { n, q, terms: BTreeMap::new() }
    }

    /// The unit 1_K.
    pub fn unit(n: usize, q: u64) -> Self {
        HeckeElement::constant_exact(n, q, CQ::one())
    }

    pub fn constant(n: usize, q: u64, c: Complex64) -> Self {
        HeckeElement::from_term(n, q, vec![0; n], Coeff::approx(c))
    }

    pub fn constant_exact(n: usize, q: u64, c: CQ) -> Self {
        HeckeElement::from_term(n, q, vec![0; n], Coeff::exact(c))
    }

    fn from_term(n: usize, q: u64, m: Monomial, c: Coeff) -> Self {
        let mut h = HeckeElement::zero(n, q);
        if !c.is_zero() {
            h.terms.insert(m, c);
        }
        h
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[i64], &Coeff)> {
        self.terms.iter().map(|(m, c)| (m.as_slice(), c))
    }

    pub fn is_exact(&self) -> bool {
        self.terms.values().all(|c| c.exact.is_some())
    }

    fn check_same(&self, o: &HeckeElement) -> Result<()> {
        if self.n != o.n || self.q != o.q {
            return Err(Error::ShapeMismatch(format!(
                "Hecke algebras differ: (n={}, q={}) vs (n={}, q={})",
                self.n, self.q, o.n, o.q
            )));
        }
        Ok(())
    }

    pub fn add(&self, o: &HeckeElement) -> Result<HeckeElement> {
        self.check_same(o)?;
        let mut out = self.clone();
        for (m, c) in &o.terms {
            let sum = match out.terms.get(m) {
                Some(a) => a.add(c),
                None => c.clone(),
            };
            if sum.is_zero() {
                out.terms.remove(m);
            } else {
                out.terms.insert(m.clone(), sum);
            }
        }
        Ok(out)
    }

    pub fn mul(&self, o: &HeckeElement) -> Result<HeckeElement> {
        self.check_same(o)?;
        let mut out = HeckeElement::zero(self.n, self.q);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let m: Monomial = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                let t = HeckeElement::from_term(self.n, self.q, m, c1.mul(c2));
                out = out.add(&t)?;
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: Complex64) -> HeckeElement {
        self.scale_coeff(&Coeff::approx(c))
    }

    pub fn scale_exact(&self, c: CQ) -> HeckeElement {
        self.scale_coeff(&Coeff::exact(c))
    }

    fn scale_coeff(&self, c: &Coeff) -> HeckeElement {
        let terms = self
            .terms
            .iter()
            .map(|(m, a)| (m.clone(), a.mul(c)))
            .filter(|(_, a)| !a.is_zero())
            .collect();
        HeckeElement { n: self.n, q: self.q, terms }
    }

    pub fn sub(&self, o: &HeckeElement) -> Result<HeckeElement> {
        self.add(&o.scale_exact(-CQ::one()))
    }

    pub fn pow(&self, e: u32) -> HeckeElement {
        (0..e).fold(HeckeElement::unit(self.n, self.q), |acc, _| acc.mul(self).expect("same algebra"))
    }

    /// f ↦ f*: x_i ↦ 1/x_i composed with complex conjugation of the
    /// coefficients. Uses e_k(1/x) = e_{n-k}(x) / e_n(x).
    pub fn involution(&self) -> HeckeElement {
        let n = self.n;
        let mut out = HeckeElement::zero(n, self.q);
        for (m, c) in &self.terms {
            let mut exps = vec![0i64; n];
            for k in 1..n {
                exps[n - k - 1] += m[k - 1];
                exps[n - 1] -= m[k - 1];
            }
            exps[n - 1] -= m[n - 1];
            let t = HeckeElement::from_term(n, self.q, exps, c.conj());
            out = out.add(&t).expect("same algebra");
        }
        out
    }

    fn eval_generic<T: Clone + Num>(&self, e: &[T], coeff: impl Fn(&Coeff) -> T) -> T {
        self.terms.iter().fold(T::zero(), |acc, (m, c)| {
            let mono = m
                .iter()
                .enumerate()
                .fold(T::one(), |acc, (k, &a)| acc * ipow(&e[k + 1], a));
            acc + coeff(c) * mono
        })
    }
}

impl fmt::Display for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mono: Vec<String> = m
                    .iter()
                    .enumerate()
                    .filter(|(_, &a)| a != 0)
                    .map(|(k, &a)| if a == 1 { format!("e{}", k + 1) } else { format!("e{}^{a}", k + 1) })
                    .collect();
                let coeff = match &c.exact {
                    Some(z) if z.im.is_zero() => z.re.to_string(),
                    _ => format!("({})", c.approx),
                };
                if mono.is_empty() {
                    coeff
                } else {
                    format!("{coeff}*{}", mono.join("*"))
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl Serialize for HeckeElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct Terms<'a>(&'a BTreeMap<Monomial, Coeff>);
        impl Serialize for Terms<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let mut seq = s.serialize_seq(Some(self.0.len()))?;
                for (m, c) in self.0 {
                    seq.serialize_element(&serde_json::json!({
                        "exponents": m,
                        "coefficient": crate::wire::complex_json(c.approx),
                    }))?;
                }
                seq.end()
            }
        }
        let mut map = s.serialize_map(Some(3))?;
        map.serialize_entry("n", &self.n)?;
        map.serialize_entry("q", &self.q)?;
        map.serialize_entry("terms", &Terms(&self.terms))?;
        map.end()
    }
}

/// q^{k(n-k)/2} e_k, the characteristic function of K diag(ϖ,..,ϖ,1,..,1) K
/// with k entries ϖ.
pub fn generator(n: usize, q: u64, k: usize) -> Result<HeckeElement> {
    if n == 0 || k > n {
        return Err(Error::RankRange { n, k });
    }
    check_q(q)?;
    let mut m = vec![0i64; n];
    if k > 0 {
        m[k - 1] = 1;
    }
    let twice = (k * (n - k)) as u32;
    let coeff = if twice % 2 == 0 {
        Coeff::exact(CQ::new(Q::from_integer(q.pow(twice / 2).into()), Q::zero()))
    } else if let Some(r) = exact_sqrt(q) {
        Coeff::exact(CQ::new(Q::from_integer(r.pow(twice).into()), Q::zero()))
    } else {
        Coeff::approx(Complex64::new((q as f64).powf(twice as f64 / 2.0), 0.0))
    };
    Ok(HeckeElement::from_term(n, q, m, coeff))
}

/// T_n^{-1}, the inverse of the central generator.
pub fn central_inverse(n: usize, q: u64) -> Result<HeckeElement> {
    check_q(q)?;
    if n == 0 {
        return Err(Error::RankRange { n, k: 0 });
    }
    let mut m = vec![0i64; n];
    m[n - 1] = -1;
    Ok(HeckeElement::from_term(n, q, m, Coeff::exact(CQ::one())))
}

fn check_match(p: &SatakeParams, f: &HeckeElement) -> Result<()> {
    if p.rank() != f.n || p.q != f.q {
        return Err(Error::ShapeMismatch(format!(
            "parameter for (n={}, q={}) against Hecke element for (n={}, q={})",
            p.rank(),
            p.q,
            f.n,
            f.q
        )));
    }
    Ok(())
}

/// tr π(f): the value of f at the Satake parameter of π.
pub fn trace_unramified(p: &SatakeParams, f: &HeckeElement) -> Result<Complex64> {
    check_match(p, f)?;
    let e = elementary(&p.xs);
    Ok(f.eval_generic(&e, |c| c.approx))
}

/// Exact trace when both the parameter and every coefficient are exact.
pub fn trace_unramified_exact(p: &SatakeParams, f: &HeckeElement) -> Result<Option<CQ>> {
    check_match(p, f)?;
    let (Some(xs), true) = (&p.exact, f.is_exact()) else {
        return Ok(None);
    };
    let e = elementary(xs);
    Ok(Some(f.eval_generic(&e, |c| c.exact.clone().expect("checked exact"))))
}

/// A generator T_k whose traces on p1 and p2 differ by more than EPS.
pub fn separate_points(p1: &SatakeParams, p2: &SatakeParams) -> Result<HeckeElement> {
    if p1.rank() != p2.rank() || p1.q != p2.q {
        return Err(Error::ShapeMismatch("parameters of different groups".into()));
    }
    let (n, q) = (p1.rank(), p1.q);
    for k in 1..=n {
        let g = generator(n, q, k)?;
        if !close(trace_unramified(p1, &g)?, trace_unramified(p2, &g)?, EPS) {
            return Ok(g);
        }
    }
    Err(Error::NotSeparable)
}

/// A place of a family: a label with the group data (n, q).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlaceSpec {
    pub label: String,
    pub n: usize,
    pub q: u64,
}

/// Finitely many representations ⊗_v π_{j,v} with coefficients c_j.
#[derive(Clone, Debug)]
pub struct PlacedFamily {
    places: Vec<PlaceSpec>,
    reps: Vec<Vec<SatakeParams>>,
    coefficients: Vec<Complex64>,
}

impl PlacedFamily {
    pub fn new(places: Vec<PlaceSpec>, reps: Vec<Vec<SatakeParams>>, coefficients: Vec<Complex64>) -> Result<Self> {
        if reps.len() != coefficients.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} representations but {} coefficients",
                reps.len(),
                coefficients.len()
            )));
        }
        let mut labels: Vec<&str> = places.iter().map(|p| p.label.as_str()).collect();
        labels.sort_unstable();
        if labels.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::pre("place labels must be distinct"));
        }
        for (j, rep) in reps.iter().enumerate() {
            if rep.len() != places.len() {
                return Err(Error::ShapeMismatch(format!("representation {j} has {} components", rep.len())));
            }
            for (pl, p) in places.iter().zip(rep) {
                if p.rank() != pl.n || p.q != pl.q {
                    return Err(Error::ShapeMismatch(format!(
                        "representation {j} at {} does not match (n={}, q={})",
                        pl.label, pl.n, pl.q
                    )));
                }
            }
        }
        for a in 0..reps.len() {
            for b in a + 1..reps.len() {
                if reps[a].iter().zip(&reps[b]).all(|(x, y)| x.same_class(y)) {
                    return Err(Error::pre(format!("representations {a} and {b} coincide at every place")));
                }
            }
        }
        Ok(PlacedFamily { places, reps, coefficients })
    }

    pub fn places(&self) -> &[PlaceSpec] {
        &self.places
    }

    pub fn reps(&self) -> &[Vec<SatakeParams>] {
        &self.reps
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    /// Π_v tr π_{j,v}(f_v) for each j.
    pub fn traces(&self, factors: &[HeckeElement]) -> Result<Vec<Complex64>> {
        self.reps
            .iter()
            .map(|rep| {
                rep.iter()
                    .zip(factors)
                    .try_fold(Complex64::one(), |acc, (p, f)| Ok(acc * trace_unramified(p, f)?))
            })
            .collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    /// Index with the largest |c_u|.
    pub u: usize,
    /// One Hecke element per place.
    pub factors: Vec<HeckeElement>,
    #[serde(serialize_with = "crate::wire::ser_complex_vec")]
    pub traces: Vec<Complex64>,
    #[serde(serialize_with = "crate::wire::ser_complex")]
    pub sum: Complex64,
    pub delta: f64,
    pub attempts: usize,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum WitnessResult {
    CertifiedZero,
    Witness(Witness),
}

const WITNESS_SEED: u64 = 0x5a7a_6b3e;
const WITNESS_BUDGET: usize = 200;

/// f_v with trace 1 on the class `target` and 0 on every class in `others`,
/// as a polynomial in a separating element h.
fn interpolate(h: &HeckeElement, target: Complex64, others: &[Complex64]) -> Result<HeckeElement> {
    let (n, q) = (h.n, h.q);
    let mut f = HeckeElement::unit(n, q);
    let mut nodes: Vec<Complex64> = Vec::new();
    for &w in others {
        if !nodes.iter().any(|&x| close(x, w, EPS)) {
            nodes.push(w);
        }
    }
    for w in nodes {
        let lin = h.sub(&HeckeElement::constant(n, q, w))?.scale(1.0 / (target - w));
        f = f.mul(&lin)?;
    }
    Ok(f)
}

/// The smallest gap between the value at the target class and the values at
/// the other classes, relative to the largest value.
fn separation(target: Complex64, others: &[Complex64]) -> f64 {
    let scale = others.iter().fold(target.norm(), |m, w| m.max(w.norm())).max(1.0);
    others.iter().map(|w| (target - w).norm() / scale).fold(f64::INFINITY, f64::min)
}

/// Certify linear independence of the characters F_f(π_j) = Π_v tr π_{j,v}(f_v).
///
/// Either all coefficients vanish, or a factorizable f is produced with
/// |Σ_j c_j F_f(π_j)| > δ = |c_u|/8, where u maximizes |c_u|.
pub fn independence_witness(fam: &PlacedFamily) -> Result<WitnessResult> {
    let cs = &fam.coefficients;
    if cs.iter().all(|c| *c == Complex64::zero()) {
        return Ok(WitnessResult::CertifiedZero);
    }
    let u = (0..cs.len())
        .fold(0, |best, j| if cs[j].norm() > cs[best].norm() { j } else { best });
    let cu = cs[u].norm();
    let delta = cu / 8.0;
    let others_bound = (cu / (2.0 * cs.len() as f64)).min(2.0);

    // Representatives at each place whose class differs from that of u.
    let distinct: Vec<Vec<usize>> = (0..fam.places.len())
        .map(|v| {
            let mut reps: Vec<usize> = Vec::new();
            for j in 0..fam.reps.len() {
                let pj = &fam.reps[j][v];
                if !pj.same_class(&fam.reps[u][v]) && !reps.iter().any(|&i| fam.reps[i][v].same_class(pj)) {
                    reps.push(j);
                }
            }
            reps
        })
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(WITNESS_SEED);
    let mut last = String::from("no attempt made");
    for attempt in 0..WITNESS_BUDGET {
        let mut factors = Vec::with_capacity(fam.places.len());
        for (v, pl) in fam.places.iter().enumerate() {
            if distinct[v].is_empty() {
                factors.push(HeckeElement::unit(pl.n, pl.q));
                continue;
            }
            let h = separating_element(fam, v, u, &distinct[v], attempt, &mut rng)?;
            let target = trace_unramified(&fam.reps[u][v], &h)?;
            let others: Vec<Complex64> = distinct[v]
                .iter()
                .map(|&j| trace_unramified(&fam.reps[j][v], &h))
                .collect::<Result<_>>()?;
            factors.push(interpolate(&h, target, &others)?);
        }
        let traces = fam.traces(&factors)?;
        let sum: Complex64 = cs.iter().zip(&traces).map(|(c, t)| c * t).sum();
        let others_ok = traces
            .iter()
            .enumerate()
            .all(|(j, t)| j == u || t.norm() < others_bound);
        let target_ok = traces[u].norm() >= 1.0 - 1e-6 && traces[u].norm() < 2.0;
        if others_ok && target_ok && sum.norm() > delta {
            return Ok(WitnessResult::Witness(Witness { u, factors, traces, sum, delta, attempts: attempt + 1 }));
        }
        last = format!("attempt {attempt}: tr_u = {}, |sum| = {:.3e}, delta = {delta:.3e}", traces[u], sum.norm());
    }
    Err(Error::SearchFailed(last))
}

/// Attempt 0 uses the single generator that best separates the class of u
/// from the others; later attempts use random real combinations of all
/// generators.
fn separating_element(
    fam: &PlacedFamily,
    v: usize,
    u: usize,
    others: &[usize],
    attempt: usize,
    rng: &mut ChaCha8Rng,
) -> Result<HeckeElement> {
    let PlaceSpec { n, q, .. } = fam.places[v];
    let gens: Vec<HeckeElement> = (1..=n).map(|k| generator(n, q, k)).collect::<Result<_>>()?;
    let score = |h: &HeckeElement| -> Result<f64> {
        let t = trace_unramified(&fam.reps[u][v], h)?;
        let o: Vec<Complex64> = others
            .iter()
            .map(|&j| trace_unramified(&fam.reps[j][v], h))
            .collect::<Result<_>>()?;
        Ok(separation(t, &o))
    };
    if attempt == 0 {
        let mut best = (f64::NEG_INFINITY, gens[0].clone());
        for g in &gens {
            let s = score(g)?;
            if s > best.0 {
                best = (s, g.clone());
            }
        }
        return Ok(best.1);
    }
    let mut h = HeckeElement::zero(n, q);
    for g in &gens {
        h = h.add(&g.scale(Complex64::new(rng.gen_range(-1.0..1.0), 0.0)))?;
    }
    Ok(h)
}
