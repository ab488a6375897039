//! Quaternion algebras over Q, Hilbert symbols and reduced characteristic
//! polynomials of matrices with quaternion entries.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::{legendre, least_nonresidue, qi, rat_mod_u64, rational_prime_support, split_valuation, Q};
use crate::error::{Error, Result};
use crate::matrix::{Matrix, Quad};
use crate::place::Place;
use crate::poly::MonicPoly;

/// The algebra generated by i, j with i² = a, j² = b, ij = -ji.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuaternionAlgebra {
    a: Q,
    b: Q,
}

impl QuaternionAlgebra {
    pub fn new(a: Q, b: Q) -> Result<Self> {
        if a.is_zero() || b.is_zero() {
            return Err(Error::pre("quaternion parameters must be nonzero"));
        }
        Ok(QuaternionAlgebra { a, b })
    }

    pub fn from_ints(a: i64, b: i64) -> Result<Self> {
        QuaternionAlgebra::new(qi(a), qi(b))
    }

    pub fn hamilton() -> Self {
        QuaternionAlgebra { a: qi(-1), b: qi(-1) }
    }

    /// The division algebra over Q_p written as (u, p) with u a unit whose
    /// square root generates the unramified quadratic extension: u is the
    /// least quadratic non-residue for odd p and 5 for p = 2.
    pub fn local_division_model(p: u64) -> Result<Self> {
        Place::prime(p)?;
        let u = if p == 2 { 5 } else { least_nonresidue(p) };
        QuaternionAlgebra::new(qi(u as i64), Q::from_integer(p.into()))
    }

    pub fn a(&self) -> &Q {
        &self.a
    }

    pub fn b(&self) -> &Q {
        &self.b
    }

    pub fn element(&self, coords: [Q; 4]) -> QuatElement {
        QuatElement { algebra: self.clone(), coords }
    }

    pub fn element_ints(&self, c: [i64; 4]) -> QuatElement {
        self.element(c.map(qi))
    }

    pub fn scalar(&self, t: Q) -> QuatElement {
        self.element([t, Q::zero(), Q::zero(), Q::zero()])
    }

    pub fn is_split_at(&self, place: Place) -> bool {
        hilbert_symbol(&self.a, &self.b, place) == 1
    }
}

impl fmt::Display for QuaternionAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

/// t + u·i + v·j + w·ij.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuatElement {
    algebra: QuaternionAlgebra,
    coords: [Q; 4],
}

impl QuatElement {
    pub fn algebra(&self) -> &QuaternionAlgebra {
        &self.algebra
    }

    pub fn coords(&self) -> &[Q; 4] {
        &self.coords
    }

    fn same_algebra(&self, o: &Self) {
        assert_eq!(self.algebra, o.algebra, "quaternions from different algebras");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.same_algebra(o);
        let c = std::array::from_fn(|k| &self.coords[k] + &o.coords[k]);
        self.algebra.element(c)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.same_algebra(o);
        let c = std::array::from_fn(|k| &self.coords[k] - &o.coords[k]);
        self.algebra.element(c)
    }

    pub fn neg(&self) -> Self {
        self.algebra.element(std::array::from_fn(|k| -&self.coords[k]))
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.same_algebra(o);
        let (a, b) = (&self.algebra.a, &self.algebra.b);
        let ab = a * b;
        let [t1, u1, v1, w1] = &self.coords;
        let [t2, u2, v2, w2] = &o.coords;
        let t = t1 * t2 + a * u1 * u2 + b * v1 * v2 - &ab * w1 * w2;
        let u = t1 * u2 + u1 * t2 - b * v1 * w2 + b * w1 * v2;
        let v = t1 * v2 + v1 * t2 + a * u1 * w2 - a * w1 * u2;
        let w = t1 * w2 + w1 * t2 + u1 * v2 - v1 * u2;
        self.algebra.element([t, u, v, w])
    }

    pub fn scale(&self, c: &Q) -> Self {
        self.algebra.element(std::array::from_fn(|k| &self.coords[k] * c))
    }

    /// Quaternion conjugate t - ui - vj - wk.
    pub fn conj(&self) -> Self {
        let [t, u, v, w] = &self.coords;
        self.algebra.element([t.clone(), -u, -v, -w])
    }

    pub fn reduced_trace(&self) -> Q {
        qi(2) * &self.coords[0]
    }

    pub fn reduced_norm(&self) -> Q {
        let (a, b) = (&self.algebra.a, &self.algebra.b);
        let [t, u, v, w] = &self.coords;
        t * t - a * u * u - b * v * v + a * b * w * w
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_central(&self) -> bool {
        self.coords[1..].iter().all(Zero::is_zero)
    }

    pub fn inverse(&self) -> Result<Self> {
        let n = self.reduced_norm();
        if n.is_zero() {
            return Err(Error::NotInvertible);
        }
        Ok(self.conj().scale(&n.recip()))
    }

    /// Image in M_2(Q(√a)) under
    /// t + ui + vj + wk ↦ [[t + u√a, b(v + w√a)], [v - w√a, t - u√a]].
    pub fn split_matrix(&self) -> [[Quad; 2]; 2] {
        let (a, b) = (&self.algebra.a, &self.algebra.b);
        let [t, u, v, w] = &self.coords;
        let z = |x: &Q, y: &Q| Quad::new(x.clone(), y.clone(), a.clone());
        [
            [z(t, u), z(&(b * v), &(b * w))],
            [z(v, &-w), z(t, &-u)],
        ]
    }
}

impl fmt::Display for QuatElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [t, u, v, w] = &self.coords;
        write!(f, "{t} + {u}i + {v}j + {w}k")
    }
}

fn sym_exp(e: bool) -> i8 {
    if e {
        -1
    } else {
        1
    }
}

/// Hilbert symbol (a, b)_v: +1 iff z² = ax² + by² has a nonzero solution over Q_v.
pub fn hilbert_symbol(a: &Q, b: &Q, place: Place) -> i8 {
    assert!(!a.is_zero() && !b.is_zero(), "Hilbert symbol of zero");
    match place {
        Place::Infinite => sym_exp(a.is_negative() && b.is_negative()),
        Place::Finite(p) => {
            let (alpha, u) = split_valuation(a, p);
            let (beta, v) = split_valuation(b, p);
            let (alpha, beta) = (alpha.rem_euclid(2) == 1, beta.rem_euclid(2) == 1);
            if p == 2 {
                let u8 = rat_mod_u64(&u, 8).expect("2-adic unit");
                let v8 = rat_mod_u64(&v, 8).expect("2-adic unit");
                let eps = |x: u64| (x % 4) == 3;
                let omega = |x: u64| x % 8 == 3 || x % 8 == 5;
                let odd = (eps(u8) && eps(v8)) ^ (alpha && omega(v8)) ^ (beta && omega(u8));
                sym_exp(odd)
            } else {
                let up = rat_mod_u64(&u, p).expect("p-adic unit");
                let vp = rat_mod_u64(&v, p).expect("p-adic unit");
                let mut s = sym_exp(alpha && beta && p % 4 == 3);
                if beta {
                    s *= legendre(up, p);
                }
                if alpha {
                    s *= legendre(vp, p);
                }
                s
            }
        }
    }
}

/// Places where a quaternion algebra does not split. Always of even size.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct RamificationSet {
    places: BTreeSet<Place>,
}

impl RamificationSet {
    pub fn new(places: impl IntoIterator<Item = Place>) -> Self {
        RamificationSet { places: places.into_iter().collect() }
    }

    pub fn places(&self) -> &BTreeSet<Place> {
        &self.places
    }

    pub fn contains(&self, v: Place) -> bool {
        self.places.contains(&v)
    }

    pub fn len(&self) -> usize {
        self.places.len()
    }

    pub fn is_empty(&self) -> bool {
        self.places.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = Place> + '_ {
        self.places.iter().copied()
    }
}

/// Places that can possibly have symbol -1: ∞, 2 and primes dividing a or b.
pub fn candidate_places(a: &Q, b: &Q) -> Result<BTreeSet<Place>> {
    let mut out: BTreeSet<Place> = [Place::Infinite, Place::Finite(2)].into();
    for x in [a, b] {
        out.extend(rational_prime_support(x)?.into_iter().map(Place::Finite));
    }
    Ok(out)
}

pub fn ramified_places(d: &QuaternionAlgebra) -> Result<RamificationSet> {
    let set = candidate_places(&d.a, &d.b)?
        .into_iter()
        .filter(|&v| hilbert_symbol(&d.a, &d.b, v) == -1)
        .collect::<BTreeSet<_>>();
    if set.len() % 2 == 1 {
        return Err(Error::Internal(format!("odd ramification set for {d}")));
    }
    Ok(RamificationSet { places: set })
}

/// X² - tr(x)X + N(x).
pub fn reduced_char_poly_quat(x: &QuatElement) -> MonicPoly {
    MonicPoly::new(vec![x.reduced_norm(), -x.reduced_trace(), Q::one()]).expect("monic quadratic")
}

/// Nonzero discriminant of the reduced characteristic polynomial.
///
/// In a division algebra this is the same as being non-central; in a split
/// algebra it also excludes non-semisimple elements like 1 + nilpotent.
pub fn is_regular_semisimple_quat(x: &QuatElement) -> Result<bool> {
    let n = x.reduced_norm();
    if n.is_zero() {
        return Err(Error::NotInvertible);
    }
    let tr = x.reduced_trace();
    Ok(&tr * &tr != qi(4) * n)
}

/// n×n matrix with entries in a quaternion algebra, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuatMatrix {
    algebra: QuaternionAlgebra,
    n: usize,
    entries: Vec<QuatElement>,
}

impl QuatMatrix {
    pub fn new(algebra: QuaternionAlgebra, rows: Vec<Vec<QuatElement>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::pre("matrix must be at least 1x1"));
        }
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::ShapeMismatch(format!("expected {n} entries in every row")));
        }
        if rows.iter().flatten().any(|e| e.algebra != algebra) {
            return Err(Error::ShapeMismatch("entries from different algebras".into()));
        }
        Ok(QuatMatrix { algebra, n, entries: rows.into_iter().flatten().collect() })
    }

    pub fn diagonal(entries: &[QuatElement]) -> Result<Self> {
        let alg = entries.first().ok_or_else(|| Error::pre("empty diagonal"))?.algebra.clone();
        let zero = alg.scalar(Q::zero());
        let n = entries.len();
        let rows = (0..n)
            .map(|i| (0..n).map(|j| if i == j { entries[i].clone() } else { zero.clone() }).collect())
            .collect();
        QuatMatrix::new(alg, rows)
    }

    pub fn algebra(&self) -> &QuaternionAlgebra {
        &self.algebra
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &QuatElement {
        &self.entries[i * self.n + j]
    }

    pub fn mul(&self, o: &QuatMatrix) -> QuatMatrix {
        let n = self.n;
        let zero = self.algebra.scalar(Q::zero());
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).fold(zero.clone(), |acc, k| acc.add(&self.get(i, k).mul(o.get(k, j)))))
                    .collect()
            })
            .collect();
        QuatMatrix::new(self.algebra.clone(), rows).expect("same shape")
    }

    /// The 2n×2n block matrix over Q(√a) obtained entrywise from
    /// [`QuatElement::split_matrix`].
    pub fn split(&self) -> Matrix<Quad> {
        let blocks: Vec<[[Quad; 2]; 2]> = self.entries.iter().map(QuatElement::split_matrix).collect();
        let n = self.n;
        Matrix::from_fn(2 * n, |r, c| blocks[(r / 2) * n + c / 2][r % 2][c % 2].clone())
    }
}

/// Reduced characteristic polynomial of a matrix over D, computed in
/// M_2n(Q(√a)).
///
/// Every coefficient must have vanishing √a-part; a nonzero part is an
/// internal error rather than a mathematical outcome.
pub fn reduced_char_poly(g: &QuatMatrix) -> Result<MonicPoly> {
    let coeffs = g.split().char_poly_coeffs();
    let mut out = Vec::with_capacity(coeffs.len());
    for (k, c) in coeffs.into_iter().enumerate() {
        if !c.y.is_zero() {
            return Err(Error::SplittingDrift(format!(
                "coefficient of X^{k} has irrational part {}",
                c.y
            )));
        }
        out.push(c.x);
    }
    MonicPoly::new(out)
}

/// Reduced characteristic polynomial of g viewed in M_n(D_v) for a place v
/// where D is ramified.
pub fn reduced_char_poly_matrix(g: &QuatMatrix, v: Place) -> Result<MonicPoly> {
    if !ramified_places(&g.algebra)?.contains(v) {
        return Err(Error::pre(format!("{} is split at {v}", g.algebra)));
    }
    reduced_char_poly(g)
}

/// P(g) computed in M_2n(Q(√a)); zero by Cayley-Hamilton.
pub fn eval_on_split(g: &QuatMatrix, p: &MonicPoly) -> Matrix<Quad> {
    let m = g.split();
    let coeffs: Vec<Quad> = p.coeffs().iter().map(|c| Quad::rational(c.clone(), g.algebra.a())).collect();
    m.eval_poly(&coeffs)
}

/// Apply P to a single quaternion in D itself.
pub fn eval_in_algebra(x: &QuatElement, p: &MonicPoly) -> QuatElement {
    let alg = x.algebra();
    p.coeffs()
        .iter()
        .rev()
        .fold(alg.scalar(Q::zero()), |acc, c| acc.mul(x).add(&alg.scalar(c.clone())))
}
