//! Factor-degree analysis of squarefree monic polynomials over Q_p and R.
//!
//! Over Q_p the shapes come from certified methods only:
//!
//! * the reduction mod p is squarefree (Hensel regime): degrees are the
//!   distinct-degree factorization degrees over F_p;
//! * the polynomial is p-regular with respect to `X - a` for some residue
//!   `a`: every Newton segment has a separable residual polynomial, and each
//!   irreducible residual factor of degree f on a segment of slope h/e gives
//!   one irreducible factor of degree e·f;
//! * degree two: the discriminant decides.
//!
//! Anything else is reported as [`Error::Inconclusive`].

use std::fmt;

use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use crate::arith::{pow_q, qi, rat_mod_u64, split_valuation, val_rat, Q};
use crate::error::{Error, Result};
use crate::padic::is_square_in_qp;
use crate::place::Place;
use crate::poly::fp::FpPoly;
use crate::poly::sturm::count_real_roots;
use crate::poly::MonicPoly;

/// One edge of a Newton polygon.
///
/// `slope` is the common valuation of the roots the edge accounts for and
/// `length` is how many roots (with multiplicity) it carries.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Segment {
    #[serde(serialize_with = "crate::wire::ser_rational")]
    pub slope: Q,
    pub length: usize,
}

impl Segment {
    /// Denominator of the slope in lowest terms: every factor supported on
    /// this edge has degree divisible by it.
    pub fn ramification(&self) -> usize {
        self.slope.denom().try_into().expect("small denominator")
    }
}

/// Lower convex hull of the points (n - i, v_p(a_i)).
///
/// Indexing by codegree puts the leading coefficient at the origin, so the
/// slopes read left to right are the root valuations in increasing order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NewtonPolygon {
    pub vertices: Vec<(usize, i64)>,
    pub segments: Vec<Segment>,
}

impl NewtonPolygon {
    pub fn total_length(&self) -> usize {
        self.segments.iter().map(|s| s.length).sum()
    }
}

pub fn newton_polygon(poly: &MonicPoly, p: u64) -> Result<NewtonPolygon> {
    Place::prime(p)?;
    if poly.constant_term().is_zero() {
        return Err(Error::ZeroConstantTerm);
    }
    let n = poly.degree();
    let points: Vec<(i64, i64)> = (0..=n)
        .filter_map(|j| val_rat(&poly.coeff(n - j), p).map(|w| (j as i64, w)))
        .collect();
    // Monotone chain; points are already sorted by codegree.
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for &pt in &points {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (b.0 - a.0) * (pt.1 - a.1) - (b.1 - a.1) * (pt.0 - a.0);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    let segments = hull
        .windows(2)
        .map(|w| Segment {
            slope: Q::new((w[1].1 - w[0].1).into(), (w[1].0 - w[0].0).into()),
            length: (w[1].0 - w[0].0) as usize,
        })
        .collect();
    Ok(NewtonPolygon {
        vertices: hull.iter().map(|&(j, w)| (j as usize, w)).collect(),
        segments,
    })
}

/// How a factor shape was certified.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// Sturm sequence at the real place.
    Sturm,
    /// Squarefree reduction mod p.
    Residue,
    /// p-regular Newton polygon after the substitution X -> X + shift.
    Newton { shift: i64 },
    /// Degree-two discriminant test.
    Discriminant,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::Sturm => f.write_str("sturm"),
            Method::Residue => f.write_str("residue"),
            Method::Newton { shift } => write!(f, "newton(shift {shift})"),
            Method::Discriminant => f.write_str("discriminant"),
        }
    }
}

/// Ramification index and residue degree of one irreducible factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct LocalFactor {
    pub e: usize,
    pub f: usize,
}

impl LocalFactor {
    pub fn degree(self) -> usize {
        self.e * self.f
    }
}

/// Irreducible factor degrees of a polynomial over a completion of Q.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorShape {
    pub place: Place,
    /// Sorted descending.
    pub degrees: Vec<usize>,
    pub certified: bool,
    pub method: Method,
}

fn check_squarefree(poly: &MonicPoly) -> Result<()> {
    if poly.is_squarefree() {
        Ok(())
    } else {
        Err(Error::NotSquarefree)
    }
}

fn is_integral(poly: &MonicPoly, p: u64) -> bool {
    poly.coeffs()
        .iter()
        .all(|c| val_rat(c, p).is_none_or(|v| v >= 0))
}

/// Residual polynomial attached to one edge, over F_p.
fn residual_polynomial(poly: &MonicPoly, p: u64, start: (i64, i64), seg: &Segment) -> FpPoly {
    let n = poly.degree() as i64;
    let e = seg.slope.denom().try_into().unwrap_or(1i64);
    let h: i64 = seg.slope.numer().try_into().expect("small slope");
    let steps = seg.length as i64 / e;
    let coeffs = (0..=steps)
        .map(|t| {
            let j = start.0 + t * e;
            let expected = start.1 + t * h;
            let a = poly.coeff((n - j) as usize);
            match val_rat(&a, p) {
                Some(w) if w == expected => {
                    rat_mod_u64(&(a * pow_q(p, -expected)), p).expect("unit residue")
                }
                _ => 0,
            }
        })
        .collect();
    FpPoly::new(p, coeffs)
}

/// Ore's criterion: `Some(factors)` when every residual polynomial is
/// separable, `None` otherwise.
fn regular_factors(poly: &MonicPoly, p: u64) -> Result<Option<Vec<LocalFactor>>> {
    let np = newton_polygon(poly, p)?;
    let mut out = Vec::new();
    for (seg, start) in np.segments.iter().zip(&np.vertices) {
        let start = (start.0 as i64, start.1);
        let residual = residual_polynomial(poly, p, start, seg);
        if !residual.is_squarefree() {
            return Ok(None);
        }
        let e = seg.ramification();
        for f in residual.factor_degrees()? {
            out.push(LocalFactor { e, f });
        }
    }
    Ok(Some(out))
}

fn quadratic_factors(poly: &MonicPoly, p: u64) -> Result<Vec<LocalFactor>> {
    let (b, c) = (poly.coeff(1), poly.coeff(0));
    let disc = &b * &b - qi(4) * c;
    if is_square_in_qp(&disc, p)? {
        return Ok(vec![LocalFactor { e: 1, f: 1 }; 2]);
    }
    let (v, u) = split_valuation(&disc, p);
    let ramified = if v.is_odd() {
        true
    } else if p == 2 {
        // Q_2(sqrt u) is unramified exactly when u = 5 mod 8 (u is a non-square).
        rat_mod_u64(&u, 4) != Some(1)
    } else {
        false
    };
    Ok(vec![if ramified {
        LocalFactor { e: 2, f: 1 }
    } else {
        LocalFactor { e: 1, f: 2 }
    }])
}

fn sort_desc(mut v: Vec<LocalFactor>) -> Vec<LocalFactor> {
    v.sort_by(|a, b| (b.degree(), b.e).cmp(&(a.degree(), a.e)));
    v
}

/// Certified (e, f) data of every irreducible factor over Q_p.
pub fn local_factors(poly: &MonicPoly, p: u64) -> Result<(Vec<LocalFactor>, Method)> {
    let place = Place::prime(p)?;
    check_squarefree(poly)?;
    if poly.constant_term().is_zero() {
        return Err(Error::ZeroConstantTerm);
    }
    if poly.degree() == 1 {
        return Ok((vec![LocalFactor { e: 1, f: 1 }], Method::Residue));
    }
    if is_integral(poly, p) {
        let red = FpPoly::reduce(poly.as_poly(), p)?;
        if red.is_squarefree() {
            let fs = red
                .factor_degrees()?
                .into_iter()
                .map(|f| LocalFactor { e: 1, f })
                .collect();
            return Ok((sort_desc(fs), Method::Residue));
        }
    }
    for a in 0..p as i64 {
        let shifted = if a == 0 { poly.clone() } else { poly.shift(&qi(a)) };
        if shifted.constant_term().is_zero() {
            continue;
        }
        if let Some(fs) = regular_factors(&shifted, p)? {
            return Ok((sort_desc(fs), Method::Newton { shift: a }));
        }
    }
    if poly.degree() == 2 {
        return Ok((sort_desc(quadratic_factors(poly, p)?), Method::Discriminant));
    }
    Err(Error::Inconclusive {
        place,
        reason: format!("no X - a with a in [0, {p}) makes {poly} p-regular"),
    })
}

/// Multiset of irreducible factor degrees over Q_place.
pub fn factor_degrees(poly: &MonicPoly, place: Place) -> Result<FactorShape> {
    match place {
        Place::Infinite => {
            check_squarefree(poly)?;
            let real = count_real_roots(poly.as_poly());
            let complex_pairs = (poly.degree() - real) / 2;
            let mut degrees = vec![2; complex_pairs];
            degrees.extend(std::iter::repeat_n(1, real));
            Ok(FactorShape {
                place,
                degrees,
                certified: true,
                method: Method::Sturm,
            })
        }
        Place::Finite(p) => {
            let (fs, method) = local_factors(poly, p)?;
            Ok(FactorShape {
                place,
                degrees: fs.iter().map(|f| f.degree()).collect(),
                certified: true,
                method,
            })
        }
    }
}

/// Every irreducible factor degree is divisible by u.
pub fn is_u_compatible(poly: &MonicPoly, u: usize, place: Place) -> Result<bool> {
    if u == 0 {
        return Err(Error::pre("u must be positive"));
    }
    if u == 1 {
        check_squarefree(poly)?;
        return Ok(true);
    }
    let shape = factor_degrees(poly, place)?;
    Ok(shape.degrees.iter().all(|d| d % u == 0))
}

/// (e, f) per irreducible factor: the shape of the étale algebra
/// Q_p[X]/(P), a product of fields.
pub fn etale_algebra_invariants(poly: &MonicPoly, p: u64) -> Result<Vec<LocalFactor>> {
    local_factors(poly, p).map(|(fs, _)| fs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::q;

    fn mp(cs: &[i64]) -> MonicPoly {
        MonicPoly::from_ints(cs).unwrap()
    }

    #[test]
    fn newton_examples() {
        let np = newton_polygon(&mp(&[-7, 0, 1]), 7).unwrap();
        assert_eq!(np.segments, vec![Segment { slope: q(1, 2), length: 2 }]);
        let np = newton_polygon(&mp(&[-3, 1]), 7).unwrap();
        assert_eq!(np.segments, vec![Segment { slope: qi(0), length: 1 }]);
        let np = newton_polygon(&mp(&[-2, 0, 1]), 7).unwrap();
        assert_eq!(np.segments, vec![Segment { slope: qi(0), length: 2 }]);
        assert_eq!(newton_polygon(&mp(&[0, 1, 1]), 7), Err(Error::ZeroConstantTerm));
    }

    #[test]
    fn newton_slopes_increase() {
        // (X^2 - 3)(X^2 - 7) over Q_7 and X^3 - 49X + 7^5
        let np = newton_polygon(&mp(&[21, 0, -10, 0, 1]), 7).unwrap();
        assert_eq!(np.segments.len(), 2);
        assert_eq!(np.segments[0].slope, qi(0));
        assert_eq!(np.segments[1].slope, q(1, 2));
        let np = newton_polygon(&mp(&[16807, -49, 0, 1]), 7).unwrap();
        assert!(np.segments.windows(2).all(|w| w[0].slope < w[1].slope));
        assert_eq!(np.total_length(), 3);
    }

    #[test]
    fn factor_degree_examples() {
        let deg = |cs: &[i64], place| factor_degrees(&mp(cs), place).unwrap().degrees;
        assert_eq!(deg(&[-2, 0, 1], Place::Finite(7)), vec![1, 1]);
        assert_eq!(deg(&[-3, 0, 1], Place::Finite(7)), vec![2]);
        assert_eq!(deg(&[1, 0, 1], Place::Infinite), vec![2]);
        assert_eq!(deg(&[-7, 0, 1], Place::Finite(7)), vec![2]);
        assert_eq!(deg(&[1, 0, 1], Place::Finite(2)), vec![2]);
        assert_eq!(deg(&[21, 0, -10, 0, 1], Place::Finite(7)), vec![2, 2]);
    }

    #[test]
    fn errors_surface() {
        assert_eq!(
            factor_degrees(&mp(&[1, -2, 1]), Place::Finite(3)).unwrap_err(),
            Error::NotSquarefree
        );
        assert_eq!(
            factor_degrees(&mp(&[0, -1, 1]), Place::Finite(3)).unwrap_err(),
            Error::ZeroConstantTerm
        );
    }

    #[test]
    fn u_compatibility_examples() {
        assert!(is_u_compatible(&mp(&[-3, 0, 1]), 2, Place::Finite(7)).unwrap());
        assert!(!is_u_compatible(&mp(&[3, -3, -1, 1]), 2, Place::Finite(7)).unwrap());
        assert!(!is_u_compatible(&mp(&[-2, 0, 1]), 2, Place::Finite(7)).unwrap());
        assert!(is_u_compatible(&mp(&[5, 1, 0, 1]), 1, Place::Finite(5)).unwrap());
    }

    #[test]
    fn etale_examples() {
        let lf = |e, f| LocalFactor { e, f };
        assert_eq!(etale_algebra_invariants(&mp(&[-3, 0, 1]), 7).unwrap(), vec![lf(1, 2)]);
        assert_eq!(etale_algebra_invariants(&mp(&[-7, 0, 1]), 7).unwrap(), vec![lf(2, 1)]);
        assert_eq!(
            etale_algebra_invariants(&mp(&[-2, 0, 1]), 7).unwrap(),
            vec![lf(1, 1), lf(1, 1)]
        );
        // Q_2(i) is ramified; Q_2(sqrt -3) is not.
        assert_eq!(etale_algebra_invariants(&mp(&[1, 0, 1]), 2).unwrap(), vec![lf(2, 1)]);
        assert_eq!(etale_algebra_invariants(&mp(&[1, 1, 1]), 2).unwrap(), vec![lf(1, 2)]);
    }

    #[test]
    fn real_place_parity() {
        for cs in [&[1i64, 0, 1][..], &[-1, 0, 0, 1], &[1, 0, 0, 0, 1], &[-6, 11, -6, 1]] {
            let p = mp(cs);
            let shape = factor_degrees(&p, Place::Infinite).unwrap();
            let ones = shape.degrees.iter().filter(|&&d| d == 1).count();
            assert_eq!(ones % 2, p.degree() % 2);
            assert_eq!(shape.degrees.iter().sum::<usize>(), p.degree());
        }
    }

    #[test]
    fn rational_coefficients_are_handled() {
        // X^2 - 1/7 has roots of valuation -1/2.
        let p = MonicPoly::new(vec![q(-1, 7), qi(0), qi(1)]).unwrap();
        let np = newton_polygon(&p, 7).unwrap();
        assert_eq!(np.segments[0].slope, q(-1, 2));
        assert_eq!(factor_degrees(&p, Place::Finite(7)).unwrap().degrees, vec![2]);
    }
}
