//! Matching regular semisimple classes of GL_m(F_v) with classes of
//! GL_n(D_v), m = n·d, through their characteristic polynomials.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::Q;
use crate::error::{Error, Result};
use crate::localpoly::{etale_algebra_invariants, factor_degrees, is_u_compatible, LocalFactor};
use crate::matrix::QMatrix;
use crate::place::Place;
use crate::poly::MonicPoly;
use crate::quatcsa::{ramified_places, reduced_char_poly, QuatMatrix, QuaternionAlgebra, RamificationSet};

/// Where a class lives.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Ambient {
    /// GL_m over the base field.
    Field { m: usize },
    /// GL_n over a division algebra of degree d.
    Algebra { n: usize, d: usize },
}

/// A regular semisimple conjugacy class, remembered by its (reduced)
/// characteristic polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjClassTag {
    #[serde(serialize_with = "crate::wire::ser_monic")]
    pub poly: MonicPoly,
    pub ambient: Ambient,
}

impl ConjClassTag {
    /// Tag for GL_deg(P) over the base field.
    pub fn new(poly: MonicPoly) -> Result<Self> {
        let m = poly.degree();
        ConjClassTag::with_ambient(poly, Ambient::Field { m })
    }

    pub fn with_ambient(poly: MonicPoly, ambient: Ambient) -> Result<Self> {
        let expected = match ambient {
            Ambient::Field { m } => m,
            Ambient::Algebra { n, d } => n * d,
        };
        if poly.degree() != expected {
            return Err(Error::ShapeMismatch(format!(
                "degree {} does not match ambient size {expected}",
                poly.degree()
            )));
        }
        if !poly.is_squarefree() {
            return Err(Error::NotRegularSemisimple);
        }
        if poly.constant_term().is_zero() {
            return Err(Error::NotInvertible);
        }
        Ok(ConjClassTag { poly, ambient })
    }

    pub fn degree(&self) -> usize {
        self.poly.degree()
    }
}

/// Class of an invertible rational matrix with distinct eigenvalues.
pub fn class_of_matrix(g: &QMatrix) -> Result<ConjClassTag> {
    ConjClassTag::new(g.char_poly())
}

/// Class of an invertible matrix over a quaternion algebra, through its
/// reduced characteristic polynomial.
pub fn class_of_quat_matrix(g: &QuatMatrix) -> Result<ConjClassTag> {
    let poly = reduced_char_poly(g)?;
    ConjClassTag::with_ambient(poly, Ambient::Algebra { n: g.size(), d: 2 })
}

/// Sizes of the diagonal blocks of a standard Levi subgroup.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct LeviShape {
    sizes: Vec<usize>,
}

impl LeviShape {
    pub fn new(sizes: Vec<usize>) -> Result<Self> {
        if sizes.contains(&0) {
            return Err(Error::pre("Levi block sizes must be positive"));
        }
        Ok(LeviShape { sizes })
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn total(&self) -> usize {
        self.sizes.iter().sum()
    }
}

impl fmt::Display for LeviShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.sizes.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Whether the class has a counterpart in GL_{deg/d_v}(D_v).
pub fn local_transferable(tag: &ConjClassTag, d_v: usize, place: Place) -> Result<bool> {
    if d_v == 0 || tag.degree() % d_v != 0 {
        return Err(Error::DegreeMismatch { degree: tag.degree(), divisor: d_v });
    }
    is_u_compatible(&tag.poly, d_v, place)
}

/// The Levi L(n_1, ..., n_k) of GL_{deg/d}(D_v) containing the matching
/// class, one block per irreducible factor of degree d·n_i.
pub fn corresponding_block_shape(tag: &ConjClassTag, d: usize, place: Place) -> Result<LeviShape> {
    if d == 0 || tag.degree() % d != 0 {
        return Err(Error::DegreeMismatch { degree: tag.degree(), divisor: d });
    }
    let shape = factor_degrees(&tag.poly, place)?;
    if shape.degrees.iter().any(|k| k % d != 0) {
        return Err(Error::NotTransferable(place));
    }
    let mut sizes: Vec<usize> = shape.degrees.iter().map(|k| k / d).collect();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    LeviShape::new(sizes)
}

/// Centralizer data of the class at p: the (e, f) of each field factor of
/// F_p[X]/(P). Matching classes on both sides have the same list.
pub fn centralizer_invariants(tag: &ConjClassTag, p: u64) -> Result<Vec<LocalFactor>> {
    etale_algebra_invariants(&tag.poly, p)
}

/// Companion matrix with ones on the subdiagonal and -a_i in the last
/// column, so X² - uX + v gives rows (0, -v) and (1, u).
pub fn companion_of(p: &MonicPoly) -> QMatrix {
    let n = p.degree();
    QMatrix::from_fn(n, |i, j| {
        if j == n - 1 {
            -p.coeff(i)
        } else if i == j + 1 {
            Q::one()
        } else {
            Q::zero()
        }
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Direction {
    /// From GL_m(F_v) to GL_n(D_v): divide by d_v.
    GtoGPrime,
    /// From GL_n(D_v) to GL_m(F_v): multiply by d_v.
    GPrimeToG,
}

pub fn levi_correspondence(shape: &LeviShape, d_v: usize, direction: Direction) -> Result<Option<LeviShape>> {
    if d_v == 0 {
        return Err(Error::pre("local degree must be positive"));
    }
    let sizes = match direction {
        Direction::GPrimeToG => Some(shape.sizes.iter().map(|s| s * d_v).collect()),
        Direction::GtoGPrime => {
            if shape.sizes.iter().all(|s| s % d_v == 0) {
                Some(shape.sizes.iter().map(|s| s / d_v).collect())
            } else {
                None
            }
        }
    };
    sizes.map(LeviShape::new).transpose()
}

/// A central division algebra over Q of degree d split at ∞, described by
/// its local degrees at the ramified primes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GlobalAlgebra {
    d: usize,
    local_degrees: BTreeMap<u64, usize>,
}

impl GlobalAlgebra {
    /// The base field itself.
    pub fn split() -> Self {
        GlobalAlgebra { d: 1, local_degrees: BTreeMap::new() }
    }

    pub fn quaternion(ram: &RamificationSet) -> Result<Self> {
        if ram.len() % 2 == 1 {
            return Err(Error::pre("a quaternion algebra ramifies at an even number of places"));
        }
        let mut local_degrees = BTreeMap::new();
        for v in ram.iter() {
            match v {
                Place::Infinite => return Err(Error::pre("the algebra must split at the real place")),
                Place::Finite(p) => {
                    Place::prime(p)?;
                    local_degrees.insert(p, 2);
                }
            }
        }
        Ok(GlobalAlgebra { d: 2, local_degrees })
    }

    pub fn from_quaternion_algebra(alg: &QuaternionAlgebra) -> Result<Self> {
        GlobalAlgebra::quaternion(&ramified_places(alg)?)
    }

    /// General degree d with the given local degrees, each dividing d.
    pub fn with_local_degrees(d: usize, local: BTreeMap<u64, usize>) -> Result<Self> {
        if d == 0 {
            return Err(Error::pre("degree must be positive"));
        }
        for (&p, &dv) in &local {
            Place::prime(p)?;
            if dv == 0 || d % dv != 0 {
                return Err(Error::pre(format!("local degree {dv} at {p} does not divide {d}")));
            }
        }
        let local: BTreeMap<u64, usize> = local.into_iter().filter(|&(_, dv)| dv > 1).collect();
        if d == 2 && local.len() % 2 == 1 {
            return Err(Error::pre("a quaternion algebra ramifies at an even number of places"));
        }
        Ok(GlobalAlgebra { d, local_degrees: local })
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn local_degree(&self, v: Place) -> usize {
        v.as_prime().and_then(|p| self.local_degrees.get(&p).copied()).unwrap_or(1)
    }

    pub fn ramification(&self) -> RamificationSet {
        RamificationSet::new(self.local_degrees.keys().map(|&p| Place::Finite(p)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlaceVerdict {
    pub place: Place,
    pub local_degree: usize,
    pub degrees: Vec<usize>,
    pub compatible: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransferReport {
    pub transferable: bool,
    pub places: Vec<PlaceVerdict>,
    /// First place where the local test fails.
    pub witness: Option<Place>,
    /// Whether local agreement everywhere is known to imply a global class
    /// (true for d ≤ 2).
    pub converse_certified: bool,
}

pub fn global_transferable(tag: &ConjClassTag, alg: &GlobalAlgebra) -> Result<TransferReport> {
    if tag.degree() % alg.d != 0 {
        return Err(Error::DegreeMismatch { degree: tag.degree(), divisor: alg.d });
    }
    let mut places = Vec::new();
    for (&p, &dv) in &alg.local_degrees {
        let place = Place::Finite(p);
        let shape = factor_degrees(&tag.poly, place)?;
        let compatible = shape.degrees.iter().all(|k| k % dv == 0);
        places.push(PlaceVerdict { place, local_degree: dv, degrees: shape.degrees, compatible });
    }
    let witness = places.iter().find(|v| !v.compatible).map(|v| v.place);
    Ok(TransferReport {
        transferable: witness.is_none(),
        places,
        witness,
        converse_certified: alg.d <= 2,
    })
}
