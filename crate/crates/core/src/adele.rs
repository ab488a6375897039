//! Adeles and ideles of Q through their finite exceptional data.
//!
//! An element stores its real component, the components at finitely many
//! listed primes, and one common value for all remaining primes. In idele
//! mode that common value must be a unit at every unlisted prime (for the
//! diagonal image of x it is x itself); in adele mode it must be integral
//! there. Nothing ever iterates over unlisted primes.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::arith::{discrete_log, pow_q, primitive_root, rat_mod_u64, rational_prime_support, split_valuation, val_rat, Q};
use crate::error::{Error, Result};
use crate::place::Place;
use crate::wire::ser_rational;

/// A real number, exact when possible.
#[derive(Clone, Debug, PartialEq)]
pub enum Real {
    Exact(Q),
    Approx(f64),
}

impl Real {
    pub fn to_f64(&self) -> f64 {
        match self {
            Real::Exact(q) => q.to_f64().unwrap_or(f64::NAN),
            Real::Approx(x) => *x,
        }
    }

    pub fn as_exact(&self) -> Option<&Q> {
        match self {
            Real::Exact(q) => Some(q),
            Real::Approx(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Real::Exact(q) => q.is_zero(),
            Real::Approx(x) => *x == 0.0,
        }
    }

    pub fn abs(&self) -> Real {
        match self {
            Real::Exact(q) => Real::Exact(q.abs()),
            Real::Approx(x) => Real::Approx(x.abs()),
        }
    }

    pub fn mul(&self, o: &Real) -> Real {
        match (self, o) {
            (Real::Exact(a), Real::Exact(b)) => Real::Exact(a * b),
            _ => Real::Approx(self.to_f64() * o.to_f64()),
        }
    }

    fn is_negative(&self) -> bool {
        self.to_f64() < 0.0
    }
}

impl Serialize for Real {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Real::Exact(q) => ser_rational(q, s),
            Real::Approx(x) => s.serialize_f64(*x),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DefaultKind {
    /// Components outside the listed primes lie in Z_p^×.
    Unit,
    /// Components outside the listed primes lie in Z_p.
    Integral,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RestrictedElement {
    archimedean: Real,
    finite: BTreeMap<u64, Q>,
    default: DefaultKind,
    default_value: Q,
}

impl RestrictedElement {
    /// An element with every unlisted component equal to 1 (idele mode) or
    /// 0 (adele mode).
    pub fn new(archimedean: Real, finite: BTreeMap<u64, Q>, default: DefaultKind) -> Result<Self> {
        let default_value = match default {
            DefaultKind::Unit => Q::one(),
            DefaultKind::Integral => Q::zero(),
        };
        RestrictedElement::with_default_value(archimedean, finite, default, default_value)
    }

    /// `default_value` is the common component at every unlisted prime.
    pub fn with_default_value(
        archimedean: Real,
        finite: BTreeMap<u64, Q>,
        default: DefaultKind,
        default_value: Q,
    ) -> Result<Self> {
        if let Some(p) = finite.keys().find(|&&p| !crate::arith::is_prime(p)) {
            return Err(Error::pre(format!("{p} is not prime")));
        }
        let listed = |x: &Q| -> Result<bool> {
            let support = if x.is_zero() { Vec::new() } else { rational_prime_support(x)? };
            Ok(support.iter().all(|p| finite.contains_key(p)))
        };
        match default {
            DefaultKind::Unit => {
                if archimedean.is_zero() {
                    return Err(Error::NotIdele("zero real component".into()));
                }
                if let Some(p) = finite.iter().find(|(_, x)| x.is_zero()).map(|(p, _)| p) {
                    return Err(Error::NotIdele(format!("zero component at {p}")));
                }
                if default_value.is_zero() || !listed(&default_value)? {
                    return Err(Error::NotIdele(format!(
                        "default value {default_value} is not a unit at every unlisted prime"
                    )));
                }
            }
            DefaultKind::Integral => {
                if !default_value.is_zero() && !listed(&Q::from_integer(default_value.denom().clone()))? {
                    return Err(Error::pre(format!(
                        "default value {default_value} is not integral at every unlisted prime"
                    )));
                }
            }
        }
        Ok(RestrictedElement { archimedean, finite, default, default_value })
    }

    /// The diagonal image of a rational number.
    pub fn diagonal(x: &Q, default: DefaultKind) -> Result<Self> {
        if x.is_zero() && default == DefaultKind::Unit {
            return Err(Error::NotIdele("0 is not invertible".into()));
        }
        let support = if x.is_zero() { Vec::new() } else { rational_prime_support(x)? };
        let finite = support.into_iter().map(|p| (p, x.clone())).collect();
        RestrictedElement::with_default_value(Real::Exact(x.clone()), finite, default, x.clone())
    }

    pub fn archimedean(&self) -> &Real {
        &self.archimedean
    }

    pub fn finite(&self) -> &BTreeMap<u64, Q> {
        &self.finite
    }

    pub fn default_kind(&self) -> DefaultKind {
        self.default
    }

    pub fn default_value(&self) -> &Q {
        &self.default_value
    }

    pub fn is_listed(&self, p: u64) -> bool {
        self.finite.contains_key(&p)
    }

    /// The component at a finite prime.
    pub fn at(&self, p: u64) -> &Q {
        self.finite.get(&p).unwrap_or(&self.default_value)
    }

    /// Componentwise product; both factors must have the same default kind.
    pub fn mul(&self, o: &RestrictedElement) -> Result<RestrictedElement> {
        if self.default != o.default {
            return Err(Error::pre("cannot multiply an idele by an adele with a different default"));
        }
        let primes: BTreeSet<u64> = self.finite.keys().chain(o.finite.keys()).copied().collect();
        let finite = primes.into_iter().map(|p| (p, self.at(p) * o.at(p))).collect();
        RestrictedElement::with_default_value(
            self.archimedean.mul(&o.archimedean),
            finite,
            self.default,
            &self.default_value * &o.default_value,
        )
    }

    fn require_idele(&self) -> Result<()> {
        match self.default {
            DefaultKind::Unit => Ok(()),
            DefaultKind::Integral => Err(Error::NotIdele("element is in adele mode".into())),
        }
    }
}

/// |x|_p for a nonzero rational.
pub fn local_norm(x: &Q, p: u64) -> Q {
    pow_q(p, -val_rat(x, p).expect("nonzero component"))
}

/// Π_v |g_v|_v over the real place and the listed primes; unlisted
/// components are units and contribute 1.
pub fn idele_norm(g: &RestrictedElement) -> Result<Real> {
    g.require_idele()?;
    let finite: Q = g.finite.iter().map(|(&p, x)| local_norm(x, p)).product();
    Ok(g.archimedean.abs().mul(&Real::Exact(finite)))
}

/// Local character data: |·|_v^s times a finite-order twist.
///
/// At the real place the twist is a power of the sign character; at p it is
/// u ↦ exp(2πi·tame·log_g(u mod p)/(p-1)) on units (g the least primitive
/// root) together with ϖ ↦ exp(2πi·phase) on the uniformizer.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LocalCharacter {
    #[serde(serialize_with = "crate::wire::ser_complex")]
    pub s: Complex64,
    pub sign: bool,
    pub tame: u64,
    pub phase: f64,
}

impl LocalCharacter {
    pub fn power(s: Complex64) -> Self {
        LocalCharacter { s, sign: false, tame: 0, phase: 0.0 }
    }

    pub fn is_ramified(&self, place: Place) -> bool {
        match place {
            Place::Infinite => false,
            Place::Finite(p) => self.tame % (p - 1) != 0,
        }
    }

    fn mul(&self, o: &LocalCharacter) -> LocalCharacter {
        LocalCharacter {
            s: self.s + o.s,
            sign: self.sign ^ o.sign,
            tame: self.tame + o.tame,
            phase: (self.phase + o.phase).rem_euclid(1.0),
        }
    }

    fn eval(&self, place: Place, x: &Real) -> Result<Complex64> {
        match place {
            Place::Infinite => {
                let a = x.abs().to_f64();
                let mut v = Complex64::from(a).powc(self.s);
                if self.sign && x.is_negative() {
                    v = -v;
                }
                Ok(v)
            }
            Place::Finite(p) => {
                let x = x
                    .as_exact()
                    .ok_or_else(|| Error::NotRational(format!("component at {p}")))?;
                let (v, u) = split_valuation(x, p);
                let norm = pow_q(p, -v).to_f64().unwrap_or(f64::NAN);
                let mut value = Complex64::from(norm).powc(self.s) * Complex64::from_polar(1.0, 2.0 * PI * self.phase * v as f64);
                if self.is_ramified(place) {
                    let r = rat_mod_u64(&u, p).expect("unit part is invertible mod p");
                    let l = discrete_log(r, primitive_root(p), p).expect("primitive root generates");
                    let k = (self.tame % (p - 1)) * l % (p - 1);
                    value *= Complex64::from_polar(1.0, 2.0 * PI * k as f64 / (p - 1) as f64);
                }
                Ok(value)
            }
        }
    }
}

/// χ = Π_v χ_v with χ_v = |·|_v^s at every place not listed explicitly.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProductCharacter {
    #[serde(serialize_with = "crate::wire::ser_complex")]
    pub s: Complex64,
    pub local: BTreeMap<Place, LocalCharacter>,
}

impl ProductCharacter {
    pub fn trivial() -> Self {
        ProductCharacter::norm_power(Complex64::new(0.0, 0.0))
    }

    /// |·|_𝔸^s.
    pub fn norm_power(s: Complex64) -> Self {
        ProductCharacter { s, local: BTreeMap::new() }
    }

    pub fn with_local(mut self, place: Place, chi: LocalCharacter) -> Result<Self> {
        match place {
            Place::Infinite if chi.tame != 0 || chi.phase != 0.0 => {
                return Err(Error::pre("the real place only carries a sign twist"));
            }
            Place::Finite(_) if chi.sign => return Err(Error::pre("sign twists live at the real place")),
            _ => {}
        }
        self.local.insert(place, chi);
        Ok(self)
    }

    pub fn local_at(&self, place: Place) -> LocalCharacter {
        self.local.get(&place).cloned().unwrap_or_else(|| LocalCharacter::power(self.s))
    }

    pub fn ramified_places(&self) -> BTreeSet<Place> {
        self.local.iter().filter(|(&v, c)| c.is_ramified(v)).map(|(&v, _)| v).collect()
    }

    pub fn mul(&self, o: &ProductCharacter) -> ProductCharacter {
        let places: BTreeSet<Place> = self.local.keys().chain(o.local.keys()).copied().collect();
        ProductCharacter {
            s: self.s + o.s,
            local: places.into_iter().map(|v| (v, self.local_at(v).mul(&o.local_at(v)))).collect(),
        }
    }
}

/// χ(g) = Π_v χ_v(g_v) over the real place, the listed primes of g and the
/// ramified places of χ.
pub fn evaluate_character(chi: &ProductCharacter, g: &RestrictedElement) -> Result<Complex64> {
    g.require_idele()?;
    if let Some(v) = chi.ramified_places().into_iter().find(|v| !g.is_listed(v.as_prime().unwrap_or(0))) {
        return Err(Error::RamifiedAtDefault(v));
    }
    let mut value = chi.local_at(Place::Infinite).eval(Place::Infinite, &g.archimedean)?;
    for (&p, x) in &g.finite {
        value *= chi.local_at(Place::Finite(p)).eval(Place::Finite(p), &Real::Exact(x.clone()))?;
    }
    Ok(value)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdeleDecomposition {
    /// The Q^× factor.
    #[serde(serialize_with = "ser_rational")]
    pub r: Q,
    /// The positive real factor.
    #[serde(serialize_with = "ser_rational")]
    pub t: Q,
    /// u_p = g_p / r at each listed prime, each a p-adic unit.
    #[serde(serialize_with = "ser_rational_map")]
    pub units: BTreeMap<u64, Q>,
    /// The common unit at every unlisted prime.
    #[serde(serialize_with = "ser_rational")]
    pub default_unit: Q,
}

fn ser_rational_map<S: Serializer>(m: &BTreeMap<u64, Q>, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let mut out = s.serialize_map(Some(m.len()))?;
    for (p, x) in m {
        out.serialize_entry(&p.to_string(), &crate::wire::RationalJson(x))?;
    }
    out.end()
}

/// g = r · t · u with r ∈ Q^×, t > 0 real and u in Π Z_p^×.
pub fn idele_decompose(g: &RestrictedElement) -> Result<IdeleDecomposition> {
    g.require_idele()?;
    let ginf = g
        .archimedean
        .as_exact()
        .ok_or_else(|| Error::NotRational("real component".into()))?;
    let mut r = if ginf.is_negative() { -Q::one() } else { Q::one() };
    for (&p, x) in &g.finite {
        r *= pow_q(p, val_rat(x, p).expect("nonzero component"));
    }
    let t = ginf / &r;
    let mut units = BTreeMap::new();
    for (&p, x) in &g.finite {
        let u = x / &r;
        if val_rat(&u, p) != Some(0) {
            return Err(Error::Internal(format!("u_{p} = {u} is not a unit")));
        }
        units.insert(p, u);
    }
    let default_unit = &g.default_value / &r;
    if rational_prime_support(&default_unit)?.iter().any(|p| !g.is_listed(*p)) {
        return Err(Error::Internal(format!("default unit {default_unit} is not a unit off the support")));
    }
    if !t.is_positive() {
        return Err(Error::Internal(format!("real factor {t} is not positive")));
    }
    Ok(IdeleDecomposition { r, t, units, default_unit })
}

/// A compactly supported local test function.
#[derive(Clone, Debug, PartialEq)]
pub enum LocalTestFunction {
    /// scale · 1_{[lo, hi]} on R.
    Interval { scale: Q, lo: Q, hi: Q },
    /// Σ c · 1_{a + p^k Z_p} on Q_p, as (c, a, k).
    Balls { p: u64, balls: Vec<(Q, Q, i64)> },
}

impl LocalTestFunction {
    /// 1_{Z_p}.
    pub fn unit_ball(p: u64) -> Self {
        LocalTestFunction::Balls { p, balls: vec![(Q::one(), Q::zero(), 0)] }
    }

    /// 1_{[0, 1]}.
    pub fn unit_interval() -> Self {
        LocalTestFunction::Interval { scale: Q::one(), lo: Q::zero(), hi: Q::one() }
    }

    /// ∫ f_v with vol(Z_p) = 1 and Lebesgue measure on R.
    pub fn integral(&self) -> Result<Q> {
        match self {
            LocalTestFunction::Interval { scale, lo, hi } => {
                if hi < lo {
                    return Err(Error::pre("interval with hi < lo"));
                }
                Ok(scale * (hi - lo))
            }
            LocalTestFunction::Balls { p, balls } => {
                Ok(balls.iter().map(|(c, _, k)| c * pow_q(*p, -k)).sum())
            }
        }
    }

    /// f_v(x) for x in Q.
    pub fn eval(&self, x: &Q) -> Q {
        match self {
            LocalTestFunction::Interval { scale, lo, hi } => {
                if lo <= x && x <= hi {
                    scale.clone()
                } else {
                    Q::zero()
                }
            }
            LocalTestFunction::Balls { p, balls } => balls
                .iter()
                .filter(|(_, a, k)| {
                    let d = x - a;
                    d.is_zero() || val_rat(&d, *p).unwrap() >= *k
                })
                .map(|(c, _, _)| c.clone())
                .sum(),
        }
    }

    /// Replace ball `index` by its p sub-balls a + j p^k + p^{k+1} Z_p.
    pub fn refine(&self, index: usize) -> Result<Self> {
        match self {
            LocalTestFunction::Balls { p, balls } => {
                let (c, a, k) = balls.get(index).ok_or_else(|| Error::pre("no such ball"))?.clone();
                let mut out: Vec<(Q, Q, i64)> = balls.iter().enumerate().filter(|&(i, _)| i != index).map(|(_, b)| b.clone()).collect();
                let step = pow_q(*p, k);
                for j in 0..*p {
                    out.push((c.clone(), &a + &step * Q::from_integer(j.into()), k + 1));
                }
                Ok(LocalTestFunction::Balls { p: *p, balls: out })
            }
            LocalTestFunction::Interval { .. } => Err(Error::pre("only p-adic balls refine")),
        }
    }

    fn is_unit_ball(&self, p: u64) -> bool {
        matches!(self, LocalTestFunction::Balls { p: q, balls }
            if *q == p && balls.len() == 1 && balls[0].0.is_one() && balls[0].2 == 0
                && (balls[0].1.is_zero() || val_rat(&balls[0].1, p).unwrap() >= 0))
    }
}

/// ∫_𝔸 Π f_v = Π ∫ f_v. Primes outside `active` must carry 1_{Z_p} (or be
/// absent); a missing real factor is 1_{[0,1]}.
pub fn integrate_factorizable(fs: &BTreeMap<Place, LocalTestFunction>, active: &BTreeSet<u64>) -> Result<Q> {
    let mut total = Q::one();
    if !fs.contains_key(&Place::Infinite) {
        total *= LocalTestFunction::unit_interval().integral()?;
    }
    for (&v, f) in fs {
        match (v, f) {
            (Place::Infinite, LocalTestFunction::Interval { .. }) => {}
            (Place::Finite(p), LocalTestFunction::Balls { p: q, .. }) if p == *q => {
                if !active.contains(&p) && !f.is_unit_ball(p) {
                    return Err(Error::pre(format!("f_{p} must be 1_Z{p} outside the active set")));
                }
            }
            _ => return Err(Error::pre(format!("local function at {v} has the wrong kind"))),
        }
        total *= f.integral()?;
    }
    Ok(total)
}
