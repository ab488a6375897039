//! A finite model of the trace formula for a compact quotient.
//!
//! G plays the adelic group, Γ the rational points, Z a central subgroup
//! with a character ω, and Z ∩ Γ the rational points of the center. Every
//! integral is a counting sum, so both sides of the formula are exact.
//!
//! The function space consists of φ: G → C with φ(γ z g) = ω(z) φ(g); a
//! basis is indexed by the cosets ΓZ\G. `R(f)φ(x) = Σ_g f(g) φ(xg)`.
//!
//! Three independent computations of tr R(f):
//!
//! * spectral: the matrix of R(f) in the coset basis;
//! * kernel: Σ_{x ∈ ΓZ\G} K_f(x, x), K_f(x, y) = Σ_{γ ∈ (Z∩Γ)\Γ} f_ω(x⁻¹γy);
//! * geometric: Σ over Γ-classes O in (Z∩Γ)\Γ of vol_O · Φ(f_ω, γ_O), with
//!   Φ(f_ω, γ) = Σ_{g ∈ G_γ\G} f_ω(g⁻¹γg).
//!
//! The volume factor is |G_γ| / |C_γ Z| where C_γ = {δ ∈ Γ : δγδ⁻¹ ∈ γ(Z∩Γ)}
//! is the stabilizer of the class of γ modulo Z ∩ Γ. It agrees with
//! |G_γ| / |Γ_γ Z| whenever C_γ is the ordinary centralizer Γ_γ, and is the
//! value that makes the orbit sums match when it is not (for example Γ = G
//! the quaternion group with Z = {±1}, where i is conjugate to -i).

pub mod characters;
pub mod cyclo;
pub mod group;
pub mod models;

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use num_integer::Integer;
use rand::Rng;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
pub use characters::{character_table, CharacterTable};
pub use cyclo::Cyc;
pub use group::Group;

/// A function G → C with exact cyclotomic values, indexed by element.
#[derive(Clone, Debug, PartialEq)]
pub struct TestFunction {
    values: Vec<Cyc>,
}

impl TestFunction {
    pub fn new(values: Vec<Cyc>) -> Self {
        TestFunction { values }
    }

    pub fn zero(order: usize) -> Self {
        TestFunction { values: vec![Cyc::zero(); order] }
    }

    pub fn delta(order: usize, g: usize) -> Self {
        let mut f = TestFunction::zero(order);
        f.values[g] = Cyc::one();
        f
    }

    pub fn constant(order: usize, c: Cyc) -> Self {
        TestFunction { values: vec![c; order] }
    }

    /// Values a + bi with a, b uniform in [-bound, bound].
    pub fn random_gaussian<R: Rng>(order: usize, bound: i64, rng: &mut R) -> Self {
        let values = (0..order)
            .map(|_| Cyc::gaussian(rng.gen_range(-bound..=bound) as i128, rng.gen_range(-bound..=bound) as i128, 1))
            .collect();
        TestFunction { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn value(&self, g: usize) -> &Cyc {
        &self.values[g]
    }

    pub fn values(&self) -> &[Cyc] {
        &self.values
    }

    pub fn set(&mut self, g: usize, v: Cyc) {
        self.values[g] = v;
    }

    pub fn add(&self, o: &TestFunction) -> TestFunction {
        TestFunction { values: self.values.iter().zip(&o.values).map(|(a, b)| a.add(b)).collect() }
    }
}

/// A trace value together with the degenerate flag: when ω is nontrivial
/// on Z ∩ Γ the function space is zero and every trace is 0.
#[derive(Clone, Debug, PartialEq)]
pub struct Trace {
    pub value: Cyc,
    pub degenerate: bool,
}

impl Serialize for Trace {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(3))?;
        m.serialize_entry("value", &crate::wire::cyc_json(&self.value))?;
        m.serialize_entry("degenerate", &self.degenerate)?;
        m.end()
    }
}

/// One Γ-conjugacy class in (Z∩Γ)\Γ.
#[derive(Clone, Debug)]
pub struct OrbitData {
    /// Representative γ_O ∈ Γ.
    pub rep: usize,
    /// Representatives in Γ of the members of the class, one per Z∩Γ coset.
    pub members: Vec<usize>,
    pub centralizer_order: usize,
    /// |C_γ|, the stabilizer in Γ of the class of γ modulo Z ∩ Γ.
    pub class_stabilizer_order: usize,
    /// |Γ_γ|, the ordinary centralizer of γ in Γ.
    pub gamma_centralizer_order: usize,
    /// vol_O = |G_γ| / |C_γ Z| as (numerator, denominator).
    pub vol: (i128, i128),
    /// Representatives of G_γ\G.
    pub coset_reps: Vec<usize>,
}

impl OrbitData {
    pub fn vol_cyc(&self) -> Cyc {
        Cyc::rational(self.vol.0, self.vol.1)
    }
}

#[derive(Clone, Debug)]
pub struct OrbitTerm {
    pub orbit: usize,
    pub label: String,
    pub vol: Cyc,
    pub orbital_integral: Cyc,
    pub term: Cyc,
}

impl Serialize for OrbitTerm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(5))?;
        m.serialize_entry("orbit", &self.orbit)?;
        m.serialize_entry("representative", &self.label)?;
        m.serialize_entry("vol", &self.vol.to_string())?;
        m.serialize_entry("orbital_integral", &crate::wire::cyc_json(&self.orbital_integral))?;
        m.serialize_entry("term", &crate::wire::cyc_json(&self.term))?;
        m.end()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GeometricSide {
    pub total: Trace,
    pub terms: Vec<OrbitTerm>,
}

#[derive(Clone, Debug)]
pub struct SpectralEntry {
    /// Row of the character table.
    pub character: usize,
    pub degree: usize,
    pub multiplicity: u64,
    /// tr π(f) = Σ_g f(g) χ_π(g).
    pub trace: Cyc,
    pub contribution: Cyc,
}

impl Serialize for SpectralEntry {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(5))?;
        m.serialize_entry("character", &self.character)?;
        m.serialize_entry("degree", &self.degree)?;
        m.serialize_entry("multiplicity", &self.multiplicity)?;
        m.serialize_entry("trace", &crate::wire::cyc_json(&self.trace))?;
        m.serialize_entry("contribution", &crate::wire::cyc_json(&self.contribution))?;
        m.end()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Decomposition {
    pub entries: Vec<SpectralEntry>,
    pub total: Trace,
}

/// G, Γ, Z and ω: Z → μ_N given by exponents, ω(z) = exp(2πi·e(z)/N).
#[derive(Debug)]
pub struct FiniteModel {
    name: String,
    group: Group,
    gamma: Vec<usize>,
    z: Vec<usize>,
    omega_order: u32,
    omega_exp: Vec<u32>,
    in_gamma: Vec<bool>,
    degenerate: bool,
    /// For h ∈ ΓZ, the exponent of ω(z) in h = γz.
    phase: Vec<Option<u32>>,
    coset_of: Vec<usize>,
    coset_reps: Vec<usize>,
    /// For γ ∈ Γ, the smallest element of γ(Z∩Γ).
    gbar_key: Vec<usize>,
    gamma_bar: Vec<usize>,
    orbits: Vec<OrbitData>,
    orbit_of_key: BTreeMap<usize, usize>,
    table: OnceLock<std::result::Result<CharacterTable, Error>>,
}

impl Clone for FiniteModel {
    fn clone(&self) -> Self {
        FiniteModel::build(
            self.name.clone(),
            self.group.clone(),
            self.gamma.clone(),
            self.z.clone(),
            self.omega_order,
            self.omega_exp.clone(),
        )
        .expect("rebuilding a valid model")
    }
}

impl FiniteModel {
    /// Γ and Z are given by generators; ω by its exponents (mod `omega_order`)
    /// on generators of Z, extended multiplicatively. Generators of Z
    /// without a listed value get exponent 0.
    pub fn new(
        name: impl Into<String>,
        group: Group,
        gamma_gens: &[usize],
        z_gens: &[usize],
        omega_values: &[(usize, u32)],
        omega_order: u32,
    ) -> Result<FiniteModel> {
        let n = group.order();
        if omega_order == 0 {
            return Err(Error::InvalidModel("ω must have positive order".into()));
        }
        if gamma_gens.iter().chain(z_gens).any(|&g| g >= n) {
            return Err(Error::InvalidModel("generator outside the group".into()));
        }
        let z = group.subgroup(z_gens);
        if let Some(&bad) = z.iter().find(|&&x| !group.is_central(x)) {
            return Err(Error::InvalidModel(format!("{} is not central", group.label(bad))));
        }
        let mut gen_exp: BTreeMap<usize, u32> = z_gens.iter().map(|&g| (g, 0)).collect();
        for &(g, e) in omega_values {
            if !z.contains(&g) {
                return Err(Error::InvalidModel(format!("ω given on {} outside Z", group.label(g))));
            }
            gen_exp.insert(g, e % omega_order);
        }
        // Extend ω along the Cayley graph of Z and check consistency.
        let mut exp: Vec<Option<u32>> = vec![None; n];
        exp[group.identity()] = Some(0);
        let mut stack = vec![group.identity()];
        while let Some(a) = stack.pop() {
            for (&g, &e) in &gen_exp {
                let b = group.mul(a, g);
                let v = (exp[a].unwrap() + e) % omega_order;
                match exp[b] {
                    None => {
                        exp[b] = Some(v);
                        stack.push(b);
                    }
                    Some(w) if w != v => {
                        return Err(Error::InvalidModel("ω is not a homomorphism on Z".into()));
                    }
                    _ => {}
                }
            }
        }
        let omega_exp = exp.iter().map(|e| e.unwrap_or(0)).collect();
        let gamma = group.subgroup(gamma_gens);
        FiniteModel::build(name.into(), group, gamma, z, omega_order, omega_exp)
    }

    fn build(
        name: String,
        group: Group,
        gamma: Vec<usize>,
        z: Vec<usize>,
        omega_order: u32,
        omega_exp: Vec<u32>,
    ) -> Result<FiniteModel> {
        let n = group.order();
        let mut in_gamma = vec![false; n];
        gamma.iter().for_each(|&g| in_gamma[g] = true);
        let z_gamma: Vec<usize> = z.iter().copied().filter(|&x| in_gamma[x]).collect();
        let degenerate = z_gamma.iter().any(|&x| omega_exp[x] != 0);

        let mut phase = vec![None; n];
        for &g in &gamma {
            for &x in &z {
                phase[group.mul(g, x)] = Some(omega_exp[x]);
            }
        }
        let h: Vec<usize> = (0..n).filter(|&x| phase[x].is_some()).collect();
        let (coset_of, coset_reps) = group.right_cosets(&h);

        let mut gbar_key = vec![usize::MAX; n];
        for &g in &gamma {
            gbar_key[g] = z_gamma.iter().map(|&x| group.mul(g, x)).min().unwrap_or(g);
        }
        let gamma_bar: Vec<usize> = gamma.iter().copied().filter(|&g| gbar_key[g] == g).collect();

        let mut orbits = Vec::new();
        let mut orbit_of_key = BTreeMap::new();
        let z_order = z.len() as i128;
        for &key in &gamma_bar {
            if orbit_of_key.contains_key(&key) {
                continue;
            }
            let members: BTreeSet<usize> = gamma.iter().map(|&d| gbar_key[group.conj(group.inv(d), key)]).collect();
            let idx = orbits.len();
            members.iter().for_each(|&m| {
                orbit_of_key.insert(m, idx);
            });
            let stab: Vec<usize> = gamma
                .iter()
                .copied()
                .filter(|&d| gbar_key[group.conj(group.inv(d), key)] == key)
                .collect();
            let stab_cap_z = stab.iter().filter(|&&d| z.binary_search(&d).is_ok()).count() as i128;
            let cz = stab.len() as i128 * z_order / stab_cap_z;
            let cent = group.centralizer(key);
            let gamma_cent = cent.iter().filter(|&&d| in_gamma[d]).count();
            let (_, reps) = group.right_cosets(&cent);
            let g = (cent.len() as i128).gcd(&cz);
            orbits.push(OrbitData {
                rep: key,
                members: members.into_iter().collect(),
                centralizer_order: cent.len(),
                class_stabilizer_order: stab.len(),
                gamma_centralizer_order: gamma_cent,
                vol: (cent.len() as i128 / g, cz / g),
                coset_reps: reps,
            });
        }

        Ok(FiniteModel {
            name,
            group,
            gamma,
            z,
            omega_order,
            omega_exp,
            in_gamma,
            degenerate,
            phase,
            coset_of,
            coset_reps,
            gbar_key,
            gamma_bar,
            orbits,
            orbit_of_key,
            table: OnceLock::new(),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn gamma(&self) -> &[usize] {
        &self.gamma
    }

    pub fn center(&self) -> &[usize] {
        &self.z
    }

    pub fn omega(&self, z: usize) -> Cyc {
        Cyc::root(self.omega_order, self.omega_exp[z] as i64)
    }

    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    pub fn in_gamma(&self, g: usize) -> bool {
        self.in_gamma[g]
    }

    /// Dimension of the function space, |ΓZ\G| (0 when degenerate).
    pub fn dimension(&self) -> usize {
        if self.degenerate {
            0
        } else {
            self.coset_reps.len()
        }
    }

    pub fn coset_reps(&self) -> &[usize] {
        &self.coset_reps
    }

    /// Representatives of (Z∩Γ)\Γ.
    pub fn gamma_bar(&self) -> &[usize] {
        &self.gamma_bar
    }

    pub fn orbits(&self) -> &[OrbitData] {
        &self.orbits
    }

    /// The orbit containing the class of γ ∈ Γ.
    pub fn orbit_of(&self, gamma: usize) -> Option<usize> {
        self.in_gamma
            .get(gamma)
            .filter(|&&b| b)
            .and_then(|_| self.orbit_of_key.get(&self.gbar_key[gamma]).copied())
    }

    pub fn orbit_label(&self, o: usize) -> String {
        format!("O{o}[{}]", self.group.label(self.orbits[o].rep))
    }

    fn check_function(&self, f: &TestFunction) -> Result<()> {
        if f.len() != self.group.order() {
            return Err(Error::ShapeMismatch(format!(
                "function has {} values for a group of order {}",
                f.len(),
                self.group.order()
            )));
        }
        Ok(())
    }

    fn zero_trace(&self) -> Trace {
        Trace { value: Cyc::zero(), degenerate: true }
    }

    /// f_ω(g) = Σ_{z ∈ Z} ω(z) f(zg).
    pub fn omega_average(&self, f: &TestFunction) -> Result<TestFunction> {
        self.check_function(f)?;
        let values = (0..self.group.order())
            .map(|g| {
                self.z.iter().fold(Cyc::zero(), |acc, &z| {
                    acc.add(&f.values[self.group.mul(z, g)].mul_root(self.omega_order, self.omega_exp[z] as i64))
                })
            })
            .collect();
        Ok(TestFunction { values })
    }

    /// φ_c(y) for the basis vector of coset c: ω(z) if y = γ z x_c, else 0.
    fn basis_value(&self, c: usize, y: usize) -> Option<u32> {
        if self.coset_of[y] != c {
            return None;
        }
        self.phase[self.group.mul(y, self.group.inv(self.coset_reps[c]))]
    }

    /// Matrix of R(f) in the coset basis: entry (c', c) is R(f)φ_c(x_{c'}).
    pub fn spectral_matrix(&self, f: &TestFunction) -> Result<Vec<Vec<Cyc>>> {
        self.check_function(f)?;
        let d = self.dimension();
        let mut m = vec![vec![Cyc::zero(); d]; d];
        if self.degenerate {
            return Ok(m);
        }
        for (row, &x) in self.coset_reps.iter().enumerate() {
            for g in 0..self.group.order() {
                if f.values[g].is_zero_fast() {
                    continue;
                }
                let y = self.group.mul(x, g);
                let c = self.coset_of[y];
                let e = self.basis_value(c, y).expect("y lies in its own coset");
                m[row][c] = m[row][c].add(&f.values[g].mul_root(self.omega_order, e as i64));
            }
        }
        Ok(m)
    }

    pub fn spectral_trace(&self, f: &TestFunction) -> Result<Trace> {
        if self.degenerate {
            self.check_function(f)?;
            return Ok(self.zero_trace());
        }
        let m = self.spectral_matrix(f)?;
        let value = (0..m.len()).fold(Cyc::zero(), |acc, i| acc.add(&m[i][i]));
        Ok(Trace { value, degenerate: false })
    }

    /// K_f(x, y) = Σ_{γ ∈ (Z∩Γ)\Γ} f_ω(x⁻¹γy), given f_ω.
    pub fn kernel(&self, f_omega: &TestFunction, x: usize, y: usize) -> Cyc {
        let xi = self.group.inv(x);
        self.gamma_bar.iter().fold(Cyc::zero(), |acc, &g| {
            acc.add(&f_omega.values[self.group.mul(self.group.mul(xi, g), y)])
        })
    }

    /// Σ_{x ∈ ΓZ\G} K_f(x, x).
    pub fn kernel_trace(&self, f: &TestFunction) -> Result<Trace> {
        let fw = self.omega_average(f)?;
        if self.degenerate {
            return Ok(self.zero_trace());
        }
        let value = self.coset_reps.iter().fold(Cyc::zero(), |acc, &x| acc.add(&self.kernel(&fw, x, x)));
        Ok(Trace { value, degenerate: false })
    }

    /// Φ(f_ω, γ) = Σ_{g ∈ reps} f_ω(g⁻¹γg) over representatives of G_γ\G.
    pub fn orbital_integral(&self, f_omega: &TestFunction, gamma: usize, reps: &[usize]) -> Cyc {
        reps.iter()
            .fold(Cyc::zero(), |acc, &g| acc.add(&f_omega.values[self.group.conj(g, gamma)]))
    }

    pub fn geometric_trace(&self, f: &TestFunction) -> Result<GeometricSide> {
        let fw = self.omega_average(f)?;
        if self.degenerate {
            return Ok(GeometricSide { total: self.zero_trace(), terms: Vec::new() });
        }
        let mut total = Cyc::zero();
        let mut terms = Vec::with_capacity(self.orbits.len());
        for (i, o) in self.orbits.iter().enumerate() {
            let phi = self.orbital_integral(&fw, o.rep, &o.coset_reps);
            let vol = o.vol_cyc();
            let term = phi.mul(&vol);
            total = total.add(&term);
            terms.push(OrbitTerm { orbit: i, label: self.orbit_label(i), vol, orbital_integral: phi, term });
        }
        Ok(GeometricSide { total: Trace { value: total, degenerate: false }, terms })
    }

    /// J_O = Σ_{x ∈ ΓZ\G} Σ_{γ ∈ O} f_ω(x⁻¹γx), straight from the kernel.
    pub fn orbit_sum(&self, f: &TestFunction, orbit: usize) -> Result<Cyc> {
        let fw = self.omega_average(f)?;
        let o = self
            .orbits
            .get(orbit)
            .ok_or_else(|| Error::pre(format!("no orbit {orbit}")))?;
        Ok(self.coset_reps.iter().fold(Cyc::zero(), |acc, &x| {
            o.members
                .iter()
                .fold(acc, |acc, &g| acc.add(&fw.values[self.group.conj(x, g)]))
        }))
    }

    pub fn character_table(&self) -> Result<&CharacterTable> {
        self.table
            .get_or_init(|| character_table(&self.group))
            .as_ref()
            .map_err(Clone::clone)
    }

    /// tr R(g) for a single element: the character of the representation R.
    pub fn character_of_r(&self, g: usize) -> Cyc {
        if self.degenerate {
            return Cyc::zero();
        }
        self.coset_reps.iter().enumerate().fold(Cyc::zero(), |acc, (c, &x)| {
            match self.basis_value(c, self.group.mul(x, g)) {
                Some(e) => acc.add(&Cyc::root(self.omega_order, e as i64)),
                None => acc,
            }
        })
    }

    /// Multiplicity of each irreducible character in R.
    pub fn multiplicities(&self) -> Result<Vec<u64>> {
        let t = self.character_table()?;
        let n = self.group.order();
        let char_r: Vec<Cyc> = (0..n).map(|g| self.character_of_r(g)).collect();
        (0..t.len())
            .map(|a| {
                let s = (0..n).fold(Cyc::zero(), |acc, g| acc.add(&char_r[g].mul(&t.value(a, g).conj())));
                let m = s.div_int(n as i128);
                match m.as_rational() {
                    Some((k, 1)) if k >= 0 => Ok(k as u64),
                    _ => Err(Error::Internal(format!("multiplicity {m} of character {a} is not a natural number"))),
                }
            })
            .collect()
    }

    /// The constituents of R with their multiplicities and traces, checked
    /// against the spectral trace.
    pub fn spectral_decomposition(&self, f: &TestFunction) -> Result<Decomposition> {
        let total = self.spectral_trace(f)?;
        if self.degenerate {
            return Ok(Decomposition { entries: Vec::new(), total });
        }
        let t = self.character_table()?;
        let mults = self.multiplicities()?;
        let mut entries = Vec::new();
        let mut sum = Cyc::zero();
        for (a, &m) in mults.iter().enumerate() {
            if m == 0 {
                continue;
            }
            let tr = (0..self.group.order()).fold(Cyc::zero(), |acc, g| {
                if f.values[g].is_zero_fast() {
                    acc
                } else {
                    acc.add(&f.values[g].mul(t.value(a, g)))
                }
            });
            let contribution = tr.mul_int(m as i128);
            sum = sum.add(&contribution);
            entries.push(SpectralEntry { character: a, degree: t.degree(a), multiplicity: m, trace: tr, contribution });
        }
        if sum != total.value {
            return Err(Error::Internal(format!(
                "decomposition sums to {sum}, spectral trace is {}",
                total.value
            )));
        }
        Ok(Decomposition { entries, total })
    }

    /// The same model on a relabelled copy of G, element g renamed to
    /// perm[g].
    pub fn transport(&self, perm: &[usize], name: impl Into<String>) -> Result<FiniteModel> {
        let group = self.group.relabel(perm)?;
        let mut gamma: Vec<usize> = self.gamma.iter().map(|&g| perm[g]).collect();
        gamma.sort_unstable();
        let mut z: Vec<usize> = self.z.iter().map(|&g| perm[g]).collect();
        z.sort_unstable();
        let mut omega_exp = vec![0u32; perm.len()];
        for (g, &e) in self.omega_exp.iter().enumerate() {
            omega_exp[perm[g]] = e;
        }
        FiniteModel::build(name.into(), group, gamma, z, self.omega_order, omega_exp)
    }
}

/// f'(perm[g]) = f(g).
pub fn transport_function(f: &TestFunction, perm: &[usize]) -> TestFunction {
    let mut values = vec![Cyc::zero(); f.len()];
    for (g, v) in f.values.iter().enumerate() {
        values[perm[g]] = v.clone();
    }
    TestFunction { values }
}

/// Orbit matching right → left induced by an isomorphism left → right
/// given as an element map.
pub fn matching_from_map(left: &FiniteModel, right: &FiniteModel, perm: &[usize]) -> Result<BTreeMap<usize, usize>> {
    let mut inverse = vec![usize::MAX; perm.len()];
    for (g, &p) in perm.iter().enumerate() {
        inverse[p] = g;
    }
    right
        .orbits()
        .iter()
        .enumerate()
        .map(|(i, o)| {
            left.orbit_of(inverse[o.rep])
                .map(|j| (i, j))
                .ok_or_else(|| Error::pre(format!("{} has no image orbit", right.orbit_label(i))))
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct MatchedTerm {
    pub left_orbit: String,
    pub right_orbit: String,
    #[serde(serialize_with = "crate::wire::ser_cyc")]
    pub term: Cyc,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComparisonReport {
    pub matched: Vec<MatchedTerm>,
    pub unmatched_left: Vec<String>,
    pub unmatched_right: Vec<String>,
    #[serde(serialize_with = "crate::wire::ser_cyc")]
    pub spectral_left: Cyc,
    #[serde(serialize_with = "crate::wire::ser_cyc")]
    pub spectral_right: Cyc,
    pub spectral_equal: bool,
}

/// Term-by-term comparison of the geometric sides of two models.
///
/// `matching` maps orbits of `right` to orbits of `left` injectively.
/// Matched terms must agree exactly, unmatched terms on either side must
/// vanish, and then the spectral traces must agree.
pub fn compare_models(
    left: &FiniteModel,
    right: &FiniteModel,
    matching: &BTreeMap<usize, usize>,
    f: &TestFunction,
    f_right: &TestFunction,
) -> Result<ComparisonReport> {
    if left.is_degenerate() || right.is_degenerate() {
        return Err(Error::IncompatibleCharacter);
    }
    let mut images = BTreeSet::new();
    for (&r, &l) in matching {
        if r >= right.orbits().len() || l >= left.orbits().len() {
            return Err(Error::pre(format!("matching pair ({r}, {l}) out of range")));
        }
        if !images.insert(l) {
            return Err(Error::pre(format!("matching is not injective at left orbit {l}")));
        }
    }
    let gl = left.geometric_trace(f)?;
    let gr = right.geometric_trace(f_right)?;
    let mut matched = Vec::new();
    for (&r, &l) in matching {
        let (a, b) = (&gl.terms[l].term, &gr.terms[r].term);
        if a != b {
            return Err(Error::TermMismatch {
                orbit: left.orbit_label(l),
                left: a.to_string(),
                right: b.to_string(),
            });
        }
        matched.push(MatchedTerm { left_orbit: left.orbit_label(l), right_orbit: right.orbit_label(r), term: a.clone() });
    }
    let mut unmatched_left = Vec::new();
    for t in &gl.terms {
        if !images.contains(&t.orbit) {
            if !t.term.is_zero() {
                return Err(Error::NonVanishingUnmatched {
                    orbit: t.label.clone(),
                    side: "left".into(),
                    value: t.term.to_string(),
                });
            }
            unmatched_left.push(t.label.clone());
        }
    }
    let mut unmatched_right = Vec::new();
    for t in &gr.terms {
        if !matching.contains_key(&t.orbit) {
            if !t.term.is_zero() {
                return Err(Error::NonVanishingUnmatched {
                    orbit: right.orbit_label(t.orbit),
                    side: "right".into(),
                    value: t.term.to_string(),
                });
            }
            unmatched_right.push(t.label.clone());
        }
    }
    let sl = left.spectral_trace(f)?.value;
    let sr = right.spectral_trace(f_right)?.value;
    if sl != sr {
        return Err(Error::Internal(format!(
            "geometric sides agree term by term but spectral traces differ: {sl} vs {sr}"
        )));
    }
    Ok(ComparisonReport { matched, unmatched_left, unmatched_right, spectral_left: sl, spectral_right: sr, spectral_equal: true })
}
