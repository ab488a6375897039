//! Irreducible characters of a finite group.
//!
//! Burnside's method: the normalized central characters are the common
//! eigenvectors of the class-multiplication matrices. The eigenvectors are
//! found numerically, then each value χ(g) is made exact by recovering the
//! eigenvalue multiplicities of ρ(g) from χ(1), χ(g), χ(g²), ... and
//! re-summing the corresponding roots of unity. The result is checked
//! against the orthogonality relations in exact arithmetic.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::cyclo::Cyc;
use super::group::Group;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct CharacterTable {
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    /// chars[a][i] = χ_a on class i.
    chars: Vec<Vec<Cyc>>,
    degrees: Vec<usize>,
}

impl CharacterTable {
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, g: usize) -> usize {
        self.class_of[g]
    }

    pub fn len(&self) -> usize {
        self.chars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chars.is_empty()
    }

    pub fn degree(&self, a: usize) -> usize {
        self.degrees[a]
    }

    /// χ_a(g).
    pub fn value(&self, a: usize, g: usize) -> &Cyc {
        &self.chars[a][self.class_of[g]]
    }

    pub fn row(&self, a: usize) -> &[Cyc] {
        &self.chars[a]
    }
}

const TRIES: usize = 20;
const ROUND_TOL: f64 = 1e-4;

/// Class multiplication coefficients a[j][i][k] = #{x ∈ C_j : x⁻¹ g_k ∈ C_i}.
fn class_coefficients(g: &Group, classes: &[Vec<usize>], class_of: &[usize]) -> Vec<Vec<Vec<f64>>> {
    let r = classes.len();
    let mut a = vec![vec![vec![0.0; r]; r]; r];
    for (k, ck) in classes.iter().enumerate() {
        let gk = ck[0];
        for (j, cj) in classes.iter().enumerate() {
            for &x in cj {
                let y = g.mul(g.inv(x), gk);
                a[j][class_of[y]][k] += 1.0;
            }
        }
    }
    a
}

fn null_vector(m: &DMatrix<Complex64>) -> Vec<Complex64> {
    let svd = m.clone().svd(false, true);
    let vt = svd.v_t.expect("requested V^T");
    let (idx, _) = svd
        .singular_values
        .iter()
        .enumerate()
        .fold((0, f64::INFINITY), |best, (i, &s)| if s < best.1 { (i, s) } else { best });
    vt.row(idx).iter().map(|z| z.conj()).collect()
}

/// Numeric central characters ω_χ(K_i) = |C_i| χ(g_i) / χ(1), one vector per
/// irreducible character.
fn central_characters(a: &[Vec<Vec<f64>>], rng: &mut ChaCha8Rng) -> Option<Vec<Vec<Complex64>>> {
    let r = a.len();
    let lambda: Vec<f64> = (0..r).map(|_| rng.gen_range(0.1..1.0)).collect();
    let m = DMatrix::<f64>::from_fn(r, r, |i, k| (0..r).map(|j| lambda[j] * a[j][i][k]).sum());
    let eig = m.clone().complex_eigenvalues();
    let eig: Vec<Complex64> = eig.iter().copied().collect();
    let scale = eig.iter().fold(1.0f64, |s, e| s.max(e.norm()));
    for i in 0..r {
        for j in i + 1..r {
            if (eig[i] - eig[j]).norm() < 1e-6 * scale {
                return None;
            }
        }
    }
    let mc = m.map(|x| Complex64::new(x, 0.0));
    let mut out = Vec::with_capacity(r);
    for &l in &eig {
        let shifted = &mc - DMatrix::<Complex64>::identity(r, r) * l;
        let v = null_vector(&shifted);
        if v[0].norm() < 1e-9 {
            return None;
        }
        let v0 = v[0];
        out.push(v.iter().map(|x| x / v0).collect());
    }
    Some(out)
}

pub fn character_table(g: &Group) -> Result<CharacterTable> {
    let classes = g.classes();
    let mut class_of = vec![0usize; g.order()];
    for (i, c) in classes.iter().enumerate() {
        for &x in c {
            class_of[x] = i;
        }
    }
    let a = class_coefficients(g, &classes, &class_of);
    let mut rng = ChaCha8Rng::seed_from_u64(0xc4a7);
    let centrals = (0..TRIES)
        .find_map(|_| central_characters(&a, &mut rng))
        .ok_or_else(|| Error::Internal("class matrices have no simple common eigenbasis".into()))?;

    let order = g.order() as f64;
    let sizes: Vec<f64> = classes.iter().map(|c| c.len() as f64).collect();
    let mut chars = Vec::new();
    let mut degrees = Vec::new();
    for w in &centrals {
        let s: f64 = w.iter().zip(&sizes).map(|(x, h)| x.norm_sqr() / h).sum();
        let d = (order / s).sqrt();
        let deg = d.round();
        if (d - deg).abs() > ROUND_TOL || deg < 1.0 {
            return Err(Error::Internal(format!("character degree {d} is not an integer")));
        }
        let numeric: Vec<Complex64> = w.iter().zip(&sizes).map(|(x, h)| x * deg / h).collect();
        chars.push(exactify(g, &classes, &class_of, &numeric, deg as usize)?);
        degrees.push(deg as usize);
    }

    // Trivial character first, then by degree, then by numeric values.
    let mut idx: Vec<usize> = (0..chars.len()).collect();
    let key = |a: usize| -> (usize, Vec<(i64, i64)>) {
        let vals = chars[a]
            .iter()
            .map(|c| {
                let z = c.to_c64();
                ((z.re * 1e6).round() as i64, (z.im * 1e6).round() as i64)
            })
            .collect();
        (degrees[a], vals)
    };
    idx.sort_by(|&x, &y| {
        let tx = chars[x].iter().all(|c| *c == Cyc::one());
        let ty = chars[y].iter().all(|c| *c == Cyc::one());
        ty.cmp(&tx).then_with(|| key(x).cmp(&key(y)))
    });
    let table = CharacterTable {
        classes,
        class_of,
        chars: idx.iter().map(|&i| chars[i].clone()).collect(),
        degrees: idx.iter().map(|&i| degrees[i]).collect(),
    };
    verify(g, &table)?;
    Ok(table)
}

/// Exact value of χ at each class from the eigenvalue multiplicities of ρ(g).
fn exactify(g: &Group, classes: &[Vec<usize>], class_of: &[usize], numeric: &[Complex64], deg: usize) -> Result<Vec<Cyc>> {
    let mut out = Vec::with_capacity(classes.len());
    for c in classes {
        let x = c[0];
        let o = g.element_order(x);
        let vals: Vec<Complex64> = (0..o).map(|k| numeric[class_of[g.pow(x, k)]]).collect();
        let mut value = Cyc::zero();
        let mut total = 0usize;
        for j in 0..o {
            let mult: Complex64 = vals
                .iter()
                .enumerate()
                .map(|(k, v)| v * Complex64::from_polar(1.0, -2.0 * std::f64::consts::PI * (j * k) as f64 / o as f64))
                .sum::<Complex64>()
                / o as f64;
            let r = mult.re.round();
            if (mult - Complex64::new(r, 0.0)).norm() > ROUND_TOL || r < 0.0 {
                return Err(Error::Internal(format!("eigenvalue multiplicity {mult} is not a natural number")));
            }
            total += r as usize;
            value = value.add(&Cyc::root(o as u32, j as i64).mul_int(r as i128));
        }
        if total != deg {
            return Err(Error::Internal("eigenvalue multiplicities do not add up to the degree".into()));
        }
        out.push(value);
    }
    Ok(out)
}

/// Σ_i |C_i| χ_a(g_i) conj χ_b(g_i) = |G| δ_ab, exactly.
fn verify(g: &Group, t: &CharacterTable) -> Result<()> {
    if t.chars.len() != t.classes.len() {
        return Err(Error::Internal("number of characters differs from number of classes".into()));
    }
    for a in 0..t.len() {
        for b in a..t.len() {
            let s = t
                .classes
                .iter()
                .enumerate()
                .fold(Cyc::zero(), |acc, (i, c)| {
                    acc.add(&t.chars[a][i].mul(&t.chars[b][i].conj()).mul_int(c.len() as i128))
                });
            let expected = if a == b { Cyc::int(g.order() as i128) } else { Cyc::zero() };
            if s != expected {
                return Err(Error::Internal(format!("orthogonality fails for characters {a}, {b}")));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_table() {
        let g = Group::from_permutations(&[vec![1, 0, 2], vec![1, 2, 0]]).unwrap();
        let t = character_table(&g).unwrap();
        let mut degs: Vec<usize> = (0..t.len()).map(|a| t.degree(a)).collect();
        degs.sort_unstable();
        assert_eq!(degs, vec![1, 1, 2]);
        assert!(t.row(0).iter().all(|c| *c == Cyc::one()));
    }

    #[test]
    fn cyclic_group_has_root_of_unity_values() {
        let g = Group::from_permutations(&[vec![1, 2, 3, 4, 0]]).unwrap();
        let t = character_table(&g).unwrap();
        assert_eq!(t.len(), 5);
        let gen = g.element_of_perm(&[1, 2, 3, 4, 0]).unwrap();
        let mut values: Vec<String> = (0..5).map(|a| t.value(a, gen).to_string()).collect();
        values.sort();
        assert!(values.contains(&"1".to_string()));
        assert!(values.iter().all(|v| v == "1" || v.contains("z5") || v.starts_with("-1")));
    }

    #[test]
    fn quaternion_group_degrees() {
        // Regular representation of Q8 on 8 points.
        let i = vec![2, 3, 1, 0, 6, 7, 5, 4];
        let j = vec![4, 5, 7, 6, 1, 0, 2, 3];
        let g = Group::from_permutations(&[i, j]).unwrap();
        assert_eq!(g.order(), 8);
        let t = character_table(&g).unwrap();
        let sum_sq: usize = (0..t.len()).map(|a| t.degree(a).pow(2)).sum();
        assert_eq!(sum_sq, 8);
        assert_eq!(t.len(), 5);
    }
}
