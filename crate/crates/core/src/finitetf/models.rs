//! A small zoo of models used by the tests and the command line.

use super::group::Group;
use super::FiniteModel;

fn perm_elem(g: &Group, p: &[u32]) -> usize {
    g.element_of_perm(p).expect("generator belongs to the group")
}

/// 2×2 matrix over F_3 as a permutation of the eight nonzero vectors,
/// vector (x, y) at index x + 3y - 1.
fn f3_perm(m: [[i64; 2]; 2]) -> Vec<u32> {
    (1..9)
        .map(|idx| {
            let (x, y) = (idx % 3, idx / 3);
            let nx = (m[0][0] * x + m[0][1] * y).rem_euclid(3);
            let ny = (m[1][0] * x + m[1][1] * y).rem_euclid(3);
            (nx + 3 * ny - 1) as u32
        })
        .collect()
}

/// S₃ with Γ = A₃, trivial center.
pub fn s3_a3() -> FiniteModel {
    let g = Group::from_permutations(&[vec![1, 0, 2], vec![1, 2, 0]]).unwrap();
    let r = perm_elem(&g, &[1, 2, 0]);
    FiniteModel::new("S3/A3", g, &[r], &[], &[], 1).unwrap()
}

/// Z/4 with Γ trivial, Z = {0, 2} and ω(2) = -1.
pub fn z4_sign() -> FiniteModel {
    let g = Group::from_permutations(&[vec![1, 2, 3, 0]]).unwrap();
    let two = perm_elem(&g, &[2, 3, 0, 1]);
    FiniteModel::new("Z4/sign", g, &[], &[two], &[(two, 1)], 2).unwrap()
}

fn q8() -> (Group, usize, usize) {
    let i = vec![2, 3, 1, 0, 6, 7, 5, 4];
    let j = vec![4, 5, 7, 6, 1, 0, 2, 3];
    let g = Group::from_permutations(&[i.clone(), j.clone()]).unwrap();
    let (i, j) = (perm_elem(&g, &i), perm_elem(&g, &j));
    (g, i, j)
}

/// The quaternion group with Γ = G and Z = {±1}; here i is Γ-conjugate to
/// -i, so the class stabilizer is larger than the centralizer.
pub fn q8_full_center() -> FiniteModel {
    let (g, i, j) = q8();
    let minus = g.pow(i, 2);
    FiniteModel::new("Q8/full", g, &[i, j], &[minus], &[], 1).unwrap()
}

/// The quaternion group with Γ trivial, Z = {±1}, ω(-1) = -1.
pub fn q8_odd() -> FiniteModel {
    let (g, i, _) = q8();
    let minus = g.pow(i, 2);
    FiniteModel::new("Q8/odd", g, &[], &[minus], &[(minus, 1)], 2).unwrap()
}

/// SL(2, 3) with Γ the upper unipotent subgroup, Z = {±I}, ω(-I) = -1.
pub fn sl23_odd() -> FiniteModel {
    let u = f3_perm([[1, 1], [0, 1]]);
    let w = f3_perm([[0, -1], [1, 0]]);
    let g = Group::from_permutations(&[u.clone(), w]).unwrap();
    let u = perm_elem(&g, &u);
    let minus = perm_elem(&g, &f3_perm([[-1, 0], [0, -1]]));
    FiniteModel::new("SL(2,3)/unipotent", g, &[u], &[minus], &[(minus, 1)], 2).unwrap()
}

/// GL(2, 3) with Γ the upper Borel of {±1} × unipotent type, Z = {±I}, ω(-I) = -1.
pub fn gl23_odd() -> FiniteModel {
    let u = f3_perm([[1, 1], [0, 1]]);
    let d = f3_perm([[-1, 0], [0, 1]]);
    let w = f3_perm([[0, 1], [1, 0]]);
    let g = Group::from_permutations(&[u.clone(), d.clone(), w]).unwrap();
    let (u, d) = (perm_elem(&g, &u), perm_elem(&g, &d));
    let minus = perm_elem(&g, &f3_perm([[-1, 0], [0, -1]]));
    FiniteModel::new("GL(2,3)/borel", g, &[u, d], &[minus], &[(minus, 1)], 2).unwrap()
}

/// C₃ × S₃ with Z = C₃ × 1 carrying a character of order 3 and Γ generated
/// by a transposition of the S₃ factor.
pub fn c3_s3() -> FiniteModel {
    let c = vec![1, 2, 0, 3, 4, 5];
    let s = vec![0, 1, 2, 4, 3, 5];
    let r = vec![0, 1, 2, 4, 5, 3];
    let g = Group::from_permutations(&[c.clone(), s.clone(), r]).unwrap();
    let (c, s) = (perm_elem(&g, &c), perm_elem(&g, &s));
    FiniteModel::new("C3xS3/cubic", g, &[s], &[c], &[(c, 1)], 3).unwrap()
}

pub fn all_standard() -> Vec<FiniteModel> {
    vec![s3_a3(), z4_sign(), q8_full_center(), q8_odd(), sl23_odd(), gl23_odd(), c3_s3()]
}
