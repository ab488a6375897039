//! Finite groups given by a multiplication table.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};

/// Upper bound on the order of groups built from permutation generators.
pub const MAX_ORDER: usize = 5000;

#[derive(Clone, Debug)]
pub struct Group {
    n: usize,
    table: Vec<u32>,
    inv: Vec<u32>,
    id: usize,
    labels: Vec<String>,
    perm_index: HashMap<Vec<u32>, usize>,
}

fn cycle_notation(p: &[u32]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] as usize == start {
            continue;
        }
        let mut cyc = vec![start];
        seen[start] = true;
        let mut x = p[start] as usize;
        while x != start {
            seen[x] = true;
            cyc.push(x);
            x = p[x] as usize;
        }
        let parts: Vec<String> = cyc.iter().map(usize::to_string).collect();
        out.push_str(&format!("({})", parts.join(" ")));
    }
    if out.is_empty() {
        "()".into()
    } else {
        out
    }
}

fn compose(a: &[u32], b: &[u32]) -> Vec<u32> {
    // (a·b)(x) = a(b(x))
    b.iter().map(|&x| a[x as usize]).collect()
}

fn is_permutation(p: &[u32]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter().all(|&x| {
        let ok = (x as usize) < p.len() && !seen[x as usize];
        if ok {
            seen[x as usize] = true;
        }
        ok
    })
}

impl Group {
    /// The group generated by permutations of {0, ..., d-1}, with the
    /// product (ab)(x) = a(b(x)).
    pub fn from_permutations(gens: &[Vec<u32>]) -> Result<Group> {
        let d = gens.first().map_or(1, Vec::len);
        if gens.iter().any(|g| g.len() != d || !is_permutation(g)) {
            return Err(Error::InvalidModel("generators must be permutations of one common degree".into()));
        }
        let identity: Vec<u32> = (0..d as u32).collect();
        let mut elems = vec![identity.clone()];
        let mut index: HashMap<Vec<u32>, usize> = [(identity, 0)].into();
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in gens {
                let p = compose(&elems[i], g);
                if !index.contains_key(&p) {
                    if elems.len() >= MAX_ORDER {
                        return Err(Error::InvalidModel(format!("group order exceeds {MAX_ORDER}")));
                    }
                    index.insert(p.clone(), elems.len());
                    queue.push_back(elems.len());
                    elems.push(p);
                }
            }
        }
        let n = elems.len();
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = index[&compose(&elems[a], &elems[b])] as u32;
            }
        }
        let labels = elems.iter().map(|p| cycle_notation(p)).collect();
        let mut g = Group::assemble(n, table, 0, labels)?;
        g.perm_index = index;
        Ok(g)
    }

    /// A group from its Cayley table; rows and columns indexed 0..n.
    pub fn from_table(rows: &[Vec<usize>]) -> Result<Group> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(Error::InvalidModel("multiplication table must be square with entries in range".into()));
        }
        if n > MAX_ORDER {
            return Err(Error::InvalidModel(format!("group order exceeds {MAX_ORDER}")));
        }
        let table: Vec<u32> = rows.iter().flatten().map(|&x| x as u32).collect();
        let id = (0..n)
            .find(|&e| (0..n).all(|x| table[e * n + x] as usize == x && table[x * n + e] as usize == x))
            .ok_or_else(|| Error::InvalidModel("no identity element".into()))?;
        for a in 0..n {
            for b in 0..n {
                let ab = table[a * n + b] as usize;
                for c in 0..n {
                    let bc = table[b * n + c] as usize;
                    if table[ab * n + c] != table[a * n + bc] {
                        return Err(Error::InvalidModel(format!("not associative at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        let labels = (0..n).map(|i| format!("g{i}")).collect();
        Group::assemble(n, table, id, labels)
    }

    fn assemble(n: usize, table: Vec<u32>, id: usize, labels: Vec<String>) -> Result<Group> {
        let mut inv = vec![u32::MAX; n];
        for a in 0..n {
            if let Some(b) = (0..n).find(|&b| table[a * n + b] as usize == id) {
                inv[a] = b as u32;
            } else {
                return Err(Error::InvalidModel(format!("element {a} has no inverse")));
            }
        }
        Ok(Group { n, table, inv, id, labels, perm_index: HashMap::new() })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Group> {
        if labels.len() != self.n {
            return Err(Error::InvalidModel("one label per element required".into()));
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> usize {
        self.id
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// g⁻¹ x g.
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn element_of_perm(&self, p: &[u32]) -> Option<usize> {
        self.perm_index.get(p).copied()
    }

    pub fn is_permutation_group(&self) -> bool {
        !self.perm_index.is_empty()
    }

    /// Sorted list of elements of the subgroup generated by `gens`.
    pub fn subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.n];
        inside[self.id] = true;
        let mut queue = VecDeque::from([self.id]);
        while let Some(a) = queue.pop_front() {
            for &g in gens {
                let b = self.mul(a, g);
                if !inside[b] {
                    inside[b] = true;
                    queue.push_back(b);
                }
            }
        }
        (0..self.n).filter(|&a| inside[a]).collect()
    }

    pub fn is_central(&self, z: usize) -> bool {
        (0..self.n).all(|g| self.mul(z, g) == self.mul(g, z))
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.n).filter(|&z| self.is_central(z)).collect()
    }

    pub fn centralizer(&self, x: usize) -> Vec<usize> {
        (0..self.n).filter(|&g| self.mul(g, x) == self.mul(x, g)).collect()
    }

    pub fn element_order(&self, g: usize) -> usize {
        let (mut x, mut k) = (g, 1);
        while x != self.id {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn pow(&self, g: usize, k: usize) -> usize {
        (0..k).fold(self.id, |acc, _| self.mul(acc, g))
    }

    /// Conjugacy classes, the identity class first, each sorted, ordered by
    /// smallest element.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by_key(|&a| a != self.id);
        for a in order {
            if seen[a] {
                continue;
            }
            let mut cls: Vec<usize> = (0..self.n).map(|g| self.conj(g, a)).collect();
            cls.sort_unstable();
            cls.dedup();
            cls.iter().for_each(|&c| seen[c] = true);
            out.push(cls);
        }
        out
    }

    /// Right cosets H g of a subgroup: (coset index of every element,
    /// chosen representative of each coset).
    pub fn right_cosets(&self, h: &[usize]) -> (Vec<usize>, Vec<usize>) {
        let mut coset_of = vec![usize::MAX; self.n];
        let mut reps = Vec::new();
        for g in 0..self.n {
            if coset_of[g] != usize::MAX {
                continue;
            }
            let c = reps.len();
            reps.push(g);
            for &x in h {
                coset_of[self.mul(x, g)] = c;
            }
        }
        (coset_of, reps)
    }

    /// The same group with element i renamed to perm[i].
    pub fn relabel(&self, perm: &[usize]) -> Result<Group> {
        let n = self.n;
        let as_u32: Vec<u32> = perm.iter().map(|&x| x as u32).collect();
        if perm.len() != n || !is_permutation(&as_u32) {
            return Err(Error::InvalidModel("relabelling must be a permutation of the elements".into()));
        }
        let mut table = vec![0u32; n * n];
        let mut labels = vec![String::new(); n];
        for a in 0..n {
            labels[perm[a]] = self.labels[a].clone();
            for b in 0..n {
                table[perm[a] * n + perm[b]] = perm[self.mul(a, b)] as u32;
            }
        }
        Group::assemble(n, table, perm[self.id], labels)
    }

    /// G × H with (g, h) at index g·|H| + h.
    pub fn direct_product(&self, other: &Group) -> Group {
        let (n, m) = (self.n, other.n);
        let mut table = vec![0u32; n * m * n * m];
        for a in 0..n * m {
            for b in 0..n * m {
                let g = self.mul(a / m, b / m);
                let h = other.mul(a % m, b % m);
                table[a * n * m + b] = (g * m + h) as u32;
            }
        }
        let labels = (0..n * m)
            .map(|a| format!("({}, {})", self.labels[a / m], other.labels[a % m]))
            .collect();
        Group::assemble(n * m, table, self.id * m + other.id, labels).expect("product of groups")
    }
}
