use std::collections::HashMap;

use crate::error::{Error, Result};

/// A finite group given by its full multiplication table. Index 0 is the
/// identity; `mul[a * order + b]` is the index of `a·b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupTable {
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
}

impl GroupTable {
    /// Builds a table from raw rows and validates the group axioms.
    pub fn from_table(order: usize, mul: Vec<u32>) -> Result<Self> {
        if order == 0 || mul.len() != order * order {
            return Err(Error::InvalidArgument(format!(
                "table of size {} does not match order {order}",
                mul.len()
            )));
        }
        if mul.iter().any(|&x| x as usize >= order) {
            return Err(Error::InvalidArgument("table entry out of range".into()));
        }
        for a in 0..order {
            if mul[a] as usize != a || mul[a * order] as usize != a {
                return Err(Error::InvalidArgument("index 0 is not the identity".into()));
            }
        }
        let mut inv = vec![u32::MAX; order];
        for a in 0..order {
            let mut seen = vec![false; order];
            for b in 0..order {
                let c = mul[a * order + b] as usize;
                if seen[c] {
                    return Err(Error::InvalidArgument(format!("row {a} is not a permutation")));
                }
                seen[c] = true;
                if c == 0 {
                    inv[a] = b as u32;
                }
            }
        }
        let t = GroupTable { order, mul, inv };
        // Associativity is cubic; only checked where it is cheap.
        if order <= 128 {
            for a in 0..order {
                for b in 0..order {
                    let ab = t.op(a, b);
                    for c in 0..order {
                        if t.op(ab, c) != t.op(a, t.op(b, c)) {
                            return Err(Error::InvalidArgument(format!(
                                "table is not associative at ({a},{b},{c})"
                            )));
                        }
                    }
                }
            }
        }
        Ok(t)
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// Z/n with index k standing for the residue k.
    pub fn cyclic(n: usize) -> Self {
        let mul = (0..n * n).map(|x| ((x / n + x % n) % n) as u32).collect();
        let inv = (0..n).map(|a| ((n - a) % n) as u32).collect();
        GroupTable { order: n, mul, inv }
    }

    /// Dihedral group of order 2m; index `i + m·e` stands for `r^i s^e`
    /// with `s r s = r⁻¹`.
    pub fn dihedral(m: usize) -> Self {
        let n = 2 * m;
        let decode = |x: usize| (x % m, x / m);
        let mut mul = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                let (i, e) = decode(a);
                let (j, f) = decode(b);
                // r^i s^e r^j s^f = r^(i ± j) s^(e+f)
                let k = if e == 0 { (i + j) % m } else { (i + m - j) % m };
                mul[a * n + b] = (k + m * ((e + f) % 2)) as u32;
            }
        }
        let mut inv = vec![0u32; n];
        for a in 0..n {
            inv[a] = (0..n).find(|&b| mul[a * n + b] == 0).unwrap() as u32;
        }
        GroupTable { order: n, mul, inv }
    }

    /// Sym(k) with elements in lexicographic order of their image arrays.
    pub fn symmetric(k: usize) -> (Self, Vec<Vec<usize>>) {
        let perms = all_permutations(k);
        let t = Self::from_perm_list(&perms);
        (t, perms)
    }

    /// Closure of the given permutations (image arrays of equal length),
    /// listed in BFS order from the identity.
    pub fn closure_of_permutations(gens: &[Vec<usize>]) -> Result<(Self, Vec<Vec<usize>>)> {
        let degree = gens.first().map_or(0, |g| g.len());
        if gens.iter().any(|g| g.len() != degree) {
            return Err(Error::InvalidArgument("permutations of unequal degree".into()));
        }
        let id: Vec<usize> = (0..degree).collect();
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut elems = vec![id.clone()];
        index.insert(id, 0);
        let mut head = 0;
        while head < elems.len() {
            let x = elems[head].clone();
            head += 1;
            for g in gens {
                let y: Vec<usize> = (0..degree).map(|i| x[g[i]]).collect();
                if !index.contains_key(&y) {
                    index.insert(y.clone(), elems.len());
                    elems.push(y);
                }
            }
        }
        Ok((Self::from_perm_list(&elems), elems))
    }

    // `perms` must be closed under composition with the identity first.
    fn from_perm_list(perms: &[Vec<usize>]) -> Self {
        let n = perms.len();
        let index: HashMap<&[usize], usize> =
            perms.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
        let degree = perms[0].len();
        let mut mul = vec![0u32; n * n];
        let mut buf = vec![0usize; degree];
        for (a, pa) in perms.iter().enumerate() {
            for (b, pb) in perms.iter().enumerate() {
                for x in 0..degree {
                    buf[x] = pa[pb[x]];
                }
                mul[a * n + b] = index[buf.as_slice()] as u32;
            }
        }
        let inv = (0..n)
            .map(|a| (0..n).find(|&b| mul[a * n + b] == 0).unwrap() as u32)
            .collect();
        GroupTable { order: n, mul, inv }
    }

    /// Direct product; the pair `(a, b)` sits at index `a·|other| + b`.
    pub fn direct_product(&self, other: &GroupTable) -> Self {
        let (n1, n2) = (self.order, other.order);
        let n = n1 * n2;
        let mut mul = vec![0u32; n * n];
        for x in 0..n {
            for y in 0..n {
                let a = self.op(x / n2, y / n2);
                let b = other.op(x % n2, y % n2);
                mul[x * n + y] = (a * n2 + b) as u32;
            }
        }
        let inv = (0..n)
            .map(|x| (self.inverse(x / n2) * n2 + other.inverse(x % n2)) as u32)
            .collect();
        GroupTable { order: n, mul, inv }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn op(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.op(x, a);
            k += 1;
        }
        k
    }

    pub fn power(&self, a: usize, e: i64) -> usize {
        let base = if e < 0 { self.inverse(a) } else { a };
        let mut acc = 0;
        for _ in 0..e.unsigned_abs() {
            acc = self.op(acc, base);
        }
        acc
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.op(a, b) == self.op(b, a)))
    }

    /// Size of the subgroup generated by `gens`.
    pub fn subgroup_order(&self, gens: &[usize]) -> usize {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut stack = vec![0usize];
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.op(x, g);
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count
    }

    pub fn generates(&self, gens: &[usize]) -> bool {
        self.subgroup_order(gens) == self.order
    }
}

/// Every permutation of `0..k` as an image array, in lexicographic order.
pub fn all_permutations(k: usize) -> Vec<Vec<usize>> {
    let mut perms = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        perms.push(cur.clone());
        if !next_permutation(&mut cur) {
            break;
        }
    }
    perms
}

fn next_permutation(v: &mut [usize]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let Some(i) = (0..n - 1).rev().find(|&i| v[i] < v[i + 1]) else {
        return false;
    };
    let j = (i + 1..n).rev().find(|&j| v[j] > v[i]).unwrap();
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}
