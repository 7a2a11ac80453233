//! Permutations of `0..N` and the transposition / right-multiplication
//! encoding of a finite group into its symmetric group.
//!
//! Composition is right to left: `(σ∘τ)(x) = σ(τ(x))`, and `σ.op(τ)` is
//! `σ∘τ`.

use std::fmt;

use crate::algebra::GroupTable;
use crate::element::GroupElement;
use crate::error::{Error, Result};
use crate::marked::MarkedGroup;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::InvalidArgument(format!(
                    "image array {images:?} is not a bijection"
                )));
            }
            seen[x] = true;
        }
        Ok(Permutation {
            images: images.into_iter().map(|x| x as u32).collect(),
        })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n as u32).collect(),
        }
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut p = Self::identity(n);
        p.images.swap(a, b);
        p
    }

    /// The cycle `c[0] -> c[1] -> ... -> c[0]`.
    pub fn cycle(n: usize, c: &[usize]) -> Self {
        let mut p = Self::identity(n);
        for (k, &x) in c.iter().enumerate() {
            p.images[x] = c[(k + 1) % c.len()] as u32;
        }
        p
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize).collect()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Permutation {
            images: other.images.iter().map(|&x| self.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    /// Cycle lengths in decreasing order, fixed points included.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = self.apply(x);
                len += 1;
            }
            out.push(len);
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut c = Vec::new();
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                c.push(x);
                x = self.apply(x);
            }
            out.push(c);
        }
        out
    }

    pub fn is_even(&self) -> bool {
        self.cycle_type().iter().map(|&l| l - 1).sum::<usize>() % 2 == 0
    }

    /// Parity by counting inversions; agrees with [`Self::is_even`].
    pub fn inversions(&self) -> usize {
        let n = self.degree();
        let mut count = 0;
        for i in 0..n {
            for j in i + 1..n {
                if self.images[i] > self.images[j] {
                    count += 1;
                }
            }
        }
        count
    }

    pub fn perm_order(&self) -> u64 {
        self.cycle_type()
            .into_iter()
            .fold(1u64, |acc, l| acc / gcd(acc, l as u64) * l as u64)
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(usize::to_string).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

impl GroupElement for Permutation {
    fn op(&self, other: &Self) -> Self {
        self.compose(other)
    }

    fn inv(&self) -> Self {
        self.inverse()
    }

    fn identity_like(&self) -> Self {
        Permutation::identity(self.degree())
    }

    fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }
}

/// The transposition swapping the identity (index 0) with `g`.
pub fn chi(g: usize, table: &GroupTable) -> Result<Permutation> {
    check_index(g, table)?;
    if g == 0 {
        return Err(Error::ChiOfIdentity);
    }
    Ok(Permutation::transposition(table.order(), 0, g))
}

/// Right multiplication `x ↦ x·g`. Note `theta(gh) = theta(h) ∘ theta(g)`.
pub fn theta(g: usize, table: &GroupTable) -> Result<Permutation> {
    check_index(g, table)?;
    let n = table.order();
    Ok(Permutation {
        images: (0..n).map(|x| table.op(x, g) as u32).collect(),
    })
}

fn check_index(g: usize, table: &GroupTable) -> Result<()> {
    if g < table.order() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "element index {g} out of range for a group of order {}",
            table.order()
        )))
    }
}

/// The 6-marking `(χ_{s1}, χ_{s2}, χ_{s3}, θ_{s1}, θ_{s2}, θ_{s3})` of Sym(L).
pub fn sym_six_marking(
    table: &GroupTable,
    s1: usize,
    s2: usize,
    s3: usize,
) -> Result<MarkedGroup<Permutation>> {
    let gens = [s1, s2, s3];
    for &s in &gens {
        check_index(s, table)?;
    }
    if table.order() < 5 {
        return Err(Error::SetTooSmall(table.order()));
    }
    if gens.contains(&0) {
        return Err(Error::ChiOfIdentity);
    }
    if !table.generates(&gens) {
        return Err(Error::NotGenerating);
    }
    let mut tuple = Vec::with_capacity(6);
    for &s in &gens {
        tuple.push(chi(s, table)?);
    }
    for &s in &gens {
        tuple.push(theta(s, table)?);
    }
    MarkedGroup::new(tuple)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::marked::enumerate_subgroup;

    #[test]
    fn chi_examples() {
        let z3 = GroupTable::cyclic(3);
        assert_eq!(chi(1, &z3).unwrap(), Permutation::new(vec![1, 0, 2]).unwrap());
        let z6 = GroupTable::cyclic(6);
        let c = chi(4, &z6).unwrap();
        assert_eq!(c, Permutation::transposition(6, 0, 4));
        assert_eq!(c.inversions() % 2, 1);
        assert!(!c.is_even());
        assert_eq!(chi(0, &z6), Err(Error::ChiOfIdentity));
        let (s3, _) = GroupTable::symmetric(3);
        for g in 1..6 {
            let c = chi(g, &s3).unwrap();
            assert!(c.op(&c).is_identity());
        }
    }

    #[test]
    fn theta_examples() {
        let z6 = GroupTable::cyclic(6);
        assert!(theta(0, &z6).unwrap().is_identity());
        assert_eq!(theta(1, &z6).unwrap(), Permutation::cycle(6, &[0, 1, 2, 3, 4, 5]));
        let d8 = GroupTable::dihedral(4);
        for g in 0..8 {
            assert_eq!(
                theta(g, &d8).unwrap().order(100),
                Some(d8.element_order(g) as u64)
            );
        }
    }

    #[test]
    fn parity_agrees_with_inversions() {
        let (_, perms) = GroupTable::symmetric(5);
        for p in perms {
            let p = Permutation::new(p).unwrap();
            assert_eq!(p.is_even(), p.inversions().is_multiple_of(2));
        }
    }

    #[test]
    fn six_marking_of_z6_generates_sym6() {
        // L = Z/6 with s1 = 2, s2 = 3 (together generating) and s3 = 1.
        let z6 = GroupTable::cyclic(6);
        let m = sym_six_marking(&z6, 2, 3, 1).unwrap();
        for g in &m.generators()[..3] {
            assert_eq!(g.order(10), Some(2));
        }
        assert_eq!(m.generators()[5].order(10), Some(6));
        assert_eq!(enumerate_subgroup(&m.generators(), 10_000).unwrap(), 720);
    }

    #[test]
    fn six_marking_preconditions() {
        let z6 = GroupTable::cyclic(6);
        assert_eq!(sym_six_marking(&z6, 2, 2, 2).unwrap_err(), Error::NotGenerating);
        assert_eq!(sym_six_marking(&z6, 0, 1, 1).unwrap_err(), Error::ChiOfIdentity);
        let z4 = GroupTable::cyclic(4);
        assert_eq!(sym_six_marking(&z4, 1, 1, 1).unwrap_err(), Error::SetTooSmall(4));
    }
}
