//! Writing a target matrix as a single commutator `[c, d] = c⁻¹d⁻¹cd`.

use std::collections::BTreeMap;

use crate::algebra::group_table::all_permutations;
use crate::algebra::MatFp;
use crate::element::GroupElement;
use crate::error::{Error, Result};

/// Largest block count for which the exhaustive search over signed
/// permutations is attempted.
pub const EXHAUSTIVE_LIMIT: usize = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CommutatorStrategy {
    /// Closed form first, then the monomial searches.
    Auto,
    /// Only `e_{u,v}^R = [e_{u,w}^R, e_{w,v}^1]`.
    ClosedForm,
    /// Only the searches over signed permutation matrices.
    Monomial,
}

/// Finds `(c, d)` with `[c, d] = target`, where `target` is an `n·l`
/// matrix read as `n×n` blocks. The pair is verified before it is
/// returned.
pub fn find_commutator_pair(
    target: &MatFp,
    blocks: usize,
    strategy: CommutatorStrategy,
) -> Result<(MatFp, MatFp)> {
    let dim = target.dim();
    let p = target.modulus();
    if blocks == 0 || !dim.is_multiple_of(blocks) {
        return Err(Error::InvalidArgument(format!(
            "{blocks} blocks do not divide dimension {dim}"
        )));
    }
    if target.is_identity() {
        let e = MatFp::identity(dim, p);
        return Ok((e.clone(), e));
    }
    let l = dim / blocks;
    let mut found = None;
    if strategy != CommutatorStrategy::Monomial {
        found = closed_form(target, blocks, l);
    }
    if found.is_none() && strategy != CommutatorStrategy::ClosedForm {
        if let Some(t) = SignedPerm::from_matrix(target) {
            found = monomial_search(&t, blocks, l).map(|(c, d)| (c.to_matrix(p), d.to_matrix(p)));
        }
    }
    let (c, d) = found.ok_or_else(|| {
        Error::SearchExhausted(format!(
            "no commutator pair found for a target of size {dim} with {blocks} blocks"
        ))
    })?;
    if c.commutator(&d) != *target {
        return Err(Error::IdentityFailed("commutator pair failed verification".into()));
    }
    Ok((c, d))
}

fn closed_form(target: &MatFp, n: usize, l: usize) -> Option<(MatFp, MatFp)> {
    if n < 3 {
        return None;
    }
    let p = target.modulus();
    let id = MatFp::identity(l, p);
    let zero = MatFp::zeros(l, p);
    let mut off = None;
    for bi in 0..n {
        for bj in 0..n {
            let b = target.block(bi, bj, l);
            let expected = if bi == bj { &id } else { &zero };
            if b != *expected {
                if bi == bj || off.is_some() {
                    return None;
                }
                off = Some((bi, bj, b));
            }
        }
    }
    let (u, v, r) = off?;
    let w = (0..n).find(|&w| w != u && w != v)?;
    let mut c = MatFp::identity(n * l, p);
    c.set_block(u, w, &r);
    let mut d = MatFp::identity(n * l, p);
    d.set_block(w, v, &id);
    Some((c, d))
}

/// A signed permutation matrix: column `k` is `±e_{img[k]}`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct SignedPerm {
    img: Vec<usize>,
    neg: Vec<bool>,
}

impl SignedPerm {
    fn identity(n: usize) -> Self {
        SignedPerm {
            img: (0..n).collect(),
            neg: vec![false; n],
        }
    }

    fn from_matrix(m: &MatFp) -> Option<Self> {
        let n = m.dim();
        let p = m.modulus();
        let mut img = vec![usize::MAX; n];
        let mut neg = vec![false; n];
        let mut row_used = vec![false; n];
        for k in 0..n {
            for i in 0..n {
                let v = m.get(i, k);
                if v == 0 {
                    continue;
                }
                if img[k] != usize::MAX || row_used[i] || (v != 1 && v != p - 1) {
                    return None;
                }
                img[k] = i;
                row_used[i] = true;
                neg[k] = v != 1;
            }
            if img[k] == usize::MAX {
                return None;
            }
        }
        Some(SignedPerm { img, neg })
    }

    fn to_matrix(&self, p: u32) -> MatFp {
        let n = self.img.len();
        let mut m = MatFp::zeros(n, p);
        for k in 0..n {
            m.set(self.img[k], k, if self.neg[k] { p - 1 } else { 1 });
        }
        m
    }

    /// Matrix product `self · other`.
    fn mul(&self, other: &Self) -> Self {
        let n = self.img.len();
        let mut img = vec![0; n];
        let mut neg = vec![false; n];
        for k in 0..n {
            let j = other.img[k];
            img[k] = self.img[j];
            neg[k] = other.neg[k] ^ self.neg[j];
        }
        SignedPerm { img, neg }
    }

    fn inverse(&self) -> Self {
        let n = self.img.len();
        let mut img = vec![0; n];
        let mut neg = vec![false; n];
        for k in 0..n {
            img[self.img[k]] = k;
            neg[self.img[k]] = self.neg[k];
        }
        SignedPerm { img, neg }
    }

    fn commutator(&self, other: &Self) -> Self {
        self.inverse().mul(&other.inverse()).mul(self).mul(other)
    }

    /// Cycles as `(points, sign product is negative)`, fixed points with a
    /// positive sign omitted when `skip_trivial` is set.
    fn cycles(&self, skip_trivial: bool) -> Vec<(Vec<usize>, bool)> {
        let n = self.img.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut pts = Vec::new();
            let mut sign = false;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                pts.push(x);
                sign ^= self.neg[x];
                x = self.img[x];
            }
            if skip_trivial && pts.len() == 1 && !sign {
                continue;
            }
            out.push((pts, sign));
        }
        out
    }

    fn class(&self) -> Vec<(usize, bool)> {
        let mut c: Vec<(usize, bool)> =
            self.cycles(false).iter().map(|(pts, s)| (pts.len(), *s)).collect();
        c.sort_unstable();
        c
    }

    /// Tensor with `I_l`, block `b` going to points `b·l .. b·l + l`.
    fn inflate(&self, l: usize) -> Self {
        let n = self.img.len();
        let mut img = Vec::with_capacity(n * l);
        let mut neg = Vec::with_capacity(n * l);
        for b in 0..n {
            for r in 0..l {
                img.push(self.img[b] * l + r);
                neg.push(self.neg[b]);
            }
        }
        SignedPerm { img, neg }
    }

    /// Inverse of `inflate`, when `self` has that shape.
    fn deflate(&self, l: usize) -> Option<Self> {
        let n = self.img.len() / l;
        let mut img = vec![0; n];
        let mut neg = vec![false; n];
        for b in 0..n {
            let base = self.img[b * l];
            if !base.is_multiple_of(l) {
                return None;
            }
            img[b] = base / l;
            neg[b] = self.neg[b * l];
            for r in 1..l {
                if self.img[b * l + r] != base + r || self.neg[b * l + r] != neg[b] {
                    return None;
                }
            }
        }
        Some(SignedPerm { img, neg })
    }
}

/// A signed bijection `s` with `s·u·s⁻¹ = v` on the points of the given
/// cycles of `u` and `v`, which must have equal length and sign product.
fn align_cycle(
    s: &mut SignedPerm,
    u: &SignedPerm,
    v: &SignedPerm,
    cu: &[usize],
    cv: &[usize],
) {
    // s e_{x_k} = τ_k e_{y_k}; s u = v s forces τ_{k+1} = τ_k·η_k·ε_k.
    let mut tau = false;
    for k in 0..cu.len() {
        let (x, y) = (cu[k], cv[k]);
        s.img[x] = y;
        s.neg[x] = tau;
        tau ^= u.neg[x] ^ v.neg[y];
    }
}

/// A signed permutation `s` with `s·u·s⁻¹ = v`, if `u` and `v` are
/// conjugate.
fn conjugator(u: &SignedPerm, v: &SignedPerm) -> Option<SignedPerm> {
    let mut pool: BTreeMap<(usize, bool), Vec<Vec<usize>>> = BTreeMap::new();
    for (pts, sign) in v.cycles(false) {
        pool.entry((pts.len(), sign)).or_default().push(pts);
    }
    let mut s = SignedPerm::identity(u.img.len());
    for (pts, sign) in u.cycles(false) {
        let cv = pool.get_mut(&(pts.len(), sign))?.pop()?;
        align_cycle(&mut s, u, v, &pts, &cv);
    }
    Some(s)
}

fn monomial_search(t: &SignedPerm, blocks: usize, l: usize) -> Option<(SignedPerm, SignedPerm)> {
    if blocks <= EXHAUSTIVE_LIMIT {
        if let Some(tb) = t.deflate(l) {
            if let Some((c, d)) = exhaustive(&tb) {
                return Some((c.inflate(l), d.inflate(l)));
            }
        }
    }
    if t.img.len() <= EXHAUSTIVE_LIMIT {
        if let Some(pair) = exhaustive(t) {
            return Some(pair);
        }
    }
    paired_cycles(t)
}

/// Runs over all signed permutations `c` and solves `d⁻¹cd = c·t` by
/// aligning cycles whenever the two sides are conjugate.
fn exhaustive(t: &SignedPerm) -> Option<(SignedPerm, SignedPerm)> {
    let n = t.img.len();
    for img in all_permutations(n) {
        for mask in 0u32..(1 << n) {
            let c = SignedPerm {
                img: img.clone(),
                neg: (0..n).map(|k| mask >> k & 1 == 1).collect(),
            };
            let ct = c.mul(t);
            if ct.class() != c.class() {
                continue;
            }
            let d = conjugator(&ct, &c)?;
            if c.commutator(&d) == *t {
                return Some((c, d));
            }
        }
    }
    None
}

/// Pairs up cycles of `t` with equal length and sign product. For a pair
/// `(A, B)`, `c = t_A⁻¹` on `A` and `d` swaps `B` onto `A` conjugating
/// `t_B` to `t_A⁻¹`, so `[c, d] = t_A ⊕ t_B`.
fn paired_cycles(t: &SignedPerm) -> Option<(SignedPerm, SignedPerm)> {
    let n = t.img.len();
    let mut groups: BTreeMap<(usize, bool), Vec<Vec<usize>>> = BTreeMap::new();
    for (pts, sign) in t.cycles(true) {
        groups.entry((pts.len(), sign)).or_default().push(pts);
    }
    if groups.values().any(|g| g.len() % 2 == 1) {
        return None;
    }
    let tinv = t.inverse();
    let mut c = SignedPerm::identity(n);
    let mut d = SignedPerm::identity(n);
    for cycles in groups.values() {
        for pair in cycles.chunks(2) {
            let (a, b) = (&pair[0], &pair[1]);
            for &x in a {
                c.img[x] = tinv.img[x];
                c.neg[x] = tinv.neg[x];
            }
            // The cycle of t⁻¹ through A, listed in t⁻¹ order.
            let mut ca = Vec::with_capacity(a.len());
            let mut x = a[0];
            for _ in 0..a.len() {
                ca.push(x);
                x = tinv.img[x];
            }
            align_cycle(&mut d, t, &tinv, b, &ca);
            for &y in b {
                let x = d.img[y];
                d.img[x] = y;
                d.neg[x] = d.neg[y];
            }
        }
    }
    Some((c, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elementary::markings::{beta_flat, elem_flat};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn check(target: &MatFp, blocks: usize) -> (MatFp, MatFp) {
        let (c, d) = find_commutator_pair(target, blocks, CommutatorStrategy::Auto).unwrap();
        assert_eq!(c.commutator(&d), *target);
        (c, d)
    }

    #[test]
    fn identity_gives_trivial_pair() {
        let (c, d) = check(&MatFp::identity(4, 3), 4);
        assert!(c.is_identity() && d.is_identity());
    }

    #[test]
    fn closed_form_for_elementary_targets() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let r = MatFp::random(2, 5, &mut rng);
        let t = elem_flat(3, 1, 2, &r).unwrap();
        let (c, d) = check(&t, 3);
        assert_eq!(c, elem_flat(3, 1, 3, &r).unwrap());
        assert_eq!(d, elem_flat(3, 3, 2, &MatFp::identity(2, 5)).unwrap());
        assert!(find_commutator_pair(&t, 3, CommutatorStrategy::Monomial).is_err());
    }

    #[test]
    fn five_cycle_by_search() {
        let t = MatFp::permutation(7, &[1, 2, 3, 4, 0]);
        check(&t, 5);
    }

    #[test]
    fn odd_targets_exhaust_at_block_level() {
        // signed shift for even n has odd underlying permutation
        let t = beta_flat(4, 1, 3, true);
        assert!(matches!(
            find_commutator_pair(&t, 4, CommutatorStrategy::Auto),
            Err(Error::SearchExhausted(_))
        ));
        let t = MatFp::permutation(5, &[1, 0, 2]);
        assert!(find_commutator_pair(&t, 3, CommutatorStrategy::Auto).is_err());
    }

    #[test]
    fn inflated_shifts_split_by_pairing() {
        for (n, l, signed) in [(4, 2, true), (6, 4, true), (10, 2, true), (9, 2, false), (8, 6, true)] {
            check(&beta_flat(n, l, 3, signed), n);
        }
        for n in [3, 5, 7] {
            check(&beta_flat(n, 1, 5, false), n);
        }
    }

    #[test]
    fn random_even_signed_permutations() {
        use rand::seq::SliceRandom;
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut tried = 0;
        while tried < 40 {
            let n = rng.gen_range(3..=6);
            let mut img: Vec<usize> = (0..n).collect();
            img.shuffle(&mut rng);
            let t = SignedPerm {
                img,
                neg: (0..n).map(|_| rng.gen_bool(0.5)).collect(),
            };
            // commutators of signed permutations have even underlying
            // permutation and an even number of negative signs
            let even = t.cycles(false).iter().filter(|(c, _)| c.len() % 2 == 0).count() % 2 == 0;
            let negs = t.neg.iter().filter(|&&b| b).count() % 2 == 0;
            if !(even && negs) {
                continue;
            }
            tried += 1;
            check(&t.to_matrix(7), n);
        }
    }
}
