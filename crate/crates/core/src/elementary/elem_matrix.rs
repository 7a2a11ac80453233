use std::hash::{Hash, Hasher};

use crate::algebra::{MatFp, Ring, RingElement};
use crate::element::GroupElement;
use crate::error::{Error, Result};

/// An `n×n` matrix over one of the entry rings. Indices in the public
/// constructors are 1-based.
#[derive(Clone, Debug)]
pub struct ElemMatrix {
    ring: Ring,
    n: usize,
    entries: Vec<RingElement>,
}

impl PartialEq for ElemMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.entries == other.entries
    }
}

impl Eq for ElemMatrix {}

impl Hash for ElemMatrix {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.entries.hash(state);
    }
}

impl ElemMatrix {
    pub fn identity(ring: &Ring, n: usize) -> Self {
        let mut entries = vec![ring.zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = ring.one();
        }
        ElemMatrix {
            ring: ring.clone(),
            n,
            entries,
        }
    }

    pub fn from_entries(ring: &Ring, n: usize, entries: Vec<RingElement>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch(n * n, entries.len()));
        }
        if entries.iter().any(|e| e.ring() != *ring) {
            return Err(Error::RingMismatch);
        }
        Ok(ElemMatrix {
            ring: ring.clone(),
            n,
            entries,
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry at 1-based position `(i, j)`.
    pub fn entry(&self, i: usize, j: usize) -> &RingElement {
        &self.entries[(i - 1) * self.n + (j - 1)]
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(self.n, other.n));
        }
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = self.ring.zero();
                for k in 0..n {
                    let a = &self.entries[i * n + k];
                    let b = &other.entries[k * n + j];
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = acc.add(&a.mul(b)?)?;
                }
                entries.push(acc);
            }
        }
        Ok(ElemMatrix {
            ring: self.ring.clone(),
            n,
            entries,
        })
    }

    /// The `nl×nl` matrix over F_p, block `(u, v)` being the flattened entry.
    pub fn flatten(&self) -> MatFp {
        let l = self.ring.flat_dim();
        let n = self.n;
        let mut out = MatFp::zeros(n * l, self.ring.modulus());
        for u in 0..n {
            for v in 0..n {
                let e = &self.entries[u * n + v];
                if !e.is_zero() {
                    out.set_block(u, v, &e.flatten());
                }
            }
        }
        out
    }

    pub fn unflatten(ring: &Ring, n: usize, m: &MatFp) -> Result<Self> {
        let l = ring.flat_dim();
        if m.dim() != n * l {
            return Err(Error::DimensionMismatch(n * l, m.dim()));
        }
        let mut entries = Vec::with_capacity(n * n);
        for u in 0..n {
            for v in 0..n {
                entries.push(ring.unflatten(&m.block(u, v, l))?);
            }
        }
        Ok(ElemMatrix {
            ring: ring.clone(),
            n,
            entries,
        })
    }

    pub fn inverse(&self) -> Result<Self> {
        let inv = self.flatten().inverse().map_err(|_| Error::NotUnit)?;
        Self::unflatten(&self.ring, self.n, &inv)
    }
}

impl GroupElement for ElemMatrix {
    fn op(&self, other: &Self) -> Self {
        self.checked_mul(other).expect("elementary matrices over one ring")
    }

    fn inv(&self) -> Self {
        self.inverse().expect("group elements are invertible")
    }

    fn identity_like(&self) -> Self {
        ElemMatrix::identity(&self.ring, self.n)
    }
}

fn check_positions(n: usize, idx: &[usize]) -> Result<()> {
    for &i in idx {
        if i == 0 || i > n {
            return Err(Error::InvalidArgument(format!("index {i} outside 1..={n}")));
        }
    }
    Ok(())
}

/// The elementary matrix `e_{i,j}^r`: identity plus `r` at `(i, j)`.
pub fn elem(i: usize, j: usize, r: &RingElement, n: usize) -> Result<ElemMatrix> {
    check_positions(n, &[i, j])?;
    if i == j {
        return Err(Error::InvalidArgument(format!(
            "elementary matrix needs distinct indices, got ({i}, {j})"
        )));
    }
    let mut m = ElemMatrix::identity(&r.ring(), n);
    m.entries[(i - 1) * n + (j - 1)] = r.clone();
    Ok(m)
}

/// `diag(r1, r2)` padded with the identity up to size `n`.
pub fn dmat_padded(r1: &RingElement, r2: &RingElement, n: usize) -> Result<ElemMatrix> {
    if n < 2 {
        return Err(Error::InvalidArgument("dmat needs n >= 2".into()));
    }
    if r1.ring() != r2.ring() {
        return Err(Error::RingMismatch);
    }
    if !r1.is_unit() || !r2.is_unit() {
        return Err(Error::NotUnit);
    }
    let mut m = ElemMatrix::identity(&r1.ring(), n);
    m.entries[0] = r1.clone();
    m.entries[n + 1] = r2.clone();
    Ok(m)
}

/// The 2×2 block-diagonal matrix `diag(r1, r2)`.
pub fn dmat(r1: &RingElement, r2: &RingElement) -> Result<ElemMatrix> {
    dmat_padded(r1, r2, 2)
}

/// Evaluates `e12^r e21^{-r⁻¹} e12^r e12^{-1} e21^1 e12^{-1}` and checks
/// that it equals `diag(r, r⁻¹)`.
pub fn order2_word(r: &RingElement) -> Result<ElemMatrix> {
    let ring = r.ring();
    let ri = r.inverse()?;
    let one = ring.one();
    let factors = [
        elem(1, 2, r, 2)?,
        elem(2, 1, &ri.neg(), 2)?,
        elem(1, 2, r, 2)?,
        elem(1, 2, &one.neg(), 2)?,
        elem(2, 1, &one, 2)?,
        elem(1, 2, &one.neg(), 2)?,
    ];
    let mut acc = ElemMatrix::identity(&ring, 2);
    for f in &factors {
        acc = acc.checked_mul(f)?;
    }
    if acc != dmat(r, &ri)? {
        return Err(Error::IdentityFailed(format!(
            "six-factor word differs from diag(r, r^-1) for r = {r:?}"
        )));
    }
    Ok(acc)
}

/// Checks `[e_{i,j}^{r1}, e_{j,k}^{r2}] = e_{i,k}^{r1 r2}` and returns it.
pub fn sharp_commutator(
    i: usize,
    j: usize,
    k: usize,
    r1: &RingElement,
    r2: &RingElement,
    n: usize,
) -> Result<ElemMatrix> {
    check_positions(n, &[i, j, k])?;
    if i == j || j == k || i == k {
        return Err(Error::InvalidArgument(format!(
            "indices ({i}, {j}, {k}) are not pairwise distinct"
        )));
    }
    let a = elem(i, j, r1, n)?;
    let b = elem(j, k, r2, n)?;
    let c = a.commutator(&b);
    let expected = elem(i, k, &r1.mul(r2)?, n)?;
    if c != expected {
        return Err(Error::IdentityFailed(format!(
            "commutator relation fails at ({i}, {j}, {k})"
        )));
    }
    Ok(c)
}

/// Sign convention for the cyclic-shift matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BetaSign {
    /// Signed for even `n`, unsigned for odd `n`; always determinant 1.
    Auto,
    /// Top-right entry `-1`.
    Signed,
    /// Top-right entry `+1`.
    Unsigned,
}

impl BetaSign {
    pub fn resolve(self, n: usize) -> bool {
        match self {
            BetaSign::Auto => n.is_multiple_of(2),
            BetaSign::Signed => true,
            BetaSign::Unsigned => false,
        }
    }
}

/// The cyclic shift `e_k ↦ e_{k+1}` with top-right entry `-1` (signed)
/// or `+1` (unsigned). Its scalar determinant is `(-1)^n` when signed and
/// `(-1)^(n-1)` when unsigned.
pub fn beta(ring: &Ring, n: usize, signed: bool) -> Result<ElemMatrix> {
    if n < 2 {
        return Err(Error::InvalidArgument("beta needs n >= 2".into()));
    }
    let mut m = ElemMatrix {
        ring: ring.clone(),
        n,
        entries: vec![ring.zero(); n * n],
    };
    for k in 0..n - 1 {
        m.entries[(k + 1) * n + k] = ring.one();
    }
    m.entries[n - 1] = if signed { ring.one().neg() } else { ring.one() };
    Ok(m)
}

/// `beta` with the sign chosen by `sign`; an explicit choice whose
/// flattened determinant is not 1 is rejected.
pub fn beta_with(ring: &Ring, n: usize, sign: BetaSign) -> Result<ElemMatrix> {
    let b = beta(ring, n, sign.resolve(n))?;
    if sign != BetaSign::Auto {
        let det = b.flatten().determinant();
        if det != 1 {
            return Err(Error::InvalidArgument(format!(
                "{sign:?} shift of size {n} has determinant {det}, not 1"
            )));
        }
    }
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::GroupTable;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::sync::Arc;

    #[test]
    fn elem_basics() {
        let f5 = Ring::field(5).unwrap();
        assert_eq!(elem(1, 2, &f5.zero(), 3).unwrap(), ElemMatrix::identity(&f5, 3));
        let m = elem(1, 2, &f5.one(), 3).unwrap().flatten();
        assert_eq!(
            m,
            MatFp::from_rows(5, &[vec![1, 1, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap()
        );
        assert!(elem(2, 2, &f5.one(), 3).is_err());
        assert!(elem(1, 4, &f5.one(), 3).is_err());
    }

    #[test]
    fn elem_is_additive() {
        let ring = Ring::matrices(2, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..20 {
            let r = ring.random(&mut rng);
            let s = ring.random(&mut rng);
            let prod = elem(1, 2, &r, 3).unwrap().op(&elem(1, 2, &s, 3).unwrap());
            assert_eq!(prod, elem(1, 2, &r.add(&s).unwrap(), 3).unwrap());
            assert!(elem(1, 2, &r, 3).unwrap().op(&elem(1, 2, &r.neg(), 3).unwrap()).is_identity());
        }
    }

    #[test]
    fn dmat_examples() {
        let f5 = Ring::field(5).unwrap();
        assert!(dmat(&f5.one(), &f5.one()).unwrap().is_identity());
        let d = dmat(&f5.from_int(2), &f5.from_int(3)).unwrap();
        assert_eq!(d.flatten().determinant(), 1);
        assert_eq!(dmat(&f5.zero(), &f5.one()).unwrap_err(), Error::NotUnit);

        let (t, perms) = GroupTable::symmetric(3);
        let gr = Ring::group_ring(Arc::new(t), 3).unwrap();
        let w = gr.delta(perms.iter().position(|p| p == &vec![1, 0, 2]).unwrap()).unwrap();
        let d = dmat(&w, &w).unwrap();
        assert!(d.op(&d).is_identity());
    }

    #[test]
    fn order2_word_examples() {
        let f3 = Ring::field(3).unwrap();
        assert!(order2_word(&f3.one()).unwrap().is_identity());
        let f5 = Ring::field(5).unwrap();
        let d = order2_word(&f5.from_int(2)).unwrap();
        assert_eq!(d.entry(1, 1), &f5.from_int(2));
        assert_eq!(d.entry(2, 2), &f5.from_int(3));
        let m2 = Ring::matrices(2, 3).unwrap();
        let swap = m2.from_matrix(MatFp::permutation(3, &[1, 0])).unwrap();
        assert_eq!(order2_word(&swap).unwrap(), dmat(&swap, &swap).unwrap());
        assert_eq!(order2_word(&f5.zero()).unwrap_err(), Error::NotUnit);
    }

    #[test]
    fn sharp_commutator_examples() {
        let f3 = Ring::field(3).unwrap();
        assert!(sharp_commutator(1, 2, 3, &f3.zero(), &f3.one(), 3).unwrap().is_identity());
        // y = I + E12 and z = the cyclic permutation in Mat_3(F_2)
        let m3 = Ring::matrices(3, 2).unwrap();
        let y = m3
            .from_matrix(MatFp::identity(3, 2).checked_add(&MatFp::unit(3, 2, 0, 1)).unwrap())
            .unwrap();
        let z = m3.from_matrix(MatFp::permutation(2, &[1, 2, 0])).unwrap();
        let c = sharp_commutator(1, 2, 3, &y, &z, 3).unwrap();
        assert_eq!(c, elem(1, 3, &y.mul(&z).unwrap(), 3).unwrap());
        assert!(sharp_commutator(1, 2, 1, &y, &z, 3).is_err());
    }

    #[test]
    fn beta_determinants_and_conjugation() {
        let f3 = Ring::field(3).unwrap();
        assert_eq!(beta(&f3, 4, true).unwrap().flatten().determinant(), 1);
        assert_eq!(beta(&f3, 5, false).unwrap().flatten().determinant(), 1);
        assert_eq!(beta(&f3, 4, false).unwrap().flatten().determinant(), 2);
        assert!(beta_with(&f3, 4, BetaSign::Unsigned).is_err());
        assert!(beta_with(&f3, 5, BetaSign::Unsigned).is_ok());
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for signed in [true, false] {
            let b = beta(&f3, 5, signed).unwrap();
            for _ in 0..10 {
                let r = f3.random(&mut rng);
                let lhs = elem(1, 2, &r, 5).unwrap().conjugate_by(&b);
                assert_eq!(lhs, elem(2, 3, &r, 5).unwrap());
            }
        }
    }
}
