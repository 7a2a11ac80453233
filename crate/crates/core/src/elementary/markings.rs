//! Marking families of special linear groups, all stored flattened over F_p.

use crate::algebra::{check_prime, MatFp, Ring, RingElement};
use crate::element::GroupElement;
use crate::error::{Error, Result};
use crate::marked::MarkedGroup;

use super::elem_matrix::{beta, dmat_padded, BetaSign};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MarkingKind {
    /// `(t′1, t′2)`: elementary matrix and signed cyclic shift.
    Two,
    /// Eight elementary generators over the ring plus the shift.
    Nine,
    /// `(β1, β2, β3, β4)` from the quotient of E(n, F_p⟨y, z⟩).
    FourMu,
    /// Nine slots for a pipeline level and four for the other sizes.
    Thirteen,
    /// Amenable 4-marking for odd `n`.
    Sigma,
    /// `diag(ω, ω)` for involutions ω.
    Involutions,
}

impl MarkingKind {
    pub fn arity(self) -> Option<usize> {
        match self {
            MarkingKind::Two => Some(2),
            MarkingKind::Nine => Some(9),
            MarkingKind::FourMu | MarkingKind::Sigma => Some(4),
            MarkingKind::Thirteen => Some(13),
            MarkingKind::Involutions => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            MarkingKind::Two => "two-marking",
            MarkingKind::Nine => "nine-marking",
            MarkingKind::FourMu => "four-marking-mu",
            MarkingKind::Thirteen => "thirteen-marking",
            MarkingKind::Sigma => "sigma-marking",
            MarkingKind::Involutions => "involutions",
        }
    }
}

/// An ordered tuple of matrices in SL(n·l, F_p), where the entries were
/// built as `n×n` block matrices with `l×l` blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkingBundle {
    pub kind: MarkingKind,
    pub elements: Vec<MatFp>,
    pub blocks: usize,
    pub block_dim: usize,
}

impl MarkingBundle {
    pub fn new(
        kind: MarkingKind,
        elements: Vec<MatFp>,
        blocks: usize,
        block_dim: usize,
    ) -> Result<Self> {
        if let Some(k) = kind.arity() {
            if elements.len() != k {
                return Err(Error::ArityMismatch(k, elements.len()));
            }
        }
        let d = blocks * block_dim;
        if let Some(m) = elements.iter().find(|m| m.dim() != d) {
            return Err(Error::DimensionMismatch(d, m.dim()));
        }
        Ok(MarkingBundle {
            kind,
            elements,
            blocks,
            block_dim,
        })
    }

    pub fn arity(&self) -> usize {
        self.elements.len()
    }

    pub fn dim(&self) -> usize {
        self.blocks * self.block_dim
    }

    pub fn modulus(&self) -> u32 {
        self.elements.first().map_or(0, MatFp::modulus)
    }

    pub fn identity(&self) -> MatFp {
        MatFp::identity(self.dim(), self.modulus())
    }

    pub fn marked(&self) -> MarkedGroup<MatFp> {
        MarkedGroup::with_identity(self.identity(), self.elements.clone())
    }

    /// Determinants of all entries.
    pub fn determinants(&self) -> Vec<u32> {
        self.elements.iter().map(MatFp::determinant).collect()
    }

    pub fn all_in_sl(&self) -> bool {
        self.determinants().iter().all(|&d| d == 1)
    }
}

/// `e_{u,v}^B` flattened: identity of size `n·l` plus the block `B` at
/// 1-based block position `(u, v)`.
pub fn elem_flat(n: usize, u: usize, v: usize, block: &MatFp) -> Result<MatFp> {
    if u == v || u == 0 || v == 0 || u > n || v > n {
        return Err(Error::InvalidArgument(format!(
            "block position ({u}, {v}) invalid for n = {n}"
        )));
    }
    let l = block.dim();
    let mut m = MatFp::identity(n * l, block.modulus());
    m.set_block(u - 1, v - 1, block);
    Ok(m)
}

/// The cyclic shift over `Mat_l(F_p)` flattened: blocks `I` below the
/// diagonal and `∓I` in the top-right corner.
pub fn beta_flat(n: usize, l: usize, p: u32, signed: bool) -> MatFp {
    let mut m = MatFp::zeros(n * l, p);
    for k in 0..n - 1 {
        for r in 0..l {
            m.set((k + 1) * l + r, k * l + r, 1);
        }
    }
    let corner = if signed { p - 1 } else { 1 };
    for r in 0..l {
        m.set(r, (n - 1) * l + r, corner);
    }
    m
}

/// The images `(μ_i(b1), .., μ_i(b4))` in SL(n·i, F_p): `y` goes to the
/// elementary matrix `I + E_12` of `Mat_i` (to 1 when `i = 1`), `z` to the
/// cyclic permutation matrix, and `b4` is the shift signed by the parity
/// of `n`.
pub fn mu_images(i: usize, n: usize, p: u32) -> Result<MarkingBundle> {
    check_prime(p)?;
    if i == 0 || n < 2 {
        return Err(Error::InvalidArgument(format!("mu_images needs i >= 1 and n >= 2, got i = {i}, n = {n}")));
    }
    let one = MatFp::identity(i, p);
    let y = if i == 1 {
        one.clone()
    } else {
        let mut y = one.clone();
        y.set(0, 1, 1);
        y
    };
    let cyc: Vec<usize> = (0..i).map(|k| (k + 1) % i).collect();
    let z = MatFp::permutation(p, &cyc);
    let elements = vec![
        elem_flat(n, 1, 2, &one)?,
        elem_flat(n, 1, 2, &y)?,
        elem_flat(n, 1, 2, &z)?,
        beta_flat(n, i, p, BetaSign::Auto.resolve(n)),
    ];
    MarkingBundle::new(MarkingKind::FourMu, elements, n, i)
}

/// `(e_{1,2}^1, shift)` in SL(N, F_p), the shift signed for even `N` and
/// unsigned for odd `N` so that it has determinant 1.
pub fn amenable_two_marking(big_n: usize, p: u32) -> Result<MarkingBundle> {
    check_prime(p)?;
    if big_n < 3 {
        return Err(Error::InvalidArgument(format!("two-marking needs N >= 3, got {big_n}")));
    }
    let one = MatFp::identity(1, p);
    let elements = vec![
        elem_flat(big_n, 1, 2, &one)?,
        beta_flat(big_n, 1, p, BetaSign::Auto.resolve(big_n)),
    ];
    MarkingBundle::new(MarkingKind::Two, elements, big_n, 1)
}

/// The nine generators `e_{1,2}^x` for `x ∈ {x1, x2, x3, x4, x4⁻¹, x5,
/// x5⁻¹, x6}` plus the shift, after checking that the assignment respects
/// the relations `x1² = x2² = x3² = x6^{2p} = 1` and that `x4, x5` are
/// units.
pub fn nine_marking_images(x: &[RingElement; 6], n: usize) -> Result<MarkingBundle> {
    let ring = x[0].ring();
    if x.iter().any(|e| e.ring() != ring) {
        return Err(Error::RingMismatch);
    }
    if n < 3 {
        return Err(Error::InvalidArgument(format!("nine-marking needs n >= 3, got {n}")));
    }
    let p = ring.modulus();
    for (k, xi) in x[..3].iter().enumerate() {
        if !xi.pow(2)?.is_one() {
            return Err(Error::Relation(format!("x{} does not square to 1", k + 1)));
        }
    }
    if !x[5].pow(2 * p as i64)?.is_one() {
        return Err(Error::Relation(format!("x6^{} is not 1", 2 * p)));
    }
    let x4i = x[3]
        .inverse()
        .map_err(|_| Error::Relation("x4 is not a unit".into()))?;
    let x5i = x[4]
        .inverse()
        .map_err(|_| Error::Relation("x5 is not a unit".into()))?;
    let entries = [&x[0], &x[1], &x[2], &x[3], &x4i, &x[4], &x5i, &x[5]];
    let mut elements = Vec::with_capacity(9);
    for r in entries {
        elements.push(elem_flat(n, 1, 2, &r.flatten())?);
    }
    elements.push(beta(&ring, n, BetaSign::Auto.resolve(n))?.flatten());
    MarkingBundle::new(MarkingKind::Nine, elements, n, ring.flat_dim())
}

/// The 13-marking at size index `i`: the nine-marking followed by four
/// identities when `i` is a pipeline size, else nine identities followed by
/// the four-marking. Exactly one of the two inputs must be given.
pub fn thirteen_marking(
    i: usize,
    nine: Option<&MarkingBundle>,
    four: Option<&MarkingBundle>,
) -> Result<MarkingBundle> {
    let (active, leading) = match (nine, four) {
        (Some(b), None) => (b, true),
        (None, Some(b)) => (b, false),
        (Some(_), Some(_)) => {
            return Err(Error::InvalidArgument(format!(
                "index {i}: both the nine-marking and the four-marking are active"
            )))
        }
        (None, None) => {
            return Err(Error::InvalidArgument(format!(
                "index {i}: neither the nine-marking nor the four-marking is active"
            )))
        }
    };
    let expected = if leading { MarkingKind::Nine } else { MarkingKind::FourMu };
    if active.kind != expected {
        return Err(Error::InvalidArgument(format!(
            "index {i}: expected a {}, got a {}",
            expected.name(),
            active.kind.name()
        )));
    }
    let id = active.identity();
    let mut elements = Vec::with_capacity(13);
    if leading {
        elements.extend(active.elements.iter().cloned());
        elements.extend(std::iter::repeat_n(id, 4));
    } else {
        elements.extend(std::iter::repeat_n(id, 9));
        elements.extend(active.elements.iter().cloned());
    }
    MarkingBundle::new(MarkingKind::Thirteen, elements, active.blocks, active.block_dim)
}

/// The amenable 4-marking of SL(n·i, F_p) for odd `n`: `(α1, α2, e, e)`
/// for even `i` and `(e, e, α1, α2′)` for odd `i`.
pub fn sigma_marking(i: usize, n: usize, p: u32) -> Result<MarkingBundle> {
    check_prime(p)?;
    if n.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!(
            "sigma-marking is defined for odd n, got {n}"
        )));
    }
    if i == 0 || n < 3 {
        return Err(Error::InvalidArgument("sigma-marking needs i >= 1 and n >= 3".to_string()));
    }
    let big_n = n * i;
    let one = MatFp::identity(1, p);
    let a1 = elem_flat(big_n, 1, 2, &one)?;
    let id = MatFp::identity(big_n, p);
    let elements = if i.is_multiple_of(2) {
        vec![a1, beta_flat(big_n, 1, p, true), id.clone(), id]
    } else {
        vec![id.clone(), id, a1, beta_flat(big_n, 1, p, false)]
    };
    MarkingBundle::new(MarkingKind::Sigma, elements, big_n, 1)
}

/// `diag(ω, ω)` padded to size `n` for each involution ω.
pub fn embed_involution_group(omegas: &[RingElement], n: usize) -> Result<MarkingBundle> {
    let first = omegas
        .first()
        .ok_or_else(|| Error::InvalidArgument("no involutions given".into()))?;
    let ring: Ring = first.ring();
    let mut elements = Vec::with_capacity(omegas.len());
    for (k, w) in omegas.iter().enumerate() {
        if w.ring() != ring {
            return Err(Error::RingMismatch);
        }
        if !w.mul(w)?.is_one() {
            return Err(Error::Relation(format!("element {k} does not square to 1")));
        }
        elements.push(dmat_padded(w, w, n)?.flatten());
    }
    MarkingBundle::new(MarkingKind::Involutions, elements, n, ring.flat_dim())
}

/// True when every entry of the bundle is the identity.
pub fn is_trivial(bundle: &MarkingBundle) -> bool {
    bundle.elements.iter().all(GroupElement::is_identity)
}
