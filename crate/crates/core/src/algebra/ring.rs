use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use rand::Rng;

use super::fp::{check_prime, Fp};
use super::group_table::GroupTable;
use super::matrix::MatFp;
use crate::error::{Error, Result};

/// One of the finite unital rings used as entries of elementary matrices.
#[derive(Clone, Debug)]
pub enum Ring {
    Field(u32),
    MatrixAlgebra { dim: usize, p: u32 },
    GroupRing { group: Arc<GroupTable>, p: u32 },
}

fn same_table(a: &Arc<GroupTable>, b: &Arc<GroupTable>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Ring::Field(p), Ring::Field(q)) => p == q,
            (Ring::MatrixAlgebra { dim: d, p }, Ring::MatrixAlgebra { dim: e, p: q }) => {
                d == e && p == q
            }
            (Ring::GroupRing { group: g, p }, Ring::GroupRing { group: h, p: q }) => {
                p == q && same_table(g, h)
            }
            _ => false,
        }
    }
}

impl Eq for Ring {}

impl Ring {
    pub fn field(p: u32) -> Result<Self> {
        check_prime(p)?;
        Ok(Ring::Field(p))
    }

    pub fn matrices(dim: usize, p: u32) -> Result<Self> {
        check_prime(p)?;
        if dim == 0 {
            return Err(Error::InvalidArgument("matrix ring of dimension 0".into()));
        }
        Ok(Ring::MatrixAlgebra { dim, p })
    }

    pub fn group_ring(group: Arc<GroupTable>, p: u32) -> Result<Self> {
        check_prime(p)?;
        Ok(Ring::GroupRing { group, p })
    }

    pub fn modulus(&self) -> u32 {
        match self {
            Ring::Field(p) | Ring::MatrixAlgebra { p, .. } | Ring::GroupRing { p, .. } => *p,
        }
    }

    /// Dimension of the faithful matrix representation used for flattening.
    pub fn flat_dim(&self) -> usize {
        match self {
            Ring::Field(_) => 1,
            Ring::MatrixAlgebra { dim, .. } => *dim,
            Ring::GroupRing { group, .. } => group.order(),
        }
    }

    pub fn zero(&self) -> RingElement {
        self.from_int(0)
    }

    pub fn one(&self) -> RingElement {
        self.from_int(1)
    }

    pub fn from_int(&self, k: i64) -> RingElement {
        let p = self.modulus();
        let v = k.rem_euclid(p as i64) as u32;
        match self {
            Ring::Field(_) => RingElement::Scalar(Fp::from_raw(v, p)),
            Ring::MatrixAlgebra { dim, .. } => RingElement::Matrix(MatFp::scalar(*dim, p, v)),
            Ring::GroupRing { group, .. } => {
                let mut coeffs = vec![0u8; group.order()];
                coeffs[0] = v as u8;
                RingElement::Group(GroupRingElement {
                    group: group.clone(),
                    p,
                    coeffs,
                })
            }
        }
    }

    /// The basis element δ_g of a group ring.
    pub fn delta(&self, g: usize) -> Result<RingElement> {
        match self {
            Ring::GroupRing { group, p } => {
                if g >= group.order() {
                    return Err(Error::InvalidArgument(format!("group index {g} out of range")));
                }
                let mut coeffs = vec![0u8; group.order()];
                coeffs[g] = 1;
                Ok(RingElement::Group(GroupRingElement {
                    group: group.clone(),
                    p: *p,
                    coeffs,
                }))
            }
            _ => Err(Error::RingMismatch),
        }
    }

    pub fn from_matrix(&self, m: MatFp) -> Result<RingElement> {
        match self {
            Ring::MatrixAlgebra { dim, p } if m.dim() == *dim && m.modulus() == *p => {
                Ok(RingElement::Matrix(m))
            }
            _ => Err(Error::RingMismatch),
        }
    }

    pub fn group_element(&self, coeffs: &[i64]) -> Result<RingElement> {
        match self {
            Ring::GroupRing { group, p } if coeffs.len() == group.order() => {
                Ok(RingElement::Group(GroupRingElement {
                    group: group.clone(),
                    p: *p,
                    coeffs: coeffs.iter().map(|&c| c.rem_euclid(*p as i64) as u8).collect(),
                }))
            }
            _ => Err(Error::RingMismatch),
        }
    }

    /// An F_p-basis of the ring: 1, the matrix units E_ab, or the deltas.
    pub fn basis(&self) -> Vec<RingElement> {
        let p = self.modulus();
        match self {
            Ring::Field(_) => vec![self.one()],
            Ring::MatrixAlgebra { dim, .. } => {
                let mut out = Vec::with_capacity(dim * dim);
                for a in 0..*dim {
                    for b in 0..*dim {
                        out.push(RingElement::Matrix(MatFp::unit(*dim, p, a, b)));
                    }
                }
                out
            }
            Ring::GroupRing { group, .. } => {
                (0..group.order()).map(|g| self.delta(g).unwrap()).collect()
            }
        }
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> RingElement {
        let p = self.modulus();
        match self {
            Ring::Field(_) => RingElement::Scalar(Fp::from_raw(rng.gen_range(0..p), p)),
            Ring::MatrixAlgebra { dim, .. } => RingElement::Matrix(MatFp::random(*dim, p, rng)),
            Ring::GroupRing { group, .. } => RingElement::Group(GroupRingElement {
                group: group.clone(),
                p,
                coeffs: (0..group.order()).map(|_| rng.gen_range(0..p) as u8).collect(),
            }),
        }
    }

    pub fn random_unit<R: Rng + ?Sized>(&self, rng: &mut R) -> RingElement {
        loop {
            let x = self.random(rng);
            if x.is_unit() {
                return x;
            }
        }
    }

    /// Recovers a ring element from its flattened matrix. Only meaningful
    /// for matrices in the image of [`RingElement::flatten`].
    pub fn unflatten(&self, m: &MatFp) -> Result<RingElement> {
        if m.dim() != self.flat_dim() || m.modulus() != self.modulus() {
            return Err(Error::DimensionMismatch(self.flat_dim(), m.dim()));
        }
        let p = self.modulus();
        Ok(match self {
            Ring::Field(_) => RingElement::Scalar(Fp::from_raw(m.get(0, 0), p)),
            Ring::MatrixAlgebra { .. } => RingElement::Matrix(m.clone()),
            // L_a δ_e = a, so the element is the first column.
            Ring::GroupRing { group, .. } => RingElement::Group(GroupRingElement {
                group: group.clone(),
                p,
                coeffs: (0..group.order()).map(|g| m.get(g, 0) as u8).collect(),
            }),
        })
    }
}

/// An element of F_p[G] with dense coefficients indexed by the table.
#[derive(Clone)]
pub struct GroupRingElement {
    group: Arc<GroupTable>,
    p: u32,
    coeffs: Vec<u8>,
}

impl GroupRingElement {
    pub fn group(&self) -> &Arc<GroupTable> {
        &self.group
    }

    pub fn coeffs(&self) -> &[u8] {
        &self.coeffs
    }

    pub fn coeff(&self, g: usize) -> u32 {
        self.coeffs[g] as u32
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.p == other.p && same_table(&self.group, &other.group) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn convolve(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let n = self.group.order();
        let mut acc = vec![0u64; n];
        for (g, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (h, &b) in other.coeffs.iter().enumerate() {
                if b != 0 {
                    acc[self.group.op(g, h)] += a as u64 * b as u64;
                }
            }
        }
        let p = self.p as u64;
        Ok(GroupRingElement {
            group: self.group.clone(),
            p: self.p,
            coeffs: acc.into_iter().map(|v| (v % p) as u8).collect(),
        })
    }

    /// Left regular representation: column h holds the coefficients of a·δ_h.
    pub fn regular_matrix(&self) -> MatFp {
        let n = self.group.order();
        let mut m = MatFp::zeros(n, self.p);
        for (g, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for h in 0..n {
                m.set(self.group.op(g, h), h, a as u32);
            }
        }
        m
    }
}

/// A value in one of the supported rings.
#[derive(Clone)]
pub enum RingElement {
    Scalar(Fp),
    Matrix(MatFp),
    Group(GroupRingElement),
}

impl PartialEq for RingElement {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (RingElement::Scalar(a), RingElement::Scalar(b)) => a == b,
            (RingElement::Matrix(a), RingElement::Matrix(b)) => a == b,
            (RingElement::Group(a), RingElement::Group(b)) => {
                a.p == b.p && a.coeffs == b.coeffs && same_table(&a.group, &b.group)
            }
            _ => false,
        }
    }
}

impl Eq for RingElement {}

impl Hash for RingElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            RingElement::Scalar(a) => (0u8, a).hash(state),
            RingElement::Matrix(m) => (1u8, m).hash(state),
            RingElement::Group(g) => (2u8, g.p, &g.coeffs).hash(state),
        }
    }
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingElement::Scalar(a) => write!(f, "{a:?}"),
            RingElement::Matrix(m) => write!(f, "{m:?}"),
            RingElement::Group(g) => write!(f, "GroupRing(p={}, {:?})", g.p, g.coeffs),
        }
    }
}

impl RingElement {
    pub fn ring(&self) -> Ring {
        match self {
            RingElement::Scalar(a) => Ring::Field(a.modulus()),
            RingElement::Matrix(m) => Ring::MatrixAlgebra {
                dim: m.dim(),
                p: m.modulus(),
            },
            RingElement::Group(g) => Ring::GroupRing {
                group: g.group.clone(),
                p: g.p,
            },
        }
    }

    pub fn modulus(&self) -> u32 {
        match self {
            RingElement::Scalar(a) => a.modulus(),
            RingElement::Matrix(m) => m.modulus(),
            RingElement::Group(g) => g.p,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (RingElement::Scalar(a), RingElement::Scalar(b)) => {
                a.add(*b).map(RingElement::Scalar).map_err(|_| Error::RingMismatch)
            }
            (RingElement::Matrix(a), RingElement::Matrix(b)) => a
                .checked_add(b)
                .map(RingElement::Matrix)
                .map_err(|_| Error::RingMismatch),
            (RingElement::Group(a), RingElement::Group(b)) => {
                a.check(b)?;
                let p = a.p as u16;
                Ok(RingElement::Group(GroupRingElement {
                    group: a.group.clone(),
                    p: a.p,
                    coeffs: a
                        .coeffs
                        .iter()
                        .zip(&b.coeffs)
                        .map(|(&x, &y)| ((x as u16 + y as u16) % p) as u8)
                        .collect(),
                }))
            }
            _ => Err(Error::RingMismatch),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(-1)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// Multiplication by an integer.
    pub fn scale(&self, k: i64) -> Self {
        let p = self.modulus();
        let c = k.rem_euclid(p as i64) as u32;
        match self {
            RingElement::Scalar(a) => RingElement::Scalar(Fp::from_raw(a.value() * c, p)),
            RingElement::Matrix(m) => RingElement::Matrix(m.scale(c)),
            RingElement::Group(g) => RingElement::Group(GroupRingElement {
                group: g.group.clone(),
                p,
                coeffs: g.coeffs.iter().map(|&x| ((x as u32 * c) % p) as u8).collect(),
            }),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (RingElement::Scalar(a), RingElement::Scalar(b)) => {
                a.mul(*b).map(RingElement::Scalar).map_err(|_| Error::RingMismatch)
            }
            (RingElement::Matrix(a), RingElement::Matrix(b)) => a
                .checked_mul(b)
                .map(RingElement::Matrix)
                .map_err(|_| Error::RingMismatch),
            (RingElement::Group(a), RingElement::Group(b)) => a.convolve(b).map(RingElement::Group),
            _ => Err(Error::RingMismatch),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            RingElement::Scalar(a) => a.is_zero(),
            RingElement::Matrix(m) => m.is_zero(),
            RingElement::Group(g) => g.coeffs.iter().all(|&c| c == 0),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == self.ring().one()
    }

    /// The element as a matrix over F_p; a ring homomorphism.
    pub fn flatten(&self) -> MatFp {
        match self {
            RingElement::Scalar(a) => MatFp::scalar(1, a.modulus(), a.value()),
            RingElement::Matrix(m) => m.clone(),
            RingElement::Group(g) => g.regular_matrix(),
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        match self {
            RingElement::Scalar(a) => a.inv().map(RingElement::Scalar),
            RingElement::Matrix(m) => m
                .inverse()
                .map(RingElement::Matrix)
                .map_err(|_| Error::NotUnit),
            RingElement::Group(_) => {
                let inv = self.flatten().inverse().map_err(|_| Error::NotUnit)?;
                self.ring().unflatten(&inv)
            }
        }
    }

    pub fn is_unit(&self) -> bool {
        match self {
            RingElement::Scalar(a) => !a.is_zero(),
            _ => self.flatten().determinant() != 0,
        }
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let mut base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = self.ring().one();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Coordinates in the F_p-basis returned by [`Ring::basis`].
    pub fn coordinates(&self) -> Vec<u8> {
        match self {
            RingElement::Scalar(a) => vec![a.value() as u8],
            RingElement::Matrix(m) => m.as_bytes().to_vec(),
            RingElement::Group(g) => g.coeffs.clone(),
        }
    }
}
