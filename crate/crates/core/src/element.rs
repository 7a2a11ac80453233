//! The element interface shared by every group kind that gets enumerated.

use std::fmt::Debug;
use std::hash::Hash;

use crate::algebra::MatFp;
use crate::error::Result;

/// An element of some group, with structural equality serving as the
/// canonical encoding for deduplication.
pub trait GroupElement: Clone + Eq + Hash + Debug {
    fn op(&self, other: &Self) -> Self;
    fn inv(&self) -> Self;
    /// The identity of the group this element lives in.
    fn identity_like(&self) -> Self;
    fn is_identity(&self) -> bool {
        *self == self.identity_like()
    }
    /// Validity hook for models that track only a bounded window.
    fn check(&self) -> Result<()> {
        Ok(())
    }

    fn pow(&self, e: i64) -> Self {
        let mut base = if e < 0 { self.inv() } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = self.identity_like();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.op(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.op(&base);
            }
        }
        acc
    }

    /// Order by repeated multiplication, searched up to `cap`.
    fn order(&self, cap: u64) -> Option<u64> {
        let mut acc = self.clone();
        for k in 1..=cap {
            if acc.is_identity() {
                return Some(k);
            }
            acc = acc.op(self);
        }
        None
    }

    /// `[a, b] = a⁻¹ b⁻¹ a b`.
    fn commutator(&self, other: &Self) -> Self {
        self.inv().op(&other.inv()).op(self).op(other)
    }

    /// `a b a⁻¹`.
    fn conjugate_by(&self, a: &Self) -> Self {
        a.op(self).op(&a.inv())
    }
}

impl GroupElement for MatFp {
    fn op(&self, other: &Self) -> Self {
        self * other
    }

    fn inv(&self) -> Self {
        self.inverse().expect("group elements are invertible")
    }

    fn identity_like(&self) -> Self {
        MatFp::identity(self.dim(), self.modulus())
    }

    fn is_identity(&self) -> bool {
        MatFp::is_identity(self)
    }
}

/// Elements of a finite direct product, one coordinate per factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProductTuple<T>(pub Vec<T>);

impl<T: GroupElement> GroupElement for ProductTuple<T> {
    fn op(&self, other: &Self) -> Self {
        ProductTuple(self.0.iter().zip(&other.0).map(|(a, b)| a.op(b)).collect())
    }

    fn inv(&self) -> Self {
        ProductTuple(self.0.iter().map(GroupElement::inv).collect())
    }

    fn identity_like(&self) -> Self {
        ProductTuple(self.0.iter().map(GroupElement::identity_like).collect())
    }

    fn is_identity(&self) -> bool {
        self.0.iter().all(GroupElement::is_identity)
    }

    fn check(&self) -> Result<()> {
        self.0.iter().try_for_each(GroupElement::check)
    }
}

impl<A: GroupElement, B: GroupElement> GroupElement for (A, B) {
    fn op(&self, other: &Self) -> Self {
        (self.0.op(&other.0), self.1.op(&other.1))
    }

    fn inv(&self) -> Self {
        (self.0.inv(), self.1.inv())
    }

    fn identity_like(&self) -> Self {
        (self.0.identity_like(), self.1.identity_like())
    }

    fn is_identity(&self) -> bool {
        self.0.is_identity() && self.1.is_identity()
    }

    fn check(&self) -> Result<()> {
        self.0.check()?;
        self.1.check()
    }
}

/// An element of a group given by a table: the index plus the shared table.
#[derive(Clone, Debug)]
pub struct TableElement {
    pub table: std::sync::Arc<crate::algebra::GroupTable>,
    pub index: usize,
}

impl TableElement {
    pub fn new(table: std::sync::Arc<crate::algebra::GroupTable>, index: usize) -> Self {
        TableElement { table, index }
    }
}

impl PartialEq for TableElement {
    fn eq(&self, other: &Self) -> bool {
        self.index == other.index
    }
}

impl Eq for TableElement {}

impl Hash for TableElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.index.hash(state);
    }
}

impl GroupElement for TableElement {
    fn op(&self, other: &Self) -> Self {
        TableElement {
            table: self.table.clone(),
            index: self.table.op(self.index, other.index),
        }
    }

    fn inv(&self) -> Self {
        TableElement {
            table: self.table.clone(),
            index: self.table.inverse(self.index),
        }
    }

    fn identity_like(&self) -> Self {
        TableElement {
            table: self.table.clone(),
            index: 0,
        }
    }

    fn is_identity(&self) -> bool {
        self.index == 0
    }
}
