//! One level of the construction: the finite set `L_m = Q_m × Z/2p`, its
//! 6-marking in Sym(L_m), the heart representation, and both marking
//! families in SL(n·l_m, F_p).

use std::sync::Arc;

use crate::algebra::{GroupTable, MatFp, Ring, RingElement};
use crate::elementary::{amenable_two_marking, nine_marking_images, MarkingBundle};
use crate::error::{Error, Result};
use crate::marked::MarkedGroup;
use crate::modrep::{heart_matrix, HeartBasis};
use crate::perm::{sym_six_marking, theta, Permutation};

use super::chain::{ChainSpec, QuotientGroup};

#[derive(Clone, Debug)]
pub struct LevelData {
    pub index: usize,
    pub p: u32,
    pub n: usize,
    pub quotient: QuotientGroup,
    /// `Q_m × Z/2p`, the pair `(q, c)` at index `q·2p + c`.
    pub set_table: Arc<GroupTable>,
    /// Indices of `s1, s2, s3` in `set_table`.
    pub marking: [usize; 3],
    pub six: MarkedGroup<Permutation>,
    pub heart: HeartBasis,
    /// Heart images of the six-marking, in marking order.
    pub heart_images: Vec<MatFp>,
    pub two: MarkingBundle,
    pub nine: MarkingBundle,
}

impl LevelData {
    /// `#L_m`.
    pub fn set_size(&self) -> usize {
        self.set_table.order()
    }

    /// `l_m = #L_m − 2`.
    pub fn block_dim(&self) -> usize {
        self.heart.dim()
    }

    /// `N = n·l_m`, the size of the special linear group at this level.
    pub fn big_n(&self) -> usize {
        self.n * self.block_dim()
    }

    /// Embeds a quotient element as `(q, 0)`.
    pub fn embed(&self, q: usize) -> usize {
        q * 2 * self.p as usize
    }

    /// θ of the quotient element `q` as a permutation of `L_m`.
    pub fn theta_of(&self, q: usize) -> Result<Permutation> {
        theta(self.embed(q), &self.set_table)
    }
}

/// The six-marking of Sym(#T) from three elements of `table`, the heart
/// basis, the heart images and the nine-marking they induce at size `n`.
#[allow(clippy::type_complexity)]
pub fn heart_markings(
    table: &GroupTable,
    marking: [usize; 3],
    p: u32,
    n: usize,
) -> Result<(MarkedGroup<Permutation>, HeartBasis, Vec<MatFp>, MarkingBundle)> {
    let six = sym_six_marking(table, marking[0], marking[1], marking[2])?;
    let heart = HeartBasis::new(table.order(), p)?;
    let heart_images = six
        .generators()
        .iter()
        .map(|s| heart_matrix(s, &heart))
        .collect::<Result<Vec<_>>>()?;
    let ring = Ring::matrices(heart.dim(), p)?;
    let x: Vec<RingElement> = heart_images
        .iter()
        .map(|h| ring.from_matrix(h.clone()))
        .collect::<Result<_>>()?;
    let x: [RingElement; 6] = x.try_into().expect("six heart images");
    let nine = nine_marking_images(&x, n)?;
    Ok((six, heart, heart_images, nine))
}

/// Builds level `m` of a chain.
pub fn build_level(spec: &ChainSpec, m: usize) -> Result<LevelData> {
    let q = spec
        .quotients
        .get(m)
        .ok_or_else(|| Error::InvalidArgument(format!("level {m} beyond depth {}", spec.quotients.len())))?;
    let quotient = q.realize()?;
    let p = spec.p;
    let cyc = GroupTable::cyclic(2 * p as usize);
    let set_table = Arc::new(quotient.table.direct_product(&cyc));
    let two_p = 2 * p as usize;
    let marking = [quotient.s1 * two_p, quotient.s2 * two_p, 1];
    let (six, heart, heart_images, nine) = heart_markings(&set_table, marking, p, spec.n)?;
    let two = amenable_two_marking(spec.n * heart.dim(), p)?;
    Ok(LevelData {
        index: m,
        p,
        n: spec.n,
        quotient,
        set_table,
        marking,
        six,
        heart,
        heart_images,
        two,
        nine,
    })
}

#[cfg(test)]
mod tests {
    use super::super::chain::{fixtures, parse_chain};
    use super::*;

    #[test]
    fn trivial_chain_level_zero() {
        let spec = parse_chain(fixtures::CYCLIC_2_4).unwrap();
        let lv = build_level(&spec, 0).unwrap();
        assert_eq!(lv.set_size(), 12);
        assert_eq!(lv.block_dim(), 10);
        assert_eq!(lv.big_n(), 30);
        assert_eq!(lv.nine.dim(), 30);
        assert_eq!(lv.two.dim(), 30);
        let lv1 = build_level(&spec, 1).unwrap();
        assert_eq!(lv1.block_dim(), 22);
        assert_eq!(lv1.big_n(), 66);
    }

    #[test]
    fn heart_images_satisfy_factor_relations() {
        let spec = parse_chain(fixtures::CYCLIC_2_4).unwrap();
        let lv = build_level(&spec, 0).unwrap();
        for x in &lv.heart_images[..3] {
            assert!(x.pow(2).is_identity());
        }
        assert_eq!(lv.heart_images[5].order(100), Some(6));
        assert!(lv.nine.all_in_sl());
        assert!(lv.two.all_in_sl());
    }

    #[test]
    fn level_beyond_depth_is_an_error() {
        let spec = parse_chain(fixtures::CYCLIC_2_4).unwrap();
        assert!(build_level(&spec, 2).is_err());
    }
}
