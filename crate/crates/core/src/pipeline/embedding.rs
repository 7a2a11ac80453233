//! The copy of the ξ-subgroup inside the property-(T) family: the four
//! involutions act on `L_m` by right multiplication, pass through the
//! heart, and land in SL(n·l_m, F_p) as `diag(h, h)`.

use crate::algebra::{MatFp, Ring};
use crate::elementary::dmat_padded;
use crate::error::Result;
use crate::marked::enumerate_subgroup;
use crate::modrep::heart_matrix;
use crate::perm::Permutation;

use super::chain::ChainSpec;
use super::level::LevelData;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingReport {
    pub level: usize,
    /// |⟨θ_{ξ_i}⟩| in Sym(L_m).
    pub perm_order: usize,
    /// |⟨diag(h_i, h_i)⟩| in SL(n·l_m, F_p).
    pub matrix_order: usize,
    /// Order of the subgroup generated by the pairs; equal to both orders
    /// exactly when `θ_{ξ_i} ↦ diag(h_i, h_i)` extends to an isomorphism.
    pub paired_order: usize,
    pub isomorphic: bool,
}

impl EmbeddingReport {
    pub fn verdict(&self) -> &'static str {
        if self.isomorphic {
            "isomorphic"
        } else {
            "not-isomorphic"
        }
    }
}

/// The permutations `θ_{ξ_i}` and their images `diag(h_i, h_i)`.
pub fn embedding_generators(level: &LevelData, spec: &ChainSpec) -> Result<(Vec<Permutation>, Vec<MatFp>)> {
    let ring = Ring::matrices(level.block_dim(), level.p)?;
    let mut perms = Vec::with_capacity(4);
    let mut mats = Vec::with_capacity(4);
    for w in &spec.xi {
        let q = level.quotient.eval(w);
        let t = level.theta_of(q)?;
        let h = ring.from_matrix(heart_matrix(&t, &level.heart)?)?;
        mats.push(dmat_padded(&h, &h, level.n)?.flatten());
        perms.push(t);
    }
    Ok((perms, mats))
}

pub fn verify_embedding(level: &LevelData, spec: &ChainSpec, cap: usize) -> Result<EmbeddingReport> {
    let (perms, mats) = embedding_generators(level, spec)?;
    let perm_order = enumerate_subgroup(&perms, cap)?;
    let matrix_order = enumerate_subgroup(&mats, cap)?;
    let pairs: Vec<(Permutation, MatFp)> = perms.into_iter().zip(mats).collect();
    let paired_order = enumerate_subgroup(&pairs, cap)?;
    Ok(EmbeddingReport {
        level: level.index,
        perm_order,
        matrix_order,
        paired_order,
        isomorphic: perm_order == matrix_order && paired_order == perm_order,
    })
}

/// True when each order divides the next.
pub fn is_divisibility_chain(orders: &[usize]) -> bool {
    orders.windows(2).all(|w| w[0] != 0 && w[1] % w[0] == 0)
}

#[cfg(test)]
mod tests {
    use super::super::chain::{fixtures, parse_chain};
    use super::super::level::build_level;
    use super::*;

    #[test]
    fn klein_subgroup_embeds_at_every_level() {
        let spec = parse_chain(fixtures::KLEIN).unwrap();
        let mut orders = Vec::new();
        for m in 0..2 {
            let lv = build_level(&spec, m).unwrap();
            let r = verify_embedding(&lv, &spec, 10_000).unwrap();
            assert!(r.isomorphic, "{r:?}");
            assert_eq!(r.perm_order, 4);
            orders.push(r.perm_order);
        }
        assert!(is_divisibility_chain(&orders));
    }

    #[test]
    fn trivial_words_give_trivial_groups() {
        let text = "p 3\nn 3\ndepth 1\nquotient 0 degree 2\ns1 1 0\ns2 1 0\nxi1 aa\nxi2 e\nxi3 bb\nxi4 e\n";
        let spec = parse_chain(text).unwrap();
        let lv = build_level(&spec, 0).unwrap();
        let r = verify_embedding(&lv, &spec, 100).unwrap();
        assert_eq!((r.perm_order, r.matrix_order, r.paired_order), (1, 1, 1));
        assert!(r.isomorphic);
    }

    #[test]
    fn orders_grow_along_the_cyclic_chain() {
        let spec = parse_chain(fixtures::CYCLIC_2_4).unwrap();
        let orders: Vec<usize> = (0..2)
            .map(|m| verify_embedding(&build_level(&spec, m).unwrap(), &spec, 1000).unwrap().perm_order)
            .collect();
        assert_eq!(orders, vec![1, 2]);
        assert!(is_divisibility_chain(&orders));
        assert!(!is_divisibility_chain(&[2, 3]));
    }
}
