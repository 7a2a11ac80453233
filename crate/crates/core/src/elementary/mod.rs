//! Elementary matrices over the entry rings and the marking families built
//! from them.

pub mod commutator;
pub mod elem_matrix;
pub mod markings;
pub mod suite;

pub use commutator::{find_commutator_pair, CommutatorStrategy};
pub use elem_matrix::{
    beta, beta_with, dmat, dmat_padded, elem, order2_word, sharp_commutator, BetaSign, ElemMatrix,
};
pub use markings::{
    amenable_two_marking, beta_flat, elem_flat, embed_involution_group, mu_images,
    nine_marking_images, sigma_marking, thirteen_marking, MarkingBundle, MarkingKind,
};
pub use suite::verify_identities;
