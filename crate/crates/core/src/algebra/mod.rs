//! Prime-field scalars, dense matrices and the finite entry rings.

pub mod expr;
pub mod fp;
pub mod group_table;
pub mod matrix;
pub mod ring;
pub mod span;

pub use expr::RingExpr;
pub use fp::{check_prime, inv_mod, is_prime, pow_mod, Fp, MAX_MODULUS};
pub use group_table::GroupTable;
pub use matrix::MatFp;
pub use ring::{GroupRingElement, Ring, RingElement};
pub use span::Echelon;
