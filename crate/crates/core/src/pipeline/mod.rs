//! End-to-end construction over a chain of finite quotients.

pub mod chain;
pub mod embedding;
pub mod level;
pub mod limit;
pub mod run;

pub use chain::{
    is_marked_quotient, parse_chain, parse_chain_unvalidated, validate_chain, ChainSpec,
    HypothesisFlags, QuotientGroup, QuotientSpec,
};
pub use embedding::{embedding_generators, is_divisibility_chain, verify_embedding, EmbeddingReport};
pub use level::{build_level, heart_markings, LevelData};
pub use limit::{
    compare_amenable_limit, compare_sizes_with_limit, is_non_decreasing, limit_model_marked,
    window_for, LimitComparison, LimitModelElement,
};
pub use run::{density_record, run_main_theorem, surjectivity_record, RunOptions};
