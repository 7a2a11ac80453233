//! Marked groups, Cayley balls, agreement radii, diagonal products, the
//! density criterion for diagonal products of special linear groups, and
//! constructive generation certificates.

pub mod agreement;
pub mod certificate;
pub mod density;
pub mod group;

pub use agreement::{agreement, agreement_radius, word_length_bound, Agreement};
pub use group::{
    ball, closure, diagonal_truncation, enumerate_subgroup, paired, Ball, MarkedGroup, Word,
    DEFAULT_CAP,
};
pub use certificate::{
    generation_certificate, sl_order, verify_targets, CertificateCheck, GenerationCertificate,
    Slp, SlpStep, TargetWord,
};
pub use density::{
    density_check, density_of_bundles, establish_surjectivity, simple_quotient_key,
    DensityFactor, DensityVerdict, PslKey, Surjectivity,
};
