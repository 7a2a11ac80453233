//! Finite-level constructions around marked groups: exact linear algebra
//! over F_p, elementary groups over finite rings, the heart of the modular
//! standard representation, Cayley-ball analysis, wreath products and
//! Schreier-graph spectra.

pub mod algebra;
pub mod element;
pub mod elementary;
pub mod error;
pub mod export;
pub mod marked;
pub mod modrep;
pub mod perm;
pub mod pipeline;
pub mod report;
pub mod spectral;
pub mod wreath;

pub use element::GroupElement;
pub use error::{Error, Result};
