//! Density of diagonal products of special linear groups.
//!
//! A diagonal product of finite groups is dense in their product when each
//! projection is onto and no nontrivial finite simple group is a quotient
//! of two different factors. For SL(d, F_p) with `d ≥ 3` the only
//! nontrivial simple quotient is PSL(d, p), and distinct labels give
//! non-isomorphic PSL's except for PSL(2, 7) ≅ PSL(3, 2).

use std::collections::BTreeMap;
use std::fmt;

use crate::element::GroupElement;
use crate::elementary::MarkingBundle;
use crate::error::Result;

use super::certificate::{generation_certificate, sl_order, CertificateCheck};
use super::group::enumerate_subgroup;

/// How surjectivity of one factor was established.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Surjectivity {
    /// BFS closure has the order of SL(d, F_p).
    Enumerated(u128),
    /// A generation certificate reaching all elementary targets.
    Certified { targets: usize, verified: usize },
    /// Closure is a proper subgroup.
    Proper(u128),
    Unverified(String),
}

impl Surjectivity {
    pub fn is_onto(&self) -> bool {
        matches!(self, Surjectivity::Enumerated(_) | Surjectivity::Certified { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensityFactor {
    pub d: usize,
    pub p: u32,
    pub surjectivity: Surjectivity,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DensityVerdict {
    Dense,
    NotGuaranteed(String),
    Unverified(String),
}

impl DensityVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            DensityVerdict::Dense => "dense",
            DensityVerdict::NotGuaranteed(_) => "not-guaranteed",
            DensityVerdict::Unverified(_) => "unverified",
        }
    }
}

impl fmt::Display for DensityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DensityVerdict::Dense => write!(f, "dense"),
            DensityVerdict::NotGuaranteed(why) => write!(f, "not-guaranteed ({why})"),
            DensityVerdict::Unverified(why) => write!(f, "unverified ({why})"),
        }
    }
}

/// Canonical name of the simple group PSL(d, p), merging the one
/// exceptional isomorphism between prime-field labels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PslKey {
    pub d: usize,
    pub p: u32,
}

/// The key of the unique nontrivial simple quotient of SL(d, F_p), or
/// `None` when the label falls outside the rule: `d = 1` (trivial group)
/// and `d = 2` (excluded, since SL(2, 2) and SL(2, 3) have abelian simple
/// quotients and the criterion is stated for `d ≥ 3`).
pub fn simple_quotient_key(d: usize, p: u32) -> Option<PslKey> {
    if d < 3 {
        return None;
    }
    Some(canonical(d, p))
}

fn canonical(d: usize, p: u32) -> PslKey {
    // PSL(2, 7) ≅ PSL(3, 2)
    if (d, p) == (2, 7) {
        PslKey { d: 3, p: 2 }
    } else {
        PslKey { d, p }
    }
}

/// Applies the criterion to labelled factors.
pub fn density_check(factors: &[DensityFactor]) -> DensityVerdict {
    if factors.is_empty() {
        return DensityVerdict::NotGuaranteed("no factors".into());
    }
    let unverified: Vec<String> = factors
        .iter()
        .filter_map(|f| match &f.surjectivity {
            Surjectivity::Unverified(why) => Some(format!("SL({}, {}): {why}", f.d, f.p)),
            _ => None,
        })
        .collect();
    if !unverified.is_empty() {
        return DensityVerdict::Unverified(unverified.join("; "));
    }
    if let Some(f) = factors.iter().find(|f| !f.surjectivity.is_onto()) {
        return DensityVerdict::NotGuaranteed(format!(
            "projection onto SL({}, {}) is not surjective",
            f.d, f.p
        ));
    }
    let mut seen: BTreeMap<PslKey, (usize, u32)> = BTreeMap::new();
    for f in factors {
        let Some(key) = simple_quotient_key(f.d, f.p) else {
            return DensityVerdict::NotGuaranteed(format!(
                "label ({}, {}) has d < 3",
                f.d, f.p
            ));
        };
        if let Some(&(d0, p0)) = seen.get(&key) {
            return DensityVerdict::NotGuaranteed(format!(
                "PSL({d0}, {p0}) and PSL({}, {}) are isomorphic quotients",
                f.d, f.p
            ));
        }
        seen.insert(key, (f.d, f.p));
    }
    DensityVerdict::Dense
}

/// Establishes surjectivity of a marking onto SL(d, F_p): by BFS when the
/// group order is at most `cap`, otherwise by a generation certificate.
pub fn establish_surjectivity(
    bundle: &MarkingBundle,
    cap: usize,
    check: CertificateCheck,
) -> Surjectivity {
    let (d, p) = (bundle.dim(), bundle.modulus());
    if bundle.elements.iter().any(|m| m.determinant() != 1) {
        return Surjectivity::Unverified("a generator has determinant different from 1".into());
    }
    if let Some(order) = sl_order(d, p).filter(|&o| o <= cap as u128) {
        return match enumerate_subgroup(&bundle.elements, cap) {
            Ok(k) if k as u128 == order => Surjectivity::Enumerated(order),
            Ok(k) => Surjectivity::Proper(k as u128),
            Err(e) => Surjectivity::Unverified(e.to_string()),
        };
    }
    if bundle.elements.iter().all(GroupElement::is_identity) {
        return Surjectivity::Proper(1);
    }
    match generation_certificate(bundle, d, p, check) {
        Ok(c) => Surjectivity::Certified {
            targets: c.target_count(),
            verified: c.verified,
        },
        Err(e) => Surjectivity::Unverified(e.to_string()),
    }
}

/// Builds labelled factors for a list of markings and applies the rule.
pub fn density_of_bundles(
    bundles: &[&MarkingBundle],
    cap: usize,
    check: CertificateCheck,
) -> Result<(Vec<DensityFactor>, DensityVerdict)> {
    let factors: Vec<DensityFactor> = bundles
        .iter()
        .map(|b| DensityFactor {
            d: b.dim(),
            p: b.modulus(),
            surjectivity: establish_surjectivity(b, cap, check),
        })
        .collect();
    let verdict = density_check(&factors);
    Ok((factors, verdict))
}
