//! Agreement radius between two marked groups of equal arity.
//!
//! Two markings agree up to radius `R` when every word of length at most
//! `2R + 1` is trivial in one group exactly when it is trivial in the other.
//! The shortest disagreeing word is found by a breadth-first search in the
//! diagonal of the product, where the distance of a pair is the length of
//! the shortest word evaluating to it in both coordinates at once.

use std::collections::HashSet;

use super::group::{paired, MarkedGroup};
use crate::element::GroupElement;
use crate::error::{Error, Result};

/// Word-length bound attached to a radius, recorded in report metadata.
pub fn word_length_bound(radius: usize) -> usize {
    2 * radius + 1
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Agreement {
    /// `None` when a generator is trivial in one group only.
    pub radius: Option<usize>,
    /// Length of the shortest disagreeing word, if one was found within
    /// the searched length `2·rmax + 1`.
    pub first_disagreement: Option<usize>,
    pub rmax: usize,
    /// Number of pairs visited by the search.
    pub explored: usize,
}

pub fn agreement<A: GroupElement, B: GroupElement>(
    g1: &MarkedGroup<A>,
    g2: &MarkedGroup<B>,
    rmax: usize,
    cap: usize,
) -> Result<Agreement> {
    let g = paired(g1, g2)?;
    let max_len = word_length_bound(rmax);
    let letters: Vec<(A, B)> = (1..=g.arity() as i32)
        .flat_map(|j| [g.letter(j).clone(), g.letter(-j).clone()])
        .collect();
    let id = g.identity().clone();
    let mut seen: HashSet<(A, B)> = HashSet::new();
    seen.insert(id.clone());
    let mut layer = vec![id];
    let mut disagreement = None;
    'outer: for len in 1..=max_len {
        let mut next = Vec::new();
        for x in &layer {
            for s in &letters {
                let y = x.op(s);
                if seen.contains(&y) {
                    continue;
                }
                y.check()?;
                if y.0.is_identity() != y.1.is_identity() {
                    disagreement = Some(len);
                    break 'outer;
                }
                if seen.len() >= cap {
                    return Err(Error::CapExceeded { cap, reached: len });
                }
                seen.insert(y.clone());
                next.push(y);
            }
        }
        if next.is_empty() {
            break;
        }
        layer = next;
    }
    let radius = match disagreement {
        None => Some(rmax),
        // Largest R with 2R + 1 < d.
        Some(d) if d >= 2 => Some((d - 2) / 2),
        Some(_) => None,
    };
    Ok(Agreement {
        radius,
        first_disagreement: disagreement,
        rmax,
        explored: seen.len(),
    })
}

/// The agreement radius alone; see [`agreement`].
pub fn agreement_radius<A: GroupElement, B: GroupElement>(
    g1: &MarkedGroup<A>,
    g2: &MarkedGroup<B>,
    rmax: usize,
    cap: usize,
) -> Result<Option<usize>> {
    agreement(g1, g2, rmax, cap).map(|a| a.radius)
}
