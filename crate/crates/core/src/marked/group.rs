use std::collections::HashMap;
use std::fmt;

use crate::element::{GroupElement, ProductTuple};
use crate::error::{Error, Result};

/// Default bound on the number of elements held by a ball or a closure.
pub const DEFAULT_CAP: usize = 1_000_000;

/// A word in the marking: signed 1-based generator indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(pub Vec<i32>);

impl Word {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|&x| -x).collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "e");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&x| if x > 0 { format!("s{x}") } else { format!("S{}", -x) })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Position of a signed letter in the letter order `+1, -1, +2, -2, ...`.
fn letter_slot(x: i32) -> usize {
    let j = x.unsigned_abs() as usize - 1;
    2 * j + usize::from(x < 0)
}

fn slot_letter(slot: usize) -> i32 {
    let j = (slot / 2 + 1) as i32;
    if slot.is_multiple_of(2) {
        j
    } else {
        -j
    }
}

/// A group together with an ordered generating tuple.
#[derive(Clone, Debug)]
pub struct MarkedGroup<T> {
    letters: Vec<T>,
    identity: T,
}

impl<T: GroupElement> MarkedGroup<T> {
    pub fn new(gens: Vec<T>) -> Result<Self> {
        let first = gens
            .first()
            .ok_or_else(|| Error::InvalidArgument("a marking needs at least one generator".into()))?;
        let identity = first.identity_like();
        Ok(Self::with_identity(identity, gens))
    }

    pub fn with_identity(identity: T, gens: Vec<T>) -> Self {
        let mut letters = Vec::with_capacity(2 * gens.len());
        for g in gens {
            let gi = g.inv();
            letters.push(g);
            letters.push(gi);
        }
        MarkedGroup { letters, identity }
    }

    pub fn arity(&self) -> usize {
        self.letters.len() / 2
    }

    pub fn identity(&self) -> &T {
        &self.identity
    }

    pub fn generator(&self, j: usize) -> &T {
        &self.letters[2 * j]
    }

    pub fn generators(&self) -> Vec<T> {
        self.letters.iter().step_by(2).cloned().collect()
    }

    /// The element for a signed 1-based letter.
    pub fn letter(&self, x: i32) -> &T {
        &self.letters[letter_slot(x)]
    }

    pub fn eval(&self, word: &Word) -> T {
        word.0
            .iter()
            .fold(self.identity.clone(), |acc, &x| acc.op(self.letter(x)))
    }

    /// The same group with its generator tuple reordered: slot `j` of the
    /// result carries generator `perm[j]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let gens = self.generators();
        Self::with_identity(
            self.identity.clone(),
            perm.iter().map(|&j| gens[j].clone()).collect(),
        )
    }

    pub fn map<U: GroupElement>(&self, f: impl Fn(&T) -> U) -> MarkedGroup<U> {
        MarkedGroup::with_identity(
            f(&self.identity),
            self.generators().iter().map(f).collect(),
        )
    }
}

/// Elements within a given word length, in BFS order.
#[derive(Clone, Debug)]
pub struct Ball<T> {
    pub radius: usize,
    pub elements: Vec<T>,
    pub lengths: Vec<usize>,
    /// Shortlex-least geodesic word for each element.
    pub witnesses: Vec<Word>,
}

impl<T: GroupElement> Ball<T> {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn layer_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.radius + 1];
        for &l in &self.lengths {
            sizes[l] += 1;
        }
        sizes
    }

    pub fn contains(&self, x: &T) -> bool {
        self.elements.contains(x)
    }
}

/// Cayley ball of radius `radius`. Letters are tried in the order
/// `s1, s1⁻¹, s2, s2⁻¹, ...`, which makes the first-found word of every
/// element its shortlex-least geodesic.
pub fn ball<T: GroupElement>(g: &MarkedGroup<T>, radius: usize, cap: usize) -> Result<Ball<T>> {
    let mut index: HashMap<T, usize> = HashMap::new();
    let mut out = Ball {
        radius,
        elements: vec![g.identity.clone()],
        lengths: vec![0],
        witnesses: vec![Word::default()],
    };
    index.insert(g.identity.clone(), 0);
    let mut layer_start = 0;
    for r in 1..=radius {
        let layer_end = out.elements.len();
        if layer_start == layer_end {
            break;
        }
        for i in layer_start..layer_end {
            for (slot, s) in g.letters.iter().enumerate() {
                let y = out.elements[i].op(s);
                if index.contains_key(&y) {
                    continue;
                }
                y.check()?;
                if out.elements.len() >= cap {
                    return Err(Error::CapExceeded { cap, reached: r });
                }
                let mut w = out.witnesses[i].clone();
                w.0.push(slot_letter(slot));
                index.insert(y.clone(), out.elements.len());
                out.elements.push(y);
                out.lengths.push(r);
                out.witnesses.push(w);
            }
        }
        layer_start = layer_end;
    }
    Ok(out)
}

/// All elements of `⟨gens⟩`, identity first, by right multiplication.
pub fn closure<T: GroupElement>(identity: &T, gens: &[T], cap: usize) -> Result<Vec<T>> {
    let mut seen: HashMap<T, ()> = HashMap::new();
    let mut elems = vec![identity.clone()];
    seen.insert(identity.clone(), ());
    let mut head = 0;
    while head < elems.len() {
        let x = elems[head].clone();
        head += 1;
        for g in gens {
            let y = x.op(g);
            if seen.contains_key(&y) {
                continue;
            }
            if elems.len() >= cap {
                return Err(Error::CapExceeded {
                    cap,
                    reached: elems.len(),
                });
            }
            seen.insert(y.clone(), ());
            elems.push(y);
        }
    }
    Ok(elems)
}

/// Order of the finite group generated by `gens`.
pub fn enumerate_subgroup<T: GroupElement>(gens: &[T], cap: usize) -> Result<usize> {
    let Some(first) = gens.first() else {
        return Ok(1);
    };
    // Right multiplication by generators alone suffices in a finite group,
    // but only the reachable set counts, so memory is the only concern.
    let mut seen: std::collections::HashSet<T> = std::collections::HashSet::new();
    let id = first.identity_like();
    let mut frontier = vec![id.clone()];
    seen.insert(id);
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = x.op(g);
            if seen.contains(&y) {
                continue;
            }
            if seen.len() >= cap {
                return Err(Error::CapExceeded {
                    cap,
                    reached: seen.len(),
                });
            }
            seen.insert(y.clone());
            frontier.push(y);
        }
    }
    Ok(seen.len())
}

/// The diagonal marking: generator `j` is the tuple of every level's
/// generator `j`.
pub fn diagonal_truncation<T: GroupElement>(
    levels: &[MarkedGroup<T>],
) -> Result<MarkedGroup<ProductTuple<T>>> {
    let first = levels
        .first()
        .ok_or_else(|| Error::InvalidArgument("diagonal product of no levels".into()))?;
    let k = first.arity();
    for l in levels {
        if l.arity() != k {
            return Err(Error::ArityMismatch(k, l.arity()));
        }
    }
    let identity = ProductTuple(levels.iter().map(|l| l.identity.clone()).collect());
    let gens = (0..k)
        .map(|j| ProductTuple(levels.iter().map(|l| l.generator(j).clone()).collect()))
        .collect();
    Ok(MarkedGroup::with_identity(identity, gens))
}

/// The diagonal marking of a pair of groups with equal arity.
pub fn paired<A: GroupElement, B: GroupElement>(
    g1: &MarkedGroup<A>,
    g2: &MarkedGroup<B>,
) -> Result<MarkedGroup<(A, B)>> {
    if g1.arity() != g2.arity() {
        return Err(Error::ArityMismatch(g1.arity(), g2.arity()));
    }
    let gens = (0..g1.arity())
        .map(|j| (g1.generator(j).clone(), g2.generator(j).clone()))
        .collect();
    Ok(MarkedGroup::with_identity(
        (g1.identity.clone(), g2.identity.clone()),
        gens,
    ))
}
