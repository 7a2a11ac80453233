//! Chain files: a prime, a dimension, a tower of finite permutation
//! quotients of a 2-generated group, and four involution words.
//!
//! ```text
//! p 3
//! n 3
//! depth 2
//! quotient 0 degree 2
//! s1 1 0
//! s2 1 0
//! quotient 1 degree 4
//! s1 1 2 3 0
//! s2 1 2 3 0
//! xi1 aa
//! xi2 a a
//! xi3 e
//! xi4 A A
//! ```
//!
//! Words use `a, A, b, B` for `s1, s1⁻¹, s2, s2⁻¹`; whitespace inside a word
//! is ignored and `e` is the empty word.

use std::collections::VecDeque;
use std::sync::Arc;

use crate::algebra::{is_prime, GroupTable};
use crate::error::{Error, Result};
use crate::marked::Word;
use crate::perm::Permutation;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientSpec {
    pub index: usize,
    pub degree: usize,
    pub s1: Permutation,
    pub s2: Permutation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainSpec {
    pub p: u32,
    pub n: usize,
    pub depth: usize,
    pub quotients: Vec<QuotientSpec>,
    pub xi: [Word; 4],
}

/// A quotient realized as a multiplication table, with the indices of the
/// two marked generators.
#[derive(Clone, Debug)]
pub struct QuotientGroup {
    pub table: Arc<GroupTable>,
    pub s1: usize,
    pub s2: usize,
}

impl QuotientGroup {
    pub fn order(&self) -> usize {
        self.table.order()
    }

    /// Evaluates a word over `s1, s2` left to right.
    pub fn eval(&self, w: &Word) -> usize {
        w.0.iter().fold(0, |acc, &x| {
            let g = if x.unsigned_abs() == 1 { self.s1 } else { self.s2 };
            let g = if x < 0 { self.table.inverse(g) } else { g };
            self.table.op(acc, g)
        })
    }
}

impl QuotientSpec {
    pub fn realize(&self) -> Result<QuotientGroup> {
        let gens = vec![self.s1.images(), self.s2.images()];
        let (table, perms) = GroupTable::closure_of_permutations(&gens)?;
        let find = |g: &Vec<usize>| perms.iter().position(|x| x == g).expect("generator in closure");
        Ok(QuotientGroup {
            s1: find(&gens[0]),
            s2: find(&gens[1]),
            table: Arc::new(table),
        })
    }
}

/// Hypotheses of the two theorems that a parameter set may or may not meet.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HypothesisFlags {
    /// `n ≥ 3`, any parity.
    pub main_theorem: bool,
    /// Odd `n ≥ 5` not divisible by `p`.
    pub wreath_theorem: bool,
}

impl ChainSpec {
    pub fn hypotheses(&self) -> HypothesisFlags {
        HypothesisFlags {
            main_theorem: self.n >= 3,
            wreath_theorem: self.n >= 5 && self.n % 2 == 1 && !self.n.is_multiple_of(self.p as usize),
        }
    }

    /// `#L_m = 2p·|Q_m|` for every realized quotient.
    pub fn set_sizes(&self) -> Result<Vec<usize>> {
        self.quotients
            .iter()
            .map(|q| Ok(2 * self.p as usize * q.realize()?.order()))
            .collect()
    }
}

fn parse_word(tokens: &[&str], line: usize) -> Result<Word> {
    let mut letters = Vec::new();
    for t in tokens {
        if *t == "e" {
            continue;
        }
        for c in t.chars() {
            letters.push(match c {
                'a' => 1,
                'A' => -1,
                'b' => 2,
                'B' => -2,
                _ => {
                    return Err(Error::ChainParse {
                        line,
                        msg: format!("unexpected letter '{c}' in word"),
                    })
                }
            });
        }
    }
    Ok(Word(letters))
}

fn parse_usize(tok: Option<&&str>, line: usize, what: &str) -> Result<usize> {
    let t = tok.ok_or_else(|| Error::ChainParse {
        line,
        msg: format!("missing {what}"),
    })?;
    t.parse().map_err(|_| Error::ChainParse {
        line,
        msg: format!("{what} '{t}' is not a non-negative integer"),
    })
}

/// Reads a chain file without checking the chain invariants.
pub fn parse_chain_unvalidated(text: &str) -> Result<ChainSpec> {
    let mut p = None;
    let mut n = None;
    let mut depth = None;
    let mut quotients: Vec<QuotientSpec> = Vec::new();
    let mut pending: Option<(usize, usize, usize, Option<Permutation>, Option<Permutation>)> = None;
    let mut xi: [Option<Word>; 4] = Default::default();

    let mut lines: VecDeque<(usize, Vec<&str>)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").split_whitespace().collect()))
        .filter(|(_, t): &(usize, Vec<&str>)| !t.is_empty())
        .collect();
    while let Some((line, toks)) = lines.pop_front() {
        let err = |msg: String| Error::ChainParse { line, msg };
        match toks[0] {
            "p" => p = Some(parse_usize(toks.get(1), line, "prime")? as u32),
            "n" => n = Some(parse_usize(toks.get(1), line, "dimension")?),
            "depth" => depth = Some(parse_usize(toks.get(1), line, "depth")?),
            "quotient" => {
                if let Some((l0, ..)) = pending {
                    return Err(Error::ChainParse {
                        line: l0,
                        msg: "quotient block is missing s1 or s2".into(),
                    });
                }
                let idx = parse_usize(toks.get(1), line, "quotient index")?;
                if toks.get(2) != Some(&"degree") {
                    return Err(err("expected 'quotient <m> degree <d>'".into()));
                }
                let deg = parse_usize(toks.get(3), line, "degree")?;
                pending = Some((line, idx, deg, None, None));
            }
            "s1" | "s2" => {
                let Some((_, _, deg, s1, s2)) = pending.as_mut() else {
                    return Err(err(format!("{} outside a quotient block", toks[0])));
                };
                let images = toks[1..]
                    .iter()
                    .map(|t| t.parse::<usize>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|_| err("images must be non-negative integers".into()))?;
                if images.len() != *deg {
                    return Err(err(format!("expected {deg} images, got {}", images.len())));
                }
                let perm = Permutation::new(images).map_err(|e| err(e.to_string()))?;
                if toks[0] == "s1" {
                    *s1 = Some(perm);
                } else {
                    *s2 = Some(perm);
                }
                if let Some((_, idx, deg, Some(a), Some(b))) = pending.clone() {
                    quotients.push(QuotientSpec {
                        index: idx,
                        degree: deg,
                        s1: a,
                        s2: b,
                    });
                    pending = None;
                }
            }
            key if key.starts_with("xi") => {
                let k: usize = key[2..]
                    .parse()
                    .ok()
                    .filter(|k| (1..=4).contains(k))
                    .ok_or_else(|| err(format!("unknown involution label '{key}'")))?;
                xi[k - 1] = Some(parse_word(&toks[1..], line)?);
            }
            other => return Err(err(format!("unknown keyword '{other}'"))),
        }
    }
    if let Some((line, ..)) = pending {
        return Err(Error::ChainParse {
            line,
            msg: "quotient block is missing s1 or s2".into(),
        });
    }
    let missing = |what: &str| Error::ChainParse {
        line: 0,
        msg: format!("missing '{what}' line"),
    };
    let p = p.ok_or_else(|| missing("p"))?;
    let n = n.ok_or_else(|| missing("n"))?;
    let depth = depth.ok_or_else(|| missing("depth"))?;
    let [x1, x2, x3, x4] = xi;
    let xi = [
        x1.ok_or_else(|| missing("xi1"))?,
        x2.ok_or_else(|| missing("xi2"))?,
        x3.ok_or_else(|| missing("xi3"))?,
        x4.ok_or_else(|| missing("xi4"))?,
    ];
    Ok(ChainSpec {
        p,
        n,
        depth,
        quotients,
        xi,
    })
}

/// Checks every chain invariant and returns the list of violations.
pub fn validate_chain(spec: &ChainSpec) -> Vec<String> {
    let mut issues = Vec::new();
    if spec.p == 2 || !is_prime(spec.p) || spec.p > crate::algebra::MAX_MODULUS {
        issues.push(format!("p = {} is not an odd prime in range", spec.p));
    }
    if spec.n < 3 {
        issues.push(format!("n = {} is below 3", spec.n));
    }
    if spec.quotients.len() != spec.depth {
        issues.push(format!(
            "depth {} but {} quotient blocks",
            spec.depth,
            spec.quotients.len()
        ));
    }
    for (k, q) in spec.quotients.iter().enumerate() {
        if q.index != k {
            issues.push(format!("quotient block {k} is labelled {}", q.index));
        }
    }
    let realized: Vec<Option<QuotientGroup>> =
        spec.quotients.iter().map(|q| q.realize().ok()).collect();
    for (m, g) in realized.iter().enumerate() {
        let Some(g) = g else {
            issues.push(format!("quotient {m} could not be realized"));
            continue;
        };
        for (i, w) in spec.xi.iter().enumerate() {
            let x = g.eval(w);
            if g.table.op(x, x) != 0 {
                issues.push(format!(
                    "xi{} has order {} in quotient {m}, not an involution",
                    i + 1,
                    g.table.element_order(x)
                ));
            }
        }
        let size = 2 * spec.p as usize * g.order();
        if size < 5 {
            issues.push(format!("#L_{m} = {size} is below 5"));
        }
    }
    for m in 0..realized.len().saturating_sub(1) {
        let (Some(lo), Some(hi)) = (&realized[m], &realized[m + 1]) else {
            continue;
        };
        if hi.order() <= lo.order() {
            issues.push(format!(
                "quotient sizes {} and {} at levels {m} and {} are not increasing",
                lo.order(),
                hi.order(),
                m + 1
            ));
        }
        if !is_marked_quotient(hi, lo) {
            issues.push(format!(
                "level {m} is not a marked quotient of level {}",
                m + 1
            ));
        }
    }
    issues
}

/// True when `s_i ↦ s_i` extends to a homomorphism `hi → lo`, i.e. the
/// diagonal subgroup of `hi × lo` is the graph of a function.
pub fn is_marked_quotient(hi: &QuotientGroup, lo: &QuotientGroup) -> bool {
    let nh = hi.order();
    let mut seen = vec![usize::MAX; nh];
    seen[0] = 0;
    let mut stack = vec![(0usize, 0usize)];
    let gens = [(hi.s1, lo.s1), (hi.s2, lo.s2)];
    while let Some((a, b)) = stack.pop() {
        for &(g, h) in &gens {
            let (x, y) = (hi.table.op(a, g), lo.table.op(b, h));
            if seen[x] == usize::MAX {
                seen[x] = y;
                stack.push((x, y));
            } else if seen[x] != y {
                return false;
            }
        }
    }
    true
}

/// Reads and validates a chain file.
pub fn parse_chain(text: &str) -> Result<ChainSpec> {
    let spec = parse_chain_unvalidated(text)?;
    let issues = validate_chain(&spec);
    if issues.is_empty() {
        Ok(spec)
    } else {
        Err(Error::InvalidChain(issues))
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    /// Quotients Z/2 and Z/4 with both generators the cyclic generator.
    pub const CYCLIC_2_4: &str = "\
p 3
n 3
depth 2
quotient 0 degree 2
s1 1 0
s2 1 0
quotient 1 degree 4
s1 1 2 3 0
s2 1 2 3 0
xi1 aa
xi2 e
xi3 aa
xi4 AA
";

    /// Quotients Z/2 × Z/2 and Z/2 × Z/6 with ξ generating a Klein group
    /// at both levels.
    pub const KLEIN: &str = "\
p 3
n 3
depth 2
# points 0..3 as pairs (x, y) with x in Z/2, y in Z/2
quotient 0 degree 4
s1 2 3 0 1
s2 1 0 3 2
# a swaps points 0 and 1, b cycles points 2..7
quotient 1 degree 8
s1 1 0 2 3 4 5 6 7
s2 0 1 3 4 5 6 7 2
xi1 a
xi2 bbb
xi3 abbb
xi4 e
";
}
