//! The comparison model for the amenable family: lower unitriangular
//! finitary matrices over F_p indexed by Z, extended by the shift.
//!
//! An element `(U, a)` stands for `U·S^a` where `S e_j = e_{j+1}` and
//! `U = I + N` with `N` strictly lower triangular and finitely supported.
//! The product is `(U, a)(V, b) = (U · S^a V S^{-a}, a + b)`, and
//! conjugation by `S^a` moves an entry at `(i, j)` to `(i + a, j + a)`.

use std::collections::BTreeMap;
use std::hash::{Hash, Hasher};

use crate::element::GroupElement;
use crate::error::{Error, Result};
use crate::marked::{agreement, Agreement, MarkedGroup};

use super::level::LevelData;

#[derive(Clone, Debug)]
pub struct LimitModelElement {
    p: u32,
    window: i64,
    shift: i64,
    /// Entries of `N` keyed by `(row, col)` with `row > col`, nonzero.
    entries: BTreeMap<(i64, i64), u32>,
    escaped: bool,
}

impl PartialEq for LimitModelElement {
    fn eq(&self, other: &Self) -> bool {
        self.shift == other.shift && self.entries == other.entries
    }
}

impl Eq for LimitModelElement {}

impl Hash for LimitModelElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.shift.hash(state);
        self.entries.hash(state);
    }
}

impl LimitModelElement {
    pub fn identity(p: u32, window: i64) -> Self {
        LimitModelElement {
            p,
            window,
            shift: 0,
            entries: BTreeMap::new(),
            escaped: false,
        }
    }

    pub fn shift_by(p: u32, window: i64, a: i64) -> Self {
        LimitModelElement {
            shift: a,
            ..Self::identity(p, window)
        }
    }

    /// `I + c·E_{i,j}` for `i > j`.
    pub fn unipotent(p: u32, window: i64, i: i64, j: i64, c: u32) -> Result<Self> {
        if i <= j {
            return Err(Error::InvalidArgument(format!(
                "entry ({i}, {j}) is not below the diagonal"
            )));
        }
        let mut e = Self::identity(p, window);
        if !c.is_multiple_of(p) {
            e.entries.insert((i, j), c % p);
        }
        e.escaped = i.abs() > window || j.abs() > window;
        Ok(e)
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn entries(&self) -> &BTreeMap<(i64, i64), u32> {
        &self.entries
    }

    /// Smallest and largest index touched by the unipotent part.
    pub fn support_range(&self) -> Option<(i64, i64)> {
        let lo = self.entries.keys().map(|&(_, j)| j).min()?;
        let hi = self.entries.keys().map(|&(i, _)| i).max()?;
        Some((lo, hi))
    }

    fn moved(entries: &BTreeMap<(i64, i64), u32>, a: i64) -> BTreeMap<(i64, i64), u32> {
        entries.iter().map(|(&(i, j), &v)| ((i + a, j + a), v)).collect()
    }

    /// `(I + n1)(I + n2) − I = n1 + n2 + n1·n2`.
    fn unipotent_product(
        p: u32,
        n1: &BTreeMap<(i64, i64), u32>,
        n2: &BTreeMap<(i64, i64), u32>,
    ) -> BTreeMap<(i64, i64), u32> {
        let mut out: BTreeMap<(i64, i64), u32> = n1.clone();
        let mut add = |k: (i64, i64), v: u32| {
            let e = out.entry(k).or_insert(0);
            *e = (*e + v) % p;
        };
        for (&k, &v) in n2 {
            add(k, v);
        }
        let mut rows: BTreeMap<i64, Vec<(i64, u32)>> = BTreeMap::new();
        for (&(k, j), &v) in n2 {
            rows.entry(k).or_default().push((j, v));
        }
        for (&(i, k), &v1) in n1 {
            if let Some(r) = rows.get(&k) {
                for &(j, v2) in r {
                    add((i, j), v1 * v2 % p);
                }
            }
        }
        out.retain(|_, v| *v != 0);
        out
    }

    fn within(&self, entries: &BTreeMap<(i64, i64), u32>) -> bool {
        entries
            .keys()
            .all(|&(i, j)| i.abs() <= self.window && j.abs() <= self.window)
    }
}

impl GroupElement for LimitModelElement {
    fn op(&self, other: &Self) -> Self {
        let moved = Self::moved(&other.entries, self.shift);
        let entries = Self::unipotent_product(self.p, &self.entries, &moved);
        let escaped = self.escaped || other.escaped || !self.within(&entries);
        LimitModelElement {
            p: self.p,
            window: self.window,
            shift: self.shift + other.shift,
            entries,
            escaped,
        }
    }

    fn inv(&self) -> Self {
        // (I + N)⁻¹ = I − N + N² − ..., finite since N is nilpotent.
        let p = self.p;
        let neg = |m: &BTreeMap<(i64, i64), u32>| -> BTreeMap<(i64, i64), u32> {
            m.iter().map(|(&k, &v)| (k, (p - v) % p)).collect()
        };
        let minus_n = neg(&self.entries);
        let mut acc: BTreeMap<(i64, i64), u32> = BTreeMap::new();
        let mut power = minus_n.clone();
        while !power.is_empty() {
            for (&k, &v) in &power {
                let e = acc.entry(k).or_insert(0);
                *e = (*e + v) % p;
            }
            let mut next: BTreeMap<(i64, i64), u32> = BTreeMap::new();
            let mut rows: BTreeMap<i64, Vec<(i64, u32)>> = BTreeMap::new();
            for (&(k, j), &v) in &minus_n {
                rows.entry(k).or_default().push((j, v));
            }
            for (&(i, k), &v1) in &power {
                if let Some(r) = rows.get(&k) {
                    for &(j, v2) in r {
                        let e = next.entry((i, j)).or_insert(0);
                        *e = (*e + v1 * v2) % p;
                    }
                }
            }
            next.retain(|_, v| *v != 0);
            power = next;
        }
        acc.retain(|_, v| *v != 0);
        let entries = Self::moved(&acc, -self.shift);
        let escaped = self.escaped || !self.within(&entries);
        LimitModelElement {
            p,
            window: self.window,
            shift: -self.shift,
            entries,
            escaped,
        }
    }

    fn identity_like(&self) -> Self {
        Self::identity(self.p, self.window)
    }

    fn is_identity(&self) -> bool {
        self.shift == 0 && self.entries.is_empty()
    }

    fn check(&self) -> Result<()> {
        if self.escaped {
            Err(Error::WindowExceeded(self.window))
        } else {
            Ok(())
        }
    }
}

/// The marking `(I + E_{1,0}, S)`.
pub fn limit_model_marked(p: u32, window: i64) -> Result<MarkedGroup<LimitModelElement>> {
    crate::algebra::check_prime(p)?;
    let u = LimitModelElement::unipotent(p, window, 1, 0, 1)?;
    let s = LimitModelElement::shift_by(p, window, 1);
    Ok(MarkedGroup::with_identity(LimitModelElement::identity(p, window), vec![u, s]))
}

/// A window wide enough for every word of length `2·rmax + 1`.
pub fn window_for(rmax: usize) -> i64 {
    2 * rmax as i64 + 3
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimitComparison {
    pub big_n: usize,
    pub agreement: Agreement,
}

/// Agreement of the two-marking of SL(N, F_p) with the limit model, for
/// each size `N`.
pub fn compare_sizes_with_limit(
    sizes: &[usize],
    p: u32,
    rmax: usize,
    cap: usize,
) -> Result<Vec<LimitComparison>> {
    let model = limit_model_marked(p, window_for(rmax))?;
    sizes
        .iter()
        .map(|&big_n| {
            let two = crate::elementary::amenable_two_marking(big_n, p)?;
            let a = agreement(&two.marked(), &model, rmax, cap)?;
            Ok(LimitComparison { big_n, agreement: a })
        })
        .collect()
}

/// [`compare_sizes_with_limit`] over the two-markings of built levels.
pub fn compare_amenable_limit(
    levels: &[LevelData],
    p: u32,
    rmax: usize,
    cap: usize,
) -> Result<Vec<LimitComparison>> {
    let model = limit_model_marked(p, window_for(rmax))?;
    levels
        .iter()
        .map(|lv| {
            let a = agreement(&lv.two.marked(), &model, rmax, cap)?;
            Ok(LimitComparison {
                big_n: lv.big_n(),
                agreement: a,
            })
        })
        .collect()
}

/// True when the radii (with `None` as −1) never decrease.
pub fn is_non_decreasing(series: &[Option<usize>]) -> bool {
    let key = |r: &Option<usize>| r.map_or(-1, |x| x as i64);
    series.windows(2).all(|w| key(&w[0]) <= key(&w[1]))
}
