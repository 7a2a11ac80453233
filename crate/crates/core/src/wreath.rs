//! Wreath products `L ≀ Z/2^k = (⊕ L) ⋊ Z/2^k` with sparse base functions,
//! and the two extractions showing that the wreath markings generate.
//!
//! The top group acts on base functions by translating coordinates. With
//! [`Convention::Right`] (the default) the action is `(a·g)(x) = g(x + a)`,
//! so conjugating by `u^a` moves a support point `s` to `s − a`; with
//! [`Convention::Left`] it is `(a·g)(x) = g(x − a)`. Multiplication is
//! `(f, a)(g, b) = (f · (a·g), a + b)` in both cases.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::hash::{Hash, Hasher};

use crate::algebra::MatFp;
use crate::element::GroupElement;
use crate::elementary::{find_commutator_pair, CommutatorStrategy, MarkingBundle};
use crate::error::{Error, Result};
use crate::marked::{closure, MarkedGroup};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Convention {
    #[default]
    Right,
    Left,
}

impl Convention {
    pub fn name(self) -> &'static str {
        match self {
            Convention::Right => "right",
            Convention::Left => "left",
        }
    }
}

#[derive(Clone, Debug)]
pub struct WreathElement<T> {
    k: u32,
    convention: Convention,
    top: u64,
    /// Non-identity coordinates only.
    base: BTreeMap<u64, T>,
    unit: T,
}

impl<T: GroupElement> PartialEq for WreathElement<T> {
    fn eq(&self, other: &Self) -> bool {
        self.k == other.k
            && self.convention == other.convention
            && self.top == other.top
            && self.base == other.base
    }
}

impl<T: GroupElement> Eq for WreathElement<T> {}

impl<T: GroupElement> Hash for WreathElement<T> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.top.hash(state);
        self.base.hash(state);
    }
}

impl<T: GroupElement> WreathElement<T> {
    pub fn identity(k: u32, unit: T, convention: Convention) -> Self {
        assert!((1..=62).contains(&k), "top exponent {k} out of range");
        WreathElement {
            k,
            convention,
            top: 0,
            base: BTreeMap::new(),
            unit,
        }
    }

    /// `(f, 0)` with `f` given by its values; identity values are dropped.
    pub fn from_base(k: u32, unit: T, convention: Convention, values: impl IntoIterator<Item = (u64, T)>) -> Self {
        let mut e = Self::identity(k, unit, convention);
        let m = e.modulus();
        for (x, v) in values {
            if !v.is_identity() {
                e.base.insert(x % m, v);
            }
        }
        e
    }

    /// `(e, a)`.
    pub fn shift(k: u32, unit: T, convention: Convention, a: u64) -> Self {
        let mut e = Self::identity(k, unit, convention);
        e.top = a % e.modulus();
        e
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn modulus(&self) -> u64 {
        1u64 << self.k
    }

    pub fn top(&self) -> u64 {
        self.top
    }

    pub fn value(&self, x: u64) -> &T {
        self.base.get(&(x % self.modulus())).unwrap_or(&self.unit)
    }

    pub fn support(&self) -> Vec<u64> {
        self.base.keys().copied().collect()
    }

    /// Where the coordinate `s` of `g` lands in `a·g`.
    fn moved(&self, s: u64, a: u64) -> u64 {
        let m = self.modulus();
        match self.convention {
            Convention::Right => (s + m - a) % m,
            Convention::Left => (s + a) % m,
        }
    }

    /// The group law; fails when the operands live in different products.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.k != other.k || self.convention != other.convention {
            return Err(Error::InvalidArgument(format!(
                "wreath parameters differ: k={} {} vs k={} {}",
                self.k,
                self.convention.name(),
                other.k,
                other.convention.name()
            )));
        }
        let mut base = self.base.clone();
        for (&s, g) in &other.base {
            let x = self.moved(s, self.top);
            let v = match base.get(&x) {
                Some(f) => f.op(g),
                None => g.clone(),
            };
            if v.is_identity() {
                base.remove(&x);
            } else {
                base.insert(x, v);
            }
        }
        Ok(WreathElement {
            k: self.k,
            convention: self.convention,
            top: (self.top + other.top) % self.modulus(),
            base,
            unit: self.unit.clone(),
        })
    }
}

impl<T: GroupElement> GroupElement for WreathElement<T> {
    fn op(&self, other: &Self) -> Self {
        self.try_mul(other).expect("wreath operands from the same product")
    }

    fn inv(&self) -> Self {
        // (f, a)⁻¹ = ((−a)·f⁻¹, −a)
        let m = self.modulus();
        let back = (m - self.top) % m;
        let base = self
            .base
            .iter()
            .map(|(&s, g)| (self.moved(s, back), g.inv()))
            .collect();
        WreathElement {
            k: self.k,
            convention: self.convention,
            top: back,
            base,
            unit: self.unit.clone(),
        }
    }

    fn identity_like(&self) -> Self {
        Self::identity(self.k, self.unit.clone(), self.convention)
    }

    fn is_identity(&self) -> bool {
        self.top == 0 && self.base.is_empty()
    }
}

/// Placement of the commutator pairs in the second base function: `c_j`
/// at `2^j` and `d_j` at `2^{j+J}` for `j = 1..=J`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WreathMarkingParams {
    pub k: u32,
    pub pairs: usize,
    pub convention: Convention,
}

impl WreathMarkingParams {
    pub fn new(k: u32, pairs: usize) -> Self {
        WreathMarkingParams {
            k,
            pairs,
            convention: Convention::Right,
        }
    }

    /// The parameters used in the two-generation argument.
    pub fn standard() -> Self {
        Self::new(20, 9)
    }

    /// `(2^j mod 2^k, 2^{j+J} mod 2^k)` for `j = 1..=J`.
    pub fn support_pairs(&self) -> Vec<(u64, u64)> {
        let m = 1u64 << self.k;
        let pw = |e: usize| if e >= 64 { 0 } else { (1u64 << e) % m };
        (1..=self.pairs).map(|j| (pw(j), pw(j + self.pairs))).collect()
    }

    /// All support points are distinct and nonzero, and the differences
    /// `s − t` over ordered pairs of distinct points are distinct modulo
    /// `2^k`. The second condition is the same as distinct pairwise sums,
    /// and it guarantees that the two conjugates in the commutator overlap
    /// only at the origin.
    pub fn check_separation(&self) -> Result<()> {
        if self.k == 0 || self.k > 62 {
            return Err(Error::Separation(format!("k = {} is out of range", self.k)));
        }
        if self.pairs == 0 {
            return Err(Error::Separation("no pairs".into()));
        }
        let m = 1u64 << self.k;
        let pts: Vec<u64> = self.support_pairs().into_iter().flat_map(|(a, b)| [a, b]).collect();
        let mut seen = HashMap::new();
        for &s in &pts {
            if s == 0 || seen.insert(s, ()).is_some() {
                return Err(Error::Separation(format!(
                    "support point {s} repeats or vanishes modulo 2^{}",
                    self.k
                )));
            }
        }
        let mut diffs: HashMap<u64, (u64, u64)> = HashMap::new();
        for &s in &pts {
            for &t in &pts {
                if s == t {
                    continue;
                }
                let d = (s + m - t) % m;
                if let Some(&(s0, t0)) = diffs.get(&d) {
                    return Err(Error::Separation(format!(
                        "{s0} - {t0} = {s} - {t} modulo 2^{}",
                        self.k
                    )));
                }
                diffs.insert(d, (s, t));
            }
        }
        Ok(())
    }
}

/// The elements `w1 = (f1, 0)`, `w2 = (f2, 0)`, `u = (e, 1)` together with
/// the commutator pairs placed in `f2`.
#[derive(Clone, Debug)]
pub struct WreathMarking {
    pub w1: WreathElement<MatFp>,
    pub w2: WreathElement<MatFp>,
    pub u: WreathElement<MatFp>,
    pub pairs: Vec<(MatFp, MatFp)>,
    pub params: WreathMarkingParams,
}

/// Builds the wreath markings over SL(N, F_p) from a level's two-marking
/// `(t′₁, t′₂)` and the first `J` elements of its nine-marking, each
/// written as a single commutator.
pub fn build_two_marking_wreath(
    two: &MarkingBundle,
    nine: &MarkingBundle,
    params: WreathMarkingParams,
    strategy: CommutatorStrategy,
) -> Result<WreathMarking> {
    params.check_separation()?;
    if two.dim() != nine.dim() || two.modulus() != nine.modulus() {
        return Err(Error::DimensionMismatch(two.dim(), nine.dim()));
    }
    if params.pairs > nine.arity() {
        return Err(Error::InvalidArgument(format!(
            "{} pairs requested but the marking has {} elements",
            params.pairs,
            nine.arity()
        )));
    }
    let unit = two.identity();
    let conv = params.convention;
    let w1 = WreathElement::from_base(
        params.k,
        unit.clone(),
        conv,
        [(0, two.elements[0].clone()), (1, two.elements[1].clone())],
    );
    let mut pairs = Vec::with_capacity(params.pairs);
    let mut values = Vec::new();
    for (t, (a, b)) in nine.elements.iter().zip(params.support_pairs()) {
        let (c, d) = find_commutator_pair(t, nine.blocks, strategy)?;
        values.push((a, c.clone()));
        values.push((b, d.clone()));
        pairs.push((c, d));
    }
    let w2 = WreathElement::from_base(params.k, unit.clone(), conv, values);
    let u = WreathElement::shift(params.k, unit, conv, 1);
    Ok(WreathMarking {
        w1,
        w2,
        u,
        pairs,
        params,
    })
}

/// `[u^{2^j} w2 u^{-2^j}, u^{2^{j+J}} w2 u^{-2^{j+J}}]` for `j` in `1..=J`,
/// checked to equal the element carrying `[w2(2^j), w2(2^{j+J})]` at the
/// origin and nothing elsewhere.
pub fn hall_extract<T: GroupElement>(
    w2: &WreathElement<T>,
    u: &WreathElement<T>,
    j: usize,
    params: &WreathMarkingParams,
) -> Result<WreathElement<T>> {
    params.check_separation()?;
    if j == 0 || j > params.pairs {
        return Err(Error::InvalidArgument(format!("pair index {j} outside 1..={}", params.pairs)));
    }
    let (a, b) = params.support_pairs()[j - 1];
    let ua = u.pow(a as i64);
    let ub = u.pow(b as i64);
    let x = w2.conjugate_by(&ua);
    let y = w2.conjugate_by(&ub);
    let got = x.commutator(&y);
    let slot = w2.value(a).commutator(w2.value(b));
    let want = WreathElement::from_base(w2.k, w2.unit.clone(), w2.convention, [(0, slot)]);
    if got != want {
        return Err(Error::IdentityFailed(format!(
            "commutator for pair {j} has support {:?} and top {}, expected a single value at 0",
            got.support(),
            got.top()
        )));
    }
    Ok(got)
}

/// The two single-slot elements extracted from `w1 = (f1, 0)` supported at
/// `{0, 1}`, with the exponents used.
#[derive(Clone, Debug)]
pub struct CoprimeExtraction<T> {
    pub slot0: WreathElement<T>,
    pub slot1: WreathElement<T>,
    pub orders: (u64, u64),
    pub exponents: (u64, u64),
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn inverse_mod(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    (1..m).find(|&x| (a % m) * x % m == 1).expect("coprime residue")
}

/// Isolates both coordinates of `w1` as powers of `w1`: with `o0, o1` the
/// orders of the two values, `w1^{o1·(o1⁻¹ mod o0)}` keeps only the first
/// and `w1^{o0·(o0⁻¹ mod o1)}` only the second.
pub fn coprime_extract<T: GroupElement>(w1: &WreathElement<T>, order_cap: u64) -> Result<CoprimeExtraction<T>> {
    if w1.top != 0 || w1.support().iter().any(|&s| s > 1) {
        return Err(Error::InvalidArgument("expected a base element supported in {0, 1}".into()));
    }
    let order = |x: u64| {
        w1.value(x)
            .order(order_cap)
            .ok_or_else(|| Error::InvalidArgument(format!("order of slot {x} exceeds {order_cap}")))
    };
    let (o0, o1) = (order(0)?, order(1)?);
    if gcd(o0, o1) != 1 {
        return Err(Error::NotCoprime(o0, o1));
    }
    let e0 = o1 * inverse_mod(o1, o0);
    let e1 = o0 * inverse_mod(o0, o1);
    let slot0 = w1.pow(e0 as i64);
    let slot1 = w1.pow(e1 as i64);
    let only = |x: u64| WreathElement::from_base(w1.k, w1.unit.clone(), w1.convention, [(x, w1.value(x).clone())]);
    if slot0 != only(0) {
        return Err(Error::IdentityFailed("slot 0 was not isolated".into()));
    }
    if slot1 != only(1) {
        return Err(Error::IdentityFailed("slot 1 was not isolated".into()));
    }
    Ok(CoprimeExtraction {
        slot0,
        slot1,
        orders: (o0, o1),
        exponents: (e0, e1),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WreathGeneration {
    pub base_order: usize,
    /// `|base|^{2^k} · 2^k`.
    pub full_order: u128,
    pub generated_order: usize,
}

impl WreathGeneration {
    pub fn is_full(&self) -> bool {
        self.generated_order as u128 == self.full_order
    }
}

/// Order of `⟨w, u⟩` in `base ≀ Z/2^k`, where `w` carries the two marked
/// generators of `base` at coordinates 0 and 1. Elements are encoded
/// densely as mixed-radix integers over an enumeration of the base group.
pub fn wreath_generation_check<T: GroupElement>(
    base: &MarkedGroup<T>,
    k: u32,
    convention: Convention,
    cap: usize,
) -> Result<WreathGeneration> {
    if base.arity() != 2 {
        return Err(Error::ArityMismatch(2, base.arity()));
    }
    if k == 0 || k > 16 {
        return Err(Error::InvalidArgument(format!("k = {k} is out of range for enumeration")));
    }
    let gens = base.generators();
    let elems = closure(base.identity(), &gens, cap)?;
    let g = elems.len();
    let slots = 1usize << k;
    let full = (g as u128).checked_pow(slots as u32).and_then(|x| x.checked_mul(slots as u128));
    let full = match full {
        Some(f) if f <= cap as u128 => f,
        _ => {
            return Err(Error::CapExceeded { cap, reached: 0 });
        }
    };
    let index: HashMap<&T, u32> = elems.iter().enumerate().map(|(i, e)| (e, i as u32)).collect();
    let right_table = |v: &T| -> Vec<u32> { elems.iter().map(|x| index[&x.op(v)]).collect() };
    // w and w⁻¹ have values at coordinates 0 and 1 only
    let vals = [gens[0].clone(), gens[1].clone(), gens[0].inv(), gens[1].inv()];
    let tables: Vec<Vec<u32>> = vals.iter().map(right_table).collect();
    let encode = |f: &[u32], a: usize| -> u64 {
        f.iter().rev().fold(0u64, |acc, &x| acc * g as u64 + x as u64) * slots as u64 + a as u64
    };
    let decode = |mut code: u64| -> (Vec<u32>, usize) {
        let a = (code % slots as u64) as usize;
        code /= slots as u64;
        let f = (0..slots)
            .map(|_| {
                let x = (code % g as u64) as u32;
                code /= g as u64;
                x
            })
            .collect();
        (f, a)
    };
    // x · (h, 0) places h(s) at the translate of s by the top of x
    let place = |s: usize, a: usize| match convention {
        Convention::Right => (s + slots - a) % slots,
        Convention::Left => (s + a) % slots,
    };
    let mut seen = vec![false; full as usize];
    let start = encode(&vec![0; slots], 0);
    seen[start as usize] = true;
    let mut queue = VecDeque::from([start]);
    let mut count = 1usize;
    while let Some(code) = queue.pop_front() {
        let (f, a) = decode(code);
        let mut next = Vec::with_capacity(4);
        for (t0, t1) in [(0, 1), (2, 3)] {
            let mut h = f.clone();
            // (w⁻¹ = ((w(0)⁻¹ at 0, w(1)⁻¹ at 1), 0) since the top is 0)
            let i0 = place(0, a);
            let i1 = place(1, a);
            h[i0] = tables[t0][h[i0] as usize];
            h[i1] = tables[t1][h[i1] as usize];
            next.push(encode(&h, a));
        }
        next.push(encode(&f, (a + 1) % slots));
        next.push(encode(&f, (a + slots - 1) % slots));
        for c in next {
            if !seen[c as usize] {
                seen[c as usize] = true;
                count += 1;
                queue.push_back(c);
            }
        }
    }
    Ok(WreathGeneration {
        base_order: g,
        full_order: full,
        generated_order: count,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::GroupTable;
    use crate::element::TableElement;
    use crate::elementary::amenable_two_marking;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::sync::Arc;

    fn sl23() -> Vec<MatFp> {
        let a = MatFp::from_rows(3, &[vec![1, 1], vec![0, 1]]).unwrap();
        let b = MatFp::from_rows(3, &[vec![1, 0], vec![1, 1]]).unwrap();
        closure(&MatFp::identity(2, 3), &[a, b], 100).unwrap()
    }

    fn random_w2(params: &WreathMarkingParams, elems: &[MatFp], rng: &mut ChaCha8Rng) -> WreathElement<MatFp> {
        let values: Vec<(u64, MatFp)> = params
            .support_pairs()
            .into_iter()
            .flat_map(|(a, b)| [a, b])
            .map(|s| (s, elems[rng.gen_range(0..elems.len())].clone()))
            .collect();
        WreathElement::from_base(params.k, MatFp::identity(2, 3), params.convention, values)
    }

    #[test]
    fn group_law_basics() {
        let unit = MatFp::identity(2, 3);
        let e = WreathElement::identity(3, unit.clone(), Convention::Right);
        assert!(e.op(&e).is_identity());
        let u = WreathElement::shift(3, unit.clone(), Convention::Right, 1);
        assert!(u.pow(8).is_identity());
        assert!(!u.pow(4).is_identity());
        let a = sl23()[5].clone();
        let f = WreathElement::from_base(3, unit.clone(), Convention::Right, [(3, a.clone())]);
        assert_eq!(f.conjugate_by(&u).support(), vec![2]);
        let fl = WreathElement::from_base(3, unit, Convention::Left, [(3, a)]);
        let ul = WreathElement::shift(3, fl.unit.clone(), Convention::Left, 1);
        assert_eq!(fl.conjugate_by(&ul).support(), vec![4]);
        assert!(f.try_mul(&fl).is_err());
    }

    #[test]
    fn associativity_and_inverses() {
        let elems = sl23();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for conv in [Convention::Right, Convention::Left] {
            let rand_el = |rng: &mut ChaCha8Rng| {
                let mut e = WreathElement::from_base(
                    3,
                    MatFp::identity(2, 3),
                    conv,
                    (0..3).map(|_| (rng.gen_range(0..8), elems[rng.gen_range(0..24)].clone())),
                );
                e.top = rng.gen_range(0..8);
                e
            };
            for _ in 0..50 {
                let (a, b, c) = (rand_el(&mut rng), rand_el(&mut rng), rand_el(&mut rng));
                assert_eq!(a.op(&b).op(&c), a.op(&b.op(&c)));
                assert!(a.op(&a.inv()).is_identity());
                assert!(a.inv().op(&a).is_identity());
            }
        }
    }

    #[test]
    fn separation_condition() {
        assert!(WreathMarkingParams::standard().check_separation().is_ok());
        let pts = WreathMarkingParams::standard().support_pairs();
        assert_eq!(pts[0], (2, 1 << 10));
        assert_eq!(pts[8], (1 << 9, 1 << 18));
        assert_eq!(WreathMarkingParams::new(3, 1).support_pairs(), vec![(2, 4)]);
        // 2^(2J) wraps to 0
        assert!(WreathMarkingParams::new(4, 2).check_separation().is_err());
        for (k, j) in [(6, 2), (8, 3), (19, 9)] {
            assert!(WreathMarkingParams::new(k, j).check_separation().is_ok(), "{k} {j}");
        }
    }

    #[test]
    fn hall_extraction_over_sl23() {
        let elems = sl23();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for (k, pairs) in [(6, 2), (8, 3)] {
            let params = WreathMarkingParams::new(k, pairs);
            let u = WreathElement::shift(k, MatFp::identity(2, 3), Convention::Right, 1);
            for _ in 0..10 {
                let w2 = random_w2(&params, &elems, &mut rng);
                for j in 1..=pairs {
                    let g = hall_extract(&w2, &u, j, &params).unwrap();
                    assert!(g.support().iter().all(|&s| s == 0));
                }
            }
        }
    }

    #[test]
    fn hall_extraction_over_sym3_and_trivial_base() {
        let t = Arc::new(GroupTable::symmetric(3).0);
        let elems: Vec<TableElement> = (0..6).map(|i| TableElement::new(t.clone(), i)).collect();
        let params = WreathMarkingParams::new(6, 2);
        let unit = elems[0].identity_like();
        let w2 = WreathElement::from_base(
            6,
            unit.clone(),
            Convention::Right,
            params
                .support_pairs()
                .into_iter()
                .enumerate()
                .flat_map(|(i, (a, b))| [(a, elems[1 + i].clone()), (b, elems[3 + i].clone())]),
        );
        let u = WreathElement::shift(6, unit.clone(), Convention::Right, 1);
        for j in 1..=2 {
            hall_extract(&w2, &u, j, &params).unwrap();
        }
        let triv = WreathElement::identity(6, unit.clone(), Convention::Right);
        assert!(hall_extract(&triv, &u, 1, &params).unwrap().is_identity());
    }

    #[test]
    fn left_convention_breaks_the_extraction() {
        let elems = sl23();
        let mut params = WreathMarkingParams::new(6, 2);
        params.convention = Convention::Left;
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut failures = 0;
        for _ in 0..10 {
            let w2 = random_w2(&params, &elems, &mut rng);
            let u = WreathElement::shift(6, MatFp::identity(2, 3), Convention::Left, 1);
            if hall_extract(&w2, &u, 1, &params).is_err() {
                failures += 1;
            }
        }
        assert!(failures > 0);
    }

    #[test]
    fn coprime_extraction() {
        let two = amenable_two_marking(50, 3).unwrap();
        let unit = two.identity();
        let w1 = WreathElement::from_base(
            20,
            unit.clone(),
            Convention::Right,
            [(0, two.elements[0].clone()), (1, two.elements[1].clone())],
        );
        let x = coprime_extract(&w1, 1000).unwrap();
        assert_eq!(x.orders, (3, 100));
        assert_eq!(x.exponents.0, 100);
        assert_eq!(x.slot0.support(), vec![0]);
        assert_eq!(x.slot1.support(), vec![1]);
        assert_eq!(x.slot0.value(0), &two.elements[0]);
        assert_eq!(x.slot1.value(1), &two.elements[1]);
        let bad = amenable_two_marking(30, 3).unwrap();
        let w1 = WreathElement::from_base(
            20,
            bad.identity(),
            Convention::Right,
            [(0, bad.elements[0].clone()), (1, bad.elements[1].clone())],
        );
        assert_eq!(coprime_extract(&w1, 1000).unwrap_err(), Error::NotCoprime(3, 60));
    }

    #[test]
    fn coprime_extraction_with_a_trivial_slot() {
        let two = amenable_two_marking(5, 3).unwrap();
        let w1 = WreathElement::from_base(4, two.identity(), Convention::Right, [(0, two.elements[0].clone())]);
        let x = coprime_extract(&w1, 100).unwrap();
        assert_eq!(x.slot0, w1);
        assert!(x.slot1.is_identity());
    }

    #[test]
    fn generation_by_bfs() {
        let z3 = Arc::new(GroupTable::cyclic(3));
        let g = TableElement::new(z3.clone(), 1);
        let base = MarkedGroup::new(vec![g.clone(), g]).unwrap();
        let r = wreath_generation_check(&base, 2, Convention::Right, 10_000).unwrap();
        assert_eq!(r.full_order, 324);
        assert_eq!(r.generated_order, 108);
        assert!(!r.is_full());
        let e = TableElement::new(z3, 0);
        let triv = MarkedGroup::new(vec![e.clone(), e]).unwrap();
        let r = wreath_generation_check(&triv, 3, Convention::Right, 100).unwrap();
        assert_eq!(r.generated_order, 8);
        assert!(r.is_full());
    }

    #[test]
    fn generation_over_sl23() {
        let a = MatFp::from_rows(3, &[vec![1, 1], vec![0, 1]]).unwrap();
        let b = MatFp::from_rows(3, &[vec![1, 0], vec![1, 1]]).unwrap();
        let base = MarkedGroup::new(vec![a, b]).unwrap();
        let r = wreath_generation_check(&base, 2, Convention::Right, 2_000_000).unwrap();
        assert_eq!(r.full_order, 24u128.pow(4) * 4);
        // Both generators map to units of the abelianization Z/3, so the base
        // part projects into a proper submodule of (Z/3)^4 and the index is
        // at least 3; it is exactly 3.
        assert_eq!(r.generated_order as u128 * 3, r.full_order);
    }

    #[test]
    fn wreath_marking_from_a_pipeline_level() {
        use crate::pipeline::{build_level, parse_chain};
        let text = "p 3\nn 5\ndepth 1\nquotient 0 degree 2\ns1 1 0\ns2 1 0\nxi1 aa\nxi2 e\nxi3 aa\nxi4 e\n";
        let spec = parse_chain(text).unwrap();
        assert!(spec.hypotheses().wreath_theorem);
        let lv = build_level(&spec, 0).unwrap();
        let params = WreathMarkingParams::standard();
        let m = build_two_marking_wreath(&lv.two, &lv.nine, params, CommutatorStrategy::Auto).unwrap();
        assert_eq!(m.w1.support(), vec![0, 1]);
        let mut expected: Vec<u64> = params.support_pairs().into_iter().flat_map(|(a, b)| [a, b]).collect();
        expected.sort();
        assert_eq!(m.w2.support(), expected);
        for j in 1..=9 {
            let g = hall_extract(&m.w2, &m.u, j, &params).unwrap();
            assert_eq!(g.value(0), &lv.nine.elements[j - 1]);
        }
        let x = coprime_extract(&m.w1, 1000).unwrap();
        assert_eq!(x.orders, (3, 100));
    }
}
