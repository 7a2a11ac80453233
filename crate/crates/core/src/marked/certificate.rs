//! Constructive generation certificates: explicit straight-line programs in
//! a marking that produce every elementary matrix `e_{u,v}^{E_ab}`.
//!
//! Since `E(n, Mat_l(F_p)) = SL(n·l, F_p)`, reaching all of these targets
//! shows that the marking generates the full special linear group.

use std::collections::VecDeque;

use crate::algebra::{Echelon, MatFp};
use crate::element::GroupElement;
use crate::elementary::MarkingBundle;
use crate::error::{Error, Result};

/// One step of a straight-line program over a marking.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SlpStep {
    Gen(usize),
    Inv(usize),
    Mul(usize, usize),
    Pow(usize, u32),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Slp {
    pub steps: Vec<SlpStep>,
}

impl Slp {
    fn push(&mut self, s: SlpStep) -> usize {
        self.steps.push(s);
        self.steps.len() - 1
    }

    fn commutator(&mut self, x: usize, y: usize) -> usize {
        let xi = self.push(SlpStep::Inv(x));
        let yi = self.push(SlpStep::Inv(y));
        let a = self.push(SlpStep::Mul(xi, yi));
        let b = self.push(SlpStep::Mul(a, x));
        self.push(SlpStep::Mul(b, y))
    }

    fn conjugate(&mut self, g: usize, ginv: usize, x: usize) -> usize {
        let a = self.push(SlpStep::Mul(g, x));
        self.push(SlpStep::Mul(a, ginv))
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Evaluates the steps needed for `node`, memoizing into `memo`.
    pub fn eval_node(&self, gens: &[MatFp], node: usize, memo: &mut Vec<Option<MatFp>>) -> MatFp {
        if memo.len() < self.steps.len() {
            memo.resize(self.steps.len(), None);
        }
        let mut stack = vec![node];
        while let Some(&k) = stack.last() {
            if memo[k].is_some() {
                stack.pop();
                continue;
            }
            let deps: Vec<usize> = match self.steps[k] {
                SlpStep::Gen(_) => vec![],
                SlpStep::Inv(a) | SlpStep::Pow(a, _) => vec![a],
                SlpStep::Mul(a, b) => vec![a, b],
            };
            let missing: Vec<usize> = deps.into_iter().filter(|&d| memo[d].is_none()).collect();
            if !missing.is_empty() {
                stack.extend(missing);
                continue;
            }
            let val = match self.steps[k] {
                SlpStep::Gen(i) => gens[i].clone(),
                SlpStep::Inv(a) => memo[a].as_ref().unwrap().inv(),
                SlpStep::Mul(a, b) => memo[a].as_ref().unwrap() * memo[b].as_ref().unwrap(),
                SlpStep::Pow(a, e) => memo[a].as_ref().unwrap().pow(e as u64),
            };
            memo[k] = Some(val);
            stack.pop();
        }
        memo[node].clone().unwrap()
    }
}

/// A target `e_{u,v}^{E_ab}` (0-based block and entry indices) and the
/// program node producing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TargetWord {
    pub u: usize,
    pub v: usize,
    pub a: usize,
    pub b: usize,
    pub node: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertificateCheck {
    /// Evaluate every target word as a matrix.
    All,
    /// Evaluate an evenly spaced subset of this many targets.
    Sample(usize),
    /// Trust the symbolic bookkeeping.
    Skip,
}

#[derive(Clone, Debug)]
pub struct GenerationCertificate {
    pub blocks: usize,
    pub block_dim: usize,
    pub p: u32,
    pub slp: Slp,
    pub targets: Vec<TargetWord>,
    /// Number of targets evaluated and compared against the expected matrix.
    pub verified: usize,
}

impl GenerationCertificate {
    pub fn target_count(&self) -> usize {
        self.targets.len()
    }
}

/// Depth bound of the word search: every commutator step has at least one
/// argument built from at most this many seed values.
pub const PARTNER_DEPTH: u32 = 2;

struct Monomial {
    perm: Vec<usize>,
    blocks: Vec<MatFp>,
    blocks_inv: Vec<MatFp>,
    node: usize,
    inv_node: usize,
}

fn as_elementary(m: &MatFp, n: usize, l: usize) -> Option<(usize, usize, MatFp)> {
    let p = m.modulus();
    let id = MatFp::identity(l, p);
    let mut found = None;
    for u in 0..n {
        for v in 0..n {
            let b = m.block(u, v, l);
            if u == v {
                if b != id {
                    return None;
                }
            } else if !b.is_zero() {
                if found.is_some() {
                    return None;
                }
                found = Some((u, v, b));
            }
        }
    }
    found
}

fn as_monomial(m: &MatFp, n: usize, l: usize) -> Option<(Vec<usize>, Vec<MatFp>)> {
    let mut perm = vec![usize::MAX; n];
    let mut blocks = Vec::with_capacity(n);
    let mut used = vec![false; n];
    for v in 0..n {
        for u in 0..n {
            let b = m.block(u, v, l);
            if b.is_zero() {
                continue;
            }
            if perm[v] != usize::MAX || used[u] {
                return None;
            }
            perm[v] = u;
            used[u] = true;
            blocks.push(b);
        }
        if perm[v] == usize::MAX {
            return None;
        }
    }
    Some((perm, blocks))
}

struct Position {
    span: Echelon,
    /// Spanning values with their program node and commutator depth.
    basis: Vec<(MatFp, usize, u32)>,
}

struct Search {
    n: usize,
    l: usize,
    slp: Slp,
    pos: Vec<Position>,
    queue: VecDeque<(usize, usize, MatFp, usize, u32)>,
}

impl Search {
    fn idx(&self, u: usize, v: usize) -> usize {
        u * self.n + v
    }

    fn offer(&mut self, u: usize, v: usize, r: MatFp, node: usize, depth: u32) -> bool {
        let k = self.idx(u, v);
        let pos = &mut self.pos[k];
        if pos.span.rank() == self.l * self.l || r.is_zero() {
            return false;
        }
        if pos.span.insert(r.as_bytes()) {
            pos.basis.push((r.clone(), node, depth));
            self.queue.push_back((u, v, r, node, depth));
            true
        } else {
            false
        }
    }

    fn full(&self, u: usize, v: usize) -> bool {
        self.pos[self.idx(u, v)].span.rank() == self.l * self.l
    }

    fn complete(&self) -> bool {
        let full = self.l * self.l;
        (0..self.n).all(|u| {
            (0..self.n).all(|v| u == v || self.pos[self.idx(u, v)].span.rank() == full)
        })
    }

    fn conjugates(&mut self, mono: &[Monomial], u: usize, v: usize, r: &MatFp, node: usize, depth: u32) {
        for g in mono {
            // g e_{u,v}^R g⁻¹ = e_{π(u),π(v)}^{D_u R D_v⁻¹}
            let val = &(&g.blocks[u] * r) * &g.blocks_inv[v];
            if !self.full(g.perm[u], g.perm[v]) && !self.pos[self.idx(g.perm[u], g.perm[v])].span.contains(val.as_bytes()) {
                let c = self.slp.conjugate(g.node, g.inv_node, node);
                self.offer(g.perm[u], g.perm[v], val, c, depth);
            }
            // and by g⁻¹
            let pu = g.perm.iter().position(|&x| x == u).unwrap();
            let pv = g.perm.iter().position(|&x| x == v).unwrap();
            let val = &(&g.blocks_inv[pu] * r) * &g.blocks[pv];
            if !self.full(pu, pv) && !self.pos[self.idx(pu, pv)].span.contains(val.as_bytes()) {
                let c = self.slp.conjugate(g.inv_node, g.node, node);
                self.offer(pu, pv, val, c, depth);
            }
        }
    }
}

/// Builds a certificate that `bundle` generates SL(d, F_p), reading its
/// entries as `blocks × blocks` matrices of `block_dim`-sized blocks.
pub fn generation_certificate(
    bundle: &MarkingBundle,
    d: usize,
    p: u32,
    check: CertificateCheck,
) -> Result<GenerationCertificate> {
    if bundle.dim() != d {
        return Err(Error::DimensionMismatch(d, bundle.dim()));
    }
    if bundle.modulus() != p {
        return Err(Error::ModulusMismatch(p, bundle.modulus()));
    }
    let (n, l) = (bundle.blocks, bundle.block_dim);
    if n < 3 {
        return Err(Error::CertificateFailed(format!(
            "commutator relation needs at least 3 blocks, got {n}"
        )));
    }
    let mut search = Search {
        n,
        l,
        slp: Slp::default(),
        pos: (0..n * n)
            .map(|_| Position {
                span: Echelon::tracking(p, l * l),
                basis: Vec::new(),
            })
            .collect(),
        queue: VecDeque::new(),
    };
    let mut mono = Vec::new();
    let mut seeds = Vec::new();
    for (i, m) in bundle.elements.iter().enumerate() {
        if m.is_identity() {
            continue;
        }
        if let Some((u, v, r)) = as_elementary(m, n, l) {
            let node = search.slp.push(SlpStep::Gen(i));
            seeds.push((u, v, r, node));
        } else if let Some((perm, blocks)) = as_monomial(m, n, l) {
            let blocks_inv = blocks.iter().map(|b| b.inverse()).collect::<Result<Vec<_>>>()?;
            let node = search.slp.push(SlpStep::Gen(i));
            let inv_node = search.slp.push(SlpStep::Inv(node));
            mono.push(Monomial {
                perm,
                blocks,
                blocks_inv,
                node,
                inv_node,
            });
        }
    }
    for (u, v, r, node) in seeds {
        search.offer(u, v, r, node, 1);
    }
    // Semi-naive closure: a pair of spanning values at composable positions
    // is combined when the later of the two is dequeued, provided one of
    // them has depth at most PARTNER_DEPTH.
    while let Some((u, v, r, node, depth)) = search.queue.pop_front() {
        if search.complete() {
            break;
        }
        search.conjugates(&mono, u, v, &r, node, depth);
        let limit = if depth <= PARTNER_DEPTH { u32::MAX } else { PARTNER_DEPTH };
        for k in 0..n {
            if k == u || k == v {
                continue;
            }
            // [e_{u,v}^R, e_{v,k}^g] = e_{u,k}^{Rg}
            let todo = if search.full(u, k) { 0 } else { search.pos[v * n + k].basis.len() };
            for t in 0..todo {
                let (g, gnode, gdepth) = search.pos[v * n + k].basis[t].clone();
                if gdepth > limit {
                    continue;
                }
                let val = &r * &g;
                if !search.pos[u * n + k].span.contains(val.as_bytes()) {
                    let c = search.slp.commutator(node, gnode);
                    search.offer(u, k, val, c, depth + gdepth);
                }
            }
            // [e_{k,u}^g, e_{u,v}^R] = e_{k,v}^{gR}
            let todo = if search.full(k, v) { 0 } else { search.pos[k * n + u].basis.len() };
            for t in 0..todo {
                let (g, gnode, gdepth) = search.pos[k * n + u].basis[t].clone();
                if gdepth > limit {
                    continue;
                }
                let val = &g * &r;
                if !search.pos[k * n + v].span.contains(val.as_bytes()) {
                    let c = search.slp.commutator(gnode, node);
                    search.offer(k, v, val, c, depth + gdepth);
                }
            }
        }
    }
    if !search.complete() {
        let (u, v) = (0..n)
            .flat_map(|u| (0..n).map(move |v| (u, v)))
            .find(|&(u, v)| u != v && search.pos[u * n + v].span.rank() < l * l)
            .unwrap();
        return Err(Error::CertificateFailed(format!(
            "block position ({}, {}) reaches only a subspace of dimension {} out of {}",
            u + 1,
            v + 1,
            search.pos[u * n + v].span.rank(),
            l * l
        )));
    }
    // Assemble a word for every matrix unit at every position.
    let mut targets = Vec::with_capacity(n * (n - 1) * l * l);
    for u in 0..n {
        for v in 0..n {
            if u == v {
                continue;
            }
            for a in 0..l {
                for b in 0..l {
                    let mut unit = vec![0u8; l * l];
                    unit[a * l + b] = 1;
                    let coeffs = search.pos[u * n + v]
                        .span
                        .express(&unit)
                        .expect("full span expresses every unit");
                    let mut acc: Option<usize> = None;
                    for (c, (_, node, _)) in coeffs.iter().zip(&search.pos[u * n + v].basis) {
                        if *c == 0 {
                            continue;
                        }
                        let term = if *c == 1 {
                            *node
                        } else {
                            search.slp.push(SlpStep::Pow(*node, *c))
                        };
                        acc = Some(match acc {
                            None => term,
                            Some(x) => search.slp.push(SlpStep::Mul(x, term)),
                        });
                    }
                    targets.push(TargetWord {
                        u,
                        v,
                        a,
                        b,
                        node: acc.expect("unit vector is nonzero"),
                    });
                }
            }
        }
    }
    let mut cert = GenerationCertificate {
        blocks: n,
        block_dim: l,
        p,
        slp: search.slp,
        targets,
        verified: 0,
    };
    cert.verified = verify_targets(&cert, &bundle.elements, check)?;
    Ok(cert)
}

/// Evaluates the selected target words and compares each with the
/// expected elementary matrix. Returns how many were checked.
pub fn verify_targets(
    cert: &GenerationCertificate,
    gens: &[MatFp],
    check: CertificateCheck,
) -> Result<usize> {
    let total = cert.targets.len();
    let picks: Vec<usize> = match check {
        CertificateCheck::All => (0..total).collect(),
        CertificateCheck::Sample(k) if k > 0 && total > 0 => {
            let k = k.min(total);
            (0..k).map(|i| i * total / k).collect()
        }
        _ => Vec::new(),
    };
    let (n, l, p) = (cert.blocks, cert.block_dim, cert.p);
    let mut memo = Vec::new();
    for &i in &picks {
        let t = &cert.targets[i];
        let got = cert.slp.eval_node(gens, t.node, &mut memo);
        let mut expected = MatFp::identity(n * l, p);
        expected.set(t.u * l + t.a, t.v * l + t.b, 1);
        if got != expected {
            return Err(Error::CertificateFailed(format!(
                "word for block ({}, {}) entry ({}, {}) evaluates incorrectly",
                t.u + 1,
                t.v + 1,
                t.a + 1,
                t.b + 1
            )));
        }
    }
    Ok(picks.len())
}

/// |SL(d, F_p)| when it fits in a `u128`.
pub fn sl_order(d: usize, p: u32) -> Option<u128> {
    let q = p as u128;
    let mut order: u128 = 1;
    let qd = q.checked_pow(d as u32)?;
    let mut qi: u128 = 1;
    for _ in 0..d {
        order = order.checked_mul(qd - qi)?;
        qi *= q;
    }
    Some(order / (q - 1))
}
