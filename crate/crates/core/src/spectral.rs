//! Schreier graphs of matrix markings on projective points or nonzero
//! vectors of F_p^d, and spectral-gap estimates of their normalized
//! adjacency operators.
//!
//! All numbers produced here are empirical. Estimates come from a Lanczos
//! iteration on the complement of the constant vector, started from a
//! seeded random vector and stopped once the Ritz residuals of both ends of
//! the spectrum fall below the tolerance.

use std::collections::VecDeque;

use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{inv_mod, MatFp};
use crate::elementary::MarkingBundle;
use crate::error::{Error, Result};

pub const DEFAULT_VERTEX_CAP: usize = 1_000_000;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Action {
    /// Lines of F_p^d, each represented by its vector with leading entry 1.
    #[default]
    Projective,
    /// Nonzero vectors of F_p^d.
    Vectors,
}

impl Action {
    pub fn name(self) -> &'static str {
        match self {
            Action::Projective => "projective",
            Action::Vectors => "vectors",
        }
    }

    pub fn vertex_count(self, d: usize, p: u32) -> Option<u128> {
        let total = (p as u128).checked_pow(d as u32)? - 1;
        Some(match self {
            Action::Projective => total / (p as u128 - 1),
            Action::Vectors => total,
        })
    }
}

/// Indexing of the vertices of an action.
struct Points {
    d: usize,
    p: u32,
    action: Action,
    /// `offsets[i]`: first projective index with leading entry at `i`.
    offsets: Vec<usize>,
}

impl Points {
    fn new(d: usize, p: u32, action: Action) -> Self {
        let mut offsets = Vec::with_capacity(d + 1);
        let mut acc = 0usize;
        for i in 0..d {
            offsets.push(acc);
            acc += (p as usize).pow((d - 1 - i) as u32);
        }
        offsets.push(acc);
        Points { d, p, action, offsets }
    }

    fn len(&self) -> usize {
        match self.action {
            Action::Projective => self.offsets[self.d],
            Action::Vectors => (self.p as usize).pow(self.d as u32) - 1,
        }
    }

    fn digits(&self, mut code: usize, out: &mut [u8]) {
        for x in out.iter_mut().rev() {
            *x = (code % self.p as usize) as u8;
            code /= self.p as usize;
        }
    }

    fn number(&self, v: &[u8]) -> usize {
        v.iter().fold(0usize, |acc, &x| acc * self.p as usize + x as usize)
    }

    fn decode(&self, idx: usize) -> Vec<u8> {
        let mut v = vec![0u8; self.d];
        match self.action {
            Action::Vectors => self.digits(idx + 1, &mut v),
            Action::Projective => {
                let i = self.offsets.partition_point(|&o| o <= idx) - 1;
                v[i] = 1;
                self.digits(idx - self.offsets[i], &mut v[i + 1..]);
            }
        }
        v
    }

    fn encode(&self, v: &mut [u8]) -> usize {
        match self.action {
            Action::Vectors => self.number(v) - 1,
            Action::Projective => {
                let i = v.iter().position(|&x| x != 0).expect("nonzero vector");
                let s = inv_mod(v[i] as u32, self.p).expect("prime modulus");
                for x in v[i..].iter_mut() {
                    *x = (*x as u32 * s % self.p) as u8;
                }
                self.offsets[i] + self.number(&v[i + 1..])
            }
        }
    }
}

/// A finite set with one bijection per generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchreierGraph {
    vertices: usize,
    forward: Vec<Vec<u32>>,
    backward: Vec<Vec<u32>>,
}

impl SchreierGraph {
    /// Builds the graph from explicit vertex maps, which must be bijections.
    pub fn from_maps(vertices: usize, maps: Vec<Vec<u32>>) -> Result<Self> {
        let mut backward = Vec::with_capacity(maps.len());
        for (j, m) in maps.iter().enumerate() {
            if m.len() != vertices {
                return Err(Error::DimensionMismatch(vertices, m.len()));
            }
            let mut inv = vec![u32::MAX; vertices];
            for (v, &w) in m.iter().enumerate() {
                if w as usize >= vertices || inv[w as usize] != u32::MAX {
                    return Err(Error::InvalidArgument(format!("generator {} is not a bijection", j + 1)));
                }
                inv[w as usize] = v as u32;
            }
            backward.push(inv);
        }
        Ok(SchreierGraph {
            vertices,
            forward: maps,
            backward,
        })
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    /// Degree counting each generator and its inverse.
    pub fn degree(&self) -> usize {
        2 * self.forward.len()
    }

    pub fn is_connected(&self) -> bool {
        if self.vertices == 0 {
            return true;
        }
        let mut seen = vec![false; self.vertices];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for m in self.forward.iter().chain(&self.backward) {
                let w = m[v] as usize;
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == self.vertices
    }

    /// `y = A x` with `A = (1/deg) Σ_g (P_g + P_g⁻¹)`.
    pub fn apply(&self, x: &[f64], y: &mut [f64]) {
        let scale = 1.0 / self.degree() as f64;
        for (v, out) in y.iter_mut().enumerate() {
            let mut s = 0.0;
            for (f, b) in self.forward.iter().zip(&self.backward) {
                s += x[f[v] as usize] + x[b[v] as usize];
            }
            *out = s * scale;
        }
    }

    /// The normalized adjacency as a dense matrix, for small graphs.
    pub fn dense_adjacency(&self) -> DMatrix<f64> {
        let n = self.vertices;
        let mut a = DMatrix::zeros(n, n);
        let scale = 1.0 / self.degree() as f64;
        for (f, b) in self.forward.iter().zip(&self.backward) {
            for v in 0..n {
                a[(v, f[v] as usize)] += scale;
                a[(v, b[v] as usize)] += scale;
            }
        }
        a
    }
}

/// The graph of `gens` acting on vectors by `v ↦ M v`.
pub fn schreier_graph_of(gens: &[MatFp], action: Action, cap: usize) -> Result<SchreierGraph> {
    let Some(first) = gens.first() else {
        return Err(Error::InvalidArgument("no generators".into()));
    };
    let (d, p) = (first.dim(), first.modulus());
    match action.vertex_count(d, p) {
        Some(c) if c <= cap as u128 => {}
        Some(c) => return Err(Error::VertexCap { cap, vertices: c.to_string() }),
        None => return Err(Error::VertexCap { cap, vertices: "over 2^127".into() }),
    }
    if gens.iter().any(|g| g.determinant() == 0) {
        return Err(Error::Singular);
    }
    let pts = Points::new(d, p, action);
    let n = pts.len();
    let maps = gens
        .iter()
        .map(|g| {
            (0..n)
                .map(|i| {
                    let mut w = g.mul_vec(&pts.decode(i));
                    pts.encode(&mut w) as u32
                })
                .collect()
        })
        .collect();
    SchreierGraph::from_maps(n, maps)
}

pub fn schreier_graph(bundle: &MarkingBundle, action: Action, cap: usize) -> Result<SchreierGraph> {
    schreier_graph_of(&bundle.elements, action, cap)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectrumEstimate {
    /// Second largest eigenvalue of the normalized adjacency.
    pub lambda2: f64,
    /// Smallest eigenvalue.
    pub lambda_min: f64,
    /// Largest modulus among the nontrivial eigenvalues.
    pub slem: f64,
    /// `1 − λ₂`.
    pub gap: f64,
    pub iterations: usize,
    pub residual: f64,
    pub seed: u64,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn remove_mean(x: &mut [f64]) {
    let m = x.iter().sum::<f64>() / x.len() as f64;
    x.iter_mut().for_each(|v| *v -= m);
}

/// Estimates `1 − λ₂`; the graph must be connected.
pub fn spectral_gap(g: &SchreierGraph, tol: f64, seed: u64, max_iter: usize) -> Result<SpectrumEstimate> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = g.vertices();
    if n < 2 {
        return Err(Error::InvalidArgument("a graph on fewer than 2 vertices has no gap".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
    remove_mean(&mut v);
    let norm = dot(&v, &v).sqrt();
    v.iter_mut().for_each(|x| *x /= norm);
    let mut prev = vec![0.0; n];
    let mut w = vec![0.0; n];
    let (mut alphas, mut betas) = (Vec::new(), Vec::<f64>::new());
    let limit = max_iter.min(n - 1).max(1);
    let mut last = None;
    for it in 1..=limit {
        g.apply(&v, &mut w);
        remove_mean(&mut w);
        let a = dot(&w, &v);
        let b_prev = betas.last().copied().unwrap_or(0.0);
        for i in 0..n {
            w[i] -= a * v[i] + b_prev * prev[i];
        }
        alphas.push(a);
        let b = dot(&w, &w).sqrt();
        let exhausted = b < 1e-12 || it == limit;
        if exhausted || it % 5 == 0 {
            let m = alphas.len();
            let t = DMatrix::from_fn(m, m, |i, j| {
                if i == j {
                    alphas[i]
                } else if i + 1 == j || j + 1 == i {
                    betas[i.min(j)]
                } else {
                    0.0
                }
            });
            let eig = SymmetricEigen::new(t);
            let (mut imax, mut imin) = (0, 0);
            for i in 0..m {
                if eig.eigenvalues[i] > eig.eigenvalues[imax] {
                    imax = i;
                }
                if eig.eigenvalues[i] < eig.eigenvalues[imin] {
                    imin = i;
                }
            }
            let res = |i: usize| b * eig.eigenvectors[(m - 1, i)].abs();
            let residual = if b < 1e-12 { 0.0 } else { res(imax).max(res(imin)) };
            let (hi, lo) = (eig.eigenvalues[imax], eig.eigenvalues[imin]);
            last = Some((hi, lo, it, residual));
            if residual < tol || b < 1e-12 {
                break;
            }
        }
        if b < 1e-12 {
            break;
        }
        betas.push(b);
        std::mem::swap(&mut prev, &mut v);
        for i in 0..n {
            v[i] = w[i] / b;
        }
    }
    let (hi, lo, iterations, residual) = last.expect("at least one iteration");
    if residual >= tol {
        return Err(Error::NoConvergence(iterations));
    }
    Ok(SpectrumEstimate {
        lambda2: hi,
        lambda_min: lo,
        slem: hi.abs().max(lo.abs()),
        gap: 1.0 - hi,
        iterations,
        residual,
        seed,
    })
}

/// One point of a gap series.
#[derive(Clone, Debug, PartialEq)]
pub struct GapPoint {
    pub label: String,
    pub dim: usize,
    pub vertices: Option<usize>,
    pub connected: bool,
    /// `Ok` with the estimate, or the reason the level was skipped. A
    /// disconnected graph is reported with gap 0.
    pub estimate: std::result::Result<SpectrumEstimate, String>,
}

impl GapPoint {
    pub fn gap(&self) -> Option<f64> {
        match &self.estimate {
            Ok(e) => Some(e.gap),
            Err(_) if !self.connected && self.vertices.is_some() => Some(0.0),
            Err(_) => None,
        }
    }
}

/// Gap estimates for a list of labelled markings.
pub fn gap_series(
    bundles: &[(String, &MarkingBundle)],
    action: Action,
    cap: usize,
    tol: f64,
    seed: u64,
    max_iter: usize,
) -> Vec<GapPoint> {
    bundles
        .iter()
        .map(|(label, b)| {
            let mut pt = GapPoint {
                label: label.clone(),
                dim: b.dim(),
                vertices: None,
                connected: false,
                estimate: Err(String::new()),
            };
            match schreier_graph(b, action, cap) {
                Err(e) => pt.estimate = Err(e.to_string()),
                Ok(g) => {
                    pt.vertices = Some(g.vertices());
                    pt.connected = g.is_connected();
                    pt.estimate = spectral_gap(&g, tol, seed, max_iter).map_err(|e| e.to_string());
                }
            }
            pt
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elementary::amenable_two_marking;

    fn cycle(n: usize) -> SchreierGraph {
        SchreierGraph::from_maps(n, vec![(0..n).map(|v| ((v + 1) % n) as u32).collect()]).unwrap()
    }

    #[test]
    fn cycle_gaps_match_closed_form() {
        for n in [4, 8, 16, 64] {
            let e = spectral_gap(&cycle(n), 1e-10, 1, 1000).unwrap();
            let want = 1.0 - (2.0 * std::f64::consts::PI / n as f64).cos();
            assert!((e.gap - want).abs() < 1e-8, "n={n}: {} vs {want}", e.gap);
            assert!((0.0..=1.0).contains(&e.slem));
        }
    }

    #[test]
    fn projective_line_over_f3() {
        let a = MatFp::from_rows(3, &[vec![1, 1], vec![0, 1]]).unwrap();
        let b = MatFp::from_rows(3, &[vec![1, 0], vec![1, 1]]).unwrap();
        let g = schreier_graph_of(&[a, b], Action::Projective, 100).unwrap();
        assert_eq!(g.vertices(), 4);
        assert!(g.is_connected());
        let v = schreier_graph_of(&[MatFp::identity(2, 3)], Action::Vectors, 100).unwrap();
        assert_eq!(v.vertices(), 8);
        assert!(!v.is_connected());
        assert_eq!(spectral_gap(&v, 1e-8, 0, 100), Err(Error::Disconnected));
    }

    #[test]
    fn point_indexing_round_trips() {
        for action in [Action::Projective, Action::Vectors] {
            let pts = Points::new(4, 3, action);
            assert_eq!(pts.len() as u128, action.vertex_count(4, 3).unwrap());
            for i in 0..pts.len() {
                let mut v = pts.decode(i);
                assert_eq!(pts.encode(&mut v), i);
            }
        }
    }

    #[test]
    fn lanczos_agrees_with_dense_eigenvalues() {
        let two = amenable_two_marking(4, 3).unwrap();
        let g = schreier_graph(&two, Action::Projective, 1000).unwrap();
        assert_eq!(g.vertices(), 40);
        let eig = SymmetricEigen::new(g.dense_adjacency());
        let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        vals.sort_by(|a, b| b.partial_cmp(a).unwrap());
        let e = spectral_gap(&g, 1e-9, 3, 1000).unwrap();
        assert!((e.lambda2 - vals[1]).abs() < 1e-7);
        assert!((e.lambda_min - vals[vals.len() - 1]).abs() < 1e-7);
    }

    #[test]
    fn estimates_ignore_generator_order_and_inverse_closure() {
        let two = amenable_two_marking(5, 3).unwrap();
        let mut gens = two.elements.clone();
        let base = spectral_gap(&schreier_graph_of(&gens, Action::Projective, 1000).unwrap(), 1e-9, 1, 1000).unwrap();
        gens.reverse();
        let swapped = spectral_gap(&schreier_graph_of(&gens, Action::Projective, 1000).unwrap(), 1e-9, 2, 1000).unwrap();
        let closed: Vec<MatFp> = gens.iter().flat_map(|g| [g.clone(), g.inverse().unwrap()]).collect();
        let sym = spectral_gap(&schreier_graph_of(&closed, Action::Projective, 1000).unwrap(), 1e-9, 3, 1000).unwrap();
        assert!((base.gap - swapped.gap).abs() < 1e-7);
        assert!((base.gap - sym.gap).abs() < 1e-7);
    }

    #[test]
    fn cap_is_enforced() {
        let two = amenable_two_marking(30, 3).unwrap();
        assert!(matches!(schreier_graph(&two, Action::Projective, DEFAULT_VERTEX_CAP), Err(Error::VertexCap { .. })));
    }
}
