//! The heart of the modular standard representation of Sym(L).
//!
//! V is the zero-sum subspace of F_p^L with basis `v_i = δ_i − δ_0`,
//! `i = 1..#L−1`. When `p | #L` the constant vector lies in V, and
//! U = V / F_p·1 has basis the classes of `v_1, ..., v_{#L−2}`, with
//! `v_{#L−1} ≡ −(v_1 + ... + v_{#L−2})`. A permutation acts by
//! `σ·δ_h = δ_{σ(h)}`.

use crate::algebra::{Echelon, GroupRingElement, MatFp};
use crate::error::{Error, Result};
use crate::perm::Permutation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HeartBasis {
    size: usize,
    p: u32,
}

impl HeartBasis {
    pub fn new(size: usize, p: u32) -> Result<Self> {
        crate::algebra::check_prime(p)?;
        if size < 3 {
            return Err(Error::InvalidArgument(format!(
                "a set of size {size} has no nonzero heart"
            )));
        }
        if !size.is_multiple_of(p as usize) {
            return Err(Error::PrimeDoesNotDivide { p, size });
        }
        Ok(HeartBasis { size, p })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.size - 2
    }
}

/// Matrix of `σ` acting on the heart, in the basis described above.
pub fn heart_matrix(sigma: &Permutation, basis: &HeartBasis) -> Result<MatFp> {
    let n = basis.size;
    if sigma.degree() != n {
        return Err(Error::DimensionMismatch(n, sigma.degree()));
    }
    let d = n - 2;
    let p = basis.p;
    let mut m = MatFp::zeros(d, p);
    // σ·v_i = v_{σ(i)} − v_{σ(0)} with v_0 = 0.
    let add = |m: &mut MatFp, col: usize, k: usize, sign: u32| {
        if k == 0 {
            return;
        }
        if k == n - 1 {
            // v_{n-1} ≡ −Σ v_r
            for r in 0..d {
                let v = m.get(r, col);
                m.set(r, col, v + (p - sign) % p);
            }
        } else {
            let v = m.get(k - 1, col);
            m.set(k - 1, col, v + sign);
        }
    };
    let s0 = sigma.apply(0);
    for i in 1..=d {
        add(&mut m, i - 1, sigma.apply(i), 1);
        add(&mut m, i - 1, s0, p - 1);
    }
    Ok(m)
}

/// Dimension of the unital subalgebra of `Mat_d(F_p)` generated by `mats`.
///
/// The algebra is the span of all words in the generators, which is the
/// closure of `{I}` under right multiplication by generators; left
/// products add nothing further.
pub fn algebra_span_dim(mats: &[MatFp]) -> Result<usize> {
    let first = mats
        .first()
        .ok_or_else(|| Error::InvalidArgument("empty generator list".into()))?;
    let (d, p) = (first.dim(), first.modulus());
    for m in mats {
        if m.dim() != d {
            return Err(Error::DimensionMismatch(d, m.dim()));
        }
        if m.modulus() != p {
            return Err(Error::ModulusMismatch(p, m.modulus()));
        }
    }
    let mut ech = Echelon::new(p, d * d);
    let id = MatFp::identity(d, p);
    ech.insert(id.as_bytes());
    let mut basis = vec![id];
    let mut head = 0;
    while head < basis.len() && ech.rank() < d * d {
        let b = basis[head].clone();
        head += 1;
        for g in mats {
            let prod = &b * g;
            if ech.insert(prod.as_bytes()) {
                basis.push(prod);
            }
        }
    }
    Ok(ech.rank())
}

/// Burnside criterion: the heart images of `gens` span the full matrix
/// algebra of the heart.
pub fn is_irreducible_heart(basis: &HeartBasis, gens: &[Permutation]) -> Result<bool> {
    let mats = gens
        .iter()
        .map(|g| heart_matrix(g, basis))
        .collect::<Result<Vec<_>>>()?;
    let d = basis.dim();
    Ok(algebra_span_dim(&mats)? == d * d)
}

/// Image of a group-ring element of Sym(L); `perms[g]` is the permutation
/// at table index `g`.
pub fn heart_of_group_ring(
    a: &GroupRingElement,
    perms: &[Permutation],
    basis: &HeartBasis,
) -> Result<MatFp> {
    if perms.len() != a.group().order() {
        return Err(Error::DimensionMismatch(a.group().order(), perms.len()));
    }
    let terms: Vec<(i64, &Permutation)> = a
        .coeffs()
        .iter()
        .zip(perms)
        .filter(|(&c, _)| c != 0)
        .map(|(&c, s)| (c as i64, s))
        .collect();
    combine(&terms, basis)
}

/// Image of the formal combination `Σ c_i σ_i`.
pub fn heart_of_combination(terms: &[(i64, Permutation)], basis: &HeartBasis) -> Result<MatFp> {
    let refs: Vec<(i64, &Permutation)> = terms.iter().map(|(c, s)| (*c, s)).collect();
    combine(&refs, basis)
}

fn combine(terms: &[(i64, &Permutation)], basis: &HeartBasis) -> Result<MatFp> {
    let p = basis.p;
    let mut acc = MatFp::zeros(basis.dim(), p);
    for (c, s) in terms {
        let m = heart_matrix(s, basis)?.scale(c.rem_euclid(p as i64) as u32);
        acc = acc.checked_add(&m)?;
    }
    Ok(acc)
}
