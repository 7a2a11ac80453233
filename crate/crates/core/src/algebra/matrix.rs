use std::fmt;
use std::ops::Mul;

use rand::Rng;

use super::fp::{check_prime, inv_mod, Fp};
use crate::error::{Error, Result};

/// Dense square matrix over F_p, row-major, one byte per entry.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MatFp {
    dim: usize,
    p: u32,
    data: Vec<u8>,
}

impl MatFp {
    pub fn new(dim: usize, p: u32, entries: Vec<u32>) -> Result<Self> {
        check_prime(p)?;
        if dim == 0 {
            return Err(Error::InvalidArgument("matrix dimension must be positive".into()));
        }
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch(dim * dim, entries.len()));
        }
        Ok(MatFp {
            dim,
            p,
            data: entries.into_iter().map(|v| (v % p) as u8).collect(),
        })
    }

    pub fn from_rows(p: u32, rows: &[Vec<i64>]) -> Result<Self> {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch(dim, row.len()));
            }
            entries.extend(row.iter().map(|&v| v.rem_euclid(p as i64) as u32));
        }
        Self::new(dim, p, entries)
    }

    pub fn zeros(dim: usize, p: u32) -> Self {
        MatFp {
            dim,
            p,
            data: vec![0; dim * dim],
        }
    }

    pub fn identity(dim: usize, p: u32) -> Self {
        let mut m = Self::zeros(dim, p);
        for i in 0..dim {
            m.data[i * dim + i] = 1;
        }
        m
    }

    /// The scalar matrix `c·I`.
    pub fn scalar(dim: usize, p: u32, c: u32) -> Self {
        let mut m = Self::zeros(dim, p);
        for i in 0..dim {
            m.data[i * dim + i] = (c % p) as u8;
        }
        m
    }

    /// Matrix unit with a single 1 at `(i, j)` (0-based).
    pub fn unit(dim: usize, p: u32, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(dim, p);
        m.data[i * dim + j] = 1;
        m
    }

    /// Permutation matrix sending basis vector `e_k` to `e_{perm[k]}`.
    pub fn permutation(p: u32, perm: &[usize]) -> Self {
        let dim = perm.len();
        let mut m = Self::zeros(dim, p);
        for (k, &img) in perm.iter().enumerate() {
            m.data[img * dim + k] = 1;
        }
        m
    }

    pub fn random<R: Rng + ?Sized>(dim: usize, p: u32, rng: &mut R) -> Self {
        MatFp {
            dim,
            p,
            data: (0..dim * dim).map(|_| rng.gen_range(0..p) as u8).collect(),
        }
    }

    pub fn random_invertible<R: Rng + ?Sized>(dim: usize, p: u32, rng: &mut R) -> Self {
        loop {
            let m = Self::random(dim, p, rng);
            if m.determinant() != 0 {
                return m;
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.dim + j] as u32
    }

    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.dim + j] = (v % self.p) as u8;
    }

    pub fn entry(&self, i: usize, j: usize) -> Fp {
        Fp::from_raw(self.get(i, j), self.p)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn is_identity(&self) -> bool {
        let d = self.dim;
        self.data
            .iter()
            .enumerate()
            .all(|(idx, &v)| v == u8::from(idx / d == idx % d))
    }

    /// `Some(c)` when the matrix is `c·I`.
    pub fn as_scalar(&self) -> Option<u32> {
        let c = self.data[0];
        let d = self.dim;
        let ok = self
            .data
            .iter()
            .enumerate()
            .all(|(idx, &v)| if idx / d == idx % d { v == c } else { v == 0 });
        ok.then_some(c as u32)
    }

    pub fn nonzero_count(&self) -> usize {
        self.data.iter().filter(|&&v| v != 0).count()
    }

    fn check_compatible(&self, other: &MatFp) -> Result<()> {
        if self.p != other.p {
            return Err(Error::ModulusMismatch(self.p, other.p));
        }
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        Ok(())
    }

    pub fn checked_mul(&self, other: &MatFp) -> Result<MatFp> {
        self.check_compatible(other)?;
        Ok(self.mul_unchecked(other))
    }

    // Row-by-row accumulation that skips zero entries of the left factor;
    // most matrices multiplied here are monomial or unipotent.
    fn mul_unchecked(&self, other: &MatFp) -> MatFp {
        let d = self.dim;
        let p = self.p as u64;
        let mut out = vec![0u8; d * d];
        let mut acc = vec![0u64; d];
        for i in 0..d {
            acc.iter_mut().for_each(|a| *a = 0);
            let row = &self.data[i * d..(i + 1) * d];
            for (k, &a) in row.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                let a = a as u64;
                let brow = &other.data[k * d..(k + 1) * d];
                for (slot, &b) in acc.iter_mut().zip(brow) {
                    *slot += a * b as u64;
                }
            }
            for (o, a) in out[i * d..(i + 1) * d].iter_mut().zip(&acc) {
                *o = (a % p) as u8;
            }
        }
        MatFp {
            dim: d,
            p: self.p,
            data: out,
        }
    }

    pub fn checked_add(&self, other: &MatFp) -> Result<MatFp> {
        self.check_compatible(other)?;
        let p = self.p as u16;
        Ok(MatFp {
            dim: self.dim,
            p: self.p,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| ((a as u16 + b as u16) % p) as u8)
                .collect(),
        })
    }

    pub fn checked_sub(&self, other: &MatFp) -> Result<MatFp> {
        self.checked_add(&other.neg())
    }

    pub fn neg(&self) -> MatFp {
        let p = self.p as u16;
        MatFp {
            dim: self.dim,
            p: self.p,
            data: self
                .data
                .iter()
                .map(|&a| ((p - a as u16) % p) as u8)
                .collect(),
        }
    }

    pub fn scale(&self, c: u32) -> MatFp {
        let p = self.p;
        let c = c % p;
        MatFp {
            dim: self.dim,
            p,
            data: self
                .data
                .iter()
                .map(|&a| ((a as u32 * c) % p) as u8)
                .collect(),
        }
    }

    pub fn transpose(&self) -> MatFp {
        let d = self.dim;
        let mut out = Self::zeros(d, self.p);
        for i in 0..d {
            for j in 0..d {
                out.data[j * d + i] = self.data[i * d + j];
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u8]) -> Vec<u8> {
        let d = self.dim;
        let p = self.p as u64;
        (0..d)
            .map(|i| {
                let row = &self.data[i * d..(i + 1) * d];
                let s: u64 = row
                    .iter()
                    .zip(v)
                    .map(|(&a, &b)| a as u64 * b as u64)
                    .sum();
                (s % p) as u8
            })
            .collect()
    }

    /// Determinant by Gaussian elimination over F_p.
    pub fn determinant(&self) -> u32 {
        let d = self.dim;
        let p = self.p;
        let mut a: Vec<u32> = self.data.iter().map(|&v| v as u32).collect();
        let mut det: u32 = 1;
        for c in 0..d {
            let Some(piv) = (c..d).find(|&r| a[r * d + c] != 0) else {
                return 0;
            };
            if piv != c {
                for j in 0..d {
                    a.swap(piv * d + j, c * d + j);
                }
                det = (p - det) % p;
            }
            let pv = a[c * d + c];
            det = det * pv % p;
            let pinv = inv_mod(pv, p).expect("pivot is nonzero");
            let support: Vec<usize> = (c + 1..d).filter(|&j| a[c * d + j] != 0).collect();
            for r in c + 1..d {
                let f = a[r * d + c];
                if f == 0 {
                    continue;
                }
                let f = f * pinv % p;
                for &j in &support {
                    let v = a[c * d + j];
                    a[r * d + j] = (a[r * d + j] + p * p - f * v) % p;
                }
                a[r * d + c] = 0;
            }
        }
        det
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> Result<MatFp> {
        let d = self.dim;
        let p = self.p;
        let mut a: Vec<u32> = self.data.iter().map(|&v| v as u32).collect();
        let mut b: Vec<u32> = Self::identity(d, p).data.iter().map(|&v| v as u32).collect();
        for c in 0..d {
            let piv = (c..d).find(|&r| a[r * d + c] != 0).ok_or(Error::Singular)?;
            if piv != c {
                for j in 0..d {
                    a.swap(piv * d + j, c * d + j);
                    b.swap(piv * d + j, c * d + j);
                }
            }
            let pinv = inv_mod(a[c * d + c], p).expect("pivot is nonzero");
            for j in 0..d {
                a[c * d + j] = a[c * d + j] * pinv % p;
                b[c * d + j] = b[c * d + j] * pinv % p;
            }
            let sa: Vec<usize> = (0..d).filter(|&j| a[c * d + j] != 0).collect();
            let sb: Vec<usize> = (0..d).filter(|&j| b[c * d + j] != 0).collect();
            for r in 0..d {
                if r == c {
                    continue;
                }
                let f = a[r * d + c];
                if f == 0 {
                    continue;
                }
                for &j in &sa {
                    a[r * d + j] = (a[r * d + j] + p * p - f * a[c * d + j]) % p;
                }
                for &j in &sb {
                    b[r * d + j] = (b[r * d + j] + p * p - f * b[c * d + j]) % p;
                }
            }
        }
        Ok(MatFp {
            dim: d,
            p,
            data: b.into_iter().map(|v| v as u8).collect(),
        })
    }

    pub fn rank(&self) -> usize {
        let d = self.dim;
        let p = self.p;
        let mut a: Vec<u32> = self.data.iter().map(|&v| v as u32).collect();
        let mut rank = 0;
        for c in 0..d {
            let Some(piv) = (rank..d).find(|&r| a[r * d + c] != 0) else {
                continue;
            };
            for j in 0..d {
                a.swap(piv * d + j, rank * d + j);
            }
            let pinv = inv_mod(a[rank * d + c], p).unwrap();
            for r in rank + 1..d {
                let f = a[r * d + c] * pinv % p;
                if f == 0 {
                    continue;
                }
                for j in c..d {
                    a[r * d + j] = (a[r * d + j] + p * p - f * a[rank * d + j]) % p;
                }
            }
            rank += 1;
        }
        rank
    }

    /// Non-negative power by repeated squaring.
    pub fn pow(&self, mut e: u64) -> MatFp {
        let mut base = self.clone();
        let mut acc = Self::identity(self.dim, self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    /// Multiplicative order, searched up to `cap`.
    pub fn order(&self, cap: u64) -> Option<u64> {
        let mut acc = self.clone();
        for k in 1..=cap {
            if acc.is_identity() {
                return Some(k);
            }
            acc = acc.mul_unchecked(self);
        }
        None
    }

    /// The `l×l` block at block position `(bi, bj)`.
    pub fn block(&self, bi: usize, bj: usize, l: usize) -> MatFp {
        let d = self.dim;
        let mut out = Self::zeros(l, self.p);
        for r in 0..l {
            let src = (bi * l + r) * d + bj * l;
            out.data[r * l..(r + 1) * l].copy_from_slice(&self.data[src..src + l]);
        }
        out
    }

    pub fn set_block(&mut self, bi: usize, bj: usize, block: &MatFp) {
        let d = self.dim;
        let l = block.dim;
        for r in 0..l {
            let dst = (bi * l + r) * d + bj * l;
            self.data[dst..dst + l].copy_from_slice(&block.data[r * l..(r + 1) * l]);
        }
    }
}

impl Mul for &MatFp {
    type Output = MatFp;

    fn mul(self, rhs: &MatFp) -> MatFp {
        assert_eq!(self.dim, rhs.dim, "matrix dimension mismatch");
        assert_eq!(self.p, rhs.p, "matrix modulus mismatch");
        self.mul_unchecked(rhs)
    }
}

impl fmt::Debug for MatFp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "MatFp({}x{}, p={})", self.dim, self.dim, self.p)?;
        for i in 0..self.dim {
            let row: Vec<String> = (0..self.dim).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identity_squares_to_identity() {
        let i = MatFp::identity(3, 3);
        assert_eq!(&i * &i, i);
    }

    #[test]
    fn unitriangular_determinant() {
        let m = MatFp::from_rows(5, &[vec![1, 1], vec![0, 1]]).unwrap();
        assert_eq!(m.determinant(), 1);
    }

    #[test]
    fn random_inverse_over_f3() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let a = MatFp::random_invertible(4, 3, &mut rng);
            let ai = a.inverse().unwrap();
            assert!((&a * &ai).is_identity());
            assert!((&ai * &a).is_identity());
        }
    }

    #[test]
    fn singular_inverse_fails() {
        let m = MatFp::from_rows(3, &[vec![1, 2], vec![2, 1]]).unwrap();
        // rows are proportional mod 3: (2,1) = 2*(1,2)
        assert_eq!(m.determinant(), 0);
        assert_eq!(m.inverse(), Err(Error::Singular));
    }

    #[test]
    fn mismatches_are_errors() {
        let a = MatFp::identity(2, 3);
        assert_eq!(
            a.checked_mul(&MatFp::identity(3, 3)),
            Err(Error::DimensionMismatch(2, 3))
        );
        assert_eq!(
            a.checked_mul(&MatFp::identity(2, 5)),
            Err(Error::ModulusMismatch(3, 5))
        );
    }

    #[test]
    fn determinant_is_multiplicative() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for p in [2u32, 3, 5, 7] {
            for d in 1..6 {
                let a = MatFp::random(d, p, &mut rng);
                let b = MatFp::random(d, p, &mut rng);
                let c = MatFp::random(d, p, &mut rng);
                assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                assert_eq!((&a * &b).determinant(), a.determinant() * b.determinant() % p);
            }
        }
    }

    #[test]
    fn permutation_matrices_compose_like_permutations() {
        // perm a: 0->1->2->0, perm b: swap 0,1
        let a = [1usize, 2, 0];
        let b = [1usize, 0, 2];
        let ab: Vec<usize> = (0..3).map(|x| a[b[x]]).collect();
        let pa = MatFp::permutation(5, &a);
        let pb = MatFp::permutation(5, &b);
        assert_eq!(&pa * &pb, MatFp::permutation(5, &ab));
    }

    #[test]
    fn blocks_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let m = MatFp::random(6, 3, &mut rng);
        let mut rebuilt = MatFp::zeros(6, 3);
        for bi in 0..3 {
            for bj in 0..3 {
                rebuilt.set_block(bi, bj, &m.block(bi, bj, 2));
            }
        }
        assert_eq!(rebuilt, m);
    }
}
