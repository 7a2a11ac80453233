//! Incremental row echelon form over F_p, optionally remembering how each
//! row was obtained from the inserted vectors.

use super::fp::inv_mod;

#[derive(Clone, Debug)]
pub struct Echelon {
    p: u32,
    width: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
    // combos[r][k] = coefficient of the k-th accepted vector in row r
    combos: Option<Vec<Vec<u32>>>,
    accepted: usize,
}

impl Echelon {
    pub fn new(p: u32, width: usize) -> Self {
        Echelon {
            p,
            width,
            rows: Vec::new(),
            pivots: Vec::new(),
            combos: None,
            accepted: 0,
        }
    }

    /// Like [`Echelon::new`], but tracks combinations so that
    /// [`Echelon::express`] works.
    pub fn tracking(p: u32, width: usize) -> Self {
        let mut e = Self::new(p, width);
        e.combos = Some(Vec::new());
        e
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    // Reduces v against the current rows; with `track`, also returns the
    // combination of rows that was subtracted, over accepted vectors.
    fn reduce(&self, v: &mut [u32], track: bool) -> Option<Vec<u32>> {
        let p = self.p;
        let mut combo = self.combos.as_ref().filter(|_| track).map(|_| vec![0u32; self.accepted]);
        for (r, (row, &piv)) in self.rows.iter().zip(&self.pivots).enumerate() {
            let f = v[piv];
            if f == 0 {
                continue;
            }
            for j in piv..self.width {
                if row[j] != 0 {
                    v[j] = (v[j] + p * p - f * row[j]) % p;
                }
            }
            if let (Some(c), Some(combos)) = (combo.as_mut(), self.combos.as_ref()) {
                for (k, &x) in combos[r].iter().enumerate() {
                    c[k] = (c[k] + f * x) % p;
                }
            }
        }
        combo
    }

    /// Inserts `v`; returns `true` when it enlarged the span.
    pub fn insert(&mut self, v: &[u8]) -> bool {
        let p = self.p;
        let mut w: Vec<u32> = v.iter().map(|&x| x as u32 % p).collect();
        let sub = self.reduce(&mut w, true);
        let Some(piv) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        self.accepted += 1;
        let inv = inv_mod(w[piv], p).unwrap();
        for x in w.iter_mut() {
            *x = *x * inv % p;
        }
        if let Some(combos) = self.combos.as_mut() {
            for c in combos.iter_mut() {
                c.push(0);
            }
            // row = inv * (v - sub)
            let mut c: Vec<u32> = sub.unwrap().iter().map(|&x| (p - x) % p * inv % p).collect();
            c.push(inv);
            combos.push(c);
        }
        // Keep rows fully reduced on pivot columns.
        let pos = self.pivots.partition_point(|&q| q < piv);
        for r in 0..self.rows.len() {
            let f = self.rows[r][piv];
            if f == 0 {
                continue;
            }
            for j in piv..self.width {
                if w[j] != 0 {
                    self.rows[r][j] = (self.rows[r][j] + p * p - f * w[j]) % p;
                }
            }
            if let Some(combos) = self.combos.as_mut() {
                let new_row = combos.last().unwrap().clone();
                for (x, y) in combos[r].iter_mut().zip(&new_row) {
                    *x = (*x + p * p - f * y) % p;
                }
            }
        }
        self.rows.insert(pos, w);
        self.pivots.insert(pos, piv);
        if let Some(combos) = self.combos.as_mut() {
            let c = combos.pop().unwrap();
            combos.insert(pos, c);
        }
        true
    }

    pub fn contains(&self, v: &[u8]) -> bool {
        let mut w: Vec<u32> = v.iter().map(|&x| x as u32 % self.p).collect();
        self.reduce(&mut w, false);
        w.iter().all(|&x| x == 0)
    }

    /// Coefficients `c` over the accepted vectors (in acceptance order)
    /// with `Σ c_k v_k = v`, if `v` lies in the span. Requires tracking.
    pub fn express(&self, v: &[u8]) -> Option<Vec<u32>> {
        self.combos.as_ref()?;
        let mut w: Vec<u32> = v.iter().map(|&x| x as u32 % self.p).collect();
        let c = self.reduce(&mut w, true)?;
        w.iter().all(|&x| x == 0).then_some(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn rank_and_membership() {
        let mut e = Echelon::new(3, 3);
        assert!(e.insert(&[1, 2, 0]));
        assert!(e.insert(&[0, 1, 1]));
        assert!(!e.insert(&[1, 0, 1])); // (1,2,0) + (0,1,1) = (1,0,1)
        assert_eq!(e.rank(), 2);
        assert!(!e.contains(&[0, 0, 1]));
    }

    #[test]
    fn expressions_reconstruct_vectors() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let p = 5u32;
        let width = 8;
        let mut e = Echelon::tracking(p, width);
        let mut accepted: Vec<Vec<u8>> = Vec::new();
        for _ in 0..6 {
            let v: Vec<u8> = (0..width).map(|_| rng.gen_range(0..p) as u8).collect();
            if e.insert(&v) {
                accepted.push(v);
            }
        }
        for _ in 0..20 {
            let coeffs: Vec<u32> = (0..accepted.len()).map(|_| rng.gen_range(0..p)).collect();
            let target: Vec<u8> = (0..width)
                .map(|j| {
                    (coeffs.iter().zip(&accepted).map(|(c, v)| c * v[j] as u32).sum::<u32>() % p)
                        as u8
                })
                .collect();
            let c = e.express(&target).unwrap();
            let rebuilt: Vec<u8> = (0..width)
                .map(|j| {
                    (c.iter().zip(&accepted).map(|(c, v)| c * v[j] as u32).sum::<u32>() % p) as u8
                })
                .collect();
            assert_eq!(rebuilt, target);
        }
    }
}
