//! Randomized and exhaustive checks of the elementary-matrix identities over
//! several entry-ring families, collected into a report.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{GroupTable, MatFp, Ring, RingElement};
use crate::element::GroupElement;
use crate::error::Result;
use crate::marked::{generation_certificate, CertificateCheck};
use crate::report::{Record, Report};

use super::elem_matrix::{beta, elem, order2_word, sharp_commutator, BetaSign};
use super::markings::nine_marking_images;

/// The entry rings sampled for prime `p`: the field, 2×2 and 3×3 matrices
/// and the group ring of Sym(3).
pub fn ring_families(p: u32) -> Result<Vec<(String, Ring)>> {
    let (s3, _) = GroupTable::symmetric(3);
    Ok(vec![
        (format!("F{p}"), Ring::field(p)?),
        (format!("Mat2(F{p})"), Ring::matrices(2, p)?),
        (format!("Mat3(F{p})"), Ring::matrices(3, p)?),
        (format!("F{p}[Sym3]"), Ring::group_ring(Arc::new(s3), p)?),
    ])
}

/// Checks the six-factor word against `diag(r, r⁻¹)` on `samples` random
/// units. Returns the number of mismatches.
pub fn order2_mismatches(ring: &Ring, samples: usize, rng: &mut ChaCha8Rng) -> usize {
    (0..samples)
        .filter(|_| order2_word(&ring.random_unit(rng)).is_err())
        .count()
}

/// Checks `[e_ij^a, e_jk^b] = e_ik^{ab}` on every ordered triple of
/// distinct indices, with `samples` random pairs spread over the triples.
pub fn sharp_mismatches(ring: &Ring, n: usize, samples: usize, rng: &mut ChaCha8Rng) -> (usize, usize) {
    let triples: Vec<(usize, usize, usize)> = (1..=n)
        .flat_map(|i| (1..=n).flat_map(move |j| (1..=n).map(move |k| (i, j, k))))
        .filter(|&(i, j, k)| i != j && j != k && i != k)
        .collect();
    let rounds = samples.div_ceil(triples.len()).max(1);
    let mut bad = 0;
    let mut total = 0;
    for _ in 0..rounds {
        for &(i, j, k) in &triples {
            let (a, b) = (ring.random(rng), ring.random(rng));
            total += 1;
            if sharp_commutator(i, j, k, &a, &b, n).is_err() {
                bad += 1;
            }
        }
    }
    (bad, total)
}

/// Checks that conjugating `e_ij^r` by the shift moves it to
/// `e_{i+1,j+1}^{±r}`, the sign flipping once for each index that wraps
/// around when the shift is signed.
pub fn beta_mismatches(ring: &Ring, n: usize, samples: usize, rng: &mut ChaCha8Rng) -> Result<(usize, usize)> {
    let mut bad = 0;
    let mut total = 0;
    let rounds = samples.div_ceil(n * (n - 1)).max(1);
    for sign in [BetaSign::Signed, BetaSign::Unsigned] {
        let signed = sign.resolve(n);
        let b = beta(ring, n, signed)?;
        let step = |i: usize| if i == n { (1, signed) } else { (i + 1, false) };
        for _ in 0..rounds {
            for i in 1..=n {
                for j in (1..=n).filter(|&j| j != i) {
                    let r = ring.random(rng);
                    let (i2, fi) = step(i);
                    let (j2, fj) = step(j);
                    let r2 = if fi != fj { r.neg() } else { r.clone() };
                    total += 1;
                    if elem(i, j, &r, n)?.conjugate_by(&b) != elem(i2, j2, &r2, n)? {
                        bad += 1;
                    }
                }
            }
        }
    }
    Ok((bad, total))
}

/// An assignment of the six nine-marking entries that spans `ring` as an
/// algebra: all ones over a field, and a swap and a unipotent over
/// 2×2 matrices.
pub fn spanning_assignment(ring: &Ring) -> Result<[RingElement; 6]> {
    let one = ring.one();
    if let Ring::MatrixAlgebra { dim: 2, p } = *ring {
        let swap = ring.from_matrix(MatFp::from_rows(p, &[vec![0, 1], vec![1, 0]])?)?;
        let uni = ring.from_matrix(MatFp::from_rows(p, &[vec![1, 1], vec![0, 1]])?)?;
        let inv = if p == 2 { uni.clone() } else { one.clone() };
        return Ok([swap.clone(), inv, swap, uni.clone(), uni, one]);
    }
    Ok(std::array::from_fn(|_| one.clone()))
}

/// Builds the nine-marking over `ring` at size `n` from
/// [`spanning_assignment`] and constructs words for every elementary
/// target. Returns the number of targets reached.
pub fn completeness(ring: &Ring, n: usize) -> Result<usize> {
    let x = spanning_assignment(ring)?;
    let b = nine_marking_images(&x, n)?;
    let cert = generation_certificate(&b, b.dim(), ring.modulus(), CertificateCheck::All)?;
    Ok(cert.verified)
}

/// Runs every identity check for the ring families over `F_p` at size `n`.
pub fn verify_identities(p: u32, n: usize, samples: usize, seed: u64) -> Result<Report> {
    let mut report = Report::default();
    report.meta("p", p);
    report.meta("n", n);
    report.meta("samples", samples);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for (name, ring) in ring_families(p)? {
        let bad = order2_mismatches(&ring, samples, &mut rng);
        report.push(Record::check(None, &format!("order2-word:{name}"), bad == 0, format!("units={samples} mismatches={bad}")));
        let (bad, total) = sharp_mismatches(&ring, n, samples, &mut rng);
        report.push(Record::check(None, &format!("sharp-commutator:{name}"), bad == 0, format!("n={n} pairs={total} mismatches={bad}")));
        let (bad, total) = beta_mismatches(&ring, n, samples, &mut rng)?;
        report.push(Record::check(None, &format!("beta-conjugation:{name}"), bad == 0, format!("n={n} pairs={total} mismatches={bad}")));
    }
    let mut spanning = vec![(format!("Mat1(F{p})"), Ring::matrices(1, p)?)];
    if p == 2 {
        spanning.push(("Mat2(F2)".into(), Ring::matrices(2, 2)?));
    }
    for (name, ring) in spanning {
        let rec = match completeness(&ring, n) {
            Ok(k) => Record::check(None, &format!("generator-completeness:{name}"), true, format!("targets={k}")),
            Err(e) => Record::check(None, &format!("generator-completeness:{name}"), false, e.to_string()),
        };
        report.push(rec);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suite_passes() {
        let r = verify_identities(3, 3, 20, 1).unwrap();
        assert!(r.all_passed(), "{}", r.render("-"));
        assert_eq!(r.records.len(), 13);
    }

    #[test]
    fn completeness_over_two_by_two_f2() {
        let ring = Ring::matrices(2, 2).unwrap();
        assert_eq!(completeness(&ring, 3).unwrap(), 6 * 4);
    }

    #[test]
    fn wrong_sign_is_detected() {
        // the wrap-around sign matters: with it ignored, the signed shift
        // at even size would fail on entries crossing the boundary
        let f3 = Ring::field(3).unwrap();
        let b = beta(&f3, 4, true).unwrap();
        let r = f3.one();
        assert_ne!(elem(4, 1, &r, 4).unwrap().conjugate_by(&b), elem(1, 2, &r, 4).unwrap());
        assert_eq!(elem(4, 1, &r, 4).unwrap().conjugate_by(&b), elem(1, 2, &r.neg(), 4).unwrap());
    }
}
