//! The full construction over a chain, reported check by check.

use std::thread;

use crate::marked::{
    agreement, density_check, establish_surjectivity, word_length_bound, CertificateCheck,
    DensityFactor, DensityVerdict, Surjectivity, DEFAULT_CAP,
};
use crate::report::{Record, Report, Status};

use super::chain::ChainSpec;
use super::embedding::{is_divisibility_chain, verify_embedding};
use super::level::{build_level, LevelData};
use super::limit::{compare_amenable_limit, is_non_decreasing};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunOptions {
    /// Bound on enumerated group orders and visited ball elements.
    pub cap: usize,
    /// Agreement radius bound for the two-marking against the limit model.
    pub rmax_two: usize,
    /// Agreement radius bound between consecutive nine-marking levels.
    pub rmax_nine: usize,
    pub certificate_check: CertificateCheck,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            cap: DEFAULT_CAP,
            rmax_two: 2,
            rmax_nine: 1,
            certificate_check: CertificateCheck::Sample(16),
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn surjectivity_record(level: usize, check: &str, s: &Surjectivity) -> Record {
    let (status, verdict, payload) = match s {
        Surjectivity::Enumerated(o) => (Status::Pass, "onto", format!("order={o}")),
        Surjectivity::Certified { targets, verified } => {
            (Status::Pass, "onto", format!("targets={targets} verified={verified}"))
        }
        Surjectivity::Proper(o) => (Status::Fail, "proper", format!("order={o}")),
        Surjectivity::Unverified(why) => (Status::Info, "unverified", why.clone()),
    };
    Record::new(Some(level), check, status, verdict, payload)
}

pub fn density_record(check: &str, factors: &[DensityFactor]) -> Record {
    let v = density_check(factors);
    let labels: Vec<String> = factors.iter().map(|f| format!("SL({},{})", f.d, f.p)).collect();
    let status = match v {
        DensityVerdict::Dense => Status::Pass,
        DensityVerdict::NotGuaranteed(_) => Status::Fail,
        DensityVerdict::Unverified(_) => Status::Info,
    };
    let payload = match &v {
        DensityVerdict::Dense => labels.join(","),
        DensityVerdict::NotGuaranteed(why) | DensityVerdict::Unverified(why) => {
            format!("{} {}", labels.join(","), why)
        }
    };
    Record::new(None, check, status, v.label(), payload)
}

/// Checks that concern a single level.
fn level_records(spec: &ChainSpec, lv: &LevelData, opts: &RunOptions) -> (Vec<Record>, [DensityFactor; 2], Option<usize>) {
    let m = lv.index;
    let p = spec.p;
    let mut out = Vec::new();
    out.push(Record::info(
        Some(m),
        "build",
        "built",
        format!("set={} l={} G=SL({},{})", lv.set_size(), lv.block_dim(), lv.big_n(), p),
    ));
    let size = lv.set_size();
    out.push(Record::check(
        Some(m),
        "set-divisibility",
        size.is_multiple_of(p as usize) && size.is_multiple_of(2),
        format!("set={size} p={p}"),
    ));
    for (name, b) in [("determinant-two", &lv.two), ("determinant-nine", &lv.nine)] {
        let dets = b.determinants();
        out.push(Record::check(
            Some(m),
            name,
            dets.iter().all(|&d| d == 1),
            format!("{dets:?}"),
        ));
    }
    let x = &lv.heart_images;
    let squares = x[..3].iter().all(|h| h.pow(2).is_identity());
    let top = x[5].pow(2 * p as u64).is_identity();
    let units = x[3..5].iter().all(|h| h.determinant() != 0);
    out.push(Record::check(
        Some(m),
        "nine-relations",
        squares && top && units,
        format!("involutions={squares} power-2p={top} units={units}"),
    ));
    let t1 = lv.two.elements[0].order(u64::MAX);
    let t2 = lv.two.elements[1].order(4 * lv.big_n() as u64 + 4);
    let coprime = matches!((t1, t2), (Some(a), Some(b)) if gcd(a, b) == 1);
    let payload = format!(
        "order-t1={} order-t2={}",
        t1.map_or("?".into(), |o| o.to_string()),
        t2.map_or("?".into(), |o| o.to_string())
    );
    out.push(if spec.hypotheses().wreath_theorem {
        Record::check(Some(m), "order-coprime", coprime, payload)
    } else {
        Record::info(Some(m), "order-coprime", if coprime { "coprime" } else { "not-coprime" }, payload)
    });
    let s_two = establish_surjectivity(&lv.two, opts.cap, opts.certificate_check);
    let s_nine = establish_surjectivity(&lv.nine, opts.cap, opts.certificate_check);
    out.push(surjectivity_record(m, "surjectivity-two", &s_two));
    out.push(surjectivity_record(m, "surjectivity-nine", &s_nine));
    let mut emb_order = None;
    match verify_embedding(lv, spec, opts.cap) {
        Ok(r) => {
            emb_order = Some(r.perm_order);
            out.push(Record::new(
                Some(m),
                "embedding",
                Status::hard(r.isomorphic),
                r.verdict(),
                format!("perm={} matrix={} paired={}", r.perm_order, r.matrix_order, r.paired_order),
            ));
        }
        Err(e) => out.push(Record::new(Some(m), "embedding", Status::Info, "unverified", e.to_string()).with_cap(true)),
    }
    let d = lv.big_n();
    let factors = [
        DensityFactor { d, p, surjectivity: s_two },
        DensityFactor { d, p, surjectivity: s_nine },
    ];
    (out, factors, emb_order)
}

/// Builds every level of `spec` and runs all checks. Failures of
/// individual checks are recorded, never propagated.
pub fn run_main_theorem(spec: &ChainSpec, opts: &RunOptions) -> Report {
    let mut report = Report::default();
    report.meta("p", spec.p);
    report.meta("n", spec.n);
    report.meta("depth", spec.quotients.len());
    report.meta("cap", opts.cap);
    report.meta("rmax-two", opts.rmax_two);
    report.meta("rmax-nine", opts.rmax_nine);
    report.meta("word-length-bound", format!("2R+1 (two: {}, nine: {})", word_length_bound(opts.rmax_two), word_length_bound(opts.rmax_nine)));
    let hyp = spec.hypotheses();
    report.meta("main-hypotheses", hyp.main_theorem);
    report.meta("wreath-hypotheses", hyp.wreath_theorem);

    let built: Vec<_> = thread::scope(|s| {
        let handles: Vec<_> = (0..spec.quotients.len())
            .map(|m| {
                s.spawn(move || {
                    let lv = build_level(spec, m)?;
                    let recs = level_records(spec, &lv, opts);
                    Ok::<_, crate::error::Error>((lv, recs))
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("level worker panicked")).collect()
    });

    let mut levels = Vec::new();
    let mut two_factors = Vec::new();
    let mut nine_factors = Vec::new();
    let mut emb_orders = Vec::new();
    for (m, b) in built.into_iter().enumerate() {
        match b {
            Ok((lv, (recs, [f2, f9], emb))) => {
                recs.into_iter().for_each(|r| report.push(r));
                two_factors.push(f2);
                nine_factors.push(f9);
                emb_orders.extend(emb);
                levels.push(lv);
            }
            Err(e) => report.push(Record::new(Some(m), "build", Status::Fail, "error", e.to_string())),
        }
    }
    if levels.len() < spec.quotients.len() {
        return report;
    }

    report.push(density_record("density-two", &two_factors));
    report.push(density_record("density-nine", &nine_factors));
    report.push(Record::check(
        None,
        "embedding-chain",
        emb_orders.len() == levels.len() && is_divisibility_chain(&emb_orders),
        format!("{emb_orders:?}"),
    ));

    match compare_amenable_limit(&levels, spec.p, opts.rmax_two, opts.cap) {
        Ok(series) => {
            let radii: Vec<Option<usize>> = series.iter().map(|c| c.agreement.radius).collect();
            for c in &series {
                let lvl = levels.iter().find(|l| l.big_n() == c.big_n).map(|l| l.index);
                report.push(Record::info(
                    lvl,
                    "agreement-two-limit",
                    "radius",
                    format!("N={} radius={}", c.big_n, fmt_radius(c.agreement.radius)),
                ));
            }
            report.push(Record::check(
                None,
                "agreement-two-series",
                is_non_decreasing(&radii),
                radii.iter().map(|r| fmt_radius(*r)).collect::<Vec<_>>().join(","),
            ));
        }
        Err(e) => report.push(Record::new(None, "agreement-two-series", Status::Info, "unverified", e.to_string()).with_cap(true)),
    }
    for w in levels.windows(2) {
        let rec = match agreement(&w[0].nine.marked(), &w[1].nine.marked(), opts.rmax_nine, opts.cap) {
            Ok(a) => Record::info(
                Some(w[1].index),
                "agreement-nine-consecutive",
                "radius",
                format!("levels={},{} radius={}", w[0].index, w[1].index, fmt_radius(a.radius)),
            ),
            Err(e) => Record::new(Some(w[1].index), "agreement-nine-consecutive", Status::Info, "unverified", e.to_string()).with_cap(true),
        };
        report.push(rec);
    }
    report
}

fn fmt_radius(r: Option<usize>) -> String {
    r.map_or("none".into(), |x| x.to_string())
}

#[cfg(test)]
mod tests {
    use super::super::chain::{fixtures, parse_chain, parse_chain_unvalidated};
    use super::*;

    fn quick() -> RunOptions {
        RunOptions {
            cap: 200_000,
            rmax_two: 1,
            rmax_nine: 1,
            certificate_check: CertificateCheck::Sample(2),
        }
    }

    #[test]
    fn cyclic_chain_report() {
        let spec = parse_chain(fixtures::CYCLIC_2_4).unwrap();
        let r = run_main_theorem(&spec, &quick());
        assert!(r.all_passed(), "{}", r.render("-"));
        let b = r.find("build", Some(0)).unwrap();
        assert!(b.payload.contains("l=10") && b.payload.contains("G=SL(30,3)"));
        let b = r.find("build", Some(1)).unwrap();
        assert!(b.payload.contains("G=SL(66,3)"));
        assert_eq!(r.find("density-two", None).unwrap().verdict, "dense");
        assert_eq!(r.find("density-nine", None).unwrap().verdict, "dense");
        assert_eq!(r.find("determinant-nine", Some(1)).unwrap().status, Status::Pass);
        // 3 divides n here, so t′₂ has order 2N = 60, not coprime to 3
        let c = r.find("order-coprime", Some(0)).unwrap();
        assert_eq!((c.status, c.verdict.as_str()), (Status::Info, "not-coprime"));
    }

    #[test]
    fn duplicate_levels_are_not_dense() {
        let text = "p 3\nn 3\ndepth 2\nquotient 0 degree 2\ns1 1 0\ns2 1 0\nquotient 1 degree 2\ns1 1 0\ns2 1 0\nxi1 e\nxi2 e\nxi3 e\nxi4 e\n";
        let spec = parse_chain_unvalidated(text).unwrap();
        let r = run_main_theorem(&spec, &quick());
        let d = r.find("density-two", None).unwrap();
        assert_eq!((d.status, d.verdict.as_str()), (Status::Fail, "not-guaranteed"));
    }
}
