use std::path::Path;
use std::sync::Arc;
use std::thread;

use sha2::{Digest, Sha256};

use lefgroups::algebra::GroupTable;
use lefgroups::element::TableElement;
use lefgroups::elementary::{amenable_two_marking, verify_identities, CommutatorStrategy, MarkingBundle};
use lefgroups::export::write_matrices;
use lefgroups::marked::{agreement, establish_surjectivity, CertificateCheck, DensityFactor, MarkedGroup};
use lefgroups::modrep::{algebra_span_dim, heart_matrix, HeartBasis};
use lefgroups::perm::sym_six_marking;
use lefgroups::pipeline::{
    build_level, compare_sizes_with_limit, density_record, heart_markings, is_non_decreasing, parse_chain,
    run_main_theorem, surjectivity_record, ChainSpec, LevelData, RunOptions,
};
use lefgroups::report::{Record, Report};
use lefgroups::spectral::{gap_series, Action, GapPoint};
use lefgroups::wreath::{build_two_marking_wreath, coprime_extract, hall_extract, Convention, WreathMarkingParams};

use crate::{ActionArg, Cli, Command, ConventionArg, Family};

#[derive(Debug)]
pub enum CliError {
    /// Unreadable or malformed input; exit code 2.
    Input(String),
}

type CliResult<T> = std::result::Result<T, CliError>;

fn input<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Input(e.to_string())
}

pub struct Outcome {
    pub text: String,
    pub failures: Vec<String>,
}

/// Canonical description of everything a report depends on, hashed into
/// the `inputs=` field of every line.
struct Inputs(Sha256);

impl Inputs {
    fn new(command: &str, seed: u64) -> Self {
        let mut h = Sha256::new();
        h.update(format!("command={command}\nseed={seed}\n"));
        Inputs(h)
    }

    fn param(mut self, key: &str, value: impl std::fmt::Debug) -> Self {
        self.0.update(format!("{key}={value:?}\n"));
        self
    }

    fn file(mut self, key: &str, bytes: &[u8]) -> Self {
        self.0.update(format!("{key}:{}\n", bytes.len()));
        self.0.update(bytes);
        self
    }

    fn digest(self) -> String {
        hex::encode(&self.0.finalize()[..8])
    }
}

fn finish(mut report: Report, inputs: Inputs, seed: u64) -> Outcome {
    report.meta("seed", seed);
    let has = |r: &Report, k: &str| r.meta.iter().any(|(key, _)| key == k);
    if !has(&report, "word-length-bound") {
        report.meta("word-length-bound", "2R+1");
    }
    report.meta("composition", "words-left-to-right commutator=a^-1b^-1ab conjugation=axa^-1");
    if !has(&report, "semidirect") {
        report.meta("semidirect", "right (a.g)(x)=g(x+a)");
    }
    let digest = inputs.digest();
    report.meta("inputs", &digest);
    let failures = report
        .failures()
        .iter()
        .map(|r| {
            format!(
                "check={} level={} payload={}",
                r.check,
                r.level.map_or("-".into(), |l| l.to_string()),
                r.payload
            )
        })
        .collect();
    Outcome {
        text: report.render(&digest),
        failures,
    }
}

fn read_chain(path: &Path) -> CliResult<(ChainSpec, Vec<u8>)> {
    let bytes = std::fs::read(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let text = String::from_utf8(bytes.clone()).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let spec = parse_chain(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    Ok((spec, bytes))
}

fn certificate_check(s: &str) -> CliResult<CertificateCheck> {
    match s {
        "all" => Ok(CertificateCheck::All),
        "skip" => Ok(CertificateCheck::Skip),
        k => k
            .parse()
            .map(CertificateCheck::Sample)
            .map_err(|_| CliError::Input(format!("certificate must be all, skip or a count, got {k:?}"))),
    }
}

fn build_levels(spec: &ChainSpec) -> CliResult<Vec<LevelData>> {
    thread::scope(|s| {
        let handles: Vec<_> = (0..spec.quotients.len())
            .map(|m| s.spawn(move || build_level(spec, m)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("level worker panicked").map_err(input))
            .collect()
    })
}

fn fmt_radius(r: Option<usize>) -> String {
    r.map_or("none".into(), |x| x.to_string())
}

pub fn dispatch(cli: &Cli) -> CliResult<Outcome> {
    let seed = cli.seed;
    match &cli.command {
        &Command::VerifyIdentities { p, n, samples } => {
            if n < 3 {
                return Err(CliError::Input(format!("n must be at least 3, got {n}")));
            }
            let inputs = Inputs::new("verify-identities", seed).param("p", p).param("n", n).param("samples", samples);
            let report = verify_identities(p, n, samples, seed).map_err(input)?;
            Ok(finish(report, inputs, seed))
        }
        Command::RunChain {
            file,
            cap,
            rmax_two,
            rmax_nine,
            certificate,
        } => {
            let (spec, bytes) = read_chain(file)?;
            let opts = RunOptions {
                cap: *cap,
                rmax_two: *rmax_two,
                rmax_nine: *rmax_nine,
                certificate_check: certificate_check(certificate)?,
            };
            let inputs = Inputs::new("run-chain", seed).file("chain", &bytes).param("options", opts);
            Ok(finish(run_main_theorem(&spec, &opts), inputs, seed))
        }
        Command::Agreement {
            p,
            sizes,
            cyclic,
            rmax,
            cap,
        } => agreement_cmd(*p, sizes, cyclic, *rmax, *cap, seed),
        Command::Density { file, cap, certificate } => {
            let (spec, bytes) = read_chain(file)?;
            let check = certificate_check(certificate)?;
            let inputs = Inputs::new("density", seed).file("chain", &bytes).param("cap", cap).param("certificate", check);
            let levels = build_levels(&spec)?;
            let mut report = Report::default();
            report.meta("p", spec.p);
            report.meta("n", spec.n);
            let mut factors: [Vec<DensityFactor>; 2] = Default::default();
            for lv in &levels {
                for (k, (name, b)) in [("surjectivity-two", &lv.two), ("surjectivity-nine", &lv.nine)].into_iter().enumerate() {
                    let s = establish_surjectivity(b, *cap, check);
                    report.push(surjectivity_record(lv.index, name, &s));
                    factors[k].push(DensityFactor {
                        d: b.dim(),
                        p: b.modulus(),
                        surjectivity: s,
                    });
                }
            }
            report.push(density_record("density-two", &factors[0]));
            report.push(density_record("density-nine", &factors[1]));
            Ok(finish(report, inputs, seed))
        }
        &Command::Irreducible { size, p } => irreducible_cmd(size, p, seed),
        Command::Wreath {
            file,
            level,
            k,
            pairs,
            convention,
        } => wreath_cmd(file, *level, *k, *pairs, *convention, seed),
        Command::Spectral {
            file,
            sizes,
            p,
            contrast,
            action,
            cap,
            tol,
            max_iter,
        } => {
            let action = match action {
                ActionArg::Projective => Action::Projective,
                ActionArg::Vectors => Action::Vectors,
            };
            spectral_cmd(file.as_deref(), sizes, *p, *contrast, action, *cap, *tol, *max_iter, seed)
        }
        Command::Export { file, level, what, out } => {
            let (spec, bytes) = read_chain(file)?;
            let inputs = Inputs::new("export", seed).file("chain", &bytes).param("level", level).param("what", what);
            let lv = build_level(&spec, *level).map_err(input)?;
            let (name, mats) = match what {
                Family::Two => ("two", &lv.two.elements),
                Family::Nine => ("nine", &lv.nine.elements),
                Family::Heart => ("heart", &lv.heart_images),
            };
            let text = write_matrices(mats);
            std::fs::write(out, &text).map_err(|e| CliError::Input(format!("{}: {e}", out.display())))?;
            let mut report = Report::default();
            report.meta("format", "header-d-p then d rows, blank line between matrices");
            report.push(Record::info(
                Some(*level),
                &format!("export-{name}"),
                "written",
                format!(
                    "matrices={} dim={} sha256={}",
                    mats.len(),
                    mats.first().map_or(0, |m| m.dim()),
                    hex::encode(Sha256::digest(text.as_bytes()))
                ),
            ));
            Ok(finish(report, inputs, seed))
        }
    }
}

fn agreement_cmd(p: u32, sizes: &[usize], cyclic: &[usize], rmax: usize, cap: usize, seed: u64) -> CliResult<Outcome> {
    if sizes.is_empty() && cyclic.is_empty() {
        return Err(CliError::Input("give --sizes or --cyclic".into()));
    }
    if !cyclic.is_empty() && (cyclic.len() != 2 || cyclic.contains(&0)) {
        return Err(CliError::Input("--cyclic takes two positive orders".into()));
    }
    let inputs = Inputs::new("agreement", seed)
        .param("p", p)
        .param("sizes", sizes)
        .param("cyclic", cyclic)
        .param("rmax", rmax)
        .param("cap", cap);
    let mut report = Report::default();
    report.meta("rmax", rmax);
    report.meta("word-length-bound", format!("2R+1={}", 2 * rmax + 1));
    if let [a, b] = *cyclic {
        let mark = |n: usize| MarkedGroup::new(vec![TableElement::new(Arc::new(GroupTable::cyclic(n)), 1 % n)]);
        let rec = match agreement(&mark(a).map_err(input)?, &mark(b).map_err(input)?, rmax, cap) {
            Ok(r) => Record::info(None, "agreement-cyclic", "radius", format!("orders={a},{b} radius={}", fmt_radius(r.radius))),
            Err(e) => Record::info(None, "agreement-cyclic", "unverified", e.to_string()).with_cap(true),
        };
        report.push(rec);
    }
    if !sizes.is_empty() {
        report.meta("p", p);
        match compare_sizes_with_limit(sizes, p, rmax, cap) {
            Ok(series) => {
                let radii: Vec<Option<usize>> = series.iter().map(|c| c.agreement.radius).collect();
                for (i, c) in series.iter().enumerate() {
                    report.push(Record::info(
                        Some(i),
                        "agreement-two-limit",
                        "radius",
                        format!("N={} radius={} explored={}", c.big_n, fmt_radius(c.agreement.radius), c.agreement.explored),
                    ));
                }
                report.push(Record::check(
                    None,
                    "agreement-two-series",
                    is_non_decreasing(&radii),
                    radii.iter().map(|r| fmt_radius(*r)).collect::<Vec<_>>().join(","),
                ));
            }
            Err(lefgroups::Error::CapExceeded { cap, reached }) => report.push(
                Record::info(None, "agreement-two-series", "unverified", format!("cap={cap} reached={reached}")).with_cap(true),
            ),
            Err(e) => return Err(input(e)),
        }
    }
    Ok(finish(report, inputs, seed))
}

fn irreducible_cmd(size: usize, p: u32, seed: u64) -> CliResult<Outcome> {
    let inputs = Inputs::new("irreducible", seed).param("size", size).param("p", p);
    let table = GroupTable::cyclic(size);
    let six = sym_six_marking(&table, 1 % size.max(1), 1 % size.max(1), 1 % size.max(1)).map_err(input)?;
    let basis = HeartBasis::new(size, p).map_err(input)?;
    let mats = six
        .generators()
        .iter()
        .map(|s| heart_matrix(s, &basis))
        .collect::<lefgroups::Result<Vec<_>>>()
        .map_err(input)?;
    let d = basis.dim();
    let span = algebra_span_dim(&mats).map_err(input)?;
    let mut report = Report::default();
    report.meta("p", p);
    report.meta("set", size);
    report.push(Record::info(None, "heart-dim", "dim", format!("dim={d}")));
    report.push(Record::check(None, "span-dim", span == d * d, format!("span={span} full={}", d * d)));
    let dets: Vec<u32> = mats.iter().map(|m| m.determinant()).collect();
    report.push(Record::check(None, "heart-units", dets.iter().all(|&x| x != 0), format!("{dets:?}")));
    Ok(finish(report, inputs, seed))
}

fn wreath_cmd(file: &Path, level: usize, k: u32, pairs: usize, convention: ConventionArg, seed: u64) -> CliResult<Outcome> {
    let (spec, bytes) = read_chain(file)?;
    let conv = match convention {
        ConventionArg::Right => Convention::Right,
        ConventionArg::Left => Convention::Left,
    };
    let inputs = Inputs::new("wreath", seed)
        .file("chain", &bytes)
        .param("level", level)
        .param("k", k)
        .param("pairs", pairs)
        .param("convention", conv);
    let params = WreathMarkingParams {
        convention: conv,
        ..WreathMarkingParams::new(k, pairs)
    };
    let mut report = Report::default();
    report.meta("k", k);
    report.meta("pairs", pairs);
    report.meta(
        "semidirect",
        match conv {
            Convention::Right => "right (a.g)(x)=g(x+a)",
            Convention::Left => "left (a.g)(x)=g(x-a)",
        },
    );
    let hyp = spec.hypotheses();
    report.meta("wreath-hypotheses", hyp.wreath_theorem);
    let points = 2 * pairs;
    if let Err(e) = params.check_separation() {
        report.push(Record::check(None, "separation", false, e.to_string()));
        return Ok(finish(report, inputs, seed));
    }
    report.push(Record::check(None, "separation", true, format!("points={points} modulus=2^{k}")));
    let lv = build_level(&spec, level).map_err(input)?;
    let m = match build_two_marking_wreath(&lv.two, &lv.nine, params, CommutatorStrategy::Auto) {
        Ok(m) => m,
        Err(e) => {
            report.push(Record::check(Some(level), "wreath-marking", false, e.to_string()));
            return Ok(finish(report, inputs, seed));
        }
    };
    report.push(Record::info(
        Some(level),
        "wreath-marking",
        "built",
        format!("G=SL({},{}) support-w2={}", lv.big_n(), spec.p, m.w2.support().len()),
    ));
    for j in 1..=pairs {
        let rec = match hall_extract(&m.w2, &m.u, j, &m.params) {
            Ok(_) => Record::check(Some(level), &format!("hall-extract-{j:02}"), true, "single-slot"),
            Err(e) => Record::check(Some(level), &format!("hall-extract-{j:02}"), false, e.to_string()),
        };
        report.push(rec);
    }
    let cap = 4 * lv.big_n() as u64 + 4;
    let rec = match coprime_extract(&m.w1, cap) {
        Ok(c) => Record::check(
            Some(level),
            "coprime-extract",
            true,
            format!("orders={},{} exponents={},{}", c.orders.0, c.orders.1, c.exponents.0, c.exponents.1),
        ),
        Err(lefgroups::Error::NotCoprime(a, b)) if !hyp.wreath_theorem => {
            Record::info(Some(level), "coprime-extract", "not-coprime", format!("orders={a},{b}"))
        }
        Err(e) => Record::check(Some(level), "coprime-extract", false, e.to_string()),
    };
    report.push(rec);
    Ok(finish(report, inputs, seed))
}

fn gap_payload(pt: &GapPoint) -> String {
    let v = pt.vertices.map_or("-".into(), |v| v.to_string());
    match &pt.estimate {
        Ok(e) => format!(
            "N={} vertices={v} gap={:.10} lambda2={:.10} slem={:.10} iterations={} residual={:.3e}",
            pt.dim, e.gap, e.lambda2, e.slem, e.iterations, e.residual
        ),
        Err(why) => format!("N={} vertices={v} connected={} gap={} {why}", pt.dim, pt.connected, pt.gap().map_or("-".into(), |g| format!("{g:.10}"))),
    }
}

fn gap_record(level: usize, check: &str, pt: &GapPoint) -> Record {
    let verdict = match (&pt.estimate, pt.gap()) {
        (Ok(_), _) => "estimated",
        (Err(_), Some(_)) => "disconnected",
        (Err(_), None) => "skipped",
    };
    Record::info(Some(level), check, verdict, gap_payload(pt)).with_cap(pt.vertices.is_none())
}

#[allow(clippy::too_many_arguments)]
fn spectral_cmd(
    file: Option<&Path>,
    sizes: &[usize],
    p: u32,
    contrast: bool,
    action: Action,
    cap: usize,
    tol: f64,
    max_iter: usize,
    seed: u64,
) -> CliResult<Outcome> {
    let mut inputs = Inputs::new("spectral", seed)
        .param("sizes", sizes)
        .param("p", p)
        .param("contrast", contrast)
        .param("action", action)
        .param("cap", cap)
        .param("tol", tol)
        .param("max-iter", max_iter);
    let mut two: Vec<(String, MarkingBundle)> = Vec::new();
    let mut nine: Vec<(String, MarkingBundle)> = Vec::new();
    match file {
        Some(path) => {
            if !sizes.is_empty() {
                return Err(CliError::Input("--sizes cannot be combined with a chain file".into()));
            }
            let (spec, bytes) = read_chain(path)?;
            inputs = inputs.file("chain", &bytes);
            for lv in build_levels(&spec)? {
                two.push((format!("level-{}", lv.index), lv.two));
                nine.push((format!("level-{}", lv.index), lv.nine));
            }
        }
        None => {
            if sizes.is_empty() && !contrast {
                return Err(CliError::Input("give a chain file, --sizes or --contrast".into()));
            }
            for &n in sizes {
                two.push((format!("N-{n}"), amenable_two_marking(n, p).map_err(input)?));
            }
        }
    }
    if contrast {
        let (_, _, _, b) = heart_markings(&GroupTable::cyclic(6), [3, 3, 1], p, 3).map_err(input)?;
        nine.push(("Z6-3-3-1".into(), b));
    }
    let mut report = Report::default();
    report.meta("spectral", "empirical");
    report.meta("action", action.name());
    report.meta("vertex-cap", cap);
    report.meta("tol", tol);
    report.meta("max-iter", max_iter);
    let run = |family: &[(String, MarkingBundle)]| {
        let refs: Vec<(String, &MarkingBundle)> = family.iter().map(|(l, b)| (l.clone(), b)).collect();
        gap_series(&refs, action, cap, tol, seed, max_iter)
    };
    let (two_pts, nine_pts) = thread::scope(|s| {
        let h = s.spawn(|| run(&nine));
        (run(&two), h.join().expect("spectral worker panicked"))
    });
    for (check, pts) in [("gap-two", &two_pts), ("gap-nine", &nine_pts)] {
        for (i, pt) in pts.iter().enumerate() {
            report.push(gap_record(i, check, pt));
        }
    }
    let all: Vec<(&str, &GapPoint)> = two_pts.iter().map(|p| ("two", p)).chain(nine_pts.iter().map(|p| ("nine", p))).collect();
    let missing: Vec<String> = all
        .iter()
        .filter(|(_, p)| p.gap().is_none())
        .map(|(f, p)| format!("{f}:{}", p.label))
        .collect();
    report.push(Record::check(
        None,
        "series-complete",
        missing.is_empty(),
        if missing.is_empty() {
            format!("points={}", all.len())
        } else {
            format!("points={} missing={}", all.len(), missing.join(","))
        },
    ));
    let gaps: Vec<f64> = two_pts.iter().filter_map(GapPoint::gap).collect();
    if gaps.len() == two_pts.len() && gaps.len() >= 2 {
        let decreasing = gaps.windows(2).all(|w| w[1] < w[0]);
        report.push(Record::info(None, "trend-two", if decreasing { "decreasing" } else { "not-decreasing" }, format!("points={}", gaps.len())));
    }
    for pn in &nine_pts {
        if let Some(pt) = two_pts.iter().find(|t| t.dim == pn.dim) {
            if let (Some(g9), Some(g2)) = (pn.gap(), pt.gap()) {
                report.push(Record::info(
                    None,
                    &format!("contrast-N{}", pn.dim),
                    if g9 >= g2 { "nine-at-least-two" } else { "nine-below-two" },
                    format!("nine={g9:.10} two={g2:.10}"),
                ));
            }
        }
    }
    Ok(finish(report, inputs, seed))
}
