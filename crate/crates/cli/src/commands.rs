use rayon::prelude::*;
use serde_json::{json, Value};

use pjordan::modp::{predict, theorem1_verdict, BlockMultiset, Verdict};
use pjordan::nilorbit::{
    c_of_class, d_bound, diagram_from_partition, enumerate_classes, is_odd_prime, validate_class,
    UnipotentClass,
};
use pjordan::oracle::{
    certify_irreducible, enumerate_constructions, jordan_type, Construction, Piece,
};
use pjordan::{Error, Family, GroupType, RootSystem, Weight};

use crate::args::{ClassArgs, OracleArgs, PredictArgs, ScanArgs, SweepArgs};
use crate::report::{summary, CaseKey, FailCause, Observed, PredictionFields, Report, Status};

/// A failure that aborts the command; maps onto the exit-code contract.
#[derive(Debug)]
pub enum CliError {
    Validation(String),
    Size(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Size(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Validation(m) | CliError::Size(m) => m,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::SizeLimit { .. } => CliError::Size(e.to_string()),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

pub struct Options {
    pub max_dim: usize,
    pub allow_uncertified: bool,
}

pub struct Outcome {
    pub reports: Vec<Report>,
    pub summary: Value,
    pub exit_code: i32,
}

impl Outcome {
    fn from_reports(reports: Vec<Report>) -> Self {
        let exit_code = if reports.iter().any(|r| r.verdict == Some(Status::Fail)) {
            1
        } else {
            0
        };
        Outcome {
            summary: summary(&reports),
            reports,
            exit_code,
        }
    }
}

fn parse_usize_list(what: &str, s: &str) -> Result<Vec<usize>, CliError> {
    let bad = || CliError::Validation(format!("cannot parse {what} from {s:?}"));
    let mut out = Vec::new();
    for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let range = item.split_once("..").or_else(|| item.split_once('-'));
        match range {
            Some((lo, hi)) => {
                let lo: usize = lo.trim().parse().map_err(|_| bad())?;
                let hi: usize = hi
                    .trim()
                    .trim_start_matches('=')
                    .parse()
                    .map_err(|_| bad())?;
                out.extend(lo..=hi);
            }
            None => out.push(item.parse().map_err(|_| bad())?),
        }
    }
    if out.is_empty() {
        return Err(CliError::Validation(format!("empty {what} range {s:?}")));
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn parse_prime(p: u32) -> Result<u32, CliError> {
    if is_odd_prime(p) {
        Ok(p)
    } else {
        Err(Error::InvalidPrime(p).into())
    }
}

fn parse_class(args: &ClassArgs) -> Result<UnipotentClass, CliError> {
    let family = Family::parse(&args.family)?;
    let group = GroupType::new(family, args.rank)?;
    let parts = Weight::parse(&args.partition).map_err(|_| {
        CliError::Validation(format!("cannot parse partition from {:?}", args.partition))
    })?;
    let parts: Vec<usize> = parts
        .coords()
        .iter()
        .map(|&x| usize::try_from(x))
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Validation("partition parts must be nonnegative".into()))?;
    Ok(validate_class(group, args.p, &parts)?)
}

pub fn cmd_predict(args: &PredictArgs) -> Result<Outcome, CliError> {
    let class = parse_class(&args.class)?;
    let w = Weight::parse(&args.weight)?;
    let system = RootSystem::new(class.group());
    let diagram = diagram_from_partition(&system, &class)?;
    let pred = predict(&system, &class, &diagram, &w, class.p())?;
    let report = Report::new(
        CaseKey::new(&class, &w, None),
        PredictionFields::new(&pred, class.p()),
    );
    Ok(Outcome::from_reports(vec![report]))
}

/// Prediction plus oracle observation for one (class, construction) pair.
/// With `size_is_error` an oversized module aborts instead of being skipped.
fn evaluate(
    class: &UnipotentClass,
    construction: &Construction,
    opts: &Options,
    size_is_error: bool,
) -> Result<Report, Error> {
    let g = class.group();
    let p = class.p();
    let system = RootSystem::new(g);
    let diagram = diagram_from_partition(&system, class)?;
    let w = construction.highest_weight(g, p)?;
    let pred = predict(&system, class, &diagram, &w, p)?;
    let mut report = Report::new(
        CaseKey::new(class, &w, Some(construction)),
        PredictionFields::new(&pred, p),
    );

    let dim = construction.dimension(g);
    let certified = certify_irreducible(g, p, construction, dim);
    report.certified = Some(certified);
    if !certified && !opts.allow_uncertified {
        report.verdict = Some(Status::SkippedUncertified);
        report.reason = Some("construction is not certified irreducible".into());
        return Ok(report);
    }
    if dim > opts.max_dim as u128 {
        if size_is_error {
            return Err(Error::SizeLimit {
                what: "construction",
                size: dim.min(usize::MAX as u128) as usize,
                limit: opts.max_dim,
            });
        }
        report.verdict = Some(Status::SkippedSize);
        report.reason = Some(format!("dimension {dim} exceeds max-dim {}", opts.max_dim));
        return Ok(report);
    }

    let t = jordan_type(&construction.build(class, opts.max_dim)?)?;
    let blocks = BlockMultiset::from_jordan_type(p, &t)?;
    let vr = theorem1_verdict(&pred, &blocks, p);
    if t.max_block() as i64 != pred.k_pred {
        report.fail_causes.push(FailCause::KPred);
    }
    if vr.verdict == Verdict::Fail {
        report.fail_causes.push(FailCause::SizePBound);
    }
    report.observed = Some(Observed::new(&t, p));

    let mut reasons = Vec::new();
    if report.fail_causes.contains(&FailCause::KPred) {
        reasons.push(format!(
            "max block {} differs from k_pred {}",
            t.max_block(),
            pred.k_pred
        ));
    }
    if report.fail_causes.contains(&FailCause::SizePBound) {
        reasons.push(format!(
            "{} blocks of size p, not more than d(r-m) = {}",
            vr.size_p_count, pred.d_bound
        ));
    }
    report.verdict = Some(if reasons.is_empty() {
        match vr.verdict {
            Verdict::Pass => {
                report.vacuous = vr.vacuous;
                Status::Pass
            }
            Verdict::Undetermined => {
                reasons.push("sigma lies in the gap p-1 <= sigma < p-1+c_x".into());
                Status::Undetermined
            }
            Verdict::Fail => unreachable!("recorded as a fail cause"),
        }
    } else if certified {
        Status::Fail
    } else {
        reasons.push("uncertified construction, no claim applies".into());
        Status::Undetermined
    });
    if !reasons.is_empty() {
        report.reason = Some(reasons.join("; "));
    }
    Ok(report)
}

pub fn cmd_oracle(args: &OracleArgs, opts: &Options) -> Result<Outcome, CliError> {
    let class = parse_class(&args.class)?;
    let construction = Construction::parse(&args.construction)?;
    construction.validate(class.group())?;
    let report = evaluate(&class, &construction, opts, true)?;
    Ok(Outcome::from_reports(vec![report]))
}

pub fn cmd_verify_theorem1(args: &SweepArgs, opts: &Options) -> Result<Outcome, CliError> {
    let families = args
        .families
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(Family::parse)
        .collect::<Result<Vec<_>, _>>()?;
    if families.is_empty() {
        return Err(CliError::Validation("empty family list".into()));
    }
    let ranks = parse_usize_list("rank", &args.ranks)?;
    let primes = parse_usize_list("prime", &args.primes)?
        .into_iter()
        .map(|p| parse_prime(p as u32))
        .collect::<Result<Vec<_>, _>>()?;

    let mut jobs: Vec<(CaseKey, UnipotentClass, Construction)> = Vec::new();
    for &family in &families {
        for &r in ranks.iter().filter(|&&r| r >= family.min_rank()) {
            let g = GroupType::new(family, r)?;
            for &p in &primes {
                let constructions = enumerate_constructions(g, p);
                for class in enumerate_classes(g, p) {
                    for c in &constructions {
                        let w = c.highest_weight(g, p)?;
                        jobs.push((CaseKey::new(&class, &w, Some(c)), class.clone(), c.clone()));
                    }
                }
            }
        }
    }
    if jobs.is_empty() {
        return Err(CliError::Validation(
            "the requested ranges contain no cases".into(),
        ));
    }
    jobs.sort_by(|a, b| a.0.cmp(&b.0));
    let reports = jobs
        .par_iter()
        .map(|(_, class, c)| evaluate(class, c, opts, false))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Outcome::from_reports(reports))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Regime {
    Interior,
    Boundary,
    Inapplicable,
}

impl Regime {
    fn as_str(self) -> &'static str {
        match self {
            Regime::Interior => "p < ac < p+c-1",
            Regime::Boundary => "ac = p+c-1",
            Regime::Inapplicable => "inapplicable",
        }
    }
}

pub fn cmd_prop2_scan(args: &ScanArgs, opts: &Options) -> Result<Outcome, CliError> {
    let family = Family::parse(&args.family)?;
    let p = parse_prime(args.p)?;
    let ranks = parse_usize_list("rank", &args.ranks)?;
    if args.a == 0 || args.a >= p as usize {
        return Err(CliError::Validation(format!(
            "the degree a = {} must satisfy 1 <= a < p = {p}",
            args.a
        )));
    }
    let construction = Construction::new(vec![Piece::Sym(args.a)]);

    let mut classes = Vec::new();
    for &r in &ranks {
        let g = GroupType::new(family, r)?;
        classes.push(UnipotentClass::regular_in(g, args.m, p)?);
    }
    let first = &classes[0];
    let system = RootSystem::new(first.group());
    let c = c_of_class(first, &diagram_from_partition(&system, first)?)?;
    if p as i64 <= c {
        return Err(CliError::Validation(format!("p = {p} must exceed c = {c}")));
    }
    let ac = args.a as i64 * c;
    let pi = p as i64;
    let regime = if pi < ac && ac < pi + c - 1 {
        Regime::Interior
    } else if ac == pi + c - 1 {
        Regime::Boundary
    } else {
        Regime::Inapplicable
    };

    let reports = classes
        .par_iter()
        .map(|class| evaluate(class, &construction, opts, true))
        .collect::<Result<Vec<_>, _>>()?;

    let counts: Vec<Option<i64>> = reports
        .iter()
        .map(|r| r.observed.as_ref().map(|o| o.size_p_count as i64))
        .collect();
    let normalized: Vec<Option<i64>> = counts
        .iter()
        .zip(&ranks)
        .map(|(n, &r)| n.map(|n| n - d_bound(family, r, args.m)))
        .collect();
    let compared: Option<Vec<i64>> = match regime {
        Regime::Interior => counts.iter().copied().collect(),
        Regime::Boundary => normalized.iter().copied().collect(),
        Regime::Inapplicable => None,
    };
    let stable = compared.map(|v| v.windows(2).all(|w| w[0] == w[1]));

    let mut outcome = Outcome::from_reports(reports);
    outcome.summary["scan"] = json!({
        "family": family.letter().to_string(),
        "m": args.m,
        "a": args.a,
        "p": p,
        "c": c,
        "ac": ac,
        "ranks": ranks,
        "regime": regime.as_str(),
        "size_p_counts": counts,
        "counts_minus_d": normalized,
        "stable": stable,
    });
    if stable == Some(false) {
        outcome.exit_code = 1;
    }
    Ok(outcome)
}
