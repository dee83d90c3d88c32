use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use serde_json::{json, Value};

use pjordan::char0::JordanType;
use pjordan::modp::Prediction;
use pjordan::nilorbit::UnipotentClass;
use pjordan::oracle::Construction;
use pjordan::Weight;

pub const SCHEMA: &str = "pjordan/1";

/// Identifies one case; the derived order is the report order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct CaseKey {
    pub family: char,
    pub rank: usize,
    pub p: u32,
    pub partition: Vec<usize>,
    pub weight: Vec<i64>,
    pub construction: Option<String>,
}

impl CaseKey {
    pub fn new(
        class: &UnipotentClass,
        weight: &Weight,
        construction: Option<&Construction>,
    ) -> Self {
        let g = class.group();
        CaseKey {
            family: g.family().letter(),
            rank: g.rank(),
            p: class.p(),
            partition: class.partition().to_vec(),
            weight: weight.coords().to_vec(),
            construction: construction.map(|c| c.to_string()),
        }
    }
}

impl fmt::Display for CaseKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[String]| v.join(",");
        write!(
            f,
            "{}{} p={} [{}] ({})",
            self.family,
            self.rank,
            self.p,
            join(
                &self
                    .partition
                    .iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
            ),
            join(
                &self
                    .weight
                    .iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
            ),
        )?;
        if let Some(c) = &self.construction {
            write!(f, " {c}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "UNDETERMINED")]
    Undetermined,
    #[serde(rename = "SKIPPED_UNCERTIFIED")]
    SkippedUncertified,
    #[serde(rename = "SKIPPED_SIZE")]
    SkippedSize,
}

impl Status {
    pub const ALL: [Status; 5] = [
        Status::Pass,
        Status::Fail,
        Status::Undetermined,
        Status::SkippedUncertified,
        Status::SkippedSize,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Undetermined => "UNDETERMINED",
            Status::SkippedUncertified => "SKIPPED_UNCERTIFIED",
            Status::SkippedSize => "SKIPPED_SIZE",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PredictionFields {
    pub sigma: i64,
    pub wbar: Vec<i64>,
    pub c_x: i64,
    pub d_bound: i64,
    pub k_pred: i64,
    pub p_large_for_x: bool,
    pub rank_hypothesis: bool,
    pub theorem1_hypothesis: bool,
    pub in_gap: bool,
}

impl PredictionFields {
    pub fn new(pred: &Prediction, p: u32) -> Self {
        PredictionFields {
            sigma: pred.sigma,
            wbar: pred.wbar.coords().to_vec(),
            c_x: pred.c_x,
            d_bound: pred.d_bound,
            k_pred: pred.k_pred,
            p_large_for_x: pred.p_large_for_x,
            rank_hypothesis: pred.rank_hypothesis,
            theorem1_hypothesis: pred.theorem1_hypothesis,
            in_gap: pred.in_gap(p),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Observed {
    pub dim: usize,
    pub jordan_type: String,
    pub blocks: BTreeMap<usize, u64>,
    pub max_block: usize,
    pub size_p_count: usize,
}

impl Observed {
    pub fn new(t: &JordanType, p: u32) -> Self {
        Observed {
            dim: t.dimension(),
            jordan_type: t.to_string(),
            blocks: t.counts(),
            max_block: t.max_block(),
            size_p_count: t.count_of_size(p as usize),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FailCause {
    KPred,
    SizePBound,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub case: CaseKey,
    pub key: String,
    pub prediction: PredictionFields,
    pub observed: Option<Observed>,
    pub verdict: Option<Status>,
    pub vacuous: bool,
    pub certified: Option<bool>,
    pub fail_causes: Vec<FailCause>,
    pub reason: Option<String>,
}

impl Report {
    pub fn new(case: CaseKey, prediction: PredictionFields) -> Self {
        Report {
            schema: SCHEMA,
            key: case.to_string(),
            case,
            prediction,
            observed: None,
            verdict: None,
            vacuous: false,
            certified: None,
            fail_causes: Vec::new(),
            reason: None,
        }
    }
}

pub fn summary(reports: &[Report]) -> Value {
    let mut counts: BTreeMap<&str, usize> = Status::ALL.iter().map(|s| (s.as_str(), 0)).collect();
    let mut causes: BTreeMap<FailCause, usize> = BTreeMap::new();
    for r in reports {
        if let Some(v) = r.verdict {
            *counts.get_mut(v.as_str()).unwrap() += 1;
        }
        for &c in &r.fail_causes {
            *causes.entry(c).or_insert(0) += 1;
        }
    }
    json!({
        "reports": reports.len(),
        "verdicts": counts,
        "vacuous_pass": reports.iter().filter(|r| r.vacuous).count(),
        "fail_causes": causes,
    })
}

pub enum Format {
    Json,
    Table,
}

pub fn render(format: &Format, reports: &[Report], summary: &Value) -> String {
    let mut out = String::new();
    match format {
        Format::Json => {
            for r in reports {
                out.push_str(&serde_json::to_string(r).expect("report serializes"));
                out.push('\n');
            }
            out.push_str(&json!({ "schema": SCHEMA, "summary": summary }).to_string());
            out.push('\n');
        }
        Format::Table => {
            let header = [
                "case", "sigma", "c_x", "k_pred", "d", "hyp", "observed", "verdict",
            ];
            let rows: Vec<[String; 8]> = reports
                .iter()
                .map(|r| {
                    [
                        r.key.clone(),
                        r.prediction.sigma.to_string(),
                        r.prediction.c_x.to_string(),
                        r.prediction.k_pred.to_string(),
                        r.prediction.d_bound.to_string(),
                        if r.prediction.theorem1_hypothesis {
                            "yes"
                        } else {
                            "no"
                        }
                        .to_string(),
                        r.observed
                            .as_ref()
                            .map(|o| o.jordan_type.clone())
                            .unwrap_or_else(|| "-".into()),
                        match (r.verdict, &r.reason) {
                            (Some(v), Some(reason)) => format!("{} ({reason})", v.as_str()),
                            (Some(v), None) if r.vacuous => format!("{} (vacuous)", v.as_str()),
                            (Some(v), None) => v.as_str().to_string(),
                            (None, _) => "-".into(),
                        },
                    ]
                })
                .collect();
            let widths: Vec<usize> = (0..header.len())
                .map(|i| {
                    rows.iter()
                        .map(|r| r[i].chars().count())
                        .chain([header[i].len()])
                        .max()
                        .unwrap()
                })
                .collect();
            let line = |cells: Vec<&str>| {
                let padded: Vec<String> = cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:<w$}"))
                    .collect();
                padded.join("  ").trim_end().to_string() + "\n"
            };
            out.push_str(&line(header.to_vec()));
            for r in &rows {
                out.push_str(&line(r.iter().map(String::as_str).collect()));
            }
            out.push_str(&format!("summary: {summary}\n"));
        }
    }
    out
}
