//! Case runners shared by the subcommands and by batch sweeps.

use std::fmt;
use std::str::FromStr;

use flagstab_core::chern::{ch_schur_giambelli, ch_schur_roots, conjecture_check_with, A2Variant, SymPowerTable};
use flagstab_core::combinat::{appendix_general, checks_at};
use flagstab_core::futaki::{futaki_curve, futaki_twisted, weight_check, DfReport, TestConfig, Verdict};
use flagstab_core::geometry::{Model, SplitCurve};
use flagstab_core::partitions::{enumerate_partitions, lr_coefficient, lr_decompose, partitions_of, schur_rank};
use flagstab_core::{Error, FlagType, Partition};
use rayon::prelude::*;
use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::output::Outcome;

#[derive(Debug)]
pub enum Failure {
    BadInput(String),
    Internal(String),
}

impl Failure {
    pub fn input(msg: impl Into<String>) -> Self {
        Failure::BadInput(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Failure::Internal(msg.into())
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_input_error() {
            Failure::BadInput(e.to_string())
        } else {
            Failure::Internal(e.to_string())
        }
    }
}

/// Inclusive range written `a..b`, `a..=b` or `a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(try_from = "RangeRepr")]
pub struct IntRange {
    pub lo: u32,
    pub hi: u32,
}

impl IntRange {
    pub fn new(lo: u32, hi: u32) -> Result<Self, String> {
        if lo > hi {
            return Err(format!("empty range {lo}..{hi}"));
        }
        Ok(IntRange { lo, hi })
    }

    pub fn iter(self) -> std::ops::RangeInclusive<u32> {
        self.lo..=self.hi
    }

    pub fn contains(self, x: u32) -> bool {
        (self.lo..=self.hi).contains(&x)
    }
}

impl FromStr for IntRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |t: &str| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| format!("invalid range {s:?}: expected `a..b` with nonnegative integers"))
        };
        match s.split_once("..") {
            Some((a, b)) => IntRange::new(parse(a)?, parse(b.strip_prefix('=').unwrap_or(b))?),
            None => {
                let x = parse(s)?;
                IntRange::new(x, x)
            }
        }
    }
}

impl fmt::Display for IntRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

/// Accepts `[lo, hi]`, a single integer, or the string forms.
#[derive(Deserialize)]
#[serde(untagged)]
enum RangeRepr {
    Pair([u32; 2]),
    Single(u32),
    Text(String),
}

impl TryFrom<RangeRepr> for IntRange {
    type Error = String;

    fn try_from(r: RangeRepr) -> Result<Self, String> {
        match r {
            RangeRepr::Pair([lo, hi]) => IntRange::new(lo, hi),
            RangeRepr::Single(x) => IntRange::new(x, x),
            RangeRepr::Text(s) => s.parse(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum CaseStatus {
    Pass,
    Fail,
    /// A comparison outside the proven range came out negative.
    Finding,
    Skipped,
    Destabilised,
    Zero,
    StableIndicated,
}

impl CaseStatus {
    fn key(self) -> &'static str {
        match self {
            CaseStatus::Pass => "passed",
            CaseStatus::Fail => "failed",
            CaseStatus::Finding => "findings",
            CaseStatus::Skipped => "skipped",
            CaseStatus::Destabilised => "destabilised",
            CaseStatus::Zero => "zero",
            CaseStatus::StableIndicated => "stable_indicated",
        }
    }

    const ALL: [CaseStatus; 7] = [
        CaseStatus::Pass,
        CaseStatus::Fail,
        CaseStatus::Finding,
        CaseStatus::Skipped,
        CaseStatus::Destabilised,
        CaseStatus::Zero,
        CaseStatus::StableIndicated,
    ];
}

#[derive(Debug)]
pub struct Case {
    pub json: Value,
    pub row: Vec<String>,
    pub status: CaseStatus,
}

#[derive(Debug)]
pub struct Sweep {
    pub task: &'static str,
    pub header: Vec<&'static str>,
    pub cases: Vec<Case>,
    /// Extra summary fields.
    pub notes: Map<String, Value>,
}

impl Sweep {
    fn new(task: &'static str, header: Vec<&'static str>, cases: Vec<Case>) -> Self {
        Sweep {
            task,
            header,
            cases,
            notes: Map::new(),
        }
    }

    pub fn count(&self, status: CaseStatus) -> usize {
        self.cases.iter().filter(|c| c.status == status).count()
    }

    pub fn failed(&self) -> bool {
        self.count(CaseStatus::Fail) > 0
    }

    pub fn summary_line(&self) -> String {
        let n = self.cases.len();
        if n == 0 {
            return "0 cases".into();
        }
        if self.task == "appendix" {
            let fails = self.count(CaseStatus::Fail);
            return if fails == 0 {
                format!("all {n} identities match")
            } else {
                format!("{fails} of {n} identities fail")
            };
        }
        let counts: Vec<String> = CaseStatus::ALL
            .iter()
            .map(|&s| (s, self.count(s)))
            .filter(|&(_, c)| c > 0)
            .map(|(s, c)| format!("{c} {}", s.key().replace('_', "-")))
            .collect();
        format!("{n} cases: {}", counts.join(", "))
    }

    pub fn summary(&self) -> Value {
        let mut m = Map::new();
        m.insert("cases".into(), json!(self.cases.len()));
        for s in CaseStatus::ALL {
            m.insert(s.key().into(), json!(self.count(s)));
        }
        m.insert("line".into(), json!(self.summary_line()));
        m.extend(self.notes.clone());
        Value::Object(m)
    }

    pub fn document(&self) -> Value {
        json!({
            "task": self.task,
            "cases": self.cases.iter().map(|c| c.json.clone()).collect::<Vec<_>>(),
            "summary": self.summary(),
        })
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> Result<Value, Failure> {
    serde_json::to_value(v).map_err(|e| Failure::internal(format!("cannot serialize: {e}")))
}

pub fn conjecture(ranks: IntRange, lengths: IntRange, parts: u32) -> Result<Sweep, Failure> {
    if ranks.lo < 2 {
        return Err(Failure::input("ranks must be at least 2"));
    }
    if lengths.lo < 1 || parts < 1 {
        return Err(Failure::input("lengths and parts must be positive"));
    }
    let variant = A2Variant::resolved()?;
    let tables = ranks
        .iter()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|e| SymPowerTable::for_box(e, 2, lengths.hi, parts))
        .collect::<Result<Vec<_>, _>>()?;
    let partitions: Vec<Partition> = enumerate_partitions(lengths.hi as usize, parts)
        .filter(|l| lengths.contains(l.len() as u32))
        .collect();
    let jobs: Vec<(&SymPowerTable, &Partition)> = tables
        .iter()
        .flat_map(|t| partitions.iter().map(move |l| (t, l)))
        .collect();
    let cases = jobs
        .into_par_iter()
        .map(|(table, lambda)| -> Result<Case, Failure> {
            let e = table.rank();
            if lambda.len() > e as usize {
                return Ok(Case {
                    json: json!({"lambda": lambda, "rank": e, "skipped": true}),
                    row: vec![
                        lambda.to_string(),
                        e.to_string(),
                        String::new(),
                        String::new(),
                        String::new(),
                        variant.name().into(),
                        "true".into(),
                    ],
                    status: CaseStatus::Skipped,
                });
            }
            let record = conjecture_check_with(table, lambda, variant)?;
            let status = match (record.passed(), lambda.len() <= 3) {
                (true, _) => CaseStatus::Pass,
                (false, true) => CaseStatus::Fail,
                (false, false) => CaseStatus::Finding,
            };
            Ok(Case {
                row: vec![
                    lambda.to_string(),
                    e.to_string(),
                    record.g1_match.to_string(),
                    record.g2_match.to_string(),
                    record.residual.to_string(),
                    variant.name().into(),
                    "false".into(),
                ],
                json: to_json(&record)?,
                status,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut sweep = Sweep::new(
        "conjecture",
        vec![
            "lambda",
            "rank",
            "g1_match",
            "g2_match",
            "residual",
            "a2_variant",
            "skipped",
        ],
        cases,
    );
    sweep.notes.insert("a2_variant".into(), json!(variant.name()));
    Ok(sweep)
}

/// How a futaki case names its Schur index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Selection {
    Flag { flag: FlagType, nu: Option<Partition> },
    Lambda(Partition),
}

impl Selection {
    fn config(&self, alpha: u32) -> flagstab_core::Result<TestConfig> {
        match self {
            Selection::Flag { flag, nu } => {
                let nu = nu.clone().unwrap_or_else(|| Partition::column(flag.len()));
                TestConfig::from_flag(flag.clone(), nu, alpha)
            }
            Selection::Lambda(lambda) => TestConfig::from_lambda(lambda.clone(), alpha),
        }
    }

    fn label(&self) -> String {
        match self {
            Selection::Flag { flag, nu: Some(nu) } => format!("flag {flag} nu {nu}"),
            Selection::Flag { flag, nu: None } => format!("flag {flag}"),
            Selection::Lambda(l) => format!("lambda {l}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FutakiMode {
    /// Curves use the exact curve invariant, bases the twisted expansion.
    Natural,
    Twisted,
}

fn futaki_report(model: &Model, cfg: &TestConfig, mode: FutakiMode) -> flagstab_core::Result<DfReport> {
    match (model, mode) {
        (Model::Curve(c), FutakiMode::Natural) => futaki_curve(c, cfg),
        _ => futaki_twisted(&model.as_base(), cfg),
    }
}

const FUTAKI_HEADER: [&str; 10] = [
    "model",
    "case",
    "kind",
    "lambda",
    "alpha",
    "futaki",
    "closed_form",
    "slope_gap",
    "verdict",
    "conjecture_dependent",
];

fn futaki_row(model_index: usize, selection: &Selection, r: &DfReport) -> Vec<String> {
    vec![
        model_index.to_string(),
        selection.label(),
        r.kind.into(),
        r.lambda.to_string(),
        r.alpha.to_string(),
        r.futaki.leading().to_string(),
        r.closed_form.to_string(),
        r.slope_gap.to_string(),
        match r.verdict {
            Verdict::Destabilised => "destabilised",
            Verdict::Zero => "zero",
            Verdict::StableIndicated => "stable-indicated",
        }
        .into(),
        r.conjecture_dependent.to_string(),
    ]
}

/// Every (model, case, α) combination. Input errors of single cases (for
/// example a flag too long for the rank) are reported as skipped; broken
/// identities abort with exit code 1.
pub fn futaki_cases(
    models: &[Model],
    selections: &[Selection],
    alphas: &[u32],
    mode: FutakiMode,
) -> Result<Sweep, Failure> {
    let mut jobs = Vec::new();
    for (mi, m) in models.iter().enumerate() {
        for s in selections {
            for &a in alphas {
                jobs.push((mi, m, s, a));
            }
        }
    }
    let cases = jobs
        .into_par_iter()
        .map(|(mi, model, selection, alpha)| -> Result<Case, Failure> {
            let result = selection.config(alpha).and_then(|cfg| futaki_report(model, &cfg, mode));
            match result {
                Ok(report) => {
                    let status = match report.verdict {
                        Verdict::Destabilised => CaseStatus::Destabilised,
                        Verdict::Zero => CaseStatus::Zero,
                        Verdict::StableIndicated => CaseStatus::StableIndicated,
                    };
                    let mut json = to_json(&report)?;
                    json["model"] = json!(mi);
                    Ok(Case {
                        row: futaki_row(mi, selection, &report),
                        json,
                        status,
                    })
                }
                Err(e) if e.is_input_error() => {
                    let mut row = vec![String::new(); FUTAKI_HEADER.len()];
                    row[0] = mi.to_string();
                    row[1] = selection.label();
                    row[4] = alpha.to_string();
                    row[8] = "skipped".into();
                    Ok(Case {
                        json: json!({"model": mi, "case": selection.label(), "alpha": alpha, "skipped": e.to_string()}),
                        row,
                        status: CaseStatus::Skipped,
                    })
                }
                Err(e) => Err(e.into()),
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Sweep::new("futaki", FUTAKI_HEADER.to_vec(), cases))
}

pub fn futaki_single(model: &Model, selection: &Selection, alpha: u32, twisted: bool) -> Result<Outcome, Failure> {
    model.validate()?;
    let cfg = selection.config(alpha)?;
    let mode = if twisted {
        FutakiMode::Twisted
    } else {
        FutakiMode::Natural
    };
    let report = futaki_report(model, &cfg, mode)?;
    Ok(Outcome {
        document: to_json(&report)?,
        header: FUTAKI_HEADER.to_vec(),
        rows: vec![futaki_row(0, selection, &report)],
        summary: None,
        failed: false,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Giambelli,
    Roots,
    Both,
}

fn schur_case(lambda: &Partition, e: u32, truncation: u32, method: Method) -> Result<Case, Failure> {
    if e == 0 {
        return Err(Failure::input("rank must be positive"));
    }
    let (ch, oracle_match) = match method {
        Method::Giambelli => (ch_schur_giambelli(lambda, e, truncation)?, None),
        Method::Roots => (ch_schur_roots(lambda, e, truncation)?, None),
        Method::Both => {
            let g = ch_schur_giambelli(lambda, e, truncation)?;
            let r = ch_schur_roots(lambda, e, truncation)?;
            let same = g.poly() == r.poly();
            (g, Some(same))
        }
    };
    let parts: Vec<String> = (0..=truncation).map(|d| ch.part(d).to_string()).collect();
    let rank = schur_rank(lambda, e);
    let status = match oracle_match {
        Some(false) => CaseStatus::Fail,
        _ => CaseStatus::Pass,
    };
    Ok(Case {
        row: vec![
            lambda.to_string(),
            e.to_string(),
            truncation.to_string(),
            rank.to_string(),
            ch.poly().to_string(),
            oracle_match.map(|b| b.to_string()).unwrap_or_default(),
        ],
        json: json!({
            "lambda": lambda,
            "rank": e,
            "truncation": truncation,
            "schur_rank": rank.to_string(),
            "ch": ch.poly().to_string(),
            "parts": parts,
            "oracle_match": oracle_match,
        }),
        status,
    })
}

const SCHUR_HEADER: [&str; 6] = ["lambda", "rank", "truncation", "schur_rank", "ch", "oracle_match"];

pub fn schur_cases(lambdas: &[Partition], ranks: IntRange, truncation: u32, method: Method) -> Result<Sweep, Failure> {
    let jobs: Vec<(&Partition, u32)> = ranks.iter().flat_map(|e| lambdas.iter().map(move |l| (l, e))).collect();
    let cases = jobs
        .into_par_iter()
        .map(|(l, e)| schur_case(l, e, truncation, method))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Sweep::new("schur-ch", SCHUR_HEADER.to_vec(), cases))
}

pub fn schur_single(lambda: &Partition, e: u32, truncation: u32, method: Method) -> Result<Outcome, Failure> {
    let case = schur_case(lambda, e, truncation, method)?;
    Ok(Outcome {
        failed: case.status == CaseStatus::Fail,
        document: case.json,
        header: SCHUR_HEADER.to_vec(),
        rows: vec![case.row],
        summary: None,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
pub struct LrTriple {
    pub nu: Partition,
    pub mu: Partition,
    pub lambda: Partition,
}

const LR_HEADER: [&str; 4] = ["nu", "mu", "lambda", "coefficient"];

fn lr_case(t: &LrTriple) -> Case {
    let n = lr_coefficient(&t.nu, &t.mu, &t.lambda);
    let swapped = lr_coefficient(&t.mu, &t.nu, &t.lambda);
    Case {
        row: vec![t.nu.to_string(), t.mu.to_string(), t.lambda.to_string(), n.to_string()],
        json: json!({"nu": t.nu, "mu": t.mu, "lambda": t.lambda, "coefficient": n}),
        status: if n == swapped {
            CaseStatus::Pass
        } else {
            CaseStatus::Fail
        },
    }
}

pub fn lr_cases(triples: &[LrTriple]) -> Sweep {
    Sweep::new("lr", LR_HEADER.to_vec(), triples.par_iter().map(lr_case).collect())
}

/// With `ranks` set, the decomposition of `λ` over a split of those ranks;
/// otherwise every `N_{νμλ}` with `|ν| + |μ| = |λ|` unless a pair is given.
pub fn lr_single(
    lambda: &Partition,
    pair: Option<(Partition, Partition)>,
    ranks: Option<(u32, u32)>,
) -> Result<Outcome, Failure> {
    if let Some((nu, mu)) = pair {
        let case = lr_case(&LrTriple {
            nu,
            mu,
            lambda: lambda.clone(),
        });
        return Ok(Outcome {
            failed: case.status == CaseStatus::Fail,
            document: case.json,
            header: LR_HEADER.to_vec(),
            rows: vec![case.row],
            summary: None,
        });
    }
    let (f, g) = ranks.unwrap_or((lambda.size(), lambda.size()));
    let terms = lr_decompose(lambda, f, g, None);
    let rows = terms
        .iter()
        .map(|t| {
            vec![
                t.nu.to_string(),
                t.mu.to_string(),
                lambda.to_string(),
                t.multiplicity.to_string(),
            ]
        })
        .collect();
    Ok(Outcome {
        document: json!({"lambda": lambda, "ranks": [f, g], "terms": to_json(&terms)?}),
        header: LR_HEADER.to_vec(),
        rows,
        summary: None,
        failed: false,
    })
}

/// One case per `(k, n)` cell: the cell passes when every applicable
/// identity matches. With `exponents`, evaluates the multi-index sum
/// instead and cross-checks the specializations it has.
pub fn appendix(k: IntRange, n: IntRange, exponents: Option<&[u32]>) -> Result<Sweep, Failure> {
    if k.lo < 1 || n.lo < 1 {
        return Err(Failure::input("k and n must be positive"));
    }
    let cells: Vec<(u32, u32)> = k.iter().flat_map(|k| n.iter().map(move |n| (k, n))).collect();
    if let Some(j) = exponents {
        let cases = cells
            .into_par_iter()
            .map(|(k, n)| -> Result<Case, Failure> {
                let value = appendix_general(k, n, j)?;
                Ok(Case {
                    row: vec![
                        k.to_string(),
                        n.to_string(),
                        j.iter().map(u32::to_string).collect::<Vec<_>>().join(";"),
                        value.to_string(),
                    ],
                    json: json!({"k": k, "n": n, "exponents": j, "value": value.to_string()}),
                    status: CaseStatus::Pass,
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        return Ok(Sweep::new(
            "appendix-general",
            vec!["k", "n", "exponents", "value"],
            cases,
        ));
    }
    let cases = cells
        .into_par_iter()
        .map(|(k, n)| -> Result<Case, Failure> {
            let checks = checks_at(k, n);
            if checks.is_empty() {
                return Err(Failure::input(format!(
                    "no identity applies at k={k}, n={n} (needs n >= 2)"
                )));
            }
            let ok = checks.iter().all(|c| c.matches);
            let field = |f: fn(&flagstab_core::combinat::SumCheck) -> String| {
                checks.iter().map(f).collect::<Vec<_>>().join(";")
            };
            Ok(Case {
                row: vec![
                    k.to_string(),
                    n.to_string(),
                    field(|c| c.identity.to_string()),
                    field(|c| c.brute.to_string()),
                    field(|c| c.closed.to_string()),
                    ok.to_string(),
                ],
                json: json!({"k": k, "n": n, "checks": to_json(&checks)?, "match": ok}),
                status: if ok { CaseStatus::Pass } else { CaseStatus::Fail },
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Sweep::new(
        "appendix",
        vec!["k", "n", "identity", "brute", "closed", "match"],
        cases,
    ))
}

const WEIGHT_HEADER: [&str; 8] = [
    "genus",
    "f_degrees",
    "g_degrees",
    "lambda",
    "alpha",
    "beta",
    "w_direct",
    "w_lr",
];

fn weight_case(split: &SplitCurve, lambda: &Partition, alpha: u32, beta: u32) -> Result<Case, Failure> {
    let w = weight_check(split, lambda, alpha, beta)?;
    let join = |v: &[i64]| v.iter().map(i64::to_string).collect::<Vec<_>>().join(";");
    Ok(Case {
        row: vec![
            split.genus.to_string(),
            join(&split.f_degrees),
            join(&split.g_degrees),
            lambda.to_string(),
            alpha.to_string(),
            beta.to_string(),
            w.w_direct.to_string(),
            w.w_lr.to_string(),
        ],
        json: {
            let mut v = to_json(&w)?;
            v["curve"] = to_json(split)?;
            v["lambda"] = json!(lambda);
            v["alpha"] = json!(alpha);
            v["beta"] = json!(beta);
            v
        },
        status: if w.matches { CaseStatus::Pass } else { CaseStatus::Fail },
    })
}

/// Every partition of size at most `max_size` that fits the rank, on every
/// curve, for every `(α, β)`.
pub fn weight_cases(curves: &[SplitCurve], max_size: u32, weights: &[(u32, u32)]) -> Result<Sweep, Failure> {
    let mut jobs = Vec::new();
    for c in curves {
        let rank = c.f_degrees.len() + c.g_degrees.len();
        for size in 0..=max_size {
            for l in partitions_of(size).into_iter().filter(|l| l.len() <= rank) {
                for &(a, b) in weights {
                    jobs.push((c, l.clone(), a, b));
                }
            }
        }
    }
    let cases = jobs
        .into_par_iter()
        .map(|(c, l, a, b)| weight_case(c, &l, a, b))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Sweep::new("weight-check", WEIGHT_HEADER.to_vec(), cases))
}

pub fn weight_single(split: &SplitCurve, lambda: &Partition, alpha: u32, beta: u32) -> Result<Outcome, Failure> {
    let case = weight_case(split, lambda, alpha, beta)?;
    Ok(Outcome {
        failed: case.status == CaseStatus::Fail,
        document: case.json,
        header: WEIGHT_HEADER.to_vec(),
        rows: vec![case.row],
        summary: None,
    })
}
