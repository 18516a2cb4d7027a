//! Sweep configs: one JSON document naming a task and its parameter ranges.

use std::path::{Path, PathBuf};

use flagstab_core::futaki::ALPHA_CHECKED;
use flagstab_core::geometry::{Model, SplitCurve};
use flagstab_core::{FlagType, Partition};
use serde::Deserialize;

use crate::output::Format;
use crate::sweep::{self, Failure, FutakiMode, IntRange, LrTriple, Method, Selection, Sweep};

#[derive(Debug, Deserialize)]
pub struct Config {
    #[serde(flatten)]
    pub task: Task,
    #[serde(default)]
    pub out: Option<PathBuf>,
    #[serde(default)]
    pub format: Option<Format>,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "task", rename_all = "kebab-case")]
pub enum Task {
    Conjecture {
        rank: IntRange,
        length: IntRange,
        #[serde(default = "default_parts")]
        parts: u32,
    },
    #[serde(alias = "futaki")]
    FutakiCurve(FutakiSweep),
    FutakiTwisted(FutakiSweep),
    SchurCh {
        lambdas: Vec<Partition>,
        ranks: IntRange,
        #[serde(default = "default_truncation")]
        truncation: u32,
        #[serde(default = "default_method")]
        method: Method,
    },
    Lr {
        triples: Vec<LrTriple>,
    },
    Appendix {
        k: IntRange,
        n: IntRange,
        #[serde(default)]
        exponents: Option<Vec<u32>>,
    },
    WeightCheck {
        curves: Vec<SplitCurve>,
        max_size: u32,
        /// `(α, β)` pairs.
        #[serde(default = "default_weights")]
        weights: Vec<(u32, u32)>,
    },
}

#[derive(Debug, Deserialize)]
pub struct FutakiSweep {
    models: Vec<Model>,
    /// Defaults to the theorem shapes with `ν` all ones.
    #[serde(default)]
    cases: Option<Vec<CaseSpec>>,
    #[serde(default = "default_alphas")]
    alphas: Vec<u32>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CaseSpec {
    #[serde(default)]
    flag: Option<FlagType>,
    #[serde(default)]
    nu: Option<Partition>,
    #[serde(default)]
    lambda: Option<Partition>,
}

impl CaseSpec {
    fn selection(self) -> Result<Selection, Failure> {
        match (self.flag, self.nu, self.lambda) {
            (Some(flag), nu, None) => Ok(Selection::Flag { flag, nu }),
            (None, None, Some(lambda)) => Ok(Selection::Lambda(lambda)),
            _ => Err(Failure::input(
                "each case needs either `flag` (with optional `nu`) or `lambda`",
            )),
        }
    }
}

fn default_parts() -> u32 {
    3
}

fn default_truncation() -> u32 {
    2
}

fn default_method() -> Method {
    Method::Both
}

fn default_alphas() -> Vec<u32> {
    ALPHA_CHECKED.to_vec()
}

fn default_weights() -> Vec<(u32, u32)> {
    vec![(1, 0)]
}

pub fn load(path: &Path) -> Result<Config, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("cannot read config {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::input(format!("invalid config {}: {e}", path.display())))
}

fn futaki(spec: FutakiSweep, mode: FutakiMode) -> Result<Sweep, Failure> {
    for m in &spec.models {
        m.validate()?;
    }
    if spec.alphas.contains(&0) {
        return Err(Failure::input("alphas must be positive"));
    }
    let selections = match spec.cases {
        Some(cases) => cases
            .into_iter()
            .map(CaseSpec::selection)
            .collect::<Result<Vec<_>, _>>()?,
        None => FlagType::theorem_shapes()
            .into_iter()
            .map(|flag| Selection::Flag { flag, nu: None })
            .collect(),
    };
    sweep::futaki_cases(&spec.models, &selections, &spec.alphas, mode)
}

pub fn execute(task: Task) -> Result<Sweep, Failure> {
    match task {
        Task::Conjecture { rank, length, parts } => sweep::conjecture(rank, length, parts),
        Task::FutakiCurve(spec) => futaki(spec, FutakiMode::Natural),
        Task::FutakiTwisted(spec) => futaki(spec, FutakiMode::Twisted),
        Task::SchurCh {
            lambdas,
            ranks,
            truncation,
            method,
        } => sweep::schur_cases(&lambdas, ranks, truncation, method),
        Task::Lr { triples } => Ok(sweep::lr_cases(&triples)),
        Task::Appendix { k, n, exponents } => sweep::appendix(k, n, exponents.as_deref()),
        Task::WeightCheck {
            curves,
            max_size,
            weights,
        } => sweep::weight_cases(&curves, max_size, &weights),
    }
}
