//! Monte Carlo comparison of angle strategies over random Gaussian matrices.

use std::fmt::Write;

use bembed_core::datasets::{gaussian_matrix, RngSpec};
use bembed_core::embed::branching_embed;
use bembed_core::metrics::evaluate_embedding_with;
use bembed_core::{Algorithm, AngleStrategy, DissimilarityKind, LinkageMethod, Recluster};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

/// A dissimilarity/linkage pair; one row of the table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Condition {
    pub dissimilarity: DissimilarityKind,
    pub linkage: LinkageMethod,
}

impl Condition {
    pub const fn new(dissimilarity: DissimilarityKind, linkage: LinkageMethod) -> Self {
        Condition { dissimilarity, linkage }
    }

    /// Euclidean with all four linkages, then correlation without Ward.
    pub fn table_rows() -> Vec<Condition> {
        use DissimilarityKind::*;
        use LinkageMethod::*;
        let mut rows: Vec<_> = LinkageMethod::ALL.iter().map(|&m| Condition::new(Euclidean, m)).collect();
        rows.extend([Single, Complete, Average].map(|m| Condition::new(Correlation, m)));
        rows
    }
}

/// One column of the table. Random columns get a fresh seed per trial.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StrategyColumn {
    Random,
    Fixed(f64),
    Even,
}

impl StrategyColumn {
    /// random, 0° to 90° in 15° steps, even.
    pub fn table_columns() -> Vec<StrategyColumn> {
        let mut cols = vec![StrategyColumn::Random];
        cols.extend((0..=6).map(|k| StrategyColumn::Fixed(15.0 * k as f64)));
        cols.push(StrategyColumn::Even);
        cols
    }

    pub fn label(&self) -> String {
        match self {
            StrategyColumn::Random => "random".into(),
            StrategyColumn::Fixed(t) => format!("{t}"),
            StrategyColumn::Even => "even".into(),
        }
    }

    pub fn strategy(&self, seed: u64, swap: bool) -> AngleStrategy {
        match *self {
            StrategyColumn::Random => AngleStrategy::random(seed),
            StrategyColumn::Fixed(theta_deg) => AngleStrategy::Fixed { theta_deg, swap },
            StrategyColumn::Even => AngleStrategy::Even,
        }
    }
}

/// Dissimilarity used when reclustering the embedded points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ConvertedDissimilarity {
    /// Whatever the condition used for the original data.
    #[default]
    SameAsOriginal,
    Always(DissimilarityKind),
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub trials: u64,
    pub rows: usize,
    pub cols: usize,
    pub conditions: Vec<Condition>,
    pub strategies: Vec<StrategyColumn>,
    /// Trial `t` uses seed `seed + t` for its matrix and random strategy.
    pub seed: u64,
    /// Swap rule for the fixed-angle columns.
    pub swap: bool,
    pub algorithm: Algorithm,
    pub converted: ConvertedDissimilarity,
}

impl BenchConfig {
    /// The full 7 × 9 layout on 100 × 5 matrices.
    pub fn tables(trials: u64, seed: u64) -> Self {
        BenchConfig {
            trials,
            rows: 100,
            cols: 5,
            conditions: Condition::table_rows(),
            strategies: StrategyColumn::table_columns(),
            seed,
            swap: true,
            algorithm: Algorithm::Fast,
            converted: ConvertedDissimilarity::SameAsOriginal,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::Config("trials must be at least 1".into()));
        }
        if self.rows < 2 || self.cols == 0 {
            return Err(Error::Config(format!("matrix shape {}x{} is too small", self.rows, self.cols)));
        }
        if self.conditions.is_empty() || self.strategies.is_empty() {
            return Err(Error::Config("no conditions or strategies".into()));
        }
        for c in &self.conditions {
            if c.dissimilarity == DissimilarityKind::Correlation && c.linkage == LinkageMethod::Ward {
                return Err(Error::Config("Ward linkage requires Euclidean dissimilarity".into()));
            }
            if c.dissimilarity == DissimilarityKind::Correlation && self.cols < 2 {
                return Err(Error::Config("correlation needs at least 2 columns".into()));
            }
        }
        if self.converted == ConvertedDissimilarity::Always(DissimilarityKind::Correlation)
            && self.conditions.iter().any(|c| c.linkage == LinkageMethod::Ward)
        {
            return Err(Error::Config("Ward reclustering requires Euclidean dissimilarity".into()));
        }
        for s in &self.strategies {
            s.strategy(0, self.swap).validate()?;
        }
        Ok(())
    }

    fn recluster(&self, c: &Condition) -> Recluster {
        let kind = match self.converted {
            ConvertedDissimilarity::SameAsOriginal => c.dissimilarity,
            ConvertedDissimilarity::Always(k) => k,
        };
        Recluster::euclidean(c.linkage).with_dissimilarity(kind).with_algorithm(self.algorithm)
    }
}

/// Summary of one (condition, strategy) cell over the successful trials.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct CellStats {
    pub successes: u64,
    pub failures: u64,
    pub mean_rc: f64,
    pub mean_rk: f64,
    /// Standard error of `mean_rc`.
    pub se_rc: f64,
    pub se_rk: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchTable {
    pub conditions: Vec<Condition>,
    pub strategies: Vec<StrategyColumn>,
    pub trials: u64,
    /// Row-major: `cells[c * strategies.len() + s]`.
    pub cells: Vec<CellStats>,
}

impl BenchTable {
    pub fn cell(&self, condition: usize, strategy: usize) -> &CellStats {
        &self.cells[condition * self.strategies.len() + strategy]
    }

    /// Position of `c` and `s` in the table, if present.
    pub fn find(&self, c: Condition, s: StrategyColumn) -> Option<&CellStats> {
        let ci = self.conditions.iter().position(|&x| x == c)?;
        let si = self.strategies.iter().position(|&x| x == s)?;
        Some(self.cell(ci, si))
    }

    pub fn total_failures(&self) -> u64 {
        self.cells.iter().map(|c| c.failures).sum()
    }

    /// An `r_c` block followed by an `r_k` block, one row per condition.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("metric,dissimilarity,linkage");
        for s in &self.strategies {
            out.push(',');
            out.push_str(&s.label());
        }
        out.push('\n');
        for metric in ["r_c", "r_k"] {
            for (ci, c) in self.conditions.iter().enumerate() {
                let _ = write!(out, "{metric},{},{}", c.dissimilarity.name(), c.linkage.name());
                for si in 0..self.strategies.len() {
                    let cell = self.cell(ci, si);
                    let v = if metric == "r_c" { cell.mean_rc } else { cell.mean_rk };
                    if cell.successes == 0 {
                        out.push_str(",NA");
                    } else {
                        let _ = write!(out, ",{v:.4}");
                    }
                }
                out.push('\n');
            }
        }
        out
    }

    /// Every cell with its standard errors and failure count.
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Row<'a> {
            dissimilarity: &'a str,
            linkage: &'a str,
            strategy: String,
            #[serde(flatten)]
            stats: CellStats,
        }
        let mut rows = Vec::with_capacity(self.cells.len());
        for (ci, c) in self.conditions.iter().enumerate() {
            for (si, s) in self.strategies.iter().enumerate() {
                rows.push(Row {
                    dissimilarity: c.dissimilarity.name(),
                    linkage: c.linkage.name(),
                    strategy: s.label(),
                    stats: *self.cell(ci, si),
                });
            }
        }
        let mut s = serde_json::to_string_pretty(&serde_json::json!({
            "trials": self.trials,
            "cells": rows,
        }))
        .expect("table serializes");
        s.push('\n');
        s
    }
}

/// Runs every trial (in parallel on the current rayon pool) and folds the
/// results in trial order, so the table does not depend on thread count.
pub fn run_table_experiment(cfg: &BenchConfig) -> Result<BenchTable> {
    cfg.validate()?;
    let per_trial: Vec<Vec<Option<(f64, f64)>>> =
        (0..cfg.trials).into_par_iter().map(|t| run_trial(cfg, t)).collect();

    let width = cfg.strategies.len();
    let mut acc = vec![Welford::default(); cfg.conditions.len() * width];
    for trial in &per_trial {
        for (a, r) in acc.iter_mut().zip(trial) {
            a.push(*r);
        }
    }
    Ok(BenchTable {
        conditions: cfg.conditions.clone(),
        strategies: cfg.strategies.clone(),
        trials: cfg.trials,
        cells: acc.iter().map(Welford::stats).collect(),
    })
}

fn run_trial(cfg: &BenchConfig, t: u64) -> Vec<Option<(f64, f64)>> {
    let spec = RngSpec::new(cfg.seed).trial(t);
    let width = cfg.strategies.len();
    let Ok(x) = gaussian_matrix(cfg.rows, cfg.cols, spec) else {
        return vec![None; cfg.conditions.len() * width];
    };
    let mut euclid = None;
    let mut corr = None;
    let mut out = Vec::with_capacity(cfg.conditions.len() * width);
    for c in &cfg.conditions {
        let d = match c.dissimilarity {
            DissimilarityKind::Euclidean => euclid.get_or_insert_with(|| c.dissimilarity.compute(&x)),
            DissimilarityKind::Correlation => corr.get_or_insert_with(|| c.dissimilarity.compute(&x)),
        };
        let Ok(d) = d else {
            out.extend(std::iter::repeat(None).take(width));
            continue;
        };
        let original = cfg.algorithm.run(d, c.linkage);
        let recluster = cfg.recluster(c);
        for s in &cfg.strategies {
            let strategy = s.strategy(spec.seed, cfg.swap);
            let r = branching_embed(&original, &strategy)
                .and_then(|e| evaluate_embedding_with(&original, &e, &recluster))
                .ok()
                .map(|rep| (rep.r_c, rep.r_k));
            out.push(r);
        }
    }
    out
}

#[derive(Debug, Clone, Copy, Default)]
struct Welford {
    n: u64,
    failures: u64,
    mean: [f64; 2],
    m2: [f64; 2],
}

impl Welford {
    fn push(&mut self, r: Option<(f64, f64)>) {
        let Some((rc, rk)) = r else {
            self.failures += 1;
            return;
        };
        self.n += 1;
        for (k, v) in [rc, rk].into_iter().enumerate() {
            let delta = v - self.mean[k];
            self.mean[k] += delta / self.n as f64;
            self.m2[k] += delta * (v - self.mean[k]);
        }
    }

    fn stats(&self) -> CellStats {
        let se = |k: usize| {
            if self.n < 2 {
                0.0
            } else {
                (self.m2[k] / (self.n - 1) as f64 / self.n as f64).sqrt()
            }
        };
        CellStats {
            successes: self.n,
            failures: self.failures,
            mean_rc: if self.n == 0 { f64::NAN } else { self.mean[0] },
            mean_rk: if self.n == 0 { f64::NAN } else { self.mean[1] },
            se_rc: se(0),
            se_rk: se(1),
        }
    }
}
