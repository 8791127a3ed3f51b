//! Experiment matrices, result rows and ratio summaries.

use std::collections::BTreeMap;
use std::io::{Read, Write};
use std::time::Duration;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cost::{Bound, BoundVec, CostError, CostVec};
use crate::oracle::{oracle_pareto, OracleError};
use crate::problem::{compute_heuristic, grid_instance, lattice_instance, GridSpec, Instance, LatticeSpec, SpecError};
use crate::search::{rme_moa_star, Fault, SearchConfig, SearchError, SearchResult, Termination};

#[derive(Debug, Error)]
pub enum BenchError {
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("invalid config `{text}`: {reason}")]
    Config { text: String, reason: String },
    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),
}

/// A `(C, D)` hyperparameter pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub c: BoundVec,
    pub d: BoundVec,
}

impl RunConfig {
    pub fn label(&self) -> String {
        format!("{}/{}", self.c.render(), self.d.render())
    }

    /// The full-expansion, best-first-only configuration ratios are taken against.
    pub fn is_baseline(&self) -> bool {
        self.c.components().iter().all(|b| *b == Bound::Unbounded) && self.d.is_zero()
    }
}

/// Parses `C/D` pairs separated by commas, e.g. `inf/0,0/0,3/0,0/16`.
/// Each side is a scalar (replicated over all objectives) or a
/// `;`-separated vector.
pub fn parse_configs(text: &str, m: usize) -> Result<Vec<RunConfig>, BenchError> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|pair| {
            let err = |reason: String| BenchError::Config {
                text: pair.to_string(),
                reason,
            };
            let (c, d) = pair.trim().split_once('/').ok_or_else(|| err("expected C/D".into()))?;
            let parse = |s: &str| BoundVec::parse(s, m).map_err(|e: CostError| err(e.to_string()));
            Ok(RunConfig { c: parse(c)?, d: parse(d)? })
        })
        .collect()
}

/// One `(instance, config)` run. Column order is the CSV schema.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub instance_id: String,
    pub family: String,
    pub rows: Option<usize>,
    pub cols: Option<usize>,
    /// Grid connectedness exponent.
    pub k: Option<u32>,
    pub density: Option<f64>,
    #[serde(rename = "M")]
    pub m: usize,
    #[serde(rename = "C")]
    pub c: String,
    #[serde(rename = "D")]
    pub d: String,
    pub runtime_seconds: f64,
    pub max_stored_labels: usize,
    pub num_solutions: usize,
    pub expansions: u64,
    pub reexpansions: u64,
    pub dfs_expansions: u64,
    pub status: Termination,
}

impl ResultRow {
    pub fn new(instance_id: &str, instance: &Instance, config: &RunConfig, result: &SearchResult) -> Self {
        let meta = instance.meta.as_ref();
        let spec = meta.map(|m| &m.spec);
        let field = |name: &str| spec.and_then(|s| s.get(name));
        let as_usize = |name: &str| field(name).and_then(|v| v.as_u64()).map(|v| v as usize);
        let family = meta.map_or_else(|| "file".to_string(), |m| m.family.clone());
        ResultRow {
            instance_id: instance_id.to_string(),
            rows: as_usize("rows"),
            cols: as_usize("cols"),
            k: field("k").and_then(|v| v.as_u64()).map(|v| v as u32),
            density: field("obstacle_density").and_then(|v| v.as_f64()),
            family,
            m: instance.graph.num_objectives(),
            c: config.c.render(),
            d: config.d.render(),
            runtime_seconds: result.metrics.runtime_seconds,
            max_stored_labels: result.metrics.max_stored_labels,
            num_solutions: result.solutions.len(),
            expansions: result.metrics.expansions,
            reexpansions: result.metrics.reexpansions,
            dfs_expansions: result.metrics.dfs_expansions,
            status: result.termination,
        }
    }
}

pub fn write_rows<W: Write>(rows: &[ResultRow], out: W) -> Result<(), BenchError> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

pub fn read_rows<R: Read>(input: R) -> Result<Vec<ResultRow>, BenchError> {
    let mut r = csv::Reader::from_reader(input);
    Ok(r.deserialize().collect::<Result<_, _>>()?)
}

#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    Grid(GridSpec),
    Lattice(LatticeSpec),
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Grid(_) => "grid",
            Family::Lattice(_) => "lattice",
        }
    }

    /// Instance generated from this template with `seed`.
    pub fn instance(&self, seed: u64) -> Result<Instance, SpecError> {
        match self {
            Family::Grid(s) => grid_instance(&GridSpec { seed, ..s.clone() }),
            Family::Lattice(s) => lattice_instance(&LatticeSpec { seed, ..s.clone() }),
        }
    }
}

#[derive(Debug, Clone)]
pub struct BenchPlan {
    /// Template spec; its seed is replaced per instance.
    pub family: Family,
    pub configs: Vec<RunConfig>,
    pub count: usize,
    /// Instance `i` uses seed `first_seed + i`.
    pub first_seed: u64,
    pub time_limit: Option<Duration>,
    /// Run instances on the rayon pool. Timing-sensitive runs should leave
    /// this off.
    pub parallel: bool,
}

/// Runs every config on every instance. Rows come back in instance order,
/// then config order, whether or not the runs were parallel.
pub fn run_plan(plan: &BenchPlan) -> Result<Vec<ResultRow>, BenchError> {
    let run_one = |i: usize| -> Result<Vec<ResultRow>, BenchError> {
        let seed = plan.first_seed + i as u64;
        let instance = plan.family.instance(seed)?;
        let id = format!("{}_{seed}", plan.family.name());
        let h = compute_heuristic(&instance.graph);
        plan.configs
            .iter()
            .map(|cfg| {
                let mut sc = SearchConfig::new(cfg.c.clone(), cfg.d.clone());
                sc.time_limit = plan.time_limit;
                let result = rme_moa_star(&instance.graph, &h, &sc)?;
                Ok(ResultRow::new(&id, &instance, cfg, &result))
            })
            .collect()
    };
    let per_instance: Vec<Vec<ResultRow>> = if plan.parallel {
        (0..plan.count).into_par_iter().map(run_one).collect::<Result<_, _>>()?
    } else {
        (0..plan.count).map(run_one).collect::<Result<_, _>>()?
    };
    Ok(per_instance.into_iter().flatten().collect())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigSummary {
    #[serde(rename = "C")]
    pub c: String,
    #[serde(rename = "D")]
    pub d: String,
    pub runs: usize,
    pub timed_out: usize,
    /// Instances where both this config and the baseline completed.
    pub compared: usize,
    pub memory_ratio_geomean: Option<f64>,
    pub runtime_ratio_geomean: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub baseline: Option<String>,
    pub configs: Vec<ConfigSummary>,
    pub warnings: Vec<String>,
}

fn geomean(values: &[f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    Some((values.iter().map(|v| v.ln()).sum::<f64>() / values.len() as f64).exp())
}

/// Runtimes below this are clamped before taking ratios.
pub const MIN_RUNTIME: f64 = 1e-9;

fn is_baseline_row(r: &ResultRow) -> bool {
    BoundVec::parse(&r.c, r.m).is_ok_and(|c| c.components().iter().all(|b| *b == Bound::Unbounded))
        && BoundVec::parse(&r.d, r.m).is_ok_and(|d| d.is_zero())
}

/// Per-config geometric means of the per-instance memory and runtime ratios
/// against the baseline. Timed-out runs are left out and counted.
pub fn summarize(rows: &[ResultRow]) -> Summary {
    let mut warnings = Vec::new();
    let baselines: BTreeMap<&str, &ResultRow> = rows
        .iter()
        .filter(|r| is_baseline_row(r))
        .map(|r| (r.instance_id.as_str(), r))
        .collect();
    let baseline = baselines.values().next().map(|r| format!("{}/{}", r.c, r.d));
    if baseline.is_none() {
        warnings.push("baseline config (C=inf, D=0) absent; ratios omitted".to_string());
        log::warn!("baseline config (C=inf, D=0) absent; ratios omitted");
    }

    let mut order: Vec<(String, String)> = Vec::new();
    let mut groups: BTreeMap<(String, String), Vec<&ResultRow>> = BTreeMap::new();
    for r in rows {
        let key = (r.c.clone(), r.d.clone());
        if !groups.contains_key(&key) {
            order.push(key.clone());
        }
        groups.entry(key).or_default().push(r);
    }

    let configs = order
        .into_iter()
        .map(|key| {
            let group = &groups[&key];
            let mut mem = Vec::new();
            let mut time = Vec::new();
            for r in group.iter().filter(|r| r.status == Termination::Completed) {
                let Some(b) = baselines.get(r.instance_id.as_str()) else {
                    continue;
                };
                if b.status != Termination::Completed {
                    continue;
                }
                mem.push(r.max_stored_labels as f64 / b.max_stored_labels as f64);
                time.push(r.runtime_seconds.max(MIN_RUNTIME) / b.runtime_seconds.max(MIN_RUNTIME));
            }
            ConfigSummary {
                c: key.0.clone(),
                d: key.1.clone(),
                runs: group.len(),
                timed_out: group.iter().filter(|r| r.status == Termination::TimedOut).count(),
                compared: mem.len(),
                memory_ratio_geomean: geomean(&mem),
                runtime_ratio_geomean: geomean(&time),
            }
        })
        .collect();
    Summary {
        baseline,
        configs,
        warnings,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyOutcome {
    pub config: RunConfig,
    pub expected: Vec<CostVec>,
    pub got: Vec<CostVec>,
    /// Every returned path re-sums to its reported cost.
    pub paths_valid: bool,
    pub termination: Termination,
}

impl VerifyOutcome {
    pub fn passed(&self) -> bool {
        self.expected == self.got && self.paths_valid && self.termination == Termination::Completed
    }
}

/// Runs each config and compares its cost set with the reference solver.
pub fn verify(instance: &Instance, configs: &[RunConfig], fault: Option<Fault>) -> Result<Vec<VerifyOutcome>, BenchError> {
    let graph = &instance.graph;
    let expected = oracle_pareto(graph)?.costs();
    let h = compute_heuristic(graph);
    configs
        .iter()
        .map(|cfg| {
            let mut sc = SearchConfig::new(cfg.c.clone(), cfg.d.clone());
            sc.fault = fault;
            sc.validate_heuristic = true;
            let res = rme_moa_star(graph, &h, &sc)?;
            Ok(VerifyOutcome {
                config: cfg.clone(),
                expected: expected.clone(),
                got: res.costs(),
                paths_valid: res.solutions.iter().all(|s| graph.path_attains(&s.path, &s.cost)),
                termination: res.termination,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::fixtures::g1;

    fn sample_row(c: &str, d: &str, id: &str, mem: usize, t: f64, status: Termination) -> ResultRow {
        ResultRow {
            instance_id: id.into(),
            family: "grid".into(),
            rows: Some(4),
            cols: Some(4),
            k: Some(3),
            density: None,
            m: 2,
            c: c.into(),
            d: d.into(),
            runtime_seconds: t,
            max_stored_labels: mem,
            num_solutions: 1,
            expansions: 3,
            reexpansions: 0,
            dfs_expansions: 0,
            status,
        }
    }

    #[test]
    fn csv_round_trip() {
        let rows = vec![
            sample_row("inf", "0", "grid_1", 10, 0.5, Termination::Completed),
            sample_row("0", "2;3", "grid_1", 4, 0.25, Termination::TimedOut),
        ];
        let mut buf = Vec::new();
        write_rows(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with(
            "instance_id,family,rows,cols,k,density,M,C,D,runtime_seconds,max_stored_labels,num_solutions,expansions,reexpansions,dfs_expansions,status\n"
        ));
        assert!(text.contains(",timed_out\n"));
        assert_eq!(read_rows(buf.as_slice()).unwrap(), rows);
    }

    #[test]
    fn parses_config_lists() {
        let cfgs = parse_configs("inf/0, 0/0,3;1/inf", 2).unwrap();
        assert_eq!(cfgs.len(), 3);
        assert!(cfgs[0].is_baseline());
        assert_eq!(cfgs[2].label(), "3;1/inf");
        assert!(parse_configs("3", 2).is_err());
        assert!(parse_configs("x/0", 2).is_err());
    }

    #[test]
    fn summary_excludes_timeouts() {
        let rows = vec![
            sample_row("inf", "0", "a", 100, 1.0, Termination::Completed),
            sample_row("0", "0", "a", 25, 2.0, Termination::Completed),
            sample_row("inf", "0", "b", 100, 1.0, Termination::Completed),
            sample_row("0", "0", "b", 1, 8.0, Termination::TimedOut),
        ];
        let s = summarize(&rows);
        assert_eq!(s.baseline.as_deref(), Some("inf/0"));
        let c0 = &s.configs[1];
        assert_eq!((c0.runs, c0.timed_out, c0.compared), (2, 1, 1));
        assert_eq!(c0.memory_ratio_geomean, Some(0.25));
        assert_eq!(c0.runtime_ratio_geomean, Some(2.0));
        assert_eq!(s.configs[0].memory_ratio_geomean, Some(1.0));
    }

    #[test]
    fn summary_without_baseline_warns() {
        let s = summarize(&[sample_row("0", "0", "a", 5, 1.0, Termination::Completed)]);
        assert!(s.baseline.is_none());
        assert_eq!(s.configs[0].memory_ratio_geomean, None);
        assert_eq!(s.warnings.len(), 1);
    }

    #[test]
    fn plan_produces_one_row_per_run() {
        let plan = BenchPlan {
            family: Family::Grid(GridSpec::new(5, 5, 3, 2, 0)),
            configs: parse_configs("inf/0,0/0", 2).unwrap(),
            count: 3,
            first_seed: 11,
            time_limit: None,
            parallel: true,
        };
        let rows = run_plan(&plan).unwrap();
        assert_eq!(rows.len(), 6);
        assert_eq!(rows[0].instance_id, "grid_11");
        assert_eq!(rows[5].instance_id, "grid_13");
        assert_eq!(rows[1].c, "0");
        assert_eq!(rows[0].num_solutions, rows[1].num_solutions);
    }

    #[test]
    fn verify_g1_and_fault() {
        let inst = Instance { graph: g1(), meta: None };
        let cfgs = parse_configs("0/0,inf/0,0/inf", 2).unwrap();
        assert!(verify(&inst, &cfgs, None).unwrap().iter().all(VerifyOutcome::passed));
    }
}
