//! Grid sweeps.
//!
//! Cells are ordered by (checker, a, b, c, init, index tuple, variant) and
//! numbered from 0. Work is split into blocks that share one [`Verifier`];
//! blocks run on a rayon pool and are merged back in grid order, so the
//! report does not depend on scheduling.

use std::collections::BTreeMap;
use std::io::Write;
use std::time::Instant;

use horadam_core::{Params, SeqSpec, Verifier};
use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::{
    is_precondition, CheckReport, CheckResult, Checker, Index, Probe, Scope, Verdict, CATALOG,
};
use crate::config::SweepConfig;

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "HORADAM_THREADS";

/// Worker count requested through [`THREADS_ENV`], if any.
pub fn threads_from_env() -> Option<usize> {
    std::env::var(THREADS_ENV)
        .ok()?
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub checker: &'static str,
    pub checked: u64,
    pub equal: u64,
    pub holds: u64,
    pub inapplicable: u64,
    pub fails: u64,
    pub expected_fails: u64,
    /// Cells outside the checker's domain; not part of `checked`.
    pub skipped: u64,
}

impl Tally {
    fn named(checker: &'static str) -> Self {
        Tally {
            checker,
            ..Tally::default()
        }
    }

    fn absorb(&mut self, other: &Tally) {
        self.checked += other.checked;
        self.equal += other.equal;
        self.holds += other.holds;
        self.inapplicable += other.inapplicable;
        self.fails += other.fails;
        self.expected_fails += other.expected_fails;
        self.skipped += other.skipped;
    }
}

/// A cell worth looking at, with the command that reproduces it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub cell: u64,
    pub replay: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<CheckReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Grid {
    pub a: [i64; 2],
    pub b: [i64; 2],
    pub c: [i64; 2],
    pub inits: Vec<String>,
    pub bounds: BTreeMap<&'static str, u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub tool: &'static str,
    pub version: &'static str,
    pub grid: Grid,
    pub cells: u64,
    pub totals: Tally,
    pub checkers: Vec<Tally>,
    /// One entry per unexpected failure.
    pub failures: Vec<Witness>,
    /// The first few negative-control cells that came out unequal.
    pub expected_failures: Vec<Witness>,
    pub elapsed_ms: u64,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.totals.fails == 0
    }
}

/// One flattened cell for CSV output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Row {
    pub cell: u64,
    pub checker: &'static str,
    pub a: Option<i64>,
    pub b: Option<i64>,
    pub c: Option<i64>,
    pub init: Option<String>,
    pub index: String,
    pub outcome: &'static str,
    pub lhs: Option<String>,
    pub rhs: Option<String>,
    pub modulus: Option<String>,
    pub detail: Option<String>,
}

struct Block {
    checker: Checker,
    params: Option<(i64, i64, i64)>,
    init: Option<usize>,
    first_cell: u64,
}

#[derive(Default)]
struct BlockResult {
    tallies: Vec<Tally>,
    failures: Vec<Witness>,
    expected: Vec<Witness>,
    rows: Vec<Row>,
}

impl BlockResult {
    fn tally(&mut self, label: &'static str) -> &mut Tally {
        match self.tallies.iter().position(|t| t.checker == label) {
            Some(i) => &mut self.tallies[i],
            None => {
                self.tallies.push(Tally::named(label));
                self.tallies.last_mut().unwrap()
            }
        }
    }
}

/// Every probe a sweep runs for `checker`, in grid order.
pub fn probes(cfg: &SweepConfig, checker: Checker) -> Vec<Probe> {
    let bound = cfg.bound(checker);
    let mut tuples: Vec<Vec<u64>> = vec![Vec::new()];
    for &floor in checker.index_floor() {
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                (floor..=bound).map(move |x| {
                    let mut next = t.clone();
                    next.push(x);
                    next
                })
            })
            .collect();
    }
    tuples
        .into_iter()
        .flat_map(|t| {
            checker
                .variants()
                .iter()
                .map(move |&v| Probe::new(checker, t.clone(), v))
        })
        .collect()
}

fn blocks(cfg: &SweepConfig, probe_counts: &BTreeMap<Checker, u64>) -> Vec<Block> {
    let mut out = Vec::new();
    let mut cell = 0;
    let triples: Vec<_> = (cfg.a.0..=cfg.a.1)
        .flat_map(|a| {
            (cfg.b.0..=cfg.b.1).flat_map(move |b| (cfg.c.0..=cfg.c.1).map(move |c| (a, b, c)))
        })
        .collect();
    for &checker in &cfg.enabled {
        let n = probe_counts[&checker];
        let mut push = |params, init| {
            out.push(Block {
                checker,
                params,
                init,
                first_cell: cell,
            });
            cell += n;
        };
        match checker.scope() {
            Scope::Indices => push(None, None),
            Scope::Params => triples.iter().for_each(|&t| push(Some(t), None)),
            Scope::Sequence => {
                for &t in &triples {
                    for i in 0..cfg.inits.len() {
                        push(Some(t), Some(i));
                    }
                }
            }
        }
    }
    out
}

fn outcome_name(v: Verdict, control: bool) -> &'static str {
    match v {
        Verdict::Equal => "equal",
        Verdict::Unequal if control => "expected-fail",
        Verdict::Unequal => "unequal",
        Verdict::Holds => "holds",
        Verdict::Fails => "fails",
        Verdict::Inapplicable => "inapplicable",
    }
}

fn run_block(cfg: &SweepConfig, block: &Block, probes: &[Probe], want_rows: bool) -> BlockResult {
    let mut res = BlockResult::default();
    let init_name = block.init.map(|i| cfg.inits[i].to_string());
    let spec: Result<Option<SeqSpec>, String> = match block.params {
        None => Ok(None),
        Some((a, b, c)) => Params::new(a, b, c)
            .and_then(|p| match block.init {
                Some(i) => cfg.inits[i].spec(p),
                None => Ok(SeqSpec::u(p)),
            })
            .map(Some)
            .map_err(|e| e.to_string()),
    };
    let mut verifier = spec.as_ref().ok().cloned().flatten().map(Verifier::new);
    for (k, probe) in probes.iter().enumerate() {
        let cell = block.first_cell + k as u64;
        let label = probe.label();
        let control = probe.variant.is_control();
        let outcome = match &spec {
            Err(e) => Err(e.clone()),
            Ok(_) => Ok(probe.run(verifier.as_mut())),
        };
        let mut row = want_rows.then(|| Row {
            cell,
            checker: label,
            a: block.params.map(|p| p.0),
            b: block.params.map(|p| p.1),
            c: block.params.map(|p| p.2),
            init: init_name.clone(),
            index: Index::of(probe.checker, &probe.index).to_string(),
            outcome: "skipped",
            lhs: None,
            rhs: None,
            modulus: None,
            detail: None,
        });
        let witness = |report: Option<CheckReport>, error: Option<String>| Witness {
            cell,
            replay: probe.replay_command(verifier.as_ref().map(|v| v.spec())),
            report,
            error,
        };
        match outcome {
            Err(e) => {
                res.tally(label).skipped += 1;
                if let Some(row) = row.as_mut() {
                    row.detail = Some(e);
                }
            }
            Ok(Err(e)) if is_precondition(&e) => {
                res.tally(label).skipped += 1;
                if let Some(row) = row.as_mut() {
                    row.detail = Some(e.to_string());
                }
            }
            Ok(Err(e)) => {
                let t = res.tally(label);
                t.checked += 1;
                t.fails += 1;
                res.failures.push(witness(None, Some(e.to_string())));
                if let Some(row) = row.as_mut() {
                    row.outcome = "error";
                    row.detail = Some(e.to_string());
                }
            }
            Ok(Ok(report)) => {
                let verdict = report.verdict();
                let t = res.tally(label);
                t.checked += 1;
                match verdict {
                    Verdict::Equal => t.equal += 1,
                    Verdict::Holds => t.holds += 1,
                    Verdict::Inapplicable => t.inapplicable += 1,
                    Verdict::Unequal if control => t.expected_fails += 1,
                    Verdict::Unequal | Verdict::Fails => t.fails += 1,
                }
                if let Some(row) = row.as_mut() {
                    row.outcome = outcome_name(verdict, control);
                    match &report.result {
                        CheckResult::Identity { lhs, rhs, .. } => {
                            row.lhs = Some(lhs.clone());
                            row.rhs = Some(rhs.clone());
                        }
                        CheckResult::Exponent { lhs, rhs, .. } => {
                            row.lhs = Some(lhs.to_string());
                            row.rhs = Some(rhs.to_string());
                        }
                        CheckResult::Congruence {
                            residual,
                            modulus,
                            status,
                        } => {
                            row.lhs = Some(residual.clone());
                            row.modulus = Some(modulus.clone());
                            row.detail = Some(status.to_string());
                        }
                    }
                }
                if !verdict.passed() {
                    if control {
                        if res.expected.len() < cfg.expected_witnesses {
                            res.expected.push(witness(Some(report), None));
                        }
                    } else {
                        res.failures.push(witness(Some(report), None));
                    }
                }
            }
        }
        if let Some(row) = row {
            res.rows.push(row);
        }
    }
    res
}

/// Runs the sweep. When `rows` is given, every cell is also written to it
/// as a CSV record, in grid order.
pub fn run<W: Write>(
    cfg: &SweepConfig,
    threads: Option<usize>,
    mut rows: Option<&mut csv::Writer<W>>,
) -> Result<SweepReport, Box<dyn std::error::Error + Send + Sync>> {
    let start = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.unwrap_or(0))
        .build()?;
    let probe_sets: BTreeMap<Checker, Vec<Probe>> =
        cfg.enabled.iter().map(|&c| (c, probes(cfg, c))).collect();
    let want_rows = rows.is_some();
    let counts = probe_sets
        .iter()
        .map(|(&c, p)| (c, p.len() as u64))
        .collect();
    let blocks = blocks(cfg, &counts);
    let cells = blocks
        .last()
        .map_or(0, |b| b.first_cell + counts[&b.checker]);

    let mut labels: Vec<&'static str> = Vec::new();
    for &c in CATALOG.iter().filter(|c| cfg.enabled.contains(c)) {
        labels.push(c.name());
        if c == Checker::Zhang47 {
            labels.push("zhang47-uncorrected");
        }
    }
    let mut tallies: Vec<Tally> = labels.iter().map(|&l| Tally::named(l)).collect();
    let mut failures = Vec::new();
    let mut expected = Vec::new();

    let chunk = (pool.current_num_threads() * 8).max(16);
    for group in blocks.chunks(chunk) {
        let results: Vec<BlockResult> = pool.install(|| {
            group
                .par_iter()
                .map(|b| run_block(cfg, b, &probe_sets[&b.checker], want_rows))
                .collect()
        });
        for r in results {
            for t in &r.tallies {
                let i = labels
                    .iter()
                    .position(|&l| l == t.checker)
                    .expect("known label");
                tallies[i].absorb(t);
            }
            failures.extend(r.failures);
            let room = cfg.expected_witnesses.saturating_sub(expected.len());
            expected.extend(r.expected.into_iter().take(room));
            if let Some(w) = rows.as_deref_mut() {
                for row in &r.rows {
                    w.serialize(row)?;
                }
            }
        }
    }
    if let Some(w) = rows {
        w.flush()?;
    }

    let mut totals = Tally::named("total");
    tallies.iter().for_each(|t| totals.absorb(t));
    Ok(SweepReport {
        tool: "horadam",
        version: env!("CARGO_PKG_VERSION"),
        grid: Grid {
            a: [cfg.a.0, cfg.a.1],
            b: [cfg.b.0, cfg.b.1],
            c: [cfg.c.0, cfg.c.1],
            inits: cfg.inits.iter().map(|i| i.to_string()).collect(),
            bounds: cfg
                .enabled
                .iter()
                .map(|&c| (c.name(), cfg.bound(c)))
                .collect(),
        },
        cells,
        totals,
        checkers: tallies,
        failures,
        expected_failures: expected,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}
