//! The verification suites behind `verify`, one per acceptance criterion.

mod butterflies;
mod classes;
mod h2;
mod inverse;
mod opfibration;
mod oracle;
mod phi;

use std::fmt::Display;
use std::thread;

use serde::Serialize;

use bfly_core::catalog::{standard_catalog, Catalog};

#[derive(Clone, Copy, Debug, Default)]
pub struct Options {
    pub seed: u64,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), passed, detail: detail.into() }
    }

    pub fn error(name: impl Into<String>, e: impl Display) -> Self {
        Check::new(name, false, format!("error: {e}"))
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: String,
    pub criterion: usize,
    pub passed: bool,
    pub checks: Vec<Check>,
}

type SuiteFn = fn(&Catalog, &Options) -> Vec<Check>;

pub struct Suite {
    pub name: &'static str,
    pub criterion: usize,
    pub summary: &'static str,
    run: SuiteFn,
}

pub const SUITES: &[Suite] = &[
    Suite { name: "oracle", criterion: 1, summary: "cohomology ground truth and brute-force agreement", run: oracle::run },
    Suite { name: "h2-components", criterion: 2, summary: "components of the extension 2-group are H2", run: h2::components },
    Suite { name: "h2-automorphisms", criterion: 3, summary: "automorphisms of the split extension are Z1", run: h2::automorphisms },
    Suite { name: "butterfly-category", criterion: 4, summary: "identity, associativity and beta functoriality", run: butterflies::run },
    Suite { name: "inverse", criterion: 5, summary: "the flippable witness inverts every crossed extension", run: inverse::run },
    Suite { name: "phi", criterion: 6, summary: "the embedding of extensions into butterflies", run: phi::run },
    Suite { name: "pushforward-square", criterion: 7, summary: "the square inside each composite is a pushforward", run: phi::squares },
    Suite { name: "opfibration", criterion: 8, summary: "pushforward lifts and their products are cocartesian", run: opfibration::run },
    Suite { name: "characteristic-class", criterion: 9, summary: "coherence of the third cohomology class", run: classes::run },
];

pub fn suite(name: &str) -> Option<&'static Suite> {
    SUITES.iter().find(|s| s.name == name)
}

impl Suite {
    pub fn run(&self, catalog: &Catalog, opts: &Options) -> SuiteReport {
        let mut checks = (self.run)(catalog, opts);
        checks.sort_by(|a, b| a.name.cmp(&b.name));
        let passed = !checks.is_empty() && checks.iter().all(|c| c.passed);
        SuiteReport { suite: self.name.to_string(), criterion: self.criterion, passed, checks }
    }
}

/// Runs the named suites concurrently and returns their reports in the
/// order given.
pub fn run_suites(names: &[&str], opts: &Options) -> Result<Vec<SuiteReport>, String> {
    let suites = names.iter().map(|n| suite(n).ok_or_else(|| format!("unknown suite `{n}`"))).collect::<Result<Vec<_>, _>>()?;
    let catalog = standard_catalog().map_err(|e| e.to_string())?;
    let catalog = &catalog;
    Ok(thread::scope(|scope| {
        let handles: Vec<_> = suites.iter().map(|s| scope.spawn(move || s.run(catalog, opts))).collect();
        handles
            .into_iter()
            .zip(&suites)
            .map(|(h, s)| {
                h.join().unwrap_or_else(|_| SuiteReport {
                    suite: s.name.to_string(),
                    criterion: s.criterion,
                    passed: false,
                    checks: vec![Check::new(format!("{}:completed", s.name), false, "suite panicked")],
                })
            })
            .collect()
    }))
}

pub fn run_all(opts: &Options) -> Result<Vec<SuiteReport>, String> {
    run_suites(&SUITES.iter().map(|s| s.name).collect::<Vec<_>>(), opts)
}

/// Deterministic sample of `k` indices out of `0..n`, sorted.
pub(crate) fn sample(n: usize, k: usize, seed: u64) -> Vec<usize> {
    use rand::seq::index;
    use rand::SeedableRng;
    if k >= n {
        return (0..n).collect();
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut picked = index::sample(&mut rng, n, k).into_vec();
    picked.sort_unstable();
    picked
}

/// Collects `ok / total` style tallies into one check.
pub(crate) struct Tally {
    name: String,
    total: usize,
    failures: Vec<String>,
}

impl Tally {
    pub fn new(name: impl Into<String>) -> Self {
        Tally { name: name.into(), total: 0, failures: Vec::new() }
    }

    pub fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.total += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    pub fn fail(&mut self, what: String) {
        self.total += 1;
        self.failures.push(what);
    }

    pub fn total(&self) -> usize {
        self.total
    }

    pub fn finish(self, unit: &str) -> Check {
        let ok = self.total - self.failures.len();
        let mut detail = format!("{ok}/{} {unit}", self.total);
        if let Some(first) = self.failures.first() {
            detail.push_str(&format!("; first failure: {first}"));
        }
        Check::new(self.name, self.total > 0 && self.failures.is_empty(), detail)
    }
}
