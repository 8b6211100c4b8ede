//! Runs every lemma check over a catalog and aggregates the results.

use std::time::{Instant, SystemTime, UNIX_EPOCH};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::almost_cyclic::{Analysis, Counterexample, LemmaCheckResult, LemmaId};
use crate::catalog::{build_catalog, CatalogEntry, Construction};
use crate::enumerate::exhaustive_entries;
use crate::error::HarnessError;
use crate::group::{GroupFile, DEFAULT_ORDER_CAP};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub max_order: usize,
    pub exhaustive_order: usize,
    /// Worker threads; 0 lets the pool decide. Not part of the report's
    /// configuration echo, since it must not change the results.
    #[serde(skip)]
    pub jobs: usize,
    pub subgroup_cap: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            max_order: 24,
            exhaustive_order: 6,
            jobs: 0,
            subgroup_cap: DEFAULT_ORDER_CAP,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub pass: usize,
    pub fail: usize,
    pub vacuous: usize,
}

impl Tally {
    fn add(&mut self, r: &LemmaCheckResult) {
        match (r.passed, r.vacuous) {
            (false, _) => self.fail += 1,
            (true, true) => self.vacuous += 1,
            (true, false) => self.pass += 1,
        }
    }

    pub fn total(&self) -> usize {
        self.pass + self.fail + self.vacuous
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaTally {
    pub lemma: LemmaId,
    #[serde(flatten)]
    pub tally: Tally,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoundCounterexample {
    pub group: String,
    pub lemma: LemmaId,
    pub counterexample: Counterexample,
}

/// Facts about this particular run; everything else in the report depends
/// only on the configuration.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunInfo {
    pub jobs: usize,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
    pub wall_time_ms: u128,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub config: SweepConfig,
    pub groups: usize,
    /// Sorted by group name, then lemma.
    pub checks: Vec<LemmaCheckResult>,
    pub summary: Tally,
    pub per_lemma: Vec<LemmaTally>,
    pub counterexamples: Vec<FoundCounterexample>,
    pub run: RunInfo,
}

impl SweepReport {
    pub fn all_passed(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// The report without its `run` record: byte-identical for identical
    /// configurations.
    pub fn deterministic_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("report serializes");
        v.as_object_mut().expect("object").remove("run");
        serde_json::to_string_pretty(&v).expect("report serializes")
    }

    pub fn tally(&self, lemma: LemmaId) -> Tally {
        self.per_lemma
            .iter()
            .find(|t| t.lemma == lemma)
            .map_or_else(Tally::default, |t| t.tally)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{} groups (catalog order <= {}, exhaustive order <= {})\n",
            self.groups, self.config.max_order, self.config.exhaustive_order
        );
        for t in &self.per_lemma {
            out += &format!(
                "  {:<34} pass {:>4}  fail {:>3}  vacuous {:>4}\n",
                t.lemma.as_str(),
                t.tally.pass,
                t.tally.fail,
                t.tally.vacuous
            );
        }
        out += &format!(
            "total: pass {}, fail {}, vacuous {} in {} ms\n",
            self.summary.pass, self.summary.fail, self.summary.vacuous, self.run.wall_time_ms
        );
        for c in &self.counterexamples {
            out += &format!(
                "  counterexample in {} for {}: {:?}\n",
                c.group, c.lemma, c.counterexample
            );
        }
        out
    }
}

/// The sweep universe: `build_catalog(max_order)` followed by every group of
/// order at most `exhaustive_order`.
pub fn sweep_entries(config: &SweepConfig) -> Result<Vec<CatalogEntry>, HarnessError> {
    let mut entries = build_catalog(config.max_order)?;
    let exhaustive = exhaustive_entries(config.exhaustive_order).map_err(|source| {
        HarnessError::Construction {
            name: format!("exhaustive order {}", config.exhaustive_order),
            source,
        }
    })?;
    entries.extend(exhaustive);
    Ok(entries)
}

pub fn verify_all(config: &SweepConfig) -> Result<SweepReport, HarnessError> {
    verify_all_with(config, &[])
}

/// As [`verify_all`], with extra named groups from raw input. Every extra is
/// validated before any check runs; the first invalid one aborts the sweep.
pub fn verify_all_with(
    config: &SweepConfig,
    extra: &[(String, GroupFile)],
) -> Result<SweepReport, HarnessError> {
    let mut entries = sweep_entries(config)?;
    for (name, file) in extra {
        let group =
            file.build(config.subgroup_cap)
                .map_err(|source| HarnessError::Construction {
                    name: name.clone(),
                    source,
                })?;
        entries.push(CatalogEntry {
            name: name.clone(),
            group,
            construction: Construction::Input,
        });
    }
    verify_entries(&entries, config)
}

/// Runs all checks on the given entries in a pool of `config.jobs` workers.
pub fn verify_entries(
    entries: &[CatalogEntry],
    config: &SweepConfig,
) -> Result<SweepReport, HarnessError> {
    let start = Instant::now();
    let mut names: Vec<&str> = entries.iter().map(|e| e.name.as_str()).collect();
    names.sort_unstable();
    if let Some(w) = names.windows(2).find(|w| w[0] == w[1]) {
        return Err(HarnessError::DuplicateName(w[0].to_string()));
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .map_err(|e| HarnessError::Pool(e.to_string()))?;
    let cap = config.subgroup_cap;
    let per_group: Vec<Result<Vec<LemmaCheckResult>, HarnessError>> = pool.install(|| {
        entries
            .par_iter()
            .map(|e| {
                Analysis::new(&e.group, &e.name)
                    .run_all(cap)
                    .map_err(|source| HarnessError::Analysis {
                        name: e.name.clone(),
                        source,
                    })
            })
            .collect()
    });
    let mut checks = Vec::new();
    for r in per_group {
        checks.extend(r?);
    }
    checks.sort_by(|a, b| a.group.cmp(&b.group).then(a.lemma.cmp(&b.lemma)));

    let mut summary = Tally::default();
    let mut per_lemma: Vec<LemmaTally> = LemmaId::ALL
        .iter()
        .map(|&lemma| LemmaTally {
            lemma,
            tally: Tally::default(),
        })
        .collect();
    let mut counterexamples = Vec::new();
    for r in &checks {
        summary.add(r);
        if let Some(t) = per_lemma.iter_mut().find(|t| t.lemma == r.lemma) {
            t.tally.add(r);
        }
        if let Some(c) = &r.counterexample {
            counterexamples.push(FoundCounterexample {
                group: r.group.clone(),
                lemma: r.lemma,
                counterexample: c.clone(),
            });
        }
    }

    Ok(SweepReport {
        config: *config,
        groups: entries.len(),
        checks,
        summary,
        per_lemma,
        counterexamples,
        run: RunInfo {
            jobs: pool.current_num_threads(),
            timestamp: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map_or(0, |d| d.as_secs()),
            wall_time_ms: start.elapsed().as_millis(),
        },
    })
}
