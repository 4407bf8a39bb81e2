use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{limits, Limits};
use crate::constructions::{corpus, CorpusFilter, GroupSpec};
use crate::error::{GroupError, Result};
use crate::group::Group;

use super::checks::{evaluate, evaluate_on};
use super::strategy::{instances_with, StrategyOptions};
use super::{
    HypothesisStatus, Outcome, Params, TheoremId, TheoremInstance, TheoremReport, Verdict,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CampaignOptions {
    /// Worker threads; `None` uses the global pool.
    #[serde(skip)]
    pub jobs: Option<usize>,
    /// Seed for the sampled `lem_equivalent` triples.
    pub seed: u64,
    /// Triples sampled per group for `lem_equivalent`.
    pub equivalent_samples: usize,
}

impl Default for CampaignOptions {
    fn default() -> Self {
        CampaignOptions {
            jobs: None,
            seed: 0x1c_91,
            equivalent_samples: 24,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub confirmed: usize,
    pub vacuous: usize,
    pub counterexamples: usize,
    pub skipped: usize,
}

impl Tally {
    fn add(&mut self, r: &TheoremReport) {
        if r.is_skipped() {
            self.skipped += 1;
            return;
        }
        match r.verdict {
            Verdict::Confirmed => self.confirmed += 1,
            Verdict::Vacuous => self.vacuous += 1,
            Verdict::Counterexample => self.counterexamples += 1,
        }
    }

    pub fn total(&self) -> usize {
        self.confirmed + self.vacuous + self.counterexamples + self.skipped
    }
}

/// A counterexample together with everything needed to re-run it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reproduction {
    pub spec: GroupSpec,
    pub report: TheoremReport,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub total_seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignReport {
    pub engine_version: String,
    pub filter: CorpusFilter,
    pub checks: Vec<TheoremId>,
    pub limits: Limits,
    pub options: CampaignOptions,
    pub groups: Vec<String>,
    pub tallies: Tally,
    pub per_theorem: BTreeMap<TheoremId, Tally>,
    pub counterexamples: Vec<Reproduction>,
    pub reports: Vec<TheoremReport>,
    pub timing: Timing,
}

impl CampaignReport {
    pub fn is_clean(&self) -> bool {
        self.tallies.counterexamples == 0
    }

    /// A copy with timing zeroed, for comparing runs.
    pub fn without_timing(&self) -> CampaignReport {
        CampaignReport {
            timing: Timing::default(),
            ..self.clone()
        }
    }
}

fn skipped(t: TheoremId, name: &str, err: &GroupError) -> TheoremReport {
    TheoremReport::from_outcome(
        TheoremInstance {
            theorem: t,
            group: name.to_string(),
            params: Params::default(),
        },
        Outcome {
            hypothesis: HypothesisStatus::NotApplicable,
            conclusion: None,
            reason: Some(format!("skipped: {err}")),
            details: vec![],
        },
    )
}

fn run_group(
    spec: &GroupSpec,
    g: &Group,
    checks: &[TheoremId],
    opts: &CampaignOptions,
) -> Vec<TheoremReport> {
    let sopts = StrategyOptions {
        seed: opts.seed,
        equivalent_samples: opts.equivalent_samples,
    };
    let mut out = Vec::new();
    for &t in checks {
        let instances = match instances_with(g, &spec.name, t, sopts) {
            Ok(v) => v,
            Err(e) => {
                out.push(skipped(t, &spec.name, &e));
                continue;
            }
        };
        for inst in instances {
            match evaluate_on(g, &inst) {
                Ok(r) => out.push(r),
                Err(e) => {
                    let mut r = skipped(t, &spec.name, &e);
                    r.instance = inst;
                    out.push(r);
                }
            }
        }
    }
    out
}

/// Runs `checks` over the built-in corpus selected by `filter`.
pub fn run_campaign(
    filter: &CorpusFilter,
    checks: &[TheoremId],
    opts: &CampaignOptions,
) -> Result<CampaignReport> {
    let groups = corpus(filter)?;
    run_campaign_on(filter, groups, checks, opts)
}

/// Runs `checks` over explicitly supplied groups, in the given order.
pub fn run_campaign_on(
    filter: &CorpusFilter,
    groups: Vec<(GroupSpec, Group)>,
    checks: &[TheoremId],
    opts: &CampaignOptions,
) -> Result<CampaignReport> {
    if groups.is_empty() {
        return Err(GroupError::InvalidParameter("empty corpus".into()));
    }
    let mut ordered: Vec<TheoremId> = Vec::new();
    for &t in checks {
        if !ordered.contains(&t) {
            ordered.push(t);
        }
    }
    let started = Instant::now();
    let work = || -> Vec<Vec<TheoremReport>> {
        groups
            .par_iter()
            .map(|(spec, g)| run_group(spec, g, &ordered, opts))
            .collect()
    };
    let per_group = match opts.jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map_err(|e| GroupError::InvalidParameter(format!("thread pool: {e}")))?
            .install(work),
        None => work(),
    };

    let mut tallies = Tally::default();
    let mut per_theorem: BTreeMap<TheoremId, Tally> =
        ordered.iter().map(|&t| (t, Tally::default())).collect();
    let mut counterexamples = Vec::new();
    let mut reports = Vec::new();
    for ((spec, _), rs) in groups.iter().zip(per_group) {
        for r in rs {
            tallies.add(&r);
            per_theorem.entry(r.instance.theorem).or_default().add(&r);
            if r.verdict == Verdict::Counterexample {
                counterexamples.push(Reproduction {
                    spec: spec.clone(),
                    report: r.clone(),
                });
            }
            reports.push(r);
        }
    }
    Ok(CampaignReport {
        engine_version: crate::ENGINE_VERSION.to_string(),
        filter: filter.clone(),
        checks: ordered,
        limits: limits(),
        options: CampaignOptions {
            jobs: None,
            ..*opts
        },
        groups: groups.iter().map(|(s, _)| s.name.clone()).collect(),
        tallies,
        per_theorem,
        counterexamples,
        reports,
        timing: Timing {
            total_seconds: started.elapsed().as_secs_f64(),
        },
    })
}

/// Re-evaluates a recorded report from its group specification alone and
/// tells whether the outcome reproduces.
pub fn reverify(spec: &GroupSpec, report: &TheoremReport) -> Result<bool> {
    let again = evaluate(spec, &report.instance)?;
    Ok(again.hypothesis == report.hypothesis
        && again.conclusion == report.conclusion
        && again.verdict == report.verdict)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_corpus_is_an_error() {
        let filter = CorpusFilter {
            max_order: Some(0),
            ..Default::default()
        };
        let err =
            run_campaign(&filter, &[TheoremId::ThmA], &CampaignOptions::default()).unwrap_err();
        assert!(err.to_string().contains("empty corpus"));
    }

    #[test]
    fn small_campaign_is_clean_and_reproducible() {
        let filter = CorpusFilter::max_order(12);
        let checks = [TheoremId::ThmCMinimal, TheoremId::LemNecessity];
        let a = run_campaign(&filter, &checks, &CampaignOptions::default()).unwrap();
        assert!(a.is_clean(), "{:?}", a.counterexamples);
        assert!(a.per_theorem[&TheoremId::ThmCMinimal].confirmed > 0);
        let b = run_campaign(
            &filter,
            &checks,
            &CampaignOptions {
                jobs: Some(1),
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(a.without_timing(), b.without_timing());
        let spec = GroupSpec::builtin("Sym(3)").unwrap();
        let r = a
            .reports
            .iter()
            .find(|r| r.instance.group == "Sym(3)")
            .unwrap();
        assert!(reverify(&spec, r).unwrap());
    }
}
