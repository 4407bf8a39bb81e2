//! Hypothesis and conclusion checkers for the theorem and lemma suite, and
//! corpus-wide campaigns over them.

mod campaign;
mod checks;
mod strategy;
pub mod suites;

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{GroupError, Result};
use crate::properties::PropertyReport;

pub use campaign::{
    reverify, run_campaign, run_campaign_on, CampaignOptions, CampaignReport, Reproduction, Tally,
    Timing,
};
pub use checks::{evaluate, evaluate_on};
pub use strategy::{instances_for, p_subgroup_pool, pool_for_h};

macro_rules! theorem_ids {
    ($($variant:ident => $name:literal),* $(,)?) => {
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
        pub enum TheoremId {
            $(#[serde(rename = $name)] $variant,)*
        }

        impl TheoremId {
            pub const ALL: &'static [TheoremId] = &[$(TheoremId::$variant,)*];

            pub fn name(self) -> &'static str {
                match self {
                    $(TheoremId::$variant => $name,)*
                }
            }
        }
    };
}

theorem_ids! {
    ThmA => "thm_A",
    ThmBOrderD => "thm_B_order_d",
    ThmCMinimal => "thm_C_minimal",
    ThmDMaximal => "thm_D_maximal",
    Thm31Min => "thm_3_1_min",
    Thm32Max => "thm_3_2_max",
    CorStar => "cor_star",
    CorFQuotient => "cor_F_quotient",
    LemOver => "lem_over",
    LemOveI => "lem_ove_i",
    LemOveII => "lem_ove_ii",
    LemSatisfies => "lem_satisfies",
    LemOneOf => "lem_one_of",
    LemNecessity => "lem_necessity",
    LemPhi => "lem_phi",
    LemSylow => "lem_sylow",
    LemJgU => "lem_jg_U",
    LemSuU => "lem_su_U",
    LemEquivalent => "lem_equivalent",
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TheoremId {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .iter()
            .copied()
            .find(|t| t.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| GroupError::InvalidParameter(format!("unknown theorem `{s}`")))
    }
}

/// Parameters of one instance. Subgroups are stored as generator lists in
/// cycle notation, keyed by the symbol they play (`N`, `X`, `P`, `H`, ...).
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Params {
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub subgroups: BTreeMap<String, Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub part: Option<u8>,
}

impl Params {
    pub fn with(mut self, key: &str, gens: Vec<String>) -> Self {
        self.subgroups.insert(key.to_string(), gens);
        self
    }

    pub fn prime(mut self, p: u64) -> Self {
        self.p = Some(p);
        self
    }

    pub fn order(mut self, d: u64) -> Self {
        self.d = Some(d);
        self
    }
}

/// One theorem applied to one group with concrete parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremInstance {
    pub theorem: TheoremId,
    /// Name of the group within the corpus or group file.
    pub group: String,
    pub params: Params,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HypothesisStatus {
    Satisfied,
    NotSatisfied,
    NotApplicable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConclusionStatus {
    True,
    False,
    NotEvaluated,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "confirmed")]
    Confirmed,
    #[serde(rename = "vacuous")]
    Vacuous,
    #[serde(rename = "COUNTEREXAMPLE")]
    Counterexample,
}

/// A subgroup that decided the outcome, with the property check behind it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Detail {
    pub role: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub generators: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<PropertyReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub instance: TheoremInstance,
    pub hypothesis: HypothesisStatus,
    pub conclusion: ConclusionStatus,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub details: Vec<Detail>,
}

impl TheoremReport {
    pub(crate) fn from_outcome(instance: TheoremInstance, outcome: Outcome) -> Self {
        let (conclusion, verdict) = match (outcome.hypothesis, outcome.conclusion) {
            (HypothesisStatus::Satisfied, Some(true)) => {
                (ConclusionStatus::True, Verdict::Confirmed)
            }
            (HypothesisStatus::Satisfied, Some(false)) => {
                (ConclusionStatus::False, Verdict::Counterexample)
            }
            (_, Some(c)) => (
                if c {
                    ConclusionStatus::True
                } else {
                    ConclusionStatus::False
                },
                Verdict::Vacuous,
            ),
            (_, None) => (ConclusionStatus::NotEvaluated, Verdict::Vacuous),
        };
        TheoremReport {
            instance,
            hypothesis: outcome.hypothesis,
            conclusion,
            verdict,
            reason: outcome.reason,
            details: outcome.details,
        }
    }

    pub fn is_skipped(&self) -> bool {
        self.reason
            .as_deref()
            .is_some_and(|r| r.starts_with("skipped"))
    }
}

/// Result of evaluating an instance before it is packaged as a report.
#[derive(Debug, Clone)]
pub(crate) struct Outcome {
    pub hypothesis: HypothesisStatus,
    pub conclusion: Option<bool>,
    pub reason: Option<String>,
    pub details: Vec<Detail>,
}

impl Outcome {
    pub fn not_applicable(reason: impl Into<String>) -> Self {
        Outcome {
            hypothesis: HypothesisStatus::NotApplicable,
            conclusion: None,
            reason: Some(reason.into()),
            details: vec![],
        }
    }

    pub fn not_satisfied(details: Vec<Detail>) -> Self {
        Outcome {
            hypothesis: HypothesisStatus::NotSatisfied,
            conclusion: None,
            reason: None,
            details,
        }
    }

    pub fn decided(conclusion: bool, details: Vec<Detail>) -> Self {
        Outcome {
            hypothesis: HypothesisStatus::Satisfied,
            conclusion: Some(conclusion),
            reason: None,
            details,
        }
    }
}
