//! The built-in verification corpus and group specifications.

use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

use crate::error::{GroupError, Result};
use crate::group::Group;

use super::named::{generators_for_name, Family};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpecSource {
    Builtin,
    File,
}

/// A named group given by generators in cycle notation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSpec {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<String>,
    pub source: SpecSource,
}

impl GroupSpec {
    pub fn build(&self) -> Result<Group> {
        Group::from_cycle_texts(self.degree, &self.generators)
    }

    /// Spec for a built-in name such as `Dih(8)` or `Sym(3)xCyc(2)`.
    pub fn builtin(name: &str) -> Result<GroupSpec> {
        let (degree, gens) = generators_for_name(name)?;
        Ok(GroupSpec {
            name: name.trim().to_string(),
            degree,
            generators: gens.iter().map(|g| g.to_string()).collect(),
            source: SpecSource::Builtin,
        })
    }

    /// The family of the name's first factor, or `Product` for products.
    pub fn family(&self) -> Option<Family> {
        family_of_name(&self.name)
    }
}

fn family_of_name(name: &str) -> Option<Family> {
    if name.contains(")x") || name.starts_with("Q8x") || name.starts_with("V4x") {
        return Some(Family::Product);
    }
    let prefix = name.split('(').next()?;
    Some(match prefix {
        "Cyc" => Family::Cyclic,
        "Dih" => Family::Dihedral,
        "Sym" => Family::Symmetric,
        "Alt" => Family::Alternating,
        "Q8" => Family::Quaternion,
        "EA" => Family::ElementaryAbelian,
        "V4" => Family::KleinFour,
        "SL" => Family::SpecialLinear23,
        _ => return None,
    })
}

/// Selects corpus members.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusFilter {
    pub max_order: Option<u64>,
    /// Empty means every family.
    pub families: Vec<Family>,
    /// Names admitted regardless of `max_order`.
    pub extra: Vec<String>,
}

impl CorpusFilter {
    pub fn max_order(n: u64) -> Self {
        CorpusFilter {
            max_order: Some(n),
            ..Default::default()
        }
    }

    /// Order at most 100, together with `Alt(5)`, `Sym(5)` and `Alt(5)xCyc(5)`.
    pub fn default_campaign() -> Self {
        CorpusFilter {
            max_order: Some(100),
            families: Vec::new(),
            extra: vec!["Alt(5)".into(), "Sym(5)".into(), "Alt(5)xCyc(5)".into()],
        }
    }

    fn admits(&self, name: &str, order: u64) -> bool {
        if self.extra.iter().any(|e| e == name) {
            return true;
        }
        if let Some(m) = self.max_order {
            if order > m {
                return false;
            }
        }
        self.families.is_empty() || family_of_name(name).is_some_and(|f| self.families.contains(&f))
    }
}

/// Every built-in corpus name.
pub fn corpus_names() -> Vec<String> {
    let mut names: Vec<String> = Vec::new();
    names.extend((1..=100).map(|n| format!("Cyc({n})")));
    names.extend((3..=50).map(|n| format!("Dih({})", 2 * n)));
    names.extend((1..=5).map(|n| format!("Sym({n})")));
    names.extend((3..=5).map(|n| format!("Alt({n})")));
    names.extend(["Q8", "V4", "SL(2,3)"].map(String::from));
    for (p, k) in [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2), (7, 2)] {
        names.push(format!("EA({p}^{k})"));
    }
    for prod in [
        "Sym(3)xCyc(2)",
        "Sym(3)xCyc(3)",
        "Sym(3)xSym(3)",
        "Dih(8)xCyc(2)",
        "Dih(8)xCyc(3)",
        "Q8xCyc(2)",
        "Q8xCyc(3)",
        "Alt(4)xCyc(2)",
        "Alt(4)xCyc(3)",
        "Sym(4)xCyc(2)",
        "SL(2,3)xCyc(2)",
        "Cyc(4)xCyc(2)",
        "Cyc(4)xCyc(4)",
        "Alt(5)xCyc(5)",
    ] {
        names.push(prod.to_string());
    }
    names
}

/// Built-in groups admitted by `filter`, sorted by `(order, name)`.
pub fn corpus(filter: &CorpusFilter) -> Result<Vec<(GroupSpec, Group)>> {
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for name in corpus_names() {
        if !seen.insert(name.clone()) {
            return Err(GroupError::DuplicateName(name));
        }
        let spec = GroupSpec::builtin(&name)?;
        let order = corpus_order(&name);
        if !filter.admits(&name, order) {
            continue;
        }
        let g = spec.build()?;
        debug_assert_eq!(g.order(), order);
        out.push((spec, g));
    }
    out.sort_by(|a, b| (a.1.order(), &a.0.name).cmp(&(b.1.order(), &b.0.name)));
    Ok(out)
}

/// Order of a built-in name from the family formulas, without building it.
fn corpus_order(name: &str) -> u64 {
    let factorial = |n: u64| (1..=n).product::<u64>();
    let arg = |s: &str| -> u64 {
        s.split('(')
            .nth(1)
            .and_then(|r| r.trim_end_matches(')').parse().ok())
            .unwrap_or(0)
    };
    if name.contains('x') {
        return split_top(name).iter().map(|f| corpus_order(f)).product();
    }
    match name {
        "Q8" => 8,
        "V4" => 4,
        "SL(2,3)" => 24,
        _ if name.starts_with("Cyc") || name.starts_with("Dih") => arg(name),
        _ if name.starts_with("Sym") => factorial(arg(name)),
        _ if name.starts_with("Alt") => (factorial(arg(name)) / 2).max(1),
        _ if name.starts_with("EA") => {
            let inner = name.trim_start_matches("EA(").trim_end_matches(')');
            let (p, k) = inner.split_once('^').unwrap();
            p.parse::<u64>().unwrap().pow(k.parse().unwrap())
        }
        _ => 0,
    }
}

fn split_top(name: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0, 0);
    for (i, c) in name.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            'x' if depth == 0 => {
                out.push(&name[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&name[start..]);
    out
}

/// Looks a name up among the built-in families; names outside the corpus
/// list (such as `Sym(6)`) are accepted when they parse.
pub fn spec_by_name(name: &str) -> Result<GroupSpec> {
    GroupSpec::builtin(name)
}
