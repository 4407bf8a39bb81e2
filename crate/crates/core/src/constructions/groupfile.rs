//! Group files: a JSON array of `{"name", "degree", "generators"}` objects.

use serde::Deserialize;
use std::collections::HashSet;
use std::path::Path;

use crate::error::{GroupError, Result};
use crate::perm::parse_cycles;

use super::corpus::{GroupSpec, SpecSource};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Entry {
    name: String,
    degree: usize,
    generators: Vec<String>,
}

/// Reads and validates a group file without building any group.
pub fn load_group_file(path: impl AsRef<Path>) -> Result<Vec<GroupSpec>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| GroupError::File(format!("{}: {e}", path.display())))?;
    parse_group_file(&text).map_err(|e| match e {
        GroupError::File(msg) => GroupError::File(format!("{}: {msg}", path.display())),
        other => other,
    })
}

pub fn parse_group_file(text: &str) -> Result<Vec<GroupSpec>> {
    let entries: Vec<Entry> =
        serde_json::from_str(text).map_err(|e| GroupError::File(e.to_string()))?;
    let mut seen = HashSet::new();
    let mut specs = Vec::with_capacity(entries.len());
    for (i, e) in entries.into_iter().enumerate() {
        if e.name.trim().is_empty() {
            return Err(GroupError::File(format!(
                "entry {i}: field `name` is empty"
            )));
        }
        if e.degree == 0 {
            return Err(GroupError::File(format!(
                "entry {i} (`{}`): field `degree` must be positive",
                e.name
            )));
        }
        if !seen.insert(e.name.clone()) {
            return Err(GroupError::DuplicateName(e.name));
        }
        for (j, g) in e.generators.iter().enumerate() {
            if let Err(err) = parse_cycles(g, e.degree) {
                return Err(GroupError::File(format!(
                    "entry {i} (`{}`): field `generators[{j}]`: {err}",
                    e.name
                )));
            }
        }
        specs.push(GroupSpec {
            name: e.name,
            degree: e.degree,
            generators: e.generators,
            source: SpecSource::File,
        });
    }
    Ok(specs)
}
