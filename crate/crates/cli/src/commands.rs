use std::io::Write;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use icpi_core::arith::prime_divisors;
use icpi_core::characteristic::{
    f_p_star, f_star, fitting, hypercenter_pu, hypercenter_u, is_nilpotent, is_soluble,
    is_supersoluble,
};
use icpi_core::constructions::{corpus, load_group_file, CorpusFilter};
use icpi_core::lattice::{chief_factor_pairs, normal_subgroups};
use icpi_core::properties::check_property;
use icpi_core::theorems::{
    evaluate_on, run_campaign_on, CampaignOptions, CampaignReport, Params, TheoremInstance,
    TheoremReport, Verdict,
};
use icpi_core::{set_limits, Group, GroupSpec, Limits, PropertyKind, PropertyReport};

use crate::args::{split_generators, Cli, Command, Format, GroupArgs};
use crate::cache::{write_atomically, Cache, CacheKey};
use crate::labels::label;
use crate::render;
use crate::{CliError, EXIT_CLEAN, EXIT_COUNTEREXAMPLE};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupSummary {
    pub label: String,
    pub order: u64,
    pub generators: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeSubgroup {
    pub p: u64,
    pub subgroup: SubgroupSummary,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChiefPairSummary {
    pub lower: String,
    pub upper: String,
    pub lower_index: usize,
    pub upper_index: usize,
    pub factor_order: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InfoReport {
    pub engine_version: String,
    pub group: String,
    pub degree: usize,
    pub order: u64,
    pub primes: Vec<u64>,
    pub soluble: bool,
    pub supersoluble: bool,
    pub nilpotent: bool,
    /// Normal subgroups in lattice order; chief pairs index into this list.
    pub normal_subgroups: Vec<SubgroupSummary>,
    pub chief_pairs: Vec<ChiefPairSummary>,
    pub hypercenter_u: SubgroupSummary,
    pub hypercenter_pu: Vec<PrimeSubgroup>,
    pub fitting: SubgroupSummary,
    pub f_star: SubgroupSummary,
    pub f_p_star: Vec<PrimeSubgroup>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutput {
    pub engine_version: String,
    pub group: String,
    pub subgroup: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub x: Vec<String>,
    pub report: PropertyReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyOutput {
    pub engine_version: String,
    pub spec: GroupSpec,
    pub report: TheoremReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub name: String,
    pub order: u64,
    pub degree: usize,
}

fn summary(g: &Group) -> Result<SubgroupSummary, CliError> {
    Ok(SubgroupSummary {
        label: label(g)?,
        order: g.order(),
        generators: g.generator_texts(),
    })
}

fn resolve_group(args: &GroupArgs) -> Result<(GroupSpec, Group), CliError> {
    let spec = match (&args.group_file, &args.group) {
        (Some(path), name) => {
            let specs = load_group_file(path)?;
            match name {
                Some(n) => specs.into_iter().find(|s| s.name == *n).ok_or_else(|| {
                    CliError::Usage(format!("group `{n}` not found in {}", path.display()))
                })?,
                None if specs.len() == 1 => specs.into_iter().next().unwrap(),
                None => {
                    return Err(CliError::Usage(format!(
                        "{} has {} groups; choose one with --group",
                        path.display(),
                        specs.len()
                    )))
                }
            }
        }
        (None, Some(name)) => GroupSpec::builtin(name)?,
        (None, None) => {
            return Err(CliError::Usage(
                "--group or --group-file is required".into(),
            ))
        }
    };
    let g = spec.build()?;
    Ok((spec, g))
}

fn fingerprint_hex(g: &Group) -> Result<String, CliError> {
    Ok(format!("{:016x}", g.fingerprint()?))
}

fn emit<T: Serialize>(
    cli: &Cli,
    out: &mut dyn Write,
    value: &T,
    text: impl FnOnce() -> String,
) -> Result<(), CliError> {
    let body = match cli.format {
        Format::Structured => {
            let mut s =
                serde_json::to_string_pretty(value).map_err(|e| CliError::Usage(e.to_string()))?;
            s.push('\n');
            s
        }
        Format::Text => text(),
    };
    match &cli.output {
        Some(path) => write_atomically(path, body.as_bytes()),
        None => out
            .write_all(body.as_bytes())
            .map_err(|e| CliError::io(std::path::Path::new("<stdout>"), e)),
    }
}

fn apply_limits(cli: &Cli) {
    let mut l = Limits::default();
    if let Some(b) = cli.subgroup_bound {
        l.subgroup_bound = b;
    }
    if let Some(b) = cli.enumeration_bound {
        l.enumeration_bound = b;
    }
    set_limits(l);
}

pub(crate) fn execute(cli: &Cli, out: &mut dyn Write) -> Result<u8, CliError> {
    apply_limits(cli);
    let mut cache = Cache::new(cli.cache_dir.clone());
    let code = match &cli.command {
        Command::Info { group } => info(cli, out, &mut cache, group)?,
        Command::Check {
            group,
            property,
            subgroup,
            x,
        } => check(cli, out, &mut cache, group, *property, subgroup, x)?,
        Command::Verify {
            group,
            theorem,
            params,
            p,
            d,
            part,
        } => {
            let mut ps = Params {
                p: *p,
                d: *d,
                part: *part,
                ..Params::default()
            };
            for raw in params {
                let (key, gens) = raw.split_once('=').ok_or_else(|| {
                    CliError::Usage(format!("--param `{raw}` must look like KEY=gen;gen"))
                })?;
                ps.subgroups.insert(
                    key.trim().to_string(),
                    split_generators(&[gens.to_string()]),
                );
            }
            verify(cli, out, &mut cache, group, *theorem, ps)?
        }
        Command::Campaign {
            corpus_max_order,
            theorems,
            group_file,
            seed,
        } => {
            let filter = match corpus_max_order {
                Some(n) => CorpusFilter::max_order(*n),
                None if group_file.is_some() => CorpusFilter::default(),
                None => CorpusFilter::default_campaign(),
            };
            let mut opts = CampaignOptions {
                jobs: cli.jobs.map(|j| j as usize),
                ..CampaignOptions::default()
            };
            if let Some(s) = seed {
                opts.seed = *s;
            }
            campaign(
                cli,
                out,
                &mut cache,
                filter,
                group_file.as_deref(),
                &theorems.0,
                opts,
            )?
        }
        Command::CorpusList { corpus_max_order } => {
            let filter = match corpus_max_order {
                Some(n) => CorpusFilter::max_order(*n),
                None => CorpusFilter::default_campaign(),
            };
            let list: Vec<CorpusEntry> = corpus(&filter)?
                .into_iter()
                .map(|(s, g)| CorpusEntry {
                    name: s.name,
                    order: g.order(),
                    degree: g.degree(),
                })
                .collect();
            emit(cli, out, &list, || render::corpus(&list))?;
            EXIT_CLEAN
        }
    };
    if cli.cache_dir.is_some() {
        eprintln!(
            "engine evaluations: {}, cache hits: {}",
            cache.evaluations, cache.hits
        );
    } else {
        eprintln!("engine evaluations: {}", cache.evaluations);
    }
    Ok(code)
}

fn info(
    cli: &Cli,
    out: &mut dyn Write,
    cache: &mut Cache,
    args: &GroupArgs,
) -> Result<u8, CliError> {
    let (spec, g) = resolve_group(args)?;
    let key = CacheKey::new(fingerprint_hex(&g)?, "info", serde_json::json!({}));
    let report: InfoReport = cache.get_or_compute(key, || {
        let normals = normal_subgroups(&g)?;
        let normal_summaries = normals.iter().map(summary).collect::<Result<Vec<_>, _>>()?;
        let chief_pairs = chief_factor_pairs(&g)?
            .iter()
            .map(|c| ChiefPairSummary {
                lower: normal_summaries[c.lower_index].label.clone(),
                upper: normal_summaries[c.upper_index].label.clone(),
                lower_index: c.lower_index,
                upper_index: c.upper_index,
                factor_order: c.factor_order,
            })
            .collect();
        let primes = prime_divisors(g.order());
        let per_prime = |f: &dyn Fn(u64) -> icpi_core::Result<Group>| {
            primes
                .iter()
                .map(|&p| {
                    Ok(PrimeSubgroup {
                        p,
                        subgroup: summary(&f(p)?)?,
                    })
                })
                .collect::<Result<Vec<_>, CliError>>()
        };
        let report = InfoReport {
            engine_version: icpi_core::ENGINE_VERSION.to_string(),
            group: spec.name.clone(),
            degree: g.degree(),
            order: g.order(),
            primes: primes.clone(),
            soluble: is_soluble(&g)?,
            supersoluble: is_supersoluble(&g)?,
            nilpotent: is_nilpotent(&g)?,
            normal_subgroups: normal_summaries,
            chief_pairs,
            hypercenter_u: summary(&hypercenter_u(&g)?)?,
            hypercenter_pu: per_prime(&|p| hypercenter_pu(&g, p))?,
            fitting: summary(&fitting(&g)?)?,
            f_star: summary(&f_star(&g)?)?,
            f_p_star: per_prime(&|p| f_p_star(&g, p))?,
        };
        Ok((report, 1))
    })?;
    emit(cli, out, &report, || render::info(&report))?;
    Ok(EXIT_CLEAN)
}

#[allow(clippy::too_many_arguments)]
fn check(
    cli: &Cli,
    out: &mut dyn Write,
    cache: &mut Cache,
    args: &GroupArgs,
    kind: PropertyKind,
    subgroup: &[String],
    x: &[String],
) -> Result<u8, CliError> {
    let (spec, g) = resolve_group(args)?;
    let gens = split_generators(subgroup);
    let x_gens = split_generators(x);
    let h = g.subgroup_from_texts(&gens)?;
    let xg = if x_gens.is_empty() {
        None
    } else {
        Some(g.subgroup_from_texts(&x_gens)?)
    };
    if kind == PropertyKind::XPermutable && xg.is_none() {
        return Err(CliError::Usage(
            "x-permutable requires --x generators".into(),
        ));
    }
    let key = CacheKey::new(
        fingerprint_hex(&g)?,
        "check",
        serde_json::json!({ "property": kind, "subgroup": gens, "x": x_gens }),
    );
    let output: CheckOutput = cache.get_or_compute(key, || {
        let report = check_property(&g, &h, kind, xg.as_ref())?;
        Ok((
            CheckOutput {
                engine_version: icpi_core::ENGINE_VERSION.to_string(),
                group: spec.name.clone(),
                subgroup: gens.clone(),
                x: x_gens.clone(),
                report,
            },
            1,
        ))
    })?;
    emit(cli, out, &output, || render::check(&output))?;
    Ok(EXIT_CLEAN)
}

fn verify(
    cli: &Cli,
    out: &mut dyn Write,
    cache: &mut Cache,
    args: &GroupArgs,
    theorem: icpi_core::TheoremId,
    params: Params,
) -> Result<u8, CliError> {
    let (spec, g) = resolve_group(args)?;
    let instance = TheoremInstance {
        theorem,
        group: spec.name.clone(),
        params,
    };
    let key = CacheKey::new(
        fingerprint_hex(&g)?,
        "verify",
        serde_json::to_value(&instance).map_err(|e| CliError::Usage(e.to_string()))?,
    );
    let output: VerifyOutput = cache.get_or_compute(key, || {
        let report = evaluate_on(&g, &instance)?;
        Ok((
            VerifyOutput {
                engine_version: icpi_core::ENGINE_VERSION.to_string(),
                spec: spec.clone(),
                report,
            },
            1,
        ))
    })?;
    emit(cli, out, &output, || render::verify(&output))?;
    Ok(EXIT_CLEAN)
}

fn campaign(
    cli: &Cli,
    out: &mut dyn Write,
    cache: &mut Cache,
    filter: CorpusFilter,
    group_file: Option<&std::path::Path>,
    checks: &[icpi_core::TheoremId],
    opts: CampaignOptions,
) -> Result<u8, CliError> {
    let groups: Vec<(GroupSpec, Group)> = match group_file {
        Some(path) => {
            let mut v = Vec::new();
            for s in load_group_file(path)? {
                let g = s.build()?;
                if filter.max_order.is_none_or(|m| g.order() <= m) {
                    v.push((s, g));
                }
            }
            v
        }
        None => corpus(&filter)?,
    };
    let mut hasher = Sha256::new();
    for (s, g) in &groups {
        hasher.update(s.name.as_bytes());
        hasher.update(g.fingerprint()?.to_le_bytes());
    }
    let key = CacheKey::new(
        hex::encode(hasher.finalize()),
        "campaign",
        serde_json::json!({
            "filter": filter,
            "checks": checks,
            "options": CampaignOptions { jobs: None, ..opts },
        }),
    );
    let report: CampaignReport = cache.get_or_compute(key, || {
        let r = run_campaign_on(&filter, groups, checks, &opts)?;
        let n = r.reports.len();
        Ok((r, n))
    })?;
    if cli.output.is_some() {
        out.write_all(render::campaign_summary(&report).as_bytes())
            .map_err(|e| CliError::io(std::path::Path::new("<stdout>"), e))?;
    }
    emit(cli, out, &report, || render::campaign(&report))?;
    Ok(
        if report
            .counterexamples
            .iter()
            .any(|c| c.report.verdict == Verdict::Counterexample)
        {
            EXIT_COUNTEREXAMPLE
        } else {
            EXIT_CLEAN
        },
    )
}
