//! Human-readable renderings of the command outputs.

use std::fmt::Write;

use icpi_core::theorems::{CampaignReport, Detail, TheoremReport};
use icpi_core::{PropertyReport, Witness};

use crate::commands::{CheckOutput, CorpusEntry, InfoReport, PrimeSubgroup, VerifyOutput};

fn primes(ps: &[u64]) -> String {
    let inner: Vec<String> = ps.iter().map(u64::to_string).collect();
    format!("{{{}}}", inner.join(", "))
}

fn per_prime(name: impl Fn(u64) -> String, v: &[PrimeSubgroup]) -> String {
    v.iter()
        .map(|e| format!("{} = {}", name(e.p), e.subgroup.label))
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn info(r: &InfoReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "group {} (degree {})", r.group, r.degree);
    let _ = writeln!(s, "order {}", r.order);
    let _ = writeln!(s, "π(G) = {}", primes(&r.primes));
    let _ = writeln!(
        s,
        "soluble {}, supersoluble {}, nilpotent {}",
        r.soluble, r.supersoluble, r.nilpotent
    );
    let labels: Vec<String> = r
        .normal_subgroups
        .iter()
        .map(|n| format!("{} (order {})", n.label, n.order))
        .collect();
    let _ = writeln!(
        s,
        "normal subgroups {}: {}",
        labels.len(),
        labels.join(", ")
    );
    let pairs: Vec<String> = r
        .chief_pairs
        .iter()
        .map(|c| format!("({},{})", c.lower, c.upper))
        .collect();
    let _ = writeln!(s, "chief pairs {}: {}", pairs.len(), pairs.join(" "));
    let _ = writeln!(s, "Z_U = {}", r.hypercenter_u.label);
    let _ = writeln!(s, "{}", per_prime(|p| format!("Z_{p}U"), &r.hypercenter_pu));
    let _ = writeln!(s, "F = {}", r.fitting.label);
    let _ = writeln!(s, "F* = {}", r.f_star.label);
    let _ = writeln!(s, "{}", per_prime(|p| format!("F*_{p}"), &r.f_p_star));
    s
}

fn witness(w: &Witness) -> String {
    match w {
        Witness::ChiefPair {
            lower_generators,
            upper_generators,
            lower_order,
            upper_order,
            intersection_order,
            normalizer_index,
            required_primes,
        } => format!(
            "chief pair (K, L) with |K| = {lower_order}, |L| = {upper_order}: |HK/K ∩ L/K| = {intersection_order}, \
             normalizer index {normalizer_index}, required primes {}\n  K = <{}>\n  L = <{}>",
            primes(required_primes),
            lower_generators.join(", "),
            upper_generators.join(", ")
        ),
        Witness::Factor {
            lower_order,
            upper_order,
            ..
        } => format!("chief factor of orders ({lower_order}, {upper_order}) neither covered nor avoided"),
        Witness::Partner { generators, order } => {
            format!("does not permute with <{}> (order {order})", generators.join(", "))
        }
        Witness::Element { element } => format!("not normalized by {element}"),
        Witness::Core {
            core_order,
            hypercenter_order,
        } => format!("H/H_G not inside Z_U(G/H_G): |H_G| = {core_order}, |Z_U| = {hypercenter_order}"),
        Witness::NoSupplement { supplements_checked } => {
            format!("no suitable supplement among {supplements_checked} candidates")
        }
    }
}

fn property(s: &mut String, r: &PropertyReport) {
    let _ = writeln!(s, "verdict {}", if r.holds { "holds" } else { "fails" });
    if let Some(d) = r.intersection_order {
        let _ = writeln!(s, "D-order {d} (D = H ∩ [H,G])");
    }
    if r.pairs_evaluated > 0 {
        let _ = writeln!(s, "chief pairs evaluated {}", r.pairs_evaluated);
    }
    if let Some(w) = &r.witness {
        let _ = writeln!(s, "witness {}", witness(w));
    }
}

pub fn check(o: &CheckOutput) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{} on {} for H = <{}> (order {})",
        o.report.property,
        o.group,
        o.subgroup.join(", "),
        o.report.subgroup_order
    );
    property(&mut s, &o.report);
    s
}

fn details(s: &mut String, ds: &[Detail]) {
    for d in ds {
        let _ = writeln!(s, "  {}: <{}>", d.role, d.generators.join(", "));
        if let Some(r) = &d.report {
            let mut inner = String::new();
            property(&mut inner, r);
            for line in inner.lines() {
                let _ = writeln!(s, "    {line}");
            }
        }
    }
}

/// The serialized name of a unit enum variant.
fn tag<T: serde::Serialize>(v: &T) -> String {
    match serde_json::to_value(v) {
        Ok(serde_json::Value::String(s)) => s,
        _ => String::from("?"),
    }
}

fn theorem_report(s: &mut String, r: &TheoremReport) {
    let i = &r.instance;
    let _ = writeln!(s, "{} on {}", i.theorem, i.group);
    for (k, v) in &i.params.subgroups {
        let _ = writeln!(s, "  {k} = <{}>", v.join(", "));
    }
    for (k, v) in [
        ("p", i.params.p),
        ("d", i.params.d),
        ("part", i.params.part.map(u64::from)),
    ] {
        if let Some(v) = v {
            let _ = writeln!(s, "  {k} = {v}");
        }
    }
    let _ = writeln!(s, "hypothesis {}", tag(&r.hypothesis));
    let _ = writeln!(s, "conclusion {}", tag(&r.conclusion));
    let _ = writeln!(s, "verdict {}", tag(&r.verdict));
    if let Some(reason) = &r.reason {
        let _ = writeln!(s, "reason {reason}");
    }
    details(s, &r.details);
}

pub fn verify(o: &VerifyOutput) -> String {
    let mut s = String::new();
    theorem_report(&mut s, &o.report);
    s
}

pub fn campaign_summary(r: &CampaignReport) -> String {
    let t = r.tallies;
    format!(
        "campaign: {} groups, {} instances; confirmed {}, vacuous {}, counterexamples {}, skipped {}\n",
        r.groups.len(),
        t.total(),
        t.confirmed,
        t.vacuous,
        t.counterexamples,
        t.skipped
    )
}

pub fn campaign(r: &CampaignReport) -> String {
    let mut s = campaign_summary(r);
    let l = r.limits;
    let _ = writeln!(
        s,
        "engine {}; limits: enumeration {}, subgroups {}, degree {}",
        r.engine_version, l.enumeration_bound, l.subgroup_bound, l.degree_cap
    );
    let _ = writeln!(
        s,
        "{:<16} {:>10} {:>9} {:>16} {:>8}",
        "theorem", "confirmed", "vacuous", "counterexamples", "skipped"
    );
    for (id, t) in &r.per_theorem {
        let _ = writeln!(
            s,
            "{:<16} {:>10} {:>9} {:>16} {:>8}",
            id.name(),
            t.confirmed,
            t.vacuous,
            t.counterexamples,
            t.skipped
        );
    }
    if r.counterexamples.is_empty() {
        let _ = writeln!(s, "counterexamples: none");
    } else {
        let _ = writeln!(s, "COUNTEREXAMPLES:");
        for c in &r.counterexamples {
            theorem_report(&mut s, &c.report);
        }
    }
    let _ = writeln!(s, "runtime {:.2}s", r.timing.total_seconds);
    s
}

pub fn corpus(list: &[CorpusEntry]) -> String {
    let mut s = String::new();
    for e in list {
        let _ = writeln!(
            s,
            "{:<16} order {:>4}  degree {:>3}",
            e.name, e.order, e.degree
        );
    }
    s
}
