//! Acceptance suite. Each criterion prints one PASS/FAIL line; the process
//! exits nonzero if any criterion fails.

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use icpi_core::arith::prime_divisors;
use icpi_core::characteristic::{
    center, f_p_star, f_star, fitting, frattini, hypercenter_pu, hypercenter_u, omega,
};
use icpi_core::constructions::{corpus, generators_for_name, CorpusFilter};
use icpi_core::lattice::chief_factor_pairs;
use icpi_core::properties::{ic_pi_property, pi_property};
use icpi_core::theorems::{run_campaign, suites, CampaignOptions, CampaignReport, TheoremId};
use icpi_core::{set_limits, Group, Limits, Permutation, Witness};

const EXAMPLE_BUDGET: Duration = Duration::from_secs(30);
const CAMPAIGN_BUDGET: Duration = Duration::from_secs(15 * 60);
const SUITE_BUDGET: Duration = Duration::from_secs(15 * 60);
const MIN_INVARIANT_SAMPLES: usize = 1000;
const MEMBERSHIP_PROBES: usize = 100;
const KERNEL_ORDER_LIMIT: u64 = 2000;

fn campaign_limits() -> Limits {
    Limits {
        subgroup_bound: 512,
        ..Limits::default()
    }
}

fn group(name: &str) -> Group {
    let (n, gens) = generators_for_name(name).unwrap();
    Group::from_generators(n, &gens).unwrap()
}

fn sub(g: &Group, gens: &[&str]) -> Group {
    g.subgroup_from_texts(gens).unwrap()
}

fn default_corpus() -> Vec<(icpi_core::GroupSpec, Group)> {
    corpus(&CorpusFilter::default_campaign()).unwrap()
}

type Outcome = Result<String, String>;

fn example_separation() -> Outcome {
    let started = Instant::now();
    let g = group("Alt(5)xCyc(5)");
    if g.degree() != 10 || g.order() != 300 {
        return Err(format!(
            "unexpected ambient: degree {}, order {}",
            g.degree(),
            g.order()
        ));
    }
    let h = sub(&g, &["(1,2,3,4,5)(6,7,8,9,10)"]);
    let ic = ic_pi_property(&g, &h).map_err(|e| e.to_string())?;
    let pi = pi_property(&g, &h).map_err(|e| e.to_string())?;
    let elapsed = started.elapsed();
    if !ic.holds || ic.intersection_order != Some(1) {
        return Err(format!("IC-Π: {ic:?}"));
    }
    let Some(Witness::ChiefPair {
        lower_order,
        upper_order,
        normalizer_index,
        required_primes,
        lower_generators,
        ..
    }) = pi.witness.clone()
    else {
        return Err(format!("Π witness missing: {pi:?}"));
    };
    let lower = sub(
        &g,
        &lower_generators
            .iter()
            .map(String::as_str)
            .collect::<Vec<_>>(),
    );
    let c5 = sub(&g, &["(6,7,8,9,10)"]);
    let exact = !pi.holds
        && lower.same_elements(&c5)
        && (lower_order, upper_order, normalizer_index) == (5, 300, 6)
        && required_primes == vec![5];
    if !exact {
        return Err(format!("Π witness mismatch: {pi:?}"));
    }
    if elapsed > EXAMPLE_BUDGET {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!(
        "IC-Π holds with |H∩[H,G]| = 1; Π fails at (1×C5, G), index 6, primes {{5}} in {elapsed:.2?}"
    ))
}

fn campaign_once() -> Result<CampaignReport, String> {
    set_limits(campaign_limits());
    run_campaign(
        &CorpusFilter::default_campaign(),
        TheoremId::ALL,
        &CampaignOptions::default(),
    )
    .map_err(|e| e.to_string())
}

fn theorem_campaign(report: &CampaignReport) -> Outcome {
    let mut problems = Vec::new();
    if report.tallies.counterexamples != 0 {
        problems.push(format!(
            "{} counterexamples, first: {:?}",
            report.tallies.counterexamples,
            report.counterexamples.first()
        ));
    }
    for &t in TheoremId::ALL {
        let tally = report.per_theorem.get(&t).copied().unwrap_or_default();
        if tally.confirmed == 0 {
            problems.push(format!("{t}: no confirmed instance ({tally:?})"));
        }
    }
    let secs = report.timing.total_seconds;
    if Duration::from_secs_f64(secs) > CAMPAIGN_BUDGET {
        problems.push(format!("took {secs:.1}s"));
    }
    if !problems.is_empty() {
        return Err(problems.join("; "));
    }
    let t = report.tallies;
    Ok(format!(
        "{} groups, {} instances: {} confirmed, {} vacuous, {} skipped, 0 counterexamples in {secs:.1}s",
        report.groups.len(),
        t.total(),
        t.confirmed,
        t.vacuous,
        t.skipped
    ))
}

fn implication_suite() -> Outcome {
    set_limits(campaign_limits());
    let started = Instant::now();
    let mut total = suites::SuiteReport::default();
    for (spec, g) in default_corpus() {
        total.merge(
            suites::p1_implications(&spec.name, &g).map_err(|e| format!("{}: {e}", spec.name))?,
        );
    }
    let elapsed = started.elapsed();
    if !total.violations.is_empty() {
        return Err(format!(
            "{} violations, first: {:?}",
            total.violations.len(),
            total.violations[0]
        ));
    }
    if total.skipped != 0 {
        return Err(format!("{} checks skipped at capacity", total.skipped));
    }
    if elapsed > SUITE_BUDGET {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!(
        "{} implications checked, 0 violations in {elapsed:.1?}",
        total.checked
    ))
}

fn necessity_suite() -> Outcome {
    let mut total = suites::SuiteReport::default();
    for (spec, g) in default_corpus() {
        total.merge(suites::necessity(&spec.name, &g).map_err(|e| e.to_string())?);
    }
    if !total.violations.is_empty() {
        return Err(format!("{:?}", total.violations[0]));
    }
    Ok(format!(
        "{} p-subgroups of Z_pU checked, 0 violations",
        total.checked
    ))
}

fn naive_closure(g: &Group) -> HashSet<Permutation> {
    let id = g.identity();
    let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
    let mut frontier = vec![id];
    while let Some(x) = frontier.pop() {
        for s in g.generators() {
            let y = x.compose(s).unwrap();
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    seen
}

fn random_word(g: &Group, rng: &mut ChaCha8Rng) -> Permutation {
    let mut x = g.identity();
    if g.generators().is_empty() {
        return x;
    }
    for _ in 0..rng.gen_range(1..24) {
        let s = &g.generators()[rng.gen_range(0..g.generators().len())];
        x = x.compose(s).unwrap();
    }
    x
}

fn random_permutation(n: usize, rng: &mut ChaCha8Rng) -> Permutation {
    use rand::seq::SliceRandom;
    let mut images: Vec<usize> = (1..=n).collect();
    images.shuffle(rng);
    Permutation::from_images(&images).unwrap()
}

fn kernel_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut groups = 0;
    let mut probes = 0;
    for (spec, g) in default_corpus() {
        if g.order() > KERNEL_ORDER_LIMIT {
            continue;
        }
        groups += 1;
        let closure = naive_closure(&g);
        if closure.len() as u64 != g.order() {
            return Err(format!(
                "{}: BSGS order {} vs closure {}",
                spec.name,
                g.order(),
                closure.len()
            ));
        }
        let listed: HashSet<Permutation> = g.elements().unwrap().iter().cloned().collect();
        if listed != closure {
            return Err(format!("{}: element list differs from closure", spec.name));
        }
        for i in 0..MEMBERSHIP_PROBES {
            let x = if i % 2 == 0 {
                random_word(&g, &mut rng)
            } else {
                random_permutation(g.degree(), &mut rng)
            };
            probes += 1;
            if g.contains(&x).unwrap() != closure.contains(&x) {
                return Err(format!("{}: membership mismatch on {x}", spec.name));
            }
        }
    }
    Ok(format!(
        "{groups} groups, {probes} membership probes, 0 mismatches"
    ))
}

fn characteristic_fixtures() -> Outcome {
    let s3 = group("Sym(3)");
    let s4 = group("Sym(4)");
    let s5 = group("Sym(5)");
    let a5 = group("Alt(5)");
    let d8 = group("Dih(8)");
    let q8 = group("Q8");
    let c4 = group("Cyc(4)");
    let v4 = sub(&s4, &["(1,2)(3,4)", "(1,3)(2,4)"]);
    let a3 = sub(&s3, &["(1,2,3)"]);
    let a5_in_s5 = sub(&s5, &["(1,2,3)", "(1,2,3,4,5)"]);
    let q8_involution = q8
        .elements()
        .unwrap()
        .iter()
        .find(|x| x.order() == 2)
        .cloned()
        .unwrap();
    let z_q8 = q8.subgroup(&[q8_involution]).unwrap();
    let c2_in_c4 = c4.subgroup(&[c4.generators()[0].pow(2)]).unwrap();
    let fp = |h: &Group| h.fingerprint().unwrap();
    let fixtures: Vec<(&str, Group, Group)> = vec![
        (
            "Z_U(S4) = 1",
            hypercenter_u(&s4).unwrap(),
            Group::trivial(4),
        ),
        ("Z_3U(S4) = S4", hypercenter_pu(&s4, 3).unwrap(), s4.clone()),
        ("Z_U(S3) = S3", hypercenter_u(&s3).unwrap(), s3.clone()),
        ("Z_U(D8) = D8", hypercenter_u(&d8).unwrap(), d8.clone()),
        ("F(S4) = V4", fitting(&s4).unwrap(), v4.clone()),
        ("F*(S4) = V4", f_star(&s4).unwrap(), v4.clone()),
        ("F*(A5) = A5", f_star(&a5).unwrap(), a5.clone()),
        ("F*(S5) = A5", f_star(&s5).unwrap(), a5_in_s5),
        ("F_3*(S3) = A3", f_p_star(&s3, 3).unwrap(), a3),
        ("F_2*(S3) = S3", f_p_star(&s3, 2).unwrap(), s3.clone()),
        ("Φ(Q8) = Z(Q8)", frattini(&q8).unwrap(), z_q8.clone()),
        ("Z(Q8) = <-1>", center(&q8).unwrap(), z_q8),
        ("Ω(Q8) = Q8", omega(&q8).unwrap(), q8.clone()),
        ("Ω(C4) = C2", omega(&c4).unwrap(), c2_in_c4),
    ];
    for (label, got, want) in &fixtures {
        if fp(got) != fp(want) || !got.same_elements(want) {
            return Err(format!("{label}: got order {}", got.order()));
        }
    }
    let s4_pairs = chief_factor_pairs(&s4).unwrap().len();
    let d8_pairs = chief_factor_pairs(&d8).unwrap().len();
    if (s4_pairs, d8_pairs) != (3, 7) {
        return Err(format!("chief pairs S4 {s4_pairs}, D8 {d8_pairs}"));
    }
    Ok(format!(
        "{} subgroup fixtures and 2 chief-pair counts exact",
        fixtures.len()
    ))
}

fn algebraic_invariants() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xa1_9e);
    let groups = default_corpus();
    let per_group = MIN_INVARIANT_SAMPLES.div_ceil(groups.len()).max(4);
    let (mut pairs, mut triples, mut sylow_checks) = (0, 0, 0);
    for (spec, g) in &groups {
        let fail = |what: &str| Err(format!("{}: {what}", spec.name));
        let sample =
            suites::sample_subgroups(g, &mut rng, 4 * per_group).map_err(|e| e.to_string())?;
        for h in &sample[..per_group] {
            pairs += 1;
            if !suites::closure_identity(g, h).unwrap() {
                return fail(&format!("H^G != H[H,G] for {:?}", h.generator_texts()));
            }
        }
        for t in sample[per_group..].chunks(3).take(per_group) {
            triples += 1;
            if !suites::equivalence_biconditional(&t[0], &t[1], &t[2]).unwrap() {
                return fail("modular identity statements disagree");
            }
        }
        if !suites::f_star_self_centralizing(g).unwrap() {
            return fail("C_G(F*(G)) not inside F*(G)");
        }
        for p in prime_divisors(g.order()) {
            sylow_checks += 1;
            if !suites::sylow_consequence(g, p).unwrap() {
                return fail(&format!("p = {p}: G' not p-nilpotent"));
            }
        }
    }
    if pairs < MIN_INVARIANT_SAMPLES || triples < MIN_INVARIANT_SAMPLES {
        return Err(format!("only {pairs} pairs / {triples} triples sampled"));
    }
    Ok(format!(
        "{pairs} closure pairs, {triples} triples, {} F* checks, {sylow_checks} Sylow checks; 0 violations",
        groups.len()
    ))
}

fn determinism(first: &CampaignReport) -> Outcome {
    let second = campaign_once()?;
    let a = serde_json::to_string(&first.without_timing()).unwrap();
    let b = serde_json::to_string(&second.without_timing()).unwrap();
    if a != b {
        return Err("reports differ between runs".into());
    }
    Ok(format!(
        "two runs byte-identical modulo timing ({} bytes)",
        a.len()
    ))
}

fn main() -> ExitCode {
    let mut failed = 0;
    let mut report = |id: u32, name: &str, outcome: Outcome| match outcome {
        Ok(msg) => println!("[PASS] criterion {id} ({name}): {msg}"),
        Err(msg) => {
            failed += 1;
            println!("[FAIL] criterion {id} ({name}): {msg}");
        }
    };
    report(1, "example separation", example_separation());
    let first = campaign_once();
    report(
        2,
        "theorem campaigns",
        first
            .as_ref()
            .map_err(Clone::clone)
            .and_then(theorem_campaign),
    );
    report(3, "implication suite", implication_suite());
    report(4, "necessity suite", necessity_suite());
    report(5, "kernel oracle", kernel_oracle());
    report(6, "characteristic fixtures", characteristic_fixtures());
    report(7, "algebraic invariants", algebraic_invariants());
    report(8, "determinism", first.and_then(|r| determinism(&r)));
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
