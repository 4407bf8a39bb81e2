//! Enumeration of theorem instances over one group.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arith::{gcd, is_power_of, prime_divisors, proper_prime_powers};
use crate::characteristic::{f_p_star, f_star, sylow, sylow_conjugates};
use crate::error::Result;
use crate::group::Group;
use crate::lattice::{
    cyclic_subgroups, dedup_subgroups, minimal_normal_subgroups, normal_list, subgroup_list,
};

use super::{Params, TheoremId, TheoremInstance};

/// Ambient order up to which pools use the exhaustive subgroup list.
pub const EXHAUSTIVE_POOL_ORDER: u64 = 48;

/// Candidate subgroups `H` for the lemmas quantified over arbitrary subgroups:
/// every subgroup when `|G| <= 48`, otherwise the cyclic subgroups, all Sylow
/// subgroups and the normal subgroups.
pub fn pool_for_h(g: &Group) -> Result<Vec<Group>> {
    if g.order() <= EXHAUSTIVE_POOL_ORDER {
        return Ok(subgroup_list(g)?.to_vec());
    }
    let mut all: Vec<Group> = cyclic_subgroups(g)?.iter().cloned().collect();
    for p in prime_divisors(g.order()) {
        all.extend(sylow_conjugates(g, p)?.iter().cloned());
    }
    all.extend(normal_list(g)?.iter().cloned());
    dedup_subgroups(all)
}

/// Nontrivial `p`-subgroups sampled for the implication suites: the cyclic
/// `p`-subgroups and all Sylow `p`-subgroups, plus every `p`-subgroup when
/// `|G| <= 48`.
pub fn p_subgroup_pool(g: &Group, p: u64) -> Result<Vec<Group>> {
    let is_p = |h: &Group| !h.is_trivial() && is_power_of(h.order(), p);
    let mut all: Vec<Group> = cyclic_subgroups(g)?
        .iter()
        .filter(|h| is_p(h))
        .cloned()
        .collect();
    all.extend(sylow_conjugates(g, p)?.iter().filter(|h| is_p(h)).cloned());
    if g.order() <= EXHAUSTIVE_POOL_ORDER {
        all.extend(subgroup_list(g)?.iter().filter(|h| is_p(h)).cloned());
    }
    dedup_subgroups(all)
}

/// Knobs for instance generation.
#[derive(Debug, Clone, Copy)]
pub(crate) struct StrategyOptions {
    pub seed: u64,
    pub equivalent_samples: usize,
}

fn inst(t: TheoremId, group: &str, params: Params) -> TheoremInstance {
    TheoremInstance {
        theorem: t,
        group: group.to_string(),
        params,
    }
}

/// Parameters with `d` set to each admissible order, or once without `d`
/// when the range is empty (such instances are reported not applicable).
fn with_orders(base: Params, p: u64, pg_order: u64) -> Vec<Params> {
    let range = proper_prime_powers(p, pg_order);
    if range.is_empty() {
        return vec![base];
    }
    range.into_iter().map(|d| base.clone().order(d)).collect()
}

fn gens(h: &Group) -> Vec<String> {
    h.generator_texts()
}

/// Every instance of `theorem` on `g` the campaign evaluates.
pub fn instances_for(g: &Group, name: &str, theorem: TheoremId) -> Result<Vec<TheoremInstance>> {
    instances_with(
        g,
        name,
        theorem,
        StrategyOptions {
            seed: 0,
            equivalent_samples: 24,
        },
    )
}

pub(crate) fn instances_with(
    g: &Group,
    name: &str,
    theorem: TheoremId,
    opts: StrategyOptions,
) -> Result<Vec<TheoremInstance>> {
    use TheoremId::*;
    let normals = normal_list(g)?;
    let nontrivial: Vec<&Group> = normals.iter().filter(|n| !n.is_trivial()).collect();
    let primes = prime_divisors(g.order());
    let mut out = Vec::new();
    let mut push = |p: Params| out.push(inst(theorem, name, p));
    match theorem {
        ThmA | CorFQuotient => {
            let outer_key = if theorem == ThmA { "N" } else { "E" };
            for n in &nontrivial {
                for p in prime_divisors(n.order()) {
                    let floor = f_p_star(n, p)?;
                    for x in normals.iter() {
                        if !floor.is_subgroup_of(x) || !x.is_subgroup_of(n) {
                            continue;
                        }
                        let pg = sylow(x, p)?;
                        let base = Params::default()
                            .with(outer_key, gens(n))
                            .with("X", gens(x))
                            .with("P", gens(&pg))
                            .prime(p);
                        for params in with_orders(base, p, pg.order()) {
                            push(params);
                        }
                    }
                }
            }
        }
        ThmBOrderD | Thm31Min | Thm32Max | LemPhi => {
            for pg in &nontrivial {
                let Some(p) = pg.p_group_prime() else {
                    continue;
                };
                let base = Params::default().with("P", gens(pg)).prime(p);
                if theorem == ThmBOrderD {
                    for params in with_orders(base, p, pg.order()) {
                        push(params);
                    }
                } else {
                    push(base);
                }
            }
        }
        ThmCMinimal | ThmDMaximal => {
            for n in &nontrivial {
                for p in prime_divisors(n.order()) {
                    let pg = sylow(n, p)?;
                    push(
                        Params::default()
                            .with("N", gens(n))
                            .with("P", gens(&pg))
                            .prime(p),
                    );
                }
            }
        }
        CorStar => {
            for e in normals.iter() {
                let floor = f_star(e)?;
                for x in normals.iter() {
                    if floor.is_subgroup_of(x) && x.is_subgroup_of(e) {
                        push(Params::default().with("E", gens(e)).with("X", gens(x)));
                    }
                }
            }
        }
        LemOver | LemOveI | LemOveII => {
            for h in pool_for_h(g)? {
                for n in &nontrivial {
                    let admissible = match theorem {
                        LemOveI => n.is_subgroup_of(&h),
                        LemOveII => gcd(h.order(), n.order()) == 1,
                        _ => true,
                    };
                    if admissible {
                        push(Params::default().with("H", gens(&h)).with("N", gens(n)));
                    }
                }
            }
        }
        LemSatisfies => {
            let minimals = minimal_normal_subgroups(g)?;
            let cyclic = cyclic_subgroups(g)?;
            for t in minimals.iter() {
                let p = t.order();
                if !crate::arith::is_prime(p) {
                    continue;
                }
                for l in cyclic.iter().filter(|l| l.order() == p) {
                    push(
                        Params::default()
                            .with("T", gens(t))
                            .with("L", gens(l))
                            .prime(p),
                    );
                }
            }
        }
        LemOneOf => {
            let minimals = minimal_normal_subgroups(g)?;
            for n in &nontrivial {
                let inside: Vec<&Group> = minimals.iter().filter(|m| m.is_subgroup_of(n)).collect();
                if inside.len() != 1 {
                    continue;
                }
                for p in prime_divisors(n.order()) {
                    let pg = sylow(n, p)?;
                    let base = Params::default()
                        .with("N", gens(n))
                        .with("P", gens(&pg))
                        .with("T", gens(inside[0]))
                        .prime(p);
                    for params in with_orders(base, p, pg.order()) {
                        push(params);
                    }
                }
            }
        }
        LemNecessity | LemSylow => {
            for &p in &primes {
                push(Params::default().prime(p));
            }
        }
        LemJgU => {
            for e in normals.iter() {
                push(Params::default().with("E", gens(e)));
            }
        }
        LemSuU => {
            for e in normals.iter() {
                let mut one = Params::default().with("E", gens(e));
                one.part = Some(1);
                push(one);
                for &p in &primes {
                    let mut two = Params::default().with("E", gens(e)).prime(p);
                    two.part = Some(2);
                    push(two);
                }
            }
        }
        LemEquivalent => {
            let pool = pool_for_h(g)?;
            let fp = g.fingerprint()?;
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ fp);
            for _ in 0..opts.equivalent_samples {
                let pick: Vec<&Group> = (0..3)
                    .map(|_| pool.choose(&mut rng).expect("pool contains G"))
                    .collect();
                push(
                    Params::default()
                        .with("U", gens(pick[0]))
                        .with("V", gens(pick[1]))
                        .with("W", gens(pick[2])),
                );
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{named_group, Family};

    #[test]
    fn pools_are_deduplicated_p_subgroups() {
        let g = named_group(Family::Symmetric, &[4]).unwrap();
        let pool = p_subgroup_pool(&g, 2).unwrap();
        // S4 has 9 involutions' groups, 3 cyclic C4, 4 Klein groups (one normal), 3 D8.
        assert_eq!(pool.len(), 9 + 3 + 4 + 3);
        assert!(pool.iter().all(|h| h.is_p_group(2)));
        assert_eq!(pool_for_h(&g).unwrap().len(), 30);
    }

    #[test]
    fn theorem_a_instances_cover_every_order() {
        let g = named_group(Family::Dihedral, &[8]).unwrap();
        let v = instances_for(&g, "Dih(8)", TheoremId::ThmA).unwrap();
        assert!(v.iter().any(|i| i.params.d == Some(4)));
        assert!(v.iter().any(|i| i.params.d == Some(2)));
    }

    #[test]
    fn equivalence_samples_are_reproducible() {
        let g = named_group(Family::Symmetric, &[4]).unwrap();
        let a = instances_for(&g, "Sym(4)", TheoremId::LemEquivalent).unwrap();
        let b = instances_for(&g, "Sym(4)", TheoremId::LemEquivalent).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 24);
    }
}
