//! Implication and invariant suites run over whole groups.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::arith::prime_divisors;
use crate::characteristic::{
    centralizer, commutator_subgroup, derived_subgroup, f_star, hypercenter_pu, is_p_nilpotent,
    is_p_supersoluble, normal_closure, soluble_radical,
};
use crate::error::{GroupError, Result};
use crate::group::Group;
use crate::properties::{check_property, ic_pi_property, pi_property, PropertyKind};

use super::checks::equivalent_sides;
use super::strategy::{p_subgroup_pool, pool_for_h};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub group: String,
    pub description: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub checked: usize,
    /// Checks abandoned because a capacity bound was hit.
    pub skipped: usize,
    pub violations: Vec<Violation>,
}

impl SuiteReport {
    pub fn merge(&mut self, other: SuiteReport) {
        self.checked += other.checked;
        self.skipped += other.skipped;
        self.violations.extend(other.violations);
    }

    fn violation(&mut self, group: &str, description: String) {
        self.violations.push(Violation {
            group: group.to_string(),
            description,
        });
    }
}

/// For every prime `p` and every sampled `p`-subgroup `H`: each classical
/// embedding property of `H` implies IC-Π, and so does the Π-property.
/// `X`-permutability is taken with respect to the soluble radical.
pub fn p1_implications(name: &str, g: &Group) -> Result<SuiteReport> {
    let mut out = SuiteReport::default();
    let radical = soluble_radical(g)?;
    for p in prime_divisors(g.order()) {
        for h in p_subgroup_pool(g, p)? {
            let ic = ic_pi_property(g, &h)?.holds;
            let mut antecedents: Vec<PropertyKind> = PropertyKind::CLASSICAL.to_vec();
            antecedents.push(PropertyKind::Pi);
            for kind in antecedents {
                let x = (kind == PropertyKind::XPermutable).then_some(&radical);
                let holds = match check_property(g, &h, kind, x) {
                    Ok(r) => r.holds,
                    Err(GroupError::Capacity { .. }) => {
                        out.skipped += 1;
                        continue;
                    }
                    Err(e) => return Err(e),
                };
                out.checked += 1;
                if holds && !ic {
                    out.violation(
                        name,
                        format!(
                            "{kind} holds but IC-Π fails for {:?} (p = {p})",
                            h.generator_texts()
                        ),
                    );
                }
            }
        }
    }
    Ok(out)
}

/// Every sampled `p`-subgroup of `Z_pU(G)` has the Π-property.
pub fn necessity(name: &str, g: &Group) -> Result<SuiteReport> {
    let mut out = SuiteReport::default();
    for p in prime_divisors(g.order()) {
        let z = hypercenter_pu(g, p)?;
        for l in p_subgroup_pool(g, p)? {
            if !l.is_subgroup_of(&z) {
                continue;
            }
            out.checked += 1;
            if !pi_property(g, &l)?.holds {
                out.violation(
                    name,
                    format!("{:?} inside Z_{p}U fails Π", l.generator_texts()),
                );
            }
        }
    }
    Ok(out)
}

/// `H^G = H[H,G]`.
pub fn closure_identity(g: &Group, h: &Group) -> Result<bool> {
    let closure = normal_closure(g, h)?;
    let product = h.join(&commutator_subgroup(g, h, g)?);
    Ok(closure.same_elements(&product))
}

/// Statements (1) and (2) of the modular identity agree for `(U, V, W)`.
pub fn equivalence_biconditional(u: &Group, v: &Group, w: &Group) -> Result<bool> {
    let (a, b) = equivalent_sides(u, v, w)?;
    Ok(a == b)
}

/// `C_G(F*(G)) <= F*(G)`.
pub fn f_star_self_centralizing(g: &Group) -> Result<bool> {
    let fs = f_star(g)?;
    Ok(centralizer(g, &fs)?.is_subgroup_of(&fs))
}

/// If `G` is `p`-supersoluble then `G'` is `p`-nilpotent (vacuously true
/// otherwise).
pub fn sylow_consequence(g: &Group, p: u64) -> Result<bool> {
    if !is_p_supersoluble(g, p)? {
        return Ok(true);
    }
    is_p_nilpotent(&derived_subgroup(g)?, p)
}

/// `k` subgroups drawn with replacement from the lemma pool of `g`.
pub fn sample_subgroups<R: Rng>(g: &Group, rng: &mut R, k: usize) -> Result<Vec<Group>> {
    let pool = pool_for_h(g)?;
    Ok((0..k)
        .map(|_| pool.choose(rng).expect("pool contains G").clone())
        .collect())
}
