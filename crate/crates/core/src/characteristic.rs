//! Characteristic and relatively defined subgroups.

use serde::{Deserialize, Serialize};
use std::sync::Arc;

use crate::arith::{is_power_of, p_part, prime_divisors, PrimeSet};
use crate::constructions::quotient_or_self;
use crate::error::{GroupError, Result};
use crate::group::{Group, GroupMap};
use crate::lattice::{
    chief_list, close_normally, minimal_normal_subgroups, normal_list, subgroup_list,
};
use crate::perm::Permutation;

fn require_subgroup(g: &Group, h: &Group, what: &str) -> Result<()> {
    if h.is_subgroup_of(g) {
        Ok(())
    } else {
        Err(GroupError::NotSubgroup(format!(
            "{what} of order {} is not contained in the ambient group of order {}",
            h.order(),
            g.order()
        )))
    }
}

/// The smallest normal subgroup of `g` containing `h`.
pub fn normal_closure(g: &Group, h: &Group) -> Result<Group> {
    require_subgroup(g, h, "subgroup")?;
    Ok(close_normally(g, h.clone()))
}

/// `[H, K]`: the normal closure in `<H, K>` of the commutators of generators.
pub fn commutator_subgroup(g: &Group, h: &Group, k: &Group) -> Result<Group> {
    require_subgroup(g, h, "first argument")?;
    require_subgroup(g, k, "second argument")?;
    let mut comms: Vec<Permutation> = Vec::new();
    for a in h.generators() {
        for b in k.generators() {
            let c = a.comm(b);
            if !c.is_identity() {
                comms.push(c);
            }
        }
    }
    let seed = Group::from_generators(g.degree(), &comms)?;
    let hk = h.join(k);
    let result = close_normally(&hk, seed);
    if k.same_elements(g) {
        debug_assert!(result.is_normal_in(g));
    }
    Ok(result)
}

pub fn derived_subgroup(g: &Group) -> Result<Group> {
    g.cached("derived", || commutator_subgroup(g, g, g))
}

/// The largest normal subgroup of `g` inside `h`.
pub fn core(g: &Group, h: &Group) -> Result<Group> {
    require_subgroup(g, h, "subgroup")?;
    let mut c = h.clone();
    loop {
        let mut next = c.clone();
        for x in g.generators() {
            next = next.intersection(&c.conjugate(x))?;
        }
        if next.order() == c.order() {
            return Ok(c);
        }
        c = next;
    }
}

fn scan(g: &Group, start: Group, keep: impl Fn(&Permutation) -> bool) -> Result<Group> {
    let mut acc = start;
    if acc.order() == g.order() {
        return Ok(acc);
    }
    for x in g.elements()?.iter() {
        if !acc.has(x) && keep(x) {
            acc = acc.extended(x);
            if acc.order() == g.order() {
                break;
            }
        }
    }
    Ok(acc)
}

/// `N_G(H)` by scanning the elements of `g`.
pub fn normalizer(g: &Group, h: &Group) -> Result<Group> {
    require_subgroup(g, h, "subgroup")?;
    if h.is_normalized_by(g.generators()) {
        return Ok(g.clone());
    }
    scan(g, h.clone(), |x| {
        h.generators().iter().all(|s| h.has(&s.conjugate_by(x)))
    })
}

/// `C_G(H)`; `h` need not lie in `g`.
pub fn centralizer(g: &Group, h: &Group) -> Result<Group> {
    if h.degree() != g.degree() {
        return Err(GroupError::DegreeMismatch {
            left: g.degree(),
            right: h.degree(),
        });
    }
    let commutes = |x: &Permutation| h.generators().iter().all(|s| x.then(s) == s.then(x));
    if g.generators().iter().all(commutes) {
        return Ok(g.clone());
    }
    scan(g, Group::trivial(g.degree()), commutes)
}

pub fn center(g: &Group) -> Result<Group> {
    g.cached("center", || centralizer(g, g))
}

/// A Sylow `p`-subgroup, grown from an element of largest `p`-power order
/// inside successive normalizers.
pub fn sylow(g: &Group, p: u64) -> Result<Group> {
    g.cached(&format!("sylow:{p}"), || {
        let target = p_part(g.order(), p);
        if target == 1 {
            return Ok(Group::trivial(g.degree()));
        }
        if target == g.order() {
            return Ok(g.clone());
        }
        let els = g.elements()?;
        let start = els
            .iter()
            .filter(|x| is_power_of(x.order(), p))
            .max_by(|a, b| a.order().cmp(&b.order()).then_with(|| b.cmp(a)))
            .expect("Cauchy: an element of order p exists");
        let mut q = Group::from_generators(g.degree(), std::slice::from_ref(start))?;
        while q.order() < target {
            let n = normalizer(g, &q)?;
            let y = n
                .elements()?
                .iter()
                .find(|y| !q.has(y) && q.has(&y.pow(p)))
                .cloned()
                .expect("a p-subgroup below the Sylow order grows inside its normalizer");
            q = q.extended(&y);
        }
        debug_assert_eq!(q.order(), target);
        Ok(q)
    })
}

/// Every Sylow `p`-subgroup, as the conjugates of [`sylow`].
pub fn sylow_conjugates(g: &Group, p: u64) -> Result<Arc<Vec<Group>>> {
    if let Some(v) = g.memo().sylows.lock().unwrap().get(&p) {
        return Ok(v.clone());
    }
    let s = sylow(g, p)?;
    let mut all = vec![s.clone()];
    let mut seen: GroupMap<()> = GroupMap::default();
    seen.insert(s, ());
    let mut i = 0;
    while i < all.len() {
        let q = all[i].clone();
        for x in g.generators() {
            let c = q.conjugate(x);
            if seen.get(&c).is_none() {
                seen.insert(c.clone(), ());
                all.push(c);
            }
        }
        i += 1;
    }
    let arc = Arc::new(all);
    g.memo()
        .sylows
        .lock()
        .unwrap()
        .entry(p)
        .or_insert_with(|| arc.clone());
    Ok(arc)
}

/// The largest normal `π`-subgroup.
pub fn o_pi(g: &Group, pi: &PrimeSet) -> Result<Group> {
    g.cached(&format!("o_pi:{pi}"), || {
        let mut acc = Group::trivial(g.degree());
        for n in normal_list(g)?.iter() {
            if pi.is_pi_number(n.order()) && !n.is_subgroup_of(&acc) {
                acc = acc.join(n);
            }
        }
        Ok(acc)
    })
}

pub fn o_p(g: &Group, p: u64) -> Result<Group> {
    o_pi(g, &PrimeSet::new(vec![p]))
}

/// `O_{p'}(G)`.
pub fn o_p_prime(g: &Group, p: u64) -> Result<Group> {
    o_pi(g, &PrimeSet::of(g.order()).without(p))
}

/// `F_p(G)`: the preimage of `O_p(G/O_{p'}(G))`.
pub fn f_p(g: &Group, p: u64) -> Result<Group> {
    g.cached(&format!("f_p:{p}"), || {
        let epi = quotient_or_self(g, &o_p_prime(g, p)?)?;
        epi.preimage(&o_p(epi.codomain(), p)?)
    })
}

/// `Φ(G)`. For `p`-groups this is `G' G^p`; otherwise the intersection of
/// the maximal subgroups.
pub fn frattini(g: &Group) -> Result<Group> {
    g.cached("frattini", || {
        if g.is_trivial() {
            return Ok(g.clone());
        }
        match g.p_group_prime() {
            Some(p) => Ok(frattini_p_group(g, p)),
            None => frattini_by_maximals(g),
        }
    })
}

fn frattini_p_group(g: &Group, p: u64) -> Group {
    let gens = g.generators();
    let mut seed: Vec<Permutation> = gens.iter().map(|x| x.pow(p)).collect();
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            seed.push(a.comm(b));
        }
    }
    seed.retain(|x| !x.is_identity());
    let seed = Group::from_generators(g.degree(), &seed).expect("same degree");
    close_normally(g, seed)
}

pub(crate) fn frattini_by_maximals(g: &Group) -> Result<Group> {
    let subs = subgroup_list(g)?;
    let proper: Vec<&Group> = subs.iter().filter(|h| h.order() < g.order()).collect();
    let mut acc = g.clone();
    for (i, m) in proper.iter().enumerate() {
        let maximal = !proper[i + 1..]
            .iter()
            .any(|bigger| bigger.order() > m.order() && m.is_subgroup_of(bigger));
        if maximal {
            acc = acc.intersection(m)?;
        }
    }
    Ok(acc)
}

/// `Ω(P)`: generated by the elements of order dividing 4 when `P` is a
/// non-abelian 2-group, and by those of order dividing `p` otherwise.
pub fn omega(pg: &Group) -> Result<Group> {
    if pg.is_trivial() {
        return Ok(pg.clone());
    }
    let p = pg
        .p_group_prime()
        .ok_or_else(|| GroupError::NotPGroup(format!("order {}", pg.order())))?;
    let exponent = if p == 2 && !pg.is_abelian() { 4 } else { p };
    let els = pg.elements()?;
    let small: Vec<Permutation> = els
        .iter()
        .filter(|x| exponent % x.order() == 0)
        .cloned()
        .collect();
    Ok(Group::from_element_list(pg.degree(), &small))
}

/// Nilpotent iff every Sylow subgroup is normal.
pub fn is_nilpotent(g: &Group) -> Result<bool> {
    for p in prime_divisors(g.order()) {
        if !sylow(g, p)?.is_normal_in(g) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `F(G)`, the product of the `O_p(G)`.
pub fn fitting(g: &Group) -> Result<Group> {
    g.cached("fitting", || {
        let mut acc = Group::trivial(g.degree());
        for p in prime_divisors(g.order()) {
            acc = acc.join(&o_p(g, p)?);
        }
        debug_assert!(is_nilpotent(&acc)?);
        Ok(acc)
    })
}

/// Whether every chief factor has prime power order.
pub fn is_soluble(g: &Group) -> Result<bool> {
    Ok(chief_list(g)?.iter().all(|c| c.primes.primes().len() == 1))
}

/// The largest soluble normal subgroup.
pub fn soluble_radical(g: &Group) -> Result<Group> {
    g.cached("soluble_radical", || {
        let mut acc = Group::trivial(g.degree());
        for n in normal_list(g)?.iter() {
            if !n.is_subgroup_of(&acc) && is_soluble(n)? {
                acc = acc.join(n);
            }
        }
        Ok(acc)
    })
}

pub fn is_perfect(g: &Group) -> Result<bool> {
    Ok(derived_subgroup(g)?.order() == g.order())
}

/// Perfect, and simple modulo its center.
pub fn is_quasisimple(g: &Group) -> Result<bool> {
    if g.is_trivial() || !is_perfect(g)? {
        return Ok(false);
    }
    let z = center(g)?;
    Ok(normal_list(g)?
        .iter()
        .all(|n| n.order() == g.order() || n.is_subgroup_of(&z)))
}

/// Every subnormal subgroup, found by descending through normal lattices.
pub fn subnormal_subgroups(g: &Group) -> Result<Vec<Group>> {
    let mut all = vec![g.clone()];
    let mut seen: GroupMap<()> = GroupMap::default();
    seen.insert(g.clone(), ());
    let mut i = 0;
    while i < all.len() {
        let a = all[i].clone();
        for n in normal_list(&a)?.iter() {
            if seen.get(n).is_none() {
                seen.insert(n.clone(), ());
                all.push(n.clone());
            }
        }
        i += 1;
    }
    Ok(all)
}

/// `E(G)`, generated by the subnormal quasisimple subgroups.
pub fn layer(g: &Group) -> Result<Group> {
    g.cached("layer", || {
        let mut acc = Group::trivial(g.degree());
        if is_soluble(g)? {
            return Ok(acc);
        }
        for s in subnormal_subgroups(g)? {
            if !s.is_subgroup_of(&acc) && is_quasisimple(&s)? {
                acc = acc.join(&s);
            }
        }
        Ok(acc)
    })
}

/// `(E(G), F*(G))` with `F*(G) = F(G) E(G)`.
pub fn layer_and_f_star(g: &Group) -> Result<(Group, Group)> {
    let e = layer(g)?;
    let fs = g.cached("f_star", || {
        let fs = fitting(g)?.join(&e);
        debug_assert!(centralizer(g, &fs)?.is_subgroup_of(&fs));
        Ok(fs)
    })?;
    Ok((e, fs))
}

pub fn f_star(g: &Group) -> Result<Group> {
    Ok(layer_and_f_star(g)?.1)
}

/// `F*_p(G)`, read as the preimage of `F*(G/O_{p'}(G))`.
pub fn f_p_star(g: &Group, p: u64) -> Result<Group> {
    g.cached(&format!("f_p_star:{p}"), || {
        let opp = o_p_prime(g, p)?;
        let epi = quotient_or_self(g, &opp)?;
        let result = epi.preimage(&f_star(epi.codomain())?)?;
        if opp.is_trivial() && is_p_soluble(g, p)? {
            debug_assert!(result.same_elements(&o_p(g, p)?));
        }
        Ok(result)
    })
}

fn cyclic_factor(order: u64) -> bool {
    crate::arith::is_prime(order)
}

fn p_admissible(order: u64, p: u64) -> bool {
    order == p || !order.is_multiple_of(p)
}

fn hypercenter(g: &Group, admissible: impl Fn(u64) -> bool) -> Result<Group> {
    let mut z = Group::trivial(g.degree());
    loop {
        let epi = quotient_or_self(g, &z)?;
        let q = epi.codomain();
        let mut m = Group::trivial(q.degree());
        for n in minimal_normal_subgroups(q)?.iter() {
            if admissible(n.order()) && !n.is_subgroup_of(&m) {
                m = m.join(n);
            }
        }
        if m.is_trivial() {
            break;
        }
        z = epi.preimage(&m)?;
    }
    debug_assert!(chief_list(g)?
        .iter()
        .filter(|c| c.upper.is_subgroup_of(&z))
        .all(|c| admissible(c.factor_order)));
    Ok(z)
}

/// `Z_U(G)`: the largest normal subgroup all of whose chief factors below it
/// are cyclic.
pub fn hypercenter_u(g: &Group) -> Result<Group> {
    g.cached("z_u", || hypercenter(g, cyclic_factor))
}

/// `Z_pU(G)`: as [`hypercenter_u`] but only `p`-chief factors must be cyclic.
pub fn hypercenter_pu(g: &Group, p: u64) -> Result<Group> {
    g.cached(&format!("z_pu:{p}"), || {
        hypercenter(g, |o| p_admissible(o, p))
    })
}

pub fn is_supersoluble(g: &Group) -> Result<bool> {
    Ok(chief_list(g)?.iter().all(|c| cyclic_factor(c.factor_order)))
}

pub fn is_p_supersoluble(g: &Group, p: u64) -> Result<bool> {
    Ok(chief_list(g)?
        .iter()
        .all(|c| p_admissible(c.factor_order, p)))
}

pub fn is_p_soluble(g: &Group, p: u64) -> Result<bool> {
    Ok(chief_list(g)?
        .iter()
        .all(|c| is_power_of(c.factor_order, p) || c.factor_order % p != 0))
}

pub fn is_p_nilpotent(g: &Group, p: u64) -> Result<bool> {
    let pprime = g.order() / p_part(g.order(), p);
    Ok(o_p_prime(g, p)?.order() == pprime)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub supersoluble: bool,
    pub p_supersoluble: bool,
    pub p_nilpotent: bool,
    pub p_soluble: bool,
    pub nilpotent: bool,
}

pub fn classify(g: &Group, p: u64) -> Result<Classification> {
    Ok(Classification {
        supersoluble: is_supersoluble(g)?,
        p_supersoluble: is_p_supersoluble(g, p)?,
        p_nilpotent: is_p_nilpotent(g, p)?,
        p_soluble: is_p_soluble(g, p)?,
        nilpotent: fitting(g)?.order() == g.order(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TowerLabel {
    Center,
    Derived,
    Frattini,
    Omega,
    OPi,
    Fitting,
    Layer,
    FStar,
    FPStar,
    ZU,
    ZPU,
    Sylow,
    NormalClosure,
    Core,
}

/// A named characteristic subgroup with its parameters.
#[derive(Debug, Clone)]
pub struct TowerEntry {
    pub label: TowerLabel,
    pub subgroup: Group,
    pub parameters: Option<PrimeSet>,
}

/// The standard tower of `g`; per-prime entries cover every prime of `|G|`.
pub fn tower(g: &Group) -> Result<Vec<TowerEntry>> {
    let entry = |label, subgroup, parameters| TowerEntry {
        label,
        subgroup,
        parameters,
    };
    let mut out = vec![
        entry(TowerLabel::Center, center(g)?, None),
        entry(TowerLabel::Derived, derived_subgroup(g)?, None),
        entry(TowerLabel::Fitting, fitting(g)?, None),
        entry(TowerLabel::Layer, layer(g)?, None),
        entry(TowerLabel::FStar, f_star(g)?, None),
        entry(TowerLabel::ZU, hypercenter_u(g)?, None),
    ];
    if g.order() <= crate::config::limits().subgroup_bound || g.p_group_prime().is_some() {
        out.push(entry(TowerLabel::Frattini, frattini(g)?, None));
    }
    for p in prime_divisors(g.order()) {
        let ps = Some(PrimeSet::new(vec![p]));
        out.push(entry(TowerLabel::OPi, o_p(g, p)?, ps.clone()));
        out.push(entry(TowerLabel::FPStar, f_p_star(g, p)?, ps.clone()));
        out.push(entry(TowerLabel::ZPU, hypercenter_pu(g, p)?, ps.clone()));
        out.push(entry(TowerLabel::Sylow, sylow(g, p)?, ps));
    }
    debug_assert!(out
        .iter()
        .filter(|e| e.label != TowerLabel::Sylow)
        .all(|e| e.subgroup.is_normal_in(g)));
    Ok(out)
}
