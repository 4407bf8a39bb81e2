//! Normal subgroups, chief factor pairs and exhaustive subgroup enumeration.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::arith::{is_power_of, PrimeSet};
use crate::config;
use crate::error::{GroupError, Result};
use crate::group::{Group, GroupMap};
use crate::perm::Permutation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Completeness {
    Exhaustive,
    BoundedIncomplete,
}

/// Subgroups of an ambient group, distinct as element sets.
#[derive(Debug, Clone)]
pub struct SubgroupSet {
    pub ambient: Group,
    pub members: Vec<Group>,
    pub completeness: Completeness,
}

impl SubgroupSet {
    fn exhaustive(ambient: &Group, members: Vec<Group>) -> Self {
        SubgroupSet {
            ambient: ambient.clone(),
            members,
            completeness: Completeness::Exhaustive,
        }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Group> {
        self.members.iter()
    }

    pub fn contains(&self, h: &Group) -> bool {
        self.members.iter().any(|m| m.same_elements(h))
    }
}

/// A covering pair `K < L` of normal subgroups of the ambient group.
#[derive(Debug, Clone)]
pub struct ChiefFactorPair {
    pub lower: Group,
    pub upper: Group,
    /// Positions of `lower` and `upper` in [`normal_subgroups`].
    pub lower_index: usize,
    pub upper_index: usize,
    pub factor_order: u64,
    pub primes: PrimeSet,
}

impl ChiefFactorPair {
    pub fn is_p_chief(&self, p: u64) -> bool {
        self.primes.contains(p)
    }

    pub fn is_cyclic_of_prime_order(&self) -> bool {
        self.primes.primes().len() == 1 && self.primes.primes()[0] == self.factor_order
    }
}

pub(crate) fn sort_by_order_and_fingerprint(v: &mut [Group]) -> Result<()> {
    let mut keyed: Vec<(u64, u64, usize)> = Vec::with_capacity(v.len());
    for (i, g) in v.iter().enumerate() {
        keyed.push((g.order(), g.fingerprint()?, i));
    }
    keyed.sort_unstable();
    let sorted: Vec<Group> = keyed.iter().map(|k| v[k.2].clone()).collect();
    v.clone_from_slice(&sorted);
    Ok(())
}

/// Removes repeated subgroups and sorts by `(order, fingerprint)`.
pub(crate) fn dedup_subgroups(v: impl IntoIterator<Item = Group>) -> Result<Vec<Group>> {
    let mut seen: GroupMap<()> = GroupMap::default();
    let mut out = Vec::new();
    for h in v {
        if seen.get(&h).is_none() {
            seen.insert(h.clone(), ());
            out.push(h);
        }
    }
    sort_by_order_and_fingerprint(&mut out)?;
    Ok(out)
}

/// Normal closure by closing generators under conjugation by `g`'s generators.
pub(crate) fn close_normally(g: &Group, mut n: Group) -> Group {
    loop {
        let mut grew = false;
        'outer: for h in n.generators().to_vec() {
            for x in g.generators() {
                let c = h.conjugate_by(x);
                if !n.has(&c) {
                    n = n.extended(&c);
                    grew = true;
                    break 'outer;
                }
            }
        }
        if !grew {
            return n;
        }
    }
}

/// Representatives of the conjugacy classes, smallest element of each class.
pub fn class_representatives(g: &Group) -> Result<Vec<Permutation>> {
    let els = g.elements()?;
    let ix = g.element_index()?;
    let mut seen = vec![false; els.len()];
    let mut reps = Vec::new();
    for (i, x) in els.iter().enumerate() {
        if seen[i] {
            continue;
        }
        reps.push(x.clone());
        let mut queue = vec![x.clone()];
        seen[i] = true;
        while let Some(y) = queue.pop() {
            for s in g.generators() {
                let c = y.conjugate_by(s);
                let j = ix[&c] as usize;
                if !seen[j] {
                    seen[j] = true;
                    queue.push(c);
                }
            }
        }
    }
    Ok(reps)
}

/// All normal subgroups, sorted by `(order, fingerprint)`.
pub fn normal_subgroups(g: &Group) -> Result<SubgroupSet> {
    Ok(SubgroupSet::exhaustive(g, normal_list(g)?.to_vec()))
}

pub(crate) fn normal_list(g: &Group) -> Result<Arc<Vec<Group>>> {
    if let Some(v) = g.memo().normal.get() {
        return Ok(v.clone());
    }
    let trivial = Group::trivial(g.degree());
    let mut closures: Vec<Group> = Vec::new();
    let mut seen: GroupMap<()> = GroupMap::default();
    for r in class_representatives(g)? {
        if r.is_identity() {
            continue;
        }
        let c = close_normally(g, Group::from_generators(g.degree(), &[r])?);
        if seen.get(&c).is_none() {
            seen.insert(c.clone(), ());
            closures.push(c);
        }
    }
    let mut all = vec![trivial.clone()];
    let mut found: GroupMap<()> = GroupMap::default();
    found.insert(trivial, ());
    let mut i = 0;
    while i < all.len() {
        let a = all[i].clone();
        for c in &closures {
            if c.is_subgroup_of(&a) {
                continue;
            }
            let j = a.join(c);
            if found.get(&j).is_none() {
                found.insert(j.clone(), ());
                all.push(j);
            }
        }
        i += 1;
    }
    sort_by_order_and_fingerprint(&mut all)?;
    let arc = Arc::new(all);
    let _ = g.memo().normal.set(arc.clone());
    Ok(g.memo().normal.get().cloned().unwrap_or(arc))
}

/// The minimal normal subgroups.
pub fn minimal_normal_subgroups(g: &Group) -> Result<SubgroupSet> {
    let members = chief_list(g)?
        .iter()
        .filter(|c| c.lower_index == 0)
        .map(|c| c.upper.clone())
        .collect();
    Ok(SubgroupSet::exhaustive(g, members))
}

/// Every covering pair of the normal lattice, ordered by the positions of
/// `(lower, upper)` in the sorted normal list.
pub fn chief_factor_pairs(g: &Group) -> Result<Vec<ChiefFactorPair>> {
    Ok(chief_list(g)?.to_vec())
}

pub(crate) fn chief_list(g: &Group) -> Result<Arc<Vec<ChiefFactorPair>>> {
    if let Some(v) = g.memo().chief.get() {
        return Ok(v.clone());
    }
    let normals = normal_list(g)?;
    let n = normals.len();
    let below: Vec<Vec<bool>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| i != j && normals[i].is_subgroup_of(&normals[j]))
                .collect()
        })
        .collect();
    let mut pairs = Vec::new();
    for k in 0..n {
        for l in 0..n {
            if !below[k][l] {
                continue;
            }
            let covered = (0..n).any(|m| below[k][m] && below[m][l]);
            if covered {
                continue;
            }
            let factor_order = normals[l].order() / normals[k].order();
            pairs.push(ChiefFactorPair {
                lower: normals[k].clone(),
                upper: normals[l].clone(),
                lower_index: k,
                upper_index: l,
                factor_order,
                primes: PrimeSet::of(factor_order),
            });
        }
    }
    let arc = Arc::new(pairs);
    let _ = g.memo().chief.set(arc.clone());
    Ok(g.memo().chief.get().cloned().unwrap_or(arc))
}

type Bits = Vec<u64>;

fn bit(b: &Bits, i: u32) -> bool {
    b[(i / 64) as usize] >> (i % 64) & 1 == 1
}

fn set_bit(b: &mut Bits, i: u32) {
    b[(i / 64) as usize] |= 1 << (i % 64);
}

/// Multiplication table over the sorted element list.
pub(crate) struct ElementTable {
    n: usize,
    mul: Vec<u32>,
    elements: Arc<[Permutation]>,
}

impl ElementTable {
    fn build(g: &Group) -> Result<Self> {
        let elements = g.elements()?;
        let ix = g.element_index()?;
        let n = elements.len();
        let mut mul = vec![0u32; n * n];
        for (a, x) in elements.iter().enumerate() {
            for (b, y) in elements.iter().enumerate() {
                mul[a * n + b] = ix[&x.then(y)];
            }
        }
        Ok(ElementTable { n, mul, elements })
    }

    fn words(&self) -> usize {
        self.n.div_ceil(64)
    }

    /// `<base, extra>` where `base` is a subgroup with the given generators.
    fn close(&self, base: &Bits, base_gens: &[u32], extra: u32) -> (Bits, Vec<u32>) {
        let mut bits = base.clone();
        let mut list: Vec<u32> = (0..self.n as u32).filter(|&i| bit(base, i)).collect();
        let mut gens = base_gens.to_vec();
        gens.push(extra);
        let mut k = 0;
        while k < list.len() {
            let x = list[k] as usize;
            for &y in &gens {
                let z = self.mul[x * self.n + y as usize];
                if !bit(&bits, z) {
                    set_bit(&mut bits, z);
                    list.push(z);
                }
            }
            k += 1;
        }
        (bits, gens)
    }
}

fn element_table(g: &Group) -> Result<Arc<ElementTable>> {
    if let Some(t) = g.memo().table.get() {
        return Ok(t.clone());
    }
    let t = Arc::new(ElementTable::build(g)?);
    let _ = g.memo().table.set(t.clone());
    Ok(g.memo().table.get().cloned().unwrap_or(t))
}

fn check_subgroup_bound(g: &Group) -> Result<()> {
    let bound = config::limits().subgroup_bound;
    if g.order() > bound {
        return Err(GroupError::capacity(
            "group order for subgroup enumeration",
            bound,
            g.order(),
        ));
    }
    Ok(())
}

/// Every subgroup, sorted by `(order, fingerprint)`. Found by repeatedly
/// joining cyclic subgroups onto subgroups already found.
pub fn all_subgroups(g: &Group) -> Result<SubgroupSet> {
    Ok(SubgroupSet::exhaustive(g, subgroup_list(g)?.to_vec()))
}

pub(crate) fn subgroup_list(g: &Group) -> Result<Arc<Vec<Group>>> {
    if let Some(v) = g.memo().all_subgroups.get() {
        return Ok(v.clone());
    }
    check_subgroup_bound(g)?;
    let table = element_table(g)?;
    let n = table.n;
    let words = table.words();
    let identity = 0u32;
    debug_assert!(table.elements[0].is_identity());

    let mut trivial: Bits = vec![0; words];
    set_bit(&mut trivial, identity);
    let mut cyclic_gens: Vec<u32> = Vec::new();
    let mut cyclic_seen: HashSet<Bits> = HashSet::new();
    for x in 1..n as u32 {
        let (c, _) = table.close(&trivial, &[], x);
        if cyclic_seen.insert(c) {
            cyclic_gens.push(x);
        }
    }

    let mut subgroups: Vec<(Bits, Vec<u32>)> = vec![(trivial.clone(), vec![])];
    let mut index: HashMap<Bits, usize> = HashMap::new();
    index.insert(trivial, 0);
    let mut i = 0;
    while i < subgroups.len() {
        let (bits, gens) = subgroups[i].clone();
        for &c in &cyclic_gens {
            if bit(&bits, c) {
                continue;
            }
            let (j, jg) = table.close(&bits, &gens, c);
            if !index.contains_key(&j) {
                index.insert(j.clone(), subgroups.len());
                subgroups.push((j, jg));
            }
        }
        i += 1;
    }

    let mut groups = Vec::with_capacity(subgroups.len());
    for (_, gens) in &subgroups {
        let perms: Vec<Permutation> = gens
            .iter()
            .map(|&k| table.elements[k as usize].clone())
            .collect();
        groups.push(Group::from_generators(g.degree(), &perms)?);
    }
    sort_by_order_and_fingerprint(&mut groups)?;
    let arc = Arc::new(groups);
    let _ = g.memo().all_subgroups.set(arc.clone());
    Ok(g.memo().all_subgroups.get().cloned().unwrap_or(arc))
}

/// Every subgroup of order `n`.
pub fn subgroups_of_order(g: &Group, n: u64) -> Result<SubgroupSet> {
    if n == 0 || !g.order().is_multiple_of(n) {
        return Err(GroupError::InvalidParameter(format!(
            "{n} does not divide the group order {}",
            g.order()
        )));
    }
    if n == g.order() {
        return Ok(SubgroupSet::exhaustive(g, vec![g.clone()]));
    }
    if n == 1 {
        return Ok(SubgroupSet::exhaustive(g, vec![Group::trivial(g.degree())]));
    }
    let members = subgroup_list(g)?
        .iter()
        .filter(|h| h.order() == n)
        .cloned()
        .collect();
    Ok(SubgroupSet::exhaustive(g, members))
}

/// Every `p`-subgroup, the trivial subgroup included.
pub fn p_subgroups(g: &Group, p: u64) -> Result<SubgroupSet> {
    let members = subgroup_list(g)?
        .iter()
        .filter(|h| h.order() == 1 || is_power_of(h.order(), p))
        .cloned()
        .collect();
    Ok(SubgroupSet::exhaustive(g, members))
}

/// The cyclic subgroups, each once.
pub fn cyclic_subgroups(g: &Group) -> Result<SubgroupSet> {
    let els = g.elements()?;
    let mut seen: GroupMap<()> = GroupMap::default();
    let mut members = Vec::new();
    for x in els.iter() {
        let c = Group::from_generators(g.degree(), std::slice::from_ref(x))?;
        if seen.get(&c).is_none() {
            seen.insert(c.clone(), ());
            members.push(c);
        }
    }
    sort_by_order_and_fingerprint(&mut members)?;
    Ok(SubgroupSet::exhaustive(g, members))
}

/// The maximal subgroups of a `p`-group, as kernels of the nonzero linear
/// functionals on `P/Φ(P)` taken up to scalars.
pub fn maximal_subgroups_p_group(pg: &Group) -> Result<SubgroupSet> {
    if pg.is_trivial() {
        return Ok(SubgroupSet::exhaustive(pg, vec![]));
    }
    let p = pg
        .p_group_prime()
        .ok_or_else(|| GroupError::NotPGroup(format!("order {}", pg.order())))?;
    let phi = crate::characteristic::frattini(pg)?;
    let mut span = phi.clone();
    let mut basis: Vec<Permutation> = Vec::new();
    for x in pg.generators().iter().chain(pg.strong_generators()) {
        if !span.has(x) {
            span = span.extended(x);
            basis.push(x.clone());
        }
    }
    debug_assert_eq!(span.order(), pg.order());
    let r = basis.len();
    let mut members = Vec::new();
    for k in 0..r {
        let tail = r - k - 1;
        let count = (p as usize).pow(tail as u32);
        for code in 0..count {
            let mut coeffs = Vec::with_capacity(tail);
            let mut c = code;
            for _ in 0..tail {
                coeffs.push((c % p as usize) as u64);
                c /= p as usize;
            }
            let mut gens: Vec<Permutation> = phi.generators().to_vec();
            gens.extend(basis[..k].iter().cloned());
            for (t, &f) in coeffs.iter().enumerate() {
                let i = k + 1 + t;
                gens.push(basis[i].then(&basis[k].pow((p - f) % p)));
            }
            let m = Group::from_generators(pg.degree(), &gens)?;
            debug_assert_eq!(m.order() * p, pg.order());
            members.push(m);
        }
    }
    sort_by_order_and_fingerprint(&mut members)?;
    Ok(SubgroupSet::exhaustive(pg, members))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{named_group, Family};

    fn grp(name: &str) -> Group {
        crate::constructions::spec_by_name(name)
            .unwrap()
            .build()
            .unwrap()
    }

    /// Subsets closed under multiplication, by brute force over all subsets
    /// of a tiny group.
    fn brute_subgroups(g: &Group) -> Vec<Vec<Permutation>> {
        let els = g.elements().unwrap();
        let n = els.len();
        assert!(n <= 16);
        let mut out = Vec::new();
        for mask in 1u32..(1 << n) {
            if mask & 1 == 0 {
                continue;
            }
            let set: Vec<&Permutation> = (0..n)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| &els[i])
                .collect();
            let closed = set
                .iter()
                .all(|a| set.iter().all(|b| set.contains(&&a.then(b))));
            if closed {
                out.push(set.into_iter().cloned().collect());
            }
        }
        out
    }

    #[test]
    fn s4_normal_lattice() {
        let s4 = grp("Sym(4)");
        let orders: Vec<u64> = normal_subgroups(&s4)
            .unwrap()
            .iter()
            .map(|h| h.order())
            .collect();
        assert_eq!(orders, [1, 4, 12, 24]);
        let pairs = chief_factor_pairs(&s4).unwrap();
        let pair_orders: Vec<(u64, u64)> = pairs
            .iter()
            .map(|c| (c.lower.order(), c.upper.order()))
            .collect();
        assert_eq!(pair_orders, [(1, 4), (4, 12), (12, 24)]);
        let mins = minimal_normal_subgroups(&s4).unwrap();
        assert_eq!(mins.len(), 1);
        assert_eq!(mins.members[0].order(), 4);
    }

    #[test]
    fn s4_normals_match_brute_force() {
        // conjugation-stable subgroups among all subgroups
        let s4 = grp("Sym(4)");
        let subs = all_subgroups(&s4).unwrap();
        let brute: Vec<u64> = subs
            .iter()
            .filter(|h| {
                let els = h.elements().unwrap();
                s4.elements()
                    .unwrap()
                    .iter()
                    .all(|x| els.iter().all(|y| h.has(&y.conjugate_by(x))))
            })
            .map(|h| h.order())
            .collect();
        assert_eq!(brute, [1, 4, 12, 24]);
    }

    #[test]
    fn d8_chief_pairs() {
        let d8 = grp("Dih(8)");
        assert_eq!(normal_subgroups(&d8).unwrap().len(), 6);
        assert_eq!(chief_factor_pairs(&d8).unwrap().len(), 7);
    }

    #[test]
    fn simple_and_abelian() {
        let a5 = grp("Alt(5)");
        assert_eq!(normal_subgroups(&a5).unwrap().len(), 2);
        assert_eq!(chief_factor_pairs(&a5).unwrap().len(), 1);
        let c12 = grp("Cyc(12)");
        assert_eq!(
            normal_subgroups(&c12).unwrap().len(),
            all_subgroups(&c12).unwrap().len()
        );
        let c6 = grp("Cyc(6)");
        let mins: Vec<u64> = minimal_normal_subgroups(&c6)
            .unwrap()
            .iter()
            .map(|h| h.order())
            .collect();
        assert_eq!(mins, [2, 3]);
        assert!(minimal_normal_subgroups(&Group::trivial(3))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn subgroup_counts() {
        let v4 = grp("V4");
        assert_eq!(subgroups_of_order(&v4, 2).unwrap().len(), 3);
        let q8 = grp("Q8");
        let c4s = subgroups_of_order(&q8, 4).unwrap();
        assert_eq!(c4s.len(), 3);
        assert!(c4s
            .iter()
            .all(|h| h.elements().unwrap().iter().any(|x| x.order() == 4)));
        let s4 = grp("Sym(4)");
        assert_eq!(subgroups_of_order(&s4, 24).unwrap().len(), 1);
        assert!(subgroups_of_order(&s4, 5).is_err());
        for (p, k) in [(2u64, 3u32), (2, 4), (3, 2), (3, 3), (5, 2)] {
            let e = named_group(Family::ElementaryAbelian, &[p, k as u64]).unwrap();
            assert_eq!(
                subgroups_of_order(&e, p).unwrap().len() as u64,
                (p.pow(k) - 1) / (p - 1)
            );
        }
    }

    #[test]
    fn enumeration_matches_subset_oracle() {
        for name in [
            "Sym(3)",
            "Dih(8)",
            "Q8",
            "Cyc(6)",
            "V4",
            "EA(2^3)",
            "Cyc(4)xCyc(2)",
            "Dih(10)",
            "Cyc(12)",
        ] {
            let g = grp(name);
            if g.order() > 16 {
                continue;
            }
            let brute = brute_subgroups(&g);
            let ours = all_subgroups(&g).unwrap();
            assert_eq!(brute.len(), ours.len(), "{name}");
            for s in &brute {
                let h = Group::from_element_list(g.degree(), s);
                assert_eq!(h.order(), s.len() as u64);
                assert!(ours.contains(&h), "{name}");
            }
        }
    }

    #[test]
    fn maximal_subgroups() {
        let d8 = grp("Dih(8)");
        let m = maximal_subgroups_p_group(&d8).unwrap();
        assert_eq!(m.len(), 3);
        let cyclic = m
            .iter()
            .filter(|h| h.elements().unwrap().iter().any(|x| x.order() == 4))
            .count();
        assert_eq!(cyclic, 1);
        assert_eq!(maximal_subgroups_p_group(&grp("Cyc(8)")).unwrap().len(), 1);
        assert_eq!(maximal_subgroups_p_group(&grp("EA(2^3)")).unwrap().len(), 7);
        assert!(maximal_subgroups_p_group(&grp("Sym(3)")).is_err());
        // agrees with the subgroups of index p
        for name in ["Q8", "Cyc(4)xCyc(4)", "EA(3^3)", "Dih(16)", "Cyc(4)xCyc(2)"] {
            let g = grp(name);
            let p = g.p_group_prime().unwrap();
            let by_index = subgroups_of_order(&g, g.order() / p).unwrap();
            let ours = maximal_subgroups_p_group(&g).unwrap();
            assert_eq!(by_index.len(), ours.len(), "{name}");
            assert!(ours.iter().all(|h| by_index.contains(h)));
        }
    }

    #[test]
    fn jordan_holder_on_all_maximal_chains() {
        for (spec, g) in
            crate::constructions::corpus(&crate::constructions::CorpusFilter::max_order(48))
                .unwrap()
        {
            let pairs = chief_factor_pairs(&g).unwrap();
            let top = normal_subgroups(&g).unwrap().len() - 1;
            let mut seen: Option<Vec<u64>> = None;
            let mut stack = vec![(0usize, Vec::<u64>::new())];
            let mut chains = 0;
            while let Some((at, orders)) = stack.pop() {
                if at == top {
                    let mut o = orders.clone();
                    o.sort_unstable();
                    match &seen {
                        None => seen = Some(o),
                        Some(s) => assert_eq!(s, &o, "{}", spec.name),
                    }
                    chains += 1;
                    if chains > 5000 {
                        break;
                    }
                    continue;
                }
                for c in pairs.iter().filter(|c| c.lower_index == at) {
                    let mut o = orders.clone();
                    o.push(c.factor_order);
                    stack.push((c.upper_index, o));
                }
            }
        }
    }
}
