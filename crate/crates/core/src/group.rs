//! Permutation groups backed by a stabilizer chain.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::chain::StabChain;
use crate::config;
use crate::error::{GroupError, Result};
use crate::perm::{parse_cycles, Permutation};

/// An immutable permutation group.
///
/// Cloning is cheap. Lazily computed data (element list, fingerprint, lattice
/// caches) lives behind synchronized cells, so a `Group` may be shared across
/// threads.
#[derive(Clone)]
pub struct Group {
    inner: Arc<GroupInner>,
}

struct GroupInner {
    degree: usize,
    generators: Vec<Permutation>,
    chain: StabChain,
    order: u64,
    elements: OnceLock<Arc<[Permutation]>>,
    fingerprint: OnceLock<u64>,
    memo: Memo,
}

impl Group {
    /// Builds the group generated by `gens` on `degree` points.
    pub fn from_generators(degree: usize, gens: &[Permutation]) -> Result<Group> {
        for g in gens {
            if g.degree() != degree {
                return Err(GroupError::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
        }
        let mut kept: Vec<Permutation> = Vec::new();
        for g in gens {
            if !g.is_identity() && !kept.contains(g) {
                kept.push(g.clone());
            }
        }
        let chain = StabChain::new(degree, &kept);
        let order = chain
            .order()
            .ok_or_else(|| GroupError::capacity("group order", u64::MAX, u64::MAX))?;
        Ok(Group::assemble(degree, kept, chain, order))
    }

    /// Parses each generator in cycle notation.
    pub fn from_cycle_texts<S: AsRef<str>>(degree: usize, texts: &[S]) -> Result<Group> {
        let gens = texts
            .iter()
            .map(|t| parse_cycles(t.as_ref(), degree))
            .collect::<Result<Vec<_>>>()?;
        Group::from_generators(degree, &gens)
    }

    fn assemble(
        degree: usize,
        generators: Vec<Permutation>,
        chain: StabChain,
        order: u64,
    ) -> Group {
        Group {
            inner: Arc::new(GroupInner {
                degree,
                generators,
                chain,
                order,
                elements: OnceLock::new(),
                fingerprint: OnceLock::new(),
                memo: Memo::default(),
            }),
        }
    }

    pub fn trivial(degree: usize) -> Group {
        Group::from_generators(degree, &[]).expect("trivial group")
    }

    pub fn degree(&self) -> usize {
        self.inner.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.inner.generators
    }

    pub fn strong_generators(&self) -> &[Permutation] {
        &self.inner.chain.strong
    }

    /// Base points, 1-based.
    pub fn base(&self) -> Vec<usize> {
        self.inner
            .chain
            .base()
            .into_iter()
            .map(|b| b as usize + 1)
            .collect()
    }

    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.inner
            .chain
            .levels
            .iter()
            .map(|l| l.orbit.len())
            .collect()
    }

    pub fn order(&self) -> u64 {
        self.inner.order
    }

    pub fn is_trivial(&self) -> bool {
        self.inner.order == 1
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree())
    }

    pub fn contains(&self, g: &Permutation) -> Result<bool> {
        if g.degree() != self.degree() {
            return Err(GroupError::DegreeMismatch {
                left: self.degree(),
                right: g.degree(),
            });
        }
        Ok(self.inner.chain.contains(g))
    }

    /// Membership without the degree check; `false` on mismatch.
    #[inline]
    pub(crate) fn has(&self, g: &Permutation) -> bool {
        g.degree() == self.degree() && self.inner.chain.contains(g)
    }

    /// All elements, sorted lexicographically by image array.
    pub fn elements(&self) -> Result<Arc<[Permutation]>> {
        self.elements_within(config::limits().enumeration_bound)
    }

    pub fn elements_within(&self, bound: u64) -> Result<Arc<[Permutation]>> {
        if let Some(e) = self.inner.elements.get() {
            return Ok(e.clone());
        }
        if self.order() > bound {
            return Err(GroupError::capacity(
                "group order for enumeration",
                bound,
                self.order(),
            ));
        }
        let mut els = self.inner.chain.elements();
        els.sort_unstable();
        let arc: Arc<[Permutation]> = els.into();
        let _ = self.inner.elements.set(arc.clone());
        Ok(self.inner.elements.get().cloned().unwrap_or(arc))
    }

    /// Canonical hash of the element set (FNV-1a over the sorted image arrays).
    pub fn fingerprint(&self) -> Result<u64> {
        if let Some(&f) = self.inner.fingerprint.get() {
            return Ok(f);
        }
        let els = self.elements()?;
        let f = fingerprint_of_sorted(self.degree(), els.iter());
        let _ = self.inner.fingerprint.set(f);
        Ok(f)
    }

    pub fn is_subgroup_of(&self, other: &Group) -> bool {
        self.degree() == other.degree()
            && self.order() <= other.order()
            && other.order().is_multiple_of(self.order())
            && self.generators().iter().all(|g| other.has(g))
    }

    /// Equality as element sets.
    pub fn same_elements(&self, other: &Group) -> bool {
        self.degree() == other.degree()
            && self.order() == other.order()
            && self.generators().iter().all(|g| other.has(g))
    }

    /// The subgroup generated by `gens`, which must lie in `self`.
    pub fn subgroup(&self, gens: &[Permutation]) -> Result<Group> {
        for g in gens {
            if !self.contains(g)? {
                return Err(GroupError::NotSubgroup(format!(
                    "generator {g} is not in the ambient group"
                )));
            }
        }
        Group::from_generators(self.degree(), gens)
    }

    pub fn subgroup_from_texts<S: AsRef<str>>(&self, texts: &[S]) -> Result<Group> {
        let gens = texts
            .iter()
            .map(|t| parse_cycles(t.as_ref(), self.degree()))
            .collect::<Result<Vec<_>>>()?;
        self.subgroup(&gens)
    }

    /// `<self, g>`.
    pub fn extended(&self, g: &Permutation) -> Group {
        if self.has(g) {
            return self.clone();
        }
        let mut chain = self.inner.chain.clone();
        chain.add_generator(g);
        let mut gens = self.generators().to_vec();
        gens.push(g.clone());
        let order = chain.order().expect("order fits");
        Group::assemble(self.degree(), gens, chain, order)
    }

    /// `<self, other>`.
    pub fn join(&self, other: &Group) -> Group {
        if other.is_subgroup_of(self) {
            return self.clone();
        }
        if self.is_subgroup_of(other) {
            return other.clone();
        }
        let mut chain = self.inner.chain.clone();
        let mut gens = self.generators().to_vec();
        for g in other.generators() {
            if !chain.contains(g) {
                chain.add_generator(g);
                gens.push(g.clone());
            }
        }
        let order = chain.order().expect("order fits");
        Group::assemble(self.degree(), gens, chain, order)
    }

    /// Subgroup generated by a list of its own elements, using a greedy
    /// generating set.
    pub(crate) fn from_element_list(degree: usize, elements: &[Permutation]) -> Group {
        let target = elements.len() as u64;
        let mut g = Group::trivial(degree);
        for x in elements {
            if g.order() == target {
                break;
            }
            if !g.has(x) {
                g = g.extended(x);
            }
        }
        g
    }

    /// Element-level intersection.
    pub fn intersection(&self, other: &Group) -> Result<Group> {
        if self.degree() != other.degree() {
            return Err(GroupError::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        if self.is_subgroup_of(other) {
            return Ok(self.clone());
        }
        if other.is_subgroup_of(self) {
            return Ok(other.clone());
        }
        let (small, large) = if self.order() <= other.order() {
            (self, other)
        } else {
            (other, self)
        };
        let els = small.elements()?;
        let common: Vec<Permutation> = els.iter().filter(|x| large.has(x)).cloned().collect();
        Ok(Group::from_element_list(self.degree(), &common))
    }

    /// `x^-1 self x`.
    pub fn conjugate(&self, x: &Permutation) -> Group {
        let gens: Vec<Permutation> = self
            .generators()
            .iter()
            .map(|g| g.conjugate_by(x))
            .collect();
        Group::from_generators(self.degree(), &gens).expect("conjugate")
    }

    /// Whether every generator of `ambient` normalizes `self`.
    pub fn is_normal_in(&self, ambient: &Group) -> bool {
        self.is_subgroup_of(ambient) && self.is_normalized_by(ambient.generators())
    }

    pub(crate) fn is_normalized_by(&self, xs: &[Permutation]) -> bool {
        xs.iter().all(|x| {
            self.generators()
                .iter()
                .all(|h| self.has(&h.conjugate_by(x)))
        })
    }

    pub fn is_abelian(&self) -> bool {
        let g = self.generators();
        g.iter()
            .enumerate()
            .all(|(i, a)| g[i + 1..].iter().all(|b| a.then(b) == b.then(a)))
    }

    /// The prime `p` when the order is `p^k`, `k >= 1`.
    pub fn p_group_prime(&self) -> Option<u64> {
        crate::arith::prime_power_base(self.order())
    }

    pub fn is_p_group(&self, p: u64) -> bool {
        crate::arith::is_power_of(self.order(), p)
    }

    /// Generators in cycle notation.
    pub fn generator_texts(&self) -> Vec<String> {
        self.generators().iter().map(|g| g.to_string()).collect()
    }

    /// Index of each element in the sorted element list.
    pub(crate) fn element_index(&self) -> Result<Arc<HashMap<Permutation, u32>>> {
        if let Some(ix) = self.memo().index.get() {
            return Ok(ix.clone());
        }
        let els = self.elements()?;
        let ix: HashMap<Permutation, u32> = els
            .iter()
            .enumerate()
            .map(|(i, g)| (g.clone(), i as u32))
            .collect();
        let arc = Arc::new(ix);
        let _ = self.memo().index.set(arc.clone());
        Ok(arc)
    }

    pub(crate) fn memo(&self) -> &Memo {
        &self.inner.memo
    }

    /// Memoized named subgroup.
    pub(crate) fn cached(&self, key: &str, f: impl FnOnce() -> Result<Group>) -> Result<Group> {
        if let Some(g) = self.memo().named.lock().unwrap().get(key) {
            return Ok(g.clone());
        }
        let g = f()?;
        self.memo()
            .named
            .lock()
            .unwrap()
            .entry(key.to_string())
            .or_insert(g.clone());
        Ok(g)
    }
}

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        self.same_elements(other)
    }
}

impl Eq for Group {}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Group(order {}, degree {}, <",
            self.order(),
            self.degree()
        )?;
        for (i, g) in self.generators().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ">)")
    }
}

pub(crate) fn fingerprint_of_sorted<'a>(
    degree: usize,
    els: impl Iterator<Item = &'a Permutation>,
) -> u64 {
    const OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
    const PRIME: u64 = 0x0000_0100_0000_01b3;
    let mut h = OFFSET;
    let mut eat = |x: u64| {
        for b in x.to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(PRIME);
        }
    };
    eat(degree as u64);
    for e in els {
        for &x in e.raw() {
            eat(x as u64);
        }
    }
    h
}

/// Map keyed by subgroup, hashed by fingerprint and confirmed by element equality.
pub(crate) struct GroupMap<V> {
    buckets: HashMap<u64, Vec<(Group, V)>>,
}

impl<V> Default for GroupMap<V> {
    fn default() -> Self {
        GroupMap {
            buckets: HashMap::new(),
        }
    }
}

impl<V: Clone> GroupMap<V> {
    pub(crate) fn get(&self, key: &Group) -> Option<V> {
        let fp = key.fingerprint().ok()?;
        self.buckets
            .get(&fp)?
            .iter()
            .find(|(g, _)| g.same_elements(key))
            .map(|(_, v)| v.clone())
    }

    pub(crate) fn insert(&mut self, key: Group, value: V) {
        let Ok(fp) = key.fingerprint() else { return };
        let bucket = self.buckets.entry(fp).or_default();
        if !bucket.iter().any(|(g, _)| g.same_elements(&key)) {
            bucket.push((key, value));
        }
    }
}

/// Per-group caches. Nothing stored here may hold a reference back to the
/// owning group.
#[derive(Default)]
pub(crate) struct Memo {
    pub(crate) index: OnceLock<Arc<HashMap<Permutation, u32>>>,
    pub(crate) normal: OnceLock<Arc<Vec<Group>>>,
    pub(crate) chief: OnceLock<Arc<Vec<crate::lattice::ChiefFactorPair>>>,
    pub(crate) all_subgroups: OnceLock<Arc<Vec<Group>>>,
    pub(crate) table: OnceLock<Arc<crate::lattice::ElementTable>>,
    pub(crate) named: Mutex<HashMap<String, Group>>,
    pub(crate) quotients: Mutex<GroupMap<crate::constructions::QuotientData>>,
    pub(crate) pi: Mutex<GroupMap<crate::properties::PropertyReport>>,
    pub(crate) ic_pi: Mutex<GroupMap<crate::properties::PropertyReport>>,
    pub(crate) sylows: Mutex<HashMap<u64, Arc<Vec<Group>>>>,
    pub(crate) pair_images: OnceLock<Arc<Vec<crate::properties::PairImage>>>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(deg: usize, gens: &[&str]) -> Group {
        Group::from_cycle_texts(deg, gens).unwrap()
    }

    #[test]
    fn small_orders() {
        assert_eq!(g(3, &["(1,2)", "(1,2,3)"]).order(), 6);
        assert_eq!(g(4, &[]).order(), 1);
        assert_eq!(g(5, &["(1,2,3,4,5)", "(1,2)"]).order(), 120);
        assert_eq!(g(5, &["(1,2,3)", "(2,3,4)", "(3,4,5)"]).order(), 60);
        assert_eq!(g(8, &["(1,2,3,4,5,6,7,8)", "(1,2)"]).order(), 40320);
    }

    #[test]
    fn membership() {
        let s3 = g(3, &["(1,2)", "(1,2,3)"]);
        assert!(s3.contains(&parse_cycles("(1,3,2)", 3).unwrap()).unwrap());
        let a4 = g(4, &["(1,2,3)", "(2,3,4)"]);
        assert!(!a4.contains(&parse_cycles("(1,2)", 4).unwrap()).unwrap());
        assert!(a4.contains(&a4.identity()).unwrap());
        assert!(a4.contains(&Permutation::identity(3)).is_err());
    }

    #[test]
    fn elements_sorted_and_bounded() {
        let s3 = g(3, &["(1,2)", "(1,2,3)"]);
        let els = s3.elements().unwrap();
        assert_eq!(els.len(), 6);
        assert!(els.windows(2).all(|w| w[0] < w[1]));
        assert!(els[0].is_identity());
        let t = Group::trivial(3);
        assert_eq!(t.elements().unwrap().len(), 1);
        let big = g(8, &["(1,2,3,4,5,6,7,8)", "(1,2)"]);
        assert!(matches!(
            big.elements(),
            Err(GroupError::Capacity { bound: 20000, .. })
        ));
    }

    #[test]
    fn degree_mismatch() {
        let a = parse_cycles("(1,2)", 2).unwrap();
        let b = parse_cycles("(1,2,3)", 3).unwrap();
        assert!(Group::from_generators(3, &[a, b]).is_err());
    }

    #[test]
    fn fingerprints_ignore_generating_set() {
        let a = g(3, &["(1,2)", "(1,2,3)"]);
        let b = g(3, &["(2,3)", "(1,3)"]);
        assert_eq!(a.fingerprint().unwrap(), b.fingerprint().unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn intersection_and_join() {
        let s4 = g(4, &["(1,2,3,4)", "(1,2)"]);
        let a4 = g(4, &["(1,2,3)", "(2,3,4)"]);
        let d8 = g(4, &["(1,2,3,4)", "(1,3)"]);
        assert_eq!(a4.intersection(&d8).unwrap().order(), 4);
        assert_eq!(a4.join(&d8), s4);
    }
}
