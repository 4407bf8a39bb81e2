//! Quotients by normal subgroups and the natural epimorphisms.

use std::sync::Arc;

use crate::config;
use crate::error::{GroupError, Result};
use crate::group::Group;
use crate::perm::Permutation;

/// Right cosets `Ng` of a normal subgroup, numbered in order of their
/// smallest element. Coset 0 is `N` itself.
pub(crate) struct CosetTable {
    /// Coset number of each element, indexed like the domain's sorted element list.
    coset_of: Vec<u32>,
    reps: Vec<Permutation>,
}

/// Cached part of a quotient: everything except the domain.
#[derive(Clone)]
pub struct QuotientData {
    pub(crate) codomain: Group,
    pub(crate) kernel: Group,
    pub(crate) table: Arc<CosetTable>,
}

#[derive(Clone)]
enum MapKind {
    Identity,
    Cosets(Arc<CosetTable>),
    /// Restriction to the block `offset..offset+len` of a direct product.
    Projection {
        offset: usize,
        len: usize,
    },
}

/// A surjective homomorphism between permutation groups.
#[derive(Clone)]
pub struct Epimorphism {
    domain: Group,
    codomain: Group,
    kernel: Group,
    map: MapKind,
}

impl Epimorphism {
    pub fn identity(g: &Group) -> Epimorphism {
        Epimorphism {
            domain: g.clone(),
            codomain: g.clone(),
            kernel: Group::trivial(g.degree()),
            map: MapKind::Identity,
        }
    }

    pub(crate) fn from_quotient(domain: &Group, q: &QuotientData) -> Epimorphism {
        Epimorphism {
            domain: domain.clone(),
            codomain: q.codomain.clone(),
            kernel: q.kernel.clone(),
            map: MapKind::Cosets(q.table.clone()),
        }
    }

    pub(crate) fn projection(
        domain: &Group,
        codomain: &Group,
        kernel: &Group,
        offset: usize,
    ) -> Self {
        Epimorphism {
            domain: domain.clone(),
            codomain: codomain.clone(),
            kernel: kernel.clone(),
            map: MapKind::Projection {
                offset,
                len: codomain.degree(),
            },
        }
    }

    pub fn domain(&self) -> &Group {
        &self.domain
    }

    pub fn codomain(&self) -> &Group {
        &self.codomain
    }

    pub fn kernel(&self) -> &Group {
        &self.kernel
    }

    /// Image of a domain element.
    pub fn image(&self, g: &Permutation) -> Result<Permutation> {
        if !self.domain.contains(g)? {
            return Err(GroupError::NotSubgroup(format!("{g} is not in the domain")));
        }
        Ok(self.image_unchecked(g))
    }

    fn image_unchecked(&self, g: &Permutation) -> Permutation {
        match &self.map {
            MapKind::Identity => g.clone(),
            MapKind::Projection { offset, len } => g.restrict(*offset, *len),
            MapKind::Cosets(t) => {
                let index = self
                    .domain
                    .element_index()
                    .expect("quotient domain is enumerable");
                let images = t
                    .reps
                    .iter()
                    .map(|r| t.coset_of[index[&r.then(g)] as usize])
                    .collect();
                Permutation::from_raw(images)
            }
        }
    }

    /// `HN/N` for a subgroup `H` of the domain.
    pub fn push(&self, h: &Group) -> Result<Group> {
        if !h.is_subgroup_of(&self.domain) {
            return Err(GroupError::NotSubgroup(
                "pushed group is not in the domain".into(),
            ));
        }
        if let MapKind::Identity = self.map {
            return Ok(h.clone());
        }
        let gens: Vec<Permutation> = h
            .generators()
            .iter()
            .map(|g| self.image_unchecked(g))
            .collect();
        Group::from_generators(self.codomain.degree(), &gens)
    }

    /// Full preimage of a subgroup of the codomain.
    pub fn preimage(&self, s: &Group) -> Result<Group> {
        if !s.is_subgroup_of(&self.codomain) {
            return Err(GroupError::NotSubgroup(
                "subgroup is not in the codomain".into(),
            ));
        }
        let mut gens = self.kernel.generators().to_vec();
        match &self.map {
            MapKind::Identity => return Ok(s.clone()),
            MapKind::Cosets(t) => {
                for q in s.generators() {
                    gens.push(t.reps[q.apply0(0) as usize].clone());
                }
            }
            MapKind::Projection { offset, .. } => {
                for q in s.generators() {
                    gens.push(q.shifted(*offset, self.domain.degree()));
                }
            }
        }
        Group::from_generators(self.domain.degree(), &gens)
    }

    /// One preimage of a codomain element.
    pub fn lift(&self, q: &Permutation) -> Result<Permutation> {
        if !self.codomain.contains(q)? {
            return Err(GroupError::NotSubgroup(format!(
                "{q} is not in the codomain"
            )));
        }
        Ok(match &self.map {
            MapKind::Identity => q.clone(),
            MapKind::Cosets(t) => t.reps[q.apply0(0) as usize].clone(),
            MapKind::Projection { offset, .. } => q.shifted(*offset, self.domain.degree()),
        })
    }
}

fn build_quotient(g: &Group, n: &Group) -> Result<QuotientData> {
    if !n.is_subgroup_of(g) {
        return Err(GroupError::NotSubgroup(
            "quotient kernel is not a subgroup".into(),
        ));
    }
    if !n.is_normal_in(g) {
        return Err(GroupError::NotNormal(
            "quotient kernel is not normal".into(),
        ));
    }
    let bound = config::limits().enumeration_bound;
    let index = g.order() / n.order();
    if index > bound {
        return Err(GroupError::capacity("quotient index", bound, index));
    }
    let els = g.elements()?;
    let ix = g.element_index()?;
    let kernel_els = n.elements()?;
    let mut coset_of = vec![u32::MAX; els.len()];
    let mut reps = Vec::with_capacity(index as usize);
    for (i, x) in els.iter().enumerate() {
        if coset_of[i] != u32::MAX {
            continue;
        }
        let id = reps.len() as u32;
        for k in kernel_els.iter() {
            coset_of[ix[&k.then(x)] as usize] = id;
        }
        reps.push(x.clone());
    }
    let table = CosetTable { coset_of, reps };
    let images: Vec<Permutation> = g
        .generators()
        .iter()
        .map(|x| {
            Permutation::from_raw(
                table
                    .reps
                    .iter()
                    .map(|r| table.coset_of[ix[&r.then(x)] as usize])
                    .collect(),
            )
        })
        .collect();
    let codomain = Group::from_generators(index as usize, &images)?;
    debug_assert_eq!(codomain.order(), index);
    Ok(QuotientData {
        codomain,
        kernel: n.clone(),
        table: Arc::new(table),
    })
}

/// `G/N` in its regular action on the cosets of `N`, with the natural map.
pub fn quotient_group(g: &Group, n: &Group) -> Result<(Group, Epimorphism)> {
    let epi = quotient_map(g, n)?;
    Ok((epi.codomain().clone(), epi))
}

/// Cached natural map `G -> G/N`.
pub fn quotient_map(g: &Group, n: &Group) -> Result<Epimorphism> {
    if let Some(q) = g.memo().quotients.lock().unwrap().get(n) {
        return Ok(Epimorphism::from_quotient(g, &q));
    }
    let q = build_quotient(g, n)?;
    g.memo()
        .quotients
        .lock()
        .unwrap()
        .insert(n.clone(), q.clone());
    Ok(Epimorphism::from_quotient(g, &q))
}

/// Like [`quotient_map`] but returns the identity map when `N` is trivial.
pub(crate) fn quotient_or_self(g: &Group, n: &Group) -> Result<Epimorphism> {
    if n.is_trivial() {
        Ok(Epimorphism::identity(g))
    } else {
        quotient_map(g, n)
    }
}
