//! Decision procedures for subgroup embedding properties.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::{Duration, Instant};

use crate::arith::{prime_divisors, PrimeSet};
use crate::characteristic::{
    commutator_subgroup, core, hypercenter_u, normalizer, sylow_conjugates,
};
use crate::constructions::{quotient_or_self, Epimorphism};
use crate::error::{GroupError, Result};
use crate::group::Group;
use crate::lattice::{chief_list, subgroup_list, ChiefFactorPair};
use crate::perm::parse_cycles;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PropertyKind {
    Pi,
    IcPi,
    Normal,
    Permutable,
    SPermutable,
    XPermutable,
    Cap,
    CoreHypercentral,
    SSemipermutable,
    SsQuasinormal,
}

impl PropertyKind {
    pub const ALL: [PropertyKind; 10] = [
        PropertyKind::Pi,
        PropertyKind::IcPi,
        PropertyKind::Normal,
        PropertyKind::Permutable,
        PropertyKind::SPermutable,
        PropertyKind::XPermutable,
        PropertyKind::Cap,
        PropertyKind::CoreHypercentral,
        PropertyKind::SSemipermutable,
        PropertyKind::SsQuasinormal,
    ];

    /// The eight classical kinds.
    pub const CLASSICAL: [PropertyKind; 8] = [
        PropertyKind::Normal,
        PropertyKind::Permutable,
        PropertyKind::SPermutable,
        PropertyKind::XPermutable,
        PropertyKind::Cap,
        PropertyKind::CoreHypercentral,
        PropertyKind::SSemipermutable,
        PropertyKind::SsQuasinormal,
    ];

    pub fn cli_name(self) -> &'static str {
        match self {
            PropertyKind::Pi => "pi",
            PropertyKind::IcPi => "ic-pi",
            PropertyKind::Normal => "normal",
            PropertyKind::Permutable => "permutable",
            PropertyKind::SPermutable => "s-permutable",
            PropertyKind::XPermutable => "x-permutable",
            PropertyKind::Cap => "cap",
            PropertyKind::CoreHypercentral => "core-hypercentral",
            PropertyKind::SSemipermutable => "s-semipermutable",
            PropertyKind::SsQuasinormal => "ss-quasinormal",
        }
    }
}

impl fmt::Display for PropertyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.cli_name())
    }
}

impl FromStr for PropertyKind {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_lowercase().replace('_', "-");
        PropertyKind::ALL
            .into_iter()
            .find(|k| k.cli_name() == norm)
            .ok_or_else(|| GroupError::InvalidParameter(format!("unknown property `{s}`")))
    }
}

/// Why a property failed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// A chief factor `L/K` where the normalizer index of `HK/K ∩ L/K` in
    /// `G/K` has a prime outside `π(HK/K ∩ L/K)`.
    ChiefPair {
        lower_generators: Vec<String>,
        upper_generators: Vec<String>,
        lower_order: u64,
        upper_order: u64,
        intersection_order: u64,
        normalizer_index: u64,
        required_primes: Vec<u64>,
    },
    /// A chief factor that `H` neither covers nor avoids.
    Factor {
        lower_generators: Vec<String>,
        upper_generators: Vec<String>,
        lower_order: u64,
        upper_order: u64,
    },
    /// A subgroup that does not permute with `H`.
    Partner { generators: Vec<String>, order: u64 },
    /// A generator of `G` that does not normalize `H`.
    Element { element: String },
    /// `H/H_G` is not inside `Z_U(G/H_G)`.
    Core {
        core_order: u64,
        hypercenter_order: u64,
    },
    /// No supplement `B` with the required Sylow permutability.
    NoSupplement { supplements_checked: usize },
}

/// Verdict of one property check.
/// Equality ignores `elapsed`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PropertyReport {
    pub property: PropertyKind,
    pub holds: bool,
    pub subgroup_order: u64,
    pub witness: Option<Witness>,
    /// Chief pairs considered (Π and IC-Π only).
    pub pairs_evaluated: usize,
    /// `|H ∩ [H,G]|` for IC-Π.
    pub intersection_order: Option<u64>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl PartialEq for PropertyReport {
    fn eq(&self, o: &Self) -> bool {
        self.property == o.property
            && self.holds == o.holds
            && self.subgroup_order == o.subgroup_order
            && self.witness == o.witness
            && self.pairs_evaluated == o.pairs_evaluated
            && self.intersection_order == o.intersection_order
    }
}

impl Eq for PropertyReport {}

impl PropertyReport {
    fn new(property: PropertyKind, h: &Group, started: Instant) -> Self {
        PropertyReport {
            property,
            holds: true,
            subgroup_order: h.order(),
            witness: None,
            pairs_evaluated: 0,
            intersection_order: None,
            elapsed: started.elapsed(),
        }
    }

    fn fail(mut self, w: Witness, started: Instant) -> Self {
        self.holds = false;
        self.witness = Some(w);
        self.elapsed = started.elapsed();
        self
    }
}

/// `HK = KH`, decided by `|<H,K>| |H ∩ K| = |H| |K|`.
pub fn products_permute(h: &Group, k: &Group) -> Result<bool> {
    if h.degree() != k.degree() {
        return Err(GroupError::DegreeMismatch {
            left: h.degree(),
            right: k.degree(),
        });
    }
    if h.is_subgroup_of(k) || k.is_subgroup_of(h) {
        return Ok(true);
    }
    if h.is_normalized_by(k.generators()) || k.is_normalized_by(h.generators()) {
        return Ok(true);
    }
    let meet = h.intersection(k)?;
    let join = h.join(k);
    Ok(join.order() as u128 * meet.order() as u128 == h.order() as u128 * k.order() as u128)
}

/// `G/K` and the image `L/K` of one chief pair.
#[derive(Clone)]
pub(crate) struct PairImage {
    epi: Epimorphism,
    upper: Group,
}

fn pair_images(g: &Group) -> Result<Arc<Vec<PairImage>>> {
    if let Some(v) = g.memo().pair_images.get() {
        return Ok(v.clone());
    }
    let mut out = Vec::new();
    for c in chief_list(g)?.iter() {
        let epi = quotient_or_self(g, &c.lower)?;
        let upper = epi.push(&c.upper)?;
        out.push(PairImage { epi, upper });
    }
    let arc = Arc::new(out);
    let _ = g.memo().pair_images.set(arc.clone());
    Ok(g.memo().pair_images.get().cloned().unwrap_or(arc))
}

/// `|Q : N_Q(I)|` where `I = HK/K ∩ L/K` inside `Q = G/K`, together with `|I|`.
fn pair_condition(image: &PairImage, h: &Group) -> Result<(u64, u64)> {
    let q = image.epi.codomain();
    let hk = image.epi.push(h)?;
    let i = hk.intersection(&image.upper)?;
    if i.is_trivial() || i.is_normalized_by(q.generators()) {
        return Ok((i.order(), 1));
    }
    let n = normalizer(q, &i)?;
    Ok((i.order(), q.order() / n.order()))
}

fn index_is_pi_number(intersection_order: u64, index: u64) -> bool {
    PrimeSet::of(intersection_order).is_pi_number(index)
}

fn chief_witness(c: &ChiefFactorPair, i_order: u64, index: u64) -> Witness {
    Witness::ChiefPair {
        lower_generators: c.lower.generator_texts(),
        upper_generators: c.upper.generator_texts(),
        lower_order: c.lower.order(),
        upper_order: c.upper.order(),
        intersection_order: i_order,
        normalizer_index: index,
        required_primes: prime_divisors(i_order),
    }
}

fn require_subgroup(g: &Group, h: &Group) -> Result<()> {
    if h.is_subgroup_of(g) {
        Ok(())
    } else {
        Err(GroupError::NotSubgroup(format!(
            "subgroup of order {} is not contained in the ambient group",
            h.order()
        )))
    }
}

/// The Π-property of `h` in `g`, over every covering pair of the normal lattice.
pub fn pi_property(g: &Group, h: &Group) -> Result<PropertyReport> {
    require_subgroup(g, h)?;
    if let Some(r) = g.memo().pi.lock().unwrap().get(h) {
        return Ok(r);
    }
    let started = Instant::now();
    let pairs = chief_list(g)?;
    let images = pair_images(g)?;
    let mut report = PropertyReport::new(PropertyKind::Pi, h, started);
    for (c, image) in pairs.iter().zip(images.iter()) {
        report.pairs_evaluated += 1;
        if h.is_subgroup_of(&c.lower) {
            continue;
        }
        let (i_order, index) = pair_condition(image, h)?;
        if !index_is_pi_number(i_order, index) {
            report = report.fail(chief_witness(c, i_order, index), started);
            break;
        }
    }
    report.elapsed = started.elapsed();
    g.memo()
        .pi
        .lock()
        .unwrap()
        .insert(h.clone(), report.clone());
    Ok(report)
}

/// The same condition evaluated in `G` itself: `|G : N_G(HK ∩ L)|` against
/// `π(|HK ∩ L| / |K|)`. Agrees with [`pi_property`] by the correspondence
/// theorem; kept as an independent route for cross-checking.
pub fn pi_property_lifted(g: &Group, h: &Group) -> Result<bool> {
    require_subgroup(g, h)?;
    for c in chief_list(g)?.iter() {
        let hk = h.join(&c.lower);
        let m = hk.intersection(&c.upper)?;
        let i_order = m.order() / c.lower.order();
        let index = g.order() / normalizer(g, &m)?.order();
        if !index_is_pi_number(i_order, index) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `H ∩ [H, G]`.
pub fn ic_core(g: &Group, h: &Group) -> Result<Group> {
    let comm = commutator_subgroup(g, h, g)?;
    h.intersection(&comm)
}

/// The IC-Π-property: the Π-property of `H ∩ [H,G]`.
pub fn ic_pi_property(g: &Group, h: &Group) -> Result<PropertyReport> {
    require_subgroup(g, h)?;
    if let Some(r) = g.memo().ic_pi.lock().unwrap().get(h) {
        return Ok(r);
    }
    let started = Instant::now();
    let d = ic_core(g, h)?;
    let mut report = pi_property(g, &d)?;
    report.property = PropertyKind::IcPi;
    report.subgroup_order = h.order();
    report.intersection_order = Some(d.order());
    report.elapsed = started.elapsed();
    g.memo()
        .ic_pi
        .lock()
        .unwrap()
        .insert(h.clone(), report.clone());
    Ok(report)
}

fn partner(k: &Group) -> Witness {
    Witness::Partner {
        generators: k.generator_texts(),
        order: k.order(),
    }
}

fn all_sylows(g: &Group, primes: impl IntoIterator<Item = u64>) -> Result<Vec<Group>> {
    let mut out = Vec::new();
    for p in primes {
        out.extend(sylow_conjugates(g, p)?.iter().cloned());
    }
    Ok(out)
}

fn first_non_permuting(h: &Group, partners: &[Group]) -> Result<Option<Group>> {
    for k in partners {
        if !products_permute(h, k)? {
            return Ok(Some(k.clone()));
        }
    }
    Ok(None)
}

/// Checks one of the classical embedding properties (or Π / IC-Π). `x` is
/// required for [`PropertyKind::XPermutable`] and must be normal in `g`.
pub fn check_property(
    g: &Group,
    h: &Group,
    kind: PropertyKind,
    x: Option<&Group>,
) -> Result<PropertyReport> {
    require_subgroup(g, h)?;
    let started = Instant::now();
    let report = PropertyReport::new(kind, h, started);
    let done = |r: PropertyReport| {
        let mut r = r;
        r.elapsed = started.elapsed();
        Ok(r)
    };
    match kind {
        PropertyKind::Pi => pi_property(g, h),
        PropertyKind::IcPi => ic_pi_property(g, h),
        PropertyKind::Normal => {
            for s in g.generators() {
                if h.generators().iter().any(|t| !h.has(&t.conjugate_by(s))) {
                    return done(report.fail(
                        Witness::Element {
                            element: s.to_string(),
                        },
                        started,
                    ));
                }
            }
            done(report)
        }
        PropertyKind::Permutable => {
            let subs = subgroup_list(g)?;
            match first_non_permuting(h, &subs)? {
                Some(k) => done(report.fail(partner(&k), started)),
                None => done(report),
            }
        }
        PropertyKind::SPermutable => {
            let partners = all_sylows(g, prime_divisors(g.order()))?;
            match first_non_permuting(h, &partners)? {
                Some(k) => done(report.fail(partner(&k), started)),
                None => done(report),
            }
        }
        PropertyKind::SSemipermutable => {
            let primes = prime_divisors(g.order())
                .into_iter()
                .filter(|&q| !h.order().is_multiple_of(q));
            let partners = all_sylows(g, primes)?;
            match first_non_permuting(h, &partners)? {
                Some(k) => done(report.fail(partner(&k), started)),
                None => done(report),
            }
        }
        PropertyKind::XPermutable => {
            let x = x.ok_or_else(|| {
                GroupError::InvalidParameter("x-permutable requires the subgroup X".into())
            })?;
            if !x.is_normal_in(g) {
                return Err(GroupError::NotNormal("X must be normal in G".into()));
            }
            let xs = x.elements()?;
            for t in all_sylows(g, prime_divisors(g.order()))? {
                let mut ok = false;
                for y in xs.iter() {
                    if products_permute(h, &t.conjugate(y))? {
                        ok = true;
                        break;
                    }
                }
                if !ok {
                    return done(report.fail(partner(&t), started));
                }
            }
            done(report)
        }
        PropertyKind::Cap => {
            for c in chief_list(g)?.iter() {
                let hl = h.intersection(&c.upper)?.order();
                let hk = h.intersection(&c.lower)?.order();
                let covers = c.upper.order() * hk == c.lower.order() * hl;
                let avoids = hl == hk;
                if !covers && !avoids {
                    return done(report.fail(
                        Witness::Factor {
                            lower_generators: c.lower.generator_texts(),
                            upper_generators: c.upper.generator_texts(),
                            lower_order: c.lower.order(),
                            upper_order: c.upper.order(),
                        },
                        started,
                    ));
                }
            }
            done(report)
        }
        PropertyKind::CoreHypercentral => {
            let c = core(g, h)?;
            let epi = quotient_or_self(g, &c)?;
            let z = hypercenter_u(epi.codomain())?;
            let image = epi.push(h)?;
            if image.is_subgroup_of(&z) {
                done(report)
            } else {
                done(report.fail(
                    Witness::Core {
                        core_order: c.order(),
                        hypercenter_order: z.order(),
                    },
                    started,
                ))
            }
        }
        PropertyKind::SsQuasinormal => {
            let subs = subgroup_list(g)?;
            let mut checked = 0;
            for b in subs.iter().rev() {
                let hb = h.intersection(b)?.order();
                if h.order() as u128 * b.order() as u128 != g.order() as u128 * hb as u128 {
                    continue;
                }
                checked += 1;
                let partners = all_sylows(b, prime_divisors(b.order()))?;
                if first_non_permuting(h, &partners)?.is_none() {
                    return done(report);
                }
            }
            done(report.fail(
                Witness::NoSupplement {
                    supplements_checked: checked,
                },
                started,
            ))
        }
    }
}

/// Re-evaluates a failure witness from its serialized data alone. Returns
/// `true` when the recorded failure is reproduced.
pub fn recheck_witness(
    g: &Group,
    h: &Group,
    report: &PropertyReport,
    x: Option<&Group>,
) -> Result<bool> {
    let Some(w) = &report.witness else {
        return Ok(false);
    };
    let subgroup = |gens: &Vec<String>| g.subgroup_from_texts(gens);
    match w {
        Witness::ChiefPair {
            lower_generators,
            upper_generators,
            intersection_order,
            normalizer_index,
            ..
        } => {
            let k = subgroup(lower_generators)?;
            let l = subgroup(upper_generators)?;
            if !(k.is_normal_in(g) && l.is_normal_in(g) && k.is_subgroup_of(&l)) {
                return Ok(false);
            }
            let target = if report.property == PropertyKind::IcPi {
                ic_core(g, h)?
            } else {
                h.clone()
            };
            let epi = quotient_or_self(g, &k)?;
            let image = PairImage {
                upper: epi.push(&l)?,
                epi,
            };
            let (i, idx) = pair_condition(&image, &target)?;
            Ok(i == *intersection_order && idx == *normalizer_index && !index_is_pi_number(i, idx))
        }
        Witness::Factor {
            lower_generators,
            upper_generators,
            ..
        } => {
            let k = subgroup(lower_generators)?;
            let l = subgroup(upper_generators)?;
            let hl = h.intersection(&l)?.order();
            let hk = h.intersection(&k)?.order();
            Ok(l.order() * hk != k.order() * hl && hl != hk)
        }
        Witness::Partner { generators, .. } => {
            let k = subgroup(generators)?;
            if report.property == PropertyKind::XPermutable {
                let Some(x) = x else { return Ok(false) };
                for y in x.elements()?.iter() {
                    if products_permute(h, &k.conjugate(y))? {
                        return Ok(false);
                    }
                }
                Ok(true)
            } else {
                Ok(!products_permute(h, &k)?)
            }
        }
        Witness::Element { element } => {
            let s = parse_cycles(element, g.degree())?;
            Ok(g.has(&s) && h.generators().iter().any(|t| !h.has(&t.conjugate_by(&s))))
        }
        Witness::Core { .. } | Witness::NoSupplement { .. } => {
            Ok(!check_property(g, h, report.property, x)?.holds)
        }
    }
}
