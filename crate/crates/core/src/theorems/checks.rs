use std::collections::HashSet;

use crate::arith::{gcd, is_prime, p_part, proper_prime_powers};
use crate::characteristic::{
    derived_subgroup, f_p_star, f_star, frattini, hypercenter_pu, hypercenter_u, is_p_nilpotent,
    is_p_supersoluble, is_supersoluble, o_p_prime, sylow,
};
use crate::constructions::{quotient_or_self, GroupSpec};
use crate::error::{GroupError, Result};
use crate::group::Group;
use crate::lattice::{cyclic_subgroups, minimal_normal_subgroups, subgroups_of_order};
use crate::perm::Permutation;
use crate::properties::{ic_pi_property, pi_property, PropertyReport};

use super::strategy::p_subgroup_pool;
use super::{Detail, Outcome, Params, TheoremId, TheoremInstance, TheoremReport};

#[derive(Clone, Copy, PartialEq, Eq)]
enum Need {
    Required,
    Optional,
}

use Need::{Optional, Required};

struct Signature {
    subgroups: &'static [(&'static str, Need)],
    p: Option<Need>,
    d: Option<Need>,
    part: Option<Need>,
}

const fn sig(
    subgroups: &'static [(&'static str, Need)],
    p: Option<Need>,
    d: Option<Need>,
) -> Signature {
    Signature {
        subgroups,
        p,
        d,
        part: None,
    }
}

fn signature(t: TheoremId) -> Signature {
    use TheoremId::*;
    match t {
        ThmA => sig(
            &[("N", Required), ("X", Required), ("P", Optional)],
            Some(Required),
            Some(Optional),
        ),
        ThmBOrderD => sig(&[("P", Required)], Some(Required), Some(Optional)),
        ThmCMinimal | ThmDMaximal => sig(&[("N", Required), ("P", Optional)], Some(Required), None),
        Thm31Min | Thm32Max | LemPhi => sig(&[("P", Required)], Some(Required), None),
        CorStar => sig(&[("E", Required), ("X", Required)], None, None),
        CorFQuotient => sig(
            &[("E", Required), ("X", Required), ("P", Optional)],
            Some(Required),
            Some(Optional),
        ),
        LemOver | LemOveI | LemOveII => sig(&[("H", Required), ("N", Required)], None, None),
        LemSatisfies => sig(&[("T", Required), ("L", Required)], Some(Required), None),
        LemOneOf => sig(
            &[("N", Required), ("P", Optional), ("T", Required)],
            Some(Required),
            Some(Optional),
        ),
        LemNecessity | LemSylow => sig(&[], Some(Required), None),
        LemJgU => sig(&[("E", Required)], None, None),
        LemSuU => Signature {
            subgroups: &[("E", Required)],
            p: Some(Optional),
            d: None,
            part: Some(Required),
        },
        LemEquivalent => sig(
            &[("U", Required), ("V", Required), ("W", Required)],
            None,
            None,
        ),
    }
}

fn validate(t: TheoremId, params: &Params) -> Result<()> {
    let s = signature(t);
    let bad = |msg: String| Err(GroupError::InvalidParameter(format!("{t}: {msg}")));
    for key in params.subgroups.keys() {
        if !s.subgroups.iter().any(|(k, _)| k == key) {
            return bad(format!("unexpected subgroup parameter `{key}`"));
        }
    }
    for (key, need) in s.subgroups {
        if *need == Required && !params.subgroups.contains_key(*key) {
            return bad(format!("missing subgroup parameter `{key}`"));
        }
    }
    for (name, present, need) in [
        ("p", params.p.is_some(), s.p),
        ("d", params.d.is_some(), s.d),
        ("part", params.part.is_some(), s.part),
    ] {
        match (present, need) {
            (true, None) => return bad(format!("unexpected parameter `{name}`")),
            (false, Some(Required)) => return bad(format!("missing parameter `{name}`")),
            _ => {}
        }
    }
    if let Some(p) = params.p {
        if !is_prime(p) {
            return bad(format!("p = {p} is not prime"));
        }
    }
    if t == TheoremId::LemSuU {
        match params.part {
            Some(1) if params.p.is_some() => return bad("part 1 takes no prime".into()),
            Some(1) => {}
            Some(2) if params.p.is_none() => return bad("part 2 requires p".into()),
            Some(2) => {}
            other => return bad(format!("part must be 1 or 2, got {other:?}")),
        }
    }
    Ok(())
}

/// Rebuilds the group from its specification and evaluates the instance.
pub fn evaluate(spec: &GroupSpec, instance: &TheoremInstance) -> Result<TheoremReport> {
    let g = spec.build()?;
    evaluate_on(&g, instance)
}

/// Evaluates an instance against an already built group. Malformed
/// parameters are errors; violated preconditions yield `not_applicable`.
pub fn evaluate_on(g: &Group, instance: &TheoremInstance) -> Result<TheoremReport> {
    validate(instance.theorem, &instance.params)?;
    let ctx = Ctx::new(g, &instance.params)?;
    let outcome = ctx.run(instance.theorem)?;
    Ok(TheoremReport::from_outcome(instance.clone(), outcome))
}

struct Ctx<'a> {
    g: &'a Group,
    params: &'a Params,
    subs: Vec<(String, Group)>,
}

fn detail(role: impl Into<String>, h: &Group, report: Option<PropertyReport>) -> Detail {
    Detail {
        role: role.into(),
        generators: h.generator_texts(),
        report,
    }
}

fn is_cyclic(h: &Group) -> Result<bool> {
    if h.generators().len() <= 1 {
        return Ok(true);
    }
    Ok(h.elements()?.iter().any(|x| x.order() == h.order()))
}

fn set_of(g: &Group) -> Result<HashSet<Permutation>> {
    Ok(g.elements()?.iter().cloned().collect())
}

fn set_product(a: &HashSet<Permutation>, b: &HashSet<Permutation>) -> HashSet<Permutation> {
    let mut out = HashSet::with_capacity(a.len().max(b.len()));
    for x in a {
        for y in b {
            out.insert(x.then(y));
        }
    }
    out
}

/// Both sides of the modular-type identity `U ∩ VW = (U∩V)(U∩W)` and
/// `UV ∩ UW = U(V∩W)`, evaluated as element sets.
pub(crate) fn equivalent_sides(u: &Group, v: &Group, w: &Group) -> Result<(bool, bool)> {
    let (su, sv, sw) = (set_of(u)?, set_of(v)?, set_of(w)?);
    let vw = set_product(&sv, &sw);
    let left1: HashSet<Permutation> = su.intersection(&vw).cloned().collect();
    let right1 = set_product(&set_of(&u.intersection(v)?)?, &set_of(&u.intersection(w)?)?);
    let uv = set_product(&su, &sv);
    let uw = set_product(&su, &sw);
    let left2: HashSet<Permutation> = uv.intersection(&uw).cloned().collect();
    let right2 = set_product(&su, &set_of(&v.intersection(w)?)?);
    Ok((left1 == right1, left2 == right2))
}

/// First subgroup in `candidates` failing IC-Π, as an audit record.
fn first_ic_pi_failure(
    g: &Group,
    candidates: impl IntoIterator<Item = Group>,
    role: &str,
) -> Result<Option<Detail>> {
    for h in candidates {
        let r = ic_pi_property(g, &h)?;
        if !r.holds {
            return Ok(Some(detail(role, &h, Some(r))));
        }
    }
    Ok(None)
}

/// Every subgroup of `pg` of order `d` satisfies IC-Π in `g`, and, when
/// `p = d = 2` with `pg` non-abelian, so does every cyclic subgroup of order 4.
fn order_d_condition(g: &Group, pg: &Group, p: u64, d: u64) -> Result<Option<Detail>> {
    let of_order_d = subgroups_of_order(pg, d)?;
    let role = format!("subgroup of order {d}");
    if let Some(f) = first_ic_pi_failure(g, of_order_d.iter().cloned(), &role)? {
        return Ok(Some(f));
    }
    if p == 2 && d == 2 && !pg.is_abelian() {
        let c4 = cyclic_subgroups(pg)?;
        let fours = c4.iter().filter(|c| c.order() == 4).cloned();
        return first_ic_pi_failure(g, fours, "cyclic subgroup of order 4");
    }
    Ok(None)
}

fn maximal_condition(g: &Group, pg: &Group) -> Result<Option<Detail>> {
    let maxes = crate::lattice::maximal_subgroups_p_group(pg)?;
    first_ic_pi_failure(g, maxes.iter().cloned(), "maximal subgroup")
}

enum Pre {
    Ok,
    Fail(String),
}

macro_rules! require {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Ok(Outcome::not_applicable(format!($($msg)+)));
        }
    };
}

impl<'a> Ctx<'a> {
    fn new(g: &'a Group, params: &'a Params) -> Result<Self> {
        let mut subs = Vec::new();
        for (k, gens) in &params.subgroups {
            let h = g
                .subgroup_from_texts(gens)
                .map_err(|e| GroupError::InvalidParameter(format!("subgroup `{k}`: {e}")))?;
            subs.push((k.clone(), h));
        }
        Ok(Ctx { g, params, subs })
    }

    fn sub(&self, key: &str) -> Option<&Group> {
        self.subs.iter().find(|(k, _)| k == key).map(|(_, h)| h)
    }

    fn req(&self, key: &str) -> &Group {
        self.sub(key).expect("validated signature")
    }

    fn p(&self) -> u64 {
        self.params.p.expect("validated signature")
    }

    /// The supplied Sylow subgroup of `of`, or a computed one.
    fn sylow_of(&self, of: &Group, p: u64) -> Result<std::result::Result<Group, String>> {
        match self.sub("P") {
            Some(pg) => {
                if !pg.is_subgroup_of(of) || pg.order() != p_part(of.order(), p) {
                    return Ok(Err(format!("P is not a Sylow {p}-subgroup")));
                }
                Ok(Ok(pg.clone()))
            }
            None => Ok(Ok(sylow(of, p)?)),
        }
    }

    /// The `d` of order-`d` conditions: `Err` carries a not-applicable reason.
    fn order_d(&self, p: u64, pg: &Group) -> Result<std::result::Result<u64, String>> {
        let range = proper_prime_powers(p, pg.order());
        match self.params.d {
            None if range.is_empty() => Ok(Err(format!(
                "no power d of {p} with 1 < d < |P| = {}",
                pg.order()
            ))),
            None => Err(GroupError::InvalidParameter(format!(
                "d is required when |P| = {}",
                pg.order()
            ))),
            Some(d) if range.contains(&d) => Ok(Ok(d)),
            Some(d) => Ok(Err(format!(
                "d = {d} is not a power of {p} strictly between 1 and |P| = {}",
                pg.order()
            ))),
        }
    }

    fn normal(&self, key: &str) -> Pre {
        if self.req(key).is_normal_in(self.g) {
            Pre::Ok
        } else {
            Pre::Fail(format!("{key} is not normal in G"))
        }
    }

    fn run(&self, t: TheoremId) -> Result<Outcome> {
        use TheoremId::*;
        match t {
            ThmA => self.thm_a(),
            ThmBOrderD => self.thm_b(),
            ThmCMinimal => self.thm_c(),
            ThmDMaximal => self.thm_d(),
            Thm31Min => self.thm_31(),
            Thm32Max => self.thm_32(),
            CorStar => self.cor_star(),
            CorFQuotient => self.cor_f_quotient(),
            LemOver => self.lem_over(),
            LemOveI => self.lem_ove(true),
            LemOveII => self.lem_ove(false),
            LemSatisfies => self.lem_satisfies(),
            LemOneOf => self.lem_one_of(),
            LemNecessity => self.lem_necessity(),
            LemPhi => self.lem_phi(),
            LemSylow => self.lem_sylow(),
            LemJgU => self.lem_jg(),
            LemSuU => self.lem_su(),
            LemEquivalent => self.lem_equivalent(),
        }
    }

    fn check_normal(&self, keys: &[&str]) -> Option<Outcome> {
        for k in keys {
            if let Pre::Fail(r) = self.normal(k) {
                return Some(Outcome::not_applicable(r));
            }
        }
        None
    }

    fn thm_a(&self) -> Result<Outcome> {
        if let Some(o) = self.check_normal(&["N", "X"]) {
            return Ok(o);
        }
        let (n, x, p) = (self.req("N"), self.req("X"), self.p());
        require!(
            n.order() % p == 0,
            "p = {p} does not divide |N| = {}",
            n.order()
        );
        require!(x.is_subgroup_of(n), "X is not contained in N");
        require!(
            f_p_star(n, p)?.is_subgroup_of(x),
            "F*_p(N) is not contained in X"
        );
        let pg = match self.sylow_of(x, p)? {
            Ok(pg) => pg,
            Err(r) => return Ok(Outcome::not_applicable(r)),
        };
        let d = match self.order_d(p, &pg)? {
            Ok(d) => d,
            Err(r) => return Ok(Outcome::not_applicable(r)),
        };
        if let Some(f) = order_d_condition(self.g, &pg, p, d)? {
            return Ok(Outcome::not_satisfied(vec![f]));
        }
        let z = hypercenter_pu(self.g, p)?;
        Ok(Outcome::decided(
            n.is_subgroup_of(&z),
            vec![detail("Z_pU(G)", &z, None)],
        ))
    }

    fn normal_p_subgroup(&self, p: u64) -> Option<Outcome> {
        let pg = self.req("P");
        if let Some(o) = self.check_normal(&["P"]) {
            return Some(o);
        }
        if pg.is_trivial() || !pg.is_p_group(p) {
            return Some(Outcome::not_applicable(format!(
                "P is not a nontrivial {p}-group"
            )));
        }
        None
    }

    fn in_z_u(&self, h: &Group) -> Result<Outcome> {
        let z = hypercenter_u(self.g)?;
        Ok(Outcome::decided(
            h.is_subgroup_of(&z),
            vec![detail("Z_U(G)", &z, None)],
        ))
    }

    fn thm_b(&self) -> Result<Outcome> {
        let p = self.p();
        if let Some(o) = self.normal_p_subgroup(p) {
            return Ok(o);
        }
        let pg = self.req("P");
        let d = match self.order_d(p, pg)? {
            Ok(d) => d,
            Err(r) => return Ok(Outcome::not_applicable(r)),
        };
        if let Some(f) = order_d_condition(self.g, pg, p, d)? {
            return Ok(Outcome::not_satisfied(vec![f]));
        }
        self.in_z_u(pg)
    }

    fn normal_with_sylow(&self) -> Result<std::result::Result<(Group, Group), Outcome>> {
        if let Some(o) = self.check_normal(&["N"]) {
            return Ok(Err(o));
        }
        let (n, p) = (self.req("N"), self.p());
        if n.order() % p != 0 {
            return Ok(Err(Outcome::not_applicable(format!(
                "p = {p} does not divide |N| = {}",
                n.order()
            ))));
        }
        match self.sylow_of(n, p)? {
            Ok(pg) => Ok(Ok((n.clone(), pg))),
            Err(r) => Ok(Err(Outcome::not_applicable(r))),
        }
    }

    fn in_z_pu(&self, n: &Group, p: u64) -> Result<Outcome> {
        let z = hypercenter_pu(self.g, p)?;
        Ok(Outcome::decided(
            n.is_subgroup_of(&z),
            vec![detail("Z_pU(G)", &z, None)],
        ))
    }

    fn thm_c(&self) -> Result<Outcome> {
        let (n, pg) = match self.normal_with_sylow()? {
            Ok(v) => v,
            Err(o) => return Ok(o),
        };
        let p = self.p();
        if let Some(f) = order_d_condition(self.g, &pg, p, p)? {
            return Ok(Outcome::not_satisfied(vec![f]));
        }
        self.in_z_pu(&n, p)
    }

    fn thm_d(&self) -> Result<Outcome> {
        let (n, pg) = match self.normal_with_sylow()? {
            Ok(v) => v,
            Err(o) => return Ok(o),
        };
        let p = self.p();
        if let Some(f) = maximal_condition(self.g, &pg)? {
            return Ok(Outcome::not_satisfied(vec![f]));
        }
        if pg.order() == p {
            return Ok(Outcome::decided(true, vec![detail("P", &pg, None)]));
        }
        self.in_z_pu(&n, p)
    }

    fn thm_31(&self) -> Result<Outcome> {
        let p = self.p();
        if let Some(o) = self.normal_p_subgroup(p) {
            return Ok(o);
        }
        let pg = self.req("P");
        if let Some(f) = order_d_condition(self.g, pg, p, p)? {
            return Ok(Outcome::not_satisfied(vec![f]));
        }
        self.in_z_u(pg)
    }

    fn thm_32(&self) -> Result<Outcome> {
        let p = self.p();
        if let Some(o) = self.normal_p_subgroup(p) {
            return Ok(o);
        }
        let pg = self.req("P");
        if let Some(f) = maximal_condition(self.g, pg)? {
            return Ok(Outcome::not_satisfied(vec![f]));
        }
        self.in_z_u(pg)
    }

    /// Conditions (1) and (2) on every non-cyclic Sylow subgroup of `x`,
    /// with the order `|D|` chosen existentially per prime.
    fn sylow_conditions(&self, x: &Group) -> Result<Option<Detail>> {
        for &q in crate::arith::prime_divisors(x.order()).iter() {
            let qg = sylow(x, q)?;
            if is_cyclic(&qg)? {
                continue;
            }
            let mut last = None;
            let mut found = false;
            for d in proper_prime_powers(q, qg.order()) {
                match order_d_condition(self.g, &qg, q, d)? {
                    None => {
                        found = true;
                        break;
                    }
                    Some(f) => last = Some(f),
                }
            }
            if !found {
                return Ok(Some(last.unwrap_or_else(|| {
                    detail(
                        format!("Sylow {q}-subgroup without admissible |D|"),
                        &qg,
                        None,
                    )
                })));
            }
        }
        Ok(None)
    }

    fn cor_star(&self) -> Result<Outcome> {
        if let Some(o) = self.check_normal(&["E", "X"]) {
            return Ok(o);
        }
        let (e, x) = (self.req("E"), self.req("X"));
        require!(x.is_subgroup_of(e), "X is not contained in E");
        require!(f_star(e)?.is_subgroup_of(x), "F*(E) is not contained in X");
        let failure = self.sylow_conditions(x)?;
        let z = hypercenter_u(self.g)?;
        let conditions = failure.is_none();
        let inside = e.is_subgroup_of(&z);
        let mut details = vec![detail("Z_U(G)", &z, None)];
        details.extend(failure);
        if !conditions && !inside {
            return Ok(Outcome::not_satisfied(details));
        }
        Ok(Outcome::decided(conditions && inside, details))
    }

    fn cor_f_quotient(&self) -> Result<Outcome> {
        if let Some(o) = self.check_normal(&["E", "X"]) {
            return Ok(o);
        }
        let (e, x, p) = (self.req("E"), self.req("X"), self.p());
        require!(x.is_subgroup_of(e), "X is not contained in E");
        require!(
            f_p_star(e, p)?.is_subgroup_of(x),
            "F*_p(E) is not contained in X"
        );
        let pg = match self.sylow_of(x, p)? {
            Ok(pg) => pg,
            Err(r) => return Ok(Outcome::not_applicable(r)),
        };
        let d = match self.order_d(p, &pg)? {
            Ok(d) => d,
            Err(r) => return Ok(Outcome::not_applicable(r)),
        };
        let top = quotient_or_self(self.g, e)?;
        if !is_supersoluble(top.codomain())? {
            return Ok(Outcome::not_satisfied(vec![detail(
                "E (G/E not supersoluble)",
                e,
                None,
            )]));
        }
        if let Some(f) = order_d_condition(self.g, &pg, p, d)? {
            return Ok(Outcome::not_satisfied(vec![f]));
        }
        let opp = o_p_prime(self.g, p)?;
        let q = quotient_or_self(self.g, &opp)?;
        Ok(Outcome::decided(
            is_supersoluble(q.codomain())?,
            vec![detail("O_p'(G)", &opp, None)],
        ))
    }

    fn lem_over(&self) -> Result<Outcome> {
        if let Some(o) = self.check_normal(&["N"]) {
            return Ok(o);
        }
        let (h, n) = (self.req("H"), self.req("N"));
        let hyp = pi_property(self.g, h)?;
        if !hyp.holds {
            return Ok(Outcome::not_satisfied(vec![detail("H", h, Some(hyp))]));
        }
        let epi = quotient_or_self(self.g, n)?;
        let image = epi.push(h)?;
        let r = pi_property(epi.codomain(), &image)?;
        Ok(Outcome::decided(
            r.holds,
            vec![detail("HN/N", &image, Some(r))],
        ))
    }

    fn lem_ove(&self, first: bool) -> Result<Outcome> {
        if let Some(o) = self.check_normal(&["N"]) {
            return Ok(o);
        }
        let (h, n) = (self.req("H"), self.req("N"));
        if first {
            require!(n.is_subgroup_of(h), "N is not contained in H");
        } else {
            require!(
                gcd(h.order(), n.order()) == 1,
                "|H| = {} and |N| = {} are not coprime",
                h.order(),
                n.order()
            );
        }
        let hyp = ic_pi_property(self.g, h)?;
        if !hyp.holds {
            return Ok(Outcome::not_satisfied(vec![detail("H", h, Some(hyp))]));
        }
        let epi = quotient_or_self(self.g, n)?;
        let image = epi.push(h)?;
        let r = ic_pi_property(epi.codomain(), &image)?;
        let role = if first { "H/N" } else { "HN/N" };
        Ok(Outcome::decided(
            r.holds,
            vec![detail(role, &image, Some(r))],
        ))
    }

    fn lem_satisfies(&self) -> Result<Outcome> {
        let (t, l, p) = (self.req("T"), self.req("L"), self.p());
        require!(
            minimal_normal_subgroups(self.g)?.contains(t),
            "T is not a minimal normal subgroup of G"
        );
        require!(
            t.order() == p && l.order() == p,
            "|T| and |L| must both equal p = {p}"
        );
        let lt = l.join(t);
        let hyp = ic_pi_property(self.g, &lt)?;
        if !hyp.holds {
            return Ok(Outcome::not_satisfied(vec![detail("LT", &lt, Some(hyp))]));
        }
        let r = ic_pi_property(self.g, l)?;
        Ok(Outcome::decided(r.holds, vec![detail("L", l, Some(r))]))
    }

    fn lem_one_of(&self) -> Result<Outcome> {
        let (n, pg) = match self.normal_with_sylow()? {
            Ok(v) => v,
            Err(o) => return Ok(o),
        };
        let (t, p) = (self.req("T"), self.p());
        let minimals = minimal_normal_subgroups(self.g)?;
        let inside: Vec<&Group> = minimals.iter().filter(|m| m.is_subgroup_of(&n)).collect();
        require!(
            inside.len() == 1 && inside[0].same_elements(t),
            "T is not the unique minimal normal subgroup of G inside N"
        );
        let d = match self.order_d(p, &pg)? {
            Ok(d) => d,
            Err(r) => return Ok(Outcome::not_applicable(r)),
        };
        let case_a = t.order() == d;
        let case_b = t.is_p_group(p) && t.order() < d && !t.is_subgroup_of(&frattini(&pg)?);
        if !case_a && !case_b {
            return Ok(Outcome::not_satisfied(vec![detail(
                "T (neither case applies)",
                t,
                None,
            )]));
        }
        let role = format!("subgroup of order {d}");
        if let Some(f) =
            first_ic_pi_failure(self.g, subgroups_of_order(&pg, d)?.iter().cloned(), &role)?
        {
            return Ok(Outcome::not_satisfied(vec![f]));
        }
        Ok(Outcome::decided(t.order() == p, vec![detail("T", t, None)]))
    }

    fn lem_necessity(&self) -> Result<Outcome> {
        let p = self.p();
        require!(
            self.g.order().is_multiple_of(p),
            "p = {p} does not divide |G|"
        );
        let z = hypercenter_pu(self.g, p)?;
        let mut checked = 0usize;
        for l in p_subgroup_pool(self.g, p)? {
            if !l.is_subgroup_of(&z) {
                continue;
            }
            checked += 1;
            let r = pi_property(self.g, &l)?;
            if !r.holds {
                return Ok(Outcome::decided(false, vec![detail("L", &l, Some(r))]));
            }
        }
        let mut o = Outcome::decided(true, vec![detail("Z_pU(G)", &z, None)]);
        o.reason = Some(format!("{checked} p-subgroups of Z_pU(G) checked"));
        Ok(o)
    }

    fn lem_phi(&self) -> Result<Outcome> {
        let p = self.p();
        if let Some(o) = self.normal_p_subgroup(p) {
            return Ok(o);
        }
        let pg = self.req("P");
        let phi = frattini(pg)?;
        let epi = quotient_or_self(self.g, &phi)?;
        let image = epi.push(pg)?;
        let zq = hypercenter_u(epi.codomain())?;
        if !image.is_subgroup_of(&zq) {
            return Ok(Outcome::not_satisfied(vec![detail("Φ(P)", &phi, None)]));
        }
        self.in_z_u(pg)
    }

    fn lem_sylow(&self) -> Result<Outcome> {
        let p = self.p();
        require!(
            self.g.order().is_multiple_of(p),
            "p = {p} does not divide |G|"
        );
        if !is_p_supersoluble(self.g, p)? {
            return Ok(Outcome::not_satisfied(vec![]));
        }
        let dg = derived_subgroup(self.g)?;
        let nilpotent = is_p_nilpotent(&dg, p)?;
        let opp = o_p_prime(self.g, p)?;
        let unique = !opp.is_trivial() || sylow(self.g, p)?.is_normal_in(self.g);
        Ok(Outcome::decided(
            nilpotent && unique,
            vec![detail("G'", &dg, None)],
        ))
    }

    fn lem_jg(&self) -> Result<Outcome> {
        if let Some(o) = self.check_normal(&["E"]) {
            return Ok(o);
        }
        let e = self.req("E");
        let fs = f_star(e)?;
        let z = hypercenter_u(self.g)?;
        if !fs.is_subgroup_of(&z) {
            return Ok(Outcome::not_satisfied(vec![detail("F*(E)", &fs, None)]));
        }
        Ok(Outcome::decided(
            e.is_subgroup_of(&z),
            vec![detail("Z_U(G)", &z, None)],
        ))
    }

    fn lem_su(&self) -> Result<Outcome> {
        if let Some(o) = self.check_normal(&["E"]) {
            return Ok(o);
        }
        let e = self.req("E");
        let top = quotient_or_self(self.g, e)?;
        match (self.params.part, self.params.p) {
            (Some(1), _) => {
                let z = hypercenter_u(self.g)?;
                if !is_supersoluble(top.codomain())? || !e.is_subgroup_of(&z) {
                    return Ok(Outcome::not_satisfied(vec![detail("Z_U(G)", &z, None)]));
                }
                Ok(Outcome::decided(is_supersoluble(self.g)?, vec![]))
            }
            (_, Some(p)) => {
                let z = hypercenter_pu(self.g, p)?;
                if !is_p_supersoluble(top.codomain(), p)? || !e.is_subgroup_of(&z) {
                    return Ok(Outcome::not_satisfied(vec![detail("Z_pU(G)", &z, None)]));
                }
                let opp = o_p_prime(self.g, p)?;
                let q = quotient_or_self(self.g, &opp)?;
                Ok(Outcome::decided(
                    is_p_supersoluble(q.codomain(), p)?,
                    vec![detail("O_p'(G)", &opp, None)],
                ))
            }
            _ => unreachable!("validated signature"),
        }
    }

    fn lem_equivalent(&self) -> Result<Outcome> {
        let (one, two) = equivalent_sides(self.req("U"), self.req("V"), self.req("W"))?;
        if !one && !two {
            return Ok(Outcome::not_satisfied(vec![]));
        }
        let mut o = Outcome::decided(one && two, vec![]);
        if one != two {
            o.reason = Some(format!("statement (1) is {one}, statement (2) is {two}"));
        }
        Ok(o)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::named_group;
    use crate::constructions::Family;
    use crate::theorems::{HypothesisStatus, Verdict};

    fn inst(t: TheoremId, group: &str, params: Params) -> TheoremInstance {
        TheoremInstance {
            theorem: t,
            group: group.into(),
            params,
        }
    }

    fn s4() -> Group {
        named_group(Family::Symmetric, &[4]).unwrap()
    }

    fn v4_in_s4() -> Vec<String> {
        vec!["(1,2)(3,4)".into(), "(1,3)(2,4)".into()]
    }

    #[test]
    fn theorem_a_on_d8_is_confirmed() {
        let g = named_group(Family::Dihedral, &[8]).unwrap();
        let all = g.generator_texts();
        let params = Params::default()
            .with("N", all.clone())
            .with("X", all)
            .prime(2)
            .order(2);
        let r = evaluate_on(&g, &inst(TheoremId::ThmA, "Dih(8)", params)).unwrap();
        assert_eq!(r.verdict, Verdict::Confirmed, "{r:?}");
    }

    #[test]
    fn theorem_a_on_s4_with_klein_x_is_vacuous() {
        let g = s4();
        let params = Params::default()
            .with("N", vec!["(1,2,3)".into(), "(1,2)(3,4)".into()])
            .with("X", v4_in_s4())
            .prime(2)
            .order(2);
        let r = evaluate_on(&g, &inst(TheoremId::ThmA, "Sym(4)", params)).unwrap();
        assert_eq!(r.hypothesis, HypothesisStatus::NotSatisfied);
        assert_eq!(r.verdict, Verdict::Vacuous);
        let w = r.details[0].report.as_ref().unwrap();
        assert!(!w.holds);
    }

    #[test]
    fn theorem_a_coprime_prime_is_not_applicable() {
        let g = s4();
        let params = Params::default()
            .with("N", v4_in_s4())
            .with("X", v4_in_s4())
            .prime(3)
            .order(3);
        let r = evaluate_on(&g, &inst(TheoremId::ThmA, "Sym(4)", params)).unwrap();
        assert_eq!(r.hypothesis, HypothesisStatus::NotApplicable);
    }

    #[test]
    fn theorem_c_and_d_on_s3() {
        let g = named_group(Family::Symmetric, &[3]).unwrap();
        let params = Params::default().with("N", vec!["(1,2,3)".into()]).prime(3);
        let r = evaluate_on(&g, &inst(TheoremId::ThmCMinimal, "Sym(3)", params)).unwrap();
        assert_eq!(r.verdict, Verdict::Confirmed);
        let params = Params::default().with("N", g.generator_texts()).prime(2);
        let r = evaluate_on(&g, &inst(TheoremId::ThmDMaximal, "Sym(3)", params)).unwrap();
        assert_eq!(r.verdict, Verdict::Confirmed);
    }

    #[test]
    fn theorem_32_on_d8() {
        let g = named_group(Family::Dihedral, &[8]).unwrap();
        let params = Params::default().with("P", g.generator_texts()).prime(2);
        let r = evaluate_on(&g, &inst(TheoremId::Thm32Max, "Dih(8)", params)).unwrap();
        assert_eq!(r.verdict, Verdict::Confirmed);
    }

    #[test]
    fn necessity_on_s4_at_three() {
        let r = evaluate_on(
            &s4(),
            &inst(
                TheoremId::LemNecessity,
                "Sym(4)",
                Params::default().prime(3),
            ),
        )
        .unwrap();
        assert_eq!(r.verdict, Verdict::Confirmed);
    }

    #[test]
    fn signature_is_enforced() {
        let g = s4();
        let missing = inst(TheoremId::ThmA, "Sym(4)", Params::default().prime(2));
        assert!(evaluate_on(&g, &missing).is_err());
        let extra = inst(
            TheoremId::LemSylow,
            "Sym(4)",
            Params::default().prime(2).order(4),
        );
        assert!(evaluate_on(&g, &extra).is_err());
        let composite = inst(TheoremId::LemSylow, "Sym(4)", Params::default().prime(4));
        assert!(evaluate_on(&g, &composite).is_err());
        let mut su = Params::default().with("E", v4_in_s4());
        su.part = Some(2);
        assert!(evaluate_on(&g, &inst(TheoremId::LemSuU, "Sym(4)", su)).is_err());
    }

    #[test]
    fn ove_ii_coprime_image() {
        let g = crate::constructions::generators_for_name("Sym(3)xCyc(2)")
            .and_then(|(n, gens)| Group::from_generators(n, &gens))
            .unwrap();
        let params = Params::default()
            .with("H", vec!["(1,2,3)".into()])
            .with("N", vec!["(4,5)".into()]);
        let r = evaluate_on(&g, &inst(TheoremId::LemOveII, "Sym(3)xCyc(2)", params)).unwrap();
        assert_eq!(r.verdict, Verdict::Confirmed, "{r:?}");
    }

    #[test]
    fn equivalence_sides_agree_on_s4_triple() {
        let g = s4();
        let u = g.subgroup_from_texts(&["(1,2)"]).unwrap();
        let v = g.subgroup_from_texts(&["(1,2,3)"]).unwrap();
        let w = g.subgroup_from_texts(&v4_in_s4()).unwrap();
        let (a, b) = equivalent_sides(&u, &v, &w).unwrap();
        assert_eq!(a, b);
    }
}
