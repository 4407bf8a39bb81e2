//! Short structure labels (`1`, `C4`, `V4`, `D8`, `A4`, ...) for printing
//! subgroups. Labels are decided from the order, commutativity and the
//! multiset of element orders, which separates every group the corpus
//! produces as a normal subgroup or characteristic subgroup of interest.

use std::collections::BTreeMap;

use icpi_core::arith::prime_divisors;
use icpi_core::{Group, Result};

fn order_profile(g: &Group) -> Result<BTreeMap<u64, usize>> {
    let mut m = BTreeMap::new();
    for x in g.elements()?.iter() {
        *m.entry(x.order()).or_insert(0) += 1;
    }
    Ok(m)
}

/// Cyclic factors of an abelian group as prime powers, largest first per prime.
fn abelian_invariants(g: &Group, profile: &BTreeMap<u64, usize>) -> Vec<u64> {
    let mut out = Vec::new();
    for p in prime_divisors(g.order()) {
        // a[i] = log_p #{x : x^(p^i) = 1}
        let mut a = vec![0u32];
        let mut pk = 1u64;
        loop {
            pk *= p;
            let count: usize = profile
                .iter()
                .filter(|(o, _)| pk.is_multiple_of(**o))
                .map(|(_, c)| *c)
                .sum();
            let log = (count as f64).log(p as f64).round() as u32;
            if log == *a.last().unwrap() {
                break;
            }
            a.push(log);
        }
        // Factors of exponent >= i number a[i] - a[i-1].
        let top = a.len() - 1;
        for e in (1..=top).rev() {
            let at_least = a[e] - a[e - 1];
            let more = if e < top { a[e + 1] - a[e] } else { 0 };
            for _ in 0..(at_least - more) {
                out.push(p.pow(e as u32));
            }
        }
    }
    out
}

fn is_dihedral(g: &Group, profile: &BTreeMap<u64, usize>) -> Result<bool> {
    let n = g.order() / 2;
    if !g.order().is_multiple_of(2) || n < 3 {
        return Ok(false);
    }
    let Some(r) = g.elements()?.iter().find(|x| x.order() == n).cloned() else {
        return Ok(false);
    };
    let rotations = g.subgroup(&[r])?;
    let outside_involutions = g
        .elements()?
        .iter()
        .filter(|x| !rotations.contains(x).unwrap_or(true) && x.order() == 2)
        .count() as u64;
    Ok(outside_involutions == n && profile.values().sum::<usize>() as u64 == 2 * n)
}

/// A compact isomorphism-type label.
pub fn label(g: &Group) -> Result<String> {
    let n = g.order();
    if n == 1 {
        return Ok("1".into());
    }
    let profile = order_profile(g)?;
    if profile.contains_key(&n) {
        return Ok(format!("C{n}"));
    }
    if g.is_abelian() {
        let inv = abelian_invariants(g, &profile);
        if inv == [2, 2] {
            return Ok("V4".into());
        }
        if inv.iter().all(|&q| q == inv[0]) {
            return Ok(format!("C{}^{}", inv[0], inv.len()));
        }
        return Ok(inv
            .iter()
            .map(|q| format!("C{q}"))
            .collect::<Vec<_>>()
            .join("x"));
    }
    let counts: Vec<(u64, usize)> = profile.iter().map(|(o, c)| (*o, *c)).collect();
    let named = match (n, counts.as_slice()) {
        (8, [(1, 1), (2, 1), (4, 6)]) => Some("Q8"),
        (12, [(1, 1), (2, 3), (3, 8)]) => Some("A4"),
        (24, [(1, 1), (2, 9), (3, 8), (4, 6)]) => Some("S4"),
        (24, [(1, 1), (2, 1), (3, 8), (4, 6), (6, 8)]) => Some("SL(2,3)"),
        (60, [(1, 1), (2, 15), (3, 20), (5, 24)]) => Some("A5"),
        (120, [(1, 1), (2, 25), (3, 20), (4, 30), (5, 24), (6, 20)]) => Some("S5"),
        _ => None,
    };
    if let Some(s) = named {
        return Ok(s.into());
    }
    if n == 6 {
        return Ok("S3".into());
    }
    if is_dihedral(g, &profile)? {
        return Ok(format!("D{n}"));
    }
    Ok(format!("[order {n}]"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use icpi_core::constructions::generators_for_name;

    fn lab(name: &str) -> String {
        let (d, gens) = generators_for_name(name).unwrap();
        label(&Group::from_generators(d, &gens).unwrap()).unwrap()
    }

    #[test]
    fn common_labels() {
        assert_eq!(lab("Cyc(1)"), "1");
        assert_eq!(lab("Cyc(6)"), "C6");
        assert_eq!(lab("V4"), "V4");
        assert_eq!(lab("EA(3^3)"), "C3^3");
        assert_eq!(lab("Cyc(4)xCyc(2)"), "C4xC2");
        assert_eq!(lab("Dih(8)"), "D8");
        assert_eq!(lab("Dih(20)"), "D20");
        assert_eq!(lab("Sym(3)"), "S3");
        assert_eq!(lab("Q8"), "Q8");
        assert_eq!(lab("Alt(4)"), "A4");
        assert_eq!(lab("Sym(4)"), "S4");
        assert_eq!(lab("SL(2,3)"), "SL(2,3)");
        assert_eq!(lab("Alt(5)"), "A5");
        assert_eq!(lab("Sym(5)"), "S5");
        assert_eq!(lab("Sym(4)xCyc(2)"), "[order 48]");
    }
}
