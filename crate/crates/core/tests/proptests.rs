use proptest::prelude::*;

use icpi_core::constructions::{
    direct_product, generators_for_name, named_group, quotient_map, Family,
};
use icpi_core::lattice::normal_subgroups;
use icpi_core::{parse_cycles, Group, Permutation};

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(&v).unwrap())
}

fn group(name: &str) -> Group {
    let (n, gens) = generators_for_name(name).unwrap();
    Group::from_generators(n, &gens).unwrap()
}

proptest! {
    #[test]
    fn composition_is_associative(a in perm(7), b in perm(7), c in perm(7)) {
        let left = a.compose(&b).unwrap().compose(&c).unwrap();
        let right = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn inverse_cancels(a in perm(9)) {
        prop_assert!(a.compose(&a.inverse()).unwrap().is_identity());
        prop_assert!(a.inverse().compose(&a).unwrap().is_identity());
    }

    #[test]
    fn order_annihilates(a in perm(10)) {
        let k = a.order();
        prop_assert!(a.pow(k).is_identity());
        for d in 1..k {
            if k % d == 0 {
                prop_assert!(!a.pow(d).is_identity());
            }
        }
    }

    #[test]
    fn cycle_text_round_trips(a in perm(8)) {
        let text = a.to_string();
        prop_assert_eq!(parse_cycles(&text, 8).unwrap(), a);
    }

    #[test]
    fn commutator_matches_definition(a in perm(6), b in perm(6)) {
        let by_hand = a.inverse().compose(&b.inverse()).unwrap().compose(&a).unwrap().compose(&b).unwrap();
        prop_assert_eq!(a.commutator(&b).unwrap(), by_hand);
    }

    #[test]
    fn quotient_maps_are_multiplicative(i in 0usize..64, j in 0usize..64, pick in 0usize..8) {
        let g = group("Sym(4)xCyc(2)");
        let normals: Vec<Group> = normal_subgroups(&g).unwrap().iter().cloned().collect();
        let n = &normals[pick % normals.len()];
        let epi = quotient_map(&g, n).unwrap();
        let els = g.elements().unwrap();
        let (x, y) = (&els[i % els.len()], &els[j % els.len()]);
        let lhs = epi.image(&x.compose(y).unwrap()).unwrap();
        let rhs = epi.image(x).unwrap().compose(&epi.image(y).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(epi.codomain().order() * n.order(), g.order());
        let lifted = epi.lift(&epi.image(x).unwrap()).unwrap();
        prop_assert_eq!(epi.image(&lifted).unwrap(), epi.image(x).unwrap());
    }

    #[test]
    fn projection_undoes_injection(i in 0usize..24, j in 0usize..8) {
        let a = named_group(Family::Symmetric, &[4]).unwrap();
        let b = named_group(Family::Dihedral, &[8]).unwrap();
        let dp = direct_product(&a, &b).unwrap();
        let x = a.elements().unwrap()[i].clone();
        let y = b.elements().unwrap()[j].clone();
        prop_assert_eq!(dp.project_left().image(&dp.inject_left(&x)).unwrap(), x.clone());
        prop_assert_eq!(dp.project_right().image(&dp.inject_right(&y)).unwrap(), y.clone());
        prop_assert!(dp.project_left().image(&dp.inject_right(&y)).unwrap().is_identity());
        let both = dp.inject_left(&x).compose(&dp.inject_right(&y)).unwrap();
        prop_assert!(dp.group.contains(&both).unwrap());
    }
}
