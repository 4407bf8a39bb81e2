use crate::config;
use crate::error::{GroupError, Result};
use crate::group::Group;
use crate::perm::Permutation;

use super::quotient::Epimorphism;

/// `A x B` acting on `deg(A) + deg(B)` points, `A` on the first block.
#[derive(Clone, Debug)]
pub struct DirectProduct {
    pub group: Group,
    /// The copy `A x 1`.
    pub left: Group,
    /// The copy `1 x B`.
    pub right: Group,
    left_factor: Group,
    right_factor: Group,
}

pub fn direct_product(a: &Group, b: &Group) -> Result<DirectProduct> {
    let degree = a.degree() + b.degree();
    let cap = config::limits().degree_cap;
    if degree as u64 > cap {
        return Err(GroupError::capacity("product degree", cap, degree as u64));
    }
    let lg: Vec<Permutation> = a
        .generators()
        .iter()
        .map(|g| g.shifted(0, degree))
        .collect();
    let rg: Vec<Permutation> = b
        .generators()
        .iter()
        .map(|g| g.shifted(a.degree(), degree))
        .collect();
    let left = Group::from_generators(degree, &lg)?;
    let right = Group::from_generators(degree, &rg)?;
    let all: Vec<Permutation> = lg.into_iter().chain(rg).collect();
    let group = Group::from_generators(degree, &all)?;
    Ok(DirectProduct {
        group,
        left,
        right,
        left_factor: a.clone(),
        right_factor: b.clone(),
    })
}

impl DirectProduct {
    pub fn project_left(&self) -> Epimorphism {
        Epimorphism::projection(&self.group, &self.left_factor, &self.right, 0)
    }

    pub fn project_right(&self) -> Epimorphism {
        Epimorphism::projection(
            &self.group,
            &self.right_factor,
            &self.left,
            self.left_factor.degree(),
        )
    }

    pub fn inject_left(&self, a: &Permutation) -> Permutation {
        a.shifted(0, self.group.degree())
    }

    pub fn inject_right(&self, b: &Permutation) -> Permutation {
        b.shifted(self.left_factor.degree(), self.group.degree())
    }
}
