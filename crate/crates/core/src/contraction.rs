//! Contraction `M/Z`.
//!
//! For a finite `Z` the minimum defining the contracted rank is attained at
//! `Z` itself, so the production oracle is `r'(A) = r(A ∪ Z) - r(Z)`. The
//! minimum over all `Z0 ⊆ Z` is available as [`contracted_rank_by_min`].

use std::sync::Arc;

use crate::error::{MatroidError, Result};
use crate::matroid::{Matroid, RankOracle};
use crate::set::{Element, ElementSet};

struct Contracted {
    parent: Matroid,
    z: ElementSet,
    rank_z: usize,
    map: Vec<Element>,
}

impl RankOracle for Contracted {
    fn ground_size(&self) -> usize {
        self.map.len()
    }

    fn rank(&self, set: ElementSet) -> usize {
        self.parent.r(set.map_through(&self.map) | self.z) - self.rank_z
    }
}

/// `M/Z` on the re-indexed ground set `S - Z`.
#[derive(Debug, Clone)]
pub struct Contraction {
    pub matroid: Matroid,
    pub contracted: ElementSet,
    /// `map[i]` is the original id of element `i` of the contraction.
    pub map: Vec<Element>,
}

impl Contraction {
    pub fn to_parent(&self, set: ElementSet) -> ElementSet {
        set.map_through(&self.map)
    }

    /// `None` when `set` meets the contracted set or leaves the ground set.
    pub fn from_parent(&self, set: ElementSet) -> Option<ElementSet> {
        set.iter()
            .map(|x| self.map.iter().position(|&y| y == x))
            .collect::<Option<ElementSet>>()
    }
}

pub fn contract(m: &Matroid, z: ElementSet) -> Result<Contraction> {
    m.check_subset(z)?;
    let map = (m.ground() - z).to_vec();
    let matroid = Matroid::from_arc(Arc::new(Contracted {
        parent: m.clone(),
        z,
        rank_z: m.r(z),
        map: map.clone(),
    }))
    .with_limits(m.limits());
    Ok(Contraction {
        matroid,
        contracted: z,
        map,
    })
}

/// `min { r(A ∪ Z0) - r(Z0) : Z0 ⊆ Z }`, enumerating every `Z0`. `a` is given
/// in original ids and must avoid `z`.
pub fn contracted_rank_by_min(m: &Matroid, z: ElementSet, a: ElementSet) -> Result<usize> {
    check_contract_args(m, z, a)?;
    Ok(min_over_subsets(m, z, a))
}

pub(crate) fn min_over_subsets(m: &Matroid, z: ElementSet, a: ElementSet) -> usize {
    z.subsets()
        .map(|z0| m.r(a | z0) - m.r(z0))
        .min()
        .expect("∅ is always a subset")
}

fn check_contract_args(m: &Matroid, z: ElementSet, a: ElementSet) -> Result<()> {
    m.check_subset(z)?;
    m.check_subset(a)?;
    if !a.is_disjoint(z) {
        return Err(MatroidError::Input(format!(
            "{a} meets the contracted set {z}"
        )));
    }
    Ok(())
}

/// Whether `z0 ⊆ z` attains the contracted rank of `a`, i.e.
/// `r(A ∪ Z0) - r(Z0) = r'(A)`. All sets are in original ids.
pub fn fits(m: &Matroid, z: ElementSet, a: ElementSet, z0: ElementSet) -> Result<bool> {
    check_contract_args(m, z, a)?;
    if !z0.is_subset(z) {
        return Err(MatroidError::Input(format!(
            "{z0} is not a subset of the contracted set {z}"
        )));
    }
    Ok(fits_unchecked(m, z, a, z0))
}

pub(crate) fn fits_unchecked(m: &Matroid, z: ElementSet, a: ElementSet, z0: ElementSet) -> bool {
    m.r(a | z0) - m.r(z0) == m.r(a | z) - m.r(z)
}
