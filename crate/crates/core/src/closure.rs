//! Closed sets and the closure operator.
//!
//! On a finite ground set `Z` is closed iff adding any outside element raises
//! the rank, and `σ(X) = X ∪ {y : r(X+y) = r(X)}`. The intersection-of-closed-
//! supersets form is kept as [`closure_by_intersection`] so the two can be
//! checked against each other.

use crate::error::Result;
use crate::matroid::Matroid;
use crate::set::ElementSet;

pub fn is_closed(m: &Matroid, z: ElementSet) -> Result<bool> {
    m.check_subset(z)?;
    Ok(closed(m, z))
}

pub(crate) fn closed(m: &Matroid, z: ElementSet) -> bool {
    let rz = m.r(z);
    (m.ground() - z).iter().all(|x| m.r(z.with(x)) > rz)
}

/// `σ(X)`, using `O(n)` rank queries.
pub fn closure(m: &Matroid, x: ElementSet) -> Result<ElementSet> {
    m.check_subset(x)?;
    Ok(span(m, x))
}

pub(crate) fn span(m: &Matroid, x: ElementSet) -> ElementSet {
    let rx = m.r(x);
    x | (m.ground() - x)
        .iter()
        .filter(|&y| m.r(x.with(y)) == rx)
        .collect()
}

/// Intersection of every closed superset of `x`; enumerates all supersets.
pub fn closure_by_intersection(m: &Matroid, x: ElementSet) -> Result<ElementSet> {
    m.check_subset(x)?;
    m.limits()
        .check("closure by intersection", m.len(), m.limits().exhaustive)?;
    let outside = m.ground() - x;
    Ok(outside
        .subsets()
        .map(|extra| x | extra)
        .filter(|&z| closed(m, z))
        .fold(m.ground(), |acc, z| acc & z))
}

/// Every closed set, in canonical order.
pub fn closed_sets(m: &Matroid) -> Result<Vec<ElementSet>> {
    m.limits()
        .check("closed-set enumeration", m.len(), m.limits().exhaustive)?;
    let mut v: Vec<_> = ElementSet::all(m.len()).filter(|&z| closed(m, z)).collect();
    v.sort();
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{graphic_from_pairs, uniform};

    #[test]
    fn closed_examples() {
        let u = uniform(4, 2).unwrap();
        assert!(is_closed(&u, ElementSet::from([0])).unwrap());
        assert!(!is_closed(&u, ElementSet::from([0, 1])).unwrap());
        assert!(is_closed(&u, ElementSet::EMPTY).unwrap());
        assert!(is_closed(&u, u.ground()).unwrap());
        let loopy = graphic_from_pairs(&[(0, 1), (1, 1)]);
        assert!(!is_closed(&loopy, ElementSet::EMPTY).unwrap());
    }

    #[test]
    fn closure_examples() {
        let u = uniform(4, 2).unwrap();
        assert_eq!(closure(&u, ElementSet::from([0, 1])).unwrap(), u.ground());
        assert_eq!(closure(&u, ElementSet::from([0])).unwrap(), ElementSet::from([0]));
        let tri = graphic_from_pairs(&[(0, 1), (0, 2), (1, 2)]);
        for x in ElementSet::all(3) {
            let s = closure(&tri, x).unwrap();
            assert_eq!(closure(&tri, s).unwrap(), s);
        }
    }

    #[test]
    fn intersection_examples() {
        let u = uniform(4, 2).unwrap();
        assert_eq!(
            closure_by_intersection(&u, ElementSet::from([0, 1])).unwrap(),
            u.ground()
        );
        let tri = graphic_from_pairs(&[(0, 1), (0, 2), (1, 2)]);
        assert_eq!(
            closure_by_intersection(&tri, ElementSet::from([0])).unwrap(),
            ElementSet::from([0])
        );
        assert_eq!(closure_by_intersection(&tri, tri.ground()).unwrap(), tri.ground());
    }

    #[test]
    fn closed_sets_of_triangle() {
        let tri = graphic_from_pairs(&[(0, 1), (0, 2), (1, 2)]);
        let shown: Vec<String> = closed_sets(&tri).unwrap().iter().map(|s| s.to_string()).collect();
        assert_eq!(shown, ["{}", "{0}", "{1}", "{2}", "{0,1,2}"]);
    }
}
