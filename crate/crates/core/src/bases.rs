//! Bases with a chosen order, fundamental circuits, and the map `M_B` sending
//! each element to the order-maximal base element of its fundamental circuit.

use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::closure::span;
use crate::error::{MatroidError, Result};
use crate::matroid::{Circuit, Matroid};
use crate::set::{Element, ElementSet};

/// A base together with a total order on it; the order is the sequence order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WellOrderedBase {
    order: Vec<Element>,
    set: ElementSet,
}

impl WellOrderedBase {
    /// Checks that `order` lists a base of `m` without repeats.
    pub fn new(m: &Matroid, order: Vec<Element>) -> Result<Self> {
        let mut set = ElementSet::EMPTY;
        for &x in &order {
            m.check_element(x)?;
            if set.contains(x) {
                return Err(MatroidError::Input(format!(
                    "element {x} repeated in base order"
                )));
            }
            set.insert(x);
        }
        if !base_test(m, set) {
            return Err(MatroidError::NotABase(set));
        }
        Ok(WellOrderedBase { order, set })
    }

    pub fn order(&self) -> &[Element] {
        &self.order
    }

    pub fn set(&self) -> ElementSet {
        self.set
    }

    pub fn contains(&self, x: Element) -> bool {
        self.set.contains(x)
    }

    /// Position of `x` in the order.
    pub fn position(&self, x: Element) -> Option<usize> {
        self.order.iter().position(|&y| y == x)
    }

    /// The order-maximal member of `set ∩ B`.
    pub fn max_of(&self, set: ElementSet) -> Option<Element> {
        self.order.iter().rev().copied().find(|&b| set.contains(b))
    }
}

impl fmt::Display for WellOrderedBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.order.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

/// Independent and spanning.
pub fn is_base(m: &Matroid, b: ElementSet) -> Result<bool> {
    m.check_subset(b)?;
    Ok(base_test(m, b))
}

fn base_test(m: &Matroid, b: ElementSet) -> bool {
    m.indep(b) && span(m, b) == m.ground()
}

fn check_permutation(m: &Matroid, order: &[Element]) -> Result<()> {
    let seen: ElementSet = order.iter().copied().collect();
    if order.len() != m.len() || seen != m.ground() {
        return Err(MatroidError::Input(format!(
            "order must be a permutation of 0..{}, got {order:?}",
            m.len()
        )));
    }
    Ok(())
}

/// Scans `order` and keeps each element that stays independent with the ones
/// kept so far. The base order is insertion order. Loops are never kept.
pub fn greedy_base(m: &Matroid, order: &[Element]) -> Result<WellOrderedBase> {
    check_permutation(m, order)?;
    Ok(greedy_unchecked(m, order))
}

fn greedy_unchecked(m: &Matroid, order: &[Element]) -> WellOrderedBase {
    let mut set = ElementSet::EMPTY;
    let mut kept = Vec::new();
    for &x in order {
        if m.indep(set.with(x)) {
            set.insert(x);
            kept.push(x);
        }
    }
    WellOrderedBase { order: kept, set }
}

/// The unique circuit inside `B + x`.
///
/// A base element `e` lies on it iff swapping `e` for `x` keeps full rank.
pub fn fundamental_circuit(m: &Matroid, b: &WellOrderedBase, x: Element) -> Result<Circuit> {
    m.check_element(x)?;
    if b.contains(x) {
        return Err(MatroidError::Input(format!(
            "{x} belongs to the base {b}; fundamental circuits need x outside B"
        )));
    }
    if !base_test(m, b.set) {
        return Err(MatroidError::NotABase(b.set));
    }
    Ok(fundamental_unchecked(m, b.set, x))
}

fn fundamental_unchecked(m: &Matroid, b: ElementSet, x: Element) -> Circuit {
    let full = b.len();
    let members = b
        .iter()
        .filter(|&e| m.r(b.without(e).with(x)) == full)
        .collect::<ElementSet>()
        .with(x);
    Circuit::new_unchecked(members)
}

/// `x` for base elements, otherwise the order-maximal base element on the
/// fundamental circuit of `x`.
pub fn mb(m: &Matroid, b: &WellOrderedBase, x: Element) -> Result<Element> {
    m.check_element(x)?;
    if !base_test(m, b.set) {
        return Err(MatroidError::NotABase(b.set));
    }
    mb_unchecked(m, b, x)
}

fn mb_unchecked(m: &Matroid, b: &WellOrderedBase, x: Element) -> Result<Element> {
    if b.contains(x) {
        return Ok(x);
    }
    let c = fundamental_unchecked(m, b.set, x);
    b.max_of(c.members()).ok_or(MatroidError::Loop {
        element: x,
        what: "M_B",
    })
}

/// The partition of the ground set into the fibres of `M_B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MbDecomposition {
    pub base: WellOrderedBase,
    /// `assignment[x] = M_B(x)`
    pub assignment: Vec<Element>,
    /// One entry per base element, in base order.
    pub classes: Vec<(Element, ElementSet)>,
}

impl MbDecomposition {
    pub fn max_class_size(&self) -> usize {
        self.classes.iter().map(|(_, c)| c.len()).max().unwrap_or(0)
    }

    pub fn class_of(&self, b: Element) -> Option<ElementSet> {
        self.classes.iter().find(|(k, _)| *k == b).map(|&(_, c)| c)
    }
}

pub fn mb_classes(m: &Matroid, b: &WellOrderedBase) -> Result<MbDecomposition> {
    if let Some(l) = m.loops().min() {
        return Err(MatroidError::Loop {
            element: l,
            what: "M_B",
        });
    }
    if !base_test(m, b.set) {
        return Err(MatroidError::NotABase(b.set));
    }
    let assignment = (0..m.len())
        .map(|x| mb_unchecked(m, b, x))
        .collect::<Result<Vec<_>>>()?;
    let classes = b
        .order
        .iter()
        .map(|&k| {
            let class = (0..m.len()).filter(|&x| assignment[x] == k).collect();
            (k, class)
        })
        .collect();
    Ok(MbDecomposition {
        base: b.clone(),
        assignment,
        classes,
    })
}

/// Largest ground set for which [`BaseSearch::Exhaustive`] is allowed.
pub const EXHAUSTIVE_BASE_SEARCH_MAX: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseSearch {
    /// Every base under every order; provably optimal.
    Exhaustive,
    /// Greedy bases along `restarts` seeded random orders; not optimal.
    Random { restarts: usize, seed: u64 },
}

impl BaseSearch {
    /// Exhaustive when allowed, otherwise 256 seeded restarts.
    pub fn auto(n: usize, seed: u64) -> Self {
        if n <= EXHAUSTIVE_BASE_SEARCH_MAX {
            BaseSearch::Exhaustive
        } else {
            BaseSearch::Random {
                restarts: 256,
                seed,
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseBound {
    pub base: WellOrderedBase,
    pub max_class_size: usize,
    /// True only for exhaustive search.
    pub optimal: bool,
}

/// A well-ordered base minimizing the largest `M_B` class, ties broken by the
/// lexicographically smallest order.
pub fn best_base_bound(m: &Matroid, search: BaseSearch) -> Result<BaseBound> {
    if let Some(l) = m.loops().min() {
        return Err(MatroidError::Loop {
            element: l,
            what: "M_B",
        });
    }
    let candidates: Vec<WellOrderedBase> = match search {
        BaseSearch::Exhaustive => {
            if m.len() > EXHAUSTIVE_BASE_SEARCH_MAX {
                return Err(MatroidError::TooLarge {
                    operation: "exhaustive base search",
                    n: m.len(),
                    bound: EXHAUSTIVE_BASE_SEARCH_MAX,
                });
            }
            ordered_bases(m)?
        }
        BaseSearch::Random { restarts, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut order: Vec<Element> = (0..m.len()).collect();
            let mut out = vec![greedy_unchecked(m, &order)];
            for _ in 0..restarts {
                order.shuffle(&mut rng);
                out.push(greedy_unchecked(m, &order));
            }
            out
        }
    };
    let mut best: Option<(usize, WellOrderedBase)> = None;
    for b in candidates {
        let size = mb_classes(m, &b)?.max_class_size();
        let better = match &best {
            None => true,
            Some((s, cur)) => (size, &b.order) < (*s, &cur.order),
        };
        if better {
            best = Some((size, b));
        }
    }
    let (max_class_size, base) = best.expect("every matroid has a base");
    Ok(BaseBound {
        base,
        max_class_size,
        optimal: matches!(search, BaseSearch::Exhaustive),
    })
}

/// Every base of `m`, canonically ordered.
pub fn bases(m: &Matroid) -> Result<Vec<ElementSet>> {
    let indep = m.independence_table("base enumeration", m.limits().circuits)?;
    let rank = m.r(m.ground());
    let mut out: Vec<_> = ElementSet::all(m.len())
        .filter(|s| s.len() == rank && indep[s.bits() as usize])
        .collect();
    out.sort();
    Ok(out)
}

/// Every base under every order: bases canonically, orders lexicographically.
pub fn ordered_bases(m: &Matroid) -> Result<Vec<WellOrderedBase>> {
    let mut out = Vec::new();
    for set in bases(m)? {
        for order in permutations(&set.to_vec()) {
            out.push(WellOrderedBase { order, set });
        }
    }
    Ok(out)
}

/// All permutations of `items` in lexicographic order of positions.
pub(crate) fn permutations<T: Copy>(items: &[T]) -> Vec<Vec<T>> {
    let mut idx: Vec<usize> = (0..items.len()).collect();
    let mut out = vec![idx.iter().map(|&i| items[i]).collect()];
    loop {
        let Some(i) = (1..idx.len()).rev().find(|&i| idx[i - 1] < idx[i]) else {
            return out;
        };
        let j = (i..idx.len()).rev().find(|&j| idx[j] > idx[i - 1]).unwrap();
        idx.swap(i - 1, j);
        idx[i..].reverse();
        out.push(idx.iter().map(|&i| items[i]).collect());
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{free, graphic_from_pairs, uniform};

    fn wob(m: &Matroid, order: &[Element]) -> WellOrderedBase {
        WellOrderedBase::new(m, order.to_vec()).unwrap()
    }

    fn triangle() -> Matroid {
        graphic_from_pairs(&[(0, 1), (0, 2), (1, 2)])
    }

    #[test]
    fn greedy_examples() {
        let u = uniform(4, 2).unwrap();
        assert_eq!(greedy_base(&u, &[0, 1, 2, 3]).unwrap().order(), [0, 1]);
        assert_eq!(greedy_base(&u, &[3, 1, 0, 2]).unwrap().order(), [3, 1]);
        assert_eq!(greedy_base(&free(3), &[2, 0, 1]).unwrap().order(), [2, 0, 1]);
        assert!(greedy_base(&uniform(3, 0).unwrap(), &[0, 1, 2])
            .unwrap()
            .order()
            .is_empty());
        assert!(greedy_base(&u, &[0, 1, 2]).is_err());
        assert!(greedy_base(&u, &[0, 1, 2, 2]).is_err());
    }

    #[test]
    fn is_base_examples() {
        let u = uniform(4, 2).unwrap();
        assert!(is_base(&u, ElementSet::from([0, 1])).unwrap());
        assert!(!is_base(&u, ElementSet::from([0])).unwrap());
        assert!(!is_base(&u, ElementSet::from([0, 1, 2])).unwrap());
        assert!(WellOrderedBase::new(&u, vec![0]).is_err());
    }

    #[test]
    fn fundamental_circuit_examples() {
        let u = uniform(4, 2).unwrap();
        let b = wob(&u, &[0, 1]);
        assert_eq!(
            fundamental_circuit(&u, &b, 2).unwrap().members(),
            ElementSet::from([0, 1, 2])
        );
        assert!(fundamental_circuit(&u, &b, 0).is_err());

        let tri = triangle();
        let b = wob(&tri, &[0, 1]);
        assert_eq!(fundamental_circuit(&tri, &b, 2).unwrap().members(), tri.ground());

        // theta: tree {0,1,3}, chord 2 = (v1,v2) closes triangle {0,1,2}
        let theta = graphic_from_pairs(&[(0, 1), (0, 2), (1, 2), (0, 3), (1, 3)]);
        let b = wob(&theta, &[0, 1, 3]);
        assert_eq!(
            fundamental_circuit(&theta, &b, 2).unwrap().members(),
            ElementSet::from([0, 1, 2])
        );
        assert_eq!(
            fundamental_circuit(&theta, &b, 4).unwrap().members(),
            ElementSet::from([0, 3, 4])
        );
    }

    #[test]
    fn mb_examples() {
        let u = uniform(4, 2).unwrap();
        assert_eq!(mb(&u, &wob(&u, &[0, 1]), 2).unwrap(), 1);
        assert_eq!(mb(&u, &wob(&u, &[1, 0]), 2).unwrap(), 0);
        assert_eq!(mb(&u, &wob(&u, &[1, 0]), 1).unwrap(), 1);
    }

    #[test]
    fn class_examples() {
        let u = uniform(4, 2).unwrap();
        let d = mb_classes(&u, &wob(&u, &[0, 1])).unwrap();
        assert_eq!(
            d.classes,
            vec![(0, ElementSet::from([0])), (1, ElementSet::from([1, 2, 3]))]
        );
        assert_eq!(d.max_class_size(), 3);

        let f = free(4);
        assert_eq!(mb_classes(&f, &wob(&f, &[3, 2, 1, 0])).unwrap().max_class_size(), 1);

        let tri = triangle();
        let d = mb_classes(&tri, &wob(&tri, &[0, 1])).unwrap();
        assert_eq!(
            d.classes,
            vec![(0, ElementSet::from([0])), (1, ElementSet::from([1, 2]))]
        );

        let loopy = graphic_from_pairs(&[(0, 1), (1, 1)]);
        let b = greedy_base(&loopy, &[0, 1]).unwrap();
        assert!(matches!(mb_classes(&loopy, &b), Err(MatroidError::Loop { element: 1, .. })));
    }

    #[test]
    fn best_bound_examples() {
        let u = uniform(4, 2).unwrap();
        assert_eq!(ordered_bases(&u).unwrap().len(), 12);
        let bb = best_base_bound(&u, BaseSearch::Exhaustive).unwrap();
        assert_eq!((bb.max_class_size, bb.optimal), (3, true));
        for b in ordered_bases(&u).unwrap() {
            assert_eq!(mb_classes(&u, &b).unwrap().max_class_size(), 3);
        }
        assert_eq!(best_base_bound(&free(4), BaseSearch::Exhaustive).unwrap().max_class_size, 1);
        let tri = best_base_bound(&triangle(), BaseSearch::Exhaustive).unwrap();
        assert_eq!(tri.max_class_size, 2);
        assert_eq!(tri.base.order(), [0, 1]);

        let h = best_base_bound(&u, BaseSearch::Random { restarts: 10, seed: 7 }).unwrap();
        assert_eq!((h.max_class_size, h.optimal), (3, false));
        assert!(best_base_bound(&uniform(9, 2).unwrap(), BaseSearch::Exhaustive).is_err());
    }

    #[test]
    fn permutations_are_lexicographic() {
        let p = permutations(&[1, 2, 3]);
        assert_eq!(
            p,
            vec![
                vec![1, 2, 3],
                vec![1, 3, 2],
                vec![2, 1, 3],
                vec![2, 3, 1],
                vec![3, 1, 2],
                vec![3, 2, 1]
            ]
        );
        assert_eq!(permutations::<u8>(&[]), vec![Vec::<u8>::new()]);
    }
}
