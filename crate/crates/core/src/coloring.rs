//! Proper colorings, chromatic and list chromatic numbers, and the coloring
//! built from a well-ordered base.
//!
//! Colors are small integers. Properness only depends on which elements share
//! a color, so every search here works up to color renaming: the chromatic
//! search fixes the first use of each color, and the listing enumeration
//! relabels colors by first occurrence.

use std::fmt;
use std::ops::ControlFlow;

use crate::bases::{mb_classes, WellOrderedBase};
use crate::closure::span;
use crate::error::{MatroidError, Result};
use crate::matroid::{Circuit, Matroid, Verdict};
use crate::set::{Element, ElementSet};

pub type Color = u32;

/// A total map from elements to colors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coloring(Vec<Color>);

impl Coloring {
    pub fn new(colors: Vec<Color>) -> Self {
        Coloring(colors)
    }

    /// Fails on the first uncolored element.
    pub fn from_partial(colors: Vec<Option<Color>>) -> Result<Self> {
        colors
            .iter()
            .enumerate()
            .map(|(x, c)| {
                c.ok_or_else(|| MatroidError::Input(format!("partial coloring: element {x} has no color")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Coloring)
    }

    pub fn colors(&self) -> &[Color] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, x: Element) -> Option<Color> {
        self.0.get(x).copied()
    }

    /// `Φ^{-1}(c)`
    pub fn class(&self, c: Color) -> ElementSet {
        self.0
            .iter()
            .enumerate()
            .filter(|&(_, &y)| y == c)
            .map(|(x, _)| x)
            .collect()
    }

    /// Distinct colors in ascending order.
    pub fn palette(&self) -> Vec<Color> {
        let mut v = self.0.clone();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// The coloring of the first `len` elements.
    pub fn prefix(&self, len: usize) -> Coloring {
        Coloring(self.0[..len].to_vec())
    }

    pub fn respects(&self, l: &Listing) -> bool {
        self.0.len() == l.len() && self.0.iter().enumerate().all(|(x, c)| l.list(x).contains(c))
    }
}

impl fmt::Display for Coloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (x, c) in self.0.iter().enumerate() {
            if x > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{x}:{c}")?;
        }
        Ok(())
    }
}

/// A color list per element; lists are kept sorted without repeats.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Listing(Vec<Vec<Color>>);

impl Listing {
    pub fn new(mut lists: Vec<Vec<Color>>) -> Self {
        for l in &mut lists {
            l.sort_unstable();
            l.dedup();
        }
        Listing(lists)
    }

    /// Every element gets `{0, .., k-1}`.
    pub fn uniform(n: usize, k: usize) -> Self {
        Listing(vec![(0..k as Color).collect(); n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn list(&self, x: Element) -> &[Color] {
        &self.0[x]
    }

    pub fn lists(&self) -> &[Vec<Color>] {
        &self.0
    }

    pub fn min_list_size(&self) -> usize {
        self.0.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// The lists of the first `len` elements.
    pub fn prefix(&self, len: usize) -> Listing {
        Listing(self.0[..len].to_vec())
    }
}

impl fmt::Display for Listing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (x, l) in self.0.iter().enumerate() {
            if x > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{x}:{{")?;
            for (i, c) in l.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{c}")?;
            }
            f.write_str("}")?;
        }
        Ok(())
    }
}

fn check_total(m: &Matroid, len: usize, what: &str) -> Result<()> {
    if len != m.len() {
        return Err(MatroidError::Input(format!(
            "{what} covers {len} elements but the ground set has {}",
            m.len()
        )));
    }
    Ok(())
}

/// Every color class is independent.
pub fn is_proper(m: &Matroid, phi: &Coloring) -> Result<bool> {
    check_total(m, phi.len(), "coloring")?;
    Ok(phi.palette().into_iter().all(|c| m.indep(phi.class(c))))
}

/// The first circuit (canonical order) lying inside one color class. A
/// coloring is proper iff there is none.
pub fn monochromatic_circuit(m: &Matroid, phi: &Coloring) -> Result<Option<(Circuit, Color)>> {
    check_total(m, phi.len(), "coloring")?;
    let circuits = m.circuits()?;
    Ok(circuits.into_iter().find_map(|c| {
        let mut colors = c.members().iter().map(|x| phi.0[x]);
        let first = colors.next()?;
        colors.all(|y| y == first).then_some((c, first))
    }))
}

fn first_loop_error(m: &Matroid) -> Result<()> {
    match m.loops().min() {
        Some(l) => Err(MatroidError::NoProperColoring(l)),
        None => Ok(()),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chromatic {
    pub value: usize,
    pub witness: Coloring,
}

/// Least `k` such that the ground set splits into `k` independent sets.
pub fn chromatic_number(m: &Matroid) -> Result<Chromatic> {
    first_loop_error(m)?;
    let indep = m.independence_table("chromatic number", m.limits().exhaustive)?;
    let n = m.len();
    for k in 0..=n {
        let mut colors = vec![0; n];
        let mut classes = vec![ElementSet::EMPTY; k];
        if k_color(&indep, 0, 0, &mut classes, &mut colors) {
            return Ok(Chromatic {
                value: k,
                witness: Coloring(colors),
            });
        }
    }
    unreachable!("a loop-free matroid is colored by singletons")
}

fn k_color(
    indep: &[bool],
    x: Element,
    used: usize,
    classes: &mut [ElementSet],
    colors: &mut [Color],
) -> bool {
    if x == colors.len() {
        return true;
    }
    // a color first used here is interchangeable with any other unused one
    let limit = (used + 1).min(classes.len());
    for c in 0..limit {
        let grown = classes[c].with(x);
        if !indep[grown.bits() as usize] {
            continue;
        }
        let prev = classes[c];
        classes[c] = grown;
        colors[x] = c as Color;
        if k_color(indep, x + 1, used.max(c + 1), classes, colors) {
            return true;
        }
        classes[c] = prev;
    }
    false
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ListColoring {
    Colored(Coloring),
    /// The element has an empty list, so nothing can be tried.
    EmptyList(Element),
    /// The search space was exhausted.
    Uncolorable,
}

impl ListColoring {
    pub fn coloring(&self) -> Option<&Coloring> {
        match self {
            ListColoring::Colored(c) => Some(c),
            _ => None,
        }
    }
}

/// A proper coloring with `Φ(x) ∈ L(x)` for all `x`, if one exists.
///
/// Elements are tried in order of ascending list size (ties by id) and colors
/// in ascending order, so the result is the first such coloring in that order.
pub fn is_list_colorable(m: &Matroid, l: &Listing) -> Result<ListColoring> {
    check_total(m, l.len(), "listing")?;
    m.limits()
        .check("list coloring", m.len(), m.limits().exhaustive)?;
    if let Some(x) = (0..l.len()).find(|&x| l.list(x).is_empty()) {
        return Ok(ListColoring::EmptyList(x));
    }
    Ok(match list_color(l.lists(), |s| m.indep(s)) {
        Some(c) => ListColoring::Colored(c),
        None => ListColoring::Uncolorable,
    })
}

/// Backtracking list coloring against an independence predicate.
pub(crate) fn list_color(lists: &[Vec<Color>], indep: impl Fn(ElementSet) -> bool) -> Option<Coloring> {
    let mut order: Vec<Element> = (0..lists.len()).collect();
    order.sort_by_key(|&x| (lists[x].len(), x));
    let colors_needed = lists
        .iter()
        .flat_map(|l| l.iter())
        .max()
        .map_or(0, |&c| c as usize + 1);
    let mut classes = vec![ElementSet::EMPTY; colors_needed];
    let mut colors = vec![0; lists.len()];

    fn go(
        pos: usize,
        order: &[Element],
        lists: &[Vec<Color>],
        indep: &impl Fn(ElementSet) -> bool,
        classes: &mut [ElementSet],
        colors: &mut [Color],
    ) -> bool {
        let Some(&x) = order.get(pos) else {
            return true;
        };
        for &c in &lists[x] {
            let prev = classes[c as usize];
            let grown = prev.with(x);
            if !indep(grown) {
                continue;
            }
            classes[c as usize] = grown;
            colors[x] = c;
            if go(pos + 1, order, lists, indep, classes, colors) {
                return true;
            }
            classes[c as usize] = prev;
        }
        false
    }

    go(0, &order, lists, &indep, &mut classes, &mut colors).then_some(Coloring(colors))
}

/// Enumerates every `k`-listing of `n` elements up to color renaming: colors
/// are numbered by first occurrence, so element `0` always gets
/// `{0, .., k-1}` and each later list picks some already-used colors plus the
/// next fresh ones. The constant listing comes first.
pub fn for_each_canonical_listing<B>(
    n: usize,
    k: usize,
    mut f: impl FnMut(&[Vec<Color>]) -> ControlFlow<B>,
) -> ControlFlow<B> {
    let mut lists: Vec<Vec<Color>> = Vec::with_capacity(n);
    if n == 0 {
        return f(&lists);
    }
    lists.push((0..k as Color).collect());
    extend_listing(n, k, k, &mut lists, &mut f)
}

fn extend_listing<B>(
    n: usize,
    k: usize,
    used: usize,
    lists: &mut Vec<Vec<Color>>,
    f: &mut impl FnMut(&[Vec<Color>]) -> ControlFlow<B>,
) -> ControlFlow<B> {
    if lists.len() == n {
        return f(lists);
    }
    for old in (0..=k.min(used)).rev() {
        let fresh = (used..used + k - old).map(|c| c as Color);
        let mut result = ControlFlow::Continue(());
        for_each_combination(used, old, |combo| {
            let list: Vec<Color> = combo.iter().map(|&c| c as Color).chain(fresh.clone()).collect();
            lists.push(list);
            let r = extend_listing(n, k, used + k - old, lists, f);
            lists.pop();
            if r.is_break() {
                result = r;
                return false;
            }
            true
        });
        result?;
    }
    ControlFlow::Continue(())
}

/// Calls `f` on each `r`-subset of `0..n` in lexicographic order until it
/// returns false.
fn for_each_combination(n: usize, r: usize, mut f: impl FnMut(&[usize]) -> bool) {
    if r > n {
        return;
    }
    let mut idx: Vec<usize> = (0..r).collect();
    loop {
        if !f(&idx) {
            return;
        }
        let Some(i) = (0..r).rev().find(|&i| idx[i] < n - r + i) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..r {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ListChromatic {
    /// `None` when no `k ≤ kmax` works, i.e. the value is at least `kmax + 1`.
    pub value: Option<usize>,
    /// For each failed `k`, the first uncolorable canonical `k`-listing.
    pub failures: Vec<(usize, Listing)>,
    /// For each `k` tried, the number of canonical listings examined.
    pub examined: Vec<(usize, u64)>,
    /// A coloring for the constant listing at the final `k`, when found.
    pub witness: Option<Coloring>,
}

/// Least `k ≤ kmax` such that every `k`-listing admits a proper list coloring,
/// by exhaustive enumeration of canonical listings.
pub fn list_chromatic_number(m: &Matroid, kmax: usize) -> Result<ListChromatic> {
    first_loop_error(m)?;
    let limits = m.limits();
    limits.check("list chromatic number", m.len(), limits.list_coloring)?;
    if kmax > limits.list_kmax {
        return Err(MatroidError::TooLarge {
            operation: "list chromatic number (list size)",
            n: kmax,
            bound: limits.list_kmax,
        });
    }
    let indep = m.independence_table("list chromatic number", limits.list_coloring)?;
    let test = |s: ElementSet| indep[s.bits() as usize];
    let n = m.len();
    let mut out = ListChromatic {
        value: None,
        failures: Vec::new(),
        examined: Vec::new(),
        witness: None,
    };
    if n == 0 {
        out.value = Some(0);
        out.witness = Some(Coloring(Vec::new()));
        return Ok(out);
    }
    for k in 1..=kmax {
        let mut count = 0u64;
        let bad = for_each_canonical_listing(n, k, |lists| {
            count += 1;
            match list_color(lists, test) {
                Some(_) => ControlFlow::Continue(()),
                None => ControlFlow::Break(Listing(lists.to_vec())),
            }
        });
        out.examined.push((k, count));
        match bad {
            ControlFlow::Break(l) => out.failures.push((k, l)),
            ControlFlow::Continue(()) => {
                out.value = Some(k);
                out.witness = list_color(Listing::uniform(n, k).lists(), test);
                break;
            }
        }
    }
    Ok(out)
}

/// Colors each `M_B` class injectively from its members' lists. Requires every
/// member of a class to have at least as many list colors as the class has
/// members. The result is checked for properness before it is returned.
pub fn color_from_base(m: &Matroid, b: &WellOrderedBase, l: &Listing) -> Result<Coloring> {
    check_total(m, l.len(), "listing")?;
    let d = mb_classes(m, b)?;
    for &(key, class) in &d.classes {
        for x in class {
            if l.list(x).len() < class.len() {
                return Err(MatroidError::ListTooSmall {
                    element: x,
                    class_key: key,
                    available: l.list(x).len(),
                    needed: class.len(),
                });
            }
        }
    }
    let mut colors = vec![0; m.len()];
    for &(_, class) in &d.classes {
        let mut taken: Vec<Color> = Vec::with_capacity(class.len());
        for x in class {
            let c = *l
                .list(x)
                .iter()
                .find(|c| !taken.contains(c))
                .expect("list longer than the class");
            taken.push(c);
            colors[x] = c;
        }
    }
    let phi = Coloring(colors);
    if !is_proper(m, &phi)? {
        return Err(MatroidError::Certificate(format!(
            "coloring {phi} built from base {b} is not proper"
        )));
    }
    Ok(phi)
}

/// Gives every element a list color different from all earlier elements;
/// possible whenever element `x` has more than `x` list colors.
pub fn distinct_coloring(m: &Matroid, l: &Listing) -> Result<Coloring> {
    check_total(m, l.len(), "listing")?;
    first_loop_error(m)?;
    let mut colors: Vec<Color> = Vec::with_capacity(m.len());
    for x in 0..m.len() {
        let c = l
            .list(x)
            .iter()
            .copied()
            .find(|c| !colors.contains(c))
            .ok_or(MatroidError::ListTooSmall {
                element: x,
                class_key: x,
                available: l.list(x).len(),
                needed: x + 1,
            })?;
        colors.push(c);
    }
    Ok(Coloring(colors))
}

/// Checks, for a set `A`, that the elements outside `A` spanned by `A` are
/// sparse: any `|A|+1` of them are dependent, and there are at most
/// `Chr · |A|` of them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeBound {
    pub set: ElementSet,
    /// `σ(A) - A`
    pub spanned_outside: ElementSet,
    pub chromatic: usize,
    /// First independent `(|A|+1)`-subset of `σ(A) - A`, if any.
    pub dependence: Verdict<ElementSet>,
    pub count_holds: bool,
}

impl DegreeBound {
    pub fn passes(&self) -> bool {
        self.dependence.is_pass() && self.count_holds
    }
}

pub fn degree_bound_check(m: &Matroid, a: ElementSet) -> Result<DegreeBound> {
    m.check_subset(a)?;
    let chromatic = chromatic_number(m)?.value;
    Ok(degree_bound_with(m, a, chromatic))
}

pub(crate) fn degree_bound_with(m: &Matroid, a: ElementSet, chromatic: usize) -> DegreeBound {
    let spanned_outside = span(m, a) - a;
    let dependence = spanned_outside
        .subsets_of_size(a.len() + 1)
        .into_iter()
        .find(|&s| m.indep(s))
        .map_or(Verdict::Pass, Verdict::Fail);
    DegreeBound {
        set: a,
        spanned_outside,
        chromatic,
        dependence,
        count_holds: spanned_outside.len() <= chromatic * a.len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bases::ordered_bases;
    use crate::constructions::{free, graphic_from_pairs, uniform};

    fn u24() -> Matroid {
        uniform(4, 2).unwrap()
    }

    fn triangle() -> Matroid {
        graphic_from_pairs(&[(0, 1), (0, 2), (1, 2)])
    }

    #[test]
    fn properness_examples() {
        let m = u24();
        let good = Coloring::new(vec![0, 0, 1, 1]);
        let bad = Coloring::new(vec![0, 0, 0, 1]);
        assert!(is_proper(&m, &good).unwrap());
        assert_eq!(monochromatic_circuit(&m, &good).unwrap(), None);
        assert!(!is_proper(&m, &bad).unwrap());
        let (c, col) = monochromatic_circuit(&m, &bad).unwrap().unwrap();
        assert_eq!((c.members(), col), (ElementSet::from([0, 1, 2]), 0));

        let loopy = graphic_from_pairs(&[(0, 1), (2, 2)]);
        for phi in [vec![0, 1], vec![0, 0], vec![5, 7]] {
            assert!(!is_proper(&loopy, &Coloring::new(phi)).unwrap());
        }
        assert!(is_proper(&m, &Coloring::new(vec![0, 1])).is_err());
        assert!(Coloring::from_partial(vec![Some(0), None]).is_err());
    }

    #[test]
    fn chromatic_examples() {
        let c = chromatic_number(&u24()).unwrap();
        assert_eq!(c.value, 2);
        assert!(is_proper(&u24(), &c.witness).unwrap());
        for n in 1..=6 {
            assert_eq!(chromatic_number(&uniform(n, 1).unwrap()).unwrap().value, n);
        }
        assert_eq!(chromatic_number(&free(5)).unwrap().value, 1);
        assert_eq!(chromatic_number(&triangle()).unwrap().value, 2);
        let loopy = graphic_from_pairs(&[(0, 1), (2, 2)]);
        assert_eq!(chromatic_number(&loopy), Err(MatroidError::NoProperColoring(1)));
    }

    #[test]
    fn list_coloring_examples() {
        let m = u24();
        let found = is_list_colorable(&m, &Listing::uniform(4, 2)).unwrap();
        assert_eq!(found, ListColoring::Colored(Coloring::new(vec![0, 0, 1, 1])));

        let forced = Listing::new(vec![vec![0], vec![0], vec![0], vec![1]]);
        assert_eq!(is_list_colorable(&m, &forced).unwrap(), ListColoring::Uncolorable);

        let single = free(1);
        let l = Listing::new(vec![vec![2]]);
        assert_eq!(
            is_list_colorable(&single, &l).unwrap(),
            ListColoring::Colored(Coloring::new(vec![2]))
        );
        let empty = Listing::new(vec![vec![0], vec![], vec![1], vec![1]]);
        assert_eq!(is_list_colorable(&m, &empty).unwrap(), ListColoring::EmptyList(1));
    }

    #[test]
    fn list_chromatic_examples() {
        let r = list_chromatic_number(&u24(), 3).unwrap();
        assert_eq!(r.value, Some(2));
        assert_eq!(r.failures.len(), 1);
        assert_eq!(r.failures[0].1, Listing::uniform(4, 1));

        assert_eq!(list_chromatic_number(&free(4), 3).unwrap().value, Some(1));
        let u13 = list_chromatic_number(&uniform(3, 1).unwrap(), 3).unwrap();
        assert_eq!(u13.value, Some(3));
        assert_eq!(u13.failures.len(), 2);

        let short = list_chromatic_number(&uniform(3, 1).unwrap(), 2).unwrap();
        assert_eq!(short.value, None);
        assert!(list_chromatic_number(&uniform(6, 2).unwrap(), 2).is_err());
        assert!(list_chromatic_number(&u24(), 5).is_err());
    }

    #[test]
    fn canonical_listing_counts() {
        // counts from the recurrence sum_j C(used, j) * count(used + k - j)
        let count = |n, k| {
            let mut c = 0u64;
            let _ = for_each_canonical_listing::<()>(n, k, |_| {
                c += 1;
                ControlFlow::Continue(())
            });
            c
        };
        assert_eq!(count(3, 2), 29);
        assert_eq!(count(4, 2), 321);
        assert_eq!(count(4, 3), 7284);
        assert_eq!(count(5, 1), 52);
    }

    #[test]
    fn canonical_listings_cover_all_listings_up_to_renaming() {
        // every 2-listing of 3 elements over colors {0..5} relabels to a canonical one
        let mut canon = std::collections::HashSet::new();
        let _ = for_each_canonical_listing::<()>(3, 2, |l| {
            canon.insert(l.to_vec());
            ControlFlow::Continue(())
        });
        let pairs: Vec<Vec<Color>> = (0..6)
            .flat_map(|a| (a + 1..6).map(move |b| vec![a, b]))
            .collect();
        for a in &pairs {
            for b in &pairs {
                for c in &pairs {
                    let mut relabel: Vec<Option<Color>> = vec![None; 6];
                    let mut next = 0;
                    let mut out = Vec::new();
                    for l in [a, b, c] {
                        let mut mapped: Vec<Color> = l
                            .iter()
                            .map(|&x| {
                                *relabel[x as usize].get_or_insert_with(|| {
                                    next += 1;
                                    next - 1
                                })
                            })
                            .collect();
                        mapped.sort();
                        out.push(mapped);
                    }
                    assert!(canon.contains(&out), "{out:?} missing");
                }
            }
        }
    }

    #[test]
    fn color_from_base_examples() {
        let m = u24();
        let b = WellOrderedBase::new(&m, vec![0, 1]).unwrap();
        let phi = color_from_base(&m, &b, &Listing::uniform(4, 3)).unwrap();
        assert_eq!(phi, Coloring::new(vec![0, 0, 1, 2]));
        assert!(is_proper(&m, &phi).unwrap());

        let f = free(3);
        let b = WellOrderedBase::new(&f, vec![0, 1, 2]).unwrap();
        let l = Listing::new(vec![vec![4], vec![4], vec![9]]);
        assert_eq!(color_from_base(&f, &b, &l).unwrap(), Coloring::new(vec![4, 4, 9]));

        let tri = triangle();
        for b in ordered_bases(&tri).unwrap() {
            let phi = color_from_base(&tri, &b, &Listing::uniform(3, 2)).unwrap();
            assert!(is_proper(&tri, &phi).unwrap());
        }

        let b = WellOrderedBase::new(&m, vec![0, 1]).unwrap();
        assert_eq!(
            color_from_base(&m, &b, &Listing::uniform(4, 2)),
            Err(MatroidError::ListTooSmall {
                element: 1,
                class_key: 1,
                available: 2,
                needed: 3
            })
        );
    }

    #[test]
    fn distinct_coloring_is_proper() {
        let m = uniform(4, 1).unwrap();
        let l = Listing::new(vec![vec![0, 1, 2, 3]; 4]);
        let phi = distinct_coloring(&m, &l).unwrap();
        assert_eq!(phi, Coloring::new(vec![0, 1, 2, 3]));
        assert!(is_proper(&m, &phi).unwrap());
    }

    #[test]
    fn degree_bound_examples() {
        let d = degree_bound_check(&u24(), ElementSet::from([0, 1])).unwrap();
        assert_eq!((d.spanned_outside, d.chromatic), (ElementSet::from([2, 3]), 2));
        assert!(d.passes());

        let d = degree_bound_check(&triangle(), ElementSet::EMPTY).unwrap();
        assert!(d.spanned_outside.is_empty() && d.passes());

        let d = degree_bound_check(&uniform(5, 1).unwrap(), ElementSet::from([0])).unwrap();
        assert_eq!(d.spanned_outside.len(), 4);
        assert_eq!(d.chromatic, 5);
        assert!(d.passes());
    }
}
