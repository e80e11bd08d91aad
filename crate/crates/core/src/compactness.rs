//! Extending list colorings along a growing chain of finite restrictions.
//!
//! A [`ChainedMatroid`] is a sequence of matroids on ground sets
//! `S_0 ⊂ S_1 ⊂ ...`, each a prefix `{0, .., |S_i|-1}` of the next, with ranks
//! agreeing on common subsets. Instead of choosing a coloring per finite set
//! and gluing them with an ultrafilter, [`extend_coloring`] runs a depth-first
//! search over the finitely branching tree whose level-`i` nodes are proper
//! list colorings of level `i` and whose edges are restriction. At any finite
//! depth this search is exhaustive, so success certifies that the whole
//! initial chain is simultaneously colorable.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coloring::{is_list_colorable, Color, Coloring, ListColoring, Listing};
use crate::constructions::{graphic_from_pairs, uniform};
use crate::error::{MatroidError, Result};
use crate::matroid::Matroid;
use crate::set::{ElementSet, MAX_ELEMENTS};

/// Built-in infinite chain families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainFamily {
    /// Level `i` is the graphic matroid of `i+1` vertex-disjoint triangles.
    DisjointTriangles,
    /// Level `i` is the graphic matroid of cycles of lengths `3, .., i+3`
    /// glued at one common vertex.
    GrowingCycle,
    /// Level `i` is `U_{2, i+3}`.
    GrowingUniform,
}

impl ChainFamily {
    pub const ALL: [ChainFamily; 3] = [
        ChainFamily::DisjointTriangles,
        ChainFamily::GrowingCycle,
        ChainFamily::GrowingUniform,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ChainFamily::DisjointTriangles => "disjoint-triangles",
            ChainFamily::GrowingCycle => "growing-cycle",
            ChainFamily::GrowingUniform => "growing-uniform",
        }
    }

    fn level_size(self, i: usize) -> usize {
        match self {
            ChainFamily::DisjointTriangles => 3 * (i + 1),
            ChainFamily::GrowingCycle => (0..=i).map(|j| j + 3).sum(),
            ChainFamily::GrowingUniform => i + 3,
        }
    }

    fn level(self, i: usize) -> Result<Matroid> {
        let n = self.level_size(i);
        if n > MAX_ELEMENTS {
            return Err(MatroidError::Input(format!(
                "level {i} of {} has {n} elements, above the {MAX_ELEMENTS}-element limit",
                self.name()
            )));
        }
        Ok(match self {
            ChainFamily::DisjointTriangles => {
                let pairs: Vec<_> = (0..=i)
                    .flat_map(|t| {
                        let v = 3 * t;
                        [(v, v + 1), (v, v + 2), (v + 1, v + 2)]
                    })
                    .collect();
                graphic_from_pairs(&pairs)
            }
            ChainFamily::GrowingCycle => {
                let mut pairs = Vec::new();
                let mut next_vertex = 1;
                for j in 0..=i {
                    let len = j + 3;
                    let mut prev = 0;
                    for _ in 0..len - 1 {
                        pairs.push((prev, next_vertex));
                        prev = next_vertex;
                        next_vertex += 1;
                    }
                    pairs.push((prev, 0));
                }
                graphic_from_pairs(&pairs)
            }
            ChainFamily::GrowingUniform => uniform(n, 2)?,
        })
    }
}

impl fmt::Display for ChainFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ChainFamily {
    type Err = MatroidError;

    fn from_str(s: &str) -> Result<Self> {
        ChainFamily::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = ChainFamily::ALL.iter().map(|f| f.name()).collect();
                MatroidError::Input(format!(
                    "unknown chain family `{s}` (expected one of {})",
                    names.join(", ")
                ))
            })
    }
}

#[derive(Debug, Clone)]
enum Source {
    Family(ChainFamily),
    Levels(Vec<Matroid>),
}

#[derive(Debug, Clone)]
pub struct ChainedMatroid {
    source: Source,
}

/// Subsets of a level compared exhaustively up to this size, sampled above.
const EXHAUSTIVE_CONSISTENCY_MAX: usize = 12;
const CONSISTENCY_SAMPLES: usize = 512;

impl ChainedMatroid {
    pub fn family(f: ChainFamily) -> Self {
        ChainedMatroid {
            source: Source::Family(f),
        }
    }

    /// A finite chain from explicit levels; ground sets must strictly grow.
    pub fn from_levels(levels: Vec<Matroid>) -> Result<Self> {
        if levels.is_empty() {
            return Err(MatroidError::Input("a chain needs at least one level".into()));
        }
        for (i, w) in levels.windows(2).enumerate() {
            if w[1].len() <= w[0].len() {
                return Err(MatroidError::Input(format!(
                    "level {} has {} elements, not more than level {i} with {}",
                    i + 1,
                    w[1].len(),
                    w[0].len()
                )));
            }
        }
        Ok(ChainedMatroid {
            source: Source::Levels(levels),
        })
    }

    pub fn describe(&self) -> String {
        match &self.source {
            Source::Family(f) => f.name().to_string(),
            Source::Levels(l) => format!("explicit chain of {} levels", l.len()),
        }
    }

    /// Deepest available index, or `None` for an unbounded family.
    pub fn max_depth(&self) -> Option<usize> {
        match &self.source {
            Source::Family(_) => None,
            Source::Levels(l) => Some(l.len() - 1),
        }
    }

    pub fn level(&self, i: usize) -> Result<Matroid> {
        match &self.source {
            Source::Family(f) => f.level(i),
            Source::Levels(l) => l.get(i).cloned().ok_or_else(|| {
                MatroidError::Input(format!("chain has no level {i} (deepest is {})", l.len() - 1))
            }),
        }
    }

    /// Levels `0..=depth`, each checked for consistency with its predecessor.
    pub fn levels(&self, depth: usize) -> Result<Vec<Matroid>> {
        let mut out: Vec<Matroid> = Vec::with_capacity(depth + 1);
        for i in 0..=depth {
            let m = self.level(i)?;
            if let Some(prev) = out.last() {
                check_consistent(prev, i - 1, &m, i)?;
            }
            out.push(m);
        }
        Ok(out)
    }
}

/// Compares ranks of `earlier` and `later` on subsets of the earlier ground
/// set: all of them when small, otherwise a fixed-seed sample.
pub fn check_consistent(earlier: &Matroid, ei: usize, later: &Matroid, li: usize) -> Result<()> {
    if later.len() <= earlier.len() {
        return Err(MatroidError::Input(format!(
            "level {li} does not grow beyond level {ei}"
        )));
    }
    let compare = |a: ElementSet| -> Result<()> {
        let (re, rl) = (earlier.r(a), later.r(a));
        if re != rl {
            return Err(MatroidError::InconsistentChain {
                earlier: ei,
                later: li,
                witness: a,
                earlier_rank: re,
                later_rank: rl,
            });
        }
        Ok(())
    };
    if earlier.len() <= EXHAUSTIVE_CONSISTENCY_MAX {
        ElementSet::all(earlier.len()).try_for_each(compare)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0x6b6f6e6967 ^ li as u64);
        let full = earlier.ground().bits();
        (0..CONSISTENCY_SAMPLES).try_for_each(|_| compare(ElementSet::from_bits(rng.gen::<u64>() & full)))
    }
}

fn check_listing(l: &Listing, n: usize, level: usize) -> Result<()> {
    if l.len() < n {
        return Err(MatroidError::Input(format!(
            "listing covers {} elements but level {level} has {n}",
            l.len()
        )));
    }
    Ok(())
}

/// Every proper list coloring of level `i`, in lexicographic order.
pub fn restriction_colorings(c: &ChainedMatroid, l: &Listing, i: usize) -> Result<Vec<Coloring>> {
    let m = c.level(i)?;
    check_listing(l, m.len(), i)?;
    m.limits()
        .check("restriction coloring enumeration", m.len(), m.limits().exhaustive)?;
    let mut out = Vec::new();
    let mut colors: Vec<Color> = Vec::with_capacity(m.len());
    extensions(&m, l, &mut colors, &mut |phi| {
        out.push(Coloring::new(phi.to_vec()));
        true
    });
    Ok(out)
}

/// Extends the proper partial coloring `colors` of a prefix of `m` to all of
/// `m`, visiting completions in lexicographic order until `visit` returns
/// false. Returns false iff the visit was stopped.
fn extensions(
    m: &Matroid,
    l: &Listing,
    colors: &mut Vec<Color>,
    visit: &mut dyn FnMut(&[Color]) -> bool,
) -> bool {
    let x = colors.len();
    if x == m.len() {
        return visit(colors);
    }
    for &c in l.list(x) {
        let class: ElementSet = colors
            .iter()
            .enumerate()
            .filter(|&(_, &y)| y == c)
            .map(|(y, _)| y)
            .collect::<ElementSet>()
            .with(x);
        if !m.indep(class) {
            continue;
        }
        colors.push(c);
        let go_on = extensions(m, l, colors, visit);
        colors.pop();
        if !go_on {
            return false;
        }
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Extension {
    /// A proper list coloring of the deepest level; its prefixes color the
    /// earlier levels.
    Colored {
        coloring: Coloring,
        level_sizes: Vec<usize>,
    },
    /// The first level with no proper list coloring at all.
    Stuck { level: usize },
}

/// Searches the tree of compatible level colorings down to `depth`.
pub fn extend_coloring(c: &ChainedMatroid, l: &Listing, depth: usize) -> Result<Extension> {
    let levels = c.levels(depth)?;
    let sizes: Vec<usize> = levels.iter().map(Matroid::len).collect();
    check_listing(l, sizes[depth], depth)?;
    for m in &levels {
        m.limits()
            .check("chain coloring search", m.len(), m.limits().exhaustive)?;
    }

    let mut colors: Vec<Color> = Vec::new();
    if descend(&levels, l, 0, &mut colors) {
        return Ok(Extension::Colored {
            coloring: Coloring::new(colors),
            level_sizes: sizes,
        });
    }
    for (i, m) in levels.iter().enumerate() {
        if !matches!(
            is_list_colorable(m, &l.prefix(m.len()))?,
            ListColoring::Colored(_)
        ) {
            return Ok(Extension::Stuck { level: i });
        }
    }
    Err(MatroidError::Certificate(
        "every level is colorable but no compatible branch was found".into(),
    ))
}

fn descend(levels: &[Matroid], l: &Listing, i: usize, colors: &mut Vec<Color>) -> bool {
    let Some(m) = levels.get(i) else {
        return true;
    };
    let start = colors.len();
    let mut found: Option<Vec<Color>> = None;
    extensions(m, l, colors, &mut |phi| {
        let mut branch = phi.to_vec();
        if descend(levels, l, i + 1, &mut branch) {
            found = Some(branch);
            false
        } else {
            true
        }
    });
    debug_assert_eq!(colors.len(), start);
    match found {
        Some(branch) => {
            *colors = branch;
            true
        }
        None => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::is_proper;

    fn tri_chain() -> ChainedMatroid {
        ChainedMatroid::family(ChainFamily::DisjointTriangles)
    }

    #[test]
    fn family_levels_grow_consistently() {
        for f in ChainFamily::ALL {
            let c = ChainedMatroid::family(f);
            let levels = c.levels(4).unwrap();
            for w in levels.windows(2) {
                assert!(w[1].len() > w[0].len());
            }
            assert_eq!(f.name().parse::<ChainFamily>().unwrap(), f);
        }
        assert!("nope".parse::<ChainFamily>().is_err());
    }

    #[test]
    fn growing_cycle_levels_are_bouquets() {
        let m = ChainFamily::GrowingCycle.level(1).unwrap();
        assert_eq!(m.len(), 7);
        let shown: Vec<_> = m.circuits().unwrap().iter().map(|c| c.members()).collect();
        assert_eq!(shown, [ElementSet::from([0, 1, 2]), ElementSet::from([3, 4, 5, 6])]);
    }

    #[test]
    fn inconsistent_levels_are_reported() {
        let a = uniform(3, 2).unwrap();
        let b = uniform(4, 1).unwrap();
        let c = ChainedMatroid::from_levels(vec![a, b]).unwrap();
        match c.levels(1) {
            Err(MatroidError::InconsistentChain { witness, .. }) => {
                assert_eq!(witness, ElementSet::from([0, 1]))
            }
            other => panic!("expected inconsistency, got {other:?}"),
        }
        assert!(ChainedMatroid::from_levels(vec![uniform(3, 1).unwrap(), uniform(3, 1).unwrap()]).is_err());
    }

    #[test]
    fn restriction_colorings_examples() {
        let l = Listing::uniform(3, 2);
        assert_eq!(restriction_colorings(&tri_chain(), &l, 0).unwrap().len(), 6);

        let free_chain = ChainedMatroid::from_levels(vec![
            crate::constructions::free(1),
            crate::constructions::free(2),
        ])
        .unwrap();
        let ones = Listing::new(vec![vec![0], vec![0]]);
        assert_eq!(restriction_colorings(&free_chain, &ones, 0).unwrap().len(), 1);
        assert_eq!(restriction_colorings(&free_chain, &ones, 1).unwrap().len(), 1);

        let forced = Listing::new(vec![vec![0]; 3]);
        assert!(restriction_colorings(&tri_chain(), &forced, 0).unwrap().is_empty());
    }

    #[test]
    fn extend_examples() {
        let l = Listing::uniform(12, 2);
        let Extension::Colored { coloring, level_sizes } = extend_coloring(&tri_chain(), &l, 3).unwrap()
        else {
            panic!("expected a coloring")
        };
        assert_eq!(level_sizes, [3, 6, 9, 12]);
        assert_eq!(coloring.len(), 12);
        for t in 0..4 {
            let tri = &coloring.colors()[3 * t..3 * t + 3];
            assert!(tri.iter().any(|&c| c != tri[0]));
        }

        let first = restriction_colorings(&tri_chain(), &l, 0).unwrap()[0].clone();
        let Extension::Colored { coloring, .. } = extend_coloring(&tri_chain(), &l, 0).unwrap() else {
            panic!()
        };
        assert_eq!(coloring, first);

        let mut lists = vec![vec![0, 1]; 12];
        lists[6..9].fill(vec![0]);
        let bad = Listing::new(lists);
        assert!(!extend_coloring(&tri_chain(), &bad, 1).unwrap().is_stuck());
        for depth in 2..=3 {
            assert_eq!(
                extend_coloring(&tri_chain(), &bad, depth).unwrap(),
                Extension::Stuck { level: 2 }
            );
        }
    }

    #[test]
    fn growing_uniform_gets_stuck_with_pairs() {
        // U_{2,5} needs three colors
        let l = Listing::uniform(10, 2);
        let c = ChainedMatroid::family(ChainFamily::GrowingUniform);
        assert!(matches!(extend_coloring(&c, &l, 1).unwrap(), Extension::Colored { .. }));
        assert_eq!(extend_coloring(&c, &l, 2).unwrap(), Extension::Stuck { level: 2 });
        let m = c.level(1).unwrap();
        let Extension::Colored { coloring, .. } = extend_coloring(&c, &l, 1).unwrap() else {
            panic!()
        };
        assert!(is_proper(&m, &coloring).unwrap());
    }

    impl Extension {
        fn is_stuck(&self) -> bool {
            matches!(self, Extension::Stuck { .. })
        }
    }
}
