//! Concrete rank oracles and the specs they are built from.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{MatroidError, Result};
use crate::matroid::{Limits, Matroid, RankOracle, Verdict};
use crate::set::{Element, ElementSet, MAX_ELEMENTS};

struct Uniform {
    n: usize,
    k: usize,
}

impl RankOracle for Uniform {
    fn ground_size(&self) -> usize {
        self.n
    }

    fn rank(&self, set: ElementSet) -> usize {
        set.len().min(self.k)
    }
}

/// `U_{k,n}`: every set of at most `k` elements is independent.
pub fn uniform(n: usize, k: usize) -> Result<Matroid> {
    if k > n {
        return Err(MatroidError::Input(format!(
            "uniform rank cap {k} exceeds ground set size {n}"
        )));
    }
    check_size(n)?;
    Ok(Matroid::new(Uniform { n, k }))
}

/// The free matroid on `n` elements.
pub fn free(n: usize) -> Matroid {
    uniform(n, n).expect("free matroid")
}

fn check_size(n: usize) -> Result<()> {
    if n > MAX_ELEMENTS {
        Err(MatroidError::Input(format!(
            "ground set of {n} elements exceeds the {MAX_ELEMENTS}-element limit"
        )))
    } else {
        Ok(())
    }
}

/// A multigraph whose edges are the matroid elements. Vertex tokens are
/// interned to dense ids in order of first appearance; edge `i` is
/// `edges[i]`. Self-loops and parallel edges are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GraphSpec {
    vertices: Vec<String>,
    edges: Vec<(usize, usize)>,
}

impl GraphSpec {
    /// Builds from `(edge id, u, v)` triples; ids must be exactly `0..n` in
    /// some order.
    pub fn from_edges<S: AsRef<str>>(edges: &[(Element, S, S)]) -> Result<Self> {
        let mut slots: Vec<Option<(usize, usize)>> = vec![None; edges.len()];
        let mut spec = GraphSpec::default();
        let mut index: HashMap<String, usize> = HashMap::new();
        let mut intern = |tok: &str, vertices: &mut Vec<String>| -> usize {
            *index.entry(tok.to_string()).or_insert_with(|| {
                vertices.push(tok.to_string());
                vertices.len() - 1
            })
        };
        for (id, u, v) in edges {
            let slot = slots.get_mut(*id).ok_or_else(|| {
                MatroidError::Input(format!(
                    "edge id {id} is not dense: {} edges need ids 0..{}",
                    edges.len(),
                    edges.len()
                ))
            })?;
            if slot.is_some() {
                return Err(MatroidError::Input(format!("duplicate edge id {id}")));
            }
            let uu = intern(u.as_ref(), &mut spec.vertices);
            let vv = intern(v.as_ref(), &mut spec.vertices);
            *slot = Some((uu, vv));
        }
        spec.edges = slots.into_iter().map(|s| s.expect("dense ids")).collect();
        check_size(spec.edges.len())?;
        Ok(spec)
    }

    /// Builds from vertex-index pairs; vertex `i` gets the token `v{i}`.
    pub fn from_pairs(pairs: &[(usize, usize)]) -> Self {
        let nv = pairs.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
        GraphSpec {
            vertices: (0..nv).map(|i| format!("v{i}")).collect(),
            edges: pairs.to_vec(),
        }
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }
}

struct Graphic {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

impl RankOracle for Graphic {
    fn ground_size(&self) -> usize {
        self.edges.len()
    }

    // covered vertices minus components of (covered vertices, edges of set),
    // which is the number of unions that merge two distinct components
    fn rank(&self, set: ElementSet) -> usize {
        let mut parent: Vec<usize> = (0..self.vertex_count).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut merges = 0;
        for e in set {
            let (u, v) = self.edges[e];
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            if ru != rv {
                parent[ru] = rv;
                merges += 1;
            }
        }
        merges
    }
}

/// The cycle matroid of a multigraph.
pub fn graphic(spec: &GraphSpec) -> Matroid {
    Matroid::new(Graphic {
        vertex_count: spec.vertices.len(),
        edges: spec.edges.clone(),
    })
}

/// Shorthand for `graphic(&GraphSpec::from_pairs(pairs))`.
pub fn graphic_from_pairs(pairs: &[(usize, usize)]) -> Matroid {
    graphic(&GraphSpec::from_pairs(pairs))
}

/// Vectors over GF(p); vector `i` is element `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorSpec {
    p: u64,
    dim: usize,
    vectors: Vec<Vec<u64>>,
}

impl VectorSpec {
    pub fn new(p: u64, dim: usize, vectors: Vec<Vec<u64>>) -> Result<Self> {
        if !is_prime(p) {
            return Err(MatroidError::Input(format!("field size {p} is not a prime")));
        }
        if p > u32::MAX as u64 {
            return Err(MatroidError::Input(format!(
                "field size {p} exceeds 32 bits"
            )));
        }
        if dim == 0 {
            return Err(MatroidError::Input("dimension must be positive".into()));
        }
        check_size(vectors.len())?;
        for (i, v) in vectors.iter().enumerate() {
            if v.len() != dim {
                return Err(MatroidError::Input(format!(
                    "vector {i} has {} coordinates, expected {dim}",
                    v.len()
                )));
            }
            if let Some(c) = v.iter().find(|&&c| c >= p) {
                return Err(MatroidError::Input(format!(
                    "vector {i} has coordinate {c} outside 0..{p}"
                )));
            }
        }
        Ok(VectorSpec { p, dim, vectors })
    }

    pub fn field(&self) -> u64 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vectors(&self) -> &[Vec<u64>] {
        &self.vectors
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Rank over GF(p) by Gaussian elimination on the given rows.
pub fn rank_mod_p(rows: &[Vec<u64>], p: u64) -> usize {
    let mut m: Vec<Vec<u64>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = pow_mod(m[rank][col], p - 2, p);
        for c in col..cols {
            m[rank][c] = m[rank][c] * inv % p;
        }
        for i in 0..m.len() {
            if i != rank && m[i][col] != 0 {
                let f = m[i][col];
                for c in col..cols {
                    m[i][c] = (m[i][c] + p - f * m[rank][c] % p) % p;
                }
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

struct Linear {
    p: u64,
    vectors: Vec<Vec<u64>>,
}

impl RankOracle for Linear {
    fn ground_size(&self) -> usize {
        self.vectors.len()
    }

    fn rank(&self, set: ElementSet) -> usize {
        let rows: Vec<Vec<u64>> = set.iter().map(|i| self.vectors[i].clone()).collect();
        rank_mod_p(&rows, self.p)
    }
}

/// The linear matroid of a vector family over GF(p).
pub fn linear(spec: &VectorSpec) -> Matroid {
    Matroid::new(Linear {
        p: spec.p,
        vectors: spec.vectors.clone(),
    })
}

/// Explicit ranks for all `2^n` subsets, indexed by mask.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableSpec {
    n: usize,
    ranks: Vec<u32>,
}

impl TableSpec {
    pub fn new(n: usize, ranks: Vec<u32>) -> Result<Self> {
        if n >= 31 {
            return Err(MatroidError::Input(format!(
                "a rank table over {n} elements is too large"
            )));
        }
        if ranks.len() != 1 << n {
            return Err(MatroidError::Input(format!(
                "rank table over {n} elements needs {} entries, got {}",
                1usize << n,
                ranks.len()
            )));
        }
        Ok(TableSpec { n, ranks })
    }

    /// Tabulates any matroid.
    pub fn from_matroid(m: &Matroid) -> Result<Self> {
        let ranks = m.rank_table("tabulation", m.limits().exhaustive)?;
        TableSpec::new(m.len(), ranks)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn ranks(&self) -> &[u32] {
        &self.ranks
    }
}

struct Table {
    n: usize,
    ranks: Vec<u32>,
}

impl RankOracle for Table {
    fn ground_size(&self) -> usize {
        self.n
    }

    fn rank(&self, set: ElementSet) -> usize {
        self.ranks[set.bits() as usize] as usize
    }
}

/// Builds a matroid from a rank table, rejecting tables that violate an axiom.
pub fn from_table(spec: &TableSpec, limits: Limits) -> Result<Matroid> {
    let m = Matroid::new(Table {
        n: spec.n,
        ranks: spec.ranks.clone(),
    })
    .with_limits(limits);
    match m.validate_axioms()? {
        Verdict::Pass => Ok(m),
        Verdict::Fail(v) => Err(MatroidError::Axiom(v)),
    }
}

struct Restricted {
    parent: Matroid,
    map: Vec<Element>,
}

impl RankOracle for Restricted {
    fn ground_size(&self) -> usize {
        self.map.len()
    }

    fn rank(&self, set: ElementSet) -> usize {
        self.parent.r(set.map_through(&self.map))
    }
}

/// A matroid re-indexed onto a subset of its parent's ground set, with the
/// index map for translating back.
#[derive(Debug, Clone)]
pub struct Restriction {
    pub matroid: Matroid,
    /// `map[i]` is the parent id of element `i`.
    pub map: Vec<Element>,
}

impl Restriction {
    pub fn to_parent(&self, set: ElementSet) -> ElementSet {
        set.map_through(&self.map)
    }

    /// `None` when `set` leaves the restricted ground set.
    pub fn from_parent(&self, set: ElementSet) -> Option<ElementSet> {
        set.iter()
            .map(|x| self.map.iter().position(|&y| y == x))
            .collect::<Option<ElementSet>>()
    }
}

/// `M_A`: the rank function of `m` restricted to subsets of `a`.
pub fn restrict(m: &Matroid, a: ElementSet) -> Result<Restriction> {
    m.check_subset(a)?;
    let map = a.to_vec();
    let matroid = Matroid::from_arc(Arc::new(Restricted {
        parent: m.clone(),
        map: map.clone(),
    }))
    .with_limits(m.limits());
    Ok(Restriction { matroid, map })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tab(m: &Matroid) -> Vec<u32> {
        m.rank_table("test", 16).unwrap()
    }

    #[test]
    fn uniform_examples() {
        let u = uniform(4, 2).unwrap();
        assert_eq!(u.rank(ElementSet::from([0, 1, 2])).unwrap(), 2);
        let zero = uniform(3, 0).unwrap();
        assert_eq!(zero.loops(), ElementSet::full(3));
        assert!(uniform(3, 3).unwrap().circuits().unwrap().is_empty());
        assert!(uniform(2, 3).is_err());
    }

    #[test]
    fn graphic_examples() {
        let tri = graphic_from_pairs(&[(0, 1), (0, 2), (1, 2)]);
        assert_eq!(tri.rank(ElementSet::from([0])).unwrap(), 1);
        assert_eq!(tri.rank(ElementSet::full(3)).unwrap(), 2);
        let lp = graphic_from_pairs(&[(0, 0)]);
        assert_eq!(lp.rank(ElementSet::from([0])).unwrap(), 0);
    }

    #[test]
    fn graph_spec_rejects_bad_ids() {
        assert!(GraphSpec::from_edges(&[(0, "a", "b"), (0, "b", "c")]).is_err());
        assert!(GraphSpec::from_edges(&[(0, "a", "b"), (2, "b", "c")]).is_err());
        let g = GraphSpec::from_edges(&[(1, "b", "c"), (0, "a", "b")]).unwrap();
        assert_eq!(g.vertices(), ["b", "c", "a"]);
        assert_eq!(g.edges(), [(2, 0), (0, 1)]);
    }

    #[test]
    fn linear_examples() {
        let v = VectorSpec::new(2, 2, vec![vec![1, 0], vec![0, 1], vec![1, 1]]).unwrap();
        assert_eq!(linear(&v).rank(ElementSet::full(3)).unwrap(), 2);
        let zero = VectorSpec::new(3, 2, vec![vec![0, 0]]).unwrap();
        assert!(!linear(&zero).is_loop_free());
        let par = linear(&VectorSpec::new(2, 2, vec![vec![1, 0], vec![1, 0]]).unwrap());
        assert_eq!(par.rank(ElementSet::from([0, 1])).unwrap(), 1);
        assert_eq!(par.circuits().unwrap().len(), 1);
        assert!(VectorSpec::new(4, 1, vec![vec![1]]).is_err());
        assert!(VectorSpec::new(2, 2, vec![vec![1]]).is_err());
        assert!(VectorSpec::new(2, 1, vec![vec![2]]).is_err());
    }

    #[test]
    fn gf3_elimination() {
        // (1,2) = 2*(2,1) mod 3
        assert_eq!(rank_mod_p(&[vec![1, 2], vec![2, 1]], 3), 1);
        assert_eq!(rank_mod_p(&[vec![1, 2], vec![1, 1]], 3), 2);
        assert_eq!(rank_mod_p(&[], 5), 0);
    }

    #[test]
    fn table_examples() {
        let u = uniform(4, 2).unwrap();
        let t = TableSpec::from_matroid(&u).unwrap();
        let m = from_table(&t, Limits::default()).unwrap();
        assert_eq!(tab(&m), tab(&u));

        let bad = TableSpec::new(1, vec![1, 1]).unwrap();
        match from_table(&bad, Limits::default()) {
            Err(MatroidError::Axiom(v)) => {
                assert_eq!(v.axiom, crate::matroid::Axiom::Normalization)
            }
            other => panic!("expected rejection, got {other:?}"),
        }
        assert!(TableSpec::new(2, vec![0, 1, 1]).is_err());

        let tri = graphic_from_pairs(&[(0, 1), (0, 2), (1, 2)]);
        assert!(from_table(&TableSpec::from_matroid(&tri).unwrap(), Limits::default()).is_ok());
    }

    #[test]
    fn restriction_examples() {
        let u24 = uniform(4, 2).unwrap();
        let r = restrict(&u24, ElementSet::from([0, 1, 2])).unwrap();
        assert_eq!(tab(&r.matroid), tab(&uniform(3, 2).unwrap()));
        let e = restrict(&u24, ElementSet::EMPTY).unwrap();
        assert_eq!(e.matroid.len(), 0);
        assert_eq!(e.matroid.rank(ElementSet::EMPTY).unwrap(), 0);
        let whole = restrict(&u24, u24.ground()).unwrap();
        assert_eq!(tab(&whole.matroid), tab(&u24));

        let r = restrict(&u24, ElementSet::from([1, 3])).unwrap();
        assert_eq!(r.to_parent(ElementSet::from([1])), ElementSet::from([3]));
        assert_eq!(r.from_parent(ElementSet::from([3])), Some(ElementSet::from([1])));
        assert_eq!(r.from_parent(ElementSet::from([0])), None);
        assert!(restrict(&u24, ElementSet::from([4])).is_err());
    }
}
