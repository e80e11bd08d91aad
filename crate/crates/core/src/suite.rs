//! The fixed family of small matroids that the exhaustive checks run over.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::constructions::{graphic, graphic_from_pairs, linear, uniform, GraphSpec, VectorSpec};
use crate::matroid::Matroid;

#[derive(Debug, Clone)]
pub struct SuiteMatroid {
    pub name: String,
    pub matroid: Matroid,
}

impl SuiteMatroid {
    fn new(name: impl Into<String>, matroid: Matroid) -> Self {
        SuiteMatroid {
            name: name.into(),
            matroid,
        }
    }
}

/// Seed for the random linear part of [`suite`].
pub const SUITE_SEED: u64 = 0x5eed_0f11;

/// `uniform(n, k)` for all `0 ≤ k ≤ n ≤ max_n`.
pub fn uniform_family(max_n: usize) -> Vec<SuiteMatroid> {
    (0..=max_n)
        .flat_map(|n| (0..=n).map(move |k| (n, k)))
        .map(|(n, k)| SuiteMatroid::new(format!("uniform({n},{k})"), uniform(n, k).expect("k <= n")))
        .collect()
}

/// Every multigraph with at most `max_edges` edges on vertices
/// `0..vertices`, counting self-loops and parallel edges, one per edge
/// multiset.
pub fn graphic_family(max_edges: usize, vertices: usize) -> Vec<SuiteMatroid> {
    let kinds: Vec<(usize, usize)> = (0..vertices)
        .flat_map(|u| (u..vertices).map(move |v| (u, v)))
        .collect();
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    fn go(
        kinds: &[(usize, usize)],
        max_edges: usize,
        start: usize,
        chosen: &mut Vec<usize>,
        out: &mut Vec<SuiteMatroid>,
    ) {
        let pairs: Vec<_> = chosen.iter().map(|&k| kinds[k]).collect();
        let name = format!("graphic{pairs:?}");
        out.push(SuiteMatroid::new(name, graphic_from_pairs(&pairs)));
        if chosen.len() == max_edges {
            return;
        }
        for k in start..kinds.len() {
            chosen.push(k);
            go(kinds, max_edges, k, chosen, out);
            chosen.pop();
        }
    }
    go(&kinds, max_edges, 0, &mut chosen, &mut out);
    out
}

/// `count` random vector families over GF(2) with 1 to `max_vectors`
/// vectors of dimension 1 to 4.
pub fn linear_family(count: usize, max_vectors: usize, seed: u64) -> Vec<SuiteMatroid> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let n = rng.gen_range(1..=max_vectors);
            let dim = rng.gen_range(1..=4);
            let vectors: Vec<Vec<u64>> = (0..n)
                .map(|_| (0..dim).map(|_| rng.gen_range(0..2)).collect())
                .collect();
            let spec = VectorSpec::new(2, dim, vectors.clone()).expect("valid GF(2) vectors");
            SuiteMatroid::new(format!("gf2#{i}{vectors:?}"), linear(&spec))
        })
        .collect()
}

/// Named small matroids used as anchors throughout the tests.
pub fn anchors() -> Vec<SuiteMatroid> {
    let fano = VectorSpec::new(
        2,
        3,
        vec![
            vec![1, 0, 0],
            vec![0, 1, 0],
            vec![0, 0, 1],
            vec![1, 1, 0],
            vec![1, 0, 1],
            vec![0, 1, 1],
            vec![1, 1, 1],
        ],
    )
    .expect("fano vectors");
    let k4 = GraphSpec::from_edges(&[
        (0, "a", "b"),
        (1, "a", "c"),
        (2, "a", "d"),
        (3, "b", "c"),
        (4, "b", "d"),
        (5, "c", "d"),
    ])
    .expect("K4 edges");
    vec![
        SuiteMatroid::new("triangle", graphic_from_pairs(&[(0, 1), (0, 2), (1, 2)])),
        SuiteMatroid::new(
            "theta",
            graphic_from_pairs(&[(0, 1), (0, 2), (1, 2), (0, 3), (1, 3)]),
        ),
        SuiteMatroid::new("K4", graphic(&k4)),
        SuiteMatroid::new("fano", linear(&fano)),
        SuiteMatroid::new(
            "gf3-line",
            linear(
                &VectorSpec::new(3, 2, vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![1, 2]])
                    .expect("GF(3) vectors"),
            ),
        ),
    ]
}

/// Uniform matroids up to 7 elements, all multigraphs with up to 5 edges on
/// 4 vertices, 50 seeded GF(2) families of up to 6 vectors, and the anchors.
pub fn suite() -> Vec<SuiteMatroid> {
    let mut out = uniform_family(7);
    out.extend(graphic_family(5, 4));
    out.extend(linear_family(50, 6, SUITE_SEED));
    out.extend(anchors());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_sizes() {
        assert_eq!(uniform_family(7).len(), 36);
        // multisets of at most 5 from 10 edge kinds: sum of C(m+9, 9)
        assert_eq!(graphic_family(5, 4).len(), 3003);
        let lin = linear_family(50, 6, SUITE_SEED);
        assert_eq!(lin.len(), 50);
        assert!(lin.iter().all(|s| (1..=6).contains(&s.matroid.len())));
    }

    #[test]
    fn linear_family_is_seeded() {
        let a: Vec<_> = linear_family(5, 6, 1).into_iter().map(|s| s.name).collect();
        let b: Vec<_> = linear_family(5, 6, 1).into_iter().map(|s| s.name).collect();
        assert_eq!(a, b);
    }
}
