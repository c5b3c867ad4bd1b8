//! Random fixtures and a dense elimination oracle shared by the integration tests.
#![allow(dead_code, clippy::needless_range_loop)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use regionres::{RegionPair, WeightedGraph};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Weight drawn from (0, 1].
pub fn unit_weight(rng: &mut impl Rng) -> f64 {
    1.0 - rng.random::<f64>()
}

/// Connected graph on `n` nodes: a random spanning tree plus each remaining
/// pair with probability `p`, all weights in (0, 1].
pub fn random_connected(n: usize, p: f64, rng: &mut impl Rng) -> WeightedGraph {
    let mut edges = Vec::new();
    let mut present = std::collections::HashSet::new();
    for i in 1..n {
        let j = rng.random_range(0..i);
        edges.push((i, j, unit_weight(rng)));
        present.insert((j, i));
    }
    for i in 0..n {
        for j in i + 1..n {
            if !present.contains(&(i, j)) && rng.random::<f64>() < p {
                edges.push((i, j, unit_weight(rng)));
            }
        }
    }
    WeightedGraph::from_edges(n, &edges).unwrap()
}

/// `k` disjoint non-empty node sets drawn from a shuffled `0..n`; the
/// remaining nodes are left out.
pub fn disjoint_sets(n: usize, k: usize, rng: &mut impl Rng) -> Vec<Vec<usize>> {
    assert!(n >= k);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let spare = n - k;
    let mut sets = Vec::with_capacity(k);
    let mut at = 0;
    for _ in 0..k {
        let extra = if spare == 0 {
            0
        } else {
            rng.random_range(0..=spare.min(2))
        };
        let take = (1 + extra).min(n - at - (k - sets.len() - 1));
        sets.push(order[at..at + take].to_vec());
        at += take;
    }
    sets
}

pub fn random_pair(n: usize, rng: &mut impl Rng) -> RegionPair {
    let sets = disjoint_sets(n, 2, rng);
    RegionPair::new(sets[0].clone(), sets[1].clone(), n).unwrap()
}

/// Dense Laplacian as nested rows.
pub fn dense_laplacian(g: &WeightedGraph) -> Vec<Vec<f64>> {
    let n = g.len();
    let mut l = vec![vec![0.0; n]; n];
    for i in 0..n {
        for (j, w) in g.neighbors(i) {
            l[i][j] -= w;
            l[i][i] += w;
        }
    }
    l
}

/// Solves `a x = b` by Gauss-Jordan elimination with partial pivoting.
pub fn gauss_solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&x, &y| a[x][col].abs().total_cmp(&a[y][col].abs()))
            .unwrap();
        a.swap(col, piv);
        b.swap(col, piv);
        let d = a[col][col];
        assert!(d.abs() > 1e-300, "singular system");
        for r in 0..n {
            if r != col {
                let f = a[r][col] / d;
                if f != 0.0 {
                    for c in col..n {
                        a[r][c] -= f * a[col][c];
                    }
                    b[r] -= f * b[col];
                }
            }
        }
    }
    (0..n).map(|i| b[i] / a[i][i]).collect()
}

/// Set resistance by grounding the sink, joining the source into one node
/// and solving the grounded Laplacian for a unit current. Independent of the
/// library's factorizations.
pub fn oracle_set_er(g: &WeightedGraph, a: &[usize], b: &[usize]) -> f64 {
    let n = g.len();
    let l = dense_laplacian(g);
    // node map: 0 for the merged source, then every node outside A and B
    let mut map = vec![usize::MAX; n];
    let mut next = 1;
    for i in 0..n {
        if a.contains(&i) {
            map[i] = 0;
        } else if !b.contains(&i) {
            map[i] = next;
            next += 1;
        }
    }
    let mut m = vec![vec![0.0; next]; next];
    for i in 0..n {
        for j in 0..n {
            if map[i] != usize::MAX && map[j] != usize::MAX {
                m[map[i]][map[j]] += l[i][j];
            }
        }
    }
    let mut rhs = vec![0.0; next];
    rhs[0] = 1.0;
    gauss_solve(m, rhs)[0]
}

pub fn rel_diff(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs())
}
