//! Seeded random graph generators for property checks.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, Permutation};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `n` in `1..=max_n`; each entry is zero with probability one half, else
/// uniform in `1..=max_mult`.
pub fn random_graph<R: Rng>(rng: &mut R, max_n: usize, max_mult: u64) -> Graph {
    let n = rng.gen_range(1..=max_n);
    let rows: Vec<Vec<u64>> = (0..n)
        .map(|_| {
            (0..n)
                .map(|_| if rng.gen_bool(0.5) { 0 } else { rng.gen_range(1..=max_mult) })
                .collect()
        })
        .collect();
    Graph::from_adjacency(&rows).expect("square")
}

/// A random Hamiltonian cycle plus sparse extra edges.
pub fn random_strongly_connected<R: Rng>(rng: &mut R, max_n: usize, max_mult: u64) -> Graph {
    let n = rng.gen_range(1..=max_n);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut rows = vec![vec![0u64; n]; n];
    for i in 0..n {
        rows[order[i]][order[(i + 1) % n]] = 1;
    }
    let density = rng.gen_range(0.0..0.5);
    for row in rows.iter_mut() {
        for entry in row.iter_mut() {
            if rng.gen_bool(density) {
                *entry = (*entry + rng.gen_range(1..=max_mult)).min(max_mult.max(1));
            }
        }
    }
    Graph::from_adjacency(&rows).expect("square")
}

/// One cycle of length `1..=max_cycle` whose vertices emit nothing else, plus
/// up to `max_tail` vertices with edges only toward the cycle or toward
/// earlier tail vertices. Vertex labels are shuffled.
pub fn random_comet<R: Rng>(rng: &mut R, max_cycle: usize, max_tail: usize, max_mult: u64) -> Graph {
    let m = rng.gen_range(1..=max_cycle);
    let t = rng.gen_range(0..=max_tail);
    let n = m + t;
    let mut rows = vec![vec![0u64; n]; n];
    for i in 0..m {
        rows[i][(i + 1) % m] = 1;
    }
    for i in m..n {
        for j in 0..i {
            if rng.gen_bool(0.4) {
                rows[i][j] = rng.gen_range(1..=max_mult);
            }
        }
    }
    let g = Graph::from_adjacency(&rows).expect("square");
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    g.relabel(&Permutation::new(order).expect("shuffle is a bijection"))
        .expect("permutation sized to the graph")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_per_seed() {
        let a = random_graph(&mut rng(7), 6, 3);
        let b = random_graph(&mut rng(7), 6, 3);
        assert_eq!(a.to_spec(), b.to_spec());
    }

    #[test]
    fn generators_produce_their_shapes() {
        let mut r = rng(1);
        for _ in 0..50 {
            assert!(random_strongly_connected(&mut r, 6, 2).is_strongly_connected());
            assert!(random_comet(&mut r, 4, 4, 2).is_comet());
        }
    }
}
