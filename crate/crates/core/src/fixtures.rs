//! Small named graphs used throughout the tests and the worked-example runner.

use crate::graph::Graph;

fn build(rows: &[&[u64]]) -> Graph {
    let rows: Vec<Vec<u64>> = rows.iter().map(|r| r.to_vec()).collect();
    Graph::from_adjacency(&rows).expect("fixture matrices are square")
}

/// Four vertices: `v1` a sink, loops at `v2` and `v4`, `v3 -> v2`, and `v4`
/// feeding `v1` and `v2`. The adjacency matrix is taken as printed; the
/// accompanying drawing also shows a loop at `v1`, which the matrix omits.
pub fn ideal_example() -> Graph {
    build(&[&[0, 0, 0, 0], &[0, 1, 0, 0], &[0, 1, 0, 0], &[1, 1, 0, 1]])
}

/// The cycle `v1 -> v2 -> v3 -> v4 -> v1`.
pub fn four_cycle() -> Graph {
    build(&[&[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1], &[1, 0, 0, 0]])
}

/// The four-cycle with doubled `v1 -> v2` and `v4 -> v1` and an extra `v4 -> v3`.
pub fn e_prime() -> Graph {
    build(&[&[0, 2, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1], &[2, 0, 1, 0]])
}

/// Three vertices with six cycles.
pub fn census_example() -> Graph {
    build(&[&[1, 1, 0], &[1, 0, 2], &[1, 1, 0]])
}

/// Two parallel edges `v1 -> v2` and a loop at `v2`.
pub fn path_count_example() -> Graph {
    build(&[&[0, 2], &[0, 1]])
}

/// One vertex with `loops` loops.
pub fn rose(loops: u64) -> Graph {
    build(&[&[loops]])
}

/// A directed chain `v1 -> v2 -> .. -> vn`.
pub fn chain(n: usize) -> Graph {
    let rows: Vec<Vec<u64>> =
        (0..n).map(|i| (0..n).map(|j| u64::from(j == i + 1)).collect()).collect();
    Graph::from_adjacency(&rows).expect("square")
}
