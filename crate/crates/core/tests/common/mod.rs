//! Brute-force reference computations working on plain adjacency rows.
#![allow(dead_code)]

use lpa_core::Graph;

pub type Rows = Vec<Vec<u64>>;

/// Adjacency counts read straight off the edge list.
pub fn rows_of(g: &Graph) -> Rows {
    let n = g.vertex_count();
    let mut rows = vec![vec![0u64; n]; n];
    for e in g.edges() {
        rows[e.src][e.dst] += 1;
    }
    rows
}

pub fn members(mask: u64, n: usize) -> Vec<usize> {
    (0..n).filter(|&v| mask >> v & 1 == 1).collect()
}

/// No edge leaves the set.
pub fn hereditary(rows: &Rows, mask: u64) -> bool {
    let n = rows.len();
    members(mask, n).into_iter().all(|v| (0..n).all(|w| rows[v][w] == 0 || mask >> w & 1 == 1))
}

/// Every vertex that emits edges, all of them into the set, is in the set.
pub fn saturated(rows: &Rows, mask: u64) -> bool {
    let n = rows.len();
    (0..n).all(|v| {
        let emits = rows[v].iter().any(|&c| c > 0);
        let inside = (0..n).all(|w| rows[v][w] == 0 || mask >> w & 1 == 1);
        !(emits && inside) || mask >> v & 1 == 1
    })
}

pub fn lattice_masks(rows: &Rows) -> Vec<u64> {
    (0..1u64 << rows.len()).filter(|&m| hereditary(rows, m) && saturated(rows, m)).collect()
}

/// Longest strictly increasing chain from the empty set to the full set.
pub fn longest_chain(masks: &[u64], n: usize) -> usize {
    let mut sorted = masks.to_vec();
    sorted.sort_by_key(|m| m.count_ones());
    let mut best = vec![None::<usize>; sorted.len()];
    for i in 0..sorted.len() {
        if sorted[i] == 0 {
            best[i] = Some(0);
        }
        for j in 0..i {
            let (a, b) = (sorted[j], sorted[i]);
            if a != b && a & b == a {
                if let Some(l) = best[j] {
                    best[i] = Some(best[i].map_or(l + 1, |x: usize| x.max(l + 1)));
                }
            }
        }
    }
    let full = (1u64 << n) - 1;
    sorted.iter().position(|&m| m == full).and_then(|i| best[i]).unwrap_or(0)
}

/// Simple cycles counted as edge sequences, each started at its smallest vertex.
pub fn cycle_lengths(rows: &Rows) -> Vec<(usize, u64)> {
    fn walk(rows: &Rows, start: usize, at: usize, len: usize, mult: u64, seen: &mut Vec<bool>, out: &mut Vec<(usize, u64)>) {
        for next in 0..rows.len() {
            let c = rows[at][next];
            if c == 0 {
                continue;
            }
            if next == start {
                out.push((len + 1, mult * c));
            } else if next > start && !seen[next] {
                seen[next] = true;
                walk(rows, start, next, len + 1, mult * c, seen, out);
                seen[next] = false;
            }
        }
    }
    let mut out = Vec::new();
    for s in 0..rows.len() {
        let mut seen = vec![false; rows.len()];
        seen[s] = true;
        walk(rows, s, s, 0, 1, &mut seen, &mut out);
    }
    out
}

pub fn cycle_count(rows: &Rows) -> u64 {
    cycle_lengths(rows).iter().map(|&(_, m)| m).sum()
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

pub fn cycle_gcd(rows: &Rows) -> u64 {
    cycle_lengths(rows).iter().fold(0, |g, &(l, _)| gcd(g, l as u64))
}

pub fn mul(a: &[Vec<u128>], b: &[Vec<u128>]) -> Vec<Vec<u128>> {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    (0..n).map(|i| (0..m).map(|j| (0..b.len()).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

pub fn wide(rows: &Rows) -> Vec<Vec<u128>> {
    rows.iter().map(|r| r.iter().map(|&x| u128::from(x)).collect()).collect()
}

pub fn identity(n: usize) -> Vec<Vec<u128>> {
    (0..n).map(|i| (0..n).map(|j| u128::from(i == j)).collect()).collect()
}

/// `A^k` by repeated multiplication.
pub fn power(rows: &Rows, k: usize) -> Vec<Vec<u128>> {
    let a = wide(rows);
    (0..k).fold(identity(rows.len()), |p, _| mul(&p, &a))
}

pub fn bool_power(rows: &Rows, k: usize) -> Vec<Vec<bool>> {
    let n = rows.len();
    let a: Vec<Vec<bool>> = rows.iter().map(|r| r.iter().map(|&x| x > 0).collect()).collect();
    let mut p: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| i == j).collect()).collect();
    for _ in 0..k {
        p = (0..n).map(|i| (0..n).map(|j| (0..n).any(|l| p[i][l] && a[l][j])).collect()).collect();
    }
    p
}

/// Counts `(α, β)` with common end, `|α| + |β| = k`, minus pairs ending in a
/// shared edge whose source emits exactly one edge. Paths are grown edge by
/// edge from their end.
pub fn monomial_count(g: &Graph, k: usize) -> u64 {
    if k == 0 {
        return g.vertex_count() as u64;
    }
    let n = g.vertex_count();
    // paths[len][v]: list of (first source, last edge or None).
    let mut paths: Vec<Vec<Vec<Option<usize>>>> = vec![(0..n).map(|_| vec![None]).collect()];
    for len in 1..=k {
        let mut next = vec![Vec::new(); n];
        for (id, e) in g.edges().iter().enumerate() {
            for _ in &paths[len - 1][e.src] {
                next[e.dst].push(Some(id));
            }
        }
        paths.push(next);
    }
    let mut count = 0;
    for v in 0..n {
        for s in 0..=k {
            for a in &paths[s][v] {
                for b in &paths[k - s][v] {
                    let reducible = match (a, b) {
                        (Some(x), Some(y)) => x == y && g.out_degree(g.edge(*x).src) == 1,
                        _ => false,
                    };
                    if !reducible {
                        count += 1;
                    }
                }
            }
        }
    }
    count
}

/// `∏ rows[o_i][o_{i+1}]` around a cyclic order.
pub fn product(rows: &Rows, order: &[usize]) -> u64 {
    (0..order.len()).map(|i| rows[order[i]][order[(i + 1) % order.len()]]).product()
}

/// All orders of `rest` appended to `first`.
pub fn arrangements(first: usize, rest: &[usize]) -> Vec<Vec<usize>> {
    if rest.is_empty() {
        return vec![vec![first]];
    }
    let mut out = Vec::new();
    for i in 0..rest.len() {
        let mut others = rest.to_vec();
        let x = others.remove(i);
        for tail in arrangements(x, &others) {
            let mut o = vec![first];
            o.extend(tail);
            out.push(o);
        }
    }
    out
}
