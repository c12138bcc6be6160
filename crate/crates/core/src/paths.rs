//! Counting degree-`k` monomials `αβ*` of the Leavitt path algebra.
//!
//! [`p_k`] evaluates the closed form from row, column and total norms of the
//! powers of `Adj`; [`enumerate_monomials`] lists the monomials directly.

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matrix::adjacency;

pub const DEFAULT_MONOMIAL_CAP: u128 = 1_000_000;

/// Norms of `Adj^s`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormRow {
    pub s: usize,
    #[serde(serialize_with = "crate::decimal::serialize_seq")]
    pub row: Vec<BigUint>,
    #[serde(serialize_with = "crate::decimal::serialize_seq")]
    pub col: Vec<BigUint>,
    #[serde(serialize_with = "crate::decimal::serialize")]
    pub total: BigUint,
}

/// Norms for `s = 0..=k`. Row `0` reads all row and column norms as 1 and
/// the total as the number of vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormTable {
    pub rows: Vec<NormRow>,
}

impl NormTable {
    pub fn get(&self, s: usize) -> &NormRow {
        &self.rows[s]
    }
}

pub fn norm_table(g: &Graph, k: usize) -> Result<NormTable> {
    let n = g.vertex_count();
    let powers = adjacency(g).powers_up_to(k)?;
    let rows = powers
        .iter()
        .enumerate()
        .map(|(s, p)| {
            if s == 0 {
                NormRow { s, row: vec![BigUint::one(); n], col: vec![BigUint::one(); n], total: BigUint::from(n) }
            } else {
                let norms = p.norms();
                NormRow { s, row: norms.row, col: norms.col, total: norms.total }
            }
        })
        .collect();
    Ok(NormTable { rows })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SplitTerm {
    pub s: usize,
    pub t: usize,
    #[serde(serialize_with = "crate::decimal::serialize")]
    pub value: BigUint,
}

/// The closed form split into its pieces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PathCount {
    pub k: usize,
    /// `2‖A^k‖`; for `k = 0` this holds the vertex count instead.
    #[serde(serialize_with = "crate::decimal::serialize")]
    pub pure: BigUint,
    /// `Σ_j ‖A^s‖ᶜ_j ‖A^t‖ᶜ_j` for `s + t = k`, `s, t > 0`.
    pub mixed: Vec<SplitTerm>,
    /// `Σ_{j: outdeg(j) = 1} ‖A^{s−1}‖ᶜ_j ‖A^{t−1}‖ᶜ_j`.
    pub reductions: Vec<SplitTerm>,
    #[serde(serialize_with = "crate::decimal::serialize")]
    pub total: BigUint,
}

pub fn p_k_breakdown(g: &Graph, k: usize) -> Result<PathCount> {
    if k == 0 {
        let n = BigUint::from(g.vertex_count());
        return Ok(PathCount { k, pure: n.clone(), mixed: vec![], reductions: vec![], total: n });
    }
    let table = norm_table(g, k)?;
    let single_exit: Vec<usize> = (0..g.vertex_count()).filter(|&j| g.out_degree(j) == 1).collect();
    let pure = BigUint::from(2u32) * &table.get(k).total;
    let mut mixed = Vec::new();
    let mut reductions = Vec::new();
    for s in 1..k {
        let t = k - s;
        let (cs, ct) = (&table.get(s).col, &table.get(t).col);
        let value = cs.iter().zip(ct).map(|(a, b)| a * b).sum();
        mixed.push(SplitTerm { s, t, value });
        let (cs, ct) = (&table.get(s - 1).col, &table.get(t - 1).col);
        let value = single_exit.iter().map(|&j| &cs[j] * &ct[j]).sum();
        reductions.push(SplitTerm { s, t, value });
    }
    let added: BigUint = mixed.iter().map(|m| &m.value).sum();
    let removed: BigUint = reductions.iter().map(|m| &m.value).sum();
    let total = &pure + added - removed;
    Ok(PathCount { k, pure, mixed, reductions, total })
}

/// Number of irreducible monomials `αβ*` with `|α| + |β| = k`.
pub fn p_k(g: &Graph, k: usize) -> Result<BigUint> {
    Ok(p_k_breakdown(g, k)?.total)
}

/// `αβ*` with `α`, `β` ending at `anchor`; empty paths sit at `anchor`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Monomial {
    pub alpha: Vec<usize>,
    pub beta: Vec<usize>,
    pub anchor: usize,
}

impl Monomial {
    pub fn degree(&self) -> usize {
        self.alpha.len() + self.beta.len()
    }

    /// Both paths end in the same edge `e` and `s(e)` emits only `e`.
    pub fn is_reducible(&self, g: &Graph) -> bool {
        match (self.alpha.last(), self.beta.last()) {
            (Some(a), Some(b)) => a == b && g.out_degree(g.edge(*a).src) == 1,
            _ => false,
        }
    }

    pub fn star(&self) -> Monomial {
        Monomial { alpha: self.beta.clone(), beta: self.alpha.clone(), anchor: self.anchor }
    }

    pub fn describe(&self, g: &Graph) -> String {
        let word = |p: &[usize], ghost: bool| -> Vec<String> {
            let mut ids: Vec<String> = p.iter().map(|&k| g.edge(k).id.clone()).collect();
            if ghost {
                ids.reverse();
                ids.iter_mut().for_each(|id| id.push('*'));
            }
            ids
        };
        let mut parts = word(&self.alpha, false);
        parts.extend(word(&self.beta, true));
        if parts.is_empty() {
            g.vertex_name(self.anchor).to_string()
        } else {
            parts.join(" ")
        }
    }
}

/// For each length `0..=k` and vertex `v`, the edge sequences ending at `v`.
fn paths_ending(g: &Graph, k: usize) -> Vec<Vec<Vec<Vec<usize>>>> {
    let n = g.vertex_count();
    let mut by_len = vec![(0..n).map(|_| vec![Vec::new()]).collect::<Vec<_>>()];
    for len in 1..=k {
        let prev = &by_len[len - 1];
        let next: Vec<Vec<Vec<usize>>> = (0..n)
            .map(|v| {
                let mut here = Vec::new();
                for &e in g.in_edge_indices(v) {
                    for p in &prev[g.edge(e).src] {
                        let mut q = p.clone();
                        q.push(e);
                        here.push(q);
                    }
                }
                here.sort();
                here
            })
            .collect();
        by_len.push(next);
    }
    by_len
}

/// Upper bound on the pairs visited, from path counts by walking edges.
fn pair_estimate(g: &Graph, k: usize) -> u128 {
    let n = g.vertex_count();
    let mut counts = vec![vec![1u128; n]];
    for len in 1..=k {
        let prev = &counts[len - 1];
        let mut next = vec![0u128; n];
        for e in g.edges() {
            next[e.dst] = next[e.dst].saturating_add(prev[e.src]);
        }
        counts.push(next);
    }
    (0..=k)
        .flat_map(|s| {
            let counts = &counts;
            (0..n).map(move |v| counts[s][v].saturating_mul(counts[k - s][v]))
        })
        .fold(0u128, u128::saturating_add)
}

/// All irreducible monomials of degree `k`, ordered by anchor, then `|α|`,
/// then `α`, then `β`. For `k = 0` this is one monomial per vertex.
pub fn enumerate_monomials(g: &Graph, k: usize, cap: u128) -> Result<Vec<Monomial>> {
    let estimate = pair_estimate(g, k);
    if estimate > cap {
        return Err(Error::TooLarge { what: "monomial enumeration", size: estimate, cap });
    }
    let ending = paths_ending(g, k);
    let mut out = Vec::new();
    for anchor in 0..g.vertex_count() {
        if k == 0 {
            out.push(Monomial { alpha: vec![], beta: vec![], anchor });
            continue;
        }
        for s in 0..=k {
            for alpha in &ending[s][anchor] {
                for beta in &ending[k - s][anchor] {
                    let m = Monomial { alpha: alpha.clone(), beta: beta.clone(), anchor };
                    if !m.is_reducible(g) {
                        out.push(m);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Formula against enumeration for one `k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleComparison {
    pub k: usize,
    #[serde(serialize_with = "crate::decimal::serialize")]
    pub formula: BigUint,
    #[serde(serialize_with = "crate::decimal::serialize")]
    pub oracle: BigUint,
    #[serde(rename = "match")]
    pub matches: bool,
}

pub fn compare_with_oracle(g: &Graph, k: usize, cap: u128) -> Result<OracleComparison> {
    let formula = p_k(g, k)?;
    let oracle = BigUint::from(enumerate_monomials(g, k, cap)?.len());
    Ok(OracleComparison { k, matches: formula == oracle, formula, oracle })
}
