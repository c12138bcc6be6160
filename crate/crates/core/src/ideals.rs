//! Hereditary and saturated vertex sets, their block-matrix characterization,
//! the lattice they form, and matrix composition series.
//!
//! A set `H` is hereditary when no edge leaves it, and saturated when every
//! non-sink vertex whose edges all land in `H` belongs to `H`. Putting `H`
//! first in the vertex basis splits the adjacency matrix as
//!
//! ```text
//!     [ Adj(H)  C ]
//!     [   A     B ]
//! ```
//!
//! and the two properties read off the blocks: hereditary is `C = 0`, and
//! saturated is "a zero row of `B` forces the same row of `A` to be zero".

use std::cmp::Ordering;
use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Graph, Permutation, VertexSet};
use crate::matrix::{adjacency, ExactMatrix};

/// Default cap on the vertex count for exhaustive lattice work.
pub const DEFAULT_LATTICE_CAP: usize = 20;

/// Exhaustive subset enumeration runs over `u64` masks.
const MASK_LIMIT: usize = 63;

pub fn is_hereditary(g: &Graph, h: &VertexSet) -> bool {
    h.iter()
        .all(|v| g.out_edge_indices(v).iter().all(|&k| h.contains(g.edge(k).dst)))
}

pub fn is_saturated(g: &Graph, h: &VertexSet) -> bool {
    (0..g.vertex_count())
        .filter(|&v| !h.contains(v) && g.out_degree(v) > 0)
        .all(|v| g.out_edge_indices(v).iter().any(|&k| !h.contains(g.edge(k).dst)))
}

pub fn is_hereditary_saturated(g: &Graph, h: &VertexSet) -> bool {
    is_hereditary(g, h) && is_saturated(g, h)
}

/// The least hereditary saturated set containing `seed`.
///
/// Alternates forward closure with saturation sweeps until neither adds a
/// vertex.
pub fn closure(g: &Graph, seed: &VertexSet) -> VertexSet {
    let n = g.vertex_count();
    let mut inside = vec![false; n];
    let mut stack: Vec<usize> = seed.iter().collect();
    for &v in &stack {
        inside[v] = true;
    }
    loop {
        while let Some(v) = stack.pop() {
            for &k in g.out_edge_indices(v) {
                let w = g.edge(k).dst;
                if !inside[w] {
                    inside[w] = true;
                    stack.push(w);
                }
            }
        }
        for v in 0..n {
            if !inside[v]
                && g.out_degree(v) > 0
                && g.out_edge_indices(v).iter().all(|&k| inside[g.edge(k).dst])
            {
                inside[v] = true;
                stack.push(v);
            }
        }
        if stack.is_empty() {
            return VertexSet::from_flags(&inside);
        }
    }
}

/// Bitmask view of a graph for the exhaustive routines.
struct MaskGraph {
    n: usize,
    succ: Vec<u64>,
    nonsink: u64,
}

impl MaskGraph {
    fn new(g: &Graph) -> Self {
        let n = g.vertex_count();
        debug_assert!(n <= MASK_LIMIT);
        let succ: Vec<u64> = (0..n)
            .map(|v| g.successors(v).into_iter().fold(0, |m, w| m | 1 << w))
            .collect();
        let nonsink = (0..n).filter(|&v| succ[v] != 0).fold(0, |m, v| m | 1 << v);
        MaskGraph { n, succ, nonsink }
    }

    fn is_hereditary_saturated(&self, mask: u64) -> bool {
        (0..self.n).all(|v| {
            let bit = 1u64 << v;
            let succ = self.succ[v];
            if mask & bit != 0 {
                succ & !mask == 0
            } else {
                self.nonsink & bit == 0 || succ & !mask != 0
            }
        })
    }

    fn closure(&self, mut mask: u64) -> u64 {
        loop {
            let before = mask;
            for v in 0..self.n {
                if mask >> v & 1 == 1 {
                    mask |= self.succ[v];
                } else if self.nonsink >> v & 1 == 1 && self.succ[v] & !mask == 0 {
                    mask |= 1 << v;
                }
            }
            if mask == before {
                return mask;
            }
        }
    }
}

pub(crate) fn check_cap(g: &Graph, cap: usize) -> Result<()> {
    let n = g.vertex_count();
    let cap = cap.min(MASK_LIMIT);
    if n > cap {
        return Err(Error::TooLarge { what: "hereditary saturated lattice", size: n as u128, cap: cap as u128 });
    }
    Ok(())
}

/// Order used for lattice listings: by size, then lexicographically.
fn set_order(a: &VertexSet, b: &VertexSet) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.as_slice().cmp(b.as_slice()))
}

/// All hereditary saturated sets of a graph with their cover relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HereditarySaturatedLattice {
    /// Sorted by size, then lexicographically; starts with the empty set and
    /// ends with the full vertex set.
    pub sets: Vec<VertexSet>,
    /// Pairs `(lower, upper)` of indices into `sets` where `upper` covers `lower`.
    pub hasse: Vec<(usize, usize)>,
}

impl HereditarySaturatedLattice {
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn index_of(&self, h: &VertexSet) -> Option<usize> {
        self.sets.binary_search_by(|s| set_order(s, h)).ok()
    }

    pub fn contains(&self, h: &VertexSet) -> bool {
        self.index_of(h).is_some()
    }

    /// Sets with nothing but the empty set below them.
    pub fn atoms(&self) -> Vec<&VertexSet> {
        self.hasse
            .iter()
            .filter(|&&(lo, _)| self.sets[lo].is_empty())
            .map(|&(_, hi)| &self.sets[hi])
            .collect()
    }

    /// Shortest and longest maximal chain, counted in cover steps.
    pub fn chain_length_range(&self) -> (usize, usize) {
        let mut shortest = vec![usize::MAX; self.sets.len()];
        let mut longest = vec![0usize; self.sets.len()];
        shortest[0] = 0;
        // Covers always go from a smaller to a strictly larger set, so index
        // order (size first) is a topological order.
        let mut edges = self.hasse.clone();
        edges.sort();
        for (lo, hi) in edges {
            if shortest[lo] != usize::MAX {
                shortest[hi] = shortest[hi].min(shortest[lo] + 1);
                longest[hi] = longest[hi].max(longest[lo] + 1);
            }
        }
        let top = self.sets.len() - 1;
        (shortest[top], longest[top])
    }
}

/// Every hereditary saturated set, by testing each of the `2^n` subsets.
pub fn enumerate_lattice(g: &Graph, cap: usize) -> Result<HereditarySaturatedLattice> {
    check_cap(g, cap)?;
    let n = g.vertex_count();
    let mg = MaskGraph::new(g);
    let masks: Vec<u64> = (0..1u64 << n)
        .into_par_iter()
        .filter(|&m| mg.is_hereditary_saturated(m))
        .collect();
    Ok(build_lattice(&mg, masks))
}

/// The same lattice, generated from the empty set by joining one vertex at a
/// time. Cost scales with the lattice rather than with `2^n`.
pub fn generate_lattice(g: &Graph, cap: usize) -> Result<HereditarySaturatedLattice> {
    check_cap(g, cap)?;
    let mg = MaskGraph::new(g);
    let mut seen = std::collections::HashSet::from([0u64]);
    let mut frontier = vec![0u64];
    while let Some(m) = frontier.pop() {
        for v in 0..mg.n {
            if m >> v & 1 == 0 {
                let next = mg.closure(m | 1 << v);
                if seen.insert(next) {
                    frontier.push(next);
                }
            }
        }
    }
    Ok(build_lattice(&mg, seen.into_iter().collect()))
}

fn build_lattice(mg: &MaskGraph, masks: Vec<u64>) -> HereditarySaturatedLattice {
    let mut sets: Vec<VertexSet> = masks.iter().map(|&m| VertexSet::from_mask(mg.n, m)).collect();
    sets.sort_by(set_order);
    let index: HashMap<u64, usize> = sets.iter().enumerate().map(|(i, s)| (s.mask(), i)).collect();
    let covers: Vec<Vec<(usize, usize)>> = sets
        .par_iter()
        .enumerate()
        .map(|(i, s)| {
            let m = s.mask();
            let mut ups: Vec<u64> = (0..mg.n)
                .filter(|&v| m >> v & 1 == 0)
                .map(|v| mg.closure(m | 1 << v))
                .collect();
            ups.sort_unstable();
            ups.dedup();
            let minimal: Vec<u64> = ups
                .iter()
                .copied()
                .filter(|&u| !ups.iter().any(|&w| w != u && w & u == w))
                .collect();
            let mut out: Vec<(usize, usize)> = minimal.iter().map(|u| (i, index[u])).collect();
            out.sort_unstable();
            out
        })
        .collect();
    HereditarySaturatedLattice { sets, hasse: covers.into_iter().flatten().collect() }
}

/// Top-right block zero: the leading `size x size` block is a hereditary
/// formal principal submatrix.
pub fn submatrix_is_hereditary(m: &ExactMatrix, size: usize) -> Result<bool> {
    let n = leading_split(m, size)?;
    Ok(m.block(0, size, size, n).is_zero())
}

/// For every lower row, a zero row of `B` forces a zero row of `A`.
pub fn submatrix_is_saturated(m: &ExactMatrix, size: usize) -> Result<bool> {
    let n = leading_split(m, size)?;
    let a = m.block(size, n, 0, size);
    let b = m.block(size, n, size, n);
    Ok(saturated_rows(&a, &b))
}

fn saturated_rows(a: &ExactMatrix, b: &ExactMatrix) -> bool {
    (0..b.rows()).all(|i| !b.row_is_zero(i) || a.row_is_zero(i))
}

fn leading_split(m: &ExactMatrix, size: usize) -> Result<usize> {
    if !m.is_square() {
        return Err(Error::NonSquare { rows: m.rows(), cols: m.cols() });
    }
    if size > m.rows() {
        return Err(Error::DimensionMismatch(format!(
            "leading block of size {size} in a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    Ok(m.rows())
}

/// The vertex basis reordered with `H` first, and the resulting blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockFormWitness {
    pub permutation: Permutation,
    pub split: usize,
    /// `Adj(H)`.
    pub top_left: ExactMatrix,
    /// `C`: edges from `H` to the rest.
    pub top_right: ExactMatrix,
    /// `A`: edges from the rest into `H`.
    pub bottom_left: ExactMatrix,
    /// `B`: the adjacency matrix of the quotient graph.
    pub bottom_right: ExactMatrix,
    pub hereditary_form: bool,
    pub saturated_form: bool,
}

impl BlockFormWitness {
    pub fn reassemble(&self) -> ExactMatrix {
        ExactMatrix::from_blocks(&self.top_left, &self.top_right, &self.bottom_left, &self.bottom_right)
            .expect("blocks come from one matrix")
    }
}

/// Splits `Adj(E)` along `h`, listing `h` first and keeping basis order
/// inside each part.
pub fn block_form(g: &Graph, h: &VertexSet) -> BlockFormWitness {
    let permutation = Permutation::stable_partition(h);
    let pm = adjacency(g).permute(&permutation).expect("permutation sized to the graph");
    let (m, n) = (h.len(), g.vertex_count());
    BlockFormWitness {
        split: m,
        top_left: pm.block(0, m, 0, m),
        top_right: pm.block(0, m, m, n),
        bottom_left: pm.block(m, n, 0, m),
        bottom_right: pm.block(m, n, m, n),
        hereditary_form: submatrix_is_hereditary(&pm, m).expect("square"),
        saturated_form: submatrix_is_saturated(&pm, m).expect("square"),
        permutation,
    }
}

fn require_member(g: &Graph, h: &VertexSet) -> Result<()> {
    if is_hereditary_saturated(g, h) {
        Ok(())
    } else {
        Err(Error::NotInLattice(h.to_string()))
    }
}

/// No hereditary saturated set lies strictly between `small` and `big`,
/// and `small` is a proper subset of `big`.
///
/// A strictly intermediate set exists exactly when adjoining some vertex of
/// `big \ small` to `small` closes to something smaller than `big`.
pub fn quotient_is_simple(g: &Graph, small: &VertexSet, big: &VertexSet) -> Result<bool> {
    require_member(g, small)?;
    require_member(g, big)?;
    if !small.is_subset(big) {
        return Err(Error::NotInLattice(format!("{small} is not contained in {big}")));
    }
    if small == big {
        return Ok(false);
    }
    Ok(big.difference(small).iter().all(|v| {
        let mut seed = small.clone();
        seed.insert(v);
        &closure(g, &seed) == big
    }))
}

/// One step `H_{k-1} ⊂ H_k` of a composition series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesStep {
    /// `H_k \ H_{k-1}`, in basis order.
    pub added: Vec<usize>,
    /// `Adj(H_k / H_{k-1})`.
    pub diagonal: ExactMatrix,
    /// Edges from the added vertices into `H_{k-1}`.
    pub feed: ExactMatrix,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixCompositionSeries {
    /// `∅ = H_0 ⊂ H_1 ⊂ .. ⊂ H_len = E^0`.
    pub chain: Vec<VertexSet>,
    /// Number of simple steps in the chain.
    pub length: usize,
    /// Lists `H_1`, then `H_2 \ H_1`, and so on.
    pub permutation: Permutation,
    pub permuted: ExactMatrix,
    pub steps: Vec<SeriesStep>,
    /// Every `Adj(H_k)` sits as a hereditary, saturated leading block of the
    /// permuted matrix.
    pub nested_form_holds: bool,
}

/// A maximal chain of hereditary saturated sets and its nested block form.
///
/// Each step moves to the smallest cover (by size, then lexicographically).
/// The length does not depend on this choice.
pub fn composition_series(g: &Graph, cap: usize) -> Result<MatrixCompositionSeries> {
    check_cap(g, cap)?;
    let mut chain = vec![closure(g, &g.empty_set())];
    loop {
        let current = chain.last().expect("chain is non-empty");
        if current.is_full() {
            break;
        }
        let candidates: Vec<VertexSet> = current
            .complement()
            .iter()
            .map(|v| {
                let mut seed = current.clone();
                seed.insert(v);
                closure(g, &seed)
            })
            .collect();
        let next = candidates
            .iter()
            .filter(|c| !candidates.iter().any(|d| d != *c && d.is_subset(c)))
            .min_by(|a, b| set_order(a, b))
            .expect("a proper subset has a cover")
            .clone();
        chain.push(next);
    }

    let order: Vec<usize> = chain
        .windows(2)
        .flat_map(|w| w[1].difference(&w[0]).iter().collect::<Vec<_>>())
        .collect();
    let mut full_order: Vec<usize> = chain[0].iter().collect();
    full_order.extend(order);
    let permutation = Permutation::new(full_order)?;
    let permuted = adjacency(g).permute(&permutation)?;

    let mut steps = Vec::new();
    let mut nested_form_holds = true;
    for w in chain.windows(2) {
        let (lo, hi) = (w[0].len(), w[1].len());
        steps.push(SeriesStep {
            added: w[1].difference(&w[0]).iter().collect(),
            diagonal: permuted.block(lo, hi, lo, hi),
            feed: permuted.block(lo, hi, 0, lo),
        });
        nested_form_holds &= submatrix_is_hereditary(&permuted, hi)?
            && submatrix_is_saturated(&permuted, hi)?;
    }
    Ok(MatrixCompositionSeries {
        length: chain.len() - 1,
        chain,
        permutation,
        permuted,
        steps,
        nested_form_holds,
    })
}
