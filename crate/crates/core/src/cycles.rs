//! Cycle counting through cyclic permutations of vertex subsets, acyclicity
//! conditions, and block forms around exitless cycles.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{CycleSeq, Graph, Permutation, VertexSet};
use crate::ideals::{self, closure, enumerate_lattice};
use crate::matrix::{adjacency, ExactMatrix, SubmatrixSelector};

pub const DEFAULT_CENSUS_CAP: usize = 12;
/// Upper limit on rows produced by [`census_table`].
pub const TABLE_ROW_LIMIT: u128 = 1_000_000;

/// A cyclic arrangement `(i_1 .. i_m)` of a vertex subset, starting at its
/// smallest member.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct CyclicPerm {
    order: Vec<usize>,
}

impl CyclicPerm {
    /// Rotates `order` so that it starts at its minimum.
    pub fn new(mut order: Vec<usize>) -> Result<Self> {
        check_distinct(&order)?;
        let start = (0..order.len()).min_by_key(|&i| order[i]).unwrap_or(0);
        order.rotate_left(start);
        Ok(CyclicPerm { order })
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn support(&self, n: usize) -> VertexSet {
        VertexSet::new(n, self.order.iter().copied()).expect("distinct")
    }

    /// `σ(i)` for `i` in the support.
    pub fn image(&self, i: usize) -> Option<usize> {
        let pos = self.order.iter().position(|&x| x == i)?;
        Some(self.order[(pos + 1) % self.order.len()])
    }
}

fn check_distinct(order: &[usize]) -> Result<()> {
    if order.is_empty() {
        return Err(Error::EmptySubset);
    }
    let mut seen = HashSet::new();
    let dups: Vec<usize> = order.iter().copied().filter(|&v| !seen.insert(v)).collect();
    if dups.is_empty() {
        Ok(())
    } else {
        Err(Error::DuplicateIndex(dups))
    }
}

/// `∏ Adj[i_j, i_{j+1}]` around the cyclic order; a single vertex gives its
/// loop count.
pub fn cycles_on_order(g: &Graph, order: &[usize]) -> Result<BigUint> {
    check_distinct(order)?;
    let n = g.vertex_count();
    if let Some(&bad) = order.iter().find(|&&v| v >= n) {
        return Err(Error::VertexOutOfRange { index: bad, len: n });
    }
    let adj = adjacency(g);
    Ok(product_along(&adj, order))
}

fn product_along(adj: &ExactMatrix, order: &[usize]) -> BigUint {
    let m = order.len();
    let mut p = BigUint::one();
    for i in 0..m {
        p *= adj.get(order[i], order[(i + 1) % m]);
        if p.is_zero() {
            break;
        }
    }
    p
}

/// Sum of [`cycles_on_order`] over all `(|β| − 1)!` arrangements of `beta`.
pub fn cycles_on_subset(g: &Graph, beta: &VertexSet) -> Result<BigUint> {
    if beta.is_empty() {
        return Err(Error::EmptySubset);
    }
    if beta.universe() != g.vertex_count() {
        return Err(Error::DimensionMismatch(format!(
            "subset over {} vertices, graph has {}",
            beta.universe(),
            g.vertex_count()
        )));
    }
    let adj = adjacency(g);
    let members = beta.as_slice();
    let mut total = BigUint::zero();
    let mut used = vec![false; members.len()];
    used[0] = true;
    arrange(&adj, members, &mut vec![members[0]], &mut used, &BigUint::one(), &mut |_, p| {
        total += p;
    });
    Ok(total)
}

/// Walks all arrangements of `members` that start with `prefix`, pruning at
/// the first zero factor, and reports each closed arrangement with its
/// product.
fn arrange(
    adj: &ExactMatrix,
    members: &[usize],
    prefix: &mut Vec<usize>,
    used: &mut [bool],
    acc: &BigUint,
    emit: &mut dyn FnMut(&[usize], BigUint),
) {
    let last = *prefix.last().expect("prefix starts non-empty");
    if prefix.len() == members.len() {
        let p = acc * adj.get(last, prefix[0]);
        if !p.is_zero() {
            emit(prefix, p);
        }
        return;
    }
    for (k, &v) in members.iter().enumerate() {
        if used[k] {
            continue;
        }
        let step = adj.get(last, v);
        if step.is_zero() {
            continue;
        }
        used[k] = true;
        prefix.push(v);
        arrange(adj, members, prefix, used, &(acc * step), emit);
        prefix.pop();
        used[k] = false;
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubsetCount {
    pub subset: Vec<usize>,
    #[serde(serialize_with = "crate::decimal::serialize")]
    pub count: BigUint,
}

/// Cycle counts grouped by vertex set. Subsets carrying no cycle are omitted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleCensus {
    pub subsets: Vec<SubsetCount>,
    #[serde(serialize_with = "crate::decimal::serialize")]
    pub total: BigUint,
}

impl CycleCensus {
    pub fn count_for(&self, beta: &[usize]) -> BigUint {
        self.subsets
            .iter()
            .find(|s| s.subset == beta)
            .map(|s| s.count.clone())
            .unwrap_or_default()
    }
}

fn check_census_cap(n: usize, cap: usize) -> Result<()> {
    let cap = cap.min(63);
    if n > cap {
        return Err(Error::TooLarge { what: "cycle census", size: n as u128, cap: cap as u128 });
    }
    Ok(())
}

/// `Σ_β Σ_{σ ∈ S_{n,β}} ∏_{i∈β} Adj[i, σ(i)]` with its per-subset breakdown.
///
/// Each start vertex explores only larger vertices, so every cyclic
/// arrangement is visited once, from its minimum.
pub fn total_cycles(g: &Graph, cap: usize) -> Result<CycleCensus> {
    let n = g.vertex_count();
    check_census_cap(n, cap)?;
    let adj = adjacency(g);
    let partial: Vec<BTreeMap<u64, BigUint>> = (0..n)
        .into_par_iter()
        .map(|start| {
            let members: Vec<usize> = (start..n).collect();
            let mut buckets: BTreeMap<u64, BigUint> = BTreeMap::new();
            let mut used = vec![false; members.len()];
            used[0] = true;
            open_arrangements(&adj, &members, &mut vec![start], &mut used, &BigUint::one(), &mut |order, p| {
                let mask = order.iter().fold(0u64, |m, &v| m | 1 << v);
                *buckets.entry(mask).or_default() += p;
            });
            buckets
        })
        .collect();
    let mut merged: BTreeMap<u64, BigUint> = BTreeMap::new();
    for buckets in partial {
        for (mask, c) in buckets {
            *merged.entry(mask).or_default() += c;
        }
    }
    let mut subsets: Vec<SubsetCount> = merged
        .into_iter()
        .map(|(mask, count)| SubsetCount { subset: VertexSet::from_mask(n, mask).as_slice().to_vec(), count })
        .collect();
    subsets.sort_by(|a, b| a.subset.len().cmp(&b.subset.len()).then_with(|| a.subset.cmp(&b.subset)));
    let total = subsets.iter().map(|s| &s.count).sum();
    Ok(CycleCensus { subsets, total })
}

/// Like [`arrange`] but closes the cycle at every prefix length.
fn open_arrangements(
    adj: &ExactMatrix,
    members: &[usize],
    prefix: &mut Vec<usize>,
    used: &mut [bool],
    acc: &BigUint,
    emit: &mut dyn FnMut(&[usize], BigUint),
) {
    let last = *prefix.last().expect("non-empty");
    let closing = adj.get(last, prefix[0]);
    if !closing.is_zero() {
        emit(prefix, acc * closing);
    }
    for (k, &v) in members.iter().enumerate() {
        if used[k] {
            continue;
        }
        let step = adj.get(last, v);
        if step.is_zero() {
            continue;
        }
        used[k] = true;
        prefix.push(v);
        open_arrangements(adj, members, prefix, used, &(acc * step), emit);
        prefix.pop();
        used[k] = false;
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub arrangement: CyclicPerm,
    #[serde(serialize_with = "crate::decimal::serialize")]
    pub product: BigUint,
}

/// Every cyclic arrangement of every nonempty subset with its product,
/// zero products included. Rows are ordered by subset size, subset, then
/// arrangement.
pub fn census_table(g: &Graph, cap: usize) -> Result<Vec<CensusRow>> {
    let n = g.vertex_count();
    check_census_cap(n, cap)?;
    let rows: u128 = (1..=n as u128).map(|m| binomial(n as u128, m) * factorial(m - 1)).sum();
    if rows > TABLE_ROW_LIMIT {
        return Err(Error::TooLarge { what: "census table rows", size: rows, cap: TABLE_ROW_LIMIT });
    }
    let adj = adjacency(g);
    let mut subsets: Vec<u64> = (1..(1u64 << n)).collect();
    subsets.sort_by_key(|&m| (m.count_ones(), VertexSet::from_mask(n, m).as_slice().to_vec()));
    let mut out = Vec::new();
    for mask in subsets {
        let members = VertexSet::from_mask(n, mask).as_slice().to_vec();
        for order in rotations_fixed_first(&members) {
            let product = product_along(&adj, &order);
            out.push(CensusRow { arrangement: CyclicPerm { order }, product });
        }
    }
    Ok(out)
}

/// Orders that keep `members[0]` first and permute the rest, in lexicographic order.
fn rotations_fixed_first(members: &[usize]) -> Vec<Vec<usize>> {
    fn go(rest: &mut Vec<usize>, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..rest.len() {
            let v = rest.remove(i);
            prefix.push(v);
            go(rest, prefix, out);
            prefix.pop();
            rest.insert(i, v);
        }
    }
    let mut out = Vec::new();
    go(&mut members[1..].to_vec(), &mut vec![members[0]], &mut out);
    out
}

fn binomial(n: u128, k: u128) -> u128 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn factorial(n: u128) -> u128 {
    (1..=n).product()
}

/// The acyclicity conditions evaluated independently.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AcyclicityReport {
    /// No cycle, from the strongly connected components.
    pub acyclic: bool,
    /// Reported as equal to `acyclic`; the algebra is not built.
    pub finite_dimensional: bool,
    pub disjoint_cycles: bool,
    /// Hereditary saturated sets whose quotient is a comet.
    pub comet_quotients: Vec<Vec<usize>>,
    /// Disjoint cycles and no comet quotient.
    pub disjoint_without_comet_quotient: bool,
    /// Every cyclic-permutation product vanishes.
    pub products_vanish: bool,
    pub consistent: bool,
}

pub fn is_acyclic_equiv(g: &Graph, lattice_cap: usize, census_cap: usize) -> Result<AcyclicityReport> {
    let lattice = enumerate_lattice(g, lattice_cap)?;
    let census = total_cycles(g, census_cap)?;
    let acyclic = g.is_acyclic();
    let disjoint_cycles = g.has_disjoint_cycles();
    let comet_quotients: Vec<Vec<usize>> = lattice
        .sets
        .iter()
        .filter(|h| g.quotient_graph(h, false).map(|q| q.is_comet()).unwrap_or(false))
        .map(|h| h.as_slice().to_vec())
        .collect();
    let third = disjoint_cycles && comet_quotients.is_empty();
    let products_vanish = census.total.is_zero();
    Ok(AcyclicityReport {
        acyclic,
        finite_dimensional: acyclic,
        disjoint_cycles,
        disjoint_without_comet_quotient: third,
        consistent: acyclic == third && acyclic == products_vanish,
        comet_quotients,
        products_vanish,
    })
}

/// Cycles none of whose vertices emits an edge off the cycle.
///
/// Such a cycle consists of out-degree-one vertices, so it is found by
/// following unique out-edges.
pub fn exitless_cycles(g: &Graph) -> Vec<CycleSeq> {
    let n = g.vertex_count();
    let mut found = Vec::new();
    let mut done = vec![false; n];
    for start in 0..n {
        if done[start] || g.out_degree(start) != 1 {
            continue;
        }
        let mut walk = vec![start];
        let mut edges = Vec::new();
        let mut at = start;
        loop {
            let k = g.out_edge_indices(at)[0];
            edges.push(k);
            at = g.edge(k).dst;
            if at == start {
                for &v in &walk {
                    done[v] = true;
                }
                found.push(CycleSeq::new(g, edges).expect("closed simple walk"));
                break;
            }
            if g.out_degree(at) != 1 || walk.contains(&at) || done[at] {
                break;
            }
            walk.push(at);
        }
    }
    found.sort_by(|a, b| a.vertices().cmp(b.vertices()));
    found
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LeadingBlock {
    pub size: usize,
    pub nilpotency_index: Option<usize>,
}

/// `Adj` permuted to `[[N, C], [A, B]]` with the cycle first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CirculantBlockForm {
    pub permutation: Permutation,
    pub cycle_length: usize,
    pub n: ExactMatrix,
    /// Edges from the cycle to the other vertices.
    pub c: ExactMatrix,
    /// Edges from the other vertices into the cycle.
    pub a: ExactMatrix,
    pub b: ExactMatrix,
    pub n_is_circulant: bool,
    pub c_is_zero: bool,
    /// Leading principal blocks `D_m` of `N` for `m < cycle_length`.
    pub leading: Vec<LeadingBlock>,
    /// Exit edge ids.
    pub exits: Vec<String>,
    /// Ids of edges entering the cycle from outside it.
    pub entries: Vec<String>,
}

impl CirculantBlockForm {
    /// Every `D_m` is nilpotent of index exactly `m`.
    pub fn leading_blocks_nilpotent(&self) -> bool {
        self.leading.iter().all(|d| d.nilpotency_index == Some(d.size))
    }
}

fn cycle_first_permutation(g: &Graph, front: &[usize]) -> Permutation {
    let mut order = front.to_vec();
    order.extend((0..g.vertex_count()).filter(|v| !front.contains(v)));
    Permutation::new(order).expect("front vertices are distinct")
}

pub fn circulant_block_form(g: &Graph, c: &CycleSeq) -> Result<CirculantBlockForm> {
    if c.edges().iter().any(|&k| k >= g.edge_count()) {
        return Err(Error::NotACycle("edge outside the graph".into()));
    }
    let c = CycleSeq::new(g, c.edges().to_vec())?;
    let m = c.len();
    let total = g.vertex_count();
    let permutation = cycle_first_permutation(g, c.vertices());
    let pm = adjacency(g).permute(&permutation)?;
    let n = pm.block(0, m, 0, m);
    let mut leading = Vec::with_capacity(m.saturating_sub(1));
    for size in 1..m {
        let d = n.select(&SubmatrixSelector::leading(size))?.matrix;
        leading.push(LeadingBlock { size, nilpotency_index: d.nilpotency_index()? });
    }
    let on_cycle = c.vertex_set(g);
    let entries = g
        .edges()
        .iter()
        .filter(|e| on_cycle.contains(e.dst) && !on_cycle.contains(e.src))
        .map(|e| e.id.clone())
        .collect();
    let block_c = pm.block(0, m, m, total);
    Ok(CirculantBlockForm {
        cycle_length: m,
        n_is_circulant: n.is_circulant_permutation(),
        c_is_zero: block_c.is_zero(),
        c: block_c,
        a: pm.block(m, total, 0, m),
        b: pm.block(m, total, m, total),
        n,
        leading,
        exits: c.exits(g).into_iter().map(|k| g.edge(k).id.clone()).collect(),
        entries,
        permutation,
    })
}

/// Nested block form `[[I, 0], [A, B]]`, `I = [[N, 0], [H1, H2]]`, around the
/// first exitless cycle, where `I` is the adjacency matrix of the smallest
/// hereditary saturated set containing the cycle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CyclicIdealForm {
    pub cycle: Vec<usize>,
    pub ideal: Vec<usize>,
    pub permutation: Permutation,
    pub n: ExactMatrix,
    pub h1: ExactMatrix,
    pub h2: ExactMatrix,
    pub a: ExactMatrix,
    pub b: ExactMatrix,
    pub n_is_circulant: bool,
    /// The block to the right of `N` inside `I` is zero.
    pub inner_hereditary: bool,
    pub outer_hereditary: bool,
    pub outer_saturated: bool,
    /// Every vertex of the ideal generates all of it.
    pub minimal: bool,
}

pub fn cyclic_minimal_ideal_form(g: &Graph, cap: usize) -> Result<Option<CyclicIdealForm>> {
    ideals::check_cap(g, cap)?;
    let Some(cycle) = exitless_cycles(g).into_iter().next() else {
        return Ok(None);
    };
    let h = closure(g, &cycle.vertex_set(g));
    let mut front = cycle.vertices().to_vec();
    front.extend(h.iter().filter(|v| !cycle.vertices().contains(v)));
    let permutation = cycle_first_permutation(g, &front);
    let pm = adjacency(g).permute(&permutation)?;
    let (m, k, total) = (cycle.len(), h.len(), g.vertex_count());
    let minimal = h.iter().all(|v| closure(g, &VertexSet::new(total, [v]).expect("in range")) == h);
    let n = pm.block(0, m, 0, m);
    Ok(Some(CyclicIdealForm {
        cycle: cycle.vertices().to_vec(),
        ideal: h.as_slice().to_vec(),
        n_is_circulant: n.is_circulant_permutation(),
        inner_hereditary: pm.block(0, m, m, k).is_zero(),
        outer_hereditary: ideals::submatrix_is_hereditary(&pm, k)?,
        outer_saturated: ideals::submatrix_is_saturated(&pm, k)?,
        n,
        h1: pm.block(m, k, 0, m),
        h2: pm.block(m, k, m, k),
        a: pm.block(k, total, 0, k),
        b: pm.block(k, total, k, total),
        permutation,
        minimal,
    }))
}
