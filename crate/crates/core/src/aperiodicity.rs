//! Period, aperiodicity and the aperiodic index of strongly connected graphs.
//!
//! Positivity of `Adj^k` depends only on the zero pattern, so the search runs
//! on boolean bit-rows and stops at the Wielandt bound `n² − 2n + 2`.

use std::collections::VecDeque;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matrix::adjacency;
use crate::talented::coefficients_at_level;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AperiodicityReport {
    pub applicable: bool,
    pub reason: Option<String>,
    pub strongly_connected: bool,
    pub period: Option<u64>,
    pub aperiodic: bool,
    pub index: Option<usize>,
    pub wielandt_bound: usize,
    pub persistence_checked: bool,
}

/// `n² − 2n + 2`, or 0 for the empty graph.
pub fn wielandt_bound(n: usize) -> usize {
    if n == 0 {
        0
    } else {
        (n - 1) * (n - 1) + 1
    }
}

fn require_strongly_connected(g: &Graph) -> Result<()> {
    if g.is_strongly_connected() {
        Ok(())
    } else {
        Err(Error::NotStronglyConnected)
    }
}

/// Gcd of all cycle lengths, 0 when there is no cycle.
///
/// Uses BFS levels from one vertex: every edge `u -> v` contributes
/// `level(u) + 1 − level(v)`.
pub fn period(g: &Graph) -> Result<u64> {
    require_strongly_connected(g)?;
    if g.vertex_count() == 0 {
        return Ok(0);
    }
    let mut level = vec![None; g.vertex_count()];
    level[0] = Some(0i64);
    let mut queue = VecDeque::from([0usize]);
    while let Some(u) = queue.pop_front() {
        let d = level[u].expect("queued vertices have a level");
        for w in g.successors(u) {
            if level[w].is_none() {
                level[w] = Some(d + 1);
                queue.push_back(w);
            }
        }
    }
    let mut gcd = 0u64;
    for e in g.edges() {
        let (Some(a), Some(b)) = (level[e.src], level[e.dst]) else { continue };
        gcd = gcd.gcd(&(a + 1 - b).unsigned_abs());
    }
    Ok(gcd)
}

/// Zero pattern of a square matrix as bit rows.
#[derive(Clone, PartialEq, Eq)]
struct Pattern {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl Pattern {
    fn of(g: &Graph) -> Self {
        let n = g.vertex_count();
        let words = n.div_ceil(64).max(1);
        let mut bits = vec![0; n * words];
        for e in g.edges() {
            bits[e.src * words + e.dst / 64] |= 1 << (e.dst % 64);
        }
        Pattern { n, words, bits }
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    fn mul(&self, other: &Pattern) -> Pattern {
        let mut bits = vec![0; self.bits.len()];
        for i in 0..self.n {
            let out = &mut bits[i * self.words..(i + 1) * self.words];
            for k in 0..self.n {
                if self.row(i)[k / 64] >> (k % 64) & 1 == 1 {
                    for (o, r) in out.iter_mut().zip(other.row(k)) {
                        *o |= r;
                    }
                }
            }
        }
        Pattern { n: self.n, words: self.words, bits }
    }

    fn is_full(&self) -> bool {
        let tail = self.n % 64;
        (0..self.n).all(|i| {
            let row = self.row(i);
            let full_words = self.n / 64;
            row[..full_words].iter().all(|&w| w == u64::MAX)
                && (tail == 0 || row[full_words] == (1u64 << tail) - 1)
        })
    }
}

/// Smallest `k` in `1..=bound` with `Adj^k` strictly positive. No strong
/// connectivity is required here.
pub fn first_positive_power(g: &Graph, bound: usize) -> Option<usize> {
    if g.vertex_count() == 0 {
        return None;
    }
    let base = Pattern::of(g);
    let mut current = base.clone();
    for k in 1..=bound {
        if current.is_full() {
            return Some(k);
        }
        if k < bound {
            current = current.mul(&base);
        }
    }
    None
}

pub fn is_aperiodic(g: &Graph) -> Result<bool> {
    require_strongly_connected(g)?;
    Ok(first_positive_power(g, wielandt_bound(g.vertex_count())).is_some())
}

/// Checks with exact arithmetic that `Adj^k` is strictly positive for
/// `k0 ≤ k ≤ k0 + n` and, for `k0 > 1`, that `Adj^{k0 − 1}` is not.
pub fn persistence_holds(g: &Graph, k0: usize) -> Result<bool> {
    let adj = adjacency(g);
    let n = g.vertex_count();
    if k0 == 0 {
        return Ok(false);
    }
    let below = adj.power(k0 as u64 - 1)?;
    if k0 > 1 && below.is_strictly_positive() {
        return Ok(false);
    }
    let mut p = below.mul(&adj)?;
    for _ in 0..=n {
        if !p.is_strictly_positive() {
            return Ok(false);
        }
        p = p.mul(&adj)?;
    }
    Ok(true)
}

/// The least `k0` with `Adj^{k0}` strictly positive.
pub fn aperiodic_index(g: &Graph) -> Result<usize> {
    require_strongly_connected(g)?;
    let k0 = first_positive_power(g, wielandt_bound(g.vertex_count())).ok_or(Error::NotAperiodic)?;
    debug_assert!(persistence_holds(g, k0).unwrap_or(false));
    Ok(k0)
}

/// Expands every `v(0)` to level `k0` and checks that each generator at that
/// level appears with a positive coefficient and nothing froze on the way.
pub fn verify_positive_representation(g: &Graph, k0: usize) -> Result<bool> {
    if !is_aperiodic(g)? {
        return Err(Error::NotAperiodic);
    }
    let k = u32::try_from(k0).map_err(|_| Error::TooLarge {
        what: "expansion level",
        size: k0 as u128,
        cap: u128::from(u32::MAX),
    })?;
    for v in 0..g.vertex_count() {
        let split = coefficients_at_level(g, v, k)?;
        if !split.remainder.is_zero() || split.level.iter().any(|c| c == &0u32.into()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Full report. Graphs that are not strongly connected are reported as not
/// applicable rather than as an error.
pub fn analyze(g: &Graph) -> Result<AperiodicityReport> {
    let n = g.vertex_count();
    let bound = wielandt_bound(n);
    if !g.is_strongly_connected() {
        return Ok(AperiodicityReport {
            applicable: false,
            reason: Some("graph is not strongly connected".into()),
            strongly_connected: false,
            period: None,
            aperiodic: false,
            index: None,
            wielandt_bound: bound,
            persistence_checked: false,
        });
    }
    let period = period(g)?;
    let index = first_positive_power(g, bound);
    let persistence_checked = match index {
        Some(k0) => persistence_holds(g, k0)?,
        None => false,
    };
    Ok(AperiodicityReport {
        applicable: true,
        reason: None,
        strongly_connected: true,
        period: Some(period),
        aperiodic: index.is_some(),
        index,
        wielandt_bound: bound,
        persistence_checked,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn cycle_gcd(g: &Graph) -> u64 {
        g.find_all_cycles().iter().fold(0u64, |acc, c| acc.gcd(&(c.len() as u64)))
    }

    fn scan_first_positive(g: &Graph, limit: u64) -> Option<u64> {
        let adj = adjacency(g);
        (1..=limit).find(|&k| adj.power(k).unwrap().is_strictly_positive())
    }

    #[test]
    fn periods() {
        assert_eq!(period(&fixtures::four_cycle()).unwrap(), 4);
        assert_eq!(period(&fixtures::rose(1)).unwrap(), 1);
        let e = fixtures::e_prime();
        assert_eq!(period(&e).unwrap(), cycle_gcd(&e));
        assert_eq!(period(&Graph::edgeless(1)).unwrap(), 0);
        assert!(matches!(period(&fixtures::chain(2)), Err(Error::NotStronglyConnected)));
    }

    #[test]
    fn aperiodicity_examples() {
        assert!(is_aperiodic(&fixtures::rose(1)).unwrap());
        assert!(!is_aperiodic(&fixtures::four_cycle()).unwrap());
        assert!(is_aperiodic(&fixtures::census_example()).unwrap());
        assert!(matches!(is_aperiodic(&fixtures::ideal_example()), Err(Error::NotStronglyConnected)));
    }

    #[test]
    fn indices() {
        assert_eq!(aperiodic_index(&fixtures::rose(1)).unwrap(), 1);
        assert_eq!(aperiodic_index(&fixtures::rose(2)).unwrap(), 1);
        let g = Graph::from_adjacency(&[vec![1, 1], vec![1, 0]]).unwrap();
        let k0 = aperiodic_index(&g).unwrap();
        assert_eq!(Some(k0 as u64), scan_first_positive(&g, 10));
        assert!(persistence_holds(&g, k0).unwrap());
        assert!(matches!(aperiodic_index(&fixtures::four_cycle()), Err(Error::NotAperiodic)));
    }

    #[test]
    fn wielandt_extremal_graph_hits_the_bound() {
        // n-cycle plus one chord: the classical extremal example.
        for n in 2..7usize {
            let mut rows = vec![vec![0u64; n]; n];
            for i in 0..n {
                rows[i][(i + 1) % n] = 1;
            }
            rows[n - 1][1] += 1;
            let g = Graph::from_adjacency(&rows).unwrap();
            assert_eq!(aperiodic_index(&g).unwrap(), wielandt_bound(n), "n = {n}");
        }
    }

    #[test]
    fn positive_representation() {
        assert!(verify_positive_representation(&fixtures::rose(1), 1).unwrap());
        let g = fixtures::census_example();
        let k0 = aperiodic_index(&g).unwrap();
        assert!(verify_positive_representation(&g, k0).unwrap());
        assert!(!verify_positive_representation(&g, k0 - 1).unwrap());
        assert!(matches!(
            verify_positive_representation(&fixtures::four_cycle(), 4),
            Err(Error::NotAperiodic)
        ));
    }

    #[test]
    fn reports() {
        let r = analyze(&fixtures::ideal_example()).unwrap();
        assert!(!r.applicable && r.reason.is_some());
        let r = analyze(&fixtures::census_example()).unwrap();
        assert!(r.applicable && r.aperiodic && r.persistence_checked);
        assert_eq!(r.period, Some(1));
        assert!(r.index.unwrap() <= r.wielandt_bound);
        let r = analyze(&fixtures::four_cycle()).unwrap();
        assert_eq!((r.period, r.aperiodic, r.index), (Some(4), false, None));
    }

    #[test]
    fn wide_patterns() {
        // A 70-cycle with a loop crosses the 64-bit word boundary.
        let n = 70;
        let mut rows = vec![vec![0u64; n]; n];
        for i in 0..n {
            rows[i][(i + 1) % n] = 1;
        }
        rows[0][0] = 1;
        let g = Graph::from_adjacency(&rows).unwrap();
        let k0 = aperiodic_index(&g).unwrap();
        assert!(persistence_holds(&g, k0).unwrap());
    }
}
