//! Elements of the talented monoid and the expansion rewriting
//! `v(i) -> Σ_{e: s(e) = v} r(e)(i + 1)`.
//!
//! Elements are finite multisets of shifted generators `v(i)`. Equality is
//! only decided between elements expanded to a common level; no general word
//! problem is attempted. Sinks cannot be expanded and stay frozen at the
//! shift where they appear.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::Add;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matrix::adjacency;

/// A shifted generator `v(i)`.
pub type Generator = (usize, i64);

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MonoidElement {
    terms: BTreeMap<Generator, BigUint>,
}

impl MonoidElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn generator(v: usize, shift: i64) -> Self {
        Self::term(v, shift, BigUint::one())
    }

    pub fn term(v: usize, shift: i64, multiplicity: BigUint) -> Self {
        let mut x = Self::zero();
        x.add_term((v, shift), multiplicity);
        x
    }

    fn add_term(&mut self, gen: Generator, multiplicity: BigUint) {
        if !multiplicity.is_zero() {
            *self.terms.entry(gen).or_default() += multiplicity;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn multiplicity(&self, v: usize, shift: i64) -> BigUint {
        self.terms.get(&(v, shift)).cloned().unwrap_or_default()
    }

    /// Terms ordered by vertex, then shift.
    pub fn terms(&self) -> impl Iterator<Item = (Generator, &BigUint)> {
        self.terms.iter().map(|(&g, m)| (g, m))
    }

    /// The action of `n` on the monoid: every `v(i)` becomes `v(i + n)`.
    pub fn shift(&self, n: i64) -> Self {
        MonoidElement {
            terms: self.terms.iter().map(|(&(v, i), m)| ((v, i + n), m.clone())).collect(),
        }
    }

    pub fn display(&self, g: &Graph) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (&(v, i), m)) in self.terms.iter().enumerate() {
            if k > 0 {
                out.push_str(" + ");
            }
            if !m.is_one() {
                let _ = write!(out, "{m}·");
            }
            let _ = write!(out, "{}({i})", g.vertex_name(v));
        }
        out
    }
}

impl Add for MonoidElement {
    type Output = MonoidElement;

    fn add(mut self, rhs: MonoidElement) -> MonoidElement {
        for (gen, m) in rhs.terms {
            self.add_term(gen, m);
        }
        self
    }
}

/// Rewrites one occurrence of `at` by the defining relation.
pub fn expand_once(g: &Graph, x: &MonoidElement, at: Generator) -> Result<MonoidElement> {
    let (v, shift) = at;
    if v >= g.vertex_count() {
        return Err(Error::VertexOutOfRange { index: v, len: g.vertex_count() });
    }
    let name = || g.vertex_name(v).to_string();
    if x.multiplicity(v, shift).is_zero() {
        return Err(Error::GeneratorAbsent { vertex: name(), shift });
    }
    if g.is_sink(v)? {
        return Err(Error::SinkCannotExpand(name()));
    }
    let mut out = x.clone();
    let slot = out.terms.get_mut(&at).expect("present");
    *slot -= 1u32;
    if slot.is_zero() {
        out.terms.remove(&at);
    }
    for &k in g.out_edge_indices(v) {
        out.add_term((g.edge(k).dst, shift + 1), BigUint::one());
    }
    Ok(out)
}

/// Expands every non-sink generator below `level` until all of them sit at
/// `level`. Sink generators below `level` are left where they are.
pub fn expand_to_level(g: &Graph, x: &MonoidElement, level: i64) -> Result<MonoidElement> {
    for &(v, shift) in x.terms.keys() {
        if v >= g.vertex_count() {
            return Err(Error::VertexOutOfRange { index: v, len: g.vertex_count() });
        }
        if shift > level && g.out_degree(v) > 0 {
            return Err(Error::AboveLevel {
                vertex: g.vertex_name(v).to_string(),
                shift,
                level,
            });
        }
    }
    let Some(lowest) = x.terms.keys().map(|&(_, i)| i).min() else {
        return Ok(MonoidElement::zero());
    };
    let mut current = x.clone();
    for shift in lowest..level {
        let due: Vec<(Generator, BigUint)> = current
            .terms
            .iter()
            .filter(|(&(v, i), _)| i == shift && g.out_degree(v) > 0)
            .map(|(&gen, m)| (gen, m.clone()))
            .collect();
        for ((v, i), m) in due {
            current.terms.remove(&(v, i));
            for &k in g.out_edge_indices(v) {
                current.add_term((g.edge(k).dst, i + 1), m.clone());
            }
        }
    }
    Ok(current)
}

/// `v(0)` expanded to level `k`, split into the coefficients of the
/// generators at level `k` and the sinks that froze on the way.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelSplit {
    pub level: Vec<BigUint>,
    pub remainder: MonoidElement,
}

pub fn coefficients_at_level(g: &Graph, v: usize, k: u32) -> Result<LevelSplit> {
    let k = i64::from(k);
    let expanded = expand_to_level(g, &MonoidElement::generator(v, 0), k)?;
    let mut level = vec![BigUint::zero(); g.vertex_count()];
    let mut remainder = MonoidElement::zero();
    for ((w, i), m) in expanded.terms {
        if i == k {
            level[w] = m;
        } else {
            remainder.add_term((w, i), m);
        }
    }
    Ok(LevelSplit { level, remainder })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftIdentityCheck {
    pub holds: bool,
    pub counterexample: Option<String>,
}

/// Checks `v(0) = Σ_j (Adj^k)_{vj} v_j(k)` for every vertex, with the frozen
/// sink generators accounted for separately: a sink `w` frozen at shift
/// `j < k` must carry multiplicity `(Adj^j)_{vw}`.
pub fn verify_shift_identity(g: &Graph, k: u32) -> Result<ShiftIdentityCheck> {
    let powers = adjacency(g).powers_up_to(k as usize)?;
    let target = &powers[k as usize];
    for v in 0..g.vertex_count() {
        let split = coefficients_at_level(g, v, k)?;
        if split.level.as_slice() != target.row(v) {
            return Ok(failure(format!(
                "level-{k} coefficients of {}(0) differ from row {} of Adj^{k}",
                g.vertex_name(v),
                v + 1
            )));
        }
        let mut expected = MonoidElement::zero();
        for w in g.sinks() {
            for (j, p) in powers.iter().enumerate().take(k as usize) {
                expected.add_term((w, j as i64), p.get(v, w).clone());
            }
        }
        if split.remainder != expected {
            return Ok(failure(format!(
                "frozen sinks from {}(0) are {}, path counts give {}",
                g.vertex_name(v),
                split.remainder.display(g),
                expected.display(g)
            )));
        }
    }
    Ok(ShiftIdentityCheck { holds: true, counterexample: None })
}

fn failure(reason: String) -> ShiftIdentityCheck {
    ShiftIdentityCheck { holds: false, counterexample: Some(reason) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn shifting() {
        let x = MonoidElement::generator(0, 0);
        assert_eq!(x.shift(3), MonoidElement::generator(0, 3));
        let y = MonoidElement::generator(1, -2) + MonoidElement::term(0, 4, big(3));
        assert_eq!(y.shift(2).shift(5), y.shift(7));
        assert_eq!(y.shift(0), y);
    }

    #[test]
    fn single_expansions() {
        let lp = fixtures::rose(1);
        let x = MonoidElement::generator(0, 0);
        assert_eq!(expand_once(&lp, &x, (0, 0)).unwrap(), MonoidElement::generator(0, 1));
        let r2 = fixtures::rose(2);
        assert_eq!(expand_once(&r2, &x, (0, 0)).unwrap(), MonoidElement::term(0, 1, big(2)));
        let pe = fixtures::path_count_example();
        assert_eq!(expand_once(&pe, &x, (0, 0)).unwrap(), MonoidElement::term(1, 1, big(2)));
    }

    #[test]
    fn expansion_errors() {
        let g = fixtures::ideal_example();
        let x = MonoidElement::generator(0, 0);
        assert!(matches!(expand_once(&g, &x, (0, 0)), Err(Error::SinkCannotExpand(_))));
        assert!(matches!(expand_once(&g, &x, (1, 0)), Err(Error::GeneratorAbsent { .. })));
        let above = MonoidElement::generator(1, 5);
        assert!(matches!(expand_to_level(&g, &above, 2), Err(Error::AboveLevel { .. })));
        // Sinks may sit above the level; they never expand.
        assert!(expand_to_level(&g, &MonoidElement::generator(0, 5), 2).is_ok());
    }

    #[test]
    fn expansion_partial_keeps_other_copies() {
        let r2 = fixtures::rose(2);
        let x = MonoidElement::term(0, 0, big(2));
        let y = expand_once(&r2, &x, (0, 0)).unwrap();
        assert_eq!(y, MonoidElement::generator(0, 0) + MonoidElement::term(0, 1, big(2)));
    }

    #[test]
    fn levels() {
        let c = fixtures::four_cycle();
        let x = expand_to_level(&c, &MonoidElement::generator(0, 0), 4).unwrap();
        assert_eq!(x, MonoidElement::generator(0, 4));
        let g = fixtures::ideal_example();
        let sink = MonoidElement::generator(0, 0);
        assert_eq!(expand_to_level(&g, &sink, 7).unwrap(), sink);
        let pe = fixtures::path_count_example();
        let x = expand_to_level(&pe, &MonoidElement::generator(0, 0), 2).unwrap();
        assert_eq!(x, MonoidElement::term(1, 2, big(2)));
    }

    #[test]
    fn coefficient_splits() {
        let s = coefficients_at_level(&fixtures::rose(1), 0, 5).unwrap();
        assert_eq!(s.level, vec![big(1)]);
        assert!(s.remainder.is_zero());
        let s = coefficients_at_level(&fixtures::path_count_example(), 0, 3).unwrap();
        assert_eq!(s.level, vec![big(0), big(2)]);
        assert!(s.remainder.is_zero());
        let s = coefficients_at_level(&fixtures::chain(2), 0, 2).unwrap();
        assert_eq!(s.level, vec![big(0), big(0)]);
        assert_eq!(s.remainder, MonoidElement::generator(1, 1));
        let s = coefficients_at_level(&fixtures::chain(2), 0, 0).unwrap();
        assert_eq!(s.level, vec![big(1), big(0)]);
    }

    #[test]
    fn shift_identity_on_fixtures() {
        for g in [fixtures::census_example(), fixtures::e_prime(), fixtures::chain(3)] {
            for k in 0..5 {
                assert!(verify_shift_identity(&g, k).unwrap().holds);
            }
        }
        let g = fixtures::ideal_example();
        assert!(verify_shift_identity(&g, 3).unwrap().holds);
        let split = coefficients_at_level(&g, 3, 3).unwrap();
        assert!(!split.remainder.multiplicity(0, 1).is_zero());
    }

    #[test]
    fn display() {
        let g = fixtures::path_count_example();
        let x = MonoidElement::term(1, 2, big(2)) + MonoidElement::generator(0, 0);
        assert_eq!(x.display(&g), "v1(0) + 2·v2(2)");
        assert_eq!(MonoidElement::zero().display(&g), "0");
    }
}
