//! Randomized agreement checks between the matrix-side computations and
//! direct graph enumeration, for a quick self-test.

use num_bigint::BigUint;
use num_integer::Integer;
use serde::Serialize;

use crate::aperiodicity::{first_positive_power, is_aperiodic, wielandt_bound};
use crate::cycles::{circulant_block_form, total_cycles, DEFAULT_CENSUS_CAP};
use crate::graph::{Graph, VertexSet};
use crate::ideals::{block_form, is_hereditary_saturated};
use crate::paths::{enumerate_monomials, p_k, DEFAULT_MONOMIAL_CAP};
use crate::random::{random_comet, random_graph, random_strongly_connected, rng};
use crate::talented::verify_shift_identity;
use crate::Result;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossCheck {
    pub name: String,
    pub trials: usize,
    pub mismatches: usize,
    pub first_mismatch: Option<String>,
}

struct Tally {
    check: CrossCheck,
}

impl Tally {
    fn new(name: &str) -> Self {
        Tally { check: CrossCheck { name: name.into(), trials: 0, mismatches: 0, first_mismatch: None } }
    }

    fn record(&mut self, ok: bool, g: &Graph, detail: impl FnOnce() -> String) {
        self.check.trials += 1;
        if !ok {
            self.check.mismatches += 1;
            if self.check.first_mismatch.is_none() {
                let spec = serde_json::to_string(&g.to_spec()).unwrap_or_default();
                self.check.first_mismatch = Some(format!("{}: {spec}", detail()));
            }
        }
    }
}

/// Runs each check on `trials` graphs drawn from `seed`.
pub fn run(seed: u64, trials: usize) -> Result<Vec<CrossCheck>> {
    let mut r = rng(seed);
    let mut block = Tally::new("hereditary saturated sets vs block predicates");
    let mut census = Tally::new("cycle formula vs enumerated cycles");
    let mut monomials = Tally::new("p_k vs enumerated monomials");
    let mut shift = Tally::new("shift identity");
    let mut aperiodic = Tally::new("aperiodicity vs gcd of cycle lengths");
    let mut comet = Tally::new("exitless cycle block form");

    for _ in 0..trials {
        let g = random_graph(&mut r, 6, 2);
        let n = g.vertex_count();
        let all_agree = (0..1u64 << n).all(|mask| {
            let h = VertexSet::from_mask(n, mask);
            let w = block_form(&g, &h);
            is_hereditary_saturated(&g, &h) == (w.hereditary_form && w.saturated_form)
        });
        block.record(all_agree, &g, || "some subset disagrees".into());

        let g = random_graph(&mut r, 6, 3);
        let formula = total_cycles(&g, DEFAULT_CENSUS_CAP)?.total;
        let listed = BigUint::from(g.find_all_cycles().len());
        census.record(formula == listed, &g, || format!("formula {formula}, enumerated {listed}"));

        let g = random_graph(&mut r, 5, 2);
        for k in 2..=6 {
            let formula = p_k(&g, k)?;
            let listed = BigUint::from(enumerate_monomials(&g, k, DEFAULT_MONOMIAL_CAP)?.len());
            monomials.record(formula == listed, &g, || format!("k = {k}: formula {formula}, enumerated {listed}"));
        }

        let g = random_graph(&mut r, 5, 2);
        for k in 0..=5 {
            let report = verify_shift_identity(&g, k)?;
            shift.record(report.holds, &g, || report.counterexample.clone().unwrap_or_default());
        }

        let g = random_strongly_connected(&mut r, 6, 2);
        let gcd = g.find_all_cycles().iter().fold(0u64, |a, c| a.gcd(&(c.len() as u64)));
        let by_powers = is_aperiodic(&g)?;
        let index_ok = match first_positive_power(&g, wielandt_bound(g.vertex_count())) {
            Some(k0) => k0 <= wielandt_bound(g.vertex_count()),
            None => true,
        };
        aperiodic.record(by_powers == (gcd == 1) && index_ok, &g, || format!("powers say {by_powers}, gcd {gcd}"));

        let g = random_comet(&mut r, 4, 4, 2);
        let cycles = g.find_all_cycles();
        let ok = match cycles.as_slice() {
            [c] => {
                let f = circulant_block_form(&g, c)?;
                f.c_is_zero && f.n_is_circulant && f.leading_blocks_nilpotent()
            }
            _ => false,
        };
        comet.record(ok, &g, || "block form conditions fail".into());
    }
    Ok([block, census, monomials, shift, aperiodic, comet].into_iter().map(|t| t.check).collect())
}
