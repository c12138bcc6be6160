//! Recomputes every worked example and compares it with the expected values.

use serde::Serialize;

use crate::cycles::{census_table, cycles_on_order, total_cycles, DEFAULT_CENSUS_CAP};
use crate::fixtures;
use crate::graph::Graph;
use crate::ideals::{block_form, composition_series, enumerate_lattice, is_hereditary, is_saturated, DEFAULT_LATTICE_CAP};
use crate::paths::{enumerate_monomials, norm_table, p_k, DEFAULT_MONOMIAL_CAP};
use crate::Result;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

impl Check {
    fn new(name: &str, expected: impl ToString, actual: impl ToString) -> Self {
        let (expected, actual) = (expected.to_string(), actual.to_string());
        Check { name: name.to_string(), pass: expected == actual, expected, actual }
    }
}

/// The graphs the examples are computed on. Fields are public so a caller
/// can perturb them and watch the checks fail.
#[derive(Debug, Clone)]
pub struct WorkedExamples {
    pub ideal: Graph,
    pub four_cycle: Graph,
    pub e_prime: Graph,
    pub census: Graph,
    pub path_count: Graph,
}

impl Default for WorkedExamples {
    fn default() -> Self {
        WorkedExamples {
            ideal: fixtures::ideal_example(),
            four_cycle: fixtures::four_cycle(),
            e_prime: fixtures::e_prime(),
            census: fixtures::census_example(),
            path_count: fixtures::path_count_example(),
        }
    }
}

fn joined<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

impl WorkedExamples {
    pub fn run(&self) -> Result<Vec<Check>> {
        let mut checks = Vec::new();

        let g = &self.ideal;
        let lattice = enumerate_lattice(g, DEFAULT_LATTICE_CAP)?;
        let wanted = [vec![], vec!["v1"], vec!["v1", "v2", "v3"], vec!["v1", "v2", "v3", "v4"]];
        let present: Vec<String> = wanted
            .iter()
            .filter_map(|names| g.vertex_set(names).ok())
            .filter(|h| lattice.contains(h))
            .map(|h| h.to_string())
            .collect();
        checks.push(Check::new(
            "ideal example: lattice members",
            "{}|{v1}|{v1,v2,v3}|{v1,v2,v3,v4}",
            present.join("|"),
        ));
        let h12 = g.vertex_set(&["v1", "v2"])?;
        let w = block_form(g, &h12);
        checks.push(Check::new(
            "ideal example: {v1,v2} hereditary/saturated (graph, matrix)",
            "true,false,true,false",
            joined([is_hereditary(g, &h12), is_saturated(g, &h12), w.hereditary_form, w.saturated_form]),
        ));
        checks.push(Check::new(
            "ideal example: composition series length",
            3,
            composition_series(g, DEFAULT_LATTICE_CAP)?.length,
        ));

        checks.push(Check::new("4-cycle: product along (1234)", 1, cycles_on_order(&self.four_cycle, &[0, 1, 2, 3])?));
        for (name, order, expected) in [
            ("E': product along (1234)", &[0, 1, 2, 3][..], 4u32),
            ("E': product along (4321)", &[3, 2, 1, 0][..], 0),
            ("E': product along (34)", &[2, 3][..], 1),
        ] {
            checks.push(Check::new(name, expected, cycles_on_order(&self.e_prime, order)?));
        }

        let table = census_table(&self.census, DEFAULT_CENSUS_CAP)?;
        checks.push(Check::new(
            "census example: products per arrangement",
            "1,0,0,1,0,2,2,0",
            joined(table.iter().map(|r| &r.product)),
        ));
        checks.push(Check::new("census example: total", 6, total_cycles(&self.census, DEFAULT_CENSUS_CAP)?.total));

        let g = &self.path_count;
        let norms = norm_table(g, 3)?;
        checks.push(Check::new(
            "path example: total norms for s = 1..3",
            "3,3,3",
            joined((1..=3).map(|s| &norms.get(s).total)),
        ));
        checks.push(Check::new(
            "path example: column norms for s = 1..3",
            "0,3|0,3|0,3",
            (1..=3).map(|s| joined(&norms.get(s).col)).collect::<Vec<_>>().join("|"),
        ));
        checks.push(Check::new("path example: p_3", 18, p_k(g, 3)?));
        checks.push(Check::new(
            "path example: enumerated monomials of degree 3",
            18,
            enumerate_monomials(g, 3, DEFAULT_MONOMIAL_CAP)?.len(),
        ));
        Ok(checks)
    }
}

pub fn run_worked_examples() -> Result<Vec<Check>> {
    WorkedExamples::default().run()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_pass() {
        let checks = run_worked_examples().unwrap();
        for c in &checks {
            assert!(c.pass, "{c:?}");
        }
        assert_eq!(checks.len(), 13);
    }

    #[test]
    fn tampering_is_detected() {
        let mut ex = WorkedExamples::default();
        let rows = vec![vec![1, 1, 0], vec![1, 0, 2], vec![1, 1, 1]];
        ex.census = Graph::from_adjacency(&rows).unwrap();
        let failed: Vec<String> =
            ex.run().unwrap().into_iter().filter(|c| !c.pass).map(|c| c.name).collect();
        assert_eq!(failed, ["census example: products per arrangement", "census example: total"]);
    }

    #[test]
    fn deterministic() {
        assert_eq!(run_worked_examples().unwrap(), run_worked_examples().unwrap());
    }
}
