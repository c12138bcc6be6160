//! Dense matrices of arbitrary-precision non-negative integers.
//!
//! Entries of adjacency powers are path counts and grow exponentially, so
//! nothing here uses fixed-width or floating-point arithmetic.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Permutation};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "MatrixJson", try_from = "MatrixJson")]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigUint>,
}

/// Interchange form: entries are decimal strings.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<String>>,
}

impl From<ExactMatrix> for MatrixJson {
    fn from(m: ExactMatrix) -> Self {
        MatrixJson {
            rows: m.rows,
            cols: m.cols,
            entries: (0..m.rows)
                .map(|i| m.row(i).iter().map(|x| x.to_string()).collect())
                .collect(),
        }
    }
}

impl TryFrom<MatrixJson> for ExactMatrix {
    type Error = Error;

    fn try_from(json: MatrixJson) -> Result<Self> {
        if json.entries.len() != json.rows || json.entries.iter().any(|r| r.len() != json.cols) {
            return Err(Error::InvalidInput(format!(
                "matrix entries do not match the declared {}x{} shape",
                json.rows, json.cols
            )));
        }
        let entries = json
            .entries
            .iter()
            .flatten()
            .map(|s| {
                s.parse::<BigUint>()
                    .map_err(|_| Error::InvalidInput(format!("`{s}` is not a non-negative integer")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ExactMatrix { rows: json.rows, cols: json.cols, entries })
    }
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, entries: vec![BigUint::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigUint::one();
        }
        m
    }

    /// Panics on ragged input.
    pub fn from_u64(rows: &[Vec<u64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        ExactMatrix {
            rows: rows.len(),
            cols,
            entries: rows.iter().flatten().map(|&x| BigUint::from(x)).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NonSquare { rows: self.rows, cols: self.cols })
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &BigUint {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigUint) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[BigUint] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigUint> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.entries.iter().all(|x| !x.is_zero())
    }

    pub fn row_is_zero(&self, i: usize) -> bool {
        self.row(i).iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(l, j);
                    if !b.is_zero() {
                        out.entries[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Exact `k`-th power by repeated squaring; `m^0` is the identity.
    pub fn power(&self, k: u64) -> Result<ExactMatrix> {
        let n = self.require_square()?;
        let mut result = Self::identity(n);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result)
    }

    /// `[m^0, m^1, .., m^k]` by successive multiplication.
    pub fn powers_up_to(&self, k: usize) -> Result<Vec<ExactMatrix>> {
        let n = self.require_square()?;
        let mut out = Vec::with_capacity(k + 1);
        out.push(Self::identity(n));
        for s in 1..=k {
            let next = out[s - 1].mul(self)?;
            out.push(next);
        }
        Ok(out)
    }

    pub fn norms(&self) -> Norms {
        let row = (0..self.rows).map(|i| self.row(i).iter().sum()).collect();
        let col = (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self.get(i, j)).sum())
            .collect();
        Norms { row, col, total: self.entries.iter().sum() }
    }

    /// Rank over the rationals, by fraction-free (Bareiss) elimination.
    pub fn rank(&self) -> usize {
        let (r, c) = (self.rows, self.cols);
        let mut a: Vec<Vec<BigInt>> = (0..r)
            .map(|i| self.row(i).iter().map(|x| BigInt::from(x.clone())).collect())
            .collect();
        let mut rank = 0;
        let mut prev = BigInt::one();
        for col in 0..c {
            if rank == r {
                break;
            }
            let Some(p) = (rank..r).find(|&i| !a[i][col].is_zero()) else {
                continue;
            };
            a.swap(rank, p);
            let pivot = a[rank][col].clone();
            for i in rank + 1..r {
                let factor = a[i][col].clone();
                for j in col + 1..c {
                    let v = (&pivot * &a[i][j] - &factor * &a[rank][j]) / &prev;
                    a[i][j] = v;
                }
                a[i][col] = BigInt::zero();
            }
            prev = pivot;
            rank += 1;
        }
        rank
    }

    /// Simultaneous row and column reordering: entry `(i, j)` of the result is
    /// entry `(order[i], order[j])` of `self`.
    pub fn permute(&self, order: &Permutation) -> Result<ExactMatrix> {
        let n = self.require_square()?;
        if order.len() != n {
            return Err(Error::InvalidPermutation {
                len: n,
                detail: format!("permutation has length {}", order.len()),
            });
        }
        let p = order.as_slice();
        let mut out = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, self.get(p[i], p[j]).clone());
            }
        }
        Ok(out)
    }

    /// Contiguous block `[r0, r1) x [c0, c1)`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> ExactMatrix {
        let mut out = Self::zeros(r1 - r0, c1 - c0);
        for i in r0..r1 {
            for j in c0..c1 {
                out.set(i - r0, j - c0, self.get(i, j).clone());
            }
        }
        out
    }

    /// Glues `[[top_left, top_right], [bottom_left, bottom_right]]`.
    pub fn from_blocks(
        top_left: &ExactMatrix,
        top_right: &ExactMatrix,
        bottom_left: &ExactMatrix,
        bottom_right: &ExactMatrix,
    ) -> Result<ExactMatrix> {
        let (m, k) = (top_left.rows, top_left.cols);
        if top_right.rows != m
            || bottom_left.cols != k
            || bottom_right.rows != bottom_left.rows
            || bottom_right.cols != top_right.cols
        {
            return Err(Error::DimensionMismatch("blocks do not tile".into()));
        }
        let rows = m + bottom_left.rows;
        let cols = k + top_right.cols;
        let mut out = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                let v = match (i < m, j < k) {
                    (true, true) => top_left.get(i, j),
                    (true, false) => top_right.get(i, j - k),
                    (false, true) => bottom_left.get(i - m, j),
                    (false, false) => bottom_right.get(i - m, j - k),
                };
                out.set(i, j, v.clone());
            }
        }
        Ok(out)
    }

    pub fn select(&self, sel: &SubmatrixSelector) -> Result<Submatrix> {
        if sel.rows.last().is_some_and(|&i| i >= self.rows)
            || sel.cols.last().is_some_and(|&j| j >= self.cols)
        {
            return Err(Error::InvalidSelector(format!(
                "selector reaches outside a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let mut matrix = Self::zeros(sel.rows.len(), sel.cols.len());
        for (a, &i) in sel.rows.iter().enumerate() {
            for (b, &j) in sel.cols.iter().enumerate() {
                matrix.set(a, b, self.get(i, j).clone());
            }
        }
        let formal = sel.is_formal();
        let principal = sel.is_principal();
        Ok(Submatrix { matrix, formal, principal, formal_principal: formal && principal })
    }

    /// Smallest `j >= 1` with `m^j = 0`, if any.
    ///
    /// A nilpotent `n x n` matrix satisfies `m^n = 0`, so the search stops at `n`.
    pub fn nilpotency_index(&self) -> Result<Option<usize>> {
        let n = self.require_square()?;
        let mut p = self.clone();
        for j in 1..=n.max(1) {
            if p.is_zero() {
                return Ok(Some(j));
            }
            p = p.mul(self)?;
        }
        Ok(None)
    }

    /// A permutation matrix whose permutation is one cycle through every index.
    pub fn is_circulant_permutation(&self) -> bool {
        let n = self.rows;
        if !self.is_square() || n == 0 {
            return false;
        }
        let mut image = vec![usize::MAX; n];
        for (i, slot) in image.iter_mut().enumerate() {
            let row = self.row(i);
            let ones: Vec<usize> = (0..n).filter(|&j| !row[j].is_zero()).collect();
            if ones.len() != 1 || !row[ones[0]].is_one() {
                return false;
            }
            *slot = ones[0];
        }
        let mut hit = vec![false; n];
        let mut at = 0;
        for _ in 0..n {
            if hit[at] {
                return false;
            }
            hit[at] = true;
            at = image[at];
        }
        at == 0
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// Row sums, column sums and total sum of a matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Norms {
    #[serde(serialize_with = "crate::decimal::serialize_seq")]
    pub row: Vec<BigUint>,
    #[serde(serialize_with = "crate::decimal::serialize_seq")]
    pub col: Vec<BigUint>,
    #[serde(serialize_with = "crate::decimal::serialize")]
    pub total: BigUint,
}

/// Order-preserving row and column index lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubmatrixSelector {
    rows: Vec<usize>,
    cols: Vec<usize>,
}

impl SubmatrixSelector {
    pub fn new(rows: Vec<usize>, cols: Vec<usize>) -> Result<Self> {
        for list in [&rows, &cols] {
            if list.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidSelector(format!(
                    "{list:?} is not strictly increasing"
                )));
            }
        }
        Ok(SubmatrixSelector { rows, cols })
    }

    pub fn principal(indices: Vec<usize>) -> Result<Self> {
        Self::new(indices.clone(), indices)
    }

    /// The top-left `m x m` block.
    pub fn leading(m: usize) -> Self {
        SubmatrixSelector { rows: (0..m).collect(), cols: (0..m).collect() }
    }

    pub fn is_formal(&self) -> bool {
        self.rows.iter().enumerate().all(|(a, &i)| a == i)
            && self.cols.iter().enumerate().all(|(b, &j)| b == j)
    }

    pub fn is_principal(&self) -> bool {
        self.rows == self.cols
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Submatrix {
    pub matrix: ExactMatrix,
    pub formal: bool,
    pub principal: bool,
    pub formal_principal: bool,
}

/// Exact rational matrix, used for the stochastic normalization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[i * self.cols + j]
    }

    pub fn row_sums(&self) -> Vec<BigRational> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j)).sum())
            .collect()
    }

    pub fn is_stochastic(&self) -> bool {
        self.row_sums().iter().all(One::is_one)
    }
}

/// `Adj(E)`: entry `(i, j)` counts the edges `v_i -> v_j`.
pub fn adjacency(g: &Graph) -> ExactMatrix {
    let n = g.vertex_count();
    let mut m = ExactMatrix::zeros(n, n);
    for e in g.edges() {
        m.entries[e.src * n + e.dst] += 1u32;
    }
    m
}

/// Diagonal matrix of outdegrees.
pub fn degree_matrix(g: &Graph) -> ExactMatrix {
    let n = g.vertex_count();
    let mut m = ExactMatrix::zeros(n, n);
    for v in 0..n {
        m.set(v, v, BigUint::from(g.out_degree(v)));
    }
    m
}

/// `Deg(E)^{-1} Adj(E)`. Every vertex must emit at least one edge.
pub fn stochastic(g: &Graph) -> Result<RationalMatrix> {
    let adj = adjacency(g);
    let n = g.vertex_count();
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        let deg = g.out_degree(i);
        if deg == 0 {
            return Err(Error::HasSink(g.vertex_name(i).to_string()));
        }
        let deg = BigInt::from(deg);
        for j in 0..n {
            let count = BigInt::from(adj.get(i, j).clone());
            entries.push(BigRational::new(count, deg.clone()));
        }
    }
    Ok(RationalMatrix { rows: n, cols: n, entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn m(rows: &[&[u64]]) -> ExactMatrix {
        ExactMatrix::from_u64(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    #[test]
    fn adjacency_of_worked_graphs() {
        assert_eq!(adjacency(&fixtures::census_example()), m(&[&[1, 1, 0], &[1, 0, 2], &[1, 1, 0]]));
        assert_eq!(adjacency(&fixtures::path_count_example()), m(&[&[0, 2], &[0, 1]]));
        assert_eq!(adjacency(&Graph::edgeless(0)), ExactMatrix::zeros(0, 0));
    }

    #[test]
    fn powers() {
        let a = m(&[&[0, 2], &[0, 1]]);
        for k in 1..8 {
            assert_eq!(a.power(k).unwrap(), a);
        }
        assert_eq!(a.power(0).unwrap(), ExactMatrix::identity(2));
        let c = adjacency(&fixtures::four_cycle());
        assert_eq!(c.power(4).unwrap(), ExactMatrix::identity(4));
        assert!(m(&[&[1, 2, 3]]).power(2).is_err());
        let p = c.powers_up_to(5).unwrap();
        assert_eq!(p[4], ExactMatrix::identity(4));
        assert_eq!(p[5], c);
    }

    #[test]
    fn big_entries_do_not_overflow() {
        let a = adjacency(&fixtures::rose(3));
        let big = a.power(100).unwrap();
        assert_eq!(big.get(0, 0), &BigUint::from(3u32).pow(100));
    }

    #[test]
    fn norms_of_path_example() {
        let n = m(&[&[0, 2], &[0, 1]]).norms();
        assert_eq!(n.total, BigUint::from(3u32));
        assert_eq!(n.col, vec![BigUint::zero(), BigUint::from(3u32)]);
        assert_eq!(n.row, vec![BigUint::from(2u32), BigUint::one()]);
        let z = ExactMatrix::zeros(3, 2).norms();
        assert!(z.total.is_zero() && z.row.iter().chain(&z.col).all(Zero::is_zero));
    }

    #[test]
    fn ranks() {
        assert_eq!(ExactMatrix::identity(5).rank(), 5);
        assert_eq!(adjacency(&fixtures::ideal_example()).rank(), 2);
        assert_eq!(m(&[&[1, 0], &[2, 0]]).rank(), 1);
        assert_eq!(ExactMatrix::zeros(0, 0).rank(), 0);
        assert_eq!(m(&[&[0, 1, 2], &[0, 2, 4], &[1, 0, 0]]).rank(), 2);
    }

    #[test]
    fn permutation_conjugation() {
        let a = m(&[&[0, 1], &[0, 0]]);
        assert_eq!(a.permute(&Permutation::identity(2)).unwrap(), a);
        let swap = Permutation::new(vec![1, 0]).unwrap();
        assert_eq!(a.permute(&swap).unwrap(), m(&[&[0, 0], &[1, 0]]));
        assert!(Permutation::new(vec![0, 0]).is_err());
        assert!(a.permute(&Permutation::identity(3)).is_err());
    }

    #[test]
    fn selection_flags() {
        let big = m(&[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]]);
        let n2 = big.select(&SubmatrixSelector::new(vec![0, 2], vec![1, 2]).unwrap()).unwrap();
        assert_eq!(n2.matrix, m(&[&[1, 0], &[0, 0]]));
        assert!(!n2.formal && !n2.principal);
        let n1 = big.select(&SubmatrixSelector::leading(2)).unwrap();
        assert_eq!(n1.matrix, m(&[&[0, 1], &[0, 0]]));
        assert!(n1.formal_principal);
        let all = big.select(&SubmatrixSelector::leading(3)).unwrap();
        assert_eq!(all.matrix, big);
        assert!(SubmatrixSelector::new(vec![2, 1], vec![0]).is_err());
        assert!(big.select(&SubmatrixSelector::leading(4)).is_err());
    }

    #[test]
    fn degree_and_stochastic() {
        let lp = fixtures::rose(1);
        assert_eq!(degree_matrix(&lp), m(&[&[1]]));
        assert!(stochastic(&lp).unwrap().get(0, 0).is_one());
        let r3 = fixtures::rose(3);
        assert_eq!(degree_matrix(&r3), m(&[&[3]]));
        assert!(stochastic(&r3).unwrap().get(0, 0).is_one());
        let g = fixtures::census_example();
        assert_eq!(degree_matrix(&g), m(&[&[2, 0, 0], &[0, 3, 0], &[0, 0, 2]]));
        assert!(stochastic(&g).unwrap().is_stochastic());
        assert!(matches!(stochastic(&fixtures::ideal_example()), Err(Error::HasSink(_))));
    }

    #[test]
    fn nilpotency() {
        for size in 1..6 {
            let shift: Vec<Vec<u64>> = (0..size)
                .map(|i| (0..size).map(|j| u64::from(j == i + 1)).collect())
                .collect();
            assert_eq!(ExactMatrix::from_u64(&shift).nilpotency_index().unwrap(), Some(size));
        }
        assert_eq!(m(&[&[0]]).nilpotency_index().unwrap(), Some(1));
        assert_eq!(ExactMatrix::identity(3).nilpotency_index().unwrap(), None);
        assert!(m(&[&[0, 0]]).nilpotency_index().is_err());
    }

    #[test]
    fn circulants() {
        assert!(adjacency(&fixtures::four_cycle()).is_circulant_permutation());
        assert!(!ExactMatrix::identity(3).is_circulant_permutation());
        assert!(m(&[&[0, 1], &[1, 0]]).is_circulant_permutation());
        assert!(m(&[&[1]]).is_circulant_permutation());
        assert!(!m(&[&[0, 2], &[1, 0]]).is_circulant_permutation());
        // two disjoint 2-cycles
        assert!(!m(&[&[0, 1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, 1, 0]])
            .is_circulant_permutation());
    }

    #[test]
    fn json_uses_decimal_strings() {
        let a = adjacency(&fixtures::rose(2)).power(70).unwrap();
        let text = serde_json::to_string(&a).unwrap();
        assert!(text.contains("\"1180591620717411303424\""));
        let back: ExactMatrix = serde_json::from_str(&text).unwrap();
        assert_eq!(back, a);
        assert!(serde_json::from_str::<ExactMatrix>(r#"{"rows":1,"cols":1,"entries":[["-1"]]}"#).is_err());
    }
}
