use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::scalar::{self, Scalar};
use crate::LinalgError;

/// A sparse row: strictly increasing column indices, no explicit zeros.
pub type SparseRow = Vec<(usize, Scalar)>;

/// Exact rational matrix stored as sparse rows.
///
/// Dimensions are fixed at construction. Dense access (`get`, `to_dense`) is derived
/// from the sparse rows, so both views always agree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseRow>,
}

fn normalize_row(mut entries: Vec<(usize, Scalar)>) -> SparseRow {
    entries.sort_by_key(|(c, _)| *c);
    let mut out: SparseRow = Vec::with_capacity(entries.len());
    for (c, v) in entries {
        match out.last_mut() {
            Some((lc, lv)) if *lc == c => *lv += v,
            _ => out.push((c, v)),
        }
    }
    out.retain(|(_, v)| !v.is_zero());
    out
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, data: vec![Vec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        let data = (0..n).map(|i| vec![(i, scalar::one())]).collect();
        ExactMatrix { rows: n, cols: n, data }
    }

    /// Builds from unsorted row entries; duplicate columns are summed and zeros dropped.
    pub fn from_sparse_rows(cols: usize, rows: Vec<Vec<(usize, Scalar)>>) -> Self {
        let data: Vec<SparseRow> = rows.into_iter().map(normalize_row).collect();
        for row in &data {
            if let Some((c, _)) = row.last() {
                assert!(*c < cols, "column {c} out of range for {cols} columns");
            }
        }
        ExactMatrix { rows: data.len(), cols, data }
    }

    pub fn from_dense(cols: usize, rows: &[Vec<Scalar>]) -> Self {
        let sparse = rows
            .iter()
            .map(|r| {
                assert_eq!(r.len(), cols, "ragged dense matrix");
                r.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(c, v)| (c, v.clone())).collect()
            })
            .collect();
        ExactMatrix::from_sparse_rows(cols, sparse)
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let dense: Vec<Vec<Scalar>> = rows.iter().map(|r| r.iter().map(|&v| scalar::int(v)).collect()).collect();
        ExactMatrix::from_dense(cols, &dense)
    }

    pub fn from_triples(rows: usize, cols: usize, triples: Vec<(usize, usize, Scalar)>) -> Self {
        let mut data: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); rows];
        for (i, j, v) in triples {
            assert!(i < rows && j < cols, "entry ({i},{j}) outside {rows}x{cols}");
            data[i].push((j, v));
        }
        ExactMatrix::from_sparse_rows(cols, data).with_rows(rows)
    }

    fn with_rows(mut self, rows: usize) -> Self {
        self.rows = rows;
        self
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn row(&self, i: usize) -> &[(usize, Scalar)] {
        &self.data[i]
    }

    pub fn sparse_rows(&self) -> &[SparseRow] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        match self.data[i].binary_search_by_key(&j, |(c, _)| *c) {
            Ok(k) => self.data[i][k].1.clone(),
            Err(_) => scalar::zero(),
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        self.data
            .iter()
            .map(|row| {
                let mut dense = vec![scalar::zero(); self.cols];
                for (c, v) in row {
                    dense[*c] = v.clone();
                }
                dense
            })
            .collect()
    }

    /// Row-major triples `(i, j, value)` of the nonzero entries.
    pub fn triples(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> + '_ {
        self.data.iter().enumerate().flat_map(|(i, row)| row.iter().map(move |(j, v)| (i, *j, v)))
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        self.data
            .iter()
            .map(|row| {
                let mut acc = scalar::zero();
                for (c, x) in row {
                    if !v[*c].is_zero() {
                        acc += x * &v[*c];
                    }
                }
                acc
            })
            .collect()
    }

    /// True iff `self * v == 0` exactly.
    pub fn annihilates(&self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.cols);
        let w = integer_vector(v);
        self.data.iter().all(|row| integer_dot_is_zero(row, &w))
    }

    pub fn mul(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, other.rows);
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
                for (k, a) in row {
                    for (j, b) in &other.data[*k] {
                        *acc.entry(*j).or_insert_with(scalar::zero) += a * b;
                    }
                }
                acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect();
        ExactMatrix { rows: self.rows, cols: other.cols, data }
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut data: Vec<SparseRow> = vec![Vec::new(); self.cols];
        for (i, j, v) in self.triples() {
            data[j].push((i, v.clone()));
        }
        ExactMatrix { rows: self.cols, cols: self.rows, data }
    }

    /// Re-expresses the system in coordinates of a subspace: column `k` of the result is
    /// `self * basis[k]`. The kernel of the result lists coefficient vectors `c` with
    /// `self * (sum c_k basis[k]) == 0`.
    pub fn restrict_to(&self, basis: &[Vec<Scalar>]) -> ExactMatrix {
        let mut by_col: Vec<Vec<(usize, &Scalar)>> = vec![Vec::new(); self.cols];
        for (k, v) in basis.iter().enumerate() {
            assert_eq!(v.len(), self.cols, "basis vector has wrong length");
            for (c, x) in v.iter().enumerate() {
                if !x.is_zero() {
                    by_col[c].push((k, x));
                }
            }
        }
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
                for (c, a) in row {
                    for (k, x) in &by_col[*c] {
                        *acc.entry(*k).or_insert_with(scalar::zero) += a * *x;
                    }
                }
                acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect();
        ExactMatrix { rows: self.rows, cols: basis.len(), data }
    }

    /// Exact inverse of a square matrix, by reducing `[self | I]`.
    pub fn inverse(&self) -> Option<ExactMatrix> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.cols;
        let augmented: Vec<SparseRow> = self
            .data
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let mut r = row.clone();
                r.push((n + i, scalar::one()));
                r
            })
            .collect();
        let reduced = crate::bareiss::rref(&augmented, 2 * n);
        if reduced.pivots.len() < n || reduced.pivots[n - 1] != n - 1 {
            return None;
        }
        let rows: Vec<Vec<Scalar>> = reduced.rows.into_iter().map(|r| r[n..].to_vec()).collect();
        Some(ExactMatrix::from_dense(n, &rows))
    }

    /// Stacks the rows of `other` below `self`.
    pub fn vstack(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        ExactMatrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn permute_rows(&self, order: &[usize]) -> ExactMatrix {
        assert_eq!(order.len(), self.rows);
        let data = order.iter().map(|&i| self.data[i].clone()).collect();
        ExactMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale_row(&self, i: usize, factor: &Scalar) -> ExactMatrix {
        assert!(!factor.is_zero(), "row scaling by zero");
        let mut out = self.clone();
        for (_, v) in &mut out.data[i] {
            *v *= factor;
        }
        out
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            rows: self.rows,
            cols: self.cols,
            entries: self.triples().map(|(i, j, v)| (i, j, scalar::format(v))).collect(),
        }
    }

    pub fn from_json(json: &MatrixJson) -> Result<Self, LinalgError> {
        let mut triples = Vec::with_capacity(json.entries.len());
        for (i, j, text) in &json.entries {
            if *i >= json.rows || *j >= json.cols {
                return Err(LinalgError::Parse(format!("entry ({i},{j}) outside {}x{}", json.rows, json.cols)));
            }
            triples.push((*i, *j, scalar::parse(text)?));
        }
        Ok(ExactMatrix::from_triples(json.rows, json.cols, triples))
    }
}

/// `v` scaled by the lcm of its denominators; the scale does not affect vanishing tests.
pub fn integer_vector(v: &[Scalar]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
}

/// Whether a rational row annihilates an integer vector, without any gcd work.
pub fn integer_dot_is_zero(row: &[(usize, Scalar)], w: &[BigInt]) -> bool {
    let lcm = row.iter().fold(BigInt::one(), |acc, (_, x)| acc.lcm(x.denom()));
    let mut acc = BigInt::zero();
    for (c, x) in row {
        if !w[*c].is_zero() {
            acc += x.numer() * (&lcm / x.denom()) * &w[*c];
        }
    }
    acc.is_zero()
}

/// Wire form: `{rows, cols, entries: [[i, j, "num/den"], ...]}`, entries in row-major order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<(usize, usize, String)>,
}
