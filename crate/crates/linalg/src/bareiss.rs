//! Fraction-free (Bareiss) elimination over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::matrix::SparseRow;
use crate::scalar::Scalar;

/// Reduced row echelon form over the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub width: usize,
    pub pivots: Vec<usize>,
    pub rows: Vec<Vec<Scalar>>,
}

/// Clears denominators and common factors so the row has coprime integer entries.
pub fn integer_row(row: &[(usize, Scalar)], width: usize) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
    let mut dense = vec![BigInt::zero(); width];
    let mut content = BigInt::zero();
    for (c, v) in row {
        let x = v.numer() * (&lcm / v.denom());
        content = content.gcd(&x);
        dense[*c] = x;
    }
    if !content.is_zero() && !content.is_one() {
        for x in dense.iter_mut() {
            *x /= &content;
        }
    }
    dense
}

/// Bareiss elimination with row pivoting on the entry of least bit length.
///
/// Returns the integer echelon rows (each starting at its pivot) and their pivot columns.
pub fn echelon(rows: &[SparseRow], width: usize) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| integer_row(r, width)).collect();
    m.retain(|r| r.iter().any(|x| !x.is_zero()));
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..width {
        if r == m.len() {
            break;
        }
        let pick = (r..m.len()).filter(|&i| !m[i][col].is_zero()).min_by_key(|&i| m[i][col].bits());
        let Some(pick) = pick else { continue };
        m.swap(r, pick);
        let (top, bottom) = m.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let pivot = &pivot_row[col];
        for row in bottom.iter_mut() {
            let lead = std::mem::take(&mut row[col]);
            for j in col + 1..width {
                let t = pivot * &row[j] - &lead * &pivot_row[j];
                row[j] = if prev.is_one() {
                    t
                } else {
                    let (q, rem) = t.div_rem(&prev);
                    debug_assert!(rem.is_zero(), "inexact Bareiss division");
                    q
                };
            }
        }
        prev = m[r][col].clone();
        pivots.push(col);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(rows: &[SparseRow], width: usize) -> usize {
    echelon(rows, width).1.len()
}

/// Fraction-free Gauss-Jordan: after each pivot step every pivot entry equals the current
/// leading minor, so the final rows divided by that common value are the reduced form.
pub fn rref(rows: &[SparseRow], width: usize) -> Rref {
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| integer_row(r, width)).collect();
    m.retain(|r| r.iter().any(|x| !x.is_zero()));
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..width {
        if r == m.len() {
            break;
        }
        let pick = (r..m.len()).filter(|&i| !m[i][col].is_zero()).min_by_key(|&i| m[i][col].bits());
        let Some(pick) = pick else { continue };
        m.swap(r, pick);
        let pivot_row = std::mem::take(&mut m[r]);
        let pivot = &pivot_row[col];
        for (i, row) in m.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let lead = std::mem::take(&mut row[col]);
            if i < r && lead.is_zero() {
                // rows above only need rescaling to the new common pivot
                for x in row.iter_mut() {
                    if !x.is_zero() {
                        *x = exact_div(&*x * pivot, &prev);
                    }
                }
                continue;
            }
            for j in 0..width {
                if j == col {
                    continue;
                }
                let t = pivot * &row[j] - &lead * &pivot_row[j];
                row[j] = exact_div(t, &prev);
            }
        }
        prev = pivot.clone();
        m[r] = pivot_row;
        pivots.push(col);
        r += 1;
    }
    m.truncate(r);
    let out = m.into_iter().map(|row| row.into_iter().map(|x| BigRational::new(x, prev.clone())).collect()).collect();
    Rref { width, pivots, rows: out }
}

fn exact_div(t: BigInt, d: &BigInt) -> BigInt {
    if d.is_one() {
        return t;
    }
    let (q, rem) = t.div_rem(d);
    debug_assert!(rem.is_zero(), "inexact Bareiss division");
    q
}

/// Row with the largest absolute entry in bits; used for growth diagnostics.
pub fn max_bits(rows: &[Vec<BigInt>]) -> u64 {
    rows.iter().flatten().map(|x| x.abs().bits()).max().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::ExactMatrix;
    use crate::scalar::{frac, int};

    #[test]
    fn rank_of_small_examples() {
        let m = ExactMatrix::from_i64(&[vec![1, 2], vec![1, 2]]);
        assert_eq!(rank(m.sparse_rows(), 2), 1);
        let id = ExactMatrix::identity(4);
        assert_eq!(rank(id.sparse_rows(), 4), 4);
    }

    #[test]
    fn rref_of_rational_rows() {
        let m = ExactMatrix::from_dense(
            3,
            &[vec![frac(1, 2), int(1), int(0)], vec![int(1), int(2), int(3)], vec![int(0), int(0), int(1)]],
        );
        let r = rref(m.sparse_rows(), 3);
        assert_eq!(r.pivots, vec![0, 2]);
        assert_eq!(r.rows[0], vec![int(1), int(2), int(0)]);
        assert_eq!(r.rows[1], vec![int(0), int(0), int(1)]);
    }

    #[test]
    fn entries_stay_integral() {
        // Hilbert-like matrix scaled to integers; exact division must never truncate.
        let rows: Vec<Vec<i64>> = (0..6).map(|i| (0..6).map(|j| 27720 / (i + j + 1)).collect()).collect();
        let m = ExactMatrix::from_i64(&rows);
        let (ech, pivots) = echelon(m.sparse_rows(), 6);
        assert_eq!(pivots.len(), 6);
        assert!(max_bits(&ech) < 200);
    }
}
