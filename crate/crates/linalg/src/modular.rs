//! Arithmetic and row reduction over Z/pZ for 31-bit primes.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::scalar::Scalar;

/// Smallest admissible modulus; every prime we use lies in (2^30, 2^31).
pub const PRIME_FLOOR: u64 = 1 << 30;

pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    a * b % p
}

pub fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller-Rabin, valid for all n < 3,215,031,751.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7] {
        if n.is_multiple_of(small) {
            return n == small;
        }
    }
    assert!(n < 3_215_031_751, "primality test only certified below 3.2e9");
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Reproducible stream of distinct primes in (2^30, 2^31) drawn from a seed.
#[derive(Clone, Debug)]
pub struct PrimeStream {
    rng: ChaCha8Rng,
    issued: Vec<u64>,
}

impl PrimeStream {
    pub fn new(seed: u64) -> Self {
        PrimeStream { rng: ChaCha8Rng::seed_from_u64(seed), issued: Vec::new() }
    }

    pub fn issued(&self) -> &[u64] {
        &self.issued
    }
}

impl Iterator for PrimeStream {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        loop {
            let candidate = self.rng.gen_range(PRIME_FLOOR + 1..2 * PRIME_FLOOR) | 1;
            if is_prime(candidate) && !self.issued.contains(&candidate) {
                self.issued.push(candidate);
                return Some(candidate);
            }
        }
    }
}

/// First `count` primes of the stream for `seed`.
pub fn primes_from_seed(seed: u64, count: usize) -> Vec<u64> {
    PrimeStream::new(seed).take(count).collect()
}

fn bigint_mod(n: &BigInt, p: u64) -> u64 {
    n.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits in u64")
}

/// Image of a rational in Z/pZ, or `None` when p divides the denominator.
pub fn reduce_scalar(s: &Scalar, p: u64) -> Option<u64> {
    let den = bigint_mod(s.denom(), p);
    if den == 0 {
        return None;
    }
    if s.numer().is_zero() {
        return Some(0);
    }
    Some(mul_mod(bigint_mod(s.numer(), p), inv_mod(den, p), p))
}

/// Row echelon form over Z/pZ built one row at a time.
///
/// Stored rows are dense, start at their pivot column and have pivot entry 1.
#[derive(Clone, Debug)]
pub struct ModEchelon {
    p: u64,
    width: usize,
    rows: Vec<Vec<u64>>,
    pivot_cols: Vec<usize>,
    row_of_col: Vec<Option<usize>>,
}

impl ModEchelon {
    pub fn new(p: u64, width: usize) -> Self {
        ModEchelon { p, width, rows: Vec::new(), pivot_cols: Vec::new(), row_of_col: vec![None; width] }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.width
    }

    /// Reduces `row` against the current pivots; returns true if it raised the rank.
    pub fn insert(&mut self, mut row: Vec<u64>) -> bool {
        debug_assert_eq!(row.len(), self.width);
        let p = self.p;
        for col in 0..self.width {
            let lead = row[col];
            if lead == 0 {
                continue;
            }
            match self.row_of_col[col] {
                Some(r) => {
                    let pivot_row = &self.rows[r];
                    let f = p - lead;
                    for j in col..self.width {
                        if pivot_row[j] != 0 {
                            row[j] = (row[j] + f * pivot_row[j]) % p;
                        }
                    }
                }
                None => {
                    let inv = inv_mod(lead, p);
                    for x in row[col..].iter_mut() {
                        *x = mul_mod(*x, inv, p);
                    }
                    self.row_of_col[col] = Some(self.rows.len());
                    self.pivot_cols.push(col);
                    self.rows.push(row);
                    return true;
                }
            }
        }
        false
    }

    /// Reduced row echelon form: rows sorted by pivot, pivot columns cleared elsewhere.
    pub fn into_rref(self) -> ModRref {
        let p = self.p;
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&r| self.pivot_cols[r]);
        let pivots: Vec<usize> = order.iter().map(|&r| self.pivot_cols[r]).collect();
        let mut rows: Vec<Vec<u64>> = order.into_iter().map(|r| self.rows[r].clone()).collect();
        for i in (0..rows.len()).rev() {
            let pc = pivots[i];
            let (upper, lower) = rows.split_at_mut(i);
            let pivot_row = &lower[0];
            for row in upper.iter_mut() {
                let lead = row[pc];
                if lead == 0 {
                    continue;
                }
                let f = p - lead;
                for j in pc..self.width {
                    if pivot_row[j] != 0 {
                        row[j] = (row[j] + f * pivot_row[j]) % p;
                    }
                }
            }
        }
        ModRref { p, width: self.width, pivots, rows }
    }
}

/// Reduced row echelon form over Z/pZ.
#[derive(Clone, Debug)]
pub struct ModRref {
    pub p: u64,
    pub width: usize,
    pub pivots: Vec<usize>,
    pub rows: Vec<Vec<u64>>,
}

impl ModRref {
    pub fn free_cols(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.width];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..self.width).filter(|&c| !is_pivot[c]).collect()
    }
}

/// Rank of a sparse rational system modulo `p`; `None` if `p` divides a denominator.
pub fn rank_mod_p(rows: &[Vec<(usize, Scalar)>], width: usize, p: u64) -> Option<usize> {
    let mut ech = ModEchelon::new(p, width);
    for row in rows {
        let dense = dense_mod_row(row, width, p)?;
        ech.insert(dense);
        if ech.is_full() {
            break;
        }
    }
    Some(ech.rank())
}

pub(crate) fn dense_mod_row(row: &[(usize, Scalar)], width: usize, p: u64) -> Option<Vec<u64>> {
    let mut dense = vec![0u64; width];
    for (c, v) in row {
        dense[*c] = reduce_scalar(v, p)?;
    }
    Some(dense)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::frac;

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]);
        assert!(is_prime(2_147_483_647));
        assert!(!is_prime(2_147_483_649));
        // strong pseudoprime to bases 2 and 3
        assert!(!is_prime(1_373_653));
    }

    #[test]
    fn prime_stream_is_reproducible() {
        let a = primes_from_seed(9, 5);
        assert_eq!(a, primes_from_seed(9, 5));
        assert_ne!(a, primes_from_seed(10, 5));
        for p in a {
            assert!(p > PRIME_FLOOR && p < 2 * PRIME_FLOOR && is_prime(p));
        }
    }

    #[test]
    fn scalar_reduction() {
        let p = 1_000_000_007;
        let half = reduce_scalar(&frac(1, 2), p).unwrap();
        assert_eq!(mul_mod(half, 2, p), 1);
        assert_eq!(reduce_scalar(&frac(-1, 1), p), Some(p - 1));
        assert_eq!(reduce_scalar(&frac(1, 7), 7), None);
    }
}
