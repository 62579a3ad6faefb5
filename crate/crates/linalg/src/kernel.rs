//! Right null spaces of sparse exact systems.
//!
//! Both strategies return the same canonical basis: one vector per free column of the
//! reduced row echelon form, with a 1 in that column. Systems are first split into
//! independent blocks (connected components of the row/column incidence graph), which
//! keeps the structured systems coming from graded algebras small.

use std::collections::HashSet;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bareiss;
use crate::matrix::{integer_dot_is_zero, integer_vector, ExactMatrix, SparseRow};
use crate::modular::{self, ModEchelon, ModRref, PrimeStream};
use crate::reconstruct::{crt, rational_reconstruct};
use crate::scalar::{self, Scalar};
use crate::LinalgError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Strategy {
    FractionFree,
    MultiModular,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Certification {
    /// Every basis vector was substituted into the rational system and annihilated exactly.
    ExactlyVerified,
    /// Reconstructed from these primes but not substituted back.
    ModularOnly(Vec<u64>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelBasis {
    pub ambient_dim: usize,
    pub vectors: Vec<Vec<Scalar>>,
    pub certification: Certification,
    /// Primes whose images were combined (empty for fraction-free runs).
    pub primes: Vec<u64>,
    /// Primes rejected because their rank or pivot pattern disagreed with the others.
    pub discarded_primes: Vec<u64>,
}

impl KernelBasis {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_exactly_verified(&self) -> bool {
        self.certification == Certification::ExactlyVerified
    }
}

/// Tunables for kernel computations.
#[derive(Clone, Debug)]
pub struct KernelSolver {
    /// Maximum number of primes tried per block before giving up on reconstruction.
    pub prime_budget: usize,
    /// Seed of the prime stream.
    pub seed: u64,
    /// Systems with more unknowns than this always take the multi-modular path.
    pub multimodular_threshold: usize,
    /// Substitute reconstructed vectors back into the rational system.
    pub certify: bool,
    /// Print block statistics to stderr.
    pub progress: bool,
}

impl Default for KernelSolver {
    fn default() -> Self {
        KernelSolver { prime_budget: 4, seed: 0, multimodular_threshold: 2000, certify: true, progress: false }
    }
}

pub const MIN_AGREEING_PRIMES: usize = 2;

struct Block {
    cols: Vec<usize>,
    rows: Vec<SparseRow>,
}

struct BlockKernel {
    vectors: Vec<(usize, Vec<Scalar>)>,
    primes: Vec<u64>,
    discarded: Vec<u64>,
    verified: bool,
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Splits the system into connected blocks; columns touched by no row are returned separately.
fn decompose(system: &ExactMatrix) -> (Vec<Block>, Vec<usize>) {
    let n = system.cols();
    let mut parent: Vec<usize> = (0..n).collect();
    let mut used = vec![false; n];
    for row in system.sparse_rows() {
        if let Some((first, _)) = row.first() {
            let root = find(&mut parent, *first);
            for (c, _) in row {
                used[*c] = true;
                let rc = find(&mut parent, *c);
                if rc != root {
                    parent[rc] = root;
                }
            }
        }
    }
    let mut block_of_root = vec![usize::MAX; n];
    let mut local_index = vec![0usize; n];
    let mut blocks: Vec<Block> = Vec::new();
    let mut isolated = Vec::new();
    for c in 0..n {
        if !used[c] {
            isolated.push(c);
            continue;
        }
        let root = find(&mut parent, c);
        if block_of_root[root] == usize::MAX {
            block_of_root[root] = blocks.len();
            blocks.push(Block { cols: Vec::new(), rows: Vec::new() });
        }
        let b = &mut blocks[block_of_root[root]];
        local_index[c] = b.cols.len();
        b.cols.push(c);
    }
    let mut seen: Vec<HashSet<SparseRow>> = blocks.iter().map(|_| HashSet::new()).collect();
    for row in system.sparse_rows() {
        let Some((first, lead)) = row.first() else { continue };
        let b = block_of_root[find(&mut parent, *first)];
        // rows are deduplicated up to scaling
        let normalized: SparseRow = row.iter().map(|(c, v)| (local_index[*c], v / lead)).collect();
        if seen[b].insert(normalized.clone()) {
            blocks[b].rows.push(normalized);
        }
    }
    (blocks, isolated)
}

fn kernel_from_rref(pivots: &[usize], rows: &[Vec<Scalar>], width: usize) -> Vec<(usize, Vec<Scalar>)> {
    let mut is_pivot = vec![false; width];
    for &c in pivots {
        is_pivot[c] = true;
    }
    (0..width)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![scalar::zero(); width];
            v[f] = scalar::one();
            for (row, &pc) in rows.iter().zip(pivots) {
                if !row[f].is_zero() {
                    v[pc] = -row[f].clone();
                }
            }
            (f, v)
        })
        .collect()
}

fn annihilates(rows: &[SparseRow], v: &[Scalar]) -> bool {
    let w = integer_vector(v);
    rows.iter().all(|row| integer_dot_is_zero(row, &w))
}

fn mod_rref(block: &Block, p: u64) -> Option<ModRref> {
    let width = block.cols.len();
    let mut ech = ModEchelon::new(p, width);
    for row in &block.rows {
        ech.insert(modular::dense_mod_row(row, width, p)?);
        if ech.is_full() {
            break;
        }
    }
    Some(ech.into_rref())
}

/// Orders candidate reductions: higher rank first, then lexicographically earlier pivots.
/// The rational pivot pattern is the best one any prime can show.
fn better(a: &ModRref, b: &ModRref) -> bool {
    a.pivots.len() > b.pivots.len() || (a.pivots.len() == b.pivots.len() && a.pivots < b.pivots)
}

impl KernelSolver {
    pub fn with_seed(seed: u64) -> Self {
        KernelSolver { seed, ..KernelSolver::default() }
    }

    pub fn kernel(&self, system: &ExactMatrix, strategy: Strategy) -> Result<KernelBasis, LinalgError> {
        if system.rows() == 0 || system.cols() == 0 {
            return Err(LinalgError::EmptySystem);
        }
        let strategy = if system.cols() > self.multimodular_threshold { Strategy::MultiModular } else { strategy };
        let (blocks, isolated) = decompose(system);
        if self.progress {
            let largest = blocks.iter().map(|b| b.cols.len()).max().unwrap_or(0);
            eprintln!(
                "kernel: {}x{} system, {} nonzeros, {} blocks (largest {} unknowns), {:?}",
                system.rows(),
                system.cols(),
                system.nnz(),
                blocks.len(),
                largest,
                strategy
            );
        }
        let solved: Vec<Result<BlockKernel, LinalgError>> = blocks
            .par_iter()
            .map(|b| match strategy {
                Strategy::FractionFree => Ok(self.fraction_free_block(b)),
                Strategy::MultiModular => self.multimodular_block(b),
            })
            .collect();

        let n = system.cols();
        let mut tagged: Vec<(usize, Vec<Scalar>)> = isolated
            .into_iter()
            .map(|c| {
                let mut v = vec![scalar::zero(); n];
                v[c] = scalar::one();
                (c, v)
            })
            .collect();
        let mut primes: Vec<u64> = Vec::new();
        let mut discarded: Vec<u64> = Vec::new();
        let mut verified = true;
        for (block, result) in blocks.iter().zip(solved) {
            let bk = result?;
            verified &= bk.verified;
            for p in bk.primes {
                if !primes.contains(&p) {
                    primes.push(p);
                }
            }
            for p in bk.discarded {
                if !discarded.contains(&p) {
                    discarded.push(p);
                }
            }
            for (free, local) in bk.vectors {
                let mut v = vec![scalar::zero(); n];
                for (x, &c) in local.into_iter().zip(&block.cols) {
                    v[c] = x;
                }
                tagged.push((block.cols[free], v));
            }
        }
        tagged.sort_by_key(|(f, _)| *f);
        let certification =
            if verified { Certification::ExactlyVerified } else { Certification::ModularOnly(primes.clone()) };
        Ok(KernelBasis {
            ambient_dim: n,
            vectors: tagged.into_iter().map(|(_, v)| v).collect(),
            certification,
            primes,
            discarded_primes: discarded,
        })
    }

    fn fraction_free_block(&self, block: &Block) -> BlockKernel {
        let r = bareiss::rref(&block.rows, block.cols.len());
        BlockKernel {
            vectors: kernel_from_rref(&r.pivots, &r.rows, r.width),
            primes: Vec::new(),
            discarded: Vec::new(),
            verified: true,
        }
    }

    fn multimodular_block(&self, block: &Block) -> Result<BlockKernel, LinalgError> {
        let width = block.cols.len();
        let mut stream = PrimeStream::new(self.seed);
        let mut agreeing: Vec<ModRref> = Vec::new();
        let mut discarded: Vec<u64> = Vec::new();
        for _ in 0..self.prime_budget {
            let p = stream.next().expect("prime stream is infinite");
            let Some(image) = mod_rref(block, p) else {
                discarded.push(p);
                continue;
            };
            match agreeing.first() {
                None => agreeing.push(image),
                Some(reference) if image.pivots == reference.pivots => agreeing.push(image),
                Some(reference) if better(&image, reference) => {
                    discarded.extend(agreeing.iter().map(|r| r.p));
                    agreeing = vec![image];
                }
                Some(_) => discarded.push(p),
            }
            if agreeing.len() < MIN_AGREEING_PRIMES {
                continue;
            }
            let Some(vectors) = reconstruct_kernel(&agreeing, width) else { continue };
            let verified = self.certify;
            if verified && !vectors.iter().all(|(_, v)| annihilates(&block.rows, v)) {
                continue;
            }
            return Ok(BlockKernel { vectors, primes: agreeing.iter().map(|r| r.p).collect(), discarded, verified });
        }
        if agreeing.len() < MIN_AGREEING_PRIMES && !discarded.is_empty() {
            return Err(LinalgError::DimensionMismatch { discarded, budget: self.prime_budget });
        }
        Err(LinalgError::ReconstructionFailure { budget: self.prime_budget })
    }

    /// Rank of the reduction modulo `p`, block by block. `None` if `p` divides a denominator.
    pub fn rank_mod_p(&self, system: &ExactMatrix, p: u64) -> Option<usize> {
        let (blocks, _) = decompose(system);
        let ranks: Option<Vec<usize>> = blocks.par_iter().map(|b| mod_rref(b, p).map(|r| r.pivots.len())).collect();
        ranks.map(|r| r.into_iter().sum())
    }

    /// Rank over the rationals via fraction-free elimination on each block.
    pub fn rank(&self, system: &ExactMatrix) -> usize {
        let (blocks, _) = decompose(system);
        blocks.par_iter().map(|b| bareiss::rank(&b.rows, b.cols.len())).sum()
    }
}

fn reconstruct_kernel(images: &[ModRref], width: usize) -> Option<Vec<(usize, Vec<Scalar>)>> {
    let reference = &images[0];
    let free = reference.free_cols();
    let mut rows: Vec<Vec<Scalar>> = vec![vec![scalar::zero(); width]; reference.pivots.len()];
    for (i, row) in rows.iter_mut().enumerate() {
        row[reference.pivots[i]] = Scalar::one();
        for &f in &free {
            let residues: Vec<(u64, u64)> = images.iter().map(|im| (im.rows[i][f], im.p)).collect();
            if residues.iter().all(|(r, _)| *r == 0) {
                continue;
            }
            let (value, modulus) = crt(&residues);
            row[f] = rational_reconstruct(&value, &modulus)?;
        }
    }
    Some(kernel_from_rref(&reference.pivots, &rows, width))
}

pub fn kernel(system: &ExactMatrix, strategy: Strategy) -> Result<KernelBasis, LinalgError> {
    KernelSolver::default().kernel(system, strategy)
}

pub fn rank(system: &ExactMatrix) -> usize {
    KernelSolver::default().rank(system)
}

/// Rank of the span of a list of vectors.
pub fn span_rank(vectors: &[Vec<Scalar>]) -> usize {
    let Some(first) = vectors.first() else { return 0 };
    rank(&ExactMatrix::from_dense(first.len(), vectors))
}

/// True iff every vector of `sub` lies in the span of `sup`.
pub fn span_contains(sup: &[Vec<Scalar>], sub: &[Vec<Scalar>]) -> bool {
    let mut all = sup.to_vec();
    all.extend_from_slice(sub);
    span_rank(&all) == span_rank(sup)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    #[test]
    fn identity_has_trivial_kernel() {
        for s in [Strategy::FractionFree, Strategy::MultiModular] {
            let k = kernel(&ExactMatrix::identity(3), s).unwrap();
            assert_eq!(k.dim(), 0);
            assert!(k.is_exactly_verified());
        }
    }

    #[test]
    fn zero_matrix_kernel_is_everything() {
        let z = ExactMatrix::zeros(2, 5);
        let k = kernel(&z, Strategy::FractionFree).unwrap();
        assert_eq!(k.dim(), 5);
        assert_eq!(k.vectors[3][3], int(1));
    }

    #[test]
    fn empty_system_is_rejected() {
        assert_eq!(kernel(&ExactMatrix::zeros(0, 3), Strategy::FractionFree), Err(LinalgError::EmptySystem));
        assert_eq!(kernel(&ExactMatrix::zeros(2, 0), Strategy::MultiModular), Err(LinalgError::EmptySystem));
    }

    #[test]
    fn strategies_agree_on_blocked_system() {
        // two independent blocks plus an untouched column
        let m = ExactMatrix::from_i64(&[
            vec![1, 2, 0, 0, 0, 0],
            vec![2, 4, 0, 0, 0, 0],
            vec![0, 0, 3, 0, 1, 0],
            vec![0, 0, 0, 0, 2, 5],
        ]);
        let a = kernel(&m, Strategy::FractionFree).unwrap();
        let b = kernel(&m, Strategy::MultiModular).unwrap();
        assert_eq!(a.vectors, b.vectors);
        assert_eq!(a.dim(), 3);
        assert_eq!(rank(&m), 3);
        for v in &a.vectors {
            assert!(m.annihilates(v));
        }
        assert_eq!(b.primes.len(), MIN_AGREEING_PRIMES);
    }

    #[test]
    fn rational_kernel_entries_are_reconstructed() {
        let m = ExactMatrix::from_i64(&[vec![3, 7, 0, 11], vec![0, 5, -13, 2]]);
        let a = kernel(&m, Strategy::FractionFree).unwrap();
        let b = kernel(&m, Strategy::MultiModular).unwrap();
        assert_eq!(a, KernelBasis { primes: vec![], ..b.clone() });
        assert!(a.vectors.iter().all(|v| m.annihilates(v)));
    }

    #[test]
    fn threshold_forces_multimodular() {
        let solver = KernelSolver { multimodular_threshold: 2, ..KernelSolver::default() };
        let k = solver.kernel(&ExactMatrix::from_i64(&[vec![1, 1, 1]]), Strategy::FractionFree).unwrap();
        assert_eq!(k.dim(), 2);
        assert_eq!(k.primes.len(), 2);
    }

    #[test]
    fn tiny_budget_reports_failure() {
        let solver = KernelSolver { prime_budget: 1, ..KernelSolver::default() };
        let err = solver.kernel(&ExactMatrix::from_i64(&[vec![1, 1]]), Strategy::MultiModular);
        assert_eq!(err, Err(LinalgError::ReconstructionFailure { budget: 1 }));
    }

    #[test]
    fn large_entries_exhaust_small_budget_then_succeed() {
        // kernel entries near 2^40 need more than two 31-bit primes to reconstruct
        let big = 1_099_511_627_689i64;
        let m = ExactMatrix::from_i64(&[vec![big, 3]]);
        let tight = KernelSolver { prime_budget: 2, ..KernelSolver::default() };
        assert!(tight.kernel(&m, Strategy::MultiModular).is_err());
        let roomy = KernelSolver { prime_budget: 6, ..KernelSolver::default() };
        let k = roomy.kernel(&m, Strategy::MultiModular).unwrap();
        assert!(k.is_exactly_verified());
        assert_eq!(k.vectors, kernel(&m, Strategy::FractionFree).unwrap().vectors);
    }

    #[test]
    fn uncertified_result_is_marked_modular() {
        let solver = KernelSolver { certify: false, ..KernelSolver::default() };
        let k = solver.kernel(&ExactMatrix::from_i64(&[vec![1, -1]]), Strategy::MultiModular).unwrap();
        assert!(matches!(k.certification, Certification::ModularOnly(ref ps) if ps.len() == 2));
    }
}
