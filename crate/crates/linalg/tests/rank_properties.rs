use exact_linalg::modular::{primes_from_seed, rank_mod_p};
use exact_linalg::scalar::{frac, int};
use exact_linalg::{kernel, rank, ExactMatrix, KernelSolver, Strategy};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, range: i64) -> ExactMatrix {
    let dense: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(-range..=range)).collect()).collect();
    ExactMatrix::from_i64(&dense)
}

/// Product of a rows x k and a k x cols random matrix: rank at most k.
fn low_rank_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, k: usize) -> ExactMatrix {
    let a = random_matrix(rng, rows, k, 4);
    let b = random_matrix(rng, k, cols, 4);
    a.mul(&b)
}

#[test]
fn random_100x60_rank_agrees_with_two_primes() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let m = random_matrix(&mut rng, 100, 60, 9);
    let r = rank(&m);
    assert_eq!(r, 60);
    for p in primes_from_seed(7, 2) {
        assert_eq!(rank_mod_p(m.sparse_rows(), 60, p), Some(r));
    }
}

#[test]
fn rank_deficient_200x200_agrees_with_two_primes() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let m = low_rank_matrix(&mut rng, 200, 200, 137);
    let r = rank(&m);
    assert_eq!(r, 137);
    for p in primes_from_seed(11, 2) {
        assert_eq!(rank_mod_p(m.sparse_rows(), 200, p), Some(r));
    }
    let k = kernel(&m, Strategy::FractionFree).unwrap();
    assert_eq!(k.dim(), 63);
    assert!(k.vectors.iter().all(|v| m.annihilates(v)));
}

#[test]
fn rank_plus_nullity_is_width() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for (rows, cols, k) in [(30, 20, 7), (10, 25, 10), (40, 40, 39)] {
        let m = low_rank_matrix(&mut rng, rows, cols, k);
        let ff = kernel(&m, Strategy::FractionFree).unwrap();
        // kernel entries are ratios of k x k minors; budget grows with k
        let solver = KernelSolver { prime_budget: 4 + k, ..KernelSolver::default() };
        let mm = solver.kernel(&m, Strategy::MultiModular).unwrap();
        assert_eq!(rank(&m) + ff.dim(), cols);
        assert_eq!(ff.vectors, mm.vectors);
        assert!(ff.vectors.iter().all(|v| m.annihilates(v)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn kernel_dim_invariant_under_row_operations(
        seed in any::<u64>(),
        rows in 1usize..12,
        cols in 1usize..10,
        k in 1usize..6,
        num in 1i64..9,
        den in 1i64..9,
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = low_rank_matrix(&mut rng, rows, cols, k);
        let base = kernel(&m, Strategy::FractionFree).unwrap();

        let mut order: Vec<usize> = (0..rows).collect();
        order.reverse();
        order.rotate_left(seed as usize % rows);
        let permuted = m.permute_rows(&order);
        prop_assert_eq!(kernel(&permuted, Strategy::FractionFree).unwrap().dim(), base.dim());

        let scaled = m.scale_row(seed as usize % rows, &frac(-num, den));
        let scaled_kernel = kernel(&scaled, Strategy::MultiModular).unwrap();
        prop_assert_eq!(scaled_kernel.dim(), base.dim());
        prop_assert_eq!(scaled_kernel.vectors, base.vectors);
    }

    #[test]
    fn certified_vectors_annihilate(seed in any::<u64>(), rows in 1usize..10, cols in 2usize..10) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_matrix(&mut rng, rows, cols, 3).vstack(&ExactMatrix::from_triples(1, cols, vec![(0, 0, int(1))]));
        let kb = kernel(&m, Strategy::MultiModular).unwrap();
        prop_assert!(kb.is_exactly_verified());
        for v in &kb.vectors {
            prop_assert!(m.annihilates(v));
        }
    }
}
