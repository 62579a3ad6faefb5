use std::sync::OnceLock;

use exact_linalg::scalar::{frac, int};
use exact_linalg::{KernelSolver, Scalar};
use exceptional_core::brown::*;
use exceptional_core::lie;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn calibrated() -> &'static FtsCalibration {
    static C: OnceLock<FtsCalibration> = OnceLock::new();
    C.get_or_init(|| calibrate_fts(&KernelSolver::default()).expect("calibration succeeds"))
}

fn fts() -> &'static FtsStructure {
    &calibrated().structure
}

#[test]
fn calibration_is_unique_up_to_the_flip() {
    let c = calibrated();
    assert_eq!(c.linear.particular, [frac(-1, 2), int(0), int(0)]);
    assert_eq!(c.linear.free_directions.len(), 2);
    assert_eq!(c.successes, vec![(2, 2), (-2, 2)]);
    assert_eq!(c.structure.quartic_coeffs, [frac(-1, 2), int(2), int(2)]);
    assert_eq!(c.screened.len(), 64);

    // the two successes are related by (alpha, beta) -> (-alpha, -beta), an isometry of b
    let flip = alpha_beta_flip();
    let omega = &c.structure.omega;
    assert_eq!(&flip.transpose().mul(omega).mul(&flip), omega);
    let mut signs = vec![int(1); DIM];
    signs[ALPHA] = int(-1);
    signs[BETA] = int(-1);
    let plus = quartic_poly(&[frac(-1, 2), int(2), int(2)]);
    let minus = quartic_poly(&[frac(-1, 2), int(-2), int(2)]);
    assert_eq!(pullback_diagonal(&plus, &signs), minus);
}

#[test]
fn skew_form_examples() {
    let f = fts();
    assert_eq!(f.skew_form(&BrownElement::e1(), &BrownElement::e2()), int(1));
    assert_eq!(f.skew_form(&BrownElement::e2(), &BrownElement::e1()), int(-1));
    assert_eq!(exact_linalg::rank(&f.omega), 56);
    let mut r = ChaCha8Rng::seed_from_u64(30);
    for _ in 0..50 {
        let x = BrownElement::random(&mut r, 4);
        let y = BrownElement::random(&mut r, 4);
        assert_eq!(f.skew_form(&x, &x), int(0));
        assert_eq!(f.skew_form(&x, &y), -f.skew_form(&y, &x));
    }
}

#[test]
fn singular_identity_for_the_idempotents() {
    let f = fts();
    let (e1, e2) = (BrownElement::e1(), BrownElement::e2());
    assert!(f.singular_identity_holds(&e1));
    assert!(f.singular_identity_holds(&e2));
    assert_eq!(f.t(&e1, &e1, &e2), e1.scale(&int(-2)));
    assert!(f.is_singular(&e1).unwrap());
    assert!(f.is_singular(&e2).unwrap());
    assert!(f.is_singular(&e1.scale(&int(7))).unwrap());
    assert!(!f.is_singular(&BrownElement::one()).unwrap());
    assert!(f.is_singular(&BrownElement::zero()).is_err());
    // a rank-one Albert element in the j slot is singular as well
    let x = BrownElement::new(
        int(0),
        int(0),
        exceptional_core::albert::AlbertElement::idempotent(1),
        exceptional_core::albert::AlbertElement::zero(),
    );
    assert!(f.is_singular(&x).unwrap());
    assert!(f.singular_identity_holds(&x));
}

#[test]
fn quartic_and_polarization() {
    let f = fts();
    let q = quartic_poly(&f.quartic_coeffs);
    let mut r = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..100 {
        let x = BrownElement::random(&mut r, 3);
        let direct = f.quartic(&x);
        assert_eq!(q.eval(&x.coords()), direct);
        assert_eq!(f.q4(&x, &x, &x, &x), int(24) * direct);
    }
    let e1 = BrownElement::e1();
    assert_eq!(f.quartic(&e1), int(0));
    assert_eq!(f.skew_form(&e1, &f.t(&e1, &e1, &e1)), int(0));
    let one = BrownElement::one();
    assert_ne!(f.skew_form(&one, &f.t(&one, &one, &one)), int(0));
}

#[test]
fn t_is_symmetric_and_q4_is_symmetric() {
    let f = fts();
    let mut r = ChaCha8Rng::seed_from_u64(32);
    for _ in 0..20 {
        let [x, y, z, w]: [BrownElement; 4] = std::array::from_fn(|_| BrownElement::random(&mut r, 2));
        let t = f.t(&x, &y, &z);
        assert_eq!(f.t(&y, &x, &z), t);
        assert_eq!(f.t(&z, &y, &x), t);
        assert_eq!(f.t(&x, &z, &y), t);
        let q = f.q4(&x, &y, &z, &w);
        assert_eq!(f.q4(&w, &y, &z, &x), q);
        assert_eq!(f.q4(&x, &w, &z, &y), q);
        assert_eq!(f.q4(&x, &y, &w, &z), q);
    }
}

#[test]
fn similitude_algebra_and_stabilizers() {
    let f = fts();
    let solver = KernelSolver::default();
    let sim = similitude_algebra_b(&solver, f).unwrap();
    assert_eq!(sim.stage1_dim, 1597);
    assert_eq!(sim.report.dimension, 134);
    assert!(sim.report.is_exactly_verified());
    assert!(sim.report.basis.primes.len() >= 2);
    let id = lie::flatten(&exact_linalg::ExactMatrix::identity(DIM), int(2));
    assert!(exact_linalg::span_contains(sim.report.vectors(), &[id]));

    let st = stabilizer_dimensions_b(&solver, &sim.report).unwrap();
    assert_eq!(st.stab_one.dimension, 78);
    assert_eq!(st.stab_pair.dimension, 80);
    assert!(st.stab_one.is_exactly_verified() && st.stab_pair.is_exactly_verified());
    assert_eq!(sim.report.dimension - st.stab_one.dimension, 56);
    assert_eq!(sim.report.dimension - st.stab_pair.dimension, 54);
    assert_eq!(st.stab_pair.dimension - st.stab_one.dimension, 2);

    // spot check basis elements against the defining identities on random basis triples
    let mut r = ChaCha8Rng::seed_from_u64(33);
    use rand::Rng;
    for i in (0..sim.report.dimension).step_by(9) {
        let v: &Vec<Scalar> = &sim.report.vectors()[i];
        for _ in 0..5 {
            let (u, w, x) = (r.gen_range(0..DIM), r.gen_range(0..DIM), r.gen_range(0..DIM));
            let (bd, td) = defects(f, v, u, w, x);
            assert_eq!(bd, int(0));
            assert!(td.iter().all(|c| *c == int(0)));
        }
    }
}

#[test]
fn tensor_hash_is_stable() {
    let f = fts();
    let again = FtsStructure::new(f.b_sign, f.quartic_coeffs.clone());
    assert_eq!(again.content_hash(), f.content_hash());
    assert_eq!(f.content_hash().len(), 64);
}

#[test]
fn frozen_constants_match_calibration() {
    let f = fts();
    let frozen = FtsStructure::frozen();
    assert_eq!(frozen.quartic_coeffs, f.quartic_coeffs);
    assert_eq!(frozen.b_sign, f.b_sign);
    assert_eq!(frozen.content_hash(), f.content_hash());
}
