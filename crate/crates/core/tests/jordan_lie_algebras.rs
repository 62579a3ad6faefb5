use exact_linalg::scalar::int;
use exact_linalg::{KernelSolver, Strategy};
use exceptional_core::albert::AlbertElement;
use exceptional_core::jordan_similitudes::{self as js, LieSubalgebraReport};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn der() -> LieSubalgebraReport {
    js::derivation_algebra().unwrap()
}

#[test]
fn derivations_have_dimension_52_by_both_strategies() {
    let system = js::derivation_system();
    assert_eq!((system.rows(), system.cols()), (10_206, 729));
    let ff = der();
    assert_eq!(ff.dimension, 52);
    assert!(ff.is_exactly_verified());
    let mm = js::derivation_algebra_with(&KernelSolver::with_seed(7), Strategy::MultiModular).unwrap();
    assert_eq!(mm.dimension, 52);
    assert!(mm.is_exactly_verified());
    assert_eq!(mm.vectors(), ff.vectors());

    let one = AlbertElement::one();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for i in 0..ff.dimension {
        let (d, lambda) = ff.element(i);
        assert_eq!(lambda, int(0));
        assert!(exceptional_core::albert::apply(&d, &one).is_zero());
    }
    for _ in 0..50 {
        let x = AlbertElement::random(&mut rng, 4);
        let d = js::random_element(&mut rng, &ff);
        let map = exceptional_core::lie::matrix_of(27, &d);
        assert_eq!(js::norm_derivative(&map, &x), int(0));
    }
}

#[test]
fn similitude_algebra_and_stabilizers() {
    let system = js::similitude_system();
    assert_eq!((system.rows(), system.cols()), (3654, 730));
    let sim = js::similitude_algebra().unwrap();
    assert_eq!(sim.dimension, 79);
    assert!(sim.is_exactly_verified());
    assert!(js::contains(&sim, &[js::scalar_element(3)]));
    assert!(!js::contains(&sim, &[js::scalar_element(1)]));

    let mm = js::similitude_algebra_with(&KernelSolver::with_seed(11), Strategy::MultiModular).unwrap();
    assert_eq!(mm.vectors(), sim.vectors());

    let der = der();
    assert!(js::contains(&sim, der.vectors()));

    let st = js::stabilizer_dimensions(&KernelSolver::default(), &der, &sim).unwrap();
    assert_eq!(st.stab_l.dimension, 31);
    assert_eq!(st.stab_lines.dimension, 31);
    assert!(js::same_subspace(&st.stab_l, &st.stab_lines));
    assert_eq!(st.aut_lv.dimension, 28);
    assert_eq!(st.fix_one.dimension, 52);
    assert!(js::same_subspace(&st.fix_one, &der));
    assert_eq!(der.dimension - st.aut_lv.dimension, 24);
    assert_eq!(st.stab_l.dimension, st.aut_lv.dimension + 3);
    assert_eq!(sim.dimension - st.stab_lines.dimension, 48);
    assert_eq!(sim.dimension - st.fix_one.dimension, 27);
    for r in st.reports() {
        assert!(r.is_exactly_verified(), "{}", r.name);
    }
}
