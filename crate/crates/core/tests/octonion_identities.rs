use exact_linalg::scalar::int;
use exceptional_core::constants::ZORN_SIGNS;
use exceptional_core::octonion::{self, composition_defect, Octonion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[test]
fn composition_on_random_pairs() {
    let mut r = rng(1);
    for _ in 0..1000 {
        let x = Octonion::random(&mut r, 5);
        let y = Octonion::random(&mut r, 5);
        assert_eq!((&x * &y).norm(), x.norm() * y.norm());
    }
}

#[test]
fn composition_on_basis_products() {
    for i in 0..8 {
        for j in 0..8 {
            let (x, y) = (Octonion::basis(i), Octonion::basis(j));
            assert_eq!((&x * &y).norm(), x.norm() * y.norm());
        }
    }
    // and as a polynomial identity in 16 variables
    assert!(composition_defect(ZORN_SIGNS).is_zero());
}

#[test]
fn alternative_laws() {
    let mut r = rng(2);
    for _ in 0..500 {
        let x = Octonion::random(&mut r, 5);
        let y = Octonion::random(&mut r, 5);
        let xx = &x * &x;
        assert_eq!(&x * &(&x * &y), &xx * &y);
        assert_eq!(&(&y * &x) * &x, &y * &xx);
    }
}

#[test]
fn moufang_identity() {
    let mut r = rng(3);
    for _ in 0..500 {
        let u = Octonion::random(&mut r, 4);
        let x = Octonion::random(&mut r, 4);
        let y = Octonion::random(&mut r, 4);
        assert_eq!(&(&u * &x) * &(&y * &u), &(&u * &(&x * &y)) * &u);
        assert_eq!(&(&u * &x) * &(&y * &u), &u * &(&(&x * &y) * &u));
    }
}

#[test]
fn conjugation_reverses_products() {
    let mut r = rng(4);
    for _ in 0..200 {
        let x = Octonion::random(&mut r, 5);
        let y = Octonion::random(&mut r, 5);
        assert_eq!((&x * &y).conj(), &y.conj() * &x.conj());
        assert_eq!(&x * &x.conj(), Octonion::scalar(x.norm()));
        assert_eq!(&x + &x.conj(), Octonion::scalar(x.trace()));
    }
}

#[test]
fn left_and_right_multiplications_are_similitudes() {
    let mut r = rng(5);
    for _ in 0..20 {
        let u = Octonion::random_invertible(&mut r, 4);
        assert_eq!(octonion::is_similitude(&u.left_matrix()), Some(u.norm()));
        assert_eq!(octonion::is_similitude(&u.right_matrix()), Some(u.norm()));
    }
    let isotropic = Octonion::from_i64([1, 1, 0, 0, 1, 0, 0, 1]);
    assert_eq!(isotropic.norm(), int(0));
    assert_eq!(octonion::is_similitude(&isotropic.left_matrix()), None);
}

mod properties {
    use exceptional_core::octonion::Octonion;
    use proptest::prelude::*;

    fn octonion() -> impl Strategy<Value = Octonion> {
        prop::array::uniform8(-20i64..=20).prop_map(Octonion::from_i64)
    }

    proptest! {
        #[test]
        fn norm_is_multiplicative(x in octonion(), y in octonion()) {
            prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
        }

        #[test]
        fn flexible_and_alternative(x in octonion(), y in octonion()) {
            prop_assert_eq!(&(&x * &y) * &x, &x * &(&y * &x));
            prop_assert_eq!(&(&x * &x) * &y, &x * &(&x * &y));
        }

        #[test]
        fn conjugation_reverses_products(x in octonion(), y in octonion()) {
            prop_assert_eq!((&x * &y).conj(), &y.conj() * &x.conj());
        }
    }
}
