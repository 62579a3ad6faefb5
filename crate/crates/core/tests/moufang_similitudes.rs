use exact_linalg::scalar::int;
use exceptional_core::albert::AlbertElement;
use exceptional_core::jordan_similitudes as js;
use exceptional_core::octonion::Octonion;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn frozen_placement_gives_similitudes() {
    let mut r = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..10 {
        let u = Octonion::random_invertible(&mut r, 3);
        let n = u.norm();
        let (s, alpha) = js::moufang_similitude(&u).unwrap();
        assert_eq!(alpha, [int(1), n.clone(), n.clone()]);
        assert_eq!(s.multiplier, &n * &n);
        assert_eq!(js::image_of_one(&s), AlbertElement::diag(alpha));
        assert_eq!(js::is_jordan_similitude(&s.map), Some(&n * &n));
    }
}

#[test]
fn multipliers_equal_to_alpha_force_unit_norm() {
    // with mu(t_i) = alpha_i = (n^2, n, n) the block map scales d0 n(o0) by n^4 but
    // d1 n(o1) by n^2, so it is a similitude only when n = +-1
    let mut r = ChaCha8Rng::seed_from_u64(22);
    let mut tried = 0;
    while tried < 5 {
        let u = Octonion::random_invertible(&mut r, 3);
        let n = u.norm();
        if n == int(1) || n == int(-1) {
            continue;
        }
        tried += 1;
        assert_eq!(js::moufang_literal(&u).unwrap(), Ok(None));
    }
    let unit = Octonion::from_i64([1, 0, 0, 0, 0, 0, 0, 1]);
    assert!(js::moufang_literal(&unit).unwrap().unwrap().is_some());
    let u = Octonion::from_i64([2, 1, 0, 0, 1, 0, 0, 1]);
    assert_eq!(u.norm(), int(1));
    let s = js::moufang_literal(&u).unwrap().unwrap().unwrap();
    assert_eq!(s.multiplier, int(1));
}

#[test]
fn candidates_with_wrong_slots_are_rejected() {
    let u = Octonion::from_i64([2, 1, 0, 1, 1, 0, 0, 2]);
    let accepted: Vec<_> = js::MoufangPlacement::candidates()
        .into_iter()
        .filter(|&p| {
            let t = js::moufang_triple(&u, p).unwrap();
            js::compatible_alphas(&t.multipliers()).iter().any(|a| js::block_similitude(a, &t).is_some())
        })
        .collect();
    assert!(accepted.contains(&exceptional_core::constants::MOUFANG_PLACEMENT));
    assert!(accepted.len() < js::MoufangPlacement::candidates().len());
}
