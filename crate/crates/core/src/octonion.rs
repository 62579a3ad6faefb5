//! Split octonions as Zorn vector matrices `[[a, v], [w, b]]`.
//!
//! Coordinates are ordered `(a, v1, v2, v3, w1, w2, w3, b)`. The norm is
//! `n(x) = ab - v.w`, the unit is `(1, 0, 0, 1)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use exact_linalg::scalar::{self, int};
use exact_linalg::{ExactMatrix, Scalar};
use num_traits::Zero;
use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::constants::ZORN_SIGNS;
use crate::poly::Poly;
use crate::CalibrationError;

pub const DIM: usize = 8;

/// Signs in front of the two cross-product terms of the Zorn product:
/// the `v` slot carries `wedge_in_v * (w x w')` and the `w` slot `wedge_in_w * (v x v')`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ZornSigns {
    pub wedge_in_v: i8,
    pub wedge_in_w: i8,
}

impl ZornSigns {
    /// Search order of the calibration: the textbook convention first.
    pub const CANDIDATES: [ZornSigns; 4] = [
        ZornSigns { wedge_in_v: -1, wedge_in_w: 1 },
        ZornSigns { wedge_in_v: 1, wedge_in_w: 1 },
        ZornSigns { wedge_in_v: -1, wedge_in_w: -1 },
        ZornSigns { wedge_in_v: 1, wedge_in_w: -1 },
    ];
}

type Vec3 = [Scalar; 3];

fn dot(x: &Vec3, y: &Vec3) -> Scalar {
    &x[0] * &y[0] + &x[1] * &y[1] + &x[2] * &y[2]
}

fn cross(x: &Vec3, y: &Vec3) -> Vec3 {
    [&x[1] * &y[2] - &x[2] * &y[1], &x[2] * &y[0] - &x[0] * &y[2], &x[0] * &y[1] - &x[1] * &y[0]]
}

fn zero3() -> Vec3 {
    [scalar::zero(), scalar::zero(), scalar::zero()]
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Octonion {
    pub a: Scalar,
    pub v: Vec3,
    pub w: Vec3,
    pub b: Scalar,
}

impl Octonion {
    pub fn new(a: Scalar, v: Vec3, w: Vec3, b: Scalar) -> Self {
        Octonion { a, v, w, b }
    }

    pub fn zero() -> Self {
        Octonion::new(scalar::zero(), zero3(), zero3(), scalar::zero())
    }

    pub fn one() -> Self {
        Octonion::scalar(scalar::one())
    }

    /// `s` times the unit.
    pub fn scalar(s: Scalar) -> Self {
        Octonion::new(s.clone(), zero3(), zero3(), s)
    }

    pub fn from_coords(c: &[Scalar]) -> Self {
        assert_eq!(c.len(), DIM);
        Octonion::new(
            c[0].clone(),
            [c[1].clone(), c[2].clone(), c[3].clone()],
            [c[4].clone(), c[5].clone(), c[6].clone()],
            c[7].clone(),
        )
    }

    pub fn from_i64(c: [i64; DIM]) -> Self {
        Octonion::from_coords(&c.map(int))
    }

    pub fn coords(&self) -> Vec<Scalar> {
        let mut out = Vec::with_capacity(DIM);
        out.push(self.a.clone());
        out.extend(self.v.iter().cloned());
        out.extend(self.w.iter().cloned());
        out.push(self.b.clone());
        out
    }

    pub fn basis(i: usize) -> Self {
        let mut c = vec![scalar::zero(); DIM];
        c[i] = scalar::one();
        Octonion::from_coords(&c)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.v.iter().chain(&self.w).all(Zero::is_zero)
    }

    pub fn mul_with(&self, rhs: &Octonion, signs: ZornSigns) -> Octonion {
        let (x, y) = (self, rhs);
        let wv = int(signs.wedge_in_v as i64);
        let ww = int(signs.wedge_in_w as i64);
        let wedge_w = cross(&x.w, &y.w);
        let wedge_v = cross(&x.v, &y.v);
        let v = std::array::from_fn(|i| &x.a * &y.v[i] + &y.b * &x.v[i] + &wv * &wedge_w[i]);
        let w = std::array::from_fn(|i| &y.a * &x.w[i] + &x.b * &y.w[i] + &ww * &wedge_v[i]);
        Octonion::new(&x.a * &y.a + dot(&x.v, &y.w), v, w, &x.b * &y.b + dot(&x.w, &y.v))
    }

    pub fn conj(&self) -> Octonion {
        Octonion::new(self.b.clone(), self.v.clone().map(|x| -x), self.w.clone().map(|x| -x), self.a.clone())
    }

    pub fn norm(&self) -> Scalar {
        &self.a * &self.b - dot(&self.v, &self.w)
    }

    pub fn trace(&self) -> Scalar {
        &self.a + &self.b
    }

    /// Polar form `n(x + y) - n(x) - n(y)`.
    pub fn polar_norm(&self, other: &Octonion) -> Scalar {
        (self + other).norm() - self.norm() - other.norm()
    }

    /// Real part, defined when the element is a scalar multiple of the unit.
    pub fn as_scalar(&self) -> Option<Scalar> {
        let real = self.v.iter().chain(&self.w).all(Zero::is_zero) && self.a == self.b;
        real.then(|| self.a.clone())
    }

    pub fn scale(&self, s: &Scalar) -> Octonion {
        Octonion::new(&self.a * s, self.v.clone().map(|x| x * s), self.w.clone().map(|x| x * s), &self.b * s)
    }

    pub fn inverse(&self) -> Option<Octonion> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        Some(self.conj().scale(&n.recip()))
    }

    /// Matrix of `z -> self * z`.
    pub fn left_matrix(&self) -> ExactMatrix {
        linear_map_matrix(|z| self * z)
    }

    /// Matrix of `z -> z * self`.
    pub fn right_matrix(&self) -> ExactMatrix {
        linear_map_matrix(|z| z * self)
    }

    pub fn random<R: Rng>(rng: &mut R, bound: i64) -> Octonion {
        Octonion::from_i64(std::array::from_fn(|_| rng.gen_range(-bound..=bound)))
    }

    /// A random octonion with nonzero norm.
    pub fn random_invertible<R: Rng>(rng: &mut R, bound: i64) -> Octonion {
        loop {
            let u = Octonion::random(rng, bound);
            if !u.norm().is_zero() {
                return u;
            }
        }
    }
}

/// Matrix (acting on coordinate columns) of a linear endomorphism given pointwise.
pub fn linear_map_matrix(f: impl Fn(&Octonion) -> Octonion) -> ExactMatrix {
    let mut triples = Vec::new();
    for j in 0..DIM {
        for (i, x) in f(&Octonion::basis(j)).coords().into_iter().enumerate() {
            if !x.is_zero() {
                triples.push((i, j, x));
            }
        }
    }
    ExactMatrix::from_triples(DIM, DIM, triples)
}

pub fn apply(map: &ExactMatrix, x: &Octonion) -> Octonion {
    Octonion::from_coords(&map.mul_vec(&x.coords()))
}

impl Mul for &Octonion {
    type Output = Octonion;
    fn mul(self, rhs: &Octonion) -> Octonion {
        self.mul_with(rhs, ZORN_SIGNS)
    }
}

impl Add for &Octonion {
    type Output = Octonion;
    fn add(self, rhs: &Octonion) -> Octonion {
        Octonion::new(
            &self.a + &rhs.a,
            std::array::from_fn(|i| &self.v[i] + &rhs.v[i]),
            std::array::from_fn(|i| &self.w[i] + &rhs.w[i]),
            &self.b + &rhs.b,
        )
    }
}

impl Sub for &Octonion {
    type Output = Octonion;
    fn sub(self, rhs: &Octonion) -> Octonion {
        self + &(-rhs)
    }
}

impl Neg for &Octonion {
    type Output = Octonion;
    fn neg(self) -> Octonion {
        self.scale(&int(-1))
    }
}

impl fmt::Display for Octonion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords().iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

impl Serialize for Octonion {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        scalar::serde_scalar_vec::serialize(&self.coords(), ser)
    }
}

impl<'de> Deserialize<'de> for Octonion {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let c = scalar::serde_scalar_vec::deserialize(de)?;
        if c.len() != DIM {
            return Err(serde::de::Error::custom(format!("octonion needs {DIM} coordinates, got {}", c.len())));
        }
        Ok(Octonion::from_coords(&c))
    }
}

/// Structure constants `(i, j, k, c)`: `e_i e_j = sum_k c e_k`, sorted and sparse.
pub fn structure_constants(signs: ZornSigns) -> Vec<(usize, usize, usize, Scalar)> {
    let mut out = Vec::new();
    for i in 0..DIM {
        for j in 0..DIM {
            let p = Octonion::basis(i).mul_with(&Octonion::basis(j), signs);
            for (k, c) in p.coords().into_iter().enumerate() {
                if !c.is_zero() {
                    out.push((i, j, k, c));
                }
            }
        }
    }
    out
}

fn norm_poly(z: &[Poly]) -> Poly {
    let mut n = &z[0] * &z[7];
    for i in 0..3 {
        n = &n - &(&z[1 + i] * &z[4 + i]);
    }
    n
}

/// `n(xy) - n(x)n(y)` as a polynomial in the 16 coordinates of `x` (vars 0..8) and `y` (8..16).
pub fn composition_defect(signs: ZornSigns) -> Poly {
    let mut product = vec![Poly::zero(); DIM];
    for (i, j, k, c) in structure_constants(signs) {
        product[k].add_term(vec![i as u16, (DIM + j) as u16], c);
    }
    let x: Vec<Poly> = (0..DIM).map(Poly::var).collect();
    let y: Vec<Poly> = (0..DIM).map(|i| Poly::var(DIM + i)).collect();
    &norm_poly(&product) - &(&norm_poly(&x) * &norm_poly(&y))
}

/// First sign variant (in `ZornSigns::CANDIDATES` order) whose product makes the norm
/// multiplicative as a polynomial identity.
pub fn calibrate_signs() -> Result<ZornSigns, CalibrationError> {
    ZornSigns::CANDIDATES
        .into_iter()
        .find(|&s| composition_defect(s).is_zero())
        .ok_or(CalibrationError::NoCandidate("octonion-signs"))
}

/// Gram matrix of the polar norm on the coordinate basis.
pub fn norm_gram() -> Vec<Vec<Scalar>> {
    (0..DIM).map(|i| (0..DIM).map(|j| Octonion::basis(i).polar_norm(&Octonion::basis(j))).collect()).collect()
}

/// Multiplier `mu` with `n(map x) = mu n(x)` for all `x`, if the map is an invertible
/// similitude. Checked on the polar norm of all basis pairs `i <= j`.
pub fn is_similitude(map: &ExactMatrix) -> Option<Scalar> {
    assert_eq!((map.rows(), map.cols()), (DIM, DIM));
    if exact_linalg::rank(map) < DIM {
        return None;
    }
    let images: Vec<Octonion> = (0..DIM).map(|j| apply(map, &Octonion::basis(j))).collect();
    let gram = norm_gram();
    let mut mu: Option<Scalar> = None;
    for i in 0..DIM {
        for j in i..DIM {
            let lhs = images[i].polar_norm(&images[j]);
            let rhs = &gram[i][j];
            if rhs.is_zero() {
                if !lhs.is_zero() {
                    return None;
                }
                continue;
            }
            let ratio = lhs / rhs;
            match &mu {
                None => mu = Some(ratio),
                Some(m) if *m == ratio => {}
                Some(_) => return None,
            }
        }
    }
    mu.filter(|m| !m.is_zero())
}

/// An invertible linear map of the octonions scaling the norm by `multiplier`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OctonionSimilitude {
    map: ExactMatrix,
    multiplier: Scalar,
}

impl OctonionSimilitude {
    pub fn new(map: ExactMatrix) -> Option<Self> {
        let multiplier = is_similitude(&map)?;
        Some(OctonionSimilitude { map, multiplier })
    }

    pub fn identity() -> Self {
        OctonionSimilitude { map: ExactMatrix::identity(DIM), multiplier: scalar::one() }
    }

    pub fn map(&self) -> &ExactMatrix {
        &self.map
    }

    pub fn multiplier(&self) -> &Scalar {
        &self.multiplier
    }

    pub fn apply(&self, x: &Octonion) -> Octonion {
        apply(&self.map, x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use exact_linalg::scalar::frac;

    fn e() -> Octonion {
        Octonion::one()
    }

    #[test]
    fn unit_and_idempotent() {
        assert_eq!(&e() * &e(), e());
        let f = Octonion::from_i64([1, 0, 0, 0, 0, 0, 0, 0]);
        assert_eq!(&f * &f, f);
        let x = Octonion::from_i64([2, -1, 3, 0, 4, 1, -2, 5]);
        assert_eq!(&e() * &x, x);
        assert_eq!(&x * &e(), x);
    }

    #[test]
    fn norm_examples() {
        assert_eq!(e().norm(), int(1));
        assert_eq!(Octonion::from_i64([1, 1, 0, 0, 1, 0, 0, 1]).norm(), int(0));
        let x = Octonion::from_i64([2, -1, 3, 0, 4, 1, -2, 5]);
        assert_eq!(x.trace(), int(7));
        assert_eq!(&x * &x.conj(), Octonion::scalar(x.norm()));
        assert_eq!(&x + &x.conj(), Octonion::scalar(x.trace()));
    }

    #[test]
    fn frozen_signs_make_norm_multiplicative() {
        assert!(composition_defect(ZORN_SIGNS).is_zero());
        assert_eq!(calibrate_signs().unwrap(), ZORN_SIGNS);
        let failing = ZornSigns::CANDIDATES.iter().filter(|&&s| !composition_defect(s).is_zero()).count();
        assert!(failing >= 1);
    }

    #[test]
    fn similitude_examples() {
        assert_eq!(is_similitude(&ExactMatrix::identity(DIM)), Some(int(1)));
        let lambda = frac(-3, 2);
        let scaled = linear_map_matrix(|z| z.scale(&lambda));
        assert_eq!(is_similitude(&scaled), Some(&lambda * &lambda));
        let u = Octonion::from_i64([1, 2, 0, -1, 1, 1, 3, 2]);
        assert_eq!(is_similitude(&u.left_matrix()), Some(u.norm()));
        assert_eq!(is_similitude(&u.right_matrix()), Some(u.norm()));
        // a singular left multiplication is rejected
        let isotropic = Octonion::from_i64([1, 1, 0, 0, 1, 0, 0, 1]);
        assert_eq!(is_similitude(&isotropic.left_matrix()), None);
        // a non-similitude
        let shear =
            ExactMatrix::from_triples(DIM, DIM, (0..DIM).map(|i| (i, i, int(1))).chain([(0, 1, int(1))]).collect());
        assert_eq!(is_similitude(&shear), None);
    }

    #[test]
    fn gram_is_nondegenerate_with_witt_index_four() {
        let gram = norm_gram();
        assert_eq!(exact_linalg::rank(&ExactMatrix::from_dense(DIM, &gram)), 8);
        // span{a, v1, v2, v3} is totally isotropic
        for i in 0..4 {
            for j in 0..4 {
                assert!(gram[i][j].is_zero());
            }
            assert!(Octonion::basis(i).norm().is_zero());
        }
    }

    #[test]
    fn serde_form() {
        let x = Octonion::from_coords(&[frac(1, 2), int(0), int(-1), int(0), int(0), int(0), int(0), int(3)]);
        let text = serde_json::to_string(&x).unwrap();
        assert_eq!(text, r#"["1/2","0/1","-1/1","0/1","0/1","0/1","0/1","3/1"]"#);
        assert_eq!(serde_json::from_str::<Octonion>(&text).unwrap(), x);
        assert!(serde_json::from_str::<Octonion>(r#"["1/1"]"#).is_err());
    }
}
