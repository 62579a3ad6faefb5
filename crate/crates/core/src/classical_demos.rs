//! Two small classical computations: fixed lines of a regular diagonal torus of `PGL_p`
//! acting on projective space, and the isotropic lines and hyperbolic basis of a binary
//! quadratic form.

use exact_linalg::scalar::{int, one, zero};
use exact_linalg::{ExactMatrix, Scalar, Strategy};
use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DemoError {
    #[error("{0} is not a prime")]
    NotPrime(usize),
    #[error("expected {expected} diagonal entries, got {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("diagonal entries are not pairwise distinct")]
    NotRegular,
    #[error("the quadratic form is degenerate")]
    Degenerate,
    #[error("the quadratic form has no rational isotropic line")]
    Anisotropic,
}

fn is_prime(p: usize) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Lines of `k^p` fixed by the diagonal torus element, one per eigenvalue. Each is returned
/// as its primitive spanning vector.
pub fn torus_fixed_parabolics(p: usize, diagonal: &[Scalar]) -> Result<Vec<Vec<Scalar>>, DemoError> {
    if !is_prime(p) {
        return Err(DemoError::NotPrime(p));
    }
    if diagonal.len() != p {
        return Err(DemoError::LengthMismatch { expected: p, found: diagonal.len() });
    }
    for (i, a) in diagonal.iter().enumerate() {
        if diagonal[..i].contains(a) {
            return Err(DemoError::NotRegular);
        }
    }
    let lines = diagonal
        .iter()
        .map(|lambda| {
            let shifted =
                ExactMatrix::from_triples(p, p, diagonal.iter().enumerate().map(|(k, d)| (k, k, d - lambda)).collect());
            let eigen = exact_linalg::kernel(&shifted, Strategy::FractionFree).expect("square system");
            assert_eq!(eigen.dim(), 1, "regular element has one-dimensional eigenspaces");
            eigen.vectors[0].clone()
        })
        .collect();
    Ok(lines)
}

pub type Vec2 = [Scalar; 2];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinaryQuadraticForm {
    /// Gram matrix of the polarization: `q(v) = v^T gram v / 2`.
    #[serde(with = "gram_serde")]
    pub gram: [[Scalar; 2]; 2],
}

mod gram_serde {
    use super::*;
    use exact_linalg::scalar::serde_scalar_vec;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(g: &[[Scalar; 2]; 2], ser: S) -> Result<S::Ok, S::Error> {
        let flat: Vec<Scalar> = g.iter().flatten().cloned().collect();
        serde_scalar_vec::serialize(&flat, ser)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<[[Scalar; 2]; 2], D::Error> {
        let v = serde_scalar_vec::deserialize(de)?;
        if v.len() != 4 {
            return Err(serde::de::Error::custom("gram needs 4 entries"));
        }
        Ok([[v[0].clone(), v[1].clone()], [v[2].clone(), v[3].clone()]])
    }
}

impl BinaryQuadraticForm {
    /// `a x^2 + b x y + c y^2`.
    pub fn from_coefficients(a: Scalar, b: Scalar, c: Scalar) -> Self {
        let two = int(2);
        BinaryQuadraticForm { gram: [[&two * a, b.clone()], [b, &two * c]] }
    }

    /// `(a, b, c)` with `q = a x^2 + b x y + c y^2`.
    pub fn coefficients(&self) -> (Scalar, Scalar, Scalar) {
        let half = Scalar::new(1.into(), 2.into());
        (&self.gram[0][0] * &half, self.gram[0][1].clone(), &self.gram[1][1] * &half)
    }

    pub fn polar(&self, u: &Vec2, v: &Vec2) -> Scalar {
        let g = &self.gram;
        &u[0] * (&g[0][0] * &v[0] + &g[0][1] * &v[1]) + &u[1] * (&g[1][0] * &v[0] + &g[1][1] * &v[1])
    }

    pub fn eval(&self, v: &Vec2) -> Scalar {
        self.polar(v, v) / int(2)
    }

    pub fn determinant(&self) -> Scalar {
        &self.gram[0][0] * &self.gram[1][1] - &self.gram[0][1] * &self.gram[1][0]
    }

    pub fn is_nondegenerate(&self) -> bool {
        !self.determinant().is_zero()
    }

    /// `P^T gram P`.
    pub fn pullback(&self, p: &[[Scalar; 2]; 2]) -> Self {
        let g = &self.gram;
        let entry = |i: usize, j: usize| {
            let mut s = zero();
            for k in 0..2 {
                for l in 0..2 {
                    s += &p[k][i] * &g[k][l] * &p[l][j];
                }
            }
            s
        };
        BinaryQuadraticForm { gram: [[entry(0, 0), entry(0, 1)], [entry(1, 0), entry(1, 1)]] }
    }

    /// `xy` pulled back along a random invertible integer matrix with entries in `[-bound, bound]`.
    pub fn random_isotropic<R: Rng>(rng: &mut R, bound: i64) -> Self {
        let hyperbolic = BinaryQuadraticForm::from_coefficients(zero(), one(), zero());
        loop {
            let p = [
                [int(rng.gen_range(-bound..=bound)), int(rng.gen_range(-bound..=bound))],
                [int(rng.gen_range(-bound..=bound)), int(rng.gen_range(-bound..=bound))],
            ];
            if !(&p[0][0] * &p[1][1] - &p[0][1] * &p[1][0]).is_zero() {
                return hyperbolic.pullback(&p);
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsotropicLines {
    #[serde(with = "vec2_list")]
    pub lines: Vec<Vec2>,
    /// `(v1, v2)` on the two lines with `b_q(v1, v2) = 1`.
    #[serde(with = "vec2_opt_pair")]
    pub hyperbolic_basis: Option<(Vec2, Vec2)>,
}

mod vec2_list {
    use super::*;
    use exact_linalg::scalar::format;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Vec2], ser: S) -> Result<S::Ok, S::Error> {
        let s: Vec<[String; 2]> = v.iter().map(|x| [format(&x[0]), format(&x[1])]).collect();
        s.serialize(ser)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Vec<Vec2>, D::Error> {
        let s: Vec<[String; 2]> = Deserialize::deserialize(de)?;
        s.iter().map(|p| parse_pair(p).map_err(serde::de::Error::custom)).collect()
    }

    pub(super) fn parse_pair(p: &[String; 2]) -> Result<Vec2, exact_linalg::LinalgError> {
        Ok([exact_linalg::scalar::parse(&p[0])?, exact_linalg::scalar::parse(&p[1])?])
    }
}

mod vec2_opt_pair {
    use super::*;
    use exact_linalg::scalar::format;
    use serde::{Deserializer, Serializer};

    type Text = Option<[[String; 2]; 2]>;

    pub fn serialize<S: Serializer>(v: &Option<(Vec2, Vec2)>, ser: S) -> Result<S::Ok, S::Error> {
        let f = |x: &Vec2| [format(&x[0]), format(&x[1])];
        let t: Text = v.as_ref().map(|(a, b)| [f(a), f(b)]);
        t.serialize(ser)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Option<(Vec2, Vec2)>, D::Error> {
        let t: Text = Deserialize::deserialize(de)?;
        t.map(|[a, b]| {
            Ok((
                super::vec2_list::parse_pair(&a).map_err(serde::de::Error::custom)?,
                super::vec2_list::parse_pair(&b).map_err(serde::de::Error::custom)?,
            ))
        })
        .transpose()
    }
}

/// Rational isotropic lines of a nondegenerate form: none, or two with a hyperbolic basis.
pub fn isotropic_lines(form: &BinaryQuadraticForm) -> Result<IsotropicLines, DemoError> {
    if !form.is_nondegenerate() {
        return Err(DemoError::Degenerate);
    }
    let (a, b, c) = form.coefficients();
    let lines: Vec<Vec2> = if a.is_zero() {
        // q = y (b x + c y)
        vec![[one(), zero()], [-c, b]]
    } else {
        let disc = &b * &b - int(4) * &a * &c;
        match exact_linalg::scalar::sqrt(&disc) {
            None => Vec::new(),
            Some(root) => {
                let two_a = int(2) * &a;
                vec![[-&b + &root, two_a.clone()], [-&b - &root, two_a]]
            }
        }
    };
    let hyperbolic_basis = match lines.as_slice() {
        [v1, v2] => {
            let s = form.polar(v1, v2);
            Some((v1.clone(), [&v2[0] / &s, &v2[1] / &s]))
        }
        _ => None,
    };
    Ok(IsotropicLines { lines, hyperbolic_basis })
}

/// Checks that the hyperbolic basis is unique up to `(v1, v2) -> (s v1, s^-1 v2)` and swap.
///
/// In the basis `(v1, v2)` the form is exactly `xy`, so the isotropic vectors are the two
/// axes and a hyperbolic pair has one vector on each axis with coordinates `s`, `s^-1`.
/// Besides that identity the check confirms the parametrized pairs for a few `s` and
/// searches small integer vectors for isotropic vectors off the two lines.
pub fn hyperbolic_basis_uniqueness_check(form: &BinaryQuadraticForm) -> Result<bool, DemoError> {
    let iso = isotropic_lines(form)?;
    let Some((v1, v2)) = iso.hyperbolic_basis else { return Err(DemoError::Anisotropic) };

    let in_basis = form.pullback(&[[v1[0].clone(), v2[0].clone()], [v1[1].clone(), v2[1].clone()]]);
    let xy = BinaryQuadraticForm::from_coefficients(zero(), one(), zero());
    if in_basis != xy {
        return Ok(false);
    }

    let scaled = |v: &Vec2, s: &Scalar| [&v[0] * s, &v[1] * s];
    for s in [int(1), int(-3), Scalar::new(2.into(), 7.into())] {
        let (u1, u2) = (scaled(&v1, &s), scaled(&v2, &s.recip()));
        if !form.eval(&u1).is_zero() || !form.eval(&u2).is_zero() || !form.polar(&u1, &u2).is_one() {
            return Ok(false);
        }
        // two vectors on one line are never a hyperbolic pair
        if !form.polar(&u1, &scaled(&v1, &int(5))).is_zero() {
            return Ok(false);
        }
    }

    let on_a_line = |u: &Vec2| iso.lines.iter().any(|l| (&u[0] * &l[1] - &u[1] * &l[0]).is_zero());
    for x in -8..=8 {
        for y in -8..=8 {
            let u = [int(x), int(y)];
            if (x, y) != (0, 0) && form.eval(&u).is_zero() && !on_a_line(&u) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        assert!(is_prime(2) && is_prime(5) && !is_prime(1) && !is_prime(9));
    }
}
