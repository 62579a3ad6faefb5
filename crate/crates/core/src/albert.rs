//! The split Albert algebra of 3x3 hermitian matrices over the split octonions.
//!
//! An element `(d, o)` stands for
//!
//! ```text
//! [ d0        o2        conj(o1) ]
//! [ conj(o2)  d1        o0       ]
//! [ o1        conj(o0)  d2       ]
//! ```
//!
//! Coordinates are ordered `d0, d1, d2, o0[0..8], o1[0..8], o2[0..8]`.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use exact_linalg::scalar::{self, frac, int};
use exact_linalg::{ExactMatrix, KernelBasis, Scalar, Strategy};
use num_traits::Zero;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::octonion::Octonion;

pub const DIM: usize = 27;

/// Coordinate index of octonion coordinate `k` in off-diagonal slot `slot`.
pub const fn off_diagonal_index(slot: usize, k: usize) -> usize {
    3 + 8 * slot + k
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AlbertElement {
    #[serde(with = "diag_serde")]
    pub d: [Scalar; 3],
    pub o: [Octonion; 3],
}

mod diag_serde {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(d: &[Scalar; 3], ser: S) -> Result<S::Ok, S::Error> {
        scalar::serde_scalar_vec::serialize(d, ser)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<[Scalar; 3], D::Error> {
        let v = scalar::serde_scalar_vec::deserialize(de)?;
        v.try_into().map_err(|_| serde::de::Error::custom("diagonal needs 3 entries"))
    }
}

impl AlbertElement {
    pub fn new(d: [Scalar; 3], o: [Octonion; 3]) -> Self {
        AlbertElement { d, o }
    }

    pub fn zero() -> Self {
        AlbertElement::diag([scalar::zero(), scalar::zero(), scalar::zero()])
    }

    pub fn one() -> Self {
        AlbertElement::diag([scalar::one(), scalar::one(), scalar::one()])
    }

    pub fn diag(d: [Scalar; 3]) -> Self {
        AlbertElement::new(d, [Octonion::zero(), Octonion::zero(), Octonion::zero()])
    }

    pub fn diag_i64(d: [i64; 3]) -> Self {
        AlbertElement::diag(d.map(int))
    }

    /// The diagonal primitive idempotent `e_i` (0-based).
    pub fn idempotent(i: usize) -> Self {
        let mut d = [scalar::zero(), scalar::zero(), scalar::zero()];
        d[i] = scalar::one();
        AlbertElement::diag(d)
    }

    pub fn from_coords(c: &[Scalar]) -> Self {
        assert_eq!(c.len(), DIM);
        AlbertElement::new(
            [c[0].clone(), c[1].clone(), c[2].clone()],
            std::array::from_fn(|s| Octonion::from_coords(&c[off_diagonal_index(s, 0)..off_diagonal_index(s, 8)])),
        )
    }

    pub fn coords(&self) -> Vec<Scalar> {
        let mut out: Vec<Scalar> = self.d.to_vec();
        for o in &self.o {
            out.extend(o.coords());
        }
        out
    }

    pub fn basis(k: usize) -> Self {
        let mut c = vec![scalar::zero(); DIM];
        c[k] = scalar::one();
        AlbertElement::from_coords(&c)
    }

    pub fn is_zero(&self) -> bool {
        self.d.iter().all(Zero::is_zero) && self.o.iter().all(Octonion::is_zero)
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        AlbertElement::new(self.d.clone().map(|x| x * s), self.o.clone().map(|o| o.scale(s)))
    }

    /// Entry `(i, j)` of the hermitian matrix.
    fn entry(&self, i: usize, j: usize) -> Octonion {
        match (i, j) {
            (i, j) if i == j => Octonion::scalar(self.d[i].clone()),
            (0, 1) => self.o[2].clone(),
            (1, 0) => self.o[2].conj(),
            (1, 2) => self.o[0].clone(),
            (2, 1) => self.o[0].conj(),
            (2, 0) => self.o[1].clone(),
            (0, 2) => self.o[1].conj(),
            _ => unreachable!(),
        }
    }

    /// Entry `(i, j)` of `xy + yx` as octonion matrices.
    fn symmetrized_entry(x: &AlbertElement, y: &AlbertElement, i: usize, j: usize) -> Octonion {
        let mut acc = Octonion::zero();
        for k in 0..3 {
            acc = &acc + &(&x.entry(i, k) * &y.entry(k, j));
            acc = &acc + &(&y.entry(i, k) * &x.entry(k, j));
        }
        acc
    }

    /// `x o y = (xy + yx) / 2`.
    pub fn jordan(&self, other: &AlbertElement) -> AlbertElement {
        let half = frac(1, 2);
        let d = std::array::from_fn(|i| {
            Self::symmetrized_entry(self, other, i, i)
                .as_scalar()
                .expect("diagonal of a symmetrized hermitian product is real")
                * &half
        });
        let o = [(1, 2), (2, 0), (0, 1)].map(|(i, j)| Self::symmetrized_entry(self, other, i, j).scale(&half));
        AlbertElement::new(d, o)
    }

    pub fn square(&self) -> AlbertElement {
        self.jordan(self)
    }

    /// `x o (x o x)`.
    pub fn cube(&self) -> AlbertElement {
        self.jordan(&self.square())
    }

    pub fn trace(&self) -> Scalar {
        &self.d[0] + &self.d[1] + &self.d[2]
    }

    pub fn trace_form(&self, other: &AlbertElement) -> Scalar {
        self.jordan(other).trace()
    }

    /// Quadratic trace `S(x) = (t(x)^2 - t(x^2)) / 2`.
    pub fn quadratic_trace(&self) -> Scalar {
        let t = self.trace();
        (&t * &t - self.square().trace()) * frac(1, 2)
    }

    /// Cubic norm from the power traces: `N = (t1^3 - 3 t1 t2 + 2 t3) / 6`.
    pub fn norm(&self) -> Scalar {
        let sq = self.square();
        let t1 = self.trace();
        let t2 = sq.trace();
        let t3 = self.jordan(&sq).trace();
        (&t1 * &t1 * &t1 - int(3) * &t1 * &t2 + int(2) * t3) * frac(1, 6)
    }

    /// Full polarization of the norm: the coefficient of `l1 l2 l3` in `N(l1 x + l2 y + l3 z)`.
    /// `N` is a cubic form, so inclusion-exclusion over the sums extracts that coefficient.
    pub fn norm_polar(x: &AlbertElement, y: &AlbertElement, z: &AlbertElement) -> Scalar {
        let xy = x + y;
        (&xy + z).norm() - xy.norm() - (x + z).norm() - (y + z).norm() + x.norm() + y.norm() + z.norm()
    }

    /// `x# = x^2 - t(x) x + S(x) 1`.
    pub fn adjoint(&self) -> AlbertElement {
        let sq = self.square();
        let t = self.trace();
        let s = (&t * &t - sq.trace()) * frac(1, 2);
        &(&sq - &self.scale(&t)) + &AlbertElement::one().scale(&s)
    }

    /// Freudenthal cross product, the polarization `(x + y)# - x# - y#`.
    pub fn cross(&self, other: &AlbertElement) -> AlbertElement {
        &(&(self + other).adjoint() - &self.adjoint()) - &other.adjoint()
    }

    pub fn is_rank_one(&self) -> bool {
        !self.is_zero() && self.cross(self).is_zero()
    }

    pub fn random<R: Rng>(rng: &mut R, bound: i64) -> AlbertElement {
        AlbertElement::new(
            std::array::from_fn(|_| int(rng.gen_range(-bound..=bound))),
            std::array::from_fn(|_| Octonion::random(rng, bound)),
        )
    }
}

impl Add for &AlbertElement {
    type Output = AlbertElement;
    fn add(self, rhs: &AlbertElement) -> AlbertElement {
        AlbertElement::new(
            std::array::from_fn(|i| &self.d[i] + &rhs.d[i]),
            std::array::from_fn(|i| &self.o[i] + &rhs.o[i]),
        )
    }
}

impl Sub for &AlbertElement {
    type Output = AlbertElement;
    fn sub(self, rhs: &AlbertElement) -> AlbertElement {
        self + &(-rhs)
    }
}

impl Neg for &AlbertElement {
    type Output = AlbertElement;
    fn neg(self) -> AlbertElement {
        self.scale(&int(-1))
    }
}

impl fmt::Display for AlbertElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "diag({}, {}, {}); {}, {}, {}", self.d[0], self.d[1], self.d[2], self.o[0], self.o[1], self.o[2])
    }
}

/// Matrix (acting on coordinate columns) of a linear endomorphism given pointwise.
pub fn linear_map_matrix(f: impl Fn(&AlbertElement) -> AlbertElement) -> ExactMatrix {
    let mut triples = Vec::new();
    for j in 0..DIM {
        for (i, x) in f(&AlbertElement::basis(j)).coords().into_iter().enumerate() {
            if !x.is_zero() {
                triples.push((i, j, x));
            }
        }
    }
    ExactMatrix::from_triples(DIM, DIM, triples)
}

pub fn apply(map: &ExactMatrix, x: &AlbertElement) -> AlbertElement {
    AlbertElement::from_coords(&map.mul_vec(&x.coords()))
}

/// The diagonal subalgebra `L = span{e1, e2, e3}`.
#[derive(Clone, Debug)]
pub struct DiagonalSubalgebra {
    pub idempotents: [AlbertElement; 3],
}

impl Default for DiagonalSubalgebra {
    fn default() -> Self {
        DiagonalSubalgebra { idempotents: std::array::from_fn(AlbertElement::idempotent) }
    }
}

impl DiagonalSubalgebra {
    pub fn contains(&self, x: &AlbertElement) -> bool {
        x.o.iter().all(Octonion::is_zero)
    }

    /// Trace-form orthogonal complement `V` of `L`, so that `J = L + V`.
    pub fn springer_complement(&self) -> KernelBasis {
        let rows: Vec<Vec<Scalar>> = self
            .idempotents
            .iter()
            .map(|e| (0..DIM).map(|k| e.trace_form(&AlbertElement::basis(k))).collect())
            .collect();
        exact_linalg::kernel(&ExactMatrix::from_dense(DIM, &rows), Strategy::FractionFree)
            .expect("3x27 system is nonempty")
    }
}

pub fn springer_complement() -> KernelBasis {
    DiagonalSubalgebra::default().springer_complement()
}

/// Coordinates of a vector as `(index, value)` pairs, nonzero only.
pub type SparseVector = Vec<(usize, Scalar)>;

/// Sparse structure tensors of the Albert algebra in the coordinate basis.
#[derive(Clone, Debug)]
pub struct AlbertTensors {
    /// `e_a o e_b` for `a <= b`, as sparse coordinate lists.
    pub jordan: Vec<((usize, usize), SparseVector)>,
    /// Gram matrix of the trace form.
    pub trace_gram: Vec<Vec<Scalar>>,
    /// `e_a x e_b` for `a <= b`.
    pub cross: Vec<((usize, usize), SparseVector)>,
    /// Nonzero values of the polarized norm on basis triples `a <= b <= c`.
    pub norm_polar: Vec<((usize, usize, usize), Scalar)>,
}

fn sparse(x: &AlbertElement) -> Vec<(usize, Scalar)> {
    x.coords().into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect()
}

impl AlbertTensors {
    pub fn compute() -> Self {
        let basis: Vec<AlbertElement> = (0..DIM).map(AlbertElement::basis).collect();
        let mut jordan = Vec::new();
        let mut cross = Vec::new();
        let mut cross_dense: Vec<Vec<Vec<Scalar>>> = vec![vec![Vec::new(); DIM]; DIM];
        for a in 0..DIM {
            for b in a..DIM {
                let p = basis[a].jordan(&basis[b]);
                let s = sparse(&p);
                if !s.is_empty() {
                    jordan.push(((a, b), s));
                }
                let c = basis[a].cross(&basis[b]);
                let cs = sparse(&c);
                if !cs.is_empty() {
                    cross.push(((a, b), cs));
                }
                let cc = c.coords();
                cross_dense[b][a] = cc.clone();
                cross_dense[a][b] = cc;
            }
        }
        let trace_gram: Vec<Vec<Scalar>> =
            (0..DIM).map(|a| (0..DIM).map(|b| basis[a].trace_form(&basis[b])).collect()).collect();
        // N3(x, y, z) = T(x cross y, z); the expansion route is cross-checked in tests.
        let mut norm_polar = Vec::new();
        for a in 0..DIM {
            for b in a..DIM {
                let c_ab = &cross_dense[a][b];
                for c in b..DIM {
                    let mut v = scalar::zero();
                    for (k, x) in c_ab.iter().enumerate() {
                        if !x.is_zero() && !trace_gram[k][c].is_zero() {
                            v += x * &trace_gram[k][c];
                        }
                    }
                    if !v.is_zero() {
                        norm_polar.push(((a, b, c), v));
                    }
                }
            }
        }
        AlbertTensors { jordan, trace_gram, cross, norm_polar }
    }

    /// Dense lookup table of the polarized norm over all ordered triples.
    pub fn norm_polar_dense(&self) -> Vec<Vec<Vec<Scalar>>> {
        let mut t = vec![vec![vec![scalar::zero(); DIM]; DIM]; DIM];
        for ((a, b, c), v) in &self.norm_polar {
            for (i, j, k) in [(a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)] {
                t[*i][*j][*k] = v.clone();
            }
        }
        t
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(i: usize) -> AlbertElement {
        AlbertElement::idempotent(i)
    }

    #[test]
    fn idempotents_are_orthogonal() {
        for i in 0..3 {
            assert_eq!(e(i).jordan(&e(i)), e(i));
            for j in 0..3 {
                if i != j {
                    assert!(e(i).jordan(&e(j)).is_zero());
                }
            }
        }
        assert_eq!(&(&e(0) + &e(1)) + &e(2), AlbertElement::one());
    }

    #[test]
    fn norm_examples() {
        assert_eq!(AlbertElement::diag_i64([2, 3, 5]).norm(), int(30));
        assert_eq!(AlbertElement::one().norm(), int(1));
        assert_eq!(AlbertElement::diag_i64([1, 1, 0]).norm(), int(0));
        let x = AlbertElement::diag_i64([2, 3, 5]);
        assert_eq!(x.trace(), int(10));
        assert_eq!(x.square().trace(), int(38));
        assert_eq!(x.cube().trace(), int(160));
    }

    #[test]
    fn polarized_norm_examples() {
        assert_eq!(AlbertElement::norm_polar(&e(0), &e(1), &e(2)), int(1));
        assert_eq!(AlbertElement::norm_polar(&e(0), &e(0), &e(1)), int(0));
        let x = AlbertElement::new(
            [int(1), int(-2), int(3)],
            [
                Octonion::from_i64([1, 0, 2, 0, -1, 0, 1, 1]),
                Octonion::from_i64([0, 1, 0, 0, 2, 0, 0, 3]),
                Octonion::zero(),
            ],
        );
        assert_eq!(AlbertElement::norm_polar(&x, &x, &x), int(6) * x.norm());
    }

    #[test]
    fn adjoint_examples() {
        assert!(e(0).adjoint().is_zero());
        assert!(e(0).is_rank_one());
        assert_eq!(AlbertElement::one().adjoint(), AlbertElement::one());
        assert!(!AlbertElement::one().is_rank_one());
        assert!(!AlbertElement::zero().is_rank_one());
    }

    #[test]
    fn springer_complement_is_off_diagonal() {
        let v = springer_complement();
        assert_eq!(v.dim(), 24);
        for vec in &v.vectors {
            let x = AlbertElement::from_coords(vec);
            for i in 0..3 {
                assert!(e(i).trace_form(&x).is_zero());
            }
        }
        // every off-diagonal coordinate vector lies in V: the basis is exactly those vectors
        let expected: Vec<Vec<Scalar>> = (3..DIM).map(|k| AlbertElement::basis(k).coords()).collect();
        assert_eq!(v.vectors, expected);
    }

    #[test]
    fn serde_form() {
        let x = AlbertElement::diag_i64([1, 2, 3]);
        let text = serde_json::to_string(&x).unwrap();
        assert!(text.starts_with(r#"{"d":["1/1","2/1","3/1"],"o":[["#));
        assert_eq!(serde_json::from_str::<AlbertElement>(&text).unwrap(), x);
    }
}
