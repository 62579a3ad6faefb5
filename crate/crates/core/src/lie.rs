//! Linear Lie algebras of pairs `(g, lambda)`, stored as flat coordinate vectors:
//! entry `(k, m)` of the `n x n` matrix `g` sits at index `k * n + m` and the
//! multiplier `lambda` at index `n * n`.

use exact_linalg::{Certification, ExactMatrix, KernelBasis, KernelSolver, LinalgError, Scalar, Strategy};
use num_traits::Zero;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Ambient {
    /// `End(J) + k`, 730 coordinates.
    EndJPlusMultiplier,
    /// `End(B) + k`, 3137 coordinates.
    EndBPlusMultiplier,
}

impl Ambient {
    /// Side of the square matrix part.
    pub fn side(self) -> usize {
        match self {
            Ambient::EndJPlusMultiplier => 27,
            Ambient::EndBPlusMultiplier => 56,
        }
    }

    pub fn dim(self) -> usize {
        self.side() * self.side() + 1
    }
}

pub fn entry(n: usize, k: usize, m: usize) -> usize {
    k * n + m
}

pub fn multiplier_index(n: usize) -> usize {
    n * n
}

/// The matrix part of a flat vector.
pub fn matrix_of(n: usize, v: &[Scalar]) -> ExactMatrix {
    let triples =
        v[..n * n].iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i / n, i % n, x.clone())).collect();
    ExactMatrix::from_triples(n, n, triples)
}

/// Flat vector of `(map, lambda)`.
pub fn flatten(map: &ExactMatrix, lambda: Scalar) -> Vec<Scalar> {
    let n = map.rows();
    let mut v = vec![Scalar::zero(); n * n + 1];
    for (i, j, x) in map.triples() {
        v[entry(n, i, j)] = x.clone();
    }
    v[n * n] = lambda;
    v
}

#[derive(Clone, Debug)]
pub struct LieSubalgebraReport {
    pub name: String,
    pub ambient: Ambient,
    pub basis: KernelBasis,
    pub dimension: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LieSubalgebraJson {
    pub name: String,
    pub ambient: Ambient,
    pub dimension: usize,
    pub certification: Certification,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<Vec<(usize, String)>>>,
}

impl LieSubalgebraReport {
    pub fn new(name: impl Into<String>, ambient: Ambient, basis: KernelBasis) -> Self {
        assert_eq!(basis.ambient_dim, ambient.dim());
        LieSubalgebraReport { name: name.into(), ambient, dimension: basis.dim(), basis }
    }

    pub fn vectors(&self) -> &[Vec<Scalar>] {
        &self.basis.vectors
    }

    pub fn is_exactly_verified(&self) -> bool {
        self.basis.is_exactly_verified()
    }

    /// `(g, lambda)` of basis element `i`.
    pub fn element(&self, i: usize) -> (ExactMatrix, Scalar) {
        let n = self.ambient.side();
        let v = &self.basis.vectors[i];
        (matrix_of(n, v), v[n * n].clone())
    }

    pub fn to_json(&self, with_basis: bool) -> LieSubalgebraJson {
        let basis = with_basis.then(|| {
            self.basis
                .vectors
                .iter()
                .map(|v| {
                    v.iter()
                        .enumerate()
                        .filter(|(_, x)| !x.is_zero())
                        .map(|(i, x)| (i, exact_linalg::scalar::format(x)))
                        .collect()
                })
                .collect()
        });
        LieSubalgebraJson {
            name: self.name.clone(),
            ambient: self.ambient,
            dimension: self.dimension,
            certification: self.basis.certification.clone(),
            basis,
        }
    }
}

/// The subspace of `span(basis)` cut out by `conditions`, expressed in ambient coordinates.
/// Conditions are rows over the ambient coordinates.
pub fn subspace_kernel(
    solver: &KernelSolver,
    basis: &KernelBasis,
    conditions: &ExactMatrix,
    strategy: Strategy,
) -> Result<KernelBasis, LinalgError> {
    let restricted = conditions.restrict_to(&basis.vectors);
    let coeffs = if restricted.rows() == 0 {
        (0..basis.dim())
            .map(|k| {
                let mut v = vec![Scalar::zero(); basis.dim()];
                v[k] = num_traits::One::one();
                v
            })
            .collect()
    } else {
        solver.kernel(&restricted, strategy)?.vectors
    };
    let vectors: Vec<Vec<Scalar>> = coeffs.iter().map(|c| combine(&basis.vectors, c)).collect();
    let verified = basis.is_exactly_verified() && vectors.iter().all(|v| conditions.annihilates(v));
    Ok(KernelBasis {
        ambient_dim: basis.ambient_dim,
        vectors,
        certification: if verified {
            Certification::ExactlyVerified
        } else {
            Certification::ModularOnly(basis.primes.clone())
        },
        primes: basis.primes.clone(),
        discarded_primes: basis.discarded_primes.clone(),
    })
}

/// `sum_k c_k basis[k]`.
pub fn combine(basis: &[Vec<Scalar>], c: &[Scalar]) -> Vec<Scalar> {
    let n = basis.first().map_or(0, Vec::len);
    let mut out = vec![Scalar::zero(); n];
    for (b, ck) in basis.iter().zip(c) {
        if ck.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(b) {
            if !x.is_zero() {
                *o += ck * x;
            }
        }
    }
    out
}

/// Conditions `g(e_i)` has no component outside `allowed`, for each source column `i`.
pub fn image_conditions(n: usize, sources: &[(usize, Vec<usize>)]) -> ExactMatrix {
    let mut rows = Vec::new();
    for (i, allowed) in sources {
        for k in (0..n).filter(|k| !allowed.contains(k)) {
            rows.push(vec![(entry(n, k, *i), exact_linalg::scalar::one())]);
        }
    }
    ExactMatrix::from_sparse_rows(n * n + 1, rows)
}

/// Conditions `g(v) = 0` for a fixed vector `v`.
pub fn annihilator_conditions(n: usize, v: &[Scalar]) -> ExactMatrix {
    let rows = (0..n)
        .map(|k| v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(m, x)| (entry(n, k, m), x.clone())).collect())
        .collect();
    ExactMatrix::from_sparse_rows(n * n + 1, rows)
}
