//! Similitudes of the cubic norm of the Albert algebra, at the group level (explicit
//! 27x27 maps) and at the Lie-algebra level (derivations, infinitesimal similitudes and
//! their stabilizers).

use std::sync::OnceLock;

use exact_linalg::scalar::{self, int};
use exact_linalg::{ExactMatrix, KernelBasis, KernelSolver, LinalgError, Scalar, Strategy};
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::albert::{self, AlbertElement, AlbertTensors, SparseVector, DIM};
use crate::constants::MOUFANG_PLACEMENT;
use crate::lie::{self, combine, entry, Ambient};
use crate::octonion::{self, Octonion, OctonionSimilitude};
use crate::CalibrationError;

pub use crate::lie::LieSubalgebraReport;

const N: usize = DIM;

fn tensors() -> &'static AlbertTensors {
    static T: OnceLock<AlbertTensors> = OnceLock::new();
    T.get_or_init(AlbertTensors::compute)
}

fn norm_polar_table() -> &'static Vec<Vec<Vec<Scalar>>> {
    static T: OnceLock<Vec<Vec<Vec<Scalar>>>> = OnceLock::new();
    T.get_or_init(|| tensors().norm_polar_dense())
}

/// `e_a o e_b` for all ordered pairs.
fn jordan_table() -> &'static Vec<Vec<SparseVector>> {
    static T: OnceLock<Vec<Vec<SparseVector>>> = OnceLock::new();
    T.get_or_init(|| {
        let mut t = vec![vec![Vec::new(); N]; N];
        for ((a, b), p) in &tensors().jordan {
            t[*a][*b] = p.clone();
            t[*b][*a] = p.clone();
        }
        t
    })
}

/// A linear map of `J` scaling the cubic norm by `multiplier`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanSimilitude {
    pub map: ExactMatrix,
    pub multiplier: Scalar,
}

impl JordanSimilitude {
    pub fn new(map: ExactMatrix) -> Option<Self> {
        let multiplier = is_jordan_similitude(&map)?;
        Some(JordanSimilitude { map, multiplier })
    }

    pub fn apply(&self, x: &AlbertElement) -> AlbertElement {
        albert::apply(&self.map, x)
    }
}

/// Contracts one slot of a dense 27x27x27 tensor with the columns of `f`:
/// `out[..][c] = sum_r t[..][r] f[r][c]` on the last index.
fn contract_last(t: &[Vec<Vec<Scalar>>], f: &[Vec<Scalar>]) -> Vec<Vec<Vec<Scalar>>> {
    t.iter()
        .map(|plane| {
            plane
                .iter()
                .map(|line| {
                    (0..N)
                        .map(|c| {
                            let mut acc = Scalar::zero();
                            for (r, x) in line.iter().enumerate() {
                                if !x.is_zero() && !f[r][c].is_zero() {
                                    acc += x * &f[r][c];
                                }
                            }
                            acc
                        })
                        .collect()
                })
                .collect()
        })
        .collect()
}

/// Rotates indices `[i][j][k] -> [k][i][j]`.
fn rotate(t: &[Vec<Vec<Scalar>>]) -> Vec<Vec<Vec<Scalar>>> {
    (0..N).map(|k| (0..N).map(|i| (0..N).map(|j| t[i][j][k].clone()).collect()).collect()).collect()
}

/// Multiplier `alpha` with `N(map v) = alpha N(v)` identically, if the map is an invertible
/// similitude. The polarized norm of the images is compared on every basis triple.
pub fn is_jordan_similitude(map: &ExactMatrix) -> Option<Scalar> {
    assert_eq!((map.rows(), map.cols()), (N, N));
    if exact_linalg::rank(map) < N {
        return None;
    }
    let f = map.to_dense();
    let base = norm_polar_table();
    // pulled back tensor N3(f e_a, f e_b, f e_c), one index at a time
    let mut t = base.clone();
    for _ in 0..3 {
        t = rotate(&contract_last(&t, &f));
    }
    let mut alpha: Option<Scalar> = None;
    for a in 0..N {
        for b in a..N {
            for c in b..N {
                let lhs = &t[a][b][c];
                let rhs = &base[a][b][c];
                if rhs.is_zero() {
                    if !lhs.is_zero() {
                        return None;
                    }
                    continue;
                }
                let ratio = lhs / rhs;
                match &alpha {
                    None => alpha = Some(ratio),
                    Some(x) if *x == ratio => {}
                    Some(_) => return None,
                }
            }
        }
    }
    alpha.filter(|x| !x.is_zero())
}

/// Three octonion similitudes, one per off-diagonal slot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelatedTripleCandidate {
    pub t: [OctonionSimilitude; 3],
}

impl RelatedTripleCandidate {
    pub fn identity() -> Self {
        RelatedTripleCandidate { t: std::array::from_fn(|_| OctonionSimilitude::identity()) }
    }

    pub fn multipliers(&self) -> [Scalar; 3] {
        std::array::from_fn(|i| self.t[i].multiplier().clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LemmaError {
    #[error("slot {slot}: octonion multiplier {found} differs from the requested {expected}")]
    MultiplierMismatch { slot: usize, expected: String, found: String },
}

/// The block map `d_i -> alpha_i d_i`, `o_i -> t_i(o_i)`.
pub fn block_map(alpha: &[Scalar; 3], maps: [&ExactMatrix; 3]) -> ExactMatrix {
    let mut triples = Vec::new();
    for i in 0..3 {
        if !alpha[i].is_zero() {
            triples.push((i, i, alpha[i].clone()));
        }
        for (r, c, x) in maps[i].triples() {
            triples.push((albert::off_diagonal_index(i, r), albert::off_diagonal_index(i, c), x.clone()));
        }
    }
    ExactMatrix::from_triples(N, N, triples)
}

/// The block similitude of a related triple. Each `t_i` must have multiplier `alpha_i`;
/// the block map is returned when it is a similitude with multiplier `alpha_0 alpha_1 alpha_2`.
pub fn lemma_similitude(
    alpha: &[Scalar; 3],
    triple: &RelatedTripleCandidate,
) -> Result<Option<JordanSimilitude>, LemmaError> {
    for (slot, (a, t)) in alpha.iter().zip(&triple.t).enumerate() {
        if a != t.multiplier() {
            return Err(LemmaError::MultiplierMismatch {
                slot,
                expected: scalar::format(a),
                found: scalar::format(t.multiplier()),
            });
        }
    }
    Ok(block_similitude(alpha, triple))
}

/// The block map for arbitrary diagonal scalars, accepted iff it is a similitude with
/// multiplier `alpha_0 alpha_1 alpha_2`.
pub fn block_similitude(alpha: &[Scalar; 3], triple: &RelatedTripleCandidate) -> Option<JordanSimilitude> {
    let map = block_map(alpha, [triple.t[0].map(), triple.t[1].map(), triple.t[2].map()]);
    let expected = &alpha[0] * &alpha[1] * &alpha[2];
    match is_jordan_similitude(&map) {
        Some(m) if m == expected => Some(JordanSimilitude { map, multiplier: m }),
        _ => None,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MoufangMap {
    /// `z -> u z`
    Left,
    /// `z -> z u`
    Right,
    /// `z -> u z u`
    Sandwich,
}

/// Which Moufang map sits in each slot, and whether that slot uses `conj(u)` in place of `u`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MoufangPlacement {
    pub slots: [MoufangMap; 3],
    pub conjugate_u: [bool; 3],
}

impl MoufangPlacement {
    /// Six orderings of the three maps times the eight conjugation patterns.
    pub fn candidates() -> Vec<MoufangPlacement> {
        use MoufangMap::*;
        let orders = [
            [Sandwich, Left, Right],
            [Sandwich, Right, Left],
            [Left, Sandwich, Right],
            [Right, Sandwich, Left],
            [Left, Right, Sandwich],
            [Right, Left, Sandwich],
        ];
        let mut out = Vec::new();
        for slots in orders {
            for mask in 0..8u8 {
                out.push(MoufangPlacement { slots, conjugate_u: std::array::from_fn(|i| mask & (1 << i) != 0) });
            }
        }
        out
    }
}

fn moufang_map(u: &Octonion, kind: MoufangMap) -> ExactMatrix {
    match kind {
        MoufangMap::Left => u.left_matrix(),
        MoufangMap::Right => u.right_matrix(),
        MoufangMap::Sandwich => octonion::linear_map_matrix(|z| &(u * z) * u),
    }
}

/// The Moufang triple of `u` in the given placement. `None` if `u` is not invertible.
pub fn moufang_triple(u: &Octonion, placement: MoufangPlacement) -> Option<RelatedTripleCandidate> {
    if u.norm().is_zero() {
        return None;
    }
    let bar = u.conj();
    let t = [0, 1, 2].map(|i| {
        let v = if placement.conjugate_u[i] { &bar } else { u };
        OctonionSimilitude::new(moufang_map(v, placement.slots[i]))
    });
    let [Some(t0), Some(t1), Some(t2)] = t else { return None };
    Some(RelatedTripleCandidate { t: [t0, t1, t2] })
}

/// Diagonal scalars making a block map with octonion multipliers `mu` a similitude:
/// the norm term `d_i n(o_i)` forces `alpha_i mu_i = M` and `d0 d1 d2` forces
/// `alpha_0 alpha_1 alpha_2 = M`, so `M^2 = mu_0 mu_1 mu_2`. Both square roots are returned
/// when the product is a rational square.
pub fn compatible_alphas(mu: &[Scalar; 3]) -> Vec<[Scalar; 3]> {
    let prod = &mu[0] * &mu[1] * &mu[2];
    let Some(root) = exact_linalg::scalar::sqrt(&prod) else { return Vec::new() };
    let mut out = Vec::new();
    for m in [root.clone(), -root] {
        if m.is_zero() {
            continue;
        }
        out.push(std::array::from_fn(|i| &m / &mu[i]));
    }
    out
}

/// Fixed test octonions for the slot calibration; their norms are 3 and -5.
fn calibration_octonions() -> [Octonion; 2] {
    [Octonion::from_i64([2, 1, 0, 1, 1, 0, 0, 2]), Octonion::from_i64([1, 0, 2, 1, 1, 1, 2, -1])]
}

/// First placement whose block map, with the compatible diagonal scalars, is a similitude
/// for every calibration octonion.
pub fn calibrate_moufang_slots() -> Result<MoufangPlacement, CalibrationError> {
    let us = calibration_octonions();
    MoufangPlacement::candidates()
        .into_iter()
        .find(|&p| {
            us.iter().all(|u| {
                let Some(triple) = moufang_triple(u, p) else { return false };
                compatible_alphas(&triple.multipliers()).iter().any(|a| block_similitude(a, &triple).is_some())
            })
        })
        .ok_or(CalibrationError::NoCandidate("moufang-slots"))
}

/// The Moufang similitude of `u` in the frozen placement, with the compatible diagonal
/// scalars of positive multiplier.
pub fn moufang_similitude(u: &Octonion) -> Option<(JordanSimilitude, [Scalar; 3])> {
    let triple = moufang_triple(u, MOUFANG_PLACEMENT)?;
    compatible_alphas(&triple.multipliers()).into_iter().find_map(|a| block_similitude(&a, &triple).map(|s| (s, a)))
}

/// The Moufang family in the frozen placement with `alpha_i = mu(t_i)`, that is
/// `alpha = (n(u)^2, n(u), n(u))`, passed through [`lemma_similitude`].
pub fn moufang_literal(u: &Octonion) -> Option<Result<Option<JordanSimilitude>, LemmaError>> {
    let triple = moufang_triple(u, MOUFANG_PLACEMENT)?;
    let n = u.norm();
    let alpha = [&n * &n, n.clone(), n];
    Some(lemma_similitude(&alpha, &triple))
}

/// Linear system of derivations: `D(e_a o e_b) = D(e_a) o e_b + e_a o D(e_b)` for `a <= b`,
/// one equation per output coordinate. Unknown `(k, m)` is entry `D[k][m]`.
pub fn derivation_system() -> ExactMatrix {
    let jt = jordan_table();
    let mut rows = Vec::with_capacity(N * (N + 1) / 2 * N);
    for a in 0..N {
        for b in a..N {
            let mut eqs: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); N];
            // D(e_a o e_b)_k = sum_m (e_a o e_b)_m D[k][m]
            for (m, x) in &jt[a][b] {
                for (k, eq) in eqs.iter_mut().enumerate() {
                    eq.push((entry(N, k, *m), x.clone()));
                }
            }
            // (D e_a) o e_b = sum_m D[m][a] (e_m o e_b)
            for m in 0..N {
                for (k, x) in &jt[m][b] {
                    eqs[*k].push((entry(N, m, a), -x.clone()));
                }
                for (k, x) in &jt[a][m] {
                    eqs[*k].push((entry(N, m, b), -x.clone()));
                }
            }
            rows.extend(eqs);
        }
    }
    ExactMatrix::from_sparse_rows(N * N, rows)
}

/// Linear system of infinitesimal similitudes `(g, lambda)`:
/// `N3(g e_a, e_b, e_c) + N3(e_a, g e_b, e_c) + N3(e_a, e_b, g e_c) = lambda N3(e_a, e_b, e_c)`
/// for `a <= b <= c`, the full polarization of `N3(x, x, g x) / 2 = lambda N(x)`.
pub fn similitude_system() -> ExactMatrix {
    let t = norm_polar_table();
    let mut rows = Vec::with_capacity(3654);
    for a in 0..N {
        for b in a..N {
            for c in b..N {
                let mut eq = Vec::new();
                for m in 0..N {
                    if !t[m][b][c].is_zero() {
                        eq.push((entry(N, m, a), t[m][b][c].clone()));
                    }
                    if !t[a][m][c].is_zero() {
                        eq.push((entry(N, m, b), t[a][m][c].clone()));
                    }
                    if !t[a][b][m].is_zero() {
                        eq.push((entry(N, m, c), t[a][b][m].clone()));
                    }
                }
                if !t[a][b][c].is_zero() {
                    eq.push((lie::multiplier_index(N), -t[a][b][c].clone()));
                }
                rows.push(eq);
            }
        }
    }
    ExactMatrix::from_sparse_rows(N * N + 1, rows)
}

fn pad_multiplier(basis: KernelBasis) -> KernelBasis {
    let vectors = basis
        .vectors
        .into_iter()
        .map(|mut v| {
            v.push(Scalar::zero());
            v
        })
        .collect();
    KernelBasis { ambient_dim: N * N + 1, vectors, ..basis }
}

pub fn derivation_algebra() -> Result<LieSubalgebraReport, LinalgError> {
    derivation_algebra_with(&KernelSolver::default(), Strategy::FractionFree)
}

/// Derivations, embedded in `End(J) + k` with multiplier 0.
pub fn derivation_algebra_with(solver: &KernelSolver, strategy: Strategy) -> Result<LieSubalgebraReport, LinalgError> {
    let basis = solver.kernel(&derivation_system(), strategy)?;
    Ok(LieSubalgebraReport::new("der-j", Ambient::EndJPlusMultiplier, pad_multiplier(basis)))
}

pub fn similitude_algebra() -> Result<LieSubalgebraReport, LinalgError> {
    similitude_algebra_with(&KernelSolver::default(), Strategy::FractionFree)
}

pub fn similitude_algebra_with(solver: &KernelSolver, strategy: Strategy) -> Result<LieSubalgebraReport, LinalgError> {
    let basis = solver.kernel(&similitude_system(), strategy)?;
    Ok(LieSubalgebraReport::new("sim-j", Ambient::EndJPlusMultiplier, basis))
}

/// Columns `0, 1, 2` (the idempotents) may only map into the diagonal.
fn into_diagonal() -> ExactMatrix {
    lie::image_conditions(N, &[(0, vec![0, 1, 2]), (1, vec![0, 1, 2]), (2, vec![0, 1, 2])])
}

/// Each idempotent may only map into its own line.
fn into_own_lines() -> ExactMatrix {
    lie::image_conditions(N, &[(0, vec![0]), (1, vec![1]), (2, vec![2])])
}

#[derive(Clone, Debug)]
pub struct JordanStabilizers {
    /// `{g : g(e_i) in L}` inside the similitude algebra.
    pub stab_l: LieSubalgebraReport,
    /// `{g : g(e_i) in <e_i>}` inside the similitude algebra.
    pub stab_lines: LieSubalgebraReport,
    /// `{D : D(e_i) in L}` inside the derivation algebra.
    pub aut_lv: LieSubalgebraReport,
    /// `{g : g(1) = 0}` inside the similitude algebra.
    pub fix_one: LieSubalgebraReport,
}

impl JordanStabilizers {
    pub fn reports(&self) -> [&LieSubalgebraReport; 4] {
        [&self.stab_l, &self.stab_lines, &self.aut_lv, &self.fix_one]
    }
}

pub fn stabilizer_dimensions(
    solver: &KernelSolver,
    der: &LieSubalgebraReport,
    sim: &LieSubalgebraReport,
) -> Result<JordanStabilizers, LinalgError> {
    let sub = |name: &str, basis: &KernelBasis, cond: &ExactMatrix| -> Result<LieSubalgebraReport, LinalgError> {
        let k = lie::subspace_kernel(solver, basis, cond, Strategy::FractionFree)?;
        Ok(LieSubalgebraReport::new(name, Ambient::EndJPlusMultiplier, k))
    };
    let one = AlbertElement::one().coords();
    Ok(JordanStabilizers {
        stab_l: sub("stab-l", &sim.basis, &into_diagonal())?,
        stab_lines: sub("stab-lines", &sim.basis, &into_own_lines())?,
        aut_lv: sub("aut-lv", &der.basis, &into_diagonal())?,
        fix_one: sub("fix-one", &sim.basis, &lie::annihilator_conditions(N, &one))?,
    })
}

/// `span{1, x, x o x}` with a basis extracted in that order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicSubalgebra {
    pub basis: Vec<AlbertElement>,
    pub dimension: usize,
    pub regular: bool,
}

pub fn cubic_subalgebra_from_regular(x: &AlbertElement) -> CubicSubalgebra {
    let mut basis: Vec<AlbertElement> = Vec::new();
    let mut coords: Vec<Vec<Scalar>> = Vec::new();
    for p in [AlbertElement::one(), x.clone(), x.square()] {
        let mut trial = coords.clone();
        trial.push(p.coords());
        if exact_linalg::span_rank(&trial) > coords.len() {
            coords = trial;
            basis.push(p);
        }
    }
    let dimension = basis.len();
    CubicSubalgebra { basis, dimension, regular: dimension == 3 }
}

/// `N3(D x, x, x)` for a linear map `D`.
pub fn norm_derivative(map: &ExactMatrix, x: &AlbertElement) -> Scalar {
    let dx = albert::apply(map, x);
    AlbertElement::norm_polar(&dx, x, x)
}

/// `lambda` times the identity as a flat vector.
pub fn scalar_element(lambda: i64) -> Vec<Scalar> {
    lie::flatten(&ExactMatrix::identity(N), int(lambda))
}

/// True iff every vector of `sub` lies in the span of `sup` (both flat).
pub fn contains(sup: &LieSubalgebraReport, sub: &[Vec<Scalar>]) -> bool {
    exact_linalg::span_contains(sup.vectors(), sub)
}

/// Two reports span the same subspace.
pub fn same_subspace(a: &LieSubalgebraReport, b: &LieSubalgebraReport) -> bool {
    a.dimension == b.dimension && contains(a, b.vectors())
}

/// A random element of a reported subalgebra (small integer combination of its basis).
pub fn random_element<R: rand::Rng>(rng: &mut R, report: &LieSubalgebraReport) -> Vec<Scalar> {
    let c: Vec<Scalar> = (0..report.dimension).map(|_| int(rng.gen_range(-3..=3))).collect();
    combine(report.vectors(), &c)
}

/// Permutation of the diagonal blocks `(0 1 2) -> (1 2 0)`; the off-diagonal slots follow.
pub fn cyclic_block_permutation() -> ExactMatrix {
    albert::linear_map_matrix(|x| {
        AlbertElement::new(
            [x.d[2].clone(), x.d[0].clone(), x.d[1].clone()],
            [x.o[2].clone(), x.o[0].clone(), x.o[1].clone()],
        )
    })
}

/// The unit of `J` is sent to the diagonal element with entries `alpha`.
pub fn image_of_one(s: &JordanSimilitude) -> AlbertElement {
    s.apply(&AlbertElement::one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use exact_linalg::scalar::frac;

    #[test]
    fn scalar_maps_are_similitudes() {
        assert_eq!(is_jordan_similitude(&ExactMatrix::identity(N)), Some(int(1)));
        let l = frac(2, 3);
        let m = albert::linear_map_matrix(|x| x.scale(&l));
        assert_eq!(is_jordan_similitude(&m), Some(&l * &l * &l));
        assert_eq!(is_jordan_similitude(&cyclic_block_permutation()), Some(int(1)));
        let mut squash = ExactMatrix::identity(N).to_dense();
        squash[0][0] = int(2);
        assert_eq!(is_jordan_similitude(&ExactMatrix::from_dense(N, &squash)), None);
    }

    #[test]
    fn identity_triple() {
        let s = lemma_similitude(&[int(1), int(1), int(1)], &RelatedTripleCandidate::identity()).unwrap().unwrap();
        assert_eq!(s.map, ExactMatrix::identity(N));
        assert_eq!(s.multiplier, int(1));
        let err = lemma_similitude(&[int(2), int(1), int(1)], &RelatedTripleCandidate::identity());
        assert!(matches!(err, Err(LemmaError::MultiplierMismatch { slot: 0, .. })));
    }

    #[test]
    fn frozen_moufang_placement() {
        assert_eq!(calibrate_moufang_slots().unwrap(), MOUFANG_PLACEMENT);
    }

    #[test]
    fn cubic_subalgebras() {
        assert_eq!(cubic_subalgebra_from_regular(&AlbertElement::diag_i64([0, 1, 2])).dimension, 3);
        assert!(cubic_subalgebra_from_regular(&AlbertElement::diag_i64([0, 1, 2])).regular);
        assert_eq!(cubic_subalgebra_from_regular(&AlbertElement::one()).dimension, 1);
        assert_eq!(cubic_subalgebra_from_regular(&AlbertElement::idempotent(0)).dimension, 2);
    }
}
