//! The split Brown algebra: 2x2 matrices `[[alpha, j], [jp, beta]]` with scalar diagonal and
//! Albert off-diagonal entries, as a Freudenthal triple system `(B, t, b)`.
//!
//! Coordinates: `alpha`, `beta`, the 27 coordinates of `j`, then the 27 of `jp`.
//! The quartic form is the family
//! `q = c1 (alpha beta - T(j, jp))^2 + c2 (alpha N(j) + beta N(jp)) + c4 T(j#, jp#)`,
//! `q4` its full polarization (`q4(x, x, x, x) = 24 q(x)`) and `t` is defined by
//! `b(t(x, y, z), w) = q4(x, y, z, w)`.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::OnceLock;

use exact_linalg::scalar::{self, int};
use exact_linalg::{ExactMatrix, KernelBasis, KernelSolver, LinalgError, Scalar, Strategy};
use num_traits::Zero;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::albert::{self, AlbertElement, AlbertTensors};
use crate::lie::{self, entry, Ambient, LieSubalgebraReport};
use crate::poly::Poly;
use crate::CalibrationError;

pub const DIM: usize = 56;
pub const ALPHA: usize = 0;
pub const BETA: usize = 1;
/// First coordinate of `j`.
pub const J: usize = 2;
/// First coordinate of `jp`.
pub const JP: usize = 2 + albert::DIM;

const N: usize = DIM;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BrownElement {
    #[serde(with = "scalar::serde_scalar")]
    pub alpha: Scalar,
    #[serde(with = "scalar::serde_scalar")]
    pub beta: Scalar,
    pub j: AlbertElement,
    pub jp: AlbertElement,
}

impl BrownElement {
    pub fn new(alpha: Scalar, beta: Scalar, j: AlbertElement, jp: AlbertElement) -> Self {
        BrownElement { alpha, beta, j, jp }
    }

    pub fn zero() -> Self {
        BrownElement::new(scalar::zero(), scalar::zero(), AlbertElement::zero(), AlbertElement::zero())
    }

    /// `[[1, 0], [0, 0]]`
    pub fn e1() -> Self {
        BrownElement::basis(ALPHA)
    }

    /// `[[0, 0], [0, 1]]`
    pub fn e2() -> Self {
        BrownElement::basis(BETA)
    }

    pub fn one() -> Self {
        &BrownElement::e1() + &BrownElement::e2()
    }

    pub fn basis(k: usize) -> Self {
        let mut c = vec![scalar::zero(); N];
        c[k] = scalar::one();
        BrownElement::from_coords(&c)
    }

    pub fn from_coords(c: &[Scalar]) -> Self {
        assert_eq!(c.len(), N);
        BrownElement::new(
            c[ALPHA].clone(),
            c[BETA].clone(),
            AlbertElement::from_coords(&c[J..JP]),
            AlbertElement::from_coords(&c[JP..]),
        )
    }

    pub fn coords(&self) -> Vec<Scalar> {
        let mut out = vec![self.alpha.clone(), self.beta.clone()];
        out.extend(self.j.coords());
        out.extend(self.jp.coords());
        out
    }

    pub fn is_zero(&self) -> bool {
        self.alpha.is_zero() && self.beta.is_zero() && self.j.is_zero() && self.jp.is_zero()
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        BrownElement::new(&self.alpha * s, &self.beta * s, self.j.scale(s), self.jp.scale(s))
    }

    pub fn random<R: Rng>(rng: &mut R, bound: i64) -> Self {
        BrownElement::new(
            int(rng.gen_range(-bound..=bound)),
            int(rng.gen_range(-bound..=bound)),
            AlbertElement::random(rng, bound),
            AlbertElement::random(rng, bound),
        )
    }
}

impl Add for &BrownElement {
    type Output = BrownElement;
    fn add(self, rhs: &BrownElement) -> BrownElement {
        BrownElement::new(&self.alpha + &rhs.alpha, &self.beta + &rhs.beta, &self.j + &rhs.j, &self.jp + &rhs.jp)
    }
}

impl Sub for &BrownElement {
    type Output = BrownElement;
    fn sub(self, rhs: &BrownElement) -> BrownElement {
        self + &(-rhs)
    }
}

impl Neg for &BrownElement {
    type Output = BrownElement;
    fn neg(self) -> BrownElement {
        self.scale(&int(-1))
    }
}

impl fmt::Display for BrownElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, ({})], [({}), {}]]", self.alpha, self.j, self.jp, self.beta)
    }
}

fn albert_tensors() -> &'static AlbertTensors {
    static T: OnceLock<AlbertTensors> = OnceLock::new();
    T.get_or_init(AlbertTensors::compute)
}

/// Gram matrix of `b` without the sign flag:
/// `alpha_x beta_y - beta_x alpha_y + T(j_x, jp_y) - T(j_y, jp_x)`.
pub fn skew_gram(b_sign: i64) -> ExactMatrix {
    let s = int(b_sign);
    let gram = &albert_tensors().trace_gram;
    let mut triples = vec![(ALPHA, BETA, s.clone()), (BETA, ALPHA, -s.clone())];
    for (a, row) in gram.iter().enumerate() {
        for (c, x) in row.iter().enumerate() {
            if !x.is_zero() {
                triples.push((J + a, JP + c, x * &s));
                triples.push((JP + c, J + a, -(x * &s)));
            }
        }
    }
    ExactMatrix::from_triples(N, N, triples)
}

/// The three quartic building blocks as polynomials in the 56 coordinates.
#[derive(Clone, Debug)]
pub struct QuarticParts {
    /// `(alpha beta - T(j, jp))^2`
    pub square: Poly,
    /// `alpha N(j) + beta N(jp)`
    pub norms: Poly,
    /// `T(j#, jp#)`
    pub adjoints: Poly,
}

fn cubic_norm_poly(offset: usize) -> Poly {
    let mut p = Poly::zero();
    for ((a, b, c), v) in &albert_tensors().norm_polar {
        // N(x) = N3(x, x, x) / 6; a monomial with k distinct orderings gets N3 * k / 6
        let orderings = match (a == b, b == c) {
            (true, true) => 1,
            (true, false) | (false, true) => 3,
            (false, false) => 6,
        };
        let mono = vec![(offset + a) as u16, (offset + b) as u16, (offset + c) as u16];
        p.add_term(mono, v * scalar::frac(orderings, 6));
    }
    p
}

/// Components of `x#` as quadratic polynomials, `x# = (x cross x) / 2`.
fn adjoint_polys(offset: usize) -> Vec<Poly> {
    let mut out = vec![Poly::zero(); albert::DIM];
    for ((a, b), v) in &albert_tensors().cross {
        let weight = if a == b { scalar::frac(1, 2) } else { scalar::one() };
        for (k, x) in v {
            out[*k].add_term(vec![(offset + a) as u16, (offset + b) as u16], x * &weight);
        }
    }
    out
}

pub fn quartic_parts() -> &'static QuarticParts {
    static Q: OnceLock<QuarticParts> = OnceLock::new();
    Q.get_or_init(|| {
        let gram = &albert_tensors().trace_gram;
        let mut pairing = &Poly::var(ALPHA) * &Poly::var(BETA);
        for (a, row) in gram.iter().enumerate() {
            for (c, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    pairing.add_term(vec![(J + a) as u16, (JP + c) as u16], -x.clone());
                }
            }
        }
        let square = &pairing * &pairing;
        let norms = &(&Poly::var(ALPHA) * &cubic_norm_poly(J)) + &(&Poly::var(BETA) * &cubic_norm_poly(JP));
        let (aj, ajp) = (adjoint_polys(J), adjoint_polys(JP));
        let mut adjoints = Poly::zero();
        for (k, row) in gram.iter().enumerate() {
            for (l, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    adjoints = &adjoints + &(&aj[k] * &ajp[l]).scale(x);
                }
            }
        }
        QuarticParts { square, norms, adjoints }
    })
}

/// `c1 square + c2 norms + c4 adjoints`.
pub fn quartic_poly(coeffs: &[Scalar; 3]) -> Poly {
    let q = quartic_parts();
    &(&q.square.scale(&coeffs[0]) + &q.norms.scale(&coeffs[1])) + &q.adjoints.scale(&coeffs[2])
}

/// Sparse symmetric trilinear map `B^3 -> B`, stored on sorted basis triples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TTensor {
    entries: BTreeMap<[u16; 3], Vec<(u16, Scalar)>>,
}

fn sorted3(mut t: [u16; 3]) -> [u16; 3] {
    t.sort_unstable();
    t
}

impl TTensor {
    /// `t = (Omega^T)^{-1} q4(x, y, z, .)` for a homogeneous quartic `q` and Gram matrix `omega`.
    pub fn from_quartic(q: &Poly, omega: &ExactMatrix) -> TTensor {
        assert!(q.is_homogeneous(4));
        let inv = omega.transpose().inverse().expect("skew form is nondegenerate");
        // column w of the inverse, as sparse (k, value)
        let mut cols: Vec<Vec<(u16, Scalar)>> = vec![Vec::new(); N];
        for (k, w, x) in inv.triples() {
            cols[w].push((k as u16, x.clone()));
        }
        let mut acc: HashMap<[u16; 3], BTreeMap<u16, Scalar>> = HashMap::new();
        for (mono, _) in q.terms() {
            let value = q.polar_coefficient(mono);
            let mut distinct = mono.clone();
            distinct.dedup();
            for w in distinct {
                let mut rest = mono.clone();
                let pos = rest.iter().position(|&v| v == w).expect("present");
                rest.remove(pos);
                let key = [rest[0], rest[1], rest[2]];
                let slot = acc.entry(key).or_default();
                for (k, x) in &cols[w as usize] {
                    *slot.entry(*k).or_insert_with(scalar::zero) += x * &value;
                }
            }
        }
        let entries = acc
            .into_iter()
            .map(|(k, v)| (k, v.into_iter().filter(|(_, x)| !x.is_zero()).collect::<Vec<_>>()))
            .filter(|(_, v)| !v.is_empty())
            .collect();
        TTensor { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&[u16; 3], &Vec<(u16, Scalar)>)> {
        self.entries.iter()
    }

    /// `t(e_a, e_b, e_c)` as a sparse vector.
    pub fn basis_value(&self, a: usize, b: usize, c: usize) -> &[(u16, Scalar)] {
        self.entries.get(&sorted3([a as u16, b as u16, c as u16])).map_or(&[], Vec::as_slice)
    }

    pub fn apply(&self, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![scalar::zero(); N];
        for (key, v) in &self.entries {
            let [a, b, c] = key.map(usize::from);
            let mut coeff = scalar::zero();
            for (p, q, r) in distinct_orderings(a, b, c) {
                if x[p].is_zero() || y[q].is_zero() || z[r].is_zero() {
                    continue;
                }
                coeff += &x[p] * &y[q] * &z[r];
            }
            if coeff.is_zero() {
                continue;
            }
            for (k, val) in v {
                out[*k as usize] += &coeff * val;
            }
        }
        out
    }

    /// SHA-256 over the canonical text form (sorted triples, `num/den` scalars).
    pub fn content_hash(&self) -> String {
        let mut h = Sha256::new();
        for line in self.csv_lines() {
            h.update(line.as_bytes());
            h.update(b"\n");
        }
        format!("{:x}", h.finalize())
    }

    /// One line `a,b,c,k,value` per nonzero component, in sorted order.
    pub fn csv_lines(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (key, v) in &self.entries {
            for (k, x) in v {
                out.push(format!("{},{},{},{},{}", key[0], key[1], key[2], k, scalar::format(x)));
            }
        }
        out
    }

    /// Triples `(a <= b <= c, components)` in sorted order.
    pub fn sorted_entries(&self) -> Vec<TensorEntryText> {
        self.entries.iter().map(|(k, v)| (*k, v.iter().map(|(i, x)| (*i, scalar::format(x))).collect())).collect()
    }
}

/// Distinct orderings of the multiset `{a, b, c}`.
fn distinct_orderings(a: usize, b: usize, c: usize) -> Vec<(usize, usize, usize)> {
    let mut out = vec![(a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)];
    out.sort_unstable();
    out.dedup();
    out
}

/// A basis triple `a <= b <= c` and the nonzero components of `t(e_a, e_b, e_c)` as text.
pub type TensorEntryText = ([u16; 3], Vec<(u16, String)>);

/// A calibrated Freudenthal triple system structure on `B`.
#[derive(Clone, Debug)]
pub struct FtsStructure {
    pub b_sign: i64,
    /// `(c1, c2, c4)`
    pub quartic_coeffs: [Scalar; 3],
    pub omega: ExactMatrix,
    pub t_tensor: TTensor,
}

impl FtsStructure {
    pub fn new(b_sign: i64, quartic_coeffs: [Scalar; 3]) -> Self {
        let omega = skew_gram(b_sign);
        let t_tensor = TTensor::from_quartic(&quartic_poly(&quartic_coeffs), &omega);
        FtsStructure { b_sign, quartic_coeffs, omega, t_tensor }
    }

    /// The structure with the frozen calibration constants.
    pub fn frozen() -> Self {
        let c = crate::constants::BROWN_QUARTIC.map(|(n, d)| exact_linalg::scalar::frac(n, d));
        FtsStructure::new(crate::constants::BROWN_B_SIGN, c)
    }

    pub fn skew_form(&self, x: &BrownElement, y: &BrownElement) -> Scalar {
        bilinear(&self.omega, &x.coords(), &y.coords())
    }

    /// `q(x)` evaluated directly with Albert operations.
    pub fn quartic(&self, x: &BrownElement) -> Scalar {
        let [c1, c2, c4] = &self.quartic_coeffs;
        let pairing = &x.alpha * &x.beta - x.j.trace_form(&x.jp);
        c1 * &pairing * &pairing
            + c2 * (&x.alpha * x.j.norm() + &x.beta * x.jp.norm())
            + c4 * x.j.adjoint().trace_form(&x.jp.adjoint())
    }

    pub fn t(&self, x: &BrownElement, y: &BrownElement, z: &BrownElement) -> BrownElement {
        BrownElement::from_coords(&self.t_tensor.apply(&x.coords(), &y.coords(), &z.coords()))
    }

    /// `q4(x, y, z, w) = b(t(x, y, z), w)`.
    pub fn q4(&self, x: &BrownElement, y: &BrownElement, z: &BrownElement, w: &BrownElement) -> Scalar {
        self.skew_form(&self.t(x, y, z), w)
    }

    /// `e` is singular iff `t(e, e, v)` lies on the line of `e` for every basis vector `v`.
    pub fn is_singular(&self, e: &BrownElement) -> Result<bool, SingularError> {
        if e.is_zero() {
            return Err(SingularError::ZeroInput);
        }
        let ec = e.coords();
        let mut rows = vec![ec.clone()];
        for v in 0..N {
            rows.push(self.t_tensor.apply(&ec, &ec, &BrownElement::basis(v).coords()));
        }
        Ok(exact_linalg::span_rank(&rows) == 1)
    }

    /// True iff `t(e, e, v) = 2 b(v, e) e` for every basis vector `v`.
    pub fn singular_identity_holds(&self, e: &BrownElement) -> bool {
        let ec = e.coords();
        (0..N).all(|v| {
            let bv = BrownElement::basis(v);
            let lhs = self.t_tensor.apply(&ec, &ec, &bv.coords());
            let rhs = e.scale(&(int(2) * self.skew_form(&bv, e))).coords();
            lhs == rhs
        })
    }

    pub fn content_hash(&self) -> String {
        self.t_tensor.content_hash()
    }
}

fn bilinear(m: &ExactMatrix, x: &[Scalar], y: &[Scalar]) -> Scalar {
    let mut acc = scalar::zero();
    for (i, j, v) in m.triples() {
        if !x[i].is_zero() && !y[j].is_zero() {
            acc += v * &x[i] * &y[j];
        }
    }
    acc
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SingularError {
    #[error("the zero vector spans no line")]
    ZeroInput,
}

/// Solutions of the singularity constraint `t(e, e, v) = 2 b(v, e) e` for `e = e1, e2`, as an
/// affine family in `(c1, c2, c4)`: a particular solution and the directions left free.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCalibration {
    pub particular: [Scalar; 3],
    pub free_directions: Vec<[Scalar; 3]>,
}

pub fn solve_singular_constraint(b_sign: i64) -> Option<LinearCalibration> {
    let omega = skew_gram(b_sign);
    let parts = quartic_parts();
    let tensors: Vec<TTensor> =
        [&parts.square, &parts.norms, &parts.adjoints].iter().map(|p| TTensor::from_quartic(p, &omega)).collect();
    // unknowns (c1, c2, c4, h): sum c_i t_i(e, e, v) - h 2 b(v, e) e = 0
    let mut rows: Vec<Vec<(usize, Scalar)>> = Vec::new();
    for e in [ALPHA, BETA] {
        for v in 0..N {
            let mut comps: BTreeMap<usize, Vec<(usize, Scalar)>> = BTreeMap::new();
            for (i, t) in tensors.iter().enumerate() {
                for (k, x) in t.basis_value(e, e, v) {
                    comps.entry(*k as usize).or_default().push((i, x.clone()));
                }
            }
            let bve = omega.get(v, e);
            if !bve.is_zero() {
                comps.entry(e).or_default().push((3, -(int(2) * bve)));
            }
            rows.extend(comps.into_values());
        }
    }
    let system = ExactMatrix::from_sparse_rows(4, rows);
    let basis = exact_linalg::kernel(&system, Strategy::FractionFree).ok()?;
    let with_h: Vec<&Vec<Scalar>> = basis.vectors.iter().filter(|v| !v[3].is_zero()).collect();
    let first = with_h.first()?;
    let particular = std::array::from_fn(|i| &first[i] / &first[3]);
    let free_directions = basis
        .vectors
        .iter()
        .map(|v| {
            let s = &v[3] / &first[3];
            std::array::from_fn(|i| &v[i] - &first[i] * &s)
        })
        .filter(|d: &[Scalar; 3]| d.iter().any(|x| !x.is_zero()))
        .collect();
    Some(LinearCalibration { particular, free_directions })
}

/// Candidate values for each coefficient left free by the linear constraint.
pub const GRID: [i64; 8] = [1, -1, 2, -2, 4, -4, 8, -8];

/// Outcome of the calibration search.
#[derive(Clone, Debug)]
pub struct FtsCalibration {
    pub structure: FtsStructure,
    pub linear: LinearCalibration,
    /// Grid points `(c2, c4)` whose similitude algebra has dimension 134.
    pub successes: Vec<(i64, i64)>,
    /// Dimension found at every grid point (modulo the screening prime).
    pub screened: Vec<((i64, i64), usize)>,
}

/// The map `(alpha, beta, j, jp) -> (-alpha, -beta, j, jp)`: it preserves `b` and sends
/// the quartic with `c2` to the quartic with `-c2`.
pub fn alpha_beta_flip() -> ExactMatrix {
    let mut m = ExactMatrix::identity(N).to_dense();
    m[ALPHA][ALPHA] = int(-1);
    m[BETA][BETA] = int(-1);
    ExactMatrix::from_dense(N, &m)
}

/// `q(g x)` as a polynomial, for a signed coordinate permutation `g` (diagonal here).
pub fn pullback_diagonal(q: &Poly, signs: &[Scalar]) -> Poly {
    let mut out = Poly::zero();
    for (m, c) in q.terms() {
        let mut v = c.clone();
        for &x in m {
            v *= &signs[x as usize];
        }
        out.add_term(m.clone(), v);
    }
    out
}

/// Determines `(c1, c2, c4)`: `c1` from the singularity constraint, `(c2, c4)` by searching
/// the grid for a similitude algebra of dimension 134. The two grid points related by
/// [`alpha_beta_flip`] describe isometric structures; the one with `c2 > 0` is kept.
pub fn calibrate_fts(solver: &KernelSolver) -> Result<FtsCalibration, CalibrationError> {
    let b_sign = crate::constants::BROWN_B_SIGN;
    let linear = solve_singular_constraint(b_sign).ok_or(CalibrationError::NoCandidate("brown-fts"))?;
    let omega = skew_gram(b_sign);
    let stage1 = b_condition_basis(solver, &omega)?;
    let p = exact_linalg::modular::primes_from_seed(solver.seed, 1)[0];
    let grid: Vec<(i64, i64, [Scalar; 3])> = GRID
        .iter()
        .flat_map(|&c2| GRID.iter().map(move |&c4| (c2, c4)))
        .filter_map(|(c2, c4)| coefficients_on_grid(&linear, c2, c4).map(|c| (c2, c4, c)))
        .collect();
    let screened: Vec<((i64, i64), usize)> = grid
        .into_par_iter()
        .filter_map(|(c2, c4, coeffs)| {
            let fts = FtsStructure::new(b_sign, coeffs);
            let rank = solver.rank_mod_p(&t_condition_system(&fts, &stage1), p)?;
            let dim = stage1.dim() - rank;
            if solver.progress {
                eprintln!("calibrate: c2 = {c2}, c4 = {c4}: dimension {dim}");
            }
            Some(((c2, c4), dim))
        })
        .collect();
    let successes: Vec<(i64, i64)> = screened.iter().filter(|(_, d)| *d == 134).map(|(c, _)| *c).collect();
    let chosen = match successes.as_slice() {
        [] => return Err(CalibrationError::NoCandidate("brown-fts")),
        [one] => *one,
        [a, b] if a.0 == -b.0 && a.1 == b.1 => {
            if a.0 > 0 {
                *a
            } else {
                *b
            }
        }
        _ => return Err(CalibrationError::Ambiguous { target: "brown-fts", successes: successes.len() }),
    };
    let coeffs = coefficients_on_grid(&linear, chosen.0, chosen.1).expect("grid point was admissible");
    Ok(FtsCalibration { structure: FtsStructure::new(b_sign, coeffs), linear, successes, screened })
}

/// Places `(c2, c4)` into the affine family; `None` if the family does not leave exactly
/// `c2` and `c4` free.
fn coefficients_on_grid(linear: &LinearCalibration, c2: i64, c4: i64) -> Option<[Scalar; 3]> {
    let free = &linear.free_directions;
    if free.len() != 2 {
        return None;
    }
    // solve particular + s d0 + u d1 = (c1, c2, c4) in the last two coordinates
    let (d0, d1, p) = (&free[0], &free[1], &linear.particular);
    let det = &d0[1] * &d1[2] - &d0[2] * &d1[1];
    if det.is_zero() {
        return None;
    }
    let r2 = int(c2) - &p[1];
    let r4 = int(c4) - &p[2];
    let s = (&r2 * &d1[2] - &r4 * &d1[1]) / &det;
    let u = (&d0[1] * &r4 - &d0[2] * &r2) / &det;
    Some(std::array::from_fn(|i| &p[i] + &s * &d0[i] + &u * &d1[i]))
}

/// Stage one: `b(g u, v) + b(u, g v) = lambda b(u, v)` on all basis pairs `u < v`.
pub fn b_condition_system(omega: &ExactMatrix) -> ExactMatrix {
    let om = omega.to_dense();
    let mut rows = Vec::with_capacity(N * (N - 1) / 2);
    for u in 0..N {
        for v in (u + 1)..N {
            let mut eq = Vec::new();
            for m in 0..N {
                if !om[m][v].is_zero() {
                    eq.push((entry(N, m, u), om[m][v].clone()));
                }
                if !om[u][m].is_zero() {
                    eq.push((entry(N, m, v), om[u][m].clone()));
                }
            }
            if !om[u][v].is_zero() {
                eq.push((lie::multiplier_index(N), -om[u][v].clone()));
            }
            rows.push(eq);
        }
    }
    ExactMatrix::from_sparse_rows(N * N + 1, rows)
}

pub fn b_condition_basis(solver: &KernelSolver, omega: &ExactMatrix) -> Result<KernelBasis, LinalgError> {
    solver.kernel(&b_condition_system(omega), Strategy::MultiModular)
}

/// Stage two: the `t`-condition
/// `t(g u, v, w) + t(u, g v, w) + t(u, v, g w) - g t(u, v, w) = lambda t(u, v, w)`
/// on all sorted basis triples, written in the coordinates of the stage-one basis.
/// Rows are deduplicated up to scaling and zero rows dropped.
pub fn t_condition_system(fts: &FtsStructure, stage1: &KernelBasis) -> ExactMatrix {
    let t = &fts.t_tensor;
    // flat unknown -> (stage-one coordinate, coefficient)
    let mut to_y: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); N * N + 1];
    for (j, v) in stage1.vectors.iter().enumerate() {
        for (i, x) in v.iter().enumerate() {
            if !x.is_zero() {
                to_y[i].push((j, x.clone()));
            }
        }
    }
    // (a, b) -> [(m, t(e_m, e_a, e_b))]
    type Column<'a> = Vec<(usize, &'a Vec<(u16, Scalar)>)>;
    let mut pairs: HashMap<(u16, u16), Column> = HashMap::new();
    for (key, v) in t.entries() {
        let mut seen: Vec<u16> = Vec::new();
        for (drop, m) in key.iter().enumerate() {
            if seen.contains(m) {
                continue;
            }
            seen.push(*m);
            let rest: Vec<u16> = key.iter().enumerate().filter(|(i, _)| *i != drop).map(|(_, x)| *x).collect();
            pairs.entry((rest[0], rest[1])).or_default().push((*m as usize, v));
        }
    }
    let empty: Vec<(usize, &Vec<(u16, Scalar)>)> = Vec::new();
    let lookup = |a: usize, b: usize| pairs.get(&(a.min(b) as u16, a.max(b) as u16)).unwrap_or(&empty);
    let lambda = lie::multiplier_index(N);

    let triples: Vec<(usize, usize, usize)> =
        (0..N).flat_map(|u| (u..N).flat_map(move |v| (v..N).map(move |w| (u, v, w)))).collect();
    let rows: Vec<Vec<(usize, Scalar)>> = triples
        .par_iter()
        .flat_map_iter(|&(u, v, w)| {
            let mut by_k: BTreeMap<usize, BTreeMap<usize, Scalar>> = BTreeMap::new();
            let mut push = |k: usize, flat: usize, c: &Scalar| {
                let row = by_k.entry(k).or_default();
                for (j, x) in &to_y[flat] {
                    *row.entry(*j).or_insert_with(scalar::zero) += c * x;
                }
            };
            // t(g e_u, e_v, e_w) = sum_m g[m][u] t(e_m, e_v, e_w), and the other two slots
            for (fixed, (a, b)) in [(u, (v, w)), (v, (u, w)), (w, (u, v))] {
                for (m, vec) in lookup(a, b) {
                    for (k, x) in vec.iter() {
                        push(*k as usize, entry(N, *m, fixed), x);
                    }
                }
            }
            let tuvw = t.basis_value(u, v, w);
            for (m, x) in tuvw {
                let neg = -x.clone();
                for k in 0..N {
                    push(k, entry(N, k, *m as usize), &neg);
                }
            }
            for (k, x) in tuvw {
                push(*k as usize, lambda, &-x.clone());
            }
            by_k.into_values()
                .map(|row| row.into_iter().filter(|(_, x)| !x.is_zero()).collect::<Vec<_>>())
                .filter(|row| !row.is_empty())
                .collect::<Vec<_>>()
        })
        .collect();
    let mut seen: HashSet<Vec<(usize, Scalar)>> = HashSet::new();
    let mut unique = Vec::new();
    for row in rows {
        let lead = row[0].1.clone();
        let normalized: Vec<(usize, Scalar)> = row.iter().map(|(c, x)| (*c, x / &lead)).collect();
        if seen.insert(normalized.clone()) {
            unique.push(normalized);
        }
    }
    ExactMatrix::from_sparse_rows(stage1.dim(), unique)
}

/// Lie algebra of the similitude group of `(B, t, b)`, in two stages.
#[derive(Clone, Debug)]
pub struct BrownLieAlgebra {
    /// Solutions of the `b`-condition alone.
    pub stage1_dim: usize,
    pub report: LieSubalgebraReport,
}

pub fn similitude_algebra_b(solver: &KernelSolver, fts: &FtsStructure) -> Result<BrownLieAlgebra, LinalgError> {
    let stage1 = b_condition_basis(solver, &fts.omega)?;
    let system = t_condition_system(fts, &stage1);
    if solver.progress {
        eprintln!("brown: stage one {} unknowns, stage two {} distinct equations", stage1.dim(), system.rows());
    }
    let coeffs = solver.kernel(&system, Strategy::MultiModular)?;
    let vectors: Vec<Vec<Scalar>> = coeffs.vectors.iter().map(|c| lie::combine(&stage1.vectors, c)).collect();
    let verified = stage1.is_exactly_verified() && coeffs.is_exactly_verified();
    let mut primes = stage1.primes.clone();
    for p in &coeffs.primes {
        if !primes.contains(p) {
            primes.push(*p);
        }
    }
    let basis = KernelBasis {
        ambient_dim: N * N + 1,
        vectors,
        certification: if verified {
            exact_linalg::Certification::ExactlyVerified
        } else {
            exact_linalg::Certification::ModularOnly(primes.clone())
        },
        primes,
        discarded_primes: coeffs.discarded_primes,
    };
    Ok(BrownLieAlgebra {
        stage1_dim: stage1.dim(),
        report: LieSubalgebraReport::new("sim-b", Ambient::EndBPlusMultiplier, basis),
    })
}

#[derive(Clone, Debug)]
pub struct BrownStabilizers {
    /// `{g : g(1) = 0}`
    pub stab_one: LieSubalgebraReport,
    /// `{g : g(e1) in <e1>, g(e2) in <e2>}` (ordered pair; the unordered pair has the same
    /// Lie algebra)
    pub stab_pair: LieSubalgebraReport,
}

pub fn stabilizer_dimensions_b(
    solver: &KernelSolver,
    sim: &LieSubalgebraReport,
) -> Result<BrownStabilizers, LinalgError> {
    let sub = |name: &str, cond: &ExactMatrix| -> Result<LieSubalgebraReport, LinalgError> {
        let k = lie::subspace_kernel(solver, &sim.basis, cond, Strategy::MultiModular)?;
        Ok(LieSubalgebraReport::new(name, Ambient::EndBPlusMultiplier, k))
    };
    let one = BrownElement::one().coords();
    Ok(BrownStabilizers {
        stab_one: sub("stab-one", &lie::annihilator_conditions(N, &one))?,
        stab_pair: sub("stab-pair", &lie::image_conditions(N, &[(ALPHA, vec![ALPHA]), (BETA, vec![BETA])]))?,
    })
}

/// `b(g u, v) + b(u, g v) - lambda b(u, v)` and the `t`-defect of a flat element on given
/// basis indices; both vanish for elements of the similitude algebra.
pub fn defects(fts: &FtsStructure, flat: &[Scalar], u: usize, v: usize, w: usize) -> (Scalar, Vec<Scalar>) {
    let g = lie::matrix_of(N, flat);
    let lambda = &flat[N * N];
    let e = |i: usize| BrownElement::basis(i).coords();
    let ge = |i: usize| g.mul_vec(&e(i));
    let b_def =
        bilinear(&fts.omega, &ge(u), &e(v)) + bilinear(&fts.omega, &e(u), &ge(v)) - lambda * fts.omega.get(u, v);
    let t = &fts.t_tensor;
    let tuvw = t.apply(&e(u), &e(v), &e(w));
    let mut t_def = t.apply(&ge(u), &e(v), &e(w));
    for (acc, (x, y)) in t_def.iter_mut().zip(t.apply(&e(u), &ge(v), &e(w)).iter().zip(t.apply(&e(u), &e(v), &ge(w)))) {
        *acc += x + y;
    }
    let g_t = g.mul_vec(&tuvw);
    for ((acc, x), y) in t_def.iter_mut().zip(g_t).zip(&tuvw) {
        *acc -= x + lambda * y;
    }
    (b_def, t_def)
}
