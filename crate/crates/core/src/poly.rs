//! Sparse multivariate polynomials with rational coefficients.
//!
//! Used to state algebraic identities symbolically (composition law, quartic form of the
//! Brown algebra) and to read off full polarizations from monomial coefficients.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use exact_linalg::scalar;
use exact_linalg::Scalar;
use num_traits::Zero;

/// A monomial as a sorted multiset of variable indices.
pub type Monomial = Vec<u16>;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly {
    terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: Scalar) -> Self {
        let mut p = Poly::zero();
        p.add_term(Vec::new(), c);
        p
    }

    pub fn var(i: usize) -> Self {
        let mut p = Poly::zero();
        p.add_term(vec![i as u16], scalar::one());
        p
    }

    /// Linear form `sum coeffs[k] * x_(offset + k)`.
    pub fn linear(offset: usize, coeffs: &[Scalar]) -> Self {
        let mut p = Poly::zero();
        for (k, c) in coeffs.iter().enumerate() {
            p.add_term(vec![(offset + k) as u16], c.clone());
        }
        p
    }

    pub fn add_term(&mut self, mut mono: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        mono.sort_unstable();
        let entry = self.terms.entry(mono);
        match entry {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, mono: &[u16]) -> Scalar {
        let mut key = mono.to_vec();
        key.sort_unstable();
        self.terms.get(&key).cloned().unwrap_or_else(scalar::zero)
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    /// True iff every monomial has total degree `d`.
    pub fn is_homogeneous(&self, d: usize) -> bool {
        self.terms.keys().all(|m| m.len() == d)
    }

    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        let mut acc = scalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &v in m {
                t *= &point[v as usize];
            }
            acc += t;
        }
        acc
    }

    pub fn derivative(&self, var: usize) -> Poly {
        let var = var as u16;
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mult = m.iter().filter(|&&v| v == var).count();
            if mult == 0 {
                continue;
            }
            let mut reduced = m.clone();
            let pos = reduced.iter().position(|&v| v == var).expect("variable present");
            reduced.remove(pos);
            out.add_term(reduced, c * scalar::int(mult as i64));
        }
        out
    }

    /// Value of the full polarization on basis vectors: the mixed partial derivative
    /// along the given variables. For a form of degree d this equals the symmetric
    /// d-linear form normalized so its diagonal is d! times the form.
    pub fn polar_coefficient(&self, vars: &[u16]) -> Scalar {
        let mut key = vars.to_vec();
        key.sort_unstable();
        let Some(c) = self.terms.get(&key) else { return scalar::zero() };
        let mut factor = 1i64;
        let mut i = 0;
        while i < key.len() {
            let mut run = 1;
            while i + run < key.len() && key[i + run] == key[i] {
                run += 1;
            }
            factor *= (1..=run as i64).product::<i64>();
            i += run;
        }
        c * scalar::int(factor)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let mut m = ma.clone();
                m.extend_from_slice(mb);
                out.add_term(m, ca * cb);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use exact_linalg::scalar::int;

    #[test]
    fn binomial_square() {
        let x = Poly::var(0);
        let y = Poly::var(1);
        let s = &x + &y;
        let sq = &s * &s;
        assert_eq!(sq.coeff(&[0, 1]), int(2));
        assert_eq!(sq.coeff(&[1, 1]), int(1));
        assert_eq!((&sq - &sq), Poly::zero());
        assert!(sq.is_homogeneous(2));
        assert_eq!(sq.eval(&[int(2), int(3)]), int(25));
    }

    #[test]
    fn polarization_of_cube() {
        // x^3: polarization on (x,x,x) is 3! = 6
        let x = Poly::var(0);
        let cube = &(&x * &x) * &x;
        assert_eq!(cube.polar_coefficient(&[0, 0, 0]), int(6));
        // x^2 y: d^3/dx dx dy = 2
        let y = Poly::var(1);
        let m = &(&x * &x) * &y;
        assert_eq!(m.polar_coefficient(&[0, 1, 0]), int(2));
        assert_eq!(m.derivative(0), (&x * &y).scale(&int(2)));
    }
}
