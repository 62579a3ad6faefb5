//! Chinese remaindering and rational reconstruction.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Combines residues `x ≡ r_i (mod p_i)` into the unique `x` in `[0, M)` and returns `(x, M)`.
pub fn crt(residues: &[(u64, u64)]) -> (BigInt, BigInt) {
    let mut value = BigInt::zero();
    let mut modulus = BigInt::one();
    for &(r, p) in residues {
        let p_big = BigInt::from(p);
        // value + modulus * k ≡ r (mod p)
        let current = value.mod_floor(&p_big);
        let diff = (BigInt::from(r) - current).mod_floor(&p_big);
        let inv = modulus.mod_floor(&p_big).extended_gcd(&p_big).x.mod_floor(&p_big);
        let k = (diff * inv).mod_floor(&p_big);
        value += &modulus * k;
        modulus *= p_big;
    }
    (value, modulus)
}

/// Finds `n/d` with `|n|, d <= sqrt(m/2)` and `n ≡ a·d (mod m)`, if one exists.
pub fn rational_reconstruct(a: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut s0, mut s1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let s2 = &s0 - &q * &s1;
        r0 = std::mem::replace(&mut r1, r2);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if s1.is_zero() || s1.abs() > bound || !r1.gcd(&s1).is_one() {
        return None;
    }
    Some(BigRational::new(r1, s1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modular::reduce_scalar;
    use crate::scalar::frac;

    #[test]
    fn crt_recovers_integer() {
        let primes = [1_000_000_007u64, 998_244_353];
        let n = BigInt::from(123_456_789_012_345i64);
        let residues: Vec<(u64, u64)> =
            primes.iter().map(|&p| ((&n % BigInt::from(p)).try_into().unwrap(), p)).collect();
        let (x, m) = crt(&residues);
        assert_eq!(x, n);
        assert_eq!(m, BigInt::from(1_000_000_007u64) * BigInt::from(998_244_353u64));
    }

    #[test]
    fn reconstructs_small_fractions() {
        let primes = [1_073_741_827u64, 1_073_741_831];
        for (n, d) in [(3, 7), (-22, 15), (0, 1), (1, 1), (-5, 1), (40_000, 39_999)] {
            let q = frac(n, d);
            let residues: Vec<(u64, u64)> = primes.iter().map(|&p| (reduce_scalar(&q, p).unwrap(), p)).collect();
            let (x, m) = crt(&residues);
            assert_eq!(rational_reconstruct(&x, &m), Some(q));
        }
    }

    #[test]
    fn refuses_oversized_fractions() {
        let p = 1_073_741_827u64;
        let q = frac(1_000_003, 999_983);
        let r = reduce_scalar(&q, p).unwrap();
        let (x, m) = crt(&[(r, p)]);
        assert_ne!(rational_reconstruct(&x, &m), Some(q));
    }
}
