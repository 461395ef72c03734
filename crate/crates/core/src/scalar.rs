//! Scalar domains for exact arithmetic: the rationals and prime fields F_p.
//!
//! All higher layers (polynomials, matrices, complexes) are generic over a
//! [`Field`] carried as a value, so the prime of an F_p computation is a
//! runtime choice while rational arithmetic stays allocation-exact.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::fmt::{Debug, Display};

use crate::error::Error;

/// Default prime for finite-field rank work. Large enough that random rank
/// collisions are rare, small enough for fast arithmetic.
pub const DEFAULT_PRIME: u64 = 32003;

/// A field carried as a value. Elements do not know their field; every
/// operation goes through the carrier.
pub trait Field: Clone + PartialEq + Debug {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Human-readable domain tag, used in mismatch errors.
    fn describe(&self) -> String;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let inv = self.inv(b).expect("division by zero");
        self.mul(a, &inv)
    }

    /// Check that two carriers denote the same domain.
    fn same_domain(&self, other: &Self) -> Result<(), Error> {
        if self == other {
            Ok(())
        } else {
            Err(Error::DomainMismatch {
                left: self.describe(),
                right: other.describe(),
            })
        }
    }
}

/// The field of rational numbers with arbitrary-precision representation.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct Rationals;

pub type Rat = BigRational;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> Rat {
        BigRational::zero()
    }
    fn one(&self) -> Rat {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> Rat {
        BigRational::from_integer(BigInt::from(v))
    }
    fn add(&self, a: &Rat, b: &Rat) -> Rat {
        a + b
    }
    fn sub(&self, a: &Rat, b: &Rat) -> Rat {
        a - b
    }
    fn neg(&self, a: &Rat) -> Rat {
        -a
    }
    fn mul(&self, a: &Rat, b: &Rat) -> Rat {
        a * b
    }
    fn inv(&self, a: &Rat) -> Option<Rat> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn is_zero(&self, a: &Rat) -> bool {
        a.is_zero()
    }
    fn describe(&self) -> String {
        "Q".to_string()
    }
}

/// The prime field F_p for a runtime prime p < 2^31. Elements are canonical
/// residues in `0..p`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, Error> {
        if p < 2 || p >= (1 << 31) || !is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn reduce_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    /// Image of a rational under reduction mod p. Fails when p divides the
    /// denominator.
    pub fn reduce_rat(&self, r: &Rat) -> Result<u64, Error> {
        let p = BigInt::from(self.p);
        let num = r.numer().mod_floor_big(&p);
        let den = r.denom().mod_floor_big(&p);
        if den == 0 {
            return Err(Error::BadReduction(self.p));
        }
        let den_inv = self
            .inv(&den)
            .expect("nonzero residue is invertible mod a prime");
        Ok(self.mul(&num, &den_inv))
    }
}

trait ModFloorBig {
    fn mod_floor_big(&self, p: &BigInt) -> u64;
}

impl ModFloorBig for BigInt {
    fn mod_floor_big(&self, p: &BigInt) -> u64 {
        let mut m = self % p;
        if m.is_negative() {
            m += p;
        }
        let (_, digits) = m.to_u64_digits();
        match digits.len() {
            0 => 0,
            1 => digits[0],
            _ => unreachable!("residue below a 31-bit prime fits one digit"),
        }
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn from_i64(&self, v: i64) -> u64 {
        self.reduce_i64(v)
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        // Fermat: a^(p-2) mod p.
        let mut result = 1u64;
        let mut base = *a;
        let mut exp = self.p - 2;
        while exp > 0 {
            if exp & 1 == 1 {
                result = result * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        Some(result)
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn describe(&self) -> String {
        format!("F_{}", self.p)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Exact rational from an integer pair.
pub fn rat(num: i64, den: i64) -> Rat {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Exact rational from an integer.
pub fn rat_int(v: i64) -> Rat {
    BigRational::from_integer(BigInt::from(v))
}

/// Best rational approximation to `x` with denominator at most `max_den`,
/// via continued fractions. Used to snap floating-point slopes that are
/// rational in exact arithmetic.
pub fn nearest_rational(x: f64, max_den: u64) -> Rat {
    if !x.is_finite() {
        return Rat::zero();
    }
    let negative = x < 0.0;
    let mut v = x.abs();
    // Continued-fraction convergents p/q.
    let (mut p0, mut q0, mut p1, mut q1) = (0i64, 1i64, 1i64, 0i64);
    for _ in 0..64 {
        let a = v.floor();
        if a > i64::MAX as f64 {
            break;
        }
        let a_int = a as i64;
        let p2 = a_int.saturating_mul(p1).saturating_add(p0);
        let q2 = a_int.saturating_mul(q1).saturating_add(q0);
        if q2 as u64 > max_den || q2 < 0 {
            break;
        }
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        let frac = v - a;
        if frac < 1e-12 {
            break;
        }
        v = 1.0 / frac;
    }
    let mut r = rat(p1, q1.max(1));
    if negative {
        r = -r;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_rejects_composites() {
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(32004).is_err());
        assert!(PrimeField::new(32003).is_ok());
    }

    #[test]
    fn fp_inverse_round_trips() {
        let f5 = PrimeField::new(5).unwrap();
        for a in 1..5u64 {
            let inv = f5.inv(&a).unwrap();
            assert_eq!(f5.mul(&a, &inv), 1);
        }
        assert!(f5.inv(&0).is_none());
    }

    #[test]
    fn rational_reduction_mod_p() {
        let f5 = PrimeField::new(5).unwrap();
        assert_eq!(f5.reduce_rat(&rat_int(7)).unwrap(), 2);
        assert_eq!(f5.reduce_rat(&rat(1, 2)).unwrap(), 3); // 2*3 = 6 = 1 mod 5
        assert!(f5.reduce_rat(&rat(1, 5)).is_err());
    }

    #[test]
    fn nearest_rational_snaps_exact_values() {
        assert_eq!(nearest_rational(2.0000000000000004, 64), rat_int(2));
        assert_eq!(nearest_rational(0.5, 64), rat(1, 2));
        assert_eq!(nearest_rational(-1.3333333333333333, 64), rat(-4, 3));
    }
}
