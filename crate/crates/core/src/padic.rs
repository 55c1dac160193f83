//! Residues mod p^K standing in for p-adic integers, and p-adic numbers
//! written as `p^z * unit`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::check_prime;
use crate::error::{Error, Result};

pub(crate) fn p_power(p: u64, k: u32) -> BigUint {
    BigUint::from(p).pow(k)
}

/// Reduces a signed integer into `[0, modulus)`.
pub(crate) fn reduce(value: &BigInt, modulus: &BigUint) -> BigUint {
    let m = BigInt::from_biguint(Sign::Plus, modulus.clone());
    value.mod_floor(&m).into_parts().1
}

/// A p-adic integer known modulo `p^precision`.
///
/// Binary operations return a value at the smaller of the two precisions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PAdicInt {
    p: u64,
    precision: u32,
    residue: BigUint,
}

impl PAdicInt {
    pub fn new(p: u64, precision: u32, value: impl Into<BigInt>) -> Result<Self> {
        check_prime(p)?;
        if precision == 0 {
            return Err(Error::ZeroPrecision);
        }
        let residue = reduce(&value.into(), &p_power(p, precision));
        Ok(Self {
            p,
            precision,
            residue,
        })
    }

    /// Builds a value without re-validating `p`; callers guarantee primality.
    pub(crate) fn from_parts(p: u64, precision: u32, residue: BigUint) -> Self {
        debug_assert!(precision >= 1);
        let residue = residue % p_power(p, precision);
        Self {
            p,
            precision,
            residue,
        }
    }

    pub(crate) fn from_signed(p: u64, precision: u32, value: &BigInt) -> Self {
        Self {
            p,
            precision,
            residue: reduce(value, &p_power(p, precision)),
        }
    }

    pub fn zero(p: u64, precision: u32) -> Result<Self> {
        Self::new(p, precision, 0)
    }

    pub fn one(p: u64, precision: u32) -> Result<Self> {
        Self::new(p, precision, 1)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// Least non-negative representative.
    pub fn residue(&self) -> &BigUint {
        &self.residue
    }

    pub fn modulus(&self) -> BigUint {
        p_power(self.p, self.precision)
    }

    /// Least-absolute-value representative, e.g. `-8` for `113 mod 121`.
    pub fn signed_residue(&self) -> BigInt {
        let m = self.modulus();
        let r = BigInt::from(self.residue.clone());
        if &self.residue * 2u32 > m {
            r - BigInt::from(m)
        } else {
            r
        }
    }

    /// First digit `x mod p`.
    pub fn mod_p(&self) -> u64 {
        (&self.residue % self.p)
            .to_u64()
            .expect("digit fits in u64")
    }

    pub fn is_zero(&self) -> bool {
        self.residue.is_zero()
    }

    pub fn is_unit(&self) -> bool {
        self.mod_p() != 0
    }

    /// Number of trailing zero digits; `None` when the residue is zero.
    pub fn valuation(&self) -> Option<u32> {
        if self.residue.is_zero() {
            return None;
        }
        let mut v = 0;
        let mut r = self.residue.clone();
        let p = BigUint::from(self.p);
        loop {
            let (q, rem) = r.div_rem(&p);
            if !rem.is_zero() {
                return Some(v);
            }
            r = q;
            v += 1;
        }
    }

    pub fn check_same_ring(&self, other: &Self) -> Result<()> {
        if self.p == other.p {
            Ok(())
        } else {
            Err(Error::MismatchedRing {
                left: self.p,
                right: other.p,
            })
        }
    }

    fn combine(&self, other: &Self, f: impl FnOnce(BigInt, BigInt) -> BigInt) -> Result<Self> {
        self.check_same_ring(other)?;
        let precision = self.precision.min(other.precision);
        let value = f(
            BigInt::from(self.residue.clone()),
            BigInt::from(other.residue.clone()),
        );
        Ok(Self::from_signed(self.p, precision, &value))
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| a + b)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| a - b)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| a * b)
    }

    pub fn pow(&self, exp: &BigUint) -> Self {
        Self {
            p: self.p,
            precision: self.precision,
            residue: self.residue.modpow(exp, &self.modulus()),
        }
    }

    pub fn pow_u64(&self, exp: u64) -> Self {
        self.pow(&BigUint::from(exp))
    }

    /// Integer powers; negative exponents require a unit.
    pub fn pow_signed(&self, exp: &BigInt) -> Result<Self> {
        let base = if exp.is_negative() {
            self.unit_inverse()?
        } else {
            self.clone()
        };
        Ok(base.pow(exp.magnitude()))
    }

    /// Multiplies by an ordinary integer.
    pub fn scale(&self, factor: &BigInt) -> Self {
        Self::from_signed(
            self.p,
            self.precision,
            &(BigInt::from(self.residue.clone()) * factor),
        )
    }

    /// Reduces to a lower precision; asking for more digits than known is an error.
    pub fn truncate(&self, precision: u32) -> Result<Self> {
        if precision == 0 {
            return Err(Error::ZeroPrecision);
        }
        if precision > self.precision {
            return Err(Error::PrecisionTooLow {
                needed: precision,
                have: self.precision,
            });
        }
        Ok(Self::from_parts(self.p, precision, self.residue.clone()))
    }

    /// Exact division by `p^j`; the result is known to `K - j` digits.
    pub fn div_p_power(&self, j: u32) -> Result<Self> {
        if j == 0 {
            return Ok(self.clone());
        }
        if j >= self.precision {
            return Err(Error::PrecisionTooLow {
                needed: j + 1,
                have: self.precision,
            });
        }
        let (q, r) = self.residue.div_rem(&p_power(self.p, j));
        if !r.is_zero() {
            return Err(Error::ExactDivisionFailure);
        }
        Ok(Self::from_parts(self.p, self.precision - j, q))
    }

    /// Multiplication by `p^j`; the result is known to `K + j` digits.
    pub fn mul_p_power(&self, j: u32) -> Self {
        Self {
            p: self.p,
            precision: self.precision + j,
            residue: &self.residue * p_power(self.p, j),
        }
    }

    /// The inverse mod p^K of a unit.
    pub fn unit_inverse(&self) -> Result<Self> {
        if !self.is_unit() {
            return Err(Error::NotAUnit { p: self.p });
        }
        let residue = self
            .residue
            .modinv(&self.modulus())
            .ok_or(Error::NotAUnit { p: self.p })?;
        Ok(Self {
            residue,
            ..self.clone()
        })
    }

    /// Teichmüller representative: the fixpoint of `x -> x^p` congruent to
    /// `x` mod p. Each iteration fixes one more digit.
    pub fn teichmuller(&self) -> Self {
        let m = self.modulus();
        let p = BigUint::from(self.p);
        let mut x = &self.residue % &p;
        for _ in 0..=self.precision {
            let next = x.modpow(&p, &m);
            if next == x {
                break;
            }
            x = next;
        }
        Self {
            residue: x,
            ..self.clone()
        }
    }

    /// Base-p digits `l_0, ..., l_{K-1}`.
    pub fn digit_expansion(&self) -> Vec<u64> {
        let p = BigUint::from(self.p);
        let mut r = self.residue.clone();
        (0..self.precision)
            .map(|_| {
                let (q, d) = r.div_rem(&p);
                r = q;
                d.to_u64().expect("digit below p")
            })
            .collect()
    }

    /// Inverse of [`digit_expansion`](Self::digit_expansion); precision is the number of digits.
    pub fn from_digits(p: u64, digits: &[u64]) -> Result<Self> {
        check_prime(p)?;
        if digits.is_empty() {
            return Err(Error::ZeroPrecision);
        }
        let mut acc = BigUint::zero();
        for &d in digits.iter().rev() {
            if d >= p {
                return Err(Error::InvalidDigit { p, digit: d });
            }
            acc = acc * p + d;
        }
        Ok(Self {
            p,
            precision: digits.len() as u32,
            residue: acc,
        })
    }
}

impl fmt::Display for PAdicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {}^{})", self.residue, self.p, self.precision)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait for &PAdicInt {
            type Output = PAdicInt;

            /// Panics when the primes differ; use the `try_` form to get an error instead.
            fn $method(self, rhs: &PAdicInt) -> PAdicInt {
                self.$checked(rhs)
                    .expect("p-adic operands with different primes")
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &PAdicInt {
    type Output = PAdicInt;

    fn neg(self) -> PAdicInt {
        PAdicInt::from_signed(self.p, self.precision, &-BigInt::from(self.residue.clone()))
    }
}

/// An element of the p-adic field, `p^valuation * unit`, or exact zero.
///
/// The unit carries relative precision: its residue is known mod `p^K`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PAdicNumber {
    Zero { p: u64 },
    Nonzero { valuation: i64, unit: PAdicInt },
}

impl PAdicNumber {
    pub fn from_unit(valuation: i64, unit: PAdicInt) -> Result<Self> {
        if !unit.is_unit() {
            return Err(Error::NotAUnit { p: unit.p() });
        }
        Ok(Self::Nonzero { valuation, unit })
    }

    pub fn zero(p: u64) -> Result<Self> {
        check_prime(p)?;
        Ok(Self::Zero { p })
    }

    /// An integer with `precision` significant digits.
    pub fn from_integer(n: impl Into<BigInt>, p: u64, precision: u32) -> Result<Self> {
        Self::from_rational(n, 1, p, precision)
    }

    /// The rational `m/n` with `precision` significant digits.
    pub fn from_rational(
        m: impl Into<BigInt>,
        n: impl Into<BigInt>,
        p: u64,
        precision: u32,
    ) -> Result<Self> {
        check_prime(p)?;
        if precision == 0 {
            return Err(Error::ZeroPrecision);
        }
        let (m, n) = (m.into(), n.into());
        if n.is_zero() {
            return Err(Error::DomainError("zero denominator".into()));
        }
        if m.is_zero() {
            return Ok(Self::Zero { p });
        }
        let (vm, um) = split_valuation(&m, p);
        let (vn, un) = split_valuation(&n, p);
        let num = PAdicInt::from_signed(p, precision, &um);
        let den = PAdicInt::from_signed(p, precision, &un).unit_inverse()?;
        Ok(Self::Nonzero {
            valuation: vm - vn,
            unit: &num * &den,
        })
    }

    /// Converts an absolute-precision residue; the unit keeps `K - v` digits.
    pub fn from_padic_int(x: &PAdicInt) -> Self {
        match x.valuation() {
            None => Self::Zero { p: x.p() },
            Some(v) => Self::Nonzero {
                valuation: v as i64,
                unit: x.div_p_power(v).expect("divisible by p^v"),
            },
        }
    }

    pub fn p(&self) -> u64 {
        match self {
            Self::Zero { p } => *p,
            Self::Nonzero { unit, .. } => unit.p(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Self::Zero { .. })
    }

    /// The exponent `z` of `p`; the absolute value is `|x|_p = p^(-z)`.
    pub fn valuation(&self) -> Option<i64> {
        match self {
            Self::Zero { .. } => None,
            Self::Nonzero { valuation, .. } => Some(*valuation),
        }
    }

    pub fn unit(&self) -> Option<&PAdicInt> {
        match self {
            Self::Zero { .. } => None,
            Self::Nonzero { unit, .. } => Some(unit),
        }
    }

    /// `|x|_p = p^(-z)` as an exact fraction `(numerator, denominator)`.
    pub fn norm(&self) -> Option<(BigUint, BigUint)> {
        let z = self.valuation()?;
        let pz = p_power(self.p(), z.unsigned_abs() as u32);
        Some(if z >= 0 {
            (BigUint::one(), pz)
        } else {
            (pz, BigUint::one())
        })
    }

    /// Relative precision of the unit part; `None` for exact zero.
    pub fn precision(&self) -> Option<u32> {
        self.unit().map(PAdicInt::precision)
    }

    pub(crate) fn nonzero_parts(&self) -> Result<(i64, &PAdicInt)> {
        match self {
            Self::Zero { .. } => Err(Error::ZeroInput),
            Self::Nonzero { valuation, unit } => Ok((*valuation, unit)),
        }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.p() != other.p() {
            return Err(Error::MismatchedRing {
                left: self.p(),
                right: other.p(),
            });
        }
        match (self, other) {
            (
                Self::Nonzero {
                    valuation: a,
                    unit: u,
                },
                Self::Nonzero {
                    valuation: b,
                    unit: w,
                },
            ) => Ok(Self::Nonzero {
                valuation: a + b,
                unit: u.try_mul(w)?,
            }),
            _ => Ok(Self::Zero { p: self.p() }),
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        let (z, u) = self.nonzero_parts()?;
        Ok(Self::Nonzero {
            valuation: -z,
            unit: u.unit_inverse()?,
        })
    }

    /// Integer power by repeated squaring.
    pub fn pow(&self, exp: &BigInt) -> Result<Self> {
        match self {
            Self::Zero { p } => {
                if exp.is_negative() {
                    Err(Error::ZeroInput)
                } else if exp.is_zero() {
                    Err(Error::DomainError("0^0 is undefined".into()))
                } else {
                    Ok(Self::Zero { p: *p })
                }
            }
            Self::Nonzero { valuation, unit } => {
                let z = exp
                    .checked_mul(&BigInt::from(*valuation))
                    .and_then(|v| v.to_i64())
                    .ok_or_else(|| Error::DomainError("valuation overflow".into()))?;
                Ok(Self::Nonzero {
                    valuation: z,
                    unit: unit.pow_signed(exp)?,
                })
            }
        }
    }

    /// Absolute-precision residue for values of non-negative valuation.
    pub fn to_padic_int(&self) -> Result<PAdicInt> {
        match self {
            Self::Zero { .. } => Err(Error::ZeroInput),
            Self::Nonzero { valuation, unit } => {
                if *valuation < 0 {
                    return Err(Error::DomainError(format!(
                        "valuation {valuation} is negative; not a p-adic integer"
                    )));
                }
                Ok(unit.mul_p_power(*valuation as u32))
            }
        }
    }

    /// Residue comparison at the coarser of the two precisions.
    pub fn congruent(&self, other: &Self) -> bool {
        match (self, other) {
            (Self::Zero { p: a }, Self::Zero { p: b }) => a == b,
            (
                Self::Nonzero {
                    valuation: a,
                    unit: u,
                },
                Self::Nonzero {
                    valuation: b,
                    unit: w,
                },
            ) => {
                let k = u.precision().min(w.precision());
                a == b && u.p() == w.p() && u.truncate(k).ok() == w.truncate(k).ok()
            }
            _ => false,
        }
    }
}

impl fmt::Display for PAdicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Zero { .. } => write!(f, "0"),
            Self::Nonzero { valuation: 0, unit } => write!(f, "{unit}"),
            Self::Nonzero { valuation, unit } => {
                write!(f, "{}^{} * {}", unit.p(), valuation, unit)
            }
        }
    }
}

fn split_valuation(n: &BigInt, p: u64) -> (i64, BigInt) {
    let pb = BigInt::from(p);
    let mut v = 0;
    let mut n = n.clone();
    loop {
        let (q, r) = n.div_rem(&pb);
        if !r.is_zero() {
            return (v, n);
        }
        n = q;
        v += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pi(p: u64, k: u32, v: i64) -> PAdicInt {
        PAdicInt::new(p, k, v).unwrap()
    }

    // extended-Euclid oracle, independent of BigUint::modinv
    fn ext_gcd_inverse(a: i64, m: i64) -> Option<i64> {
        let (mut r0, mut r1, mut s0, mut s1) = (a.rem_euclid(m), m, 1i64, 0i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        (r0 == 1).then(|| s0.rem_euclid(m))
    }

    #[test]
    fn rejects_composite_modulus() {
        assert_eq!(PAdicInt::new(9, 2, 1), Err(Error::NotPrime(9)));
        assert_eq!(PAdicInt::new(5, 0, 1), Err(Error::ZeroPrecision));
    }

    #[test]
    fn unit_inverse_examples() {
        assert_eq!(pi(5, 2, 3).unit_inverse().unwrap(), pi(5, 2, 17));
        assert_eq!(ext_gcd_inverse(3, 25), Some(17));
        assert_eq!(pi(7, 3, 1).unit_inverse().unwrap(), pi(7, 3, 1));
        assert_eq!(pi(5, 2, 10).unit_inverse(), Err(Error::NotAUnit { p: 5 }));
    }

    #[test]
    fn unit_inverse_matches_extended_euclid() {
        for p in [3u64, 5, 7, 11] {
            let m = (p as i64).pow(3);
            for a in 0..m {
                let expected = ext_gcd_inverse(a, m);
                let got = pi(p, 3, a)
                    .unit_inverse()
                    .ok()
                    .map(|x| x.residue().to_i64().unwrap());
                assert_eq!(got, expected, "p={p} a={a}");
            }
        }
    }

    #[test]
    fn teichmuller_examples() {
        assert_eq!(pi(5, 2, 2).teichmuller(), pi(5, 2, 7));
        assert_eq!(pi(11, 2, 3).teichmuller(), pi(11, 2, 3));
        assert_eq!(pi(13, 6, 1).teichmuller(), pi(13, 6, 1));
        assert_eq!(pi(7, 4, 0).teichmuller(), pi(7, 4, 0));
    }

    #[test]
    fn teichmuller_is_idempotent_fixpoint() {
        for p in [2u64, 3, 5, 7, 11] {
            for a in 0..p * p {
                let w = pi(p, 5, a as i64).teichmuller();
                assert_eq!(w.pow_u64(p), w);
                assert_eq!(w.mod_p(), a % p);
                assert_eq!(w.teichmuller(), w);
            }
        }
    }

    #[test]
    fn digit_examples() {
        assert_eq!(pi(5, 3, 59).digit_expansion(), vec![4, 1, 2]);
        assert_eq!(pi(3, 4, 0).digit_expansion(), vec![0, 0, 0, 0]);
        assert_eq!(pi(11, 2, 113).digit_expansion(), vec![3, 10]);
        assert_eq!(pi(11, 2, -8), pi(11, 2, 113));
        assert_eq!(PAdicInt::from_digits(5, &[4, 1, 2]).unwrap(), pi(5, 3, 59));
        assert!(PAdicInt::from_digits(5, &[5]).is_err());
    }

    #[test]
    fn signed_display() {
        assert_eq!(pi(11, 2, 113).signed_residue(), BigInt::from(-8));
        assert_eq!(pi(11, 2, 3).signed_residue(), BigInt::from(3));
    }

    #[test]
    fn precision_calculus() {
        let a = pi(5, 4, 7);
        let b = pi(5, 2, 3);
        assert_eq!((&a + &b).precision(), 2);
        assert_eq!(pi(5, 4, 50).div_p_power(2).unwrap(), pi(5, 2, 2));
        assert_eq!(
            pi(5, 4, 51).div_p_power(1),
            Err(Error::ExactDivisionFailure)
        );
        assert!(a.try_add(&pi(7, 2, 1)).is_err());
    }

    #[test]
    fn numbers_from_rationals() {
        let x = PAdicNumber::from_rational(50, 3, 5, 3).unwrap();
        assert_eq!(x.valuation(), Some(2));
        assert_eq!(
            x.unit().unwrap(),
            &(&pi(5, 3, 2) * &pi(5, 3, 3).unit_inverse().unwrap())
        );
        let y = PAdicNumber::from_rational(1, 25, 5, 3).unwrap();
        assert_eq!(y.valuation(), Some(-2));
        assert_eq!(y.norm(), Some((BigUint::from(25u32), BigUint::one())));
        assert!(PAdicNumber::from_integer(0, 5, 3).unwrap().is_zero());
        let r = x.try_mul(&y).unwrap();
        assert_eq!(r.valuation(), Some(0));
    }

    #[test]
    fn number_round_trip_through_residue() {
        let x = pi(3, 6, 54);
        let n = PAdicNumber::from_padic_int(&x);
        assert_eq!(n.valuation(), Some(3));
        assert_eq!(n.precision(), Some(3));
        assert_eq!(n.to_padic_int().unwrap(), x);
    }
}
