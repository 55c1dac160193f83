//! Truncated Witt vectors `(x_0, ..., x_{k-1}]` over Z/pZ.
//!
//! A vector corresponds to the residue `Σ p^i ω(x_i) mod p^k`, where `ω` is the
//! Teichmüller lift. Ring operations are carried out on that residue and read
//! back digit by digit; the explicit carry `φ_1` of length-2 addition is
//! provided separately.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::{check_prime, inv_mod_prime, mul_mod, pow_mod};
use crate::error::{Error, Result};
use crate::ghost::{ghost_sequence, GhostLimits};
use crate::padic::{reduce, PAdicInt};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawWitt")]
pub struct WittVector {
    p: u64,
    digits: Vec<u64>,
}

#[derive(Deserialize)]
struct RawWitt {
    p: u64,
    digits: Vec<u64>,
}

impl TryFrom<RawWitt> for WittVector {
    type Error = Error;

    fn try_from(raw: RawWitt) -> Result<Self> {
        WittVector::new(raw.p, raw.digits)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WittOp {
    Add,
    Sub,
    Mul,
    Neg,
    Inv,
}

impl WittVector {
    pub fn new(p: u64, digits: Vec<u64>) -> Result<Self> {
        check_prime(p)?;
        if digits.is_empty() {
            return Err(Error::ZeroPrecision);
        }
        if let Some(&digit) = digits.iter().find(|&&d| d >= p) {
            return Err(Error::InvalidDigit { p, digit });
        }
        Ok(Self { p, digits })
    }

    /// `(1, 0, ..., 0]` of length `len`.
    pub fn one(p: u64, len: usize) -> Result<Self> {
        let mut digits = vec![0; len];
        if let Some(first) = digits.first_mut() {
            *first = 1;
        }
        Self::new(p, digits)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    pub fn digit(&self, i: usize) -> u64 {
        self.digits[i]
    }

    pub fn is_unit(&self) -> bool {
        self.digits[0] != 0
    }

    pub fn truncate(&self, len: usize) -> Result<Self> {
        if len == 0 || len > self.len() {
            return Err(Error::PrecisionTooLow {
                needed: len as u32,
                have: self.len() as u32,
            });
        }
        Ok(Self {
            p: self.p,
            digits: self.digits[..len].to_vec(),
        })
    }

    /// The residue `Σ p^i ω(x_i)` mod p^k.
    pub fn to_padic(&self) -> PAdicInt {
        let k = self.len() as u32;
        let p = self.p;
        let mut acc = BigUint::zero();
        let mut scale = BigUint::from(1u32);
        for (i, &d) in self.digits.iter().enumerate() {
            if d != 0 {
                let lift = PAdicInt::from_parts(p, k - i as u32, BigUint::from(d)).teichmuller();
                acc += &scale * lift.residue();
            }
            scale *= p;
        }
        PAdicInt::from_parts(p, k, acc)
    }

    /// Peels Teichmüller digits off a residue: `x_0 = x mod p`, then `x <- (x - ω(x_0)) / p`.
    pub fn from_padic(x: &PAdicInt) -> Self {
        let p = x.p();
        let mut digits = Vec::with_capacity(x.precision() as usize);
        let mut rest = x.clone();
        loop {
            let d = rest.mod_p();
            digits.push(d);
            if rest.precision() == 1 {
                break;
            }
            let lift = PAdicInt::from_parts(p, rest.precision(), BigUint::from(d)).teichmuller();
            rest = (&rest - &lift)
                .div_p_power(1)
                .expect("difference is divisible by p");
        }
        Self { p, digits }
    }

    /// `n · 1` of length `len`. For `p ∤ n` the digits are `(n, -n q_1(n), -n q_2(n), ...)`
    /// taken from the exact ghost recursion; otherwise they are read off `n mod p^len`.
    pub fn from_integer(
        n: impl Into<BigInt>,
        p: u64,
        len: usize,
        limits: GhostLimits,
    ) -> Result<Self> {
        check_prime(p)?;
        if len == 0 {
            return Err(Error::ZeroPrecision);
        }
        let n = n.into();
        let pb = BigInt::from(p);
        if (&n % &pb).is_zero() {
            return Ok(Self::from_padic(&PAdicInt::new(p, len as u32, n)?));
        }
        let ghost = ghost_sequence(n, p, len - 1, limits)?;
        let digits = (0..len).map(|i| ghost.digit(i)).collect();
        Ok(Self { p, digits })
    }

    /// `m / n` of length `len`, for `p ∤ n`.
    pub fn from_rational(
        m: impl Into<BigInt>,
        n: impl Into<BigInt>,
        p: u64,
        len: usize,
    ) -> Result<Self> {
        check_prime(p)?;
        if len == 0 {
            return Err(Error::ZeroPrecision);
        }
        let n = n.into();
        if (&n % BigInt::from(p)).is_zero() {
            return Err(Error::NotCoprime {
                p,
                value: n.to_string(),
            });
        }
        let num = PAdicInt::new(p, len as u32, m)?;
        let den = PAdicInt::new(p, len as u32, n)?.unit_inverse()?;
        Ok(Self::from_padic(&(&num * &den)))
    }

    fn binary(
        &self,
        other: &Self,
        f: impl FnOnce(&PAdicInt, &PAdicInt) -> PAdicInt,
    ) -> Result<Self> {
        if self.p != other.p {
            return Err(Error::MismatchedRing {
                left: self.p,
                right: other.p,
            });
        }
        let len = self.len().min(other.len());
        let a = self.truncate(len)?.to_padic();
        let b = other.truncate(len)?.to_padic();
        Ok(Self::from_padic(&f(&a, &b)))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.binary(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.binary(other, |a, b| a - b)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.binary(other, |a, b| a * b)
    }

    pub fn neg(&self) -> Self {
        Self::from_padic(&-&self.to_padic())
    }

    pub fn inv(&self) -> Result<Self> {
        if !self.is_unit() {
            return Err(Error::NotAUnit { p: self.p });
        }
        Ok(Self::from_padic(&self.to_padic().unit_inverse()?))
    }

    /// Splits a unit as `x_0^τ · (1, x_1/x_0, x_2/x_0, ...]`, returning `x_0` and the
    /// principal factor. Division by `x_0` means multiplication by its inverse mod p.
    pub fn unit_normalized(&self) -> Result<(u64, Self)> {
        if !self.is_unit() {
            return Err(Error::NotAUnit { p: self.p });
        }
        let x0 = self.digits[0];
        let teich =
            PAdicInt::from_parts(self.p, self.len() as u32, BigUint::from(x0)).teichmuller();
        let principal = &self.to_padic() * &teich.unit_inverse()?;
        Ok((x0, Self::from_padic(&principal)))
    }
}

/// Ring operation dispatch; `y` is ignored for the unary operations.
pub fn witt_arith(op: WittOp, x: &WittVector, y: Option<&WittVector>) -> Result<WittVector> {
    let need = || y.ok_or_else(|| Error::DomainError("binary operation needs two operands".into()));
    match op {
        WittOp::Add => x.add(need()?),
        WittOp::Sub => x.sub(need()?),
        WittOp::Mul => x.mul(need()?),
        WittOp::Neg => Ok(x.neg()),
        WittOp::Inv => x.inv(),
    }
}

/// The carry of length-2 Witt addition:
/// `(x_0, x_1] + (y_0, y_1] = (x_0 + y_0, x_1 + y_1 + φ_1(x_0, y_0)]`, with
/// `φ_1(x_0, y_0) ≡ Σ_{i=1}^{p-1} ((-1)^i / i) x_0^i y_0^(p-i) (mod p)`.
pub fn factor_system_phi1(p: u64, x0: u64, y0: u64) -> Result<u64> {
    check_prime(p)?;
    let (x0, y0) = (x0 % p, y0 % p);
    let mut acc = 0u64;
    for i in 1..p {
        let inv_i = inv_mod_prime(i, p).expect("i < p");
        let term = mul_mod(
            inv_i,
            mul_mod(pow_mod(x0, i, p), pow_mod(y0, p - i, p), p),
            p,
        );
        acc = if i % 2 == 0 {
            (acc + term) % p
        } else {
            (acc + p - term) % p
        };
    }
    Ok(acc)
}

/// Parses the bracket notation `(x_0,x_1,...,x_{k-1}]`; digits may be negative and are reduced mod p.
pub fn parse_witt(s: &str, p: u64) -> Result<WittVector> {
    let bad = || Error::DomainError(format!("expected a Witt vector like (2,1,0], got {s:?}"));
    let inner = s
        .trim()
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(bad)?;
    let pb = BigUint::from(p);
    let digits = inner
        .split(',')
        .map(|t| {
            let v: BigInt = t.trim().parse().map_err(|_| bad())?;
            Ok(num_traits::ToPrimitive::to_u64(&reduce(&v, &pb)).expect("below p"))
        })
        .collect::<Result<Vec<_>>>()?;
    WittVector::new(p, digits)
}

impl fmt::Display for WittVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, d) in self.digits.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}")?;
        }
        f.write_str("]")
    }
}
