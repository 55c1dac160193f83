//! Existence and construction of p^k-th, 2-adic square, and general m-th roots.
//!
//! A p-adic number `p^z · ω(x_0) · (1, x_1/x_0, ...)` has a p^k-th root exactly
//! when `p^k | z` and the Witt digits `x_1, ..., x_k` of its unit part vanish. The
//! root is then unique and is determined modulo `p^(K-k)` when the input is known
//! to `K` digits: changing the root by `p^(K-k)` does not change its p^k-th power
//! modulo `p^K`.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};

use crate::analytic::{first_nonzero_digit, ppow, ExactExponent};
use crate::arith::{mul_mod, pow_mod_u128, split_p_power};
use crate::error::{Error, Result};
use crate::hensel::hensel_kth_root;
use crate::padic::{PAdicInt, PAdicNumber};
use crate::witt::{factor_system_phi1, WittVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RootReason {
    Ok,
    ValuationNotDivisible,
    /// Index of the first nonzero Witt digit among `x_1..=x_k` of the unit part.
    WittDigitNonzero(usize),
    NotKthResidue,
    Mod8Failure,
}

impl fmt::Display for RootReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Ok => f.write_str("ok"),
            Self::ValuationNotDivisible => f.write_str("valuation not divisible by the degree"),
            Self::WittDigitNonzero(i) => write!(f, "Witt digit {i} nonzero"),
            Self::NotKthResidue => f.write_str("leading digit is not a power residue mod p"),
            Self::Mod8Failure => f.write_str("unit is not ≡ 1 (mod 8)"),
        }
    }
}

/// Outcome of a root extraction. `roots` is empty exactly when `exists` is false.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootReport {
    pub exists: bool,
    pub reason: RootReason,
    pub degree: u64,
    pub roots: Vec<PAdicNumber>,
    pub output_precision: u32,
}

impl RootReport {
    fn failed(reason: RootReason, degree: u64, output_precision: u32) -> Self {
        Self {
            exists: false,
            reason,
            degree,
            roots: Vec::new(),
            output_precision,
        }
    }

    fn found(degree: u64, roots: Vec<PAdicNumber>, output_precision: u32) -> Self {
        debug_assert!(!roots.is_empty());
        Self {
            exists: true,
            reason: RootReason::Ok,
            degree,
            roots,
            output_precision,
        }
    }
}

fn require_odd(p: u64) -> Result<()> {
    if p == 2 {
        Err(Error::DomainError(
            "p = 2 needs the 2-adic square root (sqrt_2adic)".into(),
        ))
    } else {
        Ok(())
    }
}

fn p_pow_u64(p: u64, k: u32) -> Option<u64> {
    p.checked_pow(k)
}

/// `q_1(x) = (x^(p-1) - 1) / p` for a unit `x`, known to `K - 1` digits.
pub fn fermat_quotient(x: &PAdicNumber) -> Result<PAdicInt> {
    let (z, unit) = x.nonzero_parts()?;
    if z != 0 {
        return Err(Error::NotAUnit { p: unit.p() });
    }
    unit_fermat_quotient(unit)
}

fn unit_fermat_quotient(unit: &PAdicInt) -> Result<PAdicInt> {
    if unit.precision() < 2 {
        return Err(Error::PrecisionTooLow {
            needed: 2,
            have: unit.precision(),
        });
    }
    let one = PAdicInt::from_parts(unit.p(), unit.precision(), BigUint::from(1u32));
    (&unit.pow_u64(unit.p() - 1) - &one).div_p_power(1)
}

/// Checks `p^k | z` and that Witt digits `1..=k` of the unit part vanish.
///
/// For `k = 1` the digit test is cross-checked against `q_1(x) ≡ 0 (mod p)`,
/// `x^p ≡ x (mod p^2)` and `l_1 ≡ (l_0^p - l_0)/p (mod p)` on the base-p digits.
pub fn pk_root_exists(x: &PAdicNumber, k: u32) -> Result<RootReport> {
    let p = x.p();
    require_odd(p)?;
    if k == 0 {
        return Err(Error::DomainError("k must be at least 1".into()));
    }
    let (z, unit) = x.nonzero_parts()?;
    let precision = unit.precision();
    if precision < k + 1 {
        return Err(Error::PrecisionTooLow {
            needed: k + 1,
            have: precision,
        });
    }
    let degree = p_pow_u64(p, k).unwrap_or(u64::MAX);
    let out = precision - k;
    let pk = BigInt::from(p).pow(k);
    if !(BigInt::from(z) % pk).is_zero() {
        return Ok(RootReport::failed(
            RootReason::ValuationNotDivisible,
            degree,
            out,
        ));
    }
    let digit = first_nonzero_digit(unit, k);
    if k == 1 {
        let by_digit = digit.is_none();
        assert_eq!(by_digit, unit_fermat_quotient(unit)?.mod_p() == 0);
        let low = unit.truncate(2)?;
        assert_eq!(by_digit, low.pow_u64(p) == low);
        let l = low.digit_expansion();
        let p2 = p as u128 * p as u128;
        let l0p = pow_mod_u128(l[0] as u128, p, p2);
        let expected_l1 = ((l0p + p2 - l[0] as u128) / p as u128 % p as u128) as u64;
        assert_eq!(by_digit, l[1] == expected_l1);
    }
    Ok(match digit {
        Some(i) => RootReport::failed(RootReason::WittDigitNonzero(i), degree, out),
        None => RootReport {
            exists: true,
            reason: RootReason::Ok,
            degree,
            roots: Vec::new(),
            output_precision: out,
        },
    })
}

/// The unique p^k-th root, `p^(z/p^k) · ω(x_0) · exp(p^-k log(x / p^z ω(x_0)))`, known to `K - k` digits.
pub fn pk_root(x: &PAdicNumber, k: u32) -> Result<RootReport> {
    let mut report = pk_root_exists(x, k)?;
    if !report.exists {
        return Ok(report);
    }
    let root = ppow(x, &ExactExponent::new(1, k))?;
    debug_assert!(is_root_of(&root, &BigUint::from(x.p()).pow(k), x));
    report.roots = vec![root];
    Ok(report)
}

/// Whether `root^degree` reproduces `x` at the precision of `x`.
///
/// The root's residue is lifted to the input precision before raising, which is
/// sound because every lift has the same power modulo `p^K`.
pub fn is_root_of(root: &PAdicNumber, degree: &BigUint, x: &PAdicNumber) -> bool {
    match (root, x) {
        (PAdicNumber::Zero { .. }, PAdicNumber::Zero { .. }) => true,
        (
            PAdicNumber::Nonzero {
                valuation: rz,
                unit: ru,
            },
            PAdicNumber::Nonzero {
                valuation: xz,
                unit: xu,
            },
        ) => {
            let lifted = PAdicInt::from_parts(xu.p(), xu.precision(), ru.residue().clone());
            BigInt::from(*rz) * BigInt::from(degree.clone()) == BigInt::from(*xz)
                && lifted.pow(degree) == *xu
        }
        _ => false,
    }
}

/// Both sides of `q_1(x^(1/p^k)) ≡ p^-k q_1(x) (mod p)` and of its precursor
/// `x_{k+1} ≡ -p^-k · x · q_1(x) (mod p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootQuotientCheck {
    /// `q_1` of the root, mod p.
    pub root_quotient: u64,
    /// `q_1(x) / p^k`, mod p.
    pub scaled_quotient: u64,
    /// Witt digit `x_{k+1}` of the unit part.
    pub digit: u64,
    /// `-x · q_1(x) / p^k`, mod p.
    pub digit_formula: u64,
    pub holds: bool,
}

pub fn root_quotient_congruence_check(x: &PAdicNumber, k: u32) -> Result<RootQuotientCheck> {
    let report = pk_root_exists(x, k)?;
    if !report.exists {
        return Err(Error::RootCondition(report.reason));
    }
    let (_, unit) = x.nonzero_parts()?;
    let p = unit.p();
    if unit.precision() < k + 2 {
        return Err(Error::PrecisionTooLow {
            needed: k + 2,
            have: unit.precision(),
        });
    }
    let unit_number = PAdicNumber::Nonzero {
        valuation: 0,
        unit: unit.clone(),
    };
    let scaled_quotient = unit_fermat_quotient(unit)?.div_p_power(k)?.mod_p();
    let root = ppow(&unit_number, &ExactExponent::new(1, k))?;
    let root_quotient = fermat_quotient(&root)?.mod_p();
    let digit = WittVector::from_padic(unit).digit(k as usize + 1);
    let digit_formula = (p - mul_mod(unit.mod_p(), scaled_quotient, p)) % p;
    Ok(RootQuotientCheck {
        root_quotient,
        scaled_quotient,
        digit,
        digit_formula,
        holds: root_quotient == scaled_quotient && digit == digit_formula,
    })
}

/// Square roots in Z_2: they exist iff the unit part is ≡ 1 (mod 8) (and the valuation is even).
///
/// Reports `{r, 2^(K-1) - r}` with `r` the smaller residue, computed as `exp(log(x) / 2)`.
pub fn sqrt_2adic(x: &PAdicNumber) -> Result<RootReport> {
    let p = x.p();
    if p != 2 {
        return Err(Error::WrongPrime {
            expected: 2,
            got: p,
        });
    }
    let (z, unit) = x.nonzero_parts()?;
    let precision = unit.precision();
    if precision < 3 {
        return Err(Error::PrecisionTooLow {
            needed: 3,
            have: precision,
        });
    }
    let out = precision - 1;
    if z % 2 != 0 {
        return Ok(RootReport::failed(
            RootReason::ValuationNotDivisible,
            2,
            out,
        ));
    }
    if (unit.residue() % 8u32) != BigUint::from(1u32) {
        return Ok(RootReport::failed(RootReason::Mod8Failure, 2, out));
    }
    let root = ppow(x, &ExactExponent::new(1, 1))?;
    let PAdicNumber::Nonzero { valuation, unit: r } = root else {
        unreachable!("root of a nonzero number")
    };
    let neg = -&r;
    let (a, b) = if r.residue() <= neg.residue() {
        (r, neg)
    } else {
        (neg, r)
    };
    let roots = vec![
        PAdicNumber::Nonzero { valuation, unit: a },
        PAdicNumber::Nonzero { valuation, unit: b },
    ];
    Ok(RootReport::found(2, roots, out))
}

/// All m-th roots, for `m = p^v · m'` with `p ∤ m'`: the unique p^v-th root first,
/// then the `gcd(m', p - 1)` Hensel lifts of its m'-th roots. Output has `K - v` digits.
pub fn general_root(x: &PAdicNumber, m: u64) -> Result<RootReport> {
    let p = x.p();
    if m == 0 {
        return Err(Error::DomainError("degree must be positive".into()));
    }
    let (v, m_prime) = split_p_power(m, p);
    if p == 2 && v > 0 {
        if m == 2 {
            return sqrt_2adic(x);
        }
        return Err(Error::DomainError(
            "for p = 2 only odd degrees and square roots are supported".into(),
        ));
    }
    let (z, unit) = x.nonzero_parts()?;
    let precision = unit.precision();
    if precision < v + 1 {
        return Err(Error::PrecisionTooLow {
            needed: v + 1,
            have: precision,
        });
    }
    let out = precision - v;
    if z % m as i64 != 0 {
        return Ok(RootReport::failed(
            RootReason::ValuationNotDivisible,
            m,
            out,
        ));
    }
    let valuation = z / m as i64;

    let unit_number = PAdicNumber::Nonzero {
        valuation: 0,
        unit: unit.clone(),
    };
    let base = if v > 0 {
        let report = pk_root(&unit_number, v)?;
        if !report.exists {
            return Ok(RootReport {
                degree: m,
                ..report
            });
        }
        report.roots[0].unit().expect("nonzero root").clone()
    } else {
        unit.clone()
    };
    let lifts = hensel_kth_root(&base, m_prime)?;
    if lifts.is_empty() {
        return Ok(RootReport::failed(RootReason::NotKthResidue, m, out));
    }
    let roots = lifts
        .into_iter()
        .map(|unit| PAdicNumber::Nonzero { valuation, unit })
        .collect();
    Ok(RootReport::found(m, roots, out))
}

/// `1^p + y^p` is a p-adic p-th power whenever `φ_1(1, y) ≡ 0 (mod p)`.
///
/// With `root^p = x^p + y^p` the triple `(x, y, -root)` solves
/// `X^p + Y^p + Z^p = 0` in Z_p (p odd).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FermatWitness {
    pub p: u64,
    pub x: u64,
    pub y: u64,
    pub sum: BigInt,
    pub root: PAdicInt,
    /// Precision at which `root^p ≡ sum` was verified.
    pub precision: u32,
}

pub const DEFAULT_WITNESS_PRECISION: u32 = 6;

/// Scans `0 < y < p - 1` for `φ_1(1, y) ≡ 0` and extracts the p-th root of `1 + y^p`.
pub fn flt_local_witness(p: u64, precision: u32) -> Result<Option<FermatWitness>> {
    crate::arith::check_prime(p)?;
    require_odd(p)?;
    if precision < 2 {
        return Err(Error::PrecisionTooLow {
            needed: 2,
            have: precision,
        });
    }
    for y in 1..p - 1 {
        if factor_system_phi1(p, 1, y)? != 0 {
            continue;
        }
        let exp = u32::try_from(p).map_err(|_| Error::DomainError("p too large".into()))?;
        let sum = BigInt::from(1) + BigInt::from(y).pow(exp);
        let x = PAdicNumber::from_integer(sum.clone(), p, precision)?;
        let report = pk_root(&x, 1)?;
        debug_assert!(
            report.exists,
            "φ_1(1, y) = 0 forces the second Witt digit to vanish"
        );
        if let Some(root) = report.roots.first() {
            return Ok(Some(FermatWitness {
                p,
                x: 1,
                y,
                sum,
                root: root.to_padic_int()?,
                precision,
            }));
        }
    }
    Ok(None)
}

/// Integer Fermat quotient `(n^(p-1) - 1)/p mod p` for word-sized inputs.
pub fn fermat_quotient_mod_p(n: u64, p: u64) -> Option<u64> {
    if n.is_multiple_of(p) {
        return None;
    }
    let p2 = p as u128 * p as u128;
    let r = pow_mod_u128(n as u128 % p2, p - 1, p2);
    Some((((r + p2 - 1) % p2) / p as u128).to_u64().expect("below p"))
}
