//! Truncated p-adic logarithm and exponential, the polar form
//! `x = p^z · ω(x_0) · exp(θ)`, and powers `x^y = exp(y log x)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{pow_mod, split_p_power};
use crate::error::{Error, Result};
use crate::padic::{p_power, PAdicInt, PAdicNumber};
use crate::roots::RootReason;
use crate::witt::WittVector;

/// Valuation a principal unit must reach before the series converge:
/// 1 for odd p, 2 for p = 2.
fn domain_valuation(p: u64) -> u32 {
    if p == 2 {
        2
    } else {
        1
    }
}

fn floor_log(p: u64, j: u64) -> u32 {
    let mut e = 0;
    let mut q = j;
    while q >= p {
        q /= p;
        e += 1;
    }
    e
}

fn check_divisible(x: &PAdicInt, v: u32, what: &str) -> Result<()> {
    let need = v.min(x.precision());
    if (x.residue() % p_power(x.p(), need)).is_zero() {
        Ok(())
    } else {
        Err(Error::DomainError(format!(
            "{what} must be divisible by {}^{v}",
            x.p()
        )))
    }
}

/// `log(1 + t) = t - t^2/2 + t^3/3 - ...` for `x = 1 + t` with `t ≡ 0 (mod p)` (mod 4 when p = 2).
///
/// Term `j` is kept while `j - floor(log_p j) < K`, and powers of `t` are formed
/// with `floor(log_p J)` guard digits so each division by `j` is exact.
pub fn plog(x: &PAdicInt) -> Result<PAdicInt> {
    let p = x.p();
    let k = x.precision();
    let one = PAdicInt::from_parts(p, k, BigUint::one());
    let t = x - &one;
    check_divisible(&t, domain_valuation(p), "x - 1")?;
    if t.is_zero() {
        return Ok(t);
    }

    let mut last = 1u64;
    while (last + 1) - (floor_log(p, last + 1) as u64) < k as u64 {
        last += 1;
    }
    let guard = floor_log(p, last);
    let work = p_power(p, k + guard);
    let target = p_power(p, k);

    let mut power = BigUint::one();
    let mut sum = BigInt::zero();
    for j in 1..=last {
        power = (&power * t.residue()) % &work;
        let (v, unit) = split_p_power(j, p);
        let reduced = &power / p_power(p, v);
        let inv = BigUint::from(unit).modinv(&target).expect("unit part of j");
        let term = BigInt::from(reduced * inv % &target);
        if j % 2 == 1 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    Ok(PAdicInt::from_signed(p, k, &sum))
}

/// `exp(θ) = Σ θ^j / j!` for `θ ≡ 0 (mod p)` (mod 4 when p = 2).
///
/// Term `j` is kept while `v·j - floor((j-1)/(p-1)) < K`, a lower bound for the
/// valuation of `θ^j / j!`; guard digits cover `v_p(J!)`.
pub fn pexp(theta: &PAdicInt) -> Result<PAdicInt> {
    let p = theta.p();
    let k = theta.precision();
    let v = domain_valuation(p);
    check_divisible(theta, v, "the exponent")?;
    let one = PAdicInt::from_parts(p, k, BigUint::one());
    if theta.is_zero() {
        return Ok(one);
    }

    let lower = |j: u64| v as u64 * j - (j - 1) / (p - 1);
    let mut last = 1u64;
    while lower(last + 1) < k as u64 {
        last += 1;
    }
    let guard: u32 = (1..=last).map(|j| split_p_power(j, p).0).sum();
    let work = p_power(p, k + guard);
    let target = p_power(p, k);

    let mut power = BigUint::one();
    let mut fact_v = 0u32;
    let mut fact_unit = BigUint::one();
    let mut sum = BigUint::one();
    for j in 1..=last {
        power = (&power * theta.residue()) % &work;
        let (jv, ju) = split_p_power(j, p);
        fact_v += jv;
        fact_unit = fact_unit * ju % &target;
        let reduced = &power / p_power(p, fact_v);
        let inv = fact_unit.modinv(&target).expect("unit part of j!");
        sum += reduced * inv;
    }
    Ok(PAdicInt::from_parts(p, k, sum))
}

/// `x = ρ · exp(θ)` with module `ρ = p^z · ω(x_0)` and argument `θ ≡ 0 (mod p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolarForm {
    pub p: u64,
    pub valuation: i64,
    pub teich_digit: u64,
    pub argument: PAdicInt,
}

impl PolarForm {
    /// `p^z · ω(x_0)` at the argument's precision.
    pub fn module(&self) -> PAdicNumber {
        let k = self.argument.precision();
        let teich = PAdicInt::from_parts(self.p, k, BigUint::from(self.teich_digit)).teichmuller();
        PAdicNumber::Nonzero {
            valuation: self.valuation,
            unit: teich,
        }
    }

    pub fn recompose(&self) -> Result<PAdicNumber> {
        let module = self.module();
        let e = PAdicNumber::Nonzero {
            valuation: 0,
            unit: pexp(&self.argument)?,
        };
        module.try_mul(&e)
    }
}

impl fmt::Display for PolarForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}^{} * ω({}) * exp({})",
            self.p, self.valuation, self.teich_digit, self.argument
        )
    }
}

/// The principal factor `unit · ω(x_0)^-1` of a unit, together with `x_0`.
fn principal_part(unit: &PAdicInt) -> Result<(u64, PAdicInt)> {
    let x0 = unit.mod_p();
    let teich = PAdicInt::from_parts(unit.p(), unit.precision(), BigUint::from(x0)).teichmuller();
    Ok((x0, unit * &teich.unit_inverse()?))
}

pub fn polar(x: &PAdicNumber) -> Result<PolarForm> {
    let (z, unit) = x.nonzero_parts()?;
    let (x0, principal) = principal_part(unit)?;
    let argument = plog(&principal)
        .map_err(|_| Error::DomainError("for p = 2 the unit part must be ≡ 1 (mod 4)".into()))?;
    Ok(PolarForm {
        p: unit.p(),
        valuation: z,
        teich_digit: x0,
        argument,
    })
}

/// Whether modules multiply and arguments add for the product `x·y`.
pub fn de_moivre_check(x: &PAdicNumber, y: &PAdicNumber) -> Result<bool> {
    let xy = x.try_mul(y)?;
    let (px, py, pxy) = (polar(x)?, polar(y)?, polar(&xy)?);
    let p = pxy.p;
    let modules = pxy.valuation == px.valuation + py.valuation
        && pxy.teich_digit == px.teich_digit * py.teich_digit % p;
    let sum = px.argument.try_add(&py.argument)?;
    let k = sum.precision().min(pxy.argument.precision());
    Ok(modules && sum.truncate(k)? == pxy.argument.truncate(k)?)
}

/// An exponent `u / p^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactExponent {
    pub numerator: BigInt,
    pub p_denominator_power: u32,
}

impl ExactExponent {
    pub fn new(numerator: impl Into<BigInt>, p_denominator_power: u32) -> Self {
        Self {
            numerator: numerator.into(),
            p_denominator_power,
        }
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        Self::new(n, 0)
    }

    /// Cancels common factors of p so that `p ∤ u` whenever `k > 0`.
    pub fn normalized(&self, p: u64) -> Self {
        let pb = BigInt::from(p);
        let mut u = self.numerator.clone();
        let mut k = self.p_denominator_power;
        while k > 0 && !u.is_zero() && (&u % &pb).is_zero() {
            u /= &pb;
            k -= 1;
        }
        if u.is_zero() {
            k = 0;
        }
        Self {
            numerator: u,
            p_denominator_power: k,
        }
    }
}

impl fmt::Display for ExactExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.p_denominator_power == 0 {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "{}/p^{}", self.numerator, self.p_denominator_power)
        }
    }
}

impl FromStr for ExactExponent {
    type Err = Error;

    /// Accepts `u`, `u/p^k` or `u/p`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::DomainError(format!("expected an exponent like 3 or 1/p^2, got {s:?}"));
        let s = s.trim();
        match s.split_once('/') {
            None => Ok(Self::integer(s.parse::<BigInt>().map_err(|_| bad())?)),
            Some((u, den)) => {
                let u: BigInt = u.trim().parse().map_err(|_| bad())?;
                let den = den.trim();
                let k = if den == "p" {
                    1
                } else {
                    den.strip_prefix("p^")
                        .and_then(|e| e.parse::<u32>().ok())
                        .ok_or_else(bad)?
                };
                Ok(Self::new(u, k))
            }
        }
    }
}

/// `x^y` for `y = u / p^k`.
///
/// Integer exponents (`k = 0`) are always defined on units. For `k > 0` the
/// valuation of `x` must be divisible by `p^k` and Witt digits `1..=k` of its unit
/// part must vanish; the result then has `K - k` digits.
pub fn ppow(x: &PAdicNumber, y: &ExactExponent) -> Result<PAdicNumber> {
    let p = x.p();
    let y = y.normalized(p);
    let k = y.p_denominator_power;
    let u = &y.numerator;

    let (z, unit) = match x {
        PAdicNumber::Zero { .. } if u.is_positive() => return Ok(x.clone()),
        PAdicNumber::Zero { .. } => return Err(Error::ZeroInput),
        PAdicNumber::Nonzero { valuation, unit } => (*valuation, unit),
    };
    if k == 0 && (p == 2 || u.is_zero()) {
        return x.pow(u);
    }

    let pk = BigInt::from(p).pow(k);
    let (zq, zr) = BigInt::from(z).div_rem(&pk);
    if !zr.is_zero() {
        return Err(Error::RootCondition(RootReason::ValuationNotDivisible));
    }
    let valuation = (zq * u)
        .to_i64()
        .ok_or_else(|| Error::DomainError("valuation overflow".into()))?;

    let needed = k + domain_valuation(p);
    if unit.precision() < needed {
        return Err(Error::PrecisionTooLow {
            needed,
            have: unit.precision(),
        });
    }
    let (x0, principal) = principal_part(unit)?;
    if p == 2 {
        // square-class condition: the unit must be ≡ 1 mod 2^(k+2)
        if principal.residue() % p_power(2, k + 2) != BigUint::one() {
            return Err(Error::RootCondition(RootReason::Mod8Failure));
        }
    } else if let Some(i) = first_nonzero_digit(unit, k) {
        return Err(Error::RootCondition(RootReason::WittDigitNonzero(i)));
    }

    let theta = plog(&principal)?.div_p_power(k)?.scale(u);
    let out = pexp(&theta)?;
    let exp = u
        .mod_floor(&BigInt::from(p - 1))
        .to_u64()
        .expect("below p - 1");
    let teich =
        PAdicInt::from_parts(p, out.precision(), BigUint::from(pow_mod(x0, exp, p))).teichmuller();
    Ok(PAdicNumber::Nonzero {
        valuation,
        unit: &teich * &out,
    })
}

/// Index in `1..=k` of the first nonzero Witt digit of `unit`.
pub(crate) fn first_nonzero_digit(unit: &PAdicInt, k: u32) -> Option<usize> {
    let digits = WittVector::from_padic(unit);
    (1..=k as usize).find(|&i| digits.digit(i) != 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pi(p: u64, k: u32, v: i64) -> PAdicInt {
        PAdicInt::new(p, k, v).unwrap()
    }

    fn num(p: u64, k: u32, v: i64) -> PAdicNumber {
        PAdicNumber::from_integer(v, p, k).unwrap()
    }

    /// Partial sums of the log series in exact rationals, reduced mod p^K at the end.
    fn rational_log(p: u64, k: u32, t: i64, terms: u32) -> BigInt {
        let m = BigInt::from(p).pow(k);
        let (mut num, mut den) = (BigInt::zero(), BigInt::one());
        for j in 1..=terms {
            let (tn, td) = (BigInt::from(t).pow(j), BigInt::from(j));
            let sign = if j % 2 == 1 {
                BigInt::one()
            } else {
                -BigInt::one()
            };
            num = num * &td + sign * tn * &den;
            den *= td;
            let g = num.gcd(&den);
            num /= &g;
            den /= &g;
        }
        let inv = (den.mod_floor(&m)).modpow(&(BigInt::from(p).pow(k - 1) * (p - 1) - 1), &m);
        (num * inv).mod_floor(&m)
    }

    #[test]
    fn log_example() {
        assert_eq!(plog(&pi(5, 3, 6)).unwrap(), pi(5, 3, 55));
        assert_eq!(rational_log(5, 3, 5, 30), BigInt::from(55));
        assert_eq!(plog(&pi(7, 5, 1)).unwrap(), pi(7, 5, 0));
        assert!(matches!(plog(&pi(5, 3, 2)), Err(Error::DomainError(_))));
        assert!(matches!(plog(&pi(2, 5, 3)), Err(Error::DomainError(_))));
    }

    #[test]
    fn log_matches_rational_partial_sums() {
        for (p, k) in [(3u64, 5u32), (5, 4), (7, 3), (2, 8)] {
            let step = if p == 2 { 4 } else { p as i64 };
            for t in (step..60).step_by(step as usize) {
                let want = rational_log(p, k, t, 40);
                assert_eq!(
                    plog(&pi(p, k, 1 + t)).unwrap().residue(),
                    &want.to_biguint().unwrap()
                );
            }
        }
    }

    #[test]
    fn exp_example() {
        assert_eq!(pexp(&pi(5, 3, 55)).unwrap(), pi(5, 3, 6));
        assert_eq!(pexp(&pi(11, 4, 0)).unwrap(), pi(11, 4, 1));
        assert!(matches!(pexp(&pi(2, 6, 2)), Err(Error::DomainError(_))));
        assert!(matches!(pexp(&pi(5, 3, 1)), Err(Error::DomainError(_))));
    }

    #[test]
    fn closed_forms_for_length_three() {
        for p in [5u64, 7] {
            let half = crate::arith::inv_mod_prime(2, p).unwrap();
            for a1 in 0..p {
                for a2 in 0..p {
                    let x = WittVector::new(p, vec![1, a1, a2]).unwrap().to_padic();
                    let log = WittVector::from_padic(&plog(&x).unwrap());
                    let c = (a2 + p * p - half * a1 % p * a1 % p) % p;
                    assert_eq!(log.digits(), &[0, a1, c]);

                    let t = WittVector::new(p, vec![0, a1, a2]).unwrap().to_padic();
                    let e = WittVector::from_padic(&pexp(&t).unwrap());
                    let c = (a2 + half * a1 % p * a1) % p;
                    assert_eq!(e.digits(), &[1, a1, c]);
                }
            }
        }
    }

    #[test]
    fn polar_examples() {
        let f = polar(&PAdicNumber::from_integer(125, 5, 4).unwrap()).unwrap();
        assert_eq!((f.valuation, f.teich_digit), (3, 1));
        assert!(f.argument.is_zero());

        let t = pi(7, 5, 3).teichmuller();
        let f = polar(&PAdicNumber::from_padic_int(&t)).unwrap();
        assert_eq!((f.valuation, f.teich_digit), (0, 3));
        assert!(f.argument.is_zero());

        let x = num(5, 3, 6);
        let f = polar(&x).unwrap();
        assert_eq!((f.valuation, f.teich_digit), (0, 1));
        assert_eq!(f.argument, pi(5, 3, 55));
        assert_eq!(f.recompose().unwrap(), x);
        assert_eq!(polar(&PAdicNumber::Zero { p: 5 }), Err(Error::ZeroInput));
    }

    #[test]
    fn de_moivre_examples() {
        let t = PAdicNumber::from_padic_int(&pi(5, 4, 2).teichmuller());
        assert!(de_moivre_check(&t, &t).unwrap());
        assert!(polar(&t.try_mul(&t).unwrap()).unwrap().argument.is_zero());
        assert!(de_moivre_check(&num(5, 3, 6), &num(5, 3, 6)).unwrap());
        assert_eq!(plog(&pi(5, 3, 36)).unwrap(), pi(5, 3, 110));
    }

    #[test]
    fn exponent_parsing() {
        assert_eq!(
            "1/p^2".parse::<ExactExponent>().unwrap(),
            ExactExponent::new(1, 2)
        );
        assert_eq!(
            "-3/p".parse::<ExactExponent>().unwrap(),
            ExactExponent::new(-3, 1)
        );
        assert_eq!(
            "7".parse::<ExactExponent>().unwrap(),
            ExactExponent::integer(7)
        );
        assert!("1/3".parse::<ExactExponent>().is_err());
        assert_eq!(
            ExactExponent::new(10, 2).normalized(5),
            ExactExponent::new(2, 1)
        );
        assert_eq!(
            ExactExponent::new(25, 1).normalized(5),
            ExactExponent::new(5, 0)
        );
    }

    #[test]
    fn ppow_examples() {
        // (1 + 5)^5 ≡ 1 + 5^2 (mod 5^3) by the binomial theorem
        let x = num(5, 3, 6);
        let r = ppow(&x, &ExactExponent::integer(5)).unwrap();
        assert_eq!(r, num(5, 3, 26));
        assert_eq!(r, x.pow(&BigInt::from(5)).unwrap());
        assert_eq!(ppow(&x, &ExactExponent::integer(1)).unwrap(), x);
        assert_eq!(
            ppow(&x, &ExactExponent::new(1, 1)),
            Err(Error::RootCondition(RootReason::WittDigitNonzero(1)))
        );
        let y = PAdicNumber::from_integer(5 * 3, 5, 4).unwrap();
        assert_eq!(
            ppow(&y, &ExactExponent::new(1, 1)),
            Err(Error::RootCondition(RootReason::ValuationNotDivisible))
        );
    }

    #[test]
    fn ppow_root_of_three_at_eleven() {
        let x = num(11, 3, 3);
        let r = ppow(&x, &ExactExponent::new(1, 1)).unwrap();
        assert_eq!(r.precision(), Some(2));
        assert_eq!(r.unit().unwrap(), &pi(11, 2, 113));
        let back = ppow(&r, &ExactExponent::integer(11)).unwrap();
        assert_eq!(back.unit().unwrap().residue(), &BigUint::from(3u32));
    }

    #[test]
    fn ppow_negative_and_fractional() {
        let x = num(7, 6, 3);
        let inv = ppow(&x, &ExactExponent::integer(-1)).unwrap();
        assert_eq!(inv, x.inverse().unwrap());
        // 2^(1/2) does not exist 2-adically; 17^(1/2) does
        let r = ppow(&num(2, 10, 17), &ExactExponent::new(1, 1)).unwrap();
        let sq = r.pow(&BigInt::from(2)).unwrap();
        assert!(sq.congruent(&num(2, 10, 17)));
        assert_eq!(
            ppow(&num(2, 10, 3), &ExactExponent::new(1, 1)),
            Err(Error::RootCondition(RootReason::Mod8Failure))
        );
    }
}
