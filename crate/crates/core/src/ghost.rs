//! Integer coordinates of `n * 1` in the Witt ring over the integers.
//!
//! The entries `a_0, a_1, ...` are the unique integers whose ghost components
//! `a_0^(p^j) + p a_1^(p^(j-1)) + ... + p^j a_j` all equal `n`. Their values grow
//! like `n^(p^k)`, so the length is capped.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::arith::check_prime;
use crate::error::{Error, Result};

/// Caps on the exact ghost recursion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GhostLimits {
    /// Largest index `k` of the last entry `a_k`.
    pub max_length: usize,
    /// Upper bound on the bit length of the largest intermediate power.
    pub max_bits: u64,
}

impl Default for GhostLimits {
    fn default() -> Self {
        Self {
            max_length: 8,
            max_bits: 1 << 22,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GhostSequence {
    p: u64,
    n: BigInt,
    entries: Vec<BigInt>,
    quotients: Option<Vec<BigInt>>,
}

impl GhostSequence {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> &BigInt {
        &self.n
    }

    /// `a_0, ..., a_k`.
    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    /// `q_i(n) = -a_i / n`; `q_1` is the Fermat quotient `(n^(p-1) - 1) / p`.
    pub fn quotients(&self) -> Result<&[BigInt]> {
        self.quotients.as_deref().ok_or_else(|| Error::NotCoprime {
            p: self.p,
            value: self.n.to_string(),
        })
    }

    /// Entry `a_i` reduced mod p, i.e. the i-th Witt digit of `n`.
    pub fn digit(&self, i: usize) -> u64 {
        self.entries[i]
            .mod_floor(&BigInt::from(self.p))
            .to_u64()
            .expect("digit below p")
    }
}

/// Ghost component `Φ_j(a_0, ..., a_j)` with `j = entries.len() - 1`.
pub fn ghost_component(p: u64, entries: &[BigInt]) -> BigInt {
    let j = entries.len() as u32 - 1;
    entries
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let i = i as u32;
            BigInt::from(p).pow(i) * a.pow(u32_pow(p, j - i))
        })
        .sum()
}

fn u32_pow(p: u64, e: u32) -> u32 {
    p.checked_pow(e)
        .and_then(|v| u32::try_from(v).ok())
        .expect("ghost exponent exceeds u32; length limit should prevent this")
}

fn exact_div(num: &BigInt, den: &BigInt) -> Result<BigInt> {
    let (q, r) = num.div_rem(den);
    if r.is_zero() {
        Ok(q)
    } else {
        Err(Error::ExactDivisionFailure)
    }
}

/// Computes `a_0, ..., a_k` for `n` by the exact recursion
/// `a_{k+1} = Σ_{i≤k} (a_i^(p^(k-i)) - a_i^(p^(k-i+1))) / p^(k-i+1)`.
///
/// Every division in the recursion is exact; quotients `q_i` are filled in when `p ∤ n`.
pub fn ghost_sequence(
    n: impl Into<BigInt>,
    p: u64,
    k: usize,
    limits: GhostLimits,
) -> Result<GhostSequence> {
    check_prime(p)?;
    let n = n.into();
    if k > limits.max_length {
        return Err(Error::LengthLimit {
            requested: k,
            limit: limits.max_length,
        });
    }
    // a_0^(p^k) dominates: its size is bits(n) * p^k
    let bits = n.bits().max(1) as f64 * (p as f64).powi(k as i32 + 1);
    if bits > limits.max_bits as f64 {
        return Err(Error::LengthLimit {
            requested: k,
            limit: max_length_for(&n, p, limits),
        });
    }

    let pb = BigInt::from(p);
    let mut entries = vec![n.clone()];
    // powers[i] holds a_i^(p^(step - i))
    let mut powers = vec![n.clone()];
    for step in 0..k {
        let mut next = BigInt::zero();
        for (i, power) in powers.iter_mut().enumerate() {
            let raised = power.pow(p as u32);
            let den = pb.pow((step - i + 1) as u32);
            next += exact_div(&(&*power - &raised), &den)?;
            *power = raised;
        }
        entries.push(next.clone());
        powers.push(next);
    }

    let quotients = if (&n % &pb).is_zero() {
        None
    } else {
        Some(
            entries
                .iter()
                .map(|a| exact_div(&-a, &n))
                .collect::<Result<Vec<_>>>()?,
        )
    };
    Ok(GhostSequence {
        p,
        n,
        entries,
        quotients,
    })
}

fn max_length_for(n: &BigInt, p: u64, limits: GhostLimits) -> usize {
    let mut k = 0usize;
    let bits = n.bits().max(1) as f64;
    while k < limits.max_length && bits * (p as f64).powi(k as i32 + 2) <= limits.max_bits as f64 {
        k += 1;
    }
    k
}

/// The classical Fermat quotient `(n^(p-1) - 1) / p` of an integer prime to `p`.
pub fn integer_fermat_quotient(n: &BigInt, p: u64) -> Result<BigInt> {
    check_prime(p)?;
    let pb = BigInt::from(p);
    if (n % &pb).is_zero() {
        return Err(Error::NotCoprime {
            p,
            value: n.to_string(),
        });
    }
    let e = u32::try_from(p - 1)
        .map_err(|_| Error::DomainError("p too large for an exact power".into()))?;
    exact_div(&(n.pow(e) - 1), &pb)
}
