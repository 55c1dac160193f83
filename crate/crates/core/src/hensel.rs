//! k-th roots of units when `p ∤ k`: residue test mod p, a root mod p, and
//! Newton lifting to mod p^K.

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;

use crate::arith::{gcd, inv_mod_prime, mul_mod, pow_mod, prime_factors};
use crate::error::{Error, Result};
use crate::padic::PAdicInt;

fn check_degree(p: u64, k: u64) -> Result<()> {
    if k == 0 {
        return Err(Error::DomainError("degree must be positive".into()));
    }
    if k.is_multiple_of(p) {
        return Err(Error::InvalidDegree { p, degree: k });
    }
    Ok(())
}

/// Whether the unit `a` is a k-th power mod p, i.e. `a^((p-1)/g) ≡ 1` with `g = gcd(k, p-1)`.
pub fn kth_power_residue_test(p: u64, a: u64, k: u64) -> Result<bool> {
    crate::arith::check_prime(p)?;
    check_degree(p, k)?;
    if a.is_multiple_of(p) {
        return Err(Error::NotAUnit { p });
    }
    Ok(is_kth_power(a % p, k, p))
}

fn is_kth_power(a: u64, k: u64, p: u64) -> bool {
    let g = gcd(k, p - 1);
    pow_mod(a, (p - 1) / g, p) == 1
}

/// A generator of the g-th roots of unity mod p; `g` must divide `p - 1`.
fn primitive_root_of_unity(g: u64, p: u64) -> u64 {
    if g == 1 {
        return 1;
    }
    let factors = prime_factors(g);
    (2..p)
        .map(|h| pow_mod(h, (p - 1) / g, p))
        .find(|&z| factors.iter().all(|&r| pow_mod(z, g / r, p) != 1))
        .expect("the unit group mod p is cyclic")
}

/// An r-th root of an r-th power `a` mod p, r prime (Adleman-Manders-Miller).
fn prime_degree_root(a: u64, r: u64, p: u64) -> u64 {
    if !(p - 1).is_multiple_of(r) {
        let e = inverse_mod(r, p - 1);
        return pow_mod(a, e, p);
    }
    let mut s = 0u32;
    let mut t = p - 1;
    while t.is_multiple_of(r) {
        t /= r;
        s += 1;
    }
    let h = (2..p)
        .find(|&h| pow_mod(h, (p - 1) / r, p) != 1)
        .expect("an r-th power non-residue exists when r | p - 1");
    // c generates the Sylow r-subgroup, of order r^s
    let c = pow_mod(h, t, p);
    let alpha = if t == 1 { 0 } else { inverse_mod(r % t, t) };
    let x0 = pow_mod(a, alpha, p);
    // x0^r = a * err with err in the subgroup of order r^(s-1); correct by delta^r = err^-1
    let a_inv = inv_mod_prime(a, p).expect("unit");
    let err = mul_mod(pow_mod(x0, r, p), a_inv, p);
    let target = inv_mod_prime(err, p).expect("unit");
    let log = sylow_log(target, c, r, s, p);
    debug_assert_eq!(log % r, 0);
    let delta = pow_mod(c, log / r, p);
    mul_mod(x0, delta, p)
}

/// Discrete log of `y` to base `c`, where `c` has order `r^s` (Pohlig-Hellman).
fn sylow_log(y: u64, c: u64, r: u64, s: u32, p: u64) -> u64 {
    let order_r = |e: u32| r.pow(e);
    let gamma = pow_mod(c, order_r(s - 1), p);
    let c_inv = inv_mod_prime(c, p).expect("unit");
    let mut log = 0u64;
    for i in 0..s {
        let shifted = mul_mod(y, pow_mod(c_inv, log, p), p);
        let h = pow_mod(shifted, order_r(s - 1 - i), p);
        let mut acc = 1u64;
        let mut digit = 0u64;
        while acc != h {
            acc = mul_mod(acc, gamma, p);
            digit += 1;
            debug_assert!(digit < r, "element outside the Sylow subgroup");
        }
        log += digit * order_r(i);
    }
    log
}

fn inverse_mod(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    BigUint::from(a)
        .modinv(&BigUint::from(m))
        .and_then(|v| v.to_u64())
        .expect("coprime arguments")
}

/// All k-th roots of the unit `a` mod p, ascending.
pub fn kth_roots_mod_p(a: u64, k: u64, p: u64) -> Vec<u64> {
    let a = a % p;
    if a == 0 || !is_kth_power(a, k, p) {
        return Vec::new();
    }
    let g = gcd(k, p - 1);
    // solve y^g = a one prime factor at a time, steering each step onto a further power
    let mut y = a;
    let mut remaining = g;
    let mut factors = Vec::new();
    let mut rest = g;
    for r in prime_factors(g) {
        while rest.is_multiple_of(r) {
            factors.push(r);
            rest /= r;
        }
    }
    for r in factors {
        remaining /= r;
        let base = prime_degree_root(y, r, p);
        let zeta = primitive_root_of_unity(r, p);
        let mut cand = base;
        for _ in 0..r {
            if is_kth_power(cand, remaining, p) {
                break;
            }
            cand = mul_mod(cand, zeta, p);
        }
        debug_assert_eq!(pow_mod(cand, r, p), y);
        y = cand;
    }
    let x = pow_mod(y, inverse_mod(k / g, (p - 1) / g), p);
    debug_assert_eq!(pow_mod(x, k, p), a);
    let zeta = primitive_root_of_unity(g, p);
    let mut roots: Vec<u64> = std::iter::successors(Some(x), |&r| Some(mul_mod(r, zeta, p)))
        .take(g as usize)
        .collect();
    roots.sort_unstable();
    roots
}

/// Lifts a simple root of `r^k = a` from mod p to mod p^K by Newton iteration.
fn newton_lift(a: &PAdicInt, k: u64, start: u64) -> PAdicInt {
    let p = a.p();
    let precision = a.precision();
    let kk = BigInt::from(k);
    let k_big = BigUint::from(k);
    let k_minus = BigUint::from(k - 1);
    let mut r = PAdicInt::from_parts(p, precision, BigUint::from(start));
    // quadratic convergence: correct digits double each step
    for _ in 0..=(u32::BITS - precision.leading_zeros()) {
        let f = &r.pow(&k_big) - a;
        if f.is_zero() {
            break;
        }
        let df = r.pow(&k_minus).scale(&kk);
        let step = &f * &df.unit_inverse().expect("derivative is a unit");
        r = &r - &step;
    }
    debug_assert_eq!(r.pow(&k_big), *a);
    r
}

/// Every `r` with `r^k ≡ a (mod p^K)` for a unit `a` and `p ∤ k`, ascending by residue.
///
/// The set has `gcd(k, p - 1)` elements when `a mod p` is a k-th power, else none.
pub fn hensel_kth_root(a: &PAdicInt, k: u64) -> Result<Vec<PAdicInt>> {
    let p = a.p();
    check_degree(p, k)?;
    if !a.is_unit() {
        return Err(Error::NotAUnit { p });
    }
    let mut roots: Vec<PAdicInt> = kth_roots_mod_p(a.mod_p(), k, p)
        .into_iter()
        .map(|r0| newton_lift(a, k, r0))
        .collect();
    roots.sort_by(|x, y| x.residue().cmp(y.residue()));
    Ok(roots)
}
