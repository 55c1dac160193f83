//! Human and JSON renderings. Output is deterministic for a given input.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde_json::{json, Value};
use witt_padic::{PAdicInt, PAdicNumber, PolarForm, WittVector};

const JSON_SAFE: u64 = 1 << 53;

/// Integers beyond ±2^53 become decimal strings.
pub fn big_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) if v.unsigned_abs() <= JSON_SAFE => json!(v),
        _ => Value::String(n.to_string()),
    }
}

pub fn residue_json(x: &PAdicInt) -> Value {
    json!({
        "p": x.p(),
        "precision": x.precision(),
        "residue": big_json(&BigInt::from(x.residue().clone())),
    })
}

pub fn number_json(x: &PAdicNumber) -> Value {
    match x {
        PAdicNumber::Zero { p } => json!({ "p": p, "zero": true }),
        PAdicNumber::Nonzero { valuation, unit } => json!({
            "p": unit.p(),
            "valuation": valuation,
            "unit": residue_json(unit),
        }),
    }
}

pub fn witt_json(w: &WittVector) -> Value {
    serde_json::to_value(w).expect("Witt vectors serialize")
}

pub fn polar_json(f: &PolarForm) -> Value {
    json!({
        "p": f.p,
        "valuation": f.valuation,
        "teich_digit": f.teich_digit,
        "argument": residue_json(&f.argument),
    })
}

/// `113 (mod 11^2)`, or `113 ≡ -8 (mod 11^2)` with the signed form when it differs.
pub fn residue_human(x: &PAdicInt, signed: bool) -> String {
    let s = x.signed_residue();
    if signed && s.is_negative() {
        format!("{} ≡ {} (mod {}^{})", x.residue(), s, x.p(), x.precision())
    } else {
        format!("{} (mod {}^{})", x.residue(), x.p(), x.precision())
    }
}

pub fn number_human(x: &PAdicNumber, signed: bool) -> String {
    match x {
        PAdicNumber::Zero { .. } => "0".into(),
        PAdicNumber::Nonzero { valuation: 0, unit } => residue_human(unit, signed),
        PAdicNumber::Nonzero { valuation, unit } => {
            format!(
                "{}^{} * {}",
                unit.p(),
                valuation,
                residue_human(unit, signed)
            )
        }
    }
}

pub fn witt_human(w: &WittVector) -> String {
    w.to_string()
}

pub fn polar_human(f: &PolarForm, signed: bool) -> String {
    format!(
        "valuation: {}\nteichmuller digit: {}\nargument: {}",
        f.valuation,
        f.teich_digit,
        residue_human(&f.argument, signed)
    )
}

/// Wraps a result in the `{"ok", "result", "precision", "reason"}` envelope.
pub fn envelope(ok: bool, result: Value, precision: u32, reason: Option<&str>) -> Value {
    let mut v = json!({ "ok": ok, "result": result, "precision": precision });
    if let Some(r) = reason {
        v["reason"] = Value::String(r.to_string());
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residue_renderings() {
        let x = PAdicInt::new(11, 2, 113).unwrap();
        assert_eq!(residue_human(&x, true), "113 ≡ -8 (mod 11^2)");
        assert_eq!(residue_human(&x, false), "113 (mod 11^2)");
        assert_eq!(
            residue_human(&PAdicInt::new(11, 2, 3).unwrap(), true),
            "3 (mod 11^2)"
        );
    }

    #[test]
    fn witt_rendering() {
        let w = WittVector::new(11, vec![3, 0]).unwrap();
        assert_eq!(witt_human(&w), "(3,0]");
        assert_eq!(witt_json(&w).to_string(), r#"{"p":11,"digits":[3,0]}"#);
    }

    #[test]
    fn large_numbers_become_strings() {
        assert_eq!(
            big_json(&BigInt::from(1u64 << 53)),
            json!(9007199254740992u64)
        );
        assert_eq!(
            big_json(&(BigInt::from(1u64 << 53) + 1)),
            json!("9007199254740993")
        );
        assert_eq!(big_json(&-BigInt::from(5)), json!(-5));
    }

    #[test]
    fn envelope_layout() {
        let v = envelope(true, json!([1093, 3511]), 8, None);
        assert_eq!(
            v.to_string(),
            r#"{"ok":true,"result":[1093,3511],"precision":8}"#
        );
        let v = envelope(false, Value::Null, 4, Some("x"));
        assert_eq!(
            v.to_string(),
            r#"{"ok":false,"result":null,"precision":4,"reason":"x"}"#
        );
    }
}
