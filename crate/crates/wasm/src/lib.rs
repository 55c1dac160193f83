//! Browser bindings for `witt-padic`. Every function returns a JSON string
//! `{"ok": true, "result": ...}` or `{"ok": false, "reason": "..."}`.

use num_bigint::BigInt;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;
use witt_padic::{
    fermat_quotient, general_root, parse_witt, wieferich_search, Error, PAdicInt, PAdicNumber,
    WittVector,
};

// Keep the page responsive.
const MAX_PRECISION: u32 = 64;
const MAX_WIEFERICH_LIMIT: u64 = 10_000_000;

fn reply(result: Result<Value, String>) -> String {
    match result {
        Ok(v) => json!({ "ok": true, "result": v }).to_string(),
        Err(reason) => json!({ "ok": false, "reason": reason }).to_string(),
    }
}

fn err(e: Error) -> String {
    e.to_string()
}

fn check_precision(k: u32) -> Result<u32, String> {
    if k == 0 || k > MAX_PRECISION {
        return Err(format!("precision must be between 1 and {MAX_PRECISION}"));
    }
    Ok(k)
}

fn parse_rational(s: &str) -> Result<(BigInt, BigInt), String> {
    let int = |t: &str| {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| format!("not an integer or m/n: {s:?}"))
    };
    match s.split_once('/') {
        Some((m, n)) => Ok((int(m)?, int(n)?)),
        None => Ok((int(s)?, BigInt::from(1))),
    }
}

fn residue(x: &PAdicInt) -> Value {
    json!({ "residue": x.residue().to_string(), "signed": x.signed_residue().to_string(), "precision": x.precision() })
}

fn convert_value(p: u64, value: &str, precision: u32) -> Result<Value, String> {
    let k = check_precision(precision)?;
    let w = if value.trim_start().starts_with('(') {
        parse_witt(value, p).map_err(err)?
    } else {
        let (m, n) = parse_rational(value)?;
        WittVector::from_rational(m, n, p, k as usize).map_err(err)?
    };
    Ok(json!({
        "witt": w.to_string(),
        "digits": w.digits(),
        "residue": residue(&w.to_padic()),
        "base_p": w.to_padic().digit_expansion(),
    }))
}

/// Witt vector, residue and base-p digits of an integer, `m/n` or `(x0,x1,...]`.
#[wasm_bindgen]
pub fn convert(p: u64, value: &str, precision: u32) -> String {
    reply(convert_value(p, value, precision))
}

fn root_value(p: u64, degree: u64, value: &str, precision: u32) -> Result<Value, String> {
    let k = check_precision(precision)?;
    let (m, n) = parse_rational(value)?;
    let x = PAdicNumber::from_rational(m, n, p, k).map_err(err)?;
    let report = general_root(&x, degree).map_err(err)?;
    if !report.exists {
        let mut reason = report.reason.to_string();
        if let (Some(unit), Ok(q)) = (x.unit(), fermat_quotient(&x)) {
            reason.push_str(&format!("; q_1 ≡ {} (mod {})", q.mod_p(), unit.p()));
        }
        return Err(reason);
    }
    let roots: Vec<Value> = report
        .roots
        .iter()
        .map(|r| match r {
            PAdicNumber::Zero { .. } => json!({ "zero": true }),
            PAdicNumber::Nonzero { valuation, unit } => {
                let mut v = residue(unit);
                v["valuation"] = json!(valuation);
                v
            }
        })
        .collect();
    Ok(json!({ "degree": degree, "output_precision": report.output_precision, "roots": roots }))
}

/// All `degree`-th roots of a rational in Q_p, or the reason there are none.
#[wasm_bindgen]
pub fn root(p: u64, degree: u64, value: &str, precision: u32) -> String {
    reply(root_value(p, degree, value, precision))
}

/// Odd primes `p ≤ limit` with `base^(p-1) ≡ 1 (mod p^2)`.
#[wasm_bindgen]
pub fn wieferich(base: u64, limit: u64) -> String {
    if limit > MAX_WIEFERICH_LIMIT {
        return reply(Err(format!("limit must be at most {MAX_WIEFERICH_LIMIT}")));
    }
    reply(Ok(json!(wieferich_search(base, limit))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: String) -> Value {
        serde_json::from_str(&s).unwrap()
    }

    #[test]
    fn convert_two_mod_27() {
        let v = parse(convert(3, "2", 3));
        assert_eq!(v["result"]["witt"], "(2,1,0]");
        assert_eq!(v["result"]["residue"]["residue"], "2");
        let back = parse(convert(11, "(3,-1]", 2));
        assert_eq!(back["result"]["residue"]["signed"], "-8");
    }

    #[test]
    fn roots() {
        let v = parse(root(11, 11, "3", 3));
        assert_eq!(v["result"]["roots"][0]["residue"], "113");
        let v = parse(root(5, 5, "2", 4));
        assert_eq!(v["ok"], false);
        assert_eq!(v["reason"], "Witt digit 1 nonzero; q_1 ≡ 3 (mod 5)");
        let v = parse(root(2, 2, "17", 10));
        assert_eq!(v["result"]["roots"].as_array().unwrap().len(), 2);
    }

    #[test]
    fn bad_input() {
        assert_eq!(parse(convert(4, "1", 3))["ok"], false);
        assert_eq!(parse(convert(5, "x", 3))["ok"], false);
        assert_eq!(parse(root(5, 2, "1", 0))["ok"], false);
        assert_eq!(parse(wieferich(2, u64::MAX))["ok"], false);
    }

    #[test]
    fn wieferich_primes() {
        assert_eq!(wieferich(2, 10_000), r#"{"ok":true,"result":[1093,3511]}"#);
    }
}
