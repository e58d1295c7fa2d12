//! Browser bindings for the demo page in `www/`.
//!
//! Each export is a thin wrapper over a plain function that returns
//! `Result<String, String>`, so the logic is testable off the browser.

use quiver_lr::{fiber_class, verify_theorem1, Instance, LrEngine, Partition};
use wasm_bindgen::prelude::*;

/// `c^ν_{λμ}` for partitions written as `(3,1)`.
pub fn lr_text(lambda: &str, mu: &str, nu: &str) -> Result<String, String> {
    let parse = |s: &str| s.trim().parse::<Partition>().map_err(|e| format!("{s:?}: {e}"));
    let (l, m, n) = (parse(lambda)?, parse(mu)?, parse(nu)?);
    Ok(LrEngine::new().lr_coefficient(&l, &m, &n).to_string())
}

/// Subrepresentation count and semi-invariant dimension for an instance
/// with zero Euler pairing.
pub fn counts_text(instance: &str) -> Result<String, String> {
    let inst: Instance = instance.parse().map_err(|e| format!("{e}"))?;
    let report = verify_theorem1(&LrEngine::new(), &inst.quiver, &inst.beta, &inst.alpha).map_err(|e| e.to_string())?;
    let mut out = format!(
        "N = {}\nM = {}\nsigma = {}\nlabelings examined = {}\n",
        report.n_value, report.m_value, report.sigma, report.labelings_examined
    );
    for s in &report.summands {
        out.push_str(&format!("  {} -> {}\n", s.labeling, s.value));
    }
    Ok(out)
}

/// Fiber class of an instance with nonnegative Euler pairing, one
/// `labeling = coefficient` line per term.
pub fn fiber_class_text(instance: &str) -> Result<String, String> {
    let inst: Instance = instance.parse().map_err(|e| format!("{e}"))?;
    let fc = fiber_class(&LrEngine::new(), &inst.quiver, &inst.beta, &inst.alpha).map_err(|e| e.to_string())?;
    if fc.coeffs.is_empty() {
        return Ok("(zero class)\n".into());
    }
    Ok(fc.coeffs.iter().map(|(k, c)| format!("{k} = {c}\n")).collect())
}

fn to_js(r: Result<String, String>) -> Result<String, JsValue> {
    r.map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn lr_coefficient(lambda: &str, mu: &str, nu: &str) -> Result<String, JsValue> {
    to_js(lr_text(lambda, mu, nu))
}

#[wasm_bindgen]
pub fn counts(instance: &str) -> Result<String, JsValue> {
    to_js(counts_text(instance))
}

#[wasm_bindgen(js_name = fiberClass)]
pub fn fiber_class_js(instance: &str) -> Result<String, JsValue> {
    to_js(fiber_class_text(instance))
}
