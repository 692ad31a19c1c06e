//! CSV cell formatting.

/// Shortest decimal that parses back to the same `f64`. Infinities are
/// `inf` / `-inf`; the value is written in exponent form outside `[1e-5, 1e16)`.
pub fn float(x: f64) -> String {
    format!("{x:?}")
}

pub fn opt_float(x: Option<f64>) -> String {
    x.map(float).unwrap_or_default()
}

/// Quotes a field when it contains a separator, quote or newline.
pub fn text(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
