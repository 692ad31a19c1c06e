//! Plain-text explicit lists.
//!
//! One value per line (decimal or scientific notation) for `j = 1, 2, …`,
//! then a closing tail directive:
//!
//! ```text
//! 1
//! 0.5
//! 2.5e-1
//! tail geometric q=0.5
//! ```
//!
//! `tail zero` is the other accepted directive. Blank lines and lines
//! starting with `#` are ignored.

use std::path::Path;

use super::{Family, Role, SeqError, SequenceModel, Tail};

fn parse_tail(rest: &str, line: usize) -> Result<Tail, SeqError> {
    let parse_err = |message: String| SeqError::Parse { line, message };
    let mut words = rest.split_whitespace();
    match words.next() {
        Some("zero") => {
            if let Some(extra) = words.next() {
                return Err(parse_err(format!("unexpected `{extra}` after `tail zero`")));
            }
            Ok(Tail::Zero)
        }
        Some("geometric") => {
            let arg = words
                .next()
                .ok_or_else(|| parse_err("`tail geometric` needs `q=<value>`".into()))?;
            let value = arg
                .strip_prefix("q=")
                .ok_or_else(|| parse_err(format!("expected `q=<value>`, got `{arg}`")))?;
            let q: f64 = value
                .parse()
                .map_err(|_| parse_err(format!("invalid tail ratio `{value}`")))?;
            if let Some(extra) = words.next() {
                return Err(parse_err(format!("unexpected `{extra}` after tail ratio")));
            }
            Ok(Tail::Geometric { q })
        }
        Some(other) => Err(parse_err(format!("unknown tail rule `{other}`"))),
        None => Err(parse_err("empty tail directive".into())),
    }
}

/// Parses list text into values and a tail rule. Syntax only; range and
/// monotonicity checks happen when the model is built.
pub fn parse_list(text: &str) -> Result<(Vec<f64>, Tail), SeqError> {
    let mut values = Vec::new();
    let mut tail = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        if tail.is_some() {
            return Err(SeqError::Parse {
                line,
                message: "content after the tail directive".into(),
            });
        }
        if let Some(rest) = trimmed.strip_prefix("tail") {
            tail = Some(parse_tail(rest, line)?);
            continue;
        }
        let v: f64 = trimmed.parse().map_err(|_| SeqError::Parse {
            line,
            message: format!("not a number: `{trimmed}`"),
        })?;
        values.push(v);
    }
    let tail = tail.ok_or(SeqError::Parse {
        line: text.lines().count(),
        message: "missing tail directive (`tail zero` or `tail geometric q=<value>`)".into(),
    })?;
    Ok((values, tail))
}

/// Parses list text and validates it for the given role.
pub fn model_from_list_text(role: Role, text: &str) -> Result<SequenceModel, SeqError> {
    let (values, tail) = parse_list(text)?;
    SequenceModel::new(role, Family::List { values, tail })
}

pub fn load_list_file(role: Role, path: &Path) -> Result<SequenceModel, SeqError> {
    let text = std::fs::read_to_string(path).map_err(|e| SeqError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    model_from_list_text(role, &text)
}
