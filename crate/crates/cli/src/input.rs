//! Loading patterns and host matrices from files or built-in names.

use std::fs;

use anyhow::{bail, Context, Result};
use satmat_core::constructions::{
    gen_named, pattern_q, pattern_q_double_prime, pattern_q_prime, Named,
};
use satmat_core::{HostMatrix, Pattern};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

/// Resolves `@I3`, `@I'3`, `@J4`, `@J'4`, `@Q`, `@Q'` and `@Q''`.
pub fn builtin(name: &str) -> Result<Pattern> {
    let pattern = match name {
        "Q" => pattern_q(),
        "Q'" => pattern_q_prime(),
        "Q''" => pattern_q_double_prime(),
        _ => {
            let (family, rest) = match name.split_at_checked(1) {
                Some(("I", rest)) => (Named::Identity, rest),
                Some(("J", rest)) => (Named::Jk, rest),
                _ => bail!("unknown built-in pattern @{name}"),
            };
            let (family, digits) = match rest.strip_prefix('\'') {
                Some(d) if family == Named::Identity => (Named::IdentityReflected, d),
                Some(d) => (Named::JkReflected, d),
                None => (family, rest),
            };
            let k: usize = digits
                .parse()
                .with_context(|| format!("unknown built-in pattern @{name}"))?;
            gen_named(family, k).with_context(|| format!("built-in pattern @{name}"))?
        }
    };
    Ok(pattern)
}

pub fn load_pattern(source: &str) -> Result<Pattern> {
    if let Some(name) = source.strip_prefix('@') {
        return builtin(name);
    }
    let text = fs::read_to_string(source).with_context(|| format!("pattern file {source}"))?;
    Pattern::parse(&text).with_context(|| format!("pattern file {source}"))
}

pub fn load_matrix(source: &str) -> Result<HostMatrix> {
    let text = fs::read_to_string(source).with_context(|| format!("matrix file {source}"))?;
    HostMatrix::parse(&text).with_context(|| format!("matrix file {source}"))
}

/// Short SHA-256 of the binary rendering.
pub fn digest(rows: &[String]) -> String {
    let mut h = Sha256::new();
    for r in rows {
        h.update(r.as_bytes());
        h.update(b"\n");
    }
    let full = format!("{:x}", h.finalize());
    full[..16].to_string()
}

/// Report entry describing an input matrix.
pub fn describe(source: &str, rows: usize, cols: usize, lines: Vec<String>) -> Value {
    json!({
        "source": source,
        "rows": rows,
        "cols": cols,
        "digest": digest(&lines),
        "matrix": lines,
    })
}
