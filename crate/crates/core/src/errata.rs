//! Line-level corrections to transcribed data files.
//!
//! An errata file holds `line: replacement` entries, with 1-based line numbers
//! into the file being corrected. Blank lines and `#` comments are ignored.

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Erratum {
    pub line: usize,
    pub replacement: String,
}

pub fn parse(errata: &str) -> Result<Vec<Erratum>> {
    let mut out = Vec::new();
    for (ln, raw) in errata.lines().enumerate() {
        let raw = raw.trim();
        if raw.is_empty() || raw.starts_with('#') {
            continue;
        }
        let err = |msg: String| Error::ParseAt { line: ln + 1, msg };
        let (n, rep) = raw
            .split_once(':')
            .ok_or_else(|| err("expected `line: replacement`".into()))?;
        let line = n
            .trim()
            .parse()
            .map_err(|_| err(format!("bad line number `{}`", n.trim())))?;
        out.push(Erratum {
            line,
            replacement: rep.trim().to_string(),
        });
    }
    Ok(out)
}

/// Replace the listed lines of `text`.
pub fn apply(text: &str, errata: &[Erratum]) -> Result<String> {
    let mut lines: Vec<&str> = text.lines().collect();
    for e in errata {
        if e.line == 0 || e.line > lines.len() {
            return Err(Error::Invalid(format!(
                "erratum for line {} outside a {}-line file",
                e.line,
                lines.len()
            )));
        }
        lines[e.line - 1] = &e.replacement;
    }
    let mut s = lines.join("\n");
    s.push('\n');
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn replaces_numbered_lines() {
        let e = parse("# fixes\n2: b2\n").unwrap();
        assert_eq!(apply("a\nb\nc", &e).unwrap(), "a\nb2\nc\n");
        assert!(apply("a", &e).is_err());
    }
}
