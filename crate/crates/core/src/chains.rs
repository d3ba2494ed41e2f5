//! Lowering words applied to a fixed vector, with expected projections.

use crate::error::{Error, Result};
use crate::liealg::{ChevalleyBasis, LieElem};
use crate::poly::{parse_expr, Poly};
use crate::symalg::{adjoint_chain, chevalley_projection, SymElem};
use crate::uea::{Uea, UeaElem};
use crate::Q;

/// One line `name | word | polynomial` of a projection file.
#[derive(Clone, Debug)]
pub struct ChainSpec {
    pub name: String,
    /// Basis indices as printed; the rightmost factor acts first.
    pub word: Vec<usize>,
    pub expected: Option<Poly<Q>>,
}

impl ChainSpec {
    /// Operators in the order they act.
    pub fn action_order(&self, g: &ChevalleyBasis) -> Vec<LieElem<Q>> {
        self.word.iter().rev().map(|k| g.basis(*k)).collect()
    }

    pub fn word_text(&self, g: &ChevalleyBasis) -> String {
        self.word
            .iter()
            .map(|k| g.name(*k))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

pub fn parse_word(g: &ChevalleyBasis, s: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for tok in s.split_whitespace() {
        let (name, p) = tok.split_once('^').unwrap_or((tok, "1"));
        let idx = g.parse_name(name)?;
        let p: usize = p
            .parse()
            .map_err(|_| Error::Parse(format!("bad power `{p}`")))?;
        out.extend(std::iter::repeat_n(idx, p));
    }
    Ok(out)
}

pub fn parse_specs(g: &ChevalleyBasis, text: &str) -> Result<Vec<ChainSpec>> {
    let mut out = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |e: Error| Error::ParseAt {
            line: ln + 1,
            msg: e.to_string(),
        };
        let parts: Vec<&str> = line.split('|').map(str::trim).collect();
        if parts.len() < 2 || parts.len() > 3 {
            return Err(Error::ParseAt {
                line: ln + 1,
                msg: "expected `name | word | polynomial`".into(),
            });
        }
        let word = parse_word(g, parts[1]).map_err(err)?;
        let expected = match parts.get(2) {
            Some(p) if !p.is_empty() => Some(parse_expr(p, g.rank).map_err(err)?),
            _ => None,
        };
        out.push(ChainSpec {
            name: parts[0].to_string(),
            word,
            expected,
        });
    }
    Ok(out)
}

/// Harish-Chandra projection of `(word)_L u`.
pub fn uea_projection(u: &Uea<Q>, spec: &ChainSpec, v: &UeaElem<Q>) -> Poly<Q> {
    u.harish_chandra(&u.apply_lowering_chain(&spec.action_order(&u.g), v))
}

/// Chevalley projection of `ad(word) s`.
pub fn sym_projection(g: &ChevalleyBasis, spec: &ChainSpec, s: &SymElem<Q>) -> Poly<Q> {
    chevalley_projection(g, &adjoint_chain(g, &spec.action_order(g), s))
}
