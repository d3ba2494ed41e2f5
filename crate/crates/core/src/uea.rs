//! Universal enveloping algebra in the PBW basis `f's < h's < e's`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::liealg::{ChevalleyBasis, GenKind, LieElem};
use crate::lincomb::LinComb;
use crate::pbw::{Pbw, PbwBracket, PbwElem};
use crate::poly::{Mono, Poly};
use crate::scalar::{parse_q, Scalar};
use crate::Q;

/// Chevalley-basis bracket for the PBW engine.
pub struct ChevBracket(pub Arc<ChevalleyBasis>);

impl PbwBracket for ChevBracket {
    type Gen = usize;

    fn bracket(&self, a: &usize, b: &usize) -> Vec<(usize, i64)> {
        self.0.bracket_basis(*a, *b).to_vec()
    }
}

/// Element of `U(g)`: normal-ordered monomials of basis indices.
pub type UeaElem<S = Q> = PbwElem<usize, S>;

/// `U(g)` for a fixed Chevalley basis.
pub struct Uea<S = Q> {
    pub g: Arc<ChevalleyBasis>,
    pbw: Pbw<ChevBracket, S>,
}

impl<S: Scalar> Uea<S> {
    pub fn new(g: Arc<ChevalleyBasis>) -> Self {
        Uea {
            pbw: Pbw::new(ChevBracket(g.clone())),
            g,
        }
    }

    pub fn one(&self) -> UeaElem<S> {
        LinComb::single(Vec::new(), S::one())
    }

    pub fn gen(&self, idx: usize) -> UeaElem<S> {
        LinComb::single(vec![idx], S::one())
    }

    pub fn from_lie(&self, x: &LieElem<S>) -> UeaElem<S> {
        x.iter().map(|(k, c)| (vec![*k], c.clone())).collect()
    }

    /// Normal-ordered product of a word of basis indices.
    pub fn word(&self, w: &[usize]) -> UeaElem<S> {
        self.pbw.normal_order(w)
    }

    pub fn multiply(&self, a: &UeaElem<S>, b: &UeaElem<S>) -> UeaElem<S> {
        self.pbw.multiply(a, b)
    }

    /// `x_L u = [x, u]`.
    pub fn left_adjoint(&self, x: &LieElem<S>, u: &UeaElem<S>) -> UeaElem<S> {
        self.pbw.derivation(u, |y| {
            let mut out = LieElem::new();
            for (a, c) in x {
                for (k, v) in self.g.bracket_basis(*a, *y) {
                    out.add_term(*k, c.clone() * S::int(*v));
                }
            }
            out.into_iter().collect()
        })
    }

    /// Apply `(x_1)_L, (x_2)_L, …` in list order.
    pub fn apply_lowering_chain(&self, chain: &[LieElem<S>], u: &UeaElem<S>) -> UeaElem<S> {
        chain
            .iter()
            .fold(u.clone(), |acc, x| self.left_adjoint(x, &acc))
    }

    /// Harish-Chandra projection: the part with no root-vector factors, as a polynomial in `h_1..h_l`.
    pub fn harish_chandra(&self, u: &UeaElem<S>) -> Poly<S> {
        let l = self.g.rank;
        let mut out = Poly::zero(l);
        for (m, c) in u {
            if m.iter().all(|k| matches!(self.g.kind(*k), GenKind::H(_))) {
                let mut e = Mono::one(l);
                for k in m {
                    if let GenKind::H(i) = self.g.kind(*k) {
                        e.0[i] += 1;
                    }
                }
                out.terms.add_term(e, c.clone());
            }
        }
        out
    }

    /// Total weight in simple-root coordinates, if every monomial has the same weight.
    pub fn weight(&self, u: &UeaElem<S>) -> Option<Vec<i64>> {
        let mut w: Option<Vec<i64>> = None;
        for m in u.keys() {
            let mut s = vec![0; self.g.rank];
            for k in m {
                for (a, b) in s.iter_mut().zip(self.g.weight_of(*k)) {
                    *a += b;
                }
            }
            match &w {
                None => w = Some(s),
                Some(v) if *v == s => {}
                Some(_) => return None,
            }
        }
        w.or_else(|| Some(vec![0; self.g.rank]))
    }

    /// Text format: `coeff * gen gen^p …` per line, factors in normal order.
    pub fn to_text(&self, u: &UeaElem<S>) -> String {
        let mut s = String::new();
        for (m, c) in u {
            s.push_str(&format!("{c} *"));
            let mut i = 0;
            while i < m.len() {
                let mut j = i;
                while j < m.len() && m[j] == m[i] {
                    j += 1;
                }
                s.push(' ');
                s.push_str(&self.g.name(m[i]));
                if j - i > 1 {
                    s.push_str(&format!("^{}", j - i));
                }
                i = j;
            }
            s.push('\n');
        }
        s
    }
}

impl Uea<Q> {
    /// Parse the text format; factors may appear in any order and are normal-ordered.
    pub fn parse(&self, text: &str) -> Result<UeaElem<Q>> {
        let mut out = LinComb::new();
        for (ln, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: String| Error::ParseAt { line: ln + 1, msg };
            let (c, rest) = line
                .split_once('*')
                .ok_or_else(|| err("missing `*`".into()))?;
            let c = parse_q(c).ok_or_else(|| err(format!("bad coefficient `{}`", c.trim())))?;
            let mut word = Vec::new();
            for tok in rest.split_whitespace() {
                let (name, p) = tok.split_once('^').unwrap_or((tok, "1"));
                let idx = self.g.parse_name(name).map_err(|e| err(e.to_string()))?;
                let p: usize = p.parse().map_err(|_| err(format!("bad power `{p}`")))?;
                word.extend(std::iter::repeat_n(idx, p));
            }
            out.add_scaled(&self.word(&word), &c);
        }
        Ok(out)
    }
}
