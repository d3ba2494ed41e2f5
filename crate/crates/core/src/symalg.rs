//! The symmetric algebra `S(g)`: adjoint action, Chevalley projection and
//! reduction modulo `J_χ` for the subregular nilpotent of G2.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::liealg::{CartanType, ChevalleyBasis, GenKind, LieElem};
use crate::lincomb::LinComb;
use crate::poly::{Mono, Poly};
use crate::scalar::{parse_q, Scalar};
use crate::Q;

/// Element of `S(g)`: sorted multisets of basis indices.
pub type SymElem<S = Q> = LinComb<Vec<usize>, S>;

pub fn sym_from_lie<S: Scalar>(x: &LieElem<S>) -> SymElem<S> {
    x.iter().map(|(k, c)| (vec![*k], c.clone())).collect()
}

pub fn sym_mul<S: Scalar>(a: &SymElem<S>, b: &SymElem<S>) -> SymElem<S> {
    let mut out = LinComb::new();
    for (m, c) in a {
        for (n, d) in b {
            let mut k = m.clone();
            k.extend_from_slice(n);
            k.sort_unstable();
            out.add_term(k, c.clone() * d.clone());
        }
    }
    out
}

/// Leibniz extension of `ad x` to `S(g)`.
pub fn adjoint<S: Scalar>(g: &ChevalleyBasis, x: &LieElem<S>, s: &SymElem<S>) -> SymElem<S> {
    let mut out = LinComb::new();
    for (m, c) in s {
        for i in 0..m.len() {
            if i > 0 && m[i] == m[i - 1] {
                continue;
            }
            let mult = m.iter().filter(|k| **k == m[i]).count() as i64;
            for (a, ca) in x {
                for (k, v) in g.bracket_basis(*a, m[i]) {
                    let mut n = m.clone();
                    n[i] = *k;
                    n.sort_unstable();
                    out.add_term(n, c.clone() * ca.clone() * S::int(v * mult));
                }
            }
        }
    }
    out
}

/// Apply `ad x_1, ad x_2, …` in list order.
pub fn adjoint_chain<S: Scalar>(
    g: &ChevalleyBasis,
    chain: &[LieElem<S>],
    s: &SymElem<S>,
) -> SymElem<S> {
    chain.iter().fold(s.clone(), |acc, x| adjoint(g, x, &acc))
}

/// Chevalley projection `Ψ`: the part lying in `S(h)`.
pub fn chevalley_projection<S: Scalar>(g: &ChevalleyBasis, s: &SymElem<S>) -> Poly<S> {
    let mut out = Poly::zero(g.rank);
    for (m, c) in s {
        if m.iter().all(|k| matches!(g.kind(*k), GenKind::H(_))) {
            let mut e = Mono::one(g.rank);
            for k in m {
                if let GenKind::H(i) = g.kind(*k) {
                    e.0[i] += 1;
                }
            }
            out.terms.add_term(e, c.clone());
        }
    }
    out
}

/// Text format shared with `U(g)`: `coeff * gen gen^p …` per line.
pub fn sym_to_text<S: Scalar>(g: &ChevalleyBasis, s: &SymElem<S>) -> String {
    let mut out = String::new();
    for (m, c) in s {
        out.push_str(&format!("{c} *"));
        if m.is_empty() {
            out.push_str(" 1");
        }
        let mut i = 0;
        while i < m.len() {
            let j = (i..m.len()).find(|&j| m[j] != m[i]).unwrap_or(m.len());
            out.push(' ');
            out.push_str(&g.name(m[i]));
            if j - i > 1 {
                out.push_str(&format!("^{}", j - i));
            }
            i = j;
        }
        out.push('\n');
    }
    out
}

pub fn sym_parse(g: &ChevalleyBasis, text: &str) -> Result<SymElem<Q>> {
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
        let mut k = Vec::new();
        for tok in rest.split_whitespace() {
            if tok == "1" {
                continue;
            }
            let (name, p) = tok.split_once('^').unwrap_or((tok, "1"));
            let idx = g.parse_name(name).map_err(|e| err(e.to_string()))?;
            let p: usize = p.parse().map_err(|_| err(format!("bad power `{p}`")))?;
            k.extend(std::iter::repeat_n(idx, p));
        }
        k.sort_unstable();
        out.add_term(k, c);
    }
    Ok(out)
}

/// Sign in `χ(x) = ε (f|x)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChiSign {
    /// `χ(x) = -(f|x)`.
    Minus,
    /// `χ(x) = (f|x)`.
    Plus,
}

/// Grading and character data for a nilpotent `f` with neutral element `x`.
#[derive(Clone, Debug)]
pub struct SlodowyData {
    pub g: Arc<ChevalleyBasis>,
    pub f: LieElem<Q>,
    pub x: LieElem<Q>,
    /// `ad x`-eigenvalue of each basis vector.
    pub grade: Vec<i64>,
    /// Basis of the centralizer `g^f`.
    pub centralizer: Vec<LieElem<Q>>,
    pub sign: ChiSign,
}

impl SlodowyData {
    /// `f = e_{-α₂} + e_{-α₄}`, `x = h₁ + 2h₂` in G2.
    pub fn g2_subregular(g: Arc<ChevalleyBasis>, sign: ChiSign) -> Result<Self> {
        if g.cartan_type() != CartanType::G2 {
            return Err(Error::AlgebraMismatch(
                g.cartan_type().label().into(),
                "G2".into(),
            ));
        }
        let one = Q::from_integer(1.into());
        let f: LieElem<Q> = LinComb::from_terms([(g.f(1), one.clone()), (g.f(3), one.clone())]);
        let x: LieElem<Q> =
            LinComb::from_terms([(g.h(0), one), (g.h(1), Q::from_integer(2.into()))]);
        let grade = (0..g.dim)
            .map(|k| {
                let w = g.weight_of(k);
                (0..g.rank)
                    .map(|i| {
                        x.coeff(&g.h(i)).to_integer().try_into().unwrap_or(0i64)
                            * g.roots.pairing_root(w, i)
                    })
                    .sum()
            })
            .collect();
        let centralizer = kernel_of_ad(&g, &f);
        Ok(SlodowyData {
            g,
            f,
            x,
            grade,
            centralizer,
            sign,
        })
    }

    /// Basis indices of `g_j`.
    pub fn piece(&self, j: i64) -> Vec<usize> {
        (0..self.g.dim).filter(|k| self.grade[*k] == j).collect()
    }

    /// `m = g_{≥1}` for the even grading used here.
    pub fn in_m(&self, k: usize) -> bool {
        self.grade[k] >= 1
    }

    /// `(f|x)` for a basis vector.
    pub fn pairing_with_f(&self, k: usize) -> Q {
        self.g.form(&self.f, &self.g.basis(k))
    }

    pub fn chi(&self, k: usize) -> Q {
        let p = self.pairing_with_f(k);
        match self.sign {
            ChiSign::Minus => -p,
            ChiSign::Plus => p,
        }
    }

    /// Substitute `χ(x)` for every `x ∈ m`.
    pub fn reduce(&self, s: &SymElem<Q>) -> SymElem<Q> {
        let mut out = LinComb::new();
        for (m, c) in s {
            let mut coeff = c.clone();
            let mut rest = Vec::new();
            for k in m {
                if self.in_m(*k) {
                    coeff *= self.chi(*k);
                } else {
                    rest.push(*k);
                }
            }
            out.add_term(rest, coeff);
        }
        out
    }
}

/// `reduce_mod_jchi` as a free function.
pub fn reduce_mod_jchi(s: &SymElem<Q>, data: &SlodowyData) -> SymElem<Q> {
    data.reduce(s)
}

/// Basis of `{y : [f, y] = 0}`.
pub fn kernel_of_ad(g: &ChevalleyBasis, f: &LieElem<Q>) -> Vec<LieElem<Q>> {
    let mut rows: BTreeMap<usize, crate::linalg::SparseVec<Q>> = BTreeMap::new();
    for y in 0..g.dim {
        for (k, c) in g.bracket(f, &g.basis(y)) {
            rows.entry(k).or_default().insert(y, c);
        }
    }
    let mut ech = crate::linalg::Echelon::new();
    for (_, r) in rows {
        ech.insert(r);
    }
    ech.nullspace(g.dim)
        .into_iter()
        .map(|v| v.into_iter().collect())
        .collect()
}
