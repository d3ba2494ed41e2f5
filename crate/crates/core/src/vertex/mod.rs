//! States of the universal affine vertex algebra `V^k(g)` and the mode action.

mod flow;
mod search;

pub use flow::{
    affine_bracket, check_flows_lemma, coroot_gram, shift_table, AffineElem, FlowCheck,
    FlowsReport, SpectralFlow,
};
pub use search::{
    conformal_dimension, enumerate_integer_dimensions, graded_basis, search_singular,
    IdealComponent,
};

use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};
use crate::liealg::{CartanType, ChevalleyBasis, Embedding, LieElem, Weight};
use crate::lincomb::LinComb;
use crate::pbw::{Pbw, PbwBracket, PbwElem};
use crate::scalar::{parse_q, Scalar};
use crate::Q;

/// Creation mode `x(-depth)` with `depth ≥ 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Mode {
    pub depth: u32,
    pub gen: usize,
}

impl Mode {
    pub fn new(gen: usize, depth: u32) -> Self {
        Mode { depth, gen }
    }
}

/// Deeper modes first, then by generator index.
impl Ord for Mode {
    fn cmp(&self, o: &Self) -> Ordering {
        o.depth.cmp(&self.depth).then(self.gen.cmp(&o.gen))
    }
}

impl PartialOrd for Mode {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Bracket of creation modes; no central term occurs.
pub struct ModeBracket(pub Arc<ChevalleyBasis>);

impl PbwBracket for ModeBracket {
    type Gen = Mode;

    fn bracket(&self, a: &Mode, b: &Mode) -> Vec<(Mode, i64)> {
        self.0
            .bracket_basis(a.gen, b.gen)
            .iter()
            .map(|(k, c)| (Mode::new(*k, a.depth + b.depth), *c))
            .collect()
    }
}

/// State `Σ c · x_1(-n_1)⋯x_m(-n_m)𝟙` with factors in canonical order.
pub type VaState<S = Q> = PbwElem<Mode, S>;

type AnnihKey = (usize, u32, Vec<Mode>);

/// `V^k(g)` at a fixed level.
pub struct VertexAlgebra<S = Q> {
    pub g: Arc<ChevalleyBasis>,
    pub level: S,
    pbw: Pbw<ModeBracket, S>,
    annih: RwLock<HashMap<AnnihKey, VaState<S>>>,
}

/// Outcome of a singularity test.
#[derive(Clone, Debug)]
pub struct SingularCheck<S = Q> {
    pub singular: bool,
    /// First operator with a nonzero image, with that image.
    pub witness: Option<(String, VaState<S>)>,
}

impl<S: Scalar> VertexAlgebra<S> {
    pub fn new(g: Arc<ChevalleyBasis>, level: S) -> Self {
        VertexAlgebra {
            pbw: Pbw::new(ModeBracket(g.clone())),
            g,
            level,
            annih: RwLock::new(HashMap::new()),
        }
    }

    pub fn vacuum(&self) -> VaState<S> {
        LinComb::single(Vec::new(), S::one())
    }

    /// `x_1(-n_1)⋯x_m(-n_m)𝟙` for an arbitrary factor order.
    pub fn state(&self, factors: &[(usize, u32)]) -> VaState<S> {
        let word: Vec<Mode> = factors.iter().map(|(g, d)| Mode::new(*g, *d)).collect();
        self.pbw.normal_order(&word)
    }

    pub fn clear_cache(&self) {
        self.pbw.clear_cache();
        self.annih.write().expect("cache lock").clear();
    }

    /// `x(n) v` for a basis generator `x`.
    pub fn apply_basis_mode(&self, x: usize, n: i64, v: &VaState<S>) -> VaState<S> {
        if n < 0 {
            return self.pbw.gen_times(&Mode::new(x, (-n) as u32), v);
        }
        let mut out = LinComb::new();
        for (m, c) in v {
            out.add_scaled(&self.annihilate(x, n as u32, m), c);
        }
        out
    }

    /// `x(n) v` for a Lie element `x`.
    pub fn apply_mode(&self, x: &LieElem<S>, n: i64, v: &VaState<S>) -> VaState<S> {
        let mut out = LinComb::new();
        for (k, c) in x {
            out.add_scaled(&self.apply_basis_mode(*k, n, v), c);
        }
        out
    }

    /// Product `b_1 ⋯ b_r v` of creation modes, applied right to left.
    pub fn apply_creation_word(&self, word: &[Mode], v: &VaState<S>) -> VaState<S> {
        self.pbw.word_times(word, v)
    }

    /// `x(n) m 𝟙` for `n ≥ 0` on a canonical monomial.
    fn annihilate(&self, x: usize, n: u32, m: &[Mode]) -> VaState<S> {
        let Some((b, rest)) = m.split_first() else {
            return LinComb::new();
        };
        let key = (x, n, m.to_vec());
        if let Some(hit) = self.annih.read().expect("cache lock").get(&key) {
            return hit.clone();
        }
        let rest_state = LinComb::single(rest.to_vec(), S::one());
        let mut out = self.pbw.gen_times(b, &self.annihilate(x, n, rest));
        // [x(n), y(-p)] = [x,y](n-p) + n (x|y) δ_{n,p} k
        let p = b.depth;
        for (k, c) in self.g.bracket_basis(x, b.gen) {
            let term = if n < p {
                self.pbw.gen_times_mono(&Mode::new(*k, p - n), rest)
            } else {
                self.annihilate(*k, n - p, rest)
            };
            out.add_scaled(&term, &S::int(*c));
        }
        if n == p {
            let f = self.g.form_basis(x, b.gen);
            if *f.numer() != 0 {
                let c = S::int(n as i64) * S::from_ratio64(&f) * self.level.clone();
                out.add_scaled(&rest_state, &c);
            }
        }
        self.annih
            .write()
            .expect("cache lock")
            .insert(key, out.clone());
        out
    }

    /// Singularity: `e_{α_i}(0) v = 0` for simple roots and `e_{-θ}(1) v = 0`.
    pub fn is_singular(&self, v: &VaState<S>) -> Result<SingularCheck<S>> {
        if v.is_zero() {
            return Err(Error::ZeroVector);
        }
        for (name, x, n) in self.singular_operators() {
            let w = self.apply_basis_mode(x, n, v);
            if !w.is_zero() {
                return Ok(SingularCheck {
                    singular: false,
                    witness: Some((name, w)),
                });
            }
        }
        Ok(SingularCheck {
            singular: true,
            witness: None,
        })
    }

    /// The annihilation conditions as `(label, generator, mode)`.
    pub fn singular_operators(&self) -> Vec<(String, usize, i64)> {
        let mut ops: Vec<(String, usize, i64)> = (0..self.g.rank)
            .map(|i| (format!("{}(0)", self.g.name(self.g.e(i))), self.g.e(i), 0))
            .collect();
        let ft = self.g.f(self.g.highest_root_index());
        ops.push((format!("{}(1)", self.g.name(ft)), ft, 1));
        ops
    }

    /// `Σ n_i` of a monomial.
    pub fn conformal_weight_of(m: &[Mode]) -> u32 {
        m.iter().map(|x| x.depth).sum()
    }

    /// Simple-root coordinates of the `h`-weight of a monomial.
    pub fn root_weight_of(&self, m: &[Mode]) -> Vec<i64> {
        let mut w = vec![0; self.g.rank];
        for x in m {
            for (a, b) in w.iter_mut().zip(self.g.weight_of(x.gen)) {
                *a += b;
            }
        }
        w
    }

    /// Conformal weight if homogeneous.
    pub fn conformal_weight(&self, v: &VaState<S>) -> Option<u32> {
        let mut it = v.keys().map(|m| Self::conformal_weight_of(m));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// The part of `v` of the given `h`-weight.
    pub fn weight_component(&self, v: &VaState<S>, mu: &Weight) -> VaState<S> {
        let target = mu.to_root_coords(&self.g.roots);
        v.filter(|m| {
            self.root_weight_of(m)
                .iter()
                .zip(&target)
                .all(|(a, b)| Q::from_integer((*a).into()) == *b)
        })
    }

    /// Weights occurring in `v`, with their components.
    pub fn weight_decomposition(&self, v: &VaState<S>) -> Vec<(Weight, VaState<S>)> {
        let mut parts: std::collections::BTreeMap<Vec<i64>, VaState<S>> = Default::default();
        for (m, c) in v {
            parts
                .entry(self.root_weight_of(m))
                .or_default()
                .add_term(m.clone(), c.clone());
        }
        parts
            .into_iter()
            .map(|(w, s)| (Weight::from_root(&self.g.roots, &w), s))
            .collect()
    }

    /// Image under the vertex-algebra map induced by an embedding.
    pub fn embed_state(
        &self,
        emb: &Embedding,
        target: &VertexAlgebra<S>,
        v: &VaState<S>,
    ) -> VaState<S> {
        let mut out = LinComb::new();
        for (m, c) in v {
            let mut words: Vec<(Vec<Mode>, S)> = vec![(Vec::new(), c.clone())];
            for x in m {
                let img = emb.image_basis(x.gen);
                let mut next = Vec::with_capacity(words.len() * img.len());
                for (w, wc) in &words {
                    for (k, kc) in img {
                        let mut w2 = w.clone();
                        w2.push(Mode::new(*k, x.depth));
                        next.push((w2, wc.clone() * S::int(*kc)));
                    }
                }
                words = next;
            }
            for (w, wc) in words {
                out.add_scaled(&target.pbw.normal_order(&w), &wc);
            }
        }
        out
    }

    /// Text format: `coeff * gen(mode)[^power] …` per line, vacuum written as `1`.
    pub fn to_text(&self, v: &VaState<S>) -> String {
        let mut s = String::new();
        for (m, c) in v {
            s.push_str(&format!("{c} *"));
            if m.is_empty() {
                s.push_str(" 1");
            }
            let mut i = 0;
            while i < m.len() {
                let j = (i..m.len()).find(|&j| m[j] != m[i]).unwrap_or(m.len());
                s.push_str(&format!(" {}(-{})", self.g.name(m[i].gen), m[i].depth));
                if j - i > 1 {
                    s.push_str(&format!("^{}", j - i));
                }
                i = j;
            }
            s.push('\n');
        }
        s
    }

    /// File form: header lines followed by the terms.
    pub fn to_file_text(&self, v: &VaState<S>) -> String {
        format!(
            "# algebra: {}\n# level: {}\n{}",
            self.g.cartan_type().label(),
            self.level,
            self.to_text(v)
        )
    }
}

/// Header fields of a state or element file.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Header {
    pub algebra: Option<CartanType>,
    pub level: Option<Q>,
}

/// Read `# algebra:` and `# level:` header lines.
pub fn read_header(text: &str) -> Result<Header> {
    let mut h = Header::default();
    for (ln, line) in text.lines().enumerate() {
        let Some(rest) = line.trim().strip_prefix('#') else {
            continue;
        };
        let err = |msg: String| Error::ParseAt { line: ln + 1, msg };
        if let Some(a) = rest.trim().strip_prefix("algebra:") {
            h.algebra = Some(a.trim().parse().map_err(|e: Error| err(e.to_string()))?);
        } else if let Some(l) = rest.trim().strip_prefix("level:") {
            h.level = Some(parse_q(l).ok_or_else(|| err(format!("bad level `{}`", l.trim())))?);
        }
    }
    Ok(h)
}

impl VertexAlgebra<Q> {
    /// Parse the text format; factors may appear in any order.
    pub fn parse(&self, text: &str) -> Result<VaState<Q>> {
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
                if tok == "1" {
                    continue;
                }
                let (body, pow) = match tok.rsplit_once('^') {
                    Some((b, p)) if b.ends_with(')') => (b, p),
                    _ => (tok, "1"),
                };
                let (name, mode) = body
                    .strip_suffix(')')
                    .and_then(|b| b.split_once('('))
                    .ok_or_else(|| err(format!("bad factor `{tok}`")))?;
                let idx = self.g.parse_name(name).map_err(|e| err(e.to_string()))?;
                let mode: i64 = mode
                    .parse()
                    .map_err(|_| err(format!("bad mode in `{tok}`")))?;
                if mode >= 0 {
                    return Err(err(format!("non-negative mode in `{tok}`")));
                }
                let p: usize = pow.parse().map_err(|_| err(format!("bad power `{pow}`")))?;
                word.extend(std::iter::repeat_n(Mode::new(idx, (-mode) as u32), p));
            }
            out.add_scaled(&self.pbw.normal_order(&word), &c);
        }
        Ok(out)
    }

    /// Build the algebra named in a file header and parse the state.
    pub fn from_file_text(text: &str) -> Result<(VertexAlgebra<Q>, VaState<Q>)> {
        let h = read_header(text)?;
        let ty = h
            .algebra
            .ok_or_else(|| Error::Parse("missing `# algebra:` header".into()))?;
        let level = h
            .level
            .ok_or_else(|| Error::Parse("missing `# level:` header".into()))?;
        let va = VertexAlgebra::new(crate::liealg::build_algebra(ty), level);
        let v = va.parse(text)?;
        Ok((va, v))
    }
}
