//! Chevalley bases with integral structure constants.
//!
//! Basis layout: `f_1..f_N`, then `h_1..h_l`, then `e_1..e_N`, where `N` is the
//! number of positive roots. This is also the global PBW order.

use std::collections::HashMap;
use std::fmt;

use num_rational::Rational64;
use num_traits::Zero;
use serde::Serialize;

use super::roots::{CartanType, RootSystem};
use crate::error::{Error, Result};
use crate::lincomb::LinComb;
use crate::scalar::Scalar;

/// Element of a simple Lie algebra in the Chevalley basis.
pub type LieElem<S> = LinComb<usize, S>;

/// Kind of a basis vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GenKind {
    /// `f_α` for the positive root of the given 0-based index.
    F(usize),
    /// `h_i`, 0-based.
    H(usize),
    /// `e_α` for the positive root of the given 0-based index.
    E(usize),
}

/// A simple Lie algebra with its Chevalley basis and normalized invariant form.
#[derive(Clone, Debug)]
pub struct ChevalleyBasis {
    pub roots: RootSystem,
    pub n_pos: usize,
    pub rank: usize,
    pub dim: usize,
    bracket: Vec<Vec<Vec<(usize, i64)>>>,
    form: Vec<Vec<Rational64>>,
    /// Simple-root coordinates of the weight of each basis vector.
    weights: Vec<Vec<i64>>,
    /// Structure constants `N_{α,β}` keyed by signed root coordinates.
    n_table: HashMap<(Vec<i64>, Vec<i64>), i64>,
}

/// Structure-constant computation by recursion from extraspecial pairs.
struct ConstantSolver<'a> {
    rs: &'a RootSystem,
    memo: HashMap<(Vec<i64>, Vec<i64>), Rational64>,
}

fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn neg(a: &[i64]) -> Vec<i64> {
    a.iter().map(|x| -x).collect()
}

fn is_pos(a: &[i64]) -> bool {
    a.iter().all(|x| *x >= 0)
}

impl ConstantSolver<'_> {
    fn idx(&self, a: &[i64]) -> usize {
        self.rs.positive_index(a).expect("positive root")
    }

    fn len2(&self, a: &[i64]) -> Rational64 {
        self.rs.inner_root(a, a)
    }

    /// Largest `p` with `b - p a` a root.
    fn p(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut p = 0;
        loop {
            let c: Vec<i64> = b.iter().zip(a).map(|(y, x)| y - (p + 1) * x).collect();
            if self.rs.is_root(&c) {
                p += 1;
            } else {
                return p;
            }
        }
    }

    fn extraspecial(&self, xi: &[i64]) -> (Vec<i64>, Vec<i64>) {
        for r in &self.rs.positive_roots {
            let s: Vec<i64> = xi.iter().zip(r).map(|(x, y)| x - y).collect();
            if is_pos(&s) && self.rs.positive_index(&s).is_some() {
                return (r.clone(), s);
            }
        }
        unreachable!("non-simple root has an extraspecial pair")
    }

    fn n(&mut self, a: &[i64], b: &[i64]) -> Rational64 {
        let key = (a.to_vec(), b.to_vec());
        if let Some(v) = self.memo.get(&key) {
            return *v;
        }
        let v = self.compute(a, b);
        self.memo.insert(key, v);
        v
    }

    fn term(&mut self, x: &[i64], y: &[i64]) -> Rational64 {
        let s = add(x, y);
        if s.iter().all(|c| *c == 0) || !self.rs.is_root(&s) {
            Rational64::zero()
        } else {
            self.n(x, y)
        }
    }

    fn compute(&mut self, a: &[i64], b: &[i64]) -> Rational64 {
        let (pa, pb) = (is_pos(a), is_pos(b));
        if pa && pb {
            if self.idx(a) > self.idx(b) {
                return -self.n(b, a);
            }
            let xi = add(a, b);
            let (r1, s1) = self.extraspecial(&xi);
            if a == r1.as_slice() {
                return Rational64::from_integer(self.p(a, b) + 1);
            }
            let nr1s1 = self.n(&r1, &s1);
            let mut t = Rational64::zero();
            let bmr = add(b, &neg(&r1));
            if self.rs.is_root(&bmr) {
                t += self.term(b, &neg(&r1)) * self.term(a, &neg(&s1)) / self.len2(&bmr);
            }
            let amr = add(a, &neg(&r1));
            if self.rs.is_root(&amr) {
                t += self.term(&neg(&r1), a) * self.term(b, &neg(&s1)) / self.len2(&amr);
            }
            return self.len2(&xi) / nr1s1 * t;
        }
        if !pa && !pb {
            return -self.n(&neg(a), &neg(b));
        }
        if !pa {
            return -self.n(b, a);
        }
        // a > 0 > b
        let c = neg(&add(a, b));
        if is_pos(&c) {
            self.len2(&c) / self.len2(b) * self.n(&c, a)
        } else {
            self.len2(&c) / self.len2(a) * self.n(b, &c)
        }
    }
}

impl ChevalleyBasis {
    /// Build the Chevalley basis of the given type.
    pub fn new(ty: CartanType) -> Self {
        Self::from_root_system(RootSystem::new(ty))
    }

    pub fn from_root_system(roots: RootSystem) -> Self {
        let n_pos = roots.num_positive_roots();
        let rank = roots.rank;
        let dim = 2 * n_pos + rank;
        let mut weights = vec![vec![0; rank]; dim];
        for (i, r) in roots.positive_roots.iter().enumerate() {
            weights[i] = neg(r);
            weights[n_pos + rank + i] = r.clone();
        }
        let mut solver = ConstantSolver {
            rs: &roots,
            memo: HashMap::new(),
        };
        let mut n_table = HashMap::new();
        let all_roots: Vec<Vec<i64>> = roots
            .positive_roots
            .iter()
            .cloned()
            .chain(roots.positive_roots.iter().map(|r| neg(r)))
            .collect();
        for a in &all_roots {
            for b in &all_roots {
                let s = add(a, b);
                if s.iter().any(|x| *x != 0) && roots.is_root(&s) {
                    let v = solver.n(a, b);
                    assert!(v.is_integer(), "structure constant not integral");
                    n_table.insert((a.clone(), b.clone()), v.to_integer());
                }
            }
        }
        let mut cb = ChevalleyBasis {
            roots,
            n_pos,
            rank,
            dim,
            bracket: Vec::new(),
            form: Vec::new(),
            weights,
            n_table,
        };
        cb.bracket = (0..dim)
            .map(|a| (0..dim).map(|b| cb.compute_bracket(a, b)).collect())
            .collect();
        cb.form = (0..dim)
            .map(|a| (0..dim).map(|b| cb.compute_form(a, b)).collect())
            .collect();
        cb
    }

    pub fn cartan_type(&self) -> CartanType {
        self.roots.ty
    }

    pub fn kind(&self, idx: usize) -> GenKind {
        if idx < self.n_pos {
            GenKind::F(idx)
        } else if idx < self.n_pos + self.rank {
            GenKind::H(idx - self.n_pos)
        } else {
            GenKind::E(idx - self.n_pos - self.rank)
        }
    }

    /// Index of `e_α` for the 0-based positive root index.
    pub fn e(&self, i: usize) -> usize {
        self.n_pos + self.rank + i
    }

    pub fn f(&self, i: usize) -> usize {
        i
    }

    pub fn h(&self, i: usize) -> usize {
        self.n_pos + i
    }

    /// Basis index of the root vector for a signed root.
    pub fn root_vector(&self, alpha: &[i64]) -> Option<usize> {
        if is_pos(alpha) {
            self.roots.positive_index(alpha).map(|i| self.e(i))
        } else {
            self.roots.positive_index(&neg(alpha)).map(|i| self.f(i))
        }
    }

    /// Signed root of a root vector, `None` for Cartan elements.
    pub fn root_of(&self, idx: usize) -> Option<&[i64]> {
        match self.kind(idx) {
            GenKind::H(_) => None,
            _ => Some(&self.weights[idx]),
        }
    }

    /// Simple-root coordinates of the weight of a basis vector.
    pub fn weight_of(&self, idx: usize) -> &[i64] {
        &self.weights[idx]
    }

    pub fn highest_root_index(&self) -> usize {
        self.n_pos - 1
    }

    /// `N_{α,β}` for signed roots with `α+β` a root.
    pub fn structure_constant(&self, a: &[i64], b: &[i64]) -> Option<i64> {
        self.n_table.get(&(a.to_vec(), b.to_vec())).copied()
    }

    fn coroot_element(&self, alpha: &[i64]) -> Vec<(usize, i64)> {
        let c = self.roots.coroot_coords(alpha);
        c.iter()
            .enumerate()
            .filter(|(_, v)| **v != 0)
            .map(|(i, v)| (self.h(i), *v))
            .collect()
    }

    fn compute_bracket(&self, a: usize, b: usize) -> Vec<(usize, i64)> {
        match (self.kind(a), self.kind(b)) {
            (GenKind::H(_), GenKind::H(_)) => vec![],
            (GenKind::H(i), _) => {
                let c = self.roots.pairing_root(&self.weights[b], i);
                if c == 0 {
                    vec![]
                } else {
                    vec![(b, c)]
                }
            }
            (_, GenKind::H(i)) => {
                let c = self.roots.pairing_root(&self.weights[a], i);
                if c == 0 {
                    vec![]
                } else {
                    vec![(a, -c)]
                }
            }
            _ => {
                let (ra, rb) = (&self.weights[a], &self.weights[b]);
                let s = add(ra, rb);
                if s.iter().all(|x| *x == 0) {
                    // [e_r, e_{-r}] = h_r, with h_{-r} = -h_r
                    if is_pos(ra) {
                        self.coroot_element(ra)
                    } else {
                        self.coroot_element(rb)
                            .into_iter()
                            .map(|(i, v)| (i, -v))
                            .collect()
                    }
                } else if let Some(nc) = self.structure_constant(ra, rb) {
                    vec![(self.root_vector(&s).expect("root"), nc)]
                } else {
                    vec![]
                }
            }
        }
    }

    fn compute_form(&self, a: usize, b: usize) -> Rational64 {
        match (self.kind(a), self.kind(b)) {
            (GenKind::H(i), GenKind::H(j)) => {
                let g = &self.roots.gram;
                Rational64::from_integer(4) * g[i][j] / (g[i][i] * g[j][j])
            }
            (GenKind::E(i), GenKind::F(j)) | (GenKind::F(j), GenKind::E(i)) if i == j => {
                let r = &self.roots.positive_roots[i];
                Rational64::from_integer(2) / self.roots.inner_root(r, r)
            }
            _ => Rational64::zero(),
        }
    }

    /// `[x_a, x_b]` for basis indices, with integer coefficients.
    pub fn bracket_basis(&self, a: usize, b: usize) -> &[(usize, i64)] {
        &self.bracket[a][b]
    }

    pub fn bracket<S: Scalar>(&self, x: &LieElem<S>, y: &LieElem<S>) -> LieElem<S> {
        let mut out = LieElem::new();
        for (a, ca) in x {
            for (b, cb) in y {
                let c = ca.clone() * cb.clone();
                for (k, v) in self.bracket_basis(*a, *b) {
                    out.add_term(*k, c.clone() * S::int(*v));
                }
            }
        }
        out
    }

    /// Normalized invariant form on basis vectors, `(θ|θ) = 2`.
    pub fn form_basis(&self, a: usize, b: usize) -> Rational64 {
        self.form[a][b]
    }

    pub fn form<S: Scalar>(&self, x: &LieElem<S>, y: &LieElem<S>) -> S {
        let mut s = S::zero();
        for (a, ca) in x {
            for (b, cb) in y {
                let f = self.form[*a][*b];
                if !f.is_zero() {
                    s = s + ca.clone() * cb.clone() * S::from_ratio64(&f);
                }
            }
        }
        s
    }

    pub fn basis<S: Scalar>(&self, idx: usize) -> LieElem<S> {
        LieElem::single(idx, S::one())
    }

    /// Name in the text formats: `e[i]`, `f[i]`, `h[j]` with 1-based indices.
    pub fn name(&self, idx: usize) -> String {
        match self.kind(idx) {
            GenKind::F(i) => format!("f[{}]", i + 1),
            GenKind::H(i) => format!("h[{}]", i + 1),
            GenKind::E(i) => format!("e[{}]", i + 1),
        }
    }

    pub fn parse_name(&self, s: &str) -> Result<usize> {
        let s = s.trim();
        let bad = || Error::Parse(format!("unknown generator `{s}`"));
        let (kind, rest) = s.split_at(1);
        let n: usize = rest
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(bad)?
            .parse()
            .map_err(|_| bad())?;
        if n == 0 {
            return Err(bad());
        }
        match kind {
            "e" if n <= self.n_pos => Ok(self.e(n - 1)),
            "f" if n <= self.n_pos => Ok(self.f(n - 1)),
            "h" if n <= self.rank => Ok(self.h(n - 1)),
            _ => Err(bad()),
        }
    }

    /// Killing form `tr(ad x ad y)` on basis vectors.
    pub fn killing_basis(&self, a: usize, b: usize) -> i64 {
        let mut tr = 0;
        for z in 0..self.dim {
            for (w, c1) in self.bracket_basis(b, z) {
                for (u, c2) in self.bracket_basis(a, *w) {
                    if *u == z {
                        tr += c1 * c2;
                    }
                }
            }
        }
        tr
    }

    /// `ad x` as a dense integer matrix, columns indexed by basis.
    pub fn ad_matrix(&self, a: usize) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0; self.dim]; self.dim];
        for z in 0..self.dim {
            for (w, c) in self.bracket_basis(a, z) {
                m[*w][z] += c;
            }
        }
        m
    }

    /// Structure constants as JSON: generator name to list of `[name, coefficient]` per partner.
    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Entry {
            left: String,
            right: String,
            value: Vec<(String, i64)>,
        }
        let mut brackets = Vec::new();
        for a in 0..self.dim {
            for b in 0..self.dim {
                let v = self.bracket_basis(a, b);
                if !v.is_empty() {
                    brackets.push(Entry {
                        left: self.name(a),
                        right: self.name(b),
                        value: v.iter().map(|(k, c)| (self.name(*k), *c)).collect(),
                    });
                }
            }
        }
        let roots: Vec<(String, Vec<i64>)> = (0..self.n_pos)
            .map(|i| (self.name(self.e(i)), self.roots.positive_roots[i].clone()))
            .collect();
        serde_json::json!({
            "algebra": self.cartan_type().label(),
            "positive_roots": roots,
            "cartan_matrix": self.roots.cartan,
            "brackets": brackets,
        })
    }
}

impl fmt::Display for ChevalleyBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (dim {})", self.cartan_type(), self.dim)
    }
}

/// Format a Lie element in the generator notation.
pub fn format_lie<S: Scalar>(g: &ChevalleyBasis, x: &LieElem<S>) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, (k, c)) in x.iter().enumerate() {
        let neg = c.to_string().starts_with('-');
        if i > 0 {
            s.push_str(if neg { " - " } else { " + " });
        } else if neg {
            s.push('-');
        }
        let a = if neg { -c.clone() } else { c.clone() };
        if a != S::one() {
            s.push_str(&format!("{a} "));
        }
        s.push_str(&g.name(*k));
    }
    s
}
