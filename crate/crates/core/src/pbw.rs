//! PBW straightening over an ordered basis of a Lie algebra.
//!
//! Monomials are nondecreasing sequences of generators. Products are brought
//! to normal order by repeatedly rewriting `g m0 = m0 g + [g, m0]` at the
//! leftmost inversion, with results memoized per `(generator, monomial)`.

use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;
use std::sync::RwLock;

use crate::lincomb::LinComb;
use crate::scalar::Scalar;

/// Lie bracket on an ordered generating set, with integer structure constants.
pub trait PbwBracket: Send + Sync {
    type Gen: Ord + Clone + Hash + Debug + Send + Sync;

    fn bracket(&self, a: &Self::Gen, b: &Self::Gen) -> Vec<(Self::Gen, i64)>;
}

/// Linear combination of normal-ordered monomials.
pub type PbwElem<G, S> = LinComb<Vec<G>, S>;

type Memo<G, S> = RwLock<HashMap<(G, Vec<G>), PbwElem<G, S>>>;

/// Straightening engine with a shared product cache.
///
/// The cache is keyed on inputs only, so concurrent writers always store the
/// same value for a key.
pub struct Pbw<B: PbwBracket, S> {
    pub bracket: B,
    memo: Memo<B::Gen, S>,
}

impl<B: PbwBracket, S: Scalar> Pbw<B, S> {
    pub fn new(bracket: B) -> Self {
        Pbw {
            bracket,
            memo: RwLock::new(HashMap::new()),
        }
    }

    pub fn clear_cache(&self) {
        self.memo.write().expect("cache lock").clear();
    }

    pub fn cache_len(&self) -> usize {
        self.memo.read().expect("cache lock").len()
    }

    /// `g · m` in normal order, for a normal-ordered monomial `m`.
    pub fn gen_times_mono(&self, g: &B::Gen, m: &[B::Gen]) -> PbwElem<B::Gen, S> {
        if m.first().is_none_or(|m0| g <= m0) {
            let mut v = Vec::with_capacity(m.len() + 1);
            v.push(g.clone());
            v.extend_from_slice(m);
            return LinComb::single(v, S::one());
        }
        let key = (g.clone(), m.to_vec());
        if let Some(hit) = self.memo.read().expect("cache lock").get(&key) {
            return hit.clone();
        }
        let (m0, rest) = (&m[0], &m[1..]);
        let mut out = LinComb::new();
        for (t, c) in &self.gen_times_mono(g, rest) {
            out.add_scaled(&self.gen_times_mono(m0, t), c);
        }
        for (k, c) in self.bracket.bracket(g, m0) {
            out.add_scaled(&self.gen_times_mono(&k, rest), &S::int(c));
        }
        self.memo
            .write()
            .expect("cache lock")
            .insert(key, out.clone());
        out
    }

    /// `g · x`.
    pub fn gen_times(&self, g: &B::Gen, x: &PbwElem<B::Gen, S>) -> PbwElem<B::Gen, S> {
        let mut out = LinComb::new();
        for (m, c) in x {
            out.add_scaled(&self.gen_times_mono(g, m), c);
        }
        out
    }

    /// `g_1 ⋯ g_n · x` for an arbitrary word.
    pub fn word_times(&self, word: &[B::Gen], x: &PbwElem<B::Gen, S>) -> PbwElem<B::Gen, S> {
        let mut cur = x.clone();
        for g in word.iter().rev() {
            cur = self.gen_times(g, &cur);
        }
        cur
    }

    /// Normal-ordered form of an arbitrary word.
    pub fn normal_order(&self, word: &[B::Gen]) -> PbwElem<B::Gen, S> {
        self.word_times(word, &LinComb::single(Vec::new(), S::one()))
    }

    pub fn multiply(&self, a: &PbwElem<B::Gen, S>, b: &PbwElem<B::Gen, S>) -> PbwElem<B::Gen, S> {
        let mut out = LinComb::new();
        for (m, c) in a {
            out.add_scaled(&self.word_times(m, b), c);
        }
        out
    }

    /// Extend a derivation given on generators to normal-ordered monomials.
    pub fn derivation(
        &self,
        u: &PbwElem<B::Gen, S>,
        mut d: impl FnMut(&B::Gen) -> Vec<(B::Gen, S)>,
    ) -> PbwElem<B::Gen, S> {
        let mut out = LinComb::new();
        for (m, c) in u {
            for i in 0..m.len() {
                let suffix = LinComb::single(m[i + 1..].to_vec(), S::one());
                for (k, v) in d(&m[i]) {
                    let tail = self.gen_times(&k, &suffix);
                    let full = self.word_times(&m[..i], &tail);
                    out.add_scaled(&full, &(c.clone() * v));
                }
            }
        }
        out
    }
}
