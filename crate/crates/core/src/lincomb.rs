//! Sparse linear combinations with deterministic ordering.

use std::collections::btree_map::{self, BTreeMap};
use std::ops::{Add, Neg, Sub};

use crate::scalar::Scalar;

/// A finitely supported map `K -> S` with no stored zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LinComb<K: Ord, S> {
    terms: BTreeMap<K, S>,
}

impl<K: Ord, S> Default for LinComb<K, S> {
    fn default() -> Self {
        LinComb {
            terms: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone, S: Scalar> LinComb<K, S> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(k: K, c: S) -> Self {
        let mut out = Self::new();
        out.add_term(k, c);
        out
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (K, S)>) -> Self {
        let mut out = Self::new();
        for (k, c) in terms {
            out.add_term(k, c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> btree_map::Iter<'_, K, S> {
        self.terms.iter()
    }

    pub fn keys(&self) -> btree_map::Keys<'_, K, S> {
        self.terms.keys()
    }

    pub fn coeff(&self, k: &K) -> S {
        self.terms.get(k).cloned().unwrap_or_else(S::zero)
    }

    pub fn get(&self, k: &K) -> Option<&S> {
        self.terms.get(k)
    }

    pub fn add_term(&mut self, k: K, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(k) {
            btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            btree_map::Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, other: &Self, c: &S) {
        if c.is_zero() {
            return;
        }
        for (k, v) in other.iter() {
            self.add_term(k.clone(), v.clone() * c.clone());
        }
    }

    pub fn add_assign_ref(&mut self, other: &Self) {
        for (k, v) in other.iter() {
            self.add_term(k.clone(), v.clone());
        }
    }

    pub fn scaled(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::new();
        }
        LinComb {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.clone(), v.clone() * c.clone()))
                .collect(),
        }
    }

    /// Apply a linear map given on basis keys.
    pub fn map_linear<K2: Ord + Clone>(
        &self,
        mut f: impl FnMut(&K) -> LinComb<K2, S>,
    ) -> LinComb<K2, S> {
        let mut out = LinComb::new();
        for (k, c) in self.iter() {
            out.add_scaled(&f(k), c);
        }
        out
    }

    pub fn filter(&self, mut keep: impl FnMut(&K) -> bool) -> Self {
        LinComb {
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| keep(k))
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }

    /// First key in order with its coefficient.
    pub fn first(&self) -> Option<(&K, &S)> {
        self.terms.iter().next()
    }

    /// If `self = c * other` for some scalar `c`, return `c`.
    pub fn ratio_to(&self, other: &Self) -> Option<S> {
        if self.len() != other.len() {
            return None;
        }
        if self.is_zero() {
            return Some(S::one());
        }
        let (k, v) = other.first()?;
        let c = self.coeff(k) / v.clone();
        if c.is_zero() {
            return None;
        }
        if other.scaled(&c) == *self {
            Some(c)
        } else {
            None
        }
    }
}

impl<K: Ord, S> IntoIterator for LinComb<K, S> {
    type Item = (K, S);
    type IntoIter = btree_map::IntoIter<K, S>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.into_iter()
    }
}

impl<'a, K: Ord, S> IntoIterator for &'a LinComb<K, S> {
    type Item = (&'a K, &'a S);
    type IntoIter = btree_map::Iter<'a, K, S>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}

impl<K: Ord + Clone, S: Scalar> FromIterator<(K, S)> for LinComb<K, S> {
    fn from_iter<I: IntoIterator<Item = (K, S)>>(iter: I) -> Self {
        Self::from_terms(iter)
    }
}

impl<K: Ord + Clone, S: Scalar> Add for LinComb<K, S> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (k, v) in rhs {
            self.add_term(k, v);
        }
        self
    }
}

impl<K: Ord + Clone, S: Scalar> Sub for LinComb<K, S> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        for (k, v) in rhs {
            self.add_term(k, -v);
        }
        self
    }
}

impl<K: Ord + Clone, S: Scalar> Neg for LinComb<K, S> {
    type Output = Self;
    fn neg(self) -> Self {
        LinComb {
            terms: self.terms.into_iter().map(|(k, v)| (k, -v)).collect(),
        }
    }
}
