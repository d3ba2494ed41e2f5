//! Buchberger's algorithm in degrevlex with `h1 > h2 > …`.
//!
//! S-pairs are processed by the normal strategy: smallest lcm first, ties
//! broken by the pair indices, so bases are reproducible.

use std::collections::BTreeSet;

use crate::lincomb::LinComb;
use crate::poly::{Mono, Poly};
use crate::scalar::Scalar;

/// Normal form of `p` modulo `basis` (full reduction).
pub fn reduce<S: Scalar>(p: &Poly<S>, basis: &[Poly<S>]) -> Poly<S> {
    let nvars = p.nvars;
    let mut p = p.terms.clone();
    let mut rem = LinComb::new();
    while let Some((m, c)) = p.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
        let div = basis
            .iter()
            .find(|g| g.leading().is_some_and(|(lm, _)| lm.divides(&m)));
        match div {
            Some(g) => {
                let (lm, lc) = g.leading().expect("nonzero divisor");
                let q = m.quotient(lm);
                let f = c / lc.clone();
                for (k, v) in &g.terms {
                    p.add_term(k.mul(&q), -(f.clone() * v.clone()));
                }
            }
            None => {
                p.add_term(m.clone(), -c.clone());
                rem.add_term(m, c);
            }
        }
    }
    Poly { nvars, terms: rem }
}

fn s_poly<S: Scalar>(f: &Poly<S>, g: &Poly<S>) -> Poly<S> {
    let (lf, cf) = f.leading().expect("nonzero");
    let (lg, cg) = g.leading().expect("nonzero");
    let l = lf.lcm(lg);
    f.mul_term(&l.quotient(lf), &(S::one() / cf.clone()))
        .sub(&g.mul_term(&l.quotient(lg), &(S::one() / cg.clone())))
}

/// Reduced Gröbner basis, monic and sorted by increasing leading monomial.
pub fn groebner<S: Scalar>(gens: &[Poly<S>]) -> Vec<Poly<S>> {
    let mut basis: Vec<Poly<S>> = Vec::new();
    let mut pairs: BTreeSet<(Mono, usize, usize)> = BTreeSet::new();
    let add = |basis: &mut Vec<Poly<S>>, pairs: &mut BTreeSet<(Mono, usize, usize)>, p: Poly<S>| {
        let p = p.monic();
        let j = basis.len();
        let lp = p.leading().expect("nonzero").0.clone();
        for (i, g) in basis.iter().enumerate() {
            let lg = g.leading().expect("nonzero").0;
            if !lg.is_coprime(&lp) {
                pairs.insert((lg.lcm(&lp), i, j));
            }
        }
        basis.push(p);
    };
    for g in gens {
        let r = reduce(g, &basis);
        if !r.is_zero() {
            add(&mut basis, &mut pairs, r);
        }
    }
    while let Some((l, i, j)) = pairs.pop_first() {
        // Gebauer-Möller chain criterion: skip if some k has LM(k) | lcm and both other pairs are done.
        let redundant = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].leading().expect("nonzero").0.divides(&l)
                && !pairs.iter().any(|(_, a, b)| {
                    (*a, *b) == (i.min(k), i.max(k)) || (*a, *b) == (j.min(k), j.max(k))
                })
        });
        if redundant {
            continue;
        }
        let r = reduce(&s_poly(&basis[i], &basis[j]), &basis);
        if !r.is_zero() {
            if r.leading().expect("nonzero").0.degree() == 0 {
                return vec![Poly::constant(r.nvars, S::one())];
            }
            add(&mut basis, &mut pairs, r);
        }
    }
    interreduce(basis)
}

fn interreduce<S: Scalar>(mut basis: Vec<Poly<S>>) -> Vec<Poly<S>> {
    basis.sort_by(|a, b| {
        a.leading()
            .expect("nonzero")
            .0
            .cmp(b.leading().expect("nonzero").0)
    });
    let mut min: Vec<Poly<S>> = Vec::new();
    for g in basis {
        let lg = g.leading().expect("nonzero").0.clone();
        if !min
            .iter()
            .any(|h| h.leading().expect("nonzero").0.divides(&lg))
        {
            min.push(g);
        }
    }
    let mut out = Vec::with_capacity(min.len());
    for i in 0..min.len() {
        let others: Vec<Poly<S>> = min
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let (lm, lc) = min[i].leading().expect("nonzero");
        let tail = Poly {
            nvars: min[i].nvars,
            terms: min[i].terms.filter(|m| m != lm),
        };
        let mut g = reduce(&tail, &others);
        g.terms.add_term(lm.clone(), lc.clone());
        out.push(g.monic());
    }
    out
}

/// Whether the reduced basis is `{1}`.
pub fn is_unit<S: Scalar>(basis: &[Poly<S>]) -> bool {
    basis
        .iter()
        .any(|g| g.leading().is_some_and(|(m, _)| m.degree() == 0))
}

/// Monomials outside the leading-term ideal, if there are finitely many.
pub fn standard_monomials<S: Scalar>(basis: &[Poly<S>], nvars: usize) -> Option<Vec<Mono>> {
    let leads: Vec<&Mono> = basis
        .iter()
        .filter_map(|g| g.leading().map(|l| l.0))
        .collect();
    let mut bounds = vec![None; nvars];
    for m in &leads {
        let support: Vec<usize> = (0..nvars).filter(|i| m.0[*i] > 0).collect();
        if support.len() == 1 {
            let i = support[0];
            bounds[i] = Some(bounds[i].map_or(m.0[i], |b: u32| b.min(m.0[i])));
        }
    }
    let bounds: Vec<u32> = bounds.into_iter().collect::<Option<_>>()?;
    let mut out = Vec::new();
    let mut e = vec![0u32; nvars];
    loop {
        let m = Mono(e.clone());
        if !leads.iter().any(|l| l.divides(&m)) {
            out.push(m);
        }
        let mut i = 0;
        loop {
            if i == nvars {
                out.sort();
                return Some(out);
            }
            e[i] += 1;
            if e[i] < bounds[i] {
                break;
            }
            e[i] = 0;
            i += 1;
        }
    }
}

/// Vector-space dimension of `Q[h]/I` when finite.
pub fn quotient_dimension<S: Scalar>(basis: &[Poly<S>], nvars: usize) -> Option<usize> {
    if is_unit(basis) {
        return Some(0);
    }
    standard_monomials(basis, nvars).map(|v| v.len())
}
