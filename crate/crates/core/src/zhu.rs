//! Symbol maps out of `V^k(g)`: the Zhu isomorphism `F` into `U(g)` and the C2 symbol into `S(g)`.

use crate::lincomb::LinComb;
use crate::scalar::Scalar;
use crate::symalg::SymElem;
use crate::uea::{Uea, UeaElem};
use crate::vertex::VaState;

/// `F([a_1(-n_1-1)⋯a_m(-n_m-1)𝟙]) = (-1)^{n_1+⋯+n_m} a_m⋯a_1`, normal-ordered.
pub fn zhu_image<S: Scalar>(u: &Uea<S>, v: &VaState<S>) -> UeaElem<S> {
    let mut out = LinComb::new();
    for (m, c) in v {
        let word: Vec<usize> = m.iter().rev().map(|x| x.gen).collect();
        let n: u32 = m.iter().map(|x| x.depth - 1).sum();
        let sign = if n.is_multiple_of(2) {
            c.clone()
        } else {
            -c.clone()
        };
        out.add_scaled(&u.word(&word), &sign);
    }
    out
}

/// `x(-1) ↦ x`; monomials with a deeper mode map to zero.
pub fn c2_symbol<S: Scalar>(v: &VaState<S>) -> SymElem<S> {
    let mut out = LinComb::new();
    for (m, c) in v {
        if m.iter().all(|x| x.depth == 1) {
            let mut k: Vec<usize> = m.iter().map(|x| x.gen).collect();
            k.sort_unstable();
            out.add_term(k, c.clone());
        }
    }
    out
}
