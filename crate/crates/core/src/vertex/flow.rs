//! Spectral flow automorphisms of the affine algebra.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::liealg::{
    standard_rep_b3, CartanType, ChevalleyBasis, Embedding, GenKind, RootSystem, Weight,
};
use crate::lincomb::LinComb;
use crate::scalar::{qi, Scalar};
use crate::vertex::conformal_dimension;
use crate::Q;

/// Generator index and mode number.
pub type ModeIndex = (usize, i64);

/// Element of the affine algebra: modes `x(n)` plus a multiple of `K`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct AffineElem {
    pub modes: LinComb<(usize, i64), Q>,
    pub k: Q,
}

impl AffineElem {
    pub fn mode(x: usize, n: i64) -> Self {
        AffineElem {
            modes: LinComb::single((x, n), Q::one()),
            k: Q::zero(),
        }
    }

    fn add_scaled(&mut self, o: &AffineElem, c: &Q) {
        self.modes.add_scaled(&o.modes, c);
        self.k += o.k.clone() * c.clone();
    }
}

/// `[x(m), y(n)] = [x,y](m+n) + m (x|y) δ_{m+n,0} K`.
pub fn affine_bracket(
    g: &ChevalleyBasis,
    (x, m): (usize, i64),
    (y, n): (usize, i64),
) -> AffineElem {
    let mut out = AffineElem::default();
    for (k, c) in g.bracket_basis(x, y) {
        out.modes.add_term((*k, m + n), qi(*c));
    }
    if m + n == 0 {
        out.k = qi(m) * <Q as Scalar>::from_ratio64(&g.form_basis(x, y));
    }
    out
}

/// `(α_i∨|α_j∨)` for simple coroots.
pub fn coroot_gram(rs: &RootSystem) -> Vec<Vec<Q>> {
    let g = rs.gram_q();
    (0..rs.rank)
        .map(|i| {
            (0..rs.rank)
                .map(|j| qi(4) * g[i][j].clone() / (g[i][i].clone() * g[j][j].clone()))
                .collect()
        })
        .collect()
}

/// `Π τ_i^{s_i}`: `e_α(n) ↦ e_α(n - ⟨α, μ⟩)`, `h_j(n) ↦ h_j(n) - δ_{n,0} (α_j∨|μ) K`
/// with `μ = Σ s_i α_i∨`.
#[derive(Clone, Debug)]
pub struct SpectralFlow {
    pub g: Arc<ChevalleyBasis>,
    /// Exponents over the simple coroots.
    pub s: Vec<Q>,
}

impl SpectralFlow {
    pub fn new(g: Arc<ChevalleyBasis>, s: Vec<Q>) -> Self {
        assert_eq!(s.len(), g.rank);
        SpectralFlow { g, s }
    }

    /// The D4 flow along `Λ₁` in the direction used on modes:
    /// `e_α(n) ↦ e_α(n + ⟨α, α₁∨+α₂∨+½α₃∨+½α₄∨⟩)`.
    pub fn d4_lambda1(g: Arc<ChevalleyBasis>) -> Self {
        assert_eq!(g.cartan_type(), CartanType::D4);
        let h = Q::new((-1).into(), 2.into());
        SpectralFlow::new(g, vec![qi(-1), qi(-1), h.clone(), h])
    }

    pub fn inverse(&self) -> Self {
        SpectralFlow {
            g: self.g.clone(),
            s: self.s.iter().map(|x| -x.clone()).collect(),
        }
    }

    /// `⟨β, μ⟩` for `β` in simple-root coordinates.
    pub fn pairing(&self, beta: &[i64]) -> Q {
        let rs = &self.g.roots;
        (0..rs.rank)
            .map(|i| self.s[i].clone() * qi(rs.pairing_root(beta, i)))
            .sum()
    }

    /// `(α_j∨|μ)`.
    pub fn coroot_pairing(&self, j: usize) -> Q {
        let cg = coroot_gram(&self.g.roots);
        (0..self.g.rank)
            .map(|i| self.s[i].clone() * cg[j][i].clone())
            .sum()
    }

    /// `(μ|μ)`.
    pub fn norm(&self) -> Q {
        (0..self.g.rank)
            .map(|j| self.s[j].clone() * self.coroot_pairing(j))
            .sum()
    }

    /// `⟨λ, μ⟩` for a weight.
    pub fn weight_pairing(&self, w: &Weight) -> Q {
        w.fund
            .iter()
            .zip(&self.s)
            .map(|(a, b)| a.clone() * b.clone())
            .sum()
    }

    /// Image of `x(n)` for a basis generator.
    pub fn twist_mode(&self, x: usize, n: i64) -> Result<AffineElem> {
        match self.g.kind(x) {
            GenKind::H(j) => {
                let mut out = AffineElem::mode(x, n);
                if n == 0 {
                    out.k = -self.coroot_pairing(j);
                }
                Ok(out)
            }
            _ => {
                let root = self.g.root_of(x).expect("root vector");
                let p = self.pairing(root);
                if !p.is_integer() {
                    return Err(Error::NonIntegralShift(self.g.name(x)));
                }
                let shift: i64 = p.to_integer().try_into().expect("small shift");
                Ok(AffineElem::mode(x, n - shift))
            }
        }
    }

    /// Image of an affine element; `K` is fixed.
    pub fn twist(&self, a: &AffineElem) -> Result<AffineElem> {
        let mut out = AffineElem {
            modes: LinComb::new(),
            k: a.k.clone(),
        };
        for ((x, n), c) in &a.modes {
            out.add_scaled(&self.twist_mode(*x, *n)?, c);
        }
        Ok(out)
    }

    /// `L₀ ↦ L₀ - h_μ(0) + ½(μ|μ) K`, returned as (coefficients of `h_i(0)`, coefficient of `K`).
    pub fn l0_shift(&self) -> (Vec<Q>, Q) {
        (
            self.s.iter().map(|x| -x.clone()).collect(),
            self.norm() / qi(2),
        )
    }

    /// Generator pairs `(x(m), y(n))`, `|m|,|n| ≤ range`, on which the flow fails to respect brackets.
    pub fn commutation_defects(&self, range: i64) -> Result<Vec<(ModeIndex, ModeIndex)>> {
        let g = &self.g;
        let mut bad = Vec::new();
        for x in 0..g.dim {
            for y in 0..g.dim {
                for m in -range..=range {
                    for n in -range..=range {
                        let lhs = self.twist(&affine_bracket(g, (x, m), (y, n)))?;
                        let tx = self.twist_mode(x, m)?;
                        let ty = self.twist_mode(y, n)?;
                        let mut rhs = AffineElem::default();
                        for (a, ca) in &tx.modes {
                            for (b, cb) in &ty.modes {
                                rhs.add_scaled(
                                    &affine_bracket(g, *a, *b),
                                    &(ca.clone() * cb.clone()),
                                );
                            }
                        }
                        if lhs != rhs {
                            bad.push(((x, m), (y, n)));
                        }
                    }
                }
            }
        }
        Ok(bad)
    }

    /// The flow on the source of an embedding, when `μ` restricts consistently.
    pub fn restrict(&self, emb: &Embedding) -> Result<SpectralFlow> {
        let src = &emb.source;
        let pair_of = |idx: usize| -> Result<Q> {
            let mut val: Option<Q> = None;
            for (k, _) in emb.image_basis(idx) {
                let p = self.pairing(self.g.root_of(*k).expect("root image"));
                match &val {
                    None => val = Some(p),
                    Some(v) if *v == p => {}
                    Some(_) => {
                        return Err(Error::Invalid(format!(
                            "flow does not restrict along {}",
                            src.name(idx)
                        )))
                    }
                }
            }
            Ok(val.unwrap_or_else(Q::zero))
        };
        for i in 0..src.n_pos {
            pair_of(src.e(i))?;
        }
        let p: Vec<Q> = (0..src.rank)
            .map(|i| pair_of(src.e(i)))
            .collect::<Result<_>>()?;
        // ⟨α_i, μ⟩ = Σ_j s_j cartan[j][i]
        let a: Vec<Vec<Q>> = (0..src.rank)
            .map(|i| (0..src.rank).map(|j| qi(src.roots.cartan[j][i])).collect())
            .collect();
        let s = crate::linalg::solve_square(&a, &p).expect("Cartan matrix is invertible");
        let out = SpectralFlow::new(src.clone(), s);
        for j in 0..src.rank {
            let via: Q = emb
                .image_basis(src.h(j))
                .iter()
                .map(|(k, c)| match self.g.kind(*k) {
                    GenKind::H(t) => qi(*c) * self.coroot_pairing(t),
                    _ => Q::zero(),
                })
                .sum();
            if via != out.coroot_pairing(j) {
                return Err(Error::Invalid(format!(
                    "central shift of {} does not restrict",
                    src.name(src.h(j))
                )));
            }
        }
        Ok(out)
    }
}

/// One assertion of the flow lemma.
#[derive(Clone, Debug)]
pub struct FlowCheck {
    pub label: String,
    pub expected_zero: bool,
    pub is_zero: bool,
    pub note: String,
}

impl FlowCheck {
    pub fn pass(&self) -> bool {
        self.expected_zero == self.is_zero
    }
}

/// Outcome of the flow lemma checks on the top level of `L(-2, ϖ₁)` for B3.
#[derive(Clone, Debug)]
pub struct FlowsReport {
    pub checks: Vec<FlowCheck>,
    pub vector_weight: Weight,
    pub twisted_weight: Weight,
    pub twisted_l0: Q,
    pub expected_l0: Q,
}

impl FlowsReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(FlowCheck::pass)
            && self.vector_weight == Weight::from_ints(&[-1, 0, 0])
            && self.twisted_weight == Weight::from_ints(&[-3, 0, 0])
            && self.twisted_l0 == self.expected_l0
    }
}

/// Verify that the flow sends `f_{β₁}(0) e_{-θ}(0) 𝟙_{ϖ₁}` to a highest-weight vector of weight `-3ϖ₁`.
///
/// Only the top level of `L(-2, ϖ₁)` is modelled: positive modes annihilate it
/// and zero modes act through the 7-dimensional representation.
pub fn check_flows_lemma(b3: Arc<ChevalleyBasis>, d4: Arc<ChevalleyBasis>) -> Result<FlowsReport> {
    let level = qi(-2);
    let emb = Embedding::b3_to_d4(b3.clone(), d4.clone());
    let flow = SpectralFlow::d4_lambda1(d4).restrict(&emb)?;
    let rep = standard_rep_b3(&b3);
    let mut top = vec![Q::zero(); 7];
    top[1] = Q::one();
    let theta = b3.highest_root_index();
    let v = rep.act(b3.f(0), &rep.act(b3.f(theta), &top));
    let nonzero = v.iter().any(|x| !x.is_zero());
    let mut checks = vec![FlowCheck {
        label: format!("{}(0) {}(0) 1", b3.name(b3.f(0)), b3.name(b3.f(theta))),
        expected_zero: false,
        is_zero: !nonzero,
        note: "vector in the top level".into(),
    }];
    let j = v
        .iter()
        .position(|x| !x.is_zero())
        .ok_or(Error::ZeroVector)?;
    let vector_weight = rep
        .basis_weight(&b3, j)
        .ok_or_else(|| Error::Invalid("vector is not a weight vector".into()))?;
    let ops: Vec<(usize, i64)> = (0..b3.rank)
        .map(|i| (b3.e(i), 0))
        .chain([(b3.f(theta), 1)])
        .collect();
    for (x, n) in ops {
        let tw = flow.twist_mode(x, n)?;
        let ((y, m), _) = tw
            .modes
            .first()
            .map(|(k, c)| (*k, c.clone()))
            .expect("single mode");
        let (is_zero, note) = match m {
            m if m > 0 => (
                true,
                format!(
                    "{}({m}) lowers the conformal weight below the top level",
                    b3.name(y)
                ),
            ),
            0 => (
                rep.act(y, &v).iter().all(Q::is_zero),
                format!("{}(0) acts in the 7-dimensional module", b3.name(y)),
            ),
            _ => {
                return Err(Error::Invalid(format!(
                    "creation mode {}({m}) on the top level",
                    b3.name(y)
                )))
            }
        };
        checks.push(FlowCheck {
            label: format!("twisted {}({n}) v", b3.name(x)),
            expected_zero: true,
            is_zero,
            note,
        });
    }
    let twisted_weight = Weight::new(
        (0..b3.rank)
            .map(|i| vector_weight.fund[i].clone() - flow.coroot_pairing(i) * level.clone())
            .collect(),
    );
    let (h_coeffs, k_coeff) = flow.l0_shift();
    let top_l0 = conformal_dimension(&b3.roots, &level, &Weight::from_ints(&[1, 0, 0]))?;
    let h_part: Q = h_coeffs
        .iter()
        .zip(&vector_weight.fund)
        .map(|(a, b)| a.clone() * b.clone())
        .sum();
    let twisted_l0 = top_l0 + h_part + k_coeff * level.clone();
    let expected_l0 = conformal_dimension(&b3.roots, &level, &twisted_weight)?;
    Ok(FlowsReport {
        checks,
        vector_weight,
        twisted_weight,
        twisted_l0,
        expected_l0,
    })
}

/// Pairings `⟨α, μ⟩` of all positive roots, keyed by generator name.
pub fn shift_table(flow: &SpectralFlow) -> BTreeMap<String, Q> {
    (0..flow.g.n_pos)
        .map(|i| {
            (
                flow.g.name(flow.g.e(i)),
                flow.pairing(&flow.g.roots.positive_roots[i]),
            )
        })
        .collect()
}
