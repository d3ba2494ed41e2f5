//! Weyl group orbits, Freudenthal multiplicities, Weyl dimensions and matrix representations.

use std::collections::{BTreeSet, HashMap, VecDeque};

use num_traits::{One, Signed, Zero};

use super::chevalley::{ChevalleyBasis, GenKind};
use super::roots::{RootSystem, Weight};
use crate::error::{Error, Result};
use crate::scalar::{qi, Scalar};
use crate::Q;

/// Simple reflection `s_i(λ) = λ - ⟨λ, α_i∨⟩ α_i`.
pub fn reflect(rs: &RootSystem, w: &Weight, i: usize) -> Weight {
    let c = w.fund[i].clone();
    let fund = (0..rs.rank)
        .map(|j| w.fund[j].clone() - c.clone() * qi(rs.cartan[j][i]))
        .collect();
    Weight::new(fund)
}

/// The dominant element of the Weyl orbit of an integral weight.
pub fn dominant_conjugate(rs: &RootSystem, w: &Weight) -> Weight {
    let mut w = w.clone();
    while let Some(i) = (0..rs.rank).find(|&i| w.fund[i].is_negative()) {
        w = reflect(rs, &w, i);
    }
    w
}

/// Full Weyl orbit of a weight.
pub fn weyl_orbit(rs: &RootSystem, w: &Weight) -> BTreeSet<Weight> {
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(w.clone());
    queue.push_back(w.clone());
    while let Some(x) = queue.pop_front() {
        for i in 0..rs.rank {
            let y = reflect(rs, &x, i);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

/// `(λ|α)` for a weight and a root in simple-root coordinates.
fn inner_weight_root(rs: &RootSystem, w: &Weight, alpha: &[i64]) -> Q {
    let mut s = Q::zero();
    for i in 0..rs.rank {
        if alpha[i] != 0 {
            s += w.fund[i].clone() * qi(alpha[i]) * Q::from_ratio64(&rs.gram[i][i]) / qi(2);
        }
    }
    s
}

/// Weyl dimension formula `Π_{α>0} (λ+ρ|α)/(ρ|α)`.
pub fn weyl_dimension(rs: &RootSystem, lambda: &Weight) -> Result<Q> {
    if !lambda.is_dominant_integral() {
        return Err(Error::NotDominantIntegral(lambda.to_string()));
    }
    let rho = Weight::rho(rs);
    let lr = lambda.add(&rho);
    let mut d = Q::one();
    for a in &rs.positive_roots {
        d = d * inner_weight_root(rs, &lr, a) / inner_weight_root(rs, &rho, a);
    }
    Ok(d)
}

/// Weight multiplicities of `L(λ)` by Freudenthal's recursion.
pub struct Freudenthal<'a> {
    rs: &'a RootSystem,
    lambda: Weight,
    norm_top: Q,
    rho: Weight,
    memo: HashMap<Weight, Q>,
}

impl<'a> Freudenthal<'a> {
    pub fn new(rs: &'a RootSystem, lambda: &Weight) -> Result<Self> {
        if !lambda.is_dominant_integral() {
            return Err(Error::NotDominantIntegral(lambda.to_string()));
        }
        let rho = Weight::rho(rs);
        let lr = lambda.add(&rho);
        Ok(Freudenthal {
            rs,
            lambda: lambda.clone(),
            norm_top: lr.inner(&lr, rs),
            rho,
            memo: HashMap::new(),
        })
    }

    /// Whether the dominant weight `mu` satisfies `λ - μ ∈ Q₊`.
    fn below_top(&self, mu: &Weight) -> bool {
        let d = self.lambda.sub(mu).to_root_coords(self.rs);
        d.iter().all(|x| x.is_integer() && !x.is_negative())
    }

    pub fn multiplicity(&mut self, mu: &Weight) -> Q {
        if !mu.is_integral() {
            return Q::zero();
        }
        let dom = dominant_conjugate(self.rs, mu);
        if let Some(v) = self.memo.get(&dom) {
            return v.clone();
        }
        let v = if !self.below_top(&dom) {
            Q::zero()
        } else if dom == self.lambda {
            Q::one()
        } else {
            let mut sum = Q::zero();
            for a in self.rs.positive_roots.clone() {
                let aw = Weight::from_root(self.rs, &a);
                let mut k = 1;
                loop {
                    let nu = dom.add(&aw.scale(&qi(k)));
                    let m = self.multiplicity(&nu);
                    if m.is_zero() {
                        break;
                    }
                    sum += inner_weight_root(self.rs, &nu, &a) * m;
                    k += 1;
                }
            }
            let mr = dom.add(&self.rho);
            let denom = self.norm_top.clone() - mr.inner(&mr, self.rs);
            qi(2) * sum / denom
        };
        self.memo.insert(dom, v.clone());
        v
    }

    /// All dominant weights of `L(λ)` with their multiplicities.
    pub fn dominant_weights(&mut self) -> Vec<(Weight, Q)> {
        let mut out = Vec::new();
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::from([self.lambda.clone()]);
        seen.insert(self.lambda.clone());
        while let Some(w) = queue.pop_front() {
            let m = self.multiplicity(&w);
            if m.is_zero() {
                continue;
            }
            out.push((w.clone(), m));
            for a in self.rs.positive_roots.clone() {
                let nu = dominant_conjugate(self.rs, &w.sub(&Weight::from_root(self.rs, &a)));
                if self.below_top(&nu) && seen.insert(nu.clone()) {
                    queue.push_back(nu);
                }
            }
        }
        out
    }
}

/// Multiplicity of `μ` in `L(λ)`.
pub fn freudenthal_multiplicity(rs: &RootSystem, lambda: &Weight, mu: &Weight) -> Result<Q> {
    Ok(Freudenthal::new(rs, lambda)?.multiplicity(mu))
}

/// `Σ_μ mult(μ)·|W μ|` over dominant weights; equals the Weyl dimension.
pub fn freudenthal_total(rs: &RootSystem, lambda: &Weight) -> Result<Q> {
    let mut f = Freudenthal::new(rs, lambda)?;
    let mut total = Q::zero();
    for (w, m) in f.dominant_weights() {
        total += m * qi(weyl_orbit(rs, &w).len() as i64);
    }
    Ok(total)
}

/// Dense square matrix over `Q`.
pub type Matrix = Vec<Vec<Q>>;

pub fn mat_zero(n: usize) -> Matrix {
    vec![vec![Q::zero(); n]; n]
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let mut c = mat_zero(n);
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k][j].is_zero() {
                    c[i][j] += a[i][k].clone() * b[k][j].clone();
                }
            }
        }
    }
    c
}

pub fn mat_commutator(a: &Matrix, b: &Matrix) -> Matrix {
    let ab = mat_mul(a, b);
    let ba = mat_mul(b, a);
    ab.into_iter()
        .zip(ba)
        .map(|(r, s)| r.into_iter().zip(s).map(|(x, y)| x - y).collect())
        .collect()
}

fn mat_scale(a: &Matrix, c: &Q) -> Matrix {
    a.iter()
        .map(|r| r.iter().map(|x| x * c).collect())
        .collect()
}

pub fn mat_apply(a: &Matrix, v: &[Q]) -> Vec<Q> {
    a.iter()
        .map(|r| r.iter().zip(v).fold(Q::zero(), |s, (x, y)| s + x * y))
        .collect()
}

/// Matrix representation extended from simple generators along extraspecial pairs.
#[derive(Clone, Debug)]
pub struct MatrixRep {
    pub dim: usize,
    /// One matrix per Chevalley basis vector.
    pub mats: Vec<Matrix>,
}

impl MatrixRep {
    pub fn from_simple(g: &ChevalleyBasis, e_simple: &[Matrix], f_simple: &[Matrix]) -> Self {
        let n = e_simple[0].len();
        let mut mats = vec![mat_zero(n); g.dim];
        for i in 0..g.rank {
            mats[g.e(i)] = e_simple[i].clone();
            mats[g.f(i)] = f_simple[i].clone();
        }
        let rs = &g.roots;
        for (k, xi) in rs.positive_roots.iter().enumerate().skip(g.rank) {
            // first positive root r with xi - r positive
            let (r, s) = rs
                .positive_roots
                .iter()
                .find_map(|r| {
                    let s: Vec<i64> = xi.iter().zip(r).map(|(x, y)| x - y).collect();
                    rs.positive_index(&s).map(|_| (r.clone(), s))
                })
                .expect("extraspecial pair");
            let (ir, is) = (
                rs.positive_index(&r).unwrap(),
                rs.positive_index(&s).unwrap(),
            );
            let nrs = g.structure_constant(&r, &s).expect("root sum");
            let nr: Vec<i64> = r.iter().map(|x| -x).collect();
            let ns: Vec<i64> = s.iter().map(|x| -x).collect();
            let nneg = g.structure_constant(&nr, &ns).expect("root sum");
            mats[g.e(k)] = mat_scale(
                &mat_commutator(&mats[g.e(ir)], &mats[g.e(is)]),
                &Q::new(1.into(), nrs.into()),
            );
            mats[g.f(k)] = mat_scale(
                &mat_commutator(&mats[g.f(ir)], &mats[g.f(is)]),
                &Q::new(1.into(), nneg.into()),
            );
        }
        for i in 0..g.rank {
            mats[g.h(i)] = mat_commutator(&mats[g.e(i)], &mats[g.f(i)]);
        }
        MatrixRep { dim: n, mats }
    }

    /// Basis pairs `(a, b)` with `ρ([a,b]) ≠ [ρ(a), ρ(b)]`.
    pub fn bracket_defects(&self, g: &ChevalleyBasis) -> Vec<(usize, usize)> {
        let mut bad = Vec::new();
        for a in 0..g.dim {
            for b in 0..g.dim {
                let mut lhs = mat_zero(self.dim);
                for (k, c) in g.bracket_basis(a, b) {
                    for i in 0..self.dim {
                        for j in 0..self.dim {
                            lhs[i][j] += self.mats[*k][i][j].clone() * qi(*c);
                        }
                    }
                }
                if lhs != mat_commutator(&self.mats[a], &self.mats[b]) {
                    bad.push((a, b));
                }
            }
        }
        bad
    }

    /// Weight (fundamental coordinates) of a basis vector that is an `h`-eigenvector.
    pub fn basis_weight(&self, g: &ChevalleyBasis, j: usize) -> Option<Weight> {
        let mut fund = Vec::new();
        for i in 0..g.rank {
            let m = &self.mats[g.h(i)];
            if (0..self.dim).any(|r| r != j && !m[r][j].is_zero()) {
                return None;
            }
            fund.push(m[j][j].clone());
        }
        Some(Weight::new(fund))
    }

    pub fn act(&self, idx: usize, v: &[Q]) -> Vec<Q> {
        mat_apply(&self.mats[idx], v)
    }
}

/// The 7-dimensional representation of B3 on `ε₁..ε₇` (indices 0..7) with the arrow chain
/// `ε₂ →f₁ ε₃ →f₂ ε₄ →f₃ ε₁ →f₃ ε₇ →f₂ ε₆ →f₁ ε₅`.
pub fn standard_rep_b3(g: &ChevalleyBasis) -> MatrixRep {
    assert_eq!(g.cartan_type(), super::roots::CartanType::B3);
    let n = 7;
    let unit = |to: usize, from: usize, c: i64, m: &mut Matrix| m[to][from] = qi(c);
    let mut e = vec![mat_zero(n), mat_zero(n), mat_zero(n)];
    let mut f = vec![mat_zero(n), mat_zero(n), mat_zero(n)];
    // ε_k is index k-1
    unit(2, 1, 1, &mut f[0]);
    unit(4, 5, 1, &mut f[0]);
    unit(3, 2, 1, &mut f[1]);
    unit(5, 6, 1, &mut f[1]);
    unit(0, 3, 1, &mut f[2]);
    unit(6, 0, 1, &mut f[2]);
    unit(1, 2, 1, &mut e[0]);
    unit(5, 4, 1, &mut e[0]);
    unit(2, 3, 1, &mut e[1]);
    unit(6, 5, 1, &mut e[1]);
    // three-dimensional β₃-string: forced coefficients
    unit(3, 0, 2, &mut e[2]);
    unit(0, 6, 2, &mut e[2]);
    MatrixRep::from_simple(g, &e, &f)
}

/// Whether a basis vector index is a Cartan element.
pub fn is_cartan(g: &ChevalleyBasis, idx: usize) -> bool {
    matches!(g.kind(idx), GenKind::H(_))
}
