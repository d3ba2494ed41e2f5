//! Graded components, conformal dimensions and singular-vector search.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Signed, Zero};

use super::{Mode, VaState, VertexAlgebra};
use crate::error::{Error, Result};
use crate::liealg::{RootSystem, Weight};
use crate::linalg::{Echelon, SparseVec};
use crate::lincomb::LinComb;
use crate::Q;

/// `h_λ = (λ|λ+2ρ) / (2(k+h∨))`.
pub fn conformal_dimension(rs: &RootSystem, k: &Q, lambda: &Weight) -> Result<Q> {
    let denom = (k + Q::from_integer(rs.dual_coxeter_number.into())) * Q::from_integer(2.into());
    if denom.is_zero() {
        return Err(Error::CriticalLevel(k.to_string()));
    }
    let two_rho = Weight::rho(rs).scale(&Q::from_integer(2.into()));
    Ok(lambda.inner(&lambda.add(&two_rho), rs) / denom)
}

/// Dominant integral weights with integral conformal dimension in `[0, max_dim]`.
pub fn enumerate_integer_dimensions(
    rs: &RootSystem,
    k: &Q,
    max_dim: i64,
) -> Result<Vec<(Weight, Q)>> {
    if k + Q::from_integer(rs.dual_coxeter_number.into()) <= Q::zero() {
        return Err(Error::Invalid("enumeration needs k + h∨ > 0".into()));
    }
    let max = Q::from_integer(max_dim.into());
    let mut out = Vec::new();
    let mut coords = vec![0i64; rs.rank];
    // h is increasing in every fundamental coordinate, so each axis can stop at the first overshoot.
    fn rec(
        rs: &RootSystem,
        k: &Q,
        max: &Q,
        i: usize,
        coords: &mut Vec<i64>,
        out: &mut Vec<(Weight, Q)>,
    ) -> Result<()> {
        if i == coords.len() {
            let w = Weight::from_ints(coords);
            let h = conformal_dimension(rs, k, &w)?;
            if h.is_integer() && !h.is_negative() && h <= *max {
                out.push((w, h));
            }
            return Ok(());
        }
        loop {
            let mut probe = coords.clone();
            probe[i + 1..].iter_mut().for_each(|c| *c = 0);
            if conformal_dimension(rs, k, &Weight::from_ints(&probe))? > *max {
                break;
            }
            rec(rs, k, max, i + 1, coords, out)?;
            coords[i] += 1;
        }
        coords[i] = 0;
        Ok(())
    }
    rec(rs, k, &max, 0, &mut coords, &mut out)?;
    out.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
    Ok(out)
}

/// Canonical monomials of the given conformal weight and simple-root weight.
pub fn graded_basis(va: &VertexAlgebra<Q>, weight: &[i64], degree: u32) -> Vec<Vec<Mode>> {
    let g = &va.g;
    let theta = g.roots.highest_root();
    let mut modes = Vec::new();
    for d in (1..=degree).rev() {
        for x in 0..g.dim {
            modes.push(Mode::new(x, d));
        }
    }
    let mut out = Vec::new();
    let mut cur = Vec::new();
    let mut rem: Vec<i64> = weight.to_vec();
    #[allow(clippy::too_many_arguments)]
    fn rec(
        va: &VertexAlgebra<Q>,
        modes: &[Mode],
        start: usize,
        left: u32,
        rem: &mut Vec<i64>,
        theta: &[i64],
        cur: &mut Vec<Mode>,
        out: &mut Vec<Vec<Mode>>,
    ) {
        if left == 0 {
            if rem.iter().all(|x| *x == 0) {
                out.push(cur.clone());
            }
            return;
        }
        if rem
            .iter()
            .zip(theta)
            .any(|(r, t)| r.abs() > left as i64 * t)
        {
            return;
        }
        for (i, m) in modes.iter().enumerate().skip(start) {
            if m.depth > left {
                continue;
            }
            let w = va.g.weight_of(m.gen);
            rem.iter_mut().zip(w).for_each(|(r, x)| *r -= x);
            cur.push(*m);
            rec(va, modes, i, left - m.depth, rem, theta, cur, out);
            cur.pop();
            rem.iter_mut().zip(w).for_each(|(r, x)| *r += x);
        }
    }
    rec(va, &modes, 0, degree, &mut rem, &theta, &mut cur, &mut out);
    out
}

/// Basis of singular vectors of weight `λ` and conformal weight `degree`.
pub fn search_singular(
    va: &VertexAlgebra<Q>,
    lambda: &Weight,
    degree: u32,
) -> Result<Vec<VaState<Q>>> {
    let coords = lambda.to_root_coords(&va.g.roots);
    if coords.iter().any(|c| !c.is_integer()) {
        return Err(Error::EmptyComponent);
    }
    let target: Vec<i64> = coords
        .iter()
        .map(|c| c.to_integer().try_into().expect("small weight"))
        .collect();
    let basis = graded_basis(va, &target, degree);
    if basis.is_empty() {
        return Err(Error::EmptyComponent);
    }
    let mut rows: BTreeMap<(usize, Vec<Mode>), SparseVec<Q>> = BTreeMap::new();
    for (op, (_, x, n)) in va.singular_operators().into_iter().enumerate() {
        for (j, m) in basis.iter().enumerate() {
            let img = va.apply_basis_mode(x, n, &LinComb::single(m.clone(), Q::one()));
            for (t, c) in img {
                rows.entry((op, t)).or_default().insert(j, c);
            }
        }
    }
    let mut ech = Echelon::new();
    for (_, r) in rows {
        ech.insert(r);
    }
    Ok(ech
        .nullspace(basis.len())
        .into_iter()
        .map(|x| x.into_iter().map(|(j, c)| (basis[j].clone(), c)).collect())
        .collect())
}

/// Graded pieces of the ideal generated by a singular vector.
///
/// `I_{d,ν}` is spanned by `U(n₋)`-translates of the generator at its own
/// degree and by creation modes applied to lower pieces.
pub struct IdealComponent<'a> {
    va: &'a VertexAlgebra<Q>,
    gen: VaState<Q>,
    gen_degree: u32,
    gen_weight: Vec<i64>,
    memo: HashMap<(u32, Vec<i64>), Vec<VaState<Q>>>,
}

impl<'a> IdealComponent<'a> {
    pub fn new(va: &'a VertexAlgebra<Q>, gen: VaState<Q>) -> Result<Self> {
        let first = gen.keys().next().ok_or(Error::ZeroVector)?;
        let gen_degree = VertexAlgebra::<Q>::conformal_weight_of(first);
        let gen_weight = va.root_weight_of(first);
        Ok(IdealComponent {
            va,
            gen,
            gen_degree,
            gen_weight,
            memo: HashMap::new(),
        })
    }

    /// A basis of `I_{degree, weight}`.
    pub fn basis(&mut self, degree: u32, weight: &[i64]) -> Vec<VaState<Q>> {
        let key = (degree, weight.to_vec());
        if let Some(b) = self.memo.get(&key) {
            return b.clone();
        }
        let theta = self.va.g.roots.highest_root();
        let mut spanning = Vec::new();
        let out_of_range = weight
            .iter()
            .zip(&theta)
            .any(|(w, t)| w.abs() > degree as i64 * t);
        if degree < self.gen_degree || out_of_range {
        } else if degree == self.gen_degree {
            let diff: Vec<i64> = self
                .gen_weight
                .iter()
                .zip(weight)
                .map(|(a, b)| a - b)
                .collect();
            if diff.iter().all(|x| *x == 0) {
                spanning.push(self.gen.clone());
            } else if diff.iter().all(|x| *x >= 0) {
                for i in 0..self.va.g.rank {
                    let mut up = weight.to_vec();
                    up[i] += 1;
                    for v in self.basis(degree, &up) {
                        spanning.push(self.va.apply_basis_mode(self.va.g.f(i), 0, &v));
                    }
                }
            }
        } else {
            for n in 1..=(degree - self.gen_degree) {
                for x in 0..self.va.g.dim {
                    let wx = self.va.g.weight_of(x);
                    let lower: Vec<i64> = weight.iter().zip(wx).map(|(a, b)| a - b).collect();
                    for v in self.basis(degree - n, &lower) {
                        spanning.push(self.va.apply_basis_mode(x, -(n as i64), &v));
                    }
                }
            }
        }
        let basis = reduce_to_basis(spanning);
        self.memo.insert(key, basis.clone());
        basis
    }

    /// Whether `v` (homogeneous of the given degree and weight) lies in the ideal.
    pub fn contains(&mut self, v: &VaState<Q>, degree: u32, weight: &[i64]) -> bool {
        let basis = self.basis(degree, weight);
        let mut index: HashMap<Vec<Mode>, usize> = HashMap::new();
        let mut vec_of = |s: &VaState<Q>| -> SparseVec<Q> {
            s.iter()
                .map(|(m, c)| {
                    let n = index.len();
                    (*index.entry(m.clone()).or_insert(n), c.clone())
                })
                .collect()
        };
        let mut ech = Echelon::new();
        for b in &basis {
            ech.insert(vec_of(b));
        }
        let t = vec_of(v);
        ech.contains(&t)
    }
}

/// Linearly independent subfamily spanning the same space.
fn reduce_to_basis(vs: Vec<VaState<Q>>) -> Vec<VaState<Q>> {
    let mut index: HashMap<Vec<Mode>, usize> = HashMap::new();
    let mut ech = Echelon::new();
    let mut out = Vec::new();
    for v in vs {
        let row: SparseVec<Q> = v
            .iter()
            .map(|(m, c)| {
                let n = index.len();
                (*index.entry(m.clone()).or_insert(n), c.clone())
            })
            .collect();
        if ech.insert(row) {
            out.push(v);
        }
    }
    out
}
