//! Exact sparse Gaussian elimination.

use std::collections::{BTreeMap, HashMap};

use crate::scalar::Scalar;

pub type SparseVec<S> = BTreeMap<usize, S>;

/// Solve `a x = b` for a square invertible dense matrix.
pub fn solve_square<S: Scalar>(a: &[Vec<S>], b: &[S]) -> Option<Vec<S>> {
    let n = a.len();
    let mut m: Vec<Vec<S>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, p);
        let inv = S::one() / m[col][col].clone();
        for x in m[col].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..=n {
                    let v = m[col][c].clone() * f.clone();
                    m[r][c] = m[r][c].clone() - v;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n].clone()).collect())
}

/// Incremental row echelon form over sparse rows.
///
/// Each stored row has its pivot normalized to one and is reduced against
/// every pivot inserted before it.
#[derive(Clone, Debug)]
pub struct Echelon<S> {
    rows: Vec<(usize, SparseVec<S>)>,
    pivot_of: HashMap<usize, usize>,
}

impl<S: Scalar> Default for Echelon<S> {
    fn default() -> Self {
        Echelon {
            rows: Vec::new(),
            pivot_of: HashMap::new(),
        }
    }
}

fn axpy<S: Scalar>(row: &mut SparseVec<S>, f: &S, other: &SparseVec<S>) {
    for (c, v) in other {
        let d = v.clone() * f.clone();
        match row.get_mut(c) {
            Some(x) => {
                let s = x.clone() - d;
                if s.is_zero() {
                    row.remove(c);
                } else {
                    *x = s;
                }
            }
            None => {
                row.insert(*c, -d);
            }
        }
    }
}

impl<S: Scalar> Echelon<S> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|(p, _)| *p).collect()
    }

    /// Reduce `row` against all stored rows.
    pub fn reduce(&self, mut row: SparseVec<S>) -> SparseVec<S> {
        for (p, r) in &self.rows {
            if let Some(f) = row.get(p).cloned() {
                axpy(&mut row, &f, r);
            }
        }
        row
    }

    /// Insert a row; returns `true` if it increased the rank.
    pub fn insert(&mut self, row: SparseVec<S>) -> bool {
        let mut row = self.reduce(row);
        let Some((&p, lead)) = row.iter().next() else {
            return false;
        };
        let inv = S::one() / lead.clone();
        for v in row.values_mut() {
            *v = v.clone() * inv.clone();
        }
        self.pivot_of.insert(p, self.rows.len());
        self.rows.push((p, row));
        true
    }

    pub fn contains(&self, row: &SparseVec<S>) -> bool {
        self.reduce(row.clone()).is_empty()
    }

    /// Fully reduced rows keyed by pivot column.
    pub fn rref(&self) -> BTreeMap<usize, SparseVec<S>> {
        let mut done: Vec<(usize, SparseVec<S>)> = Vec::with_capacity(self.rows.len());
        for (p, r) in self.rows.iter().rev() {
            let mut row = r.clone();
            for (q, s) in &done {
                if let Some(f) = row.get(q).cloned() {
                    axpy(&mut row, &f, s);
                }
            }
            done.push((*p, row));
        }
        done.into_iter().collect()
    }

    /// Basis of the null space `{x : row·x = 0 for all rows}` over `ncols` columns.
    pub fn nullspace(&self, ncols: usize) -> Vec<SparseVec<S>> {
        let rref = self.rref();
        let mut out = Vec::new();
        for free in 0..ncols {
            if rref.contains_key(&free) {
                continue;
            }
            let mut x = SparseVec::new();
            x.insert(free, S::one());
            for (p, row) in &rref {
                if let Some(v) = row.get(&free) {
                    x.insert(*p, -v.clone());
                }
            }
            out.push(x);
        }
        out
    }
}

/// Rank of a family of sparse vectors.
pub fn rank<S: Scalar>(vs: &[SparseVec<S>]) -> usize {
    let mut e = Echelon::new();
    for v in vs {
        e.insert(v.clone());
    }
    e.rank()
}

/// Coefficients expressing `target` in terms of `basis`, if it lies in their span.
pub fn express_in_span<S: Scalar>(basis: &[SparseVec<S>], target: &SparseVec<S>) -> Option<Vec<S>> {
    // Solve Σ c_j basis_j = target via the null space of [basis | -target].
    let mut rows: BTreeMap<usize, SparseVec<S>> = BTreeMap::new();
    let n = basis.len();
    for (j, b) in basis.iter().enumerate() {
        for (k, v) in b {
            rows.entry(*k).or_default().insert(j, v.clone());
        }
    }
    for (k, v) in target {
        rows.entry(*k).or_default().insert(n, -v.clone());
    }
    let mut e = Echelon::new();
    for (_, r) in rows {
        e.insert(r);
    }
    let ns = e.nullspace(n + 1);
    let sol = ns.into_iter().find(|x| x.contains_key(&n))?;
    let t = sol[&n].clone();
    Some(
        (0..n)
            .map(|j| sol.get(&j).cloned().unwrap_or_else(S::zero) / t.clone())
            .collect(),
    )
}
