//! Exact zero sets of small polynomial systems over Q.
//!
//! Components are affine subspaces `base + Σ t_j dirs[j]`. Points are found
//! from the minimal polynomial of the last variable in the quotient ring;
//! positive-dimensional ideals are split along rational linear factors.
//! Pieces that need an algebraic extension are returned unresolved.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::groebner::{groebner, is_unit, reduce, standard_monomials};
use crate::linalg::{express_in_span, Echelon, SparseVec};
use crate::poly::{Mono, Poly};
use crate::scalar::denominator_lcm;
use crate::Q;

/// Affine subspace of solutions.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Component {
    pub base: Vec<Q>,
    pub dirs: Vec<Vec<Q>>,
}

impl Component {
    pub fn point(base: Vec<Q>) -> Self {
        Component {
            base,
            dirs: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dirs.len()
    }

    pub fn at(&self, t: &[Q]) -> Vec<Q> {
        let mut out = self.base.clone();
        for (d, tj) in self.dirs.iter().zip(t) {
            for (o, x) in out.iter_mut().zip(d) {
                *o += x * tj;
            }
        }
        out
    }

    /// Whether `self ⊆ other`.
    pub fn within(&self, other: &Component) -> bool {
        let span: Vec<SparseVec<Q>> = other.dirs.iter().map(|d| dense_to_sparse(d)).collect();
        let mut ech = Echelon::new();
        for r in &span {
            ech.insert(r.clone());
        }
        let shift: Vec<Q> = self
            .base
            .iter()
            .zip(&other.base)
            .map(|(a, b)| a - b)
            .collect();
        ech.contains(&dense_to_sparse(&shift))
            && self.dirs.iter().all(|d| ech.contains(&dense_to_sparse(d)))
    }

    /// Every polynomial vanishes identically on the component.
    pub fn annihilated_by(&self, p: &Poly<Q>) -> bool {
        let n = self.dim();
        let images: Vec<Poly<Q>> = (0..self.base.len())
            .map(|i| {
                let mut q = Poly::constant(n, self.base[i].clone());
                for (j, d) in self.dirs.iter().enumerate() {
                    q = q.add(&Poly::var(n, j).scale(&d[i]));
                }
                q
            })
            .collect();
        if n == 0 {
            return p.eval(&self.base).is_zero();
        }
        p.compose(&images).is_zero()
    }
}

fn dense_to_sparse(v: &[Q]) -> SparseVec<Q> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

/// Part of the zero set left as an ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Unresolved {
    pub basis: Vec<Poly<Q>>,
    pub reason: String,
}

#[derive(Clone, Debug, Default)]
pub struct ZeroSet {
    pub components: Vec<Component>,
    pub unresolved: Vec<Unresolved>,
}

impl ZeroSet {
    pub fn points(&self) -> Vec<Vec<Q>> {
        self.components
            .iter()
            .filter(|c| c.dim() == 0)
            .map(|c| c.base.clone())
            .collect()
    }

    pub fn families(&self) -> Vec<&Component> {
        self.components.iter().filter(|c| c.dim() > 0).collect()
    }

    pub fn is_finite(&self) -> bool {
        self.unresolved.is_empty() && self.components.iter().all(|c| c.dim() == 0)
    }
}

/// Zero set of `polys` in `nvars` variables.
pub fn solve(polys: &[Poly<Q>], nvars: usize) -> ZeroSet {
    let mut z = solve_rec(polys.to_vec(), nvars);
    z.components.sort();
    z.components.dedup();
    let comps = z.components.clone();
    z.components = comps
        .iter()
        .enumerate()
        .filter(|(i, c)| {
            !comps
                .iter()
                .enumerate()
                .any(|(j, d)| *i != j && c.within(d) && !(d.within(c) && j > *i))
        })
        .map(|(_, c)| c.clone())
        .collect();
    z
}

fn solve_rec(polys: Vec<Poly<Q>>, n: usize) -> ZeroSet {
    let polys: Vec<Poly<Q>> = polys.into_iter().filter(|p| !p.is_zero()).collect();
    if n == 0 {
        let mut z = ZeroSet::default();
        if polys.is_empty() {
            z.components.push(Component::point(Vec::new()));
        }
        return z;
    }
    if polys.is_empty() {
        let dirs = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { Q::one() } else { Q::zero() })
                    .collect()
            })
            .collect();
        return ZeroSet {
            components: vec![Component {
                base: vec![Q::zero(); n],
                dirs,
            }],
            unresolved: Vec::new(),
        };
    }
    let g = groebner(&polys);
    if is_unit(&g) {
        return ZeroSet::default();
    }
    if let Some(lin) = g.iter().find(|p| p.total_degree() == 1) {
        return substitute_linear(&g, lin, n);
    }
    if standard_monomials(&g, n).is_some() {
        return solve_zero_dim(&g, n);
    }
    for (k, p) in g.iter().enumerate() {
        if let Some(l) = linear_factors(p).into_iter().next() {
            let q = divide_exact(p, &l).expect("factor divides");
            let mut a = g.clone();
            a.push(l);
            let mut b = g.clone();
            b[k] = q;
            let mut z = solve_rec(a, n);
            let zb = solve_rec(b, n);
            z.components.extend(zb.components);
            z.unresolved.extend(zb.unresolved);
            return z;
        }
    }
    ZeroSet {
        components: Vec::new(),
        unresolved: vec![Unresolved {
            basis: g,
            reason: "positive-dimensional without rational linear factors".into(),
        }],
    }
}

/// Eliminate the last variable occurring in a degree-one element.
fn substitute_linear(g: &[Poly<Q>], lin: &Poly<Q>, n: usize) -> ZeroSet {
    let mut a = vec![Q::zero(); n];
    let mut c = Q::zero();
    for (m, v) in &lin.terms {
        match (0..n).find(|i| m.0[*i] == 1) {
            Some(i) => a[i] = v.clone(),
            None => c = v.clone(),
        }
    }
    let i = (0..n)
        .rev()
        .find(|i| !a[*i].is_zero())
        .expect("linear element");
    let m = n - 1;
    let images: Vec<Poly<Q>> = (0..n)
        .map(|j| {
            if j < i {
                Poly::var(m, j)
            } else if j > i {
                Poly::var(m, j - 1)
            } else {
                let mut e = Poly::constant(m, -c.clone() / a[i].clone());
                for k in (0..n).filter(|k| *k != i) {
                    let kk = if k < i { k } else { k - 1 };
                    e = e.add(&Poly::var(m, kk).scale(&(-a[k].clone() / a[i].clone())));
                }
                e
            }
        })
        .collect();
    let rest: Vec<Poly<Q>> = g
        .iter()
        .filter(|p| *p != lin)
        .map(|p| restrict(p, &images, m))
        .collect();
    let sub = solve_rec(rest, m);
    let lift = |v: &[Q], with_c: bool| -> Vec<Q> {
        let mut out = Vec::with_capacity(n);
        let mut s = if with_c { -c.clone() } else { Q::zero() };
        for k in (0..n).filter(|k| *k != i) {
            let kk = if k < i { k } else { k - 1 };
            s -= &a[k] * &v[kk];
        }
        for k in 0..n {
            if k == i {
                out.push(s.clone() / a[i].clone());
            } else {
                out.push(v[if k < i { k } else { k - 1 }].clone());
            }
        }
        out
    };
    let components = sub
        .components
        .iter()
        .map(|cp| Component {
            base: lift(&cp.base, true),
            dirs: cp.dirs.iter().map(|d| lift(d, false)).collect(),
        })
        .collect();
    let back: Vec<Poly<Q>> = (0..m)
        .map(|k| Poly::var(n, if k < i { k } else { k + 1 }))
        .collect();
    let unresolved = sub
        .unresolved
        .into_iter()
        .map(|u| {
            let mut basis: Vec<Poly<Q>> = u
                .basis
                .iter()
                .map(|p| if m == 0 { p.clone() } else { p.compose(&back) })
                .collect();
            basis.push(lin.clone());
            Unresolved {
                basis,
                reason: u.reason,
            }
        })
        .collect();
    ZeroSet {
        components,
        unresolved,
    }
}

fn restrict(p: &Poly<Q>, images: &[Poly<Q>], m: usize) -> Poly<Q> {
    if m == 0 {
        let v: Vec<Q> = images
            .iter()
            .map(|q| q.terms.coeff(&Mono::one(0)))
            .collect();
        return Poly::constant(0, p.eval(&v));
    }
    p.compose(images)
}

fn solve_zero_dim(g: &[Poly<Q>], n: usize) -> ZeroSet {
    let x = n - 1;
    let minpoly = minimal_polynomial(g, n, x);
    let roots = rational_roots(&minpoly);
    let mut z = ZeroSet::default();
    let mut left = minpoly.clone();
    for r in &roots {
        while uni_eval(&left, r).is_zero() {
            left = uni_div_exact(&left, &[-r.clone(), Q::one()]);
        }
        let mut h = g.to_vec();
        h.push(Poly::var(n, x).sub(&Poly::constant(n, r.clone())));
        let sub = solve_rec(h, n);
        z.components.extend(sub.components);
        z.unresolved.extend(sub.unresolved);
    }
    if uni_trim(&left).len() > 1 {
        let mut basis = g.to_vec();
        basis.push(Poly::from_terms(
            n,
            left.iter().enumerate().map(|(k, c)| {
                (
                    {
                        let mut e = vec![0; n];
                        e[x] = k as u32;
                        Mono(e)
                    },
                    c.clone(),
                )
            }),
        ));
        z.unresolved.push(Unresolved {
            basis,
            reason: format!(
                "factor of degree {} in h{} has no rational roots",
                uni_trim(&left).len() - 1,
                x + 1
            ),
        });
    }
    z
}

/// Minimal polynomial of `h_{x+1}` modulo a zero-dimensional Gröbner basis, low degree first.
pub fn minimal_polynomial(g: &[Poly<Q>], n: usize, x: usize) -> Vec<Q> {
    let mut rows: Vec<SparseVec<Q>> = Vec::new();
    let mut index: BTreeMap<Mono, usize> = BTreeMap::new();
    let mut power = Poly::constant(n, Q::one());
    loop {
        let nf = reduce(&power, g);
        let row: SparseVec<Q> = nf
            .terms
            .iter()
            .map(|(m, c)| {
                let k = index.len();
                (*index.entry(m.clone()).or_insert(k), c.clone())
            })
            .collect();
        if let Some(coeffs) = express_in_span(&rows, &row) {
            let mut out: Vec<Q> = coeffs.into_iter().map(|c| -c).collect();
            out.push(Q::one());
            return out;
        }
        rows.push(row);
        power = power.mul(&Poly::var(n, x));
    }
}

/// Affine factors of `p` with rational coefficients, one per distinct factor.
pub fn linear_factors(p: &Poly<Q>) -> Vec<Poly<Q>> {
    let n = p.nvars;
    let mut found: Vec<Poly<Q>> = Vec::new();
    for i in p.support_vars() {
        let others: Vec<usize> = (0..n).filter(|j| *j != i).collect();
        for attempt in 0..6i64 {
            let base: Vec<Q> = (0..n)
                .map(|j| Q::from_integer((3 + 7 * attempt + 5 * j as i64).into()))
                .collect();
            let mut pts = vec![base.clone()];
            for &j in &others {
                let mut q = base.clone();
                q[j] += Q::one();
                pts.push(q);
            }
            let unis: Vec<Vec<Q>> = pts.iter().map(|pt| specialize(p, i, pt)).collect();
            if unis.iter().any(|u| uni_trim(u).is_empty()) {
                continue;
            }
            let roots: Vec<Vec<Q>> = unis.iter().map(|u| rational_roots(u)).collect();
            let mut choice = vec![0usize; roots.len()];
            if roots.iter().any(|r| r.is_empty()) {
                break;
            }
            loop {
                let r0 = &roots[0][choice[0]];
                let mut l = Poly::var(n, i).sub(&Poly::constant(n, r0.clone()));
                for (k, &j) in others.iter().enumerate() {
                    let slope = &roots[k + 1][choice[k + 1]] - r0;
                    l = l.sub(
                        &Poly::var(n, j)
                            .sub(&Poly::constant(n, base[j].clone()))
                            .scale(&slope),
                    );
                }
                let l = l.monic();
                if !found.contains(&l) && divide_exact(p, &l).is_some() {
                    found.push(l);
                }
                let mut k = 0;
                loop {
                    if k == choice.len() {
                        break;
                    }
                    choice[k] += 1;
                    if choice[k] < roots[k].len() {
                        break;
                    }
                    choice[k] = 0;
                    k += 1;
                }
                if k == choice.len() {
                    break;
                }
            }
            break;
        }
    }
    found
}

/// `p` with every variable except `x_i` set from `pt`, as a univariate coefficient list.
fn specialize(p: &Poly<Q>, i: usize, pt: &[Q]) -> Vec<Q> {
    let mut out: Vec<Q> = Vec::new();
    for (m, c) in &p.terms {
        let mut t = c.clone();
        for (j, e) in m.0.iter().enumerate() {
            if j != i {
                for _ in 0..*e {
                    t *= &pt[j];
                }
            }
        }
        let d = m.0[i] as usize;
        if out.len() <= d {
            out.resize(d + 1, Q::zero());
        }
        out[d] += t;
    }
    uni_trim(&out)
}

/// `p / d` if `d` divides `p` exactly.
pub fn divide_exact(p: &Poly<Q>, d: &Poly<Q>) -> Option<Poly<Q>> {
    let (ld, cd) = d.leading()?;
    let mut r = p.clone();
    let mut q = Poly::zero(p.nvars);
    while let Some((m, c)) = r.leading().map(|(m, c)| (m.clone(), c.clone())) {
        if !ld.divides(&m) {
            return None;
        }
        let t = m.quotient(ld);
        let f = c / cd.clone();
        r = r.sub(&d.mul_term(&t, &f));
        q.terms.add_term(t, f);
    }
    Some(q)
}

fn uni_trim(p: &[Q]) -> Vec<Q> {
    let mut v = p.to_vec();
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn uni_eval(p: &[Q], x: &Q) -> Q {
    p.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
}

fn uni_rem(a: &[Q], b: &[Q]) -> Vec<Q> {
    let b = uni_trim(b);
    let mut r = uni_trim(a);
    let lb = b.last().expect("nonzero divisor").clone();
    while r.len() >= b.len() {
        let f = r.last().expect("nonzero").clone() / lb.clone();
        let s = r.len() - b.len();
        for (k, c) in b.iter().enumerate() {
            r[s + k] -= &f * c;
        }
        r.pop();
        r = uni_trim(&r);
    }
    r
}

fn uni_div_exact(a: &[Q], b: &[Q]) -> Vec<Q> {
    let b = uni_trim(b);
    let mut r = uni_trim(a);
    let lb = b.last().expect("nonzero divisor").clone();
    let mut q = vec![Q::zero(); r.len().saturating_sub(b.len()) + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let f = r.last().expect("nonzero").clone() / lb.clone();
        let s = r.len() - b.len();
        for (k, c) in b.iter().enumerate() {
            r[s + k] -= &f * c;
        }
        q[s] = f;
        r.pop();
        r = uni_trim(&r);
    }
    uni_trim(&q)
}

fn uni_gcd(a: &[Q], b: &[Q]) -> Vec<Q> {
    let (mut a, mut b) = (uni_trim(a), uni_trim(b));
    while !b.is_empty() {
        let r = uni_rem(&a, &b);
        a = b;
        b = r;
    }
    let l = a.last().cloned().unwrap_or_else(Q::one);
    a.iter().map(|c| c / &l).collect()
}

fn uni_deriv(p: &[Q]) -> Vec<Q> {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * Q::from_integer((k as i64).into()))
        .collect()
}

/// Distinct rational roots of a univariate polynomial (coefficients low degree first), ascending.
pub fn rational_roots(p: &[Q]) -> Vec<Q> {
    let mut f = uni_trim(p);
    let mut out = Vec::new();
    if f.len() <= 1 {
        return out;
    }
    if f[0].is_zero() {
        out.push(Q::zero());
        while f[0].is_zero() {
            f.remove(0);
        }
    }
    if f.len() > 1 {
        let g = uni_gcd(&f, &uni_deriv(&f));
        let f = uni_div_exact(&f, &g);
        let l = Q::from_integer(denominator_lcm(f.iter()));
        let a: Vec<Q> = f.iter().map(|c| c * &l).collect();
        let deg = a.len() - 1;
        let lead = a[deg].clone();
        // y = lead·x turns `a` into a monic integer polynomial whose rational roots are integers
        let mut m = vec![Q::zero(); deg + 1];
        let mut pw = Q::one();
        for k in (0..deg).rev() {
            m[k] = &a[k] * &pw;
            pw *= &lead;
        }
        m[deg] = Q::one();
        let bound = m
            .iter()
            .take(deg)
            .map(|c| c.abs())
            .fold(Q::zero(), |x, y| if y > x { y } else { x })
            + Q::one();
        let bound = bound.ceil().to_integer();
        let seq = sturm_sequence(&m);
        let mut ys = Vec::new();
        integer_roots(&m, &seq, -bound.clone(), bound, &mut ys);
        out.extend(ys.into_iter().map(|y| Q::from_integer(y) / &lead));
    }
    out.sort();
    out
}

fn sturm_sequence(p: &[Q]) -> Vec<Vec<Q>> {
    let mut seq = vec![uni_trim(p), uni_deriv(p)];
    loop {
        let k = seq.len();
        if uni_trim(&seq[k - 1]).is_empty() {
            seq.pop();
            return seq;
        }
        let r: Vec<Q> = uni_rem(&seq[k - 2], &seq[k - 1])
            .into_iter()
            .map(|c| -c)
            .collect();
        if r.is_empty() {
            return seq;
        }
        seq.push(r);
    }
}

fn sign_changes(seq: &[Vec<Q>], x: &Q) -> usize {
    let signs: Vec<bool> = seq
        .iter()
        .map(|p| uni_eval(p, x))
        .filter(|v| !v.is_zero())
        .map(|v| v.is_positive())
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Integer roots of a monic integer polynomial in `[lo, hi]`.
fn integer_roots(
    p: &[Q],
    seq: &[Vec<Q>],
    lo: num_bigint::BigInt,
    hi: num_bigint::BigInt,
    out: &mut Vec<num_bigint::BigInt>,
) {
    let half = Q::new(1.into(), 2.into());
    let a = Q::from_integer(lo.clone()) - &half;
    let b = Q::from_integer(hi.clone()) + &half;
    if sign_changes(seq, &a) == sign_changes(seq, &b) {
        return;
    }
    if lo == hi {
        if uni_eval(p, &Q::from_integer(lo.clone())).is_zero() {
            out.push(lo);
        }
        return;
    }
    let mid: num_bigint::BigInt = num_integer::Integer::div_floor(&(&lo + &hi), &2.into());
    integer_roots(p, seq, lo, mid.clone(), out);
    integer_roots(p, seq, mid + 1, hi, out);
}

/// Radical of a zero-dimensional ideal: adjoin the square-free part of each variable's minimal polynomial.
pub fn radical_zero_dim(g: &[Poly<Q>], n: usize) -> Vec<Poly<Q>> {
    let mut gens = g.to_vec();
    for x in 0..n {
        let m = minimal_polynomial(g, n, x);
        let sf = uni_div_exact(&m, &uni_gcd(&m, &uni_deriv(&m)));
        gens.push(Poly::from_terms(
            n,
            sf.iter().enumerate().map(|(k, c)| {
                let mut e = vec![0; n];
                e[x] = k as u32;
                (Mono(e), c.clone())
            }),
        ));
    }
    groebner(&gens)
}

/// `dim Q[h]/(I + m_p^N)` for the maximal ideal `m_p` of a point.
///
/// Local multiplicities exceed one by at most `dim Q[h]/I - dim Q[h]/√I`, which bounds the needed `N`.
pub fn local_multiplicity(g: &[Poly<Q>], n: usize, p: &[Q]) -> usize {
    let total = crate::groebner::quotient_dimension(g, n).unwrap_or(0);
    let lin: Vec<Poly<Q>> = (0..n)
        .map(|i| Poly::var(n, i).sub(&Poly::constant(n, p[i].clone())))
        .collect();
    let mut gens = g.to_vec();
    let reduced = crate::groebner::quotient_dimension(&radical_zero_dim(g, n), n).unwrap_or(0);
    let deg = (total - reduced) as u32 + 1;
    let mut stack = vec![(Poly::constant(n, Q::one()), 0usize, 0u32)];
    while let Some((m, start, d)) = stack.pop() {
        if d == deg {
            gens.push(m);
            continue;
        }
        for (i, l) in lin.iter().enumerate().skip(start) {
            stack.push((m.mul(l), i, d + 1));
        }
    }
    crate::groebner::quotient_dimension(&groebner(&gens), n).unwrap_or(0)
}
