//! Polynomial sets from lowering chains, their exact zero sets, and weight tables.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::chains::{uea_projection, ChainSpec};
use crate::error::{Error, Result};
use crate::liealg::{RootSystem, Weight};
use crate::linalg::{Echelon, SparseVec};
use crate::poly::{Mono, Poly};
use crate::solve::{solve, Component, Unresolved};
use crate::uea::{Uea, UeaElem};
use crate::vertex::{conformal_dimension, search_singular, VertexAlgebra};
use crate::Q;

/// Polynomials in `h1..hl` with the word that produced each.
#[derive(Clone, Debug, Default)]
pub struct PolySet {
    pub nvars: usize,
    pub polys: Vec<Poly<Q>>,
    pub provenance: Vec<String>,
}

impl PolySet {
    pub fn new(nvars: usize) -> Self {
        PolySet {
            nvars,
            ..Default::default()
        }
    }

    pub fn from_polys(nvars: usize, polys: Vec<Poly<Q>>) -> Self {
        let provenance = (1..=polys.len()).map(|i| format!("p{i}")).collect();
        PolySet {
            nvars,
            polys,
            provenance,
        }
    }

    pub fn push(&mut self, p: Poly<Q>, origin: impl Into<String>) {
        self.polys.push(p);
        self.provenance.push(origin.into());
    }

    pub fn extend(&mut self, other: &PolySet) {
        self.polys.extend(other.polys.iter().cloned());
        self.provenance.extend(other.provenance.iter().cloned());
    }

    pub fn rank(&self) -> usize {
        let mut idx = BTreeMap::new();
        let mut ech = Echelon::new();
        for p in &self.polys {
            ech.insert(poly_row(p, &mut idx));
        }
        ech.rank()
    }

    /// Whether `p` lies in the linear span.
    pub fn spans(&self, p: &Poly<Q>) -> bool {
        let mut idx = BTreeMap::new();
        let mut ech = Echelon::new();
        for q in &self.polys {
            ech.insert(poly_row(q, &mut idx));
        }
        ech.contains(&poly_row(p, &mut idx))
    }

    pub fn same_span(&self, other: &PolySet) -> bool {
        self.rank() == other.rank() && other.polys.iter().all(|p| self.spans(p))
    }
}

fn poly_row(p: &Poly<Q>, idx: &mut BTreeMap<Mono, usize>) -> SparseVec<Q> {
    p.terms
        .iter()
        .map(|(m, c)| {
            let k = idx.len();
            (*idx.entry(m.clone()).or_insert(k), c.clone())
        })
        .collect()
}

/// Harish-Chandra projections of the given chains applied to `v`.
pub fn extract_polyset(u: &Uea<Q>, v: &UeaElem<Q>, chains: &[ChainSpec]) -> Result<PolySet> {
    let mut ps = PolySet::new(u.g.rank);
    for c in chains {
        let out = u.apply_lowering_chain(&c.action_order(&u.g), v);
        if u.weight(&out).is_none_or(|w| w.iter().any(|x| *x != 0)) {
            return Err(Error::NotWeightZero);
        }
        ps.push(
            u.harish_chandra(&out),
            format!("{}: ({})_L", c.name, c.word_text(&u.g)),
        );
    }
    Ok(ps)
}

/// Basis of the zero-weight space of the adjoint module generated by a highest-weight vector `v`,
/// built weight by weight with simple lowering operators, and its Harish-Chandra projections.
pub fn zero_weight_polyset(u: &Uea<Q>, v: &UeaElem<Q>) -> Result<(PolySet, usize)> {
    let g = &u.g;
    let top = u
        .weight(v)
        .ok_or(Error::Invalid("vector is not a weight vector".into()))?;
    if top.iter().any(|x| *x < 0) {
        return Err(Error::Invalid(
            "top weight is not in the positive root cone".into(),
        ));
    }
    struct Space {
        vecs: Vec<(UeaElem<Q>, Vec<usize>)>,
        ech: Echelon<Q>,
        idx: BTreeMap<Vec<usize>, usize>,
    }
    let row = |e: &UeaElem<Q>, idx: &mut BTreeMap<Vec<usize>, usize>| -> SparseVec<Q> {
        e.iter()
            .map(|(m, c)| {
                let k = idx.len();
                (*idx.entry(m.clone()).or_insert(k), c.clone())
            })
            .collect()
    };
    let mut spaces: BTreeMap<Vec<i64>, Space> = BTreeMap::new();
    let mut first = Space {
        vecs: Vec::new(),
        ech: Echelon::new(),
        idx: BTreeMap::new(),
    };
    let r = row(v, &mut first.idx);
    first.ech.insert(r);
    first.vecs.push((v.clone(), Vec::new()));
    spaces.insert(top.clone(), first);
    let height: i64 = top.iter().sum();
    for h in (1..=height).rev() {
        let level: Vec<Vec<i64>> = spaces
            .keys()
            .filter(|w| w.iter().sum::<i64>() == h)
            .cloned()
            .collect();
        for w in level {
            let vecs = spaces[&w].vecs.clone();
            for i in 0..g.rank {
                if w[i] == 0 {
                    continue;
                }
                let mut lower = w.clone();
                lower[i] -= 1;
                let fi = g.basis(g.f(i));
                let sp = spaces.entry(lower).or_insert_with(|| Space {
                    vecs: Vec::new(),
                    ech: Echelon::new(),
                    idx: BTreeMap::new(),
                });
                for (x, word) in &vecs {
                    let y = u.left_adjoint(&fi, x);
                    if y.is_zero() {
                        continue;
                    }
                    let r = row(&y, &mut sp.idx);
                    if sp.ech.insert(r) {
                        let mut wd = vec![g.f(i)];
                        wd.extend_from_slice(word);
                        sp.vecs.push((y, wd));
                    }
                }
            }
        }
    }
    let zero = vec![0; g.rank];
    let mut ps = PolySet::new(g.rank);
    let mut dim = 0;
    if let Some(sp) = spaces.get(&zero) {
        dim = sp.vecs.len();
        for (x, word) in &sp.vecs {
            let name = word
                .iter()
                .map(|k| g.name(*k))
                .collect::<Vec<_>>()
                .join(" ");
            ps.push(u.harish_chandra(x), format!("({name})_L"));
        }
    }
    Ok((ps, dim))
}

/// Scalar `c` with `computed = c · expected`, if any.
pub fn compare_with_transcription(computed: &Poly<Q>, expected: &Poly<Q>) -> Option<Q> {
    computed.ratio_to(expected)
}

/// Recompute each chain and compare it with its transcribed polynomial.
pub fn check_chains(u: &Uea<Q>, v: &UeaElem<Q>, specs: &[ChainSpec]) -> Vec<ChainCheck> {
    specs
        .iter()
        .map(|s| {
            let p = uea_projection(u, s, v);
            let scalar = s
                .expected
                .as_ref()
                .and_then(|e| compare_with_transcription(&p, e));
            ChainCheck {
                name: s.name.clone(),
                computed: p,
                scalar,
            }
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct ChainCheck {
    pub name: String,
    pub computed: Poly<Q>,
    /// `computed = scalar · transcription`, or `None` on mismatch.
    pub scalar: Option<Q>,
}

/// Affine family `base + Σ t_j dirs[j]` of weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Family {
    pub base: Weight,
    pub dirs: Vec<Weight>,
}

impl Family {
    pub fn from_component(c: &Component) -> Self {
        Family {
            base: Weight::new(c.base.clone()),
            dirs: c.dirs.iter().map(|d| Weight::new(d.clone())).collect(),
        }
    }

    pub fn component(&self) -> Component {
        Component {
            base: self.base.fund.clone(),
            dirs: self.dirs.iter().map(|d| d.fund.clone()).collect(),
        }
    }

    /// Same affine subspace.
    pub fn same_as(&self, other: &Family) -> bool {
        self.component().within(&other.component()) && other.component().within(&self.component())
    }

    pub fn to_text(&self) -> String {
        let mut s = self.base.to_string();
        for (j, d) in self.dirs.iter().enumerate() {
            let t = if self.dirs.len() == 1 {
                "t".to_string()
            } else {
                format!("t{}", j + 1)
            };
            s.push_str(&format!(" + {t}({d})"));
        }
        s
    }
}

#[derive(Clone, Debug, Default)]
pub struct WeightSolution {
    pub points: Vec<Weight>,
    pub families: Vec<Family>,
    pub unresolved: Vec<Unresolved>,
}

impl WeightSolution {
    pub fn is_exact(&self) -> bool {
        self.unresolved.is_empty()
    }
}

/// Exact zero set of a polynomial set, in fundamental-weight coordinates.
pub fn solve_weights(ps: &PolySet) -> Result<WeightSolution> {
    if ps.polys.is_empty() {
        return Err(Error::EmptyInput);
    }
    if ps.nvars > 3 {
        return Err(Error::Invalid(format!(
            "{} variables; at most 3 are supported",
            ps.nvars
        )));
    }
    let z = solve(&ps.polys, ps.nvars);
    let mut points: Vec<Weight> = z.points().into_iter().map(Weight::new).collect();
    points.sort();
    Ok(WeightSolution {
        points,
        families: z
            .families()
            .into_iter()
            .map(Family::from_component)
            .collect(),
        unresolved: z.unresolved,
    })
}

/// Every polynomial vanishes at `mu`.
pub fn verify_point(ps: &PolySet, mu: &Weight) -> bool {
    ps.polys.iter().all(|p| p.eval(&mu.fund).is_zero())
}

/// Every polynomial vanishes identically along the family.
pub fn verify_family(ps: &PolySet, f: &Family) -> bool {
    let c = f.component();
    ps.polys.iter().all(|p| c.annihilated_by(p))
}

pub fn ordinary_filter(points: &[Weight]) -> Vec<Weight> {
    points
        .iter()
        .filter(|w| w.is_dominant_integral())
        .cloned()
        .collect()
}

/// The three facts behind simplicity of the quotient: the only nonzero dominant integral
/// solutions, their conformal dimensions, and absence of singular vectors there.
#[derive(Clone, Debug, Serialize)]
pub struct GapReport {
    pub candidates: Vec<(String, String)>,
    pub empty_searches: Vec<(String, u32)>,
    pub nonempty_searches: Vec<(String, u32)>,
}

impl GapReport {
    pub fn pass(&self, expected: &[(Weight, Q)]) -> bool {
        let want: Vec<(String, String)> = expected
            .iter()
            .map(|(w, d)| (w.to_string(), d.to_string()))
            .collect();
        self.candidates == want && self.nonempty_searches.is_empty()
    }
}

pub fn simplicity_gap_check(va: &VertexAlgebra<Q>, points: &[Weight]) -> Result<GapReport> {
    let rs = &va.g.roots;
    let mut rep = GapReport {
        candidates: Vec::new(),
        empty_searches: Vec::new(),
        nonempty_searches: Vec::new(),
    };
    for w in ordinary_filter(points).into_iter().filter(|w| !w.is_zero()) {
        let d = conformal_dimension(rs, &va.level, &w)?;
        rep.candidates.push((w.to_string(), d.to_string()));
        if d.is_integer() && d > Q::zero() {
            let deg = d.to_integer().try_into().unwrap_or(0u32);
            let found = search_singular(va, &w, deg)?;
            if found.is_empty() {
                rep.empty_searches.push((w.to_string(), deg));
            } else {
                rep.nonempty_searches.push((w.to_string(), deg));
            }
        }
    }
    Ok(rep)
}

#[derive(Clone, Debug, Serialize)]
pub struct SolutionRow {
    pub name: String,
    pub coords_fundamental: Vec<String>,
    pub coords_h: Vec<String>,
    pub dominant_integral: bool,
    pub conformal_dimension: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub algebra: String,
    pub level: String,
    pub polynomials: Vec<(String, String)>,
    pub solutions: Vec<SolutionRow>,
    pub families: Vec<String>,
    pub unresolved: Vec<String>,
}

/// Name solutions after a transcribed table where they match it, `new<i>` otherwise.
pub fn build_report(
    rs: &RootSystem,
    level: &Q,
    ps: &PolySet,
    sol: &WeightSolution,
    table: &[(String, Weight)],
) -> Report {
    let mut fresh = 0;
    let mut solutions: Vec<SolutionRow> = sol
        .points
        .iter()
        .map(|w| {
            let name = table
                .iter()
                .find(|(_, t)| t == w)
                .map(|(n, _)| n.clone())
                .unwrap_or_else(|| {
                    fresh += 1;
                    format!("new{fresh}")
                });
            SolutionRow {
                name,
                coords_fundamental: w.fund.iter().map(|c| c.to_string()).collect(),
                coords_h: w.h_coords().iter().map(|c| c.to_string()).collect(),
                dominant_integral: w.is_dominant_integral(),
                conformal_dimension: conformal_dimension(rs, level, w)
                    .ok()
                    .map(|d| d.to_string()),
            }
        })
        .collect();
    let order = |n: &str| table.iter().position(|(t, _)| t == n).unwrap_or(usize::MAX);
    solutions.sort_by(|a, b| {
        order(&a.name)
            .cmp(&order(&b.name))
            .then_with(|| a.name.cmp(&b.name))
    });
    Report {
        algebra: rs.ty.label().to_string(),
        level: level.to_string(),
        polynomials: ps
            .provenance
            .iter()
            .cloned()
            .zip(ps.polys.iter().map(|p| p.to_string()))
            .collect(),
        solutions,
        families: sol.families.iter().map(Family::to_text).collect(),
        unresolved: sol.unresolved.iter().map(|u| u.reason.clone()).collect(),
    }
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// `name,w1,…,wl,dominant_integral,conformal_dimension` per solution.
    pub fn to_csv(&self) -> String {
        let l = self
            .solutions
            .first()
            .map_or(0, |r| r.coords_fundamental.len());
        let mut s = String::from("name");
        for i in 1..=l {
            s.push_str(&format!(",w{i}"));
        }
        s.push_str(",dominant_integral,conformal_dimension\n");
        for r in &self.solutions {
            s.push_str(&r.name);
            for c in &r.coords_fundamental {
                s.push(',');
                s.push_str(c);
            }
            s.push_str(&format!(
                ",{},{}\n",
                r.dominant_integral,
                r.conformal_dimension.clone().unwrap_or_default()
            ));
        }
        s
    }
}

/// Parse `name | weight` lines.
pub fn parse_weight_table(text: &str, rank: usize) -> Result<Vec<(String, Weight)>> {
    let mut out = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (n, w) = line.split_once('|').ok_or(Error::ParseAt {
            line: ln + 1,
            msg: "expected `name | weight`".into(),
        })?;
        let w = Weight::parse(w, rank).map_err(|e| Error::ParseAt {
            line: ln + 1,
            msg: e.to_string(),
        })?;
        out.push((n.trim().to_string(), w));
    }
    Ok(out)
}

/// Parse `name | family` lines where the family is `base ; dir` in fundamental weights.
pub fn parse_families(text: &str, rank: usize) -> Result<Vec<(String, Family)>> {
    let mut out = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: String| Error::ParseAt { line: ln + 1, msg };
        let (n, f) = line
            .split_once('|')
            .ok_or_else(|| err("expected `name | base ; direction`".into()))?;
        let mut parts = f.split(';');
        let base =
            Weight::parse(parts.next().unwrap_or(""), rank).map_err(|e| err(e.to_string()))?;
        let dirs = parts
            .map(|d| Weight::parse(d, rank))
            .collect::<Result<Vec<_>>>()
            .map_err(|e| err(e.to_string()))?;
        out.push((n.trim().to_string(), Family { base, dirs }));
    }
    Ok(out)
}

/// The family at `t_j = t` for every parameter.
pub fn family_at(f: &Family, t: i64) -> Weight {
    let t = Q::from_integer(t.into());
    let mut w = f.base.clone();
    for d in &f.dirs {
        w = w.add(&d.scale(&t));
    }
    w
}
