//! End-to-end runs over the shipped data files, returning serializable reports.
//!
//! Every stage recomputes from the vectors and compares with the transcribed
//! data; disagreements that survive the errata files are collected in `diffs`.

use std::path::{Path, PathBuf};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::chains::{parse_specs, sym_projection, ChainSpec};
use crate::classify::{
    build_report, check_chains, parse_families, parse_weight_table, simplicity_gap_check,
    solve_weights, verify_family, verify_point, zero_weight_polyset, ChainCheck, Family, GapReport,
    PolySet, Report, WeightSolution,
};
use crate::errata;
use crate::groebner::{groebner, quotient_dimension};
use crate::liealg::{
    build_algebra, freudenthal_multiplicity, reps::freudenthal_total, weyl_dimension, CartanType,
    ChevalleyBasis, Embedding, LieElem, Weight,
};
use crate::poly::Poly;
use crate::solve::{local_multiplicity, radical_zero_dim, solve};
use crate::symalg::{kernel_of_ad, sym_parse, ChiSign, SlodowyData, SymElem};
use crate::uea::Uea;
use crate::vertex::{
    check_flows_lemma, conformal_dimension, enumerate_integer_dimensions, search_singular,
    IdealComponent, SpectralFlow, VaState, VertexAlgebra,
};
use crate::zhu::{c2_symbol, zhu_image};
use crate::{Error, Result, Q};

/// Store for expensive intermediates, keyed by a string naming the stage and its inputs.
pub trait Cache {
    fn get(&self, key: &str) -> Option<String>;
    fn put(&self, key: &str, value: &str);
}

/// Cache that never hits.
pub struct NoCache;

impl Cache for NoCache {
    fn get(&self, _: &str) -> Option<String> {
        None
    }

    fn put(&self, _: &str, _: &str) {}
}

/// Root of the data tree (`g2/…`, `b3/…`).
#[derive(Clone, Debug)]
pub struct DataDir {
    root: PathBuf,
}

impl DataDir {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        DataDir { root: root.into() }
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn path(&self, rel: &str) -> PathBuf {
        self.root.join(rel)
    }

    pub fn read(&self, rel: &str) -> Result<String> {
        let p = self.path(rel);
        std::fs::read_to_string(&p).map_err(|source| Error::Io {
            path: p.display().to_string(),
            source,
        })
    }

    /// Text of `rel` with the corrections of `errata_rel` applied, and the number of corrections.
    pub fn read_corrected(&self, rel: &str, errata_rel: &str) -> Result<(String, usize)> {
        let fixes = errata::parse(&self.read(errata_rel)?)?;
        Ok((errata::apply(&self.read(rel)?, &fixes)?, fixes.len()))
    }
}

fn opt_text(q: &Option<Q>) -> Option<String> {
    q.as_ref().map(Q::to_string)
}

fn weights_text(ws: &[Weight]) -> Vec<String> {
    ws.iter().map(Weight::to_string).collect()
}

fn root_coords(va: &VertexAlgebra<Q>, w: &Weight) -> Result<Vec<i64>> {
    w.to_root_coords(&va.g.roots)
        .iter()
        .map(|c| {
            if c.is_integer() {
                i64::try_from(c.to_integer())
                    .map_err(|_| Error::Invalid(format!("weight {w} too large")))
            } else {
                Err(Error::Invalid(format!(
                    "weight {w} is not in the root lattice"
                )))
            }
        })
        .collect()
}

/// Outcome of the singularity check on one vector.
#[derive(Clone, Debug, Serialize)]
pub struct SingularSummary {
    pub algebra: String,
    pub level: String,
    /// Term lines in the file.
    pub printed_terms: usize,
    /// Terms after PBW normal ordering.
    pub terms: usize,
    pub conformal_weight: Option<u32>,
    pub singular: bool,
    /// First operator with a nonzero image and the size of that image.
    pub witness: Option<(String, usize)>,
}

/// Non-comment, non-blank lines.
pub fn printed_terms(text: &str) -> usize {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .count()
}

pub fn singular_summary(
    va: &VertexAlgebra<Q>,
    v: &VaState<Q>,
    printed_terms: usize,
) -> Result<SingularSummary> {
    let check = va.is_singular(v)?;
    Ok(SingularSummary {
        algebra: va.g.cartan_type().label().to_string(),
        level: va.level.to_string(),
        printed_terms,
        terms: v.len(),
        conformal_weight: va.conformal_weight(v),
        singular: check.singular,
        witness: check.witness.map(|(op, img)| (op, img.len())),
    })
}

/// Parse a term-list file (with its header) and check singularity.
pub fn verify_singular_text(text: &str) -> Result<SingularSummary> {
    let (va, v) = VertexAlgebra::from_file_text(text)?;
    singular_summary(&va, &v, printed_terms(text))
}

/// One recomputed projection against its transcription.
#[derive(Clone, Debug, Serialize)]
pub struct ChainRow {
    pub name: String,
    pub word: String,
    /// `computed = scalar · transcription`.
    pub scalar: Option<String>,
    pub computed: String,
}

fn chain_rows(g: &ChevalleyBasis, specs: &[ChainSpec], checks: &[ChainCheck]) -> Vec<ChainRow> {
    specs
        .iter()
        .zip(checks)
        .map(|(s, c)| ChainRow {
            name: c.name.clone(),
            word: s.word_text(g),
            scalar: opt_text(&c.scalar),
            computed: c.computed.to_string(),
        })
        .collect()
}

fn chain_diffs(rows: &[ChainRow], diffs: &mut Vec<String>) {
    for r in rows.iter().filter(|r| r.scalar.is_none()) {
        diffs.push(format!(
            "{} does not match its transcription up to a scalar",
            r.name
        ));
    }
}

/// Dimension of the singular-vector space at `(lambda, degree)`; empty pieces count as 0.
fn singular_space(va: &VertexAlgebra<Q>, lambda: &Weight, degree: u32) -> Result<Vec<VaState<Q>>> {
    match search_singular(va, lambda, degree) {
        Err(Error::EmptyComponent) => Ok(Vec::new()),
        r => r,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchRow {
    pub weight: String,
    pub degree: u32,
    pub dimension: usize,
}

/// Kernel of the singular operators at the weight and degree of `v`, and `v` against its generator.
fn kernel_against(
    va: &VertexAlgebra<Q>,
    v: &VaState<Q>,
    lambda: &Weight,
) -> Result<(usize, Option<Q>)> {
    let deg = va
        .conformal_weight(v)
        .ok_or_else(|| Error::Invalid("vector is not homogeneous".into()))?;
    let ker = singular_space(va, lambda, deg)?;
    let scalar = if ker.len() == 1 {
        v.ratio_to(&ker[0])
    } else {
        None
    };
    Ok((ker.len(), scalar))
}

/// Rows `dimension | weight, …` of the conformal-dimension table.
pub fn parse_dimension_table(text: &str, rank: usize) -> Result<Vec<(i64, Vec<Weight>)>> {
    let mut out = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: String| Error::ParseAt { line: ln + 1, msg };
        let (d, ws) = line
            .split_once('|')
            .ok_or_else(|| err("expected `dimension | weights`".into()))?;
        let d: i64 = d
            .trim()
            .parse()
            .map_err(|_| err(format!("bad dimension `{}`", d.trim())))?;
        let ws = ws
            .split(',')
            .map(str::trim)
            .filter(|w| !w.is_empty())
            .map(|w| Weight::parse(w, rank).map_err(|e| err(e.to_string())))
            .collect::<Result<Vec<_>>>()?;
        out.push((d, ws));
    }
    Ok(out)
}

/// Weights with integer conformal dimension `0..=max_dim`, grouped by dimension.
pub fn dimension_table(ty: CartanType, level: &Q, max_dim: i64) -> Result<Vec<(i64, Vec<Weight>)>> {
    let g = build_algebra(ty);
    let found = enumerate_integer_dimensions(&g.roots, level, max_dim)?;
    Ok((0..=max_dim)
        .map(|d| {
            let dq = Q::from_integer(d.into());
            let mut ws: Vec<Weight> = found
                .iter()
                .filter(|(_, x)| *x == dq)
                .map(|(w, _)| w.clone())
                .collect();
            ws.sort();
            (d, ws)
        })
        .collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct DimensionRow {
    pub dimension: i64,
    pub weights: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DimensionTableReport {
    pub algebra: String,
    pub level: String,
    pub computed: Vec<DimensionRow>,
    pub matches: bool,
    pub diffs: Vec<String>,
}

fn rows_of(t: &[(i64, Vec<Weight>)]) -> Vec<DimensionRow> {
    t.iter()
        .map(|(d, ws)| DimensionRow {
            dimension: *d,
            weights: weights_text(ws),
        })
        .collect()
}

/// Recompute the G2 conformal-dimension table at level −2 and compare with the data file.
pub fn run_dimension_table(data: &DataDir) -> Result<DimensionTableReport> {
    let expected = parse_dimension_table(&data.read("g2/conformal_dimensions.txt")?, 2)?;
    let max = expected.iter().map(|(d, _)| *d).max().unwrap_or(0);
    let level = Q::from_integer((-2).into());
    let computed = dimension_table(CartanType::G2, &level, max)?;
    let mut diffs = Vec::new();
    for (d, ws) in &expected {
        let got = computed
            .iter()
            .find(|(c, _)| c == d)
            .map(|(_, w)| w.clone())
            .unwrap_or_default();
        let mut want = ws.clone();
        want.sort();
        if got != want {
            diffs.push(format!(
                "dimension {d}: computed {:?}, transcribed {:?}",
                weights_text(&got),
                weights_text(&want)
            ));
        }
    }
    Ok(DimensionTableReport {
        algebra: "G2".into(),
        level: level.to_string(),
        computed: rows_of(&computed),
        matches: diffs.is_empty(),
        diffs,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct FreudenthalReport {
    pub algebra: String,
    pub highest_weight: String,
    pub weight: String,
    pub multiplicity: String,
    pub weyl_dimension: String,
    pub sum_of_multiplicities: String,
    pub consistent: bool,
}

/// Multiplicity of `mu` in `L(lambda)`, with the Weyl-dimension cross-check.
pub fn run_freudenthal(ty: CartanType, lambda: &Weight, mu: &Weight) -> Result<FreudenthalReport> {
    let g = build_algebra(ty);
    let m = freudenthal_multiplicity(&g.roots, lambda, mu)?;
    let wd = weyl_dimension(&g.roots, lambda)?;
    let total = freudenthal_total(&g.roots, lambda)?;
    Ok(FreudenthalReport {
        algebra: ty.label().to_string(),
        highest_weight: lambda.to_string(),
        weight: mu.to_string(),
        multiplicity: m.to_string(),
        weyl_dimension: wd.to_string(),
        sum_of_multiplicities: total.to_string(),
        consistent: wd == total,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct FlowCheckRow {
    pub label: String,
    pub expected_zero: bool,
    pub is_zero: bool,
    pub note: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectralFlowReport {
    pub commutation_range: i64,
    pub commutation_defects: usize,
    pub checks: Vec<FlowCheckRow>,
    pub vector_weight: String,
    pub twisted_weight: String,
    pub twisted_l0: String,
    pub expected_l0: String,
    pub conformal_dimensions: Vec<(String, String)>,
    pub pass: bool,
}

/// Flow checks on D4 and B3 at level −2.
pub fn run_spectral_flow(range: i64) -> Result<SpectralFlowReport> {
    let b3 = build_algebra(CartanType::B3);
    let d4 = build_algebra(CartanType::D4);
    let defects = SpectralFlow::d4_lambda1(d4.clone()).commutation_defects(range)?;
    let r = check_flows_lemma(b3.clone(), d4)?;
    let level = Q::from_integer((-2).into());
    let conformal_dimensions = [[-2, 0, 0], [-3, 0, 0]]
        .iter()
        .map(|c| {
            let w = Weight::from_ints(c);
            conformal_dimension(&b3.roots, &level, &w).map(|d| (w.to_string(), d.to_string()))
        })
        .collect::<Result<Vec<_>>>()?;
    let dims_ok = conformal_dimensions.iter().all(|(_, d)| d == "-1");
    Ok(SpectralFlowReport {
        commutation_range: range,
        commutation_defects: defects.len(),
        pass: defects.is_empty() && r.pass() && dims_ok,
        checks: r
            .checks
            .iter()
            .map(|c| FlowCheckRow {
                label: c.label.clone(),
                expected_zero: c.expected_zero,
                is_zero: c.is_zero,
                note: c.note.clone(),
            })
            .collect(),
        vector_weight: r.vector_weight.to_string(),
        twisted_weight: r.twisted_weight.to_string(),
        twisted_l0: r.twisted_l0.to_string(),
        expected_l0: r.expected_l0.to_string(),
        conformal_dimensions,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct G2Report {
    pub literal: SingularSummary,
    pub errata_applied: usize,
    pub corrected: SingularSummary,
    pub kernel_dimension: usize,
    /// `corrected = scalar · kernel generator`.
    pub kernel_scalar: Option<String>,
    pub lower_searches: Vec<SearchRow>,
    pub zhu_terms: usize,
    pub zhu_literal_diff_terms: usize,
    pub zhu_errata_applied: usize,
    /// `F(corrected) = scalar · corrected transcription`.
    pub zhu_scalar: Option<String>,
    pub chains: Vec<ChainRow>,
    pub rank_first_seven: usize,
    pub eighth_in_span: bool,
    pub quotient_dimension: Option<usize>,
    pub radical_quotient_dimension: Option<usize>,
    /// Points of multiplicity above one.
    pub multiple_points: Vec<(String, usize)>,
    pub all_points_verified: bool,
    pub table_matches: bool,
    pub table: Report,
    pub ordinary: Vec<String>,
    pub gap: GapReport,
    pub diffs: Vec<String>,
}

fn table_diffs(sol: &WeightSolution, table: &[(String, Weight)], diffs: &mut Vec<String>) -> bool {
    let before = diffs.len();
    for (n, w) in table {
        if !sol.points.contains(w) {
            diffs.push(format!("transcribed weight {n} = {w} is not a solution"));
        }
    }
    for w in &sol.points {
        if !table.iter().any(|(_, t)| t == w) {
            diffs.push(format!(
                "solution {w} is missing from the transcribed table"
            ));
        }
    }
    if !sol.families.is_empty() || !sol.unresolved.is_empty() {
        diffs.push("solution set is not finite".into());
    }
    diffs.len() == before
}

/// Singularity, Zhu image, polynomials, weight table and simplicity gap for G2 at level −2.
pub fn run_g2(data: &DataDir) -> Result<G2Report> {
    let mut diffs = Vec::new();
    let literal_text = data.read("g2/vsing.txt")?;
    let (va, literal_v) = VertexAlgebra::from_file_text(&literal_text)?;
    let literal = singular_summary(&va, &literal_v, printed_terms(&literal_text))?;
    let (fixed, errata_applied) = data.read_corrected("g2/vsing.txt", "g2/vsing_errata.txt")?;
    let v = va.parse(&fixed)?;
    let corrected = singular_summary(&va, &v, printed_terms(&fixed))?;
    if !corrected.singular {
        diffs.push("corrected vector is not singular".into());
    }
    let g = va.g.clone();
    let top = Weight::from_ints(&[4, 0]);
    let (kernel_dimension, kernel_scalar) = kernel_against(&va, &v, &top)?;
    if kernel_dimension != 1 || kernel_scalar.is_none() {
        diffs.push(format!(
            "kernel at ({top}, 6) has dimension {kernel_dimension} and does not contain the vector"
        ));
    }

    let dims = parse_dimension_table(&data.read("g2/conformal_dimensions.txt")?, g.rank)?;
    let mut lower_searches = Vec::new();
    for (d, ws) in dims.iter().filter(|(d, _)| (1..=5).contains(d)) {
        for w in ws {
            let n = singular_space(&va, w, *d as u32)?.len();
            if n != 0 {
                diffs.push(format!("singular vector at ({w}, {d})"));
            }
            lower_searches.push(SearchRow {
                weight: w.to_string(),
                degree: *d as u32,
                dimension: n,
            });
        }
    }

    let u = Uea::<Q>::new(g.clone());
    let fv = zhu_image(&u, &v);
    let literal_zhu = u.parse(&data.read("g2/vsing_zhu.txt")?)?;
    let (zhu_fixed, zhu_errata_applied) =
        data.read_corrected("g2/vsing_zhu.txt", "g2/vsing_zhu_errata.txt")?;
    let zhu_scalar = fv.ratio_to(&u.parse(&zhu_fixed)?);
    if zhu_scalar != Some(Q::one()) {
        diffs.push(format!(
            "Zhu image differs from the corrected transcription (scalar {:?})",
            opt_text(&zhu_scalar)
        ));
    }
    let zhu_literal_diff_terms = (fv.clone() - literal_zhu).len();

    let specs = parse_specs(&g, &data.read("g2/zhu_projections.txt")?)?;
    let checks = check_chains(&u, &fv, &specs);
    let chains = chain_rows(&g, &specs, &checks);
    chain_diffs(&chains, &mut diffs);
    let mut ps = PolySet::new(g.rank);
    for c in checks.iter().take(7) {
        ps.push(c.computed.clone(), c.name.clone());
    }
    let rank_first_seven = ps.rank();
    let eighth_in_span = checks.get(7).is_some_and(|c| ps.spans(&c.computed));
    if rank_first_seven != 7 || !eighth_in_span {
        diffs.push(format!(
            "rank of the first seven is {rank_first_seven}; eighth in span: {eighth_in_span}"
        ));
    }

    let gb = groebner(&ps.polys);
    let quotient = quotient_dimension(&gb, g.rank);
    let radical_quotient_dimension = quotient_dimension(&radical_zero_dim(&gb, g.rank), g.rank);
    let sol = solve_weights(&ps)?;
    let multiple_points = sol
        .points
        .iter()
        .map(|w| (w.to_string(), local_multiplicity(&gb, g.rank, &w.fund)))
        .filter(|(_, m)| *m != 1)
        .collect();
    if radical_quotient_dimension != Some(sol.points.len()) {
        diffs.push(format!("radical quotient dimension {radical_quotient_dimension:?} differs from the point count"));
    }
    let all_points_verified = sol.points.iter().all(|w| verify_point(&ps, w));
    let table_data = parse_weight_table(&data.read("g2/weights.txt")?, g.rank)?;
    let table_matches = table_diffs(&sol, &table_data, &mut diffs);
    let table = build_report(&g.roots, &va.level, &ps, &sol, &table_data);
    let ordinary = crate::classify::ordinary_filter(&sol.points);
    let gap = simplicity_gap_check(&va, &sol.points)?;
    if !gap.nonempty_searches.is_empty() {
        diffs.push(format!(
            "singular vectors found at {:?}",
            gap.nonempty_searches
        ));
    }
    Ok(G2Report {
        literal,
        errata_applied,
        corrected,
        kernel_dimension,
        kernel_scalar: opt_text(&kernel_scalar),
        lower_searches,
        zhu_terms: fv.len(),
        zhu_literal_diff_terms,
        zhu_errata_applied,
        zhu_scalar: opt_text(&zhu_scalar),
        chains,
        rank_first_seven,
        eighth_in_span,
        quotient_dimension: quotient,
        radical_quotient_dimension,
        multiple_points,
        all_points_verified,
        table_matches,
        table,
        ordinary: weights_text(&ordinary),
        gap,
        diffs,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyRow {
    pub name: String,
    pub family: String,
    pub found: bool,
    pub annihilates: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct B3Stage2 {
    pub w_terms: usize,
    pub w_conformal_weight: Option<u32>,
    pub w_weights: Vec<(String, usize)>,
    pub top_terms: usize,
    pub top_zhu_terms: usize,
    pub chains: Vec<ChainRow>,
    pub rank: usize,
    /// Whether the top component lies in the ideal generated by the B3 singular vector.
    pub top_in_ideal: bool,
    pub all_points_verified: bool,
    pub table_matches: bool,
    pub table: Report,
    pub ordinary: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct B3Report {
    pub literal: SingularSummary,
    pub errata_applied: usize,
    pub corrected: SingularSummary,
    pub kernel_dimension: usize,
    pub kernel_scalar: Option<String>,
    pub zhu_terms: usize,
    pub zero_weight_dimension: usize,
    pub polynomials: Vec<(String, String)>,
    pub matches_transcription: bool,
    pub families: Vec<FamilyRow>,
    pub unexpected_families: Vec<String>,
    pub points: Vec<String>,
    pub unresolved: usize,
    pub subsingular: Option<B3Stage2>,
    pub diffs: Vec<String>,
}

/// Image of the G2 singular vector in `V^{-2}(B3)`, cached as a term list.
fn embedded_vector(
    data: &DataDir,
    b3va: &VertexAlgebra<Q>,
    cache: &dyn Cache,
) -> Result<VaState<Q>> {
    let (fixed, _) = data.read_corrected("g2/vsing.txt", "g2/vsing_errata.txt")?;
    let key = format!("embedded-g2-vector\n{fixed}");
    if let Some(t) = cache.get(&key) {
        if let Ok(w) = b3va.parse(&t) {
            return Ok(w);
        }
    }
    let (g2va, v) = VertexAlgebra::from_file_text(&fixed)?;
    let emb = Embedding::g2_to_b3(g2va.g.clone(), b3va.g.clone());
    let w = g2va.embed_state(&emb, b3va, &v);
    cache.put(&key, &b3va.to_file_text(&w));
    Ok(w)
}

/// Both B3 stages: the quadratic families, then the subsingular vector and the weight table.
pub fn run_b3(data: &DataDir, skip_subsingular: bool, cache: &dyn Cache) -> Result<B3Report> {
    let mut diffs = Vec::new();
    let literal_text = data.read("b3/vsing.txt")?;
    let (va, literal_v) = VertexAlgebra::from_file_text(&literal_text)?;
    let literal = singular_summary(&va, &literal_v, printed_terms(&literal_text))?;
    let (fixed, errata_applied) = data.read_corrected("b3/vsing.txt", "b3/vsing_errata.txt")?;
    let v = va.parse(&fixed)?;
    let corrected = singular_summary(&va, &v, printed_terms(&fixed))?;
    if !corrected.singular {
        diffs.push("corrected B3 vector is not singular".into());
    }
    let g = va.g.clone();
    let (kernel_dimension, kernel_scalar) =
        kernel_against(&va, &v, &Weight::from_ints(&[0, 0, 2]))?;

    let u = Uea::<Q>::new(g.clone());
    let fv = zhu_image(&u, &v);
    let (ps, zero_weight_dimension) = zero_weight_polyset(&u, &fv)?;
    let lemma_specs = parse_specs(&g, &data.read("b3/vsing_polys.txt")?)?;
    let lemma = PolySet::from_polys(
        g.rank,
        lemma_specs
            .iter()
            .filter_map(|s| s.expected.clone())
            .collect(),
    );
    let matches_transcription = ps.same_span(&lemma);
    if !matches_transcription {
        diffs.push("recomputed quadratics do not span the transcribed ones".into());
    }
    let sol = solve_weights(&ps)?;
    let expected = parse_families(&data.read("b3/families.txt")?, g.rank)?;
    let families: Vec<FamilyRow> = expected
        .iter()
        .map(|(n, f)| FamilyRow {
            name: n.clone(),
            family: f.to_text(),
            found: sol.families.iter().any(|s| s.same_as(f)),
            annihilates: verify_family(&ps, f),
        })
        .collect();
    for r in families.iter().filter(|r| !r.found || !r.annihilates) {
        diffs.push(format!(
            "family {} = {}: found {}, annihilates {}",
            r.name, r.family, r.found, r.annihilates
        ));
    }
    let unexpected_families: Vec<String> = sol
        .families
        .iter()
        .filter(|f| !expected.iter().any(|(_, e)| e.same_as(f)))
        .map(Family::to_text)
        .collect();
    for f in &unexpected_families {
        diffs.push(format!("untranscribed family {f}"));
    }

    let subsingular = if skip_subsingular {
        None
    } else {
        Some(run_b3_stage2(data, &va, &u, &v, &ps, cache, &mut diffs)?)
    };
    Ok(B3Report {
        literal,
        errata_applied,
        corrected,
        kernel_dimension,
        kernel_scalar: opt_text(&kernel_scalar),
        zhu_terms: fv.len(),
        zero_weight_dimension,
        polynomials: ps
            .provenance
            .iter()
            .cloned()
            .zip(ps.polys.iter().map(Poly::to_string))
            .collect(),
        matches_transcription,
        families,
        unexpected_families,
        points: weights_text(&sol.points),
        unresolved: sol.unresolved.len(),
        subsingular,
        diffs,
    })
}

fn run_b3_stage2(
    data: &DataDir,
    va: &VertexAlgebra<Q>,
    u: &Uea<Q>,
    v: &VaState<Q>,
    stage1: &PolySet,
    cache: &dyn Cache,
    diffs: &mut Vec<String>,
) -> Result<B3Stage2> {
    let g = va.g.clone();
    let w = embedded_vector(data, va, cache)?;
    let w_conformal_weight = va.conformal_weight(&w);
    if w.is_empty() || w_conformal_weight != Some(6) {
        diffs.push(format!(
            "embedded vector has {} terms and conformal weight {w_conformal_weight:?}",
            w.len()
        ));
    }
    let w_weights = va
        .weight_decomposition(&w)
        .into_iter()
        .map(|(m, x)| (m.to_string(), x.len()))
        .collect();
    let top_weight = Weight::from_ints(&[4, 0, 0]);
    let top = va.weight_component(&w, &top_weight);
    if top.is_empty() {
        diffs.push(format!("embedded vector has no {top_weight} component"));
    }
    let ftop = zhu_image(u, &top);
    let specs = parse_specs(&g, &data.read("b3/subsingular_projections.txt")?)?;
    let checks = check_chains(u, &ftop, &specs);
    let chains = chain_rows(&g, &specs, &checks);
    chain_diffs(&chains, diffs);
    let mut ps = stage1.clone();
    for c in &checks {
        ps.push(c.computed.clone(), c.name.clone());
    }
    let top_in_ideal =
        IdealComponent::new(va, v.clone())?.contains(&top, 6, &root_coords(va, &top_weight)?);
    let sol = solve_weights(&ps)?;
    let table_data = parse_weight_table(&data.read("b3/weights.txt")?, g.rank)?;
    let table_matches = table_diffs(&sol, &table_data, diffs);
    Ok(B3Stage2 {
        w_terms: w.len(),
        w_conformal_weight,
        w_weights,
        top_terms: top.len(),
        top_zhu_terms: ftop.len(),
        rank: ps.rank(),
        chains,
        top_in_ideal,
        all_points_verified: sol.points.iter().all(|p| verify_point(&ps, p)),
        table_matches,
        table: build_report(&g.roots, &va.level, &ps, &sol, &table_data),
        ordinary: weights_text(&crate::classify::ordinary_filter(&sol.points)),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ReductionRow {
    pub name: String,
    pub computed: String,
    pub terms: usize,
    /// `computed = scalar · transcription`.
    pub scalar: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AssocReport {
    pub grading: Vec<(i64, Vec<String>)>,
    pub grading_matches: bool,
    pub pairings: Vec<(String, String)>,
    pub pairings_match: bool,
    pub centralizer_dimension: usize,
    pub centralizer_matches: bool,
    pub chains: Vec<ChainRow>,
    pub groebner_basis: Vec<String>,
    pub locus: Vec<Vec<String>>,
    pub locus_is_origin: bool,
    pub reductions: Vec<ReductionRow>,
    pub diffs: Vec<String>,
}

/// Lie element from `coeff * gen ; coeff * gen …`.
fn parse_lie(g: &ChevalleyBasis, text: &str) -> Result<LieElem<Q>> {
    let s = sym_parse(g, &text.replace(';', "\n"))?;
    let mut out = LieElem::new();
    for (m, c) in &s {
        match m.as_slice() {
            [k] => out.add_term(*k, c.clone()),
            _ => return Err(Error::Parse(format!("`{text}` is not linear"))),
        }
    }
    Ok(out)
}

fn lie_rank(vs: &[LieElem<Q>]) -> usize {
    let rows: Vec<_> = vs
        .iter()
        .map(|x| x.iter().map(|(k, c)| (*k, c.clone())).collect())
        .collect();
    crate::linalg::rank(&rows)
}

struct SlodowyTranscription {
    grading: Vec<(i64, Vec<usize>)>,
    centralizer: Vec<LieElem<Q>>,
    pairings: Vec<(usize, Q)>,
}

fn parse_slodowy(g: &ChevalleyBasis, text: &str) -> Result<SlodowyTranscription> {
    let mut t = SlodowyTranscription {
        grading: Vec::new(),
        centralizer: Vec::new(),
        pairings: Vec::new(),
    };
    for (ln, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: String| Error::ParseAt { line: ln + 1, msg };
        let parts: Vec<&str> = line.split('|').map(str::trim).collect();
        match parts.as_slice() {
            ["grade", j, gens] => {
                let j: i64 = j.parse().map_err(|_| err(format!("bad degree `{j}`")))?;
                let gens = gens
                    .split_whitespace()
                    .map(|n| g.parse_name(n))
                    .collect::<Result<Vec<_>>>()
                    .map_err(|e| err(e.to_string()))?;
                t.grading.push((j, gens));
            }
            ["centralizer", x] => t
                .centralizer
                .push(parse_lie(g, x).map_err(|e| err(e.to_string()))?),
            ["pairing", x, c] => {
                let k = g.parse_name(x).map_err(|e| err(e.to_string()))?;
                let c = crate::scalar::parse_q(c).ok_or_else(|| err(format!("bad value `{c}`")))?;
                t.pairings.push((k, c));
            }
            _ => return Err(err(format!("unrecognized line `{line}`"))),
        }
    }
    Ok(t)
}

fn reduction_row(
    g: &ChevalleyBasis,
    name: &str,
    computed: &SymElem<Q>,
    expected: &SymElem<Q>,
) -> ReductionRow {
    ReductionRow {
        name: name.into(),
        computed: crate::symalg::sym_to_text(g, computed),
        terms: computed.len(),
        scalar: opt_text(&computed.ratio_to(expected)),
    }
}

/// Symbol polynomials, their common zero locus, and the Slodowy-slice reductions for G2.
pub fn run_assoc_variety_g2(data: &DataDir) -> Result<AssocReport> {
    let mut diffs = Vec::new();
    let (fixed, _) = data.read_corrected("g2/vsing.txt", "g2/vsing_errata.txt")?;
    let (va, v) = VertexAlgebra::from_file_text(&fixed)?;
    let g = va.g.clone();
    let sd = SlodowyData::g2_subregular(g.clone(), ChiSign::Minus)?;
    let tr = parse_slodowy(&g, &data.read("g2/slodowy.txt")?)?;

    let grading: Vec<(i64, Vec<String>)> = (-2..=2)
        .rev()
        .map(|j| (j, sd.piece(j).iter().map(|k| g.name(*k)).collect()))
        .collect();
    let grading_matches = tr.grading.len() == 5
        && tr.grading.iter().all(|(j, gens)| {
            let mut a = gens.clone();
            a.sort_unstable();
            a == sd.piece(*j)
        });
    if !grading_matches {
        diffs.push("grading differs from the transcribed pieces".into());
    }
    let pairings: Vec<(String, String)> = tr
        .pairings
        .iter()
        .map(|(k, _)| (g.name(*k), sd.pairing_with_f(*k).to_string()))
        .collect();
    let pairings_match = tr.pairings.iter().all(|(k, c)| sd.pairing_with_f(*k) == *c);
    if !pairings_match {
        diffs.push("pairings with f differ from the transcription".into());
    }
    let cent = kernel_of_ad(&g, &sd.f);
    let mut both = cent.clone();
    both.extend(tr.centralizer.iter().cloned());
    let centralizer_matches = lie_rank(&cent) == tr.centralizer.len()
        && lie_rank(&tr.centralizer) == tr.centralizer.len()
        && lie_rank(&both) == cent.len();
    if !centralizer_matches {
        diffs.push("centralizer differs from the transcribed basis".into());
    }

    let s = c2_symbol(&v);
    let specs = parse_specs(&g, &data.read("g2/symbol_projections.txt")?)?;
    let mut polys = Vec::new();
    let mut chains = Vec::new();
    for spec in &specs {
        let p = sym_projection(&g, spec, &s);
        let scalar = spec.expected.as_ref().and_then(|e| p.ratio_to(e));
        if scalar != Some(Q::one()) {
            diffs.push(format!(
                "{} differs from the transcription (scalar {:?})",
                spec.name,
                opt_text(&scalar)
            ));
        }
        chains.push(ChainRow {
            name: spec.name.clone(),
            word: spec.word_text(&g),
            scalar: opt_text(&scalar),
            computed: p.to_string(),
        });
        polys.push(p);
    }
    if polys.iter().all(Poly::is_zero) {
        return Err(Error::EmptyInput);
    }
    let gb = groebner(&polys);
    let z = solve(&polys, g.rank);
    let origin = vec![Q::zero(); g.rank];
    let locus_is_origin = z.is_finite() && z.points() == vec![origin];
    if !locus_is_origin {
        diffs.push("common zero locus is not the origin".into());
    }

    let mut reductions = Vec::new();
    let shifted = va.apply_basis_mode(g.f(0), 0, &v);
    for (name, vec, file) in [
        ("v", &v, "g2/jchi_vsing.txt"),
        ("f[1](0) v", &shifted, "g2/jchi_f1_vsing.txt"),
    ] {
        let row = reduction_row(
            &g,
            name,
            &sd.reduce(&c2_symbol(vec)),
            &sym_parse(&g, &data.read(file)?)?,
        );
        if row.scalar.is_none() {
            diffs.push(format!(
                "reduction of {name} is not proportional to the transcription"
            ));
        }
        reductions.push(row);
    }
    Ok(AssocReport {
        grading,
        grading_matches,
        pairings,
        pairings_match,
        centralizer_dimension: cent.len(),
        centralizer_matches,
        chains,
        groebner_basis: gb.iter().map(Poly::to_string).collect(),
        locus: z
            .points()
            .iter()
            .map(|p| p.iter().map(Q::to_string).collect())
            .collect(),
        locus_is_origin,
        reductions,
        diffs,
    })
}

/// Recomputed symbol polynomials, for `--emit-polys`.
pub fn symbol_polynomials(data: &DataDir) -> Result<Vec<(String, Poly<Q>)>> {
    let (fixed, _) = data.read_corrected("g2/vsing.txt", "g2/vsing_errata.txt")?;
    let (va, v) = VertexAlgebra::from_file_text(&fixed)?;
    let s = c2_symbol(&v);
    let specs = parse_specs(&va.g, &data.read("g2/symbol_projections.txt")?)?;
    Ok(specs
        .iter()
        .map(|spec| (spec.name.clone(), sym_projection(&va.g, spec, &s)))
        .collect())
}

/// The G2 data tree shipped with the repository.
pub fn default_data_dir() -> DataDir {
    DataDir::new(Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data"))
}

/// Weight in fundamental coordinates, either `3w1-5/2w2` or a comma list `3,-5/2`.
pub fn parse_weight_arg(s: &str, rank: usize) -> Result<Weight> {
    if s.contains(',') {
        let c = s
            .split(',')
            .map(|x| {
                crate::scalar::parse_q(x)
                    .ok_or_else(|| Error::Parse(format!("bad coordinate `{}`", x.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        if c.len() != rank {
            return Err(Error::Parse(format!(
                "expected {rank} coordinates, got {}",
                c.len()
            )));
        }
        Ok(Weight::new(c))
    } else {
        Weight::parse(s, rank)
    }
}

pub fn parse_cartan_type(s: &str) -> Result<CartanType> {
    match s.to_ascii_uppercase().as_str() {
        "G2" => Ok(CartanType::G2),
        "B3" => Ok(CartanType::B3),
        "D4" => Ok(CartanType::D4),
        _ => Err(Error::UnsupportedType(s.into())),
    }
}

/// Conformal dimension of `L(k, lambda)`.
pub fn run_conf_dim(ty: CartanType, level: &Q, lambda: &Weight) -> Result<Q> {
    let g = build_algebra(ty);
    conformal_dimension(&g.roots, level, lambda)
}
