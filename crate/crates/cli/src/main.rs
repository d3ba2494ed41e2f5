//! `vasing`: driver for the singular-vector, Zhu-algebra and weight-classification runs.
//!
//! Exit status: 0 when every recomputed quantity matches the data files,
//! 2 when the computation succeeds but disagrees with a transcription,
//! 1 on parse, i/o or internal errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use sha2::{Digest, Sha256};

use vasing::liealg::CartanType;
use vasing::pipeline::{self, Cache, DataDir, NoCache};
use vasing::scalar::parse_q;
use vasing::{Error, Q};

#[derive(Parser, Debug)]
#[command(
    name = "vasing",
    version,
    about = "Exact checks for affine vertex algebras of types G2, B3 and D4"
)]
struct Cli {
    /// Root of the data tree.
    #[arg(long, global = true, default_value = "data")]
    data_dir: PathBuf,

    /// Directory for the report and artifacts.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Directory for cached intermediates.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,

    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,

    /// Algebra for `conf-dim`, `freudenthal` and `table1` (G2, B3 or D4).
    #[arg(long, global = true)]
    algebra: Option<String>,

    /// Level for `conf-dim` and `table1`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    level: Option<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check that a term-list file is a singular vector.
    VerifySingular {
        path: PathBuf,
        /// `line: replacement` corrections applied before parsing.
        #[arg(long)]
        errata: Option<PathBuf>,
    },
    /// G2 at level -2: singular vector, Zhu image, polynomials and weight table.
    PipelineG2,
    /// B3 at level -2: quadratic families, then the subsingular vector and weight table.
    PipelineB3 {
        /// Stop after the families of the first stage.
        #[arg(long)]
        skip_subsingular: bool,
    },
    /// G2 symbol polynomials, their zero locus and the Slodowy-slice reductions.
    AssocVarietyG2 {
        /// Write each recomputed symbol polynomial to its own file.
        #[arg(long)]
        emit_polys: bool,
    },
    /// Conformal dimension: `conf-dim [ALGEBRA LEVEL] WEIGHT`.
    ConfDim {
        #[arg(allow_hyphen_values = true, num_args = 1..=3, required = true)]
        args: Vec<String>,
    },
    /// Weight multiplicity: `freudenthal [ALGEBRA] HIGHEST WEIGHT`.
    Freudenthal {
        #[arg(allow_hyphen_values = true, num_args = 2..=3, required = true)]
        args: Vec<String>,
    },
    /// Spectral-flow commutation checks and the highest-weight-vector assertions.
    SpectralFlowCheck {
        /// Largest mode index in the commutation check.
        #[arg(long, default_value_t = 2)]
        range: i64,
    },
    /// Dominant integral weights with integer conformal dimension.
    Table1 {
        #[arg(long, default_value_t = 6)]
        max_dim: i64,
    },
}

#[derive(Debug)]
enum Failure {
    Engine(Error),
    Usage(String),
    Io(PathBuf, std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Engine(e) => write!(f, "{e}"),
            Failure::Usage(m) => f.write_str(m),
            Failure::Io(p, e) => write!(f, "{}: {e}", p.display()),
        }
    }
}

type Outcome = Result<bool, Failure>;

/// Files under the cache directory named by the SHA-256 of the key.
struct FileCache {
    dir: PathBuf,
}

impl FileCache {
    fn file(&self, key: &str) -> PathBuf {
        let mut h = Sha256::new();
        h.update(env!("CARGO_PKG_VERSION").as_bytes());
        h.update([0]);
        h.update(key.as_bytes());
        self.dir.join(format!("{:x}.txt", h.finalize()))
    }
}

impl Cache for FileCache {
    fn get(&self, key: &str) -> Option<String> {
        fs::read_to_string(self.file(key)).ok()
    }

    fn put(&self, key: &str, value: &str) {
        let path = self.file(key);
        let tmp = path.with_extension("tmp");
        if fs::create_dir_all(&self.dir).is_ok() && fs::write(&tmp, value).is_ok() {
            let _ = fs::rename(&tmp, &path);
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).map_err(|e| Failure::Io(dir.to_path_buf(), e))?;
    }
    fs::write(path, text).map_err(|e| Failure::Io(path.to_path_buf(), e))
}

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(path.to_path_buf(), e))
}

fn to_json(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}

struct Run<'a> {
    cli: &'a Cli,
}

impl Run<'_> {
    /// Print `text` (or the JSON form), and write `report.json` under `--out`.
    fn emit(&self, report: serde_json::Value, text: String) -> Result<(), Failure> {
        let json = to_json(&report);
        if self.cli.json {
            print!("{json}");
        } else {
            print!("{text}");
        }
        if let Some(out) = &self.cli.out {
            write_file(&out.join("report.json"), &json)?;
        }
        Ok(())
    }

    fn artifact(&self, name: &str, text: &str) -> Result<(), Failure> {
        if let Some(out) = &self.cli.out {
            write_file(&out.join(name), text)?;
        }
        Ok(())
    }

    fn data(&self) -> DataDir {
        DataDir::new(&self.cli.data_dir)
    }

    fn algebra(&self, positional: Option<&str>) -> Result<CartanType, Failure> {
        let s = positional
            .or(self.cli.algebra.as_deref())
            .ok_or_else(|| Failure::Usage("algebra not given".into()))?;
        Ok(pipeline::parse_cartan_type(s)?)
    }

    fn level(&self, positional: Option<&str>) -> Result<Q, Failure> {
        let s = positional
            .or(self.cli.level.as_deref())
            .ok_or_else(|| Failure::Usage("level not given".into()))?;
        parse_q(s).ok_or_else(|| Failure::Usage(format!("bad level `{s}`")))
    }
}

fn diff_lines(diffs: &[String]) -> String {
    diffs.iter().map(|d| format!("DIFF {d}\n")).collect()
}

fn verify_singular(run: &Run, path: &Path, errata: Option<&Path>) -> Outcome {
    let mut text = read_file(path)?;
    if let Some(e) = errata {
        let fixes = vasing::errata::parse(&read_file(e)?)?;
        text = vasing::errata::apply(&text, &fixes)?;
    }
    let r = pipeline::verify_singular_text(&text)?;
    let mut s = format!(
        "{} at level {}: {} printed terms, {} after normal ordering, conformal weight {}\n",
        r.algebra,
        r.level,
        r.printed_terms,
        r.terms,
        r.conformal_weight
            .map_or("mixed".to_string(), |w| w.to_string())
    );
    match &r.witness {
        None => s.push_str("singular\n"),
        Some((op, n)) => s.push_str(&format!(
            "not singular: {op} gives a nonzero vector with {n} terms\n"
        )),
    }
    let ok = r.singular;
    run.emit(serde_json::to_value(&r).expect("serializes"), s)?;
    Ok(ok)
}

fn pipeline_g2(run: &Run) -> Outcome {
    let r = pipeline::run_g2(&run.data())?;
    let mut s = format!(
        "literal vector: {} printed terms, singular {}\ncorrected ({} errata): singular {}, kernel dimension {}, scalar {}\n",
        r.literal.printed_terms,
        r.literal.singular,
        r.errata_applied,
        r.corrected.singular,
        r.kernel_dimension,
        r.kernel_scalar.as_deref().unwrap_or("none")
    );
    for l in &r.lower_searches {
        s.push_str(&format!(
            "singular space at ({}, {}): dimension {}\n",
            l.weight, l.degree, l.dimension
        ));
    }
    s.push_str(&format!(
        "Zhu image: {} terms, {} differ from the literal transcription, scalar {} after {} errata\n",
        r.zhu_terms,
        r.zhu_literal_diff_terms,
        r.zhu_scalar.as_deref().unwrap_or("none"),
        r.zhu_errata_applied
    ));
    for c in &r.chains {
        s.push_str(&format!(
            "{} [{}]: scalar {}\n",
            c.name,
            c.word,
            c.scalar.as_deref().unwrap_or("mismatch")
        ));
    }
    s.push_str(&format!(
        "rank of the first seven {}, eighth in span {}\nquotient dimension {:?}, radical {:?}, multiple points {:?}\n",
        r.rank_first_seven, r.eighth_in_span, r.quotient_dimension, r.radical_quotient_dimension, r.multiple_points
    ));
    s.push_str(&r.table.to_csv());
    s.push_str(&format!("ordinary: {}\n", r.ordinary.join(", ")));
    s.push_str(&diff_lines(&r.diffs));
    run.artifact("table.csv", &r.table.to_csv())?;
    let ok = r.diffs.is_empty();
    run.emit(serde_json::to_value(&r).expect("serializes"), s)?;
    Ok(ok)
}

fn pipeline_b3(run: &Run, skip: bool, cache: &dyn Cache) -> Outcome {
    let r = pipeline::run_b3(&run.data(), skip, cache)?;
    let mut s = format!(
        "literal vector singular {}; corrected ({} errata) singular {}, kernel dimension {}\n",
        r.literal.singular, r.errata_applied, r.corrected.singular, r.kernel_dimension
    );
    s.push_str(&format!(
        "zero-weight dimension {}, matches transcription {}\n",
        r.zero_weight_dimension, r.matches_transcription
    ));
    for (n, p) in &r.polynomials {
        s.push_str(&format!("{n}: {p}\n"));
    }
    for f in &r.families {
        s.push_str(&format!(
            "{}: {} found {} annihilates {}\n",
            f.name, f.family, f.found, f.annihilates
        ));
    }
    if let Some(st) = &r.subsingular {
        s.push_str(&format!(
            "embedded vector: {} terms, conformal weight {:?}; 4w1 component {} terms, Zhu image {} terms; in ideal {}\n",
            st.w_terms, st.w_conformal_weight, st.top_terms, st.top_zhu_terms, st.top_in_ideal
        ));
        for c in &st.chains {
            s.push_str(&format!(
                "{} [{}]: scalar {}\n",
                c.name,
                c.word,
                c.scalar.as_deref().unwrap_or("mismatch")
            ));
        }
        s.push_str(&st.table.to_csv());
        s.push_str(&format!("ordinary: {}\n", st.ordinary.join(", ")));
        run.artifact("table.csv", &st.table.to_csv())?;
    }
    s.push_str(&diff_lines(&r.diffs));
    let ok = r.diffs.is_empty();
    run.emit(serde_json::to_value(&r).expect("serializes"), s)?;
    Ok(ok)
}

fn assoc_variety(run: &Run, emit_polys: bool) -> Outcome {
    let data = run.data();
    let r = pipeline::run_assoc_variety_g2(&data)?;
    let mut s = String::new();
    for (j, gens) in &r.grading {
        s.push_str(&format!("g_{j}: {}\n", gens.join(" ")));
    }
    s.push_str(&format!(
        "grading matches {}, pairings match {}, centralizer dimension {} matches {}\n",
        r.grading_matches, r.pairings_match, r.centralizer_dimension, r.centralizer_matches
    ));
    for c in &r.chains {
        s.push_str(&format!("{} [{}]: {}\n", c.name, c.word, c.computed));
    }
    s.push_str(&format!(
        "zero locus: {:?} (origin only: {})\n",
        r.locus, r.locus_is_origin
    ));
    for red in &r.reductions {
        s.push_str(&format!(
            "reduction of {} (scalar {}):\n{}",
            red.name,
            red.scalar.as_deref().unwrap_or("none"),
            red.computed
        ));
    }
    s.push_str(&diff_lines(&r.diffs));
    if emit_polys {
        let polys = pipeline::symbol_polynomials(&data)?;
        match &run.cli.out {
            Some(_) => {
                for (n, p) in &polys {
                    run.artifact(&format!("{n}.txt"), &format!("{p}\n"))?;
                }
            }
            None if !run.cli.json => {
                for (n, p) in &polys {
                    s.push_str(&format!("{n} = {p}\n"));
                }
            }
            None => {}
        }
    }
    let ok = r.diffs.is_empty();
    run.emit(serde_json::to_value(&r).expect("serializes"), s)?;
    Ok(ok)
}

fn conf_dim(run: &Run, args: &[String]) -> Outcome {
    let (ty, level, w) = match args {
        [w] => (run.algebra(None)?, run.level(None)?, w),
        [a, k, w] => (run.algebra(Some(a))?, run.level(Some(k))?, w),
        _ => {
            return Err(Failure::Usage(
                "expected `WEIGHT` or `ALGEBRA LEVEL WEIGHT`".into(),
            ))
        }
    };
    let rank = vasing::liealg::RootSystem::new(ty).rank;
    let lambda = pipeline::parse_weight_arg(w, rank)?;
    let d = pipeline::run_conf_dim(ty, &level, &lambda)?;
    let report = serde_json::json!({
        "algebra": ty.label(),
        "level": level.to_string(),
        "weight": lambda.to_string(),
        "conformal_dimension": d.to_string(),
    });
    run.emit(report, format!("{d}\n"))?;
    Ok(true)
}

fn freudenthal(run: &Run, args: &[String]) -> Outcome {
    let (ty, hw, w) = match args {
        [hw, w] => (run.algebra(None)?, hw, w),
        [a, hw, w] => (run.algebra(Some(a))?, hw, w),
        _ => return Err(Failure::Usage("expected `[ALGEBRA] HIGHEST WEIGHT`".into())),
    };
    let rank = vasing::liealg::RootSystem::new(ty).rank;
    let lambda = pipeline::parse_weight_arg(hw, rank)?;
    let mu = pipeline::parse_weight_arg(w, rank)?;
    let r = pipeline::run_freudenthal(ty, &lambda, &mu)?;
    let text = format!("{}\n", r.multiplicity);
    let ok = r.consistent;
    run.emit(serde_json::to_value(&r).expect("serializes"), text)?;
    Ok(ok)
}

fn spectral_flow(run: &Run, range: i64) -> Outcome {
    let r = pipeline::run_spectral_flow(range)?;
    let mut s = format!(
        "commutation defects for |m|,|n| <= {}: {}\n",
        r.commutation_range, r.commutation_defects
    );
    for c in &r.checks {
        let status = if c.expected_zero == c.is_zero {
            "ok"
        } else {
            "FAIL"
        };
        s.push_str(&format!(
            "{status} {} (zero: {}, expected zero: {})\n",
            c.label, c.is_zero, c.expected_zero
        ));
    }
    s.push_str(&format!(
        "weight {} -> {}, L0 {} (expected {})\n",
        r.vector_weight, r.twisted_weight, r.twisted_l0, r.expected_l0
    ));
    for (w, d) in &r.conformal_dimensions {
        s.push_str(&format!("conformal dimension of {w}: {d}\n"));
    }
    let ok = r.pass;
    run.emit(serde_json::to_value(&r).expect("serializes"), s)?;
    Ok(ok)
}

fn table1(run: &Run, max_dim: i64) -> Outcome {
    let ty = match &run.cli.algebra {
        Some(a) => pipeline::parse_cartan_type(a)?,
        None => CartanType::G2,
    };
    let level = match &run.cli.level {
        Some(k) => run.level(Some(k))?,
        None => Q::from_integer((-2).into()),
    };
    if ty == CartanType::G2 && level == Q::from_integer((-2).into()) {
        let r = pipeline::run_dimension_table(&run.data())?;
        let mut s = String::new();
        for row in &r.computed {
            s.push_str(&format!("{} | {}\n", row.dimension, row.weights.join(", ")));
        }
        s.push_str(&diff_lines(&r.diffs));
        let ok = r.matches;
        run.emit(serde_json::to_value(&r).expect("serializes"), s)?;
        return Ok(ok);
    }
    let t = pipeline::dimension_table(ty, &level, max_dim)?;
    let rows: Vec<serde_json::Value> = t
        .iter()
        .map(|(d, ws)| serde_json::json!({"dimension": d, "weights": ws.iter().map(|w| w.to_string()).collect::<Vec<_>>()}))
        .collect();
    let s: String = t
        .iter()
        .map(|(d, ws)| {
            format!(
                "{d} | {}\n",
                ws.iter()
                    .map(|w| w.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            )
        })
        .collect();
    run.emit(
        serde_json::json!({"algebra": ty.label(), "level": level.to_string(), "computed": rows}),
        s,
    )?;
    Ok(true)
}

fn dispatch(cli: &Cli) -> Outcome {
    let run = Run { cli };
    let file_cache;
    let cache: &dyn Cache = match &cli.cache_dir {
        Some(dir) => {
            file_cache = FileCache { dir: dir.clone() };
            &file_cache
        }
        None => &NoCache,
    };
    match &cli.command {
        Command::VerifySingular { path, errata } => verify_singular(&run, path, errata.as_deref()),
        Command::PipelineG2 => pipeline_g2(&run),
        Command::PipelineB3 { skip_subsingular } => pipeline_b3(&run, *skip_subsingular, cache),
        Command::AssocVarietyG2 { emit_polys } => assoc_variety(&run, *emit_polys),
        Command::ConfDim { args } => conf_dim(&run, args),
        Command::Freudenthal { args } => freudenthal(&run, args),
        Command::SpectralFlowCheck { range } => spectral_flow(&run, *range),
        Command::Table1 { max_dim } => table1(&run, *max_dim),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
