//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 on a domain error (the error name leads the
//! diagnostic line), 2 on a usage error.

use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use crate::census::{self, CensusError, CensusQuery};
use crate::chevalley::{self, ChevalleyError};
use crate::geometry::{self, Character, GeometryError};
use crate::phi::{self, ParabolicScheme, PhiError, Prime, RankOneBlock};
use crate::rootsys::{LeviSubset, NodeSet, RootSystem, RootSystemError};

/// Revision of the block tables; bump when a catalog table changes.
pub const CATALOG_SEMANTICS: &str = "1";

const VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), " (catalog semantics 1)");

#[derive(Debug, Parser)]
#[command(name = "parabolic", version = VERSION, about = "Parabolic subgroup schemes in small characteristic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Dot,
    Text,
}

#[derive(Debug, Args)]
struct SystemArgs {
    /// Root system label, e.g. B2, G2 or A1xA2.
    #[arg(long = "type", value_name = "TYPE")]
    kind: String,
}

#[derive(Debug, Args)]
struct SchemeArgs {
    /// Root system label; checked against the input when both are given.
    #[arg(long = "type", value_name = "TYPE")]
    kind: Option<String>,
    #[arg(long)]
    prime: Option<u32>,
    /// Path to a scheme in canonical JSON.
    #[arg(long)]
    input: PathBuf,
}

#[derive(Debug, Args)]
struct CensusArgs {
    #[arg(long = "type", value_name = "TYPE")]
    kind: String,
    #[arg(long)]
    prime: u32,
    /// Comma-separated 1-based Levi nodes; "" is the Borel; omit for every subset.
    #[arg(long, value_parser = parse_levi)]
    levi: Option<LeviArg>,
    #[arg(long, default_value_t = 2)]
    max_height: u32,
    /// Keep only schemes containing no isogeny kernel.
    #[arg(long)]
    normalized: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Positive roots, pairings and lengths of a root system.
    Info {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Structure-constant magnitudes of every composable pair.
    Constants {
        #[command(flatten)]
        sys: SystemArgs,
        /// Adds a column telling whether the constant vanishes mod p.
        #[arg(long)]
        prime: Option<u32>,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// The rank-one block catalog.
    Blocks {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long)]
        prime: u32,
        /// Restrict to one 1-based simple root.
        #[arg(long)]
        alpha: Option<usize>,
        #[arg(long, default_value_t = 2)]
        max_height: u32,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Checks that a scheme equals the intersection of its generated blocks.
    Validate {
        #[command(flatten)]
        scheme: SchemeArgs,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Prints the generated blocks and their intersection.
    Reconstruct {
        #[command(flatten)]
        scheme: SchemeArgs,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Enumerates schemes up to a height bound.
    Census {
        #[command(flatten)]
        q: CensusArgs,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Anticanonical pairings, Fano status and not-Fano certificates.
    Fano {
        #[command(flatten)]
        q: CensusArgs,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Contraction sequence of a scheme (or of a reduced parabolic).
    Fibrations {
        #[arg(long = "type", value_name = "TYPE")]
        kind: Option<String>,
        #[arg(long)]
        prime: Option<u32>,
        #[arg(long, value_parser = parse_levi)]
        levi: Option<LeviArg>,
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// The D4 spanned by the long roots of F4.
    D4 {
        #[arg(long = "type", value_name = "TYPE", default_value = "F4")]
        kind: String,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// The very special isogeny: root bijection, or transport of a scheme.
    Dual {
        #[arg(long = "type", value_name = "TYPE")]
        kind: Option<String>,
        #[arg(long)]
        input: Option<PathBuf>,
        /// Push forward instead of pulling back.
        #[arg(long)]
        pushforward: bool,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
}

/// 1-based Levi node list as given on the command line.
#[derive(Debug, Clone, Default)]
struct LeviArg(Vec<usize>);

fn parse_levi(s: &str) -> Result<LeviArg, String> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(LeviArg::default());
    }
    s.split(',')
        .map(|t| {
            let t = t.trim();
            match t.parse::<usize>() {
                Ok(0) | Err(_) => Err(format!("invalid simple-root index {t:?}")),
                Ok(v) => Ok(v),
            }
        })
        .collect::<Result<_, _>>()
        .map(LeviArg)
}

#[derive(Debug, Error)]
enum CliError {
    #[error(transparent)]
    Root(#[from] RootSystemError),
    #[error(transparent)]
    Phi(#[from] PhiError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Census(#[from] CensusError),
    #[error(transparent)]
    Chevalley(#[from] ChevalleyError),
    #[error("InvalidScheme: reconstruction differs at {count} root(s)\n{diff}")]
    InvalidScheme { count: usize, diff: String },
    #[error("InputMismatch: {0}")]
    InputMismatch(String),
    #[error("UnsupportedFormat: {0}")]
    UnsupportedFormat(String),
    #[error("IoError: {0}")]
    Io(String),
}

type Out<'a> = &'a mut dyn Write;

/// Runs the CLI on `argv` (including the program name) with the process's
/// standard streams.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// Like [`run`], writing to the given streams.
pub fn run_with<I, T>(argv: I, out: Out<'_>, err: Out<'_>) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return e.exit_code();
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "{e}");
            1
        }
    }
}

fn emit(out: Out<'_>, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes()).map_err(|e| CliError::Io(e.to_string()))
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("output serializes") + "\n"
}

fn system(kind: &str) -> Result<Arc<RootSystem>, CliError> {
    Ok(Arc::new(RootSystem::parse(kind)?))
}

fn levi_set(rs: &RootSystem, nodes: &[usize]) -> Result<LeviSubset, CliError> {
    for &n in nodes {
        if n > rs.rank() {
            return Err(PhiError::InvalidLevi(n).into());
        }
    }
    Ok(NodeSet::from_indices(nodes.iter().map(|n| n - 1)))
}

fn read_scheme(args: &SchemeArgs) -> Result<ParabolicScheme, CliError> {
    read_scheme_path(&args.input, args.kind.as_deref(), args.prime)
}

fn read_scheme_path(path: &PathBuf, kind: Option<&str>, prime: Option<u32>) -> Result<ParabolicScheme, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let s = ParabolicScheme::from_json(&text)?;
    if let Some(k) = kind {
        let want = RootSystem::parse(k)?;
        if want.name() != s.root_system().name() {
            return Err(CliError::InputMismatch(format!(
                "--type {} but the input is of type {}",
                want.name(),
                s.root_system().name()
            )));
        }
    }
    if let Some(p) = prime {
        if p != s.prime().get() {
            return Err(CliError::InputMismatch(format!("--prime {p} but the input has prime {}", s.prime())));
        }
    }
    Ok(s)
}

fn unsupported(cmd: &str, f: Format) -> CliError {
    CliError::UnsupportedFormat(format!("{cmd} does not support --format {f:?}").to_lowercase())
}

fn dispatch(cmd: Command, out: Out<'_>) -> Result<(), CliError> {
    match cmd {
        Command::Info { sys, format } => info(&sys.kind, format.unwrap_or(Format::Text), out),
        Command::Constants { sys, prime, format } => constants(&sys.kind, prime, format.unwrap_or(Format::Csv), out),
        Command::Blocks { sys, prime, alpha, max_height, format } => {
            blocks(&sys.kind, prime, alpha, max_height, format.unwrap_or(Format::Text), out)
        }
        Command::Validate { scheme, format } => validate(&scheme, format.unwrap_or(Format::Text), out),
        Command::Reconstruct { scheme, format } => reconstruct(&scheme, format.unwrap_or(Format::Json), out),
        Command::Census { q, format } => census_cmd(&q, format.unwrap_or(Format::Csv), out),
        Command::Fano { q, format } => fano(&q, format.unwrap_or(Format::Csv), out),
        Command::Fibrations { kind, prime, levi, input, format } => {
            fibrations(kind, prime, levi, input, format.unwrap_or(Format::Text), out)
        }
        Command::D4 { kind, format } => d4(&kind, format.unwrap_or(Format::Text), out),
        Command::Dual { kind, input, pushforward, format } => {
            dual(kind, input, pushforward, format.unwrap_or(Format::Json), out)
        }
    }
}

#[derive(Serialize)]
struct RootInfo {
    root: Vec<i32>,
    height: i32,
    length: String,
}

#[derive(Serialize)]
struct InfoOut {
    #[serde(rename = "type")]
    kind: String,
    rank: usize,
    positive_roots: Vec<RootInfo>,
    pairing_matrix: Vec<Vec<i64>>,
    cartan_matrix: Vec<Vec<i64>>,
    incidence_threshold: Option<String>,
}

fn info(kind: &str, format: Format, out: Out<'_>) -> Result<(), CliError> {
    let rs = system(kind)?;
    let roots: Vec<RootInfo> = rs
        .positive_roots()
        .iter()
        .enumerate()
        .map(|(i, g)| RootInfo { root: g.coeffs().to_vec(), height: g.height(), length: rs.length_of(i).to_string() })
        .collect();
    let threshold = if rs.is_irreducible() { Some(geometry::incidence_threshold(&rs)?.to_string()) } else { None };
    match format {
        Format::Json => emit(
            out,
            &json(&InfoOut {
                kind: rs.name(),
                rank: rs.rank(),
                positive_roots: roots,
                pairing_matrix: rs.pairing_matrix().to_vec(),
                cartan_matrix: rs.cartan_matrix(),
                incidence_threshold: threshold,
            }),
        ),
        Format::Text => {
            let mut s = format!("type {}\nrank {}\npositive roots {}\n", rs.name(), rs.rank(), roots.len());
            for r in &roots {
                let root = r.root.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
                s += &format!("  [{root}] height {} {}\n", r.height, r.length);
            }
            s += "pairing matrix\n";
            for row in rs.pairing_matrix() {
                s += &format!("  {}\n", row.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "));
            }
            if let Some(h) = threshold {
                s += &format!("incidence threshold {h}\n");
            }
            emit(out, &s)
        }
        f => Err(unsupported("info", f)),
    }
}

#[derive(Serialize)]
struct ConstantRow {
    gamma: Vec<i32>,
    delta: Vec<i32>,
    magnitude: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    vanishes_mod_p: Option<bool>,
}

fn constants(kind: &str, prime: Option<u32>, format: Format, out: Out<'_>) -> Result<(), CliError> {
    let rs = system(kind)?;
    let p = prime.map(Prime::new).transpose()?;
    let rows: Vec<ConstantRow> = chevalley::structure_table(&rs)
        .into_iter()
        .map(|(g, d, m)| ConstantRow {
            vanishes_mod_p: p.map(|p| m % p.get() == 0),
            gamma: g.coeffs().to_vec(),
            delta: d.coeffs().to_vec(),
            magnitude: m,
        })
        .collect();
    match format {
        Format::Csv if p.is_none() => emit(out, &chevalley::structure_table_csv(&rs)),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let io = |e: csv::Error| CliError::Io(e.to_string());
            w.write_record(["gamma", "delta", "magnitude", "vanishes_mod_p"]).map_err(io)?;
            for r in &rows {
                w.write_record([
                    fmt_coeffs(&r.gamma),
                    fmt_coeffs(&r.delta),
                    r.magnitude.to_string(),
                    r.vanishes_mod_p.unwrap_or(false).to_string(),
                ])
                .map_err(io)?;
            }
            let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
            emit(out, &String::from_utf8_lossy(&bytes))
        }
        Format::Json => emit(out, &json(&rows)),
        Format::Text => {
            let s: String = rows
                .iter()
                .map(|r| format!("{} {} {}\n", fmt_coeffs(&r.gamma), fmt_coeffs(&r.delta), r.magnitude))
                .collect();
            emit(out, &s)
        }
        f => Err(unsupported("constants", f)),
    }
}

fn fmt_coeffs(v: &[i32]) -> String {
    format!("[{}]", v.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
}

#[derive(Serialize)]
struct BlockOut {
    block: String,
    scheme: ParabolicScheme,
}

fn blocks(
    kind: &str,
    prime: u32,
    alpha: Option<usize>,
    max_height: u32,
    format: Format,
    out: Out<'_>,
) -> Result<(), CliError> {
    let rs = system(kind)?;
    let p = Prime::new(prime)?;
    let anchors: Vec<usize> = match alpha {
        Some(a) if a == 0 || a > rs.rank() => return Err(PhiError::InvalidLevi(a).into()),
        Some(a) => vec![a - 1],
        None => (0..rs.rank()).collect(),
    };
    let mut list: Vec<(RankOneBlock, ParabolicScheme)> = Vec::new();
    for a in anchors {
        for b in census::rank_one_catalog(&rs, p, a, max_height) {
            list.push((b, phi::block_phi(&rs, p, b)?));
        }
    }
    match format {
        Format::Json => emit(
            out,
            &json(&list.iter().map(|(b, s)| BlockOut { block: b.to_string(), scheme: s.clone() }).collect::<Vec<_>>()),
        ),
        Format::Text => {
            let s: String = list.iter().map(|(b, s)| format!("{b} {}\n", s.to_canonical_json())).collect();
            emit(out, &s)
        }
        Format::Dot => {
            let schemes: Vec<ParabolicScheme> = list.into_iter().map(|(_, s)| s).collect();
            emit(out, &census::hasse_dot(&schemes)?)
        }
        f => Err(unsupported("blocks", f)),
    }
}

#[derive(Serialize)]
struct ValidateOut {
    valid: bool,
    generated_blocks: Vec<String>,
    enne_violations: usize,
    phi_hash: String,
}

fn validate(args: &SchemeArgs, format: Format, out: Out<'_>) -> Result<(), CliError> {
    let s = read_scheme(args)?;
    let rec = s.reconstruct()?;
    if rec != s {
        let diff = s.diff(&rec);
        let lines: Vec<String> = diff.iter().map(|(g, a, b)| format!("  {g}: {a} -> {b}")).collect();
        return Err(CliError::InvalidScheme { count: diff.len(), diff: lines.join("\n") });
    }
    let report = ValidateOut {
        valid: true,
        generated_blocks: s.generated_blocks()?.iter().map(ToString::to_string).collect(),
        enne_violations: s.enne_check().len(),
        phi_hash: phi::phi_hash(&s),
    };
    match format {
        Format::Json => emit(out, &json(&report)),
        Format::Text => emit(out, &format!("valid {}\n", report.generated_blocks.join(" ∩ "))),
        f => Err(unsupported("validate", f)),
    }
}

#[derive(Serialize)]
struct ReconstructOut {
    generated_blocks: Vec<String>,
    reconstructed: ParabolicScheme,
    equal: bool,
}

fn reconstruct(args: &SchemeArgs, format: Format, out: Out<'_>) -> Result<(), CliError> {
    let s = read_scheme(args)?;
    let rec = s.reconstruct()?;
    let report = ReconstructOut {
        generated_blocks: s.generated_blocks()?.iter().map(ToString::to_string).collect(),
        equal: rec == s,
        reconstructed: rec,
    };
    match format {
        Format::Json => emit(out, &json(&report)),
        Format::Text => emit(
            out,
            &format!(
                "{}\n{}\n{}\n",
                report.generated_blocks.join(" ∩ "),
                report.reconstructed.to_canonical_json(),
                if report.equal { "equal" } else { "differs" }
            ),
        ),
        f => Err(unsupported("reconstruct", f)),
    }
}

fn queries(q: &CensusArgs) -> Result<Vec<CensusQuery>, CliError> {
    let rs = system(&q.kind)?;
    let p = Prime::new(q.prime)?;
    let levis: Vec<LeviSubset> = match &q.levi {
        Some(nodes) => vec![levi_set(&rs, &nodes.0)?],
        None => rs.all_nodes().subsets().collect(),
    };
    Ok(levis
        .into_iter()
        .map(|levi| CensusQuery { rs: rs.clone(), p, levi, max_height: q.max_height, normalized_only: q.normalized })
        .collect())
}

fn census_cmd(q: &CensusArgs, format: Format, out: Out<'_>) -> Result<(), CliError> {
    let mut all = Vec::new();
    for query in queries(q)? {
        all.extend(census::enumerate_parabolics(&query)?);
    }
    match format {
        Format::Csv => emit(out, &census::census_csv(&all)),
        Format::Json => emit(out, &census::census_json_lines(&all)),
        Format::Dot => emit(out, &census::hasse_dot(&all)?),
        Format::Text => {
            let s: String = all.iter().map(|x| format!("{} {}\n", phi::phi_hash(x), census::scheme_label(x))).collect();
            emit(out, &(s + &format!("{} schemes\n", all.len())))
        }
    }
}

#[derive(Serialize)]
struct CertificateOut {
    beta_l: usize,
    delta: Vec<i32>,
    threshold: String,
    pairing_value: serde_json::Number,
}

#[derive(Serialize)]
struct FanoOut {
    scheme: ParabolicScheme,
    phi_hash: String,
    chi: Character,
    fano: bool,
    certificate: Option<CertificateOut>,
}

fn fano(q: &CensusArgs, format: Format, out: Out<'_>) -> Result<(), CliError> {
    let mut rows = Vec::new();
    for query in queries(q)? {
        rows.extend(census::fano_census(&query)?.rows);
    }
    match format {
        Format::Csv => emit(out, &census::fano_csv(&rows)),
        Format::Json => {
            let s: String = rows
                .iter()
                .map(|r| {
                    let rs = r.scheme.root_system();
                    let row = FanoOut {
                        scheme: r.scheme.clone(),
                        phi_hash: phi::phi_hash(&r.scheme),
                        chi: r.chi.clone(),
                        fano: r.fano,
                        certificate: r.certificate.as_ref().map(|c| CertificateOut {
                            beta_l: rs.labels()[c.beta_l],
                            delta: c.delta.coeffs().to_vec(),
                            threshold: c.threshold.to_string(),
                            pairing_value: c.pairing_value.to_string().parse().expect("integer"),
                        }),
                    };
                    serde_json::to_string(&row).expect("row serializes") + "\n"
                })
                .collect();
            emit(out, &s)
        }
        Format::Text => {
            let fano_count = rows.iter().filter(|r| r.fano).count();
            let max = rows.iter().filter(|r| r.fano).map(|r| r.scheme.max_height()).max();
            let mut s: String = rows
                .iter()
                .map(|r| {
                    format!(
                        "{} {} chi={} {}\n",
                        phi::phi_hash(&r.scheme),
                        if r.fano { "fano" } else { "not-fano" },
                        r.chi,
                        census::scheme_label(&r.scheme)
                    )
                })
                .collect();
            s += &format!(
                "{} schemes, {} Fano, max Fano height {}\n",
                rows.len(),
                fano_count,
                max.map_or("-".to_string(), |m| m.to_string())
            );
            emit(out, &s)
        }
        f => Err(unsupported("fano", f)),
    }
}

#[derive(Serialize)]
struct StepOut {
    target_type: String,
    target_alpha: usize,
    base_dimension: usize,
    fiber: ParabolicScheme,
    stripped: Vec<String>,
}

#[derive(Serialize)]
struct FibrationOut {
    source: ParabolicScheme,
    source_stripped: Vec<String>,
    steps: Vec<StepOut>,
}

fn fibrations(
    kind: Option<String>,
    prime: Option<u32>,
    levi: Option<LeviArg>,
    input: Option<PathBuf>,
    format: Format,
    out: Out<'_>,
) -> Result<(), CliError> {
    let scheme = match input {
        Some(path) => read_scheme_path(&path, kind.as_deref(), prime)?,
        None => {
            let rs = system(kind.as_deref().unwrap_or_default())?;
            let p = Prime::new(prime.unwrap_or(2))?;
            let l = levi_set(&rs, &levi.unwrap_or_default().0)?;
            ParabolicScheme::reduced(rs, p, l)?
        }
    };
    let seq = geometry::fibration_sequence(&scheme)?;
    let fmt_kernels = |v: &[phi::KernelRecord]| v.iter().map(|k| format!("{}#{}", k.kind, k.factor + 1)).collect();
    let report = FibrationOut {
        source: seq.source.clone(),
        source_stripped: fmt_kernels(&seq.source_stripped),
        steps: seq
            .steps
            .iter()
            .map(|s| StepOut {
                target_type: s.target_type.to_string(),
                target_alpha: s.target_alpha,
                base_dimension: s.base_dimension,
                fiber: s.fiber.clone(),
                stripped: fmt_kernels(&s.stripped),
            })
            .collect(),
    };
    match format {
        Format::Json => emit(out, &json(&report)),
        Format::Text => {
            let mut s = format!("source {}\n", report.source.to_canonical_json());
            for (i, st) in report.steps.iter().enumerate() {
                s += &format!(
                    "step {}: base {}/P^{} (dim {}), fiber {} stripped [{}]\n",
                    i + 1,
                    st.target_type,
                    st.target_alpha,
                    st.base_dimension,
                    st.fiber.root_system().name(),
                    st.stripped.join(", ")
                );
            }
            emit(out, &s)
        }
        f => Err(unsupported("fibrations", f)),
    }
}

#[derive(Serialize)]
struct D4Out {
    #[serde(rename = "type")]
    kind: String,
    long_roots: usize,
    basis: Vec<Vec<i32>>,
    gram_matrix: Vec<Vec<i64>>,
}

fn d4(kind: &str, format: Format, out: Out<'_>) -> Result<(), CliError> {
    let rs = system(kind)?;
    let sub = rs.long_root_subsystem()?;
    let gram: Vec<Vec<i64>> = sub.basis.iter().map(|a| sub.basis.iter().map(|b| rs.pairing(a, b)).collect()).collect();
    let report = D4Out {
        kind: sub.kind.to_string(),
        long_roots: sub.roots.len(),
        basis: sub.basis.iter().map(|b| b.coeffs().to_vec()).collect(),
        gram_matrix: gram,
    };
    match format {
        Format::Json => emit(out, &json(&report)),
        Format::Text => {
            let mut s = format!("{} long roots spanning {}\n", report.long_roots, report.kind);
            for (i, b) in report.basis.iter().enumerate() {
                s += &format!("  beta{} = {}\n", i + 1, fmt_coeffs(b));
            }
            emit(out, &s)
        }
        f => Err(unsupported("d4", f)),
    }
}

#[derive(Serialize)]
struct DualRow {
    root: Vec<i32>,
    length: String,
    image: Vec<i32>,
    image_length: String,
}

fn dual(
    kind: Option<String>,
    input: Option<PathBuf>,
    push: bool,
    format: Format,
    out: Out<'_>,
) -> Result<(), CliError> {
    if let Some(path) = input {
        let s = read_scheme_path(&path, kind.as_deref(), None)?;
        let t = if push { s.vsi_pushforward()? } else { s.vsi_pullback()? };
        return match format {
            Format::Json => emit(out, &(t.to_canonical_json() + "\n")),
            Format::Text => emit(out, &format!("{} {}\n", t.root_system().name(), t.to_canonical_json())),
            f => Err(unsupported("dual", f)),
        };
    }
    let rs = system(kind.as_deref().unwrap_or_default())?;
    let map = rs.very_special_dual()?;
    let rows: Vec<DualRow> = rs
        .positive_roots()
        .iter()
        .enumerate()
        .map(|(i, g)| DualRow {
            root: g.coeffs().to_vec(),
            length: rs.length_of(i).to_string(),
            image: map.images[i].coeffs().to_vec(),
            image_length: map.dual.length_class(&map.images[i]).map(|l| l.to_string()).unwrap_or_default(),
        })
        .collect();
    match format {
        Format::Json => emit(out, &json(&rows)),
        Format::Text => {
            let mut s = format!("{} -> {}\n", rs.name(), map.dual.name());
            for r in &rows {
                s +=
                    &format!("  {} {} -> {} {}\n", fmt_coeffs(&r.root), r.length, fmt_coeffs(&r.image), r.image_length);
            }
            emit(out, &s)
        }
        f => Err(unsupported("dual", f)),
    }
}
