//! The `xfan` command line.

use std::io::Read;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde::Serialize;

use crate::cone::build_system;
use crate::error::Error;
use crate::io::{self, JsonInt, SeedInput};
use crate::pattern::{enumerate, node_at, EnumerateOptions, PatternCatalog};
use crate::rep::{DerivedObject, PathAlgebraData};
use crate::seed::ExchangeMatrix;
use crate::xfan::{assemble_fan, theta};

/// Node cap for `--exhaustive`.
pub const EXHAUSTIVE_NODE_CAP: usize = 1_000_000;

#[derive(Parser, Debug)]
#[command(name = "xfan", version, about = "Cones, facets and theta functions of cluster complexes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the exchange matrix and report its symmetrizer, quiver and kernel
    Validate(InputArgs),
    /// Mutate the exchange matrix along a sequence
    Mutate(SeqArgs),
    /// c-matrix of the seed reached by a sequence
    Cmatrix(SeqArgs),
    /// g-matrix of the seed reached by a sequence
    Gmatrix(SeqArgs),
    /// F-polynomials of the seed reached by a sequence
    Fpoly(SeqArgs),
    /// Inequality system and cone of the seed reached by a sequence
    Cone(SeqArgs),
    /// Enumerate seeds and assemble the fan
    Fan(FanArgs),
    /// Theta function at an integral point
    Theta(ThetaArgs),
    /// Knit the Auslander-Reiten quiver of an acyclic seed
    Ar(ArArgs),
    /// Hyperplane normals of positive c-vectors
    Normals(NormalsArgs),
    /// Certificates for implicit equalities at a seed
    Certify(SeqArgs),
}

#[derive(Args, Debug)]
pub struct InputArgs {
    /// JSON file with {"B": [[..]], "d": [..]}, or - for standard input
    #[arg(long = "B", value_name = "FILE")]
    pub b: String,
}

#[derive(Args, Debug)]
pub struct SeqArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Comma-separated mutation directions, 1-based
    #[arg(long, default_value = "")]
    pub seq: String,
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    /// Maximum mutation depth of the search
    #[arg(long, default_value_t = 12)]
    pub depth: usize,
    /// Search until the pattern is exhausted (exit 3 if it is not finite)
    #[arg(long)]
    pub exhaustive: bool,
}

#[derive(Args, Debug)]
pub struct FanArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub search: SearchArgs,
    /// Emit primitive ray and lineality generators per cone
    #[arg(long)]
    pub emit_rays: bool,
}

#[derive(Args, Debug)]
pub struct ThetaArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub search: SearchArgs,
    /// Integral point as a JSON list
    #[arg(long, allow_hyphen_values = true)]
    pub beta: String,
}

#[derive(Args, Debug)]
pub struct ArArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Number of tau-inverse slices; required for non-Dynkin quivers
    #[arg(long)]
    pub window: Option<usize>,
}

#[derive(Args, Debug)]
pub struct NormalsArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub search: SearchArgs,
    /// A single positive c-vector as a JSON list
    #[arg(long, allow_hyphen_values = true)]
    pub cvec: Option<String>,
    #[arg(long)]
    pub window: Option<usize>,
}

/// Failure of a CLI job, with its exit code.
#[derive(Debug)]
pub enum CliError {
    Input(String),
    Library(Error),
    Incomplete(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 1,
            CliError::Library(e) if e.is_domain_error() => 2,
            CliError::Library(_) => 1,
            CliError::Incomplete(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "invalid input: {m}"),
            CliError::Library(e) => write!(f, "{e}"),
            CliError::Incomplete(m) => write!(f, "{m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Library(e)
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Execution context: where `-` reads from and how many threads to use.
pub struct Context<'a> {
    pub stdin: &'a mut dyn Read,
    pub threads: Option<usize>,
}

/// Reads `XFAN_THREADS`.
pub fn threads_from_env() -> CliResult<Option<usize>> {
    match std::env::var("XFAN_THREADS") {
        Err(_) => Ok(None),
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(t) if t > 0 => Ok(Some(t)),
            _ => Err(CliError::Input(format!(
                "XFAN_THREADS must be a positive integer, got {s:?}"
            ))),
        },
    }
}

/// Runs a parsed command, returning the JSON document.
pub fn run(cli: &Cli, ctx: &mut Context) -> CliResult<String> {
    match &cli.command {
        Command::Validate(a) => validate(&load(a, ctx)?),
        Command::Mutate(a) => {
            let (b, seq) = load_seq(a, ctx)?;
            let mut m = b.clone();
            for &k in &seq {
                m = m.mutate(k)?;
            }
            to_json(&io::MutateReport {
                seq: io::one_based(&seq),
                b: io::matrix(m.matrix()),
            })
        }
        Command::Cmatrix(a) => {
            let (b, seq) = load_seq(a, ctx)?;
            let node = node_at(&b, &seq, false)?;
            to_json(&io::MatrixReport {
                seq: io::one_based(&seq),
                matrix: io::matrix(node.c_matrix()),
                vectors: io::int_rows(&node.c_vectors()),
            })
        }
        Command::Gmatrix(a) => {
            let (b, seq) = load_seq(a, ctx)?;
            let node = node_at(&b, &seq, false)?;
            to_json(&io::MatrixReport {
                seq: io::one_based(&seq),
                matrix: io::matrix(node.g_matrix()),
                vectors: io::int_rows(&node.g_vectors()),
            })
        }
        Command::Fpoly(a) => {
            let (b, seq) = load_seq(a, ctx)?;
            let node = node_at(&b, &seq, true)?;
            let f = node.f_polynomials().expect("tracked");
            to_json(&io::FpolyReport {
                seq: io::one_based(&seq),
                f: f.iter().map(io::poly).collect(),
                display: f.iter().map(ToString::to_string).collect(),
            })
        }
        Command::Cone(a) => {
            let (b, seq) = load_seq(a, ctx)?;
            let node = node_at(&b, &seq, false)?;
            let desc = build_system(&node, &b).classify();
            to_json(&io::ConeReport {
                seq: io::one_based(&seq),
                c: io::matrix(node.c_matrix()),
                cone: (&desc).into(),
            })
        }
        Command::Fan(a) => fan(a, ctx),
        Command::Theta(a) => {
            let b = load(&a.input, ctx)?;
            let beta = parse_vector(&a.beta, "--beta", b.n())?;
            let catalog = search(&b, &a.search, ctx, true)?;
            let t = theta(&beta, &catalog)?;
            to_json(&io::ThetaReport {
                beta: io::ints(&t.beta),
                alpha: io::ints(&t.alpha),
                witness: io::one_based(&t.witness),
                value: io::poly(&t.value),
                display: t.value.to_string(),
            })
        }
        Command::Ar(a) => ar(a, ctx),
        Command::Normals(a) => normals(a, ctx),
        Command::Certify(a) => certify(a, ctx),
    }
}

/// Parses arguments and runs, mapping every failure to an exit code.
pub fn main_with_args<I, T>(args: I, ctx: &mut Context) -> (String, String, u8)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                (text, String::new(), 0)
            } else {
                (String::new(), text, 1)
            };
        }
    };
    match run(&cli, ctx) {
        Ok(out) => (out, String::new(), 0),
        Err(e) => (String::new(), format!("error: {e}\n"), e.exit_code()),
    }
}

fn to_json<T: Serialize>(v: &T) -> CliResult<String> {
    let mut s = serde_json::to_string_pretty(v).map_err(|e| CliError::Input(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn load(a: &InputArgs, ctx: &mut Context) -> CliResult<ExchangeMatrix> {
    let text = if a.b == "-" {
        let mut s = String::new();
        ctx.stdin
            .read_to_string(&mut s)
            .map_err(|e| CliError::Input(format!("reading standard input: {e}")))?;
        s
    } else {
        std::fs::read_to_string(&a.b)
            .map_err(|e| CliError::Input(format!("reading {}: {e}", a.b)))?
    };
    let input = SeedInput::parse(&text).map_err(|e| CliError::Input(e.to_string()))?;
    input.exchange_matrix().map_err(|e| match e {
        Error::NotSkewSymmetrizable(_) => CliError::Library(e),
        other => CliError::Input(other.to_string()),
    })
}

fn load_seq(a: &SeqArgs, ctx: &mut Context) -> CliResult<(ExchangeMatrix, Vec<usize>)> {
    let b = load(&a.input, ctx)?;
    let seq = parse_seq(&a.seq, b.n())?;
    Ok((b, seq))
}

/// Parses `"k1,k2,..."` (1-based) into 0-based directions.
pub fn parse_seq(s: &str, n: usize) -> CliResult<Vec<usize>> {
    let s = s.trim().trim_start_matches('[').trim_end_matches(']');
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|tok| {
            let k: usize = tok
                .trim()
                .parse()
                .map_err(|_| CliError::Input(format!("bad direction {tok:?} in --seq")))?;
            if k == 0 || k > n {
                return Err(CliError::Input(format!("direction {k} out of range 1..={n}")));
            }
            Ok(k - 1)
        })
        .collect()
}

fn parse_vector(s: &str, flag: &str, n: usize) -> CliResult<Vec<BigInt>> {
    let v: Vec<JsonInt> =
        serde_json::from_str(s).map_err(|e| CliError::Input(format!("{flag}: {e}")))?;
    if v.len() != n {
        return Err(CliError::Input(format!(
            "{flag} has length {}, expected {n}",
            v.len()
        )));
    }
    Ok(io::bigs(&v))
}

fn search(
    b: &ExchangeMatrix,
    s: &SearchArgs,
    ctx: &Context,
    track_f: bool,
) -> CliResult<PatternCatalog> {
    let options = EnumerateOptions {
        max_depth: if s.exhaustive { usize::MAX } else { s.depth },
        max_nodes: s.exhaustive.then_some(EXHAUSTIVE_NODE_CAP),
        track_f,
        threads: ctx.threads,
        stop_on_infinite_type: s.exhaustive,
    };
    let catalog = enumerate(b, &options)?;
    if s.exhaustive && !catalog.is_complete() {
        let why = if catalog.infinite_type_detected() {
            "pattern is of infinite type".to_string()
        } else {
            format!("pattern not exhausted within {EXHAUSTIVE_NODE_CAP} seeds")
        };
        return Err(CliError::Incomplete(why));
    }
    Ok(catalog)
}

fn validate(b: &ExchangeMatrix) -> CliResult<String> {
    let quiver = b.quiver().ok();
    to_json(&io::ValidateReport {
        n: b.n(),
        b: io::matrix(b.matrix()),
        d: io::ints(b.symmetrizer()),
        skew_symmetric: b.is_skew_symmetric(),
        arrows: quiver.as_ref().map(|q| {
            q.arrows()
                .iter()
                .map(|a| io::ArrowJson {
                    source: a.source + 1,
                    target: a.target + 1,
                    multiplicity: a.multiplicity,
                })
                .collect()
        }),
        acyclic: quiver.as_ref().map(|q| q.is_acyclic()),
        kernel: io::int_rows(&b.kernel_of_p_star()),
    })
}

fn fan(a: &FanArgs, ctx: &mut Context) -> CliResult<String> {
    let b = load(&a.input, ctx)?;
    let catalog = search(&b, &a.search, ctx, false)?;
    let report = assemble_fan(&catalog);
    let cones = report
        .cones
        .iter()
        .map(|c| io::FanCone {
            cone: (&c.description).into(),
            witnesses: c.witnesses.iter().map(|w| io::one_based(w)).collect(),
            generators: a.emit_rays.then(|| {
                let g = c.description.generators();
                io::GeneratorsJson {
                    rays: io::int_rows(&g.rays),
                    lineality: io::int_rows(&g.lineality),
                }
            }),
        })
        .collect();
    to_json(&io::FanReport {
        complete: report.complete,
        depth: catalog.explored_depth(),
        seeds: catalog.len(),
        seeds_up_to_relabelling: catalog.unlabelled_count(),
        dims: report
            .dims
            .iter()
            .map(|(d, c)| (d.to_string(), *c))
            .collect(),
        cones,
    })
}

fn ar(a: &ArArgs, ctx: &mut Context) -> CliResult<String> {
    let b = load(&a.input, ctx)?;
    let data = PathAlgebraData::from_exchange_matrix(&b)?;
    let knit = data.knit(a.window)?;
    let vertices = knit
        .vertices
        .iter()
        .map(|v| {
            Ok(io::ArVertexJson {
                vertex: v.vertex + 1,
                slice: v.slice,
                dim: io::ints(&v.object.dim),
                g: io::ints(&data.g_vector(&v.object)?),
                module: v.is_module,
            })
        })
        .collect::<CliResult<Vec<_>>>()?;
    to_json(&io::ArReport {
        cartan: io::matrix(data.cartan()),
        cartan_inv: io::matrix(data.cartan_inv()),
        coxeter_inv: io::matrix(data.coxeter_inv()),
        dynkin: data.is_dynkin(),
        exhaustive: knit.exhaustive,
        vertices,
        meshes: knit
            .meshes
            .iter()
            .map(|m| io::MeshJson {
                source: m.source,
                middles: m.middles.clone(),
                target: m.target,
            })
            .collect(),
    })
}

fn normals(a: &NormalsArgs, ctx: &mut Context) -> CliResult<String> {
    let b = load(&a.input, ctx)?;
    let data = PathAlgebraData::from_exchange_matrix(&b)?;
    let knit = match a.window {
        Some(w) => Some(data.knit(Some(w))?),
        None if data.is_dynkin() => Some(data.knit(None)?),
        None => None,
    };
    let (cvecs, complete) = match &a.cvec {
        Some(s) => (vec![parse_vector(s, "--cvec", b.n())?], true),
        None => {
            let catalog = search(&b, &a.search, ctx, false)?;
            let set = catalog.positive_c_vectors();
            (set.vectors.into_iter().collect(), !set.partial)
        }
    };
    let normals = cvecs
        .iter()
        .map(|c| {
            let nv = data.normal_vector(c, knit.as_ref())?;
            Ok(io::NormalJson {
                c: io::ints(c),
                normal: io::ints(&nv.normal),
                primitive: io::ints(&nv.primitive),
                mesh_sum: nv.mesh_sum.as_deref().map(io::ints),
            })
        })
        .collect::<CliResult<Vec<_>>>()?;
    to_json(&io::NormalsReport { complete, normals })
}

fn certify(a: &SeqArgs, ctx: &mut Context) -> CliResult<String> {
    let (b, seq) = load_seq(a, ctx)?;
    let node = node_at(&b, &seq, false)?;
    let desc = build_system(&node, &b).classify();
    let cvecs = node.c_vectors();
    let certificates = match PathAlgebraData::from_exchange_matrix(&b) {
        Ok(data) => data
            .kernel_certificates(&cvecs)?
            .into_iter()
            .map(|c| io::KernelCertificateJson {
                subset: io::one_based(&c.subset),
                lambda: io::ints(&c.lambda),
            })
            .collect(),
        Err(e @ (Error::NotAcyclic | Error::NotSkewSymmetric)) => {
            return Err(CliError::Library(e));
        }
        Err(e) => return Err(e.into()),
    };
    let implicit = desc
        .implicit_certificates
        .iter()
        .map(|(row, cert)| {
            let (lambda, scale) = cert.integral();
            io::ImplicitCertificateJson {
                row: row + 1,
                lambda: io::ints(&lambda),
                scale: JsonInt(scale),
            }
        })
        .collect();
    to_json(&io::CertifyReport {
        seq: io::one_based(&seq),
        c_vectors: io::int_rows(&cvecs),
        certificates,
        implicit,
        kernel: io::int_rows(&b.kernel_of_p_star()),
    })
}

/// Shift-aware label for a dimension vector, e.g. `011` or `(111)[1]`.
pub fn label(x: &DerivedObject) -> String {
    let digits = |v: &[BigInt]| v.iter().map(|d| d.to_string()).collect::<String>();
    if x.is_shifted() {
        format!("({})[1]", digits(&x.shift().dim))
    } else {
        digits(&x.dim)
    }
}
