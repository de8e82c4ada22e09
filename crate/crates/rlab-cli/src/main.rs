//! rlab: build complexes and building balls, take quotients and lifts,
//! compute spectra, and classify complexes as Ramanujan.
//!
//! Exit codes: 0 success, 2 validation error, 3 numerical failure.

mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde::Serialize;

use rlab_core::building::{building_ball, LocalFieldParams, DEFAULT_VERTEX_BUDGET};
use rlab_core::colored::{circulant_colored, tripartite_colored};
use rlab_core::generate;
use rlab_core::io;
use rlab_core::operators::{adjacency, edge_adjacency, laplacian, LaplacianVariant, OperatorKind};
use rlab_core::spectra::{
    alon_boppana_scan, joint_spectrum, ramanujan_verdict, random_lift, trivial_spectrum,
    PointClass, ReferenceSpectrum, SpectraError, SpectrumSet, TorusOpts, TrivialSpectrum,
};
use rlab_core::{quotient_by_action, ChainOperator, SimplicialComplex, DEFAULT_GROUP_CAP};

use report::{meta_for, write_report, Report};

#[derive(Parser)]
#[command(name = "rlab", version, about = "spectra of simplicial complexes and building quotients")]
struct Cli {
    /// Omit wall-clock metadata so identical configs give identical reports.
    #[arg(long, global = true, default_value_t = true)]
    deterministic: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write generated complexes to a file.
    Generate {
        #[command(subcommand)]
        what: GenerateCmd,
    },
    /// Building-related generators.
    Building {
        #[command(subcommand)]
        what: BuildingCmd,
    },
    /// Quotient a complex by a group action read from a file.
    Quotient(QuotientArgs),
    /// Random permutation-voltage lift of a graph.
    Lift(LiftArgs),
    /// Spectrum computations and verdicts.
    Spec {
        #[command(subcommand)]
        what: SpecCmd,
    },
    /// Family scans.
    Scan {
        #[command(subcommand)]
        what: ScanCmd,
    },
}

#[derive(Subcommand)]
enum GenerateCmd {
    /// Cycle graph C_n.
    Cycle(CycleArgs),
    /// Complete graph K_n.
    Complete(CompleteArgs),
    /// Random k-regular graph (permutation model).
    Regular(RegularArgs),
    /// The Petersen graph.
    Petersen(OutOnly),
    /// K_{m,m,m} with transversal triangles, coloured with d = 3.
    Tripartite(TripartiteArgs),
    /// Two-step circulant triangle complex on Z/n, coloured when 3 | n.
    Circulant(CirculantArgs),
}

#[derive(Args)]
struct CycleArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct CompleteArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct RegularArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct OutOnly {
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct TripartiteArgs {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct CirculantArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Subcommand)]
enum BuildingCmd {
    /// Generate a radius-R ball of the building of PGL_d(F_q((t))).
    Ball(BallArgs),
}

#[derive(Args, Serialize)]
struct BallArgs {
    #[arg(long)]
    q: u32,
    #[arg(long)]
    d: u32,
    /// Division algebra degree; r > 1 only supported for d = 2 (tree model).
    #[arg(long, default_value_t = 1)]
    r: u32,
    #[arg(long)]
    radius: usize,
    #[arg(long, default_value_t = DEFAULT_VERTEX_BUDGET)]
    budget: usize,
    #[arg(long)]
    #[serde(skip)]
    out: PathBuf,
}

#[derive(Args)]
struct QuotientArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    action: PathBuf,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value_t = DEFAULT_GROUP_CAP)]
    group_cap: usize,
}

#[derive(Args)]
struct LiftArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    degree: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Subcommand)]
enum SpecCmd {
    /// Compute a spectrum and write it as a report (and optional CSV table).
    Compute(ComputeArgs),
    /// Classify a complex against a reference spectrum.
    Verdict(VerdictArgs),
}

#[derive(Args, Serialize)]
struct ComputeArgs {
    #[arg(long = "in")]
    #[serde(skip)]
    input: PathBuf,
    /// Operator: adjacency | edge-adjacency | laplacian | hecke.
    #[arg(long, default_value = "adjacency")]
    op: String,
    /// Dimension for adjacency/laplacian operators.
    #[arg(long, default_value_t = 0)]
    dim: usize,
    #[arg(long)]
    #[serde(skip)]
    out: Option<PathBuf>,
    /// Also write the spectral points as CSV.
    #[arg(long)]
    #[serde(skip)]
    csv: Option<PathBuf>,
    /// Export the (first) operator as MatrixMarket with a basis sidecar.
    #[arg(long)]
    #[serde(skip)]
    export_operator: Option<PathBuf>,
}

#[derive(Args, Serialize)]
struct VerdictArgs {
    #[arg(long = "in")]
    #[serde(skip)]
    input: PathBuf,
    /// Reference: tree:k=K | tree-edges:k=K | building:q=Q,d=D | set:FILE.
    #[arg(long = "ref")]
    reference: String,
    #[arg(long, default_value_t = 0)]
    dim: usize,
    /// Operator override; defaults to adjacency at dim 0, edge-adjacency at
    /// dim 1, and the Hecke family on coloured inputs.
    #[arg(long)]
    op: Option<String>,
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    #[arg(long)]
    #[serde(skip)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum ScanCmd {
    /// Covering-radius scan over an ordered family of complexes.
    Family(FamilyArgs),
}

#[derive(Args, Serialize)]
struct FamilyArgs {
    /// Comma-separated complex files, ordered by size.
    #[arg(long, value_delimiter = ',')]
    #[serde(skip)]
    inputs: Vec<PathBuf>,
    #[arg(long = "ref")]
    reference: String,
    #[arg(long, default_value_t = 512)]
    samples: usize,
    #[arg(long)]
    #[serde(skip)]
    out: Option<PathBuf>,
    #[arg(long)]
    #[serde(skip)]
    csv: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Ok(threads) = std::env::var("RLAB_THREADS") {
        if let Ok(n) = threads.trim().parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(classify_error(&e))
        }
    }
}

/// 2 for validation problems, 3 for numerical ones.
fn classify_error(e: &anyhow::Error) -> u8 {
    for cause in e.chain() {
        if let Some(se) = cause.downcast_ref::<SpectraError>() {
            return match se {
                SpectraError::NotCommuting { .. }
                | SpectraError::NotNormal { .. }
                | SpectraError::NumericalFailure(_) => 3,
                _ => 2,
            };
        }
    }
    2
}

fn run(cli: Cli) -> Result<()> {
    let det = cli.deterministic;
    match cli.command {
        Command::Generate { what } => run_generate(what),
        Command::Building { what } => match what {
            BuildingCmd::Ball(args) => run_ball(args),
        },
        Command::Quotient(args) => run_quotient(args),
        Command::Lift(args) => run_lift(args),
        Command::Spec { what } => match what {
            SpecCmd::Compute(args) => run_compute(args, det),
            SpecCmd::Verdict(args) => run_verdict(args, det),
        },
        Command::Scan { what } => match what {
            ScanCmd::Family(args) => run_family(args, det),
        },
    }
}

fn run_generate(cmd: GenerateCmd) -> Result<()> {
    match cmd {
        GenerateCmd::Cycle(a) => {
            if a.n < 3 {
                bail!("invalid parameters: cycles need n >= 3");
            }
            io::save_complex(&generate::cycle(a.n), &a.out)?;
        }
        GenerateCmd::Complete(a) => {
            if a.n < 2 {
                bail!("invalid parameters: complete graphs need n >= 2");
            }
            io::save_complex(&generate::complete_graph(a.n), &a.out)?;
        }
        GenerateCmd::Regular(a) => {
            let x = generate::random_regular(a.n, a.k, a.seed)
                .map_err(|e| anyhow!("invalid parameters: {e}"))?;
            io::save_complex(&x, &a.out)?;
        }
        GenerateCmd::Petersen(a) => io::save_complex(&generate::petersen(), &a.out)?,
        GenerateCmd::Tripartite(a) => {
            if a.m < 1 {
                bail!("invalid parameters: tripartite needs m >= 1");
            }
            io::save_colored_complex(&tripartite_colored(a.m), &a.out)?;
        }
        GenerateCmd::Circulant(a) => {
            if a.n < 7 || a.n % 3 != 0 {
                bail!("invalid parameters: circulant needs n >= 7 with 3 | n");
            }
            io::save_colored_complex(&circulant_colored(a.n), &a.out)?;
        }
    }
    Ok(())
}

fn run_ball(args: BallArgs) -> Result<()> {
    let params = LocalFieldParams::with_division_degree(args.q, args.d, args.r);
    let ball = building_ball(params, args.radius, args.budget)?;
    io::save_colored_complex(&ball.colored, &args.out)?;
    eprintln!(
        "ball: {} vertices ({} frontier), dim {}",
        ball.colored.complex.num_vertices(),
        ball.colored.complex.frontier().len(),
        ball.colored.complex.dim()
    );
    Ok(())
}

fn run_quotient(args: QuotientArgs) -> Result<()> {
    let action = io::load_group_action(&args.action)
        .with_context(|| format!("reading {}", args.action.display()))?;
    let file = io::read_complex_file(&args.input)?;
    if file.d.is_some() {
        let colored = io::colored_from_file(&file)?;
        let (q, _res) = colored.quotient_colored(&action, args.group_cap)?;
        io::save_colored_complex(&q, &args.out)?;
    } else {
        let x = rlab_core::build_complex(&file.maximal_cells)?;
        let q = quotient_by_action(&x, &action, args.group_cap)?;
        io::save_complex(&q.quotient, &args.out)?;
    }
    Ok(())
}

fn run_lift(args: LiftArgs) -> Result<()> {
    let x = io::load_complex(&args.input)?;
    let (lift, _proj) = random_lift(&x, args.degree, args.seed)?;
    io::save_complex(&lift, &args.out)?;
    Ok(())
}

/// The operator family selected on the command line, built on a loaded file.
fn build_family(
    file: &io::ComplexFile,
    op: &str,
    dim: usize,
) -> Result<(Vec<ChainOperator>, Option<Vec<u32>>, u32, SimplicialComplex)> {
    match op {
        "hecke" => {
            let colored = io::colored_from_file(file)?;
            let fam = colored.hecke_family()?;
            let d = colored.d;
            let colors = colored.vertex_colors.clone();
            Ok((fam.ops, Some(colors), d, colored.complex))
        }
        "adjacency" => {
            let complex = rlab_core::build_complex(&file.maximal_cells)?;
            let a = adjacency(&complex, dim, dim + 1)?;
            let part = file.vertex_colors.clone();
            let classes = file.d.unwrap_or(1);
            Ok((vec![a], part, classes, complex))
        }
        "edge-adjacency" => {
            let complex = rlab_core::build_complex(&file.maximal_cells)?;
            let a = edge_adjacency(&complex)?;
            Ok((vec![a], None, 1, complex))
        }
        "laplacian" => {
            let complex = rlab_core::build_complex(&file.maximal_cells)?;
            let l = laplacian(&complex, dim, LaplacianVariant::Total)?;
            Ok((vec![l], None, 1, complex))
        }
        other => {
            bail!("unknown operator {other:?} (use adjacency, edge-adjacency, laplacian, hecke)")
        }
    }
}

#[derive(Serialize)]
struct SpectrumOut {
    arity: usize,
    ambient_dim: usize,
    points: Vec<PointOut>,
}

#[derive(Serialize)]
struct PointOut {
    value: Vec<(f64, f64)>,
    multiplicity: usize,
}

fn spectrum_out(s: &SpectrumSet) -> SpectrumOut {
    SpectrumOut {
        arity: s.arity,
        ambient_dim: s.ambient_dim,
        points: s
            .points
            .iter()
            .map(|p| PointOut {
                value: p.value.iter().map(|z| (z.re, z.im)).collect(),
                multiplicity: p.multiplicity,
            })
            .collect(),
    }
}

fn spectrum_csv(s: &SpectrumSet, path: &Path) -> Result<()> {
    let mut text = String::new();
    for k in 0..s.arity {
        text.push_str(&format!("re_{k},im_{k},"));
    }
    text.push_str("multiplicity\n");
    for p in &s.points {
        for z in &p.value {
            text.push_str(&format!("{:.17e},{:.17e},", z.re, z.im));
        }
        text.push_str(&format!("{}\n", p.multiplicity));
    }
    std::fs::write(path, text)?;
    Ok(())
}

fn run_compute(args: ComputeArgs, det: bool) -> Result<()> {
    let file = io::read_complex_file(&args.input)?;
    let (ops, _part, _classes, complex) = build_family(&file, &args.op, args.dim)?;
    let refs: Vec<&ChainOperator> = ops.iter().collect();
    let mut warnings = Vec::new();
    if !complex.frontier().is_empty() {
        warnings.push("input is a generated ball: spectra are boundary-affected".into());
    }
    // non-commuting families fall back to per-operator spectra
    let spectra: Vec<SpectrumSet> = match joint_spectrum(&refs) {
        Ok(s) => vec![s],
        Err(SpectraError::NotCommuting { a, b, defect }) if refs.len() > 1 => {
            warnings.push(format!(
                "family does not commute (operators {a} and {b}, defect {defect:.3e}); \
                 reporting per-operator spectra"
            ));
            refs.iter()
                .map(|op| joint_spectrum(&[*op]))
                .collect::<Result<Vec<_>, _>>()?
        }
        Err(e) => return Err(e.into()),
    };
    if let Some(csv) = &args.csv {
        spectrum_csv(&spectra[0], csv)?;
    }
    if let Some(mtx) = &args.export_operator {
        io::save_operator(&ops[0], mtx)?;
    }
    let report = Report {
        meta: meta_for("spec compute", &args, det),
        result: spectra.iter().map(spectrum_out).collect::<Vec<_>>(),
        warnings,
    };
    write_report(&report, args.out.as_deref())?;
    Ok(())
}

fn parse_reference(spec: &str) -> Result<ReferenceSpectrum> {
    let (kind, rest) = spec.split_once(':').unwrap_or((spec, ""));
    let params: std::collections::HashMap<&str, &str> = rest
        .split(',')
        .filter(|s| !s.is_empty())
        .filter_map(|kv| kv.split_once('='))
        .collect();
    let get_u32 = |k: &str| -> Result<u32> {
        params
            .get(k)
            .ok_or_else(|| anyhow!("reference {spec:?} is missing {k}="))?
            .parse()
            .map_err(|e| anyhow!("bad {k} in {spec:?}: {e}"))
    };
    match kind {
        "tree" => Ok(ReferenceSpectrum::tree(get_u32("k")?)?),
        "tree-edges" => Ok(ReferenceSpectrum::tree_edges(get_u32("k")?)?),
        "building" => Ok(ReferenceSpectrum::building(
            get_u32("q")?,
            get_u32("d")?,
            TorusOpts::default(),
        )?),
        "set" => {
            let path = rest;
            #[derive(serde::Deserialize)]
            struct SetFile {
                points: Vec<Vec<(f64, f64)>>,
                #[serde(default)]
                empirical: bool,
            }
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading reference set {path}"))?;
            let f: SetFile = serde_json::from_str(&text)?;
            Ok(ReferenceSpectrum::ExplicitSet {
                points: f
                    .points
                    .into_iter()
                    .map(|p| p.into_iter().map(|(re, im)| Complex64::new(re, im)).collect())
                    .collect(),
                empirical: f.empirical,
            })
        }
        other => bail!("unknown reference kind {other:?} (use tree, tree-edges, building, set)"),
    }
}

#[derive(Serialize)]
struct VerdictOut {
    is_ramanujan: bool,
    tol: f64,
    reference_empirical: bool,
    trivial_scope: String,
    trivial_points: Vec<Vec<(f64, f64)>>,
    points: Vec<VerdictPointOut>,
}

#[derive(Serialize)]
struct VerdictPointOut {
    value: Vec<(f64, f64)>,
    multiplicity: usize,
    class: PointClass,
    distance: f64,
}

fn run_verdict(args: VerdictArgs, det: bool) -> Result<()> {
    let file = io::read_complex_file(&args.input)?;
    let default_op = if file.d.is_some() {
        "hecke"
    } else if args.dim == 0 {
        "adjacency"
    } else {
        "edge-adjacency"
    };
    let op = args.op.clone().unwrap_or_else(|| default_op.to_string());
    let (ops, part, classes, complex) = build_family(&file, &op, args.dim)?;
    let refs: Vec<&ChainOperator> = ops.iter().collect();
    let spectrum = joint_spectrum(&refs)?;
    let n = ops[0].nrows();
    let (partition, num_classes, scope) = match part {
        Some(p) if op == "hecke" || args.dim == 0 => {
            (p, classes as usize, format!("Z/{classes} colour classes"))
        }
        _ => (vec![0u32; n], 1, "trivial colouring (single class)".to_string()),
    };
    let mut warnings = Vec::new();
    let trivial: TrivialSpectrum = match trivial_spectrum(&refs, &partition, num_classes, &scope) {
        Ok(t) => t,
        Err(SpectraError::NotEquitable { from_class, to_class }) => {
            warnings.push(format!(
                "colour collapse inapplicable (classes {from_class} and {to_class} are not \
                 equitable); classifying against the reference alone"
            ));
            TrivialSpectrum {
                arity: spectrum.arity,
                points: Vec::new(),
                scope: "collapse inapplicable".into(),
            }
        }
        Err(e) => return Err(e.into()),
    };
    let reference = parse_reference(&args.reference)?;
    let verdict = ramanujan_verdict(&spectrum, &trivial, &reference, args.tol)?;
    if !complex.frontier().is_empty() {
        warnings.push("input is a generated ball: spectra are boundary-affected".into());
    }
    if verdict.reference_empirical {
        warnings.push("reference is an empirical point cloud, not a closed form".into());
    }
    let out = VerdictOut {
        is_ramanujan: verdict.is_ramanujan,
        tol: verdict.tol,
        reference_empirical: verdict.reference_empirical,
        trivial_scope: trivial.scope.clone(),
        trivial_points: trivial
            .points
            .iter()
            .map(|p| p.iter().map(|z| (z.re, z.im)).collect())
            .collect(),
        points: verdict
            .points
            .iter()
            .map(|p| VerdictPointOut {
                value: p.value.iter().map(|z| (z.re, z.im)).collect(),
                multiplicity: p.multiplicity,
                class: p.class,
                distance: p.distance,
            })
            .collect(),
    };
    let report = Report { meta: meta_for("spec verdict", &args, det), result: out, warnings };
    write_report(&report, args.out.as_deref())?;
    Ok(())
}

fn run_family(args: FamilyArgs, det: bool) -> Result<()> {
    if args.inputs.len() < 2 {
        bail!("family scans need at least two members");
    }
    let complexes: Vec<(String, SimplicialComplex)> = args
        .inputs
        .iter()
        .map(|p| -> Result<_> { Ok((p.display().to_string(), io::load_complex(p)?)) })
        .collect::<Result<_>>()?;
    let members: Vec<(String, &SimplicialComplex)> =
        complexes.iter().map(|(l, x)| (l.clone(), x)).collect();
    let reference = parse_reference(&args.reference)?;
    let scan =
        alon_boppana_scan(&members, OperatorKind::Adjacency(0, 1), &reference, args.samples)?;
    if let Some(csv) = &args.csv {
        let mut text = String::from("label,vertices,injectivity_radius,epsilon\n");
        for m in &scan.members {
            text.push_str(&format!(
                "{},{},{},{:.17e}\n",
                m.label, m.vertices, m.injectivity_radius, m.epsilon
            ));
        }
        std::fs::write(csv, text)?;
    }
    let report =
        Report { meta: meta_for("scan family", &args, det), result: scan, warnings: Vec::new() };
    write_report(&report, args.out.as_deref())?;
    Ok(())
}
