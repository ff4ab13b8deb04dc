//! Command-line front end for the Jacobian-ring pipeline.
//!
//! Subcommands mirror the pipeline stages; `all` chains them and writes a
//! combined JSON report. Every numeric artifact is deterministic for a
//! fixed (mode, lambda/seed, field) triple; wall-clock timings go to
//! stderr only, so report files are byte-reproducible.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use sha2::{Digest, Sha256};

use jacring::charvar::{
    charvar_dimension_genus, charvar_first, charvar_second, CharOrder, CharVariety,
};
use jacring::cohomology::{build_jacobian_ring, compute_graded_basis, GradedBasis, JacobianRing};
use jacring::higgs::compute_theta_matrices;
use jacring::matrixgen::{
    check_nondegenerate, generate_matrix, CoeffMatrix, GenConfig, GenMode, MatrixFile,
};
use jacring::poly::TermJson;
use jacring::scalar::{ExactScalar, FieldConfig};
use jacring::symmetric::{run_plethysm, PlethysmReport};

const DEFAULT_INVARIANTS_MODULUS: u64 = 32003;

#[derive(Parser)]
#[command(
    name = "jacring",
    about = "Exact pipeline from a 4x8 coefficient matrix to the symmetric-square dimension check",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,

    /// Worker threads for the parallel scans (env: JACRING_THREADS)
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Output directory for stage artifacts
    #[arg(long, global = true, default_value = ".")]
    outdir: PathBuf,
}

#[derive(Args, Clone)]
struct MatrixArgs {
    /// Read the coefficient matrix from a JSON file written by gen-matrix
    #[arg(long, conflicts_with_all = ["hyperelliptic", "random"])]
    matrix: Option<PathBuf>,

    /// Vandermonde matrix from eight lambda values
    #[arg(long)]
    hyperelliptic: bool,

    /// Uniformly random entries, rejection-sampled to admissibility
    #[arg(long, conflicts_with = "hyperelliptic")]
    random: bool,

    /// Comma-separated lambda values for --hyperelliptic
    #[arg(long, value_delimiter = ',')]
    lambda: Option<Vec<String>>,

    /// RNG seed for the random modes
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Sampling range for random entries / lambdas
    #[arg(long, default_value_t = 10)]
    randrange: u64,

    /// Base field: "rational" or "gfp" (env: JACRING_FIELD)
    #[arg(long)]
    field: Option<String>,

    /// Prime modulus for --field gfp (env: JACRING_MODULUS)
    #[arg(long)]
    modulus: Option<u64>,

    /// Re-run the 70-minor admissibility check on a loaded matrix
    #[arg(long)]
    check_user_matrix: bool,
}

#[derive(Args, Clone)]
struct InvariantArgs {
    /// Also compute dimension and arithmetic genus of the subvariety
    #[arg(long)]
    invariants: bool,

    /// Field for the dimension/genus Groebner pass: "rational" or "gfp"
    #[arg(long, default_value = "gfp")]
    invariants_field: String,

    /// Prime modulus for the invariants pass
    #[arg(long, default_value_t = DEFAULT_INVARIANTS_MODULUS)]
    invariants_modulus: u64,
}

#[derive(Subcommand)]
enum Cmd {
    /// Produce an admissible 4x8 coefficient matrix
    GenMatrix(MatrixArgs),
    /// Groebner basis of the Jacobian ideal and the 20-element graded basis
    Cohomology {
        #[command(flatten)]
        matrix: MatrixArgs,
        /// Verify the hardcoded top class independently
        #[arg(long)]
        compute_top: bool,
        /// Also write the reduced Groebner basis
        #[arg(long)]
        dump_gb: bool,
    },
    /// The nine 20x20 multiplication matrices
    Higgs {
        #[command(flatten)]
        matrix: MatrixArgs,
    },
    /// Nine quadric equations of the first characteristic subvariety
    Charvar1 {
        #[command(flatten)]
        matrix: MatrixArgs,
        #[command(flatten)]
        inv: InvariantArgs,
    },
    /// Cubic equation of the second characteristic subvariety
    Charvar2 {
        #[command(flatten)]
        matrix: MatrixArgs,
        #[command(flatten)]
        inv: InvariantArgs,
    },
    /// Iterated images in the symmetric square and the dimension verdict
    Plethysm {
        #[command(flatten)]
        matrix: MatrixArgs,
    },
    /// Full pipeline with a combined report
    All {
        #[command(flatten)]
        matrix: MatrixArgs,
        #[arg(long)]
        compute_top: bool,
        #[arg(long)]
        dump_gb: bool,
        #[command(flatten)]
        inv: InvariantArgs,
    },
}

/// Usage/configuration problems exit 1; mathematical assertion failures
/// (wrong dimensions, degenerate matrices, grading violations) exit 2.
enum CliError {
    Usage(String),
    Assertion(String),
}

impl CliError {
    fn usage(stage: &str, msg: impl std::fmt::Display) -> CliError {
        CliError::Usage(format!("stage {stage}: {msg}"))
    }

    fn assertion(stage: &str, msg: impl std::fmt::Display) -> CliError {
        CliError::Assertion(format!("stage {stage}: {msg}"))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // clap's own help/version output is a success, not a usage error
            if e.use_stderr() {
                eprintln!("{e}");
                return ExitCode::from(1);
            }
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(CliError::Assertion(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}

fn env_u64(name: &str) -> Result<Option<u64>, CliError> {
    match std::env::var(name) {
        Ok(v) => v
            .parse()
            .map(Some)
            .map_err(|_| CliError::Usage(format!("{name} must be an integer, got {v:?}"))),
        Err(_) => Ok(None),
    }
}

fn resolve_field(args: &MatrixArgs) -> Result<FieldConfig, CliError> {
    let name = match &args.field {
        Some(f) => f.clone(),
        None => std::env::var("JACRING_FIELD").unwrap_or_else(|_| "rational".into()),
    };
    match name.as_str() {
        "rational" => Ok(FieldConfig::Rationals),
        "gfp" => {
            let modulus = match args.modulus {
                Some(p) => p,
                None => env_u64("JACRING_MODULUS")?
                    .ok_or_else(|| CliError::Usage("--field gfp requires --modulus".into()))?,
            };
            FieldConfig::prime_field(modulus).map_err(|e| CliError::usage("gen-matrix", e))
        }
        other => Err(CliError::Usage(format!(
            "unknown field {other:?}; use \"rational\" or \"gfp\""
        ))),
    }
}

fn obtain_matrix(args: &MatrixArgs) -> Result<CoeffMatrix, CliError> {
    const STAGE: &str = "gen-matrix";
    if let Some(path) = &args.matrix {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::usage(STAGE, format!("cannot read {}: {e}", path.display())))?;
        let file: MatrixFile =
            serde_json::from_str(&text).map_err(|e| CliError::usage(STAGE, e))?;
        let m = CoeffMatrix::from_file(&file).map_err(|e| CliError::usage(STAGE, e))?;
        if args.check_user_matrix {
            if let Some(cols) = check_nondegenerate(m.entries()) {
                return Err(CliError::assertion(
                    STAGE,
                    format!("matrix is degenerate: 4x4 minor on columns {cols:?} vanishes"),
                ));
            }
        }
        return Ok(m);
    }
    let field = resolve_field(args)?;
    if args.hyperelliptic {
        let mut cfg = GenConfig::new(GenMode::Hyperelliptic, field);
        cfg.rng_seed = args.seed;
        cfg.randrange = args.randrange;
        let lambda = match &args.lambda {
            None => None,
            Some(vals) => Some(
                vals.iter()
                    .map(|s| ExactScalar::parse(s, field))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| CliError::usage(STAGE, e))?,
            ),
        };
        return generate_matrix(&cfg, None, lambda)
            .map_err(|e| CliError::assertion(STAGE, e));
    }
    if args.random {
        let mut cfg = GenConfig::new(GenMode::Random, field);
        cfg.rng_seed = args.seed;
        cfg.randrange = args.randrange;
        return generate_matrix(&cfg, None, None).map_err(|e| CliError::assertion(STAGE, e));
    }
    Err(CliError::Usage(
        "no matrix source: pass --matrix FILE, --hyperelliptic or --random".into(),
    ))
}

fn write_json<T: Serialize>(dir: &Path, name: &str, value: &T) -> Result<(), CliError> {
    std::fs::create_dir_all(dir)
        .map_err(|e| CliError::Usage(format!("cannot create {}: {e}", dir.display())))?;
    let path = dir.join(name);
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Usage(format!("serialization: {e}")))?;
    text.push('\n');
    std::fs::write(&path, text)
        .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?;
    eprintln!("wrote {}", path.display());
    Ok(())
}

fn write_text(dir: &Path, name: &str, text: &str) -> Result<(), CliError> {
    std::fs::create_dir_all(dir)
        .map_err(|e| CliError::Usage(format!("cannot create {}: {e}", dir.display())))?;
    let path = dir.join(name);
    std::fs::write(&path, text)
        .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?;
    eprintln!("wrote {}", path.display());
    Ok(())
}

struct Timer(&'static str, Instant);

impl Timer {
    fn start(stage: &'static str) -> Timer {
        Timer(stage, Instant::now())
    }
}

impl Drop for Timer {
    fn drop(&mut self) {
        eprintln!("stage {}: {:.3}s", self.0, self.1.elapsed().as_secs_f64());
    }
}

struct Pipeline {
    matrix: CoeffMatrix,
    jr: JacobianRing,
    basis: GradedBasis,
}

fn build_pipeline(args: &MatrixArgs, compute_top: bool) -> Result<Pipeline, CliError> {
    let matrix = obtain_matrix(args)?;
    let jr = {
        let _t = Timer::start("cohomology/groebner");
        build_jacobian_ring(&matrix, matrix.field())
            .map_err(|e| CliError::assertion("cohomology", e))?
    };
    let basis = {
        let _t = Timer::start("cohomology/basis-scan");
        compute_graded_basis(&jr, compute_top)
            .map_err(|e| CliError::assertion("cohomology", e))?
    };
    Ok(Pipeline { matrix, jr, basis })
}

#[derive(Serialize)]
struct GbFile {
    varnames: Vec<String>,
    size: usize,
    basis: Vec<Vec<TermJson>>,
}

fn gb_file(jr: &JacobianRing) -> GbFile {
    GbFile {
        varnames: jr.ring().varnames().to_vec(),
        size: jr.ideal().reduced_basis().len(),
        basis: jr
            .ideal()
            .reduced_basis()
            .iter()
            .map(|f| f.to_json_terms())
            .collect(),
    }
}

#[derive(Serialize)]
struct ThetaFile {
    count: usize,
    mats: Vec<jacring::exactla::MatrixJson>,
}

/// Nonzero-block occupancy of the nine matrices, as text. Rows and
/// columns are grouped by the graded blocks 1 | 2-10 | 11-19 | 20; each
/// matrix only maps block p into block p+1.
fn theta_block_report(thetas: &jacring::higgs::ThetaMatrices, basis: &GradedBasis) -> String {
    let bounds = basis.offsets();
    let block_of = |k: usize| (0..4).rfind(|&b| k >= bounds[b]).unwrap();
    let mut out = String::new();
    out.push_str("block structure of the multiplication matrices\n");
    out.push_str("blocks: R0 = {1}, R1 = {2..10}, R2 = {11..19}, R3 = {20}\n\n");
    for (j, m) in thetas.mats().iter().enumerate() {
        let mut counts = [[0usize; 4]; 4];
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                if !m.get(r, c).is_zero() {
                    counts[block_of(r)][block_of(c)] += 1;
                }
            }
        }
        out.push_str(&format!("theta_{} nonzero entries per block:\n", j + 1));
        for (p, row) in counts.iter().enumerate() {
            out.push_str(&format!(
                "  R{} -> [{}]\n",
                p,
                row.iter()
                    .map(|n| n.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            ));
        }
    }
    out
}

#[derive(Serialize)]
struct PlethysmDims {
    #[serde(rename = "U51")]
    u51: usize,
    #[serde(rename = "U42")]
    u42: usize,
    #[serde(rename = "U33")]
    u33: usize,
}

#[derive(Serialize)]
struct PlethysmFile {
    field: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    modulus: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lambda: Option<Vec<String>>,
    dims: PlethysmDims,
    bound: usize,
    modular_consistent: bool,
}

fn plethysm_file(matrix: &CoeffMatrix, r: &PlethysmReport) -> PlethysmFile {
    let mf = matrix.to_file();
    PlethysmFile {
        field: mf.field,
        modulus: mf.modulus,
        seed: mf.seed,
        lambda: mf.lambda,
        dims: PlethysmDims {
            u51: r.dim_u51,
            u42: r.dim_u42,
            u33: r.dim_u33,
        },
        bound: r.bound,
        modular_consistent: r.modular_consistent,
    }
}

#[derive(Serialize)]
struct CharVarInvariants {
    field: String,
    dimension: i64,
    genus: String,
}

#[derive(Serialize)]
struct CharVarReport {
    equations_sha256: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    invariants: Option<CharVarInvariants>,
}

#[derive(Serialize)]
struct Report {
    field: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    modulus: Option<u64>,
    mode: GenMode,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lambda: Option<Vec<String>>,
    matrix: Vec<Vec<String>>,
    gb_size: usize,
    dims: [usize; 4],
    total_dim: usize,
    top_class_checked: bool,
    charvar: BTreeMap<String, CharVarReport>,
    plethysm: PlethysmReport,
}

fn sha256_hex(bytes: &[u8]) -> String {
    let mut h = Sha256::new();
    h.update(bytes);
    format!("{:x}", h.finalize())
}

fn equations_digest(v: &CharVariety) -> Result<String, CliError> {
    let text = serde_json::to_string(&v.to_file())
        .map_err(|e| CliError::Usage(format!("serialization: {e}")))?;
    Ok(sha256_hex(text.as_bytes()))
}

/// Dimension/genus with the Groebner pass optionally re-run over a large
/// prime field; over Q the 9-quadric basis is expensive for no gain.
fn invariants_for(
    order: CharOrder,
    p: &Pipeline,
    inv: &InvariantArgs,
) -> Result<CharVarInvariants, CliError> {
    let stage = match order {
        CharOrder::First => "charvar1",
        CharOrder::Second => "charvar2",
    };
    let field = match inv.invariants_field.as_str() {
        "rational" => FieldConfig::Rationals,
        "gfp" => FieldConfig::prime_field(inv.invariants_modulus)
            .map_err(|e| CliError::usage(stage, e))?,
        other => {
            return Err(CliError::usage(
                stage,
                format!("unknown invariants field {other:?}"),
            ))
        }
    };
    let _t = Timer::start("charvar/invariants");
    let v = if field == p.matrix.field() {
        match order {
            CharOrder::First => charvar_first(&p.jr, &p.basis),
            CharOrder::Second => charvar_second(&p.jr, &p.basis),
        }
        .map_err(|e| CliError::assertion(stage, e))?
    } else {
        let m = p
            .matrix
            .to_field(field)
            .map_err(|e| CliError::usage(stage, e))?;
        let jr = build_jacobian_ring(&m, field).map_err(|e| CliError::assertion(stage, e))?;
        let basis =
            compute_graded_basis(&jr, false).map_err(|e| CliError::assertion(stage, e))?;
        match order {
            CharOrder::First => charvar_first(&jr, &basis),
            CharOrder::Second => charvar_second(&jr, &basis),
        }
        .map_err(|e| CliError::assertion(stage, e))?
    };
    let (dimension, genus) =
        charvar_dimension_genus(&v).map_err(|e| CliError::assertion(stage, e))?;
    Ok(CharVarInvariants {
        field: match field {
            FieldConfig::Rationals => "rational".into(),
            FieldConfig::PrimeField(q) => format!("gfp({q})"),
        },
        dimension,
        genus: genus.to_string(),
    })
}

fn run(cli: Cli) -> Result<(), CliError> {
    let threads = match cli.threads {
        Some(t) => t,
        None => env_u64("JACRING_THREADS")?.unwrap_or(1) as usize,
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build_global()
        .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
    let dir = cli.outdir.clone();

    match cli.cmd {
        Cmd::GenMatrix(args) => {
            let m = obtain_matrix(&args)?;
            if let Some(cols) = check_nondegenerate(m.entries()) {
                return Err(CliError::assertion(
                    "gen-matrix",
                    format!("matrix is degenerate: 4x4 minor on columns {cols:?} vanishes"),
                ));
            }
            write_json(&dir, "matrix.json", &m.to_file())
        }
        Cmd::Cohomology {
            matrix,
            compute_top,
            dump_gb,
        } => {
            let p = build_pipeline(&matrix, compute_top)?;
            write_json(&dir, "matrix.json", &p.matrix.to_file())?;
            if dump_gb {
                write_json(&dir, "gb.json", &gb_file(&p.jr))?;
            }
            write_json(&dir, "basis.json", &p.basis.to_file())
        }
        Cmd::Higgs { matrix } => {
            let p = build_pipeline(&matrix, false)?;
            let thetas = {
                let _t = Timer::start("higgs");
                compute_theta_matrices(&p.jr, &p.basis)
                    .map_err(|e| CliError::assertion("higgs", e))?
            };
            write_json(
                &dir,
                "theta.json",
                &ThetaFile {
                    count: thetas.count(),
                    mats: thetas.mats().iter().map(|m| m.to_json()).collect(),
                },
            )?;
            write_text(&dir, "theta_blocks.txt", &theta_block_report(&thetas, &p.basis))
        }
        Cmd::Charvar1 { matrix, inv } => {
            let p = build_pipeline(&matrix, false)?;
            let v = {
                let _t = Timer::start("charvar1");
                charvar_first(&p.jr, &p.basis).map_err(|e| CliError::assertion("charvar1", e))?
            };
            write_json(&dir, "charvar1.json", &v.to_file())?;
            if inv.invariants {
                let i = invariants_for(CharOrder::First, &p, &inv)?;
                write_json(&dir, "charvar1_invariants.json", &i)?;
            }
            Ok(())
        }
        Cmd::Charvar2 { matrix, inv } => {
            let p = build_pipeline(&matrix, false)?;
            let v = {
                let _t = Timer::start("charvar2");
                charvar_second(&p.jr, &p.basis)
                    .map_err(|e| CliError::assertion("charvar2", e))?
            };
            write_json(&dir, "charvar2.json", &v.to_file())?;
            if inv.invariants {
                let i = invariants_for(CharOrder::Second, &p, &inv)?;
                write_json(&dir, "charvar2_invariants.json", &i)?;
            }
            Ok(())
        }
        Cmd::Plethysm { matrix } => {
            let p = build_pipeline(&matrix, false)?;
            let thetas = compute_theta_matrices(&p.jr, &p.basis)
                .map_err(|e| CliError::assertion("higgs", e))?;
            let report = {
                let _t = Timer::start("plethysm");
                run_plethysm(&thetas).map_err(|e| CliError::assertion("plethysm", e))?
            };
            write_json(&dir, "plethysm.json", &plethysm_file(&p.matrix, &report))
        }
        Cmd::All {
            matrix,
            compute_top,
            dump_gb,
            inv,
        } => {
            let p = build_pipeline(&matrix, compute_top)?;
            write_json(&dir, "matrix.json", &p.matrix.to_file())?;
            if dump_gb {
                write_json(&dir, "gb.json", &gb_file(&p.jr))?;
            }
            write_json(&dir, "basis.json", &p.basis.to_file())?;

            let thetas = {
                let _t = Timer::start("higgs");
                compute_theta_matrices(&p.jr, &p.basis)
                    .map_err(|e| CliError::assertion("higgs", e))?
            };
            write_json(
                &dir,
                "theta.json",
                &ThetaFile {
                    count: thetas.count(),
                    mats: thetas.mats().iter().map(|m| m.to_json()).collect(),
                },
            )?;
            write_text(&dir, "theta_blocks.txt", &theta_block_report(&thetas, &p.basis))?;

            let v1 = {
                let _t = Timer::start("charvar1");
                charvar_first(&p.jr, &p.basis).map_err(|e| CliError::assertion("charvar1", e))?
            };
            write_json(&dir, "charvar1.json", &v1.to_file())?;
            let v2 = {
                let _t = Timer::start("charvar2");
                charvar_second(&p.jr, &p.basis)
                    .map_err(|e| CliError::assertion("charvar2", e))?
            };
            write_json(&dir, "charvar2.json", &v2.to_file())?;

            let mut charvar = BTreeMap::new();
            charvar.insert(
                "first".to_string(),
                CharVarReport {
                    equations_sha256: equations_digest(&v1)?,
                    invariants: if inv.invariants {
                        Some(invariants_for(CharOrder::First, &p, &inv)?)
                    } else {
                        None
                    },
                },
            );
            charvar.insert(
                "second".to_string(),
                CharVarReport {
                    equations_sha256: equations_digest(&v2)?,
                    invariants: if inv.invariants {
                        Some(invariants_for(CharOrder::Second, &p, &inv)?)
                    } else {
                        None
                    },
                },
            );

            let plethysm = {
                let _t = Timer::start("plethysm");
                run_plethysm(&thetas).map_err(|e| CliError::assertion("plethysm", e))?
            };
            write_json(&dir, "plethysm.json", &plethysm_file(&p.matrix, &plethysm))?;

            let mf = p.matrix.to_file();
            let report = Report {
                field: mf.field.clone(),
                modulus: mf.modulus,
                mode: mf.mode,
                seed: mf.seed,
                lambda: mf.lambda.clone(),
                matrix: mf.entries.clone(),
                gb_size: p.jr.ideal().reduced_basis().len(),
                dims: p.basis.dims(),
                total_dim: p.basis.total_dim(),
                top_class_checked: compute_top,
                charvar,
                plethysm,
            };
            write_json(&dir, "report.json", &report)
        }
    }
}
