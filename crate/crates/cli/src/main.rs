use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use salmon_core::algebra::{Dims, Tensor3, TensorFile};
use salmon_core::determinantal::strassen_poly;
use salmon_core::geometry::{
    ideal_scan, sample_secant, sample_subspace, subspace_dim, terracini_dim, ScanOptions,
};
use salmon_core::membership::{border_rank_le4_test, friedland_point, Mode, TestOptions, DEFAULT_TRIALS};
use salmon_core::rep::{isotypic_decomposition, weyl_dimension, Partition};
use salmon_core::schur::modules::{m5_bases, m6_basis, m6_triple, m9_basis};
use salmon_core::schur::{bases_to_file, module_dimension, ModuleBasis, Provenance};
use salmon_core::Error;

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(name = "salmon", version, about = "Equations and membership tests for border rank at most 4")]
struct Cli {
    /// Seed for every randomized step; recorded in the output.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Worker threads (defaults to the available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = ModeArg::Exact)]
    mode: ModeArg,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exact,
    Numeric,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModuleArg {
    #[value(name = "M5")]
    M5,
    #[value(name = "M6")]
    M6,
    #[value(name = "M9")]
    M9,
    #[value(name = "strassen")]
    Strassen,
}

#[derive(Subcommand)]
enum Command {
    /// Write a module basis in the polynomial text format.
    Gen {
        #[arg(long, value_enum)]
        module: ModuleArg,
        #[arg(long)]
        dims: Dims,
    },
    /// Run the border rank 4 test on a tensor and print the report as JSON.
    Test {
        /// Tensor JSON file.
        #[arg(long, conflicts_with = "friedland", required_unless_present = "friedland")]
        input: Option<PathBuf>,
        /// Use the built-in 3,3,4 point of Friedland.
        #[arg(long)]
        friedland: bool,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: usize,
    },
    /// Write a random tensor as JSON.
    Sample(SampleArgs),
    /// Evaluate the highest weight spaces of a degree on random secant points.
    Scan {
        #[arg(long)]
        degree: u32,
        #[arg(long)]
        dims: Dims,
        #[arg(long, default_value_t = 40)]
        samples: usize,
        /// Rank of the sample points.
        #[arg(long, default_value_t = 4)]
        secant_rank: usize,
        #[arg(long)]
        allow_high_degree: bool,
    },
    /// Dimension queries.
    Dims(DimsArgs),
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct SampleKind {
    /// Sum of this many random rank-one tensors.
    #[arg(long)]
    secant: Option<usize>,
    /// Random point of the subspace variety with these dimensions.
    #[arg(long)]
    subspace: Option<Dims>,
}

#[derive(Args)]
struct SampleArgs {
    #[command(flatten)]
    kind: SampleKind,
    #[arg(long)]
    dims: Dims,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct DimsKind {
    /// Weyl dimension of a Schur module; needs --n.
    #[arg(long, requires = "n")]
    schur: Option<Partition>,
    /// Projective dimension of the r-th secant variety by Terracini; needs --dims.
    #[arg(long, requires = "dims")]
    terracini: Option<usize>,
    /// Projective dimension of a subspace variety; needs --dims.
    #[arg(long, requires = "dims")]
    subspace: Option<Dims>,
    /// Dimension of a named module; needs --dims.
    #[arg(long, value_enum, requires = "dims")]
    module: Option<ModuleArg>,
    /// Isotypic decomposition of this degree; needs --dims.
    #[arg(long, requires = "dims")]
    isotypic: Option<u32>,
}

#[derive(Args)]
struct DimsArgs {
    #[command(flatten)]
    kind: DimsKind,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    dims: Option<Dims>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            let contract = e
                .chain()
                .any(|c| matches!(c.downcast_ref::<Error>(), Some(Error::Contract(_))));
            ExitCode::from(if contract { 4 } else { 3 })
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<()> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("configuring the thread pool")?;
    }
    let text = match cli.command {
        Command::Gen { module, dims } => cmd_gen(module, dims)?,
        Command::Test {
            input,
            friedland,
            trials,
        } => {
            let t = if friedland {
                friedland_point()
            } else {
                let path = input.expect("clap requires --input without --friedland");
                read_tensor(&path)?
            };
            let opts = TestOptions {
                trials,
                seed: cli.seed,
                mode: match cli.mode {
                    ModeArg::Exact => Mode::Exact,
                    ModeArg::Numeric => Mode::Numeric,
                },
            };
            border_rank_le4_test(&t, &opts)?.to_json() + "\n"
        }
        Command::Sample(args) => cmd_sample(args, cli.seed)?,
        Command::Scan {
            degree,
            dims,
            samples,
            secant_rank,
            allow_high_degree,
        } => {
            let opts = ScanOptions {
                samples,
                secant_rank,
                allow_high_degree,
            };
            let result = ideal_scan(degree, dims, opts, cli.seed)?;
            let mut v = serde_json::to_value(&result)?;
            v["dims"] = json!(dims.as_array());
            v["version"] = json!(VERSION);
            v["notes"] = json!([
                "a vanishing verdict means the evaluation matrix has a kernel at every sample; it is evidence consistent with ideal membership, not a symbolic ideal computation"
            ]);
            serde_json::to_string_pretty(&v)? + "\n"
        }
        Command::Dims(args) => cmd_dims(args, cli.seed)?,
    };
    match cli.out {
        Some(path) => fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?,
        None => {
            let mut out = io::stdout().lock();
            match out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
                Err(e) if e.kind() == io::ErrorKind::BrokenPipe => {}
                r => r.context("writing to standard output")?,
            }
        }
    }
    Ok(())
}

fn read_tensor(path: &PathBuf) -> anyhow::Result<Tensor3> {
    let s = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let file: TensorFile = serde_json::from_str(&s).map_err(Error::from)?;
    Ok(Tensor3::from_file(&file)?)
}

fn cmd_gen(module: ModuleArg, dims: Dims) -> anyhow::Result<String> {
    let mut notes = vec![format!("generated by salmon {VERSION}")];
    let (name, degree, bases) = match module {
        ModuleArg::M6 => ("M6", 6, vec![m6_basis(dims)?]),
        ModuleArg::M5 => ("M5", 5, m5_bases(dims)?),
        ModuleArg::M9 => ("M9", 9, vec![m9_basis(dims)?]),
        ModuleArg::Strassen => {
            if dims != Dims::new(3, 3, 3) {
                bail!(Error::DimensionMismatch(format!(
                    "the Strassen polynomial lives on 3,3,3, not {dims}"
                )));
            }
            let p333 = Partition::of(&[3, 3, 3]);
            let basis = ModuleBasis {
                triple: [p333.clone(), p333.clone(), p333],
                dims,
                polys: vec![strassen_poly()],
                provenance: vec![Provenance {
                    fillings: ["(3,3,3):[1,1,1;2,2,2;3,3,3]"; 3].join("|"),
                    via: "det-psi".into(),
                }],
            };
            ("strassen", 9, vec![basis])
        }
    };
    if bases.iter().all(ModuleBasis::is_empty) {
        notes.push(format!(
            "{name} is zero at {dims}: a partition has more parts than its factor dimension"
        ));
    }
    Ok(bases_to_file(name, dims, degree, &bases, notes).to_text())
}

fn cmd_sample(args: SampleArgs, seed: u64) -> anyhow::Result<String> {
    let (tensor, meta) = match (args.kind.secant, args.kind.subspace) {
        (Some(r), None) => (
            sample_secant(r, args.dims, seed)?.tensor,
            json!({"kind": "secant", "r": r}),
        ),
        (None, Some(target)) => (
            sample_subspace(target, args.dims, seed)?.tensor,
            json!({"kind": "subspace", "target": target.as_array()}),
        ),
        _ => return Err(anyhow!("exactly one of --secant and --subspace is required")),
    };
    let mut file = tensor.to_file();
    let mut meta = meta;
    meta["seed"] = json!(seed);
    meta["version"] = json!(VERSION);
    file.meta = Some(meta);
    Ok(serde_json::to_string_pretty(&file)? + "\n")
}

fn cmd_dims(args: DimsArgs, seed: u64) -> anyhow::Result<String> {
    let k = args.kind;
    let dims = || args.dims.expect("clap requires --dims");
    let value: Value = if let Some(p) = k.schur {
        json!(weyl_dimension(&p, args.n.expect("clap requires --n")))
    } else if let Some(r) = k.terracini {
        json!(terracini_dim(r, dims(), seed)?)
    } else if let Some(t) = k.subspace {
        json!(subspace_dim(t, dims())?)
    } else if let Some(m) = k.module {
        let d = dims();
        match m {
            ModuleArg::M6 => json!(module_dimension(&m6_triple(), d)),
            ModuleArg::M5 => {
                let total: u64 = salmon_core::algebra::Factor::ALL
                    .iter()
                    .map(|&f| module_dimension(&salmon_core::schur::modules::m5_triple(f), d))
                    .sum();
                json!(total)
            }
            ModuleArg::M9 | ModuleArg::Strassen => {
                let p = Partition::of(&[3, 3, 3]);
                json!(module_dimension(&[p.clone(), p.clone(), p], d))
            }
        }
    } else if let Some(deg) = k.isotypic {
        serde_json::to_value(isotypic_decomposition(deg, dims())?)?
    } else {
        unreachable!("clap requires one query")
    };
    Ok(match value {
        Value::Number(n) => format!("{n}\n"),
        v => serde_json::to_string_pretty(&v)? + "\n",
    })
}
