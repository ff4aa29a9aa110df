use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use ocf_core::decompose::{balanced_decompose, max_discrepancy, Strictness};
use ocf_core::exact::{exact_index_with_witness, kn_lower_bound_check, ExactLimits};
use ocf_core::formats;
use ocf_core::pipeline::{Mode, Overrides};
use ocf_core::randgraph::{experiment_run, gnp, write_csv, ExperimentConfig};
use ocf_core::solve::{color_graph, ColorOptions};
use ocf_core::verify::{colors_used, is_proper, unsatisfied_edges};
use ocf_core::{Error, Graph};

/// Open conflict-free edge colourings: construct, verify, search exactly.
#[derive(Parser)]
#[command(name = "ocf", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Colour a graph with the two-stage construction and a completion.
    Color(ColorArgs),
    /// Check a colouring against a graph.
    Verify {
        graph: PathBuf,
        coloring: PathBuf,
        /// Also require a proper colouring.
        #[arg(long)]
        proper: bool,
    },
    /// Least number of colours, by exhaustive search.
    Exact {
        graph: PathBuf,
        #[arg(long)]
        proper: bool,
        /// Write a minimum colouring here.
        #[arg(long)]
        witness: Option<PathBuf>,
        /// Edge limit for the search [default: 16, or 12 with --proper].
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Balanced decomposition of the edges into k classes.
    Decompose {
        graph: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the decomposition here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a random graph.
    Gen {
        #[command(subcommand)]
        model: GenModel,
    },
    /// Run a batch over G(n, p) and write CSV. OCF_THREADS caps the workers.
    Experiment {
        config: PathBuf,
        /// Write results.csv and per-row graphs and colourings here;
        /// otherwise the CSV goes to standard output.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Compare the exact index of K_n with log2 n - log2 log2 n - 1.
    KnBound {
        #[arg(long)]
        n: usize,
        /// Edge limit for the search [default: 16].
        #[arg(long)]
        cap: Option<usize>,
    },
}

#[derive(Subcommand)]
enum GenModel {
    /// Every pair independently with probability p.
    Gnp {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct ColorArgs {
    graph: PathBuf,
    /// Finish with a proper completion instead of a single extra colour.
    #[arg(long)]
    proper: bool,
    #[arg(long, default_value = "practical", value_parser = ["strict", "practical"])]
    mode: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the colouring here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write stage-one diagnostics here.
    #[arg(long)]
    dump: Option<PathBuf>,
    /// Classes in the first split (practical mode).
    #[arg(long)]
    k: Option<usize>,
    /// Rounds (practical mode).
    #[arg(long)]
    s: Option<usize>,
    /// Multiplier on sqrt(Δ_i) ln Δ_i (practical mode).
    #[arg(long)]
    eps_scale: Option<f64>,
    /// Event threshold relaxation, 0 for none (practical mode) [default: 1].
    #[arg(long)]
    thresholds_scale: Option<f64>,
    /// Maximum event resamplings [default: 1000 |V|].
    #[arg(long)]
    resample_cap: Option<usize>,
    /// Stage-two palette size (practical mode).
    #[arg(long)]
    stage2_colors: Option<usize>,
    /// Stage-two global retries [default: 200].
    #[arg(long)]
    stage2_retries: Option<usize>,
}

/// Input and usage problems exit with 2, everything else with 1.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. }
        | Error::Loop(_)
        | Error::VertexOutOfRange { .. }
        | Error::DuplicateEdge(_)
        | Error::NotAnEdge(_)
        | Error::ColoringMismatch(_)
        | Error::PaletteClash { .. }
        | Error::CapExceeded { .. }
        | Error::InvalidArgument(_)
        | Error::Io(_)
        | Error::Json(_)
        | Error::Csv(_) => 2,
        _ => 1,
    }
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Error> {
    match out {
        Some(p) => Ok(std::fs::write(p, text)?),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn color(a: ColorArgs) -> Result<ExitCode, Error> {
    let graph = formats::read_edge_list_file(&a.graph)?;
    let options = ColorOptions {
        mode: a.mode.parse()?,
        overrides: Overrides {
            k: a.k,
            s: a.s,
            eps_scale: a.eps_scale,
            thresholds_scale: a.thresholds_scale,
            resample_cap: a.resample_cap,
            stage2_colors: a.stage2_colors,
            stage2_retries: a.stage2_retries,
        },
        seed: a.seed,
        proper: a.proper,
    };
    if options.mode == Mode::Strict && options.overrides != Overrides::default() {
        eprintln!("note: overrides are ignored in strict mode");
    }
    let out = color_graph(&graph, &options)?;
    if let Some(path) = &a.dump {
        std::fs::write(path, formats::stage1_dump_json(&graph, &out.stage1)?)?;
    }
    let final_coloring = if a.proper { out.proper.as_ref().expect("requested") } else { &out.ocf };
    emit(&formats::coloring_to_json(&graph, final_coloring)?, a.out.as_deref())?;
    eprintln!(
        "stage1 {} colours, stage2 {} colours, total {} colours",
        out.stage1_colors(),
        out.stage2_colors(),
        colors_used(final_coloring)
    );
    Ok(ExitCode::SUCCESS)
}

fn verify(graph: &Path, coloring: &Path, proper: bool) -> Result<ExitCode, Error> {
    let g = formats::read_edge_list_file(graph)?;
    let c = formats::coloring_from_json(&g, &std::fs::read_to_string(coloring)?)?;
    let bad = unsatisfied_edges(&g, &c)?;
    let mut ok = true;
    if !bad.is_empty() {
        ok = false;
        let shown: Vec<String> = bad.iter().take(10).map(|&i| g.edge(i).to_string()).collect();
        println!("not conflict-free: {} unsatisfied edges, first {}", bad.len(), shown.join(" "));
    }
    if proper && !is_proper(&g, &c)? {
        ok = false;
        println!("not proper");
    }
    if ok {
        println!("ok: {} colours", colors_used(&c));
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}

fn exact(graph: &Path, proper: bool, witness: Option<&Path>, cap: Option<usize>) -> Result<ExitCode, Error> {
    let g = formats::read_edge_list_file(graph)?;
    let limits = cap.map_or_else(ExactLimits::default, ExactLimits::uniform);
    let (k, w) = exact_index_with_witness(&g, proper, limits)?;
    println!("{k}");
    if let Some(path) = witness {
        std::fs::write(path, formats::coloring_to_json(&g, &w)?)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn decompose(graph: &Path, k: usize, seed: u64, out: Option<&Path>) -> Result<ExitCode, Error> {
    let g = formats::read_edge_list_file(graph)?;
    let d = balanced_decompose(&g, k, seed, Strictness::Strict)?;
    let disc = max_discrepancy(&g, &d)?;
    emit(&formats::decomposition_to_json(&d)?, out)?;
    eprintln!("pairwise discrepancy {}, around mean {:.4}", disc.pairwise, disc.around_mean());
    Ok(ExitCode::SUCCESS)
}

fn experiment(config: &Path, out_dir: Option<&Path>) -> Result<ExitCode, Error> {
    let config: ExperimentConfig = serde_json::from_str(&std::fs::read_to_string(config)?)?;
    let threads = match std::env::var("OCF_THREADS") {
        Ok(v) => Some(v.parse::<usize>().map_err(|_| Error::InvalidArgument(format!("OCF_THREADS={v:?}")))?),
        Err(_) => None,
    };
    let rows = experiment_run(&config, threads, out_dir)?;
    match out_dir {
        Some(dir) => write_csv(&rows, std::fs::File::create(dir.join("results.csv"))?)?,
        None => write_csv(&rows, std::io::stdout().lock())?,
    }
    Ok(ExitCode::SUCCESS)
}

fn kn_bound(n: usize, cap: Option<usize>) -> Result<ExitCode, Error> {
    let limits = cap.map_or_else(ExactLimits::default, ExactLimits::uniform);
    let c = kn_lower_bound_check(n, limits)?;
    println!("n={} index={} bound={:.6} holds={}", c.n, c.index, c.bound, c.holds);
    Ok(if c.holds { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Color(a) => color(a),
        Command::Verify { graph, coloring, proper } => verify(&graph, &coloring, proper),
        Command::Exact { graph, proper, witness, cap } => exact(&graph, proper, witness.as_deref(), cap),
        Command::Decompose { graph, k, seed, out } => decompose(&graph, k, seed, out.as_deref()),
        Command::Gen { model: GenModel::Gnp { n, p, seed, out } } => {
            let g: Graph = gnp(n, p, seed)?;
            emit(&formats::edge_list_to_string(&g), out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Experiment { config, out_dir } => experiment(&config, out_dir.as_deref()),
        Command::KnBound { n, cap } => kn_bound(n, cap),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error [{}]: {e}", e.kind());
            ExitCode::from(exit_code(&e))
        }
    }
}
