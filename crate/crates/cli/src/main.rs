use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use srsvd::cooc::{build_from_path, CoocSpec, DEFAULT_WINDOW};
use srsvd::experiment::{run_comparison, CompareConfig, DataSource, Figure, MSE_SUM_KS};
use srsvd::io::{load_matrix, read_vector_csv, write_csv, write_mtx, Bundle, Format};
use srsvd::stats::{generate, Distribution, DistributionSpec};
use srsvd::{column_mean, shifted_rsvd, Error, LinearOperator, PcaModel, RsvdParams, Vector};

#[derive(Parser)]
#[command(name = "srsvd", version, about = "Shifted randomized SVD and PCA")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a random matrix as CSV.
    Gen(GenArgs),
    /// Factor a matrix and write U.csv, S.csv, V.csv, mean.csv and meta.txt.
    Svd(SvdArgs),
    /// Fit PCA and write per-column reconstruction errors.
    Pca(PcaArgs),
    /// Run the S-RSVD versus RSVD comparison protocol.
    Compare(CompareArgs),
    /// Build a context-by-target co-occurrence matrix from a token file.
    Cooc(CoocArgs),
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    rows: usize,
    #[arg(long)]
    cols: usize,
    /// uniform, normal, zipf or poisson.
    #[arg(long, default_value = "uniform")]
    dist: String,
    /// Comma-separated distribution parameters.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    params: Vec<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct InputArgs {
    #[arg(long)]
    input: PathBuf,
    /// csv or mtx; inferred from the extension when omitted.
    #[arg(long)]
    format: Option<String>,
}

#[derive(Args)]
struct FactorArgs {
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = 2.0)]
    oversample: f64,
    #[arg(long, default_value_t = 0)]
    q: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct SvdArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    factor: FactorArgs,
    /// none, mean or file:<path>.
    #[arg(long, default_value = "none")]
    shift: String,
    /// Output directory.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct PcaArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    factor: FactorArgs,
    /// none, mean or file:<path>.
    #[arg(long, default_value = "mean")]
    shift: String,
    /// Error report path.
    #[arg(long)]
    out: PathBuf,
    /// Also save the factor bundle to this directory.
    #[arg(long)]
    bundle: Option<PathBuf>,
}

#[derive(Args)]
struct CompareArgs {
    /// Distribution spec such as `uniform` or `zipf:1.5,1000`; repeatable.
    #[arg(long)]
    dist: Vec<String>,
    #[arg(long, default_value_t = 100)]
    rows: usize,
    /// Column counts; one synthetic source per distribution and count.
    #[arg(long, value_delimiter = ',', default_value = "1000")]
    cols: Vec<usize>,
    /// Use a fixed data file instead of synthetic data.
    #[arg(long, conflicts_with = "dist")]
    input: Option<PathBuf>,
    #[arg(long)]
    format: Option<String>,
    /// Ranks to compare.
    #[arg(long, value_delimiter = ',')]
    k: Vec<usize>,
    /// Power iteration counts.
    #[arg(long, value_delimiter = ',', default_value = "0")]
    q: Vec<usize>,
    #[arg(long, default_value_t = 30)]
    trials: usize,
    #[arg(long, default_value_t = 2.0)]
    oversample: f64,
    /// Also run RSVD on the explicitly centered matrix.
    #[arg(long)]
    explicit: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Report CSV path.
    #[arg(long)]
    out: PathBuf,
    /// Also write the CSV behind figure 1a..1f.
    #[arg(long)]
    figure: Option<String>,
    /// Where to write the figure CSV; stdout when omitted.
    #[arg(long, requires = "figure")]
    figure_out: Option<PathBuf>,
    /// Add elapsed times to the report (makes it nondeterministic).
    #[arg(long)]
    timings: bool,
}

#[derive(Args)]
struct CoocArgs {
    /// Whitespace-separated token file.
    #[arg(long)]
    input: PathBuf,
    /// Number of context words (rows).
    #[arg(long, default_value_t = 1000)]
    contexts: usize,
    /// Number of target words (columns).
    #[arg(long)]
    targets: usize,
    #[arg(long, default_value_t = DEFAULT_WINDOW)]
    window: usize,
    /// Matrix Market output path.
    #[arg(long)]
    out: PathBuf,
    /// Also write the context and target vocabularies, one word per line.
    #[arg(long)]
    vocab_prefix: Option<PathBuf>,
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
    let result = match cli.command {
        Command::Gen(a) => cmd_gen(a),
        Command::Svd(a) => cmd_svd(a),
        Command::Pca(a) => cmd_pca(a),
        Command::Compare(a) => cmd_compare(a),
        Command::Cooc(a) => cmd_cooc(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_data_error() { 2 } else { 1 })
        }
    }
}

fn write_file(path: &Path, text: &str) -> srsvd::Result<()> {
    fs::write(path, text).map_err(|source| Error::Io { path: path.to_path_buf(), source })
}

fn cmd_gen(a: GenArgs) -> srsvd::Result<()> {
    let dist = Distribution::from_parts(&a.dist, &a.params)?;
    let m = generate(&DistributionSpec { dist, rows: a.rows, cols: a.cols, seed: a.seed })?;
    write_csv(&a.out, &m)
}

fn load(input: &InputArgs) -> srsvd::Result<srsvd::DataMatrix> {
    let format = input.format.as_deref().map(str::parse::<Format>).transpose()?;
    load_matrix(&input.input, format)
}

fn resolve_shift<M: LinearOperator>(spec: &str, x: &M) -> srsvd::Result<Vector> {
    match spec {
        "none" => Ok(Vector::zeros(x.rows())),
        "mean" => Ok(column_mean(x)),
        _ => match spec.strip_prefix("file:") {
            Some(path) => {
                let v = read_vector_csv(path)?;
                if v.len() != x.rows() {
                    return Err(Error::InvalidMatrix(format!(
                        "shift file {path} has {} entries, input has {} rows",
                        v.len(),
                        x.rows()
                    )));
                }
                Vector::new(v)
            }
            None => Err(Error::InvalidParameter(format!("unknown shift '{spec}', expected none, mean or file:<path>"))),
        },
    }
}

fn params(f: &FactorArgs) -> srsvd::Result<RsvdParams> {
    RsvdParams::with_oversample(f.k, f.oversample, f.q, f.seed)
}

fn bundle_of(result: srsvd::SvdResult, shape: (usize, usize), shift: &str) -> Bundle {
    let p = result.params;
    let meta = [
        ("rows", shape.0.to_string()),
        ("cols", shape.1.to_string()),
        ("rank", p.rank.to_string()),
        ("sketch", p.sketch.to_string()),
        ("power_iters", p.power_iters.to_string()),
        ("seed", p.seed.to_string()),
        ("shift", shift.to_string()),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), v))
    .collect();
    let mean = (!result.shift.is_zero()).then(|| result.shift.to_vec());
    Bundle { factors: result.factors, mean, meta }
}

fn cmd_svd(a: SvdArgs) -> srsvd::Result<()> {
    let params = params(&a.factor)?;
    let x = load(&a.input)?;
    let mu = resolve_shift(&a.shift, &x)?;
    let result = shifted_rsvd(&x, &mu, &params)?;
    bundle_of(result, x.shape(), &a.shift).save(&a.out)
}

fn cmd_pca(a: PcaArgs) -> srsvd::Result<()> {
    let params = params(&a.factor)?;
    let x = load(&a.input)?;
    let mu = resolve_shift(&a.shift, &x)?;
    let result = shifted_rsvd(&x, &mu, &params)?;
    let model = PcaModel::from_result(result.clone());
    let report = model.reconstruction_errors(&x)?;
    let mut text = String::from("column,squared_error\n");
    for (j, e) in report.per_column.iter().enumerate() {
        text.push_str(&format!("{j},{e}\n"));
    }
    text.push_str(&format!("# mse,{}\n", report.mse));
    write_file(&a.out, &text)?;
    if let Some(dir) = &a.bundle {
        bundle_of(result, x.shape(), &a.shift).save(dir)?;
    }
    Ok(())
}

fn cmd_compare(a: CompareArgs) -> srsvd::Result<()> {
    let sources = match &a.input {
        Some(path) => {
            let format = a.format.as_deref().map(str::parse::<Format>).transpose()?;
            let data = load_matrix(path, format)?;
            let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or("input").to_string();
            vec![DataSource::Fixed { name, data: Arc::new(data) }]
        }
        None => {
            let dists = if a.dist.is_empty() { vec!["uniform".to_string()] } else { a.dist.clone() };
            let mut out = Vec::new();
            for d in &dists {
                let dist: Distribution = d.parse()?;
                for &cols in &a.cols {
                    out.push(DataSource::Synthetic { dist, rows: a.rows, cols });
                }
            }
            out
        }
    };
    let ks = if a.k.is_empty() { MSE_SUM_KS.to_vec() } else { a.k.clone() };
    let figure = a.figure.as_deref().map(str::parse::<Figure>).transpose()?;
    let mut cfg = CompareConfig::new(sources, ks, a.q.clone(), a.trials, a.seed);
    cfg.oversample = a.oversample;
    cfg.explicit = a.explicit;
    let report = run_comparison(&cfg)?;
    write_file(&a.out, &report.to_csv(a.timings))?;
    if let Some(fig) = figure {
        let text = report.figure_csv(fig)?;
        match &a.figure_out {
            Some(p) => write_file(p, &text)?,
            None => print!("{text}"),
        }
    }
    Ok(())
}

fn cmd_cooc(a: CoocArgs) -> srsvd::Result<()> {
    let spec = CoocSpec::new(a.contexts, a.targets, a.window)?;
    let c = build_from_path(&a.input, &spec)?;
    write_mtx(&a.out, &c.matrix)?;
    if let Some(prefix) = &a.vocab_prefix {
        let with = |suffix: &str| {
            let mut p = prefix.clone().into_os_string();
            p.push(suffix);
            PathBuf::from(p)
        };
        write_file(&with(".contexts.txt"), &(c.contexts.join("\n") + "\n"))?;
        write_file(&with(".targets.txt"), &(c.targets.join("\n") + "\n"))?;
    }
    Ok(())
}
