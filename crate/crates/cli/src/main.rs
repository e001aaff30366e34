use std::fs::{self, File};
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use lexcycle::io::from_graph6;
use lexcycle::Graph;
use lexcycle_cli::commands::{
    certify, generate, generate_named, lexcycle_record, parse_check, recognize, LexMode,
};
use lexcycle_cli::report::{emit, emit_all, ErrorRecord, Outcome};
use lexcycle_cli::{check_theorem, ExperimentConfig, Format, GenClass};

#[derive(Parser, Debug)]
#[command(
    name = "lexcycle",
    version,
    about = "LBFS⁺ sweep experiments on cocomparability graphs"
)]
struct Cli {
    /// Master seed; instance i uses seed + i.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads (defaults to all cores). Output does not depend on it.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Write records here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Read graph6 lines from this file instead of standard input.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    #[arg(long, global = true, default_value = "json", value_parser = parse_format)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse().map_err(|e: anyhow::Error| e.to_string())
}

fn parse_class(s: &str) -> Result<GenClass, String> {
    s.parse().map_err(|e: anyhow::Error| e.to_string())
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sample graphs from a class or the named catalog.
    Generate(GenerateArgs),
    /// Compute or bound LexCycle for each input graph.
    Lexcycle(LexcycleArgs),
    /// Check σ₁ = σ₃ on generated instances and report aggregates.
    CheckTheorem(CheckArgs),
    /// Run one ordering certificate on each input graph.
    Certify(CertifyArgs),
    /// Classify each input graph.
    Recognize,
}

#[derive(Args, Debug)]
struct BatchArgs {
    #[arg(long, value_parser = parse_class)]
    class: Option<GenClass>,
    #[arg(long)]
    count: Option<usize>,
    /// Fixed size; overrides --n-min and --n-max.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 2)]
    n_min: usize,
    #[arg(long, default_value_t = 12)]
    n_max: usize,
    /// Arc probabilities, cycled over instances.
    #[arg(long, value_delimiter = ',', default_values_t = [0.2, 0.5, 0.8])]
    p: Vec<f64>,
    /// Draw budget for rejection-sampled classes.
    #[arg(long, default_value_t = 100_000)]
    budget: usize,
}

impl BatchArgs {
    fn config(
        &self,
        class: GenClass,
        count: usize,
        seed: u64,
        output: Option<&Path>,
    ) -> anyhow::Result<ExperimentConfig> {
        let (n_min, n_max) = match self.n {
            Some(n) => (n, n),
            None => (self.n_min, self.n_max),
        };
        let cfg = ExperimentConfig {
            class,
            count: self.count.unwrap_or(count),
            n_min,
            n_max,
            probabilities: self.p.clone(),
            seed,
            budget: self.budget,
            output: output.map(|p| p.display().to_string()),
            ..ExperimentConfig::default()
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Args, Debug)]
struct GenerateArgs {
    #[command(flatten)]
    batch: BatchArgs,
    /// Catalog graph instead of a random class: path, cycle, complete,
    /// k_ladder, p2p3bar, diamond, c4, domino, triangle.
    #[arg(long, conflicts_with = "class")]
    named: Option<String>,
    #[arg(long, default_value_t = 0)]
    k: usize,
    /// Directory for witness sidecars (defaults to `<output>.witness`).
    #[arg(long)]
    witness_dir: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct LexcycleArgs {
    #[arg(long, conflicts_with = "sampled")]
    exact: bool,
    #[arg(long)]
    sampled: bool,
    #[arg(long, default_value_t = 50)]
    trials: usize,
}

#[derive(Args, Debug)]
struct CheckArgs {
    #[command(flatten)]
    batch: BatchArgs,
    /// Cocomparability starts tried besides the generator witness.
    #[arg(long, default_value_t = 3)]
    extra_starts: usize,
}

#[derive(Args, Debug)]
struct CertifyArgs {
    /// Space-separated vertex ids.
    #[arg(long)]
    ordering: String,
    #[arg(long, default_value = "umbrella")]
    check: String,
    /// Second ordering for the flip check.
    #[arg(long)]
    tau: Option<String>,
}

fn read_graphs(input: Option<&Path>) -> anyhow::Result<Vec<Graph>> {
    let reader: Box<dyn BufRead> = match input {
        Some(p) => Box::new(BufReader::new(
            File::open(p).with_context(|| format!("cannot open {}", p.display()))?,
        )),
        None => Box::new(io::stdin().lock()),
    };
    let mut graphs = Vec::new();
    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        graphs.push(from_graph6(line).with_context(|| format!("line {}", lineno + 1))?);
    }
    Ok(graphs)
}

fn write_sidecars(
    dir: &Path,
    records: &[lexcycle_cli::commands::GeneratedRecord],
) -> anyhow::Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
    for r in records {
        if let (Some(i), Some(text)) = (r.index, r.sidecar()) {
            fs::write(dir.join(format!("{i:06}.txt")), text)?;
        }
    }
    Ok(())
}

fn run(cli: &Cli, out: &mut (dyn Write + Send)) -> anyhow::Result<Outcome> {
    let mut out = out;
    let input = cli.input.as_deref();
    let outcome = match &cli.command {
        Command::Generate(args) => {
            if let Some(name) = &args.named {
                let record = generate_named(name, args.k)?;
                emit(&mut out, cli.format, &record)?;
                out.flush()?;
                return Ok(Outcome::Ok);
            }
            let Some(class) = args.batch.class else {
                bail!("generate needs --class or --named");
            };
            let cfg = args
                .batch
                .config(class, 1, cli.seed, cli.output.as_deref())?;
            let records = generate(&cfg);
            let sidecar_dir = args.witness_dir.clone().or_else(|| {
                cli.output.as_ref().map(|o| {
                    let mut s = o.clone().into_os_string();
                    s.push(".witness");
                    PathBuf::from(s)
                })
            });
            if let Some(dir) = sidecar_dir {
                write_sidecars(&dir, &records)?;
            }
            emit_all(&mut out, cli.format, &records)?
        }
        Command::Lexcycle(args) => {
            let mode = match (args.exact, args.sampled) {
                (true, _) => LexMode::Exact,
                (_, true) => LexMode::Sampled,
                _ => LexMode::Auto,
            };
            let graphs = read_graphs(input)?;
            let records: Vec<_> = rayon_map(&graphs, |i, g| {
                lexcycle_record(i, g, mode, args.trials, cli.seed.wrapping_add(i as u64))
            });
            emit_all(&mut out, cli.format, &records)?
        }
        Command::CheckTheorem(args) => {
            let class = args.batch.class.unwrap_or(GenClass::P2p3barFreeCocomp);
            let mut cfg = args
                .batch
                .config(class, 100, cli.seed, cli.output.as_deref())?;
            cfg.extra_starts = args.extra_starts;
            let report = check_theorem(&cfg);
            emit_all(&mut out, cli.format, &report.records)?;
            emit(&mut out, cli.format, &report.footer)?;
            lexcycle_cli::report::Record::outcome(&report.footer)
        }
        Command::Certify(args) => {
            let check = parse_check(&args.check)?;
            let graphs = read_graphs(input)?;
            let records = graphs
                .iter()
                .enumerate()
                .map(|(i, g)| certify(i, g, &args.ordering, check, args.tau.as_deref()))
                .collect::<lexcycle::Result<Vec<_>>>()?;
            emit_all(&mut out, cli.format, &records)?
        }
        Command::Recognize => {
            let graphs = read_graphs(input)?;
            let records: Vec<_> = rayon_map(&graphs, recognize);
            emit_all(&mut out, cli.format, &records)?
        }
    };
    out.flush()?;
    Ok(outcome)
}

fn rayon_map<T: Send>(graphs: &[Graph], f: impl Fn(usize, &Graph) -> T + Sync) -> Vec<T> {
    use rayon::prelude::*;
    graphs
        .par_iter()
        .enumerate()
        .map(|(i, g)| f(i, g))
        .collect()
}

fn fail(format: Format, e: &anyhow::Error) -> ExitCode {
    let kind = match e.downcast_ref::<lexcycle::Error>() {
        Some(core) => ErrorRecord::from_core(core).kind,
        None => "error",
    };
    let record = ErrorRecord::new(kind, format!("{e:#}"));
    match format {
        Format::Json => eprintln!("{}", serde_json::json!({ "error": record })),
        Format::Plain => eprintln!("error: {}", record.message),
    }
    ExitCode::from(Outcome::Error.code() as u8)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(Outcome::Error.code() as u8),
            };
        }
    };
    let result = (|| -> anyhow::Result<Outcome> {
        let mut pool = rayon::ThreadPoolBuilder::new();
        if let Some(j) = cli.jobs {
            pool = pool.num_threads(j.max(1));
        }
        let pool = pool.build()?;
        let mut sink: Box<dyn Write + Send> = match &cli.output {
            Some(p) => Box::new(BufWriter::new(
                File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
            )),
            None => Box::new(BufWriter::new(io::stdout())),
        };
        pool.install(|| run(&cli, &mut sink))
    })();
    match result {
        Ok(outcome) => ExitCode::from(outcome.code() as u8),
        Err(e) => fail(cli.format, &e),
    }
}
