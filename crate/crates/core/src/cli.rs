//! Command-line front end used by the `elm` binary.
//!
//! Exit codes: 0 on success, 1 on runtime errors, 2 on usage errors.

use std::fs::{self, File};
use std::io::{BufReader, Write};
use std::net::{IpAddr, SocketAddr};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::data::{self, split_dataset, QuestionnaireRecord};
use crate::elm::{ActivationKind, ElmConfig};
use crate::error::{ElmError, Result};
use crate::metrics::{self, report, ConfusionMatrix};
use crate::{model_file, pipeline, service};

#[derive(Debug, Parser)]
#[command(name = "elm", version, about = "Extreme learning machine screening for early-stage diabetes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Split a labelled CSV, fit on the training part and write a model file.
    Train(TrainArgs),
    /// Evaluate a model file on a labelled CSV.
    Eval(EvalArgs),
    /// Classify one or more unlabelled records.
    Predict(PredictArgs),
    /// Compare the six transfer functions over several seeds.
    Benchmark(BenchmarkArgs),
    /// Run the HTTP prediction service.
    Serve(ServeArgs),
}

fn parse_activation(s: &str) -> std::result::Result<ActivationKind, String> {
    s.parse().map_err(|e: ElmError| e.to_string())
}

fn parse_unit(s: &str) -> std::result::Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if (0.0..=1.0).contains(&v) => Ok(v),
        _ => Err(format!("expected a number in [0, 1], got \"{s}\"")),
    }
}

fn parse_nonneg(s: &str) -> std::result::Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() && v >= 0.0 => Ok(v),
        _ => Err(format!("expected a nonnegative number, got \"{s}\"")),
    }
}

fn parse_positive(s: &str) -> std::result::Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() && v > 0.0 => Ok(v),
        _ => Err(format!("expected a positive number, got \"{s}\"")),
    }
}

#[derive(Debug, Clone, Args)]
pub struct ModelArgs {
    /// Hidden neurons.
    #[arg(long, default_value_t = 50, value_parser = clap::value_parser!(u64).range(1..))]
    pub hidden: u64,
    /// hardlim, tanh, sine, tribas, gaussian or multiquadric.
    #[arg(long, default_value = "multiquadric", value_parser = parse_activation)]
    pub activation: ActivationKind,
    /// Weight of the dot-product term against the RBF distance term.
    #[arg(long, default_value_t = 1.0, value_parser = parse_unit)]
    pub alpha: f64,
    #[arg(long, default_value_t = 1.0, value_parser = parse_positive)]
    pub rbf_width: f64,
    /// Ridge penalty; 0 gives the minimum-norm solution.
    #[arg(long, default_value_t = 0.0, value_parser = parse_nonneg)]
    pub ridge: f64,
}

impl ModelArgs {
    fn config(&self, seed: u64) -> ElmConfig {
        ElmConfig {
            hidden_count: self.hidden as usize,
            activation: self.activation,
            alpha: self.alpha,
            rbf_width: self.rbf_width,
            ridge: self.ridge,
            seed,
            ..ElmConfig::default()
        }
    }
}

#[derive(Debug, Args)]
pub struct TrainArgs {
    #[arg(long)]
    pub data: PathBuf,
    #[command(flatten)]
    pub model: ModelArgs,
    /// Seed for both the split and the hidden layer.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Split without preserving class proportions.
    #[arg(long)]
    pub no_stratify: bool,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long)]
    pub model: PathBuf,
    #[arg(long)]
    pub data: PathBuf,
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("source").required(true).args(["input", "answers"])))]
pub struct PredictArgs {
    #[arg(long)]
    pub model: PathBuf,
    /// CSV file with a header line and one or more records.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Inline answers, e.g. "age=45,gender=male,polyuria=yes,...".
    #[arg(long)]
    pub answers: Option<String>,
}

#[derive(Debug, Args)]
pub struct BenchmarkArgs {
    #[arg(long)]
    pub data: PathBuf,
    /// Number of seeds; seeds 0..k are used.
    #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
    pub seeds: u64,
    #[command(flatten)]
    pub model: ModelArgs,
    /// Where to write per-run CSV rows.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ServeArgs {
    /// Model file; without it model-backed endpoints answer 503.
    #[arg(long)]
    pub model: Option<PathBuf>,
    #[arg(long, default_value_t = 8080)]
    pub port: u16,
    #[arg(long, default_value = "127.0.0.1")]
    pub host: IpAddr,
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<()> {
    match cli.command {
        Command::Train(args) => cmd_train(&args, out),
        Command::Eval(args) => cmd_eval(&args, out),
        Command::Predict(args) => cmd_predict(&args, out),
        Command::Benchmark(args) => cmd_benchmark(&args, out),
        Command::Serve(args) => cmd_serve(&args),
    }
}

fn read_records(path: &Path) -> Result<Vec<QuestionnaireRecord>> {
    data::parse_csv(BufReader::new(File::open(path)?))
}

fn write_scores(out: &mut dyn Write, name: &str, cm: &ConfusionMatrix) -> Result<()> {
    let r = report(cm, Default::default());
    writeln!(
        out,
        "{name:<10} n={:<4} precision={:.4} recall={:.4} f1={:.4} accuracy={:.4}",
        cm.total(),
        r.precision,
        r.recall,
        r.f1,
        r.accuracy
    )?;
    Ok(())
}

pub fn cmd_train(args: &TrainArgs, out: &mut dyn Write) -> Result<()> {
    let records = read_records(&args.data)?;
    if records.is_empty() {
        return Err(ElmError::NoRecords);
    }
    let split = split_dataset(&records, args.seed, !args.no_stratify)?;
    let model = pipeline::train(&split.train, args.model.config(args.seed))?;
    model_file::save_model(&model, &args.out)?;

    let (tr, va, te) = split.sizes();
    writeln!(out, "split train/validation/test = {tr}/{va}/{te} (seed {})", args.seed)?;
    writeln!(
        out,
        "fitted {} hidden nodes ({}) in {:.4} s",
        model.hidden_count(),
        model.activation(),
        model.train_time().unwrap_or_default().as_secs_f64()
    )?;
    for (name, part) in [("train", &split.train), ("validation", &split.validation), ("test", &split.test)] {
        if part.is_empty() {
            writeln!(out, "{name:<10} n=0")?;
        } else {
            write_scores(out, name, &pipeline::evaluate(&model, part)?)?;
        }
    }
    writeln!(out, "model written to {}", args.out.display())?;
    Ok(())
}

pub fn cmd_eval(args: &EvalArgs, out: &mut dyn Write) -> Result<()> {
    let model = model_file::load_model(&args.model)?;
    let records = read_records(&args.data)?;
    if records.is_empty() {
        return Err(ElmError::NoRecords);
    }
    let cm = pipeline::evaluate(&model, &records)?;
    write_scores(out, "eval", &cm)?;
    writeln!(out, "{cm}")?;
    Ok(())
}

/// Turns `key=value,...` answers into a two-line CSV document.
fn inline_answers_csv(answers: &str) -> Result<String> {
    let mut keys = Vec::new();
    let mut values = Vec::new();
    for pair in answers.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = pair
            .split_once('=')
            .ok_or_else(|| ElmError::InvalidConfig(format!("expected key=value, got \"{pair}\"")))?;
        keys.push(k.trim().to_string());
        values.push(v.trim().to_string());
    }
    Ok(format!("{}\n{}\n", keys.join(","), values.join(",")))
}

pub fn cmd_predict(args: &PredictArgs, out: &mut dyn Write) -> Result<()> {
    let model = model_file::load_model(&args.model)?;
    let records = match (&args.input, &args.answers) {
        (Some(path), _) => read_records(path)?,
        (None, Some(answers)) => data::parse_csv_str(&inline_answers_csv(answers)?)?,
        (None, None) => unreachable!("clap requires --input or --answers"),
    };
    if records.is_empty() {
        return Err(ElmError::NoRecords);
    }
    for p in pipeline::predict(&model, &records)? {
        writeln!(out, "{} raw_score={}", p.label, p.raw_score)?;
    }
    Ok(())
}

pub fn cmd_benchmark(args: &BenchmarkArgs, out: &mut dyn Write) -> Result<()> {
    let records = read_records(&args.data)?;
    let seeds: Vec<u64> = (0..args.seeds).collect();
    let table = metrics::benchmark_transfer_functions(&records, args.model.config(0), &seeds)?;
    write!(out, "{table}")?;
    if let Some(path) = &args.out {
        fs::write(path, table.to_csv())?;
        writeln!(out, "per-run rows written to {}", path.display())?;
    }
    Ok(())
}

pub fn cmd_serve(args: &ServeArgs) -> Result<()> {
    let model = args.model.as_ref().map(model_file::load_model).transpose()?;
    let addr = SocketAddr::new(args.host, args.port);
    let runtime = tokio::runtime::Runtime::new()?;
    runtime.block_on(service::serve(addr, model))?;
    Ok(())
}
