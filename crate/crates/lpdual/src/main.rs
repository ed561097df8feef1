use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lpdual::decoder::render;
use lpdual::demo::demo_a5_csv;
use lpdual::io::{parse_llr_list, read_code, read_llr};
use lpdual::sweep::DEFAULT_TARGET_ERRORS;
use lpdual::{rows_to_csv, run_decoder, run_sweep, DecoderKind, DecoderSettings, Error, SweepConfig, Transmit};
use lpdual_core::{IntervalPick, ParityCheckMatrix, Schedule};

#[derive(Parser)]
#[command(name = "lpdual", version, about = "Dual-domain LP decoding of LDPC codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decode one LLR vector and print the ternary decision.
    Decode(DecodeArgs),
    /// Word- and bit-error-rate sweep over SNR points, written as CSV.
    Sweep(SweepArgs),
    /// Like `sweep`, with an extra certificate-rate column.
    Certify(SweepArgs),
    /// Hard versus soft coordinate ascent on the two-variable toy function.
    #[command(name = "demo-a5")]
    DemoA5(DemoArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ScheduleArg {
    Cyclic,
    Random,
}

#[derive(Clone, Copy, ValueEnum)]
enum PickArg {
    Random,
    Midpoint,
    Lower,
    Upper,
}

#[derive(Args)]
struct DecoderArgs {
    /// Parity-check matrix in alist format.
    #[arg(long)]
    code: PathBuf,
    /// ca-soft, ca-hard, subgrad, min-sum or sum-product.
    #[arg(long, default_value = "ca-soft")]
    decoder: DecoderKind,
    /// Inverse temperature of ca-soft.
    #[arg(long, default_value_t = 1.0)]
    kappa: f64,
    /// Run the annealing ladder 1, 4, 16, 64 first.
    #[arg(long)]
    anneal: bool,
    /// Explicit comma-separated annealing ladder; overrides --anneal.
    #[arg(long, value_delimiter = ',')]
    ladder: Option<Vec<f64>>,
    /// Tie tolerance of the ternary decision.
    #[arg(long, default_value_t = 1e-8)]
    decision_tol: f64,
    /// Convergence tolerance on the largest edge change per sweep.
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    /// Sweeps per stage, or iterations for subgrad and message passing.
    #[arg(long)]
    max_sweeps: Option<usize>,
    #[arg(long, value_enum, default_value = "cyclic")]
    schedule: ScheduleArg,
    #[arg(long, value_enum, default_value = "random")]
    interval_pick: PickArg,
    /// Subgradient step scale c in c / l.
    #[arg(long, default_value_t = 1.0)]
    step_c: f64,
}

impl DecoderArgs {
    fn settings(&self) -> DecoderSettings {
        let mut s = DecoderSettings::new(self.decoder);
        s.kappa = self.kappa;
        s.anneal = self.anneal;
        s.ladder = self.ladder.clone();
        s.decision_tolerance = self.decision_tol;
        s.tol = self.tol;
        s.max_sweeps = self.max_sweeps;
        s.schedule = match self.schedule {
            ScheduleArg::Cyclic => Schedule::Cyclic,
            ScheduleArg::Random => Schedule::RandomPermutation,
        };
        s.interval_pick = match self.interval_pick {
            PickArg::Random => IntervalPick::Random,
            PickArg::Midpoint => IntervalPick::Midpoint,
            PickArg::Lower => IntervalPick::Lower,
            PickArg::Upper => IntervalPick::Upper,
        };
        s.step_c = self.step_c;
        s
    }

    fn load_code(&self) -> Result<ParityCheckMatrix, Error> {
        let h = read_code(&self.code)?;
        let low = h.low_weight_rows();
        if !low.is_empty() {
            let rows: Vec<String> = low.iter().map(|j| (j + 1).to_string()).collect();
            eprintln!(
                "warning: rows of weight below 3 ({}); convergence is not guaranteed",
                rows.join(", ")
            );
        }
        Ok(h)
    }
}

#[derive(Args)]
struct DecodeArgs {
    #[command(flatten)]
    decoder: DecoderArgs,
    /// File with one LLR per line.
    #[arg(long, conflicts_with = "lambda", required_unless_present = "lambda")]
    llr: Option<PathBuf>,
    /// Comma-separated LLRs.
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    /// Seed for randomized interval picks and schedules.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    decoder: DecoderArgs,
    /// Comma-separated Eb/N0 values in dB.
    #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
    snr: Vec<f64>,
    /// Frames per SNR point.
    #[arg(long, default_value_t = 1000)]
    frames: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Stop a point after this many word errors; 0 disables.
    #[arg(long, default_value_t = DEFAULT_TARGET_ERRORS)]
    target_errors: usize,
    /// Transmit random codewords instead of the all-zeros word.
    #[arg(long)]
    random_codeword: bool,
    /// Record wall-clock time per frame.
    #[arg(long)]
    timing: bool,
    /// CSV output path; standard output if absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DemoArgs {
    #[arg(long, default_value_t = 0.5)]
    a: f64,
    #[arg(long, default_value_t = 1.0)]
    kappa: f64,
    #[arg(long, default_value_t = 100)]
    sweeps: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Error> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn decode_cmd(args: &DecodeArgs) -> Result<(), Error> {
    let h = args.decoder.load_code()?;
    let llr = match (&args.llr, &args.lambda) {
        (Some(path), _) => read_llr(path)?,
        (None, Some(list)) => parse_llr_list(list).map_err(|e| Error::Config(format!("--lambda: {}", e.message)))?,
        (None, None) => unreachable!("clap requires one LLR source"),
    };
    let settings = args.decoder.settings();
    let outcome = run_decoder(&h, &llr, &settings, args.seed)?;
    print!("{}", render(&outcome, settings.kind));
    Ok(())
}

fn sweep_cmd(args: &SweepArgs, certify: bool) -> Result<(), Error> {
    let h = args.decoder.load_code()?;
    let mut cfg = SweepConfig::new(args.decoder.settings(), args.snr.clone(), args.frames, args.seed);
    cfg.target_errors = (args.target_errors > 0).then_some(args.target_errors);
    cfg.timing = args.timing;
    if args.random_codeword {
        cfg.transmit = Transmit::RandomCodeword;
    }
    let rows = run_sweep(&h, &cfg)?;
    emit(&rows_to_csv(&rows, certify), args.out.as_deref())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Decode(args) => decode_cmd(args),
        Command::Sweep(args) => sweep_cmd(args, false),
        Command::Certify(args) => sweep_cmd(args, true),
        Command::DemoA5(args) => demo_a5_csv(args.a, args.kappa, args.sweeps)
            .map_err(Error::from)
            .and_then(|csv| emit(&csv, args.out.as_deref())),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
