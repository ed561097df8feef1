//! Monte-Carlo word- and bit-error-rate sweeps over a list of SNR points.
//!
//! Frame `f` of SNR point `p` uses the seed `point_seed(master, p) ^ f` for
//! its noise, transmitted word and decoder randomness, so results depend on
//! neither the worker count nor the order in which frames finish.

use std::fmt::Write as _;
use std::time::Instant;

use lpdual_core::channel::{llr_awgn, simulate_frame, ChannelConfig};
use lpdual_core::ParityCheckMatrix;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::decoder::{run_decoder, DecoderSettings};
use crate::error::Error;
use crate::io::sig10;

/// Default per-point early-stop threshold on word errors.
pub const DEFAULT_TARGET_ERRORS: usize = 200;

const CHUNK: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Transmit {
    AllZeros,
    /// A uniformly random codeword per frame.
    RandomCodeword,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub decoder: DecoderSettings,
    pub ebn0_db: Vec<f64>,
    pub frames: usize,
    /// Stop a point once this many word errors were seen.
    pub target_errors: Option<usize>,
    pub seed: u64,
    pub transmit: Transmit,
    /// Measure wall-clock time per frame. Off by default so that output
    /// files are reproducible byte for byte.
    pub timing: bool,
}

impl SweepConfig {
    pub fn new(decoder: DecoderSettings, ebn0_db: Vec<f64>, frames: usize, seed: u64) -> Self {
        Self {
            decoder,
            ebn0_db,
            frames,
            target_errors: Some(DEFAULT_TARGET_ERRORS),
            seed,
            transmit: Transmit::AllZeros,
            timing: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub ebn0_db: f64,
    pub frames: usize,
    pub word_errors: usize,
    pub bit_errors: usize,
    /// Wrong words that passed the decoder's own validity check.
    pub undetected_errors: usize,
    pub avg_iterations: f64,
    /// Seconds; zero unless timing was requested.
    pub avg_runtime_per_frame: f64,
    pub certified_frames: usize,
}

impl SweepRow {
    pub fn word_error_rate(&self) -> f64 {
        self.word_errors as f64 / self.frames as f64
    }

    pub fn bit_error_rate(&self, n: usize) -> f64 {
        self.bit_errors as f64 / (self.frames * n) as f64
    }

    pub fn certificate_rate(&self) -> f64 {
        self.certified_frames as f64 / self.frames as f64
    }
}

#[derive(Debug, Clone, Copy, Default)]
struct FrameStat {
    word_error: bool,
    bit_errors: usize,
    undetected: bool,
    iterations: usize,
    certified: bool,
    seconds: f64,
}

pub fn point_seed(master: u64, point: usize) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(master);
    rng.set_stream(point as u64);
    rng.next_u64()
}

fn transmitted(basis: &[Vec<u8>], n: usize, transmit: Transmit, frame_seed: u64) -> Vec<u8> {
    let mut x = vec![0u8; n];
    if transmit == Transmit::RandomCodeword {
        let mut rng = ChaCha8Rng::seed_from_u64(frame_seed);
        rng.set_stream(1);
        for row in basis {
            if rng.random::<bool>() {
                x.iter_mut().zip(row).for_each(|(a, b)| *a ^= b);
            }
        }
    }
    x
}

pub fn run_sweep(h: &ParityCheckMatrix, cfg: &SweepConfig) -> Result<Vec<SweepRow>, Error> {
    if cfg.frames == 0 {
        return Err(Error::Config("frames must be at least 1".into()));
    }
    if cfg.ebn0_db.is_empty() {
        return Err(Error::Config("at least one SNR point is required".into()));
    }
    let n = h.n();
    let rate = h.dimension() as f64 / n as f64;
    if rate <= 0.0 {
        return Err(Error::Config("code has dimension zero".into()));
    }
    let basis = match cfg.transmit {
        Transmit::AllZeros => Vec::new(),
        Transmit::RandomCodeword => h.codeword_basis(),
    };
    // Validate decoder settings once before spawning work.
    cfg.decoder.ascent_config(0)?;

    let mut rows = Vec::with_capacity(cfg.ebn0_db.len());
    for (p, &ebn0) in cfg.ebn0_db.iter().enumerate() {
        let channel = ChannelConfig::from_ebn0(ebn0, rate)?;
        let seed = point_seed(cfg.seed, p);
        let one_frame = |f: usize| -> Result<FrameStat, Error> {
            let frame_seed = seed ^ f as u64;
            let x = transmitted(&basis, n, cfg.transmit, frame_seed);
            let start = cfg.timing.then(Instant::now);
            let y = simulate_frame(&x, &channel, frame_seed);
            let llr = llr_awgn(&y, channel.sigma())?;
            let out = run_decoder(h, &llr, &cfg.decoder, frame_seed)?;
            let bit_errors = out.bit_errors(&x);
            Ok(FrameStat {
                word_error: bit_errors > 0,
                bit_errors,
                undetected: bit_errors > 0 && out.accepted,
                iterations: out.iterations,
                certified: out.certified,
                seconds: start.map_or(0.0, |s| s.elapsed().as_secs_f64()),
            })
        };

        let mut row = SweepRow {
            ebn0_db: ebn0,
            frames: 0,
            word_errors: 0,
            bit_errors: 0,
            undetected_errors: 0,
            avg_iterations: 0.0,
            avg_runtime_per_frame: 0.0,
            certified_frames: 0,
        };
        let (mut iterations, mut seconds) = (0usize, 0.0);
        let mut next = 0;
        'frames: while next < cfg.frames {
            let end = (next + CHUNK).min(cfg.frames);
            let stats: Vec<FrameStat> = (next..end).into_par_iter().map(one_frame).collect::<Result<_, _>>()?;
            next = end;
            for s in stats {
                row.frames += 1;
                row.word_errors += usize::from(s.word_error);
                row.bit_errors += s.bit_errors;
                row.undetected_errors += usize::from(s.undetected);
                row.certified_frames += usize::from(s.certified);
                iterations += s.iterations;
                seconds += s.seconds;
                if cfg.target_errors.is_some_and(|t| row.word_errors >= t) {
                    break 'frames;
                }
            }
        }
        row.avg_iterations = iterations as f64 / row.frames as f64;
        row.avg_runtime_per_frame = seconds / row.frames as f64;
        rows.push(row);
    }
    Ok(rows)
}

pub const CSV_COLUMNS: [&str; 7] = [
    "ebn0_db",
    "frames",
    "word_errors",
    "bit_errors",
    "undetected_errors",
    "avg_iterations",
    "avg_runtime_per_frame",
];

/// CSV with a header row; `certificate_rate` is appended when requested.
pub fn rows_to_csv(rows: &[SweepRow], with_certificate_rate: bool) -> String {
    let mut out = CSV_COLUMNS.join(",");
    if with_certificate_rate {
        out.push_str(",certificate_rate");
    }
    out.push('\n');
    for r in rows {
        let _ = write!(
            out,
            "{},{},{},{},{},{},{}",
            sig10(r.ebn0_db),
            r.frames,
            r.word_errors,
            r.bit_errors,
            r.undetected_errors,
            sig10(r.avg_iterations),
            sig10(r.avg_runtime_per_frame)
        );
        if with_certificate_rate {
            let _ = write!(out, ",{}", sig10(r.certificate_rate()));
        }
        out.push('\n');
    }
    out
}
