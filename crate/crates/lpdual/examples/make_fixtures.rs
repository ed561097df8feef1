//! Searches random tiny instances with a unique LP optimum and writes them
//! as fixtures, half with integral and half with fractional optima.
//!
//! Usage: make_fixtures <out_dir> <count>

use std::path::PathBuf;

use lpdual::Fixture;
use lpdual_core::oracle::{brute_force_ml, lp_oracle};
use lpdual_core::{LlrVector, ParityCheckMatrix};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn instance(seed: u64) -> Option<(ParityCheckMatrix, LlrVector)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(6..=10);
    let m = rng.random_range(3..=5);
    let mut rows = Vec::with_capacity(m);
    for _ in 0..m {
        let d = rng.random_range(3..=5);
        let mut idx: Vec<usize> = (0..n).collect();
        idx.shuffle(&mut rng);
        rows.push(idx[..d].to_vec());
    }
    let h = ParityCheckMatrix::from_rows(n, &rows).ok()?;
    if (0..n).any(|i| h.var_degree(i) == 0) || h.dimension() > 12 {
        return None;
    }
    let llr = LlrVector::new((0..n).map(|_| rng.random_range(-1.0..2.0)).collect());
    Some((h, llr))
}

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let [dir, count] = &args[..] else {
        eprintln!("usage: make_fixtures <out_dir> <count>");
        std::process::exit(2);
    };
    let dir = PathBuf::from(dir);
    let count: usize = count.parse().expect("count must be an integer");
    let (mut integral, mut fractional) = (0, 0);
    let mut seed = 0u64;
    while integral + fractional < count {
        seed += 1;
        let Some((h, llr)) = instance(seed) else { continue };
        let lp = lp_oracle(&h, &llr).expect("instance within oracle limits");
        let wanted = if lp.is_integral { &mut integral } else { &mut fractional };
        if !lp.unique || *wanted >= count / 2 + count % 2 {
            continue;
        }
        *wanted += 1;
        let (_, ml_value) = brute_force_ml(&h, &llr).expect("dimension within limits");
        let f = Fixture {
            seed,
            code: h,
            llr,
            lp_value: lp.value,
            ml_value,
            integral: lp.is_integral,
            x: lp.x,
        };
        let path = dir.join(format!("instance_{seed:05}.fixture"));
        std::fs::write(&path, f.to_text()).expect("writable output directory");
    }
    println!("{integral} integral, {fractional} fractional");
}
