//! Writes a random four-cycle-free regular parity-check matrix as alist.
//!
//! Usage: make_regular <n> <var_degree> <check_degree> <seed> [--allow-four-cycles]

use lpdual::serialize_alist;
use lpdual_core::ParityCheckMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut args: Vec<String> = std::env::args().skip(1).collect();
    let allow = args.iter().any(|a| a == "--allow-four-cycles");
    args.retain(|a| a != "--allow-four-cycles");
    let args: Vec<u64> = args
        .iter()
        .map(|a| a.parse().expect("arguments must be integers"))
        .collect();
    let [n, dv, dc, seed] = args[..] else {
        eprintln!("usage: make_regular <n> <var_degree> <check_degree> <seed> [--allow-four-cycles]");
        std::process::exit(2);
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let h = ParityCheckMatrix::random_regular(n as usize, dv as usize, dc as usize, !allow, &mut rng)
        .unwrap_or_else(|e| {
            eprintln!("error: {e}");
            std::process::exit(1);
        });
    print!("{}", serialize_alist(&h));
}
