//! Side-by-side hard and soft coordinate ascent on the two-variable toy
//! function where the hard version stalls.

use std::fmt::Write as _;

use lpdual_core::oracle::toy_a5_ascent;
use lpdual_core::OracleError;

use crate::io::sig10;

pub const DEMO_BOX: (f64, f64) = (-10.0, 10.0);

/// CSV with one row per iterate, the start point included.
pub fn demo_a5_csv(a: f64, kappa: f64, sweeps: usize) -> Result<String, OracleError> {
    let hard = toy_a5_ascent(a, None, DEMO_BOX, sweeps)?;
    let soft = toy_a5_ascent(a, Some(kappa), DEMO_BOX, sweeps)?;
    let mut out = String::from("sweep,hard_x1,hard_x2,hard_value,soft_x1,soft_x2,soft_value\n");
    for (k, (h, s)) in hard.iter().zip(&soft).enumerate() {
        let _ = writeln!(
            out,
            "{k},{},{},{},{},{},{}",
            sig10(h.x1),
            sig10(h.x2),
            sig10(h.value),
            sig10(s.x1),
            sig10(s.x2),
            sig10(s.value)
        );
    }
    Ok(out)
}
