//! File formats, simulation harness and command-line support for the
//! `lpdual-core` decoders.

pub mod alist;
pub mod decoder;
pub mod demo;
pub mod error;
pub mod fixture;
pub mod io;
pub mod sweep;

pub use alist::{parse_alist, serialize_alist};
pub use decoder::{run_decoder, DecoderKind, DecoderSettings, Outcome};
pub use error::{AlistError, AlistErrorKind, Error, FormatError};
pub use fixture::{read_fixture_dir, Fixture};
pub use sweep::{run_sweep, rows_to_csv, SweepConfig, SweepRow, Transmit};
