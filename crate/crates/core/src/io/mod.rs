//! Configuration documents, run dispatch and artifact persistence.
//!
//! A run is described by a TOML document (see [`parse_config`]), executed
//! by [`run`] into a directory under the output root, and closed by a
//! `manifest.json` that lists every file the run wrote.

mod config;
mod manifest;
mod run;

pub use config::{parse_config, validate, IncidentSpec, Mode, RawConfig, RunConfig, Scalar, Task};
pub use manifest::{config_hash, write_atomic, Check, OutputFile, RunDir, RunManifest, MANIFEST};
pub use run::{
    decode_field, encode_field, exit_code, output_root, run, RunOutcome, EXIT_CONFIG, EXIT_DOMAIN, EXIT_IO,
    EXIT_PASS, EXIT_PROPERTY, EXIT_SOLVER, OUTPUT_ROOT_ENV,
};
