//! Runs a JSON config the way the `verify` subcommand does and prints the
//! report as text. Pass a config path, or get the built-in Oppenheim case.

use std::path::Path;

use vnf::cli::output::render_report;
use vnf::cli::{OutputFormat, RunConfig};
use vnf::summation::verify;

fn main() -> vnf::Result<()> {
    let cfg = match std::env::args().nth(1) {
        Some(path) => RunConfig::load(Path::new(&path))?,
        None => RunConfig { s_re: 0.3, s_im: 0.2, ..RunConfig::default() },
    };
    let report = verify(&cfg.to_problem()?)?;
    print!("{}", render_report(&report, OutputFormat::Text));
    Ok(())
}
