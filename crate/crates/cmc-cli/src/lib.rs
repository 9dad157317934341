//! Command-line front end for `cmc-core`: profile tables, curvature grids,
//! isoperimetric and foliation samples, and verification reports.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod verify;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use config::{Cli, Command};
use error::{CliResult, EXIT_FAIL, EXIT_PASS};
use output::{Format, Table};

fn emit(table: &Table, format: Format, out: Option<&Path>) -> CliResult<()> {
    match out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            table.write(format, &mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            table.write(format, &mut w)?;
            w.flush()?;
        }
    }
    Ok(())
}

/// Runs one parsed command line and returns the process exit code.
///
/// Summary lines go to `notes` (standard error in the binary) so that the
/// table output stays plot-ready.
pub fn run(cli: &Cli, notes: &mut dyn Write) -> CliResult<i32> {
    let (cfg, output) = match &cli.command {
        Command::Profile(a) => commands::profile(a)?,
        Command::Curvature(a) => commands::curvature(a)?,
        Command::Isoperimetric(a) => commands::isoperimetric(a)?,
        Command::Foliation(a) => commands::foliation(a)?,
        Command::Verify(a) => {
            let cfg = verify::VerifyConfig::from_args(a)?;
            let reports = verify::run(&cfg)?;
            match a.format {
                Format::Json => match &a.out {
                    Some(path) => {
                        let mut w = BufWriter::new(File::create(path)?);
                        serde_json::to_writer_pretty(&mut w, &reports)?;
                        w.write_all(b"\n")?;
                        w.flush()?;
                    }
                    None => {
                        let stdout = io::stdout();
                        let mut w = stdout.lock();
                        serde_json::to_writer_pretty(&mut w, &reports)?;
                        w.write_all(b"\n")?;
                    }
                },
                Format::Csv => emit(&verify::reports_table(&reports), Format::Csv, a.out.as_deref())?,
            }
            let failed: Vec<&str> = reports.iter().filter(|r| !r.pass).map(|r| r.check.as_str()).collect();
            writeln!(notes, "{} of {} checks passed", reports.len() - failed.len(), reports.len())?;
            for f in &failed {
                writeln!(notes, "failed: {f}")?;
            }
            return Ok(if failed.is_empty() { EXIT_PASS } else { EXIT_FAIL });
        }
    };
    emit(&output.table, cfg.format, cfg.out.as_deref())?;
    for n in &output.notes {
        writeln!(notes, "{n}")?;
    }
    Ok(output.exit_code)
}
