//! Command-line front end.
//!
//! Exit codes: 0 when the requested check passes, 1 when it fails, 2 for
//! unreadable input, invalid parameters or usage errors.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::families::{construct_family, max_guaranteed_s};
use crate::gf::Field;
use crate::io;
use crate::ooa::{self, Mode};
use crate::strong::{check_algebraic, check_combinatorial, FlagData};
use crate::sudoku::{self, Flag, Grid};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "sudoku-ooa",
    version,
    about = "Ordered orthogonal arrays OOA(4,s,2,q) from sudoku flags"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a strongly orthogonal family and emit it. The emitted array is
    /// always verified before success is reported.
    Construct {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        s: usize,
        /// Output file; without it the artifact goes to stdout and the
        /// summary line to stderr.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Emit::Array)]
        emit: Emit,
    },
    /// Check an array file for the exactly-once property.
    Verify {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = VerifyMode::Ooa)]
        mode: VerifyMode,
    },
    /// Check a flags file for strong orthogonality.
    CheckFamily {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = Level::Algebraic)]
        level: Level,
    },
    /// Print the linear sudoku solution of one flag datum.
    GenSudoku {
        /// Canonical indices `a,b,c,d,beta`.
        #[arg(long)]
        flag: String,
        #[arg(long)]
        q: u64,
    },
    /// Describe GF(q) and the largest constructible s.
    Info {
        #[arg(long)]
        q: u64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Emit {
    Flags,
    Grids,
    Array,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum VerifyMode {
    Ooa,
    Sa,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Level {
    Algebraic,
    Combinatorial,
    Exhaustive,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INPUT
            } else {
                EXIT_PASS
            };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let result = match cli.command {
        Command::Construct {
            q,
            s,
            out: path,
            emit,
        } => construct(q, s, path.as_deref(), emit, out, err),
        Command::Verify { path, mode } => verify(&path, mode, out),
        Command::CheckFamily { path, level } => check_family(&path, level, out),
        Command::GenSudoku { flag, q } => gen_sudoku(&flag, q, out),
        Command::Info { q } => info(q, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Parse {
        line: 0,
        message: format!("cannot read {}: {e}", path.display()),
    })
}

fn write_out(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::Parse {
        line: 0,
        message: format!("cannot write {}: {e}", path.display()),
    })
}

fn grids_of(f: &Field, data: &[FlagData]) -> Vec<Grid> {
    data.iter()
        .map(|d| sudoku::generate(f, &Flag::from_data(f, d)).expect("datum flags are sudoku flags"))
        .collect()
}

fn construct(
    q: u64,
    s: usize,
    path: Option<&Path>,
    emit: Emit,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32> {
    let f = Field::new(q)?;
    let family = construct_family(&f, s)?;
    let grids = grids_of(&f, &family.data);
    let array = ooa::assemble(&grids)?;
    let verdict = ooa::verify(&array, Mode::Ooa);
    if let Some(failure) = verdict.first_failure() {
        let _ = writeln!(err, "internal verification failed: {failure}");
        return Ok(EXIT_FAIL);
    }
    let text = match emit {
        Emit::Flags => io::write_flags(f.order(), &family.data),
        Emit::Grids => io::write_grids(&grids),
        Emit::Array => io::write_array(&array),
    };
    let summary = format!(
        "CONSTRUCTED q={} s={} method={}",
        f.order(),
        family.s,
        family.construction.tag()
    );
    match path {
        Some(p) => {
            write_out(p, &text)?;
            let _ = writeln!(out, "{summary}");
        }
        None => {
            let _ = write!(out, "{text}");
            let _ = writeln!(err, "{summary}");
        }
    }
    Ok(EXIT_PASS)
}

fn verify(path: &Path, mode: VerifyMode, out: &mut dyn Write) -> Result<i32> {
    let array = io::parse_array(&read(path)?)?;
    let (mode, label) = match mode {
        VerifyMode::Ooa => (Mode::Ooa, "ooa"),
        VerifyMode::Sa => (Mode::Sa, "sa"),
    };
    let verdict = ooa::verify(&array, mode);
    if verdict.passed() {
        let _ = writeln!(out, "PASS mode={label} sets={}", verdict.checked);
        return Ok(EXIT_PASS);
    }
    let _ = writeln!(
        out,
        "FAIL mode={label} failing={}/{}",
        verdict.failures.len(),
        verdict.checked
    );
    for failure in &verdict.failures {
        let _ = writeln!(out, "  {failure}");
    }
    Ok(EXIT_FAIL)
}

fn check_family(path: &Path, level: Level, out: &mut dyn Write) -> Result<i32> {
    let (f, data) = io::parse_flags(&read(path)?)?;
    let s = data.len() + 2;
    let passed = match level {
        Level::Algebraic | Level::Combinatorial => {
            let report = match level {
                Level::Algebraic => check_algebraic(&f, &data)?,
                _ => check_combinatorial(&grids_of(&f, &data))?,
            };
            let _ = write!(out, "{report}");
            report.passed()
        }
        Level::Exhaustive => {
            // Mutual orthogonality is a precondition of every tier.
            let algebraic = check_algebraic(&f, &data)?;
            let verdict = ooa::verify(&ooa::assemble(&grids_of(&f, &data))?, Mode::Ooa);
            for failure in &verdict.failures {
                let _ = writeln!(out, "{failure}");
            }
            if verdict.passed() != algebraic.passed() {
                let _ = writeln!(
                    out,
                    "DISAGREE exhaustive={} algebraic={}",
                    verdict.passed(),
                    algebraic.passed()
                );
                return Ok(EXIT_FAIL);
            }
            verdict.passed()
        }
    };
    let level = match level {
        Level::Algebraic => "algebraic",
        Level::Combinatorial => "combinatorial",
        Level::Exhaustive => "exhaustive",
    };
    let status = if passed { "PASS" } else { "FAIL" };
    let _ = writeln!(out, "{status} level={level} q={} s={s}", f.order());
    Ok(if passed { EXIT_PASS } else { EXIT_FAIL })
}

fn gen_sudoku(flag: &str, q: u64, out: &mut dyn Write) -> Result<i32> {
    let f = Field::new(q)?;
    let data = io::parse_flag_arg(&f, flag)?;
    let grid = sudoku::generate(&f, &Flag::from_data(&f, &data))?;
    let _ = write!(out, "{}", io::write_grid(&grid));
    Ok(EXIT_PASS)
}

fn info(q: u64, out: &mut dyn Write) -> Result<i32> {
    let f = Field::new(q)?;
    let _ = writeln!(
        out,
        "q={} p={} k={}",
        f.order(),
        f.characteristic(),
        f.degree()
    );
    let _ = writeln!(out, "modulus={}", f.modulus_string());
    let _ = writeln!(out, "generator={}", f.generator());
    let _ = writeln!(out, "max_s={}", max_guaranteed_s(f.order()));
    Ok(EXIT_PASS)
}
