//! The `mobius` command line: reads poset, digraph and category documents,
//! computes Möbius functions and related invariants, and cross-checks them.
//!
//! Every command prints one JSON object on standard output. Rationals are
//! strings `"p/q"` (or `"p"` for integers). Exit codes: 0 on success, 1 on a
//! domain error or a failed verification, 2 on a usage error.

pub mod commands;
pub mod doc;
pub mod verify;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

pub use doc::Document;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read `{path}`: {message}")]
    Io { path: String, message: String },
    #[error("invalid document {0}")]
    Schema(String),
    #[error("{0}")]
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }

    pub(crate) fn domain(e: impl std::fmt::Display) -> Self {
        CliError::Domain(e.to_string())
    }
}

#[derive(Debug, Parser)]
#[command(name = "mobius", version, about = "Möbius functions of posets, digraphs and finite categories")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Incidence algebra computations on a poset document.
    Poset {
        file: PathBuf,
        #[arg(long)]
        mobius: bool,
        /// Reduced homology of the order complex (of the open interval with --pair).
        #[arg(long)]
        homology: bool,
        #[arg(long)]
        gauss_bonnet: bool,
        /// Antipode at all variables one; needs --pair.
        #[arg(long)]
        antipode: bool,
        /// Möbius function on isomorphism classes of intervals.
        #[arg(long)]
        reduced: bool,
        #[arg(long, num_args = 2, value_names = ["X", "Y"])]
        pair: Option<Vec<String>>,
    },
    /// Adjacency algebra of a reflexive digraph document.
    Digraph {
        file: PathBuf,
        #[arg(long)]
        mobius: bool,
        /// Compare the Möbius function with the walk formula.
        #[arg(long)]
        check: bool,
    },
    /// Finite category document.
    Cat {
        file: PathBuf,
        /// Validate the table and report structural predicates.
        #[arg(long)]
        check: bool,
        #[arg(long)]
        mobius: bool,
        /// Groupoid-weighted incidence map and its inverse.
        #[arg(long)]
        mu_g: bool,
        /// Decomposition census of one morphism.
        #[arg(long, value_name = "MORPHISM-ID")]
        decomp: Option<String>,
        #[arg(long)]
        iso_classes: bool,
    },
    /// Classical arithmetic functions.
    Arith {
        #[arg(long, value_name = "N")]
        mu: Option<u64>,
        /// JSON array of coefficients a_1..a_N as "p/q" strings.
        #[arg(long, value_name = "FILE")]
        invert: Option<PathBuf>,
        #[arg(long, value_name = "N")]
        mertens: Option<u64>,
    },
    /// Run every applicable cross-method identity on a document.
    Verify { file: PathBuf },
    /// Emit a document for a named family.
    Gen {
        #[arg(long, value_enum)]
        family: GenFamily,
        #[arg(long)]
        param: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenFamily {
    Chain,
    Boolean,
    Divisors,
    Partitions,
    Injections,
}

/// What the process should print and return.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match commands::dispatch(cli.command) {
        Ok((value, success)) => Outcome {
            code: if success { 0 } else { 1 },
            stdout: serde_json::to_string_pretty(&value).expect("reports serialize"),
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}"),
        },
    }
}

pub(crate) fn read_document(path: &PathBuf) -> Result<Document, CliError> {
    let bytes = std::fs::read(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    Document::parse(&bytes)
}
