//! Argument parsing and subcommand dispatch for the `horadam` binary.

use std::fs::File;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgAction, Args, Parser, Subcommand, ValueEnum};
use horadam_core::{
    gf_coeffs, term_binet, term_fast, term_naive, Params, Rational, Root, SeqSpec, Thm4Variant,
    Verifier,
};

use crate::catalog::{Checker, Probe, Scope, Variant};
use crate::config::{Format, SweepConfig};
use crate::sweep;

/// Exit status for usage, parameter and I/O errors.
pub const EXIT_ERROR: u8 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "horadam",
    version,
    about = "Exact bi-periodic Horadam sequences and identity checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the exact term w_n.
    #[command(allow_negative_numbers = true)]
    Term {
        #[command(flatten)]
        seq: SeqArgs,
        #[arg(short = 'n')]
        n: u64,
        #[arg(long, value_enum, default_value_t = Method::Naive)]
        method: Method,
    },
    /// Check one identity or congruence instance and print its report as JSON.
    ///
    /// Exits 0 when the sides agree (or the congruence holds or is
    /// inapplicable), 1 when they do not.
    #[command(allow_negative_numbers = true)]
    Verify {
        /// One of eq5, eq7, thm2, zhang47, thm3, remark2, lemma2, lemma3,
        /// thm4, thm4-special, thm5-s2, thm5-s3, cor1, cor2, cor3.
        checker: Checker,
        #[command(flatten)]
        seq: OptSeqArgs,
        #[command(flatten)]
        index: IndexArgs,
    },
    /// Run every enabled checker over a grid described by a TOML file.
    ///
    /// Exits 0 iff no cell fails unexpectedly. HORADAM_THREADS caps the
    /// number of worker threads.
    Sweep {
        config: PathBuf,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Override the config's output format.
        #[arg(long)]
        format: Option<Format>,
    },
    /// Print the first coefficients of the generating function, one per line.
    #[command(allow_negative_numbers = true)]
    Gf {
        #[command(flatten)]
        seq: SeqArgs,
        #[arg(long, default_value_t = 16)]
        count: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Naive,
    Binet,
    Fast,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    U,
    V,
    T,
    General,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RootArg {
    Alpha,
    Beta,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Direct,
    Zhang,
}

#[derive(Debug, Args)]
pub struct SeqArgs {
    #[arg(short = 'a')]
    pub a: i64,
    #[arg(short = 'b')]
    pub b: i64,
    #[arg(short = 'c')]
    pub c: i64,
    /// Named seeds; defaults to u unless --w0/--w1 are given.
    #[arg(long, value_enum)]
    pub family: Option<FamilyArg>,
    #[arg(long, allow_hyphen_values = true)]
    pub w0: Option<Rational>,
    #[arg(long, allow_hyphen_values = true)]
    pub w1: Option<Rational>,
}

/// Sequence arguments that `remark2` does not need.
#[derive(Debug, Args)]
pub struct OptSeqArgs {
    #[arg(short = 'a')]
    pub a: Option<i64>,
    #[arg(short = 'b')]
    pub b: Option<i64>,
    #[arg(short = 'c')]
    pub c: Option<i64>,
    #[arg(long, value_enum)]
    pub family: Option<FamilyArg>,
    #[arg(long, allow_hyphen_values = true)]
    pub w0: Option<Rational>,
    #[arg(long, allow_hyphen_values = true)]
    pub w1: Option<Rational>,
}

#[derive(Debug, Args)]
pub struct IndexArgs {
    #[arg(short = 'm')]
    pub m: Option<u64>,
    #[arg(short = 'n')]
    pub n: Option<u64>,
    #[arg(short = 'r')]
    pub r: Option<u64>,
    #[arg(short = 'd')]
    pub d: Option<u64>,
    #[arg(short = 'k')]
    pub k: Option<u64>,
    #[arg(short = 'i')]
    pub i: Option<u64>,
    /// zhang47: check the corrected form (true) or the published one (false).
    #[arg(long, action = ArgAction::Set, default_value_t = true)]
    pub corrected: bool,
    /// lemma3: which root to substitute.
    #[arg(long, value_enum, default_value_t = RootArg::Alpha)]
    pub root: RootArg,
    /// thm4-special: which displayed form.
    #[arg(long, value_enum, default_value_t = VariantArg::Direct)]
    pub variant: VariantArg,
}

impl IndexArgs {
    fn get(&self, name: &str) -> Option<u64> {
        match name {
            "m" => self.m,
            "n" => self.n,
            "r" => self.r,
            "d" => self.d,
            "k" => self.k,
            "i" => self.i,
            _ => None,
        }
    }

    fn probe(&self, checker: Checker) -> Result<Probe, String> {
        let index = checker
            .index_names()
            .iter()
            .map(|name| {
                self.get(name)
                    .ok_or_else(|| format!("{checker} needs -{name}"))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let variant = match checker {
            Checker::Zhang47 => Variant::Corrected(self.corrected),
            Checker::Lemma3 => Variant::Root(match self.root {
                RootArg::Alpha => Root::Alpha,
                RootArg::Beta => Root::Beta,
            }),
            Checker::Thm4Special => Variant::Special(match self.variant {
                VariantArg::Direct => Thm4Variant::Direct,
                VariantArg::Zhang => Thm4Variant::ZhangForm,
            }),
            _ => Variant::Plain,
        };
        Ok(Probe::new(checker, index, variant))
    }
}

fn build_spec(
    params: Params,
    family: Option<FamilyArg>,
    w0: Option<&Rational>,
    w1: Option<&Rational>,
) -> Result<SeqSpec, String> {
    match (family, w0, w1) {
        (None | Some(FamilyArg::General), Some(w0), Some(w1)) => {
            Ok(SeqSpec::general(params, w0.clone(), w1.clone()))
        }
        (None | Some(FamilyArg::General), None, None) if family.is_some() => {
            Err("--family general needs --w0 and --w1".into())
        }
        (None | Some(FamilyArg::General), _, _) if w0.is_some() || w1.is_some() => {
            Err("--w0 and --w1 must be given together".into())
        }
        (Some(_), Some(_), _) | (Some(_), _, Some(_)) => {
            Err("--w0/--w1 cannot be combined with a named family".into())
        }
        (None | Some(FamilyArg::U), _, _) => Ok(SeqSpec::u(params)),
        (Some(FamilyArg::V), _, _) => Ok(SeqSpec::v(params)),
        (Some(FamilyArg::T), _, _) => SeqSpec::t(params).map_err(|e| e.to_string()),
        (Some(FamilyArg::General), _, _) => unreachable!(),
    }
}

impl SeqArgs {
    fn spec(&self) -> Result<SeqSpec, String> {
        let params = Params::new(self.a, self.b, self.c).map_err(|e| e.to_string())?;
        build_spec(params, self.family, self.w0.as_ref(), self.w1.as_ref())
    }
}

impl OptSeqArgs {
    fn spec(&self, checker: Checker) -> Result<SeqSpec, String> {
        let (Some(a), Some(b), Some(c)) = (self.a, self.b, self.c) else {
            return Err(format!("{checker} needs -a, -b and -c"));
        };
        let params = Params::new(a, b, c).map_err(|e| e.to_string())?;
        if checker.scope() == Scope::Params {
            return Ok(SeqSpec::u(params));
        }
        build_spec(params, self.family, self.w0.as_ref(), self.w1.as_ref())
    }
}

fn fail(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_ERROR)
}

/// Runs a parsed command line, writing results to `out`.
pub fn execute(cli: Cli, out: &mut dyn Write) -> ExitCode {
    match cli.command {
        Command::Term { seq, n, method } => {
            let spec = match seq.spec() {
                Ok(s) => s,
                Err(e) => return fail(e),
            };
            let value = match method {
                Method::Naive => Ok(term_naive(&spec, n)),
                Method::Fast => Ok(term_fast(&spec, n)),
                Method::Binet => term_binet(&spec, n),
            };
            match value {
                Ok(v) => emit(out, format_args!("{v}\n")),
                Err(e) => fail(e),
            }
        }
        Command::Gf { seq, count } => {
            let coeffs = match seq
                .spec()
                .and_then(|s| gf_coeffs(&s, count).map_err(|e| e.to_string()))
            {
                Ok(c) => c,
                Err(e) => return fail(e),
            };
            let mut text = String::new();
            for c in coeffs {
                text.push_str(&c.to_string());
                text.push('\n');
            }
            emit(out, format_args!("{text}"))
        }
        Command::Verify {
            checker,
            seq,
            index,
        } => verify(checker, &seq, &index, out),
        Command::Sweep {
            config,
            out: path,
            format,
        } => run_sweep(&config, path, format, out),
    }
}

fn emit(out: &mut dyn Write, args: std::fmt::Arguments<'_>) -> ExitCode {
    match out.write_fmt(args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(e),
    }
}

fn verify(checker: Checker, seq: &OptSeqArgs, index: &IndexArgs, out: &mut dyn Write) -> ExitCode {
    let probe = match index.probe(checker) {
        Ok(p) => p,
        Err(e) => return fail(e),
    };
    let mut verifier = None;
    if checker.scope() != Scope::Indices {
        match seq.spec(checker) {
            Ok(s) => verifier = Some(Verifier::new(s)),
            Err(e) => return fail(e),
        }
    }
    let report = match probe.run(verifier.as_mut()) {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    let json = serde_json::to_string_pretty(&report).expect("report serializes");
    match writeln!(out, "{json}") {
        Ok(()) if report.verdict().passed() => ExitCode::SUCCESS,
        Ok(()) => ExitCode::FAILURE,
        Err(e) => fail(e),
    }
}

fn run_sweep(
    path: &Path,
    dest: Option<PathBuf>,
    format: Option<Format>,
    stdout: &mut dyn Write,
) -> ExitCode {
    let cfg = match SweepConfig::load(path) {
        Ok(c) => c,
        Err(e) => return fail(format_args!("{}: {e}", path.display())),
    };
    let mut sink: Box<dyn Write> = match &dest {
        Some(p) => match File::create(p) {
            Ok(f) => Box::new(io::BufWriter::new(f)),
            Err(e) => return fail(format_args!("cannot write {}: {e}", p.display())),
        },
        None => Box::new(stdout),
    };
    let threads = sweep::threads_from_env();
    let result = match format.unwrap_or(cfg.format) {
        Format::Json => sweep::run::<Vec<u8>>(&cfg, threads, None).and_then(|rep| {
            serde_json::to_writer_pretty(&mut sink, &rep)?;
            writeln!(sink)?;
            Ok(rep)
        }),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut sink);
            let rep = sweep::run(&cfg, threads, Some(&mut w));
            drop(w);
            rep.inspect(|rep| {
                eprintln!(
                    "cells={} checked={} fails={} expected_fails={} skipped={}",
                    rep.cells,
                    rep.totals.checked,
                    rep.totals.fails,
                    rep.totals.expected_fails,
                    rep.totals.skipped
                );
            })
        }
    };
    let flushed = sink.flush();
    match (result, flushed) {
        (Err(e), _) => fail(e),
        (_, Err(e)) => fail(e),
        (Ok(rep), Ok(())) if rep.passed() => ExitCode::SUCCESS,
        (Ok(_), Ok(())) => ExitCode::FAILURE,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (ExitCode, String) {
        let cli =
            Cli::try_parse_from(std::iter::once("horadam").chain(args.iter().copied())).unwrap();
        let mut out = Vec::new();
        let code = execute(cli, &mut out);
        (code, String::from_utf8(out).unwrap())
    }

    #[test]
    fn term_methods_agree() {
        for method in ["naive", "binet", "fast"] {
            let (code, out) = run(&[
                "term", "--family", "u", "-a", "1", "-b", "1", "-c", "1", "-n", "10", "--method",
                method,
            ]);
            assert_eq!((code, out.as_str()), (ExitCode::SUCCESS, "55\n"));
        }
        assert_eq!(
            run(&["term", "--family", "v", "-a", "2", "-b", "1", "-c", "1", "-n", "2"]).1,
            "4\n"
        );
        assert_eq!(
            run(&[
                "term",
                "-a",
                "-1",
                "-b",
                "2",
                "-c",
                "3",
                "--w0=-1/2",
                "--w1",
                "1",
                "-n",
                "2"
            ])
            .1,
            "-5/2\n"
        );
    }

    #[test]
    fn verify_reports_and_exit_codes() {
        let (code, out) = run(&["verify", "eq5", "-a", "2", "-b", "1", "-c", "1", "-n", "3"]);
        assert_eq!(code, ExitCode::SUCCESS);
        assert!(
            out.contains(r#""lhs": "5""#) && out.contains(r#""equal": true"#),
            "{out}"
        );
        let (code, out) = run(&[
            "verify",
            "zhang47",
            "--corrected=false",
            "-a",
            "2",
            "-b",
            "1",
            "-c",
            "1",
            "--family",
            "u",
            "-m",
            "2",
            "-n",
            "2",
            "-r",
            "1",
        ]);
        assert_eq!(code, ExitCode::FAILURE);
        assert!(
            out.contains(r#""lhs": "418""#) && out.contains(r#""rhs": "674""#),
            "{out}"
        );
        let (code, out) = run(&["verify", "remark2", "-m", "3", "-i", "5", "-r", "2"]);
        assert_eq!(code, ExitCode::SUCCESS);
        assert!(!out.contains("spec"));
    }

    #[test]
    fn spec_argument_rules() {
        let p = Params::new(1, 1, 1).unwrap();
        let one = Rational::from(1);
        assert!(build_spec(p, None, Some(&one), None).is_err());
        assert!(build_spec(p, Some(FamilyArg::V), Some(&one), Some(&one)).is_err());
        assert!(build_spec(p, Some(FamilyArg::General), None, None).is_err());
        assert_eq!(build_spec(p, None, None, None).unwrap(), SeqSpec::u(p));
        let t = build_spec(
            Params::new(1, 1, 2).unwrap(),
            Some(FamilyArg::T),
            None,
            None,
        );
        assert!(t.is_err());
    }

    #[test]
    fn usage_errors() {
        let parse = |args: &[&str]| {
            Cli::try_parse_from(std::iter::once("horadam").chain(args.iter().copied()))
        };
        assert!(parse(&["verify", "thm9", "-m", "2"]).is_err());
        assert!(parse(&["term", "-a", "1", "-b", "1", "-c", "1"]).is_err());
    }
}
