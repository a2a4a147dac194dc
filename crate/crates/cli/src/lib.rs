//! Command-line frontend for `commat-core`: every decision and computation of
//! the library behind stable text formats, exit codes, and machine-readable
//! porcelain output.
//!
//! Exit-code contract: 0 = success / Yes, 1 = No / negative, 2 = Unknown,
//! 3 = error (parse failures, budget violations, internal verification
//! failures). Identical invocations with identical seeds produce
//! byte-identical output.

pub mod matfile;

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use commat_core::cent::{self, CoverageMode, DetMode, ExponentVector};
use commat_core::gf::{Elem, Field};
use commat_core::matrix::Matrix;
use commat_core::nilcommute::{self, Method, Verdict, DEFAULT_BUDGET, DEFAULT_SEED};
use commat_core::partition::Partition;
use commat_core::poly;
use commat_core::typealg;
use commat_core::Error;

/// Result of a dispatch: everything `main` needs to finish the process.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Output {
    fn ok(stdout: String) -> Output {
        Output {
            stdout,
            stderr: String::new(),
            code: 0,
        }
    }

    fn with_code(stdout: String, code: i32) -> Output {
        Output {
            stdout,
            stderr: String::new(),
            code,
        }
    }

    fn error(msg: String) -> Output {
        Output {
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
            code: 3,
        }
    }
}

const PORCELAIN_DECISION: &str = "Porcelain: verdict<TAB>method<TAB>witness-file";
const PORCELAIN_SET: &str = "Porcelain: one line, values tab-separated";

#[derive(Parser)]
#[command(
    name = "commat",
    version,
    about = "Commuting similarity classes, class types, and centralizer determinants over finite fields"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Class type of the matrix in FILE (e.g. `1^(2,1)`).
    #[command(after_help = PORCELAIN_SET)]
    Classtype {
        /// Field as p^a, e.g. 2^1.
        #[arg(long)]
        field: String,
        /// Matrix file (`field p a` / `dim n` / n rows of encodings).
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        porcelain: bool,
    },
    /// Cycle type of the matrix in FILE (e.g. `x+1^(2,1)`).
    #[command(after_help = PORCELAIN_SET)]
    Cycletype {
        #[arg(long)]
        field: String,
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        porcelain: bool,
    },
    /// Decide whether two class types commute over the field.
    #[command(after_help = PORCELAIN_DECISION)]
    Commute {
        #[arg(long)]
        field: String,
        /// First class type, e.g. "1^(2,2) 2^(1)".
        type_a: String,
        /// Second class type.
        type_b: String,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Seed for randomized phases (output is deterministic given the seed).
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Write the verified witness pair to FILE on a Yes verdict.
        #[arg(long)]
        witness_out: Option<PathBuf>,
        #[arg(long)]
        porcelain: bool,
    },
    /// Decide whether two similarity classes (cycle types) commute.
    #[command(after_help = PORCELAIN_DECISION)]
    CommuteClasses {
        #[arg(long)]
        field: String,
        /// First cycle type, e.g. "x^(2,2) x+1^(1)".
        class_a: String,
        /// Second cycle type.
        class_b: String,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        witness_out: Option<PathBuf>,
        #[arg(long)]
        porcelain: bool,
    },
    /// Decide whether the nilpotent classes N(lambda) and N(mu) commute.
    #[command(after_help = PORCELAIN_DECISION)]
    CommuteNilpotent {
        #[arg(long)]
        field: String,
        /// Partition, e.g. (6,6).
        #[arg(long)]
        lambda: String,
        /// Partition, e.g. (7,5).
        #[arg(long)]
        mu: String,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        witness_out: Option<PathBuf>,
        #[arg(long)]
        porcelain: bool,
    },
    /// Determinant set of the centralizer of the matrix in FILE.
    #[command(after_help = PORCELAIN_SET)]
    Detset {
        #[arg(long)]
        field: String,
        #[arg(long)]
        matrix: PathBuf,
        /// Enumerate the centralizer instead of applying the classification.
        #[arg(long)]
        brute: bool,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long)]
        porcelain: bool,
    },
    /// Set of determinants of matrices of a class type.
    #[command(after_help = PORCELAIN_SET)]
    DetCoverage {
        #[arg(long)]
        field: String,
        /// Class type, e.g. "1^(2,1) 1^(1)".
        #[arg(long = "type")]
        type_text: String,
        /// Enumerate all constant-term assignments instead of closed forms.
        #[arg(long)]
        exhaustive: bool,
        #[arg(long)]
        porcelain: bool,
    },
    /// Number of monic irreducibles of the degree with constant term theta.
    #[command(after_help = PORCELAIN_SET)]
    IrrCount {
        #[arg(long)]
        field: String,
        #[arg(long)]
        degree: u32,
        /// Constant term as an element encoding.
        #[arg(long)]
        theta: u32,
        #[arg(long)]
        porcelain: bool,
    },
    /// List the monic irreducibles of the degree, one per line.
    #[command(after_help = PORCELAIN_SET)]
    IrrList {
        #[arg(long)]
        field: String,
        #[arg(long)]
        degree: u32,
        #[arg(long)]
        porcelain: bool,
    },
    /// Pi-expressible elements of Z_m for the exponent vector.
    #[command(after_help = PORCELAIN_SET)]
    PiSet {
        /// Group order m.
        #[arg(long)]
        m: u32,
        /// Comma-separated exponents, e.g. 3,2,1.
        #[arg(long)]
        pi: String,
        #[arg(long)]
        porcelain: bool,
    },
    /// Check the expressibility conjecture for all group orders up to max-m.
    /// Exit 0 when no disagreements are found.
    #[command(after_help = "Porcelain: one line per m: m<TAB>disagreements")]
    PiConjecture {
        #[arg(long)]
        max_m: u32,
        #[arg(long)]
        porcelain: bool,
    },
    /// Partitions of n whose nilpotent class commutes with every class of
    /// the same size over the field.
    #[command(after_help = PORCELAIN_SET)]
    Universal {
        #[arg(long)]
        field: String,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long)]
        porcelain: bool,
    },
    /// Commuting witness for N(n+1,n-1) and N(n,n), when one exists.
    #[command(after_help = PORCELAIN_DECISION)]
    NnWitness {
        #[arg(long)]
        field: String,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        witness_out: Option<PathBuf>,
        #[arg(long)]
        porcelain: bool,
    },
    /// Partition pair ((n,n),(n+1,n-1)) commuting over F_{p^a} exactly when
    /// a > r.
    #[command(after_help = "Porcelain: lambda<TAB>mu<TAB>n")]
    FieldDependence {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        porcelain: bool,
    },
    /// Certified verdicts for all pairs of partitions of n with at most two
    /// parts, with the classification verdict alongside.
    #[command(after_help = "Porcelain: one line per pair: lambda<TAB>mu<TAB>verdict<TAB>method<TAB>oracle")]
    TwoPartTable {
        #[arg(long)]
        field: String,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        porcelain: bool,
    },
}

/// Run a command line (without the program name) to completion.
pub fn dispatch(argv: &[&str]) -> Output {
    let full: Vec<&str> = std::iter::once("commat").chain(argv.iter().copied()).collect();
    let cli = match Cli::try_parse_from(&full) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Output::ok(e.to_string());
            }
            let line = e
                .to_string()
                .lines()
                .next()
                .unwrap_or("invalid arguments")
                .to_string();
            return Output {
                stdout: String::new(),
                stderr: format!("{line}\n"),
                code: 3,
            };
        }
    };
    match run(cli.cmd) {
        Ok(out) => out,
        Err(e) => Output::error(e.to_string()),
    }
}

fn parse_field(text: &str) -> commat_core::Result<Field> {
    let (p, a) = text
        .split_once('^')
        .ok_or_else(|| Error::Parse(format!("field must be p^a, got `{text}`")))?;
    let p: u32 = p
        .parse()
        .map_err(|_| Error::Parse(format!("bad characteristic `{p}`")))?;
    let a: u32 = a
        .parse()
        .map_err(|_| Error::Parse(format!("bad extension degree `{a}`")))?;
    Field::new(p, a)
}

fn read_matrix(field: &Field, path: &PathBuf) -> commat_core::Result<Matrix> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let m = matfile::parse_matrix(&text)?;
    if m.field() != field {
        return Err(Error::Parse(format!(
            "matrix file field {}^{} does not match --field {}^{}",
            m.field().p(),
            m.field().a(),
            field.p(),
            field.a()
        )));
    }
    Ok(m)
}

fn verdict_human(v: Verdict) -> &'static str {
    match v {
        Verdict::Yes => "Yes",
        Verdict::No => "No",
        Verdict::Unknown => "Unknown",
    }
}

fn method_human(m: &Method) -> String {
    match m {
        Method::Theorem(name) => format!("theorem: {name}"),
        other => other.to_string(),
    }
}

fn elems_line(es: &[Elem], sep: &str) -> String {
    let strs: Vec<String> = es.iter().map(|e| e.enc().to_string()).collect();
    strs.join(sep)
}

/// Re-verify a witness pair (commutation plus recomputed invariants) and
/// write it. A verification failure is an internal error, never silent.
fn write_witness(
    path: &PathBuf,
    x: &Matrix,
    y: &Matrix,
    check: impl Fn(&Matrix, &Matrix) -> commat_core::Result<bool>,
) -> commat_core::Result<()> {
    if !x.commutes_with(y)? {
        return Err(Error::NotCommuting);
    }
    if !check(x, y)? {
        return Err(Error::TypeMismatch);
    }
    std::fs::write(path, matfile::format_witness(x, y))
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

/// Shared tail of the three commuting-decision commands.
#[allow(clippy::too_many_arguments)]
fn decision_output(
    verdict: Verdict,
    method_text: String,
    witness: Option<(Matrix, Matrix)>,
    witness_out: Option<PathBuf>,
    porcelain: bool,
    check: impl Fn(&Matrix, &Matrix) -> commat_core::Result<bool>,
) -> commat_core::Result<Output> {
    let mut witness_file = String::from("-");
    if let (Some(path), Some((x, y))) = (&witness_out, &witness) {
        write_witness(path, x, y, check)?;
        witness_file = path.display().to_string();
    }
    let code = match verdict {
        Verdict::Yes => 0,
        Verdict::No => 1,
        Verdict::Unknown => 2,
    };
    let stdout = if porcelain {
        format!(
            "{}\t{}\t{}\n",
            verdict,
            method_text.replace(": ", ":"),
            witness_file
        )
    } else if method_text.is_empty() {
        format!("{}\n", verdict_human(verdict))
    } else {
        format!("{} ({})\n", verdict_human(verdict), method_text)
    };
    Ok(Output::with_code(stdout, code))
}

fn run(cmd: Cmd) -> commat_core::Result<Output> {
    match cmd {
        Cmd::Classtype {
            field,
            matrix,
            porcelain: _,
        } => {
            let f = parse_field(&field)?;
            let m = read_matrix(&f, &matrix)?;
            let t = m.class_type()?;
            Ok(Output::ok(format!("{}\n", typealg::format_type(&t))))
        }
        Cmd::Cycletype {
            field,
            matrix,
            porcelain: _,
        } => {
            let f = parse_field(&field)?;
            let m = read_matrix(&f, &matrix)?;
            let ct = m.cycle_type()?;
            Ok(Output::ok(format!("{}\n", typealg::format_cycle_type(&ct))))
        }
        Cmd::Commute {
            field,
            type_a,
            type_b,
            budget,
            seed: _,
            witness_out,
            porcelain,
        } => {
            let f = parse_field(&field)?;
            let s = typealg::parse_type(&type_a)?;
            let t = typealg::parse_type(&type_b)?;
            let v = typealg::types_commute(&s, &t, &f, budget)?;
            let method = v.certificate.clone().unwrap_or_default();
            let (s2, t2) = (s.clone(), t.clone());
            decision_output(v.status, method, v.witness, witness_out, porcelain, move |x, y| {
                Ok(x.class_type()? == s2 && y.class_type()? == t2)
            })
        }
        Cmd::CommuteClasses {
            field,
            class_a,
            class_b,
            budget,
            seed: _,
            witness_out,
            porcelain,
        } => {
            let f = parse_field(&field)?;
            let c = typealg::parse_cycle_type(&class_a, &f)?;
            let d = typealg::parse_cycle_type(&class_b, &f)?;
            let v = typealg::classes_commute(&c, &d, budget)?;
            let method = v.certificate.clone().unwrap_or_default();
            let (c2, d2) = (c.clone(), d.clone());
            decision_output(v.status, method, v.witness, witness_out, porcelain, move |x, y| {
                Ok(x.cycle_type()? == c2 && y.cycle_type()? == d2)
            })
        }
        Cmd::CommuteNilpotent {
            field,
            lambda,
            mu,
            budget,
            seed,
            witness_out,
            porcelain,
        } => {
            let f = parse_field(&field)?;
            let lam = Partition::parse(&lambda)?;
            let mup = Partition::parse(&mu)?;
            let v = nilcommute::decide(&lam, &mup, &f, budget, seed)?;
            let method = method_human(&v.method);
            let (l2, m2) = (lam.clone(), mup.clone());
            decision_output(v.verdict, method, v.witness, witness_out, porcelain, move |x, y| {
                Ok(x.nilpotent_partition()? == l2 && y.nilpotent_partition()? == m2)
            })
        }
        Cmd::Detset {
            field,
            matrix,
            brute,
            budget,
            porcelain,
        } => {
            let f = parse_field(&field)?;
            let m = read_matrix(&f, &matrix)?;
            let mode = if brute {
                DetMode::BruteForce
            } else {
                DetMode::Theorem
            };
            let dets = cent::det_set(&m, mode, budget)?;
            let sep = if porcelain { "\t" } else { " " };
            Ok(Output::ok(format!("{}\n", elems_line(&dets, sep))))
        }
        Cmd::DetCoverage {
            field,
            type_text,
            exhaustive,
            porcelain,
        } => {
            let f = parse_field(&field)?;
            let t = typealg::parse_type(&type_text)?;
            let mode = if exhaustive {
                CoverageMode::Exhaustive
            } else {
                CoverageMode::Fast
            };
            let dets = cent::type_det_coverage(&t, &f, mode)?;
            let sep = if porcelain { "\t" } else { " " };
            Ok(Output::ok(format!("{}\n", elems_line(&dets, sep))))
        }
        Cmd::IrrCount {
            field,
            degree,
            theta,
            porcelain: _,
        } => {
            let f = parse_field(&field)?;
            if theta >= f.q() {
                return Err(Error::Parse(format!("theta {theta} out of range")));
            }
            let n = poly::count_irreducibles_with_constant(&f, degree, Elem(theta))?;
            Ok(Output::ok(format!("{n}\n")))
        }
        Cmd::IrrList {
            field,
            degree,
            porcelain,
        } => {
            let f = parse_field(&field)?;
            let polys = poly::enumerate_irreducibles(&f, degree)?;
            let strs: Vec<String> = polys.iter().map(|p| p.to_string()).collect();
            let joined = if porcelain {
                format!("{}\n", strs.join("\t"))
            } else {
                let mut s = strs.join("\n");
                s.push('\n');
                s
            };
            Ok(Output::ok(joined))
        }
        Cmd::PiSet { m, pi, porcelain } => {
            let entries: Vec<i64> = pi
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse::<i64>()
                        .map_err(|_| Error::Parse(format!("bad exponent `{s}`")))
                })
                .collect::<commat_core::Result<_>>()?;
            let v = ExponentVector::new(m, &entries)?;
            let set = cent::pi_expressible_set(&v);
            let strs: Vec<String> = set.iter().map(|x| x.to_string()).collect();
            let sep = if porcelain { "\t" } else { " " };
            Ok(Output::ok(format!("{}\n", strs.join(sep))))
        }
        Cmd::PiConjecture { max_m, porcelain } => {
            let mut out = String::new();
            let mut total = 0usize;
            for m in 1..=max_m {
                let report = cent::pi_conjecture_check(m)?;
                total += report.len();
                if porcelain {
                    let _ = writeln!(out, "{m}\t{}", report.len());
                } else {
                    let _ = writeln!(out, "m={m} disagreements={}", report.len());
                    for d in &report {
                        let entries: Vec<String> =
                            d.pi.entries().iter().map(|e| e.to_string()).collect();
                        let _ = writeln!(
                            out,
                            "  pi=({}) predicted_full={} actual_full={}",
                            entries.join(","),
                            d.predicted_full,
                            d.actual_full
                        );
                    }
                }
            }
            let code = if total == 0 { 0 } else { 1 };
            Ok(Output::with_code(out, code))
        }
        Cmd::Universal {
            field,
            n,
            budget,
            porcelain,
        } => {
            let f = parse_field(&field)?;
            match nilcommute::universal_check(n, &f, budget)? {
                nilcommute::UniversalResult::Complete(parts) => {
                    let strs: Vec<String> = parts.iter().map(|p| p.format()).collect();
                    let out = if porcelain {
                        format!("{}\n", strs.join("\t"))
                    } else {
                        let mut s = strs.join("\n");
                        s.push('\n');
                        s
                    };
                    Ok(Output::ok(out))
                }
                nilcommute::UniversalResult::UnknownCells(cells) => {
                    let mut out = String::new();
                    for (a, b) in &cells {
                        let _ = writeln!(out, "unknown\t{}\t{}", a.format(), b.format());
                    }
                    Ok(Output::with_code(out, 2))
                }
            }
        }
        Cmd::NnWitness {
            field,
            n,
            witness_out,
            porcelain,
        } => {
            let f = parse_field(&field)?;
            match nilcommute::nn_witness(n, &f) {
                Ok((m, y)) => {
                    let big = Partition::new(&[n + 1, n - 1])?;
                    let sq = Partition::new(&[n, n])?;
                    decision_output(
                        Verdict::Yes,
                        "nn-construction".to_string(),
                        Some((m, y)),
                        witness_out,
                        porcelain,
                        move |x, y| {
                            Ok(x.nilpotent_partition()? == big
                                && y.nilpotent_partition()? == sq)
                        },
                    )
                }
                Err(Error::NoWitnessExists) => decision_output(
                    Verdict::No,
                    "theorem: nn-criterion".to_string(),
                    None,
                    witness_out,
                    porcelain,
                    |_, _| Ok(true),
                ),
                Err(e) => Err(e),
            }
        }
        Cmd::FieldDependence { p, r, porcelain } => {
            let (lam, mu, n) = nilcommute::field_dependence_pair(p, r)?;
            let out = if porcelain {
                format!("{}\t{}\t{n}\n", lam.format(), mu.format())
            } else {
                format!("lambda={} mu={} n={n}\n", lam.format(), mu.format())
            };
            Ok(Output::ok(out))
        }
        Cmd::TwoPartTable {
            field,
            n,
            budget,
            seed,
            porcelain: _,
        } => {
            let f = parse_field(&field)?;
            let mut pairs: Vec<Partition> = Vec::new();
            for a in n.div_ceil(2)..=n {
                let parts: Vec<u32> = if a == n { vec![n] } else { vec![a, n - a] };
                pairs.push(Partition::new(&parts)?);
            }
            let mut out = String::new();
            let mut unknown = false;
            for lam in &pairs {
                for mu in &pairs {
                    if mu < lam {
                        continue;
                    }
                    let v = nilcommute::decide(lam, mu, &f, budget, seed)?;
                    let oracle = match nilcommute::theorem_oracle(lam, mu, &f)? {
                        nilcommute::Coverage::Yes(name) => format!("yes:{name}"),
                        nilcommute::Coverage::No(name) => format!("no:{name}"),
                        nilcommute::Coverage::NotCovered => "not-covered".to_string(),
                    };
                    if v.verdict == Verdict::Unknown {
                        unknown = true;
                    }
                    let _ = writeln!(
                        out,
                        "{}\t{}\t{}\t{}\t{}",
                        lam.format(),
                        mu.format(),
                        v.verdict,
                        v.method,
                        oracle
                    );
                }
            }
            Ok(Output::with_code(out, if unknown { 2 } else { 0 }))
        }
    }
}
