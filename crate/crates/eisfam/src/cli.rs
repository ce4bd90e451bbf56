//! Command-line driver. Exit codes: 0 success, 1 usage/config error,
//! 2 assertion or bound violation, 3 precision exhaustion.

use crate::arith::DirichletCharacter;
use crate::family::{
    self, counterexample, formal_hauptmodul, formal_katz, formal_w_expansion, rescaled_reduction,
    verify_bound, BoundConstant,
};
use crate::forms::{self, KatzBasis};
use crate::report::{self, RunConfig};
use crate::vand::{f_bound, NodeSet};
use crate::{Error, Rat, Result};
use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::path::PathBuf;

/// Environment variable naming the default output directory for `--out`.
pub const OUT_DIR_ENV: &str = "EISFAM_OUT_DIR";

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VIOLATION: i32 = 2;
pub const EXIT_PRECISION: i32 = 3;

#[derive(Parser)]
#[command(name = "eisfam", version, about = "Eisenstein family overconvergence experiments")]
pub struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Vandermonde denominators over p-adic units
    #[command(subcommand)]
    Vand(VandCmd),
    /// Eisenstein series, Miller blocks, Katz decompositions
    #[command(subcommand)]
    Forms(FormsCmd),
    /// Family tables, bound checks, the counterexample, U matrices
    #[command(subcommand)]
    Family(FamilyCmd),
}

#[derive(Subcommand)]
enum VandCmd {
    /// Print the sharp denominator exponent f(n)
    F {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u64,
    },
    /// Optimal-set equality and the random lower-bound suite
    Check {
        #[arg(long)]
        p: u64,
        #[arg(long = "max-n")]
        max_n: u64,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum FormsCmd {
    /// Level-1 Eisenstein series E_k
    Eis {
        #[arg(long)]
        k: u64,
        #[arg(long, default_value_t = 10)]
        prec: usize,
    },
    /// E*_k on Gamma_0(p), or E*_kappa for a conductor-p^2 character
    Estar {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        k: u64,
        #[arg(long, default_value_t = 10)]
        prec: usize,
        /// JSON file {"p", "k0", "images": [[g, e], ...]}
        #[arg(long = "char-spec")]
        char_spec: Option<PathBuf>,
    },
    /// Miller block B_i
    Miller {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        i: u64,
        #[arg(long)]
        prec: Option<usize>,
    },
    /// Katz decomposition of E*_k / V(E*_k)
    Katz {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        depth: u64,
    },
}

#[derive(Args)]
struct TableArgs {
    #[arg(long)]
    p: u64,
    /// q-rows of the interpolated table
    #[arg(long)]
    rows: usize,
    /// degree in w
    #[arg(long)]
    wdeg: usize,
    /// p-adic working precision M
    #[arg(long)]
    prec: i64,
    /// change basis: katz or hauptmodul (omit for the raw a_nj table)
    #[arg(long)]
    basis: Option<String>,
    /// Katz depth / Hauptmodul row count (defaults chosen from rows)
    #[arg(long)]
    depth: Option<u64>,
    /// output file (JSON; a .csv valuation table is written alongside)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum FamilyCmd {
    /// Interpolate a_nj and optionally change basis
    Table(TableArgs),
    /// Check a serialized table against an overconvergence constant
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        /// thmA, prop34, or an explicit rational a/b
        #[arg(long)]
        constant: String,
    },
    /// The conductor-25 counterexample (v_5(a_10) = 1)
    Counterexample {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 13)]
        count: usize,
        #[arg(long, default_value_t = 14)]
        qprec: usize,
    },
    /// U_p matrix on powers of the Hauptmodul
    Umatrix {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        size: usize,
        /// classical weight ((p-1)|k)
        #[arg(long)]
        weight: Option<u64>,
        /// JSON character spec (see `forms estar`)
        #[arg(long = "char-spec")]
        char_spec: Option<PathBuf>,
        /// also report Newton-polygon slopes
        #[arg(long)]
        slopes: bool,
    },
    /// Rescaled reduction of the t-coefficients at a wild character
    Reduce {
        #[arg(long)]
        p: u64,
        #[arg(long = "char-spec")]
        char_spec: PathBuf,
        /// exponent gamma (rational a/b; defaults to d_p)
        #[arg(long)]
        gamma: Option<String>,
        #[arg(long, default_value_t = 13)]
        count: usize,
    },
}

fn parse_rat(s: &str) -> Result<Rat> {
    let parse_int = |t: &str| {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::BadConfig(format!("not a rational: {s}")))
    };
    match s.split_once('/') {
        Some((a, b)) => Ok(Rat::new(parse_int(a)?, parse_int(b)?)),
        None => Ok(Rat::from_integer(parse_int(s)?)),
    }
}

fn parse_constant(s: &str) -> Result<BoundConstant> {
    match s {
        "thmA" => Ok(BoundConstant::ThmA),
        "prop34" => Ok(BoundConstant::Prop34),
        other => Ok(BoundConstant::Custom(parse_rat(other)?)),
    }
}

#[derive(serde::Deserialize)]
struct CharSpec {
    p: u64,
    k0: u64,
    images: Vec<(u64, u64)>,
}

fn load_char_spec(path: &PathBuf) -> Result<(u64, u64, DirichletCharacter)> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::BadConfig(format!("cannot read {}: {e}", path.display())))?;
    let spec: CharSpec = serde_json::from_str(&text)
        .map_err(|e| Error::BadConfig(format!("bad character spec: {e}")))?;
    let chi = DirichletCharacter::from_generator_images(spec.p, &spec.images)?;
    Ok((spec.p, spec.k0, chi))
}

fn resolve_out(path: &PathBuf) -> PathBuf {
    if path.is_relative() {
        if let Ok(dir) = std::env::var(OUT_DIR_ENV) {
            return PathBuf::from(dir).join(path);
        }
    }
    path.clone()
}

fn emit(value: &serde_json::Value, out: Option<&PathBuf>) -> Result<()> {
    let text = serde_json::to_string_pretty(value).unwrap();
    match out {
        None => {
            println!("{text}");
            Ok(())
        }
        Some(p) => {
            let p = resolve_out(p);
            if let Some(dir) = p.parent() {
                if !dir.as_os_str().is_empty() {
                    std::fs::create_dir_all(dir)
                        .map_err(|e| Error::BadConfig(format!("cannot create {dir:?}: {e}")))?;
                }
            }
            std::fs::write(&p, text + "\n")
                .map_err(|e| Error::BadConfig(format!("cannot write {}: {e}", p.display())))
        }
    }
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::PrecisionExhausted { .. } | Error::InsufficientQPrecision { .. } => EXIT_PRECISION,
        _ => EXIT_USAGE,
    }
}

/// Parse the command line and run; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.cmd) {
        Ok(code) => code,
        Err(e) => {
            let code = exit_code_for(&e);
            eprintln!(
                "{}",
                serde_json::json!({ "error": e.to_string(), "exit_code": code })
            );
            code
        }
    }
}

fn dispatch(cmd: Command) -> Result<i32> {
    match cmd {
        Command::Vand(v) => run_vand(v),
        Command::Forms(f) => run_forms(f),
        Command::Family(f) => run_family(f),
    }
}

fn run_vand(cmd: VandCmd) -> Result<i32> {
    match cmd {
        VandCmd::F { p, n } => {
            if !matches!(p, 5 | 7 | 13) {
                return Err(Error::UnsupportedPrime(p));
            }
            println!("{}", f_bound(p, n));
            Ok(EXIT_OK)
        }
        VandCmd::Check { p, max_n, seed } => {
            if !matches!(p, 5 | 7 | 13) {
                return Err(Error::UnsupportedPrime(p));
            }
            let mut bad = 0usize;
            for n in 1..=max_n {
                if NodeSet::optimal(p, n).max_v() != f_bound(p, n) {
                    eprintln!("optimal set misses f({n})");
                    bad += 1;
                }
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..200 {
                let size = rng.gen_range(1..=12usize);
                let mut nodes = Vec::new();
                while nodes.len() < size {
                    let x = BigInt::from(rng.gen_range(1..=10_000u64));
                    if (&x % p) != BigInt::from(0u64) && !nodes.contains(&x) {
                        nodes.push(x);
                    }
                }
                let s = NodeSet::new(p, nodes)?;
                if s.max_v() < f_bound(p, size as u64) {
                    eprintln!("random subset beats the lower bound at size {size}");
                    bad += 1;
                }
            }
            println!(
                "{}",
                serde_json::json!({ "p": p, "max_n": max_n, "seed": seed, "violations": bad })
            );
            Ok(if bad == 0 { EXIT_OK } else { EXIT_VIOLATION })
        }
    }
}

fn run_forms(cmd: FormsCmd) -> Result<i32> {
    match cmd {
        FormsCmd::Eis { k, prec } => {
            let s = forms::eisenstein_level1(k, prec)?;
            emit(&report::qseries_to_json(&s), None)?;
            Ok(EXIT_OK)
        }
        FormsCmd::Estar { p, k, prec, char_spec } => {
            match char_spec {
                None => {
                    let s = forms::eisenstein_star_classical(p, k, prec)?;
                    emit(&report::qseries_to_json(&s), None)?;
                }
                Some(path) => {
                    let (cp, k0, chi) = load_char_spec(&path)?;
                    if cp != p {
                        return Err(Error::BadConfig("character spec prime mismatch".into()));
                    }
                    let s = forms::eisenstein_star_character(p, k0, &chi, prec)?;
                    let coeffs: Vec<serde_json::Value> =
                        s.coeffs().iter().map(|c| c.to_json()).collect();
                    emit(&serde_json::json!({ "prec": s.prec(), "coeffs": coeffs }), None)?;
                }
            }
            Ok(EXIT_OK)
        }
        FormsCmd::Miller { p, i, prec } => {
            if !matches!(p, 5 | 7 | 13) {
                return Err(Error::UnsupportedPrime(p));
            }
            let d = forms::dim_mk((i * (p - 1)) as i64) as usize;
            let prec = prec.unwrap_or(d + 5).max(d.max(1));
            let blk = forms::miller_basis(p, i, prec)?;
            emit(
                &serde_json::json!({
                    "p": p,
                    "i": i,
                    "j_start": blk.j_start,
                    "forms": blk.forms.iter().map(report::qseries_to_json).collect::<Vec<_>>(),
                }),
                None,
            )?;
            Ok(EXIT_OK)
        }
        FormsCmd::Katz { p, k, depth } => {
            let total = forms::dim_mk((depth * (p - 1)) as i64) as usize;
            let basis = KatzBasis::new(p, depth, total.max(1))?;
            let f = family::classical_ratio(p, k, total.max(1))?;
            let x = basis.decompose(&f)?;
            emit(&report::katz_to_json(p, &x), None)?;
            Ok(EXIT_OK)
        }
    }
}

fn run_family(cmd: FamilyCmd) -> Result<i32> {
    match cmd {
        FamilyCmd::Table(a) => {
            let mut cfg = RunConfig::new(a.p);
            cfg.q_precision = Some(a.rows);
            cfg.w_degree = Some(a.wdeg);
            cfg.padic_precision = Some(a.prec);
            cfg.basis = Some(a.basis.clone().unwrap_or_else(|| "q".into()));
            let base = formal_w_expansion(a.p, a.rows, a.wdeg, a.prec)?;
            let table = match a.basis.as_deref() {
                None | Some("q") => base,
                Some("katz") => {
                    let depth = a.depth.unwrap_or_else(|| {
                        // deepest I with dim M_{I(p-1)} <= rows
                        let mut i = 0;
                        while forms::dim_mk(((i + 1) * (a.p - 1)) as i64) as usize <= a.rows {
                            i += 1;
                        }
                        i
                    });
                    cfg.katz_depth = Some(depth);
                    formal_katz(&base, depth)?
                }
                Some("hauptmodul") => formal_hauptmodul(&base, a.depth.unwrap_or(a.rows as u64) as usize)?,
                Some(other) => {
                    return Err(Error::BadConfig(format!("unknown basis {other}")));
                }
            };
            emit(&report::table_to_json(&table, &cfg), a.out.as_ref())?;
            if let Some(out) = &a.out {
                let csv = resolve_out(out).with_extension("csv");
                std::fs::write(&csv, report::table_to_csv(&table))
                    .map_err(|e| Error::BadConfig(format!("cannot write {}: {e}", csv.display())))?;
            }
            Ok(EXIT_OK)
        }
        FamilyCmd::Verify { input, constant } => {
            let text = std::fs::read_to_string(&input)
                .map_err(|e| Error::BadConfig(format!("cannot read {}: {e}", input.display())))?;
            let value: serde_json::Value = serde_json::from_str(&text)
                .map_err(|e| Error::BadConfig(format!("bad table json: {e}")))?;
            let table = report::table_from_json(&value)?;
            let c = parse_constant(&constant)?;
            let rep = verify_bound(&table, &c)?;
            let cfg = RunConfig::new(table.p);
            emit(&report::bound_report_to_json(&rep, &cfg), None)?;
            Ok(if rep.ok() { EXIT_OK } else { EXIT_VIOLATION })
        }
        FamilyCmd::Counterexample { p, count, qprec } => {
            let rep = counterexample(p, count, qprec)?;
            let mut cfg = RunConfig::new(p);
            cfg.q_precision = Some(qprec);
            emit(&report::counterexample_to_json(&rep, &cfg), None)?;
            let exact_one = rep.observed == Rat::from_integer(BigInt::from(1));
            Ok(if rep.refutes && exact_one { EXIT_OK } else { EXIT_VIOLATION })
        }
        FamilyCmd::Umatrix { p, size, weight, char_spec, slopes } => {
            if size == 0 {
                return Err(Error::BadConfig("size must be >= 1".into()));
            }
            match (weight, char_spec) {
                (Some(k), None) => {
                    let m = family::u_matrix_weight_classical(p, k, size)?;
                    let mut doc = report::rational_matrix_to_json(p, &m);
                    if slopes {
                        let s = family::rational_matrix_slopes(p, &m);
                        doc["newton_slopes"] = report::slopes_to_json(&s);
                    }
                    emit(&doc, None)?;
                }
                (None, Some(path)) => {
                    let (cp, k0, chi) = load_char_spec(&path)?;
                    if cp != p {
                        return Err(Error::BadConfig("character spec prime mismatch".into()));
                    }
                    let m = family::u_matrix_weight_character(p, k0, &chi, size)?;
                    let entries: Vec<Vec<serde_json::Value>> = m
                        .iter()
                        .map(|row| row.iter().map(|e| e.to_json()).collect())
                        .collect();
                    let mut doc = serde_json::json!({ "entries": entries });
                    if slopes {
                        let ring = crate::ring::CycloField { p };
                        let cp = family::charpoly(&ring, &m);
                        let vals: Vec<Option<Rat>> = cp.iter().map(|c| c.valuation()).collect();
                        doc["newton_slopes"] =
                            report::slopes_to_json(&family::newton_slopes(&vals));
                    }
                    emit(&doc, None)?;
                }
                (None, None) => {
                    let m = family::u_matrix_weight0(p, size)?;
                    let entries: Vec<Vec<String>> = m
                        .iter()
                        .map(|row| row.iter().map(|e| e.to_string()).collect())
                        .collect();
                    emit(&serde_json::json!({ "entries": entries }), None)?;
                }
                (Some(_), Some(_)) => {
                    return Err(Error::BadConfig(
                        "give either --weight or --char-spec, not both".into(),
                    ));
                }
            }
            Ok(EXIT_OK)
        }
        FamilyCmd::Reduce { p, char_spec, gamma, count } => {
            let (cp, k0, chi) = load_char_spec(&char_spec)?;
            if cp != p {
                return Err(Error::BadConfig("character spec prime mismatch".into()));
            }
            let g = match gamma {
                Some(s) => parse_rat(&s)?,
                None => family::default_gamma(p),
            };
            let rep = rescaled_reduction(p, k0, &chi, &g, count)?;
            let cfg = RunConfig::new(p);
            emit(&report::reduction_to_json(&rep, &cfg), None)?;
            Ok(if rep.positivity_failures.is_empty() { EXIT_OK } else { EXIT_VIOLATION })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rat("11/144").unwrap(), crate::arith::rat(11, 144));
        assert_eq!(parse_rat("3").unwrap(), crate::arith::rat(3, 1));
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn constant_parsing() {
        assert_eq!(parse_constant("thmA").unwrap(), BoundConstant::ThmA);
        assert_eq!(parse_constant("prop34").unwrap(), BoundConstant::Prop34);
        assert_eq!(
            parse_constant("1").unwrap(),
            BoundConstant::Custom(crate::arith::rat(1, 1))
        );
    }
}
