//! Command-line front end. Each subcommand builds a [`Report`]; text goes to
//! the writer unless the JSON report is sent to stdout.
//!
//! Exit codes: 0 on a decision or computed result, 2 on `ABORT_UNKNOWN` or a
//! budget refusal, 3 on bad input.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::field::{counts, load_zero_table, make_field, psi_explicit, s_trunc, ZeroTable};
use crate::kamhn::{
    amplify, default_a_count, gen_elkies, prime_census, t_range, Answer, DEFAULT_DECIDE_BUDGET,
};
use crate::newton::{normalized_volume, support_cloud};
use crate::nullcert::{
    associated_field, cert_search_with_budget, check_cert, cool_bounds, stride_constants,
    unired_size_bounds, verify_unired, CertError, Regime, StrideConfig, UnivariateReduction,
    DEFAULT_MATRIX_BUDGET,
};
use crate::poly::{parse_system, PolySystem, UniPoly};
use crate::report::{real, Report};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ABORT: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "kamhn",
    version,
    about = "Randomized Nullstellensatz decisions by prime sampling"
)]
pub struct Cli {
    /// Write the JSON report to PATH, or to stdout when PATH is omitted.
    #[arg(long, global = true, num_args = 0..=1, default_missing_value = "-", value_name = "PATH")]
    pub json: Option<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide whether a system has a complex root.
    Decide {
        file: PathBuf,
        #[arg(long, default_value = "uncond")]
        regime: Regime,
        #[arg(long = "tF")]
        t_f: Option<u64>,
        #[arg(long = "aCount")]
        a_count: Option<u64>,
        #[arg(long = "CF")]
        c_f: Option<u64>,
        #[arg(long, default_value_t = 1.0)]
        kappa: f64,
        #[arg(long = "o-const", default_value_t = 1.0)]
        o_const: f64,
        /// Known Nullstellensatz constant for the bad-prime count.
        #[arg(long = "af-hint")]
        af_hint: Option<BigInt>,
        /// Univariate field file for the gipit regime.
        #[arg(long)]
        field: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        rounds: u32,
        #[arg(long, default_value_t = DEFAULT_DECIDE_BUDGET)]
        budget: u64,
    },
    /// List the primes up to a bound modulo which the system has a root.
    Census {
        file: PathBuf,
        #[arg(long)]
        bound: u64,
        #[arg(long = "aCount")]
        a_count: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_DECIDE_BUDGET)]
        budget: u64,
    },
    /// Prime-ideal counting functions at powers of two up to x, and at x.
    Count {
        #[arg(long)]
        field: PathBuf,
        #[arg(long)]
        x: u64,
    },
    /// Certificate caps, volume, size and univariate-reduction caps.
    Bounds {
        file: PathBuf,
        #[arg(long = "o-const", default_value_t = 1.0)]
        o_const: f64,
        /// Use max(D,1)^n when the dimension is above the exact-volume cap.
        #[arg(long)]
        estimate: bool,
    },
    /// Search for an integer Nullstellensatz certificate.
    Cert {
        file: PathBuf,
        #[arg(long)]
        degcap: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_MATRIX_BUDGET)]
        budget: u64,
    },
    /// Check a univariate reduction against a system.
    VerifyUr {
        file: PathBuf,
        #[arg(long)]
        reduction: PathBuf,
    },
    /// Truncated explicit formula for psi(x) against the sieve value.
    Zeros {
        /// Zero-ordinate table; the bundled first 100 zeros when omitted.
        #[arg(long)]
        table: Option<PathBuf>,
        #[arg(long)]
        x: f64,
        #[arg(long = "T")]
        t: f64,
    },
    /// Print the Elkies system for the n-th primorial.
    GenElkies {
        #[arg(long)]
        n: usize,
    },
}

/// Failure with its exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

fn input_err(e: impl std::fmt::Display) -> CliError {
    CliError {
        code: EXIT_INPUT,
        message: e.to_string(),
    }
}

fn budget_err(e: impl std::fmt::Display) -> CliError {
    CliError {
        code: EXIT_ABORT,
        message: e.to_string(),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| input_err(format!("{}: {e}", path.display())))
}

fn load_system(path: &Path) -> Result<(String, PolySystem), CliError> {
    let text = read(path)?;
    let sys = parse_system(&text).map_err(|e| input_err(format!("{}: {e}", path.display())))?;
    Ok((text, sys))
}

fn load_field_poly(path: &Path) -> Result<(String, UniPoly), CliError> {
    let (text, sys) = load_system(path)?;
    let f = sys.polys()[0]
        .to_univariate()
        .ok_or_else(|| input_err("field file must hold a univariate polynomial"))?;
    Ok((text, f))
}

/// Parses arguments and runs; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = write!(out, "{e}");
            return code;
        }
    };
    match execute(&cli.command) {
        Ok((report, text, code)) => {
            let to_stdout = cli.json.as_deref() == Some("-");
            if !to_stdout {
                let _ = out.write_all(text.as_bytes());
            }
            match cli.json.as_deref() {
                Some("-") => {
                    let _ = writeln!(out, "{}", report.to_json());
                }
                Some(path) => {
                    if let Err(e) = std::fs::write(path, report.to_json()) {
                        let _ = writeln!(out, "error: cannot write {path}: {e}");
                        return EXIT_INPUT;
                    }
                }
                None => {}
            }
            code
        }
        Err(e) => {
            let _ = writeln!(out, "error: {}", e.message);
            e.code
        }
    }
}

type Outcome = Result<(Report, String, i32), CliError>;

fn execute(cmd: &Command) -> Outcome {
    match cmd {
        Command::Decide {
            file,
            regime,
            t_f,
            a_count,
            c_f,
            kappa,
            o_const,
            af_hint,
            field,
            seed,
            rounds,
            budget,
        } => {
            let (text, sys) = load_system(file)?;
            let regime = if t_f.is_some() || a_count.is_some() || c_f.is_some() {
                Regime::Manual
            } else {
                *regime
            };
            let manual = match (regime, t_f, a_count, c_f) {
                (Regime::Manual, Some(t), Some(a), Some(c)) => Some((*t, *a, *c)),
                (Regime::Manual, ..) => {
                    return Err(input_err("manual regime needs --tF, --aCount and --CF"))
                }
                _ => None,
            };
            let k = match field {
                Some(p) => Some(make_field(&load_field_poly(p)?.1).map_err(input_err)?),
                None => associated_field(&sys),
            };
            let cfg = StrideConfig {
                regime,
                kappa: *kappa,
                o_const: *o_const,
                manual,
                af_hint: af_hint.clone(),
                ..StrideConfig::default()
            };
            let sc = stride_constants(&sys, k.as_ref(), &cfg).map_err(input_err)?;
            if *rounds == 0 {
                return Err(input_err("--rounds must be at least 1"));
            }
            let d = amplify(&sys, &sc, *rounds, *seed, *budget);
            let (lo, span) = t_range(&sc);
            let mut r = Report::new("decide", text.as_bytes());
            r.param("regime", serde_json::to_value(regime).expect("regime"))
                .param("seed", seed.to_string())
                .param("rounds", *rounds)
                .param("budget", budget.to_string());
            r.results = json!({
                "decision": d,
                "stride_constants": sc,
                "t_range": { "first": lo.to_string(), "count": span.to_string() },
            });
            r.diagnostics = d.diagnostics.clone();
            if sc.saturated {
                r.diagnostics.push("C_F saturated at 2^64 - 1".into());
            }
            let mut t = format!(
                "answer: {:?}\nt: {} (range {}..={})\nC_F: {}\ntrials: {}\n",
                d.answer,
                d.t_chosen,
                lo,
                u128::from(lo) + span - 1,
                sc.c_f,
                d.trials
            );
            if let Some(w) = &d.witness {
                t += &format!("witness: p = {}, point = {:?}\n", w.p, w.point);
            }
            for m in &d.diagnostics {
                t += &format!("note: {m}\n");
            }
            let code = if d.answer == Answer::AbortUnknown {
                EXIT_ABORT
            } else {
                EXIT_OK
            };
            Ok((r, t, code))
        }
        Command::Census {
            file,
            bound,
            a_count,
            budget,
        } => {
            let (text, sys) = load_system(file)?;
            if *bound < 2 {
                return Err(input_err("--bound must be at least 2"));
            }
            let a = a_count.unwrap_or_else(|| default_a_count(&sys));
            let c = prime_census(&sys, *bound, *budget, a);
            let mut r = Report::new("census", text.as_bytes());
            r.param("bound", bound.to_string())
                .param("budget", budget.to_string());
            r.results = serde_json::to_value(&c).expect("census");
            if !c.complete {
                r.diagnostics.push(format!(
                    "{} primes exceeded the search budget",
                    c.unknown_primes.len()
                ));
            }
            let t = format!(
                "bad primes ({}): {:?}\na_count bound: {}\nwithin bound: {}\ncomplete: {}\n",
                c.count, c.bad_primes, c.a_count_bound, c.within_bound, c.complete
            );
            Ok((r, t, if c.complete { EXIT_OK } else { EXIT_ABORT }))
        }
        Command::Count { field, x } => {
            let (text, f) = load_field_poly(field)?;
            let k = make_field(&f).map_err(input_err)?;
            if *x < 2 {
                return Err(input_err("--x must be at least 2"));
            }
            let mut xs: Vec<u64> = std::iter::successors(Some(2u64), |v| v.checked_mul(2))
                .take_while(|v| v <= x)
                .collect();
            if xs.last() != Some(x) {
                xs.push(*x);
            }
            let series = match crate::field::CountSeries::build(&k, *x) {
                Ok(s) => s,
                Err(e @ crate::field::FieldError::BudgetExceeded { .. }) => {
                    return Err(budget_err(e))
                }
                Err(e) => return Err(input_err(e)),
            };
            let snaps: Vec<_> = xs.iter().map(|&v| series.at(v)).collect();
            let mut r = Report::new("count", text.as_bytes());
            r.param("x", x.to_string());
            r.results = json!({
                "field": {
                    "f": k.f().coeffs().iter().map(ToString::to_string).collect::<Vec<_>>(),
                    "n_k": k.n_k(),
                    "disc": k.disc().to_string(),
                    "excluded": k.excluded().iter().map(ToString::to_string).collect::<Vec<_>>(),
                    "log_d": real(k.log_d()),
                },
                "series": snaps,
            });
            r.diagnostics
                .push("counts use Z[x]/<f>; primes dividing lc(f)*disc(f) are excluded".into());
            let mut t = format!(
                "n_K = {}, disc = {}\n{:>12} {:>8} {:>8} {:>8} {:>16} {:>16}\n",
                k.n_k(),
                k.disc(),
                "x",
                "N_f",
                "pi1",
                "piK",
                "psiK",
                "thetaK"
            );
            for s in &snaps {
                t += &format!(
                    "{:>12} {:>8} {:>8} {:>8} {:>16.6} {:>16.6}\n",
                    s.x, s.n_f, s.pi1, s.pi_k, s.psi_k, s.theta_k
                );
            }
            Ok((r, t, EXIT_OK))
        }
        Command::Bounds {
            file,
            o_const,
            estimate,
        } => {
            let (text, sys) = load_system(file)?;
            let cb = cool_bounds(&sys, *estimate).map_err(input_err)?;
            let ur = unired_size_bounds(&sys, *o_const).ok();
            let mut r = Report::new("bounds", text.as_bytes());
            r.param("o_const", real(*o_const))
                .param("estimate", *estimate);
            r.results = json!({
                "sigma_f": cb.sigma_f,
                "v_f": cb.v_f.to_string(),
                "cool_bounds": cb,
                "unired_bounds": ur,
            });
            r.diagnostics.push("logarithms are natural".into());
            if cb.v_f_estimated {
                r.diagnostics
                    .push("V_F replaced by max(D,1)^n above the dimension cap".into());
            }
            if ur.is_some() {
                r.diagnostics
                    .push("unired caps contain unspecified O-constants, scaled by o_const".into());
            }
            let t = format!(
                "sigma(F) = {}\nV_F = {}{}\ndeg cap = {}\nsigma(a_F) cap = {}\n",
                cb.sigma_f,
                cb.v_f,
                if cb.v_f_estimated { " (estimate)" } else { "" },
                cb.deg_cap,
                cb.sigma_af_cap
            );
            Ok((r, t, EXIT_OK))
        }
        Command::Cert {
            file,
            degcap,
            budget,
        } => {
            let (text, sys) = load_system(file)?;
            let cb = cool_bounds(&sys, true).map_err(input_err)?;
            let cap = match degcap {
                Some(c) => *c,
                None => cb
                    .deg_cap
                    .to_u64()
                    .ok_or_else(|| budget_err("degree cap exceeds 64 bits"))?,
            };
            let found = match cert_search_with_budget(&sys, cap, *budget) {
                Ok(c) => c,
                Err(e @ CertError::MatrixBudget { .. }) => return Err(budget_err(e)),
                Err(e) => return Err(input_err(e)),
            };
            let mut r = Report::new("cert", text.as_bytes());
            r.param("degcap", cap.to_string())
                .param("budget", budget.to_string());
            let t = match &found {
                Some(c) => {
                    let check = check_cert(&sys, c, Some(&cb));
                    r.results = json!({ "found": true, "certificate": c, "check": check });
                    let mut t = format!("a_F = {}\n", c.a_f);
                    for (i, g) in c.g.iter().enumerate() {
                        t += &format!("g{} = {}\n", i + 1, g);
                    }
                    t + &format!("identity holds: {}\n", check.identity)
                }
                None => {
                    r.results = json!({ "found": false });
                    format!("no certificate with deg g_i <= {cap}\n")
                }
            };
            Ok((r, t, EXIT_OK))
        }
        Command::VerifyUr { file, reduction } => {
            let (text, sys) = load_system(file)?;
            let red = UnivariateReduction::parse(&read(reduction)?).map_err(input_err)?;
            let ok = verify_unired(&sys, &red);
            let mut r = Report::new("verify-ur", text.as_bytes());
            r.param("reduction", reduction.display().to_string());
            let v_f = support_cloud(&sys)
                .ok()
                .and_then(|c| normalized_volume(&c).ok());
            r.results = json!({ "valid": ok, "v_f": v_f.map(|v| v.to_string()) });
            Ok((r, format!("valid: {ok}\n"), EXIT_OK))
        }
        Command::Zeros { table, x, t } => {
            let (bytes, tab) = match table {
                Some(p) => (
                    read(p)?.into_bytes(),
                    load_zero_table(p).map_err(input_err)?,
                ),
                None => (b"bundled".to_vec(), ZeroTable::bundled()),
            };
            let s = s_trunc(*x, *t, &tab).map_err(input_err)?;
            let psi_e = psi_explicit(*x, &tab).map_err(input_err)?;
            let q = make_field(&UniPoly::x()).expect("x is a valid field");
            let sieve = if *x >= 2.0 {
                counts(&q, *x).map_err(budget_err)?.psi_k
            } else {
                0.0
            };
            let mut r = Report::new("zeros", &bytes);
            r.param("x", real(*x))
                .param("T", real(*t))
                .param("table", tab.source());
            r.results = json!({
                "zeros_used": tab.len(),
                "zeros_below_T": tab.gammas().iter().filter(|&&g| g < *t).count(),
                "s_trunc": real(s),
                "psi_explicit": real(psi_e),
                "psi_sieve": real(sieve),
                "error": real(psi_e - sieve),
            });
            r.diagnostics
                .push("zeros assumed on the critical line".into());
            let text = format!(
                "S(x, T) = {s:.9}\npsi_explicit = {psi_e:.9}\npsi_sieve = {sieve:.9}\nerror = {:.9}\n",
                psi_e - sieve
            );
            Ok((r, text, EXIT_OK))
        }
        Command::GenElkies { n } => {
            let sys = gen_elkies(*n).map_err(budget_err)?;
            let text = sys.to_string();
            let mut r = Report::new("gen-elkies", n.to_string().as_bytes());
            r.param("n", *n);
            r.results = Value::String(text.clone());
            Ok((r, text, EXIT_OK))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tmp(name: &str, body: &str) -> PathBuf {
        let dir = std::env::temp_dir().join(format!("kamhn-cli-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let p = dir.join(name);
        std::fs::write(&p, body).unwrap();
        p
    }

    fn run_str(args: &[&str]) -> (i32, String) {
        let mut buf = Vec::new();
        let code = run(
            std::iter::once("kamhn").chain(args.iter().copied()),
            &mut buf,
        );
        (code, String::from_utf8(buf).unwrap())
    }

    #[test]
    fn decide_manual_json() {
        let f = tmp("elkies2.txt", "x1^6 - 1\nx1 - 6\n");
        let (code, out) = run_str(&[
            "decide",
            f.to_str().unwrap(),
            "--tF",
            "2",
            "--aCount",
            "4",
            "--CF",
            "2",
            "--seed",
            "7",
            "--json",
        ]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["command"], "decide");
        let ans = v["results"]["decision"]["answer"].as_str().unwrap();
        assert!(ans == "NO_COMPLEX_ROOT" || ans == "HAS_COMPLEX_ROOT");
    }

    #[test]
    fn exit_codes() {
        let bad = tmp("bad.txt", "x1 +\n");
        assert_eq!(
            run_str(&["census", bad.to_str().unwrap(), "--bound", "10"]).0,
            EXIT_INPUT
        );
        assert_eq!(
            run_str(&["census", "/nonexistent/file", "--bound", "10"]).0,
            EXIT_INPUT
        );
        let lin = tmp("lin.txt", "x1 - 1\n");
        // unconditional C_F = 2^sigma makes the interval far too wide
        assert_eq!(run_str(&["decide", lin.to_str().unwrap()]).0, EXIT_ABORT);
        assert_eq!(run_str(&["gen-elkies", "--n", "12"]).0, EXIT_ABORT);
        assert_eq!(run_str(&["frobnicate"]).0, EXIT_INPUT);
    }

    #[test]
    fn other_commands_run() {
        let k = tmp("k.txt", "x1^2 + 1\n");
        let (code, out) = run_str(&["count", "--field", k.to_str().unwrap(), "--x", "10"]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("n_K = 2"));
        let sys = tmp("c.txt", "x1^2 - 2\nx1 - 3\n");
        let (code, out) = run_str(&["cert", sys.to_str().unwrap()]);
        assert_eq!(code, 0);
        assert!(out.contains("a_F = 7"), "{out}");
        assert_eq!(run_str(&["bounds", sys.to_str().unwrap()]).0, 0);
        let red = tmp("r.txt", "hhat: x1^2 - 2\nh1: x1\na1: 1\n");
        let one = tmp("one.txt", "x1^2 - 2\n");
        let (_, out) = run_str(&[
            "verify-ur",
            one.to_str().unwrap(),
            "--reduction",
            red.to_str().unwrap(),
        ]);
        assert!(out.contains("valid: true"));
        let (code, out) = run_str(&["zeros", "--x", "1000", "--T", "100"]);
        assert_eq!(code, 0);
        assert!(out.contains("psi_sieve"));
        let (_, out) = run_str(&["gen-elkies", "--n", "2"]);
        assert_eq!(out, "vars: 1\nx1^6 - 1\nx1 - 6\n");
    }
}
