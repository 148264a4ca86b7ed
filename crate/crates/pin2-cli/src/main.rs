//! Command-line access to the equivariant Floer package: single
//! computations, pairwise cobordism comparison, family sweeps, and the
//! chain-level self-check.

use clap::{Args, Parser, Subcommand};
use pin2_core::grading::pretty;
use pin2_core::pipeline::{compare, compute_invariants, CompareVerdict, HfDecomposition};
use pin2_core::report::{build_report, report_markdown, row_csv, row_markdown, Report, CSV_HEADER};
use pin2_core::seifert::{
    brieskorn_normalize, hf_from_tau, tau_function, BrieskornSpec, GradedRoot, SeifertInvariants,
};
use rayon::prelude::*;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "pin2", version, about = "Equivariant Floer homology of Seifert fibered homology spheres")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full report for one space or decomposition.
    Compute {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_parser = ["json", "md"], default_value = "md")]
        format: String,
    },
    /// Homology cobordism obstruction verdict for two inputs.
    Compare {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_parser = ["json", "md"], default_value = "md")]
        format: String,
    },
    /// Sweep a one-parameter Brieskorn family, one row per k.
    Family {
        /// Pattern like 2,5,20k+11 (one affine parameter, last entry).
        #[arg(long)]
        pattern: String,
        /// Inclusive range lo..hi for k.
        #[arg(long, default_value = "1..3")]
        k: String,
        #[arg(long, value_parser = ["json", "md", "csv"], default_value = "md")]
        format: String,
    },
    /// Seeded random equivalence check of the chain oracle against the
    /// closed-form pipeline.
    OracleCheck {
        #[arg(long)]
        cases: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 40)]
        max_degree: i64,
    },
}

#[derive(Args)]
struct InputArgs {
    /// Brieskorn multiplicities, e.g. 2,3,7 (repeatable for compare).
    #[arg(long, action = clap::ArgAction::Append)]
    brieskorn: Vec<String>,
    /// Seifert invariants as JSON, inline or a file path (repeatable).
    #[arg(long, action = clap::ArgAction::Append)]
    seifert: Vec<String>,
    /// Decomposition {"s":..,"pairs":[[d,n],..],"j":..}, inline or file.
    #[arg(long, action = clap::ArgAction::Append)]
    hf: Vec<String>,
}

struct Resolved {
    name: String,
    echo: serde_json::Value,
    dec: HfDecomposition,
    root_projective: Option<bool>,
}

#[derive(Debug)]
enum CliError {
    Input(String),
    Internal(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Internal(_) => 3,
        }
    }
}

fn read_inline_or_file(arg: &str) -> Result<String, CliError> {
    if arg.trim_start().starts_with('{') {
        Ok(arg.to_string())
    } else {
        std::fs::read_to_string(arg)
            .map_err(|e| CliError::Input(format!("cannot read {arg}: {e}")))
    }
}

fn resolve_brieskorn(arg: &str) -> Result<Resolved, CliError> {
    let parts: Result<Vec<u64>, _> = arg.split(',').map(|p| p.trim().parse()).collect();
    let a = parts.map_err(|_| CliError::Input(format!("bad multiplicity list {arg:?}")))?;
    let spec = BrieskornSpec { a: a.clone() };
    let inv = brieskorn_normalize(&spec).map_err(|e| CliError::Input(e.to_string()))?;
    let tau = tau_function(&inv).map_err(|e| CliError::Input(e.to_string()))?;
    let (dec, _) = hf_from_tau(&tau).map_err(|e| CliError::Internal(e.to_string()))?;
    let root = GradedRoot::from_tau(&tau);
    let name = format!(
        "Sigma({})",
        a.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
    );
    Ok(Resolved {
        name,
        echo: serde_json::json!({ "brieskorn": a }),
        dec,
        root_projective: Some(root.is_projective_type().0),
    })
}

fn resolve_seifert(arg: &str) -> Result<Resolved, CliError> {
    let text = read_inline_or_file(arg)?;
    #[derive(serde::Deserialize)]
    struct Outer {
        seifert: SeifertInvariants,
    }
    let inv: SeifertInvariants = serde_json::from_str::<Outer>(&text)
        .map(|o| o.seifert)
        .or_else(|_| serde_json::from_str(&text))
        .map_err(|e| CliError::Input(format!("bad seifert JSON: {e}")))?;
    let tau = tau_function(&inv).map_err(|e| CliError::Input(e.to_string()))?;
    let (dec, _) = hf_from_tau(&tau).map_err(|e| CliError::Internal(e.to_string()))?;
    let root = GradedRoot::from_tau(&tau);
    Ok(Resolved {
        name: format!("Seifert(b={}, {:?})", inv.b, inv.fibers),
        echo: serde_json::json!({ "seifert": inv }),
        dec,
        root_projective: Some(root.is_projective_type().0),
    })
}

fn resolve_hf(arg: &str) -> Result<Resolved, CliError> {
    let text = read_inline_or_file(arg)?;
    let dec: HfDecomposition =
        serde_json::from_str(&text).map_err(|e| CliError::Input(format!("bad decomposition JSON: {e}")))?;
    dec.validate().map_err(|e| CliError::Input(e.to_string()))?;
    let echo: serde_json::Value = serde_json::from_str(&text).unwrap_or(serde_json::Value::Null);
    Ok(Resolved {
        name: "decomposition".into(),
        echo: serde_json::json!({ "hf": echo }),
        dec,
        root_projective: None,
    })
}

fn resolve_all(input: &InputArgs) -> Result<Vec<Resolved>, CliError> {
    let mut out = Vec::new();
    for b in &input.brieskorn {
        out.push(resolve_brieskorn(b)?);
    }
    for s in &input.seifert {
        out.push(resolve_seifert(s)?);
    }
    for h in &input.hf {
        out.push(resolve_hf(h)?);
    }
    Ok(out)
}

fn make_report(r: &Resolved) -> Result<Report, CliError> {
    build_report(r.echo.clone(), &r.dec, r.root_projective)
        .map_err(|e| CliError::Input(e.to_string()))
}

fn cmd_compute(input: &InputArgs, format: &str) -> Result<(), CliError> {
    let resolved = resolve_all(input)?;
    if resolved.len() != 1 {
        return Err(CliError::Input(format!(
            "compute needs exactly one input, got {}",
            resolved.len()
        )));
    }
    let report = make_report(&resolved[0])?;
    match format {
        "json" => println!("{}", serde_json::to_string_pretty(&report).unwrap()),
        _ => print!("{}", report_markdown(&report, &resolved[0].name)),
    }
    Ok(())
}

fn cmd_compare(input: &InputArgs, format: &str) -> Result<(), CliError> {
    let resolved = resolve_all(input)?;
    if resolved.len() != 2 {
        return Err(CliError::Input(format!(
            "compare needs exactly two inputs, got {}",
            resolved.len()
        )));
    }
    let verdict = compare(&resolved[0].dec, &resolved[1].dec)
        .map_err(|e| CliError::Input(e.to_string()))?;
    match format {
        "json" => {
            let v = serde_json::json!({
                "left": resolved[0].echo,
                "right": resolved[1].echo,
                "result": verdict,
            });
            println!("{}", serde_json::to_string_pretty(&v).unwrap());
        }
        _ => match &verdict {
            CompareVerdict::NoObstruction => {
                println!("NO_OBSTRUCTION: all computed cobordism invariants agree")
            }
            CompareVerdict::Obstructed { differing } => {
                println!("OBSTRUCTED: differing invariants: {}", differing.join(", "));
                for r in &resolved {
                    let inv = compute_invariants(&r.dec).unwrap();
                    println!(
                        "  {}: (alpha, beta, gamma, delta, mu_bar) = ({}, {}, {}, {}, {})",
                        r.name,
                        pretty(inv.alpha),
                        pretty(inv.beta),
                        pretty(inv.gamma),
                        pretty(inv.delta),
                        pretty(inv.mu_bar)
                    );
                }
            }
        },
    }
    Ok(())
}

/// Pattern grammar: a,b,ck+d or a,b,ck-d (one affine parameter in the
/// last coordinate).
fn parse_pattern(pattern: &str) -> Result<(Vec<u64>, i64, i64), CliError> {
    let parts: Vec<&str> = pattern.split(',').map(|p| p.trim()).collect();
    if parts.len() < 2 {
        return Err(CliError::Input("pattern needs at least two entries".into()));
    }
    let mut head = Vec::new();
    for p in &parts[..parts.len() - 1] {
        head.push(
            p.parse::<u64>()
                .map_err(|_| CliError::Input(format!("bad multiplicity {p:?}")))?,
        );
    }
    let last = parts[parts.len() - 1].replace(' ', "");
    let kpos = last
        .find('k')
        .ok_or_else(|| CliError::Input("last entry must contain k, e.g. 20k+11".into()))?;
    let coeff: i64 = if kpos == 0 {
        1
    } else {
        last[..kpos]
            .parse()
            .map_err(|_| CliError::Input(format!("bad coefficient in {last:?}")))?
    };
    let rest = &last[kpos + 1..];
    let offset: i64 = if rest.is_empty() {
        0
    } else {
        rest.parse()
            .map_err(|_| CliError::Input(format!("bad offset in {last:?}")))?
    };
    Ok((head, coeff, offset))
}

fn parse_range(k: &str) -> Result<(i64, i64), CliError> {
    let (lo, hi) = k
        .split_once("..")
        .ok_or_else(|| CliError::Input("k range must look like 1..3".into()))?;
    let lo: i64 = lo.trim().parse().map_err(|_| CliError::Input("bad k lower bound".into()))?;
    let hi: i64 = hi.trim().parse().map_err(|_| CliError::Input("bad k upper bound".into()))?;
    Ok((lo, hi))
}

fn cmd_family(pattern: &str, k: &str, format: &str) -> Result<(), CliError> {
    let (head, coeff, offset) = parse_pattern(pattern)?;
    let (lo, hi) = parse_range(k)?;
    let ks: Vec<i64> = (lo..=hi).collect();
    let rows: Vec<(i64, Result<(String, Report), String>)> = ks
        .par_iter()
        .map(|&k| {
            let last = coeff * k + offset;
            if last < 1 {
                return (k, Err(format!("k={k}: last entry {last} is not positive")));
            }
            let mut a = head.clone();
            a.push(last as u64);
            let row = resolve_brieskorn(
                &a.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","),
            )
            .and_then(|r| Ok((r.name.clone(), make_report(&r)?)))
            .map_err(|e| match e {
                CliError::Input(m) | CliError::Internal(m) => format!("k={k}: {m}"),
            });
            (k, row)
        })
        .collect();
    match format {
        "json" => {
            let items: Vec<serde_json::Value> = rows
                .iter()
                .map(|(k, r)| match r {
                    Ok((name, rep)) => serde_json::json!({"k": k, "name": name, "report": rep}),
                    Err(m) => serde_json::json!({"k": k, "skipped": m}),
                })
                .collect();
            println!("{}", serde_json::to_string_pretty(&items).unwrap());
        }
        "csv" => {
            print!("{CSV_HEADER}");
            for (_, r) in &rows {
                match r {
                    Ok((name, rep)) => print!("{}", row_csv(rep, name)),
                    Err(m) => eprintln!("skipped: {m}"),
                }
            }
        }
        _ => {
            println!("| Y | SWFH^G | alpha | beta | gamma | delta |");
            println!("|---|--------|-------|------|-------|-------|");
            let mut notes = Vec::new();
            for (_, r) in &rows {
                match r {
                    Ok((name, rep)) => {
                        print!("{}", row_markdown(rep, name));
                        for n in pin2_core::report::q_notes(&rep.swfhg) {
                            notes.push(format!("{name}: {n}"));
                        }
                    }
                    Err(m) => eprintln!("skipped: {m}"),
                }
            }
            for n in notes {
                println!("- {n}");
            }
        }
    }
    Ok(())
}

fn cmd_oracle_check(cases: usize, seed: u64, max_degree: i64) -> Result<(), CliError> {
    if cases < 1 {
        return Err(CliError::Input("cases must be at least 1".into()));
    }
    let failures: Vec<_> = (0..cases)
        .into_par_iter()
        .filter_map(|case| {
            let mut rng = pin2_core::sampler::SplitMix64(
                seed ^ (case as u64).wrapping_mul(0x9e3779b97f4a7c15),
            );
            let dec = pin2_core::sampler::random_decomposition(&mut rng);
            pin2_core::sampler::check_one(&dec, max_degree)
                .err()
                .map(|what| (case, dec, what))
        })
        .collect();
    if failures.is_empty() {
        println!("oracle-check: {cases} cases, seed {seed}, all equivalent through degree {max_degree}");
        Ok(())
    } else {
        for (case, dec, what) in &failures {
            println!("FAIL case {case}: s={} pairs={:?}", pretty(dec.s), dec.pairs);
            println!("  {what}");
            println!("  reproduce: pin2 oracle-check --cases 1 --seed {}", seed ^ (*case as u64).wrapping_mul(0x9e3779b97f4a7c15));
        }
        Err(CliError::Internal(format!("{} of {} cases failed", failures.len(), cases)))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Compute { input, format } => cmd_compute(input, format),
        Command::Compare { input, format } => cmd_compare(input, format),
        Command::Family { pattern, k, format } => cmd_family(pattern, k, format),
        Command::OracleCheck { cases, seed, max_degree } => {
            cmd_oracle_check(*cases, *seed, *max_degree)
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            match &e {
                CliError::Input(m) => eprintln!("input error: {m}"),
                CliError::Internal(m) => eprintln!("internal error: {m}"),
            }
            ExitCode::from(e.code())
        }
    }
}
