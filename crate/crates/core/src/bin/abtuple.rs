use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use abtuple::audit::audit_claims_with;
use abtuple::certificate::{m_partition, negative_axes, q_basis_certificate, sign_partition};
use abtuple::enumerate::{enumerate, EnumerationJob};
use abtuple::io::{parse_tuple, write_text};
use abtuple::property::{has_property_with, PropertyOptions, DEFAULT_BUDGET};
use abtuple::{
    adequate_basis_decide, classify, generate, verify_classification, Classification, Error, GeneratorSpec,
    GroupElement, GroupTuple, Kind,
};

#[derive(Parser)]
#[command(name = "abtuple", version, about = "Subset-sum properties of tuples in free abelian groups")]
struct Cli {
    /// Elementary-operation budget for exhaustive checks.
    #[arg(long, global = true, env = "ABTUPLE_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: u128,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rank and canonical basis of the generated subgroup.
    Rank { file: PathBuf },
    /// Decide P(r, s).
    Property {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        s: usize,
        file: PathBuf,
    },
    /// Classify a tuple of arity q with 2 <= s < q <= 2s.
    Classify {
        #[arg(long)]
        s: usize,
        file: PathBuf,
    },
    /// Check a classification certificate against a tuple.
    Verify {
        #[arg(long)]
        s: usize,
        file: PathBuf,
        cert_file: PathBuf,
    },
    /// Rational basis certificate with its partitions.
    Qbasis { file: PathBuf },
    /// Decide whether the span has an adequate integer basis.
    AdequateBasis { file: PathBuf },
    /// Check the structural claims on one instance.
    Audit {
        #[arg(long)]
        s: usize,
        file: PathBuf,
    },
    /// Generate a type-A or type-B tuple.
    Generate {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        s: usize,
        /// Number of breakpoints; must match --breaks when both are given.
        #[arg(long)]
        k: Option<usize>,
        /// Comma-separated breakpoints.
        #[arg(long, value_delimiter = ',')]
        breaks: Vec<usize>,
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0)]
        unimodular_bound: u64,
        /// Shuffle positions with this seed.
        #[arg(long)]
        perm_seed: Option<u64>,
        /// Comma-separated vector added to every element.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        translate: Vec<i64>,
        /// Also decide P(2s, s) on the result.
        #[arg(long)]
        check_property: bool,
        /// Emit the text tuple format instead of JSON.
        #[arg(long)]
        text: bool,
    },
    /// Exhaustively scan a canonical universe.
    Enumerate {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        bound: u64,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Also allow tuples without a zero element.
        #[arg(long)]
        any: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    A,
    B,
}

enum Outcome {
    Yes,
    No,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Yes) => ExitCode::SUCCESS,
        Ok(Outcome::No) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::BudgetExceeded { .. } => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn read_tuple(path: &Path) -> abtuple::Result<GroupTuple> {
    let text = fs::read_to_string(path).map_err(|e| Error::InvalidSpec(format!("{}: {e}", path.display())))?;
    parse_tuple(&text)
}

fn emit<T: Serialize>(value: &T) -> abtuple::Result<()> {
    let s = serde_json::to_string_pretty(value).map_err(|e| Error::Json(e.to_string()))?;
    println!("{s}");
    Ok(())
}

fn outcome(ok: bool) -> Outcome {
    if ok {
        Outcome::Yes
    } else {
        Outcome::No
    }
}

fn run(cli: &Cli) -> abtuple::Result<Outcome> {
    let opts = PropertyOptions { budget: cli.budget, parallel: true, ..Default::default() };
    match &cli.command {
        Command::Rank { file } => {
            let t = read_tuple(file)?;
            let span = t.span();
            eprintln!("rank {} in dimension {}", span.rank(), span.dim());
            emit(&span)?;
            Ok(Outcome::Yes)
        }
        Command::Property { r, s, file } => {
            let t = read_tuple(file)?;
            let report = has_property_with(&t, *r, *s, &opts)?;
            match &report.failure_witness {
                None => eprintln!("P({r}, {s}) holds"),
                Some(w) => eprintln!("P({r}, {s}) fails at positions {:?} inside {:?}", w.positions(), w.subset),
            }
            emit(&report)?;
            Ok(outcome(report.holds))
        }
        Command::Classify { s, file } => {
            let t = read_tuple(file)?;
            let c = classify(&t, *s)?;
            eprintln!("{}", c.variant_name());
            emit(&c)?;
            Ok(outcome(!c.is_unclassified()))
        }
        Command::Verify { s, file, cert_file } => {
            let t = read_tuple(file)?;
            let text = fs::read_to_string(cert_file)
                .map_err(|e| Error::InvalidSpec(format!("{}: {e}", cert_file.display())))?;
            let c: Classification = serde_json::from_str(&text).map_err(|e| Error::Json(e.to_string()))?;
            let valid = c.s() == *s && verify_classification(&t, &c);
            eprintln!("{} certificate {}", c.variant_name(), if valid { "verified" } else { "rejected" });
            emit(&json!({ "valid": valid }))?;
            Ok(outcome(valid))
        }
        Command::Qbasis { file } => {
            let t = read_tuple(file)?;
            let cert = q_basis_certificate(&t)?;
            let m = m_partition(&t, &cert)?;
            let signs = (1..=cert.rank()).map(|k| sign_partition(&t, &cert, k)).collect::<abtuple::Result<Vec<_>>>()?;
            eprintln!("rank {}, basis positions {:?}", cert.rank(), cert.indices);
            emit(&json!({
                "certificate": cert,
                "m_partition": m,
                "sign_partitions": signs,
                "negative_axes": negative_axes(&cert),
            }))?;
            Ok(Outcome::Yes)
        }
        Command::AdequateBasis { file } => {
            let t = read_tuple(file)?;
            let d = adequate_basis_decide(&t)?;
            eprintln!("adequate basis {}", if d.exists { "exists" } else { "does not exist" });
            emit(&d)?;
            Ok(outcome(d.exists))
        }
        Command::Audit { s, file } => {
            let t = read_tuple(file)?;
            let report = audit_claims_with(&t, *s, &opts)?;
            for c in &report.claims {
                eprintln!("{:<20} {}", c.name, if c.pass { "pass" } else { "FAIL" });
            }
            emit(&report)?;
            Ok(outcome(report.all_pass()))
        }
        Command::Generate {
            kind,
            s,
            k,
            breaks,
            dim,
            seed,
            unimodular_bound,
            perm_seed,
            translate,
            check_property,
            text,
        } => {
            let dim = dim.unwrap_or(s.saturating_sub(1).max(1));
            let mut spec = match kind {
                KindArg::A => GeneratorSpec::type_a(*s, dim),
                KindArg::B => GeneratorSpec::type_b(*s, breaks.clone(), dim),
            };
            if let Some(k) = k {
                spec.k = *k;
            }
            spec.seed = *seed;
            spec.unimodular_bound = *unimodular_bound;
            spec.permutation_seed = *perm_seed;
            if !translate.is_empty() {
                spec.translation = Some(GroupElement::from_i64s(translate)?);
            }
            let t = generate(&spec)?;
            let kind_name = if spec.kind == Kind::A { "A" } else { "B" };
            eprintln!("generated type {kind_name} tuple of arity {} in dimension {dim}", t.len());
            let property = if *check_property { Some(has_property_with(&t, t.len(), *s, &opts)?) } else { None };
            if let Some(p) = &property {
                eprintln!("P({}, {s}) {}", t.len(), if p.holds { "holds" } else { "fails" });
            }
            if *text {
                print!("{}", write_text(&t));
            } else {
                emit(&json!({ "spec": spec, "tuple": t, "property": property }))?;
            }
            Ok(outcome(property.is_none_or(|p| p.holds)))
        }
        Command::Enumerate { s, q, dim, bound, jobs, any, out } => {
            let job = EnumerationJob {
                require_zero: !any,
                jobs: *jobs,
                budget: cli.budget,
                ..EnumerationJob::new(*s, *q, *dim, *bound)
            };
            let report = enumerate(&job)?;
            eprintln!(
                "visited {}, with property {}, unclassified {}, audit failures {}",
                report.visited,
                report.holders,
                report.unclassified.len(),
                report.audit_failures.len()
            );
            match out {
                Some(path) => {
                    let s = serde_json::to_string_pretty(&report).map_err(|e| Error::Json(e.to_string()))?;
                    fs::write(path, s + "\n").map_err(|e| Error::InvalidSpec(format!("{}: {e}", path.display())))?;
                }
                None => emit(&report)?,
            }
            Ok(outcome(report.ok))
        }
    }
}
