//! Command line front end for the monocon toolkit.
//!
//! Every subcommand reads Cayley tables in the text format accepted by
//! [`Semigroup::parse`] and prints either plain text or, with `--json`,
//! a pretty-printed JSON document carrying the same data. Exit codes:
//! 0 on success, 1 when the requested check found a genuine violation
//! (a non-associative table, a partition that is not a congruence, a
//! family that does not validate, a sweep with failures), 2 when the
//! input could not be used at all.
//!
//! Size caps default to the values in [`monocon_core::caps`] and can be
//! raised per run through `MONOCON_CONGRUENCE_CAP`, `MONOCON_SUBSET_CAP`,
//! `MONOCON_ENUM_CAP`, `MONOCON_ENUM_COMMUTATIVE_CAP`, and
//! `MONOCON_SAMPLE_CAP`, or lifted entirely with `--force`.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand};
use monocon_core::enumerate::{
    corpus_to_text, enumerate_all, enumerate_commutative, parse_corpus, sample,
};
use monocon_core::fingerprint::{
    family_congruence, fingerprint_congruence, maximal_family, validate_family, FamilyError,
};
use monocon_core::relations::{enumerate_congruences, CongruenceError};
use monocon_core::semigroup::TableError;
use monocon_core::separator::separator_report;
use monocon_core::theorems::{aggregate, verify_all, CheckStatus, VerifyOptions};
use monocon_core::{caps, Congruence, Partition, Semigroup, SubsetMask};
use rayon::prelude::*;
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "monocon",
    version,
    about = "Separators, fingerprint congruences, and theorem sweeps over finite semigroups"
)]
struct Cli {
    /// Print JSON instead of plain text
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads for corpus sweeps (default: all cores)
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,

    /// Lift the built-in size caps
    #[arg(long, global = true)]
    force: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a table file and report order and commutativity
    Validate { file: PathBuf },

    /// Idealizers, separator, and side for one subset
    Sep {
        file: PathBuf,
        /// Subset A as element indices, e.g. `0,2` (`-` for empty)
        #[arg(long)]
        subset: String,
    },

    /// List every congruence of the table
    Congruences {
        file: PathBuf,
        /// Keep only congruences whose quotient is a monoid
        #[arg(long)]
        monoid_only: bool,
    },

    /// Quotient table for a partition, if it is a congruence
    Quotient {
        file: PathBuf,
        /// Partition as `;`-separated classes, e.g. `0;1,2`
        #[arg(long)]
        partition: String,
    },

    /// Fingerprint partition of a subset H
    Ph {
        file: PathBuf,
        /// Subset H as element indices
        #[arg(long)]
        subset: String,
    },

    /// Partition induced by a family anchored to H
    Pfam {
        file: PathBuf,
        /// Anchor subset H
        #[arg(long)]
        h: String,
        /// Family members, one subset per value
        #[arg(long, num_args = 1.., required = true)]
        members: Vec<String>,
    },

    /// Largest family anchored to H
    Maxfam {
        file: PathBuf,
        /// Anchor subset H
        #[arg(long)]
        h: String,
    },

    /// Run the theorem checks over a corpus
    Verify(VerifyArgs),

    /// Stream Cayley tables of one order
    Enumerate(EnumerateArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Corpus file; omit to generate a corpus with --order
    #[arg(required_unless_present = "order", conflicts_with = "order")]
    file: Option<PathBuf>,

    /// Sweep every labeled semigroup of this order instead of a file
    #[arg(long)]
    order: Option<usize>,

    /// Restrict the generated corpus to commutative tables
    #[arg(long, requires = "order")]
    commutative: bool,

    /// Comma-separated claim numbers, e.g. `1,3,5` (default: all)
    #[arg(long)]
    theorems: Option<String>,

    /// Check claim 1 over every class selection instead of sampling
    #[arg(long)]
    exhaustive_selections: bool,

    /// Random selections per congruence when not exhaustive
    #[arg(long, value_name = "K", default_value_t = 4)]
    random_selections: usize,

    /// Seed for the selection sampler
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Run the commutativity-gated checks on every input, recording
    /// violations as candidates instead of failures
    #[arg(long)]
    hunt: bool,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long)]
    order: usize,

    /// Commutative tables only
    #[arg(long)]
    commutative: bool,

    /// Emit one table per isomorphism class
    #[arg(long)]
    up_to_iso: bool,

    /// Emit K seeded random tables instead of the full enumeration
    #[arg(long, value_name = "K", conflicts_with = "up_to_iso")]
    sample: Option<usize>,

    /// Seed for --sample
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

/// Effective size caps for one invocation.
struct Caps {
    congruence: usize,
    subset: usize,
    enumerate_general: usize,
    enumerate_commutative: usize,
    sample: usize,
}

impl Caps {
    fn resolve(force: bool) -> Result<Caps> {
        Ok(Caps {
            congruence: cap("MONOCON_CONGRUENCE_CAP", caps::CONGRUENCE_ORDER, force)?,
            subset: cap("MONOCON_SUBSET_CAP", caps::SUBSET_ORDER, force)?,
            enumerate_general: cap("MONOCON_ENUM_CAP", caps::ENUMERATE_GENERAL, force)?,
            enumerate_commutative: cap(
                "MONOCON_ENUM_COMMUTATIVE_CAP",
                caps::ENUMERATE_COMMUTATIVE,
                force,
            )?,
            sample: cap("MONOCON_SAMPLE_CAP", caps::SAMPLE, force)?,
        })
    }
}

fn cap(var: &str, default: usize, force: bool) -> Result<usize> {
    if force {
        return Ok(usize::MAX);
    }
    match std::env::var(var) {
        Ok(text) => text
            .trim()
            .parse()
            .map_err(|_| anyhow!("{var} must be a number, got `{text}`")),
        Err(std::env::VarError::NotPresent) => Ok(default),
        Err(e) => Err(anyhow!(e)).with_context(|| format!("reading {var}")),
    }
}

/// Parses `argv` and runs one subcommand, returning the process exit
/// code. Output goes to stdout, diagnostics to stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // --help and --version land here too and are not errors.
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            2
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32> {
    let caps = Caps::resolve(cli.force)?;
    let json = cli.json;
    match cli.command {
        Command::Validate { file } => validate(&file, json),
        Command::Sep { file, subset } => sep(&file, &subset, json),
        Command::Congruences { file, monoid_only } => {
            congruences(&file, monoid_only, &caps, json)
        }
        Command::Quotient { file, partition } => quotient(&file, &partition, json),
        Command::Ph { file, subset } => ph(&file, &subset, json),
        Command::Pfam { file, h, members } => pfam(&file, &h, &members, json),
        Command::Maxfam { file, h } => maxfam(&file, &h, &caps, json),
        Command::Verify(args) => verify(args, cli.jobs, &caps, json),
        Command::Enumerate(args) => enumerate(args, &caps, json),
    }
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_semigroup(path: &Path) -> Result<Semigroup> {
    Semigroup::parse(&read_text(path)?).map_err(|e| anyhow!("{}: {e}", path.display()))
}

/// Reads a corpus file: concatenated Cayley tables, `#` comments allowed.
pub fn load_corpus(path: &Path) -> Result<Vec<Semigroup>> {
    parse_corpus(&read_text(path)?).map_err(|e| anyhow!("{}: {e}", path.display()))
}

/// Writes tables in the same format [`load_corpus`] reads.
pub fn save_corpus(path: &Path, tables: &[Semigroup]) -> Result<()> {
    fs::write(path, corpus_to_text(tables)).with_context(|| format!("writing {}", path.display()))
}

fn parse_subset(text: &str, n: usize) -> Result<SubsetMask> {
    SubsetMask::parse(text, n).map_err(|e| anyhow!("subset `{text}`: {e}"))
}

fn parse_partition(text: &str, n: usize) -> Result<Partition> {
    Partition::parse(text, n).map_err(|e| anyhow!("partition `{text}`: {e}"))
}

fn emit(value: &serde_json::Value) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

/// True when the table was well-formed but the operation is not
/// associative, which is a finding rather than a usage error.
fn violates_associativity(e: &TableError) -> bool {
    match e {
        TableError::NotAssociative { .. } => true,
        TableError::InTable { source, .. } => violates_associativity(source),
        _ => false,
    }
}

fn validate(path: &Path, json: bool) -> Result<i32> {
    let text = read_text(path)?;
    match Semigroup::parse(&text) {
        Ok(s) => {
            if json {
                emit(&json!({
                    "valid": true,
                    "order": s.order(),
                    "commutative": s.is_commutative(),
                }))?;
            } else {
                let kind = if s.is_commutative() { "commutative" } else { "not commutative" };
                println!("ok: order {}, {kind}", s.order());
            }
            Ok(0)
        }
        Err(e) if violates_associativity(&e) => {
            if json {
                emit(&json!({ "valid": false, "error": e.to_string() }))?;
            } else {
                println!("invalid: {e}");
            }
            Ok(1)
        }
        Err(e) => Err(anyhow!("{}: {e}", path.display())),
    }
}

fn sep(path: &Path, subset: &str, json: bool) -> Result<i32> {
    let s = load_semigroup(path)?;
    let a = parse_subset(subset, s.order())?;
    let r = separator_report(&s, a);
    if json {
        emit(&json!({
            "subset": a.to_string(),
            "idealizer": r.idealizer.to_string(),
            "complement_idealizer": r.complement_idealizer.to_string(),
            "separator": r.separator.to_string(),
            "side": r.side,
        }))?;
    } else {
        println!(
            "Id(A)={}  Id(S\\A)={}  Sep(A)={}  side={}",
            r.idealizer, r.complement_idealizer, r.separator, r.side
        );
    }
    Ok(0)
}

fn congruences(path: &Path, monoid_only: bool, caps: &Caps, json: bool) -> Result<i32> {
    let s = load_semigroup(path)?;
    let all = enumerate_congruences(&s, caps.congruence)?;
    let kept: Vec<_> = all
        .iter()
        .map(|c| (c.partition(), c.monoid_identity_class()))
        .filter(|(_, identity)| !monoid_only || identity.is_some())
        .collect();
    if json {
        let items: Vec<_> = kept
            .iter()
            .map(|(p, identity)| {
                json!({
                    "partition": p.to_string(),
                    "classes": p.num_classes(),
                    "identity_class": identity.map(|m| m.to_string()),
                })
            })
            .collect();
        emit(&json!({ "count": kept.len(), "congruences": items }))?;
    } else {
        for (p, _) in &kept {
            println!("{p}");
        }
    }
    Ok(0)
}

fn quotient(path: &Path, partition: &str, json: bool) -> Result<i32> {
    let s = load_semigroup(path)?;
    let p = parse_partition(partition, s.order())?;
    match Congruence::new(&s, p) {
        Ok(c) => {
            let q = c.quotient();
            if json {
                emit(&json!({
                    "partition": c.partition().to_string(),
                    "order": q.order(),
                    "table": q.to_cayley_text(),
                    "identity_class": c.monoid_identity_class().map(|m| m.to_string()),
                }))?;
            } else {
                print!("{}", q.to_cayley_text());
            }
            Ok(0)
        }
        Err(e @ CongruenceError::NotACongruence { .. }) => {
            if json {
                emit(&json!({ "congruence": false, "error": e.to_string() }))?;
            } else {
                println!("{e}");
            }
            Ok(1)
        }
        Err(e) => Err(e.into()),
    }
}

fn congruence_json(c: &Congruence<'_>) -> serde_json::Value {
    json!({
        "partition": c.partition().to_string(),
        "classes": c.partition().num_classes(),
        "identity_class": c.monoid_identity_class().map(|m| m.to_string()),
    })
}

fn ph(path: &Path, subset: &str, json: bool) -> Result<i32> {
    let s = load_semigroup(path)?;
    let h = parse_subset(subset, s.order())?;
    let c = fingerprint_congruence(&s, h);
    if json {
        let mut v = congruence_json(&c);
        v["h"] = json!(h.to_string());
        emit(&v)?;
    } else {
        println!("{}", c.partition());
    }
    Ok(0)
}

fn pfam(path: &Path, h: &str, members: &[String], json: bool) -> Result<i32> {
    let s = load_semigroup(path)?;
    let h = parse_subset(h, s.order())?;
    let members: Vec<SubsetMask> = members
        .iter()
        .map(|m| parse_subset(m, s.order()))
        .collect::<Result<_>>()?;
    match validate_family(&s, h, &members) {
        Ok(fam) => {
            let c = family_congruence(&s, &fam)?;
            if json {
                let mut v = congruence_json(&c);
                v["h"] = json!(fam.h.to_string());
                v["members"] = json!(member_strings(&fam.members));
                emit(&v)?;
            } else {
                println!("{}", c.partition());
            }
            Ok(0)
        }
        Err(e @ FamilyError::CapExceeded { .. }) => Err(e.into()),
        Err(e) => {
            if json {
                emit(&json!({ "valid": false, "error": e.to_string() }))?;
            } else {
                println!("invalid family: {e}");
            }
            Ok(1)
        }
    }
}

fn maxfam(path: &Path, h: &str, caps: &Caps, json: bool) -> Result<i32> {
    let s = load_semigroup(path)?;
    let h = parse_subset(h, s.order())?;
    match maximal_family(&s, h, caps.subset) {
        Ok(fam) => {
            let c = family_congruence(&s, &fam)?;
            if json {
                let mut v = congruence_json(&c);
                v["h"] = json!(fam.h.to_string());
                v["members"] = json!(member_strings(&fam.members));
                emit(&v)?;
            } else {
                for m in &fam.members {
                    println!("{m}");
                }
            }
            Ok(0)
        }
        Err(e @ FamilyError::CapExceeded { .. }) => Err(e.into()),
        // H is not fixed by any separator intersection, so no family
        // (maximal or otherwise) is anchored to it.
        Err(e) => {
            if json {
                emit(&json!({ "valid": false, "error": e.to_string() }))?;
            } else {
                println!("no family: {e}");
            }
            Ok(1)
        }
    }
}

fn member_strings(members: &[SubsetMask]) -> Vec<String> {
    members.iter().map(|m| m.to_string()).collect()
}

fn verify(args: VerifyArgs, jobs: Option<usize>, caps: &Caps, json: bool) -> Result<i32> {
    let corpus: Vec<Semigroup> = match (&args.file, args.order) {
        (Some(path), None) => load_corpus(path)?,
        (None, Some(order)) => {
            if args.commutative {
                enumerate_commutative(order, false, caps.enumerate_commutative)?.collect()
            } else {
                enumerate_all(order, false, caps.enumerate_general)?.collect()
            }
        }
        _ => unreachable!("clap enforces file xor order"),
    };

    let mut options = VerifyOptions::default();
    if let Some(text) = &args.theorems {
        options.theorems = text.parse().map_err(|e| anyhow!("--theorems: {e}"))?;
    }
    options.exhaustive_selections = args.exhaustive_selections;
    options.random_selections = args.random_selections;
    options.seed = args.seed;
    options.hunt = args.hunt;
    options.congruence_cap = caps.congruence;
    options.subset_cap = caps.subset;

    // Per-semigroup checks are independent and each seeds its own RNG,
    // so a parallel sweep reports exactly what a sequential one would.
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .context("building the worker pool")?;
    let reports = pool.install(|| {
        corpus
            .par_iter()
            .map(|s| verify_all(s, &options))
            .collect::<Result<Vec<_>, _>>()
    })?;
    let report = aggregate(reports);

    if json {
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        for r in &report.reports {
            for t in &r.results {
                if t.status == CheckStatus::Fail {
                    let detail = t.detail.as_deref().unwrap_or("no detail");
                    println!("semigroup {}: {} fail ({detail})", r.index, t.theorem);
                }
            }
        }
        println!(
            "{} semigroups, {} failures",
            report.totals.semigroups, report.totals.failures
        );
    }
    Ok(if report.passed() { 0 } else { 1 })
}

fn enumerate(args: EnumerateArgs, caps: &Caps, json: bool) -> Result<i32> {
    if let Some(count) = args.sample {
        let tables = sample(args.order, count, args.seed, args.commutative, caps.sample)?;
        if json {
            emit_tables(args.order, &tables)?;
        } else {
            print!("{}", corpus_to_text(&tables));
        }
        return Ok(0);
    }
    let iter = if args.commutative {
        enumerate_commutative(args.order, args.up_to_iso, caps.enumerate_commutative)?
    } else {
        enumerate_all(args.order, args.up_to_iso, caps.enumerate_general)?
    };
    if json {
        let tables: Vec<Semigroup> = iter.collect();
        emit_tables(args.order, &tables)?;
    } else {
        // Stream: full enumerations can be large.
        for (i, s) in iter.enumerate() {
            if i > 0 {
                println!();
            }
            print!("{}", s.to_cayley_text());
        }
    }
    Ok(0)
}

fn emit_tables(order: usize, tables: &[Semigroup]) -> Result<()> {
    emit(&json!({
        "order": order,
        "count": tables.len(),
        "tables": tables.iter().map(|s| s.to_cayley_text()).collect::<Vec<_>>(),
    }))
}
