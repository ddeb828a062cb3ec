//! Command-line front end: reports, built-in examples, family sweeps,
//! quadric counts, non-GRS certificates and EAQECC parameters.
//!
//! Exit codes: 0 when every check passes, 1 on a mismatch, 2 on usage or
//! input errors.

use std::collections::BTreeMap;
use std::fs;
use std::io::{ErrorKind, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use grlcodes::appendix::{self, Table};
use grlcodes::classify::{self, ReportOptions, DEFAULT_BUDGET};
use grlcodes::counting;
use grlcodes::eaqecc;
use grlcodes::families::{self, Family, Shift, SweepConfig};
use grlcodes::gf::{self, FieldCtx};
use grlcodes::grl::GrlSpec;
use grlcodes::hull::InnerProduct;
use grlcodes::nongrs;
use grlcodes::{Error, Result};

#[derive(Parser, Debug)]
#[command(name = "grlcodes", version, about = "Generalized Roth-Lempel codes: hulls, LCD checks and EAQECC parameters")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Full report for a code given as a spec file or a built-in example.
    Report(SpecArgs),
    /// Run the built-in worked examples and compare with published values.
    Appendix {
        #[arg(value_enum, default_value = "all")]
        which: Which,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Audit family predictions against computed hulls.
    Sweep(SweepArgs),
    /// Points on x_1² + ⋯ + x_k² = c.
    Count {
        #[arg(long, alias = "field")]
        q: String,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        c: String,
        /// Count only tuples with every coordinate nonzero.
        #[arg(long)]
        nonzero: bool,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Non-GRS certificate.
    Nongrs(SpecArgs),
    /// EAQECC parameter tuples.
    Eaqecc(SpecArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Which {
    #[value(name = "A", alias = "a")]
    A,
    #[value(name = "B", alias = "b")]
    B,
    All,
}

#[derive(Args, Debug)]
struct OutArgs {
    /// Write the output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, conflicts_with = "csv")]
    json: bool,
    #[arg(long)]
    csv: bool,
}

#[derive(Args, Debug)]
struct SpecArgs {
    /// GRL spec JSON file.
    #[arg(long, conflicts_with = "example", required_unless_present = "example")]
    spec: Option<PathBuf>,
    /// Built-in example id such as A.1 or B.4(l=3,s=5,t=2).
    #[arg(long)]
    example: Option<String>,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Inner product for EAQECC tuples.
    #[arg(long, value_enum)]
    inner_product: Option<Ip>,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Ip {
    Euclidean,
    Hermitian,
}

impl From<Ip> for InnerProduct {
    fn from(ip: Ip) -> Self {
        match ip {
            Ip::Euclidean => InnerProduct::Euclidean,
            Ip::Hermitian => InnerProduct::Hermitian,
        }
    }
}

#[derive(Args, Debug, Serialize)]
struct SweepArgs {
    #[arg(long, value_parser = parse_family)]
    family: Family,
    /// Base field size q ("81" or "3^4"); the standard corpus when absent.
    #[arg(long, alias = "field")]
    q: Option<String>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    l: Option<usize>,
    #[arg(long, conflicts_with_all = ["s", "t"])]
    delta: Option<i64>,
    #[arg(long, requires = "t")]
    s: Option<i64>,
    #[arg(long, requires = "s")]
    t: Option<i64>,
    #[arg(long, default_value_t = 5)]
    samples: usize,
    #[arg(long, default_value_t = 3)]
    shifts: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Maximum number of audited codes.
    #[arg(long)]
    budget: Option<usize>,
    #[serde(skip)]
    #[command(flatten)]
    out: OutArgs,
}

fn parse_family(s: &str) -> std::result::Result<Family, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn field_size(s: &str) -> Result<u64> {
    let (p, m) = gf::parse_field_spec(s)?;
    Ok(p.pow(m))
}

#[derive(Serialize)]
struct Manifest {
    command: &'static str,
    parameters: Value,
    seed: Option<u64>,
    version: &'static str,
    moduli: BTreeMap<String, Vec<u32>>,
}

impl Manifest {
    fn new(command: &'static str, parameters: Value, seed: Option<u64>) -> Self {
        Manifest { command, parameters, seed, version: env!("CARGO_PKG_VERSION"), moduli: BTreeMap::new() }
    }

    fn field(&mut self, ctx: &FieldCtx) {
        self.moduli.insert(ctx.spec(), ctx.modulus().to_vec());
    }
}

fn emit(out: &OutArgs, text: String) -> Result<()> {
    match &out.out {
        Some(path) => fs::write(path, text).map_err(|e| Error::Input(format!("{}: {e}", path.display()))),
        None => match writeln!(std::io::stdout().lock(), "{text}") {
            Err(e) if e.kind() != ErrorKind::BrokenPipe => Err(Error::Input(format!("stdout: {e}"))),
            _ => Ok(()),
        },
    }
}

fn to_json<T: Serialize>(manifest: &Manifest, result: &T) -> String {
    let v = json!({ "manifest": manifest, "result": result });
    serde_json::to_string_pretty(&v).expect("serializable")
}

fn load_spec(args: &SpecArgs) -> Result<GrlSpec> {
    if let Some(path) = &args.spec {
        let text = fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
        return GrlSpec::from_json_str(&text);
    }
    let id = args.example.as_deref().unwrap_or_default();
    for table in [Table::A, Table::B] {
        let (_, rows) = appendix::rows(table)?;
        if let Some(row) = rows.iter().find(|r| r.id == id) {
            return appendix::row_params(row)?.spec();
        }
    }
    Err(Error::Input(format!("no built-in example {id:?}")))
}

fn spec_params(args: &SpecArgs) -> Value {
    json!({ "spec": args.spec, "example": args.example, "budget": args.budget })
}

fn cmd_report(args: &SpecArgs) -> Result<bool> {
    let spec = load_spec(args)?;
    let mut m = Manifest::new("report", spec_params(args), None);
    m.field(spec.ctx());
    let opts = ReportOptions { budget: args.budget, ..ReportOptions::default() };
    let r = classify::report(&spec, &opts)?;
    let text = if args.out.csv {
        format!("{}\n{}", classify::CSV_HEADER, r.csv_row())
    } else {
        to_json(&m, &r)
    };
    emit(&args.out, text)?;
    Ok(true)
}

fn cmd_nongrs(args: &SpecArgs) -> Result<bool> {
    let spec = load_spec(args)?;
    let mut m = Manifest::new("nongrs", spec_params(args), None);
    m.field(spec.ctx());
    let cert = nongrs::nongrs_certificate(&spec)?;
    emit(&args.out, to_json(&m, &cert))?;
    Ok(true)
}

fn cmd_eaqecc(args: &SpecArgs) -> Result<bool> {
    let spec = load_spec(args)?;
    let mut m = Manifest::new("eaqecc", spec_params(args), None);
    m.field(spec.ctx());
    let opts = ReportOptions { budget: args.budget, distances: true, nongrs: false };
    let r = classify::report(&spec, &opts)?;
    let ips: Vec<InnerProduct> = match args.inner_product {
        Some(ip) => vec![ip.into()],
        None => [InnerProduct::Euclidean, InnerProduct::Hermitian]
            .into_iter()
            .filter(|&ip| r.hull(ip).is_some())
            .collect(),
    };
    let mut tuples = Vec::new();
    for ip in ips {
        let (a, b) = eaqecc::derive(&r, ip)?;
        tuples.push(a);
        tuples.push(b);
    }
    let text = if args.out.csv {
        let mut s = format!("inner_product,source,{}", eaqecc::CSV_HEADER);
        for t in &tuples {
            s += &format!("\n{},{},{}", t.inner_product, t.source, t.csv_row());
        }
        s
    } else {
        to_json(&m, &tuples)
    };
    emit(&args.out, text)?;
    Ok(true)
}

fn cmd_appendix(which: Which, budget: u64, out: &OutArgs) -> Result<bool> {
    let tables: &[Table] = match which {
        Which::A => &[Table::A],
        Which::B => &[Table::B],
        Which::All => &[Table::A, Table::B],
    };
    let mut rows = Vec::new();
    for &t in tables {
        rows.extend(appendix::run_table(t, budget)?);
    }
    let all_pass = rows.iter().all(|r| r.pass);
    let params = |r: &appendix::RowOutcome| {
        let e = &r.expected;
        let c = &r.computed;
        let fmt = |n: usize, k: usize, d: Option<usize>| match d {
            Some(d) => format!("[{n},{k},{d}]"),
            None => format!("[{n},{k}]"),
        };
        (fmt(e.n, e.k, e.d), fmt(c.n, c.k, c.d))
    };
    let text = if out.json {
        let m = Manifest::new("appendix", json!({ "which": format!("{which:?}"), "budget": budget }), None);
        to_json(&m, &rows)
    } else if out.csv {
        let mut s = String::from("id,family,expected,computed,label,hull,claim,pass");
        for r in &rows {
            let (e, c) = params(r);
            let label = r.computed.label.map(|l| l.to_string()).unwrap_or_default();
            s += &format!("\n{},{},\"{e}\",\"{c}\",{label},{},{},{}", r.id, r.params.family, r.computed.hull, r.claim, r.pass);
        }
        s
    } else {
        let mut s = format!(
            "{:<20} {:<4} {:<13} {:<12} {:<12} {:<6} {:<5} {:<8} {}\n",
            "example", "fam", "shift", "expected", "computed", "label", "hull", "claim", "status"
        );
        for r in &rows {
            let (e, c) = params(r);
            let label = r.computed.label.map(|l| l.to_string()).unwrap_or_else(|| "-".into());
            s += &format!(
                "{:<20} {:<4} {:<13} {:<12} {:<12} {:<6} {:<5} {:<8} {}\n",
                r.id,
                r.params.family.to_string(),
                appendix::shift_label(r.params.shift),
                e,
                c,
                label,
                r.computed.hull,
                r.claim.to_string(),
                if r.pass { "PASS" } else { "FAIL" }
            );
            if let Some(note) = &r.note {
                s += &format!("{:<20} note: {note}\n", "");
            }
        }
        let passed = rows.iter().filter(|r| r.pass).count();
        s += &format!("{passed}/{} rows pass", rows.len());
        s
    };
    emit(out, text)?;
    Ok(all_pass)
}

fn cmd_sweep(args: &SweepArgs) -> Result<bool> {
    let mut cfg = SweepConfig::standard(args.family, args.seed);
    if let Some(q) = &args.q {
        cfg.base_qs = vec![field_size(q)?];
    }
    if let Some(k) = args.k {
        cfg.k_min = k;
        cfg.k_max = k;
    }
    cfg.l = args.l;
    cfg.shift = match (args.delta, args.s, args.t) {
        (Some(d), _, _) => Some(Shift::Delta(d)),
        (None, Some(s), Some(t)) => Some(Shift::Pair(s, t)),
        _ => None,
    };
    cfg.samples = args.samples;
    cfg.shifts_per_cell = args.shifts;
    if let Some(b) = args.budget {
        cfg.budget = b;
    }
    let result = families::sweep(&cfg)?;
    let mut m = Manifest::new("sweep", serde_json::to_value(args).expect("serializable"), Some(args.seed));
    for &q in &cfg.base_qs {
        m.field(&*families::family_field(args.family, q)?);
    }
    let failures = result.failures().count();
    let template_failures = result.records.iter().filter(|r| !r.template.pass).count();
    let text = if args.out.csv {
        let mut s = String::from("family,q,k,l,shift,claim,clause,hull,pass,template");
        for r in &result.records {
            let p = &r.params;
            s += &format!(
                "\n{},{},{},{},{},{},{},{},{},{}",
                p.family,
                p.base_q,
                p.k,
                p.l,
                appendix::shift_label(p.shift),
                r.prediction.claim,
                r.prediction.clause.as_deref().unwrap_or(""),
                r.computed_hull,
                r.pass,
                r.template.pass
            );
        }
        s
    } else {
        to_json(&m, &result)
    };
    emit(&args.out, text)?;
    eprintln!(
        "{} audited, {failures} claim failures, {template_failures} template failures, {} without a claim, {} with colliding points{}",
        result.records.len(),
        result.no_claim,
        result.collisions,
        if result.truncated { " (budget reached)" } else { "" }
    );
    Ok(failures == 0 && template_failures == 0)
}

fn cmd_count(q: &str, k: u32, c: &str, nonzero: bool, out: &OutArgs) -> Result<bool> {
    let (p, m) = gf::parse_field_spec(q)?;
    let ctx = FieldCtx::new(p, m)?;
    let c_el = ctx.parse_element(c)?;
    let formula = if nonzero {
        counting::count_nf_star(&ctx, k, c_el)?
    } else {
        counting::count_nf(&ctx, k, c_el).total
    };
    let excluding_zero = (!nonzero).then(|| counting::count_nf(&ctx, k, c_el).excluding_zero);
    let brute = counting::brute_quadric_count(&ctx, k, c_el, nonzero).ok();
    let agree = brute.is_none_or(|b| b == formula);
    let text = if out.json {
        let mut man = Manifest::new("count", json!({ "q": q, "k": k, "c": c, "nonzero": nonzero }), None);
        man.field(&ctx);
        to_json(&man, &json!({ "count": formula, "excluding_zero": excluding_zero, "brute_force": brute, "agree": agree }))
    } else {
        let mut s = format!("{formula}");
        if let Some(x) = excluding_zero {
            s += &format!("\nexcluding the zero tuple: {x}");
        }
        s += &match brute {
            Some(b) => format!("\nbrute force: {b} ({})", if agree { "agrees" } else { "MISMATCH" }),
            None => "\nbrute force: skipped (too many tuples)".into(),
        };
        s
    };
    emit(out, text)?;
    Ok(agree)
}

fn run(cli: &Cli) -> Result<bool> {
    let start = Instant::now();
    let ok = match &cli.cmd {
        Cmd::Report(a) => cmd_report(a),
        Cmd::Appendix { which, budget, out } => cmd_appendix(*which, *budget, out),
        Cmd::Sweep(a) => cmd_sweep(a),
        Cmd::Count { q, k, c, nonzero, out } => cmd_count(q, *k, c, *nonzero, out),
        Cmd::Nongrs(a) => cmd_nongrs(a),
        Cmd::Eaqecc(a) => cmd_eaqecc(a),
    }?;
    eprintln!("finished in {:.2?}", start.elapsed());
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
