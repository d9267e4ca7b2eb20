//! `bcrsi` command-line front end.
//!
//! Exit codes: 0 success, 1 a verification assertion failed, 2 bad input or
//! usage, 3 inadmissible distribution for the requested region.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bcrsi::codesim::{self, Scheme};
use bcrsi::gaussian::{self, GaussianConfig};
use bcrsi::geometry::sig12;
use bcrsi::lindet::{self, LinDetConfig};
use bcrsi::markov::SpecFile;
use bcrsi::regions::{region_sweep, RateSplitVector, RegionKind};
use bcrsi::sampling;
use bcrsi::{DmcChannel, Error, MarkovSpec, Pmf, RateRegion};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "bcrsi", version, about = "Secrecy rate regions for broadcast channels with receiver side information")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute one rate region and write its vertices.
    Region(RegionArgs),
    /// Exhaustive reliability and secrecy checks.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Gaussian bounds and capacity regions.
    #[command(subcommand)]
    Gaussian(GaussianCmd),
    /// Finite-blocklength code experiments.
    #[command(subcommand)]
    Codesim(CodesimCmd),
    /// Union of a region over many input distributions.
    Sweep(SweepArgs),
}

#[derive(Clone, Copy, ValueEnum, Default, PartialEq)]
enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Args)]
struct Output {
    /// Output file (stdout if omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args)]
struct Inputs {
    /// Channel JSON: `{w1, w2, wz}` or `{x_size, y1_size, y2_size, z_size, p}`.
    #[arg(long)]
    channel: Option<PathBuf>,
    /// Auxiliary distribution JSON (factors or full joint).
    #[arg(long)]
    spec: Option<PathBuf>,
    /// Input distribution as comma-separated probabilities.
    #[arg(long)]
    px: Option<String>,
}

#[derive(Args)]
struct RegionArgs {
    /// `lindet` or one of the DMC region names.
    name: String,
    #[command(flatten)]
    inputs: Inputs,
    #[arg(long)]
    n1: Option<usize>,
    #[arg(long)]
    n2: Option<usize>,
    #[arg(long)]
    ne: Option<usize>,
    /// Grid step of the projection oracle.
    #[arg(long, default_value_t = 0.02)]
    step: f64,
    #[command(flatten)]
    output: Output,
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Exhaustive check of the bit-level constructions.
    Lindet(VerifyLindetArgs),
    /// Exact error probability and leakage of one codebook.
    Codesim(VerifyCodesimArgs),
}

#[derive(Args)]
struct VerifyLindetArgs {
    #[arg(long)]
    n1: usize,
    #[arg(long)]
    n2: usize,
    #[arg(long)]
    ne: usize,
    #[arg(long, requires = "r2", conflicts_with = "all_rates")]
    r1: Option<usize>,
    #[arg(long, requires = "r1")]
    r2: Option<usize>,
    /// Every integer pair in the capacity region.
    #[arg(long)]
    all_rates: bool,
    /// Corrupt the encoder before verifying (exercises the failure path).
    #[arg(long)]
    inject_fault: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum SchemeName {
    SecretKey,
    Combined,
    Superposition,
}

#[derive(Args)]
struct CodeArgs {
    #[arg(long, value_enum)]
    scheme: SchemeName,
    #[command(flatten)]
    inputs: Inputs,
    /// Rate split JSON (`rk`, `rsk`, `r1s`, `r2s`, `rr`, ...).
    #[arg(long)]
    splits: PathBuf,
}

#[derive(Args)]
struct VerifyCodesimArgs {
    #[command(flatten)]
    code: CodeArgs,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum GaussianCmd {
    /// Inner/outer bounds or the capacity region.
    Bound(GaussianArgs),
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum Which {
    Inner,
    Outer,
    Capacity,
    Both,
}

#[derive(Args)]
struct GaussianArgs {
    #[arg(long = "P", alias = "p")]
    p: f64,
    #[arg(long)]
    s1sq: f64,
    #[arg(long)]
    s2sq: f64,
    #[arg(long)]
    sesq: f64,
    #[arg(long, value_enum)]
    which: Which,
    /// Grid points per axis of the (alpha, gamma) sweep.
    #[arg(long, default_value_t = 200)]
    samples: usize,
    /// Relabel the receivers if `s1sq > s2sq`.
    #[arg(long)]
    swap: bool,
    /// Output file; with `--which both` the suffixes `-inner` / `-outer`
    /// are inserted before the extension.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum CodesimCmd {
    /// Metrics across blocklengths and seeds, as CSV.
    Run(CodesimRunArgs),
}

#[derive(Args)]
struct CodesimRunArgs {
    #[command(flatten)]
    code: CodeArgs,
    /// Blocklengths, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    n: Vec<usize>,
    #[arg(long, default_value_t = 0, conflicts_with = "seeds")]
    seed: u64,
    /// Several seeds, comma separated.
    #[arg(long, value_delimiter = ',')]
    seeds: Vec<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    /// Region name.
    name: String,
    #[arg(long)]
    channel: PathBuf,
    /// JSON array of auxiliary distributions.
    #[arg(long, conflicts_with_all = ["grid", "random"])]
    specs: Option<PathBuf>,
    /// Binary input laws `p = k / N`, `k = 0..N`.
    #[arg(long, conflicts_with = "random")]
    grid: Option<usize>,
    /// Number of random two-layer distributions.
    #[arg(long)]
    random: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Evaluate at most this many distributions.
    #[arg(long)]
    max_specs: Option<usize>,
    #[arg(long, default_value_t = 0.02)]
    step: f64,
    #[command(flatten)]
    output: Output,
}

enum Failure {
    Assertion(String),
    Input(String),
    Inadmissible(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Inadmissible(m) => Failure::Inadmissible(m),
            e => Failure::Input(e.to_string()),
        }
    }
}

type Run<T = ()> = Result<T, Failure>;

fn input(msg: impl Into<String>) -> Failure {
    Failure::Input(msg.into())
}

fn read(path: &Path) -> Run<String> {
    fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn load_channel(path: Option<&PathBuf>) -> Run<DmcChannel> {
    let p = path.ok_or_else(|| input("--channel is required"))?;
    Ok(DmcChannel::from_json(&read(p)?)?)
}

fn load_spec(path: &Path) -> Run<MarkovSpec> {
    Ok(MarkovSpec::from_json(&read(path)?)?)
}

fn parse_px(s: &str) -> Run<Pmf> {
    let v: Result<Vec<f64>, _> = s.split(',').map(|t| t.trim().parse::<f64>()).collect();
    let v = v.map_err(|e| input(format!("--px: {e}")))?;
    Ok(Pmf::from_probs(v)?)
}

/// Input law from `--px`, else the `X` marginal of `--spec`, else uniform.
fn input_law(inputs: &Inputs, ch: &DmcChannel) -> Run<Pmf> {
    if let Some(s) = &inputs.px {
        return parse_px(s);
    }
    if let Some(p) = &inputs.spec {
        return Ok(load_spec(p)?.x_marginal());
    }
    Ok(Pmf::uniform(ch.x_size)?)
}

struct Provenance {
    command: String,
    seed: Option<u64>,
}

impl Provenance {
    fn new(seed: Option<u64>) -> Self {
        let args: Vec<String> = std::env::args().skip(1).collect();
        Provenance {
            command: format!("bcrsi {}", args.join(" ")),
            seed,
        }
    }

    fn header(&self, extra: &[String]) -> String {
        let mut s = format!(
            "# command: {}\n# seed: {}\n# version: bcrsi {}\n",
            self.command,
            self.seed.map_or("none".into(), |v| v.to_string()),
            env!("CARGO_PKG_VERSION")
        );
        for e in extra {
            s.push_str(&format!("# {e}\n"));
        }
        s
    }

    fn json(&self) -> serde_json::Value {
        serde_json::json!({
            "command": self.command,
            "seed": self.seed,
            "version": format!("bcrsi {}", env!("CARGO_PKG_VERSION")),
        })
    }
}

fn emit(out: Option<&PathBuf>, text: &str) -> Run {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| input(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct Vertex {
    r1: f64,
    r2: f64,
}

fn write_region(
    region: &RateRegion,
    output: &Output,
    prov: &Provenance,
    extra: &[String],
) -> Run {
    let text = match output.format {
        Format::Csv => format!("{}{}", prov.header(extra), region.to_csv()),
        Format::Json => {
            let vertices: Vec<Vertex> = region
                .vertices()
                .iter()
                .map(|v| Vertex {
                    r1: sig12(v.r1).parse().unwrap_or(v.r1),
                    r2: sig12(v.r2).parse().unwrap_or(v.r2),
                })
                .collect();
            let doc = serde_json::json!({
                "provenance": prov.json(),
                "notes": extra,
                "vertices": vertices,
            });
            serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
        }
    };
    emit(output.out.as_ref(), &text)
}

fn cmd_region(a: &RegionArgs) -> Run {
    let prov = Provenance::new(None);
    if a.name == "lindet" {
        let (Some(n1), Some(n2), Some(ne)) = (a.n1, a.n2, a.ne) else {
            return Err(input("lindet needs --n1, --n2 and --ne"));
        };
        let cfg = LinDetConfig::new(n1, n2, ne)?;
        let r = lindet::capacity_region(&cfg);
        return write_region(&r, &a.output, &prov, &[format!("lindet {cfg}")]);
    }
    let mut kind: RegionKind = a.name.parse()?;
    if let RegionKind::FmOracle { step } = &mut kind {
        *step = a.step;
    }
    let ch = load_channel(a.inputs.channel.as_ref())?;
    let spec = if kind.input_only() {
        MarkovSpec::input_only(&input_law(&a.inputs, &ch)?)?
    } else {
        let p = a
            .inputs
            .spec
            .as_ref()
            .ok_or_else(|| input(format!("region '{}' needs --spec", kind)))?;
        load_spec(p)?
    };
    let r = kind.evaluate(&ch, &spec)?;
    write_region(&r, &a.output, &prov, &[format!("region {kind}")])
}

fn write_json(out: Option<&PathBuf>, doc: &serde_json::Value) -> Run {
    emit(out, &(serde_json::to_string_pretty(doc).expect("serializable") + "\n"))
}

fn cmd_verify_lindet(a: &VerifyLindetArgs) -> Run {
    let cfg = LinDetConfig::new(a.n1, a.n2, a.ne)?;
    let budget = bcrsi::budget_from_env();
    let pairs: Vec<(usize, usize)> = match (a.r1, a.r2, a.all_rates) {
        (Some(r1), Some(r2), _) => vec![(r1, r2)],
        (_, _, true) => (0..=cfg.q())
            .flat_map(|r1| (0..=cfg.q()).map(move |r2| (r1, r2)))
            .filter(|&(r1, r2)| cfg.admits(r1, r2))
            .collect(),
        _ => return Err(input("give --r1 and --r2, or --all-rates")),
    };
    let mut reports = Vec::new();
    for &(r1, r2) in &pairs {
        if !cfg.admits(r1, r2) {
            return Err(Error::OutsideRegion { r1, r2 }.into());
        }
        let mut l = lindet::layout(&cfg, r1, r2)?;
        if a.inject_fault {
            l = l.corrupted();
        }
        reports.push(lindet::verify_layout(&cfg, &l, budget)?);
    }
    let passed = reports.iter().all(|r| r.passed());
    let doc = serde_json::json!({
        "provenance": Provenance::new(None).json(),
        "fault_injected": a.inject_fault,
        "passed": passed,
        "reports": reports,
    });
    write_json(a.out.as_ref(), &doc)?;
    match reports.iter().find(|r| !r.passed()) {
        None => Ok(()),
        Some(r) => Err(Failure::Assertion(format!(
            "rates ({}, {}) failed: errors {}/{}, leakage {:e}/{:e}; first failing tuple {}",
            r.r1,
            r.r2,
            r.errors_rx1,
            r.errors_rx2,
            r.leak1_bits,
            r.leak2_bits,
            r.first_failure.as_ref().map_or("none (leakage only)".to_string(), |f| format!(
                "m1={} m2={} filler={} receiver {}",
                f.m1, f.m2, f.filler, f.receiver
            ))
        ))),
    }
}

fn scheme(c: &CodeArgs, ch: &DmcChannel) -> Run<Scheme> {
    let splits: RateSplitVector = serde_json::from_str(&read(&c.splits)?)
        .map_err(|e| input(format!("{}: {e}", c.splits.display())))?;
    splits.validate()?;
    Ok(match c.scheme {
        SchemeName::SecretKey => Scheme::SecretKey {
            splits,
            px: input_law(&c.inputs, ch)?,
        },
        SchemeName::Combined => Scheme::Combined {
            splits,
            px: input_law(&c.inputs, ch)?,
        },
        SchemeName::Superposition => {
            let p = c.inputs.spec.as_ref().ok_or_else(|| input("superposition needs --spec"))?;
            Scheme::Superposition {
                splits,
                spec: load_spec(p)?,
            }
        }
    })
}

fn cmd_verify_codesim(a: &VerifyCodesimArgs) -> Run {
    let ch = load_channel(a.code.inputs.channel.as_ref())?;
    let s = scheme(&a.code, &ch)?;
    let budget = bcrsi::budget_from_env();
    let code = s.build(&ch, a.n, a.seed)?;
    let (pe1, pe2) = codesim::exact_error_prob(&code, &ch, budget)?;
    let l = codesim::exact_leakage(&code, &ch, budget)?;
    // the one-time pad makes individual leakage exactly zero for the
    // secret-key code; other schemes are reported without assertions
    let mut failures = Vec::new();
    if a.code.scheme == SchemeName::SecretKey {
        if l.m1 > lindet::LEAK_TOL {
            failures.push(format!("I(M1;Z^n) = {:e}", l.m1));
        }
        if l.m2 > lindet::LEAK_TOL {
            failures.push(format!("I(M2;Z^n) = {:e}", l.m2));
        }
    }
    let doc = serde_json::json!({
        "provenance": Provenance::new(Some(a.seed)).json(),
        "scheme": s.name(),
        "n": a.n,
        "split": code.split(),
        "codewords": code.words.len(),
        "pe1": pe1,
        "pe2": pe2,
        "leak1": l.m1,
        "leak2": l.m2,
        "leak_joint": l.joint,
        "passed": failures.is_empty(),
    });
    write_json(a.out.as_ref(), &doc)?;
    if failures.is_empty() {
        Ok(())
    } else {
        Err(Failure::Assertion(failures.join("; ")))
    }
}

fn with_suffix(path: &Path, suffix: &str) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let name = match path.extension() {
        Some(e) => format!("{stem}-{suffix}.{}", e.to_string_lossy()),
        None => format!("{stem}-{suffix}"),
    };
    path.with_file_name(name)
}

fn cmd_gaussian(a: &GaussianArgs) -> Run {
    let mut cfg = GaussianConfig::new(a.p, a.s1sq, a.s2sq, a.sesq)?;
    let mut notes = Vec::new();
    if a.swap {
        let (c, swapped) = cfg.ordered();
        cfg = c;
        if swapped {
            notes.push("receivers relabelled so that s1sq <= s2sq".to_string());
        }
    }
    let sc = gaussian::scenario(&cfg)?;
    notes.push(format!("scenario: {}", sc.tag()));
    let prov = Provenance::new(None);
    let csv = Output {
        out: a.out.clone(),
        format: Format::Csv,
    };
    match a.which {
        Which::Inner => write_region(&gaussian::inner_bound(&cfg, a.samples)?, &csv, &prov, &notes),
        Which::Outer => write_region(&gaussian::outer_bound(&cfg, a.samples)?, &csv, &prov, &notes),
        Which::Capacity => {
            let c = gaussian::capacity_region(&cfg, a.samples)?;
            notes.push(format!("exact: {}", c.exact));
            if let Some(d) = c.discrepancy {
                notes.push(format!("inner/outer Hausdorff discrepancy: {}", sig12(d)));
            }
            write_region(&c.region, &csv, &prov, &notes)?;
            if let (Some(outer), Some(out)) = (&c.outer, &a.out) {
                let o = Output {
                    out: Some(with_suffix(out, "outer")),
                    format: Format::Csv,
                };
                write_region(outer, &o, &prov, &notes)?;
            }
            Ok(())
        }
        Which::Both => {
            let inner = gaussian::inner_bound(&cfg, a.samples)?;
            let outer = gaussian::outer_bound(&cfg, a.samples)?;
            let g = gaussian::max_gap(&cfg, 0.1, a.samples.min(101))?;
            notes.push(format!("max gap over [0.1,1]^2: {}", sig12(g)));
            match &a.out {
                Some(out) => {
                    for (r, tag) in [(&inner, "inner"), (&outer, "outer")] {
                        let o = Output {
                            out: Some(with_suffix(out, tag)),
                            format: Format::Csv,
                        };
                        let mut n = notes.clone();
                        n.push(format!("bound: {tag}"));
                        write_region(r, &o, &prov, &n)?;
                    }
                }
                None => {
                    for (r, tag) in [(&inner, "inner"), (&outer, "outer")] {
                        let mut n = notes.clone();
                        n.push(format!("bound: {tag}"));
                        write_region(r, &csv, &prov, &n)?;
                    }
                }
            }
            println!("max_gap={}", sig12(g));
            Ok(())
        }
    }
}

fn cmd_codesim_run(a: &CodesimRunArgs) -> Run {
    let ch = load_channel(a.code.inputs.channel.as_ref())?;
    let s = scheme(&a.code, &ch)?;
    let seeds = if a.seeds.is_empty() { vec![a.seed] } else { a.seeds.clone() };
    let t = codesim::trend_experiment(&s, &ch, &a.n, &seeds, bcrsi::budget_from_env())?;
    let seed_note = seeds.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(",");
    let prov = Provenance::new(seeds.first().copied());
    let text = format!("{}{}", prov.header(&[format!("scheme: {}", s.name()), format!("seeds: {seed_note}")]), t.to_csv());
    emit(a.out.as_ref(), &text)
}

fn cmd_sweep(a: &SweepArgs) -> Run {
    let mut kind: RegionKind = a.name.parse()?;
    if let RegionKind::FmOracle { step } = &mut kind {
        *step = a.step;
    }
    let ch = DmcChannel::from_json(&read(&a.channel)?)?;
    let specs: Vec<MarkovSpec> = if let Some(p) = &a.specs {
        let files: Vec<SpecFile> =
            serde_json::from_str(&read(p)?).map_err(|e| input(format!("{}: {e}", p.display())))?;
        files.iter().map(MarkovSpec::from_file).collect::<Result<_, _>>()?
    } else if let Some(n) = a.grid {
        if ch.x_size != 2 {
            return Err(input("--grid needs a binary-input channel"));
        }
        sampling::binary_input_grid(n.max(1))
            .iter()
            .map(MarkovSpec::input_only)
            .collect::<Result<_, _>>()?
    } else if let Some(n) = a.random {
        let mut r = sampling::rng(a.seed);
        (0..n)
            .map(|_| sampling::random_two_layer(&mut r, 2, 2, ch.x_size))
            .collect::<Result<_, _>>()?
    } else {
        return Err(input("give one of --specs, --grid or --random"));
    };
    let res = region_sweep(&ch, kind, &specs, a.max_specs.unwrap_or(usize::MAX))?;
    for m in &res.skipped {
        eprintln!("skipped: {m}");
    }
    let seed = a.random.map(|_| a.seed);
    let notes = [
        format!("region {kind}"),
        format!("distributions: {} evaluated, {} admitted", res.per_spec.len(), res.admitted()),
    ];
    write_region(&res.hull, &a.output, &Provenance::new(seed), &notes)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let r = match &cli.cmd {
        Command::Region(a) => cmd_region(a),
        Command::Verify(VerifyCmd::Lindet(a)) => cmd_verify_lindet(a),
        Command::Verify(VerifyCmd::Codesim(a)) => cmd_verify_codesim(a),
        Command::Gaussian(GaussianCmd::Bound(a)) => cmd_gaussian(a),
        Command::Codesim(CodesimCmd::Run(a)) => cmd_codesim_run(a),
        Command::Sweep(a) => cmd_sweep(a),
    };
    match r {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Assertion(m)) => {
            eprintln!("verification failed: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Inadmissible(m)) => {
            eprintln!("inadmissible: {m}");
            ExitCode::from(3)
        }
    }
}
