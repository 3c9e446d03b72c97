//! Command-line front end. Text output is human-oriented and unstable;
//! JSON and CSV are the stable contracts.

use std::path::Path;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::invariants::{
    dm_min, mu, phi, quarter_term, InvariantReport, MuMode, MuValue, ReportOptions,
};
use crate::lattice::{
    default_ample, CoverPair, Lattice, LatticeSpec, LatticeVector, PolarizedClass,
    PRESET_NAMES,
};
use crate::verify::{
    achiever_cell, coords_cell, mu_cell, run_suite, survey_classes, survey_to_csv,
    survey_to_json, sample_classes, SuiteConfig, SuiteReport, SurveyRow,
};
use crate::arith::isqrt_ceil;

#[derive(Parser)]
#[command(
    name = "gonlat",
    version,
    about = "Gonality-type invariants of polarized classes on hyperbolic integer lattices",
    long_about = "Computes the invariants phi and mu, the gonality bound of the general \
member, and the double-cover gonality and Clifford index for polarized classes, all in \
exact integer arithmetic with minimizing witnesses.\n\n\
Lattices are selected by preset name (U, E8_minus, enriques_num, k3_invariant) or by a \
path to a JSON config; a config file fully defines the lattice, including isotropic \
seeds, and takes precedence over preset defaults. Vectors on the command line are \
comma-separated integers without whitespace. The GONLAT_THREADS environment variable \
(integer >= 1) bounds internal parallelism."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full invariant report for one polarized class
    Invariants(ClassArgs),
    /// Only the minimizers: isotropic, mu, and cover witnesses with pairings
    Witness(ClassArgs),
    /// Gram matrix, signature, determinant, and divisibility of a lattice
    Lattice(LatticeArgs),
    /// Run the property suite over sampled classes
    Verify(SuiteArgs),
    /// Tabulate invariants over sampled classes
    Survey(SuiteArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MuModeArg {
    /// Minimize over all B with B^2 = 4, B != C on the positive side
    Unrestricted,
    /// Additionally require phi(B) = 2
    PhiTwo,
}

impl From<MuModeArg> for MuMode {
    fn from(m: MuModeArg) -> MuMode {
        match m {
            MuModeArg::Unrestricted => MuMode::Unrestricted,
            MuModeArg::PhiTwo => MuMode::PhiTwo,
        }
    }
}

#[derive(Args)]
struct ClassArgs {
    /// Preset name or path to a lattice config JSON
    #[arg(long, default_value = "enriques_num")]
    lattice: String,
    /// Class coordinates, comma-separated integers
    #[arg(long)]
    class: String,
    /// Reference polarization; defaults to the lattice's standard one
    #[arg(long)]
    ample: Option<String>,
    #[arg(long, value_enum, default_value_t = MuModeArg::PhiTwo)]
    mu_mode: MuModeArg,
    /// Cap for the mu search; default is the lossless bound for gengon
    #[arg(long)]
    mu_cap: Option<i64>,
    /// Cap for the cover minimum search; default always completes
    #[arg(long)]
    cliff_cap: Option<i64>,
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
}

#[derive(Args)]
struct LatticeArgs {
    /// Preset name or path to a lattice config JSON
    #[arg(long, default_value = "enriques_num")]
    lattice: String,
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
}

#[derive(Args)]
struct SuiteArgs {
    /// Preset name or path to a lattice config JSON
    #[arg(long, default_value = "enriques_num")]
    lattice: String,
    /// Reference polarization; defaults to the lattice's standard one
    #[arg(long)]
    ample: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of classes to sample
    #[arg(long, default_value_t = 100)]
    count: usize,
    /// Coordinate box radius for sampling
    #[arg(long = "box", default_value_t = 3)]
    box_radius: i64,
    /// Largest admitted self-intersection
    #[arg(long, default_value_t = 60)]
    norm_cap: i64,
    #[arg(long, value_enum, default_value_t = MuModeArg::PhiTwo)]
    mu_mode: MuModeArg,
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
}

/// Parses argv and runs; returns the process exit code
/// (0 = success, 1 = property violation, 2 = usage or config error).
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Invariants(args) => cmd_invariants(args),
        Command::Witness(args) => cmd_witness(args),
        Command::Lattice(args) => cmd_lattice(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Survey(args) => cmd_survey(args),
    }
}

fn load_lattice(value: &str) -> Result<Arc<Lattice>> {
    if PRESET_NAMES.contains(&value) {
        return Ok(Arc::new(crate::lattice::preset(value)?));
    }
    let path = Path::new(value);
    if !path.exists() {
        return Err(Error::Config(format!(
            "--lattice: `{value}` is neither a preset ({}) nor an existing config file",
            PRESET_NAMES.join(", ")
        )));
    }
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("--lattice: cannot read `{value}`: {e}")))?;
    let spec = LatticeSpec::from_json(&text)
        .map_err(|e| Error::Config(format!("--lattice: `{value}`: {e}")))?;
    Ok(Arc::new(spec.build()?))
}

fn parse_vec(flag: &str, raw: &str) -> Result<Vec<i64>> {
    raw.split(',')
        .map(|part| {
            part.parse::<i64>().map_err(|_| {
                Error::Config(format!("{flag}: `{part}` is not an integer"))
            })
        })
        .collect()
}

fn vector_for(flag: &str, lattice: &Arc<Lattice>, raw: &str) -> Result<LatticeVector> {
    let coords = parse_vec(flag, raw)?;
    if coords.len() != lattice.rank() {
        return Err(Error::Config(format!(
            "{flag}: expected {} coordinates for this lattice, got {}",
            lattice.rank(),
            coords.len()
        )));
    }
    lattice
        .vector(coords)
        .map_err(|e| Error::Config(format!("{flag}: {e}")))
}

fn build_class(args: &ClassArgs) -> Result<(Arc<Lattice>, PolarizedClass)> {
    let lattice = load_lattice(&args.lattice)?;
    let class_vec = vector_for("--class", &lattice, &args.class)?;
    let ample = match &args.ample {
        Some(raw) => vector_for("--ample", &lattice, raw)?,
        None => {
            let coords = default_ample(&lattice)
                .map_err(|e| Error::Config(format!("--ample: {e}")))?;
            lattice
                .vector(coords)
                .map_err(|e| Error::Config(format!("--ample: {e}")))?
        }
    };
    let class = PolarizedClass::new(class_vec, ample)
        .map_err(|e| Error::Config(format!("--class: {e}")))?;
    Ok((lattice, class))
}

fn format_coords(coords: &[i64]) -> String {
    let inner = coords
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(",");
    format!("({inner})")
}

fn cmd_invariants(args: ClassArgs) -> Result<i32> {
    let (lattice, class) = build_class(&args)?;
    let opts = ReportOptions {
        mu_mode: args.mu_mode.into(),
        mu_cap: args.mu_cap,
        cliff_cap: args.cliff_cap,
    };
    let report = InvariantReport::compute(&class, &opts)?;
    match args.format {
        FormatArg::Json => println!("{}", serde_json::to_string_pretty(&report)
            .map_err(|e| Error::Internal(format!("serialization failed: {e}")))?),
        FormatArg::Csv => {
            let row = SurveyRow::from_report(&report);
            print!("{}", survey_to_csv(&[row])?);
        }
        FormatArg::Text => print_report_text(&lattice, &report),
    }
    Ok(0)
}

fn print_report_text(lattice: &Arc<Lattice>, r: &InvariantReport) {
    println!(
        "class         {}  on {}",
        format_coords(&r.class),
        lattice.name().unwrap_or("custom")
    );
    println!("ample ref     {}", format_coords(&r.ample));
    println!(
        "self-int      {}   genus {}   max gonality {}",
        r.self_int, r.genus, r.max_gonality
    );
    println!(
        "phi           {}   witness {}",
        r.phi,
        format_coords(&r.phi_witness)
    );
    let mode = match r.mu_mode {
        MuMode::Unrestricted => "unrestricted",
        MuMode::PhiTwo => "phi-two",
    };
    match (&r.mu, &r.mu_witness) {
        (MuValue::Finite(v), Some(w)) => {
            println!("mu ({mode})  {v}   witness {}", format_coords(w))
        }
        (MuValue::Finite(v), None) => println!("mu ({mode})  {v}"),
        (MuValue::Unbounded { unbounded_above }, _) => {
            println!("mu ({mode})  none at or below cap {unbounded_above}")
        }
    }
    println!("quarter term  {}", r.quarter_term);
    println!(
        "gengon        {}   achieved by {}",
        r.gengon,
        achiever_cell(&r.achiever)
    );
    println!(
        "cover         self-int {}  genus {}  gonality {}  clifford {}  max gonality {}",
        r.k3_self_int, r.k3_genus, r.k3_gonality, r.k3_clifford, r.k3_max_gonality
    );
    println!(
        "cover minimum {}   witness {}  (self-int {})",
        r.dm_value,
        format_coords(&r.dm_witness),
        r.dm_witness_self_int
    );
}

#[derive(Serialize)]
struct WitnessLine {
    coords: Vec<i64>,
    pairing: i64,
    self_int: i64,
}

#[derive(Serialize)]
struct WitnessOut {
    phi: i64,
    phi_witnesses: Vec<WitnessLine>,
    mu: MuValue,
    mu_witnesses: Vec<WitnessLine>,
    dm_value: Option<i64>,
    dm_witness: Option<WitnessLine>,
}

fn cmd_witness(args: ClassArgs) -> Result<i32> {
    let (lattice, class) = build_class(&args)?;
    let mode: MuMode = args.mu_mode.into();
    let phi_r = phi(&class)?;
    let two_phi = 2 * phi_r.value;
    let quarter = quarter_term(class.self_int());
    let hodge_floor = isqrt_ceil(4 * class.self_int()) - 2;
    let mu_cap = args
        .mu_cap
        .unwrap_or_else(|| (two_phi.min(quarter) + 2).max(hodge_floor));
    let mu_r = mu(&class, mode, mu_cap)?;
    let pair = CoverPair::new(Arc::clone(&lattice))?;
    let lifted = pair.pullback(class.vector())?;
    let cliff_cap = args.cliff_cap.map_or(two_phi - 2, |c| c.max(0));
    let dm = dm_min(&class, &pair, cliff_cap)?;

    let phi_lines: Vec<WitnessLine> = phi_r
        .witnesses
        .iter()
        .map(|w| {
            Ok(WitnessLine {
                coords: w.coords().to_vec(),
                pairing: w.pair(class.vector())?,
                self_int: w.norm(),
            })
        })
        .collect::<Result<_>>()?;
    let mu_lines: Vec<WitnessLine> = mu_r
        .witnesses
        .iter()
        .map(|w| {
            Ok(WitnessLine {
                coords: w.coords().to_vec(),
                pairing: w.pair(class.vector())?,
                self_int: w.norm(),
            })
        })
        .collect::<Result<_>>()?;
    let dm_line = match &dm {
        Some((_, w)) => Some(WitnessLine {
            coords: w.coords().to_vec(),
            pairing: w.pair(&lifted)?,
            self_int: w.norm(),
        }),
        None => None,
    };
    let out = WitnessOut {
        phi: phi_r.value,
        phi_witnesses: phi_lines,
        mu: mu_r.value,
        mu_witnesses: mu_lines,
        dm_value: dm.as_ref().map(|(v, _)| *v),
        dm_witness: dm_line,
    };

    match args.format {
        FormatArg::Json => println!("{}", serde_json::to_string_pretty(&out)
            .map_err(|e| Error::Internal(format!("serialization failed: {e}")))?),
        FormatArg::Csv => {
            let mut writer = csv::Writer::from_writer(Vec::new());
            writer
                .write_record(["kind", "value", "coords", "pairing", "self_int"])
                .map_err(|e| Error::Config(format!("csv emit failed: {e}")))?;
            let mut emit = |kind: &str, value: String, line: &WitnessLine| {
                writer
                    .write_record([
                        kind.to_string(),
                        value,
                        coords_cell(&line.coords),
                        line.pairing.to_string(),
                        line.self_int.to_string(),
                    ])
                    .map_err(|e| Error::Config(format!("csv emit failed: {e}")))
            };
            for line in &out.phi_witnesses {
                emit("phi", out.phi.to_string(), line)?;
            }
            for line in &out.mu_witnesses {
                emit("mu", mu_cell(out.mu), line)?;
            }
            if let (Some(v), Some(line)) = (out.dm_value, &out.dm_witness) {
                emit("cover_min", v.to_string(), line)?;
            }
            let bytes = writer
                .into_inner()
                .map_err(|e| Error::Config(format!("csv emit failed: {e}")))?;
            print!("{}", String::from_utf8_lossy(&bytes));
        }
        FormatArg::Text => {
            println!("phi = {}", out.phi);
            for line in &out.phi_witnesses {
                println!(
                    "  {}  pairing {}  self-int {}",
                    format_coords(&line.coords),
                    line.pairing,
                    line.self_int
                );
            }
            println!("mu = {}", mu_cell(out.mu));
            for line in &out.mu_witnesses {
                println!(
                    "  {}  pairing {}  self-int {}",
                    format_coords(&line.coords),
                    line.pairing,
                    line.self_int
                );
            }
            match (&out.dm_value, &out.dm_witness) {
                (Some(v), Some(line)) => {
                    println!("cover minimum = {v}");
                    println!(
                        "  {}  pairing {}  self-int {}",
                        format_coords(&line.coords),
                        line.pairing,
                        line.self_int
                    );
                }
                _ => println!("cover minimum = none at or below cap {cliff_cap}"),
            }
        }
    }
    Ok(0)
}

#[derive(Serialize)]
struct LatticeOut {
    name: String,
    rank: usize,
    signature: (usize, usize),
    determinant: String,
    two_divisible: bool,
    even: bool,
    gram: Vec<Vec<i64>>,
    iso_seeds: Vec<Vec<i64>>,
}

fn cmd_lattice(args: LatticeArgs) -> Result<i32> {
    let lattice = load_lattice(&args.lattice)?;
    let out = LatticeOut {
        name: lattice.name().unwrap_or("custom").to_string(),
        rank: lattice.rank(),
        signature: lattice.signature(),
        determinant: lattice.determinant().to_string(),
        two_divisible: lattice.is_two_divisible(),
        even: lattice.is_even(),
        gram: lattice.gram().to_vec(),
        iso_seeds: lattice.iso_seeds().to_vec(),
    };
    match args.format {
        FormatArg::Json => println!("{}", serde_json::to_string_pretty(&out)
            .map_err(|e| Error::Internal(format!("serialization failed: {e}")))?),
        FormatArg::Csv => {
            return Err(Error::Config(
                "--format: csv is not supported for `lattice`".into(),
            ))
        }
        FormatArg::Text => {
            println!("lattice        {}", out.name);
            println!("rank           {}", out.rank);
            println!(
                "signature      ({}, {})",
                out.signature.0, out.signature.1
            );
            println!("determinant    {}", out.determinant);
            println!("even           {}", out.even);
            println!("two_divisible  {}", out.two_divisible);
            println!("gram");
            for row in &out.gram {
                let cells: Vec<String> =
                    row.iter().map(|v| format!("{v:>3}")).collect();
                println!("  [{}]", cells.join(" "));
            }
            if out.iso_seeds.is_empty() {
                println!("iso seeds      none");
            } else {
                for seed in &out.iso_seeds {
                    println!("iso seed       {}", format_coords(seed));
                }
            }
        }
    }
    Ok(0)
}

fn suite_config(args: &SuiteArgs) -> Result<SuiteConfig> {
    let lattice = load_lattice(&args.lattice)?;
    let ample = match &args.ample {
        Some(raw) => Some(parse_vec("--ample", raw)?),
        None => None,
    };
    let mut cfg = SuiteConfig::new(lattice);
    cfg.ample = ample;
    cfg.sample_count = args.count;
    cfg.norm_cap = args.norm_cap;
    cfg.box_radius = args.box_radius;
    cfg.rng_seed = args.seed;
    cfg.mu_mode = args.mu_mode.into();
    Ok(cfg)
}

fn cmd_verify(args: SuiteArgs) -> Result<i32> {
    let cfg = suite_config(&args)?;
    let report = run_suite(&cfg)?;
    match args.format {
        FormatArg::Json => println!("{}", serde_json::to_string_pretty(&report)
            .map_err(|e| Error::Internal(format!("serialization failed: {e}")))?),
        FormatArg::Csv => {
            let mut writer = csv::Writer::from_writer(Vec::new());
            writer
                .write_record(["property", "passed", "failed"])
                .map_err(|e| Error::Config(format!("csv emit failed: {e}")))?;
            for p in &report.properties {
                writer
                    .write_record([
                        p.name.clone(),
                        p.passed.to_string(),
                        p.failed.to_string(),
                    ])
                    .map_err(|e| Error::Config(format!("csv emit failed: {e}")))?;
            }
            let bytes = writer
                .into_inner()
                .map_err(|e| Error::Config(format!("csv emit failed: {e}")))?;
            print!("{}", String::from_utf8_lossy(&bytes));
        }
        FormatArg::Text => print_suite_text(&report),
    }
    Ok(if report.all_passed() { 0 } else { 1 })
}

fn print_suite_text(report: &SuiteReport) {
    println!(
        "generator {}  seed {}  mode {:?}",
        report.generator, report.rng_seed, report.mu_mode
    );
    println!(
        "sampled {} classes   elapsed {} ms",
        report.sampled, report.elapsed_ms
    );
    for p in &report.properties {
        println!("  {:<36} {:>6} passed {:>4} failed", p.name, p.passed, p.failed);
    }
    for v in &report.violations {
        let confirmed = match v.box_confirmed {
            Some(true) => "box-confirmed",
            Some(false) => "box-REFUTED (code paths disagree)",
            None => "outside box certification",
        };
        println!(
            "violation: {} on class {} ({}): {}",
            v.property,
            format_coords(&v.class),
            confirmed,
            v.detail
        );
    }
    for f in &report.lattice_failures {
        println!("lattice check failed: {f}");
    }
    println!(
        "RESULT: {}",
        if report.all_passed() { "PASS" } else { "FAIL" }
    );
}

fn cmd_survey(args: SuiteArgs) -> Result<i32> {
    let cfg = suite_config(&args)?;
    let classes = sample_classes(&cfg)?;
    let rows = survey_classes(classes, cfg.mu_mode, Exec::default())?;
    match args.format {
        FormatArg::Json => println!("{}", survey_to_json(&rows)?),
        FormatArg::Csv => print!("{}", survey_to_csv(&rows)?),
        FormatArg::Text => {
            for row in &rows {
                println!(
                    "{}  C2={} g={} phi={} mu={} quarter={} gengon={} [{}] k3={}/{}",
                    format_coords(&row.class),
                    row.self_int,
                    row.genus,
                    row.phi,
                    mu_cell(row.mu),
                    row.quarter_term,
                    row.gengon,
                    achiever_cell(&row.achiever),
                    row.k3_gonality,
                    row.k3_clifford
                );
            }
            println!("{} classes", rows.len());
        }
    }
    Ok(0)
}
