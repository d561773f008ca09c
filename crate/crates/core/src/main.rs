use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;

use alcove_orbits::cartan::{build_datum_with, RootDatum, TypeLetter};
use alcove_orbits::involutions::classify;
use alcove_orbits::{report, svg, Budgets, Error};

#[derive(Parser)]
#[command(
    name = "alcove-orbits",
    version,
    about = "Involution classes in affine Weyl groups and orbit censuses on alcoves"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// List the involution classes of one affine Weyl group
    Classes(ClassesOpts),
    /// Full decomposition report: classes, censuses, growth totals
    Report(ReportOpts),
    /// Check exact results against brute-force recomputation
    Oracle(OracleOpts),
    /// Draw the alcove ball colored by orbit (rank 1 and 2 only)
    Svg(SvgOpts),
}

#[derive(Args)]
struct SystemOpts {
    /// Root system type letter: A, B, C, D, E, F or G [no default]
    #[arg(long = "type", value_name = "LETTER")]
    type_letter: Option<char>,

    /// Rank of the root system [no default]
    #[arg(long)]
    rank: Option<usize>,

    /// Cap on enumerated group and ball elements
    /// [default: 1000000 group / 10000000 ball]
    #[arg(long, value_name = "N")]
    budget: Option<usize>,

    /// JSON config file supplying any flag left unset; flags win
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct ClassesOpts {
    #[command(flatten)]
    sys: SystemOpts,

    /// Write the class table as JSON to this path, "-" for stdout
    #[arg(long, value_name = "PATH")]
    json: Option<String>,
}

#[derive(Args)]
struct ReportOpts {
    #[command(flatten)]
    sys: SystemOpts,

    /// Ball radius [default: 3]
    #[arg(long)]
    radius: Option<usize>,

    /// Write the report as JSON to this path, "-" for stdout
    #[arg(long, value_name = "PATH")]
    json: Option<String>,

    /// Compute censuses on worker threads (output is identical either way)
    #[arg(long)]
    parallel: bool,
}

#[derive(Args)]
struct OracleOpts {
    #[command(flatten)]
    sys: SystemOpts,

    /// Ball radius [default: 3]
    #[arg(long)]
    radius: Option<usize>,

    /// Radius for brute-force conjugators [default: 2*radius + 4]
    #[arg(long, value_name = "R")]
    conjugator_radius: Option<usize>,
}

#[derive(Args)]
struct SvgOpts {
    #[command(flatten)]
    sys: SystemOpts,

    /// Ball radius [default: 3]
    #[arg(long)]
    radius: Option<usize>,

    /// Class whose orbits set the colors [default: 0]
    #[arg(long, value_name = "INDEX")]
    class: Option<usize>,

    /// Write the picture to this path, "-" for stdout [default: -]
    #[arg(long, value_name = "PATH")]
    svg: Option<String>,
}

/// Same field names as the flags, all optional.
#[derive(Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    #[serde(rename = "type")]
    type_letter: Option<String>,
    rank: Option<usize>,
    radius: Option<usize>,
    conjugator_radius: Option<usize>,
    class: Option<usize>,
    budget: Option<usize>,
    parallel: Option<bool>,
    json: Option<String>,
    svg: Option<String>,
}

fn load_config(path: Option<&PathBuf>) -> Result<ConfigFile, Error> {
    let Some(path) = path else {
        return Ok(ConfigFile::default());
    };
    let text = fs::read_to_string(path)
        .map_err(|e| Error::InvalidReport(format!("config {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Error::InvalidReport(format!("config {}: {e}", path.display())))
}

fn resolve_system(sys: &SystemOpts, cfg: &ConfigFile) -> Result<(RootDatum, Budgets), Error> {
    let letter = sys
        .type_letter
        .or_else(|| cfg.type_letter.as_ref().and_then(|s| {
            let mut chars = s.chars();
            match (chars.next(), chars.next()) {
                (Some(c), None) => Some(c),
                _ => None,
            }
        }))
        .ok_or_else(|| Error::InvalidReport("missing --type (or \"type\" in config)".into()))?;
    let rank = sys
        .rank
        .or(cfg.rank)
        .ok_or_else(|| Error::InvalidReport("missing --rank (or \"rank\" in config)".into()))?;
    let letter = TypeLetter::from_char(letter).ok_or(Error::InvalidType {
        letter,
        rank,
        constraint: "type letter must be one of A, B, C, D, E, F, G".into(),
    })?;
    let mut budgets = Budgets::default();
    if let Some(b) = sys.budget.or(cfg.budget) {
        budgets.max_group_elements = b;
        budgets.max_ball_elements = b;
    }
    let datum = build_datum_with(letter, rank, &budgets)?;
    Ok((datum, budgets))
}

fn write_output(path: &str, content: &str, what: &str) -> Result<(), Error> {
    if path == "-" {
        print!("{content}");
    } else {
        fs::write(path, content)
            .map_err(|e| Error::InvalidReport(format!("writing {path}: {e}")))?;
        println!("{what} -> {path}");
    }
    Ok(())
}

fn fmt_word(w: &[u8]) -> String {
    let parts: Vec<String> = w.iter().map(|g| g.to_string()).collect();
    format!("[{}]", parts.join(" "))
}

fn fmt_ints<T: std::fmt::Display>(v: &[T]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(" "))
}

fn run_classes(opts: &ClassesOpts) -> Result<ExitCode, Error> {
    let cfg = load_config(opts.sys.config.as_ref())?;
    let (datum, budgets) = resolve_system(&opts.sys, &cfg)?;
    let table = report::build_class_table(&datum, &budgets)?;

    if let Some(path) = opts.json.as_deref().or(cfg.json.as_deref()) {
        let text = report::class_table_to_json(&table)?;
        write_output(path, &text, "class table")?;
        if path == "-" {
            return Ok(ExitCode::SUCCESS);
        }
    }

    println!(
        "type {}{}: {} involution classes",
        table.type_letter, table.rank, table.class_count
    );
    for c in &table.classes {
        println!(
            "  {}: finite={} lambda={} word={} divisors={}",
            c.index,
            fmt_word(&c.finite_word),
            fmt_ints(&c.lambda),
            fmt_word(&c.sigma_word),
            fmt_ints(&c.elementary_divisors),
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn run_report(opts: &ReportOpts) -> Result<ExitCode, Error> {
    let cfg = load_config(opts.sys.config.as_ref())?;
    let (datum, budgets) = resolve_system(&opts.sys, &cfg)?;
    let radius = opts.radius.or(cfg.radius).unwrap_or(3);
    let parallel = opts.parallel || cfg.parallel.unwrap_or(false);
    let rep = report::build_report(&datum, radius, &budgets, parallel)?;

    if let Some(path) = opts.json.as_deref().or(cfg.json.as_deref()) {
        write_output(path, &report::to_json(&rep)?, "report")?;
        if path == "-" {
            return Ok(ExitCode::SUCCESS);
        }
    }

    println!(
        "type {}{} radius {}: {} classes, ball of {} alcoves",
        rep.meta.type_letter, rep.meta.rank, rep.meta.radius, rep.meta.class_count, rep.meta.ball_size
    );
    for entry in &rep.classes {
        println!(
            "  class {}: orbits={} (sigma {})",
            entry.class.index,
            entry.census.orbit_count,
            fmt_word(&entry.class.sigma_word),
        );
    }
    println!("orbits visible by radius:");
    for row in &rep.totals {
        println!(
            "  r={}: ball {}, per class {}",
            row.radius,
            row.ball_size,
            fmt_ints(&row.orbit_counts),
        );
    }
    println!("config hash {}", rep.meta.config_hash);
    Ok(ExitCode::SUCCESS)
}

fn run_oracle(opts: &OracleOpts) -> Result<ExitCode, Error> {
    let cfg = load_config(opts.sys.config.as_ref())?;
    let (datum, budgets) = resolve_system(&opts.sys, &cfg)?;
    let radius = opts.radius.or(cfg.radius).unwrap_or(3);
    let conj = opts
        .conjugator_radius
        .or(cfg.conjugator_radius)
        .unwrap_or(2 * radius + 4);
    let out = report::run_oracle(&datum, radius, conj, &budgets)?;

    println!(
        "class partition: {} brute parts, {} classes met, refines={} equal={}",
        out.brute_class_parts,
        out.classes_met,
        yn(out.class_refines),
        yn(out.class_equal),
    );
    if let Some((a, b)) = &out.class_witness {
        println!("  witness: {} and {} share a part", fmt_word(a), fmt_word(b));
    }
    for line in &out.per_class {
        println!(
            "  class {}: exact={} brute={} refines={} equal={}",
            line.class_index,
            line.exact_orbit_count,
            line.brute_part_count,
            yn(line.refines),
            yn(line.equal),
        );
        if let Some((a, b)) = &line.witness {
            println!(
                "    witness: ball words {} and {} share a part",
                fmt_word(a),
                fmt_word(b)
            );
        }
    }
    if !out.refinement_ok() {
        println!("oracle: FAIL (brute-force partition does not refine the exact one)");
        return Ok(ExitCode::from(1));
    }
    if out.all_equal() {
        println!("oracle: PASS (full equality)");
    } else {
        println!("oracle: PASS (refinement only; raise --conjugator-radius for equality)");
    }
    Ok(ExitCode::SUCCESS)
}

fn run_svg(opts: &SvgOpts) -> Result<ExitCode, Error> {
    let cfg = load_config(opts.sys.config.as_ref())?;
    let (datum, budgets) = resolve_system(&opts.sys, &cfg)?;
    let radius = opts.radius.or(cfg.radius).unwrap_or(3);
    let class = opts.class.or(cfg.class).unwrap_or(0);
    let classification = classify(&datum, &budgets)?;
    let picture = svg::render_svg(&datum, &classification, class, radius, &budgets)?;
    let path = opts
        .svg
        .clone()
        .or(cfg.svg.clone())
        .unwrap_or_else(|| "-".into());
    write_output(&path, &picture, "svg")?;
    Ok(ExitCode::SUCCESS)
}

fn yn(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.cmd {
        Cmd::Classes(o) => run_classes(o),
        Cmd::Report(o) => run_report(o),
        Cmd::Oracle(o) => run_oracle(o),
        Cmd::Svg(o) => run_svg(o),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Internal(_) => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}
