use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qlat::output::{
    orbit_json, patch_svg, projection_svg, table_json, tiles_svg, PatchDocument,
};
use qlat::principal::principal_basis;
use qlat::tiling::{anchor_seed, dissociate, grow_patch, GrowthReport};
use qlat::verify::{verify, MAX_VERIFY_RANK};
use qlat::voronoi::{project_voronoi, table1, voronoi_cell, MAX_RANK};
use qlat::{build_root_system, BasisChoice};

#[derive(Parser)]
#[command(
    name = "qlat",
    version,
    about = "Coxeter-plane projections and h-fold rhombic tilings of the hypercubic lattice"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Census of the projected Voronoi cells for n = 1..max-n.
    Table1 {
        #[arg(long, default_value_t = 10)]
        max_n: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Project the Voronoi cell of Zⁿ onto a principal plane.
    Project {
        #[arg(short)]
        n: usize,
        /// 1-based principal plane; plane 1 is the Coxeter plane.
        #[arg(long, default_value_t = 1)]
        plane: usize,
        #[arg(long, value_enum, default_value_t = Basis::Cyclic)]
        basis: Basis,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
    /// Grow a dihedrally symmetric rhombic patch.
    Tile {
        #[arg(short)]
        n: usize,
        /// 0: one dissociated h-gon; 1: the seed rotation; more: grown layers.
        #[arg(long, default_value_t = 1)]
        layers: usize,
        /// Outer Voronoi vertex to rotate about, as `++--` or `1,1,-1,-1`.
        #[arg(long, allow_hyphen_values = true)]
        seed_vertex: Option<String>,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
    /// Run the self-check suite for one rank.
    Verify {
        #[arg(short)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Args)]
struct Output {
    /// Write JSON to PATH, or to standard output with `-` or no value.
    #[arg(long, num_args = 0..=1, default_missing_value = "-", value_name = "PATH|-")]
    json: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Basis {
    Standard,
    Cyclic,
}

impl From<Basis> for BasisChoice {
    fn from(b: Basis) -> Self {
        match b {
            Basis::Standard => BasisChoice::Standard,
            Basis::Cyclic => BasisChoice::Cyclic,
        }
    }
}

enum Failure {
    Usage(String),
    Runtime(String),
    /// Output was written but the result is incomplete.
    Partial(String),
}

impl From<qlat::Error> for Failure {
    fn from(e: qlat::Error) -> Self {
        use qlat::Error::*;
        match e {
            ZeroRank | RankOutOfRange { .. } | InvalidPlane { .. } | InvalidSeed(_)
            | OffsetCount { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Runtime(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

fn check_rank(n: usize, max: usize) -> CmdResult {
    if n == 0 || n > max {
        return Err(Failure::Usage(format!("n must be in 1..={max}, got {n}")));
    }
    Ok(())
}

fn write_to(target: &str, body: &str) -> CmdResult {
    if target == "-" {
        io::stdout().write_all(body.as_bytes())?;
    } else {
        fs::write(target, body).map_err(|e| Failure::Runtime(format!("{target}: {e}")))?;
    }
    Ok(())
}

fn write_path(path: &PathBuf, body: &str) -> CmdResult {
    fs::write(path, body).map_err(|e| Failure::Runtime(format!("{}: {e}", path.display())))
}

/// JSON goes to `--json`'s target, or to standard output under `--format json`.
fn json_target(out: &Output) -> Option<&str> {
    out.json
        .as_deref()
        .or((out.format == Format::Json).then_some("-"))
}

fn parse_seed(s: &str) -> Result<Vec<i8>, Failure> {
    let bad = || Failure::Usage(format!("seed vertex `{s}`: expected e.g. `++--` or `1,1,-1,-1`"));
    if s.contains(',') {
        s.split(',')
            .map(|t| match t.trim() {
                "1" | "+1" => Ok(1),
                "-1" => Ok(-1),
                _ => Err(bad()),
            })
            .collect()
    } else {
        s.chars()
            .map(|c| match c {
                '+' => Ok(1),
                '-' => Ok(-1),
                _ => Err(bad()),
            })
            .collect()
    }
}

fn cmd_table1(max_n: usize, out: &Output) -> CmdResult {
    check_rank(max_n, MAX_RANK)?;
    let rows = table1(max_n)?;
    if let Some(t) = json_target(out) {
        write_to(t, &table_json(&rows)?)?;
    }
    if out.format == Format::Text && out.json.as_deref() != Some("-") {
        let mut s = String::from(
            "n | vertices | concentric polygons | at origin | rhomb angles\n",
        );
        for r in &rows {
            s.push_str(&format!("{r}\n"));
        }
        write_to("-", &s)?;
    }
    Ok(())
}

fn cmd_project(
    n: usize,
    plane: usize,
    basis: Basis,
    svg: Option<&PathBuf>,
    out: &Output,
) -> CmdResult {
    check_rank(n, MAX_RANK)?;
    if n < 2 {
        return Err(Failure::Usage("projection needs n ≥ 2".into()));
    }
    let b = principal_basis(&build_root_system(n, basis.into())?)?;
    let cell = voronoi_cell(n)?;
    let report = project_voronoi(&cell, &b, plane)?;
    if let Some(path) = svg {
        write_path(path, &projection_svg(&cell, &report))?;
    }
    if let Some(t) = json_target(out) {
        write_to(t, &orbit_json(&report)?)?;
    }
    if out.format == Format::Text && out.json.as_deref() != Some("-") {
        let mut s = format!(
            "n = {n}, plane {plane} (exponent {}), {} vertices, {} at origin\n",
            b.plane_exponent(plane)?,
            report.projected.len(),
            report.origin_count()
        );
        for (i, p) in report.polygons.iter().enumerate() {
            s.push_str(&format!(
                "  {}-gon {}: radius {:.12}, phase {:.12}\n",
                b.h,
                i + 1,
                p.radius,
                p.phase
            ));
        }
        write_to("-", &s)?;
    }
    Ok(())
}

fn growth_summary(report: &GrowthReport) -> String {
    let mut s = format!(
        "layers grown: {}/{}, tiles per layer: {:?}\n",
        report.layers_completed, report.layers_requested, report.tiles_per_layer
    );
    if let Some(d) = &report.diagnostic {
        s.push_str(&format!("stopped: {d}\n"));
    }
    s
}

fn cmd_tile(
    n: usize,
    layers: usize,
    seed: Option<&str>,
    svg: Option<&PathBuf>,
    out: &Output,
) -> CmdResult {
    check_rank(n, MAX_RANK)?;
    if n < 3 {
        return Err(Failure::Usage("tilings need n ≥ 3".into()));
    }
    let seed = seed.map(parse_seed).transpose()?;
    let b = principal_basis(&build_root_system(n, BasisChoice::Cyclic)?)?;
    let subs = dissociate(&voronoi_cell(n)?, &b)?;

    let (doc, svg_body, summary, incomplete) = if layers == 0 {
        let s = &subs[0];
        let doc = PatchDocument::from_subtiling(n, s);
        let svg_body = tiles_svg(s.h, &s.tiles, None);
        let summary = format!(
            "n = {n}: one dissociated {}-gon of {} rhombs, mirror line at {:.12} rad\n",
            s.h,
            s.tiles.len(),
            s.symmetry_line
        );
        (doc, svg_body, summary, None)
    } else {
        let (k, patch) = anchor_seed(&subs, &b, seed.as_deref())?;
        let (patch, report) = grow_patch(&patch, &subs, layers - 1)?;
        let c = patch.center();
        let mut summary = format!(
            "n = {n}: {} tiles about ({:.12}, {:.12}), seed subtiling {k}\n",
            patch.len(),
            c.x,
            c.y
        );
        summary.push_str(&growth_summary(&report));
        let incomplete = report.diagnostic.clone();
        (PatchDocument::from_patch(&patch), patch_svg(&patch), summary, incomplete)
    };

    if let Some(path) = svg {
        write_path(path, &svg_body)?;
    }
    if let Some(t) = json_target(out) {
        write_to(t, &doc.to_json()?)?;
    }
    if out.format == Format::Text && out.json.as_deref() != Some("-") {
        write_to("-", &summary)?;
    }
    match incomplete {
        Some(d) => Err(Failure::Partial(d)),
        None => Ok(()),
    }
}

fn cmd_verify(n: usize, format: Format) -> CmdResult {
    check_rank(n, MAX_VERIFY_RANK)?;
    let report = verify(n)?;
    match format {
        Format::Text => write_to("-", &format!("{report}\n"))?,
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report)
                .map_err(|e| Failure::Runtime(e.to_string()))?;
            s.push('\n');
            write_to("-", &s)?;
        }
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Runtime(format!(
            "{} check(s) failed",
            report.failures().count()
        )))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Table1 { max_n, out } => cmd_table1(*max_n, out),
        Command::Project {
            n,
            plane,
            basis,
            svg,
            out,
        } => cmd_project(*n, *plane, *basis, svg.as_ref(), out),
        Command::Tile {
            n,
            layers,
            seed_vertex,
            svg,
            out,
        } => cmd_tile(*n, *layers, seed_vertex.as_deref(), svg.as_ref(), out),
        Command::Verify { n, format } => cmd_verify(*n, *format),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            eprintln!("see `qlat --help` for usage");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Partial(m)) => {
            eprintln!("incomplete: {m}");
            ExitCode::from(3)
        }
    }
}
