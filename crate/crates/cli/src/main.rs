use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use stratumforge::builders::{
    build_component, compile_diagram, format_classes, parse_classes, surface_report, BuildError, SlitTorusDiagram,
    SurfaceReport,
};
use stratumforge::checker::{theorem1_check, CheckError, ExactCocycle};
use stratumforge::flat::{cylinder_decomposition, GridSurface, Stratum};
use stratumforge::invariants::ComponentTag;
use stratumforge::oracle::{census, census_csv, hurwitz_orbit, DatumJson, OracleError};

#[derive(Parser)]
#[command(name = "stratumforge", version, about = "Square-tiled surfaces in prescribed components of strata")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the main output here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads for parallel enumeration.
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Build and verify a surface: `build "H(4)" odd 1 5`.
    Build {
        stratum: String,
        /// hyp, even, odd, nonhyp or conn
        label: String,
        /// Zero classes, e.g. `1,2|3` (1-based indices in stratum order).
        partition: String,
        d: usize,
    },
    /// Print the invariant report of an origami (text or JSON) or a `.diagram` file.
    Verify { file: PathBuf },
    /// Decide realizability of a period cocycle given as JSON.
    Check { file: PathBuf },
    /// Component census of all origamis with at most N squares, as CSV.
    Census { n: usize },
    /// Hurwitz orbit of a monodromy datum given as JSON.
    Orbit { file: PathBuf },
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    msg: String,
}

impl Failure {
    fn new(code: u8, msg: impl Into<String>) -> Self {
        Failure { code, msg: msg.into() }
    }
}

impl From<BuildError> for Failure {
    fn from(e: BuildError) -> Self {
        let code = match e {
            BuildError::WidthTooSmall { .. } | BuildError::NoSuchComponent { .. } | BuildError::WrongGenus(_) => 2,
            _ => 1,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        let code = match e {
            OracleError::BoundExceeded { .. } | OracleError::OrbitTooLarge(_) => 4,
            _ => 1,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<CheckError> for Failure {
    fn from(e: CheckError) -> Self {
        Failure::new(1, e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::new(1, format!("{}: {e}", path.display())))
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::new(1, format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn json<T: serde::Serialize>(x: &T) -> String {
    serde_json::to_string_pretty(x).expect("plain data") + "\n"
}

fn psi_text(r: &SurfaceReport) -> String {
    if !r.lattice_is_standard {
        return "n/a".into();
    }
    let mut sizes: Vec<usize> = r.psi_orders.iter().map(Vec::len).collect();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    sizes.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

fn report_text(r: &SurfaceReport) -> String {
    let mut s = String::new();
    writeln!(s, "{} {} Ψ={{{}}} d={}", r.stratum, r.component, psi_text(r), r.volume).unwrap();
    writeln!(s, "genus: {}", r.genus).unwrap();
    if r.lattice_is_standard {
        writeln!(s, "lattice: Z+iZ").unwrap();
    } else {
        writeln!(s, "lattice: covolume {}", r.lattice_covolume).unwrap();
    }
    writeln!(s, "volume: {}", r.volume).unwrap();
    writeln!(s, "zero classes (orders): {:?}", r.psi_orders).unwrap();
    writeln!(s, "cylinders: {}", r.cylinders).unwrap();
    match r.involution_fixed_points {
        Some(k) => writeln!(s, "involution: {k} fixed points").unwrap(),
        None => writeln!(s, "involution: none").unwrap(),
    }
    s
}

fn cmd_build(cli: &Cli, stratum: &str, label: &str, partition: &str, d: usize) -> Result<(), Failure> {
    let stratum: Stratum = stratum.parse().map_err(|e| Failure::new(1, format!("{e}")))?;
    let tag: ComponentTag = label.parse().map_err(|e: String| Failure::new(1, e))?;
    let classes = parse_classes(partition)?;
    let s = build_component(&stratum, tag, &classes, d)?;
    let report = surface_report(&s)?;
    let surface = match &cli.out {
        Some(p) if p.extension().is_some_and(|e| e == "json") => s.to_json_string() + "\n",
        _ => s.to_text(),
    };
    match cli.format {
        Format::Text => {
            print!("{}", report_text(&report));
            println!("partition: {}", format_classes(&classes));
        }
        Format::Json => print!("{}", json(&report)),
    }
    match &cli.out {
        Some(_) => emit(&cli.out, &surface),
        None if cli.format == Format::Text => {
            println!();
            emit(&None, &surface)
        }
        None => Ok(()),
    }
}

fn load_surface(path: &Path) -> Result<GridSurface, Failure> {
    let text = read(path)?;
    if path.extension().is_some_and(|e| e == "diagram") {
        let diag = SlitTorusDiagram::from_text(&text)?;
        return Ok(compile_diagram(&diag)?);
    }
    let parsed = if text.trim_start().starts_with('{') {
        GridSurface::from_json_str(&text)
    } else {
        GridSurface::from_text(&text)
    };
    parsed.map_err(|e| Failure::new(1, format!("{}: {e}", path.display())))
}

/// Cross-checks that must hold for every surface.
fn consistency_problems(s: &GridSurface, r: &SurfaceReport) -> Vec<String> {
    let mut out = Vec::new();
    let area = cylinder_decomposition(s).total_area();
    if area != r.volume {
        out.push(format!("cylinders cover area {area}, not {}", r.volume));
    }
    if s.genus() != r.genus {
        out.push(format!("Euler characteristic gives genus {}, the zeros give {}", s.genus(), r.genus));
    }
    if r.component == "hyp" && r.involution_fixed_points != Some(2 * r.genus + 2) {
        out.push(format!("hyperelliptic component without an involution with {} fixed points", 2 * r.genus + 2));
    }
    out
}

fn cmd_verify(cli: &Cli, file: &Path) -> Result<(), Failure> {
    let s = load_surface(file)?;
    let report = surface_report(&s)?;
    let problems = consistency_problems(&s, &report);
    let text = match cli.format {
        Format::Text => report_text(&report),
        Format::Json => json(&report),
    };
    emit(&cli.out, &text)?;
    if problems.is_empty() {
        Ok(())
    } else {
        Err(Failure::new(1, format!("inconsistent surface: {}", problems.join("; "))))
    }
}

fn cmd_check(cli: &Cli, file: &Path) -> Result<(), Failure> {
    let chi = ExactCocycle::from_json_str(&read(file)?)?;
    let verdict = theorem1_check(&chi)?;
    emit(&cli.out, &json(&verdict))?;
    if verdict.realizable {
        Ok(())
    } else {
        Err(Failure::new(3, format!("not realizable: {:?} fails", verdict.failed.expect("a failed condition"))))
    }
}

fn cmd_census(cli: &Cli, n: usize) -> Result<(), Failure> {
    let rows = census(n)?;
    emit(&cli.out, &census_csv(&rows))
}

fn cmd_orbit(cli: &Cli, file: &Path) -> Result<(), Failure> {
    let datum: DatumJson =
        serde_json::from_str(&read(file)?).map_err(|e| Failure::new(1, format!("{}: {e}", file.display())))?;
    let datum = datum.into_datum()?;
    let orbit = hurwitz_orbit(&datum)?;
    let mut rows = Vec::with_capacity(orbit.len());
    for x in &orbit {
        let r = surface_report(&x.realize())?;
        rows.push((DatumJson::from(x), r));
    }
    let text = match cli.format {
        Format::Json => {
            let v: Vec<_> = rows
                .iter()
                .map(|(d, r)| serde_json::json!({"datum": d, "component": r.component, "stratum": r.stratum, "psi": r.psi_orders}))
                .collect();
            json(&v)
        }
        Format::Text => {
            let mut s = format!("orbit: {} data\n", rows.len());
            let mut kinds: Vec<String> =
                rows.iter().map(|(_, r)| format!("{} {} Ψ={{{}}}", r.stratum, r.component, psi_text(r))).collect();
            kinds.sort();
            kinds.dedup();
            for k in kinds {
                writeln!(s, "invariants: {k}").unwrap();
            }
            s
        }
    };
    emit(&cli.out, &text)
}

fn run(cli: &Cli) -> Result<(), Failure> {
    if let Some(j) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build_global()
            .map_err(|e| Failure::new(1, e.to_string()))?;
    }
    match &cli.command {
        Command::Build { stratum, label, partition, d } => cmd_build(cli, stratum, label, partition, *d),
        Command::Verify { file } => cmd_verify(cli, file),
        Command::Check { file } => cmd_check(cli, file),
        Command::Census { n } => cmd_census(cli, *n),
        Command::Orbit { file } => cmd_orbit(cli, file),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
