//! The `slopebound` command line.
//!
//! ```text
//! slopebound bound    --g 0 --gb 2 [--L 1.75] [--convention paper_variant]
//! slopebound bound    --g 1 --components "t:2;g:2,3" --N 5
//! slopebound bound    --sweep --g-range 0..5 --gb-range 2..6 --format csv
//! slopebound verify   --builtin constant:-4 --U 3 [--step S] [--tol 1e-7]
//! slopebound verify   --profile samples.tsv
//! slopebound pack     --R 3 --L 1.75 --seeds 1..100 [--attempts 2000] [--out DIR]
//! slopebound spectrum --preset modular-torus --Lmax 2 [--max-word-length 6]
//! slopebound spectrum --group group.json --format csv
//! ```
//!
//! Reports go to `--out`, else into `$SLOPEBOUND_OUT_DIR/<subcommand>.json`
//! (or `.csv`), else to standard output. Exit codes: 0 success, 1 input or
//! precondition error, 2 verification failure.

use std::ffi::OsString;
use std::io::Write;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bounds::{self, BoundInput, BoundaryComponents, SweepRow};
use crate::comparison::{self, CurvatureProfile};
use crate::hypmath::{AreaConvention, SHORT_GEODESIC_CUTOFF};
use crate::lattice;
use crate::output::{self, csv_f64, csv_text, Envelope};
use crate::spectra::{self, presets, FuchsianGroup};
use crate::{Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;

pub const DEFAULT_ATTEMPTS: u64 = 2000;
pub const DEFAULT_MAX_ROWS: usize = 1001;

#[derive(Debug, Parser)]
#[command(
    name = "slopebound",
    version,
    about = "Boundary-slope bounds and their numerical checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(tag = "subcommand", rename_all = "snake_case")]
pub enum Command {
    /// Slope-count bound n(g, g∂), multi-component sums and sweeps.
    Bound(BoundArgs),
    /// Certify k_g <= -tanh u for a curvature profile.
    Verify(VerifyArgs),
    /// Greedy packing campaign audited against the counting bounds.
    Pack(PackArgs),
    /// Length spectrum of a Fuchsian group and its collar report.
    Spectrum(SpectrumArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Json,
    Csv,
}

/// Inclusive integer range written `a..b` (or a single `a`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Span {
    pub start: u64,
    pub end: u64,
}

impl Span {
    pub fn iter(&self) -> RangeInclusive<u64> {
        self.start..=self.end
    }

    fn as_u32(&self, what: &str) -> Result<RangeInclusive<u32>> {
        let conv = |v: u64| {
            u32::try_from(v).map_err(|_| Error::Config(format!("{what}: {v} is too large")))
        };
        Ok(conv(self.start)?..=conv(self.end)?)
    }
}

impl FromStr for Span {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let parse = |t: &str| t.trim().parse::<u64>().map_err(|e| format!("{t:?}: {e}"));
        let (start, end) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b.strip_prefix('=').unwrap_or(b))?),
            None => {
                let v = parse(s)?;
                (v, v)
            }
        };
        if start > end {
            return Err(format!("empty range {s}"));
        }
        Ok(Span { start, end })
    }
}

impl Serialize for Span {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(&format_args!("{}..{}", self.start, self.end))
    }
}

#[derive(Debug, Args, Serialize)]
pub struct BoundArgs {
    /// Genus of the essential surface.
    #[arg(long)]
    pub g: Option<u32>,
    /// Genus of a connected boundary.
    #[arg(long, conflicts_with = "components")]
    pub gb: Option<u32>,
    /// Boundary components, e.g. "t:2;g:2,3" (two tori, genera 2 and 3).
    #[arg(long)]
    pub components: Option<String>,
    /// Slope count N(g) per torus component.
    #[arg(long = "N")]
    #[serde(rename = "N")]
    pub n_torus: Option<u64>,
    /// Number of boundary curves of the surface (detailed length bound).
    #[arg(long)]
    pub n: Option<u32>,
    /// Collar width override for every component.
    #[arg(long = "U-star")]
    #[serde(rename = "U_star")]
    pub u_star: Option<f64>,
    /// Short-geodesic cutoff.
    #[arg(long = "L", default_value_t = SHORT_GEODESIC_CUTOFF)]
    #[serde(rename = "L")]
    pub cutoff: f64,
    #[arg(long, default_value_t = AreaConvention::PaperVariant)]
    pub convention: AreaConvention,
    /// Tabulate connected boundaries over --g-range × --gb-range.
    #[arg(long, conflicts_with_all = ["g", "gb", "components"])]
    pub sweep: bool,
    #[arg(long, default_value = "0..5")]
    pub g_range: Span,
    #[arg(long, default_value = "2..6")]
    pub gb_range: Span,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct VerifyArgs {
    /// constant:K, quadratic (K = -1 - u²), quartic (K = -1 - u⁴) or
    /// perturbed:SEED.
    #[arg(long, conflicts_with = "profile", required_unless_present = "profile")]
    pub builtin: Option<String>,
    /// Two-column (u, K) sample file.
    #[arg(long)]
    pub profile: Option<PathBuf>,
    /// Integration interval [0, U]; defaults to 5 for builtins and the last
    /// sample for files.
    #[arg(long = "U")]
    #[serde(rename = "U")]
    pub extent: Option<f64>,
    /// RK4 step; defaults to U / 100000.
    #[arg(long)]
    pub step: Option<f64>,
    #[arg(long, default_value_t = comparison::DEFAULT_TOLERANCE)]
    pub tol: f64,
    /// Grid rows kept in the report.
    #[arg(long, default_value_t = DEFAULT_MAX_ROWS)]
    pub max_rows: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct PackArgs {
    #[arg(long = "R")]
    #[serde(rename = "R")]
    pub radius: f64,
    #[arg(long = "L", default_value_t = SHORT_GEODESIC_CUTOFF)]
    #[serde(rename = "L")]
    pub separation: f64,
    #[arg(long, default_value = "1..10")]
    pub seeds: Span,
    /// Consecutive rejections that end a greedy run.
    #[arg(long, default_value_t = DEFAULT_ATTEMPTS)]
    pub attempts: u64,
    #[arg(long, default_value_t = AreaConvention::PaperVariant)]
    pub convention: AreaConvention,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Output directory: summary plus one dump per seed.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct SpectrumArgs {
    #[arg(long, conflicts_with = "group", required_unless_present = "group")]
    pub preset: Option<String>,
    /// Group file {name, genus, generators}.
    #[arg(long)]
    pub group: Option<PathBuf>,
    #[arg(long = "Lmax", default_value_t = SHORT_GEODESIC_CUTOFF)]
    #[serde(rename = "L_max")]
    pub l_max: f64,
    #[arg(long, default_value_t = 6)]
    pub max_word_length: usize,
    /// Cutoff of the collar report.
    #[arg(long = "L", default_value_t = SHORT_GEODESIC_CUTOFF)]
    #[serde(rename = "L")]
    pub cutoff: f64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Parses `args` (program name first), runs the subcommand and returns the
/// exit code. Reports go to `stdout` unless written to a file; diagnostics
/// go to `stderr`.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    match dispatch(&cli.command, stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_INPUT
        }
    }
}

fn dispatch(command: &Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Bound(a) => cmd_bound(a, stdout, stderr),
        Command::Verify(a) => cmd_verify(a, stdout, stderr),
        Command::Pack(a) => cmd_pack(a, stdout, stderr),
        Command::Spectrum(a) => cmd_spectrum(a, stdout, stderr),
    }
}

fn extension(format: Format) -> &'static str {
    match format {
        Format::Json => "json",
        Format::Csv => "csv",
    }
}

/// `--out`, else `$SLOPEBOUND_OUT_DIR/<name>.<ext>`, else standard output.
fn emit(
    out: Option<&Path>,
    name: &str,
    format: Format,
    body: &str,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<()> {
    let target = out.map(Path::to_path_buf).or_else(|| {
        output::default_out_dir().map(|d| d.join(format!("{name}.{}", extension(format))))
    });
    match target {
        Some(path) => {
            output::write_atomic(&path, body.as_bytes())?;
            writeln!(stderr, "wrote {}", path.display())?;
        }
        None => stdout.write_all(body.as_bytes())?,
    }
    Ok(())
}

fn envelope_json<C: Serialize, R: Serialize>(
    command: &str,
    config: &C,
    result: &R,
) -> Result<String> {
    output::to_json(&Envelope::new(command, config, result))
}

pub fn cmd_bound(a: &BoundArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32> {
    if a.sweep {
        let rows: Vec<SweepRow> = bounds::sweep(
            a.g_range.as_u32("--g-range")?,
            a.gb_range.as_u32("--gb-range")?,
            a.cutoff,
            a.convention,
        )?;
        let body = match a.format {
            Format::Json => envelope_json("bound", a, &rows)?,
            Format::Csv => bounds::sweep_csv(&rows, a.convention),
        };
        emit(
            a.out.as_deref(),
            "bound-sweep",
            a.format,
            &body,
            stdout,
            stderr,
        )?;
        return Ok(EXIT_OK);
    }

    let g =
        a.g.ok_or_else(|| Error::Config("--g is required (or use --sweep)".into()))?;
    let components = match (&a.components, a.gb) {
        (Some(spec), _) => spec.parse::<BoundaryComponents>()?,
        (None, Some(gb)) => BoundaryComponents::connected(gb),
        (None, None) => return Err(Error::Config("give --gb or --components".into())),
    };
    let input = BoundInput {
        g,
        n: a.n,
        components,
        u_star: a.u_star,
        cutoff: a.cutoff,
        n_torus: a.n_torus,
        convention: a.convention,
    };
    let report = bounds::multi_component_bound(&input)?;
    let body = match a.format {
        Format::Json => envelope_json("bound", a, &report)?,
        Format::Csv => {
            let rows: Vec<SweepRow> = report
                .per_component
                .iter()
                .map(|c| SweepRow::from_component(g, c))
                .collect();
            bounds::sweep_csv(&rows, a.convention)
        }
    };
    emit(a.out.as_deref(), "bound", a.format, &body, stdout, stderr)?;
    Ok(EXIT_OK)
}

/// Resolves a builtin profile name.
pub fn builtin_profile(name: &str, extent: f64) -> Result<CurvatureProfile> {
    let (kind, arg) = match name.split_once(':') {
        Some((k, v)) => (k, Some(v)),
        None => (name, None),
    };
    let need = || arg.ok_or_else(|| Error::Config(format!("builtin {kind:?} needs a parameter")));
    match kind {
        "constant" => {
            let k: f64 = need()?
                .parse()
                .map_err(|e| Error::Config(format!("constant:{}: {e}", arg.unwrap_or(""))))?;
            CurvatureProfile::constant(k, extent)
        }
        "quadratic" => CurvatureProfile::from_fn("quadratic", extent, |u| -1.0 - u * u),
        "quartic" => CurvatureProfile::from_fn("quartic", extent, |u| -1.0 - u.powi(4)),
        "perturbed" => {
            let seed: u64 = need()?
                .parse()
                .map_err(|e| Error::Config(format!("perturbed:{}: {e}", arg.unwrap_or(""))))?;
            CurvatureProfile::perturbed(seed, extent)
        }
        _ => Err(Error::Config(format!(
            "unknown builtin {name:?}; expected constant:K, quadratic, quartic or perturbed:SEED"
        ))),
    }
}

pub fn cmd_verify(a: &VerifyArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32> {
    let profile = match (&a.builtin, &a.profile) {
        (Some(name), _) => builtin_profile(name, a.extent.unwrap_or(5.0))?,
        (None, Some(path)) => {
            let p = CurvatureProfile::load(path)?;
            match a.extent {
                Some(u) => p.with_extent(u)?,
                None => p,
            }
        }
        (None, None) => return Err(Error::Config("give --builtin or --profile".into())),
    };
    if !(a.tol >= 0.0) {
        return Err(Error::Config(format!(
            "--tol {} must be nonnegative",
            a.tol
        )));
    }
    if a.max_rows < 2 {
        return Err(Error::Config("--max-rows must be at least 2".into()));
    }
    let step = a
        .step
        .unwrap_or(profile.extent() / comparison::DEFAULT_STEPS as f64);
    let report = comparison::verify_comparison(&profile, step, a.tol)?;
    let rows = report.grid.len();
    let every = (rows.saturating_sub(1)).div_ceil(a.max_rows - 1).max(1);
    let report = report.thinned(every);
    let certified = report.certified;
    let body = envelope_json("verify", a, &report)?;
    emit(
        a.out.as_deref(),
        "verify",
        Format::Json,
        &body,
        stdout,
        stderr,
    )?;
    if certified {
        Ok(EXIT_OK)
    } else {
        writeln!(
            stderr,
            "not certified: margin {} < -{}",
            report.margin, a.tol
        )?;
        Ok(EXIT_VERIFY)
    }
}

pub const PACK_CSV_HEADER: &str =
    "seed,count,bound_paper,bound_rigorous_floor,paper_bound_exceeded,rigorous_bound_exceeded";

pub fn cmd_pack(a: &PackArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32> {
    let seeds: Vec<u64> = a.seeds.iter().collect();
    let (summary, experiments) =
        lattice::packing_campaign(a.radius, a.separation, &seeds, a.attempts, a.convention)?;
    let body = match a.format {
        Format::Json => envelope_json("pack", a, &summary)?,
        Format::Csv => {
            let mut s = String::from(PACK_CSV_HEADER);
            s.push('\n');
            for o in &summary.seeds {
                s.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    o.seed,
                    o.count,
                    csv_f64(summary.bound_paper),
                    summary.bound_rigorous_floor,
                    o.paper_bound_exceeded,
                    o.rigorous_bound_exceeded
                ));
            }
            s
        }
    };
    let dir = a
        .out
        .clone()
        .or_else(|| output::default_out_dir().map(|d| d.join("pack")));
    match dir {
        Some(dir) => {
            for exp in &experiments {
                let path = dir.join(format!("seed-{}.json", exp.seed));
                output::write_atomic(&path, output::to_json(exp)?.as_bytes())?;
            }
            let path = dir.join(format!("summary.{}", extension(a.format)));
            output::write_atomic(&path, body.as_bytes())?;
            writeln!(
                stderr,
                "wrote {} and {} experiment dumps",
                path.display(),
                experiments.len()
            )?;
        }
        None => stdout.write_all(body.as_bytes())?,
    }
    if summary.paper_violations > 0 {
        writeln!(
            stderr,
            "note: {} seed(s) exceed the A(R+L)/A(L) bound (informational)",
            summary.paper_violations
        )?;
    }
    if summary.rigorous_violations > 0 || summary.invalid_experiments > 0 {
        writeln!(
            stderr,
            "verification failure: {} rigorous-bound violation(s), {} invalid packing(s)",
            summary.rigorous_violations, summary.invalid_experiments
        )?;
        return Ok(EXIT_VERIFY);
    }
    Ok(EXIT_OK)
}

#[derive(Debug, Serialize)]
pub struct SpectrumResult {
    pub spectrum: spectra::Spectrum,
    pub collar_report: spectra::CollarReport,
}

pub fn cmd_spectrum(
    a: &SpectrumArgs,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32> {
    let group: FuchsianGroup = match (&a.preset, &a.group) {
        (Some(name), _) => presets::preset(name).ok_or_else(|| {
            Error::Config(format!(
                "unknown preset {name:?}; available: {}",
                presets::PRESET_NAMES.join(", ")
            ))
        })?,
        (None, Some(path)) => FuchsianGroup::load(path).map_err(|e| match e {
            Error::Io(io) => Error::Parse {
                path: path.clone(),
                message: io.to_string(),
            },
            other => other,
        })?,
        (None, None) => return Err(Error::Config("give --preset or --group".into())),
    };
    let spectrum = spectra::enumerate_spectrum(&group, a.l_max, a.max_word_length)?;
    let collar_report = spectra::collar_report(&spectrum.entries, a.cutoff, group.genus)?;
    if !spectrum.warnings.is_empty() {
        writeln!(
            stderr,
            "warning: {} elliptic word(s); the group does not look discrete and torsion-free",
            spectrum.elliptic_words
        )?;
    }
    if !collar_report.within_bound {
        writeln!(
            stderr,
            "note: {} primitive lengths <= {} exceed floor(2π(g−1)) = {}; simplicity is not tested, review manually",
            collar_report.count, a.cutoff, collar_report.bound_floor
        )?;
    }
    let body = match a.format {
        Format::Json => envelope_json(
            "spectrum",
            a,
            &SpectrumResult {
                spectrum,
                collar_report,
            },
        )?,
        Format::Csv => {
            let mut s = String::from(spectra::SPECTRUM_CSV_HEADER);
            s.push('\n');
            for e in &spectrum.entries {
                s.push_str(&format!(
                    "{},{},{},{}\n",
                    csv_f64(e.length),
                    csv_f64(e.trace_abs),
                    csv_text(&e.representative_word.to_string()),
                    e.multiplicity
                ));
            }
            s
        }
    };
    emit(
        a.out.as_deref(),
        "spectrum",
        a.format,
        &body,
        stdout,
        stderr,
    )?;
    Ok(EXIT_OK)
}
