//! The `mori-cones` command line.
//!
//! Exit codes: 0 success or pass, 1 check failed, 2 partial result,
//! 64 usage error, 65 bad input data.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::arith::{format_rational, parse_rational, Int, RatMatrix, Rational};
use crate::chamber::verify_fan;
use crate::cone::{fmt_int_vec, Cone, MembershipStatus};
use crate::io::{export_cone, export_model, import_cone, import_model, Num};
use crate::lattice::{ConeKind, Lattice, LatticeMap, VarietyModel};
use crate::lefschetz::{check_birational_twins, check_divisorial_equivalence, Verdict};
use crate::monomial::{MonomialSystem, BUILTIN_NAMES};
use crate::plot::{render_mcd, PlotSpec};
use crate::zoo::{self, TwinPair};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_PARTIAL: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DATA: i32 = 65;

#[derive(Parser, Debug)]
#[command(
    name = "mori-cones",
    version,
    about = "Exact cones of divisors and curves, chamber decompositions and twin checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Inspect, export and import models
    #[command(subcommand)]
    Model(ModelCmd),
    /// Cone queries on model cones or generator files
    #[command(subcommand)]
    Cone(ConeCmd),
    /// Chamber decompositions
    #[command(subcommand)]
    Mcd(McdCmd),
    /// Embedded pairs
    #[command(subcommand)]
    Twin(TwinCmd),
    /// Monomial linear systems
    #[command(subcommand)]
    Mono(MonoCmd),
    /// SVG cross-sections
    #[command(subcommand)]
    Plot(PlotCmd),
}

#[derive(Subcommand, Debug)]
enum ModelCmd {
    /// List the built-in models
    List,
    /// Print a model's bases, pairing, classes, cones and chambers
    Show { model: String },
    /// Write a model as JSON
    Export {
        model: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Read, validate and re-emit a model file in normal form
    Import {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct ConeSource {
    /// Model name or file supplying --cone and --class labels
    #[arg(long)]
    model: Option<String>,
    /// Cone of the model; repeat for two operands
    #[arg(long = "cone", value_enum)]
    cones: Vec<KindArg>,
    /// JSON cone file; repeat for two operands
    #[arg(long = "generators")]
    files: Vec<PathBuf>,
    /// Print the result as JSON
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum KindArg {
    Eff,
    Nef,
    Mov,
    Ne,
}

impl From<KindArg> for ConeKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Eff => ConeKind::Eff,
            KindArg::Nef => ConeKind::Nef,
            KindArg::Mov => ConeKind::Mov,
            KindArg::Ne => ConeKind::Ne,
        }
    }
}

#[derive(Subcommand, Debug)]
enum ConeCmd {
    /// Dual cone; with --pairing, the divisor cone dual to a curve cone
    Dual {
        #[command(flatten)]
        src: ConeSource,
        #[arg(long)]
        pairing: bool,
    },
    /// Extremal rays and lineality
    Rays {
        #[command(flatten)]
        src: ConeSource,
    },
    /// Membership of a class or point
    Contains {
        #[command(flatten)]
        src: ConeSource,
        #[arg(long)]
        class: Option<String>,
        #[arg(long)]
        point: Option<String>,
    },
    /// Intersection of two cones
    Intersect {
        #[command(flatten)]
        src: ConeSource,
    },
    /// Join of two cones
    Join {
        #[command(flatten)]
        src: ConeSource,
    },
}

#[derive(Subcommand, Debug)]
enum McdCmd {
    /// Check that the chambers subdivide the effective cone
    Verify { model: String },
    /// Chambers containing a class
    Locate {
        model: String,
        #[arg(long)]
        class: String,
    },
    /// Walls between adjacent chambers
    Walls { model: String },
}

#[derive(Subcommand, Debug)]
enum TwinCmd {
    /// Compare the cones and chambers of an ambient model and a submodel
    Check {
        ambient: String,
        sub: String,
        /// JSON pullback matrix, rows indexed by the sub basis
        #[arg(long)]
        map: Option<PathBuf>,
        /// Skip the chamber comparison
        #[arg(long)]
        divisorial: bool,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args, Debug)]
struct MonoArgs {
    /// Built-in name (box3.alpha, box3.beta) or JSON file
    #[arg(long)]
    system: String,
    /// Homogeneous coordinates, e.g. "1,2,3,5"
    #[arg(long)]
    point: Option<String>,
}

#[derive(Subcommand, Debug)]
enum MonoCmd {
    /// Image of a point
    Eval {
        #[command(flatten)]
        args: MonoArgs,
    },
    /// Image dimension at a point, or the maximum over random points
    Dim {
        #[command(flatten)]
        args: MonoArgs,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Whether all derivatives of order below k vanish at the point
    Vanish {
        #[command(flatten)]
        args: MonoArgs,
        #[arg(long, default_value_t = 1)]
        order: usize,
    },
}

#[derive(Subcommand, Debug)]
enum PlotCmd {
    /// Cross-section of the chamber decomposition
    Mcd {
        model: String,
        /// Functional ℓ defining the slice ⟨ℓ,x⟩ = 1
        #[arg(long)]
        slice: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = 480)]
        width: u32,
        #[arg(long, default_value_t = 360)]
        height: u32,
    },
}

enum Failure {
    Usage(String),
    Data(String),
}

type Outcome = Result<i32, Failure>;

fn data<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Data(e.to_string())
}

/// Runs one command. Output goes to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    let result = match cli.command {
        Command::Model(c) => model_cmd(c, out),
        Command::Cone(c) => cone_cmd(c, out),
        Command::Mcd(c) => mcd_cmd(c, out),
        Command::Twin(c) => twin_cmd(c, out),
        Command::Mono(c) => mono_cmd(c, out),
        Command::Plot(c) => plot_cmd(c, out),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_USAGE
        }
        Err(Failure::Data(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_DATA
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::Data(format!("cannot read {}: {e}", path.display())))
}

fn emit(out: &mut dyn Write, target: Option<&Path>, text: &str) -> Outcome {
    match target {
        Some(p) => fs::write(p, text)
            .map_err(|e| Failure::Data(format!("cannot write {}: {e}", p.display())))?,
        None => out.write_all(text.as_bytes()).map_err(data)?,
    }
    Ok(EXIT_OK)
}

/// A built-in name, or else a path to a model file.
fn load_model(name: &str) -> Result<VarietyModel, Failure> {
    match zoo::by_name(name) {
        Ok(m) => Ok(m),
        Err(zoo::ZooError::Unknown(_)) if Path::new(name).exists() => {
            import_model(&read(Path::new(name))?).map_err(data)
        }
        Err(e) => Err(data(e)),
    }
}

fn parse_point(text: &str) -> Result<Vec<Rational>, Failure> {
    let cleaned = text.trim().trim_start_matches('[').trim_end_matches(']');
    let parts: Vec<&str> = cleaned
        .split(|c: char| c == ',' || c == ':' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .collect();
    if parts.is_empty() {
        return Err(Failure::Data(format!("empty coordinate list {text:?}")));
    }
    parts
        .iter()
        .map(|p| parse_rational(p).map_err(data))
        .collect()
}

fn ray_name(model: Option<&VarietyModel>, lattice: Option<&Lattice>, ray: &[Int]) -> String {
    let v = fmt_int_vec(ray);
    match (model, lattice) {
        (Some(m), Some(l)) => match m.label_for(l, ray) {
            Some(name) => format!("{name} {v}"),
            None => v,
        },
        _ => v,
    }
}

fn write_cone(
    out: &mut dyn Write,
    c: &Cone,
    model: Option<&VarietyModel>,
    lattice: Option<&Lattice>,
) -> std::io::Result<()> {
    writeln!(out, "rays: {}", c.generators().len())?;
    for r in c.generators() {
        writeln!(out, "  {}", ray_name(model, lattice, r))?;
    }
    writeln!(out, "lineality: {}", c.lineality().len())?;
    for r in c.lineality() {
        writeln!(out, "  {}", fmt_int_vec(r))?;
    }
    writeln!(out, "facets: {}", c.facets().len())?;
    for r in c.facets() {
        writeln!(out, "  {}", fmt_int_vec(r))?;
    }
    if !c.equations().is_empty() {
        writeln!(out, "equations: {}", c.equations().len())?;
        for r in c.equations() {
            writeln!(out, "  {}", fmt_int_vec(r))?;
        }
    }
    Ok(())
}

fn model_cmd(cmd: ModelCmd, out: &mut dyn Write) -> Outcome {
    match cmd {
        ModelCmd::List => {
            for name in zoo::MODEL_NAMES {
                writeln!(out, "{name}").map_err(data)?;
            }
            Ok(EXIT_OK)
        }
        ModelCmd::Show { model } => {
            let m = load_model(&model)?;
            show_model(&m, out).map_err(data)?;
            Ok(EXIT_OK)
        }
        ModelCmd::Export { model, output } => {
            let m = load_model(&model)?;
            emit(out, output.as_deref(), &export_model(&m))
        }
        ModelCmd::Import { file, output } => {
            let m = import_model(&read(&file)?).map_err(data)?;
            let issues = m.validate().map_err(data)?;
            if !issues.is_empty() {
                return Err(Failure::Data(issues.join("; ")));
            }
            emit(out, output.as_deref(), &export_model(&m))
        }
    }
}

fn show_model(m: &VarietyModel, out: &mut dyn Write) -> std::io::Result<()> {
    writeln!(out, "model {}", m.name())?;
    let div = m.divisor_lattice();
    writeln!(out, "divisor basis: {}", div.basis().join(", "))?;
    if let (Some(curves), Some(p)) = (m.curve_lattice(), m.pairing()) {
        writeln!(out, "curve basis: {}", curves.basis().join(", "))?;
        writeln!(out, "pairing:")?;
        let width = div
            .basis()
            .iter()
            .chain(curves.basis())
            .map(|s| s.chars().count())
            .max()
            .unwrap_or(1)
            .max(3);
        let mut header = format!("  {:width$}", "");
        for c in curves.basis() {
            header.push_str(&format!(" {c:>width$}"));
        }
        writeln!(out, "{}", header.trim_end())?;
        for (i, d) in div.basis().iter().enumerate() {
            let mut line = format!("  {d:width$}");
            for j in 0..curves.rank() {
                line.push_str(&format!(
                    " {:>width$}",
                    format_rational(p.matrix().get(i, j))
                ));
            }
            writeln!(out, "{line}")?;
        }
    }
    if !m.classes().is_empty() {
        writeln!(out, "classes:")?;
        for (label, v) in m.classes() {
            writeln!(out, "  {label} = {v}")?;
        }
    }
    for kind in ConeKind::ALL {
        if let (Some(c), Some(l)) = (m.cone(kind), m.lattice_of(kind)) {
            let rays: Vec<String> = c
                .generators()
                .iter()
                .map(|r| ray_name(Some(m), Some(l), r))
                .collect();
            writeln!(out, "{kind}: {}", rays.join(", "))?;
        }
    }
    if let Some(fan) = m.mcd() {
        writeln!(out, "mcd: {} chambers", fan.chambers().len())?;
        for c in fan.chambers() {
            let rays: Vec<String> = c
                .cone
                .generators()
                .iter()
                .map(|r| m.label_for(div, r).unwrap_or_else(|| fmt_int_vec(r)))
                .collect();
            match &c.description {
                Some(d) => writeln!(out, "  {}: <{}> {d}", c.label, rays.join(","))?,
                None => writeln!(out, "  {}: <{}>", c.label, rays.join(","))?,
            }
        }
    }
    Ok(())
}

struct Operand {
    cone: Cone,
    kind: Option<ConeKind>,
}

fn operands(src: &ConeSource) -> Result<(Option<VarietyModel>, Vec<Operand>), Failure> {
    let model = src.model.as_deref().map(load_model).transpose()?;
    let mut ops = Vec::new();
    for &k in &src.cones {
        let kind = ConeKind::from(k);
        let m = model
            .as_ref()
            .ok_or_else(|| Failure::Usage("--cone needs --model".into()))?;
        let cone = m
            .cone(kind)
            .ok_or_else(|| Failure::Data(format!("model {} records no {kind} cone", m.name())))?;
        ops.push(Operand {
            cone: cone.clone(),
            kind: Some(kind),
        });
    }
    for f in &src.files {
        ops.push(Operand {
            cone: import_cone(&read(f)?).map_err(data)?,
            kind: None,
        });
    }
    Ok((model, ops))
}

fn exactly<const N: usize>(ops: Vec<Operand>) -> Result<[Operand; N], Failure> {
    let n = ops.len();
    ops.try_into().map_err(|_| {
        Failure::Usage(format!(
            "expected {N} cone operand(s) from --cone/--generators, got {n}"
        ))
    })
}

fn cone_cmd(cmd: ConeCmd, out: &mut dyn Write) -> Outcome {
    let src = match &cmd {
        ConeCmd::Dual { src, .. }
        | ConeCmd::Rays { src }
        | ConeCmd::Contains { src, .. }
        | ConeCmd::Intersect { src }
        | ConeCmd::Join { src } => src,
    };
    let (model, ops) = operands(src)?;
    let lattice_for = |kind: Option<ConeKind>| -> Option<Lattice> {
        model
            .as_ref()
            .zip(kind)
            .and_then(|(m, k)| m.lattice_of(k))
            .map(|l| (**l).clone())
    };
    let print = |out: &mut dyn Write, c: &Cone, lattice: Option<Lattice>| -> Outcome {
        if src.json {
            out.write_all(export_cone(c).as_bytes()).map_err(data)?;
        } else {
            write_cone(out, c, model.as_ref(), lattice.as_ref()).map_err(data)?;
        }
        Ok(EXIT_OK)
    };
    match &cmd {
        ConeCmd::Dual { pairing, .. } => {
            let [a] = exactly::<1>(ops)?;
            if *pairing {
                if a.kind != Some(ConeKind::Ne) {
                    return Err(Failure::Usage("--pairing applies to --cone ne".into()));
                }
                let m = model.as_ref().expect("--cone implies --model");
                let p = m
                    .pairing()
                    .ok_or_else(|| Failure::Data(format!("model {} has no pairing", m.name())))?;
                let d = a.cone.dual_under_pairing(p.matrix()).map_err(data)?;
                print(out, &d, Some((**m.divisor_lattice()).clone()))
            } else {
                print(out, &a.cone.dual(), None)
            }
        }
        ConeCmd::Rays { .. } => {
            let [a] = exactly::<1>(ops)?;
            print(out, &a.cone, lattice_for(a.kind))
        }
        ConeCmd::Intersect { .. } | ConeCmd::Join { .. } => {
            let [a, b] = exactly::<2>(ops)?;
            let c = if matches!(cmd, ConeCmd::Join { .. }) {
                a.cone.join(&b.cone)
            } else {
                a.cone.intersect(&b.cone)
            }
            .map_err(data)?;
            let lattice = if a.kind.is_some() && lattice_for(a.kind) == lattice_for(b.kind) {
                lattice_for(a.kind)
            } else {
                None
            };
            print(out, &c, lattice)
        }
        ConeCmd::Contains { class, point, .. } => {
            let [a] = exactly::<1>(ops)?;
            let x = match (class, point) {
                (Some(expr), None) => {
                    let m = model
                        .as_ref()
                        .ok_or_else(|| Failure::Usage("--class needs --model".into()))?;
                    let v = m.class_of(expr).map_err(data)?;
                    if let Some(l) = lattice_for(a.kind) {
                        if **v.lattice() != l {
                            return Err(Failure::Data(format!(
                                "{expr:?} is not in the lattice of the {} cone",
                                a.kind.expect("lattice implies kind")
                            )));
                        }
                    }
                    v.coords().to_vec()
                }
                (None, Some(p)) => parse_point(p)?,
                _ => {
                    return Err(Failure::Usage(
                        "give exactly one of --class and --point".into(),
                    ))
                }
            };
            let m = a.cone.contains(&x).map_err(data)?;
            writeln!(out, "{}", m.status).map_err(data)?;
            Ok(if m.is_member() { EXIT_OK } else { EXIT_FAIL })
        }
    }
}

fn mcd_cmd(cmd: McdCmd, out: &mut dyn Write) -> Outcome {
    match cmd {
        McdCmd::Verify { model } => {
            let m = load_model(&model)?;
            let fan = m.mcd().ok_or_else(|| {
                Failure::Data(format!("model {} has no chamber decomposition", m.name()))
            })?;
            let report = verify_fan(fan).map_err(data)?;
            write!(out, "{report}").map_err(data)?;
            let verdict = if report.passed() { "pass" } else { "fail" };
            writeln!(out, "verdict: {verdict}").map_err(data)?;
            Ok(if report.passed() { EXIT_OK } else { EXIT_FAIL })
        }
        McdCmd::Locate { model, class } => {
            let m = load_model(&model)?;
            let x = m.class_of(&class).map_err(data)?;
            let hits = m.locate(&x).map_err(data)?;
            if hits.is_empty() {
                writeln!(out, "outside the effective cone").map_err(data)?;
            }
            for h in hits {
                let place = match h.membership.status {
                    MembershipStatus::Interior => "interior",
                    _ => "boundary",
                };
                writeln!(out, "{place} of chamber {}", h.label).map_err(data)?;
            }
            Ok(EXIT_OK)
        }
        McdCmd::Walls { model } => {
            let m = load_model(&model)?;
            let fan = m.mcd().ok_or_else(|| {
                Failure::Data(format!("model {} has no chamber decomposition", m.name()))
            })?;
            let walls = fan.walls().map_err(data)?;
            for w in walls {
                let rays: Vec<String> = w
                    .cone
                    .generators()
                    .iter()
                    .map(|r| {
                        m.label_for(m.divisor_lattice(), r)
                            .unwrap_or_else(|| fmt_int_vec(r))
                    })
                    .collect();
                writeln!(
                    out,
                    "<{}> between {} and {}",
                    rays.join(","),
                    w.chambers.0,
                    w.chambers.1
                )
                .map_err(data)?;
            }
            Ok(EXIT_OK)
        }
    }
}

fn load_map(
    path: &Path,
    ambient: &VarietyModel,
    sub: &VarietyModel,
) -> Result<LatticeMap, Failure> {
    #[derive(serde::Deserialize)]
    #[serde(untagged)]
    enum MapFile {
        Object { matrix: Vec<Vec<Num>> },
        Rows(Vec<Vec<Num>>),
    }
    let parsed: MapFile = serde_json::from_str(&read(path)?).map_err(data)?;
    let rows = match parsed {
        MapFile::Object { matrix } | MapFile::Rows(matrix) => matrix,
    };
    let cols = ambient.divisor_lattice().rank();
    let rows: Vec<Vec<Rational>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|n| match n {
                    Num::Text(s) => parse_rational(s).map_err(data),
                    Num::Int(i) => Ok(Rational::from_integer(Int::from(*i))),
                })
                .collect()
        })
        .collect::<Result<_, _>>()?;
    let matrix = RatMatrix::from_rows(cols, &rows).map_err(data)?;
    LatticeMap::new(
        ambient.divisor_lattice().clone(),
        sub.divisor_lattice().clone(),
        matrix,
    )
    .map_err(data)
}

fn twin_cmd(cmd: TwinCmd, out: &mut dyn Write) -> Outcome {
    let TwinCmd::Check {
        ambient,
        sub,
        map,
        divisorial,
        json,
    } = cmd;
    let a = load_model(&ambient)?;
    let s = load_model(&sub)?;
    let map = match &map {
        Some(p) => load_map(p, &a, &s)?,
        None => LatticeMap::identity_on_shared_labels(
            a.divisor_lattice().clone(),
            s.divisor_lattice().clone(),
        ),
    };
    let pair = TwinPair::new(a, s, map).map_err(data)?;
    let with_chambers = !divisorial && pair.ambient.mcd().is_some() && pair.sub.mcd().is_some();
    let report = if with_chambers {
        check_birational_twins(&pair)
    } else {
        check_divisorial_equivalence(&pair)
    }
    .map_err(data)?;
    if json {
        write!(out, "{}", report.to_json()).map_err(data)?;
    } else {
        writeln!(out, "{report}").map_err(data)?;
    }
    Ok(match report.verdict {
        Verdict::BirationalTwins | Verdict::DivisoriallyEquivalent => EXIT_OK,
        Verdict::Partial => EXIT_PARTIAL,
        Verdict::Fail => EXIT_FAIL,
    })
}

fn load_system(name: &str) -> Result<MonomialSystem, Failure> {
    if BUILTIN_NAMES.contains(&name) {
        return MonomialSystem::builtin(name).map_err(data);
    }
    if Path::new(name).exists() {
        return serde_json::from_str(&read(Path::new(name))?).map_err(data);
    }
    Err(Failure::Data(format!(
        "unknown system {name:?}: not a built-in ({}) or a file",
        BUILTIN_NAMES.join(", ")
    )))
}

fn required_point(args: &MonoArgs) -> Result<Vec<Rational>, Failure> {
    let p = args
        .point
        .as_deref()
        .ok_or_else(|| Failure::Usage("--point is required".into()))?;
    parse_point(p)
}

fn mono_cmd(cmd: MonoCmd, out: &mut dyn Write) -> Outcome {
    match cmd {
        MonoCmd::Eval { args } => {
            let s = load_system(&args.system)?;
            let p = required_point(&args)?;
            match s.evaluate(&p).map_err(data)? {
                Some(v) => {
                    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                    writeln!(out, "[{}]", parts.join(":")).map_err(data)?;
                }
                None => writeln!(out, "base point").map_err(data)?,
            }
            Ok(EXIT_OK)
        }
        MonoCmd::Dim {
            args,
            samples,
            seed,
        } => {
            let s = load_system(&args.system)?;
            if args.point.is_some() {
                let p = required_point(&args)?;
                writeln!(out, "{}", s.image_dimension(&p).map_err(data)?).map_err(data)?;
                return Ok(EXIT_OK);
            }
            match s.generic_image_dimension(samples, seed) {
                Some(d) => {
                    writeln!(out, "{d}").map_err(data)?;
                    Ok(EXIT_OK)
                }
                None => Err(Failure::Data("every sample point was a base point".into())),
            }
        }
        MonoCmd::Vanish { args, order } => {
            let s = load_system(&args.system)?;
            let p = required_point(&args)?;
            let v = s.vanishes_to_order(&p, order).map_err(data)?;
            writeln!(out, "{v}").map_err(data)?;
            Ok(if v { EXIT_OK } else { EXIT_FAIL })
        }
    }
}

fn plot_cmd(cmd: PlotCmd, out: &mut dyn Write) -> Outcome {
    let PlotCmd::Mcd {
        model,
        slice,
        output,
        width,
        height,
    } = cmd;
    let m = load_model(&model)?;
    let slice = slice.as_deref().map(parse_point).transpose()?;
    let svg = render_mcd(
        &m,
        &PlotSpec {
            slice,
            width,
            height,
        },
    )
    .map_err(data)?;
    emit(out, output.as_deref(), &svg)
}
