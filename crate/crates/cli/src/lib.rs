//! `grp`: command-line access to presentations, enumeration, tensor squares,
//! circular-order cocycles and orderability verdicts.

use std::io::Write;
use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};
use grp_core::abelian::abelianization;
use grp_core::cocycle::{carry_cocycle, homogeneous_from_inhomogeneous, validate_inhomogeneous};
use grp_core::enumerate::{todd_coxeter, Limits};
use grp_core::group::FiniteGroup;
use grp_core::knots::{green_group, wirtinger_data, GaussCode, GREEN_IDS};
use grp_core::order::{classify, classify_green, Status, Verdict};
use grp_core::par;
use grp_core::presentation::Presentation;
use grp_core::tensor::{exterior_square, j_subgroup, multiplier_of, nabla, tensor_square};
use grp_core::Error;
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_OVERFLOW: i32 = 2;
pub const EXIT_UNKNOWN: i32 = 3;

/// Verdict schema shipped with the binary.
pub const VERDICT_SCHEMA: &str = include_str!("../schema/verdict.schema.json");

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "grp", version, about = "Finitely presented groups, tensor squares and orderability")]
pub struct Cli {
    /// Output format; defaults to JSON for analyze, tensor, exterior,
    /// schur, cocycle and order, text elsewhere
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Coset budget for enumerations
    #[arg(long, global = true, default_value_t = 500_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_cosets: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse and print a presentation
    Parse { input: String },
    /// Abelian invariants of the presented group
    Abel { input: String },
    /// Order of the presented group (index of the trivial subgroup)
    Enum { input: String },
    /// Fingerprint of a finite presented group
    Analyze { input: String },
    /// Non-abelian tensor square of a finite presented group
    Tensor { input: String },
    /// Exterior square of a finite presented group
    Exterior { input: String },
    /// Schur multiplier of a finite presented group
    Schur { input: String },
    /// Circular-order cocycles
    Cocycle {
        #[command(subcommand)]
        kind: CocycleKind,
    },
    /// Orderability verdict with its justification trace
    Order { input: String },
    /// Knot diagrams
    Knot {
        #[command(subcommand)]
        kind: KnotKind,
    },
    /// Classify the bundled virtual knot groups (`all` or an identifier)
    Green {
        #[arg(default_value = "all")]
        id: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum CocycleKind {
    /// The carry cocycle on Z/n
    Carry { n: usize },
}

#[derive(Debug, Subcommand)]
pub enum KnotKind {
    /// Wirtinger presentation of a Gauss code (inline or a file)
    Wirtinger { input: String },
}

/// Inline text, `green:<ID>`, or a path to a file holding either.
pub fn read_input(input: &str) -> Result<String, Error> {
    if Path::new(input).is_file() {
        return std::fs::read_to_string(input)
            .map(|s| s.trim().to_string())
            .map_err(|e| Error::Precondition(format!("cannot read {input}: {e}")));
    }
    Ok(input.to_string())
}

fn resolve_presentation(input: &str) -> Result<(String, Presentation), Error> {
    let text = read_input(input)?;
    if let Some(id) = text.strip_prefix("green:") {
        let id = id.trim();
        return Ok((id.to_string(), green_group(id)?));
    }
    let p = Presentation::parse(&text)?;
    Ok((p.to_string(), p))
}

fn finite_group(input: &str, limits: Limits) -> Result<FiniteGroup, Error> {
    let (_, p) = resolve_presentation(input)?;
    FiniteGroup::from_presentation(&p, limits)
}

struct Output {
    text: String,
    json: Value,
    code: i32,
}

impl Output {
    fn new(text: impl Into<String>, json: Value) -> Self {
        Output { text: text.into(), json, code: EXIT_OK }
    }
}

impl Command {
    fn default_format(&self) -> Format {
        match self {
            Command::Analyze { .. }
            | Command::Tensor { .. }
            | Command::Exterior { .. }
            | Command::Schur { .. }
            | Command::Cocycle { .. }
            | Command::Order { .. } => Format::Json,
            _ => Format::Text,
        }
    }
}

fn verdict_text(v: &Verdict) -> String {
    let mut s = format!("{}: {}", v.group, v.status.as_str());
    for step in &v.trace {
        s.push_str(&format!("\n  rule {}: {}", step.rule, step.cite));
        for (k, val) in &step.facts {
            s.push_str(&format!("\n    {k} = {val}"));
        }
        for a in &step.assumptions {
            s.push_str(&format!("\n    assumes: {a}"));
        }
    }
    s
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable output")
}

fn execute(cli: &Cli) -> Result<Output, Error> {
    let limits = Limits::new(cli.max_cosets as usize);
    match &cli.command {
        Command::Parse { input } => {
            let (_, p) = resolve_presentation(input)?;
            let relators: Vec<String> = p.relators().iter().map(|r| p.display_word(r).to_string()).collect();
            let json = json!({
                "presentation": p.to_string(),
                "generators": p.generators(),
                "relators": relators,
                "deficiency": p.deficiency(),
                "wirtinger": p.is_wirtinger(),
            });
            Ok(Output::new(p.to_string(), json))
        }
        Command::Abel { input } => {
            let (_, p) = resolve_presentation(input)?;
            let ab = abelianization(&p);
            let torsion: Vec<String> = ab.torsion().iter().map(|t| t.to_string()).collect();
            let json = json!({
                "invariants": ab.to_string(),
                "free_rank": ab.free_rank(),
                "torsion": torsion,
            });
            Ok(Output::new(ab.to_string(), json))
        }
        Command::Enum { input } => {
            let (_, p) = resolve_presentation(input)?;
            let t = todd_coxeter(&p, &[], limits)?;
            Ok(Output::new(t.len().to_string(), json!({ "index": t.len() })))
        }
        Command::Analyze { input } => {
            let g = finite_group(input, limits)?;
            let f = g.fingerprint();
            let json = to_json(&f);
            let text = fingerprint_text(&json);
            Ok(Output::new(text, json))
        }
        Command::Tensor { input } => {
            let g = finite_group(input, limits)?;
            let t = tensor_square(&g, limits)?;
            let kappa = t.commutator_hom()?;
            let json = json!({
                "source_order": g.order(),
                "carrier_order": t.carrier().order(),
                "carrier_fingerprint": to_json(&t.carrier().fingerprint()),
                "nabla_order": nabla(&t)?.order(),
                "j_order": j_subgroup(&t)?.order(),
                "commutator_image_order": kappa.image().order(),
            });
            let text = format!(
                "|G| = {}\n|G⊗G| = {}\n|∇(G)| = {}\n|J(G)| = {}\n|G'| = {}",
                g.order(),
                t.carrier().order(),
                json["nabla_order"],
                json["j_order"],
                json["commutator_image_order"]
            );
            Ok(Output::new(text, json))
        }
        Command::Exterior { input } => {
            let g = finite_group(input, limits)?;
            let e = exterior_square(&g, limits)?;
            let m = multiplier_of(&e)?;
            let json = json!({
                "source_order": g.order(),
                "carrier_order": e.carrier().order(),
                "carrier_fingerprint": to_json(&e.carrier().fingerprint()),
                "commutator_image_order": e.commutator_hom()?.image().order(),
                "multiplier": m.to_string(),
            });
            let text = format!("|G| = {}\n|G∧G| = {}\nM(G) = {}", g.order(), e.carrier().order(), m);
            Ok(Output::new(text, json))
        }
        Command::Schur { input } => {
            let g = finite_group(input, limits)?;
            let m = multiplier_of(&exterior_square(&g, limits)?)?;
            let torsion: Vec<String> = m.torsion().iter().map(|t| t.to_string()).collect();
            Ok(Output::new(m.to_string(), json!({ "multiplier": m.to_string(), "torsion": torsion })))
        }
        Command::Cocycle { kind: CocycleKind::Carry { n } } => {
            if *n == 0 {
                return Err(Error::Precondition("n must be at least 1".into()));
            }
            let f = carry_cocycle(*n);
            let table: Vec<Vec<u8>> = f.values().chunks(*n).map(<[u8]>::to_vec).collect();
            let violation = validate_inhomogeneous(&f).err();
            let homogeneous = homogeneous_from_inhomogeneous(&f);
            let json = json!({
                "n": n,
                "table": table,
                "valid": violation.is_none(),
                "violation": violation.as_ref().map(to_json),
                "homogeneous_valid": homogeneous.is_ok(),
                "order": homogeneous.as_ref().map(|h| h.sorted()).ok(),
            });
            let mut text: Vec<String> = table
                .iter()
                .map(|row| row.iter().map(u8::to_string).collect::<Vec<_>>().join(" "))
                .collect();
            text.push(match &violation {
                None => "valid".to_string(),
                Some(v) => format!("invalid: {v}"),
            });
            Ok(Output::new(text.join("\n"), json))
        }
        Command::Order { input } => {
            let (name, p) = resolve_presentation(input)?;
            let mut v = classify(&p, limits)?;
            v.group = name;
            let mut out = Output::new(verdict_text(&v), to_json(&v));
            if v.status == Status::Unknown {
                out.code = EXIT_UNKNOWN;
            }
            Ok(out)
        }
        Command::Knot { kind: KnotKind::Wirtinger { input } } => {
            let code = GaussCode::parse(&read_input(input)?)?;
            let data = wirtinger_data(&code)?;
            let p = data.presentation();
            let json = json!({
                "code": code.to_string(),
                "arcs": data.arcs,
                "relations": to_json(&data.relations),
                "presentation": p.to_string(),
            });
            Ok(Output::new(p.to_string(), json))
        }
        Command::Green { id } => {
            if id == "all" {
                let verdicts = par::map_slice(&GREEN_IDS, |id| classify_green(id, limits));
                let verdicts = verdicts.into_iter().collect::<Result<Vec<_>, _>>()?;
                let text = verdicts
                    .iter()
                    .map(|v| format!("{}: {}", v.group, v.status.as_str()))
                    .collect::<Vec<_>>()
                    .join("\n");
                Ok(Output::new(text, to_json(&verdicts)))
            } else {
                let v = classify_green(id, limits)?;
                Ok(Output::new(verdict_text(&v), to_json(&v)))
            }
        }
    }
}

fn fingerprint_text(f: &Value) -> String {
    let obj = f.as_object().expect("fingerprint is an object");
    obj.iter().map(|(k, v)| format!("{k}: {v}")).collect::<Vec<_>>().join("\n")
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Overflow { .. } => EXIT_OVERFLOW,
        _ => EXIT_USAGE,
    }
}

/// Parses `args` (including the program name), runs the command, and
/// returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if code == EXIT_OK { write!(out, "{rendered}") } else { write!(err, "{rendered}") };
            return code;
        }
    };
    match execute(&cli) {
        Ok(o) => {
            let body = match cli.format.unwrap_or_else(|| cli.command.default_format()) {
                Format::Text => o.text,
                Format::Json => serde_json::to_string_pretty(&o.json).expect("json output"),
            };
            let _ = writeln!(out, "{body}");
            o.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}
