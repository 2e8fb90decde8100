//! Command-line front end. Every invocation prints one JSON report on
//! stdout. Exit codes: 0 verdict computed, 2 input rejected, 3 internal
//! invariant violated.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::arith::QVector;
use crate::cone::{build_space, ConeDocument, FaceHandle, OrderedSpace};
use crate::disjoint::{Certificate, DisjointnessVerdict};
use crate::discrete::DiscreteVerdict;
use crate::error::{Error, Result};
use crate::polyhedron::enumerate_vertices;

pub const EXIT_OK: i32 = 0;
pub const EXIT_REJECTED: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

pub const REPORT_VERSION: u32 = 1;

#[derive(Debug, Parser)]
#[command(name = "ordcone", version, about = "Exact order-theoretic predicates for polyhedral cones")]
struct Cli {
    /// Cone document (JSON file).
    #[arg(long, global = true, conflicts_with = "cone_json")]
    cone: Option<PathBuf>,

    /// Cone document given inline.
    #[arg(long, global = true)]
    cone_json: Option<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    Perp,
    Sym,
    D,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Validation flags, both representations and the strictly positive functional.
    Info,
    /// Whether X ≤ Y.
    Leq {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
    },
    /// One of the three disjointness relations.
    Disjoint {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
    },
    /// A maximal lower bound of {X, Y}.
    Mlb {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
        /// Only consider lower bounds above this one.
        #[arg(long, allow_hyphen_values = true)]
        above: Option<String>,
    },
    Atom {
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
    DDiscrete {
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
    Discrete {
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
    FindAtomBelow {
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
    /// (X − z, Y − z) for a maximal lower bound z.
    MakePair {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
    },
    /// Vertices of [0, X].
    IntervalVertices {
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub version: u32,
    pub command: String,
    pub inputs: Map<String, Value>,
    pub verdict: String,
    pub certificate: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<Value>,
    pub theorem_citations: Vec<String>,
}

impl Report {
    fn new(command: &str) -> Self {
        Report {
            version: REPORT_VERSION,
            command: command.to_string(),
            inputs: Map::new(),
            verdict: String::new(),
            certificate: Value::Null,
            trace: None,
            theorem_citations: Vec::new(),
        }
    }

    fn input(&mut self, key: &str, v: &QVector) {
        self.inputs.insert(key.to_string(), Value::String(v.to_text()));
    }

    fn cite(&mut self, items: &[&str]) {
        self.theorem_citations.extend(items.iter().map(|s| s.to_string()));
    }
}

/// Runs the CLI on `args` (including the program name) and returns the
/// exit code together with the text for stdout.
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => (EXIT_OK, e.to_string()),
                _ => {
                    let mut r = Report::new("usage");
                    r.verdict = "rejected".into();
                    r.certificate = json!({ "error": e.to_string() });
                    (EXIT_REJECTED, to_json(&r))
                }
            };
        }
    };
    let name = command_name(&cli.command);
    match execute(&cli) {
        Ok(report) => (EXIT_OK, to_json(&report)),
        Err(e) => {
            let mut r = Report::new(name);
            r.verdict = if e.is_internal() { "internal-error" } else { "rejected" }.into();
            r.certificate = error_certificate(&e);
            (if e.is_internal() { EXIT_INTERNAL } else { EXIT_REJECTED }, to_json(&r))
        }
    }
}

fn to_json(r: &Report) -> String {
    serde_json::to_string_pretty(r).expect("reports serialize")
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Info => "info",
        Command::Leq { .. } => "leq",
        Command::Disjoint { .. } => "disjoint",
        Command::Mlb { .. } => "mlb",
        Command::Atom { .. } => "atom",
        Command::DDiscrete { .. } => "d-discrete",
        Command::Discrete { .. } => "discrete",
        Command::FindAtomBelow { .. } => "find-atom-below",
        Command::MakePair { .. } => "make-pair",
        Command::IntervalVertices { .. } => "interval-vertices",
    }
}

fn error_certificate(e: &Error) -> Value {
    let mut c = json!({ "error": e.to_string() });
    let hint = match e {
        Error::NotPointed(w) => Some(("direction", w.to_text(), "a positive cone must satisfy C ∩ (−C) = {0}")),
        Error::NotGenerating(w) => Some(("normal", w.to_text(), "the positive cone must span the space (directed order)")),
        Error::NotPositive(w) => Some(("element", w.to_text(), "defined only for elements of the positive cone")),
        Error::NotLowerBound(w) => Some(("element", w.to_text(), "`--above` must be a common lower bound")),
        Error::Unbounded(w) => Some(("ray", w.to_text(), "order intervals of a pointed cone are bounded")),
        _ => None,
    };
    if let Some((key, v, note)) = hint {
        c[key] = Value::String(v);
        c["note"] = Value::String(note.into());
    }
    c
}

fn load_space(cli: &Cli) -> Result<OrderedSpace> {
    let text = match (&cli.cone, &cli.cone_json) {
        (Some(path), _) => std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?,
        (None, Some(text)) => text.clone(),
        (None, None) => return Err(Error::Parse("a cone document is required (--cone or --cone-json)".into())),
    };
    build_space(&ConeDocument::parse(&text)?.to_rep()?)
}

fn vector(space: &OrderedSpace, text: &str) -> Result<QVector> {
    let v = QVector::parse(text)?;
    space.check_dim(&v)?;
    Ok(v)
}

fn texts(vs: &[QVector]) -> Value {
    Value::Array(vs.iter().map(|v| Value::String(v.to_text())).collect())
}

fn face_json(f: &FaceHandle) -> Value {
    json!({ "active_set": f.active_set.iter().collect::<Vec<_>>(), "point": f.generator_point.to_text() })
}

fn bool_text(b: bool) -> String {
    b.to_string()
}

fn disjointness_certificate(v: &DisjointnessVerdict) -> Value {
    match &v.certificate {
        Certificate::ZeroOptima(o) => {
            json!({ "coordinate_optima": o.iter().map(ToString::to_string).collect::<Vec<_>>() })
        }
        Certificate::CommonPoint(w) => json!({ "common_nonzero_point": w.to_text() }),
        Certificate::EqualBounds { witness } => json!({ "upper_bound": witness.to_text(), "bound_sets_equal": true }),
        Certificate::SeparatingPoint { point, above_sums } => json!({
            "separating_point": point.to_text(),
            "upper_bound_of": if *above_sums { "{x+y,-(x+y)}" } else { "{x-y,y-x}" },
        }),
        Certificate::NoUpperBound => json!({ "upper_bounds": "empty" }),
    }
}

fn discrete_certificate(v: &DiscreteVerdict) -> Value {
    match &v.witness {
        Some((a, b)) => json!({ "witness": [a.to_text(), b.to_text()] }),
        None => Value::Null,
    }
}

const ADMISSION: [&str; 3] = [
    "closed cone in finite dimension ⇒ Archimedean",
    "generating cone ⇒ directed",
    "directed Archimedean ⇒ pre-Riesz",
];
const ATOM_EQUIV: &str = "Archimedean with maximal lower bounds: atom ⇔ D-discrete";

fn execute(cli: &Cli) -> Result<Report> {
    let s = load_space(cli)?;
    let mut r = Report::new(command_name(&cli.command));
    match &cli.command {
        Command::Info => {
            let flags = s.flags();
            r.verdict = "admitted".into();
            r.certificate = json!({
                "dim": s.dim(),
                "flags": flags,
                "generators": texts(s.generators()),
                "inequalities": texts(s.inequalities()),
                "strictly_positive_functional": s.strictly_positive_functional().to_text(),
            });
            r.cite(&ADMISSION);
        }
        Command::Leq { x, y } => {
            let (x, y) = (vector(&s, x)?, vector(&s, y)?);
            r.input("x", &x);
            r.input("y", &y);
            let diff = &y - &x;
            r.verdict = bool_text(s.leq(&x, &y)?);
            let values: Vec<String> = s.inequalities().iter().map(|a| a.dot(&diff).to_string()).collect();
            r.certificate = json!({ "y_minus_x": diff.to_text(), "inequality_values": values });
        }
        Command::Disjoint { kind, x, y } => {
            let (x, y) = (vector(&s, x)?, vector(&s, y)?);
            r.input("x", &x);
            r.input("y", &y);
            let v = match kind {
                Kind::Perp => {
                    r.cite(&["x ⊥ y: {x+y, −(x+y)} and {x−y, y−x} have the same nonempty upper bounds"]);
                    s.perp(&x, &y)?
                }
                Kind::Sym => {
                    r.cite(&["symmetric-interval condition: [−x,x] ∩ [−y,y] = {0}"]);
                    s.sym_interval_disjoint(&x, &y)?
                }
                Kind::D => {
                    r.cite(&["x ⊥* y: [0,x] ∩ [0,y] = {0}", "x ⊥* y ⟺ 0 is a maximal element of {x,y}^L"]);
                    s.d_disjoint(&x, &y)?
                }
            };
            r.inputs.insert("kind".into(), serde_json::to_value(v.kind).expect("kind"));
            r.verdict = bool_text(v.result);
            r.certificate = disjointness_certificate(&v);
        }
        Command::Mlb { x, y, above } => {
            let (x, y) = (vector(&s, x)?, vector(&s, y)?);
            r.input("x", &x);
            r.input("y", &y);
            let above = above.as_deref().map(|a| vector(&s, a)).transpose()?;
            if let Some(a) = &above {
                r.input("above", a);
            }
            let z = s.maximal_lower_bound(&x, &y, above.as_ref())?;
            if !s.is_maximal_lower_bound(&x, &y, &z)? {
                return Err(Error::Invariant(format!("{z} fails the maximality re-check")));
            }
            r.verdict = "maximal".into();
            r.certificate = json!({
                "maximal_lower_bound": z.to_text(),
                "functional": s.strictly_positive_functional().to_text(),
            });
            r.cite(&["a strictly positive functional's maximizers over {x,y}^L are maximal elements"]);
        }
        Command::Atom { x } => {
            let x = vector(&s, x)?;
            r.input("x", &x);
            let atom = s.is_atom(&x)?;
            r.verdict = bool_text(atom);
            if !atom {
                if let Some(w) = s.d_disjoint_witness_below(&x)? {
                    r.certificate = json!({ "element_off_ray": w.vertex.to_text() });
                }
            }
            r.cite(&["atom: 0 ≤ a ≤ x implies a = αx"]);
        }
        Command::DDiscrete { x } => {
            let x = vector(&s, x)?;
            r.input("x", &x);
            let v = s.is_d_discrete(&x)?;
            r.verdict = status_text(&v);
            r.certificate = discrete_certificate(&v);
            r.cite(&[ATOM_EQUIV, "every atom is D-discrete"]);
        }
        Command::Discrete { x } => {
            let x = vector(&s, x)?;
            r.input("x", &x);
            let v = s.is_discrete(&x)?;
            r.verdict = status_text(&v);
            r.certificate = discrete_certificate(&v);
            r.cite(&["every atom is D-discrete", "x ⊥ y ⇒ x ⊥* y, hence D-discrete ⇒ discrete"]);
        }
        Command::FindAtomBelow { x } => {
            let x = vector(&s, x)?;
            r.input("x", &x);
            let d = s.find_atom_below(&x)?;
            r.verdict = "found".into();
            r.certificate = json!({ "atom": d.atom.to_text() });
            r.trace = Some(Value::Array(
                d.trace.iter().map(|(v, f)| json!({ "element": v.to_text(), "face": face_json(f) })).collect(),
            ));
            r.cite(&[ATOM_EQUIV, "finite dimension: below every nonzero positive element lies a D-discrete one"]);
        }
        Command::MakePair { x, y } => {
            let (x, y) = (vector(&s, x)?, vector(&s, y)?);
            r.input("x", &x);
            r.input("y", &y);
            let p = s.make_d_disjoint_pair(&x, &y)?;
            r.verdict = "d_disjoint_pair".into();
            r.certificate = json!({ "u": p.u.to_text(), "v": p.v.to_text(), "maximal_lower_bound": p.meet.to_text() });
            r.cite(&["z maximal in {x,y}^L ⇒ (x − z) ⊥* (y − z)"]);
        }
        Command::IntervalVertices { x } => {
            let x = vector(&s, x)?;
            r.input("x", &x);
            let vs = enumerate_vertices(&s.interval(&QVector::zeros(s.dim()), &x)?.body)?;
            r.verdict = vs.len().to_string();
            r.certificate = json!({ "vertices": texts(&vs) });
        }
    }
    Ok(r)
}

fn status_text(v: &DiscreteVerdict) -> String {
    serde_json::to_value(v.status).ok().and_then(|s| s.as_str().map(str::to_string)).unwrap_or_default()
}
