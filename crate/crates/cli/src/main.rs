//! `dform`: command-line front end for the exterior calculus engine.
//!
//! Exit status is 0 on success, 1 when the computation itself fails
//! (a singular integrand, an inconsistent sequence, a form that is not
//! closed) and 2 when the command line or an input file is malformed.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use dform::cohomology::{self, ExactSequenceProblem, MvSolution, Nerve, NerveFile};
use dform::geometry::{self, Loop, Surface};
use dform::integration::{stokes_check, Chain, QuadratureSpec};
use dform::io::{self, MapFile};
use dform::{poincare, DifferentialForm, Error, SmoothMap, VarNames};

#[derive(Parser)]
#[command(name = "dform", version, about = "Differential forms: symbolic calculus, integration, cohomology and degree")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Clone)]
struct Common {
    /// Gauss–Legendre points per axis (default 16; 64 for winding, 48 for linking)
    #[arg(long, global = true)]
    quad: Option<usize>,
    /// Tolerance for pass/fail decisions
    #[arg(long, global = true, default_value_t = 1e-8)]
    tol: f64,
    /// Emit one JSON object instead of text
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Verb {
    /// Normalize a form, or evaluate its coefficients at a point
    Eval {
        #[arg(long)]
        form: String,
        #[arg(long)]
        dim: Option<usize>,
        /// Comma-separated coordinates
        #[arg(long, allow_hyphen_values = true)]
        at: Option<String>,
    },
    /// Exterior derivative
    D {
        #[arg(long)]
        form: String,
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Wedge product of two forms, in the order given
    Wedge {
        #[arg(long, num_args = 1, required = true)]
        form: Vec<String>,
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Pull a form back along a map (literal `map(u,v) = ...; ...` or a JSON map file)
    Pullback {
        #[arg(long)]
        form: String,
        #[arg(long)]
        map: String,
    },
    /// Integrate a form over a chain
    Integrate {
        #[arg(long)]
        form: String,
        #[arg(long)]
        chain: PathBuf,
    },
    /// Compare ∫_c dω with ∫_∂c ω
    Stokes {
        #[arg(long)]
        form: String,
        #[arg(long)]
        chain: PathBuf,
    },
    /// A primitive of a closed polynomial form, by the homotopy operator
    Primitive {
        #[arg(long)]
        form: String,
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Betti numbers of a sphere (by Mayer–Vietoris), a nerve file, or a named space
    Cohomology {
        #[arg(long, group = "space_choice")]
        sphere: Option<usize>,
        #[arg(long, group = "space_choice")]
        nerve: Option<PathBuf>,
        #[arg(long, group = "space_choice", value_enum)]
        space: Option<NamedSpace>,
    },
    /// Solve an exact sequence for unknown dimensions
    MvSolve {
        #[arg(long)]
        problem: PathBuf,
    },
    /// Winding number of a plane loop about the origin
    Winding {
        #[arg(long = "loop")]
        loop_file: PathBuf,
    },
    /// Gauss linking number of two space loops
    Linking {
        #[arg(long)]
        loop1: PathBuf,
        #[arg(long)]
        loop2: PathBuf,
    },
    /// Degree of a map between closed chains, as a ratio of integrals
    Degree {
        #[arg(long)]
        map: String,
        #[arg(long)]
        domain: PathBuf,
        #[arg(long)]
        codomain: PathBuf,
        /// Test form on the codomain; defaults to the angular or solid-angle form
        #[arg(long)]
        form: Option<String>,
    },
    /// ∫K dA against 2πχ
    GaussBonnet {
        #[arg(long)]
        surface: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        chi: i64,
    },
    /// Describe what a verb computes and how its result is checked
    Explain { topic: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum NamedSpace {
    Point,
    Circle,
    Torus,
    Klein,
}

/// What a verb produces: text lines, the JSON result, and an optional residual.
struct Outcome {
    lines: Vec<String>,
    inputs: Value,
    result: Value,
    residual: Option<f64>,
}

impl Outcome {
    fn new(inputs: Value, result: Value, lines: Vec<String>) -> Self {
        Outcome { lines, inputs, result, residual: None }
    }

    fn with_residual(mut self, r: f64) -> Self {
        self.residual = Some(r);
        self
    }
}

/// Twelve significant digits, without trailing zeros.
fn num(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return if v == 0.0 { "0".into() } else { format!("{v}") };
    }
    let sci = format!("{v:.11e}");
    let (_, e) = sci.split_once('e').expect("scientific format");
    let exp: i32 = e.parse().expect("exponent");
    if !(-5..15).contains(&exp) {
        return sci;
    }
    let decimals = (11 - exp).max(0) as usize;
    let s = format!("{v:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

fn sci(v: f64) -> String {
    format!("{v:.3e}")
}

fn list<T: std::fmt::Display>(xs: &[T]) -> String {
    let parts: Vec<String> = xs.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}

fn usage(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

/// Parses with the given dimension, or the smallest one whose standard names cover the text.
fn parse_form(text: &str, dim: Option<usize>) -> dform::Result<DifferentialForm> {
    if let Some(n) = dim {
        return DifferentialForm::parse(text, n);
    }
    let mut last = None;
    for n in 1..=9 {
        match DifferentialForm::parse(text, n) {
            Ok(f) => return Ok(f),
            Err(e) => last = Some(e),
        }
    }
    Err(last.expect("at least one attempt"))
}

fn load_chain(path: &PathBuf) -> dform::Result<Chain> {
    io::chain_from_file(&io::read_json(path)?)
}

fn load_map(arg: &str) -> dform::Result<SmoothMap> {
    if arg.trim_start().starts_with("map") && arg.contains('=') {
        SmoothMap::parse_literal(arg)
    } else {
        io::map_from_file(&io::read_json::<MapFile>(arg)?)
    }
}

fn spec(common: &Common, default: usize) -> dform::Result<QuadratureSpec> {
    QuadratureSpec::new(common.quad.unwrap_or(default))
}

fn run(verb: &Verb, common: &Common) -> dform::Result<Outcome> {
    match verb {
        Verb::Eval { form, dim, at } => {
            let f = parse_form(form, *dim)?;
            let inputs = json!({ "form": form, "dim": f.dim(), "at": at });
            let Some(at) = at else {
                let text = f.to_string();
                return Ok(Outcome::new(inputs, json!(text), vec![text]));
            };
            let point = at
                .split(',')
                .map(|s| s.trim().parse::<f64>().map_err(|_| usage(format!("bad coordinate {s:?}"))))
                .collect::<dform::Result<Vec<f64>>>()?;
            if point.len() != f.dim() {
                return Err(Error::DimensionMismatch { expected: f.dim(), found: point.len() });
            }
            let values = f.evaluate_coefficients(&point)?;
            let names = VarNames::standard(f.dim());
            if f.degree() == 0 {
                let v = values.first().map_or(0.0, |(_, v)| *v);
                return Ok(Outcome::new(inputs, json!(v), vec![num(v)]));
            }
            let mut lines = Vec::new();
            let mut obj = serde_json::Map::new();
            for (idx, v) in values {
                let label: Vec<String> = idx.as_slice().iter().map(|&i| format!("d{}", names.name(i))).collect();
                let label = label.join("/\\");
                lines.push(format!("{label} = {}", num(v)));
                obj.insert(label, json!(v));
            }
            if lines.is_empty() {
                lines.push("0".into());
            }
            Ok(Outcome::new(inputs, Value::Object(obj), lines))
        }
        Verb::D { form, dim } => {
            let f = parse_form(form, *dim)?;
            let text = f.d().to_string();
            Ok(Outcome::new(json!({ "form": form, "dim": f.dim() }), json!(text), vec![text]))
        }
        Verb::Wedge { form, dim } => {
            if form.len() < 2 {
                return Err(usage("wedge needs at least two --form arguments"));
            }
            let n = match dim {
                Some(n) => *n,
                None => form.iter().map(|s| parse_form(s, None).map(|f| f.dim())).collect::<dform::Result<Vec<_>>>()?.into_iter().max().unwrap_or(1),
            };
            let mut acc = parse_form(&form[0], Some(n))?;
            for s in &form[1..] {
                acc = acc.wedge(&parse_form(s, Some(n))?)?;
            }
            let text = acc.to_string();
            Ok(Outcome::new(json!({ "forms": form, "dim": n }), json!(text), vec![text]))
        }
        Verb::Pullback { form, map } => {
            let g = load_map(map)?;
            let f = parse_form(form, Some(g.codomain_dim()))?;
            let text = g.pullback(&f)?.display_with(g.names());
            Ok(Outcome::new(json!({ "form": form, "map": g.display() }), json!(text), vec![text]))
        }
        Verb::Integrate { form, chain } => {
            let c = load_chain(chain)?;
            let f = parse_form(form, c.ambient())?;
            let v = c.integrate(&f, spec(common, 16)?)?;
            Ok(Outcome::new(json!({ "form": form, "chain": chain }), json!(v), vec![num(v)]))
        }
        Verb::Stokes { form, chain } => {
            let c = load_chain(chain)?;
            let f = parse_form(form, c.ambient())?;
            let r = stokes_check(&f, &c, spec(common, 16)?)?;
            let pass = r.residual <= common.tol;
            Ok(Outcome::new(
                json!({ "form": form, "chain": chain }),
                json!({ "lhs": r.lhs, "rhs": r.rhs, "pass": pass }),
                vec![
                    format!("lhs = {}", num(r.lhs)),
                    format!("rhs = {}", num(r.rhs)),
                    format!("residual = {}", sci(r.residual)),
                    format!("pass = {pass}"),
                ],
            )
            .with_residual(r.residual))
        }
        Verb::Primitive { form, dim } => {
            let f = parse_form(form, *dim)?;
            let b = poincare::primitive(&f)?;
            let text = b.to_string();
            Ok(Outcome::new(json!({ "form": form, "dim": f.dim() }), json!(text), vec![text]).with_residual(0.0))
        }
        Verb::Cohomology { sphere, nerve, space } => {
            let (label, betti) = match (sphere, nerve, space) {
                (Some(n), None, None) => (format!("S^{n}"), cohomology::sphere_betti(*n)?),
                (None, Some(path), None) => {
                    let file: NerveFile = io::read_json(path)?;
                    (path.display().to_string(), Nerve::from_file(&file)?.betti())
                }
                (None, None, Some(s)) => {
                    let (name, nerve) = match s {
                        NamedSpace::Point => ("point", cohomology::point_nerve()),
                        NamedSpace::Circle => ("circle", cohomology::circle_nerve()),
                        NamedSpace::Torus => ("torus", cohomology::torus_nerve()),
                        NamedSpace::Klein => ("klein", cohomology::klein_nerve()),
                    };
                    (name.to_string(), nerve.betti())
                }
                _ => return Err(usage("give exactly one of --sphere, --nerve, --space")),
            };
            Ok(Outcome::new(json!({ "space": label }), json!({ "betti": betti }), vec![format!("b = {}", list(&betti))]))
        }
        Verb::MvSolve { problem } => {
            let p: ExactSequenceProblem = io::read_json(problem)?;
            let sol = cohomology::mv_solve(&p)?;
            let show = |xs: &[Option<u64>]| {
                let parts: Vec<String> = xs.iter().map(|x| x.map_or("?".into(), |v| v.to_string())).collect();
                format!("[{}]", parts.join(", "))
            };
            let lines = match &sol {
                MvSolution::Solved { dims, ranks } => {
                    vec!["status = solved".into(), format!("dims = {}", list(dims)), format!("ranks = {}", list(ranks))]
                }
                MvSolution::UnderDetermined { dims, ranks } => vec![
                    "status = under_determined".into(),
                    format!("dims = {}", show(dims)),
                    format!("ranks = {}", show(ranks)),
                ],
            };
            let result = serde_json::to_value(&sol).expect("serializable");
            Ok(Outcome::new(json!({ "problem": problem }), result, lines))
        }
        Verb::Winding { loop_file } => {
            let l = Loop::new(single_cell(&load_chain(loop_file)?)?)?;
            let w = geometry::winding_number(&l, spec(common, geometry::DEFAULT_WINDING_POINTS)?)?;
            Ok(integer_outcome(json!({ "loop": loop_file }), w))
        }
        Verb::Linking { loop1, loop2 } => {
            let a = Loop::new(single_cell(&load_chain(loop1)?)?)?;
            let b = Loop::new(single_cell(&load_chain(loop2)?)?)?;
            let lk = geometry::linking_number(&a, &b, spec(common, geometry::DEFAULT_LINKING_POINTS)?)?;
            Ok(integer_outcome(json!({ "loop1": loop1, "loop2": loop2 }), lk))
        }
        Verb::Degree { map, domain, codomain, form } => {
            let f = load_map(map)?;
            let x = load_chain(domain)?;
            let y = load_chain(codomain)?;
            let test = match form {
                Some(s) => parse_form(s, y.ambient())?,
                None => match (y.dim(), y.ambient()) {
                    (Some(1), Some(2)) => geometry::angular_form(),
                    (Some(2), Some(3)) => geometry::solid_angle_form(),
                    _ => return Err(usage("no default test form for this codomain; pass --form")),
                },
            };
            let d = geometry::degree_by_integration(&f, &x, &y, &test, spec(common, 16)?)?;
            Ok(integer_outcome(json!({ "map": f.display(), "domain": domain, "codomain": codomain, "form": test.to_string() }), d))
        }
        Verb::GaussBonnet { surface, chi } => {
            let s = Surface::new(load_chain(surface)?, *chi)?;
            let r = geometry::gauss_bonnet_check(&s, spec(common, 16)?)?;
            Ok(Outcome::new(
                json!({ "surface": surface, "chi": chi }),
                json!({ "integral": r.integral, "expected": r.expected }),
                vec![
                    format!("integral = {}", num(r.integral)),
                    format!("expected = {}", num(r.expected)),
                    format!("residual = {}", sci(r.residual)),
                ],
            )
            .with_residual(r.residual))
        }
        Verb::Explain { topic } => {
            let text = explain(topic).ok_or_else(|| usage(format!("nothing to explain about {topic:?}")))?;
            Ok(Outcome::new(json!({ "topic": topic }), json!(text), vec![text.to_string()]))
        }
    }
}

fn single_cell(chain: &Chain) -> dform::Result<dform::Cell> {
    match chain.cells() {
        [(1, c)] => Ok(c.clone()),
        [(-1, c)] => Ok(c.reversed()),
        _ => Err(usage("a loop file holds exactly one cell of weight ±1")),
    }
}

fn integer_outcome(inputs: Value, v: geometry::IntegerValued) -> Outcome {
    Outcome::new(
        inputs,
        json!({ "value": v.value, "rounded": v.rounded }),
        vec![format!("value = {}", num(v.value)), format!("rounded = {}", v.rounded), format!("gap = {}", sci(v.gap()))],
    )
    .with_residual(v.gap())
}

fn explain(topic: &str) -> Option<&'static str> {
    Some(match topic {
        "eval" => "Parses a form and prints it in normal form; with --at, prints each coefficient at that point.",
        "d" => "Exterior derivative, computed symbolically. Coefficients are normalized, so d(d(a)) prints 0.",
        "wedge" => "Wedge product of the given forms, left to right, with multi-indices sorted and signs tracked.",
        "pullback" => "g*a: substitutes the map components into the coefficients and each dx^i by dg^i.",
        "integrate" => "Pulls the form back to each cell's parameter box and applies tensor-product Gauss-Legendre quadrature.",
        "stokes" => "Integrates d(form) over the chain and form over its boundary; the residual is their difference.",
        "primitive" => "Peels one coordinate at a time with the homotopy operator; the answer is checked by differentiating it.",
        "cohomology" => "Spheres: Mayer-Vietoris dimension counting from S^0 upward. Nerves: ranks of the Cech coboundaries over Q.",
        "mv-solve" => "Fills unknown dimensions and ranks of an exact sequence, or reports when several fillings fit.",
        "winding" => "Integral of (x dy - y dx)/(x^2 + y^2) over the loop, divided by 2 pi.",
        "linking" => "Gauss double integral of the pulled-back solid-angle form over the torus of parameter pairs, over 4 pi.",
        "degree" => "Integral of f*a over the domain divided by the integral of a over the codomain.",
        "gauss-bonnet" => "Quadrature of K dA, with K from finite differences of the unit normal, compared with 2 pi chi.",
        _ => return None,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.verb, &cli.common) {
        Ok(out) => {
            if cli.common.json {
                let mut obj = json!({
                    "verb": verb_name(&cli.verb),
                    "inputs": out.inputs,
                    "result": out.result,
                    "provenance": "computed",
                });
                if let Some(r) = out.residual {
                    obj["residual"] = json!(r);
                }
                println!("{}", serde_json::to_string_pretty(&obj).expect("serializable"));
            } else {
                for l in out.lines {
                    println!("{l}");
                }
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            if cli.common.json {
                let obj = json!({ "verb": verb_name(&cli.verb), "error": e.to_string(), "provenance": "computed" });
                println!("{}", serde_json::to_string_pretty(&obj).expect("serializable"));
            }
            eprintln!("error: {e}");
            ExitCode::from(if e.is_usage() { 2 } else { 1 })
        }
    }
}

fn verb_name(v: &Verb) -> &'static str {
    match v {
        Verb::Eval { .. } => "eval",
        Verb::D { .. } => "d",
        Verb::Wedge { .. } => "wedge",
        Verb::Pullback { .. } => "pullback",
        Verb::Integrate { .. } => "integrate",
        Verb::Stokes { .. } => "stokes",
        Verb::Primitive { .. } => "primitive",
        Verb::Cohomology { .. } => "cohomology",
        Verb::MvSolve { .. } => "mv-solve",
        Verb::Winding { .. } => "winding",
        Verb::Linking { .. } => "linking",
        Verb::Degree { .. } => "degree",
        Verb::GaussBonnet { .. } => "gauss-bonnet",
        Verb::Explain { .. } => "explain",
    }
}
