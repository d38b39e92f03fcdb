//! The `okounkov` command-line tool: surfaces from the built-in catalog or JSON
//! files, divisors as label expressions, results as JSON with exact rationals
//! written as `"p/q"` strings.

pub mod expr;
pub mod surface;
pub mod svg;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use okounkov_core::rat::fmt_rat;
use okounkov_core::{
    body_direct, body_from_decomposition, catalog, decompose, decompose_big, minkowski_basis,
    minkowski_sum, mu, scale, simplex_body, zariski_decompose, BasisElement, BodyPolygon,
    Decomposition, DivClass, Error, Rat, SurfaceModel,
};

use crate::expr::parse_divisor;
use crate::surface::{SurfaceFile, CATALOG_DIR_VAR};

#[derive(Debug, Parser)]
#[command(
    name = "okounkov",
    version,
    about = "Zariski decompositions, Minkowski bases and Okounkov bodies of surface divisors"
)]
struct Cli {
    /// Worker threads for commands given several divisors (0: one per core).
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Zariski decomposition P + N of pseudo-effective classes.
    Zariski {
        surface: String,
        #[arg(required = true)]
        divisors: Vec<String>,
    },
    /// Zariski chamber supports and their basis elements.
    Chambers { surface: String },
    /// The Minkowski basis with (height, length) of each element.
    Basis { surface: String },
    /// Minkowski decomposition of nef classes.
    Decompose {
        surface: String,
        #[arg(required = true)]
        divisors: Vec<String>,
        /// Compare the body of the decomposition with the direct computation.
        #[arg(long)]
        check: bool,
        /// Accept big classes and decompose their positive part.
        #[arg(long)]
        positive_part: bool,
    },
    /// Okounkov body polygon of a nef or big class.
    Body {
        surface: String,
        divisor: String,
        /// Write an SVG picture of the body.
        #[arg(long, value_name = "FILE")]
        svg: Option<PathBuf>,
        /// Overlay the scaled simplices of the Minkowski decomposition.
        #[arg(long)]
        decomposed: bool,
    },
    /// Check whether D = T1 + ... + Tk is a Minkowski decomposition.
    Verify {
        surface: String,
        divisor: String,
        #[arg(required = true)]
        terms: Vec<String>,
    },
    /// Print a built-in surface as JSON, or list the available names.
    Catalog { name: Option<String> },
}

#[derive(Debug)]
enum Failure {
    Parse(String),
    Core(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<expr::ParseError> for Failure {
    fn from(e: expr::ParseError) -> Self {
        Failure::Parse(e.0)
    }
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Core(Error::Domain(_)) => 1,
            Failure::Parse(_) | Failure::Core(Error::Input(_)) => 2,
            Failure::Core(Error::Internal(_)) | Failure::Io(_) => 3,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Parse(m) => format!("parse error: {m}"),
            Failure::Core(e) => e.to_string(),
            Failure::Io(m) => format!("i/o error: {m}"),
        }
    }
}

/// Runs the tool with the catalog directory taken from the environment.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let dir = std::env::var_os(CATALOG_DIR_VAR).map(PathBuf::from);
    run_with(args, dir.as_deref(), out, err)
}

/// Exit codes: 0 success, 1 domain error, 2 parse or input error, 3 internal
/// error or an I/O failure. Divisor arguments starting with `-` go after `--`.
pub fn run_with<I, T>(
    args: I,
    catalog_dir: Option<&Path>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    match execute(cli, catalog_dir) {
        Ok(Outcome { value, code }) => {
            let _ = writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&value).expect("json")
            );
            code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message());
            f.code()
        }
    }
}

struct Outcome {
    value: Value,
    code: i32,
}

impl From<Value> for Outcome {
    fn from(value: Value) -> Self {
        Outcome { value, code: 0 }
    }
}

fn rat(r: &Rat) -> Value {
    Value::String(fmt_rat(r))
}

fn class(s: &SurfaceModel, d: &DivClass) -> Value {
    json!({
        "class": s.display(d),
        "coords": d.coords().iter().map(rat).collect::<Vec<_>>(),
    })
}

fn polygon(p: &BodyPolygon) -> Value {
    Value::Array(
        p.vertices()
            .iter()
            .map(|(x, y)| json!([rat(x), rat(y)]))
            .collect(),
    )
}

fn curve_names(s: &SurfaceModel, idx: &[usize]) -> Value {
    idx.iter()
        .map(|&i| Value::String(s.display(&s.negative_curves()[i])))
        .collect()
}

fn element(s: &SurfaceModel, e: &BasisElement) -> Value {
    let mut v = class(s, &e.divisor);
    let o = v.as_object_mut().expect("object");
    let kind = if e.length == Rat::from_integer(0.into()) {
        "boundary"
    } else {
        "chamber"
    };
    o.insert("kind".into(), kind.into());
    o.insert("support".into(), curve_names(s, e.support.indices()));
    o.insert("height".into(), rat(&e.height));
    o.insert("length".into(), rat(&e.length));
    o.insert("d_coeff".into(), rat(&e.d_coeff));
    o.insert("simplex".into(), e.simplex().to_string().into());
    v
}

fn decomposition(s: &SurfaceModel, dec: &Decomposition) -> Value {
    json!({
        "input": class(s, &dec.input),
        "decomposed": class(s, &dec.decomposed),
        "dropped_negative": dec.dropped_negative.iter().map(|(&i, a)| json!({
            "curve": s.display(&s.negative_curves()[i]),
            "coeff": rat(a),
        })).collect::<Vec<_>>(),
        "terms": dec.terms.iter().map(|t| json!({
            "weight": rat(&t.weight),
            "element": element(s, &t.element),
        })).collect::<Vec<_>>(),
    })
}

fn components(dec: &Decomposition) -> Vec<BodyPolygon> {
    dec.terms
        .iter()
        .map(|t| scale(&simplex_body(&t.element.simplex()), &t.weight).expect("positive weight"))
        .collect()
}

/// Runs `f` on every item, on a pool of `jobs` threads when that is allowed.
fn batch<T, F>(jobs: usize, items: &[String], f: F) -> Vec<Result<T, Failure>>
where
    T: Send,
    F: Fn(&String) -> Result<T, Failure> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if jobs != 1 && items.len() > 1 {
        use rayon::prelude::*;
        if let Ok(pool) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
            return pool.install(|| items.par_iter().map(&f).collect());
        }
    }
    let _ = jobs;
    items.iter().map(f).collect()
}

fn one_or_many(mut values: Vec<Value>) -> Value {
    if values.len() == 1 {
        values.pop().expect("one")
    } else {
        Value::Array(values)
    }
}

fn execute(cli: Cli, catalog_dir: Option<&Path>) -> Result<Outcome, Failure> {
    let load = |name: &str| surface::resolve(name, catalog_dir).map_err(Failure::from);
    let jobs = cli.jobs;
    match cli.command {
        Command::Zariski { surface, divisors } => {
            let s = load(&surface)?;
            let results = batch(jobs, &divisors, |text| {
                let d = parse_divisor(text, s.labels())?;
                let z = zariski_decompose(&s, &d)?;
                Ok(json!({
                    "input": class(&s, &d),
                    "positive": class(&s, &z.positive),
                    "negative_part": class(&s, &z.negative_part(&s)),
                    "negative": z.negative_coeffs.iter().map(|(&i, a)| json!({
                        "curve": s.display(&s.negative_curves()[i]),
                        "index": i,
                        "coeff": rat(a),
                    })).collect::<Vec<_>>(),
                }))
            });
            Ok(one_or_many(results.into_iter().collect::<Result<_, _>>()?).into())
        }
        Command::Chambers { surface } => {
            let s = load(&surface)?;
            let b = minkowski_basis(&s)?;
            let chambers: Vec<Value> = b
                .chambers
                .iter()
                .map(|(supp, &i)| {
                    json!({
                        "support": curve_names(&s, supp.indices()),
                        "indices": supp.indices(),
                        "element": class(&s, &b.elements[i].divisor),
                    })
                })
                .collect();
            Ok(json!({ "count": chambers.len(), "chambers": chambers }).into())
        }
        Command::Basis { surface } => {
            let s = load(&surface)?;
            let b = minkowski_basis(&s)?;
            let blocks: Vec<String> = b
                .building_blocks()
                .iter()
                .map(|(h, l)| format!("Δ({}, {})", fmt_rat(h), fmt_rat(l)))
                .collect();
            Ok(json!({
                "count": b.len(),
                "elements": b.elements.iter().map(|e| element(&s, e)).collect::<Vec<_>>(),
                "building_blocks": blocks,
            })
            .into())
        }
        Command::Decompose {
            surface,
            divisors,
            check,
            positive_part,
        } => {
            let s = load(&surface)?;
            let results = batch(jobs, &divisors, |text| {
                let d = parse_divisor(text, s.labels())?;
                let dec = if positive_part && !s.is_nef(&d) {
                    decompose_big(&s, &d)?
                } else {
                    decompose(&s, &d)?
                };
                let mut v = decomposition(&s, &dec);
                let mut agrees = true;
                if check {
                    let ours = body_from_decomposition(&dec);
                    let direct = body_direct(&s, &dec.decomposed)?;
                    agrees = ours == direct;
                    v.as_object_mut().expect("object").insert(
                        "check".into(),
                        json!({
                            "agrees": agrees,
                            "from_decomposition": polygon(&ours),
                            "direct": polygon(&direct),
                        }),
                    );
                }
                Ok((v, agrees))
            });
            let results: Vec<(Value, bool)> = results.into_iter().collect::<Result<_, _>>()?;
            let code = if results.iter().all(|r| r.1) { 0 } else { 3 };
            Ok(Outcome {
                value: one_or_many(results.into_iter().map(|r| r.0).collect()),
                code,
            })
        }
        Command::Body {
            surface,
            divisor,
            svg,
            decomposed,
        } => {
            let s = load(&surface)?;
            let d = parse_divisor(&divisor, s.labels())?;
            let body = body_direct(&s, &d)?;
            let p = zariski_decompose(&s, &d)?.positive;
            let mut v = json!({
                "input": class(&s, &d),
                "vertices": polygon(&body),
                "area": rat(&okounkov_core::area(&body)),
                "mu": rat(&mu(&s, &d)?),
                "height": rat(&s.dot_flag(&p)),
            });
            let overlays = if decomposed {
                let dec = if s.is_nef(&d) {
                    decompose(&s, &d)?
                } else {
                    decompose_big(&s, &d)?
                };
                let parts = components(&dec);
                v.as_object_mut().expect("object").insert(
                    "components".into(),
                    dec.terms
                        .iter()
                        .zip(&parts)
                        .map(|(t, p)| {
                            json!({
                                "weight": rat(&t.weight),
                                "simplex": t.element.simplex().to_string(),
                                "vertices": polygon(p),
                            })
                        })
                        .collect(),
                );
                parts
            } else {
                Vec::new()
            };
            if let Some(path) = svg {
                std::fs::write(&path, svg::render(&body, &overlays))
                    .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
                v.as_object_mut()
                    .expect("object")
                    .insert("svg".into(), path.display().to_string().into());
            }
            Ok(v.into())
        }
        Command::Verify {
            surface,
            divisor,
            terms,
        } => {
            let s = load(&surface)?;
            let d = parse_divisor(&divisor, s.labels())?;
            let parsed: Vec<DivClass> = terms
                .iter()
                .map(|t| parse_divisor(t, s.labels()))
                .collect::<Result<_, _>>()?;
            let total = parsed
                .iter()
                .fold(DivClass::zero(s.rank()), |a, t| a + t.clone());
            if total != d {
                return Err(Error::Domain(format!(
                    "the terms sum to {}, not to {}",
                    s.display(&total),
                    s.display(&d)
                ))
                .into());
            }
            let bodies: Vec<BodyPolygon> = parsed
                .iter()
                .map(|t| body_direct(&s, t))
                .collect::<Result<_, _>>()?;
            let sum = bodies
                .iter()
                .skip(1)
                .fold(bodies[0].clone(), |a, b| minkowski_sum(&a, b));
            let direct = body_direct(&s, &d)?;
            let ok = sum == direct;
            Ok(json!({
                "input": class(&s, &d),
                "terms": parsed.iter().zip(&bodies).map(|(t, b)| json!({
                    "class": s.display(t),
                    "body": polygon(b),
                })).collect::<Vec<_>>(),
                "sum_of_bodies": polygon(&sum),
                "body": polygon(&direct),
                "minkowski_decomposition": ok,
                "verdict": if ok { "is a Minkowski decomposition" } else { "not a Minkowski decomposition" },
            })
            .into())
        }
        Command::Catalog { name } => match name {
            Some(n) => {
                let s = catalog::by_name(&n)?;
                let f = SurfaceFile::from_model(&s);
                Ok(serde_json::to_value(f).expect("plain data").into())
            }
            None => {
                let mut user: Vec<String> = catalog_dir
                    .and_then(|d| std::fs::read_dir(d).ok())
                    .into_iter()
                    .flatten()
                    .filter_map(|e| e.ok())
                    .filter_map(|e| {
                        let p = e.path();
                        (p.extension()? == "json")
                            .then(|| p.file_stem()?.to_str().map(String::from))?
                    })
                    .collect();
                user.sort();
                Ok(json!({ "builtin": catalog::NAMES, "user": user }).into())
            }
        },
    }
}
