//! The `jl` command line: every library operation behind one subcommand,
//! JSON on standard output.
//!
//! Exit codes: 0 on success, 1 for bad input or a failed precondition, 2 for
//! an internal inconsistency. Failures print `{"error": {"kind", "detail"}}`.

use std::collections::BTreeMap;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

use jl_core::adele::{evaluate_character, idele_decompose, idele_norm, integrate_factorizable};
use jl_core::arith::Q;
use jl_core::error::Error;
use jl_core::finitetf::{compare_models, FiniteModel};
use jl_core::localpoly::{etale_algebra_invariants, factor_degrees, is_u_compatible, newton_polygon};
use jl_core::padic::{hensel_lift, is_unit_square, padic_norm, PAdicNumber, Valuation};
use jl_core::place::Place;
use jl_core::quatcsa::{
    hilbert_symbol, is_regular_semisimple_quat, ramified_places, reduced_char_poly_matrix, reduced_char_poly_quat,
    QuaternionAlgebra,
};
use jl_core::satake::{generator, in_w, independence_witness, is_hermitian, separate_points, trace_unramified, trace_unramified_exact};
use jl_core::transfer::{
    class_of_matrix, companion_of, corresponding_block_shape, global_transferable, levi_correspondence,
    local_transferable, ConjClassTag, Direction, GlobalAlgebra, LeviShape,
};
use jl_core::wire;

pub const DEFAULT_PRECISION: u32 = 20;
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Parser, Debug)]
#[command(name = "jl", version, about = "Exact local and global transfer computations")]
struct Cli {
    /// p-adic working precision (digits of the unit part).
    #[arg(long, global = true, default_value_t = DEFAULT_PRECISION)]
    precision: u32,
    /// Floating-point results below this magnitude print as 0.
    #[arg(long, global = true, default_value_t = DEFAULT_TOLERANCE)]
    tolerance: f64,
    /// Pretty-print JSON with this many spaces; 0 prints one line.
    #[arg(long = "json-indent", global = true, default_value_t = 0)]
    json_indent: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// p-adic numbers.
    #[command(subcommand)]
    Padic(PadicCmd),
    /// Polynomials over local fields.
    #[command(subcommand)]
    Poly(PolyCmd),
    /// Quaternion algebras over Q.
    #[command(subcommand)]
    Quat(QuatCmd),
    /// Transfer of conjugacy classes.
    #[command(subcommand)]
    Transfer(TransferCmd),
    /// Satake parameters and the spherical Hecke algebra.
    #[command(subcommand)]
    Satake(SatakeCmd),
    /// Finite models of the trace formula.
    #[command(subcommand)]
    Tracefinite(TraceCmd),
    /// Ideles and adeles of Q.
    #[command(subcommand)]
    Adele(AdeleCmd),
}

#[derive(Subcommand, Debug)]
enum PadicCmd {
    /// Normalized absolute value of a rational read in Q_p.
    Norm {
        #[arg(long)]
        x: String,
        #[arg(long)]
        p: u64,
    },
    /// Lift a simple root mod p of a monic polynomial.
    Hensel {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        root: i64,
        #[arg(long)]
        p: u64,
    },
    /// Is a p-adic unit a square?
    UnitSquare {
        #[arg(long)]
        x: String,
        #[arg(long)]
        p: u64,
    },
}

#[derive(Subcommand, Debug)]
enum PolyCmd {
    Newton {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        p: u64,
    },
    FactorDegrees {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        place: String,
    },
    Compatible {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        u: usize,
        #[arg(long)]
        place: String,
    },
    Etale {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        p: u64,
    },
}

#[derive(Args, Debug)]
struct AlgebraArgs {
    #[arg(long, allow_hyphen_values = true)]
    a: String,
    #[arg(long, allow_hyphen_values = true)]
    b: String,
}

impl AlgebraArgs {
    fn algebra(&self) -> Result<QuaternionAlgebra, Error> {
        QuaternionAlgebra::new(wire::parse_rational(&self.a)?, wire::parse_rational(&self.b)?)
    }
}

#[derive(Subcommand, Debug)]
enum QuatCmd {
    Hilbert {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long)]
        place: String,
    },
    Ramification {
        #[command(flatten)]
        alg: AlgebraArgs,
    },
    /// Reduced characteristic polynomial of an element.
    Charpoly {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long)]
        element: String,
    },
    Regular {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long)]
        element: String,
    },
    /// Reduced characteristic polynomial of a matrix over the algebra.
    MatrixCharpoly {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        place: String,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum DirectionArg {
    ToPrime,
    FromPrime,
}

#[derive(Subcommand, Debug)]
enum TransferCmd {
    /// Class tag of a rational matrix.
    Class {
        #[arg(long)]
        matrix: String,
    },
    /// Local compatibility: every factor degree divisible by d.
    Check {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        places: String,
    },
    Shape {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        place: String,
    },
    Companion {
        #[arg(long)]
        poly: String,
    },
    Levi {
        /// Block sizes, comma separated.
        #[arg(long)]
        shape: String,
        #[arg(long)]
        d: usize,
        #[arg(long, value_enum)]
        direction: DirectionArg,
    },
    /// Transfer to a division algebra given by its ramified primes.
    Global {
        #[arg(long)]
        poly: String,
        /// Local degrees as "p:d,p:d", or ramified primes of a quaternion algebra as "p,p".
        #[arg(long)]
        ramification: String,
        #[arg(long, default_value_t = 2)]
        d: usize,
    },
}

#[derive(Subcommand, Debug)]
enum SatakeCmd {
    Generator {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        k: usize,
    },
    Trace {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u64,
        #[arg(long, allow_hyphen_values = true)]
        params: String,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Membership in the compact parameter space and hermitian symmetry.
    Unitary {
        #[arg(long)]
        q: u64,
        #[arg(long, allow_hyphen_values = true)]
        params: String,
    },
    Separate {
        #[arg(long)]
        q: u64,
        #[arg(long, allow_hyphen_values = true)]
        first: String,
        #[arg(long, allow_hyphen_values = true)]
        second: String,
    },
    Independence {
        #[arg(long)]
        family: String,
    },
}

#[derive(Subcommand, Debug)]
enum TraceCmd {
    /// List the built-in models.
    Models,
    /// The ω-average f_ω.
    Average {
        #[arg(long)]
        model: String,
        #[arg(long)]
        function: String,
    },
    /// Spectral, kernel and geometric traces with the orbit breakdown.
    Verify {
        #[arg(long)]
        model: String,
        #[arg(long)]
        function: String,
    },
    Decompose {
        #[arg(long)]
        model: String,
        #[arg(long)]
        function: String,
    },
    Compare {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long = "match")]
        matching: String,
        #[arg(long)]
        f: String,
        #[arg(long)]
        fprime: String,
    },
}

#[derive(Subcommand, Debug)]
enum AdeleCmd {
    Norm {
        #[arg(long)]
        idele: String,
    },
    Character {
        #[arg(long)]
        character: String,
        #[arg(long)]
        idele: String,
    },
    Decompose {
        #[arg(long)]
        idele: String,
    },
    Integrate {
        #[arg(long)]
        function: String,
    },
}

/// Inline JSON if the argument looks like JSON, otherwise a file path.
fn json_arg(arg: &str) -> Result<String, Error> {
    let t = arg.trim_start();
    if t.starts_with('{') || t.starts_with('[') {
        Ok(arg.to_string())
    } else if let Some(name) = arg.strip_prefix("builtin:") {
        Err(Error::Schema(format!("builtin:{name} is only valid for --model")))
    } else {
        std::fs::read_to_string(arg).map_err(|e| Error::Schema(format!("cannot read {arg}: {e}")))
    }
}

fn builtin_models() -> Vec<FiniteModel> {
    jl_core::finitetf::models::all_standard()
}

fn model_arg(arg: &str) -> Result<FiniteModel, Error> {
    if let Some(name) = arg.strip_prefix("builtin:") {
        return builtin_models()
            .into_iter()
            .find(|m| m.name() == name)
            .ok_or_else(|| Error::Schema(format!("no built-in model {name:?}")));
    }
    wire::parse_model(&json_arg(arg)?)
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable output")
}

fn complex_value(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn rational_value(x: &Q) -> Value {
    if x.is_integer() {
        if let Ok(n) = i64::try_from(x.numer()) {
            return json!(n);
        }
    }
    json!(x.to_string())
}

fn padic_value(x: &PAdicNumber) -> Value {
    let valuation = match x.valuation() {
        Valuation::Finite(v) => json!(v),
        Valuation::Infinity => json!("inf"),
    };
    json!({
        "prime": x.prime(),
        "valuation": valuation,
        "unit": x.unit().to_string(),
        "precision": x.precision(),
        "text": x.to_string(),
    })
}

fn place_arg(s: &str) -> Result<Place, Error> {
    s.parse()
}

fn dispatch(cli: &Cli) -> Result<Value, Error> {
    let prec = cli.precision;
    match &cli.command {
        Command::Padic(c) => match c {
            PadicCmd::Norm { x, p } => {
                let v = PAdicNumber::from_rational(&wire::parse_rational(x)?, *p, prec)?;
                Ok(json!({"norm": rational_value(&padic_norm(&v)), "number": padic_value(&v)}))
            }
            PadicCmd::Hensel { poly, root, p } => {
                let r = hensel_lift(&wire::parse_poly(poly)?, &(*root).into(), *p, prec)?;
                Ok(padic_value(&r))
            }
            PadicCmd::UnitSquare { x, p } => {
                let v = PAdicNumber::from_rational(&wire::parse_rational(x)?, *p, prec)?;
                Ok(json!({"square": is_unit_square(&v)?}))
            }
        },
        Command::Poly(c) => match c {
            PolyCmd::Newton { poly, p } => Ok(to_value(&newton_polygon(&wire::parse_poly(poly)?, *p)?)),
            PolyCmd::FactorDegrees { poly, place } => {
                Ok(to_value(&factor_degrees(&wire::parse_poly(poly)?, place_arg(place)?)?))
            }
            PolyCmd::Compatible { poly, u, place } => {
                Ok(json!({"compatible": is_u_compatible(&wire::parse_poly(poly)?, *u, place_arg(place)?)?}))
            }
            PolyCmd::Etale { poly, p } => {
                let fs = etale_algebra_invariants(&wire::parse_poly(poly)?, *p)?;
                Ok(Value::Array(fs.iter().map(|f| json!({"e": f.e, "f": f.f})).collect()))
            }
        },
        Command::Quat(c) => match c {
            QuatCmd::Hilbert { alg, place } => {
                let d = alg.algebra()?;
                Ok(json!({"symbol": hilbert_symbol(d.a(), d.b(), place_arg(place)?)}))
            }
            QuatCmd::Ramification { alg } => Ok(to_value(&ramified_places(&alg.algebra()?)?)),
            QuatCmd::Charpoly { alg, element } => {
                let x = wire::parse_quaternion(&alg.algebra()?, &json_arg(element)?)?;
                Ok(monic_value(&reduced_char_poly_quat(&x)))
            }
            QuatCmd::Regular { alg, element } => {
                let x = wire::parse_quaternion(&alg.algebra()?, &json_arg(element)?)?;
                Ok(json!({"regular_semisimple": is_regular_semisimple_quat(&x)?}))
            }
            QuatCmd::MatrixCharpoly { alg, matrix, place } => {
                let g = wire::parse_quat_matrix(&alg.algebra()?, &json_arg(matrix)?)?;
                Ok(monic_value(&reduced_char_poly_matrix(&g, place_arg(place)?)?))
            }
        },
        Command::Transfer(c) => transfer(c),
        Command::Satake(c) => satake(c),
        Command::Tracefinite(c) => tracefinite(c),
        Command::Adele(c) => adele(c),
    }
}

fn monic_value(p: &jl_core::poly::MonicPoly) -> Value {
    Value::Array(p.coeffs().iter().map(rational_value).collect())
}

fn transfer(c: &TransferCmd) -> Result<Value, Error> {
    match c {
        TransferCmd::Class { matrix } => {
            let tag = class_of_matrix(&wire::parse_qmatrix(&json_arg(matrix)?)?)?;
            Ok(to_value(&tag))
        }
        TransferCmd::Check { poly, d, places } => {
            let tag = ConjClassTag::new(wire::parse_poly(poly)?)?;
            let places = wire::parse_places(places)?;
            if places.is_empty() {
                return Err(Error::Schema("--places is empty".into()));
            }
            let verdicts = places
                .iter()
                .map(|&v| {
                    let shape = factor_degrees(&tag.poly, v)?;
                    let compatible = local_transferable(&tag, *d, v)?;
                    Ok(json!({"place": v, "degrees": shape.degrees, "compatible": compatible}))
                })
                .collect::<Result<Vec<_>, Error>>()?;
            Ok(if verdicts.len() == 1 { verdicts.into_iter().next().unwrap() } else { Value::Array(verdicts) })
        }
        TransferCmd::Shape { poly, d, place } => {
            let tag = ConjClassTag::new(wire::parse_poly(poly)?)?;
            Ok(to_value(&corresponding_block_shape(&tag, *d, place_arg(place)?)?))
        }
        TransferCmd::Companion { poly } => Ok(to_value(&companion_of(&wire::parse_poly(poly)?))),
        TransferCmd::Levi { shape, d, direction } => {
            let sizes = shape
                .split(',')
                .map(|s| s.trim().parse::<usize>().map_err(|_| Error::Schema(format!("bad block size {s:?}"))))
                .collect::<Result<Vec<_>, _>>()?;
            let dir = match direction {
                DirectionArg::ToPrime => Direction::GtoGPrime,
                DirectionArg::FromPrime => Direction::GPrimeToG,
            };
            Ok(json!({"shape": levi_correspondence(&LeviShape::new(sizes)?, *d, dir)?}))
        }
        TransferCmd::Global { poly, ramification, d } => {
            let tag = ConjClassTag::new(wire::parse_poly(poly)?)?;
            let mut local = BTreeMap::new();
            for item in ramification.split(',').filter(|s| !s.trim().is_empty()) {
                let (p, dv) = match item.split_once(':') {
                    Some((p, dv)) => (p, dv.trim().parse().map_err(|_| Error::Schema(format!("bad local degree {dv:?}")))?),
                    None => (item, *d),
                };
                let p: u64 = p.trim().parse().map_err(|_| Error::Schema(format!("bad prime {p:?}")))?;
                local.insert(p, dv);
            }
            Ok(to_value(&global_transferable(&tag, &GlobalAlgebra::with_local_degrees(*d, local)?)?))
        }
    }
}

fn satake(c: &SatakeCmd) -> Result<Value, Error> {
    match c {
        SatakeCmd::Generator { n, q, k } => Ok(to_value(&generator(*n, *q, *k)?)),
        SatakeCmd::Trace { n, q, params, word } => {
            let p = wire::parse_satake(*q, params)?;
            if p.rank() != *n {
                return Err(Error::ShapeMismatch(format!("{} parameters for rank {n}", p.rank())));
            }
            let f = wire::parse_word(*n, *q, word)?;
            let mut out = json!({"trace": complex_value(trace_unramified(&p, &f)?)});
            if let Some(e) = trace_unramified_exact(&p, &f)? {
                out["exact"] = json!([e.re.to_string(), e.im.to_string()]);
            }
            Ok(out)
        }
        SatakeCmd::Unitary { q, params } => {
            let p = wire::parse_satake(*q, params)?;
            Ok(json!({"in_w": in_w(&p), "hermitian": is_hermitian(&p)}))
        }
        SatakeCmd::Separate { q, first, second } => {
            let (a, b) = (wire::parse_satake(*q, first)?, wire::parse_satake(*q, second)?);
            let g = separate_points(&a, &b)?;
            Ok(json!({
                "element": to_value(&g),
                "traces": [complex_value(trace_unramified(&a, &g)?), complex_value(trace_unramified(&b, &g)?)],
            }))
        }
        SatakeCmd::Independence { family } => Ok(to_value(&independence_witness(&wire::parse_family(&json_arg(family)?)?)?)),
    }
}

fn tracefinite(c: &TraceCmd) -> Result<Value, Error> {
    match c {
        TraceCmd::Models => Ok(Value::Array(
            builtin_models()
                .iter()
                .map(|m| {
                    json!({
                        "name": m.name(),
                        "order": m.group().order(),
                        "gamma": m.gamma().len(),
                        "center": m.center().len(),
                        "dimension": m.dimension(),
                        "orbits": m.orbits().len(),
                    })
                })
                .collect(),
        )),
        TraceCmd::Average { model, function } => {
            let m = model_arg(model)?;
            let f = wire::parse_function(m.group(), &json_arg(function)?)?;
            let fw = m.omega_average(&f)?;
            Ok(json!({"values": fw.values().iter().map(wire::cyc_json).collect::<Vec<_>>()}))
        }
        TraceCmd::Verify { model, function } => {
            let m = model_arg(model)?;
            let f = wire::parse_function(m.group(), &json_arg(function)?)?;
            let spectral = m.spectral_trace(&f)?;
            let kernel = m.kernel_trace(&f)?;
            let geometric = m.geometric_trace(&f)?;
            let agree = spectral.value == kernel.value && spectral.value == geometric.total.value;
            if !agree {
                return Err(Error::Internal(format!(
                    "spectral {} , kernel {}, geometric {}",
                    spectral.value, kernel.value, geometric.total.value
                )));
            }
            Ok(json!({
                "spectral": to_value(&spectral),
                "kernel": to_value(&kernel),
                "geometric": to_value(&geometric),
                "agree": agree,
            }))
        }
        TraceCmd::Decompose { model, function } => {
            let m = model_arg(model)?;
            let f = wire::parse_function(m.group(), &json_arg(function)?)?;
            Ok(to_value(&m.spectral_decomposition(&f)?))
        }
        TraceCmd::Compare { left, right, matching, f, fprime } => {
            let l = model_arg(left)?;
            let r = model_arg(right)?;
            let matching = wire::parse_match(&l, &r, &json_arg(matching)?)?;
            let f = wire::parse_function(l.group(), &json_arg(f)?)?;
            let fp = wire::parse_function(r.group(), &json_arg(fprime)?)?;
            Ok(to_value(&compare_models(&l, &r, &matching, &f, &fp)?))
        }
    }
}

fn adele(c: &AdeleCmd) -> Result<Value, Error> {
    match c {
        AdeleCmd::Norm { idele } => Ok(json!({"norm": to_value(&idele_norm(&wire::parse_idele(&json_arg(idele)?)?)?)})),
        AdeleCmd::Character { character, idele } => {
            let chi = wire::parse_character(&json_arg(character)?)?;
            let g = wire::parse_idele(&json_arg(idele)?)?;
            Ok(json!({"value": complex_value(evaluate_character(&chi, &g)?)}))
        }
        AdeleCmd::Decompose { idele } => Ok(to_value(&idele_decompose(&wire::parse_idele(&json_arg(idele)?)?)?)),
        AdeleCmd::Integrate { function } => {
            let (fs, active) = wire::parse_integrand(&json_arg(function)?)?;
            Ok(json!({"integral": rational_value(&integrate_factorizable(&fs, &active)?)}))
        }
    }
}

/// Round every float to 12 significant digits and flush values below the
/// tolerance to zero.
fn normalize_floats(v: &mut Value, tol: f64) {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().unwrap();
            let x = if x.abs() < tol { 0.0 } else { format!("{x:.11e}").parse::<f64>().unwrap_or(x) };
            *v = json!(x);
        }
        Value::Array(a) => a.iter_mut().for_each(|x| normalize_floats(x, tol)),
        Value::Object(o) => o.values_mut().for_each(|x| normalize_floats(x, tol)),
        _ => {}
    }
}

fn render(v: &Value, indent: usize) -> String {
    if indent == 0 {
        return serde_json::to_string(v).expect("JSON value");
    }
    let pad = vec![b' '; indent];
    let mut buf = Vec::new();
    let fmt = serde_json::ser::PrettyFormatter::with_indent(&pad);
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, fmt);
    v.serialize(&mut ser).expect("JSON value");
    String::from_utf8(buf).expect("UTF-8 JSON")
}

fn error_output(kind: &str, detail: &str) -> String {
    serde_json::to_string(&json!({"error": {"kind": kind, "detail": detail}})).expect("JSON value")
}

/// Run the command line on `argv` (including the program name); returns
/// the exit code and the text for standard output.
pub fn run<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => (0, e.to_string()),
                ErrorKind::InvalidSubcommand
                | ErrorKind::MissingSubcommand
                | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    (1, error_output("UnknownCommand", e.to_string().lines().next().unwrap_or("")))
                }
                _ => (1, error_output("SchemaViolation", e.to_string().lines().next().unwrap_or(""))),
            };
        }
    };
    match dispatch(&cli) {
        Ok(mut v) => {
            normalize_floats(&mut v, cli.tolerance);
            (0, render(&v, cli.json_indent))
        }
        Err(e) => (if e.is_internal() { 2 } else { 1 }, error_output(e.kind(), &e.to_string())),
    }
}
