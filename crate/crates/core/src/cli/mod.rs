//! The `transdeform` command line. [`run`] does all the work and returns the
//! exit code with captured output, so the binary stays a thin shell.
//!
//! Exit codes: 0 success, 1 verification failed, 2 input error, 3 budget
//! exceeded.

mod instance;
mod render;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use itertools::Itertools;
use serde_json::{json, Value};

pub use instance::{parse_instance, parse_vector, FieldSpec, InstanceFile, Literal};
pub use render::SCHEMA_VERSION;

use crate::algebra::{Field, Scalar};
use crate::arrangement::{Arrangement, CharPoly};
use crate::deformation::Deformations;
use crate::error::Error;
use crate::identity;
use crate::matroid::Representation;
use crate::nbc::{self, TotalOrder};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "transdeform", version, about = "Classify translation deformations of a represented arrangement")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, clap::Args)]
struct Common {
    /// Instance file (JSON)
    file: PathBuf,
    /// Emit JSON on stdout
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List circuits and their normalized circuit vectors
    Circuits {
        #[command(flatten)]
        common: Common,
    },
    /// Characteristic polynomial of A_g, cross-checked by every available route
    Charpoly {
        #[command(flatten)]
        common: Common,
        /// Translation vector, comma separated (default: zero)
        #[arg(long, allow_hyphen_values = true)]
        g: Option<String>,
        /// Total order for the NBC route, a 1-based permutation such as 3,1,2
        #[arg(long)]
        order: Option<String>,
    },
    /// One row per equivalence class of translation vectors
    Classify {
        #[command(flatten)]
        common: Common,
    },
    /// Check the coefficient comparison and the decomposition identity
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = What::All)]
        what: What,
    },
    /// Decide whether two translation vectors are equivalent
    Equiv {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        g: String,
        #[arg(long, allow_hyphen_values = true)]
        h: String,
    },
    /// Affine circuits, broken circuits and NBC counts of A_g
    Nbc {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        g: Option<String>,
        #[arg(long)]
        order: Option<String>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum What {
    Decomposition,
    Comparison,
    All,
}

/// Exit code and captured streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Outcome {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Budget { .. } => EXIT_BUDGET,
        Error::Invariant(_) => EXIT_FAILED,
        _ => EXIT_INPUT,
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome::ok(text)
            };
        }
    };
    match dispatch(cli.command) {
        Ok(out) => out,
        Err(e) => Outcome {
            code: exit_code(&e),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn load(common: &Common) -> Result<Representation, Error> {
    let text = std::fs::read_to_string(&common.file)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", common.file.display())))?;
    parse_instance(&text).map_err(|e| match e {
        Error::Parse(msg) => Error::Parse(format!("{}: {msg}", common.file.display())),
        other => other,
    })
}

fn vector_arg(rep: &Representation, text: Option<&str>, name: &str) -> Result<Vec<Scalar>, Error> {
    let v = match text {
        Some(t) => parse_vector(rep.field(), t)?,
        None => vec![rep.field().zero(); rep.m()],
    };
    if v.len() != rep.m() {
        return Err(Error::Parse(format!("--{name} has {} entries, the instance has m = {}", v.len(), rep.m())));
    }
    Ok(v)
}

fn order_arg(m: usize, text: Option<&str>) -> Result<TotalOrder, Error> {
    let Some(text) = text else {
        return Ok(TotalOrder::natural(m));
    };
    let seq = text
        .split(',')
        .map(|s| match s.trim().parse::<usize>() {
            Ok(i) if i >= 1 => Ok(i - 1),
            _ => Err(Error::Parse(format!("bad --order entry {s:?}"))),
        })
        .collect::<Result<Vec<_>, _>>()?;
    if seq.len() != m {
        return Err(Error::Parse(format!("--order has {} entries, expected {m}", seq.len())));
    }
    TotalOrder::from_sequence(seq).map_err(|_| Error::Parse(format!("--order {text:?} is not a permutation of 1..{m}")))
}

fn header(rep: &Representation) -> Value {
    json!({
        "field": rep.field().to_string(),
        "m": rep.m(),
        "n": rep.n(),
        "rank": rep.rank(),
    })
}

fn emit(json_mode: bool, mut body: Value, command: &str, human: String) -> String {
    if json_mode {
        let obj = body.as_object_mut().expect("json object");
        obj.insert("schema_version".into(), json!(SCHEMA_VERSION));
        obj.insert("command".into(), json!(command));
        let mut s = serde_json::to_string_pretty(&body).expect("serializable");
        s.push('\n');
        s
    } else {
        human
    }
}

fn dispatch(command: Command) -> Result<Outcome, Error> {
    match command {
        Command::Circuits { common } => cmd_circuits(&common),
        Command::Charpoly { common, g, order } => cmd_charpoly(&common, g.as_deref(), order.as_deref()),
        Command::Classify { common } => cmd_classify(&common),
        Command::Verify { common, what } => cmd_verify(&common, what),
        Command::Equiv { common, g, h } => cmd_equiv(&common, &g, &h),
        Command::Nbc { common, g, order } => cmd_nbc(&common, g.as_deref(), order.as_deref()),
    }
}

fn describe(rep: &Representation) -> String {
    format!("field {}, m = {}, n = {}, rank {}\n", rep.field(), rep.m(), rep.n(), rep.rank())
}

fn cmd_circuits(common: &Common) -> Result<Outcome, Error> {
    let rep = load(common)?;
    let dfm = Deformations::new(rep.clone())?;
    let vectors = dfm.circuit_arrangement().circuit_vectors();
    let mut human = describe(&rep);
    if vectors.is_empty() {
        human.push_str("no circuits\n");
    }
    for cv in vectors {
        writeln!(
            human,
            "circuit {}  c = {}",
            render::index_set(cv.circuit.indices()),
            render::tuple(&cv.coefficients)
        )
        .unwrap();
    }
    let body = json!({
        "instance": header(&rep),
        "circuits": vectors.iter().map(|cv| json!({
            "indices": render::circuit(&cv.circuit),
            "vector": render::scalars(&cv.coefficients),
        })).collect::<Vec<_>>(),
    });
    Ok(Outcome::ok(emit(common.json, body, "circuits", human)))
}

fn cmd_charpoly(common: &Common, g: Option<&str>, order: Option<&str>) -> Result<Outcome, Error> {
    let rep = load(common)?;
    let g = vector_arg(&rep, g, "g")?;
    let order = order_arg(rep.m(), order)?;
    let arr = Arrangement::from_representation(&rep, &g)?;
    let mobius = arr.char_poly();
    let whitney = arr.char_poly_whitney();
    let via_nbc = nbc::char_poly_nbc(&arr, &order)?;
    let mut routes = vec![
        ("mobius", json!(render::poly(&mobius))),
        ("whitney", json!(render::poly(&whitney))),
        ("nbc", json!(render::poly(&via_nbc))),
    ];
    let mut agree = mobius == whitney && mobius == via_nbc;
    let mut point_line = String::new();
    if let Field::Prime(q) = rep.field() {
        let count = arr.count_complement_points()?;
        let at_q = mobius.eval_i64(q as i64);
        agree &= at_q == count.into();
        routes.push(("point_count", json!({"q": q, "count": count, "chi_at_q": render::int(&at_q)})));
        point_line = format!("complement points over GF({q}): {count}, chi({q}) = {at_q}\n");
    }
    let human = format!(
        "{}g = {}\nchi(A_g, t) = {mobius}\na_k = {}\n{point_line}routes (mobius, whitney, nbc{}): {}\n",
        describe(&rep),
        render::tuple(&g),
        render::ints_tuple(&mobius.alt_coeffs()),
        if rep.field().is_finite() { ", point count" } else { "" },
        if agree { "agree" } else { "DISAGREE" }
    );
    let body = json!({
        "instance": header(&rep),
        "g": render::scalars(&g),
        "order": order.sequence().iter().map(|i| i + 1).collect::<Vec<_>>(),
        "chi": render::poly(&mobius),
        "routes": routes.into_iter().map(|(k, v)| (k.to_string(), v)).collect::<serde_json::Map<_, _>>(),
        "routes_agree": agree,
    });
    let mut out = Outcome::ok(emit(common.json, body, "charpoly", human));
    if !agree {
        out.code = EXIT_FAILED;
        out.stderr = "error: characteristic polynomial routes disagree\n".into();
    }
    Ok(out)
}

fn cmd_classify(common: &Common) -> Result<Outcome, Error> {
    let rep = load(common)?;
    let dfm = Deformations::new(rep.clone())?;
    let c = dfm.classify()?;
    let mut human = describe(&rep);
    writeln!(human, "{} strata", c.strata.len()).unwrap();
    for (i, s) in c.strata.iter().enumerate() {
        let circuits = s.signature.circuits().iter().map(|c| render::index_set(c.indices())).join(" ");
        write!(
            human,
            "[{}] dim {}  X: {}  circuits: {}  g = {}  chi = {}",
            i + 1,
            s.flat.dim(),
            render::equations(&s.flat, "y"),
            if circuits.is_empty() { "-".to_string() } else { circuits },
            s.representative.as_deref().map(render::tuple).unwrap_or_else(|| "empty".into()),
            s.chi.as_ref().map(ToString::to_string).unwrap_or_else(|| "undefined".into()),
        )
        .unwrap();
        if let Some(size) = s.size {
            write!(human, "  size {size}").unwrap();
        }
        human.push('\n');
    }
    if let Some(q) = rep.field().order() {
        let total: u64 = c.strata.iter().filter_map(|s| s.size).sum();
        writeln!(human, "total {total} = {q}^{}", rep.m()).unwrap();
    }
    let body = json!({
        "instance": header(&rep),
        "strata": c.strata.iter().map(|s| json!({
            "flat": render::flat(&s.flat),
            "circuits": s.signature.circuits().iter().map(render::circuit).collect::<Vec<_>>(),
            "representative": s.representative.as_deref().map(render::scalars),
            "chi": s.chi.as_ref().map(render::poly),
            "size": s.size,
        })).collect::<Vec<_>>(),
    });
    Ok(Outcome::ok(emit(common.json, body, "classify", human)))
}

fn cmd_verify(common: &Common, what: What) -> Result<Outcome, Error> {
    let rep = load(common)?;
    let dfm = Deformations::new(rep.clone())?;
    let mut human = describe(&rep);
    let mut body = serde_json::Map::new();
    body.insert("instance".into(), header(&rep));
    let mut all_pass = true;
    let verdict = |ok: bool| if ok { "PASS" } else { "FAIL" };

    if matches!(what, What::Comparison | What::All) {
        let classification = dfm.classify()?;
        let report = nbc::verify_comparison(&rep, &classification)?;
        all_pass &= report.holds();
        writeln!(human, "comparison: {}", verdict(report.holds())).unwrap();
        for p in &report.pairs {
            writeln!(
                human,
                "  X[{}] in Y[{}]: {} <= {}  {}",
                p.lower + 1,
                p.upper + 1,
                render::ints_tuple(&p.a_lower),
                render::ints_tuple(&p.a_upper),
                verdict(p.holds)
            )
            .unwrap();
        }
        for m in &report.matroid {
            writeln!(
                human,
                "  a(M) vs X[{}]: {} <= {}  {}",
                m.stratum + 1,
                render::ints_tuple(&report.a_matroid),
                render::ints_tuple(&m.a_stratum),
                verdict(m.holds)
            )
            .unwrap();
        }
        body.insert(
            "comparison".into(),
            json!({
                "pass": report.holds(),
                "a_matroid": report.a_matroid.iter().map(render::int).collect::<Vec<_>>(),
                "pairs": report.pairs.iter().map(|p| json!({
                    "lower": p.lower + 1,
                    "upper": p.upper + 1,
                    "a_lower": p.a_lower.iter().map(render::int).collect::<Vec<_>>(),
                    "a_upper": p.a_upper.iter().map(render::int).collect::<Vec<_>>(),
                    "pass": p.holds,
                })).collect::<Vec<_>>(),
                "matroid": report.matroid.iter().map(|m| json!({
                    "stratum": m.stratum + 1,
                    "a_stratum": m.a_stratum.iter().map(render::int).collect::<Vec<_>>(),
                    "pass": m.holds,
                })).collect::<Vec<_>>(),
            }),
        );
    }

    if matches!(what, What::Decomposition | What::All) {
        match rep.field() {
            Field::Rationals => {
                let r = identity::verify_decomposition_infinite(&dfm)?;
                all_pass &= r.holds();
                writeln!(human, "decomposition: {}", verdict(r.holds())).unwrap();
                for t in &r.terms {
                    writeln!(human, "  X[{}]: ({}) * ({})", t.stratum + 1, t.chi, t.chi_restriction).unwrap();
                }
                writeln!(human, "  lhs = {}\n  rhs = {} = t^{}(t - 1)^{}", r.lhs, r.rhs, rep.n(), rep.m()).unwrap();
                body.insert(
                    "decomposition".into(),
                    json!({
                        "pass": r.holds(),
                        "terms": r.terms.iter().map(|t| json!({
                            "stratum": t.stratum + 1,
                            "chi": render::poly(&t.chi),
                            "chi_restriction": render::poly(&t.chi_restriction),
                        })).collect::<Vec<_>>(),
                        "lhs": render::poly(&r.lhs),
                        "rhs": render::poly(&r.rhs),
                    }),
                );
            }
            Field::Prime(q) => {
                let r = identity::verify_decomposition_finite(&dfm)?;
                all_pass &= r.holds();
                let sum = r
                    .terms
                    .iter()
                    .map(|t| format!("{}*{}", t.complement_count, t.class_size))
                    .join(" + ");
                writeln!(human, "decomposition over GF({q}): {}", verdict(r.holds())).unwrap();
                writeln!(
                    human,
                    "  {sum} = {} ; {q}^{}*{}^{} = {}",
                    r.lhs,
                    rep.n(),
                    q - 1,
                    rep.m(),
                    r.rhs
                )
                .unwrap();
                for t in r.terms.iter().filter(|t| !t.constant || t.class_size != t.restriction_count) {
                    writeln!(human, "  X[{}]: inconsistent counts {t:?}", t.stratum + 1).unwrap();
                }
                body.insert(
                    "decomposition".into(),
                    json!({
                        "pass": r.holds(),
                        "q": q,
                        "terms": r.terms.iter().map(|t| json!({
                            "stratum": t.stratum + 1,
                            "complement_count": t.complement_count,
                            "class_size": t.class_size,
                            "restriction_count": t.restriction_count,
                            "constant": t.constant,
                        })).collect::<Vec<_>>(),
                        "lhs": render::int(&r.lhs),
                        "rhs": render::int(&r.rhs),
                    }),
                );
            }
        }
    }
    body.insert("pass".into(), json!(all_pass));
    let mut out = Outcome::ok(emit(common.json, Value::Object(body), "verify", human));
    if !all_pass {
        out.code = EXIT_FAILED;
    }
    Ok(out)
}

fn cmd_equiv(common: &Common, g: &str, h: &str) -> Result<Outcome, Error> {
    let rep = load(common)?;
    let g = vector_arg(&rep, Some(g), "g")?;
    let h = vector_arg(&rep, Some(h), "h")?;
    let dfm = Deformations::new(rep.clone())?;
    let cg = dfm.consistency_signature(&g)?;
    let ch = dfm.consistency_signature(&h)?;
    let equivalent = cg == ch;
    let show = |s: &crate::deformation::ConsistencySignature| {
        let parts = s.circuits().iter().map(|c| render::index_set(c.indices())).join(", ");
        format!("{{{parts}}}")
    };
    let human = format!(
        "{}C_g = {}\nC_h = {}\n{}\n",
        describe(&rep),
        show(&cg),
        show(&ch),
        if equivalent { "equivalent" } else { "not equivalent" }
    );
    let body = json!({
        "instance": header(&rep),
        "g": render::scalars(&g),
        "h": render::scalars(&h),
        "c_g": cg.circuits().iter().map(render::circuit).collect::<Vec<_>>(),
        "c_h": ch.circuits().iter().map(render::circuit).collect::<Vec<_>>(),
        "equivalent": equivalent,
    });
    Ok(Outcome::ok(emit(common.json, body, "equiv", human)))
}

fn cmd_nbc(common: &Common, g: Option<&str>, order: Option<&str>) -> Result<Outcome, Error> {
    let rep = load(common)?;
    let g = vector_arg(&rep, g, "g")?;
    let order = order_arg(rep.m(), order)?;
    let arr = Arrangement::from_representation(&rep, &g)?;
    let circuits = nbc::affine_circuits(&arr);
    let broken = nbc::affine_broken_circuits(&arr, &order);
    let counts = nbc::affine_nbc_counts(&arr, &order)?;
    let chi: CharPoly = nbc::char_poly_nbc(&arr, &order)?;
    let human = format!(
        "{}g = {}\norder = {}\naffine circuits: {}\nbroken circuits: {}\nNBC counts = ({})\nchi(A_g, t) = {chi}\n",
        describe(&rep),
        render::tuple(&g),
        order.sequence().iter().map(|i| i + 1).join(" < "),
        circuits.iter().map(|c| render::index_set(&c.0)).join(" "),
        broken.iter().map(|b| render::index_set(b)).join(" "),
        counts.iter().join(", "),
    );
    let body = json!({
        "instance": header(&rep),
        "g": render::scalars(&g),
        "order": order.sequence().iter().map(|i| i + 1).collect::<Vec<_>>(),
        "affine_circuits": circuits.iter().map(|c| c.0.iter().map(|i| i + 1).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "broken_circuits": broken.iter().map(|b| b.iter().map(|i| i + 1).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "nbc_counts": counts,
        "chi": render::poly(&chi),
    });
    Ok(Outcome::ok(emit(common.json, body, "nbc", human)))
}
