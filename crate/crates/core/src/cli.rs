//! Command runner for the `s1fix` binary.
//!
//! Every command writes one JSON document to standard output with object
//! keys sorted, so identical arguments give byte-identical output. Exit
//! codes: 0 success, 1 domain error or failed check, 2 usage error
//! (bad flags or an expression that does not parse).

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::chains::{self, ComplexCaps};
use crate::classify::{self, Axioms, FixedSetType};
use crate::degree::{self, BidegreeOptions, MapDescriptor};
use crate::dsl;
use crate::equivariant::{self, gallery};
use crate::graded::PoincarePolynomial;
use crate::ring::RingPresentation;
use crate::space::{self, SpaceExpr};
use crate::{Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "s1fix",
    version,
    about = "Fixed-point sets of circle actions on Toda-type spaces"
)]
pub struct Cli {
    /// Emit JSON (the default and only document format; accepted for scripts).
    #[arg(long, global = true)]
    pub json: bool,
    /// Indent the JSON document.
    #[arg(long, global = true)]
    pub pretty: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum YesNo {
    Yes,
    No,
}

impl YesNo {
    fn get(self) -> bool {
        self == YesNo::Yes
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MapKind {
    Phi,
    Cayley,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long, value_enum)]
    pub tnhz: YesNo,
    /// Allow `P^2(r)` components with odd `r`.
    #[arg(long)]
    pub allow_odd_p2: bool,
    /// Allow `P^2(r)` components with `r > n`.
    #[arg(long)]
    pub allow_large_p2: bool,
}

impl ClassifyArgs {
    fn axioms(&self) -> Axioms {
        Axioms {
            p2_even: !self.allow_odd_p2,
            p2_at_most_n: !self.allow_large_p2,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Unreduced Poincaré polynomial of a space expression.
    Cohomology { expr: String },
    /// Euler characteristic of a space expression.
    Euler { expr: String },
    /// Ring presentation of a `toda`, `P` or `cone` expression.
    Ring { expr: String },
    /// Rational type of the Toda space of type (a, b).
    ClassifyType {
        #[arg(long)]
        n: u32,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
        b: i64,
    },
    /// Fixed-point set of an action expression.
    FixedSet { expr: String },
    /// Rank and Euler characteristic report of an action expression.
    Report { expr: String },
    /// Enumerate admissible fixed-set types.
    Classify(ClassifyArgs),
    /// Compare the enumeration with the case-by-case reference list.
    CompareTheorem(ClassifyArgs),
    /// Bidegree and Hopf invariant of an explicit sphere map.
    Degree {
        #[arg(long, value_enum)]
        map: MapKind,
        /// Ambient dimension (even, for phi) or algebra dimension 2, 4, 8.
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2_000_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long, default_value_t = 3)]
        base_pairs: usize,
    },
    /// Run one gallery case, or all of them.
    Gallery {
        #[arg(long, conflicts_with_all = ["all", "list"])]
        case: Option<String>,
        #[arg(long)]
        all: bool,
        #[arg(long)]
        list: bool,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        r: Option<u32>,
        #[arg(long)]
        s: Option<u32>,
        #[arg(long)]
        t: Option<u32>,
    },
    /// Compare the polynomial rules with exact simplicial homology.
    OracleCheck {
        expr: String,
        /// Include the simplices of the model in the output.
        #[arg(long)]
        emit_complex: bool,
    },
}

/// A command result: the JSON document and whether its check passed.
struct Outcome {
    doc: Value,
    ok: bool,
}

impl Outcome {
    fn ok(doc: Value) -> Self {
        Outcome { doc, ok: true }
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn ranks_json(p: &PoincarePolynomial) -> Value {
    Value::Object(p.ranks().map(|(d, r)| (d.to_string(), json!(r))).collect())
}

fn parse_space(text: &str) -> Result<SpaceExpr> {
    dsl::parse_space(text)
}

fn strings<T: ToString>(xs: impl IntoIterator<Item = T>) -> Vec<String> {
    xs.into_iter().map(|x| x.to_string()).collect()
}

fn ring_json(r: &RingPresentation) -> Result<Value> {
    let gens: Vec<Value> = r
        .generators()
        .iter()
        .map(|g| json!({"name": g.name, "degree": g.degree}))
        .collect();
    Ok(json!({
        "generators": gens,
        "relations": r.relation_strings(),
        "top_degree": r.top_degree(),
        "additive_ranks": ranks_json(&r.additive_ranks()?),
    }))
}

fn execute(cmd: &Command) -> Result<Outcome> {
    Ok(match cmd {
        Command::Cohomology { expr } => {
            let p = parse_space(expr)?.eval_poincare()?;
            Outcome::ok(json!({
                "ranks": ranks_json(&p),
                "total_rank": p.total_rank(),
                "chi": p.euler_char()?,
            }))
        }
        Command::Euler { expr } => {
            let p = parse_space(expr)?.eval_poincare()?;
            Outcome::ok(json!({ "chi": p.euler_char()? }))
        }
        Command::Ring { expr } => {
            let e = parse_space(expr)?;
            let mut doc = match &e {
                SpaceExpr::Toda { n, a, b } => {
                    let mut d = ring_json(&space::toda_ring(*n, *a, *b)?)?;
                    d["label"] = json!(space::classify_type(*n, *a, *b)?.to_string());
                    d
                }
                SpaceExpr::PTrunc { h, n } => ring_json(&space::truncated_ring(*h, *n)?)?,
                SpaceExpr::MappingCone { n, hopf } => {
                    let (r, class) = space::mapping_cone_ring(*n, *hopf)?;
                    let mut d = ring_json(&r)?;
                    d["class"] = json!(class.to_string());
                    d
                }
                other => return Err(Error::InvalidSpace(format!(
                    "`{other}` has no stored ring presentation; use toda(...), P(...) or cone(...)"
                ))),
            };
            doc["expr"] = json!(e.to_string());
            Outcome::ok(doc)
        }
        Command::ClassifyType { n, a, b } => {
            let label = space::classify_type(*n, *a, *b)?;
            Outcome::ok(json!({
                "label": label.name(),
                "display": label.to_string(),
                "n": label.n(),
                "model": label.model().to_string(),
            }))
        }
        Command::FixedSet { expr } => {
            let a = dsl::parse_action(expr)?;
            let f = equivariant::fixed_set(&a)?;
            let kind = FixedSetType::from_space(&f).ok().map(|t| t.to_string());
            Outcome::ok(json!({
                "fixed": f.to_string(),
                "ranks": ranks_json(&f.eval_poincare()?),
                "type": kind,
            }))
        }
        Command::Report { expr } => {
            let a = dsl::parse_action(expr)?;
            Outcome::ok(to_value(&equivariant::report(&a)?))
        }
        Command::Classify(args) => {
            let cases = classify::enumerate_fixed_types(args.n, args.tnhz.get(), &args.axioms());
            Outcome::ok(json!({
                "n": args.n,
                "tnhz": args.tnhz.get(),
                "cases": strings(&cases),
            }))
        }
        Command::CompareTheorem(args) => {
            let axioms = args.axioms();
            let enumerated = classify::enumerate_fixed_types(args.n, args.tnhz.get(), &axioms);
            let reference = classify::theorem_reference_list(args.n, args.tnhz.get(), &axioms);
            let diff = classify::compare(&enumerated, &reference.cases);
            Outcome {
                ok: diff.is_empty(),
                doc: json!({
                    "n": args.n,
                    "tnhz": args.tnhz.get(),
                    "empty": diff.is_empty(),
                    "only_enumerated": strings(&diff.only_left),
                    "only_reference": strings(&diff.only_right),
                    "axiom_excluded": strings(&reference.axiom_excluded),
                    "cases": reference.cases.len(),
                }),
            }
        }
        Command::Degree {
            map,
            n,
            samples,
            seed,
            workers,
            base_pairs,
        } => {
            let m = match map {
                MapKind::Phi => MapDescriptor::phi(*n)?,
                MapKind::Cayley => match n {
                    2 => MapDescriptor::cayley(1)?,
                    4 => MapDescriptor::cayley(2)?,
                    8 => MapDescriptor::cayley(3)?,
                    _ => {
                        return Err(Error::Parameters(format!(
                            "cayley multiplication needs n in {{2, 4, 8}}, got {n}"
                        )))
                    }
                },
            };
            let opts = BidegreeOptions {
                base_pairs: *base_pairs,
                mc_samples: *samples,
                seed: *seed,
                workers: *workers,
                ..BidegreeOptions::default()
            };
            let report = degree::bidegree(&m, &opts)?;
            let mut doc = to_value(&report);
            doc["hopf"] = to_value(&degree::hopf_from_bidegree(&report.bidegree));
            Outcome::ok(doc)
        }
        Command::Gallery {
            case,
            all,
            list,
            n,
            r,
            s,
            t,
        } => {
            if *list {
                return Ok(Outcome::ok(json!({ "cases": gallery::CASE_IDS })));
            }
            if *all {
                let outcomes = gallery::catalog()
                    .iter()
                    .map(gallery::run)
                    .collect::<Result<Vec<_>>>()?;
                let passed = outcomes.iter().filter(|o| o.passed).count();
                return Ok(Outcome {
                    ok: passed == outcomes.len(),
                    doc: json!({
                        "passed": passed,
                        "total": outcomes.len(),
                        "cases": to_value(&outcomes),
                    }),
                });
            }
            let Some(id) = case else {
                return Err(Error::Parameters("give --case ID, --all or --list".into()));
            };
            let d = gallery::default_params(id)?;
            let p = gallery::Params {
                n: n.unwrap_or(d.n),
                r: r.unwrap_or(d.r),
                s: s.unwrap_or(d.s),
                t: t.unwrap_or(d.t),
            };
            let out = gallery::run(&gallery::build(id, p)?)?;
            Outcome {
                ok: out.passed,
                doc: to_value(&out),
            }
        }
        Command::OracleCheck { expr, emit_complex } => {
            let e = parse_space(expr)?;
            let caps = ComplexCaps::default();
            let verdict = chains::oracle_check(&e, &caps)?;
            let mut doc = json!({
                "expr": e.to_string(),
                "matches": verdict.matches,
                "expected": ranks_json(&verdict.expected),
                "computed": ranks_json(&verdict.computed),
            });
            if *emit_complex {
                let k = chains::model_complex(&e, &caps)?;
                doc["vertices"] = json!(k.num_vertices());
                doc["simplices"] = json!(strings(k.to_text().lines()));
            }
            Outcome {
                ok: verdict.matches,
                doc,
            }
        }
    })
}

fn error_doc(e: &Error) -> Value {
    let kind = match e {
        Error::Parse { .. } => "parse",
        Error::Violation(_) => "violation",
        Error::Numeric(_) | Error::Nonlinear(_) => "numeric",
        Error::UnknownCase(_) | Error::Parameters(_) => "parameters",
        _ => "domain",
    };
    let mut doc = json!({"error": {"kind": kind, "message": e.to_string()}});
    if let Error::Parse {
        line,
        column,
        token,
        ..
    } = e
    {
        doc["error"]["line"] = json!(line);
        doc["error"]["column"] = json!(column);
        doc["error"]["token"] = json!(token);
    }
    doc
}

fn render(doc: &Value, pretty: bool) -> String {
    if pretty {
        serde_json::to_string_pretty(doc).expect("json")
    } else {
        doc.to_string()
    }
}

/// Runs one command line; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    match execute(&cli.command) {
        Ok(o) => {
            let _ = writeln!(out, "{}", render(&o.doc, cli.pretty));
            if o.ok {
                EXIT_OK
            } else {
                let _ = writeln!(err, "check failed");
                EXIT_DOMAIN
            }
        }
        Err(e) => {
            let _ = writeln!(out, "{}", render(&error_doc(&e), cli.pretty));
            let _ = writeln!(err, "error: {e}");
            if matches!(e, Error::Parse { .. }) {
                EXIT_USAGE
            } else {
                EXIT_DOMAIN
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, Value) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["s1fix"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        let doc = serde_json::from_slice(&out).unwrap_or(Value::Null);
        (code, doc)
    }

    #[test]
    fn euler_and_cohomology() {
        let (code, doc) = call(&["euler", "toda(2,1,0)"]);
        assert_eq!(code, 0);
        assert_eq!(doc, json!({"chi": 4}));
        let (_, doc) = call(&["cohomology", "wedge(S(2), S(4))"]);
        assert_eq!(doc["ranks"], json!({"0": 1, "2": 1, "4": 1}));
        assert_eq!(doc["total_rank"], 3);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(call(&["euler", "rotfree(4)"]).0, EXIT_USAGE);
        assert_eq!(call(&["euler", "S(2"]).0, EXIT_USAGE);
        assert_eq!(call(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(call(&["classify", "--n", "2"]).0, EXIT_USAGE);
        let (code, doc) = call(&["report", "punctA(rotfree(3))"]);
        assert_eq!(code, EXIT_DOMAIN);
        assert_eq!(doc["error"]["kind"], "domain");
        assert_eq!(call(&["gallery", "--case", "9-nope"]).0, EXIT_DOMAIN);
    }

    #[test]
    fn classify_command() {
        let (code, doc) = call(&["classify", "--n", "3", "--tnhz", "no"]);
        assert_eq!(code, 0);
        assert_eq!(doc["cases"], json!(["∅", "S1", "S3", "S5", "S7", "S9"]));
    }

    #[test]
    fn ring_command() {
        let (code, doc) = call(&["ring", "toda(2, 3, 0)"]);
        assert_eq!(code, 0);
        assert_eq!(doc["relations"][0], "u1^2 = 3*u2");
        assert_eq!(call(&["ring", "S(2)"]).0, EXIT_DOMAIN);
    }
}
