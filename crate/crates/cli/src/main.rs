//! `lsc`: command-line front end for left-symmetric color algebra computations.
//!
//! Every command prints one JSON result document `{command, status, payload}`.
//! Exit codes: 0 success, 2 mathematical failure, 1 input error.

use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use lsc_core::algebra::{Bimodule, GradedAlgebra, GradedLinOp};
use lsc_core::catalog;
use lsc_core::cochain;
use lsc_core::deform::{self, Deformation};
use lsc_core::exactnum::parse_scalar;
use lsc_core::io::{
    parse_operator, AlgebraDocument, BaseRef, DeformationDocument, EquivalenceDocument,
};
use lsc_core::operators;

#[derive(Parser)]
#[command(
    name = "lsc",
    version,
    about = "Exact computations for left-symmetric color algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
#[group(required = true, multiple = false)]
struct Source {
    /// Built-in algebra, e.g. `example37` or `a_alpha(2)`
    #[arg(long)]
    catalog: Option<String>,
    /// Algebra document (JSON)
    #[arg(long)]
    algebra: Option<String>,
}

#[derive(Args, Clone)]
#[group(required = true, multiple = false)]
struct DeformSource {
    /// Catalog entry; entries without a deformation give the trivial one
    #[arg(long)]
    catalog: Option<String>,
    /// Deformation document (JSON)
    #[arg(long)]
    deformation: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Validate the bicharacter and the left-symmetric color identity
    CheckAxioms {
        #[command(flatten)]
        src: Source,
    },
    /// Cohomology H^n_c(A, V); all occurring degrees when --degree is omitted
    Cohomology {
        #[command(flatten)]
        src: Source,
        #[arg(short = 'n', long = "arity")]
        n: usize,
        /// Comma-separated exponents, e.g. `0` or `1,0`
        #[arg(long, allow_hyphen_values = true)]
        degree: Option<String>,
    },
    /// Check d_{n+1} d_n = 0 for all n < n_max
    ComplexCheck {
        #[command(flatten)]
        src: Source,
        #[arg(long, default_value_t = 3)]
        n_max: usize,
    },
    /// Verify a formal deformation order by order
    DeformVerify {
        #[command(flatten)]
        src: DeformSource,
    },
    /// Compute the obstruction and all extensions to order p
    DeformExtend {
        #[command(flatten)]
        src: DeformSource,
        /// Target order p (default: one more than the input order); the input is truncated to p-1
        #[arg(long)]
        order: Option<usize>,
    },
    /// Transport a deformation along an equivalence map P = id + λp_1 + ...
    DeformTransport {
        #[command(flatten)]
        src: DeformSource,
        /// Equivalence-map document (JSON)
        #[arg(long)]
        map: String,
        #[arg(long)]
        order: usize,
    },
    /// Decide whether two infinitesimal deformations are equivalent
    EquivCheck {
        /// First deformation (catalog name or document path)
        #[arg(long)]
        first: String,
        /// Second deformation (catalog name or document path)
        #[arg(long)]
        second: String,
    },
    /// Nijenhuis residual of an operator
    NijenhuisCheck {
        #[command(flatten)]
        src: Source,
        /// Operator document path, inline JSON, or `diag:a,b,...`
        #[arg(long, allow_hyphen_values = true)]
        op: String,
        /// Also check the power identity for 0 <= i, j <= this bound
        #[arg(long)]
        powers: Option<u32>,
    },
    /// Rota–Baxter residual of an operator with the given weight
    RotaBaxterCheck {
        #[command(flatten)]
        src: Source,
        #[arg(long, allow_hyphen_values = true)]
        op: String,
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
    },
    /// Compare Nijenhuis and Rota–Baxter statuses under P^2 in {0, P, I}
    OperatorCorrespondence {
        #[command(flatten)]
        src: Source,
        #[arg(long, allow_hyphen_values = true)]
        op: String,
    },
    /// Built-in algebras
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// List catalog names
    List,
    /// Print an entry as an algebra document
    Export { name: String },
}

/// Input problems; reported with exit code 1.
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

enum Outcome {
    Ok(Value),
    Fail(Value),
    /// Printed verbatim (no result envelope).
    Raw(String),
}

fn read(path: &str) -> Result<String, InputError> {
    fs::read_to_string(path).map_err(|e| InputError(format!("{path}: {e}")))
}

fn load_algebra(src: &Source) -> Result<(GradedAlgebra, Bimodule), InputError> {
    match (&src.catalog, &src.algebra) {
        (Some(name), _) => {
            let a = catalog::load(name)?.algebra;
            let v = Bimodule::standard(&a);
            Ok((a, v))
        }
        (None, Some(path)) => {
            let text = read(path)?;
            let doc =
                AlgebraDocument::parse(&text).map_err(|e| InputError(format!("{path}: {e}")))?;
            Ok(doc
                .build()
                .map_err(|e| InputError(format!("{path}: {e}")))?)
        }
        (None, None) => Err(InputError(
            "one of --catalog or --algebra is required".into(),
        )),
    }
}

fn load_deformation_named(name_or_path: &str, is_catalog: bool) -> Result<Deformation, InputError> {
    if is_catalog {
        let entry = catalog::load(name_or_path)?;
        return Ok(match entry.deformation() {
            Some(d) => d.clone(),
            None => Deformation::trivial(entry.algebra),
        });
    }
    let text = read(name_or_path)?;
    DeformationDocument::parse(&text)
        .and_then(|d| d.build())
        .map_err(|e| InputError(format!("{name_or_path}: {e}")))
}

fn load_deformation(src: &DeformSource) -> Result<Deformation, InputError> {
    match (&src.catalog, &src.deformation) {
        (Some(name), _) => load_deformation_named(name, true),
        (None, Some(path)) => load_deformation_named(path, false),
        (None, None) => Err(InputError(
            "one of --catalog or --deformation is required".into(),
        )),
    }
}

/// A catalog name if it loads, otherwise a document path.
fn load_deformation_guess(arg: &str) -> Result<Deformation, InputError> {
    if std::path::Path::new(arg).is_file() {
        load_deformation_named(arg, false)
    } else {
        load_deformation_named(arg, true)
    }
}

fn load_operator(alg: &GradedAlgebra, spec: &str) -> Result<GradedLinOp, InputError> {
    let trimmed = spec.trim_start();
    if trimmed.starts_with("diag:") || trimmed.starts_with('{') {
        return Ok(parse_operator(alg, spec)?);
    }
    let text = read(spec)?;
    parse_operator(alg, &text).map_err(|e| InputError(format!("{spec}: {e}")))
}

fn to_value<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("reports serialize")
}

fn verdict(ok: bool, payload: Value) -> Outcome {
    if ok {
        Outcome::Ok(payload)
    } else {
        Outcome::Fail(payload)
    }
}

fn run(command: Command) -> Result<Outcome, InputError> {
    Ok(match command {
        Command::CheckAxioms { src } => {
            let (a, _) = load_algebra(&src)?;
            let bichar = a.bicharacter().validate();
            let lsa = a.verify_left_symmetric();
            verdict(
                bichar.valid && lsa.pass,
                json!({
                    "summary": lsa.summary(),
                    "bicharacter": to_value(&bichar),
                    "left_symmetric": to_value(&lsa),
                }),
            )
        }
        Command::Cohomology { src, n, degree } => {
            if n == 0 {
                return Err(InputError("arity must be at least 1".into()));
            }
            let (a, v) = load_algebra(&src)?;
            let reports = match degree {
                Some(text) => {
                    let exps = text
                        .split(',')
                        .map(|t| t.trim().parse::<i64>())
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(|e| InputError(format!("--degree {text:?}: {e}")))?;
                    let c = a.group().element(&exps)?;
                    vec![cochain::cohomology(&a, &v, n, &c)]
                }
                None => cochain::cohomology_all(&a, &v, n),
            };
            Outcome::Ok(json!({ "arity": n, "components": to_value(&reports) }))
        }
        Command::ComplexCheck { src, n_max } => {
            if n_max < 2 {
                return Err(InputError("--n-max must be at least 2".into()));
            }
            let (a, v) = load_algebra(&src)?;
            let rep = cochain::check_complex(&a, &v, n_max);
            verdict(rep.pass, to_value(&rep))
        }
        Command::DeformVerify { src } => {
            let d = load_deformation(&src)?;
            let rep = deform::verify_deformation(&d);
            verdict(rep.pass, to_value(&rep))
        }
        Command::DeformExtend { src, order } => {
            let d = load_deformation(&src)?;
            let p = order.unwrap_or(d.order() + 1);
            if p < 2 || d.order() < p - 1 {
                return Err(InputError(format!(
                    "--order {p} needs p >= 2 and an input of order at least p-1 (got {})",
                    d.order()
                )));
            }
            let rep = deform::obstruction_and_extend(&d.truncated(p - 1))?;
            let ok = rep.extension.is_some();
            verdict(ok, to_value(&rep))
        }
        Command::DeformTransport { src, map, order } => {
            let d = load_deformation(&src)?;
            let text = read(&map)?;
            let p = EquivalenceDocument::parse(&text)
                .and_then(|doc| doc.build(d.base()))
                .map_err(|e| InputError(format!("{map}: {e}")))?;
            let e = deform::transport(&d, &p, order);
            let base = BaseRef::Algebra(AlgebraDocument::from_algebra(d.base(), None));
            Outcome::Ok(json!({
                "deformation": to_value(&DeformationDocument::from_deformation(base, &e)),
            }))
        }
        Command::EquivCheck { first, second } => {
            let f = load_deformation_guess(&first)?;
            let e = load_deformation_guess(&second)?;
            if f.base() != e.base() {
                return Err(InputError(
                    "deformations live over different algebras".into(),
                ));
            }
            if f.order() > 1 || e.order() > 1 {
                return Err(InputError(
                    "equiv-check compares deformations of order at most 1".into(),
                ));
            }
            let res = deform::infinitesimal_equivalence(f.base(), &f.term(1), &e.term(1))?;
            verdict(
                res.is_some(),
                json!({ "equivalent": res.is_some(), "p1": to_value(&res) }),
            )
        }
        Command::NijenhuisCheck { src, op, powers } => {
            let (a, _) = load_algebra(&src)?;
            let p = load_operator(&a, &op)?;
            let rep = operators::nijenhuis_residual(&a, &p)?;
            let mut payload = json!({ "operator": to_value(&p), "residual": to_value(&rep) });
            let mut ok = rep.is_zero();
            if let (Some(bound), true) = (powers, ok) {
                let mut identities = Vec::new();
                for i in 0..=bound {
                    for j in 0..=bound {
                        match operators::nijenhuis_power_identity(&a, &p, i, j) {
                            Ok(r) => {
                                ok &= r.is_zero();
                                identities.push(to_value(&r));
                            }
                            Err(e) => {
                                payload["power_identity_error"] = json!(e.to_string());
                                break;
                            }
                        }
                    }
                }
                payload["power_identity"] = Value::Array(identities);
            }
            verdict(ok, payload)
        }
        Command::RotaBaxterCheck { src, op, weight } => {
            let (a, _) = load_algebra(&src)?;
            let p = load_operator(&a, &op)?;
            let w = parse_scalar(&weight).map_err(|e| InputError(format!("--weight: {e}")))?;
            let rep = operators::rota_baxter_residual(&a, &p, &w)?;
            verdict(
                rep.is_zero(),
                json!({ "operator": to_value(&p), "residual": to_value(&rep) }),
            )
        }
        Command::OperatorCorrespondence { src, op } => {
            let (a, _) = load_algebra(&src)?;
            let p = load_operator(&a, &op)?;
            let rep = operators::correspondence_checks(&a, &p)?;
            verdict(rep.all_agree, to_value(&rep))
        }
        Command::Catalog { action } => match action {
            CatalogAction::List => Outcome::Ok(Value::Array(
                catalog::list()
                    .into_iter()
                    .map(|(name, about)| json!({ "name": name, "description": about }))
                    .collect(),
            )),
            CatalogAction::Export { name } => {
                let entry = catalog::load(&name)?;
                Outcome::Raw(AlgebraDocument::from_algebra(&entry.algebra, None).to_json())
            }
        },
    })
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::CheckAxioms { .. } => "check-axioms",
        Command::Cohomology { .. } => "cohomology",
        Command::ComplexCheck { .. } => "complex-check",
        Command::DeformVerify { .. } => "deform-verify",
        Command::DeformExtend { .. } => "deform-extend",
        Command::DeformTransport { .. } => "deform-transport",
        Command::EquivCheck { .. } => "equiv-check",
        Command::NijenhuisCheck { .. } => "nijenhuis-check",
        Command::RotaBaxterCheck { .. } => "rota-baxter-check",
        Command::OperatorCorrespondence { .. } => "operator-correspondence",
        Command::Catalog { .. } => "catalog",
    }
}

/// Writes to stdout; a closed pipe is not an error.
fn out(text: &str) {
    let mut stdout = std::io::stdout().lock();
    let _ = writeln!(stdout, "{text}");
}

fn emit(command: &str, status: &str, payload: Value) {
    let doc = json!({ "command": command, "status": status, "payload": payload });
    out(&serde_json::to_string_pretty(&doc).expect("json"));
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let name = command_name(&cli.command);
    match run(cli.command) {
        Ok(Outcome::Ok(p)) => {
            emit(name, "ok", p);
            ExitCode::SUCCESS
        }
        Ok(Outcome::Fail(p)) => {
            emit(name, "fail", p);
            ExitCode::from(2)
        }
        Ok(Outcome::Raw(text)) => {
            out(&text);
            ExitCode::SUCCESS
        }
        Err(InputError(msg)) => {
            eprintln!("lsc {name}: {msg}");
            emit(name, "error", json!({ "message": msg }));
            ExitCode::from(1)
        }
    }
}
