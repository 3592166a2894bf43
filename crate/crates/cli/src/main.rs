//! Command-line surface: verification-case registry, series and
//! continued-fraction evaluation, series ↔ CF transforms, divergent-series
//! summation, and QD eigenvalues.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qcf::contfrac::{CfForm, ContinuedFraction};
use qcf::divergent;
use qcf::qdtoda;
use qcf::qseries::{partial_sum, SeriesKind, SeriesSpec};
use qcf::report::{self, CaseReport, Config, Format};
use qcf::scalar::set_precision_digits;
use qcf::transforms;
use qcf::{Real, Scalar};

#[derive(Parser)]
#[command(name = "qcf", version, about = "q-series, continued fractions, and QD/Toda numerics")]
struct Cli {
    /// Working precision in decimal digits.
    #[arg(long, global = true, default_value_t = 30)]
    digits: usize,

    /// Series/product truncation order.
    #[arg(long = "N", global = true, default_value_t = 100)]
    n_terms: usize,

    /// Continued-fraction depth.
    #[arg(long, global = true, default_value_t = 80)]
    depth: usize,

    /// Comparison tolerance for golden-value cases.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Json,
    Table,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ToCfMethod {
    Euler,
    EulerProduct,
    Muir,
    MuirRogers,
    GaussHeine,
    Ramanujan,
    Extended,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ToSeriesMethod {
    Euler,
    MuirRogers,
}

#[derive(Subcommand)]
enum Command {
    /// Run one registered verification case, or all of them.
    Verify {
        /// Case id (see list-cases).
        #[arg(long, conflicts_with = "all")]
        case: Option<String>,
        /// Run every registered case.
        #[arg(long)]
        all: bool,
        /// Report format.
        #[arg(long, value_enum, default_value_t = OutFormat::Json)]
        format: OutFormat,
        /// Parameter override name=value (repeatable; parametric cases only).
        #[arg(long = "param")]
        params: Vec<String>,
    },
    /// List the registered verification cases.
    ListCases,
    /// Evaluate a catalog series at given parameters.
    EvalSeries {
        /// Catalog series name (e.g. cauchy_1phi0, triangular_alt).
        #[arg(long)]
        kind: String,
        /// Parameter name=value (repeatable), decimal values.
        #[arg(long = "param")]
        params: Vec<String>,
    },
    /// Evaluate a continued-fraction literal adaptively.
    EvalCf {
        /// JSON literal: [[a,b],...] pairs, {"d":[...]}, or {"e":[...],"x":v}.
        #[arg(long)]
        cf: String,
    },
    /// Convert series coefficients (or a parametric family) to a continued fraction.
    SeriesToCf {
        #[arg(long, value_enum)]
        method: ToCfMethod,
        /// JSON array of series coefficients c_n (euler, muir, muir-rogers)
        /// or product factors a_n (euler-product).
        #[arg(long)]
        coeffs: Option<String>,
        /// JSON array of denominator coefficients b_n (muir only).
        #[arg(long)]
        b: Option<String>,
        /// Parameter name=value (gauss-heine: alpha,beta,gamma,q;
        /// ramanujan: a,lambda,b,q; extended: beta,gamma,q).
        #[arg(long = "param")]
        params: Vec<String>,
        /// Exchange the roles of alpha and beta (gauss-heine only).
        #[arg(long)]
        beta_first: bool,
    },
    /// Recover series coefficients from a continued fraction.
    CfToSeries {
        #[arg(long, value_enum)]
        method: ToSeriesMethod,
        /// JSON literal: [[a,b],...] pairs, {"d":[...]}, or {"e":[...],"x":v}.
        #[arg(long)]
        cf: String,
    },
    /// Sum a registered divergent-series problem.
    SumDivergent {
        /// Problem id (e.g. gauss1, case1_q).
        #[arg(long)]
        problem: String,
    },
    /// Eigenvalues of a symmetric matrix by the QD/LR iteration.
    Qd {
        /// JSON file: array of rows, or {"diag":[...],"offdiag":[...]}.
        #[arg(long)]
        matrix: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    set_precision_digits(cli.digits);
    match run(&cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode, String> {
    let config = Config {
        digits: cli.digits,
        n_terms: cli.n_terms,
        depth: cli.depth,
        tol: cli.tol,
    };
    match &cli.command {
        Command::Verify {
            case,
            all,
            format,
            params,
        } => {
            let overrides = parse_params(params)?;
            let ids: Vec<&str> = match (case, all) {
                (Some(id), false) => vec![id.as_str()],
                (None, _) => report::list_cases().iter().map(|(i, _)| *i).collect(),
                (Some(_), true) => unreachable!("clap forbids --case with --all"),
            };
            let fmt = match format {
                OutFormat::Json => Format::Json,
                OutFormat::Table => Format::Table,
            };
            let mut all_pass = true;
            let mut reports: Vec<CaseReport> = Vec::new();
            for id in ids {
                let report =
                    report::run_case_with(id, &config, &overrides).map_err(|e| e.to_string())?;
                all_pass &= report.pass;
                reports.push(report);
            }
            match fmt {
                Format::Json => {
                    let body = serde_json::to_string_pretty(&reports).expect("reports serialize");
                    println!("{body}");
                }
                Format::Table => {
                    for r in &reports {
                        print!("{}", report::emit_report(r, Format::Table));
                    }
                    println!("{}", if all_pass { "ALL PASS" } else { "FAILURES" });
                }
            }
            Ok(if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Command::ListCases => {
            for (id, desc) in report::list_cases() {
                println!("{id:20} {desc}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::EvalSeries { kind, params } => {
            let kind: SeriesKind = kind.parse().map_err(|e| format!("{e}"))?;
            let params = parse_real_params(params)?;
            let pairs: Vec<(&str, Real)> = params
                .iter()
                .map(|(k, v)| (k.as_str(), v.clone()))
                .collect();
            let spec = SeriesSpec::new(kind, &pairs);
            let value = partial_sum(&spec, cli.n_terms).map_err(|e| e.to_string())?;
            emit(&json!({
                "kind": kind.name(),
                "n_terms": cli.n_terms,
                "value": value.to_decimal(cli.digits),
            }));
            Ok(ExitCode::SUCCESS)
        }
        Command::EvalCf { cf } => {
            let cf = parse_cf(cf)?;
            let tol = Real::from_f64_lossy(cli.tol);
            let (value, depth_used) = cf
                .evaluate_adaptive(&tol, cli.depth)
                .map_err(|e| e.to_string())?;
            emit(&json!({
                "value": value.to_decimal(cli.digits),
                "depth_used": depth_used,
            }));
            Ok(ExitCode::SUCCESS)
        }
        Command::SeriesToCf {
            method,
            coeffs,
            b,
            params,
            beta_first,
        } => {
            let out = series_to_cf(cli, *method, coeffs.as_deref(), b.as_deref(), params, *beta_first)?;
            emit(&out);
            Ok(ExitCode::SUCCESS)
        }
        Command::CfToSeries { method, cf } => {
            let cf = parse_cf(cf)?;
            let c = match method {
                ToSeriesMethod::Euler => {
                    let normal = cf.standard_to_normal().map_err(|e| e.to_string())?;
                    let d: Vec<Real> = normal
                        .standard_pairs()
                        .into_iter()
                        .map(|(a, _)| a)
                        .collect();
                    transforms::euler_inverse(&d).map_err(|e| e.to_string())?
                }
                ToSeriesMethod::MuirRogers => {
                    let CfForm::Pivot { e, .. } = &cf.form else {
                        return Err(
                            "muir-rogers inversion needs a pivot-form literal {\"e\":[...],\"x\":v}"
                                .into(),
                        );
                    };
                    transforms::muir_rogers_inverse(e).map_err(|e| e.to_string())?
                }
            };
            emit(&json!({ "coefficients": decimals(&c, cli.digits) }));
            Ok(ExitCode::SUCCESS)
        }
        Command::SumDivergent { problem } => {
            let r = divergent::sum_problem::<Real>(problem, cli.n_terms)
                .map_err(|e| e.to_string())?;
            let d = cli.digits;
            emit(&json!({
                "problem": problem,
                "classification": r.classification.name(),
                "value": r.value.as_ref().map(|v| v.to_decimal(d)),
                "q_infinity": r.q_infinity.as_ref().map(|v| v.to_decimal(d)),
                "bracket": r.bracket.as_ref().map(|(a, b)| vec![a.to_decimal(d), b.to_decimal(d)]),
                "n_used": r.n_used,
                "method": r.method.name(),
            }));
            Ok(ExitCode::SUCCESS)
        }
        Command::Qd { matrix } => {
            let text = std::fs::read_to_string(matrix)
                .map_err(|e| format!("{}: {e}", matrix.display()))?;
            let dense = parse_matrix(&text)?;
            let out = qdtoda::qd_eigenvalues(
                &dense,
                qdtoda::default_max_iters(dense.len()),
                qdtoda::default_tol(),
            )
            .map_err(|e| e.to_string())?;
            emit(&json!({
                "eigenvalues": decimals(&out.eigenvalues, cli.digits),
                "iterations": out.iterations,
                "residual": format!("{:e}", out.residual),
                "converged": out.converged,
                "oscillating": out.oscillating,
            }));
            Ok(if out.converged {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
    }
}

fn series_to_cf(
    cli: &Cli,
    method: ToCfMethod,
    coeffs: Option<&str>,
    b: Option<&str>,
    params: &[String],
    beta_first: bool,
) -> Result<Value, String> {
    let need_coeffs = || -> Result<Vec<Real>, String> {
        parse_real_array(coeffs.ok_or("this method needs --coeffs")?)
    };
    let params = parse_real_params(params)?;
    let need = |name: &str| -> Result<Real, String> {
        params
            .get(name)
            .cloned()
            .ok_or_else(|| format!("missing --param {name}=..."))
    };
    let digits = cli.digits;
    match method {
        ToCfMethod::Euler => {
            let c = need_coeffs()?;
            Ok(standard_json(&transforms::euler_cf(&c), digits))
        }
        ToCfMethod::EulerProduct => {
            let a = need_coeffs()?;
            Ok(standard_json(&transforms::euler_product_cf(&a), digits))
        }
        ToCfMethod::Muir => {
            let c = need_coeffs()?;
            let b = parse_real_array(b.ok_or("muir needs --b with the denominator coefficients")?)?;
            let n_max = cli.depth.min(c.len().min(b.len()).saturating_sub(1));
            let seq = transforms::muir_cf(&b, &c, n_max).map_err(|e| e.to_string())?;
            Ok(pivot_json(&seq.e, seq.terminated_at, digits))
        }
        ToCfMethod::MuirRogers => {
            let c = need_coeffs()?;
            let n_max = cli.depth.min(c.len().saturating_sub(2));
            let seq = transforms::muir_rogers_cf(&c, n_max).map_err(|e| e.to_string())?;
            Ok(pivot_json(&seq.e, seq.terminated_at, digits))
        }
        ToCfMethod::GaussHeine => {
            let seq = transforms::gauss_heine_cf(
                &need("alpha")?,
                &need("beta")?,
                &need("gamma")?,
                &need("q")?,
                cli.depth,
                beta_first,
            )
            .map_err(|e| e.to_string())?;
            Ok(pivot_json(&seq.e, seq.terminated_at, digits))
        }
        ToCfMethod::Ramanujan => {
            let cf = transforms::ramanujan_cf(
                &need("a")?,
                &need("lambda")?,
                &need("b")?,
                &need("q")?,
                cli.depth,
            );
            Ok(standard_json(&cf, digits))
        }
        ToCfMethod::Extended => {
            let seq =
                transforms::extended_cf(&need("beta")?, &need("gamma")?, &need("q")?, cli.depth)
                    .map_err(|e| e.to_string())?;
            Ok(pivot_json(&seq.e, seq.terminated_at, digits))
        }
    }
}

fn emit(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json output"));
}

fn decimals(values: &[Real], digits: usize) -> Vec<String> {
    values.iter().map(|v| v.to_decimal(digits)).collect()
}

fn standard_json(cf: &ContinuedFraction<Real>, digits: usize) -> Value {
    let pairs: Vec<Vec<String>> = cf
        .standard_pairs()
        .iter()
        .map(|(a, b)| vec![a.to_decimal(digits), b.to_decimal(digits)])
        .collect();
    json!({ "standard": pairs })
}

fn pivot_json(e: &[Real], terminated_at: Option<usize>, digits: usize) -> Value {
    json!({ "e": decimals(e, digits), "terminated_at": terminated_at })
}

fn parse_params(items: &[String]) -> Result<BTreeMap<String, String>, String> {
    let mut map = BTreeMap::new();
    for item in items {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| format!("bad parameter '{item}', expected name=value"))?;
        map.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(map)
}

fn parse_real_params(items: &[String]) -> Result<BTreeMap<String, Real>, String> {
    parse_params(items)?
        .into_iter()
        .map(|(k, v)| {
            let r = Real::from_decimal(&v).ok_or_else(|| format!("parameter {k}: bad decimal '{v}'"))?;
            Ok((k, r))
        })
        .collect()
}

fn json_to_real(v: &Value) -> Result<Real, String> {
    let text = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        other => return Err(format!("expected a number, got {other}")),
    };
    Real::from_decimal(&text).ok_or_else(|| format!("bad decimal '{text}'"))
}

fn parse_real_array(text: &str) -> Result<Vec<Real>, String> {
    let v: Value = serde_json::from_str(text).map_err(|e| e.to_string())?;
    let Value::Array(items) = v else {
        return Err("expected a JSON array".into());
    };
    items.iter().map(json_to_real).collect()
}

/// A CF literal: `[[a,b],...]` standard pairs, `{"d":[...]}` normal form,
/// or `{"e":[...],"x":v}` pivot form.
fn parse_cf(text: &str) -> Result<ContinuedFraction<Real>, String> {
    let v: Value = serde_json::from_str(text).map_err(|e| e.to_string())?;
    match &v {
        Value::Array(rows) => {
            let pairs = rows
                .iter()
                .map(|row| {
                    let Value::Array(pair) = row else {
                        return Err("each entry must be an [a, b] pair".to_string());
                    };
                    if pair.len() != 2 {
                        return Err("each entry must be an [a, b] pair".to_string());
                    }
                    Ok((json_to_real(&pair[0])?, json_to_real(&pair[1])?))
                })
                .collect::<Result<Vec<_>, String>>()?;
            Ok(ContinuedFraction::standard(pairs))
        }
        Value::Object(map) => {
            if let Some(d) = map.get("d") {
                let Value::Array(items) = d else {
                    return Err("\"d\" must be an array".into());
                };
                let d = items.iter().map(json_to_real).collect::<Result<Vec<_>, _>>()?;
                Ok(ContinuedFraction::normal(d))
            } else if let (Some(e), Some(x)) = (map.get("e"), map.get("x")) {
                let Value::Array(items) = e else {
                    return Err("\"e\" must be an array".into());
                };
                let e = items.iter().map(json_to_real).collect::<Result<Vec<_>, _>>()?;
                Ok(ContinuedFraction::pivot(e, json_to_real(x)?))
            } else {
                Err("object literal must be {\"d\":[...]} or {\"e\":[...],\"x\":v}".into())
            }
        }
        _ => Err("continued-fraction literal must be an array or an object".into()),
    }
}

/// A matrix file: array of rows, or `{"diag":[...],"offdiag":[...]}`.
fn parse_matrix(text: &str) -> Result<Vec<Vec<Real>>, String> {
    let v: Value = serde_json::from_str(text).map_err(|e| e.to_string())?;
    match &v {
        Value::Array(rows) => rows
            .iter()
            .map(|row| {
                let Value::Array(entries) = row else {
                    return Err("each row must be an array".to_string());
                };
                entries.iter().map(json_to_real).collect()
            })
            .collect(),
        Value::Object(map) => {
            let get = |key: &str| -> Result<Vec<Real>, String> {
                let Some(Value::Array(items)) = map.get(key) else {
                    return Err(format!("missing \"{key}\" array"));
                };
                items.iter().map(json_to_real).collect()
            };
            let t = qdtoda::TridiagonalMatrix::new(get("diag")?, get("offdiag")?)
                .map_err(|e| e.to_string())?;
            Ok(t.to_dense())
        }
        _ => Err("matrix literal must be an array of rows or {\"diag\",\"offdiag\"}".into()),
    }
}
