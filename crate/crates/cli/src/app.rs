//! Argument grammar and dispatch for the `qsw` binary.

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qsw_core::composition::{compositions, Composition};
use qsw_core::endo::{
    convolution_column_check, is_bhr_distribution, k_full, kbar, peak_lumped_matrix,
    qs_star_distribution, right_ideal_check, verify_lumping, Character,
};
use qsw_core::error::Error as CoreError;
use qsw_core::lyndon::{a_matrix, lyndon_expand};
use qsw_core::permutation::Permutation;
use qsw_core::rational::Rational;
use qsw_core::shuffles::{simulate, RngStream, ShuffleModel};
use qsw_core::spectral::{block_invariance, diagonalizable, spectrum, verify_eigen, z_alpha};
use qsw_core::walk::{stationary, TransitionMatrix};

use crate::charspec::CharacterSpec;

const DEFAULT_COMP_CAP: usize = 8;
const DEFAULT_PERM_CAP: usize = 6;

#[derive(Parser, Debug)]
#[command(
    name = "qsw",
    about = "Exact random walks on permutations and descent compositions",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Print decimal approximations instead of exact rationals.
    #[arg(long, global = true)]
    float: bool,

    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Ignore the built-in size caps (may be very slow).
    #[arg(long, global = true)]
    force: bool,
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
enum DBasis {
    X,
    Y,
    Perm,
}

#[derive(Args, Debug)]
struct CharArg {
    /// Character spec: theta | identity | vartheta:R | ashuffle:A |
    /// eval:R1,R2,... | ufile:PATH
    #[arg(long = "char")]
    character: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Transition matrix over descent compositions.
    Kbar {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        character: CharArg,
    },
    /// Transition matrix over permutations.
    Kfull {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        character: CharArg,
    },
    /// Peak-class lumping of the theta walk.
    Khat {
        #[arg(long)]
        n: usize,
    },
    /// QS*-distribution on permutations.
    Dist {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        character: CharArg,
    },
    /// Stationary distribution of the composition walk.
    Stationary {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        character: CharArg,
        /// Analyze the permutation-level walk instead.
        #[arg(long)]
        perm: bool,
    },
    /// Eigenvalues, one per composition.
    Spectrum {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        character: CharArg,
    },
    /// Eigenvector indexed by a composition.
    Zvec {
        /// Composition, e.g. 2,1
        #[arg(long)]
        alpha: String,
        #[command(flatten)]
        character: CharArg,
        /// Expansion basis for the output.
        #[arg(long, value_enum, default_value_t = DBasis::X)]
        basis: DBasis,
    },
    /// Diagonalizability certificate.
    Diag {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        character: CharArg,
    },
    /// Universal endomorphism matrix with polynomial entries.
    Amatrix {
        #[arg(long)]
        n: usize,
    },
    /// Straightening of a monomial function onto Lyndon generators.
    Lyndon {
        /// Composition, e.g. 2,1
        #[arg(long)]
        comp: String,
    },
    /// Seeded Monte Carlo simulation of a shuffle model.
    Simulate {
        /// Model: ashuffle:A | fufd | signed:R | qs:R1,R2,...
        #[arg(long)]
        model: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        steps: u32,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Starting permutation in one-line notation, e.g. 1,3,2
        #[arg(long)]
        start: Option<String>,
    },
    /// Exact verification of structural identities.
    Verify {
        #[command(subcommand)]
        what: VerifyCommand,
    },
}

#[derive(Subcommand, Debug)]
enum VerifyCommand {
    /// The composition walk lumps the permutation walk.
    Lumping {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        character: CharArg,
    },
    /// The eigen-equation for one composition, via the group product.
    Eigen {
        #[arg(long)]
        alpha: String,
        #[command(flatten)]
        character: CharArg,
    },
    /// Convolution: the (n)-column of the m-th matrix power.
    Convolution {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        m: u32,
        #[command(flatten)]
        character: CharArg,
    },
    /// The peak-class span is a right ideal.
    Ideal {
        #[arg(long)]
        n: usize,
    },
    /// Block structure of the permutation walk.
    Block {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        character: CharArg,
    },
    /// X-basis nonnegativity of the driving distribution.
    Bhr {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        character: CharArg,
    },
}

/// Failures tagged with the exit code they map to.
pub enum RunError {
    /// Exit 2: the arguments never made sense.
    Usage(String),
    /// Exit 1: the computation rejected the inputs.
    Domain(String),
}

struct Caps {
    comp: usize,
    perm: usize,
}

fn caps(force: bool) -> Result<Caps, RunError> {
    if force {
        return Ok(Caps { comp: usize::MAX, perm: usize::MAX });
    }
    match std::env::var("QSW_MAX_N") {
        Ok(s) => {
            let n: usize = s
                .parse()
                .map_err(|_| RunError::Usage(format!("QSW_MAX_N={s:?} is not an integer")))?;
            Ok(Caps { comp: n, perm: n })
        }
        Err(_) => Ok(Caps { comp: DEFAULT_COMP_CAP, perm: DEFAULT_PERM_CAP }),
    }
}

fn check_cap(n: usize, cap: usize, kind: &str) -> Result<(), RunError> {
    if n > cap {
        return Err(RunError::Domain(format!(
            "n = {n} exceeds the {kind} cap {cap} (raise QSW_MAX_N or pass --force)"
        )));
    }
    Ok(())
}

fn domain<E: std::fmt::Display>(e: E) -> RunError {
    RunError::Domain(e.to_string())
}

fn parse_char(spec: &str) -> Result<Character, RunError> {
    let spec: CharacterSpec = spec.parse().map_err(|e| RunError::Usage(format!("{e}")))?;
    spec.resolve().map_err(|e| {
        // bad file contents are data errors, not usage errors
        RunError::Domain(e.to_string())
    })
}

fn parse_composition(s: &str) -> Result<Composition, RunError> {
    s.parse()
        .map_err(|_| RunError::Usage(format!("bad composition {s:?}: expected parts like 2,1")))
}

fn parse_model(s: &str) -> Result<ShuffleModel, RunError> {
    let usage = |token: &str| {
        RunError::Usage(format!(
            "bad model at {token:?} (grammar: ashuffle:A | fufd | signed:R | qs:R1,R2,...)"
        ))
    };
    let (head, rest) = match s.split_once(':') {
        Some((h, r)) => (h, Some(r)),
        None => (s, None),
    };
    let model = match (head, rest) {
        ("fufd", None) => ShuffleModel::FaceUpFaceDown,
        ("ashuffle", Some(a)) => {
            let a: usize = a.parse().map_err(|_| usage(a))?;
            ShuffleModel::AShuffle { a }
        }
        ("signed", Some(r)) => {
            let r: Rational = r.parse().map_err(|_| usage(r))?;
            ShuffleModel::WeightedSigned { r }
        }
        ("qs", Some(list)) => {
            let mut rs = Vec::new();
            for tok in list.split(',') {
                rs.push(tok.parse().map_err(|_| usage(tok))?);
            }
            ShuffleModel::QsSampler { rs }
        }
        _ => return Err(usage(s)),
    };
    model.validate().map_err(domain)?;
    Ok(model)
}

/// The character whose walk the model steps; used for exact columns in the
/// simulation report.
fn model_character(model: &ShuffleModel) -> Result<Character, CoreError> {
    Ok(match model {
        ShuffleModel::AShuffle { a } => Character::convolution_power(*a)?,
        ShuffleModel::FaceUpFaceDown => Character::theta(),
        ShuffleModel::WeightedSigned { r } => Character::vartheta(r.clone()),
        ShuffleModel::QsSampler { rs } => Character::evaluation(rs.clone()),
    })
}

struct Renderer {
    float: bool,
}

impl Renderer {
    fn rational(&self, r: &Rational) -> Value {
        if self.float {
            json!(r.to_f64())
        } else {
            Value::String(r.to_string())
        }
    }

    fn comp_matrix(&self, m: &TransitionMatrix<Composition>, n: usize, label: &str) -> Value {
        json!({
            "n": n,
            "char": label,
            "states": m.states(),
            "rows": self.matrix_rows(m.matrix()),
        })
    }

    fn matrix_rows(&self, m: &qsw_core::linalg::QMatrix) -> Value {
        Value::Array(
            (0..m.rows())
                .map(|i| Value::Array(m.row(i).iter().map(|v| self.rational(v)).collect()))
                .collect(),
        )
    }
}

fn csv_quote(field: &str) -> String {
    if field.contains(',') || field.contains('"') {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

fn comp_label(c: &Composition) -> String {
    c.parts()
        .iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn matrix_csv<S: Ord + Clone>(
    m: &TransitionMatrix<S>,
    label: impl Fn(&S) -> String,
    float: bool,
) -> String {
    let mut out = String::new();
    let header: Vec<String> = std::iter::once("state".to_string())
        .chain(m.states().iter().map(|s| csv_quote(&label(s))))
        .collect();
    out.push_str(&header.join(","));
    out.push('\n');
    for (i, s) in m.states().iter().enumerate() {
        let mut row = vec![csv_quote(&label(s))];
        for v in m.matrix().row(i) {
            row.push(if float { v.to_f64().to_string() } else { csv_quote(&v.to_string()) });
        }
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn run(cli: Cli) -> Result<String, RunError> {
    let caps = caps(cli.force)?;
    let render = Renderer { float: cli.float };
    let output = match &cli.command {
        Command::Kbar { n, character } => {
            check_cap(*n, caps.comp, "composition-level")?;
            let char = parse_char(&character.character)?;
            let m = kbar(&char, *n).map_err(domain)?;
            match cli.format {
                Format::Json => pretty(render.comp_matrix(&m, *n, char.label())),
                Format::Csv => matrix_csv(&m, comp_label, cli.float),
            }
        }
        Command::Kfull { n, character } => {
            check_cap(*n, caps.perm, "permutation-level")?;
            let char = parse_char(&character.character)?;
            let m = k_full(&char, *n, caps.perm).map_err(domain)?;
            match cli.format {
                Format::Json => pretty(json!({
                    "n": n,
                    "char": char.label(),
                    "states": m.states(),
                    "rows": render.matrix_rows(m.matrix()),
                })),
                Format::Csv => matrix_csv(
                    &m,
                    |p: &Permutation| {
                        p.one_line().iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
                    },
                    cli.float,
                ),
            }
        }
        Command::Khat { n } => {
            check_cap(*n, caps.comp, "composition-level")?;
            let (m, partition) = peak_lumped_matrix(*n).map_err(domain)?;
            let classes: Vec<Value> = partition
                .classes()
                .iter()
                .map(|class| {
                    json!({
                        "peaks": class[0].peak_set(),
                        "members": class,
                    })
                })
                .collect();
            match cli.format {
                Format::Json => pretty(json!({
                    "n": n,
                    "classes": classes,
                    "rows": render.matrix_rows(m.matrix()),
                })),
                Format::Csv => matrix_csv(
                    &m,
                    |peaks: &Vec<usize>| {
                        peaks.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
                    },
                    cli.float,
                ),
            }
        }
        Command::Dist { n, character } => {
            check_cap(*n, caps.perm, "permutation-level")?;
            let char = parse_char(&character.character)?;
            let dist = qs_star_distribution(&char, *n).map_err(domain)?;
            let probs: Vec<Value> = dist
                .probs()
                .iter()
                .map(|(p, v)| json!({"perm": p, "value": render.rational(v)}))
                .collect();
            pretty(json!({"n": n, "char": char.label(), "probs": probs}))
        }
        Command::Stationary { n, character, perm } => {
            let char = parse_char(&character.character)?;
            if *perm {
                check_cap(*n, caps.perm, "permutation-level")?;
                let k = k_full(&char, *n, caps.perm).map_err(domain)?;
                let st = stationary(&k);
                let dist = st.distribution.as_ref().map(|d| {
                    d.probs()
                        .iter()
                        .map(|(p, v)| json!({"perm": p, "value": render.rational(v)}))
                        .collect::<Vec<_>>()
                });
                pretty(json!({
                    "level": "permutations",
                    "unique": st.unique,
                    "kernel_dim": st.kernel_dim,
                    "distribution": dist,
                }))
            } else {
                check_cap(*n, caps.comp, "composition-level")?;
                let kb = kbar(&char, *n).map_err(domain)?;
                let st = stationary(&kb);
                let dist = st.distribution.as_ref().map(|d| {
                    d.probs()
                        .iter()
                        .map(|(c, v)| json!({"comp": c, "value": render.rational(v)}))
                        .collect::<Vec<_>>()
                });
                pretty(json!({
                    "level": "compositions",
                    "unique": st.unique,
                    "kernel_dim": st.kernel_dim,
                    "distribution": dist,
                }))
            }
        }
        Command::Spectrum { n, character } => {
            check_cap(*n, caps.comp, "composition-level")?;
            let char = parse_char(&character.character)?;
            let spec = spectrum(&char, *n).map_err(domain)?;
            let lambda = char.lambda().map_err(domain)?;
            let lambda_n = lambda.pow(*n as i64);
            let eigenvalues: Vec<Value> = spec
                .eigenvalues()
                .iter()
                .map(|(c, l)| {
                    let normalized = if lambda_n.is_zero() {
                        Value::Null
                    } else {
                        render.rational(&(l / &lambda_n))
                    };
                    json!({"comp": c, "value": render.rational(l), "normalized": normalized})
                })
                .collect();
            pretty(json!({
                "n": n,
                "char": char.label(),
                "lambda": render.rational(&lambda),
                "eigenvalues": eigenvalues,
            }))
        }
        Command::Zvec { alpha, character, basis } => {
            let alpha = parse_composition(alpha)?;
            check_cap(alpha.weight(), caps.comp, "composition-level")?;
            let char = parse_char(&character.character)?;
            let z = z_alpha(&char, &alpha).map_err(domain)?;
            let (basis_name, coeffs): (&str, Vec<Value>) = match basis {
                DBasis::X => (
                    "X",
                    z.element
                        .x_coeffs()
                        .map_err(domain)?
                        .iter()
                        .map(|(c, v)| json!({"comp": c, "value": render.rational(v)}))
                        .collect(),
                ),
                DBasis::Y => (
                    "Y",
                    z.element
                        .y_coeffs()
                        .map_err(domain)?
                        .iter()
                        .map(|(c, v)| json!({"comp": c, "value": render.rational(v)}))
                        .collect(),
                ),
                DBasis::Perm => {
                    check_cap(alpha.weight(), caps.perm, "permutation-level")?;
                    (
                        "perm",
                        z.element
                            .to_permutation_basis_with_cap(caps.perm)
                            .map_err(domain)?
                            .perm_coeffs()
                            .map_err(domain)?
                            .iter()
                            .map(|(p, v)| json!({"perm": p, "value": render.rational(v)}))
                            .collect(),
                    )
                }
            };
            pretty(json!({
                "alpha": alpha,
                "char": char.label(),
                "basis": basis_name,
                "coeffs": coeffs,
            }))
        }
        Command::Diag { n, character } => {
            check_cap(*n, caps.comp, "composition-level")?;
            let char = parse_char(&character.character)?;
            let d = diagonalizable(&char, *n).map_err(domain)?;
            let eigenbasis: Vec<Value> = d
                .eigenbasis
                .iter()
                .map(|z| {
                    let coeffs: Vec<Value> = z
                        .element
                        .x_coeffs()
                        .expect("X basis")
                        .iter()
                        .map(|(c, v)| json!({"comp": c, "value": render.rational(v)}))
                        .collect();
                    json!({"alpha": z.index, "coeffs": coeffs})
                })
                .collect();
            pretty(json!({
                "n": n,
                "char": char.label(),
                "diagonalizable": d.diagonalizable,
                "rank": d.rank,
                "nonzero_eigenvalues": d.nonzero_eigenvalues,
                "obstruction": d.obstruction.as_ref().map(|o| format!("{o:?}")),
                "eigenbasis": eigenbasis,
                "kernel_dim": d.kernel_basis.len(),
            }))
        }
        Command::Amatrix { n } => {
            check_cap(*n, caps.comp, "composition-level")?;
            let a = a_matrix(*n).map_err(domain)?;
            let rows: Vec<Value> = a
                .rows()
                .iter()
                .map(|row| {
                    Value::Array(row.iter().map(|p| Value::String(p.to_string())).collect())
                })
                .collect();
            pretty(json!({
                "n": n,
                "compositions": a.compositions(),
                "rows": rows,
                "terms": a.term_count(),
            }))
        }
        Command::Lyndon { comp } => {
            let beta = parse_composition(comp)?;
            check_cap(beta.weight(), caps.comp, "composition-level")?;
            let poly = lyndon_expand(&beta).map_err(domain)?;
            pretty(json!({"comp": beta, "expansion": poly.to_string()}))
        }
        Command::Simulate { model, n, steps, trials, seed, start } => {
            let model = parse_model(model)?;
            let start = match start {
                Some(s) => s.parse::<Permutation>().map_err(|_| {
                    RunError::Usage(format!("bad permutation {s:?}: expected e.g. 1,3,2"))
                })?,
                None => Permutation::identity(*n),
            };
            if start.n() != *n {
                return Err(RunError::Usage(format!(
                    "--start has {} entries but --n is {n}",
                    start.n()
                )));
            }
            let rng = RngStream::new(*seed);
            let result = simulate(&model, &start, *steps, *trials, &rng).map_err(domain)?;
            // exact row when the corresponding walk is small enough
            let exact: Option<BTreeMap<Composition, Rational>> = if *n <= caps.comp && *n >= 1 {
                let char = model_character(&model).map_err(domain)?;
                match kbar(&char, *n) {
                    Ok(kb) => {
                        let kb = kb.pow(*steps);
                        let from = start.descent_composition();
                        Some(
                            kb.states()
                                .iter()
                                .map(|b| (b.clone(), kb.entry(&from, b).clone()))
                                .collect(),
                        )
                    }
                    Err(_) => None,
                }
            } else {
                None
            };
            let comps = compositions(*n);
            let cells: Vec<(Composition, Option<Rational>, f64, Option<f64>)> = comps
                .iter()
                .map(|beta| {
                    let e = exact.as_ref().map(|m| m[beta].clone());
                    let freq = result.composition_frequency(beta);
                    let se = e.as_ref().map(|p| {
                        let p = p.to_f64();
                        (p * (1.0 - p) / *trials as f64).sqrt()
                    });
                    (beta.clone(), e, freq, se)
                })
                .collect();
            match cli.format {
                Format::Json => {
                    let rows: Vec<Value> = cells
                        .iter()
                        .map(|(beta, e, freq, se)| {
                            json!({
                                "comp": beta,
                                "exact": e.as_ref().map(|v| render.rational(v)),
                                "empirical": freq,
                                "std_error": se,
                            })
                        })
                        .collect();
                    pretty(json!({
                        "n": n,
                        "steps": steps,
                        "trials": trials,
                        "seed": seed,
                        "start": start,
                        "rows": rows,
                    }))
                }
                Format::Csv => {
                    let mut out = String::from("composition,exact,empirical,std_error\n");
                    for (beta, e, freq, se) in cells {
                        let exact_cell = match &e {
                            Some(v) if cli.float => v.to_f64().to_string(),
                            Some(v) => v.to_string(),
                            None => String::new(),
                        };
                        let se_cell = se.map(|s| s.to_string()).unwrap_or_default();
                        out.push_str(&format!(
                            "{},{},{},{}\n",
                            csv_quote(&comp_label(&beta)),
                            csv_quote(&exact_cell),
                            freq,
                            se_cell
                        ));
                    }
                    out
                }
            }
        }
        Command::Verify { what } => {
            let (name, holds, detail): (&str, bool, Value) = match what {
                VerifyCommand::Lumping { n, character } => {
                    check_cap(*n, caps.perm, "permutation-level")?;
                    let char = parse_char(&character.character)?;
                    let k = k_full(&char, *n, caps.perm).map_err(domain)?;
                    let kb = kbar(&char, *n).map_err(domain)?;
                    match verify_lumping(&k, &kb) {
                        None => ("lumping", true, Value::Null),
                        Some((pi, beta)) => (
                            "lumping",
                            false,
                            json!({"witness": {"perm": pi, "comp": beta}}),
                        ),
                    }
                }
                VerifyCommand::Eigen { alpha, character } => {
                    let alpha = parse_composition(alpha)?;
                    check_cap(alpha.weight(), caps.perm, "permutation-level")?;
                    let char = parse_char(&character.character)?;
                    let ok = verify_eigen(&char, &alpha, caps.perm).map_err(domain)?;
                    ("eigen", ok, json!({"alpha": alpha}))
                }
                VerifyCommand::Convolution { n, m, character } => {
                    check_cap(*n, caps.perm, "permutation-level")?;
                    let char = parse_char(&character.character)?;
                    let ok = convolution_column_check(&char, *n, *m, caps.perm).map_err(domain)?;
                    ("convolution", ok, json!({"m": m}))
                }
                VerifyCommand::Ideal { n } => {
                    check_cap(*n, caps.perm, "permutation-level")?;
                    let ok = right_ideal_check(*n, caps.perm.max(*n)).map_err(domain)?;
                    ("ideal", ok, Value::Null)
                }
                VerifyCommand::Block { n, character } => {
                    check_cap(*n, caps.perm, "permutation-level")?;
                    let char = parse_char(&character.character)?;
                    let ok = block_invariance(&char, *n, caps.perm).map_err(domain)?;
                    ("block", ok, Value::Null)
                }
                VerifyCommand::Bhr { n, character } => {
                    check_cap(*n, caps.comp, "composition-level")?;
                    let char = parse_char(&character.character)?;
                    let (ok, x) = is_bhr_distribution(&char, *n).map_err(domain)?;
                    let coeffs: Vec<Value> = x
                        .x_coeffs()
                        .map_err(domain)?
                        .iter()
                        .map(|(c, v)| json!({"comp": c, "value": render.rational(v)}))
                        .collect();
                    ("bhr", ok, json!({"x_expansion": coeffs}))
                }
            };
            let text = pretty(json!({"check": name, "holds": holds, "detail": detail}));
            if !holds {
                emit(&cli, &text)?;
                return Err(RunError::Domain(format!("verification {name:?} failed")));
            }
            text
        }
    };
    emit(&cli, &output)?;
    Ok(output)
}

fn emit(cli: &Cli, output: &str) -> Result<(), RunError> {
    if let Some(path) = &cli.out {
        std::fs::write(path, output.as_bytes())
            .map_err(|e| RunError::Domain(format!("cannot write {}: {e}", path.display())))?;
    } else if output.ends_with('\n') {
        print!("{output}");
    } else {
        println!("{output}");
    }
    Ok(())
}

fn pretty(v: Value) -> String {
    serde_json::to_string_pretty(&v).expect("serializable")
}
