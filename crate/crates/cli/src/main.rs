//! `pglcensus` command-line tool.
//!
//! Exit status: 0 on success, 1 when the mathematical answer is negative
//! (not associated, verification mismatch), 2 on domain errors, 64 on
//! usage errors.

mod tables;
mod verify;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use pglcensus::action::{self, Permutation};
use pglcensus::census::{count_brute_force, count_closed_form, count_duality, ClassCensus};
use pglcensus::congruence::{cycle_type_label, solution_count_formula, stabilizer_solutions};
use pglcensus::gale::io::{lambda_from_json, lambda_to_json, matrix_from_json, matrix_to_json};
use pglcensus::gale::{
    associated_generator, association_check, block_expand, find_association_lambda, gale_transform, identity_orbit,
    AssociationWitness,
};
use pglcensus::residue::PrimeModulus;
use pglcensus::subgroup::{parse_residues, DiagonalSubgroup, IdVector};
use pglcensus::Error;

#[derive(Parser)]
#[command(name = "pglcensus", version, about = "Conjugacy classes of cyclic subgroups of prime order in PGL(k+1, C)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count conjugacy classes of admissible subgroups of order p in PGL(k+1).
    Count {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        p: u64,
        #[arg(long, value_enum, default_value_t = CountMethod::Auto)]
        method: CountMethod,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// List every class with its representative and stabilizer.
    Classify {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        p: u64,
    },
    /// Stabilizer of one subgroup, given by a comma-separated exponent vector.
    Stabilizer {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        vector: String,
    },
    /// Identifying vectors fixed by a permutation in cycle notation.
    Solve {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        perm: String,
    },
    /// Generator whose orbit is associated with the orbit of the vector.
    Associate {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        vector: String,
    },
    /// Associate l orbits of the vector with l orbits of one generator.
    BlockExpand {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        vector: String,
        #[arg(long)]
        l: usize,
    },
    /// Association tools on matrix files.
    Gale {
        #[command(subcommand)]
        op: GaleOp,
    },
    /// Reproduce a reference table as CSV.
    Tables {
        #[arg(long, value_enum)]
        which: tables::Table,
    },
    /// Closed forms against brute force, plus association checks.
    Verify {
        #[arg(long, default_value_t = 31)]
        max_p: u64,
        #[arg(long, default_value_t = 5)]
        max_k: usize,
    },
}

#[derive(Subcommand)]
enum GaleOp {
    /// Decide association, with a given witness or by solving for one.
    Check {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long)]
        lambda: Option<PathBuf>,
    },
    /// Print the associated point set as a matrix file.
    Transform {
        #[arg(long)]
        a: PathBuf,
    },
    /// Print a witness file, if the point sets are associated.
    Lambda {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CountMethod {
    Auto,
    Closed,
    Brute,
    Duality,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

enum Failure {
    Negative(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

type Outcome = Result<String, Failure>;

/// Standard record: command, parameters, method, then the payload's own keys.
fn record(command: &str, parameters: Value, method: &str, payload: Value) -> Value {
    let mut out = Map::new();
    out.insert("command".into(), json!(command));
    out.insert("parameters".into(), parameters);
    out.insert("method".into(), json!(method));
    match payload {
        Value::Object(m) => out.extend(m),
        other => {
            out.insert("result".into(), other);
        }
    }
    Value::Object(out)
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("values serialize") + "\n"
}

fn prime(p: u64) -> Result<PrimeModulus, Failure> {
    Ok(PrimeModulus::new(p)?)
}

fn id_vector(s: &str, p: PrimeModulus) -> Result<IdVector, Failure> {
    Ok(IdVector::new(parse_residues(s, p)?, p)?)
}

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Domain(format!("cannot read {}: {e}", path.display())))
}

fn census_count(k: usize, p: PrimeModulus, method: CountMethod) -> Result<ClassCensus, Error> {
    match method {
        CountMethod::Closed => count_closed_form(k, p),
        CountMethod::Brute => count_brute_force(k, p),
        CountMethod::Duality => count_duality(k, p),
        CountMethod::Auto => {
            if (2..=5).contains(&k) && p.get() as usize >= k + 1 {
                count_closed_form(k, p)
            } else {
                count_duality(k, p).or_else(|_| count_brute_force(k, p))
            }
        }
    }
}

fn cmd_count(k: usize, p: u64, method: CountMethod, format: Format) -> Outcome {
    let c = census_count(k, prime(p)?, method)?;
    Ok(match format {
        Format::Json => pretty(&record("count", json!({"k": k, "p": p}), c.method.as_str(), json!(c))),
        Format::Csv => {
            let mut s = String::from("label,classes,m_H\n");
            for r in &c.breakdown {
                s += &format!("{},{},{}\n", r.label, r.classes, r.orbit);
            }
            s + &format!("total,{},\n", c.total)
        }
        Format::Text => {
            let mut s = format!("k={k} p={p} method={} total={}\n", c.method.as_str(), c.total);
            for r in &c.breakdown {
                s += &format!("  {:<24} classes={:<6} m_H={}\n", r.label, r.classes, r.orbit);
            }
            s
        }
    })
}

fn cmd_classify(k: usize, p: u64) -> Outcome {
    let reports = action::classify(k, prime(p)?)?;
    Ok(pretty(&record("classify", json!({"k": k, "p": p}), "brute_force", json!({ "classes": reports }))))
}

fn cmd_stabilizer(k: usize, p: u64, vector: &str) -> Outcome {
    let q = prime(p)?;
    let v = parse_residues(vector, q)?;
    if v.len() != k + 1 {
        return Err(Failure::Domain(format!("vector has {} entries, expected k+1 = {}", v.len(), k + 1)));
    }
    let g = DiagonalSubgroup::from_vector(&v, q)?;
    let r = action::report(&g);
    Ok(pretty(&record(
        "stabilizer",
        json!({"k": k, "p": p, "vector": vector}),
        "fiber_construction",
        json!(r),
    )))
}

fn cmd_solve(k: usize, p: u64, perm: &str) -> Outcome {
    let q = prime(p)?;
    let sigma = Permutation::parse(perm, k + 1)?;
    let sols = stabilizer_solutions(&sigma, k, q)?;
    let label = cycle_type_label(&sigma);
    let formula = solution_count_formula(&label, k, q).ok().flatten();
    let mut payload = json!(sols);
    payload["count"] = json!(sols.solutions.len());
    payload["cycle_type"] = json!(label);
    payload["formula"] = json!(formula);
    Ok(pretty(&record("solve", json!({"k": k, "p": p, "perm": perm}), "enumeration_and_linear_systems", payload)))
}

fn cmd_associate(p: u64, vector: &str) -> Outcome {
    let q = prime(p)?;
    let h = id_vector(vector, q)?;
    let gen = associated_generator(&h)?;
    let a = identity_orbit(h.entries(), q)?;
    let b = identity_orbit(&gen, q)?;
    let ok = association_check(&a, &b, &AssociationWitness::identity(a.field(), p as usize))?;
    let out = pretty(&record(
        "associate",
        json!({"p": p, "vector": vector}),
        "negated_complement",
        json!({"generator": gen, "associated": ok}),
    ));
    if ok {
        Ok(out)
    } else {
        Err(Failure::Negative(out))
    }
}

fn cmd_block_expand(p: u64, vector: &str, l: usize) -> Outcome {
    let q = prime(p)?;
    let h = id_vector(vector, q)?;
    let e = block_expand(&h, l)?;
    let (s, t) = (e.source_points()?, e.target_points()?);
    let ok = association_check(&s, &t, &AssociationWitness::identity(s.field(), s.ncols()))?;
    let out = pretty(&record(
        "block-expand",
        json!({"p": p, "vector": vector, "l": l}),
        "block_expansion",
        json!({
            "generator": e.generator,
            "t": e.t,
            "u": e.u,
            "source_base_points": e.source_seeds,
            "target_base_points": e.target_seeds,
            "associated": ok,
        }),
    ));
    if ok {
        Ok(out)
    } else {
        Err(Failure::Negative(out))
    }
}

fn cmd_gale(op: &GaleOp) -> Outcome {
    match op {
        GaleOp::Check { a, b, lambda } => {
            let (ma, mb) = (matrix_from_json(&read_file(a)?)?, matrix_from_json(&read_file(b)?)?);
            let params = json!({"a": a, "b": b, "lambda": lambda});
            let (ok, witness, method) = match lambda {
                Some(path) => {
                    let w = lambda_from_json(&read_file(path)?)?;
                    (association_check(&ma, &mb, &w)?, Some(w), "given_lambda")
                }
                None => {
                    let w = find_association_lambda(&ma, &mb)?;
                    (w.is_some(), w, "nullspace")
                }
            };
            let lam = witness.as_ref().map(|w| lambda_to_json(w)["lambda"].clone());
            let out = pretty(&record("gale check", params, method, json!({"associated": ok, "lambda": lam})));
            if ok {
                Ok(out)
            } else {
                Err(Failure::Negative(out))
            }
        }
        GaleOp::Transform { a } => {
            let m = matrix_from_json(&read_file(a)?)?;
            let g = gale_transform(&m)?;
            Ok(pretty(&record("gale transform", json!({"a": a}), "normal_form", matrix_to_json(&g))))
        }
        GaleOp::Lambda { a, b } => {
            let (ma, mb) = (matrix_from_json(&read_file(a)?)?, matrix_from_json(&read_file(b)?)?);
            let params = json!({"a": a, "b": b});
            match find_association_lambda(&ma, &mb)? {
                Some(w) => Ok(pretty(&record("gale lambda", params, "nullspace", lambda_to_json(&w)))),
                None => Err(Failure::Negative(pretty(&record(
                    "gale lambda",
                    params,
                    "nullspace",
                    json!({"associated": false}),
                )))),
            }
        }
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Count { k, p, method, format } => cmd_count(k, p, method, format),
        Command::Classify { k, p } => cmd_classify(k, p),
        Command::Stabilizer { k, p, vector } => cmd_stabilizer(k, p, &vector),
        Command::Solve { k, p, perm } => cmd_solve(k, p, &perm),
        Command::Associate { p, vector } => cmd_associate(p, &vector),
        Command::BlockExpand { p, vector, l } => cmd_block_expand(p, &vector, l),
        Command::Gale { op } => cmd_gale(&op),
        Command::Tables { which } => Ok(tables::render(which)?),
        Command::Verify { max_p, max_k } => verify::run(max_p, max_k),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 64 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Negative(out)) => {
            print!("{out}");
            ExitCode::from(1)
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
