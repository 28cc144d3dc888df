mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use bracketdiag::diagrams::bidegree;
use bracketdiag::free_superalgebra::parse_combination;
use bracketdiag::operations::weight_parity;
use bracketdiag::verify::{run, Limits, Suite};
use bracketdiag::{
    chord_bialgebra, format_element, Coefficients, DiagramComplex, DiagramHopf, Element, HomologyGroup, Operad,
    BigInt, OperadKind, Parity, Variant,
};
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Value};

use output::{Format, Report};

/// Environment variable fixing the size of the worker pool.
const THREADS_VAR: &str = "BRACKETDIAG_THREADS";

#[derive(Parser)]
#[command(name = "bracketdiag", version, about = "Bracket-diagram complexes, their Hopf algebras, operads and homology")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value = "text")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Space {
    /// b, bstar, b0, gen-b or gen-bstar.
    #[arg(long, default_value = "b", value_parser = parse_variant)]
    variant: Variant,
    /// Parity of the ambient dimension: even or odd.
    #[arg(long, default_value = "even", value_parser = parse_parity)]
    parity: Parity,
}

#[derive(Subcommand)]
enum Command {
    /// List the basis diagrams of one bidegree, or the diagrams of a basis file.
    Enumerate {
        #[command(flatten)]
        space: Space,
        #[arg(long, default_value_t = 0)]
        i: usize,
        #[arg(long, default_value_t = 0)]
        j: usize,
        /// Newline-separated diagram expressions to read instead.
        #[arg(long)]
        basis: Option<PathBuf>,
    },
    /// Boundary of a diagram expression.
    Boundary {
        #[command(flatten)]
        space: Space,
        /// Diagram expression, e.g. "[[1,2],3]" or "[1,3]^[2,4] - [1,2]^[3,4]".
        #[arg(long)]
        expr: String,
    },
    /// Boundary matrix from (i, j) to (i, j+1); rows are target basis elements.
    Matrix {
        #[command(flatten)]
        space: Space,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        j: usize,
        /// Basis file for (i, j), replacing the enumeration order.
        #[arg(long)]
        source: Option<PathBuf>,
        /// Basis file for (i, j+1).
        #[arg(long)]
        target: Option<PathBuf>,
    },
    /// Homology table for i <= i-max.
    Homology {
        #[command(flatten)]
        space: Space,
        #[arg(long, default_value_t = 3)]
        i_max: usize,
        /// Largest j (default: the top of each complexity, 2i or 2i+2 for generalized diagrams).
        #[arg(long)]
        j_max: Option<usize>,
        /// z, q, or a prime p.
        #[arg(long, default_value = "z", value_parser = parse_coefficients)]
        coefficients: Coefficients,
        /// Stop starting new bidegrees after this many seconds; output is flagged partial.
        #[arg(long)]
        time_budget: Option<f64>,
    },
    /// Run a verification suite; exits with status 1 if any check fails.
    Verify {
        #[arg(long, value_parser = parse_suite)]
        suite: Suite,
        /// Largest complexity (default depends on the suite).
        #[arg(long)]
        complexity: Option<usize>,
        /// Largest total arity for the operad suite.
        #[arg(long)]
        arity: Option<usize>,
        #[arg(long)]
        random_cases: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Projection onto primitive elements (over the rationals).
    PrimitiveProjection {
        #[command(flatten)]
        space: Space,
        #[arg(long)]
        expr: String,
    },
    /// Antipode of a diagram expression.
    Antipode {
        #[command(flatten)]
        space: Space,
        #[arg(long)]
        expr: String,
    },
    /// Homology of the Hochschild complex of an operad.
    OperadHomology {
        /// poisson, gerstenhaber or bv.
        #[arg(long, value_parser = parse_kind)]
        kind: OperadKind,
        #[arg(long, default_value_t = 4)]
        arity_max: usize,
        #[arg(long, default_value_t = 3)]
        i_max: usize,
    },
    /// Dimensions and primitive dimensions of chord-diagram bialgebras.
    Chord {
        #[arg(long, default_value = "odd", value_parser = parse_parity)]
        parity: Parity,
        /// Largest number of chords.
        #[arg(long, default_value_t = 5)]
        max: usize,
        /// Also quotient by diagrams with an isolated chord.
        #[arg(long)]
        one_term: bool,
    },
}

fn parse_variant(s: &str) -> Result<Variant, String> {
    Variant::parse(s).ok_or_else(|| format!("unknown variant '{s}' (b, bstar, b0, gen-b, gen-bstar)"))
}

fn parse_parity(s: &str) -> Result<Parity, String> {
    match s {
        "even" => Ok(Parity::Even),
        "odd" => Ok(Parity::Odd),
        _ => Err(format!("unknown parity '{s}' (even, odd)")),
    }
}

fn parse_coefficients(s: &str) -> Result<Coefficients, String> {
    match s {
        "z" | "Z" => Ok(Coefficients::Integers),
        "q" | "Q" => Ok(Coefficients::Rationals),
        _ => {
            let p: u64 = s.parse().map_err(|_| format!("coefficients must be z, q or a prime, got '{s}'"))?;
            if p < 2 || (2..p).take_while(|d| d * d <= p).any(|d| p % d == 0) {
                return Err(format!("{p} is not prime"));
            }
            Ok(Coefficients::Prime(p))
        }
    }
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    Suite::parse(s).ok_or_else(|| {
        let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
        format!("unknown suite '{s}' ({})", names.join(", "))
    })
}

fn parse_kind(s: &str) -> Result<OperadKind, String> {
    OperadKind::parse(s).ok_or_else(|| format!("unknown operad '{s}' (poisson, gerstenhaber, bv)"))
}

enum Failure {
    /// Bad input: exit status 2.
    Config(String),
    /// A verification failed: exit status 1, after printing the report.
    Verification(Report),
}

fn config<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Config(e.to_string())
}

fn int(c: &BigInt) -> Value {
    match i64::try_from(c) {
        Ok(v) => json!(v),
        Err(_) => json!(c.to_string()),
    }
}

fn coefficients_name(c: Coefficients) -> String {
    match c {
        Coefficients::Integers => "z".into(),
        Coefficients::Rationals => "q".into(),
        Coefficients::Prime(p) => p.to_string(),
    }
}

fn parse_expr(text: &str, parity: Parity) -> Result<Element<BigInt>, Failure> {
    parse_combination(text, parity).map_err(|e| Failure::Config(format!("'{text}': {e}")))
}

/// Nonempty lines of a basis file that are not `#` comments.
fn read_basis(path: &Path, space: &Space) -> Result<Vec<(String, Element<BigInt>)>, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Config(format!("{}: {e}", path.display())))?;
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let e = parse_combination(line, space.parity)
            .map_err(|e| Failure::Config(format!("{}:{}: {e}", path.display(), n + 1)))?;
        if e.is_zero() {
            return Err(Failure::Config(format!("{}:{}: expression is zero", path.display(), n + 1)));
        }
        for (m, _) in e.iter() {
            if !bracketdiag::diagrams::belongs(m, space.variant) {
                return Err(Failure::Config(format!(
                    "{}:{}: not a {} diagram",
                    path.display(),
                    n + 1,
                    space.variant
                )));
            }
        }
        out.push((line.to_string(), e));
    }
    Ok(out)
}

fn element_report(e: &Element<BigInt>, parity: Parity, what: &str) -> Report {
    let terms: Vec<Value> = e
        .iter()
        .map(|(m, c)| json!({"diagram": format_element(&Element::<BigInt>::from_monomial(m.clone()), parity), "coefficient": int(c)}))
        .collect();
    let rows = e
        .iter()
        .map(|(m, c)| vec![c.to_string(), format_element(&Element::<BigInt>::from_monomial(m.clone()), parity)])
        .collect();
    let mut r = Report::new(json!({ what: format_element(e, parity), "terms": terms }), &["coefficient", "diagram"], rows);
    r.notes.push(format!("{what} = {}", format_element(e, parity)));
    r
}

fn enumerate(space: &Space, i: usize, j: usize, basis: Option<&Path>) -> Result<Report, Failure> {
    let items: Vec<(String, bracketdiag::Monomial, i64)> = match basis {
        Some(path) => read_basis(path, space)?
            .into_iter()
            .map(|(text, e)| {
                let (m, c) = e.iter().next().map(|(m, c)| (m.clone(), i64::try_from(c).unwrap_or(1))).unwrap();
                (text, m, c)
            })
            .collect(),
        None => DiagramComplex::new(space.variant, space.parity)
            .basis(i, j)
            .into_iter()
            .map(|m| (format_element(&Element::<BigInt>::from_monomial(m.clone()), space.parity), m, 1))
            .collect(),
    };
    let mut rows = Vec::new();
    let mut list = Vec::new();
    for (k, (text, m, _)) in items.iter().enumerate() {
        let (bi, bj) = bidegree(m);
        let p = weight_parity(m, space.parity);
        rows.push(vec![k.to_string(), text.clone(), bi.to_string(), bj.to_string(), p.to_string()]);
        list.push(json!({"index": k, "diagram": text, "i": bi, "j": bj, "weight_parity": p}));
    }
    let mut r = Report::new(
        json!({"variant": space.variant, "parity": space.parity, "count": items.len(), "diagrams": list}),
        &["index", "diagram", "i", "j", "weight_parity"],
        rows,
    );
    r.notes.push(format!("{} diagrams", items.len()));
    Ok(r)
}

fn matrix(space: &Space, i: usize, j: usize, source: Option<&Path>, target: Option<&Path>) -> Result<Report, Failure> {
    let c = DiagramComplex::new(space.variant, space.parity);
    let standard = |jj: usize| -> Vec<(String, Element<BigInt>)> {
        c.basis(i, jj)
            .into_iter()
            .map(|m| {
                let e = Element::from_monomial(m);
                (format_element(&e, space.parity), e)
            })
            .collect()
    };
    let src = match source {
        Some(p) => read_basis(p, space)?,
        None => standard(j),
    };
    let tgt = match target {
        Some(p) => read_basis(p, space)?,
        None => standard(j + 1),
    };
    let src_el: Vec<Element<BigInt>> = src.iter().map(|(_, e)| e.clone()).collect();
    let tgt_el: Vec<Element<BigInt>> = tgt.iter().map(|(_, e)| e.clone()).collect();
    let m = c.boundary_matrix_in(i, j, &src_el, &tgt_el).map_err(config)?;
    let mut headers: Vec<String> = vec!["target".into()];
    headers.extend(src.iter().map(|(t, _)| t.clone()));
    let rows: Vec<Vec<String>> = m
        .iter()
        .zip(&tgt)
        .map(|(row, (t, _))| std::iter::once(t.clone()).chain(row.iter().map(|x| x.to_string())).collect())
        .collect();
    let json_rows: Vec<Vec<Value>> = m.iter().map(|r| r.iter().map(int).collect()).collect();
    let mut r = Report::new(
        json!({
            "variant": space.variant, "parity": space.parity, "i": i, "j": j,
            "source": src.iter().map(|(t, _)| t).collect::<Vec<_>>(),
            "target": tgt.iter().map(|(t, _)| t).collect::<Vec<_>>(),
            "matrix": json_rows,
        }),
        &[],
        rows,
    );
    r.headers = headers;
    Ok(r)
}

fn group_json(h: &HomologyGroup) -> Value {
    Value::Array(h.torsion.iter().map(int).collect())
}

fn homology(space: &Space, i_max: usize, j_max: Option<usize>, coeffs: Coefficients, budget: Option<f64>) -> Report {
    let c = DiagramComplex::new(space.variant, space.parity);
    let top = |i: usize| c.j_max(i).unwrap_or(2 * i + 2);
    let jobs: Vec<(usize, usize)> = (0..=i_max)
        .flat_map(|i| (0..=j_max.map_or(top(i), |m| m.min(top(i)))).map(move |j| (i, j)))
        .collect();
    let start = Instant::now();
    let deadline = budget.map(Duration::from_secs_f64);
    let results: Vec<Option<(usize, HomologyGroup)>> = jobs
        .par_iter()
        .map(|&(i, j)| {
            if deadline.is_some_and(|d| start.elapsed() > d) {
                return None;
            }
            Some((c.dimension(i, j), c.homology(i, j, coeffs)))
        })
        .collect();
    let partial = results.iter().any(Option::is_none);
    let mut rows = Vec::new();
    let mut records = Vec::new();
    for (&(i, j), r) in jobs.iter().zip(&results) {
        let Some((dim, h)) = r else { continue };
        let torsion: Vec<String> = h.torsion.iter().map(|t| t.to_string()).collect();
        rows.push(vec![i.to_string(), j.to_string(), dim.to_string(), h.rank.to_string(), torsion.join(" "), h.to_string()]);
        records.push(json!({
            "variant": space.variant, "parity": space.parity, "i": i, "j": j,
            "dimension": dim, "rank": h.rank, "torsion": group_json(h),
        }));
    }
    let mut r = Report::new(
        json!({"coefficients": coefficients_name(coeffs), "partial": partial, "bidegrees": records}),
        &["i", "j", "dimension", "rank", "torsion", "group"],
        rows,
    );
    if partial {
        r.notes.push("time budget exceeded: output is partial".into());
    }
    r
}

fn verify(suite: Suite, limits: Limits) -> Result<Report, Failure> {
    let report = run(suite, limits);
    let rows = report
        .checks
        .iter()
        .map(|c| {
            vec![
                if c.passed() { "PASS" } else { "FAIL" }.to_string(),
                c.name.clone(),
                c.cases.to_string(),
                c.failures.to_string(),
                c.detail.clone(),
            ]
        })
        .collect();
    let mut r = Report::new(serde_json::to_value(&report).expect("serializable"), &["status", "check", "cases", "failures", "detail"], rows);
    if suite == Suite::Homotopy {
        r.notes.push("insertion homotopy for bstar odd: unsupported (its homology product is not supercommutative)".into());
    }
    if report.passed() {
        Ok(r)
    } else {
        Err(Failure::Verification(r))
    }
}

fn rational_report(e: &Element<bracketdiag::BigRational>, parity: Parity, what: &str) -> Report {
    let terms: Vec<Value> = e
        .iter()
        .map(|(m, c)| json!({"diagram": format_element(&Element::<BigInt>::from_monomial(m.clone()), parity), "coefficient": c.to_string()}))
        .collect();
    let rows = e
        .iter()
        .map(|(m, c)| vec![c.to_string(), format_element(&Element::<BigInt>::from_monomial(m.clone()), parity)])
        .collect();
    let mut r = Report::new(json!({ what: format_element(e, parity), "terms": terms }), &["coefficient", "diagram"], rows);
    r.notes.push(format!("{what} = {}", format_element(e, parity)));
    r
}

fn hopf_for(space: &Space) -> Result<DiagramHopf, Failure> {
    match space.variant {
        Variant::B | Variant::BStar | Variant::B0 => Ok(DiagramHopf::new(space.variant, space.parity)),
        v => Err(Failure::Config(format!("no Hopf structure on {v}; use b, bstar or b0"))),
    }
}

fn operad_homology(kind: OperadKind, arity_max: usize, i_max: usize) -> Report {
    let o = Operad::new(kind);
    let jobs: Vec<(usize, usize)> = (0..=i_max).flat_map(|i| (0..=arity_max).map(move |n| (i, n))).collect();
    let results: Vec<(usize, HomologyGroup)> = jobs
        .par_iter()
        .map(|&(i, n)| (o.basis_at(i, n).len(), o.homology(i, n, Coefficients::Integers)))
        .collect();
    let mut rows = Vec::new();
    let mut records = Vec::new();
    for (&(i, n), (dim, h)) in jobs.iter().zip(&results) {
        rows.push(vec![i.to_string(), n.to_string(), dim.to_string(), h.rank.to_string(), h.to_string()]);
        records.push(json!({"kind": kind, "i": i, "arity": n, "dimension": dim, "rank": h.rank, "torsion": group_json(h)}));
    }
    Report::new(json!({"kind": kind, "bidegrees": records}), &["i", "arity", "dimension", "rank", "group"], rows)
}

fn chord(parity: Parity, max: usize, one_term: bool) -> Report {
    let dims = chord_bialgebra(parity, one_term, max);
    let rows = dims
        .iter()
        .map(|d| vec![d.complexity.to_string(), d.diagrams.to_string(), d.dimension.to_string(), d.primitive.to_string()])
        .collect();
    Report::new(
        json!({"parity": parity, "one_term": one_term, "graded": dims}),
        &["chords", "diagrams", "dimension", "primitive"],
        rows,
    )
}

fn execute(command: Command) -> Result<Report, Failure> {
    match command {
        Command::Enumerate { space, i, j, basis } => enumerate(&space, i, j, basis.as_deref()),
        Command::Boundary { space, expr } => {
            let e = parse_expr(&expr, space.parity)?;
            let c = DiagramComplex::new(space.variant, space.parity);
            for (m, _) in e.iter() {
                if !bracketdiag::diagrams::belongs(m, space.variant) {
                    return Err(Failure::Config(format!("'{expr}' is not a {} element", space.variant)));
                }
            }
            Ok(element_report(&c.boundary(&e), space.parity, "boundary"))
        }
        Command::Matrix { space, i, j, source, target } => matrix(&space, i, j, source.as_deref(), target.as_deref()),
        Command::Homology { space, i_max, j_max, coefficients, time_budget } => {
            if time_budget.is_some_and(|b| !(b > 0.0)) {
                return Err(Failure::Config("time budget must be positive".into()));
            }
            Ok(homology(&space, i_max, j_max, coefficients, time_budget))
        }
        Command::Verify { suite, complexity, arity, random_cases, seed } => {
            let d = suite.default_limits();
            verify(
                suite,
                Limits {
                    complexity: complexity.unwrap_or(d.complexity),
                    arity: arity.unwrap_or(d.arity),
                    random_cases: random_cases.unwrap_or(d.random_cases),
                    seed: seed.unwrap_or(d.seed),
                },
            )
        }
        Command::PrimitiveProjection { space, expr } => {
            let h = hopf_for(&space)?;
            let e = parse_expr(&expr, space.parity)?;
            Ok(rational_report(&h.primitive_projection(&e), space.parity, "projection"))
        }
        Command::Antipode { space, expr } => {
            let h = hopf_for(&space)?;
            let e = parse_expr(&expr, space.parity)?;
            Ok(element_report(&h.antipode(&e), space.parity, "antipode"))
        }
        Command::OperadHomology { kind, arity_max, i_max } => Ok(operad_homology(kind, arity_max, i_max)),
        Command::Chord { parity, max, one_term } => Ok(chord(parity, max, one_term)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Ok(v) = std::env::var(THREADS_VAR) {
        match v.parse::<usize>() {
            Ok(n) if n > 0 => {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
            _ => {
                eprintln!("error: {THREADS_VAR} must be a positive integer, got '{v}'");
                return ExitCode::from(2);
            }
        }
    }
    match execute(cli.command) {
        Ok(r) => {
            print!("{}", r.render(cli.format));
            ExitCode::SUCCESS
        }
        Err(Failure::Verification(r)) => {
            print!("{}", r.render(cli.format));
            ExitCode::from(1)
        }
        Err(Failure::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
