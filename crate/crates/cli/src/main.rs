use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use nsmacd::bruhat;
use nsmacd::fillings::{enumerate_nonattacking, support_by_enumeration};
use nsmacd::geometry;
use nsmacd::macdonald::{self, HhlStatistics, QTParams};
use nsmacd::verify::{run_sweep, SweepConfig};
use nsmacd::{Composition, PointSet, WeightVector};

const EXIT_USAGE: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_ASSERTION: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "nsmacd", version, about = "Supports, coefficients and polytopes of non-symmetric Macdonald polynomials")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true, env = "NSMACD_THREADS")]
    threads: Option<usize>,

    /// Write JSON here instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Mu {
    /// Comma-separated integer vector, e.g. 0,2,0 or -1,1,0.
    #[arg(long, allow_hyphen_values = true)]
    mu: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Support of E_mu, computed three ways and cross-checked.
    Support(Mu),
    /// Newton polytope of E_mu.
    Newton(Mu),
    /// Convex hull of the Bruhat lower ideal of mu.
    MomentPolytope(Mu),
    /// Elements of the Bruhat lower ideal of mu.
    BruhatIdeal {
        #[command(flatten)]
        mu: Mu,
        /// Also list every generating move.
        #[arg(long)]
        edges: bool,
    },
    /// Exchange-axiom, polyhedral and submodularity checks on a point set.
    MconvexCheck {
        /// JSON array of integer arrays, or @path to a file holding one.
        #[arg(long)]
        points: String,
    },
    /// Exact coefficients of E_mu at rational (q, t).
    Coeffs {
        #[command(flatten)]
        mu: Mu,
        #[arg(long, default_value = "1/2")]
        q: String,
        #[arg(long, default_value = "1/2")]
        t: String,
    },
    /// Non-attacking fillings of the diagram of a composition.
    Fillings(Mu),
    /// Step-by-step M-convexity certificate for the support of E_mu.
    Certify(Mu),
    /// Run every identity check over all small compositions.
    VerifyPaper {
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..))]
        max_n: u32,
        #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u32).range(1..))]
        max_weight: u32,
    },
}

enum Failure {
    Input(String),
    /// A structural identity failed; carries the output to dump.
    Assertion(String, Value),
}

impl From<nsmacd::Error> for Failure {
    fn from(e: nsmacd::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn parse_mu(s: &str) -> Result<WeightVector, Failure> {
    let entries: Result<Vec<i64>, _> = s.split(',').map(|x| x.trim().parse::<i64>()).collect();
    let entries = entries.map_err(|_| Failure::Input(format!("could not parse --mu {s:?}: expected comma-separated integers")))?;
    Ok(WeightVector::new(entries)?)
}

fn parse_composition(s: &str) -> Result<Composition, Failure> {
    Ok(parse_mu(s)?.to_composition()?)
}

fn parse_points(arg: &str) -> Result<PointSet, Failure> {
    let text = match arg.strip_prefix('@') {
        Some(path) => fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {path}: {e}")))?,
        None => arg.to_string(),
    };
    serde_json::from_str::<PointSet>(&text).map_err(|e| Failure::Input(format!("invalid --points: {e}")))
}

fn to_value<T: serde::Serialize + ?Sized>(x: &T) -> Value {
    serde_json::to_value(x).expect("serialisable")
}

fn support(mu: &WeightVector) -> Result<Value, Failure> {
    let (m, base) = mu.normalize();
    let recursive = macdonald::support_by_recursion(&base).map(|p| p.shift(m));
    let enumerated = support_by_enumeration(&base).map(|p| p.shift(m));
    let ideal = bruhat::ideal(mu).elements;
    let out = to_value(&recursive);
    if recursive != enumerated || recursive != ideal {
        return Err(Failure::Assertion(
            format!("support of E_{mu} differs between recursion, fillings and Bruhat ideal"),
            json!({ "recursion": out, "fillings": to_value(&enumerated), "bruhat_ideal": to_value(&ideal) }),
        ));
    }
    Ok(out)
}

fn mconvex_check(s: &PointSet) -> Result<Value, Failure> {
    let exchange = geometry::is_mconvex_exchange(s);
    let hull = geometry::convex_hull(s)?;
    let saturated = geometry::is_saturated(s)?;
    let gp = geometry::is_generalized_permutahedron(&hull);
    let geometric = geometry::is_mconvex_geometric(s);
    let submodular = geometry::support_function(s)?.is_submodular();
    let out = json!({
        "exchange": exchange,
        "geometric": geometric,
        "saturated": saturated,
        "generalized_permutahedron": gp,
        "submodular": submodular,
    });
    if exchange != geometric {
        return Err(Failure::Assertion("exchange axiom and polyhedral definition disagree".into(), out));
    }
    if exchange && !submodular {
        return Err(Failure::Assertion("M-convex set with a non-submodular support function".into(), out));
    }
    Ok(out)
}

fn execute(command: &Command) -> Result<Value, Failure> {
    match command {
        Command::Support(a) => support(&parse_mu(&a.mu)?),
        Command::Newton(a) => {
            let mu = parse_mu(&a.mu)?;
            let p = macdonald::newton_polytope(&mu);
            if !geometry::is_generalized_permutahedron(&p) {
                return Err(Failure::Assertion(format!("Newton polytope of E_{mu} has an edge off the root directions"), to_value(&p)));
            }
            Ok(to_value(&p))
        }
        Command::MomentPolytope(a) => {
            let mu = parse_mu(&a.mu)?;
            let p = macdonald::moment_polytope(&mu);
            let newton = macdonald::newton_polytope(&mu);
            if !geometry::is_generalized_permutahedron(&p) || p.vertices() != newton.vertices() {
                return Err(Failure::Assertion(
                    format!("moment polytope of {mu} is not the generalized permutahedron Newton(E_mu)"),
                    json!({ "moment": to_value(&p), "newton": to_value(&newton) }),
                ));
            }
            Ok(to_value(&p))
        }
        Command::BruhatIdeal { mu, edges } => {
            let mu = parse_mu(&mu.mu)?;
            Ok(if *edges {
                to_value(&bruhat::ideal_with_edges(&mu))
            } else {
                to_value(&bruhat::ideal(&mu).elements)
            })
        }
        Command::MconvexCheck { points } => mconvex_check(&parse_points(points)?),
        Command::Coeffs { mu, q, t } => {
            let mu = parse_mu(&mu.mu)?;
            let params = QTParams::parse(q, t)?;
            let p = macdonald::polynomial(&mu, &params, &HhlStatistics);
            if p.support() != macdonald::support(&mu) {
                return Err(Failure::Assertion(format!("exponents of E_{mu} differ from its support"), to_value(&p)));
            }
            Ok(to_value(&p))
        }
        Command::Fillings(a) => Ok(to_value(&enumerate_nonattacking(&parse_composition(&a.mu)?))),
        Command::Certify(a) => {
            let mu = parse_mu(&a.mu)?;
            let (m, base) = mu.normalize();
            match macdonald::certify_mconvex(&base) {
                Ok(cert) => Ok(json!({ "shift": m, "certificate": to_value(&cert) })),
                Err(e) => Err(Failure::Assertion(e.to_string(), json!({ "mu": to_value(&mu) }))),
            }
        }
        Command::VerifyPaper { max_n, max_weight } => {
            let report = run_sweep(&SweepConfig::new(*max_n as usize, *max_weight as usize));
            let out = to_value(&report);
            if !report.all_passed() {
                let failing: Vec<&str> = report.checks.iter().filter(|c| !c.ok()).map(|c| c.name).collect();
                return Err(Failure::Assertion(format!("failing checks: {}", failing.join(", ")), out));
            }
            Ok(out)
        }
    }
}

fn emit(value: &Value, output: Option<&PathBuf>) -> Result<(), String> {
    let mut text = serde_json::to_string(value).expect("serialisable");
    text.push('\n');
    match output {
        Some(path) => fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| format!("cannot write output: {e}")),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: cannot start {threads} worker threads: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    match execute(&cli.command) {
        Ok(value) => match emit(&value, cli.output.as_ref()) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(EXIT_INPUT)
            }
        },
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
        Err(Failure::Assertion(msg, witness)) => {
            eprintln!("assertion failed: {msg}");
            let _ = emit(&witness, cli.output.as_ref());
            ExitCode::from(EXIT_ASSERTION)
        }
    }
}
