//! `majorize` command-line front end.
//!
//! Every invocation prints exactly one JSON document to stdout. Exit
//! codes: 0 the predicate holds / the construction succeeded, 1 the
//! predicate is false (not majorized, not a member, verification
//! failed), 2 usage or input error, 3 internal invariant breach.

mod commands;
mod jsonio;
mod verify;

use std::io::Read;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use jsonio::{error_report, print_report, Outcome};

pub const SCHEMA: &str = "majorize/1";

#[derive(Parser)]
#[command(
    name = "majorize",
    version,
    about = "Exact majorization toolkit",
    disable_help_subcommand = true
)]
pub struct Cli {
    /// Read one JSON request object {"command": "...", "options": {...}} from stdin.
    #[arg(long)]
    stdin: bool,
    /// Pretty-print the JSON output.
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Suppress the payload; print only schema, command, and status.
    #[arg(long, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    command: Option<Verb>,
}

#[derive(Subcommand)]
enum Verb {
    /// Majorization predicates and transfer chains.
    Major {
        #[command(subcommand)]
        op: MajorOp,
    },
    /// Monomial means.
    Mean {
        #[command(subcommand)]
        op: MeanOp,
    },
    /// Orbit hulls: membership, separation, matrix synthesis.
    Hull {
        #[command(subcommand)]
        op: HullOp,
    },
    /// Separation witnesses and converse probes.
    Rado {
        #[command(subcommand)]
        op: RadoOp,
    },
    /// Prefix-product dominance and the sum inequality.
    Multadd {
        #[command(subcommand)]
        op: MultaddOp,
    },
    /// Permutation group enumeration.
    Group {
        #[command(subcommand)]
        op: GroupOp,
    },
    /// Re-check previously emitted certificates.
    Verify {
        #[command(subcommand)]
        op: VerifyOp,
    },
}

#[derive(Subcommand)]
enum MajorOp {
    /// Decide whether --a majorizes --b.
    Check {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Build the strict majorization chain from --a down to --b.
    Chain {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
}

#[derive(Subcommand)]
enum MeanOp {
    /// Evaluate the G-symmetric mean of x^a.
    Eval {
        #[arg(long)]
        x: String,
        #[arg(long)]
        a: String,
        #[arg(long)]
        group: String,
        #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
        mode: ModeArg,
    },
    /// Compare [x^b]_G against [x^a]_G.
    Compare {
        #[arg(long)]
        x: String,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        group: String,
        #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
        mode: ModeArg,
        /// Relative tolerance for float-mode equality.
        #[arg(long, default_value_t = 1e-9)]
        rel_tol: f64,
        /// Absolute tolerance floor for float-mode equality.
        #[arg(long, default_value_t = 1e-12)]
        abs_tol: f64,
    },
}

#[derive(Subcommand)]
enum HullOp {
    /// Decide b in K_G(a); emit convex weights or a separation certificate.
    Member {
        #[arg(long)]
        b: String,
        #[arg(long)]
        a: String,
        #[arg(long)]
        group: String,
        /// Accept vectors outside the nonnegative octant.
        #[arg(long)]
        allow_negative: bool,
    },
    /// Synthesize the doubly stochastic S with b = S a and decompose it.
    Hlp {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
}

#[derive(Subcommand)]
enum RadoOp {
    /// Build the positive point reversing the mean inequality when b is outside K_G(a).
    Witness {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        group: String,
    },
    /// Probe with the constant vector (w,...,w).
    ProbeConstant {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        w: String,
    },
    /// Probe with the step vectors (w,..,w,1,..,1).
    ProbeSteps {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        w: String,
    },
}

#[derive(Subcommand)]
enum MultaddOp {
    /// Check prefix-product dominance and certify the strict sum inequality.
    Check {
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
    },
}

#[derive(Subcommand)]
enum GroupOp {
    /// Enumerate the subgroup generated by the given cycles.
    Enumerate {
        #[arg(long)]
        n: usize,
        /// Group spec: "S" for the full symmetric group, or cycles like
        /// "(1,2);(1,2,3)".
        #[arg(long)]
        group: String,
    },
}

#[derive(Subcommand)]
pub enum VerifyOp {
    /// Re-check a chain report (from `major chain`).
    Chain(VerifyInput),
    /// Re-check membership weights (from `hull member`).
    Member(VerifyInput),
    /// Re-check a separation certificate (from `hull member`).
    Separation(VerifyInput),
    /// Re-check a witness report (from `rado witness`).
    Witness(VerifyInput),
    /// Re-check a matrix synthesis report (from `hull hlp`).
    Hlp(VerifyInput),
}

#[derive(Args)]
pub struct VerifyInput {
    /// Path of the report to verify; standard input when omitted.
    #[arg(long)]
    file: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exact,
    Float,
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    ExitCode::from(run(argv))
}

fn run(mut argv: Vec<String>) -> u8 {
    // Stdin mode: synthesize argv from one JSON request object.
    if argv.iter().skip(1).any(|a| a == "--stdin") {
        match stdin_request(&argv) {
            Ok(expanded) => argv = expanded,
            Err(message) => {
                let pretty = argv.iter().any(|a| a == "--pretty");
                print_report(error_report("request", &message), pretty, false);
                return 2;
            }
        }
    }

    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(err) => {
            if matches!(
                err.kind(),
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion
            ) {
                print!("{err}");
                return 0;
            }
            print_report(error_report("usage", &err.to_string()), false, false);
            return 2;
        }
    };
    let pretty = cli.pretty;
    let quiet = cli.quiet;

    let Some(command) = cli.command else {
        print_report(error_report("usage", "missing command"), pretty, quiet);
        return 2;
    };

    let outcome = dispatch(command);
    match outcome {
        Ok(report) => {
            let code = report.exit_code();
            print_report(report, pretty, quiet);
            code
        }
        Err(err) => {
            let code = if err.is_internal() { 3 } else { 2 };
            print_report(error_report("input", &err.to_string()), pretty, quiet);
            code
        }
    }
}

fn dispatch(verb: Verb) -> majorize::Result<Outcome> {
    match verb {
        Verb::Major { op } => match op {
            MajorOp::Check { a, b } => commands::major_check(&a, &b),
            MajorOp::Chain { a, b } => commands::major_chain(&a, &b),
        },
        Verb::Mean { op } => match op {
            MeanOp::Eval { x, a, group, mode } => commands::mean_eval(&x, &a, &group, mode),
            MeanOp::Compare {
                x,
                a,
                b,
                group,
                mode,
                rel_tol,
                abs_tol,
            } => commands::mean_compare(&x, &a, &b, &group, mode, rel_tol, abs_tol),
        },
        Verb::Hull { op } => match op {
            HullOp::Member {
                b,
                a,
                group,
                allow_negative,
            } => commands::hull_member(&b, &a, &group, allow_negative),
            HullOp::Hlp { a, b } => commands::hull_hlp(&a, &b),
        },
        Verb::Rado { op } => match op {
            RadoOp::Witness { a, b, group } => commands::rado_witness(&a, &b, &group),
            RadoOp::ProbeConstant { a, b, w } => commands::rado_probe_constant(&a, &b, &w),
            RadoOp::ProbeSteps { a, b, w } => commands::rado_probe_steps(&a, &b, &w),
        },
        Verb::Multadd { op } => match op {
            MultaddOp::Check { u, v } => commands::multadd_check(&u, &v),
        },
        Verb::Group { op } => match op {
            GroupOp::Enumerate { n, group } => commands::group_enumerate(n, &group),
        },
        Verb::Verify { op } => verify::dispatch(op),
    }
}

fn stdin_request(argv: &[String]) -> Result<Vec<String>, String> {
    let mut text = String::new();
    std::io::stdin()
        .read_to_string(&mut text)
        .map_err(|e| format!("cannot read stdin: {e}"))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| format!("bad request JSON: {e}"))?;
    let object = value
        .as_object()
        .ok_or_else(|| "request must be a JSON object".to_string())?;
    let command = object
        .get("command")
        .and_then(|c| c.as_str())
        .ok_or_else(|| "request needs a \"command\" string".to_string())?;

    let mut out: Vec<String> = vec![argv[0].clone()];
    out.extend(command.split_whitespace().map(str::to_string));
    if let Some(options) = object.get("options") {
        let options = options
            .as_object()
            .ok_or_else(|| "\"options\" must be an object".to_string())?;
        for (key, value) in options {
            match value {
                serde_json::Value::Bool(true) => out.push(format!("--{key}")),
                serde_json::Value::Bool(false) => {}
                serde_json::Value::String(s) => {
                    out.push(format!("--{key}"));
                    out.push(s.clone());
                }
                other => {
                    out.push(format!("--{key}"));
                    out.push(other.to_string());
                }
            }
        }
    }
    // Preserve output flags given on the real command line.
    for flag in ["--pretty", "--quiet"] {
        if argv.iter().any(|a| a == flag) {
            out.push(flag.to_string());
        }
    }
    Ok(out)
}
