//! `ainfty`: command-line front end to the A∞ engine.

mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

#[derive(Parser, Debug)]
#[command(
    name = "ainfty",
    version,
    about = "Exact computations with finite A∞-categories"
)]
struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized candidate searches.
    #[arg(long, global = true, env = "AINFTY_SEED", default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
pub struct Input {
    /// Instance file, or the name of a bundled instance.
    pub instance: String,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the A∞ relations (and the order-t condition for deformations).
    Validate(Input),
    /// Cohomology category: hom dimensions, units and products.
    H0(Input),
    /// Cohomology of hom between two objects or twisted complexes.
    Hom {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        source: String,
        #[arg(long)]
        target: String,
    },
    /// Length-truncated Hochschild cohomology.
    Hh {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 2)]
        degree: i64,
        #[arg(long, default_value_t = 3)]
        length: usize,
    },
    /// Mapping cone of a named morphism.
    Cone {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        morphism: String,
    },
    /// Twist of an object along a spherical object.
    Twist {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        sphere: String,
        #[arg(long)]
        object: String,
        /// natural, reversed or seeded
        #[arg(long, default_value = "natural")]
        pivot: String,
    },
    /// Search for a quasi-isomorphism.
    QuasiIso {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        source: String,
        #[arg(long)]
        target: String,
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
    },
    /// Split idempotents of a twisted complex in H⁰.
    Karoubi {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        complex: String,
        /// Named idempotent; without it, small idempotent candidates are split.
        #[arg(long)]
        idempotent: Option<String>,
    },
    /// Build a target from generators by shifts, cones and splittings.
    Generate {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        target: String,
        #[arg(long, value_delimiter = ',')]
        generators: Vec<String>,
        #[arg(long, default_value_t = 2)]
        depth: usize,
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
    },
    /// Validate a deformation over Q[t]/t^N.
    DeformValidate(Input),
    /// Solve the Maurer–Cartan equation order by order.
    McSolve {
        #[command(flatten)]
        input: Input,
        /// Object to solve for; all objects when omitted.
        #[arg(long)]
        object: Option<String>,
    },
    /// Category of flat connections.
    Egl {
        #[command(flatten)]
        input: Input,
        /// Connection names; all connections of the file when omitted.
        #[arg(long, value_delimiter = ',')]
        connections: Vec<String>,
    },
    /// Hom cohomology over the Laurent scalars against the special fibre.
    GenFibre {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        source: String,
        #[arg(long)]
        target: String,
    },
    /// Isomorphisms over the Laurent scalars with bounded valuations.
    IsoLaurent {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        source: String,
        #[arg(long)]
        target: String,
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
        /// Valuation window `lo:hi` for candidate coefficients.
        #[arg(long, default_value = "-1:0")]
        window: String,
    },
    /// First-order deformation class in the truncated HH².
    Defclass {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 3)]
        length: usize,
        /// Compare with a second deformation of the same fibre.
        #[arg(long)]
        compare: Option<String>,
    },
    /// Substitute t ↦ f(t).
    Reparam {
        #[command(flatten)]
        input: Input,
        /// Series as `[[exponent, "coeff"], …]`.
        #[arg(long)]
        f: String,
    },
    /// Dimension of E₁^{pq} from Betti numbers.
    E1 {
        #[arg(long, default_value = "")]
        betti_m: String,
        #[arg(long, default_value = "")]
        betti_bd: String,
        #[arg(long, allow_hyphen_values = true)]
        p: i64,
        #[arg(long, allow_hyphen_values = true)]
        q: i64,
    },
    /// The bound b₂(M) + b₀(∂M) on dim SH²(M).
    Sh2Bound {
        #[arg(long)]
        b2_m: u64,
        #[arg(long)]
        b0_bd: u64,
    },
}

pub struct Output {
    pub json: serde_json::Value,
    pub text: String,
    /// SHA-256 of the canonical form of the input instance.
    pub instance_hash: Option<String>,
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<ainfty::Error>() {
        Some(ainfty::Error::BudgetExceeded(_) | ainfty::Error::PrecisionExhausted(_)) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let name = command_name(&cli.command);
    match commands::run(&cli.command, cli.seed) {
        Ok(out) => {
            if cli.json {
                let report = json!({
                    "command": name,
                    "instance_hash": out.instance_hash,
                    "seed": cli.seed,
                    "result": out.json,
                });
                println!(
                    "{}",
                    serde_json::to_string_pretty(&report).expect("reports serialize")
                );
            } else {
                print!("{}", out.text);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Validate(_) => "validate",
        Command::H0(_) => "h0",
        Command::Hom { .. } => "hom",
        Command::Hh { .. } => "hh",
        Command::Cone { .. } => "cone",
        Command::Twist { .. } => "twist",
        Command::QuasiIso { .. } => "quasi-iso",
        Command::Karoubi { .. } => "karoubi",
        Command::Generate { .. } => "generate",
        Command::DeformValidate(_) => "deform-validate",
        Command::McSolve { .. } => "mc-solve",
        Command::Egl { .. } => "egl",
        Command::GenFibre { .. } => "gen-fibre",
        Command::IsoLaurent { .. } => "iso-laurent",
        Command::Defclass { .. } => "defclass",
        Command::Reparam { .. } => "reparam",
        Command::E1 { .. } => "e1",
        Command::Sh2Bound { .. } => "sh2-bound",
    }
}
