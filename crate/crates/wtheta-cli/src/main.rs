use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use wtheta::models::{
    self, all_pass, characters_document, lie_document, rat_string, Check, ModelRun,
};
use wtheta::Error;

#[derive(Parser)]
#[command(
    name = "wtheta",
    version,
    about = "Conformal characters of rational W-algebra models via exact quaternionic theta series"
)]
struct Cli {
    /// Number of worker threads (default: one per CPU)
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a model and print its conformal characters
    Characters {
        /// Model name: WG2, WF4, W24, W26 or W28
        #[arg(long)]
        model: String,
        /// Number of q-expansion coefficients per character
        #[arg(long, default_value_t = 100)]
        terms: usize,
    },
    /// Print the independent Lie-theoretic characters of a model
    Lie {
        /// Model name: WG2, WF4, W24 or W26 (W28 has no practical formula)
        #[arg(long)]
        model: String,
        /// Number of q-expansion coefficients per character
        #[arg(long, default_value_t = 100)]
        terms: usize,
    },
    /// Report spherical polynomial counts and theta span ranks per model
    Dims,
    /// Run a verification suite; exits 1 if any check fails
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Series length; defaults to 100 for characters, 60 for oracle/numeric
        #[arg(long)]
        terms: Option<usize>,
        /// Evaluation point for the numeric suite, as two floats RE IM
        #[arg(long, num_args = 2, value_names = ["RE", "IM"], allow_negative_numbers = true)]
        tau0: Option<Vec<f64>>,
    },
}

#[derive(Copy, Clone, ValueEnum)]
enum Suite {
    Algebraic,
    Dims,
    Characters,
    Oracle,
    Numeric,
}

fn main() {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .expect("thread pool is configured before any parallel work");
    }
    let code = match run(&cli) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::UnknownModel(_) | Error::ModelNotSupported(_, _) => 2,
                _ => 1,
            }
        }
    };
    std::process::exit(code);
}

fn run(cli: &Cli) -> wtheta::Result<bool> {
    match &cli.command {
        Command::Characters { model, terms } => {
            let run = models::run_model(model, *terms)?;
            match cli.format {
                Format::Json => {
                    println!("{}", serde_json::to_string_pretty(&characters_document(&run)).unwrap())
                }
                Format::Text => print_run_text(&run),
            }
            Ok(true)
        }
        Command::Lie { model, terms } => {
            let chars = models::lie_characters(model, *terms)?;
            match cli.format {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&lie_document(model, &chars)?).unwrap()
                ),
                Format::Text => {
                    let spec = models::model(model)?;
                    println!("{} (Lie construction), c = {}", spec.name, rat_string(&spec.c));
                    for (h, chi) in &chars {
                        print_series_text(h, chi);
                    }
                }
            }
            Ok(true)
        }
        Command::Dims => {
            let table = models::dims_table()?;
            match cli.format {
                Format::Json => {
                    let rows: Vec<_> = table
                        .iter()
                        .map(|(name, npolys, rank)| {
                            json!({"model": name, "spherical_dim": npolys, "rank": rank})
                        })
                        .collect();
                    println!("{}", serde_json::to_string_pretty(&rows).unwrap());
                }
                Format::Text => {
                    println!("{:<6} {:>14} {:>6}", "model", "spherical_dim", "rank");
                    for (name, npolys, rank) in &table {
                        println!("{name:<6} {npolys:>14} {rank:>6}");
                    }
                }
            }
            Ok(true)
        }
        Command::Verify { suite, terms, tau0 } => {
            let checks = match suite {
                Suite::Algebraic => models::suite_algebraic()?,
                Suite::Dims => models::suite_dims()?,
                Suite::Characters => models::suite_characters(terms.unwrap_or(100))?,
                Suite::Oracle => models::suite_oracle(terms.unwrap_or(60))?,
                Suite::Numeric => {
                    let t = tau0
                        .as_ref()
                        .map(|v| (v[0], v[1]))
                        .unwrap_or((0.0, 1.0));
                    models::suite_numeric(terms.unwrap_or(60), t)?
                }
            };
            print_checks(cli.format, &checks);
            Ok(all_pass(&checks))
        }
    }
}

fn print_checks(format: Format, checks: &[Check]) {
    match format {
        Format::Json => {
            let rows: Vec<_> = checks
                .iter()
                .map(|c| json!({"name": c.name, "pass": c.pass, "detail": c.detail}))
                .collect();
            println!("{}", serde_json::to_string_pretty(&rows).unwrap());
        }
        Format::Text => {
            for c in checks {
                let verdict = if c.pass { "PASS" } else { "FAIL" };
                println!("{verdict}  {}: {}", c.name, c.detail);
            }
        }
    }
}

fn print_run_text(run: &ModelRun) {
    let spec = &run.spec;
    println!(
        "{}: c = {}, c~ = {}, l = {}, k = {}, delta = {}, kappa = {}",
        spec.name,
        rat_string(&spec.c),
        rat_string(&spec.c_tilde()),
        spec.l,
        spec.k,
        rat_string(&spec.delta()),
        rat_string(&run.kappa),
    );
    for (h, chi) in &run.characters {
        print_series_text(h, chi);
    }
}

fn print_series_text(h: &wtheta::arith::Rat, chi: &wtheta::arith::QExp) {
    let coeffs: Vec<String> = chi.coeffs().iter().map(rat_string).collect();
    println!(
        "h = {:<8} q^({}) * [{}]",
        rat_string(h),
        rat_string(chi.offset()),
        coeffs.join(", ")
    );
}
