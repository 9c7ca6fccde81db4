use std::process::ExitCode;

use clap::{Parser, Subcommand};
use theta_cells::report::{exit_code, overall};
use theta_cells::theta::hom_set;
use theta_cells::verify::{preflight, run, Suite, VerifyConfig};
use theta_cells::{Theta, Window};

const USAGE: u8 = 64;

#[derive(Parser)]
#[command(name = "theta", version, about = "Hom-sets of the cell category and bounded checks of its combinatorics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print |Hom(S, T)| and every morphism.
    Hom { source: String, target: String },
    /// Run a verification suite (or `all`) over a window of objects.
    Verify {
        suite: String,
        /// Defaults come from THETA_WINDOW ("h,w"), else 2,2.
        #[arg(long)]
        max_height: Option<usize>,
        #[arg(long)]
        max_width: Option<usize>,
        #[arg(long, default_value_t = 5)]
        max_terminus: usize,
        /// One JSON report per line.
        #[arg(long)]
        json: bool,
        /// Worker threads; 0 lets rayon decide.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long, env = "THETA_WINDOW", hide_env_values = true)]
        window: Option<String>,
    },
}

fn parse_window(text: &str) -> Result<Window, String> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [h, w] => match (h.parse(), w.parse()) {
            (Ok(h), Ok(w)) => Ok(Window::new(h, w)),
            _ => Err(format!("window {text:?} is not two naturals \"h,w\"")),
        },
        _ => Err(format!("window {text:?} is not of the form \"h,w\"")),
    }
}

fn main() -> ExitCode {
    // clap exits with 2 on usage errors, which here means inconclusive.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(USAGE) } else { ExitCode::SUCCESS };
        }
    };
    match cli.command {
        Command::Hom { source, target } => {
            let (s, t) = match (source.parse::<Theta>(), target.parse::<Theta>()) {
                (Ok(s), Ok(t)) => (s, t),
                (Err(e), _) | (_, Err(e)) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(USAGE);
                }
            };
            let homs = hom_set(&s, &t);
            println!("|Hom({s}, {t})| = {}", homs.len());
            for f in homs.iter() {
                println!("{f}");
            }
            ExitCode::SUCCESS
        }
        Command::Verify { suite, max_height, max_width, max_terminus, json, jobs, window } => {
            let base = match window.as_deref().map(parse_window).transpose() {
                Ok(w) => w.unwrap_or(Window::new(2, 2)),
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(USAGE);
                }
            };
            let config = VerifyConfig {
                window: Window::new(max_height.unwrap_or(base.max_height), max_width.unwrap_or(base.max_width)),
                max_terminus,
            };
            let suites = match Suite::parse_list(&suite).and_then(|s| preflight(&s, &config).map(|_| s)) {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(USAGE);
                }
            };
            let pool = match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
                Ok(p) => p,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(USAGE);
                }
            };
            let mut reports = Vec::new();
            for s in suites {
                let batch = pool.install(|| run(&[s], &config));
                for r in &batch {
                    if json {
                        println!("{}", serde_json::to_string(r).expect("reports serialize"));
                    } else {
                        println!("{r}");
                    }
                }
                reports.extend(batch);
            }
            let status = overall(&reports);
            if !json {
                println!("overall: {status}");
            }
            ExitCode::from(exit_code(status) as u8)
        }
    }
}
