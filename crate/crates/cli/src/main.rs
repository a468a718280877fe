use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use corrclass::report::ValueReport;
use corrclass::{check_text, random_scenario, Counts, Report};
use corrclass_core::suites::SUITE_NAMES;

#[derive(Parser)]
#[command(name = "corrclass", version, about = "Check characteristic-class identities on model correspondences")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Run every directive of a scenario file.
    Check {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Built-in suites to run after the file, comma separated; `all`
        /// selects every suite except the negative controls.
        #[arg(long, value_delimiter = ',')]
        suites: Vec<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Print the operator of one functor on one declared object.
    Eval {
        file: PathBuf,
        /// Functor and object, as in `HTodd a`; a bare name uses HTodd
        /// (Hcl(todd) for bicycles).
        #[arg(long)]
        expr: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Print a scenario in canonical form.
    Fmt { file: PathBuf },
    /// Print a random scenario.
    Random {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long = "max-dim", default_value_t = 4)]
        max_dim: u32,
        #[arg(long, default_value_t = Counts::default().pairs)]
        pairs: usize,
        #[arg(long, default_value_t = Counts::default().bicycles)]
        bicycles: usize,
        #[arg(long, default_value_t = Counts::default().zigzags)]
        zigzags: usize,
    },
}

const USAGE_ERROR: u8 = 2;

fn read(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn expand_suites(names: &[String]) -> Result<Vec<String>, String> {
    let mut out = Vec::new();
    for n in names.iter().map(|n| n.trim()).filter(|n| !n.is_empty()) {
        if n == "all" {
            out.extend(SUITE_NAMES.iter().filter(|s| **s != "controls").map(|s| s.to_string()));
        } else if SUITE_NAMES.contains(&n) {
            out.push(n.to_string());
        } else {
            return Err(format!("unknown suite `{n}`; suites are all, {}", SUITE_NAMES.join(", ")));
        }
    }
    Ok(out)
}

fn emit(report: &Report, format: Format) {
    match format {
        Format::Json => println!("{}", report.to_json()),
        Format::Text => print!("{}", report.to_text()),
    }
}

fn status(report: &Report) -> ExitCode {
    if report.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(USAGE_ERROR) } else { ExitCode::SUCCESS };
        }
    };
    let outcome = match cli.command {
        Command::Check { file, seed, suites, format } => (|| {
            let suites = expand_suites(&suites)?;
            let report = check_text(&read(&file)?, seed, &suites).map_err(|e| format!("{}:{e}", file.display()))?;
            emit(&report, format);
            Ok(status(&report))
        })(),
        Command::Eval { file, expr, format } => (|| {
            let mut words = expr.split_whitespace();
            let (functor, target) = match (words.next(), words.next(), words.next()) {
                (Some(f), Some(t), None) => (f.to_string(), t.to_string()),
                (Some(t), None, None) => (String::new(), t.to_string()),
                _ => return Err(format!("--expr takes `<functor> <name>` or `<name>`, got `{expr}`")),
            };
            let text = read(&file)?;
            let program =
                corrclass::resolve(&corrclass::parse_scenario(&text).map_err(|e| format!("{}:{e}", file.display()))?)
                    .map_err(|e| format!("{}:{e}", file.display()))?;
            let functor = if !functor.is_empty() {
                functor
            } else {
                match program.env.get(&target) {
                    Some(corrclass::resolve::Object::Bicycle(_)) => "Hcl(todd)".into(),
                    Some(corrclass::resolve::Object::Cf(_)) => "mac_chern".into(),
                    _ => "HTodd".into(),
                }
            };
            let report = check_text(&format!("{text}\neval {functor} {target};\n"), 1, &[])
                .map_err(|e| format!("{}: --expr: {e}", file.display()))?;
            match format {
                Format::Json => emit(&report, format),
                Format::Text => {
                    let d = report.directives.last().expect("the eval directive");
                    match &d.value {
                        Some(ValueReport::Operator { matrix, .. }) => {
                            println!("{functor}({target}):");
                            for (r, row) in matrix.rows.iter().zip(&matrix.entries) {
                                println!("  {r}: [{}]", row.join(", "));
                            }
                            println!("  columns: [{}]", matrix.cols.join(", "));
                        }
                        Some(ValueReport::Class { class: v } | ValueReport::Bicycle { bicycle: v }) => {
                            println!("{functor}({target}) = {v}")
                        }
                        None => print!("{}", report.to_text()),
                    }
                }
            }
            Ok(status(&report))
        })(),
        Command::Fmt { file } => (|| {
            let s = corrclass::parse_scenario(&read(&file)?).map_err(|e| format!("{}:{e}", file.display()))?;
            print!("{s}");
            Ok(ExitCode::SUCCESS)
        })(),
        Command::Random { seed, max_dim, pairs, bicycles, zigzags } => {
            print!("{}", random_scenario(seed, max_dim, Counts { pairs, bicycles, zigzags }));
            Ok(ExitCode::SUCCESS)
        }
    };
    outcome.unwrap_or_else(|msg| {
        eprintln!("corrclass: {msg}");
        ExitCode::from(USAGE_ERROR)
    })
}
