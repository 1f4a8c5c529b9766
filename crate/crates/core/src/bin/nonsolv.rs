use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use nonsolv::catalog;
use nonsolv::chartable::{load_character_table, CharacterTable};
use nonsolv::conditions::SearchMode;
use nonsolv::definition::GroupDefinition;
use nonsolv::report::{
    self, AnalyzeDocument, Condition, CountMethod, ScanInput, ScanRow, SCHEMA_VERSION,
};
use nonsolv::{Error, FiniteGroup, DEFAULT_ORDER_CAP};

const EXIT_FAILS: u8 = 1;
const EXIT_ERROR: u8 = 2;
const EXIT_INCONCLUSIVE: u8 = 3;

/// Decide nonsolvability conditions on concrete finite groups.
#[derive(Parser)]
#[command(name = "nonsolv", version)]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalOpts {
    /// Largest group order to enumerate.
    #[arg(long, global = true, default_value_t = DEFAULT_ORDER_CAP)]
    max_order: usize,
    /// Sylow conjugate search strategy for 3SS.
    #[arg(long, global = true, value_enum, default_value_t = ModeArg::Exhaustive)]
    mode: ModeArg,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Character table file.
    #[arg(long, global = true)]
    table: Option<PathBuf>,
    /// Record wall-clock time per check.
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Fast,
    Exhaustive,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Brute,
    Character,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConditionArg {
    Thompson,
    Kl,
    #[value(name = "3po")]
    ThreePo,
    #[value(name = "3ppo")]
    ThreePpo,
    #[value(name = "3ss")]
    ThreeSs,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate every condition on a group.
    Analyze { path: PathBuf },
    /// Search for a witness of one condition.
    Check {
        path: PathBuf,
        #[arg(value_enum)]
        condition: ConditionArg,
    },
    /// Count solutions of xyz = 1 over three conjugacy classes.
    CountTriples {
        path: PathBuf,
        /// Three comma-separated class labels or element orders.
        #[arg(long, value_delimiter = ',', num_args = 1)]
        classes: Vec<String>,
        #[arg(long, value_enum, default_value_t = MethodArg::Brute)]
        method: MethodArg,
    },
    /// Analyze the built-in catalog or every *.group file in a directory.
    Scan {
        #[arg(long)]
        dir: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("nonsolv: {e}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

fn search_mode(m: ModeArg) -> SearchMode {
    match m {
        ModeArg::Fast => SearchMode::Fast,
        ModeArg::Exhaustive => SearchMode::Exhaustive,
    }
}

fn load_group(path: &Path, cap: usize) -> Result<FiniteGroup, String> {
    let def = GroupDefinition::load(path).map_err(|e| format!("{}: {e}", path.display()))?;
    def.build(cap)
        .map_err(|e| format!("{}: {e}", path.display()))
}

fn load_table(path: &Path) -> Result<CharacterTable, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    load_character_table(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn emit<T: Serialize>(
    format: Format,
    doc: &T,
    text: impl FnOnce() -> String,
) -> Result<(), String> {
    match format {
        Format::Text => print!("{}", text()),
        Format::Structured => {
            let json = serde_json::to_string_pretty(doc).map_err(|e| e.to_string())?;
            println!("{json}");
        }
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<u8, String> {
    let opts = &cli.global;
    let mode = search_mode(opts.mode);
    match &cli.command {
        Command::Analyze { path } => {
            let g = load_group(path, opts.max_order)?;
            let doc = AnalyzeDocument {
                schema_version: SCHEMA_VERSION,
                report: report::analyze(&g, mode, opts.timings),
            };
            emit(opts.format, &doc, || {
                report::render_report_text(&doc.report)
            })?;
            Ok(0)
        }
        Command::Check { path, condition } => {
            let g = load_group(path, opts.max_order)?;
            let condition = match condition {
                ConditionArg::Thompson => Condition::Thompson,
                ConditionArg::Kl => Condition::KaplanLevy,
                ConditionArg::ThreePo => Condition::ThreePo,
                ConditionArg::ThreePpo => Condition::ThreePpo,
                ConditionArg::ThreeSs => Condition::ThreeSs,
            };
            let doc = report::check_condition(&g, condition, mode);
            emit(opts.format, &doc, || report::render_check_text(&doc))?;
            if !doc.holds && opts.format == Format::Structured {
                eprintln!("{}", doc.message);
            }
            Ok(match (doc.holds, doc.conclusive) {
                (true, _) => 0,
                (false, true) => EXIT_FAILS,
                (false, false) => EXIT_INCONCLUSIVE,
            })
        }
        Command::CountTriples {
            path,
            classes,
            method,
        } => {
            let selectors: [String; 3] = classes.clone().try_into().map_err(|v: Vec<String>| {
                format!("--classes needs exactly 3 selectors, got {}", v.len())
            })?;
            let method = match method {
                MethodArg::Brute => CountMethod::Brute,
                MethodArg::Character => CountMethod::Character,
                MethodArg::Both => CountMethod::Both,
            };
            if method != CountMethod::Brute && opts.table.is_none() {
                return Err(format!("--method {} needs --table", method_name(method)));
            }
            let table = opts.table.as_deref().map(load_table).transpose()?;
            let g = load_group(path, opts.max_order)?;
            let doc = report::count_triples(&g, &selectors, method, table.as_ref())
                .map_err(|e| e.to_string())?;
            emit(opts.format, &doc, || report::render_count_text(&doc))?;
            Ok(if doc.agree == Some(false) {
                EXIT_FAILS
            } else {
                0
            })
        }
        Command::Scan { dir } => {
            let rows_in = match dir {
                None => catalog::builtin()
                    .into_iter()
                    .map(|e| Ok(ScanInput::from(e)))
                    .collect(),
                Some(d) => read_scan_dir(d)?,
            };
            let mut rows = Vec::with_capacity(rows_in.len());
            for item in &rows_in {
                rows.push(match item {
                    Ok(input) => report::scan_row(input, opts.max_order, mode, opts.timings),
                    Err((name, e)) => ScanRow {
                        name: name.clone(),
                        error: Some(e.to_string()),
                        report: None,
                        expected_mismatches: Vec::new(),
                        counterexample: None,
                    },
                });
            }
            let doc = report::assemble_scan(rows, mode);
            emit(opts.format, &doc, || report::render_scan_text(&doc))?;
            for a in &doc.alarms {
                eprintln!("COUNTEREXAMPLE: {a}");
            }
            Ok(if doc.passed { 0 } else { EXIT_FAILS })
        }
    }
}

fn method_name(m: CountMethod) -> &'static str {
    match m {
        CountMethod::Brute => "brute",
        CountMethod::Character => "character",
        CountMethod::Both => "both",
    }
}

type ScanItem = Result<ScanInput, (String, Error)>;

fn read_scan_dir(dir: &Path) -> Result<Vec<ScanItem>, String> {
    let entries = std::fs::read_dir(dir).map_err(|e| format!("{}: {e}", dir.display()))?;
    let mut paths: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "group"))
        .collect();
    paths.sort();
    Ok(paths
        .into_iter()
        .map(|p| {
            let name = p
                .file_name()
                .unwrap_or_default()
                .to_string_lossy()
                .into_owned();
            std::fs::read_to_string(&p)
                .map_err(Error::from)
                .and_then(|text| {
                    serde_json::from_str::<ScanInput>(&text)
                        .map_err(|e| Error::Parse(format!("group definition: {e}")))
                })
                .map_err(|e| (name, e))
        })
        .collect())
}
