mod cache;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use reflexo::algebra::fmt_rational;
use reflexo::catalog;
use reflexo::fibration::classify_fibres;
use reflexo::laurent::build_fP;
use reflexo::mutation::{all_mutations, mutation_classes};
use reflexo::period::{find_picard_fuchs, operator_singular_locus, period_coefficients};
use reflexo::report::{analyze, expected_row, AnalysisReport, EXPECTED_TABLE};
use reflexo::{Polygon, RunConfig};

use cache::Cache;

/// Line to stdout; a closed pipe ends the process quietly.
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write;
        if writeln!(std::io::stdout(), $($arg)*).is_err() {
            std::process::exit(0);
        }
    }};
}

macro_rules! out_raw {
    ($text:expr) => {{
        use std::io::Write;
        if std::io::stdout().write_all($text.as_bytes()).is_err() {
            std::process::exit(0);
        }
    }};
}

#[derive(Parser)]
#[command(name = "reflexo", version, about = "Exact analysis of 2D reflexive polygons and their elliptic pencils")]
struct Cli {
    /// JSON catalog of named polygons; the built-in sixteen by default.
    #[arg(long, global = true)]
    catalog: Option<PathBuf>,
    /// Cache directory (REFLEXO_CACHE takes precedence).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Disable the report cache.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Worker threads for multi-polygon commands (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the catalog with volumes and duals.
    Catalog,
    /// Full report for one polygon as JSON.
    Analyze {
        name: String,
        /// Highest period coefficient reported.
        #[arg(long, default_value_t = 40)]
        period: usize,
        /// Skip the Picard–Fuchs fit.
        #[arg(long)]
        no_pf: bool,
    },
    /// Singular fibres and Mordell–Weil groups for the whole catalog.
    Table2 {
        /// Exit with status 1 unless every row matches the expected table.
        #[arg(long)]
        check: bool,
    },
    /// Period coefficients c_0..c_N.
    Period {
        name: String,
        #[arg(short = 'n', default_value_t = 20)]
        n: usize,
    },
    /// Picard–Fuchs operator of the period.
    Pf { name: String },
    /// Admissible single mutations.
    Mutations { name: String },
    /// Mutation-equivalence classes of the catalog.
    Classes,
    /// SVG drawing on stdout.
    Svg { name: String, what: SvgKind },
}

#[derive(Clone, Copy, ValueEnum)]
enum SvgKind {
    Polygon,
    Dual,
    Fibres,
}

/// Failure categories mapped to exit codes.
enum Failure {
    Usage(String),
    Check(String),
    Other(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Other(e)
    }
}

impl From<reflexo::Error> for Failure {
    fn from(e: reflexo::Error) -> Self {
        Failure::Other(e.into())
    }
}

struct App {
    catalog: Vec<(String, Polygon)>,
    cache: Cache,
    threads: usize,
}

impl App {
    fn polygon(&self, name: &str) -> Result<&Polygon, Failure> {
        self.catalog.iter().find(|(n, _)| n == name).map(|(_, p)| p).ok_or_else(|| {
            let names: Vec<&str> = self.catalog.iter().map(|(n, _)| n.as_str()).collect();
            Failure::Usage(format!("unknown polygon '{name}'; valid names: {}", names.join(", ")))
        })
    }

    fn pool(&self) -> anyhow::Result<rayon::ThreadPool> {
        rayon::ThreadPoolBuilder::new().num_threads(self.threads).build().context("thread pool")
    }

    /// Pretty JSON report, served from the cache when the key matches.
    fn report_text(&self, name: &str, cfg: &RunConfig) -> Result<String, Failure> {
        let p = self.polygon(name)?;
        let key = Cache::key(name, p, cfg);
        if let Some(text) = self.cache.get(name, &key) {
            return Ok(text);
        }
        let classes = mutation_classes(&self.catalog);
        let r = analyze(name, p, &classes, cfg)?;
        let text = serde_json::to_string_pretty(&r.json()).context("serialize")? + "\n";
        self.cache.put(name, &key, &text).context("write cache")?;
        Ok(text)
    }
}

fn fmt_pt_list(p: &Polygon) -> String {
    p.vertices().iter().map(|v| format!("({},{})", v.x, v.y)).collect::<Vec<_>>().join(" ")
}

fn run(cli: Cli) -> Result<(), Failure> {
    let catalog = match &cli.catalog {
        Some(path) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("read {}", path.display()))?;
            catalog::parse(&text)?
        }
        None => catalog::catalog(),
    };
    let cache_dir = match std::env::var_os("REFLEXO_CACHE") {
        Some(d) => Some(PathBuf::from(d)),
        None => Some(cli.cache_dir.clone().unwrap_or_else(|| std::env::temp_dir().join("reflexo-cache"))),
    };
    let app = App {
        catalog,
        cache: Cache::new(if cli.no_cache { None } else { cache_dir }),
        threads: cli.threads,
    };

    match cli.command {
        Command::Catalog => {
            for (name, p) in &app.catalog {
                let dual = p.polar_dual().ok();
                let dual_name = dual
                    .as_ref()
                    .and_then(|d| app.catalog.iter().find(|(_, q)| q.equivalent(d)).map(|(n, _)| n.clone()))
                    .unwrap_or_else(|| "-".into());
                out!("{name:<4} vol {:<2} dual {dual_name:<4} {}", p.volume(), fmt_pt_list(p));
            }
        }
        Command::Analyze { name, period, no_pf } => {
            let cfg = RunConfig { period_order: period, fit_operator: !no_pf, ..RunConfig::default() };
            out_raw!(app.report_text(&name, &cfg)?);
        }
        Command::Table2 { check } => {
            let classes = mutation_classes(&app.catalog);
            let cfg = RunConfig { period_order: 0, fit_operator: false, ..RunConfig::default() };
            let rows: Vec<(String, Result<AnalysisReport, String>)> = app.pool()?.install(|| {
                app.catalog
                    .par_iter()
                    .map(|(n, p)| (n.clone(), analyze(n, p, &classes, &cfg).map_err(|e| e.to_string())))
                    .collect()
            });
            let mut bad = Vec::new();
            for (name, r) in &rows {
                match r {
                    Ok(r) => {
                        let no = r.table_number.map_or("-".to_string(), |n| n.to_string());
                        let mark = match r.matches_table() {
                            Some(true) => "ok",
                            Some(false) => {
                                bad.push(name.clone());
                                "MISMATCH"
                            }
                            None => "-",
                        };
                        out!("{name:<4} {:<28} No. {no:<3} {mark}", r.table_row());
                    }
                    Err(e) => {
                        bad.push(name.clone());
                        out!("{name:<4} error: {e}");
                    }
                }
            }
            let missing: Vec<&str> = EXPECTED_TABLE
                .iter()
                .flat_map(|r| r.members.iter().copied())
                .filter(|m| !rows.iter().any(|(n, _)| n == m))
                .collect();
            if check {
                if !bad.is_empty() || !missing.is_empty() {
                    let mut msg = format!("table check failed for: {}", bad.join(", "));
                    if !missing.is_empty() {
                        msg += &format!("; missing: {}", missing.join(", "));
                    }
                    return Err(Failure::Check(msg));
                }
                out!("table check passed ({} polygons)", rows.len());
            }
        }
        Command::Period { name, n } => {
            let p = app.polygon(&name)?;
            for (m, c) in period_coefficients(&build_fP(p), n).coeffs.iter().enumerate() {
                out!("{m} {}", fmt_rational(c));
            }
        }
        Command::Pf { name } => {
            let p = app.polygon(&name)?;
            let cfg = RunConfig::default();
            let s = period_coefficients(&build_fP(p), cfg.working_order());
            let l = find_picard_fuchs(&s, cfg.pf_max_order, cfg.pf_max_degree, cfg.pf_guard)?;
            out!("operator   {}", l.display_dual_form());
            out!("in D-form  {}", l.display_d_form());
            let loc = operator_singular_locus(&l);
            let roots: Vec<String> = loc.leading.roots.iter().map(|(r, _)| fmt_rational(r)).collect();
            let rest: Vec<String> = loc.leading.residual.iter().map(|(q, _)| q.display("t")).collect();
            out!("singular   t = 0, ∞; roots {{{}}}; factors {{{}}}", roots.join(", "), rest.join(", "));
        }
        Command::Mutations { name } => {
            let p = app.polygon(&name)?;
            for (data, q) in all_mutations(p) {
                let target = app
                    .catalog
                    .iter()
                    .find(|(_, c)| c.equivalent(&q))
                    .map_or_else(|| "?".to_string(), |(n, _)| n.clone());
                out!(
                    "v=({},{}) w=({},{}) -> {target:<4} {}",
                    data.v.x,
                    data.v.y,
                    data.w.x,
                    data.w.y,
                    fmt_pt_list(&q)
                );
            }
        }
        Command::Classes => {
            for class in mutation_classes(&app.catalog) {
                let tag = class
                    .first()
                    .and_then(|n| expected_row(n))
                    .map_or(String::new(), |r| format!("  ({} | {})", r.fibres, r.group));
                out!("{}{tag}", class.join(" "));
            }
        }
        Command::Svg { name, what } => {
            let p = app.polygon(&name)?;
            let out = match what {
                SvgKind::Polygon => svg::polygon(p, &format!("P{name}")),
                SvgKind::Dual => svg::polygon(&p.polar_dual()?, &format!("dual of P{name}")),
                SvgKind::Fibres => svg::fibres(&classify_fibres(p)?, &format!("singular fibres of P{name}")),
            };
            out_raw!(out);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Check(m)) => {
            eprintln!("{m}");
            ExitCode::from(1)
        }
        Err(Failure::Other(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
