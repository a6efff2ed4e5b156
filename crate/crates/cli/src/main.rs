use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use bcells::verify::{
    check_theorem, export, verify_props, Engine, ExportFormat, ExportRequest, ExportTarget,
    Property, Regime, RelationSource, TheoremCheck, VerificationReport, CLI_RANK_BOUND,
    REPORT_FORMAT_VERSION,
};
use bcells::{CellKind, ParamSpec};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

/// Kazhdan–Lusztig cells of type B_n with unequal parameters, compared
/// against domino-tableau and Knuth-relation cells.
#[derive(Parser, Debug)]
#[command(name = "bcells", version)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Directory for persisted KL tables.
    #[arg(long, global = true, default_value = ".bcells-cache")]
    cache_dir: PathBuf,
    /// Never read or write KL tables on disk.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Worker threads (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Allow n above 5. Cost grows roughly with |W_n|^2.
    #[arg(long, global = true)]
    unsafe_n: bool,
    /// Write machine-readable output here.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check that combinatorial cells refine KL cells.
    CheckTheorem {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long, default_value = "open")]
        regime: Regime,
        /// L, R or LR; all three when omitted.
        #[arg(long)]
        kind: Option<CellKind>,
        /// b/a as P/Q, open regime only; defaults to (2r+1)/2.
        #[arg(long)]
        ratio: Option<ParamSpec>,
        #[arg(long, default_value = "domino")]
        relation_source: RelationSource,
    },
    /// Run property suites: M1, M2, EQ51, QUASI, STAR, TASKIN.
    VerifyProps {
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        which: Vec<Property>,
        #[arg(long)]
        ratio: Option<ParamSpec>,
        /// Core for TASKIN; every r ≤ n when omitted.
        #[arg(long)]
        r: Option<usize>,
    },
    /// Export cells, tableaux or graphs.
    Export {
        #[arg(long)]
        what: ExportTarget,
        #[arg(long, default_value = "json")]
        format: ExportFormat,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "R")]
        kind: CellKind,
        #[arg(long)]
        ratio: Option<ParamSpec>,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long, default_value = "domino")]
        relation_source: RelationSource,
    },
}

enum Failure {
    Verdict,
    Config(anyhow::Error),
    Integrity(anyhow::Error),
}

impl From<bcells::Error> for Failure {
    fn from(e: bcells::Error) -> Self {
        match e {
            bcells::Error::Integrity(_) => Failure::Integrity(e.into()),
            e => Failure::Config(e.into()),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Config(e)
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verdict) => ExitCode::from(1),
        Err(Failure::Integrity(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Config(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn engine(common: &Common, n: usize) -> Result<Engine, Failure> {
    if n > CLI_RANK_BOUND && !common.unsafe_n {
        return Err(Failure::Config(anyhow::anyhow!(
            "n = {n} exceeds {CLI_RANK_BOUND}; pass --unsafe-n to run anyway"
        )));
    }
    let mut engine = Engine::new(common.jobs)?.with_rank_bound(n.max(CLI_RANK_BOUND));
    if !common.no_cache {
        engine = engine.with_cache_dir(&common.cache_dir);
    }
    Ok(engine)
}

fn write_out(common: &Common, text: &str) -> Result<(), Failure> {
    if let Some(path) = &common.out {
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir)
                .with_context(|| format!("creating {}", dir.display()))?;
        }
        std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn finish(common: &Common, reports: &[VerificationReport]) -> Result<(), Failure> {
    for r in reports {
        println!("{}", r.summary());
    }
    let doc = json!({ "format_version": REPORT_FORMAT_VERSION, "reports": reports });
    let mut text = serde_json::to_string_pretty(&doc).context("serializing reports")?;
    text.push('\n');
    write_out(common, &text)?;
    let failed = reports.iter().filter(|r| !r.passed).count();
    println!("{} of {} reports passed", reports.len() - failed, reports.len());
    if failed > 0 {
        Err(Failure::Verdict)
    } else {
        Ok(())
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let common = &cli.common;
    match cli.command {
        Command::CheckTheorem { n, r, regime, kind, ratio, relation_source } => {
            let engine = engine(common, n)?;
            if r > n + 1 {
                println!("note: r = {r} behaves as r = {} for n = {n}", n + 1);
            }
            let kinds = kind.map(|k| vec![k]).unwrap_or_else(|| CellKind::ALL.to_vec());
            let mut reports = Vec::new();
            for kind in kinds {
                let check = TheoremCheck { n, r, regime, kind, ratio, source: relation_source };
                reports.push(check_theorem(&engine, &check)?);
            }
            finish(common, &reports)
        }
        Command::VerifyProps { n, which, ratio, r } => {
            let engine = engine(common, n)?;
            let mut reports = Vec::new();
            for p in which {
                reports.push(verify_props(&engine, n, p, ratio, r)?);
            }
            finish(common, &reports)
        }
        Command::Export { what, format, n, kind, ratio, r, relation_source } => {
            if common.out.is_none() {
                return Err(Failure::Config(anyhow::anyhow!("export needs --out")));
            }
            let engine = engine(common, n)?;
            let req = ExportRequest { what, format, n, kind, ratio, r, source: relation_source };
            let text = export(&engine, &req)?;
            write_out(common, &text)?;
            println!(
                "wrote {what} ({format}) for n = {n} to {}",
                common.out.as_ref().expect("checked").display()
            );
            Ok(())
        }
    }
}
