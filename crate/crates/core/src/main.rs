use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use qnahm::monomial::{common_denom, fmt_rat, parse_rat};
use qnahm::parse::{expand, parse_expr, ExpandError};
use qnahm::registry::{registry, verify_record, IdentityRecord, Section, VerifyReport};
use qnahm::Rat;

/// Exact truncated q-series verification of Nahm-sum identities.
#[derive(Parser)]
#[command(name = "qnahm", version)]
struct Cli {
    /// Largest accepted scaled order (order times the record's denominator).
    #[arg(long, global = true, env = "QNAHM_MAX_ORDER", default_value_t = 2000)]
    max_order: i64,
    /// Worker threads; 0 lets rayon decide.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify one identity or the whole catalogue.
    Verify(VerifyArgs),
    /// List catalogue entries.
    List {
        #[arg(long)]
        tag: Option<String>,
    },
    /// Print the coefficients of a product expression.
    Expand {
        #[arg(long)]
        expr: String,
        #[arg(long, value_parser = rational)]
        order: Rat,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
    },
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, conflicts_with = "all", required_unless_present = "all")]
    id: Option<String>,
    #[arg(long)]
    all: bool,
    /// Order in units of q; defaults to the record's own order.
    #[arg(long, value_parser = rational, conflicts_with = "all")]
    order: Option<Rat>,
    /// Multiply every default order by this factor.
    #[arg(long, value_parser = rational, requires = "all")]
    order_scale: Option<Rat>,
    #[arg(long, value_enum, default_value_t = Format::Tsv)]
    format: Format,
    /// Add q^EXP to the right-hand side before comparing.
    #[arg(long, value_parser = rational, hide = true)]
    plant_defect: Option<Rat>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Tsv,
    Json,
}

fn rational(s: &str) -> Result<Rat, String> {
    parse_rat(s).ok_or_else(|| format!("`{s}` is not a rational number"))
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn emit(out: &mut impl Write, r: &VerifyReport, format: Format) {
    let line = match format {
        Format::Tsv => r.to_tsv(),
        Format::Json => r.to_json(),
    };
    let _ = writeln!(out, "{line}");
}

fn run_verify(cli: &Cli, args: &VerifyArgs) -> ExitCode {
    let all = registry();
    let jobs: Vec<(&IdentityRecord, Rat)> = if let Some(id) = &args.id {
        match all.iter().find(|r| &r.id == id) {
            Some(r) => vec![(r, args.order.unwrap_or(r.default_order))],
            None => return usage(format!("unknown identity `{id}`")),
        }
    } else {
        let scale = args.order_scale.unwrap_or(Rat::from_integer(1));
        if scale <= Rat::from_integer(0) {
            return usage("--order-scale must be positive");
        }
        all.iter().map(|r| (r, r.default_order * scale)).collect()
    };
    for (r, order) in &jobs {
        if *order <= Rat::from_integer(0) {
            return usage("order must be positive");
        }
        if r.scaled_order(*order) > cli.max_order {
            return usage(format!(
                "{}: scaled order {} exceeds --max-order {}",
                r.id,
                r.scaled_order(*order),
                cli.max_order
            ));
        }
    }
    let reports: Vec<VerifyReport> = jobs
        .par_iter()
        .map(|(r, order)| verify_record(r, *order, args.plant_defect))
        .collect();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    for r in &reports {
        emit(&mut out, r, args.format);
    }
    if reports.iter().all(VerifyReport::passed) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run_list(tag: Option<&str>) -> ExitCode {
    let section = match tag {
        Some(t) => match Section::parse(t) {
            Some(s) => Some(s),
            None => {
                return usage(format!(
                    "unknown section `{t}`; use main, tools, reduction or byproducts"
                ))
            }
        },
        None => None,
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    for r in registry()
        .iter()
        .filter(|r| section.is_none_or(|s| r.section == s))
    {
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}",
            r.id,
            r.section.name(),
            fmt_rat(&r.default_order),
            r.denom,
            r.source
        );
    }
    ExitCode::SUCCESS
}

fn run_expand(cli: &Cli, text: &str, order: Rat, format: Format) -> ExitCode {
    let denom = match parse_expr(text) {
        Ok(e) => common_denom([Rat::new(1, e.natural_denom()), Rat::new(1, *order.denom())]),
        Err(e) => return usage(e),
    };
    if order * Rat::from_integer(denom) > Rat::from_integer(cli.max_order) {
        return usage(format!(
            "scaled order exceeds --max-order {}",
            cli.max_order
        ));
    }
    match expand(text, order) {
        Ok(rows) => {
            let stdout = io::stdout();
            let mut out = stdout.lock();
            for (e, c) in rows {
                let _ = match format {
                    Format::Tsv => writeln!(out, "{}\t{}", fmt_rat(&e), c),
                    Format::Json => {
                        writeln!(
                            out,
                            "{}",
                            serde_json::json!({ "exp": fmt_rat(&e), "coeff": c.to_string() })
                        )
                    }
                };
            }
            ExitCode::SUCCESS
        }
        Err(ExpandError::Parse(e)) => usage(e),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()
        {
            return usage(e);
        }
    }
    match &cli.command {
        Command::Verify(args) => run_verify(&cli, args),
        Command::List { tag } => run_list(tag.as_deref()),
        Command::Expand {
            expr,
            order,
            format,
        } => run_expand(&cli, expr, *order, *format),
    }
}
