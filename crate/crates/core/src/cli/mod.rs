//! Command-line interface.

mod verify;

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use serde_json::json;

use crate::collector::{check_relations, Family, GroupCtx, GroupParams};
use crate::error::{Error, Result};
use crate::hausdorff::{
    closed_form_sequence, default_tolerance, density_terms, fg_spectrum_w, fmt_ratio, hdim_estimate, l_spectrum_g,
    l_spectrum_w, normal_spectrum, parse_ratio, product_spectrum, registered_limit, section_density, DensitySequence,
    SpectrumSet, Target,
};
use crate::series::{gamma_term, layer_table, JenningsMethod, SeriesKind, SeriesOptions};
use crate::specdsl::{parse_spec, subgroup, LevelSel, SubgroupSpec};
use crate::subgroups::{AgemoMode, Budget};

pub use verify::{run_suite, Suite, VerifyLine};

/// Exit status and captured streams of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser)]
#[command(name = "pgroup", version, about = "Finite p-group quotients, filtration series and Hausdorff spectra")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Exact,
    Formula,
    Auto,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Jennings {
    Recursive,
    ClosedForm,
    Both,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Which {
    Normal,
    Product,
    Fg,
    #[value(name = "l-wreath")]
    LWreath,
    #[value(name = "l-g")]
    LG,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TargetArg {
    #[value(name = "Z", alias = "z")]
    Z,
    #[value(name = "H", alias = "h")]
    H,
}

#[derive(Args, Clone, Debug)]
struct GroupArgs {
    #[arg(long, default_value = "G", value_parser = parse_family)]
    family: Family,
    #[arg(long, default_value_t = 3)]
    p: u64,
    #[arg(long, default_value_t = 1)]
    k: u32,
}

#[derive(Args, Clone, Debug)]
struct ComputeArgs {
    #[arg(long, value_enum, default_value = "auto")]
    mode: Mode,
    /// Transversal budget as log_p.
    #[arg(long)]
    budget_log: Option<u32>,
}

#[derive(Args, Clone, Debug)]
struct DensityArgs {
    #[arg(long, default_value = "G", value_parser = parse_family)]
    family: Family,
    #[arg(long, default_value_t = 3)]
    p: u64,
    #[arg(long, value_parser = parse_kind)]
    series: SeriesKind,
    /// JSON specification, either a file path or inline JSON.
    #[arg(long)]
    subgroup: Option<String>,
    /// Compute at this level only, reading the intersections with the
    /// kernel of the projection onto ⟨x⟩.
    #[arg(long)]
    k: Option<u32>,
    /// Largest level tried when certifying terms by stability.
    #[arg(long, default_value_t = 4)]
    kmax: u32,
    #[arg(long, default_value_t = 12)]
    levels: usize,
    #[arg(long, value_enum, default_value = "closed-form")]
    jennings: Jennings,
    #[command(flatten)]
    compute: ComputeArgs,
    #[arg(long, value_enum, default_value = "human")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Order, class and presentation data of one quotient.
    Info {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
    },
    /// Layer table of a filtration series.
    Series {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, value_parser = parse_kind)]
        series: SeriesKind,
        #[command(flatten)]
        compute: ComputeArgs,
        #[arg(long, value_enum, default_value = "recursive")]
        jennings: Jennings,
        /// Compare every level with the next quotient.
        #[arg(long)]
        stability: bool,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
    },
    /// Density terms of a subgroup along a series.
    Density(DensityArgs),
    /// Hausdorff dimension estimate from the tail of the density terms.
    Hdim {
        #[command(flatten)]
        density: DensityArgs,
        #[arg(long, default_value_t = crate::hausdorff::DEFAULT_TAIL_WINDOW)]
        tail_window: usize,
        /// Use the registered closed-form layer data of Z or H instead of the engine.
        #[arg(long, value_enum)]
        closed_form: Option<TargetArg>,
    },
    /// Spectrum sets.
    Spectrum {
        #[arg(long, value_enum)]
        which: Which,
        #[arg(long, value_parser = parse_kind)]
        series: Option<SeriesKind>,
        #[arg(long, default_value_t = 3)]
        p: u64,
        #[arg(long)]
        m: Option<u64>,
        #[arg(long)]
        xi: Option<String>,
        #[arg(long, default_value_t = 2)]
        n_max: u32,
        /// Membership queries.
        #[arg(long)]
        contains: Vec<String>,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
    },
    /// Runs a verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 3)]
        p: u64,
        #[arg(long, default_value_t = 2)]
        kmax: u32,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
    },
}

fn parse_family(s: &str) -> std::result::Result<Family, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_kind(s: &str) -> std::result::Result<SeriesKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Runs the command line `args` (including the program name).
pub fn run<I, T>(args: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                CliOutput { code, stdout: text, stderr: String::new() }
            } else {
                CliOutput { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match dispatch(cli.command) {
        Ok((code, stdout)) => CliOutput { code, stdout, stderr: String::new() },
        Err(e) => {
            let code = match e {
                Error::Budget { .. } | Error::TooLarge(_) => 1,
                _ => 2,
            };
            CliOutput { code, stdout: String::new(), stderr: format!("error: {e}\n") }
        }
    }
}

fn dispatch(cmd: Command) -> Result<(i32, String)> {
    match cmd {
        Command::Info { group, format } => info(&group, format).map(|s| (0, s)),
        Command::Series { group, series, compute, jennings, stability, format } => {
            let ctx = context(&group)?;
            let opts = options(&compute, jennings);
            let table = layer_table(&ctx, series, &opts, stability)?;
            let out = match format {
                Format::Json => table.to_json()?,
                Format::Csv => table.to_csv()?,
                Format::Human => {
                    let mut s = format!(
                        "{} series of {} (length {}{}){}\n",
                        series.name(),
                        table.group,
                        table.length,
                        table.predicted_length.map(|l| format!(", predicted {l}")).unwrap_or_default(),
                        if table.exact { "" } else { " [power subgroups from closed form]" }
                    );
                    s.push_str("level  log_index  rank  stable  predicted  match\n");
                    for r in &table.rows {
                        let opt = |o: Option<String>| o.unwrap_or_else(|| "-".into());
                        writeln!(
                            s,
                            "{:>5}  {:>9}  {:>4}  {:>6}  {:>9}  {:>5}",
                            r.level,
                            r.log_index,
                            r.rank,
                            opt(r.stable.map(|b| b.to_string())),
                            opt(r.predicted_rank.map(|b| b.to_string())),
                            opt(r.matches.map(|b| b.to_string()))
                        )
                        .unwrap();
                    }
                    s
                }
            };
            Ok((0, out))
        }
        Command::Density(args) => {
            let seq = density(&args)?;
            Ok((0, render_sequence(&seq, args.format)?))
        }
        Command::Hdim { density: args, tail_window, closed_form } => {
            let seq = match closed_form {
                Some(t) => {
                    let target = match t {
                        TargetArg::Z => Target::Z,
                        TargetArg::H => Target::H,
                    };
                    closed_form_sequence(args.series, target, args.p, args.levels)?
                }
                None => density(&args)?,
            };
            let est = hdim_estimate(&seq, tail_window, &default_tolerance())?;
            let out = match args.format {
                Format::Json => serde_json::to_string_pretty(&json!({"sequence": seq, "estimate": est}))
                    .map_err(|e| Error::Invalid(e.to_string()))?,
                Format::Csv => return Err(Error::Invalid("hdim has no CSV form; use --format json".into())),
                Format::Human => {
                    let mut s = format!(
                        "{} along {}: estimate {} (≈ {:.6}) over the last {} terms\n",
                        seq.subgroup,
                        args.series.name(),
                        fmt_ratio(&est.estimate),
                        est.estimate.to_f64().unwrap_or(f64::NAN),
                        est.window
                    );
                    writeln!(s, "tail oscillation {:.6}, strong: {}", est.oscillation.to_f64().unwrap_or(f64::NAN), est.strong)
                        .unwrap();
                    if let Some(l) = &est.limit {
                        writeln!(s, "registered limit {}", fmt_ratio(l)).unwrap();
                    }
                    if let Some(c) = est.observed_c {
                        writeln!(s, "observed C in |d_i - limit| <= C/i: {c:.4}").unwrap();
                    }
                    s
                }
            };
            Ok((0, out))
        }
        Command::Spectrum { which, series, p, m, xi, n_max, contains, format } => {
            let set = spectrum(which, series, p, m, xi.as_deref(), n_max)?;
            let queries: Vec<(String, bool)> =
                contains.iter().map(|q| parse_ratio(q).map(|r| (fmt_ratio(&r), set.contains(&r)))).collect::<Result<_>>()?;
            let out = match format {
                Format::Json => {
                    let mut v: serde_json::Value =
                        serde_json::to_value(&set).map_err(|e| Error::Invalid(e.to_string()))?;
                    if !queries.is_empty() {
                        v["contains"] = queries.iter().map(|(q, b)| json!({"value": q, "member": b})).collect();
                    }
                    serde_json::to_string_pretty(&v).map_err(|e| Error::Invalid(e.to_string()))?
                }
                Format::Csv => return Err(Error::Invalid("spectra have no CSV form; use --format json".into())),
                Format::Human => {
                    let mut s = format!("{set}\n");
                    for (q, b) in &queries {
                        writeln!(s, "{q} {} set", if *b { "∈" } else { "∉" }).unwrap();
                    }
                    s
                }
            };
            Ok((0, out))
        }
        Command::Verify { suite, p, kmax, format } => {
            let lines = run_suite(suite, p, kmax)?;
            let failed = lines.iter().any(|l| l.passed == Some(false));
            let out = match format {
                Format::Json => serde_json::to_string_pretty(&lines).map_err(|e| Error::Invalid(e.to_string()))?,
                Format::Csv => return Err(Error::Invalid("verify has no CSV form; use --format json".into())),
                Format::Human => lines.iter().map(|l| format!("{l}\n")).collect(),
            };
            Ok((if failed { 3 } else { 0 }, out))
        }
    }
}

fn context(g: &GroupArgs) -> Result<GroupCtx> {
    GroupCtx::new(GroupParams::new(g.family, g.p, g.k)?)
}

fn options(c: &ComputeArgs, jennings: Jennings) -> SeriesOptions {
    SeriesOptions {
        mode: match c.mode {
            Mode::Exact => AgemoMode::Exact,
            Mode::Formula => AgemoMode::Formula,
            Mode::Auto => AgemoMode::Auto,
        },
        budget: c.budget_log.map(Budget::LogP).unwrap_or_else(Budget::from_env),
        jennings: match jennings {
            Jennings::Recursive => JenningsMethod::Recursive,
            Jennings::ClosedForm => JenningsMethod::ClosedForm,
            Jennings::Both => JenningsMethod::Both,
        },
    }
}

fn info(g: &GroupArgs, format: Format) -> Result<String> {
    let ctx = context(g)?;
    let class = (1..).find(|&i| gamma_term(&ctx, i + 1).is_trivial()).unwrap();
    let relations = check_relations(&ctx);
    let log = ctx.log_order();
    Ok(match format {
        Format::Json => serde_json::to_string_pretty(&json!({
            "group": ctx.params().to_string(),
            "family": ctx.family().to_string(),
            "p": ctx.p(),
            "k": ctx.k(),
            "log_order": log,
            "order": format!("{}^{}", ctx.p(), log),
            "class": class,
            "x_order": ctx.x_order(),
            "relations_hold": relations.all_passed(),
        }))
        .map_err(|e| Error::Invalid(e.to_string()))?,
        Format::Csv => format!("group,log_order,class,x_order,relations_hold\n{},{log},{class},{},{}\n", ctx.params(), ctx.x_order(), relations.all_passed()),
        Format::Human => format!(
            "{}: order {}^{log}, class {class}, x of order {}, relations {}\n",
            ctx.params(),
            ctx.p(),
            ctx.x_order(),
            if relations.all_passed() { "hold" } else { "FAIL" }
        ),
    })
}

fn load_spec(text: &str) -> Result<SubgroupSpec> {
    let t = text.trim_start();
    if t.starts_with('{') {
        parse_spec(t)
    } else {
        let body = std::fs::read_to_string(text).map_err(|e| Error::Spec(format!("cannot read {text}: {e}")))?;
        parse_spec(&body)
    }
}

fn density(args: &DensityArgs) -> Result<DensitySequence> {
    let spec = match &args.subgroup {
        Some(s) => load_spec(s)?,
        None => return Err(Error::Invalid("--subgroup is required".into())),
    };
    let family = spec.group.family.unwrap_or(args.family);
    let p = spec.group.p.unwrap_or(args.p);
    let opts = options(&args.compute, args.jennings);
    let name = spec.label();
    let fixed = args.k.or(match spec.group.k {
        LevelSel::Fixed(k) => Some(k),
        LevelSel::Auto => None,
    });
    match fixed {
        Some(k) => {
            let ctx = GroupCtx::new(GroupParams::new(family, p, k)?)?;
            section_density(&subgroup(&spec, &ctx)?, &name, args.series, &opts, Some(args.levels))
        }
        None => {
            let build = |ctx: &GroupCtx| subgroup(&spec, ctx);
            let named = spec.as_named().map(|n| n.to_string()).unwrap_or(name);
            let mut seq = density_terms(&build, &named, family, p, args.series, args.levels, args.kmax, &opts)?;
            if let Some(id) = &spec.id {
                seq.subgroup = id.clone();
            }
            Ok(seq)
        }
    }
}

fn render_sequence(seq: &DensitySequence, format: Format) -> Result<String> {
    match format {
        Format::Json => seq.to_json(),
        Format::Csv => seq.to_csv(),
        Format::Human => {
            let mut s = format!("{} along the {} series\n", seq.subgroup, seq.kind.name());
            for t in &seq.terms {
                writeln!(s, "d_{} = {} ≈ {:.6}{}", t.level, fmt_ratio(&t.value), t.to_f64(), if t.stable { "" } else { " (unstable)" })
                    .unwrap();
            }
            if let Some(l) = &seq.registered_limit {
                writeln!(s, "registered limit {}", fmt_ratio(l)).unwrap();
            }
            if let Some(c) = &seq.cutoff {
                writeln!(s, "cutoff: {c}").unwrap();
            }
            Ok(s)
        }
    }
}

fn spectrum(which: Which, series: Option<SeriesKind>, p: u64, m: Option<u64>, xi: Option<&str>, n_max: u32) -> Result<SpectrumSet> {
    let need_series = || series.ok_or_else(|| Error::Invalid("--series is required".into()));
    match which {
        Which::Normal => {
            let kind = need_series()?;
            let lim = |t| {
                registered_limit(kind, t, p)
                    .ok_or_else(|| Error::NoFormula(format!("no registered dimensions for {} at p = {p}", kind.name())))
            };
            normal_spectrum(&lim(Target::Z)?, &lim(Target::H)?)
        }
        Which::Product => {
            let m = m.ok_or_else(|| Error::Invalid("--m is required".into()))?;
            let xi = parse_ratio(xi.ok_or_else(|| Error::Invalid("--xi is required".into()))?)?;
            product_spectrum(m, &xi)
        }
        Which::Fg => fg_spectrum_w(need_series()?, p, n_max),
        Which::LWreath => l_spectrum_w(p, n_max),
        Which::LG => l_spectrum_g(p, n_max),
    }
}
