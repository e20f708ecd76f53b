//! Command-line front end: bracket evaluation, catalog-family residual
//! checks, identity suites, solution search, and versioned JSON reports.
//!
//! Exit codes: 0 all checks pass, 1 a residual check failed or a strict
//! search left solutions unexplained, 2 usage or validation error, 3
//! enumeration budget exceeded.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use omega3rb::algebra::{
    bracket_indices, det3_int, det3_vanishes_closed_form, fundamental_identity_residual,
    random_generator_quintuples, Element,
};
use omega3rb::catalog::{
    build_family, enumerate_cases, CaseId, CoeffSpec, Family, FamilyParams, Reading,
};
use omega3rb::constraints::{
    cor01_report, eq00_residual, eq01_residual, eq39_residual, extract_supporters,
    klmn_nonvanishing_report, lemma_f00_residuals, lemma_fa_residuals, m_supporter_window,
};
use omega3rb::operator::{check_k_collapse, rb_sweep, HomOp};
use omega3rb::report::{Counts, Report, WitnessJson, SCHEMA};
use omega3rb::scalar::{fmt_scalar, parse_scalar, Scalar};
use omega3rb::search::{completeness_report, enumerate_solutions, SearchSpace};
use omega3rb::window::{Table, Window};
use omega3rb::Error;

#[derive(Parser)]
#[command(
    name = "omega3rb",
    version,
    about = "Exact verification of shift-homogeneous weighted operators on an \
             integer-graded ternary bracket"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the bracket of three generators, e.g. `bracket 0 1 2`.
    Bracket { l: i64, m: i64, n: i64 },
    /// Sweep a catalog family's residuals over a window.
    Check(CheckArgs),
    /// Run an exact identity suite.
    Identities(IdentitiesArgs),
    /// Enumerate solution tables and explain them against the catalog.
    Search(SearchArgs),
    /// List the forty catalog cases with their parameters and domains.
    Catalog {
        /// Also write the JSON listing to this path.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct CheckArgs {
    /// Case id, e.g. FIN-2 or F0A3-B5.
    #[arg(long)]
    case: String,
    /// Table reading: literal or amended.
    #[arg(long, default_value = "literal")]
    reading: String,
    /// Inline parameters: comma-separated name=value entries.
    #[arg(long, conflicts_with = "params_file")]
    params: Option<String>,
    /// File of name=value entries, newline- or comma-separated.
    #[arg(long)]
    params_file: Option<PathBuf>,
    /// Window radius N; residuals sweep [-N, N].
    #[arg(long, default_value_t = 10)]
    window: i64,
    /// Operator shift k.
    #[arg(long, default_value_t = 0)]
    k: i64,
    /// Operator weight, an exact rational.
    #[arg(long, default_value = "1")]
    weight: String,
    /// Also write the JSON report to this path.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct IdentitiesArgs {
    /// One of: fundamental, det-criterion, derived-a-branch, derived-01-branch.
    #[arg(long)]
    suite: String,
    /// Window radius for index sweeps.
    #[arg(long, default_value_t = 10)]
    window: i64,
    /// Random quintuples drawn by the fundamental suite.
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    /// RNG seed for the fundamental suite.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Catalog case supplying the coefficient map (derived suites).
    #[arg(long)]
    case: Option<String>,
    /// Inline parameters for the case.
    #[arg(long, conflicts_with = "params_file")]
    params: Option<String>,
    /// File of name=value entries.
    #[arg(long)]
    params_file: Option<PathBuf>,
    /// Also write the JSON report to this path.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SearchArgs {
    /// Window radius N; tables assign one value per index of [-N, N].
    #[arg(long)]
    window: i64,
    /// Comma-separated candidate values, exact rationals.
    #[arg(long)]
    values: String,
    /// Operator shift k.
    #[arg(long, default_value_t = 0)]
    k: i64,
    /// Operator weight, an exact rational.
    #[arg(long, default_value = "1")]
    weight: String,
    /// Margin stripped from the window before explaining solutions.
    #[arg(long, default_value_t = 0)]
    margin: i64,
    /// Largest permitted assignment count |values|^(2N+1).
    #[arg(long, default_value_t = 10_000_000)]
    budget: u128,
    /// Exit with code 1 when any solution is unexplained.
    #[arg(long)]
    strict: bool,
    /// Worker threads; defaults to OMEGA3RB_WORKERS, then all cores.
    #[arg(long)]
    workers: Option<usize>,
    /// Also write the JSON report to this path.
    #[arg(long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            let code = match err.downcast_ref::<Error>() {
                Some(Error::Budget { .. }) => 3,
                _ => 2,
            };
            ExitCode::from(code)
        }
    }
}

fn run(command: Command) -> Result<u8> {
    match command {
        Command::Bracket { l, m, n } => {
            println!("{}", bracket_indices(l, m, n));
            Ok(0)
        }
        Command::Check(args) => cmd_check(args),
        Command::Identities(args) => cmd_identities(args),
        Command::Search(args) => cmd_search(args),
        Command::Catalog { output } => cmd_catalog(output.as_deref()),
    }
}

/// Read parameters from --params or --params-file; empty when neither given.
fn load_params(inline: Option<String>, file: Option<PathBuf>) -> Result<FamilyParams> {
    let text = match (inline, file) {
        (Some(text), _) => text,
        (None, Some(path)) => fs::read_to_string(&path)
            .with_context(|| format!("reading parameter file {}", path.display()))?,
        (None, None) => String::new(),
    };
    Ok(FamilyParams::parse(&text)?)
}

fn emit(report: &Report, output: Option<&std::path::Path>) -> Result<()> {
    let text = report.to_json();
    println!("{text}");
    if let Some(path) = output {
        fs::write(path, format!("{text}\n"))
            .with_context(|| format!("writing report to {}", path.display()))?;
    }
    Ok(())
}

fn window_note(window: Window) -> String {
    format!(
        "all-integer quantifiers truncated to the window [{}, {}]; out-of-window \
         instances are skipped, not assumed",
        window.lo(),
        window.hi()
    )
}

fn build_case(
    case: &str,
    reading: &str,
    inline: Option<String>,
    file: Option<PathBuf>,
) -> Result<Family> {
    let id = CaseId::parse(case)?;
    let reading = Reading::parse(reading)?;
    let params = load_params(inline, file)?;
    Ok(build_family(id, reading, params)?)
}

fn cmd_check(args: CheckArgs) -> Result<u8> {
    let family = build_case(&args.case, &args.reading, args.params, args.params_file)?;
    let window = Window::new(args.window)?;
    let weight = parse_scalar(&args.weight)?;
    let config_params = family.params().canonical_string();
    let case = family.id().as_str();
    let reading = family.reading().as_str();
    let op = HomOp::new(args.k, CoeffSpec::Family(family));

    let (counts, witnesses, extra) = if args.k == 0 {
        let sweep = rb_sweep(&op, &weight, window, false);
        let witnesses: Vec<WitnessJson> = sweep
            .witnesses
            .iter()
            .map(|(triple, residual)| WitnessJson::new(*triple, residual))
            .collect();
        let counts = Counts {
            checked: sweep.checked,
            skipped: sweep.skipped,
            failed: sweep.failed,
        };
        (counts, witnesses, None)
    } else {
        let collapse = check_k_collapse(&op, &weight, window)?;
        let witnesses: Vec<WitnessJson> = collapse
            .witnesses
            .iter()
            .map(|(triple, residual)| WitnessJson::new(*triple, residual))
            .collect();
        let counts = Counts {
            checked: collapse.checked,
            skipped: collapse.skipped,
            failed: collapse.failed,
        };
        (counts, witnesses, Some(json!({ "reachable": collapse.reachable })))
    };

    let status = if counts.failed == 0 { "pass" } else { "fail" };
    let mut report = Report::new(status, [window.lo(), window.hi()])
        .with_config("subcommand", "check")
        .with_config("case", case)
        .with_config("reading", reading)
        .with_config("params", config_params)
        .with_config("k", args.k.to_string())
        .with_config("weight", fmt_scalar(&weight));
    report.counts = counts;
    report.witnesses = witnesses;
    report.extra = extra;
    report.approximation_notes.push(window_note(window));
    emit(&report, args.output.as_deref())?;
    Ok(if counts.failed == 0 { 0 } else { 1 })
}

fn cmd_identities(args: IdentitiesArgs) -> Result<u8> {
    match args.suite.as_str() {
        "fundamental" => identities_fundamental(args),
        "det-criterion" => identities_det_criterion(args),
        "derived-a-branch" => identities_derived_a(args),
        "derived-01-branch" => identities_derived_01(args),
        other => Err(Error::Params(format!(
            "unknown suite {other:?}: expected fundamental, det-criterion, \
             derived-a-branch, or derived-01-branch"
        ))
        .into()),
    }
}

fn identities_fundamental(args: IdentitiesArgs) -> Result<u8> {
    let window = Window::new(args.window)?;
    let mut failures = Vec::new();
    for quintuple in random_generator_quintuples(window.radius(), args.trials, args.seed) {
        let [a, b, c, d, e] = quintuple;
        let residual = fundamental_identity_residual(
            &Element::generator(a),
            &Element::generator(b),
            &Element::generator(c),
            &Element::generator(d),
            &Element::generator(e),
        );
        if !residual.is_zero() && failures.len() < 10 {
            failures.push(json!({ "quintuple": quintuple, "residual": residual.to_string() }));
        }
    }
    let failed = failures.len() as u64;
    let status = if failed == 0 { "pass" } else { "fail" };
    let mut report = Report::new(status, [window.lo(), window.hi()])
        .with_config("subcommand", "identities")
        .with_config("suite", "fundamental")
        .with_config("trials", args.trials.to_string())
        .with_config("seed", args.seed.to_string());
    report.counts.checked = args.trials as u64;
    report.counts.failed = failed;
    if !failures.is_empty() {
        report.extra = Some(json!({ "failures": failures }));
    }
    report.approximation_notes.push(format!(
        "identity sampled on {} random generator quintuples with indices in \
         [{}, {}], not exhausted",
        args.trials,
        window.lo(),
        window.hi()
    ));
    emit(&report, args.output.as_deref())?;
    Ok(if failed == 0 { 0 } else { 1 })
}

fn identities_det_criterion(args: IdentitiesArgs) -> Result<u8> {
    let window = Window::new(args.window)?;
    let mut checked = 0u64;
    let mut disagreements = Vec::new();
    for l in window.indices() {
        for m in window.indices() {
            for n in window.indices() {
                checked += 1;
                let direct = det3_int(l, m, n) == 0;
                if direct != det3_vanishes_closed_form(l, m, n) && disagreements.len() < 10 {
                    disagreements.push(json!([l, m, n]));
                }
            }
        }
    }
    let failed = disagreements.len() as u64;
    let status = if failed == 0 { "pass" } else { "fail" };
    let mut report = Report::new(status, [window.lo(), window.hi()])
        .with_config("subcommand", "identities")
        .with_config("suite", "det-criterion");
    report.counts.checked = checked;
    report.counts.failed = failed;
    if !disagreements.is_empty() {
        report.extra = Some(json!({ "disagreements": disagreements }));
    }
    report.approximation_notes.push(window_note(window));
    emit(&report, args.output.as_deref())?;
    Ok(if failed == 0 { 0 } else { 1 })
}

/// Shared plumbing for the two derived-branch suites.
struct SuiteRun {
    checked: u64,
    violations: Vec<String>,
}

impl SuiteRun {
    fn new() -> Self {
        Self {
            checked: 0,
            violations: Vec::new(),
        }
    }

    fn record(&mut self, residual: Option<Scalar>, label: impl Fn() -> String) {
        if let Some(value) = residual {
            self.checked += 1;
            if value != parse_scalar("0").expect("zero literal") && self.violations.len() < 20 {
                self.violations
                    .push(format!("{} = {}", label(), fmt_scalar(&value)));
            }
        }
    }
}

fn suite_case(args: &IdentitiesArgs) -> Result<Family> {
    let case = args.case.clone().ok_or_else(|| {
        Error::Params("this suite requires --case and --params for a catalog family".to_string())
    })?;
    build_case(
        &case,
        "literal",
        args.params.clone(),
        args.params_file.clone(),
    )
}

fn finish_suite(
    suite: &str,
    family: &Family,
    window: Window,
    run: SuiteRun,
    notes: Vec<String>,
    args: &IdentitiesArgs,
) -> Result<u8> {
    let failed = run.violations.len() as u64;
    let status = if failed == 0 { "pass" } else { "fail" };
    let mut report = Report::new(status, [window.lo(), window.hi()])
        .with_config("subcommand", "identities")
        .with_config("suite", suite)
        .with_config("case", family.id().as_str())
        .with_config("params", family.params().canonical_string());
    report.counts.checked = run.checked;
    report.counts.failed = failed;
    if !run.violations.is_empty() {
        report.extra = Some(json!({ "violations": run.violations }));
    }
    report.approximation_notes.push(window_note(window));
    for note in notes {
        report.approximation_notes.push(note);
    }
    emit(&report, args.output.as_deref())?;
    Ok(if failed == 0 { 0 } else { 1 })
}

fn identities_derived_a(args: IdentitiesArgs) -> Result<u8> {
    let family = suite_case(&args)?;
    let window = Window::new(args.window)?;
    let radius = window.radius();
    let a = family
        .params()
        .scalars
        .get("a")
        .cloned()
        .ok_or_else(|| Error::Params("this suite requires a case with scalar a".to_string()))?;
    let m0 = *family
        .params()
        .ints
        .get("m0")
        .ok_or_else(|| Error::Params("this suite requires a case with integer m0".to_string()))?;
    let f = CoeffSpec::Family(family.clone());
    let mut run = SuiteRun::new();

    for l in -radius..=radius {
        for m in -radius..=radius {
            let items = lemma_fa_residuals(&f, &a, l, m, l)?;
            for (index, item) in items.into_iter().enumerate() {
                run.record(item, || format!("branch item {} at (l={l}, m={m})", index + 1));
            }
        }
    }
    for m in window.indices() {
        run.record(eq39_residual(&f, m), || format!("reflection at m={m}"));
    }
    for k in -radius..=radius {
        if k == 0 {
            continue;
        }
        run.record(eq00_residual(&f, &a, m0, k)?, || format!("grid relation at k={k}"));
    }
    for k1 in -3..=3i64 {
        for k2 in -3..=3i64 {
            for k3 in -3..=3i64 {
                if k2 == k3 {
                    continue;
                }
                run.record(eq01_residual(&f, m0, k1, k2, k3)?, || {
                    format!("transport relation at (k1={k1}, k2={k2}, k3={k3})")
                });
            }
        }
    }

    let klmn = klmn_nonvanishing_report(&f, window);
    run.checked += klmn.checks;
    for violation in &klmn.violations {
        if run.violations.len() < 20 {
            run.violations.push(format!(
                "nonvanishing claim {} at tuple {:?}: f({}) = {}",
                violation.item,
                violation.tuple,
                violation.position,
                fmt_scalar(&violation.value)
            ));
        }
    }

    let supporters = extract_supporters(&f, window)?;
    let grid = m_supporter_window(m0, window)?;
    run.checked += 1;
    if supporters.nonvanishing_union() != grid {
        run.violations
            .push("nonvanishing supporters differ from the period grid".to_string());
    }

    finish_suite("derived-a-branch", &family, window, run, Vec::new(), &args)
}

fn identities_derived_01(args: IdentitiesArgs) -> Result<u8> {
    let family = suite_case(&args)?;
    let window = Window::new(args.window)?;
    let radius = window.radius();
    let f = CoeffSpec::Family(family.clone());
    let mut run = SuiteRun::new();

    for l in -radius..=radius {
        for m in -radius..=radius {
            let items = lemma_f00_residuals(&f, l, m, l)?;
            for (index, item) in items.into_iter().enumerate() {
                run.record(item, || format!("branch item {} at (l={l}, m={m})", index + 1));
            }
        }
    }

    let report = cor01_report(&f, radius)?;
    run.checked += report.checks;
    for violation in &report.violations {
        if run.violations.len() < 20 {
            run.violations.push(format!(
                "propagation item {} at {:?}: residual {}",
                violation.item,
                violation.args,
                fmt_scalar(&violation.value)
            ));
        }
    }

    let notes = vec![report.density_note.clone()];
    finish_suite("derived-01-branch", &family, window, run, notes, &args)
}

fn cmd_search(args: SearchArgs) -> Result<u8> {
    let window = Window::new(args.window)?;
    window.inner(args.margin)?;
    let mut values = Vec::new();
    for item in args.values.split(',') {
        values.push(parse_scalar(item.trim())?);
    }
    let weight = parse_scalar(&args.weight)?;
    let space = SearchSpace::new(window, values, args.k, weight)?;

    let workers = args.workers.or_else(|| {
        std::env::var("OMEGA3RB_WORKERS")
            .ok()
            .and_then(|raw| raw.parse().ok())
    });
    let margin = args.margin;
    let budget = args.budget;
    let solve = || -> Result<_, Error> {
        let enumeration = enumerate_solutions(&space, budget)?;
        let completeness = completeness_report(&enumeration, margin)?;
        Ok((enumeration, completeness))
    };
    let (enumeration, completeness) = match workers {
        Some(count) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(count)
                .build()
                .map_err(|e| Error::Params(format!("worker pool: {e}")))?;
            pool.install(solve)?
        }
        None => solve()?,
    };

    let unexplained = completeness.unexplained.len() as u64;
    let status = if args.strict && unexplained > 0 { "fail" } else { "pass" };
    let mut report = Report::new(status, [window.lo(), window.hi()])
        .with_config("subcommand", "search")
        .with_config("values", args.values.trim())
        .with_config("k", args.k.to_string())
        .with_config("weight", fmt_scalar(&space.weight))
        .with_config("margin", args.margin.to_string())
        .with_config("budget", args.budget.to_string())
        .with_config("strict", args.strict.to_string())
        .with_config(
            "workers",
            workers.map_or_else(|| "default".to_string(), |w| w.to_string()),
        );
    report.counts.checked = enumeration.checked;
    report.counts.skipped = enumeration.skipped;
    report.counts.failed = enumeration.violating().len() as u64;
    let solutions: Vec<String> = enumeration.solutions.iter().map(Table::row_string).collect();
    report.extra = Some(json!({
        "solution_count": completeness.solution_count,
        "solutions_sha256": completeness.solutions_sha256,
        "reachable": enumeration.reachable,
        "solutions": solutions,
        "explained_counts": completeness.explained_counts,
        "unexplained": completeness.unexplained,
    }));
    report.approximation_notes.push(window_note(window));
    report.approximation_notes.push(format!(
        "solutions matched against catalog families on the inner window \
         [{}, {}]; boundary artifacts outside it are discounted",
        window.inner(args.margin)?.lo(),
        window.inner(args.margin)?.hi()
    ));
    emit(&report, args.output.as_deref())?;
    Ok(if args.strict && unexplained > 0 { 1 } else { 0 })
}

fn cmd_catalog(output: Option<&std::path::Path>) -> Result<u8> {
    let cases: Vec<serde_json::Value> = enumerate_cases()
        .iter()
        .map(|case| {
            json!({
                "id": case.id.as_str(),
                "int_params": case.int_params,
                "scalar_params": case.scalar_params,
                "domain": case.domain,
                "amended_reading": case.has_amended,
            })
        })
        .collect();
    let doc = json!({
        "schema": SCHEMA,
        "tool": "omega3rb",
        "version": env!("CARGO_PKG_VERSION"),
        "cases": cases,
    });
    let text = serde_json::to_string_pretty(&doc)?;
    println!("{text}");
    if let Some(path) = output {
        fs::write(path, format!("{text}\n"))
            .with_context(|| format!("writing listing to {}", path.display()))?;
    }
    Ok(0)
}
