//! Command-line definitions and dispatch. `run` returns the text to print
//! and the exit code instead of exiting, so commands are testable in process.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use regstab::check::{Check, Verdict};
use regstab::field::{Field, FieldSpec, PrimeField, Rationals};
use regstab::hilbert::ci_power_checks;
use regstab::ideal::Ideal;
use regstab::par::Exec;
use regstab::rees::{SimpleStabVerdict, StrandContext, StrandOptions, StrandReport};
use regstab::stabilization::{analyze, StabOptions, StabReport};
use regstab::{Error, IdealSpec};

use crate::parse::parse_ideal_file;
use crate::report::{reg_csv, InputSummary, ReportDocument};
use crate::suite::{run_suite, SuiteOptions, SuiteSummary};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_VIOLATION: i32 = 2;
pub const EXIT_UNCERTIFIED: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "regstab",
    version,
    about = "Regularity of powers of m-primary ideals and their Rees strands"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Regularity table of I^t, d, t0, b, c and Stab(I)
    Analyze(AnalyzeArgs),
    /// Betti table, regularity and cohomology ends of one Rees strand
    Strand(StrandArgs),
    /// Randomized checks over generated m-primary ideals
    Suite(SuiteArgs),
    /// Closed dimension formula for powers of a complete intersection
    GvtCheck(GvtArgs),
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Emit the report as JSON
    #[arg(long, conflicts_with = "csv")]
    pub json: bool,
    /// Emit the main table as CSV
    #[arg(long)]
    pub csv: bool,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    pub file: PathBuf,
    /// Horizon T (largest power computed)
    #[arg(long)]
    pub tmax: Option<u32>,
    /// Certification window W
    #[arg(long)]
    pub window: Option<u32>,
    /// Exit 3 when the result is not certified
    #[arg(long)]
    pub strict: bool,
    /// Also confirm Stab through the Rees strand at b (prime fields only)
    #[arg(long)]
    pub check_strand: bool,
    #[arg(long, env = "REGSTAB_SEED", default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct StrandArgs {
    pub file: PathBuf,
    /// Strand offset mu (must exceed -n)
    #[arg(long, allow_hyphen_values = true)]
    pub mu: i64,
    #[arg(long, env = "REGSTAB_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Horizon T of the stabilization analysis
    #[arg(long)]
    pub tmax: Option<u32>,
    /// Last internal degree of the Betti tables
    #[arg(long)]
    pub cutoff: Option<i64>,
    /// Worker threads (0 = all cores)
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
    /// Exit 3 when some check is not certified
    #[arg(long)]
    pub strict: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SuiteArgs {
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    #[arg(long, default_value_t = 4)]
    pub max_deg: u32,
    #[arg(long, default_value_t = 100)]
    pub count: u32,
    #[arg(long, env = "REGSTAB_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Worker threads (0 = all cores)
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
    #[arg(long)]
    pub tmax: Option<u32>,
    /// Skip the Rees strand checks
    #[arg(long)]
    pub no_strands: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct GvtArgs {
    pub file: PathBuf,
    /// Largest power checked
    #[arg(long, default_value_t = 5)]
    pub tmax: u32,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn error(e: &Error) -> Outcome {
        let code = match e {
            Error::TheoremViolation(_) => EXIT_VIOLATION,
            _ => EXIT_INPUT,
        };
        let hint = match e {
            Error::HorizonTooSmall { .. } => "; raise --tmax",
            Error::CutoffTooLarge { .. } => "; raise --tmax or lower --cutoff",
            Error::FieldTooSmall { .. } => "; use `field Fp <p>` with p >= 101",
            _ => "",
        };
        Outcome {
            code,
            stdout: String::new(),
            stderr: format!("error: {e}{hint}\n"),
        }
    }

    fn input(msg: String) -> Outcome {
        Outcome {
            code: EXIT_INPUT,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }
}

pub fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Analyze(a) => cmd_analyze(&a),
        Command::Strand(a) => cmd_strand(&a),
        Command::Suite(a) => cmd_suite(&a),
        Command::GvtCheck(a) => cmd_gvt(&a),
    }
}

fn load(path: &PathBuf) -> Result<IdealSpec, Outcome> {
    let text = std::fs::read_to_string(path).map_err(|e| Outcome::input(format!("{}: {e}", path.display())))?;
    parse_ideal_file(&text).map_err(|e| Outcome::input(format!("{}: {e}", path.display())))
}

fn summary<F: Field>(ideal: &Ideal<F>) -> InputSummary {
    InputSummary {
        field: ideal.field().spec().to_string(),
        vars: ideal.vars().to_vec(),
        gens: ideal
            .gens()
            .iter()
            .map(|g| g.format(ideal.field(), ideal.vars()))
            .collect(),
    }
}

fn emit(doc: &ReportDocument, json: bool, text: String, code: i32) -> Outcome {
    Outcome {
        code,
        stdout: if json { doc.to_json() } else { text },
        stderr: String::new(),
    }
}

fn verdict_code(verdict: Verdict, certified: bool, strict: bool) -> i32 {
    match verdict {
        Verdict::Fail => EXIT_VIOLATION,
        _ if strict && (!certified || verdict == Verdict::Inconclusive) => EXIT_UNCERTIFIED,
        _ => EXIT_OK,
    }
}

fn write_checks(out: &mut String, checks: &[Check]) {
    out.push_str("checks:\n");
    for c in checks {
        let _ = writeln!(out, "  {c}");
    }
}

// analyze

fn cmd_analyze(a: &AnalyzeArgs) -> Outcome {
    let spec = match load(&a.file) {
        Ok(s) => s,
        Err(o) => return o,
    };
    let opts = StabOptions {
        horizon: a.tmax,
        window: a.window,
        exec: Exec::Parallel,
    };
    let result = match spec.field {
        FieldSpec::Prime(p) => PrimeField::new(p)
            .and_then(|f| spec.realize(f))
            .and_then(|i| analyze_prime(&i, opts, a)),
        FieldSpec::Rationals => {
            if a.check_strand {
                Err(Error::Unsupported(
                    "--check-strand needs a prime field; use `field Fp <p>`".into(),
                ))
            } else {
                spec.realize(Rationals)
                    .and_then(|i| Ok((summary(&i), analyze(&i, opts)?.report, None)))
            }
        }
    };
    let (input, report, strand) = match result {
        Ok(r) => r,
        Err(e) => return Outcome::error(&e),
    };
    let mut doc = ReportDocument::new("analyze");
    doc.input = Some(input);
    let mut checks = report.checks.clone();
    let mut certified = report.certified;
    if let Some(v) = &strand {
        doc.seed = Some(a.seed);
        checks.extend(v.checks.iter().cloned());
        certified &= v.confirms_stab();
    }
    doc.finish(checks, certified);
    let mut rep = report;
    rep.certified = certified;
    let text = if a.out.csv {
        reg_csv(&rep.table)
    } else {
        analyze_text(&doc, &rep, strand.as_ref())
    };
    doc.stabilization = Some(rep);
    doc.strand_check = strand;
    let code = verdict_code(doc.verdict, doc.certified, a.strict);
    emit(&doc, a.out.json, text, code)
}

type AnalyzeParts = (InputSummary, StabReport, Option<SimpleStabVerdict>);

fn analyze_prime(ideal: &Ideal<PrimeField>, opts: StabOptions, a: &AnalyzeArgs) -> regstab::Result<AnalyzeParts> {
    let analysis = analyze(ideal, opts)?;
    if !a.check_strand {
        return Ok((summary(ideal), analysis.report, None));
    }
    let report = analysis.report.clone();
    let ctx = StrandContext::from_analysis(
        analysis,
        StrandOptions {
            seed: a.seed,
            stab: opts,
            exec: Exec::Parallel,
            ..Default::default()
        },
    )?;
    Ok((summary(ideal), report, Some(ctx.simple_stab()?)))
}

fn analyze_text(doc: &ReportDocument, r: &StabReport, strand: Option<&SimpleStabVerdict>) -> String {
    let mut s = String::new();
    if let Some(i) = &doc.input {
        let _ = writeln!(s, "ideal ({}) in {}: {}", i.vars.join(", "), i.field, i.gens.join(", "));
    }
    let ip = if r.iprime_is_whole_ideal {
        "I' = I".to_string()
    } else {
        format!("I' = ({})", r.iprime.join(", "))
    };
    let _ = writeln!(s, "n = {}, d = {}, {ip}, reg(I') = {}", r.n, r.d, r.reg_iprime);
    let _ = writeln!(s, "t0 = {} (bound {})", r.t0, r.t0_cap);
    s.push_str("t\treg\tf\n");
    for row in &r.table {
        let _ = writeln!(s, "{}\t{}\t{}", row.t, row.reg, row.f);
    }
    let _ = writeln!(
        s,
        "b = {}, c = {} (first at t = {}), e_b = {}, Stab = {}{}",
        r.b,
        r.c,
        r.c_argmax,
        r.e_b,
        r.stab,
        if r.degenerate { " (zero b-strand, floored)" } else { "" }
    );
    let _ = writeln!(
        s,
        "horizon T = {}, window W = {}, {}",
        r.horizon,
        r.window,
        if doc.certified { "certified" } else { "not certified" }
    );
    if let Some(v) = strand {
        let _ = writeln!(
            s,
            "strand at b: reg_B = {}, end H^1 = {}, reduction seed {}",
            v.betti.reg,
            v.h1.end,
            v.reduction.seed.unwrap_or_default()
        );
    }
    write_checks(&mut s, &doc.checks);
    let _ = writeln!(s, "verdict: {}", doc.verdict);
    s
}

// strand

fn cmd_strand(a: &StrandArgs) -> Outcome {
    let spec = match load(&a.file) {
        Ok(s) => s,
        Err(o) => return o,
    };
    let n = spec.nvars() as i64;
    if a.mu <= -n {
        return Outcome::input(format!("--mu {} must exceed -n = {}", a.mu, -n));
    }
    let FieldSpec::Prime(p) = spec.field else {
        return Outcome::error(&Error::Unsupported(
            "strand computations sample a reduction over a prime field; use `field Fp <p>`".into(),
        ));
    };
    let exec = Exec::Parallel;
    let result = PrimeField::new(p).and_then(|f| spec.realize(f)).and_then(|ideal| {
        let opts = StrandOptions {
            seed: a.seed,
            cutoff: a.cutoff,
            stab: StabOptions {
                horizon: a.tmax,
                window: None,
                exec,
            },
            exec,
        };
        exec.with_jobs(a.jobs, || {
            let ctx = StrandContext::new(&ideal, opts)?;
            let strand = ctx.strand_report(a.mu)?;
            Ok((summary(&ideal), ctx.analysis.report.clone(), strand))
        })
    });
    let (input, report, strand) = match result {
        Ok(r) => r,
        Err(e) => return Outcome::error(&e),
    };
    let mut doc = ReportDocument::new("strand");
    doc.seed = Some(a.seed);
    doc.input = Some(input);
    doc.finish(strand.checks.clone(), report.certified);
    let text = if a.out.csv {
        strand.rees_betti.to_csv()
    } else {
        strand_text(&doc, &report, &strand)
    };
    doc.stabilization = Some(report);
    doc.strand = Some(strand);
    let code = verdict_code(doc.verdict, doc.certified, a.strict);
    emit(&doc, a.out.json, text, code)
}

fn betti_text(s: &mut String, table: &regstab::rees::BettiTable) {
    let _ = write!(s, "  j\\t");
    for t in table.t_min..=table.cutoff {
        let _ = write!(s, "\t{t}");
    }
    s.push('\n');
    for j in 0..=table.ngens {
        let _ = write!(s, "  {j}");
        for t in table.t_min..=table.cutoff {
            let _ = write!(s, "\t{}", table.get(j, t));
        }
        s.push('\n');
    }
}

fn strand_text(doc: &ReportDocument, r: &StabReport, st: &StrandReport) -> String {
    let mut s = String::new();
    if let Some(i) = &doc.input {
        let _ = writeln!(s, "ideal ({}) in {}: {}", i.vars.join(", "), i.field, i.gens.join(", "));
    }
    let _ = writeln!(s, "d = {}, b = {}, Stab = {}, e_b = {}", r.d, r.b, r.stab, r.e_b);
    let _ = writeln!(
        s,
        "strand mu = {}, horizon T = {}, cutoff {}, reduction ({}) from seed {} after {} draw(s)",
        st.mu,
        st.horizon,
        st.cutoff,
        st.reduction.gens.join(", "),
        st.reduction.seed.unwrap_or_default(),
        st.reduction.attempts
    );
    let growth = |g: Option<i64>| g.map_or("unknown".to_string(), |v| v.to_string());
    let _ = writeln!(
        s,
        "Rees strand: reg_B = {}{}, growth degree {}, end H^0 = {}, end H^1 = {}{}",
        st.rees_betti.reg,
        if st.rees_betti.certified { "" } else { " (uncertified)" },
        growth(st.rees_betti.growth_degree),
        st.ends.h0.end,
        st.ends.h1.end,
        if st.ends.h1.certified { "" } else { " (uncertified)" }
    );
    betti_text(&mut s, &st.rees_betti);
    let _ = writeln!(
        s,
        "N strand: reg_B = {}, d(mu) = {}, end H^0 = {}",
        st.n_betti.reg,
        growth(st.d_mu),
        st.n_h0.end
    );
    betti_text(&mut s, &st.n_betti);
    write_checks(&mut s, &doc.checks);
    let _ = writeln!(s, "verdict: {}", doc.verdict);
    s
}

// suite

fn cmd_suite(a: &SuiteArgs) -> Outcome {
    let opts = SuiteOptions {
        n: a.n,
        max_deg: a.max_deg,
        count: a.count,
        seed: a.seed,
        jobs: a.jobs,
        horizon: a.tmax,
        strands: !a.no_strands,
    };
    let summary = match run_suite(&opts) {
        Ok(s) => s,
        Err(e) => return Outcome::error(&e),
    };
    let mut doc = ReportDocument::new("suite");
    doc.seed = Some(a.seed);
    let checks: Vec<Check> = summary
        .instances
        .iter()
        .flat_map(|r| {
            r.open_checks.iter().cloned().map(move |mut c| {
                c.name = format!("instance {}: {}", r.id, c.name);
                c
            })
        })
        .collect();
    doc.finish(checks, summary.inconclusive == 0);
    doc.verdict = summary.verdict();
    let text = suite_text(&summary);
    let code = if summary.fail > 0 { EXIT_VIOLATION } else { EXIT_OK };
    doc.suite = Some(summary);
    emit(&doc, a.json, text, code)
}

fn suite_text(s: &SuiteSummary) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "suite n = {}, max degree {}, {} instances, seed {}, F_{}",
        s.n, s.max_deg, s.count, s.seed, s.prime
    );
    let _ = writeln!(out, "pass {}, inconclusive {}, fail {}", s.pass, s.inconclusive, s.fail);
    for r in &s.instances {
        if r.verdict == Verdict::Pass {
            continue;
        }
        let _ = writeln!(
            out,
            "instance {} (seed {}): {} ({})",
            r.id,
            r.seed,
            r.verdict,
            r.gens.join(", ")
        );
        if let Some(e) = &r.error {
            let _ = writeln!(out, "  error: {e}");
        }
        for c in &r.open_checks {
            let _ = writeln!(out, "  {c}");
        }
        if let Some(f) = &r.ideal_file {
            for line in f.lines() {
                let _ = writeln!(out, "  | {line}");
            }
        }
    }
    let _ = writeln!(out, "verdict: {}", s.verdict());
    out
}

// gvt-check

fn cmd_gvt(a: &GvtArgs) -> Outcome {
    let spec = match load(&a.file) {
        Ok(s) => s,
        Err(o) => return o,
    };
    let result = match spec.field {
        FieldSpec::Prime(p) => PrimeField::new(p)
            .and_then(|f| spec.realize(f))
            .and_then(|i| Ok((summary(&i), ci_power_checks(&i, a.tmax)?))),
        FieldSpec::Rationals => spec
            .realize(Rationals)
            .and_then(|i| Ok((summary(&i), ci_power_checks(&i, a.tmax)?))),
    };
    let (input, checks) = match result {
        Ok(r) => r,
        Err(e) => return Outcome::error(&e),
    };
    let mut doc = ReportDocument::new("gvt-check");
    doc.input = Some(input);
    doc.finish(checks, true);
    let mut text = String::new();
    if let Some(i) = &doc.input {
        let _ = writeln!(
            text,
            "ideal ({}) in {}: {}",
            i.vars.join(", "),
            i.field,
            i.gens.join(", ")
        );
    }
    write_checks(&mut text, &doc.checks);
    let _ = writeln!(text, "verdict: {}", doc.verdict);
    let code = verdict_code(doc.verdict, true, false);
    emit(&doc, a.json, text, code)
}
