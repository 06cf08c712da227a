//! Randomized verification over generated m-primary ideals.

use regstab::check::{Check, Relation, Verdict};
use regstab::field::PrimeField;
use regstab::ideal::Ideal;
use regstab::par::Exec;
use regstab::random::{random_mprimary, InstanceShape};
use regstab::rees::{StrandContext, StrandOptions};
use regstab::stabilization::{analyze, StabOptions};
use regstab::{Bound, Error, Result};
use serde::{Deserialize, Serialize};

use crate::parse::print_prime_ideal;

pub const MAX_N: usize = 4;
pub const MAX_DEG: u32 = 6;
pub const MAX_COUNT: u32 = 500;
pub const SUITE_PRIME: u64 = 32003;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteOptions {
    pub n: usize,
    pub max_deg: u32,
    pub count: u32,
    pub seed: u64,
    pub jobs: usize,
    pub horizon: Option<u32>,
    /// Run the strand checks (`Stab` via the Rees strand and the
    /// regularity comparison at `b - 1, b, b + 1`).
    pub strands: bool,
}

impl SuiteOptions {
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.n > MAX_N {
            return Err(Error::Input(format!("--n must be in 1..={MAX_N}")));
        }
        if self.max_deg == 0 || self.max_deg > MAX_DEG {
            return Err(Error::Input(format!("--max-deg must be in 1..={MAX_DEG}")));
        }
        if self.count > MAX_COUNT {
            return Err(Error::Input(format!("--count must be at most {MAX_COUNT}")));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceRecord {
    pub id: u32,
    pub seed: u64,
    pub gens: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stab: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reg_b: Option<Bound>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub end_h1: Option<Bound>,
    pub degenerate: bool,
    pub checks_run: usize,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    /// Checks that did not pass with certification.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub open_checks: Vec<Check>,
    /// The ideal as an ideal file, kept for failing instances.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ideal_file: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteSummary {
    pub n: usize,
    pub max_deg: u32,
    pub count: u32,
    pub seed: u64,
    pub prime: u64,
    pub strands: bool,
    pub pass: u32,
    pub inconclusive: u32,
    pub fail: u32,
    pub instances: Vec<InstanceRecord>,
}

impl SuiteSummary {
    pub fn verdict(&self) -> Verdict {
        if self.fail > 0 {
            Verdict::Fail
        } else if self.inconclusive > 0 {
            Verdict::Inconclusive
        } else {
            Verdict::Pass
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &InstanceRecord> {
        self.instances.iter().filter(|r| r.verdict == Verdict::Fail)
    }
}

pub fn instance_seed(seed: u64, id: u32) -> u64 {
    seed.wrapping_add(id as u64)
}

pub fn run_suite(opts: &SuiteOptions) -> Result<SuiteSummary> {
    opts.validate()?;
    let field = PrimeField::new(SUITE_PRIME)?;
    let shape = InstanceShape::new(opts.n, opts.max_deg);
    let ids: Vec<u32> = (0..opts.count).collect();
    let exec = Exec::Parallel;
    let instances = exec.with_jobs(opts.jobs, || {
        exec.map(ids, |id| {
            let seed = instance_seed(opts.seed, id);
            let ideal = random_mprimary(&field, shape, seed);
            run_instance(&ideal, id, seed, opts)
        })
    });
    let count = |v: Verdict| instances.iter().filter(|r| r.verdict == v).count() as u32;
    Ok(SuiteSummary {
        n: opts.n,
        max_deg: opts.max_deg,
        count: opts.count,
        seed: opts.seed,
        prime: SUITE_PRIME,
        strands: opts.strands,
        pass: count(Verdict::Pass),
        inconclusive: count(Verdict::Inconclusive),
        fail: count(Verdict::Fail),
        instances,
    })
}

fn run_instance(ideal: &Ideal<PrimeField>, id: u32, seed: u64, opts: &SuiteOptions) -> InstanceRecord {
    let field = ideal.field();
    let mut rec = InstanceRecord {
        id,
        seed,
        gens: ideal.gens().iter().map(|g| g.format(field, ideal.vars())).collect(),
        d: None,
        b: None,
        stab: None,
        reg_b: None,
        end_h1: None,
        degenerate: false,
        checks_run: 0,
        verdict: Verdict::Pass,
        error: None,
        open_checks: Vec::new(),
        ideal_file: None,
    };
    let mut checks = Vec::new();
    if let Err(e) = collect_checks(ideal, opts, &mut rec, &mut checks) {
        rec.verdict = match e {
            Error::TheoremViolation(_) => Verdict::Fail,
            _ => Verdict::Inconclusive,
        };
        rec.error = Some(e.to_string());
    }
    rec.checks_run = checks.len();
    rec.verdict = rec.verdict.max(Verdict::combine(&checks));
    rec.open_checks = checks.into_iter().filter(|c| !(c.pass && c.certified)).collect();
    if rec.verdict == Verdict::Fail {
        rec.ideal_file = Some(print_prime_ideal(field, ideal.vars(), ideal.gens()));
    }
    rec
}

fn collect_checks(
    ideal: &Ideal<PrimeField>,
    opts: &SuiteOptions,
    rec: &mut InstanceRecord,
    checks: &mut Vec<Check>,
) -> Result<()> {
    let stab_opts = StabOptions {
        horizon: opts.horizon,
        window: None,
        exec: Exec::Sequential,
    };
    let analysis = analyze(ideal, stab_opts)?;
    let report = &analysis.report;
    rec.d = Some(report.d);
    rec.b = Some(report.b);
    rec.stab = Some(report.stab);
    rec.degenerate = report.degenerate;
    checks.extend(report.checks.iter().cloned());
    if !report.certified {
        checks.push(
            Check::compare(
                "f constant on the trailing window",
                "f-window-stable",
                Bound::At(0),
                Relation::Eq,
                Bound::At(0),
                false,
            )
            .with_note("horizon too small to certify b"),
        );
    }
    if !opts.strands || ideal.nvars() < 2 {
        return Ok(());
    }
    let ctx = StrandContext::from_analysis(
        analysis,
        StrandOptions {
            seed: rec.seed,
            exec: Exec::Sequential,
            ..Default::default()
        },
    )?;
    let simple = ctx.simple_stab()?;
    rec.reg_b = Some(simple.betti.reg);
    rec.end_h1 = Some(simple.h1.end);
    checks.extend(simple.checks);
    for mu in ctx.compcoh_offsets() {
        let v = ctx.compcoh(mu)?;
        checks.extend(v.checks.into_iter().map(|mut c| {
            c.name = format!("mu={mu}: {}", c.name);
            c
        }));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts(count: u32) -> SuiteOptions {
        SuiteOptions {
            n: 2,
            max_deg: 4,
            count,
            seed: 5,
            jobs: 2,
            horizon: None,
            strands: true,
        }
    }

    #[test]
    fn empty_suite_passes() {
        let s = run_suite(&opts(0)).unwrap();
        assert_eq!(s.verdict(), Verdict::Pass);
        assert!(s.instances.is_empty());
    }

    #[test]
    fn deterministic_and_ordered() {
        let a = run_suite(&opts(12)).unwrap();
        let b = run_suite(&SuiteOptions { jobs: 1, ..opts(12) }).unwrap();
        assert_eq!(a, b);
        assert!(a.instances.windows(2).all(|w| w[0].id < w[1].id));
        assert_eq!(a.fail, 0);
        assert_eq!(a.pass + a.inconclusive, 12);
    }

    #[test]
    fn caps() {
        assert!(run_suite(&SuiteOptions { n: 5, ..opts(1) }).is_err());
        assert!(run_suite(&SuiteOptions { max_deg: 7, ..opts(1) }).is_err());
        assert!(run_suite(&SuiteOptions { count: 501, ..opts(1) }).is_err());
    }
}
