//! Invariants of the regularity of powers `reg(I^t)` of an m-primary ideal:
//! the generating degree `d`, the truncation `I' = (I_{<=d})`, the
//! containment index `t0`, the table `f(t) = reg(I^t) - dt`, its eventual
//! value `b`, its maximum `c`, the ends `e_mu` of the strands
//! `N_{mu,*} = ((A/I^t)_{mu+td})_t`, and the stabilization index.

use serde::{Deserialize, Serialize};

use crate::bound::Bound;
use crate::check::{Check, Relation, Verdict};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::{groebner, GroebnerBasis};
use crate::hilbert::{hilbert_function, reg_mprimary};
use crate::ideal::Ideal;
use crate::par::Exec;

/// Gröbner bases of `I, I^2, ..., I^T`.
#[derive(Clone, Debug)]
pub struct PowerTower<F: Field> {
    ideal: Ideal<F>,
    bases: Vec<GroebnerBasis<F>>,
}

impl<F: Field> PowerTower<F> {
    /// Each power is computed from the reduced basis of the previous one:
    /// `I^t = I^{t-1} * I`.
    pub fn new(ideal: &Ideal<F>, horizon: u32) -> Self {
        let mut tower = PowerTower {
            ideal: ideal.clone(),
            bases: vec![groebner(ideal)],
        };
        tower.extend(horizon);
        tower
    }

    /// Computes every power independently from the generators of `I`.
    pub fn new_independent(ideal: &Ideal<F>, horizon: u32, exec: Exec) -> Result<Self> {
        let bases = exec
            .map((1..=horizon.max(1)).collect(), |t| ideal.power(t).map(|p| groebner(&p)))
            .into_iter()
            .collect::<Result<Vec<_>>>()?;
        Ok(PowerTower {
            ideal: ideal.clone(),
            bases,
        })
    }

    pub fn extend(&mut self, horizon: u32) {
        while (self.bases.len() as u32) < horizon {
            let last = self.bases.last().unwrap();
            let prev = Ideal::new(
                self.ideal.field().clone(),
                self.ideal.vars().to_vec(),
                last.basis().to_vec(),
            )
            .expect("reduced basis elements are homogeneous and nonzero");
            let next = prev.product(&self.ideal);
            self.bases.push(groebner(&next));
        }
    }

    pub fn ideal(&self) -> &Ideal<F> {
        &self.ideal
    }

    pub fn horizon(&self) -> u32 {
        self.bases.len() as u32
    }

    /// Basis of `I^t`, `1 <= t <= horizon`.
    pub fn get(&self, t: u32) -> &GroebnerBasis<F> {
        assert!(t >= 1 && t <= self.horizon(), "power {t} outside the tower");
        &self.bases[t as usize - 1]
    }

    /// `dim_k N_{mu,t} = dim_k (A/I^t)_{mu+td}`.
    pub fn n_dim(&self, d: u32, mu: i64, t: u32) -> u64 {
        hilbert_function(self.get(t), mu + (t * d) as i64)
    }
}

/// `d`, the truncation `I'` and its regularity.
#[derive(Clone, Debug)]
pub struct Truncation<F: Field> {
    pub d: u32,
    pub iprime: Ideal<F>,
    pub iprime_basis: GroebnerBasis<F>,
    pub reg_iprime: i64,
}

fn exact(b: Bound) -> i64 {
    b.value().expect("regularity of an m-primary ideal is finite")
}

/// Smallest `mu` with `(I_{<=mu})` m-primary, scanning the generator degrees.
pub fn compute_d<F: Field>(ideal: &Ideal<F>) -> Result<Truncation<F>> {
    let full = groebner(ideal);
    if let Some(i) = full.missing_pure_power() {
        return Err(Error::NotMPrimary {
            variable: ideal.vars()[i].clone(),
        });
    }
    let mut degrees = ideal.gen_degrees();
    degrees.sort_unstable();
    degrees.dedup();
    for mu in degrees {
        let iprime = ideal.up_to_degree(mu);
        let g = groebner(&iprime);
        if g.is_m_primary() {
            let reg_iprime = exact(reg_mprimary(&g)?);
            return Ok(Truncation {
                d: mu,
                iprime,
                iprime_basis: g,
                reg_iprime,
            });
        }
    }
    unreachable!("the full generator set is m-primary")
}

/// `max(1, ceil((reg(I') - d) / (d + 1)))`.
pub fn t0_cap(reg_iprime: i64, d: u32) -> u32 {
    let d = d as i64;
    let num = reg_iprime - d;
    let q = if num <= 0 { 0 } else { (num + d) / (d + 1) };
    q.max(1) as u32
}

/// Smallest `t >= 1` with `m^d I^t` contained in `I'`. The scan stops at the
/// proven cap; running past it is reported as a theorem violation.
pub fn compute_t0<F: Field>(ideal: &Ideal<F>, trunc: &Truncation<F>) -> Result<u32> {
    let cap = t0_cap(trunc.reg_iprime, trunc.d);
    let md = ideal.maximal_power(trunc.d);
    for t in 1..=cap {
        let prod = md.product(&ideal.power(t)?);
        if trunc.iprime_basis.contains_ideal(&prod) {
            return Ok(t);
        }
    }
    Err(Error::TheoremViolation(format!(
        "m^d I^t is not contained in I' for any t <= {cap}, the proven bound on t0"
    )))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegRow {
    pub t: u32,
    pub reg: i64,
    pub f: i64,
}

/// `(t, reg(I^t), reg(I^t) - dt)` for `t = 1..=T`.
pub fn reg_table<F: Field>(tower: &PowerTower<F>, d: u32, exec: Exec) -> Result<Vec<RegRow>> {
    exec.map((1..=tower.horizon()).collect(), |t| {
        let reg = exact(reg_mprimary(tower.get(t))?);
        Ok(RegRow {
            t,
            reg,
            f: reg - (d * t) as i64,
        })
    })
    .into_iter()
    .collect()
}

/// `dim N_{mu,t}` for `t = 1..=T`.
pub fn n_strand_dimensions<F: Field>(tower: &PowerTower<F>, d: u32, mu: i64) -> Vec<u64> {
    (1..=tower.horizon()).map(|t| tower.n_dim(d, mu, t)).collect()
}

/// `dim N_{mu,t}` on the rectangle `mu_min..=mu_max`, `t = 1..=T`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NGrid {
    pub mu_min: i64,
    /// `rows[k][t - 1]` is `dim N_{mu_min + k, t}`.
    pub rows: Vec<Vec<u64>>,
}

impl NGrid {
    pub fn compute<F: Field>(tower: &PowerTower<F>, d: u32, mu_min: i64, mu_max: i64, exec: Exec) -> NGrid {
        let rows = exec.map_range(mu_min..mu_max + 1, |mu| n_strand_dimensions(tower, d, mu));
        NGrid { mu_min, rows }
    }

    pub fn horizon(&self) -> u32 {
        self.rows.first().map_or(0, |r| r.len() as u32)
    }

    pub fn mu_max(&self) -> i64 {
        self.mu_min + self.rows.len() as i64 - 1
    }

    pub fn get(&self, mu: i64, t: u32) -> Option<u64> {
        let k = usize::try_from(mu - self.mu_min).ok()?;
        self.rows.get(k)?.get((t as usize).checked_sub(1)?).copied()
    }

    /// Last `t` with `N_{mu,t} != 0`; `>= T` when the strand is nonzero at
    /// the horizon.
    pub fn end(&self, mu: i64) -> Option<Bound> {
        let k = usize::try_from(mu - self.mu_min).ok()?;
        Some(strand_end(self.rows.get(k)?))
    }
}

/// End of a strand given by its dimensions at `t = 1..=T`.
pub fn strand_end(dims: &[u64]) -> Bound {
    let t_max = dims.len() as i64;
    match dims.iter().rposition(|&x| x != 0) {
        None => Bound::NegInf,
        Some(k) if k as i64 + 1 == t_max => Bound::AtLeast(t_max),
        Some(k) => Bound::At(k as i64 + 1),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// `N_{mu,t} = 0` but `N_{mu+1,t} != 0`.
    Mu,
    /// `N_{mu,t} = 0` but `N_{mu,t+1} != 0` with `t >= t0`.
    T,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridViolation {
    pub mu: i64,
    pub t: u32,
    pub direction: Direction,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonotonicityReport {
    pub pass: bool,
    pub violations: Vec<GridViolation>,
}

/// Zeros must propagate to larger `mu` for every `t`, and to larger `t` once
/// `t >= t0`.
pub fn verify_monotonicity(grid: &NGrid, t0: u32) -> MonotonicityReport {
    let mut violations = Vec::new();
    let horizon = grid.horizon();
    for (k, row) in grid.rows.iter().enumerate() {
        let mu = grid.mu_min + k as i64;
        for t in 1..=horizon {
            if row[t as usize - 1] != 0 {
                continue;
            }
            if grid.get(mu + 1, t).is_some_and(|x| x != 0) {
                violations.push(GridViolation {
                    mu,
                    t,
                    direction: Direction::Mu,
                });
            }
            if t >= t0 && t < horizon && row[t as usize] != 0 {
                violations.push(GridViolation {
                    mu,
                    t,
                    direction: Direction::T,
                });
            }
        }
    }
    MonotonicityReport {
        pass: violations.is_empty(),
        violations,
    }
}

/// The two bounds on `t0` and `reg(I')`, evaluated exactly.
pub fn t0_bound_checks(n: usize, d: u32, reg_iprime: i64, t0: u32) -> Vec<Check> {
    let reg_cap = (d as i64 - 1) * n as i64 + 1;
    let cap = t0_cap(reg_iprime, d);
    vec![
        Check::compare(
            "reg(I') <= (d-1)n+1",
            "truncation-regularity-bound",
            Bound::At(reg_iprime),
            Relation::Le,
            Bound::At(reg_cap),
            true,
        )
        .with_note(format!("slack {}", reg_cap - reg_iprime)),
        Check::compare(
            "t0 <= max(1, ceil((reg(I')-d)/(d+1)))",
            "t0-bound",
            Bound::At(t0 as i64),
            Relation::Le,
            Bound::At(cap as i64),
            true,
        )
        .with_note(format!("slack {}", cap as i64 - t0 as i64)),
    ]
}

pub fn verify_t0_bounds<F: Field>(ideal: &Ideal<F>) -> Result<Vec<Check>> {
    let trunc = compute_d(ideal)?;
    let t0 = compute_t0(ideal, &trunc)?;
    Ok(t0_bound_checks(ideal.nvars(), trunc.d, trunc.reg_iprime, t0))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct StabOptions {
    /// Horizon `T`; default `max(2n, t0 + n, 8)`.
    pub horizon: Option<u32>,
    /// Certification window `W`; default `n`.
    pub window: Option<u32>,
    pub exec: Exec,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EEntry {
    pub mu: i64,
    pub e: Bound,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabReport {
    pub n: usize,
    pub d: u32,
    pub iprime: Vec<String>,
    pub iprime_is_whole_ideal: bool,
    pub reg_iprime: i64,
    pub t0: u32,
    pub t0_cap: u32,
    pub table: Vec<RegRow>,
    pub b: i64,
    pub c: i64,
    pub c_argmax: u32,
    pub e_table: Vec<EEntry>,
    pub e_b: Bound,
    pub stab: u32,
    /// `e_b = -inf`: the strand `N_{b,*}` is zero and `Stab` is floored at 1.
    pub degenerate: bool,
    pub horizon: u32,
    pub window: u32,
    /// `f` is constant on the last `window` rows (and, when a strand
    /// verification ran, it agreed).
    pub certified: bool,
    pub monotonicity: MonotonicityReport,
    pub checks: Vec<Check>,
}

impl StabReport {
    pub fn verdict(&self) -> Verdict {
        Verdict::combine(&self.checks)
    }

    pub fn f(&self, t: u32) -> Option<i64> {
        self.table.get((t as usize).checked_sub(1)?).map(|r| r.f)
    }
}

/// A finished report together with the power tower it was computed from.
#[derive(Clone, Debug)]
pub struct StabAnalysis<F: Field> {
    pub report: StabReport,
    pub trunc: Truncation<F>,
    pub tower: PowerTower<F>,
}

/// `1 + max{t : f(t) > b}`, at least 1.
pub fn stab_from_table(table: &[RegRow], b: i64) -> u32 {
    table.iter().filter(|r| r.f > b).map(|r| r.t + 1).max().unwrap_or(1)
}

/// `max(1, e_b + 1)`.
pub fn stab_from_end(e_b: Bound) -> Option<u32> {
    match e_b {
        Bound::NegInf => Some(1),
        Bound::At(e) => Some((e + 1).max(1) as u32),
        _ => None,
    }
}

pub fn default_horizon(n: usize, t0: u32) -> u32 {
    (2 * n as u32).max(t0 + n as u32).max(8)
}

pub fn analyze<F: Field>(ideal: &Ideal<F>, opts: StabOptions) -> Result<StabAnalysis<F>> {
    let n = ideal.nvars();
    let trunc = compute_d(ideal)?;
    let d = trunc.d;
    let t0 = compute_t0(ideal, &trunc)?;
    let window = opts.window.unwrap_or(n as u32).max(1);
    let horizon = opts.horizon.unwrap_or_else(|| default_horizon(n, t0).max(t0 + window));
    if horizon < t0 + window {
        return Err(Error::HorizonTooSmall {
            given: horizon as usize,
            needed: (t0 + window) as usize,
        });
    }
    let tower = PowerTower::new(ideal, horizon);
    let table = reg_table(&tower, d, opts.exec)?;
    let b = table.last().unwrap().f;
    let (c_argmax, c) = table
        .iter()
        .map(|r| (r.t, r.f))
        .fold((0, i64::MIN), |acc, x| if x.1 > acc.1 { x } else { acc });
    let stab = stab_from_table(&table, b);
    let tail = &table[table.len() - window as usize..];
    let certified = tail.iter().all(|r| r.f == b);

    let mu_lo = b.min(0);
    let grid = NGrid::compute(&tower, d, mu_lo, c + 1, opts.exec);
    let e_table: Vec<EEntry> = (mu_lo..=c + 1)
        .map(|mu| EEntry {
            mu,
            e: grid.end(mu).unwrap(),
        })
        .collect();
    let e_b = grid.end(b).unwrap();
    let monotonicity = verify_monotonicity(&grid, t0);

    let mut checks = t0_bound_checks(n, d, trunc.reg_iprime, t0);
    checks.extend(table_checks(&table, &grid, t0, b, c, c_argmax, stab, e_b));
    checks.push(
        Check::compare(
            "zero propagation in N (mu up; t up for t >= t0)",
            "strand-zero-propagation",
            Bound::At(monotonicity.violations.len() as i64),
            Relation::Eq,
            Bound::At(0),
            true,
        )
        .with_note(format!("grid mu={}..={}, t=1..={}", mu_lo, c + 1, horizon)),
    );

    let report = StabReport {
        n,
        d,
        iprime: trunc
            .iprime
            .gens()
            .iter()
            .map(|g| g.format(ideal.field(), ideal.vars()))
            .collect(),
        iprime_is_whole_ideal: trunc.iprime.gens().len() == ideal.gens().len(),
        reg_iprime: trunc.reg_iprime,
        t0,
        t0_cap: t0_cap(trunc.reg_iprime, d),
        table,
        b,
        c,
        c_argmax,
        e_table,
        e_b,
        stab,
        degenerate: e_b == Bound::NegInf,
        horizon,
        window,
        certified,
        monotonicity,
        checks,
    };
    Ok(StabAnalysis { report, trunc, tower })
}

pub fn stabilization_report<F: Field>(ideal: &Ideal<F>, opts: StabOptions) -> Result<StabReport> {
    Ok(analyze(ideal, opts)?.report)
}

#[allow(clippy::too_many_arguments)]
fn table_checks(
    table: &[RegRow],
    grid: &NGrid,
    t0: u32,
    b: i64,
    c: i64,
    c_argmax: u32,
    stab: u32,
    e_b: Bound,
) -> Vec<Check> {
    let late: Vec<&RegRow> = table.iter().filter(|r| r.t >= t0).collect();
    let increases: Vec<u32> = late.windows(2).filter(|w| w[1].f > w[0].f).map(|w| w[1].t).collect();
    let mut dec = Check::compare(
        "f(t+1) <= f(t) for t >= t0 (number of increases)",
        "f-weakly-decreasing",
        Bound::At(increases.len() as i64),
        Relation::Eq,
        Bound::At(0),
        true,
    );
    if let Some(t) = increases.first() {
        dec = dec.with_note(format!("first increase at t = {t}"));
    }
    let min_late = late.iter().map(|r| r.f).min().unwrap_or(b);

    let horizon = grid.horizon();
    let mut nonzero_below_b = 0;
    for mu in 0..b {
        for t in t0..=horizon {
            if grid.get(mu, t) == Some(0) {
                nonzero_below_b += 1;
            }
        }
    }
    let e_at = |mu: i64| grid.end(mu).unwrap_or(Bound::NegInf);
    let stab_end = stab_from_end(e_b).map_or(Bound::AtLeast(horizon as i64 + 1), |s| Bound::At(s as i64));

    vec![
        dec,
        Check::compare(
            "min f(t) over t >= t0 >= b",
            "f-bounded-by-b",
            Bound::At(min_late),
            Relation::Ge,
            Bound::At(b),
            true,
        ),
        Check::compare(
            "argmax of f <= t0",
            "c-attained-early",
            Bound::At(c_argmax as i64),
            Relation::Le,
            Bound::At(t0 as i64),
            true,
        ),
        Check::compare(
            "1 + max{t : f(t) > b} = max(1, e_b + 1)",
            "stab-from-end-of-b-strand",
            Bound::At(stab as i64),
            Relation::Eq,
            stab_end,
            true,
        ),
        Check::compare(
            "zeros of N_{mu,t} with 0 <= mu < b, t >= t0",
            "strands-below-b-nonzero",
            Bound::At(nonzero_below_b),
            Relation::Eq,
            Bound::At(0),
            true,
        ),
        Check::compare(
            "e_c = -inf",
            "ends-vanish-from-c",
            e_at(c),
            Relation::Eq,
            Bound::NegInf,
            true,
        ),
    ]
}
