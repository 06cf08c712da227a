//! Numeric verification on one ideal: the stabilization index against the
//! strand `(R_I)_{b,*}`, and the comparison of `reg_B` between the Rees
//! strands and the strands of `N`.

use serde::{Deserialize, Serialize};

use crate::bound::Bound;
use crate::check::{Check, Relation, Verdict};
use crate::error::Result;
use crate::field::Field;
use crate::ideal::Ideal;
use crate::par::Exec;
use crate::rees::ambient::ReesStrand;
use crate::rees::cohomology::{h0_end, torsion_free_end, CohEndReport, EndResult};
use crate::rees::growth::growth_degree;
use crate::rees::koszul::{koszul_betti, BettiTable};
use crate::rees::reduction::{sample_general_reduction, Reduction, ReductionInfo};
use crate::stabilization::{analyze, StabAnalysis, StabOptions};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct StrandOptions {
    /// Seed for the general reduction.
    pub seed: u64,
    /// Last internal degree of the Betti tables; default
    /// `max(Stab, n) + 2n - 1`.
    pub cutoff: Option<i64>,
    pub stab: StabOptions,
    pub exec: Exec,
}

/// `max(Stab, n) + 2n - 1`: room for `reg_B <= max(Stab, n)`, for syzygies up
/// to homological degree `n - 1`, and for an empty window of width `n`.
pub fn default_cutoff(n: usize, stab: u32) -> i64 {
    (stab as i64).max(n as i64) + 2 * n as i64 - 1
}

/// Everything the strand verifiers share: the stabilization analysis, a
/// sampled reduction and the power tower extended to `cutoff + n + 1`.
#[derive(Clone, Debug)]
pub struct StrandContext<F: Field> {
    pub analysis: StabAnalysis<F>,
    pub reduction: Reduction<F>,
    pub cutoff: i64,
    pub horizon: u32,
    pub exec: Exec,
}

impl<F: Field> StrandContext<F> {
    pub fn new(ideal: &Ideal<F>, opts: StrandOptions) -> Result<Self> {
        let stab_opts = StabOptions {
            exec: opts.exec,
            ..opts.stab
        };
        let analysis = analyze(ideal, stab_opts)?;
        Self::from_analysis(analysis, opts)
    }

    pub fn from_analysis(mut analysis: StabAnalysis<F>, opts: StrandOptions) -> Result<Self> {
        let n = analysis.report.n;
        let cutoff = opts
            .cutoff
            .unwrap_or_else(|| default_cutoff(n, analysis.report.stab))
            .max(0);
        let horizon = (cutoff + n as i64 + 1) as u32;
        analysis.tower.extend(horizon);
        let reduction = sample_general_reduction(analysis.tower.ideal(), analysis.trunc.d, opts.seed)?;
        Ok(StrandContext {
            analysis,
            reduction,
            cutoff,
            horizon,
            exec: opts.exec,
        })
    }

    pub fn n(&self) -> usize {
        self.analysis.report.n
    }

    pub fn rees_strand(&self, mu: i64) -> Result<ReesStrand<F>> {
        ReesStrand::build(&self.analysis.tower, &self.reduction, mu, self.horizon)
    }

    pub fn simple_stab(&self) -> Result<SimpleStabVerdict> {
        let rep = &self.analysis.report;
        let n = self.n();
        let rs = self.rees_strand(rep.b)?;
        let betti = rs.betti(self.cutoff, self.exec)?;
        let h1 = rs.h1_end(self.cutoff)?;
        let n_h0 = h0_end(&rs.n_strand());
        let checks = simple_stab_checks(n, rep.stab, rep.e_b, rep.certified, &betti, &h1, &n_h0);
        let verdict = Verdict::combine(&checks);
        Ok(SimpleStabVerdict {
            n,
            b: rep.b,
            stab: rep.stab,
            e_b: rep.e_b,
            degenerate: rep.degenerate,
            stab_certified: rep.certified,
            cutoff: self.cutoff,
            horizon: self.horizon,
            reduction: self.reduction.info(),
            betti,
            h1,
            n_h0,
            checks,
            verdict,
        })
    }

    pub fn compcoh(&self, mu: i64) -> Result<CompCohVerdict> {
        let n = self.n();
        let rs = self.rees_strand(mu)?;
        let rees_betti = rs.betti(self.cutoff, self.exec)?;
        let nstr = rs.n_strand();
        let n_betti = koszul_betti(&nstr, self.cutoff, self.exec)?;
        let n_dims: Vec<u64> = nstr.dims().iter().map(|&x| x as u64).collect();
        let d_mu = growth_degree(&n_dims, n).map(|g| g + 1);
        let cd = rees_betti.growth_degree.map(|g| g + 1);
        let lower_degree_gens = self
            .analysis
            .tower
            .ideal()
            .gen_degrees()
            .iter()
            .any(|&e| e < self.analysis.trunc.d);
        let checks = compcoh_checks(n, &rees_betti, &n_betti, d_mu, cd, lower_degree_gens);
        let verdict = Verdict::combine(&checks);
        Ok(CompCohVerdict {
            mu,
            rees_betti,
            n_betti,
            d_mu,
            cd,
            checks,
            verdict,
        })
    }

    /// Everything computed for one offset: Betti tables of `(R_I)_{mu,*}` and
    /// `N_{mu,*}`, cohomology ends, dimensions, and the checks that apply
    /// (the `Stab` checks only at `mu = b`).
    pub fn strand_report(&self, mu: i64) -> Result<StrandReport> {
        let rep = &self.analysis.report;
        let n = self.n();
        let rs = self.rees_strand(mu)?;
        let rees_betti = rs.betti(self.cutoff, self.exec)?;
        let nstr = rs.n_strand();
        let n_betti = koszul_betti(&nstr, self.cutoff, self.exec)?;
        let h1 = rs.h1_end(self.cutoff)?;
        let n_h0 = h0_end(&nstr);
        let n_dims: Vec<u64> = nstr.dims().iter().map(|&x| x as u64).collect();
        let d_mu = growth_degree(&n_dims, n).map(|g| g + 1);
        let cd = rees_betti.growth_degree.map(|g| g + 1);
        let lower_degree_gens = self
            .analysis
            .tower
            .ideal()
            .gen_degrees()
            .iter()
            .any(|&e| e < self.analysis.trunc.d);
        let rees_dims = rs.dims();
        let mut checks = compcoh_checks(n, &rees_betti, &n_betti, d_mu, cd, lower_degree_gens);
        if mu == rep.b {
            checks.extend(simple_stab_checks(
                n,
                rep.stab,
                rep.e_b,
                rep.certified,
                &rees_betti,
                &h1,
                &n_h0,
            ));
        }
        let drops = rees_dims.windows(2).filter(|w| w[1] < w[0]).count();
        checks.push(Check::compare(
            "dim (R_mu)_t weakly increasing (torsion free)",
            "torsion-free-dims-nondecreasing",
            Bound::At(drops as i64),
            Relation::Eq,
            Bound::At(0),
            true,
        ));
        let verdict = Verdict::combine(&checks);
        Ok(StrandReport {
            mu,
            b: rep.b,
            cutoff: self.cutoff,
            horizon: self.horizon,
            reduction: self.reduction.info(),
            rees_dims,
            n_dims,
            rees_betti,
            n_betti,
            ends: CohEndReport {
                h0: torsion_free_end(),
                h1,
            },
            n_h0,
            d_mu,
            cd,
            checks,
            verdict,
        })
    }

    /// Offsets `mu in {b-1, b, b+1}` with `mu > -n`.
    pub fn compcoh_offsets(&self) -> Vec<i64> {
        let b = self.analysis.report.b;
        (b - 1..=b + 1).filter(|&mu| mu > -(self.n() as i64)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrandReport {
    pub mu: i64,
    pub b: i64,
    pub cutoff: i64,
    pub horizon: u32,
    pub reduction: ReductionInfo,
    /// `dim (I^t)_{mu+td}` for `t = 0..=horizon`.
    pub rees_dims: Vec<u64>,
    /// `dim N_{mu,t}` for `t = 1..=horizon`.
    pub n_dims: Vec<u64>,
    pub rees_betti: BettiTable,
    pub n_betti: BettiTable,
    /// `H^0` and `H^1` ends of the Rees strand.
    pub ends: CohEndReport,
    /// Torsion end of `N_{mu,*}`.
    pub n_h0: EndResult,
    pub d_mu: Option<i64>,
    pub cd: Option<i64>,
    pub checks: Vec<Check>,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimpleStabVerdict {
    pub n: usize,
    pub b: i64,
    pub stab: u32,
    pub e_b: Bound,
    /// `N_{b,*} = 0`: `Stab` is floored at 1 and compared with
    /// `max(1, end(H^1) + 1)`; the `H^1` end then only sees the ambient
    /// pieces `A_{b+td}`, `t < 0`.
    pub degenerate: bool,
    pub stab_certified: bool,
    pub cutoff: i64,
    pub horizon: u32,
    pub reduction: ReductionInfo,
    pub betti: BettiTable,
    pub h1: EndResult,
    pub n_h0: EndResult,
    pub checks: Vec<Check>,
    pub verdict: Verdict,
}

impl SimpleStabVerdict {
    /// The strand computation confirms the stabilization index.
    pub fn confirms_stab(&self) -> bool {
        self.checks
            .iter()
            .find(|c| c.anchor == "stab-equals-h1-end-plus-one")
            .is_some_and(|c| c.certified && c.pass)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompCohVerdict {
    pub mu: i64,
    pub rees_betti: BettiTable,
    pub n_betti: BettiTable,
    /// Krull dimension of `N_{mu,*}` (growth degree + 1).
    pub d_mu: Option<i64>,
    /// Cohomological dimension of the Rees strand, taken as its Krull
    /// dimension (growth degree + 1).
    pub cd: Option<i64>,
    pub checks: Vec<Check>,
    pub verdict: Verdict,
}

fn bound_opt(v: Option<i64>) -> Bound {
    v.map_or(Bound::AtLeast(0), Bound::At)
}

pub fn simple_stab_checks(
    n: usize,
    stab: u32,
    e_b: Bound,
    stab_certified: bool,
    betti: &BettiTable,
    h1: &EndResult,
    n_h0: &EndResult,
) -> Vec<Check> {
    let degenerate = e_b == Bound::NegInf;
    let stab_b = Bound::At(stab as i64);
    let reg = betti.reg;
    let cert = stab_certified && betti.certified;
    let mut checks = Vec::new();
    if degenerate {
        checks.push(
            Check::compare(
                "Stab = max(1, end(H^1(R_b)) + 1)",
                "stab-equals-h1-end-plus-one",
                stab_b,
                Relation::Eq,
                Bound::At(1).max(h1.end.plus(1)),
                stab_certified && h1.certified,
            )
            .with_note("N_{b,*} = 0: Stab floored to 1"),
        );
    } else {
        checks.push(Check::compare(
            "Stab = end(H^1(R_b)) + 1",
            "stab-equals-h1-end-plus-one",
            stab_b,
            Relation::Eq,
            h1.end.plus(1),
            stab_certified && h1.certified,
        ));
    }
    checks.push(Check::compare(
        "end(H^0(N_b)) = e_b",
        "torsion-end-equals-e-b",
        n_h0.end,
        Relation::Eq,
        e_b,
        stab_certified && n_h0.certified,
    ));
    let lower = if degenerate {
        Check::compare(
            "end(H^1(R_b)) + 1 <= reg_B(R_b)",
            "stab-below-reg",
            h1.end.plus(1),
            Relation::Le,
            reg,
            cert && h1.certified,
        )
        .with_note("degenerate: unfloored Stab")
    } else {
        Check::compare("Stab <= reg_B(R_b)", "stab-below-reg", stab_b, Relation::Le, reg, cert)
    };
    checks.push(lower);
    checks.push(Check::compare(
        "reg_B(R_b) <= max(Stab, n)",
        "reg-below-max-stab-n",
        reg,
        Relation::Le,
        Bound::At((stab as i64).max(n as i64)),
        cert,
    ));
    checks.push(Check::compare(
        "end(H^1(R_b)) <= reg_B(R_b) - 1",
        "h1-end-below-reg",
        h1.end,
        Relation::Le,
        reg.plus(-1),
        betti.certified && h1.certified,
    ));
    let eq = Check::compare(
        "Stab = reg_B(R_b) if Stab >= n or reg_B > n",
        "stab-equals-reg-when-large",
        stab_b,
        Relation::Eq,
        reg,
        cert,
    );
    let eq = match reg {
        Bound::At(r) => eq.vacuous(stab as i64 >= n as i64 || r > n as i64),
        Bound::NegInf => eq.vacuous(stab as i64 >= n as i64),
        _ => eq,
    };
    checks.push(eq);
    checks
}

pub fn compcoh_checks(
    n: usize,
    rees: &BettiTable,
    nb: &BettiTable,
    d_mu: Option<i64>,
    cd: Option<i64>,
    lower_degree_gens: bool,
) -> Vec<Check> {
    let both = rees.certified && nb.certified;
    let d_b = bound_opt(d_mu);
    let cd_b = bound_opt(cd);
    let mut checks = vec![
        Check::compare(
            "reg_B(N_mu) <= max(reg_B(R_mu) - 1, d(mu))",
            "n-reg-below-rees-reg",
            nb.reg,
            Relation::Le,
            rees.reg.plus(-1).max(d_b),
            both && d_mu.is_some(),
        ),
        Check::compare(
            "reg_B(R_mu) <= max(reg_B(N_mu) + 1, cd(R_mu))",
            "rees-reg-below-n-reg",
            rees.reg,
            Relation::Le,
            nb.reg.plus(1).max(cd_b),
            both && cd.is_some(),
        ),
        Check::compare(
            "cd(R_mu) <= n",
            "cd-at-most-n",
            cd_b,
            Relation::Le,
            Bound::At(n as i64),
            cd.is_some(),
        )
        .with_note("cd taken as Krull dimension = growth degree + 1"),
    ];
    let n_i = n as i64;
    let premise = match (nb.reg, rees.reg) {
        (Bound::At(a), Bound::At(r)) => Some((a >= n_i && lower_degree_gens) || a.max(r) > n_i),
        (Bound::NegInf, Bound::At(r)) => Some(r > n_i),
        (Bound::At(a), Bound::NegInf) => Some((a >= n_i && lower_degree_gens) || a > n_i),
        (Bound::NegInf, Bound::NegInf) => Some(false),
        _ => None,
    };
    let eq = Check::compare(
        "reg_B(N_mu) = reg_B(R_mu) - 1 if (reg_B(N) >= n and I_<d != 0) or max(reg_B) > n",
        "n-reg-equals-rees-reg-minus-one",
        nb.reg,
        Relation::Eq,
        rees.reg.plus(-1),
        both,
    );
    checks.push(match premise {
        Some(p) => eq.vacuous(p),
        None => eq,
    });
    checks
}

/// Convenience wrapper: stabilization analysis, reduction and the strand
/// checks for `Stab`.
pub fn verify_simple_stab<F: Field>(ideal: &Ideal<F>, opts: StrandOptions) -> Result<SimpleStabVerdict> {
    StrandContext::new(ideal, opts)?.simple_stab()
}

pub fn verify_compcoh<F: Field>(ideal: &Ideal<F>, mu: i64, opts: StrandOptions) -> Result<CompCohVerdict> {
    StrandContext::new(ideal, opts)?.compcoh(mu)
}
