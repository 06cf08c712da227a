//! Rees strands through their ambient free module.
//!
//! When `J = (g_1..g_n)` is m-primary, `A` is free over `k[g_1..g_n]`, so
//! `F = (A_{mu+td})_t` is a free `B`-module with `beta_{0,t}(F) =
//! dim (A/J)_{mu+td}`. For the Rees strand `M ⊆ F` and `Q = F/M` the long
//! exact sequences give
//! `beta_{j,t}(M) = beta_{j+1,t}(Q)` for `j >= 1`,
//! `beta_{0,t}(M) = beta_{1,t}(Q) + beta_{0,t}(F) - beta_{0,t}(Q)`,
//! and, since `depth F >= 2` for `n >= 2`, `H^1_n(M) = H^0_n(Q)`.
//! `Q` agrees with `N_{mu,*}` for `t >= 1` and is small, which keeps these
//! computations cheap even when the pieces of `M` are large.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::{groebner, GroebnerBasis};
use crate::hilbert::hilbert_function;
use crate::ideal::Ideal;
use crate::par::Exec;
use crate::rees::cohomology::{torsion_end_scan, EndResult};
use crate::rees::growth::growth_degree;
use crate::rees::koszul::{koszul_entries, BettiTable};
use crate::rees::reduction::Reduction;
use crate::rees::strand::{ambient_dim, build_cokernel_strand, StrandKind, StrandModule};
use crate::stabilization::PowerTower;

#[derive(Clone, Debug)]
pub struct ReesStrand<F: Field> {
    n: usize,
    mu: i64,
    d: u32,
    horizon: u32,
    cokernel: StrandModule<F>,
    j_basis: GroebnerBasis<F>,
}

impl<F: Field> ReesStrand<F> {
    /// Needs `n >= 2` forms generating an m-primary ideal.
    pub fn build(tower: &PowerTower<F>, red: &Reduction<F>, mu: i64, horizon: u32) -> Result<Self> {
        let n = tower.ideal().nvars();
        if n < 2 || red.len() != n {
            return Err(Error::Unsupported(format!(
                "the free-ambient model needs n >= 2 and n forms (n = {n}, {} forms)",
                red.len()
            )));
        }
        let j = Ideal::new(red.field().clone(), tower.ideal().vars().to_vec(), red.gens().to_vec())?;
        let j_basis = groebner(&j);
        if !j_basis.is_m_primary() {
            return Err(Error::Unsupported(
                "the reduction forms do not generate an m-primary ideal".into(),
            ));
        }
        let cokernel = build_cokernel_strand(tower, red, mu, horizon)?;
        Ok(ReesStrand {
            n,
            mu,
            d: red.degree(),
            horizon,
            cokernel,
            j_basis,
        })
    }

    pub fn mu(&self) -> i64 {
        self.mu
    }

    pub fn horizon(&self) -> u32 {
        self.horizon
    }

    pub fn cokernel(&self) -> &StrandModule<F> {
        &self.cokernel
    }

    /// `N_{mu,*}` in degrees `1..=T`.
    pub fn n_strand(&self) -> StrandModule<F> {
        self.cokernel.truncate_below(1)
    }

    /// `dim M_t = dim A_{mu+td} - dim Q_t` for `t = 0..=T`.
    pub fn dims(&self) -> Vec<u64> {
        (0..=self.horizon as i64)
            .map(|t| (ambient_dim(self.n, self.mu, self.d, t) - self.cokernel.dim(t)) as u64)
            .collect()
    }

    /// `beta_{0,t}(F)`.
    pub fn free_rank(&self, t: i64) -> u64 {
        hilbert_function(&self.j_basis, self.mu + t * self.d as i64)
    }

    /// Betti table of `M` for `t = 0..=cutoff`; requires `cutoff + n <= T`.
    pub fn betti(&self, cutoff: i64, exec: Exec) -> Result<BettiTable> {
        let needed = cutoff + self.n as i64;
        if needed > self.horizon as i64 {
            return Err(Error::CutoffTooLarge {
                cutoff,
                given: self.horizon as i64,
                needed,
            });
        }
        let q = &self.cokernel;
        let q_entries = koszul_entries(q, cutoff, exec);
        let q_min = q.t_min();
        let n = self.n;
        let mut entries = vec![Vec::new(); n + 1];
        for t in q_min..=cutoff {
            let k = (t - q_min) as usize;
            let qb = |j: usize| if j <= n { q_entries[j][k] } else { 0 };
            let b0 = (qb(1) + self.free_rank(t))
                .checked_sub(qb(0))
                .expect("F -> Q is onto in generating degrees");
            let col: Vec<u64> = (0..=n).map(|j| if j == 0 { b0 } else { qb(j + 1) }).collect();
            if t < 0 {
                debug_assert!(col.iter().all(|&b| b == 0), "homology of the zero pieces of M");
                continue;
            }
            for (j, b) in col.into_iter().enumerate() {
                entries[j].push(b);
            }
        }
        let mut table = BettiTable::from_entries(n, 0, cutoff, entries);
        table.growth_degree = growth_degree(&self.dims(), n);
        Ok(table)
    }

    /// End of `H^1_n(M)`, read from the torsion of `Q` in degrees from the
    /// first nonzero `F_t` to `cutoff`. Requires `cutoff + n + 1 <= T`.
    pub fn h1_end(&self, cutoff: i64) -> Result<EndResult> {
        let mut r = torsion_end_scan(&self.cokernel, self.cokernel.t_min(), cutoff)?;
        r.note = Some("torsion of F/M".into());
        Ok(r)
    }

    pub fn kind(&self) -> StrandKind {
        StrandKind::Rees
    }
}
