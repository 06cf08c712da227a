//! Ends of `H^0_n(M)` (the `n`-torsion) and `H^1_n(M)` (the saturation
//! defect) for strand modules, with `n = (T_1..T_m)`.
//!
//! Torsion in degree `t` is computed as `Z_t(K) = {v in M_t : T^a v = 0 for
//! all |a| = K}` through functionals: `Z_t(K)` is the kernel of a matrix
//! `Psi_{t,K}` with `Psi_{t,K} = rows(stack_i Psi_{t+1,K-1} T_i)` and
//! `Psi_{s,0}` the identity, so one downward sweep from a top degree `s`
//! gives `Z_t(s - t)` for every `t`.
//!
//! `H^1_n(M)_t` is the cokernel of `M_t -> Hom(n^K, M)_t`, where a
//! homomorphism is a family `(v_a in M_{t+K})_{|a| = K}` with
//! `T_i v_a = T_j v_b` whenever `T_i a = T_j b`.

use serde::{Deserialize, Serialize};

use crate::bound::Bound;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::ExactMatrix;
use crate::monomial::{monomial_basis, monomial_index, Monomial};
use crate::rees::strand::{StrandKind, StrandModule};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeDim {
    pub t: i64,
    pub dim: u64,
}

/// End of a local cohomology module together with how it was obtained.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EndResult {
    pub end: Bound,
    pub certified: bool,
    /// Largest power `K` of `n` used.
    pub saturation_power: i64,
    /// Results agreed for `K` and `K + 1` in every tested degree.
    pub stable: bool,
    /// Nonzero dimensions found, by degree.
    pub dims: Vec<DegreeDim>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl EndResult {
    /// Reads off the end from per-degree dimensions `(t, dim at K, dim at K+1)`.
    /// Certified iff stable in `K` and zero on the window `t > cutoff - width`.
    fn from_scan(rows: &[(i64, u64, u64)], cutoff: i64, width: usize, saturation_power: i64) -> EndResult {
        let stable = rows.iter().all(|&(_, a, b)| a == b);
        let dims: Vec<DegreeDim> = rows
            .iter()
            .filter(|r| r.2 != 0)
            .map(|&(t, _, dim)| DegreeDim { t, dim })
            .collect();
        let observed = Bound::from_max(dims.iter().map(|x| x.t));
        let window_clear = dims.iter().all(|x| x.t <= cutoff - width.max(1) as i64);
        let certified = stable && window_clear;
        let end = match (certified, observed) {
            (false, Bound::At(v)) => Bound::AtLeast(v),
            (_, b) => b,
        };
        EndResult {
            end,
            certified,
            saturation_power,
            stable,
            dims,
            note: None,
        }
    }
}

/// `H^0` and `H^1` ends of one strand.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohEndReport {
    pub h0: EndResult,
    pub h1: EndResult,
}

impl CohEndReport {
    pub fn end_h0(&self) -> Bound {
        self.h0.end
    }

    pub fn end_h1(&self) -> Bound {
        self.h1.end
    }

    pub fn certified(&self) -> bool {
        self.h0.certified && self.h1.certified
    }
}

/// `dim Z_t(s_top - t)` for `t = t_lo..=s_top`.
pub fn torsion_dims<F: Field>(m: &StrandModule<F>, t_lo: i64, s_top: i64) -> Vec<(i64, u64)> {
    let field = m.field();
    let mut out = Vec::new();
    let mut psi = ExactMatrix::identity(field, m.dim(s_top));
    out.push((s_top, 0));
    for s in (t_lo..s_top).rev() {
        let dim = m.dim(s);
        if dim == 0 {
            out.push((s, 0));
            psi = ExactMatrix::zeros(field, 0, 0);
            continue;
        }
        let parts: Vec<ExactMatrix<F>> = (0..m.ngens())
            .map(|i| {
                if psi.rows() == 0 {
                    ExactMatrix::zeros(field, 0, dim)
                } else {
                    psi.mul(m.map_ref(i, s).expect("piece within horizon")).unwrap()
                }
            })
            .collect();
        psi = ExactMatrix::vstack(field, dim, &parts).row_basis();
        out.push((s, (dim - psi.rows()) as u64));
    }
    out.reverse();
    out
}

/// `H^0` of a Rees strand: a submodule of a domain has no torsion.
pub fn torsion_free_end() -> EndResult {
    EndResult {
        end: Bound::NegInf,
        certified: true,
        saturation_power: 0,
        stable: true,
        dims: Vec::new(),
        note: Some("submodule of a domain: torsion free".into()),
    }
}

/// End of the torsion submodule. Rees strands are torsion free (each `T_i`
/// acts as multiplication by a nonzero form on `A`); otherwise the torsion
/// is swept from the horizon and the result is certified when the last
/// `m` pieces vanish.
pub fn h0_end<F: Field>(m: &StrandModule<F>) -> EndResult {
    if m.kind() == StrandKind::Rees {
        return torsion_free_end();
    }
    let t_max = m.t_max();
    let width = m.ngens().max(1) as i64;
    let dims = torsion_dims(m, m.t_min(), t_max);
    let tail_zero = (t_max - width + 1..=t_max).all(|t| m.dim(t) == 0);
    let found: Vec<DegreeDim> = dims
        .iter()
        .filter(|x| x.1 != 0)
        .map(|&(t, dim)| DegreeDim { t, dim })
        .collect();
    let observed = Bound::from_max(found.iter().map(|x| x.t));
    let end = match (tail_zero, observed) {
        (false, Bound::At(v)) => Bound::AtLeast(v),
        (_, b) => b,
    };
    EndResult {
        end,
        certified: tail_zero,
        saturation_power: t_max - m.t_min(),
        stable: tail_zero,
        dims: found,
        note: (!tail_zero).then(|| "pieces do not vanish at the horizon".to_string()),
    }
}

/// Torsion ends of `M` in degrees `t_lo..=cutoff` from two sweeps (tops
/// `cutoff + m` and `cutoff + m + 1`). Needs `t_max >= cutoff + m + 1`.
pub fn torsion_end_scan<F: Field>(m: &StrandModule<F>, t_lo: i64, cutoff: i64) -> Result<EndResult> {
    let w = m.ngens() as i64;
    let needed = cutoff + w + 1;
    if needed > m.t_max() {
        return Err(Error::CutoffTooLarge {
            cutoff,
            given: m.t_max(),
            needed,
        });
    }
    let a = torsion_dims(m, t_lo, cutoff + w);
    let b = torsion_dims(m, t_lo, cutoff + w + 1);
    let rows: Vec<(i64, u64, u64)> = a
        .iter()
        .zip(&b)
        .filter(|(x, _)| x.0 <= cutoff)
        .map(|(x, y)| (x.0, x.1, y.1))
        .collect();
    Ok(EndResult::from_scan(&rows, cutoff, m.ngens(), cutoff + w + 1 - t_lo))
}

/// `dim Hom(n^K, M)_t - rank(M_t -> Hom(n^K, M)_t)`.
pub fn h1_dim_families<F: Field>(m: &StrandModule<F>, t: i64, k: u32) -> u64 {
    let field = m.field();
    let ng = m.ngens();
    let top = t + k as i64;
    let dd = m.dim(top);
    if dd == 0 {
        return 0;
    }
    let alphas = monomial_basis(ng, k);
    let a = alphas.len();
    let d1 = m.dim(top + 1);

    // relations T_i v_{w/T_i} = T_j v_{w/T_j}
    let mut blocks = Vec::new();
    if d1 > 0 {
        for w in monomial_basis(ng, k + 1) {
            let support: Vec<usize> = (0..ng).filter(|&i| w.exps()[i] > 0).collect();
            for (x, &i) in support.iter().enumerate() {
                for &j in &support[x + 1..] {
                    let wi = w.checked_div(&Monomial::var_power(ng, i, 1)).unwrap();
                    let wj = w.checked_div(&Monomial::var_power(ng, j, 1)).unwrap();
                    let mut blk = ExactMatrix::zeros(field, d1, a * dd);
                    blk.set_block(0, monomial_index(&wi) * dd, m.map_ref(i, top).unwrap(), false);
                    blk.set_block(0, monomial_index(&wj) * dd, m.map_ref(j, top).unwrap(), true);
                    blocks.push(blk);
                }
            }
        }
    }
    let rel_rank = ExactMatrix::vstack(field, a * dd, &blocks).rank();
    let hom = (a * dd - rel_rank) as u64;

    let src = m.dim(t);
    if src == 0 {
        return hom;
    }
    // images T^a v, built degree by degree
    let mut layer: Vec<ExactMatrix<F>> = vec![ExactMatrix::identity(field, src)];
    for deg in 1..=k {
        let prev = monomial_basis(ng, deg - 1);
        let next: Vec<ExactMatrix<F>> = monomial_basis(ng, deg)
            .iter()
            .map(|beta| {
                let i = (0..ng).find(|&i| beta.exps()[i] > 0).unwrap();
                let lower = beta.checked_div(&Monomial::var_power(ng, i, 1)).unwrap();
                let p = &layer[monomial_index(&lower)];
                debug_assert_eq!(prev[monomial_index(&lower)], lower);
                m.map_ref(i, t + deg as i64 - 1).unwrap().mul(p).unwrap()
            })
            .collect();
        layer = next;
    }
    let image_rank = ExactMatrix::vstack(field, src, &layer).rank();
    hom - image_rank as u64
}

/// End of `H^1_n(M)` over `t_lo..=cutoff` using `K = cutoff + m - t` and
/// `K + 1`. Needs `t_max >= cutoff + m + 2`.
pub fn h1_end_families<F: Field>(m: &StrandModule<F>, t_lo: i64, cutoff: i64) -> Result<EndResult> {
    let w = m.ngens() as i64;
    let needed = cutoff + w + 2;
    if needed > m.t_max() {
        return Err(Error::CutoffTooLarge {
            cutoff,
            given: m.t_max(),
            needed,
        });
    }
    let rows: Vec<(i64, u64, u64)> = (t_lo..=cutoff)
        .map(|t| {
            let k = (cutoff + w - t) as u32;
            (t, h1_dim_families(m, t, k), h1_dim_families(m, t, k + 1))
        })
        .collect();
    Ok(EndResult::from_scan(&rows, cutoff, m.ngens(), cutoff + w + 1 - t_lo))
}

/// `H^1` end for a general strand module via the families model, scanning
/// from `t_min - m` (where `Hom(n^K, M)` can first be nonzero for a module
/// generated in degrees `>= t_min` inside a free module).
pub fn h1_end<F: Field>(m: &StrandModule<F>, cutoff: i64) -> Result<EndResult> {
    h1_end_families(m, m.t_min() - m.ngens() as i64, cutoff)
}
