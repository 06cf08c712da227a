//! Graded Betti numbers `beta_{j,t}(M) = dim H_j(K(T_1..T_m) ⊗ M)_t` of a
//! strand module, assembled degree by degree from its action matrices.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::bound::Bound;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::ExactMatrix;
use crate::monomial::binomial;
use crate::par::Exec;
use crate::rees::growth::growth_degree;
use crate::rees::strand::{StrandKind, StrandModule};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTable {
    pub ngens: usize,
    pub t_min: i64,
    pub cutoff: i64,
    /// `entries[j][t - t_min]` for `0 <= j <= ngens`, `t_min <= t <= cutoff`.
    pub entries: Vec<Vec<u64>>,
    pub reg: Bound,
    /// The last `ngens` internal degrees carry no homology.
    pub certified: bool,
    /// Degree of the eventual polynomial `t -> dim M_t`; `-1` for eventually
    /// zero, `None` when no polynomial tail was detected.
    pub growth_degree: Option<i64>,
    /// A Rees strand with fewer acting variables than variables of `A` and
    /// maximal growth: its regularity over `B` is infinite.
    pub infinite_regularity: bool,
}

impl BettiTable {
    pub fn get(&self, j: usize, t: i64) -> u64 {
        if t < self.t_min || t > self.cutoff || j > self.ngens {
            return 0;
        }
        self.entries[j][(t - self.t_min) as usize]
    }

    /// Assembles the table from raw entries and applies the certification
    /// rule: all homology vanishes on the last `ngens` internal degrees.
    pub fn from_entries(ngens: usize, t_min: i64, cutoff: i64, entries: Vec<Vec<u64>>) -> Self {
        let mut observed = Bound::NegInf;
        for (j, row) in entries.iter().enumerate() {
            for (k, &b) in row.iter().enumerate() {
                if b != 0 {
                    observed = observed.max(Bound::At(t_min + k as i64 - j as i64));
                }
            }
        }
        let window_start = cutoff - ngens.max(1) as i64 + 1;
        let certified = entries.iter().all(|row| {
            row.iter()
                .enumerate()
                .all(|(k, &b)| b == 0 || t_min + (k as i64) < window_start)
        });
        let reg = match (certified, observed) {
            (true, r) => r,
            (false, Bound::At(v)) => Bound::AtLeast(v),
            (false, r) => r,
        };
        BettiTable {
            ngens,
            t_min,
            cutoff,
            entries,
            reg,
            certified,
            growth_degree: None,
            infinite_regularity: false,
        }
    }

    /// Nonzero entries as `(j, t, beta)`.
    pub fn nonzero(&self) -> Vec<(usize, i64, u64)> {
        let mut out = Vec::new();
        for (j, row) in self.entries.iter().enumerate() {
            for (k, &b) in row.iter().enumerate() {
                if b != 0 {
                    out.push((j, self.t_min + k as i64, b));
                }
            }
        }
        out
    }

    /// CSV with header `j,t,beta`, one line per table cell.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("j,t,beta\n");
        for (j, row) in self.entries.iter().enumerate() {
            for (k, b) in row.iter().enumerate() {
                s.push_str(&format!("{},{},{}\n", j, self.t_min + k as i64, b));
            }
        }
        s
    }
}

/// Subsets of `{0..m}` of each size in lexicographic order, with their
/// positions.
struct Subsets {
    by_size: Vec<Vec<Vec<usize>>>,
    index: HashMap<u64, usize>,
}

impl Subsets {
    fn new(m: usize) -> Self {
        let mut by_size = vec![Vec::new(); m + 1];
        for mask in 0u64..(1 << m) {
            let s: Vec<usize> = (0..m).filter(|i| mask >> i & 1 == 1).collect();
            by_size[s.len()].push(s);
        }
        for v in &mut by_size {
            v.sort();
        }
        let mut index = HashMap::new();
        for v in &by_size {
            for (k, s) in v.iter().enumerate() {
                index.insert(s.iter().map(|i| 1u64 << i).sum(), k);
            }
        }
        Subsets { by_size, index }
    }
}

/// The differential `C_j -> C_{j-1}` in internal degree `t`, with
/// `e_S ⊗ v -> sum_k (-1)^k e_{S - s_k} ⊗ T_{s_k} v` (`k` counted from 0).
fn differential<F: Field>(m: &StrandModule<F>, subsets: &Subsets, j: usize, t: i64) -> ExactMatrix<F> {
    let src = m.dim(t - j as i64);
    let dst = m.dim(t - j as i64 + 1);
    let cols = subsets.by_size[j].len() * src;
    let rows = subsets.by_size[j - 1].len() * dst;
    let mut mat = ExactMatrix::zeros(m.field(), rows, cols);
    if src == 0 || dst == 0 {
        return mat;
    }
    for (cs, s) in subsets.by_size[j].iter().enumerate() {
        for (k, &i) in s.iter().enumerate() {
            let mask: u64 = s.iter().filter(|&&x| x != i).map(|x| 1u64 << x).sum();
            let rs = subsets.index[&mask];
            let block = m.map_ref(i, t - j as i64).expect("piece within horizon");
            mat.set_block(rs * dst, cs * src, block, k % 2 == 1);
        }
    }
    mat
}

fn check_cutoff<F: Field>(m: &StrandModule<F>, cutoff: i64) -> Result<()> {
    let needed = cutoff + m.ngens() as i64;
    if needed > m.t_max() {
        return Err(Error::CutoffTooLarge {
            cutoff,
            given: m.t_max(),
            needed,
        });
    }
    Ok(())
}

/// Betti numbers for internal degrees `t_min..=cutoff` by direct Koszul
/// homology. Requires `cutoff + m <= t_max`.
pub fn koszul_betti<F: Field>(m: &StrandModule<F>, cutoff: i64, exec: Exec) -> Result<BettiTable> {
    check_cutoff(m, cutoff)?;
    let entries = koszul_entries(m, cutoff, exec);
    let mut table = BettiTable::from_entries(m.ngens(), m.t_min(), cutoff, entries);
    annotate_growth(&mut table, m);
    Ok(table)
}

/// Raw `beta_{j,t}` for `t_min..=cutoff` without any horizon check beyond
/// the pieces the complex touches.
pub(crate) fn koszul_entries<F: Field>(m: &StrandModule<F>, cutoff: i64, exec: Exec) -> Vec<Vec<u64>> {
    let ng = m.ngens();
    let subsets = Subsets::new(ng);
    let t_min = m.t_min();
    let per_t: Vec<Vec<u64>> = exec.map_range(t_min..cutoff + 1, |t| {
        // ranks[j] = rank of d_j: C_j -> C_{j-1}, j = 1..=ng
        let mut ranks = vec![0usize; ng + 2];
        for (j, r) in ranks.iter_mut().enumerate().take(ng + 1).skip(1) {
            *r = differential(m, &subsets, j, t).rank();
        }
        (0..=ng)
            .map(|j| {
                let c = binomial(ng as u64, j as u64) as usize * m.dim(t - j as i64);
                (c - ranks[j] - ranks[j + 1]) as u64
            })
            .collect()
    });
    (0..=ng).map(|j| per_t.iter().map(|col| col[j]).collect()).collect()
}

/// Fills in the growth degree and the infinite-regularity flag.
pub(crate) fn annotate_growth<F: Field>(table: &mut BettiTable, m: &StrandModule<F>) {
    let dims: Vec<u64> = m.dims().iter().map(|&x| x as u64).collect();
    table.growth_degree = growth_degree(&dims, m.ngens());
    let n = m.nvars() as i64;
    if m.kind() == StrandKind::Rees && m.ngens() < m.nvars() && table.growth_degree == Some(n - 1) {
        table.infinite_regularity = true;
        table.reg = Bound::PosInf;
    }
}
