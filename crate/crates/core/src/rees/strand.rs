//! Graded modules over `B = k[T_1..T_m]` given degree by degree: a finite
//! list of pieces `M_t` and the matrices of the actions `T_i: M_t -> M_{t+1}`.
//!
//! Strands of the Rees algebra are built inside `F_t = A_{mu+td}` with `T_i`
//! acting as multiplication by the reduction form `g_i`:
//! the Rees strand `M_t = (I^t)_{mu+td}` (t >= 0), the strand
//! `N_t = (A/I^t)_{mu+td}` (t >= 1), and the cokernel `F/M`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{ExactMatrix, Subspace};
use crate::monomial::{monomial_basis, monomial_count, monomial_index, Monomial};
use crate::poly::Polynomial;
use crate::rees::reduction::Reduction;
use crate::stabilization::PowerTower;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StrandKind {
    /// A submodule of `F`: pieces `(I^t)_{mu+td}`.
    Rees,
    /// A quotient of `F`: pieces `(A/I^t)_{mu+td}` or `F_t / M_t`.
    Quotient,
    /// Any other module given by explicit matrices.
    Abstract,
}

#[derive(Clone, Debug)]
pub struct StrandModule<F: Field> {
    field: F,
    kind: StrandKind,
    ngens: usize,
    nvars: usize,
    mu: i64,
    d: u32,
    t_min: i64,
    dims: Vec<usize>,
    /// `maps[t - t_min][i]`, for `t_min <= t < t_max`.
    maps: Vec<Vec<ExactMatrix<F>>>,
}

impl<F: Field> StrandModule<F> {
    /// Validates matrix shapes: `maps[k][i]` is `dims[k+1] x dims[k]`.
    pub fn from_parts(
        field: &F,
        kind: StrandKind,
        ngens: usize,
        t_min: i64,
        dims: Vec<usize>,
        maps: Vec<Vec<ExactMatrix<F>>>,
    ) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::Input("a strand needs at least one piece".into()));
        }
        if maps.len() + 1 != dims.len() {
            return Err(Error::Input(
                "one family of maps is needed between consecutive pieces".into(),
            ));
        }
        for (k, fam) in maps.iter().enumerate() {
            if fam.len() != ngens {
                return Err(Error::Input(format!("expected {ngens} maps out of piece {k}")));
            }
            for m in fam {
                if m.rows() != dims[k + 1] || m.cols() != dims[k] {
                    return Err(Error::Input(format!(
                        "map out of piece {k} is {}x{}, expected {}x{}",
                        m.rows(),
                        m.cols(),
                        dims[k + 1],
                        dims[k]
                    )));
                }
            }
        }
        Ok(StrandModule {
            field: field.clone(),
            kind,
            ngens,
            nvars: ngens,
            mu: 0,
            d: 1,
            t_min,
            dims,
            maps,
        })
    }

    /// The monomial submodule of `B = k[T_1..T_m]` generated by `gens`
    /// (`[1]` gives `B` itself), in degrees `0..=t_max`.
    pub fn monomial_submodule(field: &F, m: usize, gens: &[Monomial], t_max: i64) -> Self {
        Self::monomial_module(field, m, gens, t_max, false)
    }

    /// `B / (gens)` in degrees `0..=t_max`; `gens = T_1..T_m` gives `k`.
    pub fn monomial_quotient(field: &F, m: usize, gens: &[Monomial], t_max: i64) -> Self {
        Self::monomial_module(field, m, gens, t_max, true)
    }

    fn monomial_module(field: &F, m: usize, gens: &[Monomial], t_max: i64, quotient: bool) -> Self {
        let in_ideal = |w: &Monomial| gens.iter().any(|g| g.divides(w));
        let bases: Vec<Vec<Monomial>> = (0..=t_max)
            .map(|t| {
                monomial_basis(m, t as u32)
                    .into_iter()
                    .filter(|w| in_ideal(w) != quotient)
                    .collect()
            })
            .collect();
        let mut maps = Vec::new();
        for t in 0..t_max as usize {
            let index: HashMap<&Monomial, usize> = bases[t + 1].iter().enumerate().map(|(k, w)| (w, k)).collect();
            let fam = (0..m)
                .map(|i| {
                    let mut mat = ExactMatrix::zeros(field, bases[t + 1].len(), bases[t].len());
                    for (col, w) in bases[t].iter().enumerate() {
                        let img = w.mul(&Monomial::var_power(m, i, 1));
                        if let Some(&row) = index.get(&img) {
                            mat.set(row, col, field.one());
                        }
                    }
                    mat
                })
                .collect();
            maps.push(fam);
        }
        let kind = if quotient {
            StrandKind::Abstract
        } else {
            StrandKind::Rees
        };
        let dims = bases.iter().map(Vec::len).collect();
        let mut s = Self::from_parts(field, kind, m, 0, dims, maps).expect("consistent shapes");
        s.kind = kind;
        s
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn kind(&self) -> StrandKind {
        self.kind
    }

    /// Number of variables `T_i` acting.
    pub fn ngens(&self) -> usize {
        self.ngens
    }

    /// Number of variables of `A` (equals `ngens` for abstract modules).
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn mu(&self) -> i64 {
        self.mu
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn t_min(&self) -> i64 {
        self.t_min
    }

    /// Last degree with a known piece.
    pub fn t_max(&self) -> i64 {
        self.t_min + self.dims.len() as i64 - 1
    }

    /// `dim M_t`; zero below `t_min`. Panics above `t_max`.
    pub fn dim(&self, t: i64) -> usize {
        if t < self.t_min {
            return 0;
        }
        assert!(
            t <= self.t_max(),
            "degree {t} beyond the computed horizon {}",
            self.t_max()
        );
        self.dims[(t - self.t_min) as usize]
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Matrix of `T_i: M_t -> M_{t+1}`; the zero map below `t_min`.
    pub fn map(&self, i: usize, t: i64) -> ExactMatrix<F> {
        if t < self.t_min {
            return ExactMatrix::zeros(&self.field, self.dim(t + 1), 0);
        }
        self.maps[(t - self.t_min) as usize][i].clone()
    }

    pub fn map_ref(&self, i: usize, t: i64) -> Option<&ExactMatrix<F>> {
        if t < self.t_min || t >= self.t_max() {
            return None;
        }
        Some(&self.maps[(t - self.t_min) as usize][i])
    }

    /// `T_j T_i = T_i T_j` as maps `M_t -> M_{t+2}` for all `t <= t_max - 2`.
    pub fn commutes(&self) -> bool {
        for t in self.t_min..self.t_max() - 1 {
            for i in 0..self.ngens {
                for j in i + 1..self.ngens {
                    let a = self.map(j, t + 1).mul(&self.map(i, t)).unwrap();
                    let b = self.map(i, t + 1).mul(&self.map(j, t)).unwrap();
                    if a != b {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// The pieces in degrees `>= t`, as a module starting at `t`.
    pub fn truncate_below(&self, t: i64) -> Self {
        let start = (t.max(self.t_min) - self.t_min) as usize;
        let start = start.min(self.dims.len() - 1);
        let mut s = self.clone();
        s.t_min = self.t_min + start as i64;
        s.dims = self.dims[start..].to_vec();
        s.maps = self.maps[start..].to_vec();
        s
    }
}

/// Smallest `t` with `mu + td >= 0`.
pub fn ambient_start(mu: i64, d: u32) -> i64 {
    let d = d as i64;
    (-mu).div_euclid(d) + if (-mu).rem_euclid(d) == 0 { 0 } else { 1 }
}

/// One graded piece of `A` with a distinguished subspace.
struct AmbientPiece<F: Field> {
    monos: Vec<Monomial>,
    sub: Subspace<F>,
}

impl<F: Field> AmbientPiece<F> {
    fn new(n: usize, e: i64, sub: impl FnOnce(usize) -> Subspace<F>) -> Self {
        let monos = if e >= 0 {
            monomial_basis(n, e as u32)
        } else {
            Vec::new()
        };
        let sub = sub(monos.len());
        AmbientPiece { monos, sub }
    }
}

/// `g * v` for a dense coordinate vector `v` over the monomials of `A_e`.
fn multiply<F: Field>(
    field: &F,
    g: &Polynomial<F>,
    monos: &[Monomial],
    v: &[(usize, F::Elem)],
    out_len: usize,
) -> Vec<F::Elem> {
    let mut out = vec![field.zero(); out_len];
    for (idx, c) in v {
        for (m, a) in g.terms() {
            let j = monomial_index(&monos[*idx].mul(m));
            out[j] = field.add(&out[j], &field.mul(c, a));
        }
    }
    out
}

type SparseVec<F> = Vec<(usize, <F as Field>::Elem)>;

fn graded_strand<F: Field>(
    red: &Reduction<F>,
    kind: StrandKind,
    mu: i64,
    t_min: i64,
    pieces: Vec<AmbientPiece<F>>,
) -> StrandModule<F> {
    let field = red.field();
    let quotient = kind == StrandKind::Quotient;
    // basis of each piece as sparse vectors over the monomials of A_e
    let bases: Vec<Vec<SparseVec<F>>> = pieces
        .iter()
        .map(|p| {
            if quotient {
                p.sub.standard().into_iter().map(|i| vec![(i, field.one())]).collect()
            } else {
                p.sub
                    .rows()
                    .iter()
                    .map(|r| r.iter().map(|(i, c)| (*i as usize, c.clone())).collect())
                    .collect()
            }
        })
        .collect();
    let mut maps = Vec::new();
    for k in 0..pieces.len().saturating_sub(1) {
        let (src, dst) = (&pieces[k], &pieces[k + 1]);
        let dst_std = if quotient { dst.sub.standard() } else { Vec::new() };
        let fam = red
            .gens()
            .iter()
            .map(|g| {
                let rows = bases[k + 1].len();
                let mut mat = ExactMatrix::zeros(field, rows, bases[k].len());
                if rows == 0 {
                    return mat;
                }
                for (col, v) in bases[k].iter().enumerate() {
                    let mut w = multiply(field, g, &src.monos, v, dst.monos.len());
                    let coords = dst.sub.reduce(field, &mut w);
                    if quotient {
                        for (row, &i) in dst_std.iter().enumerate() {
                            mat.set(row, col, w[i].clone());
                        }
                    } else {
                        debug_assert!(w.iter().all(|x| field.is_zero(x)), "image left the submodule");
                        for (row, c) in coords.into_iter().enumerate() {
                            mat.set(row, col, c);
                        }
                    }
                }
                mat
            })
            .collect();
        maps.push(fam);
    }
    StrandModule {
        field: field.clone(),
        kind,
        ngens: red.len(),
        nvars: red.nvars(),
        mu,
        d: red.degree(),
        t_min,
        dims: bases.iter().map(Vec::len).collect(),
        maps,
    }
}

fn check_offset(mu: i64, n: usize) -> Result<()> {
    if mu <= -(n as i64) {
        return Err(Error::Input(format!("offset mu = {mu} must satisfy mu > -n = -{n}")));
    }
    Ok(())
}

fn check_tower<F: Field>(tower: &PowerTower<F>, horizon: u32) -> Result<()> {
    if tower.horizon() < horizon {
        return Err(Error::HorizonTooSmall {
            given: tower.horizon() as usize,
            needed: horizon as usize,
        });
    }
    Ok(())
}

/// The strand `(R_I)_{mu,*}` (`kind = Rees`, `t = 0..=T`) or `N_{mu,*}`
/// (`kind = Quotient`, `t = 1..=T`), with `T_i` acting as `g_i`.
pub fn build_strand<F: Field>(
    tower: &PowerTower<F>,
    red: &Reduction<F>,
    mu: i64,
    horizon: u32,
    kind: StrandKind,
) -> Result<StrandModule<F>> {
    let n = tower.ideal().nvars();
    check_offset(mu, n)?;
    check_tower(tower, horizon)?;
    let d = red.degree() as i64;
    let field = red.field();
    let (t_min, quotient) = match kind {
        StrandKind::Rees => (0, false),
        StrandKind::Quotient => (1, true),
        StrandKind::Abstract => return Err(Error::Input("strands of A are rees or quotient kind".into())),
    };
    let pieces = (t_min..=horizon as i64)
        .map(|t| {
            AmbientPiece::new(n, mu + t * d, |len| {
                if len == 0 {
                    Subspace::zero(0)
                } else if t == 0 || (quotient && tower.n_dim(red.degree(), mu, t as u32) == 0) {
                    Subspace::full(field, len)
                } else {
                    tower.get(t as u32).piece((mu + t * d).max(0) as u32)
                }
            })
        })
        .collect();
    Ok(graded_strand(red, kind, mu, t_min, pieces))
}

/// `Q = F/M` for the Rees strand `M`, in degrees from the first nonzero
/// `F_t` up to `T`: `A_{mu+td}` for `t < 0`, zero at `t = 0`, `N_{mu,t}` for
/// `t >= 1`.
pub fn build_cokernel_strand<F: Field>(
    tower: &PowerTower<F>,
    red: &Reduction<F>,
    mu: i64,
    horizon: u32,
) -> Result<StrandModule<F>> {
    let n = tower.ideal().nvars();
    check_offset(mu, n)?;
    check_tower(tower, horizon)?;
    let d = red.degree();
    let field = red.field();
    let t_min = ambient_start(mu, d).min(0);
    let pieces = (t_min..=horizon as i64)
        .map(|t| {
            let e = mu + t * d as i64;
            AmbientPiece::new(n, e, |len| {
                if t < 0 || len == 0 {
                    Subspace::zero(len)
                } else if t == 0 || tower.n_dim(d, mu, t as u32) == 0 {
                    Subspace::full(field, len)
                } else {
                    tower.get(t as u32).piece(e as u32)
                }
            })
        })
        .collect();
    Ok(graded_strand(red, StrandKind::Quotient, mu, t_min, pieces))
}

/// `dim A_{mu+td}` for the strand `F` of the ambient ring.
pub fn ambient_dim(n: usize, mu: i64, d: u32, t: i64) -> usize {
    monomial_count(n, mu + t * d as i64)
}
