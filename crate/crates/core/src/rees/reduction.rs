//! General reductions: `n` random elements of `I_d` generating an m-primary
//! ideal `J`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};
use crate::groebner::groebner;
use crate::ideal::Ideal;
use crate::linalg::Subspace;
use crate::monomial::{monomial_basis, monomial_index};
use crate::poly::Polynomial;

/// Smallest characteristic accepted for random general elements.
pub const MIN_PRIME: u64 = 101;
pub const DEFAULT_ATTEMPTS: usize = 32;

#[derive(Clone, Debug)]
pub struct Reduction<F: Field> {
    field: F,
    vars: Vec<String>,
    gens: Vec<Polynomial<F>>,
    d: u32,
    seed: Option<u64>,
    attempts: usize,
}

/// Printable summary of a reduction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionInfo {
    pub gens: Vec<String>,
    pub d: u32,
    pub seed: Option<u64>,
    pub attempts: usize,
    pub m_primary: bool,
}

impl<F: Field> Reduction<F> {
    /// Forms of a common degree `d`, given explicitly (any number of them).
    pub fn from_gens(field: &F, vars: &[String], gens: Vec<Polynomial<F>>) -> Result<Self> {
        let ideal = Ideal::new(field.clone(), vars.to_vec(), gens)?;
        let degrees = ideal.gen_degrees();
        let Some(&d) = degrees.first() else {
            return Err(Error::Input("a reduction needs at least one form".into()));
        };
        if degrees.iter().any(|&e| e != d) {
            return Err(Error::Input(format!(
                "reduction forms must share one degree, got {degrees:?}"
            )));
        }
        Ok(Reduction {
            field: field.clone(),
            vars: vars.to_vec(),
            gens: ideal.gens().to_vec(),
            d,
            seed: None,
            attempts: 0,
        })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn gens(&self) -> &[Polynomial<F>] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn attempts(&self) -> usize {
        self.attempts
    }

    pub fn is_m_primary(&self) -> bool {
        let j = Ideal::new(self.field.clone(), self.vars.clone(), self.gens.clone()).expect("validated forms");
        groebner(&j).is_m_primary()
    }

    pub fn info(&self) -> ReductionInfo {
        ReductionInfo {
            gens: self.gens.iter().map(|g| g.format(&self.field, &self.vars)).collect(),
            d: self.d,
            seed: self.seed,
            attempts: self.attempts,
            m_primary: self.is_m_primary(),
        }
    }
}

/// A basis of `I_d` from the products `monomial * generator`.
pub fn degree_piece_basis<F: Field>(ideal: &Ideal<F>, d: u32) -> Vec<Polynomial<F>> {
    let field = ideal.field();
    let n = ideal.nvars();
    let monos = monomial_basis(n, d);
    let mut products = Vec::new();
    for g in ideal.gens() {
        let Some(e) = g.degree() else { continue };
        if e > d {
            continue;
        }
        for u in monomial_basis(n, d - e) {
            let mut v = vec![field.zero(); monos.len()];
            for (m, c) in g.terms() {
                v[monomial_index(&m.mul(&u))] = c.clone();
            }
            products.push(v);
        }
    }
    let span = Subspace::from_spanning(field, monos.len(), products);
    span.rows()
        .iter()
        .map(|row| {
            Polynomial::from_terms(
                field,
                n,
                row.iter().map(|(i, c)| (monos[*i as usize].clone(), c.clone())),
            )
        })
        .collect()
}

/// `n` random combinations of a basis of `I_d`, redrawn until they generate an
/// m-primary ideal. Needs a prime field with `p >= 101`.
pub fn sample_general_reduction<F: Field>(ideal: &Ideal<F>, d: u32, seed: u64) -> Result<Reduction<F>> {
    match ideal.field().spec() {
        FieldSpec::Prime(p) if p < MIN_PRIME => Err(Error::FieldTooSmall { p, attempts: 0 }),
        FieldSpec::Prime(_) => sample_reduction_with(ideal, d, seed, DEFAULT_ATTEMPTS),
        FieldSpec::Rationals => Err(Error::Unsupported(
            "general reductions are sampled over prime fields; use `field Fp <p>`".into(),
        )),
    }
}

/// Sampling with an explicit attempt limit and no field-size check.
pub fn sample_reduction_with<F: Field>(
    ideal: &Ideal<F>,
    d: u32,
    seed: u64,
    max_attempts: usize,
) -> Result<Reduction<F>> {
    let field = ideal.field();
    let n = ideal.nvars();
    let basis = degree_piece_basis(ideal, d);
    let p = field.spec().characteristic();
    if basis.is_empty() {
        return Err(Error::Input(format!("I has no elements of degree {d}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 1..=max_attempts {
        let gens: Vec<Polynomial<F>> = (0..n)
            .map(|_| {
                basis.iter().fold(Polynomial::zero(n), |acc, b| {
                    let c = field.sample(&mut rng);
                    acc.add(field, &b.scale(field, &c))
                })
            })
            .collect();
        if gens.iter().any(|g| g.is_zero()) {
            continue;
        }
        let j = Ideal::new(field.clone(), ideal.vars().to_vec(), gens.clone())?;
        if groebner(&j).is_m_primary() {
            return Ok(Reduction {
                field: field.clone(),
                vars: ideal.vars().to_vec(),
                gens,
                d,
                seed: Some(seed),
                attempts: attempt,
            });
        }
    }
    Err(Error::FieldTooSmall {
        p,
        attempts: max_attempts,
    })
}
