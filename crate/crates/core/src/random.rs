//! Random m-primary ideals for property tests and verification suites: a
//! pure power of every variable plus a few sparse homogeneous extras.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::Field;
use crate::ideal::{default_var_names, Ideal};
use crate::monomial::{monomial_basis, Monomial};
use crate::poly::Polynomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InstanceShape {
    pub n: usize,
    /// Largest generator degree, at least 1.
    pub max_deg: u32,
    /// Largest number of extra generators.
    pub max_extras: usize,
    /// Largest number of terms per extra generator.
    pub max_terms: usize,
}

impl InstanceShape {
    pub fn new(n: usize, max_deg: u32) -> Self {
        InstanceShape {
            n,
            max_deg: max_deg.max(1),
            max_extras: 3,
            max_terms: 3,
        }
    }
}

/// Deterministic in `(shape, seed)`.
pub fn random_mprimary<F: Field>(field: &F, shape: InstanceShape, seed: u64) -> Ideal<F> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = shape.n;
    let lo = if shape.max_deg >= 2 { 2 } else { 1 };
    let mut gens: Vec<Polynomial<F>> = (0..n)
        .map(|i| {
            let e = rng.gen_range(lo..=shape.max_deg) as u16;
            Polynomial::monomial(field, Monomial::var_power(n, i, e))
        })
        .collect();
    let extras = rng.gen_range(0..=shape.max_extras);
    for _ in 0..extras {
        let e = rng.gen_range(1..=shape.max_deg);
        let mut monos = monomial_basis(n, e);
        monos.shuffle(&mut rng);
        let k = rng.gen_range(1..=shape.max_terms).min(monos.len());
        let terms: Vec<_> = monos
            .into_iter()
            .take(k)
            .map(|m| {
                let c = loop {
                    let c = field.sample(&mut rng);
                    if !field.is_zero(&c) {
                        break c;
                    }
                };
                (m, c)
            })
            .collect();
        let p = Polynomial::from_terms(field, n, terms);
        if !p.is_zero() {
            gens.push(p);
        }
    }
    Ideal::new(field.clone(), default_var_names(n), gens).expect("generated generators are homogeneous")
}
