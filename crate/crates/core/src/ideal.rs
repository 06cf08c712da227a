//! Homogeneous ideals: the parsed description (`IdealSpec`) and the typed
//! ideal over a concrete field (`Ideal<F>`), with powers, products and degree
//! truncation.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec, PrimeField, Rationals};
use crate::monomial::{monomial_basis, Monomial};
use crate::poly::Polynomial;

/// Default variable names: `x y z w` up to four variables, `x1..xn` beyond.
pub fn default_var_names(n: usize) -> Vec<String> {
    if n <= 4 {
        ["x", "y", "z", "w"][..n].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=n).map(|i| format!("x{i}")).collect()
    }
}

fn check_vars(vars: &[String]) -> Result<()> {
    if vars.is_empty() {
        return Err(Error::Input("at least one variable is required".into()));
    }
    let mut seen = HashSet::new();
    for v in vars {
        if !seen.insert(v) {
            return Err(Error::DuplicateVariable(v.clone()));
        }
    }
    Ok(())
}

/// An ideal as written in an input file: integer (rational) coefficients,
/// a target field, variable names and homogeneous nonzero generators.
#[derive(Clone, Debug, PartialEq)]
pub struct IdealSpec {
    pub field: FieldSpec,
    pub vars: Vec<String>,
    pub gens: Vec<Polynomial<Rationals>>,
}

impl IdealSpec {
    pub fn new(field: FieldSpec, vars: Vec<String>, gens: Vec<Polynomial<Rationals>>) -> Result<Self> {
        check_vars(&vars)?;
        if gens.is_empty() {
            return Err(Error::Input("an ideal needs at least one generator".into()));
        }
        for (index, g) in gens.iter().enumerate() {
            if g.nvars() != vars.len() {
                return Err(Error::Input(format!(
                    "generator {index} uses the wrong number of variables"
                )));
            }
            if g.is_zero() {
                return Err(Error::ZeroGenerator { index });
            }
            if !g.is_homogeneous() {
                return Err(Error::Inhomogeneous {
                    index,
                    text: g.format(&Rationals, &vars),
                    degrees: g.term_degrees(),
                });
            }
        }
        Ok(IdealSpec { field, vars, gens })
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    /// The ideal over `field`; fails if a generator vanishes after reduction.
    pub fn realize<F: Field>(&self, field: F) -> Result<Ideal<F>> {
        let gens: Vec<Polynomial<F>> = self
            .gens
            .iter()
            .map(|g| g.map_coeffs(&field, |c| field.from_rational(c)))
            .collect();
        for (index, g) in gens.iter().enumerate() {
            if g.is_zero() {
                return Err(Error::ZeroGenerator { index });
            }
        }
        Ideal::new(field, self.vars.clone(), gens)
    }

    pub fn prime_field(&self) -> Result<PrimeField> {
        match self.field {
            FieldSpec::Prime(p) => PrimeField::new(p),
            FieldSpec::Rationals => Err(Error::Unsupported(
                "this operation needs a prime field (use `field Fp <p>`)".into(),
            )),
        }
    }
}

/// A homogeneous ideal over a concrete field. The generator list may be
/// empty (the zero ideal).
#[derive(Clone, Debug)]
pub struct Ideal<F: Field> {
    field: F,
    vars: Arc<Vec<String>>,
    gens: Vec<Polynomial<F>>,
}

impl<F: Field> Ideal<F> {
    pub fn new(field: F, vars: Vec<String>, gens: Vec<Polynomial<F>>) -> Result<Self> {
        check_vars(&vars)?;
        Self::with_shared_vars(field, Arc::new(vars), gens)
    }

    fn with_shared_vars(field: F, vars: Arc<Vec<String>>, gens: Vec<Polynomial<F>>) -> Result<Self> {
        for (index, g) in gens.iter().enumerate() {
            if g.nvars() != vars.len() {
                return Err(Error::Input(format!(
                    "generator {index} uses the wrong number of variables"
                )));
            }
            if g.is_zero() {
                return Err(Error::ZeroGenerator { index });
            }
            if !g.is_homogeneous() {
                return Err(Error::Inhomogeneous {
                    index,
                    text: g.format(&field, &vars),
                    degrees: g.term_degrees(),
                });
            }
        }
        Ok(Ideal { field, vars, gens })
    }

    fn derived(&self, gens: Vec<Polynomial<F>>) -> Self {
        Ideal {
            field: self.field.clone(),
            vars: Arc::clone(&self.vars),
            gens,
        }
    }

    /// The maximal ideal `(x_1, ..., x_n)`.
    pub fn maximal(field: F, vars: Vec<String>) -> Result<Self> {
        let n = vars.len();
        let gens = (0..n)
            .map(|i| Polynomial::monomial(&field, Monomial::var_power(n, i, 1)))
            .collect();
        Self::new(field, vars, gens)
    }

    /// `m^e`, generated by all monomials of degree `e`.
    pub fn maximal_power(&self, e: u32) -> Self {
        let gens = monomial_basis(self.nvars(), e)
            .into_iter()
            .map(|m| Polynomial::monomial(&self.field, m))
            .collect();
        self.derived(gens)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn gens(&self) -> &[Polynomial<F>] {
        &self.gens
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }

    /// Generator degrees in input order.
    pub fn gen_degrees(&self) -> Vec<u32> {
        self.gens.iter().map(|g| g.degree().unwrap_or(0)).collect()
    }

    /// `I^t`: all products of `t` generators (multisets), deduplicated up to
    /// scalars. Not interreduced.
    pub fn power(&self, t: u32) -> Result<Self> {
        if t == 0 {
            return Err(Error::Input("ideal power needs t >= 1".into()));
        }
        let mut out = Vec::new();
        let one = Polynomial::constant(&self.field, self.nvars(), self.field.one());
        self.power_rec(t, 0, &one, &mut out);
        Ok(self.derived(dedup_up_to_scalar(&self.field, out)))
    }

    fn power_rec(&self, left: u32, start: usize, acc: &Polynomial<F>, out: &mut Vec<Polynomial<F>>) {
        if left == 0 {
            out.push(acc.clone());
            return;
        }
        for i in start..self.gens.len() {
            let next = acc.mul(&self.field, &self.gens[i]);
            self.power_rec(left - 1, i, &next, out);
        }
    }

    /// The ideal generated by the generators of degree at most `mu`.
    pub fn up_to_degree(&self, mu: u32) -> Self {
        self.derived(
            self.gens
                .iter()
                .filter(|g| g.degree().unwrap_or(0) <= mu)
                .cloned()
                .collect(),
        )
    }

    /// Generated by pairwise products of generators.
    pub fn product(&self, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                out.push(a.mul(&self.field, b));
            }
        }
        self.derived(dedup_up_to_scalar(&self.field, out))
    }

    /// Writes the ideal back as an `IdealSpec` with integer coefficients.
    pub fn to_spec(&self) -> IdealSpec {
        let gens = self
            .gens
            .iter()
            .map(|g| {
                g.map_coeffs(&Rationals, |c| {
                    let v = self.field.to_bigint(c).unwrap_or_else(Zero::zero);
                    Rationals.from_int(&v)
                })
            })
            .collect();
        IdealSpec {
            field: self.field.spec(),
            vars: self.vars.to_vec(),
            gens,
        }
    }
}

fn dedup_up_to_scalar<F: Field>(field: &F, polys: Vec<Polynomial<F>>) -> Vec<Polynomial<F>> {
    let mut seen: HashMap<Monomial, Vec<Polynomial<F>>> = HashMap::new();
    let mut out = Vec::with_capacity(polys.len());
    for p in polys {
        if p.is_zero() {
            continue;
        }
        let monic = p.monic(field);
        let bucket = seen.entry(monic.lead_monomial().unwrap().clone()).or_default();
        if bucket.contains(&monic) {
            continue;
        }
        bucket.push(monic);
        out.push(p);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f() -> PrimeField {
        PrimeField::new(101).unwrap()
    }

    fn xy() -> Vec<String> {
        default_var_names(2)
    }

    fn mono_ideal(gens: &[[u16; 2]]) -> Ideal<PrimeField> {
        let f = f();
        let gens = gens
            .iter()
            .map(|e| Polynomial::monomial(&f, Monomial::new(e.iter().copied())))
            .collect();
        Ideal::new(f, xy(), gens).unwrap()
    }

    fn lead_set(i: &Ideal<PrimeField>) -> Vec<Vec<u16>> {
        let mut v: Vec<Vec<u16>> = i
            .gens()
            .iter()
            .map(|g| g.lead_monomial().unwrap().exps().to_vec())
            .collect();
        v.sort();
        v
    }

    #[test]
    fn power_examples() {
        let i = mono_ideal(&[[2, 0], [0, 2]]);
        assert_eq!(lead_set(&i.power(2).unwrap()), vec![vec![0, 4], vec![2, 2], vec![4, 0]]);
        let j = mono_ideal(&[[0, 1], [3, 0]]);
        assert_eq!(lead_set(&j.power(2).unwrap()), vec![vec![0, 2], vec![3, 1], vec![6, 0]]);
        let k = mono_ideal(&[[1, 1]]);
        assert_eq!(lead_set(&k.power(3).unwrap()), vec![vec![3, 3]]);
        assert!(matches!(i.power(0), Err(Error::Input(_))));
    }

    #[test]
    fn truncation_examples() {
        let j = mono_ideal(&[[0, 1], [3, 0]]);
        assert_eq!(lead_set(&j.up_to_degree(1)), vec![vec![0, 1]]);
        let k = mono_ideal(&[[3, 0], [0, 3], [2, 2]]);
        assert_eq!(lead_set(&k.up_to_degree(3)), vec![vec![0, 3], vec![3, 0]]);
        assert!(mono_ideal(&[[2, 0], [0, 2]]).up_to_degree(1).is_zero_ideal());
    }

    #[test]
    fn product_examples() {
        let x = mono_ideal(&[[1, 0]]);
        let y = mono_ideal(&[[0, 1]]);
        assert_eq!(lead_set(&x.product(&y)), vec![vec![1, 1]]);
        let m = Ideal::maximal(f(), xy()).unwrap();
        assert_eq!(m.product(&m).gens().len(), 3);
        let zero = x.up_to_degree(0);
        assert!(zero.product(&m).is_zero_ideal());
    }

    #[test]
    fn spec_rejects_bad_generators() {
        let q = Rationals;
        let inhom = Polynomial::from_terms(
            &q,
            2,
            [(Monomial::new([2, 0]), q.one()), (Monomial::new([0, 3]), q.one())],
        );
        let err = IdealSpec::new(FieldSpec::Rationals, xy(), vec![inhom]).unwrap_err();
        assert!(matches!(err, Error::Inhomogeneous { ref degrees, .. } if degrees == &vec![2, 3]));
        let err = IdealSpec::new(FieldSpec::Rationals, vec!["x".into(), "x".into()], vec![]).unwrap_err();
        assert_eq!(err, Error::DuplicateVariable("x".into()));
    }

    #[test]
    fn realize_detects_vanishing_generator() {
        let q = Rationals;
        let g = Polynomial::term(&q, Monomial::new([2, 0]), q.from_i64(101));
        let spec = IdealSpec::new(FieldSpec::Prime(101), xy(), vec![g]).unwrap();
        assert_eq!(spec.realize(f()).unwrap_err(), Error::ZeroGenerator { index: 0 });
    }
}
