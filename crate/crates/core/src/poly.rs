//! Sparse polynomials with terms kept in strictly descending degrevlex order.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::field::Field;
use crate::monomial::Monomial;

#[derive(Clone, Debug)]
pub struct Polynomial<F: Field> {
    nvars: usize,
    terms: Vec<(Monomial, F::Elem)>,
}

impl<F: Field> PartialEq for Polynomial<F> {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars && self.terms == other.terms
    }
}

impl<F: Field> Polynomial<F> {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn constant(field: &F, nvars: usize, c: F::Elem) -> Self {
        Self::term(field, Monomial::one(nvars), c)
    }

    pub fn term(field: &F, m: Monomial, c: F::Elem) -> Self {
        let nvars = m.nvars();
        if field.is_zero(&c) {
            return Self::zero(nvars);
        }
        Polynomial {
            nvars,
            terms: vec![(m, c)],
        }
    }

    pub fn monomial(field: &F, m: Monomial) -> Self {
        Self::term(field, m, field.one())
    }

    /// Builds a polynomial from arbitrary terms: combines like monomials,
    /// drops zeros and sorts.
    pub fn from_terms<I>(field: &F, nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, F::Elem)>,
    {
        let mut acc: BTreeMap<Monomial, F::Elem> = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial in wrong ring");
            match acc.get_mut(&m) {
                Some(v) => *v = field.add(v, &c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let terms = acc.into_iter().rev().filter(|(_, c)| !field.is_zero(c)).collect();
        Polynomial { nvars, terms }
    }

    /// Trusts the caller: terms must be nonzero and strictly descending.
    pub(crate) fn from_sorted_terms(nvars: usize, terms: Vec<(Monomial, F::Elem)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        Polynomial { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Monomial, F::Elem)] {
        &self.terms
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn lead_coeff(&self) -> Option<&F::Elem> {
        self.terms.first().map(|(_, c)| c)
    }

    /// Top degree (the degree of the lead monomial).
    pub fn degree(&self) -> Option<u32> {
        self.lead_monomial().map(Monomial::degree)
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m, _)) => self.terms.iter().all(|(t, _)| t.degree() == m.degree()),
        }
    }

    /// Distinct term degrees, ascending.
    pub fn term_degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.terms.iter().map(|(m, _)| m.degree()).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// Homogeneous components keyed by degree.
    pub fn homogeneous_components(&self) -> BTreeMap<u32, Polynomial<F>> {
        let mut out: BTreeMap<u32, Vec<(Monomial, F::Elem)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.degree()).or_default().push((m.clone(), c.clone()));
        }
        out.into_iter()
            .map(|(d, terms)| (d, Polynomial::from_sorted_terms(self.nvars, terms)))
            .collect()
    }

    pub fn add(&self, field: &F, other: &Self) -> Self {
        self.merge(field, other, false)
    }

    pub fn sub(&self, field: &F, other: &Self) -> Self {
        self.merge(field, other, true)
    }

    fn merge(&self, field: &F, other: &Self, negate: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        let rhs = |c: &F::Elem| if negate { field.neg(c) } else { c.clone() };
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0.clone(), rhs(&b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate {
                        field.sub(&a[i].1, &b[j].1)
                    } else {
                        field.add(&a[i].1, &b[j].1)
                    };
                    if !field.is_zero(&c) {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (m.clone(), rhs(c))));
        Polynomial::from_sorted_terms(self.nvars, out)
    }

    pub fn scale(&self, field: &F, c: &F::Elem) -> Self {
        if field.is_zero(c) {
            return Self::zero(self.nvars);
        }
        let terms = self.terms.iter().map(|(m, a)| (m.clone(), field.mul(a, c))).collect();
        Polynomial::from_sorted_terms(self.nvars, terms)
    }

    /// Multiplication by a monomial preserves the term order.
    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        let terms = self.terms.iter().map(|(t, c)| (t.mul(m), c.clone())).collect();
        Polynomial::from_sorted_terms(self.nvars, terms)
    }

    pub fn mul(&self, field: &F, other: &Self) -> Self {
        let mut acc: BTreeMap<Monomial, F::Elem> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m = m1.mul(m2);
                let c = field.mul(c1, c2);
                match acc.get_mut(&m) {
                    Some(v) => *v = field.add(v, &c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        let terms = acc.into_iter().rev().filter(|(_, c)| !field.is_zero(c)).collect();
        Polynomial::from_sorted_terms(self.nvars, terms)
    }

    pub fn pow(&self, field: &F, k: u32) -> Self {
        let mut acc = Self::constant(field, self.nvars, field.one());
        for _ in 0..k {
            acc = acc.mul(field, self);
        }
        acc
    }

    /// Scales so the lead coefficient is one. Zero stays zero.
    pub fn monic(&self, field: &F) -> Self {
        match self.lead_coeff() {
            None => self.clone(),
            Some(c) if field.is_one(c) => self.clone(),
            Some(c) => self.scale(field, &field.inv(c)),
        }
    }

    pub fn map_coeffs<G: Field>(&self, target: &G, f: impl Fn(&F::Elem) -> G::Elem) -> Polynomial<G> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), f(c)))
            .filter(|(_, c)| !target.is_zero(c))
            .collect();
        Polynomial::from_sorted_terms(self.nvars, terms)
    }

    /// Human-readable form using the given variable names, e.g. `3*x^2*y - y^3`.
    pub fn format(&self, field: &F, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let mut coeff = field.format(c);
            let negative = coeff.starts_with('-');
            if negative {
                coeff.remove(0);
                if coeff.starts_with('(') && coeff.ends_with(')') {
                    coeff = coeff[1..coeff.len() - 1].to_string();
                }
            }
            if k == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mono = m.format(names);
            if m.degree() == 0 {
                out.push_str(&coeff);
            } else if coeff == "1" {
                out.push_str(&mono);
            } else {
                out.push_str(&coeff);
                out.push('*');
                out.push_str(&mono);
            }
        }
        out
    }
}
