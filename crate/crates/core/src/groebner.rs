//! Reduced degrevlex Gröbner bases of homogeneous ideals.
//!
//! Buchberger's algorithm with the normal selection strategy: all critical
//! pairs and input generators of one degree are reduced together as dense
//! coordinate vectors over the monomial basis of that degree. Pairs are
//! pruned with the Gebauer–Möller update (product and chain criteria).
//! Finishing each degree before starting the next keeps the basis reduced as
//! it grows. Once the lead terms cover a whole degree the computation stops:
//! every remaining pair and generator already lies in the ideal.

use std::collections::BTreeMap;

use crate::field::Field;
use crate::ideal::Ideal;
use crate::linalg::{SparseVec, Subspace};
use crate::monomial::{monomial_basis, monomial_index, Monomial};
use crate::poly::Polynomial;

#[derive(Clone, Debug)]
pub struct GroebnerBasis<F: Field> {
    field: F,
    vars: Vec<String>,
    basis: Vec<Polynomial<F>>,
    lts: Vec<Monomial>,
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

enum Slot<F: Field> {
    Unknown,
    Irreducible,
    Old(SparseVec<F>),
    New(usize),
}

/// Row `(w / lt(g)) * g` in the coordinates of degree `deg(w)`.
fn shifted_row<F: Field>(g: &Polynomial<F>, shift: &Monomial) -> SparseVec<F> {
    g.terms()
        .iter()
        .map(|(m, c)| (monomial_index(&m.mul(shift)) as u32, c.clone()))
        .collect()
}

fn find_divisor(lts: &[Monomial], w: &Monomial) -> Option<usize> {
    lts.iter().position(|lt| lt.divides(w))
}

struct Builder<F: Field> {
    field: F,
    n: usize,
    basis: Vec<Polynomial<F>>,
    lts: Vec<Monomial>,
    pairs: Vec<Pair>,
}

impl<F: Field> Builder<F> {
    fn dense_add(&self, v: &mut [F::Elem], g: &Polynomial<F>, shift: &Monomial, negate: bool) {
        let f = &self.field;
        for (m, c) in g.terms() {
            let idx = monomial_index(&m.mul(shift));
            v[idx] = if negate { f.sub(&v[idx], c) } else { f.add(&v[idx], c) };
        }
    }

    /// Processes every candidate of degree `e`; returns whether the lead
    /// terms now contain all monomials of degree `e`.
    fn process_degree(&mut self, e: u32, inputs: Vec<Polynomial<F>>, pairs: Vec<Pair>) -> bool {
        let f = self.field.clone();
        let monos = monomial_basis(self.n, e);
        let dim = monos.len();
        let one = Monomial::one(self.n);

        let mut candidates: Vec<Vec<F::Elem>> = Vec::with_capacity(inputs.len() + pairs.len());
        for g in &inputs {
            let mut v = vec![f.zero(); dim];
            self.dense_add(&mut v, g, &one, false);
            candidates.push(v);
        }
        for p in &pairs {
            let mut v = vec![f.zero(); dim];
            let ui = p.lcm.checked_div(&self.lts[p.i]).expect("lcm divisible");
            let uj = p.lcm.checked_div(&self.lts[p.j]).expect("lcm divisible");
            self.dense_add(&mut v, &self.basis[p.i], &ui, false);
            self.dense_add(&mut v, &self.basis[p.j], &uj, true);
            candidates.push(v);
        }

        let mut slots: Vec<Slot<F>> = (0..dim).map(|_| Slot::Unknown).collect();
        let mut new_rows: Vec<Vec<F::Elem>> = Vec::new();
        let mut new_pivots: Vec<usize> = Vec::new();

        for mut v in candidates {
            for idx in 0..dim {
                if f.is_zero(&v[idx]) {
                    continue;
                }
                if let Slot::Unknown = slots[idx] {
                    slots[idx] = match find_divisor(&self.lts, &monos[idx]) {
                        Some(k) => {
                            let shift = monos[idx].checked_div(&self.lts[k]).unwrap();
                            Slot::Old(shifted_row(&self.basis[k], &shift))
                        }
                        None => Slot::Irreducible,
                    };
                }
                let c = v[idx].clone();
                match &slots[idx] {
                    Slot::Old(row) => {
                        for (j, a) in row {
                            let j = *j as usize;
                            v[j] = f.sub_mul(&v[j], &c, a);
                        }
                    }
                    Slot::New(r) => {
                        let row = &new_rows[*r];
                        for j in idx..dim {
                            if !f.is_zero(&row[j]) {
                                v[j] = f.sub_mul(&v[j], &c, &row[j]);
                            }
                        }
                    }
                    Slot::Irreducible | Slot::Unknown => {}
                }
            }
            let Some(p) = v.iter().position(|x| !f.is_zero(x)) else {
                continue;
            };
            let inv = f.inv(&v[p]);
            for x in v.iter_mut().skip(p) {
                *x = f.mul(x, &inv);
            }
            slots[p] = Slot::New(new_rows.len());
            new_pivots.push(p);
            new_rows.push(v);
        }

        // clear each new pivot column from the rows created before it
        for (r, &p) in new_pivots.iter().enumerate() {
            let (before, rest) = new_rows.split_at_mut(r);
            let row = &rest[0];
            for s in before.iter_mut() {
                if f.is_zero(&s[p]) {
                    continue;
                }
                let c = s[p].clone();
                for j in p..dim {
                    if !f.is_zero(&row[j]) {
                        s[j] = f.sub_mul(&s[j], &c, &row[j]);
                    }
                }
            }
        }

        for row in new_rows {
            let terms = row
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !f.is_zero(c))
                .map(|(i, c)| (monos[i].clone(), c))
                .collect();
            let poly = Polynomial::from_sorted_terms(self.n, terms);
            self.add_element(poly);
        }

        monos.iter().all(|w| find_divisor(&self.lts, w).is_some())
    }

    /// Gebauer–Möller installation of a new basis element.
    fn add_element(&mut self, h: Polynomial<F>) {
        let k = self.basis.len();
        let lt_h = h.lead_monomial().unwrap().clone();

        let mut fresh: Vec<(Pair, bool)> = (0..k)
            .map(|i| {
                let lcm = self.lts[i].lcm(&lt_h);
                let coprime = self.lts[i].is_coprime(&lt_h);
                (Pair { i, j: k, lcm }, coprime)
            })
            .collect();

        let mut kept: Vec<(Pair, bool)> = Vec::new();
        while !fresh.is_empty() {
            let (p, coprime) = fresh.remove(0);
            let dominated =
                fresh.iter().any(|(q, _)| q.lcm.divides(&p.lcm)) || kept.iter().any(|(q, _)| q.lcm.divides(&p.lcm));
            if coprime || !dominated {
                kept.push((p, coprime));
            }
        }

        let lts = &self.lts;
        self.pairs
            .retain(|p| !(lt_h.divides(&p.lcm) && lts[p.i].lcm(&lt_h) != p.lcm && lts[p.j].lcm(&lt_h) != p.lcm));
        self.pairs.extend(kept.into_iter().filter(|(_, c)| !c).map(|(p, _)| p));

        self.basis.push(h);
        self.lts.push(lt_h);
    }
}

/// Reduced Gröbner basis of a homogeneous ideal. Deterministic for a fixed
/// generator list.
pub fn groebner<F: Field>(ideal: &Ideal<F>) -> GroebnerBasis<F> {
    let field = ideal.field().clone();
    let n = ideal.nvars();
    let mut inputs: BTreeMap<u32, Vec<Polynomial<F>>> = BTreeMap::new();
    for g in ideal.gens() {
        for (d, comp) in g.homogeneous_components() {
            inputs.entry(d).or_default().push(comp);
        }
    }
    let mut b = Builder {
        field: field.clone(),
        n,
        basis: Vec::new(),
        lts: Vec::new(),
        pairs: Vec::new(),
    };
    loop {
        let next_input = inputs.keys().next().copied();
        let next_pair = b.pairs.iter().map(|p| p.lcm.degree()).min();
        let e = match (next_input, next_pair) {
            (None, None) => break,
            (Some(a), None) => a,
            (None, Some(c)) => c,
            (Some(a), Some(c)) => a.min(c),
        };
        let gens = inputs.remove(&e).unwrap_or_default();
        let (now, later): (Vec<Pair>, Vec<Pair>) = std::mem::take(&mut b.pairs)
            .into_iter()
            .partition(|p| p.lcm.degree() == e);
        b.pairs = later;
        if b.process_degree(e, gens, now) {
            break;
        }
    }
    GroebnerBasis {
        field,
        vars: ideal.vars().to_vec(),
        basis: b.basis,
        lts: b.lts,
    }
}

impl<F: Field> GroebnerBasis<F> {
    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn basis(&self) -> &[Polynomial<F>] {
        &self.basis
    }

    pub fn lead_monomials(&self) -> &[Monomial] {
        &self.lts
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.lts.iter().any(|m| m.degree() == 0)
    }

    /// First variable with no pure power among the lead terms.
    pub fn missing_pure_power(&self) -> Option<usize> {
        if self.is_unit_ideal() {
            return None;
        }
        let n = self.nvars();
        let mut has = vec![false; n];
        for m in &self.lts {
            if let Some(i) = m.pure_power_var() {
                has[i] = true;
            }
        }
        has.iter().position(|h| !h)
    }

    /// `dim A/I = 0`: every variable has a pure power among the lead terms.
    pub fn is_m_primary(&self) -> bool {
        self.missing_pure_power().is_none()
    }

    pub fn is_standard(&self, m: &Monomial) -> bool {
        find_divisor(&self.lts, m).is_none()
    }

    /// Triangular basis of `I_e` inside the monomial coordinates of `A_e`:
    /// one row `u * g` per lead monomial of degree `e`.
    pub fn piece(&self, e: u32) -> Subspace<F> {
        let monos = monomial_basis(self.nvars(), e);
        let rows = monos
            .iter()
            .filter_map(|w| {
                let k = find_divisor(&self.lts, w)?;
                let shift = w.checked_div(&self.lts[k]).unwrap();
                Some(shifted_row(&self.basis[k], &shift))
            })
            .collect();
        Subspace::from_triangular(monos.len(), rows)
    }

    /// Remainder of full reduction; zero iff `f` lies in the ideal.
    pub fn normal_form(&self, f: &Polynomial<F>) -> Polynomial<F> {
        let field = &self.field;
        let n = self.nvars();
        let mut out: Vec<(Monomial, F::Elem)> = Vec::new();
        for (e, comp) in f.homogeneous_components().into_iter().rev() {
            let monos = monomial_basis(n, e);
            let mut v = vec![field.zero(); monos.len()];
            for (m, c) in comp.terms() {
                v[monomial_index(m)] = c.clone();
            }
            for idx in 0..monos.len() {
                if field.is_zero(&v[idx]) {
                    continue;
                }
                if let Some(k) = find_divisor(&self.lts, &monos[idx]) {
                    let shift = monos[idx].checked_div(&self.lts[k]).unwrap();
                    let c = v[idx].clone();
                    for (j, a) in shifted_row(&self.basis[k], &shift) {
                        let j = j as usize;
                        v[j] = field.sub_mul(&v[j], &c, &a);
                    }
                }
            }
            out.extend(
                v.into_iter()
                    .enumerate()
                    .filter(|(_, c)| !field.is_zero(c))
                    .map(|(i, c)| (monos[i].clone(), c)),
            );
        }
        Polynomial::from_sorted_terms(n, out)
    }

    pub fn contains(&self, f: &Polynomial<F>) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Every generator of `other` reduces to zero.
    pub fn contains_ideal(&self, other: &Ideal<F>) -> bool {
        other.gens().iter().all(|g| self.contains(g))
    }

    pub fn format(&self) -> Vec<String> {
        self.basis.iter().map(|g| g.format(&self.field, &self.vars)).collect()
    }
}

/// Equality of ideals by mutual containment.
pub fn same_ideal<F: Field>(a: &Ideal<F>, b: &Ideal<F>) -> bool {
    groebner(a).contains_ideal(b) && groebner(b).contains_ideal(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::ideal::default_var_names;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    fn f() -> PrimeField {
        PrimeField::new(101).unwrap()
    }

    fn poly<F: Field>(field: &F, n: usize, terms: &[(&[u16], i64)]) -> Polynomial<F> {
        Polynomial::from_terms(
            field,
            n,
            terms
                .iter()
                .map(|(e, c)| (Monomial::new(e.iter().copied()), field.from_i64(*c))),
        )
    }

    fn ideal<F: Field>(field: F, n: usize, gens: &[&[(&[u16], i64)]]) -> Ideal<F> {
        let gens = gens.iter().map(|g| poly(&field, n, g)).collect();
        Ideal::new(field, default_var_names(n), gens).unwrap()
    }

    fn is_reduced<F: Field>(g: &GroebnerBasis<F>) -> bool {
        let lts = g.lead_monomials();
        g.basis().iter().enumerate().all(|(i, p)| {
            g.field().is_one(p.lead_coeff().unwrap())
                && p.terms()
                    .iter()
                    .all(|(m, _)| lts.iter().enumerate().all(|(j, lt)| i == j || !lt.divides(m)))
        })
    }

    #[test]
    fn monomial_ideal_is_fixed_point() {
        let i = ideal(f(), 2, &[&[(&[2, 0], 1)], &[(&[0, 2], 1)]]);
        let g = groebner(&i);
        assert_eq!(g.format(), vec!["x^2", "y^2"]);
    }

    #[test]
    fn linear_span() {
        let i = ideal(f(), 2, &[&[(&[1, 0], 1), (&[0, 1], 1)], &[(&[1, 0], 1), (&[0, 1], -1)]]);
        let g = groebner(&i);
        let mut s = g.format();
        s.sort();
        assert_eq!(s, vec!["x", "y"]);
    }

    #[test]
    fn hand_buchberger_example() {
        // (x^2 - y^2, xy): S(x^2-y^2, xy) = y*(x^2-y^2) - x*(xy) = -y^3
        let i = ideal(Rationals, 2, &[&[(&[2, 0], 1), (&[0, 2], -1)], &[(&[1, 1], 1)]]);
        let g = groebner(&i);
        assert_eq!(g.format(), vec!["x^2 - y^2", "x*y", "y^3"]);
        assert!(is_reduced(&g));
    }

    #[test]
    fn normal_form_examples() {
        let fld = f();
        let g = groebner(&ideal(fld, 2, &[&[(&[2, 0], 1)]]));
        assert!(g.normal_form(&poly(&fld, 2, &[(&[3, 0], 1)])).is_zero());
        let g = groebner(&ideal(fld, 2, &[&[(&[2, 0], 1)], &[(&[0, 2], 1)]]));
        let xy = poly(&fld, 2, &[(&[1, 1], 1)]);
        assert_eq!(g.normal_form(&xy), xy);
        let g = groebner(&ideal(fld, 2, &[&[(&[2, 0], 1)], &[(&[0, 3], 1)]]));
        assert!(g.normal_form(&poly(&fld, 2, &[(&[2, 1], 1), (&[0, 3], 1)])).is_zero());
    }

    #[test]
    fn m_primary_examples() {
        let fld = f();
        assert!(groebner(&ideal(fld, 2, &[&[(&[2, 0], 1)], &[(&[0, 2], 1)]])).is_m_primary());
        let g = groebner(&ideal(fld, 2, &[&[(&[2, 0], 1)], &[(&[1, 1], 1)]]));
        assert!(!g.is_m_primary());
        assert_eq!(g.missing_pure_power(), Some(1));
        assert!(!groebner(&ideal(fld, 2, &[&[(&[1, 0], 1)]])).is_m_primary());
    }

    #[test]
    fn containment_examples() {
        let fld = f();
        let g = groebner(&ideal(fld, 2, &[&[(&[2, 0], 1)]]));
        assert!(g.contains_ideal(&ideal(fld, 2, &[&[(&[3, 0], 1)], &[(&[2, 1], 1)]])));
        assert!(!g.contains_ideal(&ideal(fld, 2, &[&[(&[1, 0], 1)]])));
        let i = ideal(fld, 2, &[&[(&[3, 0], 1)], &[(&[0, 3], 1)], &[(&[2, 2], 1)]]);
        let g = groebner(&i.up_to_degree(3));
        let h = i.maximal_power(3).product(&i);
        assert!(g.contains_ideal(&h));
    }

    #[test]
    fn piece_spans_ideal_degree() {
        let fld = f();
        let i = ideal(fld, 2, &[&[(&[2, 0], 1), (&[0, 2], 3)], &[(&[1, 1], 1)]]);
        let g = groebner(&i);
        // (x^2+3y^2, xy): degree 3 piece is all of A_3
        assert_eq!(g.piece(2).dim(), 2);
        assert_eq!(g.piece(3).dim(), 4);
    }

    fn random_ideal(seed: u64) -> Ideal<PrimeField> {
        let fld = PrimeField::new(32003).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let n = 3;
        let mut gens = Vec::new();
        for i in 0..n {
            let d = rng.gen_range(1..=3u16);
            let mut terms = vec![(Monomial::var_power(n, i, d), fld.one())];
            for m in monomial_basis(n, d as u32) {
                if rng.gen_bool(0.3) {
                    terms.push((m, fld.sample(&mut rng)));
                }
            }
            gens.push(Polynomial::from_terms(&fld, n, terms));
        }
        let d = rng.gen_range(2..=3);
        let mut extra = Vec::new();
        for m in monomial_basis(n, d) {
            if rng.gen_bool(0.5) {
                extra.push((m, fld.sample(&mut rng)));
            }
        }
        let extra = Polynomial::from_terms(&fld, n, extra);
        if !extra.is_zero() {
            gens.push(extra);
        }
        Ideal::new(
            fld,
            default_var_names(n),
            gens.into_iter().filter(|g| !g.is_zero()).collect(),
        )
        .unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn combinations_of_generators_reduce_to_zero(seed in any::<u64>()) {
            let i = random_ideal(seed);
            let g = groebner(&i);
            prop_assert!(is_reduced(&g));
            let fld = i.field();
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ 0xabc);
            let target = i.gen_degrees().into_iter().max().unwrap() + 1;
            let mut comb = Polynomial::zero(3);
            for gen in i.gens() {
                let shift_deg = target - gen.degree().unwrap();
                for m in monomial_basis(3, shift_deg) {
                    let c = fld.sample(&mut rng);
                    comb = comb.add(fld, &gen.mul_monomial(&m).scale(fld, &c));
                }
            }
            prop_assert!(g.contains(&comb));
            for gen in i.gens() {
                prop_assert!(g.contains(gen));
            }
        }

        #[test]
        fn power_bases_agree_across_generating_sets(seed in any::<u64>()) {
            let i = random_ideal(seed);
            let p2 = i.power(2).unwrap();
            let via_product = i.product(&i);
            let g1 = groebner(&p2);
            let g2 = groebner(&via_product);
            prop_assert_eq!(g1.format(), g2.format());
            prop_assert!(g1.contains_ideal(&via_product) && g2.contains_ideal(&p2));
        }

        #[test]
        fn truncation_at_max_degree_is_identity(seed in any::<u64>()) {
            let i = random_ideal(seed);
            let top = i.gen_degrees().into_iter().max().unwrap();
            prop_assert!(same_ideal(&i, &i.up_to_degree(top)));
        }
    }
}
