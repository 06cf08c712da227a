//! Hilbert functions of Artinian quotients `A/I` by counting standard
//! monomials, end degrees, regularity of m-primary ideals, and the closed
//! formula for powers of an equigenerated complete intersection.

use serde::{Deserialize, Serialize};

use crate::bound::Bound;
use crate::check::{Check, Relation};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::{groebner, GroebnerBasis};
use crate::ideal::Ideal;
use crate::monomial::{binomial, monomial_basis};

/// `dim_k (A/I)_e` for `e = 0..=end+1`; the last entry is the first zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertTable {
    pub dims: Vec<u64>,
    pub end: Bound,
}

impl HilbertTable {
    pub fn dim(&self, e: i64) -> u64 {
        if e < 0 {
            return 0;
        }
        self.dims.get(e as usize).copied().unwrap_or(0)
    }
}

/// `dim_k (A/I)_e`: monomials of degree `e` outside the lead-term ideal.
pub fn hilbert_function<F: Field>(g: &GroebnerBasis<F>, e: i64) -> u64 {
    if e < 0 {
        return 0;
    }
    let lts: Vec<_> = g.lead_monomials().iter().filter(|m| m.degree() as i64 <= e).collect();
    monomial_basis(g.nvars(), e as u32)
        .iter()
        .filter(|w| !lts.iter().any(|lt| lt.divides(w)))
        .count() as u64
}

fn require_m_primary<F: Field>(g: &GroebnerBasis<F>) -> Result<()> {
    match g.missing_pure_power() {
        None => Ok(()),
        Some(i) => Err(Error::NotMPrimary {
            variable: g.vars()[i].clone(),
        }),
    }
}

/// Scans degrees until the first zero; valid because a graded quotient
/// generated in degree 0 stays zero once it vanishes.
pub fn hilbert_table<F: Field>(g: &GroebnerBasis<F>) -> Result<HilbertTable> {
    require_m_primary(g)?;
    let mut dims = Vec::new();
    for e in 0.. {
        let h = hilbert_function(g, e);
        dims.push(h);
        if h == 0 {
            break;
        }
    }
    let end = if dims.len() == 1 {
        Bound::NegInf
    } else {
        Bound::At(dims.len() as i64 - 2)
    };
    Ok(HilbertTable { dims, end })
}

/// Largest degree with `(A/I)_e != 0`.
pub fn artinian_end<F: Field>(g: &GroebnerBasis<F>) -> Result<Bound> {
    Ok(hilbert_table(g)?.end)
}

/// For finite-length `A/I` all local cohomology sits in `H^0`, so
/// `reg(I) = end(A/I) + 1`.
pub fn reg_mprimary<F: Field>(g: &GroebnerBasis<F>) -> Result<Bound> {
    Ok(artinian_end(g)?.plus(1))
}

/// `dim_k (A/I^t)_{mu + t d}` for a complete intersection of `n` forms of
/// common degree `d`, from the table of `A/I`:
/// `sum_{i=0}^{t-1} C(i+n-1, n-1) dim_k (A/I)_{mu + (t-i) d}`.
pub fn ci_power_dimension(degrees: &[u32], base: &HilbertTable, mu: i64, t: u32) -> Result<u64> {
    let Some(&d) = degrees.first() else {
        return Err(Error::Input("no generator degrees given".into()));
    };
    if degrees.iter().any(|&x| x != d) {
        return Err(Error::Unsupported(
            "closed power formula needs all generators of one degree".into(),
        ));
    }
    if t == 0 {
        return Err(Error::Input("power t must be >= 1".into()));
    }
    let n = degrees.len() as u64;
    let d = d as i64;
    Ok((0..t as i64)
        .map(|i| binomial(i as u64 + n - 1, n - 1) * base.dim(mu + (t as i64 - i) * d))
        .sum())
}

/// Compares the closed formula with standard-monomial counts of `I^t` for
/// `t = 1..=t_max` and every `mu` with `0 <= mu + td <= end(A/I^t) + 1`, and
/// `reg(I^t)` with `td + (n-1)(d-1)`. `I` must be generated by `n` forms of
/// one degree and be m-primary, i.e. a complete intersection.
pub fn ci_power_checks<F: Field>(ideal: &Ideal<F>, t_max: u32) -> Result<Vec<Check>> {
    let n = ideal.nvars();
    let degrees = ideal.gen_degrees();
    if degrees.len() != n {
        return Err(Error::Unsupported(format!(
            "a complete intersection needs {n} generators, found {}",
            degrees.len()
        )));
    }
    let base = hilbert_table(&groebner(ideal))?;
    let d = degrees[0] as i64;
    let mut checks = Vec::new();
    for t in 1..=t_max {
        let g = groebner(&ideal.power(t)?);
        let table = hilbert_table(&g)?;
        let top = table.dims.len() as i64 - 1;
        let td = t as i64 * d;
        let mut mismatches = Vec::new();
        for mu in -td..=top - td {
            let formula = ci_power_dimension(&degrees, &base, mu, t)?;
            let direct = table.dim(mu + td);
            if formula != direct {
                mismatches.push(format!("mu={mu}: {formula} vs {direct}"));
            }
        }
        let mut c = Check::compare(
            &format!(
                "closed formula = standard-monomial count of A/I^{t}, mu in {}..={}",
                -td,
                top - td
            ),
            "ci-power-dimension",
            Bound::At(mismatches.len() as i64),
            Relation::Eq,
            Bound::At(0),
            true,
        );
        if !mismatches.is_empty() {
            c = c.with_note(mismatches.join("; "));
        }
        checks.push(c);
        checks.push(Check::compare(
            &format!("reg(I^{t}) = {t}d + (n-1)(d-1)"),
            "ci-power-regularity",
            table.end.plus(1),
            Relation::Eq,
            Bound::At(td + (n as i64 - 1) * (d - 1)),
            true,
        ));
    }
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::groebner::groebner;
    use crate::ideal::{default_var_names, Ideal};
    use crate::monomial::Monomial;
    use crate::poly::Polynomial;
    use proptest::prelude::*;

    fn mono_ideal(n: usize, gens: &[Vec<u16>]) -> Ideal<PrimeField> {
        let f = PrimeField::new(101).unwrap();
        let gens = gens
            .iter()
            .map(|e| Polynomial::monomial(&f, Monomial::new(e.iter().copied())))
            .collect();
        Ideal::new(f, default_var_names(n), gens).unwrap()
    }

    fn pure_powers(n: usize, d: u16) -> Ideal<PrimeField> {
        let gens: Vec<Vec<u16>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { d } else { 0 }).collect())
            .collect();
        mono_ideal(n, &gens)
    }

    #[test]
    fn hilbert_examples() {
        let g = groebner(&pure_powers(2, 2));
        assert_eq!(hilbert_function(&g, 2), 1);
        assert_eq!(hilbert_function(&g, 0), 1);
        assert_eq!(hilbert_function(&g, 3), 0);
        assert_eq!(hilbert_function(&g, -1), 0);
    }

    #[test]
    fn end_examples() {
        let g = groebner(&pure_powers(3, 1));
        assert_eq!(artinian_end(&g).unwrap(), Bound::At(0));
        assert_eq!(reg_mprimary(&g).unwrap(), Bound::At(1));
        for n in 1..=3 {
            for d in 1..=4u16 {
                let g = groebner(&pure_powers(n, d));
                assert_eq!(artinian_end(&g).unwrap(), Bound::At((n as i64) * (d as i64 - 1)));
            }
        }
        let g = groebner(&pure_powers(2, 2).power(2).unwrap());
        assert_eq!(reg_mprimary(&g).unwrap(), Bound::At(5));
        let bad = groebner(&mono_ideal(2, &[vec![2, 0], vec![1, 1]]));
        assert_eq!(
            artinian_end(&bad).unwrap_err(),
            Error::NotMPrimary { variable: "y".into() }
        );
    }

    #[test]
    fn closed_power_formula_examples() {
        let base = hilbert_table(&groebner(&pure_powers(2, 2))).unwrap();
        assert_eq!(ci_power_dimension(&[2, 2], &base, 0, 2).unwrap(), 2);
        assert_eq!(ci_power_dimension(&[2, 2], &base, 0, 1).unwrap(), 1);
        // mu > end(A/I) - d gives zero
        for t in 1..5 {
            assert_eq!(ci_power_dimension(&[2, 2], &base, 1, t).unwrap(), 0);
        }
        // standard monomials of (x^4, x^2y^2, y^4) in degree 4: x^3y, xy^3
        let g4 = groebner(&pure_powers(2, 2).power(2).unwrap());
        assert_eq!(hilbert_function(&g4, 4), 2);
        assert!(ci_power_dimension(&[2, 3], &base, 0, 1).is_err());
    }

    /// Inclusion–exclusion over subsets of monomial generators: the number of
    /// degree-e monomials divisible by at least one generator.
    fn divisible_count(n: usize, gens: &[Vec<u16>], e: u32) -> u64 {
        let k = gens.len();
        let mut total: i64 = 0;
        for mask in 1u32..(1 << k) {
            let mut lcm = vec![0u16; n];
            for (i, g) in gens.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    for j in 0..n {
                        lcm[j] = lcm[j].max(g[j]);
                    }
                }
            }
            let deg: u32 = lcm.iter().map(|&x| x as u32).sum();
            let count = if deg > e {
                0
            } else {
                binomial((e - deg) as u64 + n as u64 - 1, n as u64 - 1) as i64
            };
            if mask.count_ones() % 2 == 1 {
                total += count;
            } else {
                total -= count;
            }
        }
        total as u64
    }

    proptest! {
        #[test]
        fn matches_inclusion_exclusion(
            gens in proptest::collection::vec(proptest::collection::vec(0u16..4, 3), 1..5),
            e in 0u32..9,
        ) {
            let gens: Vec<Vec<u16>> = gens.into_iter().filter(|g| g.iter().any(|&x| x > 0)).collect();
            prop_assume!(!gens.is_empty());
            let g = groebner(&mono_ideal(3, &gens));
            let expected = binomial(e as u64 + 2, 2) - divisible_count(3, &gens, e);
            prop_assert_eq!(hilbert_function(&g, e as i64), expected);
        }

        #[test]
        fn end_is_monotone_under_inclusion(
            a in proptest::collection::vec(1u16..4, 2),
            extra in proptest::collection::vec(0u16..3, 2),
        ) {
            let big = mono_ideal(2, &[vec![a[0], 0], vec![0, a[1]]]);
            let mut gens = vec![vec![a[0], 0], vec![0, a[1]]];
            if extra.iter().any(|&x| x > 0) {
                gens.push(extra);
            }
            let bigger = mono_ideal(2, &gens);
            let e1 = artinian_end(&groebner(&big)).unwrap();
            let e2 = artinian_end(&groebner(&bigger)).unwrap();
            prop_assert!(e1.cmp_exact(&e2) != Some(std::cmp::Ordering::Less));
        }
    }

    #[test]
    fn ci_power_checks_on_pure_powers() {
        let checks = ci_power_checks(&pure_powers(2, 2), 3).unwrap();
        assert_eq!(checks.len(), 6);
        assert!(checks.iter().all(|c| c.pass && c.certified), "{checks:?}");
        let three = mono_ideal(2, &[vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert!(matches!(ci_power_checks(&three, 2), Err(Error::Unsupported(_))));
    }
}
