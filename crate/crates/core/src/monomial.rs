//! Monomials of `k[x_1..x_n]`, the degree-reverse-lexicographic order and
//! enumeration/ranking of the monomial basis of each graded piece.

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};

pub type Exponents = SmallVec<[u16; 8]>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Exponents,
    deg: u32,
}

impl Monomial {
    pub fn new<I: IntoIterator<Item = u16>>(exps: I) -> Self {
        let exps: Exponents = exps.into_iter().collect();
        let deg = exps.iter().map(|&e| e as u32).sum();
        Monomial { exps, deg }
    }

    pub fn one(n: usize) -> Self {
        Monomial {
            exps: smallvec::smallvec![0; n],
            deg: 0,
        }
    }

    /// `x_i^e` in `n` variables.
    pub fn var_power(n: usize, i: usize, e: u16) -> Self {
        let mut m = Self::one(n);
        m.exps[i] = e;
        m.deg = e as u32;
        m
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    #[inline]
    pub fn exps(&self) -> &[u16] {
        &self.exps
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
            .collect();
        Monomial {
            exps,
            deg: self.deg + other.deg,
        }
    }

    /// True iff `self` divides `other`.
    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `self / divisor` when the division is exact.
    pub fn checked_div(&self, divisor: &Monomial) -> Option<Monomial> {
        if !divisor.divides(self) {
            return None;
        }
        let exps = self.exps.iter().zip(&divisor.exps).map(|(a, b)| a - b).collect();
        Some(Monomial {
            exps,
            deg: self.deg - divisor.deg,
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)))
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// `Some(i)` when the monomial is `x_i^k` with `k >= 1`.
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut found = None;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }

    pub fn format(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .exps
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    names[i].clone()
                } else {
                    format!("{}^{}", names[i], e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{:?}", self.exps.as_slice())
    }
}

#[inline]
fn degrevlex(a: &Monomial, b: &Monomial) -> Ordering {
    match a.deg.cmp(&b.deg) {
        Ordering::Equal => {}
        ord => return ord,
    }
    for (x, y) in a.exps.iter().rev().zip(b.exps.iter().rev()) {
        if x != y {
            // smaller exponent in the last differing variable is larger
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

/// Degree-reverse-lexicographic comparison with `x_1 > x_2 > ... > x_n`.
pub fn compare_degrevlex(a: &Monomial, b: &Monomial) -> Result<Ordering> {
    if a.nvars() != b.nvars() {
        return Err(Error::Input(format!(
            "cannot compare monomials in {} and {} variables",
            a.nvars(),
            b.nvars()
        )));
    }
    Ok(degrevlex(a, b))
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.nvars().cmp(&other.nvars()).then_with(|| degrevlex(self, other))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `C(n, k)` for the small arguments used in monomial counting.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

/// `dim_k A_e = C(e + n - 1, n - 1)`.
pub fn monomial_count(n: usize, e: i64) -> usize {
    if e < 0 || n == 0 {
        return usize::from(n == 0 && e == 0);
    }
    binomial(e as u64 + n as u64 - 1, n as u64 - 1) as usize
}

/// All monomials of degree `e` in `n` variables in descending degrevlex order.
pub fn monomial_basis(n: usize, e: u32) -> Vec<Monomial> {
    assert!(n >= 1, "need at least one variable");
    let mut out = Vec::with_capacity(monomial_count(n, e as i64));
    let mut exps: Exponents = smallvec::smallvec![0; n];
    // descending degrevlex = ascending lex on (a_n, a_{n-1}, ..., a_2), a_1 implied
    fn rec(pos: usize, rem: u32, exps: &mut Exponents, out: &mut Vec<Monomial>, total: u32) {
        if pos == 0 {
            exps[0] = rem as u16;
            out.push(Monomial {
                exps: exps.clone(),
                deg: total,
            });
            return;
        }
        for v in 0..=rem {
            exps[pos] = v as u16;
            rec(pos - 1, rem - v, exps, out, total);
        }
        exps[pos] = 0;
    }
    rec(n - 1, e, &mut exps, &mut out, e);
    out
}

/// Position of `m` in `monomial_basis(m.nvars(), m.degree())`.
pub fn monomial_index(m: &Monomial) -> usize {
    let n = m.nvars();
    let mut rank = 0u64;
    let mut rem = m.deg as u64;
    for k in (1..n).rev() {
        // variables x_1..x_k remain after fixing position k; count those with a
        // smaller exponent at position k
        let a = m.exps[k] as u64;
        let j = k as u64;
        rank += binomial(rem + j, j) - binomial(rem - a + j, j);
        rem -= a;
    }
    rank as usize
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mono(e: &[u16]) -> Monomial {
        Monomial::new(e.iter().copied())
    }

    #[test]
    fn basis_examples() {
        let b = monomial_basis(2, 2);
        assert_eq!(b, vec![mono(&[2, 0]), mono(&[1, 1]), mono(&[0, 2])]);
        assert_eq!(monomial_basis(3, 0), vec![mono(&[0, 0, 0])]);
        assert_eq!(monomial_basis(3, 2).len(), 6);
    }

    #[test]
    fn degrevlex_examples() {
        let x2 = mono(&[2, 0]);
        let xy = mono(&[1, 1]);
        assert_eq!(compare_degrevlex(&x2, &xy).unwrap(), Ordering::Greater);
        assert_eq!(compare_degrevlex(&xy, &xy).unwrap(), Ordering::Equal);
        let xz = mono(&[1, 0, 1]);
        let y2 = mono(&[0, 2, 0]);
        assert_eq!(compare_degrevlex(&xz, &y2).unwrap(), Ordering::Less);
        assert!(compare_degrevlex(&x2, &mono(&[1, 1, 0])).is_err());
    }

    #[test]
    fn index_matches_enumeration() {
        for n in 1..=4 {
            for e in 0..=7 {
                for (i, m) in monomial_basis(n, e).iter().enumerate() {
                    assert_eq!(monomial_index(m), i, "n={n} e={e} m={m:?}");
                }
            }
        }
    }

    #[test]
    fn basis_is_sorted_descending() {
        let b = monomial_basis(3, 4);
        for w in b.windows(2) {
            assert_eq!(compare_degrevlex(&w[0], &w[1]).unwrap(), Ordering::Greater);
        }
    }

    proptest! {
        #[test]
        fn basis_count_is_binomial(n in 1usize..5, e in 0u32..12) {
            let expected = binomial(e as u64 + n as u64 - 1, n as u64 - 1) as usize;
            prop_assert_eq!(monomial_basis(n, e).len(), expected);
            prop_assert_eq!(monomial_count(n, e as i64), expected);
        }

        #[test]
        fn degrevlex_is_multiplicative(
            a in proptest::collection::vec(0u16..5, 3),
            b in proptest::collection::vec(0u16..5, 3),
            c in proptest::collection::vec(0u16..5, 3),
        ) {
            let (a, b, c) = (mono(&a), mono(&b), mono(&c));
            let before = compare_degrevlex(&a, &b).unwrap();
            let after = compare_degrevlex(&a.mul(&c), &b.mul(&c)).unwrap();
            prop_assert_eq!(before, after);
        }

        #[test]
        fn degrevlex_is_antisymmetric(
            a in proptest::collection::vec(0u16..5, 4),
            b in proptest::collection::vec(0u16..5, 4),
        ) {
            let (a, b) = (mono(&a), mono(&b));
            let ab = compare_degrevlex(&a, &b).unwrap();
            prop_assert_eq!(ab.reverse(), compare_degrevlex(&b, &a).unwrap());
            prop_assert_eq!(ab == Ordering::Equal, a == b);
        }
    }
}
