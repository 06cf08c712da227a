//! Brute-force oracles for monomial ideals: no Gröbner bases, only
//! exponent enumeration and divisibility.

#![allow(dead_code)]

use regstab::field::PrimeField;
use regstab::ideal::{default_var_names, Ideal};
use regstab::{Monomial, Polynomial};

pub type Exps = Vec<u16>;

/// All exponent vectors of length `n` and total degree `e`.
pub fn exponents(n: usize, e: u32) -> Vec<Exps> {
    if n == 0 {
        return if e == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=e {
        for mut rest in exponents(n - 1, e - first) {
            rest.insert(0, first as u16);
            out.push(rest);
        }
    }
    out
}

pub fn divides(a: &[u16], b: &[u16]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub fn degree(a: &[u16]) -> u32 {
    a.iter().map(|&x| x as u32).sum()
}

/// Minimal generators of the `t`-th power.
pub fn power(gens: &[Exps], t: u32) -> Vec<Exps> {
    let n = gens[0].len();
    let mut cur: Vec<Exps> = vec![vec![0; n]];
    for _ in 0..t {
        let mut next: Vec<Exps> = Vec::new();
        for a in &cur {
            for g in gens {
                let p: Exps = a.iter().zip(g).map(|(x, y)| x + y).collect();
                if !next.contains(&p) {
                    next.push(p);
                }
            }
        }
        cur = next;
    }
    cur
}

/// `dim (A/I)_e` for a monomial ideal.
pub fn quotient_dim(gens: &[Exps], e: i64) -> u64 {
    if e < 0 {
        return 0;
    }
    let n = gens[0].len();
    exponents(n, e as u32)
        .iter()
        .filter(|w| !gens.iter().any(|g| divides(g, w)))
        .count() as u64
}

/// `reg(I) = end(A/I) + 1` for an m-primary monomial ideal.
pub fn reg(gens: &[Exps]) -> i64 {
    let mut e = 0;
    while quotient_dim(gens, e) > 0 {
        e += 1;
    }
    e
}

/// Smallest `mu` such that the generators of degree `<= mu` include a pure
/// power of every variable.
pub fn d_of(gens: &[Exps]) -> u32 {
    let n = gens[0].len();
    (0..n)
        .map(|i| {
            gens.iter()
                .filter(|g| g.iter().enumerate().all(|(j, &x)| (j == i) == (x > 0)))
                .map(|g| degree(g))
                .min()
                .expect("m-primary")
        })
        .max()
        .unwrap()
}

pub fn truncation(gens: &[Exps], d: u32) -> Vec<Exps> {
    gens.iter().filter(|g| degree(g) <= d).cloned().collect()
}

/// Smallest `t >= 1` with `m^d I^t ⊆ I'`.
pub fn t0_of(gens: &[Exps], limit: u32) -> Option<u32> {
    let n = gens[0].len();
    let d = d_of(gens);
    let ip = truncation(gens, d);
    (1..=limit).find(|&t| {
        power(gens, t).iter().all(|g| {
            exponents(n, d).iter().all(|a| {
                let w: Exps = a.iter().zip(g).map(|(x, y)| x + y).collect();
                ip.iter().any(|h| divides(h, &w))
            })
        })
    })
}

/// `f(t) = reg(I^t) - dt` for `t = 1..=horizon`.
pub fn f_table(gens: &[Exps], horizon: u32) -> Vec<i64> {
    let d = d_of(gens) as i64;
    (1..=horizon).map(|t| reg(&power(gens, t)) - d * t as i64).collect()
}

/// `dim N_{mu,t} = dim (A/I^t)_{mu+td}` for `t = 1..=horizon`.
pub fn n_dims(gens: &[Exps], mu: i64, horizon: u32) -> Vec<u64> {
    let d = d_of(gens) as i64;
    (1..=horizon)
        .map(|t| quotient_dim(&power(gens, t), mu + t as i64 * d))
        .collect()
}

pub fn ideal(p: u64, gens: &[Exps]) -> Ideal<PrimeField> {
    let f = PrimeField::new(p).unwrap();
    let n = gens[0].len();
    let polys = gens
        .iter()
        .map(|e| Polynomial::monomial(&f, Monomial::new(e.iter().copied())))
        .collect();
    Ideal::new(f, default_var_names(n), polys).unwrap()
}

pub fn exps(rows: &[&[u16]]) -> Vec<Exps> {
    rows.iter().map(|r| r.to_vec()).collect()
}
