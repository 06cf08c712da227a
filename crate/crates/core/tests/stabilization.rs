mod common;

use common::*;
use proptest::prelude::*;
use regstab::stabilization::{analyze, n_strand_dimensions, stabilization_report, StabOptions};
use regstab::{Bound, Verdict};

const P: u64 = 32003;

fn report(gens: &[Exps]) -> regstab::StabReport {
    stabilization_report(&ideal(P, gens), StabOptions::default()).unwrap()
}

fn regs(r: &regstab::StabReport) -> Vec<i64> {
    r.table.iter().map(|row| row.reg).collect()
}

#[test]
fn maximal_ideal() {
    let g = exps(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
    let r = report(&g);
    assert_eq!((r.d, r.b, r.stab, r.t0), (1, 0, 1, 1));
    assert!(r.degenerate);
    assert_eq!(regs(&r), (1..=r.horizon as i64).collect::<Vec<_>>());
    assert_eq!(r.verdict(), Verdict::Pass);
}

#[test]
fn two_squares() {
    let g = exps(&[&[2, 0], &[0, 2]]);
    let r = report(&g);
    assert_eq!((r.d, r.t0, r.b, r.c, r.stab), (2, 1, 1, 1, 1));
    assert_eq!(&regs(&r)[..3], &[3, 5, 7]);
    assert_eq!(f_table(&g, 3), vec![1, 1, 1]);
    let analysis = analyze(
        &ideal(P, &g),
        StabOptions {
            horizon: Some(3),
            ..Default::default()
        },
    )
    .unwrap();
    assert_eq!(n_strand_dimensions(&analysis.tower, 2, 0), vec![1, 2, 3]);
    assert_eq!(n_dims(&g, 0, 3), vec![1, 2, 3]);
}

#[test]
fn linear_form_and_cube() {
    let g = exps(&[&[0, 1], &[3, 0]]);
    let r = report(&g);
    assert_eq!(r.d, 3);
    assert!(r.table.iter().all(|row| row.f == 0));
    assert_eq!(&regs(&r)[..3], &[3, 6, 9]);
    assert_eq!(f_table(&g, 3), vec![0, 0, 0]);
}

#[test]
fn cubes_with_mixed_generator() {
    let g = exps(&[&[3, 0], &[0, 3], &[2, 2]]);
    let r = report(&g);
    assert_eq!((r.d, r.t0, r.b, r.stab), (3, 1, 1, 1));
    assert!(!r.iprime_is_whole_ideal);
    assert_eq!(r.iprime.len(), 2);
    assert_eq!(t0_of(&g, 4), Some(1));
    assert_eq!(
        regs(&r),
        f_table(&g, r.horizon)
            .iter()
            .enumerate()
            .map(|(k, f)| f + 3 * (k as i64 + 1))
            .collect::<Vec<_>>()
    );
}

#[test]
fn slow_stabilization() {
    // f = 3, 2, 1, 0, 0, ...
    let g = exps(&[&[6, 0], &[0, 5], &[5, 1]]);
    let r = report(&g);
    assert_eq!(r.d, 6);
    assert_eq!((r.b, r.c, r.stab), (0, 3, 4));
    assert_eq!(r.e_b, Bound::At(3));
    assert_eq!(f_table(&g, 5), vec![3, 2, 1, 0, 0]);
}

fn arb_monomial_ideal() -> impl Strategy<Value = Vec<Exps>> {
    (2usize..4).prop_flat_map(|n| {
        let powers = prop::collection::vec(1u16..5, n);
        let extras = prop::collection::vec(prop::collection::vec(0u16..4, n), 0..4);
        (powers, extras).prop_map(move |(p, extra)| {
            let mut gens: Vec<Exps> = (0..n)
                .map(|i| (0..n).map(|j| if i == j { p[i] } else { 0 }).collect())
                .collect();
            gens.extend(extra.into_iter().filter(|e| degree(e) > 0));
            gens
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn invariants_match_the_oracle(g in arb_monomial_ideal()) {
        let horizon = 6;
        let r = stabilization_report(&ideal(P, &g), StabOptions { horizon: Some(horizon), window: Some(2), ..Default::default() });
        let r = match r {
            Ok(r) => r,
            Err(regstab::Error::HorizonTooSmall { .. }) => return Ok(()),
            Err(e) => panic!("{e}"),
        };
        prop_assert_eq!(r.d, d_of(&g));
        prop_assert_eq!(Some(r.t0), t0_of(&g, 8));
        let f = f_table(&g, horizon);
        prop_assert_eq!(r.table.iter().map(|row| row.f).collect::<Vec<_>>(), f.clone());
        let b = *f.last().unwrap();
        prop_assert_eq!(r.b, b);
        let stab = 1 + f.iter().enumerate().filter(|(_, &v)| v > b).map(|(k, _)| k as u32 + 1).max().unwrap_or(0);
        prop_assert_eq!(r.stab, stab.max(1));
        let nb = n_dims(&g, b, horizon);
        let e_b = Bound::from_max(nb.iter().enumerate().filter(|(_, &x)| x > 0).map(|(k, _)| k as i64 + 1));
        prop_assert_eq!(r.e_b, e_b);
        prop_assert_ne!(r.verdict(), Verdict::Fail);
    }
}
