//! Quadratic invariance checked semantically on random instances.

mod common;

use common::oracle::violating_controller;
use common::{rf, Gen};
use qistab::sparsity::{
    forbidden_vec_indices, h_g, h_g_inv, in_s, is_qi, kbin_perp, phi_selector, split_s,
};
use qistab::{BinMatrix, RationalFunction, Region, SparsityConstraint, Tfm};

#[test]
fn listed_examples() {
    let kbin = BinMatrix::from_rows(&[vec![0, 1, 0], vec![1, 1, 1]]).unwrap();
    let gbin = BinMatrix::from_rows(&[vec![1, 1], vec![1, 0], vec![1, 1]]).unwrap();
    assert_eq!(
        kbin.mul(&gbin).unwrap(),
        BinMatrix::from_rows(&[vec![1, 0], vec![1, 1]]).unwrap()
    );
    assert_eq!(BinMatrix::identity(3).mul(&gbin).unwrap(), gbin);
    assert_eq!(
        BinMatrix::zeros(2, 3).mul(&gbin).unwrap(),
        BinMatrix::zeros(2, 2)
    );
    assert!(is_qi(&kbin, &gbin).unwrap());
    assert!(!is_qi(&BinMatrix::identity(2), &BinMatrix::ones(2, 2)).unwrap());
    assert!(is_qi(&BinMatrix::ones(2, 3), &gbin).unwrap());

    let s = SparsityConstraint::elementwise(kbin.clone());
    assert!(in_s(&Tfm::zeros(2, 3), &s).unwrap());
    let mut k = Tfm::zeros(2, 3);
    k.set(0, 1, RationalFunction::int(10));
    k.set(1, 0, rf(-78, &[-4], &[-14]));
    assert!(in_s(&k, &s).unwrap());
    k.set(0, 0, rf(1, &[], &[-1]));
    assert!(!in_s(&k, &s).unwrap());

    assert_eq!(
        kbin_perp(&kbin),
        BinMatrix::from_rows(&[vec![1, 0, 1], vec![0, 0, 0]]).unwrap()
    );
    let x = Tfm::from_fn(2, 3, |i, j| rf(1, &[], &[-(1 + i as i64 + j as i64)]));
    let (xs, xp) = split_s(&x, &s).unwrap();
    assert_eq!(&xs + &xp, x);
    let (a, b) = split_s(&xs, &s).unwrap();
    assert_eq!((a, b.is_zero()), (xs, true));

    let g1 = Tfm::scalar(rf(1, &[], &[-1]));
    assert!(h_g(&Tfm::zeros(1, 1), &g1).unwrap().is_zero());
    assert_eq!(
        h_g(&Tfm::scalar(RationalFunction::one()), &g1).unwrap(),
        Tfm::scalar(rf(1, &[-1], &[-2]))
    );

    let expected: Vec<RationalFunction> = [1, 0, 0, 0, 1, 0]
        .iter()
        .map(|&v| RationalFunction::int(v))
        .collect();
    assert_eq!(phi_selector(&s), Tfm::diag(&expected));
    assert!(phi_selector(&SparsityConstraint::elementwise(BinMatrix::ones(2, 2))).is_zero());
    assert!(phi_selector(&SparsityConstraint::elementwise(BinMatrix::zeros(2, 2))).is_identity());
}

#[test]
fn qi_agrees_with_semantics() {
    let mut gen = Gen::new(2024);
    let (mut seen_qi, mut seen_not) = (0, 0);
    for _ in 0..30 {
        let (m, p) = (gen.int(1, 3) as usize, gen.int(1, 3) as usize);
        let gbin = gen.pattern(m, p, 0.5);
        let kbin = gen.pattern(p, m, 0.6);
        let g = gen.plant_with_pattern(&gbin, 2, Region::Continuous, 0.3);
        let s = SparsityConstraint::elementwise(kbin.clone());
        if is_qi(&kbin, &gbin).unwrap() {
            seen_qi += 1;
            for _ in 0..20 {
                let k = gen.in_pattern(&kbin, 1, Region::Continuous);
                assert!(in_s(&(&(&k * &g) * &k), &s).unwrap());
                assert!(in_s(&h_g(&k, &g).unwrap(), &s).unwrap());
                assert!(in_s(&h_g_inv(&k, &g).unwrap(), &s).unwrap());
            }
            assert!(violating_controller(&kbin, &g).is_none());
        } else {
            seen_not += 1;
            let k = violating_controller(&kbin, &g).expect("non-QI pattern has a violating triple");
            assert!(in_s(&k, &s).unwrap());
            assert!(!in_s(&(&(&k * &g) * &k), &s).unwrap());
        }
    }
    assert!(seen_qi > 0 && seen_not > 0);
}

#[test]
fn h_g_round_trip() {
    let mut gen = Gen::new(5);
    for _ in 0..20 {
        let g = gen.plant_with_pattern(&BinMatrix::ones(2, 2), 2, Region::Continuous, 0.4);
        let k = gen.stable_tfm(2, 2, 1, Region::Continuous);
        assert_eq!(h_g_inv(&h_g(&k, &g).unwrap(), &g).unwrap(), k);
    }
}

#[test]
fn phi_selects_forbidden_entries() {
    let mut gen = Gen::new(9);
    for _ in 0..30 {
        let (p, m) = (gen.int(1, 3) as usize, gen.int(1, 3) as usize);
        let kbin = gen.pattern(p, m, 0.5);
        let s = SparsityConstraint::elementwise(kbin.clone());
        let phi = phi_selector(&s);
        assert_eq!(&phi * &phi, phi);
        let support = gen.pattern(p, m, 0.6);
        let k = gen.in_pattern(&support, 1, Region::Continuous);
        assert_eq!((&phi * &k.vec()).is_zero(), in_s(&k, &s).unwrap());
        let idx = forbidden_vec_indices(&s);
        assert_eq!(idx.len(), kbin.rows() * kbin.cols() - kbin.count_ones());
    }
}
