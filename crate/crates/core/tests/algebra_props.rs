//! Field and matrix identities over random exact instances.

mod common;

use common::{rf, Gen};
use proptest::prelude::*;
use qistab::ratfield::q;
use qistab::tfm::Partition;
use qistab::{BinMatrix, Poly, RationalFunction, Region, Tfm};

fn small_rf() -> impl Strategy<Value = RationalFunction> {
    (
        prop::collection::vec(-4i64..=4, 1..=3),
        prop::collection::vec(-4i64..=4, 1..=3),
    )
        .prop_filter_map("zero denominator", |(n, d)| {
            RationalFunction::new(Poly::from_i64s(&n), Poly::from_i64s(&d)).ok()
        })
}

fn small_tfm(r: usize, c: usize) -> impl Strategy<Value = Tfm> {
    prop::collection::vec(small_rf(), r * c).prop_map(move |e| Tfm::new(r, c, e).unwrap())
}

/// vec(A·X·B) expanded entry by entry: Σ_{k,l} A[i,k] X[k,l] B[l,j].
fn triple_product_vec(a: &Tfm, x: &Tfm, b: &Tfm) -> Vec<RationalFunction> {
    let (r, c) = (a.rows(), b.cols());
    let mut out = vec![RationalFunction::zero(); r * c];
    for j in 0..c {
        for i in 0..r {
            let mut acc = RationalFunction::zero();
            for k in 0..x.rows() {
                for l in 0..x.cols() {
                    acc = &acc + &(&(a.get(i, k) * x.get(k, l)) * b.get(l, j));
                }
            }
            out[i + j * r] = acc;
        }
    }
    out
}

#[test]
fn listed_examples() {
    let i2 = Tfm::identity(2);
    let a = Tfm::from_rows(vec![
        vec![rf(1, &[], &[-1]), rf(2, &[3], &[-2])],
        vec![RationalFunction::zero(), rf(1, &[1], &[])],
    ])
    .unwrap();
    assert_eq!(&i2 * &a, a);
    assert!((&a - &a).is_zero());
    let prod = &Tfm::scalar(rf(1, &[], &[-1])) * &Tfm::scalar(rf(1, &[-1], &[]));
    assert!(prod.is_identity());

    let singular = Tfm::from_fn(2, 2, |_, _| RationalFunction::one());
    assert!(singular.inverse().is_err());
    let m = Tfm::diag(&[
        rf(1, &[1], &[-9]),
        RationalFunction::from_roots(1, &[2, 3], &[-10, -11]),
    ]);
    let expected = Tfm::diag(&[
        rf(1, &[-9], &[1]),
        RationalFunction::from_roots(1, &[-10, -11], &[2, 3]),
    ]);
    assert_eq!(m.inverse().unwrap(), expected);

    assert_eq!(Tfm::identity(2).kron(&Tfm::identity(3)), Tfm::identity(6));
    let s = rf(3, &[], &[-1]);
    assert_eq!(Tfm::scalar(s.clone()).kron(&a), a.scale(&s));

    let v = Tfm::from_rows(vec![
        vec![RationalFunction::int(1), RationalFunction::int(3)],
        vec![RationalFunction::int(2), RationalFunction::int(4)],
    ])
    .unwrap();
    assert_eq!(
        v.vec(),
        Tfm::column((1..=4).map(RationalFunction::int).collect())
    );

    let e = Tfm::column(vec![RationalFunction::one(), RationalFunction::zero()]);
    assert_eq!(
        Tfm::diag_of_vec(&e).unwrap(),
        Tfm::diag(&[RationalFunction::one(), RationalFunction::zero()])
    );
    assert_eq!(Tfm::diag_of_vec(&Tfm::zeros(0, 1)).unwrap().dims(), (0, 0));
    let kbin = BinMatrix::from_rows(&[vec![0, 1, 0], vec![1, 1, 1]]).unwrap();
    let kv: Vec<RationalFunction> = kbin
        .vec_bits()
        .into_iter()
        .map(|b| RationalFunction::int(b as i64))
        .collect();
    let d = Tfm::diag_of_vec(&Tfm::column(kv)).unwrap();
    let expected: Vec<i64> = vec![0, 1, 1, 1, 0, 1];
    assert_eq!(
        d,
        Tfm::diag(
            &expected
                .iter()
                .map(|&x| RationalFunction::int(x))
                .collect::<Vec<_>>()
        )
    );

    let g = Tfm::from_rows(vec![
        vec![rf(1, &[], &[-4]), rf(1, &[], &[2])],
        vec![rf(1, &[], &[1]), RationalFunction::zero()],
        vec![rf(1, &[], &[-5]), rf(1, &[], &[3])],
    ])
    .unwrap();
    assert_eq!(
        g.pattern(),
        BinMatrix::from_rows(&[vec![1, 1], vec![1, 0], vec![1, 1]]).unwrap()
    );
    assert_eq!(Tfm::zeros(2, 3).pattern(), BinMatrix::zeros(2, 3));
    let mt = Tfm::from_rows(vec![
        vec![
            rf(1, &[2], &[-6]),
            RationalFunction::zero(),
            RationalFunction::zero(),
        ],
        vec![
            RationalFunction::zero(),
            rf(1, &[1], &[-7]),
            rf(1, &[3], &[-7]),
        ],
        vec![
            RationalFunction::zero(),
            RationalFunction::zero(),
            rf(1, &[3], &[-8]),
        ],
    ])
    .unwrap();
    assert_eq!(
        mt.pattern_blocks(&[1, 2], &[1, 2]).unwrap(),
        BinMatrix::identity(2)
    );
    let part = Partition::new(vec![1, 2], vec![1, 1]).unwrap();
    assert_eq!(
        g.plant_pattern(&part).unwrap(),
        BinMatrix::from_rows(&[vec![1, 1], vec![1, 1]]).unwrap()
    );

    assert_eq!(Tfm::identity(3).eval_rank_at(&q(5)).unwrap(), 3);
    let psi = Tfm::from_rows(vec![
        vec![
            rf(1, &[1], &[-1]),
            RationalFunction::zero(),
            rf(1, &[], &[-1]),
        ],
        vec![
            RationalFunction::zero(),
            rf(1, &[1], &[-1]),
            rf(1, &[], &[-1]),
        ],
    ])
    .unwrap();
    assert_eq!(psi.eval_rank_at(&q(1)).unwrap(), 1);
    assert_eq!(psi.eval_rank_at(&q(2)).unwrap(), 2);
}

#[test]
fn gcd_examples() {
    let p = |r: &[i64]| Poly::from_int_roots(r);
    assert_eq!(p(&[1, -1]).gcd(&p(&[1])), p(&[1]));
    assert_eq!(p(&[-1]).gcd(&p(&[-2])), Poly::one());
    assert_eq!(p(&[-3, -3, 5]).gcd(&p(&[-3, -7])), p(&[-3]));
}

#[test]
fn vec_identity_on_random_shapes() {
    let mut g = Gen::new(7);
    for _ in 0..40 {
        let (r, k, l, c) = (
            g.int(1, 3) as usize,
            g.int(1, 3) as usize,
            g.int(1, 3) as usize,
            g.int(1, 3) as usize,
        );
        let a = g.stable_tfm(r, k, 2, Region::Continuous);
        let x = g.stable_tfm(k, l, 2, Region::Continuous);
        let b = g.stable_tfm(l, c, 2, Region::Continuous);
        let lhs = (&(&a * &x) * &b).vec();
        let rhs = &b.transpose().kron(&a) * &x.vec();
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.entries(), triple_product_vec(&a, &x, &b).as_slice());
    }
}

#[test]
fn pattern_of_product_is_bounded() {
    let mut g = Gen::new(11);
    for _ in 0..60 {
        let (r, k, c) = (
            g.int(1, 4) as usize,
            g.int(1, 4) as usize,
            g.int(1, 4) as usize,
        );
        let pk = g.pattern(r, k, 0.5);
        let pg = g.pattern(k, c, 0.5);
        let kk = g.in_pattern(&pk, 1, Region::Continuous);
        let gg = g.in_pattern(&pg, 1, Region::Continuous);
        assert!((&kk * &gg).pattern().le(&pk.mul(&pg).unwrap()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn canonical_form_is_idempotent(f in small_rf()) {
        let again = RationalFunction::new(f.num().clone(), f.den().clone()).unwrap();
        prop_assert_eq!(&again, &f);
        prop_assert!(f.den().lead().unwrap() == &q(1));
        prop_assert!(f.num().gcd(f.den()).is_one());
    }

    #[test]
    fn add_then_subtract(a in small_rf(), b in small_rf()) {
        prop_assert_eq!(&(&a + &b) - &b, a);
    }

    #[test]
    fn field_axioms(a in small_rf(), b in small_rf(), c in small_rf()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        if !b.is_zero() {
            prop_assert_eq!(&(&a / &b) * &b, a);
        }
    }

    #[test]
    fn inverse_is_exact(a in small_tfm(2, 2)) {
        if let Ok(inv) = a.inverse() {
            prop_assert!((&inv * &a).is_identity());
            prop_assert!((&a * &inv).is_identity());
        } else {
            prop_assert!(a.det().unwrap().is_zero());
        }
    }

    #[test]
    fn vec_identity(a in small_tfm(2, 2), x in small_tfm(2, 2), b in small_tfm(2, 2)) {
        let expected = triple_product_vec(&a, &x, &b);
        let got = &b.transpose().kron(&a) * &x.vec();
        prop_assert_eq!(got.entries(), expected.as_slice());
    }

    #[test]
    fn unvec_inverts_vec(x in small_tfm(3, 2)) {
        prop_assert_eq!(Tfm::unvec(&x.vec(), 3, 2).unwrap(), x);
    }

    #[test]
    fn text_and_json_round_trip(x in small_tfm(2, 3)) {
        let text = serde_json::to_string(&x).unwrap();
        let back: Tfm = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(&back, &x);
        prop_assert_eq!(serde_json::to_string(&back).unwrap(), text);
        for f in x.entries() {
            prop_assert_eq!(&f.to_string().parse::<RationalFunction>().unwrap(), f);
        }
    }

    #[test]
    fn rank_matches_determinant(a in small_tfm(3, 3)) {
        let full = !a.det().unwrap().is_zero();
        prop_assert_eq!(a.rank() == 3, full);
    }
}
