//! Stability tests checked against an independent root-counting oracle:
//! Cauchy index of p(iω) by Sturm sequences for the half-plane, and the
//! bilinear map z = (1 + w)/(1 − w) for the disk.

mod common;

use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use qistab::ratfield::{is_member_a, is_stable_poly, is_unit_a, q, qr};
use qistab::{Poly, RationalFunction, Region, Q};

fn sign_changes(seq: &[Q]) -> i64 {
    let signs: Vec<bool> = seq
        .iter()
        .filter(|v| !v.is_zero())
        .map(|v| v.is_positive())
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count() as i64
}

fn sign_at_infinity(p: &Poly, plus: bool) -> Q {
    let l = p.lead().cloned().unwrap_or_else(Q::zero);
    if plus || p.deg0() % 2 == 0 {
        l
    } else {
        -l
    }
}

/// Generalized Sturm chain f0, f1, f_{k+1} = −rem(f_{k−1}, f_k).
fn chain(f0: &Poly, f1: &Poly) -> Vec<Poly> {
    let mut c = vec![f0.clone(), f1.clone()];
    while !c.last().unwrap().is_zero() {
        let n = c.len();
        let r = c[n - 2].rem(&c[n - 1]);
        c.push(-&r);
    }
    c.pop();
    c
}

/// Cauchy index of f1/f0 over the whole real line.
fn cauchy_index(f0: &Poly, f1: &Poly) -> i64 {
    if f1.is_zero() {
        return 0;
    }
    let c = chain(f0, f1);
    let at = |plus: bool| {
        sign_changes(
            &c.iter()
                .map(|p| sign_at_infinity(p, plus))
                .collect::<Vec<_>>(),
        )
    };
    at(false) - at(true)
}

fn distinct_real_roots(g: &Poly) -> i64 {
    if g.deg0() == 0 {
        return 0;
    }
    cauchy_index(g, &g.derivative())
}

/// Splits p(iω) into real and imaginary parts A(ω), B(ω).
fn on_imaginary_axis(p: &Poly) -> (Poly, Poly) {
    let mut a = vec![Q::zero(); p.deg0() + 1];
    let mut b = vec![Q::zero(); p.deg0() + 1];
    for (k, c) in p.coeffs().iter().enumerate() {
        match k % 4 {
            0 => a[k] = c.clone(),
            1 => b[k] = c.clone(),
            2 => a[k] = -c.clone(),
            _ => b[k] = -c.clone(),
        }
    }
    (Poly::new(a), Poly::new(b))
}

/// Number of roots in the closed right half-plane, via the argument
/// principle along the imaginary axis.
fn closed_rhp_roots(p: &Poly) -> i64 {
    let n = p.deg0() as i64;
    if n == 0 {
        return 0;
    }
    let (a, b) = on_imaginary_axis(p);
    if distinct_real_roots(&a.gcd(&b)) > 0 {
        // root on the axis; report it as an unstable root
        return n.max(1);
    }
    // The top-degree term sits in exactly one of A, B.
    let winding = if a.deg0() > b.deg0() || b.is_zero() {
        -cauchy_index(&a, &b)
    } else {
        cauchy_index(&b, &a)
    };
    (n - winding) / 2
}

fn hurwitz_oracle(p: &Poly) -> bool {
    closed_rhp_roots(p) == 0
}

/// (1 − w)^n p((1 + w)/(1 − w)).
fn bilinear(p: &Poly) -> Poly {
    let n = p.deg0();
    let plus = Poly::from_i64s(&[1, 1]);
    let minus = Poly::from_i64s(&[1, -1]);
    let mut out = Poly::zero();
    for (k, c) in p.coeffs().iter().enumerate() {
        out = &out + &(&plus.pow(k as u32) * &minus.pow((n - k) as u32)).scale(c);
    }
    out
}

fn disk_oracle(p: &Poly) -> bool {
    if p.deg0() == 0 {
        return true;
    }
    // z = −1 maps to w = ∞ and would drop the degree.
    if p.eval(&q(-1)).is_zero() {
        return false;
    }
    hurwitz_oracle(&bilinear(p))
}

fn oracle(p: &Poly, region: Region) -> bool {
    match region {
        Region::Continuous => hurwitz_oracle(p),
        Region::Discrete => disk_oracle(p),
    }
}

fn int_poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(-9i64..=9, 2..=7)
        .prop_map(|c| Poly::from_i64s(&c))
        .prop_filter("nonconstant", |p| p.deg0() >= 1)
}

/// Products of linear and quadratic factors whose root location is known.
fn factored_poly(region: Region) -> impl Strategy<Value = (Poly, bool)> {
    let factor = (-4i64..=4, -4i64..=4, any::<bool>()).prop_map(move |(b, c, quad)| match region {
        Region::Continuous => {
            if quad {
                // λ² + bλ + c: open LHP iff b > 0 and c > 0
                (Poly::from_i64s(&[c, b, 1]), b > 0 && c > 0)
            } else {
                (Poly::from_i64s(&[b, 1]), b > 0)
            }
        }
        Region::Discrete => {
            let (b, c) = (qr(b, 4), qr(c, 4));
            if quad {
                // λ² + bλ + c: open unit disk iff |c| < 1 and |b| < 1 + c
                let st = c.abs() < Q::one() && b.abs() < Q::one() + &c;
                (Poly::new(vec![c, b, q(1)]), st)
            } else {
                (Poly::new(vec![-b.clone(), q(1)]), b.abs() < Q::one())
            }
        }
    });
    prop::collection::vec(factor, 1..=4).prop_map(|fs| {
        let p = fs.iter().fold(Poly::one(), |acc, (f, _)| &acc * f);
        (p, fs.iter().all(|(_, s)| *s))
    })
}

#[test]
fn oracle_sanity() {
    assert!(hurwitz_oracle(&Poly::from_i64s(&[6, 11, 6, 1])));
    assert!(!hurwitz_oracle(&Poly::from_i64s(&[-2, 1])));
    assert!(!hurwitz_oracle(&Poly::from_i64s(&[1, 0, 1])));
    assert_eq!(closed_rhp_roots(&Poly::from_int_roots(&[1, 2, -3])), 2);
    assert!(disk_oracle(&Poly::from_i64s(&[-1, 0, 4])));
    assert!(!disk_oracle(&Poly::from_i64s(&[1, 1])));
    assert!(!disk_oracle(&Poly::from_i64s(&[-1, 1])));
}

#[test]
fn listed_examples() {
    let c = Region::Continuous;
    assert!(is_stable_poly(&Poly::from_i64s(&[6, 11, 6, 1]), c).unwrap());
    assert!(!is_stable_poly(&Poly::from_i64s(&[-2, 1]), c).unwrap());
    assert!(is_stable_poly(&Poly::from_i64s(&[-1, 0, 4]), Region::Discrete).unwrap());
    assert!(is_stable_poly(&Poly::zero(), c).is_err());

    use common::rf;
    assert!(is_member_a(&rf(1, &[3], &[-8]), c));
    assert!(!is_member_a(&RationalFunction::poly(Poly::x()), c));
    assert!(!is_member_a(&rf(1, &[], &[1]), c));
    assert!(is_unit_a(&rf(1, &[-2], &[-3]), c));
    assert!(!is_unit_a(&rf(1, &[1], &[-1]), c));
    assert!(is_unit_a(&RationalFunction::int(5), c));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn continuous_matches_oracle(p in int_poly()) {
        prop_assert_eq!(is_stable_poly(&p, Region::Continuous).unwrap(), oracle(&p, Region::Continuous));
    }

    #[test]
    fn discrete_matches_oracle(p in int_poly()) {
        prop_assert_eq!(is_stable_poly(&p, Region::Discrete).unwrap(), oracle(&p, Region::Discrete));
    }

    #[test]
    fn continuous_known_roots((p, stable) in factored_poly(Region::Continuous)) {
        prop_assert_eq!(oracle(&p, Region::Continuous), stable);
        prop_assert_eq!(is_stable_poly(&p, Region::Continuous).unwrap(), stable);
    }

    #[test]
    fn discrete_known_roots((p, stable) in factored_poly(Region::Discrete)) {
        prop_assert_eq!(oracle(&p, Region::Discrete), stable);
        prop_assert_eq!(is_stable_poly(&p, Region::Discrete).unwrap(), stable);
    }

    #[test]
    fn units_are_members_both_ways(n in int_poly(), d in int_poly(), disc in any::<bool>()) {
        let region = if disc { Region::Discrete } else { Region::Continuous };
        let f = RationalFunction::new(n, d).unwrap();
        if is_unit_a(&f, region) {
            prop_assert!(is_member_a(&f, region));
            prop_assert!(is_member_a(&f.recip().unwrap(), region));
        }
    }
}
