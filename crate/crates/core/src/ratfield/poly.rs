//! Dense univariate polynomials over the rationals.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Polynomial in the indeterminate λ, coefficients stored in ascending degree.
/// The zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    c: Vec<Q>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { c: coeffs }
    }

    pub fn zero() -> Self {
        Poly { c: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        Poly::new(vec![c])
    }

    /// The indeterminate λ.
    pub fn x() -> Self {
        Poly::new(vec![Q::zero(), Q::one()])
    }

    /// c·λ^k
    pub fn monomial(c: Q, k: usize) -> Self {
        let mut v = vec![Q::zero(); k + 1];
        v[k] = c;
        Poly::new(v)
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&v| q(v)).collect())
    }

    /// Monic polynomial with the given roots (with repetition).
    pub fn from_roots(roots: &[Q]) -> Self {
        roots.iter().fold(Poly::one(), |acc, r| {
            &acc * &Poly::new(vec![-r.clone(), Q::one()])
        })
    }

    pub fn from_int_roots(roots: &[i64]) -> Self {
        Poly::from_roots(&roots.iter().map(|&r| q(r)).collect::<Vec<_>>())
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0. Useful for size bounds only.
    pub fn deg0(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lead(&self) -> Option<&Q> {
        self.c.last()
    }

    pub fn coeff(&self, k: usize) -> Q {
        self.c.get(k).cloned().unwrap_or_else(Q::zero)
    }

    pub fn eval(&self, x: &Q) -> Q {
        let mut acc = Q::zero();
        for c in self.c.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn scale(&self, s: &Q) -> Poly {
        if s.is_zero() {
            return Poly::zero();
        }
        Poly {
            c: self.c.iter().map(|c| c * s).collect(),
        }
    }

    pub fn monic(&self) -> Poly {
        match self.lead() {
            None => Poly::zero(),
            Some(l) if l.is_one() => self.clone(),
            Some(l) => {
                let inv = l.recip();
                self.scale(&inv)
            }
        }
    }

    /// Multiply by λ^k.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![Q::zero(); k];
        v.extend(self.c.iter().cloned());
        Poly { c: v }
    }

    /// λ^n · p(1/λ); requires n ≥ deg p.
    pub fn reversed(&self, n: usize) -> Poly {
        let mut v = vec![Q::zero(); n + 1];
        for (k, c) in self.c.iter().enumerate() {
            v[n - k] = c.clone();
        }
        Poly::new(v)
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * q(k as i64))
                .collect(),
        )
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let inv = d.c[dd].recip();
        let mut quo = vec![Q::zero(); r.len() - dd];
        for k in (0..quo.len()).rev() {
            let t = &r[k + dd] * &inv;
            if t.is_zero() {
                continue;
            }
            for (i, dc) in d.c.iter().enumerate() {
                r[k + i] -= &t * dc;
            }
            quo[k] = t;
        }
        r.truncate(dd);
        (Poly::new(quo), Poly::new(r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.div_rem(d).1
    }

    /// Quotient when `d` divides `self` exactly.
    pub fn exact_div(&self, d: &Poly) -> Option<Poly> {
        let (quo, r) = self.div_rem(d);
        r.is_zero().then_some(quo)
    }

    pub fn divides(&self, other: &Poly) -> bool {
        other.rem(self).is_zero()
    }

    /// Monic gcd. Runs a primitive pseudo-remainder sequence over the integers
    /// so intermediate coefficients stay small. `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        if self.is_constant() || other.is_constant() {
            return Poly::one();
        }
        if self.degree() == Some(1) || other.degree() == Some(1) {
            let (lin, o) = if self.degree() == Some(1) {
                (self, other)
            } else {
                (other, self)
            };
            let root = -(&lin.c[0] / &lin.c[1]);
            return if o.eval(&root).is_zero() {
                lin.monic()
            } else {
                Poly::one()
            };
        }
        let mut a = primitive_int(self);
        let mut b = primitive_int(other);
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_empty() {
            if b.len() == 1 {
                return Poly::one();
            }
            let r = pseudo_rem(&a, &b);
            a = b;
            b = primitive_part(r);
        }
        Poly::new(a.into_iter().map(Q::from_integer).collect()).monic()
    }

    pub fn lcm(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let g = self.gcd(other);
        (&self.exact_div(&g).expect("gcd divides") * other).monic()
    }

    /// Monic product of the distinct irreducible factors.
    pub fn squarefree_part(&self) -> Poly {
        if self.is_constant() {
            return Poly::one();
        }
        let g = self.gcd(&self.derivative());
        self.exact_div(&g).expect("gcd divides").monic()
    }

    /// Largest `e` with `f^e | self`, for non-constant `f`.
    pub fn multiplicity_of(&self, f: &Poly) -> usize {
        let mut e = 0;
        let mut cur = self.clone();
        if f.is_constant() || cur.is_zero() {
            return 0;
        }
        while let Some(next) = cur.exact_div(f) {
            cur = next;
            e += 1;
        }
        e
    }

    /// Integer-coefficient primitive associate with positive leading coefficient.
    pub fn primitive(&self) -> Vec<BigInt> {
        let mut v = primitive_int(self);
        if v.last().is_some_and(|l| l.is_negative()) {
            v.iter_mut().for_each(|c| *c = -&*c);
        }
        v
    }

    /// Rational roots with multiplicities. Candidates come from the rational
    /// root theorem; when the extreme coefficients are too large to factor by
    /// trial division the search is skipped for those roots.
    pub fn rational_roots(&self) -> Vec<(Q, usize)> {
        let mut out = Vec::new();
        if self.is_constant() {
            return out;
        }
        let mut cur = self.clone();
        let z = cur.multiplicity_of(&Poly::x());
        if z > 0 {
            out.push((Q::zero(), z));
            cur = cur.exact_div(&Poly::x().pow(z as u32)).unwrap();
        }
        if cur.is_constant() {
            return out;
        }
        let ints = cur.primitive();
        let (Some(a0), Some(an)) = (
            small_divisors(&ints[0]),
            small_divisors(ints.last().unwrap()),
        ) else {
            return out;
        };
        if a0.len() * an.len() > 200_000 {
            return out;
        }
        let mut cands: Vec<Q> = Vec::new();
        for p in &a0 {
            for qd in &an {
                if p.gcd(qd).is_one() {
                    let r = Q::new(p.clone(), qd.clone());
                    cands.push(-r.clone());
                    cands.push(r);
                }
            }
        }
        cands.sort();
        cands.dedup();
        for r in cands {
            if cur.is_constant() {
                break;
            }
            let lin = Poly::new(vec![-r.clone(), Q::one()]);
            let m = cur.multiplicity_of(&lin);
            if m > 0 {
                cur = cur.exact_div(&lin.pow(m as u32)).unwrap();
                out.push((r, m));
            }
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    /// Human-readable form in descending powers, e.g. `s^2 + 3 s - 1/2`.
    pub fn to_string_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, c) in self.c.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            if k == 0 {
                s.push_str(&a.to_string());
            } else if a.is_one() {
                s.push_str(&mono);
            } else {
                s.push_str(&format!("{a} {mono}"));
            }
        }
        s
    }
}

fn lcm_denominators(p: &Poly) -> BigInt {
    p.c.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
}

fn primitive_part(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    let g = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if !g.is_zero() && !g.is_one() {
        v.iter_mut().for_each(|c| *c = &*c / &g);
    }
    v
}

fn primitive_int(p: &Poly) -> Vec<BigInt> {
    let l = lcm_denominators(p);
    primitive_part(p.c.iter().map(|c| (c * &l).to_integer()).collect())
}

/// lc(b)^(deg a − deg b + 1) · a mod b, over the integers.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (i, bc) in b.iter().enumerate() {
            r[dr - db + i] -= &lr * bc;
        }
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
    }
    r
}

/// Positive divisors of |n| when |n| is small enough to factor by trial division.
fn small_divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n == 0 {
        return None;
    }
    let mut primes = Vec::new();
    let mut m = n;
    let mut p = 2u64;
    while p * p <= m {
        if p > 2_000_000 {
            return None;
        }
        let mut e = 0;
        while m % p == 0 {
            m /= p;
            e += 1;
        }
        if e > 0 {
            primes.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > 1 {
        primes.push((m, 1));
    }
    let mut divs = vec![1u64];
    for (p, e) in primes {
        let cur = divs.clone();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            divs.extend(cur.iter().map(|d| d * pk));
        }
    }
    Some(divs.into_iter().map(BigInt::from).collect())
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        let mut v = Vec::with_capacity(n);
        for k in 0..n {
            v.push(match (self.c.get(k), o.c.get(k)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Poly::new(v)
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        self + &(-o)
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        if self.is_one() {
            return o.clone();
        }
        if o.is_one() {
            return self.clone();
        }
        let mut v = vec![Q::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Poly::new(v)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            c: self.c.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, o: Poly) -> Poly {
                (&self).$m(&o)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $m(self, o: &Poly) -> Poly {
                (&self).$m(o)
            }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $m(self, o: Poly) -> Poly {
                self.$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, o: &Poly) {
        *self = &*self + o;
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, o: &Poly) {
        *self = &*self - o;
    }
}

/// Ascending coefficient list, e.g. `(1, 0, -1/2)` for 1 − λ²/2.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_empty() {
            return write!(f, "(0)");
        }
        write!(f, "(")?;
        for (k, c) in self.c.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_in("λ"))
    }
}

pub(crate) fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    Q::from_str(s).map_err(|_| Error::InvalidArgument(format!("bad rational coefficient '{s}'")))
}

impl FromStr for Poly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Poly> {
        let t = s.trim();
        let t = t
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .unwrap_or(t);
        if t.trim().is_empty() {
            return Ok(Poly::zero());
        }
        let coeffs = t.split(',').map(parse_q).collect::<Result<Vec<_>>>()?;
        Ok(Poly::new(coeffs))
    }
}
