//! Rational functions in canonical form: gcd-reduced, monic denominator.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Zero};

use super::poly::{q, Poly, Q};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    /// Builds `num / den` and reduces it. Fails on a zero denominator.
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::InvalidArgument("zero denominator".into()));
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g).unwrap(), den.exact_div(&g).unwrap())
        };
        Self::normalize(num, den)
    }

    /// Scales so the denominator is monic; assumes num/den already coprime.
    fn normalize(num: Poly, den: Poly) -> Self {
        let l = den.lead().unwrap().clone();
        if l.is_one() {
            RationalFunction { num, den }
        } else {
            let inv = l.recip();
            RationalFunction {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn zero() -> Self {
        RationalFunction {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        RationalFunction {
            num: Poly::constant(c),
            den: Poly::one(),
        }
    }

    pub fn int(c: i64) -> Self {
        Self::constant(q(c))
    }

    pub fn poly(p: Poly) -> Self {
        RationalFunction {
            num: p,
            den: Poly::one(),
        }
    }

    /// `num(roots) / den(roots)`: monic polynomials from integer root lists,
    /// scaled by `gain`. Convenient for writing factored transfer functions.
    pub fn from_roots(gain: i64, zeros: &[i64], poles: &[i64]) -> Self {
        Self::reduce(
            Poly::from_int_roots(zeros).scale(&q(gain)),
            Poly::from_int_roots(poles),
        )
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_constant(&self) -> Option<Q> {
        (self.den.is_one() && self.num.is_constant()).then(|| self.num.coeff(0))
    }

    /// deg den − deg num; `None` for zero.
    pub fn relative_degree(&self) -> Option<isize> {
        let dn = self.num.degree()? as isize;
        Some(self.den.deg0() as isize - dn)
    }

    pub fn is_proper(&self) -> bool {
        self.relative_degree().is_none_or(|r| r >= 0)
    }

    pub fn is_strictly_proper(&self) -> bool {
        self.relative_degree().is_none_or(|r| r > 0)
    }

    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Self::normalize(self.den.clone(), self.num.clone()))
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RationalFunction {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Value at λ0; `None` when λ0 is a pole.
    pub fn eval(&self, x: &Q) -> Option<Q> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(x) / d)
    }

    /// Limit as λ → ∞; `None` when improper.
    pub fn value_at_infinity(&self) -> Option<Q> {
        match self.relative_degree() {
            None => Some(Q::zero()),
            Some(r) if r > 0 => Some(Q::zero()),
            Some(0) => Some(self.num.lead().unwrap().clone()),
            Some(_) => None,
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        RationalFunction {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    /// Readable form with denominators factored over their rational roots,
    /// e.g. `(s - 2) / ((s + 4)(s + 6))`.
    pub fn pretty(&self, var: &str) -> String {
        if self.den.is_one() {
            return self.num.to_string_in(var);
        }
        let n = factored(&self.num, var);
        let d = factored(&self.den, var);
        format!("{} / {}", grouped(n), grouped(d))
    }
}

/// Parenthesizes `s` unless it is already a single factor such as `3`,
/// `(s + 1)` or `(s + 1)^2`.
fn grouped(s: String) -> String {
    let atom = if let Some(rest) = s.strip_prefix('(') {
        let mut depth = 1;
        let close = rest.char_indices().find_map(|(i, c)| {
            match c {
                '(' => depth += 1,
                ')' => depth -= 1,
                _ => {}
            }
            (depth == 0).then_some(i)
        });
        close.is_some_and(|i| {
            let tail = &rest[i + 1..];
            tail.is_empty()
                || tail
                    .strip_prefix('^')
                    .is_some_and(|e| e.chars().all(|c| c.is_ascii_digit()))
        })
    } else {
        !s.contains(' ') && !s.contains('(')
    };
    if atom {
        s
    } else {
        format!("({s})")
    }
}

fn factored(p: &Poly, var: &str) -> String {
    if p.is_constant() || p.degree() == Some(1) {
        return p.to_string_in(var);
    }
    let roots = p.rational_roots();
    if roots.is_empty() {
        return p.to_string_in(var);
    }
    let mut rest = p.clone();
    let mut parts = Vec::new();
    for (r, m) in &roots {
        let lin = Poly::new(vec![-r.clone(), Q::one()]);
        rest = rest.exact_div(&lin.pow(*m as u32)).unwrap();
        let f = format!("({})", lin.to_string_in(var));
        parts.push(if *m > 1 { format!("{f}^{m}") } else { f });
    }
    let mut s = String::new();
    if rest.is_constant() {
        let c = rest.coeff(0);
        if c == -Q::one() {
            s.push('-');
        } else if !c.is_one() {
            s.push_str(&format!("{c} "));
        }
    } else {
        s.push_str(&format!("({})", rest.to_string_in(var)));
    }
    s.push_str(&parts.concat());
    s
}

impl Default for RationalFunction {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<Poly> for RationalFunction {
    fn from(p: Poly) -> Self {
        Self::poly(p)
    }
}

impl From<Q> for RationalFunction {
    fn from(c: Q) -> Self {
        Self::constant(c)
    }
}

impl<'a> Add<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn add(self, o: &RationalFunction) -> RationalFunction {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && o.den.is_one() {
            return RationalFunction::poly(&self.num + &o.num);
        }
        if self.den == o.den {
            return RationalFunction::reduce(&self.num + &o.num, self.den.clone());
        }
        // a/b + c/d with g = gcd(b, d): the result's only possible common
        // factor with the denominator divides g.
        let g = self.den.gcd(&o.den);
        if g.is_one() {
            let num = &(&self.num * &o.den) + &(&o.num * &self.den);
            if num.is_zero() {
                return RationalFunction::zero();
            }
            return RationalFunction::normalize(num, &self.den * &o.den);
        }
        let b1 = self.den.exact_div(&g).unwrap();
        let d1 = o.den.exact_div(&g).unwrap();
        let num = &(&self.num * &d1) + &(&o.num * &b1);
        if num.is_zero() {
            return RationalFunction::zero();
        }
        let h = num.gcd(&g);
        let (num, g) = if h.is_one() {
            (num, g)
        } else {
            (num.exact_div(&h).unwrap(), g.exact_div(&h).unwrap())
        };
        RationalFunction::normalize(num, &(&b1 * &d1) * &g)
    }
}

impl<'a> Sub<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn sub(self, o: &RationalFunction) -> RationalFunction {
        self + &(-o)
    }
}

impl<'a> Mul<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn mul(self, o: &RationalFunction) -> RationalFunction {
        if self.is_zero() || o.is_zero() {
            return RationalFunction::zero();
        }
        if self.is_one() {
            return o.clone();
        }
        if o.is_one() {
            return self.clone();
        }
        // Cross-cancel: gcd(a, d) and gcd(c, b) for (a/b)(c/d).
        let g1 = self.num.gcd(&o.den);
        let g2 = o.num.gcd(&self.den);
        let (a, d) = if g1.is_one() {
            (self.num.clone(), o.den.clone())
        } else {
            (
                self.num.exact_div(&g1).unwrap(),
                o.den.exact_div(&g1).unwrap(),
            )
        };
        let (c, b) = if g2.is_one() {
            (o.num.clone(), self.den.clone())
        } else {
            (
                o.num.exact_div(&g2).unwrap(),
                self.den.exact_div(&g2).unwrap(),
            )
        };
        RationalFunction::normalize(&a * &c, &b * &d)
    }
}

impl<'a> Div<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    /// Panics on division by zero; use [`RationalFunction::recip`] to check.
    fn div(self, o: &RationalFunction) -> RationalFunction {
        self * &o.recip().expect("division by the zero rational function")
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, o: RationalFunction) -> RationalFunction {
                (&self).$m(&o)
            }
        }
        impl $tr<&RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, o: &RationalFunction) -> RationalFunction {
                (&self).$m(o)
            }
        }
        impl $tr<RationalFunction> for &RationalFunction {
            type Output = RationalFunction;
            fn $m(self, o: RationalFunction) -> RationalFunction {
                self.$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

/// Orders by denominator then numerator coefficients; only used to make
/// collections deterministic.
impl PartialOrd for RationalFunction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RationalFunction {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.den.coeffs(), self.num.coeffs()).cmp(&(other.den.coeffs(), other.num.coeffs()))
    }
}

/// `num / den`, both as ascending coefficient lists: `(-1, 1) / (1, 1)`.
impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} / {}", self.num, self.den)
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.pretty("λ"))
    }
}

impl FromStr for RationalFunction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.split_once(" / ") {
            Some((n, d)) => RationalFunction::new(n.parse()?, d.parse()?),
            None => Ok(RationalFunction::poly(s.parse()?)),
        }
    }
}
