use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::rational::{fmt_rational, int, Rational};
use crate::error::{Error, Result};

/// An exact commutative ring that is also a ℚ-algebra with gcds.
///
/// Implemented for [`Rational`] and, recursively, for [`Poly`] over any such
/// ring, so `Poly<Poly<Rational>>` is `ℚ[λ][x]`, `ℚ[y][x]`, and so on.
pub trait Ring: Clone + PartialEq + fmt::Debug {
    fn zero_el() -> Self;
    fn one_el() -> Self;
    fn is_zero_el(&self) -> bool;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negated(&self) -> Self;
    /// `self / d` if the quotient exists in the ring.
    fn exact_div(&self, d: &Self) -> Option<Self>;
    fn from_rational(q: Rational) -> Self;
    fn scale(&self, q: &Rational) -> Self;
    /// Leading coefficient of the innermost ring ℚ; zero for zero.
    fn lead_rational(&self) -> Rational;
    /// Gcd normalized so that its leading rational is 1.
    fn gcd(&self, o: &Self) -> Self;

    fn pow(&self, mut e: usize) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one_el();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.times(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.times(&base);
            }
        }
        acc
    }
}

impl Ring for Rational {
    fn zero_el() -> Self {
        Zero::zero()
    }
    fn one_el() -> Self {
        One::one()
    }
    fn is_zero_el(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negated(&self) -> Self {
        -self
    }
    fn exact_div(&self, d: &Self) -> Option<Self> {
        if Zero::is_zero(d) {
            None
        } else {
            Some(self / d)
        }
    }
    fn from_rational(q: Rational) -> Self {
        q
    }
    fn scale(&self, q: &Rational) -> Self {
        self * q
    }
    fn lead_rational(&self) -> Rational {
        self.clone()
    }
    fn gcd(&self, o: &Self) -> Self {
        if Zero::is_zero(self) && Zero::is_zero(o) {
            Zero::zero()
        } else {
            One::one()
        }
    }
}

/// Dense univariate polynomial, coefficients in ascending degree.
///
/// The zero polynomial has no coefficients and degree `None` (−∞).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<R> {
    c: Vec<R>,
}

impl<R: Ring> Poly<R> {
    pub fn new(mut c: Vec<R>) -> Self {
        while c.last().is_some_and(|x| x.is_zero_el()) {
            c.pop();
        }
        Poly { c }
    }

    pub fn zero() -> Self {
        Poly { c: Vec::new() }
    }

    pub fn constant(a: R) -> Self {
        Self::new(vec![a])
    }

    /// `a·X^k`
    pub fn monomial(a: R, k: usize) -> Self {
        let mut c = vec![R::zero_el(); k];
        c.push(a);
        Self::new(c)
    }

    /// The variable itself.
    pub fn x() -> Self {
        Self::monomial(R::one_el(), 1)
    }

    pub fn coeffs(&self) -> &[R] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> R {
        self.c.get(i).cloned().unwrap_or_else(R::zero_el)
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// True for polynomials of degree ≤ 0 (including zero).
    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn lc(&self) -> R {
        self.c.last().cloned().unwrap_or_else(R::zero_el)
    }

    pub fn scalar_mul(&self, a: &R) -> Self {
        Self::new(self.c.iter().map(|x| x.times(a)).collect())
    }

    pub fn scalar_div(&self, a: &R) -> Option<Self> {
        let c: Option<Vec<R>> = self.c.iter().map(|x| x.exact_div(a)).collect();
        c.map(Self::new)
    }

    /// Multiply by `X^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = vec![R::zero_el(); k];
        c.extend(self.c.iter().cloned());
        Poly { c }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| a.scale(&int(i as i64)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &R) -> R {
        self.c
            .iter()
            .rev()
            .fold(R::zero_el(), |acc, a| acc.times(x).plus(a))
    }

    /// Apply `g` to every coefficient.
    pub fn map<S: Ring>(&self, g: impl Fn(&R) -> S) -> Poly<S> {
        Poly::new(self.c.iter().map(g).collect())
    }

    /// Pseudo-remainder: `lc(b)^(deg a − deg b + 1)·a = q·b + r`.
    pub fn prem(&self, b: &Self) -> Self {
        let db = b.degree().expect("pseudo-division by zero");
        let Some(da) = self.degree() else {
            return Self::zero();
        };
        if da < db {
            return self.clone();
        }
        let lb = b.lc();
        let mut r = self.clone();
        let mut steps = da - db + 1;
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let t = Self::monomial(r.lc(), dr - db);
            r = &r.scalar_mul(&lb) - &(&t * b);
            steps -= 1;
        }
        if steps > 0 {
            r = r.scalar_mul(&lb.pow(steps));
        }
        r
    }

    /// Exact quotient `self / b`, or `None` if `b` does not divide `self`.
    pub fn div_exact(&self, b: &Self) -> Option<Self> {
        let db = b.degree()?;
        let lb = b.lc();
        let mut r = self.clone();
        let mut q = vec![R::zero_el(); self.c.len().saturating_sub(db)];
        while let Some(dr) = r.degree() {
            if dr < db {
                return None;
            }
            let a = r.lc().exact_div(&lb)?;
            let t = Self::monomial(a.clone(), dr - db);
            r = &r - &(&t * b);
            q[dr - db] = a;
        }
        Some(Self::new(q))
    }

    /// Resultant by the subresultant polynomial remainder sequence.
    ///
    /// Returns the exact Sylvester value. Errors when both inputs have
    /// degree ≤ 0, since there is nothing to eliminate.
    pub fn resultant(&self, other: &Self) -> Result<R> {
        if self.is_constant() && other.is_constant() {
            return Err(Error::NothingToEliminate);
        }
        if self.is_zero() || other.is_zero() {
            return Ok(R::zero_el());
        }
        let inexact = || Error::Internal("inexact division in subresultant sequence".into());
        let (mut a, mut b) = (self.clone(), other.clone());
        let mut negate = false;
        if a.c.len() < b.c.len() {
            if a.c.len() % 2 == 0 && b.c.len() % 2 == 0 {
                negate = true;
            }
            std::mem::swap(&mut a, &mut b);
        }
        let sign = |x: R, neg: bool| if neg { x.negated() } else { x };
        if b.c.len() == 1 {
            return Ok(sign(b.lc().pow(a.c.len() - 1), negate));
        }
        let mut g = R::one_el();
        let mut h = R::one_el();
        loop {
            let (m, n) = (a.c.len() - 1, b.c.len() - 1);
            let delta = m - n;
            if m % 2 == 1 && n % 2 == 1 {
                negate = !negate;
            }
            let r = a.prem(&b);
            if r.is_zero() {
                return Ok(R::zero_el());
            }
            a = b;
            b = r
                .scalar_div(&g.times(&h.pow(delta)))
                .ok_or_else(inexact)?;
            g = a.lc();
            h = match delta {
                0 => h,
                1 => g.clone(),
                _ => g.pow(delta).exact_div(&h.pow(delta - 1)).ok_or_else(inexact)?,
            };
            if b.c.len() == 1 {
                let da = a.c.len() - 1;
                let out = b.lc().pow(da).exact_div(&h.pow(da - 1)).ok_or_else(inexact)?;
                return Ok(sign(out, negate));
            }
        }
    }

    /// Gcd of the coefficients.
    pub fn content(&self) -> R {
        self.c.iter().fold(R::zero_el(), |g, a| g.gcd(a))
    }

    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scalar_div(&self.content())
            .expect("content divides every coefficient")
    }

    /// Scale so that the innermost leading rational is 1.
    pub fn normalize(&self) -> Self {
        let l = self.lead_rational();
        if Zero::is_zero(&l) {
            return Self::zero();
        }
        self.scale(&(Rational::one() / l))
    }
}

impl<R: Ring> Ring for Poly<R> {
    fn zero_el() -> Self {
        Poly::zero()
    }
    fn one_el() -> Self {
        Poly::constant(R::one_el())
    }
    fn is_zero_el(&self) -> bool {
        self.c.is_empty()
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negated(&self) -> Self {
        -self
    }
    fn exact_div(&self, d: &Self) -> Option<Self> {
        self.div_exact(d)
    }
    fn from_rational(q: Rational) -> Self {
        Poly::constant(R::from_rational(q))
    }
    fn scale(&self, q: &Rational) -> Self {
        Poly::new(self.c.iter().map(|a| a.scale(q)).collect())
    }
    fn lead_rational(&self) -> Rational {
        self.c
            .last()
            .map(|a| a.lead_rational())
            .unwrap_or_else(Rational::zero)
    }

    /// Primitive PRS over the coefficient ring, with contents split off.
    fn gcd(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.normalize();
        }
        if o.is_zero() {
            return self.normalize();
        }
        let c = self.content().gcd(&o.content());
        let (mut a, mut b) = (self.primitive_part(), o.primitive_part());
        if a.c.len() < b.c.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            if b.c.len() == 1 {
                b = Self::one_el();
                break;
            }
            let r = a.prem(&b);
            a = b;
            b = r.primitive_part().normalize();
        }
        let g = if b.is_zero() { a } else { b };
        Poly::constant(c).times(&g.primitive_part()).normalize()
    }
}

impl<R: Ring> fmt::Debug for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.c)
    }
}

impl<R: Ring> Add for &Poly<R> {
    type Output = Poly<R>;
    fn add(self, o: &Poly<R>) -> Poly<R> {
        let n = self.c.len().max(o.c.len());
        Poly::new(
            (0..n)
                .map(|i| match (self.c.get(i), o.c.get(i)) {
                    (Some(a), Some(b)) => a.plus(b),
                    (Some(a), None) => a.clone(),
                    (None, Some(b)) => b.clone(),
                    (None, None) => unreachable!(),
                })
                .collect(),
        )
    }
}

impl<R: Ring> Sub for &Poly<R> {
    type Output = Poly<R>;
    fn sub(self, o: &Poly<R>) -> Poly<R> {
        self + &(-o)
    }
}

impl<R: Ring> Neg for &Poly<R> {
    type Output = Poly<R>;
    fn neg(self) -> Poly<R> {
        Poly {
            c: self.c.iter().map(|a| a.negated()).collect(),
        }
    }
}

impl<R: Ring> Mul for &Poly<R> {
    type Output = Poly<R>;
    fn mul(self, o: &Poly<R>) -> Poly<R> {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![R::zero_el(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero_el() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] = c[i + j].plus(&a.times(b));
            }
        }
        Poly::new(c)
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl<R: Ring> $tr for Poly<R> {
            type Output = Poly<R>;
            fn $m(self, o: Poly<R>) -> Poly<R> {
                (&self).$m(&o)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl<R: Ring> Neg for Poly<R> {
    type Output = Poly<R>;
    fn neg(self) -> Poly<R> {
        -&self
    }
}

impl Poly<Rational> {
    /// Parse-free constructor from small integers, ascending degree.
    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&a| int(a)).collect())
    }

    pub fn monic(&self) -> Self {
        self.normalize()
    }

    /// Euclidean division over ℚ.
    pub fn div_rem(&self, b: &Self) -> (Self, Self) {
        let db = b.degree().expect("division by zero polynomial");
        let inv = Rational::one() / b.lc();
        let mut r = self.clone();
        let mut q = vec![Rational::zero(); self.c.len().saturating_sub(db)];
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let a = r.lc() * &inv;
            r = &r - &(&Self::monomial(a.clone(), dr - db) * b);
            q[dr - db] = a;
        }
        (Self::new(q), r)
    }

    /// Render in descending powers, e.g. `l^3-l^2-18*l+43`.
    pub fn display(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, a) in self.c.iter().enumerate().rev() {
            if Zero::is_zero(a) {
                continue;
            }
            let neg = a < &Rational::zero();
            let mag = if neg { -a } else { a.clone() };
            if neg {
                s.push('-');
            } else if !s.is_empty() {
                s.push('+');
            }
            let unit = mag.is_one();
            if k == 0 || !unit {
                s.push_str(&fmt_rational(&mag));
            }
            if k > 0 {
                if !unit {
                    s.push('*');
                }
                s.push_str(var);
                if k > 1 {
                    s.push_str(&format!("^{k}"));
                }
            }
        }
        s
    }
}
