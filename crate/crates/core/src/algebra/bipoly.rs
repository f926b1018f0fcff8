use std::collections::BTreeMap;
use std::fmt;

use super::poly::{Poly, Ring};
use super::rational::Rational;
use super::UniPoly;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    X,
    Y,
}

/// Sparse polynomial in `x, y` with coefficients in `ℚ[λ]`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), UniPoly>,
}

impl BiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms(it: impl IntoIterator<Item = ((u32, u32), UniPoly)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in it {
            p.add_term(e, &c);
        }
        p
    }

    /// Rational coefficients only.
    pub fn from_rational_terms(it: impl IntoIterator<Item = ((u32, u32), Rational)>) -> Self {
        Self::from_terms(it.into_iter().map(|(e, c)| (e, UniPoly::constant(c))))
    }

    pub fn add_term(&mut self, e: (u32, u32), c: &UniPoly) {
        let slot = self.terms.entry(e).or_insert_with(UniPoly::zero);
        *slot = &*slot + c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &UniPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, i: u32, j: u32) -> UniPoly {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(UniPoly::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree_in(&self, v: Var) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| pick(v, i, j)).max()
    }

    pub fn divisible_by(&self, v: Var) -> bool {
        !self.is_zero() && self.terms.keys().all(|&(i, j)| pick(v, i, j) > 0)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut p = self.clone();
        for (e, c) in &o.terms {
            p.add_term(*e, c);
        }
        p
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&UniPoly::constant(Rational::from_integer((-1).into()))))
    }

    pub fn scale(&self, c: &UniPoly) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, a)| (*e, a * c)))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut p = Self::zero();
        for ((i, j), a) in &self.terms {
            for ((k, l), b) in &o.terms {
                p.add_term((i + k, j + l), &(a * b));
            }
        }
        p
    }

    pub fn partial(&self, v: Var) -> Self {
        Self::from_terms(self.terms.iter().filter_map(|(&(i, j), c)| {
            let k = pick(v, i, j);
            (k > 0).then(|| {
                let e = match v {
                    Var::X => (i - 1, j),
                    Var::Y => (i, j - 1),
                };
                (e, c.scale(&Rational::from_integer(k.into())))
            })
        }))
    }

    /// Substitute a rational value for λ.
    pub fn specialize(&self, lambda: &Rational) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .map(|(e, c)| (*e, UniPoly::constant(c.eval(lambda)))),
        )
    }

    /// Rewrite as a polynomial in `outer` whose coefficients are polynomials
    /// in the other variable over `ℚ[λ]`.
    pub fn to_dense(&self, outer: Var) -> Poly<Poly<UniPoly>> {
        let n = self.degree_in(outer).map_or(0, |d| d as usize + 1);
        let mut rows: Vec<BTreeMap<u32, UniPoly>> = vec![BTreeMap::new(); n];
        for (&(i, j), c) in &self.terms {
            let (o, inner) = match outer {
                Var::X => (i, j),
                Var::Y => (j, i),
            };
            rows[o as usize].insert(inner, c.clone());
        }
        Poly::new(
            rows.into_iter()
                .map(|row| {
                    let m = row.keys().max().map_or(0, |&d| d as usize + 1);
                    let mut v = vec![UniPoly::zero(); m];
                    for (k, c) in row {
                        v[k as usize] = c;
                    }
                    Poly::new(v)
                })
                .collect(),
        )
    }

    /// Rational-coefficient dense form `ℚ[y][x]` (λ must be absent).
    pub fn to_dense_rational(&self, outer: Var) -> Option<Poly<Poly<Rational>>> {
        if self.terms.values().any(|c| c.degree().unwrap_or(0) > 0) {
            return None;
        }
        Some(self.to_dense(outer).map(|inner| inner.map(|c| c.coeff(0))))
    }

    pub fn from_dense_rational(p: &Poly<Poly<Rational>>, outer: Var) -> Self {
        let mut out = Self::zero();
        for (o, row) in p.coeffs().iter().enumerate() {
            for (k, c) in row.coeffs().iter().enumerate() {
                let e = match outer {
                    Var::X => (o as u32, k as u32),
                    Var::Y => (k as u32, o as u32),
                };
                out.add_term(e, &UniPoly::constant(c.clone()));
            }
        }
        out
    }

    /// `Res_var(self, other)`, a polynomial in the other variable over `ℚ[λ]`.
    pub fn resultant(&self, other: &Self, var: Var) -> Result<Poly<UniPoly>> {
        let (a, b) = (self.to_dense(var), other.to_dense(var));
        if a.is_constant() && b.is_constant() {
            return Err(Error::NothingToEliminate);
        }
        a.resultant(&b)
    }

    pub fn eval(&self, x: &Rational, y: &Rational, lambda: &Rational) -> Rational {
        let mut acc = Rational::from_integer(0.into());
        for (&(i, j), c) in &self.terms {
            acc += c.eval(lambda) * x.pow(i as i32) * y.pow(j as i32);
        }
        acc
    }
}

fn pick(v: Var, i: u32, j: u32) -> u32 {
    match v {
        Var::X => i,
        Var::Y => j,
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(&(i, j), c)| format!("({})*x^{i}*y^{j}", c.display("l")))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;

    fn lam() -> UniPoly {
        UniPoly::x()
    }

    #[test]
    fn resultant_in_x_over_lambda() {
        // x² + λ, x + 1  →  λ + 1
        let a = BiPoly::from_terms([((2, 0), UniPoly::one_el()), ((0, 0), lam())]);
        let b = BiPoly::from_terms([((1, 0), UniPoly::one_el()), ((0, 0), UniPoly::one_el())]);
        let r = a.resultant(&b, Var::X).unwrap();
        assert_eq!(r, Poly::constant(UniPoly::from_ints(&[1, 1])));
        let c = BiPoly::from_terms([((0, 0), lam())]);
        assert_eq!(c.resultant(&c, Var::X), Err(Error::NothingToEliminate));
    }

    #[test]
    fn partials_and_specialization() {
        // x²y + λxy
        let p = BiPoly::from_terms([((2, 1), UniPoly::one_el()), ((1, 1), lam())]);
        let px = p.partial(Var::X);
        assert_eq!(px.coeff(1, 1), UniPoly::from_ints(&[2]));
        assert_eq!(px.coeff(0, 1), lam());
        let s = p.specialize(&int(3));
        assert_eq!(s.eval(&int(2), &int(5), &int(0)), int(50));
        assert!(p.divisible_by(Var::Y) && p.divisible_by(Var::X));
    }

    #[test]
    fn dense_round_trip() {
        let p = BiPoly::from_rational_terms([((2, 0), int(1)), ((0, 3), int(-2)), ((1, 1), int(5))]);
        for v in [Var::X, Var::Y] {
            let d = p.to_dense_rational(v).unwrap();
            assert_eq!(BiPoly::from_dense_rational(&d, v), p);
        }
    }
}
