use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{fmt_rational, BiPoly, Rational, Ring, UniPoly};
use crate::error::{Error, Result};
use crate::polygon::{pt, Polygon, Pt};

/// Sparse Laurent polynomial in two variables over ℚ.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<Pt, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(pt(0, 0), Rational::one())
    }

    pub fn monomial(u: Pt, c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(u, &c);
        p
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Pt, Rational)>) -> Self {
        let mut p = Self::zero();
        for (u, c) in it {
            p.add_term(u, &c);
        }
        p
    }

    pub fn from_int_terms(it: impl IntoIterator<Item = ((i64, i64), i64)>) -> Self {
        Self::from_terms(
            it.into_iter()
                .map(|((a, b), c)| (pt(a, b), Rational::from_integer(c.into()))),
        )
    }

    pub fn add_term(&mut self, u: Pt, c: &Rational) {
        let slot = self.terms.entry(u).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&u);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Pt, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, u: Pt) -> Rational {
        self.terms.get(&u).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn support(&self) -> Vec<Pt> {
        self.terms.keys().copied().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(pt(0, 0))
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut p = self.clone();
        for (u, c) in &o.terms {
            p.add_term(*u, c);
        }
        p
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut p = Self::zero();
        for (u, a) in &self.terms {
            for (w, b) in &o.terms {
                p.add_term(*u + *w, &(a * b));
            }
        }
        p
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Self::one(), |acc, _| acc.mul(self))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_terms(self.terms.iter().map(|(u, a)| (*u, a * c)))
    }

    /// Value at `x = y = 1`.
    pub fn eval_ones(&self) -> Rational {
        self.terms.values().sum()
    }

    pub fn eval(&self, x: &Rational, y: &Rational) -> Rational {
        self.terms
            .iter()
            .map(|(u, c)| c * x.pow(u.x as i32) * y.pow(u.y as i32))
            .sum()
    }

    /// Terms grouped by `⟨v, u⟩`.
    pub fn slices(&self, v: Pt) -> BTreeMap<i64, LaurentPoly> {
        let mut out: BTreeMap<i64, LaurentPoly> = BTreeMap::new();
        for (u, c) in &self.terms {
            out.entry(v.dot(*u)).or_default().add_term(*u, c);
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(u, c)| format!("{}*x^{}*y^{}", fmt_rational(c), u.x, u.y))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn binomial(n: i64, k: i64) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// Binomial coefficients along every edge, nothing in the interior.
#[allow(non_snake_case)]
pub fn build_fP(p: &Polygon) -> LaurentPoly {
    let mut coeffs: BTreeMap<Pt, BigInt> = BTreeMap::new();
    for e in p.edges() {
        for (i, q) in e.points().into_iter().enumerate() {
            coeffs.insert(q, binomial(e.lattice_length, i as i64));
        }
    }
    LaurentPoly::from_terms(coeffs.into_iter().map(|(u, c)| (u, Rational::from_integer(c))))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NewtonPolygon {
    Point(Pt),
    Segment(Pt, Pt),
    Polygon(Polygon),
}

impl NewtonPolygon {
    pub fn as_polygon(&self) -> Option<&Polygon> {
        match self {
            NewtonPolygon::Polygon(p) => Some(p),
            _ => None,
        }
    }
}

pub fn newton_polygon(f: &LaurentPoly) -> Result<NewtonPolygon> {
    let s = f.support();
    match s.len() {
        0 => return Err(Error::EmptySupport),
        1 => return Ok(NewtonPolygon::Point(s[0])),
        _ => {}
    }
    let d = s[1] - s[0];
    if s.iter().all(|&q| d.cross(q - s[0]) == 0) {
        let (lo, hi) = (s.iter().min().unwrap(), s.iter().max().unwrap());
        return Ok(NewtonPolygon::Segment(*lo, *hi));
    }
    Ok(NewtonPolygon::Polygon(Polygon::hull(&s)?))
}

/// Chart coordinates `X, Y` with `x^u = X^{⟨m1,u⟩} Y^{⟨m2,u⟩}` for a unimodular
/// pair `m1, m2` in the dual lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChartBasis {
    pub m1: Pt,
    pub m2: Pt,
    /// Columns `n1, n2` with `⟨mi, nj⟩ = δij`, so `X = x^{n1}`, `Y = x^{n2}`.
    pub n1: Pt,
    pub n2: Pt,
}

impl ChartBasis {
    pub fn new(m1: Pt, m2: Pt) -> Result<Self> {
        let det = m1.cross(m2);
        if det.abs() != 1 {
            return Err(Error::NonUnimodular(det));
        }
        let n1 = pt(m2.y * det, -m2.x * det);
        let n2 = pt(-m1.y * det, m1.x * det);
        Ok(ChartBasis { m1, m2, n1, n2 })
    }

    pub fn exponent(&self, u: Pt) -> Pt {
        pt(self.m1.dot(u), self.m2.dot(u))
    }

    pub fn lattice_point(&self, e: Pt) -> Pt {
        self.n1.scale(e.x) + self.n2.scale(e.y)
    }

    /// Smooth cones of the minimal resolution: consecutive boundary points of `P°`.
    pub fn resolved_charts(p: &Polygon) -> Result<Vec<ChartBasis>> {
        let b = p.polar_dual()?.boundary_points();
        (0..b.len())
            .map(|i| ChartBasis::new(b[i], b[(i + 1) % b.len()]))
            .collect()
    }
}

/// `f` (plus `λ` when asked) in chart coordinates, multiplied by the monomial
/// that clears denominators, together with that monomial's exponent.
pub fn chart_polynomial_with_shift(
    f: &LaurentPoly,
    basis: &ChartBasis,
    include_lambda: bool,
) -> Result<(BiPoly, Pt)> {
    let mut terms: Vec<(Pt, UniPoly)> = f
        .terms()
        .map(|(u, c)| (basis.exponent(*u), UniPoly::constant(c.clone())))
        .collect();
    if include_lambda {
        terms.push((pt(0, 0), UniPoly::x()));
    }
    if terms.is_empty() {
        return Err(Error::EmptySupport);
    }
    let a0 = terms.iter().map(|(e, _)| e.x).min().unwrap();
    let b0 = terms.iter().map(|(e, _)| e.y).min().unwrap();
    let bp = BiPoly::from_terms(
        terms
            .into_iter()
            .map(|(e, c)| (((e.x - a0) as u32, (e.y - b0) as u32), c)),
    );
    Ok((bp, pt(a0, b0)))
}

pub fn chart_polynomial(f: &LaurentPoly, basis: &ChartBasis, include_lambda: bool) -> Result<BiPoly> {
    Ok(chart_polynomial_with_shift(f, basis, include_lambda)?.0)
}

/// Inverse of [`chart_polynomial_with_shift`] on λ-free polynomials.
pub fn from_chart(p: &BiPoly, basis: &ChartBasis, shift: Pt) -> Result<LaurentPoly> {
    let mut out = LaurentPoly::zero();
    for (&(i, j), c) in p.terms() {
        if c.degree().unwrap_or(0) > 0 {
            return Err(Error::InvalidInput("chart polynomial depends on λ".into()));
        }
        let e = pt(i as i64, j as i64) + shift;
        out.add_term(basis.lattice_point(e), &c.coeff(0));
    }
    Ok(out)
}

/// `x^u ↦ x^u (1 + x^w)^{⟨u,v⟩}`.
///
/// Slices at negative height must be divisible by the matching power of
/// `1 + x^w`.
pub fn algebraic_mutation(f: &LaurentPoly, v: Pt, w: Pt) -> Result<LaurentPoly> {
    if v.dot(w) != 0 || v.gcd() != 1 || w.gcd() != 1 {
        return Err(Error::InvalidInput(format!(
            "need primitive v ⟂ w, got v={v:?} w={w:?}"
        )));
    }
    let mut out = LaurentPoly::zero();
    for (d, g) in f.slices(v) {
        // g = x^{base} · p(x^w) with p an ordinary polynomial
        let base = *g
            .support()
            .iter()
            .min_by_key(|u| w.dot(**u))
            .unwrap();
        let ww = w.dot(w);
        let mut c = Vec::new();
        for (u, a) in g.terms() {
            let k = (w.dot(*u - base) / ww) as usize;
            if c.len() <= k {
                c.resize(k + 1, Rational::zero());
            }
            c[k] = a.clone();
        }
        let p = UniPoly::new(c);
        let h = UniPoly::from_ints(&[1, 1]);
        let q = if d >= 0 {
            &p * &h.pow(d as usize)
        } else {
            p.div_exact(&h.pow((-d) as usize))
                .ok_or(Error::MutationNotAdmissible)?
        };
        for (k, a) in q.coeffs().iter().enumerate() {
            out.add_term(base + w.scale(k as i64), a);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;

    fn poly(v: &[(i64, i64)]) -> Polygon {
        Polygon::new(v.iter().map(|&(x, y)| pt(x, y)).collect()).unwrap()
    }

    fn p4a() -> Polygon {
        poly(&[(1, 0), (0, 1), (-1, 0), (0, -1)])
    }

    fn p4c() -> Polygon {
        poly(&[(-1, 1), (0, -1), (1, 1)])
    }

    fn bi(terms: &[((u32, u32), i64, i64)]) -> BiPoly {
        // (exponent, constant, λ-coefficient)
        BiPoly::from_terms(
            terms
                .iter()
                .map(|&(e, c, l)| (e, UniPoly::from_ints(&[c, l]))),
        )
    }

    #[test]
    fn f_p_examples() {
        let f = build_fP(&p4a());
        assert_eq!(f, LaurentPoly::from_int_terms([((1, 0), 1), ((0, 1), 1), ((-1, 0), 1), ((0, -1), 1)]));
        let f3 = build_fP(&poly(&[(1, 0), (0, 1), (-1, -1)]));
        assert_eq!(f3, LaurentPoly::from_int_terms([((1, 0), 1), ((0, 1), 1), ((-1, -1), 1)]));
        let f4c = build_fP(&p4c());
        assert_eq!(f4c.coeff(pt(0, 1)), int(2));
        assert_eq!(f4c.len(), 4);
        assert_eq!(f4c.to_string(), "1*x^-1*y^1 + 1*x^0*y^-1 + 2*x^0*y^1 + 1*x^1*y^1");
    }

    #[test]
    fn edge_restriction_is_binomial_power() {
        let p = poly(&[(-1, -1), (2, -1), (-1, 2)]);
        let f = build_fP(&p);
        for e in p.edges() {
            let s: Rational = e.points().iter().map(|q| f.coeff(*q)).sum();
            assert_eq!(s, int(1 << e.lattice_length));
        }
    }

    #[test]
    fn newton_polygons() {
        assert_eq!(newton_polygon(&build_fP(&p4c())).unwrap(), NewtonPolygon::Polygon(p4c()));
        let s = LaurentPoly::from_int_terms([((0, 0), 1), ((1, 0), 1)]);
        assert_eq!(newton_polygon(&s).unwrap(), NewtonPolygon::Segment(pt(0, 0), pt(1, 0)));
        let s = LaurentPoly::from_int_terms([((-1, 0), 1), ((1, 0), 1)]);
        assert_eq!(newton_polygon(&s).unwrap(), NewtonPolygon::Segment(pt(-1, 0), pt(1, 0)));
        assert_eq!(newton_polygon(&LaurentPoly::zero()), Err(Error::EmptySupport));
    }

    #[test]
    fn chart_p4a() {
        let b = ChartBasis::new(pt(1, 1), pt(-1, 0)).unwrap();
        let c = chart_polynomial(&build_fP(&p4a()), &b, true).unwrap();
        // x² + y(λx + x² + y + 1)
        let want = bi(&[((2, 0), 1, 0), ((1, 1), 0, 1), ((2, 1), 1, 0), ((0, 2), 1, 0), ((0, 1), 1, 0)]);
        assert_eq!(c, want);
        assert_eq!(ChartBasis::new(pt(1, 1), pt(2, 0)), Err(Error::NonUnimodular(-2)));
    }

    #[test]
    fn chart_p5a_and_p6b() {
        let b = ChartBasis::new(pt(1, 0), pt(0, -1)).unwrap();
        let p5a = poly(&[(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1)]);
        let c = chart_polynomial(&build_fP(&p5a), &b, true).unwrap();
        let want = bi(&[((1, 1), 0, 1), ((2, 1), 1, 0), ((1, 0), 1, 0), ((0, 0), 1, 0), ((0, 1), 1, 0), ((1, 2), 1, 0)]);
        assert_eq!(c, want);
        let p6b = poly(&[(1, 1), (-1, 1), (-1, -1), (0, -1)]);
        let c = chart_polynomial(&build_fP(&p6b), &b, true).unwrap();
        let want = bi(&[
            ((1, 1), 0, 1),
            ((0, 1), 2, 0),
            ((0, 0), 1, 0),
            ((1, 0), 2, 0),
            ((2, 0), 1, 0),
            ((0, 2), 1, 0),
            ((1, 2), 1, 0),
        ]);
        assert_eq!(c, want);
    }

    #[test]
    fn charts_are_primitive_and_invertible() {
        for p in crate::polygon::enumerate_reflexive(3) {
            let f = build_fP(&p);
            for b in ChartBasis::resolved_charts(&p).unwrap() {
                let (c, shift) = chart_polynomial_with_shift(&f, &b, false).unwrap();
                assert!(!c.divisible_by(crate::algebra::Var::X));
                assert!(!c.divisible_by(crate::algebra::Var::Y));
                assert_eq!(from_chart(&c, &b, shift).unwrap(), f);
            }
        }
    }

    #[test]
    fn mutation_of_p4c() {
        let f = build_fP(&p4c());
        let g = algebraic_mutation(&f, pt(0, -1), pt(1, 0)).unwrap();
        assert_eq!(
            g,
            LaurentPoly::from_int_terms([((-1, 1), 1), ((0, 1), 1), ((0, -1), 1), ((1, -1), 1)])
        );
        let q = newton_polygon(&g).unwrap();
        assert!(q.as_polygon().unwrap().equivalent(&p4a()));
        assert_eq!(algebraic_mutation(&g, pt(0, 1), pt(1, 0)).unwrap(), f);
    }

    #[test]
    fn mutation_trivial_on_height_zero() {
        let f = LaurentPoly::from_int_terms([((1, 0), 3), ((-2, 0), 1)]);
        assert_eq!(algebraic_mutation(&f, pt(0, 1), pt(1, 0)).unwrap(), f);
    }

    #[test]
    fn inadmissible_mutation() {
        let f = build_fP(&p4a());
        assert_eq!(
            algebraic_mutation(&f, pt(0, -1), pt(1, 0)),
            Err(Error::MutationNotAdmissible)
        );
    }
}
