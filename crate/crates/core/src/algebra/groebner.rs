//! Gröbner bases over ℚ in up to four variables.
//!
//! Used to certify eliminations: the elimination ideal gives exactly the
//! projection of a solution set, and zero-dimensional quotients give exact
//! counts of distinct solutions.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use super::rational::Rational;
use super::roots::gcd_poly;
use super::UniPoly;

pub const MAX_VARS: usize = 4;
pub type Mono = [u16; MAX_VARS];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    Lex,
    GRevLex,
    /// Block order: grevlex on the first `k` variables, then grevlex on the rest.
    Elim(usize),
}

fn grevlex(a: &[u16], b: &[u16]) -> Ordering {
    let da: u32 = a.iter().map(|&e| e as u32).sum();
    let db: u32 = b.iter().map(|&e| e as u32).sum();
    da.cmp(&db).then_with(|| {
        for i in (0..a.len()).rev() {
            match a[i].cmp(&b[i]) {
                Ordering::Equal => continue,
                o => return o.reverse(),
            }
        }
        Ordering::Equal
    })
}

impl Order {
    pub fn cmp(&self, a: &Mono, b: &Mono) -> Ordering {
        match *self {
            Order::Lex => a.cmp(b),
            Order::GRevLex => grevlex(a, b),
            Order::Elim(k) => grevlex(&a[..k], &b[..k]).then_with(|| grevlex(&a[k..], &b[k..])),
        }
    }
}

fn divides(a: &Mono, b: &Mono) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &Mono, b: &Mono) -> Mono {
    std::array::from_fn(|i| a[i].max(b[i]))
}

fn mono_sub(a: &Mono, b: &Mono) -> Mono {
    std::array::from_fn(|i| a[i] - b[i])
}

fn mono_add(a: &Mono, b: &Mono) -> Mono {
    std::array::from_fn(|i| a[i] + b[i])
}

/// Sparse multivariate polynomial; terms kept in ascending order so the
/// leading term is last.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly {
    ord: Order,
    terms: Vec<(Mono, Rational)>,
}

impl MPoly {
    pub fn zero(ord: Order) -> Self {
        MPoly { ord, terms: Vec::new() }
    }

    pub fn from_terms(ord: Order, it: impl IntoIterator<Item = (Mono, Rational)>) -> Self {
        let mut acc: BTreeMap<Mono, Rational> = BTreeMap::new();
        for (m, c) in it {
            *acc.entry(m).or_insert_with(Rational::zero) += c;
        }
        let mut terms: Vec<(Mono, Rational)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| ord.cmp(&a.0, &b.0));
        MPoly { ord, terms }
    }

    pub fn with_order(&self, ord: Order) -> Self {
        Self::from_terms(ord, self.terms.iter().cloned())
    }

    pub fn terms(&self) -> &[(Mono, Rational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lm(&self) -> &Mono {
        &self.terms.last().expect("leading monomial of zero").0
    }

    pub fn lc(&self) -> &Rational {
        &self.terms.last().expect("leading coefficient of zero").1
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == [0; MAX_VARS]
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = Rational::one() / self.lc();
        MPoly {
            ord: self.ord,
            terms: self.terms.iter().map(|(m, c)| (*m, c * &inv)).collect(),
        }
    }

    /// Variables actually occurring.
    pub fn support_vars(&self) -> BTreeSet<usize> {
        self.terms
            .iter()
            .flat_map(|(m, _)| (0..MAX_VARS).filter(move |&i| m[i] > 0))
            .collect()
    }

    /// `self − c·x^m·g`
    fn sub_mul(&self, c: &Rational, m: &Mono, g: &MPoly) -> MPoly {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let (mut i, mut j) = (0, 0);
        let ord = self.ord;
        while i < self.terms.len() || j < g.terms.len() {
            let take = if i == self.terms.len() {
                Ordering::Greater
            } else if j == g.terms.len() {
                Ordering::Less
            } else {
                ord.cmp(&self.terms[i].0, &mono_add(&g.terms[j].0, m))
            };
            match take {
                Ordering::Less => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((mono_add(&g.terms[j].0, m), -(c * &g.terms[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let v = &self.terms[i].1 - c * &g.terms[j].1;
                    if !v.is_zero() {
                        out.push((self.terms[i].0, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        MPoly { ord, terms: out }
    }

    pub fn mul(&self, o: &MPoly) -> MPoly {
        let mut terms = Vec::with_capacity(self.terms.len() * o.terms.len());
        for (a, c) in &self.terms {
            for (b, d) in &o.terms {
                terms.push((mono_add(a, b), c * d));
            }
        }
        MPoly::from_terms(self.ord, terms)
    }

    pub fn mul_var(&self, v: usize) -> MPoly {
        MPoly {
            ord: self.ord,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut m = *m;
                    m[v] += 1;
                    (m, c.clone())
                })
                .collect(),
        }
    }

    /// Univariate polynomial in variable `v` as an `MPoly`.
    pub fn from_univariate(ord: Order, p: &UniPoly, v: usize) -> MPoly {
        MPoly::from_terms(
            ord,
            p.coeffs().iter().enumerate().map(|(k, c)| {
                let mut m = [0; MAX_VARS];
                m[v] = k as u16;
                (m, c.clone())
            }),
        )
    }

    /// Inverse of [`MPoly::from_univariate`]; `None` if other variables occur.
    pub fn to_univariate(&self, v: usize) -> Option<UniPoly> {
        let mut c = Vec::new();
        for (m, a) in &self.terms {
            if (0..MAX_VARS).any(|i| i != v && m[i] > 0) {
                return None;
            }
            let k = m[v] as usize;
            if c.len() <= k {
                c.resize(k + 1, Rational::zero());
            }
            c[k] = a.clone();
        }
        Some(UniPoly::new(c))
    }
}

/// Fully reduce `f` modulo `g`.
pub fn normal_form(f: &MPoly, g: &[MPoly]) -> MPoly {
    let mut p = f.clone();
    let mut rem: Vec<(Mono, Rational)> = Vec::new();
    while let Some((m, c)) = p.terms.last().cloned() {
        match g.iter().find(|h| divides(h.lm(), &m)) {
            Some(h) => {
                let q = &c / h.lc();
                p = p.sub_mul(&q, &mono_sub(&m, h.lm()), h);
            }
            None => {
                p.terms.pop();
                rem.push((m, c));
            }
        }
    }
    rem.reverse();
    MPoly { ord: f.ord, terms: rem }
}

fn s_poly(a: &MPoly, b: &MPoly) -> MPoly {
    let l = lcm(a.lm(), b.lm());
    let left = MPoly::zero(a.ord).sub_mul(&-(Rational::one() / a.lc()), &mono_sub(&l, a.lm()), a);
    left.sub_mul(&(Rational::one() / b.lc()), &mono_sub(&l, b.lm()), b)
}

/// Reduced Gröbner basis (monic, sorted by leading monomial).
pub fn groebner(input: &[MPoly], ord: Order) -> Vec<MPoly> {
    let mut g: Vec<MPoly> = Vec::new();
    let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    let add = |g: &mut Vec<MPoly>, pairs: &mut BTreeSet<(usize, usize)>, p: MPoly| {
        let idx = g.len();
        for i in 0..idx {
            pairs.insert((i, idx));
        }
        g.push(p.monic());
    };
    for f in input {
        let f = normal_form(&f.with_order(ord), &g);
        if !f.is_zero() {
            add(&mut g, &mut pairs, f);
        }
    }
    loop {
        let next = pairs
            .iter()
            .min_by(|a, b| {
                ord.cmp(&lcm(g[a.0].lm(), g[a.1].lm()), &lcm(g[b.0].lm(), g[b.1].lm()))
                    .then(a.cmp(b))
            })
            .copied();
        let Some((i, j)) = next else { break };
        pairs.remove(&(i, j));
        let (li, lj) = (g[i].lm(), g[j].lm());
        let l = lcm(li, lj);
        // product criterion
        if mono_add(li, lj) == l {
            continue;
        }
        // chain criterion
        let chain = (0..g.len()).any(|k| {
            k != i
                && k != j
                && divides(g[k].lm(), &l)
                && !pairs.contains(&(i.min(k), i.max(k)))
                && !pairs.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let h = normal_form(&s_poly(&g[i], &g[j]), &g);
        if !h.is_zero() {
            if h.is_constant() {
                return vec![MPoly::from_terms(ord, [([0; MAX_VARS], Rational::one())])];
            }
            add(&mut g, &mut pairs, h);
        }
    }
    reduce_basis(g)
}

fn reduce_basis(mut g: Vec<MPoly>) -> Vec<MPoly> {
    // drop elements whose leading monomial is divisible by another's
    g.sort_by(|a, b| a.ord.cmp(a.lm(), b.lm()));
    let mut min: Vec<MPoly> = Vec::new();
    for p in g {
        if !min.iter().any(|q| divides(q.lm(), p.lm())) {
            min.push(p);
        }
    }
    let mut out = Vec::with_capacity(min.len());
    for i in 0..min.len() {
        let others: Vec<MPoly> = min
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, p)| p.clone())
            .collect();
        out.push(normal_form(&min[i], &others).monic());
    }
    out
}

pub fn is_unit_ideal(g: &[MPoly]) -> bool {
    g.iter().any(|p| p.is_constant())
}

/// Basis elements involving only the variables `vars`.
pub fn eliminate(g: &[MPoly], vars: &[usize]) -> Vec<MPoly> {
    g.iter()
        .filter(|p| p.support_vars().iter().all(|v| vars.contains(v)))
        .cloned()
        .collect()
}

/// Standard monomials of a zero-dimensional ideal in the first `nvars`
/// variables, or `None` if the ideal is not zero-dimensional.
pub fn standard_monomials(g: &[MPoly], nvars: usize) -> Option<Vec<Mono>> {
    if is_unit_ideal(g) {
        return Some(Vec::new());
    }
    let mut bound = [0u16; MAX_VARS];
    for v in 0..nvars {
        bound[v] = g
            .iter()
            .filter_map(|p| {
                let m = p.lm();
                ((0..MAX_VARS).all(|i| i == v || m[i] == 0)).then_some(m[v])
            })
            .min()?;
    }
    let mut out = Vec::new();
    let mut m = [0u16; MAX_VARS];
    loop {
        if !g.iter().any(|p| divides(p.lm(), &m)) {
            out.push(m);
        }
        let mut v = 0;
        loop {
            if v == nvars {
                return Some(out);
            }
            m[v] += 1;
            if m[v] < bound[v] {
                break;
            }
            m[v] = 0;
            v += 1;
        }
    }
}

/// Minimal polynomial of variable `v` modulo a zero-dimensional ideal with
/// Gröbner basis `g`, by linear dependence among normal forms of powers.
pub fn min_poly(g: &[MPoly], nvars: usize, v: usize) -> Option<UniPoly> {
    let basis = standard_monomials(g, nvars)?;
    let ord = g.first()?.ord;
    let index: BTreeMap<Mono, usize> = basis.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let n = basis.len();
    let to_vec = |p: &MPoly| {
        let mut w = vec![Rational::zero(); n];
        for (m, c) in &p.terms {
            w[index[m]] = c.clone();
        }
        w
    };
    // echelon rows: (vector, combination of powers, pivot)
    let mut rows: Vec<(Vec<Rational>, Vec<Rational>, usize)> = Vec::new();
    let mut power = normal_form(&MPoly::from_terms(ord, [([0; MAX_VARS], Rational::one())]), g);
    for k in 0..=n {
        let mut w = to_vec(&power);
        let mut comb = vec![Rational::zero(); k + 1];
        comb[k] = Rational::one();
        for (rv, rc, piv) in &rows {
            if w[*piv].is_zero() {
                continue;
            }
            let f = &w[*piv] / &rv[*piv];
            for i in 0..n {
                if !rv[i].is_zero() {
                    w[i] -= &f * &rv[i];
                }
            }
            for (i, c) in rc.iter().enumerate() {
                comb[i] -= &f * c;
            }
        }
        match w.iter().position(|c| !c.is_zero()) {
            None => return Some(UniPoly::new(comb).monic()),
            Some(piv) => rows.push((w, comb, piv)),
        }
        power = normal_form(&power.mul_var(v), g);
    }
    None
}

/// Number of distinct solutions over ℚ̄ of a zero-dimensional ideal in the
/// first `nvars` variables, or `None` if the solution set is infinite.
pub fn count_solutions(gens: &[MPoly], nvars: usize) -> Option<usize> {
    let g = groebner(gens, Order::GRevLex);
    if is_unit_ideal(&g) {
        return Some(0);
    }
    standard_monomials(&g, nvars)?;
    // Seidenberg: adjoining squarefree parts of the univariate eliminants gives the radical
    let mut rad: Vec<MPoly> = g.clone();
    for v in 0..nvars {
        let p = min_poly(&g, nvars, v)?;
        let sq = p.div_rem(&gcd_poly(&p, &p.derivative())).0;
        rad.push(MPoly::from_univariate(Order::GRevLex, &sq, v));
    }
    let r = groebner(&rad, Order::GRevLex);
    standard_monomials(&r, nvars).map(|s| s.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;

    fn mp(ord: Order, t: &[([u16; 4], i64)]) -> MPoly {
        MPoly::from_terms(ord, t.iter().map(|(m, c)| (*m, int(*c))))
    }

    #[test]
    fn circle_and_line_count() {
        let o = Order::GRevLex;
        // x² + y² − 1, x − y  → two points
        let f = mp(o, &[([2, 0, 0, 0], 1), ([0, 2, 0, 0], 1), ([0; 4], -1)]);
        let l = mp(o, &[([1, 0, 0, 0], 1), ([0, 1, 0, 0], -1)]);
        assert_eq!(count_solutions(&[f.clone(), l.clone()], 2), Some(2));
        // tangent line x − 1: one point with multiplicity two
        let t = mp(o, &[([1, 0, 0, 0], 1), ([0; 4], -1)]);
        assert_eq!(count_solutions(&[f.clone(), t], 2), Some(1));
        // a curve is not zero-dimensional
        assert_eq!(count_solutions(&[f], 2), None);
    }

    #[test]
    fn elimination_projects() {
        // x² − y, x − 2  eliminating x (first block) leaves y − 4
        let o = Order::Elim(1);
        let a = mp(o, &[([2, 0, 0, 0], 1), ([0, 1, 0, 0], -1)]);
        let b = mp(o, &[([1, 0, 0, 0], 1), ([0; 4], -2)]);
        let g = groebner(&[a, b], o);
        let e = eliminate(&g, &[1]);
        assert_eq!(e.len(), 1);
        assert_eq!(e[0].to_univariate(1).unwrap(), UniPoly::from_ints(&[-4, 1]));
    }

    #[test]
    fn unit_ideal() {
        let o = Order::GRevLex;
        let a = mp(o, &[([1, 0, 0, 0], 1)]);
        let b = mp(o, &[([1, 0, 0, 0], 1), ([0; 4], 1)]);
        assert!(is_unit_ideal(&groebner(&[a, b], o)));
    }

    #[test]
    fn min_poly_of_sqrt2() {
        let o = Order::GRevLex;
        let a = mp(o, &[([2, 0, 0, 0], 1), ([0; 4], -2)]);
        let b = mp(o, &[([0, 1, 0, 0], 1), ([1, 0, 0, 0], -1), ([0; 4], -1)]);
        let g = groebner(&[a, b], o);
        // y = x + 1 ⇒ (y−1)² = 2 ⇒ y² − 2y − 1
        assert_eq!(min_poly(&g, 2, 1).unwrap(), UniPoly::from_ints(&[-1, -2, 1]));
    }
}
