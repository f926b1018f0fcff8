use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::{Poly, Ring};
use super::rational::Rational;
use super::UniPoly;

/// Monic gcd over ℚ; `gcd(p, 0) = monic(p)`.
pub fn gcd_poly(p: &UniPoly, q: &UniPoly) -> UniPoly {
    let (mut a, mut b) = (p.clone(), q.clone());
    while !b.is_zero() {
        let (_, r) = a.div_rem(&b);
        a = b;
        b = r;
    }
    a.monic()
}

/// Yun's algorithm: `p = c·∏ sᵢ^i` with monic, squarefree, pairwise coprime `sᵢ`.
/// Only nonconstant factors are returned.
pub fn squarefree_decomposition(p: &UniPoly) -> Vec<(UniPoly, usize)> {
    let mut out = Vec::new();
    if p.is_constant() {
        return out;
    }
    let f = p.monic();
    let df = f.derivative();
    let a = gcd_poly(&f, &df);
    let mut b = f.div_rem(&a).0;
    let mut d = &df.div_rem(&a).0 - &b.derivative();
    let mut i = 1;
    while !b.is_constant() {
        let a = gcd_poly(&b, &d);
        let c;
        (b, c) = (b.div_rem(&a).0, d.div_rem(&a).0);
        d = &c - &b.derivative();
        if !a.is_constant() {
            out.push((a, i));
        }
        i += 1;
    }
    out
}

/// Rational roots and rational-root-free residual factors, with multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSplit {
    /// Ascending by value.
    pub roots: Vec<(Rational, usize)>,
    /// Monic, squarefree, rational-root-free, pairwise coprime; not necessarily irreducible.
    pub residual: Vec<(UniPoly, usize)>,
}

impl RootSplit {
    /// Multiply everything back together (monic).
    pub fn reassemble(&self) -> UniPoly {
        let mut acc = UniPoly::one_el();
        for (r, m) in &self.roots {
            let lin = UniPoly::new(vec![-r.clone(), Rational::one()]);
            acc = &acc * &lin.pow(*m);
        }
        for (q, m) in &self.residual {
            acc = &acc * &q.pow(*m);
        }
        acc
    }
}

pub fn squarefree_rational_roots(p: &UniPoly) -> RootSplit {
    assert!(!p.is_zero(), "squarefree_rational_roots of the zero polynomial");
    let mut roots = Vec::new();
    let mut residual = Vec::new();
    for (s, m) in squarefree_decomposition(p) {
        let mut rest = s;
        for r in rational_roots_squarefree(&rest) {
            let lin = UniPoly::new(vec![-r.clone(), Rational::one()]);
            rest = rest.div_rem(&lin).0;
            roots.push((r, m));
        }
        if !rest.is_constant() {
            residual.push((rest.monic(), m));
        }
    }
    roots.sort();
    RootSplit { roots, residual }
}

/// Integer coefficients, content 1, positive leading coefficient.
pub(crate) fn primitive_integer_model(p: &UniPoly) -> Vec<BigInt> {
    let l = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| (c * Rational::from_integer(l.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let sign = if ints.last().is_some_and(|c| c.is_negative()) {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    ints.into_iter().map(|c| c / &g * &sign).collect()
}

fn positive_divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    if let Some(n64) = n.to_u64() {
        let mut d = 1u64;
        while d.saturating_mul(d) <= n64 {
            if n64 % d == 0 {
                small.push(BigInt::from(d));
                if d * d != n64 {
                    large.push(BigInt::from(n64 / d));
                }
            }
            d += 1;
        }
    } else {
        let mut d = BigInt::one();
        while &d * &d <= n {
            if (&n % &d).is_zero() {
                small.push(d.clone());
                if &d * &d != n {
                    large.push(&n / &d);
                }
            }
            d += 1;
        }
    }
    small.extend(large.into_iter().rev());
    small
}

/// Rational roots of a squarefree polynomial via the rational-root theorem.
fn rational_roots_squarefree(p: &UniPoly) -> Vec<Rational> {
    let mut c = primitive_integer_model(p);
    let mut out = Vec::new();
    if c.first().is_some_and(|a| a.is_zero()) {
        out.push(Rational::zero());
        c.remove(0);
    }
    if c.len() <= 1 {
        return out;
    }
    let a0 = c[0].clone();
    let an = c.last().unwrap().clone();
    let model = Poly::new(c.iter().map(|a| Rational::from_integer(a.clone())).collect());
    let mut cands: Vec<Rational> = Vec::new();
    for num in positive_divisors(&a0) {
        for den in positive_divisors(&an) {
            cands.push(Rational::new(num.clone(), den));
        }
    }
    cands.sort();
    cands.dedup();
    for q in cands {
        for r in [q.clone(), -q] {
            if model.eval(&r).is_zero() && !out.contains(&r) {
                out.push(r);
            }
        }
        if out.len() == c.len() {
            break;
        }
    }
    out
}
