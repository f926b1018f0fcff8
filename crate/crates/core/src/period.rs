//! Classical periods as constant terms of powers, and recovery of the
//! Picard–Fuchs operator by fitting the linear recursion it induces on the
//! coefficients.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::algebra::linalg::{nullspace, rank_mod_p};
use crate::algebra::{squarefree_rational_roots, Rational, RootSplit, UniPoly};
use crate::error::{Error, Result};
use crate::laurent::{newton_polygon, LaurentPoly, NewtonPolygon};
use crate::polygon::Pt;

/// Truncated power series `Σ_{m ≤ M} c_m t^m` with exact coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSeries {
    pub coeffs: Vec<Rational>,
}

impl PowerSeries {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        PowerSeries { coeffs }
    }

    /// Truncation order `M`.
    pub fn order(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, m: usize) -> Rational {
        self.coeffs.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

/// `c_m = [x⁰y⁰] f^m` for `0 ≤ m ≤ M`.
pub fn period_coefficients(f: &LaurentPoly, order: usize) -> PowerSeries {
    // integer model F = D·f
    let den = f
        .terms()
        .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let big: Vec<((i64, i64), BigInt)> = f
        .terms()
        .map(|(u, c)| ((u.x, u.y), (c * Rational::from_integer(den.clone())).to_integer()))
        .collect();
    // keep u only if it can still return to the origin: ⟨n, u⟩ ≤ (M−k)·h(n) on every facet
    let bounds: Option<Vec<(Pt, i64)>> = match newton_polygon(f) {
        Ok(NewtonPolygon::Polygon(p)) if p.contains_strictly(Pt { x: 0, y: 0 }) => Some(
            p.edges()
                .iter()
                .map(|e| (e.inner_normal, -e.height()))
                .collect(),
        ),
        _ => None,
    };
    let mut out = vec![Rational::one()];
    let mut cur: HashMap<(i64, i64), BigInt> = HashMap::from([((0, 0), BigInt::one())]);
    let mut den_pow = BigInt::one();
    for k in 1..=order {
        let remaining = (order - k) as i64;
        let mut next: HashMap<(i64, i64), BigInt> = HashMap::with_capacity(cur.len() * 2);
        for ((a, b), c) in &cur {
            for ((da, db), g) in &big {
                let u = (a + da, b + db);
                if let Some(bs) = &bounds {
                    if bs.iter().any(|(n, h)| n.x * u.0 + n.y * u.1 > remaining * h) {
                        continue;
                    }
                }
                *next.entry(u).or_insert_with(BigInt::zero) += c * g;
            }
        }
        next.retain(|_, c| !c.is_zero());
        cur = next;
        den_pow *= &den;
        let ct = cur.get(&(0, 0)).cloned().unwrap_or_else(BigInt::zero);
        out.push(Rational::new(ct, den_pow.clone()));
    }
    PowerSeries::new(out)
}

/// `L = Σ_k p_k(t) D^k` with `D = t·d/dt`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffOperator {
    /// `p[k]` multiplies `D^k`.
    pub p: Vec<UniPoly>,
}

impl DiffOperator {
    pub fn new(mut p: Vec<UniPoly>) -> Result<Self> {
        while p.last().is_some_and(|q| q.is_zero()) {
            p.pop();
        }
        if p.is_empty() {
            return Err(Error::InvalidInput("zero operator".into()));
        }
        Ok(DiffOperator { p })
    }

    /// From the dual form `Σ_j t^j P_j(D)`.
    pub fn from_dual(dual: &[UniPoly]) -> Result<Self> {
        let h = dual.iter().filter_map(|q| q.degree()).max().unwrap_or(0);
        let p = (0..=h)
            .map(|k| UniPoly::new(dual.iter().map(|q| q.coeff(k)).collect()))
            .collect();
        Self::new(p)
    }

    pub fn order(&self) -> usize {
        self.p.len() - 1
    }

    /// Maximal degree in `t`.
    pub fn degree(&self) -> usize {
        self.p.iter().filter_map(|q| q.degree()).max().unwrap_or(0)
    }

    pub fn leading(&self) -> &UniPoly {
        self.p.last().unwrap()
    }

    /// `P_j(D)` for `j = 0..=degree`.
    pub fn dual(&self) -> Vec<UniPoly> {
        (0..=self.degree())
            .map(|j| UniPoly::new(self.p.iter().map(|q| q.coeff(j)).collect()))
            .collect()
    }

    /// Integer coefficients with content one, and the lowest-degree
    /// coefficient of the leading `p_h` positive.
    pub fn normalized(&self) -> DiffOperator {
        let all: Vec<&Rational> = self.p.iter().flat_map(|q| q.coeffs()).collect();
        let l = all.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let g = all
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(&(*c * Rational::from_integer(l.clone())).to_integer()));
        let low = self.leading().coeffs().iter().find(|c| !c.is_zero()).unwrap();
        let s = if low.is_negative() { -BigInt::one() } else { BigInt::one() };
        let f = Rational::new(l * s, g);
        DiffOperator { p: self.p.iter().map(|q| q.scalar_mul(&f)).collect() }
    }

    /// `Σ p_k(t) D^k`, highest `k` first.
    pub fn display_d_form(&self) -> String {
        let mut parts = Vec::new();
        for (k, q) in self.p.iter().enumerate().rev() {
            if q.is_zero() {
                continue;
            }
            let d = match k {
                0 => String::new(),
                1 => "*D".into(),
                _ => format!("*D^{k}"),
            };
            parts.push(format!("({}){d}", q.display("t")));
        }
        parts.join(" + ")
    }

    /// `Σ t^j P_j(D)`, lowest `j` first.
    pub fn display_dual_form(&self) -> String {
        let mut parts = Vec::new();
        for (j, q) in self.dual().iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            let t = match j {
                0 => String::new(),
                1 => "t*".into(),
                _ => format!("t^{j}*"),
            };
            parts.push(format!("{t}({})", q.display("D")));
        }
        parts.join(" + ")
    }
}

/// Coefficients of `L·s`, each computable from the truncation.
pub fn apply_operator(l: &DiffOperator, s: &PowerSeries) -> PowerSeries {
    let dual = l.dual();
    let out = (0..s.len())
        .map(|m| {
            dual.iter()
                .enumerate()
                .take(m + 1)
                .map(|(j, pj)| pj.eval(&Rational::from_integer((m - j).into())) * s.coeff(m - j))
                .sum()
        })
        .collect();
    PowerSeries::new(out)
}

fn recursion_matrix(s: &PowerSeries, h: usize, d: usize, rows: usize) -> Vec<Vec<Rational>> {
    let cols = (h + 1) * (d + 1);
    (0..rows)
        .map(|m| {
            let mut row = vec![Rational::zero(); cols];
            for j in 0..=d.min(m) {
                let n = Rational::from_integer(((m - j) as i64).into());
                let c = s.coeff(m - j);
                let mut pw = Rational::one();
                for k in 0..=h {
                    row[j * (h + 1) + k] = &pw * &c;
                    pw *= &n;
                }
            }
            row
        })
        .collect()
}

/// Dimension of the space of `(h, d)` recursions satisfied by the first
/// `len − guard` coefficients.
pub fn fit_kernel_dim(s: &PowerSeries, h: usize, d: usize, guard: usize) -> usize {
    let rows = s.len().saturating_sub(guard);
    nullspace(&recursion_matrix(s, h, d, rows), (h + 1) * (d + 1)).len()
}

/// Least order, then least degree, operator annihilating the series.
pub fn find_picard_fuchs(
    s: &PowerSeries,
    max_order: usize,
    max_degree: usize,
    guard: usize,
) -> Result<DiffOperator> {
    let need = (max_order + 1) * (max_degree + 1) + guard;
    if s.len() < need {
        return Err(Error::InvalidInput(format!(
            "need at least {need} coefficients, have {}",
            s.len()
        )));
    }
    let rows = s.len() - guard;
    for h in 1..=max_order {
        for d in 0..=max_degree {
            let cols = (h + 1) * (d + 1);
            let a = recursion_matrix(s, h, d, rows);
            if rank_mod_p(&a, cols) == Some(cols) {
                continue;
            }
            for v in nullspace(&a, cols) {
                let dual: Vec<UniPoly> = (0..=d)
                    .map(|j| UniPoly::new(v[j * (h + 1)..(j + 1) * (h + 1)].to_vec()))
                    .collect();
                let Ok(l) = DiffOperator::from_dual(&dual) else {
                    continue;
                };
                if l.order() != h {
                    continue;
                }
                if apply_operator(&l, s).is_zero() {
                    return Ok(l.normalized());
                }
            }
        }
    }
    Err(Error::NoOperator)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularLocus {
    /// Finite nonzero singular points: factorization of the leading coefficient.
    pub leading: RootSplit,
    /// `t = 0` is a singular point of every operator in `D`.
    pub at_zero: bool,
    /// Reported, never classified.
    pub at_infinity: bool,
}

pub fn operator_singular_locus(l: &DiffOperator) -> SingularLocus {
    let lead = l.leading();
    let leading = if lead.is_constant() {
        RootSplit { roots: vec![], residual: vec![] }
    } else {
        squarefree_rational_roots(lead)
    };
    SingularLocus { leading, at_zero: l.order() > 0, at_infinity: l.order() > 0 }
}

/// `t = −1/λ`; `λ = 0` goes to `t = ∞`.
pub fn lambda_to_t(lambda: &Rational) -> Option<Rational> {
    (!lambda.is_zero()).then(|| -lambda.recip())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};
    use crate::laurent::{algebraic_mutation, build_fP};
    use crate::polygon::{pt, Polygon};

    fn poly(v: &[(i64, i64)]) -> Polygon {
        Polygon::new(v.iter().map(|&(x, y)| pt(x, y)).collect()).unwrap()
    }

    fn f3() -> LaurentPoly {
        build_fP(&poly(&[(1, 0), (0, 1), (-1, -1)]))
    }

    fn f4a() -> LaurentPoly {
        build_fP(&poly(&[(1, 0), (0, 1), (-1, 0), (0, -1)]))
    }

    fn factorial(n: u64) -> BigInt {
        (1..=n).fold(BigInt::one(), |a, k| a * k)
    }

    fn binom(n: u64, k: u64) -> BigInt {
        factorial(n) / (factorial(k) * factorial(n - k))
    }

    /// Brute-force constant term of f^m by full expansion, no pruning.
    fn brute_constant_terms(f: &LaurentPoly, order: usize) -> Vec<Rational> {
        let mut acc = LaurentPoly::one();
        let mut out = vec![Rational::one()];
        for _ in 0..order {
            acc = acc.mul(f);
            out.push(acc.constant_term());
        }
        out
    }

    #[test]
    fn p3_coefficients() {
        let s = period_coefficients(&f3(), 40);
        let first: Vec<Rational> = s.coeffs[..7].to_vec();
        assert_eq!(first, [1, 0, 0, 6, 0, 0, 90].map(int).to_vec());
        for j in 0..=13u64 {
            let want = factorial(3 * j) / factorial(j).pow(3);
            assert_eq!(s.coeff(3 * j as usize), Rational::from_integer(want));
        }
        assert_eq!(s.coeff(1), int(0));
    }

    #[test]
    fn p4a_coefficients() {
        let s = period_coefficients(&f4a(), 20);
        for m in 0..=20u64 {
            let want = if m % 2 == 1 { BigInt::zero() } else { binom(m, m / 2).pow(2) };
            assert_eq!(s.coeff(m as usize), Rational::from_integer(want));
        }
    }

    #[test]
    fn pruning_matches_brute_force() {
        let f = build_fP(&poly(&[(-1, -1), (2, -1), (-1, 2)]));
        assert_eq!(period_coefficients(&f, 9).coeffs, brute_constant_terms(&f, 9));
        let g = LaurentPoly::from_terms([
            (pt(1, 0), rat(1, 2)),
            (pt(0, 1), int(1)),
            (pt(-1, -1), rat(-2, 3)),
            (pt(0, 0), int(1)),
        ]);
        assert_eq!(period_coefficients(&g, 8).coeffs, brute_constant_terms(&g, 8));
    }

    #[test]
    fn p3_operator() {
        let s = period_coefficients(&f3(), 40);
        let l = find_picard_fuchs(&s, 2, 4, 8).unwrap();
        let want = DiffOperator::from_dual(&[
            UniPoly::from_ints(&[0, 0, 1]),
            UniPoly::zero(),
            UniPoly::zero(),
            UniPoly::from_ints(&[-54, -81, -27]),
        ])
        .unwrap();
        assert_eq!(l, want);
        assert_eq!(l.display_dual_form(), "(D^2) + t^3*(-27*D^2-81*D-54)");
        assert_eq!(l.display_d_form(), "(-27*t^3+1)*D^2 + (-81*t^3)*D + (-54*t^3)");
        assert!(apply_operator(&l, &s).is_zero());
        // j² c_{3j} = 3(3j−1)(3j−2) c_{3j−3}
        for j in 1..=13i64 {
            let lhs = int(j * j) * s.coeff(3 * j as usize);
            let rhs = int(3 * (3 * j - 1) * (3 * j - 2)) * s.coeff(3 * j as usize - 3);
            assert_eq!(lhs, rhs);
        }
        let loc = operator_singular_locus(&l);
        assert_eq!(loc.leading.roots, vec![(rat(1, 3), 1)]);
        assert_eq!(loc.leading.residual, vec![(UniPoly::new(vec![rat(1, 9), rat(1, 3), int(1)]), 1)]);
        assert!(loc.at_zero && loc.at_infinity);
        assert!(fit_kernel_dim(&s, 2, 3, 8) >= 1);
        assert_eq!(fit_kernel_dim(&s, 1, 4, 8), 0);
    }

    #[test]
    fn geometric_series() {
        let s = PowerSeries::new(vec![int(1); 30]);
        let l = find_picard_fuchs(&s, 2, 3, 8).unwrap();
        let want = DiffOperator::new(vec![UniPoly::from_ints(&[0, -1]), UniPoly::from_ints(&[1, -1])]).unwrap();
        assert_eq!(l, want);
        let d = DiffOperator::new(vec![UniPoly::zero(), UniPoly::from_ints(&[1])]).unwrap();
        let image = apply_operator(&d, &s);
        assert_eq!(image.coeffs, (0..30).map(int).collect::<Vec<_>>());
    }

    #[test]
    fn p4a_operator() {
        let s = period_coefficients(&f4a(), 40);
        let l = find_picard_fuchs(&s, 2, 4, 8).unwrap();
        assert_eq!(l.display_dual_form(), "(D^2) + t^2*(-16*D^2-32*D-16)");
        let loc = operator_singular_locus(&l);
        assert_eq!(loc.leading.roots, vec![(rat(-1, 4), 1), (rat(1, 4), 1)]);
        assert!(loc.leading.residual.is_empty());
        assert_eq!(lambda_to_t(&int(4)), Some(rat(-1, 4)));
        assert_eq!(lambda_to_t(&int(0)), None);
    }

    #[test]
    fn constant_leading_coefficient() {
        let l = DiffOperator::new(vec![UniPoly::from_ints(&[0, 1]), UniPoly::from_ints(&[2])]).unwrap();
        assert!(operator_singular_locus(&l).leading.roots.is_empty());
        assert!(operator_singular_locus(&l).leading.residual.is_empty());
    }

    #[test]
    fn too_few_coefficients() {
        let s = period_coefficients(&f3(), 10);
        assert!(matches!(find_picard_fuchs(&s, 4, 12, 8), Err(Error::InvalidInput(_))));
        assert_eq!(find_picard_fuchs(&s, 1, 1, 2), Err(Error::NoOperator));
    }

    #[test]
    fn mutation_preserves_period() {
        let f = build_fP(&poly(&[(-1, 1), (0, -1), (1, 1)]));
        let g = algebraic_mutation(&f, pt(0, -1), pt(1, 0)).unwrap();
        assert_eq!(period_coefficients(&f, 12), period_coefficients(&g, 12));
    }
}
