//! Singular fibres of the pencil `f_P + λ` on the resolved surface.
//!
//! Torus singularities come from the critical locus of `f_P` inside the
//! torus; boundary singularities only occur at the base points `p_e` on
//! edges of lattice length at least two, where the tower of infinitely near
//! base points deposits its intermediate exceptional curves into one member.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::groebner::{count_solutions, eliminate, groebner, is_unit_ideal, MPoly, Mono, Order};
use crate::algebra::{
    fmt_rational, squarefree_rational_roots, BiPoly, Poly, Rational, Ring, UniPoly, Var,
};
use crate::error::{Error, Result};
use crate::laurent::{build_fP, chart_polynomial, ChartBasis};
use crate::polygon::{pt, Edge, Polygon, Pt};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KodairaType {
    I(u32),
    IStar(u32),
    II,
    III,
    IV,
    IVStar,
    IIIStar,
    IIStar,
}

impl KodairaType {
    /// Topological Euler characteristic of the fibre.
    pub fn chi(&self) -> u32 {
        match *self {
            KodairaType::I(n) => n,
            KodairaType::IStar(n) => n + 6,
            KodairaType::II => 2,
            KodairaType::III => 3,
            KodairaType::IV => 4,
            KodairaType::IVStar => 8,
            KodairaType::IIIStar => 9,
            KodairaType::IIStar => 10,
        }
    }

    /// Number of fibre components missing the zero section.
    pub fn r(&self) -> u32 {
        match *self {
            KodairaType::I(0) => 0,
            KodairaType::I(n) => n - 1,
            KodairaType::IStar(n) => n + 4,
            KodairaType::II => 0,
            KodairaType::III => 1,
            KodairaType::IV => 2,
            KodairaType::IVStar => 6,
            KodairaType::IIIStar => 7,
            KodairaType::IIStar => 8,
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::InvalidInput(format!("unknown fibre type {s:?}"));
        Ok(match s {
            "II" => KodairaType::II,
            "III" => KodairaType::III,
            "IV" => KodairaType::IV,
            "IV*" => KodairaType::IVStar,
            "III*" => KodairaType::IIIStar,
            "II*" => KodairaType::IIStar,
            _ => {
                let rest = s.strip_prefix('I').ok_or_else(bad)?;
                match rest.strip_suffix('*') {
                    Some(n) => KodairaType::IStar(n.parse().map_err(|_| bad())?),
                    None => KodairaType::I(rest.parse().map_err(|_| bad())?),
                }
            }
        })
    }
}

impl fmt::Display for KodairaType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KodairaType::I(n) => write!(f, "I{n}"),
            KodairaType::IStar(n) => write!(f, "I{n}*"),
            KodairaType::II => write!(f, "II"),
            KodairaType::III => write!(f, "III"),
            KodairaType::IV => write!(f, "IV"),
            KodairaType::IVStar => write!(f, "IV*"),
            KodairaType::IIIStar => write!(f, "III*"),
            KodairaType::IIStar => write!(f, "II*"),
        }
    }
}

impl Serialize for KodairaType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Where a fibre sits on the base `ℙ¹_λ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Location {
    Infinity,
    Rational(Rational),
    /// All roots of a monic rational-root-free polynomial.
    Factor(UniPoly),
}

impl Location {
    pub fn json(&self) -> serde_json::Value {
        match self {
            Location::Infinity => "infinity".into(),
            Location::Rational(q) => fmt_rational(q).into(),
            Location::Factor(q) => serde_json::json!({ "factor": q.display("l") }),
        }
    }
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::Infinity => write!(f, "∞"),
            Location::Rational(q) => write!(f, "{}", fmt_rational(q)),
            Location::Factor(q) => write!(f, "roots of {}", q.display("l")),
        }
    }
}

/// Factors of a specialized member grouped by multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MemberFactors {
    /// `(product of the irreducible factors of multiplicity k, k)`, nonconstant only.
    pub by_multiplicity: Vec<(BiPoly, usize)>,
}

impl MemberFactors {
    pub fn max_multiplicity(&self) -> usize {
        self.by_multiplicity.iter().map(|(_, k)| *k).max().unwrap_or(0)
    }

    pub fn is_nonreduced(&self) -> bool {
        self.max_multiplicity() >= 2
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularValue {
    /// A rational value or a rational-root-free factor.
    pub location: Location,
    /// Number of conjugate values sharing this data.
    pub degree: usize,
    /// Torus singular points on each member; `None` when the singular locus is a curve.
    pub torus_nodes: Option<usize>,
    /// Every torus singular point is an ordinary node.
    pub nodal: bool,
    pub nonreduced: bool,
    /// Intermediate exceptional curves of base-point towers lying in this member.
    pub absorbed_curves: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasePointTower {
    pub edge: Edge,
    pub chain_length: i64,
    /// The member containing each intermediate curve `E_1, …, E_{ℓ−1}`.
    pub assignments: Vec<Rational>,
    /// The member through `p_e` that is singular there has an ordinary node.
    pub boundary_node: bool,
}

impl BasePointTower {
    pub fn lambda(&self) -> Option<&Rational> {
        self.assignments.first()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FibreEntry {
    pub location: Location,
    pub kind: KodairaType,
    /// Number of fibres (the degree of a factor location).
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FibreConfiguration {
    pub entries: Vec<FibreEntry>,
}

impl FibreConfiguration {
    pub fn chi_total(&self) -> u32 {
        self.entries.iter().map(|e| e.kind.chi() * e.count as u32).sum()
    }

    pub fn r_total(&self) -> u32 {
        self.entries.iter().map(|e| e.kind.r() * e.count as u32).sum()
    }

    /// Every fibre type with repetition, sorted by decreasing Euler number.
    pub fn kinds(&self) -> Vec<KodairaType> {
        let mut v: Vec<KodairaType> = self
            .entries
            .iter()
            .flat_map(|e| std::iter::repeat_n(e.kind, e.count))
            .collect();
        v.sort_by(|a, b| b.chi().cmp(&a.chi()).then(a.cmp(b)));
        v
    }

    pub fn json(&self) -> serde_json::Value {
        let entries: Vec<serde_json::Value> = self
            .entries
            .iter()
            .map(|e| {
                let mut o = serde_json::json!({ "where": e.location.json(), "type": e.kind.to_string() });
                if matches!(e.location, Location::Factor(_)) {
                    o["count"] = e.count.into();
                }
                o
            })
            .collect();
        entries.into()
    }
}

pub fn fibre_at_infinity(p: &Polygon) -> KodairaType {
    KodairaType::I((12 - p.volume()) as u32)
}

// slot of λ in the Gröbner engine; t, x, y occupy 0, 1, 2
const L: usize = 3;

fn mono(t: u32, x: u32, y: u32, l: u32) -> Mono {
    [t as u16, x as u16, y as u16, l as u16]
}

/// `F(x, y, λ)` as a polynomial in all three variables.
fn to_mpoly(f: &BiPoly, ord: Order) -> MPoly {
    MPoly::from_terms(
        ord,
        f.terms().flat_map(|(&(i, j), c)| {
            c.coeffs()
                .iter()
                .enumerate()
                .map(move |(k, a)| (mono(0, i, j, k as u32), a.clone()))
                .collect::<Vec<_>>()
        }),
    )
}

fn torus_relation(ord: Order) -> MPoly {
    MPoly::from_terms(ord, [(mono(1, 1, 1, 0), Rational::one()), (mono(0, 0, 0, 0), -Rational::one())])
}

fn hessian(f: &BiPoly) -> BiPoly {
    let fx = f.partial(Var::X);
    let fy = f.partial(Var::Y);
    fx.partial(Var::X)
        .mul(&fy.partial(Var::Y))
        .sub(&fx.partial(Var::Y).mul(&fx.partial(Var::Y)))
}

/// `x^a y^b (f_P + λ)` in the identity chart of the compact form of `P`.
pub fn torus_pencil(p: &Polygon) -> Result<BiPoly> {
    chart_polynomial(&build_fP(&p.compact_form()), &ChartBasis::new(pt(1, 0), pt(0, 1))?, true)
}

/// Generators of the torus critical ideal `(F, F_x, F_y, t·x·y − 1)`.
fn critical_ideal(f: &BiPoly, ord: Order) -> Vec<MPoly> {
    vec![
        to_mpoly(f, ord),
        to_mpoly(&f.partial(Var::X), ord),
        to_mpoly(&f.partial(Var::Y), ord),
        torus_relation(ord),
    ]
}

/// Generator of the elimination ideal `I ∩ ℚ[λ]`: its roots are exactly the
/// values whose member is singular somewhere in the torus.
pub fn critical_value_polynomial(p: &Polygon) -> Result<UniPoly> {
    let f = torus_pencil(p)?;
    let ord = Order::Elim(3);
    let g = groebner(&critical_ideal(&f, ord), ord);
    let e = eliminate(&g, &[L]);
    match e.as_slice() {
        [q] => q
            .to_univariate(L)
            .ok_or_else(|| Error::Internal("elimination left other variables".into())),
        [] => Err(Error::Internal("critical locus dominates the base".into())),
        _ => Err(Error::Internal("non-principal elimination ideal".into())),
    }
}

/// `Res_y(Res_x(F, F_x), Res_x(F, F_y))`: a multiple of the critical value
/// polynomial, possibly with extraneous factors, used as an independent check.
pub fn resultant_eliminant(p: &Polygon) -> Result<UniPoly> {
    let f = torus_pencil(p)?;
    let r1 = f.resultant(&f.partial(Var::X), Var::X)?;
    let r2 = f.resultant(&f.partial(Var::Y), Var::X)?;
    r1.resultant(&r2)
}

fn specialize_dense(f: &BiPoly, lambda: &Rational) -> Poly<Poly<Rational>> {
    f.specialize(lambda)
        .to_dense_rational(Var::X)
        .expect("specialized polynomial is λ-free")
}

fn dense_gradient_gcd(g: &Poly<Poly<Rational>>) -> Poly<Poly<Rational>> {
    let gx = g.derivative();
    let gy = g.map(|c| c.derivative());
    g.gcd(&gx).gcd(&gy)
}

/// Multiplicity structure of a member of the pencil on the torus chart.
pub fn member_factors(f: &BiPoly) -> Result<MemberFactors> {
    let g = f
        .to_dense_rational(Var::X)
        .ok_or_else(|| Error::InvalidInput("member still depends on λ".into()))?;
    // D_k = ∏ p^{max(e−k,0)},  P_k = D_{k−1}/D_k = ∏_{e≥k} p,  S_k = P_k/P_{k+1}
    let mut d = vec![g];
    while !d.last().unwrap().is_constant() {
        let next = dense_gradient_gcd(d.last().unwrap());
        d.push(next);
    }
    let p: Vec<Poly<Poly<Rational>>> = (1..d.len())
        .map(|k| d[k - 1].exact_div(&d[k]).ok_or_else(|| Error::Internal("gcd does not divide".into())))
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    for k in 0..p.len() {
        let s = if k + 1 < p.len() {
            p[k].exact_div(&p[k + 1]).ok_or_else(|| Error::Internal("factor chain broken".into()))?
        } else {
            p[k].clone()
        };
        if !s.is_constant() {
            out.push((BiPoly::from_dense_rational(&s.normalize(), Var::X), k + 1));
        }
    }
    Ok(MemberFactors { by_multiplicity: out })
}

/// Factor structure of `F_{λ*}`; nonreduced iff some factor is repeated.
pub fn member_is_nonreduced(p: &Polygon, lambda: &Rational) -> Result<MemberFactors> {
    let f = torus_pencil(p)?;
    let dense = specialize_dense(&f, lambda);
    member_factors(&BiPoly::from_dense_rational(&dense, Var::X))
}

/// Distinct torus singular points of `F_{λ*}` and whether all are nodes.
fn torus_singularities_at(f: &BiPoly, lambda: &Rational) -> Option<(usize, bool)> {
    let fl = f.specialize(lambda);
    let ord = Order::GRevLex;
    let mut gens = critical_ideal(&fl, ord);
    let n = count_solutions(&gens, 3)?;
    gens.push(to_mpoly(&hessian(&fl), ord));
    Some((n, is_unit_ideal(&groebner(&gens, ord))))
}

/// Singular points over all roots of `q`, and whether all are nodes.
fn torus_singularities_over(f: &BiPoly, q: &UniPoly) -> Option<(usize, bool)> {
    let ord = Order::GRevLex;
    let mut gens = critical_ideal(f, ord);
    gens.push(MPoly::from_univariate(ord, q, L));
    let n = count_solutions(&gens, 4)?;
    gens.push(to_mpoly(&hessian(f), ord));
    Some((n, is_unit_ideal(&groebner(&gens, ord))))
}

/// Values whose member is singular in the torus, with node counts.
pub fn singular_lambda_values(p: &Polygon) -> Result<Vec<SingularValue>> {
    let f = torus_pencil(p)?;
    let e = critical_value_polynomial(p)?;
    let split = squarefree_rational_roots(&e);
    let check = resultant_eliminant(p)?;
    let towers = base_point_towers(p)?;
    let absorbed = |l: &Rational| -> usize {
        towers
            .iter()
            .filter(|t| t.lambda() == Some(l))
            .map(|t| t.assignments.len())
            .sum()
    };
    let mut out = Vec::new();
    for (l, _) in &split.roots {
        if !check.is_zero() && !check.eval(l).is_zero() {
            return Err(Error::Internal(format!(
                "critical value {} missed by the resultant",
                fmt_rational(l)
            )));
        }
        let factors = member_is_nonreduced(p, l)?;
        // a repeated component makes the singular locus a curve
        let (nodes, nodal) = match (!factors.is_nonreduced()).then(|| torus_singularities_at(&f, l)).flatten() {
            Some((n, nodal)) => (Some(n), nodal),
            None => (None, false),
        };
        out.push(SingularValue {
            location: Location::Rational(l.clone()),
            degree: 1,
            torus_nodes: nodes,
            nodal,
            nonreduced: factors.is_nonreduced(),
            absorbed_curves: absorbed(l),
        });
    }
    for (q, _) in &split.residual {
        if !check.is_zero() && !check.div_rem(q).1.is_zero() {
            return Err(Error::Internal(format!(
                "critical factor {} missed by the resultant",
                q.display("l")
            )));
        }
        let deg = q.degree().unwrap_or(0);
        let (count, nodal) = torus_singularities_over(&f, q)
            .ok_or_else(|| Error::ClassificationInconsistent(format!(
                "members over roots of {} have a curve of singularities",
                q.display("l")
            )))?;
        if count != deg {
            return Err(Error::ClassificationInconsistent(format!(
                "{count} singular points over the {deg} roots of {}",
                q.display("l")
            )));
        }
        out.push(SingularValue {
            location: Location::Factor(q.clone()),
            degree: deg,
            torus_nodes: Some(1),
            nodal,
            nonreduced: false,
            absorbed_curves: 0,
        });
    }
    Ok(out)
}

/// Linear or rational-root-free factor of the critical value
/// polynomial, weighted by the number of torus nodes on its members.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EliminationFactor {
    pub factor: UniPoly,
    /// Torus singular points per member, or the multiplicity in `E` when the
    /// singular locus is a curve.
    pub multiplicity: usize,
}

/// Factors of the critical value polynomial with node-count multiplicities.
pub fn elimination_factors(p: &Polygon) -> Result<Vec<EliminationFactor>> {
    let e = critical_value_polynomial(p)?;
    let split = squarefree_rational_roots(&e);
    let mult_in_e = |l: &Rational| split.roots.iter().find(|(r, _)| r == l).map_or(1, |(_, m)| *m);
    Ok(singular_lambda_values(p)?
        .into_iter()
        .map(|sv| match sv.location {
            Location::Rational(l) => EliminationFactor {
                factor: UniPoly::new(vec![-l.clone(), Rational::one()]),
                multiplicity: sv.torus_nodes.unwrap_or_else(|| mult_in_e(&l)),
            },
            Location::Factor(q) => EliminationFactor { factor: q, multiplicity: sv.torus_nodes.unwrap_or(1) },
            Location::Infinity => unreachable!("torus values are finite"),
        })
        .collect())
}

/// A dual vector `m` with `det(v, m) = 1`.
fn complement(v: Pt) -> Pt {
    let g = num_integer::Integer::extended_gcd(&v.x, &v.y);
    // v.x·g.x + v.y·g.y = 1, so m = (−g.y, g.x) has det(v, m) = 1
    pt(-g.y, g.x)
}

/// `s ↦ s − 1` in the second variable.
fn shift_second(f: &BiPoly) -> BiPoly {
    let mut out = BiPoly::zero();
    for (&(i, j), c) in f.terms() {
        // (s − 1)^j
        for k in 0..=j {
            let b = binomial(j, k);
            let sign = if (j - k) % 2 == 0 { 1 } else { -1 };
            out.add_term((i, k), &c.scale(&Rational::from_integer((sign * b).into())));
        }
    }
    out
}

fn binomial(n: u32, k: u32) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// Restriction of the strict transform to the new exceptional curve `s = 0`
/// after `X ← X·s` and division by `s`.
fn blow_up(f: &BiPoly) -> Result<BiPoly> {
    let mut out = BiPoly::zero();
    for (&(i, j), c) in f.terms() {
        if i + j == 0 {
            return Err(Error::Internal("blow-up centre is not a base point".into()));
        }
        out.add_term((i, i + j - 1), c);
    }
    Ok(out)
}

/// Simulate the `ℓ(e)` blow-ups over each base point `p_e`.
pub fn base_point_towers(p: &Polygon) -> Result<Vec<BasePointTower>> {
    let f = build_fP(p);
    let mut out = Vec::new();
    for e in p.edges() {
        if e.lattice_length < 2 {
            continue;
        }
        let v = e.inner_normal;
        // chart near D_e: X vanishes on D_e, W = x^w is a unit; then s = W + 1
        let basis = ChartBasis::new(v, complement(v))?;
        let local = shift_second(&chart_polynomial(&f, &basis, true)?);
        if !local.coeff(0, 0).is_zero() {
            return Err(Error::Internal("p_e is not a base point".into()));
        }
        let boundary_node = tangent_cone_is_node(&local)?;
        let mut cur = local;
        let mut assignments = Vec::new();
        for k in 1..=e.lattice_length {
            cur = blow_up(&cur)?;
            let on_e = BiPoly::from_terms(
                cur.terms()
                    .filter(|((_, j), _)| *j == 0)
                    .map(|(&(i, _), c)| ((i, 0), c.clone())),
            );
            if k < e.lattice_length {
                // the restricted pencil must be X·(a + λ): one member contains E_k
                let lin = on_e.coeff(1, 0);
                let only_linear = on_e.terms().all(|(&(i, _), _)| i == 1);
                if !only_linear || lin.degree() != Some(1) {
                    return Err(Error::Internal(format!(
                        "pencil not constant on exceptional curve {k} over edge {:?}",
                        e.tail
                    )));
                }
                let root = -lin.coeff(0) / lin.coeff(1);
                assignments.push(root);
            } else if on_e.coeff(0, 0).is_zero() {
                return Err(Error::Internal("last exceptional curve is not a section".into()));
            }
        }
        out.push(BasePointTower { edge: e, chain_length: e.lattice_length, assignments, boundary_node });
    }
    Ok(out)
}

/// The member singular at the base point has a nondegenerate quadratic tangent cone there.
fn tangent_cone_is_node(local: &BiPoly) -> Result<bool> {
    // the λ-linear part of the linear term is λ·X; the singular member kills the rest
    let lin = local.coeff(1, 0);
    if lin.degree() != Some(1) {
        return Err(Error::Internal("unexpected linear term at base point".into()));
    }
    let lambda = -lin.coeff(0) / lin.coeff(1);
    let q = |i, j| local.coeff(i, j).eval(&lambda);
    if !q(0, 1).is_zero() {
        return Ok(true);
    }
    let (a, b, c) = (q(2, 0), q(1, 1), q(0, 2));
    Ok(!(&b * &b - Rational::from_integer(4.into()) * a * c).is_zero())
}

/// Additive fibre decided by the residual Euler budget and the largest
/// multiplicity of the reduced member.
fn additive_type(budget: u32, multiplicity: usize, absorbed: usize) -> Result<KodairaType> {
    match (budget, multiplicity) {
        (7, 2) => Ok(KodairaType::IStar(1)),
        (8, 3) => Ok(KodairaType::IVStar),
        _ => Err(Error::AdditiveUnresolved(format!(
            "budget {budget}, multiplicity {multiplicity}, {absorbed} absorbed curves"
        ))),
    }
}

/// Full list of singular fibres, checked against `χ_top = 12`.
pub fn classify_fibres(p: &Polygon) -> Result<FibreConfiguration> {
    let vol = p.volume();
    let values = singular_lambda_values(p)?;
    let towers = base_point_towers(p)?;
    let mut entries = vec![FibreEntry { location: Location::Infinity, kind: fibre_at_infinity(p), count: 1 }];

    // rational members: torus data merged with tower data
    struct Member {
        torus_nodes: usize,
        nodal: bool,
        nonreduced: Option<usize>,
        boundary: i64,
        absorbed: usize,
        boundary_nodal: bool,
    }
    let mut members: BTreeMap<Rational, Member> = BTreeMap::new();
    for sv in &values {
        match &sv.location {
            Location::Rational(l) => {
                let nonreduced = if sv.nonreduced {
                    Some(member_is_nonreduced(p, l)?.max_multiplicity())
                } else {
                    None
                };
                members.insert(
                    l.clone(),
                    Member {
                        torus_nodes: sv.torus_nodes.unwrap_or(0),
                        nodal: sv.nodal || sv.torus_nodes.is_none(),
                        nonreduced,
                        boundary: 0,
                        absorbed: 0,
                        boundary_nodal: true,
                    },
                );
            }
            Location::Factor(q) => {
                if !sv.nodal {
                    return Err(Error::AdditiveUnresolved(format!(
                        "non-nodal singularity over roots of {}",
                        q.display("l")
                    )));
                }
                entries.push(FibreEntry { location: sv.location.clone(), kind: KodairaType::I(1), count: sv.degree });
            }
            Location::Infinity => unreachable!("torus values are finite"),
        }
    }
    for t in &towers {
        let l = t.lambda().expect("towers have length at least two").clone();
        if t.assignments.iter().any(|a| *a != l) {
            return Err(Error::Internal("tower split between members".into()));
        }
        let m = match members.entry(l.clone()) {
            std::collections::btree_map::Entry::Occupied(o) => o.into_mut(),
            std::collections::btree_map::Entry::Vacant(slot) => {
                let f = member_is_nonreduced(p, &l)?;
                slot.insert(Member {
                    torus_nodes: 0,
                    nodal: true,
                    nonreduced: f.is_nonreduced().then(|| f.max_multiplicity()),
                    boundary: 0,
                    absorbed: 0,
                    boundary_nodal: true,
                })
            }
        };
        m.boundary += t.chain_length;
        m.absorbed += t.assignments.len();
        m.boundary_nodal &= t.boundary_node;
    }

    let mut pending = None;
    for (l, m) in &members {
        match m.nonreduced {
            Some(mult) => {
                if pending.is_some() {
                    return Err(Error::AdditiveUnresolved("two nonreduced members".into()));
                }
                pending = Some((l.clone(), mult, m.absorbed));
            }
            None => {
                if !m.nodal || !m.boundary_nodal {
                    return Err(Error::AdditiveUnresolved(format!(
                        "non-nodal singular point on the member at {}",
                        fmt_rational(l)
                    )));
                }
                let n = m.torus_nodes as i64 + m.boundary;
                entries.push(FibreEntry {
                    location: Location::Rational(l.clone()),
                    kind: KodairaType::I(n as u32),
                    count: 1,
                });
            }
        }
    }
    if let Some((l, mult, absorbed)) = pending {
        let used: u32 = entries[1..].iter().map(|e| e.kind.chi() * e.count as u32).sum();
        let budget = (vol as u32)
            .checked_sub(used)
            .ok_or_else(|| Error::ClassificationInconsistent("finite fibres exceed the volume".into()))?;
        entries.push(FibreEntry {
            location: Location::Rational(l),
            kind: additive_type(budget, mult, absorbed)?,
            count: 1,
        });
    }
    let cfg = FibreConfiguration { entries };
    if cfg.chi_total() != 12 {
        return Err(Error::ClassificationInconsistent(format!(
            "Euler numbers sum to {}",
            cfg.chi_total()
        )));
    }
    if cfg.r_total() > 8 {
        return Err(Error::ClassificationInconsistent(format!(
            "{} fibre components off the zero section",
            cfg.r_total()
        )));
    }
    Ok(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;

    fn poly(v: &[(i64, i64)]) -> Polygon {
        Polygon::new(v.iter().map(|&(x, y)| pt(x, y)).collect()).unwrap()
    }

    fn p3() -> Polygon {
        poly(&[(1, 0), (0, 1), (-1, -1)])
    }

    fn p4a() -> Polygon {
        poly(&[(1, 0), (0, 1), (-1, 0), (0, -1)])
    }

    fn p4c() -> Polygon {
        poly(&[(-1, 1), (0, -1), (1, 1)])
    }

    fn p8a() -> Polygon {
        poly(&[(-1, -1), (1, -1), (1, 1), (-1, 1)])
    }

    fn p9() -> Polygon {
        poly(&[(-1, -1), (2, -1), (-1, 2)])
    }

    #[test]
    fn kodaira_invariants() {
        let table = [
            ("I0", 0, 0),
            ("I1", 1, 0),
            ("I9", 9, 8),
            ("I1*", 7, 5),
            ("II", 2, 0),
            ("III", 3, 1),
            ("IV", 4, 2),
            ("IV*", 8, 6),
            ("III*", 9, 7),
            ("II*", 10, 8),
        ];
        for (s, chi, r) in table {
            let k = KodairaType::parse(s).unwrap();
            assert_eq!((k.chi(), k.r()), (chi, r), "{s}");
            assert_eq!(k.to_string(), s);
        }
        assert!(KodairaType::parse("V").is_err());
    }

    #[test]
    fn infinity_fibres() {
        assert_eq!(fibre_at_infinity(&p3()), KodairaType::I(9));
        assert_eq!(fibre_at_infinity(&p8a()), KodairaType::I(4));
    }

    #[test]
    fn p4a_critical_values() {
        let e = critical_value_polynomial(&p4a()).unwrap();
        assert_eq!(e, UniPoly::from_ints(&[0, -16, 0, 1]));
        let v = singular_lambda_values(&p4a()).unwrap();
        let nodes: Vec<(Location, Option<usize>)> = v.iter().map(|s| (s.location.clone(), s.torus_nodes)).collect();
        assert_eq!(
            nodes,
            vec![
                (Location::Rational(int(-4)), Some(1)),
                (Location::Rational(int(0)), Some(2)),
                (Location::Rational(int(4)), Some(1)),
            ]
        );
        assert!(v.iter().all(|s| s.nodal && !s.nonreduced));
    }

    #[test]
    fn p3_cubic() {
        let cfg = classify_fibres(&p3()).unwrap();
        let kinds: Vec<String> = cfg.kinds().iter().map(|k| k.to_string()).collect();
        assert_eq!(kinds, ["I9", "I1", "I1", "I1"]);
        // F_{-3} is a nodal cubic, not a repeated curve
        assert!(!member_is_nonreduced(&p3(), &int(-3)).unwrap().is_nonreduced());
    }

    #[test]
    fn towers() {
        let t = base_point_towers(&p4c()).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].assignments, vec![int(0)]);
        assert!(t[0].boundary_node);
        let t = base_point_towers(&p9()).unwrap();
        assert_eq!(t.len(), 3);
        for tower in &t {
            assert_eq!(tower.assignments, vec![int(6), int(6)]);
        }
    }

    #[test]
    fn nonreduced_members() {
        let f = member_is_nonreduced(&p9(), &int(6)).unwrap();
        assert_eq!(f.max_multiplicity(), 3);
        // (1 + x + y)
        assert_eq!(f.by_multiplicity.len(), 1);
        let line = &f.by_multiplicity[0].0;
        assert_eq!(line.degree_in(Var::X), Some(1));
        assert_eq!(line.degree_in(Var::Y), Some(1));
        let f = member_is_nonreduced(&p8a(), &int(4)).unwrap();
        assert_eq!(f.max_multiplicity(), 2);
    }

    #[test]
    fn p8a_configuration() {
        let cfg = classify_fibres(&p8a()).unwrap();
        let kinds: Vec<String> = cfg.kinds().iter().map(|k| k.to_string()).collect();
        assert_eq!(kinds, ["I1*", "I4", "I1"]);
        assert_eq!(cfg.chi_total(), 12);
    }
}
