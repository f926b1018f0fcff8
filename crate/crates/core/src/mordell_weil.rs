//! Mordell–Weil groups of the resolved pencils: Shioda–Tate rank, section
//! positions on the fibre at infinity, height pairings and torsion bounds.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::algebra::linalg::{det_bareiss, rref};
use crate::algebra::{fmt_rational, Rational};
use crate::error::{Error, Result};
use crate::fibration::{fibre_at_infinity, FibreConfiguration, KodairaType, Location};
use crate::polygon::Polygon;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SectionData {
    /// Component of the fibre at infinity met by the section.
    pub position: usize,
    pub is_zero_section: bool,
}

/// One section per vertex of `P°`, placed at the index of that vertex among
/// the boundary lattice points of `P°`.
///
/// The cyclic labelling starts at the vertex that makes the final gap
/// smallest; ties go to the lexicographically least position list.
pub fn section_positions(p: &Polygon) -> Result<Vec<SectionData>> {
    let dual = p.polar_dual()?;
    let boundary = dual.boundary_points();
    let m = boundary.len();
    let idx: Vec<usize> = dual
        .vertices()
        .iter()
        .map(|v| boundary.iter().position(|b| b == v).expect("vertex on boundary"))
        .collect();
    let best = (0..idx.len())
        .map(|s| {
            let mut pos: Vec<usize> = idx.iter().map(|&i| (i + m - idx[s]) % m).collect();
            pos.sort_unstable();
            pos
        })
        .min_by_key(|pos| (m - pos.last().copied().unwrap_or(0), pos.clone()))
        .unwrap_or_default();
    Ok(best
        .into_iter()
        .map(|position| SectionData { position, is_zero_section: position == 0 })
        .collect())
}

/// Correction term `i(n−j)/n` for sections meeting components `i ≤ j` of `I_n`.
pub fn contribution(n: usize, i: usize, j: usize) -> Rational {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    if n == 0 || i == 0 {
        return Rational::zero();
    }
    Rational::new(((i * (n - j)) as i64).into(), (n as i64).into())
}

/// Height pairing on the non-zero constructed sections.
pub fn height_matrix(p: &Polygon, config: &FibreConfiguration) -> Result<Vec<Vec<Rational>>> {
    if config
        .entries
        .iter()
        .any(|e| !matches!(e.location, Location::Infinity) && e.kind.r() > 0)
    {
        return Err(Error::IncidenceUnknown);
    }
    let KodairaType::I(m) = fibre_at_infinity(p) else { unreachable!() };
    let m = m as usize;
    let pos: Vec<usize> = section_positions(p)?
        .into_iter()
        .filter(|s| !s.is_zero_section)
        .map(|s| s.position)
        .collect();
    let one = Rational::one();
    Ok(pos
        .iter()
        .map(|&a| {
            pos.iter()
                .map(|&b| {
                    let base = if a == b { &one + &one } else { one.clone() };
                    base - contribution(m, a, b)
                })
                .collect()
        })
        .collect())
}

pub fn shioda_tate_rank(config: &FibreConfiguration) -> Result<u32> {
    let r = config.r_total();
    if r > 8 {
        return Err(Error::InvalidInput(format!("fibre components sum to {r} > 8")));
    }
    Ok(8 - r)
}

/// Intersection graph of a fibre as weighted edges between component indices.
/// Component 0 always has multiplicity one.
pub fn fibre_dual_graph(t: KodairaType) -> (usize, Vec<(usize, usize, i64)>) {
    fn chain(start: usize, len: usize, edges: &mut Vec<(usize, usize, i64)>, attach: usize) -> usize {
        let mut prev = attach;
        for k in 0..len {
            edges.push((prev, start + k, 1));
            prev = start + k;
        }
        start + len
    }
    let mut e = Vec::new();
    match t {
        KodairaType::I(0) | KodairaType::I(1) | KodairaType::II => (1, e),
        KodairaType::I(2) | KodairaType::III => (2, vec![(0, 1, 2)]),
        KodairaType::I(n) => {
            let n = n as usize;
            (n, (0..n).map(|i| (i, (i + 1) % n, 1)).collect())
        }
        KodairaType::IV => (3, vec![(0, 1, 1), (1, 2, 1), (0, 2, 1)]),
        KodairaType::IStar(n) => {
            // ends 0..4, central chain 4..4+n+1
            let c0 = 4;
            let last = c0 + n as usize;
            for k in c0..last {
                e.push((k, k + 1, 1));
            }
            e.extend([(0, c0, 1), (1, c0, 1), (2, last, 1), (3, last, 1)]);
            (last + 1, e)
        }
        KodairaType::IVStar | KodairaType::IIIStar | KodairaType::IIStar => {
            // arm lengths from the centre; component 0 ends the first arm
            let arms: &[usize] = match t {
                KodairaType::IVStar => &[2, 2, 2],
                KodairaType::IIIStar => &[3, 3, 1],
                _ => &[5, 2, 1],
            };
            let centre = 0;
            let mut next = 1;
            let mut ends = Vec::new();
            for &len in arms {
                next = chain(next, len, &mut e, centre);
                ends.push(next - 1);
            }
            // relabel so that the end of the first arm is 0
            let swap = |x: usize| if x == 0 { ends[0] } else if x == ends[0] { 0 } else { x };
            (next, e.into_iter().map(|(a, b, w)| (swap(a), swap(b), w)).collect())
        }
    }
}

/// Absolute determinant of the intersection form on the components missing
/// the zero section.
pub fn fibre_lattice_determinant(t: KodairaType) -> u64 {
    let (n, edges) = fibre_dual_graph(t);
    if n <= 1 {
        return 1;
    }
    let mut m = vec![vec![0i64; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = -2;
    }
    for (a, b, w) in edges {
        m[a][b] += w;
        m[b][a] += w;
    }
    let minor: Vec<Vec<i64>> = m[1..].iter().map(|r| r[1..].to_vec()).collect();
    det_bareiss(&minor).abs().to_u64().expect("small determinant")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MWGroup {
    pub rank: u32,
    pub torsion: u64,
}

impl MWGroup {
    /// Compact form used in machine output, e.g. `Z/3`.
    pub fn short(&self) -> String {
        self.render("")
    }

    fn render(&self, suffix: &str) -> String {
        let free = match self.rank {
            0 => None,
            1 => Some("Z".to_string()),
            r => Some(format!("Z^{r}")),
        };
        let tors = (self.torsion > 1).then(|| format!("Z/{}{suffix}", self.torsion));
        match (free, tors) {
            (None, None) => "0".into(),
            (Some(f), None) => f,
            (None, Some(t)) => t,
            (Some(f), Some(t)) => format!("{f} x {t}"),
        }
    }
}

impl fmt::Display for MWGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("Z"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MWReport {
    pub rank: u32,
    pub torsion_order: u64,
    pub group: MWGroup,
    pub height_matrix: Option<Vec<Vec<Rational>>>,
    pub det_trivial_lattice: u64,
    pub positions: Vec<usize>,
    pub torsion_bounds: (u64, u64),
}

impl MWReport {
    pub fn json(&self) -> serde_json::Value {
        let mut o = serde_json::json!({
            "rank": self.rank,
            "torsion": self.torsion_order,
            "group": self.group.short(),
            "detT": self.det_trivial_lattice,
            "positions": self.positions,
        });
        if let Some(h) = &self.height_matrix {
            o["heights"] = h
                .iter()
                .map(|r| r.iter().map(fmt_rational).collect::<Vec<_>>())
                .collect::<Vec<_>>()
                .into();
        }
        o
    }
}

fn order_in_cyclic(m: usize, gens: &[usize]) -> u64 {
    let g = gens.iter().fold(m, |acc, &x| acc.gcd(&x));
    (m / g.max(1)) as u64
}

fn largest_square_divisor_root(d: u64) -> u64 {
    (1..=d).take_while(|n| n * n <= d).filter(|n| d.is_multiple_of(n * n)).max().unwrap_or(1)
}

/// Rank of a rational matrix.
pub fn matrix_rank(a: &[Vec<Rational>]) -> usize {
    let ncols = a.first().map_or(0, |r| r.len());
    let mut m = a.to_vec();
    rref(&mut m, ncols).len()
}

/// Components `c` of `I_m` where an unknown torsion section could sit: height
/// zero and an integral, nonnegative intersection with every known section.
fn torsion_candidates(m: usize, known: &[usize]) -> Vec<usize> {
    let two = Rational::from_integer(BigInt::from(2));
    (1..m)
        .filter(|&c| contribution(m, c, c) == two)
        .filter(|&c| {
            known.iter().all(|&p| {
                let meet = Rational::one() - contribution(m, c, p);
                p == c || (meet.is_integer() && !meet.is_negative())
            })
        })
        .collect()
}

pub fn mw_group(p: &Polygon, config: &FibreConfiguration) -> Result<MWReport> {
    let rank = shioda_tate_rank(config)?;
    let KodairaType::I(m) = fibre_at_infinity(p) else { unreachable!() };
    let m = m as usize;
    let positions: Vec<usize> = section_positions(p)?.iter().map(|s| s.position).collect();
    let det: u64 = config
        .entries
        .iter()
        .map(|e| fibre_lattice_determinant(e.kind).pow(e.count as u32))
        .product();
    let upper = largest_square_divisor_root(det);
    let heights = height_matrix(p, config).ok();
    let (lower, torsion) = if rank == 0 {
        let lower = order_in_cyclic(m, &positions);
        if lower != upper {
            return Err(Error::TorsionUndetermined { lower, upper });
        }
        (lower, lower)
    } else if upper == 1 {
        (1, 1)
    } else {
        let Some(h) = &heights else {
            return Err(Error::TorsionUndetermined { lower: 1, upper });
        };
        let nonzero: Vec<usize> = positions.iter().copied().filter(|&q| q != 0).collect();
        let flat: Vec<usize> = nonzero
            .iter()
            .enumerate()
            .filter(|(i, _)| h[*i][*i].is_zero())
            .map(|(_, &q)| q)
            .collect();
        let lower = order_in_cyclic(m, &flat);
        let step = m / lower as usize;
        if torsion_candidates(m, &nonzero).iter().any(|c| c % step != 0) {
            return Err(Error::TorsionUndetermined { lower, upper });
        }
        (lower, lower)
    };
    Ok(MWReport {
        rank,
        torsion_order: torsion,
        group: MWGroup { rank, torsion },
        height_matrix: heights,
        det_trivial_lattice: det,
        positions,
        torsion_bounds: (lower, upper),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MirandaCheck {
    pub height_sum: Rational,
    pub height_identity: bool,
    pub component_sum: u32,
    pub component_identity: bool,
}

/// Sizes `n` of the `I_n` fibres with repetition, in entry order.
pub fn semistable_fibres(config: &FibreConfiguration) -> Result<Vec<u32>> {
    let mut out = Vec::new();
    for e in &config.entries {
        let KodairaType::I(n) = e.kind else {
            return Err(Error::SemistableOnly);
        };
        out.extend(std::iter::repeat_n(n, e.count));
    }
    Ok(out)
}

/// Checks `Σ m_j(n−m_j)/n = 2` and `Σ m_j = 4` (order 2) or `3` (order ≥ 3)
/// for each torsion section, given as its order and the component index it
/// meets on every fibre listed by [`semistable_fibres`]. Indices are read up
/// to the symmetry `j ↔ n − j` of the cycle.
pub fn miranda_identities(
    config: &FibreConfiguration,
    torsion_sections: &[(u32, Vec<u32>)],
) -> Result<Vec<MirandaCheck>> {
    let fibres = semistable_fibres(config)?;
    torsion_sections
        .iter()
        .map(|(order, comps)| {
            if comps.len() != fibres.len() {
                return Err(Error::InvalidInput("one component index per fibre".into()));
            }
            let mut height_sum = Rational::zero();
            let mut component_sum = 0;
            for (&n, &j) in fibres.iter().zip(comps) {
                let j = j % n.max(1);
                let jj = j.min(n - j);
                height_sum += Rational::new(((j * (n - j)) as i64).into(), (n.max(1) as i64).into());
                component_sum += jj;
            }
            let target = if *order == 2 { 4 } else { 3 };
            Ok(MirandaCheck {
                height_identity: height_sum == Rational::from_integer(BigInt::from(2)),
                height_sum,
                component_sum,
                component_identity: component_sum == target,
            })
        })
        .collect()
}

/// All assignments of components on the finite fibres that make both
/// identities hold for a torsion section of `order` meeting component
/// `at_infinity` of the fibre at infinity.
pub fn torsion_assignments(
    config: &FibreConfiguration,
    order: u32,
    at_infinity: u32,
) -> Result<Vec<Vec<u32>>> {
    let fibres = semistable_fibres(config)?;
    let inf: Vec<bool> = config
        .entries
        .iter()
        .flat_map(|e| std::iter::repeat_n(matches!(e.location, Location::Infinity), e.count))
        .collect();
    let choices: Vec<Vec<u32>> = fibres
        .iter()
        .zip(&inf)
        .map(|(&n, &at_inf)| if at_inf { vec![at_infinity] } else { (0..n.max(1)).collect() })
        .collect();
    // odometer over the product of the choice lists
    let mut digits = vec![0usize; fibres.len()];
    let mut out = Vec::new();
    loop {
        let comps: Vec<u32> = digits.iter().zip(&choices).map(|(&d, c)| c[d]).collect();
        let c = &miranda_identities(config, &[(order, comps.clone())])?[0];
        if c.height_identity && c.component_identity {
            out.push(comps);
        }
        let Some(k) = (0..digits.len()).rev().find(|&k| digits[k] + 1 < choices[k].len()) else {
            return Ok(out);
        };
        digits[k] += 1;
        for d in &mut digits[k + 1..] {
            *d = 0;
        }
    }
}
