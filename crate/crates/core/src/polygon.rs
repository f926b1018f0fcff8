//! Lattice polygons: hulls, reflexivity, polar duality, `GL₂(ℤ)` normal
//! forms, Ehrhart counts and enumeration of the reflexive classes.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point of the lattice `N` (or, for normals, of the dual lattice `M`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Pt {
    pub x: i64,
    pub y: i64,
}

pub const fn pt(x: i64, y: i64) -> Pt {
    Pt { x, y }
}

impl Pt {
    pub fn dot(self, o: Pt) -> i64 {
        self.x * o.x + self.y * o.y
    }

    /// `det(self, o)`, positive when `o` is counter-clockwise of `self`.
    pub fn cross(self, o: Pt) -> i64 {
        self.x * o.y - self.y * o.x
    }

    pub fn gcd(self) -> i64 {
        self.x.gcd(&self.y)
    }

    pub fn primitive(self) -> Pt {
        let g = self.gcd();
        if g == 0 {
            self
        } else {
            pt(self.x / g, self.y / g)
        }
    }

    pub fn scale(self, k: i64) -> Pt {
        pt(self.x * k, self.y * k)
    }
}

impl std::ops::Add for Pt {
    type Output = Pt;
    fn add(self, o: Pt) -> Pt {
        pt(self.x + o.x, self.y + o.y)
    }
}

impl std::ops::Sub for Pt {
    type Output = Pt;
    fn sub(self, o: Pt) -> Pt {
        pt(self.x - o.x, self.y - o.y)
    }
}

impl std::ops::Neg for Pt {
    type Output = Pt;
    fn neg(self) -> Pt {
        pt(-self.x, -self.y)
    }
}

impl fmt::Debug for Pt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// Integer 2×2 matrix acting on column vectors.
pub type Mat2 = [[i64; 2]; 2];

pub fn apply(m: &Mat2, p: Pt) -> Pt {
    pt(m[0][0] * p.x + m[0][1] * p.y, m[1][0] * p.x + m[1][1] * p.y)
}

pub fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut c = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    c
}

pub fn mat_det(m: &Mat2) -> i64 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub tail: Pt,
    pub head: Pt,
    /// Primitive, pointing into the polygon.
    pub inner_normal: Pt,
    pub lattice_length: i64,
}

impl Edge {
    /// Lattice points from tail to head inclusive.
    pub fn points(&self) -> Vec<Pt> {
        let step = (self.head - self.tail).primitive();
        (0..=self.lattice_length)
            .map(|k| self.tail + step.scale(k))
            .collect()
    }

    /// `⟨n, tail⟩`, equal to −1 on every edge of a reflexive polygon.
    pub fn height(&self) -> i64 {
        self.inner_normal.dot(self.tail)
    }
}

/// Convex lattice polygon with counter-clockwise, strictly convex vertices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Polygon {
    vertices: Vec<Pt>,
}

impl fmt::Debug for Polygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polygon{:?}", self.vertices)
    }
}

impl Polygon {
    /// Validate a CCW strictly convex vertex list.
    pub fn new(vertices: Vec<Pt>) -> Result<Self> {
        let n = vertices.len();
        if n < 3 {
            return Err(Error::Degenerate(format!("{n} vertices")));
        }
        for i in 0..n {
            let (a, b, c) = (vertices[i], vertices[(i + 1) % n], vertices[(i + 2) % n]);
            if (b - a).cross(c - b) <= 0 {
                return Err(Error::Degenerate(format!(
                    "vertices not strictly convex counter-clockwise at {b:?}"
                )));
            }
        }
        let p = Polygon { vertices };
        if !p.winds_once() {
            return Err(Error::Degenerate("self-overlapping vertex list".into()));
        }
        Ok(p)
    }

    /// Convex hull of a point set.
    pub fn hull(points: &[Pt]) -> Result<Self> {
        let mut pts: Vec<Pt> = points.to_vec();
        pts.sort();
        pts.dedup();
        if pts.len() < 3 {
            return Err(Error::Degenerate("fewer than three points".into()));
        }
        let mut lower: Vec<Pt> = Vec::new();
        for &p in &pts {
            while lower.len() >= 2 && (lower[lower.len() - 1] - lower[lower.len() - 2]).cross(p - lower[lower.len() - 1]) <= 0 {
                lower.pop();
            }
            lower.push(p);
        }
        let mut upper: Vec<Pt> = Vec::new();
        for &p in pts.iter().rev() {
            while upper.len() >= 2 && (upper[upper.len() - 1] - upper[upper.len() - 2]).cross(p - upper[upper.len() - 1]) <= 0 {
                upper.pop();
            }
            upper.push(p);
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        if lower.len() < 3 {
            return Err(Error::Degenerate("collinear points".into()));
        }
        Polygon::new(lower)
    }

    pub fn vertices(&self) -> &[Pt] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    fn twice_area(&self) -> i64 {
        let n = self.vertices.len();
        (0..n)
            .map(|i| self.vertices[i].cross(self.vertices[(i + 1) % n]))
            .sum()
    }

    fn winds_once(&self) -> bool {
        let n = self.vertices.len();
        let dirs: Vec<Pt> = (0..n)
            .map(|i| self.vertices[(i + 1) % n] - self.vertices[i])
            .collect();
        let upper = |d: Pt| d.y > 0 || (d.y == 0 && d.x > 0);
        (0..n)
            .filter(|&i| !upper(dirs[i]) && upper(dirs[(i + 1) % n]))
            .count()
            == 1
    }

    /// Normalized volume: twice the Euclidean area.
    pub fn volume(&self) -> i64 {
        self.twice_area()
    }

    pub fn edges(&self) -> Vec<Edge> {
        let n = self.vertices.len();
        (0..n)
            .map(|i| {
                let (tail, head) = (self.vertices[i], self.vertices[(i + 1) % n]);
                let d = head - tail;
                Edge {
                    tail,
                    head,
                    inner_normal: pt(-d.y, d.x).primitive(),
                    lattice_length: d.gcd(),
                }
            })
            .collect()
    }

    /// Boundary lattice points, counter-clockwise from the first vertex.
    pub fn boundary_points(&self) -> Vec<Pt> {
        self.edges()
            .iter()
            .flat_map(|e| {
                let mut p = e.points();
                p.pop();
                p
            })
            .collect()
    }

    /// Closed containment.
    pub fn contains(&self, p: Pt) -> bool {
        self.edges()
            .iter()
            .all(|e| e.inner_normal.dot(p) >= e.height())
    }

    pub fn contains_strictly(&self, p: Pt) -> bool {
        self.edges()
            .iter()
            .all(|e| e.inner_normal.dot(p) > e.height())
    }

    /// `min_{v ∈ P} ⟨m, v⟩`
    pub fn support(&self, m: Pt) -> i64 {
        self.vertices.iter().map(|v| m.dot(*v)).min().unwrap()
    }

    /// `max_{v ∈ P} ⟨m, v⟩`
    pub fn support_max(&self, m: Pt) -> i64 {
        self.vertices.iter().map(|v| m.dot(*v)).max().unwrap()
    }

    /// Origin strictly inside and every edge at lattice distance one.
    pub fn is_reflexive(&self) -> bool {
        self.contains_strictly(pt(0, 0)) && self.edges().iter().all(|e| e.height() == -1)
    }

    pub fn polar_dual(&self) -> Result<Polygon> {
        if !self.is_reflexive() {
            return Err(Error::NotReflexive);
        }
        Polygon::new(self.edges().iter().map(|e| e.inner_normal).collect())
    }

    /// Image under an integer matrix of determinant ±1, kept counter-clockwise.
    /// Equivalent polygon with the smallest bounding box among small
    /// unimodular images; ties keep the earlier candidate, starting with `self`.
    pub fn compact_form(&self) -> Polygon {
        let size = |q: &Polygon| {
            let xs = q.vertices.iter().map(|v| v.x);
            let ys = q.vertices.iter().map(|v| v.y);
            let w = xs.clone().max().unwrap() - xs.min().unwrap();
            let h = ys.clone().max().unwrap() - ys.min().unwrap();
            (w * h, w + h, w)
        };
        let mut best = self.clone();
        let mut best_size = size(self);
        let r = -2..=2i64;
        for a in r.clone() {
            for b in r.clone() {
                for c in r.clone() {
                    for d in r.clone() {
                        if (a * d - b * c).abs() != 1 {
                            continue;
                        }
                        let q = self.transform(&[[a, b], [c, d]]);
                        let s = size(&q);
                        if s < best_size {
                            best = q;
                            best_size = s;
                        }
                    }
                }
            }
        }
        best
    }

    pub fn transform(&self, m: &Mat2) -> Polygon {
        let det = mat_det(m);
        assert!(det.abs() == 1, "transform by non-unimodular matrix");
        let mut v: Vec<Pt> = self.vertices.iter().map(|&p| apply(m, p)).collect();
        if det < 0 {
            v.reverse();
        }
        Polygon { vertices: v }
    }

    /// Lexicographically least vertex list over all `GL₂(ℤ)` images and
    /// cyclic relabelings.
    ///
    /// At each vertex and in each orientation, the direction to the next
    /// vertex is sent to `(1,0)` and the direction to the previous one to
    /// `(a,b)` with `0 ≤ a < b`; this fixes the unimodular map uniquely.
    pub fn canonical_form(&self) -> Polygon {
        let n = self.vertices.len() as i64;
        let mut best: Option<Vec<Pt>> = None;
        for i in 0..n {
            for s in [1i64, -1] {
                let at = |k: i64| self.vertices[(i + s * k).rem_euclid(n) as usize];
                let d1 = (at(1) - at(0)).primitive();
                let d2 = (at(-1) - at(0)).primitive();
                let u = frame(d1, d2);
                let image: Vec<Pt> = (0..n).map(|k| apply(&u, at(k))).collect();
                if best.as_ref().is_none_or(|b| image < *b) {
                    best = Some(image);
                }
            }
        }
        Polygon { vertices: best.unwrap() }
    }

    pub fn equivalent(&self, o: &Polygon) -> bool {
        self.canonical_form() == o.canonical_form()
    }

    /// All lattice points of `m·P`.
    pub fn lattice_points_dilate(&self, m: i64) -> Vec<Pt> {
        let edges = self.edges();
        let xs = self.vertices.iter().map(|v| v.x * m);
        let ys = self.vertices.iter().map(|v| v.y * m);
        let (x0, x1) = (xs.clone().min().unwrap(), xs.max().unwrap());
        let (y0, y1) = (ys.clone().min().unwrap(), ys.max().unwrap());
        let mut out = Vec::new();
        for x in x0..=x1 {
            for y in y0..=y1 {
                let p = pt(x, y);
                if edges.iter().all(|e| e.inner_normal.dot(p) >= m * e.height()) {
                    out.push(p);
                }
            }
        }
        out
    }

    pub fn lattice_points(&self) -> Vec<Pt> {
        self.lattice_points_dilate(1)
    }

    /// `#(mP ∩ N)`
    pub fn lattice_point_count(&self, m: i64) -> usize {
        self.lattice_points_dilate(m).len()
    }
}

/// The unique unimodular map with `d1 ↦ (1,0)` and `d2 ↦ (a,b)`, `0 ≤ a < b`.
fn frame(d1: Pt, d2: Pt) -> Mat2 {
    let g = num_integer::Integer::extended_gcd(&d1.x, &d1.y);
    // columns d1 and (−y', x') have determinant x·x' + y·y' = 1
    let (r, s) = (-g.y, g.x);
    let m: Mat2 = [[d1.x, r], [d1.y, s]];
    // inverse of a determinant-one matrix
    let inv: Mat2 = [[m[1][1], -m[0][1]], [-m[1][0], m[0][0]]];
    let mut u = inv;
    let e = apply(&u, d2);
    if e.y < 0 {
        u = mat_mul(&[[1, 0], [0, -1]], &u);
    }
    let e = apply(&u, d2);
    let k = -e.x.div_euclid(e.y);
    mat_mul(&[[1, k], [0, 1]], &u)
}

/// All reflexive polygons with vertices in `[−bound, bound]²`, up to `GL₂(ℤ)`.
///
/// Vertices are grown counter-clockwise around the origin from the
/// lexicographically least one, keeping every edge at lattice distance one.
pub fn enumerate_reflexive(bound: i64) -> Vec<Polygon> {
    let mut cands: Vec<Pt> = Vec::new();
    for x in -bound..=bound {
        for y in -bound..=bound {
            if (x, y) != (0, 0) {
                cands.push(pt(x, y));
            }
        }
    }
    let mut found: BTreeSet<Polygon> = BTreeSet::new();
    for &v1 in &cands {
        // angle from v1 in [0, 2π), compared exactly
        let half = |p: Pt| -> u8 {
            let c = v1.cross(p);
            u8::from(!(c > 0 || (c == 0 && v1.dot(p) > 0)))
        };
        let before = |p: Pt, q: Pt| -> bool {
            let (hp, hq) = (half(p), half(q));
            hp < hq || (hp == hq && p.cross(q) > 0)
        };
        let mut path = vec![v1];
        grow(&cands, v1, &before, &mut path, &mut found);
    }
    found.into_iter().collect()
}

fn unit_edge(a: Pt, b: Pt) -> bool {
    let c = a.cross(b);
    c > 0 && c == (b - a).gcd()
}

fn grow(
    cands: &[Pt],
    v1: Pt,
    before: &dyn Fn(Pt, Pt) -> bool,
    path: &mut Vec<Pt>,
    found: &mut BTreeSet<Polygon>,
) {
    let last = *path.last().unwrap();
    for &q in cands {
        if q <= v1 || !before(last, q) || !unit_edge(last, q) {
            continue;
        }
        if path.len() >= 2 {
            let prev = path[path.len() - 2];
            if (last - prev).cross(q - last) <= 0 {
                continue;
            }
        }
        path.push(q);
        if path.len() >= 3 && unit_edge(q, v1) {
            if let Ok(p) = Polygon::new(path.clone()) {
                found.insert(p.canonical_form());
            }
        }
        grow(cands, v1, before, path, found);
        path.pop();
    }
}
