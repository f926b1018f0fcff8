//! Combinatorial mutations of reflexive polygons with a primitive segment
//! factor, the tropical map on the dual side and the mutation graph.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::polygon::{pt, Polygon, Pt};

/// Inner normal `v` in the dual lattice and factor `H = conv(0, w)` with `w ∈ v^⊥`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MutationData {
    pub v: Pt,
    pub w: Pt,
}

impl MutationData {
    pub fn new(v: Pt, w: Pt) -> Result<Self> {
        if v.dot(w) != 0 || v.gcd() != 1 || w.gcd() != 1 {
            return Err(Error::InvalidInput(format!(
                "need primitive v ⟂ w, got v={v:?} w={w:?}"
            )));
        }
        Ok(MutationData { v, w })
    }

    pub fn inverse(&self) -> MutationData {
        MutationData { v: -self.v, w: self.w }
    }
}

/// Endpoints of the slice `⟨v,·⟩ = h`, doubled so they stay integral.
fn slice_doubled(p: &Polygon, v: Pt, h: i64) -> Result<Vec<Pt>> {
    let mut out = Vec::new();
    for e in p.edges() {
        let (a, b) = (e.tail, e.head);
        let (ha, hb) = (v.dot(a), v.dot(b));
        if ha == h {
            out.push(a.scale(2));
        }
        if (ha - h) * (hb - h) < 0 {
            let num = (b - a).scale(2 * (h - ha));
            let den = hb - ha;
            if num.x % den != 0 || num.y % den != 0 {
                return Err(Error::Internal("slice endpoint beyond half-integral".into()));
            }
            out.push(a.scale(2) + pt(num.x / den, num.y / den));
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// `P† = conv(R ∪ P₀ ∪ (P₁ + H))` where `P₋₁ = R + H`.
pub fn mutate(p: &Polygon, data: MutationData) -> Result<Polygon> {
    let MutationData { v, w } = data;
    let lo = p.support(v);
    let hi = p.support_max(v);
    if lo != -1 {
        return Err(Error::NotMutable);
    }
    if hi > 1 {
        return Err(Error::HighSlice);
    }
    let bottom: Vec<Pt> = p
        .vertices()
        .iter()
        .copied()
        .filter(|q| v.dot(*q) == -1)
        .collect();
    let (s, t) = match bottom.as_slice() {
        [a, b] => {
            if w.dot(*b - *a) > 0 {
                (*a, *b)
            } else {
                (*b, *a)
            }
        }
        _ => return Err(Error::NotMutable),
    };
    let len = (t - s).gcd();
    if (t - s).primitive() != w || len < 1 {
        return Err(Error::NotMutable);
    }
    // R₋₁ = [s, t − w], unique since H is a unit segment along the edge
    let r = [s, t - w];
    let mut pts: Vec<Pt> = r.iter().map(|q| q.scale(2)).collect();
    pts.extend(slice_doubled(p, v, 0)?);
    for q in slice_doubled(p, v, 1)? {
        pts.push(q);
        pts.push(q + w.scale(2));
    }
    let doubled = Polygon::hull(&pts)?;
    let verts: Vec<Pt> = doubled.vertices().to_vec();
    if verts.iter().any(|q| q.x % 2 != 0 || q.y % 2 != 0) {
        return Err(Error::Internal("mutation produced a non-lattice vertex".into()));
    }
    Polygon::new(verts.into_iter().map(|q| pt(q.x / 2, q.y / 2)).collect())
}

/// `m ↦ m − min(0, ⟨m,w⟩)·v`
pub fn trop_map(m: Pt, data: MutationData) -> Pt {
    m - data.v.scale(m.dot(data.w).min(0))
}

/// Every admissible mutation along an edge normal, with canonical results.
pub fn all_mutations(p: &Polygon) -> Vec<(MutationData, Polygon)> {
    let mut out = Vec::new();
    for e in p.edges() {
        let v = e.inner_normal;
        let w0 = pt(-v.y, v.x);
        for w in [w0, -w0] {
            let data = MutationData { v, w };
            if let Ok(q) = mutate(p, data) {
                out.push((data, q.canonical_form()));
            }
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct MutationGraph {
    /// Canonical forms.
    pub nodes: Vec<Polygon>,
    pub edges: Vec<(usize, usize, MutationData)>,
}

impl MutationGraph {
    /// Closure of the given polygons under all admissible mutations.
    pub fn explore(start: &[Polygon]) -> MutationGraph {
        let mut index: BTreeMap<Polygon, usize> = BTreeMap::new();
        let mut nodes = Vec::new();
        let mut queue = VecDeque::new();
        for p in start {
            let c = p.canonical_form();
            if !index.contains_key(&c) {
                index.insert(c.clone(), nodes.len());
                nodes.push(c.clone());
                queue.push_back(c);
            }
        }
        let mut edges = BTreeSet::new();
        while let Some(p) = queue.pop_front() {
            let i = index[&p];
            for (data, q) in all_mutations(&p) {
                let j = match index.get(&q) {
                    Some(&j) => j,
                    None => {
                        let j = nodes.len();
                        index.insert(q.clone(), j);
                        nodes.push(q.clone());
                        queue.push_back(q);
                        j
                    }
                };
                if i != j {
                    edges.insert((i.min(j), i.max(j), data));
                }
            }
        }
        MutationGraph { nodes, edges: edges.into_iter().collect() }
    }

    /// Connected components as node index lists.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.nodes.len()).collect();
        fn find(parent: &mut [usize], i: usize) -> usize {
            let mut r = i;
            while parent[r] != r {
                r = parent[r];
            }
            let mut i = i;
            while parent[i] != r {
                let next = parent[i];
                parent[i] = r;
                i = next;
            }
            r
        }
        for &(a, b, _) in &self.edges {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for i in 0..self.nodes.len() {
            let r = find(&mut parent, i);
            groups.entry(r).or_default().push(i);
        }
        groups.into_values().collect()
    }
}

/// Mutation-equivalence classes of a named catalog, each sorted, sorted overall.
pub fn mutation_classes(catalog: &[(String, Polygon)]) -> Vec<Vec<String>> {
    let polys: Vec<Polygon> = catalog.iter().map(|(_, p)| p.clone()).collect();
    let g = MutationGraph::explore(&polys);
    let mut classes: Vec<Vec<String>> = g
        .components()
        .into_iter()
        .map(|comp| {
            let mut names: Vec<String> = catalog
                .iter()
                .filter(|(_, p)| {
                    let c = p.canonical_form();
                    comp.iter().any(|&i| g.nodes[i] == c)
                })
                .map(|(n, _)| n.clone())
                .collect();
            names.sort();
            names
        })
        .filter(|c| !c.is_empty())
        .collect();
    classes.sort();
    classes
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::{algebraic_mutation, build_fP, newton_polygon};
    use crate::polygon::enumerate_reflexive;
    use proptest::prelude::*;

    fn poly(v: &[(i64, i64)]) -> Polygon {
        Polygon::new(v.iter().map(|&(x, y)| pt(x, y)).collect()).unwrap()
    }

    fn p4a() -> Polygon {
        poly(&[(1, 0), (0, 1), (-1, 0), (0, -1)])
    }

    fn p4b() -> Polygon {
        poly(&[(1, 0), (0, 1), (-1, 1), (0, -1)])
    }

    fn p4c() -> Polygon {
        poly(&[(-1, 1), (0, -1), (1, 1)])
    }

    #[test]
    fn p4c_to_p4a() {
        let d = MutationData::new(pt(0, -1), pt(1, 0)).unwrap();
        let q = mutate(&p4c(), d).unwrap();
        assert!(q.equivalent(&p4a()));
        assert!(q.is_reflexive());
        assert_eq!(mutate(&q, d.inverse()).unwrap(), p4c());
        assert!(all_mutations(&p4c()).iter().any(|(_, q)| q.equivalent(&p4a())));
        assert!(!all_mutations(&p4b()).iter().any(|(_, q)| q.equivalent(&p4a())));
    }

    #[test]
    fn inadmissible_data() {
        let d = MutationData::new(pt(0, -1), pt(1, 0)).unwrap();
        // bottom slice of P₄ₐ is a single vertex
        assert_eq!(mutate(&p4a(), d), Err(Error::NotMutable));
        let tall = poly(&[(-1, -1), (2, -1), (-1, 2)]);
        let d = MutationData::new(pt(0, 1), pt(1, 0)).unwrap();
        assert_eq!(mutate(&tall, d), Err(Error::HighSlice));
        assert!(MutationData::new(pt(1, 1), pt(1, 0)).is_err());
    }

    #[test]
    fn trop_examples() {
        let d = MutationData::new(pt(0, -1), pt(1, 0)).unwrap();
        assert_eq!(trop_map(pt(3, 5), d), pt(3, 5));
        assert_eq!(trop_map(d.v, d), d.v);
        assert_eq!(trop_map(pt(-1, 1), d), pt(-1, 0));
    }

    #[test]
    fn trop_sends_fan_to_fan() {
        // Σ₊ = normal fan of P plus the ray −v; Σ₋ = normal fan of P† plus v
        for p in enumerate_reflexive(3) {
            for (d, _) in all_mutations(&p) {
                let q = mutate(&p, d).unwrap();
                let mut plus: Vec<Pt> = p.edges().iter().map(|e| e.inner_normal).collect();
                plus.push(-d.v);
                let mut minus: BTreeSet<Pt> = q.edges().iter().map(|e| e.inner_normal).collect();
                minus.insert(d.v);
                let image: BTreeSet<Pt> = plus.iter().map(|&m| trop_map(m, d).primitive()).collect();
                assert_eq!(image, minus, "{p:?} {d:?}");
            }
        }
    }

    #[test]
    fn eight_classes() {
        let all = enumerate_reflexive(3);
        let named: Vec<(String, Polygon)> = all
            .iter()
            .enumerate()
            .map(|(i, p)| (format!("{i:02}"), p.clone()))
            .collect();
        let classes = mutation_classes(&named);
        assert_eq!(classes.len(), 8);
        let g = MutationGraph::explore(&all);
        assert_eq!(g.nodes.len(), 16);
        for comp in g.components() {
            let vols: BTreeSet<i64> = comp.iter().map(|&i| g.nodes[i].volume()).collect();
            assert_eq!(vols.len(), 1);
        }
    }

    #[test]
    fn newton_polygon_functoriality() {
        for p in enumerate_reflexive(3) {
            let f = build_fP(&p);
            for (data, _) in all_mutations(&p) {
                let q = mutate(&p, data).unwrap();
                assert_eq!(q.volume() + q.polar_dual().unwrap().volume(), 12);
                let g = algebraic_mutation(&f, data.v, data.w).unwrap();
                let n = newton_polygon(&g).unwrap();
                assert_eq!(n.as_polygon(), Some(&q));
                assert_eq!(algebraic_mutation(&g, -data.v, data.w).unwrap(), f);
            }
        }
    }

    proptest! {
        #[test]
        fn mutation_is_reversible(which in 0usize..16, edge in 0usize..8, flip in any::<bool>()) {
            let all = enumerate_reflexive(3);
            let p = &all[which];
            let e = p.edges()[edge % p.len()];
            let v = e.inner_normal;
            let w = if flip { pt(v.y, -v.x) } else { pt(-v.y, v.x) };
            let d = MutationData::new(v, w).unwrap();
            if let Ok(q) = mutate(p, d) {
                prop_assert!(q.is_reflexive());
                let r = mutate(&q, d.inverse()).unwrap();
                let set = |x: &Polygon| x.vertices().iter().copied().collect::<BTreeSet<Pt>>();
                prop_assert_eq!(set(&r), set(p));
                let wide = p.vertices().iter().filter(|u| v.dot(**u) == -1).count();
                prop_assert_eq!(wide, 2);
            }
        }
    }
}
