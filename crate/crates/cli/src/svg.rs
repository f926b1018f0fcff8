//! Plain SVG drawings of polygons and fibre configurations.

use std::fmt::Write;

use reflexo::mordell_weil::fibre_dual_graph;
use reflexo::{FibreConfiguration, KodairaType, Location, Polygon};

const UNIT: f64 = 40.0;
const MARGIN: f64 = 30.0;

fn header(w: f64, h: f64) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w:.0}\" height=\"{h:.0}\" viewBox=\"0 0 {w:.0} {h:.0}\">\n"
    )
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Hull, lattice points and the origin of a lattice polygon.
pub fn polygon(p: &Polygon, title: &str) -> String {
    let xs = p.vertices().iter().map(|v| v.x);
    let ys = p.vertices().iter().map(|v| v.y);
    let (x0, x1) = (xs.clone().min().unwrap(), xs.max().unwrap());
    let (y0, y1) = (ys.clone().min().unwrap(), ys.max().unwrap());
    let w = (x1 - x0) as f64 * UNIT + 2.0 * MARGIN;
    let h = (y1 - y0) as f64 * UNIT + 2.0 * MARGIN + 20.0;
    let sx = |x: i64| MARGIN + (x - x0) as f64 * UNIT;
    let sy = |y: i64| 20.0 + MARGIN + (y1 - y) as f64 * UNIT;
    let mut s = header(w, h);
    let _ = writeln!(s, "  <title>{}</title>", escape(title));
    let _ = writeln!(s, "  <text x=\"{:.1}\" y=\"16\" font-size=\"14\">{}</text>", MARGIN, escape(title));
    let pts: Vec<String> = p.vertices().iter().map(|v| format!("{:.1},{:.1}", sx(v.x), sy(v.y))).collect();
    let _ = writeln!(
        s,
        "  <polygon points=\"{}\" fill=\"#dde8f5\" stroke=\"#204a87\" stroke-width=\"2\"/>",
        pts.join(" ")
    );
    for q in p.lattice_points() {
        let _ = writeln!(
            s,
            "  <circle class=\"lattice\" cx=\"{:.1}\" cy=\"{:.1}\" r=\"4\" fill=\"#204a87\"/>",
            sx(q.x),
            sy(q.y)
        );
    }
    let _ = writeln!(
        s,
        "  <circle class=\"origin\" cx=\"{:.1}\" cy=\"{:.1}\" r=\"7\" fill=\"none\" stroke=\"#cc0000\" stroke-width=\"2\"/>",
        sx(0),
        sy(0)
    );
    s.push_str("</svg>\n");
    s
}

type Layout = (Vec<(f64, f64)>, Vec<(usize, usize, i64)>);

/// Node coordinates in a unit box: cycles on a circle, trees by depth.
fn layout(t: KodairaType) -> Layout {
    let (n, edges) = fibre_dual_graph(t);
    let cyclic = matches!(t, KodairaType::I(k) if k >= 3) || t == KodairaType::IV;
    if cyclic || n <= 2 {
        let pos = (0..n)
            .map(|i| {
                if n == 1 {
                    return (0.5, 0.5);
                }
                let a = std::f64::consts::TAU * i as f64 / n as f64;
                (0.5 + 0.4 * a.sin(), 0.5 - 0.4 * a.cos())
            })
            .collect();
        return (pos, edges);
    }
    let mut depth = vec![usize::MAX; n];
    depth[0] = 0;
    let mut order = vec![0];
    let mut k = 0;
    while k < order.len() {
        let u = order[k];
        for &(a, b, _) in &edges {
            let v = if a == u { b } else if b == u { a } else { continue };
            if depth[v] == usize::MAX {
                depth[v] = depth[u] + 1;
                order.push(v);
            }
        }
        k += 1;
    }
    let max_depth = *depth.iter().max().unwrap() as f64;
    let mut seen = vec![0usize; n];
    let mut width = vec![0usize; n];
    for &d in &depth {
        width[d] += 1;
    }
    let pos = order
        .iter()
        .map(|&v| {
            let d = depth[v];
            seen[d] += 1;
            (v, (0.1 + 0.8 * d as f64 / max_depth.max(1.0), seen[d] as f64 / (width[d] + 1) as f64))
        })
        .fold(vec![(0.0, 0.0); n], |mut acc, (v, p)| {
            acc[v] = p;
            acc
        });
    (pos, edges)
}

/// One schematic dual graph per singular fibre, labelled by type and location.
pub fn fibres(config: &FibreConfiguration, title: &str) -> String {
    let mut items: Vec<(KodairaType, String)> = Vec::new();
    for e in &config.entries {
        let place = match &e.location {
            Location::Infinity => "∞".to_string(),
            other => other.to_string(),
        };
        for _ in 0..e.count {
            items.push((e.kind, place.clone()));
        }
    }
    let cell = 160.0;
    let w = cell * items.len() as f64 + 2.0 * MARGIN;
    let h = cell + 70.0;
    let mut s = header(w, h);
    let _ = writeln!(s, "  <title>{}</title>", escape(title));
    let _ = writeln!(s, "  <text x=\"{MARGIN:.1}\" y=\"18\" font-size=\"14\">{}</text>", escape(title));
    for (k, (t, place)) in items.iter().enumerate() {
        let ox = MARGIN + k as f64 * cell;
        let oy = 30.0;
        let _ = writeln!(s, "  <g class=\"fibre\" data-type=\"{t}\">");
        let (pos, edges) = layout(*t);
        let at = |i: usize| (ox + 10.0 + pos[i].0 * (cell - 20.0), oy + pos[i].1 * (cell - 20.0));
        for (a, b, mult) in &edges {
            let (p, q) = (at(*a), at(*b));
            let width = if *mult > 1 { 4 } else { 2 };
            let _ = writeln!(
                s,
                "    <line x1=\"{:.1}\" y1=\"{:.1}\" x2=\"{:.1}\" y2=\"{:.1}\" stroke=\"#555\" stroke-width=\"{width}\"/>",
                p.0, p.1, q.0, q.1
            );
        }
        for i in 0..pos.len() {
            let (x, y) = at(i);
            let fill = if i == 0 { "#cc0000" } else { "#204a87" };
            let _ = writeln!(s, "    <circle cx=\"{x:.1}\" cy=\"{y:.1}\" r=\"6\" fill=\"{fill}\"/>");
        }
        if *t == KodairaType::I(1) {
            let (x, y) = at(0);
            let _ = writeln!(
                s,
                "    <path d=\"M {x:.1} {y:.1} c 30 -40 30 40 0 0\" fill=\"none\" stroke=\"#555\" stroke-width=\"2\"/>"
            );
        }
        let _ = writeln!(
            s,
            "    <text x=\"{:.1}\" y=\"{:.1}\" font-size=\"14\" text-anchor=\"middle\">{}</text>",
            ox + cell / 2.0,
            oy + cell + 10.0,
            escape(&t.to_string())
        );
        let _ = writeln!(
            s,
            "    <text x=\"{:.1}\" y=\"{:.1}\" font-size=\"11\" text-anchor=\"middle\">λ = {}</text>",
            ox + cell / 2.0,
            oy + cell + 26.0,
            escape(place)
        );
        s.push_str("  </g>\n");
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use reflexo::catalog::by_name;
    use reflexo::fibration::classify_fibres;

    #[test]
    fn triangle_has_four_dots() {
        let s = polygon(&by_name("3").unwrap(), "3");
        assert_eq!(s.matches("class=\"lattice\"").count(), 4);
        assert_eq!(s.matches("class=\"origin\"").count(), 1);
        roxmltree::Document::parse(&s).unwrap();
    }

    #[test]
    fn fibre_labels() {
        let p = by_name("6b").unwrap();
        let s = fibres(&classify_fibres(&p).unwrap(), "6b");
        for t in ["I6", "I3", "I2", "I1"] {
            assert!(s.contains(&format!(">{t}</text>")), "{t}");
        }
        roxmltree::Document::parse(&s).unwrap();
    }

    #[test]
    fn tree_layouts_fit() {
        for t in [KodairaType::IStar(1), KodairaType::IVStar, KodairaType::IIStar, KodairaType::III] {
            let (pos, _) = layout(t);
            assert!(pos.iter().all(|&(x, y)| (0.0..=1.0).contains(&x) && (0.0..=1.0).contains(&y)));
        }
    }
}
