use std::fmt::Write;

use crate::approx::st_crossing_order;
use crate::geometry::{st_interval, to_f64, GeometricObject, Point};
use crate::lift::{canonical_point, Instance, LiftedVertex};

fn xy(p: &Point) -> (f64, f64) {
    let (x, y) = p.to_f64();
    (x, -y)
}

fn points(v: &[Point]) -> String {
    v.iter()
        .map(|p| {
            let (x, y) = xy(p);
            format!("{x:.4},{y:.4}")
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Standalone SVG of the instance. Members of `subset` get the class `sel`;
/// objects meeting st are labelled with their position in the chord order.
pub fn render_svg(inst: &Instance, subset: Option<&[usize]>, path: Option<&[LiftedVertex]>) -> String {
    let mut lo = xy(&inst.s);
    let mut hi = lo;
    let mut grow = |p: (f64, f64)| {
        lo = (lo.0.min(p.0), lo.1.min(p.1));
        hi = (hi.0.max(p.0), hi.1.max(p.1));
    };
    grow(xy(&inst.t));
    for o in &inst.objects {
        let (a, b) = o.bbox();
        grow(xy(&a));
        grow(xy(&b));
    }
    let pad = 0.05 * (hi.0 - lo.0).max(hi.1 - lo.1).max(1.0);
    let (w, h) = (hi.0 - lo.0 + 2.0 * pad, hi.1 - lo.1 + 2.0 * pad);
    let unit = w.max(h) / 400.0;
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{:.4} {:.4} {w:.4} {h:.4}" width="800" height="{:.0}">"#,
        lo.0 - pad,
        lo.1 - pad,
        800.0 * h / w
    );
    let _ = writeln!(
        out,
        "<style>.obj{{fill:#9ab;fill-opacity:0.25;stroke:#456;stroke-width:{sw:.4}}}.curve{{fill:none}}\
         .sel{{stroke:#c22;fill:#e88;fill-opacity:0.35;stroke-width:{sel:.4}}}.sel.curve{{fill:none}}\
         .st{{stroke:#000;stroke-dasharray:{d:.4}}}.path{{fill:none;stroke:#26a;stroke-width:{sw:.4}}}\
         text{{font-family:sans-serif;font-size:{fs:.4}px}}</style>",
        sw = unit,
        sel = 2.0 * unit,
        d = 4.0 * unit,
        fs = 10.0 * unit
    );
    let (s, t) = (xy(&inst.s), xy(&inst.t));
    let _ = writeln!(out, r#"<line class="st" x1="{:.4}" y1="{:.4}" x2="{:.4}" y2="{:.4}"/>"#, s.0, s.1, t.0, t.1);
    let chosen = |i: usize| subset.is_some_and(|s| s.contains(&i));
    for (i, o) in inst.objects.iter().enumerate() {
        let mut class = String::from("obj");
        if !o.is_region() {
            class.push_str(" curve");
        }
        if chosen(i) {
            class.push_str(" sel");
        }
        let _ = match o {
            GeometricObject::Disk(d) => {
                let (x, y) = xy(&d.center);
                writeln!(out, r#"<circle class="{class}" id="o{i}" cx="{x:.4}" cy="{y:.4}" r="{:.4}"/>"#, to_f64(&d.radius))
            }
            GeometricObject::Segment(sg) => {
                let (a, b) = (xy(&sg.a), xy(&sg.b));
                writeln!(out, r#"<line class="{class}" id="o{i}" x1="{:.4}" y1="{:.4}" x2="{:.4}" y2="{:.4}"/>"#, a.0, a.1, b.0, b.1)
            }
            GeometricObject::Polygon(p) => {
                writeln!(out, r#"<polygon class="{class}" id="o{i}" points="{}"/>"#, points(&p.vertices))
            }
            GeometricObject::Polyline(p) => {
                writeln!(out, r#"<polyline class="{class}" id="o{i}" points="{}"/>"#, points(&p.vertices))
            }
        };
    }
    if let Ok(order) = st_crossing_order(inst) {
        let len = t.0 - s.0;
        let dy = t.1 - s.1;
        for (rank, &i) in order.iter().enumerate() {
            if let Ok(Some(iv)) = st_interval(&inst.objects[i], &inst.s, &inst.t) {
                let mid = 0.5 * (iv.lo.to_f64() + iv.hi.to_f64());
                let (x, y) = (s.0 + mid * len, s.1 + mid * dy + 12.0 * unit * if rank % 2 == 0 { 1.0 } else { -0.4 });
                let _ = writeln!(out, r#"<text x="{x:.4}" y="{y:.4}">{rank}</text>"#);
            }
        }
    }
    if let Some(path) = path.filter(|p| !p.is_empty()) {
        let pts: Vec<Point> = path.iter().map(|v| canonical_point(&inst.objects[v.object])).collect();
        let _ = writeln!(out, r#"<polyline class="path" points="{}"/>"#, points(&pts));
    }
    for (name, p) in [("s", s), ("t", t)] {
        let _ = writeln!(out, r#"<circle cx="{:.4}" cy="{:.4}" r="{:.4}"/>"#, p.0, p.1, 3.0 * unit);
        let _ = writeln!(out, r#"<text x="{:.4}" y="{:.4}">{name}</text>"#, p.0 + 4.0 * unit, p.1 - 4.0 * unit);
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sssp::tests::e1;

    #[test]
    fn well_formed_and_highlighted() {
        let li = e1();
        let plain = render_svg(li.instance(), None, None);
        roxmltree::Document::parse(&plain).unwrap();
        assert!(!plain.contains(" sel\""));
        let sel = render_svg(li.instance(), Some(&[2, 3, 4]), None);
        let doc = roxmltree::Document::parse(&sel).unwrap();
        let marked: Vec<_> = doc
            .descendants()
            .filter(|n| n.attribute("class").is_some_and(|c| c.split(' ').any(|x| x == "sel")))
            .filter_map(|n| n.attribute("id"))
            .collect();
        assert_eq!(marked, vec!["o2", "o3", "o4"]);
    }
}
