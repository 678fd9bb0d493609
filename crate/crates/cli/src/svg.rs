use std::fmt::Write;

use plane_cycles::geom::convex_hull;
use plane_cycles::ColoredPointSet;

const PALETTE: [&str; 8] = ["#d62728", "#1f77b4", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf"];
const SIZE: f64 = 800.0;
const MARGIN: f64 = 24.0;

/// Points as filled circles, the hull dashed, an optional cycle as a closed polyline.
pub fn render(ps: &ColoredPointSet, cycle: Option<&[usize]>) -> String {
    let (mut x0, mut y0, mut x1, mut y1) = (i64::MAX, i64::MAX, i64::MIN, i64::MIN);
    for p in ps.points() {
        x0 = x0.min(p.x());
        y0 = y0.min(p.y());
        x1 = x1.max(p.x());
        y1 = y1.max(p.y());
    }
    let span = ((x1 - x0).max(y1 - y0).max(1)) as f64;
    let scale = (SIZE - 2.0 * MARGIN) / span;
    // y grows downwards in SVG.
    let at = |i: usize| {
        let p = ps.point(i);
        (MARGIN + (p.x() - x0) as f64 * scale, SIZE - MARGIN - (p.y() - y0) as f64 * scale)
    };
    let path = |ids: &[usize]| ids.iter().map(|&i| at(i)).map(|(x, y)| format!("{x:.2},{y:.2}")).collect::<Vec<_>>().join(" ");

    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#);
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    if !ps.is_empty() {
        let hull = convex_hull(ps.points());
        let _ = writeln!(s, r##"<polygon points="{}" fill="none" stroke="#888" stroke-width="1" stroke-dasharray="6 4"/>"##, path(&hull));
    }
    if let Some(c) = cycle {
        let _ = writeln!(s, r##"<polygon points="{}" fill="none" stroke="#222" stroke-width="2"/>"##, path(c));
    }
    for i in 0..ps.len() {
        let (x, y) = at(i);
        let fill = PALETTE[ps.color(i) as usize % PALETTE.len()];
        let _ = writeln!(s, r##"<circle cx="{x:.2}" cy="{y:.2}" r="5" fill="{fill}" stroke="#000" stroke-width="0.5"><title>{i}</title></circle>"##);
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn draws_every_point_and_the_cycle() {
        let ps = ColoredPointSet::from_triples(&[(0, 0, 0), (10, 0, 1), (10, 10, 0), (0, 10, 1)]).unwrap();
        let s = render(&ps, Some(&[0, 1, 2, 3]));
        assert_eq!(s.matches("<circle").count(), 4);
        assert_eq!(s.matches("<polygon").count(), 2);
        assert!(s.contains("stroke-dasharray"));
        // Lowest point ends up at the bottom.
        assert!(s.contains(r#"cx="24.00" cy="776.00""#));
    }
}
