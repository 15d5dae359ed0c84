//! SVG rendering. Each layer is a `<g>` group and every item in it is a
//! single element, so counting elements per group counts items.

use std::fmt::Write;

use crate::geom::{PointSet, Square};
use crate::theta::EmptyTriangle;

/// Drawing area in pixels, excluding the margin.
pub const CANVAS: f64 = 800.0;
pub const MARGIN: f64 = 20.0;

#[derive(Default)]
pub struct Scene<'a> {
    pub edges: Vec<(usize, usize)>,
    pub paths: Vec<&'a [usize]>,
    pub squares: Vec<Square>,
    pub triangles: Vec<EmptyTriangle>,
}

/// Maps plane coordinates to pixels with a uniform scale fixed by the
/// bounding box, y pointing up.
struct Viewport {
    min_x: f64,
    max_y: f64,
    scale: f64,
}

impl Viewport {
    fn fit(points: &PointSet, squares: &[Square]) -> Self {
        let mut xs: Vec<f64> = points.iter().map(|p| p.x.to_f64()).collect();
        let mut ys: Vec<f64> = points.iter().map(|p| p.y.to_f64()).collect();
        for s in squares {
            xs.extend([s.min_x().to_f64(), s.max_x().to_f64()]);
            ys.extend([s.min_y().to_f64(), s.max_y().to_f64()]);
        }
        let lo = |v: &[f64]| v.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = |v: &[f64]| v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if xs.is_empty() {
            return Viewport { min_x: 0.0, max_y: 0.0, scale: 1.0 };
        }
        let extent = (hi(&xs) - lo(&xs)).max(hi(&ys) - lo(&ys));
        let scale = if extent > 0.0 { CANVAS / extent } else { 1.0 };
        Viewport { min_x: lo(&xs), max_y: hi(&ys), scale }
    }

    fn map(&self, x: f64, y: f64) -> (f64, f64) {
        (
            MARGIN + (x - self.min_x) * self.scale,
            MARGIN + (self.max_y - y) * self.scale,
        )
    }
}

pub fn render(points: &PointSet, scene: &Scene) -> String {
    let vp = Viewport::fit(points, &scene.squares);
    let size = CANVAS + 2.0 * MARGIN;
    let px = |i: usize| {
        let (x, y) = points[i].to_f64();
        vp.map(x, y)
    };
    let mut out = String::new();
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#
    )
    .unwrap();
    writeln!(out, "<!-- scale: 1 unit = {:.6} px, origin x = {}, top y = {} -->", vp.scale, vp.min_x, vp.max_y).unwrap();

    writeln!(out, r##"<g id="squares" fill="none" stroke="#999" stroke-dasharray="4 2">"##).unwrap();
    for s in &scene.squares {
        let (x, y) = vp.map(s.min_x().to_f64(), s.max_y().to_f64());
        let side = s.side().to_f64() * vp.scale;
        writeln!(out, r#"<rect x="{x:.3}" y="{y:.3}" width="{side:.3}" height="{side:.3}"/>"#).unwrap();
    }
    writeln!(out, "</g>").unwrap();

    writeln!(out, r##"<g id="triangles" fill="#fc6" fill-opacity="0.3" stroke="none">"##).unwrap();
    for t in &scene.triangles {
        let pts: Vec<String> = t
            .vertices()
            .iter()
            .map(|p| {
                let (x, y) = vp.map(p.x.to_f64(), p.y.to_f64());
                format!("{x:.3},{y:.3}")
            })
            .collect();
        writeln!(out, r#"<polygon points="{}"/>"#, pts.join(" ")).unwrap();
    }
    writeln!(out, "</g>").unwrap();

    writeln!(out, r##"<g id="edges" stroke="#36c" stroke-width="1">"##).unwrap();
    for &(u, v) in &scene.edges {
        let ((x1, y1), (x2, y2)) = (px(u), px(v));
        writeln!(out, r#"<line x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}"/>"#).unwrap();
    }
    writeln!(out, "</g>").unwrap();

    writeln!(out, r##"<g id="paths" fill="none" stroke="#c33" stroke-width="2.5">"##).unwrap();
    for path in &scene.paths {
        let pts: Vec<String> = path
            .iter()
            .map(|&v| {
                let (x, y) = px(v);
                format!("{x:.3},{y:.3}")
            })
            .collect();
        writeln!(out, r#"<polyline points="{}"/>"#, pts.join(" ")).unwrap();
    }
    writeln!(out, "</g>").unwrap();

    writeln!(out, r##"<g id="points" fill="#000">"##).unwrap();
    for i in 0..points.len() {
        let (x, y) = px(i);
        writeln!(out, r#"<circle id="p{i}" cx="{x:.3}" cy="{y:.3}" r="3"/>"#).unwrap();
    }
    writeln!(out, "</g>").unwrap();
    writeln!(out, "</svg>").unwrap();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Point;

    #[test]
    fn one_element_per_item() {
        let p = PointSet::new(vec![Point::int(0, 0), Point::int(5, 2), Point::int(1, 5)]).unwrap();
        let path = [0usize, 1, 2];
        let scene = Scene {
            edges: vec![(0, 1), (1, 2)],
            paths: vec![&path],
            ..Default::default()
        };
        let svg = render(&p, &scene);
        assert_eq!(svg.matches("<circle").count(), 3);
        assert_eq!(svg.matches("<line").count(), 2);
        assert_eq!(svg.matches("<polyline").count(), 1);
        assert!(svg.contains("scale: 1 unit = 160.000000 px"));
    }
}
