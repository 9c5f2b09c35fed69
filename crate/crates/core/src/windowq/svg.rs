use std::fmt::Write;

use super::patch::PackedPoint;
use super::tiling::{FaceKind, Tiling};
use crate::project::{Plane, ProjectionGrams};

const SCALE: f64 = 40.0;

fn bounds(points: &[[f64; 2]]) -> (f64, f64, f64, f64) {
    let mut b = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for p in points {
        b = (b.0.min(p[0]), b.1.min(p[1]), b.2.max(p[0]), b.3.max(p[1]));
    }
    if points.is_empty() {
        (0.0, 0.0, 0.0, 0.0)
    } else {
        b
    }
}

fn header(out: &mut String, pts: &[[f64; 2]]) {
    let (x0, y0, x1, y1) = bounds(pts);
    let pad = 1.0;
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{:.2} {:.2} {:.2} {:.2}">"#,
        (x0 - pad) * SCALE,
        -(y1 + pad) * SCALE,
        (x1 - x0 + 2.0 * pad) * SCALE,
        (y1 - y0 + 2.0 * pad) * SCALE
    );
}

// y flipped so that counterclockwise in X∥ stays counterclockwise on screen
fn at(p: [f64; 2]) -> (f64, f64) {
    (p[0] * SCALE, -p[1] * SCALE)
}

/// The `X∥`-projection of a patch, one dot per fiber, shaded by `x⊥·x⊥`.
pub fn patch_svg(patch: &[PackedPoint], grams: &ProjectionGrams) -> String {
    let pts: Vec<[f64; 2]> = patch.iter().map(|p| ProjectionGrams::planar_f64(Plane::Par, &p.x4())).collect();
    let perp: Vec<f64> = patch.iter().map(|p| grams.norm(Plane::Perp, &p.x4()).to_f64()).collect();
    let top = perp.iter().cloned().fold(0.0, f64::max).max(1e-9);
    let mut out = String::new();
    header(&mut out, &pts);
    for (p, n) in pts.iter().zip(&perp) {
        let (x, y) = at(*p);
        let g = (200.0 * n / top) as u8;
        let _ = writeln!(out, r#"<circle cx="{x:.2}" cy="{y:.2}" r="3" fill="rgb({g},{g},{g})"/>"#);
    }
    out.push_str("</svg>\n");
    out
}

/// Tiles filled by kind, edges and vertices on top.
pub fn tiling_svg(t: &Tiling) -> String {
    let pts: Vec<[f64; 2]> = t.vertices.iter().map(|p| ProjectionGrams::planar_f64(Plane::Par, &p.x4())).collect();
    let mut out = String::new();
    header(&mut out, &pts);
    for f in &t.faces {
        let fill = match f.kind {
            FaceKind::Triangle => "#f2c14e",
            FaceKind::Square => "#5b8e7d",
            FaceKind::Rhomb30 => "#bc4b51",
        };
        let corners: Vec<String> = f
            .vertices
            .iter()
            .map(|&v| {
                let (x, y) = at(pts[v]);
                format!("{x:.2},{y:.2}")
            })
            .collect();
        let _ = writeln!(out, r#"<polygon points="{}" fill="{fill}" stroke="none"/>"#, corners.join(" "));
    }
    for &(a, b) in &t.edges {
        let (x1, y1) = at(pts[a]);
        let (x2, y2) = at(pts[b]);
        let _ = writeln!(
            out,
            r#"<line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="black" stroke-width="1"/>"#
        );
    }
    for p in &pts {
        let (x, y) = at(*p);
        let _ = writeln!(out, r#"<circle cx="{x:.2}" cy="{y:.2}" r="2" fill="black"/>"#);
    }
    out.push_str("</svg>\n");
    out
}
