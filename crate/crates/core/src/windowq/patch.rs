use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::window::WindowSpec;
use crate::error::{Error, Result};
use crate::exactnum::{ExactScalar, Rational};
use crate::glue::GlueElement;
use crate::lattice::enumeration_cap;
use crate::project::{Plane, ProjectionGrams};

/// One admitted `L8` fiber of `Q10`: glue class, `L8` representative
/// (always zero, the coset is expanded on demand) and integer `L4` part.
/// Its `L4` component is `x4 = c4 + h`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PackedPoint {
    pub h: GlueElement,
    pub c8: [i64; 8],
    pub c4: [i64; 4],
}

impl PackedPoint {
    pub fn new(h: GlueElement, c4: [i64; 4]) -> Self {
        PackedPoint { h, c8: [0; 8], c4 }
    }

    /// `x4` in sixths.
    pub fn sixths(&self) -> [i64; 4] {
        let s = self.h.sixths();
        std::array::from_fn(|i| 6 * self.c4[i] + s[i] as i64)
    }

    /// Inverse of [`sixths`](Self::sixths); the residue mod 6 must lie in `H`.
    pub fn from_sixths(s: [i64; 4]) -> Result<Self> {
        let h = GlueElement::from_sixths(s);
        h.decompose()?;
        let hs = h.sixths();
        Ok(PackedPoint::new(h, std::array::from_fn(|i| (s[i] - hs[i] as i64) / 6)))
    }

    pub fn x4(&self) -> Vec<Rational> {
        self.sixths().iter().map(|&v| Rational::new(v, 6)).collect()
    }
}

impl fmt::Display for PackedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + ({} {} {} {})", self.h, self.c4[0], self.c4[1], self.c4[2], self.c4[3])
    }
}

/// A `patch.json` record. Exact scalars are written as strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatchRecord {
    pub glue: [String; 4],
    pub c4: [i64; 4],
    /// `x⊥·x⊥` of the fiber's `L4` component.
    pub perp_norm: String,
}

impl PatchRecord {
    pub fn from_point(p: &PackedPoint, grams: &ProjectionGrams) -> Self {
        let g = p.h.coords();
        PatchRecord {
            glue: std::array::from_fn(|i| g[i].to_string()),
            c4: p.c4,
            perp_norm: grams.norm(Plane::Perp, &p.x4()).to_string(),
        }
    }

    /// Parses the record and checks its stored ⊥-norm.
    pub fn to_point(&self, grams: &ProjectionGrams) -> Result<PackedPoint> {
        let g: Vec<Rational> = self.glue.iter().map(|s| s.parse()).collect::<Result<_>>()?;
        let h = GlueElement::from_rationals(&g)?;
        let p = PackedPoint::new(h, self.c4);
        let stored: ExactScalar = self.perp_norm.parse()?;
        let actual = grams.norm(Plane::Perp, &p.x4());
        if stored != actual {
            return Err(Error::Parse(format!("record {p}: perp_norm {stored} but the fiber has {actual}")));
        }
        Ok(p)
    }
}

pub fn write_patch_json(points: &[PackedPoint], grams: &ProjectionGrams) -> Result<String> {
    let recs: Vec<PatchRecord> = points.iter().map(|p| PatchRecord::from_point(p, grams)).collect();
    serde_json::to_string_pretty(&recs).map_err(|e| Error::Parse(e.to_string()))
}

pub fn read_patch_json(text: &str, grams: &ProjectionGrams) -> Result<Vec<PackedPoint>> {
    let recs: Vec<PatchRecord> = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    recs.iter().map(|r| r.to_point(grams)).collect()
}

/// Floating ⊥-images of `u1..u4`, only used to prune candidates that are
/// far outside the window before the exact test.
fn perp_frame() -> [[f64; 2]; 4] {
    std::array::from_fn(|i| {
        let e: Vec<Rational> = (0..4).map(|j| Rational::from_int((i == j) as i64)).collect();
        ProjectionGrams::planar_f64(Plane::Perp, &e)
    })
}

/// Every fiber `c4 + h` with `c4 ∈ [−bound, bound]⁴` whose ⊥-projection the
/// window admits, sorted by `(h, c4)`.
///
/// For fixed `h, c1, c2` the admissible `(c3, c4)` form a small set found by
/// inverting the `u3⊥, u4⊥` frame in floating point with a wide margin; the
/// decision for each candidate is exact.
pub fn generate_patch(w: &WindowSpec, bound: i64) -> Result<Vec<PackedPoint>> {
    if bound < 1 {
        return Err(Error::InvalidArgument(format!("coordinate bound must be at least 1, got {bound}")));
    }
    let cap = enumeration_cap();
    let frame = perp_frame();
    let center = w.center_f64();
    let reach = w.circumradius_sq().to_f64() + 1e-6;
    // (u3⊥, u4⊥) inverse
    let (a, b, c, d) = (frame[2][0], frame[3][0], frame[2][1], frame[3][1]);
    let det = a * d - b * c;
    let per_class: Vec<Vec<PackedPoint>> = GlueElement::all()
        .par_iter()
        .map(|h| {
            let hs = h.sixths().map(|v| v as f64 / 6.0);
            let mut out = Vec::new();
            for c1 in -bound..=bound {
                for c2 in -bound..=bound {
                    let y1 = c1 as f64 + hs[0];
                    let y2 = c2 as f64 + hs[1];
                    let px = y1 * frame[0][0] + y2 * frame[1][0];
                    let py = y1 * frame[0][1] + y2 * frame[1][1];
                    let (tx, ty) = (center[0] - px, center[1] - py);
                    let t3 = (d * tx - b * ty) / det - hs[2];
                    let t4 = (-c * tx + a * ty) / det - hs[3];
                    let lo3 = ((t3 - 1.5).floor() as i64).max(-bound);
                    let hi3 = ((t3 + 1.5).ceil() as i64).min(bound);
                    let lo4 = ((t4 - 1.5).floor() as i64).max(-bound);
                    let hi4 = ((t4 + 1.5).ceil() as i64).min(bound);
                    for c3 in lo3..=hi3 {
                        for c4 in lo4..=hi4 {
                            let y3 = c3 as f64 + hs[2];
                            let y4 = c4 as f64 + hs[3];
                            let qx = px + y3 * frame[2][0] + y4 * frame[3][0] - center[0];
                            let qy = py + y3 * frame[2][1] + y4 * frame[3][1] - center[1];
                            if qx * qx + qy * qy > reach {
                                continue;
                            }
                            let p = PackedPoint::new(*h, [c1, c2, c3, c4]);
                            if w.contains(&p.x4()) {
                                out.push(p);
                            }
                        }
                    }
                }
            }
            out
        })
        .collect();
    let total: usize = per_class.iter().map(Vec::len).sum();
    if total > cap {
        return Err(Error::EnumerationCap { cap });
    }
    let mut points: Vec<PackedPoint> = per_class.into_iter().flatten().collect();
    points.sort();
    Ok(points)
}
