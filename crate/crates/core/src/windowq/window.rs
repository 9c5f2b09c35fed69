use std::cmp::Ordering;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{ExactScalar, Rational};
use crate::project::{forbidden_vectors, lift, projection_grams, ForbiddenSet, Plane, ProjectionGrams};

/// Where a ⊥-point sits relative to the closed dodecagon.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Location {
    Interior,
    /// Relative interior of edge `k` (the side facing forbidden vector `k`).
    Edge(usize),
    /// Vertex `k`, shared by edges `k` and `k + 1`.
    Vertex(usize),
    Outside,
}

/// The dodecagonal window in `X⊥` with its half-open boundary rule.
///
/// Edge `k` is the line `p·f_k = (f_k·f_k)/2` for the `k`-th forbidden vector
/// in counterclockwise order, so opposite edges `k`, `k+6` are translates by
/// `f_k`. The default rule keeps the open edges `0..6` and the even vertices.
#[derive(Debug, Clone)]
pub struct WindowSpec {
    grams: ProjectionGrams,
    forbidden: ForbiddenSet,
    functionals: Vec<Vec<ExactScalar>>,
    bound: ExactScalar,
    pub included_edges: [bool; 12],
    pub included_vertices: [bool; 12],
    centering: Vec<ExactScalar>,
    center_levels: Vec<ExactScalar>,
    vertices: Vec<Vec<ExactScalar>>,
}

fn add(a: &[ExactScalar], b: &[ExactScalar]) -> Vec<ExactScalar> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub(a: &[ExactScalar], b: &[ExactScalar]) -> Vec<ExactScalar> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn scaled(a: &[ExactScalar], k: &ExactScalar) -> Vec<ExactScalar> {
    a.iter().map(|x| x * k).collect()
}

impl WindowSpec {
    /// The default boundary rule around `centering` (coefficients over `u_i^⊥`).
    pub fn new(centering: Vec<ExactScalar>) -> Result<Self> {
        let edges = std::array::from_fn(|k| k < 6);
        let vertices = std::array::from_fn(|k| k % 2 == 0);
        Self::with_rule(centering, edges, vertices)
    }

    /// Centered on the origin fiber.
    pub fn singular() -> Result<Self> {
        Self::new(vec![ExactScalar::zero(); 4])
    }

    /// A custom boundary rule. It must take one edge from each opposite
    /// pair and six vertices, no two of them 5 or 7 steps apart.
    pub fn with_rule(centering: Vec<ExactScalar>, edges: [bool; 12], vertices: [bool; 12]) -> Result<Self> {
        if centering.len() != 4 {
            return Err(Error::DimensionMismatch { expected: 4, found: centering.len() });
        }
        if (0..6).any(|k| edges[k] == edges[k + 6]) {
            return Err(Error::InvalidArgument(
                "boundary rule must keep exactly one edge of each opposite pair".into(),
            ));
        }
        if vertices.iter().filter(|&&v| v).count() != 6 {
            return Err(Error::InvalidArgument("boundary rule must keep exactly six vertices".into()));
        }
        for i in 0..12 {
            for j in 0..12 {
                let sep = (j + 12 - i) % 12;
                if vertices[i] && vertices[j] && (sep == 5 || sep == 7) {
                    return Err(Error::InvalidArgument(format!("vertices {i} and {j} differ by a forbidden vector")));
                }
            }
        }
        let grams = projection_grams()?;
        let forbidden = forbidden_vectors()?;
        let functionals: Vec<Vec<ExactScalar>> = forbidden
            .vectors
            .iter()
            .map(|f| {
                let f = lift(f);
                (0..4).map(|i| (0..4).map(|j| &grams.g_perp[i][j] * &f[j]).sum()).collect()
            })
            .collect();
        let bound = forbidden.perp_norm.scale(&Rational::new(1, 2));
        let center_levels = functionals.iter().map(|l| dot(l, &centering)).collect();
        let mut w = WindowSpec {
            grams,
            forbidden,
            functionals,
            bound,
            included_edges: edges,
            included_vertices: vertices,
            centering,
            center_levels,
            vertices: Vec::new(),
        };
        w.vertices = (0..12).map(|k| w.corner(k)).collect::<Result<_>>()?;
        Ok(w)
    }

    // Vertex k relative to the center: α f_k + β f_{k+1} on both edge lines.
    fn corner(&self, k: usize) -> Result<Vec<ExactScalar>> {
        let f = lift(&self.forbidden.vectors[k]);
        let g = lift(&self.forbidden.vectors[(k + 1) % 12]);
        let ff = self.grams.inner_exact(Plane::Perp, &f, &f);
        let fg = self.grams.inner_exact(Plane::Perp, &f, &g);
        let gg = self.grams.inner_exact(Plane::Perp, &g, &g);
        let det = &(&ff * &gg) - &(&fg * &fg);
        let b = &self.bound;
        let alpha = (&(b * &gg) - &(b * &fg)).checked_div(&det)?;
        let beta = (&(b * &ff) - &(b * &fg)).checked_div(&det)?;
        Ok(add(&scaled(&f, &alpha), &scaled(&g, &beta)))
    }

    pub fn centering(&self) -> &[ExactScalar] {
        &self.centering
    }

    pub fn forbidden(&self) -> &ForbiddenSet {
        &self.forbidden
    }

    pub fn grams(&self) -> &ProjectionGrams {
        &self.grams
    }

    /// `(f·f)/2`, the level of every edge line.
    pub fn edge_level(&self) -> &ExactScalar {
        &self.bound
    }

    /// The twelve vertices, absolute (centering added), counterclockwise.
    pub fn vertices(&self) -> Vec<Vec<ExactScalar>> {
        self.vertices.iter().map(|v| add(v, &self.centering)).collect()
    }

    pub fn locate_exact(&self, p: &[ExactScalar]) -> Location {
        let mut on = [false; 12];
        for (k, l) in self.functionals.iter().enumerate() {
            let level = &dot(l, p) - &self.center_levels[k];
            match level.cmp(&self.bound) {
                Ordering::Greater => return Location::Outside,
                Ordering::Equal => on[k] = true,
                Ordering::Less => {}
            }
        }
        let hits: Vec<usize> = (0..12).filter(|&k| on[k]).collect();
        match hits.as_slice() {
            [] => Location::Interior,
            [k] => Location::Edge(*k),
            [0, 11] => Location::Vertex(11),
            [a, b] if b - a == 1 => Location::Vertex(*a),
            _ => Location::Outside,
        }
    }

    pub fn locate(&self, p: &[Rational]) -> Location {
        self.locate_exact(&lift(p))
    }

    pub fn admits(&self, loc: Location) -> bool {
        match loc {
            Location::Interior => true,
            Location::Edge(k) => self.included_edges[k],
            Location::Vertex(k) => self.included_vertices[k],
            Location::Outside => false,
        }
    }

    pub fn contains_exact(&self, p: &[ExactScalar]) -> bool {
        self.admits(self.locate_exact(p))
    }

    /// Membership of the ⊥-projection of a coefficient vector.
    pub fn contains(&self, p: &[Rational]) -> bool {
        self.contains_exact(&lift(p))
    }

    /// `(p − centering)⊥ · (p − centering)⊥`.
    pub fn offset_norm(&self, p: &[Rational]) -> ExactScalar {
        let d = sub(&lift(p), &self.centering);
        self.grams.inner_exact(Plane::Perp, &d, &d)
    }

    /// Sum of the twelve triangles spanned by the center and consecutive vertices.
    pub fn area(&self) -> ExactScalar {
        (0..12)
            .map(|k| {
                self.grams
                    .cross_exact(Plane::Perp, &self.vertices[k], &self.vertices[(k + 1) % 12])
                    .scale(&Rational::new(1, 2))
            })
            .sum()
    }

    /// Largest squared distance between two vertices.
    pub fn diameter_sq(&self) -> ExactScalar {
        let mut best = ExactScalar::zero();
        for a in &self.vertices {
            for b in &self.vertices {
                let d = sub(a, b);
                best = best.max(self.grams.inner_exact(Plane::Perp, &d, &d));
            }
        }
        best
    }

    /// Squared distance from the center to the edge lines: `(f·f)/4`.
    pub fn apothem_sq(&self) -> ExactScalar {
        let bb = &self.bound * &self.bound;
        bb.checked_div(&self.forbidden.perp_norm).expect("forbidden vectors are nonzero")
    }

    pub fn circumradius_sq(&self) -> ExactScalar {
        self.grams.inner_exact(Plane::Perp, &self.vertices[0], &self.vertices[0])
    }

    /// Floating center of the window in `X⊥`, for candidate pruning and drawing.
    pub fn center_f64(&self) -> [f64; 2] {
        let mut out = [0.0; 2];
        for (i, ci) in self.centering.iter().enumerate() {
            let e = unit(i);
            let p = ProjectionGrams::planar_f64(Plane::Perp, &e);
            out[0] += ci.to_f64() * p[0];
            out[1] += ci.to_f64() * p[1];
        }
        out
    }
}

fn unit(i: usize) -> Vec<Rational> {
    (0..4).map(|j| Rational::from_int((i == j) as i64)).collect()
}

fn dot(a: &[ExactScalar], b: &[ExactScalar]) -> ExactScalar {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Membership of `p` in `w` (⊥-projection, half-open boundary).
pub fn window_contains(p: &[Rational], w: &WindowSpec) -> bool {
    w.contains(p)
}

/// The exact area of the window, from its vertices.
pub fn window_area() -> Result<ExactScalar> {
    Ok(WindowSpec::singular()?.area())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{q, qs};

    #[test]
    fn geometry() {
        let w = WindowSpec::singular().unwrap();
        assert_eq!(w.area(), ExactScalar::from_int(2));
        assert_eq!(w.diameter_sq(), ExactScalar::rational(q(8, 3)));
        // (2+√3)/6
        assert_eq!(w.apothem_sq(), qs((1, 3), (1, 6)));
        assert_eq!(w.circumradius_sq(), ExactScalar::rational(q(2, 3)));
        for v in w.vertices() {
            assert_eq!(w.grams().inner_exact(Plane::Perp, &v, &v), ExactScalar::rational(q(2, 3)));
        }
    }

    #[test]
    fn boundary_rule() {
        let w = WindowSpec::singular().unwrap();
        assert!(w.contains(&[q(0, 1), q(0, 1), q(0, 1), q(0, 1)]));
        let verts = w.vertices();
        let admitted: Vec<usize> = (0..12).filter(|&k| w.contains_exact(&verts[k])).collect();
        assert_eq!(admitted, vec![0, 2, 4, 6, 8, 10]);
        for (k, v) in verts.iter().enumerate() {
            assert_eq!(w.locate_exact(v), Location::Vertex(k));
        }
        // edge midpoints
        for k in 0..12 {
            let prev = &verts[(k + 11) % 12];
            let m: Vec<ExactScalar> = prev.iter().zip(&verts[k]).map(|(a, b)| (a + b).scale(&q(1, 2))).collect();
            assert_eq!(w.locate_exact(&m), Location::Edge(k));
            assert_eq!(w.contains_exact(&m), k < 6);
        }
        // opposite vertices 5 or 7 apart differ by a forbidden vector
        for k in 0..12 {
            for sep in [5, 7] {
                let d: Vec<ExactScalar> = sub(&verts[(k + sep) % 12], &verts[k]);
                let hit = w.forbidden().vectors.iter().any(|f| {
                    let e = sub(&d, &lift(f));
                    w.grams().inner_exact(Plane::Perp, &e, &e).is_zero()
                });
                assert!(hit, "vertices {k} and {} should differ by a forbidden vector", (k + sep) % 12);
            }
        }
    }

    #[test]
    fn far_points_are_outside() {
        let w = WindowSpec::singular().unwrap();
        // u1 has ⊥-norm 2 < 8/3 but lies beyond the circumradius
        assert!(!w.contains(&[q(1, 1), q(0, 1), q(0, 1), q(0, 1)]));
        assert!(!w.contains(&[q(3, 1), q(-1, 1), q(2, 1), q(0, 1)]));
    }

    #[test]
    fn invalid_rules_are_rejected() {
        let c = vec![ExactScalar::zero(); 4];
        let all_edges = [true; 12];
        let even: [bool; 12] = std::array::from_fn(|k| k % 2 == 0);
        assert!(WindowSpec::with_rule(c.clone(), all_edges, even).is_err());
        let edges: [bool; 12] = std::array::from_fn(|k| k < 6);
        let bad: [bool; 12] = std::array::from_fn(|k| k < 6);
        assert!(WindowSpec::with_rule(c, edges, bad).is_err());
    }
}
