use std::collections::HashSet;

use serde::Serialize;

use super::patch::{generate_patch, PackedPoint};
use super::window::WindowSpec;
use crate::error::Result;
use crate::exactnum::{ExactScalar, Rational};
use crate::glue::GlueElement;
use crate::laminate::GluedLattice;
use crate::project::Plane;

#[derive(Debug, Clone, Serialize)]
pub struct DensityEstimate {
    /// `(1/2)·|V⊥|·|H|·δ4·δ8`.
    pub exact: Rational,
    /// Fibers counted and the squared ∥-radius of the disc they fill.
    pub fibers: usize,
    pub radius_sq: i64,
    pub empirical: f64,
    pub relative_error: f64,
}

/// `(1/2)·|V⊥|·|H|·δ4·δ8` from the window area and the lattice densities.
pub fn exact_density(w: &WindowSpec, l12: &GluedLattice) -> Result<Rational> {
    let area = w.area();
    let area = area
        .as_rational()
        .cloned()
        .ok_or_else(|| crate::Error::Construction(format!("window area {area} is irrational")))?;
    let d = l12.densities()?;
    let h = Rational::from_int(GlueElement::all().len() as i64);
    Ok(&(&(&area * &h) * &(&d.l4 * &d.l8)) * &Rational::new(1, 2))
}

/// Largest integer `R` such that every admitted fiber with `x∥·x∥ ≤ R` has
/// coordinates within `[−bound, bound]`, or 0 if there is none.
///
/// A coefficient is bounded by `|x4|/√3`, and `|x4|² ≤ R + max x⊥·x⊥`.
pub fn complete_disc_sq(w: &WindowSpec, bound: i64) -> i64 {
    let c = w.center_f64();
    let reach = (c[0] * c[0] + c[1] * c[1]).sqrt() + w.circumradius_sq().to_f64().sqrt();
    let r = 3.0 * ((bound - 1) as f64).powi(2) - reach * reach;
    if r > 1.0 {
        (r - 1e-6).floor() as i64
    } else {
        0
    }
}

/// Center density of `Q10` from the fibers of a patch whose `X∥`-projection
/// lies in a disc around the origin.
///
/// The disc is [`complete_disc_sq`]. Each fiber carries a copy of `L8`
/// (center density 1/96), and `√2` scaling doubles areas in `X∥`.
pub fn density_estimate(w: &WindowSpec, bound: i64) -> Result<DensityEstimate> {
    let l12 = GluedLattice::build()?;
    let exact = exact_density(w, &l12)?;
    let patch = generate_patch(w, bound)?;
    Ok(density_from_patch(w, &patch, bound, &l12, exact))
}

pub fn density_from_patch(
    w: &WindowSpec,
    patch: &[PackedPoint],
    bound: i64,
    l12: &GluedLattice,
    exact: Rational,
) -> DensityEstimate {
    let radius_sq = complete_disc_sq(w, bound);
    let disc = ExactScalar::from_int(radius_sq);
    let fibers =
        if radius_sq == 0 { 0 } else { patch.iter().filter(|p| w.grams().norm(Plane::Par, &p.x4()) <= disc).count() };
    let l8 = l12.densities().map(|d| d.l8.to_f64()).unwrap_or(1.0 / 96.0);
    let empirical =
        if radius_sq == 0 { 0.0 } else { fibers as f64 / (std::f64::consts::PI * radius_sq as f64) / 2.0 * l8 };
    let e = exact.to_f64();
    DensityEstimate { exact, fibers, radius_sq, empirical, relative_error: (empirical - e).abs() / e }
}

/// A nonzero translation `t` (in sixths) with entries at most `6·max_shift`
/// that maps the patch onto itself wherever both ends stay in the box, if
/// one exists. Candidates are the differences to the fiber nearest the origin.
pub fn find_translation_symmetry(patch: &[PackedPoint], bound: i64, max_shift: i64) -> Option<[i64; 4]> {
    let set: HashSet<[i64; 4]> = patch.iter().map(PackedPoint::sixths).collect();
    let in_box = |s: &[i64; 4]| s.iter().all(|&v| (-6 * bound..6 * bound + 6).contains(&v));
    let base = patch.iter().map(PackedPoint::sixths).min_by_key(|s| s.iter().map(|v| v * v).sum::<i64>())?;
    let mut candidates: Vec<[i64; 4]> = patch
        .iter()
        .map(|p| {
            let s = p.sixths();
            std::array::from_fn(|i| s[i] - base[i])
        })
        .filter(|t: &[i64; 4]| t.iter().any(|&v| v != 0) && t.iter().all(|&v| v.abs() <= 6 * max_shift))
        .collect();
    candidates.sort();
    candidates.into_iter().find(|t| {
        patch.iter().all(|p| {
            let s = p.sixths();
            let fwd: [i64; 4] = std::array::from_fn(|i| s[i] + t[i]);
            let back: [i64; 4] = std::array::from_fn(|i| s[i] - t[i]);
            (!in_box(&fwd) || set.contains(&fwd)) && (!in_box(&back) || set.contains(&back))
        })
    })
}
