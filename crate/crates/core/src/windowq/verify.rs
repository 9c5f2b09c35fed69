use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use super::patch::PackedPoint;
use super::window::WindowSpec;
use crate::error::{Error, Result};
use crate::exactnum::{ExactScalar, Rational};
use crate::glue::{GlueCarrier, GlueElement};
use crate::laminate::{L4, L8};
use crate::project::{Plane, ProjectionGrams};

/// An `L4`-coset difference `z` that two fibers can realize, with the least
/// 10-d squared distance between their `L8` cosets, `2 z∥·z∥ + Δ8(z)`.
#[derive(Debug, Clone)]
pub struct Neighbor {
    pub sixths: [i64; 4],
    pub n_par: ExactScalar,
    pub n_perp: ExactScalar,
    pub delta8: Rational,
    pub dist_sq: ExactScalar,
    pub forbidden: bool,
}

/// All differences `z` with `z⊥·z⊥` at most the window diameter² and
/// `2 z∥·z∥ + Δ8 ≤ shell`. Any fiber pair at 10-d distance² `≤ shell` differs by one of these.
///
/// `Δ8` is the least norm in the `L8` coset of the class of `z` (0 for the trivial class).
pub fn neighbor_shell(w: &WindowSpec, shell: &Rational) -> Result<Vec<Neighbor>> {
    let grams = w.grams();
    let diam = w.diameter_sq();
    let l8 = L8::new()?;
    let l4 = L4::new();
    let shell_s = ExactScalar::rational(shell.clone());
    let two = ExactScalar::from_int(2);
    let mut out = Vec::new();
    for h in GlueElement::all() {
        let delta8 = if h.is_zero() { Rational::zero() } else { l8.glue_depth(&h)?.delta };
        if &delta8 > shell {
            continue;
        }
        // z·z = z∥² + z⊥² ≤ (shell − Δ8)/2 + diameter²; the diameter² is below 3
        let reach = &(&(shell - &delta8) / &Rational::from_int(2)) + &Rational::from_int(3);
        let off = l4.glue_offset(&h);
        for p in l4.lattice().enumerate_up_to(&off, &reach)? {
            let z = p.shifted(&off);
            if z.iter().all(Rational::is_zero) {
                continue;
            }
            let (n_par, n_perp) = grams.split_norms(&z);
            if n_perp > diam {
                continue;
            }
            let dist_sq = &(&two * &n_par) + &ExactScalar::rational(delta8.clone());
            if dist_sq > shell_s {
                continue;
            }
            let sixths = std::array::from_fn(|i| (&z[i] * &Rational::from_int(6)).floor_i64().expect("small"));
            let forbidden = w.forbidden().contains(&z);
            out.push(Neighbor { sixths, n_par, n_perp, delta8: delta8.clone(), dist_sq, forbidden });
        }
    }
    if diam >= ExactScalar::from_int(3) {
        return Err(Error::Construction(format!("window diameter² {diam} exceeds the enumeration reach")));
    }
    out.sort_by(|a, b| a.sixths.cmp(&b.sixths));
    Ok(out)
}

/// A pair of fibers `(i, j)`, `i < j`, and their least 10-d squared distance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairDistance {
    pub i: usize,
    pub j: usize,
    pub dist_sq: ExactScalar,
}

#[derive(Debug, Clone, Serialize)]
pub struct PackingCertificate {
    pub fibers: usize,
    /// Least squared distance over all distinct points of the patch.
    pub min_dist_sq: ExactScalar,
    /// Distance² between two points of one fiber (the minimal norm of `L8`).
    pub intra_fiber: Rational,
    /// Fiber pairs at the minimum.
    pub witnesses: Vec<PairDistance>,
    /// Fiber pairs within the shell, by distance².
    pub shell_census: BTreeMap<ExactScalar, usize>,
    /// Fiber pairs whose difference is a forbidden vector (must be none).
    pub forbidden_pairs: Vec<(usize, usize)>,
}

/// Exact pairwise minimum distance over a patch.
///
/// Fiber pairs are found through [`neighbor_shell`], so every pair at
/// distance² `≤ shell` is examined, and none farther can lower the minimum.
/// Errors on any pair below 4 and on any forbidden difference; every fiber
/// must be admitted by `w`, since the shell relies on it.
pub fn verify_packing(w: &WindowSpec, patch: &[PackedPoint], shell: &Rational) -> Result<PackingCertificate> {
    if *shell < Rational::from_int(4) {
        return Err(Error::InvalidArgument(format!("shell bound {shell} is below 4")));
    }
    if let Some(p) = patch.iter().find(|p| !w.contains(&p.x4())) {
        return Err(Error::InvalidArgument(format!("fiber {p} is not admitted by the window")));
    }
    let l8 = L8::new()?;
    let intra = l8.lattice().minimum()?.delta;
    let shell_z = neighbor_shell(w, shell)?;
    let index: HashMap<[i64; 4], usize> = patch.iter().enumerate().map(|(i, p)| (p.sixths(), i)).collect();
    if index.len() != patch.len() {
        return Err(Error::InvalidArgument("patch lists a fiber twice".into()));
    }
    let found: Vec<(Vec<PairDistance>, Vec<(usize, usize)>)> = patch
        .par_iter()
        .enumerate()
        .map(|(i, p)| {
            let s = p.sixths();
            let mut pairs = Vec::new();
            let mut bad = Vec::new();
            for z in &shell_z {
                let t: [i64; 4] = std::array::from_fn(|k| s[k] + z.sixths[k]);
                if let Some(&j) = index.get(&t) {
                    if j > i {
                        pairs.push(PairDistance { i, j, dist_sq: z.dist_sq.clone() });
                    }
                    if z.forbidden {
                        bad.push((i.min(j), i.max(j)));
                    }
                }
            }
            (pairs, bad)
        })
        .collect();
    let mut pairs = Vec::new();
    let mut forbidden_pairs = Vec::new();
    for (p, b) in found {
        pairs.extend(p);
        forbidden_pairs.extend(b);
    }
    forbidden_pairs.sort();
    forbidden_pairs.dedup();
    pairs.sort_by(|a, b| (a.i, a.j).cmp(&(b.i, b.j)));
    let mut shell_census = BTreeMap::new();
    for p in &pairs {
        *shell_census.entry(p.dist_sq.clone()).or_insert(0) += 1;
    }
    let inter_min = pairs.iter().map(|p| p.dist_sq.clone()).min();
    let intra_s = ExactScalar::rational(intra.clone());
    let min_dist_sq = match inter_min {
        Some(m) if m < intra_s => m,
        _ => intra_s,
    };
    if let Some(&(i, j)) = forbidden_pairs.first() {
        return Err(Error::Certificate(format!("fibers {} and {} differ by a forbidden vector", patch[i], patch[j])));
    }
    let four = ExactScalar::from_int(4);
    if min_dist_sq < four {
        let p = pairs.iter().find(|p| p.dist_sq == min_dist_sq).expect("minimum comes from a pair");
        return Err(Error::Certificate(format!(
            "fibers {} and {} are at squared distance {}",
            patch[p.i], patch[p.j], p.dist_sq
        )));
    }
    let witnesses = pairs.iter().filter(|p| p.dist_sq == min_dist_sq).cloned().collect();
    Ok(PackingCertificate {
        fibers: patch.len(),
        min_dist_sq,
        intra_fiber: intra,
        witnesses,
        shell_census,
        forbidden_pairs,
    })
}

/// Fibers whose ⊥-point lies outside the inscribed circle of the window,
/// i.e. in the layer next to the boundary.
pub fn boundary_layer(w: &WindowSpec, patch: &[PackedPoint]) -> Vec<usize> {
    let ap = w.apothem_sq();
    (0..patch.len()).filter(|&i| w.offset_norm(&patch[i].x4()) >= ap).collect()
}

/// For every fiber of `indices` and every forbidden `f`, whether `x + f`
/// is also in the patch. Returns the offending pairs.
pub fn forbidden_partners(w: &WindowSpec, patch: &[PackedPoint], indices: &[usize]) -> Vec<(usize, usize)> {
    let index: HashMap<[i64; 4], usize> = patch.iter().enumerate().map(|(i, p)| (p.sixths(), i)).collect();
    let fs: Vec<[i64; 4]> = w
        .forbidden()
        .vectors
        .iter()
        .map(|f| std::array::from_fn(|k| (&f[k] * &Rational::from_int(6)).floor_i64().expect("small")))
        .collect();
    let mut out = Vec::new();
    for &i in indices {
        let s = patch[i].sixths();
        for f in &fs {
            let t: [i64; 4] = std::array::from_fn(|k| s[k] + f[k]);
            if let Some(&j) = index.get(&t) {
                out.push((i, j));
            }
        }
    }
    out
}

/// `(p − q)⊥ · f⊥` for fibers `p`, `q`.
pub fn difference_level(grams: &ProjectionGrams, p: &PackedPoint, q: &PackedPoint, f: &[Rational]) -> ExactScalar {
    let d: Vec<Rational> = p.x4().iter().zip(q.x4()).map(|(a, b)| a - &b).collect();
    grams.inner(Plane::Perp, &d, f)
}
