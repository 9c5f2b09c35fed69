use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::density::complete_disc_sq;
use super::patch::PackedPoint;
use super::window::WindowSpec;
use crate::error::{Error, Result};
use crate::exactnum::{ExactScalar, Rational};
use crate::glue::{orbits, GlueCarrier, GlueElement};
use crate::laminate::L4;
use crate::project::{angular_cmp, lift, Plane, ProjectionGrams};

/// Largest ∥-separation² looked at when choosing the edge length.
const SEPARATION_CAP: i64 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum FaceKind {
    Triangle,
    Square,
    Rhomb30,
}

/// A tile, its corners as indices into [`Tiling::vertices`] in counterclockwise order.
#[derive(Debug, Clone, Serialize)]
pub struct Face {
    pub kind: FaceKind,
    pub vertices: Vec<usize>,
}

/// A ring of 12 fibers at ∥-distance² 1/3 around a tile vertex.
#[derive(Debug, Clone, Serialize)]
pub struct Ring {
    pub center: usize,
    pub members: Vec<PackedPoint>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Tiling {
    /// Special fibers in the disc where their classification is complete.
    pub vertices: Vec<PackedPoint>,
    pub edges: Vec<(usize, usize)>,
    /// Faces whose corners all have complete neighborhoods.
    pub faces: Vec<Face>,
    /// Smallest ∥-separation² between two fibers of the patch.
    pub min_separation: ExactScalar,
    /// ∥-separations² between special fibers up to the cap, with pair counts.
    pub special_separations: BTreeMap<ExactScalar, usize>,
    pub edge_len_sq: ExactScalar,
    /// Per glue orbit (by representative): special and total fibers in the disc.
    pub special_by_orbit: BTreeMap<String, (usize, usize)>,
    pub rings: Vec<Ring>,
    /// The disc radii²: complete patch, classified fibers, complete tile vertices.
    pub discs: [i64; 3],
}

impl Tiling {
    pub fn face_counts(&self) -> BTreeMap<FaceKind, usize> {
        let mut m = BTreeMap::new();
        for f in &self.faces {
            *m.entry(f.kind).or_insert(0) += 1;
        }
        m
    }
}

/// Integer `R'` with `√R' + √s ≤ √R`.
fn shrink(r: i64, s: f64) -> i64 {
    let t = (r as f64).sqrt() - s.sqrt();
    if t <= 0.0 {
        0
    } else {
        (t * t - 1e-9).floor().max(0.0) as i64
    }
}

/// `L4`-coset differences `z` with `z∥·z∥ ≤ cap` that two admitted fibers can realize.
fn separation_shell(w: &WindowSpec, cap: i64) -> Result<Vec<([i64; 4], ExactScalar)>> {
    let grams = w.grams();
    let diam = w.diameter_sq();
    let cap_s = ExactScalar::from_int(cap);
    let l4 = L4::new();
    let reach = Rational::from_int(cap + 3);
    let mut out = Vec::new();
    for h in GlueElement::all() {
        let off = l4.glue_offset(&h);
        for p in l4.lattice().enumerate_up_to(&off, &reach)? {
            let z = p.shifted(&off);
            if z.iter().all(Rational::is_zero) {
                continue;
            }
            let (n_par, n_perp) = grams.split_norms(&z);
            if n_perp > diam || n_par > cap_s {
                continue;
            }
            let sixths = std::array::from_fn(|i| (&z[i] * &Rational::from_int(6)).floor_i64().expect("small"));
            out.push((sixths, n_par));
        }
    }
    out.sort();
    Ok(out)
}

fn par_of(p: &PackedPoint) -> Vec<ExactScalar> {
    lift(&p.x4())
}

fn diff(a: &[ExactScalar], b: &[ExactScalar]) -> Vec<ExactScalar> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// The tiling by special centers of a patch generated with coordinate bound `bound`.
///
/// A fiber is special when no other fiber sits at the smallest ∥-separation
/// from it. Special centers are joined at the smallest separation for which
/// every special center with a complete neighborhood gets at least three
/// edges; shorter special separations (the short diagonals of rhombi) do
/// not qualify. Errors if any complete face is not an equilateral
/// triangle, square or 30° rhomb.
pub fn extract_tiling(w: &WindowSpec, patch: &[PackedPoint], bound: i64) -> Result<Tiling> {
    let grams = w.grams();
    let cap = SEPARATION_CAP;
    let r0 = complete_disc_sq(w, bound);
    let r1 = shrink(r0, cap as f64);
    let r2 = shrink(r1, cap as f64);
    if r2 == 0 {
        return Err(Error::InvalidArgument(format!("coordinate bound {bound} is too small for a tiling")));
    }
    let shell = separation_shell(w, cap)?;
    let index: HashMap<[i64; 4], usize> = patch.iter().enumerate().map(|(i, p)| (p.sixths(), i)).collect();
    let in_disc = |i: usize, r: i64| grams.norm(Plane::Par, &patch[i].x4()) <= ExactScalar::from_int(r);

    // neighbors within the cap, complete for fibers in the r1 disc
    let core: Vec<usize> = (0..patch.len()).filter(|&i| in_disc(i, r1)).collect();
    let neighbors: HashMap<usize, Vec<(usize, &ExactScalar)>> = core
        .iter()
        .map(|&i| {
            let s = patch[i].sixths();
            let nb = shell
                .iter()
                .filter_map(|(z, n)| {
                    let t: [i64; 4] = std::array::from_fn(|k| s[k] + z[k]);
                    index.get(&t).map(|&j| (j, n))
                })
                .collect();
            (i, nb)
        })
        .collect();
    let min_separation = neighbors
        .values()
        .flat_map(|v| v.iter().map(|(_, n)| (*n).clone()))
        .min()
        .ok_or_else(|| Error::Construction("no fiber pairs within the separation cap".into()))?;

    let special: Vec<usize> =
        core.iter().copied().filter(|i| neighbors[i].iter().all(|(_, n)| **n != min_separation)).collect();
    let vid: HashMap<usize, usize> = special.iter().enumerate().map(|(k, &i)| (i, k)).collect();

    let orbs = orbits()?;
    let orbit_name = |h: &GlueElement| {
        orbs.iter().find(|o| o.members.contains(h)).map(|o| o.representative.to_string()).unwrap_or_default()
    };
    let mut special_by_orbit: BTreeMap<String, (usize, usize)> = BTreeMap::new();
    for &i in &core {
        let e = special_by_orbit.entry(orbit_name(&patch[i].h)).or_insert((0, 0));
        e.1 += 1;
        if vid.contains_key(&i) {
            e.0 += 1;
        }
    }

    let mut special_separations: BTreeMap<ExactScalar, usize> = BTreeMap::new();
    for &i in &special {
        for (j, n) in &neighbors[&i] {
            if *j > i && vid.contains_key(j) {
                *special_separations.entry((*n).clone()).or_insert(0) += 1;
            }
        }
    }

    // complete tile vertices: all their special neighbors lie in the r1 disc
    let inner: Vec<usize> = special.iter().copied().filter(|&i| in_disc(i, r2)).collect();
    if inner.is_empty() {
        return Err(Error::Construction("no special fibers away from the patch boundary".into()));
    }
    let degree =
        |i: usize, s: &ExactScalar| neighbors[&i].iter().filter(|(j, n)| *n == s && vid.contains_key(j)).count();
    let edge_len_sq = special_separations
        .keys()
        .find(|s| inner.iter().all(|&i| degree(i, s) >= 3))
        .cloned()
        .ok_or_else(|| Error::Construction("no special separation gives every center three edges".into()))?;

    let vertices: Vec<PackedPoint> = special.iter().map(|&i| patch[i]).collect();
    let coords: Vec<Vec<ExactScalar>> = vertices.iter().map(par_of).collect();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); special.len()];
    let mut edges = Vec::new();
    for (a, &i) in special.iter().enumerate() {
        for (j, n) in &neighbors[&i] {
            if **n == edge_len_sq {
                if let Some(&b) = vid.get(j) {
                    adj[a].push(b);
                    if a < b {
                        edges.push((a, b));
                    }
                }
            }
        }
    }
    let base = lift(&[Rational::one(), Rational::zero(), Rational::zero(), Rational::zero()]);
    for (a, nb) in adj.iter_mut().enumerate() {
        nb.sort_by(|&x, &y| {
            angular_cmp(grams, Plane::Par, &base, &diff(&coords[x], &coords[a]), &diff(&coords[y], &coords[a]))
        });
    }

    let complete: Vec<bool> = special.iter().map(|&i| in_disc(i, r2)).collect();
    let mut faces = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for a in 0..special.len() {
        for &b in &adj[a] {
            if seen.contains(&(a, b)) {
                continue;
            }
            // walk with the face on the left: from u→v turn to the neighbor of v just clockwise of u
            let mut cycle = vec![a];
            let (mut u, mut v) = (a, b);
            let mut closed = true;
            loop {
                seen.insert((u, v));
                if v == a {
                    break;
                }
                if !complete[v] || cycle.len() > 12 {
                    closed = false;
                    break;
                }
                cycle.push(v);
                let nb = &adj[v];
                let k = nb.iter().position(|&x| x == u).expect("undirected");
                let next = nb[(k + nb.len() - 1) % nb.len()];
                (u, v) = (v, next);
            }
            if closed && cycle.iter().all(|&c| complete[c]) {
                faces.push(classify(grams, &coords, cycle, &edge_len_sq)?);
            }
        }
    }
    faces.sort_by(|x, y| x.vertices.cmp(&y.vertices));

    let rings = find_rings(grams, patch, &index, &special, &complete)?;
    Ok(Tiling {
        vertices,
        edges,
        faces,
        min_separation,
        special_separations,
        edge_len_sq,
        special_by_orbit,
        rings,
        discs: [r0, r1, r2],
    })
}

fn classify(grams: &ProjectionGrams, coords: &[Vec<ExactScalar>], cycle: Vec<usize>, l2: &ExactScalar) -> Result<Face> {
    let k = cycle.len();
    let mut inners = Vec::with_capacity(k);
    for c in 0..k {
        let v = &coords[cycle[c]];
        let next = diff(&coords[cycle[(c + 1) % k]], v);
        let prev = diff(&coords[cycle[(c + k - 1) % k]], v);
        if grams.cross_exact(Plane::Par, &next, &prev).signum() != Ordering::Greater {
            return Err(Error::Certificate(format!("face with {k} corners is not convex")));
        }
        inners.push(grams.inner_exact(Plane::Par, &next, &prev));
    }
    let half = l2.scale(&Rational::new(1, 2));
    let rhomb = l2 * &ExactScalar::new(Rational::zero(), Rational::new(1, 2));
    let kind = match k {
        3 if inners.iter().all(|x| *x == half) => FaceKind::Triangle,
        4 if inners.iter().all(ExactScalar::is_zero) => FaceKind::Square,
        4 if (0..4).all(|c| inners[c] == -inners[(c + 1) % 4].clone() && inners[c].abs() == rhomb) => FaceKind::Rhomb30,
        _ => {
            let list: Vec<String> = inners.iter().map(ToString::to_string).collect();
            return Err(Error::Certificate(format!(
                "face with {k} corners and corner products [{}] is not a triangle, square or 30° rhomb",
                list.join(", ")
            )));
        }
    };
    Ok(Face { kind, vertices: cycle })
}

/// Tile vertices surrounded by 12 fibers at ∥-distance² 1/3 whose
/// differences lie in the glue orbit of `[5/6 1/3 5/6 1/3]`, the pattern of
/// the ring around the singular fiber. Consecutive ring points are 30° apart.
fn find_rings(
    grams: &ProjectionGrams,
    patch: &[PackedPoint],
    index: &HashMap<[i64; 4], usize>,
    special: &[usize],
    complete: &[bool],
) -> Result<Vec<Ring>> {
    let ring_class = orbits()?
        .into_iter()
        .find(|o| o.representative == GlueElement::from_sixths([5, 2, 5, 2]))
        .ok_or_else(|| Error::Construction("ring glue orbit missing".into()))?;
    let third = ExactScalar::rational(Rational::new(1, 3));
    // the ring differences: a single exact shell, found once
    let l4 = L4::new();
    let mut ring_z: Vec<[i64; 4]> = Vec::new();
    for h in &ring_class.members {
        let off = l4.glue_offset(h);
        for p in l4.lattice().enumerate_up_to(&off, &Rational::from_int(4))? {
            let z = p.shifted(&off);
            if grams.norm(Plane::Par, &z) == third {
                ring_z.push(std::array::from_fn(|i| (&z[i] * &Rational::from_int(6)).floor_i64().expect("small")));
            }
        }
    }
    let step = ExactScalar::new(Rational::zero(), Rational::new(1, 6));
    let base = lift(&[Rational::one(), Rational::zero(), Rational::zero(), Rational::zero()]);
    let mut rings = Vec::new();
    for (v, &i) in special.iter().enumerate() {
        if !complete[v] {
            continue;
        }
        let s = patch[i].sixths();
        let mut members: Vec<PackedPoint> =
            ring_z.iter().filter_map(|z| index.get(&std::array::from_fn(|k| s[k] + z[k])).map(|&j| patch[j])).collect();
        if members.len() != 12 {
            continue;
        }
        let c = par_of(&patch[i]);
        let rel: Vec<Vec<ExactScalar>> = members.iter().map(|m| diff(&par_of(m), &c)).collect();
        let mut order: Vec<usize> = (0..12).collect();
        order.sort_by(|&a, &b| angular_cmp(grams, Plane::Par, &base, &rel[a], &rel[b]));
        let regular = (0..12).all(|k| grams.inner_exact(Plane::Par, &rel[order[k]], &rel[order[(k + 1) % 12]]) == step);
        if regular {
            members = order.iter().map(|&k| members[k]).collect();
            rings.push(Ring { center: v, members });
        }
    }
    Ok(rings)
}
