//! The split `X4 = X∥ ⊕ X⊥` of the space of `L4` into the two invariant
//! planes of the reflection group `G0`.
//!
//! Vectors are kept as coefficient 4-vectors over the generators `u1..u4`;
//! every planar quantity is an inner product through one of the two rank-2
//! projection Grams, which have entries in ℚ(√3).

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{bilinear, ldlt, Definiteness, ExactScalar, Matrix, Rational};
use crate::glue::{generate_group, orbits, AutMatrix, GlueCarrier, GlueElement};
use crate::laminate::{GluedLattice, L4, L8};
use crate::lattice::CosetOffset;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Plane {
    Par,
    Perp,
}

/// Gram matrices of the generator projections `u_i^∥` and `u_i^⊥`.
///
/// Each is stored split as `a + √3·b` with rational `a`, `b`, so forms on
/// rational vectors stay in rational arithmetic until the last step.
#[derive(Debug, Clone)]
pub struct ProjectionGrams {
    pub g_par: Matrix<ExactScalar>,
    pub g_perp: Matrix<ExactScalar>,
    rat: Matrix<Rational>,
    irr: Matrix<Rational>,
    // antisymmetric area forms, oriented so that (u1, u2) is positive
    area_par: Matrix<ExactScalar>,
    area_perp: Matrix<ExactScalar>,
}

type Frame = [[ExactScalar; 2]; 4];

/// Planar frames for the projections with the common factor √2 removed:
/// `u1, u2` at 60° in both planes, `u3, u4` turned by `+90°` in `X∥` and by
/// `−90°` in `X⊥`.
fn frames() -> (Frame, Frame) {
    let half = ExactScalar::rational(Rational::new(1, 2));
    let half_root = ExactScalar::new(Rational::zero(), Rational::new(1, 2));
    let e1 = [ExactScalar::one(), ExactScalar::zero()];
    let e2 = [half.clone(), half_root.clone()];
    let turn = |v: &[ExactScalar; 2], sign: i64| -> [ExactScalar; 2] {
        if sign > 0 {
            [-&v[1], v[0].clone()]
        } else {
            [v[1].clone(), -&v[0]]
        }
    };
    let par = [e1.clone(), e2.clone(), turn(&e1, 1), turn(&e2, 1)];
    let perp = [e1.clone(), e2.clone(), turn(&e1, -1), turn(&e2, -1)];
    (par, perp)
}

fn frame_gram(f: &Frame) -> Matrix<ExactScalar> {
    let two = ExactScalar::from_int(2);
    (0..4).map(|i| (0..4).map(|j| &two * &(&(&f[i][0] * &f[j][0]) + &(&f[i][1] * &f[j][1]))).collect()).collect()
}

fn transpose<T: Clone>(m: &[[T; 4]; 4]) -> [[T; 4]; 4] {
    std::array::from_fn(|i| std::array::from_fn(|j| m[j][i].clone()))
}

fn int_matrix(m: &[[i64; 4]; 4]) -> Matrix<ExactScalar> {
    m.iter().map(|r| r.iter().map(|&x| ExactScalar::from_int(x)).collect()).collect()
}

fn mat_mul(a: &Matrix<ExactScalar>, b: &Matrix<ExactScalar>) -> Matrix<ExactScalar> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| &a[i][k] * &b[k][j]).sum()).collect()).collect()
}

impl ProjectionGrams {
    pub fn new() -> Result<Self> {
        let (par, perp) = frames();
        let g_par = frame_gram(&par);
        let g_perp = frame_gram(&perp);
        let l4 = L4::new();
        for i in 0..4 {
            for j in 0..4 {
                let sum = &g_par[i][j] + &g_perp[i][j];
                if sum != ExactScalar::rational(l4.lattice().gram()[i][j].clone()) {
                    return Err(Error::Construction(format!("projection Grams do not sum to Gram(L4) at ({i},{j})")));
                }
            }
        }
        for (name, g) in [("parallel", &g_par), ("perpendicular", &g_perp)] {
            match ldlt(g)?.definiteness {
                Definiteness::Semidefinite { rank: 2 } => {}
                other => {
                    return Err(Error::Construction(format!("{name} projection Gram is {other:?}, expected rank 2")))
                }
            }
        }
        let rat = (0..4).map(|i| (0..4).map(|j| g_par[i][j].a().clone()).collect()).collect();
        let irr = (0..4).map(|i| (0..4).map(|j| g_par[i][j].b().clone()).collect()).collect();
        // ρ4 turns both planes by a quarter; x·(yρ4) is then a signed area
        let rot = int_matrix(&transpose(&AutMatrix::rho4().m));
        let oriented = |g: &Matrix<ExactScalar>| -> Result<Matrix<ExactScalar>> {
            let mut w = mat_mul(g, &rot);
            for i in 0..4 {
                for j in 0..4 {
                    if w[i][j] != -&w[j][i] {
                        return Err(Error::Construction("quarter turn does not give an area form".into()));
                    }
                }
            }
            if w[0][1].signum() == std::cmp::Ordering::Less {
                w = w.iter().map(|r| r.iter().map(|x| -x).collect()).collect();
            }
            Ok(w)
        };
        let area_par = oriented(&g_par)?;
        let area_perp = oriented(&g_perp)?;
        Ok(ProjectionGrams { g_par, g_perp, rat, irr, area_par, area_perp })
    }

    pub fn gram(&self, plane: Plane) -> &Matrix<ExactScalar> {
        match plane {
            Plane::Par => &self.g_par,
            Plane::Perp => &self.g_perp,
        }
    }

    /// `x^P · y^P` for rational coefficient vectors.
    pub fn inner(&self, plane: Plane, x: &[Rational], y: &[Rational]) -> ExactScalar {
        let a = bilinear(&self.rat, x, y);
        let b = bilinear(&self.irr, x, y);
        match plane {
            Plane::Par => ExactScalar::new(a, b),
            Plane::Perp => ExactScalar::new(a, -b),
        }
    }

    pub fn norm(&self, plane: Plane, x: &[Rational]) -> ExactScalar {
        self.inner(plane, x, x)
    }

    /// `(x∥·x∥, x⊥·x⊥)`.
    pub fn split_norms(&self, x: &[Rational]) -> (ExactScalar, ExactScalar) {
        let a = bilinear(&self.rat, x, x);
        let b = bilinear(&self.irr, x, x);
        (ExactScalar::new(a.clone(), b.clone()), ExactScalar::new(a, -b))
    }

    /// Inner product for coefficient vectors over ℚ(√3).
    pub fn inner_exact(&self, plane: Plane, x: &[ExactScalar], y: &[ExactScalar]) -> ExactScalar {
        bilinear(self.gram(plane), x, y)
    }

    /// Signed area `x^P ∧ y^P`, positive for `(u1, u2)`.
    pub fn cross_exact(&self, plane: Plane, x: &[ExactScalar], y: &[ExactScalar]) -> ExactScalar {
        let w = match plane {
            Plane::Par => &self.area_par,
            Plane::Perp => &self.area_perp,
        };
        bilinear(w, x, y)
    }

    pub fn cross(&self, plane: Plane, x: &[Rational], y: &[Rational]) -> ExactScalar {
        self.cross_exact(plane, &lift(x), &lift(y))
    }

    /// Floating planar coordinates (√2 restored), for rendering.
    pub fn planar_f64(plane: Plane, x: &[Rational]) -> [f64; 2] {
        let (par, perp) = frames();
        let f = if plane == Plane::Par { par } else { perp };
        let s = std::f64::consts::SQRT_2;
        let mut out = [0.0; 2];
        for (xi, fi) in x.iter().zip(f.iter()) {
            out[0] += s * xi.to_f64() * fi[0].to_f64();
            out[1] += s * xi.to_f64() * fi[1].to_f64();
        }
        out
    }
}

/// Rational vector viewed over ℚ(√3).
pub fn lift(x: &[Rational]) -> Vec<ExactScalar> {
    x.iter().map(|v| ExactScalar::rational(v.clone())).collect()
}

pub fn projection_grams() -> Result<ProjectionGrams> {
    ProjectionGrams::new()
}

/// `(x∥·x∥, x⊥·x⊥)` for a coefficient vector over `u1..u4`.
pub fn split_norms(x4: &[Rational]) -> Result<(ExactScalar, ExactScalar)> {
    if x4.len() != 4 {
        return Err(Error::DimensionMismatch { expected: 4, found: x4.len() });
    }
    Ok(projection_grams()?.split_norms(x4))
}

fn preserves(m: &AutMatrix, g: &Matrix<ExactScalar>) -> bool {
    let mm = int_matrix(&m.m);
    let mt = int_matrix(&transpose(&m.m));
    mat_mul(&mat_mul(&mm, g), &mt) == *g
}

/// The group generated by `ρ2, ρ3, ρ4`: 24 matrices, each an isometry of
/// `L4` that preserves both planes.
pub fn g0_group() -> Result<Vec<AutMatrix>> {
    let group = generate_group(&[AutMatrix::rho2(), AutMatrix::rho3(), AutMatrix::rho4()]);
    if group.len() != 24 {
        return Err(Error::Construction(format!("G0 has {} elements, expected 24", group.len())));
    }
    let grams = projection_grams()?;
    let l4: Matrix<ExactScalar> = L4::new()
        .lattice()
        .gram()
        .iter()
        .map(|r| r.iter().map(|x| ExactScalar::rational(x.clone())).collect())
        .collect();
    for m in &group {
        for (what, g) in [("Gram(L4)", &l4), ("g_par", &grams.g_par), ("g_perp", &grams.g_perp)] {
            if !preserves(m, g) {
                return Err(Error::Construction(format!("{} does not preserve {what}", m.name)));
            }
        }
    }
    Ok(group)
}

/// Orbit of `x` under `group` acting on coefficient rows, in sorted order.
pub fn orbit_of(group: &[AutMatrix], x: &[Rational]) -> Vec<Vec<Rational>> {
    let set: BTreeSet<Vec<Rational>> = group.iter().map(|m| m.apply_row(x)).collect();
    set.into_iter().collect()
}

/// The twelve forbidden ⊥-vectors, sorted counterclockwise in `X⊥`
/// starting from `(1/3, 1/3, −2/3, 1/3)`.
#[derive(Debug, Clone, Serialize)]
pub struct ForbiddenSet {
    pub vectors: Vec<Vec<Rational>>,
    pub perp_norm: ExactScalar,
}

impl ForbiddenSet {
    pub fn representative() -> Vec<Rational> {
        vec![Rational::new(1, 3), Rational::new(1, 3), Rational::new(-2, 3), Rational::new(1, 3)]
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.vectors.iter().any(|f| f.as_slice() == x)
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }
}

/// Counterclockwise angular order around the origin of a plane, measured from `base`.
pub fn angular_cmp(
    grams: &ProjectionGrams,
    plane: Plane,
    base: &[ExactScalar],
    a: &[ExactScalar],
    b: &[ExactScalar],
) -> std::cmp::Ordering {
    use std::cmp::Ordering::*;
    // half 0: angle in [0, π), half 1: [π, 2π)
    let half = |v: &[ExactScalar]| {
        let c = grams.cross_exact(plane, base, v).signum();
        let d = grams.inner_exact(plane, base, v).signum();
        match (c, d) {
            (Greater, _) | (Equal, Greater) => 0,
            _ => 1,
        }
    };
    half(a).cmp(&half(b)).then_with(|| match grams.cross_exact(plane, a, b).signum() {
        Greater => Less,
        Less => Greater,
        Equal => Equal,
    })
}

pub fn forbidden_vectors() -> Result<ForbiddenSet> {
    let grams = projection_grams()?;
    let group = g0_group()?;
    let rep = ForbiddenSet::representative();
    let mut vectors = orbit_of(&group, &rep);
    if vectors.len() != 12 {
        return Err(Error::Construction(format!("forbidden orbit has {} vectors, expected 12", vectors.len())));
    }
    let perp_norm = grams.norm(Plane::Perp, &rep);
    for v in &vectors {
        if grams.norm(Plane::Perp, v) != perp_norm {
            return Err(Error::Construction("forbidden vectors differ in ⊥-norm".into()));
        }
    }
    let base = lift(&rep);
    vectors.sort_by(|a, b| angular_cmp(&grams, Plane::Perp, &base, &lift(a), &lift(b)));
    Ok(ForbiddenSet { vectors, perp_norm })
}

/// A nonzero `x = (x8, x4) ∈ L12` satisfying the hypotheses of the minimal
/// vector lemma but not of norm 4.
#[derive(Debug, Clone, Serialize)]
pub struct LemmaViolation {
    pub h: GlueElement,
    pub x8: Vec<Rational>,
    pub x4: Vec<Rational>,
    pub norm: ExactScalar,
}

#[derive(Debug, Clone, Serialize)]
pub struct LemmaScan {
    /// `(x8, x4)` pairs meeting both hypotheses.
    pub candidates: usize,
    /// Those among them of norm 4.
    pub minimal: usize,
    pub violations: Vec<LemmaViolation>,
}

/// All nonzero `x ∈ L12` with `x8·x8 + 2 x∥·x∥ < 4` and `x⊥·x⊥ ≤ 8/3`,
/// checked to have norm exactly 4.
///
/// The first hypothesis is taken with the actual `x8·x8`, which is what the
/// packing argument needs; it implies the form with the depth `Δ8`. Since
/// `x8·x8 < 4` the L8 enumeration bound is 4, and `x4` ranges over coset
/// vectors with `x∥·x∥ < 2`, `x⊥·x⊥ ≤ 8/3`, so `x4·x4 < 14/3`.
pub fn lemma1_scan() -> Result<LemmaScan> {
    let grams = projection_grams()?;
    let l8 = L8::new()?;
    let l4 = L4::new();
    let two = ExactScalar::from_int(2);
    let four = ExactScalar::from_int(4);
    let perp_cap = ExactScalar::rational(Rational::new(8, 3));
    let per_class: Vec<Result<LemmaScan>> = GlueElement::all()
        .par_iter()
        .map(|h| {
            let off8 = l8.glue_offset(h);
            let x8s: Vec<(Vec<Rational>, Rational)> = l8
                .lattice()
                .enumerate_up_to(&off8, &Rational::from_int(4))?
                .into_iter()
                .map(|p| {
                    let v = p.shifted(&off8);
                    let n = l8.lattice().norm(&v).expect("dimension 8");
                    (v, n)
                })
                .collect();
            let off4 = l4.glue_offset(h);
            let mut scan = LemmaScan { candidates: 0, minimal: 0, violations: Vec::new() };
            for p in l4.lattice().enumerate_up_to(&off4, &Rational::new(14, 3))? {
                let x4 = p.shifted(&off4);
                let (np, nq) = grams.split_norms(&x4);
                if &two * &np >= four || nq > perp_cap {
                    continue;
                }
                let x4_zero = x4.iter().all(Rational::is_zero);
                for (x8, n8) in &x8s {
                    if x4_zero && n8.is_zero() {
                        continue;
                    }
                    let lhs = &ExactScalar::rational(n8.clone()) + &(&two * &np);
                    if lhs >= four {
                        continue;
                    }
                    scan.candidates += 1;
                    let total = &(&ExactScalar::rational(n8.clone()) + &np) + &nq;
                    if total == four {
                        scan.minimal += 1;
                    } else {
                        scan.violations.push(LemmaViolation { h: *h, x8: x8.clone(), x4: x4.clone(), norm: total });
                    }
                }
            }
            Ok(scan)
        })
        .collect();
    let mut out = LemmaScan { candidates: 0, minimal: 0, violations: Vec::new() };
    for s in per_class {
        let s = s?;
        out.candidates += s.candidates;
        out.minimal += s.minimal;
        out.violations.extend(s.violations);
    }
    Ok(out)
}

/// One `G0`-orbit of `L4`-parts of minimal vectors of `L12`.
#[derive(Debug, Clone, Serialize)]
pub struct SplitOrbit {
    /// Representative of the glue orbit (of the full symmetry group) the vectors belong to.
    pub glue: GlueElement,
    pub delta8: Rational,
    pub representative: Vec<Rational>,
    pub size: usize,
    pub n_par: ExactScalar,
    pub n_perp: ExactScalar,
}

impl fmt::Display for SplitOrbit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rep: Vec<String> = self.representative.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}] x{}: {} | {}", rep.join(" "), self.size, self.n_par, self.n_perp)
    }
}

/// The orbit representatives of the split table, in row order.
pub fn table4_representatives() -> [Vec<Rational>; 3] {
    let t = |a: i64, b: i64, c: i64, d: i64| {
        vec![Rational::new(a, 3), Rational::new(b, 3), Rational::new(c, 3), Rational::new(d, 3)]
    };
    [t(1, 1, 1, 1), t(1, 1, -2, 1), t(1, 1, 1, -2)]
}

/// Split norms of minimal-vector `L4`-parts, grouped into `G0`-orbits for
/// each glue orbit of norm-4 classes. Orbits containing a split-table
/// representative use it; others use their least member.
///
/// Checks that `x∥·x∥ = x⊥·x⊥` on every orbit except those of the class with
/// `Δ8 = 4/3`, which must be exactly three orbits of 12.
pub fn minimal_split_census(l12: &GluedLattice) -> Result<Vec<SplitOrbit>> {
    let grams = projection_grams()?;
    let g0 = g0_group()?;
    let four = Rational::from_int(4);
    let preferred = table4_representatives();
    let mut out = Vec::new();
    for orbit in orbits()? {
        let rep = orbit.representative;
        if l12.class_minimum(&rep).delta != four {
            continue;
        }
        let delta8 = l12.l8.glue_depth(&rep)?.delta;
        let mut parts: BTreeSet<Vec<Rational>> = BTreeSet::new();
        for h in &orbit.members {
            let off8 = l12.l8.glue_offset(h);
            let norms8: BTreeSet<Rational> = l12
                .l8
                .lattice()
                .enumerate_up_to(&off8, &four)?
                .iter()
                .map(|p| l12.l8.lattice().norm(&p.shifted(&off8)).expect("dimension 8"))
                .collect();
            let off4: CosetOffset = l12.l4.glue_offset(h);
            for p in l12.l4.lattice().enumerate_up_to(&off4, &four)? {
                let x4 = p.shifted(&off4);
                let n4 = l12.l4.lattice().norm(&x4)?;
                let rest = &four - &n4;
                if norms8.contains(&rest) {
                    parts.insert(x4);
                }
            }
        }
        let mut seen: BTreeSet<Vec<Rational>> = BTreeSet::new();
        let mut rows = Vec::new();
        for x in &parts {
            if seen.contains(x) {
                continue;
            }
            let members = orbit_of(&g0, x);
            if members.iter().any(|m| !parts.contains(m)) {
                return Err(Error::Construction(format!("minimal L4-parts of {rep} are not G0-stable")));
            }
            seen.extend(members.iter().cloned());
            let representative =
                preferred.iter().find(|p| members.contains(p)).cloned().unwrap_or_else(|| members[0].clone());
            let (n_par, n_perp) = grams.split_norms(&representative);
            rows.push(SplitOrbit {
                glue: rep,
                delta8: delta8.clone(),
                representative,
                size: members.len(),
                n_par,
                n_perp,
            });
        }
        if delta8 == Rational::new(4, 3) {
            let sizes: Vec<usize> = rows.iter().map(|r| r.size).collect();
            if sizes != [12, 12, 12] {
                return Err(Error::Construction(format!("Δ8 = 4/3 class splits into orbits {sizes:?}")));
            }
        } else if let Some(r) = rows.iter().find(|r| r.n_par != r.n_perp) {
            return Err(Error::Construction(format!("unequal split {r} in class {rep}")));
        }
        out.extend(rows);
    }
    Ok(out)
}

/// The three rows of the split table, read off the census.
pub fn table4(census: &[SplitOrbit]) -> Result<Vec<SplitOrbit>> {
    table4_representatives()
        .iter()
        .map(|rep| {
            census
                .iter()
                .find(|r| &r.representative == rep)
                .cloned()
                .ok_or_else(|| Error::Construction(format!("no census orbit contains {rep:?}")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{q, qs};
    use proptest::prelude::*;

    fn s(a: (i64, i64), b: (i64, i64)) -> ExactScalar {
        qs(a, b)
    }

    fn ints(m: &[[i64; 4]; 4]) -> Matrix<ExactScalar> {
        int_matrix(m)
    }

    #[test]
    fn grams_have_the_expected_blocks() {
        let g = projection_grams().unwrap();
        let r3 = ExactScalar::sqrt3();
        let z = ExactScalar::zero();
        let t = ExactScalar::from_int(2);
        let o = ExactScalar::one();
        let expected_par = vec![
            vec![t.clone(), o.clone(), z.clone(), -&r3],
            vec![o.clone(), t.clone(), r3.clone(), z.clone()],
            vec![z.clone(), r3.clone(), t.clone(), o.clone()],
            vec![-&r3, z.clone(), o.clone(), t.clone()],
        ];
        assert_eq!(g.g_par, expected_par);
        let sum: Matrix<ExactScalar> =
            (0..4).map(|i| (0..4).map(|j| &g.g_par[i][j] + &g.g_perp[i][j]).collect()).collect();
        assert_eq!(sum, ints(&[[4, 2, 0, 0], [2, 4, 0, 0], [0, 0, 4, 2], [0, 0, 2, 4]]));
        // u1·u3 = 0 in X4, u1∥·u4∥ = −√3
        assert_eq!(g.g_par[0][3], -&r3);
        assert_eq!(g.g_perp[0][3], r3);
        let f = ldlt(&g.g_par).unwrap();
        assert_eq!(f.d, vec![t.clone(), s((3, 2), (0, 1)), z.clone(), z.clone()]);
        assert_eq!(f.definiteness, Definiteness::Semidefinite { rank: 2 });
    }

    #[test]
    fn table4_rows_by_direct_computation() {
        let g = projection_grams().unwrap();
        let [r1, r2, r3] = table4_representatives();
        assert_eq!(g.split_norms(&r1), (s((4, 3), (0, 1)), s((4, 3), (0, 1))));
        // 2/√3 = (2/3)√3
        assert_eq!(g.split_norms(&r2), (s((4, 3), (-2, 3)), s((4, 3), (2, 3))));
        assert_eq!(g.split_norms(&r3), (s((4, 3), (2, 3)), s((4, 3), (-2, 3))));
    }

    #[test]
    fn area_form_orients_both_planes() {
        let g = projection_grams().unwrap();
        let u = |i: usize| -> Vec<Rational> { (0..4).map(|j| Rational::from_int((i == j) as i64)).collect() };
        for plane in [Plane::Par, Plane::Perp] {
            // |u1 ∧ u2| = 2·sin 60°
            assert_eq!(g.cross(plane, &u(0), &u(1)), ExactScalar::sqrt3());
            assert_eq!(g.cross(plane, &u(1), &u(0)), -ExactScalar::sqrt3());
        }
        // u3 is a quarter turn of u1, counterclockwise in X∥ and clockwise in X⊥
        assert_eq!(g.cross(Plane::Par, &u(0), &u(2)), ExactScalar::from_int(2));
        assert_eq!(g.cross(Plane::Perp, &u(0), &u(2)), ExactScalar::from_int(-2));
    }

    #[test]
    fn g0_has_24_isometries() {
        let g0 = g0_group().unwrap();
        assert_eq!(g0.len(), 24);
        assert!(g0.contains(&AutMatrix::identity()));
        let r3 = AutMatrix::rho3();
        assert_eq!(r3.mul(&r3).mul(&r3).m, AutMatrix::identity().m);
        // σ swaps the planes instead
        let grams = projection_grams().unwrap();
        assert!(!preserves(&AutMatrix::sigma(), &grams.g_par));
    }

    #[test]
    fn forbidden_set() {
        let f = forbidden_vectors().unwrap();
        assert_eq!(f.len(), 12);
        assert_eq!(f.perp_norm, s((4, 3), (2, 3)));
        for v in &f.vectors {
            let neg: Vec<Rational> = v.iter().map(|x| -x).collect();
            assert!(f.contains(&neg));
        }
        // counterclockwise at 30° steps, opposite vectors six apart
        let g = projection_grams().unwrap();
        let cos30 = &f.perp_norm * &s((0, 1), (1, 2));
        for k in 0..12 {
            let a = &f.vectors[k];
            let b = &f.vectors[(k + 1) % 12];
            assert_eq!(g.inner(Plane::Perp, a, b), cos30);
            assert!(g.cross(Plane::Perp, a, b).signum() == std::cmp::Ordering::Greater);
            let opp: Vec<Rational> = a.iter().map(|x| -x).collect();
            assert_eq!(f.vectors[(k + 6) % 12], opp);
        }
    }

    #[test]
    fn only_the_origin_lies_in_either_plane() {
        let g = projection_grams().unwrap();
        let r = 20i64;
        let hits: usize = (-r..=r)
            .into_par_iter()
            .map(|a| {
                let mut n = 0;
                for b in -r..=r {
                    for c in -r..=r {
                        for d in -r..=r {
                            if (a, b, c, d) == (0, 0, 0, 0) {
                                continue;
                            }
                            let x = [a, b, c, d].map(Rational::from_int);
                            let (p, s) = g.split_norms(&x);
                            if p.is_zero() || s.is_zero() {
                                n += 1;
                            }
                        }
                    }
                }
                n
            })
            .sum();
        assert_eq!(hits, 0);
    }

    #[test]
    fn five_solutions_for_the_sixth_class() {
        let g = projection_grams().unwrap();
        let l4 = L4::new();
        let h = GlueElement::from_sixths([1, 1, 1, 1]);
        let off = l4.glue_offset(&h);
        let sols: Vec<Vec<Rational>> = l4
            .lattice()
            .enumerate_up_to(&off, &q(3, 1))
            .unwrap()
            .into_iter()
            .map(|p| p.shifted(&off))
            .filter(|x| l4.lattice().norm(x).unwrap() < q(3, 1))
            .collect();
        assert_eq!(sols.len(), 5);
        let mut pars = BTreeSet::new();
        for x in &sols {
            let n = l4.lattice().norm(x).unwrap();
            let (np, _) = g.split_norms(x);
            if x.iter().all(|c| *c == q(1, 6)) {
                assert_eq!(n, q(2, 3));
            } else {
                pars.insert(np);
            }
        }
        let expected: BTreeSet<ExactScalar> = [s((4, 3), (1, 3)), s((4, 3), (-1, 3))].into();
        assert_eq!(pars, expected);
    }

    #[test]
    fn lemma_scan_is_clean() {
        let scan = lemma1_scan().unwrap();
        assert!(scan.violations.is_empty(), "{:?}", scan.violations.first());
        assert!(scan.minimal > 0);
        assert_eq!(scan.candidates, scan.minimal);
    }

    #[test]
    fn census_and_table4() {
        let l12 = GluedLattice::build().unwrap();
        let census = minimal_split_census(&l12).unwrap();
        let t4 = table4(&census).unwrap();
        assert_eq!(t4.len(), 3);
        for r in &t4 {
            assert_eq!(r.size, 12);
        }
        assert_eq!((t4[1].n_par.clone(), t4[1].n_perp.clone()), (s((4, 3), (-2, 3)), s((4, 3), (2, 3))));
        // the class with Δ4 = 2 is one orbit of 12 with equal split
        let half = census.iter().filter(|r| r.glue == GlueElement::from_sixths([3, 0, 3, 0])).collect::<Vec<_>>();
        assert_eq!(half.len(), 1);
        assert_eq!(half[0].size, 12);
        assert_eq!(half[0].n_par, half[0].n_perp);
        // σ exchanges the split norms on the Δ8 = 4/3 class
        let g = projection_grams().unwrap();
        let sigma = AutMatrix::sigma();
        let g0 = g0_group().unwrap();
        for r in census.iter().filter(|r| r.delta8 == q(4, 3)) {
            for x in orbit_of(&g0, &r.representative) {
                let (a, b) = g.split_norms(&x);
                let (c, d) = g.split_norms(&sigma.apply_row(&x));
                assert_eq!((a, b), (d, c));
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]
        #[test]
        fn split_norms_sum_to_the_l4_norm(v in proptest::array::uniform4((-60i64..=60, 1i64..=6))) {
            let g = projection_grams().unwrap();
            let x: Vec<Rational> = v.iter().map(|&(n, d)| q(n, d)).collect();
            let (a, b) = g.split_norms(&x);
            let n4 = L4::new().lattice().norm(&x).unwrap();
            prop_assert_eq!(&a + &b, ExactScalar::rational(n4));
            prop_assert!(a.signum() != std::cmp::Ordering::Less);
            prop_assert!(b.signum() != std::cmp::Ordering::Less);
        }
    }
}
