//! `L8 = A2⊕A2⊕D4`, `L4 = A2⊕A2`, and the lattice `L12` obtained by gluing
//! them along the common glue group `H`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{bilinear, determinant, Matrix, Rational};
use crate::glue::{orbits, table_l4, table_l8, GlueCarrier, GlueElement};
use crate::lattice::{CosetOffset, Depth, GramLattice};

/// `A2⊕A2⊕D4` with the glue embedding
/// `h ↦ α1·hole(A2) ⊕ α2·hole(A2) ⊕ (β3·d3 + β4·d4)`.
#[derive(Debug, Clone)]
pub struct L8 {
    lattice: GramLattice,
    d4_holes: [CosetOffset; 2],
}

impl L8 {
    pub fn new() -> Result<Self> {
        let a2 = GramLattice::a2();
        let d4 = GramLattice::d4();
        let lattice = a2.direct_sum(&a2).direct_sum(&d4);
        let classes = d4.root_glue_classes()?;
        if classes.len() != 4 {
            return Err(Error::Construction(format!("D4 has {} glue classes, expected 4", classes.len())));
        }
        // first two nonzero classes in lexicographic order
        Ok(L8 { lattice, d4_holes: [classes[1].clone(), classes[2].clone()] })
    }

    pub fn d4_holes(&self) -> &[CosetOffset; 2] {
        &self.d4_holes
    }
}

impl GlueCarrier for L8 {
    fn lattice(&self) -> &GramLattice {
        &self.lattice
    }

    fn glue_offset(&self, h: &GlueElement) -> CosetOffset {
        let e = h.decompose().expect("GlueElement values are members of H");
        let a1 = Rational::new(e.alpha1 as i64, 3);
        let a2 = Rational::new(e.alpha2 as i64, 3);
        let d = self.d4_holes[0].scale(e.beta3 as i64).add(&self.d4_holes[1].scale(e.beta4 as i64));
        CosetOffset::new(vec![a1.clone(), a1, a2.clone(), a2]).concat(&d).reduced()
    }
}

/// `A2⊕A2` on generators `u1..u4`; glue `h` sits at `Σ h_i u_i`.
#[derive(Debug, Clone)]
pub struct L4 {
    lattice: GramLattice,
}

impl L4 {
    pub fn new() -> Self {
        let a2 = GramLattice::a2();
        L4 { lattice: a2.direct_sum(&a2) }
    }
}

impl Default for L4 {
    fn default() -> Self {
        Self::new()
    }
}

impl GlueCarrier for L4 {
    fn lattice(&self) -> &GramLattice {
        &self.lattice
    }

    fn glue_offset(&self, h: &GlueElement) -> CosetOffset {
        h.as_offset()
    }
}

/// A vector of `L12`: glue class plus integer coordinates in `L8` and `L4`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct L12Vector {
    pub h: GlueElement,
    pub c8: [i64; 8],
    pub c4: [i64; 4],
}

/// `L8⊕L4` together with the 36 glue cosets `x8(h) ⊕ x4(h)`.
#[derive(Debug, Clone)]
pub struct GluedLattice {
    pub l8: L8,
    pub l4: L4,
    base: GramLattice,
    /// Minimal norm and count of nonzero vectors in each coset, by class.
    class_minima: Vec<(GlueElement, Depth)>,
}

/// One row of the short-vector table of `L12`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShortVectorRow {
    pub h: GlueElement,
    pub orbit_size: usize,
    pub norm: Rational,
    pub per_class: usize,
    pub total: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Densities {
    pub l8: Rational,
    pub l4: Rational,
    pub l12: Rational,
}

impl GluedLattice {
    /// Builds `L12` and scans every glue coset by direct 12-dimensional enumeration.
    /// Fails if any coset holds a nonzero vector of norm below 4 or an odd minimal norm.
    pub fn build() -> Result<Self> {
        let l8 = L8::new()?;
        let l4 = L4::new();
        let base = l8.lattice.direct_sum(&l4.lattice);
        let mut g = GluedLattice { l8, l4, base, class_minima: Vec::new() };
        let minima: Result<Vec<_>> = GlueElement::all()
            .into_par_iter()
            .map(|h| g.base.depth_and_count(&g.glue_offset(&h)).map(|d| (h, d)))
            .collect();
        g.class_minima = minima?;
        for (h, d) in &g.class_minima {
            if d.delta < Rational::from_int(4) {
                return Err(Error::Construction(format!("class {h} contains a vector of norm {}", d.delta)));
            }
            if !d.delta.is_integer() || !(&d.delta / &Rational::from_int(2)).is_integer() {
                return Err(Error::Construction(format!("class {h} has odd or fractional minimal norm {}", d.delta)));
            }
        }
        Ok(g)
    }

    pub fn base(&self) -> &GramLattice {
        &self.base
    }

    /// `x8(h) ⊕ x4(h)` in the 12 base coordinates.
    pub fn glue_offset(&self, h: &GlueElement) -> CosetOffset {
        self.l8.glue_offset(h).concat(&self.l4.glue_offset(h))
    }

    pub fn class_minima(&self) -> &[(GlueElement, Depth)] {
        &self.class_minima
    }

    pub fn class_minimum(&self, h: &GlueElement) -> &Depth {
        &self.class_minima.iter().find(|(g, _)| g == h).expect("every class is scanned").1
    }

    pub fn minimal_norm(&self) -> Rational {
        self.class_minima.iter().map(|(_, d)| d.delta.clone()).min().expect("36 classes")
    }

    pub fn kissing_number(&self) -> usize {
        let m = self.minimal_norm();
        self.class_minima.iter().filter(|(_, d)| d.delta == m).map(|(_, d)| d.tau).sum()
    }

    /// Rational coordinates of an `L12` vector in the base `L8⊕L4`.
    pub fn embed(&self, v: &L12Vector) -> Vec<Rational> {
        let off = self.glue_offset(&v.h);
        v.c8.iter().chain(&v.c4).zip(off.coords()).map(|(&c, o)| &Rational::from_int(c) + o).collect()
    }

    pub fn inner(&self, u: &L12Vector, v: &L12Vector) -> Rational {
        bilinear(self.base.gram(), &self.embed(u), &self.embed(v))
    }

    /// Per-class short-vector counts for the nonzero orbits, checked against the
    /// product `τ8(h)·τ4(h)` at norm `Δ8(h)+Δ4(h)`.
    pub fn table3(&self) -> Result<Vec<ShortVectorRow>> {
        let t8 = table_l8(&self.l8)?;
        let t4 = table_l4(&self.l4)?;
        let orbits = orbits()?;
        let mut rows = Vec::new();
        for ((orbit, r8), r4) in orbits.iter().zip(&t8).zip(&t4).skip(1) {
            let h = orbit.representative;
            let direct = self.class_minimum(&h);
            let product = Depth { delta: &r8.delta + &r4.delta, tau: r8.tau * r4.tau };
            if *direct != product {
                return Err(Error::Certificate(format!(
                    "class {h}: enumeration gives ({}, {}), product formula gives ({}, {})",
                    direct.delta, direct.tau, product.delta, product.tau
                )));
            }
            for member in &orbit.members {
                if self.class_minimum(member) != direct {
                    return Err(Error::Certificate(format!(
                        "class {member} differs from its orbit representative {h}"
                    )));
                }
            }
            rows.push(ShortVectorRow {
                h,
                orbit_size: orbit.members.len(),
                norm: direct.delta.clone(),
                per_class: direct.tau,
                total: direct.tau * orbit.members.len(),
            });
        }
        Ok(rows)
    }

    /// Center densities of `L8`, `L4` and `L12 = |H|·δ8·δ4`.
    pub fn densities(&self) -> Result<Densities> {
        let l8 = self.l8.lattice.center_density()?;
        let l4 = self.l4.lattice.center_density()?;
        let l12 = &(&Rational::from_int(GlueElement::all().len() as i64) * &l8) * &l4;
        Ok(Densities { l8, l4, l12 })
    }

    /// A ℤ-basis of `L12`, as rows of rational base coordinates: the Hermite
    /// normal form of the base generators plus glue vectors for `h1..h4`.
    pub fn basis(&self) -> Result<Vec<Vec<Rational>>> {
        let n = self.base.dim();
        let six = Rational::from_int(6);
        let mut rows: Vec<Vec<i128>> = (0..n).map(|i| (0..n).map(|j| if i == j { 6 } else { 0 }).collect()).collect();
        for h in GlueElement::generators() {
            let off = self.glue_offset(&h);
            rows.push(
                off.coords().iter().map(|x| (x * &six).floor_i64().map(|v| v as i128)).collect::<Result<Vec<_>>>()?,
            );
        }
        let hnf = hermite_rows(rows, n)?;
        Ok(hnf.iter().map(|r| r.iter().map(|&x| Rational::new(x as i64, 6)).collect()).collect())
    }

    /// Integer Gram matrix of [`GluedLattice::basis`]; its determinant must be
    /// `det(L8)·det(L4)/|H|² = 1024`.
    pub fn export_gram(&self) -> Result<Vec<Vec<i64>>> {
        let basis = self.basis()?;
        let mut gram = Vec::new();
        for a in &basis {
            let mut row = Vec::new();
            for b in &basis {
                let x = bilinear(self.base.gram(), a, b);
                if !x.is_integer() {
                    return Err(Error::Certificate(format!("non-integral inner product {x} in L12 basis")));
                }
                row.push(x.floor_i64()?);
            }
            gram.push(row);
        }
        let det = determinant(
            &gram.iter().map(|r| r.iter().map(|&x| Rational::from_int(x)).collect()).collect::<Matrix<Rational>>(),
        );
        let h = GlueElement::all().len() as i64;
        let expected = &self.base.determinant() / &Rational::from_int(h * h);
        if det != expected {
            return Err(Error::Certificate(format!("L12 Gram determinant {det}, expected {expected}")));
        }
        Ok(gram)
    }
}

/// Row-style Hermite normal form over ℤ; returns the `rank` nonzero rows.
fn hermite_rows(mut rows: Vec<Vec<i128>>, ncols: usize) -> Result<Vec<Vec<i128>>> {
    let overflow = || Error::Overflow("Hermite normal form entry".into());
    let mut pivot = 0;
    for col in 0..ncols {
        let mut placed = false;
        loop {
            let nonzero: Vec<usize> = (pivot..rows.len()).filter(|&r| rows[r][col] != 0).collect();
            if nonzero.len() <= 1 {
                if let Some(&r) = nonzero.first() {
                    rows.swap(pivot, r);
                    if rows[pivot][col] < 0 {
                        rows[pivot].iter_mut().for_each(|x| *x = -*x);
                    }
                    pivot += 1;
                    placed = true;
                }
                break;
            }
            let best = *nonzero.iter().min_by_key(|&&r| rows[r][col].abs()).expect("nonempty");
            for &r in &nonzero {
                if r != best {
                    let f = rows[r][col].div_euclid(rows[best][col]);
                    sub_multiple(&mut rows, r, best, f).ok_or_else(overflow)?;
                }
            }
        }
        if placed {
            // entries above the pivot into [0, pivot value)
            let p = pivot - 1;
            for r in 0..p {
                let f = rows[r][col].div_euclid(rows[p][col]);
                if f != 0 {
                    sub_multiple(&mut rows, r, p, f).ok_or_else(overflow)?;
                }
            }
        }
    }
    rows.truncate(pivot);
    Ok(rows)
}

/// `rows[target] -= f·rows[source]`; `None` on overflow.
fn sub_multiple(rows: &mut [Vec<i128>], target: usize, source: usize, f: i128) -> Option<()> {
    for c in 0..rows[target].len() {
        let t = rows[source][c].checked_mul(f)?;
        rows[target][c] = rows[target][c].checked_sub(t)?;
    }
    Some(())
}
