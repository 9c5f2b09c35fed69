use std::collections::BTreeMap;

use serde::Serialize;

use super::window::WindowSpec;
use crate::error::{Error, Result};
use crate::exactnum::{ExactScalar, Rational};
use crate::glue::{GlueCarrier, GlueElement};
use crate::laminate::{L4, L8};
use crate::project::Plane;

/// A point of `Q10` at squared distance 4 from the origin, as `(x8, x4)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContactPoint {
    pub h: GlueElement,
    pub x8: Vec<Rational>,
    pub x4: Vec<Rational>,
}

/// Contacts grouped by the fiber (`L4` part) they come from.
#[derive(Debug, Clone, Serialize)]
pub struct FiberContacts {
    pub h: GlueElement,
    pub x4: Vec<Rational>,
    pub n_par: ExactScalar,
    pub n_perp: ExactScalar,
    pub contacts: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct KissingConfiguration {
    pub count: usize,
    pub fibers: Vec<FiberContacts>,
    pub points: Vec<ContactPoint>,
    /// Cosines `(y_i·y_j)/4` over unordered pairs of distinct contacts,
    /// antipodal pairs (cosine −1) included.
    pub cosines: BTreeMap<ExactScalar, usize>,
}

impl KissingConfiguration {
    /// Cosine values other than −1.
    pub fn cosine_set(&self) -> Vec<ExactScalar> {
        let minus_one = ExactScalar::from_int(-1);
        self.cosines.keys().filter(|c| **c != minus_one).cloned().collect()
    }
}

/// The spheres of `Q10` touching the one at the origin, for a window
/// centered on the origin fiber.
///
/// A point `√2 x∥ + x8` is at squared distance `2 x∥·x∥ + x8·x8` from the
/// origin, so candidate fibers have `x∥·x∥ ≤ 2` and `x⊥` within the
/// circumradius, hence `x4·x4 ≤ 8/3`. Errors unless the count is 378.
pub fn kissing_configuration(w: &WindowSpec) -> Result<KissingConfiguration> {
    let cfg = contact_points(w)?;
    if cfg.count != 378 {
        return Err(Error::Certificate(format!("singular kissing number is {}, expected 378", cfg.count)));
    }
    Ok(cfg)
}

/// The contact census without the 378 check.
pub fn contact_points(w: &WindowSpec) -> Result<KissingConfiguration> {
    if w.centering().iter().any(|c| !c.is_zero()) {
        return Err(Error::InvalidArgument("the contact census needs the window centered on the origin fiber".into()));
    }
    let zero = vec![Rational::zero(); 4];
    if !w.contains(&zero) {
        return Err(Error::Construction("origin fiber is not admitted".into()));
    }
    let grams = w.grams();
    let l8 = L8::new()?;
    let l4 = L4::new();
    let four = Rational::from_int(4);
    let two = Rational::from_int(2);
    let mut fibers = Vec::new();
    let mut points = Vec::new();
    for h in GlueElement::all() {
        let off4 = l4.glue_offset(&h);
        let off8 = l8.glue_offset(&h);
        for p in l4.lattice().enumerate_up_to(&off4, &Rational::new(8, 3))? {
            let x4 = p.shifted(&off4);
            if !w.contains(&x4) {
                continue;
            }
            let (n_par, n_perp) = grams.split_norms(&x4);
            // x8·x8 is rational, so x∥·x∥ must be too
            let Some(np) = n_par.as_rational() else { continue };
            let rest = &four - &(&two * np);
            if rest.signum() == std::cmp::Ordering::Less {
                continue;
            }
            let mut contacts = 0;
            for q in l8.lattice().enumerate_up_to(&off8, &rest)? {
                let x8 = q.shifted(&off8);
                if l8.lattice().norm(&x8)? != rest {
                    continue;
                }
                if rest.is_zero() && x4.iter().all(Rational::is_zero) {
                    continue;
                }
                contacts += 1;
                points.push(ContactPoint { h, x8, x4: x4.clone() });
            }
            if contacts > 0 {
                fibers.push(FiberContacts { h, x4, n_par, n_perp, contacts });
            }
        }
    }
    let quarter = Rational::new(1, 4);
    let mut cosines = BTreeMap::new();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let (a, b) = (&points[i], &points[j]);
            let par = grams.inner(Plane::Par, &a.x4, &b.x4);
            let e8 = l8.lattice().inner(&a.x8, &b.x8)?;
            let dot = &(&par + &par) + &ExactScalar::rational(e8);
            *cosines.entry(dot.scale(&quarter)).or_insert(0) += 1;
        }
    }
    Ok(KissingConfiguration { count: points.len(), fibers, points, cosines })
}
