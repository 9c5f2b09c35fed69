//! Lattices given by a rational Gram matrix, with exact bounded-norm
//! enumeration (Fincke–Pohst over an LDLᵀ factorization, no square roots),
//! coset depths Δ and contact counts τ.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::exactnum::{bilinear, determinant, inverse, ldlt, Ldlt, Matrix, Rational};

/// Default maximum number of points a single enumeration may return.
pub const DEFAULT_ENUMERATION_CAP: usize = 10_000_000;

/// The enumeration cap: `LATGLUE_CAP` when set to a positive integer, else the default.
pub fn enumeration_cap() -> usize {
    static CAP: OnceLock<usize> = OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var("LATGLUE_CAP")
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .filter(|&c| c > 0)
            .unwrap_or(DEFAULT_ENUMERATION_CAP)
    })
}

/// Integer coordinates of a lattice vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePoint(pub Vec<i64>);

impl LatticePoint {
    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    /// `self + offset` as a rational vector.
    pub fn shifted(&self, offset: &CosetOffset) -> Vec<Rational> {
        self.0.iter().zip(offset.coords()).map(|(&c, o)| &Rational::from_int(c) + o).collect()
    }
}

/// A rational translate `x` naming the coset `x + Λ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CosetOffset(Vec<Rational>);

impl CosetOffset {
    pub fn new(coords: Vec<Rational>) -> Self {
        CosetOffset(coords)
    }

    pub fn zero(n: usize) -> Self {
        CosetOffset(vec![Rational::zero(); n])
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Canonical representative with every entry in `[0, 1)`.
    pub fn reduced(&self) -> Self {
        CosetOffset(self.0.iter().map(Rational::fract).collect())
    }

    pub fn is_lattice(&self) -> bool {
        self.0.iter().all(Rational::is_integer)
    }

    pub fn add(&self, other: &CosetOffset) -> Self {
        CosetOffset(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, k: i64) -> Self {
        let k = Rational::from_int(k);
        CosetOffset(self.0.iter().map(|a| a * &k).collect())
    }

    pub fn concat(&self, other: &CosetOffset) -> Self {
        CosetOffset(self.0.iter().chain(&other.0).cloned().collect())
    }
}

impl fmt::Display for CosetOffset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|r| r.to_string()).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

/// Minimum norm over a coset and the number of vectors attaining it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Depth {
    pub delta: Rational,
    pub tau: usize,
}

#[derive(Debug, Clone)]
pub struct GramLattice {
    label: String,
    gram: Matrix<Rational>,
    factor: Ldlt<Rational>,
    cap: usize,
    minimum: OnceLock<Depth>,
}

impl GramLattice {
    /// Checks symmetry and positive definiteness.
    pub fn new(label: impl Into<String>, gram: Matrix<Rational>) -> Result<Self> {
        let label = label.into();
        let factor = ldlt(&gram)?;
        if !factor.is_positive_definite() {
            return Err(Error::NotPositiveDefinite(label));
        }
        Ok(GramLattice { label, gram, factor, cap: enumeration_cap(), minimum: OnceLock::new() })
    }

    pub fn from_ints(label: impl Into<String>, gram: &[&[i64]]) -> Result<Self> {
        let g = gram.iter().map(|r| r.iter().map(|&x| Rational::from_int(x)).collect()).collect();
        Self::new(label, g)
    }

    /// A2 with basis vectors of norm 4 at 60°.
    pub fn a2() -> Self {
        Self::from_ints("A2", &[&[4, 2], &[2, 4]]).expect("A2 Gram is positive definite")
    }

    /// D4 scaled to minimal norm 4 (twice the Cartan matrix, node 2 central).
    pub fn d4() -> Self {
        Self::from_ints("D4", &[&[4, -2, 0, 0], &[-2, 4, -2, -2], &[0, -2, 4, 0], &[0, -2, 0, 4]])
            .expect("D4 Gram is positive definite")
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dim(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &Matrix<Rational> {
        &self.gram
    }

    fn check_dim(&self, n: usize) -> Result<()> {
        if n != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: n });
        }
        Ok(())
    }

    /// `vᵀ G v`.
    pub fn norm(&self, v: &[Rational]) -> Result<Rational> {
        self.check_dim(v.len())?;
        Ok(bilinear(&self.gram, v, v))
    }

    pub fn inner(&self, u: &[Rational], v: &[Rational]) -> Result<Rational> {
        self.check_dim(u.len())?;
        self.check_dim(v.len())?;
        Ok(bilinear(&self.gram, u, v))
    }

    pub fn determinant(&self) -> Rational {
        determinant(&self.gram)
    }

    /// All integer `y` with `norm(y + offset) ≤ bound`, sorted lexicographically.
    pub fn enumerate_up_to(&self, offset: &CosetOffset, bound: &Rational) -> Result<Vec<LatticePoint>> {
        self.check_dim(offset.dim())?;
        if bound.signum() == std::cmp::Ordering::Less {
            return Err(Error::NegativeBound(bound.to_string()));
        }
        let n = self.dim();
        let mut walk = Walk {
            l: &self.factor.l,
            d: &self.factor.d,
            offset: offset.coords(),
            x: vec![0; n],
            shifted: vec![Rational::zero(); n],
            out: Vec::new(),
            cap: self.cap,
        };
        walk.level(n - 1, bound.clone())?;
        let mut out = walk.out;
        out.sort();
        Ok(out)
    }

    /// Δ(offset) and τ(offset): the least nonzero norm of `y + offset` and its multiplicity.
    /// For a lattice offset this is the minimal norm and the kissing number.
    pub fn depth_and_count(&self, offset: &CosetOffset) -> Result<Depth> {
        self.check_dim(offset.dim())?;
        let frac = offset.reduced();
        let bound = if frac.is_lattice() {
            (0..self.dim()).map(|i| self.gram[i][i].clone()).min().expect("dimension ≥ 1")
        } else {
            self.norm(frac.coords())?
        };
        let mut best: Option<Depth> = None;
        for p in self.enumerate_up_to(offset, &bound)? {
            let v = p.shifted(offset);
            if v.iter().all(Rational::is_zero) {
                continue;
            }
            let nv = bilinear(&self.gram, &v, &v);
            match &mut best {
                Some(b) if nv == b.delta => b.tau += 1,
                Some(b) if nv > b.delta => {}
                _ => best = Some(Depth { delta: nv, tau: 1 }),
            }
        }
        best.ok_or_else(|| Error::Construction(format!("empty depth enumeration in {}", self.label)))
    }

    /// Minimal norm and kissing number (cached).
    pub fn minimum(&self) -> Result<Depth> {
        if let Some(m) = self.minimum.get() {
            return Ok(m.clone());
        }
        let m = self.depth_and_count(&CosetOffset::zero(self.dim()))?;
        Ok(self.minimum.get_or_init(|| m).clone())
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &GramLattice) -> GramLattice {
        let (n, m) = (self.dim(), other.dim());
        let mut g = vec![vec![Rational::zero(); n + m]; n + m];
        for i in 0..n {
            for j in 0..n {
                g[i][j] = self.gram[i][j].clone();
            }
        }
        for i in 0..m {
            for j in 0..m {
                g[n + i][n + j] = other.gram[i][j].clone();
            }
        }
        GramLattice::new(format!("{}⊕{}", self.label, other.label), g)
            .expect("direct sum of positive-definite forms")
            .with_cap(self.cap.min(other.cap))
    }

    /// Center density `ρⁿ/√det` with `ρ` half the minimal distance, when it is rational.
    pub fn center_density(&self) -> Result<Rational> {
        let rho_sq = &self.minimum()?.delta / &Rational::from_int(4);
        let sq = &rho_sq.pow(self.dim() as u32) / &self.determinant();
        sq.sqrt_exact().ok_or_else(|| Error::Construction(format!("center density of {} is irrational", self.label)))
    }

    /// The dual classes of this lattice rescaled to minimal norm 2, as coordinate
    /// offsets reduced into `[0,1)`; zero first, the rest sorted lexicographically.
    /// For a root lattice these are its holes (glue classes).
    pub fn root_glue_classes(&self) -> Result<Vec<CosetOffset>> {
        let scale = &Rational::from_int(2) / &self.minimum()?.delta;
        let scaled: Matrix<Rational> = self.gram.iter().map(|r| r.iter().map(|x| x * &scale).collect()).collect();
        let inv = inverse(&scaled).ok_or_else(|| Error::NotPositiveDefinite(self.label.clone()))?;
        let n = self.dim();
        let gens: Vec<CosetOffset> =
            (0..n).map(|j| CosetOffset((0..n).map(|i| inv[i][j].clone()).collect()).reduced()).collect();
        let mut seen = BTreeSet::new();
        let zero = CosetOffset::zero(n);
        seen.insert(zero.clone());
        let mut frontier = vec![zero];
        while let Some(c) = frontier.pop() {
            for g in &gens {
                let s = c.add(g).reduced();
                if seen.insert(s.clone()) {
                    frontier.push(s);
                }
            }
        }
        Ok(seen.into_iter().collect())
    }
}

struct Walk<'a> {
    l: &'a Matrix<Rational>,
    d: &'a [Rational],
    offset: &'a [Rational],
    x: Vec<i64>,
    shifted: Vec<Rational>,
    out: Vec<LatticePoint>,
    cap: usize,
}

impl Walk<'_> {
    // Coordinate k contributes d_k (y_k + Σ_{i>k} l_ik y_i)² with y = x + offset.
    fn level(&mut self, k: usize, budget: Rational) -> Result<()> {
        let n = self.x.len();
        let mut center = -&self.offset[k];
        for i in k + 1..n {
            center = &center - &(&self.l[i][k] * &self.shifted[i]);
        }
        let start = center.floor_i64()?;
        let dk = &self.d[k];
        let cost = |x: i64| {
            let t = &Rational::from_int(x) - &center;
            dk * &(&t * &t)
        };
        // walk down from floor(center), then up from floor(center)+1
        for dir in [-1i64, 1] {
            let mut x = if dir < 0 { start } else { start + 1 };
            loop {
                let c = cost(x);
                if c > budget {
                    break;
                }
                self.x[k] = x;
                self.shifted[k] = &Rational::from_int(x) + &self.offset[k];
                if k == 0 {
                    if self.out.len() >= self.cap {
                        return Err(Error::EnumerationCap { cap: self.cap });
                    }
                    self.out.push(LatticePoint(self.x.clone()));
                } else {
                    self.level(k - 1, &budget - &c)?;
                }
                x += dir;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::q;
    use proptest::prelude::*;

    fn off(v: &[(i64, i64)]) -> CosetOffset {
        CosetOffset::new(v.iter().map(|&(a, b)| q(a, b)).collect())
    }

    #[test]
    fn norms_in_a2() {
        let a2 = GramLattice::a2();
        assert_eq!(a2.norm(&[q(1, 1), q(0, 1)]).unwrap(), q(4, 1));
        assert_eq!(a2.norm(&[q(0, 1), q(0, 1)]).unwrap(), q(0, 1));
        assert_eq!(a2.norm(&[q(1, 3), q(1, 3)]).unwrap(), q(4, 3));
        assert!(matches!(a2.norm(&[q(1, 1)]), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn enumeration_counts() {
        let a2 = GramLattice::a2();
        assert_eq!(a2.enumerate_up_to(&CosetOffset::zero(2), &q(4, 1)).unwrap().len(), 7);
        assert_eq!(GramLattice::d4().enumerate_up_to(&CosetOffset::zero(4), &q(4, 1)).unwrap().len(), 25);
        assert_eq!(a2.enumerate_up_to(&off(&[(1, 3), (1, 3)]), &q(4, 3)).unwrap().len(), 3);
        assert!(matches!(a2.enumerate_up_to(&CosetOffset::zero(2), &q(-1, 1)), Err(Error::NegativeBound(_))));
    }

    #[test]
    fn enumeration_cap_is_reported() {
        let a2 = GramLattice::a2().with_cap(10);
        let err = a2.enumerate_up_to(&CosetOffset::zero(2), &q(100, 1)).unwrap_err();
        assert!(matches!(err, Error::EnumerationCap { cap: 10 }));
        assert!(err.to_string().contains("10"));
    }

    #[test]
    fn a2_family_depths() {
        let a2 = GramLattice::a2();
        assert_eq!(a2.depth_and_count(&off(&[(1, 2), (0, 1)])).unwrap(), Depth { delta: q(1, 1), tau: 2 });
        assert_eq!(a2.depth_and_count(&off(&[(1, 6), (1, 6)])).unwrap(), Depth { delta: q(1, 3), tau: 1 });
        assert_eq!(a2.depth_and_count(&off(&[(1, 3), (1, 3)])).unwrap(), Depth { delta: q(4, 3), tau: 3 });
        assert_eq!(a2.minimum().unwrap(), Depth { delta: q(4, 1), tau: 6 });
    }

    #[test]
    fn d4_holes_are_found_programmatically() {
        let d4 = GramLattice::d4();
        assert_eq!(d4.minimum().unwrap(), Depth { delta: q(4, 1), tau: 24 });
        let classes = d4.root_glue_classes().unwrap();
        assert_eq!(classes.len(), 4);
        assert!(classes[0].is_lattice());
        for c in &classes[1..] {
            assert_eq!(d4.depth_and_count(c).unwrap(), Depth { delta: q(2, 1), tau: 8 });
        }
        let a2 = GramLattice::a2().root_glue_classes().unwrap();
        assert_eq!(a2, vec![off(&[(0, 1), (0, 1)]), off(&[(1, 3), (1, 3)]), off(&[(2, 3), (2, 3)])]);
    }

    #[test]
    fn direct_sums() {
        let a2 = GramLattice::a2();
        let l4 = a2.direct_sum(&a2);
        let l8 = l4.direct_sum(&GramLattice::d4());
        assert_eq!(l4.dim(), 4);
        assert_eq!(l8.dim(), 8);
        assert_eq!(l4.minimum().unwrap(), Depth { delta: q(4, 1), tau: 12 });
        assert_eq!(l8.minimum().unwrap(), Depth { delta: q(4, 1), tau: 36 });
        assert_eq!(l8.center_density().unwrap(), q(1, 96));
        assert_eq!(l4.center_density().unwrap(), q(1, 12));
    }

    #[test]
    fn depth_is_additive_over_nonzero_direct_summands() {
        let a2 = GramLattice::a2();
        let d4 = GramLattice::d4();
        let sum = a2.direct_sum(&d4);
        for x in &a2.root_glue_classes().unwrap()[1..] {
            for y in &d4.root_glue_classes().unwrap()[1..] {
                let (dx, dy) = (a2.depth_and_count(x).unwrap(), d4.depth_and_count(y).unwrap());
                let dxy = sum.depth_and_count(&x.concat(y)).unwrap();
                assert_eq!(dxy.delta, &dx.delta + &dy.delta);
                assert_eq!(dxy.tau, dx.tau * dy.tau);
            }
        }
    }

    // Box search oracle: |y_i + o_i| ≤ sqrt(bound · (G⁻¹)_ii), rounded up to an integer radius.
    fn brute_force(l: &GramLattice, o: &CosetOffset, bound: &Rational) -> Vec<LatticePoint> {
        let n = l.dim();
        let inv = inverse(l.gram()).unwrap();
        let radius: Vec<i64> = (0..n)
            .map(|i| {
                let r2 = bound * &inv[i][i];
                let mut k = 0i64;
                while Rational::from_int(k * k) < r2 {
                    k += 1;
                }
                k
            })
            .collect();
        let lo: Vec<i64> = (0..n).map(|i| (-&o.coords()[i]).floor_i64().unwrap() - radius[i] - 1).collect();
        let hi: Vec<i64> = (0..n).map(|i| (-&o.coords()[i]).floor_i64().unwrap() + radius[i] + 1).collect();
        let mut out = Vec::new();
        let mut y = lo.clone();
        loop {
            let p = LatticePoint(y.clone());
            if l.norm(&p.shifted(o)).unwrap() <= *bound {
                out.push(p);
            }
            let mut i = 0;
            loop {
                if i == n {
                    out.sort();
                    return out;
                }
                y[i] += 1;
                if y[i] <= hi[i] {
                    break;
                }
                y[i] = lo[i];
                i += 1;
            }
        }
    }

    fn small_lattice() -> impl Strategy<Value = (GramLattice, CosetOffset, Rational)> {
        (1usize..=4)
            .prop_flat_map(|n| {
                (
                    proptest::collection::vec(proptest::collection::vec(-2i64..=2, n), n),
                    proptest::collection::vec(0i64..6, n),
                    1i64..=24,
                )
            })
            .prop_map(|(a, o, b)| {
                let n = a.len();
                let g: Matrix<Rational> = (0..n)
                    .map(|i| {
                        (0..n)
                            .map(|j| {
                                let s: i64 = (0..n).map(|k| a[k][i] * a[k][j]).sum();
                                Rational::from_int(s + if i == j { 1 } else { 0 })
                            })
                            .collect()
                    })
                    .collect();
                let lat = GramLattice::new("random", g).unwrap();
                let offset = CosetOffset::new(o.iter().map(|&x| q(x, 6)).collect());
                (lat, offset, q(b, 2))
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn enumeration_matches_box_search((lat, offset, bound) in small_lattice()) {
            prop_assert_eq!(lat.enumerate_up_to(&offset, &bound).unwrap(), brute_force(&lat, &offset, &bound));
        }
    }
}
