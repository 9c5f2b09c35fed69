//! The glue group `H ≅ ℤ3×ℤ3×ℤ2×ℤ2` of holes of `A2⊕A2⊕D4`, written as
//! 4-vectors modulo 1, together with the integer matrices that act on it by
//! right multiplication.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{q, Rational};
use crate::lattice::{CosetOffset, Depth, GramLattice};

/// An element of `H`: four entries in `{0, 1/6, …, 5/6}`, stored as sixths.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GlueElement([u8; 4]);

impl GlueElement {
    pub const ZERO: GlueElement = GlueElement([0; 4]);

    /// Reduces each entry mod 6. Does not check membership in `H`.
    pub fn from_sixths(s: [i64; 4]) -> Self {
        GlueElement(s.map(|x| x.rem_euclid(6) as u8))
    }

    pub fn sixths(&self) -> [u8; 4] {
        self.0
    }

    /// From rational entries; every denominator must divide 6 and the result must lie in `H`.
    pub fn from_rationals(v: &[Rational]) -> Result<Self> {
        if v.len() != 4 {
            return Err(Error::DimensionMismatch { expected: 4, found: v.len() });
        }
        let mut s = [0i64; 4];
        for (i, x) in v.iter().enumerate() {
            let six = x * &Rational::from_int(6);
            if !six.is_integer() {
                return Err(Error::NotInGlueGroup(format!("{v:?}")));
            }
            s[i] = six.floor_i64()?;
        }
        let h = Self::from_sixths(s);
        h.decompose()?;
        Ok(h)
    }

    pub fn h1() -> Self {
        GlueElement([2, 2, 2, 2])
    }
    pub fn h2() -> Self {
        GlueElement([2, 2, 4, 4])
    }
    pub fn h3() -> Self {
        GlueElement([3, 0, 3, 0])
    }
    pub fn h4() -> Self {
        GlueElement([0, 3, 0, 3])
    }

    pub fn generators() -> [GlueElement; 4] {
        [Self::h1(), Self::h2(), Self::h3(), Self::h4()]
    }

    pub fn add(&self, other: &GlueElement) -> Self {
        GlueElement(std::array::from_fn(|i| (self.0[i] + other.0[i]) % 6))
    }

    pub fn neg(&self) -> Self {
        GlueElement(self.0.map(|x| (6 - x) % 6))
    }

    pub fn times(&self, k: i64) -> Self {
        Self::from_sixths(self.0.map(|x| x as i64 * k))
    }

    pub fn is_zero(&self) -> bool {
        self.0 == [0; 4]
    }

    /// Entries as rationals in `[0, 1)`.
    pub fn coords(&self) -> Vec<Rational> {
        self.0.iter().map(|&x| q(x as i64, 6)).collect()
    }

    pub fn as_offset(&self) -> CosetOffset {
        CosetOffset::new(self.coords())
    }

    /// All 36 elements, generated from `h1..h4` and sorted.
    pub fn all() -> Vec<GlueElement> {
        let mut v: Vec<GlueElement> = GeneratorExponents::all().map(|e| e.reconstruct()).collect();
        v.sort();
        v
    }

    /// The exponents `(α1, α2, β3, β4)` with `h = α1 h1 + α2 h2 + β3 h3 + β4 h4`.
    ///
    /// The thirds parts of entries 1 and 3 give `α1+α2` and `α1+2α2` mod 3; the
    /// halves parts of entries 1 and 2 give `β3` and `β4`.
    pub fn decompose(&self) -> Result<GeneratorExponents> {
        let thirds = self.0.map(|n| (2 * n) % 3);
        let halves = self.0.map(|n| n % 2);
        if thirds[0] != thirds[1] || thirds[2] != thirds[3] || halves[0] != halves[2] || halves[1] != halves[3] {
            return Err(Error::NotInGlueGroup(self.to_string()));
        }
        let (a, b) = (thirds[0], thirds[2]);
        let alpha2 = (b + 3 - a) % 3;
        let alpha1 = (2 * a + 3 - b) % 3;
        Ok(GeneratorExponents { alpha1, alpha2, beta3: halves[0], beta4: halves[1] })
    }

    /// Order of the element in `H` (divides 6).
    pub fn order(&self) -> u8 {
        (1..=6).find(|&k| self.times(k as i64).is_zero()).expect("order divides 6")
    }
}

impl fmt::Display for GlueElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords().iter().map(|r| r.to_string()).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

impl Serialize for GlueElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let parts: Vec<String> = self.coords().iter().map(|r| r.to_string()).collect();
        parts.serialize(s)
    }
}

/// Coefficients of an element of `H` in the generators `h1, h2` (mod 3) and `h3, h4` (mod 2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneratorExponents {
    pub alpha1: u8,
    pub alpha2: u8,
    pub beta3: u8,
    pub beta4: u8,
}

impl GeneratorExponents {
    pub fn new(alpha1: u8, alpha2: u8, beta3: u8, beta4: u8) -> Self {
        GeneratorExponents { alpha1: alpha1 % 3, alpha2: alpha2 % 3, beta3: beta3 % 2, beta4: beta4 % 2 }
    }

    pub fn all() -> impl Iterator<Item = GeneratorExponents> {
        (0..3u8).flat_map(|a1| {
            (0..3u8).flat_map(move |a2| {
                (0..2u8).flat_map(move |b3| (0..2u8).map(move |b4| GeneratorExponents::new(a1, a2, b3, b4)))
            })
        })
    }

    pub fn reconstruct(&self) -> GlueElement {
        GlueElement::h1()
            .times(self.alpha1 as i64)
            .add(&GlueElement::h2().times(self.alpha2 as i64))
            .add(&GlueElement::h3().times(self.beta3 as i64))
            .add(&GlueElement::h4().times(self.beta4 as i64))
    }
}

/// A 4×4 integer matrix acting on glue by right multiplication (and on the
/// generators of `L4` by left multiplication).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AutMatrix {
    pub m: [[i64; 4]; 4],
    pub name: String,
}

impl AutMatrix {
    pub fn new(name: impl Into<String>, m: [[i64; 4]; 4]) -> Self {
        AutMatrix { m, name: name.into() }
    }

    pub fn identity() -> Self {
        Self::new("1", std::array::from_fn(|i| std::array::from_fn(|j| (i == j) as i64)))
    }

    /// Swaps the sign of the second `A2` pair.
    pub fn sigma() -> Self {
        Self::new("sigma", [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]])
    }

    pub fn rho2() -> Self {
        Self::new("rho2", [[0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0]])
    }

    pub fn rho3() -> Self {
        Self::new("rho3", [[0, -1, 0, 0], [1, -1, 0, 0], [0, 0, 0, -1], [0, 0, 1, -1]])
    }

    pub fn rho4() -> Self {
        Self::new("rho4", [[0, 0, -1, 0], [0, 0, 0, -1], [1, 0, 0, 0], [0, 1, 0, 0]])
    }

    /// Matrix product `self · other`, named by the word.
    pub fn mul(&self, other: &AutMatrix) -> AutMatrix {
        let m = std::array::from_fn(|i| std::array::from_fn(|j| (0..4).map(|k| self.m[i][k] * other.m[k][j]).sum()));
        let name = match (self.name.as_str(), other.name.as_str()) {
            ("1", n) | (n, "1") => n.to_string(),
            (a, b) => format!("{a}*{b}"),
        };
        AutMatrix { m, name }
    }

    /// `h·M mod 1`; errors if the image leaves `H`.
    pub fn act(&self, h: &GlueElement) -> Result<GlueElement> {
        let s = h.sixths();
        let img = GlueElement::from_sixths(std::array::from_fn(|j| (0..4).map(|i| s[i] as i64 * self.m[i][j]).sum()));
        img.decompose()
            .map_err(|_| Error::Construction(format!("{} maps {} to {}, outside the glue group", self.name, h, img)))?;
        Ok(img)
    }

    /// Row vector times matrix over the rationals.
    pub fn apply_row(&self, v: &[Rational]) -> Vec<Rational> {
        (0..4).map(|j| (0..4).map(|i| &v[i] * &Rational::from_int(self.m[i][j])).sum()).collect()
    }
}

/// Closure of `gens` under multiplication, in breadth-first discovery order
/// starting from the identity.
pub fn generate_group(gens: &[AutMatrix]) -> Vec<AutMatrix> {
    let mut seen = BTreeSet::new();
    let id = AutMatrix::identity();
    seen.insert(id.m);
    let mut out = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for s in gens {
            let p = g.mul(s);
            if seen.insert(p.m) {
                out.push(p.clone());
                queue.push_back(p);
            }
        }
    }
    out
}

pub fn aut_generators() -> Vec<AutMatrix> {
    vec![AutMatrix::sigma(), AutMatrix::rho2(), AutMatrix::rho3(), AutMatrix::rho4()]
}

/// The group generated by σ, ρ2, ρ3, ρ4 (48 elements).
pub fn aut_group() -> Vec<AutMatrix> {
    generate_group(&aut_generators())
}

/// Reference orbit representatives, in table row order.
pub fn table_representatives() -> [GlueElement; 6] {
    [
        GlueElement([0, 0, 0, 0]),
        GlueElement([3, 0, 3, 0]),
        GlueElement([2, 2, 2, 2]),
        GlueElement([2, 2, 0, 0]),
        GlueElement([5, 2, 5, 2]),
        GlueElement([5, 2, 3, 0]),
    ]
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Orbit {
    pub representative: GlueElement,
    /// Representative first, then the rest in lexicographic order.
    pub members: Vec<GlueElement>,
}

/// Partition of `H` into orbits of [`aut_group`], ordered like the tables.
pub fn orbits() -> Result<Vec<Orbit>> {
    let gens = aut_generators();
    let mut assigned: BTreeMap<GlueElement, usize> = BTreeMap::new();
    let mut raw: Vec<BTreeSet<GlueElement>> = Vec::new();
    for h in GlueElement::all() {
        if assigned.contains_key(&h) {
            continue;
        }
        let mut orbit = BTreeSet::from([h]);
        let mut stack = vec![h];
        while let Some(x) = stack.pop() {
            for g in &gens {
                let y = g.act(&x)?;
                if orbit.insert(y) {
                    stack.push(y);
                }
            }
        }
        for x in &orbit {
            assigned.insert(*x, raw.len());
        }
        raw.push(orbit);
    }
    let reps = table_representatives();
    let mut out: Vec<Orbit> = Vec::new();
    for rep in reps {
        let idx = assigned[&rep];
        if out.iter().any(|o| assigned[&o.representative] == idx) {
            return Err(Error::Construction(format!("table representatives share the orbit of {rep}")));
        }
        let mut members = vec![rep];
        members.extend(raw[idx].iter().filter(|&&x| x != rep));
        out.push(Orbit { representative: rep, members });
    }
    if out.len() != raw.len() {
        return Err(Error::Construction(format!("expected 6 orbits, found {}", raw.len())));
    }
    Ok(out)
}

/// A lattice carrying a glue embedding of `H`.
pub trait GlueCarrier {
    fn lattice(&self) -> &GramLattice;
    fn glue_offset(&self, h: &GlueElement) -> CosetOffset;

    fn glue_depth(&self, h: &GlueElement) -> Result<Depth> {
        self.lattice().depth_and_count(&self.glue_offset(h))
    }
}

/// One row of an orbit table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GlueRow {
    pub h: GlueElement,
    pub orbit_size: usize,
    pub delta: Rational,
    pub tau: usize,
}

/// `(sixths, orbit size, Δ as (num, den), τ)`.
type Reference = [([u8; 4], usize, (i64, i64), usize); 6];

/// Reference rows: orbit size, Δ8, τ8.
pub const TABLE_L8: Reference = [
    ([0, 0, 0, 0], 1, (4, 1), 36),
    ([3, 0, 3, 0], 3, (2, 1), 8),
    ([2, 2, 2, 2], 4, (4, 3), 3),
    ([2, 2, 0, 0], 4, (8, 3), 9),
    ([5, 2, 5, 2], 12, (10, 3), 24),
    ([5, 2, 3, 0], 12, (14, 3), 72),
];

/// Reference rows: orbit size, Δ4, τ4.
pub const TABLE_L4: Reference = [
    ([0, 0, 0, 0], 1, (4, 1), 12),
    ([3, 0, 3, 0], 3, (2, 1), 4),
    ([2, 2, 2, 2], 4, (8, 3), 9),
    ([2, 2, 0, 0], 4, (4, 3), 3),
    ([5, 2, 5, 2], 12, (2, 3), 1),
    ([5, 2, 3, 0], 12, (4, 3), 2),
];

fn orbit_table(carrier: &dyn GlueCarrier, reference: &Reference, table: &'static str) -> Result<Vec<GlueRow>> {
    let mut rows = Vec::new();
    for (orbit, (sixths, size, (dn, dd), tau)) in orbits()?.iter().zip(reference) {
        let h = orbit.representative;
        let d = carrier.glue_depth(&h)?;
        let row = GlueRow { h, orbit_size: orbit.members.len(), delta: d.delta, tau: d.tau };
        let expected = GlueRow { h: GlueElement(*sixths), orbit_size: *size, delta: q(*dn, *dd), tau: *tau };
        if row != expected {
            return Err(Error::TableMismatch {
                table,
                row: h.to_string(),
                expected: format!("({}, {}, {})", expected.orbit_size, expected.delta, expected.tau),
                found: format!("({}, {}, {})", row.orbit_size, row.delta, row.tau),
            });
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Orbit table of glue in `L8`, recomputed and checked against the reference rows.
pub fn table_l8(l8: &dyn GlueCarrier) -> Result<Vec<GlueRow>> {
    orbit_table(l8, &TABLE_L8, "L8 table")
}

/// Orbit table of glue in `L4`, recomputed and checked against the reference rows.
pub fn table_l4(l4: &dyn GlueCarrier) -> Result<Vec<GlueRow>> {
    orbit_table(l4, &TABLE_L4, "L4 table")
}
