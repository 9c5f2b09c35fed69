use std::sync::OnceLock;

use latglue::exactnum::{q, ExactScalar, Rational};
use latglue::project::Plane;
use latglue::windowq::{forbidden_partners, generate_patch, verify_packing, Location, PackedPoint, WindowSpec};
use proptest::prelude::*;

fn generic_window() -> WindowSpec {
    let c: Vec<ExactScalar> = ["1/7", "-2/5+1/9√3", "1/11", "3/13"].iter().map(|s| s.parse().unwrap()).collect();
    WindowSpec::new(c).unwrap()
}

fn generic_patch() -> &'static (WindowSpec, Vec<PackedPoint>) {
    static P: OnceLock<(WindowSpec, Vec<PackedPoint>)> = OnceLock::new();
    P.get_or_init(|| {
        let w = generic_window();
        let p = generate_patch(&w, 6).unwrap();
        (w, p)
    })
}

fn singular_patch() -> &'static (WindowSpec, Vec<PackedPoint>) {
    static P: OnceLock<(WindowSpec, Vec<PackedPoint>)> = OnceLock::new();
    P.get_or_init(|| {
        let w = WindowSpec::singular().unwrap();
        let p = generate_patch(&w, 6).unwrap();
        (w, p)
    })
}

fn difference(p: &PackedPoint, r: &PackedPoint) -> Vec<Rational> {
    p.x4().iter().zip(r.x4()).map(|(a, b)| a - &b).collect()
}

fn small_scalar() -> impl Strategy<Value = ExactScalar> {
    (-3i64..=3, 1i64..=7, -3i64..=3, 1i64..=7).prop_map(|(a, b, c, d)| ExactScalar::new(q(a, b), q(c, d)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    /// Random admitted pairs never reach a translate of the window: the
    /// ⊥-difference has `z·f < f·f` for every forbidden `f`.
    #[test]
    fn translates_are_disjoint_for_a_generic_centering(i in 0usize..100_000, j in 0usize..100_000) {
        let (w, patch) = generic_patch();
        let (p, r) = (&patch[i % patch.len()], &patch[j % patch.len()]);
        let z = difference(p, r);
        for f in &w.forbidden().vectors {
            let ff = w.grams().norm(Plane::Perp, f);
            prop_assert_ne!(w.grams().inner(Plane::Perp, &z, f), ff);
        }
    }

    /// At singular centering fibers sit on the boundary; differences still
    /// avoid the forbidden set.
    #[test]
    fn singular_differences_are_never_forbidden(i in 0usize..100_000, j in 0usize..100_000) {
        let (w, patch) = singular_patch();
        let z = difference(&patch[i % patch.len()], &patch[j % patch.len()]);
        prop_assert!(!w.forbidden().contains(&z));
    }
}

/// The two fibers on the opposite included vertices 0 and 6 of the singular
/// window differ by a diameter, which meets the level `z·f = f·f` of `f_0`
/// without being forbidden: the dot-product form of disjointness needs a
/// centering that puts no fiber on the boundary.
#[test]
fn opposite_vertices_touch_the_translate_level() {
    let (w, patch) = singular_patch();
    let at = |k: usize| {
        patch
            .iter()
            .find(|p| w.locate(&p.x4()) == Location::Vertex(k))
            .unwrap_or_else(|| panic!("no fiber at vertex {k}"))
    };
    let z = difference(at(0), at(6));
    let f = &w.forbidden().vectors[0];
    assert_eq!(w.grams().inner(Plane::Perp, &z, f), w.grams().norm(Plane::Perp, f));
    assert!(!w.forbidden().contains(&z));
    assert_eq!(w.grams().norm(Plane::Perp, &z), w.diameter_sq());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    /// Minimum squared distance 4, attained, and no forbidden pair, for random centerings.
    #[test]
    fn random_centerings_give_a_packing(c in proptest::collection::vec(small_scalar(), 4)) {
        let w = WindowSpec::new(c).unwrap();
        let patch = generate_patch(&w, 3).unwrap();
        prop_assume!(patch.len() > 1);
        let all: Vec<usize> = (0..patch.len()).collect();
        prop_assert!(forbidden_partners(&w, &patch, &all).is_empty());
        let cert = verify_packing(&w, &patch, &q(4, 1)).unwrap();
        prop_assert_eq!(cert.min_dist_sq, ExactScalar::from_int(4));
        prop_assert_eq!(cert.intra_fiber, q(4, 1));
    }
}
