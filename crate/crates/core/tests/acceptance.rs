//! The acceptance suite: every criterion at its stated tolerance and time
//! limit, one PASS/FAIL line each. Runs without the libtest harness so the
//! lines are always printed; exits nonzero if any criterion fails.

use std::time::{Duration, Instant};

use latglue::exactnum::{determinant, q, qs, ExactScalar, Rational};
use latglue::glue::{table_l4, table_l8, GlueElement};
use latglue::laminate::GluedLattice;
use latglue::project::{lemma1_scan, minimal_split_census, table4, Plane};
use latglue::windowq::{
    boundary_layer, density_estimate, exact_density, extract_tiling, find_translation_symmetry, forbidden_partners,
    generate_patch, kissing_configuration, verify_packing, FaceKind, WindowSpec,
};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn rows(expected: &[([i64; 4], usize, (i64, i64), usize)], got: &[latglue::glue::GlueRow]) -> Result<(), String> {
    ensure(got.len() == expected.len(), || format!("{} rows", got.len()))?;
    for (g, (s, size, (dn, dd), tau)) in got.iter().zip(expected) {
        let e = (GlueElement::from_sixths(*s), *size, q(*dn, *dd), *tau);
        ensure((g.h, g.orbit_size, g.delta.clone(), g.tau) == e, || {
            format!("row {}: ({}, {}, {}), expected ({}, {}, {})", g.h, g.orbit_size, g.delta, g.tau, e.1, e.2, e.3)
        })?;
    }
    Ok(())
}

fn c1_table1() -> Check {
    let l12 = GluedLattice::build().map_err(err)?;
    let t = table_l8(&l12.l8).map_err(err)?;
    let expected = [
        ([0, 0, 0, 0], 1, (4, 1), 36),
        ([3, 0, 3, 0], 3, (2, 1), 8),
        ([2, 2, 2, 2], 4, (4, 3), 3),
        ([2, 2, 0, 0], 4, (8, 3), 9),
        ([5, 2, 5, 2], 12, (10, 3), 24),
        ([5, 2, 3, 0], 12, (14, 3), 72),
    ];
    rows(&expected, &t)?;
    Ok("(1,4,36) (3,2,8) (4,4/3,3) (4,8/3,9) (12,10/3,24) (12,14/3,72)".into())
}

fn c2_table2() -> Check {
    let l12 = GluedLattice::build().map_err(err)?;
    let t = table_l4(&l12.l4).map_err(err)?;
    let expected = [
        ([0, 0, 0, 0], 1, (4, 1), 12),
        ([3, 0, 3, 0], 3, (2, 1), 4),
        ([2, 2, 2, 2], 4, (8, 3), 9),
        ([2, 2, 0, 0], 4, (4, 3), 3),
        ([5, 2, 5, 2], 12, (2, 3), 1),
        ([5, 2, 3, 0], 12, (4, 3), 2),
    ];
    rows(&expected, &t)?;
    Ok("(1,4,12) (3,2,4) (4,8/3,9) (4,4/3,3) (12,2/3,1) (12,4/3,2)".into())
}

fn c3_l12() -> Check {
    let l12 = GluedLattice::build().map_err(err)?;
    ensure(l12.minimal_norm() == q(4, 1), || format!("minimal norm {}", l12.minimal_norm()))?;
    let t3 = l12.table3().map_err(err)?;
    let mut parts = vec![l12.class_minimum(&GlueElement::ZERO).tau];
    parts.extend(t3.iter().filter(|r| r.norm == q(4, 1)).map(|r| r.total));
    ensure(parts == [48, 96, 108, 108, 288], || format!("breakdown {parts:?}"))?;
    ensure(l12.kissing_number() == 648, || format!("kissing {}", l12.kissing_number()))?;
    let six: Vec<usize> = t3.iter().filter(|r| r.norm == q(6, 1)).map(|r| r.total).collect();
    ensure(six == [1728], || format!("norm-6 row {six:?}"))?;
    let d = l12.densities().map_err(err)?;
    ensure(d.l12 == q(1, 32), || format!("δ12 = {}", d.l12))?;
    let g: Vec<Vec<Rational>> =
        l12.export_gram().map_err(err)?.iter().map(|r| r.iter().map(|&v| Rational::from_int(v)).collect()).collect();
    let det = determinant(&g);
    ensure(det == q(1024, 1), || format!("Gram determinant {det}"))?;
    Ok("min 4, 648 = 48+96+108+108+288, norm-6 row 1728, δ12 1/32, det 1024".into())
}

fn c4_table4() -> Check {
    let l12 = GluedLattice::build().map_err(err)?;
    let t = table4(&minimal_split_census(&l12).map_err(err)?).map_err(err)?;
    // 2/√3 = (2/3)√3
    let expected = [
        (qs((4, 3), (0, 1)), qs((4, 3), (0, 1))),
        (qs((4, 3), (-2, 3)), qs((4, 3), (2, 3))),
        (qs((4, 3), (2, 3)), qs((4, 3), (-2, 3))),
    ];
    ensure(t.len() == 3, || format!("{} rows", t.len()))?;
    for (r, (a, b)) in t.iter().zip(&expected) {
        ensure(r.size == 12 && &r.n_par == a && &r.n_perp == b, || format!("row {r}"))?;
    }
    Ok(t.iter().map(|r| format!("({}, {})", r.n_par, r.n_perp)).collect::<Vec<_>>().join(" "))
}

fn c5_lemma() -> Check {
    let s = lemma1_scan().map_err(err)?;
    ensure(s.candidates > 0, || "no candidates".into())?;
    ensure(s.violations.is_empty(), || format!("{} violations, first {:?}", s.violations.len(), s.violations[0]))?;
    Ok(format!("{} candidates, all of norm 4", s.candidates))
}

fn c6_window() -> Check {
    let w = WindowSpec::singular().map_err(err)?;
    ensure(w.area() == ExactScalar::from_int(2), || format!("area {}", w.area()))?;
    let d = ExactScalar::rational(q(8, 3));
    ensure(w.diameter_sq() == d, || format!("diameter² {}", w.diameter_sq()))?;
    let admitted = w.vertices().iter().filter(|v| w.contains_exact(v)).count();
    ensure(admitted == 6, || format!("{admitted} vertices admitted"))?;
    let patch = generate_patch(&w, 10).map_err(err)?;
    let layer = boundary_layer(&w, &patch);
    ensure(!layer.is_empty(), || "empty boundary layer".into())?;
    let bad = forbidden_partners(&w, &patch, &layer);
    ensure(bad.is_empty(), || format!("forbidden pair {} / {}", patch[bad[0].0], patch[bad[0].1]))?;
    Ok(format!("area 2, diameter² 8/3, 6 vertices, {} boundary fibers of {} clean", layer.len(), patch.len()))
}

fn c7_theorem() -> Check {
    let w = WindowSpec::singular().map_err(err)?;
    let patch = generate_patch(&w, 8).map_err(err)?;
    ensure(patch.len() >= 300, || format!("only {} fibers", patch.len()))?;
    let cert = verify_packing(&w, &patch, &q(4, 1)).map_err(err)?;
    ensure(cert.min_dist_sq == ExactScalar::from_int(4), || format!("minimum {}", cert.min_dist_sq))?;
    ensure(!cert.witnesses.is_empty(), || "minimum between fibers not attained".into())?;
    Ok(format!("bound 8: {} fibers, min² 4 attained by {} fiber pairs", cert.fibers, cert.witnesses.len()))
}

fn c8_kissing() -> Check {
    let w = WindowSpec::singular().map_err(err)?;
    let k = kissing_configuration(&w).map_err(err)?;
    let mut counts: Vec<usize> = k.fibers.iter().map(|f| f.contacts).collect();
    counts.sort();
    let expected: Vec<usize> = [vec![9; 6], vec![24; 12], vec![36]].concat();
    ensure(counts == expected, || format!("per-fiber contacts {counts:?}"))?;
    ensure(k.count == 6 * 9 + 12 * 24 + 36, || format!("count {}", k.count))?;
    let plus = qs((1, 4), (1, 12));
    let minus = qs((1, 4), (-1, 12));
    let half = ExactScalar::rational(q(1, 2));
    let allowed =
        [ExactScalar::zero(), half.clone(), -half.clone(), plus.clone(), -plus.clone(), minus.clone(), -minus.clone()];
    let set = k.cosine_set();
    if let Some(c) = set.iter().find(|c| !allowed.contains(c)) {
        return Err(format!("cosine {c} outside the set"));
    }
    for m in [&half, &plus, &minus] {
        ensure(set.contains(m) || set.contains(&-m.clone()), || format!("magnitude {m} missing"))?;
    }
    Ok(format!("378 = 6·9 + 12·24 + 36, cosines {}", set.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")))
}

fn c9_density() -> Check {
    let w = WindowSpec::singular().map_err(err)?;
    let l12 = GluedLattice::build().map_err(err)?;
    let exact = exact_density(&w, &l12).map_err(err)?;
    ensure(exact == q(1, 32), || format!("formula gives {exact}"))?;
    let d = density_estimate(&w, 12).map_err(err)?;
    ensure(d.relative_error < 0.05, || format!("empirical {:.6}, error {:.4}", d.empirical, d.relative_error))?;
    let patch = generate_patch(&w, 12).map_err(err)?;
    if let Some(t) = find_translation_symmetry(&patch, 12, 12) {
        return Err(format!("translation {t:?} (sixths) maps the patch to itself"));
    }
    Ok(format!(
        "exact 1/32; bound 12: {:.6} from {} fibers (error {:.2}%); no translation symmetry",
        d.empirical,
        d.fibers,
        100.0 * d.relative_error
    ))
}

fn c10_tiling() -> Check {
    let w = WindowSpec::singular().map_err(err)?;
    let patch = generate_patch(&w, 12).map_err(err)?;
    let t = extract_tiling(&w, &patch, 12).map_err(err)?;
    for (a, b) in &t.edges {
        let z: Vec<Rational> = t.vertices[*a].x4().iter().zip(t.vertices[*b].x4()).map(|(x, y)| x - &y).collect();
        let n = w.grams().norm(Plane::Par, &z);
        ensure(n == t.edge_len_sq, || format!("edge of squared length {n}"))?;
    }
    let counts = t.face_counts();
    for k in [FaceKind::Triangle, FaceKind::Square, FaceKind::Rhomb30] {
        ensure(counts.get(&k).copied().unwrap_or(0) > 0, || format!("no {k:?} faces"))?;
    }
    ensure(!t.rings.is_empty(), || "no complete 12-point ring".into())?;
    Ok(format!(
        "edge² {}; {} triangles, {} squares, {} rhombs; {} complete rings",
        t.edge_len_sq,
        counts[&FaceKind::Triangle],
        counts[&FaceKind::Square],
        counts[&FaceKind::Rhomb30],
        t.rings.len()
    ))
}

fn main() {
    let secs = Duration::from_secs;
    let criteria: [(&str, fn() -> Check, Duration); 10] = [
        ("1 Table 1 (glue orbits in L8)", c1_table1, secs(10)),
        ("2 Table 2 (glue orbits in L4)", c2_table2, secs(10)),
        ("3 L12 certificates", c3_l12, secs(60)),
        ("4 Table 4 (minimal splits)", c4_table4, Duration::MAX),
        ("5 minimal-vector lemma scan", c5_lemma, secs(120)),
        ("6 window", c6_window, Duration::MAX),
        ("7 packing minimum distance", c7_theorem, secs(120)),
        ("8 singular kissing configuration", c8_kissing, Duration::MAX),
        ("9 density", c9_density, Duration::MAX),
        ("10 tiling", c10_tiling, secs(120)),
    ];
    let mut failed = 0;
    for (name, check, limit) in criteria {
        let start = Instant::now();
        let result = check();
        let took = start.elapsed();
        let line = match result {
            Ok(detail) if took <= limit => format!("PASS  {name}: {detail} [{:.2}s]", took.as_secs_f64()),
            Ok(_) => format!("FAIL  {name}: took {:.2}s, limit {}s", took.as_secs_f64(), limit.as_secs()),
            Err(e) => format!("FAIL  {name}: {e} [{:.2}s]", took.as_secs_f64()),
        };
        if line.starts_with("FAIL") {
            failed += 1;
        }
        println!("{line}");
    }
    println!("acceptance: {} of 10 criteria passed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
