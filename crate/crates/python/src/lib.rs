//! Python bindings: exact scalars, the window, patches and the certificates.
//! Exact values cross the boundary as `ExactScalar` objects or as strings
//! in `p/q+r/s√3` form.

use std::collections::BTreeMap;

use ::latglue as core;
use core::glue::{orbits, GlueElement};
use core::laminate::GluedLattice;
use core::windowq;
use core::{Error, Rational};
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

create_exception!(latglue, CertificateError, PyException, "An exact certificate did not hold.");

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Certificate(_) | Error::TableMismatch { .. } | Error::Construction(_) => {
            CertificateError::new_err(e.to_string())
        }
        _ => PyValueError::new_err(e.to_string()),
    }
}

/// `a + b√3` with rational `a`, `b`.
#[pyclass(module = "latglue", frozen, eq, ord, hash, from_py_object)]
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct ExactScalar(core::ExactScalar);

#[pymethods]
impl ExactScalar {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        text.parse().map(ExactScalar).map_err(py_err)
    }

    /// Rational part as `p/q`.
    #[getter]
    fn a(&self) -> String {
        self.0.a().to_string()
    }

    /// Coefficient of √3 as `p/q`.
    #[getter]
    fn b(&self) -> String {
        self.0.b().to_string()
    }

    fn is_rational(&self) -> bool {
        self.0.is_rational()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("ExactScalar('{}')", self.0)
    }

    fn __float__(&self) -> f64 {
        self.0.to_f64()
    }

    fn __add__(&self, o: &Self) -> Self {
        ExactScalar(&self.0 + &o.0)
    }

    fn __sub__(&self, o: &Self) -> Self {
        ExactScalar(&self.0 - &o.0)
    }

    fn __mul__(&self, o: &Self) -> Self {
        ExactScalar(&self.0 * &o.0)
    }

    fn __truediv__(&self, o: &Self) -> PyResult<Self> {
        self.0.checked_div(&o.0).map(ExactScalar).map_err(py_err)
    }

    fn __neg__(&self) -> Self {
        ExactScalar(-self.0.clone())
    }
}

/// The dodecagonal window with the default half-open boundary rule.
#[pyclass(module = "latglue", frozen)]
struct Window(windowq::WindowSpec);

#[pymethods]
impl Window {
    /// `centering`: four exact scalars as strings (default: the origin fiber).
    #[new]
    #[pyo3(signature = (centering=None))]
    fn new(centering: Option<Vec<String>>) -> PyResult<Self> {
        let w = match centering {
            None => windowq::WindowSpec::singular(),
            Some(c) => c.iter().map(|s| s.parse()).collect::<core::Result<Vec<_>>>().and_then(windowq::WindowSpec::new),
        };
        w.map(Window).map_err(py_err)
    }

    #[getter]
    fn centering(&self) -> Vec<ExactScalar> {
        self.0.centering().iter().cloned().map(ExactScalar).collect()
    }

    fn area(&self) -> ExactScalar {
        ExactScalar(self.0.area())
    }

    fn diameter_sq(&self) -> ExactScalar {
        ExactScalar(self.0.diameter_sq())
    }

    /// Whether the ⊥-image of `x4` (four rationals as strings) is admitted.
    fn contains(&self, x4: Vec<String>) -> PyResult<bool> {
        let x = parse_rationals(&x4)?;
        Ok(self.0.contains(&x))
    }

    /// Indices of the admitted vertices.
    fn included_vertices(&self) -> Vec<usize> {
        (0..12).filter(|&k| self.0.included_vertices[k]).collect()
    }
}

fn parse_rationals(v: &[String]) -> PyResult<Vec<Rational>> {
    if v.len() != 4 {
        return Err(PyValueError::new_err(format!("expected 4 coordinates, got {}", v.len())));
    }
    v.iter().map(|s| s.parse().map_err(py_err)).collect()
}

/// One admitted fiber: glue class plus integer `L4` coordinates.
#[pyclass(module = "latglue", frozen, eq, hash, from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PackedPoint(windowq::PackedPoint);

#[pymethods]
impl PackedPoint {
    #[new]
    fn new(glue: Vec<String>, c4: [i64; 4]) -> PyResult<Self> {
        let g = parse_rationals(&glue)?;
        let h = GlueElement::from_rationals(&g).map_err(py_err)?;
        Ok(PackedPoint(windowq::PackedPoint::new(h, c4)))
    }

    #[getter]
    fn glue(&self) -> Vec<String> {
        self.0.h.coords().iter().map(ToString::to_string).collect()
    }

    #[getter]
    fn c4(&self) -> [i64; 4] {
        self.0.c4
    }

    /// `c4 + h` as four rationals.
    #[getter]
    fn x4(&self) -> Vec<String> {
        self.0.x4().iter().map(ToString::to_string).collect()
    }

    fn __repr__(&self) -> String {
        format!("PackedPoint({})", self.0)
    }
}

fn unwrap_patch(patch: &[PackedPoint]) -> Vec<windowq::PackedPoint> {
    patch.iter().map(|p| p.0).collect()
}

/// The four recomputed tables as dicts with `title`, `headers` and `rows`.
#[pyfunction]
fn tables(py: Python<'_>) -> PyResult<Vec<Bound<'_, PyDict>>> {
    let l12 = GluedLattice::build().map_err(py_err)?;
    let ts = core::report::all_tables(&l12).map_err(py_err)?;
    ts.into_iter()
        .map(|t| {
            let d = PyDict::new(py);
            d.set_item("title", t.title)?;
            d.set_item("headers", t.headers)?;
            d.set_item("rows", t.rows)?;
            Ok(d)
        })
        .collect()
}

#[pyfunction]
fn kissing_l12() -> PyResult<usize> {
    Ok(GluedLattice::build().map_err(py_err)?.kissing_number())
}

/// Exact center densities keyed `l8`, `l4`, `l12`, `q10`.
#[pyfunction]
fn densities() -> PyResult<BTreeMap<&'static str, String>> {
    let l12 = GluedLattice::build().map_err(py_err)?;
    let d = l12.densities().map_err(py_err)?;
    let w = windowq::WindowSpec::singular().map_err(py_err)?;
    let q10 = windowq::exact_density(&w, &l12).map_err(py_err)?;
    Ok([("l8", d.l8), ("l4", d.l4), ("l12", d.l12), ("q10", q10)]
        .into_iter()
        .map(|(k, v)| (k, v.to_string()))
        .collect())
}

/// Counts from the exhaustive minimal-vector lemma scan.
#[pyfunction]
fn lemma_scan() -> PyResult<BTreeMap<&'static str, usize>> {
    let s = core::project::lemma1_scan().map_err(py_err)?;
    Ok([("candidates", s.candidates), ("minimal", s.minimal), ("violations", s.violations.len())].into())
}

/// `(x∥·x∥, x⊥·x⊥)` for four rational coordinates.
#[pyfunction]
fn split_norms(x4: Vec<String>) -> PyResult<(ExactScalar, ExactScalar)> {
    let x = parse_rationals(&x4)?;
    let (a, b) = core::project::split_norms(&x).map_err(py_err)?;
    Ok((ExactScalar(a), ExactScalar(b)))
}

#[pyfunction]
fn generate_patch(py: Python<'_>, window: &Window, bound: i64) -> PyResult<Vec<PackedPoint>> {
    let pts = py.detach(|| windowq::generate_patch(&window.0, bound)).map_err(py_err)?;
    Ok(pts.into_iter().map(PackedPoint).collect())
}

#[pyfunction]
fn patch_to_json(window: &Window, patch: Vec<PackedPoint>) -> PyResult<String> {
    windowq::write_patch_json(&unwrap_patch(&patch), window.0.grams()).map_err(py_err)
}

#[pyfunction]
fn patch_from_json(window: &Window, text: &str) -> PyResult<Vec<PackedPoint>> {
    let pts = windowq::read_patch_json(text, window.0.grams()).map_err(py_err)?;
    Ok(pts.into_iter().map(PackedPoint).collect())
}

/// Exact minimum distance certificate; raises `CertificateError` below 4.
#[pyfunction]
#[pyo3(signature = (window, patch, shell="4"))]
fn verify_packing<'py>(
    py: Python<'py>,
    window: &Window,
    patch: Vec<PackedPoint>,
    shell: &str,
) -> PyResult<Bound<'py, PyDict>> {
    let shell: Rational = shell.parse().map_err(py_err)?;
    let pts = unwrap_patch(&patch);
    let cert = py.detach(|| windowq::verify_packing(&window.0, &pts, &shell)).map_err(py_err)?;
    let d = PyDict::new(py);
    d.set_item("fibers", cert.fibers)?;
    d.set_item("min_dist_sq", ExactScalar(cert.min_dist_sq))?;
    d.set_item("intra_fiber", cert.intra_fiber.to_string())?;
    d.set_item("witness_pairs", cert.witnesses.len())?;
    d.set_item("forbidden_pairs", cert.forbidden_pairs.len())?;
    let census: BTreeMap<String, usize> = cert.shell_census.iter().map(|(k, v)| (k.to_string(), *v)).collect();
    d.set_item("shell_census", census)?;
    Ok(d)
}

/// The singular kissing configuration: `count`, contacts per fiber by glue
/// orbit, and the cosine census keyed by exact value.
#[pyfunction]
fn kissing_q10(py: Python<'_>) -> PyResult<Bound<'_, PyDict>> {
    let w = windowq::WindowSpec::singular().map_err(py_err)?;
    let k = windowq::kissing_configuration(&w).map_err(py_err)?;
    let orbs = orbits().map_err(py_err)?;
    let mut fibers: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    for f in &k.fibers {
        let rep = orbs.iter().find(|o| o.members.contains(&f.h)).map(|o| o.representative.to_string());
        fibers.entry(rep.unwrap_or_default()).or_default().push(f.contacts);
    }
    let d = PyDict::new(py);
    d.set_item("count", k.count)?;
    d.set_item("fibers", fibers)?;
    let cos: BTreeMap<String, usize> = k.cosines.iter().map(|(c, n)| (c.to_string(), *n)).collect();
    d.set_item("cosines", cos)?;
    Ok(d)
}

/// Tiling summary of a patch cut with coordinate bound `bound`.
#[pyfunction]
fn extract_tiling<'py>(
    py: Python<'py>,
    window: &Window,
    patch: Vec<PackedPoint>,
    bound: i64,
) -> PyResult<Bound<'py, PyDict>> {
    let pts = unwrap_patch(&patch);
    let t = py.detach(|| windowq::extract_tiling(&window.0, &pts, bound)).map_err(py_err)?;
    let d = PyDict::new(py);
    d.set_item("vertices", t.vertices.len())?;
    d.set_item("edges", t.edges.len())?;
    d.set_item("edge_len_sq", ExactScalar(t.edge_len_sq.clone()))?;
    d.set_item("min_separation", ExactScalar(t.min_separation.clone()))?;
    let faces: BTreeMap<String, usize> = t.face_counts().iter().map(|(k, v)| (format!("{k:?}"), *v)).collect();
    d.set_item("faces", faces)?;
    d.set_item("rings", t.rings.len())?;
    d.set_item("svg", windowq::tiling_svg(&t))?;
    Ok(d)
}

#[pymodule]
fn latglue(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("CertificateError", m.py().get_type::<CertificateError>())?;
    m.add_class::<ExactScalar>()?;
    m.add_class::<Window>()?;
    m.add_class::<PackedPoint>()?;
    m.add_function(wrap_pyfunction!(tables, m)?)?;
    m.add_function(wrap_pyfunction!(kissing_l12, m)?)?;
    m.add_function(wrap_pyfunction!(densities, m)?)?;
    m.add_function(wrap_pyfunction!(lemma_scan, m)?)?;
    m.add_function(wrap_pyfunction!(split_norms, m)?)?;
    m.add_function(wrap_pyfunction!(generate_patch, m)?)?;
    m.add_function(wrap_pyfunction!(patch_to_json, m)?)?;
    m.add_function(wrap_pyfunction!(patch_from_json, m)?)?;
    m.add_function(wrap_pyfunction!(verify_packing, m)?)?;
    m.add_function(wrap_pyfunction!(kissing_q10, m)?)?;
    m.add_function(wrap_pyfunction!(extract_tiling, m)?)?;
    Ok(())
}
