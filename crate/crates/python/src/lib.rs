//! Python bindings. Vectors cross the boundary as lists of ints, rationals
//! as `fractions.Fraction` (inputs also accept `"p/q"` strings).

use num_rational::BigRational;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use nsmacd_core::geometry::{self, LatticePolytope};
use nsmacd_core::macdonald::{self, HhlStatistics, MConvexCertificate, QTParams, SparsePolynomial};
use nsmacd_core::rational::{format_rational, parse_rational};
use nsmacd_core::verify::{run_sweep, SweepConfig};
use nsmacd_core::{bruhat, fillings, Composition, PointSet, WeightVector};

fn err(e: nsmacd_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn weight(v: Vec<i64>) -> PyResult<WeightVector> {
    WeightVector::new(v).map_err(err)
}

fn composition(v: Vec<i64>) -> PyResult<Composition> {
    weight(v)?.to_composition().map_err(err)
}

fn point_set(points: Vec<Vec<i64>>) -> PyResult<PointSet> {
    let pts = points.into_iter().map(weight).collect::<PyResult<Vec<_>>>()?;
    PointSet::from_points(pts).map_err(err)
}

fn rows(s: &PointSet) -> Vec<Vec<i64>> {
    s.iter().map(|p| p.entries().to_vec()).collect()
}

fn fraction<'py>(py: Python<'py>, x: &BigRational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?
        .getattr("Fraction")?
        .call1((format_rational(x),))
}

/// Accepts a `Fraction`, an `int` or a `"p/q"` string.
fn rational(x: &Bound<'_, PyAny>) -> PyResult<BigRational> {
    parse_rational(&x.str()?.to_string()).map_err(err)
}

fn params(q: &Bound<'_, PyAny>, t: &Bound<'_, PyAny>) -> PyResult<QTParams> {
    QTParams::new(rational(q)?, rational(t)?).map_err(err)
}

fn json<T: serde::Serialize>(x: &T) -> String {
    serde_json::to_string(x).expect("serialisable")
}

/// An exact lattice polytope.
#[pyclass(name = "Polytope", frozen)]
struct PyPolytope(LatticePolytope);

#[pymethods]
impl PyPolytope {
    #[getter]
    fn vertices(&self) -> Vec<Vec<i64>> {
        self.0.vertices().iter().map(|v| v.entries().to_vec()).collect()
    }

    /// Pairs of vertex indices.
    #[getter]
    fn edges(&self) -> Vec<(usize, usize)> {
        self.0.edges().to_vec()
    }

    /// `(normal, offset)` with `normal · x ≤ offset` on the affine hull.
    #[getter]
    fn facets(&self) -> Vec<(Vec<i64>, i64)> {
        self.0.facets().iter().map(|f| (f.normal.clone(), f.offset)).collect()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    fn is_generalized_permutahedron(&self) -> bool {
        geometry::is_generalized_permutahedron(&self.0)
    }

    fn contains(&self, x: Vec<Bound<'_, PyAny>>) -> PyResult<bool> {
        let x = x.iter().map(rational).collect::<PyResult<Vec<_>>>()?;
        Ok(self.0.contains(&x))
    }

    fn to_json(&self) -> String {
        json(&self.0)
    }

    fn __repr__(&self) -> String {
        format!("Polytope(dim={}, vertices={})", self.0.dim(), self.0.vertices().len())
    }
}

/// A Laurent polynomial with exact rational coefficients.
#[pyclass(name = "Polynomial", frozen)]
struct PyPolynomial(SparsePolynomial);

#[pymethods]
impl PyPolynomial {
    /// `{exponent tuple: Fraction}`.
    fn terms<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let d = PyDict::new(py);
        for (e, c) in self.0.terms() {
            d.set_item(pyo3::types::PyTuple::new(py, e.entries())?, fraction(py, c)?)?;
        }
        Ok(d)
    }

    fn coefficient<'py>(&self, py: Python<'py>, exponent: Vec<i64>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.0.coefficient(&weight(exponent)?))
    }

    fn support(&self) -> Vec<Vec<i64>> {
        rows(&self.0.support())
    }

    /// `ψ(x^a) = q^{−a_n} x^{(a_n, a_1, …)}`.
    fn psi(&self, q: &Bound<'_, PyAny>) -> PyResult<PyPolynomial> {
        Ok(PyPolynomial(macdonald::psi_op(&self.0, &rational(q)?)))
    }

    fn to_json(&self) -> String {
        json(&self.0)
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __eq__(&self, other: &PyPolynomial) -> bool {
        self.0 == other.0
    }

    fn __repr__(&self) -> String {
        format!("Polynomial({} terms)", self.0.len())
    }
}

/// A replayable M-convexity certificate.
#[pyclass(name = "Certificate", frozen)]
struct PyCertificate(MConvexCertificate);

#[pymethods]
impl PyCertificate {
    #[getter]
    fn support(&self) -> Vec<Vec<i64>> {
        rows(&self.0.support)
    }

    #[getter]
    fn rotations(&self) -> usize {
        self.0.rotations()
    }

    #[getter]
    fn column_shifts(&self) -> usize {
        self.0.column_shifts()
    }

    /// Re-check every step; raises `ValueError` on failure.
    fn replay(&self) -> PyResult<Vec<Vec<i64>>> {
        self.0.replay().map(|s| rows(&s)).map_err(err)
    }

    fn to_json(&self) -> String {
        json(&self.0)
    }

    fn __len__(&self) -> usize {
        self.0.steps.len()
    }
}

#[pyfunction]
fn pi_op(v: Vec<i64>) -> PyResult<Vec<i64>> {
    Ok(weight(v)?.pi().entries().to_vec())
}

/// `(m, c)` with `v = (m, …, m) + c`, `min(c) = 0`.
#[pyfunction]
fn normalize_weight(v: Vec<i64>) -> PyResult<(i64, Vec<i64>)> {
    let (m, c) = weight(v)?.normalize();
    Ok((m, c.to_weight().entries().to_vec()))
}

/// Support of `E_mu` by the column-shift recursion.
#[pyfunction]
fn support(mu: Vec<i64>) -> PyResult<Vec<Vec<i64>>> {
    Ok(rows(&macdonald::support(&weight(mu)?)))
}

/// Support of `E_mu` from its non-attacking fillings.
#[pyfunction]
fn support_by_enumeration(mu: Vec<i64>) -> PyResult<Vec<Vec<i64>>> {
    Ok(rows(&fillings::support_by_enumeration(&composition(mu)?)))
}

/// Non-attacking fillings as JSON objects.
#[pyfunction]
fn nonattacking_fillings(mu: Vec<i64>) -> PyResult<Vec<String>> {
    Ok(fillings::enumerate_nonattacking(&composition(mu)?).iter().map(json).collect())
}

#[pyfunction]
fn bruhat_ideal(mu: Vec<i64>) -> PyResult<Vec<Vec<i64>>> {
    Ok(rows(&bruhat::ideal(&weight(mu)?).elements))
}

#[pyfunction]
fn bruhat_leq(lam: Vec<i64>, mu: Vec<i64>) -> PyResult<bool> {
    Ok(bruhat::leq(&weight(lam)?, &weight(mu)?))
}

#[pyfunction]
fn verify_hull_points_in_ideal(mu: Vec<i64>) -> PyResult<bool> {
    Ok(bruhat::verify_hull_points_in_ideal(&composition(mu)?))
}

#[pyfunction]
#[pyo3(signature = (mu, q = None, t = None))]
fn coefficients(mu: Vec<i64>, q: Option<Bound<'_, PyAny>>, t: Option<Bound<'_, PyAny>>) -> PyResult<PyPolynomial> {
    let p = match (q, t) {
        (None, None) => QTParams::default(),
        (Some(q), Some(t)) => params(&q, &t)?,
        _ => return Err(PyValueError::new_err("give both q and t or neither")),
    };
    Ok(PyPolynomial(macdonald::polynomial(&weight(mu)?, &p, &HhlStatistics)))
}

#[pyfunction]
fn verify_knop_sahi(mu: Vec<i64>, q: Bound<'_, PyAny>, t: Bound<'_, PyAny>) -> PyResult<bool> {
    Ok(macdonald::verify_knop_sahi(&composition(mu)?, &params(&q, &t)?, &HhlStatistics))
}

#[pyfunction]
fn newton_polytope(mu: Vec<i64>) -> PyResult<PyPolytope> {
    Ok(PyPolytope(macdonald::newton_polytope(&weight(mu)?)))
}

#[pyfunction]
fn moment_polytope(mu: Vec<i64>) -> PyResult<PyPolytope> {
    Ok(PyPolytope(macdonald::moment_polytope(&weight(mu)?)))
}

#[pyfunction]
fn certify_mconvex(mu: Vec<i64>) -> PyResult<PyCertificate> {
    macdonald::certify_mconvex(&composition(mu)?).map(PyCertificate).map_err(err)
}

#[pyfunction]
fn convex_hull(points: Vec<Vec<i64>>) -> PyResult<PyPolytope> {
    geometry::convex_hull(&point_set(points)?).map(PyPolytope).map_err(err)
}

#[pyfunction]
fn lattice_points(points: Vec<Vec<i64>>) -> PyResult<Vec<Vec<i64>>> {
    geometry::lattice_points(&point_set(points)?).map(|s| rows(&s)).map_err(err)
}

#[pyfunction]
fn is_saturated(points: Vec<Vec<i64>>) -> PyResult<bool> {
    geometry::is_saturated(&point_set(points)?).map_err(err)
}

#[pyfunction]
fn is_mconvex_exchange(points: Vec<Vec<i64>>) -> PyResult<bool> {
    Ok(geometry::is_mconvex_exchange(&point_set(points)?))
}

#[pyfunction]
fn is_mconvex_geometric(points: Vec<Vec<i64>>) -> PyResult<bool> {
    Ok(geometry::is_mconvex_geometric(&point_set(points)?))
}

/// `{subset tuple (1-based): max over points of the subset sum}`.
#[pyfunction]
fn support_function<'py>(py: Python<'py>, points: Vec<Vec<i64>>) -> PyResult<Bound<'py, PyDict>> {
    let f = geometry::support_function(&point_set(points)?).map_err(err)?;
    let d = PyDict::new(py);
    for (a, v) in f.values() {
        d.set_item(pyo3::types::PyTuple::new(py, a)?, v)?;
    }
    Ok(d)
}

#[pyfunction]
fn is_submodular(points: Vec<Vec<i64>>) -> PyResult<bool> {
    Ok(geometry::support_function(&point_set(points)?).map_err(err)?.is_submodular())
}

#[pyfunction]
fn minkowski_root_segment(points: Vec<Vec<i64>>, i: usize, j: usize) -> PyResult<Vec<Vec<i64>>> {
    geometry::minkowski_root_segment(&point_set(points)?, i, j)
        .map(|s| rows(&s))
        .map_err(err)
}

#[pyfunction]
fn union_reflection(points: Vec<Vec<i64>>, i: usize, j: usize) -> PyResult<Vec<Vec<i64>>> {
    geometry::union_reflection(&point_set(points)?, i, j)
        .map(|s| rows(&s))
        .map_err(err)
}

/// Run the identity sweep; returns the report as JSON.
#[pyfunction]
#[pyo3(signature = (max_n = 3, max_weight = 4))]
fn verify_sweep(py: Python<'_>, max_n: usize, max_weight: usize) -> String {
    py.detach(|| json(&run_sweep(&SweepConfig::new(max_n, max_weight))))
}

#[pymodule]
#[pyo3(name = "nsmacd")]
fn nsmacd_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPolytope>()?;
    m.add_class::<PyPolynomial>()?;
    m.add_class::<PyCertificate>()?;
    m.add_function(wrap_pyfunction!(pi_op, m)?)?;
    m.add_function(wrap_pyfunction!(normalize_weight, m)?)?;
    m.add_function(wrap_pyfunction!(support, m)?)?;
    m.add_function(wrap_pyfunction!(support_by_enumeration, m)?)?;
    m.add_function(wrap_pyfunction!(nonattacking_fillings, m)?)?;
    m.add_function(wrap_pyfunction!(bruhat_ideal, m)?)?;
    m.add_function(wrap_pyfunction!(bruhat_leq, m)?)?;
    m.add_function(wrap_pyfunction!(verify_hull_points_in_ideal, m)?)?;
    m.add_function(wrap_pyfunction!(coefficients, m)?)?;
    m.add_function(wrap_pyfunction!(verify_knop_sahi, m)?)?;
    m.add_function(wrap_pyfunction!(newton_polytope, m)?)?;
    m.add_function(wrap_pyfunction!(moment_polytope, m)?)?;
    m.add_function(wrap_pyfunction!(certify_mconvex, m)?)?;
    m.add_function(wrap_pyfunction!(convex_hull, m)?)?;
    m.add_function(wrap_pyfunction!(lattice_points, m)?)?;
    m.add_function(wrap_pyfunction!(is_saturated, m)?)?;
    m.add_function(wrap_pyfunction!(is_mconvex_exchange, m)?)?;
    m.add_function(wrap_pyfunction!(is_mconvex_geometric, m)?)?;
    m.add_function(wrap_pyfunction!(support_function, m)?)?;
    m.add_function(wrap_pyfunction!(is_submodular, m)?)?;
    m.add_function(wrap_pyfunction!(minkowski_root_segment, m)?)?;
    m.add_function(wrap_pyfunction!(union_reflection, m)?)?;
    m.add_function(wrap_pyfunction!(verify_sweep, m)?)?;
    Ok(())
}
