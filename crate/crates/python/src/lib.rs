//! Python bindings. Rationals cross the boundary as `fractions.Fraction`.

use pyo3::exceptions::{PyNotImplementedError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use torusslopes::charslopes::{self, CensusRecord};
use torusslopes::checks;
use torusslopes::lens::{self, LensSpace};
use torusslopes::numtheory::Rational;
use torusslopes::seifert::{self, Fiber, SeifertInvariants, SurgeryResult};
use torusslopes::surgeryfloer;
use torusslopes::torusknot::{CableKnot, Knot, StaircaseInvariants, TorusKnot};
use torusslopes::Error;

fn err(e: Error) -> PyErr {
    match e {
        Error::Unsupported(_) => PyNotImplementedError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn fraction<'py>(py: Python<'py>, r: &Rational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((r.to_string(),))
}

fn fractions<'py>(py: Python<'py>, rs: &[Rational]) -> PyResult<Bound<'py, PyList>> {
    let items = rs.iter().map(|r| fraction(py, r)).collect::<PyResult<Vec<_>>>()?;
    PyList::new(py, items)
}

/// Accepts a knot string such as `"C(2,33;T(3,5))"` or a knot object.
fn knot_arg(obj: &Bound<'_, PyAny>) -> PyResult<Knot> {
    if let Ok(s) = obj.extract::<String>() {
        return s.parse().map_err(err);
    }
    if let Ok(t) = obj.extract::<PyRef<'_, PyTorusKnot>>() {
        return Ok(Knot::Torus(t.0));
    }
    if let Ok(c) = obj.extract::<PyRef<'_, PyCableKnot>>() {
        return Ok(Knot::Cable(c.0));
    }
    Err(PyValueError::new_err("expected a knot string, TorusKnot or CableKnot"))
}

fn knot_object(py: Python<'_>, k: Knot) -> PyResult<Py<PyAny>> {
    Ok(match k {
        Knot::Torus(t) => Py::new(py, PyTorusKnot(t))?.into_any(),
        Knot::Cable(c) => Py::new(py, PyCableKnot(c))?.into_any(),
    })
}

#[pyclass(name = "TorusKnot", frozen, eq, module = "torusslopes")]
#[derive(PartialEq)]
struct PyTorusKnot(TorusKnot);

#[pymethods]
impl PyTorusKnot {
    #[new]
    fn new(r: i64, s: i64) -> PyResult<Self> {
        TorusKnot::new(r, s).map(PyTorusKnot).map_err(err)
    }

    #[getter]
    fn r(&self) -> i64 {
        self.0.r()
    }

    #[getter]
    fn s(&self) -> i64 {
        self.0.s()
    }

    fn genus(&self) -> i64 {
        self.0.genus()
    }

    /// Exponent -> coefficient.
    fn alexander(&self) -> Vec<(i64, i64)> {
        self.0.alexander().terms().collect()
    }

    fn delta_second<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.0.delta_second())
    }

    fn is_same_knot(&self, other: PyRef<'_, PyTorusKnot>) -> bool {
        self.0.is_same_knot(&other.0)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("TorusKnot({}, {})", self.0.r(), self.0.s())
    }
}

#[pyclass(name = "CableKnot", frozen, eq, module = "torusslopes")]
#[derive(PartialEq)]
struct PyCableKnot(CableKnot);

#[pymethods]
impl PyCableKnot {
    #[new]
    fn new(w: i64, c: i64, companion: PyRef<'_, PyTorusKnot>) -> PyResult<Self> {
        CableKnot::new(w, c, companion.0).map(PyCableKnot).map_err(err)
    }

    #[getter]
    fn w(&self) -> i64 {
        self.0.w()
    }

    #[getter]
    fn c(&self) -> i64 {
        self.0.c()
    }

    #[getter]
    fn companion(&self) -> PyTorusKnot {
        PyTorusKnot(*self.0.companion())
    }

    fn genus(&self) -> i64 {
        self.0.genus()
    }

    fn alexander(&self) -> Vec<(i64, i64)> {
        self.0.alexander().terms().collect()
    }

    fn delta_second<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.0.delta_second())
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("CableKnot({}, {}, {})", self.0.w(), self.0.c(), PyTorusKnot(*self.0.companion()).__repr__())
    }
}

#[pyclass(name = "LensSpace", frozen, eq, module = "torusslopes")]
#[derive(PartialEq)]
struct PyLensSpace(LensSpace);

#[pymethods]
impl PyLensSpace {
    #[new]
    fn new(p: i64, q: i64) -> PyResult<Self> {
        LensSpace::new(p, q).map(PyLensSpace).map_err(err)
    }

    #[getter]
    fn p(&self) -> i64 {
        self.0.p()
    }

    #[getter]
    fn q(&self) -> i64 {
        self.0.q()
    }

    fn reverse(&self) -> Self {
        PyLensSpace(self.0.reverse())
    }

    fn d_multiset<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyList>> {
        fractions(py, &lens::lens_d_multiset(&self.0))
    }

    #[pyo3(signature = (other, oriented = true))]
    fn homeomorphic(&self, other: PyRef<'_, PyLensSpace>, oriented: bool) -> bool {
        lens::lens_homeo(&self.0, &other.0, oriented)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("LensSpace({}, {})", self.0.p(), self.0.q())
    }
}

#[pyclass(name = "SeifertInvariants", frozen, eq, module = "torusslopes")]
#[derive(PartialEq)]
struct PySeifert(SeifertInvariants);

#[pymethods]
impl PySeifert {
    /// `fibers` is a list of `(b, a)` pairs, one per fiber `b/a`.
    #[new]
    fn new(e: i64, fibers: Vec<(i64, i64)>) -> PyResult<Self> {
        let fibers = fibers.into_iter().map(|(b, a)| Fiber::new(b, a)).collect();
        SeifertInvariants::new(e, fibers).map(PySeifert).map_err(err)
    }

    #[getter]
    fn e(&self) -> i64 {
        self.0.e()
    }

    #[getter]
    fn fibers(&self) -> Vec<(i64, i64)> {
        self.0.fibers().iter().map(|f| (f.b, f.a)).collect()
    }

    fn normalize(&self) -> Self {
        PySeifert(self.0.normalize())
    }

    fn reverse_orientation(&self) -> Self {
        PySeifert(self.0.reverse_orientation())
    }

    fn euler_number<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.0.euler_number())
    }

    fn h1_order(&self) -> i64 {
        self.0.h1_order()
    }

    fn equal_oriented(&self, other: PyRef<'_, PySeifert>) -> PyResult<bool> {
        seifert::sfs_equal_oriented(&self.0, &other.0).map_err(err)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("SeifertInvariants({}, {:?})", self.0.e(), self.fibers())
    }
}

#[pyclass(name = "SurgeryResult", frozen, module = "torusslopes")]
struct PySurgeryResult(SurgeryResult);

#[pymethods]
impl PySurgeryResult {
    /// One of `seifert`, `lens`, `connected_sum`, `reducible`, `toroidal`.
    #[getter]
    fn kind(&self) -> &'static str {
        match self.0 {
            SurgeryResult::Seifert(_) => "seifert",
            SurgeryResult::Lens(_) => "lens",
            SurgeryResult::ConnectedSum(..) => "connected_sum",
            SurgeryResult::OrientationReversed(_) => "reversed",
            SurgeryResult::Reducible => "reducible",
            SurgeryResult::IncompressibleTorus => "toroidal",
        }
    }

    fn h1_order(&self) -> Option<i64> {
        self.0.h1_order()
    }

    fn as_seifert(&self) -> Option<PySeifert> {
        self.0.as_seifert().cloned().map(PySeifert)
    }

    fn as_lens(&self) -> Option<PyLensSpace> {
        self.0.as_lens().copied().map(PyLensSpace)
    }

    fn homeomorphic(&self, other: PyRef<'_, PySurgeryResult>) -> PyResult<bool> {
        seifert::surgery_homeomorphic(&self.0, &other.0).map_err(err)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("SurgeryResult({:?})", self.0.to_string())
    }
}

#[pyclass(name = "Staircase", frozen, module = "torusslopes")]
struct PyStaircase(StaircaseInvariants);

#[pymethods]
impl PyStaircase {
    #[getter]
    fn genus(&self) -> i64 {
        self.0.genus()
    }

    #[getter]
    fn nu_plus(&self) -> i64 {
        self.0.nu_plus()
    }

    fn v(&self, k: i64) -> i64 {
        self.0.v(k)
    }

    fn h(&self, k: i64) -> i64 {
        self.0.h(k)
    }

    fn torsion(&self, k: i64) -> i64 {
        self.0.torsion().get(k)
    }
}

#[pyclass(name = "CensusRecord", frozen, get_all, module = "torusslopes")]
struct PyCensusRecord {
    r: i64,
    s: i64,
    p: i64,
    q: i64,
    w: i64,
    c: i64,
    companion_r: i64,
    companion_b: i64,
    verified: bool,
}

impl From<CensusRecord> for PyCensusRecord {
    fn from(c: CensusRecord) -> Self {
        PyCensusRecord {
            r: c.r,
            s: c.s,
            p: c.p,
            q: c.q,
            w: c.w,
            c: c.c,
            companion_r: c.companion_r,
            companion_b: c.companion_b,
            verified: c.verified,
        }
    }
}

impl PyCensusRecord {
    fn record(&self) -> CensusRecord {
        CensusRecord {
            r: self.r,
            s: self.s,
            p: self.p,
            q: self.q,
            w: self.w,
            c: self.c,
            companion_r: self.companion_r,
            companion_b: self.companion_b,
            verified: self.verified,
        }
    }
}

#[pymethods]
impl PyCensusRecord {
    fn torus(&self) -> PyTorusKnot {
        PyTorusKnot(self.record().torus())
    }

    fn cable(&self) -> PyCableKnot {
        PyCableKnot(self.record().cable())
    }

    fn to_tsv_row(&self) -> String {
        self.record().to_tsv_row()
    }

    fn __repr__(&self) -> String {
        let rec = self.record();
        format!("CensusRecord({} {}/{} {})", rec.torus(), rec.p, rec.q, rec.cable())
    }
}

#[pyfunction]
fn d_invariant<'py>(py: Python<'py>, p: i64, q: i64, i: i64) -> PyResult<Bound<'py, PyAny>> {
    fraction(py, &lens::d_invariant(p, q, i).map_err(err)?)
}

#[pyfunction]
fn d_invariants<'py>(py: Python<'py>, p: i64, q: i64) -> PyResult<Bound<'py, PyList>> {
    fractions(py, &lens::d_invariants(p, q).map_err(err)?)
}

#[pyfunction]
fn d_multiset<'py>(py: Python<'py>, p: i64, q: i64) -> PyResult<Bound<'py, PyList>> {
    fractions(py, &lens::d_multiset(p, q).map_err(err)?)
}

#[pyfunction]
fn parse_knot(py: Python<'_>, spec: &str) -> PyResult<Py<PyAny>> {
    knot_object(py, spec.parse().map_err(err)?)
}

/// `p/q` surgery on a torus knot or cable, orientation reversals resolved.
#[pyfunction]
fn surgery(knot: &Bound<'_, PyAny>, p: i64, q: i64) -> PyResult<PySurgeryResult> {
    let res = match knot_arg(knot)? {
        Knot::Torus(t) => seifert::surgery_torus_knot(t.r(), t.s(), p, q),
        Knot::Cable(c) => seifert::surgery_cable(&c, p, q),
    };
    res.map(|r| PySurgeryResult(r.resolve())).map_err(err)
}

#[pyfunction]
fn staircase(knot: &Bound<'_, PyAny>) -> PyResult<PyStaircase> {
    knot_arg(knot)?.staircase().map(PyStaircase).map_err(err)
}

/// d-invariants of `S^3_{p/q}(K)`, `p > 0`, indexed by spin^c structure.
#[pyfunction]
fn d_surgery<'py>(py: Python<'py>, knot: &Bound<'py, PyAny>, p: i64, q: i64) -> PyResult<Bound<'py, PyList>> {
    let st = knot_arg(knot)?.staircase().map_err(err)?;
    fractions(py, &surgeryfloer::d_surgery_all(&st, p, q).map_err(err)?)
}

#[pyfunction]
fn casson_walker_obstruction<'py>(
    py: Python<'py>,
    k1: &Bound<'py, PyAny>,
    k2: &Bound<'py, PyAny>,
    p: i64,
    q: i64,
) -> PyResult<Bound<'py, PyAny>> {
    let v = torusslopes::torusknot::casson_walker_obstruction(&knot_arg(k1)?, &knot_arg(k2)?, p, q).map_err(err)?;
    fraction(py, &v)
}

/// `(p, q, cable)` for the closed-form cable slope of `T(r, s)`, or `None`.
#[pyfunction]
fn cable_slope(py: Python<'_>, r: i64, s: i64) -> PyResult<Option<(i64, i64, Py<PyCableKnot>)>> {
    match charslopes::cable_slope(r, s).map_err(err)? {
        Some(cs) => Ok(Some((cs.p, cs.q, Py::new(py, PyCableKnot(cs.cable))?))),
        None => Ok(None),
    }
}

#[pyfunction]
fn cable_census(s_max: i64, q_max: i64) -> PyResult<Vec<PyCensusRecord>> {
    Ok(charslopes::cable_census(s_max, q_max).map_err(err)?.into_iter().map(Into::into).collect())
}

#[pyfunction]
fn classify_slope<'py>(py: Python<'py>, r: i64, s: i64, p: i64, q: i64) -> PyResult<Bound<'py, PyDict>> {
    let c = charslopes::classify_slope(r, s, p, q).map_err(err)?;
    let out = PyDict::new(py);
    out.set_item("conditions", c.conditions.iter().map(ToString::to_string).collect::<Vec<_>>())?;
    out.set_item("covered", c.is_covered())?;
    out.set_item("known_cable", c.known_cable.map(|cs| cs.cable.to_string()))?;
    out.set_item("summary", c.to_string())?;
    Ok(out)
}

#[pyfunction]
fn enumerate_affine_maps<'py>(py: Python<'py>, p: i64, q: i64) -> PyResult<Vec<Bound<'py, PyDict>>> {
    charslopes::enumerate_affine_maps(p, q)
        .map_err(err)?
        .into_iter()
        .map(|m| {
            let d = PyDict::new(py);
            d.set_item("a", m.a)?;
            d.set_item("b", m.b)?;
            d.set_item("s0", m.s0)?;
            d.set_item("s1", m.s1)?;
            d.set_item("type", m.map_type.map(|t| t.to_string()))?;
            d.set_item("trivial", m.is_trivial())?;
            Ok(d)
        })
        .collect()
}

#[pyfunction]
fn thresholds<'py>(py: Python<'py>, g: i64, q: i64) -> PyResult<Bound<'py, PyDict>> {
    let t = charslopes::thresholds(g, q).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("hfk_recovery", t.hfk_recovery)?;
    d.set_item("technical2_neg", t.technical2_neg)?;
    d.set_item("hyperbolic", fraction(py, &t.hyperbolic)?)?;
    Ok(d)
}

/// Runs a named check bundle; returns `(passed, report)`.
#[pyfunction]
fn run_check(name: &str) -> PyResult<(bool, String)> {
    let rep = checks::run_check(name).map_err(err)?;
    Ok((rep.passed(), rep.to_string()))
}

#[pymodule]
#[pyo3(name = "torusslopes")]
fn torusslopes_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyTorusKnot>()?;
    m.add_class::<PyCableKnot>()?;
    m.add_class::<PyLensSpace>()?;
    m.add_class::<PySeifert>()?;
    m.add_class::<PySurgeryResult>()?;
    m.add_class::<PyStaircase>()?;
    m.add_class::<PyCensusRecord>()?;
    m.add_function(wrap_pyfunction!(d_invariant, m)?)?;
    m.add_function(wrap_pyfunction!(d_invariants, m)?)?;
    m.add_function(wrap_pyfunction!(d_multiset, m)?)?;
    m.add_function(wrap_pyfunction!(parse_knot, m)?)?;
    m.add_function(wrap_pyfunction!(surgery, m)?)?;
    m.add_function(wrap_pyfunction!(staircase, m)?)?;
    m.add_function(wrap_pyfunction!(d_surgery, m)?)?;
    m.add_function(wrap_pyfunction!(casson_walker_obstruction, m)?)?;
    m.add_function(wrap_pyfunction!(cable_slope, m)?)?;
    m.add_function(wrap_pyfunction!(cable_census, m)?)?;
    m.add_function(wrap_pyfunction!(classify_slope, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_affine_maps, m)?)?;
    m.add_function(wrap_pyfunction!(thresholds, m)?)?;
    m.add_function(wrap_pyfunction!(run_check, m)?)?;
    m.add("CHECK_NAMES", checks::CHECK_NAMES.to_vec())?;
    Ok(())
}
