//! Python bindings: polynomials in divided powers, operators, group elements,
//! Hilbert functions, tangent spaces and the reductions to normal form.

use apolar::classification::orbit_membership_heuristic;
use apolar::divided_powers::Monomial;
use apolar::{
    compose, format_dp, format_operator, infer_arity, parse_operator, parse_poly, Automorphism, DPPoly, Error, Field,
    GroupElement, Membership, Mode, Operator, ReductionTrace, Scalar,
};
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

create_exception!(pyapolar, ApolarError, PyException);

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Syntax { .. } | Error::InvalidField(_) => PyValueError::new_err(e.to_string()),
        e => ApolarError::new_err(e.to_string()),
    }
}

fn field_of(s: &str) -> PyResult<Field> {
    s.parse().map_err(py_err)
}

fn scalar(src: &str, field: Field) -> PyResult<Scalar> {
    let c = parse_poly(src, 1, field, Mode::DividedPower).map_err(py_err)?;
    if c.degree().unwrap_or(0) > 0 {
        return Err(PyValueError::new_err(format!("{src} is not a scalar")));
    }
    Ok(c.coeff(&Monomial::one(1)))
}

/// A polynomial in divided powers `x1^[a1]*...*xn^[an]`.
#[pyclass(name = "Poly", module = "pyapolar", frozen, from_py_object)]
#[derive(Clone)]
struct PyPoly(DPPoly);

#[pymethods]
impl PyPoly {
    /// `mode="classical"` reads ordinary monomials and converts them.
    #[new]
    #[pyo3(signature = (src, vars=None, field="q", mode="dp"))]
    fn new(src: &str, vars: Option<usize>, field: &str, mode: &str) -> PyResult<Self> {
        let mode: Mode = mode.parse().map_err(py_err)?;
        let n = vars.unwrap_or_else(|| infer_arity(src));
        parse_poly(src, n, field_of(field)?, mode).map(PyPoly).map_err(py_err)
    }

    #[getter]
    fn vars(&self) -> usize {
        self.0.arity()
    }

    #[getter]
    fn field(&self) -> String {
        self.0.field().to_string()
    }

    #[getter]
    fn degree(&self) -> Option<u32> {
        self.0.degree()
    }

    fn is_homogeneous(&self) -> bool {
        self.0.is_homogeneous()
    }

    /// Top degree form.
    fn tdf(&self) -> PyPoly {
        PyPoly(self.0.tdf())
    }

    fn part(&self, lo: u32, hi: u32) -> PyPoly {
        PyPoly(self.0.part(lo, hi))
    }

    /// `σ⌟f` for an operator given as a string or an `Operator`.
    fn contract(&self, op: &Bound<'_, PyAny>) -> PyResult<PyPoly> {
        let s = operator_arg(op, &self.0)?;
        apolar::contract(&s, &self.0).map(PyPoly).map_err(py_err)
    }

    fn pair(&self, op: &Bound<'_, PyAny>) -> PyResult<String> {
        let s = operator_arg(op, &self.0)?;
        apolar::pair(&s, &self.0).map(|c| c.to_string()).map_err(py_err)
    }

    fn hilbert(&self) -> PyResult<Vec<usize>> {
        apolar::hilbert_function(&self.0).map(|h| h.values().to_vec()).map_err(py_err)
    }

    fn apolar_dim(&self) -> PyResult<usize> {
        apolar::apolar_dim(&self.0).map_err(py_err)
    }

    fn symmetric_decomposition(&self) -> PyResult<Vec<Vec<usize>>> {
        apolar::symmetric_decomposition(&self.0).map(|s| s.deltas().to_vec()).map_err(py_err)
    }

    fn is_compressed(&self) -> PyResult<bool> {
        apolar::is_compressed(&self.0).map_err(py_err)
    }

    fn is_t_compressed(&self, t: u32) -> PyResult<bool> {
        apolar::is_t_compressed(&self.0, t).map_err(py_err)
    }

    #[pyo3(signature = (unipotent=false))]
    fn tangent_dim(&self, unipotent: bool) -> PyResult<usize> {
        let b = if unipotent { apolar::unip_tangent_space(&self.0) } else { apolar::tangent_space(&self.0) };
        b.map(|b| b.dim()).map_err(py_err)
    }

    /// Basis of the orthogonal of the tangent space in degrees at most `max_degree`.
    #[pyo3(signature = (unipotent=false, max_degree=None))]
    fn perp_tangent(&self, unipotent: bool, max_degree: Option<u32>) -> PyResult<Vec<PyOperator>> {
        let hi = max_degree.unwrap_or_else(|| self.0.degree().unwrap_or(0));
        let b = apolar::perp_tangent(&self.0, unipotent, hi).map_err(py_err)?;
        Ok(b.operators().into_iter().map(PyOperator).collect())
    }

    fn orbit_dimension(&self) -> PyResult<usize> {
        apolar::orbit_dimension(&self.0).map_err(py_err)
    }

    fn dense_orbit_test(&self) -> PyResult<bool> {
        apolar::dense_orbit_test(&self.0).map_err(py_err)
    }

    fn __add__(&self, o: &PyPoly) -> PyResult<PyPoly> {
        self.0.checked_add(&o.0).map(PyPoly).map_err(py_err)
    }

    fn __sub__(&self, o: &PyPoly) -> PyResult<PyPoly> {
        self.0.checked_add(&-&o.0).map(PyPoly).map_err(py_err)
    }

    fn __mul__(&self, c: &str) -> PyResult<PyPoly> {
        Ok(PyPoly(self.0.scale(&scalar(c, self.0.field())?)))
    }

    fn __eq__(&self, o: &PyPoly) -> bool {
        self.0 == o.0
    }

    fn __str__(&self) -> String {
        format_dp(&self.0)
    }

    fn __repr__(&self) -> String {
        format!("Poly('{}', vars={}, field='{}')", format_dp(&self.0), self.0.arity(), self.0.field())
    }
}

/// A truncated power series in `a1, ..., an`.
#[pyclass(name = "Operator", module = "pyapolar", frozen, from_py_object)]
#[derive(Clone)]
struct PyOperator(Operator);

#[pymethods]
impl PyOperator {
    #[new]
    #[pyo3(signature = (src, vars=None, field="q", trunc=8))]
    fn new(src: &str, vars: Option<usize>, field: &str, trunc: u32) -> PyResult<Self> {
        let n = vars.unwrap_or_else(|| infer_arity(src));
        parse_operator(src, n, field_of(field)?, trunc).map(PyOperator).map_err(py_err)
    }

    #[getter]
    fn trunc(&self) -> u32 {
        self.0.trunc()
    }

    fn __mul__(&self, o: &PyOperator) -> PyResult<PyOperator> {
        self.0.checked_mul(&o.0).map(PyOperator).map_err(py_err)
    }

    fn __add__(&self, o: &PyOperator) -> PyResult<PyOperator> {
        self.0.checked_add(&o.0).map(PyOperator).map_err(py_err)
    }

    fn __eq__(&self, o: &PyOperator) -> bool {
        self.0 == o.0
    }

    fn __str__(&self) -> String {
        format_operator(&self.0)
    }

    fn __repr__(&self) -> String {
        format!("Operator('{}', trunc={})", format_operator(&self.0), self.0.trunc())
    }
}

fn operator_arg(op: &Bound<'_, PyAny>, f: &DPPoly) -> PyResult<Operator> {
    if let Ok(s) = op.extract::<PyOperator>() {
        return Ok(s.0);
    }
    let src: String = op.extract()?;
    let trunc = f.degree().unwrap_or(0).max(1);
    parse_operator(&src, f.arity(), f.field(), trunc).map_err(py_err)
}

/// `(φ, u)` acting on polynomials by `f ↦ u⌟φ∨(f)`.
#[pyclass(name = "GroupElement", module = "pyapolar", frozen, from_py_object)]
#[derive(Clone)]
struct PyGroupElement(GroupElement);

#[pymethods]
impl PyGroupElement {
    /// `images[i]` is `φ(a_i)`; the unit defaults to 1.
    #[new]
    #[pyo3(signature = (images, unit="1", field="q", trunc=8))]
    fn new(images: Vec<String>, unit: &str, field: &str, trunc: u32) -> PyResult<Self> {
        let field = field_of(field)?;
        let n = images.len();
        let ops: Vec<Operator> =
            images.iter().map(|s| parse_operator(s, n, field, trunc)).collect::<Result<_, _>>().map_err(py_err)?;
        let aut = Automorphism::new(ops).map_err(py_err)?;
        let u = parse_operator(unit, n, field, trunc).map_err(py_err)?;
        GroupElement::new(aut, u).map(PyGroupElement).map_err(py_err)
    }

    /// The linear substitution whose `i`-th row is the image of `x_i`.
    #[staticmethod]
    #[pyo3(signature = (rows, field="q", trunc=8))]
    fn linear(rows: Vec<Vec<String>>, field: &str, trunc: u32) -> PyResult<Self> {
        let field = field_of(field)?;
        let m: Vec<Vec<Scalar>> =
            rows.iter().map(|r| r.iter().map(|c| scalar(c, field)).collect()).collect::<PyResult<_>>()?;
        Automorphism::linear(&m, trunc).map(|a| PyGroupElement(GroupElement::from_aut(a))).map_err(py_err)
    }

    fn apply(&self, f: &PyPoly) -> PyResult<PyPoly> {
        self.0.apply(&f.0).map(PyPoly).map_err(py_err)
    }

    /// The element acting as `self` followed by `other`.
    fn then(&self, other: &PyGroupElement) -> PyResult<PyGroupElement> {
        compose(&self.0, &other.0).map(PyGroupElement).map_err(py_err)
    }

    fn inverse(&self) -> PyResult<PyGroupElement> {
        self.0.inverse().map(PyGroupElement).map_err(py_err)
    }

    fn is_unipotent(&self) -> bool {
        self.0.is_unipotent()
    }

    #[getter]
    fn images(&self) -> Vec<String> {
        self.0.aut().images().iter().map(format_operator).collect()
    }

    #[getter]
    fn unit(&self) -> String {
        format_operator(self.0.unit())
    }

    fn __repr__(&self) -> String {
        format!("GroupElement({:?}, unit='{}')", self.images(), self.unit())
    }
}

fn trace_dict<'py>(py: Python<'py>, t: &ReductionTrace) -> PyResult<Bound<'py, PyDict>> {
    t.validate().map_err(py_err)?;
    let d = PyDict::new(py);
    d.set_item("input", PyPoly(t.input.clone()))?;
    d.set_item("target", PyPoly(t.target.clone()))?;
    let steps: Vec<(PyGroupElement, PyPoly)> =
        t.steps.iter().map(|s| (PyGroupElement(s.element.clone()), PyPoly(s.result.clone()))).collect();
    d.set_item("steps", steps)?;
    d.set_item("result", PyPoly(t.result.clone()))?;
    d.set_item("accumulated", PyGroupElement(t.accumulated.clone()))?;
    Ok(d)
}

fn membership<'py>(py: Python<'py>, m: &Membership) -> PyResult<Option<Bound<'py, PyDict>>> {
    match m {
        Membership::Yes(t) => trace_dict(py, t).map(Some),
        Membership::No { .. } => Ok(None),
    }
}

/// Returns `(t, trace)` for the t-compressed normal form.
#[pyfunction]
fn t_compressed_normal_form<'py>(py: Python<'py>, f: &PyPoly) -> PyResult<(u32, Bound<'py, PyDict>)> {
    let (t, trace) = apolar::t_compressed_normal_form(&f.0).map_err(py_err)?;
    Ok((t, trace_dict(py, &trace)?))
}

#[pyfunction]
fn improved_normal_form<'py>(py: Python<'py>, f: &PyPoly, t: u32) -> PyResult<Bound<'py, PyDict>> {
    trace_dict(py, &apolar::improved_normal_form(&f.0, t).map_err(py_err)?)
}

#[pyfunction]
fn square_ideal_reduce<'py>(py: Python<'py>, f: &PyPoly, t: u32) -> PyResult<Bound<'py, PyDict>> {
    trace_dict(py, &apolar::square_ideal_reduce(&f.0, t).map_err(py_err)?)
}

/// The reduction trace when `f` lies in the unipotent orbit of `form`, else `None`.
#[pyfunction]
fn unip_orbit_membership<'py>(py: Python<'py>, form: &PyPoly, f: &PyPoly) -> PyResult<Option<Bound<'py, PyDict>>> {
    membership(py, &apolar::unip_orbit_membership(&form.0, &f.0).map_err(py_err)?)
}

/// Like `unip_orbit_membership` without requiring `form` to be the top degree form; `None` is inconclusive.
#[pyfunction]
#[pyo3(name = "orbit_membership_heuristic")]
fn orbit_membership_heuristic_py<'py>(py: Python<'py>, form: &PyPoly, f: &PyPoly) -> PyResult<Option<Bound<'py, PyDict>>> {
    membership(py, &orbit_membership_heuristic(&form.0, &f.0).map_err(py_err)?)
}

#[pyfunction]
fn cangrad_pair_filter(n: u64, d: u64) -> bool {
    apolar::cangrad_pair_filter(n, d)
}

fn matrix(m: &[Vec<Scalar>]) -> Vec<Vec<String>> {
    m.iter().map(|r| r.iter().map(|c| c.to_string()).collect()).collect()
}

#[pyfunction]
fn golden_13331(py: Python<'_>) -> PyResult<Bound<'_, PyDict>> {
    let g = apolar::golden_13331().map_err(py_err)?;
    let d = PyDict::new(py);
    let leading: Vec<(String, PyPoly, Vec<PyOperator>)> = g
        .leading_forms
        .iter()
        .map(|c| (c.name.to_string(), PyPoly(c.form.clone()), c.perp.iter().cloned().map(PyOperator).collect()))
        .collect();
    d.set_item("leading_forms", leading)?;
    let normal: Vec<(String, PyPoly, usize)> =
        g.normal_forms.iter().map(|c| (c.name.to_string(), PyPoly(c.poly.clone()), c.tangent_dim)).collect();
    d.set_item("normal_forms", normal)?;
    d.set_item("tab_matrix_at_1_2", matrix(&g.tab_matrix))?;
    d.set_item("tab_matrix_stabilised_form", matrix(&g.tab_matrix_stabilised))?;
    d.set_item("warnings", g.warnings)?;
    Ok(d)
}

#[pyfunction]
fn golden_1222111<'py>(py: Python<'py>, f: &PyPoly) -> PyResult<Bound<'py, PyDict>> {
    let g = apolar::golden_1222111(&f.0).map_err(py_err)?;
    let d = PyDict::new(py);
    d.set_item("lambda", g.lambda.map(|c| c.to_string()))?;
    d.set_item("lambda_squared", g.lambda_squared.map(|c| c.to_string()))?;
    d.set_item("normal_form", PyPoly(g.normal_form))?;
    let stages: Vec<(String, PyPoly)> = g.stages.into_iter().map(|(n, p)| (n.to_string(), PyPoly(p))).collect();
    d.set_item("stages", stages)?;
    d.set_item("accumulated", PyGroupElement(g.accumulated))?;
    d.set_item("y4_member", g.y4_member)?;
    d.set_item("warnings", g.warnings)?;
    Ok(d)
}

#[pyfunction]
fn golden_char2(py: Python<'_>) -> PyResult<Bound<'_, PyDict>> {
    let g = apolar::golden_char2().map_err(py_err)?;
    let d = PyDict::new(py);
    d.set_item("poly", PyPoly(g.poly))?;
    d.set_item("hilbert", g.hilbert)?;
    d.set_item("square_in_perp", g.square_in_perp)?;
    d.set_item("tangent_dim", g.tangent_dim)?;
    d.set_item("ambient_dim", g.ambient_dim)?;
    d.set_item("orbit_dimension_refused", g.orbit_dimension_refused)?;
    d.set_item("x2_in_tangent", g.x2_in_tangent)?;
    Ok(d)
}

#[pymodule]
fn pyapolar(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("ApolarError", m.py().get_type::<ApolarError>())?;
    m.add_class::<PyPoly>()?;
    m.add_class::<PyOperator>()?;
    m.add_class::<PyGroupElement>()?;
    m.add_function(wrap_pyfunction!(t_compressed_normal_form, m)?)?;
    m.add_function(wrap_pyfunction!(improved_normal_form, m)?)?;
    m.add_function(wrap_pyfunction!(square_ideal_reduce, m)?)?;
    m.add_function(wrap_pyfunction!(unip_orbit_membership, m)?)?;
    m.add_function(wrap_pyfunction!(orbit_membership_heuristic_py, m)?)?;
    m.add_function(wrap_pyfunction!(cangrad_pair_filter, m)?)?;
    m.add_function(wrap_pyfunction!(golden_13331, m)?)?;
    m.add_function(wrap_pyfunction!(golden_1222111, m)?)?;
    m.add_function(wrap_pyfunction!(golden_char2, m)?)?;
    Ok(())
}
