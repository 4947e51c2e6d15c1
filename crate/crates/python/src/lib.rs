//! Python bindings. Dimensions and bounds come back as Python ints of
//! arbitrary size; weights are lists of ints in Bourbaki order.

use ::liecensus::bounds::{self, BoundExpr};
use ::liecensus::candidates::{self, CandidateOptions};
use ::liecensus::{census, rootsystem, sieve, weyldim, Error, Weight};
use num_bigint::BigUint;
use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

create_exception!(liecensus, ResourceLimitError, PyRuntimeError);
create_exception!(liecensus, InvariantError, PyRuntimeError);

fn to_py(e: Error) -> PyErr {
    match e {
        Error::ResourceLimit(_) => ResourceLimitError::new_err(e.to_string()),
        Error::Invariant(_) => InvariantError::new_err(e.to_string()),
        Error::Cache(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

/// A simple Lie type such as `LieType("E", 6)` or `LieType.parse("B3")`.
#[pyclass(frozen, eq, hash, skip_from_py_object, module = "liecensus")]
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct LieType(rootsystem::LieType);

#[pymethods]
impl LieType {
    #[new]
    fn new(family: &str, rank: usize) -> PyResult<Self> {
        rootsystem::LieType::parse(family, rank).map(LieType).map_err(to_py)
    }

    #[staticmethod]
    fn parse(s: &str) -> PyResult<Self> {
        s.parse().map(LieType).map_err(to_py)
    }

    #[getter]
    fn family(&self) -> String {
        self.0.family().to_string()
    }

    #[getter]
    fn rank(&self) -> usize {
        self.0.rank()
    }

    fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        rootsystem::root_system(self.0).cartan.clone()
    }

    fn positive_roots(&self) -> Vec<Vec<u32>> {
        rootsystem::root_system(self.0).positive_roots.clone()
    }

    fn positive_root_count(&self) -> usize {
        rootsystem::positive_root_count(self.0)
    }

    fn dim(&self, weight: Vec<u32>) -> PyResult<BigUint> {
        weyl_dim(self, weight)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("LieType('{}', {})", self.0.family().letter(), self.0.rank())
    }
}

/// An explicit bound `(Σ m√s) · base^exponent` with its exact floor and
/// ceiling, or `None` for both when over the bit budget.
#[pyclass(frozen, name = "Bound", module = "liecensus")]
struct PyBound(BoundExpr);

#[pymethods]
impl PyBound {
    #[getter]
    fn symbolic(&self) -> String {
        self.0.to_string()
    }

    #[getter]
    fn floor(&self) -> Option<BigUint> {
        self.0.floor_value.clone()
    }

    #[getter]
    fn ceil(&self) -> Option<BigUint> {
        self.0.ceil_value.clone()
    }

    #[getter]
    fn exceeds_budget(&self) -> bool {
        self.0.exceeds_budget
    }

    #[getter]
    fn flags(&self) -> Vec<String> {
        self.0.flags.clone()
    }

    fn __repr__(&self) -> String {
        match &self.0.floor_value {
            Some(f) => format!("Bound({}, floor={f})", self.0),
            None => format!("Bound({})", self.0),
        }
    }
}

type Entry = (String, Vec<u32>, BigUint);

fn entry(e: &census::CensusEntry) -> Entry {
    (e.lie_type.to_string(), e.weight.coeffs().to_vec(), e.dim.0.clone())
}

#[pyclass(frozen, get_all, module = "liecensus")]
struct KacReport {
    prime: u64,
    matches: bool,
    expected: Vec<Entry>,
    found: Vec<Entry>,
    notes: Vec<String>,
}

/// One screened group with its module. `group` reads like `^2A2(7^1)`.
#[pyclass(frozen, get_all, module = "liecensus")]
struct CandidateRecord {
    group: String,
    lie_type: LieType,
    twist_e: u8,
    t: u64,
    p: u64,
    weight: Vec<u32>,
    dim: BigUint,
    flags: Vec<String>,
    constraints: Vec<String>,
}

#[pymethods]
impl CandidateRecord {
    fn __repr__(&self) -> String {
        let w: Vec<String> = self.weight.iter().map(|a| a.to_string()).collect();
        format!("CandidateRecord({}, ({}), dim={})", self.group, w.join(","), self.dim)
    }
}

impl From<&candidates::CandidateRecord> for CandidateRecord {
    fn from(r: &candidates::CandidateRecord) -> Self {
        let d = &r.descriptor;
        CandidateRecord {
            group: d.to_string(),
            lie_type: LieType(d.lie_type),
            twist_e: d.twist_e,
            t: d.field_exponent_t,
            p: d.characteristic_p,
            weight: r.weight.coeffs().to_vec(),
            dim: r.weyl_dim.0.clone(),
            flags: r.flags.iter().map(|f| f.as_str().to_string()).collect(),
            constraints: r.constraints_applied.clone(),
        }
    }
}

#[pyfunction]
fn weyl_dim(ty: &LieType, weight: Vec<u32>) -> PyResult<BigUint> {
    weyldim::weyl_dim(ty.0, &Weight::new(weight)).map(|d| d.0).map_err(to_py)
}

#[pyfunction]
fn dual_weight(ty: &LieType, weight: Vec<u32>) -> PyResult<Vec<u32>> {
    weyldim::dual_weight(ty.0, &Weight::new(weight))
        .map(|w| w.coeffs().to_vec())
        .map_err(to_py)
}

#[pyfunction]
fn is_self_dual(ty: &LieType, weight: Vec<u32>) -> PyResult<bool> {
    weyldim::is_self_dual(ty.0, &Weight::new(weight)).map_err(to_py)
}

/// `(weight, dim)` pairs with `dim <= max_dim`, sorted.
#[pyfunction]
fn enumerate_weights(ty: &LieType, max_dim: u64) -> PyResult<Vec<(Vec<u32>, BigUint)>> {
    let entries = census::enumerate_weights(ty.0, max_dim).map_err(to_py)?;
    Ok(entries
        .into_iter()
        .map(|e| (e.weight.coeffs().to_vec(), e.dim.0))
        .collect())
}

#[pyfunction]
#[pyo3(signature = (r, canonical = true))]
fn prime_degree_census(r: u64, canonical: bool) -> PyResult<Vec<Entry>> {
    let entries = census::prime_degree_census(r, canonical).map_err(to_py)?;
    Ok(entries.iter().map(entry).collect())
}

#[pyfunction]
fn verify_kac(r: u64) -> PyResult<KacReport> {
    let rep = census::verify_kac(r).map_err(to_py)?;
    Ok(KacReport {
        prime: rep.prime,
        matches: rep.matches,
        expected: rep.expected.iter().map(entry).collect(),
        found: rep.found.iter().map(entry).collect(),
        notes: rep.notes,
    })
}

#[pyfunction]
fn p_bound(r: u64) -> PyBound {
    PyBound(bounds::p_bound(r))
}

/// `(bb1, th8, t11)`
#[pyfunction]
fn candidate_count_caps(r: u64) -> (PyBound, PyBound, PyBound) {
    let c = bounds::candidate_count_caps(r);
    (PyBound(c.bb1), PyBound(c.th8), PyBound(c.t11))
}

/// `(value, floor)` with `value` as a fraction string such as `"21/2"`.
#[pyfunction]
fn alternating_cap(m: u64) -> PyResult<(String, u64)> {
    let c = bounds::alternating_cap(m).map_err(to_py)?;
    Ok((c.value.to_string(), c.floor))
}

#[pyfunction]
fn primes_below(x: u64) -> PyResult<Vec<u64>> {
    sieve::primes_below(x).map_err(to_py)
}

#[pyfunction]
fn field_exponents(k: u64, e: u8) -> PyResult<Vec<u64>> {
    candidates::field_exponents(k, e).map_err(to_py)
}

/// Main-list weights for one type, degree `r` and characteristic `p`.
#[pyfunction]
#[pyo3(signature = (ty, r, p, exclude_self_dual = true))]
fn candidate_weights(ty: &LieType, r: u64, p: u64, exclude_self_dual: bool) -> PyResult<Vec<(Vec<u32>, BigUint)>> {
    let s = candidates::candidate_weights(ty.0, r, p, exclude_self_dual).map_err(to_py)?;
    Ok(s.main
        .into_iter()
        .map(|w| (w.weight.coeffs().to_vec(), w.dim.0))
        .collect())
}

/// Returns `(records, summary_json)`. Records include any stubs.
#[pyfunction]
#[pyo3(signature = (r, k, exclude_self_dual = true, p_limit = None, dim_ceiling = None))]
fn enumerate_candidates(
    py: Python<'_>,
    r: u64,
    k: u64,
    exclude_self_dual: bool,
    p_limit: Option<u64>,
    dim_ceiling: Option<u64>,
) -> PyResult<(Vec<CandidateRecord>, String)> {
    let mut opts = CandidateOptions {
        exclude_self_dual,
        p_limit_override: p_limit,
        ..CandidateOptions::default()
    };
    if let Some(c) = dim_ceiling {
        opts.dim_ceiling = c;
    }
    let run = py
        .detach(|| candidates::enumerate_candidates(r, k, &opts))
        .map_err(to_py)?;
    let records = run.records.iter().chain(&run.stubs).map(CandidateRecord::from).collect();
    let summary = serde_json::to_string(&run.summary).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    Ok((records, summary))
}

#[pymodule(name = "liecensus")]
fn liecensus_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<LieType>()?;
    m.add_class::<PyBound>()?;
    m.add_class::<KacReport>()?;
    m.add_class::<CandidateRecord>()?;
    m.add("ResourceLimitError", m.py().get_type::<ResourceLimitError>())?;
    m.add("InvariantError", m.py().get_type::<InvariantError>())?;
    m.add_function(wrap_pyfunction!(weyl_dim, m)?)?;
    m.add_function(wrap_pyfunction!(dual_weight, m)?)?;
    m.add_function(wrap_pyfunction!(is_self_dual, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_weights, m)?)?;
    m.add_function(wrap_pyfunction!(prime_degree_census, m)?)?;
    m.add_function(wrap_pyfunction!(verify_kac, m)?)?;
    m.add_function(wrap_pyfunction!(p_bound, m)?)?;
    m.add_function(wrap_pyfunction!(candidate_count_caps, m)?)?;
    m.add_function(wrap_pyfunction!(alternating_cap, m)?)?;
    m.add_function(wrap_pyfunction!(primes_below, m)?)?;
    m.add_function(wrap_pyfunction!(field_exponents, m)?)?;
    m.add_function(wrap_pyfunction!(candidate_weights, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_candidates, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
