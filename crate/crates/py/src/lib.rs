//! Python bindings. Structured results cross the boundary as JSON strings,
//! the same documents the command line prints with `--format structured`.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use ncperiod::algebra::DgAlgebra;
use ncperiod::cli::{self, CliError};
use ncperiod::cyclic::{negative_cyclic_homology, periodic_cyclic_homology, TWindow};
use ncperiod::hochschild::{hochschild_cohomology, hochschild_homology};
use ncperiod::period::{first_order_period_matrix, torelli_rank};

fn py_err(e: impl std::fmt::Display) -> PyErr {
    PyRuntimeError::new_err(e.to_string())
}

fn cli_err(e: CliError) -> PyErr {
    match e {
        CliError::Parse(m) => PyValueError::new_err(m),
        CliError::Failure(m) => PyRuntimeError::new_err(m),
    }
}

fn window(w: (i64, i64)) -> PyResult<TWindow> {
    TWindow::new(w.0, w.1).map_err(|e| PyValueError::new_err(e.to_string()))
}

/// A finite-dimensional algebra over Q.
#[pyclass(name = "Algebra", frozen)]
struct PyAlgebra(DgAlgebra);

#[pymethods]
impl PyAlgebra {
    /// `field`, `trunc_poly:N`, `matrix:N`, `path:aN`, or a file path.
    #[staticmethod]
    fn named(spec: &str) -> PyResult<Self> {
        cli::load_algebra(spec).map(PyAlgebra).map_err(cli_err)
    }

    /// Parse the text of an algebra description file.
    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        cli::parse_algebra_file(text).map(PyAlgebra).map_err(|e| PyValueError::new_err(e.to_string()))
    }

    #[getter]
    fn name(&self) -> String {
        self.0.name().to_string()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    #[getter]
    fn labels(&self) -> Vec<String> {
        self.0.labels().to_vec()
    }

    fn hochschild_homology(&self, py: Python<'_>, lo: usize, hi: usize) -> PyResult<Vec<usize>> {
        let a = &self.0;
        py.detach(|| hochschild_homology(a, lo..=hi).map(|h| h.dims().as_vec())).map_err(py_err)
    }

    fn hochschild_cohomology(&self, py: Python<'_>, lo: usize, hi: usize) -> PyResult<Vec<usize>> {
        let a = &self.0;
        py.detach(|| hochschild_cohomology(a, lo..=hi, hi + 1).map(|h| h.dims().as_vec())).map_err(py_err)
    }

    #[pyo3(signature = (lo, hi, window = (-6, 6)))]
    fn negative_cyclic_homology(&self, py: Python<'_>, lo: i64, hi: i64, window: (i64, i64)) -> PyResult<Vec<usize>> {
        let (a, w) = (&self.0, self::window(window)?);
        py.detach(|| negative_cyclic_homology(a, lo..=hi, w).map(|h| h.as_vec())).map_err(py_err)
    }

    #[pyo3(signature = (window = (-6, 6)))]
    fn periodic_cyclic_homology(&self, py: Python<'_>, window: (i64, i64)) -> PyResult<(usize, usize)> {
        let (a, w) = (&self.0, self::window(window)?);
        py.detach(|| periodic_cyclic_homology(a, w)).map_err(py_err)
    }

    /// JSON list of period classes, one per HH² basis element.
    fn period_matrix(&self, py: Python<'_>, lo: usize, hi: usize) -> PyResult<String> {
        let a = &self.0;
        let classes = py.detach(|| first_order_period_matrix(a, lo..=hi)).map_err(py_err)?;
        serde_json::to_string(&classes).map_err(py_err)
    }

    /// `(dim HH², rank, injective)`.
    fn torelli(&self, py: Python<'_>, lo: usize, hi: usize) -> PyResult<(usize, usize, bool)> {
        let a = &self.0;
        let r = py.detach(|| torelli_rank(a, lo..=hi)).map_err(py_err)?;
        Ok((r.hh2_dim, r.rank, r.injective))
    }

    fn __repr__(&self) -> String {
        format!("Algebra({:?}, dim={})", self.0.name(), self.0.dim())
    }
}

/// Run the command line; returns `(exit_code, stdout, stderr)`.
#[pyfunction]
fn run_cli(py: Python<'_>, args: Vec<String>) -> (i32, String, String) {
    let out = py.detach(|| cli::run(std::iter::once("ncperiod".to_string()).chain(args)));
    (out.code, out.stdout, out.stderr)
}

#[pymodule]
fn ncperiod_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyAlgebra>()?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    Ok(())
}
