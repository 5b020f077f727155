//! Python bindings. Every analysis returns its report text together with a
//! pass flag, as the command-line tool does.

use std::sync::Arc;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use hopftwist::catalog;
use hopftwist::format::Document;
use hopftwist::report::{inline_point, parse_polys, Output, RunConfig, Session};
use hopftwist::Error;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Parse { .. } | Error::Input(_) => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn pair(o: hopftwist::Result<Output>) -> PyResult<(String, bool)> {
    o.map(|o| (o.text, o.passed)).map_err(py_err)
}

/// A group definition with its cocycle built.
#[pyclass(name = "Session", frozen)]
struct PySession(Session);

#[pymethods]
impl PySession {
    /// Load a built-in example by id.
    #[staticmethod]
    #[pyo3(signature = (id, max_degree=None, strict=false))]
    fn example(id: &str, max_degree: Option<u32>, strict: bool) -> PyResult<Self> {
        let doc = catalog::load(id).map_err(py_err)?;
        Session::new(doc, RunConfig { max_degree, strict }).map(PySession).map_err(py_err)
    }

    /// Parse the text of a group-definition file.
    #[staticmethod]
    #[pyo3(signature = (text, max_degree=None, strict=false))]
    fn parse(text: &str, max_degree: Option<u32>, strict: bool) -> PyResult<Self> {
        let doc = Arc::new(Document::parse(text).map_err(py_err)?);
        Session::new(doc, RunConfig { max_degree, strict }).map(PySession).map_err(py_err)
    }

    #[getter]
    fn name(&self) -> String {
        self.0.main().name().to_string()
    }

    #[getter]
    fn bound(&self) -> u32 {
        self.0.bound()
    }

    fn validate(&self) -> PyResult<(String, bool)> {
        pair(self.0.validate())
    }

    fn present(&self) -> PyResult<(String, bool)> {
        pair(self.0.present())
    }

    fn gamma(&self) -> PyResult<(String, bool)> {
        pair(self.0.gamma())
    }

    fn c0(&self) -> PyResult<(String, bool)> {
        pair(self.0.c0())
    }

    fn rform(&self) -> PyResult<(String, bool)> {
        pair(self.0.rform())
    }

    fn report(&self) -> PyResult<(String, bool)> {
        pair(self.0.full())
    }

    /// Stratum of one double coset; `point` is a point name from the file or
    /// inline coordinates such as "F23=a".
    fn stratum(&self, subgroup: &str, point: &str) -> PyResult<(String, bool)> {
        let main = self.0.main();
        let pt = match main.point(point) {
            Ok(p) => p.clone(),
            Err(_) => inline_point(main, point).map_err(py_err)?,
        };
        pair(self.0.stratum(subgroup, point, &pt))
    }

    /// Canonical group file.
    fn export(&self) -> String {
        self.0.doc.render()
    }
}

/// Ids of the built-in examples.
#[pyfunction]
fn examples() -> Vec<&'static str> {
    catalog::CATALOG.iter().map(|e| e.id).collect()
}

/// Reduced Groebner basis, printed.
#[pyfunction]
#[pyo3(signature = (vars, polys, params=Vec::new()))]
fn groebner(vars: Vec<String>, polys: Vec<String>, params: Vec<String>) -> PyResult<Vec<String>> {
    let (_, ideal) = parse_polys(&vars, &params, &polys).map_err(py_err)?;
    Ok(ideal.groebner().iter().map(|g| g.to_string()).collect())
}

/// Groebner basis of the elimination ideal.
#[pyfunction]
#[pyo3(signature = (vars, polys, drop, params=Vec::new()))]
fn eliminate(vars: Vec<String>, polys: Vec<String>, drop: Vec<String>, params: Vec<String>) -> PyResult<Vec<String>> {
    let (_, ideal) = parse_polys(&vars, &params, &polys).map_err(py_err)?;
    let refs: Vec<&str> = drop.iter().map(String::as_str).collect();
    let out = ideal.eliminate(&refs).map_err(py_err)?;
    Ok(out.groebner().iter().map(|g| g.to_string()).collect())
}

#[pymodule]
fn hopftwist_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySession>()?;
    m.add_function(wrap_pyfunction!(examples, m)?)?;
    m.add_function(wrap_pyfunction!(groebner, m)?)?;
    m.add_function(wrap_pyfunction!(eliminate, m)?)?;
    Ok(())
}
