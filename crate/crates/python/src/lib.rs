//! Python bindings: filtered complexes, perverse cohomology and squares.

use std::sync::Arc;

use perverse_steenrod::blowup;
use perverse_steenrod::corpus;
use perverse_steenrod::filtered::{
    boundary_components, cone, cone_off_boundary, suspension, trivial_filtration, FilteredFaceSet,
    Perversity,
};
use perverse_steenrod::squares::{square_matrix, steenrod_square};
use perverse_steenrod::verify::{verify_suite, VerifyConfig};
use perverse_steenrod::Error;
use pyo3::exceptions::{PyIOError, PyValueError};
use pyo3::prelude::*;

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Io(e) => PyIOError::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn space(name: &str) -> PyResult<perverse_steenrod::complex::FaceSet> {
    corpus::by_name(name)
        .map(|c| c.to_face_set())
        .ok_or_else(|| PyValueError::new_err(format!("unknown corpus space {name:?}")))
}

/// A validated filtered face set.
#[pyclass(name = "FilteredComplex", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyFiltered {
    inner: FilteredFaceSet,
}

#[pymethods]
impl PyFiltered {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        FilteredFaceSet::from_json(text)
            .map(|inner| Self { inner })
            .map_err(to_py)
    }

    #[staticmethod]
    fn load(path: std::path::PathBuf) -> PyResult<Self> {
        FilteredFaceSet::read(&path)
            .map(|inner| Self { inner })
            .map_err(to_py)
    }

    /// Trivial filtration of a built-in space.
    #[staticmethod]
    fn trivial(name: &str, n: usize) -> PyResult<Self> {
        Ok(Self {
            inner: trivial_filtration(&space(name)?, n),
        })
    }

    #[staticmethod]
    fn cone(name: &str, n: usize) -> PyResult<Self> {
        cone(&space(name)?, n)
            .map(|inner| Self { inner })
            .map_err(to_py)
    }

    #[staticmethod]
    fn suspension(name: &str) -> PyResult<Self> {
        Ok(Self {
            inner: suspension(&space(name)?),
        })
    }

    /// Cones off every boundary component of a built-in space.
    #[staticmethod]
    fn coneoff(name: &str, n: usize) -> PyResult<Self> {
        let w = space(name)?;
        cone_off_boundary(&w, &boundary_components(&w), n)
            .map(|inner| Self { inner })
            .map_err(to_py)
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!(
            "FilteredComplex(simplices={}, n={})",
            self.inner.len(),
            self.inner.n()
        )
    }
}

/// Blow-up of a filtered complex with cached perverse cohomology.
#[pyclass(name = "Blowup", frozen)]
struct PyBlowup {
    inner: Arc<blowup::Blowup>,
}

impl PyBlowup {
    fn perversity(&self, text: Option<&str>) -> PyResult<Perversity> {
        match text {
            None => Ok(Perversity::zero(self.inner.n())),
            Some(s) => Perversity::parse(s, self.inner.n()).map_err(to_py),
        }
    }
}

#[pymethods]
impl PyBlowup {
    #[new]
    fn new(complex: &PyFiltered) -> PyResult<Self> {
        blowup::Blowup::new(complex.inner.clone())
            .map(|b| Self { inner: Arc::new(b) })
            .map_err(to_py)
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    /// `dim H^k` for every degree; the perversity is a comma list such as `"0,1,inf"`.
    #[pyo3(signature = (perversity=None))]
    fn cohomology_dims(&self, py: Python<'_>, perversity: Option<&str>) -> PyResult<Vec<usize>> {
        let p = self.perversity(perversity)?;
        let b = Arc::clone(&self.inner);
        py.detach(move || b.cohomology_dims(&p)).map_err(to_py)
    }

    /// Matrix of `Sq^i` on degree `k` as a list of rows.
    #[pyo3(signature = (k, i, perversity=None))]
    fn square_matrix(
        &self,
        py: Python<'_>,
        k: usize,
        i: i64,
        perversity: Option<&str>,
    ) -> PyResult<Vec<Vec<u32>>> {
        let p = self.perversity(perversity)?;
        let b = Arc::clone(&self.inner);
        let m = py
            .detach(move || square_matrix(&b, &p, k, i))
            .map_err(to_py)?;
        Ok(m.rows()
            .iter()
            .map(|r| r.to_bools().into_iter().map(u32::from).collect())
            .collect())
    }

    /// Square of one class: `(target coordinates, witness perverse degree)`.
    #[pyo3(signature = (k, coords, i, perversity=None))]
    fn square(
        &self,
        k: usize,
        coords: Vec<bool>,
        i: i64,
        perversity: Option<&str>,
    ) -> PyResult<(Vec<u32>, Vec<String>)> {
        let p = self.perversity(perversity)?;
        let class = perverse_steenrod::gf2::BitVec::from_bools(&coords);
        let r = steenrod_square(&self.inner, &p, k, &class, i).map_err(to_py)?;
        Ok((
            r.coords.to_bools().into_iter().map(u32::from).collect(),
            r.witness_degree.iter().map(ToString::to_string).collect(),
        ))
    }

    /// Runs the property suite; returns `(passed, report)`.
    #[pyo3(signature = (seed=0, pairs=200))]
    fn verify(&self, py: Python<'_>, seed: u64, pairs: usize) -> PyResult<(bool, String)> {
        let b = Arc::clone(&self.inner);
        let cfg = VerifyConfig {
            seed,
            pairs,
            ..VerifyConfig::default()
        };
        let report = py
            .detach(move || verify_suite("input", &b, &cfg))
            .map_err(to_py)?;
        Ok((report.passed(), report.to_string()))
    }
}

#[pyfunction]
fn corpus_names() -> Vec<&'static str> {
    corpus::NAMES.to_vec()
}

#[pymodule]
fn perverse_steenrod_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyFiltered>()?;
    m.add_class::<PyBlowup>()?;
    m.add_function(wrap_pyfunction!(corpus_names, m)?)?;
    Ok(())
}
