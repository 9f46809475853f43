//! Python bindings: parabolic elements, diagrams, shadow-colorings and the
//! complex-volume pipeline, mirroring the Rust API.

use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A parabolic PSL(2,C) element as a representative (alpha, beta) in C².
#[pyclass(name = "Parabolic", from_py_object)]
#[derive(Clone)]
struct PyParabolic(optlim::Parabolic);

#[pymethods]
impl PyParabolic {
    #[new]
    fn new(alpha: Complex64, beta: Complex64) -> PyResult<Self> {
        let p = optlim::Parabolic::new(alpha, beta);
        if p.is_zero() {
            return Err(PyValueError::new_err("(0, 0) is not a parabolic element"));
        }
        Ok(PyParabolic(p))
    }

    #[getter]
    fn alpha(&self) -> Complex64 {
        self.0.alpha
    }

    #[getter]
    fn beta(&self) -> Complex64 {
        self.0.beta
    }

    /// Quandle operation: conjugation of self by other.
    fn star(&self, other: &PyParabolic) -> PyParabolic {
        PyParabolic(optlim::quandle::star(&self.0, &other.0))
    }

    /// Inverse quandle operation.
    fn star_inv(&self, other: &PyParabolic) -> PyParabolic {
        PyParabolic(optlim::quandle::star_inv(&self.0, &other.0))
    }

    /// Fixed point alpha/beta on CP¹; None encodes infinity.
    fn hopf(&self) -> Option<Complex64> {
        match optlim::quandle::hopf(&self.0) {
            optlim::quandle::HopfValue::Finite(z) => Some(z),
            optlim::quandle::HopfValue::Infinity => None,
        }
    }

    fn __repr__(&self) -> String {
        format!("Parabolic({}, {})", self.0.alpha, self.0.beta)
    }
}

/// A parsed oriented link diagram.
#[pyclass(name = "LinkDiagram")]
struct PyLinkDiagram(optlim::LinkDiagram);

#[pymethods]
impl PyLinkDiagram {
    #[getter]
    fn n_crossings(&self) -> usize {
        self.0.n_crossings()
    }

    #[getter]
    fn n_regions(&self) -> usize {
        self.0.n_regions()
    }

    #[getter]
    fn n_arcs(&self) -> usize {
        self.0.arcs.len()
    }

    #[getter]
    fn signs(&self) -> Vec<i8> {
        self.0.signs.clone()
    }

    /// (a, b, c, d) region indices (0-based) per crossing.
    #[getter]
    fn quadrants(&self) -> Vec<[usize; 4]> {
        self.0.quadrants.clone()
    }

    /// The symbolic potential function, one bracket per crossing.
    fn potential_text(&self) -> String {
        optlim::build_potential(&self.0).to_string()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }
}

/// Parse a PD-code block into a LinkDiagram.
#[pyfunction]
fn parse_diagram(text: &str) -> PyResult<PyLinkDiagram> {
    optlim::parse_diagram(text).map(PyLinkDiagram).map_err(err)
}

/// Principal-branch complex dilogarithm.
#[pyfunction]
fn dilog(z: Complex64) -> Complex64 {
    optlim::dilog(z)
}

fn unwrap_colors(colors: Vec<PyParabolic>) -> Vec<optlim::Parabolic> {
    colors.into_iter().map(|c| c.0).collect()
}

/// Check the per-crossing arc relations; returns the realized signs.
#[pyfunction]
fn verify_arc_coloring(diagram: &PyLinkDiagram, arcs: Vec<PyParabolic>) -> PyResult<Vec<i8>> {
    optlim::coloring::verify_arc_coloring(
        &diagram.0,
        &unwrap_colors(arcs),
        optlim::coloring::CONSISTENCY_TOL,
    )
    .map_err(err)
}

/// Propagate region colors from a seed color at `seed_region` (0-based).
#[pyfunction]
fn propagate_regions(
    diagram: &PyLinkDiagram,
    arcs: Vec<PyParabolic>,
    seed_region: usize,
    seed_color: PyParabolic,
) -> PyResult<Vec<PyParabolic>> {
    optlim::coloring::propagate_regions(
        &diagram.0,
        &unwrap_colors(arcs),
        seed_region,
        seed_color.0,
    )
    .map(|v| v.into_iter().map(PyParabolic).collect())
    .map_err(err)
}

/// Search for a region coloring satisfying the separation condition.
#[pyfunction]
#[pyo3(signature = (diagram, arcs, rng_seed = 0))]
fn find_region_coloring(
    diagram: &PyLinkDiagram,
    arcs: Vec<PyParabolic>,
    rng_seed: u64,
) -> PyResult<Vec<PyParabolic>> {
    optlim::coloring::find_region_coloring(&diagram.0, &unwrap_colors(arcs), rng_seed)
        .map(|v| v.into_iter().map(PyParabolic).collect())
        .map_err(err)
}

/// Choose (or validate) the auxiliary point p.
#[pyfunction]
#[pyo3(signature = (arcs, regions, rng_seed = 0, candidate = None))]
fn find_p(
    arcs: Vec<PyParabolic>,
    regions: Vec<PyParabolic>,
    rng_seed: u64,
    candidate: Option<PyParabolic>,
) -> PyResult<PyParabolic> {
    optlim::coloring::find_p(
        &unwrap_colors(arcs),
        &unwrap_colors(regions),
        rng_seed,
        candidate.map(|c| c.0),
    )
    .map(PyParabolic)
    .map_err(err)
}

/// The explicit solution w0_k = det(p, s_k).
#[pyfunction]
fn solution_w0(regions: Vec<PyParabolic>, p: &PyParabolic) -> PyResult<Vec<Complex64>> {
    optlim::volume::solution_w0(&unwrap_colors(regions), &p.0).map_err(err)
}

/// Full pipeline; returns a dict with w0, residual, vol, cs and check data.
#[pyfunction]
#[pyo3(signature = (diagram, arcs, regions, p, tolerance = 1e-9))]
fn complex_volume<'py>(
    py: Python<'py>,
    diagram: &PyLinkDiagram,
    arcs: Vec<PyParabolic>,
    regions: Vec<PyParabolic>,
    p: &PyParabolic,
    tolerance: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let coloring = optlim::ShadowColoring {
        arcs: unwrap_colors(arcs),
        regions: unwrap_colors(regions),
        p: p.0,
    };
    let rep = optlim::complex_volume(&diagram.0, &coloring, tolerance).map_err(err)?;
    let out = PyDict::new(py);
    out.set_item("w0", rep.w0)?;
    out.set_item("max_residual", rep.max_residual)?;
    out.set_item(
        "max_cross_ratio_error",
        rep.cross_ratio_checks
            .iter()
            .map(|c| c.error)
            .fold(0.0, f64::max),
    )?;
    out.set_item("W0", rep.w0_raw)?;
    out.set_item("vol", rep.vol)?;
    out.set_item("cs", rep.cs)?;
    out.set_item("sign_choices", rep.sign_choices)?;
    Ok(out)
}

/// Run a JSON job document end to end; returns the JSON report as a string.
#[pyfunction]
fn run_job(job_json: &str) -> PyResult<String> {
    let job: optlim::JobInput = serde_json::from_str(job_json).map_err(err)?;
    let report = optlim::run_job(&job, None).map_err(err)?;
    serde_json::to_string_pretty(&report).map_err(err)
}

#[pymodule]
fn optlim_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyParabolic>()?;
    m.add_class::<PyLinkDiagram>()?;
    m.add_function(wrap_pyfunction!(parse_diagram, m)?)?;
    m.add_function(wrap_pyfunction!(dilog, m)?)?;
    m.add_function(wrap_pyfunction!(verify_arc_coloring, m)?)?;
    m.add_function(wrap_pyfunction!(propagate_regions, m)?)?;
    m.add_function(wrap_pyfunction!(find_region_coloring, m)?)?;
    m.add_function(wrap_pyfunction!(find_p, m)?)?;
    m.add_function(wrap_pyfunction!(solution_w0, m)?)?;
    m.add_function(wrap_pyfunction!(complex_volume, m)?)?;
    m.add_function(wrap_pyfunction!(run_job, m)?)?;
    Ok(())
}
