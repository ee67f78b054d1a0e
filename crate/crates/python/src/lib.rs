//! Python bindings: `import dcross_py`.

use std::collections::BTreeMap;

use dcross::arrangements::{self as arr, ArrangementSpec};
use dcross::bounds;
use dcross::closed_forms::{self as cf, Formula, FormulaArgs};
use dcross::formats::{self, LayoutFile};
use dcross::geom::{self, Point2};
use dcross::threshold::{self, ThresholdConfig};
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

create_exception!(dcross_py, DegenerateLayoutError, PyException);
create_exception!(dcross_py, NumericError, PyException);

fn to_py(e: dcross::Error) -> PyErr {
    use dcross::Error as E;
    let msg = e.to_string();
    match e {
        E::DegenerateLayout(_) | E::ClassInconsistent { .. } => DegenerateLayoutError::new_err(msg),
        E::NotMonotone { .. } | E::NoBalancedRadius { .. } | E::NoConvergence { .. } | E::Sampling(_) => {
            NumericError::new_err(msg)
        }
        _ => PyValueError::new_err(msg),
    }
}

fn points(v: &[(f64, f64)]) -> Vec<Point2> {
    v.iter().map(|&(x, y)| Point2::new(x, y)).collect()
}

fn pairs(v: &[Point2]) -> Vec<(f64, f64)> {
    v.iter().map(|p| (p.x, p.y)).collect()
}

/// Two point sets; every point of `part_a` is joined to every point of `part_b`.
#[pyclass(name = "Layout", from_py_object)]
#[derive(Clone)]
struct PyLayout {
    inner: geom::Layout,
    spec: Option<ArrangementSpec>,
}

#[pymethods]
impl PyLayout {
    #[new]
    fn new(part_a: Vec<(f64, f64)>, part_b: Vec<(f64, f64)>) -> Self {
        Self {
            inner: geom::Layout::new(points(&part_a), points(&part_b)),
            spec: None,
        }
    }

    #[getter]
    fn part_a(&self) -> Vec<(f64, f64)> {
        pairs(&self.inner.part_a)
    }

    #[getter]
    fn part_b(&self) -> Vec<(f64, f64)> {
        pairs(&self.inner.part_b)
    }

    #[getter]
    fn arrangement(&self) -> Option<&'static str> {
        self.spec.as_ref().map(ArrangementSpec::name)
    }

    /// Crossing count; `method` is "brute" or "partition".
    #[pyo3(signature = (method = "brute"))]
    fn count(&self, method: &str) -> PyResult<u64> {
        let rep = match method {
            "brute" => geom::count_crossings_brute(&self.inner),
            "partition" => geom::count_crossings_partition_layout(&self.inner),
            other => return Err(PyValueError::new_err(format!("unknown method '{other}'"))),
        };
        rep.map(|r| r.count).map_err(to_py)
    }

    fn validate(&self) -> PyResult<()> {
        self.inner.validate().map_err(to_py)
    }

    /// Layout file JSON; only for generated layouts.
    fn to_json(&self) -> PyResult<String> {
        let spec = self
            .spec
            .as_ref()
            .ok_or_else(|| PyValueError::new_err("layout has no arrangement metadata"))?;
        Ok(LayoutFile::new(&self.inner, spec).to_json())
    }

    #[pyo3(signature = (width = 600))]
    fn to_svg(&self, width: u32) -> PyResult<String> {
        let json = self.to_json()?;
        let file = LayoutFile::from_json(&json).map_err(to_py)?;
        Ok(formats::render_svg(&file, width))
    }

    fn __len__(&self) -> usize {
        self.inner.edge_count()
    }

    fn __repr__(&self) -> String {
        format!(
            "Layout(m={}, n={}, arrangement={:?})",
            self.inner.m(),
            self.inner.n(),
            self.arrangement()
        )
    }
}

fn generated(spec: ArrangementSpec) -> PyResult<PyLayout> {
    let (inner, used) = spec.generate().map_err(to_py)?;
    Ok(PyLayout {
        inner,
        spec: Some(used),
    })
}

/// Double circular arrangement: `m` vertices on radius `r`, `n` on `outer_r`.
#[pyclass(name = "DCParams", from_py_object)]
#[derive(Clone)]
struct PyDCParams {
    inner: arr::DCParams,
}

#[pymethods]
impl PyDCParams {
    #[new]
    #[pyo3(signature = (m, n, r, outer_r = 1.0, phi_in = 0.0, phi_out = None))]
    fn new(m: usize, n: usize, r: f64, outer_r: f64, phi_in: f64, phi_out: Option<f64>) -> PyResult<Self> {
        let phi_out = phi_out.unwrap_or_else(|| arr::DCParams::default_phi_out(m, n));
        arr::DCParams::with_rotation(m, n, r, outer_r, phi_in, phi_out)
            .map(|inner| Self { inner })
            .map_err(to_py)
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m
    }
    #[getter]
    fn n(&self) -> usize {
        self.inner.n
    }
    #[getter]
    fn r(&self) -> f64 {
        self.inner.r
    }
    #[getter]
    fn outer_r(&self) -> f64 {
        self.inner.outer_r
    }
    #[getter]
    fn phi_in(&self) -> f64 {
        self.inner.phi_in
    }
    #[getter]
    fn phi_out(&self) -> f64 {
        self.inner.phi_out
    }

    fn layout(&self) -> PyResult<PyLayout> {
        generated(ArrangementSpec::Dc(self.inner))
    }

    fn is_min_crossing(&self) -> PyResult<bool> {
        threshold::is_min_crossing_config(&self.inner).map_err(to_py)
    }

    fn measured_delta(&self) -> PyResult<i64> {
        bounds::measured_delta(&self.inner).map_err(to_py)
    }

    /// (lower, upper) bounds on the excess crossing count.
    fn lemma1_bounds(&self) -> PyResult<(u64, u64)> {
        cf::lemma1_bounds(&self.inner).map(|b| (b.lower, b.upper)).map_err(to_py)
    }

    fn betas(&self) -> Vec<u64> {
        cf::beta_profile(&self.inner).betas
    }

    /// One dict per line class: j, d_j, line_distance, u, l, beta, diameter.
    fn line_classes(&self, py: Python<'_>) -> PyResult<Vec<Py<PyAny>>> {
        let stats = threshold::line_class_stats(&self.inner).map_err(to_py)?;
        stats
            .into_iter()
            .map(|s| {
                let d = pyo3::types::PyDict::new(py);
                d.set_item("j", s.j)?;
                d.set_item("d_j", s.d_j)?;
                d.set_item("line_distance", s.line_distance)?;
                d.set_item("u", s.u_j)?;
                d.set_item("l", s.l_j)?;
                d.set_item("beta", s.beta_j)?;
                d.set_item("diameter", s.diameter)?;
                Ok(d.into_any().unbind())
            })
            .collect()
    }

    fn __repr__(&self) -> String {
        let p = &self.inner;
        format!(
            "DCParams(m={}, n={}, r={}, outer_r={}, phi_in={}, phi_out={})",
            p.m, p.n, p.r, p.outer_r, p.phi_in, p.phi_out
        )
    }
}

#[pyclass(name = "ThresholdResult", frozen, skip_from_py_object)]
struct PyThresholdResult {
    #[pyo3(get)]
    t_cr: f64,
    #[pyo3(get)]
    bracket: (f64, f64),
    #[pyo3(get)]
    iterations: usize,
    #[pyo3(get)]
    rotation: (f64, f64),
    #[pyo3(get)]
    witness: Option<(usize, usize)>,
    #[pyo3(get)]
    saturated: bool,
}

#[pymethods]
impl PyThresholdResult {
    fn __repr__(&self) -> String {
        format!("ThresholdResult(t_cr={}, bracket={:?})", self.t_cr, self.bracket)
    }
}

#[pyfunction]
#[pyo3(signature = (m, n, outer_r = 1.0, phi_in = 0.0, phi_out = None, tol = 1e-10))]
fn crossing_threshold(
    m: usize,
    n: usize,
    outer_r: f64,
    phi_in: f64,
    phi_out: Option<f64>,
    tol: f64,
) -> PyResult<PyThresholdResult> {
    let cfg = ThresholdConfig {
        tol_bisect: tol,
        ..ThresholdConfig::default()
    };
    let phi_out = phi_out.unwrap_or_else(|| arr::DCParams::default_phi_out(m, n));
    let r = threshold::crossing_threshold(m, n, outer_r, phi_in, phi_out, &cfg).map_err(to_py)?;
    Ok(PyThresholdResult {
        t_cr: r.t_cr,
        bracket: r.bracket,
        iterations: r.iterations,
        rotation: r.rotation,
        witness: r.witness,
        saturated: r.saturated,
    })
}

#[pyfunction]
#[pyo3(signature = (m, n, spacing = 1.0))]
fn gen_dpl(m: usize, n: usize, spacing: f64) -> PyResult<PyLayout> {
    generated(ArrangementSpec::Dpl { m, n, spacing })
}

#[pyfunction]
#[pyo3(signature = (t, c, b, spacing = 1.0, line_gap = 1.0))]
fn gen_tpl(t: usize, c: usize, b: usize, spacing: f64, line_gap: f64) -> PyResult<PyLayout> {
    generated(ArrangementSpec::Tpl {
        t,
        c,
        b,
        spacing,
        line_gap,
    })
}

#[pyfunction]
#[pyo3(signature = (l, r_count, t, b, spacing = 1.0))]
fn gen_dol(l: usize, r_count: usize, t: usize, b: usize, spacing: f64) -> PyResult<PyLayout> {
    generated(ArrangementSpec::Dol {
        l,
        r_count,
        t,
        b,
        spacing,
    })
}

#[pyfunction]
#[pyo3(signature = (m, k, l, outer_r = 1.0))]
fn gen_lic(m: usize, k: usize, l: usize, outer_r: f64) -> PyResult<PyLayout> {
    generated(ArrangementSpec::Lic {
        m,
        k,
        l,
        r_circle: outer_r,
    })
}

#[pyfunction]
#[pyo3(signature = (m, n, outer_r = 1.0, seed = 0))]
fn gen_fic(m: usize, n: usize, outer_r: f64, seed: u64) -> PyResult<PyLayout> {
    generated(ArrangementSpec::Fic {
        m,
        n,
        r_circle: outer_r,
        seed,
    })
}

#[pyfunction]
fn load_layout(json: &str) -> PyResult<PyLayout> {
    let file = LayoutFile::from_json(json).map_err(to_py)?;
    let mut params = file.meta.params.clone();
    if let Some(map) = params.as_object_mut() {
        map.remove("rng");
        map.insert("arrangement".into(), file.meta.arrangement.clone().into());
    }
    Ok(PyLayout {
        inner: file.layout(),
        spec: serde_json::from_value(params).ok(),
    })
}

/// Closed-form count by name: dpl, tpl, tplmin, dol, dolmin, dolmax, lic,
/// licmin, dc, zarankiewicz, cyl, cyldiv. `tpl` and `lic` take `m` as the
/// center or inner count.
#[pyfunction]
#[pyo3(signature = (which, m = 0, n = 0, t = 0, b = 0, l = 0, r_count = 0, k = 0))]
#[allow(clippy::too_many_arguments)]
fn formula(which: &str, m: usize, n: usize, t: usize, b: usize, l: usize, r_count: usize, k: usize) -> PyResult<u64> {
    let f = match which {
        "dpl" => Formula::Dpl,
        "tpl" => Formula::Tpl,
        "tplmin" => Formula::TplMin,
        "dol" => Formula::Dol,
        "dolmin" => Formula::DolMin,
        "dolmax" => Formula::DolMax,
        "lic" => Formula::Lic,
        "licmin" => Formula::LicMin,
        "dc" => Formula::Dc,
        "zarankiewicz" => Formula::Zarankiewicz,
        "cyl" => Formula::Cyl,
        "cyldiv" => Formula::CylDivisible,
        other => return Err(PyValueError::new_err(format!("unknown formula '{other}'"))),
    };
    let args = FormulaArgs {
        m,
        n,
        t,
        b,
        l,
        r_count,
        k,
    };
    cf::evaluate(f, args).map(|r| r.value).map_err(to_py)
}

#[pyfunction]
fn cr_dc(m: usize, n: usize) -> PyResult<u64> {
    cf::cr_dc(m, n).map_err(to_py)
}

#[pyfunction]
fn count_crossings(part_a: Vec<(f64, f64)>, part_b: Vec<(f64, f64)>) -> PyResult<u64> {
    PyLayout::new(part_a, part_b).count("brute")
}

/// (min, max, histogram) of crossing counts over seeded random interior layouts.
#[pyfunction]
fn conjecture1_sweep(m: usize, n: usize, samples: usize, seed: u64) -> PyResult<(u64, u64, BTreeMap<u64, u64>)> {
    let s = bounds::conjecture1_sweep(m, n, samples, seed).map_err(to_py)?;
    Ok((s.min_count, s.max_count, s.histogram))
}

/// Sweep CSV text over `steps + 1` inner radii.
#[pyfunction]
#[pyo3(signature = (m, n, r_from, r_to, steps = 10, outer_r = 1.0, phi_in = 0.0, phi_out = None))]
#[allow(clippy::too_many_arguments)]
fn radius_sweep_csv(
    m: usize,
    n: usize,
    r_from: f64,
    r_to: f64,
    steps: usize,
    outer_r: f64,
    phi_in: f64,
    phi_out: Option<f64>,
) -> PyResult<String> {
    let base = PyDCParams::new(m, n, r_from, outer_r, phi_in, phi_out)?.inner;
    let rows = bounds::radius_sweep(&base, r_from, r_to, steps).map_err(to_py)?;
    Ok(formats::sweep_csv(&rows))
}

#[pymodule]
fn dcross_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add("DegenerateLayoutError", m.py().get_type::<DegenerateLayoutError>())?;
    m.add("NumericError", m.py().get_type::<NumericError>())?;
    m.add_class::<PyLayout>()?;
    m.add_class::<PyDCParams>()?;
    m.add_class::<PyThresholdResult>()?;
    m.add_function(wrap_pyfunction!(crossing_threshold, m)?)?;
    m.add_function(wrap_pyfunction!(gen_dpl, m)?)?;
    m.add_function(wrap_pyfunction!(gen_tpl, m)?)?;
    m.add_function(wrap_pyfunction!(gen_dol, m)?)?;
    m.add_function(wrap_pyfunction!(gen_lic, m)?)?;
    m.add_function(wrap_pyfunction!(gen_fic, m)?)?;
    m.add_function(wrap_pyfunction!(load_layout, m)?)?;
    m.add_function(wrap_pyfunction!(formula, m)?)?;
    m.add_function(wrap_pyfunction!(cr_dc, m)?)?;
    m.add_function(wrap_pyfunction!(count_crossings, m)?)?;
    m.add_function(wrap_pyfunction!(conjecture1_sweep, m)?)?;
    m.add_function(wrap_pyfunction!(radius_sweep_csv, m)?)?;
    Ok(())
}
