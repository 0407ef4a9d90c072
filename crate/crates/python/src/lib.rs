//! Python bindings: rule tables, CA evolution, task fitness and experiments.

use std::path::PathBuf;

use evoca_core::ca::{self, Configuration};
use evoca_core::harness::{self, ExperimentConfig};
use evoca_core::objectives::{self, IcBatch};
use evoca_core::render;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyBytes;

fn err(e: evoca_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn config(bits: &str) -> PyResult<Configuration> {
    bits.parse().map_err(err)
}

/// Lookup table of a radius-r rule, numbered the Wolfram way.
#[pyclass(name = "RuleTable", frozen, eq, skip_from_py_object, module = "evoca")]
#[derive(Clone, PartialEq)]
struct PyRuleTable(ca::RuleTable);

#[pymethods]
impl PyRuleTable {
    /// Parses `"r<radius>:<hex>"` or a decimal number for radius 1.
    #[new]
    fn new(spec: &str) -> PyResult<Self> {
        spec.parse().map(Self).map_err(err)
    }

    #[staticmethod]
    fn decode(number: u128, radius: u32) -> PyResult<Self> {
        ca::RuleTable::decode(number, radius).map(Self).map_err(err)
    }

    /// Builds a table from its outputs, indexed by neighborhood value.
    #[staticmethod]
    fn from_bits(radius: u32, bits: Vec<bool>) -> PyResult<Self> {
        ca::RuleTable::from_bits(radius, &bits).map(Self).map_err(err)
    }

    fn encode(&self) -> PyResult<u128> {
        self.0.encode().map_err(err)
    }

    fn to_bits(&self) -> Vec<bool> {
        self.0.to_bits()
    }

    #[getter]
    fn radius(&self) -> u32 {
        self.0.radius()
    }

    fn __getitem__(&self, pattern: usize) -> PyResult<bool> {
        if pattern >= self.0.len() {
            return Err(PyValueError::new_err(format!("pattern {pattern} out of range")));
        }
        Ok(self.0.get(pattern))
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("RuleTable('{}')", self.0)
    }
}

/// Spacetime history as 0/1 strings, IC first.
#[pyfunction]
fn evolve(rule: &PyRuleTable, ic: &str, steps: usize) -> PyResult<Vec<String>> {
    let history = ca::evolve(&config(ic)?, &rule.0, steps).map_err(err)?;
    Ok(history.rows().iter().map(|r| r.to_string()).collect())
}

/// Binary PBM image of the history, `scale` pixels per cell.
#[pyfunction]
#[pyo3(signature = (rule, ic, steps, scale = 1))]
fn render_pbm<'py>(py: Python<'py>, rule: &PyRuleTable, ic: &str, steps: usize, scale: usize) -> PyResult<Bound<'py, PyBytes>> {
    let history = ca::evolve(&config(ic)?, &rule.0, steps).map_err(err)?;
    Ok(PyBytes::new(py, &render::to_pbm(&history, scale)))
}

/// `count` flat-density ICs of width `n` as 0/1 strings.
#[pyfunction]
fn sample_flat_ic(n: usize, count: usize, seed: u64) -> PyResult<Vec<String>> {
    let batch = IcBatch::sample_flat(n, count, seed).map_err(err)?;
    Ok(batch.ics().iter().map(|c| c.to_string()).collect())
}

fn batch_of(ics: Vec<String>) -> PyResult<IcBatch> {
    let ics = ics.iter().map(|s| config(s)).collect::<PyResult<Vec<_>>>()?;
    let width = ics.first().map_or(0, |c| c.width());
    IcBatch::from_ics(width, 0, ics).map_err(err)
}

/// Fraction of `ics` the rule classifies correctly within `steps` steps.
#[pyfunction]
fn f100(rule: &PyRuleTable, ics: Vec<String>, steps: usize) -> PyResult<f64> {
    let batch = batch_of(ics)?;
    objectives::f100(&rule.0, &batch, steps).map(|f| f.value).map_err(err)
}

/// Mean compression-based chaos score over `ics`.
#[pyfunction]
fn chaos_fitness(rule: &PyRuleTable, ics: Vec<String>, steps: usize) -> PyResult<f64> {
    let batch = batch_of(ics)?;
    objectives::chaos_fitness(&rule.0, &batch, steps).map(|f| f.value).map_err(err)
}

/// Normalized compressed size of `data`.
#[pyfunction]
fn nc(data: &[u8]) -> PyResult<f64> {
    objectives::nc(data).map_err(err)
}

/// Per-row and whole-history compression score of one evolution.
#[pyfunction]
fn nc_pt(rule: &PyRuleTable, ic: &str, steps: usize) -> PyResult<f64> {
    let history = ca::evolve(&config(ic)?, &rule.0, steps).map_err(err)?;
    objectives::nc_pt(&history).map_err(err)
}

/// Runs an experiment from a JSON config (keys as in `config.json`) and
/// returns the summary as JSON. `output_dir` also writes the artifacts.
#[pyfunction]
#[pyo3(signature = (config_json = "{}", output_dir = None))]
fn run_experiment(py: Python<'_>, config_json: &str, output_dir: Option<PathBuf>) -> PyResult<String> {
    let mut cfg = ExperimentConfig::from_json(config_json).map_err(err)?;
    if output_dir.is_some() {
        cfg.output_dir = output_dir;
    }
    let summary = py.detach(|| harness::run_experiment(&cfg)).map_err(err)?;
    Ok(summary.to_json())
}

#[pymodule]
fn evoca(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRuleTable>()?;
    m.add_function(wrap_pyfunction!(evolve, m)?)?;
    m.add_function(wrap_pyfunction!(render_pbm, m)?)?;
    m.add_function(wrap_pyfunction!(sample_flat_ic, m)?)?;
    m.add_function(wrap_pyfunction!(f100, m)?)?;
    m.add_function(wrap_pyfunction!(chaos_fitness, m)?)?;
    m.add_function(wrap_pyfunction!(nc, m)?)?;
    m.add_function(wrap_pyfunction!(nc_pt, m)?)?;
    m.add_function(wrap_pyfunction!(run_experiment, m)?)?;
    m.add("COMPRESSOR", objectives::COMPRESSOR_ID)?;
    Ok(())
}
