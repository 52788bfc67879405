//! Python bindings: `import rvt`.

use num_bigint::BigUint;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use rvt_core::monsters::{BabyMonsterRecord, PlaneConfiguration as CoreConfiguration};
use rvt_core::{Error, RvtWord};

fn to_py(e: Error) -> PyErr {
    match e {
        Error::InternalMismatch(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn parse(text: &str) -> PyResult<RvtWord> {
    let word = rvt_core::parse_word(text).map_err(to_py)?;
    rvt_core::validate(&word).map_err(to_py)?;
    Ok(word)
}

/// A validated RVT word.
#[pyclass(frozen, skip_from_py_object, eq, hash, module = "rvt")]
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word {
    inner: RvtWord,
}

#[pymethods]
impl Word {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(Word {
            inner: parse(text)?,
        })
    }

    fn letters(&self) -> Vec<String> {
        self.inner.letters().iter().map(|l| l.to_string()).collect()
    }

    /// Plane set over the terminal point, e.g. `["V", "T2"]`.
    fn planes(&self) -> Vec<String> {
        plane_names(rvt_core::validate(&self.inner).expect("validated on construction"))
    }

    fn next_letters(&self) -> Vec<String> {
        let state = rvt_core::validate(&self.inner).expect("validated on construction");
        rvt_core::allowed_letters(state)
            .iter()
            .map(|l| l.to_string())
            .collect()
    }

    fn rc(&self) -> String {
        rvt_core::rc_code(&self.inner)
            .expect("validated")
            .to_string()
    }

    fn pfaffian(&self) -> Vec<String> {
        rvt_core::pfaffian_system(&self.inner)
            .expect("validated")
            .constraints
            .iter()
            .map(|c| c.to_string())
            .collect()
    }

    fn configuration(&self) -> PyResult<PlaneConfiguration> {
        rvt_core::configuration(&self.inner)
            .map(PlaneConfiguration::from)
            .map_err(to_py)
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Word('{}')", self.inner)
    }
}

fn plane_names(state: rvt_core::PlaneSet) -> Vec<String> {
    let mut names = Vec::new();
    if state.vertical {
        names.push("V".to_string());
    }
    if state.t1 {
        names.push("T1".to_string());
    }
    if state.t2 {
        names.push("T2".to_string());
    }
    names
}

/// A Baby Monster `δʲᵢ` and the plane it leaves over the terminal point.
#[pyclass(frozen, skip_from_py_object, get_all, module = "rvt")]
#[derive(Clone)]
pub struct BabyMonster {
    birth_level: usize,
    prolongations: usize,
    form: String,
    delta: String,
    trace: Vec<String>,
    vanishing: String,
}

impl From<&BabyMonsterRecord> for BabyMonster {
    fn from(r: &BabyMonsterRecord) -> Self {
        BabyMonster {
            birth_level: r.birth_level,
            prolongations: r.prolongations,
            form: r.form().to_string(),
            delta: r.delta().to_string(),
            trace: r.trace.iter().map(|p| p.form().to_string()).collect(),
            vanishing: r.vanishing.to_string(),
        }
    }
}

#[pymethods]
impl BabyMonster {
    fn __repr__(&self) -> String {
        format!("BabyMonster({} {})", self.form, self.delta)
    }
}

#[pyclass(frozen, skip_from_py_object, get_all, module = "rvt")]
#[derive(Clone)]
pub struct PlaneConfiguration {
    word: String,
    vertical: BabyMonster,
    t1: Vec<BabyMonster>,
    t2: Vec<BabyMonster>,
    lines: Vec<String>,
}

impl From<CoreConfiguration> for PlaneConfiguration {
    fn from(c: CoreConfiguration) -> Self {
        PlaneConfiguration {
            word: c.word.to_string(),
            vertical: (&c.vertical).into(),
            t1: c.t1_sources.iter().map(Into::into).collect(),
            t2: c.t2_sources.iter().map(Into::into).collect(),
            lines: c.lines().letters().map(|l| l.to_string()).collect(),
        }
    }
}

#[pymethods]
impl PlaneConfiguration {
    fn __repr__(&self) -> String {
        let names = |v: &[BabyMonster]| v.iter().map(|b| b.delta.clone()).collect::<Vec<_>>();
        format!(
            "PlaneConfiguration({}: V {}, T1 {:?}, T2 {:?})",
            self.word,
            self.vertical.delta,
            names(&self.t1),
            names(&self.t2)
        )
    }
}

#[pyfunction]
fn validate(text: &str) -> PyResult<Vec<String>> {
    Ok(plane_names(
        rvt_core::validate(&parse(text)?).map_err(to_py)?,
    ))
}

#[pyfunction]
fn configuration(text: &str) -> PyResult<PlaneConfiguration> {
    Word::new(text)?.configuration()
}

#[pyfunction]
fn count_words(level: usize) -> BigUint {
    rvt_core::count_words(level)
}

#[pyfunction]
fn enumerate_words(level: usize) -> Vec<String> {
    rvt_core::enumerate_words(level)
        .map(|w| w.to_string())
        .collect()
}

/// Per-row `(passed, instances)` of the code-family grid.
#[pyfunction]
#[pyo3(signature = (max_m = 2, max_s = 3))]
fn table2_summary(max_m: usize, max_s: usize) -> Vec<(String, usize, usize)> {
    let report = rvt_core::verify::table2_grid(max_m, max_s, &rvt_core::verify::default_prefixes());
    report
        .rows
        .iter()
        .map(|r| (r.row.to_string(), r.passed, r.instances))
        .collect()
}

#[pyfunction]
fn cross_check(max_level: usize) -> (bool, Vec<String>) {
    let summary = rvt_core::verify::cross_check(max_level);
    (summary.passed(), summary.failures)
}

#[pymodule]
fn rvt(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Word>()?;
    m.add_class::<BabyMonster>()?;
    m.add_class::<PlaneConfiguration>()?;
    m.add_function(wrap_pyfunction!(validate, m)?)?;
    m.add_function(wrap_pyfunction!(configuration, m)?)?;
    m.add_function(wrap_pyfunction!(count_words, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_words, m)?)?;
    m.add_function(wrap_pyfunction!(table2_summary, m)?)?;
    m.add_function(wrap_pyfunction!(cross_check, m)?)?;
    Ok(())
}
