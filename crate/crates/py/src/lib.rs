//! Python module `twoop_py`.

use std::collections::BTreeMap;

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde_json::Value;

use twoop_core::action::{cup_and_homotopy, hochschild, triv_factorization_check, DgDiagram};
use twoop_core::chain_complex::{augmentation_qiso_check, realize_seq, ChainComplex as CoreComplex};
use twoop_core::dg_cat::{corpus, DgCategory as CoreCategory};
use twoop_core::linalg::Field;
use twoop_core::seq::{self, ColoredSeq};
use twoop_core::two_ordinal::{self, TwoOrdinal as CoreShape, TwoOrdinalMap as CoreMap};

create_exception!(twoop_py, TwoopError, PyValueError);

fn err(e: twoop_core::Error) -> PyErr {
    TwoopError::new_err(e.to_string())
}

fn parse(s: &str) -> PyResult<Value> {
    serde_json::from_str(s).map_err(|e| TwoopError::new_err(e.to_string()))
}

fn dump<T: serde::Serialize + ?Sized>(v: &T) -> String {
    serde_json::to_string(v).expect("JSON values serialize")
}

/// A 2-ordinal given by its column sizes.
#[pyclass(frozen, eq, hash, skip_from_py_object, module = "twoop_py")]
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TwoOrdinal(CoreShape);

#[pymethods]
impl TwoOrdinal {
    #[new]
    fn new(columns: Vec<usize>) -> PyResult<Self> {
        CoreShape::new(columns).map(Self).map_err(err)
    }

    #[staticmethod]
    fn globe() -> Self {
        Self(CoreShape::globe())
    }

    #[getter]
    fn columns(&self) -> Vec<usize> {
        self.0.columns().to_vec()
    }

    fn num_objects(&self) -> usize {
        self.0.num_objects()
    }

    fn num_cells(&self) -> usize {
        self.0.num_cells()
    }

    /// `(column, index)` of every 2-cell, in flat order.
    fn cells(&self) -> Vec<(usize, usize)> {
        self.0.cells()
    }

    fn to_json(&self) -> String {
        dump(&self.0)
    }

    fn __repr__(&self) -> String {
        format!("TwoOrdinal({:?})", self.0.columns())
    }
}

#[pyclass(frozen, skip_from_py_object, module = "twoop_py")]
#[derive(Clone)]
pub struct TwoOrdinalMap(CoreMap);

#[pymethods]
impl TwoOrdinalMap {
    #[staticmethod]
    fn from_json(s: &str) -> PyResult<Self> {
        serde_json::from_value(parse(s)?).map(Self).map_err(|e| TwoopError::new_err(e.to_string()))
    }

    #[staticmethod]
    fn identity(u: &TwoOrdinal) -> Self {
        Self(CoreMap::identity(&u.0))
    }

    #[staticmethod]
    fn terminal(u: &TwoOrdinal) -> Self {
        Self(CoreMap::terminal(&u.0))
    }

    #[getter]
    fn src(&self) -> TwoOrdinal {
        TwoOrdinal(self.0.src().clone())
    }

    #[getter]
    fn dst(&self) -> TwoOrdinal {
        TwoOrdinal(self.0.dst().clone())
    }

    #[getter]
    fn obj(&self) -> Vec<usize> {
        self.0.obj().to_vec()
    }

    /// `self` followed by `next`.
    fn then(&self, next: &TwoOrdinalMap) -> PyResult<Self> {
        self.0.then(&next.0).map(Self).map_err(err)
    }

    /// Shape of the preimage of the globe at a target 2-cell.
    fn preimage_shape(&self, cell: (usize, usize)) -> PyResult<TwoOrdinal> {
        let b = self.0.preimage_ball(&self.0.dst().globe_ball(cell)).map_err(err)?;
        Ok(TwoOrdinal(b.shape()))
    }

    fn to_json(&self) -> String {
        dump(&self.0)
    }

    fn __eq__(&self, other: &TwoOrdinalMap) -> bool {
        self.0 == other.0
    }
}

#[pyfunction]
#[pyo3(signature = (u, v, guard = 1 << 20))]
fn enumerate_maps(u: &TwoOrdinal, v: &TwoOrdinal, guard: usize) -> PyResult<Vec<TwoOrdinalMap>> {
    Ok(two_ordinal::enumerate_maps(&u.0, &v.0, guard).map_err(err)?.into_iter().map(TwoOrdinalMap).collect())
}

#[pyclass(frozen, eq, skip_from_py_object, module = "twoop_py")]
#[derive(Clone, PartialEq, Eq)]
pub struct Coloring(seq::Coloring);

#[pymethods]
impl Coloring {
    #[new]
    fn new(shape: &TwoOrdinal, inputs: Vec<usize>, output: usize) -> PyResult<Self> {
        seq::Coloring::new(shape.0.clone(), inputs, output).map(Self).map_err(err)
    }

    #[staticmethod]
    fn uniform(shape: &TwoOrdinal, input: usize, output: usize) -> PyResult<Self> {
        seq::Coloring::uniform(shape.0.clone(), input, output).map(Self).map_err(err)
    }

    #[staticmethod]
    fn from_json(s: &str) -> PyResult<Self> {
        seq::Coloring::from_json(&parse(s)?).map(Self).map_err(err)
    }

    #[getter]
    fn shape(&self) -> TwoOrdinal {
        TwoOrdinal(self.0.shape.clone())
    }

    #[getter]
    fn inputs(&self) -> Vec<usize> {
        self.0.inputs.clone()
    }

    #[getter]
    fn output(&self) -> usize {
        self.0.output
    }

    fn to_json(&self) -> String {
        dump(&self.0.to_json())
    }
}

/// A validated element of `seq` together with its coloring.
#[pyclass(frozen, eq, from_py_object, module = "twoop_py")]
#[derive(Clone, PartialEq, Eq)]
pub struct SeqElement(ColoredSeq);

#[pymethods]
impl SeqElement {
    /// `word` lists flat 2-cell indices, `w` the values.
    #[new]
    fn new(coloring: &Coloring, word: Vec<usize>, w: Vec<usize>) -> PyResult<Self> {
        ColoredSeq::new(coloring.0.clone(), seq::SeqElement::new(word, w)).map(Self).map_err(err)
    }

    #[staticmethod]
    fn globe_identity(n: usize) -> Self {
        Self(ColoredSeq::globe_identity(n))
    }

    #[getter]
    fn coloring(&self) -> Coloring {
        Coloring(self.0.coloring.clone())
    }

    #[getter]
    fn word(&self) -> Vec<usize> {
        self.0.element.word.clone()
    }

    #[getter]
    fn w(&self) -> Vec<usize> {
        self.0.element.w.clone()
    }

    fn to_json(&self) -> String {
        dump(&self.0.element.to_json(&self.0.coloring.shape))
    }

    fn __repr__(&self) -> String {
        format!("SeqElement(word={:?}, w={:?})", self.0.element.word, self.0.element.w)
    }
}

#[pyfunction]
#[pyo3(signature = (coloring, guard = 1 << 20))]
fn enumerate_seq(coloring: &Coloring, guard: usize) -> PyResult<Vec<SeqElement>> {
    let elems = seq::enumerate_seq(&coloring.0, guard).map_err(err)?;
    Ok(elems.into_iter().map(|e| SeqElement(ColoredSeq { coloring: coloring.0.clone(), element: e })).collect())
}

/// Composition along `p`: `inner[g]` sits on the preimage of target cell `g`.
#[pyfunction]
fn compose_seq(p: &TwoOrdinalMap, inner: Vec<SeqElement>, outer: &SeqElement) -> PyResult<SeqElement> {
    let inner: Vec<ColoredSeq> = inner.into_iter().map(|e| e.0).collect();
    seq::compose_seq(&p.0, &inner, &outer.0).map(SeqElement).map_err(err)
}

#[pyclass(frozen, module = "twoop_py")]
pub struct ChainComplex(CoreComplex);

#[pymethods]
impl ChainComplex {
    #[staticmethod]
    fn from_json(s: &str) -> PyResult<Self> {
        CoreComplex::from_json(&parse(s)?).map(Self).map_err(err)
    }

    fn dims(&self) -> BTreeMap<i64, usize> {
        self.0.dims()
    }

    /// Homology dimensions, optionally over another field (`"Q"`, `"Fp:p"`).
    #[pyo3(signature = (field = None))]
    fn homology(&self, field: Option<&str>) -> PyResult<BTreeMap<i64, usize>> {
        let c = match field {
            Some(f) => self.0.clone().with_field(Field::parse(f).map_err(err)?),
            None => self.0.clone(),
        };
        c.homology().map_err(err)
    }

    fn to_json(&self) -> String {
        dump(&self.0.to_json())
    }
}

/// Returns `(exhausted, max_degree, homology)` of the realization.
#[pyfunction]
#[pyo3(signature = (coloring, degree_bound = 64))]
fn realize(coloring: &Coloring, degree_bound: usize) -> PyResult<(bool, usize, BTreeMap<i64, usize>)> {
    let r = realize_seq(&coloring.0, degree_bound).map_err(err)?;
    Ok((r.exhausted, r.max_degree, r.lower.complex.homology().map_err(err)?))
}

#[pyfunction]
#[pyo3(signature = (shape, output = 1, degree_bound = 64))]
fn verify_contractible(shape: &TwoOrdinal, output: usize, degree_bound: usize) -> PyResult<bool> {
    let col = seq::Coloring::uniform(shape.0.clone(), 1, output).map_err(err)?;
    Ok(augmentation_qiso_check(&col, degree_bound).map_err(err)?.pass)
}

#[pyclass(frozen, module = "twoop_py")]
pub struct DgCategory(CoreCategory);

#[pymethods]
impl DgCategory {
    #[staticmethod]
    fn from_json(s: &str) -> PyResult<Self> {
        CoreCategory::from_json(&parse(s)?).map(Self).map_err(err)
    }

    /// One of `ground`, `dual_numbers`, `upper_triangular`, `graded`,
    /// `path_a2`, `truncated_polynomial_<n>`.
    #[staticmethod]
    fn builtin(name: &str) -> PyResult<Self> {
        let c = match name {
            "ground" => corpus::ground(),
            "dual_numbers" => corpus::dual_numbers(),
            "upper_triangular" => corpus::upper_triangular(),
            "graded" => corpus::graded(),
            "path_a2" => corpus::path_a2(),
            _ => match name.strip_prefix("truncated_polynomial_").and_then(|n| n.parse().ok()) {
                Some(n) if n > 0 => corpus::truncated_polynomial(n),
                _ => return Err(TwoopError::new_err(format!("unknown category {name}"))),
            },
        };
        Ok(Self(c))
    }

    fn num_objects(&self) -> usize {
        self.0.num_objects()
    }

    /// Hochschild cohomology in the degrees the truncation computes exactly.
    #[pyo3(signature = (degree_bound = 3))]
    fn hochschild(&self, degree_bound: usize) -> PyResult<BTreeMap<i64, usize>> {
        hochschild(&self.0, degree_bound).and_then(|h| h.cohomology()).map_err(err)
    }

    /// JSON report of the cup products, their homotopy and the vertical product.
    #[pyo3(signature = (level_bound = 2))]
    fn cup_report(&self, level_bound: usize) -> PyResult<String> {
        Ok(dump(&cup_and_homotopy(&self.0, level_bound).map_err(err)?))
    }

    /// Whether strict inputs on the constant diagram act through the
    /// terminal operad for every element of the coloring.
    fn acts_through_triv(&self, coloring: &Coloring) -> PyResult<bool> {
        let diag = DgDiagram::constant(coloring.0.shape.clone(), &self.0);
        let r = triv_factorization_check(&diag, &coloring.0, 1 << 16).map_err(err)?;
        Ok(r.all_equal && r.strict_output && r.matches_paste)
    }

    fn to_json(&self) -> String {
        dump(&self.0.to_json())
    }
}

#[pymodule]
fn twoop_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("TwoopError", m.py().get_type::<TwoopError>())?;
    m.add_class::<TwoOrdinal>()?;
    m.add_class::<TwoOrdinalMap>()?;
    m.add_class::<Coloring>()?;
    m.add_class::<SeqElement>()?;
    m.add_class::<ChainComplex>()?;
    m.add_class::<DgCategory>()?;
    m.add_function(wrap_pyfunction!(enumerate_maps, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_seq, m)?)?;
    m.add_function(wrap_pyfunction!(compose_seq, m)?)?;
    m.add_function(wrap_pyfunction!(realize, m)?)?;
    m.add_function(wrap_pyfunction!(verify_contractible, m)?)?;
    Ok(())
}
