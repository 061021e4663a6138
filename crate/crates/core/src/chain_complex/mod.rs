//! Finite cochain complexes over an exact field (differential of degree +1),
//! cosimplicial totalization, and the realization of the sequence operad.

mod cosimplicial;
mod lower;
mod operad;

pub use cosimplicial::{
    constant_complex, simplex_complex, totalize, ConstantCosimplicial, Cosimplicial, DegreeBounds, SimplexCosimplicial,
    Totalization,
};
pub use lower::{
    augmentation_qiso_check, enumerate_lower_cells, is_degenerate, lower_dims, lower_face, predicted_shape_dim,
    realize_seq, upper_image, AugmentationReport, LowerComplex, Realization,
};
pub use operad::{operad_compose_chains, OperadChain, OperadComplex};

use std::collections::BTreeMap;

use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::{scalar_from_json, scalar_to_json, sign, Accumulator, Field, Matrix, SparseVec};

/// A finite cochain complex on a flat graded basis.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainComplex {
    field: Field,
    degrees: Vec<i64>,
    d: Matrix,
}

impl ChainComplex {
    /// Checks degree bookkeeping and `d∘d = 0`.
    pub fn new(field: Field, degrees: Vec<i64>, d: Matrix) -> Result<Self> {
        let c = Self::new_unchecked(field, degrees, d)?;
        if !c.d.compose(&c.d).is_zero() {
            return Err(Error::Invariant("d∘d ≠ 0".into()));
        }
        Ok(c)
    }

    /// Checks shapes and degrees but not `d∘d = 0`.
    pub fn new_unchecked(field: Field, degrees: Vec<i64>, d: Matrix) -> Result<Self> {
        let n = degrees.len();
        if d.nrows != n || d.ncols() != n {
            return Err(Error::Shape(format!("differential is {}x{} on a basis of {n}", d.nrows, d.ncols())));
        }
        for (j, col) in d.cols.iter().enumerate() {
            if let Some((i, _)) = col.iter().find(|(i, _)| degrees[*i] != degrees[j] + 1) {
                return Err(Error::Shape(format!("d sends basis {j} (degree {}) to degree {}", degrees[j], degrees[i])));
            }
        }
        Ok(Self { field, degrees, d })
    }

    pub fn zero(field: Field) -> Self {
        Self { field, degrees: Vec::new(), d: Matrix::zero(0, 0) }
    }

    /// One basis vector in degree 0, zero differential.
    pub fn ground(field: Field) -> Self {
        Self { field, degrees: vec![0], d: Matrix::zero(1, 1) }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn with_field(mut self, field: Field) -> Self {
        self.field = field;
        self
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.degrees[i]
    }

    pub fn differential(&self) -> &Matrix {
        &self.d
    }

    pub fn apply_d(&self, v: &SparseVec) -> SparseVec {
        self.d.apply(v)
    }

    pub fn d_squared_is_zero(&self) -> bool {
        self.d.compose(&self.d).is_zero()
    }

    pub fn dims(&self) -> BTreeMap<i64, usize> {
        let mut m = BTreeMap::new();
        for &k in &self.degrees {
            *m.entry(k).or_insert(0) += 1;
        }
        m
    }

    pub fn basis_in_degree(&self, k: i64) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degrees[i] == k).collect()
    }

    /// Degree of a vector, if homogeneous and nonzero.
    pub fn degree_of(&self, v: &SparseVec) -> Option<i64> {
        let mut it = v.iter().map(|(i, _)| self.degrees[i]);
        let first = it.next()?;
        it.all(|k| k == first).then_some(first)
    }

    /// The component `C^k → C^{k+1}` with rows and columns in basis order.
    pub fn d_in_degree(&self, k: i64) -> Matrix {
        self.d.submatrix(&self.basis_in_degree(k + 1), &self.basis_in_degree(k))
    }

    /// Cocycles in degree `k` whose classes form a basis of `H^k`.
    pub fn cohomology_representatives(&self, k: i64) -> Vec<SparseVec> {
        let here = self.basis_in_degree(k);
        let kernel = self.d_in_degree(k).kernel();
        let mut ech = crate::linalg::Echelon::new(self.dim());
        for &i in &self.basis_in_degree(k - 1) {
            ech.insert(self.d.cols[i].clone());
        }
        let mut out = Vec::new();
        for v in &kernel.basis {
            let amb = v.remap(|j| Some(here[j]));
            if ech.insert(amb.clone()) {
                out.push(amb);
            }
        }
        out
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.degrees.iter().map(|k| if k % 2 == 0 { 1 } else { -1 }).sum()
    }

    /// Cohomology dimensions on the support of the complex.
    pub fn homology(&self) -> Result<BTreeMap<i64, usize>> {
        if !self.d_squared_is_zero() {
            return Err(Error::Invariant("d∘d ≠ 0".into()));
        }
        let dims = self.dims();
        let ranks: BTreeMap<i64, usize> = dims.keys().map(|&k| (k, self.d_in_degree(k).rank(self.field))).collect();
        Ok(dims
            .iter()
            .map(|(&k, &n)| (k, n - ranks[&k] - ranks.get(&(k - 1)).copied().unwrap_or(0)))
            .collect())
    }

    pub fn is_cycle(&self, v: &SparseVec) -> bool {
        self.d.apply(v).is_zero()
    }

    /// Some `x` with `dx = v`, if one exists.
    pub fn preimage(&self, v: &SparseVec) -> Option<SparseVec> {
        self.d.solve(v)
    }

    /// Koszul tensor product; basis `(i, j)` is flattened as `i * b.dim() + j`.
    pub fn tensor(&self, b: &ChainComplex) -> ChainComplex {
        let nb = b.dim();
        let mut degrees = Vec::with_capacity(self.dim() * nb);
        let mut cols = Vec::with_capacity(self.dim() * nb);
        for i in 0..self.dim() {
            for j in 0..nb {
                degrees.push(self.degrees[i] + b.degrees[j]);
                let mut acc = Accumulator::new();
                for (i2, x) in self.d.cols[i].iter() {
                    acc.add(i2 * nb + j, x);
                }
                let s = sign(self.degrees[i] % 2 != 0);
                for (j2, x) in b.d.cols[j].iter() {
                    acc.add(i * nb + j2, &(&s * x));
                }
                cols.push(acc.finish());
            }
        }
        let n = degrees.len();
        ChainComplex { field: self.field, degrees, d: Matrix::from_columns(n, cols) }
    }

    /// Internal hom; basis `E_{s,t}` (sending `s ↦ t`) is flattened as
    /// `s * b.dim() + t`, with degree `|t| − |s|`.
    pub fn hom(&self, b: &ChainComplex) -> ChainComplex {
        let nb = b.dim();
        let rows_a = self.d.transpose_rows();
        let mut degrees = Vec::with_capacity(self.dim() * nb);
        let mut cols = Vec::with_capacity(self.dim() * nb);
        for s in 0..self.dim() {
            for t in 0..nb {
                let deg = b.degrees[t] - self.degrees[s];
                degrees.push(deg);
                let mut acc = Accumulator::new();
                for (t2, x) in b.d.cols[t].iter() {
                    acc.add(s * nb + t2, x);
                }
                let sg = -sign(deg % 2 != 0);
                for (s2, x) in rows_a[s].iter() {
                    acc.add(s2 * nb + t, &(&sg * x));
                }
                cols.push(acc.finish());
            }
        }
        let n = degrees.len();
        ChainComplex { field: self.field, degrees, d: Matrix::from_columns(n, cols) }
    }

    /// JSON form; the basis is listed degree by degree, keeping the stored
    /// order inside each degree.
    pub fn to_json(&self) -> Value {
        let dims = self.dims();
        let mut d = serde_json::Map::new();
        for &k in dims.keys() {
            let m = self.d_in_degree(k);
            if m.nrows == 0 {
                continue;
            }
            let rows: Vec<Value> = m
                .to_dense_rows()
                .iter()
                .map(|r| Value::Array(r.iter().map(scalar_to_json).collect()))
                .collect();
            d.insert(k.to_string(), Value::Array(rows));
        }
        let dims: serde_json::Map<String, Value> = dims.iter().map(|(k, n)| (k.to_string(), json!(n))).collect();
        json!({ "field": self.field.to_string(), "dims": dims, "d": d })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let field = match v.get("field") {
            Some(Value::String(s)) => Field::parse(s)?,
            None => Field::Rational,
            _ => return Err(Error::Parse("field must be a string".into())),
        };
        let dims_obj = v.get("dims").and_then(Value::as_object).ok_or_else(|| Error::Parse("missing dims".into()))?;
        let mut dims = BTreeMap::new();
        for (k, n) in dims_obj {
            let k: i64 = k.parse().map_err(|_| Error::Parse(format!("bad degree {k}")))?;
            let n = n.as_u64().ok_or_else(|| Error::Parse(format!("bad dimension in degree {k}")))? as usize;
            dims.insert(k, n);
        }
        let mut offsets = BTreeMap::new();
        let mut degrees = Vec::new();
        for (&k, &n) in &dims {
            offsets.insert(k, degrees.len());
            degrees.extend(std::iter::repeat(k).take(n));
        }
        let mut cols: Vec<Accumulator> = Vec::new();
        cols.resize_with(degrees.len(), Accumulator::new);
        if let Some(d) = v.get("d") {
            let d = d.as_object().ok_or_else(|| Error::Parse("d must be an object".into()))?;
            for (k, rows) in d {
                let k: i64 = k.parse().map_err(|_| Error::Parse(format!("bad degree {k}")))?;
                let (n_src, n_dst) = (dims.get(&k).copied().unwrap_or(0), dims.get(&(k + 1)).copied().unwrap_or(0));
                let rows = rows.as_array().ok_or_else(|| Error::Parse("d entries must be matrices".into()))?;
                if rows.len() != n_dst {
                    return Err(Error::Parse(format!("d in degree {k} has {} rows, expected {n_dst}", rows.len())));
                }
                for (r, row) in rows.iter().enumerate() {
                    let row = row.as_array().ok_or_else(|| Error::Parse("matrix rows must be arrays".into()))?;
                    if row.len() != n_src {
                        return Err(Error::Parse(format!("d in degree {k} has a row of length {}", row.len())));
                    }
                    for (c, x) in row.iter().enumerate() {
                        let x = scalar_from_json(x)?;
                        if !x.is_zero() {
                            cols[offsets[&k] + c].add(offsets[&(k + 1)] + r, &x);
                        }
                    }
                }
            }
        }
        let n = degrees.len();
        ChainComplex::new(field, degrees, Matrix::from_columns(n, cols.into_iter().map(Accumulator::finish).collect()))
    }
}

/// Homology report as JSON: `{"deg": dim, ...}`.
pub fn homology_json(h: &BTreeMap<i64, usize>) -> Value {
    Value::Object(h.iter().map(|(k, n)| (k.to_string(), json!(n))).collect())
}
