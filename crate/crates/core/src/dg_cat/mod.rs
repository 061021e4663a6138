//! Small dg-categories with explicit bases, dg-functors, chains of
//! composable arrows, and the cosimplicial complexes of derived natural
//! transformations.

mod chains;
pub mod corpus;
mod functor;
mod shom;

pub use chains::{chain_pullback, expand, pullback_values as chain_pullback_values, ChainTuple};
pub use functor::DgFunctor;
pub use shom::{naive_hom, Globe, NaiveHom, ShomCosimplicial, ShomSpace};

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::chain_complex::ChainComplex;
use crate::error::{Error, Result};
use crate::linalg::{scalar_from_json, scalar_to_json, sign, Accumulator, Field, SparseVec};

/// A finite dg-category. `hom(x, y)` has an explicit basis sorted by degree;
/// composition is given by structure constants on basis elements.
#[derive(Clone, Debug, PartialEq)]
pub struct DgCategory {
    objects: Vec<String>,
    homs: Vec<ChainComplex>,
    /// `comp[(x,y,z)][a * dim(x,y) + b] = g_a ∘ f_b` with `g_a ∈ hom(y,z)`,
    /// `f_b ∈ hom(x,y)`.
    comp: Vec<Vec<SparseVec>>,
    units: Vec<SparseVec>,
}

impl DgCategory {
    /// Builds and validates a category. `comp` is indexed by `(x, y, z)`.
    pub fn new(
        objects: Vec<String>,
        homs: Vec<ChainComplex>,
        comp: BTreeMap<(usize, usize, usize), Vec<SparseVec>>,
        units: Vec<SparseVec>,
    ) -> Result<Self> {
        let n = objects.len();
        if homs.len() != n * n || units.len() != n {
            return Err(Error::Shape("hom or unit data does not match the objects".into()));
        }
        for h in &homs {
            if h.degrees().windows(2).any(|w| w[0] > w[1]) {
                return Err(Error::Shape("hom bases must be sorted by degree".into()));
            }
        }
        let mut table = vec![Vec::new(); n * n * n];
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let need = homs[y * n + z].dim() * homs[x * n + y].dim();
                    let entries = comp.get(&(x, y, z)).cloned().unwrap_or_default();
                    if entries.len() != need && !(entries.is_empty() && need == 0) {
                        return Err(Error::Shape(format!("composition ({x},{y},{z}) has {} entries, expected {need}", entries.len())));
                    }
                    table[(x * n + y) * n + z] = entries;
                }
            }
        }
        let c = Self { objects, homs, comp: table, units };
        c.validate()?;
        Ok(c)
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn object_names(&self) -> &[String] {
        &self.objects
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn hom(&self, x: usize, y: usize) -> &ChainComplex {
        &self.homs[x * self.num_objects() + y]
    }

    pub fn hom_dim(&self, x: usize, y: usize) -> usize {
        self.hom(x, y).dim()
    }

    pub fn unit(&self, x: usize) -> &SparseVec {
        &self.units[x]
    }

    /// Largest and smallest degree of a basis arrow.
    pub fn degree_range(&self) -> (i64, i64) {
        let mut lo = i64::MAX;
        let mut hi = i64::MIN;
        for h in &self.homs {
            for &d in h.degrees() {
                lo = lo.min(d);
                hi = hi.max(d);
            }
        }
        (lo, hi)
    }

    /// `g_a ∘ f_b` on basis elements.
    pub fn compose_basis(&self, x: usize, y: usize, z: usize, a: usize, b: usize) -> &SparseVec {
        let n = self.num_objects();
        &self.comp[(x * n + y) * n + z][a * self.hom_dim(x, y) + b]
    }

    /// `g ∘ f` for `f ∈ hom(x,y)`, `g ∈ hom(y,z)`.
    pub fn compose(&self, x: usize, y: usize, z: usize, g: &SparseVec, f: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new();
        for (a, ga) in g.iter() {
            for (b, fb) in f.iter() {
                acc.add_vec(&(ga * fb), self.compose_basis(x, y, z, a, b));
            }
        }
        acc.finish()
    }

    /// Degree of a homogeneous nonzero vector of `hom(x,y)`; 0 for zero.
    pub fn degree_of(&self, x: usize, y: usize, v: &SparseVec) -> i64 {
        self.hom(x, y).degree_of(v).unwrap_or(0)
    }

    /// The composite of a path `v_1, …, v_k` (path order, `v_1: objs[0] →
    /// objs[1]`), with the Koszul sign of reversing the factors. The empty
    /// path gives the identity.
    pub fn comp_path(&self, objs: &[usize], factors: &[SparseVec]) -> SparseVec {
        assert_eq!(objs.len(), factors.len() + 1);
        if factors.is_empty() {
            return self.units[objs[0]].clone();
        }
        let mut acc = factors[0].clone();
        let mut acc_deg = self.degree_of(objs[0], objs[1], &factors[0]);
        for i in 1..factors.len() {
            let d = self.degree_of(objs[i], objs[i + 1], &factors[i]);
            let c = self.compose(objs[0], objs[i], objs[i + 1], &factors[i], &acc);
            acc = c.scaled(&sign(acc_deg * d % 2 != 0));
            acc_deg += d;
        }
        acc
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.num_objects();
        for x in 0..n {
            let u = &self.units[x];
            if self.hom(x, x).degree_of(u) != Some(0) || !self.hom(x, x).apply_d(u).is_zero() {
                return Err(Error::Invariant(format!("unit of {} is not a degree-0 cycle", self.objects[x])));
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let (hxy, hyz, hxz) = (self.hom(x, y), self.hom(y, z), self.hom(x, z));
                    for a in 0..hyz.dim() {
                        for b in 0..hxy.dim() {
                            let c = self.compose_basis(x, y, z, a, b);
                            let (da, db) = (hyz.degree(a), hxy.degree(b));
                            if c.iter().any(|(i, _)| hxz.degree(i) != da + db) {
                                return Err(Error::Invariant(format!("composition ({x},{y},{z}) breaks degrees")));
                            }
                            let lhs = hxz.apply_d(c);
                            let ga = SparseVec::unit(a);
                            let fb = SparseVec::unit(b);
                            let rhs = self
                                .compose(x, y, z, &hyz.apply_d(&ga), &fb)
                                .add(&self.compose(x, y, z, &ga, &hxy.apply_d(&fb)).scaled(&sign(da % 2 != 0)));
                            if lhs != rhs {
                                return Err(Error::Invariant(format!("Leibniz rule fails on ({x},{y},{z})")));
                            }
                        }
                    }
                    for b in 0..hxy.dim() {
                        let fb = SparseVec::unit(b);
                        if self.compose(x, y, y, &self.units[y], &fb) != fb || self.compose(x, x, y, &fb, &self.units[x]) != fb {
                            return Err(Error::Invariant(format!("unit law fails on hom({x},{y})")));
                        }
                    }
                    for w in 0..n {
                        let hzw = self.hom(z, w);
                        for a in 0..hzw.dim() {
                            for b in 0..hyz.dim() {
                                for c in 0..hxy.dim() {
                                    let (ha, hb, hc) = (SparseVec::unit(a), SparseVec::unit(b), SparseVec::unit(c));
                                    let left = self.compose(x, z, w, &ha, &self.compose(x, y, z, &hb, &hc));
                                    let right = self.compose(x, y, w, &self.compose(y, z, w, &ha, &hb), &hc);
                                    if left != right {
                                        return Err(Error::Invariant(format!("associativity fails on ({x},{y},{z},{w})")));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        let n = self.num_objects();
        let mut homs = serde_json::Map::new();
        let mut comp = serde_json::Map::new();
        for x in 0..n {
            for y in 0..n {
                if self.hom_dim(x, y) > 0 {
                    homs.insert(format!("{},{}", self.objects[x], self.objects[y]), self.hom(x, y).to_json());
                }
                for z in 0..n {
                    let entries = &self.comp[(x * n + y) * n + z];
                    if entries.is_empty() {
                        continue;
                    }
                    let dim = self.hom_dim(x, z);
                    let rows: Vec<Value> = entries
                        .iter()
                        .map(|v| Value::Array(v.to_dense(dim).iter().map(scalar_to_json).collect()))
                        .collect();
                    comp.insert(format!("{},{},{}", self.objects[x], self.objects[y], self.objects[z]), Value::Array(rows));
                }
            }
        }
        let units: serde_json::Map<String, Value> = (0..n)
            .map(|x| {
                let v = self.units[x].to_dense(self.hom_dim(x, x));
                (self.objects[x].clone(), Value::Array(v.iter().map(scalar_to_json).collect()))
            })
            .collect();
        json!({ "objects": self.objects, "homs": homs, "comp": comp, "units": units })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let objects: Vec<String> = serde_json::from_value(v.get("objects").cloned().ok_or_else(|| parse("objects"))?)?;
        let n = objects.len();
        let find = |s: &str| objects.iter().position(|o| o == s).ok_or_else(|| Error::Parse(format!("unknown object {s}")));
        let mut homs = vec![ChainComplex::zero(Field::Rational); n * n];
        if let Some(h) = v.get("homs") {
            for (k, c) in h.as_object().ok_or_else(|| parse("homs"))? {
                let parts: Vec<&str> = k.split(',').collect();
                if parts.len() != 2 {
                    return Err(Error::Parse(format!("bad hom key {k}")));
                }
                homs[find(parts[0])? * n + find(parts[1])?] = ChainComplex::from_json(c)?;
            }
        }
        let mut comp = BTreeMap::new();
        if let Some(c) = v.get("comp") {
            for (k, rows) in c.as_object().ok_or_else(|| parse("comp"))? {
                let parts: Vec<&str> = k.split(',').collect();
                if parts.len() != 3 {
                    return Err(Error::Parse(format!("bad composition key {k}")));
                }
                let (x, y, z) = (find(parts[0])?, find(parts[1])?, find(parts[2])?);
                let rows = rows.as_array().ok_or_else(|| parse("comp rows"))?;
                let mut entries = Vec::with_capacity(rows.len());
                for r in rows {
                    let r = r.as_array().ok_or_else(|| parse("comp row"))?;
                    if r.len() != homs[x * n + z].dim() {
                        return Err(Error::Parse(format!("composition row of length {} in {k}", r.len())));
                    }
                    let vals = r.iter().map(scalar_from_json).collect::<Result<Vec<_>>>()?;
                    entries.push(SparseVec::from_dense(&vals));
                }
                comp.insert((x, y, z), entries);
            }
        }
        let units_obj = v.get("units").and_then(Value::as_object).ok_or_else(|| parse("units"))?;
        let mut units = Vec::with_capacity(n);
        for (x, name) in objects.iter().enumerate() {
            let u = units_obj.get(name).and_then(Value::as_array).ok_or_else(|| Error::Parse(format!("no unit for {name}")))?;
            if u.len() != homs[x * n + x].dim() {
                return Err(Error::Parse(format!("unit of {name} has the wrong length")));
            }
            let vals = u.iter().map(scalar_from_json).collect::<Result<Vec<_>>>()?;
            units.push(SparseVec::from_dense(&vals));
        }
        DgCategory::new(objects, homs, comp, units)
    }
}

fn parse(field: &str) -> Error {
    Error::Parse(format!("missing or malformed {field}"))
}

/// A one-object category from an algebra given by basis degrees, a
/// differential (columns) and a multiplication table `mul[a][b] = e_a·e_b`.
pub fn one_object(
    name: &str,
    degrees: Vec<i64>,
    d: Vec<SparseVec>,
    mul: Vec<Vec<SparseVec>>,
    unit: SparseVec,
) -> Result<DgCategory> {
    let dim = degrees.len();
    let hom = ChainComplex::new(Field::Rational, degrees, crate::linalg::Matrix::from_columns(dim, d))?;
    let entries = mul.into_iter().flatten().collect();
    DgCategory::new(vec![name.to_string()], vec![hom], BTreeMap::from([((0, 0, 0), entries)]), vec![unit])
}
