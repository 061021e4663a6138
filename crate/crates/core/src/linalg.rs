//! Exact sparse linear algebra over the rationals, with rank computations
//! optionally reduced modulo a prime.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

pub fn sign(odd: bool) -> Scalar {
    if odd {
        -Scalar::one()
    } else {
        Scalar::one()
    }
}

/// Koszul sign of reordering homogeneous items of the given parities.
/// `order[k]` is the original index of the item placed at position `k`.
pub fn koszul_parity(degrees: &[i64], order: &[usize]) -> bool {
    let mut odd = false;
    for a in 0..order.len() {
        for b in (a + 1)..order.len() {
            if order[a] > order[b] && degrees[order[a]] % 2 != 0 && degrees[order[b]] % 2 != 0 {
                odd = !odd;
            }
        }
    }
    odd
}

/// Ground field used for rank and homology computations. All stored data
/// is rational; over `Prime(p)` entries are reduced modulo `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Field {
    #[default]
    Rational,
    Prime(u64),
}

impl Field {
    pub fn parse(s: &str) -> Result<Field> {
        let s = s.trim();
        if s == "Q" {
            return Ok(Field::Rational);
        }
        let p = s
            .strip_prefix("Fp:")
            .or_else(|| s.strip_prefix("F"))
            .and_then(|p| p.parse::<u64>().ok())
            .ok_or_else(|| Error::Parse(format!("unknown field `{s}` (expected Q or Fp:p)")))?;
        if p < 2 || p > u32::MAX as u64 || !(2..).take_while(|d| d * d <= p).all(|d| p % d != 0) {
            return Err(Error::Parse(format!("{p} is not a supported prime")));
        }
        Ok(Field::Prime(p))
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl Serialize for Field {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Field {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Field::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Sparse vector: strictly increasing indices, no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparseVec {
    entries: Vec<(usize, Scalar)>,
}

impl SparseVec {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn unit(i: usize) -> Self {
        Self { entries: vec![(i, Scalar::one())] }
    }

    pub fn from_map(map: BTreeMap<usize, Scalar>) -> Self {
        Self { entries: map.into_iter().filter(|(_, v)| !v.is_zero()).collect() }
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, Scalar)>>(pairs: I) -> Self {
        let mut acc = Accumulator::new();
        for (i, v) in pairs {
            acc.add(i, &v);
        }
        acc.finish()
    }

    pub fn from_dense(values: &[Scalar]) -> Self {
        Self {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| (i, v.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, len: usize) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); len];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.entries.iter().map(|(i, v)| (*i, v))
    }

    pub fn get(&self, i: usize) -> Scalar {
        match self.entries.binary_search_by_key(&i, |(j, _)| *j) {
            Ok(k) => self.entries[k].1.clone(),
            Err(_) => Scalar::zero(),
        }
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    pub fn scaled(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::new();
        }
        Self { entries: self.entries.iter().map(|(i, v)| (*i, v * c)).collect() }
    }

    pub fn neg(&self) -> Self {
        Self { entries: self.entries.iter().map(|(i, v)| (*i, -v)).collect() }
    }

    /// `self + c * other`
    pub fn axpy(&self, c: &Scalar, other: &SparseVec) -> Self {
        if c.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (0, 0);
        while a < self.entries.len() || b < other.entries.len() {
            let ia = self.entries.get(a).map(|e| e.0).unwrap_or(usize::MAX);
            let ib = other.entries.get(b).map(|e| e.0).unwrap_or(usize::MAX);
            if ia < ib {
                out.push(self.entries[a].clone());
                a += 1;
            } else if ib < ia {
                out.push((ib, c * &other.entries[b].1));
                b += 1;
            } else {
                let v = &self.entries[a].1 + c * &other.entries[b].1;
                if !v.is_zero() {
                    out.push((ia, v));
                }
                a += 1;
                b += 1;
            }
        }
        Self { entries: out }
    }

    pub fn add(&self, other: &SparseVec) -> Self {
        self.axpy(&Scalar::one(), other)
    }

    pub fn sub(&self, other: &SparseVec) -> Self {
        self.axpy(&-Scalar::one(), other)
    }

    /// Reindex through `f`; entries mapped to `None` are dropped.
    pub fn remap(&self, f: impl Fn(usize) -> Option<usize>) -> Self {
        Self::from_pairs(self.entries.iter().filter_map(|(i, v)| f(*i).map(|j| (j, v.clone()))))
    }
}

/// Accumulates a sparse vector from unordered contributions.
#[derive(Default)]
pub struct Accumulator {
    map: BTreeMap<usize, Scalar>,
}

impl Accumulator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, i: usize, v: &Scalar) {
        if v.is_zero() {
            return;
        }
        let e = self.map.entry(i).or_insert_with(Scalar::zero);
        *e += v;
        if e.is_zero() {
            self.map.remove(&i);
        }
    }

    pub fn add_vec(&mut self, c: &Scalar, v: &SparseVec) {
        for (i, x) in v.iter() {
            self.add(i, &(c * x));
        }
    }

    pub fn finish(self) -> SparseVec {
        SparseVec { entries: self.map.into_iter().collect() }
    }
}

/// Column-sparse matrix: `cols[j]` is the image of the j-th basis vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    pub nrows: usize,
    pub cols: Vec<SparseVec>,
}

impl Matrix {
    pub fn zero(nrows: usize, ncols: usize) -> Self {
        Self { nrows, cols: vec![SparseVec::new(); ncols] }
    }

    pub fn identity(n: usize) -> Self {
        Self { nrows: n, cols: (0..n).map(SparseVec::unit).collect() }
    }

    pub fn from_columns(nrows: usize, cols: Vec<SparseVec>) -> Self {
        debug_assert!(cols.iter().all(|c| c.max_index().map_or(true, |i| i < nrows)));
        Self { nrows, cols }
    }

    /// Dense row-major input.
    pub fn from_rows(rows: &[Vec<Scalar>], ncols: usize) -> Self {
        let mut cols: Vec<Accumulator> = Vec::new();
        cols.resize_with(ncols, Accumulator::new);
        for (r, row) in rows.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                cols[c].add(r, v);
            }
        }
        Self { nrows: rows.len(), cols: cols.into_iter().map(Accumulator::finish).collect() }
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(SparseVec::is_zero)
    }

    pub fn entry(&self, r: usize, c: usize) -> Scalar {
        self.cols[c].get(r)
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new();
        for (j, x) in v.iter() {
            acc.add_vec(x, &self.cols[j]);
        }
        acc.finish()
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.ncols(), other.nrows, "matrix shape mismatch");
        Matrix { nrows: self.nrows, cols: other.cols.iter().map(|c| self.apply(c)).collect() }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.nrows, self.ncols()), (other.nrows, other.ncols()));
        Matrix {
            nrows: self.nrows,
            cols: self.cols.iter().zip(&other.cols).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn scaled(&self, c: &Scalar) -> Matrix {
        Matrix { nrows: self.nrows, cols: self.cols.iter().map(|v| v.scaled(c)).collect() }
    }

    pub fn transpose_rows(&self) -> Vec<SparseVec> {
        let mut rows: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); self.nrows];
        for (j, col) in self.cols.iter().enumerate() {
            for (i, v) in col.iter() {
                rows[i].push((j, v.clone()));
            }
        }
        rows.into_iter().map(|entries| SparseVec { entries }).collect()
    }

    /// Submatrix on the given row and column index lists (in that order).
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut pos = vec![usize::MAX; self.nrows];
        for (k, &r) in rows.iter().enumerate() {
            pos[r] = k;
        }
        Matrix {
            nrows: rows.len(),
            cols: cols
                .iter()
                .map(|&c| self.cols[c].remap(|i| if pos[i] == usize::MAX { None } else { Some(pos[i]) }))
                .collect(),
        }
    }

    pub fn to_dense_rows(&self) -> Vec<Vec<Scalar>> {
        let mut rows = vec![vec![Scalar::zero(); self.ncols()]; self.nrows];
        for (j, col) in self.cols.iter().enumerate() {
            for (i, v) in col.iter() {
                rows[i][j] = v.clone();
            }
        }
        rows
    }

    pub fn rank(&self, field: Field) -> usize {
        match field {
            Field::Rational => Echelon::from_rows(self.ncols(), self.transpose_rows()).rank(),
            Field::Prime(p) => rank_mod_p(self, p),
        }
    }

    /// Basis of the null space, in reduced form (see [`Kernel`]).
    pub fn kernel(&self) -> Kernel {
        let mut ech = Echelon::from_rows(self.ncols(), self.transpose_rows());
        ech.back_substitute();
        ech.kernel()
    }

    /// Some `x` with `self * x = b`, if one exists.
    pub fn solve(&self, b: &SparseVec) -> Option<SparseVec> {
        let n = self.ncols();
        let mut rows = self.transpose_rows();
        for (i, v) in b.iter() {
            rows[i] = rows[i].axpy(v, &SparseVec::unit(n));
        }
        let mut ech = Echelon::from_rows(n + 1, rows);
        if ech.pivot_cols().any(|c| c == n) {
            return None;
        }
        ech.back_substitute();
        Some(SparseVec::from_pairs(
            ech.rows.iter().map(|(p, row)| (*p, row.get(n))).filter(|(_, v)| !v.is_zero()),
        ))
    }
}

/// Null-space basis with distinguished free coordinates: basis vector `k`
/// has coordinate 1 at `free[k]` and 0 at every other free coordinate.
#[derive(Clone, Debug)]
pub struct Kernel {
    pub dim_ambient: usize,
    pub free: Vec<usize>,
    pub basis: Vec<SparseVec>,
}

impl Kernel {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of an ambient vector assumed to lie in the kernel.
    pub fn coordinates(&self, v: &SparseVec) -> SparseVec {
        let mut pos = BTreeMap::new();
        for (k, &f) in self.free.iter().enumerate() {
            pos.insert(f, k);
        }
        SparseVec::from_pairs(v.iter().filter_map(|(i, x)| pos.get(&i).map(|&k| (k, x.clone()))))
    }

    pub fn embed(&self, coords: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new();
        for (k, c) in coords.iter() {
            acc.add_vec(c, &self.basis[k]);
        }
        acc.finish()
    }
}

/// Row echelon form built incrementally. Every stored row starts at its
/// pivot column with coefficient 1.
pub struct Echelon {
    ncols: usize,
    rows: Vec<(usize, SparseVec)>,
    pivot_of: BTreeMap<usize, usize>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Self { ncols, rows: Vec::new(), pivot_of: BTreeMap::new() }
    }

    pub fn from_rows(ncols: usize, rows: Vec<SparseVec>) -> Self {
        let mut e = Self::new(ncols);
        for r in rows {
            e.insert(r);
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivot_cols(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|(p, _)| *p)
    }

    /// Reduce `v` against the current pivots; returns the residue.
    pub fn reduce(&self, v: SparseVec) -> SparseVec {
        let mut acc: BTreeMap<usize, Scalar> = v.entries.into_iter().collect();
        let mut cursor = 0usize;
        loop {
            let next = acc.range(cursor..).find(|(c, _)| self.pivot_of.contains_key(c)).map(|(c, x)| (*c, x.clone()));
            let Some((c, x)) = next else { break };
            let row = &self.rows[self.pivot_of[&c]].1;
            for (j, y) in row.iter() {
                let e = acc.entry(j).or_insert_with(Scalar::zero);
                *e -= &x * y;
                if e.is_zero() {
                    acc.remove(&j);
                }
            }
            cursor = c + 1;
        }
        SparseVec::from_map(acc)
    }

    /// Insert a row; returns true if it increased the rank.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let r = self.reduce(v);
        let Some(&(p, ref lead)) = r.entries.first() else { return false };
        let inv = lead.recip();
        self.pivot_of.insert(p, self.rows.len());
        self.rows.push((p, r.scaled(&inv)));
        true
    }

    /// Bring to reduced row echelon form.
    pub fn back_substitute(&mut self) {
        for k in (0..self.rows.len()).rev() {
            let row = self.rows[k].1.clone();
            let mut out = row.clone();
            for (j, x) in row.iter() {
                if j == self.rows[k].0 {
                    continue;
                }
                if let Some(&other) = self.pivot_of.get(&j) {
                    if other != k {
                        out = out.axpy(&-x.clone(), &self.rows[other].1);
                    }
                }
            }
            self.rows[k].1 = out;
        }
    }

    /// Requires [`back_substitute`](Self::back_substitute) first.
    pub fn kernel(&self) -> Kernel {
        let free: Vec<usize> = (0..self.ncols).filter(|c| !self.pivot_of.contains_key(c)).collect();
        let mut index = vec![usize::MAX; self.ncols];
        for (k, &f) in free.iter().enumerate() {
            index[f] = k;
        }
        let mut accs: Vec<Vec<(usize, Scalar)>> = free.iter().map(|&f| vec![(f, Scalar::one())]).collect();
        for (p, row) in &self.rows {
            for (j, x) in row.iter() {
                if j != *p && index[j] != usize::MAX {
                    accs[index[j]].push((*p, -x.clone()));
                }
            }
        }
        Kernel {
            dim_ambient: self.ncols,
            free,
            basis: accs.into_iter().map(SparseVec::from_pairs).collect(),
        }
    }
}

fn mod_p(x: &Scalar, p: u64) -> Result<u64> {
    let pb = BigInt::from(p);
    let n = x.numer().mod_floor(&pb).to_u64().unwrap();
    let d = x.denom().mod_floor(&pb).to_u64().unwrap();
    if d == 0 {
        return Err(Error::Invariant(format!("denominator of {x} vanishes modulo {p}")));
    }
    Ok(n * pow_mod(d, p - 2, p) % p)
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn rank_mod_p(m: &Matrix, p: u64) -> usize {
    let mut pivots: BTreeMap<usize, BTreeMap<usize, u64>> = BTreeMap::new();
    for row in m.transpose_rows() {
        let mut v: BTreeMap<usize, u64> = row
            .iter()
            .map(|(i, x)| (i, mod_p(x, p).expect("entry not defined modulo p")))
            .filter(|(_, x)| *x != 0)
            .collect();
        loop {
            let Some((&c, &x)) = v.iter().find(|(c, _)| pivots.contains_key(c)) else { break };
            for (&j, &y) in &pivots[&c] {
                let e = v.entry(j).or_insert(0);
                *e = (*e + p - x * y % p) % p;
                if *e == 0 {
                    v.remove(&j);
                }
            }
        }
        if let Some((&c, &x)) = v.iter().next() {
            let inv = pow_mod(x, p - 2, p);
            pivots.insert(c, v.into_iter().map(|(j, y)| (j, y * inv % p)).collect());
        }
    }
    pivots.len()
}

/// Render a scalar as a JSON value: integer when integral, else "p/q".
pub fn scalar_to_json(x: &Scalar) -> serde_json::Value {
    if x.is_integer() {
        if let Some(i) = x.numer().to_i64() {
            return serde_json::Value::from(i);
        }
    }
    serde_json::Value::from(x.to_string())
}

pub fn scalar_from_json(v: &serde_json::Value) -> Result<Scalar> {
    match v {
        serde_json::Value::Number(n) => n
            .as_i64()
            .map(int)
            .ok_or_else(|| Error::Parse(format!("non-integer numeric literal {n}; use \"p/q\""))),
        serde_json::Value::String(s) => parse_scalar(s),
        other => Err(Error::Parse(format!("expected a scalar, got {other}"))),
    }
}

pub fn parse_scalar(s: &str) -> Result<Scalar> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn is_unit_sign(x: &Scalar) -> bool {
    x.abs().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        let ncols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(&rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect::<Vec<_>>(), ncols)
    }

    #[test]
    fn rank_and_kernel_small() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(Field::Rational), 2);
        let k = a.kernel();
        assert_eq!(k.dim(), 1);
        assert!(a.apply(&k.basis[0]).is_zero());
    }

    #[test]
    fn rank_depends_on_characteristic() {
        let a = m(&[&[2, 0], &[0, 3]]);
        assert_eq!(a.rank(Field::Rational), 2);
        assert_eq!(a.rank(Field::Prime(2)), 1);
        assert_eq!(a.rank(Field::Prime(3)), 1);
        assert_eq!(a.rank(Field::Prime(5)), 2);
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let a = m(&[&[1, 1], &[1, 1]]);
        let b = SparseVec::from_dense(&[int(2), int(2)]);
        let x = a.solve(&b).unwrap();
        assert_eq!(a.apply(&x), b);
        assert!(a.solve(&SparseVec::from_dense(&[int(1), int(0)])).is_none());
    }

    #[test]
    fn kernel_coordinates_roundtrip() {
        let a = m(&[&[1, -1, 0, 0], &[0, 0, 1, 1]]);
        let k = a.kernel();
        assert_eq!(k.dim(), 2);
        let v = k.basis[0].scaled(&int(3)).add(&k.basis[1].scaled(&int(-2)));
        assert_eq!(k.embed(&k.coordinates(&v)), v);
    }

    #[test]
    fn koszul_transposition() {
        assert!(koszul_parity(&[1, 1], &[1, 0]));
        assert!(!koszul_parity(&[1, 2], &[1, 0]));
        assert!(!koszul_parity(&[1, 1, 1], &[0, 1, 2]));
    }

    #[test]
    fn field_parsing() {
        assert_eq!(Field::parse("Q").unwrap(), Field::Rational);
        assert_eq!(Field::parse("Fp:7").unwrap(), Field::Prime(7));
        assert!(Field::parse("Fp:8").is_err());
    }
}
