use std::collections::BTreeMap;

use super::ChainComplex;
use crate::error::{Error, Result};
use crate::linalg::{sign, Accumulator, Field, Kernel, Matrix, SparseVec};
use crate::ordinal::MonotoneMap;

/// A cosimplicial cochain complex, evaluated level by level.
///
/// `coface(n, i)` is the map from level `n-1` to level `n` induced by
/// `δ_i: [n-1] → [n]`; `codegeneracy(n, i)` goes from level `n+1` to level
/// `n` along `σ_i: [n+1] → [n]`.
pub trait Cosimplicial {
    fn level(&self, n: usize) -> Result<ChainComplex>;
    fn coface(&self, n: usize, i: usize) -> Result<Matrix>;
    fn codegeneracy(&self, n: usize, i: usize) -> Result<Matrix>;

    /// Affine bounds on the internal degrees at every level, if known.
    fn degree_bounds(&self) -> Option<DegreeBounds> {
        None
    }
}

/// Internal degrees at level `n` lie in `[lo.0 + lo.1·n, hi.0 + hi.1·n]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegreeBounds {
    pub lo: (i64, i64),
    pub hi: (i64, i64),
}

impl DegreeBounds {
    pub fn constant(lo: i64, hi: i64) -> Self {
        Self { lo: (lo, 0), hi: (hi, 0) }
    }

    pub fn at(&self, n: usize) -> (i64, i64) {
        let n = n as i64;
        (self.lo.0 + self.lo.1 * n, self.hi.0 + self.hi.1 * n)
    }

    fn hits(&self, n: usize, internal: i64) -> bool {
        let (lo, hi) = self.at(n);
        lo <= internal && internal <= hi
    }
}

struct TotLevel {
    offset: usize,
    kernel: Kernel,
    internal: Vec<i64>,
}

/// The normalized totalization, truncated to levels `0..=level_bound`.
///
/// Level `n` contributes the joint kernel of the codegeneracies, shifted so
/// that internal degree `q` sits in total degree `q + n`. The differential
/// is `(Dx)_n = d x_n − (−1)^{|x|} Σ_i (−1)^i δ_i x_{n−1}`. Truncation keeps
/// the levels `≤ level_bound` as a quotient complex.
pub struct Totalization {
    pub complex: ChainComplex,
    pub level_bound: usize,
    levels: Vec<TotLevel>,
    bounds: Option<DegreeBounds>,
}

fn normalized_kernel<K: Cosimplicial + ?Sized>(k: &K, n: usize, dim: usize) -> Result<Kernel> {
    if n == 0 {
        return Ok(Matrix::zero(0, dim).kernel());
    }
    let mut rows = Vec::new();
    let mut nrows = 0;
    for j in 0..n {
        let s = k.codegeneracy(n - 1, j)?;
        if s.ncols() != dim {
            return Err(Error::Shape(format!("codegeneracy {j} at level {n} has the wrong source")));
        }
        for r in s.transpose_rows() {
            rows.push(r);
        }
        nrows += s.nrows;
    }
    debug_assert_eq!(rows.len(), nrows);
    let stacked = Matrix::from_columns(nrows, transpose(&rows, dim));
    Ok(stacked.kernel())
}

fn transpose(rows: &[SparseVec], ncols: usize) -> Vec<SparseVec> {
    let mut cols: Vec<Accumulator> = Vec::new();
    cols.resize_with(ncols, Accumulator::new);
    for (r, row) in rows.iter().enumerate() {
        for (c, x) in row.iter() {
            cols[c].add(r, x);
        }
    }
    cols.into_iter().map(Accumulator::finish).collect()
}

/// Coordinates of `v` in `ker`, checking membership.
fn coords(ker: &Kernel, v: &SparseVec) -> Result<SparseVec> {
    let c = ker.coordinates(v);
    if ker.embed(&c) != *v {
        return Err(Error::Invariant("vector left the normalized subcomplex".into()));
    }
    Ok(c)
}

pub fn totalize<K: Cosimplicial + ?Sized>(k: &K, level_bound: usize) -> Result<Totalization> {
    let mut complexes = Vec::with_capacity(level_bound + 1);
    let mut levels = Vec::with_capacity(level_bound + 1);
    let mut degrees = Vec::new();
    let mut field = Field::Rational;
    for n in 0..=level_bound {
        let c = k.level(n)?;
        field = c.field();
        let kernel = normalized_kernel(k, n, c.dim())?;
        let mut internal = Vec::with_capacity(kernel.dim());
        for b in &kernel.basis {
            let q = c
                .degree_of(b)
                .ok_or_else(|| Error::Invariant(format!("normalized basis vector at level {n} is not homogeneous")))?;
            internal.push(q);
        }
        degrees.extend(internal.iter().map(|q| q + n as i64));
        levels.push(TotLevel { offset: degrees.len() - internal.len(), kernel, internal });
        complexes.push(c);
    }
    let total = degrees.len();
    let mut cols = Vec::with_capacity(total);
    for n in 0..=level_bound {
        let lv = &levels[n];
        let cofaces: Vec<Matrix> = if n < level_bound {
            (0..=n + 1).map(|i| k.coface(n + 1, i)).collect::<Result<_>>()?
        } else {
            Vec::new()
        };
        for (b, v) in lv.kernel.basis.iter().enumerate() {
            let m = lv.internal[b] + n as i64;
            let mut acc = Accumulator::new();
            let dv = complexes[n].apply_d(v);
            for (i, x) in coords(&lv.kernel, &dv)?.iter() {
                acc.add(lv.offset + i, x);
            }
            if n < level_bound {
                let mut dv = Accumulator::new();
                for (i, f) in cofaces.iter().enumerate() {
                    dv.add_vec(&sign(i % 2 == 1), &f.apply(v));
                }
                let dv = dv.finish();
                let next = &levels[n + 1];
                let s = -sign(m % 2 != 0);
                for (i, x) in coords(&next.kernel, &dv)?.iter() {
                    acc.add(next.offset + i, &(&s * x));
                }
            }
            cols.push(acc.finish());
        }
    }
    let complex = ChainComplex::new(field, degrees, Matrix::from_columns(total, cols))?;
    Ok(Totalization { complex, level_bound, levels, bounds: k.degree_bounds() })
}

impl Totalization {
    /// `(level, index within the normalized level)` of a basis element.
    pub fn locate(&self, i: usize) -> (usize, usize) {
        let n = self.levels.iter().rposition(|l| l.offset <= i).unwrap();
        (n, i - self.levels[n].offset)
    }

    pub fn level_dim(&self, n: usize) -> usize {
        self.levels[n].kernel.dim()
    }

    pub fn level_offset(&self, n: usize) -> usize {
        self.levels[n].offset
    }

    pub fn normalized_basis(&self, n: usize) -> &[SparseVec] {
        &self.levels[n].kernel.basis
    }

    /// Components of a total vector at each level, in level coordinates.
    pub fn to_levels(&self, v: &SparseVec) -> Vec<SparseVec> {
        let mut accs: Vec<Accumulator> = Vec::new();
        accs.resize_with(self.levels.len(), Accumulator::new);
        for (i, x) in v.iter() {
            let (n, b) = self.locate(i);
            accs[n].add_vec(x, &self.levels[n].kernel.basis[b]);
        }
        accs.into_iter().map(Accumulator::finish).collect()
    }

    /// Inverse of [`to_levels`](Self::to_levels); components above the bound
    /// are ignored, missing ones are zero.
    pub fn from_levels(&self, comps: &[SparseVec]) -> Result<SparseVec> {
        let mut acc = Accumulator::new();
        for (n, v) in comps.iter().enumerate().take(self.levels.len()) {
            let lv = &self.levels[n];
            for (i, x) in coords(&lv.kernel, v)?.iter() {
                acc.add(lv.offset + i, x);
            }
        }
        Ok(acc.finish())
    }

    pub fn is_normalized(&self, n: usize, v: &SparseVec) -> bool {
        coords(&self.levels[n].kernel, v).is_ok()
    }

    /// Whether the cohomology of the truncation agrees with that of the
    /// full totalization in degree `m`.
    pub fn is_complete(&self, m: i64) -> bool {
        let Some(b) = self.bounds else { return false };
        let cap = self.level_bound + 4096;
        for n in self.level_bound + 1..=cap {
            let shift = n as i64;
            if b.hits(n, m - shift) || b.hits(n, m + 1 - shift) {
                return false;
            }
            let (lo, _) = b.at(n);
            if b.lo.1 + 1 > 0 && m + 1 - shift < lo {
                return true;
            }
        }
        false
    }

    pub fn complete_degrees(&self) -> Vec<i64> {
        let dims = self.complex.dims();
        let mut lo = dims.keys().next().copied().unwrap_or(0) - 1;
        let mut hi = dims.keys().last().copied().unwrap_or(0) + 1;
        if let Some(b) = self.bounds {
            for n in 0..=self.level_bound {
                let (l, h) = b.at(n);
                lo = lo.min(l + n as i64 - 1);
                hi = hi.max(h + n as i64 + 1);
            }
        }
        (lo..=hi).filter(|&m| self.is_complete(m)).collect()
    }

    /// Cohomology in the complete degrees only.
    pub fn complete_homology(&self) -> Result<BTreeMap<i64, usize>> {
        let h = self.complex.homology()?;
        Ok(self.complete_degrees().into_iter().map(|m| (m, h.get(&m).copied().unwrap_or(0))).collect())
    }
}

/// The constant cosimplicial object on a complex.
pub struct ConstantCosimplicial {
    pub complex: ChainComplex,
}

pub fn constant_complex(c: ChainComplex) -> ConstantCosimplicial {
    ConstantCosimplicial { complex: c }
}

impl Cosimplicial for ConstantCosimplicial {
    fn level(&self, _n: usize) -> Result<ChainComplex> {
        Ok(self.complex.clone())
    }
    fn coface(&self, _n: usize, _i: usize) -> Result<Matrix> {
        Ok(Matrix::identity(self.complex.dim()))
    }
    fn codegeneracy(&self, _n: usize, _i: usize) -> Result<Matrix> {
        Ok(Matrix::identity(self.complex.dim()))
    }
    fn degree_bounds(&self) -> Option<DegreeBounds> {
        let dims = self.complex.dims();
        match (dims.keys().next(), dims.keys().last()) {
            (Some(&lo), Some(&hi)) => Some(DegreeBounds::constant(lo, hi)),
            _ => Some(DegreeBounds::constant(1, 0)),
        }
    }
}

/// Nonempty subsets of `0..=n`, in order of size then lexicographically.
fn faces(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for k in 1..=n + 1 {
        let mut cur = Vec::new();
        fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for v in start..=n {
                cur.push(v);
                rec(v + 1, n, k, cur, out);
                cur.pop();
            }
        }
        rec(0, n, k, &mut cur, &mut out);
    }
    out
}

/// Normalized chains of `Δ^n`, placed in degrees `0, −1, …, −n`.
pub fn simplex_complex(n: usize) -> ChainComplex {
    let fs = faces(n);
    let index: BTreeMap<&Vec<usize>, usize> = fs.iter().enumerate().map(|(i, f)| (f, i)).collect();
    let degrees = fs.iter().map(|f| -(f.len() as i64 - 1)).collect();
    let cols = fs
        .iter()
        .map(|f| {
            if f.len() == 1 {
                return SparseVec::new();
            }
            SparseVec::from_pairs((0..f.len()).map(|i| {
                let mut g = f.clone();
                g.remove(i);
                (index[&g], sign(i % 2 == 1))
            }))
        })
        .collect();
    ChainComplex::new_unchecked(Field::Rational, degrees, Matrix::from_columns(fs.len(), cols)).unwrap()
}

fn push_faces(f: &MonotoneMap) -> Matrix {
    let src = faces(f.src().size() - 1);
    let dst = faces(f.dst().size() - 1);
    let index: BTreeMap<&Vec<usize>, usize> = dst.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let cols = src
        .iter()
        .map(|s| {
            let img: Vec<usize> = s.iter().map(|&v| f.apply(v)).collect();
            if img.windows(2).any(|w| w[0] == w[1]) {
                SparseVec::new()
            } else {
                SparseVec::unit(index[&img])
            }
        })
        .collect();
    Matrix::from_columns(dst.len(), cols)
}

/// The cosimplicial complex `[n] ↦ C_{−*}(Δ^n)`.
pub struct SimplexCosimplicial;

impl Cosimplicial for SimplexCosimplicial {
    fn level(&self, n: usize) -> Result<ChainComplex> {
        Ok(simplex_complex(n))
    }
    fn coface(&self, n: usize, i: usize) -> Result<Matrix> {
        Ok(push_faces(&MonotoneMap::coface(n, i)))
    }
    fn codegeneracy(&self, n: usize, i: usize) -> Result<Matrix> {
        Ok(push_faces(&MonotoneMap::codegeneracy(n, i)))
    }
    fn degree_bounds(&self) -> Option<DegreeBounds> {
        Some(DegreeBounds { lo: (0, -1), hi: (0, 0) })
    }
}
