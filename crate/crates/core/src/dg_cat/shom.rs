use std::collections::HashMap;

use super::chains::{pullback_values, ChainTuple};
use super::{DgCategory, DgFunctor};
use crate::chain_complex::{ChainComplex, Cosimplicial, DegreeBounds};
use crate::error::{Error, Result};
use crate::linalg::{sign, Accumulator, Field, Kernel, Matrix, Scalar, SparseVec};
use crate::ordinal::MonotoneMap;

/// Two parallel dg-functors `F, G: A → B`.
#[derive(Clone, Debug)]
pub struct Globe {
    pub a: DgCategory,
    pub b: DgCategory,
    pub f: DgFunctor,
    pub g: DgFunctor,
}

impl Globe {
    pub fn new(a: DgCategory, b: DgCategory, f: DgFunctor, g: DgFunctor) -> Result<Self> {
        f.validate(&a, &b)?;
        g.validate(&a, &b)?;
        Ok(Self { a, b, f, g })
    }

    /// Identity functors of a single category.
    pub fn endo(a: DgCategory) -> Self {
        let id = DgFunctor::identity(&a);
        Self { b: a.clone(), a, f: id.clone(), g: id }
    }
}

/// Arrows `A(X_0,X_1) ⊗ … ⊗ A(X_{n-1},X_n) → B(F X_0, G X_n)` for one string
/// of objects; basis `(s, t)` at `offset + s·target_dim + t`.
#[derive(Clone, Debug)]
pub struct ShomBlock {
    pub objects: Vec<usize>,
    pub offset: usize,
    pub factor_dims: Vec<usize>,
    pub tensor_dim: usize,
    pub target: (usize, usize),
    pub target_dim: usize,
}

impl ShomBlock {
    pub fn size(&self) -> usize {
        self.tensor_dim * self.target_dim
    }

    pub fn tensor_index(&self, factors: &[usize]) -> usize {
        factors.iter().zip(&self.factor_dims).fold(0, |acc, (&f, &d)| acc * d + f)
    }

    pub fn tensor_factors(&self, mut s: usize) -> Vec<usize> {
        let mut out = vec![0; self.factor_dims.len()];
        for i in (0..out.len()).rev() {
            out[i] = s % self.factor_dims[i];
            s /= self.factor_dims[i];
        }
        out
    }

    pub fn basis_index(&self, s: usize, t: usize) -> usize {
        self.offset + s * self.target_dim + t
    }
}

/// Level `n` of the cosimplicial complex of derived transformations.
#[derive(Clone, Debug)]
pub struct ShomSpace {
    pub level: usize,
    pub blocks: Vec<ShomBlock>,
    index: HashMap<Vec<usize>, usize>,
    pub complex: ChainComplex,
}

fn object_strings(nobj: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out.into_iter().flat_map(|s| (0..nobj).map(move |o| [s.clone(), vec![o]].concat())).collect();
    }
    out
}

impl ShomSpace {
    pub fn new(globe: &Globe, level: usize) -> Result<Self> {
        let (a, b) = (&globe.a, &globe.b);
        let mut blocks = Vec::new();
        let mut index = HashMap::new();
        let mut offset = 0;
        for objects in object_strings(a.num_objects(), level + 1) {
            let factor_dims: Vec<usize> = objects.windows(2).map(|w| a.hom_dim(w[0], w[1])).collect();
            let tensor_dim: usize = factor_dims.iter().product();
            let target = (globe.f.object(objects[0]), globe.g.object(objects[level]));
            let target_dim = b.hom_dim(target.0, target.1);
            if tensor_dim * target_dim == 0 {
                continue;
            }
            index.insert(objects.clone(), blocks.len());
            let blk = ShomBlock { objects, offset, factor_dims, tensor_dim, target, target_dim };
            offset += blk.size();
            blocks.push(blk);
        }
        let mut degrees = vec![0i64; offset];
        let mut cols = vec![SparseVec::new(); offset];
        for blk in &blocks {
            let hb = b.hom(blk.target.0, blk.target.1);
            let mut tdeg = Vec::with_capacity(blk.tensor_dim);
            let mut da: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); blk.tensor_dim];
            for s in 0..blk.tensor_dim {
                let fs = blk.tensor_factors(s);
                tdeg.push(ChainTuple::degree_of(a, &blk.objects, &fs));
                let d = ChainTuple::pure(blk.objects.clone(), fs).differential(a);
                for (g, c) in d.terms {
                    da[blk.tensor_index(&g)].push((s, c));
                }
            }
            for s in 0..blk.tensor_dim {
                for t in 0..blk.target_dim {
                    let e = blk.basis_index(s, t);
                    let deg = hb.degree(t) - tdeg[s];
                    degrees[e] = deg;
                    let mut acc = Accumulator::new();
                    for (t2, c) in hb.apply_d(&SparseVec::unit(t)).iter() {
                        acc.add(blk.basis_index(s, t2), c);
                    }
                    let sg = sign(deg % 2 == 0);
                    for (s2, c) in &da[s] {
                        acc.add(blk.basis_index(*s2, t), &(c * &sg));
                    }
                    cols[e] = acc.finish();
                }
            }
        }
        let complex = ChainComplex::new(Field::Rational, degrees, Matrix::from_columns(offset, cols))?;
        Ok(Self { level, blocks, index, complex })
    }

    pub fn dim(&self) -> usize {
        self.complex.dim()
    }

    pub fn block(&self, objects: &[usize]) -> Option<&ShomBlock> {
        self.index.get(objects).map(|&i| &self.blocks[i])
    }

    /// The value of `phi` on the basis tensor `factors` along `objects`.
    pub fn evaluate(&self, phi: &SparseVec, objects: &[usize], factors: &[usize]) -> SparseVec {
        let Some(blk) = self.block(objects) else { return SparseVec::new() };
        let s = blk.tensor_index(factors);
        let lo = blk.basis_index(s, 0);
        SparseVec::from_pairs(phi.iter().filter(|(i, _)| *i >= lo && *i < lo + blk.target_dim).map(|(i, c)| (i - lo, c.clone())))
    }

    /// The element sending the basis tensor `factors` along `objects` to `value`.
    pub fn element(&self, objects: &[usize], factors: &[usize], value: &SparseVec) -> SparseVec {
        let Some(blk) = self.block(objects) else { return SparseVec::new() };
        let s = blk.tensor_index(factors);
        value.remap(|t| Some(blk.basis_index(s, t)))
    }
}

/// Matrix of `σ_*` from level `k` to level `n`, for monotone `σ: [k] → [n]`.
pub fn pushforward(globe: &Globe, sigma: &MonotoneMap, src: &ShomSpace, dst: &ShomSpace) -> Matrix {
    let (a, b) = (&globe.a, &globe.b);
    let (k, n) = (src.level, dst.level);
    let mut values = vec![0];
    values.extend(sigma.values().iter().map(|&v| v + 1));
    values.push(n + 2);
    let mut cols: Vec<Accumulator> = (0..src.dim()).map(|_| Accumulator::new()).collect();
    for dblk in &dst.blocks {
        let mut ext = vec![dblk.objects[0]];
        ext.extend(&dblk.objects);
        ext.push(dblk.objects[n]);
        for u in 0..dblk.tensor_dim {
            let t = unit_padded(a, &ext, &dblk.tensor_factors(u));
            let pulled = pullback_values(a, &values, &t);
            for (g, c) in &pulled.terms {
                let xs = &pulled.objects[1..=k + 1];
                let Some(sblk) = src.block(xs) else { continue };
                let s = sblk.tensor_index(&g[1..=k]);
                let (xa, xb) = (pulled.objects[0], pulled.objects[1]);
                let (xc, xd) = (pulled.objects[k + 1], pulled.objects[k + 2]);
                let fa = globe.f.apply(xa, xb, &SparseVec::unit(g[0]));
                let go = globe.g.apply(xc, xd, &SparseVec::unit(g[k + 1]));
                let alpha_deg = a.hom(xa, xb).degree(g[0]);
                let tdeg = ChainTuple::degree_of(a, xs, &g[1..=k]);
                let hb = b.hom(sblk.target.0, sblk.target.1);
                let path = [globe.f.object(xa), sblk.target.0, sblk.target.1, globe.g.object(xd)];
                for t in 0..sblk.target_dim {
                    let deg = hb.degree(t) - tdeg;
                    let v = b.comp_path(&path, &[fa.clone(), SparseVec::unit(t), go.clone()]);
                    let coef = c * sign((deg * alpha_deg) % 2 != 0);
                    let col = &mut cols[sblk.basis_index(s, t)];
                    for (t2, x) in v.iter() {
                        col.add(dblk.basis_index(u, t2), &(&coef * x));
                    }
                }
            }
        }
    }
    Matrix::from_columns(dst.dim(), cols.into_iter().map(Accumulator::finish).collect())
}

/// The tensor `1 ⊗ u ⊗ 1` along the string `ext = (Y_0, Y_0, …, Y_n, Y_n)`.
fn unit_padded(a: &DgCategory, ext: &[usize], factors: &[usize]) -> ChainTuple {
    let n = ext.len() - 1;
    let mut out = ChainTuple::zero(ext.to_vec());
    for (i0, c0) in a.unit(ext[0]).iter() {
        for (i1, c1) in a.unit(ext[n]).iter() {
            let mut f = vec![i0];
            f.extend_from_slice(factors);
            f.push(i1);
            out.add_term(f, c0 * c1);
        }
    }
    out
}

/// The cosimplicial complex `n ↦ shom^{[n]}(F, G)`, precomputed up to a level.
pub struct ShomCosimplicial {
    pub globe: Globe,
    spaces: Vec<ShomSpace>,
}

impl ShomCosimplicial {
    pub fn new(globe: Globe, max_level: usize) -> Result<Self> {
        let spaces = (0..=max_level).map(|n| ShomSpace::new(&globe, n)).collect::<Result<Vec<_>>>()?;
        Ok(Self { globe, spaces })
    }

    pub fn space(&self, n: usize) -> Result<&ShomSpace> {
        self.spaces.get(n).ok_or(Error::Truncated(format!("level {n} was not precomputed")))
    }

    pub fn max_level(&self) -> usize {
        self.spaces.len() - 1
    }

    pub fn push(&self, sigma: &MonotoneMap) -> Result<Matrix> {
        let k = sigma.src().size() - 1;
        let n = sigma.dst().size() - 1;
        Ok(pushforward(&self.globe, sigma, self.space(k)?, self.space(n)?))
    }
}

impl Cosimplicial for ShomCosimplicial {
    fn level(&self, n: usize) -> Result<ChainComplex> {
        Ok(self.space(n)?.complex.clone())
    }

    fn coface(&self, n: usize, i: usize) -> Result<Matrix> {
        self.push(&MonotoneMap::coface(n, i))
    }

    fn codegeneracy(&self, n: usize, i: usize) -> Result<Matrix> {
        self.push(&MonotoneMap::codegeneracy(n, i))
    }

    fn degree_bounds(&self) -> Option<DegreeBounds> {
        let (amin, amax) = self.globe.a.degree_range();
        let (bmin, bmax) = self.globe.b.degree_range();
        Some(DegreeBounds { lo: (bmin, -amax), hi: (bmax, -amin) })
    }
}

/// Strict transformations: the equalizer of the two cofaces out of level 0.
#[derive(Clone, Debug)]
pub struct NaiveHom {
    pub complex: ChainComplex,
    pub kernel: Kernel,
}

impl NaiveHom {
    /// The level-0 component of a strict transformation.
    pub fn embed(&self, coords: &SparseVec) -> SparseVec {
        self.kernel.embed(coords)
    }
}

pub fn naive_hom(k: &ShomCosimplicial) -> Result<NaiveHom> {
    let d = k.coface(1, 0)?.add(&k.coface(1, 1)?.scaled(&crate::linalg::int(-1)));
    let kernel = d.kernel();
    let level0 = &k.space(0)?.complex;
    let degrees: Vec<i64> = kernel.basis.iter().map(|v| level0.degree_of(v).unwrap_or(0)).collect();
    let cols = kernel.basis.iter().map(|v| kernel.coordinates(&level0.apply_d(v))).collect();
    let complex = ChainComplex::new(Field::Rational, degrees, Matrix::from_columns(kernel.basis.len(), cols))?;
    Ok(NaiveHom { complex, kernel })
}
