use serde::Serialize;

use super::DgDiagram;
use crate::dg_cat::{chain_pullback_values, expand, ChainTuple, ShomSpace};
use crate::error::{Error, Result};
use crate::linalg::{sign, Accumulator, Scalar, SparseVec};
use crate::seq::SeqElement;

/// The ordinal `K = ⊔_r [m_r, M_r]` with its projections to `R` and `J`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KData {
    /// `(m_r, M_r)` per element `r` of `R`.
    pub bounds: Vec<(usize, usize)>,
    pub pi: Vec<usize>,
    pub kappa: Vec<usize>,
}

impl KData {
    pub fn len(&self) -> usize {
        self.kappa.len()
    }

    pub fn is_empty(&self) -> bool {
        self.kappa.is_empty()
    }

    pub fn offset(&self, r: usize) -> usize {
        self.bounds[..r].iter().map(|(m, mm)| mm - m + 1).sum()
    }

    /// Position in `K` of `j` in the component of `r`.
    pub fn index(&self, r: usize, j: usize) -> usize {
        self.offset(r) + j - self.bounds[r].0
    }
}

/// `K(J, W)` for `J = [j_max]` and `W` given per consecutive pair of `R`
/// (each list nonempty and the concatenation monotone).
pub fn build_k(j_max: usize, w: &[Vec<usize>]) -> Result<KData> {
    let flat: Vec<usize> = w.iter().flatten().copied().collect();
    if w.iter().any(Vec::is_empty) || flat.windows(2).any(|p| p[0] > p[1]) || flat.iter().any(|&x| x > j_max) {
        return Err(Error::Shape("W must be nonempty on every piece, monotone and land in J".into()));
    }
    let nr = w.len() + 1;
    let mut bounds = Vec::with_capacity(nr);
    for r in 0..nr {
        let m = if r == 0 { 0 } else { *w[r - 1].last().unwrap() };
        let mm = if r == nr - 1 { j_max } else { w[r][0] };
        if m > mm {
            return Err(Error::Invariant(format!("m_{r} > M_{r}")));
        }
        bounds.push((m, mm));
    }
    let mut pi = Vec::new();
    let mut kappa = Vec::new();
    for (r, &(m, mm)) in bounds.iter().enumerate() {
        for j in m..=mm {
            pi.push(r);
            kappa.push(j);
        }
    }
    Ok(KData { bounds, pi, kappa })
}

/// A homogeneous input: an element of `shom^{[k]}` of one 2-cell globe.
pub struct Input<'a> {
    pub space: &'a ShomSpace,
    pub value: SparseVec,
    pub degree: i64,
}

struct Term {
    coef: Scalar,
    objects: Vec<usize>,
    factors: Vec<usize>,
}

/// The structure map of a seq element on a chain `t` along `objects`
/// (objects of the first category over `[n]`): the value in the last
/// category. `inputs[f]` is the cochain of the 2-cell `f`, whose level must
/// match the number of occurrences of `f` minus one. The inputs act in the
/// order of the 2-cells, to the left of `t`.
pub fn evaluate_on_chain(
    diag: &DgDiagram,
    e: &SeqElement,
    n: usize,
    inputs: &[Input],
    objects: &[usize],
    factors: &[usize],
) -> Result<SparseVec> {
    let shape = &diag.shape;
    let ncols = shape.num_columns();
    if inputs.len() != shape.num_cells() || objects.len() != n + 1 || factors.len() != n {
        return Err(Error::Shape("inputs or chain do not match the shape".into()));
    }
    let col_deg: Vec<i64> = (0..ncols)
        .map(|c| (0..shape.num_cells()).filter(|&f| shape.column_of(f) == c).map(|f| inputs[f].degree).sum())
        .collect();
    let mut reorder = 0i64;
    for i in 0..ncols {
        for j in i + 1..ncols {
            reorder += col_deg[i] * col_deg[j];
        }
    }
    let mut terms = vec![Term { coef: sign(reorder % 2 != 0), objects: objects.to_vec(), factors: factors.to_vec() }];
    let mut w: Vec<usize> = e.w.clone();
    let mut j_max = n;
    for c in 0..ncols {
        let cells: Vec<usize> = (0..shape.num_cells()).filter(|&f| shape.column_of(f) == c).collect();
        let blocks: Vec<Vec<usize>> = cells.iter().map(|&f| e.block(f)).collect();
        for (q, b) in blocks.iter().enumerate() {
            if b.len() != inputs[cells[q]].space.level + 1 {
                return Err(Error::Shape(format!("cell {} occurs {} times, input has level {}", cells[q], b.len(), inputs[cells[q]].space.level)));
            }
        }
        let wk: Vec<Vec<usize>> = blocks.iter().map(|b| b.iter().map(|&p| w[p]).collect()).collect();
        let k = build_k(j_max, &wk)?;
        let cat = &diag.cats[c];
        let funs = &diag.functors[c];
        let mut next = Vec::new();
        for t in &terms {
            let mut prefix = vec![0i64; t.factors.len() + 1];
            for (j, &a) in t.factors.iter().enumerate() {
                prefix[j + 1] = prefix[j] + cat.hom(t.objects[j], t.objects[j + 1]).degree(a);
            }
            let mut vecs = Vec::with_capacity(k.len() - 1);
            let mut s = 0i64;
            for (r, &(m, mm)) in k.bounds.iter().enumerate() {
                for j in m..mm {
                    vecs.push(funs[r].apply(t.objects[j], t.objects[j + 1], &SparseVec::unit(t.factors[j])));
                }
                if r < cells.len() {
                    let inp = &inputs[cells[r]];
                    let m_next = k.bounds[r + 1].0;
                    s += inp.degree * prefix[mm];
                    let gap = ChainTuple::pure(t.objects[mm..=m_next].to_vec(), t.factors[mm..m_next].to_vec());
                    let vals: Vec<usize> = wk[r].iter().map(|&x| x - mm).collect();
                    let pulled = chain_pullback_values(cat, &vals, &gap);
                    let mut acc = Accumulator::new();
                    for (g, x) in &pulled.terms {
                        acc.add_vec(x, &inp.space.evaluate(&inp.value, &pulled.objects, g));
                    }
                    vecs.push(acc.finish());
                }
            }
            let objs: Vec<usize> = k.pi.iter().zip(&k.kappa).map(|(&r, &j)| funs[r].object(t.objects[j])).collect();
            let coef = &t.coef * sign(s % 2 != 0);
            for (g, x) in expand(&vecs) {
                next.push(Term { coef: &coef * x, objects: objs.clone(), factors: g });
            }
        }
        terms = next;
        let mut w2 = w.clone();
        for (p, &f) in e.word.iter().enumerate() {
            if shape.column_of(f) > c {
                let r = blocks.iter().filter(|b| b[0] < p).count();
                w2[p] = k.index(r, w[p]);
            }
        }
        w = w2;
        j_max = k.len() - 1;
    }
    let last = &diag.cats[ncols];
    let mut acc = Accumulator::new();
    for t in terms {
        let vecs: Vec<SparseVec> = t.factors.iter().map(|&a| SparseVec::unit(a)).collect();
        acc.add_vec(&t.coef, &last.comp_path(&t.objects, &vecs));
    }
    Ok(acc.finish())
}

/// The structure map on basis chains: the resulting element of
/// `shom^{[n]}` of the boundary globe, in `out`'s basis.
pub fn act_seq_homogeneous(diag: &DgDiagram, e: &SeqElement, n: usize, inputs: &[Input], out: &ShomSpace) -> Result<SparseVec> {
    if out.level != n {
        return Err(Error::Shape("output space has the wrong level".into()));
    }
    let mut acc = Accumulator::new();
    for blk in &out.blocks {
        for s in 0..blk.tensor_dim {
            let fs = blk.tensor_factors(s);
            let v = evaluate_on_chain(diag, e, n, inputs, &blk.objects, &fs)?;
            acc.add_vec(&Scalar::from_integer(1.into()), &out.element(&blk.objects, &fs, &v));
        }
    }
    Ok(acc.finish())
}

/// Splits a vector of a shom space into internal-degree components.
pub fn homogeneous_parts(space: &ShomSpace, v: &SparseVec) -> Vec<(i64, SparseVec)> {
    let mut parts: std::collections::BTreeMap<i64, Vec<(usize, Scalar)>> = Default::default();
    for (i, x) in v.iter() {
        parts.entry(space.complex.degree(i)).or_default().push((i, x.clone()));
    }
    parts.into_iter().map(|(d, p)| (d, SparseVec::from_pairs(p))).collect()
}

/// `act_seq` for arbitrary (inhomogeneous) inputs: multilinear extension.
pub fn act_seq(diag: &DgDiagram, e: &SeqElement, n: usize, inputs: &[(&ShomSpace, SparseVec)], out: &ShomSpace) -> Result<SparseVec> {
    let split: Vec<Vec<(i64, SparseVec)>> = inputs.iter().map(|(s, v)| homogeneous_parts(s, v)).collect();
    let mut acc = Accumulator::new();
    let mut idx = vec![0usize; inputs.len()];
    if split.iter().any(Vec::is_empty) {
        return Ok(SparseVec::new());
    }
    loop {
        let hom: Vec<Input> = idx
            .iter()
            .enumerate()
            .map(|(f, &i)| Input { space: inputs[f].0, value: split[f][i].1.clone(), degree: split[f][i].0 })
            .collect();
        acc.add_vec(&Scalar::from_integer(1.into()), &act_seq_homogeneous(diag, e, n, &hom, out)?);
        let mut f = 0;
        loop {
            if f == idx.len() {
                return Ok(acc.finish());
            }
            idx[f] += 1;
            if idx[f] < split[f].len() {
                break;
            }
            idx[f] = 0;
            f += 1;
        }
    }
}
