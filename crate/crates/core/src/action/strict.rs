use serde::Serialize;

use super::{act_seq, DgDiagram, RealizedAction};
use crate::chain_complex::{OperadChain, OperadComplex};
use crate::dg_cat::{naive_hom, ShomCosimplicial};
use crate::error::Result;
use crate::linalg::SparseVec;
use crate::ordinal::{MonotoneMap, Ordinal};
use crate::seq::{enumerate_seq, Coloring};

/// Bases of the strict transformations of every 2-cell, as level-0
/// elements of the cell's shom.
pub fn strict_bases(diag: &DgDiagram) -> Result<Vec<Vec<SparseVec>>> {
    (0..diag.shape.num_cells())
        .map(|f| {
            let k = ShomCosimplicial::new(diag.cell_globe(f), 1)?;
            Ok(naive_hom(&k)?.kernel.basis.clone())
        })
        .collect()
}

/// A strict transformation seen at level `k`: its image under `[0] → [k]`
/// picking the minimum.
pub fn strict_at_level(k: &ShomCosimplicial, theta: &SparseVec, level: usize) -> Result<SparseVec> {
    let s = MonotoneMap::new(Ordinal::bracket(0), Ordinal::bracket(level), vec![0])?;
    Ok(k.push(&s)?.apply(theta))
}

/// Pasting of strict transformations of degree 0: vertical composites per
/// column, whiskered together column by column. Level-0 element of the
/// boundary globe.
pub fn paste(diag: &DgDiagram, thetas: &[SparseVec], out: &ShomCosimplicial) -> Result<SparseVec> {
    let level0 = out.space(0)?;
    let shape = &diag.shape;
    let mut result = SparseVec::new();
    for x in 0..diag.cats[0].num_objects() {
        let mut lo = x;
        let mut hi = x;
        let mut v = diag.cats[0].unit(x).clone();
        let mut f = 0;
        for c in 0..shape.num_columns() {
            let funs = &diag.functors[c];
            let cat = &diag.cats[c + 1];
            let top = hi;
            let mut vert = cat.unit(funs[0].object(top)).clone();
            for i in 0..shape.column_size(c) - 1 {
                let k = ShomCosimplicial::new(diag.cell_globe(f), 0)?;
                let t = k.space(0)?.evaluate(&thetas[f], &[top], &[]);
                vert = cat.compose(funs[0].object(top), funs[i].object(top), funs[i + 1].object(top), &t, &vert);
                f += 1;
            }
            let last = funs.len() - 1;
            let whisk = funs[0].apply(lo, hi, &v);
            v = cat.compose(funs[0].object(lo), funs[0].object(hi), funs[last].object(hi), &vert, &whisk);
            lo = funs[0].object(lo);
            hi = funs[last].object(hi);
        }
        result = result.add(&level0.element(&[x], &[], &v));
    }
    Ok(result)
}

#[derive(Clone, Debug, Serialize)]
pub struct TrivReport {
    pub elements: usize,
    pub input_combinations: usize,
    pub all_equal: bool,
    pub strict_output: bool,
    pub matches_paste: bool,
    pub nonzero_outputs: usize,
}

/// For every choice of strict basis inputs, every seq element of the
/// coloring acts the same way, and the common value is the pasting pushed
/// to the output level.
pub fn triv_factorization_check(diag: &DgDiagram, coloring: &Coloring, guard: usize) -> Result<TrivReport> {
    let elements = enumerate_seq(coloring, guard)?;
    let bases = strict_bases(diag)?;
    let n = coloring.output - 1;
    let cells = diag.shape.num_cells();
    let inputs_cos: Vec<ShomCosimplicial> = (0..cells)
        .map(|f| ShomCosimplicial::new(diag.cell_globe(f), coloring.inputs[f] - 1))
        .collect::<Result<_>>()?;
    let out = ShomCosimplicial::new(diag.boundary_globe(), n)?;
    let mut combos: Vec<Vec<usize>> = vec![Vec::new()];
    for b in &bases {
        combos = combos.into_iter().flat_map(|c| (0..b.len()).map(move |i| [c.clone(), vec![i]].concat())).collect();
    }
    let mut report = TrivReport { elements: elements.len(), input_combinations: combos.len(), all_equal: true, strict_output: true, matches_paste: true, nonzero_outputs: 0 };
    let push = out.push(&MonotoneMap::new(Ordinal::bracket(0), Ordinal::bracket(n), vec![0])?)?;
    for combo in &combos {
        let thetas: Vec<SparseVec> = combo.iter().enumerate().map(|(f, &i)| bases[f][i].clone()).collect();
        let args: Vec<SparseVec> = (0..cells)
            .map(|f| strict_at_level(&inputs_cos[f], &thetas[f], coloring.inputs[f] - 1))
            .collect::<Result<_>>()?;
        let mut first: Option<SparseVec> = None;
        for e in &elements {
            let a: Vec<_> = (0..cells).map(|f| (inputs_cos[f].space(coloring.inputs[f] - 1).unwrap(), args[f].clone())).collect();
            let v = act_seq(diag, e, n, &a, out.space(n)?)?;
            match &first {
                None => first = Some(v),
                Some(w) => report.all_equal &= *w == v,
            }
        }
        let zero_deg = thetas.iter().enumerate().all(|(f, t)| {
            let sp = inputs_cos[f].space(0).unwrap();
            sp.complex.degree_of(t).unwrap_or(0) == 0
        });
        let level0_elems = enumerate_seq(&Coloring::new(diag.shape.clone(), vec![1; cells], 1)?, guard)?;
        let a0: Vec<_> = (0..cells).map(|f| (inputs_cos[f].space(0).unwrap(), thetas[f].clone())).collect();
        let v0 = act_seq(diag, &level0_elems[0], 0, &a0, out.space(0)?)?;
        if let Some(w) = &first {
            report.nonzero_outputs += usize::from(!w.is_zero());
            report.strict_output &= *w == push.apply(&v0);
        }
        if zero_deg {
            report.matches_paste &= v0 == paste(diag, &thetas, &out)?;
        }
    }
    Ok(report)
}

/// `x · embed(θ) = embed(ε(x₀) · θ_pasted)`: returns both sides.
pub fn intertwining_sides(ra: &RealizedAction, op: &OperadComplex, x: &OperadChain, thetas: &[SparseVec]) -> Result<(SparseVec, SparseVec)> {
    let inputs: Vec<SparseVec> = thetas
        .iter()
        .enumerate()
        .map(|(f, t)| ra.input_tots[f].from_levels(&[t.clone()]))
        .collect::<Result<_>>()?;
    let lhs = ra.act(op, x, &inputs)?;
    let cells = ra.diagram.shape.num_cells();
    let elems = enumerate_seq(&Coloring::new(ra.diagram.shape.clone(), vec![1; cells], 1)?, 1 << 20)?;
    let a0: Vec<_> = (0..cells).map(|f| (ra.input_space(f, 0).unwrap(), thetas[f].clone())).collect();
    let v0 = act_seq(&ra.diagram, &elems[0], 0, &a0, ra.output_space(0)?)?;
    let eps = op.augmentation(x);
    let rhs = ra.output_tot.from_levels(&[v0.scaled(&eps)])?;
    Ok((lhs, rhs))
}
