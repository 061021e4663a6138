use std::collections::HashMap;

use serde::Serialize;

use super::ChainComplex;
use crate::error::{Error, Result};
use crate::linalg::{sign, Accumulator, Field, Matrix, SparseVec};
use crate::ordinal::MonotoneMap;
use crate::seq::{Coloring, SeqElement};
use crate::two_ordinal::TwoOrdinal;

/// Nondegenerate cells of the multisimplicial set `seq(U)^J` for `J = [n]`,
/// with arbitrary lower indices (every block nonempty).
pub fn enumerate_lower_cells(shape: &TwoOrdinal, n: usize) -> Vec<SeqElement> {
    let m = shape.num_cells();
    let cols: Vec<usize> = (0..m).map(|f| shape.column_of(f)).collect();
    let mut out = Vec::new();
    if m == 0 {
        out.push(SeqElement::empty());
        return out;
    }
    struct St<'a> {
        cols: &'a [usize],
        n: usize,
        appeared: Vec<bool>,
        closed: Vec<bool>,
        word: Vec<usize>,
        w: Vec<usize>,
    }
    fn rec(st: &mut St, out: &mut Vec<SeqElement>) {
        let m = st.cols.len();
        if st.appeared.iter().all(|&a| a) {
            out.push(SeqElement::new(st.word.clone(), st.w.clone()));
        }
        let last_w = st.w.last().copied().unwrap_or(0);
        let last_x = st.word.last().copied();
        for x in 0..m {
            if st.closed[x] {
                continue;
            }
            let same_col_ok = (0..m).all(|f| {
                st.cols[f] != st.cols[x] || (f < x && st.appeared[f]) || (f > x && !st.appeared[f]) || f == x
            });
            if !same_col_ok {
                continue;
            }
            let lo = if last_x == Some(x) { last_w + 1 } else { last_w };
            if lo > st.n {
                continue;
            }
            let saved_closed = st.closed.clone();
            let saved_appeared = st.appeared[x];
            for f in 0..m {
                if f != x && st.appeared[f] && st.cols[f] <= st.cols[x] {
                    st.closed[f] = true;
                }
            }
            st.appeared[x] = true;
            for v in lo..=st.n {
                st.word.push(x);
                st.w.push(v);
                rec(st, out);
                st.word.pop();
                st.w.pop();
            }
            st.appeared[x] = saved_appeared;
            st.closed = saved_closed;
        }
    }
    let mut st = St { cols: &cols, n, appeared: vec![false; m], closed: vec![false; m], word: Vec::new(), w: Vec::new() };
    rec(&mut st, &mut out);
    out
}

/// Lower indices `k_f` (block sizes minus one).
pub fn lower_dims(shape: &TwoOrdinal, e: &SeqElement) -> Vec<usize> {
    let mut k = vec![0usize; shape.num_cells()];
    for &f in &e.word {
        k[f] += 1;
    }
    k.iter().map(|&c| c.saturating_sub(1)).collect()
}

pub fn is_degenerate(e: &SeqElement) -> bool {
    (1..e.word.len()).any(|p| e.word[p] == e.word[p - 1] && e.w[p] == e.w[p - 1])
}

/// The face removing occurrence `i` of cell `f`; `None` when the result is
/// degenerate.
pub fn lower_face(e: &SeqElement, f: usize, i: usize) -> Option<SeqElement> {
    let pos = e.block(f)[i];
    let mut word = e.word.clone();
    let mut w = e.w.clone();
    word.remove(pos);
    w.remove(pos);
    let out = SeqElement::new(word, w);
    (!is_degenerate(&out)).then_some(out)
}

/// Apply a monotone map to the output values; `None` when degenerate.
pub fn upper_image(e: &SeqElement, map: &MonotoneMap) -> Option<SeqElement> {
    let out = SeqElement::new(e.word.clone(), e.w.iter().map(|&x| map.apply(x)).collect());
    (!is_degenerate(&out)).then_some(out)
}

/// Normalized chains of `seq(U)^{[n]}` over all lower indices.
#[derive(Clone, Debug)]
pub struct LowerComplex {
    pub shape: TwoOrdinal,
    pub n: usize,
    pub cells: Vec<SeqElement>,
    index: HashMap<SeqElement, usize>,
    pub complex: ChainComplex,
}

impl LowerComplex {
    pub fn new(shape: &TwoOrdinal, n: usize) -> Result<Self> {
        Self::bounded(shape, n, usize::MAX)
    }

    /// Only cells of dimension `≤ bound` (a subcomplex).
    pub fn bounded(shape: &TwoOrdinal, n: usize, bound: usize) -> Result<Self> {
        let cells: Vec<SeqElement> = enumerate_lower_cells(shape, n)
            .into_iter()
            .filter(|e| lower_dims(shape, e).iter().sum::<usize>() <= bound)
            .collect();
        let index: HashMap<SeqElement, usize> = cells.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let degrees: Vec<i64> = cells.iter().map(|e| -(lower_dims(shape, e).iter().sum::<usize>() as i64)).collect();
        let mut cols = Vec::with_capacity(cells.len());
        for e in &cells {
            let k = lower_dims(shape, e);
            let mut acc = Accumulator::new();
            let mut before = 0usize;
            for f in 0..shape.num_cells() {
                for i in 0..=k[f] {
                    if k[f] == 0 {
                        break;
                    }
                    if let Some(face) = lower_face(e, f, i) {
                        let j = *index
                            .get(&face)
                            .ok_or_else(|| Error::Invariant("face of a cell is not a cell".into()))?;
                        acc.add(j, &sign((before + i) % 2 == 1));
                    }
                }
                before += k[f];
            }
            cols.push(acc.finish());
        }
        let complex = ChainComplex::new(Field::Rational, degrees, Matrix::from_columns(cells.len(), cols))?;
        Ok(Self { shape: shape.clone(), n, cells, index, complex })
    }

    pub fn index_of(&self, e: &SeqElement) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn dim(&self) -> usize {
        self.cells.len()
    }

    /// Matrix of the map induced on output values by `map: [n] → [m]`,
    /// into `target` (which must be the complex at `[m]`).
    pub fn upper_map(&self, map: &MonotoneMap, target: &LowerComplex) -> Result<Matrix> {
        let cols = self
            .cells
            .iter()
            .map(|e| match upper_image(e, map) {
                None => Ok(SparseVec::new()),
                Some(img) => target
                    .index_of(&img)
                    .map(SparseVec::unit)
                    .ok_or_else(|| Error::Invariant("image cell missing from target level".into())),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix::from_columns(target.dim(), cols))
    }

    /// The augmentation: 1 on every vertex.
    pub fn augmentation(&self, v: &SparseVec) -> crate::linalg::Scalar {
        let mut s = crate::linalg::int(0);
        for (i, x) in v.iter() {
            if self.complex.degree(i) == 0 {
                s += x;
            }
        }
        s
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Realization {
    #[serde(skip)]
    pub lower: LowerComplex,
    pub exhausted: bool,
    pub max_degree: usize,
}

/// The realization at the output color of `coloring` (the input colors are
/// summed over). Cells of dimension above `degree_bound` are cut off and
/// reported.
pub fn realize_seq(coloring: &Coloring, degree_bound: usize) -> Result<Realization> {
    let n = coloring.output - 1;
    let all = enumerate_lower_cells(&coloring.shape, n);
    let max_degree = all.iter().map(|e| lower_dims(&coloring.shape, e).iter().sum::<usize>()).max().unwrap_or(0);
    let lower = LowerComplex::bounded(&coloring.shape, n, degree_bound)?;
    Ok(Realization { lower, exhausted: max_degree <= degree_bound, max_degree })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AugmentationReport {
    pub exhausted: bool,
    #[serde(rename = "H0")]
    pub h0: usize,
    pub higher: usize,
    pub euler: i64,
    pub top_dim: usize,
    pub predicted_top_dim: usize,
    pub augmentation_is_chain_map: bool,
    pub pass: bool,
}

/// Dimension of the cell space `S(U)` of the shape alone.
pub fn predicted_shape_dim(shape: &TwoOrdinal) -> usize {
    let per_col: Vec<usize> = shape.columns().iter().map(|c| c - 1).collect();
    (0..per_col.len()).filter(|&m| per_col[m + 1..].iter().any(|&x| x > 0)).map(|m| per_col[m]).sum()
}

pub fn augmentation_qiso_check(coloring: &Coloring, degree_bound: usize) -> Result<AugmentationReport> {
    let r = realize_seq(coloring, degree_bound)?;
    let c = &r.lower.complex;
    let h = c.homology()?;
    let h0 = h.get(&0).copied().unwrap_or(0);
    let higher: usize = h.iter().filter(|(&k, _)| k != 0).map(|(_, &d)| d).sum();
    let aug_ok = (0..c.dim())
        .filter(|&i| c.degree(i) == -1)
        .all(|i| r.lower.augmentation(&c.differential().cols[i]) == crate::linalg::int(0));
    let n = coloring.output - 1;
    let predicted = if coloring.shape.num_cells() == 0 { 0 } else { predicted_shape_dim(&coloring.shape) + n };
    let pass = r.exhausted && h0 == 1 && higher == 0 && aug_ok && c.euler_characteristic() == 1 && r.max_degree == predicted;
    Ok(AugmentationReport {
        exhausted: r.exhausted,
        h0,
        higher,
        euler: c.euler_characteristic(),
        top_dim: r.max_degree,
        predicted_top_dim: predicted,
        augmentation_is_chain_map: aug_ok,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(c: &[usize]) -> TwoOrdinal {
        TwoOrdinal::new(c.to_vec()).unwrap()
    }

    #[test]
    fn two_by_two_at_a_point() {
        let u = shape(&[2, 2]);
        let cells = enumerate_lower_cells(&u, 0);
        let words: Vec<Vec<usize>> = cells.iter().map(|e| e.word.clone()).collect();
        assert_eq!(words, vec![vec![0, 1], vec![1, 0], vec![1, 0, 1]]);
        let c = LowerComplex::new(&u, 0).unwrap();
        let h = c.complex.homology().unwrap();
        assert_eq!((h[&0], h[&-1]), (1, 0));
    }

    #[test]
    fn globe_is_a_simplex() {
        let g = TwoOrdinal::globe();
        for n in 0..4 {
            let c = LowerComplex::new(&g, n).unwrap();
            assert_eq!(c.dim(), (1usize << (n + 1)) - 1);
            assert_eq!(c.complex.euler_characteristic(), 1);
        }
    }

    #[test]
    fn realization_examples() {
        for cols in [vec![2], vec![2, 2], vec![3], vec![3, 1]] {
            for j in 1..=2 {
                let col = Coloring::uniform(shape(&cols), 1, j).unwrap();
                let rep = augmentation_qiso_check(&col, 16).unwrap();
                assert!(rep.pass, "{cols:?} J={j}: {rep:?}");
            }
        }
        let r = realize_seq(&Coloring::uniform(shape(&[3, 3]), 1, 2).unwrap(), 1).unwrap();
        assert!(!r.exhausted);
    }

    #[test]
    fn empty_shape() {
        let u = shape(&[1, 1]);
        let c = LowerComplex::new(&u, 2).unwrap();
        assert_eq!(c.dim(), 1);
        let rep = augmentation_qiso_check(&Coloring::uniform(TwoOrdinal::point(), 1, 1).unwrap(), 4).unwrap();
        assert!(rep.pass);
    }
}
