use std::collections::BTreeMap;

use num_traits::Zero;

use super::cosimplicial::{totalize, Cosimplicial, DegreeBounds, Totalization};
use super::lower::{is_degenerate, lower_dims, predicted_shape_dim, LowerComplex};
use super::ChainComplex;
use crate::error::{Error, Result};
use crate::linalg::{koszul_parity, sign, Accumulator, Matrix, Scalar, SparseVec};
use crate::ordinal::MonotoneMap;
use crate::seq::{compose_seq, ColoredSeq, Coloring, SeqElement};
use crate::two_ordinal::{TwoOrdinal, TwoOrdinalMap};

struct Tower<'a> {
    lowers: &'a [LowerComplex],
    shape_dim: i64,
}

impl Cosimplicial for Tower<'_> {
    fn level(&self, n: usize) -> Result<ChainComplex> {
        Ok(self.lowers[n].complex.clone())
    }
    fn coface(&self, n: usize, i: usize) -> Result<Matrix> {
        self.lowers[n - 1].upper_map(&MonotoneMap::coface(n, i), &self.lowers[n])
    }
    fn codegeneracy(&self, n: usize, i: usize) -> Result<Matrix> {
        self.lowers[n + 1].upper_map(&MonotoneMap::codegeneracy(n, i), &self.lowers[n])
    }
    fn degree_bounds(&self) -> Option<DegreeBounds> {
        Some(DegreeBounds { lo: (-self.shape_dim, -1), hi: (0, 0) })
    }
}

/// The realized operad component `O(U)`: the totalization over the output
/// index of the normalized lower chains, truncated to levels
/// `0..=level_bound`.
pub struct OperadComplex {
    pub shape: TwoOrdinal,
    pub lowers: Vec<LowerComplex>,
    pub tot: Totalization,
}

/// An element of a truncated `O(U)`: per level `n`, a chain of cells with
/// output `[n]`.
#[derive(Clone, Debug, PartialEq)]
pub struct OperadChain {
    pub shape: TwoOrdinal,
    pub levels: Vec<SparseVec>,
}

impl OperadChain {
    pub fn zero(shape: &TwoOrdinal, levels: usize) -> Self {
        Self { shape: shape.clone(), levels: vec![SparseVec::new(); levels] }
    }

    pub fn is_zero(&self) -> bool {
        self.levels.iter().all(SparseVec::is_zero)
    }

    pub fn add(&self, other: &OperadChain) -> OperadChain {
        let n = self.levels.len().max(other.levels.len());
        let get = |c: &OperadChain, i: usize| c.levels.get(i).cloned().unwrap_or_default();
        OperadChain { shape: self.shape.clone(), levels: (0..n).map(|i| get(self, i).add(&get(other, i))).collect() }
    }

    pub fn scaled(&self, c: &Scalar) -> OperadChain {
        OperadChain { shape: self.shape.clone(), levels: self.levels.iter().map(|v| v.scaled(c)).collect() }
    }

    pub fn sub(&self, other: &OperadChain) -> OperadChain {
        self.add(&other.scaled(&-crate::linalg::int(1)))
    }

    pub fn truncated(&self, levels: usize) -> OperadChain {
        OperadChain { shape: self.shape.clone(), levels: self.levels.iter().take(levels).cloned().collect() }
    }
}

impl OperadComplex {
    pub fn new(shape: &TwoOrdinal, level_bound: usize) -> Result<Self> {
        let lowers = (0..=level_bound).map(|n| LowerComplex::new(shape, n)).collect::<Result<Vec<_>>>()?;
        let tower = Tower { lowers: &lowers, shape_dim: predicted_shape_dim(shape) as i64 };
        let tot = totalize(&tower, level_bound)?;
        Ok(Self { shape: shape.clone(), lowers, tot })
    }

    pub fn level_bound(&self) -> usize {
        self.tot.level_bound
    }

    pub fn cell(&self, n: usize, i: usize) -> &SeqElement {
        &self.lowers[n].cells[i]
    }

    /// Total degree of a cell at level `n`.
    pub fn cell_degree(&self, n: usize, i: usize) -> i64 {
        n as i64 + self.lowers[n].complex.degree(i)
    }

    pub fn to_chain(&self, v: &SparseVec) -> OperadChain {
        OperadChain { shape: self.shape.clone(), levels: self.tot.to_levels(v) }
    }

    pub fn to_vector(&self, c: &OperadChain) -> Result<SparseVec> {
        if c.shape != self.shape {
            return Err(Error::Shape("chain lives on another shape".into()));
        }
        self.tot.from_levels(&c.levels)
    }

    pub fn d(&self, c: &OperadChain) -> Result<OperadChain> {
        Ok(self.to_chain(&self.tot.complex.apply_d(&self.to_vector(c)?)))
    }

    /// Homogeneous components by total degree.
    pub fn components(&self, c: &OperadChain) -> BTreeMap<i64, OperadChain> {
        let mut out: BTreeMap<i64, OperadChain> = BTreeMap::new();
        for (n, v) in c.levels.iter().enumerate() {
            for (i, x) in v.iter() {
                let e = out.entry(self.cell_degree(n, i)).or_insert_with(|| OperadChain::zero(&self.shape, c.levels.len()));
                e.levels[n] = e.levels[n].add(&SparseVec::from_pairs([(i, x.clone())]));
            }
        }
        out
    }

    pub fn degree_of(&self, c: &OperadChain) -> Option<i64> {
        let comps = self.components(c);
        (comps.len() == 1).then(|| *comps.keys().next().unwrap())
    }

    /// Builds a chain from explicit cells per level.
    pub fn family(&self, f: impl Fn(usize) -> Vec<(Scalar, SeqElement)>) -> Result<OperadChain> {
        let mut levels = Vec::new();
        for n in 0..=self.level_bound() {
            let mut acc = Accumulator::new();
            for (c, e) in f(n) {
                let i = self.lowers[n]
                    .index_of(&e)
                    .ok_or_else(|| Error::Invariant(format!("{e:?} is not a cell at level {n}")))?;
                acc.add(i, &c);
            }
            levels.push(acc.finish());
        }
        let chain = OperadChain { shape: self.shape.clone(), levels };
        self.to_vector(&chain)?;
        Ok(chain)
    }

    /// A degree-0 cocycle whose level-0 component is the given vertex.
    pub fn lift_vertex(&self, vertex: &SeqElement) -> Result<OperadChain> {
        let i = self.lowers[0].index_of(vertex).ok_or_else(|| Error::Invariant("not a vertex".into()))?;
        if self.lowers[0].complex.degree(i) != 0 {
            return Err(Error::Invariant("not a vertex".into()));
        }
        let mut levels = vec![SparseVec::new(); self.level_bound() + 1];
        levels[0] = SparseVec::unit(i);
        let start = OperadChain { shape: self.shape.clone(), levels };
        let v0 = self.to_vector(&start)?;
        let rhs = self.tot.complex.apply_d(&v0).neg();
        let c = &self.tot.complex;
        let unknowns: Vec<usize> = (0..c.dim()).filter(|&j| c.degree(j) == 0 && self.tot.locate(j).0 > 0).collect();
        let m = c.differential().submatrix(&(0..c.dim()).collect::<Vec<_>>(), &unknowns);
        let y = m.solve(&rhs).ok_or_else(|| Error::Invariant("vertex does not lift to a cocycle".into()))?;
        let y = SparseVec::from_pairs(y.iter().map(|(k, x)| (unknowns[k], x.clone())));
        Ok(self.to_chain(&v0.add(&y)))
    }

    /// Some chain `h` with `Dh = target`, if one exists in the truncation.
    pub fn solve_d(&self, target: &OperadChain) -> Result<Option<OperadChain>> {
        let b = self.to_vector(target)?;
        Ok(self.tot.complex.preimage(&b).map(|h| self.to_chain(&h)))
    }

    /// The augmentation of the level-0 component.
    pub fn augmentation(&self, c: &OperadChain) -> Scalar {
        c.levels.first().map(|v| self.lowers[0].augmentation(v)).unwrap_or_else(Scalar::zero)
    }
}

fn coloring_of(shape: &TwoOrdinal, e: &SeqElement, output: usize) -> Result<Coloring> {
    let k = lower_dims(shape, e);
    Coloring::new(shape.clone(), k.iter().map(|x| x + 1).collect(), output)
}

/// Chain-level operadic composition along `p: U → V`. `inner[g]` is an
/// element of `O` of the preimage ball of the `V`-cell `g`, `outer` an
/// element of `O(V)`; the result lands in `target = O(U)`.
///
/// At output level `n`, an outer cell with lower indices `l_g` is paired
/// with the level-`l_g` components of the inner elements and the cells are
/// composed in `seq`.
pub fn operad_compose_chains(
    p: &TwoOrdinalMap,
    inner: &[(&OperadComplex, &OperadChain)],
    outer: (&OperadComplex, &OperadChain),
    target: &OperadComplex,
) -> Result<OperadChain> {
    let v = p.dst();
    let u = p.src();
    if inner.len() != v.num_cells() || outer.0.shape != *v || target.shape != *u {
        return Err(Error::Shape("composition data does not match the map".into()));
    }
    let mut hosts = Vec::new();
    for (g, (cx, _)) in inner.iter().enumerate() {
        let ball = p.preimage_ball(&v.globe_ball(v.cell_at(g)))?;
        if ball.shape() != cx.shape {
            return Err(Error::Shape(format!("inner element {g} lives on the wrong shape")));
        }
        hosts.push(ball.host_cells());
    }
    let inner_comps: Vec<Vec<(i64, OperadChain)>> =
        inner.iter().map(|(cx, c)| cx.components(c).into_iter().collect()).collect();
    let mut result = OperadChain::zero(u, target.level_bound() + 1);
    let mut choice = vec![0usize; inner.len()];
    if inner_comps.iter().any(|c| c.is_empty()) {
        return Ok(result);
    }
    loop {
        let degs: Vec<i64> = choice.iter().enumerate().map(|(g, &k)| inner_comps[g][k].0).collect();
        let chains: Vec<&OperadChain> = choice.iter().enumerate().map(|(g, &k)| &inner_comps[g][k].1).collect();
        let part = compose_homogeneous(p, &hosts, inner, &chains, &degs, outer, target)?;
        result = result.add(&part);
        let mut g = choice.len();
        loop {
            if g == 0 {
                return Ok(result);
            }
            g -= 1;
            choice[g] += 1;
            if choice[g] < inner_comps[g].len() {
                break;
            }
            choice[g] = 0;
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn compose_homogeneous(
    p: &TwoOrdinalMap,
    hosts: &[Vec<usize>],
    inner: &[(&OperadComplex, &OperadChain)],
    chains: &[&OperadChain],
    degs: &[i64],
    outer: (&OperadComplex, &OperadChain),
    target: &OperadComplex,
) -> Result<OperadChain> {
    let v = p.dst();
    let r = v.num_cells();
    let total_inner: i64 = degs.iter().sum();
    let mut levels = Vec::new();
    for n in 0..=target.level_bound() {
        let mut acc = Accumulator::new();
        let Some(outer_level) = outer.1.levels.get(n) else {
            levels.push(SparseVec::new());
            continue;
        };
        if n > outer.0.level_bound() && !outer_level.is_zero() {
            return Err(Error::Truncated(format!("outer element not computed at level {n}")));
        }
        for (oi, oc) in outer_level.iter() {
            let ocell = outer.0.cell(n, oi);
            let l = lower_dims(v, ocell);
            let mut inner_terms: Vec<Vec<(Scalar, &SeqElement)>> = Vec::with_capacity(r);
            for g in 0..r {
                let cx = inner[g].0;
                if l[g] > cx.level_bound() {
                    return Err(Error::Truncated(format!("inner element {g} needed at level {}", l[g])));
                }
                let comp = chains[g].levels.get(l[g]).cloned().unwrap_or_default();
                inner_terms.push(comp.iter().map(|(i, x)| (x.clone(), cx.cell(l[g], i))).collect());
            }
            if inner_terms.iter().any(|t| t.is_empty()) {
                continue;
            }
            // (ι_1..ι_r, x_1..x_r) → (x_1, ι_1, ..., x_r, ι_r)
            let mut eval_degs: Vec<i64> = l.iter().map(|&k| -(k as i64)).collect();
            eval_degs.extend_from_slice(degs);
            let order: Vec<usize> = (0..r).flat_map(|g| [r + g, g]).collect();
            let eval_odd = koszul_parity(&eval_degs, &order) ^ ((n as i64 * total_inner) % 2 != 0);
            let outer_col = Coloring::new(v.clone(), l.iter().map(|k| k + 1).collect(), n + 1)?;
            let outer_seq = ColoredSeq { coloring: outer_col, element: ocell.clone() };
            let mut pick = vec![0usize; r];
            loop {
                let mut coeff = oc.clone();
                let mut inner_seqs = Vec::with_capacity(r);
                let mut grouped_degs = Vec::new();
                let mut grouped_hosts = Vec::new();
                for g in 0..r {
                    let (c, e) = &inner_terms[g][pick[g]];
                    coeff *= c;
                    let shape = &inner[g].0.shape;
                    let k = lower_dims(shape, e);
                    for (local, &kf) in k.iter().enumerate() {
                        grouped_degs.push(-(kf as i64));
                        grouped_hosts.push(hosts[g][local]);
                    }
                    inner_seqs.push(ColoredSeq { coloring: coloring_of(shape, e, l[g] + 1)?, element: (*e).clone() });
                }
                let comp = compose_seq(p, &inner_seqs, &outer_seq)?;
                if !is_degenerate(&comp.element) {
                    let mut order: Vec<usize> = (0..grouped_hosts.len()).collect();
                    order.sort_by_key(|&i| grouped_hosts[i]);
                    let odd = eval_odd ^ koszul_parity(&grouped_degs, &order);
                    let idx = target.lowers[n]
                        .index_of(&comp.element)
                        .ok_or_else(|| Error::Invariant("composite cell missing from target".into()))?;
                    acc.add(idx, &(coeff * sign(odd)));
                }
                let mut g = r;
                loop {
                    if g == 0 {
                        break;
                    }
                    g -= 1;
                    pick[g] += 1;
                    if pick[g] < inner_terms[g].len() {
                        break;
                    }
                    pick[g] = 0;
                }
                if pick.iter().all(|&x| x == 0) {
                    break;
                }
            }
        }
        levels.push(acc.finish());
    }
    Ok(OperadChain { shape: target.shape.clone(), levels })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;

    #[test]
    fn globe_operad_is_a_complex() {
        let o = OperadComplex::new(&TwoOrdinal::globe(), 3).unwrap();
        assert!(o.tot.complex.d_squared_is_zero());
        let v = o.lift_vertex(&SeqElement::new(vec![0], vec![0])).unwrap();
        assert!(o.d(&v).unwrap().is_zero());
        assert_eq!(o.augmentation(&v), int(1));
    }

    #[test]
    fn interleavings_are_homotopic() {
        let u = TwoOrdinal::new(vec![2, 2]).unwrap();
        let o = OperadComplex::new(&u, 2).unwrap();
        let e1 = o.lift_vertex(&SeqElement::new(vec![0, 1], vec![0])).ok();
        assert!(e1.is_none());
        let e1 = o.lift_vertex(&SeqElement::new(vec![0, 1], vec![0, 0])).unwrap();
        let e2 = o.lift_vertex(&SeqElement::new(vec![1, 0], vec![0, 0])).unwrap();
        let h = o.solve_d(&e1.sub(&e2)).unwrap().unwrap();
        assert_eq!(o.degree_of(&h), Some(-1));
    }
}
