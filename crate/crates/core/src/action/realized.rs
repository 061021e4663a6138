use std::collections::BTreeMap;

use super::evaluate::act_seq;
use super::DgDiagram;
use crate::chain_complex::{lower_dims, totalize, OperadChain, OperadComplex, Totalization};
use crate::dg_cat::{ShomCosimplicial, ShomSpace};
use crate::error::{Error, Result};
use crate::linalg::{sign, Accumulator, SparseVec};

/// The totalized inputs and output of a diagram, truncated: every 2-cell
/// globe up to `input_bound`, the boundary globe up to `output_bound`.
pub struct RealizedAction {
    pub diagram: DgDiagram,
    pub inputs: Vec<ShomCosimplicial>,
    pub input_tots: Vec<Totalization>,
    pub output: ShomCosimplicial,
    pub output_tot: Totalization,
}

/// Splits a vector of a totalization by total degree.
pub fn total_degree_parts(tot: &Totalization, v: &SparseVec) -> BTreeMap<i64, SparseVec> {
    let mut parts: BTreeMap<i64, Vec<_>> = BTreeMap::new();
    for (i, x) in v.iter() {
        parts.entry(tot.complex.degree(i)).or_default().push((i, x.clone()));
    }
    parts.into_iter().map(|(d, p)| (d, SparseVec::from_pairs(p))).collect()
}

impl RealizedAction {
    pub fn new(diagram: DgDiagram, input_bound: usize, output_bound: usize) -> Result<Self> {
        let mut inputs = Vec::new();
        let mut input_tots = Vec::new();
        for f in 0..diagram.shape.num_cells() {
            let k = ShomCosimplicial::new(diagram.cell_globe(f), input_bound)?;
            input_tots.push(totalize(&k, input_bound)?);
            inputs.push(k);
        }
        let output = ShomCosimplicial::new(diagram.boundary_globe(), output_bound)?;
        let output_tot = totalize(&output, output_bound)?;
        Ok(Self { diagram, inputs, input_tots, output, output_tot })
    }

    pub fn input_space(&self, f: usize, k: usize) -> Result<&ShomSpace> {
        self.inputs[f].space(k)
    }

    pub fn output_space(&self, n: usize) -> Result<&ShomSpace> {
        self.output.space(n)
    }

    /// Output levels of `x · (Φ_f)` in level coordinates, up to the output
    /// bound and the levels present in `x`.
    pub fn act_levels(&self, op: &OperadComplex, x: &OperadChain, inputs: &[SparseVec]) -> Result<Vec<SparseVec>> {
        if op.shape != self.diagram.shape || inputs.len() != self.inputs.len() {
            return Err(Error::Shape("operad element, diagram and inputs disagree".into()));
        }
        let nlev = x.levels.len().min(self.output_tot.level_bound + 1);
        let mut out: Vec<Accumulator> = Vec::new();
        out.resize_with(nlev, Accumulator::new);
        let split: Vec<Vec<(i64, SparseVec)>> =
            inputs.iter().enumerate().map(|(f, v)| total_degree_parts(&self.input_tots[f], v).into_iter().collect()).collect();
        if split.iter().any(Vec::is_empty) {
            return Ok(vec![SparseVec::new(); nlev]);
        }
        let mut idx = vec![0usize; inputs.len()];
        loop {
            let degs: Vec<i64> = idx.iter().enumerate().map(|(f, &i)| split[f][i].0).collect();
            let comps: Vec<Vec<SparseVec>> =
                idx.iter().enumerate().map(|(f, &i)| self.input_tots[f].to_levels(&split[f][i].1)).collect();
            let total: i64 = degs.iter().sum();
            for (n, acc) in out.iter_mut().enumerate() {
                let space = self.output_space(n)?;
                for (i, c) in x.levels[n].iter() {
                    let e = op.cell(n, i);
                    let k = lower_dims(&op.shape, e);
                    let mut args = Vec::with_capacity(k.len());
                    let mut zero = false;
                    for (f, &kf) in k.iter().enumerate() {
                        let v = comps[f].get(kf).ok_or_else(|| Error::Truncated(format!("input {f} needed at level {kf}")))?;
                        zero |= v.is_zero();
                        args.push((self.input_space(f, kf)?, v.clone()));
                    }
                    if zero {
                        continue;
                    }
                    let mut s = n as i64 * total;
                    for f in 0..k.len() {
                        for g in f..k.len() {
                            s += degs[f] * k[g] as i64;
                        }
                    }
                    let v = act_seq(&self.diagram, e, n, &args, space)?;
                    acc.add_vec(&(c * sign(s % 2 != 0)), &v);
                }
            }
            let mut f = 0;
            loop {
                if f == idx.len() {
                    return Ok(out.into_iter().map(Accumulator::finish).collect());
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

    /// `x · (Φ_f)` as an element of the output totalization.
    pub fn act(&self, op: &OperadComplex, x: &OperadChain, inputs: &[SparseVec]) -> Result<SparseVec> {
        self.output_tot.from_levels(&self.act_levels(op, x, inputs)?)
    }

    /// Both sides of `D(x·Φ) = Dx·Φ + (−1)^{|x|} Σ_f ± x·(…DΦ_f…)` for
    /// homogeneous `x` and inputs.
    pub fn leibniz_sides(&self, op: &OperadComplex, x: &OperadChain, inputs: &[SparseVec]) -> Result<(SparseVec, SparseVec)> {
        let xd = op.degree_of(x).unwrap_or(0);
        let lhs = self.output_tot.complex.apply_d(&self.act(op, x, inputs)?);
        let mut rhs = self.act(op, &op.d(x)?, inputs)?;
        let mut before = 0i64;
        for f in 0..inputs.len() {
            let tot = &self.input_tots[f];
            let mut args = inputs.to_vec();
            args[f] = tot.complex.apply_d(&inputs[f]);
            let s = sign((xd + before) % 2 != 0);
            rhs = rhs.add(&self.act(op, x, &args)?.scaled(&s));
            before += tot.complex.degree_of(&inputs[f]).unwrap_or(0);
        }
        Ok((lhs, rhs))
    }
}
