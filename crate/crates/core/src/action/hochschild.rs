use std::collections::BTreeMap;

use serde::Serialize;

use super::{DgDiagram, RealizedAction};
use crate::chain_complex::{totalize, OperadChain, OperadComplex, Totalization};
use crate::dg_cat::{DgCategory, Globe, ShomCosimplicial};
use crate::error::{Error, Result};
use crate::linalg::{int, sign, SparseVec};
use crate::seq::SeqElement;
use crate::two_ordinal::TwoOrdinal;

/// `Rhom(Id, Id)` of a category, truncated at a level.
pub struct HochschildComplex {
    pub cosimplicial: ShomCosimplicial,
    pub tot: Totalization,
}

#[derive(Clone, Debug, Serialize)]
pub struct HochschildReport {
    pub level_bound: usize,
    pub dims: BTreeMap<i64, usize>,
    pub complete_degrees: Vec<i64>,
}

impl HochschildComplex {
    pub fn new(a: &DgCategory, level_bound: usize) -> Result<Self> {
        let cosimplicial = ShomCosimplicial::new(Globe::endo(a.clone()), level_bound)?;
        let tot = totalize(&cosimplicial, level_bound)?;
        Ok(Self { cosimplicial, tot })
    }

    /// Cohomology in the degrees where the truncation is exact.
    pub fn cohomology(&self) -> Result<BTreeMap<i64, usize>> {
        self.tot.complete_homology()
    }

    pub fn report(&self) -> Result<HochschildReport> {
        Ok(HochschildReport {
            level_bound: self.tot.level_bound,
            dims: self.cohomology()?,
            complete_degrees: self.tot.complete_degrees(),
        })
    }
}

/// The Hochschild complex with enough levels for cohomology through
/// `degree_bound` when the category is concentrated in degree 0.
pub fn hochschild(a: &DgCategory, degree_bound: usize) -> Result<HochschildComplex> {
    HochschildComplex::new(a, degree_bound + 1)
}

fn vertex(word: Vec<usize>) -> SeqElement {
    let n = word.len();
    SeqElement::new(word, vec![0; n])
}

/// The two side-by-side products, a homotopy between them, and the
/// vertical product, all acting on the Hochschild complex of one category.
pub struct CupHomotopy {
    pub side: OperadComplex,
    pub e1: OperadChain,
    pub e2: OperadChain,
    pub h: OperadChain,
    pub side_action: RealizedAction,
    pub vertical: OperadComplex,
    pub m: OperadChain,
    pub vertical_action: RealizedAction,
}

/// The degree-0 cocycle whose level `n` is the sum of the cells
/// `f0^{p+1} f1^{q+1}` over `p + q = n` (or `f1` first, with sign
/// `(−1)^{pq}`).
pub fn interleaving_family(side: &OperadComplex, f0_first: bool) -> Result<OperadChain> {
    side.family(|n| {
        (0..=n)
            .map(|p| {
                let (a, b) = if f0_first { (0, 1) } else { (1, 0) };
                let q = n - p;
                let (first, second) = if f0_first { (p, q) } else { (q, p) };
                let mut word = vec![a; first + 1];
                word.extend(vec![b; second + 1]);
                let mut w: Vec<usize> = (0..=first).collect();
                w.extend(first..=n);
                (if f0_first { int(1) } else { sign(p * q % 2 == 1) }, SeqElement::new(word, w))
            })
            .collect()
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct HomotopyWitness {
    pub h_degree: Option<i64>,
    pub dh_equals_difference: bool,
    pub e1_cocycle: bool,
    pub e2_cocycle: bool,
}

impl CupHomotopy {
    /// Builds everything with output levels up to `level_bound`.
    pub fn new(a: &DgCategory, level_bound: usize) -> Result<Self> {
        let side_shape = TwoOrdinal::new(vec![2, 2])?;
        let side = OperadComplex::new(&side_shape, level_bound)?;
        let e1 = interleaving_family(&side, true)?;
        let e2 = interleaving_family(&side, false)?;
        let diff = e1.sub(&e2);
        let h = side
            .solve_d(&diff)?
            .ok_or_else(|| Error::Invariant("no homotopy between the interleavings in the computed range".into()))?;
        let side_action = RealizedAction::new(DgDiagram::constant(side_shape, a), level_bound + 1, level_bound)?;
        let vshape = TwoOrdinal::new(vec![3])?;
        let vertical = OperadComplex::new(&vshape, level_bound)?;
        let m = vertical.lift_vertex(&vertex(vec![0, 1]))?;
        let vertical_action = RealizedAction::new(DgDiagram::constant(vshape, a), level_bound, level_bound)?;
        Ok(Self { side, e1, e2, h, side_action, vertical, m, vertical_action })
    }

    pub fn witness(&self) -> Result<HomotopyWitness> {
        let dh = self.side.d(&self.h)?;
        Ok(HomotopyWitness {
            h_degree: self.side.degree_of(&self.h),
            dh_equals_difference: dh == self.e1.sub(&self.e2).truncated(dh.levels.len()),
            e1_cocycle: self.side.d(&self.e1)?.is_zero(),
            e2_cocycle: self.side.d(&self.e2)?.is_zero(),
        })
    }

    /// Hochschild complex on which the products land.
    pub fn hoch(&self) -> &Totalization {
        &self.side_action.output_tot
    }

    pub fn cup1(&self, phi: &SparseVec, psi: &SparseVec) -> Result<SparseVec> {
        self.side_action.act(&self.side, &self.e1, &[phi.clone(), psi.clone()])
    }

    pub fn cup2(&self, phi: &SparseVec, psi: &SparseVec) -> Result<SparseVec> {
        self.side_action.act(&self.side, &self.e2, &[phi.clone(), psi.clone()])
    }

    pub fn homotopy(&self, phi: &SparseVec, psi: &SparseVec) -> Result<SparseVec> {
        self.side_action.act(&self.side, &self.h, &[phi.clone(), psi.clone()])
    }

    /// Vertical product; inputs and output live in the same truncation.
    pub fn product(&self, phi: &SparseVec, psi: &SparseVec) -> Result<SparseVec> {
        self.vertical_action.act(&self.vertical, &self.m, &[phi.clone(), psi.clone()])
    }

    /// `(e1 − e2)·(φ, ψ)` and `D(h·(φ, ψ))` for cocycles `φ, ψ` given in
    /// the input truncation of the side action.
    pub fn homotopy_sides(&self, phi: &SparseVec, psi: &SparseVec) -> Result<(SparseVec, SparseVec)> {
        let diff = self.cup1(phi, psi)?.sub(&self.cup2(phi, psi)?);
        let dh = self.hoch().complex.apply_d(&self.homotopy(phi, psi)?);
        Ok((diff, dh))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CupReport {
    pub witness: HomotopyWitness,
    pub cocycles_tested: usize,
    pub homotopy_identity: bool,
    pub nonzero_differences: usize,
    pub h0_product_is_multiplication: bool,
    pub associative_up_to_coboundary: bool,
}

/// Runs the checks on all degree-0 and degree-1 cohomology representatives.
pub fn cup_and_homotopy(a: &DgCategory, level_bound: usize) -> Result<CupReport> {
    let ch = CupHomotopy::new(a, level_bound)?;
    let witness = ch.witness()?;
    let input = &ch.side_action.input_tots[0];
    let mut reps = input.complex.cohomology_representatives(0);
    reps.extend(input.complex.cohomology_representatives(1));
    let mut ok = true;
    let mut nonzero = 0;
    for phi in &reps {
        for psi in &reps {
            let (l, r) = ch.homotopy_sides(phi, psi)?;
            ok &= l == r;
            nonzero += usize::from(!l.is_zero());
        }
    }
    let vt = &ch.vertical_action.output_tot;
    let centre = vt.complex.cohomology_representatives(0);
    let mut mult = true;
    let level0 = ch.vertical_action.output_space(0)?;
    for z1 in &centre {
        for z2 in &centre {
            let got = vt.to_levels(&ch.product(z1, z2)?)[0].clone();
            let (l1, l2) = (vt.to_levels(z1)[0].clone(), vt.to_levels(z2)[0].clone());
            let mut expect = SparseVec::new();
            for blk in &level0.blocks {
                let x = blk.objects[0];
                let a1 = level0.evaluate(&l1, &[x], &[]);
                let a2 = level0.evaluate(&l2, &[x], &[]);
                expect = expect.add(&level0.element(&[x], &[], &a.compose(x, x, x, &a2, &a1)));
            }
            mult &= got == expect;
        }
    }
    let mut assoc = true;
    let reps_v: Vec<SparseVec> = [0, 1].iter().flat_map(|&d| vt.complex.cohomology_representatives(d)).collect();
    for x in &reps_v {
        for y in &reps_v {
            for z in &reps_v {
                let l = ch.product(&ch.product(x, y)?, z)?;
                let r = ch.product(x, &ch.product(y, z)?)?;
                let deg = vt.complex.degree_of(&l.sub(&r));
                if let Some(dg) = deg {
                    if vt.is_complete(dg) {
                        assoc &= vt.complex.preimage(&l.sub(&r)).is_some();
                    }
                }
            }
        }
    }
    Ok(CupReport {
        witness,
        cocycles_tested: reps.len(),
        homotopy_identity: ok,
        nonzero_differences: nonzero,
        h0_product_is_multiplication: mult,
        associative_up_to_coboundary: assoc,
    })
}
