//! Random trials for the realized action.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use twoop::action::{DgDiagram, RealizedAction};
use twoop::chain_complex::{ChainComplex, OperadComplex};
use twoop::linalg::{int, SparseVec};

pub fn random_in_degree(rng: &mut ChaCha8Rng, c: &ChainComplex, deg: i64) -> SparseVec {
    SparseVec::from_pairs(c.basis_in_degree(deg).into_iter().map(|i| (i, int(rng.gen_range(-2..=2)))))
}

#[derive(Debug, Default, Clone, Copy)]
pub struct Trials {
    pub run: usize,
    pub equal: usize,
    pub nonzero: usize,
}

/// Compares both sides of the Leibniz rule for `trials` random homogeneous
/// operad elements and inputs.
pub fn leibniz_trials(diag: DgDiagram, level: usize, trials: usize, seed: u64) -> Trials {
    let shape = diag.shape.clone();
    let ra = RealizedAction::new(diag, level + 1, level).unwrap();
    let op = OperadComplex::new(&shape, level).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t = Trials::default();
    for _ in 0..trials {
        let xd = rng.gen_range(-1..=0);
        let x = op.to_chain(&random_in_degree(&mut rng, &op.tot.complex, xd));
        let inputs: Vec<SparseVec> = ra
            .input_tots
            .iter()
            .map(|tot| {
                let degs: Vec<i64> = tot.complex.dims().keys().copied().filter(|d| d.abs() <= 1).collect();
                let d = degs[rng.gen_range(0..degs.len())];
                random_in_degree(&mut rng, &tot.complex, d)
            })
            .collect();
        let (l, r) = ra.leibniz_sides(&op, &x, &inputs).unwrap();
        t.run += 1;
        t.equal += usize::from(l == r);
        t.nonzero += usize::from(!l.is_zero() || !ra.act(&op, &x, &inputs).unwrap().is_zero());
    }
    t
}

use twoop::action::{intertwining_sides, strict_bases, triv_factorization_check};
use twoop::dg_cat::{corpus, DgCategory, DgFunctor};
use twoop::seq::Coloring;
use twoop::two_ordinal::TwoOrdinal;

/// Shapes up to `(2,2)` that carry 2-cells.
pub fn small_shapes() -> Vec<TwoOrdinal> {
    [vec![2], vec![1, 2], vec![2, 1], vec![2, 2]].into_iter().map(|c| TwoOrdinal::new(c).unwrap()).collect()
}

pub fn colorings(shape: &TwoOrdinal, max: usize) -> Vec<Coloring> {
    let mut acc: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..shape.num_cells() {
        acc = acc.into_iter().flat_map(|t| (1..=max).map(move |c| [t.clone(), vec![c]].concat())).collect();
    }
    acc.into_iter().flat_map(|i| (1..=max).map(move |o| Coloring::new(shape.clone(), i.clone(), o).unwrap())).collect()
}

/// Diagrams with nontrivial functors over the dual numbers.
pub fn functor_diagrams() -> Vec<DgDiagram> {
    let a = corpus::dual_numbers();
    let id = DgFunctor::identity(&a);
    let dbl = corpus::doubling();
    let g = corpus::graded();
    vec![
        DgDiagram::new(TwoOrdinal::globe(), vec![a.clone(); 2], vec![vec![id.clone(), dbl.clone()]]).unwrap(),
        DgDiagram::new(TwoOrdinal::new(vec![2, 2]).unwrap(), vec![a.clone(); 3], vec![vec![id.clone(), dbl.clone()], vec![dbl.clone(), id.clone()]]).unwrap(),
        DgDiagram::new(TwoOrdinal::new(vec![1, 2]).unwrap(), vec![a.clone(); 3], vec![vec![dbl.clone()], vec![id.clone(), dbl.clone()]]).unwrap(),
        DgDiagram::new(TwoOrdinal::globe(), vec![g.clone(); 2], vec![vec![DgFunctor::identity(&g), corpus::graded_doubling()]]).unwrap(),
    ]
}

#[derive(Debug, Default)]
pub struct TrivSweep {
    pub diagrams: usize,
    pub colorings: usize,
    pub combinations: usize,
    pub nonzero_outputs: usize,
    pub failures: Vec<String>,
}

pub fn triv_sweep(cats: &[DgCategory], max_color: usize) -> TrivSweep {
    let mut diagrams: Vec<DgDiagram> =
        cats.iter().flat_map(|a| small_shapes().into_iter().map(move |s| DgDiagram::constant(s, a))).collect();
    diagrams.extend(functor_diagrams());
    let mut s = TrivSweep::default();
    for d in &diagrams {
        s.diagrams += 1;
        for c in colorings(&d.shape, max_color) {
            let r = triv_factorization_check(d, &c, 1 << 20).unwrap();
            s.colorings += 1;
            s.combinations += r.input_combinations * r.elements;
            s.nonzero_outputs += r.nonzero_outputs;
            if !(r.all_equal && r.strict_output && r.matches_paste) {
                s.failures.push(format!("{:?} {:?} {r:?}", d.shape.columns(), c.inputs));
            }
        }
    }
    s
}

/// Intertwining of the strict embedding with the action, on random
/// degree-0 operad elements and random strict basis inputs.
pub fn intertwining_trials(diag: DgDiagram, level: usize, trials: usize, seed: u64) -> Trials {
    let shape = diag.shape.clone();
    let bases = strict_bases(&diag).unwrap();
    let ra = RealizedAction::new(diag, level + 1, level).unwrap();
    let op = OperadComplex::new(&shape, level).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t = Trials::default();
    for _ in 0..trials {
        let x = op.to_chain(&random_in_degree(&mut rng, &op.tot.complex, 0));
        let thetas: Vec<SparseVec> = bases
            .iter()
            .map(|b| b.iter().fold(SparseVec::new(), |acc, v| acc.add(&v.scaled(&int(rng.gen_range(-2..=2))))))
            .collect();
        let (l, r) = intertwining_sides(&ra, &op, &x, &thetas).unwrap();
        t.run += 1;
        t.equal += usize::from(l == r);
        t.nonzero += usize::from(!l.is_zero());
    }
    t
}
