//! One line per acceptance criterion.

mod common;

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::action::{functor_diagrams, intertwining_trials, leibniz_trials, small_shapes, triv_sweep};
use common::bar::hochschild_oracle;
use common::operad::{associativity_sample, associativity_sweep, count_chains, delta_recovery, unit_laws};
use common::{shape, shapes};
use twoop::action::{build_k, cup_and_homotopy, hochschild, CupHomotopy, DgDiagram};
use twoop::chain_complex::augmentation_qiso_check;
use twoop::dg_cat::corpus;
use twoop::seq::Coloring;
use twoop::two_ordinal::{TwoOrdinal, TwoOrdinalMap};

/// Criteria whose stated scope cannot be covered; their lines report what
/// was checked instead and must still show no counterexample.
const UNATTAINED: &[usize] = &[1];

struct Line {
    n: usize,
    pass: bool,
    counterexample: bool,
    detail: String,
}

fn criterion_1() -> Line {
    let t = Instant::now();
    let full = shapes(2, 3, true);
    let (map_chains, total) = count_chains(&full, 2, 2);
    let small = associativity_sweep(&shapes(2, 2, true), 2, 2);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let sampled = 100_000;
    let sample_failures = associativity_sample(&full, 2, 2, sampled, &mut rng);
    let (units, units_ok) = unit_laws(&full, 2, 2);
    let clean = small.failures == 0 && sample_failures == 0 && units_ok;
    Line {
        n: 1,
        pass: false,
        counterexample: !clean,
        detail: format!(
            "operad axioms: full range is {total} element chains over {map_chains} map chains, not enumerable; \
             exhaustive at column size <= 2: {} chains, {} failures; {sampled} sampled at size <= 3: {sample_failures} failures; \
             unit laws {}/{units} ({:.1?})",
            small.element_chains,
            small.failures,
            if units_ok { units } else { 0 },
            t.elapsed()
        ),
    }
}

fn criterion_2() -> Line {
    let (checks, ok) = delta_recovery(4);
    Line { n: 2, pass: ok, counterexample: !ok, detail: format!("delta recovery: {checks} compositions, bijection with monotone maps for sizes <= 4") }
}

fn criterion_3() -> Line {
    let mut n = 0;
    let mut bad = Vec::new();
    for u in shapes(3, 3, true) {
        for j in 1..=2 {
            let r = augmentation_qiso_check(&Coloring::uniform(u.clone(), 1, j).unwrap(), 64).unwrap();
            n += 1;
            if !r.pass {
                bad.push(format!("{:?} J={j}", u.columns()));
            }
        }
    }
    let ok = bad.is_empty();
    Line { n: 3, pass: ok, counterexample: !ok, detail: format!("contractibility: {n} realizations exhausted with homology k in degree 0; failing {bad:?}") }
}

fn criterion_4() -> Line {
    let k = build_k(10, &[vec![1, 3, 3, 4], vec![5, 7, 8]]).unwrap();
    let labels: Vec<(char, usize)> = k.pi.iter().zip(&k.kappa).map(|(&r, &j)| ((b'a' + r as u8) as char, j)).collect();
    let k_ok = k.bounds == vec![(0, 1), (4, 5), (8, 10)]
        && labels == vec![('a', 0), ('a', 1), ('b', 4), ('b', 5), ('c', 8), ('c', 9), ('c', 10)];
    let p = TwoOrdinalMap::checked(
        shape(&[4, 3, 1, 5]),
        shape(&[3, 2]),
        vec![0, 2, 4],
        vec![vec![vec![0, 0], vec![0, 1], vec![3, 2]], vec![vec![0, 0], vec![0, 4]]],
    )
    .unwrap();
    let v = p.dst().clone();
    let ball = |c| {
        let b = p.preimage_ball(&v.globe_ball(c)).unwrap();
        (b.cols(), b.intervals().to_vec())
    };
    let balls_ok = ball((0, 0)) == ((0, 2), vec![(0, 0), (0, 1)])
        && ball((0, 1)) == ((0, 2), vec![(0, 3), (1, 2)])
        && ball((1, 0)) == ((2, 4), vec![(0, 0), (0, 4)]);
    let ok = k_ok && balls_ok;
    Line { n: 4, pass: ok, counterexample: !ok, detail: format!("worked example: K = {:?}, Y labels {labels:?}, globes I II III {}", k.bounds, if balls_ok { "match" } else { "differ" }) }
}

fn criterion_5() -> Line {
    let algebras = [corpus::ground(), corpus::dual_numbers(), corpus::upper_triangular(), corpus::graded()];
    let shapes = [TwoOrdinal::globe(), shape(&[3]), shape(&[1, 2]), shape(&[2, 1]), shape(&[2, 2])];
    let (mut run, mut equal, mut nonzero) = (0, 0, 0);
    for (i, a) in algebras.iter().enumerate() {
        for (j, s) in shapes.iter().enumerate() {
            let r = leibniz_trials(DgDiagram::constant(s.clone(), a), 2, 6, 1000 + (i * 10 + j) as u64);
            run += r.run;
            equal += r.equal;
            nonzero += r.nonzero;
        }
    }
    let ok = run >= 100 && equal == run;
    Line { n: 5, pass: ok, counterexample: equal != run, detail: format!("chain-map property: {equal}/{run} seeded trials exact, {nonzero} with nonzero values") }
}

fn criterion_6() -> Line {
    let s = triv_sweep(&corpus::all(), 2);
    let mut diagrams: Vec<DgDiagram> =
        corpus::all().iter().flat_map(|a| small_shapes().into_iter().map(move |s| DgDiagram::constant(s, a))).collect();
    diagrams.extend(functor_diagrams());
    let (mut run, mut equal) = (0, 0);
    for (i, d) in diagrams.into_iter().enumerate() {
        let r = intertwining_trials(d, 2, 3, 2000 + i as u64);
        run += r.run;
        equal += r.equal;
    }
    let ok = s.failures.is_empty() && equal == run;
    Line {
        n: 6,
        pass: ok,
        counterexample: !ok,
        detail: format!(
            "triv factorization: {} diagrams, {} colorings, {} element-input pairs, {} failures; intertwining {equal}/{run}",
            s.diagrams,
            s.colorings,
            s.combinations,
            s.failures.len()
        ),
    }
}

fn criterion_7() -> Line {
    let mut parts = Vec::new();
    let mut ok = true;
    for (name, a) in [("unit", corpus::ground()), ("k[x]/x^2", corpus::dual_numbers()), ("k[x]/x^3", corpus::truncated_polynomial(3)), ("upper 2x2", corpus::upper_triangular())] {
        let t = Instant::now();
        let h = hochschild(&a, 4).unwrap();
        let complete = h.tot.complete_degrees();
        let got = h.cohomology().unwrap();
        let oracle = hochschild_oracle(&a, 4);
        let agree = (0..=4).all(|d| complete.contains(&d) && got.get(&d).copied().unwrap_or(0) == oracle[&d]);
        let secs = t.elapsed().as_secs_f64();
        ok &= agree && secs < 60.0;
        parts.push(format!("{name} {:?} {}({secs:.2}s)", oracle.values().collect::<Vec<_>>(), if agree { "" } else { "MISMATCH " }));
    }
    Line { n: 7, pass: ok, counterexample: !ok, detail: format!("Hochschild vs bar complex, degrees 0..4: {}", parts.join(", ")) }
}

fn criterion_8() -> Line {
    let a = corpus::dual_numbers();
    let r = cup_and_homotopy(&a, 2).unwrap();
    let ch = CupHomotopy::new(&a, 2).unwrap();
    let input = &ch.side_action.input_tots[0];
    let deg1 = input.complex.cohomology_representatives(1);
    let mut on_deg1 = !deg1.is_empty();
    for phi in &deg1 {
        for psi in &deg1 {
            let (l, r) = ch.homotopy_sides(phi, psi).unwrap();
            on_deg1 &= l == r;
        }
    }
    let w = &r.witness;
    let ok = w.h_degree == Some(-1) && w.dh_equals_difference && w.e1_cocycle && w.e2_cocycle && r.homotopy_identity && on_deg1;
    Line {
        n: 8,
        pass: ok,
        counterexample: !ok,
        detail: format!(
            "Deligne witness over Q: h degree {:?}, dh = e1 - e2: {}, homotopy identity on {} degree-1 cocycles: {} ({} of {} pairs with nonzero difference)",
            w.h_degree, w.dh_equals_difference, deg1.len(), on_deg1, r.nonzero_differences, r.cocycles_tested * r.cocycles_tested
        ),
    }
}

fn main() {
    let lines = [criterion_1(), criterion_2(), criterion_3(), criterion_4(), criterion_5(), criterion_6(), criterion_7(), criterion_8()];
    for l in &lines {
        let tag = if l.pass { "PASS" } else if UNATTAINED.contains(&l.n) { "FAIL (not attainable)" } else { "FAIL" };
        println!("criterion {}: {tag}: {}", l.n, l.detail);
    }
    let bad: Vec<usize> = lines.iter().filter(|l| l.counterexample || !(l.pass || UNATTAINED.contains(&l.n))).map(|l| l.n).collect();
    if !bad.is_empty() {
        eprintln!("acceptance failed for criteria {bad:?}");
        std::process::exit(1);
    }
    println!("acceptance: {} of {} criteria pass", lines.iter().filter(|l| l.pass).count(), lines.len());
}
