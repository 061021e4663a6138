//! Exhaustive sweep over composable chains `U → V → W` of `seq` elements.

use std::collections::HashMap;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use twoop::seq::{compose_seq, enumerate_seq, ColoredSeq, Coloring};
use twoop::two_ordinal::{enumerate_maps, TwoOrdinal, TwoOrdinalMap};

#[derive(Debug, Default)]
pub struct Sweep {
    pub map_chains: usize,
    pub element_chains: usize,
    pub failures: usize,
}

fn colorings(shape: &TwoOrdinal, max_color: usize, output: usize) -> Vec<Coloring> {
    let mut acc: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..shape.num_cells() {
        acc = acc.into_iter().flat_map(|t| (1..=max_color).map(move |c| [t.clone(), vec![c]].concat())).collect();
    }
    acc.into_iter().map(|i| Coloring::new(shape.clone(), i, output).unwrap()).collect()
}

/// All colored elements on `shape` with the given output and inputs of
/// size at most `max_color`.
pub fn elements(shape: &TwoOrdinal, max_color: usize, output: usize) -> Vec<ColoredSeq> {
    colorings(shape, max_color, output)
        .into_iter()
        .flat_map(|c| enumerate_seq(&c, 1 << 20).unwrap().into_iter().map(move |e| ColoredSeq { coloring: c.clone(), element: e }))
        .collect()
}

fn product<T: Clone>(choices: &[Vec<T>]) -> Vec<Vec<T>> {
    choices.iter().fold(vec![Vec::new()], |acc, opts| {
        acc.into_iter().flat_map(|t| opts.iter().map(move |o| [t.clone(), vec![o.clone()]].concat())).collect()
    })
}

/// `(x ∘_q y) ∘_p z` against `x ∘_{qp} (y_g ∘_{p_g} z|_g)`.
pub fn check_chain(p: &TwoOrdinalMap, q: &TwoOrdinalMap, x: &ColoredSeq, y: &[ColoredSeq], z: &[ColoredSeq]) -> bool {
    let w = q.dst();
    let left = compose_seq(p, z, &compose_seq(q, y, x).unwrap()).unwrap();
    let pq = p.then(q).unwrap();
    let mut inner = Vec::new();
    for (g, cell) in w.cells().into_iter().enumerate() {
        let ball = q.preimage_ball(&w.globe_ball(cell)).unwrap();
        let pg = p.restrict(&ball).unwrap();
        let zs: Vec<ColoredSeq> = ball.host_cells().iter().map(|&h| z[h].clone()).collect();
        inner.push(compose_seq(&pg, &zs, &y[g]).unwrap());
    }
    let right = compose_seq(&pq, &inner, x).unwrap();
    left == right
}

pub fn associativity_sweep(all: &[TwoOrdinal], max_color: usize, max_output: usize) -> Sweep {
    let mut s = Sweep::default();
    for u in all {
        for v in all {
            let ps = enumerate_maps(u, v, 1 << 20).unwrap();
            if ps.is_empty() {
                continue;
            }
            for w in all {
                let qs = enumerate_maps(v, w, 1 << 20).unwrap();
                for q in &qs {
                    let wballs: Vec<TwoOrdinal> = w.cells().into_iter().map(|c| q.preimage_ball(&w.globe_ball(c)).unwrap().shape()).collect();
                    for p in &ps {
                        s.map_chains += 1;
                        let vballs: Vec<TwoOrdinal> =
                            v.cells().into_iter().map(|c| p.preimage_ball(&v.globe_ball(c)).unwrap().shape()).collect();
                        for out in 1..=max_output {
                            for x in elements(w, max_color, out) {
                                let ys: Vec<Vec<ColoredSeq>> =
                                    wballs.iter().enumerate().map(|(g, b)| elements(b, max_color, x.coloring.inputs[g])).collect();
                                for y in product(&ys) {
                                    let mut vcolor = vec![0; v.num_cells()];
                                    for (g, cell) in w.cells().into_iter().enumerate() {
                                        let ball = q.preimage_ball(&w.globe_ball(cell)).unwrap();
                                        for (k, h) in ball.host_cells().into_iter().enumerate() {
                                            vcolor[h] = y[g].coloring.inputs[k];
                                        }
                                    }
                                    let zs: Vec<Vec<ColoredSeq>> =
                                        vballs.iter().enumerate().map(|(h, b)| elements(b, max_color, vcolor[h])).collect();
                                    for z in product(&zs) {
                                        s.element_chains += 1;
                                        s.failures += usize::from(!check_chain(p, q, &x, &y, &z));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    s
}

/// Number of element chains the sweep visits.
pub fn count_chains(all: &[TwoOrdinal], max_color: usize, max_output: usize) -> (usize, u128) {
    let mut memo: HashMap<Coloring, u128> = Default::default();
    let mut n = |c: &Coloring| -> u128 { *memo.entry(c.clone()).or_insert_with(|| enumerate_seq(c, 1 << 24).unwrap().len() as u128) };
    let mut maps_n = 0;
    let mut total: u128 = 0;
    for u in all {
        for v in all {
            let ps = enumerate_maps(u, v, 1 << 20).unwrap();
            for w in all {
                for q in &enumerate_maps(v, w, 1 << 20).unwrap() {
                    let wb: Vec<_> = w.cells().into_iter().map(|c| q.preimage_ball(&w.globe_ball(c)).unwrap()).collect();
                    for p in &ps {
                        maps_n += 1;
                        let vballs: Vec<TwoOrdinal> =
                            v.cells().into_iter().map(|c| p.preimage_ball(&v.globe_ball(c)).unwrap().shape()).collect();
                        let ztot = |h: usize, o: usize, n: &mut dyn FnMut(&Coloring) -> u128| -> u128 {
                            colorings(&vballs[h], max_color, o).iter().map(|c| n(c)).sum()
                        };
                        let mut ytot = vec![vec![0u128; max_color + 1]; wb.len()];
                        for (g, ball) in wb.iter().enumerate() {
                            for o in 1..=max_color {
                                let mut sum = 0;
                                for d in colorings(&ball.shape(), max_color, o) {
                                    let mut pr = n(&d);
                                    for (k, h) in ball.host_cells().into_iter().enumerate() {
                                        pr *= ztot(h, d.inputs[k], &mut n);
                                    }
                                    sum += pr;
                                }
                                ytot[g][o] = sum;
                            }
                        }
                        for out in 1..=max_output {
                            for c in colorings(w, max_color, out) {
                                let mut pr = n(&c);
                                for g in 0..wb.len() {
                                    pr *= ytot[g][c.inputs[g]];
                                }
                                total += pr;
                            }
                        }

                    }
                }
            }
        }
    }
    (maps_n, total)
}

/// Random composable chains over `all`, each drawn by choosing the shapes,
/// maps and elements uniformly at every step. Returns the failures.
pub fn associativity_sample(all: &[TwoOrdinal], max_color: usize, max_output: usize, samples: usize, rng: &mut ChaCha8Rng) -> usize {
    let mut maps: HashMap<(usize, usize), Vec<TwoOrdinalMap>> = HashMap::new();
    for (i, u) in all.iter().enumerate() {
        for (j, v) in all.iter().enumerate() {
            maps.insert((i, j), enumerate_maps(u, v, 1 << 20).unwrap());
        }
    }
    let mut memo: HashMap<(TwoOrdinal, usize), Vec<ColoredSeq>> = HashMap::new();
    let mut pick = |s: &TwoOrdinal, o: usize, rng: &mut ChaCha8Rng| -> ColoredSeq {
        let e = memo.entry((s.clone(), o)).or_insert_with(|| elements(s, max_color, o));
        e[rng.gen_range(0..e.len())].clone()
    };
    let mut failures = 0;
    let mut done = 0;
    while done < samples {
        let (i, j, k) = (rng.gen_range(0..all.len()), rng.gen_range(0..all.len()), rng.gen_range(0..all.len()));
        let (ps, qs) = (&maps[&(i, j)], &maps[&(j, k)]);
        if ps.is_empty() || qs.is_empty() {
            continue;
        }
        let p = &ps[rng.gen_range(0..ps.len())];
        let q = &qs[rng.gen_range(0..qs.len())];
        let (v, w) = (&all[j], &all[k]);
        let x = pick(w, rng.gen_range(1..=max_output), rng);
        let mut y = Vec::new();
        let mut vcolor = vec![0; v.num_cells()];
        for (g, cell) in w.cells().into_iter().enumerate() {
            let ball = q.preimage_ball(&w.globe_ball(cell)).unwrap();
            let e = pick(&ball.shape(), x.coloring.inputs[g], rng);
            for (l, h) in ball.host_cells().into_iter().enumerate() {
                vcolor[h] = e.coloring.inputs[l];
            }
            y.push(e);
        }
        let z: Vec<ColoredSeq> = v
            .cells()
            .into_iter()
            .enumerate()
            .map(|(h, c)| pick(&p.preimage_ball(&v.globe_ball(c)).unwrap().shape(), vcolor[h], rng))
            .collect();
        failures += usize::from(!check_chain(p, q, &x, &y, &z));
        done += 1;
    }
    failures
}

/// Globe elements against monotone maps, and their composition against map
/// composition, for ordinals of size at most `max`.
pub fn delta_recovery(max: usize) -> (usize, bool) {
    use twoop::seq::SeqElement;
    let id = TwoOrdinalMap::identity(&TwoOrdinal::globe());
    let globe = |w: &[usize], i: usize, o: usize| ColoredSeq {
        coloring: Coloring::new(TwoOrdinal::globe(), vec![i], o).unwrap(),
        element: SeqElement::new(vec![0; w.len()], w.to_vec()),
    };
    let mut checks = 0;
    let mut ok = true;
    for i in 1..=max {
        for j in 1..=max {
            let els = enumerate_seq(&Coloring::new(TwoOrdinal::globe(), vec![i], j).unwrap(), 1 << 16).unwrap();
            let ws: std::collections::BTreeSet<Vec<usize>> = els.iter().map(|e| e.w.clone()).collect();
            let maps: std::collections::BTreeSet<Vec<usize>> = super::monotone(i, j).into_iter().collect();
            ok &= els.len() == super::binomial(i + j - 1, i) && ws == maps && els.iter().all(|e| e.word == vec![0; i]);
            for k in 1..=max {
                for f in super::monotone(i, k) {
                    for g in super::monotone(k, j) {
                        let r = compose_seq(&id, &[globe(&f, i, k)], &globe(&g, k, j)).unwrap();
                        ok &= r.element.w == f.iter().map(|&x| g[x]).collect::<Vec<_>>();
                        checks += 1;
                    }
                }
            }
        }
    }
    (checks, ok)
}

/// Both unit laws over `shapes`, and the empty-shape units.
pub fn unit_laws(shapes: &[TwoOrdinal], max_color: usize, max_output: usize) -> (usize, bool) {
    use twoop::seq::SeqElement;
    let mut n = 0;
    let mut ok = true;
    for u in shapes {
        for out in 1..=max_output {
            for x in elements(u, max_color, out) {
                let ids: Vec<ColoredSeq> = x.coloring.inputs.iter().map(|&k| ColoredSeq::globe_identity(k)).collect();
                ok &= compose_seq(&TwoOrdinalMap::identity(u), &ids, &x).unwrap() == x;
                ok &= compose_seq(&TwoOrdinalMap::terminal(u), &[x.clone()], &ColoredSeq::globe_identity(out)).unwrap() == x;
                n += 2;
            }
        }
    }
    let empties: Vec<TwoOrdinal> = [vec![], vec![1], vec![1, 1], vec![1, 1, 1]].into_iter().map(|c| TwoOrdinal::new(c).unwrap()).collect();
    for u in &empties {
        for v in &empties {
            for p in enumerate_maps(u, v, 64).unwrap() {
                for out in 1..=3 {
                    let e = ColoredSeq { coloring: Coloring::new(v.clone(), vec![], out).unwrap(), element: SeqElement::empty() };
                    let r = compose_seq(&p, &[], &e).unwrap();
                    ok &= r.element == SeqElement::empty() && r.coloring == Coloring::new(u.clone(), vec![], out).unwrap();
                    n += 1;
                }
            }
        }
    }
    (n, ok)
}
