use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use twoop::action::{hochschild, triv_factorization_check, DgDiagram, RealizedAction};
use twoop::chain_complex::{augmentation_qiso_check, homology_json, realize_seq, ChainComplex, OperadComplex};
use twoop::dg_cat::{corpus, DgCategory};
use twoop::error::Error;
use twoop::linalg::{int, Field, SparseVec};
use twoop::seq::{associativity_holds, compose_seq, enumerate_seq, ColoredSeq, Coloring, SeqElement};
use twoop::two_ordinal::{enumerate_maps, TwoOrdinal, TwoOrdinalMap};

use crate::Failure;

pub struct Context {
    pub bound: Option<usize>,
    pub field: Option<Field>,
    pub seed: u64,
}

type Out = Result<Value, Failure>;

fn field(v: &Value, key: &str) -> Result<Value, Error> {
    v.get(key).cloned().ok_or_else(|| Error::Parse(format!("missing field {key}")))
}

fn usize_field(v: &Value, key: &str, default: Option<usize>) -> Result<usize, Error> {
    match v.get(key) {
        Some(x) => x.as_u64().map(|n| n as usize).ok_or_else(|| Error::Parse(format!("{key} must be a natural number"))),
        None => default.ok_or_else(|| Error::Parse(format!("missing field {key}"))),
    }
}

fn positive(bound: Option<usize>, default: usize) -> Result<usize, Error> {
    match bound {
        Some(0) => Err(Error::Parse("--bound must be positive".into())),
        Some(b) => Ok(b),
        None => Ok(default),
    }
}

fn colored(v: &Value) -> Result<ColoredSeq, Error> {
    let coloring = Coloring::from_json(&field(v, "coloring")?)?;
    let element = SeqElement::from_json(&coloring.shape, &field(v, "element")?)?;
    ColoredSeq::new(coloring, element)
}

fn colored_json(x: &ColoredSeq) -> Value {
    json!({ "coloring": x.coloring.to_json(), "element": x.element.to_json(&x.coloring.shape) })
}

pub fn enum_seq(input: &Value, ctx: &Context) -> Out {
    let col = Coloring::from_json(input)?;
    let elems = enumerate_seq(&col, positive(ctx.bound, 1 << 20)?)?;
    let listed: Vec<Value> = elems.iter().map(|e| e.to_json(&col.shape)).collect();
    Ok(json!({ "coloring": col.to_json(), "count": elems.len(), "elements": listed }))
}

pub fn compose(input: &Value) -> Out {
    let p: TwoOrdinalMap = serde_json::from_value(field(input, "map")?).map_err(Error::from)?;
    let inner = field(input, "inner")?;
    let inner: Vec<ColoredSeq> = inner
        .as_array()
        .ok_or_else(|| Error::Parse("inner must be a list".into()))?
        .iter()
        .map(colored)
        .collect::<Result<_, _>>()?;
    let outer = colored(&field(input, "outer")?)?;
    Ok(colored_json(&compose_seq(&p, &inner, &outer)?))
}

pub fn homology(input: &Value, ctx: &Context) -> Out {
    let mut c = ChainComplex::from_json(input)?;
    if let Some(f) = ctx.field {
        c = c.with_field(f);
    }
    Ok(homology_json(&c.homology()?))
}

pub fn realize(input: &Value, ctx: &Context) -> Out {
    let col = Coloring::from_json(input)?;
    let r = realize_seq(&col, positive(ctx.bound, 64)?)?;
    let mut c = r.lower.complex.clone();
    if let Some(f) = ctx.field {
        c = c.with_field(f);
    }
    Ok(json!({
        "exhausted": r.exhausted,
        "max_degree": r.max_degree,
        "dims": homology_json(&c.dims()),
        "homology": homology_json(&c.homology()?),
    }))
}

pub fn verify_contractible(input: &Value, ctx: &Context) -> Out {
    let shape: TwoOrdinal = serde_json::from_value(input.clone()).map_err(Error::from)?;
    let j = usize_field(input, "J", Some(1))?;
    let col = Coloring::uniform(shape, 1, j)?;
    let r = augmentation_qiso_check(&col, positive(ctx.bound, 64)?)?;
    let report = json!({ "H0": r.h0, "higher": r.higher, "exhausted": r.exhausted });
    if r.pass {
        Ok(report)
    } else {
        Err(Failure::Check(report))
    }
}

pub fn hochschild_cmd(input: &Value, ctx: &Context) -> Out {
    let a = DgCategory::from_json(input)?;
    let h = hochschild(&a, positive(ctx.bound, 3)?)?.cohomology()?;
    let nonzero: BTreeMap<i64, usize> = h.into_iter().filter(|&(_, d)| d > 0).collect();
    Ok(homology_json(&nonzero))
}

fn colorings(shape: &TwoOrdinal, max_color: usize, output: usize) -> Result<Vec<Coloring>, Error> {
    let mut acc: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..shape.num_cells() {
        acc = acc.into_iter().flat_map(|t| (1..=max_color).map(move |c| [t.clone(), vec![c]].concat())).collect();
    }
    acc.into_iter().map(|i| Coloring::new(shape.clone(), i, output)).collect()
}

fn elements(shape: &TwoOrdinal, max_color: usize, output: usize) -> Result<Vec<ColoredSeq>, Error> {
    let mut out = Vec::new();
    for c in colorings(shape, max_color, output)? {
        for e in enumerate_seq(&c, 1 << 20)? {
            out.push(ColoredSeq { coloring: c.clone(), element: e });
        }
    }
    Ok(out)
}

fn product<T: Clone>(choices: &[Vec<T>]) -> Vec<Vec<T>> {
    choices.iter().fold(vec![Vec::new()], |acc, opts| {
        acc.into_iter().flat_map(|t| opts.iter().map(move |o| [t.clone(), vec![o.clone()]].concat())).collect()
    })
}

/// Every composable chain `U → V → W` over the listed shapes with every
/// colored element on the three levels.
pub fn verify_operad(input: &Value, ctx: &Context) -> Out {
    let shapes: Vec<TwoOrdinal> = serde_json::from_value(field(input, "shapes")?).map_err(Error::from)?;
    let max_color = usize_field(input, "max_color", Some(2))?;
    let max_output = usize_field(input, "max_output", Some(2))?;
    let guard = positive(ctx.bound, 1_000_000)?;
    let (mut map_chains, mut chains, mut failures) = (0usize, 0usize, Vec::new());
    for u in &shapes {
        for v in &shapes {
            let ps = enumerate_maps(u, v, 1 << 20)?;
            for w in &shapes {
                for q in &enumerate_maps(v, w, 1 << 20)? {
                    let wballs = w.cells().into_iter().map(|c| q.preimage_ball(&w.globe_ball(c))).collect::<Result<Vec<_>, _>>()?;
                    for p in &ps {
                        map_chains += 1;
                        let vballs: Vec<TwoOrdinal> = v
                            .cells()
                            .into_iter()
                            .map(|c| p.preimage_ball(&v.globe_ball(c)).map(|b| b.shape()))
                            .collect::<Result<_, _>>()?;
                        for out in 1..=max_output {
                            for x in elements(w, max_color, out)? {
                                let ys = wballs
                                    .iter()
                                    .enumerate()
                                    .map(|(g, b)| elements(&b.shape(), max_color, x.coloring.inputs[g]))
                                    .collect::<Result<Vec<_>, _>>()?;
                                for y in product(&ys) {
                                    let mut vcolor = vec![0; v.num_cells()];
                                    for (g, ball) in wballs.iter().enumerate() {
                                        for (k, h) in ball.host_cells().into_iter().enumerate() {
                                            vcolor[h] = y[g].coloring.inputs[k];
                                        }
                                    }
                                    let zs = vballs
                                        .iter()
                                        .enumerate()
                                        .map(|(h, b)| elements(b, max_color, vcolor[h]))
                                        .collect::<Result<Vec<_>, _>>()?;
                                    for z in product(&zs) {
                                        chains += 1;
                                        if chains > guard {
                                            return Err(Error::Guard(format!("more than {guard} element chains")).into());
                                        }
                                        if !associativity_holds(p, q, &x, &y, &z)? && failures.len() < 10 {
                                            failures.push(json!({
                                                "p": p, "q": q, "x": colored_json(&x),
                                                "y": y.iter().map(colored_json).collect::<Vec<_>>(),
                                                "z": z.iter().map(colored_json).collect::<Vec<_>>(),
                                            }));
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    let report = json!({ "map_chains": map_chains, "element_chains": chains, "failures": failures });
    if failures.is_empty() {
        Ok(report)
    } else {
        Err(Failure::Check(report))
    }
}

fn category(v: &Value) -> Result<DgCategory, Error> {
    match v.as_str() {
        Some("ground") => Ok(corpus::ground()),
        Some("dual_numbers") => Ok(corpus::dual_numbers()),
        Some("upper_triangular") => Ok(corpus::upper_triangular()),
        Some("graded") => Ok(corpus::graded()),
        Some("path_a2") => Ok(corpus::path_a2()),
        Some(other) => Err(Error::Parse(format!("unknown built-in category {other}"))),
        None => DgCategory::from_json(v),
    }
}

fn random_in_degree(rng: &mut ChaCha8Rng, c: &ChainComplex, deg: i64) -> SparseVec {
    SparseVec::from_pairs(c.basis_in_degree(deg).into_iter().map(|i| (i, int(rng.gen_range(-2..=2)))))
}

/// Leibniz rule on random inputs plus the strict factorization through
/// the terminal operad, for the constant diagram of one category.
pub fn verify_action(input: &Value, ctx: &Context) -> Out {
    let a = category(&field(input, "category")?)?;
    let shape: TwoOrdinal = serde_json::from_value(field(input, "shape")?).map_err(Error::from)?;
    let trials = usize_field(input, "trials", Some(10))?;
    let level = positive(ctx.bound, 2)?;
    let diag = DgDiagram::constant(shape.clone(), &a);
    let ra = RealizedAction::new(diag.clone(), level + 1, level)?;
    let op = OperadComplex::new(&shape, level)?;
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let (mut equal, mut nonzero) = (0, 0);
    for _ in 0..trials {
        let degs: Vec<i64> = op.tot.complex.dims().keys().copied().collect();
        let xd = degs[rng.gen_range(0..degs.len())];
        let x = op.to_chain(&random_in_degree(&mut rng, &op.tot.complex, xd));
        let inputs: Vec<SparseVec> = ra
            .input_tots
            .iter()
            .map(|t| {
                let degs: Vec<i64> = t.complex.dims().keys().copied().collect();
                let d = degs[rng.gen_range(0..degs.len())];
                random_in_degree(&mut rng, &t.complex, d)
            })
            .collect();
        let (l, r) = ra.leibniz_sides(&op, &x, &inputs)?;
        equal += usize::from(l == r);
        nonzero += usize::from(!l.is_zero());
    }
    let mut triv = Vec::new();
    let mut triv_ok = true;
    if shape.num_cells() > 0 {
        for out in 1..=2 {
            let r = triv_factorization_check(&diag, &Coloring::uniform(shape.clone(), 2, out)?, 1 << 16)?;
            triv_ok &= r.all_equal && r.strict_output && r.matches_paste;
            triv.push(serde_json::to_value(&r).map_err(Error::from)?);
        }
    }
    let report = json!({
        "leibniz": { "trials": trials, "equal": equal, "nonzero": nonzero },
        "triv": triv,
        "pass": equal == trials && triv_ok,
    });
    if equal == trials && triv_ok {
        Ok(report)
    } else {
        Err(Failure::Check(report))
    }
}
