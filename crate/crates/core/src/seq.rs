//! The set-level 2-operad of sequences: colorings, elements, enumeration,
//! multisimplicial restructuring and operadic composition.
//!
//! An element on a colored shape is a word over the shape's 2-cells (flat
//! indices) in which cell `f` occurs `I_f` times, together with a
//! non-decreasing `J`-value per position.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ordinal::{monotone_sequences, MonotoneMap};
use crate::two_ordinal::{TwoOrdinal, TwoOrdinalMap};

/// Input ordinal sizes per 2-cell (flat order) and the output size.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coloring {
    pub shape: TwoOrdinal,
    pub inputs: Vec<usize>,
    pub output: usize,
}

impl Coloring {
    pub fn new(shape: TwoOrdinal, inputs: Vec<usize>, output: usize) -> Result<Self> {
        if inputs.len() != shape.num_cells() {
            return Err(Error::Shape(format!("{} input colors for {} 2-cells", inputs.len(), shape.num_cells())));
        }
        if output == 0 || inputs.iter().any(|&i| i == 0) {
            return Err(Error::Shape("colors are non-empty ordinals".into()));
        }
        Ok(Self { shape, inputs, output })
    }

    pub fn uniform(shape: TwoOrdinal, input: usize, output: usize) -> Result<Self> {
        let n = shape.num_cells();
        Self::new(shape, vec![input; n], output)
    }

    pub fn total_inputs(&self) -> usize {
        self.inputs.iter().sum()
    }

    pub fn to_json(&self) -> Value {
        let inputs: serde_json::Map<String, Value> = self
            .shape
            .cells()
            .iter()
            .zip(&self.inputs)
            .map(|(&(c, i), &n)| (format!("{c},{i}"), json!(n)))
            .collect();
        json!({ "shape": self.shape, "inputs": inputs, "output": self.output })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let shape: TwoOrdinal = serde_json::from_value(v.get("shape").cloned().ok_or_else(|| missing("shape"))?)?;
        let out = v.get("output").and_then(Value::as_u64).ok_or_else(|| missing("output"))? as usize;
        let map = v.get("inputs").and_then(Value::as_object).ok_or_else(|| missing("inputs"))?;
        let mut inputs = vec![0; shape.num_cells()];
        for (k, n) in map {
            let (c, i) = parse_cell_key(k)?;
            if c >= shape.num_columns() || i + 1 >= shape.column_size(c) {
                return Err(Error::Parse(format!("no 2-cell {k}")));
            }
            inputs[shape.cell_index((c, i))] = n.as_u64().ok_or_else(|| Error::Parse(format!("bad size for {k}")))? as usize;
        }
        Self::new(shape, inputs, out)
    }
}

fn missing(field: &str) -> Error {
    Error::Parse(format!("missing field {field}"))
}

fn parse_cell_key(k: &str) -> Result<(usize, usize)> {
    let (a, b) = k.split_once(',').ok_or_else(|| Error::Parse(format!("bad cell key {k}")))?;
    let p = |s: &str| s.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad cell key {k}")));
    Ok((p(a)?, p(b)?))
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SeqElement {
    pub word: Vec<usize>,
    pub w: Vec<usize>,
}

impl SeqElement {
    pub fn new(word: Vec<usize>, w: Vec<usize>) -> Self {
        Self { word, w }
    }

    pub fn empty() -> Self {
        Self { word: Vec::new(), w: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// Positions of the occurrences of `f`, in order.
    pub fn block(&self, f: usize) -> Vec<usize> {
        self.word.iter().enumerate().filter(|(_, &x)| x == f).map(|(p, _)| p).collect()
    }

    /// For each position, which occurrence of its letter it is.
    pub fn occurrence_indices(&self) -> Vec<usize> {
        let mut seen: BTreeMap<usize, usize> = BTreeMap::new();
        self.word
            .iter()
            .map(|&x| {
                let e = seen.entry(x).or_insert(0);
                *e += 1;
                *e - 1
            })
            .collect()
    }

    pub fn to_json(&self, shape: &TwoOrdinal) -> Value {
        let word: Vec<Value> = self.word.iter().map(|&f| {
            let (c, i) = shape.cell_at(f);
            json!([c, i])
        }).collect();
        json!({ "word": word, "w": self.w })
    }

    pub fn from_json(shape: &TwoOrdinal, v: &Value) -> Result<Self> {
        let word = v.get("word").and_then(Value::as_array).ok_or_else(|| missing("word"))?;
        let w: Vec<usize> = serde_json::from_value(v.get("w").cloned().ok_or_else(|| missing("w"))?)?;
        let mut flat = Vec::with_capacity(word.len());
        for x in word {
            let (c, i): (usize, usize) = serde_json::from_value(x.clone())?;
            if c >= shape.num_columns() || i + 1 >= shape.column_size(c) {
                return Err(Error::Parse(format!("no 2-cell ({c},{i})")));
            }
            flat.push(shape.cell_index((c, i)));
        }
        Ok(Self { word: flat, w })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeqViolation {
    LengthMismatch,
    UnknownCell { position: usize },
    WrongCount { cell: usize, expected: usize, found: usize },
    Interleaving { first: usize, middle: usize, last: usize },
    ColumnOrder { lower: usize, higher: usize },
    NotMonotone { position: usize },
    OutOfRange { position: usize },
}

impl fmt::Display for SeqViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeqViolation::LengthMismatch => write!(f, "word and values differ in length"),
            SeqViolation::UnknownCell { position } => write!(f, "position {position} names no 2-cell"),
            SeqViolation::WrongCount { cell, expected, found } => {
                write!(f, "2-cell {cell} occurs {found} times, expected {expected}")
            }
            SeqViolation::Interleaving { first, middle, last } => write!(
                f,
                "condition 2: position {middle} interrupts the block at {first}..{last} without lying in a lower column"
            ),
            SeqViolation::ColumnOrder { lower, higher } => {
                write!(f, "condition 3: 2-cell {higher} occurs before 2-cell {lower} of the same column")
            }
            SeqViolation::NotMonotone { position } => write!(f, "values decrease at position {position}"),
            SeqViolation::OutOfRange { position } => write!(f, "value at position {position} outside the output"),
        }
    }
}

pub fn validate_seq(e: &SeqElement, col: &Coloring) -> std::result::Result<(), SeqViolation> {
    let shape = &col.shape;
    if e.word.len() != e.w.len() {
        return Err(SeqViolation::LengthMismatch);
    }
    if let Some(p) = e.word.iter().position(|&f| f >= shape.num_cells()) {
        return Err(SeqViolation::UnknownCell { position: p });
    }
    for (f, &n) in col.inputs.iter().enumerate() {
        let found = e.word.iter().filter(|&&x| x == f).count();
        if found != n {
            return Err(SeqViolation::WrongCount { cell: f, expected: n, found });
        }
    }
    for f in 0..shape.num_cells() {
        let b = e.block(f);
        let (first, last) = (b[0], *b.last().unwrap());
        for q in first..last {
            let g = e.word[q];
            if g != f && shape.column_of(g) >= shape.column_of(f) {
                return Err(SeqViolation::Interleaving { first, middle: q, last });
            }
        }
    }
    let mut first_seen: BTreeMap<usize, usize> = BTreeMap::new();
    let mut last_seen: BTreeMap<usize, usize> = BTreeMap::new();
    for (p, &f) in e.word.iter().enumerate() {
        first_seen.entry(f).or_insert(p);
        last_seen.insert(f, p);
    }
    for f in 0..shape.num_cells() {
        for g in f + 1..shape.num_cells() {
            if shape.column_of(f) == shape.column_of(g) && first_seen[&g] < last_seen[&f] {
                return Err(SeqViolation::ColumnOrder { lower: f, higher: g });
            }
        }
    }
    for (p, &x) in e.w.iter().enumerate() {
        if x >= col.output {
            return Err(SeqViolation::OutOfRange { position: p });
        }
        if p > 0 && e.w[p - 1] > x {
            return Err(SeqViolation::NotMonotone { position: p });
        }
    }
    Ok(())
}

/// All words allowed by conditions 2 and 3, lexicographically.
pub fn enumerate_words(col: &Coloring, guard: usize) -> Result<Vec<Vec<usize>>> {
    let shape = &col.shape;
    let cols: Vec<usize> = (0..shape.num_cells()).map(|f| shape.column_of(f)).collect();
    let mut remaining = col.inputs.clone();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(col.total_inputs());
    fn rec(
        cols: &[usize],
        inputs: &[usize],
        remaining: &mut Vec<usize>,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        guard: usize,
    ) -> Result<()> {
        if remaining.iter().all(|&r| r == 0) {
            if out.len() >= guard {
                return Err(Error::Guard(format!("more than {guard} words")));
            }
            out.push(cur.clone());
            return Ok(());
        }
        for x in 0..cols.len() {
            if remaining[x] == 0 {
                continue;
            }
            let open_ok = (0..cols.len())
                .all(|f| f == x || remaining[f] == 0 || remaining[f] == inputs[f] || cols[x] < cols[f]);
            let order_ok = (0..x).all(|f| cols[f] != cols[x] || remaining[f] == 0);
            if open_ok && order_ok {
                remaining[x] -= 1;
                cur.push(x);
                rec(cols, inputs, remaining, cur, out, guard)?;
                cur.pop();
                remaining[x] += 1;
            }
        }
        Ok(())
    }
    rec(&cols, &col.inputs, &mut remaining, &mut cur, &mut out, guard)?;
    Ok(out)
}

/// The complete list of elements, ordered by `(word, w)`.
pub fn enumerate_seq(col: &Coloring, guard: usize) -> Result<Vec<SeqElement>> {
    let words = enumerate_words(col, guard)?;
    let ws = monotone_sequences(col.total_inputs(), col.output);
    if words.len().saturating_mul(ws.len()) > guard {
        return Err(Error::Guard(format!("more than {guard} elements")));
    }
    Ok(words
        .iter()
        .flat_map(|word| ws.iter().map(move |w| SeqElement::new(word.clone(), w.clone())))
        .collect())
}

/// One face/degeneracy-type move on an element.
#[derive(Clone, Debug)]
pub enum Restructure {
    /// Postcompose the values with a map `J → J'`.
    Upper(MonotoneMap),
    /// Pull back block `cell` along a map `I'_f → I_f`.
    Lower { cell: usize, map: MonotoneMap },
}

pub fn seq_restructure(e: &SeqElement, col: &Coloring, r: &Restructure) -> Result<(SeqElement, Coloring)> {
    match r {
        Restructure::Upper(beta) => {
            if beta.src().size() != col.output {
                return Err(Error::ColoringMismatch("upper map source differs from the output color".into()));
            }
            let w = e.w.iter().map(|&x| beta.apply(x)).collect();
            let mut c = col.clone();
            c.output = beta.dst().size();
            Ok((SeqElement::new(e.word.clone(), w), c))
        }
        Restructure::Lower { cell, map } => {
            if *cell >= col.inputs.len() || map.dst().size() != col.inputs[*cell] {
                return Err(Error::ColoringMismatch("lower map target differs from the input color".into()));
            }
            let occ = e.occurrence_indices();
            let mut word = Vec::new();
            let mut w = Vec::new();
            for (p, &x) in e.word.iter().enumerate() {
                if x != *cell {
                    word.push(x);
                    w.push(e.w[p]);
                    continue;
                }
                for a in 0..map.src().size() {
                    if map.apply(a) == occ[p] {
                        word.push(x);
                        w.push(e.w[p]);
                    }
                }
            }
            let mut c = col.clone();
            c.inputs[*cell] = map.src().size();
            let out = SeqElement::new(word, w);
            validate_seq(&out, &c).map_err(|v| Error::Invariant(format!("restructured element invalid: {v}")))?;
            Ok((out, c))
        }
    }
}

/// An element together with its coloring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredSeq {
    pub coloring: Coloring,
    pub element: SeqElement,
}

impl ColoredSeq {
    pub fn new(coloring: Coloring, element: SeqElement) -> Result<Self> {
        validate_seq(&element, &coloring).map_err(|v| Error::Invariant(v.to_string()))?;
        Ok(Self { coloring, element })
    }

    /// The element `g^n` with values `0..n` on the globe, the unit of
    /// composition for a globe colored `[n] → [n]`.
    pub fn globe_identity(n: usize) -> Self {
        Self {
            coloring: Coloring { shape: TwoOrdinal::globe(), inputs: vec![n], output: n },
            element: SeqElement::new(vec![0; n], (0..n).collect()),
        }
    }
}

/// Operadic composition along `p: U → V`: `inner[g]` lives on the preimage
/// ball of the `V`-cell `g`, `outer` on `V`.
pub fn compose_seq(p: &TwoOrdinalMap, inner: &[ColoredSeq], outer: &ColoredSeq) -> Result<ColoredSeq> {
    let v = p.dst();
    let u = p.src();
    if outer.coloring.shape != *v || inner.len() != v.num_cells() {
        return Err(Error::Shape("composition data does not match the map".into()));
    }
    let mut inputs = vec![0; u.num_cells()];
    let mut hosts = Vec::with_capacity(inner.len());
    for (g, e) in inner.iter().enumerate() {
        let ball = p.preimage_ball(&v.globe_ball(v.cell_at(g)))?;
        if e.coloring.shape != ball.shape() {
            return Err(Error::Shape(format!("inner element {g} lives on the wrong shape")));
        }
        if e.coloring.output != outer.coloring.inputs[g] {
            return Err(Error::ColoringMismatch(format!(
                "inner output {} differs from outer input {} at 2-cell {g}",
                e.coloring.output, outer.coloring.inputs[g]
            )));
        }
        let host = ball.host_cells();
        for (k, &h) in host.iter().enumerate() {
            inputs[h] = e.coloring.inputs[k];
        }
        hosts.push(host);
    }
    let mut word = Vec::new();
    let mut w = Vec::new();
    let occ = outer.element.occurrence_indices();
    for (pos, &g) in outer.element.word.iter().enumerate() {
        let e = &inner[g].element;
        for (q, &x) in e.word.iter().enumerate() {
            if e.w[q] == occ[pos] {
                word.push(hosts[g][x]);
                w.push(outer.element.w[pos]);
            }
        }
    }
    let coloring = Coloring::new(u.clone(), inputs, outer.coloring.output)?;
    let element = SeqElement::new(word, w);
    validate_seq(&element, &coloring).map_err(|v| Error::Invariant(format!("composite invalid: {v}")))?;
    Ok(ColoredSeq { coloring, element })
}

/// Whether both bracketings of a composable chain `U →p V →q W` agree:
/// `(x ∘_q y) ∘_p z` against `x ∘_{q∘p} (y_g ∘_{p|g} z|_g)`.
pub fn associativity_holds(p: &TwoOrdinalMap, q: &TwoOrdinalMap, x: &ColoredSeq, y: &[ColoredSeq], z: &[ColoredSeq]) -> Result<bool> {
    let w = q.dst();
    let left = compose_seq(p, z, &compose_seq(q, y, x)?)?;
    let mut inner = Vec::with_capacity(y.len());
    for (g, cell) in w.cells().into_iter().enumerate() {
        let ball = q.preimage_ball(&w.globe_ball(cell))?;
        let zs: Vec<ColoredSeq> = ball.host_cells().iter().map(|&h| z[h].clone()).collect();
        inner.push(compose_seq(&p.restrict(&ball)?, &zs, &y[g])?);
    }
    Ok(left == compose_seq(&p.then(q)?, &inner, x)?)
}
