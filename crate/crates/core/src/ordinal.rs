//! Finite ordinals and monotone maps between them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The ordinal `{0 < 1 < ... < size-1}`. Ordinals are skeletal: only the
/// size is stored.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "OrdinalRepr", into = "OrdinalRepr")]
pub struct Ordinal {
    size: usize,
}

#[derive(Serialize, Deserialize)]
struct OrdinalRepr {
    size: usize,
}

impl TryFrom<OrdinalRepr> for Ordinal {
    type Error = Error;
    fn try_from(r: OrdinalRepr) -> Result<Self> {
        Ordinal::new(r.size)
    }
}

impl From<Ordinal> for OrdinalRepr {
    fn from(o: Ordinal) -> Self {
        OrdinalRepr { size: o.size }
    }
}

impl Ordinal {
    pub fn new(size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::Shape("ordinals are non-empty".into()));
        }
        Ok(Self { size })
    }

    /// `[n] = {0 < ... < n}`
    pub fn bracket(n: usize) -> Self {
        Self { size: n + 1 }
    }

    pub fn size(self) -> usize {
        self.size
    }

    pub fn min(self) -> usize {
        0
    }

    pub fn max(self) -> usize {
        self.size - 1
    }

    /// Number of successor pairs `(i, i+1)`.
    pub fn arrows(self) -> usize {
        self.size - 1
    }

    pub fn interval(self, a: usize, b: usize) -> Result<Interval> {
        if a > b {
            return Err(Error::EmptyInterval(a, b));
        }
        if b >= self.size {
            return Err(Error::Shape(format!("{b} is outside an ordinal of size {}", self.size)));
        }
        Ok(Interval { host: self, lo: a, hi: b })
    }
}

/// A sub-interval `[lo, hi]` of a host ordinal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    pub host: Ordinal,
    pub lo: usize,
    pub hi: usize,
}

impl Interval {
    pub fn ordinal(&self) -> Ordinal {
        Ordinal { size: self.hi - self.lo + 1 }
    }

    pub fn offset(&self) -> usize {
        self.lo
    }

    pub fn inclusion(&self) -> MonotoneMap {
        MonotoneMap { src: self.ordinal(), dst: self.host, values: (self.lo..=self.hi).collect() }
    }

    pub fn contains(&self, x: usize) -> bool {
        self.lo <= x && x <= self.hi
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MonotoneMap {
    src: Ordinal,
    dst: Ordinal,
    values: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct MonotoneMapRepr {
    src: usize,
    dst: usize,
    values: Vec<usize>,
}

impl Serialize for MonotoneMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MonotoneMapRepr { src: self.src.size, dst: self.dst.size, values: self.values.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for MonotoneMap {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = MonotoneMapRepr::deserialize(d)?;
        let src = Ordinal::new(r.src).map_err(serde::de::Error::custom)?;
        let dst = Ordinal::new(r.dst).map_err(serde::de::Error::custom)?;
        MonotoneMap::new(src, dst, r.values).map_err(serde::de::Error::custom)
    }
}

impl MonotoneMap {
    pub fn new(src: Ordinal, dst: Ordinal, values: Vec<usize>) -> Result<Self> {
        if values.len() != src.size {
            return Err(Error::Shape(format!("{} values for a source of size {}", values.len(), src.size)));
        }
        if values.iter().any(|&v| v >= dst.size) {
            return Err(Error::Shape("value outside the target ordinal".into()));
        }
        if values.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Shape(format!("{values:?} is not monotone")));
        }
        Ok(Self { src, dst, values })
    }

    pub fn identity(o: Ordinal) -> Self {
        Self { src: o, dst: o, values: (0..o.size).collect() }
    }

    /// The coface `δ_i: [n-1] → [n]` skipping `i`.
    pub fn coface(n: usize, i: usize) -> Self {
        assert!(n >= 1 && i <= n);
        let values = (0..n).map(|k| if k < i { k } else { k + 1 }).collect();
        Self { src: Ordinal::bracket(n - 1), dst: Ordinal::bracket(n), values }
    }

    /// The codegeneracy `σ_i: [n+1] → [n]` hitting `i` twice.
    pub fn codegeneracy(n: usize, i: usize) -> Self {
        assert!(i <= n);
        let values = (0..n + 2).map(|k| if k <= i { k } else { k - 1 }).collect();
        Self { src: Ordinal::bracket(n + 1), dst: Ordinal::bracket(n), values }
    }

    pub fn src(&self) -> Ordinal {
        self.src
    }

    pub fn dst(&self) -> Ordinal {
        self.dst
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn apply(&self, i: usize) -> usize {
        self.values[i]
    }

    pub fn is_dominant(&self) -> bool {
        self.values[0] == 0 && *self.values.last().unwrap() == self.dst.max()
    }

    pub fn is_injective(&self) -> bool {
        self.values.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_surjective(&self) -> bool {
        self.is_dominant() && self.values.windows(2).all(|w| w[1] - w[0] <= 1)
    }
}

/// `g ∘ f`
pub fn compose_monotone(g: &MonotoneMap, f: &MonotoneMap) -> Result<MonotoneMap> {
    if f.dst != g.src {
        return Err(Error::Shape(format!(
            "cannot compose: target of size {} against source of size {}",
            f.dst.size, g.src.size
        )));
    }
    Ok(MonotoneMap { src: f.src, dst: g.dst, values: f.values.iter().map(|&v| g.values[v]).collect() })
}

/// All monotone (or dominant) maps `src → dst`, lexicographically sorted.
pub fn enumerate_monotone(src: Ordinal, dst: Ordinal, dominant_only: bool) -> Vec<MonotoneMap> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(src.size);
    fn rec(cur: &mut Vec<usize>, src: Ordinal, dst: Ordinal, dominant: bool, out: &mut Vec<MonotoneMap>) {
        if cur.len() == src.size {
            if !dominant || *cur.last().unwrap() == dst.max() {
                out.push(MonotoneMap { src, dst, values: cur.clone() });
            }
            return;
        }
        let lo = cur.last().copied().unwrap_or(0);
        let hi = if dominant && cur.is_empty() { 0 } else { dst.max() };
        for v in lo..=hi {
            cur.push(v);
            rec(cur, src, dst, dominant, out);
            cur.pop();
        }
    }
    rec(&mut cur, src, dst, dominant_only, &mut out);
    out
}

/// Monotone sequences of length `len` with values in `0..bound`, in
/// lexicographic order.
pub fn monotone_sequences(len: usize, bound: usize) -> Vec<Vec<usize>> {
    if len == 0 {
        return vec![Vec::new()];
    }
    if bound == 0 {
        return Vec::new();
    }
    enumerate_monotone(Ordinal { size: len }, Ordinal { size: bound }, false)
        .into_iter()
        .map(|m| m.values)
        .collect()
}
