use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Ball, TwoOrdinal};
use crate::error::{Error, Result};
use crate::ordinal::{enumerate_monotone, MonotoneMap, Ordinal};

/// A map of 2-ordinals `P: U → V`, stored contravariantly as the 2-functor
/// `[V] → [U]`: `obj[j]` is the image of object `j` of `V`, and
/// `gens[j][g]` is the image of 1-arrow `g` of column `j`, one 1-arrow of
/// `U` per `U`-column between `obj[j]` and `obj[j+1]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TwoOrdinalMap {
    src: TwoOrdinal,
    dst: TwoOrdinal,
    obj: Vec<usize>,
    gens: Vec<Vec<Vec<usize>>>,
}

#[derive(Serialize, Deserialize)]
struct MapRepr {
    src: TwoOrdinal,
    dst: TwoOrdinal,
    obj: Vec<usize>,
    gens: Vec<Vec<Vec<usize>>>,
}

impl Serialize for TwoOrdinalMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MapRepr { src: self.src.clone(), dst: self.dst.clone(), obj: self.obj.clone(), gens: self.gens.clone() }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TwoOrdinalMap {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = MapRepr::deserialize(d)?;
        TwoOrdinalMap::new(r.src, r.dst, r.obj, r.gens).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MapViolation {
    NotDominant,
    NotMonotone { column: usize, generator: usize, component: usize },
    LeastNotPreserved { column: usize },
    GreatestNotPreserved { column: usize },
}

impl fmt::Display for MapViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapViolation::NotDominant => write!(f, "object map is not dominant"),
            MapViolation::NotMonotone { column, generator, component } => write!(
                f,
                "generator images not monotone in column {column} between arrows {generator} and {} (component {component})",
                generator + 1
            ),
            MapViolation::LeastNotPreserved { column } => write!(f, "least element not preserved in column {column}"),
            MapViolation::GreatestNotPreserved { column } => {
                write!(f, "greatest element not preserved in column {column}")
            }
        }
    }
}

/// The induced map of 2-trees: `cols[c]` is the image of `U`-column `c`,
/// `cells[k]` the image of `U`-2-cell `k` (flat indices).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeMap {
    pub cols: Vec<usize>,
    pub cells: Vec<usize>,
}

impl TreeMap {
    /// `self ∘ first`
    pub fn after(&self, first: &TreeMap) -> TreeMap {
        TreeMap {
            cols: first.cols.iter().map(|&c| self.cols[c]).collect(),
            cells: first.cells.iter().map(|&c| self.cells[c]).collect(),
        }
    }

    pub fn cols_monotone(&self) -> bool {
        self.cols.windows(2).all(|w| w[0] <= w[1])
    }

    pub fn cells_monotone(&self) -> bool {
        self.cells.windows(2).all(|w| w[0] <= w[1])
    }

    /// Whether projection to columns commutes with the map.
    pub fn square_commutes(&self, u: &TwoOrdinal, v: &TwoOrdinal) -> bool {
        self.cells.iter().enumerate().all(|(k, &img)| self.cols[u.column_of(k)] == v.column_of(img))
    }
}

impl TwoOrdinalMap {
    /// Builds a map after structural checks (lengths and ranges). The
    /// categorical conditions are checked by [`TwoOrdinalMap::validate`].
    pub fn new(src: TwoOrdinal, dst: TwoOrdinal, obj: Vec<usize>, gens: Vec<Vec<Vec<usize>>>) -> Result<Self> {
        if obj.len() != dst.num_objects() {
            return Err(Error::Shape(format!("object map has {} entries, expected {}", obj.len(), dst.num_objects())));
        }
        if obj.iter().any(|&o| o >= src.num_objects()) {
            return Err(Error::Shape("object image outside the source".into()));
        }
        if obj.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Shape(format!("object map {obj:?} is not monotone")));
        }
        if gens.len() != dst.num_columns() {
            return Err(Error::Shape(format!("{} generator columns, expected {}", gens.len(), dst.num_columns())));
        }
        for (j, col) in gens.iter().enumerate() {
            if col.len() != dst.column_size(j) {
                return Err(Error::Shape(format!("column {j} has {} generator images", col.len())));
            }
            for t in col {
                if t.len() != obj[j + 1] - obj[j] {
                    return Err(Error::Shape(format!("generator image {t:?} has the wrong length in column {j}")));
                }
                for (k, &a) in t.iter().enumerate() {
                    if a >= src.column_size(obj[j] + k) {
                        return Err(Error::Shape(format!("arrow {a} outside source column {}", obj[j] + k)));
                    }
                }
            }
        }
        Ok(Self { src, dst, obj, gens })
    }

    /// Builds and validates.
    pub fn checked(src: TwoOrdinal, dst: TwoOrdinal, obj: Vec<usize>, gens: Vec<Vec<Vec<usize>>>) -> Result<Self> {
        let p = Self::new(src, dst, obj, gens)?;
        p.validate().map_err(|v| Error::Invariant(v.to_string()))?;
        Ok(p)
    }

    pub fn identity(u: &TwoOrdinal) -> Self {
        Self {
            src: u.clone(),
            dst: u.clone(),
            obj: (0..u.num_objects()).collect(),
            gens: u.columns().iter().map(|&n| (0..n).map(|a| vec![a]).collect()).collect(),
        }
    }

    /// The unique map to the globe.
    pub fn terminal(u: &TwoOrdinal) -> Self {
        let mins = vec![0; u.num_columns()];
        let maxs = u.columns().iter().map(|n| n - 1).collect();
        Self { src: u.clone(), dst: TwoOrdinal::globe(), obj: vec![0, u.num_columns()], gens: vec![vec![mins, maxs]] }
    }

    pub fn src(&self) -> &TwoOrdinal {
        &self.src
    }

    pub fn dst(&self) -> &TwoOrdinal {
        &self.dst
    }

    pub fn obj(&self) -> &[usize] {
        &self.obj
    }

    pub fn gens(&self) -> &[Vec<Vec<usize>>] {
        &self.gens
    }

    pub fn gen_image(&self, j: usize, g: usize) -> &[usize] {
        &self.gens[j][g]
    }

    pub fn obj_map(&self) -> MonotoneMap {
        MonotoneMap::new(
            Ordinal::new(self.dst.num_objects()).unwrap(),
            Ordinal::new(self.src.num_objects()).unwrap(),
            self.obj.clone(),
        )
        .unwrap()
    }

    pub fn validate(&self) -> std::result::Result<(), MapViolation> {
        if !self.obj_map().is_dominant() {
            return Err(MapViolation::NotDominant);
        }
        for (j, col) in self.gens.iter().enumerate() {
            let off = self.obj[j];
            if col[0].iter().any(|&a| a != 0) {
                return Err(MapViolation::LeastNotPreserved { column: j });
            }
            let last = col.last().unwrap();
            if last.iter().enumerate().any(|(k, &a)| a != self.src.column_size(off + k) - 1) {
                return Err(MapViolation::GreatestNotPreserved { column: j });
            }
            for g in 0..col.len() - 1 {
                if let Some(k) = (0..col[g].len()).find(|&k| col[g][k] > col[g + 1][k]) {
                    return Err(MapViolation::NotMonotone { column: j, generator: g, component: k });
                }
            }
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    /// Image of a path of `V`-arrows, one per column `a..a+path.len()`.
    pub fn path_image(&self, a: usize, path: &[usize]) -> Vec<usize> {
        path.iter().enumerate().flat_map(|(k, &g)| self.gens[a + k][g].iter().copied()).collect()
    }

    /// `next ∘ self`, for `self: U → V` and `next: V → W`.
    pub fn then(&self, next: &TwoOrdinalMap) -> Result<TwoOrdinalMap> {
        if self.dst != next.src {
            return Err(Error::Shape("maps are not composable".into()));
        }
        let obj = next.obj.iter().map(|&o| self.obj[o]).collect();
        let gens = next
            .gens
            .iter()
            .enumerate()
            .map(|(k, col)| col.iter().map(|t| self.path_image(next.obj[k], t)).collect())
            .collect();
        Ok(TwoOrdinalMap { src: self.src.clone(), dst: next.dst.clone(), obj, gens })
    }

    /// The `V`-column over `U`-column `c`.
    pub fn column_image(&self, c: usize) -> usize {
        (0..self.dst.num_columns()).find(|&j| self.obj[j] <= c && c < self.obj[j + 1]).expect("dominant object map")
    }

    pub fn preimage_ball(&self, b: &Ball) -> Result<Ball> {
        if b.host() != &self.dst {
            return Err(Error::Shape("ball does not live in the target".into()));
        }
        let (a, e) = b.cols();
        let mut cells = Vec::new();
        for j in a..e {
            let (lo, hi) = b.interval(j);
            let bottom = &self.gens[j][lo];
            let top = &self.gens[j][hi];
            cells.extend(bottom.iter().zip(top).map(|(&x, &y)| (x, y)));
        }
        Ball::new(&self.src, (self.obj[a], self.obj[e]), cells)
    }

    /// The map from the preimage ball of `b` onto `b`.
    pub fn restrict(&self, b: &Ball) -> Result<TwoOrdinalMap> {
        let pre = self.preimage_ball(b)?;
        let (a, e) = b.cols();
        let base = self.obj[a];
        let obj = (a..=e).map(|j| self.obj[j] - base).collect();
        let gens = (a..e)
            .map(|j| {
                let (lo, hi) = b.interval(j);
                (lo..=hi)
                    .map(|i| self.gens[j][i].iter().enumerate().map(|(k, &x)| x - pre.interval(self.obj[j] + k).0).collect())
                    .collect()
            })
            .collect();
        TwoOrdinalMap::checked(pre.shape(), b.shape(), obj, gens)
    }

    pub fn induced_tree_map(&self) -> TreeMap {
        let cols: Vec<usize> = (0..self.src.num_columns()).map(|c| self.column_image(c)).collect();
        let cells = self
            .src
            .cells()
            .into_iter()
            .map(|(c, i)| {
                let j = cols[c];
                let k = c - self.obj[j];
                let g = (0..self.dst.column_size(j) - 1)
                    .find(|&g| self.gens[j][g][k] <= i && i < self.gens[j][g + 1][k])
                    .expect("valid map covers every 2-cell");
                self.dst.cell_index((j, g))
            })
            .collect();
        TreeMap { cols, cells }
    }

    /// Whether the preimages of the target's globes cover every source
    /// 2-cell exactly once.
    pub fn tiles(&self) -> bool {
        let mut hits = vec![0usize; self.src.num_cells()];
        for cell in self.dst.cells() {
            let b = self.preimage_ball(&self.dst.globe_ball(cell)).unwrap();
            for k in b.host_cells() {
                hits[k] += 1;
            }
        }
        hits.iter().all(|&h| h == 1)
    }
}

fn chains(sizes: &[usize], len: usize, cur: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
    let top: Vec<usize> = sizes.iter().map(|n| n - 1).collect();
    if cur.len() == len - 1 {
        if cur.last().unwrap().iter().zip(&top).all(|(a, b)| a <= b) {
            cur.push(top);
            out.push(cur.clone());
            cur.pop();
        }
        return;
    }
    let prev = cur.last().unwrap().clone();
    let mut t = prev.clone();
    loop {
        cur.push(t.clone());
        chains(sizes, len, cur, out);
        cur.pop();
        let mut k = sizes.len();
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            if t[k] < top[k] {
                t[k] += 1;
                break;
            }
            t[k] = prev[k];
        }
    }
}

/// All valid maps `U → V` in a deterministic order (object map, then
/// generator images lexicographically). Fails once more than `guard` maps
/// would be produced.
pub fn enumerate_maps(u: &TwoOrdinal, v: &TwoOrdinal, guard: usize) -> Result<Vec<TwoOrdinalMap>> {
    let objs = enumerate_monotone(Ordinal::new(v.num_objects())?, Ordinal::new(u.num_objects())?, true);
    let mut out = Vec::new();
    for om in objs {
        let obj = om.values().to_vec();
        let per_col: Vec<Vec<Vec<Vec<usize>>>> = (0..v.num_columns())
            .map(|j| {
                let sizes = &u.columns()[obj[j]..obj[j + 1]];
                let len = v.column_size(j);
                let start = vec![0; sizes.len()];
                if len == 1 {
                    return if sizes.iter().all(|&n| n == 1) { vec![vec![start]] } else { Vec::new() };
                }
                let mut res = Vec::new();
                chains(sizes, len, &mut vec![start], &mut res);
                res
            })
            .collect();
        let mut idx = vec![0usize; per_col.len()];
        if per_col.iter().any(|c| c.is_empty()) {
            continue;
        }
        loop {
            if out.len() >= guard {
                return Err(Error::Guard(format!("more than {guard} maps")));
            }
            let gens = idx.iter().enumerate().map(|(j, &i)| per_col[j][i].clone()).collect();
            out.push(TwoOrdinalMap { src: u.clone(), dst: v.clone(), obj: obj.clone(), gens });
            let mut k = idx.len();
            loop {
                if k == 0 {
                    break;
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < per_col[k].len() {
                    break;
                }
                idx[k] = 0;
            }
            if idx.iter().all(|&i| i == 0) {
                break;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn worked_map() -> TwoOrdinalMap {
        TwoOrdinalMap::new(
            TwoOrdinal::new(vec![4, 3, 1, 5]).unwrap(),
            TwoOrdinal::new(vec![3, 2]).unwrap(),
            vec![0, 2, 4],
            vec![vec![vec![0, 0], vec![0, 1], vec![3, 2]], vec![vec![0, 0], vec![0, 4]]],
        )
        .unwrap()
    }

    #[test]
    fn worked_map_is_valid() {
        assert_eq!(worked_map().validate(), Ok(()));
        let u = worked_map().src().clone();
        assert!(TwoOrdinalMap::identity(&u).is_valid());
        assert!(TwoOrdinalMap::terminal(&u).is_valid());
    }

    #[test]
    fn greatest_violation() {
        let mut p = worked_map();
        p.gens[0][2] = vec![2, 2];
        let v = p.validate().unwrap_err();
        assert_eq!(v, MapViolation::GreatestNotPreserved { column: 0 });
        assert_eq!(v.to_string(), "greatest element not preserved in column 0");
    }

    #[test]
    fn worked_preimages() {
        let p = worked_map();
        let v = p.dst().clone();
        let b = |c| p.preimage_ball(&v.globe_ball(c)).unwrap();
        assert_eq!((b((0, 0)).cols(), b((0, 0)).intervals().to_vec()), ((0, 2), vec![(0, 0), (0, 1)]));
        assert_eq!((b((0, 1)).cols(), b((0, 1)).intervals().to_vec()), ((0, 2), vec![(0, 3), (1, 2)]));
        assert_eq!((b((1, 0)).cols(), b((1, 0)).intervals().to_vec()), ((2, 4), vec![(0, 0), (0, 4)]));
        assert!(p.tiles());
    }

    #[test]
    fn worked_tree_map() {
        let p = worked_map();
        let t = p.induced_tree_map();
        assert_eq!(t.cols, vec![0, 0, 1, 1]);
        assert_eq!(t.cells[0], 1);
        assert!(t.square_commutes(p.src(), p.dst()));
        let id = TwoOrdinalMap::identity(p.src()).induced_tree_map();
        assert_eq!(id.cols, vec![0, 1, 2, 3]);
        assert_eq!(id.cells, (0..9).collect::<Vec<_>>());
    }

    #[test]
    fn globe_is_terminal() {
        let g = TwoOrdinal::globe();
        assert_eq!(enumerate_maps(&g, &g, 100).unwrap().len(), 1);
        for cols in [vec![], vec![1], vec![3, 2], vec![2, 1, 2]] {
            let u = TwoOrdinal::new(cols).unwrap();
            let maps = enumerate_maps(&u, &g, 100).unwrap();
            assert_eq!(maps, vec![TwoOrdinalMap::terminal(&u)]);
        }
    }

    #[test]
    fn guard_trips() {
        let u = TwoOrdinal::new(vec![3, 3, 3]).unwrap();
        let v = TwoOrdinal::new(vec![3, 3]).unwrap();
        assert!(matches!(enumerate_maps(&u, &v, 2), Err(Error::Guard(_))));
    }

    #[test]
    fn json_roundtrip() {
        let p = worked_map();
        let s = serde_json::to_string(&p).unwrap();
        assert!(s.contains(r#""obj":[0,2,4]"#));
        assert_eq!(serde_json::from_str::<TwoOrdinalMap>(&s).unwrap(), p);
    }
}
