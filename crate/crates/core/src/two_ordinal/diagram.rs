use std::fmt::Debug;

use super::{Ball, TwoOrdinal, TwoOrdinalMap};
use crate::error::{Error, Result};

/// A small category, just enough structure to evaluate `U`-diagrams.
pub trait SmallCategory {
    type Obj: Clone + PartialEq + Debug;
    type Arr: Clone + Debug;

    fn source(&self, a: &Self::Arr) -> Self::Obj;
    fn target(&self, a: &Self::Arr) -> Self::Obj;
    fn identity(&self, o: &Self::Obj) -> Self::Arr;
    /// `g ∘ f`
    fn compose(&self, g: &Self::Arr, f: &Self::Arr) -> Self::Arr;
}

/// A functor from the underlying 1-category of `[U]` into `C`: an object per
/// object of `U` and an arrow per 1-arrow of `U`.
#[derive(Clone, Debug)]
pub struct Diagram<C: SmallCategory> {
    shape: TwoOrdinal,
    objects: Vec<C::Obj>,
    arrows: Vec<Vec<C::Arr>>,
}

impl<C: SmallCategory> Diagram<C> {
    pub fn new(cat: &C, shape: TwoOrdinal, objects: Vec<C::Obj>, arrows: Vec<Vec<C::Arr>>) -> Result<Self> {
        if objects.len() != shape.num_objects() || arrows.len() != shape.num_columns() {
            return Err(Error::Shape("diagram data does not match its shape".into()));
        }
        for (c, col) in arrows.iter().enumerate() {
            if col.len() != shape.column_size(c) {
                return Err(Error::Shape(format!("column {c} has {} arrows", col.len())));
            }
            for a in col {
                if cat.source(a) != objects[c] || cat.target(a) != objects[c + 1] {
                    return Err(Error::Shape(format!("arrow {a:?} has the wrong endpoints in column {c}")));
                }
            }
        }
        Ok(Self { shape, objects, arrows })
    }

    pub fn shape(&self) -> &TwoOrdinal {
        &self.shape
    }

    pub fn object(&self, c: usize) -> &C::Obj {
        &self.objects[c]
    }

    pub fn objects(&self) -> &[C::Obj] {
        &self.objects
    }

    pub fn arrow(&self, c: usize, i: usize) -> &C::Arr {
        &self.arrows[c][i]
    }

    pub fn arrows(&self) -> &[Vec<C::Arr>] {
        &self.arrows
    }

    /// The composite along a path starting at object `a`.
    pub fn path(&self, cat: &C, a: usize, path: &[usize]) -> C::Arr {
        path.iter()
            .enumerate()
            .fold(cat.identity(&self.objects[a]), |acc, (k, &i)| cat.compose(&self.arrows[a + k][i], &acc))
    }

    pub fn restrict(&self, b: &Ball) -> Diagram<C> {
        let (a, e) = b.cols();
        Diagram {
            shape: b.shape(),
            objects: self.objects[a..=e].to_vec(),
            arrows: (a..e)
                .map(|c| {
                    let (lo, hi) = b.interval(c);
                    self.arrows[c][lo..=hi].to_vec()
                })
                .collect(),
        }
    }

    /// `P_* D`, the `V`-diagram obtained by precomposing with `[P]`.
    pub fn pushforward(&self, cat: &C, p: &TwoOrdinalMap) -> Result<Diagram<C>> {
        if p.src() != &self.shape {
            return Err(Error::Shape("map source differs from the diagram shape".into()));
        }
        let v = p.dst();
        Ok(Diagram {
            shape: v.clone(),
            objects: p.obj().iter().map(|&o| self.objects[o].clone()).collect(),
            arrows: (0..v.num_columns())
                .map(|j| p.gens()[j].iter().map(|t| self.path(cat, p.obj()[j], t)).collect())
                .collect(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Free category on a graph is overkill; strings of letters under
    /// concatenation with endpoints do fine.
    struct Words;

    impl SmallCategory for Words {
        type Obj = usize;
        type Arr = (usize, usize, String);
        fn source(&self, a: &Self::Arr) -> usize {
            a.0
        }
        fn target(&self, a: &Self::Arr) -> usize {
            a.1
        }
        fn identity(&self, o: &usize) -> Self::Arr {
            (*o, *o, String::new())
        }
        fn compose(&self, g: &Self::Arr, f: &Self::Arr) -> Self::Arr {
            assert_eq!(f.1, g.0);
            (f.0, g.1, format!("{}{}", f.2, g.2))
        }
    }

    fn diagram() -> Diagram<Words> {
        let u = TwoOrdinal::new(vec![2, 3]).unwrap();
        let arrows = vec![
            vec![(0, 1, "a".into()), (0, 1, "b".into())],
            vec![(1, 2, "x".into()), (1, 2, "y".into()), (1, 2, "z".into())],
        ];
        Diagram::new(&Words, u, vec![0, 1, 2], arrows).unwrap()
    }

    #[test]
    fn paths_and_pushforward() {
        let d = diagram();
        assert_eq!(d.path(&Words, 0, &[1, 2]).2, "bz");
        let t = TwoOrdinalMap::terminal(d.shape());
        let g = d.pushforward(&Words, &t).unwrap();
        assert_eq!(g.arrow(0, 0).2, "ax");
        assert_eq!(g.arrow(0, 1).2, "bz");
        let id = TwoOrdinalMap::identity(d.shape());
        assert_eq!(d.pushforward(&Words, &id).unwrap().arrows(), d.arrows());
    }

    #[test]
    fn rejects_bad_endpoints() {
        let u = TwoOrdinal::new(vec![1]).unwrap();
        assert!(Diagram::new(&Words, u, vec![0, 1], vec![vec![(0, 2, "a".into())]]).is_err());
    }

    #[test]
    fn restriction() {
        let d = diagram();
        let b = Ball::new(d.shape(), (1, 2), vec![(1, 2)]).unwrap();
        let r = d.restrict(&b);
        assert_eq!(r.shape().columns(), &[2]);
        assert_eq!(r.arrow(0, 0).2, "y");
    }
}
