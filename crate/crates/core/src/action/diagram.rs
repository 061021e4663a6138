use crate::dg_cat::{DgCategory, DgFunctor, Globe};
use crate::error::{Error, Result};
use crate::two_ordinal::TwoOrdinal;

/// A diagram of dg-categories of the shape of a 2-ordinal: one category per
/// 0-cell and one functor per arrow. Arrows of column `c` go from
/// `cats[c]` to `cats[c + 1]`.
#[derive(Clone, Debug)]
pub struct DgDiagram {
    pub shape: TwoOrdinal,
    pub cats: Vec<DgCategory>,
    pub functors: Vec<Vec<DgFunctor>>,
}

impl DgDiagram {
    pub fn new(shape: TwoOrdinal, cats: Vec<DgCategory>, functors: Vec<Vec<DgFunctor>>) -> Result<Self> {
        if cats.len() != shape.num_columns() + 1 || functors.len() != shape.num_columns() {
            return Err(Error::Shape("diagram does not match the shape".into()));
        }
        for (c, col) in functors.iter().enumerate() {
            if col.len() != shape.column_size(c) {
                return Err(Error::Shape(format!("column {c} needs {} functors", shape.column_size(c))));
            }
            for f in col {
                f.validate(&cats[c], &cats[c + 1])?;
            }
        }
        Ok(Self { shape, cats, functors })
    }

    /// Every 0-cell is `a`, every arrow the identity.
    pub fn constant(shape: TwoOrdinal, a: &DgCategory) -> Self {
        let id = DgFunctor::identity(a);
        let functors = shape.columns().iter().map(|&s| vec![id.clone(); s]).collect();
        Self { cats: vec![a.clone(); shape.num_columns() + 1], shape, functors }
    }

    /// The globe of a 2-cell (flat index).
    pub fn cell_globe(&self, f: usize) -> Globe {
        let (c, i) = self.shape.cell_at(f);
        Globe {
            a: self.cats[c].clone(),
            b: self.cats[c + 1].clone(),
            f: self.functors[c][i].clone(),
            g: self.functors[c][i + 1].clone(),
        }
    }

    /// The composite of the lowest and of the highest arrows.
    pub fn boundary_globe(&self) -> Globe {
        let n = self.shape.num_columns();
        let mut lo = DgFunctor::identity(&self.cats[0]);
        let mut hi = lo.clone();
        for c in 0..n {
            lo = lo.then(&self.functors[c][0]);
            hi = hi.then(self.functors[c].last().expect("columns are nonempty"));
        }
        Globe { a: self.cats[0].clone(), b: self.cats[n].clone(), f: lo, g: hi }
    }
}
