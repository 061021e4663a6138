use super::DgCategory;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, SparseVec};

/// A dg-functor between finite dg-categories: an object map and, for each
/// pair `(x, y)` of source objects, a matrix `hom(x,y) → hom(Fx,Fy)`.
#[derive(Clone, Debug, PartialEq)]
pub struct DgFunctor {
    obj: Vec<usize>,
    maps: Vec<Matrix>,
}

impl DgFunctor {
    pub fn new(src: &DgCategory, dst: &DgCategory, obj: Vec<usize>, maps: Vec<Matrix>) -> Result<Self> {
        let n = src.num_objects();
        if obj.len() != n || maps.len() != n * n || obj.iter().any(|&o| o >= dst.num_objects()) {
            return Err(Error::Shape("functor data does not match the categories".into()));
        }
        let f = Self { obj, maps };
        f.validate(src, dst)?;
        Ok(f)
    }

    pub fn identity(c: &DgCategory) -> Self {
        let n = c.num_objects();
        let maps = (0..n * n).map(|k| Matrix::identity(c.hom_dim(k / n, k % n))).collect();
        Self { obj: (0..n).collect(), maps }
    }

    pub fn object(&self, x: usize) -> usize {
        self.obj[x]
    }

    pub fn apply(&self, x: usize, y: usize, v: &SparseVec) -> SparseVec {
        self.maps[x * self.obj.len() + y].apply(v)
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &DgFunctor) -> DgFunctor {
        let n = self.obj.len();
        let m = next.obj.len();
        let maps = (0..n * n)
            .map(|k| {
                let (x, y) = (k / n, k % n);
                next.maps[self.obj[x] * m + self.obj[y]].compose(&self.maps[k])
            })
            .collect();
        DgFunctor { obj: self.obj.iter().map(|&o| next.obj[o]).collect(), maps }
    }

    pub fn validate(&self, src: &DgCategory, dst: &DgCategory) -> Result<()> {
        let n = src.num_objects();
        for x in 0..n {
            if self.apply(x, x, src.unit(x)) != *dst.unit(self.obj[x]) {
                return Err(Error::Invariant(format!("functor does not preserve the unit of {x}")));
            }
            for y in 0..n {
                let (h, fh) = (src.hom(x, y), dst.hom(self.obj[x], self.obj[y]));
                for a in 0..h.dim() {
                    let img = self.apply(x, y, &SparseVec::unit(a));
                    if img.iter().any(|(i, _)| fh.degree(i) != h.degree(a)) {
                        return Err(Error::Invariant(format!("functor changes degrees on hom({x},{y})")));
                    }
                    if fh.apply_d(&img) != self.apply(x, y, &h.apply_d(&SparseVec::unit(a))) {
                        return Err(Error::Invariant(format!("functor does not commute with d on hom({x},{y})")));
                    }
                }
                for z in 0..n {
                    for a in 0..src.hom_dim(y, z) {
                        for b in 0..h.dim() {
                            let lhs = self.apply(x, z, src.compose_basis(x, y, z, a, b));
                            let rhs = dst.compose(
                                self.obj[x],
                                self.obj[y],
                                self.obj[z],
                                &self.apply(y, z, &SparseVec::unit(a)),
                                &self.apply(x, y, &SparseVec::unit(b)),
                            );
                            if lhs != rhs {
                                return Err(Error::Invariant(format!("functor does not preserve composition on ({x},{y},{z})")));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}
