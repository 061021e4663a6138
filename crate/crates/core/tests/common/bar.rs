//! Hochschild cohomology of an ungraded algebra from the normalized bar
//! complex `Hom(Ā^{⊗n}, A)`, with dense rational matrices.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;

use twoop::dg_cat::DgCategory;
use twoop::linalg::SparseVec;

use super::{q, rank};

pub struct Algebra {
    pub dim: usize,
    /// `mul[i][j]` = coordinates of `e_i · e_j`.
    pub mul: Vec<Vec<Vec<BigRational>>>,
    pub unit: Vec<BigRational>,
}

impl Algebra {
    pub fn from_category(a: &DgCategory) -> Self {
        assert_eq!(a.num_objects(), 1, "one-object categories only");
        let h = a.hom(0, 0);
        assert!(h.degrees().iter().all(|&d| d == 0), "algebra must sit in degree 0");
        let dim = h.dim();
        let dense = |v: &SparseVec| (0..dim).map(|i| v.get(i)).collect::<Vec<_>>();
        let mul = (0..dim)
            .map(|i| (0..dim).map(|j| dense(&a.compose(0, 0, 0, &SparseVec::unit(i), &SparseVec::unit(j)))).collect())
            .collect();
        Algebra { dim, mul, unit: dense(a.unit(0)) }
    }

    pub fn times(&self, x: &[BigRational], y: &[BigRational]) -> Vec<BigRational> {
        let mut out = vec![q(0); self.dim];
        for (i, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in y.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                for k in 0..self.dim {
                    out[k] += a * b * &self.mul[i][j][k];
                }
            }
        }
        out
    }
}

/// The normalized Hochschild cochain complex.
pub struct Bar {
    alg: Algebra,
    pivot: usize,
    /// Basis of `Ā`: the basis vectors of `A` other than the pivot.
    reduced: Vec<usize>,
}

impl Bar {
    pub fn new(alg: Algebra) -> Self {
        let pivot = (0..alg.dim).find(|&i| !alg.unit[i].is_zero()).expect("nonzero unit");
        let reduced = (0..alg.dim).filter(|&i| i != pivot).collect();
        Bar { alg, pivot, reduced }
    }

    /// Coordinates in `Ā` of an element of `A`.
    fn project(&self, v: &[BigRational]) -> Vec<BigRational> {
        let c = &v[self.pivot] / &self.alg.unit[self.pivot];
        self.reduced.iter().map(|&i| &v[i] - &c * &self.alg.unit[i]).collect()
    }

    fn basis(&self, i: usize) -> Vec<BigRational> {
        let mut v = vec![q(0); self.alg.dim];
        v[self.reduced[i]] = q(1);
        v
    }

    fn cochain_dim(&self, n: usize) -> usize {
        self.reduced.len().pow(n as u32) * self.alg.dim
    }

    fn tuple(&self, mut t: usize, n: usize) -> Vec<usize> {
        let b = self.reduced.len();
        let mut out = vec![0; n];
        for k in (0..n).rev() {
            out[k] = t % b;
            t /= b;
        }
        out
    }

    fn tuple_index(&self, t: &[usize]) -> usize {
        t.iter().fold(0, |acc, &x| acc * self.reduced.len() + x)
    }

    /// `φ(args)` for a basis cochain `φ` (tuple `phi_t`, output basis
    /// vector `phi_o`) and arguments given as `Ā`-coordinates.
    fn eval(&self, phi_t: &[usize], phi_o: usize, args: &[Vec<BigRational>]) -> Vec<BigRational> {
        let c: BigRational = phi_t.iter().zip(args).map(|(&i, a)| a[i].clone()).product();
        let mut out = vec![q(0); self.alg.dim];
        out[phi_o] = c;
        out
    }

    /// Matrix of `δ: C^n → C^{n+1}` as rows of `C^{n+1}`.
    fn delta(&self, n: usize) -> Vec<Vec<BigRational>> {
        let d = self.alg.dim;
        let cols = self.cochain_dim(n);
        let mut rows = vec![vec![q(0); cols]; self.cochain_dim(n + 1)];
        for t in 0..self.reduced.len().pow(n as u32 + 1) {
            let b = self.tuple(t, n + 1);
            let full: Vec<Vec<BigRational>> = b.iter().map(|&i| self.basis(i)).collect();
            let bar: Vec<Vec<BigRational>> = full.iter().map(|x| self.project(x)).collect();
            for pt in 0..self.reduced.len().pow(n as u32) {
                let phi_t = self.tuple(pt, n);
                for o in 0..d {
                    let col = self.tuple_index(&phi_t) * d + o;
                    let mut val = self.alg.times(&full[0], &self.eval(&phi_t, o, &bar[1..]));
                    for i in 0..n {
                        let prod = self.project(&self.alg.times(&full[i], &full[i + 1]));
                        let mut args = bar[..i].to_vec();
                        args.push(prod);
                        args.extend_from_slice(&bar[i + 2..]);
                        let s = if i % 2 == 0 { q(-1) } else { q(1) };
                        for (k, x) in self.eval(&phi_t, o, &args).into_iter().enumerate() {
                            val[k] += &s * x;
                        }
                    }
                    let last = self.alg.times(&self.eval(&phi_t, o, &bar[..n]), &full[n]);
                    let s = if n % 2 == 0 { q(-1) } else { q(1) };
                    for (k, x) in last.into_iter().enumerate() {
                        val[k] += &s * x;
                    }
                    for (k, x) in val.into_iter().enumerate() {
                        rows[t * d + k][col] = x;
                    }
                }
            }
        }
        rows
    }

    /// `HH^n` for `n ≤ top`.
    pub fn cohomology(&self, top: usize) -> BTreeMap<i64, usize> {
        let ranks: Vec<usize> = (0..=top).map(|n| rank(self.delta(n))).collect();
        (0..=top).map(|n| (n as i64, self.cochain_dim(n) - ranks[n] - if n == 0 { 0 } else { ranks[n - 1] })).collect()
    }
}

pub fn hochschild_oracle(a: &DgCategory, top: usize) -> BTreeMap<i64, usize> {
    Bar::new(Algebra::from_category(a)).cohomology(top)
}
