//! A few small dg-categories and functors used in examples and tests.

use std::collections::BTreeMap;

use super::{one_object, DgCategory, DgFunctor};
use crate::chain_complex::ChainComplex;
use crate::linalg::{int, Field, Matrix, SparseVec};

fn e(i: usize) -> SparseVec {
    SparseVec::unit(i)
}

fn z() -> SparseVec {
    SparseVec::new()
}

fn flat(dim: usize) -> ChainComplex {
    ChainComplex::new(Field::Rational, vec![0; dim], Matrix::zero(dim, dim)).expect("zero differential")
}

/// Commutative algebra `k[x]/x^n` with basis `1, x, …, x^{n-1}`.
pub fn truncated_polynomial(n: usize) -> DgCategory {
    let mul = (0..n).map(|a| (0..n).map(|b| if a + b < n { e(a + b) } else { z() }).collect()).collect();
    one_object("p", vec![0; n], vec![z(); n], mul, e(0)).expect("valid algebra")
}

pub fn ground() -> DgCategory {
    truncated_polynomial(1)
}

pub fn dual_numbers() -> DgCategory {
    truncated_polynomial(2)
}

/// Upper triangular 2×2 matrices, basis `e11, e12, e22`.
pub fn upper_triangular() -> DgCategory {
    let table = [[Some(0), Some(1), None], [None, None, Some(1)], [None, None, Some(2)]];
    let mul = table.iter().map(|r| r.iter().map(|c| c.map(e).unwrap_or_default()).collect()).collect();
    one_object("p", vec![0; 3], vec![z(); 3], mul, SparseVec::from_pairs([(0, int(1)), (2, int(1))]))
        .expect("valid algebra")
}

/// Basis `y, 1, x` in degrees `-1, 0, 0`, with `dy = x` and every product
/// of non-unit elements zero.
pub fn graded() -> DgCategory {
    let mul = (0..3)
        .map(|a| (0..3).map(|b| if a == 1 { e(b) } else if b == 1 { e(a) } else { z() }).collect())
        .collect();
    one_object("p", vec![-1, 0, 0], vec![e(2), z(), z()], mul, e(1)).expect("valid algebra")
}

/// Two objects `a, b` and one arrow `a → b` besides the identities.
pub fn path_a2() -> DgCategory {
    let homs = vec![flat(1), flat(1), ChainComplex::zero(Field::Rational), flat(1)];
    let comp = BTreeMap::from([
        ((0, 0, 0), vec![e(0)]),
        ((1, 1, 1), vec![e(0)]),
        ((0, 0, 1), vec![e(0)]),
        ((0, 1, 1), vec![e(0)]),
    ]);
    DgCategory::new(vec!["a".into(), "b".into()], homs, comp, vec![e(0), e(0)]).expect("valid category")
}

pub fn all() -> Vec<DgCategory> {
    vec![ground(), dual_numbers(), truncated_polynomial(3), upper_triangular(), graded(), path_a2()]
}

/// Rescales every basis element of positive polynomial degree (or every
/// non-unit basis element of `graded`) by `c^k`.
pub fn rescaling(cat: &DgCategory, weights: &[u32], c: i64) -> DgFunctor {
    let dim = cat.hom_dim(0, 0);
    let cols = (0..dim).map(|i| SparseVec::from_pairs([(i, int(c.pow(weights[i])))])).collect();
    DgFunctor::new(cat, cat, vec![0], vec![Matrix::from_columns(dim, cols)]).expect("valid functor")
}

/// `x ↦ 2x` on the dual numbers.
pub fn doubling() -> DgFunctor {
    rescaling(&dual_numbers(), &[0, 1], 2)
}

/// `y ↦ 2y, x ↦ 2x` on `graded`.
pub fn graded_doubling() -> DgFunctor {
    rescaling(&graded(), &[1, 0, 1], 2)
}
