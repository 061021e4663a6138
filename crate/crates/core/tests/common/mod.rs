//! Independent oracles and shared enumeration for the integration tests.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use twoop::two_ordinal::TwoOrdinal;

pub mod action;
pub mod bar;
pub mod operad;

pub fn shape(c: &[usize]) -> TwoOrdinal {
    TwoOrdinal::new(c.to_vec()).unwrap()
}

/// All shapes with `1..=max_cols` columns of sizes `1..=max_size`,
/// optionally with the point.
pub fn shapes(max_cols: usize, max_size: usize, point: bool) -> Vec<TwoOrdinal> {
    let mut out = if point { vec![TwoOrdinal::point()] } else { Vec::new() };
    let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..max_cols {
        layer = layer.iter().flat_map(|c| (1..=max_size).map(move |s| [c.clone(), vec![s]].concat())).collect();
        out.extend(layer.iter().map(|c| shape(c)));
    }
    out
}

/// Monotone sequences of length `len` with values below `bound`, by
/// recursion on the first value.
pub fn monotone(len: usize, bound: usize) -> Vec<Vec<usize>> {
    fn go(len: usize, from: usize, bound: usize) -> Vec<Vec<usize>> {
        if len == 0 {
            return vec![Vec::new()];
        }
        (from..bound).flat_map(|x| go(len - 1, x, bound).into_iter().map(move |t| [vec![x], t].concat())).collect()
    }
    go(len, 0, bound)
}

pub fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn cartesian(ranges: &[usize]) -> Vec<Vec<usize>> {
    ranges.iter().fold(vec![Vec::new()], |acc, &r| {
        acc.into_iter().flat_map(|t| (0..r).map(move |x| [t.clone(), vec![x]].concat())).collect()
    })
}

/// Number of 2-functors `[V] → [U]` preserving least and greatest
/// 1-arrows, by filtering all assignments.
pub fn brute_force_map_count(u: &TwoOrdinal, v: &TwoOrdinal) -> usize {
    let nu = u.num_objects();
    let nv = v.num_objects();
    let mut count = 0;
    for obj in cartesian(&vec![nu; nv]) {
        if obj[0] != 0 || obj[nv - 1] != nu - 1 || obj.windows(2).any(|w| w[0] > w[1]) {
            continue;
        }
        let mut per_col = 1usize;
        for j in 0..v.num_columns() {
            let ucols: Vec<usize> = (obj[j]..obj[j + 1]).map(|c| u.column_size(c)).collect();
            let tuples = cartesian(&ucols);
            let len = v.column_size(j);
            let mut ok = 0;
            for choice in cartesian(&vec![tuples.len(); len]) {
                let imgs: Vec<&Vec<usize>> = choice.iter().map(|&i| &tuples[i]).collect();
                let least = imgs[0].iter().all(|&x| x == 0);
                let greatest = imgs[len - 1].iter().zip(&ucols).all(|(&x, &s)| x == s - 1);
                let mono = imgs.windows(2).all(|w| w[0].iter().zip(w[1]).all(|(a, b)| a <= b));
                ok += usize::from(least && greatest && mono);
            }
            per_col *= ok;
        }
        count += per_col;
    }
    count
}

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Rank of a dense rational matrix by row reduction.
pub fn rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = BigRational::one() / rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for k in c..ncols {
                    let sub = &f * &rows[r][k];
                    rows[i][k] -= sub;
                }
            }
        }
        r += 1;
    }
    r
}
