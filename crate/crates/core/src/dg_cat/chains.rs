use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_traits::Zero;

use super::DgCategory;
use crate::linalg::{sign, Scalar, SparseVec};
use crate::ordinal::MonotoneMap;

/// A linear combination of tensors `a_1 ⊗ … ⊗ a_n` of basis arrows along a
/// fixed string of objects `X_0, …, X_n` (`a_i ∈ hom(X_{i-1}, X_i)`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainTuple {
    pub objects: Vec<usize>,
    pub terms: BTreeMap<Vec<usize>, Scalar>,
}

impl ChainTuple {
    pub fn zero(objects: Vec<usize>) -> Self {
        Self { objects, terms: BTreeMap::new() }
    }

    pub fn pure(objects: Vec<usize>, factors: Vec<usize>) -> Self {
        assert_eq!(objects.len(), factors.len() + 1);
        let mut t = Self::zero(objects);
        t.add_term(factors, Scalar::from_integer(1.into()));
        t
    }

    pub fn add_term(&mut self, factors: Vec<usize>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(factors) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree_of(cat: &DgCategory, objects: &[usize], factors: &[usize]) -> i64 {
        factors.iter().enumerate().map(|(i, &a)| cat.hom(objects[i], objects[i + 1]).degree(a)).sum()
    }

    /// The tensor differential.
    pub fn differential(&self, cat: &DgCategory) -> ChainTuple {
        let mut out = ChainTuple::zero(self.objects.clone());
        for (f, c) in &self.terms {
            let mut before = 0i64;
            for i in 0..f.len() {
                let h = cat.hom(self.objects[i], self.objects[i + 1]);
                let s = sign(before % 2 != 0);
                for (j, v) in h.apply_d(&SparseVec::unit(f[i])).iter() {
                    let mut g = f.clone();
                    g[i] = j;
                    out.add_term(g, c * &s * v);
                }
                before += h.degree(f[i]);
            }
        }
        out
    }
}

/// Expands `v_1 ⊗ … ⊗ v_n` into basis tensors.
pub fn expand(vectors: &[SparseVec]) -> Vec<(Vec<usize>, Scalar)> {
    let mut out = vec![(Vec::new(), Scalar::from_integer(1.into()))];
    for v in vectors {
        let mut next = Vec::new();
        for (idx, c) in &out {
            for (i, x) in v.iter() {
                let mut k = idx.clone();
                k.push(i);
                next.push((k, c * x));
            }
        }
        out = next;
    }
    out
}

/// Restriction of a chain along a dominant monotone map `J → I` given by
/// its values: arrows of `J` go to composites, degenerate arrows to
/// identities.
pub fn pullback_values(cat: &DgCategory, values: &[usize], t: &ChainTuple) -> ChainTuple {
    let objects: Vec<usize> = values.iter().map(|&v| t.objects[v]).collect();
    let mut out = ChainTuple::zero(objects);
    for (f, c) in &t.terms {
        let vecs: Vec<SparseVec> = values
            .windows(2)
            .map(|w| {
                let objs = &t.objects[w[0]..=w[1]];
                let factors: Vec<SparseVec> = f[w[0]..w[1]].iter().map(|&a| SparseVec::unit(a)).collect();
                cat.comp_path(objs, &factors)
            })
            .collect();
        for (g, x) in expand(&vecs) {
            out.add_term(g, c * x);
        }
    }
    out
}

pub fn chain_pullback(cat: &DgCategory, k: &MonotoneMap, t: &ChainTuple) -> ChainTuple {
    assert!(k.is_dominant(), "pullback needs a dominant map");
    pullback_values(cat, k.values(), t)
}

#[cfg(test)]
mod tests {
    use super::super::corpus;
    use super::*;
    use crate::ordinal::{compose_monotone, enumerate_monotone, Ordinal};

    #[test]
    fn pullback_is_functorial_and_a_chain_map() {
        let c = corpus::graded();
        let t = ChainTuple::pure(vec![0; 4], vec![0, 2, 0]);
        let o = |n| Ordinal::bracket(n);
        for g in enumerate_monotone(o(3), o(3), true) {
            let pg = chain_pullback(&c, &g, &t);
            assert_eq!(chain_pullback(&c, &g, &t.differential(&c)), pg.differential(&c));
            for f in enumerate_monotone(o(2), o(3), true) {
                let gf = compose_monotone(&g, &f).unwrap();
                assert_eq!(chain_pullback(&c, &gf, &t), chain_pullback(&c, &f, &pg));
            }
        }
    }

    #[test]
    fn degenerate_arrows_become_identities() {
        let c = corpus::dual_numbers();
        let t = ChainTuple::pure(vec![0, 0], vec![1]);
        let p = pullback_values(&c, &[0, 0, 1], &t);
        assert_eq!(p, ChainTuple::pure(vec![0, 0, 0], vec![0, 1]));
    }
}
