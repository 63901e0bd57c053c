//! Brute-force reference implementations. Everything here enumerates sets of
//! elements directly and never touches Howell forms.
#![allow(dead_code)]

use std::collections::BTreeSet;

use amalgam_core::submodule::combine;
use amalgam_core::{FiniteRing, ZnMatrix};

pub type Set = BTreeSet<Vec<u64>>;

/// Every vector of `(Z/n)^dim`.
pub fn all_vectors(n: u64, dim: usize) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for _ in 0..dim {
        out = out.into_iter().flat_map(|v| (0..n).map(move |x| [v.clone(), vec![x]].concat())).collect();
    }
    out
}

/// Additive closure of `gens` under a caller-supplied addition.
pub fn additive_closure(zero: Vec<u64>, gens: &[Vec<u64>], add: impl Fn(&[u64], &[u64]) -> Vec<u64>) -> Set {
    let mut set = Set::new();
    set.insert(zero.clone());
    let mut frontier = vec![zero];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = add(&x, g);
            if set.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    set
}

pub fn vec_add(n: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter().zip(b).map(|(x, y)| (x + y) % n).collect()
}

/// Row span of `rows` over `Z/n`.
pub fn row_span(n: u64, dim: usize, rows: &[Vec<u64>]) -> Set {
    let rows: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|x| x % n).collect()).collect();
    additive_closure(vec![0; dim], &rows, |a, b| vec_add(n, a, b))
}

/// `{x : x·m = 0}` by enumeration.
pub fn left_kernel(m: &ZnMatrix) -> Set {
    all_vectors(m.modulus(), m.rows()).into_iter().filter(|x| m.left_mul(x).unwrap().iter().all(|&v| v == 0)).collect()
}

/// All solutions of `x·m = b`.
pub fn solutions(m: &ZnMatrix, b: &[u64]) -> Set {
    all_vectors(m.modulus(), m.rows()).into_iter().filter(|x| m.left_mul(x).unwrap() == b).collect()
}

pub fn elements(r: &FiniteRing) -> Vec<Vec<u64>> {
    r.elements().collect()
}

/// The ideal generated by `gens`, as an element set.
pub fn ideal(r: &FiniteRing, gens: &[Vec<u64>]) -> Set {
    let els = elements(r);
    let products: Vec<Vec<u64>> = gens.iter().flat_map(|g| els.iter().map(|x| r.mul(x, g)).collect::<Vec<_>>()).collect();
    additive_closure(r.zero(), &products, |a, b| r.add(a, b))
}

/// The `R`-submodule of `R^p` generated by `gens`.
pub fn submodule(r: &FiniteRing, p: usize, gens: &[Vec<u64>]) -> Set {
    let d = r.dim();
    let els = elements(r);
    let mut products = Vec::new();
    for g in gens {
        for x in &els {
            let mut v = Vec::with_capacity(p * d);
            for k in 0..p {
                v.extend(r.mul(x, &g[k * d..(k + 1) * d]));
            }
            products.push(v);
        }
    }
    let add = |a: &[u64], b: &[u64]| {
        let mut v = Vec::with_capacity(p * d);
        for k in 0..p {
            v.extend(r.add(&a[k * d..(k + 1) * d], &b[k * d..(k + 1) * d]));
        }
        v
    };
    additive_closure(vec![0; p * d], &products, add)
}

/// Every tuple of `R^k`, in ring coordinates.
pub fn tuples(r: &FiniteRing, k: usize) -> Vec<Vec<u64>> {
    let els = elements(r);
    let mut out = vec![vec![]];
    for _ in 0..k {
        out = out.into_iter().flat_map(|v: Vec<u64>| els.iter().map(move |e| [v.clone(), e.clone()].concat())).collect();
    }
    out
}

/// `{α ∈ R^k : Σ α_i g_i = 0}` by enumerating all tuples.
pub fn syzygy(r: &FiniteRing, p: usize, gens: &[Vec<u64>]) -> Set {
    let zero = vec![0u64; p * r.dim()];
    tuples(r, gens.len()).into_iter().filter(|a| combine(r, a, gens, p) == zero).collect()
}

pub fn nilradical(r: &FiniteRing) -> Set {
    let k = elements(r).len() as u64;
    elements(r).into_iter().filter(|x| r.is_zero(&r.pow(x, k))).collect()
}

pub fn units(r: &FiniteRing) -> Set {
    let els = elements(r);
    let one = r.one();
    els.iter().filter(|x| els.iter().any(|y| r.mul(x, y) == one)).cloned().collect()
}

pub fn regular(r: &FiniteRing) -> Set {
    let els = elements(r);
    els.iter().filter(|x| els.iter().all(|y| r.is_zero(y) || !r.is_zero(&r.mul(x, y)))).cloned().collect()
}

pub fn idempotents(r: &FiniteRing) -> Set {
    elements(r).into_iter().filter(|e| r.mul(e, e) == *e).collect()
}

/// All ideals as element sets: sums of principal ideals, closed under sum.
pub fn all_ideals(r: &FiniteRing) -> BTreeSet<Set> {
    let principal: BTreeSet<Set> = elements(r).iter().map(|x| ideal(r, &[x.clone()])).collect();
    let mut all: BTreeSet<Set> = principal.clone();
    loop {
        let mut grown = all.clone();
        for a in &all {
            for p in &principal {
                let gens: Vec<Vec<u64>> = a.iter().chain(p.iter()).cloned().collect();
                grown.insert(additive_closure(r.zero(), &gens, |x, y| r.add(x, y)));
            }
        }
        if grown.len() == all.len() {
            return all;
        }
        all = grown;
    }
}

/// Maximal ideals: proper ideals contained in no other proper ideal.
pub fn maximal_ideals(r: &FiniteRing) -> Vec<Set> {
    let total = elements(r).len();
    let proper: Vec<Set> = all_ideals(r).into_iter().filter(|i| i.len() < total).collect();
    proper.iter().filter(|i| !proper.iter().any(|j| j.len() > i.len() && i.is_subset(j))).cloned().collect()
}
