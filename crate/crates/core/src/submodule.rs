//! Submodules of free modules `R^p` and the linear algebra built on them.
//!
//! A submodule is stored through its preimage in `(Z/N)^{p·d}`: the Howell
//! basis of all coordinate vectors whose class lies in the submodule. The
//! preimage always contains `Rel^p`, so equality of submodules is equality of
//! Howell bases.

use alloc::vec;
use alloc::vec::Vec;
use core::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::linalg::{self, HowellBasis, HowellBuilder, ZnMatrix};
use crate::ring::FiniteRing;
use crate::zn::Cardinality;

#[derive(Clone, Debug)]
pub struct Submodule {
    rank: usize,
    span: HowellBasis,
    base: Cardinality,
    generators: Vec<Vec<u64>>,
}

/// An ideal is a submodule of `R^1`.
pub type Ideal = Submodule;

impl PartialEq for Submodule {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.span == other.span
    }
}
impl Eq for Submodule {}
impl Hash for Submodule {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.rank.hash(state);
        self.span.hash(state);
    }
}

/// Rows of `Rel^p` inside `(Z/N)^{p·d}`.
pub(crate) fn relation_rows(r: &FiniteRing, p: usize) -> Vec<Vec<u64>> {
    let d = r.dim();
    let mut out = Vec::new();
    for t in 0..p {
        for row in r.group().relations().rows() {
            let mut v = vec![0u64; p * d];
            v[t * d..(t + 1) * d].copy_from_slice(row);
            out.push(v);
        }
    }
    out
}

/// `a · v` for `v ∈ R^p`, blockwise.
pub fn act(r: &FiniteRing, a: &[u64], v: &[u64]) -> Vec<u64> {
    let d = r.dim();
    let mut out = Vec::with_capacity(v.len());
    for block in v.chunks(d) {
        out.extend(r.mul(a, block));
    }
    out
}

/// Canonical representative of `v ∈ R^p`.
pub fn reduce_vector(r: &FiniteRing, v: &[u64]) -> Vec<u64> {
    let d = r.dim();
    let mut out = Vec::with_capacity(v.len());
    for block in v.chunks(d) {
        out.extend(r.group().reduced(block));
    }
    out
}

impl Submodule {
    /// The R-span of `gens` inside `R^p`. The Z/N-span of `{b_i · g}` is
    /// already closed under the ring action, so one pass suffices.
    pub fn span(r: &FiniteRing, p: usize, gens: &[Vec<u64>]) -> Result<Self> {
        let d = r.dim();
        let mut b = HowellBuilder::new(r.modulus(), p * d);
        for row in relation_rows(r, p) {
            b.insert(row);
        }
        let basis: Vec<Vec<u64>> = (0..d).map(|i| r.basis(i)).collect();
        let mut kept = Vec::with_capacity(gens.len());
        for g in gens {
            if g.len() != p * d {
                return Err(Error::DimensionMismatch { expected: p * d, got: g.len() });
            }
            let g = reduce_vector(r, g);
            for bi in &basis {
                b.insert(act(r, bi, &g));
            }
            kept.push(g);
        }
        Ok(Self { rank: p, span: b.finish(), base: r.order().pow(p as u64), generators: kept })
    }

    pub fn ideal(r: &FiniteRing, gens: &[Vec<u64>]) -> Result<Self> {
        Self::span(r, 1, gens)
    }

    pub fn zero(r: &FiniteRing, p: usize) -> Self {
        Self::span(r, p, &[]).expect("no generators")
    }

    pub fn full(r: &FiniteRing, p: usize) -> Self {
        let d = r.dim();
        let gens: Vec<Vec<u64>> = (0..p)
            .map(|t| {
                let mut v = vec![0u64; p * d];
                v[t * d..(t + 1) * d].copy_from_slice(&r.one());
                v
            })
            .collect();
        Self::span(r, p, &gens).expect("well-typed generators")
    }

    /// Wrap a Howell basis that is known to be an R-submodule containing `Rel^p`.
    pub(crate) fn from_span(r: &FiniteRing, p: usize, span: HowellBasis) -> Self {
        debug_assert!(relation_rows(r, p).iter().all(|v| span.contains(v)));
        Self { rank: p, span, base: r.order().pow(p as u64), generators: Vec::new() }
    }

    pub fn check_ring(&self, r: &FiniteRing) -> Result<()> {
        if self.span.modulus() != r.modulus() {
            return Err(Error::ModulusMismatch(self.span.modulus(), r.modulus()));
        }
        if self.span.dim() != self.rank * r.dim() {
            return Err(Error::DimensionMismatch { expected: self.rank * r.dim(), got: self.span.dim() });
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }
    pub fn howell(&self) -> &HowellBasis {
        &self.span
    }
    /// The generators this submodule was built from (reduced), if any.
    pub fn input_generators(&self) -> &[Vec<u64>] {
        &self.generators
    }

    /// Number of elements of the submodule.
    pub fn order(&self) -> Cardinality {
        let total = Cardinality::from_u64(self.span.modulus()).pow(self.span.dim() as u64);
        let rel = total.checked_div(&self.base).expect("ring order divides N^d");
        self.span.span_size().checked_div(&rel).expect("span contains the relations")
    }

    pub fn is_zero(&self) -> bool {
        self.order().is_one()
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        v.len() == self.span.dim() && self.span.contains(v)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.rank == other.rank && self.span.is_subspan_of(&other.span)
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        Ok(Self { rank: self.rank, span: self.span.sum(&other.span)?, base: self.base.clone(), generators: Vec::new() })
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        Ok(Self { rank: self.rank, span: self.span.intersection(&other.span)?, base: self.base.clone(), generators: Vec::new() })
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::DimensionMismatch { expected: self.rank, got: other.rank });
        }
        if self.span.modulus() != other.span.modulus() {
            return Err(Error::ModulusMismatch(self.span.modulus(), other.span.modulus()));
        }
        Ok(())
    }

    /// A generating set read off the Howell basis (nonzero classes only).
    pub fn generators(&self, r: &FiniteRing) -> Vec<Vec<u64>> {
        let mut out: Vec<Vec<u64>> = Vec::new();
        for row in self.span.rows() {
            let v = reduce_vector(r, row);
            if v.iter().any(|&x| x != 0) && !out.contains(&v) {
                out.push(v);
            }
        }
        out
    }

    /// Every element, as canonical coordinate vectors, each exactly once.
    pub fn elements<'a>(&'a self, r: &'a FiniteRing) -> impl Iterator<Item = Vec<u64>> + 'a {
        self.span.elements().filter(move |v| reduce_vector(r, v) == *v)
    }

    /// `I · M` for an ideal `I`.
    pub fn ideal_times(&self, r: &FiniteRing, ideal: &Ideal) -> Result<Self> {
        let mut gens = Vec::new();
        for a in ideal.generators(r) {
            for g in self.generators(r) {
                gens.push(act(r, &a, &g));
            }
        }
        Self::span(r, self.rank, &gens)
    }

    /// `Ann(M) = {a ∈ R : a·M = 0}`.
    pub fn annihilator(&self, r: &FiniteRing) -> Ideal {
        let gens = self.generators(r);
        if gens.is_empty() {
            return Submodule::full(r, 1);
        }
        let d = r.dim();
        let w = self.rank * d;
        // a ↦ (a·g_1, …, a·g_k), then solve against the relations blockwise
        let mut rows = Vec::new();
        for i in 0..d {
            let bi = r.basis(i);
            let mut row = Vec::with_capacity(w * gens.len());
            for g in &gens {
                row.extend(act(r, &bi, g));
            }
            rows.push(row);
        }
        let rel = relation_rows(r, self.rank * gens.len());
        let ker = stacked_kernel(r.modulus(), w * gens.len(), &rows, &rel);
        Submodule::from_span(r, 1, ker)
    }

    /// Coordinates of the submodule inside the blocks `offset..offset+rank` of
    /// `R^total`.
    pub fn embed(&self, r: &FiniteRing, total: usize, offset: usize) -> Result<Self> {
        if offset + self.rank > total {
            return Err(Error::DimensionMismatch { expected: total, got: offset + self.rank });
        }
        let d = r.dim();
        let gens: Vec<Vec<u64>> = self
            .generators(r)
            .into_iter()
            .map(|g| {
                let mut v = vec![0u64; total * d];
                v[offset * d..offset * d + g.len()].copy_from_slice(&g);
                v
            })
            .collect();
        Submodule::span(r, total, &gens)
    }

    /// External direct sum `self ⊕ other ⊆ R^{p+q}`.
    pub fn direct_sum(&self, r: &FiniteRing, other: &Self) -> Result<Self> {
        let total = self.rank + other.rank;
        self.embed(r, total, 0)?.sum(&other.embed(r, total, self.rank)?)
    }
}

/// `{x ∈ (Z/N)^k : x·E ∈ span(extra)}` where `E` has the given `k` rows.
pub(crate) fn stacked_kernel(n: u64, width: usize, rows: &[Vec<u64>], extra: &[Vec<u64>]) -> HowellBasis {
    let k = rows.len();
    let mut all = rows.to_vec();
    all.extend(extra.iter().cloned());
    let m = ZnMatrix::from_rows(n, width, &all).expect("rows of the declared width");
    let ker = linalg::kernel(&m);
    let cols: Vec<usize> = (0..k).collect();
    ker.project(&cols)
}

/// `{(α_1..α_k) ∈ R^k : Σ α_j g_j ∈ den}`, the relations of `gens` modulo `den`.
/// With `den` zero this is the ordinary syzygy module.
pub fn syzygy_mod(r: &FiniteRing, gens: &[Vec<u64>], den: &Submodule) -> Result<Submodule> {
    den.check_ring(r)?;
    let d = r.dim();
    let p = den.rank();
    let k = gens.len();
    if k == 0 {
        return Ok(Submodule::zero(r, 0));
    }
    let basis: Vec<Vec<u64>> = (0..d).map(|i| r.basis(i)).collect();
    let mut rows = Vec::with_capacity(k * d);
    for g in gens {
        if g.len() != p * d {
            return Err(Error::DimensionMismatch { expected: p * d, got: g.len() });
        }
        for bi in &basis {
            rows.push(act(r, bi, g));
        }
    }
    let ker = stacked_kernel(r.modulus(), p * d, &rows, den.howell().rows());
    Ok(Submodule::from_span(r, k, ker))
}

pub fn syzygy(r: &FiniteRing, p: usize, gens: &[Vec<u64>]) -> Result<Submodule> {
    syzygy_mod(r, gens, &Submodule::zero(r, p))
}

/// `Σ_j α_j g_j` for `α ∈ R^k`.
pub fn combine(r: &FiniteRing, alpha: &[u64], gens: &[Vec<u64>], p: usize) -> Vec<u64> {
    let d = r.dim();
    let n = r.modulus();
    let mut acc = vec![0u64; p * d];
    for (a, g) in alpha.chunks(d).zip(gens) {
        let t = act(r, a, g);
        for (x, y) in acc.iter_mut().zip(t) {
            *x = (*x + y) % n;
        }
    }
    reduce_vector(r, &acc)
}

/// The quotient module `num / den` of two submodules of the same `R^p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuleQuotient {
    pub num: Submodule,
    pub den: Submodule,
}

impl ModuleQuotient {
    pub fn new(num: Submodule, den: Submodule) -> Result<Self> {
        if !den.is_subset(&num) {
            return Err(Error::NotMember("denominator is not contained in numerator".into()));
        }
        Ok(Self { num, den })
    }

    /// `R^p / den`.
    pub fn cokernel(r: &FiniteRing, den: Submodule) -> Self {
        let num = Submodule::full(r, den.rank());
        Self { num, den }
    }

    /// A submodule `S ⊆ R^p` viewed as a module in its own right.
    pub fn of_submodule(r: &FiniteRing, s: Submodule) -> Self {
        let den = Submodule::zero(r, s.rank());
        Self { num: s, den }
    }

    pub fn order(&self) -> Cardinality {
        self.num.order().checked_div(&self.den.order()).expect("den ⊆ num")
    }

    pub fn is_zero(&self) -> bool {
        self.num == self.den
    }

    /// Isomorphic-as-presented comparison: same numerator and denominator.
    pub fn same_presentation(&self, other: &Self) -> bool {
        self == other
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_syzygy(r: &FiniteRing, p: usize, gens: &[Vec<u64>]) -> usize {
        let els: Vec<Vec<u64>> = r.elements().collect();
        let k = gens.len();
        let mut count = 0;
        let mut idx = vec![0usize; k];
        loop {
            let alpha: Vec<u64> = idx.iter().flat_map(|&i| els[i].clone()).collect();
            if combine(r, &alpha, gens, p).iter().all(|&x| x == 0) {
                count += 1;
            }
            let mut t = 0;
            loop {
                if t == k {
                    return count;
                }
                idx[t] += 1;
                if idx[t] < els.len() {
                    break;
                }
                idx[t] = 0;
                t += 1;
            }
        }
    }

    #[test]
    fn span_of_2_in_z4() {
        let r = FiniteRing::zmod(4).unwrap();
        let s = Submodule::span(&r, 1, &[vec![2]]).unwrap();
        assert_eq!(s.order().to_u128(), Some(2));
        assert!(Submodule::zero(&r, 3).is_zero());
        assert_eq!(Submodule::full(&r, 2).order().to_u128(), Some(16));
    }

    #[test]
    fn syzygy_of_2_in_z4() {
        let r = FiniteRing::zmod(4).unwrap();
        let s = syzygy(&r, 1, &[vec![2]]).unwrap();
        assert_eq!(s, Submodule::ideal(&r, &[vec![2]]).unwrap());
        let free = syzygy(&r, 2, &[vec![1, 0], vec![0, 1]]).unwrap();
        assert!(free.is_zero());
    }

    #[test]
    fn syzygy_matches_enumeration_with_relations() {
        // Z/4 ⋉ Z/2 presented with a relation lattice
        let g = crate::group::AdditiveGroup::new(4, 2, &[vec![0, 2]]).unwrap();
        let table = vec![vec![1, 0], vec![0, 1], vec![0, 1], vec![0, 0]];
        let r = FiniteRing::from_table(g, table, vec![1, 0], vec![]).unwrap();
        let gens = vec![vec![2, 1], vec![0, 1]];
        let s = syzygy(&r, 1, &gens).unwrap();
        assert_eq!(s.order().to_u128(), Some(brute_syzygy(&r, 1, &gens) as u128));
        assert_eq!(s.elements(&r).count(), brute_syzygy(&r, 1, &gens));
    }

    #[test]
    fn annihilator_and_products() {
        let r = FiniteRing::zmod(8).unwrap();
        let i = Submodule::ideal(&r, &[vec![2]]).unwrap();
        assert_eq!(i.annihilator(&r), Submodule::ideal(&r, &[vec![4]]).unwrap());
        assert_eq!(i.ideal_times(&r, &i).unwrap(), Submodule::ideal(&r, &[vec![4]]).unwrap());
        let q = ModuleQuotient::new(Submodule::full(&r, 1), i).unwrap();
        assert_eq!(q.order().to_u128(), Some(2));
    }
}
