//! Finite abelian groups presented as `(Z/N)^d / Rel`.
//!
//! Every ring and module in the crate sits on top of one of these. Elements are
//! stored as canonical representatives: vectors reduced modulo the Howell basis
//! of the relation lattice.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{self, check_modulus, HowellBasis, HowellBuilder};
use crate::zn::{self, Cardinality};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AdditiveGroup {
    modulus: u64,
    dim: usize,
    relations: HowellBasis,
}

impl AdditiveGroup {
    pub fn free(modulus: u64, dim: usize) -> Result<Self> {
        check_modulus(modulus)?;
        Ok(Self { modulus, dim, relations: HowellBasis::zero(modulus, dim) })
    }

    pub fn new(modulus: u64, dim: usize, relations: &[Vec<u64>]) -> Result<Self> {
        check_modulus(modulus)?;
        let relations = HowellBasis::from_rows(modulus, dim, relations)?;
        Ok(Self { modulus, dim, relations })
    }

    pub fn from_basis(relations: HowellBasis) -> Self {
        Self { modulus: relations.modulus(), dim: relations.dim(), relations }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn relations(&self) -> &HowellBasis {
        &self.relations
    }

    pub fn order(&self) -> Cardinality {
        Cardinality::from_u64(self.modulus)
            .pow(self.dim as u64)
            .checked_div(&self.relations.span_size())
            .expect("relation lattice is a subgroup")
    }

    pub fn zero(&self) -> Vec<u64> {
        vec![0; self.dim]
    }

    /// Canonical representative (in place).
    pub fn reduce(&self, v: &mut [u64]) {
        for x in v.iter_mut() {
            *x %= self.modulus;
        }
        self.relations.reduce(v);
    }

    pub fn reduced(&self, v: &[u64]) -> Vec<u64> {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w
    }

    pub fn is_zero(&self, v: &[u64]) -> bool {
        self.relations.contains(v)
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let n = self.modulus;
        let mut v: Vec<u64> = a.iter().zip(b).map(|(&x, &y)| zn::add_mod(x % n, y % n, n)).collect();
        self.relations.reduce(&mut v);
        v
    }

    pub fn neg(&self, a: &[u64]) -> Vec<u64> {
        let n = self.modulus;
        let mut v: Vec<u64> = a.iter().map(|&x| zn::neg_mod(x % n, n)).collect();
        self.relations.reduce(&mut v);
        v
    }

    pub fn sub(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, k: u64, a: &[u64]) -> Vec<u64> {
        let n = self.modulus;
        let k = k % n;
        let mut v: Vec<u64> = a.iter().map(|&x| zn::mul_mod(k, x % n, n)).collect();
        self.relations.reduce(&mut v);
        v
    }

    /// Smallest `e | N` with `e·x = 0` for all `x`.
    pub fn exponent(&self) -> u64 {
        for e in zn::divisors(self.modulus) {
            let ok = (0..self.dim).all(|i| {
                let mut v = vec![0; self.dim];
                v[i] = e % self.modulus;
                self.relations.contains(&v)
            });
            if ok {
                return e;
            }
        }
        self.modulus
    }

    /// Additive order of a single element.
    pub fn element_order(&self, v: &[u64]) -> u64 {
        for e in zn::divisors(self.modulus) {
            if self.is_zero(&self.scale(e, v)) {
                return e;
            }
        }
        self.modulus
    }

    /// Iterate over canonical representatives: coordinates at pivot columns of
    /// the relation basis range over `[0, pivot)`, all other coordinates over `[0, N)`.
    pub fn elements(&self) -> GroupElements {
        let mut bounds = vec![self.modulus; self.dim];
        for (row, &c) in self.relations.rows().iter().zip(self.relations.pivots()) {
            bounds[c] = row[c];
        }
        GroupElements { counter: vec![0; self.dim], bounds, done: false }
    }

    /// Re-present the group with the smallest possible modulus and without
    /// coordinates that the relations force to zero.
    pub fn compress(&self) -> Compression {
        let e = self.exponent();
        let reduced_rel: Vec<Vec<u64>> =
            self.relations.rows().iter().map(|r| r.iter().map(|&x| x % e).collect()).collect();
        let rel_e = if e >= 2 {
            HowellBasis::from_rows(e, self.dim, &reduced_rel).expect("modulus checked")
        } else {
            HowellBasis::zero(2, self.dim)
        };
        let mut unit_cols = vec![false; self.dim];
        if e >= 2 {
            for (row, &c) in rel_e.rows().iter().zip(rel_e.pivots()) {
                if row[c] == 1 {
                    unit_cols[c] = true;
                }
            }
        }
        let kept: Vec<usize> = if e == 1 { Vec::new() } else { (0..self.dim).filter(|&c| !unit_cols[c]).collect() };
        // rows with a unit pivot only express the dropped coordinate in terms of the others
        let rest: Vec<Vec<u64>> = rel_e
            .rows()
            .iter()
            .zip(rel_e.pivots())
            .filter(|(_, &c)| !unit_cols[c])
            .map(|(r, _)| kept.iter().map(|&c| r[c]).collect())
            .collect();
        let new_rel = HowellBasis::from_rows(e.max(2), kept.len(), &rest).expect("modulus checked");
        let group = AdditiveGroup { modulus: e.max(2), dim: kept.len(), relations: new_rel };
        Compression { group, source_modulus: self.modulus, source_relations: rel_e, kept, exponent: e }
    }
}

pub struct GroupElements {
    counter: Vec<u64>,
    bounds: Vec<u64>,
    done: bool,
}

impl Iterator for GroupElements {
    type Item = Vec<u64>;
    fn next(&mut self) -> Option<Vec<u64>> {
        if self.done {
            return None;
        }
        let out = self.counter.clone();
        let mut i = 0;
        loop {
            if i == self.counter.len() {
                self.done = true;
                break;
            }
            self.counter[i] += 1;
            if self.counter[i] < self.bounds[i] {
                break;
            }
            self.counter[i] = 0;
            i += 1;
        }
        Some(out)
    }
}

/// Isomorphism from a group onto its compressed presentation.
#[derive(Clone, Debug)]
pub struct Compression {
    pub group: AdditiveGroup,
    source_modulus: u64,
    source_relations: HowellBasis,
    kept: Vec<usize>,
    exponent: u64,
}

impl Compression {
    pub fn kept(&self) -> &[usize] {
        &self.kept
    }

    /// Image of a source-coordinate vector in the compressed coordinates.
    pub fn project(&self, v: &[u64]) -> Vec<u64> {
        if self.exponent == 1 {
            return vec![0; self.kept.len()];
        }
        let e = self.exponent;
        let mut w: Vec<u64> = v.iter().map(|&x| (x % self.source_modulus) % e).collect();
        self.source_relations.reduce(&mut w);
        let mut out: Vec<u64> = self.kept.iter().map(|&c| w[c]).collect();
        self.group.reduce(&mut out);
        out
    }

    /// Source-coordinate lift of the `i`-th compressed basis vector.
    pub fn lift_basis(&self, i: usize, source_dim: usize) -> Vec<u64> {
        let mut v = vec![0; source_dim];
        v[self.kept[i]] = 1;
        v
    }
}

/// A subgroup of an ambient group, re-presented as a group in its own right.
#[derive(Clone, Debug)]
pub struct SubgroupPresentation {
    pub group: AdditiveGroup,
    /// Ambient-coordinate images of the basis vectors of `group`.
    pub generators: Vec<Vec<u64>>,
    ambient: AdditiveGroup,
    span_rows: usize,
    stacked: linalg::ZnMatrix,
    compression: Compression,
}

impl SubgroupPresentation {
    pub fn new(ambient: &AdditiveGroup, gens: &[Vec<u64>]) -> Result<Self> {
        let n = ambient.modulus();
        let d = ambient.dim();
        let mut b = HowellBuilder::new(n, d);
        for g in gens {
            if g.len() != d {
                return Err(Error::DimensionMismatch { expected: d, got: g.len() });
            }
            b.insert(g.iter().map(|&x| x % n).collect());
        }
        // relations are already zero in the ambient group and only add noise
        let span = b.finish();
        let rows: Vec<Vec<u64>> = span.rows().iter().map(|r| ambient.reduced(r)).filter(|r| r.iter().any(|&x| x != 0)).collect();
        let m = rows.len();
        let mut stacked_rows = rows.clone();
        stacked_rows.extend(ambient.relations().rows().iter().cloned());
        let stacked = linalg::ZnMatrix::from_rows(n, d, &stacked_rows)?;
        let ker = linalg::kernel(&stacked);
        let rel_x: Vec<Vec<u64>> = ker.rows().iter().map(|r| r[..m].to_vec()).collect();
        let raw = AdditiveGroup::new(n, m, &rel_x)?;
        let compression = raw.compress();
        let generators = compression.kept().iter().map(|&c| rows[c].clone()).collect();
        Ok(Self { group: compression.group.clone(), generators, ambient: ambient.clone(), span_rows: m, stacked, compression })
    }

    /// Coordinates of an ambient element in the subgroup presentation, or `None`
    /// if it is not in the subgroup.
    pub fn coordinates(&self, v: &[u64]) -> Result<Option<Vec<u64>>> {
        if v.len() != self.ambient.dim() {
            return Err(Error::DimensionMismatch { expected: self.ambient.dim(), got: v.len() });
        }
        if self.span_rows == 0 {
            return Ok(if self.ambient.is_zero(v) { Some(vec![0; self.group.dim()]) } else { None });
        }
        let v: Vec<u64> = v.iter().map(|&x| x % self.ambient.modulus()).collect();
        Ok(linalg::solve(&self.stacked, &v)?.map(|x| self.compression.project(&x[..self.span_rows])))
    }

    /// Ambient image of a subgroup-coordinate vector.
    pub fn embed(&self, x: &[u64]) -> Vec<u64> {
        let n = self.ambient.modulus();
        let mut out = self.ambient.zero();
        for (g, &k) in self.generators.iter().zip(x) {
            linalg::axpy(&mut out, k % n, g, 0, n);
        }
        self.ambient.reduce(&mut out);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compress_quotient_of_z4_by_2() {
        let g = AdditiveGroup::new(4, 1, &[vec![2]]).unwrap();
        assert_eq!(g.order().to_u128(), Some(2));
        let c = g.compress();
        assert_eq!(c.group.modulus(), 2);
        assert_eq!(c.group.dim(), 1);
        assert_eq!(c.project(&[3]), vec![1]);
    }

    #[test]
    fn compress_drops_forced_coordinates() {
        // (Z/4)^2 / <(2,0),(0,1)> ≅ Z/2
        let g = AdditiveGroup::new(4, 2, &[vec![2, 0], vec![0, 1]]).unwrap();
        let c = g.compress();
        assert_eq!((c.group.modulus(), c.group.dim()), (2, 1));
        assert_eq!(c.group.order().to_u128(), Some(2));
        assert_eq!(c.project(&[1, 3]), vec![1]);
    }

    #[test]
    fn compress_keeps_free_quotient() {
        // (Z/4)^2 / <(1,3)> ≅ Z/4
        let g = AdditiveGroup::new(4, 2, &[vec![1, 3]]).unwrap();
        let c = g.compress();
        assert_eq!((c.group.modulus(), c.group.dim()), (4, 1));
        assert_eq!(c.group.order().to_u128(), Some(4));
        assert_eq!(c.project(&[1, 0]), vec![1]);
    }

    #[test]
    fn elements_are_canonical_and_complete() {
        let g = AdditiveGroup::new(4, 2, &[vec![0, 2]]).unwrap();
        let els: Vec<_> = g.elements().collect();
        assert_eq!(els.len(), 8);
        for e in &els {
            assert_eq!(&g.reduced(e), e);
        }
    }

    #[test]
    fn subgroup_presentation_of_ideal_2_in_z4() {
        let z4 = AdditiveGroup::free(4, 1).unwrap();
        let s = SubgroupPresentation::new(&z4, &[vec![2]]).unwrap();
        assert_eq!(s.group.order().to_u128(), Some(2));
        assert_eq!(s.coordinates(&[2]).unwrap(), Some(vec![1]));
        assert_eq!(s.coordinates(&[1]).unwrap(), None);
        assert_eq!(s.embed(&[1]), vec![2]);
    }
}
