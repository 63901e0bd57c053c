//! Modules given by an abelian group and one action matrix per ring basis
//! element, and the trivial extension `R ⋉ E` built from them.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::group::{AdditiveGroup, SubgroupPresentation};
use crate::linalg::axpy;
use crate::ring::{lift_relations, FiniteRing};
use crate::submodule::Ideal;
use crate::zn;

/// An `R`-module `E = (Z/N_E)^k / Rel_E` where `actions[i][j] = b_i · e_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleSpec {
    group: AdditiveGroup,
    actions: Vec<Vec<Vec<u64>>>,
    labels: Vec<String>,
}

impl ModuleSpec {
    /// Verify that the action is well defined, unital and associative.
    pub fn new(r: &FiniteRing, group: AdditiveGroup, actions: Vec<Vec<Vec<u64>>>) -> Result<Self> {
        let d = r.dim();
        let k = group.dim();
        if actions.len() != d {
            return Err(Error::DimensionMismatch { expected: d, got: actions.len() });
        }
        let mut acts = Vec::with_capacity(d);
        for a in &actions {
            if a.len() != k {
                return Err(Error::DimensionMismatch { expected: k, got: a.len() });
            }
            let mut rows = Vec::with_capacity(k);
            for row in a {
                if row.len() != k {
                    return Err(Error::DimensionMismatch { expected: k, got: row.len() });
                }
                rows.push(group.reduced(row));
            }
            acts.push(rows);
        }
        let labels = (0..k).map(|j| format!("e{j}")).collect();
        let m = Self { group, actions: acts, labels };
        m.verify(r)?;
        Ok(m)
    }

    fn verify(&self, r: &FiniteRing) -> Result<()> {
        let g = &self.group;
        let k = g.dim();
        let basis: Vec<Vec<u64>> = (0..k).map(|j| self.basis(j)).collect();
        for (i, _) in self.actions.iter().enumerate() {
            for (ri, rel) in g.relations().rows().iter().enumerate() {
                if !g.is_zero(&self.act_basis(i, rel)) {
                    return Err(Error::InconsistentModule(format!("b{i} does not preserve module relation {ri}")));
                }
            }
            for e in &basis {
                if !g.is_zero(&g.scale(r.modulus(), &self.act_basis(i, e))) {
                    return Err(Error::InconsistentModule(format!("N_R·b{i} acts nontrivially")));
                }
            }
        }
        for (ri, rel) in r.group().relations().rows().iter().enumerate() {
            for e in &basis {
                if !g.is_zero(&self.act(rel, e)) {
                    return Err(Error::InconsistentModule(format!("ring relation {ri} acts nontrivially")));
                }
            }
        }
        for (j, e) in basis.iter().enumerate() {
            if self.act(&r.one(), e) != *e {
                return Err(Error::InconsistentModule(format!("1·e{j} != e{j}")));
            }
        }
        for i in 0..r.dim() {
            for l in 0..r.dim() {
                for (j, e) in basis.iter().enumerate() {
                    let lhs = self.act(r.entry(i, l), e);
                    let rhs = self.act_basis(i, &self.act_basis(l, e));
                    if lhs != rhs {
                        return Err(Error::InconsistentModule(format!("(b{i}·b{l})·e{j} != b{i}·(b{l}·e{j})")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &AdditiveGroup {
        &self.group
    }
    pub fn dim(&self) -> usize {
        self.group.dim()
    }
    pub fn actions(&self) -> &[Vec<Vec<u64>>] {
        &self.actions
    }
    pub fn labels(&self) -> &[String] {
        &self.labels
    }
    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        if labels.len() == self.dim() {
            self.labels = labels;
        }
        self
    }

    fn basis(&self, j: usize) -> Vec<u64> {
        let mut v = self.group.zero();
        v[j] = 1;
        self.group.reduced(&v)
    }

    /// `b_i · x`.
    pub fn act_basis(&self, i: usize, x: &[u64]) -> Vec<u64> {
        let n = self.group.modulus();
        let mut acc = self.group.zero();
        for (row, &c) in self.actions[i].iter().zip(x) {
            axpy(&mut acc, c % n, row, 0, n);
        }
        self.group.reduced(&acc)
    }

    /// `a · x` for a ring element `a`.
    pub fn act(&self, a: &[u64], x: &[u64]) -> Vec<u64> {
        let mut acc = self.group.zero();
        for (i, &c) in a.iter().enumerate() {
            if c != 0 {
                acc = self.group.add(&acc, &self.group.scale(c, &self.act_basis(i, x)));
            }
        }
        acc
    }

    /// `R` as a module over itself.
    pub fn regular(r: &FiniteRing) -> Self {
        let d = r.dim();
        let actions = (0..d).map(|i| (0..d).map(|j| r.entry(i, j).to_vec()).collect()).collect();
        Self { group: r.group().clone(), actions, labels: r.labels().to_vec() }
    }

    /// `R / I` as an `R`-module, on the compressed presentation of the quotient.
    pub fn quotient_of_ring(r: &FiniteRing, ideal: &Ideal) -> Result<Self> {
        let (q, proj) = r.quotient(ideal)?;
        let d = r.dim();
        let k = q.dim();
        let mut actions = Vec::with_capacity(d);
        for i in 0..d {
            let bi = proj.apply(&r.basis(i));
            actions.push((0..k).map(|j| q.mul(&bi, &q.basis(j))).collect());
        }
        let labels = q.labels().iter().map(|l| format!("[{l}]")).collect();
        Ok(Self::new(r, q.group().clone(), actions)?.with_labels(labels))
    }

    /// An ideal of `R` as an `R`-module.
    pub fn from_ideal(r: &FiniteRing, ideal: &Ideal) -> Result<Self> {
        let gens = ideal.generators(r);
        let pres = SubgroupPresentation::new(r.group(), &gens)?;
        let k = pres.group.dim();
        let mut actions = Vec::with_capacity(r.dim());
        for i in 0..r.dim() {
            let bi = r.basis(i);
            let mut rows = Vec::with_capacity(k);
            for g in &pres.generators {
                let c = pres.coordinates(&r.mul(&bi, g))?.ok_or_else(|| Error::NotAnIdeal("not closed".into()))?;
                rows.push(c);
            }
            actions.push(rows);
        }
        let labels = pres.generators.iter().map(|g| r.format_element(g)).collect();
        Ok(Self::new(r, pres.group.clone(), actions)?.with_labels(labels))
    }

    /// `E ⊕ F`.
    pub fn direct_sum(r: &FiniteRing, a: &Self, b: &Self) -> Result<Self> {
        let n = zn::lcm(a.group.modulus(), b.group.modulus());
        let (ka, kb) = (a.dim(), b.dim());
        let k = ka + kb;
        let mut rels = Vec::new();
        lift_relations(&mut rels, &a.group, 0, k, n);
        lift_relations(&mut rels, &b.group, ka, k, n);
        let group = AdditiveGroup::new(n, k, &rels)?;
        let mut actions = Vec::with_capacity(r.dim());
        for i in 0..r.dim() {
            let mut rows = Vec::with_capacity(k);
            for row in &a.actions[i] {
                let mut v = row.clone();
                v.resize(k, 0);
                rows.push(v);
            }
            for row in &b.actions[i] {
                let mut v = vec![0u64; ka];
                v.extend_from_slice(row);
                rows.push(v);
            }
            actions.push(rows);
        }
        let labels = a.labels.iter().chain(&b.labels).cloned().collect();
        Ok(Self::new(r, group, actions)?.with_labels(labels))
    }

    pub fn power(r: &FiniteRing, a: &Self, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::Precondition("module power needs k >= 1".into()));
        }
        let mut acc = a.clone();
        for _ in 1..k {
            acc = Self::direct_sum(r, &acc, a)?;
        }
        let labels = (0..k).flat_map(|c| a.labels.iter().map(move |l| format!("{l}.{c}"))).collect();
        Ok(acc.with_labels(labels))
    }
}

/// The trivial extension `R ⋉ E` with `(a, e)(b, f) = (ab, af + be)`.
/// Coordinates are those of `R` followed by those of `E`.
pub fn trivial_extension(r: &FiniteRing, e: &ModuleSpec) -> Result<FiniteRing> {
    let n = zn::lcm(r.modulus(), e.group.modulus());
    let (dr, de) = (r.dim(), e.dim());
    let d = dr + de;
    let mut rels = Vec::new();
    lift_relations(&mut rels, r.group(), 0, d, n);
    lift_relations(&mut rels, &e.group, dr, d, n);
    let group = AdditiveGroup::new(n, d, &rels)?;
    let mut table = vec![vec![0u64; d]; d * d];
    for i in 0..dr {
        for j in 0..dr {
            table[i * d + j][..dr].copy_from_slice(r.entry(i, j));
        }
        for j in 0..de {
            let v = &e.actions[i][j];
            table[i * d + dr + j][dr..].copy_from_slice(v);
            table[(dr + j) * d + i][dr..].copy_from_slice(v);
        }
    }
    let mut one = r.one();
    one.resize(d, 0);
    let labels = r
        .labels()
        .iter()
        .map(|l| format!("({l},0)"))
        .chain(e.labels.iter().map(|l| format!("(0,{l})")))
        .collect();
    FiniteRing::from_table(group, table, one, labels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::{self, DEFAULT_BUDGET};
    use crate::submodule::Submodule;

    #[test]
    fn z4_times_f2_extension() {
        let z4 = FiniteRing::zmod(4).unwrap();
        let m = Submodule::ideal(&z4, &[vec![2]]).unwrap();
        let e = ModuleSpec::quotient_of_ring(&z4, &m).unwrap();
        let a = trivial_extension(&z4, &e).unwrap();
        assert_eq!(a.order().to_u128(), Some(8));
        let loc = spectrum::LocalRing::new(&a).unwrap();
        assert_eq!(loc.maximal().order().to_u128(), Some(4));
        assert_eq!(spectrum::nilradical(&a).order().to_u128(), Some(4));
        // 0 ⋉ E squares to zero
        let x = a.basis(1);
        assert!(a.is_zero(&a.mul(&x, &x)));
        assert_eq!(spectrum::idempotents(&a, DEFAULT_BUDGET).unwrap().len(), 2);
    }

    #[test]
    fn inconsistent_action_is_rejected() {
        let z2 = FiniteRing::zmod(2).unwrap();
        // Z/4 is not a Z/2-module
        let g = AdditiveGroup::free(4, 1).unwrap();
        assert!(ModuleSpec::new(&z2, g, vec![vec![vec![1]]]).is_err());
        // unit must act as identity
        let g = AdditiveGroup::free(2, 1).unwrap();
        assert!(ModuleSpec::new(&z2, g, vec![vec![vec![0]]]).is_err());
    }
}
