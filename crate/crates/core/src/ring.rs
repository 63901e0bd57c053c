//! Finite commutative rings given by structure constants over `Z/N`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::group::{AdditiveGroup, SubgroupPresentation};
use crate::linalg::{axpy, ZnMatrix};
use crate::submodule::Ideal;
use crate::zn::{self, Cardinality};

/// A finite commutative ring `R = (Z/N)^d / Rel` with multiplication given on
/// basis elements: `table[i*d + j] = b_i · b_j`.
#[derive(Clone)]
pub struct FiniteRing {
    group: AdditiveGroup,
    table: Vec<Vec<u64>>,
    one: Vec<u64>,
    labels: Vec<String>,
}

impl PartialEq for FiniteRing {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.table == other.table && self.one == other.one
    }
}
impl Eq for FiniteRing {}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteRing")
            .field("modulus", &self.group.modulus())
            .field("rank", &self.dim())
            .field("order", &self.order())
            .field("labels", &self.labels)
            .finish()
    }
}

/// One violated ring axiom, with the basis indices that witness it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomFailure {
    ZeroRing,
    UnitNotCanonical,
    /// `relation · b_j` is not zero although `relation` is.
    NotWellDefined { relation: usize, basis: usize },
    NotCommutative { i: usize, j: usize },
    UnitLaw { i: usize },
    NotAssociative { i: usize, j: usize, k: usize },
}

impl fmt::Display for AxiomFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomFailure::ZeroRing => write!(f, "unit is zero"),
            AxiomFailure::UnitNotCanonical => write!(f, "unit vector not reduced"),
            AxiomFailure::NotWellDefined { relation, basis } => {
                write!(f, "relation {relation} times b{basis} is nonzero")
            }
            AxiomFailure::NotCommutative { i, j } => write!(f, "b{i}·b{j} != b{j}·b{i}"),
            AxiomFailure::UnitLaw { i } => write!(f, "1·b{i} != b{i}"),
            AxiomFailure::NotAssociative { i, j, k } => write!(f, "(b{i}·b{j})·b{k} != b{i}·(b{j}·b{k})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RingReport {
    pub failures: Vec<AxiomFailure>,
    pub triples_checked: usize,
}

impl RingReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Check commutativity, the unit law, associativity on every basis triple and
/// compatibility of the table with the relation lattice.
pub fn verify_ring(r: &FiniteRing) -> RingReport {
    let d = r.dim();
    let mut rep = RingReport::default();
    if r.group.is_zero(&r.one) {
        rep.failures.push(AxiomFailure::ZeroRing);
    }
    if r.group.reduced(&r.one) != r.one {
        rep.failures.push(AxiomFailure::UnitNotCanonical);
    }
    for (ri, rel) in r.group.relations().rows().iter().enumerate() {
        for j in 0..d {
            let mut acc = vec![0u64; d];
            for (i, &c) in rel.iter().enumerate() {
                axpy(&mut acc, c, r.entry(i, j), 0, r.modulus());
            }
            if !r.group.is_zero(&acc) {
                rep.failures.push(AxiomFailure::NotWellDefined { relation: ri, basis: j });
            }
        }
    }
    for i in 0..d {
        for j in (i + 1)..d {
            if r.entry(i, j) != r.entry(j, i) {
                rep.failures.push(AxiomFailure::NotCommutative { i, j });
            }
        }
        if r.mul(&r.one, &r.basis(i)) != r.basis(i) {
            rep.failures.push(AxiomFailure::UnitLaw { i });
        }
    }
    for i in 0..d {
        for j in 0..d {
            let bij = r.entry(i, j).to_vec();
            for k in 0..d {
                rep.triples_checked += 1;
                let left = r.mul(&bij, &r.basis(k));
                let right = r.mul(&r.basis(i), r.entry(j, k));
                if left != right {
                    rep.failures.push(AxiomFailure::NotAssociative { i, j, k });
                }
            }
        }
    }
    rep
}

impl FiniteRing {
    /// Build a ring from structure constants and verify every axiom.
    pub fn from_table(group: AdditiveGroup, table: Vec<Vec<u64>>, one: Vec<u64>, labels: Vec<String>) -> Result<Self> {
        let r = Self::from_table_unchecked(group, table, one, labels)?;
        let rep = verify_ring(&r);
        if let Some(f) = rep.failures.first() {
            if *f == AxiomFailure::ZeroRing {
                return Err(Error::ZeroRing);
            }
            return Err(Error::RingAxiom(f.to_string()));
        }
        Ok(r)
    }

    /// Build without checking the axioms (entries are still reduced). Use
    /// [`verify_ring`] to inspect the result.
    pub fn from_table_unchecked(group: AdditiveGroup, table: Vec<Vec<u64>>, one: Vec<u64>, mut labels: Vec<String>) -> Result<Self> {
        let d = group.dim();
        if table.len() != d * d {
            return Err(Error::DimensionMismatch { expected: d * d, got: table.len() });
        }
        if one.len() != d {
            return Err(Error::DimensionMismatch { expected: d, got: one.len() });
        }
        let mut t = Vec::with_capacity(d * d);
        for e in &table {
            if e.len() != d {
                return Err(Error::DimensionMismatch { expected: d, got: e.len() });
            }
            t.push(group.reduced(e));
        }
        if labels.len() != d {
            labels = (0..d).map(|i| format!("b{i}")).collect();
        }
        Ok(Self { table: t, one: group.reduced(&one), group, labels })
    }

    pub fn group(&self) -> &AdditiveGroup {
        &self.group
    }
    pub fn modulus(&self) -> u64 {
        self.group.modulus()
    }
    pub fn dim(&self) -> usize {
        self.group.dim()
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
    pub fn order(&self) -> Cardinality {
        self.group.order()
    }
    /// `b_i · b_j`.
    pub fn entry(&self, i: usize, j: usize) -> &[u64] {
        &self.table[i * self.dim() + j]
    }
    pub fn table(&self) -> &[Vec<u64>] {
        &self.table
    }
    pub fn one(&self) -> Vec<u64> {
        self.one.clone()
    }
    pub fn zero(&self) -> Vec<u64> {
        self.group.zero()
    }
    pub fn basis(&self, i: usize) -> Vec<u64> {
        let mut v = self.zero();
        v[i] = 1;
        self.group.reduce(&mut v);
        v
    }

    /// Additive order of the unit.
    pub fn characteristic(&self) -> u64 {
        self.group.element_order(&self.one)
    }

    pub fn element(&self, coords: &[u64]) -> Result<Vec<u64>> {
        if coords.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: coords.len() });
        }
        Ok(self.group.reduced(coords))
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        self.group.add(a, b)
    }
    pub fn sub(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        self.group.sub(a, b)
    }
    pub fn neg(&self, a: &[u64]) -> Vec<u64> {
        self.group.neg(a)
    }
    pub fn scale(&self, k: u64, a: &[u64]) -> Vec<u64> {
        self.group.scale(k, a)
    }
    pub fn is_zero(&self, a: &[u64]) -> bool {
        self.group.is_zero(a)
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let d = self.dim();
        let n = self.modulus();
        let mut acc = vec![0u64; d];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                axpy(&mut acc, zn::mul_mod(x % n, y % n, n), &self.table[i * d + j], 0, n);
            }
        }
        self.group.reduce(&mut acc);
        acc
    }

    pub fn pow(&self, a: &[u64], mut k: u64) -> Vec<u64> {
        let mut base = self.group.reduced(a);
        let mut acc = self.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            k >>= 1;
        }
        acc
    }

    /// Matrix of multiplication by `a`: row `j` is `a · b_j`.
    pub fn mult_matrix(&self, a: &[u64]) -> ZnMatrix {
        let rows: Vec<Vec<u64>> = (0..self.dim()).map(|j| self.mul(a, &self.basis(j))).collect();
        ZnMatrix::from_rows(self.modulus(), self.dim(), &rows).expect("rows have ring rank")
    }

    /// All elements as canonical coordinate vectors.
    pub fn elements(&self) -> crate::group::GroupElements {
        self.group.elements()
    }

    /// Fail with `BudgetExceeded` if the ring has more than `cap` elements.
    pub fn check_budget(&self, cap: u128) -> Result<()> {
        let ord = self.order();
        match ord.to_u128() {
            Some(v) if v <= cap => Ok(()),
            _ => Err(Error::BudgetExceeded { order: ord.to_string(), cap }),
        }
    }

    /// Render an element using the basis labels, e.g. `2*1 + x`.
    pub fn format_element(&self, a: &[u64]) -> String {
        let mut parts = Vec::new();
        for (c, l) in a.iter().zip(&self.labels) {
            match *c {
                0 => {}
                1 => parts.push(l.clone()),
                c => parts.push(format!("{c}*{l}")),
            }
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }

    // ---- constructors ----

    pub fn zmod(n: u64) -> Result<Self> {
        let group = AdditiveGroup::free(n, 1)?;
        Self::from_table(group, vec![vec![1]], vec![1], vec!["1".to_string()])
    }

    /// `(Z/N)[X]/(X^t)`.
    pub fn truncated_poly(n: u64, t: usize) -> Result<Self> {
        if t == 0 {
            return Err(Error::ZeroRing);
        }
        let group = AdditiveGroup::free(n, t)?;
        let mut table = Vec::with_capacity(t * t);
        for i in 0..t {
            for j in 0..t {
                let mut v = vec![0; t];
                if i + j < t {
                    v[i + j] = 1;
                }
                table.push(v);
            }
        }
        let mut one = vec![0; t];
        one[0] = 1;
        let labels = (0..t)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            })
            .collect();
        Self::from_table(group, table, one, labels)
    }

    /// Direct product. Both factors are lifted to `Z/lcm(N_r, N_s)` with the
    /// smaller characteristic recorded as extra relations.
    pub fn product(r: &Self, s: &Self) -> Result<Self> {
        let n = zn::lcm(r.modulus(), s.modulus());
        let (dr, ds) = (r.dim(), s.dim());
        let d = dr + ds;
        let mut rels = Vec::new();
        lift_relations(&mut rels, r.group(), 0, d, n);
        lift_relations(&mut rels, s.group(), dr, d, n);
        let group = AdditiveGroup::new(n, d, &rels)?;
        let mut table = vec![vec![0u64; d]; d * d];
        for i in 0..dr {
            for j in 0..dr {
                table[i * d + j][..dr].copy_from_slice(r.entry(i, j));
            }
        }
        for i in 0..ds {
            for j in 0..ds {
                table[(dr + i) * d + dr + j][dr..].copy_from_slice(s.entry(i, j));
            }
        }
        let mut one = r.one();
        one.extend(s.one());
        let labels = r
            .labels
            .iter()
            .map(|l| format!("({l},0)"))
            .chain(s.labels.iter().map(|l| format!("(0,{l})")))
            .collect();
        Self::from_table(group, table, one, labels)
    }

    /// `R^k` as an iterated product `((R × R) × R) …`; coordinates are the copies
    /// of `R` in order.
    pub fn power(r: &Self, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::Precondition("power needs k >= 1".into()));
        }
        let mut acc = r.clone();
        for _ in 1..k {
            acc = Self::product(&acc, r)?;
        }
        let labels = (0..k).flat_map(|c| r.labels.iter().map(move |l| format!("{l}[{c}]"))).collect();
        Ok(acc.with_labels(labels))
    }

    /// `R / I` with its canonical projection.
    pub fn quotient(&self, ideal: &Ideal) -> Result<(Self, RingHom)> {
        self.quotient_parts(ideal).map(|(q, h, _)| (q, h))
    }

    /// Quotient, projection, and the source basis indices that remain basis
    /// vectors of the quotient (so `lift(e_i) = b_{kept[i]}`).
    pub(crate) fn quotient_parts(&self, ideal: &Ideal) -> Result<(Self, RingHom, Vec<usize>)> {
        ideal.check_ring(self)?;
        if ideal.rank() != 1 {
            return Err(Error::NotAnIdeal("quotient needs a submodule of R^1".into()));
        }
        let raw = AdditiveGroup::from_basis(ideal.howell().clone());
        let comp = raw.compress();
        let kept = comp.kept().to_vec();
        let d = kept.len();
        let mut table = Vec::with_capacity(d * d);
        for &a in &kept {
            for &b in &kept {
                table.push(comp.project(self.entry(a, b)));
            }
        }
        let one = comp.project(&self.one);
        if comp.group.is_zero(&one) {
            return Err(Error::ImproperIdeal);
        }
        let labels = kept.iter().map(|&k| self.labels[k].clone()).collect();
        let q = Self::from_table(comp.group.clone(), table, one, labels)?;
        let images = (0..self.dim()).map(|i| comp.project(&self.basis(i))).collect();
        let hom = RingHom::new(self.clone(), q.clone(), images)?;
        Ok((q, hom, kept))
    }

    /// The subring additively generated by `gens`, with its inclusion. Fails if
    /// the additive span is not closed under products or misses the unit.
    pub fn subring(&self, gens: &[Vec<u64>]) -> Result<(Self, RingHom)> {
        let pres = SubgroupPresentation::new(&self.group, gens)?;
        let k = pres.group.dim();
        let mut table = Vec::with_capacity(k * k);
        for a in 0..k {
            for b in 0..k {
                let prod = self.mul(&pres.generators[a], &pres.generators[b]);
                let c = pres
                    .coordinates(&prod)?
                    .ok_or_else(|| Error::NotMember("additive span is not closed under multiplication".into()))?;
                table.push(c);
            }
        }
        let one = pres
            .coordinates(&self.one)?
            .ok_or_else(|| Error::NotMember("additive span does not contain 1".into()))?;
        let labels = pres.generators.iter().map(|g| self.format_element(g)).collect();
        let s = Self::from_table(pres.group.clone(), table, one, labels)?;
        let incl = RingHom::new(s.clone(), self.clone(), pres.generators.clone())?;
        Ok((s, incl))
    }
}

/// Append the relations of `g` shifted to coordinates `offset..offset+dim(g)` of
/// an ambient `(Z/n)^total`, plus `N_g · e_i` when `N_g < n`.
pub(crate) fn lift_relations(out: &mut Vec<Vec<u64>>, g: &AdditiveGroup, offset: usize, total: usize, n: u64) {
    for row in g.relations().rows() {
        let mut v = vec![0u64; total];
        v[offset..offset + row.len()].copy_from_slice(row);
        out.push(v);
    }
    if g.modulus() != n {
        for i in 0..g.dim() {
            let mut v = vec![0u64; total];
            v[offset + i] = g.modulus() % n;
            out.push(v);
        }
    }
}

/// An additive map between finite rings preserving `1` and products.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingHom {
    source: FiniteRing,
    target: FiniteRing,
    images: Vec<Vec<u64>>,
}

impl RingHom {
    /// Verify and build the map sending basis element `i` of `source` to `images[i]`.
    pub fn new(source: FiniteRing, target: FiniteRing, images: Vec<Vec<u64>>) -> Result<Self> {
        if images.len() != source.dim() {
            return Err(Error::DimensionMismatch { expected: source.dim(), got: images.len() });
        }
        let mut imgs = Vec::with_capacity(images.len());
        for im in &images {
            imgs.push(target.element(im)?);
        }
        let h = Self { source, target, images: imgs };
        h.verify()?;
        Ok(h)
    }

    fn verify(&self) -> Result<()> {
        let s = &self.source;
        let t = &self.target;
        for (i, im) in self.images.iter().enumerate() {
            if !t.is_zero(&t.scale(s.modulus(), im)) {
                return Err(Error::NotAHomomorphism(format!("N·f(b{i}) != 0: characteristic mismatch")));
            }
        }
        for (k, rel) in s.group().relations().rows().iter().enumerate() {
            if !t.is_zero(&self.apply(rel)) {
                return Err(Error::NotAHomomorphism(format!("relation {k} does not map to 0")));
            }
        }
        if self.apply(&s.one()) != t.one() {
            return Err(Error::NotAHomomorphism("f(1) != 1".into()));
        }
        for i in 0..s.dim() {
            for j in 0..s.dim() {
                let lhs = self.apply(s.entry(i, j));
                let rhs = t.mul(&self.images[i], &self.images[j]);
                if lhs != rhs {
                    return Err(Error::NotAHomomorphism(format!("f(b{i}·b{j}) != f(b{i})·f(b{j})")));
                }
            }
        }
        Ok(())
    }

    pub fn identity(r: &FiniteRing) -> Self {
        let images = (0..r.dim()).map(|i| r.basis(i)).collect();
        Self { source: r.clone(), target: r.clone(), images }
    }

    pub fn source(&self) -> &FiniteRing {
        &self.source
    }
    pub fn target(&self) -> &FiniteRing {
        &self.target
    }
    pub fn images(&self) -> &[Vec<u64>] {
        &self.images
    }

    pub fn apply(&self, x: &[u64]) -> Vec<u64> {
        let n = self.target.modulus();
        let mut acc = self.target.zero();
        for (im, &c) in self.images.iter().zip(x) {
            axpy(&mut acc, c % n, im, 0, n);
        }
        self.target.group().reduced(&acc)
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &RingHom) -> Result<RingHom> {
        if g.source != self.target {
            return Err(Error::Precondition("composition of non-matching homomorphisms".into()));
        }
        let images = self.images.iter().map(|im| g.apply(im)).collect();
        RingHom::new(self.source.clone(), g.target.clone(), images)
    }

    /// `f × g : A1 × A2 → B1 × B2` on the products built by [`FiniteRing::product`].
    pub fn product(f: &RingHom, g: &RingHom) -> Result<RingHom> {
        let src = FiniteRing::product(&f.source, &g.source)?;
        let tgt = FiniteRing::product(&f.target, &g.target)?;
        let (db1, db2) = (f.target.dim(), g.target.dim());
        let mut images = Vec::new();
        for im in &f.images {
            let mut v = im.clone();
            v.resize(db1 + db2, 0);
            images.push(v);
        }
        for im in &g.images {
            let mut v = vec![0u64; db1];
            v.extend_from_slice(im);
            images.push(v);
        }
        RingHom::new(src, tgt, images)
    }

    /// `f^k : A^k → B^k` acting coordinatewise.
    pub fn power(f: &RingHom, k: usize) -> Result<RingHom> {
        if k == 0 {
            return Err(Error::Precondition("power needs k >= 1".into()));
        }
        let mut acc = f.clone();
        for _ in 1..k {
            acc = RingHom::product(&acc, f)?;
        }
        let src = FiniteRing::power(&f.source, k)?;
        let tgt = FiniteRing::power(&f.target, k)?;
        Ok(RingHom { source: src, target: tgt, images: acc.images })
    }

    /// The kernel as an ideal of the source.
    pub fn kernel(&self) -> Ideal {
        let s = &self.source;
        let t = &self.target;
        // Work modulo lcm of both moduli, scaling the target equations so that
        // "≡ 0 mod N_target" survives the change of modulus.
        let l = zn::lcm(s.modulus(), t.modulus());
        let k = l / t.modulus();
        let rows: Vec<Vec<u64>> =
            self.images.iter().chain(t.group().relations().rows()).map(|r| r.iter().map(|&x| x * k).collect()).collect();
        let m = ZnMatrix::from_rows(l, t.dim(), &rows).expect("target rank");
        let ker = crate::linalg::kernel(&m);
        let gens: Vec<Vec<u64>> = ker.rows().iter().map(|r| r[..s.dim()].iter().map(|&x| x % s.modulus()).collect()).collect();
        Ideal::span(s, 1, &gens).expect("kernel generators have source rank")
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().is_zero()
    }

    pub fn is_surjective(&self) -> bool {
        let img = SubgroupPresentation::new(self.target.group(), &self.images).expect("target rank");
        img.group.order() == self.target.order()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zmod_basics() {
        let r = FiniteRing::zmod(4).unwrap();
        assert_eq!(r.order().to_u128(), Some(4));
        assert!(verify_ring(&r).passed());
        assert_eq!(r.mul(&[2], &[3]), vec![2]);
        assert!(FiniteRing::zmod(1).is_err());
        assert!(FiniteRing::zmod(0).is_err());
    }

    #[test]
    fn corrupted_table_fails_with_witness() {
        let g = AdditiveGroup::free(4, 2).unwrap();
        // Z/4[X]/(X^2) with the X·1 entry broken
        let table = vec![vec![1, 0], vec![0, 1], vec![0, 2], vec![0, 0]];
        let r = FiniteRing::from_table_unchecked(g.clone(), table.clone(), vec![1, 0], vec![]).unwrap();
        let rep = verify_ring(&r);
        assert!(!rep.passed());
        assert!(rep.failures.contains(&AxiomFailure::NotCommutative { i: 0, j: 1 }));
        assert!(FiniteRing::from_table(g, table, vec![1, 0], vec![]).is_err());
    }

    #[test]
    fn product_with_different_characteristics() {
        let r = FiniteRing::product(&FiniteRing::zmod(4).unwrap(), &FiniteRing::zmod(2).unwrap()).unwrap();
        assert_eq!(r.modulus(), 4);
        assert_eq!(r.order().to_u128(), Some(8));
        assert!(verify_ring(&r).passed());
        let r = FiniteRing::product(&FiniteRing::zmod(2).unwrap(), &FiniteRing::zmod(3).unwrap()).unwrap();
        assert_eq!(r.modulus(), 6);
        assert_eq!(r.order().to_u128(), Some(6));
    }

    #[test]
    fn truncated_poly_and_quotient() {
        let a = FiniteRing::truncated_poly(2, 3).unwrap();
        assert_eq!(a.order().to_u128(), Some(8));
        let x = a.basis(1);
        assert!(a.is_zero(&a.pow(&x, 3)));
        assert!(!a.is_zero(&a.pow(&x, 2)));
        let i = Ideal::span(&a, 1, &[a.basis(2)]).unwrap();
        let (b, f) = a.quotient(&i).unwrap();
        assert_eq!(b.order().to_u128(), Some(4));
        assert!(f.is_surjective());
        assert_eq!(f.kernel(), i);
    }

    #[test]
    fn subring_requires_closure() {
        let b = FiniteRing::truncated_poly(2, 2).unwrap();
        let (s, incl) = b.subring(&[b.one()]).unwrap();
        assert_eq!(s.order().to_u128(), Some(2));
        assert!(incl.is_injective());
        // span{x} misses the unit
        assert!(b.subring(&[b.basis(1)]).is_err());
    }

    #[test]
    fn hom_checks() {
        let z4 = FiniteRing::zmod(4).unwrap();
        let z2 = FiniteRing::zmod(2).unwrap();
        assert!(RingHom::new(z4.clone(), z2.clone(), vec![vec![1]]).is_ok());
        // Z/2 -> Z/4 is not well defined
        assert!(RingHom::new(z2, z4.clone(), vec![vec![1]]).is_err());
        // multiplication by 2 does not preserve 1
        assert!(RingHom::new(z4.clone(), z4, vec![vec![2]]).is_err());
    }

    #[test]
    fn kernel_across_moduli() {
        let z4 = FiniteRing::zmod(4).unwrap();
        let z2 = FiniteRing::zmod(2).unwrap();
        let h = RingHom::new(z4.clone(), z2, vec![vec![1]]).unwrap();
        assert_eq!(h.kernel().generators(&z4), vec![vec![2]]);
        assert!(!h.is_injective());
    }
}
