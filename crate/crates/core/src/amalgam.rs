//! Amalgamated algebras `A ⋈^f J = {(a, f(a) + j)}` along an ideal `J` of `B`.
//!
//! The ring is built on the additive group `A ⊕ J`: coordinates `(α, ι)` stand
//! for `(α, f(α) + j(ι))`, where `ι` are coordinates of `J` in its own
//! compressed presentation. The product is
//! `(α, ι)(β, κ) = (αβ, f(α)κ + f(β)ι + ικ)`, read back into `J`-coordinates.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::group::{AdditiveGroup, SubgroupPresentation};
use crate::ring::{lift_relations, FiniteRing, RingHom};
use crate::submodule::{Ideal, Submodule};
use crate::zn;

#[derive(Clone, Debug)]
pub struct Amalgamation {
    pub a: FiniteRing,
    pub b: FiniteRing,
    pub f: RingHom,
    pub j: Ideal,
    pub ring: FiniteRing,
    j_pres: SubgroupPresentation,
    embedding: RingHom,
    projection: RingHom,
}

impl Amalgamation {
    pub fn new(f: &RingHom, j: &Ideal) -> Result<Self> {
        let a = f.source().clone();
        let b = f.target().clone();
        j.check_ring(&b)?;
        if j.rank() != 1 {
            return Err(Error::NotAnIdeal("J must be a submodule of B^1".into()));
        }
        if j.order() == b.order() {
            return Err(Error::ImproperIdeal);
        }
        let j_pres = SubgroupPresentation::new(b.group(), &j.generators(&b))?;
        let (da, dj) = (a.dim(), j_pres.group.dim());
        let n = if dj == 0 { a.modulus() } else { zn::lcm(a.modulus(), j_pres.group.modulus()) };
        let d = da + dj;
        let mut rels = Vec::new();
        lift_relations(&mut rels, a.group(), 0, d, n);
        if dj > 0 {
            lift_relations(&mut rels, &j_pres.group, da, d, n);
        }
        let group = AdditiveGroup::new(n, d, &rels)?;

        let j_coords = |x: &[u64]| -> Result<Vec<u64>> {
            j_pres.coordinates(x)?.ok_or_else(|| Error::NotAnIdeal("product left J".into()))
        };
        let fa: Vec<Vec<u64>> = (0..da).map(|i| f.apply(&a.basis(i))).collect();
        let mut table = vec![vec![0u64; d]; d * d];
        for i in 0..da {
            for k in 0..da {
                table[i * d + k][..da].copy_from_slice(a.entry(i, k));
            }
            for l in 0..dj {
                let c = j_coords(&b.mul(&fa[i], &j_pres.generators[l]))?;
                table[i * d + da + l][da..].copy_from_slice(&c);
                table[(da + l) * d + i][da..].copy_from_slice(&c);
            }
        }
        for l in 0..dj {
            for m in 0..dj {
                let c = j_coords(&b.mul(&j_pres.generators[l], &j_pres.generators[m]))?;
                table[(da + l) * d + da + m][da..].copy_from_slice(&c);
            }
        }
        let mut one = a.one();
        one.resize(d, 0);
        let labels = a
            .labels()
            .iter()
            .map(|l| format!("({l},f)"))
            .chain(j_pres.generators.iter().map(|g| format!("(0,{})", b.format_element(g))))
            .collect();
        let ring = FiniteRing::from_table(group, table, one, labels)?;

        // (α, ι) ↦ (α, f(α) + j) ∈ A × B; a verified injective ring map certifies
        // that the construction is the subring of the product
        let prod = FiniteRing::product(&a, &b)?;
        let mut images = Vec::with_capacity(d);
        for i in 0..da {
            let mut v = a.basis(i);
            v.extend_from_slice(&fa[i]);
            images.push(v);
        }
        for g in &j_pres.generators {
            let mut v = a.zero();
            v.extend_from_slice(g);
            images.push(v);
        }
        let embedding = RingHom::new(ring.clone(), prod, images)?;
        if !embedding.is_injective() {
            return Err(Error::Precondition("amalgamation does not embed into A × B".into()));
        }
        let proj_images = (0..d).map(|i| if i < da { a.basis(i) } else { a.zero() }).collect();
        let projection = RingHom::new(ring.clone(), a.clone(), proj_images)?;
        Ok(Self { a, b, f: f.clone(), j: j.clone(), ring, j_pres, embedding, projection })
    }

    /// The amalgamated duplication `A ⋈ I`.
    pub fn duplication(a: &FiniteRing, i: &Ideal) -> Result<Self> {
        Self::new(&RingHom::identity(a), i)
    }

    pub fn embedding(&self) -> &RingHom {
        &self.embedding
    }
    pub fn projection(&self) -> &RingHom {
        &self.projection
    }
    pub fn j_presentation(&self) -> &SubgroupPresentation {
        &self.j_pres
    }
    pub fn dim_a(&self) -> usize {
        self.a.dim()
    }
    pub fn dim_j(&self) -> usize {
        self.j_pres.group.dim()
    }

    /// Coordinates of `(α, f(α) + j)` for `α ∈ A` and `j ∈ J` (in `B`-coordinates).
    pub fn element(&self, alpha: &[u64], j: &[u64]) -> Result<Vec<u64>> {
        let alpha = self.a.element(alpha)?;
        let iota = self
            .j_pres
            .coordinates(j)?
            .ok_or_else(|| Error::NotMember(format!("{} is not in J", self.b.format_element(j))))?;
        let mut v = alpha;
        v.extend(iota);
        self.ring.element(&v)
    }

    /// Coordinates of a pair `(a, b) ∈ A × B` lying in the amalgamation.
    pub fn from_pair(&self, a: &[u64], b: &[u64]) -> Result<Vec<u64>> {
        let j = self.b.sub(b, &self.f.apply(a));
        self.element(a, &j)
    }

    /// `(a, b) ∈ A × B` for an amalgamation element.
    pub fn to_pair(&self, x: &[u64]) -> (Vec<u64>, Vec<u64>) {
        let da = self.a.dim();
        let img = self.embedding.apply(x);
        (img[..da].to_vec(), img[da..].to_vec())
    }

    /// Blockwise `element` for vectors: `u ∈ A^p`, `k ∈ J^p ⊆ B^p`.
    pub fn lift_vector(&self, u: &[u64], k: &[u64]) -> Result<Vec<u64>> {
        let (da, db) = (self.a.dim(), self.b.dim());
        if u.len() % da != 0 || k.len() / db != u.len() / da || k.len() % db != 0 {
            return Err(Error::DimensionMismatch { expected: u.len() / da * db, got: k.len() });
        }
        let mut out = Vec::new();
        for (ub, kb) in u.chunks(da).zip(k.chunks(db)) {
            out.extend(self.element(ub, kb)?);
        }
        Ok(out)
    }

    /// `{0} × J`.
    pub fn zero_times_j(&self) -> Ideal {
        self.zero_times_j_power(1)
    }

    /// `({0} × J)^q ⊆ (A ⋈^f J)^q`.
    pub fn zero_times_j_power(&self, q: usize) -> Submodule {
        let d = self.ring.dim();
        let da = self.a.dim();
        let mut gens = Vec::new();
        for t in 0..q {
            for l in 0..self.dim_j() {
                let mut v = vec![0u64; q * d];
                v[t * d + da + l] = 1;
                gens.push(v);
            }
        }
        Submodule::span(&self.ring, q, &gens).expect("well-typed generators")
    }

    /// `X ⋈^{f^q} J^q = {(x, f(x) + j)}` for an `A`-submodule `X ⊆ A^q`.
    pub fn bowtie_module(&self, x: &Submodule) -> Result<Submodule> {
        x.check_ring(&self.a)?;
        let q = x.rank();
        let d = self.ring.dim();
        let da = self.a.dim();
        let mut gens = Vec::new();
        for g in x.generators(&self.a) {
            let mut v = vec![0u64; q * d];
            for t in 0..q {
                v[t * d..t * d + da].copy_from_slice(&g[t * da..(t + 1) * da]);
            }
            gens.push(v);
        }
        Ok(Submodule::span(&self.ring, q, &gens)?.sum(&self.zero_times_j_power(q))?)
    }

    /// `m ⋈^f J` for an ideal `m` of `A`.
    pub fn bowtie(&self, m: &Ideal) -> Result<Ideal> {
        self.bowtie_module(m)
    }

    /// The subring `f(A) + J` of `B` with its inclusion.
    pub fn image_plus_j(&self) -> Result<(FiniteRing, RingHom)> {
        subring_image_plus(&self.f, &self.j)
    }

    /// `(A ⋈^f J)^n → A^n ⋈^{f^n} J^n`, sending the copy of `(α, ι)` in block `t`
    /// to `α` in block `t` of `A^n` and `ι` in block `t` of `J^n`.
    pub fn power_iso(&self, n: usize) -> Result<(Amalgamation, RingHom)> {
        let fnn = RingHom::power(&self.f, n)?;
        let bn = fnn.target().clone();
        let db = self.b.dim();
        let mut jgens = Vec::new();
        for t in 0..n {
            for g in self.j.generators(&self.b) {
                let mut v = vec![0u64; n * db];
                v[t * db..(t + 1) * db].copy_from_slice(&g);
                jgens.push(v);
            }
        }
        let jn = Submodule::ideal(&bn, &jgens)?;
        let target = Amalgamation::new(&fnn, &jn)?;
        let src = FiniteRing::power(&self.ring, n)?;
        let da = self.a.dim();
        let mut images = Vec::with_capacity(src.dim());
        for t in 0..n {
            for i in 0..self.ring.dim() {
                let mut alpha = vec![0u64; n * da];
                let mut j = vec![0u64; n * db];
                if i < da {
                    alpha[t * da + i] = 1;
                } else {
                    j[t * db..(t + 1) * db].copy_from_slice(&self.j_pres.generators[i - da]);
                }
                images.push(target.element(&alpha, &j)?);
            }
        }
        let iso = RingHom::new(src, target.ring.clone(), images)?;
        Ok((target, iso))
    }

    pub fn describe(&self) -> String {
        format!("A⋈^f J with |A| = {}, |B| = {}, |J| = {}, order {}", self.a.order(), self.b.order(), self.j.order(), self.ring.order())
    }
}

/// The subring `f(A) + J` of the target of `f`, with its inclusion.
pub fn subring_image_plus(f: &RingHom, j: &Ideal) -> Result<(FiniteRing, RingHom)> {
    let b = f.target();
    j.check_ring(b)?;
    let mut gens: Vec<Vec<u64>> = f.images().to_vec();
    gens.extend(j.generators(b));
    b.subring(&gens)
}
