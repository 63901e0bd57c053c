//! Nilradical, idempotents, maximal ideals and local structure of finite rings.
//!
//! Everything here reduces to linear algebra over the prime fields `F_p` for the
//! primes `p` dividing the characteristic. On `R/pR` the Frobenius map is
//! `F_p`-linear; its iterated kernel is the nilradical of `R/pR`, and its fixed
//! space is the split algebra `F_p^s` whose idempotents are those of `R/pR`.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{self, ZnMatrix};
use crate::ring::{FiniteRing, RingHom};
use crate::submodule::{stacked_kernel, Ideal, Submodule};
use crate::zn;

/// Default cap on the number of elements any enumeration may visit.
pub const DEFAULT_BUDGET: u128 = 1 << 16;

struct ModP {
    p: u64,
    ring: FiniteRing,
    kept: Vec<usize>,
    pr: Ideal,
}

impl ModP {
    fn new(r: &FiniteRing, p: u64) -> Result<Option<Self>> {
        let pr = Submodule::ideal(r, &[r.scale(p, &r.one())])?;
        if pr.order() == r.order() {
            return Ok(None);
        }
        let (ring, _, kept) = r.quotient_parts(&pr)?;
        debug_assert_eq!(ring.modulus(), p);
        debug_assert!(ring.group().relations().is_zero());
        Ok(Some(Self { p, ring, kept, pr }))
    }

    fn lift(&self, r: &FiniteRing, x: &[u64]) -> Vec<u64> {
        let mut v = r.zero();
        for (&c, &k) in self.kept.iter().zip(x) {
            v[c] = k;
        }
        r.group().reduced(&v)
    }

    /// Matrix over `F_p` whose row `i` is `φ(b_i)`.
    fn linear_map(&self, phi: impl Fn(&FiniteRing, &[u64]) -> Vec<u64>) -> ZnMatrix {
        let q = &self.ring;
        let rows: Vec<Vec<u64>> = (0..q.dim()).map(|i| phi(q, &q.basis(i))).collect();
        ZnMatrix::from_rows(self.p, q.dim(), &rows).expect("rows have quotient rank")
    }
}

/// The ideal of nilpotent elements.
pub fn nilradical(r: &FiniteRing) -> Ideal {
    let mut acc = Submodule::full(r, 1);
    for p in zn::prime_divisors(r.modulus()) {
        let Some(mp) = ModP::new(r, p).expect("ideal pR is well formed") else { continue };
        let dim = mp.ring.dim() as u64;
        let mut pk = p;
        while pk < dim {
            pk *= p;
        }
        let m = mp.linear_map(|q, b| q.pow(b, pk));
        let ker = linalg::kernel(&m);
        let mut gens = mp.pr.generators(r);
        gens.extend(ker.rows().iter().map(|x| mp.lift(r, x)));
        let nil_p = Submodule::ideal(r, &gens).expect("rank 1 generators");
        acc = acc.intersection(&nil_p).expect("same ring");
    }
    acc
}

/// `u ∈ Z` with `u ≡ 1 mod p^a` and `u ≡ 0` modulo the rest of `n = p^a·m`.
fn crt_unit(n: u64, p: u64) -> u64 {
    let mut pa = 1;
    while n % (pa * p) == 0 {
        pa *= p;
    }
    let m = n / pa;
    if m == 1 {
        return 1;
    }
    let inv = zn::inv_mod(m % pa, pa).expect("coprime cofactors");
    m * inv % n
}

/// Lift an idempotent modulo a nil ideal to a genuine idempotent.
fn lift_idempotent(r: &FiniteRing, mut e: Vec<u64>) -> Vec<u64> {
    for _ in 0..128 {
        let e2 = r.mul(&e, &e);
        if e2 == e {
            return e;
        }
        let e3 = r.mul(&e2, &e);
        e = r.sub(&r.scale(3, &e2), &r.scale(2, &e3));
    }
    panic!("idempotent lifting did not converge");
}

/// The primitive idempotents of `r`, grouped by prime and in a deterministic order.
/// Their number is the number of maximal ideals.
pub fn primitive_idempotents(r: &FiniteRing, budget: u128) -> Result<Vec<Vec<u64>>> {
    let ch = r.characteristic();
    let mut out = Vec::new();
    for p in zn::prime_divisors(ch) {
        let mp = ModP::new(r, p)?.expect("p divides the characteristic");
        let q = &mp.ring;
        let m = mp.linear_map(|q, b| q.sub(&q.pow(b, p), b));
        let fixed = linalg::kernel(&m);
        let s = fixed.len();
        let local_prims: Vec<Vec<u64>> = if s <= 1 {
            alloc::vec![q.one()]
        } else {
            let size = (p as u128).checked_pow(s as u32);
            if size.map_or(true, |v| v > budget) {
                return Err(Error::BudgetExceeded { order: alloc::format!("{p}^{s}"), cap: budget });
            }
            let idem: Vec<Vec<u64>> =
                fixed.elements().filter(|e| e.iter().any(|&x| x != 0) && q.mul(e, e) == *e).collect();
            idem.iter()
                .filter(|e| idem.iter().all(|f| f == *e || q.mul(f, e) != *f))
                .cloned()
                .collect()
        };
        let u = r.scale(crt_unit(ch, p), &r.one());
        for e in local_prims {
            let seed = r.mul(&u, &mp.lift(r, &e));
            out.push(lift_idempotent(r, seed));
        }
    }
    Ok(out)
}

/// All idempotents, as sums of subsets of the primitive ones.
pub fn idempotents(r: &FiniteRing, budget: u128) -> Result<Vec<Vec<u64>>> {
    let prims = primitive_idempotents(r, budget)?;
    let k = prims.len();
    if k >= 64 || (1u128 << k) > budget {
        return Err(Error::BudgetExceeded { order: alloc::format!("2^{k}"), cap: budget });
    }
    let mut out = Vec::with_capacity(1 << k);
    for mask in 0u64..(1 << k) {
        let mut e = r.zero();
        for (i, p) in prims.iter().enumerate() {
            if mask >> i & 1 == 1 {
                e = r.add(&e, p);
            }
        }
        out.push(e);
    }
    out.sort();
    Ok(out)
}

/// Maximal ideals `nil(R) + R(1 − e)` for the primitive idempotents `e`.
pub fn maximal_ideals(r: &FiniteRing, budget: u128) -> Result<Vec<Ideal>> {
    let nil = nilradical(r);
    let prims = primitive_idempotents(r, budget)?;
    let one = r.one();
    prims
        .iter()
        .map(|e| nil.sum(&Submodule::ideal(r, &[r.sub(&one, e)])?))
        .collect()
}

pub fn is_local(r: &FiniteRing, budget: u128) -> Result<bool> {
    Ok(primitive_idempotents(r, budget)?.len() == 1)
}

/// `x` is regular iff multiplication by `x` is injective.
pub fn is_regular(r: &FiniteRing, x: &[u64]) -> bool {
    let rows: Vec<Vec<u64>> = (0..r.dim()).map(|j| r.mul(x, &r.basis(j))).collect();
    let ker = stacked_kernel(r.modulus(), r.dim(), &rows, r.group().relations().rows());
    Submodule::from_span(r, 1, ker).is_zero()
}

/// `x` is a unit iff `1 ∈ xR`.
pub fn is_unit(r: &FiniteRing, x: &[u64]) -> bool {
    let mut rows: Vec<Vec<u64>> = (0..r.dim()).map(|j| r.mul(x, &r.basis(j))).collect();
    rows.extend(r.group().relations().rows().iter().cloned());
    let m = ZnMatrix::from_rows(r.modulus(), r.dim(), &rows).expect("ring rank");
    linalg::solve(&m, &r.one()).expect("ring rank").is_some()
}

pub fn units(r: &FiniteRing, budget: u128) -> Result<Vec<Vec<u64>>> {
    r.check_budget(budget)?;
    Ok(r.elements().filter(|x| is_unit(r, x)).collect())
}

/// A finite field test: reduced with a single maximal ideal.
pub fn is_field(r: &FiniteRing, budget: u128) -> Result<bool> {
    Ok(nilradical(r).is_zero() && is_local(r, budget)?)
}

/// A local ring with its maximal ideal and residue field.
#[derive(Clone, Debug)]
pub struct LocalRing {
    ring: FiniteRing,
    maximal: Ideal,
    residue: FiniteRing,
    residue_map: RingHom,
}

impl LocalRing {
    pub fn new(r: &FiniteRing) -> Result<Self> {
        Self::with_budget(r, DEFAULT_BUDGET)
    }

    pub fn with_budget(r: &FiniteRing, budget: u128) -> Result<Self> {
        let max = maximal_ideals(r, budget)?;
        if max.len() != 1 {
            return Err(Error::NotLocal(max.len()));
        }
        let maximal = max.into_iter().next().expect("one ideal");
        let (residue, residue_map) = r.quotient(&maximal)?;
        if !is_field(&residue, budget)? {
            return Err(Error::Precondition("residue ring is not a field".into()));
        }
        Ok(Self { ring: r.clone(), maximal, residue, residue_map })
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }
    pub fn maximal(&self) -> &Ideal {
        &self.maximal
    }
    pub fn residue_field(&self) -> &FiniteRing {
        &self.residue
    }
    pub fn residue_map(&self) -> &RingHom {
        &self.residue_map
    }
    pub fn is_field(&self) -> bool {
        self.maximal.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn brute_nil(r: &FiniteRing) -> usize {
        let d = r.dim() as u64 + 1;
        r.elements().filter(|x| r.is_zero(&r.pow(x, d))).count()
    }

    #[test]
    fn zmod_spectra() {
        let z6 = FiniteRing::zmod(6).unwrap();
        assert!(nilradical(&z6).is_zero());
        assert_eq!(idempotents(&z6, DEFAULT_BUDGET).unwrap(), vec![vec![0], vec![1], vec![3], vec![4]]);
        let max = maximal_ideals(&z6, DEFAULT_BUDGET).unwrap();
        assert_eq!(max.len(), 2);
        assert!(max.contains(&Submodule::ideal(&z6, &[vec![2]]).unwrap()));
        assert!(max.contains(&Submodule::ideal(&z6, &[vec![3]]).unwrap()));
        assert!(!is_local(&z6, DEFAULT_BUDGET).unwrap());

        let z4 = FiniteRing::zmod(4).unwrap();
        let loc = LocalRing::new(&z4).unwrap();
        assert_eq!(loc.maximal(), &Submodule::ideal(&z4, &[vec![2]]).unwrap());
        assert_eq!(loc.residue_field().order().to_u128(), Some(2));
        assert!(!is_regular(&z4, &[2]));
        assert!(is_regular(&z4, &[3]));
    }

    #[test]
    fn large_prime_field_is_local() {
        let f = FiniteRing::zmod(2_147_483_647).unwrap();
        assert!(LocalRing::new(&f).unwrap().is_field());
    }

    #[test]
    fn nilradical_matches_enumeration() {
        for r in [
            FiniteRing::truncated_poly(2, 3).unwrap(),
            FiniteRing::truncated_poly(6, 2).unwrap(),
            FiniteRing::product(&FiniteRing::zmod(4).unwrap(), &FiniteRing::zmod(9).unwrap()).unwrap(),
            FiniteRing::product(&FiniteRing::zmod(2).unwrap(), &FiniteRing::truncated_poly(3, 2).unwrap()).unwrap(),
        ] {
            let nil = nilradical(&r);
            assert_eq!(nil.order().to_u128(), Some(brute_nil(&r) as u128), "{r:?}");
        }
    }

    #[test]
    fn product_of_fields_splits() {
        let r = FiniteRing::product(&FiniteRing::zmod(2).unwrap(), &FiniteRing::zmod(2).unwrap()).unwrap();
        assert_eq!(idempotents(&r, DEFAULT_BUDGET).unwrap().len(), 4);
        assert_eq!(maximal_ideals(&r, DEFAULT_BUDGET).unwrap().len(), 2);
        let units = units(&r, DEFAULT_BUDGET).unwrap();
        assert_eq!(units.len(), 1);
    }
}
