//! The standard instance set used by the checks and the acceptance suite.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::amalgam::Amalgamation;
use crate::error::Result;
use crate::module_spec::{trivial_extension, ModuleSpec};
use crate::ring::{FiniteRing, RingHom};
use crate::spectrum::LocalRing;
use crate::submodule::Submodule;

#[derive(Clone, Debug)]
pub struct Instance {
    pub name: String,
    pub amalgam: Amalgamation,
}

/// `Z/4 ⋈ (2)`, order 8.
pub fn duplication_z4() -> Result<Instance> {
    let a = FiniteRing::zmod(4)?;
    let i = Submodule::ideal(&a, &[a.scale(2, &a.one())])?;
    Ok(Instance { name: "dup-z4".into(), amalgam: Amalgamation::duplication(&a, &i)? })
}

/// `A = Z/4 ⋉ (Z/4)/(2)`.
pub fn z4_idealization() -> Result<FiniteRing> {
    let z4 = FiniteRing::zmod(4)?;
    let two = Submodule::ideal(&z4, &[z4.scale(2, &z4.one())])?;
    let e = ModuleSpec::quotient_of_ring(&z4, &two)?;
    trivial_extension(&z4, &e)
}

/// `A = Z/4 ⋉ (Z/4)/(2)`, `B = A ⋉ (A/M)^k`, `J = 0 ⋉ (A/M)^k`, `f(a) = (a, 0)`.
pub fn idealization_tower(k: usize) -> Result<Instance> {
    let a = z4_idealization()?;
    let local = LocalRing::new(&a)?;
    let field = ModuleSpec::quotient_of_ring(&a, local.maximal())?;
    let e = ModuleSpec::power(&a, &field, k)?;
    let b = trivial_extension(&a, &e)?;
    let da = a.dim();
    let f = RingHom::new(a.clone(), b.clone(), (0..da).map(|i| b.basis(i)).collect())?;
    let jgens: Vec<Vec<u64>> = (0..e.dim()).map(|t| b.basis(da + t)).collect();
    let j = Submodule::ideal(&b, &jgens)?;
    Ok(Instance { name: format!("idealization-k{k}"), amalgam: Amalgamation::new(&f, &j)? })
}

/// `A = F_2[X]/(X^t)`, `B = A/(x^2)`, `J = (x̄)`, `f` the projection.
pub fn truncation(t: usize) -> Result<Instance> {
    let a = FiniteRing::truncated_poly(2, t)?;
    let x = a.basis(1);
    let x2 = Submodule::ideal(&a, &[a.mul(&x, &x)])?;
    let (b, f) = a.quotient(&x2)?;
    let j = Submodule::ideal(&b, &[f.apply(&x)])?;
    Ok(Instance { name: format!("truncation-t{t}"), amalgam: Amalgamation::new(&f, &j)? })
}

/// Instances (i), (ii) for `k ∈ {1, 2}`, (iii) for `t ∈ {3, 4}`.
pub fn standard_instances() -> Result<Vec<Instance>> {
    Ok(alloc::vec![duplication_z4()?, idealization_tower(1)?, idealization_tower(2)?, truncation(3)?, truncation(4)?])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        let orders: Vec<u128> = standard_instances().unwrap().iter().map(|i| i.amalgam.ring.order().to_u128().unwrap()).collect();
        assert_eq!(orders, alloc::vec![8, 16, 32, 16, 32]);
    }
}
