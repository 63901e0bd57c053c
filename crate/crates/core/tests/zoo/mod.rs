//! A fixed collection of small rings built through every constructor.
#![allow(dead_code)]

use amalgam_core::amalgam::{subring_image_plus, Amalgamation};
use amalgam_core::instances;
use amalgam_core::{trivial_extension, FiniteRing, ModuleSpec, RingHom, Submodule};

pub fn zoo() -> Vec<(String, FiniteRing)> {
    let mut out: Vec<(String, FiniteRing)> = Vec::new();
    let mut push = |name: &str, r: FiniteRing| out.push((name.to_string(), r));
    for n in [2, 3, 4, 5, 6, 8, 9, 12] {
        push(&format!("Z/{n}"), FiniteRing::zmod(n).unwrap());
    }
    push("F2[x]/x^3", FiniteRing::truncated_poly(2, 3).unwrap());
    push("Z3[x]/x^2", FiniteRing::truncated_poly(3, 2).unwrap());
    push("Z4[x]/x^2", FiniteRing::truncated_poly(4, 2).unwrap());
    let z2 = FiniteRing::zmod(2).unwrap();
    let z4 = FiniteRing::zmod(4).unwrap();
    push("Z/2 x Z/2", FiniteRing::product(&z2, &z2).unwrap());
    push("Z/4 x Z/2", FiniteRing::product(&z4, &z2).unwrap());
    push("(Z/2)^3", FiniteRing::power(&z2, 3).unwrap());
    let t4 = FiniteRing::truncated_poly(2, 4).unwrap();
    let x2 = Submodule::ideal(&t4, &[t4.mul(&t4.basis(1), &t4.basis(1))]).unwrap();
    push("F2[x]/x^4 / x^2", t4.quotient(&x2).unwrap().0);
    let z12 = FiniteRing::zmod(12).unwrap();
    let four = Submodule::ideal(&z12, &[vec![4]]).unwrap();
    push("Z/12 / 4", z12.quotient(&four).unwrap().0);
    push("Z/4 ⋉ Z/2", instances::z4_idealization().unwrap());
    let e = ModuleSpec::regular(&z2);
    push("Z/2 ⋉ Z/2", trivial_extension(&z2, &ModuleSpec::power(&z2, &e, 2).unwrap()).unwrap());
    let two = Submodule::ideal(&z4, &[vec![2]]).unwrap();
    push("Z/4 ⋈ (2)", Amalgamation::duplication(&z4, &two).unwrap().ring);
    let p22 = FiniteRing::product(&z2, &z2).unwrap();
    let half = Submodule::ideal(&p22, &[vec![0, 1]]).unwrap();
    push("(Z/2)^2 ⋈ 0xZ/2", Amalgamation::duplication(&p22, &half).unwrap().ring);
    for inst in instances::standard_instances().unwrap() {
        push(&inst.name, inst.amalgam.ring.clone());
    }
    let t3 = instances::truncation(3).unwrap().amalgam;
    push("f(A)+J", subring_image_plus(&t3.f, &t3.j).unwrap().0);
    // Z/4 → Z/2 with J = 0
    let pr = RingHom::new(z4.clone(), z2.clone(), vec![vec![1]]).unwrap();
    push("Z/4 ⋈ 0", Amalgamation::new(&pr, &Submodule::zero(&z2, 1)).unwrap().ring);
    out
}
