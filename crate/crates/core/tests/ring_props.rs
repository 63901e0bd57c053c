mod oracle;
mod zoo;

use amalgam_core::amalgam::{subring_image_plus, Amalgamation};
use amalgam_core::spectrum::{self, LocalRing};
use amalgam_core::{instances, verify_ring, FiniteRing, RingHom, Submodule};
use proptest::prelude::*;

const BUDGET: u128 = 1 << 16;

fn set_of(r: &FiniteRing, i: &Submodule) -> oracle::Set {
    i.elements(r).collect()
}

#[test]
fn every_zoo_ring_satisfies_the_axioms() {
    for (name, r) in zoo::zoo() {
        let rep = verify_ring(&r);
        assert!(rep.passed(), "{name}: {:?}", rep.failures);
        assert_eq!(rep.triples_checked, r.dim().pow(3), "{name}");
        assert_eq!(oracle::elements(&r).len() as u128, r.order().to_u128().unwrap(), "{name}");
    }
}

#[test]
fn nilradical_units_regular_and_idempotents_match_enumeration() {
    for (name, r) in zoo::zoo() {
        assert_eq!(set_of(&r, &spectrum::nilradical(&r)), oracle::nilradical(&r), "{name}");
        let units: oracle::Set = spectrum::units(&r, BUDGET).unwrap().into_iter().collect();
        assert_eq!(units, oracle::units(&r), "{name}");
        // in a finite ring the regular elements are exactly the units
        assert_eq!(oracle::regular(&r), units, "{name}");
        for x in oracle::elements(&r) {
            assert_eq!(spectrum::is_regular(&r, &x), units.contains(&x), "{name} {x:?}");
            assert_eq!(spectrum::is_unit(&r, &x), units.contains(&x), "{name} {x:?}");
        }
        let idem: oracle::Set = spectrum::idempotents(&r, BUDGET).unwrap().into_iter().collect();
        assert_eq!(idem, oracle::idempotents(&r), "{name}");
    }
}

#[test]
fn maximal_ideals_match_enumeration() {
    for (name, r) in zoo::zoo() {
        let mut ours: Vec<oracle::Set> = spectrum::maximal_ideals(&r, BUDGET).unwrap().iter().map(|m| set_of(&r, m)).collect();
        let mut brute = oracle::maximal_ideals(&r);
        ours.sort();
        brute.sort();
        assert_eq!(ours, brute, "{name}");
        assert_eq!(spectrum::is_local(&r, BUDGET).unwrap(), brute.len() == 1, "{name}");
        if let Ok(l) = LocalRing::new(&r) {
            assert!(spectrum::is_field(l.residue_field(), BUDGET).unwrap(), "{name}");
            assert_eq!(r.order().checked_div(&l.maximal().order()), Some(l.residue_field().order()), "{name}");
        }
    }
}

#[test]
fn frozen_examples() {
    let z = |n| FiniteRing::zmod(n).unwrap();
    let idem = |r: &FiniteRing| spectrum::idempotents(r, BUDGET).unwrap();
    assert_eq!(idem(&z(6)), vec![vec![0], vec![1], vec![3], vec![4]]);
    assert_eq!(spectrum::maximal_ideals(&z(6), BUDGET).unwrap().len(), 2);
    assert!(!spectrum::is_local(&z(6), BUDGET).unwrap());
    assert_eq!(spectrum::nilradical(&z(6)).order().to_u128(), Some(1));
    assert_eq!(spectrum::nilradical(&z(4)).generators(&z(4)), vec![vec![2]]);
    let p = FiniteRing::product(&z(4), &z(2)).unwrap();
    assert_eq!((p.order().to_u128(), spectrum::maximal_ideals(&p, BUDGET).unwrap().len()), (Some(8), 2));
    assert_eq!(idem(&FiniteRing::product(&z(2), &z(2)).unwrap()).len(), 4);

    let a = instances::z4_idealization().unwrap();
    let la = LocalRing::new(&a).unwrap();
    assert_eq!((a.order().to_u128(), la.maximal().order().to_u128()), (Some(8), Some(4)));
    assert_eq!(set_of(&a, &spectrum::nilradical(&a)), oracle::nilradical(&a));
    assert_eq!(oracle::nilradical(&a).len(), 4);

    let d = instances::duplication_z4().unwrap().amalgam;
    assert_eq!(d.ring.order().to_u128(), Some(8));
    assert_eq!(idem(&d.ring).len(), 2);
    let ld = LocalRing::new(&d.ring).unwrap();
    assert_eq!(ld.residue_field().order().to_u128(), Some(2));
    assert_eq!(*ld.maximal(), d.bowtie(LocalRing::new(&d.a).unwrap().maximal()).unwrap());

    let p22 = FiniteRing::product(&z(2), &z(2)).unwrap();
    let half = Submodule::ideal(&p22, &[vec![0, 1]]).unwrap();
    assert!(!spectrum::is_local(&Amalgamation::duplication(&p22, &half).unwrap().ring, BUDGET).unwrap());

    // f(A) + J
    let b = z(4);
    let id = RingHom::identity(&b);
    assert_eq!(subring_image_plus(&id, &Submodule::ideal(&b, &[vec![2]]).unwrap()).unwrap().0.order(), b.order());
    let pr = RingHom::new(z(4), z(2), vec![vec![1]]).unwrap();
    assert_eq!(subring_image_plus(&pr, &Submodule::zero(&z(2), 1)).unwrap().0.order().to_u128(), Some(2));
    let t = instances::truncation(3).unwrap().amalgam;
    assert_eq!(subring_image_plus(&t.f, &t.j).unwrap().0.order(), t.b.order());
    assert_eq!(t.ring.order().to_u128(), Some(16));
}

#[test]
fn amalgamation_order_law() {
    for inst in instances::standard_instances().unwrap() {
        let d = &inst.amalgam;
        assert_eq!(d.ring.order(), d.a.order().mul(&d.j.order()), "{}", inst.name);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ideals_and_quotients(idx in 0usize..27, seeds in prop::collection::vec(any::<u64>(), 1..3)) {
        let zoo = zoo::zoo();
        let (name, r) = &zoo[idx % zoo.len()];
        let els = oracle::elements(r);
        let gens: Vec<Vec<u64>> = seeds.iter().map(|s| els[(*s as usize) % els.len()].clone()).collect();
        let i = Submodule::ideal(r, &gens).unwrap();
        prop_assert_eq!(set_of(r, &i), oracle::ideal(r, &gens), "{}", name);
        if i.order() != r.order() {
            let (q, pi) = r.quotient(&i).unwrap();
            prop_assert!(verify_ring(&q).passed());
            prop_assert_eq!(Some(q.order()), r.order().checked_div(&i.order()));
            prop_assert_eq!(pi.kernel(), i.clone());
            prop_assert!(pi.is_surjective());
        }
        // duplication along a proper ideal is a ring of order |R|·|I|
        if i.order() != r.order() {
            let d = Amalgamation::duplication(r, &i).unwrap();
            prop_assert!(verify_ring(&d.ring).passed());
            prop_assert_eq!(d.ring.order().to_u128(), Some(r.order().to_u128().unwrap() * i.order().to_u128().unwrap()));
            prop_assert!(d.embedding().is_injective());
        }
    }
}
