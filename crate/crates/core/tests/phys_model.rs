//! Exhaustive sweeps of the `W_{g,d}` family at small sizes.

use std::collections::HashSet;
use std::sync::Arc;

use qarith_core::phys::{
    conjugated_add_apply, conjugated_successor_apply, enumerate_maps, number_of_state, wgd_apply,
    wgd_apply_inverse_maps, wgd_inverse_apply,
};
use qarith_core::{encode_number, oracle_add, LabelSets, PhysState, Radix};

fn small_radices() -> impl Iterator<Item = Radix> {
    (2..=3).flat_map(|k| (1..=3).map(move |len| Radix::new(k, len).unwrap()))
}

#[test]
fn every_map_is_a_bijection_with_identity_round_trip() {
    for radix in small_radices() {
        let labels = Arc::new(LabelSets::default_for(radix));
        for maps in enumerate_maps(labels).unwrap() {
            let inverse = maps.inverse();
            let mut images = HashSet::new();
            for s in radix.basis() {
                let t = wgd_apply(&maps, &s).unwrap();
                assert_eq!(wgd_inverse_apply(&maps, &t).unwrap(), s);
                assert_eq!(wgd_apply_inverse_maps(&maps, &inverse, &t).unwrap(), s);
                images.insert(t);
            }
            assert_eq!(images.len() as u64, radix.modulus());
        }
    }
}

#[test]
fn conjugated_successors_intertwine_and_obey_power_identity() {
    for radix in small_radices() {
        let labels = Arc::new(LabelSets::default_for(radix));
        let k = u64::from(radix.k());
        for maps in enumerate_maps(labels.clone()).unwrap() {
            for s in radix.basis() {
                let t = wgd_apply(&maps, &s).unwrap();
                for j in 1..=radix.len() {
                    let lhs = conjugated_successor_apply(&maps, j, &t).unwrap();
                    let rhs = wgd_apply(&maps, &qarith_core::successor_apply(j, &s).unwrap()).unwrap();
                    assert_eq!(lhs, rhs);

                    let mut powered = t.clone();
                    for _ in 0..k {
                        powered = conjugated_successor_apply(&maps, j, &powered).unwrap();
                    }
                    let expected = if j < radix.len() {
                        conjugated_successor_apply(&maps, j + 1, &t).unwrap()
                    } else {
                        t.clone()
                    };
                    assert_eq!(powered, expected);

                    let number = number_of_state(&maps, &t).unwrap();
                    let stepped = number_of_state(&maps, &lhs).unwrap();
                    assert_eq!(stepped, oracle_add(number, radix.weight(j).unwrap(), radix).unwrap());
                }
            }
        }
    }
}

#[test]
fn number_assignment_depends_on_the_maps() {
    let radix = Radix::new(2, 2).unwrap();
    let labels = Arc::new(LabelSets::default_for(radix));
    let maps: Vec<_> = enumerate_maps(labels.clone()).unwrap().collect();
    let states: Vec<PhysState> = (0..4)
        .map(|i| PhysState::new(labels.clone(), vec![i % 2, i / 2]).unwrap())
        .collect();
    let witness = states.iter().any(|t| {
        let numbers: HashSet<u64> = maps.iter().map(|m| number_of_state(m, t).unwrap()).collect();
        numbers.len() > 1
    });
    assert!(witness);
}

#[test]
fn conjugated_add_matches_oracle_through_the_map() {
    let radix = Radix::new(2, 2).unwrap();
    let labels = Arc::new(LabelSets::default_for(radix));
    for maps in enumerate_maps(labels).unwrap() {
        for a in 0..4 {
            for b in 0..4 {
                let ta = wgd_apply(&maps, &encode_number(a, radix).unwrap()).unwrap();
                let tb = wgd_apply(&maps, &encode_number(b, radix).unwrap()).unwrap();
                let (left, right) = conjugated_add_apply(&maps, &(ta.clone(), tb)).unwrap();
                assert_eq!(left, ta);
                let sum = oracle_add(a, b, radix).unwrap();
                assert_eq!(wgd_inverse_apply(&maps, &right).unwrap().value(), sum);
            }
        }
    }
}
