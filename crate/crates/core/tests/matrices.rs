use qarith_core::operator::{
    check_unitary, conjugate_by, extract_hamiltonian, haar_unitary_seeded, projector_exact, shift_exact,
    successor_literal_exact, successor_matrix, successor_permutation, HERMITIAN_TOLERANCE,
};
use qarith_core::{ExactMatrix, Radix};

fn radices_up_to(cap: u64) -> Vec<Radix> {
    let mut out = Vec::new();
    for k in 2..=16u32 {
        for len in 1..=8 {
            if let Ok(r) = Radix::new(k, len) {
                if r.modulus() <= cap {
                    out.push(r);
                }
            }
        }
    }
    out
}

#[test]
fn literal_sum_equals_carry_chain_up_to_256() {
    for radix in radices_up_to(256) {
        for j in 1..=radix.len() {
            let literal = successor_literal_exact(j, radix).unwrap();
            let chain = successor_permutation(j, radix).unwrap();
            assert_eq!(literal.as_permutation().as_ref(), Some(&chain), "{radix} j={j}");
            assert_eq!(literal.orthogonality_residual(), 0);
        }
    }
}

#[test]
fn power_identity_as_exact_matrices() {
    for radix in radices_up_to(64) {
        let k = u64::from(radix.k());
        let matrices: Vec<ExactMatrix> =
            (1..=radix.len()).map(|j| successor_literal_exact(j, radix).unwrap()).collect();
        for (i, v) in matrices.iter().enumerate() {
            let powered = v.pow(k);
            match matrices.get(i + 1) {
                Some(next) => assert_eq!(&powered, next, "{radix} j={}", i + 1),
                None => assert_eq!(powered, ExactMatrix::identity(v.dim())),
            }
        }
    }
}

#[test]
fn factor_commutation_relations() {
    for radix in [Radix::new(2, 3).unwrap(), Radix::new(3, 2).unwrap(), Radix::new(4, 2).unwrap()] {
        let k = radix.k();
        for m in 1..=radix.len() {
            let u = shift_exact(m, radix).unwrap();
            for p in 0..k {
                let lhs = u.mul(&projector_exact(p, m, radix).unwrap());
                let rhs = projector_exact((p + 1) % k, m, radix).unwrap().mul(&u);
                assert_eq!(lhs, rhs);
            }
            for n in (1..=radix.len()).filter(|&n| n != m) {
                let un = shift_exact(n, radix).unwrap();
                for p in 0..k {
                    for q in 0..k {
                        let a = u.mul(&projector_exact(p, m, radix).unwrap());
                        let b = un.mul(&projector_exact(q, n, radix).unwrap());
                        assert_eq!(a.mul(&b), b.mul(&a));
                    }
                }
            }
        }
    }
}

#[test]
fn hamiltonian_round_trip_for_small_successors() {
    for (k, max_len) in [(2, 3), (3, 2)] {
        for len in 1..=max_len {
            let radix = Radix::new(k, len).unwrap();
            for j in 1..=len {
                let v = successor_matrix(j, radix).unwrap();
                let h = extract_hamiltonian(&v, 1.0).unwrap();
                assert!(h.hermiticity_residual() <= HERMITIAN_TOLERANCE);
                assert!(h.evolve().distance(&v) <= 1e-9, "{radix} j={j}");
            }
        }
    }
}

#[test]
fn hamiltonian_of_conjugated_successor() {
    let radix = Radix::new(2, 3).unwrap();
    let u = haar_unitary_seeded(8, 3).unwrap();
    for j in 1..=3 {
        let v = conjugate_by(&successor_matrix(j, radix).unwrap(), &u).unwrap();
        assert!(check_unitary(&v).unitary);
        let h = extract_hamiltonian(&v, 2.0).unwrap();
        assert!(h.hermiticity_residual() <= HERMITIAN_TOLERANCE);
        assert!(h.evolve().distance(&v) <= 1e-9);
    }
}
