//! Cross-module invariants: the algebra, its matrix realization, and the
//! centralizer solvers must tell the same story.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use clg_core::clifford::{self, centralizer_bruteforce, indices, interleaved_probes};
use clg_core::matrixrep::{
    clock, matrix_centralizer, rep_element, shift, verify_relations, RepAssignment,
};
use clg_core::{CliffordElement, CycField, GeneratorIndex, Word};

fn random_element(rng: &mut ChaCha8Rng, f: &CycField, idx: &[GeneratorIndex]) -> CliffordElement {
    let l = f.level() as i64;
    let mut e = CliffordElement::zero(f);
    for _ in 0..rng.gen_range(0..=4) {
        let w = Word::new(
            (0..rng.gen_range(0..=6))
                .map(|_| (idx[rng.gen_range(0..idx.len())].clone(), rng.gen_range(-l..=l)))
                .collect(),
        );
        let c = f.root_power(rng.gen_range(0..l)) * f.from_int(rng.gen_range(-2..=2));
        e = e.add(&clifford::normal_form(&w, f).scale(&c)).unwrap();
    }
    e
}

#[test]
fn realization_is_a_homomorphism() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for l in 2..=4u32 {
        let f = CycField::new(l).unwrap();
        for n in 1..=3usize {
            let rep = RepAssignment::standard(n, &f);
            let idx = rep.indices().to_vec();
            for _ in 0..8 {
                let a = random_element(&mut rng, &f, &idx);
                let b = random_element(&mut rng, &f, &idx);
                let (ra, rb) = (rep_element(&a, &rep).unwrap(), rep_element(&b, &rep).unwrap());
                assert_eq!(rep_element(&a.mul(&b).unwrap(), &rep).unwrap(), ra.mul(&rb).unwrap());
                assert_eq!(rep_element(&a.add(&b).unwrap(), &rep).unwrap(), ra.add(&rb).unwrap());
            }
        }
    }
}

#[test]
fn relations_hold_on_rational_indices() {
    for l in 2..=7u32 {
        let f = CycField::new(l).unwrap();
        for n in 1..=3usize {
            assert!(verify_relations(&RepAssignment::standard(n, &f)).unwrap().ok, "l={l} n={n}");
        }
        let idx = vec![GeneratorIndex::new(-1, 2), GeneratorIndex::new(1, 3), GeneratorIndex::from(4)];
        assert!(verify_relations(&RepAssignment::on_indices(idx, &f)).unwrap().ok, "l={l}");
    }
}

#[test]
fn clock_and_shift_have_scalar_centralizer() {
    for l in 2..=6u32 {
        let f = CycField::new(l).unwrap();
        let c = matrix_centralizer(&f, &[clock(&f), shift(&f)], l as usize).unwrap();
        assert_eq!(c.dimension, 1, "l={l}");
    }
}

#[test]
fn algebra_centralizer_maps_into_matrix_centralizer() {
    for l in 2..=4u32 {
        let f = CycField::new(l).unwrap();
        for n in 1..=2i64 {
            let ambient = indices(&(1..=n).collect::<Vec<_>>());
            let probes = interleaved_probes(&ambient);
            let mut all = ambient.clone();
            all.extend(probes.iter().cloned());
            let rep = RepAssignment::on_indices(all, &f);
            for a in centralizer_bruteforce(&ambient, &probes, &f).unwrap() {
                let ra = rep_element(&a, &rep).unwrap();
                for p in &probes {
                    let rp = rep.image_of(p).unwrap();
                    assert!(ra.commutator(rp).unwrap().to_sparse_vec().is_empty(), "l={l} n={n}: {a}");
                }
            }
        }
    }
}
