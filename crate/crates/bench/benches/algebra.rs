use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use clg_core::clifford::{centralizer_bruteforce, centralizer_congruence, indices, interleaved_probes, normal_form};
use clg_core::matrixrep::{faithfulness_check, jw_generator, spanned_dimension};
use clg_core::{CycField, SteinitzNumber, Word};

fn cyclotomic(c: &mut Criterion) {
    let f = CycField::new(105).unwrap();
    let a = f.parse_elem("1/2 - 3*z^2 + z^7 + 5*z^40").unwrap();
    let b = f.parse_elem("2 + z - 7/3*z^11").unwrap();
    c.bench_function("cyclotomic mul l=105", |bench| bench.iter(|| black_box(&a) * black_box(&b)));
    c.bench_function("cyclotomic inv l=105", |bench| bench.iter(|| black_box(&a).inv().unwrap()));
}

fn rewriting(c: &mut Criterion) {
    let f = CycField::new(5).unwrap();
    let w: Word = "x3 x1^2 x5 x2^-1 x4 x1 x3^3 x2 x5^2 x1/2 x4^-2 x2".parse().unwrap();
    c.bench_function("normal form, 12 letters, l=5", |bench| bench.iter(|| normal_form(black_box(&w), &f)));
}

fn centralizers(c: &mut Criterion) {
    let f = CycField::new(5).unwrap();
    let ambient = indices(&[1, 2, 3]);
    let probes = interleaved_probes(&ambient);
    c.bench_function("centralizer congruence l=5 n=3", |bench| {
        bench.iter(|| centralizer_congruence(black_box(&ambient), &probes, 5))
    });
    c.bench_function("centralizer brute force l=5 n=3", |bench| {
        bench.iter(|| centralizer_bruteforce(black_box(&ambient), &probes, &f).unwrap())
    });
}

fn matrices(c: &mut Criterion) {
    let f = CycField::new(7).unwrap();
    let gens = [jw_generator(1, 2, &f), jw_generator(2, 2, &f)];
    c.bench_function("spanned dimension l=7", |bench| bench.iter(|| spanned_dimension(black_box(&gens)).unwrap()));
    let f3 = CycField::new(3).unwrap();
    c.bench_function("faithfulness l=3 n=4", |bench| bench.iter(|| faithfulness_check(4, black_box(&f3)).unwrap()));
}

fn steinitz(c: &mut Criterion) {
    let a: SteinitzNumber = "2^inf * 3^4 * 11 * rest^1".parse().unwrap();
    let b: SteinitzNumber = "2 * 3^inf * 7^2".parse().unwrap();
    c.bench_function("steinitz lcm", |bench| bench.iter(|| black_box(&a).lcm(black_box(&b))));
    c.bench_function("steinitz chain 2..2^40", |bench| {
        bench.iter(|| SteinitzNumber::lcm_of_sequence((1..=40).map(|k| 1u64 << k)).unwrap())
    });
}

criterion_group!(benches, cyclotomic, rewriting, centralizers, matrices, steinitz);
criterion_main!(benches);
