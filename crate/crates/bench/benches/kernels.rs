//! Criterion benchmarks for the hot kernels: Buchberger, colon/intersect,
//! the Rees construction, and resolution with regularity extraction.

use criterion::{criterion_group, criterion_main, Criterion};

use lintype_core::{
    cycle_path_ideal, free_resolution, is_d_sequence, parse_polynomial, parse_ring, pfaffian_sequence,
    rees_ideal, reg_xy, IdealHandle, MonomialOrder, Polynomial, RingDescriptor,
};

fn parse_seq(ring_src: &str, gens: &[&str]) -> (RingDescriptor, Vec<Polynomial>) {
    let rd = parse_ring(ring_src).unwrap();
    let gens = gens.iter().map(|s| parse_polynomial(s, &rd.ring).unwrap()).collect();
    (rd, gens)
}

fn bench_buchberger(c: &mut Criterion) {
    let (rd, gens) = parse_seq(
        "ring QQ[x,y,z,w];",
        &["x*y - z*w", "x^2*z - y*w^2", "y^2*w - x*z^2", "z^3 - x*y*w"],
    );
    c.bench_function("buchberger_4var_grevlex", |b| {
        b.iter(|| {
            lintype_core::buchberger_in(&rd.ring, std::hint::black_box(&gens), &MonomialOrder::Grevlex)
        })
    });
}

fn bench_colon_intersect(c: &mut Criterion) {
    let (rd, gens) = parse_seq("ring QQ[x1,x2,x3];", &["x2*x3", "x1*x3 + x1*x2", "x1*x2"]);
    let d = parse_polynomial("x1*x2", &rd.ring).unwrap();
    c.bench_function("colon_then_intersect", |b| {
        b.iter(|| {
            let prefix = IdealHandle::in_base(&rd, gens[..2].to_vec());
            let full = IdealHandle::in_base(&rd, gens.clone());
            let colon = prefix.colon(std::hint::black_box(&d)).unwrap();
            colon.intersect(&full).unwrap()
        })
    });
}

fn bench_rees_regularity(c: &mut Criterion) {
    let (_, gens) = cycle_path_ideal(5, 3).unwrap();
    c.bench_function("rees_reg_y_c5_path", |b| {
        b.iter(|| {
            let pres = rees_ideal(std::hint::black_box(&gens)).unwrap();
            let res = free_resolution(&pres).unwrap();
            reg_xy(&res).unwrap()
        })
    });
}

fn bench_pfaffian_d_sequence(c: &mut Criterion) {
    let (ring, gens) = pfaffian_sequence(2).unwrap();
    let base = RingDescriptor::plain(ring);
    c.bench_function("pfaffian_d_sequence", |b| {
        b.iter(|| is_d_sequence(std::hint::black_box(&gens), &base).unwrap())
    });
}

criterion_group!(
    benches,
    bench_buchberger,
    bench_colon_intersect,
    bench_rees_regularity,
    bench_pfaffian_d_sequence
);
criterion_main!(benches);
