use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use ris_radar::linkbudget::{closed_form_max_dual, dual_ris_received_power};
use ris_radar_bench::far_field_dual;

fn element_sum(c: &mut Criterion) {
    let mut group = c.benchmark_group("dual_element_sum");
    for n in [10usize, 28, 46] {
        let (scenario, lam) = far_field_dual(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &scenario, |b, s| {
            b.iter(|| dual_ris_received_power(black_box(s), lam).unwrap())
        });
    }
    group.finish();
}

fn closed_form(c: &mut Criterion) {
    let (scenario, lam) = far_field_dual(46);
    c.bench_function("dual_closed_form_46", |b| {
        b.iter(|| closed_form_max_dual(black_box(&scenario), lam).unwrap())
    });
}

fn phase_synthesis(c: &mut Criterion) {
    let (scenario, lam) = far_field_dual(46);
    c.bench_function("conjugate_phasing_46", |b| {
        b.iter(|| black_box(&scenario).conjugate_phased(lam).unwrap())
    });
}

criterion_group!(benches, element_sum, closed_form, phase_synthesis);
criterion_main!(benches);
