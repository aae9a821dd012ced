use criterion::{black_box, criterion_group, criterion_main, Criterion};

use rocmem_core::{
    estimate_roc, exhaustive_probability, fit_curve, mroc_curve, overall_probabilities,
    recall_probability, roc_curve, CurveKind, DecoderKind, EmpiricalPoint, SignumVariant,
};

const MINUS: SignumVariant = SignumVariant::MinusAtThreshold;

fn bench_closed_forms(c: &mut Criterion) {
    c.bench_function("recall_probability n=9 m=7 theta=0", |b| {
        b.iter(|| recall_probability(black_box(7), black_box(9), black_box(0), MINUS).unwrap())
    });
    c.bench_function("recall_probability n=1001 m=600 theta=1", |b| {
        b.iter(|| recall_probability(black_box(600), black_box(1001), black_box(1), MINUS).unwrap())
    });
}

fn bench_curves(c: &mut Criterion) {
    c.bench_function("roc_curve n=9 m=7", |b| {
        b.iter(|| roc_curve(black_box(9), black_box(7), MINUS).unwrap())
    });
    c.bench_function("mroc_curve n=64 m=21", |b| {
        b.iter(|| mroc_curve(black_box(64), black_box(21), MINUS).unwrap())
    });
    c.bench_function("overall_probabilities n=12 m=5", |b| {
        b.iter(|| overall_probabilities(black_box(12), black_box(5), MINUS).unwrap())
    });
}

fn bench_oracles(c: &mut Criterion) {
    c.bench_function("exhaustive_probability n=9 m=7 theta=0", |b| {
        b.iter(|| {
            exhaustive_probability(black_box(9), black_box(7), black_box(0), MINUS, DecoderKind::Convolution)
                .unwrap()
        })
    });
    c.bench_function("estimate_roc n=9 m=7 trials=10000", |b| {
        b.iter(|| estimate_roc(black_box(9), black_box(7), MINUS, black_box(10_000), 7).unwrap())
    });
}

fn bench_fit(c: &mut Criterion) {
    let curve = roc_curve(9, 7, MINUS).unwrap();
    let points: Vec<EmpiricalPoint> = curve
        .points
        .iter()
        .filter(|p| !p.false_alarm.is_one())
        .map(|p| EmpiricalPoint::new(p.false_alarm.to_f64(), p.hit.to_f64(), None).unwrap())
        .collect();
    c.bench_function("fit_curve n=9 nine points", |b| {
        b.iter(|| fit_curve(black_box(&points), 9, MINUS, CurveKind::Roc, 1e-9).unwrap())
    });
}

criterion_group!(benches, bench_closed_forms, bench_curves, bench_oracles, bench_fit);
criterion_main!(benches);
