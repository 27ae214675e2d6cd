use criterion::{black_box, criterion_group, criterion_main, Criterion};
use plcat::ainfty::minimal_model;
use plcat::fixtures::{a_g, a_g_sphere, beilinson, cp2, Dynkin};
use plcat::gf2::Matrix;
use plcat::hochschild::hh;
use plcat::mutation::{apply_c, run_script, Script};
use plcat::spherical::braid_check;
use plcat::twcx::TwistedComplex;
use plcat::zerodim::{chain_configuration, cone_triangle_check, fukaya, hurwitz_search, GradedZeroSphere};
use plcat::Grading;

fn gf2(c: &mut Criterion) {
    let n = 256;
    let m = Matrix::from_fn(n, n, |i, j| (i * 31 + j * 17 + i * j) % 5 < 2);
    c.bench_function("rank 256x256", |b| b.iter(|| black_box(&m).rank()));
}

fn hochschild(c: &mut Criterion) {
    let mutated = run_script(&beilinson(), &"r r r".parse::<Script>().unwrap()).unwrap();
    c.bench_function("hh cp2", |b| b.iter(|| hh(black_box(&cp2()))));
    c.bench_function("hh E6", |b| {
        let e6 = Dynkin::E(6).category(0);
        b.iter(|| hh(black_box(&e6)))
    });
    c.bench_function("hh beilinson r r r", |b| b.iter(|| hh(black_box(&mutated))));
}

fn mutation(c: &mut Criterion) {
    let cat = beilinson();
    c.bench_function("minimal model of c-move on beilinson", |b| b.iter(|| minimal_model(&apply_c(black_box(&cat)))));
    let script: Script = "c r c! shift 1,0,0".parse().unwrap();
    c.bench_function("script on cp2", |b| b.iter(|| run_script(black_box(&cp2()), &script).unwrap()));
}

fn spherical(c: &mut Criterion) {
    let cat = a_g(2, Grading::Z);
    let gens: Vec<_> = (0..cat.m()).map(|i| TwistedComplex::object(&cat, i)).collect();
    let (c1, c2) = (a_g_sphere(&cat, 1), a_g_sphere(&cat, 2));
    c.bench_function("braid check C1 C2", |b| b.iter(|| braid_check(&cat, &c1, &c2, black_box(&gens))));
}

fn zerodim(c: &mut Criterion) {
    let s = |p, q, gp, gq| GradedZeroSphere::new(p, q, gp, gq).unwrap();
    let (l, l1, l2) = (s(1, 2, 0, 1), s(2, 3, -1, 0), s(1, 3, 0, 0));
    c.bench_function("triangle check", |b| b.iter(|| cone_triangle_check(black_box(&l), &l1, &l2)));
    let cfg = chain_configuration(5, 0);
    c.bench_function("fukaya A5", |b| b.iter(|| fukaya(black_box(&cfg))));
    let (from, to) = (chain_configuration(4, 0), chain_configuration(4, 5));
    c.bench_function("hurwitz search A4", |b| b.iter(|| hurwitz_search(black_box(&from), &to, 8)));
}

criterion_group!(benches, gf2, hochschild, mutation, spherical, zerodim);
criterion_main!(benches);
