use criterion::{black_box, criterion_group, criterion_main, Criterion};

use icpi_core::lattice::normal_subgroups;
use icpi_core::properties::check_property;
use icpi_core::{GroupSpec, PropertyKind};

// Groups are rebuilt inside each iteration so memoized results never leak
// between samples.

fn order(c: &mut Criterion) {
    let mut g = c.benchmark_group("schreier_sims");
    for name in ["Sym(6)", "Alt(5)xCyc(5)", "Sym(4)xDih(8)"] {
        let spec = GroupSpec::builtin(name).unwrap();
        g.bench_function(name, |b| {
            b.iter(|| black_box(spec.build().unwrap().order()))
        });
    }
    g.finish();
}

fn normals(c: &mut Criterion) {
    let mut g = c.benchmark_group("normal_subgroups");
    for name in ["Sym(4)xCyc(2)", "Alt(5)xCyc(5)"] {
        let spec = GroupSpec::builtin(name).unwrap();
        g.bench_function(name, |b| {
            b.iter(|| {
                let grp = spec.build().unwrap();
                black_box(normal_subgroups(&grp).unwrap().len())
            })
        });
    }
    g.finish();
}

fn properties(c: &mut Criterion) {
    let spec = GroupSpec::builtin("Alt(5)xCyc(5)").unwrap();
    let mut g = c.benchmark_group("property");
    for kind in [PropertyKind::Pi, PropertyKind::IcPi] {
        g.bench_function(format!("{kind} on Alt(5)xCyc(5)"), |b| {
            b.iter(|| {
                let grp = spec.build().unwrap();
                let h = grp
                    .subgroup_from_texts(&["(1,2,3,4,5)(6,7,8,9,10)"])
                    .unwrap();
                black_box(check_property(&grp, &h, kind, None).unwrap().holds)
            })
        });
    }
    g.finish();
}

criterion_group!(benches, order, normals, properties);
criterion_main!(benches);
