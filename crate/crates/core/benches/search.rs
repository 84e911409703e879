use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use terrace_core::enumerate::{enumerate_basic_with, EnumConfig, EnumKind, EnumMode};
use terrace_core::groups::parse_group_spec;
use terrace_core::hillclimb::{climb_many, ClimbMode, ClimbParams};
use terrace_core::orbit::{explore_chain_with, OrbitConfig};
use terrace_core::par::Exec;
use terrace_core::props::walecki;

const EXECS: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate");
    group.sample_size(10);
    for (spec, kind) in [("Z11", EnumKind::Terrace), ("D12", EnumKind::Directed), ("Q12", EnumKind::Terrace)] {
        let g = parse_group_spec(spec).unwrap();
        for (name, exec) in EXECS {
            let cfg = EnumConfig { exec, ..EnumConfig::default() };
            group.bench_with_input(BenchmarkId::new(name, format!("{spec}/{kind}")), &g, |b, g| {
                b.iter(|| enumerate_basic_with(g, EnumMode::count(kind), &cfg).unwrap().raw_count)
            });
        }
    }
    group.finish();
}

fn climbs(c: &mut Criterion) {
    let mut group = c.benchmark_group("climb_8_seeds");
    let seeds: Vec<u64> = (0..8).collect();
    for (spec, mode) in [("Q32", ClimbMode::Directed), ("D24", ClimbMode::Directed), ("D12", ClimbMode::Terrace)] {
        let g = parse_group_spec(spec).unwrap();
        let params = ClimbParams { mode, ..ClimbParams::default() };
        for (name, exec) in EXECS {
            group.bench_with_input(BenchmarkId::new(name, format!("{spec}/{mode:?}")), &g, |b, g| {
                b.iter(|| climb_many(g, &params, black_box(&seeds), exec).unwrap())
            });
        }
    }
    group.finish();
}

fn chains(c: &mut Criterion) {
    let mut group = c.benchmark_group("chain_z12");
    group.sample_size(10);
    let g = parse_group_spec("Z12").unwrap();
    let start = walecki(12);
    for (name, exec) in EXECS {
        let cfg = OrbitConfig { exec, ..OrbitConfig::default() };
        group.bench_function(name, |b| {
            b.iter(|| explore_chain_with(&g, &start, 2_000, |_, _| false, &cfg).unwrap().visited)
        });
    }
    group.finish();
}

criterion_group!(benches, enumeration, climbs, chains);
criterion_main!(benches);
