use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use motifclust::homsearch::{hom_exists_hitting, pointed_hom_exists};
use motifclust::{Graph, PointedGraph};

/// A fixed pseudo-random 6-vertex graph, moderately sparse.
fn target() -> Graph {
    let vertices: Vec<String> = (1..=6).map(|i| format!("v{}", i)).collect();
    let mut arrows = Vec::new();
    let mut state: u64 = 0x9e3779b97f4a7c15;
    for i in 0..6 {
        for j in 0..6 {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
            if i != j && (state >> 33).is_multiple_of(3) {
                arrows.push((vertices[i].clone(), vertices[j].clone()));
            }
        }
    }
    Graph::new(vertices, arrows).unwrap()
}

fn bench_pointed(c: &mut Criterion) {
    let g = target();
    let motif = PointedGraph::new(Graph::cycle(8), "a1", "a5").unwrap();
    c.bench_function("pointed hom, eight-cycle into six vertices", |b| {
        b.iter(|| {
            let mut hits = 0;
            for v in g.vertices() {
                for vp in g.vertices() {
                    if pointed_hom_exists(black_box(&motif), &g, v, vp).unwrap() {
                        hits += 1;
                    }
                }
            }
            hits
        })
    });
}

fn bench_hitting(c: &mut Criterion) {
    let g = target();
    let motif = Graph::cycle(10);
    c.bench_function("hitting hom, ten-cycle into six vertices", |b| {
        b.iter(|| {
            let mut hits = 0;
            for v in g.vertices() {
                for vp in g.vertices() {
                    if hom_exists_hitting(black_box(&motif), &g, v, vp).unwrap() {
                        hits += 1;
                    }
                }
            }
            hits
        })
    });
}

criterion_group!(benches, bench_pointed, bench_hitting);
criterion_main!(benches);
