//! Shared test support: an independent brute-force homomorphism oracle, a
//! deterministic RNG, random generators for graphs, motifs, families and
//! networks, and the expression suite the theorem tests quantify over.

#![allow(dead_code)]

use motifclust::functor::FunctorExpr;
use motifclust::motif::{PointedFamily, UnpointedFamily};
use motifclust::network::{ExtReal, ExtendedNetwork};
use motifclust::{Graph, PointedGraph};

/// SplitMix64; deterministic across platforms and releases.
#[derive(Debug, Clone)]
pub struct Rng(pub u64);

impl Rng {
    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, bound: usize) -> usize {
        (self.next_u64() % bound as u64) as usize
    }

    pub fn chance(&mut self, num: usize, den: usize) -> bool {
        self.below(den) < num
    }
}

/// Exhaustive check for a graph map from `motif` to `target` satisfying the
/// pins, by enumerating every vertex assignment. Kept deliberately naive:
/// this is the oracle the search is tested against.
pub fn brute_force_hom(motif: &Graph, target: &Graph, pins: &[(&str, &str)]) -> bool {
    let mv: Vec<&String> = motif.vertices().iter().collect();
    let tv: Vec<&String> = target.vertices().iter().collect();
    if mv.is_empty() {
        return true;
    }
    if tv.is_empty() {
        return false;
    }
    let mut assignment = vec![0usize; mv.len()];
    loop {
        let ok_pins = pins.iter().all(|(m, t)| {
            let mi = mv
                .iter()
                .position(|v| v.as_str() == *m)
                .expect("pin in motif");
            tv[assignment[mi]].as_str() == *t
        });
        if ok_pins {
            let ok_arrows = motif.arrows().all(|(a, b)| {
                let ai = mv.iter().position(|v| v.as_str() == a).unwrap();
                let bi = mv.iter().position(|v| v.as_str() == b).unwrap();
                target.arrow_or_equal(tv[assignment[ai]], tv[assignment[bi]])
            });
            if ok_arrows {
                return true;
            }
        }
        // Next assignment.
        let mut i = 0;
        loop {
            if i == assignment.len() {
                return false;
            }
            assignment[i] += 1;
            if assignment[i] < tv.len() {
                break;
            }
            assignment[i] = 0;
            i += 1;
        }
    }
}

/// Oracle for the hitting form: some assignment is a graph map whose image
/// contains both targets.
pub fn brute_force_hitting(motif: &Graph, target: &Graph, a: &str, b: &str) -> bool {
    let mv: Vec<&String> = motif.vertices().iter().collect();
    let tv: Vec<&String> = target.vertices().iter().collect();
    if mv.is_empty() || tv.is_empty() {
        return false;
    }
    let mut assignment = vec![0usize; mv.len()];
    loop {
        let image_ok = assignment.iter().any(|&t| tv[t].as_str() == a)
            && assignment.iter().any(|&t| tv[t].as_str() == b);
        if image_ok {
            let ok_arrows = motif.arrows().all(|(p, q)| {
                let pi = mv.iter().position(|v| v.as_str() == p).unwrap();
                let qi = mv.iter().position(|v| v.as_str() == q).unwrap();
                target.arrow_or_equal(tv[assignment[pi]], tv[assignment[qi]])
            });
            if ok_arrows {
                return true;
            }
        }
        let mut i = 0;
        loop {
            if i == assignment.len() {
                return false;
            }
            assignment[i] += 1;
            if assignment[i] < tv.len() {
                break;
            }
            assignment[i] = 0;
            i += 1;
        }
    }
}

/// A random graph on `n` vertices with arrow probability `num/den`.
pub fn random_graph(rng: &mut Rng, n: usize, num: usize, den: usize) -> Graph {
    let vertices: Vec<String> = (1..=n).map(|i| format!("a{}", i)).collect();
    let mut arrows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j && rng.chance(num, den) {
                arrows.push((vertices[i].clone(), vertices[j].clone()));
            }
        }
    }
    Graph::new(vertices, arrows).expect("endpoints are declared")
}

/// A random graph with `1..=max_n` vertices.
pub fn random_graph_up_to(rng: &mut Rng, max_n: usize, num: usize, den: usize) -> Graph {
    let n = 1 + rng.below(max_n);
    random_graph(rng, n, num, den)
}

/// A random pointed motif with at most `max_vertices` vertices and at most
/// `max_arrows` arrows.
pub fn random_pointed_motif(rng: &mut Rng, max_vertices: usize, max_arrows: usize) -> PointedGraph {
    let n = 1 + rng.below(max_vertices);
    let vertices: Vec<String> = (1..=n).map(|i| format!("a{}", i)).collect();
    let mut slots = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                slots.push((vertices[i].clone(), vertices[j].clone()));
            }
        }
    }
    let mut arrows = Vec::new();
    for _ in 0..rng.below(max_arrows + 1) {
        if !slots.is_empty() {
            arrows.push(slots[rng.below(slots.len())].clone());
        }
    }
    let graph = Graph::new(vertices.clone(), arrows).expect("endpoints are declared");
    let z = vertices[rng.below(n)].clone();
    let zh = vertices[rng.below(n)].clone();
    PointedGraph::new(graph, &z, &zh).expect("marks are vertices")
}

pub fn random_pointed_family(
    rng: &mut Rng,
    max_size: usize,
    max_vertices: usize,
    max_arrows: usize,
) -> PointedFamily {
    let size = 1 + rng.below(max_size);
    PointedFamily::new((0..size).map(|_| random_pointed_motif(rng, max_vertices, max_arrows)))
}

/// A random integer-weight network on `n` points, weights in `0..max_w`
/// off the diagonal and `0..max_diag` on it.
pub fn random_network(rng: &mut Rng, n: usize, max_w: usize, max_diag: usize) -> ExtendedNetwork {
    let points: Vec<String> = (1..=n).map(|i| format!("x{}", i)).collect();
    let rows: Vec<Vec<ExtReal>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let w = if i == j {
                        rng.below(max_diag.max(1))
                    } else {
                        rng.below(max_w.max(1))
                    };
                    ExtReal::from(w as i64)
                })
                .collect()
        })
        .collect();
    ExtendedNetwork::new(points, rows).expect("square integer matrix")
}

fn unpointed(graphs: impl IntoIterator<Item = Graph>) -> FunctorExpr {
    FunctorExpr::Motif(UnpointedFamily::new(graphs))
}

fn pointed(entries: impl IntoIterator<Item = (Graph, &'static str, &'static str)>) -> FunctorExpr {
    FunctorExpr::PointedMotif(PointedFamily::new(
        entries
            .into_iter()
            .map(|(g, z, zh)| PointedGraph::new(g, z, zh).expect("marks are vertices")),
    ))
}

/// The out-fork motif: one source pointing at two sinks.
pub fn fork_graph() -> Graph {
    Graph::new(["a", "b", "c"], [("a", "b"), ("a", "c")]).unwrap()
}

/// The builtin functors that the additivity law quantifies over (full
/// completion excepted: it is the one non-additive builtin).
pub fn additive_builtins() -> Vec<(&'static str, FunctorExpr)> {
    vec![
        ("disc", FunctorExpr::Disc),
        ("conn", FunctorExpr::Conn),
        ("rev", FunctorExpr::Rev),
        ("ls", FunctorExpr::LowerSym),
        ("id", FunctorExpr::Id),
        ("us", FunctorExpr::UpperSym),
        ("power:2", FunctorExpr::Power(2)),
        ("power:3", FunctorExpr::Power(3)),
        ("tc", FunctorExpr::TransClosure),
        ("rec", FunctorExpr::Reciprocal),
        ("nrec", FunctorExpr::NonReciprocal),
        ("uni", FunctorExpr::Unilateral),
        ("semirec:2", FunctorExpr::SemiReciprocal(2)),
    ]
}

/// The expressions the theorem suites quantify over: every builtin, a few
/// composites and unions, and a spread of motif functors.
pub fn expression_suite() -> Vec<(&'static str, FunctorExpr)> {
    let mut suite = additive_builtins();
    suite.push(("comp", FunctorExpr::Comp));
    suite.push((
        "ls.power:2",
        FunctorExpr::compose(FunctorExpr::LowerSym, FunctorExpr::Power(2)),
    ));
    suite.push((
        "us+tc",
        FunctorExpr::union(FunctorExpr::UpperSym, FunctorExpr::TransClosure),
    ));
    suite.push((
        "tc.ls",
        FunctorExpr::compose(FunctorExpr::TransClosure, FunctorExpr::LowerSym),
    ));
    suite.push((
        "tc.tc",
        FunctorExpr::compose(FunctorExpr::TransClosure, FunctorExpr::TransClosure),
    ));
    suite.push((
        "tc.id",
        FunctorExpr::compose(FunctorExpr::TransClosure, FunctorExpr::Id),
    ));
    suite.push(("motif:{K2}", unpointed([Graph::complete(2)])));
    suite.push(("motif:{D2}", unpointed([Graph::discrete(2)])));
    suite.push(("motif:{L2}", unpointed([Graph::line(2)])));
    suite.push(("motif:{C3}", unpointed([Graph::cycle(3)])));
    suite.push((
        "motif:{C2,C3}",
        unpointed([Graph::cycle(2), Graph::cycle(3)]),
    ));
    suite.push(("motif:{fork}", unpointed([fork_graph()])));
    suite.push((
        "tc.motif:{C3}",
        FunctorExpr::compose(FunctorExpr::TransClosure, unpointed([Graph::cycle(3)])),
    ));
    suite.push((
        "pmotif:{(C3,a2,a3)}",
        pointed([(Graph::cycle(3), "a2", "a3")]),
    ));
    suite.push((
        "pmotif:{(L3,a1,a3)}",
        pointed([(Graph::line(3), "a1", "a3")]),
    ));
    suite
}
