//! Laws of the induced hierarchical functors: filtration monotonicity,
//! order reversal between induced weights, the clustering sandwich, and
//! structural guarantees of the outputs.

mod common;

use common::{expression_suite, random_network, Rng};
use motifclust::functor::FunctorExpr;
use motifclust::motif::UnpointedFamily;
use motifclust::network::{apply_hat, ExtendedNetwork};
use motifclust::Graph;

fn included(smaller: &Graph, larger: &Graph) -> bool {
    smaller.vertices().iter().all(|v| larger.has_vertex(v))
        && smaller.arrows().all(|(a, b)| larger.has_arrow(a, b))
}

fn pointwise_below(smaller: &ExtendedNetwork, larger: &ExtendedNetwork) -> bool {
    smaller.points().iter().all(|x| {
        smaller
            .points()
            .iter()
            .all(|y| smaller.weight(x, y).unwrap() <= larger.weight(x, y).unwrap())
    })
}

#[test]
fn functor_images_of_the_filtration_are_nested() {
    let mut rng = Rng(0xe7_0001);
    let suite = expression_suite();
    for _ in 0..12 {
        let net = random_network(&mut rng, 4, 6, 3);
        let criticals = net.critical_values();
        for (name, expr) in &suite {
            for window in criticals.windows(2) {
                let small = motifclust::evaluate(expr, &net.sublevel(&window[0]));
                let large = motifclust::evaluate(expr, &net.sublevel(&window[1]));
                assert!(
                    included(&small, &large),
                    "{} broke filtration monotonicity on {:?}",
                    name,
                    net
                );
            }
        }
    }
}

/// A larger functor reaches every pair sooner: the induced weights reverse
/// the order.
#[test]
fn induced_weights_reverse_the_functor_order() {
    let mut rng = Rng(0xe7_0002);
    let chains: Vec<(FunctorExpr, FunctorExpr)> = vec![
        (FunctorExpr::LowerSym, FunctorExpr::Id),
        (FunctorExpr::Id, FunctorExpr::UpperSym),
        (FunctorExpr::Id, FunctorExpr::TransClosure),
        (FunctorExpr::Reciprocal, FunctorExpr::NonReciprocal),
    ];
    for _ in 0..25 {
        let net = random_network(&mut rng, 4, 6, 3);
        for (smaller, larger) in &chains {
            let low = apply_hat(larger, &net);
            let high = apply_hat(smaller, &net);
            assert!(
                pointwise_below(&low, &high),
                "induced weights failed to reverse on {:?}",
                net
            );
        }
    }
}

/// Every clustering functor satisfying the axiom of value lands between
/// the non-reciprocal and reciprocal induced weights.
#[test]
fn clustering_sandwich_on_induced_weights() {
    let mut rng = Rng(0xe7_0003);
    let middles = [
        FunctorExpr::Reciprocal,
        FunctorExpr::NonReciprocal,
        FunctorExpr::SemiReciprocal(2),
        FunctorExpr::compose(
            FunctorExpr::TransClosure,
            FunctorExpr::Motif(UnpointedFamily::new([Graph::cycle(3)])),
        ),
    ];
    for _ in 0..25 {
        let net = random_network(&mut rng, 4, 6, 2);
        let lower = apply_hat(&FunctorExpr::NonReciprocal, &net);
        let upper = apply_hat(&FunctorExpr::Reciprocal, &net);
        for expr in &middles {
            let mid = apply_hat(expr, &net);
            assert!(pointwise_below(&lower, &mid));
            assert!(pointwise_below(&mid, &upper));
        }
    }
}

#[test]
fn induced_outputs_have_the_expected_structure() {
    let mut rng = Rng(0xe7_0004);
    for _ in 0..20 {
        let net = random_network(&mut rng, 4, 6, 3);
        // Closed compositions produce ultranetworks.
        for expr in [
            FunctorExpr::Reciprocal,
            FunctorExpr::NonReciprocal,
            FunctorExpr::Unilateral,
            FunctorExpr::TransClosure,
        ] {
            let out = apply_hat(&expr, &net);
            assert!(out.flags().is_ultra, "{:?} output not ultra", expr);
        }
        // Motif functors produce symmetric weights.
        let motif = FunctorExpr::Motif(UnpointedFamily::new([Graph::complete(2), Graph::cycle(3)]));
        assert!(apply_hat(&motif, &net).flags().is_symmetric);
    }
}

/// Clustering outputs admit treegrams, and the treegram inverts back to
/// the induced ultranetwork.
#[test]
fn induced_treegrams_round_trip() {
    let mut rng = Rng(0xe7_0005);
    for _ in 0..30 {
        let net = random_network(&mut rng, 5, 6, 3);
        let clustered = apply_hat(&FunctorExpr::NonReciprocal, &net);
        let treegram = clustered.treegram().unwrap();
        for x in clustered.points() {
            for y in clustered.points() {
                assert_eq!(
                    &treegram.merge_level(x, y).unwrap(),
                    clustered.weight(x, y).unwrap()
                );
            }
        }
    }
}
