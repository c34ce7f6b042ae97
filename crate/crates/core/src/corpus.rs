//! Exhaustive enumeration of small graphs, used for motif extraction and
//! for the theorem test suites.

use crate::graph::Graph;
use crate::iso;

/// All labeled graphs on vertices `a1..an` (there are `2^(n(n-1))` of them).
pub fn labeled_graphs(n: usize) -> Vec<Graph> {
    assert!(
        (1..=5).contains(&n),
        "labeled enumeration is for 1..=5 vertices"
    );
    let vertices: Vec<String> = (1..=n).map(|i| format!("a{}", i)).collect();
    let mut slots = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                slots.push((vertices[i].clone(), vertices[j].clone()));
            }
        }
    }
    let mut out = Vec::with_capacity(1 << slots.len());
    for mask in 0u64..(1 << slots.len()) {
        let arrows = slots
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, a)| a.clone());
        out.push(Graph::new(vertices.clone(), arrows).expect("endpoints are declared"));
    }
    out
}

/// One representative per isomorphism class of graphs with `1..=max_n`
/// vertices, in a deterministic order.
pub fn graphs_up_to_iso(max_n: usize) -> Vec<Graph> {
    assert!(
        (1..=5).contains(&max_n),
        "exhaustive corpus is for 1..=5 vertices"
    );
    let mut reps: Vec<Graph> = Vec::new();
    // Bucket by a cheap invariant so each candidate is only compared
    // against plausible duplicates.
    let mut buckets: std::collections::BTreeMap<Vec<u64>, Vec<usize>> =
        std::collections::BTreeMap::new();
    for n in 1..=max_n {
        for g in labeled_graphs(n) {
            let key = iso::invariant_key(&g, None);
            let entries = buckets.entry(key).or_default();
            if entries.iter().any(|&i| iso::are_isomorphic(&reps[i], &g)) {
                continue;
            }
            entries.push(reps.len());
            reps.push(g);
        }
    }
    reps
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_the_known_census() {
        // Digraph isomorphism classes on 1..4 vertices: 1, 3, 16, 218.
        assert_eq!(graphs_up_to_iso(1).len(), 1);
        assert_eq!(graphs_up_to_iso(2).len(), 1 + 3);
        assert_eq!(graphs_up_to_iso(3).len(), 1 + 3 + 16);
        assert_eq!(graphs_up_to_iso(4).len(), 1 + 3 + 16 + 218);
    }

    #[test]
    fn labeled_count_is_a_power_of_two() {
        assert_eq!(labeled_graphs(3).len(), 64);
    }
}
