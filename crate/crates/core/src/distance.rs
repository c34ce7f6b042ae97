//! Correspondences, distortion, the exact network distance at desk scale,
//! a local-search upper bound for larger instances, and the stability
//! harness.
//!
//! Distances are restricted to networks with finite weights; extended
//! inputs are rejected with a diagnostic. The exact search enumerates
//! subsets of the pair grid depth-first in lexicographic order, pruning
//! non-surjective completions and branches whose partial distortion already
//! meets the incumbent. Ties report the lexicographically least optimal
//! correspondence.

use std::collections::BTreeSet;

use num_rational::Rational64;

use crate::error::Error;
use crate::functor::FunctorExpr;
use crate::network::{apply_hat, ExtReal, ExtendedNetwork};

/// A relation between two point sets whose projections are both
/// surjective.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Correspondence {
    pairs: Vec<(String, String)>,
}

impl Correspondence {
    pub fn new<I, S, T>(
        pairs: I,
        left: &ExtendedNetwork,
        right: &ExtendedNetwork,
    ) -> Result<Correspondence, Error>
    where
        I: IntoIterator<Item = (S, T)>,
        S: Into<String>,
        T: Into<String>,
    {
        let pairs: BTreeSet<(String, String)> = pairs
            .into_iter()
            .map(|(a, b)| (a.into(), b.into()))
            .collect();
        let mut left_hit = vec![false; left.point_count()];
        let mut right_hit = vec![false; right.point_count()];
        for (a, b) in &pairs {
            let i = left
                .point_index(a)
                .ok_or_else(|| Error::UnknownPoint(a.clone()))?;
            let j = right
                .point_index(b)
                .ok_or_else(|| Error::UnknownPoint(b.clone()))?;
            left_hit[i] = true;
            right_hit[j] = true;
        }
        if let Some(i) = left_hit.iter().position(|h| !h) {
            return Err(Error::InvalidCorrespondence(format!(
                "point `{}` of the first network is never matched",
                left.points()[i]
            )));
        }
        if let Some(j) = right_hit.iter().position(|h| !h) {
            return Err(Error::InvalidCorrespondence(format!(
                "point `{}` of the second network is never matched",
                right.points()[j]
            )));
        }
        Ok(Correspondence {
            pairs: pairs.into_iter().collect(),
        })
    }

    /// The identity correspondence of a network with itself.
    pub fn diagonal(net: &ExtendedNetwork) -> Correspondence {
        Correspondence {
            pairs: net
                .points()
                .iter()
                .map(|p| (p.clone(), p.clone()))
                .collect(),
        }
    }

    pub fn pairs(&self) -> &[(String, String)] {
        &self.pairs
    }
}

/// Matrix view of a finite-weight network.
struct FiniteView {
    n: usize,
    w: Vec<Rational64>,
}

impl FiniteView {
    fn new(net: &ExtendedNetwork) -> Result<FiniteView, Error> {
        let n = net.point_count();
        let mut w = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                match net.weight_at(i, j) {
                    ExtReal::Finite(v) => w.push(*v),
                    ExtReal::Infinity => {
                        return Err(Error::InfiniteWeight {
                            x: net.points()[i].clone(),
                            y: net.points()[j].clone(),
                        })
                    }
                }
            }
        }
        Ok(FiniteView { n, w })
    }

    #[inline]
    fn get(&self, i: usize, j: usize) -> Rational64 {
        self.w[i * self.n + j]
    }
}

fn abs_diff(a: Rational64, b: Rational64) -> Rational64 {
    if a >= b {
        a - b
    } else {
        b - a
    }
}

/// The largest weight discrepancy over all pairs of matched pairs.
pub fn distortion(
    correspondence: &Correspondence,
    left: &ExtendedNetwork,
    right: &ExtendedNetwork,
) -> Result<Rational64, Error> {
    let lw = FiniteView::new(left)?;
    let rw = FiniteView::new(right)?;
    let indexed: Vec<(usize, usize)> = correspondence
        .pairs
        .iter()
        .map(|(a, b)| {
            Ok((
                left.point_index(a)
                    .ok_or_else(|| Error::UnknownPoint(a.clone()))?,
                right
                    .point_index(b)
                    .ok_or_else(|| Error::UnknownPoint(b.clone()))?,
            ))
        })
        .collect::<Result<_, Error>>()?;
    let mut worst = Rational64::from_integer(0);
    for &(x, y) in &indexed {
        for &(xp, yp) in &indexed {
            worst = worst.max(abs_diff(lw.get(x, xp), rw.get(y, yp)));
        }
    }
    Ok(worst)
}

/// How a reported distance was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistanceMode {
    Exact,
    /// A heuristic upper bound; the true distance may be smaller.
    UpperBound,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceReport {
    pub distance: Rational64,
    pub witness: Correspondence,
    pub mode: DistanceMode,
}

pub const DEFAULT_EXACT_CAP: usize = 16;

/// The exact network distance: half the minimum distortion over all
/// correspondences. Instances bigger than `cap` candidate pairs are
/// rejected in favor of the heuristic.
pub fn network_distance_exact(
    left: &ExtendedNetwork,
    right: &ExtendedNetwork,
    cap: usize,
) -> Result<DistanceReport, Error> {
    let lw = FiniteView::new(left)?;
    let rw = FiniteView::new(right)?;
    if let Some(report) = empty_case(&lw, &rw)? {
        return Ok(report);
    }
    let pairs = lw.n * rw.n;
    if pairs > cap {
        return Err(Error::ExactCapExceeded { pairs, cap });
    }
    let grid: Vec<(usize, usize)> = (0..lw.n)
        .flat_map(|x| (0..rw.n).map(move |y| (x, y)))
        .collect();

    // Pass one: the optimal distortion, branch and bound.
    let mut best: Option<Rational64> = None;
    let mut chosen: Vec<(usize, usize)> = Vec::new();
    search_optimum(
        &lw,
        &rw,
        &grid,
        0,
        &mut chosen,
        Rational64::from_integer(0),
        &mut best,
    );
    let best = best.expect("the full grid is always a correspondence");

    // Pass two: the lexicographically least correspondence achieving it.
    let mut witness: Vec<(usize, usize)> = Vec::new();
    let found = search_witness(
        &lw,
        &rw,
        &grid,
        0,
        &mut witness,
        Rational64::from_integer(0),
        best,
    );
    debug_assert!(found);
    let mut named: Vec<(String, String)> = witness
        .into_iter()
        .map(|(x, y)| (left.points()[x].clone(), right.points()[y].clone()))
        .collect();
    named.sort();
    Ok(DistanceReport {
        distance: best / Rational64::from_integer(2),
        witness: Correspondence { pairs: named },
        mode: DistanceMode::Exact,
    })
}

/// Degenerate sizes: two empty networks are at distance zero; an empty and
/// a nonempty network admit no correspondence at all.
fn empty_case(lw: &FiniteView, rw: &FiniteView) -> Result<Option<DistanceReport>, Error> {
    match (lw.n, rw.n) {
        (0, 0) => Ok(Some(DistanceReport {
            distance: Rational64::from_integer(0),
            witness: Correspondence { pairs: Vec::new() },
            mode: DistanceMode::Exact,
        })),
        (0, _) | (_, 0) => Err(Error::InvalidCorrespondence(
            "no correspondence exists between an empty and a nonempty network".to_string(),
        )),
        _ => Ok(None),
    }
}

fn covers_rest(
    grid: &[(usize, usize)],
    from: usize,
    rows: &BTreeSet<usize>,
    cols: &BTreeSet<usize>,
) -> bool {
    rows.iter().all(|&r| grid[from..].iter().any(|p| p.0 == r))
        && cols.iter().all(|&c| grid[from..].iter().any(|p| p.1 == c))
}

fn added_cost(
    lw: &FiniteView,
    rw: &FiniteView,
    chosen: &[(usize, usize)],
    pair: (usize, usize),
) -> Rational64 {
    let (x, y) = pair;
    let mut worst = abs_diff(lw.get(x, x), rw.get(y, y));
    for &(xp, yp) in chosen {
        worst = worst.max(abs_diff(lw.get(x, xp), rw.get(y, yp)));
        worst = worst.max(abs_diff(lw.get(xp, x), rw.get(yp, y)));
    }
    worst
}

fn search_optimum(
    lw: &FiniteView,
    rw: &FiniteView,
    grid: &[(usize, usize)],
    index: usize,
    chosen: &mut Vec<(usize, usize)>,
    current: Rational64,
    best: &mut Option<Rational64>,
) {
    if let Some(b) = best {
        if current >= *b {
            return;
        }
    }
    let rows: BTreeSet<usize> = {
        let covered: BTreeSet<usize> = chosen.iter().map(|p| p.0).collect();
        (0..lw.n).filter(|r| !covered.contains(r)).collect()
    };
    let cols: BTreeSet<usize> = {
        let covered: BTreeSet<usize> = chosen.iter().map(|p| p.1).collect();
        (0..rw.n).filter(|c| !covered.contains(c)).collect()
    };
    if index == grid.len() {
        if rows.is_empty() && cols.is_empty() {
            let better = match best {
                Some(b) => current < *b,
                None => true,
            };
            if better {
                *best = Some(current);
            }
        }
        return;
    }
    if !covers_rest(grid, index, &rows, &cols) {
        return;
    }
    // Include grid[index].
    let cost = added_cost(lw, rw, chosen, grid[index]);
    let with = current.max(cost);
    let include_ok = match best {
        Some(b) => with < *b,
        None => true,
    };
    if include_ok {
        chosen.push(grid[index]);
        search_optimum(lw, rw, grid, index + 1, chosen, with, best);
        chosen.pop();
    }
    // Exclude grid[index].
    search_optimum(lw, rw, grid, index + 1, chosen, current, best);
}

fn search_witness(
    lw: &FiniteView,
    rw: &FiniteView,
    grid: &[(usize, usize)],
    index: usize,
    chosen: &mut Vec<(usize, usize)>,
    current: Rational64,
    target: Rational64,
) -> bool {
    let rows: BTreeSet<usize> = {
        let covered: BTreeSet<usize> = chosen.iter().map(|p| p.0).collect();
        (0..lw.n).filter(|r| !covered.contains(r)).collect()
    };
    let cols: BTreeSet<usize> = {
        let covered: BTreeSet<usize> = chosen.iter().map(|p| p.1).collect();
        (0..rw.n).filter(|c| !covered.contains(c)).collect()
    };
    // A strict prefix sorts before any of its extensions, so once the
    // chosen pairs are surjective the prefix itself is the least answer in
    // this subtree.
    if rows.is_empty() && cols.is_empty() {
        return true;
    }
    if index == grid.len() {
        return false;
    }
    if !covers_rest(grid, index, &rows, &cols) {
        return false;
    }
    // Otherwise including the earliest available pair beats every set that
    // skips it.
    let cost = added_cost(lw, rw, chosen, grid[index]);
    if current.max(cost) <= target {
        chosen.push(grid[index]);
        if search_witness(lw, rw, grid, index + 1, chosen, current.max(cost), target) {
            return true;
        }
        chosen.pop();
    }
    search_witness(lw, rw, grid, index + 1, chosen, current, target)
}

/// Splittable 64-bit generator; deterministic across platforms.
#[derive(Debug, Clone)]
pub(crate) struct SplitMix64(pub u64);

impl SplitMix64 {
    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform draw from `0..bound`.
    pub fn below(&mut self, bound: usize) -> usize {
        (self.next_u64() % bound as u64) as usize
    }
}

/// A heuristic upper bound on the network distance: random surjective
/// seeds improved by single-pair moves, best of `restarts` rounds. The
/// result is flagged as an upper bound and never claimed exact.
pub fn network_distance_upper(
    left: &ExtendedNetwork,
    right: &ExtendedNetwork,
    restarts: u32,
    seed: u64,
) -> Result<DistanceReport, Error> {
    let lw = FiniteView::new(left)?;
    let rw = FiniteView::new(right)?;
    if let Some(report) = empty_case(&lw, &rw)? {
        return Ok(DistanceReport {
            mode: DistanceMode::UpperBound,
            ..report
        });
    }
    let mut rng = SplitMix64(seed ^ 0x6d6f746966636c75);
    let mut best_pairs: Vec<(usize, usize)> = (0..lw.n)
        .flat_map(|x| (0..rw.n).map(move |y| (x, y)))
        .collect();
    let mut best = distortion_indexed(&lw, &rw, &best_pairs);
    for round in 0..restarts.max(1) {
        // Round zero seeds with the index-diagonal correspondence; later
        // rounds pick a random partner per left point. Either way the
        // missed right points get covered afterwards.
        let mut pairs: BTreeSet<(usize, usize)> = if round == 0 {
            (0..lw.n).map(|x| (x, x.min(rw.n - 1))).collect()
        } else {
            (0..lw.n).map(|x| (x, rng.below(rw.n))).collect()
        };
        let covered: BTreeSet<usize> = pairs.iter().map(|p| p.1).collect();
        for y in 0..rw.n {
            if !covered.contains(&y) {
                pairs.insert((rng.below(lw.n), y));
            }
        }
        let mut pairs: Vec<(usize, usize)> = pairs.into_iter().collect();
        let mut value = distortion_indexed(&lw, &rw, &pairs);
        // Greedy improvement over three move kinds: replace a pair, swap
        // the partners of two pairs, drop a pair.
        let mut improved = true;
        while improved {
            improved = false;
            'replace: for i in 0..pairs.len() {
                for x in 0..lw.n {
                    for y in 0..rw.n {
                        let old = pairs[i];
                        if (x, y) == old {
                            continue;
                        }
                        pairs[i] = (x, y);
                        if surjective(&pairs, lw.n, rw.n) {
                            let candidate = distortion_indexed(&lw, &rw, &pairs);
                            if candidate < value {
                                value = candidate;
                                improved = true;
                                continue 'replace;
                            }
                        }
                        pairs[i] = old;
                    }
                }
            }
            'swap: for i in 0..pairs.len() {
                for j in (i + 1)..pairs.len() {
                    let (pi, pj) = (pairs[i], pairs[j]);
                    pairs[i] = (pi.0, pj.1);
                    pairs[j] = (pj.0, pi.1);
                    let candidate = distortion_indexed(&lw, &rw, &pairs);
                    if candidate < value {
                        value = candidate;
                        improved = true;
                        continue 'swap;
                    }
                    pairs[i] = pi;
                    pairs[j] = pj;
                }
            }
            let mut i = 0;
            while i < pairs.len() {
                let removed = pairs.remove(i);
                if surjective(&pairs, lw.n, rw.n) && distortion_indexed(&lw, &rw, &pairs) < value {
                    value = distortion_indexed(&lw, &rw, &pairs);
                    improved = true;
                    continue;
                }
                pairs.insert(i, removed);
                i += 1;
            }
        }
        if value < best {
            best = value;
            best_pairs = pairs;
        }
    }
    best_pairs.sort_unstable();
    best_pairs.dedup();
    let mut named: Vec<(String, String)> = best_pairs
        .into_iter()
        .map(|(x, y)| (left.points()[x].clone(), right.points()[y].clone()))
        .collect();
    named.sort();
    let witness = Correspondence { pairs: named };
    Ok(DistanceReport {
        distance: best / Rational64::from_integer(2),
        witness,
        mode: DistanceMode::UpperBound,
    })
}

fn surjective(pairs: &[(usize, usize)], n: usize, m: usize) -> bool {
    let rows: BTreeSet<usize> = pairs.iter().map(|p| p.0).collect();
    let cols: BTreeSet<usize> = pairs.iter().map(|p| p.1).collect();
    rows.len() == n && cols.len() == m
}

fn distortion_indexed(lw: &FiniteView, rw: &FiniteView, pairs: &[(usize, usize)]) -> Rational64 {
    let mut worst = Rational64::from_integer(0);
    for &(x, y) in pairs {
        for &(xp, yp) in pairs {
            worst = worst.max(abs_diff(lw.get(x, xp), rw.get(y, yp)));
        }
    }
    worst
}

/// Both sides of the stability inequality for a functor on a pair of
/// networks: the distance after applying the induced functor, the distance
/// before, and whether the former is bounded by the latter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilityReport {
    pub lhs: Rational64,
    pub rhs: Rational64,
    pub holds: bool,
}

pub fn stability_check(
    expr: &FunctorExpr,
    left: &ExtendedNetwork,
    right: &ExtendedNetwork,
    cap: usize,
) -> Result<StabilityReport, Error> {
    let lhs =
        network_distance_exact(&apply_hat(expr, left), &apply_hat(expr, right), cap)?.distance;
    let rhs = network_distance_exact(left, right, cap)?.distance;
    Ok(StabilityReport {
        lhs,
        rhs,
        holds: lhs <= rhs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64) -> Rational64 {
        Rational64::from_integer(n)
    }

    fn net(points: &[&str], rows: Vec<Vec<i64>>) -> ExtendedNetwork {
        ExtendedNetwork::new(
            points.iter().map(|s| s.to_string()),
            rows.into_iter()
                .map(|r| r.into_iter().map(ExtReal::from).collect())
                .collect(),
        )
        .unwrap()
    }

    fn rotating_triangle() -> ExtendedNetwork {
        net(
            &["x1", "x2", "x3"],
            vec![vec![0, 2, 4], vec![4, 0, 2], vec![2, 4, 0]],
        )
    }

    fn halved_triangle() -> ExtendedNetwork {
        ExtendedNetwork::new(
            ["x1", "x2", "x3"],
            vec![
                vec![
                    ExtReal::from(rat(0)),
                    ExtReal::from(Rational64::new(1, 1)),
                    ExtReal::from(rat(2)),
                ],
                vec![
                    ExtReal::from(rat(2)),
                    ExtReal::from(rat(0)),
                    ExtReal::from(Rational64::new(1, 1)),
                ],
                vec![
                    ExtReal::from(Rational64::new(1, 1)),
                    ExtReal::from(rat(2)),
                    ExtReal::from(rat(0)),
                ],
            ],
        )
        .unwrap()
    }

    #[test]
    fn distortion_of_the_diagonal_is_zero() {
        let x = rotating_triangle();
        let diag = Correspondence::diagonal(&x);
        assert_eq!(distortion(&diag, &x, &x).unwrap(), rat(0));
    }

    #[test]
    fn distortion_of_full_relation_between_trivial_networks() {
        let p = net(&["p"], vec![vec![0]]);
        let q = net(&["q"], vec![vec![0]]);
        let full = Correspondence::new([("p", "q")], &p, &q).unwrap();
        assert_eq!(distortion(&full, &p, &q).unwrap(), rat(0));
    }

    #[test]
    fn distortion_against_the_halved_copy() {
        let x = rotating_triangle();
        let y = halved_triangle();
        let diag = Correspondence::diagonal(&x);
        assert_eq!(distortion(&diag, &x, &y).unwrap(), rat(2));
    }

    #[test]
    fn self_distance_is_zero_with_a_clean_witness() {
        let x = rotating_triangle();
        let report = network_distance_exact(&x, &x, DEFAULT_EXACT_CAP).unwrap();
        assert_eq!(report.distance, rat(0));
        assert_eq!(report.mode, DistanceMode::Exact);
        assert_eq!(distortion(&report.witness, &x, &x).unwrap(), rat(0));
    }

    #[test]
    fn distance_to_a_point_is_half_the_largest_weight() {
        let x = rotating_triangle();
        let p = net(&["p"], vec![vec![0]]);
        let report = network_distance_exact(&x, &p, DEFAULT_EXACT_CAP).unwrap();
        assert_eq!(report.distance, rat(2));
    }

    #[test]
    fn shifting_all_weights_costs_half_the_shift() {
        let x = rotating_triangle();
        let shifted = net(
            &["x1", "x2", "x3"],
            vec![vec![1, 3, 5], vec![5, 1, 3], vec![3, 5, 1]],
        );
        let report = network_distance_exact(&x, &shifted, DEFAULT_EXACT_CAP).unwrap();
        assert_eq!(report.distance, Rational64::new(1, 2));
    }

    #[test]
    fn exact_cap_is_enforced() {
        let x = net(
            &["a", "b", "c"],
            vec![vec![0, 1, 2], vec![1, 0, 1], vec![2, 1, 0]],
        );
        assert!(matches!(
            network_distance_exact(&x, &x, 8),
            Err(Error::ExactCapExceeded { pairs: 9, cap: 8 })
        ));
    }

    #[test]
    fn infinite_weights_are_rejected() {
        let mut rows = vec![vec![ExtReal::from(0); 2]; 2];
        rows[0][1] = ExtReal::Infinity;
        let x = ExtendedNetwork::new(["a", "b"], rows).unwrap();
        assert!(matches!(
            network_distance_exact(&x, &x, DEFAULT_EXACT_CAP),
            Err(Error::InfiniteWeight { .. })
        ));
    }

    #[test]
    fn upper_bound_is_zero_on_identical_networks() {
        let x = rotating_triangle();
        let report = network_distance_upper(&x, &x, 4, 7).unwrap();
        assert_eq!(report.mode, DistanceMode::UpperBound);
        assert_eq!(report.distance, rat(0));
    }

    #[test]
    fn upper_bound_never_beats_exact() {
        let mut rng = SplitMix64(42);
        for _ in 0..100 {
            let mut rows_a = vec![vec![0i64; 3]; 3];
            let mut rows_b = vec![vec![0i64; 3]; 3];
            for i in 0..3 {
                for j in 0..3 {
                    rows_a[i][j] = rng.below(7) as i64;
                    rows_b[i][j] = rng.below(7) as i64;
                    if i == j {
                        rows_a[i][j] = rng.below(3) as i64;
                        rows_b[i][j] = rng.below(3) as i64;
                    }
                }
            }
            let a = net(&["a", "b", "c"], rows_a);
            let b = net(&["p", "q", "r"], rows_b);
            let exact = network_distance_exact(&a, &b, DEFAULT_EXACT_CAP)
                .unwrap()
                .distance;
            let upper = network_distance_upper(&a, &b, 3, rng.next_u64())
                .unwrap()
                .distance;
            assert!(upper >= exact);
        }
    }

    #[test]
    fn stability_on_identical_inputs() {
        let x = rotating_triangle();
        let report =
            stability_check(&FunctorExpr::NonReciprocal, &x, &x, DEFAULT_EXACT_CAP).unwrap();
        assert!(report.holds);
        assert_eq!(report.lhs, rat(0));
        assert_eq!(report.rhs, rat(0));
    }

    #[test]
    fn stability_on_the_halved_triangle() {
        let x = rotating_triangle();
        let y = halved_triangle();
        let report =
            stability_check(&FunctorExpr::TransClosure, &x, &y, DEFAULT_EXACT_CAP).unwrap();
        assert!(report.holds);
        assert!(report.lhs <= report.rhs);
    }

    #[test]
    fn stability_propagates_distance_errors() {
        // Full disconnection sends every off-diagonal weight to infinity,
        // which the exact distance must reject.
        let x = rotating_triangle();
        assert!(matches!(
            stability_check(&FunctorExpr::Disc, &x, &x, DEFAULT_EXACT_CAP),
            Err(Error::InfiniteWeight { .. })
        ));
    }

    #[test]
    fn invalid_correspondences_are_rejected() {
        let x = rotating_triangle();
        let p = net(&["p"], vec![vec![0]]);
        assert!(matches!(
            Correspondence::new([("x1", "p")], &x, &p),
            Err(Error::InvalidCorrespondence(_))
        ));
        assert!(matches!(
            Correspondence::new([("zz", "p")], &x, &p),
            Err(Error::UnknownPoint(_))
        ));
    }
}
