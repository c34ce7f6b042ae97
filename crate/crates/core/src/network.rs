//! Extended networks, their sublevel filtration, the induced hierarchical
//! functors, ultranetwork validation, and treegram extraction.
//!
//! Weights are exact rationals or `+inf`; nothing here touches floating
//! point, so merge detection is never a question of tolerance. The induced
//! weight of a pair under a functor is a minimum over the real line, but the
//! sublevel graph is piecewise constant between consecutive finite weights
//! and functors turn sublevel inclusions into inclusions, so scanning the
//! finite critical grid computes the true minimum. That observation is the
//! soundness argument for everything in this module.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_rational::Rational64;

use crate::error::Error;
use crate::functor::{evaluate, FunctorExpr};
use crate::graph::Graph;

/// A weight: a finite rational or positive infinity. Infinity compares
/// greater than every finite value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtReal {
    Finite(Rational64),
    Infinity,
}

impl ExtReal {
    pub fn infinity() -> ExtReal {
        ExtReal::Infinity
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtReal::Finite(_))
    }

    pub fn finite(&self) -> Option<Rational64> {
        match self {
            ExtReal::Finite(v) => Some(*v),
            ExtReal::Infinity => None,
        }
    }
}

impl From<Rational64> for ExtReal {
    fn from(value: Rational64) -> ExtReal {
        ExtReal::Finite(value)
    }
}

impl From<i64> for ExtReal {
    fn from(value: i64) -> ExtReal {
        ExtReal::Finite(Rational64::from_integer(value))
    }
}

impl PartialOrd for ExtReal {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtReal {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        match (self, other) {
            (ExtReal::Finite(a), ExtReal::Finite(b)) => a.cmp(b),
            (ExtReal::Finite(_), ExtReal::Infinity) => std::cmp::Ordering::Less,
            (ExtReal::Infinity, ExtReal::Finite(_)) => std::cmp::Ordering::Greater,
            (ExtReal::Infinity, ExtReal::Infinity) => std::cmp::Ordering::Equal,
        }
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtReal::Finite(v) => write!(f, "{}", scalar_to_string(v)),
            ExtReal::Infinity => write!(f, "inf"),
        }
    }
}

/// Parses an exact scalar: an integer, a decimal, or a `p/q` fraction.
pub fn parse_scalar(text: &str) -> Result<Rational64, String> {
    let text = text.trim();
    if let Some((num, den)) = text.split_once('/') {
        let n: i64 = num.trim().parse().map_err(|_| bad_number(text))?;
        let d: i64 = den.trim().parse().map_err(|_| bad_number(text))?;
        if d == 0 {
            return Err("zero denominator".to_string());
        }
        return Ok(Rational64::new(n, d));
    }
    let (sign, rest) = match text.strip_prefix('-') {
        Some(rest) => (-1i64, rest),
        None => (1i64, text.strip_prefix('+').unwrap_or(text)),
    };
    let (int_part, frac_part) = match rest.split_once('.') {
        Some((i, f)) => (i, f),
        None => (rest, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad_number(text));
    }
    if !int_part.chars().all(|c| c.is_ascii_digit())
        || !frac_part.chars().all(|c| c.is_ascii_digit())
    {
        return Err(bad_number(text));
    }
    let mut numerator: i64 = if int_part.is_empty() {
        0
    } else {
        int_part.parse().map_err(|_| bad_number(text))?
    };
    let mut denominator: i64 = 1;
    for digit in frac_part.chars() {
        numerator = numerator
            .checked_mul(10)
            .and_then(|n| n.checked_add(digit.to_digit(10).unwrap() as i64))
            .ok_or_else(|| bad_number(text))?;
        denominator = denominator
            .checked_mul(10)
            .ok_or_else(|| bad_number(text))?;
    }
    Ok(Rational64::new(sign * numerator, denominator))
}

fn bad_number(text: &str) -> String {
    format!("`{}` is not an exact number", text)
}

/// Renders a rational exactly: as an integer, as a terminating decimal when
/// the denominator is a product of twos and fives, and as `p/q` otherwise.
pub fn scalar_to_string(value: &Rational64) -> String {
    let (num, den) = (*value.numer(), *value.denom());
    if den == 1 {
        return num.to_string();
    }
    let mut twos = 0u32;
    let mut fives = 0u32;
    let mut d = den;
    while d % 2 == 0 {
        d /= 2;
        twos += 1;
    }
    while d % 5 == 0 {
        d /= 5;
        fives += 1;
    }
    if d != 1 {
        return format!("{}/{}", num, den);
    }
    // Scale to a power of ten.
    let digits = twos.max(fives);
    let mut scaled = num as i128;
    for _ in 0..digits.saturating_sub(twos) {
        scaled *= 2;
    }
    for _ in 0..digits.saturating_sub(fives) {
        scaled *= 5;
    }
    let negative = scaled < 0;
    let scaled = scaled.unsigned_abs();
    let pow10 = 10u128.pow(digits);
    let int_part = scaled / pow10;
    let frac_part = scaled % pow10;
    let frac_str = format!("{:0width$}", frac_part, width = digits as usize);
    format!(
        "{}{}.{}",
        if negative { "-" } else { "" },
        int_part,
        frac_str
    )
}

/// Parses an extended value: `inf`, or anything [`parse_scalar`] accepts.
pub fn parse_ext_real(text: &str) -> Result<ExtReal, String> {
    let trimmed = text.trim();
    if trimmed == "inf" || trimmed == "+inf" {
        return Ok(ExtReal::Infinity);
    }
    parse_scalar(trimmed).map(ExtReal::Finite)
}

/// A finite point set with a weight function into the extended reals. The
/// diagonal must be finite; points keep their declared order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtendedNetwork {
    points: Vec<String>,
    weights: Vec<ExtReal>,
}

impl ExtendedNetwork {
    pub fn new<P, S>(points: P, rows: Vec<Vec<ExtReal>>) -> Result<ExtendedNetwork, Error>
    where
        P: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let points: Vec<String> = points.into_iter().map(Into::into).collect();
        let n = points.len();
        let mut seen = BTreeSet::new();
        for p in &points {
            if !seen.insert(p.clone()) {
                return Err(Error::DuplicatePoint(p.clone()));
            }
        }
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::BadMatrixShape { expected: n });
        }
        let mut weights = Vec::with_capacity(n * n);
        for row in rows {
            weights.extend(row);
        }
        for (i, p) in points.iter().enumerate() {
            if !weights[i * n + i].is_finite() {
                return Err(Error::InfiniteDiagonal(p.clone()));
            }
        }
        Ok(ExtendedNetwork { points, weights })
    }

    pub fn point_count(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn point_index(&self, p: &str) -> Option<usize> {
        self.points.iter().position(|q| q == p)
    }

    pub fn weight(&self, from: &str, to: &str) -> Result<&ExtReal, Error> {
        let i = self
            .point_index(from)
            .ok_or_else(|| Error::UnknownPoint(from.to_string()))?;
        let j = self
            .point_index(to)
            .ok_or_else(|| Error::UnknownPoint(to.to_string()))?;
        Ok(self.weight_at(i, j))
    }

    pub(crate) fn weight_at(&self, i: usize, j: usize) -> &ExtReal {
        &self.weights[i * self.points.len() + j]
    }

    /// The graph of points born by `threshold` with arrows of weight at most
    /// `threshold`.
    pub fn sublevel(&self, threshold: &Rational64) -> Graph {
        let cutoff = ExtReal::Finite(*threshold);
        let n = self.points.len();
        let born: Vec<usize> = (0..n)
            .filter(|&i| *self.weight_at(i, i) <= cutoff)
            .collect();
        let vertices: Vec<String> = born.iter().map(|&i| self.points[i].clone()).collect();
        let mut arrows = Vec::new();
        for &i in &born {
            for &j in &born {
                if i != j && *self.weight_at(i, j) <= cutoff {
                    arrows.push((self.points[i].clone(), self.points[j].clone()));
                }
            }
        }
        Graph::new(vertices, arrows).expect("sublevel endpoints are born points")
    }

    /// The sorted distinct finite weights; the sublevel graph is constant
    /// between consecutive entries.
    pub fn critical_values(&self) -> Vec<Rational64> {
        let mut values: Vec<Rational64> = self.weights.iter().filter_map(|w| w.finite()).collect();
        values.sort();
        values.dedup();
        values
    }

    /// Structural flags: symmetry, the strong triangle inequality, and
    /// whether the weights form a dissimilarity (finite, nonnegative, zero
    /// exactly on the diagonal).
    pub fn flags(&self) -> NetworkFlags {
        let n = self.points.len();
        let mut is_symmetric = true;
        'sym: for i in 0..n {
            for j in (i + 1)..n {
                if self.weight_at(i, j) != self.weight_at(j, i) {
                    is_symmetric = false;
                    break 'sym;
                }
            }
        }
        let mut is_ultra = true;
        'ultra: for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let direct = self.weight_at(i, k);
                    let through = self.weight_at(i, j).max(self.weight_at(j, k));
                    if direct > through {
                        is_ultra = false;
                        break 'ultra;
                    }
                }
            }
        }
        let zero = ExtReal::from(0);
        let mut is_dissimilarity = true;
        'dis: for i in 0..n {
            for j in 0..n {
                let w = self.weight_at(i, j);
                let ok = w.is_finite() && *w >= zero && ((*w == zero) == (i == j));
                if !ok {
                    is_dissimilarity = false;
                    break 'dis;
                }
            }
        }
        NetworkFlags {
            is_symmetric,
            is_ultra,
            is_dissimilarity,
        }
    }

    fn first_symmetry_failure(&self) -> Option<(usize, usize)> {
        let n = self.points.len();
        for i in 0..n {
            for j in (i + 1)..n {
                if self.weight_at(i, j) != self.weight_at(j, i) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    fn first_ultra_failure(&self) -> Option<(usize, usize, usize)> {
        let n = self.points.len();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if self.weight_at(i, k) > self.weight_at(i, j).max(self.weight_at(j, k)) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// The treegram of a symmetric extended ultranetwork: births along the
    /// diagonal, and one event per critical value at which the partition of
    /// born points changes by more than new singleton births. Pairs at
    /// infinite distance never merge.
    pub fn treegram(&self) -> Result<Treegram, Error> {
        if let Some((i, j)) = self.first_symmetry_failure() {
            return Err(Error::NotSymmetric {
                x: self.points[i].clone(),
                y: self.points[j].clone(),
            });
        }
        if let Some((i, j, k)) = self.first_ultra_failure() {
            return Err(Error::NotUltrametric {
                x: self.points[i].clone(),
                y: self.points[j].clone(),
                z: self.points[k].clone(),
            });
        }
        let births: BTreeMap<String, Rational64> = self
            .points
            .iter()
            .enumerate()
            .map(|(i, p)| {
                (
                    p.clone(),
                    self.weight_at(i, i).finite().expect("diagonal is finite"),
                )
            })
            .collect();
        let mut events = Vec::new();
        let mut previous: Vec<BTreeSet<String>> = Vec::new();
        for epsilon in self.critical_values() {
            let current = self.partition_at(&epsilon);
            // Births alone do not make an event: compare against the
            // previous partition plus fresh singletons.
            let mut expected = previous.clone();
            for block in &current {
                if block.len() == 1 && !previous.iter().any(|b| b.contains(block.first().unwrap()))
                {
                    expected.push(block.clone());
                }
            }
            expected.sort_by(|a, b| a.iter().next().cmp(&b.iter().next()));
            if current != expected {
                events.push(TreegramEvent {
                    epsilon,
                    partition: current
                        .iter()
                        .map(|b| b.iter().cloned().collect())
                        .collect(),
                });
            }
            previous = current;
        }
        Ok(Treegram { births, events })
    }

    /// Blocks of born points under "weight at most epsilon", sorted by
    /// least member.
    fn partition_at(&self, epsilon: &Rational64) -> Vec<BTreeSet<String>> {
        let graph = self.sublevel(epsilon);
        let mut blocks: Vec<BTreeSet<String>> = Vec::new();
        let mut assigned: BTreeMap<&str, usize> = BTreeMap::new();
        for v in graph.vertices() {
            if assigned.contains_key(v.as_str()) {
                continue;
            }
            let id = blocks.len();
            let mut block = BTreeSet::new();
            block.insert(v.clone());
            assigned.insert(v, id);
            for w in graph.vertices() {
                if graph.has_arrow(v, w) {
                    block.insert(w.clone());
                    assigned.insert(w, id);
                }
            }
            blocks.push(block);
        }
        blocks.sort_by(|a, b| a.iter().next().cmp(&b.iter().next()));
        blocks
    }
}

/// Structural flags of a network.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NetworkFlags {
    pub is_symmetric: bool,
    pub is_ultra: bool,
    pub is_dissimilarity: bool,
}

/// Applies a functor levelwise to the sublevel filtration of a network: the
/// induced weight of a pair is the first level at which the functor relates
/// it, `+inf` when that never happens, and the birth value on the diagonal.
///
/// ```
/// use motifclust::network::{apply_hat, ExtReal, ExtendedNetwork};
/// use motifclust::FunctorExpr;
///
/// // Two points at asymmetric distances. The cycle-based method merges
/// // them once both arrows are present.
/// let net = ExtendedNetwork::new(
///     ["p", "q"],
///     vec![
///         vec![ExtReal::from(0), ExtReal::from(1)],
///         vec![ExtReal::from(3), ExtReal::from(0)],
///     ],
/// )
/// .unwrap();
/// let merged = apply_hat(&FunctorExpr::NonReciprocal, &net);
/// assert_eq!(merged.weight("p", "q").unwrap(), &ExtReal::from(3));
/// assert_eq!(merged.weight("q", "p").unwrap(), &ExtReal::from(3));
/// ```
pub fn apply_hat(expr: &FunctorExpr, network: &ExtendedNetwork) -> ExtendedNetwork {
    let n = network.point_count();
    let mut weights: Vec<ExtReal> = vec![ExtReal::Infinity; n * n];
    for i in 0..n {
        weights[i * n + i] = *network.weight_at(i, i);
    }
    for epsilon in network.critical_values() {
        let image = evaluate(expr, &network.sublevel(&epsilon));
        for (a, b) in image.arrows() {
            let i = network.point_index(a).expect("points of the sublevel");
            let j = network.point_index(b).expect("points of the sublevel");
            if i != j && weights[i * n + j] == ExtReal::Infinity {
                weights[i * n + j] = ExtReal::Finite(epsilon);
            }
        }
    }
    ExtendedNetwork {
        points: network.points.clone(),
        weights,
    }
}

/// A treegram: per-point birth values and the ascending merge events. Each
/// event carries the full partition of the points born by then; the last
/// partition persists, and blocks that never merge stay separate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Treegram {
    births: BTreeMap<String, Rational64>,
    events: Vec<TreegramEvent>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreegramEvent {
    pub epsilon: Rational64,
    /// Blocks sorted by least member; members sorted.
    pub partition: Vec<Vec<String>>,
}

impl Treegram {
    pub fn births(&self) -> &BTreeMap<String, Rational64> {
        &self.births
    }

    pub fn events(&self) -> &[TreegramEvent] {
        &self.events
    }

    pub(crate) fn from_parts(
        births: BTreeMap<String, Rational64>,
        events: Vec<TreegramEvent>,
    ) -> Treegram {
        Treegram { births, events }
    }

    /// The first event value at which two points share a block; `inf` when
    /// they never merge. The merge level of a point with itself is its
    /// birth.
    pub fn merge_level(&self, x: &str, y: &str) -> Result<ExtReal, Error> {
        let bx = self
            .births
            .get(x)
            .ok_or_else(|| Error::UnknownPoint(x.to_string()))?;
        if x == y {
            return Ok(ExtReal::Finite(*bx));
        }
        self.births
            .get(y)
            .ok_or_else(|| Error::UnknownPoint(y.to_string()))?;
        for event in &self.events {
            if event
                .partition
                .iter()
                .any(|block| block.iter().any(|p| p == x) && block.iter().any(|p| p == y))
            {
                return Ok(ExtReal::Finite(event.epsilon));
            }
        }
        Ok(ExtReal::Infinity)
    }

    /// Rebuilds the symmetric ultranetwork the treegram encodes, with
    /// points in sorted order.
    pub fn to_ultranetwork(&self) -> ExtendedNetwork {
        let points: Vec<String> = self.births.keys().cloned().collect();
        let n = points.len();
        let mut weights = vec![ExtReal::Infinity; n * n];
        for (i, x) in points.iter().enumerate() {
            for (j, y) in points.iter().enumerate() {
                weights[i * n + j] = self.merge_level(x, y).expect("points are born");
            }
        }
        ExtendedNetwork { points, weights }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64) -> Rational64 {
        Rational64::from_integer(n)
    }

    /// The three-point asymmetric dissimilarity whose sublevels are the
    /// discrete graph, the directed triangle, and the complete triangle.
    pub(crate) fn rotating_triangle() -> ExtendedNetwork {
        let w = |v: i64| ExtReal::from(v);
        ExtendedNetwork::new(
            ["x1", "x2", "x3"],
            vec![
                vec![w(0), w(2), w(4)],
                vec![w(4), w(0), w(2)],
                vec![w(2), w(4), w(0)],
            ],
        )
        .unwrap()
    }

    fn staggered_ultra() -> ExtendedNetwork {
        let w = |v: i64| ExtReal::from(v);
        let inf = ExtReal::Infinity;
        ExtendedNetwork::new(
            ["x1", "x2", "x3", "x4"],
            vec![
                vec![w(0), w(3), w(4), inf],
                vec![w(3), w(1), w(4), inf],
                vec![w(4), w(4), w(2), inf],
                vec![inf, inf, inf, w(0)],
            ],
        )
        .unwrap()
    }

    #[test]
    fn sublevels_of_the_rotating_triangle() {
        let x = rotating_triangle();
        let d3 = x.sublevel(&rat(1));
        assert_eq!(d3.vertex_count(), 3);
        assert_eq!(d3.arrow_count(), 0);
        let c3 = x.sublevel(&rat(2));
        assert!(crate::iso::are_isomorphic(&c3, &Graph::cycle(3)));
        let k3 = x.sublevel(&rat(4));
        assert!(k3.is_complete() && k3.vertex_count() == 3);
        assert!(x.sublevel(&rat(-1)).vertex_count() == 0);
    }

    #[test]
    fn sublevel_is_monotone() {
        let x = staggered_ultra();
        let small = x.sublevel(&rat(1));
        let big = x.sublevel(&rat(3));
        for v in small.vertices() {
            assert!(big.has_vertex(v));
        }
        for (a, b) in small.arrows() {
            assert!(big.has_arrow(a, b));
        }
    }

    #[test]
    fn critical_values_are_the_distinct_finite_weights() {
        assert_eq!(
            staggered_ultra().critical_values(),
            vec![rat(0), rat(1), rat(2), rat(3), rat(4)]
        );
        let single = ExtendedNetwork::new(["p"], vec![vec![ExtReal::from(0)]]).unwrap();
        assert_eq!(single.critical_values(), vec![rat(0)]);
        let constant = ExtendedNetwork::new(
            ["p", "q"],
            vec![
                vec![ExtReal::from(7), ExtReal::from(7)],
                vec![ExtReal::from(7), ExtReal::from(7)],
            ],
        )
        .unwrap();
        assert_eq!(constant.critical_values(), vec![rat(7)]);
    }

    #[test]
    fn identity_functor_reproduces_the_network() {
        let x = rotating_triangle();
        assert_eq!(apply_hat(&FunctorExpr::Id, &x), x);
        let y = staggered_ultra();
        assert_eq!(apply_hat(&FunctorExpr::Id, &y), y);
    }

    #[test]
    fn clustering_functors_on_the_rotating_triangle() {
        let x = rotating_triangle();
        // The directed triangle is one strongly connected component, so the
        // cycle-based method merges everything at 2.
        let nrec = apply_hat(&FunctorExpr::NonReciprocal, &x);
        for i in ["x1", "x2", "x3"] {
            for j in ["x1", "x2", "x3"] {
                let expected = if i == j {
                    ExtReal::from(0)
                } else {
                    ExtReal::from(2)
                };
                assert_eq!(nrec.weight(i, j).unwrap(), &expected);
            }
        }
        // Reciprocal pairs only appear in the complete sublevel at 4.
        let rec = apply_hat(&FunctorExpr::Reciprocal, &x);
        for i in ["x1", "x2", "x3"] {
            for j in ["x1", "x2", "x3"] {
                let expected = if i == j {
                    ExtReal::from(0)
                } else {
                    ExtReal::from(4)
                };
                assert_eq!(rec.weight(i, j).unwrap(), &expected);
            }
        }
    }

    #[test]
    fn flags_of_the_worked_examples() {
        let ultra = staggered_ultra().flags();
        assert!(ultra.is_symmetric && ultra.is_ultra && !ultra.is_dissimilarity);
        let tri = rotating_triangle().flags();
        assert!(!tri.is_symmetric && tri.is_dissimilarity);
        let clustered = apply_hat(&FunctorExpr::NonReciprocal, &rotating_triangle()).flags();
        assert!(clustered.is_symmetric && clustered.is_ultra);
    }

    #[test]
    fn treegram_of_the_staggered_example() {
        let t = staggered_ultra().treegram().unwrap();
        let births: Vec<(String, Rational64)> =
            t.births().iter().map(|(k, v)| (k.clone(), *v)).collect();
        assert_eq!(
            births,
            vec![
                ("x1".to_string(), rat(0)),
                ("x2".to_string(), rat(1)),
                ("x3".to_string(), rat(2)),
                ("x4".to_string(), rat(0)),
            ]
        );
        let expected = vec![
            TreegramEvent {
                epsilon: rat(3),
                partition: vec![
                    vec!["x1".to_string(), "x2".to_string()],
                    vec!["x3".to_string()],
                    vec!["x4".to_string()],
                ],
            },
            TreegramEvent {
                epsilon: rat(4),
                partition: vec![
                    vec!["x1".to_string(), "x2".to_string(), "x3".to_string()],
                    vec!["x4".to_string()],
                ],
            },
        ];
        assert_eq!(t.events(), expected.as_slice());
        assert_eq!(t.merge_level("x1", "x4").unwrap(), ExtReal::Infinity);
    }

    #[test]
    fn one_point_network_has_no_events() {
        let single = ExtendedNetwork::new(["p"], vec![vec![ExtReal::from(3)]]).unwrap();
        let t = single.treegram().unwrap();
        assert_eq!(t.births().len(), 1);
        assert!(t.events().is_empty());
    }

    #[test]
    fn forced_merge_of_two_points() {
        let net = ExtendedNetwork::new(
            ["p", "q"],
            vec![
                vec![ExtReal::from(0), ExtReal::from(5)],
                vec![ExtReal::from(5), ExtReal::from(0)],
            ],
        )
        .unwrap();
        let t = net.treegram().unwrap();
        assert_eq!(t.events().len(), 1);
        assert_eq!(t.events()[0].epsilon, rat(5));
        assert_eq!(
            t.events()[0].partition,
            vec![vec!["p".to_string(), "q".to_string()]]
        );
    }

    #[test]
    fn treegram_requires_symmetry_and_ultrametricity() {
        let asym = rotating_triangle();
        assert!(matches!(asym.treegram(), Err(Error::NotSymmetric { .. })));
        let not_ultra = ExtendedNetwork::new(
            ["p", "q", "r"],
            vec![
                vec![ExtReal::from(0), ExtReal::from(1), ExtReal::from(5)],
                vec![ExtReal::from(1), ExtReal::from(0), ExtReal::from(1)],
                vec![ExtReal::from(5), ExtReal::from(1), ExtReal::from(0)],
            ],
        )
        .unwrap();
        assert!(matches!(
            not_ultra.treegram(),
            Err(Error::NotUltrametric { .. })
        ));
    }

    #[test]
    fn reconstruction_inverts_the_treegram() {
        let x = staggered_ultra();
        let rebuilt = x.treegram().unwrap().to_ultranetwork();
        for a in x.points() {
            for b in x.points() {
                assert_eq!(x.weight(a, b).unwrap(), rebuilt.weight(a, b).unwrap());
            }
        }
    }

    #[test]
    fn construction_guards() {
        assert!(matches!(
            ExtendedNetwork::new(["p", "p"], vec![vec![ExtReal::from(0); 2]; 2]),
            Err(Error::DuplicatePoint(_))
        ));
        assert!(matches!(
            ExtendedNetwork::new(["p"], vec![vec![ExtReal::Infinity]]),
            Err(Error::InfiniteDiagonal(_))
        ));
        assert!(matches!(
            ExtendedNetwork::new(["p", "q"], vec![vec![ExtReal::from(0)]]),
            Err(Error::BadMatrixShape { .. })
        ));
    }

    #[test]
    fn scalar_round_trips() {
        for text in ["0", "-3", "2.5", "0.125", "10.01", "-0.2"] {
            let v = parse_scalar(text).unwrap();
            assert_eq!(scalar_to_string(&v), text.trim_start_matches('+'));
        }
        assert_eq!(parse_scalar("1/3").unwrap(), Rational64::new(1, 3));
        assert_eq!(scalar_to_string(&Rational64::new(1, 3)), "1/3");
        assert!(parse_scalar("abc").is_err());
        assert_eq!(parse_ext_real("inf").unwrap(), ExtReal::Infinity);
    }
}
