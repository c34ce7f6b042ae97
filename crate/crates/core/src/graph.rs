//! Reflexive directed graphs, graph maps, and the basic constructions on
//! them: disjoint union, wedge, and quotient.
//!
//! Every vertex implicitly carries a self-loop, so a vertex map may send an
//! arrow to an equality and still be a graph map. Stored arrow sets never
//! contain self-loops; constructors drop them silently. Vertices and arrows
//! are kept in lexicographic order, which makes structural equality of two
//! graphs plain `==`.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::Error;

/// A finite reflexive directed graph over string-labelled vertices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Graph {
    vertices: Vec<String>,
    arrows: BTreeSet<(String, String)>,
}

/// The named graph families used throughout: complete, discrete, line,
/// transitive line, cycle, and reciprocal line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StandardKind {
    Complete,
    Discrete,
    Line,
    TransitiveLine,
    Cycle,
    ReciprocalLine,
}

impl StandardKind {
    fn name(self) -> &'static str {
        match self {
            StandardKind::Complete => "K",
            StandardKind::Discrete => "D",
            StandardKind::Line => "L",
            StandardKind::TransitiveLine => "T",
            StandardKind::Cycle => "C",
            StandardKind::ReciprocalLine => "RL",
        }
    }
}

impl Graph {
    /// Builds a graph from vertex labels and arrows.
    ///
    /// Duplicate vertices collapse, self-loops are dropped (reflexivity is
    /// implicit and never materialised), and an arrow endpoint that is not a
    /// declared vertex is an error.
    pub fn new<V, A, S, T, U>(vertices: V, arrows: A) -> Result<Graph, Error>
    where
        V: IntoIterator<Item = S>,
        A: IntoIterator<Item = (T, U)>,
        S: Into<String>,
        T: Into<String>,
        U: Into<String>,
    {
        let mut vs: Vec<String> = vertices.into_iter().map(Into::into).collect();
        vs.sort();
        vs.dedup();
        let mut set = BTreeSet::new();
        for (from, to) in arrows {
            let from = from.into();
            let to = to.into();
            if vs.binary_search(&from).is_err() {
                return Err(Error::UnknownVertex(from));
            }
            if vs.binary_search(&to).is_err() {
                return Err(Error::UnknownVertex(to));
            }
            if from != to {
                set.insert((from, to));
            }
        }
        Ok(Graph {
            vertices: vs,
            arrows: set,
        })
    }

    /// Graph with the given vertices and no arrows.
    pub fn discrete_on<V, S>(vertices: V) -> Graph
    where
        V: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Graph::new(vertices, Vec::<(String, String)>::new()).expect("no arrows to validate")
    }

    pub(crate) fn from_parts(vertices: Vec<String>, arrows: BTreeSet<(String, String)>) -> Graph {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Graph { vertices, arrows }
    }

    /// One of the standard graphs on vertices `a1..an`.
    ///
    /// Sizes must be positive; cycles additionally need at least two
    /// vertices.
    pub fn standard(kind: StandardKind, n: usize) -> Result<Graph, Error> {
        if n == 0 || (kind == StandardKind::Cycle && n < 2) {
            return Err(Error::InvalidStandardSize {
                kind: kind.name(),
                size: n,
            });
        }
        let name = |i: usize| format!("a{}", i);
        let vertices: Vec<String> = (1..=n).map(name).collect();
        let mut arrows: Vec<(String, String)> = Vec::new();
        match kind {
            StandardKind::Complete => {
                for i in 1..=n {
                    for j in 1..=n {
                        if i != j {
                            arrows.push((name(i), name(j)));
                        }
                    }
                }
            }
            StandardKind::Discrete => {}
            StandardKind::Line => {
                for i in 1..n {
                    arrows.push((name(i), name(i + 1)));
                }
            }
            StandardKind::TransitiveLine => {
                for i in 1..=n {
                    for j in (i + 1)..=n {
                        arrows.push((name(i), name(j)));
                    }
                }
            }
            StandardKind::Cycle => {
                for i in 1..n {
                    arrows.push((name(i), name(i + 1)));
                }
                arrows.push((name(n), name(1)));
            }
            StandardKind::ReciprocalLine => {
                for i in 1..n {
                    arrows.push((name(i), name(i + 1)));
                    arrows.push((name(i + 1), name(i)));
                }
            }
        }
        Graph::new(vertices, arrows)
    }

    pub fn complete(n: usize) -> Graph {
        Graph::standard(StandardKind::Complete, n).expect("positive size")
    }

    pub fn discrete(n: usize) -> Graph {
        Graph::standard(StandardKind::Discrete, n).expect("positive size")
    }

    pub fn line(n: usize) -> Graph {
        Graph::standard(StandardKind::Line, n).expect("positive size")
    }

    pub fn transitive_line(n: usize) -> Graph {
        Graph::standard(StandardKind::TransitiveLine, n).expect("positive size")
    }

    pub fn cycle(n: usize) -> Graph {
        Graph::standard(StandardKind::Cycle, n).expect("size at least two")
    }

    pub fn reciprocal_line(n: usize) -> Graph {
        Graph::standard(StandardKind::ReciprocalLine, n).expect("positive size")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    /// Vertex labels in lexicographic order.
    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    /// Stored (non-loop) arrows in lexicographic order.
    pub fn arrows(&self) -> impl Iterator<Item = (&str, &str)> {
        self.arrows.iter().map(|(a, b)| (a.as_str(), b.as_str()))
    }

    pub fn has_vertex(&self, v: &str) -> bool {
        self.vertices
            .binary_search_by(|x| x.as_str().cmp(v))
            .is_ok()
    }

    pub(crate) fn vertex_index(&self, v: &str) -> Option<usize> {
        self.vertices.binary_search_by(|x| x.as_str().cmp(v)).ok()
    }

    pub fn has_arrow(&self, from: &str, to: &str) -> bool {
        self.arrows.contains(&(from.to_string(), to.to_string()))
    }

    /// The `=>` relation: arrow or equality.
    pub fn arrow_or_equal(&self, from: &str, to: &str) -> bool {
        from == to || self.has_arrow(from, to)
    }

    /// Disjoint union. Colliding labels are disambiguated by suffixing the
    /// copy index (`/1` for `self`, `/2` for `other`); when the label sets
    /// are disjoint, labels are kept as-is.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let collide = self.vertices.iter().any(|v| other.has_vertex(v));
        let rename = |side: usize, v: &str| -> String {
            if collide {
                format!("{}/{}", v, side)
            } else {
                v.to_string()
            }
        };
        let mut vertices: Vec<String> = Vec::new();
        vertices.extend(self.vertices.iter().map(|v| rename(1, v)));
        vertices.extend(other.vertices.iter().map(|v| rename(2, v)));
        let mut arrows = BTreeSet::new();
        for (a, b) in self.arrows.iter() {
            arrows.insert((rename(1, a), rename(1, b)));
        }
        for (a, b) in other.arrows.iter() {
            arrows.insert((rename(2, a), rename(2, b)));
        }
        vertices.sort();
        Graph::from_parts(vertices, arrows)
    }

    /// Wedge product: the disjoint union with `own` (in `self`) and `other_v`
    /// (in `other`) identified. The merged vertex keeps the label of `own`
    /// and carries the union of incident arrows.
    pub fn wedge(&self, own: &str, other: &Graph, other_v: &str) -> Result<Graph, Error> {
        if !self.has_vertex(own) {
            return Err(Error::UnknownVertex(own.to_string()));
        }
        if !other.has_vertex(other_v) {
            return Err(Error::UnknownVertex(other_v.to_string()));
        }
        let joined = self.disjoint_union(other);
        // Recover the post-union labels of the two basepoints.
        let collide = self.vertices.iter().any(|v| other.has_vertex(v));
        let left = if collide {
            format!("{}/1", own)
        } else {
            own.to_string()
        };
        let right = if collide {
            format!("{}/2", other_v)
        } else {
            other_v.to_string()
        };
        if left == right {
            return Ok(joined);
        }
        let vertices: Vec<String> = joined
            .vertices
            .iter()
            .filter(|v| **v != right)
            .cloned()
            .collect();
        let redirect = |v: &String| -> String {
            if *v == right {
                left.clone()
            } else {
                v.clone()
            }
        };
        let mut arrows = BTreeSet::new();
        for (a, b) in joined.arrows.iter() {
            let (a, b) = (redirect(a), redirect(b));
            if a != b {
                arrows.insert((a, b));
            }
        }
        Ok(Graph::from_parts(vertices, arrows))
    }

    /// Quotient by a partition of the vertex set. Each block becomes a
    /// vertex labelled by its least member, and distinct blocks are joined
    /// exactly when some pair of their members is.
    ///
    /// The result is the smallest graph making the projection a graph map.
    pub fn quotient(&self, partition: &Partition) -> Result<Graph, Error> {
        partition.check_partitions(self)?;
        let mut label_of: BTreeMap<&str, &str> = BTreeMap::new();
        for block in partition.blocks() {
            let label = block.iter().next().expect("blocks are nonempty");
            for v in block {
                label_of.insert(v.as_str(), label.as_str());
            }
        }
        let vertices: BTreeSet<String> = label_of.values().map(|s| s.to_string()).collect();
        let mut arrows = BTreeSet::new();
        for (a, b) in self.arrows.iter() {
            let (a, b) = (label_of[a.as_str()], label_of[b.as_str()]);
            if a != b {
                arrows.insert((a.to_string(), b.to_string()));
            }
        }
        Ok(Graph::from_parts(vertices.into_iter().collect(), arrows))
    }

    /// `v -> v'` implies `v' -> v`.
    pub fn is_symmetric(&self) -> bool {
        self.arrows
            .iter()
            .all(|(a, b)| self.arrows.contains(&(b.clone(), a.clone())))
    }

    /// `v -> v'` and `v' -> v''` imply `v => v''`.
    pub fn is_transitive(&self) -> bool {
        for (a, b) in self.arrows.iter() {
            for (b2, c) in self.arrows.iter() {
                if b == b2 && !self.arrow_or_equal(a, c) {
                    return false;
                }
            }
        }
        true
    }

    /// Symmetric and transitive: the graph encodes a partition of its
    /// vertices.
    pub fn is_clustering(&self) -> bool {
        self.is_symmetric() && self.is_transitive()
    }

    /// No directed cycle through two or more distinct vertices. Implicit
    /// self-loops do not count as cycles.
    pub fn has_no_cycles(&self) -> bool {
        // DFS over stored arrows; a back edge closes a cycle.
        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            White,
            Grey,
            Black,
        }
        let n = self.vertices.len();
        let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (a, b) in self.arrows.iter() {
            let i = self.vertex_index(a).expect("arrow endpoints are vertices");
            let j = self.vertex_index(b).expect("arrow endpoints are vertices");
            succ[i].push(j);
        }
        let mut mark = vec![Mark::White; n];
        for start in 0..n {
            if mark[start] != Mark::White {
                continue;
            }
            let mut stack = vec![(start, 0usize)];
            mark[start] = Mark::Grey;
            while let Some(&mut (v, ref mut next)) = stack.last_mut() {
                if *next < succ[v].len() {
                    let u = succ[v][*next];
                    *next += 1;
                    match mark[u] {
                        Mark::Grey => return false,
                        Mark::White => {
                            mark[u] = Mark::Grey;
                            stack.push((u, 0));
                        }
                        Mark::Black => {}
                    }
                } else {
                    mark[v] = Mark::Black;
                    stack.pop();
                }
            }
        }
        true
    }

    /// All four structural predicates at once.
    pub fn structural_flags(&self) -> StructuralFlags {
        let is_symmetric = self.is_symmetric();
        let is_transitive = self.is_transitive();
        StructuralFlags {
            is_symmetric,
            is_transitive,
            is_clustering: is_symmetric && is_transitive,
            has_no_cycles: self.has_no_cycles(),
        }
    }

    /// True when every ordered pair of distinct vertices is an arrow.
    pub fn is_complete(&self) -> bool {
        let n = self.vertices.len();
        self.arrows.len() == n * n.saturating_sub(1)
    }

    /// True when the graph has no stored arrows at all.
    pub fn is_discrete(&self) -> bool {
        self.arrows.is_empty()
    }
}

/// The structural predicates of a graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StructuralFlags {
    pub is_symmetric: bool,
    pub is_transitive: bool,
    pub is_clustering: bool,
    pub has_no_cycles: bool,
}

/// A graph with two distinguished vertices: the source mark and the target
/// mark (which may coincide).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointedGraph {
    graph: Graph,
    source_mark: String,
    target_mark: String,
}

impl PointedGraph {
    pub fn new(graph: Graph, source_mark: &str, target_mark: &str) -> Result<PointedGraph, Error> {
        if !graph.has_vertex(source_mark) {
            return Err(Error::UnknownVertex(source_mark.to_string()));
        }
        if !graph.has_vertex(target_mark) {
            return Err(Error::UnknownVertex(target_mark.to_string()));
        }
        Ok(PointedGraph {
            graph,
            source_mark: source_mark.to_string(),
            target_mark: target_mark.to_string(),
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn source_mark(&self) -> &str {
        &self.source_mark
    }

    pub fn target_mark(&self) -> &str {
        &self.target_mark
    }
}

/// A partition of a set of vertex labels into disjoint nonempty blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    blocks: Vec<BTreeSet<String>>,
}

impl Partition {
    /// Validates that the blocks are nonempty and pairwise disjoint; blocks
    /// are stored sorted by their least member.
    pub fn new<I, B, S>(blocks: I) -> Result<Partition, Error>
    where
        I: IntoIterator<Item = B>,
        B: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut seen: BTreeSet<String> = BTreeSet::new();
        let mut collected: Vec<BTreeSet<String>> = Vec::new();
        for block in blocks {
            let block: BTreeSet<String> = block.into_iter().map(Into::into).collect();
            if block.is_empty() {
                return Err(Error::InvalidPartition("empty block".to_string()));
            }
            for v in &block {
                if !seen.insert(v.clone()) {
                    return Err(Error::InvalidPartition(format!(
                        "vertex `{}` appears in two blocks",
                        v
                    )));
                }
            }
            collected.push(block);
        }
        collected.sort_by(|a, b| a.iter().next().cmp(&b.iter().next()));
        Ok(Partition { blocks: collected })
    }

    /// The partition of a graph's vertex set into singletons.
    pub fn singletons(graph: &Graph) -> Partition {
        Partition::new(graph.vertices().iter().map(|v| vec![v.clone()]))
            .expect("singletons are disjoint")
    }

    pub fn blocks(&self) -> &[BTreeSet<String>] {
        &self.blocks
    }

    /// Errors unless the blocks cover exactly the vertex set of `graph`.
    fn check_partitions(&self, graph: &Graph) -> Result<(), Error> {
        let mut covered: BTreeSet<&str> = BTreeSet::new();
        for block in &self.blocks {
            for v in block {
                if !graph.has_vertex(v) {
                    return Err(Error::InvalidPartition(format!(
                        "`{}` is not a vertex of the graph",
                        v
                    )));
                }
                covered.insert(v.as_str());
            }
        }
        if covered.len() != graph.vertex_count() {
            return Err(Error::InvalidPartition(
                "blocks do not cover the vertex set".to_string(),
            ));
        }
        Ok(())
    }
}

/// Decides whether `assignment` is a graph map from `domain` to `codomain`:
/// total on vertices, and sending every arrow to an arrow or an equality.
///
/// Mentioning a vertex outside either graph is an error rather than `false`.
pub fn is_graph_map(
    assignment: &BTreeMap<String, String>,
    domain: &Graph,
    codomain: &Graph,
) -> Result<bool, Error> {
    for (k, v) in assignment {
        if !domain.has_vertex(k) {
            return Err(Error::UnknownVertex(k.clone()));
        }
        if !codomain.has_vertex(v) {
            return Err(Error::UnknownVertex(v.clone()));
        }
    }
    for v in domain.vertices() {
        if !assignment.contains_key(v) {
            return Err(Error::MissingAssignment(v.clone()));
        }
    }
    for (a, b) in domain.arrows() {
        if !codomain.arrow_or_equal(&assignment[a], &assignment[b]) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A validated graph map: a total vertex assignment sending arrows to
/// arrows-or-equalities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphMap {
    domain: Graph,
    codomain: Graph,
    assignment: BTreeMap<String, String>,
}

impl GraphMap {
    pub fn new(
        domain: Graph,
        codomain: Graph,
        assignment: BTreeMap<String, String>,
    ) -> Result<GraphMap, Error> {
        if !is_graph_map(&assignment, &domain, &codomain)? {
            let bad = domain
                .arrows()
                .find(|(a, b)| !codomain.arrow_or_equal(&assignment[*a], &assignment[*b]))
                .expect("some arrow must fail");
            return Err(Error::NotAGraphMap {
                from: bad.0.to_string(),
                to: bad.1.to_string(),
            });
        }
        Ok(GraphMap {
            domain,
            codomain,
            assignment,
        })
    }

    pub fn identity(graph: &Graph) -> GraphMap {
        let assignment = graph
            .vertices()
            .iter()
            .map(|v| (v.clone(), v.clone()))
            .collect();
        GraphMap {
            domain: graph.clone(),
            codomain: graph.clone(),
            assignment,
        }
    }

    /// The constant map onto `target`.
    pub fn constant(domain: &Graph, codomain: &Graph, target: &str) -> Result<GraphMap, Error> {
        if !codomain.has_vertex(target) {
            return Err(Error::UnknownVertex(target.to_string()));
        }
        let assignment = domain
            .vertices()
            .iter()
            .map(|v| (v.clone(), target.to_string()))
            .collect();
        Ok(GraphMap {
            domain: domain.clone(),
            codomain: codomain.clone(),
            assignment,
        })
    }

    pub fn domain(&self) -> &Graph {
        &self.domain
    }

    pub fn codomain(&self) -> &Graph {
        &self.codomain
    }

    pub fn assignment(&self) -> &BTreeMap<String, String> {
        &self.assignment
    }

    pub fn apply(&self, v: &str) -> Option<&str> {
        self.assignment.get(v).map(|s| s.as_str())
    }

    /// `outer` after `self`; requires the codomain of `self` to equal the
    /// domain of `outer`. Compositions of graph maps are graph maps, so no
    /// re-validation happens.
    pub fn then(&self, outer: &GraphMap) -> Result<GraphMap, Error> {
        if self.codomain != outer.domain {
            return Err(Error::Format {
                format: "graph map composition",
                message: "codomain of the inner map must equal the domain of the outer map"
                    .to_string(),
            });
        }
        let assignment = self
            .assignment
            .iter()
            .map(|(k, v)| (k.clone(), outer.assignment[v].clone()))
            .collect();
        Ok(GraphMap {
            domain: self.domain.clone(),
            codomain: outer.codomain.clone(),
            assignment,
        })
    }
}
