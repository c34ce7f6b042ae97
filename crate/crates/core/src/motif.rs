//! Motif families and the algebra on them: attachment composition, the
//! pointed lift of an unpointed family, simplification under covering, the
//! wedge-cover test for clustering, and bounded extraction of a
//! representing family from an arbitrary functor expression.

use std::collections::BTreeMap;

use crate::corpus;
use crate::error::Error;
use crate::functor::{evaluate, FunctorExpr};
use crate::graph::{Graph, Partition, PointedGraph};
use crate::homsearch::{covers_pointed, covers_unpointed, hits, MotifData, TargetData};
use crate::iso::{are_isomorphic, are_pointed_isomorphic, invariant_key};

/// Caps on combinatorial constructions. These are configuration, not
/// constants: the CLI lets the environment override them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Maximum number of attachment assignments a composition may enumerate.
    pub compose: u64,
    /// Maximum number of basepoint pairs a wedge-cover check may enumerate.
    pub wedge: u64,
}

impl Default for Caps {
    fn default() -> Caps {
        Caps {
            compose: 10_000,
            wedge: 10_000,
        }
    }
}

/// A finite family of unpointed motifs, deduplicated up to isomorphism.
/// Representatives keep their first-seen order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnpointedFamily {
    members: Vec<Graph>,
}

impl UnpointedFamily {
    pub fn new<I: IntoIterator<Item = Graph>>(motifs: I) -> UnpointedFamily {
        let mut members: Vec<Graph> = Vec::new();
        let mut buckets: BTreeMap<Vec<u64>, Vec<usize>> = BTreeMap::new();
        for g in motifs {
            let key = invariant_key(&g, None);
            let entries = buckets.entry(key).or_default();
            if entries.iter().any(|&i| are_isomorphic(&members[i], &g)) {
                continue;
            }
            entries.push(members.len());
            members.push(g);
        }
        UnpointedFamily { members }
    }

    pub fn members(&self) -> &[Graph] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Removes every motif covered by another remaining motif. Survivors are
    /// the maximal elements of the covering preorder, one per mutual-cover
    /// class, preferring fewer vertices, then fewer arrows, then first seen.
    pub fn simplify(&self) -> UnpointedFamily {
        let kept = simplify_indices(
            self.members.len(),
            |i, j| covers_unpointed(&self.members[i], &self.members[j]),
            |i| {
                (
                    self.members[i].vertex_count(),
                    self.members[i].arrow_count(),
                )
            },
        );
        let reduced = UnpointedFamily {
            members: kept.into_iter().map(|i| self.members[i].clone()).collect(),
        };
        debug_assert!(
            crate::homsearch::family_covers_unpointed(self, &reduced).is_covered()
                && crate::homsearch::family_covers_unpointed(&reduced, self).is_covered(),
            "simplification must preserve mutual covering"
        );
        reduced
    }
}

/// A finite family of pointed motifs, deduplicated up to pointed
/// isomorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointedFamily {
    members: Vec<PointedGraph>,
}

impl PointedFamily {
    pub fn new<I: IntoIterator<Item = PointedGraph>>(motifs: I) -> PointedFamily {
        let mut members: Vec<PointedGraph> = Vec::new();
        let mut buckets: BTreeMap<Vec<u64>, Vec<usize>> = BTreeMap::new();
        for g in motifs {
            let key = invariant_key(g.graph(), Some((g.source_mark(), g.target_mark())));
            let entries = buckets.entry(key).or_default();
            if entries
                .iter()
                .any(|&i| are_pointed_isomorphic(&members[i], &g))
            {
                continue;
            }
            entries.push(members.len());
            members.push(g);
        }
        PointedFamily { members }
    }

    pub fn members(&self) -> &[PointedGraph] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn simplify(&self) -> PointedFamily {
        let kept = simplify_indices(
            self.members.len(),
            |i, j| covers_pointed(&self.members[i], &self.members[j]),
            |i| {
                (
                    self.members[i].graph().vertex_count(),
                    self.members[i].graph().arrow_count(),
                )
            },
        );
        let reduced = PointedFamily {
            members: kept.into_iter().map(|i| self.members[i].clone()).collect(),
        };
        debug_assert!(
            crate::homsearch::family_covers_pointed(self, &reduced).is_covered()
                && crate::homsearch::family_covers_pointed(&reduced, self).is_covered(),
            "simplification must preserve mutual covering"
        );
        reduced
    }
}

/// Shared core of the two simplifiers: `covers(i, j)` says member `i`
/// covers member `j`. Mutual covering is an equivalence (covering is a
/// preorder); we keep one representative from each maximal class.
fn simplify_indices(
    n: usize,
    covers: impl Fn(usize, usize) -> bool,
    size: impl Fn(usize) -> (usize, usize),
) -> Vec<usize> {
    let mut mat = vec![vec![false; n]; n];
    for (i, row) in mat.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = i == j || covers(i, j);
        }
    }
    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        if class_of[i] != usize::MAX {
            continue;
        }
        let id = classes.len();
        let mut class = vec![i];
        class_of[i] = id;
        for j in (i + 1)..n {
            if class_of[j] == usize::MAX && mat[i][j] && mat[j][i] {
                class_of[j] = id;
                class.push(j);
            }
        }
        classes.push(class);
    }
    let mut kept = Vec::new();
    'classes: for class in &classes {
        let rep = class[0];
        for other in 0..n {
            // A strictly greater class covers this one: drop it.
            if class_of[other] != class_of[rep] && mat[other][rep] {
                continue 'classes;
            }
        }
        let best = *class
            .iter()
            .min_by_key(|&&i| (size(i), i))
            .expect("classes are nonempty");
        kept.push(best);
    }
    kept.sort_unstable();
    kept
}

/// Either flavor of family, as read from or written to motif-family files.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MotifFamily {
    Unpointed(UnpointedFamily),
    Pointed(PointedFamily),
}

impl MotifFamily {
    pub fn is_pointed(&self) -> bool {
        matches!(self, MotifFamily::Pointed(_))
    }

    pub fn len(&self) -> usize {
        match self {
            MotifFamily::Unpointed(f) => f.len(),
            MotifFamily::Pointed(f) => f.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn simplify(&self) -> MotifFamily {
        match self {
            MotifFamily::Unpointed(f) => MotifFamily::Unpointed(f.simplify()),
            MotifFamily::Pointed(f) => MotifFamily::Pointed(f.simplify()),
        }
    }

    pub fn as_pointed(&self) -> Result<&PointedFamily, Error> {
        match self {
            MotifFamily::Pointed(f) => Ok(f),
            MotifFamily::Unpointed(_) => Err(Error::WrongPointedness {
                expected: "pointed",
            }),
        }
    }

    pub fn as_unpointed(&self) -> Result<&UnpointedFamily, Error> {
        match self {
            MotifFamily::Unpointed(f) => Ok(f),
            MotifFamily::Pointed(_) => Err(Error::WrongPointedness {
                expected: "unpointed",
            }),
        }
    }
}

/// A base pointed motif together with one pointed motif per base arrow.
/// Attaching replaces each base arrow by its assigned motif, glued in at
/// the arrow's endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttachmentPlan {
    base: PointedGraph,
    assignment: BTreeMap<(String, String), PointedGraph>,
}

impl AttachmentPlan {
    /// The assignment must mention exactly the arrows of the base.
    pub fn new(
        base: PointedGraph,
        assignment: BTreeMap<(String, String), PointedGraph>,
    ) -> Result<AttachmentPlan, Error> {
        for (from, to) in assignment.keys() {
            if !base.graph().has_arrow(from, to) {
                return Err(Error::Format {
                    format: "attachment plan",
                    message: format!("({from}, {to}) is not an arrow of the base"),
                });
            }
        }
        if assignment.len() != base.graph().arrow_count() {
            return Err(Error::Format {
                format: "attachment plan",
                message: "assignment must be total on the arrows of the base".to_string(),
            });
        }
        Ok(AttachmentPlan { base, assignment })
    }

    pub fn base(&self) -> &PointedGraph {
        &self.base
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        if self.0[x] != x {
            let root = self.find(self.0[x]);
            self.0[x] = root;
        }
        self.0[x]
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Glues one assigned motif into each arrow of the base: the source mark of
/// the assigned motif is identified with the arrow's source, its target
/// mark with the arrow's target. The base's own arrows are deleted; only
/// arrows inherited from the attached motifs remain. The base marks are
/// retained.
pub fn attach(plan: &AttachmentPlan) -> PointedGraph {
    let base = plan.base.graph();
    let base_vertices = base.vertices();
    let arrows: Vec<(&str, &str)> = base.arrows().collect();

    // Global ids: base vertices first, then each piece's vertices.
    let mut piece_offset = Vec::with_capacity(arrows.len());
    let mut total = base_vertices.len();
    for (from, to) in &arrows {
        let piece = &plan.assignment[&(from.to_string(), to.to_string())];
        piece_offset.push(total);
        total += piece.graph().vertex_count();
    }
    let mut uf = UnionFind::new(total);
    for (e, (from, to)) in arrows.iter().enumerate() {
        let piece = &plan.assignment[&(from.to_string(), to.to_string())];
        let base_from = base.vertex_index(from).expect("arrow endpoint");
        let base_to = base.vertex_index(to).expect("arrow endpoint");
        let z = piece
            .graph()
            .vertex_index(piece.source_mark())
            .expect("mark is a vertex");
        let zh = piece
            .graph()
            .vertex_index(piece.target_mark())
            .expect("mark is a vertex");
        uf.union(base_from, piece_offset[e] + z);
        uf.union(base_to, piece_offset[e] + zh);
    }

    // Deterministic class labels: base labels win, glued piece vertices get
    // an arrow-indexed suffix.
    let raw_name = |id: usize| -> String {
        if id < base_vertices.len() {
            base_vertices[id].clone()
        } else {
            let e = piece_offset
                .iter()
                .rposition(|&off| off <= id)
                .expect("id belongs to a piece");
            let (from, to) = &arrows[e];
            let piece = &plan.assignment[&(from.to_string(), to.to_string())];
            format!("{}~{}", piece.graph().vertices()[id - piece_offset[e]], e)
        }
    };
    let mut label_of_class: BTreeMap<usize, String> = BTreeMap::new();
    for id in 0..total {
        let root = uf.find(id);
        let name = raw_name(id);
        let is_base = id < base_vertices.len();
        let entry = label_of_class.entry(root).or_insert_with(|| name.clone());
        // Base names take priority; among base names keep the least.
        let entry_is_base = base_vertices.binary_search(entry).is_ok();
        if (is_base && !entry_is_base) || (is_base == entry_is_base && name < *entry) {
            *entry = name;
        }
    }
    let mut used: BTreeMap<String, usize> = BTreeMap::new();
    for root in label_of_class.keys().cloned().collect::<Vec<_>>() {
        let mut label = label_of_class[&root].clone();
        while let Some(&other) = used.get(&label) {
            if other == root {
                break;
            }
            label.push('\'');
        }
        used.insert(label.clone(), root);
        label_of_class.insert(root, label);
    }

    let vertices: Vec<String> = label_of_class.values().cloned().collect();
    let mut arrow_set = std::collections::BTreeSet::new();
    for (e, (from, to)) in arrows.iter().enumerate() {
        let piece = &plan.assignment[&(from.to_string(), to.to_string())];
        for (p, q) in piece.graph().arrows() {
            let pi = piece.graph().vertex_index(p).expect("arrow endpoint");
            let qi = piece.graph().vertex_index(q).expect("arrow endpoint");
            let a = label_of_class[&uf.find(piece_offset[e] + pi)].clone();
            let b = label_of_class[&uf.find(piece_offset[e] + qi)].clone();
            if a != b {
                arrow_set.insert((a, b));
            }
        }
    }
    let graph = Graph::new(vertices, arrow_set).expect("endpoints are classes");
    let z_idx = base
        .vertex_index(plan.base.source_mark())
        .expect("mark is a vertex");
    let zh_idx = base
        .vertex_index(plan.base.target_mark())
        .expect("mark is a vertex");
    let z = label_of_class[&uf.find(z_idx)].clone();
    let zh = label_of_class[&uf.find(zh_idx)].clone();
    PointedGraph::new(graph, &z, &zh).expect("marks survive the quotient")
}

/// The composition of two pointed families: every way of attaching inner
/// motifs to the arrows of every outer motif, deduplicated up to pointed
/// isomorphism.
///
/// Refuses when the number of attachment assignments exceeds the cap.
pub fn pointed_compose(
    outer: &PointedFamily,
    inner: &PointedFamily,
    caps: &Caps,
) -> Result<PointedFamily, Error> {
    let mut bound: u128 = 0;
    for base in outer.members() {
        let arrows = base.graph().arrow_count() as u32;
        bound = bound.saturating_add((inner.len() as u128).saturating_pow(arrows));
    }
    if bound > caps.compose as u128 {
        return Err(Error::CapExceeded {
            bound,
            cap: caps.compose,
        });
    }
    let mut results = Vec::new();
    for base in outer.members() {
        let arrows: Vec<(String, String)> = base
            .graph()
            .arrows()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        if arrows.is_empty() {
            results.push(base.clone());
            continue;
        }
        if inner.is_empty() {
            continue;
        }
        let mut digits = vec![0usize; arrows.len()];
        loop {
            let assignment: BTreeMap<(String, String), PointedGraph> = arrows
                .iter()
                .cloned()
                .zip(digits.iter().map(|&d| inner.members()[d].clone()))
                .collect();
            let plan = AttachmentPlan::new(base.clone(), assignment).expect("assignment is total");
            results.push(attach(&plan));
            // Advance the odometer.
            let mut i = 0;
            loop {
                if i == digits.len() {
                    break;
                }
                digits[i] += 1;
                if digits[i] < inner.len() {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
            if i == digits.len() {
                break;
            }
        }
    }
    Ok(PointedFamily::new(results))
}

/// The pointed family induced by an unpointed one: every motif with every
/// choice of source and target marks.
pub fn lift(family: &UnpointedFamily) -> PointedFamily {
    let mut out = Vec::new();
    for motif in family.members() {
        for z in motif.vertices() {
            for zh in motif.vertices() {
                out.push(PointedGraph::new(motif.clone(), z, zh).expect("marks are vertices"));
            }
        }
    }
    PointedFamily::new(out)
}

/// Result of a wedge-cover check, with the first uncovered wedge and mark
/// pair when the family fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WedgeCheck {
    pub wedge_covered: bool,
    pub witness: Option<WedgeWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WedgeWitness {
    pub wedge: Graph,
    pub source: String,
    pub target: String,
}

/// Decides whether gluing any two family motifs at a point stays covered by
/// the family; this characterises the families whose represented functor is
/// a clustering functor.
pub fn wedge_cover_check(family: &UnpointedFamily, caps: &Caps) -> Result<WedgeCheck, Error> {
    let basepoints: u128 = family
        .members()
        .iter()
        .map(|m| m.vertex_count() as u128)
        .sum();
    let bound = basepoints * basepoints;
    if bound > caps.wedge as u128 {
        return Err(Error::CapExceeded {
            bound,
            cap: caps.wedge,
        });
    }
    let searchers: Vec<MotifData> = family.members().iter().map(MotifData::new).collect();
    let mut points: Vec<(usize, String)> = Vec::new();
    for (i, motif) in family.members().iter().enumerate() {
        for v in motif.vertices() {
            points.push((i, v.clone()));
        }
    }
    for (a, (i, z1)) in points.iter().enumerate() {
        for (j, z2) in points.iter().skip(a) {
            // The wedge is symmetric in its two halves, so unordered pairs
            // of basepoints suffice.
            let wedge = family.members()[*i]
                .wedge(z1, &family.members()[*j], z2)
                .expect("basepoints are vertices");
            let tgt = TargetData::new(&wedge);
            for v in 0..wedge.vertex_count() {
                for vp in 0..wedge.vertex_count() {
                    if !searchers.iter().any(|s| hits(s, &tgt, v, vp)) {
                        return Ok(WedgeCheck {
                            wedge_covered: false,
                            witness: Some(WedgeWitness {
                                source: wedge.vertices()[v].clone(),
                                target: wedge.vertices()[vp].clone(),
                                wedge,
                            }),
                        });
                    }
                }
            }
        }
    }
    Ok(WedgeCheck {
        wedge_covered: true,
        witness: None,
    })
}

/// The pointed motifs of size at most `cap` generated by a functor: every
/// small graph marked at each pair related by the functor's output (marks
/// may coincide). The returned family agrees with the functor on every
/// graph with at most `cap` vertices.
pub fn omega_star_of(expr: &FunctorExpr, cap: usize) -> Result<PointedFamily, Error> {
    if cap > 4 {
        return Err(Error::OmegaCapTooLarge(cap));
    }
    let mut out = Vec::new();
    for motif in corpus::graphs_up_to_iso(cap.max(1)) {
        let image = evaluate(expr, &motif);
        for z in motif.vertices() {
            out.push(PointedGraph::new(motif.clone(), z, z).expect("marks are vertices"));
        }
        for (z, zh) in image.arrows() {
            out.push(PointedGraph::new(motif.clone(), z, zh).expect("marks are vertices"));
        }
    }
    Ok(PointedFamily::new(out))
}

/// Diagnostic for the axiom of value on a represented functor, by the
/// two-block quotient characterisation: the functor satisfies the axiom
/// exactly when some motif has more than one vertex and every two-block
/// quotient of every motif is the complete pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct A1Diagnostic {
    pub holds: bool,
    pub has_multi_vertex_motif: bool,
    pub failing: Option<(Graph, Partition)>,
}

pub fn a1_partition_diagnostic(family: &UnpointedFamily) -> A1Diagnostic {
    let has_multi_vertex_motif = family.members().iter().any(|m| m.vertex_count() >= 2);
    let mut failing = None;
    'outer: for motif in family.members() {
        let n = motif.vertex_count();
        if n < 2 {
            continue;
        }
        let vs = motif.vertices();
        // All splits into two nonempty blocks; fix the first vertex in the
        // first block to avoid the mirrored split.
        for mask in 0..(1u64 << (n - 1)) {
            let mut left = vec![vs[0].clone()];
            let mut right = Vec::new();
            for (k, v) in vs.iter().enumerate().skip(1) {
                if mask >> (k - 1) & 1 == 1 {
                    left.push(v.clone());
                } else {
                    right.push(v.clone());
                }
            }
            if right.is_empty() {
                continue;
            }
            let partition = Partition::new([left, right]).expect("blocks are disjoint");
            let quotient = motif.quotient(&partition).expect("partition covers");
            if !(quotient.vertex_count() == 2 && quotient.is_complete()) {
                failing = Some((motif.clone(), partition));
                break 'outer;
            }
        }
    }
    A1Diagnostic {
        holds: has_multi_vertex_motif && failing.is_none(),
        has_multi_vertex_motif,
        failing,
    }
}
