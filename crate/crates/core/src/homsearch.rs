//! Decision procedures for the existence of (pointed) graph maps.
//!
//! The search assigns motif vertices to target vertices by backtracking:
//! pinned vertices first, the rest in order of descending degree, with
//! arc-consistency pruning of the candidate sets after every assignment.
//! Because graphs are reflexive, an arrow may always land on an equality,
//! so the binary constraint for a motif arrow `p -> q` is "image of `p`
//! equals or points to image of `q`".

use std::collections::BTreeMap;

use crate::dense::BitMat;
use crate::error::Error;
use crate::graph::{Graph, PointedGraph};
use crate::motif::{PointedFamily, UnpointedFamily};

pub(crate) struct MotifData {
    pub arrows: Vec<(usize, usize)>,
    pub order: Vec<usize>,
    pub n: usize,
}

impl MotifData {
    pub fn new(g: &Graph) -> MotifData {
        let mat = BitMat::from_graph(g);
        let n = g.vertex_count();
        let mut arrows = Vec::new();
        let mut degree = vec![0usize; n];
        for i in 0..n {
            for j in mat.row_indices(i) {
                arrows.push((i, j));
                degree[i] += 1;
                degree[j] += 1;
            }
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| (usize::MAX - degree[v], v));
        MotifData { arrows, order, n }
    }
}

pub(crate) struct TargetData {
    /// Arrow-or-equal adjacency (diagonal set).
    pub ae: BitMat,
    pub ae_rev: BitMat,
    pub n: usize,
}

impl TargetData {
    pub fn new(g: &Graph) -> TargetData {
        let ae = BitMat::from_graph(g).with_diagonal();
        let ae_rev = ae.transpose();
        TargetData {
            ae,
            ae_rev,
            n: g.vertex_count(),
        }
    }

    pub(crate) fn from_bits(bits: &BitMat) -> TargetData {
        let ae = bits.with_diagonal();
        let ae_rev = ae.transpose();
        TargetData {
            ae,
            ae_rev,
            n: bits.n,
        }
    }
}

struct Domains {
    words: usize,
    bits: Vec<u64>,
}

impl Domains {
    fn full(vars: usize, n: usize) -> Domains {
        let words = n.div_ceil(64).max(1);
        let mut bits = vec![u64::MAX; vars * words];
        // Mask off the tail beyond n.
        let tail = n % 64;
        if tail != 0 {
            for v in 0..vars {
                bits[v * words + words - 1] = (1u64 << tail) - 1;
            }
        }
        if n == 0 {
            bits.fill(0);
        }
        Domains { words, bits }
    }

    fn of(&self, var: usize) -> &[u64] {
        &self.bits[var * self.words..(var + 1) * self.words]
    }

    fn restrict_to(&mut self, var: usize, value: usize) {
        let slice = &mut self.bits[var * self.words..(var + 1) * self.words];
        slice.fill(0);
        slice[value / 64] = 1u64 << (value % 64);
    }

    fn is_empty(&self, var: usize) -> bool {
        self.of(var).iter().all(|w| *w == 0)
    }

    fn values(&self, var: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for (w, &word) in self.of(var).iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                out.push(w * 64 + bits.trailing_zeros() as usize);
                bits &= bits - 1;
            }
        }
        out
    }

    /// Intersects `var` with the union of `mat` rows over the current
    /// domain of `support`; reports whether anything was removed.
    fn revise(&mut self, var: usize, support: usize, mat: &BitMat) -> bool {
        let mut allowed = vec![0u64; self.words];
        for s in self.values(support) {
            for (a, b) in allowed.iter_mut().zip(mat.row(s)) {
                *a |= *b;
            }
        }
        let mut changed = false;
        let slice = &mut self.bits[var * self.words..(var + 1) * self.words];
        for (d, a) in slice.iter_mut().zip(allowed.iter()) {
            let next = *d & *a;
            if next != *d {
                changed = true;
                *d = next;
            }
        }
        changed
    }
}

/// Arc-consistency over all motif arrows until a fixpoint; false when some
/// domain empties.
fn propagate(motif: &MotifData, target: &TargetData, domains: &mut Domains) -> bool {
    loop {
        let mut changed = false;
        for &(p, q) in &motif.arrows {
            changed |= domains.revise(q, p, &target.ae);
            if domains.is_empty(q) {
                return false;
            }
            changed |= domains.revise(p, q, &target.ae_rev);
            if domains.is_empty(p) {
                return false;
            }
        }
        if !changed {
            return true;
        }
    }
}

fn backtrack(
    motif: &MotifData,
    target: &TargetData,
    order: &[usize],
    pos: usize,
    domains: &Domains,
) -> bool {
    if pos == order.len() {
        return true;
    }
    let var = order[pos];
    for value in domains.values(var) {
        let mut next = Domains {
            words: domains.words,
            bits: domains.bits.clone(),
        };
        next.restrict_to(var, value);
        if propagate(motif, target, &mut next) && backtrack(motif, target, order, pos + 1, &next) {
            return true;
        }
    }
    false
}

/// Dense-level search: is there a vertex assignment respecting all motif
/// arrows, with the given pins?
pub(crate) fn solve(motif: &MotifData, target: &TargetData, pins: &[(usize, usize)]) -> bool {
    if motif.n == 0 {
        return true;
    }
    if target.n == 0 {
        return false;
    }
    let mut domains = Domains::full(motif.n, target.n);
    for &(var, value) in pins {
        let had = domains.of(var)[value / 64] >> (value % 64) & 1 == 1;
        if !had {
            return false;
        }
        domains.restrict_to(var, value);
    }
    if !propagate(motif, target, &mut domains) {
        return false;
    }
    let mut order: Vec<usize> = pins.iter().map(|&(v, _)| v).collect();
    order.dedup();
    for &v in &motif.order {
        if !order.contains(&v) {
            order.push(v);
        }
    }
    backtrack(motif, target, &order, 0, &domains)
}

/// Is there a graph map from the pointed motif into `target` sending the
/// source mark to `source_image` and the target mark to `target_image`?
pub fn pointed_hom_exists(
    motif: &PointedGraph,
    target: &Graph,
    source_image: &str,
    target_image: &str,
) -> Result<bool, Error> {
    let v = target
        .vertex_index(source_image)
        .ok_or_else(|| Error::UnknownVertex(source_image.to_string()))?;
    let vp = target
        .vertex_index(target_image)
        .ok_or_else(|| Error::UnknownVertex(target_image.to_string()))?;
    let z = motif
        .graph()
        .vertex_index(motif.source_mark())
        .expect("mark is a vertex");
    let zh = motif
        .graph()
        .vertex_index(motif.target_mark())
        .expect("mark is a vertex");
    if z == zh && v != vp {
        return Ok(false);
    }
    let data = MotifData::new(motif.graph());
    let tgt = TargetData::new(target);
    Ok(solve(&data, &tgt, &[(z, v), (zh, vp)]))
}

/// Graph-map existence under an arbitrary partial pinning of motif vertices
/// to target vertices.
pub fn hom_exists_pinned(
    motif: &Graph,
    target: &Graph,
    pins: &BTreeMap<String, String>,
) -> Result<bool, Error> {
    let mut indexed = Vec::new();
    let mut by_var: BTreeMap<usize, usize> = BTreeMap::new();
    for (m, t) in pins {
        let var = motif
            .vertex_index(m)
            .ok_or_else(|| Error::UnknownVertex(m.clone()))?;
        let value = target
            .vertex_index(t)
            .ok_or_else(|| Error::UnknownVertex(t.clone()))?;
        if let Some(&prev) = by_var.get(&var) {
            if prev != value {
                return Ok(false);
            }
        }
        by_var.insert(var, value);
        indexed.push((var, value));
    }
    let data = MotifData::new(motif);
    let tgt = TargetData::new(target);
    Ok(solve(&data, &tgt, &indexed))
}

/// Is there a graph map from `motif` into `target` whose image contains
/// both `a` and `b`? Marks range over all pairs of motif vertices.
pub fn hom_exists_hitting(motif: &Graph, target: &Graph, a: &str, b: &str) -> Result<bool, Error> {
    let v = target
        .vertex_index(a)
        .ok_or_else(|| Error::UnknownVertex(a.to_string()))?;
    let vp = target
        .vertex_index(b)
        .ok_or_else(|| Error::UnknownVertex(b.to_string()))?;
    let data = MotifData::new(motif);
    let tgt = TargetData::new(target);
    Ok(hits(&data, &tgt, v, vp))
}

/// Dense-level form of [`hom_exists_hitting`].
pub(crate) fn hits(motif: &MotifData, target: &TargetData, v: usize, vp: usize) -> bool {
    for z in 0..motif.n {
        if !solve(motif, target, &[(z, v)]) {
            continue;
        }
        for zh in 0..motif.n {
            if z == zh && v != vp {
                continue;
            }
            if solve(motif, target, &[(z, v), (zh, vp)]) {
                return true;
            }
        }
    }
    false
}

/// Does `coverer` cover `covered`: is there a graph map from the coverer
/// into the covered graph matching both marks?
pub fn covers_pointed(coverer: &PointedGraph, covered: &PointedGraph) -> bool {
    pointed_hom_exists(
        coverer,
        covered.graph(),
        covered.source_mark(),
        covered.target_mark(),
    )
    .expect("marks are vertices of the covered graph")
}

/// Unpointed single-motif covering: for every choice of marks on `covered`,
/// some graph map from `coverer` hits both of them.
pub fn covers_unpointed(coverer: &Graph, covered: &Graph) -> bool {
    let data = MotifData::new(coverer);
    let tgt = TargetData::new(covered);
    for v in 0..covered.vertex_count() {
        for vp in 0..covered.vertex_count() {
            if !hits(&data, &tgt, v, vp) {
                return false;
            }
        }
    }
    true
}

/// Outcome of a family covering check; on failure it carries the first
/// element (with marks) that no coverer reaches.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoverOutcome {
    Covered,
    Uncovered(PointedGraph),
}

impl CoverOutcome {
    pub fn is_covered(&self) -> bool {
        matches!(self, CoverOutcome::Covered)
    }

    pub fn witness(&self) -> Option<&PointedGraph> {
        match self {
            CoverOutcome::Covered => None,
            CoverOutcome::Uncovered(w) => Some(w),
        }
    }
}

/// Decides whether every element of `covered` is covered by some element of
/// `covering`. An empty `covered` family is vacuously covered.
pub fn family_covers_pointed(covered: &PointedFamily, covering: &PointedFamily) -> CoverOutcome {
    for element in covered.members() {
        let ok = covering
            .members()
            .iter()
            .any(|candidate| covers_pointed(candidate, element));
        if !ok {
            return CoverOutcome::Uncovered(element.clone());
        }
    }
    CoverOutcome::Covered
}

/// Unpointed flavor: every motif of `covered`, with every choice of marks,
/// must be hit by some motif of `covering`.
pub fn family_covers_unpointed(
    covered: &UnpointedFamily,
    covering: &UnpointedFamily,
) -> CoverOutcome {
    let coverer_data: Vec<MotifData> = covering.members().iter().map(MotifData::new).collect();
    for motif in covered.members() {
        let tgt = TargetData::new(motif);
        for z in motif.vertices() {
            for zh in motif.vertices() {
                let v = motif.vertex_index(z).expect("vertex of the motif");
                let vp = motif.vertex_index(zh).expect("vertex of the motif");
                if !coverer_data.iter().any(|c| hits(c, &tgt, v, vp)) {
                    return CoverOutcome::Uncovered(
                        PointedGraph::new(motif.clone(), z, zh).expect("marks are vertices"),
                    );
                }
            }
        }
    }
    CoverOutcome::Covered
}
