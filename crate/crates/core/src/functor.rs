//! Vertex-preserving endofunctors on reflexive directed graphs: the builtin
//! family, motif-represented functors, the expression algebra (composition
//! and union), order comparison on corpora, axiom checks, and the
//! ultranetwork of a graph obtained from a nested chain of motif families.

use num_rational::Rational64;

use crate::dense::BitMat;
use crate::error::Error;
use crate::graph::Graph;
use crate::homsearch::{self, family_covers_unpointed, MotifData, TargetData};
use crate::motif::{PointedFamily, UnpointedFamily};
use crate::network::{ExtReal, ExtendedNetwork};

/// An algebraic expression over the builtin endofunctors and
/// motif-represented ones. Composition is written outer-first; union takes
/// the pointwise union of arrow sets.
///
/// `Power` and `SemiReciprocal` take parameters of at least one;
/// motif leaves expect nonempty families. The expression parser enforces
/// both.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FunctorExpr {
    /// Deletes every arrow.
    Disc,
    /// Relates weakly connected vertices.
    Conn,
    /// Relates every pair of vertices.
    Comp,
    /// Reverses every arrow.
    Rev,
    /// Keeps arrows whose reverse is also present.
    LowerSym,
    Id,
    /// Adds the reverse of every arrow.
    UpperSym,
    /// Relates vertices joined by a walk of at most `m` steps.
    Power(u32),
    /// Transitive closure: relates vertices joined by any walk.
    TransClosure,
    /// Unpointed motif functor: relates pairs hit by some motif image.
    Motif(UnpointedFamily),
    /// Pointed motif functor: relates pairs pinned by some motif's marks.
    PointedMotif(PointedFamily),
    /// Chains of reciprocal arrows; equals the transitive closure of the
    /// lower symmetrization.
    Reciprocal,
    /// Relates vertices in a common cycle: membership in one strongly
    /// connected component.
    NonReciprocal,
    /// Transitive closure of the upper symmetrization.
    Unilateral,
    /// Chains of reciprocal `t`-step walks.
    SemiReciprocal(u32),
    /// `Compose(outer, inner)` applies `inner` first.
    Compose(Box<FunctorExpr>, Box<FunctorExpr>),
    Union(Box<FunctorExpr>, Box<FunctorExpr>),
}

impl FunctorExpr {
    pub fn compose(outer: FunctorExpr, inner: FunctorExpr) -> FunctorExpr {
        FunctorExpr::Compose(Box::new(outer), Box::new(inner))
    }

    pub fn union(left: FunctorExpr, right: FunctorExpr) -> FunctorExpr {
        FunctorExpr::Union(Box::new(left), Box::new(right))
    }
}

impl std::fmt::Display for FunctorExpr {
    /// The grammar form of the expression; motif leaves render with their
    /// family size since the file they came from is not tracked here.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        fn factor(expr: &FunctorExpr, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
            match expr {
                FunctorExpr::Union(..) | FunctorExpr::Compose(..) => write!(f, "({})", expr),
                other => write!(f, "{}", other),
            }
        }
        match self {
            FunctorExpr::Disc => write!(f, "disc"),
            FunctorExpr::Conn => write!(f, "conn"),
            FunctorExpr::Comp => write!(f, "comp"),
            FunctorExpr::Rev => write!(f, "rev"),
            FunctorExpr::LowerSym => write!(f, "ls"),
            FunctorExpr::Id => write!(f, "id"),
            FunctorExpr::UpperSym => write!(f, "us"),
            FunctorExpr::Power(m) => write!(f, "power:{}", m),
            FunctorExpr::TransClosure => write!(f, "tc"),
            FunctorExpr::Motif(fam) => write!(f, "motif:<{} motifs>", fam.len()),
            FunctorExpr::PointedMotif(fam) => write!(f, "pmotif:<{} motifs>", fam.len()),
            FunctorExpr::Reciprocal => write!(f, "rec"),
            FunctorExpr::NonReciprocal => write!(f, "nrec"),
            FunctorExpr::Unilateral => write!(f, "uni"),
            FunctorExpr::SemiReciprocal(t) => write!(f, "semirec:{}", t),
            FunctorExpr::Compose(outer, inner) => {
                factor(outer, f)?;
                write!(f, ".")?;
                factor(inner, f)
            }
            FunctorExpr::Union(left, right) => {
                factor(left, f)?;
                write!(f, "+")?;
                factor(right, f)
            }
        }
    }
}

/// Applies the expression to a graph. The result always has the same vertex
/// set.
///
/// ```
/// use motifclust::{evaluate, FunctorExpr, Graph};
///
/// // Walks of length at most two, keeping only reciprocal pairs: on the
/// // directed four-cycle this relates exactly the two antipodal pairs.
/// let expr = FunctorExpr::compose(FunctorExpr::LowerSym, FunctorExpr::Power(2));
/// let image = evaluate(&expr, &Graph::cycle(4));
/// assert!(image.has_arrow("a1", "a3") && image.has_arrow("a3", "a1"));
/// assert!(!image.has_arrow("a1", "a2"));
/// ```
pub fn evaluate(expr: &FunctorExpr, graph: &Graph) -> Graph {
    let labels = graph.vertices().to_vec();
    eval_bits(expr, &BitMat::from_graph(graph)).to_graph(&labels)
}

fn components_to_bits(component: &[usize]) -> BitMat {
    let n = component.len();
    let mut out = BitMat::zero(n);
    for i in 0..n {
        for j in 0..n {
            if i != j && component[i] == component[j] {
                out.set(i, j);
            }
        }
    }
    out
}

fn power_bits(a: &BitMat, m: u32) -> BitMat {
    if m == 0 {
        return BitMat::zero(a.n);
    }
    // Walks of at most m steps: the m-th boolean power of the reflexive
    // matrix, by square and multiply.
    let base = a.with_diagonal();
    let mut result = base.clone();
    let mut remaining = m - 1;
    let mut square = base;
    while remaining > 0 {
        if remaining & 1 == 1 {
            result = result.multiply(&square);
        }
        square = square.multiply(&square);
        remaining >>= 1;
    }
    result.without_diagonal()
}

fn lower_sym(a: &BitMat) -> BitMat {
    a.intersect(&a.transpose())
}

fn closure(a: &BitMat) -> BitMat {
    a.reflexive_transitive_closure().without_diagonal()
}

fn motif_bits(family: &UnpointedFamily, a: &BitMat) -> BitMat {
    let target = TargetData::from_bits(a);
    let motifs: Vec<MotifData> = family.members().iter().map(MotifData::new).collect();
    let mut out = BitMat::zero(a.n);
    for i in 0..a.n {
        for j in (i + 1)..a.n {
            if motifs.iter().any(|m| homsearch::hits(m, &target, i, j)) {
                out.set(i, j);
                out.set(j, i);
            }
        }
    }
    out
}

fn pointed_motif_bits(family: &PointedFamily, a: &BitMat) -> BitMat {
    let target = TargetData::from_bits(a);
    let motifs: Vec<(MotifData, usize, usize)> = family
        .members()
        .iter()
        .map(|m| {
            let z = m
                .graph()
                .vertex_index(m.source_mark())
                .expect("mark is a vertex");
            let zh = m
                .graph()
                .vertex_index(m.target_mark())
                .expect("mark is a vertex");
            (MotifData::new(m.graph()), z, zh)
        })
        .collect();
    let mut out = BitMat::zero(a.n);
    for i in 0..a.n {
        for j in 0..a.n {
            if i == j {
                continue;
            }
            let hit = motifs.iter().any(|(m, z, zh)| {
                if z == zh {
                    false
                } else {
                    homsearch::solve(m, &target, &[(*z, i), (*zh, j)])
                }
            });
            if hit {
                out.set(i, j);
            }
        }
    }
    out
}

fn eval_bits(expr: &FunctorExpr, a: &BitMat) -> BitMat {
    match expr {
        FunctorExpr::Disc => BitMat::zero(a.n),
        FunctorExpr::Conn => components_to_bits(&a.weak_components()),
        FunctorExpr::Comp => BitMat::full_off_diagonal(a.n),
        FunctorExpr::Rev => a.transpose(),
        FunctorExpr::LowerSym => lower_sym(a),
        FunctorExpr::Id => a.clone(),
        FunctorExpr::UpperSym => a.union(&a.transpose()),
        FunctorExpr::Power(m) => power_bits(a, *m),
        FunctorExpr::TransClosure => closure(a),
        FunctorExpr::Motif(family) => motif_bits(family, a),
        FunctorExpr::PointedMotif(family) => pointed_motif_bits(family, a),
        FunctorExpr::Reciprocal => closure(&lower_sym(a)),
        FunctorExpr::NonReciprocal => components_to_bits(&a.strong_components()),
        FunctorExpr::Unilateral => closure(&a.union(&a.transpose())),
        FunctorExpr::SemiReciprocal(t) => closure(&lower_sym(&power_bits(a, *t))),
        FunctorExpr::Compose(outer, inner) => eval_bits(outer, &eval_bits(inner, a)),
        FunctorExpr::Union(left, right) => eval_bits(left, a).union(&eval_bits(right, a)),
    }
}

/// How two expressions compare by arrow-set inclusion across a corpus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Equal,
    LessOrEqual,
    GreaterOrEqual,
    Incomparable,
}

/// Comparison outcome with the first counterexample graph per violated
/// direction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comparison {
    pub relation: Relation,
    /// First corpus graph on which the left output is not included in the
    /// right output.
    pub not_le_witness: Option<Graph>,
    /// First corpus graph on which the right output is not included in the
    /// left output.
    pub not_ge_witness: Option<Graph>,
}

pub fn compare_on(left: &FunctorExpr, right: &FunctorExpr, corpus: &[Graph]) -> Comparison {
    let mut not_le_witness = None;
    let mut not_ge_witness = None;
    for g in corpus {
        let a = evaluate(left, g);
        let b = evaluate(right, g);
        if not_le_witness.is_none() && !a.arrows().all(|(x, y)| b.has_arrow(x, y)) {
            not_le_witness = Some(g.clone());
        }
        if not_ge_witness.is_none() && !b.arrows().all(|(x, y)| a.has_arrow(x, y)) {
            not_ge_witness = Some(g.clone());
        }
        if not_le_witness.is_some() && not_ge_witness.is_some() {
            break;
        }
    }
    let relation = match (&not_le_witness, &not_ge_witness) {
        (None, None) => Relation::Equal,
        (None, Some(_)) => Relation::LessOrEqual,
        (Some(_), None) => Relation::GreaterOrEqual,
        (Some(_), Some(_)) => Relation::Incomparable,
    };
    Comparison {
        relation,
        not_le_witness,
        not_ge_witness,
    }
}

/// What an expression does to the three graphs on two vertices. Most of the
/// coarse classification of a functor can be read off these.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoVertexProbe {
    pub on_discrete_pair: Graph,
    pub on_arrow: Graph,
    pub on_complete_pair: Graph,
    /// The discrete pair gained an arrow, which forces the functor to be
    /// the full completion.
    pub is_comp_forced: bool,
    /// The complete pair lost an arrow, which forces the functor to be the
    /// full disconnection.
    pub is_disc_forced: bool,
    /// The single arrow survived, which makes the functor arrow-increasing.
    pub arrow_increasing: bool,
}

pub fn probe_two_vertex(expr: &FunctorExpr) -> TwoVertexProbe {
    let on_discrete_pair = evaluate(expr, &Graph::discrete(2));
    let on_arrow = evaluate(expr, &Graph::line(2));
    let on_complete_pair = evaluate(expr, &Graph::complete(2));
    let is_comp_forced = on_discrete_pair.arrow_count() > 0;
    let is_disc_forced = on_complete_pair.arrow_count() < 2;
    let arrow_increasing = on_arrow.has_arrow("a1", "a2");
    TwoVertexProbe {
        on_discrete_pair,
        on_arrow,
        on_complete_pair,
        is_comp_forced,
        is_disc_forced,
        arrow_increasing,
    }
}

/// The axioms of value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axiom {
    /// The single arrow disconnects and the complete pair survives.
    Value,
    /// The extended form: every transitive line up to the bound
    /// disconnects and every complete graph up to the bound survives.
    ExtendedValue(usize),
    /// The discrete pair and the single arrow are both fixed; among
    /// transitive-valued functors this pins down the transitive closure.
    AlternativeValue,
}

pub fn check_axiom(expr: &FunctorExpr, axiom: Axiom) -> bool {
    match axiom {
        Axiom::Value => {
            evaluate(expr, &Graph::line(2)) == Graph::discrete(2)
                && evaluate(expr, &Graph::complete(2)) == Graph::complete(2)
        }
        Axiom::ExtendedValue(bound) => (2..=bound).all(|k| {
            evaluate(expr, &Graph::transitive_line(k)) == Graph::discrete(k)
                && evaluate(expr, &Graph::complete(k)) == Graph::complete(k)
        }),
        Axiom::AlternativeValue => {
            evaluate(expr, &Graph::discrete(2)) == Graph::discrete(2)
                && evaluate(expr, &Graph::line(2)) == Graph::line(2)
        }
    }
}

/// Is the expression's output on this graph complete?
pub fn is_completion(expr: &FunctorExpr, graph: &Graph) -> bool {
    evaluate(expr, graph).is_complete()
}

/// The ultranetwork of a graph obtained from a nested chain of motif
/// families: level 0 relates nothing, level `i` relates what the closure of
/// the `i`-th motif functor relates, and level `n+1` relates everything.
///
/// The chain condition (each family covered by the next) is verified and a
/// violation reports the offending adjacent pair, 1-based.
///
/// Note that with cycle families a vertex lying on no cycle (a pure source
/// or sink, say) is related to nothing at any proper level, so it merges
/// only at the top level `n+1` — it is never pulled in earlier.
pub fn graph_hierarchy(
    graph: &Graph,
    families: &[UnpointedFamily],
) -> Result<ExtendedNetwork, Error> {
    for i in 0..families.len().saturating_sub(1) {
        if !family_covers_unpointed(&families[i], &families[i + 1]).is_covered() {
            return Err(Error::ChainViolation {
                lower: i + 1,
                upper: i + 2,
            });
        }
    }
    let n = graph.vertex_count();
    let top = families.len() + 1;
    let mut level = vec![vec![top; n]; n];
    for (i, row) in level.iter_mut().enumerate() {
        row[i] = 0;
    }
    let bits = BitMat::from_graph(graph);
    for (idx, family) in families.iter().enumerate() {
        let related = closure(&motif_bits(family, &bits));
        for (i, row) in level.iter_mut().enumerate() {
            for j in related.row_indices(i) {
                if row[j] > idx + 1 {
                    row[j] = idx + 1;
                }
            }
        }
    }
    let weights: Vec<Vec<ExtReal>> = level
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|l| ExtReal::from(Rational64::from_integer(l as i64)))
                .collect()
        })
        .collect();
    ExtendedNetwork::new(graph.vertices().to_vec(), weights)
}

/// The cycles of size 2 through `max`, the motif family behind
/// non-reciprocal clustering (capped; cycles up to twice the vertex count
/// of the target are enough).
pub fn cycles_up_to(max: usize) -> UnpointedFamily {
    UnpointedFamily::new((2..=max.max(1)).map(Graph::cycle))
}

/// Reciprocal lines of 1 through `max` vertices, the motif family behind
/// reciprocal clustering (lines as long as the target suffice).
pub fn reciprocal_lines_up_to(max: usize) -> UnpointedFamily {
    UnpointedFamily::new((1..=max).map(Graph::reciprocal_line))
}

/// All orientations of paths on up to `max` vertices. Representing the
/// weak-connectivity functor needs zig-zags as long as the target.
pub fn zigzags_up_to(max: usize) -> UnpointedFamily {
    let mut out = Vec::new();
    for n in 1..=max {
        let vertices: Vec<String> = (1..=n).map(|i| format!("a{}", i)).collect();
        for mask in 0u64..(1 << (n - 1)) {
            let arrows = (0..n - 1).map(|i| {
                if mask >> i & 1 == 1 {
                    (vertices[i + 1].clone(), vertices[i].clone())
                } else {
                    (vertices[i].clone(), vertices[i + 1].clone())
                }
            });
            out.push(Graph::new(vertices.clone(), arrows).expect("path endpoints"));
        }
    }
    UnpointedFamily::new(out)
}
