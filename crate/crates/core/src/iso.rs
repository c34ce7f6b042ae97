//! Graph isomorphism by degree-sequence refinement and backtracking.
//!
//! Every use in this crate is on motifs of at most a dozen vertices, so the
//! search never needs more machinery than iterated neighbourhood refinement
//! plus a class-respecting backtrack.

use std::collections::BTreeMap;

use crate::dense::BitMat;
use crate::graph::{Graph, PointedGraph};

/// Iterated neighbourhood refinement. Colors are canonical across graphs:
/// two vertices in two graphs get the same color exactly when their iterated
/// degree signatures agree.
fn refine_colors(mat: &BitMat, rev: &BitMat, init: &[u64]) -> Vec<u64> {
    let n = mat.n;
    let mut colors: Vec<u64> = init.to_vec();
    loop {
        let mut sigs: Vec<(u64, Vec<u64>, Vec<u64>)> = Vec::with_capacity(n);
        for v in 0..n {
            let mut out: Vec<u64> = mat.row_indices(v).map(|u| colors[u]).collect();
            let mut inc: Vec<u64> = rev.row_indices(v).map(|u| colors[u]).collect();
            out.sort_unstable();
            inc.sort_unstable();
            sigs.push((colors[v], out, inc));
        }
        let mut sorted: Vec<&(u64, Vec<u64>, Vec<u64>)> = sigs.iter().collect();
        sorted.sort();
        sorted.dedup();
        let index: BTreeMap<&(u64, Vec<u64>, Vec<u64>), u64> = sorted
            .into_iter()
            .enumerate()
            .map(|(i, s)| (s, i as u64))
            .collect();
        let next: Vec<u64> = sigs.iter().map(|s| index[s]).collect();
        if next == colors {
            return colors;
        }
        colors = next;
    }
}

fn initial_colors(mat: &BitMat, rev: &BitMat, marks: Option<(usize, usize)>) -> Vec<u64> {
    (0..mat.n)
        .map(|v| {
            let out = mat
                .row(v)
                .iter()
                .map(|w| w.count_ones() as u64)
                .sum::<u64>();
            let inc = rev
                .row(v)
                .iter()
                .map(|w| w.count_ones() as u64)
                .sum::<u64>();
            let mark = match marks {
                Some((z, zh)) => (v == z) as u64 * 2 + (v == zh) as u64,
                None => 0,
            };
            mark << 32 | out << 16 | inc
        })
        .collect()
}

/// Sorted color histogram, used as a cheap iso-invariant screen.
fn color_histogram(colors: &[u64]) -> Vec<(u64, usize)> {
    let mut hist: BTreeMap<u64, usize> = BTreeMap::new();
    for &c in colors {
        *hist.entry(c).or_insert(0) += 1;
    }
    hist.into_iter().collect()
}

fn search_isomorphism(
    a: &BitMat,
    b: &BitMat,
    ca: &[u64],
    cb: &[u64],
    forced: &[(usize, usize)],
) -> bool {
    let n = a.n;
    let mut image: Vec<Option<usize>> = vec![None; n];
    let mut used = vec![false; n];
    for &(x, y) in forced {
        if ca[x] != cb[y] {
            return false;
        }
        match image[x] {
            Some(cur) if cur != y => return false,
            Some(_) => {}
            None => {
                if used[y] {
                    return false;
                }
                image[x] = Some(y);
                used[y] = true;
            }
        }
    }
    // Most-constrained first: rarest colors get assigned early.
    let hist = color_histogram(ca);
    let rarity: BTreeMap<u64, usize> = hist.into_iter().collect();
    let mut order: Vec<usize> = (0..n).filter(|v| image[*v].is_none()).collect();
    order.sort_by_key(|&v| (rarity[&ca[v]], ca[v], v));

    fn consistent(a: &BitMat, b: &BitMat, image: &[Option<usize>], x: usize, y: usize) -> bool {
        for (u, img) in image.iter().enumerate() {
            if let Some(w) = img {
                if a.get(x, u) != b.get(y, *w) || a.get(u, x) != b.get(*w, y) {
                    return false;
                }
            }
        }
        true
    }

    #[allow(clippy::too_many_arguments)]
    fn rec(
        a: &BitMat,
        b: &BitMat,
        ca: &[u64],
        cb: &[u64],
        order: &[usize],
        pos: usize,
        image: &mut [Option<usize>],
        used: &mut [bool],
    ) -> bool {
        if pos == order.len() {
            return true;
        }
        let x = order[pos];
        for y in 0..b.n {
            if used[y] || cb[y] != ca[x] {
                continue;
            }
            if !consistent(a, b, image, x, y) {
                continue;
            }
            image[x] = Some(y);
            used[y] = true;
            if rec(a, b, ca, cb, order, pos + 1, image, used) {
                return true;
            }
            image[x] = None;
            used[y] = false;
        }
        false
    }

    // Forced pairs must also be mutually consistent.
    for &(x, y) in forced {
        if !consistent(a, b, &image, x, y) {
            return false;
        }
    }
    rec(a, b, ca, cb, &order, 0, &mut image, &mut used)
}

fn isomorphic_with_forced(
    g: &Graph,
    h: &Graph,
    forced: &[(usize, usize)],
    marks: Option<((usize, usize), (usize, usize))>,
) -> bool {
    if g.vertex_count() != h.vertex_count() || g.arrow_count() != h.arrow_count() {
        return false;
    }
    let a = BitMat::from_graph(g);
    let b = BitMat::from_graph(h);
    let (ra, rb) = (a.transpose(), b.transpose());
    let (ma, mb) = match marks {
        Some((ma, mb)) => (Some(ma), Some(mb)),
        None => (None, None),
    };
    let ca = refine_colors(&a, &ra, &initial_colors(&a, &ra, ma));
    let cb = refine_colors(&b, &rb, &initial_colors(&b, &rb, mb));
    if color_histogram(&ca) != color_histogram(&cb) {
        return false;
    }
    search_isomorphism(&a, &b, &ca, &cb, forced)
}

/// True when the two graphs differ only by a relabeling of vertices.
pub fn are_isomorphic(g: &Graph, h: &Graph) -> bool {
    isomorphic_with_forced(g, h, &[], None)
}

/// Isomorphism that additionally matches source marks to source marks and
/// target marks to target marks.
pub fn are_pointed_isomorphic(a: &PointedGraph, b: &PointedGraph) -> bool {
    let (za, ha) = (
        a.graph()
            .vertex_index(a.source_mark())
            .expect("mark is a vertex"),
        a.graph()
            .vertex_index(a.target_mark())
            .expect("mark is a vertex"),
    );
    let (zb, hb) = (
        b.graph()
            .vertex_index(b.source_mark())
            .expect("mark is a vertex"),
        b.graph()
            .vertex_index(b.target_mark())
            .expect("mark is a vertex"),
    );
    if (za == ha) != (zb == hb) {
        return false;
    }
    isomorphic_with_forced(
        a.graph(),
        b.graph(),
        &[(za, zb), (ha, hb)],
        Some(((za, ha), (zb, hb))),
    )
}

/// Cheap iso-invariant fingerprint used to bucket graphs before running the
/// full check.
pub(crate) fn invariant_key(g: &Graph, marks: Option<(&str, &str)>) -> Vec<u64> {
    let mat = BitMat::from_graph(g);
    let rev = mat.transpose();
    let idx_marks = marks.map(|(z, h)| {
        (
            g.vertex_index(z).expect("mark is a vertex"),
            g.vertex_index(h).expect("mark is a vertex"),
        )
    });
    let colors = refine_colors(&mat, &rev, &initial_colors(&mat, &rev, idx_marks));
    let mut key = vec![g.vertex_count() as u64, g.arrow_count() as u64];
    for (color, count) in color_histogram(&colors) {
        key.push(color);
        key.push(count as u64);
    }
    if let Some((z, h)) = idx_marks {
        key.push(colors[z]);
        key.push(colors[h]);
        key.push((z == h) as u64);
    }
    key
}
