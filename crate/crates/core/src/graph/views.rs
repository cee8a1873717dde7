//! The same transversal question seen through other structures: cliques of
//! the complement graph, and antichains of a height-two poset.

use super::{Graph, GraphError, Side, VertexSet};

/// Complement graph with the same labels and all sides cleared.
pub fn complement(g: &Graph) -> Graph {
    let mut h = Graph::new((0..g.len()).map(|v| (g.label(v).to_string(), Side::Unassigned)))
        .expect("labels already unique");
    for u in 0..g.len() {
        for v in u + 1..g.len() {
            if !g.has_edge(u, v) {
                h.add_edge(u, v).expect("valid simple edge");
            }
        }
    }
    h
}

/// Maximal cliques of `g`, sorted like [`super::enumerate_mis`].
///
/// Classic Bron–Kerbosch with Tomita pivoting over open neighborhoods.
pub fn maximal_cliques(g: &Graph) -> Vec<VertexSet> {
    fn bk(g: &Graph, r: VertexSet, mut p: VertexSet, mut x: VertexSet, out: &mut Vec<VertexSet>) {
        if p.is_empty() {
            if x.is_empty() {
                out.push(r);
            }
            return;
        }
        let pivot = (p | x)
            .iter()
            .max_by_key(|&u| (*g.neighbors(u) & p).len())
            .expect("nonempty");
        for v in (p - *g.neighbors(pivot)).iter() {
            let nb = *g.neighbors(v);
            let mut r2 = r;
            r2.insert(v);
            bk(g, r2, p & nb, x & nb, out);
            p.remove(v);
            x.insert(v);
        }
    }
    let mut out = Vec::new();
    bk(
        g,
        VertexSet::new(),
        g.all_vertices(),
        VertexSet::new(),
        &mut out,
    );
    out.sort_unstable();
    out
}

/// Order relation `lower < upper` of the height-two poset whose
/// comparability graph is `g`: one pair per edge, P-side element below.
pub fn to_height_two_poset(g: &Graph) -> Result<Vec<(usize, usize)>, GraphError> {
    if let Some(v) = (0..g.len()).find(|&v| g.side(v) == Side::Unassigned) {
        return Err(GraphError::UnassignedSide(v));
    }
    Ok(g.edges()
        .map(|(u, v)| if g.side(u) == Side::P { (u, v) } else { (v, u) })
        .collect())
}
