use super::{Graph, GraphError, VertexSet};

/// Default cap on the number of maximal independent sets [`enumerate_mis`]
/// will materialize before giving up.
pub const DEFAULT_MIS_LIMIT: usize = 5_000_000;

pub fn is_independent(g: &Graph, s: &VertexSet) -> Result<bool, GraphError> {
    g.check_set(s)?;
    Ok(s.iter().all(|v| !g.neighbors(v).intersects(s)))
}

pub fn is_maximal_independent(g: &Graph, s: &VertexSet) -> Result<bool, GraphError> {
    if !is_independent(g, s)? {
        return Ok(false);
    }
    Ok((0..g.len()).all(|v| s.contains(v) || g.neighbors(v).intersects(s)))
}

/// All maximal independent sets, each sorted set once, the list in
/// lexicographic order.
pub fn enumerate_mis(g: &Graph) -> Result<Vec<VertexSet>, GraphError> {
    enumerate_mis_limited(g, DEFAULT_MIS_LIMIT)
}

pub fn enumerate_mis_limited(g: &Graph, limit: usize) -> Result<Vec<VertexSet>, GraphError> {
    let closed: Vec<VertexSet> = (0..g.len()).map(|v| g.closed_neighbors(v)).collect();
    let mut out = Vec::new();
    expand(
        &closed,
        VertexSet::new(),
        g.all_vertices(),
        VertexSet::new(),
        &mut out,
        limit,
    )?;
    out.sort_unstable();
    Ok(out)
}

/// Bron–Kerbosch on the complement, written directly against closed
/// neighborhoods: taking `v` removes `N[v]` from the candidates. The pivot
/// `u` minimizes `|P ∩ N[u]|`; every maximal set must contain a member of
/// `N[u]`, so only those candidates are branched on.
fn expand(
    closed: &[VertexSet],
    current: VertexSet,
    mut cand: VertexSet,
    mut excluded: VertexSet,
    out: &mut Vec<VertexSet>,
    limit: usize,
) -> Result<(), GraphError> {
    if cand.is_empty() {
        if excluded.is_empty() {
            if out.len() == limit {
                return Err(GraphError::TooManyMis(limit));
            }
            out.push(current);
        }
        return Ok(());
    }
    let pivot = (cand | excluded)
        .iter()
        .min_by_key(|&u| (closed[u] & cand).len())
        .expect("nonempty");
    for v in (cand & closed[pivot]).iter() {
        let mut next = current;
        next.insert(v);
        expand(
            closed,
            next,
            cand - closed[v],
            excluded - closed[v],
            out,
            limit,
        )?;
        cand.remove(v);
        excluded.insert(v);
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransversalCheck {
    pub ok: bool,
    /// A maximal independent set disjoint from the tested set, when `!ok`.
    pub counterexample: Option<VertexSet>,
}

/// Decides whether `x` meets every maximal independent set of `g`.
pub fn is_transversal(g: &Graph, x: &VertexSet) -> Result<TransversalCheck, GraphError> {
    let counterexample = find_disjoint_mis(g, x)?;
    Ok(TransversalCheck {
        ok: counterexample.is_none(),
        counterexample,
    })
}

/// Searches for a maximal independent set avoiding `x`.
///
/// Such a set is exactly an independent subset of `V − x` that dominates
/// every vertex of `g`, so the search grows an independent set and always
/// branches on the closed neighborhood of the undominated vertex with the
/// fewest remaining options.
pub fn find_disjoint_mis(g: &Graph, x: &VertexSet) -> Result<Option<VertexSet>, GraphError> {
    g.check_set(x)?;
    let closed: Vec<VertexSet> = (0..g.len()).map(|v| g.closed_neighbors(v)).collect();
    let all = g.all_vertices();
    Ok(dominate(&closed, VertexSet::new(), all - *x, all))
}

fn dominate(
    closed: &[VertexSet],
    current: VertexSet,
    cand: VertexSet,
    undominated: VertexSet,
) -> Option<VertexSet> {
    if undominated.is_empty() {
        return Some(current);
    }
    let mut best: Option<(usize, VertexSet)> = None;
    for u in undominated.iter() {
        let options = closed[u] & cand;
        let count = options.len();
        if count == 0 {
            return None;
        }
        if best.is_none_or(|(c, _)| count < c) {
            best = Some((count, options));
            if count == 1 {
                break;
            }
        }
    }
    let (_, options) = best.expect("undominated is nonempty");
    let mut cand = cand;
    for v in options.iter() {
        let mut next = current;
        next.insert(v);
        if let Some(found) = dominate(closed, next, cand - closed[v], undominated - closed[v]) {
            return Some(found);
        }
        cand.remove(v);
    }
    None
}
