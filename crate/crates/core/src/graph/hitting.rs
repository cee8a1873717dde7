//! Exact minimum hitting sets and minimum transversals.
//!
//! [`min_hitting_set`] is a branch-and-bound over an explicit family: branch
//! on the unhit set with the fewest admissible elements (a single admissible
//! element forces it), try its elements most-frequent first, and prune with a
//! greedy disjoint-packing lower bound. Among the minimum solutions the
//! lexicographically least one is then fixed element by element.
//!
//! [`min_transversal`] never materializes every maximal independent set. It
//! keeps a growing family of them, solves the hitting-set problem on that
//! family, and asks [`find_disjoint_mis`] for a maximal independent set the
//! candidate misses. A candidate with no such set is a transversal, and since
//! any transversal also hits the family, the family optimum is the true one.

use super::{find_disjoint_mis, Graph, GraphError, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MinTransversal {
    /// Lexicographically least minimum transversal.
    Found(VertexSet),
    /// Every transversal is larger than the given limit.
    ExceedsLimit(usize),
    /// The graph has no vertices, so its only maximal independent set is empty.
    Impossible,
}

impl MinTransversal {
    pub fn set(&self) -> Option<&VertexSet> {
        match self {
            MinTransversal::Found(s) => Some(s),
            _ => None,
        }
    }

    pub fn size(&self) -> Option<usize> {
        self.set().map(VertexSet::len)
    }
}

/// Lexicographically least minimum hitting set of `family` over
/// `0..universe`, or `None` if none exists with at most `limit` elements.
pub fn min_hitting_set(
    family: &[VertexSet],
    universe: usize,
    limit: Option<usize>,
) -> Option<VertexSet> {
    let cap = limit.unwrap_or(universe).min(universe);
    let size = optimum(family, universe, 0, cap)?.len();
    lex_least(family, universe, size)
}

/// Minimum transversal of `g`, optionally bounded by `limit`.
pub fn min_transversal(g: &Graph, limit: Option<usize>) -> Result<MinTransversal, GraphError> {
    if g.is_empty() {
        return Ok(MinTransversal::Impossible);
    }
    let universe = g.len();
    let cap = limit.unwrap_or(universe).min(universe);
    let mut family = seed_family(g);
    let mut lower = 0;

    let size = loop {
        let Some(candidate) = optimum(&family, universe, lower, cap) else {
            return Ok(MinTransversal::ExceedsLimit(limit.unwrap_or(universe)));
        };
        lower = candidate.len();
        match find_disjoint_mis(g, &candidate)? {
            None => break lower,
            Some(missed) => family.push(missed),
        }
    };

    loop {
        let candidate = lex_least(&family, universe, size)
            .expect("a transversal of this size hits every family member");
        match find_disjoint_mis(g, &candidate)? {
            None => return Ok(MinTransversal::Found(candidate)),
            Some(missed) => family.push(missed),
        }
    }
}

/// One maximal independent set through each vertex, built greedily by id.
fn seed_family(g: &Graph) -> Vec<VertexSet> {
    let mut family: Vec<VertexSet> = Vec::new();
    for v in 0..g.len() {
        let mut s = VertexSet::singleton(v);
        for u in 0..g.len() {
            if !s.contains(u) && !g.neighbors(u).intersects(&s) {
                s.insert(u);
            }
        }
        if !family.contains(&s) {
            family.push(s);
        }
    }
    family
}

/// Some minimum hitting set with size in `lower..=cap`, if one exists.
/// `lower` must be a valid lower bound; reaching it stops the search.
fn optimum(family: &[VertexSet], universe: usize, lower: usize, cap: usize) -> Option<VertexSet> {
    if family.iter().any(VertexSet::is_empty) {
        return None;
    }
    let mut search = Search::new(family, universe, cap + 1, lower);
    search.run(VertexSet::new(), VertexSet::new());
    search.best
}

/// Lexicographically least hitting set of exactly `size` elements, assuming
/// no smaller hitting set exists.
fn lex_least(family: &[VertexSet], universe: usize, size: usize) -> Option<VertexSet> {
    let mut chosen = VertexSet::new();
    let mut skipped = VertexSet::new();
    for v in 0..universe {
        if chosen.len() == size {
            break;
        }
        let mut with_v = chosen;
        with_v.insert(v);
        let mut search = Search::new(family, universe, size + 1, size);
        search.run(with_v, skipped);
        if search.best.is_some() {
            chosen = with_v;
        } else {
            skipped.insert(v);
        }
    }
    (chosen.len() == size && family.iter().all(|s| s.intersects(&chosen))).then_some(chosen)
}

struct Search<'a> {
    family: &'a [VertexSet],
    universe: VertexSet,
    /// Only solutions strictly smaller than this are wanted.
    bound: usize,
    /// Stop as soon as a solution of this size is found.
    target: usize,
    best: Option<VertexSet>,
}

impl<'a> Search<'a> {
    fn new(family: &'a [VertexSet], universe: usize, bound: usize, target: usize) -> Self {
        Search {
            family,
            universe: VertexSet::full(universe),
            bound,
            target,
            best: None,
        }
    }

    fn done(&self) -> bool {
        self.best.is_some_and(|b| b.len() <= self.target)
    }

    fn run(&mut self, chosen: VertexSet, forbidden: VertexSet) {
        let size = chosen.len();
        if size >= self.bound {
            return;
        }
        let allowed = self.universe - forbidden - chosen;
        let mut open: Vec<VertexSet> = Vec::new();
        for s in self.family {
            if s.intersects(&chosen) {
                continue;
            }
            let options = *s & allowed;
            if options.is_empty() {
                return;
            }
            open.push(options);
        }
        if open.is_empty() {
            self.bound = size;
            self.best = Some(chosen);
            return;
        }

        open.sort_unstable_by_key(VertexSet::len);
        let mut packed = VertexSet::new();
        let mut lb = 0;
        for s in &open {
            if !s.intersects(&packed) {
                packed = packed | *s;
                lb += 1;
            }
        }
        if size + lb >= self.bound {
            return;
        }

        let branch = open[0];
        let mut order: Vec<(usize, usize)> = branch
            .iter()
            .map(|v| (open.iter().filter(|s| s.contains(v)).count(), v))
            .collect();
        order.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));

        let mut forbidden = forbidden;
        for (_, v) in order {
            let mut next = chosen;
            next.insert(v);
            self.run(next, forbidden);
            if self.done() {
                return;
            }
            forbidden.insert(v);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::testing::{graph, set};
    use super::super::{enumerate_mis, is_transversal};
    use super::*;
    use proptest::prelude::*;

    /// Smallest, then lexicographically least, subset meeting every member.
    fn brute_hitting(family: &[VertexSet], universe: usize) -> Option<VertexSet> {
        (0u32..1 << universe)
            .map(|mask| {
                (0..universe)
                    .filter(|&v| mask >> v & 1 == 1)
                    .collect::<VertexSet>()
            })
            .filter(|x| family.iter().all(|s| s.intersects(x)))
            .min_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)))
    }

    #[test]
    fn transversal_examples() {
        let edge = graph(2, &[(0, 1)]);
        assert_eq!(
            min_transversal(&edge, None).unwrap(),
            MinTransversal::Found(set(&[0, 1]))
        );
        let path = graph(3, &[(0, 1), (1, 2)]);
        assert_eq!(min_transversal(&path, None).unwrap().size(), Some(2));
        let cycle = graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert_eq!(
            min_transversal(&cycle, None).unwrap(),
            MinTransversal::Found(set(&[0, 1]))
        );
        assert_eq!(
            min_transversal(&cycle, Some(1)).unwrap(),
            MinTransversal::ExceedsLimit(1)
        );
        assert_eq!(
            min_transversal(&graph(0, &[]), None).unwrap(),
            MinTransversal::Impossible
        );
    }

    #[test]
    fn hitting_set_edge_cases() {
        assert_eq!(min_hitting_set(&[], 3, None), Some(set(&[])));
        assert_eq!(min_hitting_set(&[set(&[])], 3, None), None);
        let fam = [set(&[0, 1]), set(&[1, 2]), set(&[2, 3])];
        assert_eq!(min_hitting_set(&fam, 4, None), Some(set(&[0, 2])));
        assert_eq!(min_hitting_set(&fam, 4, Some(1)), None);
    }

    fn arb_family() -> impl Strategy<Value = (usize, Vec<VertexSet>)> {
        (1usize..=9).prop_flat_map(|u| {
            let sets = proptest::collection::vec(
                proptest::collection::btree_set(0..u, 1..=u)
                    .prop_map(|s| s.into_iter().collect::<VertexSet>()),
                0..12,
            );
            (Just(u), sets)
        })
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (1usize..=9).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
                let pairs: Vec<(usize, usize)> = (0..n)
                    .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                    .zip(bits)
                    .filter_map(|(e, b)| b.then_some(e))
                    .collect();
                graph(n, &pairs)
            })
        })
    }

    proptest! {
        #[test]
        fn hitting_set_matches_brute_force((u, fam) in arb_family()) {
            prop_assert_eq!(min_hitting_set(&fam, u, None), brute_hitting(&fam, u));
        }

        #[test]
        fn lazy_transversal_matches_enumeration(g in arb_graph()) {
            let family = enumerate_mis(&g).unwrap();
            let expected = brute_hitting(&family, g.len()).unwrap();
            let got = min_transversal(&g, None).unwrap();
            prop_assert_eq!(got.set(), Some(&expected));
            prop_assert!(is_transversal(&g, &expected).unwrap().ok);
            let below = expected.len().checked_sub(1);
            if let Some(limit) = below {
                prop_assert_eq!(min_transversal(&g, Some(limit)).unwrap(), MinTransversal::ExceedsLimit(limit));
            }
        }
    }
}
