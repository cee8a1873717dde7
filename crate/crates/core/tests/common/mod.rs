//! Brute-force oracles shared by the integration tests. None of them call
//! the library's evaluators or solvers.

#![allow(dead_code)]

use mis_transversal::formula::{Q3dnf, Term};
use mis_transversal::graph::{Graph, VertexSet};

pub fn phi0() -> Q3dnf {
    Q3dnf::new(
        2,
        1,
        vec![
            Term::signed([1, 1, 3]),
            Term::signed([2, 2, 3]),
            Term::signed([-1, -1, -3]),
            Term::signed([-2, -2, -3]),
        ],
    )
    .unwrap()
}

/// `values[v - 1]` is variable `v`.
pub fn matrix_holds(f: &Q3dnf, values: &[bool]) -> bool {
    f.terms().iter().any(|t| {
        t.slots().iter().all(|l| {
            let s = l.to_signed();
            values[s.unsigned_abs() as usize - 1] == (s > 0)
        })
    })
}

pub fn is_witness(f: &Q3dnf, x: &[bool]) -> bool {
    let m = f.m() as usize;
    (0u64..1 << m).all(|y| {
        let mut values = x.to_vec();
        values.extend((0..m).map(|j| y >> j & 1 == 1));
        matrix_holds(f, &values)
    })
}

/// Every x-vector making `∀y φ` true, in lexicographic order (variable 1
/// first, false before true).
pub fn witnesses(f: &Q3dnf) -> Vec<Vec<bool>> {
    let n = f.n() as usize;
    (0u64..1 << n)
        .map(|rank| {
            (0..n)
                .map(|i| rank >> (n - 1 - i) & 1 == 1)
                .collect::<Vec<bool>>()
        })
        .filter(|x| is_witness(f, x))
        .collect()
}

pub fn holds(f: &Q3dnf) -> bool {
    let n = f.n() as usize;
    (0u64..1 << n).any(|bits| {
        let x: Vec<bool> = (0..n).map(|i| bits >> i & 1 == 1).collect();
        is_witness(f, &x)
    })
}

/// Maximal independent sets by include/exclude over vertex ids.
pub fn brute_mis(g: &Graph) -> Vec<VertexSet> {
    fn go(g: &Graph, v: usize, current: &mut Vec<usize>, out: &mut Vec<VertexSet>) {
        if v == g.len() {
            let maximal = (0..g.len())
                .all(|u| current.contains(&u) || current.iter().any(|&w| g.has_edge(u, w)));
            if maximal {
                out.push(current.iter().copied().collect());
            }
            return;
        }
        if current.iter().all(|&w| !g.has_edge(v, w)) {
            current.push(v);
            go(g, v + 1, current, out);
            current.pop();
        }
        go(g, v + 1, current, out);
    }
    let mut out = Vec::new();
    go(g, 0, &mut Vec::new(), &mut out);
    out.sort();
    out
}

pub fn hits_all(x: &VertexSet, family: &[VertexSet]) -> bool {
    family.iter().all(|s| s.intersects(x))
}

/// Whether some set of at most `size` elements meets every member of
/// `family`.
pub fn hitting_set_within(family: &[VertexSet], size: usize) -> bool {
    fn go(family: &[VertexSet], left: usize, chosen: VertexSet) -> bool {
        let Some(open) = family.iter().find(|s| !s.intersects(&chosen)) else {
            return true;
        };
        // Any hitting set contains an element of the first unhit member.
        left > 0
            && open.iter().any(|v| {
                let mut next = chosen;
                next.insert(v);
                go(family, left - 1, next)
            })
    }
    go(family, size, VertexSet::new())
}

pub fn is_independent(g: &Graph, s: &VertexSet) -> bool {
    let vs = s.to_vec();
    vs.iter().all(|&u| vs.iter().all(|&v| !g.has_edge(u, v)))
}

pub fn is_maximal_independent(g: &Graph, s: &VertexSet) -> bool {
    is_independent(g, s)
        && (0..g.len()).all(|u| s.contains(u) || s.iter().any(|w| g.has_edge(u, w)))
}
