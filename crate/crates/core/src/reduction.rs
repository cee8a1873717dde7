//! From a nice monotone Q-3-DNF formula to a bipartite graph `G` and budget
//! `k = 2n + q + q′` such that the formula holds iff `G` has a transversal
//! of size at most `k`.
//!
//! Vertices, in id order:
//!
//! * per existential variable `i`: `a<i> b<i> x<i> ab<i> bb<i> xb<i>`
//! * per universal variable `j`: `y<j> yb<j>`
//! * per positive term `ℓ`: `t<ℓ> r<ℓ> s<ℓ>`
//! * per negative term `ℓ`: `tn<ℓ> rn<ℓ> sn<ℓ>`
//!
//! Side P holds `a b x y t r sn`; side N holds the rest. Indices are 1-based
//! and a term's vertices are numbered by its rank among terms of the same
//! polarity.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::formula::{Assignment, FormulaError, Literal, MissingSide, Q3dnf, Term};
use crate::graph::{
    enumerate_mis_limited, is_maximal_independent, is_transversal, Graph, GraphError, Side,
    VertexSet, MAX_VERTICES,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReductionError {
    #[error("formula is not monotone (term {0} mixes polarities)")]
    NotMonotone(usize),
    #[error("formula is not nice; deficiencies: {0:?}")]
    NotNice(Vec<(u32, MissingSide)>),
    #[error("formula has no existential variables")]
    NoExistentialVariables,
    #[error("formula has no positive term")]
    NoPositiveTerm,
    #[error("formula has no negative term")]
    NoNegativeTerm,
    #[error("reduction graph would have {0} vertices; the limit is {MAX_VERTICES}")]
    TooLarge(usize),
    #[error("assignment must bind exactly the {expected} existential variables")]
    PartialAssignment { expected: usize },
    #[error("set has {size} vertices, more than the budget {k}")]
    OverBudget { size: usize, k: usize },
    #[error("set is not a transversal")]
    NotTransversal,
    #[error("set is not in canonical form: {0}")]
    NotCanonical(String),
    #[error("set is not a maximal independent set")]
    NotMaximalIndependent,
    #[error("maximal independent set {0:?} matches no class of the taxonomy")]
    Unclassified(Vec<String>),
    #[error("graph is not a reduction output: {0}")]
    NotAReduction(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Formula(#[from] FormulaError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RoleKind {
    X,
    XBar,
    A,
    B,
    ABar,
    BBar,
    Y,
    YBar,
    T,
    R,
    S,
    TNeg,
    RNeg,
    SNeg,
}

impl RoleKind {
    const ALL: [RoleKind; 14] = [
        RoleKind::X,
        RoleKind::XBar,
        RoleKind::A,
        RoleKind::B,
        RoleKind::ABar,
        RoleKind::BBar,
        RoleKind::Y,
        RoleKind::YBar,
        RoleKind::T,
        RoleKind::R,
        RoleKind::S,
        RoleKind::TNeg,
        RoleKind::RNeg,
        RoleKind::SNeg,
    ];

    /// Label prefix.
    pub fn prefix(self) -> &'static str {
        match self {
            RoleKind::X => "x",
            RoleKind::XBar => "xb",
            RoleKind::A => "a",
            RoleKind::B => "b",
            RoleKind::ABar => "ab",
            RoleKind::BBar => "bb",
            RoleKind::Y => "y",
            RoleKind::YBar => "yb",
            RoleKind::T => "t",
            RoleKind::R => "r",
            RoleKind::S => "s",
            RoleKind::TNeg => "tn",
            RoleKind::RNeg => "rn",
            RoleKind::SNeg => "sn",
        }
    }

    pub fn side(self) -> Side {
        use RoleKind::*;
        match self {
            A | B | X | Y | T | R | SNeg => Side::P,
            ABar | BBar | XBar | YBar | S | TNeg | RNeg => Side::N,
        }
    }
}

/// What a vertex of the reduction graph stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Role {
    pub kind: RoleKind,
    /// 1-based variable or term index.
    pub index: usize,
}

impl Role {
    pub fn new(kind: RoleKind, index: usize) -> Self {
        Role { kind, index }
    }

    pub fn parse(label: &str) -> Option<Role> {
        let split = label.find(|c: char| c.is_ascii_digit())?;
        let (prefix, digits) = label.split_at(split);
        let kind = RoleKind::ALL.into_iter().find(|k| k.prefix() == prefix)?;
        if digits.starts_with('0') {
            return None;
        }
        let index = digits.parse().ok()?;
        Some(Role { kind, index })
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.kind.prefix(), self.index)
    }
}

/// Class of a maximal independent set of the reduction graph. Type numbers
/// follow [`MisClass::type_number`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MisClass {
    /// Avoids every `a b ab bb r s rn sn` vertex.
    Regular,
    /// Exactly side P or side N.
    Side(Side),
    /// `{a,b,bb}`, `{ab,b,bb}`, `{a,bb,xb}` or `{ab,b,x}` (variant 0..4) of variable `i`.
    VariableGadget { var: usize, variant: u8 },
    /// `Sᵢ ∪ Tᵢ`.
    PositiveSpread { var: usize },
    /// `S′ᵢ ∪ T′ᵢ`.
    NegativeSpread { var: usize },
    /// `{t, r, s}` of positive term `ℓ`.
    PositiveTermGadget { term: usize },
    /// `W_ℓ ∪ Z_ℓ`.
    PositiveTermSpread { term: usize },
    /// `{tn, rn, sn}` of negative term `ℓ`.
    NegativeTermGadget { term: usize },
    /// `W′_ℓ ∪ Z′_ℓ`.
    NegativeTermSpread { term: usize },
}

impl MisClass {
    /// 1 regular, 2 sides, 3 variable gadget, 4/5 variable spreads,
    /// 6/7 positive term gadget/spread, 8/9 negative term gadget/spread.
    pub fn type_number(self) -> u8 {
        match self {
            MisClass::Regular => 1,
            MisClass::Side(_) => 2,
            MisClass::VariableGadget { .. } => 3,
            MisClass::PositiveSpread { .. } => 4,
            MisClass::NegativeSpread { .. } => 5,
            MisClass::PositiveTermGadget { .. } => 6,
            MisClass::PositiveTermSpread { .. } => 7,
            MisClass::NegativeTermGadget { .. } => 8,
            MisClass::NegativeTermSpread { .. } => 9,
        }
    }
}

/// Reduction graph with its budget and vertex roles.
#[derive(Debug, Clone)]
pub struct Reduction {
    formula: Q3dnf,
    graph: Graph,
    k: usize,
    roles: Vec<Role>,
    ids: HashMap<Role, usize>,
    n: usize,
    m: usize,
    positive: Vec<Vec<Literal>>,
    negative: Vec<Vec<Literal>>,
}

/// Checks the reduction's input conditions and returns `(q, q′)`.
fn check_input(f: &Q3dnf) -> Result<(usize, usize), ReductionError> {
    if let Some(&i) = f.polarity_split().mixed.first() {
        return Err(ReductionError::NotMonotone(i));
    }
    let nice = f.is_nice()?;
    if !nice.nice {
        return Err(ReductionError::NotNice(nice.deficiencies));
    }
    if f.n() == 0 {
        return Err(ReductionError::NoExistentialVariables);
    }
    let split = f.polarity_split();
    if split.positive.is_empty() {
        return Err(ReductionError::NoPositiveTerm);
    }
    if split.negative.is_empty() {
        return Err(ReductionError::NoNegativeTerm);
    }
    Ok((split.positive.len(), split.negative.len()))
}

/// `2n + q + q′` for a valid reduction input.
pub fn budget(f: &Q3dnf) -> Result<usize, ReductionError> {
    let (q, q_neg) = check_input(f)?;
    Ok(2 * f.n() as usize + q + q_neg)
}

impl Reduction {
    pub fn build(f: &Q3dnf) -> Result<Reduction, ReductionError> {
        use RoleKind::*;

        let (q, q_neg) = check_input(f)?;
        let n = f.n() as usize;
        let m = f.m() as usize;
        let total = 6 * n + 2 * m + 3 * q + 3 * q_neg;
        if total > MAX_VERTICES {
            return Err(ReductionError::TooLarge(total));
        }

        let mut roles = Vec::with_capacity(total);
        for i in 1..=n {
            for kind in [A, B, X, ABar, BBar, XBar] {
                roles.push(Role::new(kind, i));
            }
        }
        for j in 1..=m {
            roles.push(Role::new(Y, j));
            roles.push(Role::new(YBar, j));
        }
        for l in 1..=q {
            for kind in [T, R, S] {
                roles.push(Role::new(kind, l));
            }
        }
        for l in 1..=q_neg {
            for kind in [TNeg, RNeg, SNeg] {
                roles.push(Role::new(kind, l));
            }
        }
        let mut graph = Graph::new(roles.iter().map(|r| (r.to_string(), r.kind.side())))?;
        let ids: HashMap<Role, usize> = roles.iter().enumerate().map(|(v, &r)| (r, v)).collect();

        let split = f.polarity_split();
        let positive: Vec<Vec<Literal>> = split
            .positive
            .iter()
            .map(|&t| f.terms()[t].distinct())
            .collect();
        let negative: Vec<Vec<Literal>> = split
            .negative
            .iter()
            .map(|&t| f.terms()[t].distinct())
            .collect();

        let mut red = Reduction {
            formula: f.clone(),
            graph: Graph::new(Vec::<(String, Side)>::new())?,
            k: 2 * n + q + q_neg,
            roles,
            ids,
            n,
            m,
            positive,
            negative,
        };

        let p_side = graph.side_set(Side::P);
        let n_side = graph.side_set(Side::N);
        let link_all = |g: &mut Graph, v: usize, others: VertexSet| -> Result<(), GraphError> {
            for u in others.iter() {
                g.add_edge(v, u)?;
            }
            Ok(())
        };
        let id = |kind, index| red.id(Role::new(kind, index));
        let without = |base: VertexSet, drop: &[usize]| {
            let mut s = base;
            for &v in drop {
                s.remove(v);
            }
            s
        };

        for i in 1..=n {
            graph.add_edge(id(X, i), id(XBar, i))?;
            link_all(
                &mut graph,
                id(A, i),
                without(n_side, &[id(XBar, i), id(BBar, i)]),
            )?;
            link_all(
                &mut graph,
                id(B, i),
                without(n_side, &[id(ABar, i), id(BBar, i)]),
            )?;
            link_all(
                &mut graph,
                id(ABar, i),
                without(p_side, &[id(X, i), id(B, i)]),
            )?;
            link_all(
                &mut graph,
                id(BBar, i),
                without(p_side, &[id(A, i), id(B, i)]),
            )?;
        }
        for j in 1..=m {
            graph.add_edge(id(Y, j), id(YBar, j))?;
        }
        for (l, lits) in red.positive.iter().enumerate() {
            for lit in lits {
                graph.add_edge(id(T, l + 1), red.literal_vertex(lit.negated()))?;
            }
        }
        for (l, lits) in red.negative.iter().enumerate() {
            for lit in lits {
                graph.add_edge(id(TNeg, l + 1), red.literal_vertex(lit.negated()))?;
            }
        }
        for l in 1..=q {
            link_all(&mut graph, id(R, l), without(n_side, &[id(S, l)]))?;
            link_all(&mut graph, id(S, l), without(p_side, &[id(T, l), id(R, l)]))?;
        }
        for l in 1..=q_neg {
            link_all(&mut graph, id(RNeg, l), without(p_side, &[id(SNeg, l)]))?;
            link_all(
                &mut graph,
                id(SNeg, l),
                without(n_side, &[id(TNeg, l), id(RNeg, l)]),
            )?;
        }
        red.graph = graph;
        Ok(red)
    }

    /// Recovers a reduction from a graph written by [`Reduction::build`],
    /// reading term contents off the `t`/`tn` neighborhoods. The graph must
    /// match the rebuilt one exactly.
    pub fn from_graph(g: &Graph) -> Result<Reduction, ReductionError> {
        let bad = |msg: String| ReductionError::NotAReduction(msg);
        let mut roles = Vec::with_capacity(g.len());
        let mut counts: HashMap<RoleKind, usize> = HashMap::new();
        for v in 0..g.len() {
            let role = Role::parse(g.label(v))
                .ok_or_else(|| bad(format!("label `{}` names no role", g.label(v))))?;
            *counts.entry(role.kind).or_default() += 1;
            roles.push(role);
        }
        let count = |k| counts.get(&k).copied().unwrap_or(0);
        let (n, m, q, q_neg) = (
            count(RoleKind::X),
            count(RoleKind::Y),
            count(RoleKind::T),
            count(RoleKind::TNeg),
        );
        let by_role: HashMap<Role, usize> =
            roles.iter().enumerate().map(|(v, &r)| (r, v)).collect();

        let literal_of = |v: usize| -> Result<Literal, ReductionError> {
            let r = roles[v];
            let var = match r.kind {
                RoleKind::X | RoleKind::XBar => r.index,
                RoleKind::Y | RoleKind::YBar => n + r.index,
                _ => return Err(bad(format!("term vertex adjacent to `{r}`"))),
            };
            let positive = matches!(r.kind, RoleKind::X | RoleKind::Y);
            Ok(Literal::new(var as u32, positive))
        };
        let mut terms = Vec::new();
        for (kind, count) in [(RoleKind::T, q), (RoleKind::TNeg, q_neg)] {
            for l in 1..=count {
                let v = *by_role
                    .get(&Role::new(kind, l))
                    .ok_or_else(|| bad(format!("missing {}{l}", kind.prefix())))?;
                let mut lits = Vec::new();
                for u in g.neighbors(v).iter() {
                    if matches!(
                        roles[u].kind,
                        RoleKind::X | RoleKind::XBar | RoleKind::Y | RoleKind::YBar
                    ) {
                        lits.push(literal_of(u)?.negated());
                    }
                }
                lits.sort();
                let term = match *lits.as_slice() {
                    [a] => Term::new(a, a, a),
                    [a, b] => Term::new(a, b, b),
                    [a, b, c] => Term::new(a, b, c),
                    _ => {
                        return Err(bad(format!(
                            "{}{l} has {} literal neighbors",
                            kind.prefix(),
                            lits.len()
                        )))
                    }
                };
                terms.push(term);
            }
        }
        let formula = Q3dnf::new(n as u32, m as u32, terms).map_err(|e| bad(e.to_string()))?;
        let red = Reduction::build(&formula).map_err(|e| bad(e.to_string()))?;
        if red.graph != *g {
            return Err(bad("graph differs from the reconstructed reduction".into()));
        }
        Ok(red)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn formula(&self) -> &Q3dnf {
        &self.formula
    }

    /// The budget `2n + q + q′`.
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn q(&self) -> usize {
        self.positive.len()
    }

    pub fn q_neg(&self) -> usize {
        self.negative.len()
    }

    pub fn roles(&self) -> &[Role] {
        &self.roles
    }

    pub fn role(&self, v: usize) -> Role {
        self.roles[v]
    }

    /// Vertex id of a role; panics on a role outside the construction.
    pub fn id(&self, role: Role) -> usize {
        self.ids[&role]
    }

    fn v(&self, kind: RoleKind, index: usize) -> usize {
        self.id(Role::new(kind, index))
    }

    /// Vertex standing for a literal (`x`/`xb` or `y`/`yb`).
    pub fn literal_vertex(&self, lit: Literal) -> usize {
        let var = lit.var() as usize;
        let (kind, index) = match (var <= self.n, lit.is_positive()) {
            (true, true) => (RoleKind::X, var),
            (true, false) => (RoleKind::XBar, var),
            (false, true) => (RoleKind::Y, var - self.n),
            (false, false) => (RoleKind::YBar, var - self.n),
        };
        self.v(kind, index)
    }

    fn all_of(&self, kind: RoleKind, count: usize) -> VertexSet {
        (1..=count).map(|i| self.v(kind, i)).collect()
    }

    fn t_vertices(&self) -> VertexSet {
        self.all_of(RoleKind::T, self.q()) | self.all_of(RoleKind::TNeg, self.q_neg())
    }

    /// `{t} ∪ {tn} ∪ {b, xb : μ true} ∪ {bb, x : μ false}`.
    pub fn transversal_from_assignment(
        &self,
        mu: &Assignment,
    ) -> Result<VertexSet, ReductionError> {
        use RoleKind::*;
        if mu.scope() != crate::formula::Scope::Existential || mu.values().len() != self.n {
            return Err(ReductionError::PartialAssignment { expected: self.n });
        }
        let mut x = self.t_vertices();
        for (i, &value) in mu.values().iter().enumerate() {
            let i = i + 1;
            let pair = if value { [B, XBar] } else { [BBar, X] };
            for kind in pair {
                x.insert(self.v(kind, i));
            }
        }
        Ok(x)
    }

    /// Rewrites a transversal of size at most `k` into canonical form: all
    /// `t`/`tn` vertices plus `{bb, x}` for each `i` with `xᵢ` in the input and
    /// `{b, xb}` otherwise. `strict` first verifies that the input is a
    /// transversal, which costs a full counterexample search.
    pub fn canonicalize(&self, x: &VertexSet, strict: bool) -> Result<VertexSet, ReductionError> {
        use RoleKind::*;
        self.graph.check_set(x)?;
        if x.len() > self.k {
            return Err(ReductionError::OverBudget {
                size: x.len(),
                k: self.k,
            });
        }
        if strict && !is_transversal(&self.graph, x)?.ok {
            return Err(ReductionError::NotTransversal);
        }
        let mut out = self.t_vertices();
        for i in 1..=self.n {
            let pair = if x.contains(self.v(X, i)) {
                [BBar, X]
            } else {
                [B, XBar]
            };
            for kind in pair {
                out.insert(self.v(kind, i));
            }
        }
        Ok(out)
    }

    /// Reads `μ(xᵢ) = (xᵢ ∉ X′)` off a canonical transversal.
    pub fn assignment_from_transversal(
        &self,
        xp: &VertexSet,
    ) -> Result<Assignment, ReductionError> {
        use RoleKind::*;
        self.graph.check_set(xp)?;
        let not_canonical = |msg: String| Err(ReductionError::NotCanonical(msg));
        if !self.t_vertices().is_subset(xp) {
            return not_canonical("missing a t/tn vertex".into());
        }
        if xp.len() != self.k {
            return not_canonical(format!("size {} differs from k = {}", xp.len(), self.k));
        }
        let mut values = Vec::with_capacity(self.n);
        for i in 1..=self.n {
            let has = |kind| xp.contains(self.v(kind, i));
            match (has(BBar) && has(X), has(B) && has(XBar)) {
                (true, false) => values.push(false),
                (false, true) => values.push(true),
                _ => return not_canonical(format!("variable {i} has no single canonical pair")),
            }
        }
        Ok(Assignment::existential(
            self.n as u32,
            self.m as u32,
            values,
        )?)
    }

    /// The `k` pairwise disjoint maximal independent sets
    /// `{a,bb,xb}ᵢ, {ab,b,x}ᵢ, {t,r,s}_ℓ, {tn,rn,sn}_ℓ`.
    pub fn disjoint_witness_family(&self) -> Vec<VertexSet> {
        use RoleKind::*;
        let set = |items: &[(RoleKind, usize)]| -> VertexSet {
            items.iter().map(|&(k, i)| self.v(k, i)).collect()
        };
        let mut out = Vec::with_capacity(self.k);
        for i in 1..=self.n {
            out.push(set(&[(A, i), (BBar, i), (XBar, i)]));
            out.push(set(&[(ABar, i), (B, i), (X, i)]));
        }
        for l in 1..=self.q() {
            out.push(set(&[(T, l), (R, l), (S, l)]));
        }
        for l in 1..=self.q_neg() {
            out.push(set(&[(TNeg, l), (RNeg, l), (SNeg, l)]));
        }
        out
    }

    /// Every non-regular class with its defining vertex set.
    pub fn irregular_classes(&self) -> Vec<(MisClass, VertexSet)> {
        use RoleKind::*;
        let g = &self.graph;
        let mut out = vec![
            (MisClass::Side(Side::P), g.side_set(Side::P)),
            (MisClass::Side(Side::N), g.side_set(Side::N)),
        ];
        let set = |items: &[(RoleKind, usize)]| -> VertexSet {
            items.iter().map(|&(k, i)| self.v(k, i)).collect()
        };
        let pos_lits = self.all_of(X, self.n) | self.all_of(Y, self.m);
        let neg_lits = self.all_of(XBar, self.n) | self.all_of(YBar, self.m);

        for i in 1..=self.n {
            let gadgets = [
                set(&[(A, i), (B, i), (BBar, i)]),
                set(&[(ABar, i), (B, i), (BBar, i)]),
                set(&[(A, i), (BBar, i), (XBar, i)]),
                set(&[(ABar, i), (B, i), (X, i)]),
            ];
            for (variant, s) in gadgets.into_iter().enumerate() {
                out.push((
                    MisClass::VariableGadget {
                        var: i,
                        variant: variant as u8,
                    },
                    s,
                ));
            }
        }
        for i in 1..=self.n {
            let var = i as u32;
            let mut spread = set(&[(A, i), (XBar, i)]) | pos_lits;
            spread.remove(self.v(X, i));
            for (l, lits) in self.positive.iter().enumerate() {
                if lits.iter().all(|lit| lit.var() != var) {
                    spread.insert(self.v(T, l + 1));
                }
            }
            out.push((MisClass::PositiveSpread { var: i }, spread));

            let mut spread = set(&[(ABar, i), (X, i)]) | neg_lits;
            spread.remove(self.v(XBar, i));
            for (l, lits) in self.negative.iter().enumerate() {
                if lits.iter().all(|lit| lit.var() != var) {
                    spread.insert(self.v(TNeg, l + 1));
                }
            }
            out.push((MisClass::NegativeSpread { var: i }, spread));
        }
        let all_t = self.all_of(T, self.q());
        let all_tn = self.all_of(TNeg, self.q_neg());
        for l in 1..=self.q() {
            out.push((
                MisClass::PositiveTermGadget { term: l },
                set(&[(T, l), (R, l), (S, l)]),
            ));
            let t = self.v(T, l);
            let z = neg_lits - *g.neighbors(t);
            out.push((
                MisClass::PositiveTermSpread { term: l },
                set(&[(T, l), (S, l)]) | all_tn | z,
            ));
        }
        for l in 1..=self.q_neg() {
            out.push((
                MisClass::NegativeTermGadget { term: l },
                set(&[(TNeg, l), (RNeg, l), (SNeg, l)]),
            ));
            let t = self.v(TNeg, l);
            let z = pos_lits - *g.neighbors(t);
            out.push((
                MisClass::NegativeTermSpread { term: l },
                set(&[(TNeg, l), (SNeg, l)]) | all_t | z,
            ));
        }
        out
    }

    /// Vertices a regular maximal independent set must avoid.
    pub fn irregular_vertices(&self) -> VertexSet {
        use RoleKind::*;
        [
            (A, self.n),
            (B, self.n),
            (ABar, self.n),
            (BBar, self.n),
            (R, self.q()),
            (S, self.q()),
            (RNeg, self.q_neg()),
            (SNeg, self.q_neg()),
        ]
        .iter()
        .fold(VertexSet::new(), |acc, &(k, c)| acc | self.all_of(k, c))
    }

    pub fn classifier(&self) -> Classifier {
        Classifier {
            known: self
                .irregular_classes()
                .into_iter()
                .map(|(c, s)| (s, c))
                .collect(),
            irregular: self.irregular_vertices(),
        }
    }

    pub fn classify(&self, s: &VertexSet) -> Result<MisClass, ReductionError> {
        self.classifier().classify(self, s)
    }

    /// Classifies every maximal independent set of the graph.
    pub fn classification_audit(
        &self,
        mis_limit: usize,
    ) -> Result<ClassificationAudit, ReductionError> {
        let mis = enumerate_mis_limited(&self.graph, mis_limit)?;
        let classifier = self.classifier();
        let mut per_type = [0usize; 10];
        let mut unclassified = Vec::new();
        for s in &mis {
            match classifier.classify(self, s) {
                Ok(class) => per_type[class.type_number() as usize] += 1,
                Err(ReductionError::Unclassified(_)) => unclassified.push(*s),
                Err(e) => return Err(e),
            }
        }
        let mut irregular_sets_maximal = true;
        for (_, s) in self.irregular_classes() {
            irregular_sets_maximal &= is_maximal_independent(&self.graph, &s)?;
        }
        Ok(ClassificationAudit {
            mis_count: mis.len(),
            per_type,
            unclassified,
            irregular_sets_maximal,
            expected: [(2, 2), (3, 4 * self.n), (6, self.q()), (8, self.q_neg())],
        })
    }

    /// DOT rendering grouped by role prefix.
    pub fn to_dot(&self) -> String {
        self.graph
            .to_dot_grouped(|label| Role::parse(label).map(|r| r.kind.prefix().to_string()))
    }

    /// Graph text followed by the `k` line.
    pub fn to_text(&self) -> String {
        format!("{}k {}\n", self.graph.to_text(), self.k)
    }
}

/// Lookup table for [`Reduction::classify`], reusable across many sets.
pub struct Classifier {
    known: HashMap<VertexSet, MisClass>,
    irregular: VertexSet,
}

impl Classifier {
    pub fn classify(&self, red: &Reduction, s: &VertexSet) -> Result<MisClass, ReductionError> {
        if !is_maximal_independent(red.graph(), s)? {
            return Err(ReductionError::NotMaximalIndependent);
        }
        if let Some(&class) = self.known.get(s) {
            return Ok(class);
        }
        if !s.intersects(&self.irregular) {
            return Ok(MisClass::Regular);
        }
        Err(ReductionError::Unclassified(
            s.iter().map(|v| red.graph().label(v).to_string()).collect(),
        ))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationAudit {
    pub mis_count: usize,
    /// Counts indexed by type number 1..=9; slot 0 is unused.
    pub per_type: [usize; 10],
    pub unclassified: Vec<VertexSet>,
    /// Whether every defining set of a non-regular class is itself a
    /// maximal independent set.
    pub irregular_sets_maximal: bool,
    /// `(type, expected count)` for the finite families of types 2, 3, 6, 8.
    pub expected: [(u8, usize); 4],
}

impl ClassificationAudit {
    pub fn passed(&self) -> bool {
        self.unclassified.is_empty()
            && self.irregular_sets_maximal
            && self
                .expected
                .iter()
                .all(|&(t, c)| self.per_type[t as usize] == c)
    }

    pub fn to_report(&self, g: &Graph) -> String {
        let mut out = format!("mis_count: {}\n", self.mis_count);
        for t in 1..=9 {
            out.push_str(&format!("type_{t}: {}\n", self.per_type[t]));
        }
        for &(t, c) in &self.expected {
            out.push_str(&format!("expected_type_{t}: {c}\n"));
        }
        out.push_str(&format!("unclassified: {}\n", self.unclassified.len()));
        for s in &self.unclassified {
            out.push_str(&format!("unclassified_set: {}\n", g.format_set(s)));
        }
        out.push_str(&format!(
            "irregular_sets_maximal: {}\n",
            self.irregular_sets_maximal
        ));
        out.push_str(&format!("passed: {}\n", self.passed()));
        out
    }
}
