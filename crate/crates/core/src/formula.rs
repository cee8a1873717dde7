//! Two-block quantified 3-DNF formulas `∃x ∀y (t₁ ∨ … ∨ t_r)`.
//!
//! Variables are numbered from 1. Ids `1..=n` form the existential block and
//! ids `n+1..=n+m` the universal block. A term is an ordered triple of
//! literals; repeated literals are allowed and every semantic operation reads
//! a term through its *distinct* literal set.
//!
//! Evaluation is exhaustive: [`Q3dnf::evaluate`] walks all `2^(n+m)`
//! assignments, so it refuses formulas with more than [`MAX_EVAL_VARS`]
//! variables instead of truncating.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Largest `n + m` accepted by the exhaustive evaluator.
pub const MAX_EVAL_VARS: u32 = 30;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormulaError {
    #[error("variable {var} is outside 1..={max}")]
    VariableOutOfRange { var: u32, max: u32 },
    #[error("variable {0} is not bound by the assignment")]
    Unbound(u32),
    #[error("formula is not monotone (term {0} mixes polarities)")]
    NotMonotone(usize),
    #[error("exhaustive evaluation needs 2^{0} assignments (limit is 2^{MAX_EVAL_VARS})")]
    TooManyVariables(u32),
    #[error("assignment over {scope} scope expects {expected} values, got {got}")]
    ScopeMismatch {
        scope: Scope,
        expected: usize,
        got: usize,
    },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Block {
    Existential,
    Universal,
}

/// A possibly negated variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    var: u32,
    positive: bool,
}

impl Literal {
    pub fn new(var: u32, positive: bool) -> Self {
        assert!(var >= 1, "variable ids start at 1");
        Literal { var, positive }
    }

    pub fn pos(var: u32) -> Self {
        Literal::new(var, true)
    }

    pub fn neg(var: u32) -> Self {
        Literal::new(var, false)
    }

    /// Parses the signed-integer encoding used by the text format.
    pub fn from_signed(value: i64) -> Option<Self> {
        if value == 0 {
            return None;
        }
        let var = u32::try_from(value.unsigned_abs()).ok()?;
        Some(Literal::new(var, value > 0))
    }

    pub fn to_signed(self) -> i64 {
        if self.positive {
            i64::from(self.var)
        } else {
            -i64::from(self.var)
        }
    }

    pub fn var(self) -> u32 {
        self.var
    }

    pub fn is_positive(self) -> bool {
        self.positive
    }

    pub fn negated(self) -> Self {
        Literal {
            var: self.var,
            positive: !self.positive,
        }
    }

    pub fn block(self, n: u32) -> Block {
        if self.var <= n {
            Block::Existential
        } else {
            Block::Universal
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_signed())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Polarity {
    Positive,
    Negative,
    Mixed,
}

/// Polarity of a conjunction given by its literals.
pub fn polarity_of(lits: &[Literal]) -> Polarity {
    let pos = lits.iter().any(|l| l.is_positive());
    let neg = lits.iter().any(|l| !l.is_positive());
    match (pos, neg) {
        (true, false) => Polarity::Positive,
        (false, true) => Polarity::Negative,
        _ => Polarity::Mixed,
    }
}

/// Sorted, deduplicated copy of `lits`.
pub fn distinct_literals(lits: &[Literal]) -> Vec<Literal> {
    let mut out = lits.to_vec();
    out.sort();
    out.dedup();
    out
}

/// A conjunction of exactly three literal slots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Term([Literal; 3]);

impl Term {
    pub fn new(a: Literal, b: Literal, c: Literal) -> Self {
        Term([a, b, c])
    }

    /// Builds a term from signed literals, e.g. `Term::signed([1, 1, -3])`.
    pub fn signed(lits: [i64; 3]) -> Self {
        let l = lits.map(|v| Literal::from_signed(v).expect("nonzero literal"));
        Term(l)
    }

    pub fn slots(&self) -> &[Literal; 3] {
        &self.0
    }

    pub fn distinct(&self) -> Vec<Literal> {
        distinct_literals(&self.0)
    }

    pub fn polarity(&self) -> Polarity {
        polarity_of(&self.0)
    }

    pub fn mentions(&self, var: u32) -> bool {
        self.0.iter().any(|l| l.var() == var)
    }

    pub fn evaluate(&self, a: &Assignment) -> Result<bool, FormulaError> {
        let mut all = true;
        for lit in &self.0 {
            all &= a.get(lit.var())? == lit.is_positive();
        }
        Ok(all)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.0;
        write!(f, "{a} {b} {c}")
    }
}

/// Which variables an [`Assignment`] binds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scope {
    Existential,
    Universal,
    Full,
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scope::Existential => "existential",
            Scope::Universal => "universal",
            Scope::Full => "full",
        })
    }
}

/// Truth values for one or both variable blocks of a formula with `n`
/// existential and `m` universal variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Assignment {
    scope: Scope,
    n: u32,
    m: u32,
    values: Vec<bool>,
}

impl Assignment {
    pub fn new(scope: Scope, n: u32, m: u32, values: Vec<bool>) -> Result<Self, FormulaError> {
        let expected = match scope {
            Scope::Existential => n,
            Scope::Universal => m,
            Scope::Full => n + m,
        } as usize;
        if values.len() != expected {
            return Err(FormulaError::ScopeMismatch {
                scope,
                expected,
                got: values.len(),
            });
        }
        Ok(Assignment {
            scope,
            n,
            m,
            values,
        })
    }

    /// Existential-block assignment.
    pub fn existential(n: u32, m: u32, values: Vec<bool>) -> Result<Self, FormulaError> {
        Assignment::new(Scope::Existential, n, m, values)
    }

    pub fn full(n: u32, m: u32, values: Vec<bool>) -> Result<Self, FormulaError> {
        Assignment::new(Scope::Full, n, m, values)
    }

    pub fn scope(&self) -> Scope {
        self.scope
    }

    fn first_var(&self) -> u32 {
        match self.scope {
            Scope::Universal => self.n + 1,
            _ => 1,
        }
    }

    pub fn get(&self, var: u32) -> Result<bool, FormulaError> {
        let first = self.first_var();
        if var < first || (var - first) as usize >= self.values.len() {
            return Err(FormulaError::Unbound(var));
        }
        Ok(self.values[(var - first) as usize])
    }

    /// Values in variable order, starting with the first variable of the scope.
    pub fn values(&self) -> &[bool] {
        &self.values
    }

    /// `1`/`0` string, leftmost character = first variable in scope.
    pub fn bit_string(&self) -> String {
        self.values
            .iter()
            .map(|&b| if b { '1' } else { '0' })
            .collect()
    }
}

/// Result of exhaustive evaluation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Evaluation {
    pub holds: bool,
    /// Lexicographically least witnessing x-vector, present iff `holds`.
    pub witness: Option<Assignment>,
}

/// Term indices grouped by polarity.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PolaritySplit {
    pub positive: Vec<usize>,
    pub negative: Vec<usize>,
    pub mixed: Vec<usize>,
}

/// Which polarity class fails to provide a term avoiding an existential variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MissingSide {
    /// Every positive term mentions the variable.
    Positive,
    /// Every negative term mentions the variable.
    Negative,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NiceReport {
    pub nice: bool,
    pub deficiencies: Vec<(u32, MissingSide)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Q3dnf {
    n: u32,
    m: u32,
    terms: Vec<Term>,
}

impl Q3dnf {
    pub fn new(n: u32, m: u32, terms: Vec<Term>) -> Result<Self, FormulaError> {
        check_vars(n + m, terms.iter().flat_map(|t| t.slots().iter().copied()))?;
        Ok(Q3dnf { n, m, terms })
    }

    /// Existential variable count.
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Universal variable count.
    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn num_vars(&self) -> u32 {
        self.n + self.m
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn evaluate_term(&self, index: usize, a: &Assignment) -> Result<bool, FormulaError> {
        self.terms[index].evaluate(a)
    }

    /// Truth of the matrix under a full assignment.
    pub fn evaluate_matrix(&self, a: &Assignment) -> Result<bool, FormulaError> {
        for t in &self.terms {
            if t.evaluate(a)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Decides `∃x ∀y φ(x, y)` by exhaustive search.
    pub fn evaluate(&self) -> Result<Evaluation, FormulaError> {
        evaluate_terms(self.n, self.m, self.terms.iter().map(|t| &t.0[..]))
    }

    /// Whether the x-block assignment makes `∀y φ` true.
    pub fn is_witness(&self, x: &Assignment) -> Result<bool, FormulaError> {
        if x.scope() != Scope::Existential || x.values().len() != self.n as usize {
            return Err(FormulaError::ScopeMismatch {
                scope: Scope::Existential,
                expected: self.n as usize,
                got: x.values().len(),
            });
        }
        if self.n + self.m > MAX_EVAL_VARS {
            return Err(FormulaError::TooManyVariables(self.n + self.m));
        }
        let packed: Vec<PackedTerm> = self.terms.iter().map(|t| PackedTerm::new(&t.0)).collect();
        let x_bits = x
            .values()
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &b)| acc | (b as u64) << i);
        Ok(holds_for_all_y(&packed, self.n, self.m, x_bits))
    }

    pub fn polarity_split(&self) -> PolaritySplit {
        let mut split = PolaritySplit::default();
        for (i, t) in self.terms.iter().enumerate() {
            match t.polarity() {
                Polarity::Positive => split.positive.push(i),
                Polarity::Negative => split.negative.push(i),
                Polarity::Mixed => split.mixed.push(i),
            }
        }
        split
    }

    pub fn is_monotone(&self) -> bool {
        self.terms.iter().all(|t| t.polarity() != Polarity::Mixed)
    }

    pub fn is_nice(&self) -> Result<NiceReport, FormulaError> {
        nice_report(self.n, self.terms.iter().map(|t| &t.0[..]))
    }

    /// Number of positive terms.
    pub fn q(&self) -> usize {
        self.polarity_split().positive.len()
    }

    /// Number of negative terms.
    pub fn q_neg(&self) -> usize {
        self.polarity_split().negative.len()
    }

    /// Serializes to the `p qdnf` text format.
    pub fn to_text(&self) -> String {
        let mut out = format!("p qdnf {} {} {}\n", self.n, self.m, self.terms.len());
        for t in &self.terms {
            out.push_str(&format!("t {t}\n"));
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut header: Option<(usize, u32, u32, usize)> = None;
        let mut terms = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            match fields[0] {
                "p" => {
                    if header.is_some() {
                        return Err(ParseError::new(line_no, "duplicate header"));
                    }
                    if fields.len() != 5 || fields[1] != "qdnf" {
                        return Err(ParseError::new(
                            line_no,
                            "expected header `p qdnf <n> <m> <#terms>`",
                        ));
                    }
                    let n = parse_num::<u32>(fields[2], line_no)?;
                    let m = parse_num::<u32>(fields[3], line_no)?;
                    let count = parse_num::<usize>(fields[4], line_no)?;
                    header = Some((line_no, n, m, count));
                }
                "t" => {
                    let Some((_, n, m, _)) = header else {
                        return Err(ParseError::new(line_no, "term before header"));
                    };
                    if fields.len() != 4 {
                        return Err(ParseError::new(
                            line_no,
                            format!("term needs exactly 3 literals, found {}", fields.len() - 1),
                        ));
                    }
                    let mut lits = [Literal::pos(1); 3];
                    for (slot, tok) in lits.iter_mut().zip(&fields[1..]) {
                        let v = parse_num::<i64>(tok, line_no)?;
                        let lit = Literal::from_signed(v)
                            .ok_or_else(|| ParseError::new(line_no, "literal 0 is not allowed"))?;
                        if lit.var() > n + m {
                            return Err(ParseError::new(
                                line_no,
                                format!("variable {} outside 1..={}", lit.var(), n + m),
                            ));
                        }
                        *slot = lit;
                    }
                    terms.push(Term(lits));
                }
                other => {
                    return Err(ParseError::new(
                        line_no,
                        format!("unknown line type `{other}`"),
                    ));
                }
            }
        }
        let Some((line, n, m, count)) = header else {
            return Err(ParseError::new(0, "missing `p qdnf` header"));
        };
        if count != terms.len() {
            return Err(ParseError::new(
                line,
                format!("header declares {count} terms, found {}", terms.len()),
            ));
        }
        Ok(Q3dnf { n, m, terms })
    }
}

impl FromStr for Q3dnf {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Q3dnf::parse(s)
    }
}

fn parse_num<T: FromStr>(tok: &str, line: usize) -> Result<T, ParseError> {
    tok.parse()
        .map_err(|_| ParseError::new(line, format!("invalid number `{tok}`")))
}

pub(crate) fn check_vars(
    max: u32,
    lits: impl IntoIterator<Item = Literal>,
) -> Result<(), FormulaError> {
    for lit in lits {
        if lit.var() > max {
            return Err(FormulaError::VariableOutOfRange {
                var: lit.var(),
                max,
            });
        }
    }
    Ok(())
}

/// Niceness check over arbitrary-width monotone conjunctions.
pub(crate) fn nice_report<'a>(
    n: u32,
    terms: impl Iterator<Item = &'a [Literal]> + Clone,
) -> Result<NiceReport, FormulaError> {
    for (i, t) in terms.clone().enumerate() {
        if polarity_of(t) == Polarity::Mixed {
            return Err(FormulaError::NotMonotone(i));
        }
    }
    let mut deficiencies = Vec::new();
    for var in 1..=n {
        for (side, want) in [
            (MissingSide::Positive, Polarity::Positive),
            (MissingSide::Negative, Polarity::Negative),
        ] {
            let avoided = terms
                .clone()
                .filter(|t| polarity_of(t) == want)
                .any(|t| t.iter().all(|l| l.var() != var));
            if !avoided {
                deficiencies.push((var, side));
            }
        }
    }
    Ok(NiceReport {
        nice: deficiencies.is_empty(),
        deficiencies,
    })
}

/// A term packed as (required-true mask, required-false mask).
#[derive(Clone, Copy)]
struct PackedTerm {
    pos: u64,
    neg: u64,
}

impl PackedTerm {
    fn new(lits: &[Literal]) -> Self {
        let mut t = PackedTerm { pos: 0, neg: 0 };
        for l in lits {
            let bit = 1u64 << (l.var() - 1);
            if l.is_positive() {
                t.pos |= bit;
            } else {
                t.neg |= bit;
            }
        }
        t
    }

    #[inline]
    fn satisfied(self, bits: u64) -> bool {
        bits & self.pos == self.pos && bits & self.neg == 0
    }
}

fn holds_for_all_y(packed: &[PackedTerm], n: u32, m: u32, x_bits: u64) -> bool {
    // Terms that can still fire under this x.
    let x_mask = (1u64 << n) - 1;
    let live: Vec<PackedTerm> = packed
        .iter()
        .copied()
        .filter(|t| x_bits & t.pos & x_mask == t.pos & x_mask && x_bits & t.neg & x_mask == 0)
        .collect();
    (0u64..(1u64 << m)).all(|y| {
        let bits = x_bits | (y << n);
        live.iter().any(|t| t.satisfied(bits))
    })
}

/// Exhaustive `∃x ∀y` evaluation over arbitrary-width conjunctions.
///
/// Bit `v - 1` of the packed assignment holds variable `v`. x-vectors are
/// visited in lexicographic order with variable 1 most significant and
/// false before true, so the first witness found is the least one.
pub(crate) fn evaluate_terms<'a>(
    n: u32,
    m: u32,
    terms: impl Iterator<Item = &'a [Literal]>,
) -> Result<Evaluation, FormulaError> {
    let total = n + m;
    if total > MAX_EVAL_VARS {
        return Err(FormulaError::TooManyVariables(total));
    }
    let packed: Vec<PackedTerm> = terms.map(PackedTerm::new).collect();
    for rank in 0u64..(1u64 << n) {
        // rank's most significant bit (of n) is variable 1
        let mut x_bits = 0u64;
        for i in 0..n {
            if (rank >> (n - 1 - i)) & 1 == 1 {
                x_bits |= 1 << i;
            }
        }
        if holds_for_all_y(&packed, n, m, x_bits) {
            let values = (1..=n).map(|v| (x_bits >> (v - 1)) & 1 == 1).collect();
            return Ok(Evaluation {
                holds: true,
                witness: Some(Assignment::existential(n, m, values)?),
            });
        }
    }
    Ok(Evaluation {
        holds: false,
        witness: None,
    })
}
