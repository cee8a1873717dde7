//! Rewriting an arbitrary Q-3-DNF formula into an equivalent nice monotone
//! one with exactly three literal slots per term.
//!
//! The pipeline runs in three passes over a [`Draft`] (a formula whose terms
//! may temporarily hold two literal slots):
//!
//! 1. [`monotonize`] splits every mixed term `P ∧ N` into `(P ∧ d)` and
//!    `(d̄ ∧ N)` with a fresh universal `d`.
//! 2. [`add_niceness_terms`] appends `(xᵢ ∧ z ∧ w), (z̄ ∧ w̄)` or
//!    `(x̄ᵢ ∧ z̄ ∧ w̄), (z ∧ w)` for every deficient existential variable.
//! 3. [`pad_terms`] widens two-slot terms by repeating their last literal.
//!
//! Fresh variables are always appended to the universal block, so existing
//! ids never move.

use thiserror::Error;

use crate::formula::{
    check_vars, distinct_literals, evaluate_terms, nice_report, polarity_of, Evaluation,
    FormulaError, Literal, MissingSide, NiceReport, Polarity, Q3dnf, Term,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NormalizeError {
    #[error("term is not mixed")]
    NotMixed,
    #[error("term {0} has {1} literal slots; expected 2 or 3")]
    BadWidth(usize, usize),
    #[error("normalization needs at least one existential variable")]
    NoExistentialVariables,
    #[error("normalization needs at least one term")]
    NoTerms,
    #[error("internal invariant violated after normalization: {0}")]
    Invariant(String),
    #[error(transparent)]
    Formula(#[from] FormulaError),
}

/// A two-block quantified DNF whose terms hold one to three literal slots.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Draft {
    pub n: u32,
    pub m: u32,
    pub terms: Vec<Vec<Literal>>,
}

impl Draft {
    pub fn evaluate(&self) -> Result<Evaluation, FormulaError> {
        evaluate_terms(self.n, self.m, self.terms.iter().map(Vec::as_slice))
    }

    pub fn is_monotone(&self) -> bool {
        self.terms.iter().all(|t| polarity_of(t) != Polarity::Mixed)
    }

    pub fn is_nice(&self) -> Result<NiceReport, FormulaError> {
        nice_report(self.n, self.terms.iter().map(Vec::as_slice))
    }

    fn fresh_universal(&mut self) -> u32 {
        self.m += 1;
        self.n + self.m
    }
}

impl From<&Q3dnf> for Draft {
    fn from(f: &Q3dnf) -> Self {
        Draft {
            n: f.n(),
            m: f.m(),
            terms: f.terms().iter().map(|t| t.slots().to_vec()).collect(),
        }
    }
}

/// Splits a mixed conjunction into a positive part guarded by `d` and a
/// negative part guarded by `d̄`. Each part lists distinct literals.
pub fn split_mixed_term(
    term: &[Literal],
    fresh: u32,
) -> Result<(Vec<Literal>, Vec<Literal>), NormalizeError> {
    if polarity_of(term) != Polarity::Mixed {
        return Err(NormalizeError::NotMixed);
    }
    let lits = distinct_literals(term);
    let mut positive: Vec<Literal> = lits.iter().copied().filter(|l| l.is_positive()).collect();
    positive.push(Literal::pos(fresh));
    let mut negative = vec![Literal::neg(fresh)];
    negative.extend(lits.iter().copied().filter(|l| !l.is_positive()));
    Ok((positive, negative))
}

/// Replaces each mixed term, in order, by its two split parts.
pub fn monotonize(f: &Q3dnf) -> Draft {
    let mut out = Draft {
        n: f.n(),
        m: f.m(),
        terms: Vec::with_capacity(f.terms().len()),
    };
    for term in f.terms() {
        if term.polarity() == Polarity::Mixed {
            let d = out.fresh_universal();
            let (pos, neg) = split_mixed_term(term.slots(), d).expect("term is mixed");
            out.terms.push(pos);
            out.terms.push(neg);
        } else {
            out.terms.push(term.slots().to_vec());
        }
    }
    out
}

/// Appends dummy term pairs so that every existential variable has a
/// positive term and a negative term avoiding it.
///
/// Deficiencies are computed once on the input and repaired in ascending
/// variable order, the missing-negative repair before the missing-positive one.
pub fn add_niceness_terms(f: &Draft) -> Result<Draft, NormalizeError> {
    let report = f.is_nice()?;
    let mut out = f.clone();
    let mut repairs = report.deficiencies;
    repairs.sort_by_key(|&(var, side)| (var, side == MissingSide::Positive));
    for (var, side) in repairs {
        let z = out.fresh_universal();
        let w = out.fresh_universal();
        match side {
            MissingSide::Negative => {
                out.terms
                    .push(vec![Literal::pos(var), Literal::pos(z), Literal::pos(w)]);
                out.terms.push(vec![Literal::neg(z), Literal::neg(w)]);
            }
            MissingSide::Positive => {
                out.terms
                    .push(vec![Literal::neg(var), Literal::neg(z), Literal::neg(w)]);
                out.terms.push(vec![Literal::pos(z), Literal::pos(w)]);
            }
        }
    }
    Ok(out)
}

/// Widens two-slot terms to three slots by repeating the last literal.
pub fn pad_terms(f: &Draft) -> Result<Q3dnf, NormalizeError> {
    let mut terms = Vec::with_capacity(f.terms.len());
    for (i, t) in f.terms.iter().enumerate() {
        let term = match t.as_slice() {
            &[a, b] => Term::new(a, b, b),
            &[a, b, c] => Term::new(a, b, c),
            other => return Err(NormalizeError::BadWidth(i, other.len())),
        };
        terms.push(term);
    }
    check_vars(f.n + f.m, f.terms.iter().flatten().copied())?;
    Ok(Q3dnf::new(f.n, f.m, terms)?)
}

/// Full pipeline: monotonize, repair niceness, pad, then verify the result.
pub fn normalize(f: &Q3dnf) -> Result<Q3dnf, NormalizeError> {
    if f.n() == 0 {
        return Err(NormalizeError::NoExistentialVariables);
    }
    if f.terms().is_empty() {
        return Err(NormalizeError::NoTerms);
    }
    let monotone = monotonize(f);
    let nice = add_niceness_terms(&monotone)?;
    let out = pad_terms(&nice)?;

    if !out.is_monotone() {
        return Err(NormalizeError::Invariant("output is not monotone".into()));
    }
    let report = out.is_nice()?;
    if !report.nice {
        return Err(NormalizeError::Invariant(format!(
            "output is not nice: {:?}",
            report.deficiencies
        )));
    }
    if out.n() != f.n() {
        return Err(NormalizeError::Invariant(
            "existential block changed".into(),
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lits(v: &[i64]) -> Vec<Literal> {
        v.iter()
            .map(|&x| Literal::from_signed(x).unwrap())
            .collect()
    }

    /// Truth value of `∀d (part1 ∨ part2)` against the original conjunction,
    /// for every assignment of the variables 1..=4 (variable 4 is `d`).
    fn split_is_equivalent(term: &[i64]) -> bool {
        let (p1, p2) = split_mixed_term(&lits(term), 4).unwrap();
        let sat = |c: &[Literal], bits: u32| {
            c.iter()
                .all(|l| ((bits >> (l.var() - 1)) & 1 == 1) == l.is_positive())
        };
        (0u32..16).all(|bits| {
            let abc = bits & 0b0111;
            let original = sat(&lits(term), abc);
            let split = [0u32, 0b1000]
                .iter()
                .all(|&d| sat(&p1, abc | d) || sat(&p2, abc | d));
            original == split
        })
    }

    #[test]
    fn split_one_negative() {
        let (p, n) = split_mixed_term(&lits(&[1, 2, -3]), 4).unwrap();
        assert_eq!(p, lits(&[1, 2, 4]));
        assert_eq!(n, lits(&[-4, -3]));
        assert!(split_is_equivalent(&[1, 2, -3]));
    }

    #[test]
    fn split_two_negatives() {
        let (p, n) = split_mixed_term(&lits(&[1, -2, -3]), 4).unwrap();
        assert_eq!(p, lits(&[1, 4]));
        assert_eq!(n, lits(&[-4, -2, -3]));
        assert!(split_is_equivalent(&[1, -2, -3]));
    }

    #[test]
    fn split_rejects_monotone() {
        assert_eq!(
            split_mixed_term(&lits(&[1, 2, 3]), 4),
            Err(NormalizeError::NotMixed)
        );
    }

    #[test]
    fn monotonize_examples() {
        let phi0 = Q3dnf::new(
            2,
            1,
            vec![
                Term::signed([1, 1, 3]),
                Term::signed([2, 2, 3]),
                Term::signed([-1, -1, -3]),
                Term::signed([-2, -2, -3]),
            ],
        )
        .unwrap();
        assert_eq!(monotonize(&phi0), Draft::from(&phi0));

        let f = Q3dnf::new(1, 1, vec![Term::signed([1, 1, -2])]).unwrap();
        let d = monotonize(&f);
        assert_eq!(d.m, 2);
        assert_eq!(d.terms, vec![lits(&[1, 3]), lits(&[-3, -2])]);
        assert!(!f.evaluate().unwrap().holds);
        assert!(!d.evaluate().unwrap().holds);

        let f = Q3dnf::new(
            1,
            1,
            vec![Term::signed([1, -2, 2]), Term::signed([-1, 2, 2])],
        )
        .unwrap();
        let d = monotonize(&f);
        assert_eq!(d.m, 3);
        assert_eq!(d.terms.len(), 4);
        assert!(d.is_monotone());
    }

    #[test]
    fn niceness_repair() {
        let f = Q3dnf::new(
            1,
            1,
            vec![Term::signed([1, 1, 2]), Term::signed([-1, -1, -2])],
        )
        .unwrap();
        let d = add_niceness_terms(&Draft::from(&f)).unwrap();
        assert_eq!(d.m, 5);
        assert_eq!(
            d.terms[2..],
            [
                lits(&[1, 3, 4]),
                lits(&[-3, -4]),
                lits(&[-1, -5, -6]),
                lits(&[5, 6]),
            ]
        );
        assert!(d.is_nice().unwrap().nice);
        assert_eq!(d.evaluate().unwrap().holds, f.evaluate().unwrap().holds);
        // The appended negative term mentions no existential variable.
        assert!(d.terms[3].iter().all(|l| l.var() > 1));
    }

    #[test]
    fn niceness_repair_is_identity_on_nice_input() {
        let f = Q3dnf::new(
            1,
            1,
            vec![Term::signed([2, 2, 2]), Term::signed([-2, -2, -2])],
        )
        .unwrap();
        let d = Draft::from(&f);
        assert_eq!(add_niceness_terms(&d).unwrap(), d);
    }

    #[test]
    fn padding() {
        let d = Draft {
            n: 2,
            m: 2,
            terms: vec![lits(&[1, 2]), lits(&[-3, -4]), lits(&[1, 3, 4])],
        };
        let f = pad_terms(&d).unwrap();
        assert_eq!(
            f.terms(),
            &[
                Term::signed([1, 2, 2]),
                Term::signed([-3, -4, -4]),
                Term::signed([1, 3, 4]),
            ]
        );
        let bad = Draft {
            n: 1,
            m: 0,
            terms: vec![lits(&[1])],
        };
        assert_eq!(pad_terms(&bad), Err(NormalizeError::BadWidth(0, 1)));
    }

    #[test]
    fn pipeline_on_unsatisfiable_term() {
        let f = Q3dnf::new(1, 1, vec![Term::signed([1, 2, -2])]).unwrap();
        let out = normalize(&f).unwrap();
        assert!(out.is_monotone());
        assert!(out.is_nice().unwrap().nice);
        assert!(!f.evaluate().unwrap().holds);
        assert!(!out.evaluate().unwrap().holds);
    }

    #[test]
    fn pipeline_preconditions() {
        let f = Q3dnf::new(0, 1, vec![Term::signed([1, 1, 1])]).unwrap();
        assert_eq!(normalize(&f), Err(NormalizeError::NoExistentialVariables));
        let f = Q3dnf::new(1, 1, vec![]).unwrap();
        assert_eq!(normalize(&f), Err(NormalizeError::NoTerms));
    }
}
