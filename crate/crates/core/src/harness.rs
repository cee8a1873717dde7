//! Seeded instance generators and the end-to-end round trip
//! formula → normalized formula → graph → minimum transversal.
//!
//! Both generators draw from `ChaCha8Rng::seed_from_u64(seed)`. A term is
//! three literals drawn in slot order; each literal draws its variable with
//! `gen_range(1..=n + m)` and, for unrestricted formulas, its sign with
//! `gen_bool(0.5)`.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::formula::{Assignment, FormulaError, Literal, Q3dnf, Term};
use crate::graph::{min_transversal, GraphError, MinTransversal, DEFAULT_MIS_LIMIT};
use crate::normalize::{add_niceness_terms, normalize, pad_terms, Draft, NormalizeError};
use crate::reduction::{ClassificationAudit, Reduction, ReductionError};

/// Draws per nice monotone formula before falling back to repair.
pub const GEN_RETRY_CAP: usize = 10_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HarnessError {
    #[error("invalid generator parameters: {0}")]
    InvalidParameters(String),
    #[error(
        "no nice formula exists with n={n}, m=0, q={q}, q'={q_neg}: some term of each polarity \
         must avoid every existential variable"
    )]
    Infeasible { n: u32, q: usize, q_neg: usize },
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error(transparent)]
    Normalize(#[from] NormalizeError),
    #[error(transparent)]
    Reduction(#[from] ReductionError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn random_term(rng: &mut ChaCha8Rng, vars: u32, sign: Option<bool>) -> Term {
    let mut lit = || {
        let var = rng.gen_range(1..=vars);
        let positive = sign.unwrap_or_else(|| rng.gen_bool(0.5));
        Literal::new(var, positive)
    };
    let (a, b, c) = (lit(), lit(), lit());
    Term::new(a, b, c)
}

/// A random nice monotone formula with `q` positive terms followed by
/// `q_neg` negative terms.
///
/// Whole formulas are redrawn up to [`GEN_RETRY_CAP`] times until one is
/// nice. If none is, the last draw is repaired with
/// [`add_niceness_terms`], which appends terms and universal variables, so
/// the result then has larger `m`, `q` and `q′` than requested.
pub fn gen_nice_monotone(
    n: u32,
    m: u32,
    q: usize,
    q_neg: usize,
    seed: u64,
) -> Result<Q3dnf, HarnessError> {
    if n == 0 || q == 0 || q_neg == 0 {
        return Err(HarnessError::InvalidParameters(format!(
            "need n, q, q' >= 1; got n={n}, q={q}, q'={q_neg}"
        )));
    }
    // With no universal variable every term mentions some x_i, so a single
    // term of one polarity, or a single variable, leaves a deficiency.
    if m == 0 && (n == 1 || q < 2 || q_neg < 2) {
        return Err(HarnessError::Infeasible { n, q, q_neg });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vars = n + m;
    let mut last = None;
    for _ in 0..GEN_RETRY_CAP {
        let terms: Vec<Term> = (0..q + q_neg)
            .map(|i| random_term(&mut rng, vars, Some(i < q)))
            .collect();
        let f = Q3dnf::new(n, m, terms)?;
        if f.is_nice()?.nice {
            return Ok(f);
        }
        last = Some(f);
    }
    let draft = Draft::from(&last.expect("at least one draw"));
    Ok(pad_terms(&add_niceness_terms(&draft)?)?)
}

/// A random formula with `terms` terms of arbitrary polarity.
pub fn gen_q3dnf(n: u32, m: u32, terms: usize, seed: u64) -> Result<Q3dnf, HarnessError> {
    if terms == 0 || n + m == 0 {
        return Err(HarnessError::InvalidParameters(format!(
            "need terms >= 1 and n + m >= 1; got n={n}, m={m}, terms={terms}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let terms = (0..terms)
        .map(|_| random_term(&mut rng, n + m, None))
        .collect();
    Ok(Q3dnf::new(n, m, terms)?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundTripReport {
    pub input_holds: bool,
    pub normalized: Q3dnf,
    pub holds: bool,
    pub witness: Option<Assignment>,
    pub vertices: usize,
    pub edges: usize,
    pub k: usize,
    /// Minimum transversal searched with limit `k`.
    pub min_transversal: MinTransversal,
    /// `holds` iff a transversal of size at most `k` exists.
    pub consistent: bool,
    /// When `holds`, the minimum is exactly `k`. Vacuously true otherwise.
    pub exact_when_true: bool,
    /// Assignment read off the canonicalized minimum transversal.
    pub extracted_witness: Option<Assignment>,
    /// Whether the extracted assignment makes `∀y φ` true.
    pub extracted_witness_valid: Option<bool>,
}

impl RoundTripReport {
    pub fn min_transversal_size(&self) -> Option<usize> {
        self.min_transversal.size()
    }

    /// `key: value` lines.
    pub fn to_text(&self) -> String {
        let f = &self.normalized;
        let bits =
            |a: &Option<Assignment>| a.as_ref().map_or("none".into(), Assignment::bit_string);
        let size = match self.min_transversal.size() {
            Some(s) => s.to_string(),
            None => format!(">{}", self.k),
        };
        let lines = [
            ("input_holds", self.input_holds.to_string()),
            ("normalized_n", f.n().to_string()),
            ("normalized_m", f.m().to_string()),
            ("normalized_terms", f.terms().len().to_string()),
            ("q", f.q().to_string()),
            ("q_neg", f.q_neg().to_string()),
            ("holds", self.holds.to_string()),
            ("witness", bits(&self.witness)),
            ("vertices", self.vertices.to_string()),
            ("edges", self.edges.to_string()),
            ("k", self.k.to_string()),
            ("min_transversal_size", size),
            ("consistent", self.consistent.to_string()),
            ("exact_when_true", self.exact_when_true.to_string()),
            ("extracted_witness", bits(&self.extracted_witness)),
            (
                "extracted_witness_valid",
                self.extracted_witness_valid
                    .map_or("n/a".into(), |b| b.to_string()),
            ),
        ];
        lines.iter().map(|(k, v)| format!("{k}: {v}\n")).collect()
    }
}

/// Normalizes `f` and checks its truth against a minimum transversal
/// search limited to `k`.
pub fn round_trip(f: &Q3dnf) -> Result<RoundTripReport, HarnessError> {
    let input_holds = f.evaluate()?.holds;
    let normalized = normalize(f)?;
    let eval = normalized.evaluate()?;
    let red = Reduction::build(&normalized)?;
    let k = red.k();
    let min = min_transversal(red.graph(), Some(k))?;
    let found = min.set().copied();
    let consistent = eval.holds == found.is_some();
    let exact_when_true = !eval.holds || min.size() == Some(k);
    let (extracted_witness, extracted_witness_valid) = match found {
        Some(x) => {
            let canonical = red.canonicalize(&x, false)?;
            let mu = red.assignment_from_transversal(&canonical)?;
            let valid = normalized.is_witness(&mu)?;
            (Some(mu), Some(valid))
        }
        None => (None, None),
    };
    Ok(RoundTripReport {
        input_holds,
        holds: eval.holds,
        witness: eval.witness,
        vertices: red.graph().len(),
        edges: red.graph().edge_count(),
        k,
        min_transversal: min,
        consistent,
        exact_when_true,
        extracted_witness,
        extracted_witness_valid,
        normalized,
    })
}

pub fn classification_audit(red: &Reduction) -> Result<ClassificationAudit, HarnessError> {
    Ok(red.classification_audit(DEFAULT_MIS_LIMIT)?)
}

/// Aggregate `key: value` summary over a batch of reports.
pub fn summarize(reports: &[RoundTripReport]) -> String {
    let count =
        |pred: &dyn Fn(&RoundTripReport) -> bool| reports.iter().filter(|r| pred(r)).count();
    let lines = [
        ("instances", reports.len()),
        ("true_instances", count(&|r| r.holds)),
        ("false_instances", count(&|r| !r.holds)),
        (
            "normalization_preserved_truth",
            count(&|r| r.input_holds == r.holds),
        ),
        ("consistent", count(&|r| r.consistent)),
        ("inconsistent", count(&|r| !r.consistent)),
        ("exact_when_true", count(&|r| r.exact_when_true)),
        (
            "extracted_witness_invalid",
            count(&|r| r.extracted_witness_valid == Some(false)),
        ),
        (
            "max_vertices",
            reports.iter().map(|r| r.vertices).max().unwrap_or(0),
        ),
    ];
    lines.iter().map(|(k, v)| format!("{k}: {v}\n")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn phi0() -> Q3dnf {
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

    #[test]
    fn nice_generator_is_deterministic_and_nice() {
        for seed in 0..20 {
            let f = gen_nice_monotone(2, 1, 2, 2, seed).unwrap();
            assert_eq!(f, gen_nice_monotone(2, 1, 2, 2, seed).unwrap());
            assert!(f.is_monotone());
            assert!(f.is_nice().unwrap().nice);
            assert_eq!((f.q(), f.q_neg()), (2, 2));
        }
        assert_ne!(
            gen_nice_monotone(3, 2, 3, 3, 1).unwrap(),
            gen_nice_monotone(3, 2, 3, 3, 2).unwrap()
        );
    }

    /// Every nice formula with n=2, m=1, q=q'=2 is true, so the small
    /// family only ever produces true instances.
    #[test]
    fn nice_two_one_two_two_is_always_true() {
        let subsets: Vec<Vec<u32>> = (1u32..8)
            .map(|mask| (1..=3).filter(|v| mask >> (v - 1) & 1 == 1).collect())
            .collect();
        let term = |vars: &[u32], positive: bool| {
            let lit = |i: usize| Literal::new(vars[i.min(vars.len() - 1)], positive);
            Term::new(lit(0), lit(1), lit(2))
        };
        let mut nice = 0;
        for a in &subsets {
            for b in &subsets {
                for c in &subsets {
                    for d in &subsets {
                        let terms =
                            vec![term(a, true), term(b, true), term(c, false), term(d, false)];
                        let f = Q3dnf::new(2, 1, terms).unwrap();
                        if f.is_nice().unwrap().nice {
                            nice += 1;
                            assert!(f.evaluate().unwrap().holds, "{}", f.to_text());
                        }
                    }
                }
            }
        }
        assert_eq!(nice, 441);
        for s in 0..200 {
            assert!(
                gen_nice_monotone(2, 1, 2, 2, s)
                    .unwrap()
                    .evaluate()
                    .unwrap()
                    .holds
            );
        }
    }

    #[test]
    fn nice_generator_hits_both_truth_values() {
        let truths: Vec<bool> = (0..100)
            .map(|s| {
                gen_nice_monotone(3, 2, 3, 3, s)
                    .unwrap()
                    .evaluate()
                    .unwrap()
                    .holds
            })
            .collect();
        assert!(truths.contains(&true));
        assert!(truths.contains(&false));
    }

    #[test]
    fn infeasible_parameters() {
        assert!(matches!(
            gen_nice_monotone(1, 0, 3, 3, 0),
            Err(HarnessError::Infeasible { .. })
        ));
        assert!(matches!(
            gen_nice_monotone(3, 0, 1, 3, 0),
            Err(HarnessError::Infeasible { .. })
        ));
        assert!(matches!(
            gen_nice_monotone(0, 1, 1, 1, 0),
            Err(HarnessError::InvalidParameters(_))
        ));
        let f = gen_nice_monotone(2, 0, 2, 2, 5).unwrap();
        assert!(f.is_nice().unwrap().nice);
    }

    #[test]
    fn plain_generator() {
        let f = gen_q3dnf(1, 1, 1, 9).unwrap();
        assert_eq!(f.terms().len(), 1);
        assert_eq!(f, gen_q3dnf(1, 1, 1, 9).unwrap());
        assert!(gen_q3dnf(1, 1, 0, 9).is_err());
        let mixed = (0..50).any(|s| !gen_q3dnf(3, 3, 4, s).unwrap().is_monotone());
        assert!(mixed);
    }

    #[test]
    fn round_trip_phi0() {
        let r = round_trip(&phi0()).unwrap();
        assert!(r.input_holds && r.holds);
        assert_eq!(r.k, 8);
        assert_eq!(r.min_transversal_size(), Some(8));
        assert!(r.consistent && r.exact_when_true);
        assert_eq!(r.extracted_witness_valid, Some(true));
        assert_eq!(r.normalized, phi0());
        let text = r.to_text();
        assert!(text.contains("k: 8\n"));
        assert!(text.contains("consistent: true\n"));
        assert!(text.contains("witness: 01\n"));
    }

    #[test]
    fn round_trip_false_formula() {
        // x1 alone cannot beat y1 once both polarities mention it.
        let f = Q3dnf::new(
            1,
            1,
            vec![Term::signed([1, 1, 2]), Term::signed([-1, -1, -2])],
        )
        .unwrap();
        let r = round_trip(&f).unwrap();
        assert!(!r.holds && !r.input_holds);
        assert_eq!(r.min_transversal, MinTransversal::ExceedsLimit(r.k));
        assert!(r.consistent);
        assert!(r
            .to_text()
            .contains(&format!("min_transversal_size: >{}\n", r.k)));
    }

    #[test]
    fn summary_counts() {
        let reports = vec![round_trip(&phi0()).unwrap()];
        let s = summarize(&reports);
        assert!(s.contains("instances: 1\n"));
        assert!(s.contains("inconsistent: 0\n"));
    }
}
