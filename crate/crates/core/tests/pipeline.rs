mod common;

use mis_transversal::formula::{Assignment, Q3dnf};
use mis_transversal::graph::{is_transversal, Graph};
use mis_transversal::harness::{gen_nice_monotone, gen_q3dnf};
use mis_transversal::normalize::normalize;
use mis_transversal::reduction::Reduction;
use proptest::prelude::*;

fn bits(x: &[bool]) -> String {
    x.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn evaluator_matches_oracle(n in 0u32..4, m in 0u32..4, terms in 1usize..6, seed in any::<u64>()) {
        prop_assume!(n + m > 0);
        let f = gen_q3dnf(n, m, terms, seed).unwrap();
        let e = f.evaluate().unwrap();
        let all = common::witnesses(&f);
        prop_assert_eq!(e.holds, !all.is_empty());
        prop_assert_eq!(e.witness.map(|w| w.bit_string()), all.first().map(|w| bits(w)));
    }

    #[test]
    fn evaluation_ignores_term_order(seed in any::<u64>(), rot in 0usize..5) {
        let f = gen_q3dnf(2, 2, 5, seed).unwrap();
        let mut terms = f.terms().to_vec();
        terms.rotate_left(rot);
        terms.reverse();
        let g = Q3dnf::new(2, 2, terms).unwrap();
        prop_assert_eq!(f.evaluate().unwrap(), g.evaluate().unwrap());
    }

    #[test]
    fn normalization_preserves_truth(n in 1u32..4, m in 0u32..3, terms in 1usize..5, seed in any::<u64>()) {
        let f = gen_q3dnf(n, m, terms, seed).unwrap();
        let g = normalize(&f).unwrap();
        prop_assert!(g.is_monotone());
        prop_assert!(g.is_nice().unwrap().nice);
        prop_assert_eq!(g.n(), f.n());
        prop_assert_eq!(common::holds(&f), common::holds(&g));
        prop_assert_eq!(normalize(&g).unwrap(), g);
    }

    /// Every witness yields a transversal of size k, and the assignment read
    /// back off it is the same witness.
    #[test]
    fn witnesses_give_transversals(seed in any::<u64>()) {
        let f = gen_nice_monotone(3, 2, 3, 3, seed).unwrap();
        let red = Reduction::build(&f).unwrap();
        for x in common::witnesses(&f) {
            let mu = Assignment::existential(3, 2, x).unwrap();
            let t = red.transversal_from_assignment(&mu).unwrap();
            prop_assert_eq!(t.len(), red.k());
            prop_assert!(is_transversal(red.graph(), &t).unwrap().ok);
            prop_assert_eq!(red.assignment_from_transversal(&t).unwrap(), mu);
        }
    }

    /// Non-witnesses never give transversals.
    #[test]
    fn non_witnesses_fail(seed in any::<u64>()) {
        let f = gen_nice_monotone(3, 2, 3, 3, seed).unwrap();
        let red = Reduction::build(&f).unwrap();
        for rank in 0u32..8 {
            let x: Vec<bool> = (0..3).map(|i| rank >> i & 1 == 1).collect();
            let witness = common::is_witness(&f, &x);
            let t = red
                .transversal_from_assignment(&Assignment::existential(3, 2, x).unwrap())
                .unwrap();
            prop_assert_eq!(is_transversal(red.graph(), &t).unwrap().ok, witness);
        }
    }

    #[test]
    fn reduction_text_round_trip(seed in any::<u64>()) {
        let f = gen_nice_monotone(2, 2, 2, 3, seed).unwrap();
        let red = Reduction::build(&f).unwrap();
        let text = red.to_text();
        let (g, k) = Graph::parse(&text).unwrap();
        prop_assert_eq!(k, Some(red.k()));
        prop_assert_eq!(g.to_text() + &format!("k {}\n", red.k()), text);
        let back = Reduction::from_graph(&g).unwrap();
        prop_assert_eq!(back.graph(), red.graph());
        prop_assert!(g.edges().all(|(u, v)| g.side(u) != g.side(v)));
    }

    #[test]
    fn formula_text_round_trip(seed in any::<u64>()) {
        let f = gen_q3dnf(3, 2, 4, seed).unwrap();
        prop_assert_eq!(Q3dnf::parse(&f.to_text()).unwrap(), f);
    }
}
