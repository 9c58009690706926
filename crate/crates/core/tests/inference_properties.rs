mod common;

use common::brute_posterior;
use pcg_core::fixtures::{self, random_network, RandomSpec};
use pcg_core::inference::PresentStates;
use pcg_core::{
    discounting_report, eliminate, normative_discounting, propagate_polytree, Cpt, Dag, Evidence, InferenceError,
    Network, Variable, VariableId,
};
use proptest::prelude::*;

// exact rational enumeration of the fixtures, rounded to f64
const F2_B: f64 = 0.01;
const F2_B_GIVEN_A: f64 = 0.579_062_145_929_021_4;
const F2_B_GIVEN_AE: f64 = 0.031_942_633_637_548_894;
const F2_B_GIVEN_AF: f64 = 0.961_182_620_653_393_9;
const F1_RAIN: f64 = 0.4;
const F1_RAIN_GIVEN_SPRINKLER: f64 = 0.25;
const F1_SPRINKLER_GIVEN_WET: f64 = 0.577_464_788_732_394_4;
const F1_SPRINKLER_GIVEN_WET_RAIN: f64 = 0.292_035_398_230_088_5;

fn ev(pairs: &[(VariableId, usize)]) -> Evidence {
    Evidence::from_pairs(pairs).unwrap()
}

#[test]
fn holmes_goldens_both_engines() {
    let f2 = fixtures::holmes();
    let (b, e, a, f) = (VariableId(0), VariableId(1), VariableId(2), VariableId(3));
    for (evidence, expected) in [
        (vec![], F2_B),
        (vec![(a, 1)], F2_B_GIVEN_A),
        (vec![(a, 1), (e, 1)], F2_B_GIVEN_AE),
        (vec![(a, 1), (f, 1)], F2_B_GIVEN_AF),
    ] {
        let ve = eliminate(&f2, b, &ev(&evidence)).unwrap().probs[1];
        let mp = propagate_polytree(&f2, &ev(&evidence)).unwrap()[b.0].probs[1];
        assert!((ve - expected).abs() < 1e-9, "{evidence:?}: {ve}");
        assert!((mp - expected).abs() < 1e-9, "{evidence:?}: {mp}");
    }
}

#[test]
fn sprinkler_goldens() {
    let f1 = fixtures::sprinkler();
    let v = |n| f1.id(n).unwrap();
    let rain = eliminate(&f1, v("RAIN"), &Evidence::new()).unwrap().probs[1];
    assert!((rain - F1_RAIN).abs() < 1e-12);
    let rain_spr = eliminate(&f1, v("RAIN"), &ev(&[(v("SPRINKLER"), 1)])).unwrap().probs[1];
    assert!((rain_spr - F1_RAIN_GIVEN_SPRINKLER).abs() < 1e-12);
    let r = discounting_report(&f1, v("SPRINKLER"), v("RAIN"), v("WET"), PresentStates::default()).unwrap();
    assert!((r.p_given_effect - F1_SPRINKLER_GIVEN_WET).abs() < 1e-12);
    assert!((r.p_given_effect_and_alt - F1_SPRINKLER_GIVEN_WET_RAIN).abs() < 1e-12);
}

fn random_evidence(net: &Network, seed: u64) -> Vec<(VariableId, usize)> {
    // deterministic sparse pattern: observe roughly a third of the nodes
    net.dag()
        .ids()
        .filter(|v| (seed >> (v.0 % 16)).is_multiple_of(3))
        .map(|v| (v, ((seed >> (v.0 + 3)) & 1) as usize))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(80))]

    #[test]
    fn elimination_matches_enumeration(seed in any::<u64>(), n in 1usize..=8, p in 0.0f64..0.7) {
        let net = random_network(seed, RandomSpec { edge_probability: p, ..RandomSpec::binary(n) });
        let evidence = random_evidence(&net, seed);
        for q in net.dag().ids().filter(|q| evidence.iter().all(|(v, _)| v != q)) {
            let ve = eliminate(&net, q, &ev(&evidence)).unwrap();
            let brute = brute_posterior(&net, q, &evidence);
            for (a, b) in ve.probs.iter().zip(&brute) {
                prop_assert!((a - b).abs() < 1e-9);
            }
            prop_assert!((ve.probs.iter().sum::<f64>() - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn message_passing_matches_elimination(seed in any::<u64>(), n in 1usize..=8, p in 0.1f64..0.9) {
        let spec = RandomSpec { edge_probability: p, polytree: true, ..RandomSpec::binary(n) };
        let net = random_network(seed, spec);
        let evidence = random_evidence(&net, seed);
        let beliefs = propagate_polytree(&net, &ev(&evidence)).unwrap();
        for q in net.dag().ids() {
            if let Some(&(_, s)) = evidence.iter().find(|(v, _)| *v == q) {
                prop_assert!((beliefs[q.0].probs[s] - 1.0).abs() < 1e-12);
                continue;
            }
            let ve = eliminate(&net, q, &ev(&evidence)).unwrap();
            for (a, b) in ve.probs.iter().zip(&beliefs[q.0].probs) {
                prop_assert!((a - b).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn normative_matches_collider_network(
        p1 in 0.0f64..=1.0, p2 in 0.0f64..=1.0,
        t in proptest::array::uniform4(0.0f64..=1.0),
    ) {
        let Ok((given_e, given_e_c2)) = normative_discounting(p1, p2, t) else {
            return Ok(());
        };
        let (a, b) = collider_posteriors(p1, p2, t).unwrap();
        prop_assert!((given_e - a).abs() < 1e-9);
        prop_assert!((given_e_c2 - b).abs() < 1e-9);
    }
}

/// Builds C1 -> E <- C2 and asks the elimination engine.
fn collider_posteriors(p1: f64, p2: f64, t: [f64; 4]) -> Result<(f64, f64), InferenceError> {
    let dag = Dag::new(&["C1", "C2", "E"], &[("C1", "E"), ("C2", "E")]).unwrap();
    let vars = vec![Variable::binary("C1"), Variable::binary("C2"), Variable::binary("E")];
    let [t11, t10, t01, t00] = t;
    // rows ordered (c1, c2) = ff, ft, tf, tt
    let rows = [t00, t01, t10, t11].iter().map(|&p| vec![1.0 - p, p]).collect();
    let cpts = vec![
        Cpt::new(VariableId(0), vec![], vec![vec![1.0 - p1, p1]]),
        Cpt::new(VariableId(1), vec![], vec![vec![1.0 - p2, p2]]),
        Cpt::new(VariableId(2), vec![VariableId(0), VariableId(1)], rows),
    ];
    let net = Network::new(dag, vars, cpts).unwrap();
    let a = eliminate(&net, VariableId(0), &ev(&[(VariableId(2), 1)]))?.probs[1];
    let b = eliminate(&net, VariableId(0), &ev(&[(VariableId(2), 1), (VariableId(1), 1)]))?.probs[1];
    Ok((a, b))
}

#[test]
fn normative_worked_example() {
    let (a, b) = normative_discounting(0.5, 0.5, [0.9, 0.9, 0.9, 0.1]).unwrap();
    let (na, nb) = collider_posteriors(0.5, 0.5, [0.9, 0.9, 0.9, 0.1]).unwrap();
    assert!((a - na).abs() < 1e-12 && (b - nb).abs() < 1e-12);
    // 0.45 / 0.7 and 0.45 / 0.9
    assert!((a - 0.642_857_142_857_142_9).abs() < 1e-12);
    assert!((b - 0.5).abs() < 1e-12);
}

#[test]
fn impossible_evidence_threshold() {
    // P(A=1) = 1e-13 is below the threshold, 1e-11 is above it
    for (p, impossible) in [(1e-13, true), (1e-11, false)] {
        let dag = Dag::new(&["A", "B"], &[("A", "B")]).unwrap();
        let net = Network::new(
            dag,
            vec![Variable::binary("A"), Variable::binary("B")],
            vec![
                Cpt::new(VariableId(0), vec![], vec![vec![1.0 - p, p]]),
                Cpt::new(VariableId(1), vec![VariableId(0)], vec![vec![0.5, 0.5], vec![0.5, 0.5]]),
            ],
        )
        .unwrap();
        let res = eliminate(&net, VariableId(1), &ev(&[(VariableId(0), 1)]));
        assert_eq!(matches!(res, Err(InferenceError::ImpossibleEvidence(_))), impossible);
        let res = propagate_polytree(&net, &ev(&[(VariableId(0), 1)]));
        assert_eq!(matches!(res, Err(InferenceError::ImpossibleEvidence(_))), impossible);
    }
}
