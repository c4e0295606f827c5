//! Cross-module invariants: decision consistency on constructed witnesses,
//! the diagonal property of reversible automata, canonicity of minimization,
//! subring generation against an exhaustive oracle, and verdict invariance
//! under representation changes.

mod common;

use common::*;
use rand::prelude::*;
use revwa::io::print_dfa;
use revwa::{
    decide_reversibility, parity_support_dfa, support_dfa, syntactic_monoid,
    witness_characteristic_series, DecideOptions, Ring, RingElement, RingSpec,
    WeightedAutomaton,
};

/// Rings of size at most 8, covering every structured kind.
fn small_rings() -> Vec<Ring> {
    vec![
        Ring::zn(2).unwrap(),
        Ring::zn(4).unwrap(),
        Ring::zn(6).unwrap(),
        Ring::zn(8).unwrap(),
        gf4(),
        Ring::from_spec(&RingSpec::Gf {
            p: 2,
            k: 3,
            modulus: vec![1, 1, 0, 1],
        })
        .unwrap(),
        Ring::from_spec(&RingSpec::Product {
            factors: vec![RingSpec::zn(2), RingSpec::zn(3)],
        })
        .unwrap(),
        Ring::from_spec(&RingSpec::Product {
            factors: vec![RingSpec::zn(2), RingSpec::zn(2)],
        })
        .unwrap(),
    ]
}

/// Every automaton the witness construction produces gets a positive verdict
/// from the decision procedure.
#[test]
fn decide_accepts_every_constructed_witness() {
    let mut rng = rng(0x11);
    let alphabet = ab();
    let rings = small_rings();
    for case in 0..10 {
        let dec = random_decomposition(&mut rng, &alphabet, 3, 3);
        let target = parity_support_dfa(&dec);
        for ring in &rings {
            let wa = witness_characteristic_series(&dec, &target, ring).unwrap();
            let report = decide_reversibility(&wa, &DecideOptions::default());
            assert!(
                report.reversible,
                "case {case}, ring {}: witness rejected",
                ring.describe()
            );
        }
    }
}

/// The diagonal property behind the decision procedure: every shifted
/// support of a structurally reversible automaton has commuting idempotents.
#[test]
fn reversible_automata_have_ecom_supports_at_every_shift() {
    let mut rng = rng(0x12);
    let alphabet = ab();
    for case in 0..24 {
        let ring = &standard_rings()[case % 4];
        let wa = random_reversible_automaton(&mut rng, ring, &alphabet, 4);
        let report = decide_reversibility(&wa, &DecideOptions::default());
        assert!(report.reversible, "case {case}, ring {}", ring.describe());
        assert!(report.shifts.iter().all(|s| s.ecom));
    }
}

/// Complementary shifts over the two-element field give complementary
/// supports with one shared ECom verdict.
#[test]
fn f2_shifts_share_the_ecom_verdict() {
    let mut rng = rng(0x13);
    let f2 = Ring::f2();
    let alphabet = ab();
    for _ in 0..20 {
        let wa = random_automaton(&mut rng, &f2, &alphabet, 4);
        let plain = support_dfa(&wa, &f2.zero()).unwrap();
        let shifted = support_dfa(&wa, &f2.one()).unwrap();
        assert!(shifted.equivalent_to(&plain.complemented()).unwrap());
        // A language and its complement share a syntactic monoid, hence a
        // verdict.
        assert_eq!(
            syntactic_monoid(&plain).is_ecom(),
            syntactic_monoid(&shifted).is_ecom()
        );
    }
}

/// The same automaton with permuted state numbers.
fn renumbered(wa: &WeightedAutomaton, permutation: &[usize]) -> WeightedAutomaton {
    let relabel = |weights: &std::collections::BTreeMap<usize, RingElement>| {
        weights
            .iter()
            .map(|(&q, w)| (permutation[q], w.clone()))
            .collect::<Vec<(usize, RingElement)>>()
    };
    let transitions: Vec<(usize, String, usize, RingElement)> = wa
        .transitions()
        .iter()
        .map(|(&(from, symbol, to), weight)| {
            (
                permutation[from],
                wa.alphabet().symbol(symbol).to_owned(),
                permutation[to],
                weight.clone(),
            )
        })
        .collect();
    WeightedAutomaton::new(
        wa.ring().clone(),
        wa.alphabet().clone(),
        wa.states(),
        relabel(wa.initial_weights()),
        relabel(wa.final_weights()),
        transitions,
    )
    .unwrap()
}

/// The verdict is a property of the series, not its presentation: padding
/// with an empty automaton or renumbering states changes nothing.
#[test]
fn verdict_is_invariant_under_representation_changes() {
    let mut rng = rng(0x14);
    let alphabet = ab();
    for case in 0..12 {
        let ring = &standard_rings()[case % 4];
        let wa = random_automaton(&mut rng, ring, &alphabet, 3);
        let verdict = decide_reversibility(&wa, &DecideOptions::default()).reversible;

        let empty = WeightedAutomaton::new(
            ring.clone(),
            alphabet.clone(),
            0,
            vec![],
            vec![],
            Vec::<(usize, &str, usize, RingElement)>::new(),
        )
        .unwrap();
        let padded = wa.disjoint_union(&empty).unwrap();
        assert_eq!(
            decide_reversibility(&padded, &DecideOptions::default()).reversible,
            verdict,
            "case {case}: padding changed the verdict"
        );

        let mut permutation: Vec<usize> = (0..wa.states()).collect();
        permutation.shuffle(&mut rng);
        let shuffled = renumbered(&wa, &permutation);
        assert_eq!(
            decide_reversibility(&shuffled, &DecideOptions::default()).reversible,
            verdict,
            "case {case}: renumbering changed the verdict"
        );
    }
}

/// `generated_subring` against the exhaustive oracle: its carrier is exactly
/// the intersection of all subsets that contain 0, 1, and the generators and
/// are closed under negation, addition, and multiplication.
#[test]
fn generated_subring_matches_exhaustive_oracle() {
    let mut rng = rng(0x15);
    for ring in small_rings() {
        let elements = ring.elements();
        let size = elements.len();
        assert!(size <= 8);
        let index_of = |e: &RingElement| elements.iter().position(|x| x == e).unwrap();

        let mut generator_sets: Vec<Vec<RingElement>> = vec![vec![]];
        for _ in 0..4 {
            let count = rng.gen_range(1..=2);
            generator_sets
                .push((0..count).map(|_| elements.choose(&mut rng).unwrap().clone()).collect());
        }

        for gens in generator_sets {
            let mut required: u32 = 0;
            required |= 1 << index_of(&ring.zero());
            required |= 1 << index_of(&ring.one());
            for g in &gens {
                required |= 1 << index_of(g);
            }
            let closed = |mask: u32| -> bool {
                for a in 0..size {
                    if mask & (1 << a) == 0 {
                        continue;
                    }
                    if mask & (1 << index_of(&ring.neg(&elements[a]))) == 0 {
                        return false;
                    }
                    for b in 0..size {
                        if mask & (1 << b) == 0 {
                            continue;
                        }
                        let sum = index_of(&ring.add(&elements[a], &elements[b]));
                        let product = index_of(&ring.mul(&elements[a], &elements[b]));
                        if mask & (1 << sum) == 0 || mask & (1 << product) == 0 {
                            return false;
                        }
                    }
                }
                true
            };
            let mut intersection: u32 = (1 << size) - 1;
            for mask in 0..(1u32 << size) {
                if mask & required == required && closed(mask) {
                    intersection &= mask;
                }
            }

            let subring = ring.generated_subring(&gens).unwrap();
            let mut carrier_mask: u32 = 0;
            for e in &subring.carrier {
                carrier_mask |= 1 << index_of(e);
            }
            assert_eq!(
                carrier_mask,
                intersection,
                "ring {}, generators {gens:?}",
                ring.describe()
            );
        }
    }
}

/// Restricting shift quantification to the weight-generated subring never
/// changes the verdict, only the work.
#[test]
fn subring_restriction_preserves_the_verdict() {
    let mut rng = rng(0x16);
    let alphabet = ab();
    // Arbitrary automata over small rings. (In Z_n the identity generates
    // everything, so the restriction only truly bites where a proper
    // subring contains 1, as in GF(4) and Z_2 × Z_2.)
    let rings = [
        Ring::zn(2).unwrap(),
        gf4(),
        Ring::from_spec(&RingSpec::Product {
            factors: vec![RingSpec::zn(2), RingSpec::zn(2)],
        })
        .unwrap(),
        Ring::zn(6).unwrap(),
    ];
    for case in 0..12 {
        let ring = &rings[case % rings.len()];
        let max_states = if ring.size() > 4 { 2 } else { 3 };
        let wa = random_automaton(&mut rng, ring, &alphabet, max_states);
        let full = decide_reversibility(&wa, &DecideOptions::default());
        let restricted = decide_reversibility(
            &wa,
            &DecideOptions {
                restrict_to_weight_subring: true,
            },
        );
        assert!(restricted.shifts.len() <= full.shifts.len());
        assert_eq!(full.reversible, restricted.reversible, "case {case}");
    }

    // Weight-1 lifts over GF(8): the weights generate the prime subfield, so
    // the restricted run checks 2 of the 8 shifts and must still agree.
    let gf8 = small_rings()[5].clone();
    for case in 0..4 {
        let wa = random_reversible_member(&mut rng, &alphabet, 3).lift(&gf8);
        let full = decide_reversibility(&wa, &DecideOptions::default());
        let restricted = decide_reversibility(
            &wa,
            &DecideOptions {
                restrict_to_weight_subring: true,
            },
        );
        assert_eq!(full.shifts.len(), 8);
        assert_eq!(restricted.shifts.len(), 2);
        assert_eq!(full.reversible, restricted.reversible, "lift case {case}");
    }
}

/// Minimization is idempotent, canonical, equivalence-preserving, and never
/// grows the acceptor.
#[test]
fn minimization_is_canonical() {
    let mut rng = rng(0x17);
    let alphabet = ab();
    for _ in 0..40 {
        let dfa = random_dfa(&mut rng, &alphabet, 5);
        let minimal = dfa.minimized();
        assert!(minimal.states() <= dfa.states());
        assert!(minimal.equivalent_to(&dfa).unwrap());
        // Re-minimizing reproduces the identical canonical form, byte for
        // byte in the document encoding.
        assert_eq!(print_dfa(&minimal.minimized()), print_dfa(&minimal));
    }
}

/// In the matrix representation of a reversible automaton every symbol
/// matrix has at most one nonzero entry per row and per column.
#[test]
fn reversible_matrices_are_partial_injections() {
    let mut rng = rng(0x18);
    let alphabet = ab();
    for case in 0..20 {
        let ring = &standard_rings()[case % 4];
        let wa = random_reversible_automaton(&mut rng, ring, &alphabet, 4);
        let representation = wa.to_linear_representation();
        for matrix in &representation.matrices {
            let n = representation.dimension;
            for (row, entries) in matrix.iter().enumerate() {
                let nonzero = entries.iter().filter(|w| !ring.is_zero(w)).count();
                assert!(nonzero <= 1, "row {row} has {nonzero} nonzero entries");
            }
            for col in 0..n {
                let nonzero = matrix.iter().filter(|r| !ring.is_zero(&r[col])).count();
                assert!(nonzero <= 1, "column {col} has {nonzero} nonzero entries");
            }
        }
    }
}

/// Canonical element encodings survive a round trip in every ring, for every
/// element.
#[test]
fn element_encodings_round_trip_exhaustively() {
    let mut rings = small_rings();
    rings.push(Ring::from_spec(&table_spec_of(&Ring::zn(6).unwrap())).unwrap());
    for ring in rings {
        for element in ring.elements() {
            let encoded = ring.element_to_json(&element);
            let decoded = ring.element_from_json(&encoded).unwrap();
            assert_eq!(decoded, element, "ring {}", ring.describe());
        }
    }
}
