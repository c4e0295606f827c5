//! Shared fixtures and seeded generators for the integration suites. All
//! randomness flows through [`rng`], so a failing case replays exactly from
//! its seed.

#![allow(dead_code)]

use std::collections::BTreeMap;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use revwa::{
    Alphabet, Decomposition, Dfa, Nfa, Ring, RingElement, RingSpec, WeightedAutomaton,
};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn a_only() -> Alphabet {
    Alphabet::new(["a"]).unwrap()
}

pub fn ab() -> Alphabet {
    Alphabet::new(["a", "b"]).unwrap()
}

/// The four rings the randomized suites quantify over: Z_2, Z_6, GF(4), and
/// Z_2 × Z_3.
pub fn standard_rings() -> Vec<Ring> {
    vec![
        Ring::zn(2).unwrap(),
        Ring::zn(6).unwrap(),
        gf4(),
        Ring::from_spec(&RingSpec::Product {
            factors: vec![RingSpec::zn(2), RingSpec::zn(3)],
        })
        .unwrap(),
    ]
}

pub fn gf4() -> Ring {
    Ring::from_spec(&RingSpec::Gf {
        p: 2,
        k: 2,
        modulus: vec![1, 1, 1],
    })
    .unwrap()
}

/// Minimal acceptor of `a^+` over `{a}`.
pub fn a_plus_dfa() -> Dfa {
    Dfa::new(a_only(), 2, 0, vec![1], vec![(0, "a", 1), (1, "a", 1)]).unwrap()
}

/// Minimal acceptor of `Σ* ab Σ*` over `{a, b}`.
pub fn contains_ab_dfa() -> Dfa {
    Dfa::new(
        ab(),
        3,
        0,
        vec![2],
        vec![
            (0, "a", 1),
            (0, "b", 0),
            (1, "a", 1),
            (1, "b", 2),
            (2, "a", 2),
            (2, "b", 2),
        ],
    )
    .unwrap()
}

/// The decomposition `{{ε}, Σ*}` over `{a}`, whose odd-membership language
/// is `a^+`.
pub fn eps_sigma_decomposition() -> Decomposition {
    let eps = Nfa::new(
        a_only(),
        1,
        vec![0],
        vec![0],
        Vec::<(usize, &str, usize)>::new(),
    )
    .unwrap();
    let sigma = Nfa::new(a_only(), 1, vec![0], vec![0], vec![(0, "a", 0)]).unwrap();
    Decomposition::new(a_only(), vec![eps, sigma]).unwrap()
}

fn random_element(rng: &mut ChaCha8Rng, pool: &[RingElement]) -> RingElement {
    pool.choose(rng).unwrap().clone()
}

fn random_nonzero(rng: &mut ChaCha8Rng, ring: &Ring, pool: &[RingElement]) -> RingElement {
    loop {
        let e = random_element(rng, pool);
        if !ring.is_zero(&e) {
            return e;
        }
    }
}

/// A random weighted automaton with 1 to `max_states` states. Each possible
/// transition and boundary weight is zero with probability 1/2, uniform over
/// the ring otherwise.
pub fn random_automaton(
    rng: &mut ChaCha8Rng,
    ring: &Ring,
    alphabet: &Alphabet,
    max_states: usize,
) -> WeightedAutomaton {
    let states = rng.gen_range(1..=max_states);
    let pool = ring.elements();
    let sparse = |rng: &mut ChaCha8Rng| {
        if rng.gen_bool(0.5) {
            ring.zero()
        } else {
            random_element(rng, &pool)
        }
    };
    let initial: Vec<(usize, RingElement)> =
        (0..states).map(|q| (q, sparse(rng))).collect();
    let finals: Vec<(usize, RingElement)> = (0..states).map(|q| (q, sparse(rng))).collect();
    let mut transitions = Vec::new();
    for from in 0..states {
        for symbol in 0..alphabet.len() {
            for to in 0..states {
                transitions.push((from, alphabet.symbol(symbol).to_owned(), to, sparse(rng)));
            }
        }
    }
    WeightedAutomaton::new(
        ring.clone(),
        alphabet.clone(),
        states,
        initial,
        finals,
        transitions,
    )
    .unwrap()
}

/// A random complete deterministic acceptor with 1 to `max_states` states,
/// initial state 0, uniform transition targets, and each state final with
/// probability 1/2.
pub fn random_dfa(rng: &mut ChaCha8Rng, alphabet: &Alphabet, max_states: usize) -> Dfa {
    let states = rng.gen_range(1..=max_states);
    let mut transitions = Vec::new();
    for from in 0..states {
        for symbol in 0..alphabet.len() {
            transitions.push((
                from,
                alphabet.symbol(symbol).to_owned(),
                rng.gen_range(0..states),
            ));
        }
    }
    let finals: Vec<usize> = (0..states).filter(|_| rng.gen_bool(0.5)).collect();
    Dfa::new(alphabet.clone(), states, 0, finals, transitions).unwrap()
}

/// Per-symbol transitions forming a random partial injection: a random
/// permutation restricted to a random domain. Every injective partial map
/// arises this way, and the result is reversible by construction.
fn random_partial_injections(
    rng: &mut ChaCha8Rng,
    alphabet: &Alphabet,
    states: usize,
    keep_probability: f64,
) -> Vec<(usize, String, usize)> {
    let mut transitions = Vec::new();
    for symbol in 0..alphabet.len() {
        let mut image: Vec<usize> = (0..states).collect();
        image.shuffle(rng);
        for (from, &to) in image.iter().enumerate() {
            if rng.gen_bool(keep_probability) {
                transitions.push((from, alphabet.symbol(symbol).to_owned(), to));
            }
        }
    }
    transitions
}

/// A random reversible acceptor with exactly one initial state, suitable as
/// a decomposition member.
pub fn random_reversible_member(
    rng: &mut ChaCha8Rng,
    alphabet: &Alphabet,
    max_states: usize,
) -> Nfa {
    let states = rng.gen_range(1..=max_states);
    let transitions = random_partial_injections(rng, alphabet, states, 0.7);
    let finals: Vec<usize> = (0..states).filter(|_| rng.gen_bool(0.5)).collect();
    let initial = rng.gen_range(0..states);
    Nfa::new(alphabet.clone(), states, vec![initial], finals, transitions).unwrap()
}

/// A random decomposition with up to `max_members` reversible one-initial
/// members; occasionally empty.
pub fn random_decomposition(
    rng: &mut ChaCha8Rng,
    alphabet: &Alphabet,
    max_members: usize,
    max_states: usize,
) -> Decomposition {
    let count = rng.gen_range(0..=max_members);
    let members = (0..count)
        .map(|_| random_reversible_member(rng, alphabet, max_states))
        .collect();
    Decomposition::new(alphabet.clone(), members).unwrap()
}

/// A random reversible weighted automaton: a partial-injection shape with
/// nonzero transition weights and sparse boundary weights.
pub fn random_reversible_automaton(
    rng: &mut ChaCha8Rng,
    ring: &Ring,
    alphabet: &Alphabet,
    max_states: usize,
) -> WeightedAutomaton {
    let states = rng.gen_range(1..=max_states);
    let pool = ring.elements();
    let transitions: Vec<(usize, String, usize, RingElement)> =
        random_partial_injections(rng, alphabet, states, 0.7)
            .into_iter()
            .map(|(from, symbol, to)| (from, symbol, to, random_nonzero(rng, ring, &pool)))
            .collect();
    let boundary = |rng: &mut ChaCha8Rng| -> Vec<(usize, RingElement)> {
        (0..states)
            .map(|q| {
                (
                    q,
                    if rng.gen_bool(0.5) {
                        ring.zero()
                    } else {
                        random_element(rng, &pool)
                    },
                )
            })
            .collect()
    };
    let initial = boundary(rng);
    let finals = boundary(rng);
    WeightedAutomaton::new(
        ring.clone(),
        alphabet.clone(),
        states,
        initial,
        finals,
        transitions,
    )
    .unwrap()
}

/// Tabulates a ring into an explicit table specification, re-deriving every
/// cell from the ring's own arithmetic.
pub fn table_spec_of(ring: &Ring) -> RingSpec {
    let elements = ring.elements();
    let index: BTreeMap<&RingElement, usize> = elements
        .iter()
        .enumerate()
        .map(|(i, e)| (e, i))
        .collect();
    let cell = |value: &RingElement| index[value];
    let matrix = |op: &dyn Fn(&RingElement, &RingElement) -> RingElement| {
        elements
            .iter()
            .map(|a| elements.iter().map(|b| cell(&op(a, b))).collect())
            .collect::<Vec<Vec<usize>>>()
    };
    RingSpec::Table {
        size: elements.len(),
        add: matrix(&|a, b| ring.add(a, b)),
        mul: matrix(&|a, b| ring.mul(a, b)),
        zero: cell(&ring.zero()),
        one: cell(&ring.one()),
    }
}
