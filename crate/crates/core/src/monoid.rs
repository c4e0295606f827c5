//! Transition monoids of complete deterministic acceptors, and the
//! monoid-level properties driving the reversibility decisions.
//!
//! The transition monoid of a complete acceptor is the set of state
//! transformations induced by words, closed under composition. Taking the
//! acceptor minimal first makes it the syntactic monoid of the language. The
//! properties of interest here:
//!
//! * **idempotents commute** — membership of the language's monoid in the
//!   variety ECom, which characterizes acceptance by a reversible automaton
//!   (any number of initial and final states);
//! * **omega powers commute** — an equivalent phrasing, since the omega power
//!   of an element is idempotent and every idempotent is its own omega power;
//! * **`x^omega <= 1` in the syntactic order** — together with ECom this
//!   characterizes acceptance by a reversible automaton with a single initial
//!   and a single final state: deleting an idempotent factor from an accepted
//!   word must keep it accepted.
//!
//! Every element carries its shortest witness word (ties broken
//! lexicographically), so failures surface as concrete words.

use std::collections::HashMap;

use crate::alphabet::{Alphabet, Word};
use crate::lang::Dfa;

/// A total function on `0..n` states, the action of a word on an acceptor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transformation(Vec<usize>);

impl Transformation {
    pub fn identity(n: usize) -> Self {
        Transformation((0..n).collect())
    }

    pub fn apply(&self, state: usize) -> usize {
        self.0[state]
    }

    pub fn domain_size(&self) -> usize {
        self.0.len()
    }

    /// Composition in reading order: first `self`, then `other`.
    pub fn then(&self, other: &Transformation) -> Transformation {
        Transformation(self.0.iter().map(|q| other.0[*q]).collect())
    }

    pub fn is_idempotent(&self) -> bool {
        self.then(self) == *self
    }

    pub fn table(&self) -> &[usize] {
        &self.0
    }
}

/// Two elements whose idempotent (omega) powers fail to commute, named by
/// witness words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EcomViolation {
    pub first: Word,
    pub second: Word,
}

/// A counterexample to `x^omega <= 1`: `prefix · continuation` is accepted
/// only when the idempotent word is inserted between them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaLeqViolation {
    pub prefix: Word,
    pub idempotent: Word,
    pub continuation: Word,
}

/// The omega power of an element: its unique idempotent power.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OmegaPower {
    /// Smallest `k >= 1` with the `k`-th power idempotent.
    pub exponent: u64,
    /// Index of the idempotent power in the monoid.
    pub element: usize,
}

/// The transition monoid of a complete deterministic acceptor.
///
/// Elements are numbered in breadth-first discovery order from the identity,
/// which orders their witness words by length and then lexicographically;
/// element `0` is the identity with witness the empty word.
#[derive(Debug, Clone)]
pub struct TransitionMonoid {
    alphabet: Alphabet,
    elements: Vec<Transformation>,
    witnesses: Vec<Word>,
    index: HashMap<Transformation, usize>,
    /// Element index of each alphabet symbol's transformation.
    generators: Vec<usize>,
}

impl TransitionMonoid {
    /// Closes the symbol transformations of `dfa` under composition.
    pub fn of(dfa: &Dfa) -> TransitionMonoid {
        let alphabet = dfa.alphabet().clone();
        let symbol_actions: Vec<Transformation> = (0..alphabet.len())
            .map(|a| Transformation((0..dfa.states()).map(|q| dfa.step(q, a)).collect()))
            .collect();

        let mut elements = vec![Transformation::identity(dfa.states())];
        let mut witnesses = vec![Word::empty()];
        let mut index = HashMap::new();
        index.insert(elements[0].clone(), 0);
        let mut cursor = 0;
        while cursor < elements.len() {
            for (a, action) in symbol_actions.iter().enumerate() {
                let composed = elements[cursor].then(action);
                if !index.contains_key(&composed) {
                    let mut witness = witnesses[cursor].clone();
                    witness.push(a);
                    index.insert(composed.clone(), elements.len());
                    elements.push(composed);
                    witnesses.push(witness);
                }
            }
            cursor += 1;
        }
        let generators = symbol_actions.iter().map(|t| index[t]).collect();
        TransitionMonoid {
            alphabet,
            elements,
            witnesses,
            index,
            generators,
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn elements(&self) -> &[Transformation] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Transformation {
        &self.elements[i]
    }

    /// The shortest word (ties lexicographic) inducing element `i`.
    pub fn witness(&self, i: usize) -> &Word {
        &self.witnesses[i]
    }

    pub fn index_of(&self, t: &Transformation) -> Option<usize> {
        self.index.get(t).copied()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn generator(&self, symbol: usize) -> usize {
        self.generators[symbol]
    }

    /// Index of the composition of elements `i` and `j`, in that order.
    pub fn compose(&self, i: usize, j: usize) -> usize {
        self.index[&self.elements[i].then(&self.elements[j])]
    }

    /// The element induced by a word.
    pub fn element_of_word(&self, word: &Word) -> usize {
        word.ids()
            .iter()
            .fold(self.identity(), |acc, &a| self.compose(acc, self.generators[a]))
    }

    /// Indices of the idempotent elements, ascending.
    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|i| self.elements[*i].is_idempotent())
            .collect()
    }

    /// The unique idempotent power of element `i`, found by iterating powers;
    /// it appears within `len()` steps because the cyclic subsemigroup is
    /// finite.
    pub fn omega(&self, i: usize) -> OmegaPower {
        let mut power = i;
        let mut exponent = 1;
        loop {
            if self.elements[power].is_idempotent() {
                return OmegaPower {
                    exponent,
                    element: power,
                };
            }
            assert!(
                (exponent as usize) <= self.len(),
                "a power must become idempotent within the monoid order"
            );
            power = self.compose(power, i);
            exponent += 1;
        }
    }

    /// Checks that all idempotents commute, reporting the witness words of a
    /// non-commuting pair otherwise.
    pub fn idempotents_commute(&self) -> Result<(), EcomViolation> {
        let idempotents = self.idempotents();
        for &e in &idempotents {
            for &f in &idempotents {
                if self.compose(e, f) != self.compose(f, e) {
                    return Err(EcomViolation {
                        first: self.witnesses[e].clone(),
                        second: self.witnesses[f].clone(),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn is_ecom(&self) -> bool {
        self.idempotents_commute().is_ok()
    }

    /// Checks that `x^omega` and `y^omega` commute for all element pairs;
    /// equivalent to [`TransitionMonoid::idempotents_commute`] because the
    /// omega powers are exactly the idempotents.
    pub fn omega_powers_commute(&self) -> Result<(), EcomViolation> {
        for x in 0..self.len() {
            let e = self.omega(x).element;
            for y in 0..self.len() {
                let f = self.omega(y).element;
                if self.compose(e, f) != self.compose(f, e) {
                    return Err(EcomViolation {
                        first: self.witnesses[e].clone(),
                        second: self.witnesses[f].clone(),
                    });
                }
            }
        }
        Ok(())
    }
}

/// The syntactic monoid of the language of `dfa`: the transition monoid of
/// its minimal complete acceptor.
pub fn syntactic_monoid(dfa: &Dfa) -> TransitionMonoid {
    TransitionMonoid::of(&dfa.minimized())
}

/// Checks `x^omega <= 1` in the syntactic order for every `x`: inserting an
/// idempotent factor into a rejected word may not make it accepted — put
/// contrapositively, whenever `u · e · v` is accepted with `e` idempotent,
/// `u · v` must be accepted too.
///
/// A violation names the shortest such `u`, `e`, `v` found over the minimal
/// acceptor.
pub fn check_omega_leq_one(dfa: &Dfa) -> Result<(), OmegaLeqViolation> {
    let minimal = dfa.minimized();
    let monoid = TransitionMonoid::of(&minimal);
    check_omega_leq_one_on(&minimal, &monoid)
}

/// As [`check_omega_leq_one`], for a caller that already minimized the
/// acceptor and built its transition monoid.
pub fn check_omega_leq_one_on(
    minimal: &Dfa,
    monoid: &TransitionMonoid,
) -> Result<(), OmegaLeqViolation> {
    // Shortest word to each state of the minimal acceptor; all are reachable.
    let mut prefix: Vec<Option<Word>> = vec![None; minimal.states()];
    prefix[minimal.initial_state()] = Some(Word::empty());
    let mut queue = std::collections::VecDeque::from([minimal.initial_state()]);
    while let Some(q) = queue.pop_front() {
        for a in 0..minimal.alphabet().len() {
            let next = minimal.step(q, a);
            if prefix[next].is_none() {
                let mut word = prefix[q].clone().expect("dequeued state has a prefix");
                word.push(a);
                prefix[next] = Some(word);
                queue.push_back(next);
            }
        }
    }
    for &e in &monoid.idempotents() {
        let action = monoid.element(e);
        for (q, pre) in prefix.iter().enumerate() {
            for s in 0..monoid.len() {
                let tail = monoid.element(s);
                let with = minimal.is_final(tail.apply(action.apply(q)));
                let without = minimal.is_final(tail.apply(q));
                if with && !without {
                    return Err(OmegaLeqViolation {
                        prefix: pre.clone().expect("all states are reachable"),
                        idempotent: monoid.witness(e).clone(),
                        continuation: monoid.witness(s).clone(),
                    });
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::lang::Nfa;

    fn ab() -> Alphabet {
        Alphabet::new(["a", "b"]).unwrap()
    }

    fn word(alphabet: &Alphabet, s: &str) -> Word {
        let symbols: Vec<String> = s.chars().map(String::from).collect();
        alphabet.word(&symbols).unwrap()
    }

    /// Minimal complete acceptor of words containing the factor `ab`.
    fn contains_ab_dfa() -> Dfa {
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

    /// Minimal complete acceptor of `a^+` over the single letter `a`.
    fn a_plus_dfa() -> Dfa {
        let a = Alphabet::new(["a"]).unwrap();
        Dfa::new(a, 2, 0, vec![1], vec![(0, "a", 1), (1, "a", 1)]).unwrap()
    }

    /// Minimal complete acceptor of `(aa)*` over the single letter `a`.
    fn even_a_star_dfa() -> Dfa {
        let a = Alphabet::new(["a"]).unwrap();
        Dfa::new(a, 2, 0, vec![0], vec![(0, "a", 1), (1, "a", 0)]).unwrap()
    }

    #[test]
    fn contains_ab_monoid_has_five_elements() {
        // By hand from the three-state acceptor: the identity, the actions of
        // a = [1,1,2], b = [0,2,2], ab = [2,2,2], ba = [1,2,2], and nothing
        // else since aa = a, bb = b, and every product with the sink action
        // is the sink action.
        let monoid = syntactic_monoid(&contains_ab_dfa());
        assert_eq!(monoid.len(), 5);
        let witnesses: Vec<String> = (0..monoid.len())
            .map(|i| {
                monoid
                    .alphabet()
                    .decode(monoid.witness(i))
                    .join("")
            })
            .collect();
        assert_eq!(witnesses, vec!["", "a", "b", "ab", "ba"]);
        let tables: Vec<&[usize]> = (0..monoid.len()).map(|i| monoid.element(i).table()).collect();
        assert!(tables.contains(&[0usize, 1, 2].as_slice()));
        assert!(tables.contains(&[1usize, 1, 2].as_slice()));
        assert!(tables.contains(&[0usize, 2, 2].as_slice()));
        assert!(tables.contains(&[2usize, 2, 2].as_slice()));
        assert!(tables.contains(&[1usize, 2, 2].as_slice()));
    }

    #[test]
    fn contains_ab_is_not_ecom() {
        let monoid = syntactic_monoid(&contains_ab_dfa());
        // Idempotents: identity, a, b, and the sink ab; a and b do not
        // commute since ab reaches the sink and ba does not.
        assert_eq!(monoid.idempotents().len(), 4);
        let violation = monoid.idempotents_commute().unwrap_err();
        let alphabet = monoid.alphabet().clone();
        let pair = (
            alphabet.decode(&violation.first).join(""),
            alphabet.decode(&violation.second).join(""),
        );
        assert_eq!(pair, ("a".to_string(), "b".to_string()));
        assert!(!monoid.is_ecom());
    }

    #[test]
    fn omega_powers_and_idempotents_agree_on_fixtures() {
        for dfa in [contains_ab_dfa(), a_plus_dfa(), even_a_star_dfa()] {
            let monoid = syntactic_monoid(&dfa);
            assert_eq!(
                monoid.idempotents_commute().is_ok(),
                monoid.omega_powers_commute().is_ok()
            );
        }
    }

    #[test]
    fn omega_power_of_a_two_cycle_is_the_identity() {
        let monoid = syntactic_monoid(&even_a_star_dfa());
        assert_eq!(monoid.len(), 2);
        let a = monoid.generator(0);
        let omega = monoid.omega(a);
        assert_eq!(omega.element, monoid.identity());
        assert_eq!(omega.exponent, 2);
    }

    #[test]
    fn omega_power_in_contains_ab() {
        let monoid = syntactic_monoid(&contains_ab_dfa());
        let ab_word = word(monoid.alphabet(), "ba");
        let ba = monoid.element_of_word(&ab_word);
        assert!(!monoid.element(ba).is_idempotent());
        // (ba)(ba) = b(ab)a acts like the sink, which is idempotent.
        let omega = monoid.omega(ba);
        assert_eq!(omega.exponent, 2);
        assert!(monoid.element(omega.element).is_idempotent());
    }

    #[test]
    fn a_plus_is_ecom_but_fails_omega_leq_one() {
        let dfa = a_plus_dfa();
        let monoid = syntactic_monoid(&dfa);
        assert_eq!(monoid.len(), 2);
        assert!(monoid.is_ecom());
        let violation = check_omega_leq_one(&dfa).unwrap_err();
        // Inserting `a` into the rejected empty word yields the accepted
        // word `a`: prefix and continuation are empty, the idempotent is `a`.
        assert!(violation.prefix.is_empty());
        assert!(violation.continuation.is_empty());
        assert_eq!(
            dfa.alphabet().decode(&violation.idempotent).join(""),
            "a"
        );
    }

    #[test]
    fn even_length_a_star_satisfies_omega_leq_one() {
        // The only idempotent of the two-element group is the identity, so
        // the condition holds vacuously.
        let dfa = even_a_star_dfa();
        assert!(syntactic_monoid(&dfa).is_ecom());
        assert!(check_omega_leq_one(&dfa).is_ok());
    }

    #[test]
    fn full_language_has_trivial_monoid() {
        let sigma_star = Nfa::new(
            ab(),
            1,
            vec![0],
            vec![0],
            vec![(0, "a", 0), (0, "b", 0)],
        )
        .unwrap()
        .determinize();
        let monoid = syntactic_monoid(&sigma_star);
        assert_eq!(monoid.len(), 1);
        assert!(monoid.is_ecom());
        assert!(check_omega_leq_one(&sigma_star).is_ok());
    }

    #[test]
    fn witnesses_are_shortest_then_lexicographic() {
        let monoid = syntactic_monoid(&contains_ab_dfa());
        for i in 0..monoid.len() {
            let w = monoid.witness(i);
            assert_eq!(monoid.element_of_word(w), i);
            for earlier in monoid.alphabet().words_up_to(w.len()) {
                if earlier == *w {
                    break;
                }
                assert_ne!(
                    monoid.element_of_word(&earlier),
                    i,
                    "witness {w:?} is not minimal"
                );
            }
        }
    }
}
