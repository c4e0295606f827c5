//! Unweighted automata: nondeterministic acceptors, complete deterministic
//! acceptors, and the support construction for weighted automata.
//!
//! [`Nfa`] is the input shape for language decompositions and the output shape
//! for reversible witnesses; [`Dfa`] (always complete, single initial state)
//! is what the monoid computations consume. [`support_dfa`] builds, from a
//! weighted automaton and a shift, the complete deterministic acceptor of the
//! words whose shifted coefficient is nonzero — the reachable row vectors of
//! the linear representation serve as its states.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::alphabet::{Alphabet, Word};
use crate::error::{Error, Result};
use crate::ring::{Ring, RingElement};
use crate::wfa::{ReversibilityViolation, WeightedAutomaton};

/// A nondeterministic finite acceptor with any number of initial and final
/// states.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nfa {
    alphabet: Alphabet,
    states: usize,
    initial: BTreeSet<usize>,
    finals: BTreeSet<usize>,
    transitions: BTreeSet<(usize, usize, usize)>,
}

impl Nfa {
    pub fn new<S: AsRef<str>>(
        alphabet: Alphabet,
        states: usize,
        initial: Vec<usize>,
        finals: Vec<usize>,
        transitions: Vec<(usize, S, usize)>,
    ) -> Result<Self> {
        let check_state = |q: usize| -> Result<()> {
            if q >= states {
                Err(Error::StateOutOfRange { index: q, states })
            } else {
                Ok(())
            }
        };
        let mut initial_set = BTreeSet::new();
        for q in initial {
            check_state(q)?;
            if !initial_set.insert(q) {
                return Err(Error::DuplicateWeight {
                    which: "initial",
                    state: q,
                });
            }
        }
        let mut final_set = BTreeSet::new();
        for q in finals {
            check_state(q)?;
            if !final_set.insert(q) {
                return Err(Error::DuplicateWeight {
                    which: "final",
                    state: q,
                });
            }
        }
        let mut transition_set = BTreeSet::new();
        for (p, sym, q) in transitions {
            check_state(p)?;
            check_state(q)?;
            let sym = sym.as_ref();
            let a = alphabet
                .index_of(sym)
                .ok_or_else(|| Error::UnknownSymbol(sym.to_string()))?;
            if !transition_set.insert((p, a, q)) {
                return Err(Error::DuplicateTransition {
                    from: p,
                    symbol: sym.to_string(),
                    to: q,
                });
            }
        }
        Ok(Nfa {
            alphabet,
            states,
            initial: initial_set,
            finals: final_set,
            transitions: transition_set,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn states(&self) -> usize {
        self.states
    }

    pub fn initial_states(&self) -> &BTreeSet<usize> {
        &self.initial
    }

    pub fn final_states(&self) -> &BTreeSet<usize> {
        &self.finals
    }

    pub fn transitions(&self) -> &BTreeSet<(usize, usize, usize)> {
        &self.transitions
    }

    /// Membership by the standard subset walk.
    pub fn accepts(&self, word: &Word) -> bool {
        let mut current = self.initial.clone();
        for &a in word.ids() {
            let mut next = BTreeSet::new();
            for &(p, b, q) in &self.transitions {
                if b == a && current.contains(&p) {
                    next.insert(q);
                }
            }
            current = next;
        }
        current.iter().any(|q| self.finals.contains(q))
    }

    /// Checks that every state has at most one successor and at most one
    /// predecessor per symbol. Initial and final states are unrestricted.
    pub fn check_reversible(&self) -> std::result::Result<(), ReversibilityViolation> {
        let mut forward: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        let mut backward: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for &(p, a, q) in &self.transitions {
            forward.entry((p, a)).or_default().push(q);
            backward.entry((q, a)).or_default().push(p);
        }
        for ((p, a), targets) in &forward {
            if targets.len() > 1 {
                return Err(ReversibilityViolation::Forward {
                    state: *p,
                    symbol: self.alphabet.symbol(*a).to_string(),
                    targets: targets.clone(),
                });
            }
        }
        for ((q, a), sources) in &backward {
            if sources.len() > 1 {
                return Err(ReversibilityViolation::Backward {
                    state: *q,
                    symbol: self.alphabet.symbol(*a).to_string(),
                    sources: sources.clone(),
                });
            }
        }
        Ok(())
    }

    pub fn is_reversible(&self) -> bool {
        self.check_reversible().is_ok()
    }

    /// The weighted automaton with the same shape and every listed weight
    /// equal to one. For an unambiguous acceptor its series is the
    /// characteristic series of the language over any ring.
    pub fn lift(&self, ring: &Ring) -> WeightedAutomaton {
        let one = ring.one();
        let weighted = |qs: &BTreeSet<usize>| {
            qs.iter().map(|q| (*q, one.clone())).collect::<Vec<_>>()
        };
        let transitions: Vec<(usize, String, usize, RingElement)> = self
            .transitions
            .iter()
            .map(|&(p, a, q)| (p, self.alphabet.symbol(a).to_string(), q, one.clone()))
            .collect();
        WeightedAutomaton::new(
            ring.clone(),
            self.alphabet.clone(),
            self.states,
            weighted(&self.initial),
            weighted(&self.finals),
            transitions,
        )
        .expect("lift of a valid acceptor is valid")
    }

    /// The complete subset-construction determinization. States are reachable
    /// subsets numbered in breadth-first discovery order; the empty subset, if
    /// reached, acts as the rejecting sink.
    pub fn determinize(&self) -> Dfa {
        let mut ids: BTreeMap<BTreeSet<usize>, usize> = BTreeMap::new();
        let mut subsets: Vec<BTreeSet<usize>> = Vec::new();
        let mut delta: Vec<Vec<usize>> = Vec::new();
        let mut queue = VecDeque::new();
        ids.insert(self.initial.clone(), 0);
        subsets.push(self.initial.clone());
        queue.push_back(0);
        while let Some(id) = queue.pop_front() {
            let current = subsets[id].clone();
            let mut row = Vec::with_capacity(self.alphabet.len());
            for a in 0..self.alphabet.len() {
                let mut next = BTreeSet::new();
                for &(p, b, q) in &self.transitions {
                    if b == a && current.contains(&p) {
                        next.insert(q);
                    }
                }
                let next_id = *ids.entry(next.clone()).or_insert_with(|| {
                    let fresh = subsets.len();
                    subsets.push(next);
                    queue.push_back(fresh);
                    fresh
                });
                row.push(next_id);
            }
            delta.push(row);
        }
        let finals = subsets
            .iter()
            .enumerate()
            .filter(|(_, set)| set.iter().any(|q| self.finals.contains(q)))
            .map(|(id, _)| id)
            .collect();
        Dfa {
            alphabet: self.alphabet.clone(),
            states: subsets.len(),
            initial: 0,
            finals,
            delta,
        }
    }

    /// The product acceptor for the intersection, restricted to reachable
    /// pairs. Preserves reversibility, and a single initial state when both
    /// operands have one.
    pub fn intersect(&self, other: &Nfa) -> Result<Nfa> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        let mut ids: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        let mut queue = VecDeque::new();
        for &p in &self.initial {
            for &q in &other.initial {
                ids.entry((p, q)).or_insert_with(|| {
                    pairs.push((p, q));
                    queue.push_back((p, q));
                    pairs.len() - 1
                });
            }
        }
        let mut transitions: Vec<(usize, String, usize)> = Vec::new();
        while let Some((p, q)) = queue.pop_front() {
            let from = ids[&(p, q)];
            for a in 0..self.alphabet.len() {
                for &(p1, b1, p2) in &self.transitions {
                    if b1 != a || p1 != p {
                        continue;
                    }
                    for &(q1, b2, q2) in &other.transitions {
                        if b2 != a || q1 != q {
                            continue;
                        }
                        let to = *ids.entry((p2, q2)).or_insert_with(|| {
                            pairs.push((p2, q2));
                            queue.push_back((p2, q2));
                            pairs.len() - 1
                        });
                        transitions.push((from, self.alphabet.symbol(a).to_string(), to));
                    }
                }
            }
        }
        let initial: Vec<usize> = pairs
            .iter()
            .enumerate()
            .filter(|(_, (p, q))| self.initial.contains(p) && other.initial.contains(q))
            .map(|(id, _)| id)
            .collect();
        let finals: Vec<usize> = pairs
            .iter()
            .enumerate()
            .filter(|(_, (p, q))| self.finals.contains(p) && other.finals.contains(q))
            .map(|(id, _)| id)
            .collect();
        Nfa::new(
            self.alphabet.clone(),
            pairs.len(),
            initial,
            finals,
            transitions,
        )
    }
}

/// How to combine the languages of two acceptors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoolOp {
    Union,
    Intersection,
    Difference,
    SymmetricDifference,
}

impl BoolOp {
    fn apply(self, a: bool, b: bool) -> bool {
        match self {
            BoolOp::Union => a || b,
            BoolOp::Intersection => a && b,
            BoolOp::Difference => a && !b,
            BoolOp::SymmetricDifference => a != b,
        }
    }
}

/// A complete deterministic finite acceptor: exactly one initial state and a
/// total transition function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Alphabet,
    states: usize,
    initial: usize,
    finals: BTreeSet<usize>,
    /// `delta[state][symbol id]`, total.
    delta: Vec<Vec<usize>>,
}

impl Dfa {
    /// Validates that the listed transitions form a total deterministic
    /// function on `0..states`.
    pub fn new<S: AsRef<str>>(
        alphabet: Alphabet,
        states: usize,
        initial: usize,
        finals: Vec<usize>,
        transitions: Vec<(usize, S, usize)>,
    ) -> Result<Self> {
        let check_state = |q: usize| -> Result<()> {
            if q >= states {
                Err(Error::StateOutOfRange { index: q, states })
            } else {
                Ok(())
            }
        };
        check_state(initial)?;
        let mut final_set = BTreeSet::new();
        for q in finals {
            check_state(q)?;
            if !final_set.insert(q) {
                return Err(Error::DuplicateWeight {
                    which: "final",
                    state: q,
                });
            }
        }
        let mut delta = vec![vec![usize::MAX; alphabet.len()]; states];
        for (p, sym, q) in transitions {
            check_state(p)?;
            check_state(q)?;
            let sym = sym.as_ref();
            let a = alphabet
                .index_of(sym)
                .ok_or_else(|| Error::UnknownSymbol(sym.to_string()))?;
            if delta[p][a] != usize::MAX {
                return Err(Error::NondeterministicDfa {
                    state: p,
                    symbol: sym.to_string(),
                });
            }
            delta[p][a] = q;
        }
        for (p, row) in delta.iter().enumerate() {
            for (a, q) in row.iter().enumerate() {
                if *q == usize::MAX {
                    return Err(Error::IncompleteDfa {
                        state: p,
                        symbol: alphabet.symbol(a).to_string(),
                    });
                }
            }
        }
        Ok(Dfa {
            alphabet,
            states,
            initial,
            finals: final_set,
            delta,
        })
    }

    fn from_parts(
        alphabet: Alphabet,
        initial: usize,
        finals: BTreeSet<usize>,
        delta: Vec<Vec<usize>>,
    ) -> Self {
        Dfa {
            alphabet,
            states: delta.len(),
            initial,
            finals,
            delta,
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn states(&self) -> usize {
        self.states
    }

    pub fn initial_state(&self) -> usize {
        self.initial
    }

    pub fn final_states(&self) -> &BTreeSet<usize> {
        &self.finals
    }

    pub fn is_final(&self, q: usize) -> bool {
        self.finals.contains(&q)
    }

    pub fn step(&self, state: usize, symbol: usize) -> usize {
        self.delta[state][symbol]
    }

    pub fn run(&self, from: usize, word: &Word) -> usize {
        word.ids().iter().fold(from, |q, &a| self.delta[q][a])
    }

    pub fn accepts(&self, word: &Word) -> bool {
        self.finals.contains(&self.run(self.initial, word))
    }

    /// The acceptor of the complement language; completeness makes this a
    /// matter of flipping final states.
    pub fn complemented(&self) -> Dfa {
        let finals = (0..self.states)
            .filter(|q| !self.finals.contains(q))
            .collect();
        Dfa::from_parts(
            self.alphabet.clone(),
            self.initial,
            finals,
            self.delta.clone(),
        )
    }

    /// The product acceptor over reachable state pairs, with finality decided
    /// by `op`.
    pub fn combine(&self, other: &Dfa, op: BoolOp) -> Result<Dfa> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        let mut ids: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        let mut pairs = vec![(self.initial, other.initial)];
        ids.insert((self.initial, other.initial), 0);
        let mut delta: Vec<Vec<usize>> = Vec::new();
        let mut cursor = 0;
        while cursor < pairs.len() {
            let (p, q) = pairs[cursor];
            let row = (0..self.alphabet.len())
                .map(|a| {
                    let next = (self.delta[p][a], other.delta[q][a]);
                    *ids.entry(next).or_insert_with(|| {
                        pairs.push(next);
                        pairs.len() - 1
                    })
                })
                .collect();
            delta.push(row);
            cursor += 1;
        }
        let finals = pairs
            .iter()
            .enumerate()
            .filter(|(_, (p, q))| op.apply(self.finals.contains(p), other.finals.contains(q)))
            .map(|(id, _)| id)
            .collect();
        Ok(Dfa::from_parts(self.alphabet.clone(), 0, finals, delta))
    }

    pub fn union(&self, other: &Dfa) -> Result<Dfa> {
        self.combine(other, BoolOp::Union)
    }

    pub fn intersection(&self, other: &Dfa) -> Result<Dfa> {
        self.combine(other, BoolOp::Intersection)
    }

    pub fn difference(&self, other: &Dfa) -> Result<Dfa> {
        self.combine(other, BoolOp::Difference)
    }

    pub fn symmetric_difference(&self, other: &Dfa) -> Result<Dfa> {
        self.combine(other, BoolOp::SymmetricDifference)
    }

    /// Language equality by breadth-first search over state pairs.
    pub fn equivalent_to(&self, other: &Dfa) -> Result<bool> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::new();
        queue.push_back((self.initial, other.initial));
        seen.insert((self.initial, other.initial));
        while let Some((p, q)) = queue.pop_front() {
            if self.finals.contains(&p) != other.finals.contains(&q) {
                return Ok(false);
            }
            for a in 0..self.alphabet.len() {
                let next = (self.delta[p][a], other.delta[q][a]);
                if seen.insert(next) {
                    queue.push_back(next);
                }
            }
        }
        Ok(true)
    }

    /// The minimal complete acceptor of the same language, by reachability
    /// trimming and Moore partition refinement, with states renumbered in
    /// breadth-first order from the initial state.
    pub fn minimized(&self) -> Dfa {
        // Restrict to reachable states.
        let mut order = vec![self.initial];
        let mut seen: BTreeSet<usize> = order.iter().copied().collect();
        let mut cursor = 0;
        while cursor < order.len() {
            let p = order[cursor];
            for a in 0..self.alphabet.len() {
                let q = self.delta[p][a];
                if seen.insert(q) {
                    order.push(q);
                }
            }
            cursor += 1;
        }
        let compact: BTreeMap<usize, usize> =
            order.iter().enumerate().map(|(i, q)| (*q, i)).collect();
        let delta: Vec<Vec<usize>> = order
            .iter()
            .map(|p| {
                (0..self.alphabet.len())
                    .map(|a| compact[&self.delta[*p][a]])
                    .collect()
            })
            .collect();
        let finals: Vec<bool> = order.iter().map(|q| self.finals.contains(q)).collect();
        let states = order.len();

        // Moore refinement: split blocks by finality, then repeatedly by the
        // blocks of the successors.
        let mut block: Vec<usize> = finals.iter().map(|f| usize::from(*f)).collect();
        let mut block_count = block.iter().max().map_or(1, |m| m + 1);
        loop {
            let mut signatures: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
            let mut next_block = vec![0; states];
            for q in 0..states {
                let mut sig = Vec::with_capacity(self.alphabet.len() + 1);
                sig.push(block[q]);
                for a in 0..self.alphabet.len() {
                    sig.push(block[delta[q][a]]);
                }
                let fresh = signatures.len();
                next_block[q] = *signatures.entry(sig).or_insert(fresh);
            }
            let next_count = signatures.len();
            block = next_block;
            if next_count == block_count {
                break;
            }
            block_count = next_count;
        }

        // Quotient, then renumber blocks in breadth-first discovery order so
        // equal languages yield identical acceptors.
        let mut rename: BTreeMap<usize, usize> = BTreeMap::new();
        let mut block_order = vec![block[compact[&self.initial]]];
        rename.insert(block_order[0], 0);
        let representative = |b: usize, block: &[usize]| {
            (0..states).find(|q| block[*q] == b).expect("block is nonempty")
        };
        let mut cursor = 0;
        while cursor < block_order.len() {
            let b = block_order[cursor];
            let q = representative(b, &block);
            for a in 0..self.alphabet.len() {
                let tb = block[delta[q][a]];
                if let Entry::Vacant(slot) = rename.entry(tb) {
                    slot.insert(block_order.len());
                    block_order.push(tb);
                }
            }
            cursor += 1;
        }
        let new_delta: Vec<Vec<usize>> = block_order
            .iter()
            .map(|b| {
                let q = representative(*b, &block);
                (0..self.alphabet.len())
                    .map(|a| rename[&block[delta[q][a]]])
                    .collect()
            })
            .collect();
        let new_finals: BTreeSet<usize> = block_order
            .iter()
            .enumerate()
            .filter(|(_, b)| finals[representative(**b, &block)])
            .map(|(i, _)| i)
            .collect();
        Dfa::from_parts(self.alphabet.clone(), 0, new_finals, new_delta)
    }
}

/// The complete deterministic acceptor of the support of the shifted series:
/// the words whose coefficient in `wa` plus `shift` is nonzero.
///
/// States are the distinct row vectors reachable from the initial weight
/// vector under the transition action, numbered in breadth-first discovery
/// order; a vector is accepting when its product with the final weights plus
/// `shift` is nonzero.
pub fn support_dfa(wa: &WeightedAutomaton, shift: &RingElement) -> Result<Dfa> {
    let ring = wa.ring().clone();
    if !ring.contains(shift) {
        return Err(Error::ForeignElement(shift.to_string()));
    }
    let alphabet = wa.alphabet().clone();
    // Sparse per-symbol edge lists, rebuilt from the public transition map so
    // the construction only depends on the automaton's declared weights.
    let mut edges: Vec<Vec<(usize, usize, RingElement)>> = vec![Vec::new(); alphabet.len()];
    for ((p, a, q), w) in wa.transitions() {
        edges[*a].push((*p, *q, w.clone()));
    }
    let n = wa.states();
    let mut start = vec![ring.zero(); n];
    for (q, w) in wa.initial_weights() {
        start[*q] = w.clone();
    }
    let accepting = |v: &[RingElement]| {
        let mut total = shift.clone();
        for (q, w) in wa.final_weights() {
            total = ring.add(&total, &ring.mul(&v[*q], w));
        }
        !ring.is_zero(&total)
    };

    let mut ids: BTreeMap<Vec<RingElement>, usize> = BTreeMap::new();
    let mut vectors = vec![start.clone()];
    ids.insert(start, 0);
    let mut delta: Vec<Vec<usize>> = Vec::new();
    let mut cursor = 0;
    while cursor < vectors.len() {
        let current = vectors[cursor].clone();
        let row = (0..alphabet.len())
            .map(|a| {
                let mut next = vec![ring.zero(); n];
                for (p, q, w) in &edges[a] {
                    let term = ring.mul(&current[*p], w);
                    next[*q] = ring.add(&next[*q], &term);
                }
                *ids.entry(next.clone()).or_insert_with(|| {
                    vectors.push(next);
                    vectors.len() - 1
                })
            })
            .collect();
        delta.push(row);
        cursor += 1;
    }
    let finals = vectors
        .iter()
        .enumerate()
        .filter(|(_, v)| accepting(v))
        .map(|(id, _)| id)
        .collect();
    Ok(Dfa::from_parts(alphabet, 0, finals, delta))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::new(["a", "b"]).unwrap()
    }

    /// Nondeterministic acceptor of words containing the factor `ab`.
    fn contains_ab_nfa() -> Nfa {
        Nfa::new(
            ab(),
            3,
            vec![0],
            vec![2],
            vec![
                (0, "a", 0),
                (0, "b", 0),
                (0, "a", 1),
                (1, "b", 2),
                (2, "a", 2),
                (2, "b", 2),
            ],
        )
        .unwrap()
    }

    fn all_words(alphabet: &Alphabet, max_len: usize) -> Vec<Word> {
        alphabet.words_up_to(max_len)
    }

    #[test]
    fn determinize_agrees_with_subset_walk() {
        let nfa = contains_ab_nfa();
        let dfa = nfa.determinize();
        for word in all_words(&ab(), 6) {
            assert_eq!(dfa.accepts(&word), nfa.accepts(&word), "word {word:?}");
        }
    }

    #[test]
    fn minimal_contains_ab_has_three_states() {
        // By hand: the residuals are "no progress", "just saw a", and
        // "already saw ab"; three classes.
        let dfa = contains_ab_nfa().determinize().minimized();
        assert_eq!(dfa.states(), 3);
        for word in all_words(&ab(), 6) {
            assert_eq!(dfa.accepts(&word), contains_ab_nfa().accepts(&word));
        }
    }

    #[test]
    fn minimize_is_idempotent_and_canonical() {
        let once = contains_ab_nfa().determinize().minimized();
        let twice = once.minimized();
        assert_eq!(once, twice);
    }

    #[test]
    fn boolean_combinations_match_membership() {
        let with_ab = contains_ab_nfa().determinize().minimized();
        // Words with an even number of `a`.
        let even_a = Dfa::new(
            ab(),
            2,
            0,
            vec![0],
            vec![(0, "a", 1), (0, "b", 0), (1, "a", 0), (1, "b", 1)],
        )
        .unwrap();
        let ops = [
            BoolOp::Union,
            BoolOp::Intersection,
            BoolOp::Difference,
            BoolOp::SymmetricDifference,
        ];
        for op in ops {
            let combined = with_ab.combine(&even_a, op).unwrap();
            for word in all_words(&ab(), 5) {
                let (x, y) = (with_ab.accepts(&word), even_a.accepts(&word));
                let expected = match op {
                    BoolOp::Union => x || y,
                    BoolOp::Intersection => x && y,
                    BoolOp::Difference => x && !y,
                    BoolOp::SymmetricDifference => x != y,
                };
                assert_eq!(combined.accepts(&word), expected, "{op:?} at {word:?}");
            }
        }
    }

    #[test]
    fn complement_flips_membership() {
        let dfa = contains_ab_nfa().determinize().minimized();
        let co = dfa.complemented();
        for word in all_words(&ab(), 5) {
            assert_eq!(co.accepts(&word), !dfa.accepts(&word));
        }
        assert!(dfa.complemented().complemented().equivalent_to(&dfa).unwrap());
    }

    #[test]
    fn equivalence_distinguishes_languages() {
        let d1 = contains_ab_nfa().determinize();
        let d2 = d1.minimized();
        assert!(d1.equivalent_to(&d2).unwrap());
        assert!(!d1.equivalent_to(&d2.complemented()).unwrap());
    }

    #[test]
    fn incomplete_or_conflicting_dfas_rejected() {
        let err = Dfa::new(ab(), 1, 0, vec![], vec![(0, "a", 0)]).unwrap_err();
        assert!(matches!(err, Error::IncompleteDfa { state: 0, .. }));
        let err = Dfa::new(
            ab(),
            2,
            0,
            vec![],
            vec![(0, "a", 0), (0, "a", 1), (0, "b", 0), (1, "a", 0), (1, "b", 0)],
        )
        .unwrap_err();
        assert!(matches!(err, Error::NondeterministicDfa { state: 0, .. }));
    }

    #[test]
    fn reversibility_of_acceptors() {
        // Single state with loops on both symbols: reversible.
        let sigma_star = Nfa::new(
            ab(),
            1,
            vec![0],
            vec![0],
            vec![(0, "a", 0), (0, "b", 0)],
        )
        .unwrap();
        assert!(sigma_star.is_reversible());
        // The `contains ab` acceptor is not: state 0 branches on `a`.
        let err = contains_ab_nfa().check_reversible().unwrap_err();
        assert!(matches!(err, ReversibilityViolation::Forward { state: 0, .. }));
    }

    #[test]
    fn two_initial_reversible_acceptor() {
        // `a* | (bb)*`: one looping state plus a two-cycle, two initial
        // states. Reversible even though it is not deterministic as a whole.
        let nfa = Nfa::new(
            ab(),
            3,
            vec![0, 1],
            vec![0, 1],
            vec![(0, "a", 0), (1, "b", 2), (2, "b", 1)],
        )
        .unwrap();
        assert!(nfa.is_reversible());
        assert_eq!(nfa.initial_states().len(), 2);
        let words = |s: &str| ab().word(&s.chars().map(String::from).collect::<Vec<_>>());
        for (w, expect) in [
            ("", true),
            ("a", true),
            ("aa", true),
            ("b", false),
            ("bb", true),
            ("bbb", false),
            ("bbbb", true),
            ("ab", false),
            ("ba", false),
        ] {
            let word = words(w).unwrap();
            assert_eq!(nfa.accepts(&word), expect, "word {w:?}");
        }
    }

    #[test]
    fn intersection_of_reversible_acceptors_stays_reversible() {
        // Even number of `a` and even number of `b`, both as two-state
        // permutation acceptors.
        let even_a = Nfa::new(
            ab(),
            2,
            vec![0],
            vec![0],
            vec![(0, "a", 1), (1, "a", 0), (0, "b", 0), (1, "b", 1)],
        )
        .unwrap();
        let even_b = Nfa::new(
            ab(),
            2,
            vec![0],
            vec![0],
            vec![(0, "b", 1), (1, "b", 0), (0, "a", 0), (1, "a", 1)],
        )
        .unwrap();
        let both = even_a.intersect(&even_b).unwrap();
        assert!(both.is_reversible());
        assert_eq!(both.initial_states().len(), 1);
        for word in all_words(&ab(), 5) {
            assert_eq!(
                both.accepts(&word),
                even_a.accepts(&word) && even_b.accepts(&word)
            );
        }
    }

    #[test]
    fn lift_of_deterministic_acceptor_has_characteristic_series() {
        let even_a = Nfa::new(
            ab(),
            2,
            vec![0],
            vec![0],
            vec![(0, "a", 1), (1, "a", 0), (0, "b", 0), (1, "b", 1)],
        )
        .unwrap();
        let ring = Ring::zn(6).unwrap();
        let lifted = even_a.lift(&ring);
        for word in all_words(&ab(), 5) {
            let expect = if even_a.accepts(&word) {
                ring.one()
            } else {
                ring.zero()
            };
            assert_eq!(lifted.coefficient(&word), expect);
        }
    }

    #[test]
    fn support_of_lift_is_the_language() {
        let even_a = Nfa::new(
            ab(),
            2,
            vec![0],
            vec![0],
            vec![(0, "a", 1), (1, "a", 0), (0, "b", 0), (1, "b", 1)],
        )
        .unwrap();
        let ring = Ring::zn(6).unwrap();
        let support = support_dfa(&even_a.lift(&ring), &ring.zero()).unwrap();
        let direct = even_a.determinize().minimized();
        assert!(support.minimized().equivalent_to(&direct).unwrap());
    }

    #[test]
    fn support_shift_picks_out_level_sets() {
        // The `a^+` series over Z_6 from the weighted-automaton tests:
        // coefficient 0 on the empty word, 1 on every other word.
        let ring = Ring::zn(6).unwrap();
        let a_only = Alphabet::new(["a"]).unwrap();
        let wa = WeightedAutomaton::new(
            ring.clone(),
            a_only.clone(),
            3,
            vec![
                (0, RingElement::Int(1)),
                (1, RingElement::Int(1)),
                (2, RingElement::Int(4)),
            ],
            vec![
                (0, RingElement::Int(1)),
                (1, RingElement::Int(1)),
                (2, RingElement::Int(1)),
            ],
            vec![(1, "a", 1, RingElement::Int(1))],
        )
        .unwrap();
        // Shift 0: support is a^+.
        let s0 = support_dfa(&wa, &ring.zero()).unwrap();
        assert!(!s0.accepts(&Word::empty()));
        assert!(s0.accepts(&a_only.word(&["a"]).unwrap()));
        assert_eq!(s0.minimized().states(), 2);
        // Shift 5 = -1: only the empty word survives.
        let s5 = support_dfa(&wa, &RingElement::Int(5)).unwrap();
        assert!(s5.accepts(&Word::empty()));
        assert!(!s5.accepts(&a_only.word(&["a"]).unwrap()));
        // Shift 1: everything is nonzero.
        let s1 = support_dfa(&wa, &RingElement::Int(1)).unwrap();
        for word in a_only.words_up_to(4) {
            assert!(s1.accepts(&word));
        }
    }

    #[test]
    fn support_shift_must_belong_to_the_ring() {
        let ring = Ring::zn(6).unwrap();
        let a_only = Alphabet::new(["a"]).unwrap();
        let wa = WeightedAutomaton::new(
            ring,
            a_only,
            1,
            vec![(0, RingElement::Int(1))],
            vec![(0, RingElement::Int(1))],
            Vec::<(usize, &str, usize, RingElement)>::new(),
        )
        .unwrap();
        assert!(matches!(
            support_dfa(&wa, &RingElement::Int(6)),
            Err(Error::ForeignElement(_))
        ));
    }
}
