//! Weighted finite automata over finite commutative rings.
//!
//! A [`WeightedAutomaton`] assigns every word the sum, over all runs, of the
//! product initial-weight times transition-weights times final-weight. Zero
//! weights are dropped on construction, so the stored transitions are exactly
//! the edges of the underlying unweighted automaton; the reversibility checks
//! ([`WeightedAutomaton::check_reversible`]) are about that edge structure.
//!
//! [`LinearRepresentation`] is the equivalent matrix view: a row vector, one
//! square matrix per symbol, and a column vector, with the coefficient of a
//! word given by the corresponding vector-matrix-vector product.

use std::collections::BTreeMap;
use std::fmt;

use crate::alphabet::{Alphabet, Word};
use crate::error::{Error, Result};
use crate::ring::{Ring, RingElement};

/// Which side a scalar multiplies the series on.
///
/// Over a commutative ring both sides give the same series; the distinction is
/// kept because the constructions scale the initial vector on the left and the
/// final vector on the right.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalarSide {
    Left,
    Right,
}

/// Why an automaton fails to be reversible: some state has two out-edges or
/// two in-edges on the same symbol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReversibilityViolation {
    Forward {
        state: usize,
        symbol: String,
        targets: Vec<usize>,
    },
    Backward {
        state: usize,
        symbol: String,
        sources: Vec<usize>,
    },
}

impl fmt::Display for ReversibilityViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReversibilityViolation::Forward {
                state,
                symbol,
                targets,
            } => write!(
                f,
                "state {state} has {} successors on '{symbol}': {targets:?}",
                targets.len()
            ),
            ReversibilityViolation::Backward {
                state,
                symbol,
                sources,
            } => write!(
                f,
                "state {state} has {} predecessors on '{symbol}': {sources:?}",
                sources.len()
            ),
        }
    }
}

/// A single run of an automaton on a word: the visited state sequence and the
/// product of the weights along it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Run {
    pub states: Vec<usize>,
    pub weight: RingElement,
}

/// A weighted finite automaton over a finite commutative ring.
///
/// Weights equal to zero are dropped during construction, so initial weights,
/// final weights, and transitions are stored sparsely and nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedAutomaton {
    ring: Ring,
    alphabet: Alphabet,
    states: usize,
    initial: BTreeMap<usize, RingElement>,
    finals: BTreeMap<usize, RingElement>,
    transitions: BTreeMap<(usize, usize, usize), RingElement>,
    /// Per-symbol adjacency: `edges[a][p]` lists `(q, weight)` with the
    /// nonzero weight of `p --a--> q`.
    edges: Vec<BTreeMap<usize, Vec<(usize, RingElement)>>>,
}

impl WeightedAutomaton {
    /// Validates and normalizes the pieces of an automaton.
    ///
    /// States are `0..states`; transitions name symbols by string. Listing the
    /// same transition or the same initial/final state twice is an error even
    /// when the weights agree.
    pub fn new<S: AsRef<str>>(
        ring: Ring,
        alphabet: Alphabet,
        states: usize,
        initial: Vec<(usize, RingElement)>,
        finals: Vec<(usize, RingElement)>,
        transitions: Vec<(usize, S, usize, RingElement)>,
    ) -> Result<Self> {
        let check_state = |q: usize| -> Result<()> {
            if q >= states {
                Err(Error::StateOutOfRange { index: q, states })
            } else {
                Ok(())
            }
        };
        let check_element = |w: &RingElement| -> Result<()> {
            if ring.contains(w) {
                Ok(())
            } else {
                Err(Error::ForeignElement(w.to_string()))
            }
        };

        let mut initial_map = BTreeMap::new();
        for (q, w) in initial {
            check_state(q)?;
            check_element(&w)?;
            if initial_map.insert(q, w.clone()).is_some() {
                return Err(Error::DuplicateWeight {
                    which: "initial",
                    state: q,
                });
            }
        }
        let mut final_map = BTreeMap::new();
        for (q, w) in finals {
            check_state(q)?;
            check_element(&w)?;
            if final_map.insert(q, w.clone()).is_some() {
                return Err(Error::DuplicateWeight {
                    which: "final",
                    state: q,
                });
            }
        }
        let mut transition_map = BTreeMap::new();
        for (p, sym, q, w) in transitions {
            check_state(p)?;
            check_state(q)?;
            check_element(&w)?;
            let sym = sym.as_ref();
            let a = alphabet
                .index_of(sym)
                .ok_or_else(|| Error::UnknownSymbol(sym.to_string()))?;
            if transition_map.insert((p, a, q), w.clone()).is_some() {
                return Err(Error::DuplicateTransition {
                    from: p,
                    symbol: sym.to_string(),
                    to: q,
                });
            }
        }

        initial_map.retain(|_, w| !ring.is_zero(w));
        final_map.retain(|_, w| !ring.is_zero(w));
        transition_map.retain(|_, w| !ring.is_zero(w));

        let mut edges: Vec<BTreeMap<usize, Vec<(usize, RingElement)>>> =
            vec![BTreeMap::new(); alphabet.len()];
        for ((p, a, q), w) in &transition_map {
            edges[*a].entry(*p).or_default().push((*q, w.clone()));
        }

        Ok(WeightedAutomaton {
            ring,
            alphabet,
            states,
            initial: initial_map,
            finals: final_map,
            transitions: transition_map,
            edges,
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn states(&self) -> usize {
        self.states
    }

    pub fn initial_weights(&self) -> &BTreeMap<usize, RingElement> {
        &self.initial
    }

    pub fn final_weights(&self) -> &BTreeMap<usize, RingElement> {
        &self.finals
    }

    /// Nonzero transitions in `(from, symbol id, to) -> weight` form.
    pub fn transitions(&self) -> &BTreeMap<(usize, usize, usize), RingElement> {
        &self.transitions
    }

    pub fn initial_weight(&self, q: usize) -> RingElement {
        self.initial.get(&q).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn final_weight(&self, q: usize) -> RingElement {
        self.finals.get(&q).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn weight(&self, from: usize, symbol: usize, to: usize) -> RingElement {
        self.transitions
            .get(&(from, symbol, to))
            .cloned()
            .unwrap_or_else(|| self.ring.zero())
    }

    /// The coefficient of `word` in the recognized series, by sparse forward
    /// evaluation of the nonzero state vector.
    pub fn coefficient(&self, word: &Word) -> RingElement {
        let mut vector: BTreeMap<usize, RingElement> = self.initial.clone();
        for &a in word.ids() {
            let mut next: BTreeMap<usize, RingElement> = BTreeMap::new();
            for (p, v) in &vector {
                let Some(outs) = self.edges[a].get(p) else { continue };
                for (q, w) in outs {
                    let term = self.ring.mul(v, w);
                    match next.remove(q) {
                        Some(acc) => {
                            let sum = self.ring.add(&acc, &term);
                            if !self.ring.is_zero(&sum) {
                                next.insert(*q, sum);
                            }
                        }
                        None => {
                            if !self.ring.is_zero(&term) {
                                next.insert(*q, term);
                            }
                        }
                    }
                }
            }
            vector = next;
        }
        let mut total = self.ring.zero();
        for (q, v) in &vector {
            if let Some(f) = self.finals.get(q) {
                total = self.ring.add(&total, &self.ring.mul(v, f));
            }
        }
        total
    }

    /// All runs on `word` with nonzero weight, in lexicographic order of their
    /// state sequences.
    pub fn runs(&self, word: &Word) -> Vec<Run> {
        let mut runs = Vec::new();
        for seq in state_sequences(self.states, word.len() + 1) {
            let weight = self.run_weight(&seq, word);
            if !self.ring.is_zero(&weight) {
                runs.push(Run { states: seq, weight });
            }
        }
        runs
    }

    /// The coefficient of `word` computed by brute-force enumeration of every
    /// state sequence, independently of the sparse evaluation path.
    pub fn coefficient_by_runs(&self, word: &Word) -> RingElement {
        let mut total = self.ring.zero();
        for seq in state_sequences(self.states, word.len() + 1) {
            total = self.ring.add(&total, &self.run_weight(&seq, word));
        }
        total
    }

    fn run_weight(&self, seq: &[usize], word: &Word) -> RingElement {
        let mut weight = self.initial_weight(seq[0]);
        for (step, &a) in word.ids().iter().enumerate() {
            if self.ring.is_zero(&weight) {
                return weight;
            }
            weight = self.ring.mul(&weight, &self.weight(seq[step], a, seq[step + 1]));
        }
        self.ring.mul(&weight, &self.final_weight(seq[word.len()]))
    }

    /// Coefficients of every word of length at most `max_len`, in order of
    /// length and then lexicographically, sharing state vectors along prefixes.
    pub fn enumerate_coefficients(&self, max_len: usize) -> Vec<(Word, RingElement)> {
        let finish = |vector: &BTreeMap<usize, RingElement>| {
            let mut total = self.ring.zero();
            for (q, v) in vector {
                if let Some(f) = self.finals.get(q) {
                    total = self.ring.add(&total, &self.ring.mul(v, f));
                }
            }
            total
        };
        let mut out = Vec::new();
        let mut frontier: Vec<(Word, BTreeMap<usize, RingElement>)> =
            vec![(Word::empty(), self.initial.clone())];
        for length in 0..=max_len {
            for (word, vector) in &frontier {
                out.push((word.clone(), finish(vector)));
            }
            if length == max_len {
                break;
            }
            let mut next = Vec::with_capacity(frontier.len() * self.alphabet.len());
            for (word, vector) in &frontier {
                for a in 0..self.alphabet.len() {
                    let mut stepped: BTreeMap<usize, RingElement> = BTreeMap::new();
                    for (p, v) in vector {
                        let Some(outs) = self.edges[a].get(p) else { continue };
                        for (q, w) in outs {
                            let term = self.ring.mul(v, w);
                            let acc = match stepped.remove(q) {
                                Some(acc) => self.ring.add(&acc, &term),
                                None => term,
                            };
                            if !self.ring.is_zero(&acc) {
                                stepped.insert(*q, acc);
                            }
                        }
                    }
                    let mut extended = word.clone();
                    extended.push(a);
                    next.push((extended, stepped));
                }
            }
            frontier = next;
        }
        out
    }

    /// Checks that every state has at most one successor and at most one
    /// predecessor per symbol, reporting the first offending state otherwise.
    pub fn check_reversible(&self) -> std::result::Result<(), ReversibilityViolation> {
        let mut forward: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        let mut backward: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (p, a, q) in self.transitions.keys() {
            forward.entry((*p, *a)).or_default().push(*q);
            backward.entry((*q, *a)).or_default().push(*p);
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

    /// Reversible with at most one initial and at most one final state.
    pub fn is_bideterministic(&self) -> bool {
        self.is_reversible() && self.initial.len() <= 1 && self.finals.len() <= 1
    }

    /// Side-by-side union; the recognized series is the sum of the two. The
    /// other automaton's states are shifted up by `self.states()`.
    pub fn disjoint_union(&self, other: &WeightedAutomaton) -> Result<WeightedAutomaton> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        let offset = self.states;
        let shift =
            |map: &BTreeMap<usize, RingElement>, by: usize| -> Vec<(usize, RingElement)> {
                map.iter().map(|(q, w)| (q + by, w.clone())).collect()
            };
        let mut initial = shift(&self.initial, 0);
        initial.extend(shift(&other.initial, offset));
        let mut finals = shift(&self.finals, 0);
        finals.extend(shift(&other.finals, offset));
        let mut transitions: Vec<(usize, String, usize, RingElement)> = Vec::new();
        for ((p, a, q), w) in &self.transitions {
            transitions.push((*p, self.alphabet.symbol(*a).to_string(), *q, w.clone()));
        }
        for ((p, a, q), w) in &other.transitions {
            transitions.push((
                p + offset,
                other.alphabet.symbol(*a).to_string(),
                q + offset,
                w.clone(),
            ));
        }
        WeightedAutomaton::new(
            self.ring.clone(),
            self.alphabet.clone(),
            self.states + other.states,
            initial,
            finals,
            transitions,
        )
    }

    /// The automaton for the scalar multiple of the series: initial weights
    /// become `x * i(q)` (left) or final weights become `f(q) * x` (right).
    pub fn scaled(&self, x: &RingElement, side: ScalarSide) -> Result<WeightedAutomaton> {
        if !self.ring.contains(x) {
            return Err(Error::ForeignElement(x.to_string()));
        }
        let scale = |map: &BTreeMap<usize, RingElement>, left: bool| {
            map.iter()
                .map(|(q, w)| {
                    let scaled = if left {
                        self.ring.mul(x, w)
                    } else {
                        self.ring.mul(w, x)
                    };
                    (*q, scaled)
                })
                .collect::<Vec<_>>()
        };
        let (initial, finals) = match side {
            ScalarSide::Left => (scale(&self.initial, true), self.finals_vec()),
            ScalarSide::Right => (self.initial_vec(), scale(&self.finals, false)),
        };
        WeightedAutomaton::new(
            self.ring.clone(),
            self.alphabet.clone(),
            self.states,
            initial,
            finals,
            self.transitions_vec(),
        )
    }

    /// One automaton per initial state, identical except that each keeps a
    /// single initial weight. The sum of their series is the original series.
    pub fn split_by_initial(&self) -> Vec<WeightedAutomaton> {
        self.initial
            .iter()
            .map(|(q, w)| {
                WeightedAutomaton::new(
                    self.ring.clone(),
                    self.alphabet.clone(),
                    self.states,
                    vec![(*q, w.clone())],
                    self.finals_vec(),
                    self.transitions_vec(),
                )
                .expect("split of a valid automaton is valid")
            })
            .collect()
    }

    /// The dense matrix view of this automaton.
    pub fn to_linear_representation(&self) -> LinearRepresentation {
        let n = self.states;
        let zero = self.ring.zero();
        let mut initial = vec![zero.clone(); n];
        for (q, w) in &self.initial {
            initial[*q] = w.clone();
        }
        let mut finals = vec![zero.clone(); n];
        for (q, w) in &self.finals {
            finals[*q] = w.clone();
        }
        let mut matrices = vec![vec![vec![zero; n]; n]; self.alphabet.len()];
        for ((p, a, q), w) in &self.transitions {
            matrices[*a][*p][*q] = w.clone();
        }
        LinearRepresentation {
            ring: self.ring.clone(),
            alphabet: self.alphabet.clone(),
            dimension: n,
            initial,
            matrices,
            finals,
        }
    }

    fn initial_vec(&self) -> Vec<(usize, RingElement)> {
        self.initial.iter().map(|(q, w)| (*q, w.clone())).collect()
    }

    fn finals_vec(&self) -> Vec<(usize, RingElement)> {
        self.finals.iter().map(|(q, w)| (*q, w.clone())).collect()
    }

    fn transitions_vec(&self) -> Vec<(usize, String, usize, RingElement)> {
        self.transitions
            .iter()
            .map(|((p, a, q), w)| (*p, self.alphabet.symbol(*a).to_string(), *q, w.clone()))
            .collect()
    }
}

/// Iterator over all sequences of `len` states drawn from `0..states`, in
/// lexicographic order. Yields nothing when `states == 0` (unless `len == 0`).
fn state_sequences(states: usize, len: usize) -> impl Iterator<Item = Vec<usize>> {
    let total: Option<u64> = (states as u64).checked_pow(len as u32);
    let total = total.expect("state sequence count overflows u64");
    (0..total).map(move |mut v| {
        let mut seq = vec![0; len];
        for slot in seq.iter_mut().rev() {
            *slot = (v % states as u64) as usize;
            v /= states as u64;
        }
        seq
    })
}

/// A series given by a row vector, a matrix per symbol, and a column vector.
#[derive(Debug, Clone)]
pub struct LinearRepresentation {
    pub ring: Ring,
    pub alphabet: Alphabet,
    pub dimension: usize,
    /// Row vector of initial weights, length `dimension`.
    pub initial: Vec<RingElement>,
    /// One `dimension x dimension` matrix per alphabet symbol, indexed by
    /// symbol id; entry `[p][q]` is the weight of `p -> q`.
    pub matrices: Vec<Vec<Vec<RingElement>>>,
    /// Column vector of final weights, length `dimension`.
    pub finals: Vec<RingElement>,
}

impl LinearRepresentation {
    /// Applies the matrix of `symbol` to a row vector on the right.
    pub fn step(&self, vector: &[RingElement], symbol: usize) -> Vec<RingElement> {
        let matrix = &self.matrices[symbol];
        (0..self.dimension)
            .map(|q| {
                let mut acc = self.ring.zero();
                for (p, v) in vector.iter().enumerate() {
                    acc = self.ring.add(&acc, &self.ring.mul(v, &matrix[p][q]));
                }
                acc
            })
            .collect()
    }

    /// The row vector reached from the initial vector by reading `word`.
    pub fn vector_after(&self, word: &Word) -> Vec<RingElement> {
        let mut vector = self.initial.clone();
        for &a in word.ids() {
            vector = self.step(&vector, a);
        }
        vector
    }

    /// The coefficient of `word`: initial row times the word's matrices times
    /// the final column, evaluated densely.
    pub fn coefficient(&self, word: &Word) -> RingElement {
        let vector = self.vector_after(word);
        let mut total = self.ring.zero();
        for (q, v) in vector.iter().enumerate() {
            total = self.ring.add(&total, &self.ring.mul(v, &self.finals[q]));
        }
        total
    }

    /// The sparse automaton with these weights.
    pub fn to_automaton(&self) -> WeightedAutomaton {
        let initial = self
            .initial
            .iter()
            .enumerate()
            .map(|(q, w)| (q, w.clone()))
            .collect();
        let finals = self
            .finals
            .iter()
            .enumerate()
            .map(|(q, w)| (q, w.clone()))
            .collect();
        let mut transitions = Vec::new();
        for (a, matrix) in self.matrices.iter().enumerate() {
            for (p, row) in matrix.iter().enumerate() {
                for (q, w) in row.iter().enumerate() {
                    transitions.push((p, self.alphabet.symbol(a).to_string(), q, w.clone()));
                }
            }
        }
        WeightedAutomaton::new(
            self.ring.clone(),
            self.alphabet.clone(),
            self.dimension,
            initial,
            finals,
            transitions,
        )
        .expect("a linear representation always converts back")
    }
}
