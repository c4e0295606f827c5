//! The top-level procedures: language classification, the series
//! reversibility decision, and the constructive reversible witnesses.
//!
//! A rational series over a finite commutative ring is realizable by a
//! reversible weighted automaton exactly when, for every ring element `x`, the
//! support of the shifted series plus `x · Σ*` has a syntactic monoid whose
//! idempotents commute. [`decide_reversibility`] runs that quantification and
//! reports per-shift verdicts with witness words on failure.
//!
//! The witnesses go the other way: from a [`Decomposition`] into reversible
//! one-initial languages `L_1, .., L_n`, [`witness_union_f2`] assembles a
//! reversible automaton over the two-element field realizing the
//! characteristic series of the union, and [`witness_characteristic_series`]
//! assembles, over any ring, the characteristic series of the language of
//! words contained in an odd number of the `L_i` — equivalently, of the
//! support over the two-element field of the sum of their characteristic
//! series. Both build the disjoint union over nonempty subsets `X` of the
//! lifted intersections, the latter scaled by `(-2)^{|X| - 1}` computed
//! inside the target ring.

use std::time::{Duration, Instant};

use serde_json::Value;

use crate::alphabet::{Alphabet, Word};
use crate::error::{Error, Result};
use crate::lang::{support_dfa, Dfa, Nfa};
use crate::monoid::{
    check_omega_leq_one_on, EcomViolation, OmegaLeqViolation, TransitionMonoid,
};
use crate::ring::{Ring, RingElement};
use crate::wfa::{ScalarSide, WeightedAutomaton};

/// Options for [`decide_reversibility`].
#[derive(Debug, Clone, Copy, Default)]
pub struct DecideOptions {
    /// Quantify shifts only over the subring generated by the automaton's
    /// weights instead of the full declared ring. Sound: every coefficient
    /// lies in that subring, so a shift outside it can never cancel one and
    /// its shifted support is all of `Σ*`, which always passes.
    pub restrict_to_weight_subring: bool,
}

/// The outcome for a single shift `x`: data about `supp(r + x · Σ*)`.
#[derive(Debug, Clone)]
pub struct ShiftReport {
    pub shift: RingElement,
    /// States of the minimized support acceptor.
    pub support_states: usize,
    /// Size of its syntactic monoid.
    pub monoid_size: usize,
    pub ecom: bool,
    /// Witness words of a non-commuting idempotent pair when `ecom` fails.
    pub violation: Option<EcomViolation>,
}

/// The verdict of the reversibility decision with its per-shift evidence.
#[derive(Debug, Clone)]
pub struct DecisionReport {
    pub ring: Ring,
    pub alphabet: Alphabet,
    pub restricted_to_weight_subring: bool,
    pub shifts: Vec<ShiftReport>,
    /// True exactly when every shift passed the idempotent-commutation check.
    pub reversible: bool,
    /// Wall-clock time of the decision; excluded from the rendered forms so
    /// identical inputs produce identical output bytes.
    pub elapsed: Duration,
}

impl DecisionReport {
    fn witness_json(&self, violation: &EcomViolation) -> Value {
        let words = |w: &Word| {
            Value::from(
                self.alphabet
                    .decode(w)
                    .into_iter()
                    .map(Value::from)
                    .collect::<Vec<Value>>(),
            )
        };
        let mut obj = serde_json::Map::new();
        obj.insert("first".into(), words(&violation.first));
        obj.insert("second".into(), words(&violation.second));
        Value::Object(obj)
    }

    /// A machine-readable form of the report; deterministic for identical
    /// inputs (timing is deliberately omitted).
    pub fn to_json(&self) -> Value {
        let mut obj = serde_json::Map::new();
        obj.insert("reversible".into(), Value::from(self.reversible));
        obj.insert("ring".into(), Value::from(self.ring.describe()));
        obj.insert("ring_size".into(), Value::from(self.ring.size()));
        obj.insert(
            "subring_restricted".into(),
            Value::from(self.restricted_to_weight_subring),
        );
        let shifts: Vec<Value> = self
            .shifts
            .iter()
            .map(|s| {
                let mut entry = serde_json::Map::new();
                entry.insert("shift".into(), self.ring.element_to_json(&s.shift));
                entry.insert("support_states".into(), Value::from(s.support_states as u64));
                entry.insert("monoid_size".into(), Value::from(s.monoid_size as u64));
                entry.insert("ecom".into(), Value::from(s.ecom));
                if let Some(v) = &s.violation {
                    entry.insert("witness".into(), self.witness_json(v));
                }
                Value::Object(entry)
            })
            .collect();
        obj.insert("shifts".into(), Value::from(shifts));
        Value::Object(obj)
    }

    /// A human-readable form; deterministic for identical inputs.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "ring: {} ({} elements)\n",
            self.ring.describe(),
            self.ring.size()
        ));
        out.push_str(&format!(
            "shifts checked: {}{}\n",
            self.shifts.len(),
            if self.restricted_to_weight_subring {
                " (restricted to the subring generated by the weights)"
            } else {
                ""
            }
        ));
        for s in &self.shifts {
            let verdict = match &s.violation {
                None => "ecom yes".to_string(),
                Some(v) => format!(
                    "ecom NO (idempotents \"{}\" and \"{}\" do not commute)",
                    self.alphabet.render(&v.first),
                    self.alphabet.render(&v.second)
                ),
            };
            out.push_str(&format!(
                "shift {}: support states {}, monoid size {}, {}\n",
                s.shift, s.support_states, s.monoid_size, verdict
            ));
        }
        out.push_str(&format!(
            "verdict: {}\n",
            if self.reversible {
                "reversible"
            } else {
                "not reversible"
            }
        ));
        out
    }
}

/// Decides whether the series of `wa` is realizable by a reversible weighted
/// automaton over its ring: for every shift `x`, the support of the series
/// plus `x · Σ*` must have a syntactic monoid with commuting idempotents.
pub fn decide_reversibility(wa: &WeightedAutomaton, options: &DecideOptions) -> DecisionReport {
    let started = Instant::now();
    let ring = wa.ring().clone();
    let shifts: Vec<RingElement> = if options.restrict_to_weight_subring {
        let mut gens: Vec<RingElement> = Vec::new();
        gens.extend(wa.initial_weights().values().cloned());
        gens.extend(wa.final_weights().values().cloned());
        gens.extend(wa.transitions().values().cloned());
        ring.generated_subring(&gens)
            .expect("weights of a valid automaton generate a valid subring")
            .carrier
    } else {
        ring.elements()
    };
    let mut reports = Vec::with_capacity(shifts.len());
    let mut reversible = true;
    for shift in shifts {
        let support = support_dfa(wa, &shift)
            .expect("shift is an element of the automaton's ring")
            .minimized();
        let monoid = TransitionMonoid::of(&support);
        let violation = monoid.idempotents_commute().err();
        let ecom = violation.is_none();
        reversible &= ecom;
        reports.push(ShiftReport {
            shift,
            support_states: support.states(),
            monoid_size: monoid.len(),
            ecom,
            violation,
        });
    }
    DecisionReport {
        ring,
        alphabet: wa.alphabet().clone(),
        restricted_to_weight_subring: options.restrict_to_weight_subring,
        shifts: reports,
        reversible,
        elapsed: started.elapsed(),
    }
}

/// Summary of the syntactic monoid of a language and its idempotent
/// commutation verdict.
#[derive(Debug, Clone)]
pub struct MonoidSummary {
    /// States of the minimal complete acceptor.
    pub minimal_states: usize,
    pub size: usize,
    pub idempotent_count: usize,
    pub ecom: bool,
    pub violation: Option<EcomViolation>,
}

/// Checks whether the language of `dfa` is reversible (over the two-element
/// field and hence over every nontrivial finite commutative ring): its
/// syntactic monoid must have commuting idempotents.
pub fn ecom_language_check(dfa: &Dfa) -> MonoidSummary {
    let minimal = dfa.minimized();
    let monoid = TransitionMonoid::of(&minimal);
    let violation = monoid.idempotents_commute().err();
    MonoidSummary {
        minimal_states: minimal.states(),
        size: monoid.len(),
        idempotent_count: monoid.idempotents().len(),
        ecom: violation.is_none(),
        violation,
    }
}

/// Both language-level verdicts: ECom membership and the stricter
/// single-initial single-final reversibility.
#[derive(Debug, Clone)]
pub struct Classification {
    pub monoid: MonoidSummary,
    /// True when omega powers commute and `x^omega <= 1` holds — acceptance
    /// by a reversible automaton with one initial and one final state.
    pub pin_reversible: bool,
    pub omega_violation: Option<OmegaLeqViolation>,
}

/// Classifies the language of `dfa`: `ecom` alone means reversible with
/// arbitrarily many initial and final states; `pin_reversible` adds the
/// `x^omega <= 1` requirement. The gap between the two is exactly what ring
/// weights buy — `a^+` has `ecom` true but `pin_reversible` false.
pub fn classify_language(dfa: &Dfa) -> Classification {
    let minimal = dfa.minimized();
    let monoid = TransitionMonoid::of(&minimal);
    let ecom_violation = monoid.omega_powers_commute().err();
    let omega_violation = check_omega_leq_one_on(&minimal, &monoid).err();
    let pin_reversible = ecom_violation.is_none() && omega_violation.is_none();
    Classification {
        monoid: MonoidSummary {
            minimal_states: minimal.states(),
            size: monoid.len(),
            idempotent_count: monoid.idempotents().len(),
            ecom: ecom_violation.is_none(),
            violation: ecom_violation,
        },
        pin_reversible,
        omega_violation,
    }
}

/// A sequence of languages `L_1, .., L_n`, each presented by a reversible
/// acceptor with exactly one initial state, over a common alphabet.
#[derive(Debug, Clone)]
pub struct Decomposition {
    alphabet: Alphabet,
    members: Vec<Nfa>,
}

impl Decomposition {
    /// Validates the members: each must share `alphabet`, pass the
    /// reversibility check, and have exactly one initial state.
    pub fn new(alphabet: Alphabet, members: Vec<Nfa>) -> Result<Self> {
        for member in &members {
            if *member.alphabet() != alphabet {
                return Err(Error::AlphabetMismatch);
            }
            member.check_reversible().map_err(Error::NotReversible)?;
            if member.initial_states().len() != 1 {
                return Err(Error::NotOneInitial(member.initial_states().len()));
            }
        }
        Ok(Decomposition { alphabet, members })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn members(&self) -> &[Nfa] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// All nonempty index subsets, by increasing size then lexicographically.
    fn subsets(&self) -> Vec<Vec<usize>> {
        let n = self.members.len();
        let mut out: Vec<Vec<usize>> = Vec::new();
        for size in 1..=n {
            let mut current: Vec<usize> = (0..size).collect();
            'combinations: loop {
                out.push(current.clone());
                // Advance the rightmost index with room to grow.
                let mut i = size;
                while i > 0 {
                    i -= 1;
                    if current[i] < n - (size - i) {
                        current[i] += 1;
                        for j in i + 1..size {
                            current[j] = current[j - 1] + 1;
                        }
                        continue 'combinations;
                    }
                }
                break;
            }
        }
        out
    }

    /// The intersection acceptor of the members indexed by `subset`.
    fn intersection_of(&self, subset: &[usize]) -> Nfa {
        let mut acc = self.members[subset[0]].clone();
        for &i in &subset[1..] {
            acc = acc
                .intersect(&self.members[i])
                .expect("members share one alphabet");
        }
        acc
    }
}

/// The empty automaton realizing the zero series.
fn zero_automaton(ring: &Ring, alphabet: &Alphabet) -> WeightedAutomaton {
    WeightedAutomaton::new(
        ring.clone(),
        alphabet.clone(),
        0,
        vec![],
        vec![],
        Vec::<(usize, &str, usize, RingElement)>::new(),
    )
    .expect("the empty automaton is valid")
}

/// The reversible weighted automaton over the two-element field realizing the
/// characteristic series of `L_1 ∪ .. ∪ L_n`: the disjoint union over
/// nonempty subsets `X` of the lifted intersections. On a word in the union,
/// `2^{|X_w|} - 1` subsets contribute 1 each — an odd count; off the union
/// the count is zero.
pub fn witness_union_f2(dec: &Decomposition) -> WeightedAutomaton {
    let f2 = Ring::f2();
    let mut acc = zero_automaton(&f2, dec.alphabet());
    for subset in dec.subsets() {
        let component = dec.intersection_of(&subset).lift(&f2);
        acc = acc
            .disjoint_union(&component)
            .expect("components share ring and alphabet");
    }
    acc
}

/// The minimized acceptor of the support, over the two-element field, of
/// `char(L_1) + .. + char(L_n)`: the words belonging to an odd number of the
/// members. This is the language whose characteristic series
/// [`witness_characteristic_series`] realizes.
pub fn parity_support_dfa(dec: &Decomposition) -> Dfa {
    let f2 = Ring::f2();
    let mut sum = zero_automaton(&f2, dec.alphabet());
    for member in dec.members() {
        sum = sum
            .disjoint_union(&member.lift(&f2))
            .expect("members share ring and alphabet");
    }
    support_dfa(&sum, &f2.zero())
        .expect("zero is a ring element")
        .minimized()
}

/// Checks that `wa` looks like a reversible realization of the characteristic
/// series of `target`: structural reversibility, support equality, and exact
/// coefficient agreement on all words up to `max_len`.
#[derive(Debug, Clone, Copy)]
pub struct WitnessVerification {
    pub reversible: bool,
    pub support_matches: bool,
    pub words_checked: usize,
    pub coefficients_match: bool,
}

impl WitnessVerification {
    pub fn passed(&self) -> bool {
        self.reversible && self.support_matches && self.coefficients_match
    }
}

pub fn verify_witness(
    wa: &WeightedAutomaton,
    target: &Dfa,
    max_len: usize,
) -> Result<WitnessVerification> {
    let reversible = wa.is_reversible();
    let support = support_dfa(wa, &wa.ring().zero())?.minimized();
    let support_matches = support.equivalent_to(target)?;
    let one = wa.ring().one();
    let zero = wa.ring().zero();
    let mut words_checked = 0;
    let mut coefficients_match = true;
    for (word, coefficient) in wa.enumerate_coefficients(max_len) {
        let expected = if target.accepts(&word) { &one } else { &zero };
        coefficients_match &= coefficient == *expected;
        words_checked += 1;
    }
    Ok(WitnessVerification {
        reversible,
        support_matches,
        words_checked,
        coefficients_match,
    })
}

/// The reversible weighted automaton over `ring` realizing the characteristic
/// series of `target`, built from a decomposition whose odd-membership
/// language is `target`.
///
/// The construction is the disjoint union over nonempty subsets `X` of the
/// members, of the lifted intersection of `X` scaled by `(-2)^{|X| - 1}`
/// computed inside `ring`. By the binomial theorem the coefficient at `w`
/// sums to 1 when `|X_w|` is odd and 0 when even, where `X_w` is the set of
/// members containing `w` — hence the precondition, verified here, that
/// `target` equals the odd-membership language [`parity_support_dfa`] of the
/// decomposition.
pub fn witness_characteristic_series(
    dec: &Decomposition,
    target: &Dfa,
    ring: &Ring,
) -> Result<WeightedAutomaton> {
    if target.alphabet() != dec.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    if !parity_support_dfa(dec).equivalent_to(target)? {
        return Err(Error::DecompositionMismatch);
    }
    let minus_two = ring.int(-2);
    let mut acc = zero_automaton(ring, dec.alphabet());
    for subset in dec.subsets() {
        let scalar = ring.pow(&minus_two, subset.len() as u64 - 1);
        let component = dec
            .intersection_of(&subset)
            .lift(ring)
            .scaled(&scalar, ScalarSide::Left)
            .expect("scalar is a ring element");
        acc = acc
            .disjoint_union(&component)
            .expect("components share ring and alphabet");
    }
    Ok(acc)
}
