//! Parsing and printing of the four document kinds: ring specifications,
//! weighted automata, acceptors (nondeterministic and complete
//! deterministic), and decompositions.
//!
//! Documents are JSON with a fixed shape. Parsing is strict — unknown keys
//! and off-shape values are rejected with [`Error::Document`] — and printing
//! is canonical: fixed key order, ascending state and symbol order, compact
//! single-line output, so parse ∘ print is the identity and identical inputs
//! produce byte-identical outputs.
//!
//! Shapes:
//!
//! ```text
//! ring           {"kind":"zn","n":6}
//!                {"kind":"gf","p":2,"k":2,"modulus":[1,1,1]}
//!                {"kind":"product","factors":[ring, ..]}
//!                {"kind":"table","size":m,"add":[[..]],"mul":[[..]],"zero":i,"one":j}
//! weighted       {"ring":ring,"alphabet":["a","b"],"states":n,
//!   automaton     "initial":{"0":elt, ..},"final":{..},
//!                 "transitions":[[p,"sym",q,elt], ..]}
//! acceptor       {"alphabet":[..],"states":n,"initial":[..],"final":[..],
//!                 "transitions":[[p,"sym",q], ..]}
//!                (a complete deterministic acceptor additionally declares
//!                 "complete":true after "states" and lists one initial state)
//! decomposition  {"alphabet":[..],"languages":[acceptor, ..]}
//! ```
//!
//! Element encodings per ring kind: `zn` an integer, `gf` an array of `k`
//! coefficients by ascending degree, `product` an array of factor encodings,
//! `table` an index. Weights omitted from an automaton document are zero.

use serde_json::{Map, Value};

use crate::alphabet::Alphabet;
use crate::decide::Decomposition;
use crate::error::{Error, Result};
use crate::lang::{Dfa, Nfa};
use crate::ring::{Ring, RingElement, RingSpec};
use crate::wfa::WeightedAutomaton;

fn document_error(message: impl Into<String>) -> Error {
    Error::Document(message.into())
}

fn as_object<'a>(value: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    value
        .as_object()
        .ok_or_else(|| document_error(format!("{what} must be a JSON object")))
}

fn as_array<'a>(value: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    value
        .as_array()
        .ok_or_else(|| document_error(format!("{what} must be a JSON array")))
}

fn as_u64(value: &Value, what: &str) -> Result<u64> {
    value
        .as_u64()
        .ok_or_else(|| document_error(format!("{what} must be a nonnegative integer")))
}

fn as_usize(value: &Value, what: &str) -> Result<usize> {
    Ok(as_u64(value, what)? as usize)
}

fn as_str<'a>(value: &'a Value, what: &str) -> Result<&'a str> {
    value
        .as_str()
        .ok_or_else(|| document_error(format!("{what} must be a string")))
}

fn required<'a>(map: &'a Map<String, Value>, key: &str, what: &str) -> Result<&'a Value> {
    map.get(key)
        .ok_or_else(|| document_error(format!("{what} is missing the \"{key}\" key")))
}

fn reject_unknown_keys(map: &Map<String, Value>, allowed: &[&str], what: &str) -> Result<()> {
    for key in map.keys() {
        if !allowed.contains(&key.as_str()) {
            return Err(document_error(format!(
                "{what} has an unknown key \"{key}\""
            )));
        }
    }
    Ok(())
}

fn u64_matrix(value: &Value, what: &str) -> Result<Vec<Vec<u64>>> {
    as_array(value, what)?
        .iter()
        .map(|row| {
            as_array(row, &format!("each row of {what}"))?
                .iter()
                .map(|cell| as_u64(cell, &format!("each entry of {what}")))
                .collect()
        })
        .collect()
}

fn ring_spec_from_value(value: &Value) -> Result<RingSpec> {
    let map = as_object(value, "a ring specification")?;
    let kind = as_str(required(map, "kind", "a ring specification")?, "\"kind\"")?;
    match kind {
        "zn" => {
            reject_unknown_keys(map, &["kind", "n"], "a zn ring")?;
            let n = as_u64(required(map, "n", "a zn ring")?, "\"n\"")?;
            Ok(RingSpec::Zn { n })
        }
        "gf" => {
            reject_unknown_keys(map, &["kind", "p", "k", "modulus"], "a gf ring")?;
            let p = as_u64(required(map, "p", "a gf ring")?, "\"p\"")?;
            let k = as_usize(required(map, "k", "a gf ring")?, "\"k\"")?;
            let modulus = as_array(required(map, "modulus", "a gf ring")?, "\"modulus\"")?
                .iter()
                .map(|c| as_u64(c, "each modulus coefficient"))
                .collect::<Result<Vec<u64>>>()?;
            Ok(RingSpec::Gf { p, k, modulus })
        }
        "product" => {
            reject_unknown_keys(map, &["kind", "factors"], "a product ring")?;
            let factors = as_array(required(map, "factors", "a product ring")?, "\"factors\"")?
                .iter()
                .map(ring_spec_from_value)
                .collect::<Result<Vec<RingSpec>>>()?;
            Ok(RingSpec::Product { factors })
        }
        "table" => {
            reject_unknown_keys(
                map,
                &["kind", "size", "add", "mul", "zero", "one"],
                "a table ring",
            )?;
            let size = as_usize(required(map, "size", "a table ring")?, "\"size\"")?;
            let add = u64_matrix(required(map, "add", "a table ring")?, "\"add\"")?
                .into_iter()
                .map(|row| row.into_iter().map(|v| v as usize).collect())
                .collect();
            let mul = u64_matrix(required(map, "mul", "a table ring")?, "\"mul\"")?
                .into_iter()
                .map(|row| row.into_iter().map(|v| v as usize).collect())
                .collect();
            let zero = as_usize(required(map, "zero", "a table ring")?, "\"zero\"")?;
            let one = as_usize(required(map, "one", "a table ring")?, "\"one\"")?;
            Ok(RingSpec::Table {
                size,
                add,
                mul,
                zero,
                one,
            })
        }
        other => Err(document_error(format!("unknown ring kind \"{other}\""))),
    }
}

/// Parses a ring specification document and constructs the ring, running the
/// full validation (primality, irreducibility, or table axioms).
pub fn parse_ring(text: &str) -> Result<Ring> {
    let value: Value = serde_json::from_str(text)?;
    let spec = ring_spec_from_value(&value)?;
    Ok(Ring::from_spec(&spec)?)
}

fn ring_to_value(ring: &Ring) -> Value {
    serde_json::to_value(ring.spec()).expect("ring specifications serialize")
}

/// Prints a ring specification document in canonical form.
pub fn print_ring(ring: &Ring) -> String {
    ring_to_value(ring).to_string()
}

/// Parses a single ring element in its canonical encoding, as used for shift
/// arguments on the command line.
pub fn parse_element(ring: &Ring, text: &str) -> Result<RingElement> {
    let value: Value = serde_json::from_str(text)?;
    Ok(ring.element_from_json(&value)?)
}

/// Prints a single ring element in its canonical encoding.
pub fn print_element(ring: &Ring, element: &RingElement) -> String {
    ring.element_to_json(element).to_string()
}

fn alphabet_from_value(value: &Value) -> Result<Alphabet> {
    let symbols = as_array(value, "\"alphabet\"")?
        .iter()
        .map(|s| as_str(s, "each alphabet symbol").map(str::to_owned))
        .collect::<Result<Vec<String>>>()?;
    Alphabet::new(symbols)
}

fn alphabet_to_value(alphabet: &Alphabet) -> Value {
    Value::from(alphabet.symbols().map(Value::from).collect::<Vec<Value>>())
}

/// A state index written as a decimal object key; "01" and the like are not
/// canonical and are rejected.
fn state_key(key: &str, what: &str) -> Result<usize> {
    let parsed: Option<usize> = key.parse().ok();
    match parsed {
        Some(v) if v.to_string() == key => Ok(v),
        _ => Err(document_error(format!(
            "{what} key \"{key}\" is not a state index"
        ))),
    }
}

fn weight_map_from_value(
    ring: &Ring,
    value: &Value,
    what: &str,
) -> Result<Vec<(usize, RingElement)>> {
    let map = as_object(value, &format!("the \"{what}\" weights"))?;
    let mut out = Vec::with_capacity(map.len());
    for (key, weight) in map {
        let state = state_key(key, &format!("\"{what}\""))?;
        out.push((state, ring.element_from_json(weight)?));
    }
    Ok(out)
}

fn weight_map_to_value(ring: &Ring, weights: &std::collections::BTreeMap<usize, RingElement>) -> Value {
    let mut map = Map::new();
    for (state, weight) in weights {
        map.insert(state.to_string(), ring.element_to_json(weight));
    }
    Value::Object(map)
}

const AUTOMATON_KEYS: [&str; 6] = ["ring", "alphabet", "states", "initial", "final", "transitions"];

/// Parses a weighted automaton document, constructing and validating its ring
/// along the way.
pub fn parse_weighted_automaton(text: &str) -> Result<WeightedAutomaton> {
    let value: Value = serde_json::from_str(text)?;
    let map = as_object(&value, "a weighted automaton")?;
    reject_unknown_keys(map, &AUTOMATON_KEYS, "a weighted automaton")?;
    let ring = Ring::from_spec(&ring_spec_from_value(required(
        map,
        "ring",
        "a weighted automaton",
    )?)?)?;
    let alphabet = alphabet_from_value(required(map, "alphabet", "a weighted automaton")?)?;
    let states = as_usize(
        required(map, "states", "a weighted automaton")?,
        "\"states\"",
    )?;
    let initial = weight_map_from_value(
        &ring,
        required(map, "initial", "a weighted automaton")?,
        "initial",
    )?;
    let finals = weight_map_from_value(
        &ring,
        required(map, "final", "a weighted automaton")?,
        "final",
    )?;
    let mut transitions = Vec::new();
    for entry in as_array(
        required(map, "transitions", "a weighted automaton")?,
        "\"transitions\"",
    )? {
        let parts = as_array(entry, "each transition")?;
        if parts.len() != 4 {
            return Err(document_error(
                "each weighted transition must be [from, symbol, to, weight]",
            ));
        }
        transitions.push((
            as_usize(&parts[0], "a transition source")?,
            as_str(&parts[1], "a transition symbol")?.to_owned(),
            as_usize(&parts[2], "a transition target")?,
            ring.element_from_json(&parts[3])?,
        ));
    }
    WeightedAutomaton::new(ring, alphabet, states, initial, finals, transitions)
}

/// Prints a weighted automaton document in canonical form: keys in a fixed
/// order, weights ascending by state, transitions ascending by source then
/// symbol then target, zero weights omitted.
pub fn print_weighted_automaton(wa: &WeightedAutomaton) -> String {
    let ring = wa.ring();
    let mut map = Map::new();
    map.insert("ring".to_owned(), ring_to_value(ring));
    map.insert("alphabet".to_owned(), alphabet_to_value(wa.alphabet()));
    map.insert("states".to_owned(), Value::from(wa.states() as u64));
    map.insert(
        "initial".to_owned(),
        weight_map_to_value(ring, wa.initial_weights()),
    );
    map.insert(
        "final".to_owned(),
        weight_map_to_value(ring, wa.final_weights()),
    );
    let transitions: Vec<Value> = wa
        .transitions()
        .iter()
        .map(|(&(from, symbol, to), weight)| {
            Value::from(vec![
                Value::from(from as u64),
                Value::from(wa.alphabet().symbol(symbol)),
                Value::from(to as u64),
                ring.element_to_json(weight),
            ])
        })
        .collect();
    map.insert("transitions".to_owned(), Value::from(transitions));
    Value::Object(map).to_string()
}

const ACCEPTOR_KEYS: [&str; 5] = ["alphabet", "states", "initial", "final", "transitions"];
const DFA_KEYS: [&str; 6] = [
    "alphabet",
    "states",
    "complete",
    "initial",
    "final",
    "transitions",
];

struct AcceptorParts {
    alphabet: Alphabet,
    states: usize,
    initial: Vec<usize>,
    finals: Vec<usize>,
    transitions: Vec<(usize, String, usize)>,
}

fn acceptor_parts(map: &Map<String, Value>, what: &str) -> Result<AcceptorParts> {
    let alphabet = alphabet_from_value(required(map, "alphabet", what)?)?;
    let states = as_usize(required(map, "states", what)?, "\"states\"")?;
    let state_list = |key: &str| -> Result<Vec<usize>> {
        as_array(required(map, key, what)?, &format!("\"{key}\""))?
            .iter()
            .map(|v| as_usize(v, &format!("each \"{key}\" state")))
            .collect()
    };
    let initial = state_list("initial")?;
    let finals = state_list("final")?;
    let mut transitions = Vec::new();
    for entry in as_array(required(map, "transitions", what)?, "\"transitions\"")? {
        let parts = as_array(entry, "each transition")?;
        if parts.len() != 3 {
            return Err(document_error(
                "each acceptor transition must be [from, symbol, to]",
            ));
        }
        transitions.push((
            as_usize(&parts[0], "a transition source")?,
            as_str(&parts[1], "a transition symbol")?.to_owned(),
            as_usize(&parts[2], "a transition target")?,
        ));
    }
    Ok(AcceptorParts {
        alphabet,
        states,
        initial,
        finals,
        transitions,
    })
}

fn nfa_from_value(value: &Value) -> Result<Nfa> {
    let map = as_object(value, "an acceptor")?;
    reject_unknown_keys(map, &ACCEPTOR_KEYS, "an acceptor")?;
    let parts = acceptor_parts(map, "an acceptor")?;
    Nfa::new(
        parts.alphabet,
        parts.states,
        parts.initial,
        parts.finals,
        parts.transitions,
    )
}

/// Parses a nondeterministic acceptor document. The `complete` marker of
/// deterministic documents is rejected here; use [`parse_dfa`] for those.
pub fn parse_nfa(text: &str) -> Result<Nfa> {
    let value: Value = serde_json::from_str(text)?;
    nfa_from_value(&value)
}

fn nfa_to_value(nfa: &Nfa) -> Value {
    let mut map = Map::new();
    map.insert("alphabet".to_owned(), alphabet_to_value(nfa.alphabet()));
    map.insert("states".to_owned(), Value::from(nfa.states() as u64));
    let states = |set: &std::collections::BTreeSet<usize>| {
        Value::from(set.iter().map(|&q| Value::from(q as u64)).collect::<Vec<Value>>())
    };
    map.insert("initial".to_owned(), states(nfa.initial_states()));
    map.insert("final".to_owned(), states(nfa.final_states()));
    let transitions: Vec<Value> = nfa
        .transitions()
        .iter()
        .map(|&(from, symbol, to)| {
            Value::from(vec![
                Value::from(from as u64),
                Value::from(nfa.alphabet().symbol(symbol)),
                Value::from(to as u64),
            ])
        })
        .collect();
    map.insert("transitions".to_owned(), Value::from(transitions));
    Value::Object(map)
}

/// Prints a nondeterministic acceptor document in canonical form.
pub fn print_nfa(nfa: &Nfa) -> String {
    nfa_to_value(nfa).to_string()
}

/// Parses a complete deterministic acceptor document: `"complete":true` is
/// required, exactly one initial state, and a total deterministic transition
/// function.
pub fn parse_dfa(text: &str) -> Result<Dfa> {
    let value: Value = serde_json::from_str(text)?;
    let map = as_object(&value, "a deterministic acceptor")?;
    reject_unknown_keys(map, &DFA_KEYS, "a deterministic acceptor")?;
    match map.get("complete") {
        Some(Value::Bool(true)) => {}
        _ => return Err(Error::NotMarkedComplete),
    }
    let parts = acceptor_parts(map, "a deterministic acceptor")?;
    if parts.initial.len() != 1 {
        return Err(Error::NotOneInitial(parts.initial.len()));
    }
    Dfa::new(
        parts.alphabet,
        parts.states,
        parts.initial[0],
        parts.finals,
        parts.transitions,
    )
}

fn dfa_to_value(dfa: &Dfa) -> Value {
    let mut map = Map::new();
    map.insert("alphabet".to_owned(), alphabet_to_value(dfa.alphabet()));
    map.insert("states".to_owned(), Value::from(dfa.states() as u64));
    map.insert("complete".to_owned(), Value::from(true));
    map.insert(
        "initial".to_owned(),
        Value::from(vec![Value::from(dfa.initial_state() as u64)]),
    );
    map.insert(
        "final".to_owned(),
        Value::from(
            dfa.final_states()
                .iter()
                .map(|&q| Value::from(q as u64))
                .collect::<Vec<Value>>(),
        ),
    );
    let mut transitions = Vec::new();
    for from in 0..dfa.states() {
        for symbol in 0..dfa.alphabet().len() {
            transitions.push(Value::from(vec![
                Value::from(from as u64),
                Value::from(dfa.alphabet().symbol(symbol)),
                Value::from(dfa.step(from, symbol) as u64),
            ]));
        }
    }
    map.insert("transitions".to_owned(), Value::from(transitions));
    Value::Object(map)
}

/// Prints a complete deterministic acceptor document in canonical form.
pub fn print_dfa(dfa: &Dfa) -> String {
    dfa_to_value(dfa).to_string()
}

const DECOMPOSITION_KEYS: [&str; 2] = ["alphabet", "languages"];

/// Parses a decomposition document: a shared alphabet and a list of acceptor
/// documents, each of which must use that alphabet, be reversible, and have
/// exactly one initial state.
pub fn parse_decomposition(text: &str) -> Result<Decomposition> {
    let value: Value = serde_json::from_str(text)?;
    let map = as_object(&value, "a decomposition")?;
    reject_unknown_keys(map, &DECOMPOSITION_KEYS, "a decomposition")?;
    let alphabet = alphabet_from_value(required(map, "alphabet", "a decomposition")?)?;
    let members = as_array(
        required(map, "languages", "a decomposition")?,
        "\"languages\"",
    )?
    .iter()
    .map(nfa_from_value)
    .collect::<Result<Vec<Nfa>>>()?;
    Decomposition::new(alphabet, members)
}

/// Prints a decomposition document in canonical form.
pub fn print_decomposition(dec: &Decomposition) -> String {
    let mut map = Map::new();
    map.insert("alphabet".to_owned(), alphabet_to_value(dec.alphabet()));
    map.insert(
        "languages".to_owned(),
        Value::from(dec.members().iter().map(nfa_to_value).collect::<Vec<Value>>()),
    );
    Value::Object(map).to_string()
}
