//! Finite commutative rings with unity.
//!
//! A ring is presented structurally ([`RingSpec`]): integers modulo `n`, a
//! Galois field `GF(p^k)` given by an irreducible modulus polynomial, a finite
//! product of rings, or explicit addition/multiplication tables. Construction
//! validates the presentation — table rings get an exhaustive axiom check, a
//! Galois modulus gets an irreducibility check — so every [`Ring`] value in
//! circulation is a genuine nontrivial finite commutative ring.
//!
//! Elements use canonical encodings ([`RingElement`]): equality of encodings is
//! equality in the ring, which keeps vector and matrix deduplication in the
//! automata layers deterministic.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Default cap on the size of rings presented by explicit tables; axiom
/// validation is cubic in the size.
pub const DEFAULT_TABLE_LIMIT: usize = 256;

/// A structural presentation of a finite commutative ring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum RingSpec {
    /// Integers modulo `n`, with `n >= 2`.
    Zn { n: u64 },
    /// Galois field `GF(p^k)`: polynomials over `Z_p` modulo a monic
    /// irreducible polynomial of degree `k`, given as `k + 1` coefficients in
    /// ascending degree.
    Gf { p: u64, k: usize, modulus: Vec<u64> },
    /// Direct product of rings with componentwise operations.
    Product { factors: Vec<RingSpec> },
    /// Explicit operation tables over the carrier `{0, .., size - 1}`.
    Table {
        size: usize,
        add: Vec<Vec<usize>>,
        mul: Vec<Vec<usize>>,
        zero: usize,
        one: usize,
    },
}

impl RingSpec {
    pub fn zn(n: u64) -> Self {
        RingSpec::Zn { n }
    }
}

/// A canonical ring element encoding.
///
/// The variant used is fixed by the ring kind: `Int` for `zn`, `Poly`
/// (coefficients in ascending degree) for `gf`, `Tuple` for products, and
/// `Index` for table rings.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RingElement {
    Int(u64),
    Poly(Vec<u64>),
    Tuple(Vec<RingElement>),
    Index(usize),
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingElement::Int(v) => write!(f, "{v}"),
            RingElement::Index(v) => write!(f, "{v}"),
            RingElement::Poly(cs) => {
                write!(f, "[")?;
                for (i, c) in cs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, "]")
            }
            RingElement::Tuple(es) => {
                write!(f, "[")?;
                for (i, e) in es.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{e}")?;
                }
                write!(f, "]")
            }
        }
    }
}

/// Errors raised while validating a ring presentation.
#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum RingError {
    #[error("modulus must be at least 2, got {0}")]
    ModulusTooSmall(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    DegreeZero,
    #[error("modulus polynomial must have {expected} coefficients, got {got}")]
    BadModulusLength { expected: usize, got: usize },
    #[error("modulus coefficient {0} is out of range")]
    ModulusCoefficientOutOfRange(u64),
    #[error("modulus polynomial must be monic")]
    NotMonic,
    #[error("modulus polynomial is reducible (divisible by a degree-{0} polynomial)")]
    ReducibleModulus(usize),
    #[error("ring is trivial: zero equals one")]
    Trivial,
    #[error("product ring needs at least one factor")]
    EmptyProduct,
    #[error("table ring of size {size} exceeds the limit {limit}")]
    TableTooLarge { size: usize, limit: usize },
    #[error("malformed table: {0}")]
    TableShape(String),
    #[error("table violates ring axioms: {0}")]
    TableAxiom(String),
    #[error("{0} is not a canonical element of this ring")]
    NotAnElement(String),
}

#[derive(Debug, PartialEq, Eq)]
enum Repr {
    Zn {
        n: u64,
    },
    Gf {
        p: u64,
        k: usize,
        // k + 1 coefficients, monic.
        modulus: Vec<u64>,
    },
    Product {
        factors: Vec<Ring>,
    },
    Table {
        size: usize,
        add: Vec<Vec<usize>>,
        mul: Vec<Vec<usize>>,
        neg: Vec<usize>,
        zero: usize,
        one: usize,
    },
}

#[derive(Debug)]
struct Inner {
    spec: RingSpec,
    repr: Repr,
}

/// A validated nontrivial finite commutative ring with unity.
///
/// Cloning is cheap; the underlying presentation is shared. Two rings compare
/// equal when their specs are structurally identical.
#[derive(Debug, Clone)]
pub struct Ring {
    inner: Arc<Inner>,
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.spec == other.inner.spec
    }
}

impl Eq for Ring {}

impl Ring {
    /// Validates a spec and builds the ring. Table rings are capped at
    /// [`DEFAULT_TABLE_LIMIT`] elements.
    pub fn from_spec(spec: &RingSpec) -> Result<Self, RingError> {
        Self::from_spec_with_table_limit(spec, DEFAULT_TABLE_LIMIT)
    }

    /// As [`Ring::from_spec`], with an explicit cap for table carriers.
    pub fn from_spec_with_table_limit(spec: &RingSpec, limit: usize) -> Result<Self, RingError> {
        let repr = build_repr(spec, limit)?;
        Ok(Ring {
            inner: Arc::new(Inner {
                spec: spec.clone(),
                repr,
            }),
        })
    }

    /// The integers modulo `n`.
    pub fn zn(n: u64) -> Result<Self, RingError> {
        Self::from_spec(&RingSpec::Zn { n })
    }

    /// The two-element field, presented as `Z_2`.
    pub fn f2() -> Self {
        Self::zn(2).expect("Z_2 is a valid ring")
    }

    pub fn spec(&self) -> &RingSpec {
        &self.inner.spec
    }

    /// Number of elements.
    pub fn size(&self) -> u64 {
        fn size_of(repr: &Repr) -> u64 {
            match repr {
                Repr::Zn { n } => *n,
                Repr::Gf { p, k, .. } => p
                    .checked_pow(*k as u32)
                    .expect("ring size overflows u64"),
                Repr::Product { factors } => factors
                    .iter()
                    .map(|f| size_of(&f.inner.repr))
                    .try_fold(1u64, u64::checked_mul)
                    .expect("ring size overflows u64"),
                Repr::Table { size, .. } => *size as u64,
            }
        }
        size_of(&self.inner.repr)
    }

    /// A short human-readable label, e.g. `zn(6)` or `gf(2^2)`.
    pub fn describe(&self) -> String {
        fn describe_repr(repr: &Repr) -> String {
            match repr {
                Repr::Zn { n } => format!("zn({n})"),
                Repr::Gf { p, k, .. } => format!("gf({p}^{k})"),
                Repr::Product { factors } => {
                    let parts: Vec<String> =
                        factors.iter().map(|f| describe_repr(&f.inner.repr)).collect();
                    format!("product({})", parts.join(", "))
                }
                Repr::Table { size, .. } => format!("table({size})"),
            }
        }
        describe_repr(&self.inner.repr)
    }

    pub fn zero(&self) -> RingElement {
        match &self.inner.repr {
            Repr::Zn { .. } => RingElement::Int(0),
            Repr::Gf { k, .. } => RingElement::Poly(vec![0; *k]),
            Repr::Product { factors } => {
                RingElement::Tuple(factors.iter().map(Ring::zero).collect())
            }
            Repr::Table { zero, .. } => RingElement::Index(*zero),
        }
    }

    pub fn one(&self) -> RingElement {
        match &self.inner.repr {
            Repr::Zn { .. } => RingElement::Int(1),
            Repr::Gf { k, .. } => {
                let mut cs = vec![0; *k];
                cs[0] = 1;
                RingElement::Poly(cs)
            }
            Repr::Product { factors } => {
                RingElement::Tuple(factors.iter().map(Ring::one).collect())
            }
            Repr::Table { one, .. } => RingElement::Index(*one),
        }
    }

    pub fn is_zero(&self, a: &RingElement) -> bool {
        *a == self.zero()
    }

    /// Whether `a` is a canonical element of this ring.
    pub fn contains(&self, a: &RingElement) -> bool {
        match (&self.inner.repr, a) {
            (Repr::Zn { n }, RingElement::Int(v)) => v < n,
            (Repr::Gf { p, k, .. }, RingElement::Poly(cs)) => {
                cs.len() == *k && cs.iter().all(|c| c < p)
            }
            (Repr::Product { factors }, RingElement::Tuple(es)) => {
                es.len() == factors.len()
                    && factors.iter().zip(es).all(|(f, e)| f.contains(e))
            }
            (Repr::Table { size, .. }, RingElement::Index(i)) => i < size,
            _ => false,
        }
    }

    /// As [`Ring::contains`], but reporting the offending encoding.
    pub fn validate_element(&self, a: &RingElement) -> Result<(), RingError> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(RingError::NotAnElement(a.to_string()))
        }
    }

    fn expect_member(&self, a: &RingElement) {
        assert!(
            self.contains(a),
            "{a} is not an element of {}",
            self.describe()
        );
    }

    pub fn add(&self, a: &RingElement, b: &RingElement) -> RingElement {
        self.expect_member(a);
        self.expect_member(b);
        match (&self.inner.repr, a, b) {
            (Repr::Zn { n }, RingElement::Int(x), RingElement::Int(y)) => {
                RingElement::Int((x + y) % n)
            }
            (Repr::Gf { p, .. }, RingElement::Poly(xs), RingElement::Poly(ys)) => {
                RingElement::Poly(xs.iter().zip(ys).map(|(x, y)| (x + y) % p).collect())
            }
            (Repr::Product { factors }, RingElement::Tuple(xs), RingElement::Tuple(ys)) => {
                RingElement::Tuple(
                    factors
                        .iter()
                        .zip(xs.iter().zip(ys))
                        .map(|(f, (x, y))| f.add(x, y))
                        .collect(),
                )
            }
            (Repr::Table { add, .. }, RingElement::Index(i), RingElement::Index(j)) => {
                RingElement::Index(add[*i][*j])
            }
            _ => unreachable!("membership already checked"),
        }
    }

    pub fn mul(&self, a: &RingElement, b: &RingElement) -> RingElement {
        self.expect_member(a);
        self.expect_member(b);
        match (&self.inner.repr, a, b) {
            (Repr::Zn { n }, RingElement::Int(x), RingElement::Int(y)) => {
                RingElement::Int(((*x as u128 * *y as u128) % *n as u128) as u64)
            }
            (Repr::Gf { p, modulus, k }, RingElement::Poly(xs), RingElement::Poly(ys)) => {
                RingElement::Poly(poly_mul_mod(xs, ys, *p, modulus, *k))
            }
            (Repr::Product { factors }, RingElement::Tuple(xs), RingElement::Tuple(ys)) => {
                RingElement::Tuple(
                    factors
                        .iter()
                        .zip(xs.iter().zip(ys))
                        .map(|(f, (x, y))| f.mul(x, y))
                        .collect(),
                )
            }
            (Repr::Table { mul, .. }, RingElement::Index(i), RingElement::Index(j)) => {
                RingElement::Index(mul[*i][*j])
            }
            _ => unreachable!("membership already checked"),
        }
    }

    /// Additive inverse.
    pub fn neg(&self, a: &RingElement) -> RingElement {
        self.expect_member(a);
        match (&self.inner.repr, a) {
            (Repr::Zn { n }, RingElement::Int(x)) => RingElement::Int((n - x) % n),
            (Repr::Gf { p, .. }, RingElement::Poly(xs)) => {
                RingElement::Poly(xs.iter().map(|x| (p - x) % p).collect())
            }
            (Repr::Product { factors }, RingElement::Tuple(xs)) => RingElement::Tuple(
                factors.iter().zip(xs).map(|(f, x)| f.neg(x)).collect(),
            ),
            (Repr::Table { neg, .. }, RingElement::Index(i)) => RingElement::Index(neg[*i]),
            _ => unreachable!("membership already checked"),
        }
    }

    pub fn sub(&self, a: &RingElement, b: &RingElement) -> RingElement {
        self.add(a, &self.neg(b))
    }

    /// `base` raised to a nonnegative power, with `pow(_, 0) = 1`.
    pub fn pow(&self, base: &RingElement, exp: u64) -> RingElement {
        let mut acc = self.one();
        for _ in 0..exp {
            acc = self.mul(&acc, base);
        }
        acc
    }

    /// The image of a signed integer under the unique homomorphism from `Z`.
    pub fn int(&self, v: i64) -> RingElement {
        let one = self.one();
        let step = if v >= 0 { one.clone() } else { self.neg(&one) };
        let mut acc = self.zero();
        for _ in 0..v.unsigned_abs() {
            acc = self.add(&acc, &step);
        }
        acc
    }

    /// The least `n >= 1` with `n * 1 = 0`; exists because the ring is finite.
    pub fn characteristic(&self) -> u64 {
        let one = self.one();
        let mut acc = one.clone();
        let mut n = 1;
        while !self.is_zero(&acc) {
            acc = self.add(&acc, &one);
            n += 1;
        }
        n
    }

    /// Every element exactly once, in a deterministic order fixed per kind:
    /// `zn` and table rings count upward, `gf` counts with the constant
    /// coefficient as least significant digit, products are lexicographic in
    /// their factors.
    pub fn elements(&self) -> Vec<RingElement> {
        match &self.inner.repr {
            Repr::Zn { n } => (0..*n).map(RingElement::Int).collect(),
            Repr::Gf { p, k, .. } => {
                let size = p.pow(*k as u32);
                (0..size)
                    .map(|v| {
                        let mut cs = Vec::with_capacity(*k);
                        let mut rest = v;
                        for _ in 0..*k {
                            cs.push(rest % p);
                            rest /= p;
                        }
                        RingElement::Poly(cs)
                    })
                    .collect()
            }
            Repr::Product { factors } => {
                let mut out = vec![Vec::new()];
                for f in factors {
                    let mut next = Vec::with_capacity(out.len() * f.size() as usize);
                    for prefix in &out {
                        for e in f.elements() {
                            let mut tuple: Vec<RingElement> = prefix.clone();
                            tuple.push(e);
                            next.push(tuple);
                        }
                    }
                    out = next;
                }
                out.into_iter().map(RingElement::Tuple).collect()
            }
            Repr::Table { size, .. } => (0..*size).map(RingElement::Index).collect(),
        }
    }

    /// Parses a canonical element encoding from JSON. The shape depends on the
    /// ring kind: an integer for `zn` and table rings, an array of `k`
    /// coefficients for `gf`, an array of factor encodings for products.
    pub fn element_from_json(&self, value: &Value) -> Result<RingElement, RingError> {
        let bad = || RingError::NotAnElement(value.to_string());
        let element = match &self.inner.repr {
            Repr::Zn { .. } => RingElement::Int(value.as_u64().ok_or_else(bad)?),
            Repr::Table { .. } => {
                RingElement::Index(value.as_u64().ok_or_else(bad)? as usize)
            }
            Repr::Gf { .. } => {
                let items = value.as_array().ok_or_else(bad)?;
                let cs = items
                    .iter()
                    .map(|v| v.as_u64().ok_or_else(bad))
                    .collect::<Result<Vec<u64>, RingError>>()?;
                RingElement::Poly(cs)
            }
            Repr::Product { factors } => {
                let items = value.as_array().ok_or_else(bad)?;
                if items.len() != factors.len() {
                    return Err(bad());
                }
                RingElement::Tuple(
                    factors
                        .iter()
                        .zip(items)
                        .map(|(f, v)| f.element_from_json(v))
                        .collect::<Result<Vec<_>, _>>()?,
                )
            }
        };
        self.validate_element(&element)?;
        Ok(element)
    }

    /// The JSON form of a canonical element encoding.
    pub fn element_to_json(&self, element: &RingElement) -> Value {
        self.expect_member(element);
        match element {
            RingElement::Int(v) => Value::from(*v),
            RingElement::Index(v) => Value::from(*v as u64),
            RingElement::Poly(cs) => Value::from(cs.clone()),
            RingElement::Tuple(es) => {
                let factors = match &self.inner.repr {
                    Repr::Product { factors } => factors,
                    _ => unreachable!("membership already checked"),
                };
                Value::from(
                    factors
                        .iter()
                        .zip(es)
                        .map(|(f, e)| f.element_to_json(e))
                        .collect::<Vec<Value>>(),
                )
            }
        }
    }

    /// The smallest subring containing `{0, 1}` and `gens`, closed under
    /// addition, multiplication, and additive inverse; returned as a table
    /// ring together with its carrier inside this ring.
    pub fn generated_subring(&self, gens: &[RingElement]) -> Result<Subring, RingError> {
        for g in gens {
            self.validate_element(g)?;
        }
        let mut carrier: Vec<RingElement> = Vec::new();
        let mut seen: HashMap<RingElement, ()> = HashMap::new();
        let mut push = |e: RingElement, carrier: &mut Vec<RingElement>| {
            if !seen.contains_key(&e) {
                seen.insert(e.clone(), ());
                carrier.push(e);
            }
        };
        push(self.zero(), &mut carrier);
        push(self.one(), &mut carrier);
        for g in gens {
            push(g.clone(), &mut carrier);
        }
        loop {
            let snapshot = carrier.clone();
            for a in &snapshot {
                push(self.neg(a), &mut carrier);
                for b in &snapshot {
                    push(self.add(a, b), &mut carrier);
                    push(self.mul(a, b), &mut carrier);
                }
            }
            if carrier.len() == snapshot.len() {
                break;
            }
        }
        carrier.sort();
        let index: HashMap<&RingElement, usize> =
            carrier.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let size = carrier.len();
        let table = |op: &dyn Fn(&RingElement, &RingElement) -> RingElement| {
            carrier
                .iter()
                .map(|a| carrier.iter().map(|b| index[&op(a, b)]).collect())
                .collect::<Vec<Vec<usize>>>()
        };
        let spec = RingSpec::Table {
            size,
            add: table(&|a, b| self.add(a, b)),
            mul: table(&|a, b| self.mul(a, b)),
            zero: index[&self.zero()],
            one: index[&self.one()],
        };
        let ring = Ring::from_spec_with_table_limit(&spec, usize::MAX)?;
        Ok(Subring { ring, carrier })
    }
}

/// A generated subring: a table ring plus its carrier in the parent ring.
///
/// Index `i` of the table ring corresponds to `carrier[i]` in the parent.
#[derive(Debug, Clone)]
pub struct Subring {
    pub ring: Ring,
    pub carrier: Vec<RingElement>,
}

impl Subring {
    pub fn index_of(&self, parent_element: &RingElement) -> Option<usize> {
        self.carrier.iter().position(|e| e == parent_element)
    }
}

fn build_repr(spec: &RingSpec, limit: usize) -> Result<Repr, RingError> {
    match spec {
        RingSpec::Zn { n } => {
            if *n < 2 {
                return Err(RingError::ModulusTooSmall(*n));
            }
            Ok(Repr::Zn { n: *n })
        }
        RingSpec::Gf { p, k, modulus } => {
            if !is_prime(*p) {
                return Err(RingError::NotPrime(*p));
            }
            if *k == 0 {
                return Err(RingError::DegreeZero);
            }
            if modulus.len() != k + 1 {
                return Err(RingError::BadModulusLength {
                    expected: k + 1,
                    got: modulus.len(),
                });
            }
            if let Some(c) = modulus.iter().find(|c| **c >= *p) {
                return Err(RingError::ModulusCoefficientOutOfRange(*c));
            }
            if modulus[*k] != 1 {
                return Err(RingError::NotMonic);
            }
            if let Some(degree) = reducible_by(modulus, *p, *k) {
                return Err(RingError::ReducibleModulus(degree));
            }
            Ok(Repr::Gf {
                p: *p,
                k: *k,
                modulus: modulus.clone(),
            })
        }
        RingSpec::Product { factors } => {
            if factors.is_empty() {
                return Err(RingError::EmptyProduct);
            }
            let factors = factors
                .iter()
                .map(|f| Ring::from_spec_with_table_limit(f, limit))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Repr::Product { factors })
        }
        RingSpec::Table {
            size,
            add,
            mul,
            zero,
            one,
        } => build_table_repr(*size, add, mul, *zero, *one, limit),
    }
}

fn build_table_repr(
    size: usize,
    add: &[Vec<usize>],
    mul: &[Vec<usize>],
    zero: usize,
    one: usize,
    limit: usize,
) -> Result<Repr, RingError> {
    if size == 0 {
        return Err(RingError::TableShape("carrier is empty".into()));
    }
    if size > limit {
        return Err(RingError::TableTooLarge { size, limit });
    }
    for (name, table) in [("add", add), ("mul", mul)] {
        if table.len() != size {
            return Err(RingError::TableShape(format!(
                "{name} table has {} rows, expected {size}",
                table.len()
            )));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != size {
                return Err(RingError::TableShape(format!(
                    "{name} table row {i} has {} entries, expected {size}",
                    row.len()
                )));
            }
            if let Some(v) = row.iter().find(|v| **v >= size) {
                return Err(RingError::TableShape(format!(
                    "{name} table entry {v} is out of range"
                )));
            }
        }
    }
    if zero >= size || one >= size {
        return Err(RingError::TableShape(
            "zero/one index out of range".into(),
        ));
    }
    if zero == one {
        return Err(RingError::Trivial);
    }

    let fail = |msg: String| Err(RingError::TableAxiom(msg));

    for a in 0..size {
        if add[zero][a] != a || add[a][zero] != a {
            return fail(format!("declared zero is not an additive identity at {a}"));
        }
        if mul[one][a] != a || mul[a][one] != a {
            return fail(format!(
                "declared one is not a multiplicative identity at {a}"
            ));
        }
        if mul[zero][a] != zero || mul[a][zero] != zero {
            return fail(format!("zero is not absorbing at {a}"));
        }
    }
    let mut neg = vec![usize::MAX; size];
    for a in 0..size {
        match (0..size).find(|&b| add[a][b] == zero) {
            Some(b) => neg[a] = b,
            None => return fail(format!("{a} has no additive inverse")),
        }
    }
    for a in 0..size {
        for b in 0..size {
            if add[a][b] != add[b][a] {
                return fail(format!("addition is not commutative at ({a}, {b})"));
            }
            if mul[a][b] != mul[b][a] {
                return fail(format!("multiplication is not commutative at ({a}, {b})"));
            }
        }
    }
    for a in 0..size {
        for b in 0..size {
            for c in 0..size {
                if add[add[a][b]][c] != add[a][add[b][c]] {
                    return fail(format!("addition is not associative at ({a}, {b}, {c})"));
                }
                if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                    return fail(format!(
                        "multiplication is not associative at ({a}, {b}, {c})"
                    ));
                }
                if mul[a][add[b][c]] != add[mul[a][b]][mul[a][c]] {
                    return fail(format!("distributivity fails at ({a}, {b}, {c})"));
                }
            }
        }
    }

    Ok(Repr::Table {
        size,
        add: add.to_vec(),
        mul: mul.to_vec(),
        neg,
        zero,
        one,
    })
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Polynomial product modulo a monic modulus of degree `k`, coefficients in
/// `Z_p`, ascending degree, result truncated to `k` coefficients.
fn poly_mul_mod(xs: &[u64], ys: &[u64], p: u64, modulus: &[u64], k: usize) -> Vec<u64> {
    let mut prod = vec![0u64; 2 * k.max(1)];
    for (i, x) in xs.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in ys.iter().enumerate() {
            let term = (*x as u128 * *y as u128) % p as u128;
            prod[i + j] = ((prod[i + j] as u128 + term) % p as u128) as u64;
        }
    }
    // Reduce x^i for i >= k using x^k = -(m_0 + m_1 x + ... + m_{k-1} x^{k-1}).
    for i in (k..prod.len()).rev() {
        let c = prod[i];
        if c == 0 {
            continue;
        }
        prod[i] = 0;
        for (j, m) in modulus.iter().take(k).enumerate() {
            let sub = (c as u128 * *m as u128) % p as u128;
            let cur = prod[i - k + j] as u128;
            prod[i - k + j] = ((cur + p as u128 - sub % p as u128) % p as u128) as u64;
        }
    }
    prod.truncate(k);
    prod
}

/// Remainder of `a` divided by monic `b` over `Z_p`; both ascending degree.
fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let deg_b = b.len() - 1;
    let mut rem: Vec<u64> = a.to_vec();
    while rem.len() > deg_b {
        let lead = *rem.last().unwrap();
        let pos = rem.len() - 1 - deg_b;
        if lead != 0 {
            for (j, m) in b.iter().enumerate() {
                let sub = (lead as u128 * *m as u128) % p as u128;
                let cur = rem[pos + j] as u128;
                rem[pos + j] = ((cur + p as u128 - sub) % p as u128) as u64;
            }
        }
        rem.pop();
    }
    rem
}

/// Returns the degree of a monic proper divisor of `modulus` over `Z_p`, if
/// one of degree at most `k / 2` exists.
fn reducible_by(modulus: &[u64], p: u64, k: usize) -> Option<usize> {
    for degree in 1..=(k / 2) {
        let count = p.pow(degree as u32);
        for idx in 0..count {
            let mut divisor = Vec::with_capacity(degree + 1);
            let mut rest = idx;
            for _ in 0..degree {
                divisor.push(rest % p);
                rest /= p;
            }
            divisor.push(1);
            if poly_rem(modulus, &divisor, p).iter().all(|c| *c == 0) {
                return Some(degree);
            }
        }
    }
    None
}
