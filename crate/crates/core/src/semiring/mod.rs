//! Complete semirings with exact arithmetic.
//!
//! A [`Descriptor`] names a carrier; an [`Element`] is a value of some carrier.
//! Every operation checks that its arguments conform to the descriptor, so a
//! value of one carrier can never silently leak into another.
//!
//! Infinite sums are exposed in two finite forms: [`Descriptor::sum_family`]
//! for finite families and [`Descriptor::repeat`] for a constant family of
//! finite or infinite cardinality.

mod element;
mod laws;

pub use element::{Arctic, Ext};
pub use laws::{check_semiring_laws, Semiring};

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::report::LawReport;

/// Maximum nesting depth of matrix carriers accepted by [`Descriptor::validate`].
pub const MAX_MATRIX_DEPTH: usize = 2;

/// The carrier of a semiring.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawDescriptor", into = "RawDescriptor")]
pub enum Descriptor {
    /// `{0,1}` with join and meet.
    Boolean,
    /// Natural numbers with `∞`; `0·∞ = 0`.
    NatInf,
    /// Nonnegative rationals with `∞`; `0·∞ = 0`.
    RatInf,
    /// Nonnegative rationals with `∞`; sum is `min`, product is `+`.
    Tropical,
    /// Nonnegative rationals with `±∞`; sum is `max`, product is `+`.
    Arctic,
    /// Finite sets of words; sum is union, product is concatenation.
    Language { alphabet: Vec<char> },
    /// Binary relations on a finite base; sum is union, product is composition.
    Relation { base: Vec<String> },
    /// Square matrices over an inner carrier.
    Matrix { dim: usize, inner: Box<Descriptor> },
}

/// A value of some carrier. Payloads are canonical, so structural equality is
/// semantic equality.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Element {
    Bool(bool),
    Nat(Ext<BigUint>),
    Rat(Ext<BigRational>),
    Tropical(Ext<BigRational>),
    Arctic(Arctic),
    Language(BTreeSet<String>),
    /// Row-major `n×n` boolean matrix over the base set.
    Relation(Vec<bool>),
    /// Row-major `dim×dim` matrix of inner elements.
    Matrix(Vec<Element>),
}

/// Cardinality of a constant family: finite or countably infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Count {
    Fin(u64),
    Inf,
}

impl Element {
    pub fn nat(n: u64) -> Element {
        Element::Nat(Ext::Fin(BigUint::from(n)))
    }

    pub fn nat_inf() -> Element {
        Element::Nat(Ext::Inf)
    }

    pub fn rat(p: i64, q: i64) -> Element {
        Element::Rat(Ext::Fin(BigRational::new(BigInt::from(p), BigInt::from(q))))
    }

    pub fn tropical(p: i64, q: i64) -> Element {
        Element::Tropical(Ext::Fin(BigRational::new(BigInt::from(p), BigInt::from(q))))
    }

    pub fn arctic(p: i64, q: i64) -> Element {
        Element::Arctic(Arctic::Fin(BigRational::new(BigInt::from(p), BigInt::from(q))))
    }

    pub fn language<I, S>(words: I) -> Element
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Element::Language(words.into_iter().map(Into::into).collect())
    }

    /// A relation on a base of size `n` given by its pairs of indices.
    pub fn relation(n: usize, pairs: &[(usize, usize)]) -> Element {
        let mut bits = vec![false; n * n];
        for &(i, j) in pairs {
            bits[i * n + j] = true;
        }
        Element::Relation(bits)
    }

    fn tag(&self) -> &'static str {
        match self {
            Element::Bool(_) => "boolean",
            Element::Nat(_) => "nat-inf",
            Element::Rat(_) => "nonneg-rat-inf",
            Element::Tropical(_) => "tropical-min-plus",
            Element::Arctic(_) => "arctic-max-plus",
            Element::Language(_) => "formal-language",
            Element::Relation(_) => "binary-relation",
            Element::Matrix(_) => "matrix",
        }
    }
}

impl Descriptor {
    /// Parses a carrier name, using small default parameters for the
    /// parameterized carriers (`formal-language` over `{a,b}`,
    /// `binary-relation` over three points, `matrix` of dimension 2 over `nat-inf`).
    pub fn from_name(name: &str) -> Result<Descriptor> {
        let d = match name {
            "boolean" => Descriptor::Boolean,
            "nat-inf" => Descriptor::NatInf,
            "nonneg-rat-inf" => Descriptor::RatInf,
            "tropical-min-plus" => Descriptor::Tropical,
            "arctic-max-plus" => Descriptor::Arctic,
            "formal-language" => Descriptor::Language { alphabet: vec!['a', 'b'] },
            "binary-relation" => Descriptor::Relation { base: vec!["0".into(), "1".into(), "2".into()] },
            "matrix" => Descriptor::Matrix { dim: 2, inner: Box::new(Descriptor::NatInf) },
            other => return Err(Error::InvalidDescriptor(format!("unknown carrier `{other}`"))),
        };
        Ok(d)
    }

    pub fn carrier(&self) -> &'static str {
        match self {
            Descriptor::Boolean => "boolean",
            Descriptor::NatInf => "nat-inf",
            Descriptor::RatInf => "nonneg-rat-inf",
            Descriptor::Tropical => "tropical-min-plus",
            Descriptor::Arctic => "arctic-max-plus",
            Descriptor::Language { .. } => "formal-language",
            Descriptor::Relation { .. } => "binary-relation",
            Descriptor::Matrix { .. } => "matrix",
        }
    }

    /// Checks the descriptor invariants.
    pub fn validate(&self) -> Result<()> {
        self.validate_depth(0)
    }

    fn validate_depth(&self, depth: usize) -> Result<()> {
        match self {
            Descriptor::Language { alphabet } => {
                if alphabet.is_empty() {
                    return Err(Error::InvalidDescriptor("empty alphabet".into()));
                }
                let distinct: BTreeSet<_> = alphabet.iter().collect();
                if distinct.len() != alphabet.len() {
                    return Err(Error::InvalidDescriptor("repeated alphabet symbol".into()));
                }
                Ok(())
            }
            Descriptor::Relation { base } => {
                if base.is_empty() {
                    return Err(Error::InvalidDescriptor("empty relation base".into()));
                }
                let distinct: BTreeSet<_> = base.iter().collect();
                if distinct.len() != base.len() {
                    return Err(Error::InvalidDescriptor("repeated base point".into()));
                }
                Ok(())
            }
            Descriptor::Matrix { dim, inner } => {
                if *dim == 0 {
                    return Err(Error::InvalidDescriptor("matrix dimension must be at least 1".into()));
                }
                if depth + 1 > MAX_MATRIX_DEPTH {
                    return Err(Error::InvalidDescriptor(format!("matrix nesting deeper than {MAX_MATRIX_DEPTH}")));
                }
                inner.validate_depth(depth + 1)
            }
            _ => Ok(()),
        }
    }

    /// True when `a + a = a` for every element.
    pub fn is_idempotent(&self) -> bool {
        match self {
            Descriptor::NatInf | Descriptor::RatInf => false,
            Descriptor::Matrix { inner, .. } => inner.is_idempotent(),
            _ => true,
        }
    }

    /// True when the product is commutative.
    pub fn is_commutative(&self) -> bool {
        match self {
            Descriptor::Boolean | Descriptor::NatInf | Descriptor::RatInf | Descriptor::Tropical | Descriptor::Arctic => true,
            Descriptor::Language { alphabet } => alphabet.len() == 1,
            Descriptor::Relation { base } => base.len() == 1,
            Descriptor::Matrix { dim, inner } => *dim == 1 && inner.is_commutative(),
        }
    }

    pub fn zero(&self) -> Element {
        match self {
            Descriptor::Boolean => Element::Bool(false),
            Descriptor::NatInf => Element::Nat(Ext::Fin(BigUint::zero())),
            Descriptor::RatInf => Element::Rat(Ext::Fin(BigRational::zero())),
            Descriptor::Tropical => Element::Tropical(Ext::Inf),
            Descriptor::Arctic => Element::Arctic(Arctic::NegInf),
            Descriptor::Language { .. } => Element::Language(BTreeSet::new()),
            Descriptor::Relation { base } => Element::Relation(vec![false; base.len() * base.len()]),
            Descriptor::Matrix { dim, inner } => Element::Matrix(vec![inner.zero(); dim * dim]),
        }
    }

    pub fn one(&self) -> Element {
        match self {
            Descriptor::Boolean => Element::Bool(true),
            Descriptor::NatInf => Element::Nat(Ext::Fin(BigUint::one())),
            Descriptor::RatInf => Element::Rat(Ext::Fin(BigRational::one())),
            Descriptor::Tropical => Element::Tropical(Ext::Fin(BigRational::zero())),
            Descriptor::Arctic => Element::Arctic(Arctic::Fin(BigRational::zero())),
            Descriptor::Language { .. } => Element::Language(std::iter::once(String::new()).collect()),
            Descriptor::Relation { base } => {
                let n = base.len();
                Element::Relation((0..n * n).map(|i| i / n == i % n).collect())
            }
            Descriptor::Matrix { dim, inner } => {
                let n = *dim;
                Element::Matrix((0..n * n).map(|i| if i / n == i % n { inner.one() } else { inner.zero() }).collect())
            }
        }
    }

    pub fn is_zero(&self, a: &Element) -> bool {
        *a == self.zero()
    }

    /// Deep conformance check of a value against this carrier.
    pub fn conforms(&self, a: &Element) -> bool {
        let nonneg = |r: &BigRational| !r.is_negative();
        match (self, a) {
            (Descriptor::Boolean, Element::Bool(_)) => true,
            (Descriptor::NatInf, Element::Nat(_)) => true,
            (Descriptor::RatInf, Element::Rat(Ext::Fin(r))) => nonneg(r),
            (Descriptor::RatInf, Element::Rat(Ext::Inf)) => true,
            (Descriptor::Tropical, Element::Tropical(Ext::Fin(r))) => nonneg(r),
            (Descriptor::Tropical, Element::Tropical(Ext::Inf)) => true,
            (Descriptor::Arctic, Element::Arctic(Arctic::Fin(r))) => nonneg(r),
            (Descriptor::Arctic, Element::Arctic(_)) => true,
            (Descriptor::Language { alphabet }, Element::Language(words)) => {
                words.iter().all(|w| w.chars().all(|c| alphabet.contains(&c)))
            }
            (Descriptor::Relation { base }, Element::Relation(bits)) => bits.len() == base.len() * base.len(),
            (Descriptor::Matrix { dim, inner }, Element::Matrix(entries)) => {
                entries.len() == dim * dim && entries.iter().all(|e| inner.conforms(e))
            }
            _ => false,
        }
    }

    fn check(&self, a: &Element) -> Result<()> {
        if self.conforms(a) {
            Ok(())
        } else {
            Err(Error::DescriptorMismatch(format!("{} value used with {} carrier", a.tag(), self.carrier())))
        }
    }

    /// `a + b`.
    pub fn add(&self, a: &Element, b: &Element) -> Result<Element> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add_unchecked(a, b))
    }

    /// `a · b`.
    pub fn mul(&self, a: &Element, b: &Element) -> Result<Element> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul_unchecked(a, b))
    }

    fn add_unchecked(&self, a: &Element, b: &Element) -> Element {
        match (self, a, b) {
            (_, Element::Bool(x), Element::Bool(y)) => Element::Bool(*x || *y),
            (_, Element::Nat(x), Element::Nat(y)) => Element::Nat(element::ext_add(x, y)),
            (_, Element::Rat(x), Element::Rat(y)) => Element::Rat(element::ext_add(x, y)),
            (_, Element::Tropical(x), Element::Tropical(y)) => Element::Tropical(std::cmp::min(x, y).clone()),
            (_, Element::Arctic(x), Element::Arctic(y)) => Element::Arctic(std::cmp::max(x, y).clone()),
            (_, Element::Language(x), Element::Language(y)) => Element::Language(x.union(y).cloned().collect()),
            (_, Element::Relation(x), Element::Relation(y)) => {
                Element::Relation(x.iter().zip(y).map(|(p, q)| *p || *q).collect())
            }
            (Descriptor::Matrix { inner, .. }, Element::Matrix(x), Element::Matrix(y)) => {
                Element::Matrix(x.iter().zip(y).map(|(p, q)| inner.add_unchecked(p, q)).collect())
            }
            _ => unreachable!("conformance checked by caller"),
        }
    }

    fn mul_unchecked(&self, a: &Element, b: &Element) -> Element {
        match (self, a, b) {
            (_, Element::Bool(x), Element::Bool(y)) => Element::Bool(*x && *y),
            (_, Element::Nat(x), Element::Nat(y)) => Element::Nat(element::ext_mul(x, y)),
            (_, Element::Rat(x), Element::Rat(y)) => Element::Rat(element::ext_mul(x, y)),
            (_, Element::Tropical(x), Element::Tropical(y)) => Element::Tropical(match (x, y) {
                (Ext::Fin(p), Ext::Fin(q)) => Ext::Fin(p + q),
                _ => Ext::Inf,
            }),
            (_, Element::Arctic(x), Element::Arctic(y)) => Element::Arctic(element::arctic_mul(x, y)),
            (_, Element::Language(x), Element::Language(y)) => {
                let mut out = BTreeSet::new();
                for u in x {
                    for v in y {
                        out.insert(format!("{u}{v}"));
                    }
                }
                Element::Language(out)
            }
            (Descriptor::Relation { base }, Element::Relation(x), Element::Relation(y)) => {
                let n = base.len();
                let mut out = vec![false; n * n];
                for i in 0..n {
                    for k in 0..n {
                        if x[i * n + k] {
                            for j in 0..n {
                                out[i * n + j] |= y[k * n + j];
                            }
                        }
                    }
                }
                Element::Relation(out)
            }
            (Descriptor::Matrix { dim, inner }, Element::Matrix(x), Element::Matrix(y)) => {
                let n = *dim;
                let mut out = Vec::with_capacity(n * n);
                for i in 0..n {
                    for j in 0..n {
                        let mut acc = inner.zero();
                        for k in 0..n {
                            let t = inner.mul_unchecked(&x[i * n + k], &y[k * n + j]);
                            acc = inner.add_unchecked(&acc, &t);
                        }
                        out.push(acc);
                    }
                }
                Element::Matrix(out)
            }
            _ => unreachable!("conformance checked by caller"),
        }
    }

    /// The summation law on a finite family. The empty family sums to zero.
    pub fn sum_family(&self, family: &[Element]) -> Result<Element> {
        let mut acc = self.zero();
        for x in family {
            self.check(x)?;
            acc = self.add_unchecked(&acc, x);
        }
        Ok(acc)
    }

    /// The sum of `count` copies of `a`.
    pub fn repeat(&self, count: Count, a: &Element) -> Result<Element> {
        self.check(a)?;
        Ok(self.repeat_unchecked(count, a))
    }

    fn repeat_unchecked(&self, count: Count, a: &Element) -> Element {
        match (self, a) {
            (Descriptor::NatInf, Element::Nat(x)) => Element::Nat(element::ext_scale(count, x)),
            (Descriptor::RatInf, Element::Rat(x)) => Element::Rat(element::ext_scale(count, x)),
            (Descriptor::Matrix { inner, .. }, Element::Matrix(x)) => {
                Element::Matrix(x.iter().map(|e| inner.repeat_unchecked(count, e)).collect())
            }
            _ => {
                if count == Count::Fin(0) {
                    self.zero()
                } else {
                    a.clone()
                }
            }
        }
    }

    /// Draws a random element, biased toward the units and `∞` so that
    /// absorbing and saturating cases are exercised.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Element {
        let small_rat = |rng: &mut R| BigRational::new(BigInt::from(rng.gen_range(1..=6)), BigInt::from(rng.gen_range(1..=4)));
        match self {
            Descriptor::Boolean => Element::Bool(rng.gen_bool(0.5)),
            Descriptor::NatInf => match rng.gen_range(0..20) {
                0..=2 => Element::nat(0),
                3..=4 => Element::nat_inf(),
                5..=6 => Element::nat(1),
                _ => Element::nat(rng.gen_range(2..=6)),
            },
            Descriptor::RatInf => match rng.gen_range(0..20) {
                0..=2 => Element::rat(0, 1),
                3..=4 => Element::Rat(Ext::Inf),
                5..=6 => Element::rat(1, 1),
                _ => Element::Rat(Ext::Fin(small_rat(rng))),
            },
            Descriptor::Tropical => match rng.gen_range(0..20) {
                0..=2 => Element::Tropical(Ext::Inf),
                3..=5 => Element::tropical(0, 1),
                _ => Element::Tropical(Ext::Fin(small_rat(rng))),
            },
            Descriptor::Arctic => match rng.gen_range(0..20) {
                0..=2 => Element::Arctic(Arctic::NegInf),
                3..=4 => Element::Arctic(Arctic::PosInf),
                5..=7 => Element::arctic(0, 1),
                _ => Element::Arctic(Arctic::Fin(small_rat(rng))),
            },
            Descriptor::Language { alphabet } => {
                let count = rng.gen_range(0..=3);
                let mut words = BTreeSet::new();
                for _ in 0..count {
                    let len = rng.gen_range(0..=2);
                    let w: String = (0..len).map(|_| alphabet[rng.gen_range(0..alphabet.len())]).collect();
                    words.insert(w);
                }
                Element::Language(words)
            }
            Descriptor::Relation { base } => {
                let n = base.len();
                match rng.gen_range(0..10) {
                    0 => self.zero(),
                    1 => self.one(),
                    _ => Element::Relation((0..n * n).map(|_| rng.gen_bool(0.3)).collect()),
                }
            }
            Descriptor::Matrix { dim, inner } => match rng.gen_range(0..10) {
                0 => self.zero(),
                1 => self.one(),
                _ => Element::Matrix((0..dim * dim).map(|_| inner.sample(rng)).collect()),
            },
        }
    }

    /// Lossless JSON rendering: scalars become strings (`"inf"`, `"p/q"`),
    /// languages become word lists, relations become pair lists, matrices
    /// become nested arrays.
    pub fn render(&self, a: &Element) -> Value {
        match (self, a) {
            (_, Element::Bool(b)) => json!(if *b { "1" } else { "0" }),
            (_, Element::Nat(x)) => json!(element::render_ext(x)),
            (_, Element::Rat(x)) | (_, Element::Tropical(x)) => json!(element::render_ext(x)),
            (_, Element::Arctic(x)) => json!(x.to_string()),
            (_, Element::Language(words)) => json!(words.iter().collect::<Vec<_>>()),
            (Descriptor::Relation { base }, Element::Relation(bits)) => {
                let n = base.len();
                let pairs: Vec<Value> = (0..n * n)
                    .filter(|&i| bits[i])
                    .map(|i| json!([base[i / n], base[i % n]]))
                    .collect();
                Value::Array(pairs)
            }
            (Descriptor::Matrix { dim, inner }, Element::Matrix(entries)) => {
                let rows: Vec<Value> = entries
                    .chunks(*dim)
                    .map(|row| Value::Array(row.iter().map(|e| inner.render(e)).collect()))
                    .collect();
                Value::Array(rows)
            }
            (_, other) => json!(format!("{other:?}")),
        }
    }

    /// Inverse of [`Descriptor::render`].
    pub fn parse(&self, v: &Value) -> Result<Element> {
        let bad = || Error::Parse(format!("`{v}` is not a {} value", self.carrier()));
        let text = || v.as_str().map(str::to_string).or_else(|| v.as_u64().map(|n| n.to_string())).ok_or_else(bad);
        let out = match self {
            Descriptor::Boolean => match text()?.as_str() {
                "0" | "false" => Element::Bool(false),
                "1" | "true" => Element::Bool(true),
                _ => return Err(bad()),
            },
            Descriptor::NatInf => Element::Nat(element::parse_ext(&text()?, |s| s.parse::<BigUint>().ok()).ok_or_else(bad)?),
            Descriptor::RatInf => Element::Rat(element::parse_ext(&text()?, element::parse_rational).ok_or_else(bad)?),
            Descriptor::Tropical => Element::Tropical(element::parse_ext(&text()?, element::parse_rational).ok_or_else(bad)?),
            Descriptor::Arctic => Element::Arctic(text()?.parse::<Arctic>().map_err(|_| bad())?),
            Descriptor::Language { .. } => {
                let arr = v.as_array().ok_or_else(bad)?;
                let words: Option<BTreeSet<String>> = arr.iter().map(|w| w.as_str().map(str::to_string)).collect();
                Element::Language(words.ok_or_else(bad)?)
            }
            Descriptor::Relation { base } => {
                let n = base.len();
                let mut bits = vec![false; n * n];
                for pair in v.as_array().ok_or_else(bad)? {
                    let p = pair.as_array().filter(|p| p.len() == 2).ok_or_else(bad)?;
                    let idx = |x: &Value| x.as_str().and_then(|s| base.iter().position(|b| b == s));
                    let (i, j) = (idx(&p[0]).ok_or_else(bad)?, idx(&p[1]).ok_or_else(bad)?);
                    bits[i * n + j] = true;
                }
                Element::Relation(bits)
            }
            Descriptor::Matrix { dim, inner } => {
                let rows = v.as_array().filter(|r| r.len() == *dim).ok_or_else(bad)?;
                let mut entries = Vec::with_capacity(dim * dim);
                for row in rows {
                    let row = row.as_array().filter(|r| r.len() == *dim).ok_or_else(bad)?;
                    for e in row {
                        entries.push(inner.parse(e)?);
                    }
                }
                Element::Matrix(entries)
            }
        };
        self.check(&out)?;
        Ok(out)
    }
}

impl fmt::Display for Descriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Descriptor::Language { alphabet } => {
                write!(f, "formal-language({})", alphabet.iter().collect::<String>())
            }
            Descriptor::Relation { base } => write!(f, "binary-relation({})", base.join(",")),
            Descriptor::Matrix { dim, inner } => write!(f, "matrix({dim}, {inner})"),
            other => f.write_str(other.carrier()),
        }
    }
}

/// JSON shape of a descriptor: `{"carrier": "...", "alphabet": [...], "base": [...], "dim": n, "inner": {...}}`.
#[derive(Clone, Serialize, Deserialize)]
struct RawDescriptor {
    carrier: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    alphabet: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    base: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    inner: Option<Box<RawDescriptor>>,
}

impl TryFrom<RawDescriptor> for Descriptor {
    type Error = Error;

    fn try_from(raw: RawDescriptor) -> Result<Descriptor> {
        let d = match raw.carrier.as_str() {
            "formal-language" => {
                let alphabet = raw.alphabet.ok_or_else(|| Error::InvalidDescriptor("missing alphabet".into()))?;
                let mut chars = Vec::with_capacity(alphabet.len());
                for s in alphabet {
                    let mut it = s.chars();
                    match (it.next(), it.next()) {
                        (Some(c), None) => chars.push(c),
                        _ => return Err(Error::InvalidDescriptor(format!("alphabet symbol `{s}` is not a single character"))),
                    }
                }
                Descriptor::Language { alphabet: chars }
            }
            "binary-relation" => Descriptor::Relation {
                base: raw.base.ok_or_else(|| Error::InvalidDescriptor("missing base".into()))?,
            },
            "matrix" => Descriptor::Matrix {
                dim: raw.dim.ok_or_else(|| Error::InvalidDescriptor("missing dim".into()))?,
                inner: Box::new(Descriptor::try_from(*raw.inner.ok_or_else(|| Error::InvalidDescriptor("missing inner".into()))?)?),
            },
            name => Descriptor::from_name(name)?,
        };
        d.validate()?;
        Ok(d)
    }
}

impl From<Descriptor> for RawDescriptor {
    fn from(d: Descriptor) -> RawDescriptor {
        let mut raw = RawDescriptor { carrier: d.carrier().to_string(), alphabet: None, base: None, dim: None, inner: None };
        match d {
            Descriptor::Language { alphabet } => raw.alphabet = Some(alphabet.iter().map(|c| c.to_string()).collect()),
            Descriptor::Relation { base } => raw.base = Some(base),
            Descriptor::Matrix { dim, inner } => {
                raw.dim = Some(dim);
                raw.inner = Some(Box::new(RawDescriptor::from(*inner)));
            }
            _ => {}
        }
        raw
    }
}

impl Semiring for Descriptor {
    type Elem = Element;

    fn zero(&self) -> Element {
        Descriptor::zero(self)
    }

    fn one(&self) -> Element {
        Descriptor::one(self)
    }

    fn add(&self, a: &Element, b: &Element) -> Result<Element> {
        Descriptor::add(self, a, b)
    }

    fn mul(&self, a: &Element, b: &Element) -> Result<Element> {
        Descriptor::mul(self, a, b)
    }

    fn sum(&self, family: &[Element]) -> Result<Element> {
        self.sum_family(family)
    }

    fn render(&self, a: &Element) -> Value {
        Descriptor::render(self, a)
    }
}

/// `a + b` in the carrier `desc`.
pub fn sr_add(desc: &Descriptor, a: &Element, b: &Element) -> Result<Element> {
    desc.add(a, b)
}

/// `a · b` in the carrier `desc`.
pub fn sr_mul(desc: &Descriptor, a: &Element, b: &Element) -> Result<Element> {
    desc.mul(a, b)
}

/// The summation law of `desc` on a finite family.
pub fn sr_sum_family(desc: &Descriptor, family: &[Element]) -> Result<Element> {
    desc.sum_family(family)
}

/// The sum of `count` copies of `a`.
pub fn sr_repeat(desc: &Descriptor, count: Count, a: &Element) -> Result<Element> {
    desc.repeat(count, a)
}

/// Randomized law suite for a built-in carrier: the generic semiring and
/// complete-monoid laws plus additivity of [`Descriptor::repeat`].
pub fn sr_check_laws(desc: &Descriptor, sample_count: usize, seed: u64) -> LawReport {
    let mut report = LawReport::new(format!("semiring {desc}"));
    if let Err(err) = desc.validate() {
        report.record("descriptor-valid", false, || json!({ "error": err.to_string() }));
        return report;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    check_semiring_laws(desc, sample_count, &mut rng, |r: &mut ChaCha8Rng| desc.sample(r), &mut report);
    for _ in 0..sample_count {
        let a = desc.sample(&mut rng);
        let m = rng.gen_range(0..=5u64);
        let n = rng.gen_range(0..=5u64);
        let lhs = desc.repeat(Count::Fin(m + n), &a);
        let rhs = desc.repeat(Count::Fin(m), &a).and_then(|x| desc.repeat(Count::Fin(n), &a).and_then(|y| desc.add(&x, &y)));
        let by_sum = desc.sum_family(&vec![a.clone(); (m + n) as usize]);
        let ok = matches!((&lhs, &rhs, &by_sum), (Ok(l), Ok(r), Ok(s)) if l == r && l == s);
        report.record("repeat-additivity", ok, || json!({ "a": desc.render(&a), "m": m, "n": n }));
        let inf = desc.repeat(Count::Inf, &a);
        let absorbs = match (&inf, desc.repeat(Count::Fin(m), &a)) {
            (Ok(i), Ok(fin)) => desc.add(i, &fin).map(|s| s == *i).unwrap_or(false),
            _ => false,
        };
        report.record("repeat-infinite-absorbs", absorbs, || json!({ "a": desc.render(&a), "m": m }));
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_examples_add_mul() {
        assert_eq!(Descriptor::Boolean.add(&Element::Bool(true), &Element::Bool(true)).unwrap(), Element::Bool(true));
        assert_eq!(Descriptor::NatInf.add(&Element::nat(7), &Element::nat_inf()).unwrap(), Element::nat_inf());
        assert_eq!(
            Descriptor::Tropical.add(&Element::tropical(5, 1), &Element::tropical(3, 1)).unwrap(),
            Element::tropical(3, 1)
        );
        assert_eq!(Descriptor::NatInf.mul(&Element::nat(0), &Element::nat_inf()).unwrap(), Element::nat(0));
        let lang = Descriptor::Language { alphabet: vec!['a', 'b', 'c', 'd'] };
        assert_eq!(
            lang.mul(&Element::language(["ab"]), &Element::language(["c", "d"])).unwrap(),
            Element::language(["abc", "abd"])
        );
        let rel = Descriptor::Relation { base: vec!["1".into(), "2".into()] };
        assert_eq!(
            rel.mul(&Element::relation(2, &[(0, 1)]), &Element::relation(2, &[(1, 0)])).unwrap(),
            Element::relation(2, &[(0, 0)])
        );
    }

    #[test]
    fn spec_examples_sums_and_repeat() {
        assert_eq!(Descriptor::Boolean.sum_family(&[]).unwrap(), Element::Bool(false));
        let fam = [Element::tropical(5, 1), Element::tropical(3, 1), Element::tropical(7, 1)];
        assert_eq!(Descriptor::Tropical.sum_family(&fam).unwrap(), Element::tropical(3, 1));
        assert_eq!(Descriptor::NatInf.sum_family(&vec![Element::nat(1); 4]).unwrap(), Element::nat(4));
        assert_eq!(Descriptor::Boolean.repeat(Count::Inf, &Element::Bool(true)).unwrap(), Element::Bool(true));
        assert_eq!(Descriptor::NatInf.repeat(Count::Inf, &Element::nat(0)).unwrap(), Element::nat(0));
        assert_eq!(Descriptor::NatInf.repeat(Count::Fin(3), &Element::nat(2)).unwrap(), Element::nat(6));
        assert_eq!(Descriptor::Tropical.repeat(Count::Fin(0), &Element::tropical(2, 1)).unwrap(), Element::Tropical(Ext::Inf));
        assert_eq!(Descriptor::Arctic.repeat(Count::Fin(0), &Element::arctic(2, 1)).unwrap(), Element::Arctic(Arctic::NegInf));
    }

    #[test]
    fn mismatch_is_an_error() {
        let err = Descriptor::Boolean.add(&Element::Bool(true), &Element::nat(1)).unwrap_err();
        assert!(matches!(err, Error::DescriptorMismatch(_)));
        let neg = Element::Rat(Ext::Fin(BigRational::from_integer(BigInt::from(-1))));
        assert!(Descriptor::RatInf.add(&neg, &Element::rat(1, 1)).is_err());
    }

    #[test]
    fn rationals_are_lowest_terms() {
        assert_eq!(Element::rat(2, 4), Element::rat(1, 2));
        let sum = Descriptor::RatInf.add(&Element::rat(1, 3), &Element::rat(1, 6)).unwrap();
        assert_eq!(Descriptor::RatInf.render(&sum), json!("1/2"));
    }

    #[test]
    fn descriptor_json_round_trip() {
        let d = Descriptor::Matrix { dim: 2, inner: Box::new(Descriptor::Language { alphabet: vec!['x', 'y'] }) };
        let text = serde_json::to_string(&d).unwrap();
        let back: Descriptor = serde_json::from_str(&text).unwrap();
        assert_eq!(d, back);
        let deep = r#"{"carrier":"matrix","dim":1,"inner":{"carrier":"matrix","dim":1,"inner":{"carrier":"matrix","dim":1,"inner":{"carrier":"boolean"}}}}"#;
        assert!(serde_json::from_str::<Descriptor>(deep).is_err());
        assert!(serde_json::from_str::<Descriptor>(r#"{"carrier":"formal-language","alphabet":[]}"#).is_err());
    }

    #[test]
    fn element_render_parse_round_trip() {
        let descs = [
            Descriptor::Boolean,
            Descriptor::NatInf,
            Descriptor::RatInf,
            Descriptor::Tropical,
            Descriptor::Arctic,
            Descriptor::Language { alphabet: vec!['a', 'b'] },
            Descriptor::Relation { base: vec!["p".into(), "q".into()] },
            Descriptor::Matrix { dim: 2, inner: Box::new(Descriptor::RatInf) },
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for d in &descs {
            for _ in 0..50 {
                let a = d.sample(&mut rng);
                assert_eq!(d.parse(&d.render(&a)).unwrap(), a, "{d}");
            }
        }
    }

    #[test]
    fn boolean_and_relation_suites_pass() {
        assert!(sr_check_laws(&Descriptor::Boolean, 100, 0).passed());
        let rel = Descriptor::Relation { base: vec!["a".into(), "b".into(), "c".into()] };
        assert!(sr_check_laws(&rel, 100, 0).passed());
    }
}
