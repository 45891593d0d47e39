//! Finite multisets of primes and the divisor theories.
//!
//! The multiset `W(n)` holds each prime of `n` with its multiplicity. All
//! bordisms are closed, so gluing along the empty object is the disjoint
//! union, which exists only for multisets with no common prime. Fields on
//! `W(n)` are the sub-multisets, identified with the divisors of `n`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_integer::Integer;
use rand::{Rng, RngCore};
use serde_json::{json, Value};

use crate::engine::{ActionSystem, BordismModel, CylinderShape, FieldSystem};
use crate::error::{Error, Result};
use crate::fun::Key;
use crate::moncat::{Category, Mor};

/// Largest `n` accepted by the oracles.
pub const DIVISOR_LIMIT: u64 = 1_000_000;

/// Largest `n` drawn by the samplers.
const SAMPLE_LIMIT: u64 = 200;

/// `W(n)` as a map from primes to multiplicities.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Multiset(pub BTreeMap<u64, u32>);

impl Multiset {
    /// The prime multiset of `n ≥ 1`, by trial division.
    pub fn of(n: u64) -> Result<Multiset> {
        if n == 0 {
            return Err(Error::OutOfRange("0 has no prime multiset".into()));
        }
        let mut m = BTreeMap::new();
        let mut rest = n;
        let mut p = 2;
        while p * p <= rest {
            while rest.is_multiple_of(p) {
                *m.entry(p).or_insert(0) += 1;
                rest /= p;
            }
            p += 1;
        }
        if rest > 1 {
            *m.entry(rest).or_insert(0) += 1;
        }
        Ok(Multiset(m))
    }

    /// `n(W) = Π p^μ`.
    pub fn value(&self) -> u64 {
        self.0.iter().map(|(&p, &e)| p.pow(e)).product()
    }

    /// `Ω`: the number of elements counted with multiplicity.
    pub fn size(&self) -> u32 {
        self.0.values().sum()
    }

    /// The common sub-multiset.
    pub fn intersect(&self, other: &Multiset) -> Multiset {
        Multiset(self.0.iter().filter_map(|(p, &e)| other.0.get(p).map(|&f| (*p, e.min(f)))).collect())
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// All sub-multisets as divisors, ascending.
    pub fn divisors(&self) -> Vec<u64> {
        let mut out = vec![1u64];
        for (&p, &e) in &self.0 {
            let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
            for &d in &out {
                let mut x = d;
                for _ in 0..=e {
                    next.push(x);
                    x *= p;
                }
            }
            out = next;
        }
        out.sort_unstable();
        out
    }
}

/// The model of closed prime multisets.
#[derive(Clone, Debug, Default)]
pub struct MultisetModel;

impl MultisetModel {
    fn sample_n(&self, rng: &mut dyn RngCore) -> u64 {
        rng.gen_range(1..=SAMPLE_LIMIT)
    }
}

impl BordismModel for MultisetModel {
    type Bordism = Multiset;
    type Closed = ();
    type Homeo = ();

    fn name(&self) -> String {
        "prime-multiset".into()
    }

    fn incoming(&self, _: &Multiset) {}

    fn outgoing(&self, _: &Multiset) {}

    fn empty(&self) -> Multiset {
        Multiset(BTreeMap::new())
    }

    fn empty_closed(&self) {}

    fn disjoint(&self, a: &Multiset, b: &Multiset) -> Result<Multiset> {
        if !a.intersect(b).is_empty() {
            return Err(Error::InvalidBordism(format!("W({}) and W({}) share a prime", a.value(), b.value())));
        }
        Ok(Multiset(a.0.iter().chain(&b.0).map(|(&p, &e)| (p, e)).collect()))
    }

    fn disjoint_closed(&self, _: &(), _: &()) {}

    fn glue(&self, a: &Multiset, b: &Multiset) -> Result<Multiset> {
        self.disjoint(a, b)
    }

    fn cylinder(&self, _: &(), _: CylinderShape) -> Result<Multiset> {
        Ok(self.empty())
    }

    fn homeomorphisms(&self, a: &Multiset, b: &Multiset) -> Result<Vec<()>> {
        Ok(if a == b { vec![()] } else { Vec::new() })
    }

    fn identity_homeo(&self, _: &Multiset) {}

    fn compose_homeo(&self, _: &(), _: &()) {}

    fn scramble(&self, w: &Multiset, _: &mut dyn RngCore) -> (Multiset, ()) {
        (w.clone(), ())
    }

    fn relabel_boundary(&self, w: &Multiset, _: &[usize], _: &[usize]) -> Result<(Multiset, ())> {
        Ok((w.clone(), ()))
    }

    fn closed_size(&self, _: &()) -> usize {
        0
    }

    fn sample_bordism(&self, rng: &mut dyn RngCore) -> Multiset {
        Multiset::of(self.sample_n(rng)).expect("positive")
    }

    /// A random `n ≤ 200` split into two coprime parts.
    fn sample_glue_pair(&self, rng: &mut dyn RngCore) -> (Multiset, Multiset) {
        let w = self.sample_bordism(rng);
        let (mut a, mut b) = (BTreeMap::new(), BTreeMap::new());
        for (&p, &e) in &w.0 {
            if rng.gen_bool(0.5) {
                a.insert(p, e);
            } else {
                b.insert(p, e);
            }
        }
        (Multiset(a), Multiset(b))
    }

    fn sample_closed(&self, _: &mut dyn RngCore) {}

    fn sample_coboundary(&self, _: &(), rng: &mut dyn RngCore) -> Result<Multiset> {
        Ok(self.sample_bordism(rng))
    }

    fn render(&self, w: &Multiset) -> Value {
        json!({ "n": w.value() })
    }

    fn render_closed(&self, _: &()) -> Value {
        json!([])
    }
}

/// Sub-multisets of `W(n)`, keyed by the divisor they multiply to.
#[derive(Clone, Debug, Default)]
pub struct DivisorFields {
    model: MultisetModel,
}

impl DivisorFields {
    pub fn new() -> DivisorFields {
        DivisorFields { model: MultisetModel }
    }

    fn divisor(w: &Multiset, field: &Key) -> Result<u64> {
        let d = field.as_int().filter(|&d| d > 0).ok_or_else(|| Error::FieldNotOnBordism(format!("{field} is not a divisor")))? as u64;
        if !w.value().is_multiple_of(d) {
            return Err(Error::FieldNotOnBordism(format!("{d} does not divide {}", w.value())));
        }
        Ok(d)
    }
}

impl FieldSystem for DivisorFields {
    type Model = MultisetModel;

    fn model(&self) -> &MultisetModel {
        &self.model
    }

    fn name(&self) -> String {
        "sub-multisets".into()
    }

    fn fields_on_bordism(&self, w: &Multiset) -> Result<Vec<Key>> {
        Ok(w.divisors().into_iter().map(|d| Key::Int(d as i64)).collect())
    }

    fn fields_on_closed(&self, _: &()) -> Result<Vec<Key>> {
        Ok(vec![Key::unit()])
    }

    fn restrict_in(&self, w: &Multiset, field: &Key) -> Result<Key> {
        Self::divisor(w, field)?;
        Ok(Key::unit())
    }

    fn restrict_out(&self, w: &Multiset, field: &Key) -> Result<Key> {
        self.restrict_in(w, field)
    }

    fn split_disjoint(&self, a: &Multiset, b: &Multiset, field: &Key) -> Result<(Key, Key)> {
        let d = Self::divisor(&self.model.disjoint(a, b)?, field)?;
        Ok((Key::Int(d.gcd(&a.value()) as i64), Key::Int(d.gcd(&b.value()) as i64)))
    }

    fn join_disjoint(&self, a: &Multiset, b: &Multiset, fa: &Key, fb: &Key) -> Result<Key> {
        Ok(Key::Int((Self::divisor(a, fa)? * Self::divisor(b, fb)?) as i64))
    }

    fn split_closed(&self, _: &(), _: &(), _: &Key) -> Result<(Key, Key)> {
        Ok((Key::unit(), Key::unit()))
    }

    fn join_closed(&self, _: &(), _: &(), _: &Key, _: &Key) -> Result<Key> {
        Ok(Key::unit())
    }

    fn split_glue(&self, a: &Multiset, b: &Multiset, field: &Key) -> Result<(Key, Key)> {
        self.split_disjoint(a, b, field)
    }

    fn join_glue(&self, a: &Multiset, b: &Multiset, fa: &Key, fb: &Key) -> Result<Option<Key>> {
        self.join_disjoint(a, b, fa, fb).map(Some)
    }

    fn pullback(&self, _: &(), w: &Multiset, _: &Multiset, field: &Key) -> Result<Key> {
        Self::divisor(w, field)?;
        Ok(field.clone())
    }

    fn pullback_boundary(&self, _: &(), _: &Multiset, _: &Multiset, field: &Key) -> Result<Key> {
        Ok(field.clone())
    }

    fn subdivision_invariant(&self) -> bool {
        true
    }
}

/// The divisor action (trivial category) or the `Ω` action (integer monoid).
#[derive(Clone, Debug)]
pub struct DivisorAction {
    omega: bool,
    category: Arc<Category>,
}

impl DivisorAction {
    pub fn divisor() -> DivisorAction {
        DivisorAction { omega: false, category: Arc::new(Category::Trivial) }
    }

    pub fn omega() -> DivisorAction {
        DivisorAction { omega: true, category: Arc::new(Category::Integers) }
    }
}

impl ActionSystem<MultisetModel> for DivisorAction {
    fn category(&self) -> &Arc<Category> {
        &self.category
    }

    fn act(&self, w: &Multiset, field: &Key) -> Result<Mor> {
        let d = DivisorFields::divisor(w, field)?;
        Ok(if self.omega { Mor::Int(Multiset::of(d)?.size() as i64) } else { Mor::Star })
    }
}

fn check_range(n: u64) -> Result<()> {
    if n == 0 || n > DIVISOR_LIMIT {
        return Err(Error::OutOfRange(format!("n must lie in 1..={DIVISOR_LIMIT}, got {n}")));
    }
    Ok(())
}

/// `d(n)` by testing every candidate divisor.
pub fn divisor_count_oracle(n: u64) -> Result<u64> {
    check_range(n)?;
    Ok((1..=n).filter(|d| n.is_multiple_of(*d)).count() as u64)
}

/// `Ω` of `d` by repeated division by the smallest factor.
fn big_omega(mut d: u64) -> u32 {
    let mut count = 0;
    let mut p = 2;
    while d > 1 {
        if d.is_multiple_of(p) {
            d /= p;
            count += 1;
        } else {
            p += 1;
        }
    }
    count
}

/// The number of divisors of `n` with each value of `Ω`, i.e. the
/// coefficients of `Π (1 + x + … + x^{μᵢ})`, by brute force.
pub fn omega_poly_oracle(n: u64) -> Result<Vec<u64>> {
    check_range(n)?;
    let mut out: Vec<u64> = Vec::new();
    for d in (1..=n).filter(|d| n.is_multiple_of(*d)) {
        let k = big_omega(d) as usize;
        if out.len() <= k {
            out.resize(k + 1, 0);
        }
        out[k] += 1;
    }
    Ok(out)
}
