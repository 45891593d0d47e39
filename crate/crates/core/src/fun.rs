//! Function semialgebras `Fun_S(A)` over finite ground sets.
//!
//! A [`FunVector`] is a sparse map from the keys of a [`GroundSet`] to a
//! semiring, with implicit zero. Products of ground sets are flattened, so
//! `(A×B)×C` and `A×(B×C)` are the same ground set with keys `(a,b,c)`; the
//! associator is the identity on flattened keys. The functional tensor product
//! of `Fun(A)` and `Fun(B)` is `Fun(A×B)` itself.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::ser::{Serialize, SerializeSeq, Serializer};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::report::LawReport;
use crate::semiring::{Descriptor, Semiring};

/// Maximum number of factors in a product ground set.
pub const MAX_FACTORS: usize = 4;

/// An opaque, totally ordered key.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Key {
    Int(i64),
    Str(String),
    Tuple(Vec<Key>),
}

impl Key {
    pub fn unit() -> Key {
        Key::Tuple(Vec::new())
    }

    pub fn pair(a: Key, b: Key) -> Key {
        Key::Tuple(vec![a, b])
    }

    pub fn ints(values: &[i64]) -> Key {
        Key::Tuple(values.iter().map(|&v| Key::Int(v)).collect())
    }

    pub fn as_tuple(&self) -> Option<&[Key]> {
        match self {
            Key::Tuple(items) => Some(items),
            _ => None,
        }
    }

    pub fn as_int(&self) -> Option<i64> {
        match self {
            Key::Int(v) => Some(*v),
            _ => None,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Key::Int(v) => json!(v),
            Key::Str(s) => json!(s),
            Key::Tuple(items) => Value::Array(items.iter().map(Key::to_json).collect()),
        }
    }

    /// Inverse of [`Key::to_json`] for integers, strings and arrays.
    pub fn from_json(v: &Value) -> Result<Key> {
        match v {
            Value::Number(n) => n.as_i64().map(Key::Int).ok_or_else(|| Error::Parse(format!("key `{v}` is not an integer"))),
            Value::String(s) => Ok(Key::Str(s.clone())),
            Value::Array(items) => Ok(Key::Tuple(items.iter().map(Key::from_json).collect::<Result<_>>()?)),
            other => Err(Error::Parse(format!("`{other}` is not a key"))),
        }
    }
}

impl fmt::Display for Key {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_json())
    }
}

impl Serialize for Key {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Key::Int(v) => serializer.serialize_i64(*v),
            Key::Str(s) => serializer.serialize_str(s),
            Key::Tuple(items) => {
                let mut seq = serializer.serialize_seq(Some(items.len()))?;
                for item in items {
                    seq.serialize_element(item)?;
                }
                seq.end()
            }
        }
    }
}

/// A finite ordered set of distinct keys, possibly the product of atomic factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroundSet {
    /// Sorted keys of an atomic set; empty for products.
    atoms: Vec<Key>,
    /// Atomic factors of a product; empty for atomic sets.
    factors: Vec<Arc<GroundSet>>,
}

impl GroundSet {
    /// An atomic ground set. Keys are sorted; duplicates are rejected.
    pub fn atoms(keys: impl IntoIterator<Item = Key>) -> Result<Arc<GroundSet>> {
        let mut atoms: Vec<Key> = keys.into_iter().collect();
        atoms.sort();
        if atoms.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::ShapeMismatch("ground-set keys must be distinct".into()));
        }
        Ok(Arc::new(GroundSet { atoms, factors: Vec::new() }))
    }

    /// `{0, …, n-1}` as integer keys.
    pub fn range(n: usize) -> Arc<GroundSet> {
        Arc::new(GroundSet { atoms: (0..n as i64).map(Key::Int).collect(), factors: Vec::new() })
    }

    /// The one-point set `{()}`.
    pub fn point() -> Arc<GroundSet> {
        Arc::new(GroundSet { atoms: vec![Key::unit()], factors: Vec::new() })
    }

    /// The cartesian product, flattened left-associatively.
    pub fn product(parts: &[Arc<GroundSet>]) -> Result<Arc<GroundSet>> {
        let mut factors = Vec::new();
        for p in parts {
            if p.is_product() {
                factors.extend(p.factors.iter().cloned());
            } else {
                factors.push(p.clone());
            }
        }
        if factors.len() < 2 || factors.len() > MAX_FACTORS {
            return Err(Error::ShapeMismatch(format!("a product needs 2 to {MAX_FACTORS} factors, got {}", factors.len())));
        }
        Ok(Arc::new(GroundSet { atoms: Vec::new(), factors }))
    }

    pub fn is_product(&self) -> bool {
        !self.factors.is_empty()
    }

    /// Number of factors; 1 for an atomic set.
    pub fn arity(&self) -> usize {
        if self.is_product() {
            self.factors.len()
        } else {
            1
        }
    }

    /// The factors of a product, or `None` for an atomic set.
    pub fn factors(&self) -> Option<&[Arc<GroundSet>]> {
        if self.is_product() {
            Some(&self.factors)
        } else {
            None
        }
    }

    pub fn len(&self) -> usize {
        if self.is_product() {
            self.factors.iter().map(|f| f.len()).product()
        } else {
            self.atoms.len()
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, key: &Key) -> bool {
        if self.is_product() {
            match key {
                Key::Tuple(items) if items.len() == self.factors.len() => {
                    items.iter().zip(&self.factors).all(|(k, f)| f.contains(k))
                }
                _ => false,
            }
        } else {
            self.atoms.binary_search(key).is_ok()
        }
    }

    /// All keys in lexicographic order.
    pub fn keys(&self) -> Vec<Key> {
        if !self.is_product() {
            return self.atoms.clone();
        }
        let mut out: Vec<Vec<Key>> = vec![Vec::new()];
        for f in &self.factors {
            let fk = f.keys();
            let mut next = Vec::with_capacity(out.len() * fk.len());
            for prefix in &out {
                for k in &fk {
                    let mut t = prefix.clone();
                    t.push(k.clone());
                    next.push(t);
                }
            }
            out = next;
        }
        out.into_iter().map(Key::Tuple).collect()
    }

    fn same(a: &Arc<GroundSet>, b: &Arc<GroundSet>) -> bool {
        Arc::ptr_eq(a, b) || a == b
    }
}

/// Pointwise operation selector for [`fv_pointwise`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pointwise {
    Add,
    Mul,
}

/// A finitely supported function from a ground set to a semiring. Only
/// nonzero values are stored.
#[derive(Clone, Debug, PartialEq)]
pub struct FunVector<V> {
    ground: Arc<GroundSet>,
    values: BTreeMap<Key, V>,
}

impl<V: Clone + PartialEq + fmt::Debug> FunVector<V> {
    /// The zero vector.
    pub fn zero(ground: Arc<GroundSet>) -> Self {
        FunVector { ground, values: BTreeMap::new() }
    }

    /// Builds a vector from `(key, value)` pairs; repeated keys are summed.
    pub fn from_pairs<S: Semiring<Elem = V>>(s: &S, ground: Arc<GroundSet>, pairs: impl IntoIterator<Item = (Key, V)>) -> Result<Self> {
        let mut v = FunVector::zero(ground);
        for (k, x) in pairs {
            v.accumulate(s, k, &x)?;
        }
        Ok(v)
    }

    /// The characteristic vector of `keys` scaled by `value`.
    pub fn indicator<S: Semiring<Elem = V>>(s: &S, ground: Arc<GroundSet>, keys: &[Key], value: V) -> Result<Self> {
        FunVector::from_pairs(s, ground, keys.iter().map(|k| (k.clone(), value.clone())))
    }

    pub fn ground(&self) -> &Arc<GroundSet> {
        &self.ground
    }

    pub fn get(&self, key: &Key) -> Option<&V> {
        self.values.get(key)
    }

    /// The value at `key`, zero when unstored.
    pub fn value<S: Semiring<Elem = V>>(&self, s: &S, key: &Key) -> V {
        self.values.get(key).cloned().unwrap_or_else(|| s.zero())
    }

    /// Nonzero entries in key order.
    pub fn support(&self) -> impl Iterator<Item = (&Key, &V)> {
        self.values.iter()
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    /// Stores `value` at `key`, replacing the previous value.
    pub fn set<S: Semiring<Elem = V>>(&mut self, s: &S, key: Key, value: V) -> Result<()> {
        if !self.ground.contains(&key) {
            return Err(Error::GroundSetMismatch(format!("key {key} is not in the ground set")));
        }
        if s.is_zero(&value) {
            self.values.remove(&key);
        } else {
            self.values.insert(key, value);
        }
        Ok(())
    }

    /// Adds `value` to the entry at `key`.
    pub fn accumulate<S: Semiring<Elem = V>>(&mut self, s: &S, key: Key, value: &V) -> Result<()> {
        let next = match self.values.get(&key) {
            Some(old) => s.add(old, value)?,
            None => value.clone(),
        };
        self.set(s, key, next)
    }

    /// Re-indexes the vector over a new ground set through an injective key map.
    pub fn rekey(&self, ground: Arc<GroundSet>, map: impl Fn(&Key) -> Result<Key>) -> Result<Self> {
        let mut values = BTreeMap::new();
        for (k, v) in &self.values {
            let nk = map(k)?;
            if !ground.contains(&nk) {
                return Err(Error::MapOutOfRange(format!("{nk}")));
            }
            if values.insert(nk.clone(), v.clone()).is_some() {
                return Err(Error::ShapeMismatch(format!("re-keying collides at {nk}")));
            }
        }
        Ok(FunVector { ground, values })
    }

    /// JSON rendering as `[[key, value], ...]`.
    pub fn to_json(&self, render: impl Fn(&V) -> Value) -> Value {
        Value::Array(self.values.iter().map(|(k, v)| json!([k.to_json(), render(v)])).collect())
    }
}

fn check_same_ground<V>(f: &FunVector<V>, g: &FunVector<V>) -> Result<()> {
    if GroundSet::same(&f.ground, &g.ground) {
        Ok(())
    } else {
        Err(Error::GroundSetMismatch("operands live on different ground sets".into()))
    }
}

/// Pointwise sum or product.
pub fn fv_pointwise<S: Semiring>(s: &S, kind: Pointwise, f: &FunVector<S::Elem>, g: &FunVector<S::Elem>) -> Result<FunVector<S::Elem>> {
    check_same_ground(f, g)?;
    let mut out = FunVector::zero(f.ground.clone());
    match kind {
        Pointwise::Add => {
            out.values = f.values.clone();
            for (k, v) in &g.values {
                out.accumulate(s, k.clone(), v)?;
            }
        }
        Pointwise::Mul => {
            for (k, a) in &f.values {
                if let Some(b) = g.values.get(k) {
                    out.set(s, k.clone(), s.mul(a, b)?)?;
                }
            }
        }
    }
    Ok(out)
}

/// `Fun(φ)(g) = g ∘ φ` for a map `φ: domain → g.ground`.
pub fn fv_pullback<V: Clone + PartialEq + fmt::Debug>(domain: &Arc<GroundSet>, map: impl Fn(&Key) -> Result<Key>, g: &FunVector<V>) -> Result<FunVector<V>> {
    let mut out = FunVector::zero(domain.clone());
    for a in domain.keys() {
        let b = map(&a)?;
        if !g.ground.contains(&b) {
            return Err(Error::MapOutOfRange(format!("{a} maps to {b}, outside the target ground set")));
        }
        if let Some(v) = g.values.get(&b) {
            out.values.insert(a, v.clone());
        }
    }
    Ok(out)
}

fn flatten(k: &Key, arity: usize) -> Vec<Key> {
    match k {
        Key::Tuple(items) if arity > 1 => items.clone(),
        other => vec![other.clone()],
    }
}

/// `(f ⊗̂ g)(a,b) = f(a)·g(b)` on the flattened product ground set.
pub fn fv_tensor<S: Semiring>(s: &S, f: &FunVector<S::Elem>, g: &FunVector<S::Elem>) -> Result<FunVector<S::Elem>> {
    let ground = GroundSet::product(&[f.ground.clone(), g.ground.clone()])?;
    let (fa, ga) = (f.ground.arity(), g.ground.arity());
    let mut out = FunVector::zero(ground);
    for (a, x) in &f.values {
        for (b, y) in &g.values {
            let mut key = flatten(a, fa);
            key.extend(flatten(b, ga));
            let v = s.mul(x, y)?;
            if !s.is_zero(&v) {
                out.values.insert(Key::Tuple(key), v);
            }
        }
    }
    Ok(out)
}

/// `γ(F)(a,c) = Σ_b F(a,b,b,c)` for `F` on `A×B×B×C`.
pub fn fv_contract<S: Semiring>(s: &S, big: &FunVector<S::Elem>) -> Result<FunVector<S::Elem>> {
    let factors = big.ground.factors().filter(|f| f.len() == 4).ok_or_else(|| {
        Error::ShapeMismatch("contraction needs a four-factor ground set A×B×B×C".into())
    })?;
    if !GroundSet::same(&factors[1], &factors[2]) {
        return Err(Error::ShapeMismatch("the two middle factors differ".into()));
    }
    let ground = GroundSet::product(&[factors[0].clone(), factors[3].clone()])?;
    let mut out = FunVector::zero(ground);
    for (k, v) in &big.values {
        let items = k.as_tuple().expect("product keys are tuples");
        if items[1] == items[2] {
            out.accumulate(s, Key::pair(items[0].clone(), items[3].clone()), v)?;
        }
    }
    Ok(out)
}

/// `⟨f,g⟩(a,c) = Σ_b f(a,b)·g(b,c)`, equal to `γ(f ⊗̂ g)`.
pub fn fv_inner<S: Semiring>(s: &S, f: &FunVector<S::Elem>, g: &FunVector<S::Elem>) -> Result<FunVector<S::Elem>> {
    let (ff, gf) = match (f.ground.factors(), g.ground.factors()) {
        (Some(ff), Some(gf)) if ff.len() == 2 && gf.len() == 2 => (ff, gf),
        _ => return Err(Error::ShapeMismatch("inner product needs vectors on A×B and B×C".into())),
    };
    if !GroundSet::same(&ff[1], &gf[0]) {
        return Err(Error::ShapeMismatch("middle factors differ".into()));
    }
    let ground = GroundSet::product(&[ff[0].clone(), gf[1].clone()])?;
    let mut rows: BTreeMap<&Key, Vec<(&Key, &S::Elem)>> = BTreeMap::new();
    for (k, v) in &g.values {
        let t = k.as_tuple().expect("product keys are tuples");
        rows.entry(&t[0]).or_default().push((&t[1], v));
    }
    let mut out = FunVector::zero(ground);
    for (k, x) in &f.values {
        let t = k.as_tuple().expect("product keys are tuples");
        if let Some(row) = rows.get(&t[1]) {
            for (c, y) in row {
                let v = s.mul(x, y)?;
                if !s.is_zero(&v) {
                    out.accumulate(s, Key::pair(t[0].clone(), (*c).clone()), &v)?;
                }
            }
        }
    }
    Ok(out)
}

/// Randomized law suite for the function semialgebra layer over `desc`,
/// using the real inner product.
pub fn fv_check_laws(desc: &Descriptor, max_size: usize, samples: usize, seed: u64) -> LawReport {
    check_fun_laws_with(desc, max_size, samples, seed, |f, g| fv_inner(desc, f, g))
}

/// The same suite with a caller-supplied inner product, so that a faulty
/// implementation can be shown to be caught.
pub fn check_fun_laws_with<F>(desc: &Descriptor, max_size: usize, samples: usize, seed: u64, inner: F) -> LawReport
where
    F: Fn(&FunVector<crate::semiring::Element>, &FunVector<crate::semiring::Element>) -> Result<FunVector<crate::semiring::Element>>,
{
    let mut report = LawReport::new(format!("function semialgebra over {desc}"));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let max_size = max_size.max(1);
    let render = |v: &FunVector<crate::semiring::Element>| v.to_json(|x| desc.render(x));
    for _ in 0..samples {
        let sets: Vec<Arc<GroundSet>> = (0..4).map(|_| GroundSet::range(rng.gen_range(1..=max_size))).collect();
        let pair = |i: usize, j: usize| GroundSet::product(&[sets[i].clone(), sets[j].clone()]).expect("two factors");
        let f = random_vector(desc, &mut rng, pair(0, 1));
        let f2 = random_vector(desc, &mut rng, pair(0, 1));
        let g = random_vector(desc, &mut rng, pair(1, 2));
        let g2 = random_vector(desc, &mut rng, pair(1, 2));
        let h = random_vector(desc, &mut rng, pair(2, 3));

        let assoc = (|| -> Result<bool> {
            let left = inner(&inner(&f, &g)?, &h)?;
            let right = inner(&f, &inner(&g, &h)?)?;
            Ok(left == right)
        })();
        report.record_result("inner-associativity", assoc, || json!({ "f": render(&f), "g": render(&g), "h": render(&h) }));

        let left_lin = (|| -> Result<bool> {
            let lhs = inner(&fv_pointwise(desc, Pointwise::Add, &f, &f2)?, &g)?;
            let rhs = fv_pointwise(desc, Pointwise::Add, &inner(&f, &g)?, &inner(&f2, &g)?)?;
            Ok(lhs == rhs)
        })();
        report.record_result("inner-left-additivity", left_lin, || json!({ "f": render(&f), "f2": render(&f2), "g": render(&g) }));

        let right_lin = (|| -> Result<bool> {
            let lhs = inner(&f, &fv_pointwise(desc, Pointwise::Add, &g, &g2)?)?;
            let rhs = fv_pointwise(desc, Pointwise::Add, &inner(&f, &g)?, &inner(&f, &g2)?)?;
            Ok(lhs == rhs)
        })();
        report.record_result("inner-right-additivity", right_lin, || json!({ "f": render(&f), "g": render(&g), "g2": render(&g2) }));

        let identity = (|| -> Result<bool> {
            let diag: Vec<Key> = sets[1].keys().into_iter().map(|k| Key::pair(k.clone(), k)).collect();
            let delta = FunVector::indicator(desc, pair(1, 1), &diag, desc.one())?;
            Ok(inner(&delta, &g)? == g && inner(&f, &delta)? == f)
        })();
        report.record_result("inner-identity-kernel", identity, || json!({ "f": render(&f), "g": render(&g) }));

        let oracle = (|| -> Result<bool> {
            let big = fv_tensor(desc, &f, &g)?;
            let contracted = fv_contract(desc, &big)?;
            let mut brute = FunVector::zero(pair(0, 2));
            for a in sets[0].keys() {
                for c in sets[2].keys() {
                    let mut acc = desc.zero();
                    for b in sets[1].keys() {
                        let x = f.value(desc, &Key::pair(a.clone(), b.clone()));
                        let y = g.value(desc, &Key::pair(b.clone(), c.clone()));
                        acc = desc.add(&acc, &desc.mul(&x, &y)?)?;
                    }
                    brute.set(desc, Key::pair(a.clone(), c), acc)?;
                }
            }
            Ok(contracted == brute && inner(&f, &g)? == brute)
        })();
        report.record_result("tensor-contract-oracle", oracle, || json!({ "f": render(&f), "g": render(&g) }));

        let a_vec = random_vector(desc, &mut rng, sets[0].clone());
        let b_vec = random_vector(desc, &mut rng, sets[1].clone());
        let c_vec = random_vector(desc, &mut rng, sets[2].clone());

        let associator = (|| -> Result<bool> {
            let left = fv_tensor(desc, &fv_tensor(desc, &a_vec, &b_vec)?, &c_vec)?;
            let right = fv_tensor(desc, &a_vec, &fv_tensor(desc, &b_vec, &c_vec)?)?;
            Ok(left == right)
        })();
        report.record_result("tensor-associator", associator, || json!({ "a": render(&a_vec), "b": render(&b_vec), "c": render(&c_vec) }));

        let unitors = (|| -> Result<bool> {
            let unit = FunVector::indicator(desc, GroundSet::point(), &[Key::unit()], desc.one())?;
            let right = fv_tensor(desc, &a_vec, &unit)?.rekey(sets[0].clone(), |k| Ok(k.as_tuple().expect("pair")[0].clone()))?;
            let left = fv_tensor(desc, &unit, &a_vec)?.rekey(sets[0].clone(), |k| Ok(k.as_tuple().expect("pair")[1].clone()))?;
            Ok(right == a_vec && left == a_vec)
        })();
        report.record_result("tensor-unitors", unitors, || json!({ "a": render(&a_vec) }));

        if desc.is_commutative() {
            let braiding = (|| -> Result<bool> {
                let ab = fv_tensor(desc, &a_vec, &b_vec)?;
                let ba = fv_tensor(desc, &b_vec, &a_vec)?;
                let swapped = ab.rekey(ba.ground().clone(), |k| {
                    let t = k.as_tuple().expect("pair");
                    Ok(Key::pair(t[1].clone(), t[0].clone()))
                })?;
                Ok(swapped == ba)
            })();
            report.record_result("tensor-braiding", braiding, || json!({ "a": render(&a_vec), "b": render(&b_vec) }));
        }

        let phi: Vec<i64> = (0..sets[0].len()).map(|_| rng.gen_range(0..sets[1].len() as i64)).collect();
        let psi: Vec<i64> = (0..sets[1].len()).map(|_| rng.gen_range(0..sets[2].len() as i64)).collect();
        let apply = |table: &Vec<i64>, k: &Key| Key::Int(table[k.as_int().expect("range key") as usize]);
        let functorial = (|| -> Result<bool> {
            let composite = fv_pullback(&sets[0], |k| Ok(apply(&psi, &apply(&phi, k))), &c_vec)?;
            let stepwise = fv_pullback(&sets[0], |k| Ok(apply(&phi, k)), &fv_pullback(&sets[1], |k| Ok(apply(&psi, k)), &c_vec)?)?;
            Ok(composite == stepwise)
        })();
        report.record_result("pullback-functoriality", functorial, || json!({ "phi": phi, "psi": psi, "g": render(&c_vec) }));

        let b2 = random_vector(desc, &mut rng, sets[1].clone());
        let morphism = (|| -> Result<bool> {
            let pb = |v: &FunVector<_>| fv_pullback(&sets[0], |k| Ok(apply(&phi, k)), v);
            let sum_ok = pb(&fv_pointwise(desc, Pointwise::Add, &b_vec, &b2)?)? == fv_pointwise(desc, Pointwise::Add, &pb(&b_vec)?, &pb(&b2)?)?;
            let mul_ok = pb(&fv_pointwise(desc, Pointwise::Mul, &b_vec, &b2)?)? == fv_pointwise(desc, Pointwise::Mul, &pb(&b_vec)?, &pb(&b2)?)?;
            Ok(sum_ok && mul_ok)
        })();
        report.record_result("pullback-semialgebra-morphism", morphism, || json!({ "phi": phi, "f": render(&b_vec), "g": render(&b2) }));
    }
    report
}

/// A random vector with roughly half of its keys nonzero.
pub fn random_vector<R: Rng>(desc: &Descriptor, rng: &mut R, ground: Arc<GroundSet>) -> FunVector<crate::semiring::Element> {
    let mut v = FunVector::zero(ground.clone());
    for k in ground.keys() {
        if rng.gen_bool(0.5) {
            let x = desc.sample(rng);
            v.set(desc, k, x).expect("key from its own ground set");
        }
    }
    v
}
