//! Convolution semirings of a strict monoidal category.
//!
//! An element of `Q_S(C)` is a finitely supported function from morphisms to
//! a semiring. The composition product convolves over factorizations
//! `β∘α = γ`, the monoidal product over `α⊗β = γ`. Both are computed from the
//! supports of the factors, so rule-form categories with infinitely many
//! morphisms are handled without enumeration.
//!
//! The composition unit is the sum of all identities. On the matrix category,
//! which has infinitely many objects, that unit is carried lazily as a
//! diagonal value applied to every identity without an explicit entry.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::moncat::{mc_factorizations, two_object_category, Category, FactorMode, Mor};
use crate::report::LawReport;
use crate::semiring::{check_semiring_laws, Descriptor, Element, Semiring};

/// The category and coefficient semiring shared by a family of elements.
#[derive(Clone, Debug)]
pub struct QContext {
    cat: Arc<Category>,
    desc: Arc<Descriptor>,
}

impl PartialEq for QContext {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.cat, &other.cat) || self.cat == other.cat)
            && (Arc::ptr_eq(&self.desc, &other.desc) || self.desc == other.desc)
    }
}

/// An element of `Q_S(C)`.
#[derive(Clone, Debug)]
pub struct ConvElement {
    ctx: QContext,
    /// Explicit values. With a diagonal present, an identity entry overrides
    /// the diagonal value and may be zero; every other stored value is nonzero.
    terms: BTreeMap<Mor, Element>,
    /// Value at every identity without an explicit entry.
    diag: Option<Element>,
}

impl PartialEq for ConvElement {
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx && self.terms == other.terms && self.diag == other.diag
    }
}

impl QContext {
    pub fn new(cat: Arc<Category>, desc: Arc<Descriptor>) -> QContext {
        QContext { cat, desc }
    }

    pub fn category(&self) -> &Arc<Category> {
        &self.cat
    }

    pub fn descriptor(&self) -> &Arc<Descriptor> {
        &self.desc
    }

    pub fn zero(&self) -> ConvElement {
        ConvElement { ctx: self.clone(), terms: BTreeMap::new(), diag: None }
    }

    /// The composition unit `1`, the sum of the characteristic functions of
    /// all identities.
    pub fn one_comp(&self) -> ConvElement {
        match self.cat.objects() {
            Some(objects) => {
                let pairs = objects.iter().map(|x| (self.cat.identity(x).expect("object of the category"), self.desc.one()));
                self.from_pairs(pairs).expect("identities belong to the category")
            }
            None => ConvElement { ctx: self.clone(), terms: BTreeMap::new(), diag: Some(self.desc.one()) },
        }
    }

    /// The monoidal unit `1^× = χ_{id_I}`.
    pub fn one_mon(&self) -> ConvElement {
        self.characteristic(&self.cat.unit_identity()).expect("unit identity belongs to the category")
    }

    /// `χ_γ`.
    pub fn characteristic(&self, gamma: &Mor) -> Result<ConvElement> {
        self.from_pairs([(gamma.clone(), self.desc.one())])
    }

    /// Builds an element from explicit values; repeated morphisms are added.
    pub fn from_pairs(&self, pairs: impl IntoIterator<Item = (Mor, Element)>) -> Result<ConvElement> {
        let mut acc: BTreeMap<Mor, Element> = BTreeMap::new();
        for (m, v) in pairs {
            if !self.cat.contains(&m) {
                return Err(Error::NotInCategory(format!("{m:?} in {}", self.cat.name())));
            }
            if !self.desc.conforms(&v) {
                return Err(Error::DescriptorMismatch(format!("value {v:?} is not in {}", self.desc)));
            }
            accumulate(&self.desc, &mut acc, m, v)?;
        }
        Ok(self.canonical(acc, None))
    }

    fn canonical(&self, mut terms: BTreeMap<Mor, Element>, diag: Option<Element>) -> ConvElement {
        let diag = diag.filter(|d| !self.desc.is_zero(d));
        match &diag {
            None => terms.retain(|_, v| !self.desc.is_zero(v)),
            Some(d) => terms.retain(|m, v| if self.cat.is_identity(m) { v != d } else { !self.desc.is_zero(v) }),
        }
        ConvElement { ctx: self.clone(), terms, diag }
    }

    /// A random element with at most `max_support` explicit morphisms.
    pub fn sample<R: Rng>(&self, rng: &mut R, max_support: usize) -> ConvElement {
        let n = rng.gen_range(0..=max_support);
        let pairs: Vec<(Mor, Element)> = (0..n).map(|_| (self.cat.sample_mor(rng), self.desc.sample(rng))).collect();
        self.from_pairs(pairs).expect("sampled from the context")
    }
}

fn accumulate(desc: &Descriptor, acc: &mut BTreeMap<Mor, Element>, key: Mor, value: Element) -> Result<()> {
    match acc.get_mut(&key) {
        Some(slot) => *slot = desc.add(slot, &value)?,
        None => {
            acc.insert(key, value);
        }
    }
    Ok(())
}

impl ConvElement {
    pub fn context(&self) -> &QContext {
        &self.ctx
    }

    /// The value at `gamma`.
    pub fn value(&self, gamma: &Mor) -> Element {
        if let Some(v) = self.terms.get(gamma) {
            return v.clone();
        }
        match &self.diag {
            Some(d) if self.ctx.cat.is_identity(gamma) => d.clone(),
            _ => self.ctx.desc.zero(),
        }
    }

    /// Explicit entries in canonical morphism order.
    pub fn terms(&self) -> impl Iterator<Item = (&Mor, &Element)> {
        self.terms.iter()
    }

    pub fn diagonal(&self) -> Option<&Element> {
        self.diag.as_ref()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.diag.is_none()
    }

    fn same_context(&self, other: &ConvElement) -> Result<()> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    fn explicit(&self, m: &Mor) -> bool {
        self.terms.contains_key(m)
    }

    /// JSON list of `[morphism, value]` pairs; a lazy diagonal is listed
    /// under the pseudo-morphism `"*identities"`.
    pub fn to_json(&self) -> Value {
        let mut out: Vec<Value> = self
            .terms
            .iter()
            .map(|(m, v)| json!([self.ctx.cat.render_mor(m), self.ctx.desc.render(v)]))
            .collect();
        if let Some(d) = &self.diag {
            out.push(json!(["*identities", self.ctx.desc.render(d)]));
        }
        Value::Array(out)
    }

    /// JSON object mapping rendered morphisms to rendered values.
    pub fn to_json_map(&self) -> Value {
        let mut map = serde_json::Map::new();
        for (m, v) in &self.terms {
            map.insert(self.ctx.cat.render_mor(m), self.ctx.desc.render(v));
        }
        if let Some(d) = &self.diag {
            map.insert("*identities".into(), self.ctx.desc.render(d));
        }
        Value::Object(map)
    }
}

impl fmt::Display for ConvElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_json())
    }
}

/// Pointwise summation law on a family sharing one context.
pub fn q_sum(ctx: &QContext, family: &[ConvElement]) -> Result<ConvElement> {
    let desc = &ctx.desc;
    let mut diag_family = Vec::new();
    let mut keys: BTreeMap<Mor, ()> = BTreeMap::new();
    for f in family {
        if f.ctx != *ctx {
            return Err(Error::ContextMismatch);
        }
        if let Some(d) = &f.diag {
            diag_family.push(d.clone());
        }
        keys.extend(f.terms.keys().map(|k| (k.clone(), ())));
    }
    let diag = if diag_family.is_empty() { None } else { Some(desc.sum_family(&diag_family)?) };
    let mut terms = BTreeMap::new();
    for k in keys.into_keys() {
        let values: Vec<Element> = family.iter().map(|f| f.value(&k)).collect();
        terms.insert(k, desc.sum_family(&values)?);
    }
    Ok(ctx.canonical(terms, diag))
}

/// `f + g`.
pub fn q_add(f: &ConvElement, g: &ConvElement) -> Result<ConvElement> {
    f.same_context(g)?;
    q_sum(&f.ctx, &[f.clone(), g.clone()])
}

/// The composition product `f·g`, with `(f·g)(γ) = Σ_{β∘α=γ} g(β)·f(α)`.
pub fn q_comp_product(f: &ConvElement, g: &ConvElement) -> Result<ConvElement> {
    f.same_context(g)?;
    let (cat, desc) = (&*f.ctx.cat, &*f.ctx.desc);
    let mut acc: BTreeMap<Mor, Element> = BTreeMap::new();
    for (alpha, fa) in &f.terms {
        for (beta, gb) in &g.terms {
            if let Ok(gamma) = cat.compose(beta, alpha) {
                accumulate(desc, &mut acc, gamma, desc.mul(gb, fa)?)?;
            }
        }
        // β = id_{cod α} taken from the lazy diagonal of g.
        if let Some(dg) = &g.diag {
            let id = cat.identity(&cat.cod(alpha)?)?;
            if !g.explicit(&id) {
                accumulate(desc, &mut acc, alpha.clone(), desc.mul(dg, fa)?)?;
            }
        }
    }
    if let Some(df) = &f.diag {
        for (beta, gb) in &g.terms {
            let id = cat.identity(&cat.dom(beta)?)?;
            if !f.explicit(&id) {
                accumulate(desc, &mut acc, beta.clone(), desc.mul(gb, df)?)?;
            }
        }
    }
    let diag = match (&f.diag, &g.diag) {
        (Some(df), Some(dg)) => {
            let d = desc.mul(dg, df)?;
            // Identities hit by explicit products but explicit in neither factor
            // also receive the diagonal-times-diagonal term.
            let hit: Vec<Mor> = acc.keys().filter(|m| cat.is_identity(m) && !f.explicit(m) && !g.explicit(m)).cloned().collect();
            for m in hit {
                accumulate(desc, &mut acc, m, d.clone())?;
            }
            Some(d)
        }
        _ => None,
    };
    // An identity explicit in a factor but absent from `acc` has value zero
    // once a diagonal is present; keep it as an explicit zero override.
    if let Some(_d) = &diag {
        for m in f.terms.keys().chain(g.terms.keys()) {
            if cat.is_identity(m) && !acc.contains_key(m) {
                acc.insert(m.clone(), desc.zero());
            }
        }
    }
    Ok(f.ctx.canonical(acc, diag))
}

/// The monoidal product `f×g`, with `(f×g)(γ) = Σ_{α⊗β=γ} g(β)·f(α)`.
pub fn q_mon_product(f: &ConvElement, g: &ConvElement) -> Result<ConvElement> {
    f.same_context(g)?;
    if f.diag.is_some() || g.diag.is_some() {
        return Err(Error::Unsupported("monoidal product with an identity-supported factor of infinite support".into()));
    }
    let (cat, desc) = (&*f.ctx.cat, &*f.ctx.desc);
    let mut acc: BTreeMap<Mor, Element> = BTreeMap::new();
    for (alpha, fa) in &f.terms {
        for (beta, gb) in &g.terms {
            accumulate(desc, &mut acc, cat.tensor(alpha, beta)?, desc.mul(gb, fa)?)?;
        }
    }
    Ok(f.ctx.canonical(acc, None))
}

/// `χ_γ` in the given context.
pub fn q_characteristic(ctx: &QContext, gamma: &Mor) -> Result<ConvElement> {
    ctx.characteristic(gamma)
}

/// `Q^c`: the convolution semiring under the composition product.
#[derive(Clone, Debug)]
pub struct CompQ(pub QContext);

/// `Q^m`: the convolution semiring under the monoidal product.
#[derive(Clone, Debug)]
pub struct MonQ(pub QContext);

impl Semiring for CompQ {
    type Elem = ConvElement;

    fn zero(&self) -> ConvElement {
        self.0.zero()
    }

    fn one(&self) -> ConvElement {
        self.0.one_comp()
    }

    fn add(&self, a: &ConvElement, b: &ConvElement) -> Result<ConvElement> {
        q_add(a, b)
    }

    fn mul(&self, a: &ConvElement, b: &ConvElement) -> Result<ConvElement> {
        q_comp_product(a, b)
    }

    fn is_zero(&self, a: &ConvElement) -> bool {
        a.is_zero()
    }

    fn sum(&self, family: &[ConvElement]) -> Result<ConvElement> {
        q_sum(&self.0, family)
    }

    fn render(&self, a: &ConvElement) -> Value {
        a.to_json()
    }
}

impl Semiring for MonQ {
    type Elem = ConvElement;

    fn zero(&self) -> ConvElement {
        self.0.zero()
    }

    fn one(&self) -> ConvElement {
        self.0.one_mon()
    }

    fn add(&self, a: &ConvElement, b: &ConvElement) -> Result<ConvElement> {
        q_add(a, b)
    }

    fn mul(&self, a: &ConvElement, b: &ConvElement) -> Result<ConvElement> {
        q_mon_product(a, b)
    }

    fn is_zero(&self, a: &ConvElement) -> bool {
        a.is_zero()
    }

    fn sum(&self, family: &[ConvElement]) -> Result<ConvElement> {
        q_sum(&self.0, family)
    }

    fn render(&self, a: &ConvElement) -> Value {
        a.to_json()
    }
}

/// Both products computed by scanning all factorizations of every morphism
/// of a table-form category.
pub fn table_products(f: &ConvElement, g: &ConvElement) -> Result<(ConvElement, ConvElement)> {
    f.same_context(g)?;
    let ctx = &f.ctx;
    let morphisms = ctx.cat.morphisms().filter(|_| ctx.cat.is_table()).ok_or(Error::UnsupportedEnumeration)?;
    let desc = &*ctx.desc;
    let mut comp = Vec::new();
    let mut mon = Vec::new();
    for gamma in &morphisms {
        let mut c = Vec::new();
        for (beta, alpha) in mc_factorizations(&ctx.cat, gamma, FactorMode::Comp)? {
            c.push(desc.mul(&g.value(&beta), &f.value(&alpha))?);
        }
        comp.push((gamma.clone(), desc.sum_family(&c)?));
        let mut m = Vec::new();
        for (alpha, beta) in mc_factorizations(&ctx.cat, gamma, FactorMode::Tensor)? {
            m.push(desc.mul(&g.value(&beta), &f.value(&alpha))?);
        }
        mon.push((gamma.clone(), desc.sum_family(&m)?));
    }
    Ok((ctx.from_pairs(comp)?, ctx.from_pairs(mon)?))
}

/// Dense Laurent-coefficient convolution on the integer monoid: both products
/// coincide with polynomial multiplication of coefficient sequences.
pub fn laurent_product(f: &ConvElement, g: &ConvElement) -> Result<ConvElement> {
    f.same_context(g)?;
    if *f.ctx.cat != Category::Integers {
        return Err(Error::Unsupported("Laurent convolution needs the integer monoid".into()));
    }
    let desc = &*f.ctx.desc;
    let exps = |h: &ConvElement| -> Vec<i64> { h.terms.keys().filter_map(|m| if let Mor::Int(k) = m { Some(*k) } else { None }).collect() };
    let (ef, eg) = (exps(f), exps(g));
    if ef.is_empty() || eg.is_empty() {
        return Ok(f.ctx.zero());
    }
    let (lo_f, hi_f) = (*ef.iter().min().unwrap(), *ef.iter().max().unwrap());
    let (lo_g, hi_g) = (*eg.iter().min().unwrap(), *eg.iter().max().unwrap());
    let dense = |h: &ConvElement, lo: i64, hi: i64| -> Vec<Element> { (lo..=hi).map(|k| h.value(&Mor::Int(k))).collect() };
    let (a, b) = (dense(f, lo_f, hi_f), dense(g, lo_g, hi_g));
    let mut out = Vec::new();
    for n in 0..(a.len() + b.len() - 1) {
        let mut column = Vec::new();
        for i in 0..a.len() {
            if n >= i && n - i < b.len() {
                column.push(desc.mul(&b[n - i], &a[i])?);
            }
        }
        out.push((Mor::Int(lo_f + lo_g + n as i64), desc.sum_family(&column)?));
    }
    f.ctx.from_pairs(out)
}

/// The pair `(f, g)` on the two-object category with `f = χ_γ` and
/// `g = χ_{id_Y}`: `(f·g)(γ) = 1` while `(g·f)(γ) = 0`.
pub fn noncommutativity_example(desc: Arc<Descriptor>) -> (ConvElement, ConvElement, Mor) {
    let cat = two_object_category();
    let t = cat.as_table().expect("table form");
    let (gamma, id_y) = (t.morphism_id("gamma").expect("present"), t.morphism_id("id_Y").expect("present"));
    let ctx = QContext::new(Arc::new(cat), desc);
    let f = ctx.characteristic(&gamma).expect("member");
    let g = ctx.characteristic(&id_y).expect("member");
    (f, g, gamma)
}

/// Law suite for `Q_S(C)`.
///
/// Checks the semiring and complete-monoid laws for both products, the
/// support-driven products against the factorization-scan oracle on
/// table-form categories and against Laurent convolution on the integer
/// monoid, and on one-object categories with a commutative coefficient
/// semiring the compatibility `(a×b)·(c×d) = (a·c)×(b·d)`. It also searches
/// for a pair with `f·g ≠ g·f` and records it as an observation.
pub fn q_check(cat: Arc<Category>, desc: Arc<Descriptor>, samples: usize, seed: u64) -> LawReport {
    let ctx = QContext::new(cat.clone(), desc.clone());
    let mut report = LawReport::new(format!("convolution {} over {}", cat.name(), desc));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let max_support = 3;

    let mut comp_report = LawReport::new("comp");
    check_semiring_laws(&CompQ(ctx.clone()), samples, &mut rng, |r: &mut ChaCha8Rng| ctx.sample(r, max_support), &mut comp_report);
    for e in comp_report.entries {
        report.entries.push(crate::report::LawEntry { law: format!("comp-{}", e.law), ..e });
    }
    let mon_supported = !matches!(*cat, Category::Matrix);
    if mon_supported {
        let mut mon_report = LawReport::new("mon");
        check_semiring_laws(&MonQ(ctx.clone()), samples, &mut rng, |r: &mut ChaCha8Rng| ctx.sample(r, max_support), &mut mon_report);
        for e in mon_report.entries {
            report.entries.push(crate::report::LawEntry { law: format!("mon-{}", e.law), ..e });
        }
    }

    let abcd = cat.is_one_object() && desc.is_commutative();
    let mut witness = None;
    for _ in 0..samples {
        let f = ctx.sample(&mut rng, max_support);
        let g = ctx.sample(&mut rng, max_support);
        let fg = q_comp_product(&f, &g);
        let gf = q_comp_product(&g, &f);
        if witness.is_none() {
            if let (Ok(x), Ok(y)) = (&fg, &gf) {
                if x != y {
                    witness = Some(json!({ "f": f.to_json(), "g": g.to_json(), "f·g": x.to_json(), "g·f": y.to_json() }));
                }
            }
        }
        if cat.is_table() {
            let ok = (|| -> Result<bool> {
                let (c, m) = table_products(&f, &g)?;
                Ok(c == fg.clone()? && m == q_mon_product(&f, &g)?)
            })();
            report.record_result("table-oracle", ok, || json!({ "f": f.to_json(), "g": g.to_json() }));
        }
        if *cat == Category::Integers {
            let ok = (|| -> Result<bool> {
                let l = laurent_product(&f, &g)?;
                Ok(l == fg.clone()? && l == q_mon_product(&f, &g)?)
            })();
            report.record_result("laurent-oracle", ok, || json!({ "f": f.to_json(), "g": g.to_json() }));
        }
        if abcd {
            let c = ctx.sample(&mut rng, max_support);
            let d = ctx.sample(&mut rng, max_support);
            let ok = (|| -> Result<bool> {
                let lhs = q_comp_product(&q_mon_product(&f, &g)?, &q_mon_product(&c, &d)?)?;
                let rhs = q_mon_product(&q_comp_product(&f, &c)?, &q_comp_product(&g, &d)?)?;
                Ok(lhs == rhs)
            })();
            report.record_result("abcd-compatibility", ok, || {
                json!({ "a": f.to_json(), "b": g.to_json(), "c": c.to_json(), "d": d.to_json() })
            });
        }
    }
    report.observe("comp-noncommutative", witness);
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moncat::polya_category;

    fn ctx(cat: Category, desc: Descriptor) -> QContext {
        QContext::new(Arc::new(cat), Arc::new(desc))
    }

    #[test]
    fn sums() {
        let c = ctx(Category::Integers, Descriptor::Boolean);
        let a = c.characteristic(&Mor::Int(1)).unwrap();
        assert_eq!(q_sum(&c, &[a.clone(), a.clone()]).unwrap(), a);
        assert!(q_sum(&c, &[]).unwrap().is_zero());
        let n = ctx(Category::Integers, Descriptor::NatInf);
        let s = q_sum(&n, &[n.characteristic(&Mor::Int(1)).unwrap(), n.characteristic(&Mor::Int(2)).unwrap()]).unwrap();
        assert_eq!(s.value(&Mor::Int(1)), Element::nat(1));
        assert_eq!(s.value(&Mor::Int(2)), Element::nat(1));
    }

    #[test]
    fn noncommutativity() {
        let (f, g, gamma) = noncommutativity_example(Arc::new(Descriptor::Boolean));
        assert_eq!(q_comp_product(&f, &g).unwrap().value(&gamma), Element::Bool(true));
        assert_eq!(q_comp_product(&g, &f).unwrap().value(&gamma), Element::Bool(false));
    }

    #[test]
    fn single_term_convolution() {
        let n = ctx(Category::Integers, Descriptor::NatInf);
        let p = q_comp_product(&n.characteristic(&Mor::Int(2)).unwrap(), &n.characteristic(&Mor::Int(3)).unwrap()).unwrap();
        assert_eq!(p, n.characteristic(&Mor::Int(5)).unwrap());
        let two = two_object_category();
        let t = two.as_table().unwrap();
        let (g, idx) = (t.morphism_id("gamma").unwrap(), t.morphism_id("id_X").unwrap());
        let c = ctx(two.clone(), Descriptor::Boolean);
        assert!(q_comp_product(&c.characteristic(&g).unwrap(), &c.characteristic(&g).unwrap()).unwrap().is_zero());
        assert_eq!(q_comp_product(&c.characteristic(&idx).unwrap(), &c.characteristic(&g).unwrap()).unwrap(), c.characteristic(&g).unwrap());
    }

    #[test]
    fn polya_monoidal_product() {
        let p = polya_category();
        let t = p.as_table().unwrap();
        let (one, chi) = (t.morphism_id("1").unwrap(), t.morphism_id("chi").unwrap());
        let c = ctx(p.clone(), Descriptor::NatInf);
        let f = c.from_pairs([(chi.clone(), Element::nat(2)), (one.clone(), Element::nat(3))]).unwrap();
        let g = c.from_pairs([(chi.clone(), Element::nat(5)), (one.clone(), Element::nat(7))]).unwrap();
        assert_eq!(q_mon_product(&f, &g).unwrap().value(&chi), Element::nat(2 * 7 + 3 * 5));
        assert_eq!(q_mon_product(&f, &c.one_mon()).unwrap(), f);
        assert!(q_mon_product(&c.zero(), &f).unwrap().is_zero());
    }

    #[test]
    fn suites_pass() {
        for (cat, desc) in [
            (polya_category(), Descriptor::NatInf),
            (two_object_category(), Descriptor::Boolean),
            (Category::Integers, Descriptor::NatInf),
            (Category::GridMax { k: 2 }, Descriptor::Tropical),
        ] {
            let report = q_check(Arc::new(cat), Arc::new(desc), 60, 3);
            assert!(report.passed(), "{:?}", report.failing_laws());
        }
        let report = q_check(Arc::new(two_object_category()), Arc::new(Descriptor::Boolean), 60, 3);
        assert!(report.observation("comp-noncommutative").unwrap().found);
    }

    #[test]
    fn lazy_diagonal_on_matrices() {
        use crate::moncat::MatMorphism;
        let c = ctx(Category::Matrix, Descriptor::NatInf);
        let one = c.one_comp();
        let a = Mor::Mat(MatMorphism::from_ints(2, 1, &[1, 2]).unwrap());
        let fa = c.characteristic(&a).unwrap();
        assert_eq!(q_comp_product(&fa, &one).unwrap(), fa);
        assert_eq!(q_comp_product(&one, &fa).unwrap(), fa);
        assert_eq!(q_comp_product(&one, &one).unwrap(), one);
        let report = q_check(Arc::new(Category::Matrix), Arc::new(Descriptor::NatInf), 40, 1);
        assert!(report.passed(), "{:?}", report.failing_laws());
    }
}
