//! Concrete bordism models and the shipped theories.
//!
//! [`build_instance`] assembles a named theory from [`InstanceParams`]. The
//! resulting [`Instance`] hides the concrete model types and offers the
//! operations the command line needs, with bordisms read from JSON.

pub mod catalog;
pub mod graph;
pub mod multiset;
pub mod polya;

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::Value;

use crate::conv::{q_mon_product, ConvElement};
use crate::engine::{ActionSystem, BordismModel, Closed, FieldSystem, Linearized, Representation, StateVector, Tft, Theorem};
use crate::error::{Error, Result};
use crate::fun::Key;
use crate::moncat::{polya_category, MatMorphism, Obj};
use crate::report::{LawReport, VerdictReport};
use crate::semiring::Descriptor;

use catalog::{CatalogBordism, CatalogModel, SignatureAction, SingleField};
use graph::{GraphAction, GraphActionKind, GraphBordism, GraphFields, GraphModel, LabelMode};
use multiset::{DivisorAction, DivisorFields, Multiset, MultisetModel};
use polya::{IsotropyFields, PermGroup, PolyaBordism, PolyaModel, SupportAction, Universe};

/// Names accepted by [`build_instance`].
pub const INSTANCE_NAMES: [&str; 10] = ["max-lc", "max-step", "iv-lc", "iv-step", "delta", "signature", "polya", "burnside", "divisor", "omega-divisor"];

/// Parameters shared by the instance builders. Each builder reads the ones it needs.
#[derive(Clone, Debug)]
pub struct InstanceParams {
    /// Grid resolution for the Max and intermediate value theories.
    pub k: u32,
    /// Largest label of the Delta theory.
    pub n_max: u32,
    /// The coefficient semiring.
    pub semiring: Descriptor,
    /// The acting group for the Pólya and Burnside theories; `C₃` by default.
    pub group: Option<PermGroup>,
    /// Number of colors for the Pólya theory.
    pub colors: usize,
}

impl Default for InstanceParams {
    fn default() -> Self {
        InstanceParams { k: 1, n_max: 2, semiring: Descriptor::NatInf, group: None, colors: 2 }
    }
}

pub type GraphTft = Tft<GraphFields, GraphAction>;
pub type DivisorTft = Tft<DivisorFields, DivisorAction>;
pub type PolyaTft = polya::PolyaTft;
pub type SignatureTft = Tft<SingleField, SignatureAction>;

/// A shipped theory with its model type erased.
pub enum Instance {
    Graph(GraphTft),
    Divisor(DivisorTft),
    Polya(PolyaTft),
    Signature(SignatureTft),
}

macro_rules! each {
    ($self:expr, $t:ident => $body:expr) => {
        match $self {
            Instance::Graph($t) => $body,
            Instance::Divisor($t) => $body,
            Instance::Polya($t) => $body,
            Instance::Signature($t) => $body,
        }
    };
}

/// The Max theory on `0..=k`.
pub fn max_instance(mode: LabelMode, k: u32, desc: Descriptor) -> Result<GraphTft> {
    check_grid(k)?;
    let name = format!("max-{}", mode_name(mode));
    Tft::new(name, desc, GraphFields::new(mode, 0, k as i64)?, GraphAction::new(GraphActionKind::Max, k))
}

/// The intermediate value theory on `-k..=k`, representing `[-1, 1]` in steps of `1/k`.
pub fn iv_instance(mode: LabelMode, k: u32, desc: Descriptor) -> Result<GraphTft> {
    check_grid(k)?;
    let name = format!("iv-{}", mode_name(mode));
    Tft::new(name, desc, GraphFields::new(mode, -(k as i64), k as i64)?, GraphAction::new(GraphActionKind::IntermediateValue, k))
}

/// The Delta theory with locally constant labels in `0..=n_max`.
pub fn delta_instance(n_max: u32, desc: Descriptor) -> Result<GraphTft> {
    Tft::new("delta", desc, GraphFields::new(LabelMode::LocallyConstant, 0, n_max as i64)?, GraphAction::new(GraphActionKind::Delta, 0))
}

/// Max fields with a capped-sum action. Every nonzero component meets at
/// least two vertices, so for `k ≤ 2` the cap is always reached and the action
/// agrees with a Boolean max; from `k = 3` on it violates the gluing axiom.
pub fn capped_sum_instance(k: u32, desc: Descriptor) -> Result<GraphTft> {
    check_grid(k)?;
    Tft::new("capped-sum", desc, GraphFields::new(LabelMode::LocallyConstant, 0, k as i64)?, GraphAction::new(GraphActionKind::CappedSum, k))
}

pub fn divisor_instance(omega: bool, desc: Descriptor) -> Result<DivisorTft> {
    let (name, action) = if omega { ("omega-divisor", DivisorAction::omega()) } else { ("divisor", DivisorAction::divisor()) };
    Tft::new(name, desc, DivisorFields::new(), action)
}

/// The Pólya theory on colorings, or the Burnside theory on the base set.
pub fn polya_instance(group: PermGroup, colors: Option<usize>, desc: Descriptor) -> Result<PolyaTft> {
    let (name, universe) = match colors {
        Some(c) => ("polya", Universe::colorings(group, c)?),
        None => ("burnside", Universe::base(group)),
    };
    Tft::new(name, desc, IsotropyFields::new(PolyaModel::new(universe)), SupportAction::new())
}

pub fn signature_instance(desc: Descriptor) -> Result<SignatureTft> {
    Tft::new("signature", desc, SingleField::new(CatalogModel::default()), SignatureAction::default())
}

/// The one-dimensional representation of `{1, χ, μ}` with `1 ↦ [1]` and `χ, μ ↦ [0]`.
pub fn polya_scalar_representation() -> Result<Representation> {
    let cat = std::sync::Arc::new(polya_category());
    let scalar = |x: i64| MatMorphism::scalar(BigRational::from_integer(x.into()));
    let dims = [("I".to_string(), 1)].into_iter().collect();
    let mats = [("1".to_string(), scalar(1)), ("chi".to_string(), scalar(0)), ("mu".to_string(), scalar(0))].into_iter().collect();
    Representation::from_table(cat, dims, mats)
}

/// A representation of `{1, χ, μ}` on two dimensions sending `χ` to the
/// swap matrix. It is not monoidal and is rejected by the checks.
pub fn polya_swap_representation() -> Result<Representation> {
    let cat = std::sync::Arc::new(polya_category());
    let m = |e: &[i64]| MatMorphism::from_ints(2, 2, e).expect("2x2");
    let dims: BTreeMap<String, usize> = [("I".to_string(), 2)].into_iter().collect();
    let mats = [("1".to_string(), m(&[1, 0, 0, 1])), ("chi".to_string(), m(&[0, 1, 1, 0])), ("mu".to_string(), m(&[1, 0, 0, 1]))].into_iter().collect();
    Representation::from_table(cat, dims, mats)
}

/// The Pólya theory composed with a representation into matrices.
pub fn linearized_polya_instance(
    group: PermGroup,
    colors: usize,
    rep: Representation,
    desc: Descriptor,
) -> Result<Tft<IsotropyFields, Linearized<SupportAction>>> {
    let fields = IsotropyFields::new(PolyaModel::new(Universe::colorings(group, colors)?));
    let action = Linearized::new::<PolyaModel>(SupportAction::new(), rep, 0, 0)?;
    Tft::new("polya-linearized", desc, fields, action)
}

/// `k ↦ [2^k]` on the integer monoid, a representation of an infinite category.
pub fn integer_power_representation() -> Representation {
    let cat = std::sync::Arc::new(crate::moncat::Category::Integers);
    Representation::new(
        cat,
        |x| match x {
            Obj::Unit => Ok(1),
            other => Err(Error::NotInCategory(format!("{other:?}"))),
        },
        |m| match m {
            crate::moncat::Mor::Int(k) => {
                let two = BigRational::from_integer(2.into());
                let mut v = BigRational::one();
                for _ in 0..k.unsigned_abs() {
                    v *= &two;
                }
                if *k < 0 {
                    v = BigRational::one() / v;
                }
                Ok(MatMorphism::scalar(v))
            }
            other => Err(Error::NotInCategory(format!("{other:?}"))),
        },
    )
}

fn check_grid(k: u32) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidParams("grid resolution k must be at least 1".into()));
    }
    Ok(())
}

fn mode_name(mode: LabelMode) -> &'static str {
    match mode {
        LabelMode::LocallyConstant => "lc",
        LabelMode::Step => "step",
    }
}

/// Builds a named theory.
pub fn build_instance(name: &str, params: &InstanceParams) -> Result<Instance> {
    let desc = params.semiring.clone();
    let group = || params.group.clone().unwrap_or_else(|| PermGroup::cyclic(3));
    Ok(match name {
        "max-lc" => Instance::Graph(max_instance(LabelMode::LocallyConstant, params.k, desc)?),
        "max-step" => Instance::Graph(max_instance(LabelMode::Step, params.k, desc)?),
        "iv-lc" => Instance::Graph(iv_instance(LabelMode::LocallyConstant, params.k, desc)?),
        "iv-step" => Instance::Graph(iv_instance(LabelMode::Step, params.k, desc)?),
        "delta" => Instance::Graph(delta_instance(params.n_max, desc)?),
        "signature" => Instance::Signature(signature_instance(desc)?),
        "polya" => {
            if params.colors == 0 {
                return Err(Error::InvalidParams("at least one color is needed".into()));
            }
            Instance::Polya(polya_instance(group(), Some(params.colors), desc)?)
        }
        "burnside" => Instance::Polya(polya_instance(group(), None, desc)?),
        "divisor" => Instance::Divisor(divisor_instance(false, desc)?),
        "omega-divisor" => Instance::Divisor(divisor_instance(true, desc)?),
        other => return Err(Error::InvalidParams(format!("unknown instance `{other}`; expected one of {}", INSTANCE_NAMES.join(", ")))),
    })
}

/// Reading bordisms and closed objects of a model from JSON.
pub trait JsonModel: BordismModel {
    fn parse_bordism(&self, v: &Value) -> Result<Self::Bordism>;
    fn parse_closed(&self, v: &Value) -> Result<Self::Closed>;
}

fn parse<T: serde::de::DeserializeOwned>(v: &Value) -> Result<T> {
    serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))
}

impl JsonModel for GraphModel {
    /// `{"vertices": n, "edges": [[u, v], …], "in": […], "out": […]}`.
    fn parse_bordism(&self, v: &Value) -> Result<GraphBordism> {
        let g: GraphBordism = parse(v)?;
        g.validate()?;
        Ok(g)
    }

    fn parse_closed(&self, v: &Value) -> Result<usize> {
        parse(v)
    }
}

impl JsonModel for MultisetModel {
    /// `{"n": 12}` or `12`.
    fn parse_bordism(&self, v: &Value) -> Result<Multiset> {
        let n = v.get("n").unwrap_or(v).as_u64().ok_or_else(|| Error::Parse(format!("expected a positive integer, got {v}")))?;
        if n == 0 || n > multiset::DIVISOR_LIMIT {
            return Err(Error::OutOfRange(format!("n must lie in 1..={}", multiset::DIVISOR_LIMIT)));
        }
        Multiset::of(n)
    }

    fn parse_closed(&self, _: &Value) -> Result<()> {
        Ok(())
    }
}

impl JsonModel for PolyaModel {
    /// `{"all": true}` for the whole universe, `{"points": [p, …]}` for a
    /// single stable set, or `{"orbits": [p, …]}` for orbits in separate
    /// copies. A point is a color list or, for the base set, `[x]`.
    fn parse_bordism(&self, v: &Value) -> Result<PolyaBordism> {
        let u = &self.universe;
        let index = |p: &Value| -> Result<usize> {
            let digits: Vec<usize> = parse(p)?;
            match u.kind {
                polya::UniverseKind::Colorings { colors } => {
                    if digits.len() != u.group.degree || digits.iter().any(|&c| c >= colors) {
                        return Err(Error::InvalidBordism(format!("{p} is not a coloring")));
                    }
                    Ok(digits.iter().rev().fold(0, |acc, &c| acc * colors + c))
                }
                polya::UniverseKind::Base => match digits.as_slice() {
                    [x] if *x < u.points => Ok(*x),
                    _ => Err(Error::InvalidBordism(format!("{p} is not a base point"))),
                },
            }
        };
        let list = |key: &str| -> Result<Vec<usize>> {
            v.get(key).and_then(|x| x.as_array()).ok_or_else(|| Error::Parse(format!("`{key}` must be a list")))?.iter().map(index).collect()
        };
        let w = if v.get("all").and_then(|x| x.as_bool()) == Some(true) {
            self.whole()
        } else if v.get("points").is_some() {
            PolyaBordism(list("points")?.into_iter().map(|p| (0, p)).collect())
        } else if v.get("orbits").is_some() {
            let mut w = self.empty();
            for p in list("orbits")? {
                w = self.disjoint(&w, &self.orbit(p))?;
            }
            w
        } else {
            return Err(Error::Parse("expected `all`, `points` or `orbits`".into()));
        };
        self.validate(&w)?;
        Ok(w)
    }

    fn parse_closed(&self, _: &Value) -> Result<()> {
        Ok(())
    }
}

impl JsonModel for CatalogModel {
    /// `{"in": […], "out": […], "signature": s}`, or `"form": matrix` in
    /// place of the signature.
    fn parse_bordism(&self, v: &Value) -> Result<CatalogBordism> {
        let labels = |key: &str| -> Result<Vec<String>> { v.get(key).map(parse).unwrap_or(Ok(Vec::new())) };
        let signature = match (v.get("signature"), v.get("form")) {
            (Some(s), None) => s.as_i64().ok_or_else(|| Error::Parse("`signature` must be an integer".into()))?,
            (None, Some(f)) => catalog::signature_of_form(&parse::<Vec<Vec<i64>>>(f)?)?,
            (Some(s), Some(f)) => {
                let declared = s.as_i64().ok_or_else(|| Error::Parse("`signature` must be an integer".into()))?;
                let computed = catalog::signature_of_form(&parse::<Vec<Vec<i64>>>(f)?)?;
                if declared != computed {
                    return Err(Error::InvalidBordism(format!("declared signature {declared} differs from the form's {computed}")));
                }
                declared
            }
            (None, None) => return Err(Error::Parse("a catalog entry needs `signature` or `form`".into())),
        };
        Ok(CatalogBordism { incoming: labels("in")?, outgoing: labels("out")?, signature })
    }

    fn parse_closed(&self, v: &Value) -> Result<Vec<String>> {
        parse(v)
    }
}

fn render_state<F, A>(tft: &Tft<F, A>, z: &StateVector<Closed<F>>) -> Value
where
    F: FieldSystem,
    A: ActionSystem<F::Model>,
{
    // A closed bordism has a single boundary field; show its value directly.
    if z.vector.ground().len() == 1 {
        let key = z.vector.ground().keys().remove(0);
        return z.vector.get(&key).cloned().unwrap_or_else(|| tft.q().zero()).to_json_map();
    }
    z.to_json()
}

fn state_json<F, A>(tft: &Tft<F, A>, bordism: &Value, boundary: Option<&Value>) -> Result<Value>
where
    F: FieldSystem,
    F::Model: JsonModel,
    A: ActionSystem<F::Model>,
{
    let w = tft.model().parse_bordism(bordism)?;
    match boundary {
        Some(b) => Ok(tft.state_sum(&w, &Key::from_json(b)?)?.to_json_map()),
        None => Ok(render_state(tft, &tft.state_vector(&w)?)),
    }
}

fn aggregate_json<F, A>(tft: &Tft<F, A>, catalog: &Value) -> Result<Value>
where
    F: FieldSystem,
    F::Model: JsonModel,
    A: ActionSystem<F::Model>,
{
    let model = tft.model();
    let entries = catalog
        .get("bordisms")
        .and_then(|b| b.as_array())
        .ok_or_else(|| Error::Parse("a catalog needs a `bordisms` list".into()))?
        .iter()
        .map(|b| model.parse_bordism(b))
        .collect::<Result<Vec<_>>>()?;
    let closed = match catalog.get("closed") {
        Some(c) => model.parse_closed(c)?,
        None => entries.first().map(|w| model.outgoing(w)).ok_or_else(|| Error::Parse("an empty catalog needs `closed`".into()))?,
    };
    let z = tft.coboundary_aggregate(&closed, &entries)?;
    Ok(render_state(tft, &z))
}

impl Instance {
    pub fn name(&self) -> &str {
        each!(self, t => t.name())
    }

    pub fn descriptor(&self) -> &Descriptor {
        each!(self, t => t.descriptor())
    }

    pub fn verify(&self, theorem: Theorem, cases: usize, seed: u64) -> VerdictReport {
        each!(self, t => t.verify_theorem(theorem, cases, seed))
    }

    pub fn field_axioms(&self, samples: usize, seed: u64) -> LawReport {
        each!(self, t => t.check_field_axioms(samples, seed))
    }

    pub fn action_axioms(&self, samples: usize, seed: u64) -> LawReport {
        each!(self, t => t.check_action_axioms(samples, seed))
    }

    /// The state vector of a bordism read from JSON, or its state sum at one
    /// boundary field. Pólya bordisms too large to enumerate are split into
    /// orbits and recombined with the monoidal product.
    pub fn state_json(&self, bordism: &Value, boundary: Option<&Value>) -> Result<Value> {
        if let Instance::Polya(t) = self {
            let w = t.model().parse_bordism(bordism)?;
            if t.model().isotropy_pairs(&w).len() > polya::FIELD_LIMIT {
                return Ok(orbit_product(t, &w)?.to_json_map());
            }
        }
        each!(self, t => state_json(t, bordism, boundary))
    }

    /// The coboundary aggregate of a catalog `{"closed": M, "bordisms": […]}`.
    pub fn aggregate_json(&self, catalog: &Value) -> Result<Value> {
        each!(self, t => aggregate_json(t, catalog))
    }
}

/// `Z_W` as the `⊗̂_m` product of the state sums of the orbits of `W`.
pub fn orbit_product(tft: &PolyaTft, w: &PolyaBordism) -> Result<ConvElement> {
    let model = tft.model();
    let mut acc = tft.q().one_mon();
    let mut seen = std::collections::BTreeSet::new();
    for &(t, p) in &w.0 {
        if seen.contains(&(t, p)) {
            continue;
        }
        let orbit = model.orbit(p);
        seen.extend(orbit.0.iter().map(|&(_, q)| (t, q)));
        let z = tft.state_sum(&orbit, &Key::pair(Key::unit(), Key::unit()))?;
        acc = q_mon_product(&acc, &z)?;
    }
    Ok(acc)
}

/// Coefficients of an `Ω` state sum at `Int(0), Int(1), …`, as rendered values.
pub fn omega_coefficients(z: &ConvElement) -> Vec<Value> {
    let desc = z.context().descriptor().clone();
    let top = z
        .terms()
        .filter_map(|(m, _)| match m {
            crate::moncat::Mor::Int(k) => Some(*k),
            _ => None,
        })
        .max()
        .unwrap_or(-1);
    (0..=top).map(|k| desc.render(&z.value(&crate::moncat::Mor::Int(k)))).collect()
}

/// True when `x` is the zero matrix; used by linearization tests.
pub fn is_zero_matrix(m: &MatMorphism) -> bool {
    (0..m.rows()).all(|i| (0..m.cols()).all(|j| m.entry(i, j).is_zero()))
}
