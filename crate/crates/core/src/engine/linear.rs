//! Linear representations into the skeletal category of rational matrices.
//!
//! A [`Representation`] assigns a dimension to each object and a matrix to
//! each morphism of a source category. When it is a strict monoidal functor,
//! composing an action system with it gives the linearized action system.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::{ActionSystem, BordismModel};
use crate::error::{Error, Result};
use crate::fun::Key;
use crate::moncat::{Category, MatMorphism, Mor, Obj};
use crate::report::LawReport;

type ObjMap = dyn Fn(&Obj) -> Result<usize> + Send + Sync;
type MorMap = dyn Fn(&Mor) -> Result<MatMorphism> + Send + Sync;

/// A candidate strict monoidal functor into the matrix category.
#[derive(Clone)]
pub struct Representation {
    source: Arc<Category>,
    obj: Arc<ObjMap>,
    mor: Arc<MorMap>,
}

impl std::fmt::Debug for Representation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Representation of {}", self.source.name())
    }
}

impl Representation {
    pub fn new(
        source: Arc<Category>,
        obj: impl Fn(&Obj) -> Result<usize> + Send + Sync + 'static,
        mor: impl Fn(&Mor) -> Result<MatMorphism> + Send + Sync + 'static,
    ) -> Representation {
        Representation { source, obj: Arc::new(obj), mor: Arc::new(mor) }
    }

    /// A representation of a table-form category given by names.
    pub fn from_table(source: Arc<Category>, dims: BTreeMap<String, usize>, mats: BTreeMap<String, MatMorphism>) -> Result<Representation> {
        if !source.is_table() {
            return Err(Error::UnsupportedEnumeration);
        }
        let objects = source.objects().expect("finite");
        let mut obj_dims = BTreeMap::new();
        for x in objects {
            let name = source.render_obj(&x);
            let d = *dims.get(&name).ok_or_else(|| Error::InvalidRepresentation(format!("no dimension for object `{name}`")))?;
            obj_dims.insert(x, d);
        }
        let mut mor_mats = BTreeMap::new();
        for m in source.morphisms().expect("finite") {
            let name = source.render_mor(&m);
            let a = mats.get(&name).ok_or_else(|| Error::InvalidRepresentation(format!("no matrix for morphism `{name}`")))?;
            mor_mats.insert(m, a.clone());
        }
        Ok(Representation::new(
            source,
            move |x| obj_dims.get(x).copied().ok_or_else(|| Error::NotInCategory(format!("{x:?}"))),
            move |m| mor_mats.get(m).cloned().ok_or_else(|| Error::NotInCategory(format!("{m:?}"))),
        ))
    }

    pub fn source(&self) -> &Arc<Category> {
        &self.source
    }

    pub fn on_object(&self, x: &Obj) -> Result<usize> {
        (self.obj)(x)
    }

    pub fn on_morphism(&self, m: &Mor) -> Result<MatMorphism> {
        (self.mor)(m)
    }
}

/// Checks that `rep` is a strict monoidal functor: matrices have the sizes
/// of their objects, identities go to identity matrices, composition to
/// matrix products, tensor to Kronecker products, and the unit to dimension 1.
/// Table-form sources are checked exhaustively, others on `samples` draws.
pub fn check_representation(rep: &Representation, samples: usize, seed: u64) -> LawReport {
    let cat = &rep.source;
    let mut report = LawReport::new(format!("representation of {}", cat.name()));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let morphisms: Vec<Mor> = match cat.morphisms() {
        Some(ms) if cat.is_table() || ms.len() <= 64 => ms,
        _ => (0..samples.max(1)).map(|_| cat.sample_mor(&mut rng)).collect(),
    };
    let r = |m: &Mor| cat.render_mor(m);
    report.record_result("unit-dimension", rep.on_object(&cat.unit()).map(|d| d == 1), || json!(cat.render_obj(&cat.unit())));
    for a in &morphisms {
        let ok = (|| -> Result<bool> {
            let ma = rep.on_morphism(a)?;
            Ok(ma.rows() == rep.on_object(&cat.cod(a)?)? && ma.cols() == rep.on_object(&cat.dom(a)?)?)
        })();
        report.record_result("typing", ok, || json!(r(a)));
        let ok = (|| -> Result<bool> {
            let x = cat.dom(a)?;
            Ok(rep.on_morphism(&cat.identity(&x)?)? == MatMorphism::identity(rep.on_object(&x)?))
        })();
        report.record_result("identities", ok, || json!(r(a)));
        for b in &morphisms {
            if cat.dom(b).ok() == cat.cod(a).ok() {
                let ok = (|| -> Result<bool> {
                    Ok(rep.on_morphism(&cat.compose(b, a)?)? == rep.on_morphism(b)?.compose(&rep.on_morphism(a)?)?)
                })();
                report.record_result("composition", ok, || json!([r(b), r(a)]));
            }
            let ok = (|| -> Result<bool> { Ok(rep.on_morphism(&cat.tensor(a, b)?)? == rep.on_morphism(a)?.kron(&rep.on_morphism(b)?)) })();
            report.record_result("tensor", ok, || json!([r(a), r(b)]));
            let ok = (|| -> Result<bool> {
                let (x, y) = (cat.dom(a)?, cat.dom(b)?);
                Ok(rep.on_object(&cat.tensor_obj(&x, &y)?)? == rep.on_object(&x)? * rep.on_object(&y)?)
            })();
            report.record_result("tensor-objects", ok, || json!([r(a), r(b)]));
        }
    }
    report
}

/// The action system `F ↦ rep(𝕋_W(F))` with values in the matrix category.
pub struct Linearized<A> {
    inner: A,
    rep: Representation,
    target: Arc<Category>,
}

impl<A> Linearized<A> {
    /// Wraps `inner` after checking that `rep` is a strict monoidal functor
    /// out of `inner`'s category.
    pub fn new<M: BordismModel>(inner: A, rep: Representation, samples: usize, seed: u64) -> Result<Linearized<A>>
    where
        A: ActionSystem<M>,
    {
        if **inner.category() != **rep.source() {
            return Err(Error::InvalidRepresentation("representation source differs from the action's category".into()));
        }
        let report = check_representation(&rep, samples, seed);
        if !report.passed() {
            return Err(Error::InvalidRepresentation(format!("fails {}", report.failing_laws().join(", "))));
        }
        Ok(Linearized { inner, rep, target: Arc::new(Category::Matrix) })
    }

    pub fn representation(&self) -> &Representation {
        &self.rep
    }
}

impl<M: BordismModel, A: ActionSystem<M>> ActionSystem<M> for Linearized<A> {
    fn category(&self) -> &Arc<Category> {
        &self.target
    }

    fn act(&self, w: &M::Bordism, field: &Key) -> Result<Mor> {
        Ok(Mor::Mat(self.rep.on_morphism(&self.inner.act(w, field)?)?))
    }
}
