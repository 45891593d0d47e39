//! Quantization of field and action systems into state sums.
//!
//! A [`BordismModel`] supplies combinatorial bordisms with ordered disjoint
//! union, gluing, cylinders and isomorphisms. A [`FieldSystem`] enumerates
//! fields on bordisms and on their boundaries together with the restriction,
//! disjoint-union and gluing bijections. An [`ActionSystem`] sends each field
//! to a morphism of a strict monoidal category. A [`Tft`] combines the three
//! with a coefficient semiring and computes state sums, state vectors and the
//! operations on them.
//!
//! Fields are [`Key`]s. A boundary field of a bordism `W: M → N` is the pair
//! `(f_in, f_out)`, so a state vector lives on `F(M) × F(N)`.

mod linear;
mod verify;

pub use linear::{check_representation, Linearized, Representation};
pub use verify::Theorem;

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::sync::Arc;

use serde_json::Value;

use crate::conv::{q_sum, CompQ, ConvElement, MonQ, QContext};
use crate::error::{Error, Result};
use crate::fun::{fv_inner, fv_pointwise, FunVector, GroundSet, Key, Pointwise};
use crate::moncat::{Category, Mor};
use crate::semiring::{Count, Descriptor};

/// Which cylinder-like bordism to build over a closed object `M`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CylinderShape {
    /// `M × I: M → M`.
    Straight,
    /// `∅ → M ⊔ M`, bending `M × I` so both ends are outgoing.
    Cup,
    /// `M ⊔ M → ∅`, bending `M × I` so both ends are incoming.
    Cap,
}

/// Combinatorial bordisms between closed objects.
pub trait BordismModel {
    type Bordism: Clone + Debug;
    type Closed: Clone + Debug + PartialEq;
    /// An isomorphism `W → W′` preserving incoming and outgoing boundaries.
    type Homeo: Clone + Debug;

    fn name(&self) -> String;
    fn incoming(&self, w: &Self::Bordism) -> Self::Closed;
    fn outgoing(&self, w: &Self::Bordism) -> Self::Closed;
    /// The empty bordism `∅ → ∅`.
    fn empty(&self) -> Self::Bordism;
    fn empty_closed(&self) -> Self::Closed;
    /// Ordered disjoint union `a ⊔ b`.
    fn disjoint(&self, a: &Self::Bordism, b: &Self::Bordism) -> Result<Self::Bordism>;
    fn disjoint_closed(&self, m: &Self::Closed, n: &Self::Closed) -> Self::Closed;
    /// Gluing `a ∪_N b` along `N = out(a) = in(b)`.
    fn glue(&self, a: &Self::Bordism, b: &Self::Bordism) -> Result<Self::Bordism>;
    fn cylinder(&self, m: &Self::Closed, shape: CylinderShape) -> Result<Self::Bordism>;
    /// All boundary-preserving isomorphisms `a → b` known to the model.
    fn homeomorphisms(&self, a: &Self::Bordism, b: &Self::Bordism) -> Result<Vec<Self::Homeo>>;
    fn identity_homeo(&self, w: &Self::Bordism) -> Self::Homeo;
    /// `ψ ∘ φ`.
    fn compose_homeo(&self, psi: &Self::Homeo, phi: &Self::Homeo) -> Self::Homeo;
    /// An isomorphic copy `W′` of `w` with some isomorphism `W → W′`.
    fn scramble(&self, w: &Self::Bordism, rng: &mut dyn rand::RngCore) -> (Self::Bordism, Self::Homeo);
    /// Reorders the boundary: position `i` of the new incoming list holds
    /// old incoming point `perm_in[i]`, likewise for outgoing.
    fn relabel_boundary(&self, w: &Self::Bordism, perm_in: &[usize], perm_out: &[usize]) -> Result<(Self::Bordism, Self::Homeo)>;
    /// Number of boundary points that [`BordismModel::relabel_boundary`] permutes.
    fn closed_size(&self, m: &Self::Closed) -> usize;
    fn sample_bordism(&self, rng: &mut dyn rand::RngCore) -> Self::Bordism;
    /// Two bordisms to be placed side by side, each small enough that their
    /// disjoint union stays within the sampling budget of one bordism.
    fn sample_disjoint_pair(&self, rng: &mut dyn rand::RngCore) -> (Self::Bordism, Self::Bordism) {
        (self.sample_bordism(rng), self.sample_bordism(rng))
    }
    /// A pair `(a, b)` with `out(a) = in(b)`.
    fn sample_glue_pair(&self, rng: &mut dyn rand::RngCore) -> (Self::Bordism, Self::Bordism);
    fn sample_closed(&self, rng: &mut dyn rand::RngCore) -> Self::Closed;
    /// A coboundary of `m`: a bordism `∅ → m`.
    fn sample_coboundary(&self, m: &Self::Closed, rng: &mut dyn rand::RngCore) -> Result<Self::Bordism>;
    fn render(&self, w: &Self::Bordism) -> Value;
    fn render_closed(&self, m: &Self::Closed) -> Value;
}

/// A system of fields on a bordism model.
pub trait FieldSystem {
    type Model: BordismModel;

    fn model(&self) -> &Self::Model;
    fn name(&self) -> String;
    /// All fields on `w` in sorted order.
    fn fields_on_bordism(&self, w: &Bordism<Self>) -> Result<Vec<Key>>;
    /// All fields on `m` in sorted order.
    fn fields_on_closed(&self, m: &Closed<Self>) -> Result<Vec<Key>>;
    fn restrict_in(&self, w: &Bordism<Self>, field: &Key) -> Result<Key>;
    fn restrict_out(&self, w: &Bordism<Self>, field: &Key) -> Result<Key>;
    /// `F(a ⊔ b) → F(a) × F(b)`.
    fn split_disjoint(&self, a: &Bordism<Self>, b: &Bordism<Self>, field: &Key) -> Result<(Key, Key)>;
    /// `F(a) × F(b) → F(a ⊔ b)`.
    fn join_disjoint(&self, a: &Bordism<Self>, b: &Bordism<Self>, fa: &Key, fb: &Key) -> Result<Key>;
    /// `F(m ⊔ n) → F(m) × F(n)`.
    fn split_closed(&self, m: &Closed<Self>, n: &Closed<Self>, field: &Key) -> Result<(Key, Key)>;
    /// `F(m) × F(n) → F(m ⊔ n)`.
    fn join_closed(&self, m: &Closed<Self>, n: &Closed<Self>, f: &Key, g: &Key) -> Result<Key>;
    /// `F(a ∪ b) → F(a) ×_{F(N)} F(b)`.
    fn split_glue(&self, a: &Bordism<Self>, b: &Bordism<Self>, field: &Key) -> Result<(Key, Key)>;
    /// The inverse of [`FieldSystem::split_glue`]; `None` when the two fields
    /// disagree on the common boundary.
    fn join_glue(&self, a: &Bordism<Self>, b: &Bordism<Self>, fa: &Key, fb: &Key) -> Result<Option<Key>>;
    /// `φ*: F(w2) → F(w)` for `φ: w → w2`.
    fn pullback(&self, phi: &Homeo<Self>, w: &Bordism<Self>, w2: &Bordism<Self>, field: &Key) -> Result<Key>;
    /// `φ_∂*: F(∂w2) → F(∂w)` on boundary pairs `(f_in, f_out)`.
    fn pullback_boundary(&self, phi: &Homeo<Self>, w: &Bordism<Self>, w2: &Bordism<Self>, field: &Key) -> Result<Key>;
    /// A partition of `F(m)` into isotopy classes. Singletons by default.
    fn isotopy_classes(&self, m: &Closed<Self>) -> Result<Vec<Vec<Key>>> {
        Ok(self.fields_on_closed(m)?.into_iter().map(|k| vec![k]).collect())
    }
    /// True when fields do not see subdivisions of a bordism, so that glued
    /// cylinders have the same state sums as a single cylinder.
    fn subdivision_invariant(&self) -> bool;
    fn render_field(&self, field: &Key) -> Value {
        field.to_json()
    }
}

/// Bordisms of the model behind a field system.
pub type Bordism<F> = <<F as FieldSystem>::Model as BordismModel>::Bordism;
/// Closed objects of the model behind a field system.
pub type Closed<F> = <<F as FieldSystem>::Model as BordismModel>::Closed;
/// Isomorphisms of the model behind a field system.
pub type Homeo<F> = <<F as FieldSystem>::Model as BordismModel>::Homeo;

/// A system of action exponentials with values in a strict monoidal category.
pub trait ActionSystem<M: BordismModel> {
    fn category(&self) -> &Arc<Category>;
    fn act(&self, w: &M::Bordism, field: &Key) -> Result<Mor>;
}

/// Selects `Q^c` or `Q^m` for tensor products of state vectors and for the
/// Frobenius pairing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Product {
    /// The composition product `·`.
    Comp,
    /// The monoidal product `×`.
    Mon,
}

/// Which factor a partial counit sums out.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `ε_{M,−}` sums out the incoming factor.
    Left,
    /// `ε_{−,P}` sums out the outgoing factor.
    Right,
}

/// A function on the boundary fields `F(M) × F(N)` of a bordism `M → N`.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector<C> {
    pub incoming: C,
    pub outgoing: C,
    pub vector: FunVector<ConvElement>,
}

impl<C> StateVector<C> {
    /// The support as a list of `{"in", "out", "value"}` rows, with each value
    /// a map from rendered morphisms to coefficients.
    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .vector
            .support()
            .map(|(k, v)| {
                let (f_in, f_out) = match k.as_tuple() {
                    Some([a, b]) => (a.to_json(), b.to_json()),
                    _ => (k.to_json(), Value::Null),
                };
                serde_json::json!({ "in": f_in, "out": f_out, "value": v.to_json_map() })
            })
            .collect();
        Value::Array(rows)
    }
}

/// A positive topological field theory: fields, actions and a coefficient semiring.
pub struct Tft<F, A> {
    name: String,
    fields: F,
    action: A,
    q: QContext,
}

impl<F, A> Tft<F, A>
where
    F: FieldSystem,
    A: ActionSystem<F::Model>,
{
    pub fn new(name: impl Into<String>, desc: Descriptor, fields: F, action: A) -> Result<Self> {
        desc.validate()?;
        let q = QContext::new(action.category().clone(), Arc::new(desc));
        Ok(Tft { name: name.into(), fields, action, q })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn fields(&self) -> &F {
        &self.fields
    }

    pub fn action(&self) -> &A {
        &self.action
    }

    pub fn model(&self) -> &F::Model {
        self.fields.model()
    }

    pub fn q(&self) -> &QContext {
        &self.q
    }

    pub fn comp(&self) -> CompQ {
        CompQ(self.q.clone())
    }

    pub fn mon(&self) -> MonQ {
        MonQ(self.q.clone())
    }

    pub fn category(&self) -> &Arc<Category> {
        self.q.category()
    }

    pub fn descriptor(&self) -> &Descriptor {
        self.q.descriptor()
    }

    /// `F(m)` as a ground set.
    pub fn closed_ground(&self, m: &Closed<F>) -> Result<Arc<GroundSet>> {
        GroundSet::atoms(self.fields.fields_on_closed(m)?)
    }

    /// `F(M) × F(N)` for a bordism `M → N`.
    pub fn pair_ground(&self, m: &Closed<F>, n: &Closed<F>) -> Result<Arc<GroundSet>> {
        GroundSet::product(&[self.closed_ground(m)?, self.closed_ground(n)?])
    }

    pub fn boundary_ground(&self, w: &Bordism<F>) -> Result<Arc<GroundSet>> {
        let model = self.model();
        self.pair_ground(&model.incoming(w), &model.outgoing(w))
    }

    /// The boundary restriction `(f_in, f_out)` of a field on `w`.
    pub fn boundary_of(&self, w: &Bordism<F>, field: &Key) -> Result<Key> {
        Ok(Key::pair(self.fields.restrict_in(w, field)?, self.fields.restrict_out(w, field)?))
    }

    /// `T_W(F) = χ_{𝕋_W(F)}`.
    pub fn t_char(&self, w: &Bordism<F>, field: &Key) -> Result<ConvElement> {
        self.q.characteristic(&self.action.act(w, field)?)
    }

    /// Counts, per boundary field, how many fields of `w` have each action.
    fn action_counts(&self, w: &Bordism<F>) -> Result<BTreeMap<Key, BTreeMap<Mor, u64>>> {
        let mut counts: BTreeMap<Key, BTreeMap<Mor, u64>> = BTreeMap::new();
        for field in self.fields.fields_on_bordism(w)? {
            let b = self.boundary_of(w, &field)?;
            *counts.entry(b).or_default().entry(self.action.act(w, &field)?).or_default() += 1;
        }
        Ok(counts)
    }

    /// The sum of `χ_m` repeated `count` times over the given counts.
    fn sum_counts(&self, counts: &BTreeMap<Mor, u64>) -> Result<ConvElement> {
        let desc = self.descriptor();
        let one = desc.one();
        let pairs = counts.iter().map(|(m, &c)| desc.repeat(Count::Fin(c), &one).map(|v| (m.clone(), v))).collect::<Result<Vec<_>>>()?;
        self.q.from_pairs(pairs)
    }

    /// `Z_W(f) = Σ_{F ∈ F(W,f)} T_W(F)` for a boundary pair `f`.
    pub fn state_sum(&self, w: &Bordism<F>, boundary: &Key) -> Result<ConvElement> {
        if !self.boundary_ground(w)?.contains(boundary) {
            return Err(Error::BoundaryMismatch(format!("{boundary} is not a boundary field of the bordism")));
        }
        let mut counts: BTreeMap<Mor, u64> = BTreeMap::new();
        for field in self.fields.fields_on_bordism(w)? {
            if self.boundary_of(w, &field)? == *boundary {
                *counts.entry(self.action.act(w, &field)?).or_default() += 1;
            }
        }
        self.sum_counts(&counts)
    }

    /// `Z_W ∈ E(∂W)`, checked against the constraint equation.
    pub fn state_vector(&self, w: &Bordism<F>) -> Result<StateVector<Closed<F>>> {
        let model = self.model();
        let ground = self.boundary_ground(w)?;
        let comp = self.comp();
        let mut vector = FunVector::zero(ground);
        for (b, counts) in self.action_counts(w)? {
            vector.set(&comp, b, self.sum_counts(&counts)?)?;
        }
        let z = StateVector { incoming: model.incoming(w), outgoing: model.outgoing(w), vector };
        if !self.satisfies_constraint(&z)? {
            return Err(Error::Unsupported("state vector is not constant on isotopy classes".into()));
        }
        Ok(z)
    }

    /// True when `z` is constant on products of isotopy classes.
    pub fn satisfies_constraint(&self, z: &StateVector<Closed<F>>) -> Result<bool> {
        let cin = self.fields.isotopy_classes(&z.incoming)?;
        let cout = self.fields.isotopy_classes(&z.outgoing)?;
        if cin.iter().chain(&cout).all(|c| c.len() <= 1) {
            return Ok(true);
        }
        let comp = self.comp();
        for a in &cin {
            for b in &cout {
                let first = z.vector.value(&comp, &Key::pair(a[0].clone(), b[0].clone()));
                for x in a {
                    for y in b {
                        if z.vector.value(&comp, &Key::pair(x.clone(), y.clone())) != first {
                            return Ok(false);
                        }
                    }
                }
            }
        }
        Ok(true)
    }

    /// `z ⊗̂ z′` on `∂(W ⊔ W′)`, regrouped so that incoming and outgoing
    /// boundaries are the ordered disjoint unions.
    pub fn tensor_states(&self, kind: Product, z1: &StateVector<Closed<F>>, z2: &StateVector<Closed<F>>) -> Result<StateVector<Closed<F>>> {
        let model = self.model();
        let incoming = model.disjoint_closed(&z1.incoming, &z2.incoming);
        let outgoing = model.disjoint_closed(&z1.outgoing, &z2.outgoing);
        let ground = self.pair_ground(&incoming, &outgoing)?;
        let comp = self.comp();
        let mut vector = FunVector::zero(ground);
        for (k1, v1) in z1.vector.support() {
            let t1 = k1.as_tuple().expect("boundary keys are pairs");
            for (k2, v2) in z2.vector.support() {
                let t2 = k2.as_tuple().expect("boundary keys are pairs");
                let fin = self.fields.join_closed(&z1.incoming, &z2.incoming, &t1[0], &t2[0])?;
                let fout = self.fields.join_closed(&z1.outgoing, &z2.outgoing, &t1[1], &t2[1])?;
                let v = match kind {
                    Product::Comp => crate::conv::q_comp_product(v1, v2)?,
                    Product::Mon => crate::conv::q_mon_product(v1, v2)?,
                };
                vector.accumulate(&comp, Key::pair(fin, fout), &v)?;
            }
        }
        Ok(StateVector { incoming, outgoing, vector })
    }

    /// `⟨z, z′⟩(f,h) = Σ_g z(f,g)·z′(g,h)` in `Q^c`.
    pub fn contract_states(&self, z1: &StateVector<Closed<F>>, z2: &StateVector<Closed<F>>) -> Result<StateVector<Closed<F>>> {
        if z1.outgoing != z2.incoming {
            return Err(Error::BoundaryMismatch("outgoing boundary of the first vector differs from incoming of the second".into()));
        }
        let vector = fv_inner(&self.comp(), &z1.vector, &z2.vector)?;
        Ok(StateVector { incoming: z1.incoming.clone(), outgoing: z2.outgoing.clone(), vector })
    }

    /// `φ_* z = z ∘ φ_∂*` for `φ: w → w2`.
    pub fn pushforward(&self, phi: &Homeo<F>, w: &Bordism<F>, w2: &Bordism<F>, z: &StateVector<Closed<F>>) -> Result<StateVector<Closed<F>>> {
        let model = self.model();
        let domain = self.boundary_ground(w2)?;
        let vector = crate::fun::fv_pullback(&domain, |k| self.fields.pullback_boundary(phi, w, w2, k), &z.vector)
            .map_err(|e| Error::InvalidHomeomorphism(e.to_string()))?;
        Ok(StateVector { incoming: model.incoming(w2), outgoing: model.outgoing(w2), vector })
    }

    /// `ε(z) = Σ_f z(f)`.
    pub fn counit(&self, z: &FunVector<ConvElement>) -> Result<ConvElement> {
        let values: Vec<ConvElement> = z.support().map(|(_, v)| v.clone()).collect();
        q_sum(&self.q, &values)
    }

    /// Sums out one factor of a vector on `F(M) × F(N)`. The result lives on
    /// `F(N)` for [`Side::Left`] and on `F(M)` for [`Side::Right`].
    pub fn partial_counit(&self, side: Side, z: &StateVector<Closed<F>>) -> Result<FunVector<ConvElement>> {
        let comp = self.comp();
        let (ground, keep) = match side {
            Side::Left => (self.closed_ground(&z.outgoing)?, 1),
            Side::Right => (self.closed_ground(&z.incoming)?, 0),
        };
        let mut groups: BTreeMap<Key, Vec<ConvElement>> = BTreeMap::new();
        for (k, v) in z.vector.support() {
            groups.entry(k.as_tuple().expect("pair")[keep].clone()).or_default().push(v.clone());
        }
        let mut out = FunVector::zero(ground);
        for (k, vs) in groups {
            out.set(&comp, k, q_sum(&self.q, &vs)?)?;
        }
        Ok(out)
    }

    /// Pointwise product of two vectors in `Q^c` or `Q^m`.
    pub fn pointwise(&self, kind: Product, a: &FunVector<ConvElement>, b: &FunVector<ConvElement>) -> Result<FunVector<ConvElement>> {
        match kind {
            Product::Comp => fv_pointwise(&self.comp(), Pointwise::Mul, a, b),
            Product::Mon => fv_pointwise(&self.mon(), Pointwise::Mul, a, b),
        }
    }

    /// For nonzero `z` on `F(M)`, the characteristic vector `z′` of the
    /// isotopy class of a field where `z` is nonzero, valued `1` or `1^×`,
    /// together with the pairing `ε(z z′)`, which is verified to be nonzero.
    pub fn frobenius_witness(&self, kind: Product, m: &Closed<F>, z: &FunVector<ConvElement>) -> Result<(FunVector<ConvElement>, ConvElement)> {
        let (f0, _) = z.support().next().ok_or(Error::ZeroVector)?;
        let class = self
            .fields
            .isotopy_classes(m)?
            .into_iter()
            .find(|c| c.contains(f0))
            .ok_or_else(|| Error::FieldNotOnBordism(format!("{f0} is not a field of the closed object")))?;
        let unit = match kind {
            Product::Comp => self.q.one_comp(),
            Product::Mon => self.q.one_mon(),
        };
        let witness = FunVector::indicator(&self.comp(), z.ground().clone(), &class, unit)?;
        let pairing = self.counit(&self.pointwise(kind, z, &witness)?)?;
        if pairing.is_zero() {
            return Err(Error::ZeroVector);
        }
        Ok((witness, pairing))
    }

    /// `π_{M,N}(z) = ⟨Z_{M×I}, z⟩`.
    pub fn projection(&self, z: &StateVector<Closed<F>>) -> Result<StateVector<Closed<F>>> {
        let cyl = self.model().cylinder(&z.incoming, CylinderShape::Straight)?;
        self.contract_states(&self.state_vector(&cyl)?, z)
    }

    /// `𝔄(M) = Σ_{W ∈ catalog} Z_W` over a finite catalog of coboundaries `∅ → M`.
    pub fn coboundary_aggregate(&self, m: &Closed<F>, catalog: &[Bordism<F>]) -> Result<StateVector<Closed<F>>> {
        let model = self.model();
        let empty = model.empty_closed();
        let comp = self.comp();
        let mut vector = FunVector::zero(self.pair_ground(&empty, m)?);
        for w in catalog {
            if model.incoming(w) != empty || model.outgoing(w) != *m {
                return Err(Error::BoundaryMismatch("catalog entries must be bordisms from the empty object to M".into()));
            }
            let z = self.state_vector(w)?;
            for (k, v) in z.vector.support() {
                vector.accumulate(&comp, k.clone(), v)?;
            }
        }
        Ok(StateVector { incoming: empty, outgoing: m.clone(), vector })
    }

    /// A random nonzero sparse vector on `ground` with up to `max_nnz` entries.
    pub fn random_state(&self, ground: &Arc<GroundSet>, max_nnz: usize, rng: &mut rand_chacha::ChaCha8Rng) -> Result<FunVector<ConvElement>> {
        use rand::Rng;
        let keys = ground.keys();
        let comp = self.comp();
        let mut z = FunVector::zero(ground.clone());
        while z.is_zero() && !keys.is_empty() {
            for _ in 0..rng.gen_range(1..=max_nnz.max(1)) {
                let k = keys[rng.gen_range(0..keys.len())].clone();
                let v = self.q.sample(rng, 2);
                z.accumulate(&comp, k, &v)?;
            }
        }
        Ok(z)
    }
}
