//! Field and action axiom checks and executable forms of the structural theorems.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::{ActionSystem, BordismModel, Closed, CylinderShape, FieldSystem, Product, Side, Tft};
use crate::error::{Error, Result};
use crate::fun::{fv_tensor, FunVector, Key};
use crate::report::{LawReport, VerdictReport};

/// Largest number of fields visited per bordism by the axiom checks.
const FIELD_LIMIT: usize = 4000;

/// Largest state module used for random vectors.
const MODULE_LIMIT: usize = 64;

/// The identities that [`Tft::verify_theorem`] can check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Theorem {
    /// `φ_*(Z_W) = Z_{W′}` for every isomorphism `φ: W → W′`.
    TopInvariance,
    /// State vectors are constant on isotopy classes.
    Isotopy,
    /// `Z_{W⊔W′} = Z_W ⊗̂_m Z_{W′}`.
    Disjoint,
    /// `Z_{W′∪W″} = ⟨Z_{W′}, Z_{W″}⟩`.
    Gluing,
    /// `⟨Z_C, Z_C⟩ = Z_C` for a cylinder `C`.
    CylIdempotent,
    /// `⟨Z_{cup} ⊗̂_m Z_C, Z_C ⊗̂_m Z_{cap}⟩ = Z_C`.
    Zigzag,
    /// `π(Z_W) = Z_W`.
    ProjFixes,
    /// `π(π(z)) = π(z)`.
    ProjIdempotent,
    /// `π(z ⊗̂_m z′) = π(z) ⊗̂_m π(z′)`.
    ProjTensorSplit,
    /// `ε(z ⊗̂ z′) = ε(z) ε(z′)` for both products.
    CounitMult,
    /// `ε⟨z, z′⟩ = ε_N(ε_{M,−}(z) · ε_{−,P}(z′))`.
    CounitContract,
    /// Every nonzero vector has a partner with nonzero pairing.
    Frobenius,
    /// Coboundary aggregates commute with boundary relabelings of a catalog.
    AggregateInvariance,
}

impl Theorem {
    pub const ALL: [Theorem; 13] = [
        Theorem::TopInvariance,
        Theorem::Isotopy,
        Theorem::Disjoint,
        Theorem::Gluing,
        Theorem::CylIdempotent,
        Theorem::Zigzag,
        Theorem::ProjFixes,
        Theorem::ProjIdempotent,
        Theorem::ProjTensorSplit,
        Theorem::CounitMult,
        Theorem::CounitContract,
        Theorem::Frobenius,
        Theorem::AggregateInvariance,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            Theorem::TopInvariance => "top-invariance",
            Theorem::Isotopy => "isotopy",
            Theorem::Disjoint => "disjoint",
            Theorem::Gluing => "gluing",
            Theorem::CylIdempotent => "cyl-idempotent",
            Theorem::Zigzag => "zigzag",
            Theorem::ProjFixes => "proj-fixes",
            Theorem::ProjIdempotent => "proj-idempotent",
            Theorem::ProjTensorSplit => "proj-tensor-split",
            Theorem::CounitMult => "counit-mult",
            Theorem::CounitContract => "counit-contract",
            Theorem::Frobenius => "frobenius",
            Theorem::AggregateInvariance => "aggregate-invariance",
        }
    }

    /// Theorems whose proof needs cylinders to be stable under subdivision.
    pub fn needs_subdivision_invariance(&self) -> bool {
        matches!(self, Theorem::CylIdempotent | Theorem::Zigzag | Theorem::ProjFixes | Theorem::ProjIdempotent)
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Theorem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Theorem> {
        Theorem::ALL
            .iter()
            .copied()
            .find(|t| t.id() == s)
            .ok_or_else(|| Error::InvalidParams(format!("unknown theorem `{s}`")))
    }
}

fn contains(sorted: &[Key], k: &Key) -> bool {
    sorted.binary_search(k).is_ok()
}

impl<F, A> Tft<F, A>
where
    F: FieldSystem,
    A: ActionSystem<F::Model>,
{
    /// Checks the field axioms on sampled bordisms: restriction squares for
    /// disjoint unions and gluings, bijectivity of the disjoint-union and
    /// gluing maps (also under fixed boundary conditions), and functoriality
    /// and restriction-compatibility of pullbacks along isomorphisms.
    pub fn check_field_axioms(&self, samples: usize, seed: u64) -> LawReport {
        let mut report = LawReport::new(format!("field axioms of {}", self.name()));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let model = self.model();
        let fs = self.fields();
        for _ in 0..samples {
            let (a, b) = model.sample_disjoint_pair(&mut rng);
            let cex = || json!({ "a": model.render(&a), "b": model.render(&b) });
            match model.disjoint(&a, &b) {
                Ok(ab) => {
                    let outcome = self.disjoint_field_case(&a, &b, &ab);
                    match outcome {
                        Ok(results) => {
                            for (law, ok) in results {
                                report.record(law, ok, cex);
                            }
                        }
                        Err(e) => report.record_result("fdisj-bijective", Err(e), cex),
                    }
                }
                Err(Error::InvalidBordism(_)) => {}
                Err(e) => report.record_result("fdisj-bijective", Err(e), cex),
            }

            let m = model.sample_closed(&mut rng);
            let n = model.sample_closed(&mut rng);
            let ok = (|| -> Result<bool> {
                let mn = model.disjoint_closed(&m, &n);
                let all = fs.fields_on_closed(&mn)?;
                let (fm, fn_) = (fs.fields_on_closed(&m)?, fs.fields_on_closed(&n)?);
                if all.len() != fm.len() * fn_.len() {
                    return Ok(false);
                }
                for f in all.iter().take(FIELD_LIMIT) {
                    let (x, y) = fs.split_closed(&m, &n, f)?;
                    if !contains(&fm, &x) || !contains(&fn_, &y) || fs.join_closed(&m, &n, &x, &y)? != *f {
                        return Ok(false);
                    }
                }
                Ok(true)
            })();
            report.record_result("fdisj-closed", ok, || json!({ "m": model.render_closed(&m), "n": model.render_closed(&n) }));

            let (a, b) = model.sample_glue_pair(&mut rng);
            let cex = || json!({ "a": model.render(&a), "b": model.render(&b) });
            match model.glue(&a, &b) {
                Ok(g) => match self.glue_field_case(&a, &b, &g) {
                    Ok(results) => {
                        for (law, ok) in results {
                            report.record(law, ok, cex);
                        }
                    }
                    Err(e) => report.record_result("fglue-bijective", Err(e), cex),
                },
                Err(e) => report.record_result("fglue-bijective", Err(e), cex),
            }

            let w = model.sample_bordism(&mut rng);
            let (w2, phi) = model.scramble(&w, &mut rng);
            let cex = || json!({ "w": model.render(&w), "w2": model.render(&w2), "phi": format!("{phi:?}") });
            match self.homeo_field_case(&w, &w2, &phi) {
                Ok(results) => {
                    for (law, ok) in results {
                        report.record(law, ok, cex);
                    }
                }
                Err(e) => report.record_result("fhomeo-bijective", Err(e), cex),
            }
        }
        report
    }

    fn disjoint_field_case(&self, a: &super::Bordism<F>, b: &super::Bordism<F>, ab: &super::Bordism<F>) -> Result<Vec<(&'static str, bool)>> {
        let (model, fs) = (self.model(), self.fields());
        let (fa, fb, fab) = (fs.fields_on_bordism(a)?, fs.fields_on_bordism(b)?, fs.fields_on_bordism(ab)?);
        let mut bij = fab.len() == fa.len() * fb.len();
        let mut res = true;
        let (ina, inb, outa, outb) = (model.incoming(a), model.incoming(b), model.outgoing(a), model.outgoing(b));
        for f in fab.iter().take(FIELD_LIMIT) {
            let (x, y) = fs.split_disjoint(a, b, f)?;
            bij &= contains(&fa, &x) && contains(&fb, &y) && fs.join_disjoint(a, b, &x, &y)? == *f;
            let rin = fs.join_closed(&ina, &inb, &fs.restrict_in(a, &x)?, &fs.restrict_in(b, &y)?)?;
            let rout = fs.join_closed(&outa, &outb, &fs.restrict_out(a, &x)?, &fs.restrict_out(b, &y)?)?;
            res &= fs.restrict_in(ab, f)? == rin && fs.restrict_out(ab, f)? == rout;
        }
        // Boundary-conditioned counts factor as products.
        let count = |w: &super::Bordism<F>, fields: &[Key]| -> Result<BTreeMap<Key, u64>> {
            let mut c = BTreeMap::new();
            for f in fields {
                *c.entry(self.boundary_of(w, f)?).or_insert(0u64) += 1;
            }
            Ok(c)
        };
        let (ca, cb, cab) = (count(a, &fa)?, count(b, &fb)?, count(ab, &fab)?);
        let mut cond = true;
        for (k, &n) in &cab {
            let t = k.as_tuple().expect("pair");
            let (ia, ib) = fs.split_closed(&ina, &inb, &t[0])?;
            let (oa, ob) = fs.split_closed(&outa, &outb, &t[1])?;
            let na = ca.get(&Key::pair(ia, oa)).copied().unwrap_or(0);
            let nb = cb.get(&Key::pair(ib, ob)).copied().unwrap_or(0);
            cond &= n == na * nb;
        }
        cond &= cab.values().sum::<u64>() == ca.values().sum::<u64>() * cb.values().sum::<u64>();
        Ok(vec![("fdisj-bijective", bij), ("fres-disjoint", res), ("fdisj-boundary-conditions", cond)])
    }

    fn glue_field_case(&self, a: &super::Bordism<F>, b: &super::Bordism<F>, g: &super::Bordism<F>) -> Result<Vec<(&'static str, bool)>> {
        let fs = self.fields();
        let (fa, fb, fg) = (fs.fields_on_bordism(a)?, fs.fields_on_bordism(b)?, fs.fields_on_bordism(g)?);
        let mut bij = true;
        let mut res = true;
        for f in fg.iter().take(FIELD_LIMIT) {
            let (x, y) = fs.split_glue(a, b, f)?;
            bij &= contains(&fa, &x) && contains(&fb, &y);
            bij &= fs.restrict_out(a, &x)? == fs.restrict_in(b, &y)?;
            bij &= fs.join_glue(a, b, &x, &y)? == Some(f.clone());
            res &= fs.restrict_in(g, f)? == fs.restrict_in(a, &x)? && fs.restrict_out(g, f)? == fs.restrict_out(b, &y)?;
        }
        // |F(a ∪ b)| equals the size of the fibre product over F(N).
        let mut over_n: BTreeMap<Key, (u64, u64)> = BTreeMap::new();
        for x in &fa {
            over_n.entry(fs.restrict_out(a, x)?).or_default().0 += 1;
        }
        for y in &fb {
            over_n.entry(fs.restrict_in(b, y)?).or_default().1 += 1;
        }
        let pullback: u64 = over_n.values().map(|(p, q)| p * q).sum();
        bij &= pullback == fg.len() as u64;
        Ok(vec![("fglue-bijective", bij), ("fres-glue", res)])
    }

    fn homeo_field_case(&self, w: &super::Bordism<F>, w2: &super::Bordism<F>, phi: &super::Homeo<F>) -> Result<Vec<(&'static str, bool)>> {
        let (model, fs) = (self.model(), self.fields());
        let (f1, f2) = (fs.fields_on_bordism(w)?, fs.fields_on_bordism(w2)?);
        let mut image = BTreeSet::new();
        let mut restr = true;
        for f in f2.iter().take(FIELD_LIMIT) {
            let p = fs.pullback(phi, w, w2, f)?;
            restr &= self.boundary_of(w, &p)? == fs.pullback_boundary(phi, w, w2, &self.boundary_of(w2, f)?)?;
            image.insert(p);
        }
        let checked = f2.len().min(FIELD_LIMIT);
        let bij = f1.len() == f2.len() && image.len() == checked && image.iter().all(|k| contains(&f1, k));
        let mut func = true;
        let id = model.identity_homeo(w2);
        if let Some(psi) = model.homeomorphisms(w2, w2)?.last() {
            let comp = model.compose_homeo(psi, phi);
            for f in f2.iter().take(FIELD_LIMIT / 4) {
                let lhs = fs.pullback(&comp, w, w2, f)?;
                let rhs = fs.pullback(phi, w, w2, &fs.pullback(psi, w2, w2, f)?)?;
                func &= lhs == rhs && fs.pullback(&id, w2, w2, f)? == *f;
            }
        }
        Ok(vec![("fhomeo-bijective", bij), ("fhomeo-functorial", func), ("fhomeo-restriction", restr)])
    }

    /// Checks the action axioms morphism-exactly on sampled bordisms: the
    /// disjoint-union and gluing rules, invariance under isomorphisms, and
    /// the value `id_I` on the empty bordism.
    pub fn check_action_axioms(&self, samples: usize, seed: u64) -> LawReport {
        let mut report = LawReport::new(format!("action axioms of {}", self.name()));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (model, fs, act, cat) = (self.model(), self.fields(), self.action(), self.category().clone());
        let empty = model.empty();
        let ok = (|| -> Result<bool> {
            let fields = fs.fields_on_bordism(&empty)?;
            Ok(fields.len() == 1 && act.act(&empty, &fields[0])? == cat.unit_identity())
        })();
        report.record_result("empty-is-unit", ok, || json!({}));
        for _ in 0..samples {
            let (a, b) = model.sample_disjoint_pair(&mut rng);
            if let Ok(ab) = model.disjoint(&a, &b) {
                let ok = (|| -> Result<Option<Value>> {
                    for f in fs.fields_on_bordism(&ab)?.iter().take(FIELD_LIMIT) {
                        let (x, y) = fs.split_disjoint(&a, &b, f)?;
                        let rhs = cat.tensor(&act.act(&a, &x)?, &act.act(&b, &y)?)?;
                        let lhs = act.act(&ab, f)?;
                        if lhs != rhs {
                            return Ok(Some(json!({ "field": fs.render_field(f), "whole": cat.render_mor(&lhs), "tensor": cat.render_mor(&rhs) })));
                        }
                    }
                    Ok(None)
                })();
                record_case(&mut report, "tdisj", ok, || json!({ "a": model.render(&a), "b": model.render(&b) }));
            }

            let (a, b) = model.sample_glue_pair(&mut rng);
            let ok = (|| -> Result<Option<Value>> {
                let g = model.glue(&a, &b)?;
                for f in fs.fields_on_bordism(&g)?.iter().take(FIELD_LIMIT) {
                    let (x, y) = fs.split_glue(&a, &b, f)?;
                    let rhs = cat.compose(&act.act(&b, &y)?, &act.act(&a, &x)?)?;
                    let lhs = act.act(&g, f)?;
                    if lhs != rhs {
                        return Ok(Some(json!({ "field": fs.render_field(f), "whole": cat.render_mor(&lhs), "composite": cat.render_mor(&rhs) })));
                    }
                }
                Ok(None)
            })();
            record_case(&mut report, "tglue", ok, || json!({ "a": model.render(&a), "b": model.render(&b) }));

            let w = model.sample_bordism(&mut rng);
            let (w2, phi) = model.scramble(&w, &mut rng);
            let ok = (|| -> Result<Option<Value>> {
                for f in fs.fields_on_bordism(&w2)?.iter().take(FIELD_LIMIT) {
                    let lhs = act.act(&w, &fs.pullback(&phi, &w, &w2, f)?)?;
                    let rhs = act.act(&w2, f)?;
                    if lhs != rhs {
                        return Ok(Some(json!({ "field": fs.render_field(f), "pulled": cat.render_mor(&lhs), "original": cat.render_mor(&rhs) })));
                    }
                }
                Ok(None)
            })();
            record_case(&mut report, "thomeo", ok, || json!({ "w": model.render(&w), "w2": model.render(&w2) }));
        }
        report
    }

    /// Runs `cases` seeded instances of `which`. Theorems outside the
    /// instance's scope are reported as scoped out; any failure found then is
    /// kept as a recorded counterexample rather than counted.
    pub fn verify_theorem(&self, which: Theorem, cases: usize, seed: u64) -> VerdictReport {
        let mut verdict = VerdictReport::new(which.id(), self.name());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let scope = if which.needs_subdivision_invariance() && !self.fields().subdivision_invariant() {
            Some("fields are not invariant under subdivision, so glued cylinders differ from a single cylinder".to_string())
        } else if which == Theorem::ProjTensorSplit && !(self.category().is_one_object() && self.descriptor().is_commutative()) {
            Some("tensor splitting of projections needs a one-object category and a commutative semiring".to_string())
        } else {
            None
        };
        for _ in 0..cases {
            match self.theorem_case(which, &mut rng) {
                Ok(None) => verdict.record(true, || Value::Null),
                Ok(Some(cex)) => verdict.record(false, || cex),
                Err(e) => verdict.record(false, || json!({ "error": e.to_string() })),
            }
        }
        if let Some(reason) = scope {
            verdict.scoped_out = Some(reason);
            verdict.recorded_counterexample = verdict.counterexample.take();
            verdict.failures = 0;
        }
        verdict
    }

    fn small_closed(&self, rng: &mut ChaCha8Rng) -> Result<Closed<F>> {
        let model = self.model();
        for _ in 0..32 {
            let m = model.sample_closed(rng);
            if self.fields().fields_on_closed(&m)?.len() <= MODULE_LIMIT {
                return Ok(m);
            }
        }
        Ok(model.empty_closed())
    }

    fn random_pair_state(&self, m: &Closed<F>, n: &Closed<F>, rng: &mut ChaCha8Rng) -> Result<super::StateVector<Closed<F>>> {
        let ground = self.pair_ground(m, n)?;
        Ok(super::StateVector { incoming: m.clone(), outgoing: n.clone(), vector: self.random_state(&ground, 4, rng)? })
    }

    /// One seeded case; `Ok(Some(_))` carries a counterexample.
    pub fn theorem_case(&self, which: Theorem, rng: &mut ChaCha8Rng) -> Result<Option<Value>> {
        let model = self.model();
        let sv = |w: &super::Bordism<F>| self.state_vector(w);
        let differ = |lhs: &super::StateVector<Closed<F>>, rhs: &super::StateVector<Closed<F>>, ctx: Value| -> Option<Value> {
            (lhs != rhs).then(|| json!({ "context": ctx, "lhs": lhs.to_json(), "rhs": rhs.to_json() }))
        };
        match which {
            Theorem::TopInvariance => {
                let w = model.sample_bordism(rng);
                let (w2, _) = model.scramble(&w, rng);
                let (z, z2) = (sv(&w)?, sv(&w2)?);
                let homeos = model.homeomorphisms(&w, &w2)?;
                if homeos.is_empty() {
                    return Ok(Some(json!({ "error": "no isomorphism found", "w": model.render(&w), "w2": model.render(&w2) })));
                }
                for phi in &homeos {
                    let pushed = self.pushforward(phi, &w, &w2, &z)?;
                    if let Some(c) = differ(&pushed, &z2, json!({ "w": model.render(&w), "w2": model.render(&w2), "phi": format!("{phi:?}") })) {
                        return Ok(Some(c));
                    }
                }
                Ok(None)
            }
            Theorem::Isotopy => {
                let w = model.sample_bordism(rng);
                let z = sv(&w)?;
                let m = model.incoming(&w);
                let classes = self.fields().isotopy_classes(&m)?;
                let mut seen: Vec<Key> = classes.concat();
                seen.sort();
                let partition = seen == self.fields().fields_on_closed(&m)?;
                Ok((!partition || !self.satisfies_constraint(&z)?).then(|| json!({ "w": model.render(&w) })))
            }
            Theorem::Disjoint => {
                // Some models only form disjoint unions of compatible bordisms.
                let mut attempt = 0;
                let (a, b, ab) = loop {
                    let (a, b) = model.sample_disjoint_pair(rng);
                    match model.disjoint(&a, &b) {
                        Ok(ab) => break (a, b, ab),
                        Err(Error::InvalidBordism(_)) if attempt < 64 => attempt += 1,
                        Err(e) => return Err(e),
                    }
                };
                let rhs = self.tensor_states(Product::Mon, &sv(&a)?, &sv(&b)?)?;
                Ok(differ(&sv(&ab)?, &rhs, json!({ "a": model.render(&a), "b": model.render(&b) })))
            }
            Theorem::Gluing => {
                let (a, b) = model.sample_glue_pair(rng);
                let g = model.glue(&a, &b)?;
                let rhs = self.contract_states(&sv(&a)?, &sv(&b)?)?;
                Ok(differ(&sv(&g)?, &rhs, json!({ "a": model.render(&a), "b": model.render(&b) })))
            }
            Theorem::CylIdempotent => {
                let m = self.small_closed(rng)?;
                let z = sv(&model.cylinder(&m, CylinderShape::Straight)?)?;
                Ok(differ(&self.contract_states(&z, &z)?, &z, json!({ "closed": model.render_closed(&m) })))
            }
            Theorem::Zigzag => {
                let m = self.small_closed(rng)?;
                let cyl = sv(&model.cylinder(&m, CylinderShape::Straight)?)?;
                let cup = sv(&model.cylinder(&m, CylinderShape::Cup)?)?;
                let cap = sv(&model.cylinder(&m, CylinderShape::Cap)?)?;
                let left = self.tensor_states(Product::Mon, &cup, &cyl)?;
                let right = self.tensor_states(Product::Mon, &cyl, &cap)?;
                Ok(differ(&self.contract_states(&left, &right)?, &cyl, json!({ "closed": model.render_closed(&m) })))
            }
            Theorem::ProjFixes => {
                let w = model.sample_bordism(rng);
                let z = sv(&w)?;
                Ok(differ(&self.projection(&z)?, &z, json!({ "w": model.render(&w) })))
            }
            Theorem::ProjIdempotent => {
                let (m, n) = (self.small_closed(rng)?, self.small_closed(rng)?);
                let z = self.random_pair_state(&m, &n, rng)?;
                let p = self.projection(&z)?;
                Ok(differ(&self.projection(&p)?, &p, json!({ "z": z.to_json() })))
            }
            Theorem::ProjTensorSplit => {
                let (m, n) = (self.small_closed(rng)?, self.small_closed(rng)?);
                let (m2, n2) = (self.small_closed(rng)?, self.small_closed(rng)?);
                let z = self.random_pair_state(&m, &n, rng)?;
                let z2 = self.random_pair_state(&m2, &n2, rng)?;
                let lhs = self.projection(&self.tensor_states(Product::Mon, &z, &z2)?)?;
                let rhs = self.tensor_states(Product::Mon, &self.projection(&z)?, &self.projection(&z2)?)?;
                Ok(differ(&lhs, &rhs, json!({ "z": z.to_json(), "z2": z2.to_json() })))
            }
            Theorem::CounitMult => {
                let (m, n) = (self.small_closed(rng)?, self.small_closed(rng)?);
                let z = self.random_state(&self.closed_ground(&m)?, 4, rng)?;
                let z2 = self.random_state(&self.closed_ground(&n)?, 4, rng)?;
                self.counit_mult_case(&z, &z2)
            }
            Theorem::CounitContract => {
                let (m, n, p) = (self.small_closed(rng)?, self.small_closed(rng)?, self.small_closed(rng)?);
                let z = self.random_pair_state(&m, &n, rng)?;
                let z2 = self.random_pair_state(&n, &p, rng)?;
                self.counit_contract_case(&z, &z2)
            }
            Theorem::Frobenius => {
                let m = self.small_closed(rng)?;
                let ground = self.closed_ground(&m)?;
                let z = if rng.gen_bool(0.5) {
                    let keys = ground.keys();
                    let k = keys[rng.gen_range(0..keys.len())].clone();
                    let mut v = self.q().sample(rng, 2);
                    while v.is_zero() {
                        v = self.q().sample(rng, 2);
                    }
                    FunVector::indicator(&self.comp(), ground, &[k], v)?
                } else {
                    self.random_state(&ground, 4, rng)?
                };
                self.frobenius_case(&m, &z)
            }
            Theorem::AggregateInvariance => {
                let mut m = self.small_closed(rng)?;
                for _ in 0..32 {
                    if model.sample_coboundary(&m, rng).is_ok() {
                        break;
                    }
                    m = self.small_closed(rng)?;
                }
                let count = rng.gen_range(1..=3);
                let catalog = (0..count).map(|_| model.sample_coboundary(&m, rng)).collect::<Result<Vec<_>>>()?;
                let mut perm: Vec<usize> = (0..model.closed_size(&m)).collect();
                perm.shuffle(rng);
                let mut moved = Vec::new();
                let mut homeos = Vec::new();
                for w in &catalog {
                    let (w2, phi) = model.relabel_boundary(w, &[], &perm)?;
                    moved.push(w2);
                    homeos.push(phi);
                }
                let m2 = model.outgoing(&moved[0]);
                let agg = self.coboundary_aggregate(&m, &catalog)?;
                let agg2 = self.coboundary_aggregate(&m2, &moved)?;
                let pushed = self.pushforward(&homeos[0], &catalog[0], &moved[0], &agg)?;
                Ok(differ(&pushed, &agg2, json!({ "closed": model.render_closed(&m), "catalog": catalog.iter().map(|w| model.render(w)).collect::<Vec<_>>() })))
            }
        }
    }

    /// `ε(z ⊗̂ z′) = ε(z) ε(z′)` under both products.
    pub fn counit_mult_case(&self, z: &FunVector<crate::conv::ConvElement>, z2: &FunVector<crate::conv::ConvElement>) -> Result<Option<Value>> {
        let (e1, e2) = (self.counit(z)?, self.counit(z2)?);
        let comp_lhs = self.counit(&fv_tensor(&self.comp(), z, z2)?)?;
        let comp_rhs = crate::conv::q_comp_product(&e1, &e2)?;
        let mon_lhs = self.counit(&fv_tensor(&self.mon(), z, z2)?)?;
        let mon_rhs = crate::conv::q_mon_product(&e1, &e2)?;
        Ok((comp_lhs != comp_rhs || mon_lhs != mon_rhs).then(|| {
            json!({ "z": z.to_json(|v| v.to_json()), "z2": z2.to_json(|v| v.to_json()), "comp": [comp_lhs.to_json(), comp_rhs.to_json()], "mon": [mon_lhs.to_json(), mon_rhs.to_json()] })
        }))
    }

    /// `ε⟨z, z′⟩ = ε_N(ε_{M,−}(z) · ε_{−,P}(z′))`.
    pub fn counit_contract_case(&self, z: &super::StateVector<Closed<F>>, z2: &super::StateVector<Closed<F>>) -> Result<Option<Value>> {
        let lhs = self.counit(&self.contract_states(z, z2)?.vector)?;
        let left = self.partial_counit(Side::Left, z)?;
        let right = self.partial_counit(Side::Right, z2)?;
        let rhs = self.counit(&self.pointwise(Product::Comp, &left, &right)?)?;
        Ok((lhs != rhs).then(|| json!({ "z": z.to_json(), "z2": z2.to_json(), "lhs": lhs.to_json(), "rhs": rhs.to_json() })))
    }

    /// Runs the constructive nondegeneracy witness under both products.
    pub fn frobenius_case(&self, m: &Closed<F>, z: &FunVector<crate::conv::ConvElement>) -> Result<Option<Value>> {
        for kind in [Product::Comp, Product::Mon] {
            match self.frobenius_witness(kind, m, z) {
                Ok(_) => {}
                Err(Error::ZeroVector) => return Ok(Some(json!({ "z": z.to_json(|v| v.to_json()), "product": format!("{kind:?}") }))),
                Err(e) => return Err(e),
            }
        }
        Ok(None)
    }
}

fn record_case(report: &mut LawReport, law: &str, outcome: Result<Option<Value>>, context: impl FnOnce() -> Value) {
    match outcome {
        Ok(None) => report.record(law, true, || Value::Null),
        Ok(Some(detail)) => report.record(law, false, || json!({ "bordisms": context(), "detail": detail })),
        Err(e) => report.record_result(law, Err(e), context),
    }
}
