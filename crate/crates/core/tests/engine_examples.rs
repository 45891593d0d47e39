//! Worked examples for the state-vector operations of the engine: state sums
//! of small graphs, pushforwards, tensor and contraction products, counits,
//! Frobenius witnesses, coboundary aggregates and linear representations.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use ptft_core::conv::{q_add, q_comp_product, q_sum, table_products, ConvElement};
use ptft_core::engine::{check_representation, ActionSystem, BordismModel, FieldSystem, Homeo, Product, Representation, StateVector, Tft};
use ptft_core::fun::{FunVector, Key};
use ptft_core::models::graph::{GraphBordism, GraphFields, GraphModel, LabelMode};
use ptft_core::models::polya::{orbit_count_oracle, PermGroup, Universe};
use ptft_core::models::{delta_instance, integer_power_representation, max_instance};
use ptft_core::moncat::{iv_category, two_object_category, Category, MatMorphism, Mor};
use ptft_core::semiring::{Count, Descriptor, Element};
use ptft_core::{Error, Result};

/// Sends every field to one fixed morphism. Only the coefficient algebra of
/// the resulting theory is used, so the action axioms play no part.
struct ConstAction {
    category: Arc<Category>,
    value: Mor,
}

impl ActionSystem<GraphModel> for ConstAction {
    fn category(&self) -> &Arc<Category> {
        &self.category
    }

    fn act(&self, _: &GraphBordism, _: &Key) -> Result<Mor> {
        Ok(self.value.clone())
    }
}

/// Graph fields whose isotopy classes on a closed object are all of `F(M)`.
struct CoarseFields(GraphFields);

impl FieldSystem for CoarseFields {
    type Model = GraphModel;

    fn model(&self) -> &GraphModel {
        self.0.model()
    }
    fn name(&self) -> String {
        "coarse".into()
    }
    fn fields_on_bordism(&self, w: &GraphBordism) -> Result<Vec<Key>> {
        self.0.fields_on_bordism(w)
    }
    fn fields_on_closed(&self, m: &usize) -> Result<Vec<Key>> {
        self.0.fields_on_closed(m)
    }
    fn restrict_in(&self, w: &GraphBordism, field: &Key) -> Result<Key> {
        self.0.restrict_in(w, field)
    }
    fn restrict_out(&self, w: &GraphBordism, field: &Key) -> Result<Key> {
        self.0.restrict_out(w, field)
    }
    fn split_disjoint(&self, a: &GraphBordism, b: &GraphBordism, field: &Key) -> Result<(Key, Key)> {
        self.0.split_disjoint(a, b, field)
    }
    fn join_disjoint(&self, a: &GraphBordism, b: &GraphBordism, fa: &Key, fb: &Key) -> Result<Key> {
        self.0.join_disjoint(a, b, fa, fb)
    }
    fn split_closed(&self, m: &usize, n: &usize, field: &Key) -> Result<(Key, Key)> {
        self.0.split_closed(m, n, field)
    }
    fn join_closed(&self, m: &usize, n: &usize, f: &Key, g: &Key) -> Result<Key> {
        self.0.join_closed(m, n, f, g)
    }
    fn split_glue(&self, a: &GraphBordism, b: &GraphBordism, field: &Key) -> Result<(Key, Key)> {
        self.0.split_glue(a, b, field)
    }
    fn join_glue(&self, a: &GraphBordism, b: &GraphBordism, fa: &Key, fb: &Key) -> Result<Option<Key>> {
        self.0.join_glue(a, b, fa, fb)
    }
    fn pullback(&self, phi: &Homeo<Self>, w: &GraphBordism, w2: &GraphBordism, field: &Key) -> Result<Key> {
        self.0.pullback(phi, w, w2, field)
    }
    fn pullback_boundary(&self, phi: &Homeo<Self>, w: &GraphBordism, w2: &GraphBordism, field: &Key) -> Result<Key> {
        self.0.pullback_boundary(phi, w, w2, field)
    }
    fn isotopy_classes(&self, m: &usize) -> Result<Vec<Vec<Key>>> {
        Ok(vec![self.0.fields_on_closed(m)?])
    }
    fn subdivision_invariant(&self) -> bool {
        true
    }
}

fn two_object_tft() -> Tft<GraphFields, ConstAction> {
    let category = Arc::new(two_object_category());
    let value = category.as_table().unwrap().morphism_id("gamma").unwrap();
    let fields = GraphFields::new(LabelMode::LocallyConstant, 0, 1).unwrap();
    Tft::new("two-object", Descriptor::NatInf, fields, ConstAction { category, value }).unwrap()
}

fn named(tft: &Tft<GraphFields, ConstAction>, name: &str) -> ConvElement {
    let m = tft.category().as_table().unwrap().morphism_id(name).unwrap();
    tft.q().characteristic(&m).unwrap()
}

fn single<F: FieldSystem<Model = GraphModel>, A: ActionSystem<GraphModel>>(tft: &Tft<F, A>, m: usize, n: usize, value: ConvElement) -> StateVector<usize> {
    let ground = tft.pair_ground(&m, &n).unwrap();
    let key = ground.keys()[0].clone();
    StateVector { incoming: m, outgoing: n, vector: FunVector::indicator(&tft.comp(), ground, &[key], value).unwrap() }
}

fn random_vector<F: FieldSystem<Model = GraphModel>, A: ActionSystem<GraphModel>>(tft: &Tft<F, A>, m: usize, n: usize, rng: &mut ChaCha8Rng) -> StateVector<usize> {
    let ground = tft.pair_ground(&m, &n).unwrap();
    StateVector { incoming: m, outgoing: n, vector: tft.random_state(&ground, 4, rng).unwrap() }
}

fn first_label(k: &Key) -> i64 {
    k.as_tuple().unwrap()[0].as_int().unwrap()
}

#[test]
fn empty_bordism_has_the_monoidal_unit_as_its_only_value() {
    let tft = delta_instance(2, Descriptor::NatInf).unwrap();
    let empty = tft.model().empty();
    let z = tft.state_vector(&empty).unwrap();
    let values: Vec<&ConvElement> = z.vector.support().map(|(_, v)| v).collect();
    assert_eq!(values, vec![&tft.q().one_mon()]);
    let field = tft.fields().fields_on_bordism(&empty).unwrap().remove(0);
    assert_eq!(tft.t_char(&empty, &field).unwrap(), tft.q().one_mon());
}

#[test]
fn constant_field_on_an_interval_acts_by_its_value() {
    let tft = max_instance(LabelMode::LocallyConstant, 1, Descriptor::NatInf).unwrap();
    let w = GraphBordism::interval(0);
    assert_eq!(tft.t_char(&w, &Key::ints(&[1, 1])).unwrap(), tft.q().characteristic(&Mor::Grid(1)).unwrap());
}

#[test]
fn max_interval_state_vector_is_diagonal() {
    let tft = max_instance(LabelMode::LocallyConstant, 1, Descriptor::NatInf).unwrap();
    let z = tft.state_vector(&GraphBordism::interval(2)).unwrap();
    let mut seen = Vec::new();
    for (k, v) in z.vector.support() {
        let [f_in, f_out] = k.as_tuple().unwrap() else { panic!("{k} is not a pair") };
        assert_eq!(f_in, f_out);
        let a = first_label(f_in);
        assert_eq!(*v, tft.q().characteristic(&Mor::Grid(a as u32)).unwrap());
        seen.push(a);
    }
    assert_eq!(seen, vec![0, 1]);
}

#[test]
fn identity_pushforward_is_the_identity() {
    let tft = max_instance(LabelMode::LocallyConstant, 2, Descriptor::NatInf).unwrap();
    let model = tft.model();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..20 {
        let w = model.sample_bordism(&mut rng);
        let z = tft.state_vector(&w).unwrap();
        assert_eq!(tft.pushforward(&model.identity_homeo(&w), &w, &w, &z).unwrap(), z);
    }
}

#[test]
fn swapping_parallel_strands_fixes_a_symmetric_vector() {
    let tft = delta_instance(2, Descriptor::NatInf).unwrap();
    let w = GraphBordism::parallel_strands(0);
    let swaps = tft.model().homeomorphisms(&w, &w).unwrap();
    assert_eq!(swaps.len(), 2);
    let z = tft.state_vector(&w).unwrap();
    for phi in &swaps {
        assert_eq!(tft.pushforward(phi, &w, &w, &z).unwrap(), z);
    }
}

#[test]
fn pushforward_respects_composition() {
    let tft = max_instance(LabelMode::LocallyConstant, 2, Descriptor::NatInf).unwrap();
    let model = tft.model();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..30 {
        let w = model.sample_bordism(&mut rng);
        let (w2, phi) = model.scramble(&w, &mut rng);
        let (w3, psi) = model.scramble(&w2, &mut rng);
        let z = random_vector(&tft, model.incoming(&w), model.outgoing(&w), &mut rng);
        let composite = tft.pushforward(&model.compose_homeo(&psi, &phi), &w, &w3, &z).unwrap();
        let stepwise = tft.pushforward(&psi, &w2, &w3, &tft.pushforward(&phi, &w, &w2, &z).unwrap()).unwrap();
        assert_eq!(composite, stepwise);
    }
}

#[test]
fn tensoring_with_the_unit_vector_changes_nothing() {
    let tft = max_instance(LabelMode::LocallyConstant, 2, Descriptor::NatInf).unwrap();
    let unit = single(&tft, 0, 0, tft.q().one_mon());
    let z = tft.state_vector(&GraphBordism::parallel_strands(1)).unwrap();
    assert_eq!(tft.tensor_states(Product::Mon, &z, &unit).unwrap(), z);
    assert_eq!(tft.tensor_states(Product::Mon, &unit, &z).unwrap(), z);
}

#[test]
fn tensoring_with_zero_gives_zero() {
    let tft = max_instance(LabelMode::LocallyConstant, 2, Descriptor::NatInf).unwrap();
    let z = tft.state_vector(&GraphBordism::interval(0)).unwrap();
    let zero = StateVector { incoming: 1, outgoing: 1, vector: FunVector::zero(tft.pair_ground(&1, &1).unwrap()) };
    for kind in [Product::Comp, Product::Mon] {
        assert!(tft.tensor_states(kind, &zero, &z).unwrap().vector.is_zero());
        assert!(tft.tensor_states(kind, &z, &zero).unwrap().vector.is_zero());
    }
}

#[test]
fn the_two_tensor_products_differ_on_the_two_object_category() {
    let tft = two_object_tft();
    let (gamma, id_y) = (named(&tft, "gamma"), named(&tft, "id_Y"));
    let z1 = single(&tft, 0, 0, gamma.clone());
    let z2 = single(&tft, 0, 0, id_y.clone());
    let value = |kind| tft.tensor_states(kind, &z1, &z2).unwrap().vector.support().next().map(|(_, v)| v.clone()).unwrap_or_else(|| tft.q().zero());
    let (comp, mon) = (value(Product::Comp), value(Product::Mon));
    let (comp_oracle, mon_oracle) = table_products(&gamma, &id_y).unwrap();
    assert_eq!(comp, comp_oracle);
    assert_eq!(mon, mon_oracle);
    assert_eq!(mon, id_y);
    assert_ne!(comp, mon);
}

#[test]
fn contraction_through_disjoint_supports_is_zero() {
    let tft = delta_instance(2, Descriptor::NatInf).unwrap();
    let one = tft.q().one_comp();
    let ground = tft.pair_ground(&1, &1).unwrap();
    let at = |a: i64, b: i64| Key::pair(Key::ints(&[a]), Key::ints(&[b]));
    let left = FunVector::indicator(&tft.comp(), ground.clone(), &[at(0, 0), at(1, 0)], one.clone()).unwrap();
    let right = FunVector::indicator(&tft.comp(), ground, &[at(1, 1), at(2, 2)], one).unwrap();
    let z1 = StateVector { incoming: 1, outgoing: 1, vector: left };
    let z2 = StateVector { incoming: 1, outgoing: 1, vector: right };
    assert!(tft.contract_states(&z1, &z2).unwrap().vector.is_zero());
}

/// `Σ_{g,h} z1(f,g)·z2(g,h)·z3(h,k)` by direct enumeration of both middle sets.
fn triple_contraction(tft: &Tft<GraphFields, ConstAction>, z1: &StateVector<usize>, z2: &StateVector<usize>, z3: &StateVector<usize>) -> FunVector<ConvElement> {
    let comp = tft.comp();
    let ground = tft.pair_ground(&z1.incoming, &z3.outgoing).unwrap();
    let mut out = FunVector::zero(ground);
    for f in tft.closed_ground(&z1.incoming).unwrap().keys() {
        for k in tft.closed_ground(&z3.outgoing).unwrap().keys() {
            let mut terms = Vec::new();
            for g in tft.closed_ground(&z1.outgoing).unwrap().keys() {
                for h in tft.closed_ground(&z2.outgoing).unwrap().keys() {
                    let a = z1.vector.value(&comp, &Key::pair(f.clone(), g.clone()));
                    let b = z2.vector.value(&comp, &Key::pair(g.clone(), h.clone()));
                    let c = z3.vector.value(&comp, &Key::pair(h.clone(), k.clone()));
                    terms.push(q_comp_product(&q_comp_product(&a, &b).unwrap(), &c).unwrap());
                }
            }
            out.set(&comp, Key::pair(f.clone(), k.clone()), q_sum(tft.q(), &terms).unwrap()).unwrap();
        }
    }
    out
}

#[test]
fn contraction_is_associative_against_direct_enumeration() {
    let tft = two_object_tft();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..60 {
        let sizes: Vec<usize> = (0..4).map(|_| rng.gen_range(0..=2)).collect();
        let z1 = random_vector(&tft, sizes[0], sizes[1], &mut rng);
        let z2 = random_vector(&tft, sizes[1], sizes[2], &mut rng);
        let z3 = random_vector(&tft, sizes[2], sizes[3], &mut rng);
        let left = tft.contract_states(&tft.contract_states(&z1, &z2).unwrap(), &z3).unwrap();
        let right = tft.contract_states(&z1, &tft.contract_states(&z2, &z3).unwrap()).unwrap();
        assert_eq!(left, right);
        assert_eq!(left.vector, triple_contraction(&tft, &z1, &z2, &z3));
    }
}

#[test]
fn counit_of_a_constant_family_repeats_its_value() {
    let tft = max_instance(LabelMode::LocallyConstant, 2, Descriptor::NatInf).unwrap();
    let desc = tft.descriptor().clone();
    let value = tft.q().from_pairs([(Mor::Grid(1), Element::nat(2)), (Mor::Grid(2), Element::nat(5))]).unwrap();
    let ground = tft.closed_ground(&1).unwrap();
    let keys = ground.keys();
    assert_eq!(keys.len(), 3);
    let z = FunVector::indicator(&tft.comp(), ground, &keys, value).unwrap();
    let expected = tft
        .q()
        .from_pairs([
            (Mor::Grid(1), desc.repeat(Count::Fin(3), &Element::nat(2)).unwrap()),
            (Mor::Grid(2), desc.repeat(Count::Fin(3), &Element::nat(5)).unwrap()),
        ])
        .unwrap();
    assert_eq!(tft.counit(&z).unwrap(), expected);
    assert_eq!(expected.value(&Mor::Grid(2)), Element::nat(15));
}

#[test]
fn frobenius_pairing_of_a_boolean_characteristic_vector_is_one() {
    let tft = delta_instance(2, Descriptor::Boolean).unwrap();
    let ground = tft.closed_ground(&2).unwrap();
    for key in ground.keys() {
        let z = FunVector::indicator(&tft.comp(), ground.clone(), &[key], tft.q().one_comp()).unwrap();
        let (_, pairing) = tft.frobenius_witness(Product::Comp, &2, &z).unwrap();
        assert_eq!(pairing, tft.q().one_comp());
    }
}

#[test]
fn frobenius_pairing_sums_over_the_whole_class() {
    let fields = CoarseFields(GraphFields::new(LabelMode::LocallyConstant, 0, 2).unwrap());
    let delta = delta_instance(2, Descriptor::NatInf).unwrap();
    let action = ConstAction { category: delta.category().clone(), value: Mor::Star };
    let tft = Tft::new("coarse-delta", Descriptor::NatInf, fields, action).unwrap();
    let ground = tft.closed_ground(&1).unwrap();
    assert_eq!(ground.len(), 3);
    let two = tft.q().from_pairs([(Mor::Star, Element::nat(2))]).unwrap();
    let z = FunVector::indicator(&tft.comp(), ground.clone(), &ground.keys(), two).unwrap();
    let six = tft.q().from_pairs([(Mor::Star, Element::nat(6))]).unwrap();
    for kind in [Product::Comp, Product::Mon] {
        let (witness, pairing) = tft.frobenius_witness(kind, &1, &z).unwrap();
        assert_eq!(witness.nnz(), 3);
        assert_eq!(pairing, six);
    }
    let zero = FunVector::zero(ground);
    assert!(matches!(tft.frobenius_witness(Product::Comp, &1, &zero), Err(Error::ZeroVector)));
}

#[test]
fn coboundary_aggregates_add_state_vectors() {
    let tft = delta_instance(2, Descriptor::NatInf).unwrap();
    let model = tft.model();
    let arc = GraphBordism::new(2, vec![(0, 1)], vec![], vec![0, 1]).unwrap();
    let circle = GraphBordism::new(2, vec![(0, 1), (0, 1)], vec![], vec![]).unwrap();
    let arc_and_circle = model.disjoint(&arc, &circle).unwrap();

    let z_arc = tft.state_vector(&arc).unwrap();
    assert_eq!(tft.coboundary_aggregate(&2, std::slice::from_ref(&arc)).unwrap(), z_arc);

    let z_both = tft.state_vector(&arc_and_circle).unwrap();
    let sum = tft.coboundary_aggregate(&2, &[arc.clone(), arc_and_circle]).unwrap();
    let comp = tft.comp();
    for key in sum.vector.ground().keys() {
        let expected = q_add(&z_arc.vector.value(&comp, &key), &z_both.vector.value(&comp, &key)).unwrap();
        assert_eq!(sum.vector.value(&comp, &key), expected);
    }
    let four = tft.q().from_pairs([(Mor::Star, Element::nat(4))]).unwrap();
    let values: Vec<&ConvElement> = sum.vector.support().map(|(_, v)| v).collect();
    assert_eq!(values, vec![&four; 3]);

    assert!(tft.coboundary_aggregate(&2, &[]).unwrap().vector.is_zero());
    assert!(matches!(tft.coboundary_aggregate(&2, &[GraphBordism::interval(0)]), Err(Error::BoundaryMismatch(_))));
}

#[test]
fn trivial_representation_is_monoidal() {
    let rep = Representation::new(Arc::new(iv_category()), |_| Ok(1), |_| Ok(MatMorphism::identity(1)));
    let report = check_representation(&rep, 100, 1);
    assert!(report.passed(), "{:?}", report.failing_laws());
}

#[test]
fn powers_of_two_represent_the_integers() {
    let rep = integer_power_representation();
    let report = check_representation(&rep, 200, 2);
    assert!(report.passed(), "{:?}", report.failing_laws());
    let m = rep.on_morphism(&Mor::Int(3)).unwrap();
    assert_eq!(m.entry(0, 0).to_string(), "8");
}

#[test]
fn trivial_group_leaves_every_coloring_alone() {
    let group = PermGroup::generated(3, &[vec![0, 1, 2]]).unwrap();
    assert_eq!(group.order(), 1);
    assert_eq!(orbit_count_oracle(&Universe::colorings(group, 2).unwrap()), 8);
}

#[test]
fn state_vector_rows_render_each_boundary_pair() {
    let tft = delta_instance(1, Descriptor::NatInf).unwrap();
    let z = tft.state_vector(&GraphBordism::interval(0)).unwrap();
    let rows = z.to_json();
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert!(rows.iter().all(|r| r["in"] == r["out"] && r["value"].is_object() && r["value"] != Value::Null));
}
