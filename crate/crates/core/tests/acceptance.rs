//! The acceptance suite: sixteen criteria, each reported on its own line.
//!
//! Every criterion runs even when an earlier one fails, and the test fails at
//! the end if any criterion did.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ptft_core::conv::{noncommutativity_example, q_comp_product, q_mon_product};
use ptft_core::engine::{check_representation, StateVector, Theorem};
use ptft_core::fun::{FunVector, Key};
use ptft_core::models::catalog::{e8_form, signature_of_form, signature_oracle, CatalogBordism};
use ptft_core::models::graph::{GraphBordism, LabelMode};
use ptft_core::models::multiset::{divisor_count_oracle, Multiset};
use ptft_core::models::polya::{orbit_count_oracle, polya_chain, PermGroup};
use ptft_core::models::{
    build_instance, delta_instance, divisor_instance, iv_instance, linearized_polya_instance, max_instance, polya_instance,
    polya_scalar_representation, polya_swap_representation, signature_instance, Instance, InstanceParams,
};
use ptft_core::moncat::{iv_category, Mor};
use ptft_core::semiring::{sr_check_laws, Descriptor, Element};

type Outcome = Result<(), String>;

fn ensure(ok: bool, message: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(message())
    }
}

fn err<E: std::fmt::Debug>(e: E) -> String {
    format!("{e:?}")
}

fn unit_pair() -> Key {
    Key::pair(Key::unit(), Key::unit())
}

/// The instances swept by the gluing, disjoint-union and invariance criteria.
fn swept_instances() -> Vec<Instance> {
    let nat = Descriptor::NatInf;
    let mut out = Vec::new();
    for n_max in 1..=3 {
        out.push(Instance::Graph(delta_instance(n_max, nat.clone()).unwrap()));
    }
    out.push(Instance::Graph(delta_instance(3, Descriptor::Boolean).unwrap()));
    for k in 1..=2 {
        for mode in [LabelMode::LocallyConstant, LabelMode::Step] {
            out.push(Instance::Graph(max_instance(mode, k, nat.clone()).unwrap()));
            out.push(Instance::Graph(iv_instance(mode, k, nat.clone()).unwrap()));
        }
    }
    for name in ["divisor", "omega-divisor", "signature", "polya", "burnside"] {
        out.push(build_instance(name, &InstanceParams::default()).unwrap());
    }
    out
}

fn sweep(theorem: Theorem, cases: usize) -> Outcome {
    for (i, inst) in swept_instances().iter().enumerate() {
        let v = inst.verify(theorem, cases, 100 + i as u64);
        ensure(v.passed() && v.cases as usize >= cases, || format!("{} on {}: {}", theorem, inst.name(), serde_json::to_string(&v).unwrap()))?;
    }
    Ok(())
}

fn c01_semiring_laws() -> Outcome {
    let start = Instant::now();
    let carriers = [
        Descriptor::Boolean,
        Descriptor::NatInf,
        Descriptor::RatInf,
        Descriptor::Tropical,
        Descriptor::Arctic,
        Descriptor::Language { alphabet: vec!['a', 'b'] },
        Descriptor::Relation { base: vec!["x".into(), "y".into(), "z".into()] },
        Descriptor::Matrix { dim: 2, inner: Box::new(Descriptor::NatInf) },
    ];
    for (i, desc) in carriers.iter().enumerate() {
        let report = sr_check_laws(desc, 500, i as u64);
        ensure(report.passed(), || format!("{desc}: {:?}", report.failing_laws()))?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(5), || format!("took {elapsed:?}"))
}

fn c02_noncommutativity() -> Outcome {
    let (f, g, gamma) = noncommutativity_example(std::sync::Arc::new(Descriptor::Boolean));
    let fg = q_comp_product(&f, &g).map_err(err)?.value(&gamma);
    let gf = q_comp_product(&g, &f).map_err(err)?.value(&gamma);
    ensure(fg == Element::Bool(true) && gf == Element::Bool(false), || format!("(f·g)(γ) = {fg:?}, (g·f)(γ) = {gf:?}"))
}

fn c03_gluing() -> Outcome {
    sweep(Theorem::Gluing, 100)
}

fn c04_disjoint() -> Outcome {
    sweep(Theorem::Disjoint, 100)
}

fn c05_topological_invariance() -> Outcome {
    sweep(Theorem::TopInvariance, 100)?;
    sweep(Theorem::Isotopy, 50)
}

fn c06_cylinders() -> Outcome {
    let params = InstanceParams { k: 2, n_max: 3, ..InstanceParams::default() };
    for name in ["delta", "max-lc", "iv-lc", "signature"] {
        let inst = build_instance(name, &params).map_err(err)?;
        for t in [Theorem::CylIdempotent, Theorem::Zigzag] {
            let v = inst.verify(t, 50, 6);
            ensure(v.passed() && !v.is_scoped_out(), || format!("{t} on {name}: {}", serde_json::to_string(&v).unwrap()))?;
        }
    }
    for name in ["max-step", "iv-step"] {
        let inst = build_instance(name, &params).map_err(err)?;
        let v = inst.verify(Theorem::CylIdempotent, 50, 6);
        ensure(v.is_scoped_out() && v.recorded_counterexample.is_some(), || format!("{name} should be scoped out with a counterexample"))?;
    }
    Ok(())
}

fn c07_intermediate_value_separation() -> Outcome {
    let table = iv_category();
    let one = table.as_table().unwrap().morphism_id("1").unwrap();
    for k in 1..=2i64 {
        for mode in [LabelMode::LocallyConstant, LabelMode::Step] {
            let tft = iv_instance(mode, k as u32, Descriptor::NatInf).map_err(err)?;
            let side = Key::ints(&[k, -k]);
            let boundary = Key::pair(side.clone(), side);
            let straight = tft.state_sum(&GraphBordism::parallel_strands(3), &boundary).map_err(err)?;
            let turned = tft.state_sum(&GraphBordism::turnbacks(3), &boundary).map_err(err)?;
            ensure(straight.value(&one) != Element::nat(0), || format!("k={k} {mode:?}: parallel strands vanish at 1"))?;
            ensure(turned.value(&one) == Element::nat(0), || format!("k={k} {mode:?}: turnbacks are nonzero at 1"))?;
        }
    }
    Ok(())
}

fn c08_delta_interval() -> Outcome {
    let tft = delta_instance(3, Descriptor::Boolean).map_err(err)?;
    let z = tft.state_vector(&GraphBordism::interval(3)).map_err(err)?;
    for a in 0..=3 {
        for b in 0..=3 {
            let v = z.vector.value(&tft.comp(), &Key::pair(Key::ints(&[a]), Key::ints(&[b])));
            let expected = if a == b { tft.q().one_comp() } else { tft.q().zero() };
            ensure(v == expected, || format!("Z({a},{b}) = {}", v.to_json()))?;
        }
    }
    Ok(())
}

fn polya_groups() -> Vec<PermGroup> {
    let mut groups: Vec<PermGroup> = (1..=6).map(PermGroup::cyclic).collect();
    groups.push(PermGroup::dihedral(4));
    groups
}

fn c09_polya_chain() -> Outcome {
    for group in polya_groups() {
        for colors in 1..=3 {
            let tft = polya_instance(group.clone(), Some(colors), Descriptor::NatInf).map_err(err)?;
            let chain = polya_chain(&tft).map_err(err)?;
            ensure(chain.consistent(tft.descriptor()), || format!("degree {} colors {colors}: {}", group.degree, chain.to_json()))?;
        }
    }
    let orbits = |n, c| orbit_count_oracle(&polya_instance(PermGroup::cyclic(n), Some(c), Descriptor::NatInf).unwrap().model().universe);
    ensure(orbits(3, 2) == 4 && orbits(4, 2) == 6, || "necklace counts differ from 4 and 6".into())
}

fn c10_burnside() -> Outcome {
    for group in polya_groups() {
        let tft = polya_instance(group.clone(), None, Descriptor::NatInf).map_err(err)?;
        let chain = polya_chain(&tft).map_err(err)?;
        ensure(chain.consistent(tft.descriptor()) && chain.orbit_count == 1, || format!("degree {}: {}", group.degree, chain.to_json()))?;
    }
    Ok(())
}

fn c11_divisors() -> Outcome {
    let tft = divisor_instance(false, Descriptor::NatInf).map_err(err)?;
    let z = |n: u64| tft.state_sum(&Multiset::of(n).unwrap(), &unit_pair());
    for n in 1..=1000u64 {
        let d = z(n).map_err(err)?.value(&Mor::Star);
        let oracle = divisor_count_oracle(n).map_err(err)?;
        ensure(d == Element::nat(oracle), || format!("d({n}) = {d:?}, oracle {oracle}"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut pairs = 0;
    while pairs < 100 {
        let (a, b) = (rng.gen_range(1..=1000u64), rng.gen_range(1..=1000u64));
        if a.gcd(&b) != 1 {
            continue;
        }
        pairs += 1;
        let joint = z(a * b).map_err(err)?;
        let product = q_mon_product(&z(a).map_err(err)?, &z(b).map_err(err)?).map_err(err)?;
        ensure(joint == product, || format!("Z({a}·{b}) ≠ Z({a})·Z({b})"))?;
    }
    let omega = divisor_instance(true, Descriptor::NatInf).map_err(err)?;
    let w = |n: u64| omega.state_sum(&Multiset::of(n).unwrap(), &unit_pair()).map_err(err);
    let z12 = w(12)?;
    let coefficients: Vec<Element> = (0..=4).map(|i| z12.value(&Mor::Int(i))).collect();
    let expected: Vec<Element> = [1, 2, 2, 1, 0].into_iter().map(Element::nat).collect();
    ensure(coefficients == expected, || format!("Ω-polynomial of 12: {coefficients:?}"))?;
    ensure(z12 == q_mon_product(&w(4)?, &w(3)?).map_err(err)?, || "Z(12) ≠ Z(4)·Z(3)".into())
}

fn c12_signature() -> Outcome {
    let tft = signature_instance(Descriptor::NatInf).map_err(err)?;
    for sigma in -4..=4 {
        let w = CatalogBordism { incoming: vec![], outgoing: vec![], signature: sigma };
        let z = tft.state_sum(&w, &unit_pair()).map_err(err)?;
        ensure(z == tft.q().characteristic(&Mor::Int(sigma)).map_err(err)?, || format!("closed state sum for σ={sigma}: {}", z.to_json()))?;
    }
    let diag = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, -1]];
    let hyperbolic = vec![vec![0, 1], vec![1, 0]];
    for (form, expected) in [(diag, 1), (hyperbolic, 0), (e8_form(), 8)] {
        let s = signature_of_form(&form).map_err(err)?;
        ensure(s == expected, || format!("{form:?} has signature {s}, expected {expected}"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..50 {
        let n = rng.gen_range(1..=8);
        let mut m = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in i..n {
                let x = rng.gen_range(-3..=3);
                m[i][j] = x;
                m[j][i] = x;
            }
        }
        let (s, o) = (signature_of_form(&m).map_err(err)?, signature_oracle(&m).map_err(err)?);
        ensure(s == o, || format!("{m:?}: elimination {s}, oracle {o}"))?;
    }
    Ok(())
}

fn c13_frobenius() -> Outcome {
    let tft = delta_instance(3, Descriptor::NatInf).map_err(err)?;
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for m in 0..=3usize {
        let ground = tft.closed_ground(&m).map_err(err)?;
        ensure(ground.len() <= 64, || format!("{} fields on {m} points", ground.len()))?;
        for key in ground.keys() {
            let z = FunVector::indicator(&tft.comp(), ground.clone(), std::slice::from_ref(&key), tft.q().one_comp()).map_err(err)?;
            ensure(tft.frobenius_case(&m, &z).map_err(err)?.is_none(), || format!("characteristic vector of {key} on {m} points"))?;
        }
        for _ in 0..100 {
            let z = tft.random_state(&ground, 4, &mut rng).map_err(err)?;
            ensure(tft.frobenius_case(&m, &z).map_err(err)?.is_none(), || format!("random vector {}", z.to_json(|v| v.to_json())))?;
        }
    }
    for _ in 0..100 {
        let (a, b) = (rng.gen_range(0..=2usize), rng.gen_range(0..=2usize));
        let z = tft.random_state(&tft.closed_ground(&a).map_err(err)?, 4, &mut rng).map_err(err)?;
        let z2 = tft.random_state(&tft.closed_ground(&b).map_err(err)?, 4, &mut rng).map_err(err)?;
        ensure(tft.counit_mult_case(&z, &z2).map_err(err)?.is_none(), || "counit is not multiplicative".into())?;
        let (m, n, p) = (rng.gen_range(0..=1usize), rng.gen_range(0..=1usize), rng.gen_range(0..=1usize));
        let left = StateVector { incoming: m, outgoing: n, vector: tft.random_state(&tft.pair_ground(&m, &n).map_err(err)?, 4, &mut rng).map_err(err)? };
        let right = StateVector { incoming: n, outgoing: p, vector: tft.random_state(&tft.pair_ground(&n, &p).map_err(err)?, 4, &mut rng).map_err(err)? };
        ensure(tft.counit_contract_case(&left, &right).map_err(err)?.is_none(), || "counit does not factor through contraction".into())?;
    }
    for name in ["delta", "max-lc", "signature", "divisor", "polya"] {
        let inst = build_instance(name, &InstanceParams::default()).map_err(err)?;
        for t in [Theorem::Frobenius, Theorem::CounitMult, Theorem::CounitContract] {
            let v = inst.verify(t, 50, 13);
            ensure(v.passed(), || format!("{t} on {name}: {}", serde_json::to_string(&v).unwrap()))?;
        }
    }
    Ok(())
}

fn c14_linearization() -> Outcome {
    let scalar = polya_scalar_representation().map_err(err)?;
    let report = check_representation(&scalar, 200, 14);
    ensure(report.passed(), || format!("scalar representation: {:?}", report.failing_laws()))?;
    let tft = linearized_polya_instance(PermGroup::cyclic(3), 2, scalar, Descriptor::NatInf).map_err(err)?;
    let actions = tft.check_action_axioms(60, 14);
    ensure(actions.passed(), || format!("linearized action: {:?}", actions.failing_laws()))?;
    let swap = polya_swap_representation().map_err(err)?;
    ensure(!check_representation(&swap, 200, 14).passed(), || "swap representation passes the checks".into())?;
    ensure(linearized_polya_instance(PermGroup::cyclic(3), 2, swap, Descriptor::NatInf).is_err(), || "swap representation was accepted".into())
}

fn c15_projections() -> Outcome {
    let params = InstanceParams { n_max: 3, ..InstanceParams::default() };
    for name in ["delta", "signature"] {
        let inst = build_instance(name, &params).map_err(err)?;
        for t in [Theorem::ProjFixes, Theorem::ProjIdempotent, Theorem::ProjTensorSplit] {
            let v = inst.verify(t, 50, 15);
            ensure(v.passed() && !v.is_scoped_out(), || format!("{t} on {name}: {}", serde_json::to_string(&v).unwrap()))?;
        }
    }
    for name in ["max-lc", "divisor", "omega-divisor"] {
        let inst = build_instance(name, &params).map_err(err)?;
        let v = inst.verify(Theorem::ProjTensorSplit, 50, 15);
        ensure(v.passed() && !v.is_scoped_out(), || format!("proj-tensor-split on {name}: {}", serde_json::to_string(&v).unwrap()))?;
    }
    Ok(())
}

fn run(label: &str, f: fn() -> Outcome) -> bool {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panic".into()))
    });
    let secs = start.elapsed().as_secs_f64();
    match &outcome {
        Ok(()) => println!("PASS {label} ({secs:.2}s)"),
        Err(e) => println!("FAIL {label} ({secs:.2}s): {e}"),
    }
    outcome.is_ok()
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 15] = [
        ("01 semiring laws on eight carriers", c01_semiring_laws),
        ("02 noncommutative composition product", c02_noncommutativity),
        ("03 gluing theorem", c03_gluing),
        ("04 disjoint union theorem", c04_disjoint),
        ("05 topological invariance", c05_topological_invariance),
        ("06 cylinder idempotency and zigzag", c06_cylinders),
        ("07 intermediate value separation", c07_intermediate_value_separation),
        ("08 delta interval state vector", c08_delta_interval),
        ("09 Pólya counting chain", c09_polya_chain),
        ("10 Burnside counting chain", c10_burnside),
        ("11 divisor counts and Ω-polynomials", c11_divisors),
        ("12 signature catalog and forms", c12_signature),
        ("13 Frobenius structure and counit", c13_frobenius),
        ("14 linearization", c14_linearization),
        ("15 projections", c15_projections),
    ];
    let start = Instant::now();
    let mut failed = Vec::new();
    for (label, f) in criteria {
        if !run(label, f) {
            failed.push(label);
        }
    }
    let total = start.elapsed();
    let in_budget = total < Duration::from_secs(60);
    println!("{} 16 full suite under 60s ({:.2}s)", if in_budget { "PASS" } else { "FAIL" }, total.as_secs_f64());
    if !in_budget {
        failed.push("16 full suite under 60s");
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
