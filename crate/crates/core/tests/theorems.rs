//! Every theorem verifier on every shipped instance, plus the field and action
//! axiom suites.

use ptft_core::engine::Theorem;
use ptft_core::models::{build_instance, InstanceParams, INSTANCE_NAMES};

fn params() -> InstanceParams {
    InstanceParams { k: 2, n_max: 3, ..InstanceParams::default() }
}

#[test]
fn field_and_action_axioms_hold_on_every_instance() {
    for name in INSTANCE_NAMES {
        let inst = build_instance(name, &params()).unwrap();
        let fields = inst.field_axioms(40, 3);
        assert!(fields.passed(), "{name}: {}", serde_json::to_string(&fields).unwrap());
        let actions = inst.action_axioms(40, 4);
        assert!(actions.passed(), "{name}: {}", serde_json::to_string(&actions).unwrap());
    }
}

#[test]
fn theorems_hold_or_are_scoped_out() {
    for name in INSTANCE_NAMES {
        let inst = build_instance(name, &params()).unwrap();
        for theorem in Theorem::ALL {
            let v = inst.verify(theorem, 30, 11);
            assert!(v.passed(), "{name} {theorem}: {}", serde_json::to_string(&v).unwrap());
            assert_eq!(v.cases, 30);
        }
    }
}

#[test]
fn step_modes_are_scoped_out_of_cylinder_idempotency_with_a_counterexample() {
    for name in ["max-step", "iv-step"] {
        let inst = build_instance(name, &params()).unwrap();
        let v = inst.verify(Theorem::CylIdempotent, 50, 1);
        assert!(v.is_scoped_out());
        assert!(v.recorded_counterexample.is_some(), "{name}");
        assert_eq!(v.failures, 0);
    }
}

#[test]
fn lc_modes_are_in_scope() {
    for name in ["max-lc", "iv-lc", "delta", "signature"] {
        let inst = build_instance(name, &params()).unwrap();
        for t in [Theorem::CylIdempotent, Theorem::Zigzag, Theorem::ProjFixes, Theorem::ProjIdempotent] {
            let v = inst.verify(t, 20, 2);
            assert!(!v.is_scoped_out() && v.passed(), "{name} {t}");
        }
    }
}

#[test]
fn unknown_instances_and_bad_params_are_rejected() {
    assert!(build_instance("nope", &params()).is_err());
    assert!(build_instance("max-lc", &InstanceParams { k: 0, ..params() }).is_err());
    assert!(build_instance("polya", &InstanceParams { colors: 0, ..params() }).is_err());
    assert!("nope".parse::<Theorem>().is_err());
    assert_eq!("zigzag".parse::<Theorem>().unwrap(), Theorem::Zigzag);
}
