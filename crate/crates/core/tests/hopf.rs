use hopfore::check::Status;
use hopfore::frontend::{builtin, parse, parse_expr, parse_tensor, serialize, BUILTIN_NAMES};
use hopfore::hopf::{
    antipode_order, antipode_power, change_variable, check_hoe_conditions, check_hopf_axioms, counit_normalize,
    gk_dimension, primitives, s4_decompose, AntipodeOrder, HopfTower, S4Decomposition,
};
use hopfore::ore::scalar::{int, ratio};
use hopfore::ore::{validate_tower, Step};
use hopfore::tensor::Tensor2;
use hopfore::Error;

fn nc(ht: &HopfTower, text: &str) -> hopfore::NcPoly {
    parse_expr(text, ht).unwrap()
}

fn t2(ht: &HopfTower, text: &str) -> Tensor2 {
    parse_tensor(text, ht).unwrap()
}

#[test]
fn heisenberg_coproducts() {
    let ht = builtin("heisenberg").unwrap();
    let x = nc(&ht, "x");
    assert_eq!(ht.coproduct(&x).unwrap(), t2(&ht, "x ox 1 + 1 ox x + y ox z"));
    assert_eq!(ht.coproduct(&ht.tower().one()).unwrap(), Tensor2::unit(3));
    // Delta(x^2) by squaring Delta(x) term by term.
    let expected = t2(
        &ht,
        "x^2 ox 1 + 2*x ox x + 1 ox x^2 + 2*y*x ox z + 2*y ox z*x + y^2 ox z^2",
    );
    assert_eq!(ht.coproduct(&nc(&ht, "x^2")).unwrap(), expected);
}

#[test]
fn counit_values() {
    let ht = builtin("heisenberg").unwrap();
    assert_eq!(ht.counit(&nc(&ht, "x + 3")), int(3));
    assert_eq!(ht.counit(&nc(&ht, "y*z")), int(0));
    let u = builtin("usl2").unwrap();
    assert_eq!(u.counit(u.tower().delta(2, 1)), int(0));
}

#[test]
fn antipode_on_generators() {
    let ht = builtin("heisenberg").unwrap();
    assert_eq!(ht.antipode(&nc(&ht, "x")).unwrap(), nc(&ht, "-x + y*z"));
    for name in ["A(0,0,0)", "A(1,1,1)", "A(0,0,1)"] {
        let a = builtin(name).unwrap();
        assert_eq!(a.antipode(&nc(&a, "Z")).unwrap(), nc(&a, "-Z"), "{name}");
    }
    for name in ["B(0)", "B(1)", "B(1/2)"] {
        let b = builtin(name).unwrap();
        assert_eq!(b.antipode(&nc(&b, "Z")).unwrap(), nc(&b, "-Z + Y"), "{name}");
    }
}

#[test]
fn mutated_heisenberg_tail_fails_counit_with_witness_y() {
    let ht = builtin("heisenberg").unwrap();
    let bad = ht.with_tail(2, t2(&ht, "y ox z + 1 ox y")).unwrap();
    let report = check_hopf_axioms(&bad);
    let counit = report.get("counit").unwrap();
    assert_eq!(counit.status, Status::Fail);
    assert_eq!(counit.witness.as_deref(), Some("y"));
}

#[test]
fn flipped_heisenberg_tail_still_passes() {
    let ht = builtin("heisenberg").unwrap();
    let flipped = ht.with_tail(2, t2(&ht, "z ox y")).unwrap();
    assert!(check_hopf_axioms(&flipped).passed());
}

#[test]
fn usl2_extension_identities_and_chi() {
    let ht = builtin("usl2").unwrap();
    let report = check_hoe_conditions(&ht, 2).unwrap();
    assert_eq!(report.checks.len(), 5);
    assert!(report.passed(), "{report:?}");
    let d = &report.checks[0];
    assert!(d.detail.contains("chi(h) = 2"), "{}", d.detail);
    assert!(d.detail.contains("chi(e) = 0"), "{}", d.detail);
}

#[test]
fn heisenberg_extension_identities() {
    let ht = builtin("heisenberg").unwrap();
    let report = check_hoe_conditions(&ht, 2).unwrap();
    assert!(report.passed());
    assert!(report.checks[0].detail.contains("chi(y) = 0, chi(z) = 0"));
}

#[test]
fn extension_step_range() {
    let ht = builtin("heisenberg").unwrap();
    assert!(matches!(
        check_hoe_conditions(&ht, 0),
        Err(Error::StepOutOfRange { .. })
    ));
    assert!(matches!(
        check_hoe_conditions(&ht, 3),
        Err(Error::StepOutOfRange { .. })
    ));
}

fn with_delta(ht: &HopfTower, step: usize, of: usize, image: &str) -> HopfTower {
    let t = ht.tower();
    let mut s: Step = t.step(step).clone();
    s.delta[of] = nc(ht, image);
    ht.with_tower(t.with_step(step, s).unwrap()).unwrap()
}

#[test]
fn b1_derivation_mutations() {
    let ht = builtin("B(1)").unwrap();
    // delta(X) = Y^2 is still a sigma-derivation, but not primitive.
    let bad = with_delta(&ht, 2, 1, "Y^2");
    assert!(validate_tower(bad.tower()).passed());
    let report = check_hoe_conditions(&bad, 2).unwrap();
    let e = report.get("derivation-condition @ Z").unwrap();
    assert_eq!(e.status, Status::Fail);
    assert_eq!(e.witness.as_deref(), Some("2*Y ox Y"));

    // delta(X) = X is primitive, so the derivation condition holds on
    // generators; the tower itself is broken on the relation [X, Y] = Y.
    let broken = with_delta(&ht, 2, 1, "X");
    assert!(check_hoe_conditions(&broken, 2).unwrap().passed());
    let v = validate_tower(broken.tower());
    let d = v.get("delta-respects-relations @ Z").unwrap();
    assert_eq!(d.status, Status::Fail);
    assert_eq!(d.witness.as_deref(), Some("Y"));
}

#[test]
fn primitive_spaces() {
    let h = builtin("heisenberg").unwrap();
    let p = primitives(&h, 2).unwrap();
    assert_eq!(p.basis, vec![nc(&h, "z"), nc(&h, "y")]);
    let p3 = primitives(&h, 3).unwrap();
    assert_eq!(p3.dimension(), 2);

    let u = builtin("usl2").unwrap();
    assert_eq!(primitives(&u, 1).unwrap().dimension(), 3);
    let a = builtin("A(0,0,0)").unwrap();
    let pa = primitives(&a, 2).unwrap();
    assert_eq!(pa.dimension(), 2);
    for b in &pa.basis {
        assert!(hopfore::hopf::primitivity_defect(&a, b).unwrap().is_zero());
    }
    assert!(matches!(primitives(&a, 0), Err(Error::DegreeBound)));
}

#[test]
fn antipode_order_dichotomy() {
    for name in ["heisenberg", "usl2", "solv2-der", "solv2-auto", "A(0,0,0)"] {
        let ht = builtin(name).unwrap();
        assert_eq!(
            antipode_order(&ht, 4).unwrap(),
            AntipodeOrder::SquareIsIdentity,
            "{name}"
        );
    }
    let b = builtin("B(1)").unwrap();
    match antipode_order(&b, 10).unwrap() {
        AntipodeOrder::Infinite {
            generator, increment, ..
        } => {
            assert_eq!(b.names()[generator], "Z");
            assert_eq!(increment, nc(&b, "-2*Y"));
        }
        other => panic!("{other:?}"),
    }
    let z = nc(&b, "Z");
    for m in 1..=10u32 {
        let s = antipode_power(&b, &z, 2 * m).unwrap();
        let expected = nc(&b, &format!("Z - {}*Y", 2 * m));
        assert_eq!(s, expected, "m = {m}");
    }
}

#[test]
fn s4_decompositions() {
    for name in ["heisenberg", "usl2"] {
        let ht = builtin(name).unwrap();
        match s4_decompose(&ht).unwrap() {
            S4Decomposition::Found { chi, .. } => assert!(chi.iter().all(|v| *v == int(0)), "{name}"),
            other => panic!("{name}: {other:?}"),
        }
    }
    let b = builtin("B(1)").unwrap();
    match s4_decompose(&b).unwrap() {
        S4Decomposition::Found { chi, .. } => assert_eq!(chi, vec![int(0), int(-2), int(0)]),
        other => panic!("{other:?}"),
    }
}

#[test]
fn change_of_variable() {
    let u = builtin("usl2").unwrap();
    assert_eq!(change_variable(&u, 2, &int(0)).unwrap(), u);
    let shifted = change_variable(&u, 2, &int(1)).unwrap();
    let t = shifted.tower();
    assert_eq!(*t.delta(2, 0), nc(&shifted, "-2"));
    assert_eq!(*t.delta(2, 1), nc(&shifted, "-h"));
    assert_eq!(shifted.counits()[2], int(1));

    let h = builtin("heisenberg").unwrap();
    let h5 = change_variable(&h, 2, &int(5)).unwrap();
    assert!(validate_tower(h5.tower()).passed());
    assert!(check_hopf_axioms(&h5).passed());
    assert!(check_hoe_conditions(&h5, 2).unwrap().passed());
    assert_eq!(counit_normalize(&h5).unwrap(), h);

    // Shifting a lower generator rewrites the later steps.
    let b = builtin("B(1/2)").unwrap();
    let moved = change_variable(&b, 1, &ratio(-3, 2)).unwrap();
    assert!(validate_tower(moved.tower()).passed());
    assert!(check_hopf_axioms(&moved).passed());
    let text = serialize(&moved);
    let back = parse(&text).unwrap();
    assert_eq!(back, moved);
    assert!(check_hopf_axioms(&back).passed());
    assert_eq!(counit_normalize(&moved).unwrap(), b);
}

#[test]
fn gk_dimension_is_arity() {
    for name in BUILTIN_NAMES {
        let ht = builtin(name).unwrap();
        assert_eq!(gk_dimension(&ht).dimension, ht.arity());
    }
    assert_eq!(gk_dimension(&builtin("heisenberg").unwrap()).dimension, 3);
    assert_eq!(gk_dimension(&builtin("B(1/2)").unwrap()).dimension, 3);
    let trivial = HopfTower::primitive("k", hopfore::Tower::commutative(&[])).unwrap();
    assert_eq!(gk_dimension(&trivial).dimension, 0);
}
