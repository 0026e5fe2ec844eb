//! Acceptance suite: one PASS/FAIL line per criterion. Runs without the test
//! harness so the lines are always printed; exits nonzero if any fails.
//! Every comparison is exact equality over the rationals, so no tolerance
//! applies anywhere.

mod common;

use std::path::PathBuf;
use std::process::Command;

use common::props;
use hopfore::classic::{
    character_variety, classify_extension, goodearl_fiber, normality_search, ExtensionType, FiberResult, Normality,
    Side,
};
use hopfore::cpoly::Unknown;
use hopfore::frontend::{builtin, parse_expr, parse_tensor, parse_tensor3, serialize, BUILTIN_NAMES};
use hopfore::hopf::{antipode_order, antipode_power, primitives, AntipodeOrder, HopfTower, HOPF_CHECKS};
use hopfore::ore::scalar::{int, ratio};
use hopfore::{Monomial, NcPoly, Scalar, Step, Tensor2};
use num_traits::{One, Signed, Zero};
use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_hopfore");

/// Random expressions per builtin compared against the rewriting oracle.
const ORACLE_CASES: u64 = 200;
/// Maximum word length of those expressions.
const ORACLE_MAX_DEG: u32 = 5;
/// Seeded cases per property suite.
const PROPERTY_CASES: u64 = 100;
/// Range of m for the B(1) antipode pattern.
const B1_MAX_M: u32 = 10;
/// Degree bound for the normality searches.
const NORMALITY_DEG_B1: u32 = 4;
const NORMALITY_DEG_SOLV2: u32 = 3;
/// Degree bound for primitive spaces.
const PRIMITIVE_DEG: u32 = 3;

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);
type Suite = (&'static str, fn(u64) -> props::Outcome);

fn cli(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = Command::new(BIN)
        .args(&full)
        .env_remove("HOPFORE_REWRITE_BUDGET")
        .output()
        .unwrap();
    let code = out.status.code().unwrap();
    let v = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|_| Value::String(String::from_utf8_lossy(&out.stderr).into_owned()));
    (code, v)
}

fn checks(report: &Value) -> &Vec<Value> {
    report["checks"].as_array().expect("checks")
}

fn c1_all_builtins_pass() -> Verdict {
    let mut total = 0;
    for name in BUILTIN_NAMES {
        let ht = builtin(name).unwrap();
        let (code, v) = cli(&["check", &format!("builtin:{name}")]);
        if code != 0 {
            return Err(format!("{name}: exit {code}"));
        }
        let mut required: Vec<String> = HOPF_CHECKS.iter().map(|s| s.to_string()).collect();
        for g in &ht.names()[1..] {
            for c in [
                "winding-condition",
                "derivation-condition",
                "tail-coassociativity",
                "tail-antipode",
                "tail-augmentation",
            ] {
                required.push(format!("{c} @ {g}"));
            }
        }
        for r in &required {
            let found = checks(&v).iter().find(|c| c["name"] == r.as_str());
            match found {
                Some(c) if c["status"] == "pass" => total += 1,
                Some(c) => return Err(format!("{name}: {r} is {}", c["status"])),
                None => return Err(format!("{name}: {r} missing from the report")),
            }
        }
    }
    Ok(format!(
        "11 builtins exit 0; {total} axiom and extension checks exactly zero"
    ))
}

fn mutations(ht: &HopfTower) -> Vec<(&'static str, HopfTower)> {
    let t = ht.tower();
    let n = ht.arity();
    let last = n - 1;
    let x0 = t.generator(0);
    let mut out = Vec::new();

    let mut step: Step = t.step(last).clone();
    step.sigma[0] = step.sigma[0].neg();
    out.push(("flip sigma", ht.with_tower(t.with_step(last, step).unwrap()).unwrap()));

    let mut step: Step = t.step(last).clone();
    step.delta[0] = step.delta[0].add(&t.mul(&x0, &x0).unwrap()).unwrap();
    out.push((
        "perturb delta",
        ht.with_tower(t.with_step(last, step).unwrap()).unwrap(),
    ));

    let mut w = ht.tail(last).clone();
    w.add_assign_scaled(&Tensor2::pure([&t.one(), &x0]), &Scalar::one());
    out.push(("corrupt tail", ht.with_tail(last, w).unwrap()));
    out
}

fn witness_is_nonzero(ht: &HopfTower, witness: &str) -> Result<(), String> {
    // Exactly one of the three readings parses.
    let nonzero = if let Ok(p) = parse_expr(witness, ht) {
        !p.is_zero()
    } else if let Ok(t) = parse_tensor(witness, ht) {
        !t.is_zero()
    } else {
        !parse_tensor3(witness, ht).map_err(|e| e.to_string())?.is_zero()
    };
    if nonzero {
        Ok(())
    } else {
        Err(format!("witness `{witness}` re-evaluates to zero"))
    }
}

fn c2_mutations_fail() -> Verdict {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("mutations");
    std::fs::create_dir_all(&dir).unwrap();
    let mut count = 0;
    for name in BUILTIN_NAMES {
        let ht = builtin(name).unwrap();
        for (kind, mutant) in mutations(&ht) {
            let file = dir.join(format!(
                "{}-{}.hopf",
                name.replace(['(', ')', ',', '/'], "_"),
                kind.replace(' ', "-")
            ));
            std::fs::write(&file, serialize(&mutant)).unwrap();
            let (code, v) = cli(&["check", file.to_str().unwrap()]);
            if code != 1 {
                return Err(format!("{name} / {kind}: exit {code}"));
            }
            let failing: Vec<&Value> = checks(&v).iter().filter(|c| c["status"] == "fail").collect();
            for c in &failing {
                let w = c["witness"]
                    .as_str()
                    .ok_or(format!("{name} / {kind}: {} has no witness", c["name"]))?;
                witness_is_nonzero(&mutant, w).map_err(|e| format!("{name} / {kind} / {}: {e}", c["name"]))?;
            }
            if kind == "corrupt tail" {
                // (eps (x) id) of the new coproduct of the last generator is
                // x + x_0, so the counit residual is exactly x_0.
                let counit = failing
                    .iter()
                    .find(|c| c["name"] == "counit")
                    .ok_or(format!("{name}: counit passed"))?;
                let expected = mutant.render(&mutant.tower().generator(0));
                if counit["witness"] != expected.as_str() {
                    return Err(format!("{name}: counit witness {} != {expected}", counit["witness"]));
                }
            }
            count += 1;
        }
    }
    Ok(format!(
        "{count} mutants exit 1; every witness re-parses to a nonzero element"
    ))
}

fn c3_primitives() -> Verdict {
    let mut parts = Vec::new();
    for (name, dim) in [("heisenberg", 2), ("usl2", 3), ("A(0,0,0)", 2)] {
        let ht = builtin(name).unwrap();
        let b = primitives(&ht, PRIMITIVE_DEG).map_err(|e| e.to_string())?;
        if b.dimension() != dim {
            return Err(format!("{name}: dimension {} != {dim}", b.dimension()));
        }
        parts.push(format!("{name} {dim}"));
        if name == "heisenberg" {
            let span: Vec<Monomial> = ["y", "z"]
                .iter()
                .map(|g| Monomial::generator(3, ht.tower().index_of(g).unwrap()))
                .collect();
            for p in &b.basis {
                if !p.terms().all(|(m, _)| span.contains(m)) {
                    return Err(format!("heisenberg primitive {} outside span(y, z)", ht.render(p)));
                }
            }
        }
    }
    Ok(format!("dimensions at degree {PRIMITIVE_DEG}: {}", parts.join(", ")))
}

fn commutative(ht: &HopfTower) -> bool {
    let t = ht.tower();
    (0..ht.arity()).all(|j| (0..j).all(|a| t.commutator(&t.generator(j), &t.generator(a)).unwrap().is_zero()))
}

fn cocommutative(ht: &HopfTower) -> bool {
    ht.tails().iter().all(|w| {
        let mut flipped = Tensor2::zero(ht.arity());
        for ([a, b], c) in w.terms() {
            flipped.add_term([b.clone(), a.clone()], c.clone());
        }
        flipped == *w
    })
}

fn c4_antipode_order() -> Verdict {
    let mut involutive = Vec::new();
    for name in BUILTIN_NAMES {
        let ht = builtin(name).unwrap();
        if commutative(&ht) || cocommutative(&ht) {
            match antipode_order(&ht, 3).map_err(|e| e.to_string())? {
                AntipodeOrder::SquareIsIdentity => involutive.push(name),
                other => return Err(format!("{name}: {other:?}")),
            }
        }
    }
    let b = builtin("B(1)").unwrap();
    let z = parse_expr("Z", &b).unwrap();
    let y = parse_expr("Y", &b).unwrap();
    let mut sign = None;
    for m in 1..=B1_MAX_M {
        let diff = antipode_power(&b, &z, 2 * m).unwrap().sub(&z).unwrap();
        let unit = y.scale(&Scalar::from_integer((2 * m as i64).into()));
        let s = if diff == unit {
            1
        } else if diff == unit.neg() {
            -1
        } else {
            return Err(format!("B(1): S^{}(Z) - Z = {}", 2 * m, b.render(&diff)));
        };
        if *sign.get_or_insert(s) != s {
            return Err(format!("B(1): sign changes at m = {m}"));
        }
    }
    match antipode_order(&b, B1_MAX_M).map_err(|e| e.to_string())? {
        AntipodeOrder::Infinite { .. } => {}
        other => return Err(format!("B(1): {other:?}")),
    }
    Ok(format!(
        "S^2 = id for {}; B(1) infinite order, S^(2m)(Z) - Z = {}2m*Y for m = 1..{B1_MAX_M} (sign s = {:+})",
        involutive.join(", "),
        if sign == Some(1) { "" } else { "-" },
        sign.unwrap()
    ))
}

fn c5_solvable_fibers() -> Verdict {
    let der = builtin("solv2-der").unwrap();
    let auto = builtin("solv2-auto").unwrap();
    let kind = |ht: &HopfTower| classify_extension(ht, 1).map_err(|e| e.to_string());
    if kind(&der)? != ExtensionType::Invariant {
        return Err("solv2-der step 2 is not Invariant".into());
    }
    if kind(&auto)? != ExtensionType::Variant {
        return Err("solv2-auto step 2 is not Variant".into());
    }
    let line = goodearl_fiber(&der, 1, &[Scalar::zero()]).map_err(|e| e.to_string())?;
    let text = line.describe(der.names());
    if !matches!(line, FiberResult::Line { .. }) || text != "<x, y - lambda> for every lambda" {
        return Err(format!("solv2-der fiber over eps: {text}"));
    }
    let mus = [int(0), int(1), int(-2), ratio(7, 3)];
    for mu in &mus {
        let r = goodearl_fiber(&auto, 1, std::slice::from_ref(mu)).map_err(|e| e.to_string())?;
        let expected = if mu.is_zero() {
            "<y, x>".to_string()
        } else if mu.is_negative() {
            format!("<y + {}, x>", mu.abs())
        } else {
            format!("<y - {mu}, x>")
        };
        if !matches!(r, FiberResult::Point { .. }) || r.describe(auto.names()) != expected {
            return Err(format!("solv2-auto over y = {mu}: {}", r.describe(auto.names())));
        }
    }
    for c in [int(1), int(-2), ratio(7, 3)] {
        let r = goodearl_fiber(&der, 1, std::slice::from_ref(&c)).map_err(|e| e.to_string())?;
        if !matches!(r, FiberResult::Empty { .. }) {
            return Err(format!("solv2-der over x = {c}: {}", r.kind()));
        }
    }
    Ok("solv2-der Invariant with Line <x, y - lambda>, Empty over x = 1, -2, 7/3; solv2-auto Variant with Point <y - mu, x> for mu = 0, 1, -2, 7/3".into())
}

fn c6_character_varieties() -> Verdict {
    for name in ["B(0)", "B(1)", "B(1/2)"] {
        let ht = builtin(name).unwrap();
        let v = character_variety(&ht);
        let idx = |g: &str| ht.tower().index_of(g).unwrap();
        let ok = v.fully_resolved()
            && v.unknowns[idx("Y")] == Unknown::Fixed(Scalar::zero())
            && v.unknowns[idx("Z")] == Unknown::Fixed(Scalar::zero())
            && v.unknowns[idx("X")] == Unknown::Free;
        if !ok {
            return Err(format!("{name}: {v}"));
        }
    }
    let u = builtin("usl2").unwrap();
    let v = character_variety(&u);
    if !(v.fully_resolved() && v.free_count() == 0 && v.unknowns.iter().all(|x| *x == Unknown::Fixed(Scalar::zero()))) {
        return Err(format!("usl2: {v}"));
    }
    let h = builtin("heisenberg").unwrap();
    let v = character_variety(&h);
    if !(v.fully_resolved() && v.free_count() == 3) {
        return Err(format!("heisenberg: {v}"));
    }
    Ok("B(0), B(1), B(1/2): Y = 0, Z = 0, X free; usl2: eps only; heisenberg: 3 free parameters".into())
}

/// `f_1 S(f_3) (x) f_2`, assembled here from the iterated coproduct.
fn left_coaction(ht: &HopfTower, f: &NcPoly) -> Tensor2 {
    let t = ht.tower();
    let d3 = ht.coproduct(f).unwrap().embed_12(|m| ht.coproduct_monomial(m)).unwrap();
    let mut out = Tensor2::zero(ht.arity());
    for ([a, b, c], k) in d3.terms() {
        let left = t
            .mul(&NcPoly::monomial(a.clone()), &ht.antipode_monomial(c).unwrap())
            .unwrap();
        out.add_assign_scaled(&Tensor2::pure([&left, &NcPoly::monomial(b.clone())]), k);
    }
    out
}

fn c7_normality() -> Verdict {
    let b = builtin("B(1)").unwrap();
    let gens = [b.tower().index_of("Y").unwrap(), b.tower().index_of("Z").unwrap()];
    let detail = match normality_search(&b, &gens, NORMALITY_DEG_B1).map_err(|e| e.to_string())? {
        Normality::NotNormal {
            element,
            side: Side::Left,
            image,
            ..
        } => {
            if image != left_coaction(&b, &element) {
                return Err("B(1): reported coaction image does not match".into());
            }
            // I is spanned by monomials with a Y or Z letter.
            let outside = image.terms().find(|([_, r], _)| !r.contains_any(&gens));
            match outside {
                Some(([l, r], c)) => format!(
                    "B(1) <Y,Z> not normal: element {}, term {c}*{} ox {} outside H ox I",
                    b.render(&element),
                    l.render(b.names()),
                    r.render(b.names())
                ),
                None => return Err("B(1): witness image lies in H ox I".into()),
            }
        }
        Normality::NotNormal { side: Side::Right, .. } => "B(1) <Y,Z> not normal (right coaction)".into(),
        other => return Err(format!("B(1): {other:?}")),
    };
    for name in ["solv2-der", "solv2-auto"] {
        let ht = builtin(name).unwrap();
        let x = ht.tower().index_of("x").unwrap();
        match normality_search(&ht, &[x], NORMALITY_DEG_SOLV2).map_err(|e| e.to_string())? {
            Normality::NormalUpToDegree { .. } => {}
            other => return Err(format!("{name} <x>: {other:?}")),
        }
    }
    Ok(format!(
        "{detail}; solv2-der and solv2-auto <x> normal up to degree {NORMALITY_DEG_SOLV2}"
    ))
}

fn c8_oracle() -> Verdict {
    for name in BUILTIN_NAMES {
        let ht = builtin(name).unwrap();
        for seed in 0..ORACLE_CASES {
            props::oracle_agrees(&ht, seed).map_err(|e| format!("seed {seed}: {e}"))?;
        }
    }
    Ok(format!(
        "{ORACLE_CASES} expressions of degree <= {ORACLE_MAX_DEG} per builtin agree term by term"
    ))
}

fn c9_properties() -> Verdict {
    let suites: [Suite; 5] = [
        ("mul associativity", props::mul_associative),
        ("coproduct multiplicativity", props::coproduct_multiplicative),
        ("antipode axiom", props::antipode_axiom),
        ("winding composition", props::winding_composition),
        ("change_variable verdicts", props::change_variable_preserves_verdict),
    ];
    for (name, suite) in suites {
        for seed in 0..PROPERTY_CASES {
            suite(seed).map_err(|e| format!("{name}, seed {seed}: {e}"))?;
        }
    }
    Ok(format!("5 suites x {PROPERTY_CASES} seeded cases"))
}

fn c10_gk_dimension() -> Verdict {
    for name in BUILTIN_NAMES {
        let ht = builtin(name).unwrap();
        let (code, v) = cli(&["gkdim", &format!("builtin:{name}")]);
        if code != 0 || v["data"]["gk_dimension"] != ht.arity() {
            return Err(format!("{name}: exit {code}, {}", v["data"]["gk_dimension"]));
        }
    }
    Ok("GK-dimension equals arity for all 11 builtins".into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("Hopf-axiom suite", c1_all_builtins_pass),
        ("mutation sensitivity", c2_mutations_fail),
        ("primitive spaces", c3_primitives),
        ("antipode order", c4_antipode_order),
        ("solvable fibers", c5_solvable_fibers),
        ("character varieties", c6_character_varieties),
        ("normality", c7_normality),
        ("oracle equivalence", c8_oracle),
        ("property suites", c9_properties),
        ("GK-dimension", c10_gk_dimension),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("PASS [{:>2}] {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL [{:>2}] {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
