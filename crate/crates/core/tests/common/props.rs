//! Seed-driven properties. Each returns `Err` with a description of the
//! first counterexample.

use hopfore::classic::{character_variety, sample_points};
use hopfore::frontend::{builtin, parse, serialize, BUILTIN_NAMES};
use hopfore::hopf::{change_variable, check_hoe_conditions, check_hopf_axioms, HopfTower};
use hopfore::sample::Sampler;
use hopfore::tensor::mu;
use hopfore::winding::{convolve, tau_left, tau_right, Character};
use hopfore::{normal_form, NcPoly, Scalar, Status, Tensor2};

use super::{oracle_mul, oracle_normal_form, random_hopf_data};

pub type Outcome = Result<(), String>;

fn pick(s: &mut Sampler) -> HopfTower {
    builtin(BUILTIN_NAMES[s.below(BUILTIN_NAMES.len())]).unwrap()
}

fn err<E: std::fmt::Display>(ctx: &str) -> impl FnOnce(E) -> String + '_ {
    move |e| format!("{ctx}: {e}")
}

fn same(ht: &HopfTower, what: &str, lhs: &NcPoly, rhs: &NcPoly) -> Outcome {
    if lhs == rhs {
        Ok(())
    } else {
        Err(format!(
            "{}: {what}: {} != {}",
            ht.name(),
            ht.render(lhs),
            ht.render(rhs)
        ))
    }
}

pub fn mul_associative(seed: u64) -> Outcome {
    let mut s = Sampler::new(seed);
    let ht = pick(&mut s);
    let t = ht.tower();
    let n = ht.arity();
    let (p, q, r) = (s.poly(n, 2, 3), s.poly(n, 2, 3), s.poly(n, 2, 3));
    let pq = t.mul(&p, &q).map_err(err("mul"))?;
    let qr = t.mul(&q, &r).map_err(err("mul"))?;
    same(&ht, "pq against oracle", &pq, &oracle_mul(t, &p, &q))?;
    same(
        &ht,
        "(pq)r = p(qr)",
        &t.mul(&pq, &r).map_err(err("mul"))?,
        &t.mul(&p, &qr).map_err(err("mul"))?,
    )
}

pub fn coproduct_multiplicative(seed: u64) -> Outcome {
    let mut s = Sampler::new(seed);
    let ht = pick(&mut s);
    let t = ht.tower();
    let n = ht.arity();
    let (p, q) = (s.poly(n, 3, 2), s.poly(n, 3, 2));
    let lhs = ht
        .coproduct(&t.mul(&p, &q).map_err(err("mul"))?)
        .map_err(err("coproduct"))?;
    let dp = ht.coproduct(&p).map_err(err("coproduct"))?;
    let dq = ht.coproduct(&q).map_err(err("coproduct"))?;
    let rhs = dp.mul(&dq, t).map_err(err("tensor mul"))?;
    if lhs == rhs {
        Ok(())
    } else {
        Err(format!(
            "{}: Delta(pq) - Delta(p)Delta(q) = {}",
            ht.name(),
            lhs.sub(&rhs).unwrap().render(ht.names())
        ))
    }
}

pub fn coassociative(seed: u64) -> Outcome {
    let mut s = Sampler::new(seed);
    let ht = pick(&mut s);
    let p = s.poly(ht.arity(), 3, 3);
    let d = ht.coproduct(&p).map_err(err("coproduct"))?;
    let l = d.embed_12(|m| ht.coproduct_monomial(m)).map_err(err("embed"))?;
    let r = d.embed_23(|m| ht.coproduct_monomial(m)).map_err(err("embed"))?;
    if l == r {
        Ok(())
    } else {
        Err(format!(
            "{}: coassociativity defect {}",
            ht.name(),
            l.sub(&r).unwrap().render(ht.names())
        ))
    }
}

pub fn antipode_axiom(seed: u64) -> Outcome {
    let mut s = Sampler::new(seed);
    let ht = pick(&mut s);
    let t = ht.tower();
    let p = s.poly(ht.arity(), 3, 3);
    let d: Tensor2 = ht.coproduct(&p).map_err(err("coproduct"))?;
    let eps = t.constant(ht.counit(&p));
    let l = mu(&d.lift_left(|m| ht.antipode_monomial(m)).map_err(err("S"))?, t).map_err(err("mu"))?;
    let r = mu(&d.lift_right(|m| ht.antipode_monomial(m)).map_err(err("S"))?, t).map_err(err("mu"))?;
    same(&ht, "mu(S (x) id)Delta(p) = eps(p)", &l, &eps)?;
    same(&ht, "mu(id (x) S)Delta(p) = eps(p)", &r, &eps)
}

pub fn antipode_anti_multiplicative(seed: u64) -> Outcome {
    let mut s = Sampler::new(seed);
    let ht = pick(&mut s);
    let t = ht.tower();
    let n = ht.arity();
    let (p, q) = (s.poly(n, 2, 3), s.poly(n, 2, 3));
    let sp = ht.antipode(&p).map_err(err("S"))?;
    if ht.counit(&sp) != ht.counit(&p) {
        return Err(format!("{}: eps(S(p)) != eps(p) for p = {}", ht.name(), ht.render(&p)));
    }
    let lhs = ht.antipode(&t.mul(&p, &q).map_err(err("mul"))?).map_err(err("S"))?;
    let rhs = t.mul(&ht.antipode(&q).map_err(err("S"))?, &sp).map_err(err("mul"))?;
    same(&ht, "S(pq) = S(q)S(p)", &lhs, &rhs)
}

pub fn random_characters(s: &mut Sampler, ht: &HopfTower) -> Option<(Character, Character)> {
    let v = character_variety(ht);
    let grid: Vec<Scalar> = (0..3).map(|_| s.scalar()).collect();
    let points = sample_points(&v, &grid);
    if points.is_empty() {
        return None;
    }
    let a = points[s.below(points.len())].clone();
    let b = points[s.below(points.len())].clone();
    Some((a, b))
}

pub fn winding_composition(seed: u64) -> Outcome {
    let mut s = Sampler::new(seed);
    let ht = pick(&mut s);
    let Some((chi, psi)) = random_characters(&mut s, &ht) else {
        return Err(format!("{}: no sample characters", ht.name()));
    };
    let names = ht.names();
    let ctx = || {
        format!(
            "{}: chi = {}, psi = {}",
            ht.name(),
            chi.render(names),
            psi.render(names)
        )
    };
    let left = tau_left(&chi, &ht)
        .and_then(|a| a.compose(&tau_left(&psi, &ht)?, &ht))
        .map_err(err("tau_left"))?;
    let left_expected = tau_left(&convolve(&psi, &chi, &ht).map_err(err("convolve"))?, &ht).map_err(err("tau_left"))?;
    if left != left_expected {
        return Err(format!(
            "{}: tau_left(chi) o tau_left(psi) != tau_left(psi * chi)",
            ctx()
        ));
    }
    let right = tau_right(&chi, &ht)
        .and_then(|a| a.compose(&tau_right(&psi, &ht)?, &ht))
        .map_err(err("tau_right"))?;
    let right_expected =
        tau_right(&convolve(&chi, &psi, &ht).map_err(err("convolve"))?, &ht).map_err(err("tau_right"))?;
    if right != right_expected {
        return Err(format!(
            "{}: tau_right(chi) o tau_right(psi) != tau_right(chi * psi)",
            ctx()
        ));
    }
    // Both windings are algebra maps.
    let p = s.poly(ht.arity(), 2, 2);
    let q = s.poly(ht.arity(), 2, 2);
    let t = ht.tower();
    let pq = t.mul(&p, &q).map_err(err("mul"))?;
    for map in [&left, &right] {
        let lhs = map.apply(&pq, &ht).map_err(err("apply"))?;
        let rhs = t
            .mul(
                &map.apply(&p, &ht).map_err(err("apply"))?,
                &map.apply(&q, &ht).map_err(err("apply"))?,
            )
            .map_err(err("mul"))?;
        same(&ht, "winding is multiplicative", &lhs, &rhs)?;
    }
    Ok(())
}

/// Pass/fail of every Hopf and extension check.
pub fn verdict(ht: &HopfTower) -> Status {
    let mut report = check_hopf_axioms(ht);
    for i in 1..ht.arity() {
        match check_hoe_conditions(ht, i) {
            Ok(r) => report.extend(r),
            Err(_) => return Status::Unresolved,
        }
    }
    report.status()
}

pub fn change_variable_preserves_verdict(seed: u64) -> Outcome {
    let mut s = Sampler::new(seed);
    let mut ht = pick(&mut s);
    let n = ht.arity();
    if s.below(2) == 0 {
        let last = n - 1;
        let mut w = ht.tail(last).clone();
        let x0 = ht.tower().generator(0);
        w.add_assign_scaled(&Tensor2::pure([&ht.tower().one(), &x0]), &s.scalar());
        ht = ht.with_tail(last, w).map_err(err("with_tail"))?;
    }
    let before = verdict(&ht);
    let index = s.below(n);
    let lambda = s.scalar();
    let changed = change_variable(&ht, index, &lambda).map_err(err("change_variable"))?;
    let after = verdict(&changed);
    if before != after {
        return Err(format!(
            "{}: x{} -> x{} - {lambda}: verdict {before:?} became {after:?}",
            ht.name(),
            index + 1,
            index + 1
        ));
    }
    let reparsed = parse(&serialize(&changed)).map_err(err("reparse"))?;
    if reparsed != changed {
        return Err(format!("{}: changed presentation does not round-trip", ht.name()));
    }
    Ok(())
}

pub fn parse_serialize_round_trip(seed: u64) -> Outcome {
    let mut s = Sampler::new(seed);
    let ht = random_hopf_data(&mut s);
    let text = serialize(&ht);
    let back = parse(&text).map_err(|e| format!("{e}\n{text}"))?;
    if back != ht {
        return Err(format!("round trip changed the data:\n{text}"));
    }
    if serialize(&back) != text {
        return Err(format!("serialization is not stable:\n{text}"));
    }
    Ok(())
}

pub fn oracle_agrees(ht: &HopfTower, seed: u64) -> Outcome {
    let mut s = Sampler::new(seed);
    let expr = s.expr(ht.names(), 5, 3);
    let fast = normal_form(&expr, ht.tower()).map_err(err("normal_form"))?;
    let slow = oracle_normal_form(&expr, ht.tower());
    same(ht, &format!("normal form of {expr:?}"), &fast, &slow)
}
