use super::{counit_normalize, HopfTower};
use crate::check::{AxiomReport, Check, Residual};
use crate::error::{Error, Result};
use crate::ore::{Monomial, NcPoly, Scalar};
use crate::tensor::{mu, Tensor2, Tensor3};

/// Names of the four Hopf-axiom checks, in report order.
pub const HOPF_CHECKS: [&str; 4] = ["coproduct-respects-relations", "coassociativity", "counit", "antipode"];

fn labelled<R: Into<Residual>>(label: String, r: Result<R>) -> (String, Result<Residual>) {
    (label, r.map(Into::into))
}

fn relation_residual_t2(ht: &HopfTower, i: usize, j: usize) -> Result<Tensor2> {
    let t = ht.tower();
    let dj = ht.coproduct_generator(j);
    let di = ht.coproduct_generator(i);
    let lhs = dj.mul(&di, t)?;
    let rhs = ht.coproduct(t.sigma(j, i))?.mul(&dj, t)?;
    lhs.sub(&rhs)?.sub(&ht.coproduct(t.delta(j, i))?)
}

fn coassoc_residual(ht: &HopfTower, u: &Tensor2) -> Result<Tensor3> {
    let left = u.embed_12(|m| ht.coproduct_monomial(m))?;
    let right = u.embed_23(|m| ht.coproduct_monomial(m))?;
    left.sub(&right)
}

/// Verifies the Hopf axioms on generators and defining relations, which is
/// enough because every map involved is an algebra or anti-algebra map.
pub fn check_hopf_axioms(ht: &HopfTower) -> AxiomReport {
    let t = ht.tower();
    let names = ht.names();
    let n = ht.arity();
    let mut report = AxiomReport::new();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();

    report.push(Check::from_residuals(
        HOPF_CHECKS[0],
        "Delta(x_j)Delta(x_i) - Delta(sigma_j(x_i))Delta(x_j) - Delta(delta_j(x_i)) = 0",
        names,
        pairs
            .iter()
            .map(|&(i, j)| labelled(format!("({}, {})", names[i], names[j]), relation_residual_t2(ht, i, j))),
    ));

    report.push(Check::from_residuals(
        HOPF_CHECKS[1],
        "(Delta (x) id)Delta(x) = (id (x) Delta)Delta(x)",
        names,
        (0..n).map(|i| labelled(names[i].clone(), coassoc_residual(ht, &ht.coproduct_generator(i)))),
    ));

    let mut counit_cases = Vec::new();
    for i in 0..n {
        let d = ht.coproduct_generator(i);
        let x = t.generator(i);
        counit_cases.push(labelled(
            format!("(eps (x) id)Delta({})", names[i]),
            d.contract_left(|m| Ok(ht.counit_monomial(m))).and_then(|p| p.sub(&x)),
        ));
        counit_cases.push(labelled(
            format!("(id (x) eps)Delta({})", names[i]),
            d.contract_right(|m| Ok(ht.counit_monomial(m))).and_then(|p| p.sub(&x)),
        ));
    }
    for &(i, j) in &pairs {
        // eps is an algebra map: eps of each relation vanishes.
        let e = |p: &NcPoly| ht.counit(p);
        let value = ht.counits()[j].clone() * ht.counits()[i].clone()
            - e(t.sigma(j, i)) * ht.counits()[j].clone()
            - e(t.delta(j, i));
        counit_cases.push(labelled(
            format!("eps of relation ({}, {})", names[i], names[j]),
            Ok(t.constant(value)),
        ));
    }
    report.push(Check::from_residuals(
        HOPF_CHECKS[2],
        "(eps (x) id)Delta(x) = x = (id (x) eps)Delta(x)",
        names,
        counit_cases,
    ));

    let mut antipode_cases = Vec::new();
    for i in 0..n {
        let d = ht.coproduct_generator(i);
        let eps = t.constant(ht.counits()[i].clone());
        antipode_cases.push(labelled(
            format!("mu(S (x) id)Delta({})", names[i]),
            d.lift_left(|m| ht.antipode_monomial(m))
                .and_then(|u| mu(&u, t))
                .and_then(|p| p.sub(&eps)),
        ));
        antipode_cases.push(labelled(
            format!("mu(id (x) S)Delta({})", names[i]),
            d.lift_right(|m| ht.antipode_monomial(m))
                .and_then(|u| mu(&u, t))
                .and_then(|p| p.sub(&eps)),
        ));
    }
    for &(i, j) in &pairs {
        // S is an anti-homomorphism: S(x_i)S(x_j) - S(x_j)S(sigma_j(x_i)) - S(delta_j(x_i)) = 0.
        let residual = (|| {
            let si = ht.antipode_generator(i);
            let sj = ht.antipode_generator(j);
            let lhs = t.mul(si, sj)?;
            let rhs = t.mul(sj, &ht.antipode(t.sigma(j, i))?)?;
            lhs.sub(&rhs)?.sub(&ht.antipode(t.delta(j, i))?)
        })();
        antipode_cases.push(labelled(
            format!("S of relation ({}, {})", names[i], names[j]),
            residual,
        ));
    }
    report.push(Check::from_residuals(
        HOPF_CHECKS[3],
        "mu(S (x) id)Delta(x) = eps(x) = mu(id (x) S)Delta(x)",
        names,
        antipode_cases,
    ));
    report
}

/// The identities an extension step `R -> R[x_i; sigma_i, delta_i]` must
/// satisfy for `x_i` to carry the coproduct `x (x) 1 + 1 (x) x + w`, checked
/// on the generators of `R`. `index` is 0-based and must be at least 1.
///
/// A tower whose counit does not vanish on generators is shifted first.
pub fn check_hoe_conditions(ht: &HopfTower, index: usize) -> Result<AxiomReport> {
    let n = ht.arity();
    if index == 0 || index >= n {
        return Err(Error::StepOutOfRange {
            step: index + 1,
            min: 2,
            max: n,
        });
    }
    if !ht.is_counit_normalized() {
        return check_hoe_conditions(&counit_normalize(ht)?, index);
    }
    let t = ht.tower();
    let names = ht.names();
    let w = ht.tail(index);
    let mut report = AxiomReport::new();
    let at = |label: &str| format!("{label} @ {}", names[index]);

    // chi = eps o sigma_i on the generators of R.
    let chi: Vec<Scalar> = (0..index).map(|a| ht.counit(t.sigma(index, a))).collect();
    let chi_text = (0..index)
        .map(|a| format!("chi({}) = {}", names[a], chi[a]))
        .collect::<Vec<_>>()
        .join(", ");
    let chi_of = |m: &Monomial| -> Result<Scalar> {
        crate::ore::poly::eval_monomial(m, &chi)
            .ok_or_else(|| Error::InvalidCharacter(format!("chi evaluated on {}", m.render(names))))
    };
    let mut d_cases = Vec::new();
    for a in 0..index {
        let residual = ht
            .coproduct_generator(a)
            .contract_left(chi_of)
            .and_then(|p| t.sigma(index, a).sub(&p));
        d_cases.push(labelled(format!("sigma({})", names[a]), residual));
    }
    for b in 0..index {
        for a in 0..b {
            let value = {
                let s = t.sigma(b, a).eval_character(&chi);
                let d = t.delta(b, a).eval_character(&chi);
                match (s, d) {
                    (Some(s), Some(d)) => Ok(chi[b].clone() * chi[a].clone() - s * chi[b].clone() - d),
                    _ => Err(Error::InvalidCharacter("chi outside R".into())),
                }
            };
            d_cases.push(labelled(
                format!("chi on relation ({}, {})", names[a], names[b]),
                value.map(|v| t.constant(v)),
            ));
        }
    }
    let mut d = Check::from_residuals(&at("winding-condition"), "sigma(r) = chi(r_1) r_2", names, d_cases);
    d.detail = format!("{}; {chi_text}", d.detail);
    report.push(d);

    let mut e_cases = Vec::new();
    for a in 0..index {
        let residual = (|| -> Result<Tensor2> {
            let delta_r = t.delta(index, a);
            let dr = ht.coproduct_generator(a);
            let lhs = ht
                .coproduct(delta_r)?
                .sub(&dr.lift_left(|m| t.apply_skew_derivation(index, &NcPoly::monomial(m.clone())))?)?
                .sub(&dr.lift_right(|m| t.apply_skew_derivation(index, &NcPoly::monomial(m.clone())))?)?;
            let rhs = w.mul(&dr, t)?.sub(&ht.coproduct(t.sigma(index, a))?.mul(w, t)?)?;
            lhs.sub(&rhs)
        })();
        e_cases.push(labelled(names[a].clone(), residual));
    }
    report.push(Check::from_residuals(
        &at("derivation-condition"),
        "Delta(delta(r)) - delta(r_1) (x) r_2 - r_1 (x) delta(r_2) = w Delta(r) - Delta(sigma(r)) w",
        names,
        e_cases,
    ));

    let f1 = (|| -> Result<Tensor3> {
        let lhs = w.append_unit().add(&w.embed_12(|m| ht.coproduct_monomial(m))?)?;
        let rhs = w.prepend_unit().add(&w.embed_23(|m| ht.coproduct_monomial(m))?)?;
        lhs.sub(&rhs)
    })();
    report.push(Check::from_residuals(
        &at("tail-coassociativity"),
        "w (x) 1 + (Delta (x) id)(w) = 1 (x) w + (id (x) Delta)(w)",
        names,
        [labelled("w".into(), f1)],
    ));

    let f2 = (|| -> Result<NcPoly> {
        let left = mu(&w.lift_left(|m| ht.antipode_monomial(m))?, t)?;
        let right = mu(&w.lift_right(|m| ht.antipode_monomial(m))?, t)?;
        left.sub(&right)
    })();
    report.push(Check::from_residuals(
        &at("tail-antipode"),
        "S(w_1) w_2 = w_1 S(w_2)",
        names,
        [labelled("w".into(), f2)],
    ));

    // w lies in R+ (x) R+ iff both one-sided counit contractions vanish.
    let eps = |m: &Monomial| -> Result<Scalar> { Ok(ht.counit_monomial(m)) };
    report.push(Check::from_residuals(
        &at("tail-augmentation"),
        "w in R+ (x) R+",
        names,
        [
            labelled("(eps (x) id)(w)".into(), w.contract_left(eps)),
            labelled("(id (x) eps)(w)".into(), w.contract_right(eps)),
        ],
    ));
    Ok(report)
}
