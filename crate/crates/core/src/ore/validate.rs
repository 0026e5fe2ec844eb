use super::poly::NcPoly;
use super::tower::Tower;
use crate::check::{Check, CheckReport, Residual, ValidationReport};
use crate::error::Result;

const SIGMA_CITATION: &str =
    "sigma_i(x_b) sigma_i(x_a) - sigma_i(sigma_b(x_a)) sigma_i(x_b) - sigma_i(delta_b(x_a)) = 0";
const DELTA_CITATION: &str =
    "delta_i(x_b x_a) = delta_i(sigma_b(x_a) x_b) + delta_i(delta_b(x_a)) under d(uv) = d(u)v + sigma(u)d(v)";
const INVERSE_CITATION: &str = "sigma_i o sigma_i^{-1} = sigma_i^{-1} o sigma_i = id on generators";

/// Well-definedness of every step: `sigma_i` respects the relations of the
/// subalgebra below `i`, `delta_i` is compatible with them under the twisted
/// Leibniz rule, and the supplied inverse really inverts `sigma_i`.
pub fn validate_tower(tower: &Tower) -> ValidationReport {
    let mut report = CheckReport::new();
    let names = tower.names();
    for i in 1..tower.arity() {
        let at = &names[i];
        let pairs: Vec<(usize, usize)> = (0..i).flat_map(|b| (0..b).map(move |a| (a, b))).collect();
        report.push(Check::from_residuals(
            &format!("sigma-respects-relations @ {at}"),
            SIGMA_CITATION,
            names,
            pairs.iter().map(|&(a, b)| {
                (
                    pair_label(tower, a, b),
                    sigma_residual(tower, i, a, b).map(Residual::from),
                )
            }),
        ));
        report.push(Check::from_residuals(
            &format!("delta-respects-relations @ {at}"),
            DELTA_CITATION,
            names,
            pairs.iter().map(|&(a, b)| {
                (
                    pair_label(tower, a, b),
                    delta_residual(tower, i, a, b).map(Residual::from),
                )
            }),
        ));
        report.push(Check::from_residuals(
            &format!("sigma-inverse @ {at}"),
            INVERSE_CITATION,
            names,
            (0..i).flat_map(|a| {
                [
                    (
                        format!("sigma(sigma_inv({}))", names[a]),
                        inverse_residual(tower, i, a, true).map(Residual::from),
                    ),
                    (
                        format!("sigma_inv(sigma({}))", names[a]),
                        inverse_residual(tower, i, a, false).map(Residual::from),
                    ),
                ]
            }),
        ));
    }
    report
}

fn pair_label(tower: &Tower, a: usize, b: usize) -> String {
    format!("relation {} {}", tower.names()[b], tower.names()[a])
}

fn sigma_residual(t: &Tower, i: usize, a: usize, b: usize) -> Result<NcPoly> {
    let s = |p: &NcPoly| t.apply_endo(i, p);
    let xa = t.generator(a);
    let xb = t.generator(b);
    let lhs = t.mul(&s(&xb)?, &s(&xa)?)?;
    let twisted = t.mul(&s(t.sigma(b, a))?, &s(&xb)?)?;
    let derived = s(t.delta(b, a))?;
    lhs.sub(&twisted)?.sub(&derived)
}

fn delta_residual(t: &Tower, i: usize, a: usize, b: usize) -> Result<NcPoly> {
    let s = |p: &NcPoly| t.apply_endo(i, p);
    let d = |p: &NcPoly| t.apply_skew_derivation(i, p);
    let xa = t.generator(a);
    let xb = t.generator(b);
    // d(x_b x_a) = d(x_b) x_a + s(x_b) d(x_a)
    let lhs = t.mul(&d(&xb)?, &xa)?.add(&t.mul(&s(&xb)?, &d(&xa)?)?)?;
    // d(u x_b) with u = sigma_b(x_a)
    let u = t.sigma(b, a);
    let twisted = t.mul(&d(u)?, &xb)?.add(&t.mul(&s(u)?, &d(&xb)?)?)?;
    let derived = d(t.delta(b, a))?;
    lhs.sub(&twisted)?.sub(&derived)
}

fn inverse_residual(t: &Tower, i: usize, a: usize, forward: bool) -> Result<NcPoly> {
    let xa = t.generator(a);
    let image = if forward {
        t.apply_endo(i, t.sigma_inv(i, a))?
    } else {
        t.apply_endo_inverse(i, t.sigma(i, a))?
    };
    image.sub(&xa)
}
