use num_integer::binomial;
use num_traits::Zero;

use super::HopfTower;
use crate::error::Result;
use crate::ore::{Monomial, NcPoly, Scalar, Step, Tower};
use crate::tensor::Tensor2;

/// Rewrites `p` after substituting `x_index -> x_index + shift`. Because only
/// one generator moves and the substitution is affine in it, each PBW
/// monomial expands binomially without any reordering.
fn shift_generator(p: &NcPoly, index: usize, shift: &Scalar) -> NcPoly {
    let mut out = NcPoly::zero(p.arity());
    for (m, c) in p.terms() {
        let e = m.exponents()[index];
        for k in 0..=e {
            let mut exps = m.exponents().to_vec();
            exps[index] = k;
            let coeff = Scalar::from_integer(binomial(e, k).into()) * num_traits::pow(shift.clone(), (e - k) as usize);
            out.add_term(Monomial::from_exponents(exps), c * coeff);
        }
    }
    out
}

fn shift_tensor(u: &Tensor2, index: usize, shift: &Scalar) -> Result<Tensor2> {
    u.lift_left(|m| Ok(shift_generator(&NcPoly::monomial(m.clone()), index, shift)))?
        .lift_right(|m| Ok(shift_generator(&NcPoly::monomial(m.clone()), index, shift)))
}

/// Presents the same Hopf algebra with `x_index` replaced by
/// `x' = x_index + lambda`: `delta' = delta + lambda (id - sigma)`,
/// `w' = w - lambda 1 (x) 1`, `eps(x') = eps(x) + lambda`, and later steps
/// rewritten through `x = x' - lambda`.
pub fn change_variable(ht: &HopfTower, index: usize, lambda: &Scalar) -> Result<HopfTower> {
    if lambda.is_zero() {
        return Ok(ht.clone());
    }
    let t = ht.tower();
    let n = ht.arity();
    let back = -lambda.clone();
    let lift = |p: &NcPoly, a: usize| {
        let q = shift_generator(p, index, &back);
        if a == index {
            q.add(&t.constant(lambda.clone())).expect("same arity")
        } else {
            q
        }
    };
    let mut steps = Vec::with_capacity(n);
    for j in 0..n {
        let old = t.step(j);
        let step = if j < index {
            old.clone()
        } else if j == index {
            let mut delta = Vec::with_capacity(j);
            for a in 0..j {
                let x = t.generator(a);
                let shifted = x.sub(&old.sigma[a])?.scale(lambda);
                delta.push(old.delta[a].add(&shifted)?);
            }
            Step {
                sigma: old.sigma.clone(),
                sigma_inv: old.sigma_inv.clone(),
                delta,
            }
        } else {
            Step {
                sigma: (0..j).map(|a| lift(&old.sigma[a], a)).collect(),
                sigma_inv: (0..j).map(|a| lift(&old.sigma_inv[a], a)).collect(),
                delta: (0..j).map(|a| shift_generator(&old.delta[a], index, &back)).collect(),
            }
        };
        steps.push(step);
    }
    let tower = Tower::new(t.names().to_vec(), steps)?.with_budget(t.budget());
    let mut tails = Vec::with_capacity(n);
    for (j, w) in ht.tails().iter().enumerate() {
        tails.push(if j < index {
            w.clone()
        } else if j == index {
            let mut w = w.clone();
            w.add_term([Monomial::one(n), Monomial::one(n)], back.clone());
            w
        } else {
            shift_tensor(w, index, &back)?
        });
    }
    let mut counits = ht.counits().to_vec();
    counits[index] += lambda;
    HopfTower::new(ht.name(), tower, tails, counits)
}

/// Shifts every generator so the counit vanishes on it.
pub fn counit_normalize(ht: &HopfTower) -> Result<HopfTower> {
    let mut out = ht.clone();
    for i in 0..ht.arity() {
        let lambda = -out.counits()[i].clone();
        out = change_variable(&out, i, &lambda)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ore::scalar::int;

    #[test]
    fn binomial_shift() {
        // (y + 2)^2 with y at index 0
        let y2 = NcPoly::monomial(Monomial::from_exponents(vec![2, 0]));
        let names = vec!["y".to_string(), "x".to_string()];
        assert_eq!(shift_generator(&y2, 0, &int(2)).render(&names), "y^2 + 4*y + 4");
        assert_eq!(shift_generator(&y2, 1, &int(2)), y2);
    }
}
