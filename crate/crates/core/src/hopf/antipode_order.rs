use num_traits::Zero;

use super::HopfTower;
use crate::cpoly::{solve_triangular, CPoly, Solution};
use crate::error::Result;
use crate::ore::poly::eval_monomial;
use crate::ore::{Monomial, NcPoly, Scalar};
use crate::winding::{character_equations, is_character, Character};

/// `S^m(p)`.
pub fn antipode_power(ht: &HopfTower, p: &NcPoly, m: u32) -> Result<NcPoly> {
    let mut out = p.clone();
    for _ in 0..m {
        out = ht.antipode(&out)?;
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AntipodeOrder {
    SquareIsIdentity,
    /// `S^{2m}(x) = x + m * increment` for every m, checked exactly up to
    /// `verified_up_to`. In characteristic 0 this never returns to `x`.
    Infinite {
        generator: usize,
        increment: NcPoly,
        verified_up_to: u32,
    },
    Undecided {
        max_m: u32,
        detail: String,
    },
}

/// Decides whether `S^2 = id` or `S` has infinite order.
///
/// At the first generator moved by `S^2`, every earlier generator is fixed.
/// If the increment `a = S^2(x) - x` is itself fixed by `S^2`, induction gives
/// `S^{2m}(x) = x + m a`, which is conclusive.
pub fn antipode_order(ht: &HopfTower, max_m: u32) -> Result<AntipodeOrder> {
    let t = ht.tower();
    for i in 0..ht.arity() {
        let x = t.generator(i);
        let s2 = antipode_power(ht, &x, 2)?;
        let increment = s2.sub(&x)?;
        if increment.is_zero() {
            continue;
        }
        if antipode_power(ht, &increment, 2)? != increment {
            return Ok(AntipodeOrder::Undecided {
                max_m,
                detail: format!(
                    "S^2({}) - {} = {} is not fixed by S^2",
                    ht.names()[i],
                    ht.names()[i],
                    ht.render(&increment)
                ),
            });
        }
        let mut current = x.clone();
        for m in 1..=max_m {
            current = antipode_power(ht, &current, 2)?;
            let expected = x.add(&increment.scale(&Scalar::from_integer(m.into())))?;
            if current != expected {
                return Ok(AntipodeOrder::Undecided {
                    max_m,
                    detail: format!("S^{}({}) breaks the linear pattern", 2 * m, ht.names()[i]),
                });
            }
        }
        return Ok(AntipodeOrder::Infinite {
            generator: i,
            increment,
            verified_up_to: max_m,
        });
    }
    Ok(AntipodeOrder::SquareIsIdentity)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum S4Decomposition {
    /// `S^4 = tau_left(chi) o tau_right(chi o S)`, verified on generators.
    /// Unknowns the equations leave free are set to 0 and listed in `free`.
    Found {
        chi: Vec<Scalar>,
        free: Vec<usize>,
    },
    Unresolved {
        diagnostic: String,
    },
}

fn symbolic_monomial(m: &Monomial) -> CPoly {
    CPoly::commutative_image(&NcPoly::monomial(m.clone()))
}

/// The right-hand side `(chi (x) id (x) chi o S)(Delta (x) id)Delta(p)` and
/// the left-hand side `S^4(p)`, compared coefficient by coefficient.
fn s4_equations(ht: &HopfTower, i: usize) -> Result<Vec<CPoly>> {
    let n = ht.arity();
    let x = ht.tower().generator(i);
    let lhs = antipode_power(ht, &x, 4)?;
    let d3 = ht.coproduct_generator(i).embed_12(|m| ht.coproduct_monomial(m))?;
    let mut rhs: std::collections::BTreeMap<Monomial, CPoly> = Default::default();
    for ([a, b, c], k) in d3.terms() {
        let left = symbolic_monomial(a);
        let right = CPoly::commutative_image(&ht.antipode_monomial(c)?);
        let entry = rhs.entry(b.clone()).or_insert_with(|| CPoly::zero(n));
        entry.add_scaled(&left.mul(&right), k);
    }
    for (m, c) in lhs.terms() {
        let entry = rhs.entry(m.clone()).or_insert_with(|| CPoly::zero(n));
        *entry = entry.sub(&CPoly::constant(n, c.clone()));
    }
    Ok(rhs.into_values().filter(|p| !p.is_zero()).collect())
}

/// Verifies `S^4(x_i) = (chi (x) id (x) chi o S)(Delta (x) id)Delta(x_i)` for a
/// concrete `chi`.
pub(crate) fn s4_holds(ht: &HopfTower, chi: &[Scalar]) -> Result<bool> {
    for i in 0..ht.arity() {
        let x = ht.tower().generator(i);
        let lhs = antipode_power(ht, &x, 4)?;
        let d3 = ht.coproduct_generator(i).embed_12(|m| ht.coproduct_monomial(m))?;
        let rhs = d3.contract_outer(
            |m| Ok(eval_monomial(m, chi).expect("full character")),
            |m| Ok(ht.antipode_monomial(m)?.eval_character(chi).expect("full character")),
        )?;
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Solves for a character `chi` with `S^4 = tau_left(chi) o tau_right(chi^-1)`,
/// `chi^-1 = chi o S`, together with the character equations of the tower.
pub fn s4_decompose(ht: &HopfTower) -> Result<S4Decomposition> {
    let n = ht.arity();
    let mut eqs = character_equations(ht);
    for i in 0..n {
        eqs.extend(s4_equations(ht, i)?);
    }
    let solution: Solution = solve_triangular(n, &eqs);
    if solution.inconsistent {
        return Ok(S4Decomposition::Unresolved {
            diagnostic: "the equations for chi are inconsistent".into(),
        });
    }
    if !solution.residue.is_empty() {
        let names = ht.names();
        let text: Vec<String> = solution.residue.iter().map(|p| p.render(names)).collect();
        return Ok(S4Decomposition::Unresolved {
            diagnostic: format!("nonlinear equations remain: {}", text.join("; ")),
        });
    }
    let free: Vec<usize> = solution
        .unknowns
        .iter()
        .enumerate()
        .filter(|(_, u)| matches!(u, crate::cpoly::Unknown::Free))
        .map(|(v, _)| v)
        .collect();
    let chi = solution.point(&Scalar::zero()).expect("fully resolved");
    if !is_character(&Character::new(chi.clone()), ht)? || !s4_holds(ht, &chi)? {
        return Ok(S4Decomposition::Unresolved {
            diagnostic: "solved chi fails exact verification".into(),
        });
    }
    Ok(S4Decomposition::Found { chi, free })
}
