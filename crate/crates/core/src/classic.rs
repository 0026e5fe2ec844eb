//! The maximal classical subgroup: commutators, the character variety,
//! invariant/variant extension steps, fibers over characters, and a bounded
//! normality search for ideals generated by generators.

use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::cpoly::{solve_triangular, Unknown};
use crate::error::{Error, Result};
use crate::hopf::HopfTower;
use crate::ore::{Monomial, NcPoly, Scalar, Tower};
use crate::tensor::Tensor2;
use crate::winding::{character_equations, is_character, Character};

/// `[x_j, x_i]` for every `i < j`.
pub fn commutator_normal_forms(ht: &HopfTower) -> Result<Vec<((usize, usize), NcPoly)>> {
    let t = ht.tower();
    let mut out = Vec::new();
    for j in 0..ht.arity() {
        for i in 0..j {
            out.push(((i, j), t.commutator(&t.generator(j), &t.generator(i))?));
        }
    }
    Ok(out)
}

/// The solution set of the character equations, one entry per generator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VarietyDescription {
    pub names: Vec<String>,
    pub unknowns: Vec<Unknown>,
    /// Equations the triangular solver could not reduce.
    pub residue: Vec<String>,
    pub inconsistent: bool,
}

impl VarietyDescription {
    pub fn fully_resolved(&self) -> bool {
        !self.inconsistent && self.residue.is_empty()
    }

    pub fn free_count(&self) -> usize {
        self.unknowns.iter().filter(|u| matches!(u, Unknown::Free)).count()
    }

    /// The point with every free coordinate set to the matching entry of
    /// `free` (cycled), if the description is fully resolved.
    pub fn point(&self, free: &[Scalar]) -> Option<Character> {
        if !self.fully_resolved() {
            return None;
        }
        let mut k = 0;
        let values = self
            .unknowns
            .iter()
            .map(|u| match u {
                Unknown::Fixed(v) => v.clone(),
                _ => {
                    let v = free.get(k % free.len().max(1)).cloned().unwrap_or_else(Scalar::zero);
                    k += 1;
                    v
                }
            })
            .collect();
        Some(Character::new(values))
    }

    /// Whether `values` satisfies every fixed coordinate.
    pub fn contains(&self, values: &[Scalar]) -> bool {
        self.fully_resolved()
            && self.unknowns.iter().zip(values).all(|(u, v)| match u {
                Unknown::Fixed(f) => f == v,
                _ => true,
            })
    }
}

impl fmt::Display for VarietyDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inconsistent {
            return f.write_str("empty (inconsistent equations)");
        }
        let parts: Vec<String> = self
            .names
            .iter()
            .zip(&self.unknowns)
            .map(|(n, u)| match u {
                Unknown::Free => format!("{n} free"),
                Unknown::Fixed(v) => format!("{n} = {v}"),
                Unknown::Unresolved => format!("{n} unresolved"),
            })
            .collect();
        f.write_str(&parts.join(", "))?;
        if !self.residue.is_empty() {
            write!(f, "; remaining: {}", self.residue.join("; "))?;
        }
        Ok(())
    }
}

/// Solves the character equations by triangular substitution.
pub fn character_variety(ht: &HopfTower) -> VarietyDescription {
    let solution = solve_triangular(ht.arity(), &character_equations(ht));
    VarietyDescription {
        names: ht.names().to_vec(),
        residue: solution.residue.iter().map(|p| p.render(ht.names())).collect(),
        unknowns: solution.unknowns,
        inconsistent: solution.inconsistent,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ExtensionType {
    Invariant,
    Variant,
    Inconsistent,
}

impl fmt::Display for ExtensionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExtensionType::Invariant => "Invariant",
            ExtensionType::Variant => "Variant",
            ExtensionType::Inconsistent => "Inconsistent",
        })
    }
}

fn check_index(ht: &HopfTower, index: usize) -> Result<()> {
    if index == 0 || index >= ht.arity() {
        return Err(Error::StepOutOfRange {
            step: index + 1,
            min: 2,
            max: ht.arity(),
        });
    }
    Ok(())
}

fn eval(p: &NcPoly, m: &[Scalar]) -> Result<Scalar> {
    p.eval_character(m)
        .ok_or_else(|| Error::InvalidCharacter("value missing for a generator".into()))
}

/// How `sigma_index` and `delta_index` treat the character `m` of the
/// subalgebra below `index`.
struct Twisting {
    /// `m(sigma(x_a)) - m(x_a)` per generator.
    sigma_shift: Vec<Scalar>,
    /// `m(delta(x_a))` per generator.
    delta_value: Vec<Scalar>,
    /// `m(delta([x_b, x_a]))` is zero for every pair.
    commutators_killed: bool,
}

impl Twisting {
    fn new(t: &Tower, index: usize, m: &[Scalar]) -> Result<Self> {
        let mut sigma_shift = Vec::with_capacity(index);
        let mut delta_value = Vec::with_capacity(index);
        for a in 0..index {
            sigma_shift.push(eval(t.sigma(index, a), m)? - m[a].clone());
            delta_value.push(eval(t.delta(index, a), m)?);
        }
        let mut commutators_killed = true;
        for b in 0..index {
            for a in 0..b {
                let c = t.commutator(&t.generator(b), &t.generator(a))?;
                if !eval(&t.apply_skew_derivation(index, &c)?, m)?.is_zero() {
                    commutators_killed = false;
                }
            }
        }
        Ok(Twisting {
            sigma_shift,
            delta_value,
            commutators_killed,
        })
    }

    fn sigma_invariant(&self) -> bool {
        self.sigma_shift.iter().all(Zero::is_zero)
    }

    fn delta_invariant(&self) -> bool {
        self.delta_value.iter().all(Zero::is_zero)
    }
}

/// Relation residuals of `values` over the generators `0..values.len()`.
fn partial_residuals(t: &Tower, values: &[Scalar]) -> Result<Vec<(usize, usize, Scalar)>> {
    let mut out = Vec::new();
    for j in 0..values.len() {
        for i in 0..j {
            let r = values[j].clone() * values[i].clone()
                - eval(t.sigma(j, i), values)? * values[j].clone()
                - eval(t.delta(j, i), values)?;
            if !r.is_zero() {
                out.push((i, j, r));
            }
        }
    }
    Ok(out)
}

/// Classifies step `index` (0-based) at the counit character of the
/// subalgebra below it.
pub fn classify_extension(ht: &HopfTower, index: usize) -> Result<ExtensionType> {
    check_index(ht, index)?;
    let m = &ht.counits()[..index];
    let tw = Twisting::new(ht.tower(), index, m)?;
    Ok(match (tw.sigma_invariant(), tw.delta_invariant()) {
        (true, true) => ExtensionType::Invariant,
        (true, false) => ExtensionType::Inconsistent,
        (false, _) if tw.commutators_killed => ExtensionType::Variant,
        (false, _) => ExtensionType::Inconsistent,
    })
}

/// The maximal ideals of `R[x; sigma, delta]` lying over the maximal ideal
/// `ker m` of `R`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FiberResult {
    /// `m` is `(sigma, delta)`-invariant: the family `<ker m, x - lambda>`.
    Line {
        base: Vec<NcPoly>,
        generator: usize,
    },
    /// A unique ideal `<ker m, x + shift>`, whose character extends `m` by
    /// `x -> -shift`.
    Point {
        base: Vec<NcPoly>,
        generator: usize,
        shift: Scalar,
        character: Vec<Scalar>,
    },
    Empty {
        reason: String,
    },
    Unresolved {
        diagnostic: String,
    },
}

impl FiberResult {
    pub fn kind(&self) -> &'static str {
        match self {
            FiberResult::Line { .. } => "Line",
            FiberResult::Point { .. } => "Point",
            FiberResult::Empty { .. } => "Empty",
            FiberResult::Unresolved { .. } => "Unresolved",
        }
    }

    pub fn describe(&self, names: &[String]) -> String {
        let list = |base: &[NcPoly], extra: String| {
            let mut parts: Vec<String> = base.iter().map(|p| p.render(names)).collect();
            parts.push(extra);
            format!("<{}>", parts.join(", "))
        };
        match self {
            FiberResult::Line { base, generator } => {
                format!(
                    "{} for every lambda",
                    list(base, format!("{} - lambda", names[*generator]))
                )
            }
            FiberResult::Point {
                base, generator, shift, ..
            } => {
                let x = NcPoly::generator(base.first().map_or(names.len(), NcPoly::arity), *generator);
                let shifted = x.add(&NcPoly::constant(x.arity(), shift.clone())).expect("same arity");
                list(base, shifted.render(names))
            }
            FiberResult::Empty { reason } => format!("empty: {reason}"),
            FiberResult::Unresolved { diagnostic } => format!("unresolved: {diagnostic}"),
        }
    }
}

/// The fiber over the character `m` (values of the generators below
/// `index`) of step `index`.
///
/// When `m` is moved by `sigma`, pick `a` with `d = m(sigma(x_a)) - m(x_a) != 0`
/// and `r = (x_a - m(x_a)) / d`, so that `sigma(r) = 1 (mod ker m)`. Then
/// `x + m(delta(r))` lies in every maximal ideal over `m`.
pub fn goodearl_fiber(ht: &HopfTower, index: usize, m: &[Scalar]) -> Result<FiberResult> {
    check_index(ht, index)?;
    let t = ht.tower();
    if m.len() != index {
        return Err(Error::InvalidCharacter(format!(
            "{} values for the {index} generators below `{}`",
            m.len(),
            ht.names()[index]
        )));
    }
    if let Some((i, j, r)) = partial_residuals(t, m)?.into_iter().next() {
        return Err(Error::InvalidCharacter(format!(
            "relation ({}, {}) evaluates to {r}",
            ht.names()[i],
            ht.names()[j]
        )));
    }
    let base: Vec<NcPoly> = (0..index)
        .map(|a| t.generator(a).sub(&t.constant(m[a].clone())).expect("same arity"))
        .collect();
    let tw = Twisting::new(t, index, m)?;
    if tw.sigma_invariant() {
        if tw.delta_invariant() {
            return Ok(FiberResult::Line { base, generator: index });
        }
        let a = tw.delta_value.iter().position(|v| !v.is_zero()).expect("not invariant");
        return Ok(FiberResult::Empty {
            reason: format!(
                "ker m is sigma-stable but m(delta({})) = {} != 0",
                ht.names()[a],
                tw.delta_value[a]
            ),
        });
    }
    if !tw.commutators_killed {
        return Ok(FiberResult::Empty {
            reason: "delta([R, R]) is not contained in ker m".into(),
        });
    }
    let a = tw.sigma_shift.iter().position(|v| !v.is_zero()).expect("not invariant");
    // delta kills constants, so m(delta(r)) = m(delta(x_a)) / d.
    let shift = tw.delta_value[a].clone() / tw.sigma_shift[a].clone();
    let mut character = m.to_vec();
    character.push(-shift.clone());
    let residuals = partial_residuals(t, &character)?;
    if let Some((i, j, r)) = residuals.first() {
        return Ok(FiberResult::Unresolved {
            diagnostic: format!(
                "extended character fails relation ({}, {}) with value {r}",
                ht.names()[*i],
                ht.names()[*j]
            ),
        });
    }
    Ok(FiberResult::Point {
        base,
        generator: index,
        shift,
        character,
    })
}

/// Side of a coadjoint coaction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Normality {
    /// No witness among the searched elements.
    NormalUpToDegree { max_deg: u32, searched: usize },
    /// `element` lies in the ideal but its coaction image does not lie in
    /// `H (x) I` (left) or `I (x) H` (right); `term` is an offending term.
    NotNormal {
        element: NcPoly,
        side: Side,
        image: Tensor2,
        term: ([Monomial; 2], Scalar),
    },
}

/// `sum f_1 S(f_3) (x) f_2`.
pub fn coadjoint_left(ht: &HopfTower, f: &NcPoly) -> Result<Tensor2> {
    let t = ht.tower();
    let d3 = ht.coproduct(f)?.embed_12(|m| ht.coproduct_monomial(m))?;
    let mut out = Tensor2::zero(ht.arity());
    for ([a, b, c], k) in d3.terms() {
        let left = t.mul(&NcPoly::monomial(a.clone()), &ht.antipode_monomial(c)?)?;
        out.add_assign_scaled(&Tensor2::pure([&left, &NcPoly::monomial(b.clone())]), k);
    }
    Ok(out)
}

/// `sum f_2 (x) S(f_1) f_3`.
pub fn coadjoint_right(ht: &HopfTower, f: &NcPoly) -> Result<Tensor2> {
    let t = ht.tower();
    let d3 = ht.coproduct(f)?.embed_12(|m| ht.coproduct_monomial(m))?;
    let mut out = Tensor2::zero(ht.arity());
    for ([a, b, c], k) in d3.terms() {
        let right = t.mul(&ht.antipode_monomial(a)?, &NcPoly::monomial(c.clone()))?;
        out.add_assign_scaled(&Tensor2::pure([&NcPoly::monomial(b.clone()), &right]), k);
    }
    Ok(out)
}

/// Checks that the span of PBW monomials containing a generator from `gens`
/// is a two-sided ideal: every rewrite `x_j x_i -> sigma_j(x_i) x_j + delta_j(x_i)`
/// touching a listed generator keeps one in every term.
pub fn check_rewrite_stable(ht: &HopfTower, gens: &[usize]) -> Result<()> {
    let t = ht.tower();
    let names = ht.names();
    let inside = |p: &NcPoly| p.terms().all(|(m, _)| m.contains_any(gens));
    for j in 0..ht.arity() {
        for i in 0..j {
            let (gi, gj) = (gens.contains(&i), gens.contains(&j));
            if (gi || gj) && !inside(t.delta(j, i)) {
                return Err(Error::NotRewriteStable(format!(
                    "delta_{}({}) = {} leaves the ideal",
                    names[j],
                    names[i],
                    t.render(t.delta(j, i))
                )));
            }
            if gi && !gj && !inside(t.sigma(j, i)) {
                return Err(Error::NotRewriteStable(format!(
                    "sigma_{}({}) = {} leaves the ideal",
                    names[j],
                    names[i],
                    t.render(t.sigma(j, i))
                )));
            }
        }
    }
    Ok(())
}

/// Searches the elements `p x_a q` (PBW monomials `p`, `q` with
/// `deg p + deg q <= max_deg`, `a` in `gens`) of the ideal generated by
/// `gens` for one whose left or right coadjoint coaction leaves
/// `H (x) I` or `I (x) H`. Finding none is evidence, not proof.
pub fn normality_search(ht: &HopfTower, gens: &[usize], max_deg: u32) -> Result<Normality> {
    let n = ht.arity();
    if let Some(&g) = gens.iter().find(|&&g| g >= n) {
        return Err(Error::UnknownGenerator(format!("x{}", g + 1)));
    }
    if gens.is_empty() {
        return Err(Error::NotRewriteStable("no generators given".into()));
    }
    check_rewrite_stable(ht, gens)?;
    let t = ht.tower();
    let monomials = Monomial::all_up_to(n, max_deg);
    let mut searched = 0;
    for total in 0..=max_deg {
        for p in monomials.iter().filter(|p| p.degree() <= total) {
            for q in monomials.iter().filter(|q| q.degree() + p.degree() == total) {
                for &a in gens {
                    let f = t.mul_all([
                        &NcPoly::monomial(p.clone()),
                        &t.generator(a),
                        &NcPoly::monomial(q.clone()),
                    ])?;
                    searched += 1;
                    for side in [Side::Left, Side::Right] {
                        let image = match side {
                            Side::Left => coadjoint_left(ht, &f)?,
                            Side::Right => coadjoint_right(ht, &f)?,
                        };
                        let slot = usize::from(side == Side::Left);
                        let bad = image
                            .terms()
                            .find(|(key, _)| !key[slot].contains_any(gens))
                            .map(|(key, c)| (key.clone(), c.clone()));
                        if let Some(term) = bad {
                            return Ok(Normality::NotNormal {
                                element: f,
                                side,
                                image,
                                term,
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(Normality::NormalUpToDegree { max_deg, searched })
}

/// Every point of a fully resolved variety that passes on a small grid of
/// free values; used to cross-check the solver.
pub fn sample_points(variety: &VarietyDescription, grid: &[Scalar]) -> Vec<Character> {
    if !variety.fully_resolved() {
        return Vec::new();
    }
    let free: Vec<usize> = variety
        .unknowns
        .iter()
        .enumerate()
        .filter(|(_, u)| matches!(u, Unknown::Free))
        .map(|(i, _)| i)
        .collect();
    let mut out = Vec::new();
    let total = grid.len().pow(free.len() as u32);
    for code in 0..total {
        let mut c = code;
        let mut values: Vec<Scalar> = variety
            .unknowns
            .iter()
            .map(|u| match u {
                Unknown::Fixed(v) => v.clone(),
                _ => Scalar::zero(),
            })
            .collect();
        for &v in &free {
            values[v] = grid[c % grid.len()].clone();
            c /= grid.len();
        }
        out.push(Character::new(values));
    }
    out
}

pub fn is_point(ht: &HopfTower, values: &[Scalar]) -> Result<bool> {
    is_character(&Character::new(values.to_vec()), ht)
}
