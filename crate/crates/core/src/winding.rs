//! Characters of a tower, the winding endomorphisms they induce, and the
//! convolution group structure.

use num_traits::Zero;

use crate::check::Check;
use crate::cpoly::CPoly;
use crate::error::{Error, Result};
use crate::hopf::HopfTower;
use crate::ore::poly::eval_monomial;
use crate::ore::{Monomial, NcPoly, Scalar};

/// An algebra map to the base field, stored by its generator values.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Character {
    pub values: Vec<Scalar>,
}

impl Character {
    pub fn new(values: Vec<Scalar>) -> Self {
        Character { values }
    }

    /// The counit of `ht`.
    pub fn counit(ht: &HopfTower) -> Self {
        Character::new(ht.counits().to_vec())
    }

    /// Values given by generator name; every generator must be assigned.
    pub fn from_named(ht: &HopfTower, pairs: &[(&str, Scalar)]) -> Result<Self> {
        let mut values: Vec<Option<Scalar>> = vec![None; ht.arity()];
        for (name, v) in pairs {
            let i = ht.tower().index_of(name)?;
            values[i] = Some(v.clone());
        }
        values
            .into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| Error::InvalidCharacter(format!("no value for `{}`", ht.names()[i]))))
            .collect::<Result<Vec<_>>>()
            .map(Character::new)
    }

    pub fn eval(&self, p: &NcPoly) -> Result<Scalar> {
        p.eval_character(&self.values)
            .ok_or_else(|| Error::InvalidCharacter("value missing for a generator".into()))
    }

    pub fn eval_monomial(&self, m: &Monomial) -> Result<Scalar> {
        eval_monomial(m, &self.values).ok_or_else(|| Error::InvalidCharacter("value missing for a generator".into()))
    }

    pub fn render(&self, names: &[String]) -> String {
        names
            .iter()
            .zip(&self.values)
            .map(|(n, v)| format!("{n}={v}"))
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// `chi(x_j)chi(x_i) - chi(sigma_j(x_i))chi(x_j) - chi(delta_j(x_i))` for every
/// relation `i < j`, labelled by the pair.
pub fn relation_residuals(chi: &Character, ht: &HopfTower) -> Result<Vec<((usize, usize), Scalar)>> {
    if chi.values.len() != ht.arity() {
        return Err(Error::InvalidCharacter(format!(
            "{} values for {} generators",
            chi.values.len(),
            ht.arity()
        )));
    }
    let t = ht.tower();
    let mut out = Vec::new();
    for j in 0..ht.arity() {
        for i in 0..j {
            let v = &chi.values;
            let r = v[j].clone() * v[i].clone() - chi.eval(t.sigma(j, i))? * v[j].clone() - chi.eval(t.delta(j, i))?;
            out.push(((i, j), r));
        }
    }
    Ok(out)
}

/// Passes iff `chi` kills every defining relation.
pub fn validate_character(chi: &Character, ht: &HopfTower) -> Result<Check> {
    let names = ht.names();
    let t = ht.tower();
    let residuals = relation_residuals(chi, ht)?;
    let check = Check::from_residuals(
        "character",
        "chi(x_j)chi(x_i) - chi(sigma_j(x_i))chi(x_j) - chi(delta_j(x_i)) = 0",
        names,
        residuals
            .into_iter()
            .map(|((i, j), r)| (format!("({}, {})", names[i], names[j]), Ok(t.constant(r).into()))),
    );
    Ok(check)
}

pub fn is_character(chi: &Character, ht: &HopfTower) -> Result<bool> {
    Ok(relation_residuals(chi, ht)?.iter().all(|(_, r)| r.is_zero()))
}

/// An algebra endomorphism given by generator images.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraMap {
    pub images: Vec<NcPoly>,
}

impl AlgebraMap {
    pub fn identity(ht: &HopfTower) -> Self {
        AlgebraMap {
            images: (0..ht.arity()).map(|i| ht.tower().generator(i)).collect(),
        }
    }

    pub fn apply(&self, p: &NcPoly, ht: &HopfTower) -> Result<NcPoly> {
        ht.tower().apply_hom(&self.images, p)
    }

    /// `self o other`.
    pub fn compose(&self, other: &AlgebraMap, ht: &HopfTower) -> Result<AlgebraMap> {
        let images = other
            .images
            .iter()
            .map(|p| self.apply(p, ht))
            .collect::<Result<Vec<_>>>()?;
        Ok(AlgebraMap { images })
    }

    /// Relation residuals `f(x_j)f(x_i) - f(sigma_j(x_i))f(x_j) - f(delta_j(x_i))`.
    pub fn relation_residuals(&self, ht: &HopfTower) -> Result<Vec<((usize, usize), NcPoly)>> {
        let t = ht.tower();
        let mut out = Vec::new();
        for j in 0..ht.arity() {
            for i in 0..j {
                let (fi, fj) = (&self.images[i], &self.images[j]);
                let r = t
                    .mul(fj, fi)?
                    .sub(&t.mul(&self.apply(t.sigma(j, i), ht)?, fj)?)?
                    .sub(&self.apply(t.delta(j, i), ht)?)?;
                out.push(((i, j), r));
            }
        }
        Ok(out)
    }

    fn verified(self, ht: &HopfTower) -> Result<AlgebraMap> {
        for ((i, j), r) in self.relation_residuals(ht)? {
            if !r.is_zero() {
                return Err(Error::RelationViolation(format!(
                    "relation ({}, {}) maps to {}",
                    ht.names()[i],
                    ht.names()[j],
                    ht.render(&r)
                )));
            }
        }
        Ok(self)
    }
}

/// Left winding `p -> (chi (x) id)Delta(p)`.
pub fn tau_left(chi: &Character, ht: &HopfTower) -> Result<AlgebraMap> {
    let images = (0..ht.arity())
        .map(|i| ht.coproduct_generator(i).contract_left(|m| chi.eval_monomial(m)))
        .collect::<Result<Vec<_>>>()?;
    AlgebraMap { images }.verified(ht)
}

/// Right winding `p -> (id (x) chi)Delta(p)`.
pub fn tau_right(chi: &Character, ht: &HopfTower) -> Result<AlgebraMap> {
    let images = (0..ht.arity())
        .map(|i| ht.coproduct_generator(i).contract_right(|m| chi.eval_monomial(m)))
        .collect::<Result<Vec<_>>>()?;
    AlgebraMap { images }.verified(ht)
}

fn checked(chi: Character, ht: &HopfTower, what: &str) -> Result<Character> {
    if is_character(&chi, ht)? {
        Ok(chi)
    } else {
        Err(Error::InvalidCharacter(format!(
            "{what} {} is not a character",
            chi.render(ht.names())
        )))
    }
}

/// `(chi * psi)(x) = (chi (x) psi)Delta(x)`.
pub fn convolve(chi: &Character, psi: &Character, ht: &HopfTower) -> Result<Character> {
    let values = (0..ht.arity())
        .map(|i| {
            ht.coproduct_generator(i)
                .contract_both(|m| chi.eval_monomial(m), |m| psi.eval_monomial(m))
        })
        .collect::<Result<Vec<_>>>()?;
    checked(Character::new(values), ht, "convolution")
}

/// `chi o S`, the convolution inverse.
pub fn char_inverse(chi: &Character, ht: &HopfTower) -> Result<Character> {
    let values = (0..ht.arity())
        .map(|i| chi.eval(ht.antipode_generator(i)))
        .collect::<Result<Vec<_>>>()?;
    checked(Character::new(values), ht, "inverse")
}

pub fn is_counit(chi: &Character, ht: &HopfTower) -> bool {
    chi.values == ht.counits()
}

/// The relation equations in the unknown generator values `u_0 .. u_{n-1}`.
pub fn character_equations(ht: &HopfTower) -> Vec<CPoly> {
    let t = ht.tower();
    let n = ht.arity();
    let mut eqs = Vec::new();
    for j in 0..n {
        for i in 0..j {
            let (xi, xj) = (CPoly::var(n, i), CPoly::var(n, j));
            let eq = xj
                .mul(&xi)
                .sub(&CPoly::commutative_image(t.sigma(j, i)).mul(&xj))
                .sub(&CPoly::commutative_image(t.delta(j, i)));
            if !eq.is_zero() {
                eqs.push(eq);
            }
        }
    }
    eqs
}
