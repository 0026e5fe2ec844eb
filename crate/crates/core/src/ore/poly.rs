use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use super::monomial::Monomial;
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// An element of an iterated Ore extension in PBW canonical form: a finite map
/// from ordered monomials to nonzero rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NcPoly {
    arity: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl NcPoly {
    pub fn zero(arity: usize) -> Self {
        NcPoly {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(arity: usize) -> Self {
        Self::constant(arity, Scalar::one())
    }

    pub fn constant(arity: usize, c: Scalar) -> Self {
        Self::term(Monomial::one(arity), c)
    }

    pub fn generator(arity: usize, index: usize) -> Self {
        Self::monomial(Monomial::generator(arity, index))
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(m, Scalar::one())
    }

    pub fn term(m: Monomial, c: Scalar) -> Self {
        let mut p = NcPoly::zero(m.arity());
        p.add_term(m, c);
        p
    }

    pub fn from_terms(arity: usize, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut p = NcPoly::zero(arity);
        for (m, c) in terms {
            assert_eq!(m.arity(), arity, "monomial arity");
            p.add_term(m, c);
        }
        p
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Coefficient of the empty monomial.
    pub fn constant_term(&self) -> Scalar {
        self.coeff(&Monomial::one(self.arity))
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// True when every monomial only uses generators with index `< bound`.
    pub fn supported_below(&self, bound: usize) -> bool {
        self.terms.keys().all(|m| m.max_index().is_none_or(|k| k < bound))
    }

    /// Largest generator index occurring in the support.
    pub fn max_index(&self) -> Option<usize> {
        self.terms.keys().filter_map(Monomial::max_index).max()
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign_scaled(&mut self, other: &NcPoly, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (m, d) in &other.terms {
            self.add_term(m.clone(), d * c);
        }
    }

    fn check_arity(&self, other: &NcPoly) -> Result<()> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: other.arity,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &NcPoly) -> Result<NcPoly> {
        self.check_arity(other)?;
        let mut out = self.clone();
        out.add_assign_scaled(other, &Scalar::one());
        Ok(out)
    }

    pub fn sub(&self, other: &NcPoly) -> Result<NcPoly> {
        self.check_arity(other)?;
        let mut out = self.clone();
        out.add_assign_scaled(other, &-Scalar::one());
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> NcPoly {
        let mut out = NcPoly::zero(self.arity);
        out.add_assign_scaled(self, c);
        out
    }

    pub fn neg(&self) -> NcPoly {
        self.scale(&-Scalar::one())
    }

    /// Re-indexes into a tower with `arity` generators (extra generators get
    /// exponent zero). Panics if a used generator would be dropped.
    pub fn with_arity(&self, arity: usize) -> NcPoly {
        let mut out = NcPoly::zero(arity);
        for (m, c) in &self.terms {
            let mut exps = m.exponents().to_vec();
            assert!(exps.iter().skip(arity).all(|&e| e == 0));
            exps.resize(arity, 0);
            out.add_term(Monomial::from_exponents(exps), c.clone());
        }
        out
    }

    /// Evaluates at a character given by generator values; the product of
    /// values is commutative, so the monomial order is irrelevant.
    pub fn eval_character(&self, values: &[Scalar]) -> Option<Scalar> {
        let mut total = Scalar::zero();
        for (m, c) in &self.terms {
            total += c * eval_monomial(m, values)?;
        }
        Some(total)
    }

    /// Canonical text: terms from highest to lowest in the monomial order,
    /// `c*m` with unit coefficients elided. Re-parses through the DSL.
    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            out.push_str(&render_term(&abs, m, names));
        }
        out
    }
}

pub(crate) fn render_term(abs: &Scalar, m: &Monomial, names: &[String]) -> String {
    if m.is_one() {
        abs.to_string()
    } else if abs.is_one() {
        m.render(names)
    } else {
        format!("{}*{}", abs, m.render(names))
    }
}

/// Product of character values over the letters of `m`; `None` if `m` uses a
/// generator without a value.
pub fn eval_monomial(m: &Monomial, values: &[Scalar]) -> Option<Scalar> {
    let mut acc = Scalar::one();
    for (i, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        let v = values.get(i)?;
        for _ in 0..e {
            acc *= v;
        }
    }
    Some(acc)
}
