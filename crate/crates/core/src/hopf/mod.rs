//! Hopf structures on iterated Ore extensions.
//!
//! Each generator has `Delta(x_i) = x_i (x) 1 + 1 (x) x_i + w_i` with the
//! tail `w_i` living on the earlier generators. The group-like coefficient is
//! fixed to 1 and there is no `x (x) x` term: towers over a field have no
//! nontrivial units.

mod antipode_order;
mod axioms;
mod change;
mod primitives;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::ore::{Monomial, NcPoly, Scalar, Tower};
use crate::tensor::{mu, Tensor2};

pub use antipode_order::{antipode_order, antipode_power, s4_decompose, AntipodeOrder, S4Decomposition};
pub use axioms::{check_hoe_conditions, check_hopf_axioms, HOPF_CHECKS};
pub use change::{change_variable, counit_normalize};
pub use primitives::{primitives, primitivity_defect, PrimitiveBasis};

#[derive(Clone)]
pub struct HopfTower {
    name: String,
    tower: Tower,
    tails: Vec<Tensor2>,
    counits: Vec<Scalar>,
    antipode_images: Vec<NcPoly>,
    coproduct_cache: Arc<RwLock<HashMap<Monomial, Tensor2>>>,
}

impl PartialEq for HopfTower {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.tower == other.tower
            && self.tails == other.tails
            && self.counits == other.counits
    }
}

impl Eq for HopfTower {}

impl fmt::Debug for HopfTower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HopfTower")
            .field("name", &self.name)
            .field("tower", &self.tower)
            .field("tails", &self.tails)
            .field("counits", &self.counits)
            .finish()
    }
}

impl HopfTower {
    /// Builds the Hopf structure and precomputes the antipode on generators.
    /// `counits[i]` is `epsilon(x_i)`; the usual normalization has all zeros.
    pub fn new(name: impl Into<String>, tower: Tower, tails: Vec<Tensor2>, counits: Vec<Scalar>) -> Result<Self> {
        let n = tower.arity();
        if tails.len() != n || counits.len() != n {
            return Err(Error::MalformedTower(format!(
                "{n} generators but {} tails and {} counit values",
                tails.len(),
                counits.len()
            )));
        }
        for (i, w) in tails.iter().enumerate() {
            if w.arity() != n {
                return Err(Error::ArityMismatch {
                    expected: n,
                    found: w.arity(),
                });
            }
            if !w.supported_below(i) {
                return Err(Error::MalformedTower(format!(
                    "tail of `{}` mentions generators at or above it",
                    tower.names()[i]
                )));
            }
        }
        let mut ht = HopfTower {
            name: name.into(),
            tower,
            tails,
            counits,
            antipode_images: Vec::with_capacity(n),
            coproduct_cache: Arc::default(),
        };
        for i in 0..n {
            // mu (id (x) S) Delta(x) = epsilon(x)
            let w = &ht.tails[i];
            let twisted = w.lift_right(|m| ht.antipode_monomial(m))?;
            let correction = mu(&twisted, &ht.tower)?;
            let image = ht
                .tower
                .constant(ht.counits[i].clone())
                .sub(&ht.tower.generator(i))?
                .sub(&correction)?;
            ht.antipode_images.push(image);
        }
        Ok(ht)
    }

    /// All tails zero and all counit values zero.
    pub fn primitive(name: impl Into<String>, tower: Tower) -> Result<Self> {
        let n = tower.arity();
        HopfTower::new(name, tower, vec![Tensor2::zero(n); n], vec![Scalar::zero(); n])
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn tower(&self) -> &Tower {
        &self.tower
    }

    pub fn arity(&self) -> usize {
        self.tower.arity()
    }

    pub fn names(&self) -> &[String] {
        self.tower.names()
    }

    pub fn tails(&self) -> &[Tensor2] {
        &self.tails
    }

    pub fn tail(&self, index: usize) -> &Tensor2 {
        &self.tails[index]
    }

    pub fn counits(&self) -> &[Scalar] {
        &self.counits
    }

    pub fn is_counit_normalized(&self) -> bool {
        self.counits.iter().all(Zero::is_zero)
    }

    pub fn with_tower(&self, tower: Tower) -> Result<HopfTower> {
        HopfTower::new(self.name.clone(), tower, self.tails.clone(), self.counits.clone())
    }

    pub fn with_tail(&self, index: usize, tail: Tensor2) -> Result<HopfTower> {
        let mut tails = self.tails.clone();
        tails[index] = tail;
        HopfTower::new(self.name.clone(), self.tower.clone(), tails, self.counits.clone())
    }

    pub fn with_budget(&self, budget: u64) -> HopfTower {
        let mut out = self.clone();
        out.tower = out.tower.with_budget(budget);
        out
    }

    pub fn renamed(mut self, name: impl Into<String>) -> HopfTower {
        self.name = name.into();
        self
    }

    pub fn render(&self, p: &NcPoly) -> String {
        p.render(self.names())
    }

    /// `x_i (x) 1 + 1 (x) x_i + w_i`.
    pub fn coproduct_generator(&self, index: usize) -> Tensor2 {
        let n = self.arity();
        let x = self.tower.generator(index);
        let one = self.tower.one();
        let mut out = Tensor2::pure([&x, &one]);
        out.add_assign_scaled(&Tensor2::pure([&one, &x]), &Scalar::from_integer(1.into()));
        out.add_assign_scaled(&self.tails[index], &Scalar::from_integer(1.into()));
        debug_assert_eq!(out.arity(), n);
        out
    }

    /// Coproduct of a PBW monomial: the product of the generator coproducts.
    pub fn coproduct_monomial(&self, m: &Monomial) -> Result<Tensor2> {
        if let Some(hit) = self.coproduct_cache.read().expect("cache lock").get(m) {
            return Ok(hit.clone());
        }
        let out = match m.max_index() {
            None => Tensor2::unit(self.arity()),
            Some(last) => {
                let prefix = self.coproduct_monomial(&m.lower(last))?;
                prefix.mul(&self.coproduct_generator(last), &self.tower)?
            }
        };
        self.coproduct_cache
            .write()
            .expect("cache lock")
            .insert(m.clone(), out.clone());
        Ok(out)
    }

    pub fn coproduct(&self, p: &NcPoly) -> Result<Tensor2> {
        let mut out = Tensor2::zero(self.arity());
        for (m, c) in p.terms() {
            out.add_assign_scaled(&self.coproduct_monomial(m)?, c);
        }
        Ok(out)
    }

    pub fn counit_monomial(&self, m: &Monomial) -> Scalar {
        crate::ore::poly::eval_monomial(m, &self.counits).expect("counit defined on every generator")
    }

    /// The counit: with normalized generators this is the constant term.
    pub fn counit(&self, p: &NcPoly) -> Scalar {
        p.eval_character(&self.counits)
            .expect("counit defined on every generator")
    }

    pub fn antipode_generator(&self, index: usize) -> &NcPoly {
        &self.antipode_images[index]
    }

    /// `S(x_a1 x_a2 ... x_ak) = S(x_ak) ... S(x_a2) S(x_a1)`.
    pub fn antipode_monomial(&self, m: &Monomial) -> Result<NcPoly> {
        let mut acc = self.tower.one();
        for a in m.letters().into_iter().rev() {
            acc = self.tower.mul(&acc, &self.antipode_images[a])?;
        }
        Ok(acc)
    }

    pub fn antipode(&self, p: &NcPoly) -> Result<NcPoly> {
        let mut out = self.tower.zero();
        for (m, c) in p.terms() {
            out.add_assign_scaled(&self.antipode_monomial(m)?, c);
        }
        Ok(out)
    }
}

/// GK-dimension of the tower, with the reason it equals the arity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GkDimension {
    pub dimension: usize,
    pub note: String,
}

/// Each Ore step raises GK-dimension by exactly one, so an iterated
/// extension over the base field has GK-dimension equal to its arity.
pub fn gk_dimension(ht: &HopfTower) -> GkDimension {
    GkDimension {
        dimension: ht.arity(),
        note: "GKdim R[x; sigma, delta] = GKdim R + 1 at every step, starting from GKdim k = 0".into(),
    }
}

pub fn counit(p: &NcPoly, ht: &HopfTower) -> Scalar {
    ht.counit(p)
}

pub fn coproduct(p: &NcPoly, ht: &HopfTower) -> Result<Tensor2> {
    ht.coproduct(p)
}

pub fn antipode(p: &NcPoly, ht: &HopfTower) -> Result<NcPoly> {
    ht.antipode(p)
}
