//! Elements of `T (x) T` and `T (x) T (x) T` with every slot in PBW form.
//!
//! Products are componentwise with no sign twist. Equality of tensors is
//! equality of term maps.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ore::poly::render_term;
use crate::ore::{Monomial, NcPoly, Scalar, Tower};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tensor<const K: usize> {
    arity: usize,
    terms: BTreeMap<[Monomial; K], Scalar>,
}

pub type Tensor2 = Tensor<2>;
pub type Tensor3 = Tensor<3>;

impl<const K: usize> Tensor<K> {
    pub fn zero(arity: usize) -> Self {
        Tensor {
            arity,
            terms: BTreeMap::new(),
        }
    }

    /// `1 (x) ... (x) 1`.
    pub fn unit(arity: usize) -> Self {
        Self::basis(std::array::from_fn(|_| Monomial::one(arity)), Scalar::one())
    }

    pub fn basis(slots: [Monomial; K], c: Scalar) -> Self {
        let arity = slots[0].arity();
        let mut t = Tensor::zero(arity);
        t.add_term(slots, c);
        t
    }

    /// Pure tensor `p_1 (x) ... (x) p_K`.
    pub fn pure(factors: [&NcPoly; K]) -> Self {
        let arity = factors[0].arity();
        let mut out = Tensor::zero(arity);
        expand_into(&mut out, &factors.map(|p| p.clone()), &Scalar::one());
        out
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

    pub fn terms(&self) -> impl Iterator<Item = (&[Monomial; K], &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, slots: &[Monomial; K]) -> Scalar {
        self.terms.get(slots).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, slots: [Monomial; K], c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(slots) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign_scaled(&mut self, other: &Self, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (k, d) in &other.terms {
            self.add_term(k.clone(), d * c);
        }
    }

    fn check_arity(&self, other: &Self) -> Result<()> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: other.arity,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_arity(other)?;
        let mut out = self.clone();
        out.add_assign_scaled(other, &Scalar::one());
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_arity(other)?;
        let mut out = self.clone();
        out.add_assign_scaled(other, &-Scalar::one());
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Tensor::zero(self.arity);
        out.add_assign_scaled(self, c);
        out
    }

    /// True when every monomial in every slot uses only generators `< bound`.
    pub fn supported_below(&self, bound: usize) -> bool {
        self.terms
            .keys()
            .flatten()
            .all(|m| m.max_index().is_none_or(|k| k < bound))
    }

    /// `(a_1 (x) .. (x) a_K)(b_1 (x) .. (x) b_K) = a_1 b_1 (x) .. (x) a_K b_K`.
    pub fn mul(&self, other: &Self, tower: &Tower) -> Result<Self> {
        self.check_arity(other)?;
        if self.arity != tower.arity() {
            return Err(Error::ArityMismatch {
                expected: tower.arity(),
                found: self.arity,
            });
        }
        let mut out = Tensor::zero(self.arity);
        for (a, c) in &self.terms {
            for (b, d) in &other.terms {
                let mut slots = Vec::with_capacity(K);
                for k in 0..K {
                    slots.push(tower.mul_monomials(&a[k], &b[k])?);
                }
                let slots: [NcPoly; K] = slots.try_into().expect("K slots");
                expand_into(&mut out, &slots, &(c * d));
            }
        }
        Ok(out)
    }

    /// Applies a linear map, given on monomials, to one slot.
    pub fn lift_slot<F>(&self, slot: usize, mut f: F) -> Result<Self>
    where
        F: FnMut(&Monomial) -> Result<NcPoly>,
    {
        let mut cache: BTreeMap<Monomial, NcPoly> = BTreeMap::new();
        let mut out = Tensor::zero(self.arity);
        for (key, c) in &self.terms {
            let image = match cache.get(&key[slot]) {
                Some(p) => p.clone(),
                None => {
                    let p = f(&key[slot])?;
                    cache.insert(key[slot].clone(), p.clone());
                    p
                }
            };
            for (m, d) in image.terms() {
                let mut k = key.clone();
                k[slot] = m.clone();
                out.add_term(k, c * d);
            }
        }
        Ok(out)
    }

    /// Sum of `c * m_1 (x) ... (x) m_K` rendered as `c*m_1 ox m_2 ox ...`.
    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (key, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            out.push_str(&render_term(&c.abs(), &key[0], names));
            for m in &key[1..] {
                out.push_str(" ox ");
                out.push_str(&m.render(names));
            }
        }
        out
    }
}

/// Adds `c * (p_1 (x) ... (x) p_K)` into `out`.
fn expand_into<const K: usize>(out: &mut Tensor<K>, factors: &[NcPoly; K], c: &Scalar) {
    fn rec<const K: usize>(
        out: &mut Tensor<K>,
        factors: &[NcPoly; K],
        depth: usize,
        key: &mut Vec<Monomial>,
        c: Scalar,
    ) {
        if depth == K {
            let slots: [Monomial; K] = key.clone().try_into().expect("K slots");
            out.add_term(slots, c);
            return;
        }
        for (m, d) in factors[depth].terms() {
            key.push(m.clone());
            rec(out, factors, depth + 1, key, &c * d);
            key.pop();
        }
    }
    rec(out, factors, 0, &mut Vec::with_capacity(K), c.clone());
}

impl Tensor2 {
    /// `(f (x) id)(u)`.
    pub fn lift_left<F>(&self, f: F) -> Result<Tensor2>
    where
        F: FnMut(&Monomial) -> Result<NcPoly>,
    {
        self.lift_slot(0, f)
    }

    /// `(id (x) f)(u)`.
    pub fn lift_right<F>(&self, f: F) -> Result<Tensor2>
    where
        F: FnMut(&Monomial) -> Result<NcPoly>,
    {
        self.lift_slot(1, f)
    }

    /// `(g (x) id)(u)` for a map `g: T -> T (x) T`, such as the coproduct.
    pub fn embed_12<G>(&self, mut g: G) -> Result<Tensor3>
    where
        G: FnMut(&Monomial) -> Result<Tensor2>,
    {
        let mut out = Tensor3::zero(self.arity);
        for ([a, b], c) in &self.terms {
            for ([u, v], d) in g(a)?.terms() {
                out.add_term([u.clone(), v.clone(), b.clone()], c * d);
            }
        }
        Ok(out)
    }

    /// `(id (x) g)(u)`.
    pub fn embed_23<G>(&self, mut g: G) -> Result<Tensor3>
    where
        G: FnMut(&Monomial) -> Result<Tensor2>,
    {
        let mut out = Tensor3::zero(self.arity);
        for ([a, b], c) in &self.terms {
            for ([u, v], d) in g(b)?.terms() {
                out.add_term([a.clone(), u.clone(), v.clone()], c * d);
            }
        }
        Ok(out)
    }

    /// `u (x) 1`.
    pub fn append_unit(&self) -> Tensor3 {
        let mut out = Tensor3::zero(self.arity);
        for ([a, b], c) in &self.terms {
            out.add_term([a.clone(), b.clone(), Monomial::one(self.arity)], c.clone());
        }
        out
    }

    /// `1 (x) u`.
    pub fn prepend_unit(&self) -> Tensor3 {
        let mut out = Tensor3::zero(self.arity);
        for ([a, b], c) in &self.terms {
            out.add_term([Monomial::one(self.arity), a.clone(), b.clone()], c.clone());
        }
        out
    }

    /// `(phi (x) id)(u)` for a scalar-valued `phi`, landing in `T`.
    pub fn contract_left<F>(&self, mut phi: F) -> Result<NcPoly>
    where
        F: FnMut(&Monomial) -> Result<Scalar>,
    {
        let mut out = NcPoly::zero(self.arity);
        for ([a, b], c) in &self.terms {
            out.add_term(b.clone(), c * phi(a)?);
        }
        Ok(out)
    }

    /// `(id (x) phi)(u)`.
    pub fn contract_right<F>(&self, mut phi: F) -> Result<NcPoly>
    where
        F: FnMut(&Monomial) -> Result<Scalar>,
    {
        let mut out = NcPoly::zero(self.arity);
        for ([a, b], c) in &self.terms {
            out.add_term(a.clone(), c * phi(b)?);
        }
        Ok(out)
    }

    /// `(phi (x) psi)(u)`.
    pub fn contract_both<F, G>(&self, mut phi: F, mut psi: G) -> Result<Scalar>
    where
        F: FnMut(&Monomial) -> Result<Scalar>,
        G: FnMut(&Monomial) -> Result<Scalar>,
    {
        let mut total = Scalar::zero();
        for ([a, b], c) in &self.terms {
            total += c * phi(a)? * psi(b)?;
        }
        Ok(total)
    }
}

impl Tensor3 {
    /// `(phi (x) id (x) psi)(u)`.
    pub fn contract_outer<F, G>(&self, mut phi: F, mut psi: G) -> Result<NcPoly>
    where
        F: FnMut(&Monomial) -> Result<Scalar>,
        G: FnMut(&Monomial) -> Result<Scalar>,
    {
        let mut out = NcPoly::zero(self.arity);
        for ([a, b, c], k) in &self.terms {
            out.add_term(b.clone(), k * phi(a)? * psi(c)?);
        }
        Ok(out)
    }
}

/// Multiplication map `a (x) b -> ab`.
pub fn mu(u: &Tensor2, tower: &Tower) -> Result<NcPoly> {
    let mut out = tower.zero();
    for ([a, b], c) in u.terms() {
        out.add_assign_scaled(&tower.mul_monomials(a, b)?, c);
    }
    Ok(out)
}

/// Componentwise product in `T (x) T`.
pub fn t2_mul(u: &Tensor2, v: &Tensor2, tower: &Tower) -> Result<Tensor2> {
    u.mul(v, tower)
}

/// Componentwise product in `T (x) T (x) T`.
pub fn t3_mul(u: &Tensor3, v: &Tensor3, tower: &Tower) -> Result<Tensor3> {
    u.mul(v, tower)
}
