use std::collections::BTreeMap;

use num_traits::Zero;

use super::HopfTower;
use crate::error::{Error, Result};
use crate::linalg::nullspace;
use crate::ore::{Monomial, NcPoly, Scalar};
use crate::tensor::Tensor2;

/// Primitive elements found inside the span of PBW monomials of degree at
/// most `max_deg`. Nothing is claimed beyond that bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimitiveBasis {
    pub basis: Vec<NcPoly>,
    pub max_deg: u32,
}

impl PrimitiveBasis {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn note(&self) -> String {
        format!("complete up to degree {}", self.max_deg)
    }
}

/// `Delta(p) - p (x) 1 - 1 (x) p`.
pub fn primitivity_defect(ht: &HopfTower, p: &NcPoly) -> Result<Tensor2> {
    let one = ht.tower().one();
    ht.coproduct(p)?
        .sub(&Tensor2::pure([p, &one]))?
        .sub(&Tensor2::pure([&one, p]))
}

/// Solves `Delta(p) = p (x) 1 + 1 (x) p`, `eps(p) = 0` exactly over the
/// monomials of degree at most `max_deg`.
pub fn primitives(ht: &HopfTower, max_deg: u32) -> Result<PrimitiveBasis> {
    if max_deg < 1 {
        return Err(Error::DegreeBound);
    }
    let columns = Monomial::all_up_to(ht.arity(), max_deg);
    let mut row_of: BTreeMap<[Monomial; 2], usize> = BTreeMap::new();
    let mut entries: Vec<Vec<(usize, Scalar)>> = Vec::with_capacity(columns.len());
    for m in &columns {
        let defect = primitivity_defect(ht, &NcPoly::monomial(m.clone()))?;
        let mut col = Vec::new();
        for (key, c) in defect.terms() {
            let next = row_of.len() + 1;
            let r = *row_of.entry(key.clone()).or_insert(next);
            col.push((r, c.clone()));
        }
        // Row 0 carries the counit condition.
        let e = ht.counit_monomial(m);
        if !e.is_zero() {
            col.push((0, e));
        }
        entries.push(col);
    }
    let mut rows = vec![vec![Scalar::zero(); columns.len()]; row_of.len() + 1];
    for (c, col) in entries.into_iter().enumerate() {
        for (r, v) in col {
            rows[r][c] = v;
        }
    }
    let basis = nullspace(&rows, columns.len())
        .into_iter()
        .map(|v| NcPoly::from_terms(ht.arity(), columns.iter().cloned().zip(v)))
        .collect();
    Ok(PrimitiveBasis { basis, max_deg })
}
