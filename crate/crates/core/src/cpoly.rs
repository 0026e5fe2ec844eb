//! Commutative polynomials in a fixed set of unknowns, and the triangular
//! substitution solver used for character equations.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::ore::{NcPoly, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Scalar>,
}

impl CPoly {
    pub fn zero(nvars: usize) -> Self {
        CPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        let mut p = CPoly::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        CPoly::constant(nvars, Scalar::one())
    }

    pub fn var(nvars: usize, v: usize) -> Self {
        let mut e = vec![0; nvars];
        e[v] = 1;
        let mut p = CPoly::zero(nvars);
        p.add_term(e, Scalar::one());
        p
    }

    /// The image of a noncommutative polynomial under `x_i -> u_i`: what a
    /// character with unknown values makes of it.
    pub fn commutative_image(p: &NcPoly) -> CPoly {
        let mut out = CPoly::zero(p.arity());
        for (m, c) in p.terms() {
            out.add_term(m.exponents().to_vec(), c.clone());
        }
        out
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Scalar)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exps).or_insert_with(Scalar::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add_scaled(&mut self, other: &CPoly, c: &Scalar) {
        for (e, v) in &other.terms {
            self.add_term(e.clone(), v * c);
        }
    }

    pub fn add(&self, other: &CPoly) -> CPoly {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::one());
        out
    }

    pub fn sub(&self, other: &CPoly) -> CPoly {
        let mut out = self.clone();
        out.add_scaled(other, &-Scalar::one());
        out
    }

    pub fn scale(&self, c: &Scalar) -> CPoly {
        let mut out = CPoly::zero(self.nvars);
        out.add_scaled(self, c);
        out
    }

    pub fn mul(&self, other: &CPoly) -> CPoly {
        let mut out = CPoly::zero(self.nvars);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let e = a.iter().zip(b).map(|(i, j)| i + j).collect();
                out.add_term(e, x * y);
            }
        }
        out
    }

    /// The constant value, if the polynomial has no unknowns left.
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().expect("one term");
                e.iter().all(|&k| k == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn vars(&self) -> Vec<usize> {
        (0..self.nvars)
            .filter(|&v| self.terms.keys().any(|e| e[v] > 0))
            .collect()
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|e| e[v]).max().unwrap_or(0)
    }

    /// Replaces every unknown with a known value.
    pub fn substitute(&self, known: &[Option<Scalar>]) -> CPoly {
        let mut out = CPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut coeff = c.clone();
            let mut rest = e.clone();
            for (v, k) in e.iter().enumerate() {
                if let (Some(value), true) = (&known[v], *k > 0) {
                    for _ in 0..*k {
                        coeff *= value;
                    }
                    rest[v] = 0;
                }
            }
            out.add_term(rest, coeff);
        }
        out
    }

    pub fn eval(&self, values: &[Scalar]) -> Scalar {
        let known: Vec<Option<Scalar>> = values.iter().cloned().map(Some).collect();
        self.substitute(&known).as_constant().expect("all unknowns substituted")
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c < &Scalar::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let factors: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(v, &k)| match k {
                    1 => names[v].clone(),
                    _ => format!("{}^{}", names[v], k),
                })
                .collect();
            match (factors.is_empty(), abs.is_one()) {
                (true, _) => out.push_str(&abs.to_string()),
                (false, true) => out.push_str(&factors.join("*")),
                (false, false) => out.push_str(&format!("{}*{}", abs, factors.join("*"))),
            }
        }
        out
    }
}

impl fmt::Display for CPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|v| format!("u{v}")).collect();
        f.write_str(&self.render(&names))
    }
}

/// What the solver learned about one unknown.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase", tag = "kind", content = "value")]
pub enum Unknown {
    Free,
    Fixed(#[serde(serialize_with = "crate::serde_scalar")] Scalar),
    Unresolved,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub unknowns: Vec<Unknown>,
    /// Equations that could not be reduced, after substitution.
    pub residue: Vec<CPoly>,
    /// Set when some equation reduced to a nonzero constant.
    pub inconsistent: bool,
}

impl Solution {
    pub fn fully_resolved(&self) -> bool {
        !self.inconsistent && self.residue.is_empty()
    }

    /// Fixed values, with every free unknown set to `free_value`.
    pub fn point(&self, free_value: &Scalar) -> Option<Vec<Scalar>> {
        self.unknowns
            .iter()
            .map(|u| match u {
                Unknown::Free => Some(free_value.clone()),
                Unknown::Fixed(v) => Some(v.clone()),
                Unknown::Unresolved => None,
            })
            .collect()
    }
}

/// Repeatedly substitutes known values and solves any equation that has
/// become affine in a single unknown, or is a monomial in a single unknown
/// (forcing it to zero). Anything else is left as residue.
pub fn solve_triangular(nvars: usize, equations: &[CPoly]) -> Solution {
    let mut known: Vec<Option<Scalar>> = vec![None; nvars];
    let mut pending: Vec<CPoly> = equations.to_vec();
    let mut inconsistent = false;
    loop {
        let mut progress = false;
        let mut next = Vec::new();
        for eq in pending {
            let eq = eq.substitute(&known);
            if eq.is_zero() {
                continue;
            }
            if eq.as_constant().is_some() {
                inconsistent = true;
                continue;
            }
            let vars = eq.vars();
            if let [v] = vars[..] {
                if eq.degree_in(v) == 1 {
                    // a*v + b = 0
                    let mut unit = vec![0; nvars];
                    unit[v] = 1;
                    let a = eq.terms.get(&unit).cloned().unwrap_or_else(Scalar::zero);
                    let b = eq.terms.get(&vec![0; nvars]).cloned().unwrap_or_else(Scalar::zero);
                    known[v] = Some(-b / a);
                    progress = true;
                    continue;
                }
                if eq.terms.len() == 1 {
                    known[v] = Some(Scalar::zero());
                    progress = true;
                    continue;
                }
            }
            next.push(eq);
        }
        pending = next;
        if !progress {
            break;
        }
    }
    let stuck: Vec<usize> = pending.iter().flat_map(CPoly::vars).collect();
    let unknowns = (0..nvars)
        .map(|v| match &known[v] {
            Some(value) => Unknown::Fixed(value.clone()),
            None if stuck.contains(&v) => Unknown::Unresolved,
            None => Unknown::Free,
        })
        .collect();
    Solution {
        unknowns,
        residue: pending,
        inconsistent,
    }
}
