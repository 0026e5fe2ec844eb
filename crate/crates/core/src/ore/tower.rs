use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use num_traits::One;

use super::monomial::Monomial;
use super::poly::NcPoly;
use super::scalar::Scalar;
use crate::error::{Error, Result};

pub const DEFAULT_REWRITE_BUDGET: u64 = 1_000_000;

/// Data of one Ore step `R[x_i; sigma_i, delta_i]`: images of the earlier
/// generators `x_0 .. x_{i-1}` under the automorphism, its inverse and the
/// skew derivation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub sigma: Vec<NcPoly>,
    pub sigma_inv: Vec<NcPoly>,
    pub delta: Vec<NcPoly>,
}

impl Step {
    /// `sigma = id`, `delta = 0` over the first `index` generators.
    pub fn trivial(index: usize, arity: usize) -> Self {
        let gens: Vec<NcPoly> = (0..index).map(|a| NcPoly::generator(arity, a)).collect();
        Step {
            sigma: gens.clone(),
            sigma_inv: gens,
            delta: vec![NcPoly::zero(arity); index],
        }
    }

    pub fn sigma_is_identity(&self) -> bool {
        self.sigma
            .iter()
            .enumerate()
            .all(|(a, p)| *p == NcPoly::generator(p.arity(), a))
    }

    pub fn delta_is_zero(&self) -> bool {
        self.delta.iter().all(NcPoly::is_zero)
    }
}

/// `sigma_i` and `delta_i` of one PBW monomial, plus the number of rewrite
/// steps it took to compute them.
#[derive(Debug)]
struct Twist {
    sigma: NcPoly,
    delta: NcPoly,
    cost: u64,
}

type TwistCache = Arc<RwLock<HashMap<(usize, Monomial), Arc<Twist>>>>;

/// Counts elementary rewrites `x_j x_a -> sigma_j(x_a) x_j + delta_j(x_a)`.
///
/// Cached twists are charged their recorded cost, so the count does not
/// depend on what happens to be memoized.
pub(crate) struct Meter {
    used: u64,
    limit: u64,
}

impl Meter {
    pub(crate) fn new(limit: u64) -> Self {
        Meter { used: 0, limit }
    }

    fn charge(&mut self, n: u64) -> Result<()> {
        self.used = self.used.saturating_add(n);
        if self.used > self.limit {
            return Err(Error::BudgetExhausted(self.limit));
        }
        Ok(())
    }
}

/// An iterated Ore extension `k[x_0][x_1; s_1, d_1] ... [x_{n-1}; ...]` over
/// the rationals.
///
/// Generator indices are 0-based. Step `i` may only mention generators with
/// index below `i`.
#[derive(Clone)]
pub struct Tower {
    names: Vec<String>,
    steps: Vec<Step>,
    budget: u64,
    cache: TwistCache,
}

impl PartialEq for Tower {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.steps == other.steps
    }
}

impl Eq for Tower {}

impl fmt::Debug for Tower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Tower")
            .field("names", &self.names)
            .field("steps", &self.steps)
            .field("budget", &self.budget)
            .finish()
    }
}

impl Tower {
    pub fn new(names: Vec<String>, steps: Vec<Step>) -> Result<Self> {
        let n = names.len();
        if steps.len() != n {
            return Err(Error::MalformedTower(format!(
                "{} generators but {} steps",
                n,
                steps.len()
            )));
        }
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() {
                return Err(Error::MalformedTower("empty generator name".into()));
            }
            if names[..i].contains(name) {
                return Err(Error::MalformedTower(format!("duplicate generator `{name}`")));
            }
        }
        for (i, step) in steps.iter().enumerate() {
            for (label, images) in [
                ("sigma", &step.sigma),
                ("sigma_inv", &step.sigma_inv),
                ("delta", &step.delta),
            ] {
                if images.len() != i {
                    return Err(Error::MalformedTower(format!(
                        "step `{}` has {} {label} images, expected {i}",
                        names[i],
                        images.len()
                    )));
                }
                for p in images {
                    if p.arity() != n {
                        return Err(Error::ArityMismatch {
                            expected: n,
                            found: p.arity(),
                        });
                    }
                    if let Some(k) = p.max_index().filter(|&k| k >= i) {
                        return Err(Error::SupportViolation {
                            step: i + 1,
                            generator: names[k].clone(),
                        });
                    }
                }
            }
        }
        Ok(Tower {
            names,
            steps,
            budget: DEFAULT_REWRITE_BUDGET,
            cache: Arc::default(),
        })
    }

    /// Polynomial ring on `names` (every sigma the identity, every delta zero).
    pub fn commutative(names: &[&str]) -> Self {
        let n = names.len();
        let steps = (0..n).map(|i| Step::trivial(i, n)).collect();
        Tower::new(names.iter().map(|s| s.to_string()).collect(), steps).expect("trivial tower is well formed")
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    /// Replaces the data of one step; the engine cache starts afresh.
    pub fn with_step(&self, index: usize, step: Step) -> Result<Tower> {
        let mut steps = self.steps.clone();
        steps[index] = step;
        Ok(Tower::new(self.names.clone(), steps)?.with_budget(self.budget))
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    pub fn arity(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn step(&self, index: usize) -> &Step {
        &self.steps[index]
    }

    pub fn sigma(&self, index: usize, of: usize) -> &NcPoly {
        &self.steps[index].sigma[of]
    }

    pub fn sigma_inv(&self, index: usize, of: usize) -> &NcPoly {
        &self.steps[index].sigma_inv[of]
    }

    pub fn delta(&self, index: usize, of: usize) -> &NcPoly {
        &self.steps[index].delta[of]
    }

    pub fn generator(&self, index: usize) -> NcPoly {
        NcPoly::generator(self.arity(), index)
    }

    pub fn one(&self) -> NcPoly {
        NcPoly::one(self.arity())
    }

    pub fn zero(&self) -> NcPoly {
        NcPoly::zero(self.arity())
    }

    pub fn constant(&self, c: Scalar) -> NcPoly {
        NcPoly::constant(self.arity(), c)
    }

    /// The subalgebra generated by the first `len` generators, as a tower of
    /// its own.
    pub fn truncate(&self, len: usize) -> Tower {
        let steps = self.steps[..len]
            .iter()
            .map(|s| Step {
                sigma: s.sigma.iter().map(|p| p.with_arity(len)).collect(),
                sigma_inv: s.sigma_inv.iter().map(|p| p.with_arity(len)).collect(),
                delta: s.delta.iter().map(|p| p.with_arity(len)).collect(),
            })
            .collect();
        Tower::new(self.names[..len].to_vec(), steps)
            .expect("truncation of a well-formed tower")
            .with_budget(self.budget)
    }

    pub fn render(&self, p: &NcPoly) -> String {
        p.render(&self.names)
    }

    fn check_arity(&self, p: &NcPoly) -> Result<()> {
        if p.arity() != self.arity() {
            return Err(Error::ArityMismatch {
                expected: self.arity(),
                found: p.arity(),
            });
        }
        Ok(())
    }

    fn check_support(&self, index: usize, p: &NcPoly) -> Result<()> {
        self.check_arity(p)?;
        match p.max_index().filter(|&k| k >= index) {
            Some(k) => Err(Error::SupportViolation {
                step: index + 1,
                generator: self.names[k].clone(),
            }),
            None => Ok(()),
        }
    }

    /// Product in PBW normal form.
    pub fn mul(&self, p: &NcPoly, q: &NcPoly) -> Result<NcPoly> {
        self.check_arity(p)?;
        self.check_arity(q)?;
        self.mul_metered(p, q, &mut Meter::new(self.budget))
    }

    pub fn mul_all<'a>(&self, factors: impl IntoIterator<Item = &'a NcPoly>) -> Result<NcPoly> {
        let mut acc = self.one();
        for f in factors {
            acc = self.mul(&acc, f)?;
        }
        Ok(acc)
    }

    pub fn pow(&self, p: &NcPoly, e: u32) -> Result<NcPoly> {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, p)?;
        }
        Ok(acc)
    }

    /// Product of two PBW monomials.
    pub fn mul_monomials(&self, a: &Monomial, b: &Monomial) -> Result<NcPoly> {
        self.mul_mono(a, b, &mut Meter::new(self.budget))
    }

    /// Commutator `pq - qp`.
    pub fn commutator(&self, p: &NcPoly, q: &NcPoly) -> Result<NcPoly> {
        self.mul(p, q)?.sub(&self.mul(q, p)?)
    }

    pub(crate) fn mul_metered(&self, p: &NcPoly, q: &NcPoly, meter: &mut Meter) -> Result<NcPoly> {
        let mut out = NcPoly::zero(self.arity());
        for (a, c) in p.terms() {
            for (b, d) in q.terms() {
                let prod = self.mul_mono(a, b, meter)?;
                out.add_assign_scaled(&prod, &(c * d));
            }
        }
        Ok(out)
    }

    fn mul_mono(&self, a: &Monomial, b: &Monomial, meter: &mut Meter) -> Result<NcPoly> {
        match (a.max_index(), b.min_index()) {
            (None, _) => return Ok(NcPoly::monomial(b.clone())),
            (_, None) => return Ok(NcPoly::monomial(a.clone())),
            (Some(i), Some(j)) if i <= j => return Ok(NcPoly::monomial(a.concat(b))),
            _ => {}
        }
        let mut acc = NcPoly::monomial(b.clone());
        for j in a.letters().into_iter().rev() {
            acc = self.left_mul_generator(j, &acc, meter)?;
        }
        Ok(acc)
    }

    /// `x_j * p`, using `x_j r = sigma_j(r) x_j + delta_j(r)` for the part of
    /// each monomial that lies below `j`.
    fn left_mul_generator(&self, j: usize, p: &NcPoly, meter: &mut Meter) -> Result<NcPoly> {
        let mut out = NcPoly::zero(self.arity());
        for (m, c) in p.terms() {
            let (low, high) = m.split_at(j);
            if low.is_one() {
                out.add_term(m.bump(j), c.clone());
                continue;
            }
            meter.charge(u64::from(low.degree()))?;
            let twist = self.twist(j, &low, meter)?;
            let shifted = high.bump(j);
            for (u, d) in twist.sigma.terms() {
                out.add_term(u.concat(&shifted), c * d);
            }
            for (u, d) in twist.delta.terms() {
                out.add_term(u.concat(&high), c * d);
            }
        }
        Ok(out)
    }

    /// `sigma_j` and `delta_j` of a monomial on generators below `j`, by
    /// peeling off the lowest letter: `s(x_a r) = s(x_a) s(r)` and
    /// `d(x_a r) = d(x_a) r + s(x_a) d(r)`.
    fn twist(&self, j: usize, low: &Monomial, meter: &mut Meter) -> Result<Arc<Twist>> {
        let key = (j, low.clone());
        if let Some(hit) = self.cache.read().expect("cache lock").get(&key) {
            meter.charge(hit.cost)?;
            return Ok(hit.clone());
        }
        let start = meter.used;
        let a = low.min_index().expect("twist of a nonempty monomial");
        let rest = low.lower(a);
        let step = &self.steps[j];
        let (sigma, delta) = if rest.is_one() {
            (step.sigma[a].clone(), step.delta[a].clone())
        } else {
            let inner = self.twist(j, &rest, meter)?;
            let sigma = self.mul_metered(&step.sigma[a], &inner.sigma, meter)?;
            let mut delta = self.mul_metered(&step.delta[a], &NcPoly::monomial(rest.clone()), meter)?;
            let tail = self.mul_metered(&step.sigma[a], &inner.delta, meter)?;
            delta.add_assign_scaled(&tail, &Scalar::one());
            (sigma, delta)
        };
        let twist = Arc::new(Twist {
            sigma,
            delta,
            cost: meter.used - start,
        });
        self.cache.write().expect("cache lock").insert(key, twist.clone());
        Ok(twist)
    }

    /// `sigma_index` applied to an element of the subalgebra below `index`.
    pub fn apply_endo(&self, index: usize, p: &NcPoly) -> Result<NcPoly> {
        self.check_support(index, p)?;
        let mut meter = Meter::new(self.budget);
        let mut out = NcPoly::zero(self.arity());
        for (m, c) in p.terms() {
            if m.is_one() {
                out.add_term(m.clone(), c.clone());
            } else {
                out.add_assign_scaled(&self.twist(index, m, &mut meter)?.sigma, c);
            }
        }
        Ok(out)
    }

    /// `delta_index` applied to an element of the subalgebra below `index`,
    /// extended by `d(ab) = d(a) b + sigma(a) d(b)`.
    pub fn apply_skew_derivation(&self, index: usize, p: &NcPoly) -> Result<NcPoly> {
        self.check_support(index, p)?;
        let mut meter = Meter::new(self.budget);
        let mut out = NcPoly::zero(self.arity());
        for (m, c) in p.terms() {
            if !m.is_one() {
                out.add_assign_scaled(&self.twist(index, m, &mut meter)?.delta, c);
            }
        }
        Ok(out)
    }

    /// `sigma_index^{-1}` from the supplied inverse images.
    pub fn apply_endo_inverse(&self, index: usize, p: &NcPoly) -> Result<NcPoly> {
        self.check_support(index, p)?;
        self.apply_hom(&self.steps[index].sigma_inv, p)
    }

    /// Multiplicative extension of generator images: each PBW monomial
    /// `x_a1 x_a2 ...` goes to `images[a1] * images[a2] * ...`, computed here.
    pub fn apply_hom(&self, images: &[NcPoly], p: &NcPoly) -> Result<NcPoly> {
        let mut out = NcPoly::zero(self.arity());
        let mut meter = Meter::new(self.budget);
        for (m, c) in p.terms() {
            let mut acc = self.one();
            for a in m.letters() {
                let image = images
                    .get(a)
                    .ok_or_else(|| Error::UnknownGenerator(format!("x{}", a + 1)))?;
                self.check_arity(image)?;
                acc = self.mul_metered(&acc, image, &mut meter)?;
            }
            out.add_assign_scaled(&acc, c);
        }
        Ok(out)
    }
}
