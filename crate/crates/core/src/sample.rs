//! Seeded random elements for property checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ore::{Expr, Monomial, NcPoly, Scalar};

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.rng.random_range(0..n)
    }

    /// A small nonzero rational such as `-3`, `1/2` or `5/3`.
    pub fn scalar(&mut self) -> Scalar {
        let num: i64 = loop {
            let v = self.rng.random_range(-5..=5);
            if v != 0 {
                break v;
            }
        };
        let den: i64 = self.rng.random_range(1..=3);
        Scalar::new(num.into(), den.into())
    }

    pub fn monomial(&mut self, arity: usize, max_deg: u32) -> Monomial {
        let mut exps = vec![0u32; arity];
        if arity > 0 {
            let deg = self.rng.random_range(0..=max_deg);
            for _ in 0..deg {
                exps[self.below(arity)] += 1;
            }
        }
        Monomial::from_exponents(exps)
    }

    /// A sum of up to `max_terms` PBW terms of degree at most `max_deg`.
    pub fn poly(&mut self, arity: usize, max_deg: u32, max_terms: usize) -> NcPoly {
        let mut p = NcPoly::zero(arity);
        let terms = self.rng.random_range(1..=max_terms.max(1));
        for _ in 0..terms {
            let m = self.monomial(arity, max_deg);
            let c = self.scalar();
            p.add_term(m, c);
        }
        p
    }

    /// An unnormalized expression: a sum of scaled words whose letters come
    /// in random order, each of length at most `max_deg`.
    pub fn expr(&mut self, names: &[String], max_deg: u32, max_terms: usize) -> Expr {
        let terms = self.rng.random_range(1..=max_terms.max(1));
        let mut acc: Option<Expr> = None;
        for _ in 0..terms {
            let len = self.rng.random_range(0..=max_deg);
            let mut word = Expr::num(self.scalar());
            for _ in 0..len {
                let letter = Expr::var(&names[self.below(names.len())]);
                word = Expr::mul(word, letter);
            }
            acc = Some(match acc {
                None => word,
                Some(a) if self.rng.random_bool(0.5) => Expr::add(a, word),
                Some(a) => Expr::sub(a, word),
            });
        }
        acc.expect("at least one term")
    }
}
