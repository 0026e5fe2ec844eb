//! Shared test helpers: an independent word-rewriting oracle for normal
//! forms and a generator of random well-formed towers.
#![allow(dead_code)]

pub mod props;

use std::collections::BTreeMap;

use hopfore::hopf::HopfTower;
use hopfore::ore::{Monomial, NcPoly, Scalar, Step, Tower};
use hopfore::sample::Sampler;
use hopfore::{Expr, Tensor2};
use num_traits::{One, Zero};

/// Elements of the free algebra: words over generator indices.
pub type Words = BTreeMap<Vec<usize>, Scalar>;

fn add_word(acc: &mut Words, w: Vec<usize>, c: Scalar) {
    if c.is_zero() {
        return;
    }
    let e = acc.entry(w).or_insert_with(Scalar::zero);
    *e += c;
    if e.is_zero() {
        acc.retain(|_, v| !v.is_zero());
    }
}

fn words_mul(a: &Words, b: &Words) -> Words {
    let mut out = Words::new();
    for (u, c) in a {
        for (v, d) in b {
            let mut w = u.clone();
            w.extend_from_slice(v);
            add_word(&mut out, w, c * d);
        }
    }
    out
}

fn poly_words(p: &NcPoly) -> Words {
    let mut out = Words::new();
    for (m, c) in p.terms() {
        add_word(&mut out, m.letters(), c.clone());
    }
    out
}

/// Evaluates an expression in the free algebra, without any rewriting.
pub fn free_eval(expr: &Expr, tower: &Tower) -> Words {
    let mut one = Words::new();
    one.insert(Vec::new(), Scalar::one());
    match expr {
        Expr::Num(c) => {
            let mut w = Words::new();
            add_word(&mut w, Vec::new(), c.clone());
            w
        }
        Expr::Var(name) => {
            let mut w = Words::new();
            w.insert(vec![tower.index_of(name).unwrap()], Scalar::one());
            w
        }
        Expr::Neg(a) => free_eval(a, tower).into_iter().map(|(w, c)| (w, -c)).collect(),
        Expr::Add(a, b) | Expr::Sub(a, b) => {
            let mut out = free_eval(a, tower);
            let sign = if matches!(expr, Expr::Sub(..)) {
                -Scalar::one()
            } else {
                Scalar::one()
            };
            for (w, c) in free_eval(b, tower) {
                add_word(&mut out, w, c * &sign);
            }
            out
        }
        Expr::Mul(a, b) => words_mul(&free_eval(a, tower), &free_eval(b, tower)),
        Expr::Pow(a, e) => {
            let base = free_eval(a, tower);
            (0..*e).fold(one, |acc, _| words_mul(&acc, &base))
        }
    }
}

/// Repeatedly rewrites the leftmost out-of-order pair `x_j x_a` (`j > a`)
/// as `sigma_j(x_a) x_j + delta_j(x_a)` until every word is sorted.
pub fn rewrite(tower: &Tower, input: Words) -> NcPoly {
    let n = tower.arity();
    let mut pending: Vec<(Vec<usize>, Scalar)> = input.into_iter().collect();
    let mut done = Words::new();
    while let Some((w, c)) = pending.pop() {
        let Some(k) = (0..w.len().saturating_sub(1)).find(|&k| w[k] > w[k + 1]) else {
            add_word(&mut done, w, c);
            continue;
        };
        let (j, a) = (w[k], w[k + 1]);
        let prefix = &w[..k];
        let suffix = &w[k + 2..];
        for (m, d) in tower.sigma(j, a).terms() {
            let mut nw = prefix.to_vec();
            nw.extend(m.letters());
            nw.push(j);
            nw.extend_from_slice(suffix);
            pending.push((nw, &c * d));
        }
        for (m, d) in tower.delta(j, a).terms() {
            let mut nw = prefix.to_vec();
            nw.extend(m.letters());
            nw.extend_from_slice(suffix);
            pending.push((nw, &c * d));
        }
    }
    let mut out = NcPoly::zero(n);
    for (w, c) in done {
        let mut exps = vec![0u32; n];
        for g in w {
            exps[g] += 1;
        }
        out.add_term(Monomial::from_exponents(exps), c);
    }
    out
}

pub fn oracle_normal_form(expr: &Expr, tower: &Tower) -> NcPoly {
    rewrite(tower, free_eval(expr, tower))
}

pub fn oracle_mul(tower: &Tower, p: &NcPoly, q: &NcPoly) -> NcPoly {
    rewrite(tower, words_mul(&poly_words(p), &poly_words(q)))
}

fn affine(s: &mut Sampler, arity: usize, index: usize) -> (NcPoly, NcPoly) {
    // x -> a x + b and its inverse x -> (x - b) / a
    let a = s.scalar();
    let b = if s.below(2) == 0 { Scalar::zero() } else { s.scalar() };
    let x = NcPoly::generator(arity, index);
    let mut fwd = x.scale(&a);
    fwd.add_term(Monomial::one(arity), b.clone());
    let mut inv = x.scale(&a.recip());
    inv.add_term(Monomial::one(arity), -(b / a));
    (fwd, inv)
}

fn poly_in(s: &mut Sampler, arity: usize, below: usize, max_deg: u32) -> NcPoly {
    let p = s.poly(below, max_deg, 3);
    p.with_arity(arity)
}

/// A random valid tower of arity 1..=3 with images of degree at most 2.
///
/// Step 1 is `k[x][y; sigma, delta]` with affine `sigma` and arbitrary
/// `delta(x)`. Step 2, when present, is either a scaling of `y` fixing `x`
/// over a derivation-free step 1, or an inner derivation `ad u` for `u` of
/// degree at most 1.
pub fn random_tower(s: &mut Sampler) -> Tower {
    let arity = 1 + s.below(3);
    let names: Vec<String> = ["a", "b", "c"][..arity].iter().map(|x| x.to_string()).collect();
    let mut steps = vec![Step::trivial(0, arity)];
    let mut scaled_second = false;
    if arity >= 2 {
        let mut step = Step::trivial(1, arity);
        let (f, i) = affine(s, arity, 0);
        step.sigma[0] = f;
        step.sigma_inv[0] = i;
        scaled_second = arity == 3 && s.below(2) == 0;
        if !scaled_second {
            step.delta[0] = poly_in(s, arity, 1, 2);
        }
        steps.push(step);
    }
    if arity == 3 {
        let base = Tower::new(
            names.clone(),
            steps.iter().cloned().chain([Step::trivial(2, arity)]).collect(),
        )
        .unwrap();
        let mut step = Step::trivial(2, arity);
        if scaled_second {
            let c = s.scalar();
            step.sigma[1] = NcPoly::generator(arity, 1).scale(&c);
            step.sigma_inv[1] = NcPoly::generator(arity, 1).scale(&c.recip());
        } else {
            let u = poly_in(s, arity, 2, 1);
            for a in 0..2 {
                let g = NcPoly::generator(arity, a);
                step.delta[a] = base.commutator(&u, &g).unwrap();
            }
        }
        steps.push(step);
    }
    Tower::new(names, steps).unwrap()
}

/// A random tower together with random tails and counit values. Only the
/// tower itself is guaranteed valid.
pub fn random_hopf_data(s: &mut Sampler) -> HopfTower {
    let tower = random_tower(s);
    let n = tower.arity();
    let mut tails = Vec::new();
    let mut counits = Vec::new();
    for i in 0..n {
        let mut w = Tensor2::zero(n);
        if i > 0 && s.below(2) == 0 {
            let l = poly_in(s, n, i, 2);
            let r = poly_in(s, n, i, 2);
            w.add_assign_scaled(&Tensor2::pure([&l, &r]), &Scalar::one());
        }
        tails.push(w);
        counits.push(if s.below(3) == 0 { s.scalar() } else { Scalar::zero() });
    }
    HopfTower::new("random", tower, tails, counits).unwrap()
}
