use super::poly::NcPoly;
use super::scalar::Scalar;
use super::tower::{Meter, Tower};
use crate::error::Result;

/// Unnormalized product/sum tree over named generators and rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Num(Scalar),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[allow(clippy::should_implement_trait)]
impl Expr {
    pub fn var(name: &str) -> Expr {
        Expr::Var(name.to_string())
    }

    pub fn num(c: Scalar) -> Expr {
        Expr::Num(c)
    }

    pub fn add(a: Expr, b: Expr) -> Expr {
        Expr::Add(Box::new(a), Box::new(b))
    }

    pub fn sub(a: Expr, b: Expr) -> Expr {
        Expr::Sub(Box::new(a), Box::new(b))
    }

    pub fn mul(a: Expr, b: Expr) -> Expr {
        Expr::Mul(Box::new(a), Box::new(b))
    }

    pub fn pow(a: Expr, e: u32) -> Expr {
        Expr::Pow(Box::new(a), e)
    }

    pub fn neg(a: Expr) -> Expr {
        Expr::Neg(Box::new(a))
    }
}

/// Canonical PBW form of an expression. Each call gets its own rewrite
/// budget.
pub fn normal_form(expr: &Expr, tower: &Tower) -> Result<NcPoly> {
    let mut meter = Meter::new(tower.budget());
    eval(expr, tower, &mut meter)
}

fn eval(expr: &Expr, tower: &Tower, meter: &mut Meter) -> Result<NcPoly> {
    Ok(match expr {
        Expr::Num(c) => tower.constant(c.clone()),
        Expr::Var(name) => tower.generator(tower.index_of(name)?),
        Expr::Neg(a) => eval(a, tower, meter)?.neg(),
        Expr::Add(a, b) => eval(a, tower, meter)?.add(&eval(b, tower, meter)?)?,
        Expr::Sub(a, b) => eval(a, tower, meter)?.sub(&eval(b, tower, meter)?)?,
        Expr::Mul(a, b) => {
            let a = eval(a, tower, meter)?;
            let b = eval(b, tower, meter)?;
            tower.mul_metered(&a, &b, meter)?
        }
        Expr::Pow(a, e) => {
            let base = eval(a, tower, meter)?;
            let mut acc = tower.one();
            for _ in 0..*e {
                acc = tower.mul_metered(&acc, &base, meter)?;
            }
            acc
        }
    })
}
