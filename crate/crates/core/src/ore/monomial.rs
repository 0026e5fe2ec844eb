use std::cmp::Ordering;
use std::fmt::Write;

/// Ordered PBW monomial `x_1^e_1 * x_2^e_2 * ... * x_n^e_n`.
///
/// Ordering is degree-lexicographic: total degree first, then the exponent
/// vectors compared left to right.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(arity: usize) -> Self {
        Monomial(vec![0; arity])
    }

    pub fn generator(arity: usize, index: usize) -> Self {
        let mut exps = vec![0; arity];
        exps[index] = 1;
        Monomial(exps)
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Index of the lowest generator with a nonzero exponent.
    pub fn min_index(&self) -> Option<usize> {
        self.0.iter().position(|&e| e > 0)
    }

    /// Index of the highest generator with a nonzero exponent.
    pub fn max_index(&self) -> Option<usize> {
        self.0.iter().rposition(|&e| e > 0)
    }

    /// Splits into the part on generators `< at` and the part on `>= at`.
    pub fn split_at(&self, at: usize) -> (Monomial, Monomial) {
        let mut low = self.0.clone();
        let mut high = self.0.clone();
        for (k, (l, h)) in low.iter_mut().zip(high.iter_mut()).enumerate() {
            if k < at {
                *h = 0;
            } else {
                *l = 0;
            }
        }
        (Monomial(low), Monomial(high))
    }

    /// Exponent-wise sum. Only a PBW product when every generator of `self`
    /// is at most every generator of `other`.
    pub fn concat(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn bump(&self, index: usize) -> Monomial {
        let mut exps = self.0.clone();
        exps[index] += 1;
        Monomial(exps)
    }

    pub fn lower(&self, index: usize) -> Monomial {
        let mut exps = self.0.clone();
        exps[index] -= 1;
        Monomial(exps)
    }

    /// Generator indices in PBW order, with repetition.
    pub fn letters(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &e)| std::iter::repeat_n(i, e as usize))
            .collect()
    }

    pub fn contains_any(&self, gens: &[usize]) -> bool {
        gens.iter().any(|&g| self.0[g] > 0)
    }

    /// Renders as `y^2*x`, or `1` for the empty monomial.
    pub fn render(&self, names: &[String]) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        let mut out = String::new();
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !out.is_empty() {
                out.push('*');
            }
            out.push_str(&names[i]);
            if e > 1 {
                write!(out, "^{e}").unwrap();
            }
        }
        out
    }

    /// All monomials of total degree at most `max_deg`, in increasing order.
    pub fn all_up_to(arity: usize, max_deg: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut current = vec![0u32; arity];
        fn rec(pos: usize, left: u32, current: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if pos == current.len() {
                out.push(Monomial(current.clone()));
                return;
            }
            for e in 0..=left {
                current[pos] = e;
                rec(pos + 1, left - e, current, out);
            }
            current[pos] = 0;
        }
        rec(0, max_deg, &mut current, &mut out);
        out.sort();
        out
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deglex_puts_degree_first() {
        let a = Monomial::from_exponents(vec![0, 0, 2]);
        let b = Monomial::from_exponents(vec![3, 0, 0]);
        let c = Monomial::from_exponents(vec![1, 0, 1]);
        assert!(a < b);
        assert!(a < c);
    }

    #[test]
    fn enumerates_monomials_by_degree() {
        // C(3 + 2, 2) monomials of degree <= 2 in 3 variables
        let all = Monomial::all_up_to(3, 2);
        assert_eq!(all.len(), 10);
        assert!(all[0].is_one());
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn renders_with_names() {
        let names: Vec<String> = ["y", "z", "x"].iter().map(|s| s.to_string()).collect();
        assert_eq!(Monomial::from_exponents(vec![2, 0, 1]).render(&names), "y^2*x");
        assert_eq!(Monomial::one(3).render(&names), "1");
        assert_eq!(Monomial::from_exponents(vec![1, 2, 0]).letters(), vec![0, 1, 1]);
    }
}
