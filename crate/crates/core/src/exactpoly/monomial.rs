use std::cmp::Ordering;

/// Exponent vector of a monomial in the ambient variables.
///
/// Ordered graded-lexicographically: total degree first, then the exponent
/// vectors compared lexicographically (so `u1 > u2 > ... > uN`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.0.len(), other.0.len());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials of degree `d` in `nvars` variables, in descending graded-lex
/// order (`u1^d` first). This order coordinatizes every degreewise system.
pub fn monomial_basis(nvars: usize, d: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut current = vec![0u32; nvars];
    fill(&mut out, &mut current, 0, d as u32);
    out
}

fn fill(out: &mut Vec<Monomial>, current: &mut Vec<u32>, pos: usize, remaining: u32) {
    let n = current.len();
    if n == 0 {
        if remaining == 0 {
            out.push(Monomial(Vec::new()));
        }
        return;
    }
    if pos == n - 1 {
        current[pos] = remaining;
        out.push(Monomial(current.clone()));
        current[pos] = 0;
        return;
    }
    for e in (0..=remaining).rev() {
        current[pos] = e;
        fill(out, current, pos + 1, remaining - e);
    }
    current[pos] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::monomial_count;

    fn brute_force_count(nvars: usize, d: u32) -> usize {
        // enumerate every exponent vector with entries <= d
        let mut count = 0;
        let total = (d as usize + 1).pow(nvars as u32);
        for code in 0..total {
            let mut c = code;
            let mut sum = 0;
            for _ in 0..nvars {
                sum += (c % (d as usize + 1)) as u32;
                c /= d as usize + 1;
            }
            if sum == d {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn basis_small_cases() {
        assert_eq!(monomial_basis(2, 0), vec![Monomial::one(2)]);
        let b = monomial_basis(2, 2);
        assert_eq!(
            b,
            vec![
                Monomial::new(vec![2, 0]),
                Monomial::new(vec![1, 1]),
                Monomial::new(vec![0, 2])
            ]
        );
        assert_eq!(monomial_basis(3, 2).len(), 6);
        assert_eq!(brute_force_count(3, 2), 6);
    }

    #[test]
    fn basis_is_descending_and_counted() {
        for n in 1..5 {
            for d in 0..6u32 {
                let b = monomial_basis(n, d as usize);
                assert_eq!(b.len(), brute_force_count(n, d));
                assert_eq!(b.len(), monomial_count(n, d as usize));
                assert!(b.windows(2).all(|w| w[0] > w[1]));
                assert!(b.iter().all(|m| m.degree() == d));
            }
        }
    }

    #[test]
    fn grlex_compares_degree_first() {
        let a = Monomial::new(vec![0, 3]);
        let b = Monomial::new(vec![2, 0]);
        assert!(a > b);
        assert!(Monomial::new(vec![1, 1]) > Monomial::new(vec![0, 2]));
    }
}
