//! Monomials and monomial orders.

use std::cmp::Ordering;

use smallvec::SmallVec;

use crate::error::{usage, Result};

/// Exponent vector of a monomial. The weight is never stored; it is
/// recomputed from the order's weight vector on demand.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub SmallVec<[u16; 4]>);

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn var(nvars: usize, i: usize) -> Monomial {
        let mut m = Monomial::one(nvars);
        m.0[i] = 1;
        m
    }

    pub fn from_exponents(e: &[u16]) -> Monomial {
        Monomial(SmallVec::from_slice(e))
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn weight(&self, weights: &[u32]) -> u32 {
        self.0.iter().zip(weights).map(|(&e, &w)| e as u32 * w).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// All monomials in `nvars` variables of weighted degree exactly `deg`.
    pub fn of_weighted_degree(nvars: usize, weights: &[u32], deg: u32) -> Vec<Monomial> {
        fn rec(i: usize, left: u32, weights: &[u32], cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
            if i + 1 == cur.len() {
                if left % weights[i] == 0 {
                    cur[i] = (left / weights[i]) as u16;
                    out.push(Monomial::from_exponents(cur));
                }
                return;
            }
            let mut e = 0;
            while e * weights[i] <= left {
                cur[i] = e as u16;
                rec(i + 1, left - e * weights[i], weights, cur, out);
                e += 1;
            }
            cur[i] = 0;
        }
        let mut out = Vec::new();
        if nvars == 0 {
            if deg == 0 {
                out.push(Monomial::one(0));
            }
            return out;
        }
        let mut cur = vec![0u16; nvars];
        rec(0, deg, weights, &mut cur, &mut out);
        out
    }

    /// All monomials of ordinary total degree below `bound`.
    pub fn below_degree(nvars: usize, bound: u32) -> Vec<Monomial> {
        let ones = vec![1u32; nvars];
        (0..bound).flat_map(|d| Monomial::of_weighted_degree(nvars, &ones, d)).collect()
    }
}

/// Which comparison rule a [`MonomialOrder`] applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrderScheme {
    /// Weighted degree first, reverse lexicographic tie-break. 1 is smallest.
    WeightedDegRevLexGlobal,
    /// Pure lexicographic with x1 > x2 > ... .
    Lex,
    /// Weighted degree ascending (low degree is larger), reverse lexicographic
    /// tie-break. 1 is the largest monomial.
    WeightedDegRevLexLocal,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    pub scheme: OrderScheme,
    pub weights: Vec<u32>,
}

impl MonomialOrder {
    pub fn new(scheme: OrderScheme, weights: Vec<u32>) -> Result<MonomialOrder> {
        if weights.iter().any(|&w| w == 0) {
            return usage("monomial order weights must be positive");
        }
        Ok(MonomialOrder { scheme, weights })
    }

    pub fn degrevlex(nvars: usize) -> MonomialOrder {
        MonomialOrder { scheme: OrderScheme::WeightedDegRevLexGlobal, weights: vec![1; nvars] }
    }

    pub fn weighted_global(weights: Vec<u32>) -> MonomialOrder {
        MonomialOrder { scheme: OrderScheme::WeightedDegRevLexGlobal, weights }
    }

    pub fn weighted_local(weights: Vec<u32>) -> MonomialOrder {
        MonomialOrder { scheme: OrderScheme::WeightedDegRevLexLocal, weights }
    }

    pub fn lex(nvars: usize) -> MonomialOrder {
        MonomialOrder { scheme: OrderScheme::Lex, weights: vec![1; nvars] }
    }

    pub fn nvars(&self) -> usize {
        self.weights.len()
    }

    pub fn is_global(&self) -> bool {
        self.scheme != OrderScheme::WeightedDegRevLexLocal
    }

    /// The same weights with the opposite global/local character.
    pub fn to_local(&self) -> MonomialOrder {
        MonomialOrder::weighted_local(self.weights.clone())
    }

    pub fn to_global(&self) -> MonomialOrder {
        MonomialOrder::weighted_global(self.weights.clone())
    }

    /// The global counterpart of a local order; global orders are returned as is.
    pub fn to_global_if_local(&self) -> MonomialOrder {
        if self.is_global() {
            self.clone()
        } else {
            self.to_global()
        }
    }

    pub fn weight(&self, m: &Monomial) -> u32 {
        m.weight(&self.weights)
    }

    /// Total order on monomials of matching length. `Greater` means `a > b`.
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self.scheme {
            OrderScheme::Lex => a.0.cmp(&b.0),
            OrderScheme::WeightedDegRevLexGlobal => {
                let (wa, wb) = (a.weight(&self.weights), b.weight(&self.weights));
                wa.cmp(&wb).then_with(|| revlex(a, b))
            }
            OrderScheme::WeightedDegRevLexLocal => {
                let (wa, wb) = (a.weight(&self.weights), b.weight(&self.weights));
                wb.cmp(&wa).then_with(|| revlex(a, b))
            }
        }
    }
}

/// Reverse lexicographic tie-break: `a > b` when the last nonzero entry of
/// `a - b` is negative.
#[inline]
fn revlex(a: &Monomial, b: &Monomial) -> Ordering {
    for (x, y) in a.0.iter().zip(&b.0).rev() {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

/// Checked comparison for the public surface.
pub fn compare_monomials(a: &Monomial, b: &Monomial, ord: &MonomialOrder) -> Result<Ordering> {
    if a.nvars() != b.nvars() || a.nvars() != ord.nvars() {
        return usage(format!(
            "variable count mismatch: {} vs {} under an order on {} variables",
            a.nvars(),
            b.nvars(),
            ord.nvars()
        ));
    }
    Ok(ord.cmp(a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(e: &[u16]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn spec_examples() {
        let dp = MonomialOrder::degrevlex(2);
        assert_eq!(compare_monomials(&m(&[2, 0]), &m(&[1, 1]), &dp).unwrap(), Ordering::Greater);
        let ds = MonomialOrder::weighted_local(vec![1, 1]);
        assert_eq!(compare_monomials(&m(&[0, 0]), &m(&[1, 0]), &ds).unwrap(), Ordering::Greater);
        let w = MonomialOrder::weighted_global(vec![3, 2]);
        assert_eq!(compare_monomials(&m(&[1, 0]), &m(&[0, 1]), &w).unwrap(), Ordering::Greater);
    }

    #[test]
    fn mismatched_lengths() {
        let dp = MonomialOrder::degrevlex(2);
        assert!(compare_monomials(&m(&[1, 0, 0]), &m(&[1, 0]), &dp).is_err());
    }

    #[test]
    fn weighted_degree_enumeration() {
        let ms = Monomial::of_weighted_degree(2, &[3, 2], 6);
        assert_eq!(ms.len(), 2); // x^2, y^3
        assert_eq!(Monomial::below_degree(2, 3).len(), 6);
    }

    fn order_strategy() -> impl Strategy<Value = MonomialOrder> {
        (0..3usize, 1u32..4, 1u32..4, 1u32..4).prop_map(|(s, a, b, c)| {
            let w = vec![a, b, c];
            match s {
                0 => MonomialOrder::weighted_global(w),
                1 => MonomialOrder::lex(3),
                _ => MonomialOrder::weighted_local(w),
            }
        })
    }

    fn mono() -> impl Strategy<Value = Monomial> {
        proptest::collection::vec(0u16..6, 3).prop_map(|v| m(&v))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]
        #[test]
        fn order_axioms(ord in order_strategy(), a in mono(), b in mono(), c in mono()) {
            // antisymmetry and totality
            prop_assert_eq!(ord.cmp(&a, &b), ord.cmp(&b, &a).reverse());
            prop_assert_eq!(ord.cmp(&a, &b) == Ordering::Equal, a == b);
            // transitivity
            if ord.cmp(&a, &b) == Ordering::Greater && ord.cmp(&b, &c) == Ordering::Greater {
                prop_assert_eq!(ord.cmp(&a, &c), Ordering::Greater);
            }
            // multiplicativity
            prop_assert_eq!(ord.cmp(&a, &b), ord.cmp(&a.mul(&c), &b.mul(&c)));
            // 1 is the minimum of a global order and the maximum of a local one
            let one = Monomial::one(3);
            if !a.is_one() {
                let expect = if ord.is_global() { Ordering::Less } else { Ordering::Greater };
                prop_assert_eq!(ord.cmp(&one, &a), expect);
            }
        }
    }
}
