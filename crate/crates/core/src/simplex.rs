//! The simplex constant `C_k = (k-1)^k * C(K_{k+1}^{(k)})`.
//!
//! Euler rootings of the k-uniform simplex correspond to derangements
//! `sigma` of `[k+1]` (vertex `i` roots the edge missing `sigma(i)`). The
//! rooted digraph has Laplacian `kI + M_sigma - J`, so its arborescence
//! count is `prod_i (k^{l_i} + (-1)^{l_i + 1}) / (k+1)^2` over the cycle
//! lengths `l_i` of `sigma`. Grouping derangements by cycle type gives
//!
//! `C_k = 1 / ((k-1)(k+1)^2) * sum_p |D_{k+1}(p)| prod_i (k^{p_i} + (-1)^{p_i+1})`
//!
//! over partitions `p` of `k+1` into parts `>= 2`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{binomial, factorial, pow_int, Rational};
use crate::{par, Error, Result};

/// A partition into parts `>= 2`, parts non-increasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntegerPartition {
    parts: Vec<u32>,
}

impl IntegerPartition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.iter().any(|&p| p < 2) {
            return Err(Error::InvalidHypergraph(
                "partition parts must be at least 2".into(),
            ));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn total(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Number of parts equal to `i`.
    pub fn multiplicity_of(&self, i: u32) -> usize {
        self.parts.iter().filter(|&&p| p == i).count()
    }
}

/// Partitions of `n` into parts `>= 2` in reverse-lexicographic order.
pub fn partitions_min2(n: u32) -> Vec<IntegerPartition> {
    fn go(left: u32, max: u32, current: &mut Vec<u32>, out: &mut Vec<IntegerPartition>) {
        if left == 0 {
            out.push(IntegerPartition {
                parts: current.clone(),
            });
            return;
        }
        for p in (2..=max.min(left)).rev() {
            current.push(p);
            go(left - p, p, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Derangements of `[n]` with cycle type `p` (`n = p.total()`):
/// `n! / (prod p_i * prod_i V_p(i)!)`.
pub fn derangement_class_size(p: &IntegerPartition) -> BigInt {
    let n = p.total();
    let mut denom: BigInt = p.parts.iter().map(|&x| BigInt::from(x)).product();
    let mut distinct = p.parts.clone();
    distinct.dedup();
    for i in distinct {
        denom *= factorial(p.multiplicity_of(i) as u64);
    }
    factorial(u64::from(n)) / denom
}

/// `k^l + (-1)^{l+1}`.
pub fn cycle_factor(k: u32, l: u32) -> BigInt {
    let sign = if l.is_multiple_of(2) { -1 } else { 1 };
    pow_int(i64::from(k), l) + sign
}

fn check_k(k: u32) -> Result<()> {
    if k < 2 {
        return Err(Error::InvalidHypergraph(format!("simplex constant needs k >= 2, got {k}")));
    }
    Ok(())
}

fn divide_exact(sum: BigInt, k: u32) -> Result<BigInt> {
    let k1 = BigInt::from(k + 1);
    let denom = BigInt::from(k - 1) * &k1 * &k1;
    let (q, r) = sum.div_rem(&denom);
    if !r.is_zero() {
        return Err(Error::Internal(format!("C_{k}: cycle-type sum not divisible by (k-1)(k+1)^2")));
    }
    Ok(q)
}

/// Exact `C_k` from the cycle-type sum. Partitions are aggregated by part
/// size: a partial sum over parts `< i` is extended by `V` parts equal to
/// `i` with weight `C(m, iV) (iV)! / (i^V V!) f(i)^V`, so the `|P(k+1)|`
/// terms are never listed one by one.
pub fn simplex_ck(k: u32) -> Result<BigInt> {
    check_k(k)?;
    let n = (k + 1) as usize;
    // sums[m]: sum over partitions of m into parts in 2..i of
    // |{permutations of [m] with that cycle type}| * prod f(part).
    let mut sums = vec![BigInt::zero(); n + 1];
    sums[0] = BigInt::one();
    for i in 2..=n {
        let f = cycle_factor(k, i as u32);
        let mut next = sums.clone();
        // same_size[v] = (iv)! / (i^v v!) * f^v
        let mut same_size = vec![BigInt::one()];
        for v in 1..=n / i {
            let prev = &same_size[v - 1];
            let grow = binomial((i * v - 1) as u64, (i - 1) as u64) * factorial(i as u64 - 1);
            same_size.push(prev * grow * &f);
        }
        let rows: Vec<usize> = (0..=n).collect();
        let updated = par::map(&rows, |&m| {
            let mut acc = BigInt::zero();
            for v in 1..=m / i {
                let rest = &sums[m - i * v];
                if !rest.is_zero() {
                    acc += rest * binomial(m as u64, (i * v) as u64) * &same_size[v];
                }
            }
            acc
        });
        for (m, extra) in updated.into_iter().enumerate() {
            next[m] += extra;
        }
        sums = next;
    }
    divide_exact(sums.swap_remove(n), k)
}

/// `C_k` by listing every partition of `k+1` into parts `>= 2` and summing
/// `|D(p)| prod (k^{p_i} + (-1)^{p_i+1})`. Feasible for moderate `k` only.
pub fn simplex_ck_by_partitions(k: u32) -> Result<BigInt> {
    check_k(k)?;
    let types = partitions_min2(k + 1);
    let terms = par::map(&types, |p| {
        let product = p
            .parts()
            .iter()
            .map(|&l| cycle_factor(k, l))
            .fold(BigInt::one(), |acc, x| acc * x);
        derangement_class_size(p) * product
    });
    // Fixed left-to-right reduction keeps intermediate sums reproducible.
    let sum = terms.into_iter().fold(BigInt::zero(), |acc, t| acc + t);
    divide_exact(sum, k)
}

/// Largest `k` accepted by [`simplex_ck_direct`] (it enumerates `(k+1)!`
/// permutations).
pub const MAX_DIRECT_K: u32 = 7;

/// `C_k` by summing arborescence counts over every derangement of `[k+1]`
/// explicitly, each count taken from the cycle lengths.
pub fn simplex_ck_direct(k: u32) -> Result<BigInt> {
    if !(2..=MAX_DIRECT_K).contains(&k) {
        return Err(Error::CapExceeded {
            what: "k for direct derangement enumeration",
            value: k as usize,
            cap: MAX_DIRECT_K as usize,
        });
    }
    let n = (k + 1) as usize;
    let k1 = BigInt::from(k + 1);
    let k1sq = &k1 * &k1;
    let mut tau_sum = BigInt::zero();
    for sigma in derangements(n) {
        let product = cycle_lengths(&sigma)
            .into_iter()
            .map(|l| cycle_factor(k, l))
            .fold(BigInt::one(), |acc, x| acc * x);
        let (tau, r) = product.div_rem(&k1sq);
        if !r.is_zero() {
            return Err(Error::Internal(format!("arborescence count for {sigma:?} is not integral")));
        }
        tau_sum += tau;
    }
    // C_H = tau_sum / (k-1)^{k+1}; C_k = (k-1)^k C_H.
    let ch = Rational::new(tau_sum, pow_int(i64::from(k) - 1, k + 1));
    let ck = ch * Rational::from_integer(pow_int(i64::from(k) - 1, k));
    if !ck.is_integer() {
        return Err(Error::Internal(format!("C_{k} by enumeration is not an integer")));
    }
    Ok(ck.to_integer())
}

/// All derangements of `0..n` as image vectors.
pub fn derangements(n: usize) -> Vec<Vec<usize>> {
    fn go(i: usize, n: usize, used: &mut [bool], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == n {
            out.push(cur.clone());
            return;
        }
        for j in 0..n {
            if j != i && !used[j] {
                used[j] = true;
                cur.push(j);
                go(i + 1, n, used, cur, out);
                cur.pop();
                used[j] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(0, n, &mut vec![false; n], &mut Vec::new(), &mut out);
    out
}

pub fn cycle_lengths(perm: &[usize]) -> Vec<u32> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        out.push(len);
    }
    out
}

/// `C_k / ((k+1)! k^{k+1})`, reported for inspection only.
pub fn asymptotic_ratio(k: u32) -> Result<Rational> {
    let ck = simplex_ck(k)?;
    let denom = factorial(u64::from(k) + 1) * pow_int(i64::from(k), k + 1);
    Ok(Rational::new(ck, denom))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ratio;

    #[test]
    fn partition_lists() {
        let parts = |n| -> Vec<Vec<u32>> {
            partitions_min2(n).into_iter().map(|p| p.parts).collect()
        };
        assert_eq!(parts(4), vec![vec![4], vec![2, 2]]);
        assert_eq!(parts(5), vec![vec![5], vec![3, 2]]);
        assert_eq!(partitions_min2(8).len(), 7);
        assert_eq!(parts(0), vec![Vec::<u32>::new()]);
        assert!(partitions_min2(1).is_empty());
    }

    #[test]
    fn class_sizes() {
        let size = |v: Vec<u32>| derangement_class_size(&IntegerPartition::new(v).unwrap());
        assert_eq!(size(vec![2, 2]), 3.into());
        assert_eq!(size(vec![4]), 6.into());
        assert_eq!(size(vec![3, 2]), 20.into());
        assert!(IntegerPartition::new(vec![3, 1]).is_err());
    }

    #[test]
    fn small_constants() {
        let expected = [2u64, 21, 588, 28230, 2092206, 220611384];
        for (k, &c) in (2..).zip(expected.iter()) {
            assert_eq!(simplex_ck(k).unwrap(), BigInt::from(c), "k = {k}");
        }
        assert!(simplex_ck(1).is_err());
    }

    #[test]
    fn grouped_and_listed_sums_agree() {
        for k in 2..=24 {
            assert_eq!(simplex_ck(k).unwrap(), simplex_ck_by_partitions(k).unwrap(), "k = {k}");
        }
    }

    #[test]
    fn direct_enumeration_matches_at_small_k() {
        assert_eq!(simplex_ck_direct(2).unwrap(), 2.into());
        assert_eq!(simplex_ck_direct(5).unwrap(), 28230.into());
        assert!(simplex_ck_direct(8).is_err());
    }

    #[test]
    fn ratio_at_two() {
        assert_eq!(asymptotic_ratio(2).unwrap(), ratio(1, 24));
    }
}
