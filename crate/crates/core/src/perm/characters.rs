//! Exact decision for products of conjugacy classes of S_n through the
//! Frobenius class-product formula. Characters come from the
//! Murnaghan–Nakayama rule on beta-sets.
//!
//! The number of tuples `(g₁, …, g_k) ∈ C₁ × ⋯ × C_k` with product 1 is
//! `∏|Cᵢ| / n! · Σ_λ ∏χ_λ(Cᵢ) / χ_λ(1)^{k−2}`. Since `χ_λ(1) = n!/H_λ` with
//! `H_λ` the hook product, its sign is the sign of `Σ_λ ∏χ_λ(Cᵢ)·H_λ^{k−2}`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::equation::{normalize, SphericalEquation};
use crate::error::{Error, Result};
use crate::group::GroupSpec;

/// Largest degree the character oracle accepts.
pub const MAX_DEGREE: usize = 40;

/// Partitions of `n` in reverse lexicographic order.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            cur.push(part);
            go(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Beta-set of `λ` padded to `n` parts, as a bitmask.
fn beta_mask(lambda: &[usize], n: usize) -> u128 {
    (0..n).fold(0u128, |m, i| {
        let part = lambda.get(i).copied().unwrap_or(0);
        m | 1u128 << (part + n - 1 - i)
    })
}

/// Evaluates the characters of S_n on one class, with memoised rim-hook removal.
pub struct CharacterTable {
    n: usize,
    mu: Vec<usize>,
    memo: HashMap<(u128, usize), i128>,
}

impl CharacterTable {
    /// `mu` is the cycle type as a partition of `n`.
    pub fn new(n: usize, mut mu: Vec<usize>) -> Self {
        mu.sort_unstable_by(|a, b| b.cmp(a));
        CharacterTable { n, mu, memo: HashMap::new() }
    }

    pub fn value(&mut self, lambda: &[usize]) -> i128 {
        let mask = beta_mask(lambda, self.n);
        self.eval(mask, 0)
    }

    fn eval(&mut self, mask: u128, depth: usize) -> i128 {
        if depth == self.mu.len() {
            return 1;
        }
        if let Some(&v) = self.memo.get(&(mask, depth)) {
            return v;
        }
        let r = self.mu[depth];
        let mut total = 0i128;
        let mut bits = mask;
        while bits != 0 {
            let b = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            if b < r || mask >> (b - r) & 1 == 1 {
                continue;
            }
            let between = (mask >> (b - r + 1)) & ((1u128 << (r - 1)) - 1);
            let sign = if between.count_ones().is_multiple_of(2) { 1 } else { -1 };
            let next = mask & !(1u128 << b) | 1u128 << (b - r);
            total += sign * self.eval(next, depth + 1);
        }
        self.memo.insert((mask, depth), total);
        total
    }
}

/// Product of hook lengths of `λ`.
pub fn hook_product(lambda: &[usize]) -> BigInt {
    let mut h = BigInt::one();
    for (i, &row) in lambda.iter().enumerate() {
        for j in 0..row {
            let below = lambda[i + 1..].iter().filter(|&&r| r > j).count();
            h *= BigInt::from(row - j + below);
        }
    }
    h
}

/// Whether some `gᵢ ∈ Cᵢ` multiply to 1 in S_n, for classes given as
/// partitions of `n`.
pub fn class_product_contains_identity(n: usize, classes: &[Vec<usize>]) -> Result<bool> {
    if n > MAX_DEGREE {
        return Err(Error::TooLarge(format!("character oracle limited to degree {MAX_DEGREE}")));
    }
    let nontrivial: Vec<&Vec<usize>> = classes.iter().filter(|c| c.iter().any(|&p| p > 1)).collect();
    match nontrivial.len() {
        0 => return Ok(true),
        1 => return Ok(false),
        _ => {}
    }
    let k = nontrivial.len();
    let mut tables: Vec<CharacterTable> =
        nontrivial.iter().map(|mu| CharacterTable::new(n, (*mu).clone())).collect();
    let mut sum = BigInt::zero();
    for lambda in partitions(n) {
        let mut term = BigInt::one();
        for t in tables.iter_mut() {
            let v = t.value(&lambda);
            if v == 0 {
                term = BigInt::zero();
                break;
            }
            term *= BigInt::from(v);
        }
        if term.is_zero() {
            continue;
        }
        term *= num_traits::pow(hook_product(&lambda), k - 2);
        sum += term;
    }
    Ok(sum.is_positive())
}

/// Decision for equations over S_n, or over A_n when no constant's class
/// splits there (the A_n classes are then the S_n classes).
pub fn decide_by_characters(eq: &SphericalEquation) -> Result<bool> {
    let n = match eq.group() {
        GroupSpec::Symmetric { n } | GroupSpec::Alternating { n } => *n,
        _ => return Err(Error::UnsupportedShape("character oracle needs a symmetric or alternating group".into())),
    };
    let alternating = matches!(eq.group(), GroupSpec::Alternating { .. });
    let norm = normalize(eq);
    let mut classes = Vec::new();
    for c in norm.equation.constants() {
        let ct = c.as_perm().expect("permutation group constant").cycle_type();
        if alternating && ct.splits_in_alternating() {
            return Err(Error::UnsupportedShape(format!(
                "class of cycle type {:?} splits in A_{n}",
                ct.partition()
            )));
        }
        classes.push(ct.partition());
    }
    class_product_contains_identity(n, &classes)
}
