//! Dihedral groups D_n as pairs `(k, δ)` with `(k₁, δ₁)(k₂, δ₂) = (k₁ + δ₁k₂, δ₁δ₂)`.

use std::fmt;

use crate::equation::{normalize, verify, Solution, SphericalEquation};
use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupSpec};
use crate::mat2::Mat2;

/// Upper bound on the `k·n` table of the signed-sum search.
const SIGNED_SUM_CAP: u128 = 200_000_000;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DihedralElement {
    n: u64,
    k: u64,
    delta: i8,
}

impl fmt::Debug for DihedralElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {:+}) in D_{}", self.k, self.delta, self.n)
    }
}

fn signed_mod(v: i128, n: u64) -> u64 {
    v.rem_euclid(n as i128) as u64
}

impl DihedralElement {
    /// `k` is reduced mod `n`; `delta` must be ±1.
    pub fn new(n: u64, k: u64, delta: i8) -> Self {
        assert!(delta == 1 || delta == -1, "delta must be ±1");
        DihedralElement { n, k: k % n, delta }
    }

    pub fn from_signed(n: u64, k: i64, delta: i8) -> Self {
        Self::new(n, signed_mod(k as i128, n), delta)
    }

    pub fn identity(n: u64) -> Self {
        DihedralElement { n, k: 0, delta: 1 }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn delta(&self) -> i8 {
        self.delta
    }

    pub fn is_reflection(&self) -> bool {
        self.delta == -1
    }

    pub fn mul(&self, o: &Self) -> Self {
        let k = self.k as i128 + self.delta as i128 * o.k as i128;
        DihedralElement { n: self.n, k: signed_mod(k, self.n), delta: self.delta * o.delta }
    }

    pub fn inv(&self) -> Self {
        DihedralElement { n: self.n, k: signed_mod(-(self.delta as i128) * self.k as i128, self.n), delta: self.delta }
    }
}

fn dihedral_constants(eq: &SphericalEquation) -> Result<(u64, Vec<DihedralElement>)> {
    let GroupSpec::Dihedral { n } = *eq.group() else {
        return Err(Error::UnsupportedShape("equation is not over a dihedral group".into()));
    };
    let norm = normalize(eq);
    let cs = norm
        .equation
        .constants()
        .iter()
        .map(|c| c.as_dihedral().copied().ok_or_else(|| Error::MalformedElement(format!("{c:?}"))))
        .collect::<Result<Vec<_>>>()?;
    Ok((n, cs))
}

/// `suffix[i][r]`: some signs on `a[i..]` give a signed sum `≡ r (mod n)`.
fn suffix_reach(a: &[u64], n: u64) -> Result<Vec<Vec<bool>>> {
    if (a.len() as u128 + 1) * n as u128 > SIGNED_SUM_CAP {
        return Err(Error::TooLarge(format!("signed-sum table of {} × {n}", a.len() + 1)));
    }
    let n_us = n as usize;
    let mut suffix = vec![vec![false; n_us]; a.len() + 1];
    suffix[a.len()][0] = true;
    for i in (0..a.len()).rev() {
        let ai = (a[i] % n) as usize;
        for r in 0..n_us {
            if suffix[i + 1][r] {
                suffix[i][(r + ai) % n_us] = true;
                suffix[i][(r + n_us - ai) % n_us] = true;
            }
        }
    }
    Ok(suffix)
}

/// Signs `ε` with `Σ εᵢaᵢ ≡ 0 (mod n)`, preferring `+1` position by position.
pub fn signed_sum_solution(a: &[u64], n: u64) -> Result<Option<Vec<i8>>> {
    let suffix = suffix_reach(a, n)?;
    if !suffix[0][0] {
        return Ok(None);
    }
    let mut eps = Vec::with_capacity(a.len());
    let mut s: u64 = 0;
    for (i, &ai) in a.iter().enumerate() {
        let ai = ai % n;
        let plus = (s + ai) % n;
        let need = |t: u64| ((n - t) % n) as usize;
        if suffix[i + 1][need(plus)] {
            eps.push(1);
            s = plus;
        } else {
            eps.push(-1);
            s = (s + n - ai) % n;
        }
    }
    Ok(Some(eps))
}

/// Solvability over D_n: `∏δᵢ = 1`, then a signed-sum condition for
/// rotations only, or a parity condition when reflections occur.
pub fn decide_dn(eq: &SphericalEquation) -> Result<bool> {
    let (n, cs) = dihedral_constants(eq)?;
    if cs.iter().filter(|c| c.is_reflection()).count() % 2 == 1 {
        return Ok(false);
    }
    if cs.iter().all(|c| !c.is_reflection()) {
        let a: Vec<u64> = cs.iter().map(|c| c.k).collect();
        return Ok(suffix_reach(&a, n)?[0][0]);
    }
    Ok(n % 2 == 1 || cs.iter().filter(|c| c.k % 2 == 1).count() % 2 == 0)
}

/// Explicit conjugators. Rotations are conjugated by `(0, εᵢ)`; with
/// reflections present a single reflection absorbs the whole first component.
pub fn solve_dn(eq: &SphericalEquation) -> Result<Option<Solution>> {
    let GroupSpec::Dihedral { n } = *eq.group() else {
        return Err(Error::UnsupportedShape("equation is not over a dihedral group".into()));
    };
    let norm = normalize(eq);
    let (_, cs) = dihedral_constants(eq)?;
    if !decide_dn(eq)? {
        return Ok(None);
    }
    let z: Vec<DihedralElement> = if cs.iter().all(|c| !c.is_reflection()) {
        let a: Vec<u64> = cs.iter().map(|c| c.k).collect();
        let eps = signed_sum_solution(&a, n)?.ok_or_else(|| Error::Internal("signed sum vanished".into()))?;
        eps.iter().map(|&e| DihedralElement::new(n, 0, e)).collect()
    } else {
        // first component of the product: Σ Δᵢ·xᵢ with Δᵢ = ∏_{j<i} δⱼ,
        // xᵢ = aᵢ for rotations and a_r − 2h for the chosen reflection r
        let mut s: i128 = 0;
        let mut prefix: i8 = 1;
        let mut r_delta = None;
        let mut r_idx = 0;
        for (i, c) in cs.iter().enumerate() {
            s += prefix as i128 * c.k as i128;
            if c.is_reflection() && r_delta.is_none() {
                r_delta = Some(prefix);
                r_idx = i;
            }
            prefix *= c.delta;
        }
        let delta_r = r_delta.expect("a reflection is present") as i128;
        let s = signed_mod(s, n);
        let h = if n % 2 == 1 {
            // 2⁻¹ = (n+1)/2
            signed_mod(delta_r * s as i128 * ((n as i128 + 1) / 2), n)
        } else {
            signed_mod(delta_r * (s / 2) as i128, n)
        };
        (0..cs.len())
            .map(|i| if i == r_idx { DihedralElement::new(n, h, 1) } else { DihedralElement::identity(n) })
            .collect()
    };
    let sol = norm.lift(&Solution::new(z.into_iter().map(GroupElement::Dihedral).collect()))?;
    if !verify(eq, &sol)? {
        return Err(Error::Internal("dihedral solution does not verify".into()));
    }
    Ok(Some(sol))
}

/// A Partition instance: positive integers to be split into two halves of
/// equal sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionInstance {
    pub a: Vec<u64>,
}

impl PartitionInstance {
    pub fn new(a: Vec<u64>) -> Self {
        PartitionInstance { a }
    }

    /// Subset-sum search for a half of the total.
    pub fn brute_force(&self) -> bool {
        let total: u64 = self.a.iter().sum();
        if total % 2 == 1 {
            return false;
        }
        let half = (total / 2) as usize;
        let mut reach = vec![false; half + 1];
        reach[0] = true;
        for &v in &self.a {
            let v = v as usize;
            for s in (v..=half).rev() {
                reach[s] |= reach[s - v];
            }
        }
        reach[half]
    }
}

/// Equation over D_n, `n = 1 + Σaᵢ`, with rotation constants `(aᵢ, 1)`.
pub fn reduce_partition(inst: &PartitionInstance) -> Result<SphericalEquation> {
    if inst.a.is_empty() || inst.a.contains(&0) {
        return Err(Error::MalformedInstance("Partition needs positive integers".into()));
    }
    let n = 1 + inst.a.iter().sum::<u64>();
    let constants = inst.a.iter().map(|&v| GroupElement::Dihedral(DihedralElement::new(n, v, 1))).collect();
    SphericalEquation::new(GroupSpec::Dihedral { n }, constants, None)
}

/// `(k, δ) ↦ Rᵏ·S^{[δ=−1]}` with `R = [[1,1],[0,1]]`, `S = [[1,0],[0,−1]]`,
/// giving `[[1, δk], [0, δ]]` over ℤ_n.
pub fn embed_et2(el: &DihedralElement) -> Mat2 {
    let n = el.n;
    let d = if el.delta == 1 { 1 % n } else { n - 1 };
    let b = if el.delta == 1 { el.k } else { (n - el.k) % n };
    Mat2::new(n, 1 % n, b, 0, d)
}
