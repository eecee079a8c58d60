//! The groups ℤ_m^k ⋊ C₂ with `(a, x)(b, y) = (a + x·b, x·y)`, the exact
//! set cover reduction and the sign-vector decision for its equations.

use std::fmt;

use crate::equation::{verify, Solution, SphericalEquation};
use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupSpec};

/// Largest number of non-trivial constants the sign enumeration accepts.
pub const SIGN_CAP: usize = 24;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SemidirectElement {
    m: u64,
    vec: Vec<u64>,
    sign: i8,
}

impl fmt::Debug for SemidirectElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {:+}) mod {}", self.vec, self.sign, self.m)
    }
}

impl SemidirectElement {
    /// Entries are reduced modulo `m`; `sign` must be ±1.
    pub fn new(m: u64, vec: Vec<u64>, sign: i8) -> Self {
        assert!(sign == 1 || sign == -1, "sign must be ±1");
        SemidirectElement { m, vec: vec.into_iter().map(|v| v % m).collect(), sign }
    }

    pub fn from_signed(m: u64, vec: &[i64], sign: i8) -> Self {
        Self::new(m, vec.iter().map(|&v| (v as i128).rem_euclid(m as i128) as u64).collect(), sign)
    }

    pub fn identity(m: u64, k: usize) -> Self {
        SemidirectElement { m, vec: vec![0; k], sign: 1 }
    }

    /// `(0, −1)`
    pub fn flip(m: u64, k: usize) -> Self {
        SemidirectElement { m, vec: vec![0; k], sign: -1 }
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }

    pub fn len(&self) -> usize {
        self.vec.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vec.is_empty()
    }

    pub fn vec(&self) -> &[u64] {
        &self.vec
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn is_reduced(&self) -> bool {
        self.vec.iter().all(|&v| v < self.m)
    }

    pub fn is_identity(&self) -> bool {
        self.sign == 1 && self.vec.iter().all(|&v| v == 0)
    }

    fn scaled(&self, x: i8, v: u64) -> u64 {
        if x == 1 || v == 0 {
            v
        } else {
            self.m - v
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let vec = self.vec.iter().zip(&o.vec).map(|(&a, &b)| (a + self.scaled(self.sign, b)) % self.m).collect();
        SemidirectElement { m: self.m, vec, sign: self.sign * o.sign }
    }

    pub fn inv(&self) -> Self {
        let vec = self.vec.iter().map(|&a| self.scaled(-self.sign, a)).collect();
        SemidirectElement { m: self.m, vec, sign: self.sign }
    }

    /// The factors `(aⱼ, x) ∈ ℤ_m ⋊ C₂` of the embedding into `(ℤ_m ⋊ C₂)^k`.
    pub fn embed(&self) -> Vec<SemidirectElement> {
        self.vec.iter().map(|&a| SemidirectElement { m: self.m, vec: vec![a], sign: self.sign }).collect()
    }
}

/// Ground set `{1, …, k}` and subsets `A₁, …, A_ℓ` of size at most 3.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XCoverInstance {
    pub k: usize,
    pub subsets: Vec<Vec<usize>>,
}

impl XCoverInstance {
    pub fn new(k: usize, subsets: Vec<Vec<usize>>) -> Self {
        XCoverInstance { k, subsets }
    }

    fn check(&self) -> Result<()> {
        let mut occ = vec![0usize; self.k + 1];
        for s in &self.subsets {
            if s.len() > 3 {
                return Err(Error::MalformedInstance("subsets have at most 3 elements".into()));
            }
            let mut seen = s.clone();
            seen.sort_unstable();
            seen.dedup();
            if seen.len() != s.len() {
                return Err(Error::MalformedInstance("repeated element in a subset".into()));
            }
            for &e in s {
                if e == 0 || e > self.k {
                    return Err(Error::MalformedInstance(format!("element {e} outside 1..={}", self.k)));
                }
                occ[e] += 1;
                if occ[e] > 3 {
                    return Err(Error::MalformedInstance(format!("element {e} occurs in more than 3 subsets")));
                }
            }
        }
        Ok(())
    }

    /// Whether the 1-based index set `cert` is an exact cover.
    pub fn is_cover(&self, cert: &[usize]) -> bool {
        let mut hit = vec![0usize; self.k + 1];
        let mut used = vec![false; self.subsets.len()];
        for &i in cert {
            if i == 0 || i > self.subsets.len() || used[i - 1] {
                return false;
            }
            used[i - 1] = true;
            for &e in &self.subsets[i - 1] {
                if e == 0 || e > self.k {
                    return false;
                }
                hit[e] += 1;
            }
        }
        hit[1..].iter().all(|&h| h == 1)
    }

    /// Some exact cover as 1-based subset indices, by exhaustive search.
    pub fn brute_force(&self) -> Option<Vec<usize>> {
        let l = self.subsets.len();
        assert!(l < 32, "too many subsets for exhaustive search");
        (0u32..1 << l)
            .map(|mask| (0..l).filter(|&i| mask >> i & 1 == 1).map(|i| i + 1).collect::<Vec<_>>())
            .find(|cert| self.is_cover(cert))
    }
}

/// Equation over ℤ_m^{k+ℓ} ⋊ C₂ with constants `cᵢ = (1_{Aᵢ}, 1)` and
/// `c_{ℓ+i} = (1_{Aᵢ} + e_{k+i}, 1)` and rhs `((2,…,2,1,…,1), 1)`.
pub fn reduce_xcover(inst: &XCoverInstance, m: u64) -> Result<SphericalEquation> {
    if m < 3 || m == 4 {
        return Err(Error::MalformedInstance("the reduction needs m = 3 or m ≥ 5".into()));
    }
    inst.check()?;
    let (k, l) = (inst.k, inst.subsets.len());
    let dim = k + l;
    let indicator = |s: &[usize]| {
        let mut v = vec![0u64; dim];
        for &e in s {
            v[e - 1] = 1;
        }
        v
    };
    let mut constants = Vec::with_capacity(2 * l);
    for s in &inst.subsets {
        constants.push(GroupElement::Semidirect(SemidirectElement::new(m, indicator(s), 1)));
    }
    for (i, s) in inst.subsets.iter().enumerate() {
        let mut v = indicator(s);
        v[k + i] = 1;
        constants.push(GroupElement::Semidirect(SemidirectElement::new(m, v, 1)));
    }
    let rhs: Vec<u64> = (0..dim).map(|j| if j < k { 2 } else { 1 }).collect();
    SphericalEquation::new(
        GroupSpec::Semidirect { m, k: dim },
        constants,
        Some(GroupElement::Semidirect(SemidirectElement::new(m, rhs, 1))),
    )
}

fn semidirect_parts(eq: &SphericalEquation) -> Result<(u64, usize, Vec<&SemidirectElement>, SemidirectElement)> {
    let GroupSpec::Semidirect { m, k } = *eq.group() else {
        return Err(Error::UnsupportedShape("expected an equation over a semidirect product".into()));
    };
    let cs = eq
        .constants()
        .iter()
        .map(|c| c.as_semidirect().ok_or(Error::MalformedElement("expected a semidirect element".into())))
        .collect::<Result<Vec<_>>>()?;
    let rhs = eq.target().as_semidirect().cloned().ok_or(Error::MalformedElement("rhs".into()))?;
    Ok((m, k, cs, rhs))
}

/// Signs `εᵢ` (first in lexicographic order with `+1 < −1`) such that
/// `Σ εᵢ·aᵢ = target`; conjugating `(a, 1)` by `(h, γ)` gives `(γ·a, 1)`.
/// `None` if there are none.
pub fn signvector_solution(eq: &SphericalEquation) -> Result<Option<Vec<i8>>> {
    let (m, k, cs, rhs) = semidirect_parts(eq)?;
    if cs.iter().any(|c| c.sign != 1) {
        return Err(Error::UnsupportedShape("sign-vector decision needs constants of sign +1".into()));
    }
    let active: Vec<usize> = (0..cs.len()).filter(|&i| !cs[i].is_identity()).collect();
    if active.len() > SIGN_CAP {
        return Err(Error::TooLarge(format!("{} constants exceed the sign enumeration cap {SIGN_CAP}", active.len())));
    }
    let mut eps = vec![1i8; cs.len()];
    if rhs.sign != 1 {
        return Ok(None);
    }
    let vecs: Vec<&[u64]> = active.iter().map(|&i| cs[i].vec()).collect();
    let mut chosen = Vec::with_capacity(vecs.len());
    let mut acc = vec![0u64; k];
    if search(m, &vecs, &rhs.vec, &mut acc, &mut chosen) {
        for (&i, &e) in active.iter().zip(&chosen) {
            eps[i] = e;
        }
        return Ok(Some(eps));
    }
    Ok(None)
}

fn search(m: u64, vecs: &[&[u64]], target: &[u64], acc: &mut Vec<u64>, chosen: &mut Vec<i8>) -> bool {
    let depth = chosen.len();
    if depth == vecs.len() {
        return acc.as_slice() == target;
    }
    for e in [1i8, -1] {
        let v = vecs[depth];
        for (a, &x) in acc.iter_mut().zip(v) {
            *a = if e == 1 { (*a + x) % m } else { (*a + m - x) % m };
        }
        chosen.push(e);
        if search(m, vecs, target, acc, chosen) {
            return true;
        }
        chosen.pop();
        for (a, &x) in acc.iter_mut().zip(v) {
            *a = if e == 1 { (*a + m - x) % m } else { (*a + x) % m };
        }
    }
    false
}

pub fn decide_signvector(eq: &SphericalEquation) -> Result<bool> {
    Ok(signvector_solution(eq)?.is_some())
}

/// Conjugators `(0, εᵢ)` from the sign vector, verified.
pub fn solve_signvector(eq: &SphericalEquation) -> Result<Option<Solution>> {
    let Some(eps) = signvector_solution(eq)? else {
        return Ok(None);
    };
    let GroupSpec::Semidirect { m, k } = *eq.group() else { unreachable!() };
    let sol = Solution::new(
        eps.iter()
            .map(|&e| {
                GroupElement::Semidirect(if e == 1 { SemidirectElement::identity(m, k) } else { SemidirectElement::flip(m, k) })
            })
            .collect(),
    );
    if !verify(eq, &sol)? {
        return Err(Error::Internal("sign-vector solution failed verification".into()));
    }
    Ok(Some(sol))
}

/// `zᵢ = (0, −1)` for each unselected `i ≤ ℓ`, identity elsewhere. All
/// conjugates have sign +1 and commute, so no reordering is involved.
pub fn certificate_to_solution(inst: &XCoverInstance, cert: &[usize], m: u64) -> Result<Solution> {
    if !inst.is_cover(cert) {
        return Err(Error::InvalidCertificate("not an exact cover".into()));
    }
    let eq = reduce_xcover(inst, m)?;
    let (l, dim) = (inst.subsets.len(), inst.k + inst.subsets.len());
    let mut zs = vec![GroupElement::Semidirect(SemidirectElement::identity(m, dim)); 2 * l];
    for (i, z) in zs.iter_mut().enumerate().take(l) {
        if !cert.contains(&(i + 1)) {
            *z = GroupElement::Semidirect(SemidirectElement::flip(m, dim));
        }
    }
    let sol = Solution::new(zs);
    if !verify(&eq, &sol)? {
        return Err(Error::Internal("cover certificate failed verification".into()));
    }
    Ok(sol)
}
