//! Symmetric and alternating groups: cycles, conjugacy and the 3-Partition
//! reductions.

pub mod characters;

use std::fmt;

use crate::equation::{reorder_equiv, verify, Solution, SphericalEquation};
use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupSpec};
use crate::numtheory::Rng;

/// A permutation of `{1, …, n}`. Stored 0-based.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{:?}", self.images())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n as u32).collect() }
    }

    /// From 1-based images: `images[i−1] = σ(i)`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::with_capacity(n);
        for &v in images {
            if v == 0 || v > n || seen[v - 1] {
                return Err(Error::MalformedElement(format!("{images:?} is not a permutation")));
            }
            seen[v - 1] = true;
            out.push((v - 1) as u32);
        }
        Ok(Permutation { images: out })
    }

    /// Product of the given 1-based cycles, applied right to left.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut acc = Permutation::identity(n);
        for c in cycles.iter().rev() {
            acc = Permutation::cycle(n, c)?.compose(&acc);
        }
        Ok(acc)
    }

    /// The cycle `(c₀ c₁ … )` on `n` points.
    pub fn cycle(n: usize, points: &[usize]) -> Result<Self> {
        let mut images: Vec<u32> = (0..n as u32).collect();
        let mut seen = vec![false; n];
        for (i, &x) in points.iter().enumerate() {
            if x == 0 || x > n || seen[x - 1] {
                return Err(Error::MalformedElement(format!("bad cycle {points:?} on {n} points")));
            }
            seen[x - 1] = true;
            images[x - 1] = (points[(i + 1) % points.len()] - 1) as u32;
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// 1-based images.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&v| v as usize + 1).collect()
    }

    /// `σ(i)` for 1-based `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] as usize + 1
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Permutation { images: other.images.iter().map(|&i| self.images[i as usize]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.degree()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i as u32 == v)
    }

    /// `z⁻¹·self·z`
    pub fn conjugate_by(&self, z: &Permutation) -> Permutation {
        z.inverse().compose(self).compose(z)
    }

    /// Non-trivial cycles, each starting at its minimum, sorted by minimum.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cyc = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cyc.push(x + 1);
                x = self.images[x] as usize;
            }
            out.push(cyc);
        }
        out
    }

    pub fn cycle_type(&self) -> CycleType {
        let mut lengths: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        CycleType { degree: self.degree(), lengths }
    }

    pub fn sign(&self) -> i8 {
        let even = self.cycles().iter().filter(|c| c.len() % 2 == 0).count();
        if even % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Points moved by the permutation, ascending and 1-based.
    pub fn moved_points(&self) -> Vec<usize> {
        (0..self.degree()).filter(|&i| self.images[i] as usize != i).map(|i| i + 1).collect()
    }

    /// All permutations of degree `n` in lexicographic order of images.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut cur: Vec<u32> = (0..n as u32).collect();
        let mut out = vec![Permutation { images: cur.clone() }];
        loop {
            let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
                return out;
            };
            let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
            out.push(Permutation { images: cur.clone() });
        }
    }

    /// Uniformly random permutation.
    pub fn random(n: usize, rng: &mut Rng) -> Permutation {
        let mut images: Vec<u32> = (0..n as u32).collect();
        for i in (1..n).rev() {
            let j = rng.below(i as u64 + 1) as usize;
            images.swap(i, j);
        }
        Permutation { images }
    }
}

/// Cycle lengths (all ≥ 2, descending) of a permutation together with its degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleType {
    pub degree: usize,
    pub lengths: Vec<usize>,
}

impl CycleType {
    pub fn moved(&self) -> usize {
        self.lengths.iter().sum()
    }

    /// The cycle type as a partition of the degree, fixed points as parts 1.
    pub fn partition(&self) -> Vec<usize> {
        let mut parts = self.lengths.clone();
        parts.extend(std::iter::repeat_n(1, self.degree - self.moved()));
        parts
    }

    /// Whether the S_n class of this type breaks into two A_n classes:
    /// all parts odd and distinct, counting fixed points.
    pub fn splits_in_alternating(&self) -> bool {
        let parts = self.partition();
        parts.iter().all(|&l| l % 2 == 1) && parts.windows(2).all(|w| w[0] != w[1])
    }
}

/// Σ |mov(σᵢ)|
pub fn smov(perms: &[Permutation]) -> usize {
    perms.iter().map(|p| p.moved_points().len()).sum()
}

pub fn cycle_decompose(s: &Permutation) -> Vec<Vec<usize>> {
    s.cycles()
}

pub fn sign(s: &Permutation) -> i8 {
    s.sign()
}

pub fn conjugate_check(s: &Permutation, t: &Permutation) -> Result<bool> {
    if s.degree() != t.degree() {
        return Err(Error::DegreeMismatch(s.degree(), t.degree()));
    }
    Ok(s.cycle_type() == t.cycle_type())
}

/// Some `x` with `x⁻¹·s·x = t`, aligning canonical cycles pointwise and
/// fixed points in ascending order.
pub fn conjugator(s: &Permutation, t: &Permutation) -> Result<Permutation> {
    if !conjugate_check(s, t)? {
        return Err(Error::NotConjugate);
    }
    let n = s.degree();
    let by_len = |p: &Permutation| {
        let mut cs = p.cycles();
        cs.sort_by_key(Vec::len);
        cs
    };
    let mut x = vec![u32::MAX; n];
    // t-cycle points go to the matching s-cycle points
    for (sc, tc) in by_len(s).iter().zip(by_len(t).iter()) {
        for (&a, &b) in sc.iter().zip(tc) {
            x[b - 1] = (a - 1) as u32;
        }
    }
    fn fixed(p: &Permutation) -> impl Iterator<Item = usize> + '_ {
        (0..p.images.len()).filter(move |&i| p.images[i] as usize == i)
    }
    for (a, b) in fixed(s).zip(fixed(t)) {
        x[b] = a as u32;
    }
    Ok(Permutation { images: x })
}

/// A 3-Partition instance: `3k` positive integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThreePartition {
    pub a: Vec<u64>,
}

impl ThreePartition {
    pub fn new(a: Vec<u64>) -> Self {
        ThreePartition { a }
    }

    /// `(k, L)` after checking `|a| = 3k`, `L = Σa / k` integral and
    /// `L/4 < aᵢ < L/2`.
    pub fn parameters(&self) -> Result<(usize, u64)> {
        let len = self.a.len();
        if len == 0 || !len.is_multiple_of(3) {
            return Err(Error::MalformedInstance(format!("{len} numbers is not a positive multiple of 3")));
        }
        let k = len / 3;
        let sum: u64 = self.a.iter().sum();
        if !sum.is_multiple_of(k as u64) {
            return Err(Error::MalformedInstance(format!("sum {sum} is not divisible by k = {k}")));
        }
        let l = sum / k as u64;
        for &ai in &self.a {
            if !(4 * ai > l && 2 * ai < l) {
                return Err(Error::MalformedInstance(format!("{ai} violates L/4 < a < L/2 for L = {l}")));
            }
        }
        Ok((k, l))
    }

    /// Exhaustive search for a partition into triples of sum `L`.
    pub fn brute_force(&self) -> Result<Option<Vec<[usize; 3]>>> {
        let (_, l) = self.parameters()?;
        let mut used = vec![false; self.a.len()];
        let mut out = Vec::new();
        Ok(if self.search(l, &mut used, &mut out) { Some(out) } else { None })
    }

    fn search(&self, l: u64, used: &mut [bool], out: &mut Vec<[usize; 3]>) -> bool {
        let Some(i) = used.iter().position(|u| !u) else {
            return true;
        };
        used[i] = true;
        let n = self.a.len();
        for j in i + 1..n {
            if used[j] {
                continue;
            }
            used[j] = true;
            for m in j + 1..n {
                if !used[m] && self.a[i] + self.a[j] + self.a[m] == l {
                    used[m] = true;
                    out.push([i + 1, j + 1, m + 1]);
                    if self.search(l, used, out) {
                        return true;
                    }
                    out.pop();
                    used[m] = false;
                }
            }
            used[j] = false;
        }
        used[i] = false;
        false
    }

    fn doubled(&self) -> ThreePartition {
        ThreePartition { a: self.a.iter().map(|v| 2 * v).collect() }
    }
}

fn reduction_equation(inst: &ThreePartition, extra: usize, alternating: bool) -> Result<SphericalEquation> {
    let (k, l) = inst.parameters()?;
    let block = l as usize + 1;
    let n = k * block + extra;
    let constants = inst
        .a
        .iter()
        .map(|&ai| Ok(GroupElement::Perm(Permutation::cycle(n, &(1..=ai as usize + 1).collect::<Vec<_>>())?)))
        .collect::<Result<Vec<_>>>()?;
    let rhs_cycles: Vec<Vec<usize>> = (0..k).map(|j| (j * block + 1..=(j + 1) * block).collect()).collect();
    let rhs = GroupElement::Perm(Permutation::from_cycles(n, &rhs_cycles)?);
    let group = if alternating { GroupSpec::Alternating { n } } else { GroupSpec::Symmetric { n } };
    SphericalEquation::new(group, constants, Some(rhs))
}

/// Equation over S_n, `n = k(L+1)`, with constants `(1 … aᵢ+1)` and the
/// product of `k` consecutive `(L+1)`-cycles as right-hand side.
pub fn reduce_3partition(inst: &ThreePartition) -> Result<SphericalEquation> {
    reduction_equation(inst, 0, false)
}

/// The same construction over A_n on the doubled instance with two spare
/// points, `n = k(L+1) + 2`.
pub fn reduce_3partition_an(inst: &ThreePartition) -> Result<SphericalEquation> {
    inst.parameters()?;
    reduction_equation(&inst.doubled(), 2, true)
}

fn check_certificate(inst: &ThreePartition, cert: &[[usize; 3]]) -> Result<(usize, u64)> {
    let (k, l) = inst.parameters()?;
    if cert.len() != k {
        return Err(Error::InvalidCertificate(format!("expected {k} triples, got {}", cert.len())));
    }
    let mut used = vec![false; inst.a.len()];
    for t in cert {
        let mut sum = 0;
        for &i in t {
            if i == 0 || i > inst.a.len() || used[i - 1] {
                return Err(Error::InvalidCertificate(format!("index {i} missing or repeated")));
            }
            used[i - 1] = true;
            sum += inst.a[i - 1];
        }
        if sum != l {
            return Err(Error::InvalidCertificate(format!("triple {t:?} sums to {sum}, not {l}")));
        }
    }
    Ok((k, l))
}

/// Conjugators for the reduced equation from a partition into triples
/// (1-based indices). With `alternating` the A_n equation is targeted and
/// all conjugators are even.
pub fn certificate_to_solution(inst: &ThreePartition, cert: &[[usize; 3]], alternating: bool) -> Result<Solution> {
    check_certificate(inst, cert)?;
    let (eq, values) = if alternating {
        (reduce_3partition_an(inst)?, inst.doubled().a)
    } else {
        (reduce_3partition(inst)?, inst.a.clone())
    };
    let (_, l) = ThreePartition { a: values.clone() }.parameters()?;
    let n = eq.group().identity().as_perm().unwrap().degree();
    let block = l as usize + 1;

    // order the constants triple by triple, then conjugate each onto its
    // stretch of the block: (off+1 … off+a₁+1), (off+a₁+1 … off+a₁+a₂+1), …
    let perm: Vec<usize> = cert.iter().flat_map(|t| t.iter().map(|&i| i - 1)).collect();
    let reordered = reorder_equiv(&eq, &perm)?;
    let mut conj = Vec::with_capacity(perm.len());
    for (j, t) in cert.iter().enumerate() {
        let mut start = j * block + 1;
        for &i in t {
            let ai = values[i - 1] as usize;
            let c = eq.constants()[i - 1].as_perm().unwrap();
            let target = Permutation::cycle(n, &(start..=start + ai).collect::<Vec<_>>())?;
            let mut x = conjugator(c, &target)?;
            if alternating && x.sign() == -1 {
                // a transposition on two points fixed by c keeps x⁻¹cx
                let tau = Permutation::cycle(n, &[n - 1, n])?;
                x = tau.compose(&x);
            }
            conj.push(GroupElement::Perm(x));
            start += ai;
        }
    }
    let sol = reordered.backward(&Solution::new(conj))?;
    if !verify(&eq, &sol)? {
        return Err(Error::Internal("certificate solution does not verify".into()));
    }
    Ok(sol)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(images: &[usize]) -> Permutation {
        Permutation::from_images(images).unwrap()
    }

    #[test]
    fn cycle_decomposition() {
        assert!(Permutation::identity(5).cycles().is_empty());
        assert_eq!(perm(&[2, 3, 1, 5, 4]).cycles(), vec![vec![1, 2, 3], vec![4, 5]]);
        assert_eq!(perm(&[2, 1, 3, 4]).cycles(), vec![vec![1, 2]]);
        assert_eq!(perm(&[2, 3, 1, 5, 4]).to_string(), "(1 2 3)(4 5)");
    }

    #[test]
    fn signs() {
        assert_eq!(Permutation::identity(4).sign(), 1);
        assert_eq!(perm(&[2, 1]).sign(), -1);
        assert_eq!(perm(&[2, 3, 1, 5, 4]).sign(), -1);
    }

    #[test]
    fn conjugacy_checks() {
        let t12 = Permutation::cycle(4, &[1, 2]).unwrap();
        let t34 = Permutation::cycle(4, &[3, 4]).unwrap();
        assert!(conjugate_check(&t12, &t34).unwrap());
        let c123 = Permutation::cycle(4, &[1, 2, 3]).unwrap();
        assert!(!conjugate_check(&c123, &t12).unwrap());
        let a = Permutation::from_cycles(4, &[vec![1, 2], vec![3, 4]]).unwrap();
        let b = Permutation::from_cycles(4, &[vec![1, 3], vec![2, 4]]).unwrap();
        assert!(conjugate_check(&a, &b).unwrap());
        assert_eq!(conjugate_check(&t12, &Permutation::identity(3)), Err(Error::DegreeMismatch(4, 3)));
    }

    #[test]
    fn conjugator_examples() {
        let s = Permutation::cycle(4, &[1, 2]).unwrap();
        let t = Permutation::cycle(4, &[3, 4]).unwrap();
        let x = conjugator(&s, &t).unwrap();
        assert_eq!(x.images(), vec![3, 4, 1, 2]);
        assert_eq!(s.conjugate_by(&x), t);

        assert!(conjugator(&s, &s).unwrap().is_identity());

        let s = Permutation::cycle(4, &[1, 2, 3]).unwrap();
        let t = Permutation::cycle(4, &[2, 3, 4]).unwrap();
        assert_eq!(s.conjugate_by(&conjugator(&s, &t).unwrap()), t);
        assert_eq!(conjugator(&s, &Permutation::cycle(4, &[1, 2]).unwrap()), Err(Error::NotConjugate));
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(Permutation::all(4).len(), 24);
        assert_eq!(Permutation::all(0).len(), 1);
    }

    #[test]
    fn splitting_criterion() {
        // (1 2 3 4 5) in S_5: parts [5] split; in S_6 parts [5,1] split; in S_7 [5,1,1] do not
        let ct = |n| Permutation::cycle(n, &[1, 2, 3, 4, 5]).unwrap().cycle_type();
        assert!(ct(5).splits_in_alternating());
        assert!(ct(6).splits_in_alternating());
        assert!(!ct(7).splits_in_alternating());
        assert!(!Permutation::cycle(5, &[1, 2, 3]).unwrap().cycle_type().splits_in_alternating());
    }

    #[test]
    fn reduction_shape_222() {
        let inst = ThreePartition::new(vec![2, 2, 2]);
        let eq = reduce_3partition(&inst).unwrap();
        assert_eq!(eq.group(), &GroupSpec::Symmetric { n: 7 });
        let c = Permutation::cycle(7, &[1, 2, 3]).unwrap();
        for ci in eq.constants() {
            assert_eq!(ci.as_perm().unwrap(), &c);
        }
        let rhs = Permutation::cycle(7, &[1, 2, 3, 4, 5, 6, 7]).unwrap();
        assert_eq!(eq.rhs().unwrap().as_perm().unwrap(), &rhs);
    }

    #[test]
    fn reduction_an_shape() {
        let inst = ThreePartition::new(vec![2, 2, 2]);
        let eq = reduce_3partition_an(&inst).unwrap();
        assert_eq!(eq.group(), &GroupSpec::Alternating { n: 15 });
        for ci in eq.constants() {
            let p = ci.as_perm().unwrap();
            assert_eq!(p.cycle_type().lengths, vec![5]);
            assert_eq!(p.sign(), 1);
        }
    }

    #[test]
    fn malformed_instances() {
        assert!(reduce_3partition(&ThreePartition::new(vec![1, 2])).is_err());
        assert!(reduce_3partition(&ThreePartition::new(vec![1, 2, 3])).is_err());
        assert!(reduce_3partition(&ThreePartition::new(vec![1, 1, 4])).is_err());
    }

    #[test]
    fn certificates_verify() {
        let inst = ThreePartition::new(vec![2, 2, 2]);
        let sol = certificate_to_solution(&inst, &[[1, 2, 3]], false).unwrap();
        assert!(verify(&reduce_3partition(&inst).unwrap(), &sol).unwrap());
        let sol = certificate_to_solution(&inst, &[[1, 2, 3]], true).unwrap();
        assert!(sol.conjugators.iter().all(|z| z.as_perm().unwrap().sign() == 1));
        assert!(verify(&reduce_3partition_an(&inst).unwrap(), &sol).unwrap());

        let inst = ThreePartition::new(vec![3, 4, 3, 4, 3, 3]);
        let cert = inst.brute_force().unwrap().unwrap();
        for alt in [false, true] {
            let sol = certificate_to_solution(&inst, &cert, alt).unwrap();
            let eq = if alt { reduce_3partition_an(&inst) } else { reduce_3partition(&inst) }.unwrap();
            assert!(verify(&eq, &sol).unwrap());
        }
    }

    #[test]
    fn invalid_certificates() {
        let inst = ThreePartition::new(vec![3, 4, 3, 4, 3, 3]);
        assert!(matches!(
            certificate_to_solution(&inst, &[[1, 2, 4], [3, 5, 6]], false),
            Err(Error::InvalidCertificate(_))
        ));
        assert!(matches!(
            certificate_to_solution(&inst, &[[1, 2, 3], [1, 5, 6]], false),
            Err(Error::InvalidCertificate(_))
        ));
    }

    #[test]
    fn brute_force_partition() {
        assert!(ThreePartition::new(vec![4, 4, 4, 4, 4, 6]).brute_force().unwrap().is_none());
        assert!(ThreePartition::new(vec![3, 3, 4, 3, 3, 4]).brute_force().unwrap().is_some());
    }
}
