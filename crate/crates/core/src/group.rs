//! Group families, their elements, and explicit Cayley tables.

use std::fmt;

use crate::dihedral::DihedralElement;
use crate::error::{Error, Result};
use crate::highdim::{HeisenbergElement, Ut4Element};
use crate::mat2::Mat2;
use crate::numtheory::{is_prime, Rng, MAX_PRIME};
use crate::perm::Permutation;
use crate::semidirect::SemidirectElement;

/// Largest group the enumeration-based procedures accept.
pub const ENUMERATION_CAP: u128 = 10_000;

/// Family tag as it appears in the JSON format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Cayley,
    Symmetric,
    Alternating,
    Dihedral,
    Gl2p,
    Sl2p,
    Tl2p,
    Et2n,
    Heisenberg,
    Ut4p,
    Semidirect,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Cayley => "cayley",
            Family::Symmetric => "symmetric",
            Family::Alternating => "alternating",
            Family::Dihedral => "dihedral",
            Family::Gl2p => "gl2p",
            Family::Sl2p => "sl2p",
            Family::Tl2p => "tl2p",
            Family::Et2n => "et2n",
            Family::Heisenberg => "heisenberg",
            Family::Ut4p => "ut4p",
            Family::Semidirect => "semidirect",
        }
    }

    pub fn from_name(name: &str) -> Result<Family> {
        Ok(match name {
            "cayley" => Family::Cayley,
            "symmetric" => Family::Symmetric,
            "alternating" => Family::Alternating,
            "dihedral" => Family::Dihedral,
            "gl2p" => Family::Gl2p,
            "sl2p" => Family::Sl2p,
            "tl2p" => Family::Tl2p,
            "et2n" => Family::Et2n,
            "heisenberg" => Family::Heisenberg,
            "ut4p" => Family::Ut4p,
            "semidirect" => Family::Semidirect,
            other => return Err(Error::InvalidSpec(format!("unknown family {other:?}"))),
        })
    }
}

/// An explicit multiplication table on `0..n`.
#[derive(Clone, PartialEq, Eq)]
pub struct CayleyTable {
    n: usize,
    table: Vec<u32>,
    identity: u32,
    inverse: Vec<u32>,
}

impl fmt::Debug for CayleyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CayleyTable(order {})", self.n)
    }
}

impl CayleyTable {
    /// Validates a table: Latin square, two-sided identity, associativity on
    /// all triples for |G| ≤ 64 and on 10⁶ random triples beyond.
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidSpec("empty Cayley table".into()));
        }
        if n as u128 > ENUMERATION_CAP {
            return Err(Error::TooLarge(format!("Cayley table of order {n}")));
        }
        let mut table = Vec::with_capacity(n * n);
        for row in &rows {
            if row.len() != n {
                return Err(Error::InvalidSpec("Cayley table is not square".into()));
            }
            for &v in row {
                if v >= n {
                    return Err(Error::InvalidSpec(format!("entry {v} out of range")));
                }
                table.push(v as u32);
            }
        }
        Self::from_flat(n, table)
    }

    fn from_flat(n: usize, table: Vec<u32>) -> Result<Self> {
        let mut seen = vec![0usize; n];
        for i in 0..n {
            for j in 0..n {
                let v = table[i * n + j] as usize;
                if seen[v] == 2 * i + 1 {
                    return Err(Error::InvalidSpec(format!("row {i} repeats {v}")));
                }
                seen[v] = 2 * i + 1;
            }
        }
        for j in 0..n {
            let mut col = vec![false; n];
            for i in 0..n {
                let v = table[i * n + j] as usize;
                if col[v] {
                    return Err(Error::InvalidSpec(format!("column {j} repeats {v}")));
                }
                col[v] = true;
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e * n + x] as usize == x && table[x * n + e] as usize == x))
            .ok_or_else(|| Error::InvalidSpec("no identity element".into()))?;
        let mul = |a: usize, b: usize| table[a * n + b] as usize;
        if n <= 64 {
            for a in 0..n {
                for b in 0..n {
                    let ab = mul(a, b);
                    for c in 0..n {
                        if mul(ab, c) != mul(a, mul(b, c)) {
                            return Err(Error::InvalidSpec(format!("not associative at ({a},{b},{c})")));
                        }
                    }
                }
            }
        } else {
            let mut rng = Rng::new(0x5eed);
            for _ in 0..1_000_000 {
                let (a, b, c) = (
                    rng.below(n as u64) as usize,
                    rng.below(n as u64) as usize,
                    rng.below(n as u64) as usize,
                );
                if mul(mul(a, b), c) != mul(a, mul(b, c)) {
                    return Err(Error::InvalidSpec(format!("not associative at ({a},{b},{c})")));
                }
            }
        }
        let inverse = (0..n)
            .map(|a| (0..n).find(|&b| mul(a, b) == identity).unwrap() as u32)
            .collect();
        Ok(CayleyTable { n, table, identity: identity as u32, inverse })
    }

    /// The cyclic group ℤ_n.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSpec("cyclic group of order 0".into()));
        }
        let table = (0..n * n).map(|ij| ((ij / n + ij % n) % n) as u32).collect();
        Self::from_flat(n, table)
    }

    /// Table of the direct product; element `(g, h)` has index `g·|H| + h`.
    pub fn direct_product(g: &CayleyTable, h: &CayleyTable) -> Result<Self> {
        let n = g.n * h.n;
        if n as u128 > ENUMERATION_CAP {
            return Err(Error::TooLarge(format!("direct product of order {n}")));
        }
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let (ag, ah) = (a / h.n, a % h.n);
                let (bg, bh) = (b / h.n, b % h.n);
                table.push((g.mul(ag, bg) * h.n + h.mul(ah, bh)) as u32);
            }
        }
        Self::from_flat(n, table)
    }

    /// Multiplication table of any enumerable family, indexed in enumeration order.
    pub fn from_spec(spec: &GroupSpec) -> Result<Self> {
        let fg = crate::cayley::FiniteGroup::new(spec)?;
        let n = fg.order();
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                table.push(fg.mul(a as u32, b as u32));
            }
        }
        Self::from_flat(n, table)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b] as usize
    }

    #[inline]
    pub fn identity(&self) -> usize {
        self.identity as usize
    }

    #[inline]
    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.mul(i, j)).collect())
            .collect()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }
}

/// A group family together with its parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Cayley(CayleyTable),
    Symmetric { n: usize },
    Alternating { n: usize },
    Dihedral { n: u64 },
    /// GL(2, p)
    Gl2 { p: u64 },
    /// SL(2, p)
    Sl2 { p: u64 },
    /// Invertible upper-triangular 2×2 matrices over ℤ_p.
    Tl2 { p: u64 },
    /// Upper-triangular 2×2 matrices over ℤ_n with diagonal entries ±1.
    Et2 { n: u64 },
    /// Generalized Heisenberg group of dimension `n` over ℤ_p.
    Heisenberg { n: usize, p: u64 },
    /// Unitriangular 4×4 matrices over ℤ_p.
    Ut4 { p: u64 },
    /// ℤ_m^k ⋊ C₂ with C₂ acting by negation.
    Semidirect { m: u64, k: usize },
}

fn check_prime(p: u64) -> Result<()> {
    if p > MAX_PRIME || !is_prime(p) {
        return Err(Error::InvalidSpec(format!("{p} is not a supported prime")));
    }
    Ok(())
}

impl GroupSpec {
    /// Checks the family parameters.
    pub fn validate(&self) -> Result<()> {
        match *self {
            GroupSpec::Cayley(_) => Ok(()),
            GroupSpec::Symmetric { n } | GroupSpec::Alternating { n } => {
                if n == 0 {
                    Err(Error::InvalidSpec("degree must be at least 1".into()))
                } else {
                    Ok(())
                }
            }
            GroupSpec::Dihedral { n } | GroupSpec::Et2 { n } => {
                if n == 0 || n > MAX_PRIME {
                    Err(Error::InvalidSpec(format!("modulus {n} out of range")))
                } else {
                    Ok(())
                }
            }
            GroupSpec::Gl2 { p } | GroupSpec::Sl2 { p } | GroupSpec::Tl2 { p } | GroupSpec::Ut4 { p } => {
                check_prime(p)
            }
            GroupSpec::Heisenberg { n, p } => {
                if n < 3 {
                    return Err(Error::InvalidSpec("Heisenberg dimension must be at least 3".into()));
                }
                check_prime(p)
            }
            GroupSpec::Semidirect { m, k } => {
                if m < 2 || k < 1 || m > MAX_PRIME {
                    Err(Error::InvalidSpec("semidirect product needs m ≥ 2 and k ≥ 1".into()))
                } else {
                    Ok(())
                }
            }
        }
    }

    pub fn family(&self) -> Family {
        match self {
            GroupSpec::Cayley(_) => Family::Cayley,
            GroupSpec::Symmetric { .. } => Family::Symmetric,
            GroupSpec::Alternating { .. } => Family::Alternating,
            GroupSpec::Dihedral { .. } => Family::Dihedral,
            GroupSpec::Gl2 { .. } => Family::Gl2p,
            GroupSpec::Sl2 { .. } => Family::Sl2p,
            GroupSpec::Tl2 { .. } => Family::Tl2p,
            GroupSpec::Et2 { .. } => Family::Et2n,
            GroupSpec::Heisenberg { .. } => Family::Heisenberg,
            GroupSpec::Ut4 { .. } => Family::Ut4p,
            GroupSpec::Semidirect { .. } => Family::Semidirect,
        }
    }

    /// Group order, or `None` when it does not fit in 128 bits.
    pub fn order(&self) -> Option<u128> {
        fn pow(b: u128, e: u32) -> Option<u128> {
            b.checked_pow(e)
        }
        match *self {
            GroupSpec::Cayley(ref t) => Some(t.order() as u128),
            GroupSpec::Symmetric { n } => (1..=n as u128).try_fold(1u128, |acc, i| acc.checked_mul(i)),
            GroupSpec::Alternating { n } => {
                let f = (1..=n as u128).try_fold(1u128, |acc, i| acc.checked_mul(i))?;
                Some(if n < 2 { 1 } else { f / 2 })
            }
            GroupSpec::Dihedral { n } => Some(2 * n as u128),
            GroupSpec::Gl2 { p } => {
                let p = p as u128;
                (p * p - 1).checked_mul(p * p - p)
            }
            GroupSpec::Sl2 { p } => {
                let p = p as u128;
                p.checked_mul(p * p - 1)
            }
            GroupSpec::Tl2 { p } => {
                let p = p as u128;
                (p - 1).checked_mul(p - 1)?.checked_mul(p)
            }
            GroupSpec::Et2 { n } => Some(if n <= 2 { n as u128 } else { 4 * n as u128 }),
            GroupSpec::Heisenberg { n, p } => pow(p as u128, (2 * (n - 2) + 1) as u32),
            GroupSpec::Ut4 { p } => pow(p as u128, 6),
            GroupSpec::Semidirect { m, k } => pow(m as u128, k as u32)?.checked_mul(2),
        }
    }

    /// True when enumeration-based procedures may run on this group.
    pub fn is_enumerable(&self) -> bool {
        self.order().is_some_and(|o| o <= ENUMERATION_CAP)
    }

    pub fn identity(&self) -> GroupElement {
        match *self {
            GroupSpec::Cayley(ref t) => GroupElement::Index(t.identity() as u32),
            GroupSpec::Symmetric { n } | GroupSpec::Alternating { n } => {
                GroupElement::Perm(Permutation::identity(n))
            }
            GroupSpec::Dihedral { n } => GroupElement::Dihedral(DihedralElement::identity(n)),
            GroupSpec::Gl2 { p } | GroupSpec::Sl2 { p } | GroupSpec::Tl2 { p } => {
                GroupElement::Matrix(Mat2::identity(p))
            }
            GroupSpec::Et2 { n } => GroupElement::Matrix(Mat2::identity(n)),
            GroupSpec::Heisenberg { n, p } => GroupElement::Heisenberg(HeisenbergElement::identity(n, p)),
            GroupSpec::Ut4 { p } => GroupElement::Ut4(Ut4Element::identity(p)),
            GroupSpec::Semidirect { m, k } => GroupElement::Semidirect(SemidirectElement::identity(m, k)),
        }
    }

    /// Membership test for an element in this group.
    pub fn contains(&self, el: &GroupElement) -> bool {
        match (self, el) {
            (GroupSpec::Cayley(t), GroupElement::Index(i)) => (*i as usize) < t.order(),
            (GroupSpec::Symmetric { n }, GroupElement::Perm(s)) => s.degree() == *n,
            (GroupSpec::Alternating { n }, GroupElement::Perm(s)) => s.degree() == *n && s.sign() == 1,
            (GroupSpec::Dihedral { n }, GroupElement::Dihedral(d)) => d.n() == *n && d.k() < *n,
            (GroupSpec::Gl2 { p }, GroupElement::Matrix(a)) => a.modulus() == *p && a.is_invertible(),
            (GroupSpec::Sl2 { p }, GroupElement::Matrix(a)) => a.modulus() == *p && a.det() == 1 % *p,
            (GroupSpec::Tl2 { p }, GroupElement::Matrix(a)) => {
                a.modulus() == *p && a.c == 0 && a.is_invertible()
            }
            (GroupSpec::Et2 { n }, GroupElement::Matrix(a)) => {
                let pm = |v: u64| v == 1 % *n || v == *n - 1;
                a.modulus() == *n && a.c == 0 && pm(a.a) && pm(a.d)
            }
            (GroupSpec::Heisenberg { n, p }, GroupElement::Heisenberg(h)) => {
                h.dim() == *n && h.modulus() == *p && h.is_reduced()
            }
            (GroupSpec::Ut4 { p }, GroupElement::Ut4(u)) => u.modulus() == *p && u.is_reduced(),
            (GroupSpec::Semidirect { m, k }, GroupElement::Semidirect(s)) => {
                s.modulus() == *m && s.len() == *k && s.is_reduced()
            }
            _ => false,
        }
    }

    pub fn check_member(&self, el: &GroupElement) -> Result<()> {
        if self.contains(el) {
            Ok(())
        } else {
            Err(Error::MalformedElement(format!("{el:?} is not an element of {}", self.family().name())))
        }
    }

    /// Product `a·b`. Both arguments must be members of this group.
    pub fn mul(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        match (self, a, b) {
            (GroupSpec::Cayley(t), GroupElement::Index(x), GroupElement::Index(y)) => {
                GroupElement::Index(t.mul(*x as usize, *y as usize) as u32)
            }
            (_, GroupElement::Perm(x), GroupElement::Perm(y)) => GroupElement::Perm(x.compose(y)),
            (_, GroupElement::Dihedral(x), GroupElement::Dihedral(y)) => GroupElement::Dihedral(x.mul(y)),
            (_, GroupElement::Matrix(x), GroupElement::Matrix(y)) => GroupElement::Matrix(x.mul(y)),
            (_, GroupElement::Heisenberg(x), GroupElement::Heisenberg(y)) => {
                GroupElement::Heisenberg(x.mul(y))
            }
            (_, GroupElement::Ut4(x), GroupElement::Ut4(y)) => GroupElement::Ut4(x.mul(y)),
            (_, GroupElement::Semidirect(x), GroupElement::Semidirect(y)) => {
                GroupElement::Semidirect(x.mul(y))
            }
            _ => panic!("mixed element kinds in group multiplication"),
        }
    }

    pub fn inv(&self, a: &GroupElement) -> GroupElement {
        match (self, a) {
            (GroupSpec::Cayley(t), GroupElement::Index(x)) => GroupElement::Index(t.inverse(*x as usize) as u32),
            (_, GroupElement::Perm(x)) => GroupElement::Perm(x.inverse()),
            (_, GroupElement::Dihedral(x)) => GroupElement::Dihedral(x.inv()),
            (_, GroupElement::Matrix(x)) => {
                GroupElement::Matrix(x.inv().expect("group members are invertible"))
            }
            (_, GroupElement::Heisenberg(x)) => GroupElement::Heisenberg(x.inv()),
            (_, GroupElement::Ut4(x)) => GroupElement::Ut4(x.inv()),
            (_, GroupElement::Semidirect(x)) => GroupElement::Semidirect(x.inv()),
            _ => panic!("element kind does not match group"),
        }
    }

    /// `z⁻¹·c·z`
    pub fn conj(&self, c: &GroupElement, z: &GroupElement) -> GroupElement {
        self.mul(&self.mul(&self.inv(z), c), z)
    }

    pub fn is_identity(&self, a: &GroupElement) -> bool {
        *a == self.identity()
    }

    /// All elements, in a fixed deterministic order.
    pub fn enumerate(&self) -> Result<Vec<GroupElement>> {
        self.validate()?;
        if !self.is_enumerable() {
            return Err(Error::TooLarge(format!(
                "{} group of order {} exceeds the enumeration cap {ENUMERATION_CAP}",
                self.family().name(),
                self.order().map_or_else(|| "> 2^128".to_string(), |o| o.to_string())
            )));
        }
        let out = match *self {
            GroupSpec::Cayley(ref t) => (0..t.order() as u32).map(GroupElement::Index).collect(),
            GroupSpec::Symmetric { n } => Permutation::all(n).into_iter().map(GroupElement::Perm).collect(),
            GroupSpec::Alternating { n } => Permutation::all(n)
                .into_iter()
                .filter(|s| s.sign() == 1)
                .map(GroupElement::Perm)
                .collect(),
            GroupSpec::Dihedral { n } => [1i8, -1]
                .iter()
                .flat_map(|&d| (0..n).map(move |k| GroupElement::Dihedral(DihedralElement::new(n, k, d))))
                .collect(),
            GroupSpec::Gl2 { p } | GroupSpec::Sl2 { p } | GroupSpec::Tl2 { p } | GroupSpec::Et2 { n: p } => {
                let mut v = Vec::new();
                for a in 0..p {
                    for b in 0..p {
                        for c in 0..p {
                            for d in 0..p {
                                let el = GroupElement::Matrix(Mat2::new(p, a, b, c, d));
                                if self.contains(&el) {
                                    v.push(el);
                                }
                            }
                        }
                    }
                }
                v
            }
            GroupSpec::Heisenberg { n, p } => {
                let len = 2 * (n - 2) + 1;
                odometer(len, p)
                    .map(|digits| {
                        let alpha1 = digits[..n - 2].to_vec();
                        let a2 = digits[n - 2];
                        let alpha3 = digits[n - 1..].to_vec();
                        GroupElement::Heisenberg(HeisenbergElement::new(p, alpha1, a2, alpha3))
                    })
                    .collect()
            }
            GroupSpec::Ut4 { p } => odometer(6, p)
                .map(|d| GroupElement::Ut4(Ut4Element::new(p, [d[0], d[1], d[2], d[3], d[4], d[5]])))
                .collect(),
            GroupSpec::Semidirect { m, k } => {
                let mut v = Vec::new();
                for sign in [1i8, -1] {
                    v.extend(odometer(k, m).map(|d| GroupElement::Semidirect(SemidirectElement::new(m, d, sign))));
                }
                v
            }
        };
        Ok(out)
    }
}

/// All digit vectors of the given length over `0..base`, little-endian counting.
fn odometer(len: usize, base: u64) -> impl Iterator<Item = Vec<u64>> {
    let total = (base as u128).pow(len as u32);
    (0..total).map(move |mut idx| {
        let mut digits = vec![0u64; len];
        for d in digits.iter_mut() {
            *d = (idx % base as u128) as u64;
            idx /= base as u128;
        }
        digits
    })
}

/// An element of one of the supported families.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupElement {
    /// Index into a Cayley table.
    Index(u32),
    Perm(Permutation),
    Dihedral(DihedralElement),
    Matrix(Mat2),
    Heisenberg(HeisenbergElement),
    Ut4(Ut4Element),
    Semidirect(SemidirectElement),
}

impl GroupElement {
    pub fn as_perm(&self) -> Option<&Permutation> {
        match self {
            GroupElement::Perm(p) => Some(p),
            _ => None,
        }
    }

    pub fn as_dihedral(&self) -> Option<&DihedralElement> {
        match self {
            GroupElement::Dihedral(d) => Some(d),
            _ => None,
        }
    }

    pub fn as_matrix(&self) -> Option<&Mat2> {
        match self {
            GroupElement::Matrix(m) => Some(m),
            _ => None,
        }
    }

    pub fn as_heisenberg(&self) -> Option<&HeisenbergElement> {
        match self {
            GroupElement::Heisenberg(h) => Some(h),
            _ => None,
        }
    }

    pub fn as_ut4(&self) -> Option<&Ut4Element> {
        match self {
            GroupElement::Ut4(u) => Some(u),
            _ => None,
        }
    }

    pub fn as_semidirect(&self) -> Option<&SemidirectElement> {
        match self {
            GroupElement::Semidirect(s) => Some(s),
            _ => None,
        }
    }
}
