//! 2×2 matrices modulo `p`: arithmetic, type classification, conjugacy and
//! conjugators.

pub mod gl2;
pub mod tl2;
pub mod trace;

use std::fmt;

use crate::error::{Error, Result};
use crate::numtheory::{Legendre, PrimeField, QuadExtElement, Rng};

pub use gl2::{decide_gl2, gl2_method, solve_gl2, solve_three};
pub use tl2::{decide_tl2, solve_tl2};
pub use trace::{trace_reachable, trace_target, type3_type3_solve};

#[inline]
fn mulm(a: u64, b: u64, p: u64) -> u64 {
    (a as u128 * b as u128 % p as u128) as u64
}

#[inline]
fn addm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

#[inline]
fn subm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + p as u128 - b as u128) % p as u128) as u64
}

/// Inverse modulo an arbitrary `m ≥ 1`.
pub(crate) fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return if m == 1 { Some(0) } else { None };
    }
    Some(t0.rem_euclid(m as i128) as u64)
}

/// `[[a, b], [c, d]]` with entries in `[0, p)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat2 {
    p: u64,
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub d: u64,
}

impl fmt::Debug for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]] mod {}", self.a, self.b, self.c, self.d, self.p)
    }
}

impl Mat2 {
    /// Entries are reduced modulo `p`.
    pub fn new(p: u64, a: u64, b: u64, c: u64, d: u64) -> Self {
        Mat2 { p, a: a % p, b: b % p, c: c % p, d: d % p }
    }

    pub fn from_signed(p: u64, rows: [[i64; 2]; 2]) -> Self {
        let r = |v: i64| (v as i128).rem_euclid(p as i128) as u64;
        Mat2 { p, a: r(rows[0][0]), b: r(rows[0][1]), c: r(rows[1][0]), d: r(rows[1][1]) }
    }

    /// Matrix with the given columns.
    pub fn from_columns(p: u64, u: [u64; 2], v: [u64; 2]) -> Self {
        Mat2::new(p, u[0], v[0], u[1], v[1])
    }

    pub fn identity(p: u64) -> Self {
        Mat2::scalar(p, 1)
    }

    pub fn scalar(p: u64, s: u64) -> Self {
        Mat2::new(p, s, 0, 0, s)
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn rows(&self) -> [[u64; 2]; 2] {
        [[self.a, self.b], [self.c, self.d]]
    }

    pub fn det(&self) -> u64 {
        subm(mulm(self.a, self.d, self.p), mulm(self.b, self.c, self.p), self.p)
    }

    pub fn trace(&self) -> u64 {
        addm(self.a, self.d, self.p)
    }

    pub fn is_invertible(&self) -> bool {
        inv_mod(self.det(), self.p).is_some()
    }

    pub fn is_scalar(&self) -> bool {
        self.b == 0 && self.c == 0 && self.a == self.d
    }

    pub fn is_identity(&self) -> bool {
        *self == Mat2::identity(self.p)
    }

    pub fn is_upper_triangular(&self) -> bool {
        self.c == 0
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        let p = self.p;
        assert_eq!(p, o.p, "moduli differ");
        let dot = |x1, y1, x2, y2| addm(mulm(x1, y1, p), mulm(x2, y2, p), p);
        Mat2 {
            p,
            a: dot(self.a, o.a, self.b, o.c),
            b: dot(self.a, o.b, self.b, o.d),
            c: dot(self.c, o.a, self.d, o.c),
            d: dot(self.c, o.b, self.d, o.d),
        }
    }

    pub fn inv(&self) -> Option<Mat2> {
        let p = self.p;
        let di = inv_mod(self.det(), p)?;
        Some(Mat2 {
            p,
            a: mulm(self.d, di, p),
            b: mulm(subm(0, self.b, p), di, p),
            c: mulm(subm(0, self.c, p), di, p),
            d: mulm(self.a, di, p),
        })
    }

    /// `z⁻¹·self·z`; `z` must be invertible.
    pub fn conj(&self, z: &Mat2) -> Mat2 {
        z.inv().expect("conjugator must be invertible").mul(self).mul(z)
    }

    pub fn scale(&self, s: u64) -> Mat2 {
        let p = self.p;
        Mat2 { p, a: mulm(self.a, s, p), b: mulm(self.b, s, p), c: mulm(self.c, s, p), d: mulm(self.d, s, p) }
    }

    pub fn sub_scalar(&self, s: u64) -> Mat2 {
        Mat2 { a: subm(self.a, s, self.p), d: subm(self.d, s, self.p), ..*self }
    }

    pub fn apply(&self, v: [u64; 2]) -> [u64; 2] {
        let p = self.p;
        [
            addm(mulm(self.a, v[0], p), mulm(self.b, v[1], p), p),
            addm(mulm(self.c, v[0], p), mulm(self.d, v[1], p), p),
        ]
    }

    /// `tr² − 4·det`
    pub fn discriminant(&self) -> u64 {
        let p = self.p;
        let t = self.trace();
        subm(mulm(t, t, p), mulm(4 % p, self.det(), p), p)
    }

    /// Uniformly random invertible matrix.
    pub fn random_invertible(p: u64, rng: &mut Rng) -> Mat2 {
        loop {
            let m = Mat2::new(p, rng.below(p), rng.below(p), rng.below(p), rng.below(p));
            if m.is_invertible() {
                return m;
            }
        }
    }
}

/// The four conjugacy types of invertible 2×2 matrices over ℤ_p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MatTag {
    Scalar,
    /// distinct eigenvalues in ℤ_p
    Type1,
    /// distinct eigenvalues in the quadratic extension
    Type2,
    /// repeated eigenvalue, not scalar
    Type3,
}

impl MatTag {
    pub fn name(&self) -> &'static str {
        match self {
            MatTag::Scalar => "scalar",
            MatTag::Type1 => "type1",
            MatTag::Type2 => "type2",
            MatTag::Type3 => "type3",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EigenData {
    Scalar(u64),
    /// `λ₁ < λ₂`
    Split(u64, u64),
    /// `s ± √t` in ℤ_p[√ξ]
    Extension(QuadExtElement, QuadExtElement),
    Repeated(u64),
}

/// Type, canonical representative `N` and a basis `P` with `A = P·N·P⁻¹`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MatType {
    pub tag: MatTag,
    pub canonical: Mat2,
    pub eigen: EigenData,
    pub basis: Mat2,
}

impl MatType {
    /// `s` of the type-2 and type-3 canonical forms.
    pub fn s(&self) -> u64 {
        self.canonical.a
    }
}

pub(crate) fn odd_field(p: u64) -> Result<PrimeField> {
    let f = PrimeField::new(p)?;
    if p == 2 {
        return Err(Error::InvalidModulus("2×2 type classification needs an odd prime".into()));
    }
    Ok(f)
}

/// Classification by the discriminant `ξ = tr² − 4det`: non-zero residue →
/// type 1, non-residue → type 2 with canonical `[[s,t],[1,s]]`, zero →
/// type 3 with canonical `[[s,1],[0,s]]`.
pub fn classify(m: &Mat2) -> Result<MatType> {
    let p = m.p;
    let f = odd_field(p)?;
    if m.det() == 0 {
        return Err(Error::SingularMatrix);
    }
    if m.is_scalar() {
        return Ok(MatType { tag: MatTag::Scalar, canonical: *m, eigen: EigenData::Scalar(m.a), basis: Mat2::identity(p) });
    }
    let half = f.inv(2).unwrap();
    let s = f.mul(m.trace(), half);
    let disc = m.discriminant();
    match f.legendre(disc) {
        Legendre::Residue => {
            let r = f.sqrt(disc)?;
            let mut l1 = f.mul(f.add(m.trace(), r), half);
            let mut l2 = f.mul(f.sub(m.trace(), r), half);
            if l1 > l2 {
                std::mem::swap(&mut l1, &mut l2);
            }
            let basis = Mat2::from_columns(p, eigenvector(m, l1), eigenvector(m, l2));
            Ok(MatType {
                tag: MatTag::Type1,
                canonical: Mat2::new(p, l1, 0, 0, l2),
                eigen: EigenData::Split(l1, l2),
                basis,
            })
        }
        Legendre::NonResidue => {
            let t = f.sub(f.mul(s, s), m.det());
            // cyclic vector e₁: A·e₁ = s·e₁ + w and A·w = t·e₁ + s·w
            let w = m.sub_scalar(s).apply([1, 0]);
            let basis = Mat2::from_columns(p, [1, 0], w);
            let xi = f.smallest_nonresidue().expect("odd prime");
            let root = QuadExtElement::sqrt_of(f, t, xi)?;
            let base = QuadExtElement::from_base(f, s, xi)?;
            Ok(MatType {
                tag: MatTag::Type2,
                canonical: Mat2::new(p, s, t, 1, s),
                eigen: EigenData::Extension(base.add(&root), base.sub(&root)),
                basis,
            })
        }
        Legendre::Zero => {
            let n = m.sub_scalar(s);
            let p2 = if n.apply([1, 0]) != [0, 0] { [1, 0] } else { [0, 1] };
            let p1 = n.apply(p2);
            Ok(MatType {
                tag: MatTag::Type3,
                canonical: Mat2::new(p, s, 1, 0, s),
                eigen: EigenData::Repeated(s),
                basis: Mat2::from_columns(p, p1, p2),
            })
        }
    }
}

/// Non-zero vector in the kernel of `A − λI`.
fn eigenvector(m: &Mat2, lambda: u64) -> [u64; 2] {
    let n = m.sub_scalar(lambda);
    let p = m.p;
    if n.b != 0 || n.a != 0 {
        [n.b, subm(0, n.a, p)]
    } else {
        [subm(0, n.d, p), n.c]
    }
}

fn same_modulus(a: &Mat2, b: &Mat2) -> Result<()> {
    if a.p != b.p {
        return Err(Error::ModulusMismatch(a.p, b.p));
    }
    if !a.is_invertible() || !b.is_invertible() {
        return Err(Error::SingularMatrix);
    }
    Ok(())
}

/// Both scalar and equal, or both non-scalar with the same trace and determinant.
pub fn conjugate_check(a: &Mat2, b: &Mat2) -> Result<bool> {
    same_modulus(a, b)?;
    Ok(match (a.is_scalar(), b.is_scalar()) {
        (true, true) => a == b,
        (false, false) => a.trace() == b.trace() && a.det() == b.det(),
        _ => false,
    })
}

/// Some `Z` with `Z⁻¹·B·Z = A`, as `Z = P_B·P_A⁻¹` from the canonical bases.
pub fn conjugator(a: &Mat2, b: &Mat2) -> Result<Mat2> {
    if !conjugate_check(a, b)? {
        return Err(Error::NotConjugate);
    }
    if a.is_scalar() {
        return Ok(Mat2::identity(a.p));
    }
    let (ta, tb) = (classify(a)?, classify(b)?);
    let z = tb.basis.mul(&ta.basis.inv().ok_or(Error::SingularMatrix)?);
    if b.conj(&z) != *a {
        return Err(Error::Internal(format!("conjugator failed for {a:?} and {b:?}")));
    }
    Ok(z)
}
