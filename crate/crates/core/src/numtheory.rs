//! Arithmetic in prime fields and the randomized number-theoretic helpers the
//! 2×2 matrix solvers rely on.

use std::fmt;

use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Largest supported prime modulus; products of two residues fit in `u128`.
pub const MAX_PRIME: u64 = (1 << 61) - 1;

/// Deterministic Miller-Rabin, exact for every 64-bit input.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &w in &WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    'witness: for &w in &WITNESSES {
        let mut x = pow_mod(w, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    let m = m as u128;
    let mut acc: u128 = 1 % m;
    let mut b = base as u128 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Outcome of the Legendre symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Legendre {
    Residue,
    NonResidue,
    Zero,
}

/// The field ℤ_p for a prime `p ≤ 2⁶¹−1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p > MAX_PRIME {
            return Err(Error::InvalidModulus(format!("{p} exceeds 2^61-1")));
        }
        if !is_prime(p) {
            return Err(Error::InvalidModulus(format!("{p} is not prime")));
        }
        Ok(PrimeField { p })
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn reduce(&self, v: i128) -> u64 {
        v.rem_euclid(self.p as i128) as u64
    }

    pub fn residue(&self, v: i64) -> Residue {
        Residue { value: self.reduce(v as i128), p: self.p }
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a as u128 + b as u128;
        (s % self.p as u128) as u64
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            self.p - (b - a)
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(&self, a: u64, exp: u64) -> u64 {
        pow_mod(a, exp, self.p)
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u64) -> Option<u64> {
        let a = a % self.p;
        if a == 0 {
            return None;
        }
        // extended Euclid on signed 128-bit values
        let (mut r0, mut r1) = (self.p as i128, a as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Some(self.reduce(t0))
    }

    /// `a / b`, panicking on division by zero (callers check invertibility).
    pub fn div(&self, a: u64, b: u64) -> u64 {
        self.mul(a, self.inv(b).expect("division by zero in prime field"))
    }

    /// Euler's criterion.
    pub fn legendre(&self, a: u64) -> Legendre {
        let a = a % self.p;
        if a == 0 {
            return Legendre::Zero;
        }
        if self.p == 2 {
            return Legendre::Residue;
        }
        if self.pow(a, (self.p - 1) / 2) == 1 {
            Legendre::Residue
        } else {
            Legendre::NonResidue
        }
    }

    pub fn is_square(&self, a: u64) -> bool {
        self.legendre(a) != Legendre::NonResidue
    }

    /// Smallest quadratic non-residue, found by linear scan. `None` for p = 2.
    pub fn smallest_nonresidue(&self) -> Option<u64> {
        (2..self.p).find(|&a| self.legendre(a) == Legendre::NonResidue)
    }

    /// Deterministic square root (Tonelli-Shanks with the smallest
    /// non-residue). Returns the smaller of the two roots.
    pub fn sqrt(&self, c: u64) -> Result<u64> {
        match self.legendre(c) {
            Legendre::Zero => Ok(0),
            Legendre::NonResidue => Err(Error::NonResidue { value: c % self.p, p: self.p }),
            Legendre::Residue => {
                if self.p == 2 {
                    return Ok(c % 2);
                }
                let z = self.smallest_nonresidue().expect("odd prime has a non-residue");
                Ok(self.canonical_root(self.tonelli_shanks(c % self.p, z)))
            }
        }
    }

    fn canonical_root(&self, x: u64) -> u64 {
        x.min(self.neg(x))
    }

    /// Tonelli-Shanks for a residue `c` given a non-residue `z`.
    fn tonelli_shanks(&self, c: u64, z: u64) -> u64 {
        let p = self.p;
        if p % 4 == 3 {
            return self.pow(c, (p + 1) / 4);
        }
        let mut q = p - 1;
        let mut s = 0u32;
        while q.is_multiple_of(2) {
            q /= 2;
            s += 1;
        }
        let mut m = s;
        let mut cc = self.pow(z, q);
        let mut t = self.pow(c, q);
        let mut r = self.pow(c, q.div_ceil(2));
        while t != 1 {
            let mut i = 0;
            let mut t2 = t;
            while t2 != 1 {
                t2 = self.mul(t2, t2);
                i += 1;
            }
            let mut b = cc;
            for _ in 0..(m - i - 1) {
                b = self.mul(b, b);
            }
            m = i;
            cc = self.mul(b, b);
            t = self.mul(t, cc);
            r = self.mul(r, b);
        }
        r
    }
}

/// A value of ℤ_p together with its modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Residue {
    value: u64,
    p: u64,
}

impl Residue {
    pub fn new(field: PrimeField, value: u64) -> Self {
        Residue { value: value % field.p, p: field.p }
    }

    #[inline]
    pub fn value(&self) -> u64 {
        self.value
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        PrimeField { p: self.p }
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn inv(&self) -> Option<Residue> {
        self.field().inv(self.value).map(|v| Residue { value: v, p: self.p })
    }

    pub fn pow(&self, exp: u64) -> Residue {
        Residue { value: self.field().pow(self.value, exp), p: self.p }
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.p)
    }
}

macro_rules! residue_binop {
    ($trait:ident, $method:ident, $op:ident) => {
        impl std::ops::$trait for Residue {
            type Output = Residue;
            fn $method(self, rhs: Residue) -> Residue {
                assert_eq!(self.p, rhs.p, "residues from different fields");
                let f = self.field();
                Residue { value: f.$op(self.value, rhs.value), p: self.p }
            }
        }
    };
}

residue_binop!(Add, add, add);
residue_binop!(Sub, sub, sub);
residue_binop!(Mul, mul, mul);

impl std::ops::Neg for Residue {
    type Output = Residue;
    fn neg(self) -> Residue {
        Residue { value: self.field().neg(self.value), p: self.p }
    }
}

/// Deterministic source of randomness for the "random polynomial time"
/// procedures. Identical seeds give identical draw sequences.
#[derive(Debug, Clone)]
pub struct Rng {
    seed: u64,
    draws: u64,
    inner: ChaCha8Rng,
}

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng { seed, draws: 0, inner: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Number of values drawn so far.
    pub fn draws(&self) -> u64 {
        self.draws
    }

    pub fn next_u64(&mut self) -> u64 {
        self.draws += 1;
        self.inner.gen()
    }

    /// Uniform in `[0, n)`; `n` must be positive.
    pub fn below(&mut self, n: u64) -> u64 {
        self.draws += 1;
        self.inner.gen_range(0..n)
    }

    /// Uniform element of ℤ_p.
    pub fn element(&mut self, field: PrimeField) -> u64 {
        self.below(field.p())
    }

    /// Uniform element of ℤ_p \ {0}.
    pub fn nonzero(&mut self, field: PrimeField) -> u64 {
        1 + self.below(field.p() - 1)
    }
}

/// Attempt budget for randomized searches: 64·⌈log₂ p⌉.
pub fn retry_budget(p: u64) -> usize {
    let bits = 64 - (p.max(2) - 1).leading_zeros() as usize;
    64 * bits.max(1)
}

pub fn legendre(a: Residue) -> Legendre {
    a.field().legendre(a.value())
}

/// Randomized Tonelli-Shanks: the auxiliary non-residue is drawn at random.
pub fn sqrt_mod(c: Residue, rng: &mut Rng) -> Result<Residue> {
    let field = c.field();
    match legendre(c) {
        Legendre::Zero => Ok(Residue::new(field, 0)),
        Legendre::NonResidue => Err(Error::NonResidue { value: c.value(), p: field.p() }),
        Legendre::Residue => {
            if field.p() == 2 {
                return Ok(c);
            }
            let budget = retry_budget(field.p());
            for _ in 0..budget {
                let z = rng.nonzero(field);
                if field.legendre(z) == Legendre::NonResidue {
                    let root = field.tonelli_shanks(c.value(), z);
                    return Ok(Residue::new(field, field.canonical_root(root)));
                }
            }
            Err(Error::RetryExhausted(budget))
        }
    }
}

/// Finds `(x, y)` with `x² − k·y² ≡ m (mod p)` by sampling `y` until
/// `m + k·y²` is a square. `y = 0` is tried first.
pub fn solve_bivariate(k: Residue, m: Residue, rng: &mut Rng) -> Result<(Residue, Residue)> {
    let field = k.field();
    if m.field() != field {
        return Err(Error::ModulusMismatch(field.p(), m.field().p()));
    }
    if field.p() == 2 {
        return Err(Error::InvalidModulus("p must be odd".into()));
    }
    if k.is_zero() || m.is_zero() {
        return Err(Error::InvalidModulus("gcd(km, p) must be 1".into()));
    }
    let budget = retry_budget(field.p());
    for attempt in 0..budget {
        let y = if attempt == 0 { 0 } else { rng.element(field) };
        let rhs = field.add(m.value(), field.mul(k.value(), field.mul(y, y)));
        if field.is_square(rhs) {
            let x = sqrt_mod(Residue::new(field, rhs), rng)?;
            return Ok((x, Residue::new(field, y)));
        }
    }
    Err(Error::RetryExhausted(budget))
}

/// Finds `u ≠ 0` and `x` with `u·b + t/u − x²/u ≡ k` for quadratic
/// non-residues `t` and `b`.
pub fn solve_weighted_trace(
    k: Residue,
    t: Residue,
    b: Residue,
    rng: &mut Rng,
) -> Result<(Residue, Residue)> {
    let field = k.field();
    if t.field() != field || b.field() != field {
        return Err(Error::ModulusMismatch(field.p(), t.field().p()));
    }
    if field.p() < 3 {
        return Err(Error::Precondition("p must be at least 3".into()));
    }
    if legendre(t) != Legendre::NonResidue || legendre(b) != Legendre::NonResidue {
        return Err(Error::Precondition("t and b must be quadratic non-residues".into()));
    }
    let (kv, tv, bv) = (k.value(), t.value(), b.value());
    let two_b_inv = field.inv(field.mul(2, bv)).expect("b is non-zero");
    let budget = retry_budget(field.p());
    for attempt in 0..budget {
        let x = if attempt == 0 { 0 } else { rng.element(field) };
        // b u² − k u + (t − x²) = 0
        let disc = field.sub(
            field.mul(kv, kv),
            field.mul(field.mul(4, bv), field.sub(tv, field.mul(x, x))),
        );
        if !field.is_square(disc) {
            continue;
        }
        let root = sqrt_mod(Residue::new(field, disc), rng)?.value();
        for cand in [field.add(kv, root), field.sub(kv, root)] {
            let u = field.mul(cand, two_b_inv);
            if u != 0 {
                return Ok((Residue::new(field, u), Residue::new(field, x)));
            }
        }
    }
    Err(Error::RetryExhausted(budget))
}

/// An element `a + b·√ξ` of the quadratic extension ℤ_p[√ξ].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadExtElement {
    pub a: u64,
    pub b: u64,
    xi: u64,
    p: u64,
}

impl QuadExtElement {
    /// Builds an element over ℤ_p[√ξ] where `xi` must be a non-residue.
    pub fn new(field: PrimeField, a: u64, b: u64, xi: u64) -> Result<Self> {
        if field.legendre(xi) != Legendre::NonResidue {
            return Err(Error::Precondition(format!("{xi} is not a non-residue mod {}", field.p())));
        }
        Ok(QuadExtElement { a: a % field.p(), b: b % field.p(), xi: xi % field.p(), p: field.p() })
    }

    /// Embeds a base-field value.
    pub fn from_base(field: PrimeField, a: u64, xi: u64) -> Result<Self> {
        Self::new(field, a, 0, xi)
    }

    /// A square root of an arbitrary base-field value, living in the extension.
    pub fn sqrt_of(field: PrimeField, c: u64, xi: u64) -> Result<Self> {
        if field.is_square(c) {
            let r = field.sqrt(c)?;
            Self::new(field, r, 0, xi)
        } else {
            // c = ξ·(c/ξ) with c/ξ a square
            let r = field.sqrt(field.div(c, xi))?;
            Self::new(field, 0, r, xi)
        }
    }

    pub fn field(&self) -> PrimeField {
        PrimeField { p: self.p }
    }

    pub fn xi(&self) -> u64 {
        self.xi
    }

    pub fn is_base(&self) -> bool {
        self.b == 0
    }

    pub fn add(&self, o: &Self) -> Self {
        let f = self.field();
        QuadExtElement { a: f.add(self.a, o.a), b: f.add(self.b, o.b), ..*self }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let f = self.field();
        QuadExtElement { a: f.sub(self.a, o.a), b: f.sub(self.b, o.b), ..*self }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let f = self.field();
        let a = f.add(f.mul(self.a, o.a), f.mul(f.mul(self.b, o.b), self.xi));
        let b = f.add(f.mul(self.a, o.b), f.mul(self.b, o.a));
        QuadExtElement { a, b, ..*self }
    }

    /// Norm `a² − ξ b²`, zero only for zero.
    pub fn norm(&self) -> u64 {
        let f = self.field();
        f.sub(f.mul(self.a, self.a), f.mul(self.xi, f.mul(self.b, self.b)))
    }

    pub fn inv(&self) -> Option<Self> {
        let f = self.field();
        let n = f.inv(self.norm())?;
        Some(QuadExtElement { a: f.mul(self.a, n), b: f.mul(f.neg(self.b), n), ..*self })
    }
}
