//! Unitriangular 4×4 matrices over ℤ_p. Entries are stored as
//! `(u₁₂, u₁₃, u₁₄, u₂₃, u₂₄, u₃₄)`.

use std::fmt;

use super::linalg::{linsolve_modp, solve_bilinear};
use crate::equation::{normalize, verify, Solution, SphericalEquation};
use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupSpec};
use crate::numtheory::PrimeField;

const POS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ut4Element {
    p: u64,
    e: [u64; 6],
}

impl fmt::Debug for Ut4Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UT4{:?} mod {}", self.e, self.p)
    }
}

impl Ut4Element {
    pub fn new(p: u64, entries: [u64; 6]) -> Self {
        Ut4Element { p, e: entries.map(|v| v % p) }
    }

    pub fn identity(p: u64) -> Self {
        Ut4Element { p, e: [0; 6] }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn entries(&self) -> [u64; 6] {
        self.e
    }

    pub fn is_reduced(&self) -> bool {
        self.e.iter().all(|&v| v < self.p)
    }

    pub fn is_identity(&self) -> bool {
        self.e == [0; 6]
    }

    pub fn to_matrix(&self) -> [[u64; 4]; 4] {
        let mut m = [[0; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1 % self.p;
        }
        for (k, &(i, j)) in POS.iter().enumerate() {
            m[i][j] = self.e[k];
        }
        m
    }

    fn from_matrix(p: u64, m: &[[u64; 4]; 4]) -> Self {
        Ut4Element { p, e: POS.map(|(i, j)| m[i][j]) }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let p = self.p as u128;
        let (a, b) = (self.to_matrix(), o.to_matrix());
        let mut c = [[0u64; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                c[i][j] = ((0..4).map(|k| a[i][k] as u128 * b[k][j] as u128).sum::<u128>() % p) as u64;
            }
        }
        Ut4Element::from_matrix(self.p, &c)
    }

    pub fn inv(&self) -> Self {
        let p = self.p as i128;
        let [u12, u13, u14, u23, u24, u34] = self.e.map(|v| v as i128);
        let r = |v: i128| v.rem_euclid(p) as u64;
        Ut4Element {
            p: self.p,
            e: [
                r(-u12),
                r(-u13 + u12 * u23 % p),
                r(-u14 + u12 * u24 % p + u13 * u34 % p - u12 * u23 % p * u34 % p),
                r(-u23),
                r(-u24 + u23 * u34 % p),
                r(-u34),
            ],
        }
    }
}

fn parts(eq: &SphericalEquation) -> Result<(PrimeField, Vec<[u64; 6]>)> {
    let p = match eq.group() {
        GroupSpec::Ut4 { p } => *p,
        _ => return Err(Error::UnsupportedShape("expected an equation over UT(4, p)".into())),
    };
    let norm = normalize(eq);
    let cs = norm
        .equation
        .constants()
        .iter()
        .map(|c| c.as_ut4().map(|u| u.e).ok_or(Error::MalformedElement("expected a UT(4) element".into())))
        .collect::<Result<Vec<_>>>()?;
    Ok((PrimeField::new(p)?, cs))
}

/// Affine form in the variables `x₀…x_{r−1}, y₀…y_{r−1}`.
#[derive(Clone)]
struct Affine {
    x: Vec<u64>,
    y: Vec<u64>,
    c: u64,
}

impl Affine {
    fn constant(r: usize, c: u64) -> Self {
        Affine { x: vec![0; r], y: vec![0; r], c }
    }
}

/// Quadratic form restricted to `xᵢyⱼ` cross terms.
struct Bilinear {
    xy: Vec<Vec<u64>>,
    x: Vec<u64>,
    y: Vec<u64>,
    c: u64,
}

impl Bilinear {
    fn new(r: usize) -> Self {
        Bilinear { xy: vec![vec![0; r]; r], x: vec![0; r], y: vec![0; r], c: 0 }
    }

    fn add_affine(&mut self, f: PrimeField, a: &Affine, k: u64) {
        for i in 0..a.x.len() {
            self.x[i] = f.add(self.x[i], f.mul(k, a.x[i]));
            self.y[i] = f.add(self.y[i], f.mul(k, a.y[i]));
        }
        self.c = f.add(self.c, f.mul(k, a.c));
    }

    /// Adds `k·u·v` where `u` only involves `x` and `v` only involves `y`.
    fn add_product(&mut self, f: PrimeField, u: &Affine, v: &Affine, k: u64) {
        assert!(u.y.iter().all(|&t| t == 0) && v.x.iter().all(|&t| t == 0), "xx or yy term");
        for i in 0..u.x.len() {
            for j in 0..v.y.len() {
                self.xy[i][j] = f.add(self.xy[i][j], f.mul(k, f.mul(u.x[i], v.y[j])));
            }
            self.x[i] = f.add(self.x[i], f.mul(k, f.mul(u.x[i], v.c)));
            self.y[i] = f.add(self.y[i], f.mul(k, f.mul(u.c, v.y[i])));
        }
        self.c = f.add(self.c, f.mul(k, f.mul(u.c, v.c)));
    }
}

fn conjugator(p: u64, x: u64, w: u64, u: u64, z: u64, v: u64, y: u64) -> Ut4Element {
    Ut4Element::new(p, [x, w, u, z, v, y])
}

/// Corner fix: `v` shifts the conjugate's `(1,4)` entry by `c₁₂·v`, `w` by
/// `−c₃₄·w`, and the product's corner moves by the same amount.
fn fix_corner(f: PrimeField, cs: &[[u64; 6]], zs: &mut [Ut4Element]) -> Result<()> {
    let p = f.p();
    let prod = cs
        .iter()
        .zip(zs.iter())
        .fold(Ut4Element::identity(p), |acc, (c, z)| acc.mul(&z.inv().mul(&Ut4Element::new(p, *c)).mul(z)));
    let r = prod.e[2];
    if r == 0 {
        return Ok(());
    }
    if let Some(j) = cs.iter().position(|c| c[0] != 0) {
        zs[j].e[4] = f.sub(zs[j].e[4], f.div(r, cs[j][0]));
    } else if let Some(j) = cs.iter().position(|c| c[5] != 0) {
        zs[j].e[1] = f.add(zs[j].e[1], f.div(r, cs[j][5]));
    } else {
        return Err(Error::Internal("no entry available to fix the corner".into()));
    }
    Ok(())
}

fn solve_normalized(f: PrimeField, cs: &[[u64; 6]]) -> Result<Option<Vec<Ut4Element>>> {
    let p = f.p();
    let r = cs.len();
    let sum = |k: usize| cs.iter().fold(0, |a, c| f.add(a, c[k]));
    if sum(0) != 0 || sum(3) != 0 || sum(5) != 0 {
        return Ok(None);
    }
    // cross terms of the (1,3) and (2,4) entries of the plain product
    let mut k13 = 0;
    let mut k24 = 0;
    let (mut p1, mut p4) = (0, 0);
    for c in cs {
        k13 = f.add(k13, f.mul(p1, c[3]));
        k24 = f.add(k24, f.mul(p4, c[5]));
        p1 = f.add(p1, c[0]);
        p4 = f.add(p4, c[3]);
    }
    let e1 = f.add(sum(1), k13);
    let e2 = f.add(sum(4), k24);
    let outer = cs.iter().any(|c| c[0] != 0 || c[5] != 0);
    let mid = cs.iter().position(|c| c[3] != 0);
    let mut zs = vec![Ut4Element::identity(p); r];
    match (outer, mid) {
        (true, Some(i0)) => {
            // d₂ = c₂ + c₁z − c₄x, d₅ = c₅ + c₄y − c₆z
            let c4 = cs[i0][3];
            zs[i0] = conjugator(p, f.div(e1, c4), 0, 0, 0, 0, f.neg(f.div(e2, c4)));
        }
        (true, None) => {
            let row1: Vec<u64> = cs.iter().map(|c| c[0]).collect();
            let row2: Vec<u64> = cs.iter().map(|c| f.neg(c[5])).collect();
            let Some(z) = linsolve_modp(f, &[row1, row2], &[f.neg(e1), f.neg(e2)]) else {
                return Ok(None);
            };
            for (i, zi) in z.into_iter().enumerate() {
                zs[i] = conjugator(p, 0, 0, 0, zi, 0, 0);
            }
        }
        (false, None) => {
            // d₂ = c₂, d₅ = c₅, d₃ = c₃ + c₂y − c₅x
            if e1 != 0 || e2 != 0 {
                return Ok(None);
            }
            let row: Vec<u64> =
                cs.iter().map(|c| f.neg(c[4])).chain(cs.iter().map(|c| c[1])).collect();
            let Some(sol) = linsolve_modp(f, &[row], &[f.neg(sum(2))]) else {
                return Ok(None);
            };
            for i in 0..r {
                zs[i] = conjugator(p, sol[i], 0, 0, 0, 0, sol[r + i]);
            }
            return Ok(Some(zs));
        }
        (false, Some(i0)) => {
            // Σc₄x = Σc₂, Σc₄y = −Σc₅, and the corner is
            // Σ (c₃ + c₂y − c₄xy − c₅x) with x_{i0}, y_{i0} eliminated.
            let c4inv = f.inv(cs[i0][3]).expect("non-zero");
            let mut xs: Vec<Affine> = (0..r)
                .map(|i| {
                    let mut a = Affine::constant(r, 0);
                    a.x[i] = 1;
                    a
                })
                .collect();
            let mut ys: Vec<Affine> = (0..r)
                .map(|i| {
                    let mut a = Affine::constant(r, 0);
                    a.y[i] = 1;
                    a
                })
                .collect();
            let mut xe = Affine::constant(r, f.mul(sum(1), c4inv));
            let mut ye = Affine::constant(r, f.mul(f.neg(sum(4)), c4inv));
            for i in (0..r).filter(|&i| i != i0) {
                xe.x[i] = f.neg(f.mul(cs[i][3], c4inv));
                ye.y[i] = f.neg(f.mul(cs[i][3], c4inv));
            }
            xs[i0] = xe;
            ys[i0] = ye;
            let mut q = Bilinear::new(r);
            for (i, c) in cs.iter().enumerate() {
                q.c = f.add(q.c, c[2]);
                q.add_affine(f, &ys[i], c[1]);
                q.add_affine(f, &xs[i], f.neg(c[4]));
                q.add_product(f, &xs[i], &ys[i], f.neg(c[3]));
            }
            let Some((x, y)) = solve_bilinear(f, &q.xy, &q.x, &q.y, q.c) else {
                return Ok(None);
            };
            let eval = |a: &Affine| {
                (0..r).fold(a.c, |acc, i| f.add(acc, f.add(f.mul(a.x[i], x[i]), f.mul(a.y[i], y[i]))))
            };
            for i in 0..r {
                zs[i] = conjugator(p, eval(&xs[i]), 0, 0, 0, 0, eval(&ys[i]));
            }
            return Ok(Some(zs));
        }
    }
    fix_corner(f, cs, &mut zs)?;
    Ok(Some(zs))
}

/// Case ladder on which of the superdiagonal entries vanish.
pub fn solve_ut4(eq: &SphericalEquation) -> Result<Option<Solution>> {
    let (f, cs) = parts(eq)?;
    let Some(zs) = solve_normalized(f, &cs)? else {
        return Ok(None);
    };
    let norm = normalize(eq);
    let sol = norm.lift(&Solution::new(zs.into_iter().map(GroupElement::Ut4).collect()))?;
    if !verify(eq, &sol)? {
        return Err(Error::Internal("UT(4) solution failed verification".into()));
    }
    Ok(Some(sol))
}

pub fn decide_ut4(eq: &SphericalEquation) -> Result<bool> {
    Ok(solve_ut4(eq)?.is_some())
}
