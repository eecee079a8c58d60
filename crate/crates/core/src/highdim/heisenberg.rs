//! Generalized Heisenberg groups: unitriangular `n×n` matrices over ℤ_p
//! supported on the first row, last column and the corner, written as
//! triples `(α₁, a₂, α₃)` with `α₁, α₃ ∈ ℤ_p^{n−2}`.

use std::fmt;

use crate::equation::{normalize, verify, Solution, SphericalEquation};
use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupSpec};
use crate::numtheory::PrimeField;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HeisenbergElement {
    p: u64,
    alpha1: Vec<u64>,
    a2: u64,
    alpha3: Vec<u64>,
}

impl fmt::Debug for HeisenbergElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {}, {:?}) mod {}", self.alpha1, self.a2, self.alpha3, self.p)
    }
}

fn dot(p: u64, x: &[u64], y: &[u64]) -> u64 {
    x.iter().zip(y).fold(0u128, |acc, (&a, &b)| (acc + a as u128 * b as u128) % p as u128) as u64
}

impl HeisenbergElement {
    /// Entries are reduced modulo `p`. Panics if the vectors differ in length.
    pub fn new(p: u64, alpha1: Vec<u64>, a2: u64, alpha3: Vec<u64>) -> Self {
        assert_eq!(alpha1.len(), alpha3.len(), "α₁ and α₃ must have equal length");
        HeisenbergElement {
            p,
            alpha1: alpha1.into_iter().map(|v| v % p).collect(),
            a2: a2 % p,
            alpha3: alpha3.into_iter().map(|v| v % p).collect(),
        }
    }

    pub fn identity(n: usize, p: u64) -> Self {
        HeisenbergElement { p, alpha1: vec![0; n - 2], a2: 0, alpha3: vec![0; n - 2] }
    }

    /// Matrix size `n`.
    pub fn dim(&self) -> usize {
        self.alpha1.len() + 2
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn alpha1(&self) -> &[u64] {
        &self.alpha1
    }

    pub fn a2(&self) -> u64 {
        self.a2
    }

    pub fn alpha3(&self) -> &[u64] {
        &self.alpha3
    }

    pub fn is_reduced(&self) -> bool {
        self.a2 < self.p && self.alpha1.iter().chain(&self.alpha3).all(|&v| v < self.p)
    }

    pub fn is_identity(&self) -> bool {
        self.a2 == 0 && self.alpha1.iter().chain(&self.alpha3).all(|&v| v == 0)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let p = self.p;
        let add = |x: &[u64], y: &[u64]| x.iter().zip(y).map(|(a, b)| (a + b) % p).collect();
        HeisenbergElement {
            p,
            alpha1: add(&self.alpha1, &o.alpha1),
            a2: ((self.a2 as u128 + o.a2 as u128 + dot(p, &self.alpha1, &o.alpha3) as u128) % p as u128) as u64,
            alpha3: add(&self.alpha3, &o.alpha3),
        }
    }

    pub fn inv(&self) -> Self {
        let p = self.p;
        let neg = |x: &[u64]| x.iter().map(|&a| (p - a) % p).collect();
        HeisenbergElement {
            p,
            alpha1: neg(&self.alpha1),
            a2: (dot(p, &self.alpha1, &self.alpha3) + p - self.a2) % p,
            alpha3: neg(&self.alpha3),
        }
    }

    /// The full `n×n` matrix.
    pub fn to_matrix(&self) -> Vec<Vec<u64>> {
        let n = self.dim();
        let mut m = vec![vec![0; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1 % self.p;
        }
        for j in 0..n - 2 {
            m[0][j + 1] = self.alpha1[j];
            m[j + 1][n - 1] = self.alpha3[j];
        }
        m[0][n - 1] = self.a2;
        m
    }
}

fn parts(eq: &SphericalEquation) -> Result<(PrimeField, usize, Vec<HeisenbergElement>)> {
    let (n, p) = match eq.group() {
        GroupSpec::Heisenberg { n, p } => (*n, *p),
        _ => return Err(Error::UnsupportedShape("expected an equation over a Heisenberg group".into())),
    };
    let norm = normalize(eq);
    let cs = norm
        .equation
        .constants()
        .iter()
        .map(|c| c.as_heisenberg().cloned().ok_or(Error::MalformedElement("expected a Heisenberg element".into())))
        .collect::<Result<Vec<_>>>()?;
    Ok((PrimeField::new(p)?, n, cs))
}

/// Corner entry of the product of the constants themselves.
fn base_corner(f: PrimeField, cs: &[HeisenbergElement]) -> u64 {
    let mut acc = cs.first().map_or(0, |c| c.a2);
    let mut prefix = cs.first().map_or(vec![], |c| c.alpha1.clone());
    for c in cs.iter().skip(1) {
        acc = f.add(acc, f.add(c.a2, dot(f.p(), &prefix, &c.alpha3)));
        for (x, &y) in prefix.iter_mut().zip(&c.alpha1) {
            *x = f.add(*x, y);
        }
    }
    acc
}

fn sums_vanish(f: PrimeField, cs: &[HeisenbergElement]) -> bool {
    let d = cs.first().map_or(0, |c| c.alpha1.len());
    (0..d).all(|j| {
        cs.iter().fold(0, |a, c| f.add(a, c.alpha1[j])) == 0 && cs.iter().fold(0, |a, c| f.add(a, c.alpha3[j])) == 0
    })
}

/// Conjugating `(ζ₁, c, ζ₃)` by `(χ, g, γ)` gives `(ζ₁, c + ζ₁·γ − χ·ζ₃, ζ₃)`,
/// so the equation is solvable iff `Σζ₁ = Σζ₃ = 0` and either some `ζ` entry
/// is non-zero or the corner of the plain product vanishes.
pub fn decide_heisenberg(eq: &SphericalEquation) -> Result<bool> {
    let (f, _, cs) = parts(eq)?;
    if !sums_vanish(f, &cs) {
        return Ok(false);
    }
    let any = cs.iter().any(|c| c.alpha1.iter().chain(&c.alpha3).any(|&v| v != 0));
    Ok(any || base_corner(f, &cs) == 0)
}

pub fn solve_heisenberg(eq: &SphericalEquation) -> Result<Option<Solution>> {
    if !decide_heisenberg(eq)? {
        return Ok(None);
    }
    let (f, n, cs) = parts(eq)?;
    let p = f.p();
    let base = base_corner(f, &cs);
    let mut zs: Vec<HeisenbergElement> = vec![HeisenbergElement::identity(n, p); cs.len()];
    if base != 0 {
        'outer: for (i, c) in cs.iter().enumerate() {
            for j in 0..n - 2 {
                if c.alpha1[j] != 0 {
                    zs[i].alpha3[j] = f.neg(f.div(base, c.alpha1[j]));
                    break 'outer;
                }
                if c.alpha3[j] != 0 {
                    zs[i].alpha1[j] = f.div(base, c.alpha3[j]);
                    break 'outer;
                }
            }
        }
    }
    let norm = normalize(eq);
    let sol = norm.lift(&Solution::new(zs.into_iter().map(GroupElement::Heisenberg).collect()))?;
    if !verify(eq, &sol)? {
        return Err(Error::Internal("Heisenberg solution failed verification".into()));
    }
    Ok(Some(sol))
}
