//! Decision and construction over the upper triangular group TL(2, p).
//!
//! Conjugating `[[a, b], [0, c]]` by `[[1, y], [0, 1]]` replaces `b` by
//! `b + (a − c)·y`, and conjugating by `diag(1, w)` replaces it by `b·w`.
//! The upper right entry of a product is `Σⱼ wⱼ·bⱼ` with
//! `wⱼ = a₁⋯aⱼ₋₁ · cⱼ₊₁⋯c_k`.

use super::Mat2;
use crate::cayley::{decide_cayley, solve_cayley};
use crate::equation::{normalize, verify, Solution, SphericalEquation};
use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupSpec};
use crate::numtheory::PrimeField;

fn constants(eq: &SphericalEquation) -> Result<(PrimeField, Vec<Mat2>)> {
    let p = match eq.group() {
        GroupSpec::Tl2 { p } => *p,
        _ => return Err(Error::UnsupportedShape("expected an equation over TL(2, p)".into())),
    };
    let f = PrimeField::new(p)?;
    let norm = normalize(eq);
    let mut ms = Vec::new();
    for c in norm.equation.constants() {
        let m = *c.as_matrix().ok_or(Error::MalformedElement("expected a matrix".into()))?;
        if !m.is_upper_triangular() {
            return Err(Error::NotTriangular);
        }
        ms.push(m);
    }
    Ok((f, ms))
}

fn weights(f: PrimeField, ms: &[Mat2]) -> Vec<u64> {
    let k = ms.len();
    let mut suffix = vec![1u64; k + 1];
    for j in (0..k).rev() {
        suffix[j] = f.mul(suffix[j + 1], ms[j].d);
    }
    let mut prefix = 1;
    let mut w = Vec::with_capacity(k);
    for j in 0..k {
        w.push(f.mul(prefix, suffix[j + 1]));
        prefix = f.mul(prefix, ms[j].a);
    }
    w
}

fn diagonal_ok(f: PrimeField, ms: &[Mat2]) -> bool {
    ms.iter().fold(1, |x, m| f.mul(x, m.a)) == 1 && ms.iter().fold(1, |x, m| f.mul(x, m.d)) == 1
}

pub fn decide_tl2(eq: &SphericalEquation) -> Result<bool> {
    let (f, ms) = constants(eq)?;
    if f.p() == 2 {
        return decide_cayley(eq);
    }
    if !diagonal_ok(f, &ms) {
        return Ok(false);
    }
    if ms.iter().any(|m| m.a != m.d) {
        return Ok(true);
    }
    Ok(ms.iter().filter(|m| m.b != 0).count() != 1)
}

pub fn solve_tl2(eq: &SphericalEquation) -> Result<Option<Solution>> {
    let (f, ms) = constants(eq)?;
    let p = f.p();
    if p == 2 {
        return solve_cayley(eq);
    }
    if !decide_tl2(eq)? {
        return Ok(None);
    }
    let w = weights(f, &ms);
    let mut zs = vec![Mat2::identity(p); ms.len()];
    if let Some(j0) = ms.iter().position(|m| m.a != m.d) {
        let rest = (0..ms.len()).filter(|&j| j != j0).fold(0, |acc, j| f.add(acc, f.mul(w[j], ms[j].b)));
        let beta = f.neg(f.div(rest, w[j0]));
        let y = f.div(f.sub(beta, ms[j0].b), f.sub(ms[j0].a, ms[j0].d));
        zs[j0] = Mat2::new(p, 1, y, 0, 1);
    } else {
        let nz: Vec<usize> = (0..ms.len()).filter(|&j| ms[j].b != 0).collect();
        if nz.len() >= 2 {
            let (i, l) = (nz[nz.len() - 2], nz[nz.len() - 1]);
            let rest = nz[..nz.len() - 2].iter().fold(0, |acc, &j| f.add(acc, f.mul(w[j], ms[j].b)));
            let term = |j: usize| f.mul(w[j], ms[j].b);
            let s_l = if f.add(rest, term(l)) != 0 { 1 } else { 2 };
            // w_i·s_i·b_i = −(rest + w_l·s_l·b_l)
            let s_i = f.div(f.neg(f.add(rest, f.mul(s_l, term(l)))), term(i));
            zs[i] = Mat2::new(p, 1, 0, 0, s_i);
            zs[l] = Mat2::new(p, 1, 0, 0, s_l);
        }
    }
    let norm = normalize(eq);
    let sol = norm.lift(&Solution::new(zs.into_iter().map(GroupElement::Matrix).collect()))?;
    if !verify(eq, &sol)? {
        return Err(Error::Internal("TL(2, p) solution failed verification".into()));
    }
    Ok(Some(sol))
}
