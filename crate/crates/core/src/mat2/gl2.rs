//! Decision and construction over GL(2, p).

use super::{classify, conjugate_check, conjugator, trace_reachable, trace_target, Mat2, MatTag};
use crate::cayley::{decide_cayley, solve_cayley};
use crate::equation::{normalize, verify, Normalized, Solution, SphericalEquation};
use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupSpec};
use crate::numtheory::{retry_budget, Rng};

/// Largest prime handled by enumeration instead of the closed criteria.
const SMALL_P: u64 = 2;

struct Folded {
    norm: Normalized,
    p: u64,
    det_ok: bool,
    /// product of the scalar constants
    lambda: Mat2,
    /// normalized slot and matrix of each non-scalar constant; the first
    /// absorbs `lambda`
    nonscalar: Vec<(usize, Mat2)>,
}

fn gl2_prime(eq: &SphericalEquation) -> Result<u64> {
    match eq.group() {
        GroupSpec::Gl2 { p } => Ok(*p),
        _ => Err(Error::UnsupportedShape("expected an equation over GL(2, p)".into())),
    }
}

fn fold(eq: &SphericalEquation) -> Result<Folded> {
    let p = gl2_prime(eq)?;
    let norm = normalize(eq);
    let mut det = 1u64;
    let mut lambda = Mat2::identity(p);
    let mut nonscalar = Vec::new();
    for (i, c) in norm.equation.constants().iter().enumerate() {
        let m = *c.as_matrix().ok_or(Error::MalformedElement("expected a matrix".into()))?;
        det = (det as u128 * m.det() as u128 % p as u128) as u64;
        if m.is_scalar() {
            lambda = lambda.mul(&m);
        } else {
            nonscalar.push((i, m));
        }
    }
    if let Some(first) = nonscalar.first_mut() {
        first.1 = lambda.mul(&first.1);
    }
    Ok(Folded { norm, p, det_ok: det == 1 % p, lambda, nonscalar })
}

/// Name of the procedure `decide_gl2` / `solve_gl2` use for this equation.
pub fn gl2_method(eq: &SphericalEquation) -> Result<&'static str> {
    let p = gl2_prime(eq)?;
    if p <= SMALL_P {
        return Ok("gl2-small-p-cayley");
    }
    let f = fold(eq)?;
    Ok(match f.nonscalar.len() {
        0 => "gl2-k0-scalar",
        1 => "gl2-k1",
        2 => "gl2-k2-conjugacy",
        3 => "gl2-k3-trace",
        _ => "gl2-k4-fold",
    })
}

pub fn decide_gl2(eq: &SphericalEquation) -> Result<bool> {
    let p = gl2_prime(eq)?;
    if p <= SMALL_P {
        return decide_cayley(eq);
    }
    let f = fold(eq)?;
    if !f.det_ok {
        return Ok(false);
    }
    let ms: Vec<Mat2> = f.nonscalar.iter().map(|x| x.1).collect();
    match ms.len() {
        0 => Ok(f.lambda.is_identity()),
        1 => Ok(false),
        2 => conjugate_check(&ms[0], &ms[1].inv().ok_or(Error::SingularMatrix)?),
        3 => three_reachable(&ms),
        _ => Ok(true),
    }
}

fn three_reachable(ms: &[Mat2]) -> Result<bool> {
    let tags = ms.iter().map(|m| classify(m).map(|t| t.tag)).collect::<Result<Vec<_>>>()?;
    let Some(c) = (0..3).rev().find(|&i| tags[i] != MatTag::Type3) else {
        return Ok(true);
    };
    let (a, b) = ((c + 1) % 3, (c + 2) % 3);
    let k = ms[c].inv().ok_or(Error::SingularMatrix)?.trace();
    trace_reachable(&ms[a], &ms[b], k)
}

/// Conjugators `z` with `M₀^{z₀}·M₁^{z₁}·M₂^{z₂} = I` for three non-scalar
/// matrices with determinant product 1, or `None` if there are none.
pub fn solve_three(ms: [Mat2; 3], rng: &mut Rng) -> Result<Option<[Mat2; 3]>> {
    let p = ms[0].modulus();
    let tags = ms.iter().map(|m| classify(m).map(|t| t.tag)).collect::<Result<Vec<_>>>()?;
    // a cyclic rotation of a product equal to I is again equal to I
    let (a, b, c, w) = match (0..3).rev().find(|&i| tags[i] != MatTag::Type3) {
        Some(c) => {
            let (a, b) = ((c + 1) % 3, (c + 2) % 3);
            let k = ms[c].inv().ok_or(Error::SingularMatrix)?.trace();
            match trace_target(&ms[a], &ms[b], k, rng)? {
                Some(w) => (a, b, c, w),
                None => return Ok(None),
            }
        }
        None => {
            let (t1, t2, t3) = (classify(&ms[0])?, classify(&ms[1])?, classify(&ms[2])?);
            let f = super::odd_field(p)?;
            let target = f.inv(t3.s()).ok_or(Error::SingularMatrix)?;
            let sigma = if f.mul(t1.s(), t2.s()) == target { 1 } else { -1 };
            let (z2, _) = super::type3_type3_solve(p, t1.s(), t2.s(), sigma)?;
            let pi = t1.basis.inv().ok_or(Error::SingularMatrix)?;
            (0, 1, 2, t2.basis.mul(&z2).mul(&pi))
        }
    };
    let x = ms[a].mul(&ms[b].conj(&w));
    let target = ms[c].inv().ok_or(Error::SingularMatrix)?;
    if !conjugate_check(&x, &target)? {
        return Err(Error::Internal("three-term product missed the target class".into()));
    }
    let v = conjugator(&x, &target)?;
    let mut z = [Mat2::identity(p); 3];
    z[b] = w;
    z[c] = v;
    Ok(Some(z))
}

pub fn solve_gl2(eq: &SphericalEquation, rng: &mut Rng) -> Result<Option<Solution>> {
    let p = gl2_prime(eq)?;
    if p <= SMALL_P {
        return solve_cayley(eq);
    }
    if !decide_gl2(eq)? {
        return Ok(None);
    }
    let f = fold(eq)?;
    let n = f.norm.equation.num_constants();
    let mut zs = vec![Mat2::identity(f.p); n];
    let ms: Vec<Mat2> = f.nonscalar.iter().map(|x| x.1).collect();
    let slots: Vec<usize> = f.nonscalar.iter().map(|x| x.0).collect();
    match ms.len() {
        0 => {}
        2 => {
            // M₀·M₁^z = I  ⇔  M₁^z = M₀⁻¹
            let z = conjugator(&ms[0].inv().ok_or(Error::SingularMatrix)?, &ms[1])?;
            zs[slots[1]] = z;
        }
        3 => {
            let z = solve_three([ms[0], ms[1], ms[2]], rng)?
                .ok_or_else(|| Error::Internal("decided solvable but no three-term solution".into()))?;
            for (i, zi) in z.into_iter().enumerate() {
                zs[slots[i]] = zi;
            }
        }
        _ => {
            let budget = retry_budget(f.p);
            let mut found = None;
            for _ in 0..budget {
                let mut us = vec![Mat2::identity(f.p); ms.len()];
                let mut y = ms[2];
                for i in 3..ms.len() {
                    us[i] = Mat2::random_invertible(f.p, rng);
                    y = y.mul(&ms[i].conj(&us[i]));
                }
                if y.is_scalar() {
                    continue;
                }
                if let Some(z) = solve_three([ms[0], ms[1], y], rng)? {
                    found = Some((us, z));
                    break;
                }
            }
            let (us, z) = found.ok_or(Error::RetryExhausted(budget))?;
            zs[slots[0]] = z[0];
            zs[slots[1]] = z[1];
            for i in 2..ms.len() {
                zs[slots[i]] = us[i].mul(&z[2]);
            }
        }
    }
    let sol = Solution::new(zs.into_iter().map(GroupElement::Matrix).collect());
    let lifted = f.norm.lift(&sol)?;
    if !verify(eq, &lifted)? {
        return Err(Error::Internal("GL(2, p) solution failed verification".into()));
    }
    Ok(Some(lifted))
}
