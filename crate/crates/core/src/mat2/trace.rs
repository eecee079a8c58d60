//! Realising a prescribed trace `tr(A·Z⁻¹BZ) = k`.

use super::{classify, odd_field, Mat2, MatTag, MatType};
use crate::error::{Error, Result};
use crate::numtheory::{solve_weighted_trace, Legendre, PrimeField, Residue, Rng};

fn check_pair(a: &Mat2, b: &Mat2) -> Result<PrimeField> {
    if a.modulus() != b.modulus() {
        return Err(Error::ModulusMismatch(a.modulus(), b.modulus()));
    }
    let f = odd_field(a.modulus())?;
    if !a.is_invertible() || !b.is_invertible() {
        return Err(Error::SingularMatrix);
    }
    if a.is_scalar() || b.is_scalar() {
        return Err(Error::ScalarInput);
    }
    Ok(f)
}

/// Whether some `Z` gives `tr(A·Z⁻¹BZ) = k`. The only obstruction is one
/// type-2 and one type-3 matrix with `k = s·tr` (`s` the repeated
/// eigenvalue, `tr` the trace of the type-2 matrix).
pub fn trace_reachable(a: &Mat2, b: &Mat2, k: u64) -> Result<bool> {
    let f = check_pair(a, b)?;
    let k = k % f.p();
    let (ta, tb) = (classify(a)?, classify(b)?);
    Ok(match (ta.tag, tb.tag) {
        (MatTag::Type2, MatTag::Type3) => k != f.mul(tb.s(), a.trace()),
        (MatTag::Type3, MatTag::Type2) => k != f.mul(ta.s(), b.trace()),
        _ => true,
    })
}

/// Some invertible `Z` with `tr(A·Z⁻¹BZ) = k`, or `None` when no such `Z`
/// exists.
pub fn trace_target(a: &Mat2, b: &Mat2, k: u64, rng: &mut Rng) -> Result<Option<Mat2>> {
    let f = check_pair(a, b)?;
    let k = k % f.p();
    let (ta, tb) = (classify(a)?, classify(b)?);
    let z = match (ta.tag, tb.tag) {
        (_, MatTag::Type1) => Some(split_case(f, a, &tb, k)),
        (MatTag::Type1, _) | (MatTag::Type3, MatTag::Type2) => {
            // tr(A·Z⁻¹BZ) = tr(B·Z·A·Z⁻¹)
            match trace_target(b, a, k, rng)? {
                Some(w) => Some(w.inv().ok_or(Error::SingularMatrix)?),
                None => None,
            }
        }
        (MatTag::Type2, MatTag::Type2) => Some(weighted_case(f, &ta, &tb, k, rng)?),
        (_, MatTag::Type3) => repeated_case(f, a, &tb, k),
        _ => return Err(Error::Internal("scalar input after check".into())),
    };
    if let Some(z) = z {
        if a.mul(&b.conj(&z)).trace() != k {
            return Err(Error::Internal(format!("trace target missed for {a:?}, {b:?}, k = {k}")));
        }
    }
    Ok(z)
}

/// `B = P·diag(s, t)·P⁻¹`, `Z = P·W`.
fn split_case(f: PrimeField, a: &Mat2, tb: &MatType, k: u64) -> Mat2 {
    let p = f.p();
    let (s, t) = (tb.canonical.a, tb.canonical.d);
    let e = f.sub(k, f.add(f.mul(a.a, s), f.mul(a.d, t)));
    let w = if a.b != 0 {
        let z = f.div(e, f.mul(f.sub(t, s), a.b));
        Mat2::new(p, 1, 0, z, 1)
    } else if a.c != 0 {
        let y = f.div(e, f.mul(f.sub(s, t), a.c));
        Mat2::new(p, 1, y, 0, 1)
    } else {
        let q = f.div(e, f.mul(f.sub(a.a, a.d), f.sub(s, t)));
        Mat2::new(p, 1, q, 1, f.add(1, q))
    };
    tb.basis.mul(&w)
}

/// Both of type 2: `A = Q·M·Q⁻¹`, `B = P·N·P⁻¹`, and with
/// `W = [[u, x], [0, 1]]` the trace of `M·W⁻¹NW` is `2ss' + t'u + (t − x²)/u`.
fn weighted_case(f: PrimeField, ta: &MatType, tb: &MatType, k: u64, rng: &mut Rng) -> Result<Mat2> {
    let p = f.p();
    let (s1, t1) = (ta.canonical.a, ta.canonical.b);
    let (s2, t2) = (tb.canonical.a, tb.canonical.b);
    let rest = f.sub(k, f.mul(2, f.mul(s1, s2)));
    let (u, x) = solve_weighted_trace(Residue::new(f, rest), Residue::new(f, t2), Residue::new(f, t1), rng)?;
    let w = Mat2::new(p, u.value(), x.value(), 0, 1);
    let qi = ta.basis.inv().ok_or(Error::SingularMatrix)?;
    Ok(tb.basis.mul(&w).mul(&qi))
}

/// `B = P·[[s,1],[0,s]]·P⁻¹`, `Z = P·W` with `W = [[x,y],[z,v]]`, `D = det W`.
/// Then the trace is `s(a+d) + (c v² + (a−d) v z − b z²)/D`.
fn repeated_case(f: PrimeField, a: &Mat2, tb: &MatType, k: u64) -> Option<Mat2> {
    let p = f.p();
    let s = tb.s();
    let q = |v: u64, z: u64| {
        f.sub(f.add(f.mul(a.c, f.mul(v, v)), f.mul(f.sub(a.a, a.d), f.mul(v, z))), f.mul(a.b, f.mul(z, z)))
    };
    let e = f.sub(k, f.mul(s, a.trace()));
    let (v, z, det) = if e != 0 {
        let (v, z) = [(1, 0), (0, 1), (1, 1)].into_iter().find(|&(v, z)| q(v, z) != 0)?;
        (v, z, f.div(q(v, z), e))
    } else if a.c == 0 {
        (1, 0, 1)
    } else {
        let amd = f.sub(a.a, a.d);
        let disc = f.add(f.mul(amd, amd), f.mul(4, f.mul(a.b, a.c)));
        if f.legendre(disc) == Legendre::NonResidue {
            return None;
        }
        let r = f.sqrt(disc).ok()?;
        (f.div(f.sub(r, amd), f.mul(2, a.c)), 1, 1)
    };
    let w = if v != 0 {
        Mat2::new(p, f.div(det, v), 0, z, v)
    } else {
        Mat2::new(p, 0, f.neg(f.div(det, z)), z, v)
    };
    Some(tb.basis.mul(&w))
}

/// For `A₃ = [[a,1],[0,a]]` and `B₃ = [[s,1],[0,s]]` returns `(Z₂, Z₃)` with
/// `A₃·Z₂⁻¹B₃Z₂ = Z₃⁻¹·T·Z₃` where `T = [[σas, 1], [0, σas]]`, `σ = ±1`.
pub fn type3_type3_solve(p: u64, a: u64, s: u64, sigma: i8) -> Result<(Mat2, Mat2)> {
    let f = odd_field(p)?;
    let (a, s) = (a % p, s % p);
    if a == 0 || s == 0 {
        return Err(Error::SingularMatrix);
    }
    let z2 = if sigma < 0 {
        // z = 1, x = 0, v = 1, y = −D with D = 1/(4as)
        let det = f.inv(f.mul(4, f.mul(a, s))).ok_or(Error::SingularMatrix)?;
        Mat2::new(p, 0, f.neg(det), 1, 1)
    } else {
        let bad = f.neg(f.div(s, a));
        let v = (1..p).find(|&v| v != bad).ok_or_else(|| Error::Internal("no admissible v".into()))?;
        Mat2::new(p, 1, 0, 0, v)
    };
    let a3 = Mat2::new(p, a, 1, 0, a);
    let b3 = Mat2::new(p, s, 1, 0, s);
    let x = a3.mul(&b3.conj(&z2));
    let lam = if sigma < 0 { f.neg(f.mul(a, s)) } else { f.mul(a, s) };
    let t = Mat2::new(p, lam, 1, 0, lam);
    let z3 = super::conjugator(&x, &t)?;
    Ok((z2, z3))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_invertible(p: u64) -> Vec<Mat2> {
        let mut v = Vec::new();
        for a in 0..p {
            for b in 0..p {
                for c in 0..p {
                    for d in 0..p {
                        let m = Mat2::new(p, a, b, c, d);
                        if m.is_invertible() && !m.is_scalar() {
                            v.push(m);
                        }
                    }
                }
            }
        }
        v
    }

    // trace set of A·B^Z by running over all Z
    fn traces(a: &Mat2, b: &Mat2, zs: &[Mat2]) -> Vec<bool> {
        let mut hit = vec![false; a.modulus() as usize];
        for z in zs {
            hit[a.mul(&b.conj(z)).trace() as usize] = true;
        }
        hit
    }

    #[test]
    fn matches_exhaustive_trace_sets_mod_5() {
        let p = 5;
        let all = all_invertible(p);
        let zs: Vec<Mat2> = all.iter().copied().chain([Mat2::identity(p)]).collect();
        let mut rng = Rng::new(7);
        // one representative per (trace, det) pair of each type
        let mut reps: Vec<Mat2> = Vec::new();
        for m in &all {
            if !reps.iter().any(|r| r.trace() == m.trace() && r.det() == m.det()) {
                reps.push(*m);
            }
        }
        for a in &reps {
            for b in &reps {
                let hit = traces(a, b, &zs);
                for k in 0..p {
                    assert_eq!(trace_reachable(a, b, k).unwrap(), hit[k as usize], "{a:?} {b:?} {k}");
                    let z = trace_target(a, b, k, &mut rng).unwrap();
                    assert_eq!(z.is_some(), hit[k as usize]);
                }
            }
        }
    }

    #[test]
    fn rejects_scalars() {
        let mut rng = Rng::new(1);
        let a = Mat2::scalar(7, 3);
        let b = Mat2::new(7, 1, 1, 0, 1);
        assert_eq!(trace_target(&a, &b, 2, &mut rng), Err(Error::ScalarInput));
    }

    #[test]
    fn type3_lemma_both_signs() {
        for p in [5u64, 7, 11] {
            for a in 1..p {
                for s in 1..p {
                    for sigma in [1i8, -1] {
                        let (z2, z3) = type3_type3_solve(p, a, s, sigma).unwrap();
                        let a3 = Mat2::new(p, a, 1, 0, a);
                        let b3 = Mat2::new(p, s, 1, 0, s);
                        let lam = if sigma < 0 { (p - a * s % p) % p } else { a * s % p };
                        let t = Mat2::new(p, lam, 1, 0, lam);
                        assert_eq!(a3.mul(&b3.conj(&z2)), t.conj(&z3));
                    }
                }
            }
        }
    }
}
