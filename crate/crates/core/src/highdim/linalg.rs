//! Linear and bilinear equations over ℤ_p.

use crate::numtheory::PrimeField;

/// One solution of `A·x = b` over ℤ_p (free variables set to 0), or `None`
/// if the system is inconsistent. Rows of `a` must all have the same length.
pub fn linsolve_modp(f: PrimeField, a: &[Vec<u64>], b: &[u64]) -> Option<Vec<u64>> {
    assert_eq!(a.len(), b.len(), "row count differs from right-hand side");
    let cols = a.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<u64>> = a
        .iter()
        .zip(b)
        .map(|(row, &bi)| row.iter().map(|&v| v % f.p()).chain([bi % f.p()]).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, piv);
        let inv = f.inv(m[r][c]).expect("non-zero pivot");
        for v in m[r].iter_mut() {
            *v = f.mul(*v, inv);
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let factor = row[c];
                for (v, &pv) in row.iter_mut().zip(&pivot_row) {
                    *v = f.sub(*v, f.mul(factor, pv));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if m[r..].iter().any(|row| row[cols] != 0) {
        return None;
    }
    let mut x = vec![0; cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = m[i][cols];
    }
    Some(x)
}

/// Solves `Σ αᵢⱼ xᵢ yⱼ + Σ βᵢ xᵢ + Σ δⱼ yⱼ + ζ = 0` for vectors `x`, `y`.
pub fn solve_bilinear(
    f: PrimeField,
    alpha: &[Vec<u64>],
    beta: &[u64],
    delta: &[u64],
    zeta: u64,
) -> Option<(Vec<u64>, Vec<u64>)> {
    let (n, m) = (beta.len(), delta.len());
    let hit = (0..n).flat_map(|i| (0..m).map(move |j| (i, j))).find(|&(i, j)| !alpha[i][j].is_multiple_of(f.p()));
    let Some((i0, j0)) = hit else {
        let row: Vec<u64> = beta.iter().chain(delta).copied().collect();
        let sol = linsolve_modp(f, &[row], &[f.neg(zeta % f.p())])?;
        return Some((sol[..n].to_vec(), sol[n..].to_vec()));
    };
    // all other variables 0: x·(α·y + β) = −(δ·y + ζ)
    let a = alpha[i0][j0] % f.p();
    let (mut x, mut y) = (vec![0; n], vec![0; m]);
    for yv in [0, 1] {
        let den = f.add(f.mul(a, yv), beta[i0] % f.p());
        if den != 0 {
            x[i0] = f.neg(f.div(f.add(f.mul(delta[j0] % f.p(), yv), zeta % f.p()), den));
            y[j0] = yv;
            return Some((x, y));
        }
    }
    unreachable!("α ≠ 0 makes α·y + β non-zero for y = 0 or y = 1")
}
