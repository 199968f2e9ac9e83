//! Small dense helpers. Dimensions here never exceed a dozen, so plain
//! `Vec<f64>` rows are used throughout.

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale(a: &[f64], s: f64) -> Vec<f64> {
    a.iter().map(|x| x * s).collect()
}

pub fn axpy(y: &mut [f64], s: f64, x: &[f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += s * xi;
    }
}

pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

pub fn mean(points: &[Vec<f64>]) -> Vec<f64> {
    let d = points[0].len();
    let mut m = vec![0.0; d];
    for p in points {
        axpy(&mut m, 1.0, p);
    }
    scale(&m, 1.0 / points.len() as f64)
}

/// Component of `v` orthogonal to the orthonormal rows of `basis`
/// (modified Gram-Schmidt, applied twice).
pub fn residual(basis: &[Vec<f64>], v: &[f64]) -> Vec<f64> {
    let mut r = v.to_vec();
    for _ in 0..2 {
        for b in basis {
            let c = dot(&r, b);
            axpy(&mut r, -c, b);
        }
    }
    r
}

/// Greedy orthonormalisation. Vectors whose residual norm is at most `tol`
/// times their own norm are dropped.
pub fn orthonormalize(vectors: &[Vec<f64>], tol: f64) -> Vec<Vec<f64>> {
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for v in vectors {
        let nv = norm(v);
        if nv == 0.0 {
            continue;
        }
        let r = residual(&basis, v);
        let nr = norm(&r);
        if nr > tol * nv {
            basis.push(scale(&r, 1.0 / nr));
        }
    }
    basis
}

/// Orthonormal basis of the orthogonal complement of span(`basis`) in R^d.
/// `basis` must already be orthonormal.
pub fn complement(basis: &[Vec<f64>], d: usize) -> Vec<Vec<f64>> {
    let mut full = basis.to_vec();
    let mut out = Vec::new();
    // Pick axes by largest residual for stability.
    while full.len() < d {
        let mut best: Option<(f64, Vec<f64>)> = None;
        for k in 0..d {
            let mut e = vec![0.0; d];
            e[k] = 1.0;
            let r = residual(&full, &e);
            let nr = norm(&r);
            if best.as_ref().is_none_or(|(bn, _)| nr > *bn) {
                best = Some((nr, r));
            }
        }
        let (nr, r) = best.expect("d > 0");
        let u = scale(&r, 1.0 / nr);
        full.push(u.clone());
        out.push(u);
    }
    out
}

/// Determinant by partial-pivoted elimination.
pub fn det(mut m: Vec<Vec<f64>>) -> f64 {
    let n = m.len();
    let mut sign = 1.0;
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))
            .unwrap();
        if m[piv][col] == 0.0 {
            return 0.0;
        }
        if piv != col {
            m.swap(piv, col);
            sign = -sign;
        }
        for r in col + 1..n {
            let f = m[r][col] / m[col][col];
            if f != 0.0 {
                for c in col..n {
                    m[r][c] -= f * m[col][c];
                }
            }
        }
    }
    sign * (0..n).map(|i| m[i][i]).product::<f64>()
}

/// Solves `a x = b` by partial-pivoted Gaussian elimination.
/// Returns `None` when a pivot vanishes.
pub fn solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = a.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&x, &y| a[x][col].abs().total_cmp(&a[y][col].abs()))?;
        if a[piv][col] == 0.0 {
            return None;
        }
        a.swap(piv, col);
        b.swap(piv, col);
        for r in col + 1..n {
            let f = a[r][col] / a[col][col];
            if f != 0.0 {
                for c in col..n {
                    a[r][c] -= f * a[col][c];
                }
                b[r] -= f * b[col];
            }
        }
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let s: f64 = (i + 1..n).map(|j| a[i][j] * x[j]).sum();
        x[i] = (b[i] - s) / a[i][i];
    }
    Some(x)
}

/// Inverse via repeated solves.
pub fn inverse(a: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    let n = a.len();
    let mut cols = Vec::with_capacity(n);
    for k in 0..n {
        let mut e = vec![0.0; n];
        e[k] = 1.0;
        cols.push(solve(a.to_vec(), e)?);
    }
    Some((0..n).map(|i| (0..n).map(|j| cols[j][i]).collect()).collect())
}

/// Maximum absolute column sum.
pub fn norm_1(a: &[Vec<f64>]) -> f64 {
    let n = a.first().map_or(0, Vec::len);
    (0..n)
        .map(|j| a.iter().map(|row| row[j].abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

pub fn mat_vec(a: &[Vec<f64>], x: &[f64]) -> Vec<f64> {
    a.iter().map(|row| dot(row, x)).collect()
}

pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut r = 1.0;
    for i in 0..k {
        r = r * (n - i) as f64 / (i + 1) as f64;
    }
    r.round()
}

pub fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_and_solve_agree_on_small_system() {
        let a = vec![vec![2.0, 1.0, 0.0], vec![1.0, 3.0, 1.0], vec![0.0, 1.0, 4.0]];
        assert!((det(a.clone()) - 18.0).abs() < 1e-12);
        let x = solve(a.clone(), vec![3.0, 5.0, 5.0]).unwrap();
        for (xi, want) in x.iter().zip([1.0, 1.0, 1.0]) {
            assert!((xi - want).abs() < 1e-12);
        }
    }

    #[test]
    fn complement_is_orthonormal() {
        let b = orthonormalize(&[vec![1.0, 1.0, 0.0]], 1e-12);
        let c = complement(&b, 3);
        assert_eq!(c.len(), 2);
        for u in &c {
            assert!((norm(u) - 1.0).abs() < 1e-12);
            assert!(dot(u, &b[0]).abs() < 1e-12);
        }
        assert!(dot(&c[0], &c[1]).abs() < 1e-12);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(10, 5), 252.0);
        assert_eq!(binomial(4, 0), 1.0);
        assert_eq!(binomial(3, 4), 0.0);
        assert_eq!(factorial(5), 120.0);
    }
}
