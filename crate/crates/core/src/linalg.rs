//! Small dense helpers shared by the solvers.

use nalgebra::DMatrix;

use crate::error::{NamingError, Result};
use crate::tolerance::Tolerances;

/// `κ₁(A) = ‖A‖₁ ‖A⁻¹‖₁`, infinite when `A` is singular.
pub(crate) fn cond_1(a: &DMatrix<f64>) -> f64 {
    let norm1 = |m: &DMatrix<f64>| m.column_iter().map(|c| c.iter().map(|x| x.abs()).sum::<f64>()).fold(0.0, f64::max);
    match a.clone().lu().try_inverse() {
        Some(inv) => norm1(a) * norm1(&inv),
        None => f64::INFINITY,
    }
}

/// Smallest pairwise gap between nodes.
pub(crate) fn min_gap(nodes: &[f64]) -> f64 {
    let mut gap = f64::INFINITY;
    for (i, a) in nodes.iter().enumerate() {
        for b in &nodes[i + 1..] {
            gap = gap.min((a - b).abs());
        }
    }
    gap
}

/// Numerical rank of a symmetric positive semidefinite matrix by Cholesky
/// with diagonal pivoting. Pivots at or below `drop` end the factorization.
/// Returns `None` when the leftover Schur complement is not negligible,
/// i.e. the matrix is indefinite beyond the tolerance.
pub(crate) fn psd_rank(h: &DMatrix<f64>, drop: f64) -> Option<usize> {
    let m = h.nrows();
    let mut a = h.clone();
    for k in 0..m {
        let (p, piv) =
            (k..m)
                .map(|i| (i, a[(i, i)]))
                .fold((k, f64::NEG_INFINITY), |best, cur| if cur.1 > best.1 { cur } else { best });
        if piv <= drop {
            let slack = 2.0 * drop;
            for i in k..m {
                for j in k..m {
                    if a[(i, j)].abs() > slack {
                        return None;
                    }
                }
            }
            return Some(k);
        }
        a.swap_rows(k, p);
        a.swap_columns(k, p);
        let d = a[(k, k)].sqrt();
        for i in k + 1..m {
            a[(i, k)] /= d;
        }
        for i in k + 1..m {
            for j in k + 1..m {
                let update = a[(i, k)] * a[(j, k)];
                a[(i, j)] -= update;
            }
        }
    }
    Some(m)
}

/// Solves `Σ_j c_j u_j^k = rhs_k` for `k = 0..nodes.len()`.
pub(crate) fn solve_vandermonde(nodes: &[f64], rhs: &[f64], tol: &Tolerances) -> Result<Vec<f64>> {
    let k = nodes.len();
    debug_assert!(rhs.len() >= k);
    if k == 0 {
        return Ok(Vec::new());
    }
    let scale = nodes.iter().fold(1.0f64, |s, u| s.max(u.abs()));
    if min_gap(nodes) <= tol.t_rel * scale {
        return Err(NamingError::DegenerateNodes);
    }
    let v = DMatrix::from_fn(k, k, |i, j| nodes[j].powi(i as i32));
    let estimate = cond_1(&v);
    if !estimate.is_finite() {
        return Err(NamingError::DegenerateNodes);
    }
    if estimate > tol.cond_max {
        return Err(NamingError::ConditioningFailure { estimate });
    }
    let b = nalgebra::DVector::from_column_slice(&rhs[..k]);
    let c = v.lu().solve(&b).ok_or(NamingError::DegenerateNodes)?;
    Ok(c.iter().copied().collect())
}
