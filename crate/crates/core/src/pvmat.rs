//! Pseudo-Vandermonde matrices: Vandermonde columns for nodes `u_1..u_q`
//! followed by derivative columns for `u_1..u_{n+1-q}`.
//!
//! These are exactly the Jacobians of the naming map `(c, t) ↦ Σ c_j C_n(t_j)`
//! (with the derivative columns scaled by `c_j`), which is why nonsingularity
//! for distinct nodes matters for the solvers.

use nalgebra::DMatrix;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{NamingError, Result};
use crate::linalg;
use crate::naming::MomentPoint;
use crate::tolerance::{Tolerances, HARD_MAX_N};

/// Shape of a pseudo-Vandermonde matrix: size `(n+1)×(n+1)` with `q` nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct PvMatrix {
    n: usize,
    nodes: Vec<f64>,
}

impl PvMatrix {
    /// Requires `(n+1)/2 ≤ q ≤ n+1` where `q = nodes.len()`.
    pub fn new(n: usize, nodes: Vec<f64>) -> Result<Self> {
        let q = nodes.len();
        if n > HARD_MAX_N {
            return Err(NamingError::DimensionCap { n, cap: HARD_MAX_N });
        }
        if 2 * q < n + 1 || q > n + 1 {
            return Err(NamingError::InvalidShape(format!("need (n+1)/2 <= q <= n+1, got n = {n}, q = {q}")));
        }
        if nodes.iter().any(|u| !u.is_finite()) {
            return Err(NamingError::InvalidShape("nodes must be finite".into()));
        }
        Ok(Self { n, nodes })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Number of derivative columns, `n + 1 - q`.
    pub fn derivative_columns(&self) -> usize {
        self.n + 1 - self.q()
    }

    pub fn build(&self) -> DMatrix<f64> {
        let size = self.n + 1;
        let q = self.q();
        DMatrix::from_fn(size, size, |k, col| {
            if col < q {
                self.nodes[col].powi(k as i32)
            } else if k == 0 {
                0.0
            } else {
                k as f64 * self.nodes[col - q].powi(k as i32 - 1)
            }
        })
    }

    /// Determinant by the column-elimination recursion: clear the first
    /// column with row operations, expand, pull `(u_j - u_1)` out of the
    /// remaining Vandermonde columns and out of the derivative columns after
    /// subtracting their Vandermonde partners. What is left is the matrix of
    /// size `n` on nodes `(u_2, ..., u_q, u_1)` (or `(u_2, ..., u_q)` when
    /// there were no derivative columns), down to the `1×1` matrix `[1]`.
    pub fn det_recursive(&self) -> Result<f64> {
        let scale = self.nodes.iter().fold(1.0f64, |s, u| s.max(u.abs()));
        if linalg::min_gap(&self.nodes) <= Tolerances::default().t_rel * scale {
            return Err(NamingError::DegenerateNodes);
        }
        let mut det = 1.0;
        let mut n = self.n;
        let mut nodes = self.nodes.clone();
        while n > 0 {
            let q = nodes.len();
            let u1 = nodes[0];
            for &u in &nodes[1..q] {
                det *= u - u1;
            }
            let derivs = n + 1 - q;
            for &u in nodes.iter().take(derivs).skip(1) {
                det *= u - u1;
            }
            if derivs == 0 {
                nodes.remove(0);
            } else {
                nodes.rotate_left(1);
            }
            n -= 1;
        }
        debug_assert_eq!(nodes.len(), 1);
        Ok(det)
    }

    /// Determinant by LU elimination in exact rational arithmetic on the
    /// nodes as given, rounded once at the end. Slow but independent of
    /// [`PvMatrix::det_recursive`] and free of the conditioning loss of
    /// floating-point elimination.
    #[allow(clippy::needless_range_loop)]
    pub fn det_lu(&self) -> f64 {
        let size = self.n + 1;
        let q = self.q();
        let nodes: Vec<BigRational> =
            self.nodes.iter().map(|&u| BigRational::from_float(u).expect("nodes are finite")).collect();
        let mut a: Vec<Vec<BigRational>> = (0..size)
            .map(|k| {
                (0..size)
                    .map(|col| {
                        if col < q {
                            num_traits::pow(nodes[col].clone(), k)
                        } else if k == 0 {
                            BigRational::zero()
                        } else {
                            num_traits::pow(nodes[col - q].clone(), k - 1) * BigRational::from_integer(k.into())
                        }
                    })
                    .collect()
            })
            .collect();
        let mut det = BigRational::one();
        for k in 0..size {
            let Some(p) = (k..size).find(|&i| !a[i][k].is_zero()) else {
                return 0.0;
            };
            if p != k {
                a.swap(p, k);
                det = -det;
            }
            let pivot = a[k][k].clone();
            for i in k + 1..size {
                if a[i][k].is_zero() {
                    continue;
                }
                let f = &a[i][k] / &pivot;
                for j in k..size {
                    let delta = &f * &a[k][j];
                    a[i][j] -= delta;
                }
            }
            det *= pivot;
        }
        det.to_f64().unwrap_or(f64::NAN)
    }

    /// Determinant by partially pivoted LU in `f64`; fast, but its relative
    /// error grows with the condition number.
    pub fn det_lu_f64(&self) -> f64 {
        self.build().lu().determinant()
    }
}

/// Weights `c` with `Σ_j c_j t_j^k = v_k` for `k = 0..nodes.len()` (`v_0 = 1`).
pub fn solve_weights(nodes: &[f64], point: &MomentPoint) -> Result<Vec<f64>> {
    solve_weights_with(nodes, point, &Tolerances::default())
}

pub fn solve_weights_with(nodes: &[f64], point: &MomentPoint, tol: &Tolerances) -> Result<Vec<f64>> {
    if nodes.is_empty() || nodes.len() > point.n() + 1 {
        return Err(NamingError::InvalidShape(format!("{} nodes against a point with n = {}", nodes.len(), point.n())));
    }
    linalg::solve_vandermonde(nodes, &point.lifted(), tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::naming::lift;

    /// Laplace expansion along the first row; exponential but independent of
    /// both determinant routes.
    fn cofactor_det(m: &DMatrix<f64>) -> f64 {
        let size = m.nrows();
        if size == 1 {
            return m[(0, 0)];
        }
        let mut total = 0.0;
        for col in 0..size {
            let minor = m.clone().remove_row(0).remove_column(col);
            let sign = if col % 2 == 0 { 1.0 } else { -1.0 };
            total += sign * m[(0, col)] * cofactor_det(&minor);
        }
        total
    }

    #[test]
    fn build_layouts() {
        assert_eq!(PvMatrix::new(0, vec![0.7]).unwrap().build(), DMatrix::from_element(1, 1, 1.0));
        let (u1, u2) = (0.3, -1.5);
        let m = PvMatrix::new(2, vec![u1, u2]).unwrap().build();
        let expected = DMatrix::from_row_slice(3, 3, &[1.0, 1.0, 0.0, u1, u2, 1.0, u1 * u1, u2 * u2, 2.0 * u1]);
        assert_eq!(m, expected);
        let m = PvMatrix::new(1, vec![0.0, 1.0]).unwrap().build();
        assert_eq!(m, DMatrix::from_row_slice(2, 2, &[1.0, 1.0, 0.0, 1.0]));
    }

    #[test]
    fn shape_is_checked() {
        assert!(matches!(PvMatrix::new(3, vec![0.0]), Err(NamingError::InvalidShape(_))));
        assert!(matches!(PvMatrix::new(1, vec![0.0, 1.0, 2.0]), Err(NamingError::InvalidShape(_))));
        assert!(PvMatrix::new(3, vec![0.0, 1.0]).is_ok());
    }

    #[test]
    fn determinant_examples() {
        let one = PvMatrix::new(0, vec![0.25]).unwrap();
        assert_eq!(one.det_recursive().unwrap(), 1.0);
        assert_eq!(one.det_lu(), 1.0);

        let m = PvMatrix::new(2, vec![0.0, 1.0]).unwrap();
        // frozen from the cofactor oracle: -(u1 - u2)^2
        assert_eq!(cofactor_det(&m.build()), -1.0);
        assert_eq!(m.det_recursive().unwrap(), -1.0);
        assert!((m.det_lu() + 1.0).abs() < 1e-15);

        let v = PvMatrix::new(1, vec![0.0, 1.0]).unwrap();
        assert_eq!(v.det_recursive().unwrap(), 1.0);
    }

    #[test]
    fn duplicate_nodes() {
        let m = PvMatrix::new(2, vec![0.5, 0.5]).unwrap();
        assert_eq!(m.det_recursive(), Err(NamingError::DegenerateNodes));
        assert_eq!(m.det_lu(), 0.0);
        assert!(m.det_lu_f64().abs() <= 1e-12);
    }

    #[test]
    fn exact_lu_survives_clustered_nodes() {
        // condition number near 1e10; the f64 route loses about 7 digits here
        let nodes = vec![
            -1.4944246195708786,
            -1.2461086771632612,
            -1.1347880823746583,
            -1.0277826406462909,
            -0.3708725163527511,
        ];
        let m = PvMatrix::new(8, nodes).unwrap();
        let rec = m.det_recursive().unwrap();
        assert!((m.det_lu() - rec).abs() <= 1e-14 * rec.abs());
        assert!((m.det_lu_f64() - rec).abs() <= 1e-5 * rec.abs());
    }

    #[test]
    fn recursion_matches_cofactor_oracle() {
        let cases: &[(usize, &[f64])] = &[
            (3, &[0.1, 0.9]),
            (3, &[-0.5, 0.2, 1.3]),
            (4, &[0.0, 0.5, 1.0]),
            (5, &[-1.0, 0.25, 0.8]),
            (5, &[-1.0, -0.2, 0.4, 1.7]),
            (6, &[0.1, 0.35, 0.6, 0.95]),
        ];
        for (n, nodes) in cases {
            let m = PvMatrix::new(*n, nodes.to_vec()).unwrap();
            let oracle = cofactor_det(&m.build());
            let rec = m.det_recursive().unwrap();
            assert!((rec - oracle).abs() <= 1e-12 * oracle.abs().max(1.0), "{n} {nodes:?}: {rec} vs {oracle}");
        }
    }

    #[test]
    fn solve_weights_examples() {
        let p = MomentPoint::new(vec![0.5]).unwrap();
        let c = solve_weights(&[0.25, 0.75], &p).unwrap();
        assert!((c[0] - 0.5).abs() < 1e-15 && (c[1] - 0.5).abs() < 1e-15);

        let c = solve_weights(&[0.37], &lift(0.37, 4)).unwrap();
        assert_eq!(c, vec![1.0]);

        let p = MomentPoint::new(vec![0.5, 0.3]).unwrap();
        let c = solve_weights(&[0.0, 0.6], &p).unwrap();
        assert!((c[0] - 1.0 / 6.0).abs() < 1e-15 && (c[1] - 5.0 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn solve_weights_errors() {
        let p = MomentPoint::new(vec![0.5, 0.3]).unwrap();
        assert_eq!(solve_weights(&[0.4, 0.4], &p), Err(NamingError::DegenerateNodes));
        assert!(matches!(
            solve_weights(&[0.1, 0.1 + 1e-7, 0.1 + 2e-7], &p),
            Err(NamingError::ConditioningFailure { .. })
        ));
        assert!(matches!(solve_weights(&[0.1, 0.2, 0.3, 0.4], &p), Err(NamingError::InvalidShape(_))));
    }
}
