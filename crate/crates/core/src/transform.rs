//! Namings on general polynomial curves `t ↦ A·(1, t, ..., t^n)`.
//!
//! Such a curve is an affine image of the moment curve, so a point on its
//! hull is named by pulling it back to moment coordinates, naming it there,
//! and pushing the atoms forward with unchanged weights.

use nalgebra::{DMatrix, DVector};

use crate::error::{NamingError, Result};
use crate::linalg;
use crate::naming::{powers, Interval, MomentPoint, Naming};
use crate::principal::{principal_from_moments_with, SolveOptions};
use crate::reduction::CanonicalNaming;

/// A degree-`≤ n` polynomial curve in `ℝ^n`; row `i` holds `a_{i0}, ..., a_{in}`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyCurve {
    coeff: DMatrix<f64>,
}

/// One weighted point of a pushed-forward naming.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveAtom {
    pub weight: f64,
    pub point: Vec<f64>,
}

impl PolyCurve {
    /// `rows` must have `n` rows of `n + 1` finite coefficients each.
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(NamingError::InvalidShape("a curve needs at least one row".into()));
        }
        if let Some(i) = rows.iter().position(|r| r.len() != n + 1) {
            return Err(NamingError::InvalidShape(format!(
                "row {} has {} coefficients, expected {}",
                i + 1,
                rows[i].len(),
                n + 1
            )));
        }
        if rows.iter().flatten().any(|x| !x.is_finite()) {
            return Err(NamingError::InvalidShape("coefficients must be finite".into()));
        }
        Ok(Self { coeff: DMatrix::from_fn(n, n + 1, |i, s| rows[i][s]) })
    }

    /// The moment curve itself.
    pub fn identity(n: usize) -> Self {
        Self { coeff: DMatrix::from_fn(n, n + 1, |i, s| if s == i + 1 { 1.0 } else { 0.0 }) }
    }

    pub fn n(&self) -> usize {
        self.coeff.nrows()
    }

    pub fn coefficients(&self) -> &DMatrix<f64> {
        &self.coeff
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.coeff.row_iter().map(|r| r.iter().copied().collect()).collect()
    }

    /// Constant column `a_{i0}`.
    pub fn offset(&self) -> DVector<f64> {
        self.coeff.column(0).into_owned()
    }

    /// The `n×n` part acting on `(t, ..., t^n)`.
    pub fn linear_part(&self) -> DMatrix<f64> {
        self.coeff.columns(1, self.n()).into_owned()
    }

    pub fn eval(&self, t: f64) -> Vec<f64> {
        let p = DVector::from_vec(powers(t, self.n()));
        (&self.coeff * p).iter().copied().collect()
    }

    /// `A_lin · v + a_const`.
    pub fn apply(&self, v: &MomentPoint) -> Result<Vec<f64>> {
        if v.n() != self.n() {
            return Err(NamingError::DomainMismatch(format!("curve n = {}, point n = {}", self.n(), v.n())));
        }
        let x = DVector::from_vec(v.lifted());
        Ok((&self.coeff * x).iter().copied().collect())
    }
}

/// Pairs each weight of `p` with its image on the curve.
pub fn push_naming(p: &Naming, curve: &PolyCurve) -> Result<Vec<CurveAtom>> {
    if p.n() != curve.n() {
        return Err(NamingError::DomainMismatch(format!("curve n = {}, naming n = {}", curve.n(), p.n())));
    }
    Ok(p.atoms().iter().map(|a| CurveAtom { weight: a.c, point: curve.eval(a.t) }).collect())
}

/// Weighted sum of pushed atoms.
pub fn curve_sum(atoms: &[CurveAtom]) -> Vec<f64> {
    let dim = atoms.first().map_or(0, |a| a.point.len());
    let mut out = vec![0.0; dim];
    for a in atoms {
        for (o, x) in out.iter_mut().zip(&a.point) {
            *o += a.weight * x;
        }
    }
    out
}

/// Moment coordinates `v` with `A_lin · v + a_const = w`.
pub fn pull_point(w: &[f64], curve: &PolyCurve) -> Result<MomentPoint> {
    if w.len() != curve.n() {
        return Err(NamingError::DomainMismatch(format!("curve n = {}, point n = {}", curve.n(), w.len())));
    }
    let lin = curve.linear_part();
    let estimate = linalg::cond_1(&lin);
    if !estimate.is_finite() || estimate > 1e14 {
        return Err(NamingError::NotInvertible);
    }
    let rhs = DVector::from_column_slice(w) - curve.offset();
    let v = lin.lu().solve(&rhs).ok_or(NamingError::NotInvertible)?;
    MomentPoint::new(v.iter().copied().collect())
}

/// Canonical naming of `w` on the curve: pull back, name, push forward.
pub fn name_on_curve(
    w: &[f64],
    curve: &PolyCurve,
    interval: Interval,
    opts: &SolveOptions,
) -> Result<(CanonicalNaming, Vec<CurveAtom>)> {
    let v = pull_point(w, curve)?;
    let cert = principal_from_moments_with(&v, interval, opts)?;
    let pushed = push_naming(cert.naming(), curve)?;
    Ok((cert, pushed))
}
