//! Brute-force cross-checks for the solvers: grid LP membership, seeded
//! random namings, and a continuity probe for the inverse naming map.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};

use crate::error::{NamingError, Result};
use crate::naming::{Atom, Interval, MomentPoint, Naming, Parity};
use crate::principal::{membership, principal_from_moments, MembershipTag};

/// Distance reported by [`continuity_probe`] when the canonical atom count
/// changes under perturbation.
pub const RANK_CHANGE_DISTANCE: f64 = 1.0;

/// Discretization of the curve for the LP oracle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub points: usize,
    pub slack: f64,
}

impl GridSpec {
    pub fn new(points: usize, slack: f64) -> Self {
        Self { points, slack }
    }

    fn validate(&self, n: usize) -> Result<()> {
        if self.points < n + 2 || self.slack.is_nan() || self.slack <= 0.0 {
            return Err(NamingError::OracleFailure(format!("grid needs at least {} points and positive slack", n + 2)));
        }
        Ok(())
    }

    fn parameters(&self, interval: Interval) -> Vec<f64> {
        let last = self.points - 1;
        (0..self.points)
            .map(|i| {
                if i == last {
                    interval.t_max()
                } else {
                    interval.t_min() + interval.width() * (i as f64 / last as f64)
                }
            })
            .collect()
    }
}

/// Half-width of the band around the hull boundary inside which the grid LP
/// and the exact solver may legitimately disagree, per component `k = 1..n`:
/// the slack plus the chord error `h²/8 · max |d²t^k/dt²|` of the grid,
/// never less than the coarser `width²·n/(8·points²)` estimate.
pub fn boundary_band(n: usize, interval: Interval, grid: &GridSpec) -> Vec<f64> {
    let h = interval.width() / (grid.points - 1) as f64;
    let r = interval.t_min().abs().max(interval.t_max().abs());
    let coarse = interval.width().powi(2) * n as f64 / (8.0 * (grid.points as f64).powi(2));
    (1..=n)
        .map(|k| {
            let curvature = if k >= 2 { (k * (k - 1)) as f64 * r.powi(k as i32 - 2) } else { 0.0 };
            grid.slack + (h * h / 8.0 * curvature).max(coarse)
        })
        .collect()
}

/// Phase-one simplex over `{Σ λ_i C(t_i) = v, Σ λ_i = 1, λ ≥ 0}` with one
/// artificial per row, dense tableau and Bland's rule. Returns the optimal
/// artificial sum, i.e. the smallest L1 residual of the equality rows.
pub fn lp_residual(point: &MomentPoint, interval: Interval, grid: &GridSpec) -> Result<f64> {
    let n = point.n();
    grid.validate(n)?;
    let ts = grid.parameters(interval);
    let rows = n + 1;
    let cols = ts.len();
    let width = cols + rows + 1;
    let rhs_col = cols + rows;
    let b = point.lifted();

    let mut tab = vec![vec![0.0; width]; rows];
    for (i, row) in tab.iter_mut().enumerate() {
        let sign = if b[i] < 0.0 { -1.0 } else { 1.0 };
        for (j, t) in ts.iter().enumerate() {
            row[j] = sign * t.powi(i as i32);
        }
        row[cols + i] = 1.0;
        row[rhs_col] = sign * b[i];
    }
    let mut basis: Vec<usize> = (cols..cols + rows).collect();
    // reduced costs of min Σ artificials: c_j - c_B B⁻¹ A_j
    let mut cost = vec![0.0; width];
    for row in &tab {
        for j in 0..cols {
            cost[j] -= row[j];
        }
        cost[rhs_col] -= row[rhs_col];
    }

    const PIVOT_TOL: f64 = 1e-12;
    let max_iter = 50 * (rows + cols);
    for _ in 0..max_iter {
        let Some(enter) = (0..cols + rows).find(|&j| cost[j] < -PIVOT_TOL) else {
            return Ok((-cost[rhs_col]).max(0.0));
        };
        let mut leave: Option<(f64, usize)> = None;
        for (i, row) in tab.iter().enumerate() {
            if row[enter] > PIVOT_TOL {
                let ratio = row[rhs_col] / row[enter];
                let better = match leave {
                    None => true,
                    Some((r, li)) => ratio < r - 1e-15 || (ratio <= r + 1e-15 && basis[i] < basis[li]),
                };
                if better {
                    leave = Some((ratio, i));
                }
            }
        }
        let Some((_, pr)) = leave else {
            return Err(NamingError::OracleFailure("phase-one LP is unbounded".into()));
        };
        let piv = tab[pr][enter];
        for x in tab[pr].iter_mut() {
            *x /= piv;
        }
        let pivot_row = tab[pr].clone();
        for (i, row) in tab.iter_mut().enumerate() {
            if i != pr && row[enter] != 0.0 {
                let f = row[enter];
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x -= f * p;
                }
            }
        }
        let f = cost[enter];
        for (x, p) in cost.iter_mut().zip(&pivot_row) {
            *x -= f * p;
        }
        basis[pr] = enter;
    }
    Err(NamingError::OracleFailure(format!("simplex did not finish in {max_iter} pivots")))
}

/// Whether the point is a convex combination of grid points of the curve,
/// up to `grid.slack` in the L1 residual of the equality rows.
pub fn lp_membership(point: &MomentPoint, interval: Interval, grid: &GridSpec) -> Result<bool> {
    Ok(lp_residual(point, interval, grid)? <= grid.slack)
}

/// Seeded random naming with `atom_count` uniform parameters and flat
/// Dirichlet weights. For even `n` a `t_min` atom with its own weight is
/// prepended so the result has the parity matching `n`.
pub fn random_naming(n: usize, interval: Interval, atom_count: usize, seed: u64) -> Result<Naming> {
    if atom_count == 0 {
        return Err(NamingError::InvalidNaming("atom_count must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let parity = Parity::for_n(n);
    let mut ts: Vec<f64> = (0..atom_count).map(|_| interval.t_min() + interval.width() * rng.random::<f64>()).collect();
    ts.sort_by(f64::total_cmp);
    if parity == Parity::HalfInteger {
        ts.insert(0, interval.t_min());
    }
    let draws: Vec<f64> = ts.iter().map(|_| Exp1.sample(&mut rng)).collect();
    let total: f64 = draws.iter().sum();
    let atoms = ts.into_iter().zip(draws).map(|(t, e)| Atom::new(t, e / total)).collect();
    Naming::new(interval, n, parity, atoms)
}

/// Largest canonical-naming distance over seeded perturbations of `point`
/// with norm at most `radius`. Atoms are paired in sorted order and compared
/// by `|Δt| + |Δc|`; a change in atom count reports
/// [`RANK_CHANGE_DISTANCE`]. Directions and relative magnitudes depend only
/// on the seed, so the same seed probes the same rays at every radius.
pub fn continuity_probe(
    point: &MomentPoint,
    interval: Interval,
    radius: f64,
    samples: usize,
    seed: u64,
) -> Result<f64> {
    let verdict = membership(point, interval);
    if verdict.tag != MembershipTag::Inside {
        return Err(NamingError::NotInterior);
    }
    let base = verdict.certificate.expect("inside verdicts carry a certificate");
    if radius == 0.0 || samples == 0 {
        return Ok(0.0);
    }
    let n = point.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    let mut accepted = 0;
    for _ in 0..10 * samples {
        if accepted == samples {
            break;
        }
        let mut dir: Vec<f64> = (0..n).map(|_| StandardNormal.sample(&mut rng)).collect();
        let norm = dir.iter().map(|x| x * x).sum::<f64>().sqrt();
        let magnitude: f64 = rng.random_range(0.5..=1.0);
        for x in &mut dir {
            *x *= radius * magnitude / norm;
        }
        let moved: Vec<f64> = point.coords().iter().zip(&dir).map(|(v, d)| v + d).collect();
        let moved = MomentPoint::new(moved)?;
        if membership(&moved, interval).tag != MembershipTag::Inside {
            continue;
        }
        accepted += 1;
        let other = principal_from_moments(&moved, interval)?;
        let (a, b) = (base.naming().atoms(), other.naming().atoms());
        let dist = if a.len() != b.len() {
            RANK_CHANGE_DISTANCE
        } else {
            a.iter().zip(b).map(|(x, y)| (x.t - y.t).abs() + (x.c - y.c).abs()).fold(0.0, f64::max)
        };
        worst = worst.max(dist);
    }
    Ok(worst)
}
