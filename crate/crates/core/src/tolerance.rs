/// Absolute cap on `n` for every public operation.
pub const HARD_MAX_N: usize = 20;

/// Default cap on `n` for the moment solver.
pub const DEFAULT_SOLVER_MAX_N: usize = 12;

/// Floating-point tolerances used by the naming predicates and solvers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// "Same point" threshold, relative to the interval width.
    pub t_rel: f64,
    /// Coefficients at or below this are zero.
    pub c_zero: f64,
    /// Allowed deviation of the coefficient sum from 1.
    pub sum: f64,
    /// Membership band: weights in `[-membership, 0]` are clamped to zero,
    /// anything more negative means the point is outside.
    pub membership: f64,
    /// Coefficient agreement when comparing canonical forms.
    pub equivalence: f64,
    /// Pivoted Cholesky drop tolerance, relative to the Hankel trace.
    pub rank_drop: f64,
    /// Largest condition estimate accepted by the Vandermonde solves.
    pub cond_max: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            t_rel: 1e-9,
            c_zero: 1e-12,
            sum: 1e-10,
            membership: 1e-9,
            equivalence: 1e-8,
            rank_drop: 1e-10,
            cond_max: 1e12,
        }
    }
}

impl Tolerances {
    /// Checks that every tolerance is strictly positive and finite.
    pub fn is_valid(&self) -> bool {
        [self.t_rel, self.c_zero, self.sum, self.membership, self.equivalence, self.rank_drop, self.cond_max]
            .iter()
            .all(|x| x.is_finite() && *x > 0.0)
    }
}
