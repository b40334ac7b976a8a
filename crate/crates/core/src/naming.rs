//! Core domain types: the parameter interval, points of the ambient space,
//! and namings (ordered convex combinations of moment-curve points).

use std::fmt;

use crate::error::{NamingError, Result};
use crate::tolerance::{Tolerances, HARD_MAX_N};

/// Closed parameter interval `[t_min, t_max]` of the truncated moment curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    t_min: f64,
    t_max: f64,
}

impl Interval {
    pub fn new(t_min: f64, t_max: f64) -> Result<Self> {
        if !(t_min.is_finite() && t_max.is_finite() && t_min < t_max) {
            return Err(NamingError::InvalidInterval { t_min, t_max });
        }
        Ok(Self { t_min, t_max })
    }

    pub fn t_min(&self) -> f64 {
        self.t_min
    }

    pub fn t_max(&self) -> f64 {
        self.t_max
    }

    pub fn width(&self) -> f64 {
        self.t_max - self.t_min
    }

    /// Distance below which two parameters denote the same curve point.
    pub fn same_point_tol(&self, tol: &Tolerances) -> f64 {
        tol.t_rel * self.width()
    }

    pub fn contains(&self, t: f64) -> bool {
        self.t_min <= t && t <= self.t_max
    }

    /// Affine map of `[t_min, t_max]` onto `[-1, 1]`.
    pub fn to_unit(&self, t: f64) -> f64 {
        (2.0 * t - self.t_min - self.t_max) / self.width()
    }

    /// Inverse of [`Interval::to_unit`]; `-1` and `1` land exactly on the endpoints.
    pub fn from_unit(&self, s: f64) -> f64 {
        if s == -1.0 {
            self.t_min
        } else if s == 1.0 {
            self.t_max
        } else {
            self.t_min + 0.5 * (s + 1.0) * self.width()
        }
    }

    /// `max |t|^k` over the interval: the half-width of the bounding box of
    /// the hull in coordinate `k`, used to turn absolute errors into relative ones.
    pub fn component_scale(&self, k: usize) -> f64 {
        self.t_min.abs().max(self.t_max.abs()).powi(k as i32)
    }

    /// Range of `t^k` over the interval.
    pub fn power_range(&self, k: usize) -> (f64, f64) {
        let a = self.t_min.powi(k as i32);
        let b = self.t_max.powi(k as i32);
        let (mut lo, mut hi) = if a < b { (a, b) } else { (b, a) };
        if k.is_multiple_of(2) && self.contains(0.0) {
            lo = 0.0;
        }
        if k == 0 {
            lo = 1.0;
            hi = 1.0;
        }
        (lo, hi)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.t_min, self.t_max)
    }
}

/// A point `(v_1, ..., v_n)` of the ambient space. The lifted coordinate
/// `v_0 = 1` is implicit.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentPoint {
    v: Vec<f64>,
}

impl MomentPoint {
    pub fn new(v: Vec<f64>) -> Result<Self> {
        if v.is_empty() {
            return Err(NamingError::InvalidPoint("need at least one coordinate".into()));
        }
        if v.len() > HARD_MAX_N {
            return Err(NamingError::DimensionCap { n: v.len(), cap: HARD_MAX_N });
        }
        if let Some(k) = v.iter().position(|x| !x.is_finite()) {
            return Err(NamingError::InvalidPoint(format!("coordinate v_{} is not finite", k + 1)));
        }
        Ok(Self { v })
    }

    pub fn n(&self) -> usize {
        self.v.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.v
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.v
    }

    /// `(1, v_1, ..., v_n)`.
    pub fn lifted(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.v.len() + 1);
        out.push(1.0);
        out.extend_from_slice(&self.v);
        out
    }
}

/// Powers `(1, t, ..., t^n)`.
pub(crate) fn powers(t: f64, n: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    let mut p = 1.0;
    for _ in 0..=n {
        out.push(p);
        p *= t;
    }
    out
}

/// The moment curve point `(t, t^2, ..., t^n)`.
///
/// Panics if `t` is not finite or `n` is zero or above the dimension cap.
pub fn lift(t: f64, n: usize) -> MomentPoint {
    assert!(t.is_finite(), "lift: t must be finite");
    assert!((1..=HARD_MAX_N).contains(&n), "lift: n out of range");
    let mut p = powers(t, n);
    p.remove(0);
    MomentPoint { v: p }
}

/// One term `c · C_n(t)` of a naming.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Atom {
    pub t: f64,
    pub c: f64,
}

impl Atom {
    pub fn new(t: f64, c: f64) -> Self {
        Self { t, c }
    }
}

/// Integer namings count every atom; half-integer namings carry a mandatory
/// first atom at `t_min` that counts as one half.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Integer,
    HalfInteger,
}

impl Parity {
    /// The parity whose index can equal `(n + 1) / 2`.
    pub fn for_n(n: usize) -> Self {
        if n % 2 == 1 {
            Parity::Integer
        } else {
            Parity::HalfInteger
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Parity::Integer => "integer",
            Parity::HalfInteger => "half",
        }
    }
}

/// Index of a naming, stored doubled so half-integers stay exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NamingIndex {
    twice: usize,
}

impl NamingIndex {
    pub fn from_twice(twice: usize) -> Self {
        Self { twice }
    }

    pub fn twice(&self) -> usize {
        self.twice
    }

    pub fn as_f64(&self) -> f64 {
        self.twice as f64 / 2.0
    }

    /// The largest index of a proper naming for `n`, i.e. `(n + 1) / 2`.
    pub fn proper_bound(n: usize) -> Self {
        Self { twice: n + 1 }
    }
}

impl fmt::Display for NamingIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twice.is_multiple_of(2) {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

/// Which boundaries of the naming space a naming lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundaryReport {
    pub zero_coefficient_count: usize,
    pub adjacent_equal_count: usize,
    pub at_tmin: bool,
    pub at_tmax: bool,
    pub total_l: usize,
}

/// An ordered convex combination of points on the moment curve.
#[derive(Debug, Clone, PartialEq)]
pub struct Naming {
    interval: Interval,
    n: usize,
    parity: Parity,
    atoms: Vec<Atom>,
}

impl Naming {
    /// Validates and normalizes: atoms are stably sorted by `t`, values
    /// within tolerance of the domain bounds are clamped onto them, and a
    /// half-integer naming gets its first parameter set to `t_min` exactly.
    pub fn new(interval: Interval, n: usize, parity: Parity, atoms: Vec<Atom>) -> Result<Self> {
        Self::with_tolerances(interval, n, parity, atoms, &Tolerances::default())
    }

    pub fn with_tolerances(
        interval: Interval,
        n: usize,
        parity: Parity,
        mut atoms: Vec<Atom>,
        tol: &Tolerances,
    ) -> Result<Self> {
        if n == 0 || n > HARD_MAX_N {
            return Err(NamingError::DimensionCap { n, cap: HARD_MAX_N });
        }
        if atoms.is_empty() {
            return Err(NamingError::InvalidNaming("a naming needs at least one atom".into()));
        }
        let eps_t = interval.same_point_tol(tol);
        for (j, a) in atoms.iter_mut().enumerate() {
            if !a.t.is_finite() || !a.c.is_finite() {
                return Err(NamingError::InvalidNaming(format!("atom {} is not finite", j + 1)));
            }
            if a.t < interval.t_min - eps_t || a.t > interval.t_max + eps_t {
                return Err(NamingError::InvalidNaming(format!("atom {} has t = {} outside {}", j + 1, a.t, interval)));
            }
            a.t = a.t.clamp(interval.t_min, interval.t_max);
            if a.c < -tol.c_zero || a.c > 1.0 + tol.sum {
                return Err(NamingError::InvalidNaming(format!(
                    "atom {} has coefficient {} outside [0, 1]",
                    j + 1,
                    a.c
                )));
            }
            a.c = a.c.clamp(0.0, 1.0);
        }
        atoms.sort_by(|x, y| x.t.total_cmp(&y.t));
        let sum: f64 = atoms.iter().map(|a| a.c).sum();
        if (sum - 1.0).abs() > tol.sum {
            return Err(NamingError::InvalidNaming(format!("coefficients sum to {sum}, not 1")));
        }
        if parity == Parity::HalfInteger {
            if (atoms[0].t - interval.t_min).abs() > eps_t {
                return Err(NamingError::InvalidNaming("a half-integer naming must start at t_min".into()));
            }
            atoms[0].t = interval.t_min;
        }
        Ok(Self { interval, n, parity, atoms })
    }

    pub fn interval(&self) -> Interval {
        self.interval
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn index(&self) -> NamingIndex {
        let twice = 2 * self.atoms.len();
        match self.parity {
            Parity::Integer => NamingIndex::from_twice(twice),
            Parity::HalfInteger => NamingIndex::from_twice(twice - 1),
        }
    }

    /// Whether `index - (n + 1) / 2` is an integer.
    pub fn has_correct_parity(&self) -> bool {
        self.parity == Parity::for_n(self.n)
    }

    /// Correct parity and index at most `(n + 1) / 2`.
    pub fn is_proper(&self) -> bool {
        self.has_correct_parity() && self.index() <= NamingIndex::proper_bound(self.n)
    }

    /// `Σ c_j C_n(t_j)`.
    pub fn evaluate(&self) -> MomentPoint {
        let mut v = vec![0.0; self.n];
        for a in &self.atoms {
            let mut p = a.t;
            for vk in v.iter_mut() {
                *vk += a.c * p;
                p *= a.t;
            }
        }
        MomentPoint { v }
    }

    /// Whether atom `j` is the pinned `t_min` atom of a half-integer naming.
    pub(crate) fn is_pinned(&self, j: usize) -> bool {
        j == 0 && self.parity == Parity::HalfInteger
    }

    pub fn is_reducible(&self) -> bool {
        self.is_reducible_with(&Tolerances::default())
    }

    pub fn is_reducible_with(&self, tol: &Tolerances) -> bool {
        let eps_t = self.interval.same_point_tol(tol);
        let equal_pair = self.atoms.windows(2).any(|w| (w[1].t - w[0].t).abs() <= eps_t);
        let zero = self.atoms.iter().enumerate().any(|(j, a)| a.c <= tol.c_zero && !self.is_pinned(j));
        equal_pair || zero
    }

    pub fn boundary_count(&self) -> BoundaryReport {
        self.boundary_count_with(&Tolerances::default())
    }

    pub fn boundary_count_with(&self, tol: &Tolerances) -> BoundaryReport {
        let eps_t = self.interval.same_point_tol(tol);
        let zero_coefficient_count = self.atoms.iter().filter(|a| a.c <= tol.c_zero).count();
        let adjacent_equal_count = self.atoms.windows(2).filter(|w| (w[1].t - w[0].t).abs() <= eps_t).count();
        let at_tmin = (self.atoms[0].t - self.interval.t_min).abs() <= eps_t;
        let at_tmax = (self.atoms[self.atoms.len() - 1].t - self.interval.t_max).abs() <= eps_t;
        let total_l = zero_coefficient_count
            + adjacent_equal_count
            + usize::from(at_tmin && self.parity == Parity::Integer)
            + usize::from(at_tmax);
        BoundaryReport { zero_coefficient_count, adjacent_equal_count, at_tmin, at_tmax, total_l }
    }

    /// Same naming with a different parity label. Turning an integer naming
    /// into a half-integer one requires the first atom to sit at `t_min`.
    pub fn with_parity(&self, parity: Parity) -> Result<Self> {
        Naming::new(self.interval, self.n, parity, self.atoms.clone())
    }
}
