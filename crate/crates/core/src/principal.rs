//! Direct construction of the canonical naming of a point from its moments.
//!
//! The interval is first mapped onto `[-1, 1]`. For odd `n = 2m-1` the
//! naming is the `m`-node Gauss rule of the moment sequence: the nodes are
//! the roots of the degree-`m` orthogonal polynomial read off the Hankel
//! system, and the weights come from a Vandermonde solve. For even `n = 2m`
//! the Gauss rule is built for the shifted sequence `w_k = ν_{k+1} + ν_k`
//! (the moments of `(s + 1) dμ`), the weights are divided back by `s_j + 1`,
//! and the remaining mass is placed at `t_min`. A final Newton pass in the
//! original coordinates uses the pseudo-Vandermonde Jacobian.

use nalgebra::{DMatrix, DVector};

use crate::error::{NamingError, Result};
use crate::linalg;
use crate::naming::{Atom, Interval, MomentPoint, Naming, Parity};
use crate::pvmat::PvMatrix;
use crate::reduction::{canonicalize_with, CanonicalNaming};
use crate::tolerance::{Tolerances, DEFAULT_SOLVER_MAX_N, HARD_MAX_N};

/// Moments at or below this (in `[-1, 1]` coordinates) count as zero mass.
const ZERO_MASS: f64 = 1e-14;
/// Moment residual allowed for a rank-deficient rule, `[-1, 1]` coordinates.
const FIT_TOL: f64 = 1e-8;
const POLISH_STEPS: usize = 3;
/// Multiples of the moment noise floor treated as zero in rank decisions
/// and in the fit of a rank-deficient rule.
const NOISE_MARGIN: f64 = 16.0;
const FIT_NOISE_MARGIN: f64 = 1e4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions {
    pub tol: Tolerances,
    /// Largest `n` accepted; at most [`HARD_MAX_N`].
    pub max_n: usize,
    /// Run Newton refinement on full-rank interior solutions.
    pub polish: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self { tol: Tolerances::default(), max_n: DEFAULT_SOLVER_MAX_N, polish: true }
    }
}

/// Hankel matrix `H[i][j] = v_{i+j}` (`v_0 = 1`), or with a shift `s`,
/// `H[i][j] = v_{i+j+1} - s·v_{i+j}`.
pub fn hankel(point: &MomentPoint, m: usize, shift: Option<f64>) -> Result<DMatrix<f64>> {
    let v = point.lifted();
    let extra = usize::from(shift.is_some());
    if m > 0 && 2 * (m - 1) + extra > point.n() {
        return Err(NamingError::InvalidShape(format!(
            "a {m}x{m} Hankel matrix needs moments beyond n = {}",
            point.n()
        )));
    }
    Ok(match shift {
        None => DMatrix::from_fn(m, m, |i, j| v[i + j]),
        Some(s) => DMatrix::from_fn(m, m, |i, j| v[i + j + 1] - s * v[i + j]),
    })
}

fn horner(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, a| acc * x + a)
}

/// Sorted real roots of a polynomial given by coefficients from the constant
/// term up (`[0.1875, -1.0, 1.0]` is `t² - t + 0.1875`). Roots come from the
/// companion matrix eigenvalues and are then refined by bisection wherever a
/// sign change can be bracketed.
pub fn orth_poly_roots(coeffs: &[f64]) -> Result<Vec<f64>> {
    let degree = match coeffs.iter().rposition(|a| *a != 0.0) {
        Some(d) => d,
        None => return Err(NamingError::InvalidShape("zero polynomial".into())),
    };
    if degree > HARD_MAX_N {
        return Err(NamingError::InvalidShape(format!("degree {degree} is too large")));
    }
    if coeffs.iter().any(|a| !a.is_finite()) {
        return Err(NamingError::InvalidShape("coefficients must be finite".into()));
    }
    let lead = coeffs[degree];
    let monic: Vec<f64> = coeffs[..=degree].iter().map(|a| a / lead).collect();
    if degree == 0 {
        return Ok(Vec::new());
    }
    if degree == 1 {
        return Ok(vec![-monic[0]]);
    }
    let companion = DMatrix::from_fn(degree, degree, |i, j| {
        if j == degree - 1 {
            -monic[i]
        } else if i == j + 1 {
            1.0
        } else {
            0.0
        }
    });
    let eig = companion.complex_eigenvalues();
    let mut roots = Vec::with_capacity(degree);
    let mut worst_imag: f64 = 0.0;
    for z in eig.iter() {
        let limit = 1e-8 * z.re.abs().max(1.0);
        if z.im.abs() > limit {
            worst_imag = worst_imag.max(z.im.abs());
        }
        roots.push(z.re);
    }
    if worst_imag > 0.0 {
        return Err(NamingError::NonRealRoots { imag: worst_imag });
    }
    roots.sort_by(f64::total_cmp);
    let unpolished = roots.clone();
    for i in 0..roots.len() {
        let r = unpolished[i];
        let mut gap = f64::INFINITY;
        if i > 0 {
            gap = gap.min(r - unpolished[i - 1]);
        }
        if i + 1 < roots.len() {
            gap = gap.min(unpolished[i + 1] - r);
        }
        let h = (1e-6 * r.abs().max(1.0)).min(0.25 * gap);
        if h <= 0.0 {
            continue;
        }
        let (mut lo, mut hi) = (r - h, r + h);
        let (mut plo, phi) = (horner(&monic, lo), horner(&monic, hi));
        if plo == 0.0 {
            roots[i] = lo;
            continue;
        }
        if phi == 0.0 {
            roots[i] = hi;
            continue;
        }
        if plo.signum() == phi.signum() {
            continue;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            let pm = horner(&monic, mid);
            if pm == 0.0 {
                lo = mid;
                hi = mid;
                break;
            }
            if pm.signum() == plo.signum() {
                lo = mid;
                plo = pm;
            } else {
                hi = mid;
            }
        }
        roots[i] = 0.5 * (lo + hi);
    }
    roots.sort_by(f64::total_cmp);
    Ok(roots)
}

/// A quadrature rule in `[-1, 1]` coordinates.
#[derive(Debug, Clone)]
struct GaussRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    rank_deficient: bool,
}

/// The `r`-node rule reproducing `moments[0..2m]`, where `r ≤ m` is the
/// numerical rank of the `m×m` Hankel matrix. `noise[k]` bounds the rounding
/// already present in `moments[k]`.
fn gauss_rule(moments: &[f64], noise: &[f64], m: usize, tol: &Tolerances) -> Result<GaussRule> {
    debug_assert_eq!(moments.len(), 2 * m);
    let floor = noise.iter().fold(0.0f64, |a, &b| a.max(b));
    let mass = moments[0];
    if mass < -tol.membership {
        return Err(NamingError::OutsideHull(format!("negative mass {mass:.3e}")));
    }
    let h = DMatrix::from_fn(m, m, |i, j| moments[i + j]);
    let trace = h.trace();
    let rank = if trace <= ZERO_MASS {
        0
    } else {
        linalg::psd_rank(&h, (tol.rank_drop * trace).max(NOISE_MARGIN * floor))
            .ok_or_else(|| NamingError::OutsideHull("Hankel matrix is indefinite".into()))?
    };
    let (nodes, weights) = if rank == 0 {
        (Vec::new(), Vec::new())
    } else {
        let lead = h.view((0, 0), (rank, rank)).into_owned();
        let rhs = DVector::from_fn(rank, |i, _| -moments[rank + i]);
        let a = match lead.clone().cholesky() {
            Some(ch) => ch.solve(&rhs),
            None => lead.lu().solve(&rhs).ok_or_else(|| NamingError::OutsideHull("singular Hankel block".into()))?,
        };
        let mut coeffs: Vec<f64> = a.iter().copied().collect();
        coeffs.push(1.0);
        let nodes = orth_poly_roots(&coeffs).map_err(|e| match e {
            NamingError::NonRealRoots { imag } => {
                NamingError::OutsideHull(format!("orthogonal polynomial has complex roots (imag {imag:.3e})"))
            }
            other => other,
        })?;
        let weights = linalg::solve_vandermonde(&nodes, moments, tol).map_err(|e| match e {
            NamingError::DegenerateNodes => NamingError::OutsideHull("repeated quadrature nodes".into()),
            other => other,
        })?;
        (nodes, weights)
    };
    let rank_deficient = rank < m;
    if rank_deficient {
        let scale = mass.abs().max(1.0);
        for (k, mk) in moments.iter().enumerate() {
            let fit: f64 = nodes.iter().zip(&weights).map(|(s, w)| w * s.powi(k as i32)).sum();
            if (fit - mk).abs() > (FIT_TOL * scale).max(FIT_NOISE_MARGIN * noise[k]) {
                return Err(NamingError::OutsideHull(format!(
                    "rank-{rank} rule misses moment {k} by {:.3e}",
                    (fit - mk).abs()
                )));
            }
        }
    }
    Ok(GaussRule { nodes, weights, rank_deficient })
}

/// Moments of the pushed-forward measure under `t ↦ α t + β`, together
/// with a bound on the rounding each output inherits: `4ε Σ_i C(k,i) |α|^i |β|^(k-i) |μ_i|`. For intervals narrow
/// against their distance from 0 this grows like `((2 max|t| + |a+b|)/w)^k`.
fn affine_moments(mu: &[f64], alpha: f64, beta: f64) -> (Vec<f64>, Vec<f64>) {
    let n = mu.len() - 1;
    let mut binom = vec![1.0f64];
    let mut out = Vec::with_capacity(n + 1);
    let mut noise = Vec::with_capacity(n + 1);
    for k in 0..=n {
        if k > 0 {
            let mut next = vec![1.0; k + 1];
            for i in 1..k {
                next[i] = binom[i - 1] + binom[i];
            }
            binom = next;
        }
        let mut acc = 0.0;
        let mut size = 0.0;
        for (i, b) in binom.iter().enumerate() {
            let term = b * alpha.powi(i as i32) * beta.powi((k - i) as i32) * mu[i];
            acc += term;
            size += term.abs();
        }
        out.push(acc);
        noise.push(4.0 * f64::EPSILON * size);
    }
    (out, noise)
}

/// Raw solver output before canonicalization.
struct RawSolution {
    atoms: Vec<Atom>,
    rank_deficient: bool,
}

fn solve_raw(point: &MomentPoint, interval: Interval, opts: &SolveOptions) -> Result<RawSolution> {
    let n = point.n();
    let cap = opts.max_n.min(HARD_MAX_N);
    if n > cap {
        return Err(NamingError::DimensionCap { n, cap });
    }
    let tol = &opts.tol;
    let width = interval.width();
    let alpha = 2.0 / width;
    let beta = -(interval.t_min() + interval.t_max()) / width;
    let (nu, noise) = affine_moments(&point.lifted(), alpha, beta);
    let floor = noise.iter().fold(0.0f64, |a, &b| a.max(b));
    let delta = (2.0 * tol.t_rel).max(FIT_NOISE_MARGIN * floor);

    let check_node = |s: f64| -> Result<f64> {
        if s < -1.0 - delta || s > 1.0 + delta {
            return Err(NamingError::OutsideHull(format!(
                "node t = {} lies outside {}",
                interval.from_unit(s),
                interval
            )));
        }
        Ok(if s <= -1.0 + delta {
            -1.0
        } else if s >= 1.0 - delta {
            1.0
        } else {
            s
        })
    };
    let check_weight = |c: f64| -> Result<f64> {
        if c < -tol.membership {
            return Err(NamingError::OutsideHull(format!("negative weight {c:.3e}")));
        }
        Ok(c.max(0.0))
    };

    let mut atoms = Vec::new();
    let parity = Parity::for_n(n);
    let rank_deficient;
    if parity == Parity::Integer {
        let m = n.div_ceil(2);
        let rule = gauss_rule(&nu[..2 * m], &noise[..2 * m], m, tol)?;
        rank_deficient = rule.rank_deficient;
        for (s, w) in rule.nodes.iter().zip(&rule.weights) {
            atoms.push(Atom::new(interval.from_unit(check_node(*s)?), check_weight(*w)?));
        }
        let total: f64 = atoms.iter().map(|a| a.c).sum();
        if total <= 0.0 {
            return Err(NamingError::OutsideHull("no mass left in the rule".into()));
        }
        for a in &mut atoms {
            a.c /= total;
        }
    } else {
        let m = n / 2;
        let shifted: Vec<f64> = (0..2 * m).map(|k| nu[k + 1] + nu[k]).collect();
        let shifted_noise: Vec<f64> = (0..2 * m).map(|k| noise[k + 1] + noise[k]).collect();
        let rule = gauss_rule(&shifted, &shifted_noise, m, tol)?;
        rank_deficient = rule.rank_deficient;
        let mut rest = Vec::new();
        for (s, w) in rule.nodes.iter().zip(&rule.weights) {
            let snapped = check_node(*s)?;
            if *s + 1.0 <= delta {
                // (s + 1) dμ carries no mass at s = -1; whatever sits here is
                // absorbed by the t_min atom below.
                continue;
            }
            let c = check_weight(w / (s + 1.0))?;
            rest.push(Atom::new(interval.from_unit(snapped), c));
        }
        let c0 = check_weight(1.0 - rest.iter().map(|a| a.c).sum::<f64>())?;
        atoms.push(Atom::new(interval.t_min(), c0));
        atoms.extend(rest);
        let total: f64 = atoms.iter().map(|a| a.c).sum();
        for a in &mut atoms {
            a.c /= total;
        }
    }
    if opts.polish && !rank_deficient {
        polish(&mut atoms, point, interval, parity, tol);
    }
    Ok(RawSolution { atoms, rank_deficient })
}

/// Row-scaled moment residual `max_k |Σ c_j t_j^k - v_k| / scale_k`.
fn scaled_residual(atoms: &[Atom], mu: &[f64], interval: Interval) -> Vec<f64> {
    mu.iter()
        .enumerate()
        .map(|(k, mk)| {
            let fit: f64 = atoms.iter().map(|a| a.c * a.t.powi(k as i32)).sum();
            (fit - mk) / interval.component_scale(k)
        })
        .collect()
}

/// Newton refinement of `(c, t)` on the square system `Σ c_j C(t_j) = v`,
/// lifted with the row of ones. The Jacobian is the pseudo-Vandermonde
/// matrix on the free nodes (plus `t_min` for even `n`) with derivative
/// columns scaled by `c_j`. Steps that leave the domain or fail to reduce
/// the residual are rejected.
fn polish(atoms: &mut Vec<Atom>, point: &MomentPoint, interval: Interval, parity: Parity, tol: &Tolerances) {
    let n = point.n();
    let mu = point.lifted();
    let eps_t = interval.same_point_tol(tol);
    let pinned = usize::from(parity == Parity::HalfInteger);
    let free = atoms.len() - pinned;
    let expected_free = n.div_ceil(2);
    if free != expected_free {
        return;
    }
    let interior = |a: &Atom| a.t > interval.t_min() + eps_t && a.t < interval.t_max() - eps_t && a.c > 0.0;
    if !atoms[pinned..].iter().all(interior) {
        return;
    }
    let norm = |r: &[f64]| r.iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
    let mut current = norm(&scaled_residual(atoms, &mu, interval));
    for _ in 0..POLISH_STEPS {
        if current == 0.0 {
            break;
        }
        let mut nodes: Vec<f64> = atoms[pinned..].iter().map(|a| a.t).collect();
        if pinned == 1 {
            nodes.push(interval.t_min());
        }
        let Ok(pv) = PvMatrix::new(n, nodes) else { return };
        let mut jac = pv.build();
        let q = pv.q();
        for j in 0..free {
            let c = atoms[pinned + j].c;
            jac.column_mut(q + j).scale_mut(c);
        }
        for k in 0..=n {
            let s = interval.component_scale(k);
            jac.row_mut(k).unscale_mut(s);
        }
        let r = scaled_residual(atoms, &mu, interval);
        let rhs = DVector::from_iterator(n + 1, r.iter().map(|x| -x));
        let Some(step) = jac.lu().solve(&rhs) else { return };
        let mut trial = atoms.clone();
        for j in 0..free {
            trial[pinned + j].c += step[j];
            trial[pinned + j].t += step[q + j];
        }
        if pinned == 1 {
            trial[0].c += step[free];
        }
        let ok =
            trial.iter().all(|a| a.c >= 0.0 && interval.contains(a.t)) && trial.windows(2).all(|w| w[0].t < w[1].t);
        if !ok {
            return;
        }
        let next = norm(&scaled_residual(&trial, &mu, interval));
        if next >= current {
            return;
        }
        *atoms = trial;
        current = next;
    }
}

/// The canonical naming of `point`, with index at most `(n+1)/2` and, for
/// even `n`, a first atom at exactly `t_min`.
pub fn principal_from_moments(point: &MomentPoint, interval: Interval) -> Result<CanonicalNaming> {
    principal_from_moments_with(point, interval, &SolveOptions::default())
}

pub fn principal_from_moments_with(
    point: &MomentPoint,
    interval: Interval,
    opts: &SolveOptions,
) -> Result<CanonicalNaming> {
    let raw = solve_raw(point, interval, opts)?;
    finish(point, interval, raw.atoms, &opts.tol)
}

fn finish(point: &MomentPoint, interval: Interval, atoms: Vec<Atom>, tol: &Tolerances) -> Result<CanonicalNaming> {
    let naming = Naming::with_tolerances(interval, point.n(), Parity::for_n(point.n()), atoms, tol)?;
    canonicalize_with(&naming, tol)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MembershipTag {
    Inside,
    BoundaryFace,
    Outside,
}

impl MembershipTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            MembershipTag::Inside => "inside",
            MembershipTag::BoundaryFace => "boundary",
            MembershipTag::Outside => "outside",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MembershipVerdict {
    pub tag: MembershipTag,
    /// Atom count of the certificate; zero when outside.
    pub rank: usize,
    pub certificate: Option<CanonicalNaming>,
    /// Why the point was rejected, for `Outside` verdicts.
    pub diagnostic: Option<String>,
}

impl MembershipVerdict {
    pub fn is_member(&self) -> bool {
        self.tag != MembershipTag::Outside
    }
}

/// Classifies `point` against the hull of the curve over `interval`.
pub fn membership(point: &MomentPoint, interval: Interval) -> MembershipVerdict {
    membership_with(point, interval, &SolveOptions::default())
}

pub fn membership_with(point: &MomentPoint, interval: Interval, opts: &SolveOptions) -> MembershipVerdict {
    let outside = |msg: String| MembershipVerdict {
        tag: MembershipTag::Outside,
        rank: 0,
        certificate: None,
        diagnostic: Some(msg),
    };
    let raw = match solve_raw(point, interval, opts) {
        Ok(raw) => raw,
        Err(NamingError::OutsideHull(msg)) => return outside(msg),
        Err(e) => return outside(format!("solver failure: {e}")),
    };
    let rank_deficient = raw.rank_deficient;
    let cert = match finish(point, interval, raw.atoms, &opts.tol) {
        Ok(c) => c,
        Err(e) => return outside(format!("solver failure: {e}")),
    };
    let tol = &opts.tol;
    let naming = cert.naming();
    let eps_t = interval.same_point_tol(tol);
    let n = point.n();
    let full = naming.len() == n / 2 + 1;
    let interior_nodes = naming
        .atoms()
        .iter()
        .enumerate()
        .all(|(j, a)| naming.is_pinned(j) || (a.t > interval.t_min() + eps_t && a.t < interval.t_max() - eps_t));
    let positive = naming.atoms().iter().all(|a| a.c > tol.membership);
    let tag = if full && !rank_deficient && interior_nodes && positive {
        MembershipTag::Inside
    } else {
        MembershipTag::BoundaryFace
    };
    MembershipVerdict { tag, rank: naming.len(), certificate: Some(cert), diagnostic: None }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::naming::lift;

    fn unit() -> Interval {
        Interval::new(0.0, 1.0).unwrap()
    }

    fn pt(v: &[f64]) -> MomentPoint {
        MomentPoint::new(v.to_vec()).unwrap()
    }

    #[test]
    fn hankel_examples() {
        let h = hankel(&pt(&[0.5, 0.3125, 0.21875]), 2, None).unwrap();
        assert_eq!(h, DMatrix::from_row_slice(2, 2, &[1.0, 0.5, 0.5, 0.3125]));
        let h = hankel(&pt(&[0.5, 0.3]), 1, Some(0.0)).unwrap();
        assert_eq!(h, DMatrix::from_element(1, 1, 0.5));
        let h = hankel(&lift(0.7, 4), 3, None).unwrap();
        let rank = h.svd(false, false).rank(1e-12);
        assert_eq!(rank, 1);
        assert!(matches!(hankel(&pt(&[0.5, 0.3]), 3, None), Err(NamingError::InvalidShape(_))));
        assert!(matches!(hankel(&pt(&[0.5, 0.3]), 2, Some(0.0)), Err(NamingError::InvalidShape(_))));
    }

    #[test]
    fn root_examples() {
        let r = orth_poly_roots(&[0.1875, -1.0, 1.0]).unwrap();
        assert!((r[0] - 0.25).abs() < 1e-15 && (r[1] - 0.75).abs() < 1e-15);
        assert_eq!(orth_poly_roots(&[-0.6, 1.0]).unwrap(), vec![0.6]);
        assert!(matches!(orth_poly_roots(&[1.0, 0.0, 1.0]), Err(NamingError::NonRealRoots { .. })));
    }

    #[test]
    fn roots_of_wilkinson_like_product() {
        let targets = [-0.9, -0.4, 0.1, 0.55, 0.8];
        let mut coeffs = vec![1.0];
        for r in targets {
            let mut next = vec![0.0; coeffs.len() + 1];
            for (i, a) in coeffs.iter().enumerate() {
                next[i] -= r * a;
                next[i + 1] += a;
            }
            coeffs = next;
        }
        let roots = orth_poly_roots(&coeffs).unwrap();
        for (a, b) in roots.iter().zip(targets) {
            assert!((a - b).abs() < 1e-13, "{a} vs {b}");
        }
    }

    #[test]
    fn affine_moment_transform_matches_direct_powers() {
        let ts: [f64; 3] = [0.1, 0.5, 0.9];
        let cs: [f64; 3] = [0.2, 0.3, 0.5];
        let mu: Vec<f64> = (0..6).map(|k| ts.iter().zip(cs).map(|(t, c)| c * t.powi(k)).sum()).collect();
        let (nu, _) = affine_moments(&mu, 2.0, -1.0);
        for (k, nk) in nu.iter().enumerate() {
            let direct: f64 = ts.iter().zip(cs).map(|(t, c)| c * (2.0 * t - 1.0).powi(k as i32)).sum();
            assert!((nk - direct).abs() < 1e-14);
        }
    }

    #[test]
    fn closed_form_radau_n2() {
        let cert = principal_from_moments(&pt(&[0.5, 0.3]), unit()).unwrap();
        let a = cert.naming().atoms();
        assert_eq!(a.len(), 2);
        assert_eq!(a[0].t, 0.0);
        assert!((a[0].c - 1.0 / 6.0).abs() < 1e-12);
        assert!((a[1].t - 0.6).abs() < 1e-12);
        assert!((a[1].c - 5.0 / 6.0).abs() < 1e-12);
    }

    #[test]
    fn hand_hankel_n3() {
        let cert = principal_from_moments(&pt(&[0.5, 0.3125, 0.21875]), unit()).unwrap();
        let a = cert.naming().atoms();
        assert_eq!(a.len(), 2);
        assert!((a[0].t - 0.25).abs() < 1e-10 && (a[0].c - 0.5).abs() < 1e-10);
        assert!((a[1].t - 0.75).abs() < 1e-10 && (a[1].c - 0.5).abs() < 1e-10);
    }

    #[test]
    fn n1_single_atom() {
        let cert = principal_from_moments(&pt(&[0.4]), unit()).unwrap();
        assert_eq!(cert.naming().atoms(), &[Atom::new(0.4, 1.0)]);
    }

    #[test]
    fn curve_points_have_single_mass() {
        for n in 1..=8 {
            let cert = principal_from_moments(&lift(0.3, n), unit()).unwrap();
            let a = cert.naming().atoms();
            let last = a.last().unwrap();
            assert!((last.t - 0.3).abs() < 1e-9 && (last.c - 1.0).abs() < 1e-9, "n = {n}: {a:?}");
            if n % 2 == 0 {
                assert_eq!(a.len(), 2);
                assert_eq!(a[0].t, 0.0);
                assert!(a[0].c.abs() < 1e-9);
            } else {
                assert_eq!(a.len(), 1);
            }
        }
        for n in 1..=6 {
            let cert = principal_from_moments(&lift(0.0, n), unit()).unwrap();
            assert_eq!(cert.naming().atoms(), &[Atom::new(0.0, 1.0)]);
        }
    }

    #[test]
    fn membership_examples() {
        let v = membership(&lift(0.5, 2), unit());
        assert_eq!(v.tag, MembershipTag::BoundaryFace);
        let a = v.certificate.as_ref().unwrap().naming().atoms().to_vec();
        assert_eq!(a.len(), 2);
        assert_eq!(a[0].t, 0.0);
        assert!(a[0].c.abs() < 1e-12);
        assert!((a[1].t - 0.5).abs() < 1e-12 && (a[1].c - 1.0).abs() < 1e-12);

        assert_eq!(membership(&pt(&[0.5, 0.3]), unit()).tag, MembershipTag::Inside);

        let out = membership(&pt(&[0.5, 0.6]), unit());
        assert_eq!(out.tag, MembershipTag::Outside);
        assert!(out.diagnostic.is_some());
        assert!(matches!(principal_from_moments(&pt(&[0.5, 0.6]), unit()), Err(NamingError::OutsideHull(_))));
    }

    #[test]
    fn below_the_parabola_is_outside() {
        // v_2 < v_1^2 violates Cauchy-Schwarz
        assert_eq!(membership(&pt(&[0.5, 0.2]), unit()).tag, MembershipTag::Outside);
        // v_1 out of range
        assert_eq!(membership(&pt(&[1.5]), unit()).tag, MembershipTag::Outside);
        assert_eq!(membership(&pt(&[-0.1, 0.01, 0.0]), unit()).tag, MembershipTag::Outside);
    }

    #[test]
    fn dimension_cap() {
        let p = lift(0.5, 14);
        assert!(matches!(principal_from_moments(&p, unit()), Err(NamingError::DimensionCap { .. })));
        let opts = SolveOptions { max_n: 20, ..SolveOptions::default() };
        assert!(principal_from_moments_with(&p, unit(), &opts).is_ok());
    }
}
