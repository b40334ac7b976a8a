//! Simplification, canonical forms, equivalence and the two reductions
//! (linear Carathéodory elimination and sub-sum re-naming).

use nalgebra::DMatrix;

use crate::error::{NamingError, Result};
use crate::naming::{Atom, Naming, NamingIndex, Parity};
use crate::principal::{principal_from_moments_with, SolveOptions};
use crate::tolerance::Tolerances;

/// A proper-for-`n`, non-reducible naming: the unique representative of its
/// equivalence class.
#[derive(Debug, Clone, PartialEq)]
pub struct CanonicalNaming(Naming);

impl CanonicalNaming {
    pub fn naming(&self) -> &Naming {
        &self.0
    }

    pub fn into_naming(self) -> Naming {
        self.0
    }
}

impl AsRef<Naming> for CanonicalNaming {
    fn as_ref(&self) -> &Naming {
        &self.0
    }
}

/// Merges two atoms at (numerically) the same parameter. Bit-equal
/// parameters are kept as is; otherwise the weighted mean is used, except
/// that a pinned `t_min` atom never moves.
fn merge(a: Atom, b: Atom, pinned: bool) -> Atom {
    let c = a.c + b.c;
    let t = if pinned || a.t == b.t || c <= 0.0 { a.t } else { (a.c * a.t + b.c * b.t) / c };
    Atom::new(t, c)
}

/// Position and kind of the first reducible feature, scanning by atom index.
enum Feature {
    Zero(usize),
    Pair(usize),
}

fn first_feature(p: &Naming, tol: &Tolerances) -> Option<Feature> {
    let eps_t = p.interval().same_point_tol(tol);
    let atoms = p.atoms();
    for j in 0..atoms.len() {
        if atoms[j].c <= tol.c_zero && !p.is_pinned(j) {
            return Some(Feature::Zero(j));
        }
        if j + 1 < atoms.len() && (atoms[j + 1].t - atoms[j].t).abs() <= eps_t {
            return Some(Feature::Pair(j));
        }
    }
    None
}

/// Removes one reducible feature: the first zero-coefficient atom (never the
/// pinned `t_min` atom) or the first adjacent equal-parameter pair, whichever
/// comes first by atom index.
pub fn simplify_once(p: &Naming) -> Result<Naming> {
    simplify_once_with(p, &Tolerances::default())
}

pub fn simplify_once_with(p: &Naming, tol: &Tolerances) -> Result<Naming> {
    let feature = first_feature(p, tol).ok_or(NamingError::NotReducible)?;
    let mut atoms = p.atoms().to_vec();
    match feature {
        Feature::Zero(j) => {
            atoms.remove(j);
        }
        Feature::Pair(j) => {
            let b = atoms.remove(j + 1);
            atoms[j] = merge(atoms[j], b, p.is_pinned(j));
        }
    }
    Naming::with_tolerances(p.interval(), p.n(), p.parity(), atoms, tol)
}

/// Applies [`simplify_once`] until nothing is reducible. This normal form is
/// defined for any naming, proper or not.
pub fn simplify_fully(p: &Naming, tol: &Tolerances) -> Result<Naming> {
    let mut cur = p.clone();
    while cur.is_reducible_with(tol) {
        cur = simplify_once_with(&cur, tol)?;
    }
    Ok(cur)
}

/// The canonical form of a proper-for-`n` naming.
pub fn canonicalize(p: &Naming) -> Result<CanonicalNaming> {
    canonicalize_with(p, &Tolerances::default())
}

pub fn canonicalize_with(p: &Naming, tol: &Tolerances) -> Result<CanonicalNaming> {
    if !p.has_correct_parity() {
        return Err(NamingError::ParityMismatch { n: p.n() });
    }
    let reduced = simplify_fully(p, tol)?;
    if reduced.index() > NamingIndex::proper_bound(p.n()) {
        return Err(NamingError::NotProper { n: p.n(), twice_index: reduced.index().twice() });
    }
    Ok(CanonicalNaming(reduced))
}

fn check_same_domain(p1: &Naming, p2: &Naming) -> Result<()> {
    if p1.n() != p2.n() {
        return Err(NamingError::DomainMismatch(format!("n = {} vs n = {}", p1.n(), p2.n())));
    }
    if p1.interval() != p2.interval() {
        return Err(NamingError::DomainMismatch(format!("interval {} vs {}", p1.interval(), p2.interval())));
    }
    Ok(())
}

/// Whether two correct-parity namings reach the same non-reducible form
/// through zero-additions, equal-splits and their inverses.
pub fn equivalent(p1: &Naming, p2: &Naming) -> Result<bool> {
    equivalent_with(p1, p2, &Tolerances::default())
}

pub fn equivalent_with(p1: &Naming, p2: &Naming, tol: &Tolerances) -> Result<bool> {
    check_same_domain(p1, p2)?;
    for p in [p1, p2] {
        if !p.has_correct_parity() {
            return Err(NamingError::ParityMismatch { n: p.n() });
        }
    }
    let a = simplify_fully(p1, tol)?;
    let b = simplify_fully(p2, tol)?;
    if a.len() != b.len() {
        return Ok(false);
    }
    let eps_t = a.interval().same_point_tol(tol);
    Ok(a.atoms().iter().zip(b.atoms()).all(|(x, y)| (x.t - y.t).abs() <= eps_t && (x.c - y.c).abs() <= tol.equivalence))
}

/// Null vector of the lifted `(n+1)×k` node matrix, `k = n + 2`.
fn null_vector(ts: &[f64], n: usize) -> Vec<f64> {
    let k = ts.len();
    // pad to square so the SVD returns a full right basis
    let a = DMatrix::from_fn(k, k, |i, j| if i <= n { ts[j].powi(i as i32) } else { 0.0 });
    let svd = a.svd(false, true);
    let v_t = svd.v_t.expect("requested V^T");
    let (idx, _) =
        svd.singular_values
            .iter()
            .enumerate()
            .fold((0, f64::INFINITY), |best, (i, s)| if *s < best.1 { (i, *s) } else { best });
    v_t.row(idx).iter().copied().collect()
}

/// Linear Carathéodory reduction to at most `n + 1` atoms. Each round takes
/// a null vector `d` of the lifted node matrix of the first `n + 2` atoms and
/// moves the weights along `±d` until one hits zero, then drops that atom.
/// The pinned `t_min` atom of a half-integer naming may reach zero weight
/// but is never the one dropped.
pub fn caratheodory_linear_reduce(p: &Naming) -> Result<Naming> {
    caratheodory_linear_reduce_with(p, &Tolerances::default())
}

pub fn caratheodory_linear_reduce_with(p: &Naming, tol: &Tolerances) -> Result<Naming> {
    let n = p.n();
    let mut atoms = p.atoms().to_vec();
    let pinned = p.parity() == Parity::HalfInteger;
    while atoms.len() > n + 1 {
        let k = n + 2;
        let ts: Vec<f64> = atoms[..k].iter().map(|a| a.t).collect();
        let d = null_vector(&ts, n);
        // best (step, index, sign) over both directions
        let mut best: Option<(f64, usize, f64)> = None;
        for sign in [1.0, -1.0] {
            let mut dir_best: Option<(f64, usize)> = None;
            for (j, dj) in d.iter().enumerate() {
                let dj = sign * dj;
                if dj < 0.0 {
                    let step = atoms[j].c / -dj;
                    if dir_best.is_none_or(|(s, _)| step < s) {
                        dir_best = Some((step, j));
                    }
                }
            }
            let Some((step, j)) = dir_best else { continue };
            if pinned && j == 0 {
                continue;
            }
            if best.is_none_or(|(s, i, _)| step < s || (step == s && j < i)) {
                best = Some((step, j, sign));
            }
        }
        let (step, drop, sign) =
            best.ok_or_else(|| NamingError::InvalidNaming("no admissible Carathéodory direction".into()))?;
        for (j, dj) in d.iter().enumerate() {
            atoms[j].c = (atoms[j].c + step * sign * dj).max(0.0);
        }
        atoms.remove(drop);
    }
    let total: f64 = atoms.iter().map(|a| a.c).sum();
    for a in &mut atoms {
        a.c /= total;
    }
    Naming::with_tolerances(p.interval(), n, p.parity(), atoms, tol)
}

/// Sorts, then merges neighbours closer than the same-point tolerance.
fn merge_close(atoms: &mut Vec<Atom>, eps_t: f64, pinned_first: bool) {
    atoms.sort_by(|a, b| a.t.total_cmp(&b.t));
    let mut out: Vec<Atom> = Vec::with_capacity(atoms.len());
    for a in atoms.drain(..) {
        let pin = pinned_first && out.len() == 1;
        match out.last_mut() {
            Some(last) if (a.t - last.t).abs() <= eps_t => *last = merge(*last, a, pin),
            _ => out.push(a),
        }
    }
    *atoms = out;
}

/// Reduces any naming to its canonical form by repeatedly re-naming the sub-sum of its
/// first `Q` atoms (`Q = (n+3)/2` or `(n+4)/2`) through the moment solver.
/// An integer naming for even `n` first gets a zero-weight `t_min` atom; a
/// half-integer naming for odd `n` is read as the integer naming it also is.
pub fn reduce_to_principal(p: &Naming) -> Result<CanonicalNaming> {
    reduce_to_principal_with(p, &SolveOptions::default())
}

pub fn reduce_to_principal_with(p: &Naming, opts: &SolveOptions) -> Result<CanonicalNaming> {
    let tol = &opts.tol;
    let n = p.n();
    let interval = p.interval();
    let parity = Parity::for_n(n);
    let mut cur = match (parity, p.parity()) {
        (Parity::Integer, _) => Naming::with_tolerances(interval, n, parity, p.atoms().to_vec(), tol)?,
        (Parity::HalfInteger, Parity::HalfInteger) => p.clone(),
        (Parity::HalfInteger, Parity::Integer) => {
            let mut atoms = vec![Atom::new(interval.t_min(), 0.0)];
            atoms.extend_from_slice(p.atoms());
            Naming::with_tolerances(interval, n, parity, atoms, tol)?
        }
    };
    let q = if n % 2 == 1 { (n + 3) / 2 } else { (n + 4) / 2 };
    let bound = NamingIndex::proper_bound(n);
    let eps_t = interval.same_point_tol(tol);
    let limit = 4 * cur.len().max(1);
    let mut iterations = 0;
    loop {
        cur = simplify_fully(&cur, tol)?;
        if cur.index() <= bound {
            return canonicalize_with(&cur, tol);
        }
        iterations += 1;
        if iterations > limit {
            return Err(NamingError::ReductionStalled { iterations: limit });
        }
        let head = &cur.atoms()[..q];
        let mass: f64 = head.iter().map(|a| a.c).sum();
        let scaled: Vec<Atom> = head.iter().map(|a| Atom::new(a.t, a.c / mass)).collect();
        let sub = Naming::with_tolerances(interval, n, parity, scaled, tol)?;
        let renamed = principal_from_moments_with(&sub.evaluate(), interval, opts)?;
        let mut atoms: Vec<Atom> = renamed.naming().atoms().iter().map(|a| Atom::new(a.t, a.c * mass)).collect();
        atoms.extend_from_slice(&cur.atoms()[q..]);
        merge_close(&mut atoms, eps_t, parity == Parity::HalfInteger);
        let total: f64 = atoms.iter().map(|a| a.c).sum();
        for a in &mut atoms {
            a.c /= total;
        }
        cur = Naming::with_tolerances(interval, n, parity, atoms, tol)?;
    }
}
