//! Acceptance suite. Runs every criterion at its stated tolerance, prints one
//! PASS/FAIL line each, and exits nonzero if any fails.

use std::process::ExitCode;
use std::time::Instant;

use moment_naming::oracle::RANK_CHANGE_DISTANCE;
use moment_naming::transform::curve_sum;
use moment_naming::{
    boundary_band, canonicalize, continuity_probe, equivalent, lp_residual, membership, principal_from_moments,
    pull_point, push_naming, random_naming, reduce_to_principal, Atom, GridSpec, Interval, MembershipTag, MomentPoint,
    Naming, Parity, PolyCurve, PvMatrix,
};
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn intervals() -> [Interval; 2] {
    [Interval::new(0.0, 1.0).unwrap(), Interval::new(-1.0, 2.0).unwrap()]
}

/// Largest `|a_k - b_k| / max|t|^k` over components.
fn rel_error(a: &[f64], b: &[f64], interval: Interval) -> f64 {
    a.iter()
        .zip(b)
        .enumerate()
        .map(|(i, (x, y))| (x - y).abs() / interval.component_scale(i + 1).max(1.0))
        .fold(0.0, f64::max)
}

/// Count and `t_min` checks shared by the round-trip criteria.
fn shape_error(p: &Naming) -> Option<String> {
    let n = p.n();
    if p.index().twice() > n + 1 {
        return Some(format!("index {} exceeds (n+1)/2 for n = {n}", p.index()));
    }
    if n.is_multiple_of(2) && p.atoms()[0].t != p.interval().t_min() {
        return Some(format!("even n = {n} without an atom at t_min"));
    }
    None
}

#[allow(clippy::needless_range_loop)]
fn round_trip_existence() -> Outcome {
    let started = Instant::now();
    let mut worst = [0.0f64; 9];
    for n in 1..=8 {
        let limit = if n <= 6 { 1e-8 } else { 1e-6 };
        for (ii, interval) in intervals().into_iter().enumerate() {
            for s in 0..500u64 {
                let seed = (n as u64) << 32 | (ii as u64) << 16 | s;
                let atoms = 1 + (s as usize % (n + 3));
                let p = random_naming(n, interval, atoms, seed).map_err(|e| e.to_string())?;
                let v = p.evaluate();
                let q = principal_from_moments(&v, interval).map_err(|e| format!("n = {n}, seed {seed}: {e}"))?;
                if let Some(msg) = shape_error(q.naming()) {
                    return Err(format!("seed {seed}: {msg}"));
                }
                let err = rel_error(v.coords(), q.naming().evaluate().coords(), interval);
                if err > limit {
                    return Err(format!("n = {n}, seed {seed}: relative error {err:.3e} > {limit:e}"));
                }
                worst[n] = worst[n].max(err);
            }
        }
    }
    let elapsed = started.elapsed().as_secs_f64();
    let low = worst[1..=6].iter().cloned().fold(0.0, f64::max);
    let high = worst[7].max(worst[8]);
    Ok(format!("8000 namings, worst {low:.1e} (n<=6), {high:.1e} (n=7,8), {elapsed:.1}s"))
}

fn uniqueness() -> Outcome {
    let mut worst_t = 0.0f64;
    let mut worst_c = 0.0f64;
    for n in 1..=6 {
        for (ii, interval) in intervals().into_iter().enumerate() {
            for s in 0..100u64 {
                let seed = 0xA000_0000 | (n as u64) << 20 | (ii as u64) << 16 | s;
                // even n adds its own t_min atom, keeping the total at 2(n+1)
                let atoms = if n % 2 == 0 { 2 * n + 1 } else { 2 * (n + 1) };
                let generator = random_naming(n, interval, atoms, seed).map_err(|e| e.to_string())?;
                let direct = principal_from_moments(&generator.evaluate(), interval)
                    .map_err(|e| format!("n = {n}, seed {seed}, direct: {e}"))?;
                let reduced =
                    reduce_to_principal(&generator).map_err(|e| format!("n = {n}, seed {seed}, reduce: {e}"))?;
                let (a, b) = (direct.naming().atoms(), reduced.naming().atoms());
                if a.len() != b.len() {
                    return Err(format!("n = {n}, seed {seed}: {} atoms vs {}", a.len(), b.len()));
                }
                for (x, y) in a.iter().zip(b) {
                    worst_t = worst_t.max((x.t - y.t).abs() / interval.width());
                    worst_c = worst_c.max((x.c - y.c).abs());
                }
                if worst_t > 1e-6 || worst_c > 1e-6 {
                    return Err(format!("n = {n}, seed {seed}: |dt|/w = {worst_t:.2e}, |dc| = {worst_c:.2e}"));
                }
            }
        }
    }
    Ok(format!("1200 points, worst |dt|/w {worst_t:.1e}, |dc| {worst_c:.1e}"))
}

fn pseudo_vandermonde() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst = 0.0f64;
    let mut duplicates = 0;
    for case in 0..1000 {
        let n = rng.random_range(0..=8usize);
        let q = rng.random_range((n + 2) / 2..=n + 1);
        let nodes = loop {
            let mut u: Vec<f64> = (0..q).map(|_| rng.random_range(-1.5..1.5)).collect();
            u.sort_by(f64::total_cmp);
            if u.windows(2).all(|w| w[1] - w[0] >= 0.05) {
                break u;
            }
        };
        let m = PvMatrix::new(n, nodes.clone()).map_err(|e| e.to_string())?;
        let rec = m.det_recursive().map_err(|e| format!("case {case}: {e}"))?;
        let lu = m.det_lu();
        if rec == 0.0 || lu == 0.0 {
            return Err(format!("case {case}: zero determinant"));
        }
        let rel = (rec - lu).abs() / rec.abs();
        worst = worst.max(rel);
        if rel > 1e-10 {
            return Err(format!("case {case} n = {n} q = {q}: relative gap {rel:.2e}"));
        }
        if q >= 2 {
            let mut dup = nodes;
            dup[1] = dup[0];
            let d = PvMatrix::new(n, dup).map_err(|e| e.to_string())?;
            let matrix = d.build();
            // Hadamard bound on |det|
            let scale: f64 = matrix.column_iter().map(|c| c.norm()).product();
            if d.det_lu().abs() > 1e-12 * scale {
                return Err(format!("case {case}: duplicate nodes give det {:.2e}", d.det_lu()));
            }
            duplicates += 1;
        }
    }
    Ok(format!("1000 cases, worst relative gap {worst:.1e}, {duplicates} duplicate-node checks"))
}

fn closed_form() -> Outcome {
    let unit = Interval::new(0.0, 1.0).unwrap();
    let check = |v: Vec<f64>, expected: &[(f64, f64)], tol: f64| -> Result<f64, String> {
        let p = principal_from_moments(&MomentPoint::new(v).unwrap(), unit).map_err(|e| e.to_string())?;
        let atoms = p.naming().atoms();
        if atoms.len() != expected.len() {
            return Err(format!("{} atoms, expected {}", atoms.len(), expected.len()));
        }
        let err =
            atoms.iter().zip(expected).map(|(a, &(t, c))| (a.t - t).abs().max((a.c - c).abs())).fold(0.0, f64::max);
        if err > tol {
            return Err(format!("error {err:.2e} > {tol:e}"));
        }
        Ok(err)
    };
    let e2 = check(vec![0.5, 0.3], &[(0.0, 1.0 / 6.0), (0.6, 5.0 / 6.0)], 1e-12)?;
    let e3 = check(vec![0.5, 0.3125, 0.21875], &[(0.25, 0.5), (0.75, 0.5)], 1e-10)?;
    Ok(format!("n=2 error {e2:.1e}, n=3 error {e3:.1e}"))
}

fn oracle_agreement() -> Outcome {
    let unit = Interval::new(0.0, 1.0).unwrap();
    let grid = GridSpec::new(2001, 1e-6);
    let mut excused = 0;
    let mut inside = 0;
    for n in 1..=4 {
        let band: f64 = boundary_band(n, unit, &grid).iter().sum();
        let mut rng = ChaCha8Rng::seed_from_u64(500 + n as u64);
        for i in 0..200 {
            let v: Vec<f64> = (1..=n)
                .map(|k| {
                    let (lo, hi) = unit.power_range(k);
                    rng.random_range(lo..=hi)
                })
                .collect();
            let v = MomentPoint::new(v).unwrap();
            let exact = membership(&v, unit).is_member();
            let residual = lp_residual(&v, unit, &grid).map_err(|e| e.to_string())?;
            let lp = residual <= grid.slack;
            inside += exact as usize;
            if exact == lp {
                continue;
            }
            // Inside but missed by the grid polytope: the grid's chord error
            // explains it only if the residual stays within the band.
            // Outside but LP-feasible: only a point within the slack of the
            // hull, never an exact convex combination of grid points.
            let in_band = if exact { residual <= band } else { residual > 1e-9 };
            if !in_band {
                return Err(format!(
                    "n = {n}, point {i} {:?}: solver {exact}, LP {lp}, residual {residual:.2e}",
                    v.coords()
                ));
            }
            excused += 1;
        }
    }
    Ok(format!("800 points ({inside} members), 0 disagreements outside the band, {excused} inside it"))
}

fn canonicalization_algebra() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for s in 0..500u64 {
        let n = 1 + (s as usize % 6);
        let interval = intervals()[s as usize % 2];
        // largest count that keeps the index within (n+1)/2
        let cap = if n % 2 == 1 { n.div_ceil(2) } else { n / 2 };
        let p = random_naming(n, interval, 1 + (s as usize % cap), 6000 + s).map_err(|e| e.to_string())?;
        let once = canonicalize(&p).map_err(|e| format!("seed {s}: {e}"))?;
        let twice = canonicalize(once.naming()).map_err(|e| format!("seed {s}: {e}"))?;
        let bits = |q: &Naming| q.atoms().iter().map(|a| (a.t.to_bits(), a.c.to_bits())).collect::<Vec<_>>();
        if bits(once.naming()) != bits(twice.naming()) {
            return Err(format!("seed {s}: canonicalize is not idempotent"));
        }

        // zero additions and equal splits
        let mut atoms = p.atoms().to_vec();
        for _ in 0..rng.random_range(1..=4) {
            if rng.random_bool(0.5) {
                let t = rng.random_range(interval.t_min()..interval.t_max());
                if t > interval.t_min() {
                    atoms.push(Atom::new(t, 0.0));
                }
            } else {
                let j = rng.random_range(0..atoms.len());
                let half = atoms[j].c / 2.0;
                atoms[j].c = half;
                atoms.insert(j + 1, Atom::new(atoms[j].t, half));
            }
            atoms.sort_by(|a, b| a.t.total_cmp(&b.t));
        }
        let chained = Naming::new(interval, n, p.parity(), atoms).map_err(|e| format!("seed {s}: {e}"))?;
        if !equivalent(&p, &chained).map_err(|e| format!("seed {s}: {e}"))? {
            return Err(format!("seed {s}: chain not recognized as equivalent"));
        }

        // perturbed atom
        let perturbed = loop {
            let mut atoms = p.atoms().to_vec();
            let lo = if p.parity() == Parity::HalfInteger { 1 } else { 0 };
            if lo == atoms.len() {
                atoms.push(Atom::new(interval.t_max(), 0.0));
            }
            let j = rng.random_range(lo..atoms.len());
            atoms[j].t = rng.random_range(interval.t_min()..=interval.t_max());
            if atoms[j].c < 0.05 {
                let shift = 0.05 - atoms[j].c;
                atoms[j].c = 0.05;
                let k = if j == 0 { atoms.len() - 1 } else { 0 };
                if atoms[k].c < shift {
                    continue;
                }
                atoms[k].c -= shift;
            }
            atoms.sort_by(|a, b| a.t.total_cmp(&b.t));
            let Ok(q) = Naming::new(interval, n, p.parity(), atoms) else { continue };
            let gap =
                p.evaluate().coords().iter().zip(q.evaluate().coords()).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
            if gap > 1e-4 {
                break q;
            }
        };
        if equivalent(&p, &perturbed).map_err(|e| format!("seed {s}: {e}"))? {
            return Err(format!("seed {s}: perturbed naming reported equivalent"));
        }
    }
    Ok("500 idempotence, 500 positive chains, 500 negative pairs".into())
}

fn homeomorphism_smoke() -> Outcome {
    let mut worst = 0.0f64;
    for n in 1..=5 {
        let interval = intervals()[n % 2];
        let mut tested = 0;
        let mut seed = 7000 + 100 * n as u64;
        while tested < 20 {
            seed += 1;
            let v = random_naming(n, interval, n + 3, seed).map_err(|e| e.to_string())?.evaluate();
            if membership(&v, interval).tag != MembershipTag::Inside {
                continue;
            }
            tested += 1;
            let probes: Vec<f64> = [1e-6, 2e-6, 4e-6]
                .iter()
                .map(|&r| continuity_probe(&v, interval, r, 16, seed))
                .collect::<Result<_, _>>()
                .map_err(|e| format!("n = {n}, seed {seed}: {e}"))?;
            if probes[0] > 1e-3 {
                return Err(format!("n = {n}, seed {seed}: probe {:.2e} > 1e-3", probes[0]));
            }
            if probes.windows(2).any(|w| w[1] < w[0]) {
                return Err(format!("n = {n}, seed {seed}: probe not monotone {probes:?}"));
            }
            debug_assert!(probes[0] < RANK_CHANGE_DISTANCE);
            worst = worst.max(probes[0]);
        }
    }
    Ok(format!("100 interior points, worst probe at 1e-6: {worst:.1e}"))
}

fn corollary() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst = 0.0f64;
    for n in 1..=5 {
        for s in 0..100u64 {
            let interval = intervals()[s as usize % 2];
            let curve = loop {
                let rows: Vec<Vec<f64>> =
                    (0..n).map(|_| (0..=n).map(|_| rng.random_range(-2.0..2.0)).collect()).collect();
                let c = PolyCurve::new(rows).unwrap();
                let lin: DMatrix<f64> = c.linear_part();
                let sv = lin.singular_values();
                if sv.min() > 1e-2 * sv.max() {
                    break c;
                }
            };
            let p = random_naming(n, interval, 1 + (s as usize % (n + 2)), 8000 + s).map_err(|e| e.to_string())?;
            let target = curve_sum(&push_naming(&p, &curve).map_err(|e| e.to_string())?);
            let v = pull_point(&target, &curve).map_err(|e| format!("n = {n}, seed {s}: {e}"))?;
            let q = principal_from_moments(&v, interval).map_err(|e| format!("n = {n}, seed {s}: {e}"))?;
            if let Some(msg) = shape_error(q.naming()) {
                return Err(format!("n = {n}, seed {s}: {msg}"));
            }
            let back = curve_sum(&push_naming(q.naming(), &curve).map_err(|e| e.to_string())?);
            for (i, (x, y)) in target.iter().zip(&back).enumerate() {
                // natural magnitude of component i over the hull
                let scale: f64 = (0..=n)
                    .map(|k| curve.coefficients()[(i, k)].abs() * interval.component_scale(k))
                    .sum::<f64>()
                    .max(1e-300);
                let rel = (x - y).abs() / scale;
                worst = worst.max(rel);
                if rel > 1e-9 {
                    return Err(format!("n = {n}, seed {s}: component {i} relative error {rel:.2e}"));
                }
            }
        }
    }
    Ok(format!("500 curves, worst relative error {worst:.1e}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("round-trip existence", round_trip_existence),
        ("uniqueness", uniqueness),
        ("pseudo-Vandermonde determinant", pseudo_vandermonde),
        ("closed-form namings", closed_form),
        ("oracle agreement", oracle_agreement),
        ("canonicalization algebra", canonicalization_algebra),
        ("homeomorphism smoke", homeomorphism_smoke),
        ("curve corollary", corollary),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail})", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({detail})", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
