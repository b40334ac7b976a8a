//! Browser bindings for the moment-naming demo page.
//!
//! Every export takes and returns plain numbers so the same functions run
//! natively in tests and through wasm-bindgen in the page.

use moment_naming::{membership, principal_from_moments, Interval, MembershipTag, MomentPoint, NamingError, PvMatrix};
use wasm_bindgen::prelude::*;

fn interval(t_min: f64, t_max: f64) -> Result<Interval, String> {
    Interval::new(t_min, t_max).map_err(|e| e.to_string())
}

/// Canonical naming of the moment point `coords` on `[t_min, t_max]`,
/// flattened as `[t_0, c_0, t_1, c_1, ...]`.
#[wasm_bindgen]
pub fn name_point(t_min: f64, t_max: f64, coords: Vec<f64>) -> Result<Vec<f64>, String> {
    let iv = interval(t_min, t_max)?;
    let point = MomentPoint::new(coords).map_err(|e| e.to_string())?;
    let cert = principal_from_moments(&point, iv).map_err(|e| e.to_string())?;
    Ok(cert.naming().atoms().iter().flat_map(|a| [a.t, a.c]).collect())
}

/// Membership of each pixel of a `cols` by `rows` raster over the box
/// `[x0, x1] x [y0, y1]` in the plane of `(m_1, m_2)`, row-major from the
/// top. 0 is outside, 1 the boundary, 2 the interior.
#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn hull_raster(
    t_min: f64,
    t_max: f64,
    cols: usize,
    rows: usize,
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
) -> Result<Vec<u8>, String> {
    let iv = interval(t_min, t_max)?;
    if cols == 0 || rows == 0 {
        return Err("raster needs at least one pixel".into());
    }
    let centre = |i: usize, k: usize, lo: f64, hi: f64| lo + (hi - lo) * (i as f64 + 0.5) / k as f64;
    let mut out = Vec::with_capacity(cols * rows);
    for r in 0..rows {
        let y = centre(rows - 1 - r, rows, y0, y1);
        for c in 0..cols {
            let x = centre(c, cols, x0, x1);
            let point = MomentPoint::new(vec![x, y]).map_err(|e| e.to_string())?;
            out.push(match membership(&point, iv).tag {
                MembershipTag::Outside => 0,
                MembershipTag::BoundaryFace => 1,
                MembershipTag::Inside => 2,
            });
        }
    }
    Ok(out)
}

/// `[recursive, exact]` determinants of the pseudo-Vandermonde matrix of
/// order `n` on `nodes`. Coincident nodes give zero from the recursion.
#[wasm_bindgen]
pub fn pv_det(n: usize, nodes: Vec<f64>) -> Result<Vec<f64>, String> {
    let m = PvMatrix::new(n, nodes).map_err(|e| e.to_string())?;
    let rec = match m.det_recursive() {
        Ok(d) => d,
        Err(NamingError::DegenerateNodes) => 0.0,
        Err(e) => return Err(e.to_string()),
    };
    Ok(vec![rec, m.det_lu()])
}
