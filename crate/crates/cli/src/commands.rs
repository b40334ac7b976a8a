use std::fmt::Write as _;
use std::fs;
use std::io::{self, Read};

use moment_naming::format::{fmt_real, read_curve, read_naming, read_points, write_naming, write_points, PointStream};
use moment_naming::reduction::canonicalize_with;
use moment_naming::transform::{curve_sum, name_on_curve, CurveAtom};
use moment_naming::{
    boundary_band, lp_residual, membership_with, principal_from_moments_with, push_naming, random_naming,
    reduce_to_principal_with, GridSpec, MembershipTag, MembershipVerdict, PvMatrix, Result as NamingResult,
};
use rayon::prelude::*;

use crate::config::{interval, RunConfig};
use crate::error::CliError;

/// Text written to stdout and the exit status it goes with.
pub struct Output {
    pub text: String,
    pub error: Option<CliError>,
}

impl Output {
    fn ok(text: String) -> Self {
        Self { text, error: None }
    }
}

pub fn read_input(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| CliError::usage(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| CliError::usage(format!("{path}: {e}")))
    }
}

/// Runs `f` over the points on `jobs` threads, keeping input order.
fn batch<T: Send>(
    cfg: &RunConfig,
    stream: &PointStream,
    f: impl Fn(usize) -> T + Sync + Send,
) -> Result<Vec<T>, CliError> {
    if cfg.jobs == 1 {
        return Ok((0..stream.points.len()).map(f).collect());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| CliError::usage(format!("thread pool: {e}")))?;
    Ok(pool.install(|| (0..stream.points.len()).into_par_iter().map(f).collect()))
}

/// Canonical naming of every point; namings are separated by blank lines.
pub fn name(cfg: &RunConfig, text: &str) -> Result<Output, CliError> {
    let stream = read_points(text)?;
    let opts = cfg.solve_options();
    let results = batch(cfg, &stream, |i| principal_from_moments_with(&stream.points[i], stream.interval, &opts))?;
    let total = results.len();
    let mut out = Vec::new();
    let mut failed = 0;
    let mut worst: Option<CliError> = None;
    for (i, r) in results.into_iter().enumerate() {
        match r {
            Ok(c) => out.push(write_naming(c.naming())),
            Err(e) => {
                failed += 1;
                let e = CliError::from(e);
                if worst.as_ref().is_none_or(|w| e.code > w.code) {
                    worst = Some(CliError { code: e.code, message: format!("point {}: {}", i + 1, e.message) });
                }
                if total > 1 {
                    eprintln!("point {}: {e}", i + 1);
                }
            }
        }
    }
    let error = worst.map(|w| {
        if total > 1 {
            CliError { code: w.code, message: format!("{failed} of {total} points not named") }
        } else {
            w
        }
    });
    Ok(Output { text: out.join("\n"), error })
}

pub fn eval(text: &str) -> Result<Output, CliError> {
    let p = read_naming(text)?;
    let stream = PointStream::new(p.n(), p.interval(), vec![p.evaluate()])?;
    Ok(Output::ok(write_points(&stream)))
}

pub fn canon(cfg: &RunConfig, text: &str) -> Result<Output, CliError> {
    let p = read_naming(text)?;
    Ok(Output::ok(write_naming(canonicalize_with(&p, &cfg.tol)?.naming())))
}

pub fn reduce(cfg: &RunConfig, text: &str) -> Result<Output, CliError> {
    let p = read_naming(text)?;
    let r = reduce_to_principal_with(&p, &cfg.solve_options())?;
    Ok(Output::ok(write_naming(r.naming())))
}

pub struct OracleArgs {
    pub grid: usize,
    pub slack: f64,
}

fn verdict_line(v: &MembershipVerdict) -> String {
    let mut line = format!("{} rank {}", v.tag.as_str(), v.rank);
    if let Some(d) = &v.diagnostic {
        let _ = write!(line, " ({d})");
    }
    line
}

/// One verdict line per point, then a summary. With the oracle, each line
/// also carries the grid LP residual; a disagreement is excused only when
/// the residual places the point within the grid's boundary band.
pub fn check_member(cfg: &RunConfig, text: &str, oracle: Option<OracleArgs>) -> Result<Output, CliError> {
    let stream = read_points(text)?;
    let opts = cfg.solve_options();
    let grid = oracle.map(|o| GridSpec::new(o.grid, o.slack));
    let band: f64 = grid.map_or(0.0, |g| boundary_band(stream.n(), stream.interval, &g).iter().sum());
    let rows = batch(cfg, &stream, |i| {
        let v = membership_with(&stream.points[i], stream.interval, &opts);
        let lp = grid.map(|g| lp_residual(&stream.points[i], stream.interval, &g));
        (v, lp)
    })?;

    let mut text = String::new();
    let (mut outside, mut inside, mut boundary) = (0, 0, 0);
    let (mut disagree, mut excused) = (0, 0);
    for (i, (v, lp)) in rows.into_iter().enumerate() {
        match v.tag {
            MembershipTag::Inside => inside += 1,
            MembershipTag::BoundaryFace => boundary += 1,
            MembershipTag::Outside => outside += 1,
        }
        let mut line = format!("{} {}", i + 1, verdict_line(&v));
        if let (Some(lp), Some(g)) = (lp, grid) {
            let residual = lp?;
            let lp_member = residual <= g.slack;
            let _ =
                write!(line, " lp {} residual {}", if lp_member { "member" } else { "nonmember" }, fmt_real(residual));
            if lp_member != v.is_member() {
                let in_band = if v.is_member() { residual <= band } else { residual > 1e-9 };
                if in_band {
                    excused += 1;
                    line.push_str(" excused");
                } else {
                    disagree += 1;
                    line.push_str(" DISAGREE");
                }
            }
        }
        text.push_str(&line);
        text.push('\n');
    }
    let _ =
        write!(text, "summary points {} inside {inside} boundary {boundary} outside {outside}", stream.points.len());
    if grid.is_some() {
        let _ = write!(text, " disagreements {disagree} excused {excused}");
    }
    text.push('\n');
    let error = if disagree > 0 {
        Some(CliError::numerical(format!("{disagree} disagreements with the grid oracle")))
    } else if outside > 0 {
        Some(CliError::outside(format!("{outside} points outside the hull")))
    } else {
        None
    };
    Ok(Output { text, error })
}

/// Determinant by the recursion, with the exact LU value alongside when asked.
pub fn pv_det(n: usize, q: Option<usize>, nodes: Vec<f64>, check: bool) -> Result<Output, CliError> {
    if let Some(q) = q {
        if q != nodes.len() {
            return Err(CliError::usage(format!("--q {q} but {} nodes given", nodes.len())));
        }
    }
    let m = PvMatrix::new(n, nodes)?;
    let det = match m.det_recursive() {
        Ok(d) => d,
        Err(moment_naming::NamingError::DegenerateNodes) => 0.0,
        Err(e) => return Err(e.into()),
    };
    let mut text = format!("{det}\n");
    if check {
        let _ = writeln!(text, "lu {}", m.det_lu());
    }
    Ok(Output::ok(text))
}

pub struct SampleArgs {
    pub n: usize,
    pub t_min: f64,
    pub t_max: f64,
    pub count: usize,
    pub atoms: Option<usize>,
}

/// Points of random namings; point `j` uses seed `seed + j`.
pub fn sample(cfg: &RunConfig, args: SampleArgs) -> Result<Output, CliError> {
    let iv = interval(args.t_min, args.t_max)?;
    let atoms = args.atoms.unwrap_or(args.n + 2);
    let points = (0..args.count)
        .map(|j| random_naming(args.n, iv, atoms, cfg.seed.wrapping_add(j as u64)).map(|p| p.evaluate()))
        .collect::<NamingResult<Vec<_>>>()?;
    Ok(Output::ok(write_points(&PointStream::new(args.n, iv, points)?)))
}

fn pushed_block(atoms: &[CurveAtom]) -> String {
    let mut s = format!("pushed {}\n", atoms.len());
    for a in atoms {
        let _ = writeln!(s, "{} {}", fmt_real(a.weight), join(&a.point));
    }
    let _ = writeln!(s, "sum {}", join(&curve_sum(atoms)));
    s
}

fn join(xs: &[f64]) -> String {
    xs.iter().map(|&x| fmt_real(x)).collect::<Vec<_>>().join(" ")
}

pub enum TransformInput {
    Naming(String),
    Points(String),
}

/// Pushes a naming onto the curve, or names points given in curve
/// coordinates and prints both the moment-curve naming and its image.
pub fn transform(cfg: &RunConfig, curve_text: &str, input: TransformInput) -> Result<Output, CliError> {
    let curve = read_curve(curve_text)?;
    match input {
        TransformInput::Naming(text) => {
            let p = read_naming(&text)?;
            Ok(Output::ok(pushed_block(&push_naming(&p, &curve)?)))
        }
        TransformInput::Points(text) => {
            let stream = read_points(&text)?;
            let opts = cfg.solve_options();
            let mut blocks = Vec::new();
            for w in &stream.points {
                let (cert, pushed) = name_on_curve(w.coords(), &curve, stream.interval, &opts)?;
                blocks.push(format!("{}{}", write_naming(cert.naming()), pushed_block(&pushed)));
            }
            Ok(Output::ok(blocks.join("\n")))
        }
    }
}
