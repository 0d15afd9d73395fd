//! Screw-symmetric realizations of a band.
//!
//! Every vertex of the polyhedron lies on one helix,
//! `v_k = (r cos kθ, r sin kθ, k h)`, so the squared chord between indices
//! `k` and `k + d` is `A (1 - cos dθ) + B d²` with `A = 2r²` and `B = h²`.
//! All three edge classes must have unit length. For a fixed twist `θ` that
//! is a linear system of three equations in the two unknowns `(A, B)`, which
//! is solvable exactly where
//!
//! ```text
//! D(θ) = det | 1 - cos aθ   a²   1 |
//!            | 1 - cos bθ   b²   1 |
//!            | 1 - cos cθ   c²   1 |
//! ```
//!
//! vanishes. The solver scans `D` on a uniform grid over `(0, π)`, brackets
//! every sign change, bisects it down, recovers `(A, B)` and keeps the roots
//! that describe a proper polyhedron. Twists in `(π, 2π)` are mirror images
//! because the equations only see `cos dθ`.

use std::f64::consts::{PI, TAU};

use log::debug;
use nalgebra::{Matrix3x2, Vector3};
use serde::{Deserialize, Serialize};

use crate::band::{BandSpec, EdgeClass, OffsetTriple};
use crate::error::{invalid, Result};
use crate::geometry::{triangle_area, Point};
use crate::realize;

/// Helix carrying the vertex orbit, in edge-length units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HelixParams {
    /// Cylinder radius `r`.
    pub radius: f64,
    /// Twist `θ` per index step, radians in `(0, π)`.
    pub twist: f64,
    /// Rise `h` per index step.
    pub rise: f64,
}

impl HelixParams {
    /// Boerdijk–Coxeter tetrahelix: `r = 3√3/10`, `θ = arccos(-2/3)`,
    /// `h = 1/√10`.
    pub fn tetrahelix() -> Self {
        Self {
            radius: 3.0 * 3f64.sqrt() / 10.0,
            twist: (-2.0f64 / 3.0).acos(),
            rise: 1.0 / 10f64.sqrt(),
        }
    }

    pub fn position(&self, k: i64) -> Point {
        let angle = k as f64 * self.twist;
        Point::new(
            self.radius * angle.cos(),
            self.radius * angle.sin(),
            k as f64 * self.rise,
        )
    }

    /// Distance between helix vertices `k` and `k + d`.
    pub fn chord(&self, d: i64) -> f64 {
        let d = d as f64;
        let sq = 2.0 * self.radius * self.radius * (1.0 - (d * self.twist).cos()) + d * d * self.rise * self.rise;
        sq.max(0.0).sqrt()
    }

    /// Largest `|chord(d) - 1|` over the three edge classes.
    pub fn residual(&self, offsets: &OffsetTriple) -> f64 {
        EdgeClass::ALL
            .iter()
            .map(|&class| (self.chord(offsets.offset(class) as i64) - 1.0).abs())
            .fold(0.0, f64::max)
    }
}

pub fn chord(params: &HelixParams, d: i64) -> f64 {
    params.chord(d)
}

/// Scan, refinement and acceptance settings. The defaults are part of the
/// public contract.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverOptions {
    pub theta_min: f64,
    pub theta_max: f64,
    pub grid_points: usize,
    pub bisection_tol: f64,
    pub residual_tol: f64,
    #[serde(rename = "min_A")]
    pub min_a: f64,
    #[serde(rename = "min_B")]
    pub min_b: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            theta_min: 1e-3,
            theta_max: PI - 1e-3,
            grid_points: 200_000,
            bisection_tol: 1e-13,
            residual_tol: 1e-9,
            min_a: 1e-9,
            min_b: 1e-9,
        }
    }
}

impl SolverOptions {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("theta_min", self.theta_min),
            ("theta_max", self.theta_max),
            ("bisection_tol", self.bisection_tol),
            ("residual_tol", self.residual_tol),
            ("min_A", self.min_a),
            ("min_B", self.min_b),
        ];
        for (name, value) in positive {
            if !(value > 0.0 && value.is_finite()) {
                return Err(invalid(format!("{name} must be positive and finite, got {value}")));
            }
        }
        if self.theta_max >= PI || self.theta_min >= self.theta_max {
            return Err(invalid(format!(
                "theta range must satisfy 0 < theta_min < theta_max < pi, got [{}, {}]",
                self.theta_min, self.theta_max
            )));
        }
        if self.grid_points < 1000 {
            return Err(invalid(format!(
                "grid_points must be at least 1000, got {}",
                self.grid_points
            )));
        }
        Ok(())
    }
}

/// One admissible root of the closure equations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BranchSolution {
    pub offsets: OffsetTriple,
    pub band: Option<BandSpec>,
    pub params: HelixParams,
    /// 1-based rank of the twist among the surviving roots.
    pub branch_index: usize,
    /// Star label; `None` for free offset triples.
    pub winding_m: Option<u32>,
    pub residual: f64,
}

/// Why a bracketed root was discarded.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Rejection {
    /// `A <= min_A`: the helix collapses onto its axis.
    AxisCollapsed {
        a_coef: f64,
    },
    /// `B <= min_B`: zero rise, a closed flat ring.
    FlatRing {
        b_coef: f64,
    },
    /// The third chord equation is not met.
    Residual {
        residual: f64,
    },
    DegenerateFace {
        area: f64,
    },
    /// Two adjacent faces are coplanar (dihedral `0`, `π` or `2π`).
    CoplanarFaces {
        class: EdgeClass,
        dihedral: f64,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct RejectedRoot {
    pub theta: f64,
    pub reason: Rejection,
}

/// Full outcome of one solve: survivors plus everything that was dropped.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    pub branches: Vec<BranchSolution>,
    pub rejected: Vec<RejectedRoot>,
    /// Roots bracketed by the grid scan before any filtering.
    pub bracketed: usize,
}

/// Dihedral angles closer than this to `0`, `π` or `2π` count as coplanar.
pub const COPLANAR_TOL: f64 = 1e-6;

const MIN_FACE_AREA: f64 = 1e-9;

/// `D(θ)` reduced by row differences:
/// `(cos cθ - cos aθ)(b² - c²) - (cos cθ - cos bθ)(a² - c²)`.
pub fn closure_determinant(offsets: &OffsetTriple, theta: f64) -> f64 {
    let (a, b, c) = (offsets.a() as f64, offsets.b() as f64, offsets.c() as f64);
    let cc = (c * theta).cos();
    (cc - (a * theta).cos()) * (b * b - c * c) - (cc - (b * theta).cos()) * (a * a - c * c)
}

/// Twists of every sign change of `D` on the scan grid, refined by bisection.
pub fn bracket_roots(offsets: &OffsetTriple, opts: &SolverOptions) -> Vec<f64> {
    let n = opts.grid_points;
    let step = (opts.theta_max - opts.theta_min) / (n - 1) as f64;
    let grid = |i: usize| {
        if i == n - 1 {
            opts.theta_max
        } else {
            opts.theta_min + i as f64 * step
        }
    };
    let f = |t: f64| closure_determinant(offsets, t);

    let mut roots = Vec::new();
    let mut prev_t = grid(0);
    let mut prev_f = f(prev_t);
    if prev_f == 0.0 {
        roots.push(prev_t);
    }
    for i in 1..n {
        let t = grid(i);
        let ft = f(t);
        if ft == 0.0 {
            roots.push(t);
        } else if prev_f != 0.0 && (prev_f < 0.0) != (ft < 0.0) {
            roots.push(bisect(&f, prev_t, t, prev_f, opts.bisection_tol));
        }
        prev_t = t;
        prev_f = ft;
    }
    roots
}

fn bisect(f: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, f_lo: f64, tol: f64) -> f64 {
    let lo_negative = f_lo < 0.0;
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm < 0.0) == lo_negative {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// `(A, B)` from the best-conditioned pair of chord equations, or by least
/// squares over all three when every pair is singular.
pub fn solve_coefficients(offsets: &OffsetTriple, theta: f64) -> (f64, f64) {
    let rows: [(f64, f64); 3] = EdgeClass::ALL.map(|class| {
        let d = offsets.offset(class) as f64;
        (1.0 - (d * theta).cos(), d * d)
    });
    let mut best: Option<(f64, usize, usize)> = None;
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let (pi, qi) = rows[i];
        let (pj, qj) = rows[j];
        let det = pi * qj - pj * qi;
        let scale = (pi.hypot(qi) * pj.hypot(qj)).max(f64::MIN_POSITIVE);
        let cond = det.abs() / scale;
        if best.is_none_or(|(c, _, _)| cond > c) {
            best = Some((cond, i, j));
        }
    }
    let (cond, i, j) = best.expect("three candidate pairs");
    if cond > 1e-12 {
        let (pi, qi) = rows[i];
        let (pj, qj) = rows[j];
        let det = pi * qj - pj * qi;
        ((qj - qi) / det, (pi - pj) / det)
    } else {
        let m = Matrix3x2::from_fn(|r, c| if c == 0 { rows[r].0 } else { rows[r].1 });
        let rhs = Vector3::repeat(1.0);
        let sol = m
            .svd(true, true)
            .solve(&rhs, 1e-14)
            .expect("svd with both factors computed");
        (sol[0], sol[1])
    }
}

/// All realizations of a free offset triple.
pub fn solve_branches(offsets: &OffsetTriple, opts: &SolverOptions) -> Result<Vec<BranchSolution>> {
    Ok(solve_report(offsets, None, opts)?.branches)
}

/// All realizations of a band; branches carry the band and a star label.
pub fn solve_band(band: &BandSpec, opts: &SolverOptions) -> Result<Vec<BranchSolution>> {
    Ok(solve_report(&band.offsets(), Some(*band), opts)?.branches)
}

pub fn solve_report(offsets: &OffsetTriple, band: Option<BandSpec>, opts: &SolverOptions) -> Result<SolveReport> {
    opts.validate()?;
    if offsets.is_degenerate() {
        debug!("offsets {offsets} are degenerate (a = b); D vanishes identically");
        return Ok(SolveReport {
            branches: Vec::new(),
            rejected: Vec::new(),
            bracketed: 0,
        });
    }

    let roots = bracket_roots(offsets, opts);
    let bracketed = roots.len();
    let mut branches = Vec::new();
    let mut rejected = Vec::new();
    for theta in roots {
        match accept_root(offsets, theta, opts) {
            Ok((params, residual)) => {
                let winding_m = band.map(|b| winding_estimate(&b, &params));
                branches.push(BranchSolution {
                    offsets: *offsets,
                    band,
                    params,
                    branch_index: branches.len() + 1,
                    winding_m,
                    residual,
                });
            }
            Err(reason) => {
                debug!("offsets {offsets}: root at theta = {theta} rejected: {reason:?}");
                rejected.push(RejectedRoot { theta, reason });
            }
        }
    }
    if branches.is_empty() {
        debug!("offsets {offsets}: no admissible branch");
    }
    Ok(SolveReport {
        branches,
        rejected,
        bracketed,
    })
}

fn accept_root(
    offsets: &OffsetTriple,
    theta: f64,
    opts: &SolverOptions,
) -> std::result::Result<(HelixParams, f64), Rejection> {
    let (a_coef, b_coef) = solve_coefficients(offsets, theta);
    if a_coef <= opts.min_a {
        return Err(Rejection::AxisCollapsed { a_coef });
    }
    if b_coef <= opts.min_b {
        return Err(Rejection::FlatRing { b_coef });
    }
    let params = HelixParams {
        radius: (a_coef / 2.0).sqrt(),
        twist: theta,
        rise: b_coef.sqrt(),
    };
    let residual = params.residual(offsets);
    if residual > opts.residual_tol {
        return Err(Rejection::Residual { residual });
    }
    for face in [crate::band::FaceId::up(0), crate::band::FaceId::down(0)] {
        let tri = face.vertices(offsets).map(|k| params.position(k));
        let area = triangle_area(&tri);
        if area < MIN_FACE_AREA {
            return Err(Rejection::DegenerateFace { area });
        }
    }
    let dihedrals = realize::class_dihedrals(offsets, &params);
    for class in EdgeClass::ALL {
        let angle = dihedrals.get(class);
        let off = [0.0, PI, TAU]
            .iter()
            .map(|x| (angle - x).abs())
            .fold(f64::INFINITY, f64::min);
        if off <= COPLANAR_TOL {
            return Err(Rejection::CoplanarFaces { class, dihedral: angle });
        }
    }
    Ok((params, residual))
}

/// Star label of a branch: the density `m` of the star polygon `{n/m}` traced
/// by the strip boundaries in a cross-section of the helix.
///
/// Boundary line `i` carries indices `i·s + j·n`. Writing
/// `q = round(nθ / 2π)` for the whole turns made by one step along a
/// boundary line, boundary `i` sits at angle `2π·i·s·q / n` plus a common
/// twist, so consecutive boundaries are `w = s·q mod n` star steps apart.
/// `{n/w}` and `{n/(n - w)}` are the same star, so the label is
/// `min(w, n - w)`; `1` is the plain helical deltahedron.
pub fn winding_estimate(band: &BandSpec, params: &HelixParams) -> u32 {
    let n = band.strips() as i64;
    let s = band.shift() as i64;
    let q = (n as f64 * params.twist / TAU).round() as i64;
    let w = (s * q).rem_euclid(n);
    w.min(n - w) as u32
}
