//! Maximum inner radius at which the double circular layout still attains
//! its crossing number.
//!
//! The crossing count equals the crossing number exactly when every line
//! through two inner vertices is balanced for the outer polygon. At a fixed
//! rotation each such line keeps its direction and moves away from the
//! center linearly in `r`, so the predicate is monotone in `r` and can be
//! bisected. A coarse sweep double-checks that before trusting the bracket.

use serde::{Deserialize, Serialize};

use crate::arrangements::{gen_dc_with_retries, realize_dc, DCParams};
use crate::closed_forms::{beta_j, class_distance, class_indices};
use crate::error::{Error, Result};
use crate::geom::{orientation_eps, Point2, DEFAULT_EPS};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThresholdConfig {
    /// Bracket width target, relative to R.
    pub tol_bisect: f64,
    pub eps_geom: f64,
    pub max_iter: usize,
    pub jitter_retries: usize,
    /// Coarse samples over (0, R) used to check monotonicity.
    pub sweep_samples: usize,
    /// Bisect the first true->false transition of the sweep instead of failing
    /// when the sweep is not monotone.
    pub allow_non_monotone: bool,
}

impl Default for ThresholdConfig {
    fn default() -> Self {
        Self {
            tol_bisect: 1e-10,
            eps_geom: DEFAULT_EPS,
            max_iter: 200,
            jitter_retries: crate::arrangements::DEFAULT_JITTER_RETRIES,
            sweep_samples: 64,
            allow_non_monotone: false,
        }
    }
}

impl ThresholdConfig {
    fn validate(&self) -> Result<()> {
        if !(self.tol_bisect > 0.0 && self.tol_bisect.is_finite()) || self.max_iter == 0 || self.sweep_samples < 2 {
            return Err(Error::InvalidParams(format!("bad threshold config {self:?}")));
        }
        Ok(())
    }
}

/// Result of checking every inner-pair line for balance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LineBalance {
    pub balanced: bool,
    /// First inner pair whose line is unbalanced or touches an outer vertex.
    pub witness: Option<(usize, usize)>,
    /// Set when the witness line passes through outer vertex `.2` within tolerance.
    pub on_line: Option<(usize, usize, usize)>,
}

/// Checks `| |t| - |b| | <= 1` for the line through every inner pair. A vertex
/// on a line (orientation 0 at tolerance `eps`) counts as unbalanced.
pub fn line_balance(params: &DCParams, eps: f64) -> LineBalance {
    let inner: Vec<Point2> = (0..params.m).map(|i| params.inner_vertex(i)).collect();
    let outer: Vec<Point2> = (0..params.n).map(|j| params.outer_vertex(j)).collect();
    for a in 0..inner.len() {
        for b in a + 1..inner.len() {
            let mut left = 0usize;
            let mut right = 0usize;
            for (v, &u) in outer.iter().enumerate() {
                match orientation_eps(inner[a], inner[b], u, eps) {
                    1 => left += 1,
                    -1 => right += 1,
                    _ => {
                        return LineBalance {
                            balanced: false,
                            witness: Some((a, b)),
                            on_line: Some((a, b, v)),
                        }
                    }
                }
            }
            if left.abs_diff(right) > 1 {
                return LineBalance {
                    balanced: false,
                    witness: Some((a, b)),
                    on_line: None,
                };
            }
        }
    }
    LineBalance {
        balanced: true,
        witness: None,
        on_line: None,
    }
}

/// Whether the double circular layout attains C(m,2)·⌊n/2⌋·⌊(n−1)/2⌋
/// crossings, i.e. every inner-pair line is balanced.
pub fn is_min_crossing_config(params: &DCParams) -> Result<bool> {
    is_min_crossing_config_with(params, &ThresholdConfig::default()).map(|(ok, _)| ok)
}

/// As [`is_min_crossing_config`]; degenerate rotations are jittered as in
/// [`crate::arrangements::gen_dc`] and the rotation used is returned.
pub fn is_min_crossing_config_with(params: &DCParams, cfg: &ThresholdConfig) -> Result<(bool, DCParams)> {
    let (_, used) = gen_dc_with_retries(params, cfg.jitter_retries)?;
    Ok((line_balance(&used, cfg.eps_geom).balanced, used))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdResult {
    /// Largest certified radius with the minimum crossing count (= bracket.0).
    pub t_cr: f64,
    pub bracket: (f64, f64),
    pub iterations: usize,
    pub rotation: (f64, f64),
    /// Inner pair whose line is unbalanced at `bracket.1`.
    pub witness: Option<(usize, usize)>,
    /// Predicate held on the whole interval (0, R]; `t_cr = R`.
    pub saturated: bool,
    /// Outcome of the coarse monotonicity sweep.
    pub monotone: bool,
}

/// Bisects the balanced-line predicate over `r in (0, R)` for fixed `m >= n >= 2`
/// and rotation.
pub fn crossing_threshold(
    m: usize,
    n: usize,
    outer_r: f64,
    phi_in: f64,
    phi_out: f64,
    cfg: &ThresholdConfig,
) -> Result<ThresholdResult> {
    if m < n {
        return Err(Error::ArgumentOrder {
            m,
            n,
            expected: "m >= n (larger part on the inner circle)",
        });
    }
    if n < 2 {
        return Err(Error::InvalidParams(format!("need n >= 2, got {n}")));
    }
    cfg.validate()?;
    let base = DCParams::with_rotation(m, n, 0.5 * outer_r, outer_r, phi_in, phi_out)?;

    // The bisection runs on s = r/R; r = s·R keeps results exactly similar
    // under power-of-two rescaling of R.
    let pred = |s: f64| line_balance(&base.with_r(s * outer_r), 0.0).balanced;

    let s_min = 1e-9;
    if !pred(s_min) {
        return Err(Error::NoBalancedRadius { r: s_min * outer_r });
    }

    let samples = cfg.sweep_samples;
    let grid: Vec<f64> = (1..samples).map(|k| k as f64 / samples as f64).collect();
    let values: Vec<bool> = grid.iter().map(|&s| pred(s)).collect();
    let first_false = values.iter().position(|&v| !v);
    let mut monotone = true;
    if let Some(k) = first_false {
        if let Some(t) = values[k..].iter().position(|&v| v) {
            monotone = false;
            if !cfg.allow_non_monotone {
                return Err(Error::NotMonotone {
                    r_true: grid[k + t] * outer_r,
                    r_false: grid[k] * outer_r,
                });
            }
        }
    }

    let (mut lo, mut hi) = match first_false {
        Some(0) => (s_min, grid[0]),
        Some(k) => (grid[k - 1], grid[k]),
        None if pred(1.0) => {
            return Ok(ThresholdResult {
                t_cr: outer_r,
                bracket: (outer_r, outer_r),
                iterations: 0,
                rotation: (phi_in, phi_out),
                witness: None,
                saturated: true,
                monotone,
            })
        }
        None => (*grid.last().unwrap_or(&s_min), 1.0),
    };

    let mut iterations = 0;
    while hi - lo > cfg.tol_bisect {
        if iterations == cfg.max_iter {
            return Err(Error::NoConvergence {
                iterations,
                width: (hi - lo) * outer_r,
            });
        }
        let mid = lo + 0.5 * (hi - lo);
        if pred(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
    }

    if !pred(lo) || pred(hi) {
        return Err(Error::NotMonotone {
            r_true: hi * outer_r,
            r_false: lo * outer_r,
        });
    }
    let witness = line_balance(&base.with_r(hi * outer_r), 0.0).witness;
    Ok(ThresholdResult {
        t_cr: lo * outer_r,
        bracket: (lo * outer_r, hi * outer_r),
        iterations,
        rotation: (phi_in, phi_out),
        witness,
        saturated: false,
        monotone,
    })
}

/// Split of the outer vertices by one line class.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LineClassStats {
    pub j: usize,
    /// Class distance used by the β_j bounds, r·sin(jπ/m).
    pub d_j: f64,
    /// Distance from the center to the representative line, measured.
    pub line_distance: f64,
    /// Outer vertices on the far side from the center, for the class
    /// representative (a = 0, b = j); the smaller side for the diameter class.
    pub u_j: usize,
    /// Outer vertices on the center side.
    pub l_j: usize,
    pub beta_j: u64,
    /// Observed multiplier c in U = ⌊n/2⌋ − c·β_j, when β_j > 0 and c ∈ {1, 2}.
    pub parallel_case: Option<u8>,
    /// The class of inner diameters (even m only).
    pub diameter: bool,
}

fn distance_to_line(p: Point2, q: Point2) -> f64 {
    let (dx, dy) = (q.x - p.x, q.y - p.y);
    (p.x * dy - p.y * dx).abs() / dx.hypot(dy)
}

fn observed_c(n: usize, u: usize, l: usize, beta: u64) -> Option<u8> {
    if beta == 0 || l < u {
        return None;
    }
    let gap = (l - u) as u64;
    let shift2 = if n % 2 == 0 { gap } else { gap.checked_sub(1)? };
    if shift2 % 2 != 0 {
        return None;
    }
    match shift2 / 2 {
        s if s == beta => Some(1),
        s if s == 2 * beta => Some(2),
        _ => None,
    }
}

/// Per-class splits for j = 1..⌈m/2⌉−1, plus the diameter class for even m.
/// Every line of a class must produce the same split.
pub fn line_class_stats(params: &DCParams) -> Result<Vec<LineClassStats>> {
    params.validate()?;
    let layout = realize_dc(params);
    let (inner, outer) = (&layout.part_a, &layout.part_b);
    let m = params.m;
    let origin = Point2::new(0.0, 0.0);

    let split = |a: usize, b: usize| -> Result<(usize, usize, i8)> {
        let (p, q) = (inner[a], inner[b]);
        let mut left = 0;
        let mut right = 0;
        for (v, &u) in outer.iter().enumerate() {
            match orientation_eps(p, q, u, layout.eps_geom) {
                1 => left += 1,
                -1 => right += 1,
                _ => {
                    return Err(Error::DegenerateLayout(format!(
                        "outer vertex b{v} lies on the line through a{a}, a{b}"
                    )))
                }
            }
        }
        Ok((left, right, orientation_eps(p, q, origin, layout.eps_geom)))
    };

    let mut stats = Vec::new();
    for j in class_indices(m) {
        let mut first = None;
        for a in 0..m {
            let (left, right, center) = split(a, (a + j) % m)?;
            let (u, l) = if center > 0 { (right, left) } else { (left, right) };
            match first {
                None => first = Some((u, l)),
                // Splits are compared as unordered pairs.
                Some(f) if (f.0.min(f.1), f.0.max(f.1)) != (u.min(l), u.max(l)) => {
                    return Err(Error::ClassInconsistent { j, first: f, other: (u, l) })
                }
                _ => {}
            }
        }
        let (u_j, l_j) = first.expect("class is non-empty");
        let beta = beta_j(j, params);
        stats.push(LineClassStats {
            j,
            d_j: class_distance(j, params),
            line_distance: distance_to_line(inner[0], inner[j]),
            u_j,
            l_j,
            beta_j: beta,
            parallel_case: observed_c(params.n, u_j, l_j, beta),
            diameter: false,
        });
    }

    if m % 2 == 0 {
        let j = m / 2;
        let mut first = None;
        for a in 0..j {
            let (left, right, _) = split(a, a + j)?;
            let s = (left.min(right), left.max(right));
            match first {
                None => first = Some(s),
                Some(f) if f != s => return Err(Error::ClassInconsistent { j, first: f, other: s }),
                _ => {}
            }
        }
        let (u_j, l_j) = first.expect("class is non-empty");
        stats.push(LineClassStats {
            j,
            d_j: 0.0,
            line_distance: distance_to_line(inner[0], inner[j]),
            u_j,
            l_j,
            beta_j: 0,
            parallel_case: None,
            diameter: true,
        });
    }
    Ok(stats)
}
