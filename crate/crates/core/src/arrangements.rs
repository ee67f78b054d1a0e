//! Vertex placements for the straight-line arrangements of K_{m,n}.
//!
//! Line-based arrangements (two parallel lines, three parallel lines, two
//! orthogonal lines) are fully determined by their counts. Circle-based ones
//! place part B on a regular polygon; the double circular arrangement adds a
//! concentric inner polygon and retries with a small outer rotation when a
//! vertex lands on a counting line.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{orientation_eps, split_by_line, Layout, Point2, DEFAULT_EPS};

/// Rotation retries applied by [`gen_dc`] before giving up.
pub const DEFAULT_JITTER_RETRIES: usize = 8;

/// Name of the generator behind [`gen_fic`], recorded in layout metadata.
pub const FIC_RNG: &str = "ChaCha8";

const FIC_MAX_DRAWS: usize = 10_000;

/// Parameters of a double circular arrangement: `m` vertices on the inner
/// circle of radius `r`, `n` on the outer circle of radius `outer_r`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DCParams {
    pub m: usize,
    pub n: usize,
    pub r: f64,
    #[serde(rename = "R")]
    pub outer_r: f64,
    pub phi_in: f64,
    pub phi_out: f64,
}

impl DCParams {
    /// Parameters with the default rotations (see [`DCParams::default_phi_out`]).
    pub fn new(m: usize, n: usize, r: f64, outer_r: f64) -> Result<Self> {
        Self::with_rotation(m, n, r, outer_r, 0.0, Self::default_phi_out(m, n))
    }

    pub fn with_rotation(
        m: usize,
        n: usize,
        r: f64,
        outer_r: f64,
        phi_in: f64,
        phi_out: f64,
    ) -> Result<Self> {
        let params = Self {
            m,
            n,
            r,
            outer_r,
            phi_in,
            phi_out,
        };
        params.validate()?;
        Ok(params)
    }

    /// Outer rotation (with `phi_in = 0`) that keeps every outer vertex
    /// direction as far as possible from every inner chord direction.
    ///
    /// Inner chords point along π/2 + kπ/m and outer vertices along
    /// φ + 2πj/n, both taken mod π. Their differences form a lattice of
    /// spacing π/L with L = lcm(m, n'), where n' = n/2 for even n and n
    /// for odd n; the rotation puts the lattice a half step off zero.
    pub fn default_phi_out(m: usize, n: usize) -> f64 {
        let n_dirs = if n % 2 == 0 { n / 2 } else { n }.max(1);
        let lcm = m.max(1) / gcd(m.max(1), n_dirs) * n_dirs;
        let step = PI / lcm as f64;
        ((PI / 2.0) % step + 0.5 * step) % step
    }

    pub fn validate(&self) -> Result<()> {
        if self.m == 0 || self.n == 0 {
            return Err(Error::InvalidParams(format!(
                "need m, n >= 1 (m={}, n={})",
                self.m, self.n
            )));
        }
        if !(self.r.is_finite() && self.outer_r.is_finite() && self.r > 0.0 && self.r < self.outer_r) {
            return Err(Error::InvalidParams(format!(
                "need 0 < r < R (r={}, R={})",
                self.r, self.outer_r
            )));
        }
        if !(self.phi_in.is_finite() && self.phi_out.is_finite()) {
            return Err(Error::InvalidParams("rotations must be finite".into()));
        }
        Ok(())
    }

    pub fn with_r(self, r: f64) -> Self {
        Self { r, ..self }
    }

    /// θ_I = 2π/m.
    pub fn theta_inner(&self) -> f64 {
        2.0 * PI / self.m as f64
    }

    /// θ_O = 2π/n.
    pub fn theta_outer(&self) -> f64 {
        2.0 * PI / self.n as f64
    }

    /// D = 2R·sin(θ_O/2), the chord between consecutive outer vertices.
    pub fn chord_d(&self) -> f64 {
        2.0 * self.outer_r * (self.theta_outer() / 2.0).sin()
    }

    pub fn inner_vertex(&self, i: usize) -> Point2 {
        Point2::polar(self.r, self.phi_in + i as f64 * self.theta_inner())
    }

    pub fn outer_vertex(&self, j: usize) -> Point2 {
        Point2::polar(self.outer_r, self.phi_out + j as f64 * self.theta_outer())
    }
}

/// One of the supported arrangements with its counts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "arrangement", rename_all = "lowercase")]
pub enum ArrangementSpec {
    Dpl {
        m: usize,
        n: usize,
        spacing: f64,
    },
    Tpl {
        t: usize,
        c: usize,
        b: usize,
        spacing: f64,
        line_gap: f64,
    },
    Dol {
        l: usize,
        r_count: usize,
        t: usize,
        b: usize,
        spacing: f64,
    },
    Lic {
        m: usize,
        k: usize,
        l: usize,
        #[serde(rename = "R")]
        r_circle: f64,
    },
    Dc(DCParams),
    Fic {
        m: usize,
        n: usize,
        #[serde(rename = "R")]
        r_circle: f64,
        seed: u64,
    },
}

impl ArrangementSpec {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Dpl { .. } => "dpl",
            Self::Tpl { .. } => "tpl",
            Self::Dol { .. } => "dol",
            Self::Lic { .. } => "lic",
            Self::Dc(_) => "dc",
            Self::Fic { .. } => "fic",
        }
    }

    /// Builds the layout. For `Dc` the returned spec carries the rotation
    /// actually used after jitter.
    pub fn generate(&self) -> Result<(Layout, ArrangementSpec)> {
        let layout = match *self {
            Self::Dpl { m, n, spacing } => gen_dpl(m, n, spacing)?,
            Self::Tpl {
                t,
                c,
                b,
                spacing,
                line_gap,
            } => gen_tpl(t, c, b, spacing, line_gap)?,
            Self::Dol {
                l,
                r_count,
                t,
                b,
                spacing,
            } => gen_dol(l, r_count, t, b, spacing)?,
            Self::Lic { m, k, l, r_circle } => gen_lic(m, k, l, r_circle)?,
            Self::Dc(params) => {
                let (layout, used) = gen_dc_with_retries(&params, DEFAULT_JITTER_RETRIES)?;
                return Ok((layout, Self::Dc(used)));
            }
            Self::Fic { m, n, r_circle, seed } => gen_fic(m, n, r_circle, seed)?,
        };
        Ok((layout, self.clone()))
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParams(format!("{name} must be positive, got {v}")))
    }
}

fn row(count: usize, spacing: f64, y: f64) -> impl Iterator<Item = Point2> {
    (0..count).map(move |i| Point2::new(i as f64 * spacing, y))
}

/// Part A on y = 0 and part B on y = 1, both starting at x = 0.
pub fn gen_dpl(m: usize, n: usize, spacing: f64) -> Result<Layout> {
    positive("spacing", spacing)?;
    let layout = Layout::new(row(m, spacing, 0.0).collect(), row(n, spacing, 1.0).collect());
    layout.validate()?;
    Ok(layout)
}

/// Part A (`c` vertices) on the center line; part B is `t` vertices on the
/// top line followed by `b` on the bottom line.
pub fn gen_tpl(t: usize, c: usize, b: usize, spacing: f64, line_gap: f64) -> Result<Layout> {
    positive("spacing", spacing)?;
    positive("line_gap", line_gap)?;
    let layout = Layout::new(
        row(c, spacing, 0.0).collect(),
        row(t, spacing, line_gap).chain(row(b, spacing, -line_gap)).collect(),
    );
    layout.validate()?;
    Ok(layout)
}

/// Part A on the x-axis (`l` left of the origin, `r_count` right), part B on
/// the y-axis (`t` above, `b` below). Nothing sits at the origin.
pub fn gen_dol(l: usize, r_count: usize, t: usize, b: usize, spacing: f64) -> Result<Layout> {
    positive("spacing", spacing)?;
    let step = |i: usize| (i + 1) as f64 * spacing;
    let part_a = (0..l)
        .map(|i| Point2::new(-step(i), 0.0))
        .chain((0..r_count).map(|i| Point2::new(step(i), 0.0)))
        .collect();
    let part_b = (0..t)
        .map(|j| Point2::new(0.0, step(j)))
        .chain((0..b).map(|j| Point2::new(0.0, -step(j))))
        .collect();
    let layout = Layout::new(part_a, part_b);
    layout.validate()?;
    Ok(layout)
}

fn regular_polygon(n: usize, radius: f64, phase: f64) -> Vec<Point2> {
    (0..n)
        .map(|j| Point2::polar(radius, phase + 2.0 * PI * j as f64 / n as f64))
        .collect()
}

/// Part B on a regular `k + l`-gon of radius `r_circle`; part A on a chord
/// leaving `k` polygon vertices on one side and `l` on the other.
///
/// The chord is orthogonal to the bisector of the arc holding the `k` side,
/// halfway between the last vertex of that arc and the first vertex past it.
/// Part A is spread evenly over the middle 90% of the chord.
pub fn gen_lic(m: usize, k: usize, l: usize, r_circle: f64) -> Result<Layout> {
    positive("R", r_circle)?;
    let n = k + l;
    if m == 0 || n == 0 {
        return Err(Error::InvalidParams(format!("need m >= 1 and k + l >= 1 (m={m}, k={k}, l={l})")));
    }
    let theta = 2.0 * PI / n as f64;
    let part_b = regular_polygon(n, r_circle, 0.0);

    let side = k.min(l);
    let (normal_angle, offset) = if side == 0 {
        // Every vertex on the same side: the chord cuts off the empty arc
        // between vertex n-1 and vertex 0.
        let angle = -theta / 2.0;
        let nearest = r_circle * (theta / 2.0).cos();
        (angle, 0.5 * (nearest + r_circle))
    } else {
        // Arc of `side` vertices 0..side, bisector at (side-1)·θ/2.
        let angle = (side - 1) as f64 * theta / 2.0;
        let inside = r_circle * ((side - 1) as f64 * theta / 2.0).cos();
        let outside = r_circle * ((side + 1) as f64 * theta / 2.0).cos();
        (angle, 0.5 * (inside + outside))
    };

    let normal = Point2::polar(1.0, normal_angle);
    let dir = Point2::new(-normal.y, normal.x);
    let half = (r_circle * r_circle - offset * offset).max(0.0).sqrt();
    let part_a: Vec<Point2> = (0..m)
        .map(|i| {
            let s = if m == 1 {
                0.0
            } else {
                -0.9 * half + 1.8 * half * i as f64 / (m - 1) as f64
            };
            Point2::new(normal.x * offset + dir.x * s, normal.y * offset + dir.y * s)
        })
        .collect();

    let layout = Layout::new(part_a, part_b);
    layout.validate()?;

    // The chord line itself: two points on it, independent of m.
    let p = Point2::new(normal.x * offset, normal.y * offset);
    let q = Point2::new(p.x + dir.x, p.y + dir.y);
    let (left, right) =
        split_by_line(p, q, &layout.part_b, layout.eps_geom).map_err(|_| Error::InfeasibleSplit { k, l })?;
    if left.min(right) != side || left + right != n {
        return Err(Error::InfeasibleSplit { k, l });
    }
    Ok(layout)
}

/// Raw double circular placement, no validation.
pub fn realize_dc(params: &DCParams) -> Layout {
    Layout::new(
        (0..params.m).map(|i| params.inner_vertex(i)).collect(),
        (0..params.n).map(|j| params.outer_vertex(j)).collect(),
    )
}

/// Layout checks plus: no outer vertex on a line through two inner vertices.
fn validate_dc(layout: &Layout) -> Result<()> {
    layout.validate()?;
    let pa = &layout.part_a;
    for i in 0..pa.len() {
        for k in i + 1..pa.len() {
            split_by_line(pa[i], pa[k], &layout.part_b, layout.eps_geom).map_err(|v| {
                Error::DegenerateLayout(format!("outer vertex b{v} lies on the line through a{i}, a{k}"))
            })?;
        }
    }
    Ok(())
}

/// Double circular layout; rotates the outer polygon by 1e-4·θ_O per retry
/// (up to [`DEFAULT_JITTER_RETRIES`]) when degenerate.
pub fn gen_dc(params: &DCParams) -> Result<Layout> {
    gen_dc_with_retries(params, DEFAULT_JITTER_RETRIES).map(|(layout, _)| layout)
}

/// Like [`gen_dc`], also returning the parameters that were realized.
pub fn gen_dc_with_retries(params: &DCParams, retries: usize) -> Result<(Layout, DCParams)> {
    params.validate()?;
    let step = 1e-4 * params.theta_outer();
    let mut current = *params;
    let mut last_err = None;
    for _ in 0..=retries {
        let layout = realize_dc(&current);
        match validate_dc(&layout) {
            Ok(()) => return Ok((layout, current)),
            Err(e @ Error::DegenerateLayout(_)) => last_err = Some(e),
            Err(e) => return Err(e),
        }
        current.phi_out += step;
    }
    Err(last_err.unwrap_or_else(|| Error::DegenerateLayout("no retries".into())))
}

/// Part B on a regular n-gon of radius `r_circle`, part A uniform in the open
/// disk. Same `seed` gives the same layout.
pub fn gen_fic(m: usize, n: usize, r_circle: f64, seed: u64) -> Result<Layout> {
    gen_fic_stream(m, n, r_circle, seed, 0)
}

/// [`gen_fic`] drawing from stream `stream` of the seeded generator, so that
/// sample `i` of a sweep does not depend on how many samples came before.
pub fn gen_fic_stream(m: usize, n: usize, r_circle: f64, seed: u64, stream: u64) -> Result<Layout> {
    positive("R", r_circle)?;
    if m == 0 || n == 0 {
        return Err(Error::InvalidParams(format!("need m, n >= 1 (m={m}, n={n})")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let part_b = regular_polygon(n, r_circle, 0.0);
    let eps = DEFAULT_EPS;
    let mut part_a: Vec<Point2> = Vec::with_capacity(m);

    while part_a.len() < m {
        let mut accepted = None;
        for _ in 0..FIC_MAX_DRAWS {
            let u: f64 = rng.random();
            let v: f64 = rng.random();
            let cand = Point2::polar(r_circle * u.sqrt(), 2.0 * PI * v);
            if cand.norm() >= r_circle * (1.0 - eps) {
                continue;
            }
            if fic_candidate_ok(cand, &part_a, &part_b, eps) {
                accepted = Some(cand);
                break;
            }
        }
        match accepted {
            Some(p) => part_a.push(p),
            None => {
                return Err(Error::Sampling(format!(
                    "no admissible point after {FIC_MAX_DRAWS} draws (point {})",
                    part_a.len()
                )))
            }
        }
    }
    let layout = Layout::new(part_a, part_b);
    layout.validate()?;
    Ok(layout)
}

/// The new point must not be collinear with an earlier part-A point and any
/// polygon vertex (that covers vertex-on-edge and vertex-on-line cases).
fn fic_candidate_ok(cand: Point2, part_a: &[Point2], part_b: &[Point2], eps: f64) -> bool {
    let min_sep = eps * part_b[0].norm();
    part_a.iter().all(|&a| {
        (a.x - cand.x).hypot(a.y - cand.y) > min_sep
            && part_b.iter().all(|&b| orientation_eps(a, cand, b, eps) != 0)
    })
}
