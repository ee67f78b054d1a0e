//! Planar predicates and the two crossing counters.
//!
//! All predicates work in `f64` with a relative tolerance: a signed area is
//! treated as zero when it is within `eps * scale^2`, where `scale` is the
//! largest absolute coordinate involved. A zero orientation is never guessed
//! into a side; callers get a degeneracy signal and decide what to do (the
//! generators rotate and retry).

use serde::{Deserialize, Serialize};

use crate::arrangements::{gen_dc, DCParams};
use crate::closed_forms::binom2;
use crate::error::{Error, Result};

/// Default relative degeneracy tolerance.
pub const DEFAULT_EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn polar(radius: f64, angle: f64) -> Self {
        Self::new(radius * angle.cos(), radius * angle.sin())
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn norm(&self) -> f64 {
        self.x.hypot(self.y)
    }

    fn max_abs(&self) -> f64 {
        self.x.abs().max(self.y.abs())
    }
}

/// Sign of a predicate: `-1`, `0` or `+1`.
pub type Sign = i8;

/// Orientation of `(p, q, s)` with the default tolerance.
pub fn orientation(p: Point2, q: Point2, s: Point2) -> Sign {
    orientation_eps(p, q, s, DEFAULT_EPS)
}

/// `+1` for a counterclockwise turn, `-1` for clockwise, `0` when the signed
/// area is within `eps * scale^2`.
pub fn orientation_eps(p: Point2, q: Point2, s: Point2, eps: f64) -> Sign {
    let area = 0.5 * ((q.x - p.x) * (s.y - p.y) - (q.y - p.y) * (s.x - p.x));
    let scale = p.max_abs().max(q.max_abs()).max(s.max_abs());
    if area.abs() <= eps * scale * scale {
        0
    } else if area > 0.0 {
        1
    } else {
        -1
    }
}

/// Outcome of a segment-pair test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SegmentRelation {
    /// The open segments meet in exactly one interior point.
    Cross,
    /// No interior intersection (including pairs sharing an endpoint).
    Disjoint,
    /// An endpoint touches the other segment, or the segments overlap.
    Degenerate,
}

/// Whether `s` (already known collinear with `p`-`q`) lies on the closed segment.
fn within_segment(p: Point2, q: Point2, s: Point2, eps: f64) -> bool {
    let dx = q.x - p.x;
    let dy = q.y - p.y;
    let len2 = dx * dx + dy * dy;
    if len2 == 0.0 {
        return false;
    }
    let t = ((s.x - p.x) * dx + (s.y - p.y) * dy) / len2;
    t >= -eps && t <= 1.0 + eps
}

pub fn segments_properly_cross(a1: Point2, a2: Point2, b1: Point2, b2: Point2) -> SegmentRelation {
    segments_properly_cross_eps(a1, a2, b1, b2, DEFAULT_EPS)
}

pub fn segments_properly_cross_eps(
    a1: Point2,
    a2: Point2,
    b1: Point2,
    b2: Point2,
    eps: f64,
) -> SegmentRelation {
    let o1 = orientation_eps(a1, a2, b1, eps);
    let o2 = orientation_eps(a1, a2, b2, eps);
    let o3 = orientation_eps(b1, b2, a1, eps);
    let o4 = orientation_eps(b1, b2, a2, eps);

    let shared = a1 == b1 || a1 == b2 || a2 == b1 || a2 == b2;
    if shared {
        // Only a collinear overlap through the shared endpoint is degenerate.
        let overlap = (o1 == 0 && b1 != a1 && b1 != a2 && within_segment(a1, a2, b1, eps))
            || (o2 == 0 && b2 != a1 && b2 != a2 && within_segment(a1, a2, b2, eps))
            || (o3 == 0 && a1 != b1 && a1 != b2 && within_segment(b1, b2, a1, eps))
            || (o4 == 0 && a2 != b1 && a2 != b2 && within_segment(b1, b2, a2, eps));
        return if overlap {
            SegmentRelation::Degenerate
        } else {
            SegmentRelation::Disjoint
        };
    }

    if o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0 {
        return if o1 != o2 && o3 != o4 {
            SegmentRelation::Cross
        } else {
            SegmentRelation::Disjoint
        };
    }

    let touches = (o1 == 0 && within_segment(a1, a2, b1, eps))
        || (o2 == 0 && within_segment(a1, a2, b2, eps))
        || (o3 == 0 && within_segment(b1, b2, a1, eps))
        || (o4 == 0 && within_segment(b1, b2, a2, eps));
    if touches {
        SegmentRelation::Degenerate
    } else {
        // A zero orientation off the other segment rules out a proper crossing.
        SegmentRelation::Disjoint
    }
}

/// A straight-line drawing of K_{m,n}: every `part_a` x `part_b` pair is an edge.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Layout {
    pub part_a: Vec<Point2>,
    pub part_b: Vec<Point2>,
    #[serde(default = "default_eps")]
    pub eps_geom: f64,
}

fn default_eps() -> f64 {
    DEFAULT_EPS
}

impl Layout {
    pub fn new(part_a: Vec<Point2>, part_b: Vec<Point2>) -> Self {
        Self {
            part_a,
            part_b,
            eps_geom: DEFAULT_EPS,
        }
    }

    pub fn m(&self) -> usize {
        self.part_a.len()
    }

    pub fn n(&self) -> usize {
        self.part_b.len()
    }

    pub fn edge_count(&self) -> usize {
        self.m() * self.n()
    }

    /// Same layout with the two parts exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            part_a: self.part_b.clone(),
            part_b: self.part_a.clone(),
            eps_geom: self.eps_geom,
        }
    }

    /// Applies `f` to every vertex.
    pub fn map_points(&self, f: impl Fn(Point2) -> Point2) -> Self {
        Self {
            part_a: self.part_a.iter().copied().map(&f).collect(),
            part_b: self.part_b.iter().copied().map(&f).collect(),
            eps_geom: self.eps_geom,
        }
    }

    fn scale(&self) -> f64 {
        self.part_a
            .iter()
            .chain(&self.part_b)
            .map(Point2::max_abs)
            .fold(0.0, f64::max)
    }

    /// Checks the layout invariants: non-empty parts, finite and pairwise
    /// distinct points, and no vertex on the open segment of an edge that is
    /// not incident to it.
    pub fn validate(&self) -> Result<()> {
        if self.part_a.is_empty() || self.part_b.is_empty() {
            return Err(Error::InvalidParams("both parts must be non-empty".into()));
        }
        if !(self.eps_geom >= 0.0 && self.eps_geom.is_finite()) {
            return Err(Error::InvalidParams(format!("eps_geom = {}", self.eps_geom)));
        }
        let all: Vec<(char, usize, Point2)> = self
            .part_a
            .iter()
            .enumerate()
            .map(|(i, p)| ('a', i, *p))
            .chain(self.part_b.iter().enumerate().map(|(j, p)| ('b', j, *p)))
            .collect();
        if let Some((tag, i, _)) = all.iter().find(|(_, _, p)| !p.is_finite()) {
            return Err(Error::InvalidParams(format!("vertex {tag}{i} is not finite")));
        }

        let min_sep = self.eps_geom * self.scale();
        for (k, (tk, ik, pk)) in all.iter().enumerate() {
            for (tl, il, pl) in &all[k + 1..] {
                if (pk.x - pl.x).hypot(pk.y - pl.y) <= min_sep {
                    return Err(Error::DegenerateLayout(format!(
                        "vertices {tk}{ik} and {tl}{il} coincide"
                    )));
                }
            }
        }

        for (ia, a) in self.part_a.iter().enumerate() {
            for (ib, b) in self.part_b.iter().enumerate() {
                for (tag, i, p) in &all {
                    if (*tag == 'a' && *i == ia) || (*tag == 'b' && *i == ib) {
                        continue;
                    }
                    if orientation_eps(*a, *b, *p, self.eps_geom) == 0
                        && within_segment(*a, *b, *p, self.eps_geom)
                    {
                        return Err(Error::DegenerateLayout(format!(
                            "vertex {tag}{i} lies on edge (a{ia}, b{ib})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CountMethod {
    Brute,
    Partition,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossingReport {
    pub count: u64,
    pub method: CountMethod,
    pub degenerate_pairs: u64,
}

/// Counts properly crossing edge pairs by testing every pair of edges with
/// distinct endpoints.
pub fn count_crossings_brute(layout: &Layout) -> Result<CrossingReport> {
    layout.validate()?;
    let eps = layout.eps_geom;
    let (pa, pb) = (&layout.part_a, &layout.part_b);
    let mut count = 0u64;
    let mut degenerate = 0u64;
    let mut first_bad = None;
    for i in 0..pa.len() {
        for k in i + 1..pa.len() {
            for (j, &u) in pb.iter().enumerate() {
                for (l, &w) in pb.iter().enumerate() {
                    if j == l {
                        continue;
                    }
                    match segments_properly_cross_eps(pa[i], u, pa[k], w, eps) {
                        SegmentRelation::Cross => count += 1,
                        SegmentRelation::Disjoint => {}
                        SegmentRelation::Degenerate => {
                            degenerate += 1;
                            first_bad.get_or_insert((i, j, k, l));
                        }
                    }
                }
            }
        }
    }
    if let Some((i, j, k, l)) = first_bad {
        return Err(Error::DegenerateLayout(format!(
            "edges (a{i}, b{j}) and (a{k}, b{l}) touch ({degenerate} degenerate pairs)"
        )));
    }
    Ok(CrossingReport {
        count,
        method: CountMethod::Brute,
        degenerate_pairs: 0,
    })
}

/// Side counts of `part_b` relative to the directed line through `p`, `q`:
/// `(left, right)`. Fails with the offending vertex index if one is on the line.
pub fn split_by_line(p: Point2, q: Point2, points: &[Point2], eps: f64) -> std::result::Result<(usize, usize), usize> {
    let mut left = 0;
    let mut right = 0;
    for (idx, &s) in points.iter().enumerate() {
        match orientation_eps(p, q, s, eps) {
            1 => left += 1,
            -1 => right += 1,
            _ => return Err(idx),
        }
    }
    Ok((left, right))
}

/// Partition count: sum over pairs of `part_a` of C(t,2) + C(b,2), where the
/// line through the pair splits `part_b` into `t` and `b` vertices.
///
/// Exact whenever no vertex of `part_b` can fall inside a triangle formed by
/// two `part_a` vertices and another `part_b` vertex on the same side, e.g.
/// `part_b` on a circle with `part_a` strictly inside, or both parts on
/// parallel lines.
pub fn count_crossings_partition_layout(layout: &Layout) -> Result<CrossingReport> {
    layout.validate()?;
    let pa = &layout.part_a;
    let mut count = 0u64;
    for i in 0..pa.len() {
        for k in i + 1..pa.len() {
            let (t, b) = split_by_line(pa[i], pa[k], &layout.part_b, layout.eps_geom).map_err(|v| {
                Error::DegenerateLayout(format!("vertex b{v} lies on the line through a{i}, a{k}"))
            })?;
            count += binom2(t as u64) + binom2(b as u64);
        }
    }
    Ok(CrossingReport {
        count,
        method: CountMethod::Partition,
        degenerate_pairs: 0,
    })
}

/// Partition count of the double circular layout realized from `params`.
pub fn count_crossings_partition(params: &DCParams) -> Result<CrossingReport> {
    count_crossings_partition_layout(&gen_dc(params)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: f64, y: f64) -> Point2 {
        Point2::new(x, y)
    }

    #[test]
    fn orientation_basic() {
        assert_eq!(orientation(p(0., 0.), p(1., 0.), p(0., 1.)), 1);
        assert_eq!(orientation(p(0., 0.), p(1., 0.), p(2., 0.)), 0);
        assert_eq!(orientation(p(0., 0.), p(1., 0.), p(0., -1.)), -1);
    }

    #[test]
    fn orientation_tolerance_is_relative() {
        // Same shape at two scales must classify identically.
        let tiny = 1e-12;
        assert_eq!(orientation(p(0., 0.), p(1., 0.), p(0.5, tiny)), 0);
        assert_eq!(orientation(p(0., 0.), p(1e6, 0.), p(5e5, 1e6 * tiny)), 0);
        assert_eq!(orientation(p(0., 0.), p(1e-6, 0.), p(5e-7, 1e-7)), 1);
    }

    #[test]
    fn segment_examples() {
        use SegmentRelation::*;
        assert_eq!(segments_properly_cross(p(0., 0.), p(1., 1.), p(0., 1.), p(1., 0.)), Cross);
        assert_eq!(segments_properly_cross(p(0., 0.), p(1., 0.), p(0., 0.), p(0., 1.)), Disjoint);
        assert_eq!(segments_properly_cross(p(0., 0.), p(1., 0.), p(2., 0.), p(3., 0.)), Disjoint);
    }

    #[test]
    fn segment_degeneracies() {
        use SegmentRelation::*;
        // T-junction: endpoint on the interior of the other segment.
        assert_eq!(segments_properly_cross(p(0., 0.), p(2., 0.), p(1., 0.), p(1., 1.)), Degenerate);
        // Collinear overlap.
        assert_eq!(segments_properly_cross(p(0., 0.), p(2., 0.), p(1., 0.), p(3., 0.)), Degenerate);
        // Overlap through a shared endpoint.
        assert_eq!(segments_properly_cross(p(0., 0.), p(2., 0.), p(0., 0.), p(1., 0.)), Degenerate);
        // Collinear with the supporting line but outside the segment.
        assert_eq!(segments_properly_cross(p(0., 0.), p(1., 0.), p(2., 0.), p(2., 1.)), Disjoint);
    }

    #[test]
    fn star_has_no_crossings() {
        let layout = Layout::new(
            vec![p(0., 0.)],
            (0..5).map(|j| Point2::polar(1.0, j as f64)).collect(),
        );
        assert_eq!(count_crossings_brute(&layout).unwrap().count, 0);
    }

    #[test]
    fn single_x() {
        let layout = Layout::new(vec![p(0., 0.), p(1., 0.)], vec![p(0., 1.), p(1., 1.)]);
        assert_eq!(count_crossings_brute(&layout).unwrap().count, 1);
        assert_eq!(count_crossings_partition_layout(&layout).unwrap().count, 1);
    }

    #[test]
    fn validate_rejects_duplicates_and_vertex_on_edge() {
        let dup = Layout::new(vec![p(0., 0.), p(0., 0.)], vec![p(1., 1.)]);
        assert!(matches!(dup.validate(), Err(Error::DegenerateLayout(_))));
        // b1 sits on edge (a0, b0).
        let on_edge = Layout::new(vec![p(0., 0.)], vec![p(2., 0.), p(1., 0.)]);
        assert!(matches!(on_edge.validate(), Err(Error::DegenerateLayout(_))));
        let empty = Layout::new(vec![], vec![p(1., 1.)]);
        assert!(matches!(empty.validate(), Err(Error::InvalidParams(_))));
        let nan = Layout::new(vec![p(f64::NAN, 0.)], vec![p(1., 1.)]);
        assert!(matches!(nan.validate(), Err(Error::InvalidParams(_))));
    }

    #[test]
    fn partition_rejects_vertex_on_line() {
        // b1 is between a0 and a1: on their line but not on any edge.
        let layout = Layout::new(vec![p(0., 0.), p(1., 0.)], vec![p(0., 1.), p(0.5, 0.)]);
        assert!(layout.validate().is_ok());
        assert!(matches!(
            count_crossings_partition_layout(&layout),
            Err(Error::DegenerateLayout(_))
        ));
    }
}
