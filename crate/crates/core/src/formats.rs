//! On-disk formats: layout JSON, sweep CSV and SVG figures.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::arrangements::{ArrangementSpec, FIC_RNG};
use crate::bounds::SweepRow;
use crate::error::{Error, Result};
use crate::geom::{Layout, Point2};
use crate::TOOL_VERSION;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LayoutMeta {
    pub arrangement: String,
    pub params: Value,
    pub tool_version: String,
}

/// `{"part_a": [...], "part_b": [...], "meta": {...}}`
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LayoutFile {
    pub part_a: Vec<Point2>,
    pub part_b: Vec<Point2>,
    pub meta: LayoutMeta,
}

impl LayoutFile {
    pub fn new(layout: &Layout, spec: &ArrangementSpec) -> Self {
        let mut params = serde_json::to_value(spec).expect("spec serializes");
        if let Value::Object(map) = &mut params {
            map.remove("arrangement");
            if matches!(spec, ArrangementSpec::Fic { .. }) {
                map.insert("rng".into(), Value::String(FIC_RNG.into()));
            }
        }
        Self {
            part_a: layout.part_a.clone(),
            part_b: layout.part_b.clone(),
            meta: LayoutMeta {
                arrangement: spec.name().into(),
                params,
                tool_version: TOOL_VERSION.into(),
            },
        }
    }

    pub fn layout(&self) -> Layout {
        Layout::new(self.part_a.clone(), self.part_b.clone())
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("layout file serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: Self = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        if file.part_a.is_empty() || file.part_b.is_empty() {
            return Err(Error::Format("part_a and part_b must be non-empty".into()));
        }
        if !file.part_a.iter().chain(&file.part_b).all(Point2::is_finite) {
            return Err(Error::Format("coordinates must be finite".into()));
        }
        Ok(file)
    }

    fn param(&self, key: &str) -> Option<f64> {
        self.meta.params.get(key).and_then(Value::as_f64)
    }

    /// Radii of the circles the arrangement places vertices on.
    pub fn circles(&self) -> Vec<f64> {
        match self.meta.arrangement.as_str() {
            "dc" => [self.param("r"), self.param("R")].into_iter().flatten().collect(),
            "lic" | "fic" => self.param("R").into_iter().collect(),
            _ => Vec::new(),
        }
    }
}

pub const SWEEP_HEADER: &str = "r,ratio_rR,measured,formula_cr,lemma_lower,lemma_upper,within_lower,within_upper";

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(SWEEP_HEADER);
    out.push('\n');
    for row in rows {
        writeln!(
            out,
            "{:.16e},{:.16e},{},{},{},{},{},{}",
            row.r,
            row.ratio_r_r,
            row.measured,
            row.formula_cr,
            row.lemma_lower,
            row.lemma_upper,
            row.within_lower,
            row.within_upper
        )
        .unwrap();
    }
    out
}

/// Figure with one outline per arrangement circle, one line per edge and one
/// dot per vertex (part A red, part B blue).
pub fn render_svg(file: &LayoutFile, width: u32) -> String {
    let circles = file.circles();
    let points = file.part_a.iter().chain(&file.part_b);
    let (mut min_x, mut max_x, mut min_y, mut max_y) = points.fold(
        (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY),
        |(a, b, c, d), p| (a.min(p.x), b.max(p.x), c.min(p.y), d.max(p.y)),
    );
    for &radius in &circles {
        min_x = min_x.min(-radius);
        max_x = max_x.max(radius);
        min_y = min_y.min(-radius);
        max_y = max_y.max(radius);
    }
    let span = (max_x - min_x).max(max_y - min_y).max(1e-12);
    let w = width.max(16) as f64;
    let margin = 0.05 * w;
    let scale = (w - 2.0 * margin) / span;
    let cx = 0.5 * (min_x + max_x);
    let cy = 0.5 * (min_y + max_y);
    let map = |p: &Point2| (0.5 * w + (p.x - cx) * scale, 0.5 * w - (p.y - cy) * scale);
    let dot = (0.012 * w).max(2.0);

    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{w}" viewBox="0 0 {w} {w}">"#
    )
    .unwrap();
    writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    let (ox, oy) = map(&Point2::new(0.0, 0.0));
    for radius in &circles {
        writeln!(
            out,
            r##"<circle class="orbit" cx="{ox:.3}" cy="{oy:.3}" r="{:.3}" fill="none" stroke="#999999" stroke-width="1"/>"##,
            radius * scale
        )
        .unwrap();
    }
    for a in &file.part_a {
        let (x1, y1) = map(a);
        for b in &file.part_b {
            let (x2, y2) = map(b);
            writeln!(
                out,
                r##"<line x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}" stroke="#333333" stroke-width="0.6"/>"##
            )
            .unwrap();
        }
    }
    for (class, color, part) in [("a", "#d62728", &file.part_a), ("b", "#1f77b4", &file.part_b)] {
        for p in part {
            let (x, y) = map(p);
            writeln!(
                out,
                r#"<circle class="{class}" cx="{x:.3}" cy="{y:.3}" r="{dot:.3}" fill="{color}"/>"#
            )
            .unwrap();
        }
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangements::{gen_dc, DCParams};

    fn dc_file() -> LayoutFile {
        let params = DCParams::new(10, 10, 0.3, 1.0).unwrap();
        LayoutFile::new(&gen_dc(&params).unwrap(), &ArrangementSpec::Dc(params))
    }

    #[test]
    fn layout_file_round_trip() {
        let file = dc_file();
        let text = file.to_json();
        let back = LayoutFile::from_json(&text).unwrap();
        assert_eq!(back, file);
        assert_eq!(back.meta.arrangement, "dc");
        assert_eq!(back.circles(), vec![0.3, 1.0]);
    }

    #[test]
    fn rejects_empty_parts() {
        let text = r#"{"part_a":[],"part_b":[{"x":0,"y":1}],"meta":{"arrangement":"dpl","params":{},"tool_version":"x"}}"#;
        assert!(LayoutFile::from_json(text).is_err());
        assert!(LayoutFile::from_json("not json").is_err());
    }

    #[test]
    fn svg_element_counts() {
        let svg = render_svg(&dc_file(), 400);
        assert_eq!(svg.matches("<line ").count(), 100);
        assert_eq!(svg.matches(r#"class="a""#).count() + svg.matches(r#"class="b""#).count(), 20);
        assert_eq!(svg.matches(r#"class="orbit""#).count(), 2);
        assert_eq!(svg, render_svg(&dc_file(), 400));
    }

    #[test]
    fn csv_header() {
        assert!(sweep_csv(&[]).starts_with("r,ratio_rR,measured,formula_cr,"));
    }
}
