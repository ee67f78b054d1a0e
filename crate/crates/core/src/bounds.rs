//! Measurements above the crossing threshold: excess over the crossing
//! number, comparison with the class-based bounds, the n²m growth check and
//! the random-interior Monte Carlo.
//!
//! Nothing in here asserts the bounds; reports carry the comparison so that
//! violations show up as data.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::arrangements::{gen_dc_with_retries, gen_fic_stream, DCParams, DEFAULT_JITTER_RETRIES};
use crate::closed_forms::{binom2, cr_dc, half_floor_product, lemma1_bounds};
use crate::error::{Error, Result};
use crate::geom::{count_crossings_brute, Layout};

/// Brute-force crossing count minus the crossing number, with the rotation
/// actually realized.
pub fn measured_delta_with(params: &DCParams) -> Result<(i64, DCParams)> {
    let cr = cr_dc(params.m, params.n)?;
    let (layout, used) = gen_dc_with_retries(params, DEFAULT_JITTER_RETRIES)?;
    let count = count_crossings_brute(&layout)?.count;
    Ok((count as i64 - cr as i64, used))
}

/// N_cr − cr for the double circular layout. Never negative for a valid layout.
pub fn measured_delta(params: &DCParams) -> Result<i64> {
    measured_delta_with(params).map(|(d, _)| d)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub params: DCParams,
    pub measured_delta: i64,
    pub lower: u64,
    pub upper: u64,
    pub within_lower: bool,
    pub within_upper: bool,
    /// The requested rotation needed jitter to become non-degenerate.
    pub degenerate: bool,
}

pub fn check_lemma1(params: &DCParams) -> Result<BoundsReport> {
    let bounds = lemma1_bounds(params)?;
    let (delta, used) = measured_delta_with(params)?;
    Ok(BoundsReport {
        params: used,
        measured_delta: delta,
        lower: bounds.lower,
        upper: bounds.upper,
        within_lower: delta >= bounds.lower as i64,
        within_upper: delta <= bounds.upper as i64,
        degenerate: used != *params,
    })
}

/// Fraction of reports violating at least one bound.
pub fn violation_fraction(reports: &[BoundsReport]) -> f64 {
    if reports.is_empty() {
        return 0.0;
    }
    let bad = reports.iter().filter(|r| !(r.within_lower && r.within_upper)).count();
    bad as f64 / reports.len() as f64
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticRow {
    pub m: usize,
    pub n: usize,
    pub ratio_r_r: f64,
    pub measured_delta: i64,
    /// measured_delta / (n²·m).
    pub normalized: f64,
}

/// One row per `n`, outer radius 1 and inner radius `ratio`. Each row needs m ≥ n.
pub fn asymptotic_sweep(m: usize, n_values: &[usize], ratio: f64) -> Result<Vec<AsymptoticRow>> {
    if !(ratio > 0.0 && ratio < 1.0) {
        return Err(Error::InvalidParams(format!("ratio r/R must be in (0, 1), got {ratio}")));
    }
    n_values
        .iter()
        .map(|&n| {
            let delta = measured_delta(&DCParams::new(m, n, ratio, 1.0)?)?;
            Ok(AsymptoticRow {
                m,
                n,
                ratio_r_r: ratio,
                measured_delta: delta,
                normalized: delta as f64 / (n * n * m) as f64,
            })
        })
        .collect()
}

/// max/min of `normalized` over the rows with the larger half of the n
/// values (by position in `rows`). Infinite when some normalized value is 0.
pub fn normalized_spread(rows: &[AsymptoticRow]) -> f64 {
    let tail = &rows[rows.len() / 2..];
    let (lo, hi) = tail
        .iter()
        .fold((f64::INFINITY, 0.0f64), |(lo, hi), r| (lo.min(r.normalized), hi.max(r.normalized)));
    if lo > 0.0 {
        hi / lo
    } else {
        f64::INFINITY
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Conjecture1Summary {
    pub m: usize,
    pub n: usize,
    pub samples: usize,
    pub seed: u64,
    pub min_count: u64,
    pub max_count: u64,
    /// count -> number of samples.
    pub histogram: BTreeMap<u64, u64>,
    /// C(m,2)·⌊n/2⌋·⌊(n−1)/2⌋.
    pub lower_bound: u64,
    /// C(m,2)·C(n,2).
    pub upper_bound: u64,
    /// (sample index, count) for observations outside the bounds.
    pub out_of_range: Vec<(usize, u64)>,
}

/// Sample `i` of a sweep: stream `i` of the generator seeded with `seed`.
pub fn conjecture1_sample(m: usize, n: usize, seed: u64, i: usize) -> Result<Layout> {
    gen_fic_stream(m, n, 1.0, seed, i as u64)
}

pub fn conjecture1_sweep(m: usize, n: usize, samples: usize, seed: u64) -> Result<Conjecture1Summary> {
    if m < n {
        return Err(Error::ArgumentOrder {
            m,
            n,
            expected: "m >= n",
        });
    }
    if n == 0 || samples == 0 {
        return Err(Error::InvalidParams("need n >= 1 and samples >= 1".into()));
    }
    let lower_bound = binom2(m as u64) * half_floor_product(n as u64);
    let upper_bound = binom2(m as u64) * binom2(n as u64);
    let mut histogram = BTreeMap::new();
    let mut out_of_range = Vec::new();
    for i in 0..samples {
        let count = count_crossings_brute(&conjecture1_sample(m, n, seed, i)?)?.count;
        *histogram.entry(count).or_insert(0) += 1;
        if count < lower_bound || count > upper_bound {
            out_of_range.push((i, count));
        }
    }
    Ok(Conjecture1Summary {
        m,
        n,
        samples,
        seed,
        min_count: *histogram.keys().next().expect("samples >= 1"),
        max_count: *histogram.keys().next_back().expect("samples >= 1"),
        histogram,
        lower_bound,
        upper_bound,
        out_of_range,
    })
}

/// One radius of a sweep; bounds are on the total count, not the excess.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub r: f64,
    pub ratio_r_r: f64,
    pub measured: u64,
    pub formula_cr: u64,
    pub lemma_lower: u64,
    pub lemma_upper: u64,
    pub within_lower: bool,
    pub within_upper: bool,
}

/// `steps + 1` evenly spaced radii from `r_from` to `r_to` (one row when they
/// are equal), all at the rotation of `base`.
pub fn radius_sweep(base: &DCParams, r_from: f64, r_to: f64, steps: usize) -> Result<Vec<SweepRow>> {
    let cr = cr_dc(base.m, base.n)?;
    let radii: Vec<f64> = if r_from == r_to || steps == 0 {
        vec![r_from]
    } else {
        (0..=steps)
            .map(|k| r_from + (r_to - r_from) * k as f64 / steps as f64)
            .collect()
    };
    radii
        .into_iter()
        .map(|r| {
            let params = DCParams::with_rotation(base.m, base.n, r, base.outer_r, base.phi_in, base.phi_out)?;
            let rep = check_lemma1(&params)?;
            let measured = (cr as i64 + rep.measured_delta) as u64;
            Ok(SweepRow {
                r,
                ratio_r_r: r / base.outer_r,
                measured,
                formula_cr: cr,
                lemma_lower: cr + rep.lower,
                lemma_upper: cr + rep.upper,
                within_lower: rep.within_lower,
                within_upper: rep.within_upper,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_below_threshold_is_zero() {
        assert_eq!(measured_delta(&DCParams::new(8, 6, 0.01, 1.0).unwrap()), Ok(0));
        for r in [0.1, 0.5, 0.9] {
            assert_eq!(measured_delta(&DCParams::new(2, 2, r, 1.0).unwrap()), Ok(0));
        }
    }

    #[test]
    fn lemma_report_small_r() {
        let rep = check_lemma1(&DCParams::new(8, 8, 0.01, 1.0).unwrap()).unwrap();
        assert_eq!((rep.measured_delta, rep.lower, rep.upper), (0, 0, 0));
        assert!(rep.within_lower && rep.within_upper && !rep.degenerate);
    }

    #[test]
    fn lemma_report_fig_params() {
        let rep = check_lemma1(&DCParams::new(10, 10, 1.0, 1.05).unwrap()).unwrap();
        assert_eq!((rep.lower, rep.upper), (20, 80));
        assert!(rep.measured_delta > 0);
    }

    #[test]
    fn conjecture_sweep_single_inner_vertex() {
        let s = conjecture1_sweep(1, 1, 5, 9).unwrap();
        assert_eq!((s.min_count, s.max_count), (0, 0));
        assert!(conjecture1_sweep(3, 4, 5, 9).is_err());
    }

    #[test]
    fn conjecture_sweep_deterministic() {
        let a = conjecture1_sweep(5, 4, 50, 7).unwrap();
        assert_eq!(a, conjecture1_sweep(5, 4, 50, 7).unwrap());
        assert_eq!(a.histogram.values().sum::<u64>(), 50);
        assert!(a.out_of_range.is_empty());
        assert!(a.min_count >= 20 && a.max_count <= 60);
    }

    #[test]
    fn sweep_rows() {
        let base = DCParams::new(6, 6, 0.1, 1.0).unwrap();
        assert_eq!(radius_sweep(&base, 0.3, 0.3, 10).unwrap().len(), 1);
        let rows = radius_sweep(&base, 0.05, 0.95, 9).unwrap();
        assert_eq!(rows.len(), 10);
        assert!(rows.iter().all(|r| r.measured >= r.formula_cr));
        assert_eq!(rows[0].measured, rows[0].formula_cr);
    }

    #[test]
    fn spread_of_constant_rows_is_one() {
        let row = |n| AsymptoticRow {
            m: 5,
            n,
            ratio_r_r: 0.5,
            measured_delta: 10,
            normalized: 0.2,
        };
        assert_eq!(normalized_spread(&[row(2), row(3), row(4)]), 1.0);
    }
}
