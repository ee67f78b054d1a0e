//! Exact integer evaluators for the closed-form crossing counts.
//!
//! Every count here is a product or sum of binomials evaluated in integer
//! arithmetic; only `beta_j` touches floating point.

use serde::{Deserialize, Serialize};

use crate::arrangements::DCParams;
use crate::error::{Error, Result};

/// C(x, 2).
pub fn binom2(x: u64) -> u64 {
    x * x.saturating_sub(1) / 2
}

/// ⌊k/2⌋·⌊(k−1)/2⌋, the minimum of C(x,2) + C(k−x,2) over splits of k.
pub fn half_floor_product(k: u64) -> u64 {
    (k / 2) * (k.saturating_sub(1) / 2)
}

fn ordered(m: usize, n: usize) -> Result<()> {
    if m < n {
        Err(Error::ArgumentOrder {
            m,
            n,
            expected: "m >= n",
        })
    } else {
        Ok(())
    }
}

/// Two parallel lines: C(m,2)·C(n,2).
pub fn cr_dpl(m: usize, n: usize) -> u64 {
    binom2(m as u64) * binom2(n as u64)
}

/// Three parallel lines with `c` vertices on the center line and `t`/`b`
/// above and below: C(c,2)·(C(t,2) + C(b,2)).
pub fn cr_tpl(c: usize, t: usize, b: usize) -> u64 {
    binom2(c as u64) * (binom2(t as u64) + binom2(b as u64))
}

pub fn cr_tpl_min(m: usize, n: usize) -> Result<u64> {
    ordered(m, n)?;
    Ok(binom2(m as u64) * half_floor_product(n as u64))
}

/// Two orthogonal lines, `l`/`r_count` on the horizontal and `t`/`b` on the
/// vertical: (C(l,2) + C(r,2))·(C(t,2) + C(b,2)).
pub fn cr_dol(l: usize, r_count: usize, t: usize, b: usize) -> u64 {
    (binom2(l as u64) + binom2(r_count as u64)) * (binom2(t as u64) + binom2(b as u64))
}

pub fn cr_dol_min(m: usize, n: usize) -> u64 {
    half_floor_product(m as u64) * half_floor_product(n as u64)
}

pub fn cr_dol_max(m: usize, n: usize) -> u64 {
    cr_dpl(m, n)
}

/// Z(m,n) = ⌊m/2⌋⌊(m−1)/2⌋⌊n/2⌋⌊(n−1)/2⌋.
pub fn zarankiewicz(m: usize, n: usize) -> u64 {
    cr_dol_min(m, n)
}

/// Line inside a circle whose `k + l` polygon vertices fall `k` and `l` on
/// the two sides of the line.
pub fn cr_lic(m: usize, k: usize, l: usize) -> u64 {
    cr_tpl(m, k, l)
}

pub fn cr_lic_min(m: usize, n: usize) -> Result<u64> {
    ordered(m, n)?;
    Ok(binom2(m as u64) * half_floor_product(n as u64))
}

/// Crossing number of the double circular arrangement, larger part inside.
pub fn cr_dc(m: usize, n: usize) -> Result<u64> {
    ordered(m, n)?;
    Ok(binom2(m as u64) * half_floor_product(n as u64))
}

/// Both sides of C(⌊k/2⌋,2) + C(⌈k/2⌉,2) = ⌊k/2⌋·⌊(k−1)/2⌋.
pub fn parity_identity(k: u64) -> (u64, u64) {
    (binom2(k / 2) + binom2(k.div_ceil(2)), half_floor_product(k))
}

/// Bipartite cylindrical crossing number (double-sum form), m ≤ n.
pub fn cyl_crossing(m: usize, n: usize) -> Result<u64> {
    if m > n {
        return Err(Error::ArgumentOrder {
            m,
            n,
            expected: "m <= n",
        });
    }
    if m == 0 {
        return Ok(0);
    }
    let (mi, ni) = (m as i128, n as i128);
    let f = |k: i128| (ni * (k - 1)).div_euclid(mi);
    let mut squares = 0i128;
    let mut linear = 0i128;
    for j in 1..=mi {
        for i in 1..=j {
            let d = f(j) - f(i);
            squares += d * d;
            linear += d;
        }
    }
    let total = binom2(n as u64) as i128 * binom2(m as u64) as i128 + squares - ni * linear;
    u64::try_from(total).map_err(|_| Error::InvalidParams(format!("negative value {total}")))
}

/// (1/12)·n·(m−1)·(2mn − 3m − n), valid when m divides n.
pub fn cyl_crossing_divisible(m: usize, n: usize) -> Option<u64> {
    if m == 0 || n % m != 0 {
        return None;
    }
    let (mi, ni) = (m as i128, n as i128);
    let num = ni * (mi - 1) * (2 * mi * ni - 3 * mi - ni);
    debug_assert_eq!(num % 12, 0);
    u64::try_from(num / 12).ok()
}

/// Class offset d_j = r·sin(jπ/m) entering β_j.
pub fn class_distance(j: usize, params: &DCParams) -> f64 {
    params.r * (j as f64 * std::f64::consts::PI / params.m as f64).sin()
}

fn beta_ratio(j: usize, params: &DCParams) -> f64 {
    class_distance(j, params) / params.chord_d()
}

/// Number of whole outer chords D by which class-j lines sit off center.
pub fn beta_j(j: usize, params: &DCParams) -> u64 {
    beta_ratio(j, params).floor().max(0.0) as u64
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BetaProfile {
    pub j_values: Vec<usize>,
    pub betas: Vec<u64>,
    pub d_values: Vec<f64>,
    /// Ratio within 1e-9 of a positive integer: the floor is not trustworthy.
    pub ambiguous: Vec<bool>,
    /// Outer chord length D = 2R·sin(π/n).
    pub chord: f64,
}

impl BetaProfile {
    pub fn has_ambiguous_floor(&self) -> bool {
        self.ambiguous.iter().any(|&a| a)
    }
}

/// Line classes j = 1..⌈m/2⌉−1.
pub fn class_indices(m: usize) -> std::ops::RangeInclusive<usize> {
    1..=m.div_ceil(2).saturating_sub(1)
}

pub fn beta_profile(params: &DCParams) -> BetaProfile {
    let j_values: Vec<usize> = class_indices(params.m).collect();
    let ratios: Vec<f64> = j_values.iter().map(|&j| beta_ratio(j, params)).collect();
    BetaProfile {
        betas: ratios.iter().map(|r| r.floor().max(0.0) as u64).collect(),
        d_values: j_values.iter().map(|&j| class_distance(j, params)).collect(),
        ambiguous: ratios
            .iter()
            .map(|r| r.round() >= 1.0 && (r - r.round()).abs() < 1e-9)
            .collect(),
        j_values,
        chord: params.chord_d(),
    }
}

/// Bounds on N_cr − cr for a double circular layout.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lemma1Bounds {
    pub lower: u64,
    pub upper: u64,
}

/// Merged-parity form:
/// lower = m·Σ ((1−(−1)ⁿ)/2·β_j + β_j²), upper = 4m·Σ ((1−(−1)ⁿ)/4·β_j + β_j²).
pub fn lemma1_bounds(params: &DCParams) -> Result<Lemma1Bounds> {
    ordered(params.m, params.n)?;
    let betas = beta_profile(params).betas;
    // (1 − (−1)^n) is 0 for even n and 2 for odd n.
    let gadget: u64 = if params.n % 2 == 1 { 2 } else { 0 };
    let m = params.m as u64;
    // lower: m·Σ (gadget/2·β + β²); upper: 4m·Σ (gadget/4·β + β²) = m·Σ (gadget·β + 4β²).
    let lower = m * betas.iter().map(|&b| gadget / 2 * b + b * b).sum::<u64>();
    let upper = m * betas.iter().map(|&b| gadget * b + 4 * b * b).sum::<u64>();
    Ok(Lemma1Bounds { lower, upper })
}

fn binom2_signed(x: i128) -> i128 {
    x * (x - 1) / 2
}

/// Total crossings predicted when every class-j line is shifted by c·β_j
/// vertices, plus the balanced diameter class for even m. Evaluated from the
/// per-class split sizes before any parity merging.
pub fn class_sum_prediction(params: &DCParams, c: i128) -> i128 {
    let n = params.n as i128;
    let m = params.m as i128;
    let per_class: i128 = beta_profile(params)
        .betas
        .iter()
        .map(|&b| {
            let shift = c * b as i128;
            let (u, l) = if n % 2 == 0 {
                (n / 2 - shift, n / 2 + shift)
            } else {
                ((n - 1) / 2 - shift, (n + 1) / 2 + shift)
            };
            binom2_signed(u) + binom2_signed(l)
        })
        .sum();
    let diameter = if m % 2 == 0 {
        m / 2 * half_floor_product(params.n as u64) as i128
    } else {
        0
    };
    m * per_class + diameter
}

/// Lemma bounds from the unmerged route: c = 1 gives the lower bound, c = 2
/// the upper, each minus the crossing number.
pub fn lemma1_bounds_by_parity(params: &DCParams) -> Result<Lemma1Bounds> {
    let cr = cr_dc(params.m, params.n)? as i128;
    let lower = class_sum_prediction(params, 1) - cr;
    let upper = class_sum_prediction(params, 2) - cr;
    Ok(Lemma1Bounds {
        lower: lower as u64,
        upper: upper as u64,
    })
}

/// Identifier of a closed-form expression.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Formula {
    Dpl,
    Tpl,
    TplMin,
    Dol,
    DolMin,
    DolMax,
    Lic,
    LicMin,
    Dc,
    Zarankiewicz,
    Cyl,
    CylDivisible,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaResult {
    pub value: u64,
    pub formula: Formula,
}

/// Arguments for [`evaluate`]; unused fields are ignored.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FormulaArgs {
    pub m: usize,
    pub n: usize,
    pub t: usize,
    pub b: usize,
    pub l: usize,
    pub r_count: usize,
    pub k: usize,
}

pub fn evaluate(formula: Formula, a: FormulaArgs) -> Result<FormulaResult> {
    let value = match formula {
        Formula::Dpl => cr_dpl(a.m, a.n),
        Formula::Tpl => cr_tpl(a.m, a.t, a.b),
        Formula::TplMin => cr_tpl_min(a.m, a.n)?,
        Formula::Dol => cr_dol(a.l, a.r_count, a.t, a.b),
        Formula::DolMin => cr_dol_min(a.m, a.n),
        Formula::DolMax => cr_dol_max(a.m, a.n),
        Formula::Lic => cr_lic(a.m, a.k, a.l),
        Formula::LicMin => cr_lic_min(a.m, a.n)?,
        Formula::Dc => cr_dc(a.m, a.n)?,
        Formula::Zarankiewicz => zarankiewicz(a.m, a.n),
        Formula::Cyl => cyl_crossing(a.m, a.n)?,
        Formula::CylDivisible => cyl_crossing_divisible(a.m, a.n)
            .ok_or_else(|| Error::InvalidParams(format!("{} does not divide {}", a.m, a.n)))?,
    };
    Ok(FormulaResult { value, formula })
}
