//! One PASS/FAIL line per acceptance criterion. Run with
//! `cargo test -p dcross-cli --test acceptance`.

use std::path::{Path, PathBuf};
use std::process::Command;

use dcross::arrangements::{gen_dc, gen_dol, gen_dpl, gen_lic, gen_tpl, ArrangementSpec, DCParams};
use dcross::bounds::{asymptotic_sweep, check_lemma1, conjecture1_sample, conjecture1_sweep, normalized_spread, violation_fraction};
use dcross::closed_forms::*;
use dcross::formats::LayoutFile;
use dcross::geom::{count_crossings_brute, count_crossings_partition_layout, Layout};
use dcross::threshold::{crossing_threshold, line_balance, ThresholdConfig};
use serde_json::Value;

const BISECT_TOL: f64 = 1e-10;
const SCALE_REL_TOL: f64 = 1e-9;
const SPREAD_LIMIT: f64 = 10.0;
const MC_SAMPLES: usize = 2000;
const MC_SEED: u64 = 20_240_601;

type Outcome = Result<String, String>;

fn brute(layout: &Layout) -> Result<u64, String> {
    count_crossings_brute(layout).map(|r| r.count).map_err(|e| e.to_string())
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion_1() -> Outcome {
    let mut cases = 0;
    for m in 2..=12 {
        for n in 2..=m {
            let params = DCParams::new(m, n, 0.01, 1.0).map_err(|e| e.to_string())?;
            let layout = gen_dc(&params).map_err(|e| format!("({m},{n}): {e}"))?;
            let b = brute(&layout)?;
            let p = count_crossings_partition_layout(&layout).map_err(|e| e.to_string())?.count;
            let f = cr_dc(m, n).unwrap();
            check(b == p && p == f, || format!("({m},{n}): brute {b}, partition {p}, formula {f}"))?;
            cases += 1;
        }
    }
    Ok(format!("{cases} cases, brute = partition = formula"))
}

fn criterion_2() -> Outcome {
    let mut layouts = 0;
    for m in 1..=10 {
        for n in 1..=10 {
            let b = brute(&gen_dpl(m, n, 1.0).unwrap())?;
            check(b == cr_dpl(m, n), || format!("dpl ({m},{n}): {b}"))?;
            layouts += 1;
            for t in 0..=n {
                let bt = brute(&gen_tpl(t, m, n - t, 1.0, 1.0).unwrap())?;
                check(bt == cr_tpl(m, t, n - t), || format!("tpl c={m} t={t} b={}: {bt}", n - t))?;
                layouts += 1;
                let lic = gen_lic(m, t, n - t, 1.0).map_err(|e| format!("lic m={m} k={t}: {e}"))?;
                let bl = brute(&lic)?;
                check(bl == cr_lic(m, t, n - t), || format!("lic m={m} k={t} l={}: {bl}", n - t))?;
                layouts += 1;
                for l in 0..=m {
                    let bd = brute(&gen_dol(l, m - l, t, n - t, 1.0).unwrap())?;
                    let f = cr_dol(l, m - l, t, n - t);
                    check(bd == f, || format!("dol l={l} r={} t={t} b={}: {bd} vs {f}", m - l, n - t))?;
                    layouts += 1;
                }
            }
        }
    }
    Ok(format!("{layouts} layouts match their closed forms"))
}

fn criterion_3() -> Outcome {
    for k in 0..=1_000_000u64 {
        let (lhs, rhs) = parity_identity(k);
        check(lhs == rhs, || format!("parity identity fails at k = {k}"))?;
    }
    let splits = |k: usize| (0..=k).map(move |x| binom2(x as u64) + binom2((k - x) as u64));
    for m in 1..=14 {
        for n in 1..=14 {
            let dol = (0..=m).flat_map(|l| (0..=n).map(move |t| cr_dol(l, m - l, t, n - t)));
            let (lo, hi) = dol.fold((u64::MAX, 0), |(lo, hi), v| (lo.min(v), hi.max(v)));
            check(cr_dol_min(m, n) == lo && cr_dol_max(m, n) == hi, || format!("dol ({m},{n})"))?;
            check(lo == splits(m).min().unwrap() * splits(n).min().unwrap(), || format!("dol split ({m},{n})"))?;
            if m >= n {
                let tpl = (0..=n).map(|t| cr_tpl(m, t, n - t)).min().unwrap();
                let lic = (0..=n).map(|k| cr_lic(m, k, n - k)).min().unwrap();
                check(cr_tpl_min(m, n).unwrap() == tpl, || format!("tpl ({m},{n})"))?;
                check(cr_lic_min(m, n).unwrap() == lic, || format!("lic ({m},{n})"))?;
            }
        }
    }
    Ok("parity identity for k <= 1e6; minima and maxima match enumeration for m,n <= 14".into())
}

fn criterion_4() -> Outcome {
    let mut divisible = 0;
    for n in 1..=30usize {
        let c3 = (n * n.saturating_sub(1) * n.saturating_sub(2) / 6) as u64;
        let v = cyl_crossing(n, n).map_err(|e| e.to_string())?;
        check(v == n as u64 * c3, || format!("cyl({n},{n}) = {v}"))?;
    }
    for n in 1..=30usize {
        for m in (1..=n).filter(|m| n % m == 0) {
            let v = cyl_crossing(m, n).map_err(|e| e.to_string())?;
            check(Some(v) == cyl_crossing_divisible(m, n), || format!("cyl({m},{n}) = {v}"))?;
            divisible += 1;
        }
    }
    Ok(format!("n·C(n,3) for n <= 30; {divisible} divisible pairs agree"))
}

fn criterion_5() -> Outcome {
    let cfg = ThresholdConfig {
        tol_bisect: BISECT_TOL,
        ..ThresholdConfig::default()
    };
    let mut parts = Vec::new();
    for (m, n) in [(4, 4), (6, 5), (8, 8), (10, 7)] {
        let phi = DCParams::default_phi_out(m, n);
        let res = crossing_threshold(m, n, 1.0, 0.0, phi, &cfg).map_err(|e| format!("({m},{n}): {e}"))?;
        let (lo, hi) = res.bracket;
        check(hi - lo <= BISECT_TOL, || format!("({m},{n}) bracket width {}", hi - lo))?;
        let at = |r: f64| DCParams::with_rotation(m, n, r, 1.0, 0.0, phi).unwrap();
        check(line_balance(&at(lo), 0.0).balanced, || format!("({m},{n}) predicate false at r_lo"))?;
        check(!line_balance(&at(hi), 0.0).balanced, || format!("({m},{n}) predicate true at r_hi"))?;
        let cr = cr_dc(m, n).unwrap();
        let below = brute(&gen_dc(&at(0.99 * lo)).map_err(|e| e.to_string())?)?;
        let above = brute(&gen_dc(&at(1.01 * hi)).map_err(|e| e.to_string())?)?;
        check(below == cr && above > cr, || format!("({m},{n}) counts {below} / {above} vs cr {cr}"))?;
        for lambda in [0.5, 2.0] {
            let scaled = crossing_threshold(m, n, lambda, 0.0, phi, &cfg).map_err(|e| e.to_string())?;
            let rel = (scaled.t_cr - lambda * res.t_cr).abs() / (lambda * res.t_cr);
            check(rel <= SCALE_REL_TOL, || format!("({m},{n}) λ={lambda} relative error {rel:e}"))?;
        }
        parts.push(format!("({m},{n}) t_cr={:.12}", res.t_cr));
    }
    Ok(parts.join(", "))
}

fn golden_path() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/data/lemma_grid.json")
}

fn criterion_6() -> Outcome {
    let text = std::fs::read_to_string(golden_path()).map_err(|e| format!("golden file: {e}"))?;
    let golden: Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    let frozen = golden["points"].as_array().ok_or("golden file has no points")?;
    let mut reports = Vec::new();
    for m in [6, 8, 10, 12] {
        for n in [6, 8, 10, 12] {
            if m < n {
                continue;
            }
            for ratio in [0.5, 0.8, 0.95] {
                let rep = check_lemma1(&DCParams::new(m, n, ratio, 1.0).unwrap()).map_err(|e| e.to_string())?;
                check(rep.measured_delta >= 0, || format!("({m},{n},{ratio}) negative delta"))?;
                let idx = reports.len();
                let want = frozen.get(idx).and_then(|p| p["measured_delta"].as_i64());
                check(want == Some(rep.measured_delta), || {
                    format!("({m},{n},{ratio}) delta {} differs from golden {want:?}", rep.measured_delta)
                })?;
                reports.push(rep);
            }
        }
    }
    let lower = reports.iter().filter(|r| !r.within_lower).count();
    let upper = reports.iter().filter(|r| !r.within_upper).count();
    Ok(format!(
        "{} points match golden; violation fraction {:.3} (lower {lower}, upper {upper})",
        reports.len(),
        violation_fraction(&reports)
    ))
}

fn criterion_7() -> Outcome {
    let rows = asymptotic_sweep(31, &[8, 12, 16, 20, 24, 28], 0.8).map_err(|e| e.to_string())?;
    let spread = normalized_spread(&rows);
    let values: Vec<String> = rows.iter().map(|r| format!("{}:{:.4}", r.n, r.normalized)).collect();
    check(spread < SPREAD_LIMIT, || format!("spread {spread} over n >= 16 ({})", values.join(" ")))?;
    Ok(format!("spread {spread:.4} over n >= 16 ({})", values.join(" ")))
}

fn criterion_8() -> Outcome {
    let (m, n) = (6, 5);
    let a = conjecture1_sweep(m, n, MC_SAMPLES, MC_SEED).map_err(|e| e.to_string())?;
    let b = conjecture1_sweep(m, n, MC_SAMPLES, MC_SEED).map_err(|e| e.to_string())?;
    check(a == b, || "summaries differ between runs".into())?;
    let lo = cr_dc(m, n).unwrap();
    let hi = binom2(m as u64) * binom2(n as u64);
    check(a.lower_bound == lo && a.upper_bound == hi, || "summary bounds differ".into())?;
    if let Some(&(i, count)) = a.out_of_range.first() {
        let layout = conjecture1_sample(m, n, MC_SEED, i).unwrap();
        let spec = ArrangementSpec::Fic {
            m,
            n,
            r_circle: 1.0,
            seed: MC_SEED,
        };
        let dump = std::env::temp_dir().join(format!("dcross_fic_{MC_SEED}_{i}.json"));
        let _ = std::fs::write(&dump, LayoutFile::new(&layout, &spec).to_json());
        return Err(format!("sample {i} has {count} crossings outside [{lo}, {hi}]; layout in {}", dump.display()));
    }
    Ok(format!("{MC_SAMPLES} samples in [{}, {}] within [{lo}, {hi}], deterministic", a.min_count, a.max_count))
}

fn dcross(args: &[&str]) -> Result<(i32, Vec<u8>), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_dcross"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    Ok((out.status.code().unwrap_or(-1), out.stdout))
}

fn pipeline(dir: &Path, tag: &str, gen: &[&str]) -> Result<(Vec<u8>, Vec<u8>, Vec<u8>), String> {
    let json = dir.join(format!("{tag}.json"));
    let svg = dir.join(format!("{tag}.svg"));
    let (j, s) = (json.to_str().unwrap(), svg.to_str().unwrap());
    let mut args = vec!["gen"];
    args.extend_from_slice(gen);
    args.extend_from_slice(&["-o", j]);
    check(dcross(&args)?.0 == 0, || format!("gen {gen:?} failed"))?;
    let (code, count) = dcross(&["count", j])?;
    check(code == 0, || format!("count {gen:?} failed"))?;
    check(dcross(&["render", j, "-o", s])?.0 == 0, || format!("render {gen:?} failed"))?;
    let read = |p: &Path| std::fs::read(p).map_err(|e| e.to_string());
    Ok((read(&json)?, count, read(&svg)?))
}

fn criterion_9() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let pipelines: [&[&str]; 6] = [
        &["--arr", "dc", "--m", "10", "--n", "10", "--r", "0.3", "--R", "1"],
        &["--arr", "fic", "--m", "5", "--n", "6", "--R", "1", "--seed", "42"],
        &["--arr", "dpl", "--m", "3", "--n", "3"],
        &["--arr", "tpl", "--t", "2", "--c", "4", "--b", "3"],
        &["--arr", "dol", "--l", "2", "--rc", "3", "--t", "1", "--b", "2"],
        &["--arr", "lic", "--m", "4", "--k", "3", "--l", "2", "--R", "1"],
    ];
    for (i, gen) in pipelines.iter().enumerate() {
        let first = pipeline(dir.path(), &format!("a{i}"), gen)?;
        let second = pipeline(dir.path(), &format!("b{i}"), gen)?;
        check(first == second, || format!("pipeline {gen:?} not byte-identical"))?;
    }
    let mut cases = 0;
    for m in 2..=12 {
        for n in 2..=m {
            let path = dir.path().join(format!("grid_{m}_{n}.json"));
            let p = path.to_str().unwrap();
            let (ms, ns) = (m.to_string(), n.to_string());
            let gen = ["gen", "--arr", "dc", "--m", &ms, "--n", &ns, "--r", "0.01", "--R", "1", "-o", p];
            check(dcross(&gen)?.0 == 0, || format!("gen ({m},{n}) failed"))?;
            let (code, out) = dcross(&["count", p, "--method", "both"])?;
            check(code == 0, || format!("count --method both ({m},{n}) exit {code}"))?;
            let (_, formula) = dcross(&["formula", "--which", "dc", "--m", &ms, "--n", &ns])?;
            let want = String::from_utf8_lossy(&formula).trim().to_string();
            let text = String::from_utf8_lossy(&out).to_string();
            check(text == format!("brute {want}\npartition {want}\n"), || format!("({m},{n}) counts {text:?} vs formula {want}"))?;
            cases += 1;
        }
    }
    Ok(format!("{} pipelines byte-identical; count --method both exits 0 on {cases} grid cases", pipelines.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("double circular counts at r = 0.01R", criterion_1),
        ("line arrangement closed forms", criterion_2),
        ("parity identity and split extrema", criterion_3),
        ("cylindrical identities", criterion_4),
        ("threshold certification", criterion_5),
        ("class bound reporting", criterion_6),
        ("normalized excess spread", criterion_7),
        ("random interior Monte Carlo", criterion_8),
        ("CLI round trip and determinism", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = std::time::Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {} {name}: {detail} [{secs:.1}s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {} {name}: {detail} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
