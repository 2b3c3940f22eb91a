//! Acceptance checks with pinned tolerances and runtime budgets. Each check
//! returns one outcome line; `verify` on the command line runs them all.

use std::f64::consts::{FRAC_PI_4, TAU};
use std::fmt;
use std::time::{Duration, Instant};

use crate::construction::{
    isotropic_measure_lower_bound, solve_equal_angle, Construction, ConstructionConfig, Mode,
};
use crate::error::Result;
use crate::experiments::{
    cross_norm_run, decay_threshold, g_scan, perturbation_run, square_example, CrossNormOptions,
    Verdict,
};
use crate::geometry::{isotropic_h, trapezoid_h, Arc, DISK_AREA};
use crate::norm::NormSpec;
use crate::solver::{
    brute_force, catalan, enumerate_noncrossing, objective, oracle_instances, random_datum,
    region_labels, solve_dp, ChordMatching, Lcg, DEFAULT_TIE_TOL,
};

#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub id: &'static str,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} [{}] {} ({:.3} s): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.elapsed.as_secs_f64(),
            self.detail
        )
    }
}

fn timed(
    id: &'static str,
    title: &'static str,
    budget_s: f64,
    body: impl FnOnce() -> Result<(bool, String)>,
) -> Outcome {
    let t = Instant::now();
    let result = body();
    let elapsed = t.elapsed();
    let in_time = elapsed.as_secs_f64() < budget_s;
    let (passed, mut detail) = match result {
        Ok((ok, d)) => (ok && in_time, d),
        Err(e) => (false, format!("error: {e}")),
    };
    if !in_time {
        detail.push_str(&format!("; over the {budget_s} s budget"));
    }
    Outcome { id, title, passed, detail, elapsed }
}

pub fn square_example_check() -> Outcome {
    timed("1", "square example", 1.0, || {
        let rows = square_example(0.5, 0.4, &[2.0, 3.0])?;
        let (r2, r3) = (&rows[0], &rows[1]);
        let ok2 = (r2.value_e1 - 2.0 * 0.41f64.sqrt()).abs() <= 1e-9
            && (r2.value_e2 - 1.2).abs() <= 1e-9
            && r2.winner == "E2"
            && !r2.solution_exists;
        let ok3 = (r3.value_e1 - 1.147758).abs() <= 1e-6
            && (r3.value_e2 - 1.2).abs() <= 1e-9
            && r3.winner == "E1"
            && r3.solution_exists;
        Ok((
            ok2 && ok3,
            format!(
                "p=2: ({:.9}, {:.9}) {}; p=3: ({:.9}, {:.9}) {}",
                r2.value_e1, r2.value_e2, r2.winner, r3.value_e1, r3.value_e2, r3.winner
            ),
        ))
    })
}

pub fn isotropic_construction_check() -> Outcome {
    timed("2", "l2 equality construction, depth 16", 10.0, || {
        let c = Construction::build(ConstructionConfig::new(
            NormSpec::l2(),
            0.1,
            1.0,
            16,
            Mode::Equality,
        ))?;
        let max_residual = c
            .nodes()
            .filter_map(|n| n.h_self)
            .fold(0.0f64, |m, h| m.max(h.abs()));
        let measure = c.measure(16)?;
        let worst_ratio = c
            .ratios()
            .iter()
            .map(|r| r.r / (2.0 / 3.0 * r.child_alpha * r.child_alpha))
            .fold(0.0f64, f64::max);
        let ok = max_residual <= 1e-10
            && (0.099889..=0.1).contains(&measure)
            && worst_ratio <= 1.0;
        Ok((
            ok,
            format!(
                "max |h| = {max_residual:.3e}, H1(F16) = {measure:.9} (bound {:.9}), max r/((2/3)α²) = {worst_ratio:.6}",
                isotropic_measure_lower_bound(0.1, 16)
            ),
        ))
    })
}

/// Root of the closed-form isotropic `h` for unit parent width, by plain bisection.
fn isotropic_unit_root() -> f64 {
    let (mut lo, mut hi) = (1e-6, 0.5 - 1e-15);
    for _ in 0..200 {
        let m = 0.5 * (lo + hi);
        if isotropic_h(1.0, m) > 0.0 {
            lo = m;
        } else {
            hi = m;
        }
    }
    lo
}

pub fn equal_angle_check() -> Outcome {
    timed("3", "equality root for unit parent", 0.1, || {
        let parent = Arc::new(0.3, 1.0)?;
        let a = solve_equal_angle(&NormSpec::l2(), &parent, 1e-12)?;
        let oracle = isotropic_unit_root();
        let mut ok = (a - 0.4922).abs() <= 1e-3 && (a - oracle).abs() <= 1e-12;
        let mut worst: f64 = 0.0;
        for c in [0.5, 2.0, 10.0] {
            let scaled = NormSpec::scaled(c, NormSpec::l2())?;
            let b = solve_equal_angle(&scaled, &parent, 1e-12 * c.max(1.0))?;
            worst = worst.max((a - b).abs());
        }
        ok &= worst <= 1e-12;
        Ok((ok, format!("α* = {a:.12}, oracle {oracle:.12}, max scaled deviation {worst:.1e}")))
    })
}

/// Placement used for the cross-norm check: root chord direction 35°.
pub const CROSS_NORM_THETA_DEG: f64 = 125.0;

fn cross_norm_placement() -> Result<(Construction, crate::experiments::CrossNormReport)> {
    cross_norm_run(
        &NormSpec::lp(3.0)?,
        &NormSpec::l2(),
        CROSS_NORM_THETA_DEG.to_radians(),
        0.05,
        12,
        &CrossNormOptions { solve_levels: false, ..Default::default() },
    )
}

fn directions_in_window(c: &Construction, lo_deg: f64, hi_deg: f64) -> bool {
    (0..c.node_count()).all(|i| {
        // chord directions are defined modulo π for a symmetric norm
        let d = c.chord_direction(i).to_degrees().rem_euclid(180.0);
        d > lo_deg && d < hi_deg
    })
}

pub fn cross_norm_sign_check() -> Outcome {
    timed("4a", "l3 equality, l2 sign at all 4095 nodes", 30.0, || {
        let (c, report) = cross_norm_placement()?;
        let in_window = directions_in_window(&c, 5.0, 40.0);
        let ok = in_window
            && report.h.values.len() == (1 << 12) - 1
            && report.h.min_h > 0.0
            && report.verdict == Verdict::Certified;
        Ok((
            ok,
            format!(
                "directions in (5°, 40°): {in_window}, min h_l2 = {:.3e}, nonpositive {}, verdict {:?}",
                report.h.min_h, report.h.nonpositive_count, report.verdict
            ),
        ))
    })
}

pub fn cross_norm_g_check() -> Outcome {
    timed("4b", "g' < 0 on the 64-point root grid", 30.0, || {
        let (c, _) = cross_norm_placement()?;
        let scan = g_scan(&NormSpec::lp(3.0)?, &NormSpec::l2(), &c.node(0).arc, 64)?;
        let first_positive = scan.rows.iter().find(|r| r.g_prime >= 0.0).map(|r| r.alpha);
        Ok((
            scan.all_negative,
            format!(
                "{} of {} negative; first nonnegative at α = {}",
                scan.negative_count,
                scan.rows.len(),
                first_positive.map_or("none".to_string(), |a| format!("{a:.6} (w/3 = {:.6})", 0.05 / 3.0))
            ),
        ))
    })
}

pub fn solver_oracle_check() -> Outcome {
    timed("5", "solver against brute force", 5.0, || {
        let norms = [
            NormSpec::l2(),
            NormSpec::lp(3.0)?,
            NormSpec::lp(1.5)?,
            "lp:2 + 0.5*lp:4".parse()?,
        ];
        let mut worst: f64 = 0.0;
        let mut mismatched = 0;
        for (i, datum) in oracle_instances(100, 6).iter().enumerate() {
            let norm = &norms[i % norms.len()];
            let report = solve_dp(norm, datum, DEFAULT_TIE_TOL)?;
            let (min, all) = brute_force(norm, datum)?;
            worst = worst.max((report.optimal_value - min).abs());
            if report.uniqueness_gap > 1e-9 && !report.optimal.same_pairs(&all[0]) {
                mismatched += 1;
            }
        }
        let counts: Vec<usize> = (2..=4)
            .map(|m| enumerate_noncrossing(m).map(|v| v.len()))
            .collect::<Result<_>>()?;
        let ok = worst <= 1e-12 && mismatched == 0 && counts == [2, 5, 14];
        Ok((
            ok,
            format!("max |dp - brute| = {worst:.1e}, mismatched optima {mismatched}, Catalan {counts:?}"),
        ))
    })
}

pub fn tie_regime_check() -> Outcome {
    timed("6", "ties under equality, uniqueness under strict mode", 10.0, || {
        let l2 = NormSpec::l2();
        let build = |mode| Construction::build(ConstructionConfig::new(l2.clone(), 0.1, 1.0, 6, mode));
        let eq = build(Mode::Equality)?;
        let strict = build(Mode::EqualityFraction(0.8))?;
        let mut worst_diff: f64 = 0.0;
        let mut ties_ok = true;
        let mut unique_ok = true;
        let mut min_gap = f64::INFINITY;
        for n in 1..=6 {
            let datum = eq.level_datum(n)?;
            let r = solve_dp(&l2, &datum, DEFAULT_TIE_TOL)?;
            let en = eq.en_matching(n, &l2)?.objective;
            let ep = eq.eprime_matching(n, &l2)?.objective;
            worst_diff = worst_diff.max((en - ep).abs() / n as f64);
            ties_ok &= (en - ep).abs() <= n as f64 * 1e-10
                && en - r.optimal_value <= DEFAULT_TIE_TOL
                && ep - r.optimal_value <= DEFAULT_TIE_TOL;
        }
        for n in 0..=6 {
            let datum = strict.level_datum(n)?;
            let r = solve_dp(&l2, &datum, DEFAULT_TIE_TOL)?;
            let en = strict.en_matching(n, &l2)?;
            unique_ok &= r.optimal.same_pairs(&en) && r.uniqueness_gap > 0.0;
            min_gap = min_gap.min(r.uniqueness_gap);
        }
        Ok((
            ties_ok && unique_ok,
            format!(
                "equality: max |E_n - E'_n|/n = {worst_diff:.1e}, both optimal {ties_ok}; strict: E_n unique {unique_ok}, min gap {min_gap:.3e}"
            ),
        ))
    })
}

pub fn decay_check() -> Outcome {
    timed("7", "area decay under strict mode, depth 10", 5.0, || {
        let c = Construction::build(ConstructionConfig::new(
            NormSpec::l2(),
            0.1,
            1.0,
            10,
            Mode::EqualityFraction(0.8),
        ))?;
        let areas: Vec<f64> = (0..=10).map(|n| c.en_area(n)).collect::<Result<_>>()?;
        let decreasing = areas.windows(2).all(|w| w[1] < w[0]);
        let ratio = areas[10] / areas[0];
        let ok = decreasing && ratio <= decay_threshold(10);
        Ok((
            ok,
            format!(
                "strictly decreasing {decreasing}, |E10|/|E0| = {ratio:.3e} vs {:.3e}",
                decay_threshold(10)
            ),
        ))
    })
}

pub fn perturbation_check() -> Outcome {
    timed("8", "l1 perturbation in the first quadrant", 5.0, || {
        let r = perturbation_run(&NormSpec::l2(), 10, FRAC_PI_4, 0.05, 10)?;
        let ok = r.max_linearity_residual <= 1e-12
            && r.max_l1_identity_residual <= 1e-12
            && r.min_h_phi2 > 0.0;
        Ok((
            ok,
            format!(
                "linearity {:.1e}, h_l1 identity {:.1e}, min h_phi2 = {:.3e}",
                r.max_linearity_residual, r.max_l1_identity_residual, r.min_h_phi2
            ),
        ))
    })
}

/// Deterministic sample of norms for the invariant suite.
fn sample_norms() -> Result<Vec<NormSpec>> {
    Ok(vec![
        NormSpec::l2(),
        NormSpec::l1(),
        NormSpec::lp(3.0)?,
        NormSpec::lp(1.3)?,
        "lp:2 + 0.25*lp:1".parse()?,
        "scale:2*(lp:4) + lp:1.5".parse()?,
    ])
}

pub fn invariant_suite_check() -> Outcome {
    timed("9", "invariant suite", 60.0, || {
        let mut rng = Lcg::new(1);
        let norms = sample_norms()?;
        let mut failures = Vec::new();

        let mut homogeneity: f64 = 0.0;
        let mut linearity: f64 = 0.0;
        let mut h_linearity: f64 = 0.0;
        let mut sign_mismatch = 0;
        for _ in 0..200 {
            let v = [4.0 * rng.next_f64() - 2.0, 4.0 * rng.next_f64() - 2.0];
            let t = 10.0 * rng.next_f64() - 5.0;
            let (a, b) = (0.1 + 3.0 * rng.next_f64(), 0.1 + 3.0 * rng.next_f64());
            let parent = Arc::new(TAU * rng.next_f64(), 0.01 + 1.5 * rng.next_f64())?;
            let alpha = parent.width() / 2.0 * (0.01 + 0.98 * rng.next_f64());
            for (i, n) in norms.iter().enumerate() {
                let nv = n.eval(v);
                homogeneity = homogeneity.max((n.eval([t * v[0], t * v[1]]) - t.abs() * nv).abs() / (1.0 + nv));
                let m = &norms[(i + 1) % norms.len()];
                let combo = NormSpec::combination(vec![(a, n.clone()), (b, m.clone())])?;
                let expect = a * nv + b * m.eval(v);
                linearity = linearity.max((combo.eval(v) - expect).abs() / (1.0 + expect));
                let hn = trapezoid_h(n, &parent, alpha)?.h;
                let hm = trapezoid_h(m, &parent, alpha)?.h;
                let hc = trapezoid_h(&combo, &parent, alpha)?.h;
                h_linearity = h_linearity.max((hc - a * hn - b * hm).abs());
                let hs = trapezoid_h(&NormSpec::scaled(a, n.clone())?, &parent, alpha)?.h;
                if hn.abs() > 1e-12 && hs.signum() != hn.signum() {
                    sign_mismatch += 1;
                }
            }
        }
        if homogeneity > 1e-12 {
            failures.push(format!("homogeneity {homogeneity:.1e}"));
        }
        if linearity > 1e-12 {
            failures.push(format!("combination linearity {linearity:.1e}"));
        }
        if h_linearity > 1e-12 {
            failures.push(format!("h linearity {h_linearity:.1e}"));
        }
        if sign_mismatch > 0 {
            failures.push(format!("{sign_mismatch} sign changes under scaling"));
        }

        let mut matchings = 0;
        let mut worst_partition: f64 = 0.0;
        let l2 = NormSpec::l2();
        for m in 1..=5 {
            for _ in 0..10 {
                let datum = random_datum(&mut rng, m, 1e-3)?;
                for pairs in enumerate_noncrossing(m)? {
                    let value = objective(&l2, &pairs, &datum);
                    let mt = ChordMatching::new(pairs, &datum, &l2)?;
                    debug_assert_eq!(value, mt.objective);
                    match region_labels(&mt, &datum) {
                        Ok(labels) => {
                            worst_partition = worst_partition
                                .max((labels.area_in + labels.area_out - DISK_AREA).abs());
                        }
                        Err(e) => failures.push(format!("labels m={m}: {e}")),
                    }
                    matchings += 1;
                }
            }
        }
        let expected: u64 = (1..=5).map(|m| 10 * catalan(m)).sum();
        if matchings as u64 != expected {
            failures.push(format!("{matchings} matchings labelled, expected {expected}"));
        }
        if worst_partition > 1e-9 {
            failures.push(format!("disk partition error {worst_partition:.1e}"));
        }
        let detail = format!(
            "homogeneity {homogeneity:.1e}, combination {linearity:.1e}, h linearity {h_linearity:.1e}, \
             scaling sign flips {sign_mismatch}, {matchings} matchings labelled, partition error {worst_partition:.1e}"
        );
        let ok = failures.is_empty();
        Ok((ok, if ok { detail } else { format!("{detail}; failures: {}", failures.join(", ")) }))
    })
}

pub fn all_checks() -> Vec<fn() -> Outcome> {
    vec![
        square_example_check,
        isotropic_construction_check,
        equal_angle_check,
        cross_norm_sign_check,
        cross_norm_g_check,
        solver_oracle_check,
        tie_regime_check,
        decay_check,
        perturbation_check,
        invariant_suite_check,
    ]
}

/// Runs every check sequentially, so runtimes are not distorted by each other.
pub fn run_all() -> Vec<Outcome> {
    all_checks().into_iter().map(|check| check()).collect()
}
