//! Verification pipelines: the square comparison, cross-norm sign
//! certification, the `l₁` perturbation and quadrant checks, and the
//! per-level existence/nonexistence indicators.
//!
//! Every verdict is a plain function of numbers stored in the report, so a
//! serialized report can be audited without re-running anything.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use serde::Serialize;

use crate::construction::{
    direction_window, level_range, path_of, Construction, ConstructionConfig, HSignReport, Mode,
    DEFAULT_TOL,
};
use crate::error::{Error, Result};
use crate::geometry::{canonical_angle, trapezoid_at, Arc};
use crate::norm::NormSpec;
use crate::sig17;
use crate::solver::{region_labels, solve_dp, DEFAULT_TIE_TOL};

/// Deepest level handed to the discrete solver.
pub const MAX_SOLVE_LEVEL: usize = 8;
/// Widening of the swept chord-direction window, in degrees.
pub const WINDOW_MARGIN_DEG: f64 = 1.0;
pub const SCAN_SAMPLES: usize = 721;
/// Smallest admissible `|φ2' - φ1'|` on the window, relative to `φ1`.
pub const DERIVATIVE_GAP_FLOOR: f64 = 1e-6;
const CURVATURE_STEP: f64 = 1e-4;

/// `10·4^{-depth}`.
pub fn decay_threshold(depth: usize) -> f64 {
    10.0 * 0.25f64.powi(depth as i32)
}

fn deg(x: f64) -> f64 {
    x.to_radians()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SquareRow {
    #[serde(serialize_with = "sig17::serialize")]
    pub p: f64,
    #[serde(serialize_with = "sig17::serialize")]
    pub value_e1: f64,
    #[serde(serialize_with = "sig17::serialize")]
    pub value_e2: f64,
    pub winner: String,
    pub solution_exists: bool,
}

/// Compares the two competitors on the unit square with boundary datum
/// supported on `{0}×(a,1] ∪ [0,b) ∪ (1-b,1]×{0} ∪ {1}×(a,1]`: `E₁` cuts the
/// two bottom corners with slanted segments, `E₂` uses two horizontal ones.
pub fn square_example(a: f64, b: f64, exponents: &[f64]) -> Result<Vec<SquareRow>> {
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::Precondition(format!("a = {a} outside (0, 1)")));
    }
    if !(b > 0.0 && b < 0.5) {
        return Err(Error::Precondition(format!("b = {b} outside (0, 1/2)")));
    }
    exponents
        .iter()
        .map(|&p| {
            let norm = NormSpec::lp(p)?;
            Ok(square_row(&norm, p, a, b))
        })
        .collect()
}

fn square_row(norm: &NormSpec, p: f64, a: f64, b: f64) -> SquareRow {
    let value_e1 = norm.eval([b, -a]) + norm.eval([b, a]);
    let value_e2 = norm.eval([1.0, 0.0]) + norm.eval([1.0 - 2.0 * b, 0.0]);
    let e1 = value_e1 <= value_e2;
    SquareRow {
        p,
        value_e1,
        value_e2,
        winner: if e1 { "E1" } else { "E2" }.to_string(),
        solution_exists: e1,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Certified,
    NotCertified,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    /// The first norm should carry the equality construction.
    AsGiven,
    /// The roles should be exchanged.
    Swapped,
    Indeterminate,
}

/// Profile comparison over the window of chord directions swept by a
/// construction.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PreconditionScan {
    #[serde(serialize_with = "sig17::serialize")]
    pub window_lo: f64,
    #[serde(serialize_with = "sig17::serialize")]
    pub window_hi: f64,
    /// Range of `φ2' - φ1'` (after rescaling) over the window.
    #[serde(serialize_with = "sig17::serialize")]
    pub min_derivative_gap: f64,
    #[serde(serialize_with = "sig17::serialize")]
    pub max_derivative_gap: f64,
    pub derivative_sign_constant: bool,
    pub derivative_bounded_away: bool,
    /// Range of `φ1''/φ1 - φ2''/φ2`; `h_{φ2}` on a `φ1` equality
    /// construction is positive to leading order where this is positive.
    #[serde(serialize_with = "sig17::serialize")]
    pub min_curvature_gap: f64,
    #[serde(serialize_with = "sig17::serialize")]
    pub max_curvature_gap: f64,
    pub orientation: Orientation,
    pub passed: bool,
}

pub fn precondition_scan(phi1: &NormSpec, phi2: &NormSpec, lo: f64, hi: f64) -> PreconditionScan {
    let samples: Vec<f64> = (0..SCAN_SAMPLES)
        .map(|i| lo + (hi - lo) * i as f64 / (SCAN_SAMPLES - 1) as f64)
        .collect();
    let mut d = (f64::INFINITY, f64::NEG_INFINITY);
    let mut k = (f64::INFINITY, f64::NEG_INFINITY);
    let mut floor: f64 = 0.0;
    for &t in &samples {
        let gap = phi2.circle_profile_derivative(t, crate::norm::DEFAULT_PROFILE_STEP)
            - phi1.circle_profile_derivative(t, crate::norm::DEFAULT_PROFILE_STEP);
        d = (d.0.min(gap), d.1.max(gap));
        let p1 = phi1.circle_profile(t);
        let p2 = phi2.circle_profile(t);
        floor = floor.max(DERIVATIVE_GAP_FLOOR * p1);
        let curv = phi1.circle_profile_second_derivative(t, CURVATURE_STEP) / p1
            - phi2.circle_profile_second_derivative(t, CURVATURE_STEP) / p2;
        k = (k.0.min(curv), k.1.max(curv));
    }
    let derivative_sign_constant = d.0 > 0.0 || d.1 < 0.0;
    let derivative_bounded_away = d.0 > floor || d.1 < -floor;
    let orientation = if k.0 > 0.0 {
        Orientation::AsGiven
    } else if k.1 < 0.0 {
        Orientation::Swapped
    } else {
        Orientation::Indeterminate
    };
    PreconditionScan {
        window_lo: lo,
        window_hi: hi,
        min_derivative_gap: d.0,
        max_derivative_gap: d.1,
        derivative_sign_constant,
        derivative_bounded_away,
        min_curvature_gap: k.0,
        max_curvature_gap: k.1,
        orientation,
        passed: derivative_sign_constant && derivative_bounded_away,
    }
}

/// Discrete solve at one level of a construction.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LevelSolve {
    pub level: usize,
    pub m: usize,
    #[serde(serialize_with = "sig17::serialize")]
    pub optimal_value: f64,
    #[serde(serialize_with = "sig17::serialize")]
    pub uniqueness_gap: f64,
    #[serde(serialize_with = "sig17::serialize")]
    pub n_ties: f64,
    #[serde(serialize_with = "sig17::serialize")]
    pub area_in: f64,
    #[serde(serialize_with = "sig17::serialize")]
    pub en_value: f64,
    #[serde(serialize_with = "sig17::serialize_opt")]
    pub eprime_value: Option<f64>,
    pub optimum_is_en: bool,
}

pub fn solve_level(
    c: &Construction,
    norm: &NormSpec,
    level: usize,
    tie_tol: f64,
) -> Result<LevelSolve> {
    let datum = c.level_datum(level)?;
    let report = solve_dp(norm, &datum, tie_tol)?;
    let labels = region_labels(&report.optimal, &datum)?;
    let en = c.en_matching(level, norm)?;
    let eprime = if level > 0 {
        Some(c.eprime_matching(level, norm)?.objective)
    } else {
        None
    };
    Ok(LevelSolve {
        level,
        m: datum.arc_count(),
        optimal_value: report.optimal_value,
        uniqueness_gap: report.uniqueness_gap,
        n_ties: report.tie_count,
        area_in: labels.area_in,
        en_value: en.objective,
        eprime_value: eprime,
        optimum_is_en: report.optimal.same_pairs(&en),
    })
}

fn solve_levels(c: &Construction, norm: &NormSpec, tie_tol: f64) -> Result<Vec<LevelSolve>> {
    (0..=c.depth().min(MAX_SOLVE_LEVEL))
        .map(|n| solve_level(c, norm, n, tie_tol))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CrossNormInputs {
    pub phi1: String,
    pub phi2: String,
    #[serde(serialize_with = "sig17::serialize")]
    pub theta_center: f64,
    #[serde(serialize_with = "sig17::serialize")]
    pub alpha0: f64,
    pub depth: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CrossNormReport {
    pub name: &'static str,
    pub inputs: CrossNormInputs,
    /// Factor applied to `φ2` to match `φ1` at the root chord direction.
    #[serde(serialize_with = "sig17::serialize")]
    pub rescale: f64,
    pub scan: PreconditionScan,
    pub h: HSignReport,
    pub levels_phi1: Vec<LevelSolve>,
    pub levels_phi2: Vec<LevelSolve>,
    pub verdict: Verdict,
}

pub struct CrossNormOptions {
    pub tol: f64,
    pub tie_tol: f64,
    pub solve_levels: bool,
}

impl Default for CrossNormOptions {
    fn default() -> Self {
        CrossNormOptions {
            tol: DEFAULT_TOL,
            tie_tol: DEFAULT_TIE_TOL,
            solve_levels: true,
        }
    }
}

/// Builds the equality construction for `φ1` and evaluates `h` for `φ2`
/// rescaled to agree with `φ1` at the root chord direction.
pub fn cross_norm_run(
    phi1: &NormSpec,
    phi2: &NormSpec,
    theta_center: f64,
    alpha0: f64,
    depth: usize,
    opts: &CrossNormOptions,
) -> Result<(Construction, CrossNormReport)> {
    let c = Construction::build(
        ConstructionConfig::new(phi1.clone(), alpha0, theta_center, depth, Mode::Equality)
            .with_tol(opts.tol),
    )?;
    let root_dir = c.chord_direction(0);
    let rescale = NormSpec::rescale_to_match(phi1, phi2, root_dir);
    let phi2r = NormSpec::rescaled_to_match(phi1, phi2, root_dir);
    let (lo, hi) = direction_window(&c);
    let scan = precondition_scan(
        phi1,
        &phi2r,
        lo - deg(WINDOW_MARGIN_DEG),
        hi + deg(WINDOW_MARGIN_DEG),
    );
    let h = c.check_h_signs(&phi2r);
    let (levels_phi1, levels_phi2) = if opts.solve_levels {
        (solve_levels(&c, phi1, opts.tie_tol)?, solve_levels(&c, &phi2r, opts.tie_tol)?)
    } else {
        (Vec::new(), Vec::new())
    };
    let verdict = if !scan.passed {
        Verdict::Inconclusive
    } else if scan.orientation == Orientation::AsGiven && h.min_h > 0.0 {
        Verdict::Certified
    } else {
        Verdict::NotCertified
    };
    let report = CrossNormReport {
        name: "cross_norm",
        inputs: CrossNormInputs {
            phi1: phi1.to_string(),
            phi2: phi2.to_string(),
            theta_center: c.config().theta_center,
            alpha0,
            depth,
        },
        rescale,
        scan,
        h,
        levels_phi1,
        levels_phi2,
        verdict,
    };
    Ok((c, report))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GRow {
    #[serde(serialize_with = "sig17::serialize")]
    pub alpha: f64,
    #[serde(serialize_with = "sig17::serialize")]
    pub g: f64,
    #[serde(serialize_with = "sig17::serialize")]
    pub g_prime: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GScan {
    #[serde(serialize_with = "sig17::serialize")]
    pub rescale: f64,
    pub rows: Vec<GRow>,
    pub negative_count: usize,
    pub positive_count: usize,
    pub all_negative: bool,
}

/// `g(α) = h_{φ1}(α) - h_{cφ2}(α)` on the uniform grid `α_i = (w/2)·i/(grid+1)`,
/// with centred differences of step `10⁻³` times the grid spacing.
pub fn g_scan(phi1: &NormSpec, phi2: &NormSpec, parent: &Arc, grid: usize) -> Result<GScan> {
    if grid == 0 {
        return Err(Error::Precondition("grid must be positive".into()));
    }
    let dir = parent.center() + FRAC_PI_2;
    let rescale = NormSpec::rescale_to_match(phi1, phi2, dir);
    let phi2r = NormSpec::rescaled_to_match(phi1, phi2, dir);
    let (mid, w) = (parent.center(), parent.width());
    let g = |a: f64| trapezoid_at(phi1, mid, w, a).h - trapezoid_at(&phi2r, mid, w, a).h;
    let spacing = w / 2.0 / (grid + 1) as f64;
    let step = 1e-3 * spacing;
    let rows: Vec<GRow> = (1..=grid)
        .map(|i| {
            let alpha = spacing * i as f64;
            GRow {
                alpha,
                g: g(alpha),
                g_prime: (g(alpha + step) - g(alpha - step)) / (2.0 * step),
            }
        })
        .collect();
    let negative_count = rows.iter().filter(|r| r.g_prime < 0.0).count();
    let positive_count = rows.iter().filter(|r| r.g_prime > 0.0).count();
    Ok(GScan {
        rescale,
        all_negative: negative_count == rows.len(),
        rows,
        negative_count,
        positive_count,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PerturbationNode {
    pub path: String,
    #[serde(serialize_with = "sig17::serialize")]
    pub h_phi1: f64,
    #[serde(serialize_with = "sig17::serialize")]
    pub h_phi2: f64,
    #[serde(serialize_with = "sig17::serialize")]
    pub h_l1: f64,
    #[serde(serialize_with = "sig17::serialize")]
    pub l1_prime_len: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PerturbationReport {
    pub name: &'static str,
    pub phi1: String,
    pub phi2: String,
    pub k: u32,
    #[serde(serialize_with = "sig17::serialize")]
    pub theta_center: f64,
    #[serde(serialize_with = "sig17::serialize")]
    pub alpha0: f64,
    pub depth: usize,
    #[serde(serialize_with = "sig17::serialize")]
    pub max_linearity_residual: f64,
    #[serde(serialize_with = "sig17::serialize")]
    pub max_l1_identity_residual: f64,
    #[serde(serialize_with = "sig17::serialize")]
    pub min_h_phi2: f64,
    #[serde(serialize_with = "sig17::serialize")]
    pub sup_profile_distance: f64,
    pub nodes: Vec<PerturbationNode>,
    pub verdict: Verdict,
}

pub const PERTURBATION_TOL: f64 = 1e-12;

fn first_quadrant_root(theta_center: f64, alpha0: f64) -> Result<()> {
    let start = canonical_angle(theta_center) - alpha0 / 2.0;
    if !(start > 0.0 && start + alpha0 < FRAC_PI_2) {
        return Err(Error::Precondition(format!(
            "root arc [{start}, {}] is not inside the open first quadrant",
            start + alpha0
        )));
    }
    Ok(())
}

/// Equality construction for `φ1` compared with `φ2 = φ1 + l₁/k`.
pub fn perturbation_run(
    phi1: &NormSpec,
    k: u32,
    theta_center: f64,
    alpha0: f64,
    depth: usize,
) -> Result<PerturbationReport> {
    if k == 0 {
        return Err(Error::Precondition("k must be positive".into()));
    }
    first_quadrant_root(theta_center, alpha0)?;
    let c = Construction::build(ConstructionConfig::new(
        phi1.clone(),
        alpha0,
        theta_center,
        depth,
        Mode::Equality,
    ))?;
    let inv = 1.0 / k as f64;
    let l1 = NormSpec::l1();
    let phi2 = NormSpec::combination(vec![(1.0, phi1.clone()), (inv, l1.clone())])?;
    let nodes: Vec<PerturbationNode> = c
        .internal_indices()
        .map(|i| {
            let prime = c.prime_chord_vector(i).expect("internal node");
            PerturbationNode {
                path: path_of(i),
                h_phi1: c.node_trapezoid(i, phi1).unwrap().h,
                h_phi2: c.node_trapezoid(i, &phi2).unwrap().h,
                h_l1: c.node_trapezoid(i, &l1).unwrap().h,
                l1_prime_len: l1.eval(prime),
            }
        })
        .collect();
    let max_linearity_residual = nodes
        .iter()
        .map(|n| (n.h_phi2 - n.h_phi1 - inv * n.h_l1).abs())
        .fold(0.0, f64::max);
    let max_l1_identity_residual = nodes
        .iter()
        .map(|n| (n.h_l1 - 2.0 * n.l1_prime_len).abs())
        .fold(0.0, f64::max);
    let min_h_phi2 = nodes.iter().map(|n| n.h_phi2).fold(f64::INFINITY, f64::min);
    // l1 profile peaks at the diagonals
    let sup_profile_distance = inv * l1.circle_profile(FRAC_PI_4);
    let verdict = if max_linearity_residual <= PERTURBATION_TOL
        && max_l1_identity_residual <= PERTURBATION_TOL
        && min_h_phi2 > 0.0
    {
        Verdict::Certified
    } else {
        Verdict::NotCertified
    };
    Ok(PerturbationReport {
        name: "perturbation",
        phi1: phi1.to_string(),
        phi2: phi2.to_string(),
        k,
        theta_center: c.config().theta_center,
        alpha0,
        depth,
        max_linearity_residual,
        max_l1_identity_residual,
        min_h_phi2,
        sup_profile_distance,
        nodes,
        verdict,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AreaRow {
    pub level: usize,
    #[serde(serialize_with = "sig17::serialize")]
    pub measure: f64,
    #[serde(serialize_with = "sig17::serialize")]
    pub area_en: f64,
    #[serde(serialize_with = "sig17::serialize")]
    pub area_eprime: f64,
}

fn area_rows(c: &Construction) -> Result<Vec<AreaRow>> {
    (0..=c.depth())
        .map(|n| {
            Ok(AreaRow {
                level: n,
                measure: c.measure(n)?,
                area_en: c.en_area(n)?,
                area_eprime: c.eprime_area(n)?,
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct L1QuadrantReport {
    pub name: &'static str,
    pub depth: usize,
    pub h: HSignReport,
    pub areas: Vec<AreaRow>,
    #[serde(serialize_with = "sig17::serialize")]
    pub area_ratio: f64,
    #[serde(serialize_with = "sig17::serialize")]
    pub decay_threshold: f64,
    pub nonexistence_indicated: bool,
}

/// `h_{l₁}` at every node of a construction lying in the open first quadrant.
pub fn l1_quadrant_run(c: &Construction) -> Result<L1QuadrantReport> {
    first_quadrant_root(c.config().theta_center, c.config().alpha0)?;
    let h = c.check_h_signs(&NormSpec::l1());
    let areas = area_rows(c)?;
    let area_ratio = areas[c.depth()].area_en / areas[0].area_en;
    let threshold = decay_threshold(c.depth());
    Ok(L1QuadrantReport {
        name: "l1_quadrant",
        depth: c.depth(),
        nonexistence_indicated: h.min_h > 0.0 && area_ratio <= threshold,
        h,
        areas,
        area_ratio,
        decay_threshold: threshold,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NonexistenceReport {
    pub name: &'static str,
    pub norm: String,
    pub depth: usize,
    #[serde(serialize_with = "sig17::serialize")]
    pub tie_tol: f64,
    pub levels: Vec<LevelSolve>,
    pub areas: Vec<AreaRow>,
    pub unique_en_through_solved_levels: bool,
    pub area_strictly_decreasing: bool,
    #[serde(serialize_with = "sig17::serialize")]
    pub area_ratio: f64,
    #[serde(serialize_with = "sig17::serialize")]
    pub decay_threshold: f64,
    pub nonexistence_indicated: bool,
}

pub fn nonexistence_run(c: &Construction, norm: &NormSpec, tie_tol: f64) -> Result<NonexistenceReport> {
    let levels = solve_levels(c, norm, tie_tol)?;
    let areas = area_rows(c)?;
    let unique = levels
        .iter()
        .all(|l| l.optimum_is_en && l.uniqueness_gap > tie_tol);
    let decreasing = areas.windows(2).all(|w| w[1].area_en < w[0].area_en);
    let area_ratio = areas[c.depth()].area_en / areas[0].area_en;
    let threshold = decay_threshold(c.depth());
    Ok(NonexistenceReport {
        name: "nonexistence",
        norm: norm.to_string(),
        depth: c.depth(),
        tie_tol,
        levels,
        areas,
        unique_en_through_solved_levels: unique,
        area_strictly_decreasing: decreasing,
        nonexistence_indicated: unique && decreasing && area_ratio <= threshold,
        area_ratio,
        decay_threshold: threshold,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExistenceLevel {
    pub level: usize,
    #[serde(serialize_with = "sig17::serialize")]
    pub en_value: f64,
    #[serde(serialize_with = "sig17::serialize")]
    pub eprime_value: f64,
    #[serde(serialize_with = "sig17::serialize")]
    pub optimal_value: f64,
    #[serde(serialize_with = "sig17::serialize")]
    pub n_ties: f64,
    pub values_agree: bool,
    pub both_optimal: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExistenceReport {
    pub name: &'static str,
    pub norm: String,
    pub depth: usize,
    #[serde(serialize_with = "sig17::serialize")]
    pub tol: f64,
    #[serde(serialize_with = "sig17::serialize")]
    pub tie_tol: f64,
    pub levels: Vec<ExistenceLevel>,
    pub areas: Vec<AreaRow>,
    pub eprime_nonincreasing: bool,
    /// `|E'_depth| - |E_depth|`, a lower bound for the limit of `|E'_n|`
    /// since every later removed cap lies under a level-`depth` chord.
    #[serde(serialize_with = "sig17::serialize")]
    pub eprime_limit_lower_bound: f64,
    /// Product lower bound on `H¹(F_depth)`, for isotropic norms.
    #[serde(serialize_with = "sig17::serialize_opt")]
    pub measure_bound: Option<f64>,
    pub measure_bound_holds: bool,
    pub existence_indicated: bool,
}

fn is_isotropic(norm: &NormSpec) -> bool {
    let p0 = norm.circle_profile(0.0);
    (0..360).all(|i| (norm.circle_profile(deg(i as f64)) / p0 - 1.0).abs() < 1e-12)
}

pub fn existence_run(
    c: &Construction,
    norm: &NormSpec,
    tol: f64,
    tie_tol: f64,
) -> Result<ExistenceReport> {
    let levels: Vec<ExistenceLevel> = (1..=c.depth().min(MAX_SOLVE_LEVEL))
        .map(|n| {
            let datum = c.level_datum(n)?;
            let report = solve_dp(norm, &datum, tie_tol)?;
            let en = c.en_matching(n, norm)?.objective;
            let ep = c.eprime_matching(n, norm)?.objective;
            let best = report.optimal_value;
            Ok(ExistenceLevel {
                level: n,
                en_value: en,
                eprime_value: ep,
                optimal_value: best,
                n_ties: report.tie_count,
                values_agree: (en - ep).abs() <= n as f64 * tol,
                both_optimal: en - best <= tie_tol && ep - best <= tie_tol,
            })
        })
        .collect::<Result<_>>()?;
    let areas = area_rows(c)?;
    let eprime_nonincreasing = areas.windows(2).all(|w| w[1].area_eprime <= w[0].area_eprime);
    let last = &areas[c.depth()];
    let eprime_limit_lower_bound = last.area_eprime - last.area_en;
    let measure_bound = is_isotropic(norm).then(|| {
        crate::construction::isotropic_measure_lower_bound(c.config().alpha0, c.depth())
    });
    let measure_bound_holds = measure_bound.map_or(true, |b| last.measure >= b);
    let existence_indicated = levels.iter().all(|l| l.values_agree && l.both_optimal)
        && eprime_nonincreasing
        && eprime_limit_lower_bound > 0.0
        && measure_bound_holds;
    Ok(ExistenceReport {
        name: "existence",
        norm: norm.to_string(),
        depth: c.depth(),
        tol,
        tie_tol,
        levels,
        areas,
        eprime_nonincreasing,
        eprime_limit_lower_bound,
        measure_bound,
        measure_bound_holds,
        existence_indicated,
    })
}

/// Whether the optimal `E` at each solved level is contained in the one at
/// the previous level.
pub fn optimal_regions_nested(c: &Construction, norm: &NormSpec, tie_tol: f64) -> Result<bool> {
    let mut prev = None;
    for n in 0..=c.depth().min(MAX_SOLVE_LEVEL) {
        let datum = c.level_datum(n)?;
        let report = solve_dp(norm, &datum, tie_tol)?;
        let labels = region_labels(&report.optimal, &datum)?;
        if let Some((pd, pl)) = &prev {
            if !crate::solver::in_region_contained(&labels, &datum, pl, pd) {
                return Ok(false);
            }
        }
        prev = Some((datum, labels));
    }
    Ok(true)
}

/// Chord-direction window of a construction as `(lo, hi)` in degrees.
pub fn direction_window_deg(c: &Construction) -> (f64, f64) {
    let (lo, hi) = direction_window(c);
    (lo.to_degrees(), hi.to_degrees())
}

/// Number of internal nodes of a depth-`depth` tree.
pub fn internal_node_count(depth: usize) -> usize {
    level_range(depth).start
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_rows() {
        let rows = square_example(0.5, 0.4, &[2.0, 3.0]).unwrap();
        assert!((rows[0].value_e1 - 2.0 * 0.41f64.sqrt()).abs() < 1e-12);
        assert!((rows[0].value_e2 - 1.2).abs() < 1e-12);
        assert_eq!(rows[0].winner, "E2");
        assert!(!rows[0].solution_exists);
        let cube = 2.0 * (0.125f64 + 0.064).cbrt();
        assert!((rows[1].value_e1 - cube).abs() < 1e-12);
        assert!((rows[1].value_e1 - 1.147758).abs() < 1e-6);
        assert_eq!(rows[1].winner, "E1");
        let r = &square_example(0.3, 0.3, &[2.0]).unwrap()[0];
        assert!((r.value_e1 - 0.6 * 2f64.sqrt()).abs() < 1e-12);
        assert!((r.value_e2 - 1.4).abs() < 1e-12);
        assert_eq!(r.winner, "E1");
        assert!(square_example(1.0, 0.4, &[2.0]).is_err());
        assert!(square_example(0.5, 0.5, &[2.0]).is_err());
        assert!(square_example(0.5, 0.4, &[0.5]).is_err());
    }

    #[test]
    fn g_scan_trivial_cases() {
        let parent = Arc::new(0.3, 0.05).unwrap();
        let l3 = NormSpec::lp(3.0).unwrap();
        let same = g_scan(&l3, &l3, &parent, 16).unwrap();
        assert!(same.rows.iter().all(|r| r.g == 0.0));
        let a = g_scan(&l3, &NormSpec::l2(), &parent, 16).unwrap();
        let b = g_scan(&NormSpec::l2(), &l3, &parent, 16).unwrap();
        for (x, y) in a.rows.iter().zip(&b.rows) {
            // the two scans rescale different norms, so compare up to scale
            let ratio = a.rescale;
            assert!((x.g + y.g * ratio).abs() < 1e-12, "{} {}", x.g, y.g);
        }
    }

    #[test]
    fn cross_norm_same_and_scaled_never_certify() {
        let l3 = NormSpec::lp(3.0).unwrap();
        let opts = CrossNormOptions { solve_levels: false, ..Default::default() };
        for phi2 in [l3.clone(), NormSpec::scaled(3.0, l3.clone()).unwrap()] {
            let (_, r) = cross_norm_run(&l3, &phi2, deg(125.0), 0.05, 6, &opts).unwrap();
            assert_ne!(r.verdict, Verdict::Certified);
            assert!(r.h.max_abs_h <= 1e-12);
        }
    }

    #[test]
    fn perturbation_rejects_outside_quadrant() {
        assert!(perturbation_run(&NormSpec::l2(), 10, deg(100.0), 0.05, 3).is_err());
        assert!(perturbation_run(&NormSpec::l2(), 10, 0.02, 0.05, 3).is_err());
        assert!(perturbation_run(&NormSpec::l2(), 0, FRAC_PI_4, 0.05, 3).is_err());
    }

    #[test]
    fn l1_quadrant_reflection_symmetry() {
        let build = |theta: f64| {
            Construction::build(ConstructionConfig::new(
                NormSpec::l2(),
                0.1,
                theta,
                5,
                Mode::FixedRatio(0.6),
            ))
            .unwrap()
        };
        let a = l1_quadrant_run(&build(0.5)).unwrap();
        let b = l1_quadrant_run(&build(FRAC_PI_2 - 0.5)).unwrap();
        assert!(a.nonexistence_indicated && b.nonexistence_indicated);
        let n = a.h.values.len();
        for (i, x) in a.h.values.iter().enumerate() {
            // reflection across y = x reverses the order of nodes on each level
            let level = crate::construction::level_of(i);
            let r = level_range(level);
            let j = r.start + (r.end - 1 - i);
            assert!(j < n);
            assert!((x.h - b.h.values[j].h).abs() < 1e-14);
        }
        let touching = build(0.05);
        assert!(l1_quadrant_run(&touching).is_err());
    }

    #[test]
    fn nonexistence_depth_zero_is_trivial() {
        let c = Construction::build(ConstructionConfig::new(
            NormSpec::l2(),
            0.1,
            1.0,
            0,
            Mode::EqualityFraction(0.8),
        ))
        .unwrap();
        let r = nonexistence_run(&c, &NormSpec::l2(), DEFAULT_TIE_TOL).unwrap();
        assert_eq!(r.levels.len(), 1);
        assert!(r.levels[0].optimum_is_en);
        assert!(r.nonexistence_indicated);
    }

    #[test]
    fn existence_depth_one_ties() {
        let c = Construction::build(ConstructionConfig::new(
            NormSpec::l2(),
            0.1,
            1.0,
            1,
            Mode::Equality,
        ))
        .unwrap();
        let r = existence_run(&c, &NormSpec::l2(), DEFAULT_TOL, DEFAULT_TIE_TOL).unwrap();
        assert_eq!(r.levels[0].n_ties, 2.0);
        assert!(r.existence_indicated);
    }
}
