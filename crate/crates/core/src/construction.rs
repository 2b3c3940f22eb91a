//! Recursive Cantor-type arc families `F_n` with the candidate sets `E_n`
//! (caps under the level-`n` chords) and `E'_n` (the root cap with every
//! removed middle cap cut out).
//!
//! Each internal node owns one trapezoid: its own chord, the chord `ℓ'`
//! across the removed middle arc, and the chords of its two children, which
//! share a common angle. The mode decides how that angle is picked.
//!
//! Nodes live in a flat array in heap order; node `i` has children `2i+1`
//! and `2i+2`, and level `n` occupies indices `2ⁿ-1 .. 2ⁿ⁺¹-1`. All
//! trapezoid evaluations use the stored parent width and child angle
//! directly, so the gap `w - 2α` keeps full precision even when it is far
//! below the resolution of absolute angles.

use std::f64::consts::{FRAC_PI_2, PI};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{
    canonical_angle, check_child_angle, chord_vector_centered, trapezoid_at, Arc, ArcSet, Chord,
    TrapezoidReport,
};
use crate::norm::NormSpec;
use crate::sig17;
use crate::solver::{ChordMatching, TraceDatum};

pub const DEFAULT_TOL: f64 = 1e-12;
pub const MAX_DEPTH: usize = 20;

/// Bracket for the equal-angle root, as fractions of the parent width.
const BRACKET_LO: f64 = 1e-4;
const BRACKET_HI_SLACK: f64 = 1e-4;
const MAX_BRACKET_PUSHES: usize = 40;
const STRICT_GRID_POINTS: usize = 16;
const PROBE_SAMPLES: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Mode {
    /// `h = 0` at every node.
    Equality,
    /// `α = ρ·α*` with `α*` the equality root; `h > 0` is enforced.
    EqualityFraction(f64),
    /// `α = ρ·w/2`; `h` is recorded but unconstrained.
    FixedRatio(f64),
}

impl Mode {
    pub fn name(&self) -> &'static str {
        match self {
            Mode::Equality => "equality",
            Mode::EqualityFraction(_) => "equality_fraction",
            Mode::FixedRatio(_) => "fixed_ratio",
        }
    }

    pub fn rho(&self) -> Option<f64> {
        match *self {
            Mode::Equality => None,
            Mode::EqualityFraction(r) | Mode::FixedRatio(r) => Some(r),
        }
    }

    pub fn from_name(name: &str, rho: Option<f64>) -> Result<Mode> {
        let need_rho = || {
            rho.ok_or_else(|| Error::InvalidConfig(format!("mode `{name}` requires rho")))
        };
        match name.replace('-', "_").as_str() {
            "equality" => Ok(Mode::Equality),
            "equality_fraction" => Ok(Mode::EqualityFraction(need_rho()?)),
            "fixed_ratio" => Ok(Mode::FixedRatio(need_rho()?)),
            _ => Err(Error::InvalidConfig(format!("unknown mode `{name}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConstructionConfig {
    pub norm: NormSpec,
    pub alpha0: f64,
    pub theta_center: f64,
    pub depth: usize,
    pub mode: Mode,
    pub tol: f64,
}

impl ConstructionConfig {
    pub fn new(norm: NormSpec, alpha0: f64, theta_center: f64, depth: usize, mode: Mode) -> Self {
        ConstructionConfig {
            norm,
            alpha0,
            theta_center,
            depth,
            mode,
            tol: DEFAULT_TOL,
        }
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha0 > 0.0 && self.alpha0 < FRAC_PI_2) {
            return Err(Error::InvalidConfig(format!(
                "alpha0 = {} outside (0, π/2)",
                self.alpha0
            )));
        }
        if !self.theta_center.is_finite() {
            return Err(Error::InvalidConfig("theta_center is not finite".into()));
        }
        if self.depth > MAX_DEPTH {
            return Err(Error::InvalidConfig(format!(
                "depth {} exceeds {MAX_DEPTH}",
                self.depth
            )));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::InvalidConfig(format!("tol = {} must be positive", self.tol)));
        }
        match self.mode {
            Mode::EqualityFraction(r) if !(r > 0.0 && r < 1.0) => Err(Error::InvalidConfig(
                format!("equality fraction rho = {r} outside (0, 1)"),
            )),
            // rho = 1 is the degenerate touching-arcs limit
            Mode::FixedRatio(r) if !(r > 0.0 && r <= 1.0) => Err(Error::InvalidConfig(format!(
                "fixed ratio rho = {r} outside (0, 1]"
            ))),
            _ => Ok(()),
        }
    }
}

/// Solves `h_φ(α) = 0` for the common child angle of `parent`.
pub fn solve_equal_angle(norm: &NormSpec, parent: &Arc, tol: f64) -> Result<f64> {
    solve_equal_angle_at(norm, parent.center(), parent.width(), tol)
}

pub(crate) fn solve_equal_angle_at(norm: &NormSpec, mid: f64, width: f64, tol: f64) -> Result<f64> {
    if !(width > 0.0 && width < FRAC_PI_2) {
        return Err(Error::Precondition(format!(
            "parent width {width} outside (0, π/2)"
        )));
    }
    let h = |a: f64| trapezoid_at(norm, mid, width, a).h;
    let half = width / 2.0;
    let mut lo = BRACKET_LO * width;
    let mut hi = half * (1.0 - BRACKET_HI_SLACK);
    let mut pushes = 0;
    loop {
        let (h_lo, h_hi) = (h(lo), h(hi));
        if h_lo > 0.0 && h_hi < 0.0 {
            break;
        }
        if pushes == MAX_BRACKET_PUSHES {
            return Err(Error::BracketFailure { width, h_lo, h_hi });
        }
        if h_lo <= 0.0 {
            lo *= 0.5;
        }
        if h_hi >= 0.0 {
            hi = half - (half - hi) * 0.5;
        }
        pushes += 1;
    }
    loop {
        let m = lo + (hi - lo) / 2.0;
        if m <= lo || m >= hi {
            break;
        }
        if h(m) > 0.0 {
            lo = m;
        } else {
            hi = m;
        }
    }
    let (h_lo, h_hi) = (h(lo), h(hi));
    let (alpha, residual) = if h_hi.abs() < h_lo.abs() && hi < half {
        (hi, h_hi)
    } else {
        (lo, h_lo)
    };
    if residual.abs() > tol {
        return Err(Error::ToleranceNotMet {
            residual: residual.abs(),
            tol,
        });
    }
    Ok(alpha)
}

#[derive(Clone, Copy, Debug, PartialEq)]
struct Node {
    /// Unreduced start angle.
    start: f64,
    width: f64,
    child_alpha: Option<f64>,
    h_self: Option<f64>,
}

impl Node {
    fn mid(&self) -> f64 {
        self.start + self.width / 2.0
    }
}

/// Read-only view of one node of a [`Construction`].
#[derive(Clone, Debug, PartialEq)]
pub struct ConstructionNode {
    pub index: usize,
    pub level: usize,
    /// Binary path `m₁…mₙ`; empty for the root.
    pub path: String,
    pub arc: Arc,
    /// Common angle of this node's two children (`None` for leaves).
    pub child_alpha: Option<f64>,
    /// `h` of this node's trapezoid under the construction norm.
    pub h_self: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Construction {
    config: ConstructionConfig,
    nodes: Vec<Node>,
}

pub fn level_range(level: usize) -> std::ops::Range<usize> {
    ((1usize << level) - 1)..((1usize << (level + 1)) - 1)
}

pub fn level_of(index: usize) -> usize {
    (usize::BITS - 1 - (index + 1).leading_zeros()) as usize
}

pub fn path_of(index: usize) -> String {
    let level = level_of(index);
    let pos = index + 1 - (1usize << level);
    (0..level)
        .rev()
        .map(|b| if pos >> b & 1 == 1 { '1' } else { '0' })
        .collect()
}

fn index_of_path(path: &str) -> Option<usize> {
    let mut pos = 0usize;
    for c in path.chars() {
        pos = pos * 2
            + match c {
                '0' => 0,
                '1' => 1,
                _ => return None,
            };
    }
    Some((1usize << path.len()) - 1 + pos)
}

impl Construction {
    pub fn build(config: ConstructionConfig) -> Result<Construction> {
        let mut config = config;
        config.validate()?;
        config.theta_center = canonical_angle(config.theta_center);
        if !matches!(config.mode, Mode::FixedRatio(_)) {
            let probe = config.norm.strict_convexity_probe(PROBE_SAMPLES);
            if !probe.passed {
                return Err(Error::NotStrictlyConvex(probe.worst_margin));
            }
        }
        let total = (1usize << (config.depth + 1)) - 1;
        let mut nodes = Vec::with_capacity(total);
        nodes.push(Node {
            start: config.theta_center - config.alpha0 / 2.0,
            width: config.alpha0,
            child_alpha: None,
            h_self: None,
        });
        for level in 0..config.depth {
            let range = level_range(level);
            let offset = range.start;
            let solved: Vec<(f64, f64)> = nodes[range.clone()]
                .par_iter()
                .enumerate()
                .map(|(k, node)| choose_child_angle(&config, node, offset + k))
                .collect::<Result<_>>()?;
            for (k, (alpha, h)) in solved.into_iter().enumerate() {
                let parent = &mut nodes[offset + k];
                parent.child_alpha = Some(alpha);
                parent.h_self = Some(h);
                let (start, width) = (parent.start, parent.width);
                nodes.push(Node {
                    start,
                    width: alpha,
                    child_alpha: None,
                    h_self: None,
                });
                nodes.push(Node {
                    start: start + (width - alpha),
                    width: alpha,
                    child_alpha: None,
                    h_self: None,
                });
            }
        }
        Ok(Construction { config, nodes })
    }

    pub fn config(&self) -> &ConstructionConfig {
        &self.config
    }

    pub fn depth(&self) -> usize {
        self.config.depth
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn node(&self, index: usize) -> ConstructionNode {
        let n = &self.nodes[index];
        ConstructionNode {
            index,
            level: level_of(index),
            path: path_of(index),
            arc: Arc::new(n.start, n.width).expect("construction arcs are valid"),
            child_alpha: n.child_alpha,
            h_self: n.h_self,
        }
    }

    pub fn node_by_path(&self, path: &str) -> Option<ConstructionNode> {
        index_of_path(path)
            .filter(|&i| i < self.nodes.len())
            .map(|i| self.node(i))
    }

    pub fn nodes(&self) -> impl Iterator<Item = ConstructionNode> + '_ {
        (0..self.nodes.len()).map(|i| self.node(i))
    }

    /// Indices of the nodes that have children.
    pub fn internal_indices(&self) -> std::ops::Range<usize> {
        0..((1usize << self.config.depth) - 1)
    }

    /// Unreduced start angle and width of a node.
    pub fn raw_arc(&self, index: usize) -> (f64, f64) {
        (self.nodes[index].start, self.nodes[index].width)
    }

    fn check_level(&self, level: usize) -> Result<()> {
        if level > self.config.depth {
            return Err(Error::LevelOutOfRange {
                level,
                depth: self.config.depth,
            });
        }
        Ok(())
    }

    /// Removed middle gap `w - 2α` of an internal node.
    pub fn gap(&self, index: usize) -> Option<f64> {
        let n = &self.nodes[index];
        n.child_alpha.map(|a| n.width - 2.0 * a)
    }

    /// Trapezoid of an internal node evaluated under `norm`.
    pub fn node_trapezoid(&self, index: usize, norm: &NormSpec) -> Option<TrapezoidReport> {
        let n = &self.nodes[index];
        n.child_alpha.map(|a| trapezoid_at(norm, n.mid(), n.width, a))
    }

    /// Vector of the chord `ℓ'` across the removed arc of an internal node.
    pub fn prime_chord_vector(&self, index: usize) -> Option<[f64; 2]> {
        let n = &self.nodes[index];
        n.child_alpha
            .map(|a| chord_vector_centered(n.mid(), n.width - 2.0 * a))
    }

    /// Direction angle (unreduced) of the chord of a node.
    pub fn chord_direction(&self, index: usize) -> f64 {
        self.nodes[index].mid() + FRAC_PI_2
    }

    /// The `2ⁿ` arcs of `F_n`, counterclockwise from the root start.
    pub fn level_arcs(&self, level: usize) -> Result<ArcSet> {
        self.check_level(level)?;
        for i in 0..level_range(level).start {
            if let Some(g) = self.gap(i) {
                if !(g > 0.0) {
                    return Err(Error::DegenerateGap(path_of(i)));
                }
            }
        }
        let arcs = level_range(level)
            .map(|i| Arc::new(self.nodes[i].start, self.nodes[i].width))
            .collect::<Result<Vec<_>>>()?;
        Ok(ArcSet::from_trusted(arcs))
    }

    /// Chords bounding `E_n`, one per level-`n` arc.
    pub fn en_chords(&self, level: usize) -> Result<Vec<Chord>> {
        self.check_level(level)?;
        level_range(level)
            .map(|i| {
                let n = &self.nodes[i];
                Chord::new(n.start, n.start + n.width)
            })
            .collect()
    }

    /// Chords bounding `E'_n`: the root chord, then `ℓ'` of every node above
    /// level `n`, level by level.
    pub fn eprime_chords(&self, level: usize) -> Result<Vec<Chord>> {
        self.check_level(level)?;
        if level == 0 {
            return Err(Error::LevelOutOfRange { level, depth: self.config.depth });
        }
        let root = &self.nodes[0];
        let mut chords = vec![Chord::new(root.start, root.start + root.width)?];
        for i in 0..level_range(level).start {
            let n = &self.nodes[i];
            let a = n.child_alpha.expect("internal node");
            chords.push(Chord::new(n.start + a, n.start + (n.width - a))?);
        }
        Ok(chords)
    }

    /// `H¹(F_n)`.
    pub fn measure(&self, level: usize) -> Result<f64> {
        self.check_level(level)?;
        Ok(level_range(level).map(|i| self.nodes[i].width).sum())
    }

    /// `Σ` of the cap areas under the level-`n` chords, i.e. `|E_n|`.
    pub fn en_area(&self, level: usize) -> Result<f64> {
        self.check_level(level)?;
        Ok(level_range(level)
            .map(|i| crate::geometry::segment_area(self.nodes[i].width))
            .sum())
    }

    /// `|E'_n|`: the root cap minus every removed middle cap above level `n`.
    pub fn eprime_area(&self, level: usize) -> Result<f64> {
        self.check_level(level)?;
        let removed: f64 = (0..level_range(level).start)
            .map(|i| crate::geometry::segment_area(self.gap(i).unwrap_or(0.0)))
            .sum();
        Ok(crate::geometry::segment_area(self.config.alpha0) - removed)
    }

    /// Removed-to-remaining ratio `r = (w - 2α)/α` for every internal node.
    pub fn ratios(&self) -> Vec<NodeRatio> {
        self.internal_indices()
            .map(|i| {
                let n = &self.nodes[i];
                let a = n.child_alpha.expect("internal node");
                NodeRatio {
                    path: path_of(i),
                    parent_alpha: n.width,
                    child_alpha: a,
                    r: (n.width - 2.0 * a) / a,
                }
            })
            .collect()
    }

    /// Evaluates `h` under `other` at every internal node.
    pub fn check_h_signs(&self, other: &NormSpec) -> HSignReport {
        let values: Vec<NodeH> = self
            .internal_indices()
            .map(|i| NodeH {
                path: path_of(i),
                h: self.node_trapezoid(i, other).expect("internal node").h,
            })
            .collect();
        HSignReport::from_values(values)
    }

    /// Whether every node's arcs lie in the open first quadrant.
    pub fn in_open_first_quadrant(&self) -> bool {
        let root = &self.nodes[0];
        let start = canonical_angle(root.start);
        start > 0.0 && start + root.width < FRAC_PI_2
    }

    /// The trace datum `χ_{F_n}` with points in path order.
    pub fn level_datum(&self, level: usize) -> Result<TraceDatum> {
        TraceDatum::new(self.level_arcs(level)?)
    }

    /// `E_n` as a matching of the level-`n` transition points.
    pub fn en_matching(&self, level: usize, norm: &NormSpec) -> Result<ChordMatching> {
        let datum = self.level_datum(level)?;
        let pairs = (0..(1usize << level)).map(|k| (2 * k, 2 * k + 1)).collect();
        ChordMatching::new(pairs, &datum, norm)
    }

    /// `E'_n` as a matching of the level-`n` transition points.
    pub fn eprime_matching(&self, level: usize, norm: &NormSpec) -> Result<ChordMatching> {
        let datum = self.level_datum(level)?;
        if level == 0 {
            return ChordMatching::new(vec![(0, 1)], &datum, norm);
        }
        let points = 1usize << (level + 1);
        let mut pairs = vec![(0, points - 1)];
        for j in 0..level {
            let span = 1usize << (level - j);
            for q in 0..(1usize << j) {
                let last_left_leaf = q * span + span / 2 - 1;
                pairs.push((2 * last_left_leaf + 1, 2 * last_left_leaf + 2));
            }
        }
        ChordMatching::new(pairs, &datum, norm)
    }

    pub fn to_json(&self) -> Result<String> {
        let dump = Dump {
            config: DumpConfig {
                norm: self.config.norm.to_string(),
                alpha0: self.config.alpha0,
                theta_center: self.config.theta_center,
                depth: self.config.depth,
                mode: self.config.mode.name().to_string(),
                rho: self.config.mode.rho(),
                tol: self.config.tol,
            },
            nodes: self
                .nodes
                .iter()
                .enumerate()
                .map(|(i, n)| DumpNode {
                    path: path_of(i),
                    arc_start: n.start,
                    arc_width: n.width,
                    child_alpha: n.child_alpha,
                    h_self: n.h_self,
                })
                .collect(),
        };
        let mut text = serde_json::to_string_pretty(&dump)?;
        text.push('\n');
        Ok(text)
    }

    /// Reloads a dump produced by [`Construction::to_json`] without re-solving.
    pub fn from_json(text: &str) -> Result<Construction> {
        let dump: LoadDump = serde_json::from_str(text)?;
        let norm: NormSpec = dump.config.norm.parse()?;
        let mode = Mode::from_name(&dump.config.mode, dump.config.rho)?;
        let config = ConstructionConfig {
            norm,
            alpha0: dump.config.alpha0,
            theta_center: dump.config.theta_center,
            depth: dump.config.depth,
            mode,
            tol: dump.config.tol,
        };
        config.validate()?;
        let total = (1usize << (config.depth + 1)) - 1;
        if dump.nodes.len() != total {
            return Err(Error::Dump(format!(
                "expected {total} nodes for depth {}, found {}",
                config.depth,
                dump.nodes.len()
            )));
        }
        let internal = (1usize << config.depth) - 1;
        let mut nodes = Vec::with_capacity(total);
        for (i, n) in dump.nodes.iter().enumerate() {
            if n.path != path_of(i) {
                return Err(Error::Dump(format!(
                    "node {i} has path `{}`, expected `{}`",
                    n.path,
                    path_of(i)
                )));
            }
            if (i < internal) != n.child_alpha.is_some() || (i < internal) != n.h_self.is_some() {
                return Err(Error::Dump(format!(
                    "node `{}`: child_alpha/h_self must be present exactly on internal nodes",
                    n.path
                )));
            }
            if let Some(a) = n.child_alpha {
                check_child_angle(n.arc_width * (1.0 + f64::EPSILON), a)
                    .map_err(|e| Error::Dump(format!("node `{}`: {e}", n.path)))?;
            }
            nodes.push(Node {
                start: n.arc_start,
                width: n.arc_width,
                child_alpha: n.child_alpha,
                h_self: n.h_self,
            });
        }
        for i in 0..internal {
            let p = nodes[i];
            let a = p.child_alpha.unwrap();
            let (c0, c1) = (nodes[2 * i + 1], nodes[2 * i + 2]);
            let expected = [(p.start, a), (p.start + (p.width - a), a)];
            for (c, (s, w)) in [c0, c1].iter().zip(expected) {
                if c.width != w || (c.start - s).abs() > 1e-12 * (1.0 + s.abs()) {
                    return Err(Error::Dump(format!(
                        "children of node `{}` are not its end sub-arcs",
                        path_of(i)
                    )));
                }
            }
        }
        if nodes[0].width != config.alpha0 {
            return Err(Error::Dump("root width differs from alpha0".into()));
        }
        Ok(Construction { config, nodes })
    }
}

fn choose_child_angle(config: &ConstructionConfig, node: &Node, index: usize) -> Result<(f64, f64)> {
    let (mid, w) = (node.mid(), node.width);
    let h = |a: f64| trapezoid_at(&config.norm, mid, w, a).h;
    match config.mode {
        Mode::Equality => {
            let a = solve_equal_angle_at(&config.norm, mid, w, config.tol)?;
            Ok((a, h(a)))
        }
        Mode::EqualityFraction(rho) => {
            let root = solve_equal_angle_at(&config.norm, mid, w, config.tol)?;
            let a = rho * root;
            let value = h(a);
            let grid_ok = (1..=STRICT_GRID_POINTS)
                .all(|k| h(root * k as f64 / (STRICT_GRID_POINTS + 1) as f64) > 0.0);
            if !(value > 0.0) || !grid_ok {
                return Err(Error::StrictModeViolated {
                    path: path_of(index),
                    h: value,
                });
            }
            Ok((a, value))
        }
        Mode::FixedRatio(rho) => {
            let a = rho * w / 2.0;
            Ok((a, h(a)))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NodeRatio {
    pub path: String,
    #[serde(serialize_with = "sig17::serialize")]
    pub parent_alpha: f64,
    #[serde(serialize_with = "sig17::serialize")]
    pub child_alpha: f64,
    #[serde(serialize_with = "sig17::serialize")]
    pub r: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NodeH {
    pub path: String,
    #[serde(serialize_with = "sig17::serialize")]
    pub h: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HSignReport {
    #[serde(serialize_with = "sig17::serialize")]
    pub min_h: f64,
    #[serde(serialize_with = "sig17::serialize")]
    pub max_abs_h: f64,
    pub nonpositive_count: usize,
    pub values: Vec<NodeH>,
}

impl HSignReport {
    pub fn from_values(values: Vec<NodeH>) -> Self {
        let min_h = values.iter().map(|v| v.h).fold(f64::INFINITY, f64::min);
        let max_abs_h = values.iter().map(|v| v.h.abs()).fold(0.0, f64::max);
        let nonpositive_count = values.iter().filter(|v| !(v.h > 0.0)).count();
        HSignReport {
            min_h,
            max_abs_h,
            nonpositive_count,
            values,
        }
    }
}

/// Lower bound `α₀ / Π_{k=1}^{n} (1 + α₀²/(3·4ᵏ))` on `H¹(F_n)` for the
/// isotropic equality construction.
pub fn isotropic_measure_lower_bound(alpha0: f64, levels: usize) -> f64 {
    let product: f64 = (1..=levels)
        .map(|k| 1.0 + alpha0 * alpha0 / (3.0 * 4f64.powi(k as i32)))
        .product();
    alpha0 / product
}

/// The same bound with the infinite product.
pub fn isotropic_measure_limit_bound(alpha0: f64) -> f64 {
    // 4^-k underflows the correction long before k = 60
    isotropic_measure_lower_bound(alpha0, 60)
}

#[derive(Serialize)]
struct Dump {
    config: DumpConfig,
    nodes: Vec<DumpNode>,
}

#[derive(Serialize)]
struct DumpConfig {
    norm: String,
    #[serde(serialize_with = "sig17::serialize")]
    alpha0: f64,
    #[serde(serialize_with = "sig17::serialize")]
    theta_center: f64,
    depth: usize,
    mode: String,
    #[serde(serialize_with = "sig17::serialize_opt", skip_serializing_if = "Option::is_none")]
    rho: Option<f64>,
    #[serde(serialize_with = "sig17::serialize")]
    tol: f64,
}

#[derive(Serialize)]
struct DumpNode {
    path: String,
    #[serde(serialize_with = "sig17::serialize")]
    arc_start: f64,
    #[serde(serialize_with = "sig17::serialize")]
    arc_width: f64,
    #[serde(serialize_with = "sig17::serialize_opt")]
    child_alpha: Option<f64>,
    #[serde(serialize_with = "sig17::serialize_opt")]
    h_self: Option<f64>,
}

#[derive(Deserialize)]
struct LoadDump {
    config: LoadConfig,
    nodes: Vec<LoadNode>,
}

#[derive(Deserialize)]
struct LoadConfig {
    norm: String,
    alpha0: f64,
    theta_center: f64,
    depth: usize,
    mode: String,
    #[serde(default)]
    rho: Option<f64>,
    tol: f64,
}

#[derive(Deserialize)]
struct LoadNode {
    path: String,
    arc_start: f64,
    arc_width: f64,
    child_alpha: Option<f64>,
    h_self: Option<f64>,
}

/// Chord direction window (min, max), in radians, swept by all node chords.
pub fn direction_window(c: &Construction) -> (f64, f64) {
    (0..c.node_count())
        .map(|i| c.chord_direction(i))
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), d| {
            (lo.min(d), hi.max(d))
        })
}

/// Degrees to radians, kept here for placement helpers.
pub fn deg(x: f64) -> f64 {
    x * PI / 180.0
}
