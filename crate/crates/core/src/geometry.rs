//! Arcs and chords of the unit circle, anisotropic chord lengths, the
//! trapezoid functional `h`, and circular-segment areas.
//!
//! Chord vectors are formed with the product identities
//! `p(b) - p(a) = 2 sin((b-a)/2) · (-sin m, cos m)`, `m = (a+b)/2`, so short
//! chords keep full relative precision instead of suffering from the
//! cancellation in `cos b - cos a`.

use std::f64::consts::{PI, TAU};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::norm::NormSpec;

/// Reduces an angle to `[0, 2π)`.
pub fn canonical_angle(theta: f64) -> f64 {
    let r = theta.rem_euclid(TAU);
    // rem_euclid can round up to exactly TAU
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Point of the unit circle at angle `theta`.
pub fn circle_point(theta: f64) -> [f64; 2] {
    [theta.cos(), theta.sin()]
}

fn normal(m: f64) -> [f64; 2] {
    [-m.sin(), m.cos()]
}

/// Chord vector of the chord centred (angularly) at `mid` and subtending
/// the central angle `span`.
pub(crate) fn chord_vector_centered(mid: f64, span: f64) -> [f64; 2] {
    let s = 2.0 * (span / 2.0).sin();
    let n = normal(mid);
    [s * n[0], s * n[1]]
}

/// `p(b) - p(a)` for points of the unit circle.
pub fn chord_vector(a: f64, b: f64) -> [f64; 2] {
    chord_vector_centered((a + b) / 2.0, b - a)
}

fn coincident(a: f64, b: f64) -> bool {
    let d = canonical_angle(b - a);
    d == 0.0 || (TAU - d) == 0.0
}

/// Counterclockwise arc `{start + t : t ∈ [0, width]}` of the unit circle.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Arc {
    start: f64,
    width: f64,
}

impl Arc {
    pub fn new(start: f64, width: f64) -> Result<Self> {
        if !start.is_finite() {
            return Err(Error::InvalidArc(format!("start {start} is not finite")));
        }
        if !(width > 0.0 && width < TAU) {
            return Err(Error::InvalidArc(format!("width {width} outside (0, 2π)")));
        }
        Ok(Arc {
            start: canonical_angle(start),
            width,
        })
    }

    /// Arc of the given width centred at `center`.
    pub fn centered(center: f64, width: f64) -> Result<Self> {
        Arc::new(center - width / 2.0, width)
    }

    pub fn start(&self) -> f64 {
        self.start
    }

    pub fn width(&self) -> f64 {
        self.width
    }

    /// End angle, not reduced modulo 2π.
    pub fn end(&self) -> f64 {
        self.start + self.width
    }

    pub fn center(&self) -> f64 {
        self.start + self.width / 2.0
    }

    pub fn chord(&self) -> Chord {
        Chord {
            a: self.start,
            b: self.end(),
        }
    }

    /// Whether `other` lies inside this arc (endpoints included, up to the
    /// rounding of angle reduction).
    pub fn contains_arc(&self, other: &Arc) -> bool {
        let slack = 4.0 * f64::EPSILON * TAU;
        let offset = canonical_angle(other.start - self.start);
        let offset = if offset > TAU - slack { offset - TAU } else { offset };
        offset >= -slack && offset + other.width <= self.width + slack
    }

    /// Closed arcs share no point.
    pub fn is_disjoint(&self, other: &Arc) -> bool {
        let ahead = canonical_angle(other.start - self.start);
        let behind = canonical_angle(self.start - other.start);
        ahead > self.width && behind > other.width
    }
}

/// Pairwise disjoint arcs in counterclockwise order.
///
/// The arcs are kept in the order given (which must be cyclically
/// counterclockwise); gaps between consecutive arcs are positive.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ArcSet {
    arcs: Vec<Arc>,
}

impl ArcSet {
    pub fn new(arcs: Vec<Arc>) -> Result<Self> {
        if arcs.is_empty() {
            return Err(Error::InvalidArc("empty arc set".into()));
        }
        let set = ArcSet { arcs };
        let gaps = set.gap_widths();
        if let Some((i, g)) = gaps.iter().enumerate().find(|(_, g)| !(**g > 0.0)) {
            return Err(Error::InvalidArc(format!(
                "gap {i} after arc {i} has width {g}; arcs must be disjoint and counterclockwise"
            )));
        }
        Ok(set)
    }

    /// Sorts by canonical start angle before validating.
    pub fn from_unordered(mut arcs: Vec<Arc>) -> Result<Self> {
        arcs.sort_by(|a, b| a.start.total_cmp(&b.start));
        ArcSet::new(arcs)
    }

    /// Builds a set whose disjointness has been established by the caller.
    pub(crate) fn from_trusted(arcs: Vec<Arc>) -> Self {
        ArcSet { arcs }
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    /// Start angles unwrapped so that they increase from `arcs[0].start()`.
    pub fn unwrapped_starts(&self) -> Vec<f64> {
        let first = self.arcs[0].start;
        self.arcs
            .iter()
            .map(|a| first + canonical_angle(a.start - first))
            .collect()
    }

    /// Width of the gap following each arc; the last one wraps to the first arc.
    pub fn gap_widths(&self) -> Vec<f64> {
        let starts = self.unwrapped_starts();
        let m = self.arcs.len();
        (0..m)
            .map(|i| {
                let end = starts[i] + self.arcs[i].width;
                let next = if i + 1 < m { starts[i + 1] } else { starts[0] + TAU };
                next - end
            })
            .collect()
    }

    /// Total angular measure.
    pub fn measure(&self) -> f64 {
        self.arcs.iter().map(|a| a.width).sum()
    }
}

/// Segment between two points of the unit circle, given by their angles.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Chord {
    pub a: f64,
    pub b: f64,
}

impl Chord {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if coincident(a, b) {
            return Err(Error::DegenerateChord(a, b));
        }
        Ok(Chord { a, b })
    }

    pub fn vector(&self) -> [f64; 2] {
        chord_vector(self.a, self.b)
    }

    pub fn length(&self, norm: &NormSpec) -> f64 {
        norm.eval(self.vector())
    }
}

/// `‖ℓ‖_φ = φ(p(b) - p(a))`.
pub fn chord_length(norm: &NormSpec, a: f64, b: f64) -> Result<f64> {
    Ok(Chord::new(a, b)?.length(norm))
}

/// Angle in `[0, 2π)` of the direction from `p(a)` to `p(b)`.
pub fn chord_direction(a: f64, b: f64) -> Result<f64> {
    let v = Chord::new(a, b)?.vector();
    Ok(canonical_angle(v[1].atan2(v[0])))
}

/// The four anisotropic lengths of a trapezoid and its `h` value.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TrapezoidReport {
    pub h: f64,
    pub parent_len: f64,
    pub prime_len: f64,
    pub child0_len: f64,
    pub child1_len: f64,
}

/// Trapezoid spanned by an arc of width `width` centred at `mid` whose two
/// children are the initial and final sub-arcs of width `alpha`.
pub(crate) fn trapezoid_at(norm: &NormSpec, mid: f64, width: f64, alpha: f64) -> TrapezoidReport {
    // exact by Sterbenz once alpha >= width/4, which covers every root
    let gap = width - 2.0 * alpha;
    let offset = (width - alpha) / 2.0;
    let parent_len = norm.eval(chord_vector_centered(mid, width));
    let prime_len = norm.eval(chord_vector_centered(mid, gap));
    let child0_len = norm.eval(chord_vector_centered(mid - offset, alpha));
    let child1_len = norm.eval(chord_vector_centered(mid + offset, alpha));
    TrapezoidReport {
        h: (parent_len + prime_len) - (child0_len + child1_len),
        parent_len,
        prime_len,
        child0_len,
        child1_len,
    }
}

pub(crate) fn check_child_angle(width: f64, alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha < width / 2.0) {
        return Err(Error::AngleOutOfRange {
            alpha,
            width,
            half_width: width / 2.0,
        });
    }
    Ok(())
}

/// `h_φ` of the trapezoid with the parent arc's chord, the two equal child
/// chords of angle `alpha`, and the chord `ℓ'` across the removed middle arc.
pub fn trapezoid_h(norm: &NormSpec, parent: &Arc, alpha: f64) -> Result<TrapezoidReport> {
    check_child_angle(parent.width, alpha)?;
    Ok(trapezoid_at(norm, parent.center(), parent.width, alpha))
}

/// Area between a chord and the arc of central angle `alpha`: `(α - sin α)/2`.
pub fn segment_area(alpha: f64) -> f64 {
    if alpha < 0.5 {
        // α - sin α = Σ_{k≥1} (-1)^{k+1} α^{2k+1}/(2k+1)!
        let a2 = alpha * alpha;
        let mut term = alpha * a2 / 6.0;
        let mut sum = 0.0f64;
        let mut k = 1.0;
        while term.abs() > 1e-18 * sum.abs() && term != 0.0 {
            sum += term;
            term *= -a2 / ((2.0 * k + 2.0) * (2.0 * k + 3.0));
            k += 1.0;
        }
        sum / 2.0
    } else {
        (alpha - alpha.sin()) / 2.0
    }
}

/// Closed-form isotropic `h` for a parent of width `parent_width`.
pub fn isotropic_h(parent_width: f64, alpha: f64) -> f64 {
    2.0 * (parent_width / 2.0).sin() + 2.0 * (parent_width / 2.0 - alpha).sin()
        - 4.0 * (alpha / 2.0).sin()
}

/// Unit-circle area split, useful as a sanity reference.
pub const DISK_AREA: f64 = PI;

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    fn l3() -> NormSpec {
        NormSpec::lp(3.0).unwrap()
    }

    #[test]
    fn chord_length_examples() {
        let l2 = NormSpec::l2();
        assert!((chord_length(&l2, 0.0, PI).unwrap() - 2.0).abs() < 1e-15);
        assert!((chord_length(&l2, 0.3, 0.3 + PI / 3.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((chord_length(&NormSpec::l1(), 0.0, FRAC_PI_2).unwrap() - 2.0).abs() < 1e-15);
        assert!(matches!(
            chord_length(&l2, 1.0, 1.0 + TAU),
            Err(Error::DegenerateChord(..))
        ));
        assert!(chord_length(&l2, 0.5, 0.5).is_err());
    }

    #[test]
    fn chord_length_matches_point_difference() {
        let n = l3();
        for (a, b) in [(0.1, 2.0), (-1.0, 0.4), (3.0, 5.5), (6.0, 0.2)] {
            let (pa, pb) = (circle_point(a), circle_point(b));
            let direct = n.eval([pb[0] - pa[0], pb[1] - pa[1]]);
            let len = chord_length(&n, a, b).unwrap();
            assert!((len - direct).abs() < 1e-14);
            assert!((len - chord_length(&n, b, a).unwrap()).abs() < 1e-15);
            assert!(len > 0.0);
        }
    }

    #[test]
    fn chord_direction_examples() {
        let d = chord_direction(-PI / 3.0, PI / 3.0).unwrap();
        assert!((d - FRAC_PI_2).abs() < 1e-15);
        let d = chord_direction(0.0, PI).unwrap();
        assert!((d - PI).abs() < 1e-15);
        for w in [0.01, 0.3, 1.2] {
            let arc = Arc::centered(PI / 4.0, w).unwrap();
            let d = chord_direction(arc.start(), arc.end()).unwrap();
            let r = (d - 3.0 * PI / 4.0).rem_euclid(PI);
            assert!(r < 1e-12 || PI - r < 1e-12, "{d}");
        }
        assert!(chord_direction(2.0, 2.0).is_err());
    }

    #[test]
    fn trapezoid_examples() {
        let l2 = NormSpec::l2();
        let parent = Arc::new(0.7, 1.0).unwrap();
        let r = trapezoid_h(&l2, &parent, 0.4).unwrap();
        let expected = 2.0 * 0.5f64.sin() + 2.0 * 0.1f64.sin() - 4.0 * 0.2f64.sin();
        assert!((r.h - expected).abs() < 1e-14);
        assert!((r.h - 0.363841).abs() < 1e-6);
        assert_eq!(r.h, (r.parent_len + r.prime_len) - (r.child0_len + r.child1_len));

        let near_half = trapezoid_h(&l2, &parent, 0.5 - 1e-12).unwrap().h;
        let limit = 2.0 * 0.5f64.sin() - 4.0 * 0.25f64.sin();
        assert!((near_half - limit).abs() < 1e-10);
        assert!((limit + 0.030765).abs() < 1e-6);
        assert!(near_half < 0.0);

        for n in [NormSpec::l2(), l3(), NormSpec::l1()] {
            let r = trapezoid_h(&n, &parent, 1e-9).unwrap();
            let parent_len = n.eval(parent.chord().vector());
            assert!((r.h - 2.0 * parent_len).abs() < 1e-8);
        }
    }

    #[test]
    fn trapezoid_rejects_bad_alpha() {
        let parent = Arc::new(0.0, 1.0).unwrap();
        for a in [0.0, -0.1, 0.5, 0.7] {
            assert!(matches!(
                trapezoid_h(&NormSpec::l2(), &parent, a),
                Err(Error::AngleOutOfRange { .. })
            ));
        }
    }

    #[test]
    fn segment_area_examples() {
        assert!((segment_area(PI) - FRAC_PI_2).abs() < 1e-15);
        assert_eq!(segment_area(0.0), 0.0);
        assert!((segment_area(1.0) - (1.0 - 1f64.sin()) / 2.0).abs() < 1e-16);
        assert!((segment_area(1.0) - 0.079265).abs() < 1e-6);
        // the series branch agrees with the closed form where both are accurate
        for a in [0.1f64, 0.3, 0.4999] {
            let closed = (a - a.sin()) / 2.0;
            assert!((segment_area(a) - closed).abs() < 1e-16 + 1e-12 * closed);
        }
        // small angles: α³/12 leading term
        let a = 1e-6;
        assert!((segment_area(a) / (a * a * a / 12.0) - 1.0).abs() < 1e-12);
        assert!((segment_area(TAU) - PI).abs() < 1e-15);
    }

    #[test]
    fn arc_relations() {
        let a = Arc::new(0.0, 1.0).unwrap();
        let b = Arc::new(0.2, 0.5).unwrap();
        let c = Arc::new(1.5, 0.2).unwrap();
        assert!(a.contains_arc(&b));
        assert!(!b.contains_arc(&a));
        assert!(a.is_disjoint(&c) && c.is_disjoint(&a));
        assert!(!a.is_disjoint(&b));
        let wrap = Arc::new(-0.2, 0.4).unwrap();
        assert!((wrap.start() - (TAU - 0.2)).abs() < 1e-15);
        assert!(wrap.contains_arc(&Arc::new(-0.1, 0.15).unwrap()));
        assert!(Arc::new(0.0, 0.0).is_err());
        assert!(Arc::new(0.0, TAU).is_err());
    }

    #[test]
    fn arc_set_validation() {
        let arcs = vec![Arc::new(0.0, 1.0).unwrap(), Arc::new(2.0, 1.0).unwrap()];
        let set = ArcSet::new(arcs.clone()).unwrap();
        let gaps = set.gap_widths();
        assert!((gaps[0] - 1.0).abs() < 1e-15 && (gaps[1] - (TAU - 3.0)).abs() < 1e-15);
        assert!(ArcSet::new(vec![arcs[1], arcs[0]]).is_ok()); // cyclic rotation is fine
        assert!(ArcSet::new(vec![Arc::new(0.0, 1.0).unwrap(), Arc::new(0.5, 1.0).unwrap()]).is_err());
        assert!(ArcSet::new(vec![Arc::new(0.0, 1.0).unwrap(), Arc::new(1.0, 1.0).unwrap()]).is_err());
        assert!(ArcSet::new(vec![]).is_err());
        let wrap = ArcSet::from_unordered(vec![
            Arc::new(-0.3, 0.2).unwrap(),
            Arc::new(0.1, 0.2).unwrap(),
        ])
        .unwrap();
        assert!(wrap.arcs()[0].start() < 1.0);
        assert!((wrap.measure() - 0.4).abs() < 1e-15);
    }
}
