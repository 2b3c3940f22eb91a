//! Discrete least gradient problem for a datum `χ_F`, `F` a finite union of
//! disjoint arcs: minimal non-crossing perfect matchings of the transition
//! points under an anisotropic chord-length objective.

use std::f64::consts::TAU;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{canonical_angle, chord_vector, segment_area, Arc, ArcSet};
use crate::norm::NormSpec;
use crate::sig17;

pub const DEFAULT_TIE_TOL: f64 = 1e-9;
pub const DEFAULT_TIE_CAP: usize = 64;
pub const MAX_ENUMERATION_ARCS: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Tag {
    Enter,
    Exit,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TransitionPoint {
    /// Angle unwrapped to increase from the first point.
    pub angle: f64,
    pub tag: Tag,
}

/// Tagged transition points of the arcs: an `Enter` at every arc start and
/// an `Exit` at every arc end, counterclockwise.
pub fn transition_points(arcs: &ArcSet) -> Vec<TransitionPoint> {
    arcs.unwrapped_starts()
        .into_iter()
        .zip(arcs.arcs())
        .flat_map(|(s, a)| {
            [
                TransitionPoint { angle: s, tag: Tag::Enter },
                TransitionPoint { angle: s + a.width(), tag: Tag::Exit },
            ]
        })
        .collect()
}

/// Boundary datum `χ_F`.
#[derive(Clone, Debug, PartialEq)]
pub struct TraceDatum {
    arcs: ArcSet,
    points: Vec<TransitionPoint>,
    /// Width of the boundary piece following each point: even pieces are
    /// arcs of `F`, odd pieces are gaps.
    pieces: Vec<f64>,
}

impl TraceDatum {
    pub fn new(arcs: ArcSet) -> Result<Self> {
        let points = transition_points(&arcs);
        let gaps = arcs.gap_widths();
        let pieces: Vec<f64> = arcs
            .arcs()
            .iter()
            .zip(&gaps)
            .flat_map(|(a, g)| [a.width(), *g])
            .collect();
        for (i, w) in pieces.iter().enumerate() {
            if !(*w > 0.0) {
                return Err(Error::InvalidArc(format!(
                    "transition points {i} and {} coincide",
                    (i + 1) % pieces.len()
                )));
            }
        }
        Ok(TraceDatum { arcs, points, pieces })
    }

    pub fn from_arcs(arcs: Vec<Arc>) -> Result<Self> {
        TraceDatum::new(ArcSet::from_unordered(arcs)?)
    }

    pub fn arcs(&self) -> &ArcSet {
        &self.arcs
    }

    pub fn points(&self) -> &[TransitionPoint] {
        &self.points
    }

    /// Number of arcs `m`.
    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn point_count(&self) -> usize {
        self.points.len()
    }

    pub fn piece_widths(&self) -> &[f64] {
        &self.pieces
    }

    /// Anisotropic length of the chord joining points `i` and `j`.
    pub fn chord_length(&self, norm: &NormSpec, i: usize, j: usize) -> f64 {
        norm.eval(chord_vector(self.points[i].angle, self.points[j].angle))
    }

    fn cost_matrix(&self, norm: &NormSpec) -> Vec<Vec<f64>> {
        let n = self.points.len();
        let mut c = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in (i + 1..n).step_by(2) {
                c[i][j] = self.chord_length(norm, i, j);
                c[j][i] = c[i][j];
            }
        }
        c
    }
}

/// Total anisotropic length of the chords of a matching.
pub fn objective(norm: &NormSpec, pairs: &[(usize, usize)], datum: &TraceDatum) -> f64 {
    pairs.iter().map(|&(i, j)| datum.chord_length(norm, i, j)).sum()
}

/// A validated non-crossing perfect matching with its objective value.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChordMatching {
    pub pairs: Vec<(usize, usize)>,
    #[serde(serialize_with = "sig17::serialize")]
    pub objective: f64,
}

impl ChordMatching {
    pub fn new(pairs: Vec<(usize, usize)>, datum: &TraceDatum, norm: &NormSpec) -> Result<Self> {
        let pairs: Vec<(usize, usize)> = pairs.into_iter().map(|(i, j)| (i.min(j), i.max(j))).collect();
        validate_pairs(&pairs, datum.point_count())?;
        let objective = objective(norm, &pairs, datum);
        Ok(ChordMatching { pairs, objective })
    }

    /// Pairs sorted by first index, for comparisons.
    pub fn canonical_pairs(&self) -> Vec<(usize, usize)> {
        let mut p = self.pairs.clone();
        p.sort_unstable();
        p
    }

    pub fn same_pairs(&self, other: &ChordMatching) -> bool {
        self.canonical_pairs() == other.canonical_pairs()
    }

    pub fn partner_table(&self, n: usize) -> Vec<usize> {
        let mut partner = vec![usize::MAX; n];
        for &(i, j) in &self.pairs {
            partner[i] = j;
            partner[j] = i;
        }
        partner
    }
}

fn validate_pairs(pairs: &[(usize, usize)], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    for &(i, j) in pairs {
        if j >= n {
            return Err(Error::InvalidMatching(format!("index {j} out of range for {n} points")));
        }
        if i == j {
            return Err(Error::InvalidMatching(format!("point {i} paired with itself")));
        }
        if (j - i) % 2 == 0 {
            return Err(Error::InvalidMatching(format!(
                "pair ({i}, {j}) encloses an odd number of points"
            )));
        }
        for k in [i, j] {
            if std::mem::replace(&mut seen[k], true) {
                return Err(Error::InvalidMatching(format!("point {k} used twice")));
            }
        }
    }
    if let Some(k) = seen.iter().position(|s| !s) {
        return Err(Error::InvalidMatching(format!("point {k} is unmatched")));
    }
    for (a, &(i, j)) in pairs.iter().enumerate() {
        for &(k, l) in &pairs[a + 1..] {
            let nested_or_disjoint =
                (i < k && l < j) || (k < i && j < l) || j < k || l < i;
            if !nested_or_disjoint {
                return Err(Error::InvalidMatching(format!(
                    "chords ({i}, {j}) and ({k}, {l}) cross"
                )));
            }
        }
    }
    Ok(())
}

/// All non-crossing perfect matchings of `2m` points on a circle.
pub fn enumerate_noncrossing(m: usize) -> Result<Vec<Vec<(usize, usize)>>> {
    if m > MAX_ENUMERATION_ARCS {
        return Err(Error::Precondition(format!(
            "enumeration limited to m ≤ {MAX_ENUMERATION_ARCS}, got {m}"
        )));
    }
    Ok(enumerate_range(0, 2 * m))
}

fn enumerate_range(lo: usize, hi: usize) -> Vec<Vec<(usize, usize)>> {
    if lo >= hi {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for k in (lo + 1..hi).step_by(2) {
        let inner = enumerate_range(lo + 1, k);
        let outer = enumerate_range(k + 1, hi);
        for a in &inner {
            for b in &outer {
                let mut pairs = Vec::with_capacity(1 + a.len() + b.len());
                pairs.push((lo, k));
                pairs.extend_from_slice(a);
                pairs.extend_from_slice(b);
                out.push(pairs);
            }
        }
    }
    out
}

pub fn catalan(m: usize) -> u64 {
    (0..m as u64).fold(1, |c, k| c * 2 * (2 * k + 1) / (k + 2))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SolveReport {
    #[serde(serialize_with = "sig17::serialize")]
    pub optimal_value: f64,
    pub optimal: ChordMatching,
    /// Matchings within the tie tolerance of the optimum, sorted by value,
    /// optimum first; truncated at the tie cap.
    pub ties: Vec<ChordMatching>,
    /// Number of matchings reachable by choices each within the tie
    /// tolerance of the local optimum; exact counts are not bounded by the cap.
    #[serde(serialize_with = "sig17::serialize")]
    pub tie_count: f64,
    /// Second-best value minus best; infinite when only one matching exists.
    #[serde(serialize_with = "sig17::serialize")]
    pub uniqueness_gap: f64,
}

impl SolveReport {
    pub fn is_unique(&self, tie_tol: f64) -> bool {
        self.uniqueness_gap > tie_tol
    }
}

/// Interval dynamic program over ranges of transition points.
///
/// `best[i][j]` is the cheapest matching of points `i..=j`; the point `i` is
/// matched to some `k` and the ranges `i+1..k` and `k+1..=j` are solved
/// independently. The second-best value per range is carried along to
/// report the uniqueness gap.
pub fn solve_dp(norm: &NormSpec, datum: &TraceDatum, tie_tol: f64) -> Result<SolveReport> {
    solve_dp_capped(norm, datum, tie_tol, DEFAULT_TIE_CAP)
}

pub fn solve_dp_capped(
    norm: &NormSpec,
    datum: &TraceDatum,
    tie_tol: f64,
    tie_cap: usize,
) -> Result<SolveReport> {
    if !(tie_tol >= 0.0) {
        return Err(Error::Precondition(format!("tie_tol = {tie_tol} must be nonnegative")));
    }
    let table = DpTable::build(norm, datum, tie_tol);
    let n = datum.point_count();
    let optimal_pairs = table.reconstruct(0, n);
    let optimal = ChordMatching::new(optimal_pairs, datum, norm)?;
    let optimal_value = table.best(0, n);
    let mut ties: Vec<ChordMatching> = table
        .near_optimal(tie_tol, tie_cap.max(1))
        .into_iter()
        .map(|p| ChordMatching::new(p, datum, norm))
        .collect::<Result<_>>()?;
    ties.sort_by(|a, b| a.objective.total_cmp(&b.objective));
    if let Some(pos) = ties.iter().position(|t| t.same_pairs(&optimal)) {
        let opt = ties.remove(pos);
        ties.insert(0, opt);
    }
    Ok(SolveReport {
        optimal_value,
        optimal,
        ties,
        tie_count: table.count(0, n),
        uniqueness_gap: table.second(0, n) - optimal_value,
    })
}

struct DpTable {
    n: usize,
    cost: Vec<Vec<f64>>,
    /// Indexed by `[lo][hi]` for the half-open range `lo..hi`.
    top: Vec<Vec<[f64; 2]>>,
    count: Vec<Vec<f64>>,
}

impl DpTable {
    fn build(norm: &NormSpec, datum: &TraceDatum, tie_tol: f64) -> DpTable {
        let n = datum.point_count();
        let cost = datum.cost_matrix(norm);
        let mut top = vec![vec![[f64::INFINITY; 2]; n + 1]; n + 1];
        let mut count = vec![vec![0.0; n + 1]; n + 1];
        for lo in 0..=n {
            top[lo][lo] = [0.0, f64::INFINITY];
            count[lo][lo] = 1.0;
        }
        for len in (2..=n).step_by(2) {
            for lo in 0..=n - len {
                let hi = lo + len;
                let mut best = [f64::INFINITY; 2];
                let mut push = |v: f64| {
                    if v < best[0] {
                        best[1] = best[0];
                        best[0] = v;
                    } else if v < best[1] {
                        best[1] = v;
                    }
                };
                for k in (lo + 1..hi).step_by(2) {
                    let a = top[lo + 1][k];
                    let b = top[k + 1][hi];
                    let c = cost[lo][k];
                    push(c + a[0] + b[0]);
                    push(c + a[1] + b[0]);
                    push(c + a[0] + b[1]);
                }
                top[lo][hi] = best;
                let mut total = 0.0;
                for k in (lo + 1..hi).step_by(2) {
                    let v = cost[lo][k] + top[lo + 1][k][0] + top[k + 1][hi][0];
                    if v <= best[0] + tie_tol {
                        total += count[lo + 1][k] * count[k + 1][hi];
                    }
                }
                count[lo][hi] = total;
            }
        }
        DpTable { n, cost, top, count }
    }

    fn best(&self, lo: usize, hi: usize) -> f64 {
        self.top[lo][hi][0]
    }

    fn second(&self, lo: usize, hi: usize) -> f64 {
        self.top[lo][hi][1]
    }

    fn count(&self, lo: usize, hi: usize) -> f64 {
        self.count[lo][hi]
    }

    fn split_value(&self, lo: usize, k: usize, hi: usize) -> f64 {
        self.cost[lo][k] + self.best(lo + 1, k) + self.best(k + 1, hi)
    }

    fn reconstruct(&self, lo: usize, hi: usize) -> Vec<(usize, usize)> {
        let mut pairs = Vec::with_capacity((hi - lo) / 2);
        let mut stack = vec![(lo, hi)];
        while let Some((lo, hi)) = stack.pop() {
            if lo >= hi {
                continue;
            }
            let k = (lo + 1..hi)
                .step_by(2)
                .min_by(|&a, &b| self.split_value(lo, a, hi).total_cmp(&self.split_value(lo, b, hi)))
                .expect("nonempty range");
            pairs.push((lo, k));
            stack.push((lo + 1, k));
            stack.push((k + 1, hi));
        }
        pairs
    }

    /// Depth-first enumeration of all matchings of the full range whose value
    /// is within `tol` of the optimum, pruned with the per-range minima.
    fn near_optimal(&self, tol: f64, cap: usize) -> Vec<Vec<(usize, usize)>> {
        let limit = self.best(0, self.n) + tol;
        let mut out = Vec::new();
        let mut pairs = Vec::new();
        self.dfs(&mut vec![(0, self.n)], 0.0, limit, cap, &mut pairs, &mut out);
        out
    }

    fn dfs(
        &self,
        pending: &mut Vec<(usize, usize)>,
        acc: f64,
        limit: f64,
        cap: usize,
        pairs: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if out.len() >= cap {
            return;
        }
        let Some((lo, hi)) = pending.pop() else {
            out.push(pairs.clone());
            return;
        };
        if lo >= hi {
            self.dfs(pending, acc, limit, cap, pairs, out);
            pending.push((lo, hi));
            return;
        }
        let rest: f64 = pending.iter().map(|&(a, b)| self.best(a, b)).sum();
        for k in (lo + 1..hi).step_by(2) {
            if acc + self.split_value(lo, k, hi) + rest > limit {
                continue;
            }
            pairs.push((lo, k));
            pending.push((k + 1, hi));
            pending.push((lo + 1, k));
            self.dfs(pending, acc + self.cost[lo][k], limit, cap, pairs, out);
            pending.pop();
            pending.pop();
            pairs.pop();
            if out.len() >= cap {
                break;
            }
        }
        pending.push((lo, hi));
    }
}

/// Minimum over the brute-force enumeration, for cross-checking.
pub fn brute_force(norm: &NormSpec, datum: &TraceDatum) -> Result<(f64, Vec<ChordMatching>)> {
    let mut all: Vec<ChordMatching> = enumerate_noncrossing(datum.arc_count())?
        .into_iter()
        .map(|p| ChordMatching::new(p, datum, norm))
        .collect::<Result<_>>()?;
    all.sort_by(|a, b| a.objective.total_cmp(&b.objective));
    Ok((all[0].objective, all))
}

/// One face of the disk cut along the chords of a matching.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Face {
    /// Boundary pieces on the circle, in traversal order (piece `i` runs
    /// from point `i` to point `i+1`).
    pub pieces: Vec<usize>,
    /// Vertex angles, counterclockwise.
    pub vertices: Vec<f64>,
    pub inside: bool,
    #[serde(serialize_with = "sig17::serialize")]
    pub area: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RegionLabels {
    pub faces: Vec<Face>,
    #[serde(serialize_with = "sig17::serialize")]
    pub area_in: f64,
    #[serde(serialize_with = "sig17::serialize")]
    pub area_out: f64,
}

impl RegionLabels {
    /// Index of the face owning boundary piece `piece`.
    pub fn face_of_piece(&self, piece: usize) -> Option<usize> {
        self.faces.iter().position(|f| f.pieces.contains(&piece))
    }
}

/// Faces of the chord diagram, labelled in `E` when they border arcs of `F`
/// and out when they border gaps.
pub fn region_labels(matching: &ChordMatching, datum: &TraceDatum) -> Result<RegionLabels> {
    let n = datum.point_count();
    validate_pairs(&matching.pairs, n)?;
    let partner = matching.partner_table(n);
    let angles: Vec<f64> = datum.points.iter().map(|p| p.angle).collect();
    let mut visited = vec![false; n];
    let mut faces = Vec::new();
    for first in 0..n {
        if visited[first] {
            continue;
        }
        let mut pieces = Vec::new();
        let mut vertices = Vec::new();
        let mut steps = Vec::new();
        let mut piece = first;
        loop {
            visited[piece] = true;
            pieces.push(piece);
            let end = (piece + 1) % n;
            vertices.push(angles[piece]);
            steps.push(datum.pieces[piece]);
            let next = partner[end];
            // the jump along the chord from `end` to `next`, as ccw angle
            steps.push(canonical_angle(angles[next] - angles[end]));
            vertices.push(angles[end]);
            piece = next;
            if piece == first {
                break;
            }
        }
        let parity = pieces[0] % 2;
        if pieces.iter().any(|p| p % 2 != parity) {
            return Err(Error::LabelConflict { face: faces.len() });
        }
        let polygon: f64 = 0.5 * steps.iter().map(|d| d.sin()).sum::<f64>();
        let caps: f64 = pieces.iter().map(|&p| segment_area(datum.pieces[p])).sum();
        vertices.dedup();
        faces.push(Face {
            pieces,
            vertices,
            inside: parity == 0,
            area: polygon + caps,
        });
    }
    let area_in = faces.iter().filter(|f| f.inside).map(|f| f.area).sum();
    let area_out = faces.iter().filter(|f| !f.inside).map(|f| f.area).sum();
    Ok(RegionLabels { faces, area_in, area_out })
}

/// Whether the in-region of `inner` (over a datum whose arcs refine those of
/// `outer_datum`) lies inside the in-region of `outer`: every in-face of
/// `inner` must border only arcs that sit inside arcs of one in-face of
/// `outer`.
pub fn in_region_contained(
    inner: &RegionLabels,
    inner_datum: &TraceDatum,
    outer: &RegionLabels,
    outer_datum: &TraceDatum,
) -> bool {
    let outer_arcs = outer_datum.arcs.arcs();
    let owner = |arc: &Arc| -> Option<usize> {
        let k = outer_arcs.iter().position(|o| o.contains_arc(arc))?;
        outer.face_of_piece(2 * k)
    };
    inner.faces.iter().filter(|f| f.inside).all(|f| {
        let owners: Vec<Option<usize>> = f
            .pieces
            .iter()
            .map(|p| owner(&inner_datum.arcs.arcs()[p / 2]))
            .collect();
        owners[0].is_some()
            && owners.iter().all(|o| *o == owners[0])
            && outer.faces[owners[0].unwrap()].inside
    })
}

/// Fixed linear congruential generator for reproducible test instances.
#[derive(Clone, Debug)]
pub struct Lcg {
    state: u64,
}

impl Lcg {
    pub const MULTIPLIER: u64 = 6364136223846793005;
    pub const INCREMENT: u64 = 1442695040888963407;

    pub fn new(seed: u64) -> Self {
        Lcg { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self
            .state
            .wrapping_mul(Self::MULTIPLIER)
            .wrapping_add(Self::INCREMENT);
        self.state
    }

    /// Uniform in `[0, 1)` from the top 53 bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }
}

/// Random datum with `m` arcs whose transition points are at least
/// `min_spacing` apart.
pub fn random_datum(rng: &mut Lcg, m: usize, min_spacing: f64) -> Result<TraceDatum> {
    if m == 0 || 2.0 * m as f64 * min_spacing >= TAU {
        return Err(Error::Precondition(format!(
            "cannot place {m} arcs with spacing {min_spacing}"
        )));
    }
    loop {
        let mut pts: Vec<f64> = (0..2 * m).map(|_| TAU * rng.next_f64()).collect();
        pts.sort_by(f64::total_cmp);
        let spaced = pts.windows(2).all(|w| w[1] - w[0] >= min_spacing)
            && pts[0] + TAU - pts[2 * m - 1] >= min_spacing;
        if !spaced {
            continue;
        }
        let arcs = (0..m)
            .map(|k| Arc::new(pts[2 * k], pts[2 * k + 1] - pts[2 * k]))
            .collect::<Result<Vec<_>>>()?;
        return TraceDatum::new(ArcSet::new(arcs)?);
    }
}

/// The `count` instances used for oracle comparisons: seed 1, `m` cycling
/// through `1..=max_m`.
pub fn oracle_instances(count: usize, max_m: usize) -> Vec<TraceDatum> {
    let mut rng = Lcg::new(1);
    (0..count)
        .map(|i| random_datum(&mut rng, 1 + i % max_m, 1e-3).expect("feasible spacing"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::DISK_AREA;
    use proptest::prelude::*;

    fn two_arcs() -> TraceDatum {
        TraceDatum::new(
            ArcSet::new(vec![Arc::new(0.2, 0.4).unwrap(), Arc::new(1.0, 0.4).unwrap()]).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn points_alternate() {
        let d = two_arcs();
        let tags: Vec<Tag> = d.points().iter().map(|p| p.tag).collect();
        assert_eq!(tags, [Tag::Enter, Tag::Exit, Tag::Enter, Tag::Exit]);
        assert!(d.points().windows(2).all(|w| w[1].angle > w[0].angle));
        let single = TraceDatum::new(ArcSet::new(vec![Arc::new(6.0, 1.0).unwrap()]).unwrap()).unwrap();
        assert_eq!(single.point_count(), 2);
        assert!((single.points()[1].angle - 7.0).abs() < 1e-15);
    }

    #[test]
    fn catalan_counts() {
        for (m, c) in [(0, 1), (1, 1), (2, 2), (3, 5), (4, 14), (5, 42), (8, 1430)] {
            assert_eq!(catalan(m), c);
            assert_eq!(enumerate_noncrossing(m).unwrap().len() as u64, c);
        }
        assert!(enumerate_noncrossing(9).is_err());
        for p in enumerate_noncrossing(5).unwrap() {
            validate_pairs(&p, 10).unwrap();
        }
    }

    #[test]
    fn matching_validation() {
        let d = two_arcs();
        let l2 = NormSpec::l2();
        assert!(ChordMatching::new(vec![(0, 1), (2, 3)], &d, &l2).is_ok());
        assert!(ChordMatching::new(vec![(3, 0), (1, 2)], &d, &l2).is_ok());
        assert!(ChordMatching::new(vec![(0, 2), (1, 3)], &d, &l2).is_err());
        assert!(ChordMatching::new(vec![(0, 1)], &d, &l2).is_err());
        assert!(ChordMatching::new(vec![(0, 1), (0, 3)], &d, &l2).is_err());
        assert!(ChordMatching::new(vec![(0, 1), (2, 5)], &d, &l2).is_err());
    }

    #[test]
    fn single_arc() {
        let d = TraceDatum::new(ArcSet::new(vec![Arc::new(1.0, 0.7).unwrap()]).unwrap()).unwrap();
        let l3 = NormSpec::lp(3.0).unwrap();
        let r = solve_dp(&l3, &d, DEFAULT_TIE_TOL).unwrap();
        let direct = l3.eval(chord_vector(1.0, 1.7));
        assert_eq!(r.optimal_value, direct);
        assert_eq!(r.optimal.pairs, vec![(0, 1)]);
        assert_eq!(r.uniqueness_gap, f64::INFINITY);
        assert_eq!(r.tie_count, 1.0);
        let labels = region_labels(&r.optimal, &d).unwrap();
        assert_eq!(labels.faces.len(), 2);
        assert!((labels.area_in - segment_area(0.7)).abs() < 1e-15);
        assert!((labels.area_in + labels.area_out - DISK_AREA).abs() < 1e-12);
    }

    #[test]
    fn band_labels() {
        let d = two_arcs();
        let l2 = NormSpec::l2();
        let band = ChordMatching::new(vec![(0, 3), (1, 2)], &d, &l2).unwrap();
        let labels = region_labels(&band, &d).unwrap();
        assert_eq!(labels.faces.len(), 3);
        let inside: Vec<&Face> = labels.faces.iter().filter(|f| f.inside).collect();
        assert_eq!(inside.len(), 1);
        assert_eq!(inside[0].pieces.len(), 2);
        let expected = segment_area(1.2) - segment_area(0.4);
        assert!((labels.area_in - expected).abs() < 1e-14, "{} vs {expected}", labels.area_in);
        let caps = ChordMatching::new(vec![(0, 1), (2, 3)], &d, &l2).unwrap();
        let labels = region_labels(&caps, &d).unwrap();
        assert!((labels.area_in - 2.0 * segment_area(0.4)).abs() < 1e-14);
    }

    #[test]
    fn oracle_on_instances() {
        let norms = [NormSpec::l2(), NormSpec::lp(3.0).unwrap(), "lp:1.5 + 0.3*lp:4".parse().unwrap()];
        for (i, d) in oracle_instances(30, 6).iter().enumerate() {
            let norm = &norms[i % norms.len()];
            let r = solve_dp(norm, d, DEFAULT_TIE_TOL).unwrap();
            let (min, all) = brute_force(norm, d).unwrap();
            assert!((r.optimal_value - min).abs() <= 1e-12);
            if all.len() > 1 {
                assert!((r.uniqueness_gap - (all[1].objective - all[0].objective)).abs() <= 1e-12);
                if r.uniqueness_gap > 1e-9 {
                    assert!(r.optimal.same_pairs(&all[0]));
                }
            }
        }
    }

    #[test]
    fn ties_and_counts() {
        // four equally spaced points: both matchings have the same length
        let d = TraceDatum::new(
            ArcSet::new(vec![Arc::new(0.0, 1.0).unwrap(), Arc::new(2.0, 1.0).unwrap()]).unwrap(),
        )
        .unwrap();
        let l2 = NormSpec::l2();
        let r = solve_dp(&l2, &d, 1e-9).unwrap();
        // gap pieces differ: widths 1, 1, 1, 2π-3, so no tie
        assert!(r.uniqueness_gap > 1e-3);
        let arcs = (0..4).map(|k| Arc::new(k as f64 * TAU / 8.0 * 2.0, TAU / 8.0).unwrap()).collect();
        let d = TraceDatum::new(ArcSet::new(arcs).unwrap()).unwrap();
        let r = solve_dp(&l2, &d, 1e-9).unwrap();
        assert_eq!(r.tie_count, 2.0);
        assert_eq!(r.ties.len(), 2);
        assert!(r.uniqueness_gap.abs() < 1e-12);
        let capped = solve_dp_capped(&l2, &d, 1e-9, 1).unwrap();
        assert_eq!(capped.ties.len(), 1);
        assert_eq!(capped.tie_count, 2.0);
    }

    #[test]
    fn lcg_reference_values() {
        let mut rng = Lcg::new(1);
        let first = rng.next_u64();
        assert_eq!(first, 6364136223846793005u64.wrapping_add(1442695040888963407));
        let x = rng.next_f64();
        assert!((0.0..1.0).contains(&x));
        let a = oracle_instances(5, 6);
        let b = oracle_instances(5, 6);
        assert_eq!(a, b);
        assert_eq!(a.iter().map(|d| d.arc_count()).collect::<Vec<_>>(), [1, 2, 3, 4, 5]);
    }

    proptest! {
        #[test]
        fn every_matching_labels_consistently(seed in 0u64..500, m in 1usize..=5) {
            let mut rng = Lcg::new(seed);
            let d = random_datum(&mut rng, m, 1e-3).unwrap();
            let l2 = NormSpec::l2();
            for pairs in enumerate_noncrossing(m).unwrap() {
                let mt = ChordMatching::new(pairs, &d, &l2).unwrap();
                let labels = region_labels(&mt, &d).unwrap();
                prop_assert_eq!(labels.faces.len(), m + 1);
                prop_assert!((labels.area_in + labels.area_out - DISK_AREA).abs() < 1e-9);
                prop_assert!(labels.faces.iter().all(|f| f.area > 0.0));
            }
        }

        #[test]
        fn objective_is_additive(seed in 0u64..500, m in 1usize..=4, c in 0.1f64..5.0) {
            let mut rng = Lcg::new(seed);
            let d = random_datum(&mut rng, m, 1e-3).unwrap();
            let l2 = NormSpec::l2();
            let l3 = NormSpec::lp(3.0).unwrap();
            let combo = NormSpec::combination(vec![(c, l2.clone()), (1.0, l3.clone())]).unwrap();
            for pairs in enumerate_noncrossing(m).unwrap() {
                let lhs = objective(&combo, &pairs, &d);
                let rhs = c * objective(&l2, &pairs, &d) + objective(&l3, &pairs, &d);
                prop_assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + rhs));
            }
        }
    }
}
