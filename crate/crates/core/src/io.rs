//! File emission: pretty JSON, fixed-column CSV and static SVG figures.
//!
//! CSV columns, in order:
//!
//! | file            | columns                                                        |
//! |-----------------|----------------------------------------------------------------|
//! | nodes           | path, level, arc_start, arc_width, child_alpha, h_self          |
//! | solve summary   | level, m, optimal_value, uniqueness_gap, n_ties, area_in        |
//! | h values        | path, h                                                         |
//! | square          | p, value_e1, value_e2, winner, solution_exists                  |
//! | g scan          | alpha, g, g_prime                                               |
//! | areas           | level, measure, area_en, area_eprime                            |
//! | perturbation    | path, h_phi1, h_phi2, h_l1, l1_prime_len                        |
//!
//! Floats are written with 17 significant digits; absent values are empty.

use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;

use crate::construction::{Construction, NodeH};
use crate::error::Result;
use crate::experiments::{AreaRow, GRow, LevelSolve, PerturbationNode, SquareRow};
use crate::geometry::{circle_point, ArcSet, Chord};
use crate::sig17::fmt;
use crate::solver::{RegionLabels, TraceDatum};

pub fn to_json_pretty<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn write_json<T: Serialize + ?Sized>(path: &Path, value: &T) -> Result<()> {
    std::fs::write(path, to_json_pretty(value)?)?;
    Ok(())
}

fn opt(x: Option<f64>) -> String {
    x.map(fmt).unwrap_or_default()
}

/// Writes `header` and `rows` as CSV into any writer.
pub fn write_csv<W: std::io::Write>(
    out: W,
    header: &[&str],
    rows: impl IntoIterator<Item = Vec<String>>,
) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn csv_string(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String> {
    let mut buf = Vec::new();
    write_csv(&mut buf, header, rows)?;
    Ok(String::from_utf8(buf).expect("csv output is UTF-8"))
}

pub const NODE_COLUMNS: [&str; 6] = ["path", "level", "arc_start", "arc_width", "child_alpha", "h_self"];
pub const SOLVE_COLUMNS: [&str; 6] = ["level", "m", "optimal_value", "uniqueness_gap", "n_ties", "area_in"];
pub const H_COLUMNS: [&str; 2] = ["path", "h"];
pub const SQUARE_COLUMNS: [&str; 5] = ["p", "value_e1", "value_e2", "winner", "solution_exists"];
pub const G_COLUMNS: [&str; 3] = ["alpha", "g", "g_prime"];
pub const AREA_COLUMNS: [&str; 4] = ["level", "measure", "area_en", "area_eprime"];
pub const PERTURBATION_COLUMNS: [&str; 5] = ["path", "h_phi1", "h_phi2", "h_l1", "l1_prime_len"];

pub fn nodes_csv(c: &Construction) -> Result<String> {
    csv_string(
        &NODE_COLUMNS,
        (0..c.node_count()).map(|i| {
            let n = c.node(i);
            let (start, width) = c.raw_arc(i);
            vec![
                n.path,
                n.level.to_string(),
                fmt(start),
                fmt(width),
                opt(n.child_alpha),
                opt(n.h_self),
            ]
        }),
    )
}

pub fn solve_csv(levels: &[LevelSolve]) -> Result<String> {
    csv_string(
        &SOLVE_COLUMNS,
        levels.iter().map(|l| {
            vec![
                l.level.to_string(),
                l.m.to_string(),
                fmt(l.optimal_value),
                fmt(l.uniqueness_gap),
                fmt(l.n_ties),
                fmt(l.area_in),
            ]
        }),
    )
}

pub fn h_csv(values: &[NodeH]) -> Result<String> {
    csv_string(&H_COLUMNS, values.iter().map(|v| vec![v.path.clone(), fmt(v.h)]))
}

pub fn square_csv(rows: &[SquareRow]) -> Result<String> {
    csv_string(
        &SQUARE_COLUMNS,
        rows.iter().map(|r| {
            vec![
                fmt(r.p),
                fmt(r.value_e1),
                fmt(r.value_e2),
                r.winner.clone(),
                r.solution_exists.to_string(),
            ]
        }),
    )
}

pub fn g_csv(rows: &[GRow]) -> Result<String> {
    csv_string(
        &G_COLUMNS,
        rows.iter().map(|r| vec![fmt(r.alpha), fmt(r.g), fmt(r.g_prime)]),
    )
}

pub fn areas_csv(rows: &[AreaRow]) -> Result<String> {
    csv_string(
        &AREA_COLUMNS,
        rows.iter().map(|r| {
            vec![r.level.to_string(), fmt(r.measure), fmt(r.area_en), fmt(r.area_eprime)]
        }),
    )
}

pub fn perturbation_csv(nodes: &[PerturbationNode]) -> Result<String> {
    csv_string(
        &PERTURBATION_COLUMNS,
        nodes.iter().map(|n| {
            vec![n.path.clone(), fmt(n.h_phi1), fmt(n.h_phi2), fmt(n.h_l1), fmt(n.l1_prime_len)]
        }),
    )
}

/// What to draw in an SVG figure.
#[derive(Default)]
pub struct Figure<'a> {
    pub arcs: Option<&'a ArcSet>,
    pub chords: Vec<Chord>,
    pub dashed_chords: Vec<Chord>,
    /// Shaded in-faces of a labelled matching; consecutive boundary pieces
    /// of a face are joined by straight chords.
    pub regions: Option<(&'a TraceDatum, &'a RegionLabels)>,
}

fn pt(theta: f64) -> String {
    let [x, y] = circle_point(theta);
    format!("{x:.9} {y:.9}")
}

/// SVG over the square `[-1.1, 1.1]²` with the y axis pointing up.
pub fn svg(fig: &Figure) -> String {
    let mut s = String::new();
    s.push_str(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-1.1 -1.1 2.2 2.2\" width=\"600\" height=\"600\">\n",
    );
    s.push_str("<g transform=\"scale(1,-1)\" fill=\"none\" stroke-linecap=\"round\">\n");
    if let Some((datum, labels)) = fig.regions {
        let points = datum.points();
        for face in labels.faces.iter().filter(|f| f.inside) {
            let mut d = String::new();
            for (k, &p) in face.pieces.iter().enumerate() {
                let a = points[p].angle;
                let w = datum.piece_widths()[p];
                let cmd = if k == 0 { 'M' } else { 'L' };
                let large = u8::from(w > std::f64::consts::PI);
                let _ = write!(d, "{cmd} {} A 1 1 0 {large} 1 {} ", pt(a), pt(a + w));
            }
            d.push('Z');
            let _ = writeln!(s, "<path d=\"{d}\" fill=\"#9ecae1\" fill-opacity=\"0.6\" stroke=\"none\"/>");
        }
    }
    s.push_str("<circle cx=\"0\" cy=\"0\" r=\"1\" stroke=\"#888\" stroke-width=\"0.004\"/>\n");
    if let Some(arcs) = fig.arcs {
        for a in arcs.arcs() {
            let large = u8::from(a.width() > std::f64::consts::PI);
            let _ = writeln!(
                s,
                "<path d=\"M {} A 1 1 0 {large} 1 {}\" stroke=\"#d62728\" stroke-width=\"0.012\"/>",
                pt(a.start()),
                pt(a.start() + a.width())
            );
        }
    }
    for (chords, extra) in [(&fig.chords, ""), (&fig.dashed_chords, " stroke-dasharray=\"0.02 0.015\"")] {
        for c in chords {
            let _ = writeln!(
                s,
                "<path d=\"M {} L {}\" stroke=\"#1f3b73\" stroke-width=\"0.004\"{extra}/>",
                pt(c.a),
                pt(c.b)
            );
        }
    }
    s.push_str("</g>\n</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::{ConstructionConfig, Mode};
    use crate::norm::NormSpec;
    use crate::solver::{region_labels, solve_dp};

    #[test]
    fn csv_columns_fixed() {
        let c = Construction::build(ConstructionConfig::new(
            NormSpec::l2(),
            0.1,
            1.0,
            2,
            Mode::Equality,
        ))
        .unwrap();
        let text = nodes_csv(&c).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "path,level,arc_start,arc_width,child_alpha,h_self");
        let root = lines.next().unwrap();
        assert!(root.starts_with(",0,"));
        assert_eq!(text.lines().count(), 8);
        assert!(text.lines().last().unwrap().ends_with(",,"));
    }

    #[test]
    fn svg_has_expected_elements() {
        let c = Construction::build(ConstructionConfig::new(
            NormSpec::l2(),
            0.6,
            1.0,
            2,
            Mode::FixedRatio(0.7),
        ))
        .unwrap();
        let arcs = c.level_arcs(2).unwrap();
        let datum = c.level_datum(2).unwrap();
        let r = solve_dp(&NormSpec::l2(), &datum, 1e-9).unwrap();
        let labels = region_labels(&r.optimal, &datum).unwrap();
        let fig = Figure {
            arcs: Some(&arcs),
            chords: c.en_chords(2).unwrap(),
            dashed_chords: c.eprime_chords(2).unwrap(),
            regions: Some((&datum, &labels)),
        };
        let s = svg(&fig);
        assert!(s.contains("viewBox=\"-1.1 -1.1 2.2 2.2\""));
        assert!(s.contains("<circle"));
        assert_eq!(s.matches("stroke=\"#d62728\"").count(), 4);
        assert_eq!(s.matches("stroke-dasharray").count(), 4);
        assert!(s.contains("fill=\"#9ecae1\""));
    }
}
