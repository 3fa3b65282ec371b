//! Deterministic SVG drawings of nets in an affine chart of `PG(2, p)`.
//!
//! Coordinates are residues `0..p`, so drawn "lines" are only the segments
//! between the extreme net points they contain; curve witnesses are drawn as
//! their rational point sets.

use std::collections::BTreeSet;
use std::fmt::Write;

use clap::ValueEnum;
use trinet::geometry::{all_points, incident, join};
use trinet::{DualThreeNet, FamilyTag, PrimeField, ProjLine, ProjPoint};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Chart {
    /// Points with `Z ≠ 0`, drawn at `(X/Z, Y/Z)`.
    Z,
    /// Points with `Y ≠ 0`, drawn at `(X/Y, Z/Y)`.
    Y,
    /// Points with `X ≠ 0`, drawn at `(Y/X, Z/X)`.
    X,
}

const COLORS: [&str; 3] = ["#d62728", "#1f77b4", "#2ca02c"];

fn affine(f: &PrimeField, chart: Chart, pt: &ProjPoint) -> Option<(u32, u32)> {
    let [x, y, z] = pt.coords();
    let (u, v, w) = match chart {
        Chart::Z => (x, y, z),
        Chart::Y => (x, z, y),
        Chart::X => (y, z, x),
    };
    (w != 0).then(|| (f.div(u, w), f.div(v, w)))
}

fn conic_value(f: &PrimeField, c: &[u32; 6], pt: &ProjPoint) -> u32 {
    let [x, y, z] = pt.coords();
    let terms = [f.mul(x, x), f.mul(x, y), f.mul(x, z), f.mul(y, y), f.mul(y, z), f.mul(z, z)];
    terms.iter().zip(c).fold(0, |acc, (t, k)| f.add(acc, f.mul(*t, *k)))
}

/// Every point of the plane lying on one of the classifier's witnesses.
fn witness_points(f: &PrimeField, tag: &FamilyTag) -> Vec<ProjPoint> {
    let on_lines = |lines: &[ProjLine]| -> Vec<ProjPoint> {
        all_points(f).filter(|p| lines.iter().any(|l| incident(f, p, l))).collect()
    };
    match tag {
        FamilyTag::Triangular { triangle } => on_lines(triangle),
        FamilyTag::PencilType { lines, .. } => on_lines(lines),
        FamilyTag::ConicLine { conic, line } => all_points(f)
            .filter(|p| incident(f, p, line) || conic_value(f, conic, p) == 0)
            .collect(),
        FamilyTag::ProperAlgebraic { cubic, .. } | FamilyTag::AlgebraicDegenerateOther { cubic } => {
            all_points(f).filter(|p| cubic.contains(f, p)).collect()
        }
        FamilyTag::TetrahedronType { quadrangle } => {
            let mut sides = Vec::new();
            for i in 0..4 {
                for j in i + 1..4 {
                    sides.extend(join(f, &quadrangle[i], &quadrangle[j]).ok());
                }
            }
            on_lines(&sides)
        }
        FamilyTag::Unclassified => Vec::new(),
    }
}

/// Renders `net` in `chart` with `scale` pixels per grid unit. Witnesses of
/// `tag`, when given, are drawn as hollow gray squares under the net.
pub fn export_svg(net: &DualThreeNet, chart: Chart, scale: u32, tag: Option<&FamilyTag>) -> String {
    let f = net.field();
    let p = f.p();
    let size = (p + 1) * scale;
    let at = |(u, v): (u32, u32)| ((u + 1) * scale, (p - v) * scale);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#
    );
    let _ = writeln!(
        out,
        r##"<rect x="{h}" y="{h}" width="{w}" height="{w}" fill="white" stroke="#cccccc"/>"##,
        h = scale / 2,
        w = p * scale,
    );

    if let Some(tag) = tag {
        let _ = writeln!(out, "<g class=\"witness\" fill=\"none\" stroke=\"#999999\">");
        let side = (scale / 3).max(1);
        for pt in witness_points(f, tag) {
            if let Some(xy) = affine(f, chart, &pt) {
                let (cx, cy) = at(xy);
                let _ = writeln!(
                    out,
                    r#"<rect x="{}" y="{}" width="{side}" height="{side}"/>"#,
                    cx - side / 2,
                    cy - side / 2
                );
            }
        }
        let _ = writeln!(out, "</g>");
    }

    // every line through points of two components, as the segment between
    // its extreme visible net points
    let comps = net.components();
    let mut lines = BTreeSet::new();
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        for a in &comps[i] {
            for b in &comps[j] {
                lines.extend(join(f, a, b).ok());
            }
        }
    }
    let _ = writeln!(out, "<g class=\"lines\" stroke=\"#bbbbbb\" stroke-width=\"1\">");
    for line in &lines {
        let on: BTreeSet<(u32, u32)> = net
            .points()
            .iter()
            .filter(|pt| incident(f, pt, line))
            .filter_map(|pt| affine(f, chart, pt))
            .collect();
        if let (Some(&first), Some(&last)) = (on.first(), on.last()) {
            if first != last {
                let ((x1, y1), (x2, y2)) = (at(first), at(last));
                let _ = writeln!(out, r#"<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"/>"#);
            }
        }
    }
    let _ = writeln!(out, "</g>");

    let r = (scale / 4).max(1);
    let mut hidden = 0;
    for (c, comp) in comps.iter().enumerate() {
        let _ = writeln!(out, "<g class=\"component{c}\" fill=\"{}\">", COLORS[c]);
        for pt in comp {
            match affine(f, chart, pt) {
                Some(xy) => {
                    let (cx, cy) = at(xy);
                    let _ = writeln!(out, r#"<circle cx="{cx}" cy="{cy}" r="{r}"/>"#);
                }
                None => hidden += 1,
            }
        }
        let _ = writeln!(out, "</g>");
    }
    if hidden > 0 {
        let _ = writeln!(out, "<!-- {hidden} net points outside the chart -->");
    }
    out.push_str("</svg>\n");
    out
}
