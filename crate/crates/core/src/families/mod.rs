//! Constructors for the four classical families of dual 3-nets and a
//! classifier recognizing them.

mod construct;

use serde::{Deserialize, Serialize};

pub use construct::{
    construct_algebraic, construct_algebraic_in, construct_conic_line, construct_tetrahedron, construct_triangular,
    default_offsets, resolve_subgroup, SubgroupSpec, TetraCosets,
};

use crate::cubics::{classify_cubic, conic_det, cubic_space_through, Cubic, CubicTag};
use crate::geometry::{collinear, concurrent, det3, incident, join, meet, PrimeField, ProjLine, ProjPoint};
use crate::nets::{verify_net, DualThreeNet};
use crate::poly::{monomial_value, monomials, HomPoly};
use crate::{linalg, Error, Result};

/// The family of a net, with witnesses containing its points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FamilyTag {
    /// Components on the sides of a triangle.
    Triangular { triangle: [ProjLine; 3] },
    /// Components on three concurrent lines.
    #[serde(rename = "pencil")]
    PencilType { lines: [ProjLine; 3], center: ProjPoint },
    /// One component on `line`, the other two on an irreducible conic with
    /// coefficients of `X², XY, XZ, Y², YZ, Z²`.
    #[serde(rename = "conicline")]
    ConicLine { conic: [u32; 6], line: ProjLine },
    ProperAlgebraic { cubic: Cubic, class: CubicTag },
    /// Each component split in two halves on opposite sides of the
    /// quadrangle with these vertices.
    #[serde(rename = "tetrahedron")]
    TetrahedronType { quadrangle: [ProjPoint; 4] },
    AlgebraicDegenerateOther { cubic: Cubic },
    Unclassified,
}

impl FamilyTag {
    /// The short family name used on the command line.
    pub fn name(&self) -> &'static str {
        match self {
            FamilyTag::Triangular { .. } => "triangular",
            FamilyTag::PencilType { .. } => "pencil",
            FamilyTag::ConicLine { .. } => "conicline",
            FamilyTag::ProperAlgebraic { .. } => "proper_algebraic",
            FamilyTag::TetrahedronType { .. } => "tetrahedron",
            FamilyTag::AlgebraicDegenerateOther { .. } => "algebraic_degenerate_other",
            FamilyTag::Unclassified => "unclassified",
        }
    }

    /// Whether the net's points lie on a cubic.
    pub fn is_algebraic(&self) -> bool {
        !matches!(self, FamilyTag::TetrahedronType { .. } | FamilyTag::Unclassified)
    }
}

fn tag_of_cubic(f: &PrimeField, cubic: Cubic) -> Result<FamilyTag> {
    let class = classify_cubic(f, &cubic);
    Ok(match class.tag {
        CubicTag::ThreeLinesTriangle => FamilyTag::Triangular {
            triangle: [class.lines[0], class.lines[1], class.lines[2]],
        },
        CubicTag::ThreeLinesConcurrent => FamilyTag::PencilType {
            lines: [class.lines[0], class.lines[1], class.lines[2]],
            center: meet(f, &class.lines[0], &class.lines[1])?,
        },
        CubicTag::ConicPlusLine => FamilyTag::ConicLine {
            conic: class.conic.ok_or_else(|| Error::Internal("conic component missing".into()))?,
            line: class.lines[0],
        },
        t if t.is_irreducible() => FamilyTag::ProperAlgebraic { cubic, class: t },
        _ => FamilyTag::AlgebraicDegenerateOther { cubic },
    })
}

/// The line containing all the points, if there is one.
fn common_line(f: &PrimeField, pts: &[ProjPoint]) -> Option<ProjLine> {
    let line = join(f, &pts[0], pts.get(1)?).ok()?;
    pts.iter().all(|p| incident(f, p, &line)).then_some(line)
}

/// The unique conic through the points, if it is unique and irreducible.
fn unique_irreducible_conic(f: &PrimeField, pts: &[ProjPoint]) -> Option<HomPoly> {
    let mons = monomials(2);
    let rows: Vec<Vec<u32>> = pts
        .iter()
        .map(|p| mons.iter().map(|&e| monomial_value(f, e, p.coords())).collect())
        .collect();
    let space = linalg::nullspace(f, &rows, mons.len());
    if space.len() != 1 {
        return None;
    }
    let conic = HomPoly::from_elems(2, space[0].clone());
    (conic_det(f, &conic) != 0).then_some(conic)
}

/// Recognizes three-line and conic-line configurations directly from the
/// components. Used when many cubics pass through the points, where a generic
/// member would hide the structure.
fn structural_cubic(net: &DualThreeNet) -> Result<Option<Cubic>> {
    let f = net.field();
    let lines: Vec<Option<ProjLine>> = net.components().iter().map(|c| common_line(f, c)).collect();
    if let [Some(a), Some(b), Some(c)] = lines[..] {
        let prod = HomPoly::linear(a.coeffs()).mul(f, &HomPoly::linear(b.coeffs())).mul(f, &HomPoly::linear(c.coeffs()));
        return Cubic::from_poly(f, &prod).map(Some);
    }
    if lines.iter().filter(|l| l.is_some()).count() != 1 {
        return Ok(None);
    }
    let k = lines.iter().position(|l| l.is_some()).expect("one line");
    let rest: Vec<ProjPoint> = (0..3).filter(|&i| i != k).flat_map(|i| net.component(i).iter().copied()).collect();
    let Some(conic) = unique_irreducible_conic(f, &rest) else {
        return Ok(None);
    };
    let prod = HomPoly::linear(lines[k].expect("checked").coeffs()).mul(f, &conic);
    Cubic::from_poly(f, &prod).map(Some)
}

/// The first nonsingular member of the pencil `b0 + λ·b1`, else the first
/// irreducible one.
fn irreducible_pencil_member(f: &PrimeField, b0: &Cubic, b1: &Cubic) -> Option<Cubic> {
    let (p0, p1) = (b0.poly(), b1.poly());
    let members: Vec<(Cubic, CubicTag)> = (0..f.p())
        .map(|l| p0.add(f, &p1.scale(f, l)))
        .chain(std::iter::once(p1.clone()))
        .filter_map(|q| Cubic::from_poly(f, &q).ok())
        .map(|c| {
            let tag = classify_cubic(f, &c).tag;
            (c, tag)
        })
        .collect();
    members
        .iter()
        .find(|(_, t)| *t == CubicTag::NonsingularIrreducible)
        .or_else(|| members.iter().find(|(_, t)| t.is_irreducible()))
        .map(|(c, _)| *c)
}

/// Whether the witnesses of a line-based tag carry whole components: one
/// component per line, or one on the line and two on the conic.
fn fits_components(net: &DualThreeNet, tag: &FamilyTag) -> bool {
    let f = net.field();
    let on = |c: &[ProjPoint], l: &ProjLine| c.iter().all(|p| incident(f, p, l));
    let comps = net.components();
    match tag {
        FamilyTag::Triangular { triangle: lines } | FamilyTag::PencilType { lines, .. } => {
            let mut used = [false; 3];
            comps.iter().all(|c| {
                (0..3)
                    .find(|&k| !used[k] && on(c, &lines[k]))
                    .map(|k| used[k] = true)
                    .is_some()
            })
        }
        FamilyTag::ConicLine { conic, line } => {
            let q = HomPoly::from_elems(2, conic.to_vec());
            (0..3).any(|k| {
                on(&comps[k], line)
                    && (0..3)
                        .filter(|&i| i != k)
                        .all(|i| comps[i].iter().all(|p| q.eval(f, p.coords()) == 0))
            })
        }
        _ => true,
    }
}

/// Ways to split a component of even size into two collinear halves.
fn collinear_splits(f: &PrimeField, comp: &[ProjPoint]) -> Vec<(ProjLine, ProjLine)> {
    let half = comp.len() / 2;
    let mut out: Vec<(ProjLine, ProjLine)> = Vec::new();
    for i in 0..comp.len() {
        for j in i + 1..comp.len() {
            let Ok(line) = join(f, &comp[i], &comp[j]) else { continue };
            let (on, off): (Vec<ProjPoint>, Vec<ProjPoint>) = comp.iter().partition(|p| incident(f, p, &line));
            if on.len() != half {
                continue;
            }
            if let Some(other) = common_line(f, &off) {
                let pair = if line < other { (line, other) } else { (other, line) };
                if !out.contains(&pair) {
                    out.push(pair);
                }
            }
        }
    }
    out
}

/// Vertices of the complete quadrangle whose three pairs of opposite sides
/// are the given pairs of lines.
fn quadrangle(f: &PrimeField, pairs: &[(ProjLine, ProjLine); 3]) -> Option<[ProjPoint; 4]> {
    let side = |k: usize, s: usize| if s == 0 { pairs[k].0 } else { pairs[k].1 };
    let mut vertices = Vec::new();
    let mut uses = [[0usize; 2]; 3];
    for s in 0..8 {
        let pick = [s & 1, (s >> 1) & 1, (s >> 2) & 1];
        let (a, b, c) = (side(0, pick[0]), side(1, pick[1]), side(2, pick[2]));
        if concurrent(f, &a, &b, &c) {
            vertices.push(meet(f, &a, &b).ok()?);
            for k in 0..3 {
                uses[k][pick[k]] += 1;
            }
        }
    }
    if vertices.len() != 4 || uses.iter().flatten().any(|&u| u != 2) {
        return None;
    }
    for i in 0..4 {
        for j in i + 1..4 {
            for k in j + 1..4 {
                if collinear(f, &vertices[i], &vertices[j], &vertices[k]) {
                    return None;
                }
            }
        }
    }
    vertices.sort();
    vertices.try_into().ok()
}

fn tetrahedron_shape(net: &DualThreeNet) -> Option<[ProjPoint; 4]> {
    let f = net.field();
    let n = net.order();
    if !n.is_multiple_of(2) || n < 4 {
        return None;
    }
    let splits: Vec<Vec<(ProjLine, ProjLine)>> = net.components().iter().map(|c| collinear_splits(f, c)).collect();
    for a in &splits[0] {
        for b in &splits[1] {
            for c in &splits[2] {
                if let Some(q) = quadrangle(f, &[*a, *b, *c]) {
                    return Some(q);
                }
            }
        }
    }
    None
}

/// Decides the family of a net. When the points lie on a unique cubic its
/// type decides, provided line and conic witnesses carry whole components;
/// when they lie on several, three-line and conic-line configurations are
/// recognized from the components and an irreducible member is used
/// otherwise; when they lie on none, the tetrahedron shape is tested.
pub fn classify_net(net: &DualThreeNet) -> Result<FamilyTag> {
    if net.order() < 2 {
        return Err(Error::InvalidInput("classification needs order at least 2".into()));
    }
    let report = verify_net(net)?;
    if !report.is_net {
        return Err(Error::NotANet(format!("{} violating line/component pairs", report.violations.len())));
    }
    let f = net.field();
    let basis = cubic_space_through(f, &net.points());
    match basis.len() {
        0 => Ok(match tetrahedron_shape(net) {
            Some(quadrangle) => FamilyTag::TetrahedronType { quadrangle },
            None => FamilyTag::Unclassified,
        }),
        1 => {
            let tag = tag_of_cubic(f, basis[0])?;
            Ok(if fits_components(net, &tag) {
                tag
            } else {
                FamilyTag::AlgebraicDegenerateOther { cubic: basis[0] }
            })
        }
        _ => {
            if let Some(c) = structural_cubic(net)? {
                return tag_of_cubic(f, c);
            }
            match irreducible_pencil_member(f, &basis[0], &basis[1]) {
                Some(c) => tag_of_cubic(f, c),
                None => Ok(FamilyTag::AlgebraicDegenerateOther { cubic: basis[0] }),
            }
        }
    }
}

/// Whether three lines are the sides of a triangle (not concurrent).
pub fn is_triangle(f: &PrimeField, lines: &[ProjLine; 3]) -> bool {
    det3(f, lines[0].coeffs(), lines[1].coeffs(), lines[2].coeffs()) != 0
}
