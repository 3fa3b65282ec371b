use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{contains_line, Cubic};
use crate::geometry::{all_lines, det3, PrimeField, ProjLine, ProjPoint};
use crate::linalg;
use crate::poly::{monomials, HomPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CubicTag {
    NonsingularIrreducible,
    NodalIrreducible,
    CuspidalIrreducible,
    ConicPlusLine,
    ThreeLinesTriangle,
    ThreeLinesConcurrent,
    OtherDegenerate,
}

impl CubicTag {
    pub fn is_irreducible(self) -> bool {
        matches!(
            self,
            CubicTag::NonsingularIrreducible | CubicTag::NodalIrreducible | CubicTag::CuspidalIrreducible
        )
    }
}

/// Classification of a cubic together with its witnesses: singular points,
/// rational linear components, and the residual conic when there is one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubicClass {
    pub tag: CubicTag,
    pub singular_points: Vec<ProjPoint>,
    pub lines: Vec<ProjLine>,
    /// Coefficients of `X², XY, XZ, Y², YZ, Z²`.
    pub conic: Option<[u32; 6]>,
}

/// Divides `F` by the linear form `L`, assuming `L | F`.
fn divide_by_line(f: &PrimeField, poly: &HomPoly, line: &ProjLine) -> HomPoly {
    let deg = poly.degree() - 1;
    let lin = HomPoly::linear(line.coeffs());
    let cols: Vec<HomPoly> = (0..monomials(deg).len())
        .map(|j| {
            let mut c = vec![0; monomials(deg).len()];
            c[j] = 1;
            HomPoly::from_elems(deg, c).mul(f, &lin)
        })
        .collect();
    let rows: Vec<Vec<u32>> = (0..poly.coeffs().len())
        .map(|i| cols.iter().map(|c| c.coeffs()[i]).collect())
        .collect();
    let q = linalg::solve(f, &rows, poly.coeffs(), cols.len()).expect("line divides the cubic");
    HomPoly::from_elems(deg, q)
}

pub(crate) fn conic_det(f: &PrimeField, q: &HomPoly) -> u32 {
    let c = q.coeffs();
    let (a, b, cc, d, e, g) = (c[0], c[1], c[2], c[3], c[4], c[5]);
    det3(f, [f.add(a, a), b, cc], [b, f.add(d, d), e], [cc, e, f.add(g, g)])
}

/// Rank of a symmetric 3×3 matrix.
fn rank3(f: &PrimeField, m: [[u32; 3]; 3]) -> usize {
    let mut rows: Vec<Vec<u32>> = m.iter().map(|r| r.to_vec()).collect();
    linalg::rref(f, &mut rows, 3).len()
}

/// Decides the type of a cubic: rational line components are found by testing
/// every line, singular points by a full plane scan, and the node/cusp split
/// by the rank of the Hessian at the singular point.
pub fn classify_cubic(f: &PrimeField, cubic: &Cubic) -> CubicClass {
    let lines: Vec<ProjLine> = all_lines(f)
        .collect::<Vec<_>>()
        .into_par_iter()
        .filter(|l| contains_line(f, cubic, l))
        .collect();
    let singular_points = cubic.singular_points(f);
    let mut class = CubicClass {
        tag: CubicTag::OtherDegenerate,
        singular_points,
        lines,
        conic: None,
    };
    match class.lines.len() {
        0 => class.tag = classify_without_lines(f, cubic, &class.singular_points),
        1 => {
            let q = divide_by_line(f, &cubic.poly(), &class.lines[0]);
            if conic_det(f, &q) != 0 {
                class.tag = CubicTag::ConicPlusLine;
                let q = q.normalized(f).expect("nonzero quotient");
                let mut c = [0u32; 6];
                c.copy_from_slice(q.coeffs());
                class.conic = Some(c);
            }
        }
        3 => {
            let [a, b, c] = [0, 1, 2].map(|i| class.lines[i].coeffs());
            class.tag = if det3(f, a, b, c) == 0 {
                CubicTag::ThreeLinesConcurrent
            } else {
                CubicTag::ThreeLinesTriangle
            };
        }
        _ => {}
    }
    class
}

fn classify_without_lines(f: &PrimeField, cubic: &Cubic, singular: &[ProjPoint]) -> CubicTag {
    match singular {
        [] => {
            // With no rational singular point the curve is either smooth or a
            // triangle of conjugate lines; only the latter equals its Hessian.
            let hessian = hessian_poly(f, cubic);
            let h = Cubic::from_poly(f, &hessian).ok();
            if h == Some(*cubic) {
                CubicTag::OtherDegenerate
            } else {
                CubicTag::NonsingularIrreducible
            }
        }
        [s] => match rank3(f, cubic.hessian_matrix(f, s)) {
            2 => CubicTag::NodalIrreducible,
            1 => CubicTag::CuspidalIrreducible,
            _ => CubicTag::OtherDegenerate,
        },
        _ => CubicTag::OtherDegenerate,
    }
}

/// The Hessian determinant as a cubic form.
fn hessian_poly(f: &PrimeField, cubic: &Cubic) -> HomPoly {
    let poly = cubic.poly();
    let first = [0, 1, 2].map(|i| poly.partial(f, i));
    let h = [0, 1, 2].map(|i| [0, 1, 2].map(|j| first[i].partial(f, j)));
    let term = |a: &HomPoly, b: &HomPoly, c: &HomPoly| a.mul(f, b).mul(f, c);
    let neg = f.neg(1);
    let mut det = HomPoly::zero(3);
    for (s, [i, j, k]) in [(1, [0, 1, 2]), (1, [1, 2, 0]), (1, [2, 0, 1]), (neg, [0, 2, 1]), (neg, [1, 0, 2]), (neg, [2, 1, 0])] {
        det = det.add(f, &term(&h[0][i], &h[1][j], &h[2][k]).scale(f, s));
    }
    det
}
