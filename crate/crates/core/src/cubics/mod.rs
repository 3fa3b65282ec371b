//! Plane cubic curves over `F_p`: evaluation, interpolation, classification,
//! tangents and inflections, and the chord-tangent group law.

mod classify;
mod group;

use serde::{Deserialize, Serialize};

pub use classify::{classify_cubic, CubicClass, CubicTag};
pub(crate) use classify::conic_det;
pub use group::{group_structure, CubicGroup, GroupStructure};

use crate::geometry::{all_points, combine, cross, PrimeField, ProjLine, ProjPoint, Projectivity};
use crate::poly::{monomial_value, monomials, HomPoly};
use crate::{linalg, Error, Result};

/// A plane cubic up to scalar, normalized so that the first nonzero
/// coefficient is `1`. Coefficients follow the monomial order
/// `X³, X²Y, X²Z, XY², XYZ, XZ², Y³, Y²Z, YZ², Z³`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Cubic([u32; 10]);

impl Cubic {
    pub fn new(f: &PrimeField, coeffs: [i64; 10]) -> Result<Self> {
        Self::from_elems(f, coeffs.map(|c| f.elem(c)))
    }

    pub fn from_elems(f: &PrimeField, coeffs: [u32; 10]) -> Result<Self> {
        let coeffs = coeffs.map(|c| c % f.p());
        let lead = *coeffs.iter().find(|&&c| c != 0).ok_or(Error::ZeroPolynomial)?;
        let s = f.inv(lead);
        Ok(Cubic(coeffs.map(|c| f.mul(c, s))))
    }

    pub(crate) fn from_poly(f: &PrimeField, poly: &HomPoly) -> Result<Self> {
        debug_assert_eq!(poly.degree(), 3);
        let mut c = [0u32; 10];
        c.copy_from_slice(poly.coeffs());
        Self::from_elems(f, c)
    }

    pub fn coeffs(&self) -> [u32; 10] {
        self.0
    }

    pub fn poly(&self) -> HomPoly {
        HomPoly::from_elems(3, self.0.to_vec())
    }

    pub fn eval(&self, f: &PrimeField, pt: &ProjPoint) -> u32 {
        self.poly().eval(f, pt.coords())
    }

    pub fn contains(&self, f: &PrimeField, pt: &ProjPoint) -> bool {
        self.eval(f, pt) == 0
    }

    pub fn gradient(&self, f: &PrimeField, pt: &ProjPoint) -> [u32; 3] {
        let poly = self.poly();
        [0, 1, 2].map(|i| poly.partial(f, i).eval(f, pt.coords()))
    }

    /// Whether `pt` is a smooth point of the curve.
    pub fn is_smooth_at(&self, f: &PrimeField, pt: &ProjPoint) -> bool {
        self.contains(f, pt) && self.gradient(f, pt) != [0, 0, 0]
    }

    /// Matrix of second partial derivatives at `pt`.
    pub fn hessian_matrix(&self, f: &PrimeField, pt: &ProjPoint) -> [[u32; 3]; 3] {
        let poly = self.poly();
        let first = [0, 1, 2].map(|i| poly.partial(f, i));
        [0, 1, 2].map(|i| [0, 1, 2].map(|j| first[i].partial(f, j).eval(f, pt.coords())))
    }

    pub fn hessian_det(&self, f: &PrimeField, pt: &ProjPoint) -> u32 {
        let h = self.hessian_matrix(f, pt);
        crate::geometry::det3(f, h[0], h[1], h[2])
    }

    /// The image curve under a projectivity: a point `P` lies on `self`
    /// iff `M·P` lies on the result.
    pub fn transform(&self, f: &PrimeField, m: &Projectivity) -> Cubic {
        let inv = m.inverse(f).matrix();
        Cubic::from_poly(f, &self.poly().compose(f, &inv)).expect("nonsingular substitution")
    }

    /// Whether the projectivity maps the curve onto itself.
    pub fn is_preserved_by(&self, f: &PrimeField, m: &Projectivity) -> bool {
        self.transform(f, m) == *self
    }

    /// All rational points, in ascending order.
    pub fn rational_points(&self, f: &PrimeField) -> Vec<ProjPoint> {
        let poly = self.poly();
        all_points(f).filter(|pt| poly.eval(f, pt.coords()) == 0).collect()
    }

    /// Rational points where all partial derivatives vanish.
    pub fn singular_points(&self, f: &PrimeField) -> Vec<ProjPoint> {
        let poly = self.poly();
        let partials = [0, 1, 2].map(|i| poly.partial(f, i));
        all_points(f)
            .filter(|pt| partials.iter().all(|d| d.eval(f, pt.coords()) == 0))
            .filter(|pt| poly.eval(f, pt.coords()) == 0)
            .collect()
    }
}

/// Two independent points spanning a line.
pub(crate) fn line_basis(f: &PrimeField, line: &ProjLine) -> ([u32; 3], [u32; 3]) {
    let l = line.coeffs();
    let cands = [[1, 0, 0], [0, 1, 0], [0, 0, 1]].map(|e| cross(f, l, e));
    let a = *cands.iter().find(|v| **v != [0, 0, 0]).expect("line has a nonzero coordinate");
    let b = *cands
        .iter()
        .find(|v| cross(f, a, **v) != [0, 0, 0])
        .expect("a line contains two independent points");
    (a, b)
}

/// Coefficients `[c0, c1, c2, c3]` of `g(s, t) = F(s·a + t·b) = Σ c_k s^(3-k) t^k`.
pub(crate) fn restrict_to_line(f: &PrimeField, poly: &HomPoly, a: [u32; 3], b: [u32; 3]) -> [u32; 4] {
    let c0 = poly.eval(f, a);
    let c3 = poly.eval(f, b);
    let plus = poly.eval(f, combine(f, 1, a, 1, b));
    let minus = poly.eval(f, combine(f, 1, a, f.neg(1), b));
    // plus = c0 + c1 + c2 + c3, minus = c0 - c1 + c2 - c3
    let sum12 = f.sub(f.sub(plus, c0), c3);
    let diff21 = f.add(f.sub(minus, c0), c3);
    let half = f.inv(2);
    let c2 = f.mul(f.add(sum12, diff21), half);
    let c1 = f.mul(f.sub(sum12, diff21), half);
    [c0, c1, c2, c3]
}

/// Whether the whole line lies on the curve.
pub fn contains_line(f: &PrimeField, cubic: &Cubic, line: &ProjLine) -> bool {
    let (a, b) = line_basis(f, line);
    restrict_to_line(f, &cubic.poly(), a, b) == [0; 4]
}

/// Basis of the space of cubics vanishing at every given point.
/// The dimension of the space is the length of the basis.
pub fn cubic_space_through(f: &PrimeField, points: &[ProjPoint]) -> Vec<Cubic> {
    let mons = monomials(3);
    let rows: Vec<Vec<u32>> = points
        .iter()
        .map(|pt| mons.iter().map(|&e| monomial_value(f, e, pt.coords())).collect())
        .collect();
    linalg::nullspace(f, &rows, 10)
        .into_iter()
        .map(|v| {
            let mut c = [0u32; 10];
            c.copy_from_slice(&v);
            Cubic::from_elems(f, c).expect("nullspace vectors are nonzero")
        })
        .collect()
}

fn check_smooth(f: &PrimeField, cubic: &Cubic, pt: &ProjPoint) -> Result<()> {
    if !cubic.contains(f, pt) {
        return Err(Error::PointNotOnCurve(pt.coords()));
    }
    if cubic.gradient(f, pt) == [0, 0, 0] {
        return Err(Error::SingularPointInvolved(pt.coords()));
    }
    Ok(())
}

pub fn tangent_line(f: &PrimeField, cubic: &Cubic, pt: &ProjPoint) -> Result<ProjLine> {
    check_smooth(f, cubic, pt)?;
    ProjLine::from_elems(f, cubic.gradient(f, pt))
}

/// The residual intersection of the line `PQ` (the tangent at `P` when
/// `P = Q`) with the curve, counted with multiplicity.
pub fn third_intersection(f: &PrimeField, cubic: &Cubic, p: &ProjPoint, q: &ProjPoint) -> Result<ProjPoint> {
    check_smooth(f, cubic, p)?;
    check_smooth(f, cubic, q)?;
    let poly = cubic.poly();
    if p != q {
        let [_, c1, c2, _] = restrict_to_line(f, &poly, p.coords(), q.coords());
        if c1 == 0 && c2 == 0 {
            return Err(Error::LineComponent);
        }
        // g = st(c1·s + c2·t), residual root (s, t) = (c2, -c1)
        return ProjPoint::from_elems(f, combine(f, c2, p.coords(), f.neg(c1), q.coords()));
    }
    let tangent = tangent_line(f, cubic, p)?;
    let d = tangent
        .points(f)
        .into_iter()
        .find(|x| x != p)
        .expect("a line has at least two points");
    let [_, _, c2, c3] = restrict_to_line(f, &poly, p.coords(), d.coords());
    if c2 == 0 && c3 == 0 {
        return Err(Error::LineComponent);
    }
    // g = t²(c2·s + c3·t), residual root (s, t) = (c3, -c2)
    ProjPoint::from_elems(f, combine(f, c3, p.coords(), f.neg(c2), d.coords()))
}

/// The residual intersection of the tangent at `P`.
pub fn tangential_point(f: &PrimeField, cubic: &Cubic, pt: &ProjPoint) -> Result<ProjPoint> {
    third_intersection(f, cubic, pt, pt)
}

/// Smooth rational points where the Hessian also vanishes.
pub fn inflection_points(f: &PrimeField, cubic: &Cubic) -> Vec<ProjPoint> {
    cubic
        .rational_points(f)
        .into_iter()
        .filter(|pt| cubic.gradient(f, pt) != [0, 0, 0] && cubic.hessian_det(f, pt) == 0)
        .collect()
}
