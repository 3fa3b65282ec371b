//! The projective plane `PG(2, p)` in exact arithmetic.
//!
//! Points, lines and projectivities are stored normalized: the first nonzero
//! entry is `1`. Two equal projective objects therefore compare equal
//! bitwise, which makes hashing and deduplication trivial.

mod field;
mod projectivity;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use field::PrimeField;
pub use projectivity::{frame_map, Projectivity};

use crate::{Error, Result};

fn normalize(f: &PrimeField, v: [u32; 3]) -> Option<[u32; 3]> {
    let lead = *v.iter().find(|&&x| x != 0)?;
    let s = f.inv(lead);
    Some(v.map(|x| f.mul(x, s)))
}

fn reduce(f: &PrimeField, v: [i64; 3]) -> [u32; 3] {
    v.map(|x| f.elem(x))
}

pub(crate) fn cross(f: &PrimeField, a: [u32; 3], b: [u32; 3]) -> [u32; 3] {
    [
        f.sub(f.mul(a[1], b[2]), f.mul(a[2], b[1])),
        f.sub(f.mul(a[2], b[0]), f.mul(a[0], b[2])),
        f.sub(f.mul(a[0], b[1]), f.mul(a[1], b[0])),
    ]
}

pub(crate) fn dot(f: &PrimeField, a: [u32; 3], b: [u32; 3]) -> u32 {
    let s = a[0] as u64 * b[0] as u64 + a[1] as u64 * b[1] as u64 + a[2] as u64 * b[2] as u64;
    (s % f.p() as u64) as u32
}

pub(crate) fn det3(f: &PrimeField, a: [u32; 3], b: [u32; 3], c: [u32; 3]) -> u32 {
    dot(f, a, cross(f, b, c))
}

/// A point of `PG(2, p)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ProjPoint([u32; 3]);

/// A line of `PG(2, p)`, given by its dual coordinates `[a, b, c]`
/// (the line `aX + bY + cZ = 0`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjLine([u32; 3]);

impl ProjPoint {
    pub fn new(f: &PrimeField, coords: [i64; 3]) -> Result<Self> {
        Self::from_elems(f, reduce(f, coords))
    }

    pub fn from_elems(f: &PrimeField, coords: [u32; 3]) -> Result<Self> {
        normalize(f, coords.map(|x| x % f.p()))
            .map(ProjPoint)
            .ok_or(Error::ZeroVector)
    }

    pub fn coords(&self) -> [u32; 3] {
        self.0
    }

    /// Whether the stored coordinates are normalized for this field.
    pub fn is_valid_for(&self, f: &PrimeField) -> bool {
        self.0.iter().all(|&x| x < f.p()) && normalize(f, self.0) == Some(self.0)
    }
}

impl ProjLine {
    pub fn new(f: &PrimeField, coeffs: [i64; 3]) -> Result<Self> {
        Self::from_elems(f, reduce(f, coeffs))
    }

    pub fn from_elems(f: &PrimeField, coeffs: [u32; 3]) -> Result<Self> {
        normalize(f, coeffs.map(|x| x % f.p()))
            .map(ProjLine)
            .ok_or(Error::ZeroVector)
    }

    pub fn coeffs(&self) -> [u32; 3] {
        self.0
    }

    /// All `p + 1` points of the line, in ascending order.
    pub fn points(&self, f: &PrimeField) -> Vec<ProjPoint> {
        let mut pts: Vec<ProjPoint> = all_points(f)
            .filter(|pt| incident(f, pt, self))
            .collect();
        pts.sort();
        pts
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.0[0], self.0[1], self.0[2])
    }
}

impl fmt::Debug for ProjLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}, {}]", self.0[0], self.0[1], self.0[2])
    }
}

#[derive(Serialize, Deserialize)]
struct LineRepr {
    dual: bool,
    coords: [u32; 3],
}

impl Serialize for ProjLine {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LineRepr {
            dual: true,
            coords: self.0,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ProjLine {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = LineRepr::deserialize(d)?;
        if !r.dual {
            return Err(serde::de::Error::custom("a line must carry \"dual\": true"));
        }
        Ok(ProjLine(r.coords))
    }
}

/// Iterates over every point of `PG(2, p)` in ascending order:
/// `(0,0,1)`, `(0,1,z)`, then `(1,y,z)`.
pub fn all_points(f: &PrimeField) -> impl Iterator<Item = ProjPoint> {
    let p = f.p();
    std::iter::once(ProjPoint([0, 0, 1]))
        .chain((0..p).map(|z| ProjPoint([0, 1, z])))
        .chain((0..p).flat_map(move |y| (0..p).map(move |z| ProjPoint([1, y, z]))))
}

/// Iterates over every line of `PG(2, p)`.
pub fn all_lines(f: &PrimeField) -> impl Iterator<Item = ProjLine> {
    all_points(f).map(|pt| ProjLine(pt.0))
}

pub fn incident(f: &PrimeField, pt: &ProjPoint, line: &ProjLine) -> bool {
    dot(f, pt.0, line.0) == 0
}

/// Three points are collinear iff the determinant of their coordinates
/// vanishes. Coincident points count as collinear.
pub fn collinear(f: &PrimeField, a: &ProjPoint, b: &ProjPoint, c: &ProjPoint) -> bool {
    det3(f, a.0, b.0, c.0) == 0
}

/// Three lines are concurrent iff their coordinate determinant vanishes.
pub fn concurrent(f: &PrimeField, a: &ProjLine, b: &ProjLine, c: &ProjLine) -> bool {
    det3(f, a.0, b.0, c.0) == 0
}

/// The line through two distinct points.
pub fn join(f: &PrimeField, a: &ProjPoint, b: &ProjPoint) -> Result<ProjLine> {
    if a == b {
        return Err(Error::CoincidentArguments);
    }
    Ok(ProjLine(normalize(f, cross(f, a.0, b.0)).expect("distinct points")))
}

/// The common point of two distinct lines.
pub fn meet(f: &PrimeField, a: &ProjLine, b: &ProjLine) -> Result<ProjPoint> {
    if a == b {
        return Err(Error::CoincidentArguments);
    }
    Ok(ProjPoint(normalize(f, cross(f, a.0, b.0)).expect("distinct lines")))
}

/// Linear combination `s·a + t·b` of two point representatives.
pub(crate) fn combine(f: &PrimeField, s: u32, a: [u32; 3], t: u32, b: [u32; 3]) -> [u32; 3] {
    [0, 1, 2].map(|i| f.add(f.mul(s, a[i]), f.mul(t, b[i])))
}

/// The point with parameter `t` on the conic `Y² = XZ`: `(1, t, t²)`,
/// or `(0, 0, 1)` for `t = None` (the point at infinity of the parametrization).
pub fn standard_conic_point(f: &PrimeField, t: Option<u32>) -> ProjPoint {
    match t {
        Some(t) => ProjPoint([1, t % f.p(), f.mul(t, t)]),
        None => ProjPoint([0, 0, 1]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(f: &PrimeField, c: [i64; 3]) -> ProjPoint {
        ProjPoint::new(f, c).unwrap()
    }

    #[test]
    fn normalization_is_canonical() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(pt(&f, [2, 4, 6]), pt(&f, [1, 2, 3]));
        assert_eq!(pt(&f, [0, -1, 3]).coords(), [0, 1, 4]);
        assert_eq!(ProjPoint::new(&f, [7, 14, 0]), Err(Error::ZeroVector));
        assert!(pt(&f, [3, 3, 3]).is_valid_for(&f));
        assert!(!ProjPoint([2, 1, 1]).is_valid_for(&f));
    }

    #[test]
    fn collinearity_examples() {
        let f = PrimeField::new(13).unwrap();
        assert!(collinear(&f, &pt(&f, [1, 0, 0]), &pt(&f, [0, 1, 0]), &pt(&f, [1, 1, 0])));
        assert!(!collinear(&f, &pt(&f, [1, 0, 0]), &pt(&f, [0, 1, 0]), &pt(&f, [0, 0, 1])));
        // (ξ,0,1), (0,η,1), (1,-ζ,0) with ξζ = η
        assert!(collinear(&f, &pt(&f, [3, 0, 1]), &pt(&f, [0, 9, 1]), &pt(&f, [1, -3, 0])));
        assert!(!collinear(&f, &pt(&f, [3, 0, 1]), &pt(&f, [0, 3, 1]), &pt(&f, [1, -3, 0])));
    }

    #[test]
    fn join_and_meet() {
        let f = PrimeField::new(7).unwrap();
        let l = join(&f, &pt(&f, [1, 0, 0]), &pt(&f, [0, 1, 0])).unwrap();
        assert_eq!(l.coeffs(), [0, 0, 1]);
        let m = meet(&f, &ProjLine::new(&f, [0, 0, 1]).unwrap(), &ProjLine::new(&f, [0, 1, 0]).unwrap())
            .unwrap();
        assert_eq!(m.coords(), [1, 0, 0]);
        // chord of Y² = XZ through parameters 2 and 3 is [xy, -(x+y), 1]
        let chord = join(&f, &standard_conic_point(&f, Some(2)), &standard_conic_point(&f, Some(3)))
            .unwrap();
        assert_eq!(chord, ProjLine::new(&f, [6, -5, 1]).unwrap());
        assert_eq!(
            join(&f, &pt(&f, [1, 2, 4]), &pt(&f, [2, 4, 1])),
            Err(Error::CoincidentArguments)
        );
    }

    #[test]
    fn plane_enumeration() {
        let f = PrimeField::new(5).unwrap();
        let pts: Vec<_> = all_points(&f).collect();
        assert_eq!(pts.len(), 31);
        let mut sorted = pts.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted, pts);
        let line = ProjLine::new(&f, [1, 1, 1]).unwrap();
        assert_eq!(line.points(&f).len(), 6);
    }

    #[test]
    fn line_json_carries_dual_marker() {
        let f = PrimeField::new(7).unwrap();
        let l = ProjLine::new(&f, [0, 2, 0]).unwrap();
        let s = serde_json::to_string(&l).unwrap();
        assert_eq!(s, r#"{"dual":true,"coords":[0,1,0]}"#);
        assert_eq!(serde_json::from_str::<ProjLine>(&s).unwrap(), l);
        assert_eq!(serde_json::to_string(&pt(&f, [0, 0, 3])).unwrap(), "[0,0,1]");
        assert_eq!(serde_json::to_string(&f).unwrap(), r#"{"p":7}"#);
        assert!(serde_json::from_str::<PrimeField>(r#"{"p":8}"#).is_err());
    }
}
