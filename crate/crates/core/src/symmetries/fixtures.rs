//! Explicit pencils of cubics with known symmetries, used as fixtures.

use crate::cubics::Cubic;
use crate::geometry::{PrimeField, ProjPoint, Projectivity};
use crate::poly::HomPoly;
use crate::Result;

fn linear(f: &PrimeField, c: [i64; 3]) -> HomPoly {
    HomPoly::linear(c.map(|x| f.elem(x)))
}

/// `(X−Z)(Y−Z)(X+Y) + λXYZ`.
pub fn order_six_pencil(f: &PrimeField, lambda: u32) -> Result<Cubic> {
    let prod = linear(f, [1, 0, -1]).mul(f, &linear(f, [0, 1, -1])).mul(f, &linear(f, [1, 1, 0]));
    let xyz = HomPoly::from_coeffs(f, 3, &[0, 0, 0, 0, 1, 0, 0, 0, 0, 0]);
    Cubic::from_poly(f, &prod.add(f, &xyz.scale(f, lambda)))
}

/// `(X,Y,Z) ↦ (Z,−Y,X)`, `(−X,Z,Y)` and `(Y,X,Z)`, each preserving every
/// member of [`order_six_pencil`].
pub fn order_six_maps(f: &PrimeField) -> [Projectivity; 3] {
    [
        [[0, 0, 1], [0, -1, 0], [1, 0, 0]],
        [[-1, 0, 0], [0, 0, 1], [0, 1, 0]],
        [[0, 1, 0], [1, 0, 0], [0, 0, 1]],
    ]
    .map(|m| Projectivity::new(f, m).expect("invertible"))
}

/// `Y²X − X²Y + (λ−1)XYZ + X²Z − λYZ²`.
pub fn order_five_pencil(f: &PrimeField, lambda: u32) -> Result<Cubic> {
    let l = i64::from(lambda);
    Cubic::new(f, [0, -1, 1, 1, l - 1, 0, 0, 0, -l, 0])
}

/// `(X,Y,Z) ↦ (−Y+Z, −X+Z, Z)`, preserving every member of
/// [`order_five_pencil`].
pub fn order_five_map(f: &PrimeField) -> Projectivity {
    Projectivity::new(f, [[0, -1, 1], [-1, 0, 1], [0, 0, 1]]).expect("invertible")
}

/// `P1 = (0,0,1)` and its tangential point `P2 = (1,0,0)` on the members of
/// [`order_five_pencil`].
pub fn order_five_points(f: &PrimeField) -> (ProjPoint, ProjPoint) {
    (
        ProjPoint::new(f, [0, 0, 1]).expect("nonzero"),
        ProjPoint::new(f, [1, 0, 0]).expect("nonzero"),
    )
}
