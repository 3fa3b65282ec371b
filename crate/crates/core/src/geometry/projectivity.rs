use std::fmt;

use serde::{Deserialize, Serialize};

use super::{combine, PrimeField, ProjLine, ProjPoint};
use crate::{Error, Result};

type Mat = [[u32; 3]; 3];

/// An element of `PGL(3, p)`, acting on column vectors: `P ↦ M·P`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Projectivity {
    matrix: Mat,
}

fn mat_mul(f: &PrimeField, a: &Mat, b: &Mat) -> Mat {
    let mut out = [[0u32; 3]; 3];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            let s: u64 = (0..3).map(|k| a[i][k] as u64 * b[k][j] as u64).sum();
            *cell = (s % f.p() as u64) as u32;
        }
    }
    out
}

fn mat_vec(f: &PrimeField, m: &Mat, v: [u32; 3]) -> [u32; 3] {
    [0, 1, 2].map(|i| super::dot(f, m[i], v))
}

fn det(f: &PrimeField, m: &Mat) -> u32 {
    super::det3(f, m[0], m[1], m[2])
}

/// Adjugate: `adj(M)·M = det(M)·I`.
fn adjugate(f: &PrimeField, m: &Mat) -> Mat {
    let cof = |r0: usize, r1: usize, c0: usize, c1: usize| {
        f.sub(f.mul(m[r0][c0], m[r1][c1]), f.mul(m[r0][c1], m[r1][c0]))
    };
    let c = [
        [cof(1, 2, 1, 2), f.neg(cof(1, 2, 0, 2)), cof(1, 2, 0, 1)],
        [f.neg(cof(0, 2, 1, 2)), cof(0, 2, 0, 2), f.neg(cof(0, 2, 0, 1))],
        [cof(0, 1, 1, 2), f.neg(cof(0, 1, 0, 2)), cof(0, 1, 0, 1)],
    ];
    // adjugate is the transpose of the cofactor matrix
    let mut adj = [[0u32; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            adj[i][j] = c[j][i];
        }
    }
    adj
}

fn transpose(m: &Mat) -> Mat {
    let mut t = [[0u32; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            t[i][j] = m[j][i];
        }
    }
    t
}

fn normalize_mat(f: &PrimeField, m: Mat) -> Option<Mat> {
    let lead = *m.iter().flatten().find(|&&x| x != 0)?;
    let s = f.inv(lead);
    Some(m.map(|row| row.map(|x| f.mul(x, s))))
}

impl Projectivity {
    pub fn new(f: &PrimeField, m: [[i64; 3]; 3]) -> Result<Self> {
        Self::from_elems(f, m.map(|row| row.map(|x| f.elem(x))))
    }

    pub fn from_elems(f: &PrimeField, m: Mat) -> Result<Self> {
        let m = m.map(|row| row.map(|x| x % f.p()));
        if det(f, &m) == 0 {
            return Err(Error::SingularMatrix);
        }
        Ok(Projectivity {
            matrix: normalize_mat(f, m).expect("nonsingular"),
        })
    }

    pub fn identity() -> Self {
        Projectivity {
            matrix: [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
        }
    }

    pub fn matrix(&self) -> Mat {
        self.matrix
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    pub fn is_valid_for(&self, f: &PrimeField) -> bool {
        self.matrix.iter().flatten().all(|&x| x < f.p())
            && det(f, &self.matrix) != 0
            && normalize_mat(f, self.matrix) == Some(self.matrix)
    }

    pub fn apply(&self, f: &PrimeField, pt: &ProjPoint) -> ProjPoint {
        ProjPoint::from_elems(f, mat_vec(f, &self.matrix, pt.coords()))
            .expect("nonsingular map sends points to points")
    }

    /// Image of a line: `L ↦ M⁻ᵀ·L`, so that incidence is preserved.
    pub fn apply_line(&self, f: &PrimeField, line: &ProjLine) -> ProjLine {
        let adj_t = transpose(&adjugate(f, &self.matrix));
        ProjLine::from_elems(f, mat_vec(f, &adj_t, line.coeffs()))
            .expect("nonsingular map sends lines to lines")
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, f: &PrimeField, other: &Projectivity) -> Projectivity {
        Projectivity {
            matrix: normalize_mat(f, mat_mul(f, &self.matrix, &other.matrix)).expect("nonsingular"),
        }
    }

    pub fn inverse(&self, f: &PrimeField) -> Projectivity {
        Projectivity {
            matrix: normalize_mat(f, adjugate(f, &self.matrix)).expect("nonsingular"),
        }
    }

    pub fn det(&self, f: &PrimeField) -> u32 {
        det(f, &self.matrix)
    }
}

impl fmt::Debug for Projectivity {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(fm, "{:?}", self.matrix)
    }
}

/// The matrix sending `e1, e2, e3, (1,1,1)` to the four given points, or
/// `None` when three of them are collinear.
fn basis_map(f: &PrimeField, pts: &[ProjPoint; 4]) -> Option<Mat> {
    let cols = [pts[0].coords(), pts[1].coords(), pts[2].coords()];
    let a = transpose(&cols);
    let d = det(f, &a);
    if d == 0 {
        return None;
    }
    let s = mat_vec(f, &adjugate(f, &a), pts[3].coords());
    if s.contains(&0) {
        return None;
    }
    let mut out = [[0u32; 3]; 3];
    for j in 0..3 {
        let col = combine(f, s[j], cols[j], 0, cols[j]);
        for i in 0..3 {
            out[i][j] = col[i];
        }
    }
    Some(out)
}

/// The unique projectivity sending `src[i]` to `dst[i]` for `i = 0..4`.
/// Both quadruples must be in general position.
pub fn frame_map(f: &PrimeField, src: &[ProjPoint; 4], dst: &[ProjPoint; 4]) -> Result<Projectivity> {
    let a = basis_map(f, src).ok_or(Error::DegenerateFrame)?;
    let b = basis_map(f, dst).ok_or(Error::DegenerateFrame)?;
    Projectivity::from_elems(f, mat_mul(f, &b, &adjugate(f, &a)))
}
