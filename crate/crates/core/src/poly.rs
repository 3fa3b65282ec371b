//! Homogeneous polynomials in `X, Y, Z` over `F_p`.
//!
//! Coefficients are stored in descending lexicographic monomial order, which
//! for degree 3 is `X³, X²Y, X²Z, XY², XYZ, XZ², Y³, Y²Z, YZ², Z³`.

use crate::geometry::PrimeField;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomPoly {
    degree: usize,
    coeffs: Vec<u32>,
}

/// Exponent triples of all degree-`d` monomials, in storage order.
pub fn monomials(d: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::with_capacity((d + 1) * (d + 2) / 2);
    for a in (0..=d).rev() {
        for b in (0..=d - a).rev() {
            out.push([a, b, d - a - b]);
        }
    }
    out
}

fn index_of(d: usize, e: [usize; 3]) -> usize {
    let before: usize = (e[0] + 1..=d).map(|a| d - a + 1).sum();
    before + (d - e[0] - e[1])
}

/// Value of the monomial `X^a Y^b Z^c` at `v`.
pub(crate) fn monomial_value(f: &PrimeField, e: [usize; 3], v: [u32; 3]) -> u32 {
    (0..3).fold(1, |acc, i| f.mul(acc, f.pow(v[i], e[i] as u64)))
}

impl HomPoly {
    pub fn zero(degree: usize) -> Self {
        HomPoly {
            degree,
            coeffs: vec![0; (degree + 1) * (degree + 2) / 2],
        }
    }

    /// # Panics
    ///
    /// Panics if the coefficient count does not match the degree.
    pub fn from_coeffs(f: &PrimeField, degree: usize, coeffs: &[i64]) -> Self {
        let mut out = Self::zero(degree);
        assert_eq!(coeffs.len(), out.coeffs.len(), "wrong coefficient count");
        for (c, &x) in out.coeffs.iter_mut().zip(coeffs) {
            *c = f.elem(x);
        }
        out
    }

    pub fn from_elems(degree: usize, coeffs: Vec<u32>) -> Self {
        assert_eq!(coeffs.len(), (degree + 1) * (degree + 2) / 2);
        HomPoly { degree, coeffs }
    }

    pub fn linear(coeffs: [u32; 3]) -> Self {
        HomPoly {
            degree: 1,
            coeffs: coeffs.to_vec(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn coeff(&self, e: [usize; 3]) -> u32 {
        self.coeffs[index_of(self.degree, e)]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn eval(&self, f: &PrimeField, v: [u32; 3]) -> u32 {
        monomials(self.degree)
            .into_iter()
            .zip(&self.coeffs)
            .filter(|(_, &c)| c != 0)
            .fold(0, |acc, (e, &c)| f.add(acc, f.mul(c, monomial_value(f, e, v))))
    }

    pub fn partial(&self, f: &PrimeField, var: usize) -> HomPoly {
        if self.degree == 0 {
            return HomPoly::zero(0);
        }
        let mut out = HomPoly::zero(self.degree - 1);
        for (e, &c) in monomials(self.degree).into_iter().zip(&self.coeffs) {
            if e[var] == 0 || c == 0 {
                continue;
            }
            let mut e2 = e;
            e2[var] -= 1;
            let k = f.mul(c, f.elem(e[var] as i64));
            let idx = index_of(out.degree, e2);
            out.coeffs[idx] = f.add(out.coeffs[idx], k);
        }
        out
    }

    pub fn add(&self, f: &PrimeField, other: &HomPoly) -> HomPoly {
        assert_eq!(self.degree, other.degree);
        HomPoly {
            degree: self.degree,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| f.add(a, b)).collect(),
        }
    }

    pub fn scale(&self, f: &PrimeField, k: u32) -> HomPoly {
        HomPoly {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|&a| f.mul(a, k)).collect(),
        }
    }

    pub fn mul(&self, f: &PrimeField, other: &HomPoly) -> HomPoly {
        let mut out = HomPoly::zero(self.degree + other.degree);
        let ma = monomials(self.degree);
        let mb = monomials(other.degree);
        for (ea, &ca) in ma.iter().zip(&self.coeffs) {
            if ca == 0 {
                continue;
            }
            for (eb, &cb) in mb.iter().zip(&other.coeffs) {
                if cb == 0 {
                    continue;
                }
                let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]];
                let idx = index_of(out.degree, e);
                out.coeffs[idx] = f.add(out.coeffs[idx], f.mul(ca, cb));
            }
        }
        out
    }

    /// The polynomial `G(X) = F(M·X)`.
    pub fn compose(&self, f: &PrimeField, m: &[[u32; 3]; 3]) -> HomPoly {
        let forms = [0, 1, 2].map(|i| HomPoly::linear(m[i]));
        let mut out = HomPoly::zero(self.degree);
        for (e, &c) in monomials(self.degree).iter().zip(&self.coeffs) {
            if c == 0 {
                continue;
            }
            let mut term = HomPoly {
                degree: 0,
                coeffs: vec![c],
            };
            for (i, form) in forms.iter().enumerate() {
                for _ in 0..e[i] {
                    term = term.mul(f, form);
                }
            }
            out = out.add(f, &term);
        }
        out
    }

    /// Scales so that the first nonzero coefficient is `1`.
    pub fn normalized(&self, f: &PrimeField) -> Option<HomPoly> {
        let lead = *self.coeffs.iter().find(|&&c| c != 0)?;
        Some(self.scale(f, f.inv(lead)))
    }
}
