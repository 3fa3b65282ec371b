//! Involutory homologies attached to nets: construction, the explicit maps of
//! triangular nets and the group they generate, and the exhaustive search for
//! involutions preserving a net with center at a net point.

pub mod fixtures;

use std::collections::{HashSet, VecDeque};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::geometry::{cross, dot, frame_map, incident, join, meet, PrimeField, ProjLine, ProjPoint, Projectivity};
use crate::nets::{verify_net, DualThreeNet};
use crate::{linalg, Error, Result};

/// A perspectivity given by its matrix, center and axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Homology {
    pub map: Projectivity,
    pub center: ProjPoint,
    pub axis: ProjLine,
    pub involutory: bool,
}

impl Homology {
    /// Recovers center and axis of an involutory homology from its matrix,
    /// or `None` if the map is not one (with rational center).
    pub fn from_involution(f: &PrimeField, map: &Projectivity) -> Option<Homology> {
        let m = map.matrix();
        let sq = map.compose(f, map);
        if !sq.is_identity() || map.is_identity() {
            return None;
        }
        // the normalized M has M² = c·I; rescale by √c so that M² = I
        let c = (0..3).fold(0, |acc, k| f.add(acc, f.mul(m[0][k], m[k][0])));
        let s = f.inv(f.sqrt(c)?);
        let eig = |sign: u32| {
            let rows: Vec<Vec<u32>> = (0..3)
                .map(|i| (0..3).map(|j| f.sub(f.mul(s, m[i][j]), if i == j { sign } else { 0 })).collect())
                .collect();
            linalg::nullspace(f, &rows, 3)
        };
        let (plus, minus) = (eig(1), eig(f.neg(1)));
        let (axis_space, center_space) = match (plus.len(), minus.len()) {
            (2, 1) => (plus, minus),
            (1, 2) => (minus, plus),
            _ => return None,
        };
        let to3 = |v: &Vec<u32>| [v[0], v[1], v[2]];
        let center = ProjPoint::from_elems(f, to3(&center_space[0])).ok()?;
        let axis = ProjLine::from_elems(f, cross(f, to3(&axis_space[0]), to3(&axis_space[1]))).ok()?;
        Some(Homology {
            map: *map,
            center,
            axis,
            involutory: true,
        })
    }
}

/// The involution fixing `axis` pointwise with the given center:
/// `X ↦ (a·C)·X − 2·(a·X)·C`.
pub fn involutory_homology(f: &PrimeField, center: &ProjPoint, axis: &ProjLine) -> Result<Homology> {
    let (c, a) = (center.coords(), axis.coeffs());
    let ac = dot(f, a, c);
    if ac == 0 {
        return Err(Error::CenterOnAxis);
    }
    let mut m = [[0u32; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let diag = if i == j { ac } else { 0 };
            m[i][j] = f.sub(diag, f.mul(2, f.mul(c[i], a[j])));
        }
    }
    Ok(Homology {
        map: Projectivity::from_elems(f, m)?,
        center: *center,
        axis: *axis,
        involutory: true,
    })
}

fn fundamental_lines(f: &PrimeField) -> [ProjLine; 3] {
    [[0, 1, 0], [1, 0, 0], [0, 0, 1]].map(|l| ProjLine::from_elems(f, l).expect("nonzero"))
}

/// Whether `Λ1 ⊂ {Y=0}`, `Λ2 ⊂ {X=0}`, `Λ3 ⊂ {Z=0}`, avoiding the vertices.
fn in_fundamental_frame(net: &DualThreeNet) -> bool {
    let f = net.field();
    let lines = fundamental_lines(f);
    net.components().iter().zip(&lines).all(|(comp, line)| {
        comp.iter()
            .all(|p| incident(f, p, line) && p.coords().iter().filter(|&&x| x == 0).count() == 1)
    })
}

/// A projectivity moving a triangular net into the frame where
/// `Λ1 ⊂ {Y=0}`, `Λ2 ⊂ {X=0}`, `Λ3 ⊂ {Z=0}`, `Λ1[0] = (1,0,1)` and
/// `Λ2[0] = (0,1,1)`.
pub fn fundamental_frame(net: &DualThreeNet) -> Result<Projectivity> {
    let f = net.field();
    if net.order() < 2 {
        return Err(Error::NotTriangular);
    }
    let mut lines = Vec::with_capacity(3);
    for comp in net.components() {
        let l = join(f, &comp[0], &comp[1])?;
        if !comp.iter().all(|p| incident(f, p, &l)) {
            return Err(Error::NotTriangular);
        }
        lines.push(l);
    }
    let a = meet(f, &lines[0], &lines[2]).map_err(|_| Error::NotTriangular)?;
    let b = meet(f, &lines[1], &lines[2]).map_err(|_| Error::NotTriangular)?;
    let c = meet(f, &lines[0], &lines[1]).map_err(|_| Error::NotTriangular)?;
    let (p1, p2) = (net.component(0)[0], net.component(1)[0]);
    let unit = meet(f, &join(f, &p1, &b)?, &join(f, &p2, &a)?)?;
    let dst = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]].map(|v| ProjPoint::from_elems(f, v).expect("nonzero"));
    frame_map(f, &[a, b, c, unit], &dst).map_err(|_| Error::NotTriangular)
}

/// The explicit involutions of a triangular net in the fundamental frame,
/// one per net point, listed by position in its component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangularHomologies {
    /// Centers `(ξ,0,1) ∈ Λ1`: rows `(0,0,ξ²), (0,-ξ,0), (1,0,0)`.
    pub phi: Vec<Homology>,
    /// Centers `(0,η,1) ∈ Λ2`: rows `(-η,0,0), (0,0,η²), (0,1,0)`.
    pub psi: Vec<Homology>,
    /// Centers `(1,-ζ,0) ∈ Λ3`: rows `(0,1,0), (ζ²,0,0), (0,0,ζ)`.
    pub theta: Vec<Homology>,
}

pub fn triangular_homologies(net: &DualThreeNet) -> Result<TriangularHomologies> {
    if !in_fundamental_frame(net) {
        return Err(Error::NotTriangular);
    }
    let f = net.field();
    let build = |m: [[u32; 3]; 3]| -> Result<Homology> {
        let map = Projectivity::from_elems(f, m)?;
        Homology::from_involution(f, &map).ok_or_else(|| Error::Internal(format!("{map:?} is not an involutory homology")))
    };
    let (neg, sq) = (|x: u32| f.neg(x), |x: u32| f.mul(x, x));
    let phi = net.component(0).iter().map(|p| {
        let [x, _, z] = p.coords();
        let xi = f.div(x, z);
        build([[0, 0, sq(xi)], [0, neg(xi), 0], [1, 0, 0]])
    });
    let psi = net.component(1).iter().map(|p| {
        let [_, y, z] = p.coords();
        let eta = f.div(y, z);
        build([[neg(eta), 0, 0], [0, 0, sq(eta)], [0, 1, 0]])
    });
    let theta = net.component(2).iter().map(|p| {
        let [x, y, _] = p.coords();
        let zeta = f.neg(f.div(y, x));
        build([[0, 1, 0], [sq(zeta), 0, 0], [0, 0, zeta]])
    });
    Ok(TriangularHomologies {
        phi: phi.collect::<Result<_>>()?,
        psi: psi.collect::<Result<_>>()?,
        theta: theta.collect::<Result<_>>()?,
    })
}

/// Closure of a set of projectivities under composition, or `None` once it
/// exceeds `cap` elements.
pub fn generated_group(f: &PrimeField, gens: &[Projectivity], cap: usize) -> Option<HashSet<Projectivity>> {
    let mut seen: HashSet<Projectivity> = HashSet::from([Projectivity::identity()]);
    let mut queue: VecDeque<Projectivity> = VecDeque::from([Projectivity::identity()]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.compose(f, g);
            if seen.insert(y) {
                if seen.len() > cap {
                    return None;
                }
                queue.push_back(y);
            }
        }
    }
    Some(seen)
}

/// The two cyclic groups `Φ1 = {φ_ξ φ_ξ'}` and `Φ2 = {ψ_η ψ_η'}`.
pub fn phi_groups(net: &DualThreeNet) -> Result<(Vec<Projectivity>, Vec<Projectivity>)> {
    let f = net.field();
    let h = triangular_homologies(net)?;
    let products = |list: &[Homology]| {
        let set: HashSet<Projectivity> = list
            .iter()
            .flat_map(|a| list.iter().map(move |b| a.map.compose(f, &b.map)))
            .collect();
        let mut v: Vec<Projectivity> = set.into_iter().collect();
        v.sort();
        v
    };
    Ok((products(&h.phi), products(&h.psi)))
}

/// Order of `Θ = ⟨Φ1, Φ2⟩` for a triangular net in the fundamental frame.
pub fn theta_order(net: &DualThreeNet) -> Result<usize> {
    let f = net.field();
    let (phi1, phi2) = phi_groups(net)?;
    let gens: Vec<Projectivity> = phi1.into_iter().chain(phi2).collect();
    let cap = 4 * net.order() * net.order();
    generated_group(f, &gens, cap)
        .map(|g| g.len())
        .ok_or_else(|| Error::Internal(format!("Θ exceeds {cap} elements")))
}

/// An involutory homology preserving a net, with its center in component
/// `component` and the induced permutation of the components.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NetInvolution {
    pub homology: Homology,
    pub component: usize,
    pub permutation: [usize; 3],
}

/// The harmonic conjugate of `p` with respect to `b` and `c` on their line.
fn harmonic_conjugate(f: &PrimeField, p: &ProjPoint, b: &ProjPoint, c: &ProjPoint) -> Option<ProjPoint> {
    let (pv, bv, cv) = (p.coords(), b.coords(), c.coords());
    // solve p = s·b + t·c from two independent coordinates
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let d = f.sub(f.mul(bv[i], cv[j]), f.mul(bv[j], cv[i]));
        if d == 0 {
            continue;
        }
        let s = f.div(f.sub(f.mul(pv[i], cv[j]), f.mul(pv[j], cv[i])), d);
        let t = f.div(f.sub(f.mul(bv[i], pv[j]), f.mul(bv[j], pv[i])), d);
        let h = crate::geometry::combine(f, s, bv, f.neg(t), cv);
        return ProjPoint::from_elems(f, h).ok();
    }
    None
}

/// The involution with center `p` (a point of component `i`) that swaps the
/// other two components, if it exists. Its action on a line through `p` is
/// forced by the net, which determines the axis through harmonic conjugates.
fn involution_at(net: &DualThreeNet, i: usize, p: &ProjPoint) -> Option<NetInvolution> {
    let f = net.field();
    let (j, k) = match i {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    let partner = |b: &ProjPoint| -> Option<ProjPoint> {
        let line = join(f, p, b).ok()?;
        net.component(k).iter().copied().find(|q| incident(f, q, &line))
    };
    let mut axis_points = Vec::with_capacity(2);
    for b in net.component(j).iter().take(2) {
        let c = partner(b)?;
        axis_points.push(harmonic_conjugate(f, p, b, &c)?);
    }
    let axis = join(f, &axis_points[0], &axis_points[1]).ok()?;
    let homology = involutory_homology(f, p, &axis).ok()?;
    let comps = net.components();
    let mut permutation = [0, 1, 2];
    permutation.swap(j, k);
    let preserved = (0..3).all(|c| {
        let target: HashSet<&ProjPoint> = comps[permutation[c]].iter().collect();
        comps[c].iter().all(|q| target.contains(&homology.map.apply(f, q)))
    });
    preserved.then_some(NetInvolution {
        homology,
        component: i,
        permutation,
    })
}

/// Every involutory homology with center at a net point that maps the net
/// onto itself, ordered by component and then by position of the center.
pub fn net_preserving_involutions(net: &DualThreeNet) -> Result<Vec<NetInvolution>> {
    let report = verify_net(net)?;
    if !report.is_net {
        return Err(Error::NotANet(format!("{} violating line/component pairs", report.violations.len())));
    }
    if net.order() < 2 {
        return Ok(Vec::new());
    }
    let centers: Vec<(usize, ProjPoint)> = (0..3)
        .flat_map(|i| net.component(i).iter().map(move |p| (i, *p)))
        .collect();
    Ok(centers
        .par_iter()
        .filter_map(|(i, p)| involution_at(net, *i, p))
        .collect())
}
