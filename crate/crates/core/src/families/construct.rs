use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::cubics::{Cubic, CubicGroup};
use crate::geometry::{standard_conic_point, PrimeField, ProjPoint};
use crate::groups::{subgroup_as_group, subgroups, FiniteGroup, GroupSpec};
use crate::nets::{verify_net, DualThreeNet, Labeling};
use crate::{Error, Result};

fn cyclic_labeling(n: usize) -> Labeling {
    Labeling::identity(FiniteGroup::make(&GroupSpec::Cyclic(n)).expect("n ≥ 1"))
}

fn nonzero(f: &PrimeField, x: i64, what: &str) -> Result<u32> {
    let x = f.elem(x);
    if x == 0 {
        return Err(Error::InvalidInput(format!("{what} must be nonzero")));
    }
    Ok(x)
}

/// The net on the coordinate triangle with `Λ1 = {(ξ,0,1) : ξ ∈ aH}`,
/// `Λ2 = {(0,η,1) : η ∈ bH}`, `Λ3 = {(1,-ζ,0) : ζ ∈ cH}` where `c = b/a` and
/// `H` is the order-`n` subgroup of `F_p^*`. The three points are collinear
/// iff `ξζ = η`. Positions are ordered so that the identity labeling by `C_n`
/// is realizing: `Λ1[i] = a·h^(-i)`, `Λ2[j] = b·h^j`, `Λ3[k] = c·h^k`.
pub fn construct_triangular(f: &PrimeField, n: usize, a: i64, b: i64) -> Result<DualThreeNet> {
    let h = f.mult_subgroup(n)?;
    let (a, b) = (nonzero(f, a, "a")?, nonzero(f, b, "b")?);
    let c = f.div(b, a);
    let comps = [
        (0..n).map(|i| ProjPoint::from_elems(f, [f.mul(a, h[(n - i) % n]), 0, 1])).collect::<Result<_>>()?,
        (0..n).map(|j| ProjPoint::from_elems(f, [0, f.mul(b, h[j]), 1])).collect::<Result<_>>()?,
        (0..n).map(|k| ProjPoint::from_elems(f, [1, f.neg(f.mul(c, h[k])), 0])).collect::<Result<_>>()?,
    ];
    DualThreeNet::new(*f, comps, Some(cyclic_labeling(n)))
}

/// Two components on the conic `Y² = XZ` (parameters in `uH` and `vH`) and
/// one on the chord `Y = 0`: the centers `(1,0,-c)`, `c ∈ uvH`. The chord of
/// parameters `x, y` passes through the center `c` iff `xy = c`.
pub fn construct_conic_line(f: &PrimeField, n: usize, u: i64, v: i64) -> Result<DualThreeNet> {
    let h = f.mult_subgroup(n)?;
    if n < 3 {
        return Err(Error::InvalidInput("a conic-line net needs n ≥ 3".into()));
    }
    let (u, v) = (nonzero(f, u, "u")?, nonzero(f, v, "v")?);
    if h.contains(&f.div(u, v)) {
        return Err(Error::CosetClash);
    }
    let uv = f.mul(u, v);
    let comps = [
        (0..n).map(|i| ProjPoint::from_elems(f, [1, 0, f.neg(f.mul(uv, h[i]))])).collect::<Result<_>>()?,
        (0..n).map(|j| Ok(standard_conic_point(f, Some(f.mul(u, h[(n - j) % n]))))).collect::<Result<_>>()?,
        (0..n).map(|k| Ok(standard_conic_point(f, Some(f.mul(v, h[k]))))).collect::<Result<_>>()?,
    ];
    DualThreeNet::new(*f, comps, Some(cyclic_labeling(n)))
}

/// How to pick the subgroup `T` of the group of points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SubgroupSpec {
    /// `{P : d·P = O}`.
    Torsion(usize),
    /// The subgroup generated by the given points.
    Generated(Vec<ProjPoint>),
    /// The first subgroup of this order, subgroups being ordered by size and
    /// then by their sorted point indices.
    Order(usize),
}

/// Resolves a subgroup spec to sorted point indices of `group`.
pub fn resolve_subgroup(group: &CubicGroup, spec: &SubgroupSpec) -> Result<Vec<usize>> {
    match spec {
        SubgroupSpec::Torsion(d) => Ok(group.torsion(*d)),
        SubgroupSpec::Generated(pts) => {
            let gens = pts
                .iter()
                .map(|p| group.index_of(p).ok_or(Error::PointNotOnCurve(p.coords())))
                .collect::<Result<Vec<_>>>()?;
            Ok(group.subgroup_generated(&gens))
        }
        SubgroupSpec::Order(n) => subgroups(&group.to_finite_group())
            .into_iter()
            .find(|s| s.len() == *n)
            .ok_or_else(|| Error::NoSuchSubgroup(format!("no subgroup of order {n} among {} points", group.order()))),
    }
}

/// Offsets `(g1, g2)` with `T+g1`, `T+g2`, `T-g1-g2` pairwise distinct,
/// smallest first; `None` when the quotient is too small.
pub fn default_offsets(group: &CubicGroup, t: &[usize]) -> Option<(ProjPoint, ProjPoint)> {
    let n = group.order();
    let coset_of = |x: usize| t.iter().map(|&s| group.add(s, x)).min().expect("nonempty");
    for g1 in 0..n {
        for g2 in 0..n {
            let g3 = group.neg(group.add(g1, g2));
            let (c1, c2, c3) = (coset_of(g1), coset_of(g2), coset_of(g3));
            if c1 != c2 && c2 != c3 && c1 != c3 {
                return Some((group.point(g1), group.point(g2)));
            }
        }
    }
    None
}

/// The net `Λi = T + gi` on a nonsingular or nodal cubic, with
/// `g3 = -g1 - g2`. Labeled by `T`: `α(t) = t + g1`, `β(t) = t + g2`,
/// `γ(t) = -t + g3`, so that collinear triples sum to zero.
pub fn construct_algebraic(
    f: &PrimeField,
    curve: &Cubic,
    identity: Option<ProjPoint>,
    subgroup: &SubgroupSpec,
    g1: &ProjPoint,
    g2: &ProjPoint,
) -> Result<DualThreeNet> {
    let group = match identity {
        Some(o) => CubicGroup::new(f, curve, &o)?,
        None => CubicGroup::with_default_identity(f, curve)?,
    };
    construct_algebraic_in(&group, subgroup, g1, g2)
}

/// As [`construct_algebraic`], for an already computed group of points.
pub fn construct_algebraic_in(group: &CubicGroup, subgroup: &SubgroupSpec, g1: &ProjPoint, g2: &ProjPoint) -> Result<DualThreeNet> {
    let t = resolve_subgroup(group, subgroup)?;
    let i1 = group.index_of(g1).ok_or(Error::PointNotOnCurve(g1.coords()))?;
    let i2 = group.index_of(g2).ok_or(Error::PointNotOnCurve(g2.coords()))?;
    let i3 = group.neg(group.add(i1, i2));
    let comps: [Vec<ProjPoint>; 3] = [
        t.iter().map(|&s| group.point(group.add(s, i1))).collect(),
        t.iter().map(|&s| group.point(group.add(s, i2))).collect(),
        t.iter().map(|&s| group.point(group.add(group.neg(s), i3))).collect(),
    ];
    let mut seen = HashSet::new();
    if !comps.iter().flatten().all(|p| seen.insert(*p)) {
        return Err(Error::CosetsOverlap);
    }
    let sub = subgroup_as_group(&group.to_finite_group(), &t)?;
    DualThreeNet::new(*group.field(), comps, Some(Labeling::identity(sub)))
}

/// Coset parameters of a tetrahedron net: the six half-sets are
/// `x ∈ a1·H`, `εx ∈ b1·H` (first component), `y ∈ a2·H`, `εy ∈ a1·b1·a2·H`
/// (second), `z ∈ a1·a2·H`, `εz ∈ b1·a2·H` (third).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TetraCosets {
    pub a1: i64,
    pub a2: i64,
    pub b1: i64,
}

impl TetraCosets {
    /// Representatives `1 ≤ b < p` of the cosets of `H` in `F_p^*`, each the
    /// smallest element of its coset.
    pub fn coset_representatives(f: &PrimeField, n: usize) -> Result<Vec<u32>> {
        let h = f.mult_subgroup(n)?;
        let mut seen = vec![false; f.p() as usize];
        let mut reps = Vec::new();
        for x in 1..f.p() {
            if !seen[x as usize] {
                reps.push(x);
                for &y in &h {
                    seen[f.mul(x, y) as usize] = true;
                }
            }
        }
        Ok(reps)
    }
}

/// Projection from `(1,1,1,1)` onto the plane `X4 = 0`.
fn project(f: &PrimeField, q: [u32; 4]) -> Result<ProjPoint> {
    ProjPoint::from_elems(f, [f.sub(q[0], q[3]), f.sub(q[1], q[3]), f.sub(q[2], q[3])])
        .map_err(|_| Error::DegenerateProjection("a point projects from the center".into()))
}

/// The order-`2n` net of tetrahedron type realizing `D_n`, obtained by
/// projecting points on the edges of the fundamental tetrahedron of `PG(3,p)`
/// from `(1,1,1,1)`:
/// `x1 = (x,0,1,0)`, `(εx)1 = (0,1,0,x)`, `y2 = (1,y,0,0)`, `(εy)2 = (0,0,1,y)`,
/// `z3 = (0,-z,1,0)`, `(εz)3 = (1,0,0,-z)`. The rotation `r^k` is labeled by
/// `x = a1·g^k` and the reflection `s·r^k` by `εx` with `x = b1·g^k`, where
/// `g` generates `H`; products follow `z = xy`, `εz = (εx)y`, `εz = x(εy)`,
/// `z = (εx)(εy)`.
///
/// The projection can create collinear triples that do not exist in space
/// (for instance `(εx)1, (εy)2, (εz)3` whenever `z = x + y - 1`), so the
/// result is checked and rejected with `DegenerateProjection` unless it is a
/// net. Without explicit cosets, `a1 = a2 = -1` and `b1` is the smallest
/// coset representative giving a net.
pub fn construct_tetrahedron(f: &PrimeField, n: usize, cosets: Option<TetraCosets>) -> Result<DualThreeNet> {
    if n < 3 {
        return Err(Error::InvalidInput("a tetrahedron net needs n ≥ 3".into()));
    }
    if let Some(c) = cosets {
        return tetrahedron_with(f, n, c);
    }
    for b1 in TetraCosets::coset_representatives(f, n)? {
        let c = TetraCosets { a1: -1, a2: -1, b1: b1 as i64 };
        match tetrahedron_with(f, n, c) {
            Err(Error::DegenerateProjection(_)) => continue,
            other => return other,
        }
    }
    Err(Error::DegenerateProjection(format!(
        "no coset b1·H with a1 = a2 = -1 gives a net of order {} over F_{}",
        2 * n,
        f.p()
    )))
}

fn tetrahedron_with(f: &PrimeField, n: usize, c: TetraCosets) -> Result<DualThreeNet> {
    let h = f.mult_subgroup(n)?;
    let a1 = nonzero(f, c.a1, "a1")?;
    let a2 = nonzero(f, c.a2, "a2")?;
    let b1 = nonzero(f, c.b1, "b1")?;
    let (a3, b2, b3) = (f.mul(a1, a2), f.mul(f.mul(a1, b1), a2), f.mul(b1, a2));
    let param = |base: u32, k: usize| f.mul(base, h[k]);
    let mut comps: [Vec<ProjPoint>; 3] = Default::default();
    for k in 0..n {
        comps[0].push(project(f, [param(a1, k), 0, 1, 0])?);
        comps[1].push(project(f, [1, param(a2, k), 0, 0])?);
        comps[2].push(project(f, [0, f.neg(param(a3, k)), 1, 0])?);
    }
    for k in 0..n {
        comps[0].push(project(f, [0, 1, 0, param(b1, k)])?);
        comps[1].push(project(f, [0, 0, 1, param(b2, k)])?);
        comps[2].push(project(f, [1, 0, 0, f.neg(param(b3, k))])?);
    }
    let vertices = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]].map(|v| ProjPoint::from_elems(f, v).expect("nonzero"));
    let mut seen = HashSet::new();
    for p in comps.iter().flatten() {
        if vertices.contains(p) {
            return Err(Error::DegenerateProjection(format!("{p:?} is a vertex of the quadrangle")));
        }
        if !seen.insert(*p) {
            return Err(Error::DegenerateProjection(format!("two points project onto {p:?}")));
        }
    }
    // element r^k sits at position k, s·r^k (index (-k mod n) + n) at n + k
    let mut position = vec![0; 2 * n];
    for k in 0..n {
        position[k] = k;
        position[(n - k) % n + n] = n + k;
    }
    let labeling = Labeling {
        group: FiniteGroup::make(&GroupSpec::Dihedral(n))?,
        alpha: position.clone(),
        beta: position.clone(),
        gamma: position,
        convention: Default::default(),
    };
    let net = DualThreeNet::new(*f, comps, Some(labeling))?;
    if !verify_net(&net)?.is_net {
        return Err(Error::DegenerateProjection(format!(
            "cosets {c:?} produce collinear triples absent from the spatial configuration"
        )));
    }
    Ok(net)
}
