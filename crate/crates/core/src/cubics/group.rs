use std::collections::HashMap;

use serde::Serialize;

use super::{classify_cubic, tangential_point, third_intersection, Cubic, CubicTag};
use crate::geometry::{PrimeField, ProjPoint};
use crate::groups::FiniteGroup;
use crate::{Error, Result};

/// The abelian group of smooth rational points of a nonsingular or nodal
/// cubic, with an inflection point as identity. Points are indexed with the
/// identity at `0` and the rest in ascending order.
#[derive(Clone, Debug, Serialize)]
pub struct CubicGroup {
    field: PrimeField,
    curve: Cubic,
    points: Vec<ProjPoint>,
    table: Vec<Vec<usize>>,
    #[serde(skip)]
    index: HashMap<ProjPoint, usize>,
}

impl CubicGroup {
    pub fn new(f: &PrimeField, curve: &Cubic, identity: &ProjPoint) -> Result<Self> {
        match classify_cubic(f, curve).tag {
            CubicTag::NonsingularIrreducible | CubicTag::NodalIrreducible => {}
            CubicTag::CuspidalIrreducible => return Err(Error::CuspidalUnsupported),
            _ => return Err(Error::NotIrreducible),
        }
        if tangential_point(f, curve, identity)? != *identity {
            return Err(Error::NotAnInflection(identity.coords()));
        }
        let mut points = vec![*identity];
        points.extend(
            curve
                .rational_points(f)
                .into_iter()
                .filter(|p| p != identity && curve.is_smooth_at(f, p)),
        );
        let index: HashMap<ProjPoint, usize> = points.iter().enumerate().map(|(i, p)| (*p, i)).collect();
        let n = points.len();
        let mut table = vec![vec![0; n]; n];
        for i in 0..n {
            for j in i..n {
                let r = third_intersection(f, curve, &points[i], &points[j])?;
                let s = third_intersection(f, curve, identity, &r)?;
                let k = *index.get(&s).ok_or_else(|| Error::Internal(format!("sum {s:?} is not a smooth point")))?;
                table[i][j] = k;
                table[j][i] = k;
            }
        }
        Ok(CubicGroup {
            field: *f,
            curve: *curve,
            points,
            table,
            index,
        })
    }

    /// Uses `(0, 1, 0)` as identity when it is an inflection of the curve,
    /// otherwise the smallest rational inflection.
    pub fn with_default_identity(f: &PrimeField, curve: &Cubic) -> Result<Self> {
        let infinity = ProjPoint::from_elems(f, [0, 1, 0])?;
        let o = if curve.is_smooth_at(f, &infinity) && tangential_point(f, curve, &infinity)? == infinity {
            infinity
        } else {
            *super::inflection_points(f, curve)
                .first()
                .ok_or_else(|| Error::InvalidInput("the curve has no rational inflection".into()))?
        };
        Self::new(f, curve, &o)
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn curve(&self) -> &Cubic {
        &self.curve
    }

    pub fn identity(&self) -> ProjPoint {
        self.points[0]
    }

    pub fn order(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    pub fn point(&self, i: usize) -> ProjPoint {
        self.points[i]
    }

    pub fn index_of(&self, pt: &ProjPoint) -> Option<usize> {
        self.index.get(pt).copied()
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn add(&self, i: usize, j: usize) -> usize {
        self.table[i][j]
    }

    pub fn neg(&self, i: usize) -> usize {
        self.table[i].iter().position(|&k| k == 0).expect("inverse exists")
    }

    pub fn add_points(&self, p: &ProjPoint, q: &ProjPoint) -> Result<ProjPoint> {
        let i = self.index_of(p).ok_or(Error::PointNotOnCurve(p.coords()))?;
        let j = self.index_of(q).ok_or(Error::PointNotOnCurve(q.coords()))?;
        Ok(self.points[self.add(i, j)])
    }

    pub fn multiple(&self, i: usize, k: usize) -> usize {
        (0..k).fold(0, |acc, _| self.add(acc, i))
    }

    pub fn element_order(&self, i: usize) -> usize {
        let mut x = i;
        let mut k = 1;
        while x != 0 {
            x = self.add(x, i);
            k += 1;
        }
        k
    }

    /// The subgroup generated by the given indices, sorted.
    pub fn subgroup_generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut members = vec![0usize];
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut frontier = vec![0usize];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.add(x, g);
                if !seen[y] {
                    seen[y] = true;
                    members.push(y);
                    frontier.push(y);
                }
            }
        }
        members.sort_unstable();
        members
    }

    /// The `d`-torsion subgroup `{g : d·g = 0}`, sorted.
    pub fn torsion(&self, d: usize) -> Vec<usize> {
        (0..self.order()).filter(|&i| self.multiple(i, d) == 0).collect()
    }

    pub fn to_finite_group(&self) -> FiniteGroup {
        FiniteGroup::from_table(self.table.clone(), 0).expect("the chord-tangent law gives a group")
    }
}

/// Invariant factors `(a, b)` with `a | b` of the group of smooth points,
/// together with generators of orders `b` and `a` (only the first when the
/// group is cyclic).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupStructure {
    pub invariants: (usize, usize),
    pub generators: Vec<ProjPoint>,
}

pub fn group_structure(f: &PrimeField, curve: &Cubic, identity: &ProjPoint) -> Result<GroupStructure> {
    let g = CubicGroup::new(f, curve, identity)?;
    let n = g.order();
    let orders: Vec<usize> = (0..n).map(|i| g.element_order(i)).collect();
    let b = *orders.iter().max().expect("nonempty");
    let a = n / b;
    let g2 = orders.iter().position(|&o| o == b).expect("exponent is attained");
    if a == 1 {
        return Ok(GroupStructure {
            invariants: (1, b),
            generators: vec![g.point(g2)],
        });
    }
    let cyclic = g.subgroup_generated(&[g2]);
    let g1 = (0..n)
        .filter(|&i| orders[i] == a)
        .find(|&i| g.subgroup_generated(&[i]).iter().all(|x| *x == 0 || cyclic.binary_search(x).is_err()))
        .ok_or_else(|| Error::Internal("group of points has rank above two".into()))?;
    if g.subgroup_generated(&[g1, g2]).len() != n || !b.is_multiple_of(a) {
        return Err(Error::Internal("group of points has rank above two".into()));
    }
    Ok(GroupStructure {
        invariants: (a, b),
        generators: vec![g.point(g2), g.point(g1)],
    })
}
