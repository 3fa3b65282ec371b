//! Dual 3-nets: the data structure, axiom verification, quasigroup
//! extraction, group labelings and subnets cut out by subgroup cosets.

mod subnets;
mod verify;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

pub use subnets::{h_member_subnets, Subnet, SubnetMode};
pub use verify::{extract_quasigroup, identify_realized_group, verify_net, NetReport, Violation};

use crate::geometry::{PrimeField, ProjPoint, Projectivity};
use crate::groups::FiniteGroup;
use crate::{Error, Result};

/// How a labeling encodes collinearity.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Convention {
    /// `α(a), β(b), γ(c)` collinear iff `a·b = c`.
    #[default]
    Natural,
    /// `α(a), β(b), γ(c)` collinear iff `a·b·c = e`.
    Collinear,
}

impl Convention {
    fn is_natural(&self) -> bool {
        *self == Convention::Natural
    }
}

/// Bijections from group elements to positions in the three components:
/// element `g` is the point `Λ1[alpha[g]]`, `Λ2[beta[g]]`, `Λ3[gamma[g]]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Labeling {
    pub group: FiniteGroup,
    pub alpha: Vec<usize>,
    pub beta: Vec<usize>,
    pub gamma: Vec<usize>,
    #[serde(default, skip_serializing_if = "Convention::is_natural")]
    pub convention: Convention,
}

fn is_permutation(v: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n];
    v.len() == n && v.iter().all(|&x| x < n && !std::mem::replace(&mut seen[x], true))
}

impl Labeling {
    /// The labeling in which element `g` sits at position `g` of every
    /// component.
    pub fn identity(group: FiniteGroup) -> Self {
        let id: Vec<usize> = (0..group.order()).collect();
        Labeling {
            group,
            alpha: id.clone(),
            beta: id.clone(),
            gamma: id,
            convention: Convention::Natural,
        }
    }

    fn validate(&self, n: usize) -> Result<()> {
        if self.group.order() != n {
            return Err(Error::InvalidLabeling(format!(
                "group of order {} labels a net of order {n}",
                self.group.order()
            )));
        }
        for (name, map) in [("alpha", &self.alpha), ("beta", &self.beta), ("gamma", &self.gamma)] {
            if !is_permutation(map, n) {
                return Err(Error::InvalidLabeling(format!("{name} is not a bijection")));
            }
        }
        Ok(())
    }

    /// The position in the third component expected for the pair `(a, b)`.
    pub fn third(&self, a: usize, b: usize) -> usize {
        let ab = self.group.mul(a, b);
        match self.convention {
            Convention::Natural => self.gamma[ab],
            Convention::Collinear => self.gamma[self.group.inv(ab)],
        }
    }
}

/// Switches between the natural and the collinear convention by composing
/// `γ` with inversion. Applying it twice gives back the original labeling.
pub fn collinear_relabel(labeling: &Labeling) -> Labeling {
    let g = &labeling.group;
    let gamma = (0..g.order()).map(|c| labeling.gamma[g.inv(c)]).collect();
    Labeling {
        gamma,
        convention: match labeling.convention {
            Convention::Natural => Convention::Collinear,
            Convention::Collinear => Convention::Natural,
        },
        ..labeling.clone()
    }
}

/// Three pairwise disjoint components of equal size `n`, with an optional
/// labeling by a group of order `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "NetRepr", into = "NetRepr")]
pub struct DualThreeNet {
    field: PrimeField,
    components: [Vec<ProjPoint>; 3],
    labeling: Option<Labeling>,
}

#[derive(Serialize, Deserialize)]
struct NetRepr {
    p: u64,
    components: Vec<Vec<[i64; 3]>>,
    #[serde(default)]
    labeling: Option<Labeling>,
}

impl TryFrom<NetRepr> for DualThreeNet {
    type Error = Error;

    fn try_from(r: NetRepr) -> Result<Self> {
        let f = PrimeField::new(r.p)?;
        let comps: Vec<Vec<ProjPoint>> = r
            .components
            .iter()
            .map(|c| c.iter().map(|&x| ProjPoint::new(&f, x)).collect::<Result<_>>())
            .collect::<Result<_>>()?;
        let comps: [Vec<ProjPoint>; 3] = comps
            .try_into()
            .map_err(|_| Error::InvalidInput("a net has exactly three components".into()))?;
        DualThreeNet::new(f, comps, r.labeling)
    }
}

impl From<DualThreeNet> for NetRepr {
    fn from(net: DualThreeNet) -> Self {
        NetRepr {
            p: net.field.p() as u64,
            components: net
                .components
                .iter()
                .map(|c| c.iter().map(|pt| pt.coords().map(i64::from)).collect())
                .collect(),
            labeling: net.labeling,
        }
    }
}

impl DualThreeNet {
    /// Checks sizes, duplicates, disjointness and the shape of the labeling.
    /// The net axioms themselves are checked by [`verify_net`].
    pub fn new(field: PrimeField, components: [Vec<ProjPoint>; 3], labeling: Option<Labeling>) -> Result<Self> {
        let n = components[0].len();
        if n == 0 || components.iter().any(|c| c.len() != n) {
            return Err(Error::SizeMismatch);
        }
        let mut owner: HashMap<ProjPoint, usize> = HashMap::with_capacity(3 * n);
        for (i, comp) in components.iter().enumerate() {
            for pt in comp {
                if !pt.is_valid_for(&field) {
                    return Err(Error::InvalidInput(format!("{pt:?} is not a normalized point over F_{}", field.p())));
                }
                match owner.insert(*pt, i) {
                    Some(j) if j == i => {
                        return Err(Error::DuplicatePoint {
                            component: i,
                            point: pt.coords(),
                        })
                    }
                    Some(_) => return Err(Error::ComponentsOverlap(pt.coords())),
                    None => {}
                }
            }
        }
        if let Some(l) = &labeling {
            l.validate(n)?;
        }
        Ok(DualThreeNet {
            field,
            components,
            labeling,
        })
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn order(&self) -> usize {
        self.components[0].len()
    }

    pub fn components(&self) -> &[Vec<ProjPoint>; 3] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &[ProjPoint] {
        &self.components[i]
    }

    pub fn labeling(&self) -> Option<&Labeling> {
        self.labeling.as_ref()
    }

    pub fn with_labeling(self, labeling: Option<Labeling>) -> Result<Self> {
        DualThreeNet::new(self.field, self.components, labeling)
    }

    /// All `3n` points, component by component.
    pub fn points(&self) -> Vec<ProjPoint> {
        self.components.iter().flatten().copied().collect()
    }

    /// Labeled points `(α(g), β(g), γ(g))` of element `g`.
    pub fn labeled_points(&self, g: usize) -> Option<[ProjPoint; 3]> {
        let l = self.labeling.as_ref()?;
        Some([
            self.components[0][l.alpha[g]],
            self.components[1][l.beta[g]],
            self.components[2][l.gamma[g]],
        ])
    }

    /// The image under a projectivity, keeping positions and labeling.
    pub fn transform(&self, m: &Projectivity) -> DualThreeNet {
        let f = self.field;
        DualThreeNet {
            field: f,
            components: self.components.clone().map(|c| c.iter().map(|p| m.apply(&f, p)).collect()),
            labeling: self.labeling.clone(),
        }
    }

    /// Whether the labeling (if any) satisfies its collinearity law.
    pub fn labeling_holds(&self) -> bool {
        let Some(l) = &self.labeling else {
            return false;
        };
        let n = self.order();
        (0..n).all(|a| {
            (0..n).all(|b| {
                crate::geometry::collinear(
                    &self.field,
                    &self.components[0][l.alpha[a]],
                    &self.components[1][l.beta[b]],
                    &self.components[2][l.third(a, b)],
                )
            })
        })
    }
}
