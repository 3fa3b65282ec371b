use serde::{Deserialize, Serialize};

use super::{collinear_relabel, Convention, DualThreeNet, Labeling};
use crate::groups::{cosets, is_normal, subgroup_as_group, Side};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SubnetMode {
    /// One subnet `(gH, H, gH)` per left coset of `H`.
    Left,
    /// One subnet `(g1·H, H·g2, g1·H·g2)` per pair of cosets; needs `H` normal.
    Normal,
}

/// A subnet realizing `H`, with the coset representatives it came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subnet {
    /// `(g1, g2, g1·g2)` as elements of the labeling group.
    pub representatives: [usize; 3],
    pub net: DualThreeNet,
}

/// Splits a labeled net along the cosets of the subgroup `h` (elements of
/// the labeling group). Each subnet is labeled by `h`, with element `i` the
/// `i`-th smallest member of `h`.
pub fn h_member_subnets(net: &DualThreeNet, h: &[usize], mode: SubnetMode) -> Result<Vec<Subnet>> {
    let labeling = net.labeling().ok_or(Error::MissingLabeling)?;
    let labeling = match labeling.convention {
        Convention::Natural => labeling.clone(),
        Convention::Collinear => collinear_relabel(labeling),
    };
    let g = &labeling.group;
    let left = cosets(g, h, Side::Left)?;
    let sub = subgroup_as_group(g, h)?;
    let mut members = h.to_vec();
    members.sort_unstable();
    members.dedup();
    let pairs: Vec<(usize, usize)> = match mode {
        SubnetMode::Left => left.iter().map(|c| (c[0], 0)).collect(),
        SubnetMode::Normal => {
            if !is_normal(g, &members)? {
                return Err(Error::NotNormal);
            }
            left.iter()
                .flat_map(|c1| left.iter().map(move |c2| (c1[0], c2[0])))
                .collect()
        }
    };
    let comps = net.components();
    pairs
        .into_iter()
        .map(|(g1, g2)| {
            let components = [
                members.iter().map(|&x| comps[0][labeling.alpha[g.mul(g1, x)]]).collect(),
                members.iter().map(|&x| comps[1][labeling.beta[g.mul(x, g2)]]).collect(),
                members
                    .iter()
                    .map(|&x| comps[2][labeling.gamma[g.mul(g.mul(g1, x), g2)]])
                    .collect(),
            ];
            let net = DualThreeNet::new(*net.field(), components, Some(Labeling::identity(sub.clone())))?;
            Ok(Subnet {
                representatives: [g1, g2, g.mul(g1, g2)],
                net,
            })
        })
        .collect()
}
