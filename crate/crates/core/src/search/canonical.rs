use crate::geometry::{frame_map, incident, join, PrimeField, ProjPoint, Projectivity};
use crate::nets::{verify_net, DualThreeNet, Labeling};
use crate::{Error, Result};

/// Sort key of a net: its three components as sorted point lists.
pub(crate) type NetKey = [Vec<ProjPoint>; 3];

pub(crate) fn net_key(net: &DualThreeNet) -> NetKey {
    net.components().clone().map(|mut c| {
        c.sort_unstable();
        c
    })
}

#[cfg(test)]
fn standard_frame(f: &PrimeField) -> [ProjPoint; 4] {
    [[1, 0, 0], [0, 1, 0], [1, 1, 0], [0, 0, 1]].map(|v| ProjPoint::from_elems(f, v).expect("nonzero"))
}

/// All normalizing projectivities of a net: `P1 ∈ Λ1 ↦ (1,0,0)`,
/// `P2 ∈ Λ2 ↦ (0,1,0)`, the point of `Λ3` on `P1P2` to `(1,1,0)`, another
/// `Q ∈ Λ1 ↦ (0,0,1)`, and finally another `R ∈ Λ2` scaled to `(1,·,1)`.
fn normalizing_maps(net: &DualThreeNet) -> Vec<Projectivity> {
    let f = net.field();
    let [l1, l2, l3] = net.components();
    let mut maps = Vec::new();
    for p1 in l1 {
        for p2 in l2 {
            let Ok(line) = join(f, p1, p2) else { continue };
            let Some(p3) = l3.iter().find(|r| incident(f, r, &line)) else { continue };
            for q in l1.iter().filter(|q| *q != p1) {
                let Ok(m) = frame_to_standard(f, [*p1, *p2, *p3, *q]) else { continue };
                for r in l2.iter().filter(|r| *r != p2) {
                    let [x, _, z] = m.apply(f, r).coords();
                    if x == 0 || z == 0 {
                        continue;
                    }
                    let scale = Projectivity::from_elems(f, [[z, 0, 0], [0, z, 0], [0, 0, x]]).expect("invertible");
                    maps.push(scale.compose(f, &m));
                }
            }
        }
    }
    maps
}

/// A projectivity with `src[0..3] ↦ (1,0,0), (0,1,0), (1,1,0)` (collinear
/// points) and `src[3] ↦ (0,0,1)`. Such maps are unique up to `diag(1,1,c)`.
fn frame_to_standard(f: &PrimeField, src: [ProjPoint; 4]) -> Result<Projectivity> {
    // write p3 = s·p1 + t·p2; the images of s·p1 and t·p2 are e1 and e2
    let (a, b, c) = (src[0].coords(), src[1].coords(), src[2].coords());
    let mut st = None;
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let d = f.sub(f.mul(a[i], b[j]), f.mul(a[j], b[i]));
        if d != 0 {
            let s = f.div(f.sub(f.mul(c[i], b[j]), f.mul(c[j], b[i])), d);
            let t = f.div(f.sub(f.mul(a[i], c[j]), f.mul(a[j], c[i])), d);
            st = Some((s, t));
            break;
        }
    }
    let (s, t) = st.ok_or(Error::DegenerateFrame)?;
    if s == 0 || t == 0 {
        return Err(Error::DegenerateFrame);
    }
    let q = src[3].coords();
    let sa = a.map(|x| f.mul(s, x));
    let tb = b.map(|x| f.mul(t, x));
    let unit = [0, 1, 2].map(|k| f.add(f.add(sa[k], tb[k]), q[k]));
    let unit = ProjPoint::from_elems(f, unit)?;
    let e = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]].map(|v| ProjPoint::from_elems(f, v).expect("nonzero"));
    frame_map(f, &[ProjPoint::from_elems(f, sa)?, ProjPoint::from_elems(f, tb)?, src[3], unit], &e)
}

/// Rewrites positions so that each component is sorted, moving the
/// labeling along.
fn sorted_components(net: DualThreeNet) -> Result<DualThreeNet> {
    let f = *net.field();
    let mut comps: [Vec<ProjPoint>; 3] = Default::default();
    let mut new_pos: [Vec<usize>; 3] = Default::default();
    for (i, comp) in net.components().iter().enumerate() {
        let mut order: Vec<usize> = (0..comp.len()).collect();
        order.sort_by_key(|&k| comp[k]);
        let mut pos = vec![0; comp.len()];
        for (new, &old) in order.iter().enumerate() {
            pos[old] = new;
        }
        comps[i] = order.iter().map(|&k| comp[k]).collect();
        new_pos[i] = pos;
    }
    let labeling = net.labeling().map(|l| Labeling {
        alpha: l.alpha.iter().map(|&x| new_pos[0][x]).collect(),
        beta: l.beta.iter().map(|&x| new_pos[1][x]).collect(),
        gamma: l.gamma.iter().map(|&x| new_pos[2][x]).collect(),
        ..l.clone()
    });
    DualThreeNet::new(f, comps, labeling)
}

/// The projectivity taking a net to its canonical representative.
pub fn canonical_map(net: &DualThreeNet) -> Result<Projectivity> {
    let f = net.field();
    let mut best: Option<(NetKey, Projectivity)> = None;
    for m in normalizing_maps(net) {
        let key = net.components().clone().map(|c| {
            let mut v: Vec<ProjPoint> = c.iter().map(|p| m.apply(f, p)).collect();
            v.sort_unstable();
            v
        });
        if best.as_ref().is_none_or(|(k, _)| key < *k) {
            best = Some((key, m));
        }
    }
    Ok(best.map(|(_, m)| m).unwrap_or_else(Projectivity::identity))
}

/// A representative of the orbit of a net under `PGL(3,p)`: the least image,
/// with sorted components, over every frame built from the net's own points.
/// The labeling, if any, is carried along.
pub fn canonical_representative(net: &DualThreeNet) -> Result<DualThreeNet> {
    let report = verify_net(net)?;
    if !report.is_net {
        return Err(Error::NotANet(format!("{} violating line/component pairs", report.violations.len())));
    }
    let m = canonical_map(net)?;
    sorted_components(net.transform(&m))
}
