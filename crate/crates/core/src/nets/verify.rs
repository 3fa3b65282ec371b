use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{DualThreeNet, Labeling};
use crate::geometry::{incident, join, ProjLine};
use crate::groups::{FiniteGroup, LatinSquare};
use crate::{Error, Result};

/// A line spanned by two net points from different components that meets
/// `component` in `count ≠ 1` points.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Violation {
    pub line: ProjLine,
    pub component: usize,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NetReport {
    pub is_net: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub violations: Vec<Violation>,
    pub n: usize,
}

/// Checks that every line through two points of distinct components meets
/// each component exactly once.
pub fn verify_net(net: &DualThreeNet) -> Result<NetReport> {
    let f = *net.field();
    let comps = net.components();
    let mut lines = BTreeSet::new();
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        for a in &comps[i] {
            for b in &comps[j] {
                lines.insert(join(&f, a, b)?);
            }
        }
    }
    let lines: Vec<ProjLine> = lines.into_iter().collect();
    let violations: Vec<Violation> = lines
        .par_iter()
        .flat_map_iter(|line| {
            (0..3).filter_map(move |c| {
                let count = comps[c].iter().filter(|pt| incident(&f, pt, line)).count();
                (count != 1).then_some(Violation {
                    line: *line,
                    component: c,
                    count,
                })
            })
        })
        .collect();
    Ok(NetReport {
        is_net: violations.is_empty(),
        violations,
        n: net.order(),
    })
}

/// The table `L[a][b] = c` where `Λ1[a], Λ2[b], Λ3[c]` are collinear.
pub fn extract_quasigroup(net: &DualThreeNet) -> Result<LatinSquare> {
    let f = net.field();
    let [c1, c2, c3] = net.components();
    let n = net.order();
    let mut table = vec![vec![0; n]; n];
    for (a, p) in c1.iter().enumerate() {
        for (b, q) in c2.iter().enumerate() {
            let line = join(f, p, q)?;
            let mut hits = c3.iter().enumerate().filter(|(_, r)| incident(f, r, &line)).map(|(c, _)| c);
            match (hits.next(), hits.next()) {
                (Some(c), None) => table[a][b] = c,
                _ => {
                    return Err(Error::NotANet(format!(
                        "the line through {p:?} and {q:?} does not meet the third component exactly once"
                    )))
                }
            }
        }
    }
    LatinSquare::new(table).map_err(|e| Error::NotANet(e.to_string()))
}

/// Extracts the quasigroup, passes to its principal loop isotope and, when
/// that loop is associative, returns the group with an explicit labeling
/// satisfying `α(a), β(b), γ(a·b)` collinear.
pub fn identify_realized_group(net: &DualThreeNet) -> Result<Option<(FiniteGroup, Labeling)>> {
    let square = extract_quasigroup(net)?;
    let (lp, rho, kappa, e) = square.principal_loop_isotope();
    let Ok((group, perm)) = FiniteGroup::from_table_relabeled(lp.into_table(), e) else {
        return Ok(None);
    };
    let name = group.describe();
    let group = group.with_name(name);
    let labeling = Labeling {
        group: group.clone(),
        alpha: perm.iter().map(|&x| rho[x]).collect(),
        beta: perm.iter().map(|&x| kappa[x]).collect(),
        gamma: perm.clone(),
        convention: Default::default(),
    };
    Ok(Some((group, labeling)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{PrimeField, ProjPoint};

    fn pt(f: &PrimeField, c: [i64; 3]) -> ProjPoint {
        ProjPoint::new(f, c).unwrap()
    }

    /// The order-3 net with `Λ1 = (ξ,0,1)`, `Λ2 = (0,η,1)`, `Λ3 = (1,-ζ,0)`
    /// for `ξ, η, ζ ∈ {1, 3, 9} ⊂ F_13`.
    fn triangle13() -> DualThreeNet {
        let f = PrimeField::new(13).unwrap();
        let h = [1i64, 3, 9];
        DualThreeNet::new(
            f,
            [
                h.iter().map(|&x| pt(&f, [x, 0, 1])).collect(),
                h.iter().map(|&y| pt(&f, [0, y, 1])).collect(),
                h.iter().map(|&z| pt(&f, [1, -z, 0])).collect(),
            ],
            None,
        )
        .unwrap()
    }

    #[test]
    fn triangle_net_verifies_and_is_cyclic() {
        let net = triangle13();
        let report = verify_net(&net).unwrap();
        assert!(report.is_net);
        assert_eq!(serde_json::to_string(&report).unwrap(), r#"{"is_net":true,"n":3}"#);
        let sq = extract_quasigroup(&net).unwrap();
        // ξζ = η: position a + c = b, so c = b - a
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(sq.get(a, b), (b + 3 - a) % 3);
            }
        }
        let (g, l) = identify_realized_group(&net).unwrap().unwrap();
        assert_eq!(g.describe(), "C3");
        let labeled = net.with_labeling(Some(l)).unwrap();
        assert!(labeled.labeling_holds());
    }

    #[test]
    fn mutation_breaks_the_net() {
        let net = triangle13();
        let f = *net.field();
        let mut comps = net.components().clone();
        comps[1][2] = pt(&f, [0, 5, 1]);
        let bad = DualThreeNet::new(f, comps, None).unwrap();
        let report = verify_net(&bad).unwrap();
        assert!(!report.is_net);
        assert!(!report.violations.is_empty());
        assert!(extract_quasigroup(&bad).is_err());
    }

    #[test]
    fn order_one_net() {
        let f = PrimeField::new(7).unwrap();
        let net = DualThreeNet::new(
            f,
            [vec![pt(&f, [1, 0, 1])], vec![pt(&f, [0, 1, 1])], vec![pt(&f, [1, -1, 0])]],
            None,
        )
        .unwrap();
        assert!(verify_net(&net).unwrap().is_net);
        assert_eq!(extract_quasigroup(&net).unwrap().table(), &[vec![0]]);
    }

    #[test]
    fn swapping_components_gives_the_parastrophe() {
        let net = triangle13();
        let [a, b, c] = net.components().clone();
        let swapped = DualThreeNet::new(*net.field(), [a, c, b], None).unwrap();
        assert_eq!(
            extract_quasigroup(&swapped).unwrap(),
            extract_quasigroup(&net).unwrap().column_symbol_swap()
        );
    }
}
