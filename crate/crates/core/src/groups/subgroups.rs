use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{FiniteGroup, Isotopy, LatinSquare};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
}

/// All subgroups, each as a sorted element list, ordered by size and then
/// lexicographically.
pub fn subgroups(g: &FiniteGroup) -> Vec<Vec<usize>> {
    let mut found: BTreeSet<Vec<usize>> = (0..g.order()).map(|a| g.closure(&[a])).collect();
    loop {
        let current: Vec<Vec<usize>> = found.iter().cloned().collect();
        let mut grew = false;
        for (i, a) in current.iter().enumerate() {
            for b in &current[i + 1..] {
                let gens: Vec<usize> = a.iter().chain(b).copied().collect();
                if found.insert(g.closure(&gens)) {
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    let mut out: Vec<Vec<usize>> = found.into_iter().collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// Sorted, deduplicated copy of `h`, after checking it is a subgroup.
fn checked_subgroup(g: &FiniteGroup, h: &[usize]) -> Result<Vec<usize>> {
    let mut h = h.to_vec();
    h.sort_unstable();
    h.dedup();
    let n = g.order();
    if h.first() != Some(&0) || h.iter().any(|&x| x >= n) {
        return Err(Error::NotASubgroup);
    }
    for &a in &h {
        for &b in &h {
            if h.binary_search(&g.mul(a, b)).is_err() {
                return Err(Error::NotASubgroup);
            }
        }
    }
    Ok(h)
}

fn coset(g: &FiniteGroup, h: &[usize], x: usize, side: Side) -> Vec<usize> {
    let mut c: Vec<usize> = h
        .iter()
        .map(|&y| match side {
            Side::Left => g.mul(x, y),
            Side::Right => g.mul(y, x),
        })
        .collect();
    c.sort_unstable();
    c
}

/// The left (`xH`) or right (`Hx`) cosets, each sorted, ordered by their
/// smallest element.
pub fn cosets(g: &FiniteGroup, h: &[usize], side: Side) -> Result<Vec<Vec<usize>>> {
    let h = checked_subgroup(g, h)?;
    let mut covered = vec![false; g.order()];
    let mut out = Vec::new();
    for x in 0..g.order() {
        if covered[x] {
            continue;
        }
        let c = coset(g, &h, x, side);
        for &y in &c {
            covered[y] = true;
        }
        out.push(c);
    }
    Ok(out)
}

pub fn is_normal(g: &FiniteGroup, h: &[usize]) -> Result<bool> {
    Ok(cosets(g, h, Side::Left)? == cosets(g, h, Side::Right)?)
}

/// The subgroup `h` as a group in its own right, element `i` being the
/// `i`-th smallest member of `h`.
pub fn subgroup_as_group(g: &FiniteGroup, h: &[usize]) -> Result<FiniteGroup> {
    let h = checked_subgroup(g, h)?;
    let pos = |x: usize| h.binary_search(&x).expect("closed");
    let table = h.iter().map(|&a| h.iter().map(|&b| pos(g.mul(a, b))).collect()).collect();
    let sub = FiniteGroup::from_table(table, 0)?;
    let name = sub.describe();
    Ok(sub.with_name(name))
}

/// The latin square cut out of the Cayley table of `g` by two cosets of a
/// normal subgroup, with the relabeling that turns it into the table of `h`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CosetSquare {
    /// Elements of `H1`, `H2` and `H3 = H1·H2`, each sorted; they index the
    /// rows, columns and symbols of `square`.
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub symbols: Vec<usize>,
    pub square: LatinSquare,
    /// `h` with elements indexed by sorted position.
    pub subgroup: FiniteGroup,
    /// Carries `square` onto the table of `subgroup`.
    pub witness: Isotopy,
}

/// With `H1 = t1·H`, `H2 = H·t2` and `t1`, `t2` the smallest members, the
/// witness writes `h1 = t1·h1'`, `h2 = h2'·t2` and `h1·h2 = t1·h3'·t2`.
pub fn coset_latin_square(g: &FiniteGroup, h: &[usize], h1: &[usize], h2: &[usize]) -> Result<CosetSquare> {
    let h = checked_subgroup(g, h)?;
    if !is_normal(g, &h)? {
        return Err(Error::NotNormal);
    }
    let all = cosets(g, &h, Side::Left)?;
    let normalize = |c: &[usize]| -> Result<Vec<usize>> {
        let mut c = c.to_vec();
        c.sort_unstable();
        c.dedup();
        if all.contains(&c) {
            Ok(c)
        } else {
            Err(Error::NotACoset)
        }
    };
    let (rows, cols) = (normalize(h1)?, normalize(h2)?);
    let (t1, t2) = (rows[0], cols[0]);
    let symbols = coset(g, &h, g.mul(t1, t2), Side::Left);
    let pos = |set: &[usize], x: usize| set.binary_search(&x).expect("coset arithmetic");
    let table = rows
        .iter()
        .map(|&a| cols.iter().map(|&b| pos(&symbols, g.mul(a, b))).collect())
        .collect();
    let square = LatinSquare::new(table)?;
    let (t1_inv, t2_inv) = (g.inv(t1), g.inv(t2));
    let witness = Isotopy {
        rows: rows.iter().map(|&x| pos(&h, g.mul(t1_inv, x))).collect(),
        cols: cols.iter().map(|&x| pos(&h, g.mul(x, t2_inv))).collect(),
        symbols: symbols.iter().map(|&x| pos(&h, g.mul(g.mul(t1_inv, x), t2_inv))).collect(),
    };
    Ok(CosetSquare {
        rows,
        cols,
        symbols,
        square,
        subgroup: subgroup_as_group(g, &h)?,
        witness,
    })
}
