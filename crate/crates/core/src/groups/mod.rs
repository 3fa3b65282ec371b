//! Finite groups stored as Cayley tables, latin squares, isomorphism testing,
//! subgroups and cosets.
//!
//! Group elements are `0..n` and `0` is always the identity.

mod iso;
mod latin;
mod subgroups;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use iso::isomorphic;
pub use latin::{Isotopy, LatinSquare};
pub use subgroups::{coset_latin_square, cosets, is_normal, subgroup_as_group, subgroups, CosetSquare, Side};

use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GroupRepr", into = "GroupRepr")]
pub struct FiniteGroup {
    table: LatinSquare,
    name: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct GroupRepr {
    n: usize,
    table: Vec<Vec<usize>>,
    e: usize,
    #[serde(default)]
    name: Option<String>,
}

impl TryFrom<GroupRepr> for FiniteGroup {
    type Error = Error;

    fn try_from(r: GroupRepr) -> Result<Self> {
        if r.table.len() != r.n {
            return Err(Error::NotAGroup(format!("expected {} rows", r.n)));
        }
        let mut g = FiniteGroup::from_table(r.table, r.e)?;
        if r.name.is_some() {
            g.name = r.name;
        }
        Ok(g)
    }
}

impl From<FiniteGroup> for GroupRepr {
    fn from(g: FiniteGroup) -> Self {
        GroupRepr {
            n: g.order(),
            e: 0,
            table: g.table.into_table(),
            name: g.name,
        }
    }
}

/// The groups that can be built by name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    /// `C_m × C_k`, element `(a, b)` stored at index `a·k + b`.
    Product(usize, usize),
    /// The dihedral group of order `2n`; `r^i s^j` is stored at `i + n·j`.
    Dihedral(usize),
    Quaternion8,
    Alt4,
    Sym4,
    Alt5,
    FromTable(Vec<Vec<usize>>, usize),
}

impl FromStr for GroupSpec {
    type Err = Error;

    /// Parses `c:n`, `cxc:m,k`, `d:n`, `q8`, `alt4`, `sym4` or `alt5`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidInput(format!("unknown group `{s}`"));
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
        let lower = s.trim().to_ascii_lowercase();
        match lower.as_str() {
            "q8" => return Ok(GroupSpec::Quaternion8),
            "alt4" => return Ok(GroupSpec::Alt4),
            "sym4" => return Ok(GroupSpec::Sym4),
            "alt5" => return Ok(GroupSpec::Alt5),
            _ => {}
        }
        let (kind, rest) = lower.split_once(':').ok_or_else(bad)?;
        match kind {
            "c" => Ok(GroupSpec::Cyclic(num(rest)?)),
            "d" => Ok(GroupSpec::Dihedral(num(rest)?)),
            "cxc" => {
                let (m, k) = rest.split_once(',').ok_or_else(bad)?;
                Ok(GroupSpec::Product(num(m)?, num(k)?))
            }
            _ => Err(bad()),
        }
    }
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                prefix.push(x);
                rec(prefix, used, out);
                prefix.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

fn is_even(perm: &[usize]) -> bool {
    let inversions = (0..perm.len())
        .flat_map(|i| (i + 1..perm.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| perm[i] > perm[j])
        .count();
    inversions % 2 == 0
}

/// The group of the given permutations (which must be closed under
/// composition), with `(σ·τ)(x) = σ(τ(x))`.
fn permutation_group(perms: Vec<Vec<usize>>, name: String) -> FiniteGroup {
    let index: std::collections::HashMap<Vec<usize>, usize> =
        perms.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
    let table = perms
        .iter()
        .map(|s| {
            perms
                .iter()
                .map(|t| index[&t.iter().map(|&x| s[x]).collect::<Vec<_>>()])
                .collect()
        })
        .collect();
    FiniteGroup::from_table(table, 0)
        .expect("permutations form a group")
        .with_name(name)
}

/// The symmetric group on `k` letters, permutations listed lexicographically.
pub fn symmetric_group(k: usize) -> FiniteGroup {
    permutation_group(permutations(k), format!("Sym{k}"))
}

/// The alternating group on `k` letters, even permutations listed
/// lexicographically.
pub fn alternating_group(k: usize) -> FiniteGroup {
    permutation_group(permutations(k).into_iter().filter(|p| is_even(p)).collect(), format!("Alt{k}"))
}

fn quaternion_table() -> Vec<Vec<usize>> {
    // index = 4·sign + unit with units 1, i, j, k
    const UNIT: [[(usize, usize); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    (0..8)
        .map(|a| {
            (0..8)
                .map(|b| {
                    let (s, u) = UNIT[a % 4][b % 4];
                    ((a / 4 + b / 4 + s) % 2) * 4 + u
                })
                .collect()
        })
        .collect()
}

impl FiniteGroup {
    /// Validates a Cayley table with identity `e` and relabels so that the
    /// identity becomes `0` (by exchanging the labels `0` and `e`).
    pub fn from_table(table: Vec<Vec<usize>>, e: usize) -> Result<Self> {
        Self::from_table_relabeled(table, e).map(|(g, _)| g)
    }

    /// Like [`FiniteGroup::from_table`], also returning `perm` with new
    /// element `k` corresponding to old element `perm[k]`.
    pub fn from_table_relabeled(table: Vec<Vec<usize>>, e: usize) -> Result<(Self, Vec<usize>)> {
        let square = LatinSquare::new(table).map_err(|err| Error::NotAGroup(err.to_string()))?;
        let n = square.n();
        if e >= n {
            return Err(Error::NotAGroup(format!("identity {e} out of range")));
        }
        for x in 0..n {
            if square.get(e, x) != x || square.get(x, e) != x {
                return Err(Error::NotAGroup(format!("{e} is not a two-sided identity")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = square.get(a, b);
                for c in 0..n {
                    if square.get(ab, c) != square.get(a, square.get(b, c)) {
                        return Err(Error::NotAGroup(format!("({a}·{b})·{c} ≠ {a}·({b}·{c})")));
                    }
                }
            }
        }
        let mut perm: Vec<usize> = (0..n).collect();
        perm.swap(0, e);
        // perm is its own inverse
        let table = (0..n)
            .map(|a| (0..n).map(|b| perm[square.get(perm[a], perm[b])]).collect())
            .collect();
        Ok((
            FiniteGroup {
                table: LatinSquare::new_unchecked(table),
                name: None,
            },
            perm,
        ))
    }

    pub fn make(spec: &GroupSpec) -> Result<Self> {
        let positive = |n: usize| {
            if n == 0 {
                Err(Error::InvalidInput("group order must be positive".into()))
            } else {
                Ok(n)
            }
        };
        let g = match spec {
            GroupSpec::Cyclic(n) => {
                let n = positive(*n)?;
                let t = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
                Self::from_table(t, 0)?.with_name(format!("C{n}"))
            }
            GroupSpec::Product(m, k) => {
                let (m, k) = (positive(*m)?, positive(*k)?);
                let t = (0..m * k)
                    .map(|x| {
                        (0..m * k)
                            .map(|y| ((x / k + y / k) % m) * k + (x % k + y % k) % k)
                            .collect()
                    })
                    .collect();
                Self::from_table(t, 0)?.with_name(format!("C{m}xC{k}"))
            }
            GroupSpec::Dihedral(n) => {
                let n = positive(*n)?;
                let t = (0..2 * n)
                    .map(|x| {
                        let (i, a) = (x % n, x / n);
                        (0..2 * n)
                            .map(|y| {
                                let (k, b) = (y % n, y / n);
                                let rot = if a == 0 { (i + k) % n } else { (i + n - k) % n };
                                rot + n * ((a + b) % 2)
                            })
                            .collect()
                    })
                    .collect();
                Self::from_table(t, 0)?.with_name(format!("D{n}"))
            }
            GroupSpec::Quaternion8 => Self::from_table(quaternion_table(), 0)?.with_name("Q8".into()),
            GroupSpec::Alt4 => alternating_group(4),
            GroupSpec::Sym4 => symmetric_group(4),
            GroupSpec::Alt5 => alternating_group(5),
            GroupSpec::FromTable(t, e) => {
                let g = Self::from_table(t.clone(), *e)?;
                let name = g.describe();
                g.with_name(name)
            }
        };
        Ok(g)
    }

    pub fn with_name(mut self, name: String) -> Self {
        self.name = Some(name);
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn order(&self) -> usize {
        self.table.n()
    }

    pub fn table(&self) -> &LatinSquare {
        &self.table
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table.get(a, b)
    }

    pub fn inv(&self, a: usize) -> usize {
        (0..self.order()).find(|&b| self.mul(a, b) == 0).expect("inverse exists")
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Sorted list of element orders.
    pub fn order_profile(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.order()).map(|a| self.element_order(a)).collect();
        v.sort_unstable();
        v
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Invariant factors `d1 | d2 | …` of an abelian group (empty for the
    /// trivial group), or `None` if the group is not abelian.
    pub fn abelian_invariants(&self) -> Option<Vec<usize>> {
        if !self.is_abelian() {
            return None;
        }
        let n = self.order();
        let power = |a: usize, k: usize| (0..k).fold(0, |acc, _| self.mul(acc, a));
        let torsion = |d: usize| (0..n).filter(|&a| power(a, d) == 0).count();
        // for each prime q, the partition of the q-part read off from torsion sizes
        let mut factors: Vec<usize> = Vec::new();
        let mut m = n;
        let mut q = 2;
        while m > 1 {
            if !m.is_multiple_of(q) {
                q += 1;
                continue;
            }
            while m.is_multiple_of(q) {
                m /= q;
            }
            // counts[k] = number of cyclic q-factors of order ≥ q^(k+1)
            let mut counts = Vec::new();
            let mut prev = 1usize;
            let mut qk = q;
            loop {
                let t = torsion(qk);
                if t == prev {
                    break;
                }
                let mut ratio = t / prev;
                let mut c = 0;
                while ratio > 1 {
                    ratio /= q;
                    c += 1;
                }
                counts.push(c);
                prev = t;
                qk *= q;
            }
            // the i-th largest q-factor has order q^(#k with counts[k] > i)
            let rank = counts.first().copied().unwrap_or(0);
            let qparts: Vec<usize> = (0..rank)
                .map(|i| q.pow(counts.iter().filter(|&&c| c > i).count() as u32))
                .collect();
            // combine, largest q-part into the largest invariant factor
            if factors.len() < qparts.len() {
                let pad = qparts.len() - factors.len();
                factors.splice(0..0, std::iter::repeat_n(1, pad));
            }
            let len = factors.len();
            for (i, part) in qparts.iter().enumerate() {
                factors[len - 1 - i] *= part;
            }
        }
        Some(factors)
    }

    /// A short human-readable name: `C6`, `C2xC6`, `D5`, `Q8`, `Alt4`, ….
    pub fn describe(&self) -> String {
        if let Some(inv) = self.abelian_invariants() {
            if inv.is_empty() {
                return "C1".into();
            }
            return inv.iter().map(|d| format!("C{d}")).collect::<Vec<_>>().join("x");
        }
        let n = self.order();
        let mut candidates: Vec<FiniteGroup> = Vec::new();
        if n.is_multiple_of(2) {
            candidates.push(Self::make(&GroupSpec::Dihedral(n / 2)).expect("valid"));
        }
        match n {
            8 => candidates.push(Self::make(&GroupSpec::Quaternion8).expect("valid")),
            12 => candidates.push(alternating_group(4)),
            24 => candidates.push(symmetric_group(4)),
            60 => candidates.push(alternating_group(5)),
            _ => {}
        }
        candidates
            .into_iter()
            .find(|c| isomorphic(self, c).is_some())
            .and_then(|c| c.name)
            .unwrap_or_else(|| format!("nonabelian group of order {n}"))
    }

    /// A generating set chosen greedily by decreasing element order.
    pub fn generators(&self) -> Vec<usize> {
        let n = self.order();
        let mut by_order: Vec<usize> = (1..n).collect();
        by_order.sort_by_key(|&a| (std::cmp::Reverse(self.element_order(a)), a));
        let mut gens = Vec::new();
        let mut span = vec![0usize];
        for a in by_order {
            if span.len() == n {
                break;
            }
            if !span.contains(&a) {
                gens.push(a);
                span = self.closure(&gens);
            }
        }
        gens
    }

    /// The subgroup generated by `gens`, sorted.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let n = self.order();
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut stack = vec![0usize];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        (0..n).filter(|&x| seen[x]).collect()
    }
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.name {
            Some(name) => write!(f, "{name}"),
            None => write!(f, "{}", self.describe()),
        }
    }
}

/// Returns the group when the square has a two-sided identity and is
/// associative.
pub fn is_group(square: &LatinSquare) -> Option<FiniteGroup> {
    let n = square.n();
    let e = (0..n).find(|&e| (0..n).all(|x| square.get(e, x) == x && square.get(x, e) == x))?;
    FiniteGroup::from_table(square.table().to_vec(), e).ok()
}
