use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// An `n × n` table over the symbols `0..n` whose rows and columns are
/// permutations.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SquareRepr", into = "SquareRepr")]
pub struct LatinSquare {
    table: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct SquareRepr {
    n: usize,
    table: Vec<Vec<usize>>,
}

impl TryFrom<SquareRepr> for LatinSquare {
    type Error = Error;

    fn try_from(r: SquareRepr) -> Result<Self> {
        if r.table.len() != r.n {
            return Err(Error::NotALatinSquare(format!("expected {} rows", r.n)));
        }
        LatinSquare::new(r.table)
    }
}

impl From<LatinSquare> for SquareRepr {
    fn from(l: LatinSquare) -> Self {
        SquareRepr {
            n: l.n(),
            table: l.table,
        }
    }
}

/// Three bijections `(rows, cols, symbols)` carrying one square onto another:
/// `target[rows[i]][cols[j]] = symbols[source[i][j]]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Isotopy {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub symbols: Vec<usize>,
}

fn is_permutation(v: &[usize]) -> bool {
    let mut seen = vec![false; v.len()];
    v.iter().all(|&x| x < seen.len() && !std::mem::replace(&mut seen[x], true))
}

impl LatinSquare {
    pub fn new(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::NotALatinSquare("empty table".into()));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n || !is_permutation(row) {
                return Err(Error::NotALatinSquare(format!("row {i} is not a permutation")));
            }
        }
        for j in 0..n {
            let col: Vec<usize> = table.iter().map(|r| r[j]).collect();
            if !is_permutation(&col) {
                return Err(Error::NotALatinSquare(format!("column {j} is not a permutation")));
            }
        }
        Ok(LatinSquare { table })
    }

    pub(crate) fn new_unchecked(table: Vec<Vec<usize>>) -> Self {
        debug_assert!(LatinSquare::new(table.clone()).is_ok());
        LatinSquare { table }
    }

    pub fn n(&self) -> usize {
        self.table.len()
    }

    pub fn get(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn into_table(self) -> Vec<Vec<usize>> {
        self.table
    }

    /// The parastrophe obtained by exchanging the roles of columns and
    /// symbols: `result[a][c] = b` iff `self[a][b] = c`.
    pub fn column_symbol_swap(&self) -> LatinSquare {
        let n = self.n();
        let mut out = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                out[a][self.table[a][b]] = b;
            }
        }
        LatinSquare { table: out }
    }

    /// Whether `isotopy` carries `self` onto `target`.
    pub fn is_isotopic_via(&self, target: &LatinSquare, isotopy: &Isotopy) -> bool {
        let n = self.n();
        if target.n() != n
            || [&isotopy.rows, &isotopy.cols, &isotopy.symbols]
                .iter()
                .any(|v| v.len() != n || !is_permutation(v))
        {
            return false;
        }
        (0..n).all(|i| (0..n).all(|j| target.table[isotopy.rows[i]][isotopy.cols[j]] == isotopy.symbols[self.table[i][j]]))
    }

    /// The principal loop isotope at the cell `(0, 0)`. With `e = L[0][0]`,
    /// `ρ(x)` the row whose column-0 entry is `x` and `κ(y)` the column whose
    /// row-0 entry is `y`, the loop is `x ∘ y = L[ρ(x)][κ(y)]` with identity `e`.
    /// Returns the loop table, `ρ`, `κ` and `e`.
    pub fn principal_loop_isotope(&self) -> (LatinSquare, Vec<usize>, Vec<usize>, usize) {
        let n = self.n();
        let mut rho = vec![0; n];
        let mut kappa = vec![0; n];
        for r in 0..n {
            rho[self.table[r][0]] = r;
        }
        for c in 0..n {
            kappa[self.table[0][c]] = c;
        }
        let table = (0..n)
            .map(|x| (0..n).map(|y| self.table[rho[x]][kappa[y]]).collect())
            .collect();
        (LatinSquare { table }, rho, kappa, self.table[0][0])
    }
}
