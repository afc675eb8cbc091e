//! Rectangular maximum-weight assignment (Hungarian method with potentials).
//!
//! Every row is matched to a distinct column; requires `rows <= cols`.
//! Runs in O(rows² · cols). The solver keeps its buffers between calls so
//! the branch-and-bound can reuse it at every node.

use crate::scalar::Scalar;

#[derive(Debug, Default)]
pub struct Hungarian<T> {
    u: Vec<T>,
    v: Vec<T>,
    col_owner: Vec<usize>,
    way: Vec<usize>,
    minv: Vec<T>,
    used: Vec<bool>,
    row_to_col: Vec<usize>,
}

impl<T: Scalar> Hungarian<T> {
    pub fn new() -> Self {
        Self {
            u: Vec::new(),
            v: Vec::new(),
            col_owner: Vec::new(),
            way: Vec::new(),
            minv: Vec::new(),
            used: Vec::new(),
            row_to_col: Vec::new(),
        }
    }

    /// Maximizes `Σ weight(r, assignment[r])`; returns the optimal total.
    /// The assignment is available from [`Hungarian::assignment`] afterwards.
    pub fn solve_max(&mut self, rows: usize, cols: usize, weight: impl Fn(usize, usize) -> T) -> T {
        assert!(rows <= cols, "assignment needs rows <= cols ({rows} > {cols})");
        self.row_to_col.clear();
        if rows == 0 {
            return T::zero();
        }
        // 1-based arrays; index 0 is the virtual root column.
        self.u.clear();
        self.u.resize(rows + 1, T::zero());
        self.v.clear();
        self.v.resize(cols + 1, T::zero());
        self.col_owner.clear();
        self.col_owner.resize(cols + 1, 0);
        self.way.clear();
        self.way.resize(cols + 1, 0);

        let cost = |i: usize, j: usize| -weight(i - 1, j - 1);
        for i in 1..=rows {
            self.col_owner[0] = i;
            let mut j0 = 0usize;
            self.minv.clear();
            self.minv.resize(cols + 1, T::infinity());
            self.used.clear();
            self.used.resize(cols + 1, false);
            loop {
                self.used[j0] = true;
                let i0 = self.col_owner[j0];
                let mut delta = T::infinity();
                let mut j1 = 0usize;
                for j in 1..=cols {
                    if self.used[j] {
                        continue;
                    }
                    let cur = cost(i0, j) - self.u[i0] - self.v[j];
                    if cur < self.minv[j] {
                        self.minv[j] = cur;
                        self.way[j] = j0;
                    }
                    if self.minv[j] < delta {
                        delta = self.minv[j];
                        j1 = j;
                    }
                }
                for j in 0..=cols {
                    if self.used[j] {
                        let owner = self.col_owner[j];
                        self.u[owner] = self.u[owner] + delta;
                        self.v[j] = self.v[j] - delta;
                    } else {
                        self.minv[j] = self.minv[j] - delta;
                    }
                }
                j0 = j1;
                if self.col_owner[j0] == 0 {
                    break;
                }
            }
            loop {
                let j1 = self.way[j0];
                self.col_owner[j0] = self.col_owner[j1];
                j0 = j1;
                if j0 == 0 {
                    break;
                }
            }
        }

        self.row_to_col.resize(rows, 0);
        for j in 1..=cols {
            let owner = self.col_owner[j];
            if owner > 0 {
                self.row_to_col[owner - 1] = j - 1;
            }
        }
        self.row_to_col
            .iter()
            .enumerate()
            .fold(T::zero(), |acc, (r, &c)| acc + weight(r, c))
    }

    pub fn assignment(&self) -> &[usize] {
        &self.row_to_col
    }
}

/// One-shot convenience wrapper around [`Hungarian::solve_max`].
pub fn max_weight_assignment<T: Scalar>(weights: &[Vec<T>]) -> (Vec<usize>, T) {
    let rows = weights.len();
    let cols = weights.first().map_or(0, Vec::len);
    let mut solver = Hungarian::new();
    let total = solver.solve_max(rows, cols, |r, c| weights[r][c]);
    (solver.assignment().to_vec(), total)
}
