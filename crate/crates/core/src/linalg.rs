//! Exact linear algebra over a [`Field`]: sparse rank/echelon machinery for
//! large graded slices, dense kernels and solvers for the small systems that
//! come out of structure constants.

use std::collections::BTreeMap;

use crate::scalar::Field;

/// Sparse vector: index -> nonzero coefficient.
pub type SparseVec<E> = BTreeMap<usize, E>;

/// Incremental echelon form over a field. Rows are inserted one at a time;
/// the structure keeps one reduced row per pivot column.
pub struct Echelon<'a, F: Field> {
    field: &'a F,
    pivots: BTreeMap<usize, SparseVec<F::Elem>>,
}

impl<'a, F: Field> Echelon<'a, F> {
    pub fn new(field: &'a F) -> Self {
        Echelon {
            field,
            pivots: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduce `row` against the current pivots. Returns the remainder, which
    /// is empty iff `row` lies in the span of the inserted rows.
    fn reduce(&self, mut row: SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let f = self.field;
        loop {
            let lead = match row.keys().next() {
                Some(&c) => c,
                None => return row,
            };
            match self.pivots.get(&lead) {
                Some(pivot_row) => {
                    // pivot rows are normalized to leading coefficient 1
                    let factor = row[&lead].clone();
                    for (c, v) in pivot_row {
                        let delta = f.mul(&factor, v);
                        match row.remove(c) {
                            Some(old) => {
                                let new = f.sub(&old, &delta);
                                if !f.is_zero(&new) {
                                    row.insert(*c, new);
                                }
                            }
                            None => {
                                row.insert(*c, f.neg(&delta));
                            }
                        }
                    }
                }
                None => return row,
            }
        }
    }

    /// Insert a row; returns true when it increased the rank.
    pub fn insert(&mut self, row: SparseVec<F::Elem>) -> bool {
        let f = self.field;
        let rem = self.reduce(row);
        let lead = match rem.keys().next() {
            Some(&c) => c,
            None => return false,
        };
        let inv = f
            .inv(&rem[&lead])
            .expect("leading coefficient of a nonzero row is nonzero");
        let normalized: SparseVec<F::Elem> = rem
            .into_iter()
            .map(|(c, v)| (c, f.mul(&v, &inv)))
            .collect();
        self.pivots.insert(lead, normalized);
        true
    }

    /// True iff `row` lies in the span of the inserted rows.
    pub fn contains(&self, row: SparseVec<F::Elem>) -> bool {
        self.reduce(row).is_empty()
    }
}

/// Rank of a family of sparse vectors.
pub fn rank_sparse<F: Field>(field: &F, rows: impl IntoIterator<Item = SparseVec<F::Elem>>) -> usize {
    let mut ech = Echelon::new(field);
    for row in rows {
        ech.insert(row);
    }
    ech.rank()
}

/// Convert a dense vector to sparse form.
pub fn to_sparse<F: Field>(field: &F, dense: &[F::Elem]) -> SparseVec<F::Elem> {
    dense
        .iter()
        .enumerate()
        .filter(|(_, v)| !field.is_zero(v))
        .map(|(i, v)| (i, v.clone()))
        .collect()
}

/// Rank of a dense matrix given as a list of rows.
pub fn rank_dense<F: Field>(field: &F, rows: &[Vec<F::Elem>]) -> usize {
    rank_sparse(field, rows.iter().map(|r| to_sparse(field, r)))
}

/// True iff `v` lies in the span of `basis`.
pub fn in_span<F: Field>(field: &F, basis: &[Vec<F::Elem>], v: &[F::Elem]) -> bool {
    let mut ech = Echelon::new(field);
    for row in basis {
        ech.insert(to_sparse(field, row));
    }
    ech.contains(to_sparse(field, v))
}

/// Kernel basis of the linear map with matrix `m` (rows = output coords,
/// columns = input coords). Returns vectors of length `cols`.
pub fn kernel_basis<F: Field>(field: &F, m: &[Vec<F::Elem>], cols: usize) -> Vec<Vec<F::Elem>> {
    let f = field;
    // Gaussian elimination on rows, tracking pivot column per reduced row.
    let mut rows: Vec<Vec<F::Elem>> = m.to_vec();
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; cols];
    let mut rank_rows: Vec<(usize, Vec<F::Elem>)> = Vec::new(); // (pivot col, row)
    for row in rows.iter_mut() {
        // reduce against existing pivots
        for (pc, prow) in &rank_rows {
            if !f.is_zero(&row[*pc]) {
                let factor = row[*pc].clone();
                for c in 0..cols {
                    let delta = f.mul(&factor, &prow[c]);
                    row[c] = f.sub(&row[c], &delta);
                }
            }
        }
        if let Some(pc) = (0..cols).find(|c| !f.is_zero(&row[*c])) {
            let inv = f.inv(&row[pc]).expect("pivot is nonzero");
            for c in 0..cols {
                row[c] = f.mul(&row[c], &inv);
            }
            pivot_of_col[pc] = Some(rank_rows.len());
            rank_rows.push((pc, row.clone()));
        }
    }
    // back-substitute so each pivot row has zeros in other pivot columns
    let pivot_cols: Vec<usize> = rank_rows.iter().map(|(pc, _)| *pc).collect();
    for i in 0..rank_rows.len() {
        for &pc in &pivot_cols {
            if pc == rank_rows[i].0 {
                continue;
            }
            let idx = pivot_of_col[pc].unwrap();
            if idx == i {
                continue;
            }
            let factor = rank_rows[i].1[pc].clone();
            if f.is_zero(&factor) {
                continue;
            }
            let prow = rank_rows[idx].1.clone();
            for c in 0..cols {
                let delta = f.mul(&factor, &prow[c]);
                rank_rows[i].1[c] = f.sub(&rank_rows[i].1[c], &delta);
            }
        }
    }
    // free columns give kernel vectors
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_of_col[free].is_some() {
            continue;
        }
        let mut vec = vec![f.zero(); cols];
        vec[free] = f.one();
        for (pc, row) in &rank_rows {
            // pivot_col coordinate = -row[free]
            vec[*pc] = f.neg(&row[free]);
        }
        basis.push(vec);
    }
    basis
}

/// Solve the square system `a * x = b` over a field. Returns `None` when the
/// system is singular or inconsistent.
pub fn solve_dense<F: Field>(field: &F, a: &[Vec<F::Elem>], b: &[F::Elem]) -> Option<Vec<F::Elem>> {
    let f = field;
    let n = a.len();
    let cols = if n == 0 { 0 } else { a[0].len() };
    let mut aug: Vec<Vec<F::Elem>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let mut pivot_rows: Vec<(usize, usize)> = Vec::new(); // (row, col)
    let mut next_row = 0usize;
    for col in 0..cols {
        let Some(pivot) = (next_row..n).find(|&r| !f.is_zero(&aug[r][col])) else {
            continue;
        };
        aug.swap(next_row, pivot);
        let inv = f.inv(&aug[next_row][col]).unwrap();
        for c in col..=cols {
            aug[next_row][c] = f.mul(&aug[next_row][c], &inv);
        }
        for r in 0..n {
            if r != next_row && !f.is_zero(&aug[r][col]) {
                let factor = aug[r][col].clone();
                for c in col..=cols {
                    let delta = f.mul(&factor, &aug[next_row][c]);
                    aug[r][c] = f.sub(&aug[r][c], &delta);
                }
            }
        }
        pivot_rows.push((next_row, col));
        next_row += 1;
    }
    // inconsistent?
    for r in next_row..n {
        if !f.is_zero(&aug[r][cols]) {
            return None;
        }
    }
    let mut x = vec![f.zero(); cols];
    for (r, c) in pivot_rows {
        x[c] = aug[r][cols].clone();
    }
    Some(x)
}

/// Inverse of a square matrix; `None` when singular.
pub fn invert_dense<F: Field>(field: &F, a: &[Vec<F::Elem>]) -> Option<Vec<Vec<F::Elem>>> {
    let f = field;
    let n = a.len();
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let mut e = vec![f.zero(); n];
        e[j] = f.one();
        let col = solve_dense(field, a, &e)?;
        cols.push(col);
    }
    // transpose column solutions into a matrix
    let mut inv = vec![vec![f.zero(); n]; n];
    for (j, col) in cols.iter().enumerate() {
        for i in 0..n {
            inv[i][j] = col[i].clone();
        }
    }
    Some(inv)
}

/// Matrix-vector product for dense data.
pub fn mat_vec<F: Field>(field: &F, a: &[Vec<F::Elem>], v: &[F::Elem]) -> Vec<F::Elem> {
    a.iter()
        .map(|row| {
            let mut acc = field.zero();
            for (x, y) in row.iter().zip(v) {
                acc = field.add(&acc, &field.mul(x, y));
            }
            acc
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat_int, PrimeField, Rationals};

    fn q(v: i64) -> crate::scalar::Rat {
        rat_int(v)
    }

    #[test]
    fn rank_of_dependent_rows() {
        let f = Rationals;
        let rows = vec![
            vec![q(1), q(2), q(3)],
            vec![q(2), q(4), q(6)],
            vec![q(0), q(1), q(1)],
        ];
        assert_eq!(rank_dense(&f, &rows), 2);
    }

    #[test]
    fn kernel_matches_rank_deficiency() {
        let f = Rationals;
        let m = vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)]];
        let ker = kernel_basis(&f, &m, 3);
        assert_eq!(ker.len(), 2);
        for v in &ker {
            let image = mat_vec(&f, &m, v);
            assert!(image.iter().all(|x| f.is_zero(x)));
        }
    }

    #[test]
    fn solve_and_invert() {
        let f = Rationals;
        let a = vec![vec![q(2), q(1)], vec![q(1), q(1)]];
        let x = solve_dense(&f, &a, &[q(3), q(2)]).unwrap();
        assert_eq!(x, vec![q(1), q(1)]);
        let inv = invert_dense(&f, &a).unwrap();
        let id = mat_vec(&f, &inv, &[q(3), q(2)]);
        assert_eq!(id, x);
    }

    #[test]
    fn span_membership_over_fp() {
        let f = PrimeField::new(7).unwrap();
        let basis = vec![vec![1u64, 2, 0], vec![0, 1, 1]];
        assert!(in_span(&f, &basis, &[1, 3, 1]));
        assert!(!in_span(&f, &basis, &[0, 0, 1]));
    }
}
