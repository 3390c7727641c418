use std::collections::BTreeMap;

use super::{Field, LinalgError, Scalar};

/// A sparse row: column index to nonzero entry.
pub type SparseRow = BTreeMap<usize, Scalar>;

/// `row += factor * other`, dropping entries that cancel.
pub fn add_scaled(row: &mut SparseRow, factor: &Scalar, other: &SparseRow) {
    for (col, value) in other {
        let delta = factor * value;
        match row.get_mut(col) {
            Some(entry) => {
                *entry += &delta;
                if entry.is_zero() {
                    row.remove(col);
                }
            }
            None => {
                if !delta.is_zero() {
                    row.insert(*col, delta);
                }
            }
        }
    }
}

/// Sparse matrix over a single field. Zero entries are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    cols: usize,
    rows: Vec<SparseRow>,
}

impl Matrix {
    pub fn zero(field: Field, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            cols,
            rows: vec![SparseRow::new(); rows],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_ints(field: Field, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zero(field, rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged integer matrix");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, field.int(v));
            }
        }
        m
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &SparseRow {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.rows[i].get(&j).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn set(&mut self, i: usize, j: usize, value: Scalar) {
        assert!(j < self.cols, "column {j} out of range");
        assert_eq!(value.field(), self.field, "entry from a different field");
        if value.is_zero() {
            self.rows[i].remove(&j);
        } else {
            self.rows[i].insert(j, value);
        }
    }

    /// Adds `value` to entry `(i, j)`.
    pub fn add_to(&mut self, i: usize, j: usize, value: &Scalar) {
        let current = self.get(i, j);
        self.set(i, j, current + value);
    }

    pub fn push_row(&mut self, row: SparseRow) {
        debug_assert!(row.keys().all(|&c| c < self.cols));
        self.rows.push(row);
    }

    /// Builds a matrix whose columns are the given sparse vectors (row index to entry).
    pub fn from_columns(field: Field, rows: usize, columns: &[SparseRow]) -> Self {
        let mut m = Self::zero(field, rows, columns.len());
        for (j, column) in columns.iter().enumerate() {
            for (&i, v) in column {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn mul_vec(&self, x: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(x.len(), self.cols);
        self.rows
            .iter()
            .map(|row| {
                let mut acc = self.field.zero();
                for (&j, v) in row {
                    acc += v * &x[j];
                }
                acc
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        let mut echelon = Echelon::new(self.field);
        for row in &self.rows {
            echelon.insert(row.clone());
        }
        echelon.rank()
    }
}

/// Row-echelon form built one row at a time. Every stored row is normalized so its
/// pivot entry is 1; `reduce` eliminates all pivot columns from a vector.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    pivots: BTreeMap<usize, SparseRow>,
}

impl Echelon {
    pub fn new(field: Field) -> Self {
        Echelon {
            field,
            pivots: BTreeMap::new(),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    pub fn pivot_row(&self, col: usize) -> Option<&SparseRow> {
        self.pivots.get(&col)
    }

    pub fn reduce(&self, mut row: SparseRow) -> SparseRow {
        let mut cursor = 0;
        loop {
            let hit = row
                .range(cursor..)
                .find(|(c, _)| self.pivots.contains_key(c))
                .map(|(c, v)| (*c, v.clone()));
            match hit {
                None => return row,
                Some((col, value)) => {
                    add_scaled(&mut row, &(-value), &self.pivots[&col]);
                    cursor = col + 1;
                }
            }
        }
    }

    /// Reduces and stores the row; returns its new pivot column, or `None` if it was dependent.
    pub fn insert(&mut self, row: SparseRow) -> Option<usize> {
        let row = self.reduce(row);
        let (&col, lead) = row.iter().next()?;
        let scale = lead.inverse().expect("nonzero pivot");
        let normalized = row.iter().map(|(&c, v)| (c, v * &scale)).collect();
        self.pivots.insert(col, normalized);
        Some(col)
    }

    pub fn contains(&self, row: &SparseRow) -> bool {
        self.reduce(row.clone()).is_empty()
    }

    /// Back-substitutes so every pivot column is zero outside its own row.
    pub fn into_reduced(mut self) -> Self {
        let cols: Vec<usize> = self.pivots.keys().rev().copied().collect();
        for col in cols {
            let mut row = self.pivots.remove(&col).expect("pivot present");
            let one = row.remove(&col).expect("pivot entry");
            let mut rest = self.reduce(row);
            rest.insert(col, one);
            self.pivots.insert(col, rest);
        }
        self
    }
}

/// A solved affine system: the canonical particular solution (free variables zero in
/// reduced-row-echelon order) and a basis of the homogeneous solutions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSolution {
    pub particular: Vec<Scalar>,
    pub nullspace: Vec<Vec<Scalar>>,
}

/// Solves `A x = b`. Returns `Ok(None)` when the system is inconsistent.
pub fn solve_affine_system(a: &Matrix, b: &[Scalar]) -> Result<Option<AffineSolution>, LinalgError> {
    if b.len() != a.rows() {
        return Err(LinalgError::DimensionMismatch {
            expected: a.rows(),
            found: b.len(),
        });
    }
    if let Some(bad) = b.iter().find(|s| s.field() != a.field()) {
        return Err(LinalgError::FieldMismatch {
            expected: a.field(),
            found: bad.field(),
        });
    }
    let n = a.cols();
    let mut echelon = Echelon::new(a.field());
    for (row, rhs) in a.rows.iter().zip(b) {
        let mut augmented = row.clone();
        if !rhs.is_zero() {
            augmented.insert(n, rhs.clone());
        }
        if echelon.insert(augmented) == Some(n) {
            return Ok(None);
        }
    }
    let echelon = echelon.into_reduced();
    let field = a.field();
    let mut particular = vec![field.zero(); n];
    for col in echelon.pivot_columns() {
        if let Some(v) = echelon.pivots[&col].get(&n) {
            particular[col] = v.clone();
        }
    }
    Ok(Some(AffineSolution {
        particular,
        nullspace: kernel_from_reduced(&echelon, n),
    }))
}

/// Basis of `{x : A x = 0}`, one vector per free column, in reduced-echelon canonical form.
pub fn nullspace_basis(a: &Matrix) -> Vec<Vec<Scalar>> {
    let mut echelon = Echelon::new(a.field());
    for row in &a.rows {
        echelon.insert(row.clone());
    }
    kernel_from_reduced(&echelon.into_reduced(), a.cols())
}

fn kernel_from_reduced(echelon: &Echelon, n: usize) -> Vec<Vec<Scalar>> {
    let field = echelon.field();
    let mut basis = Vec::new();
    for free in (0..n).filter(|c| !echelon.pivots.contains_key(c)) {
        let mut v = vec![field.zero(); n];
        v[free] = field.one();
        for (&col, row) in echelon.pivots.range(..free) {
            if let Some(entry) = row.get(&free) {
                v[col] = -entry;
            }
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(field: Field, xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| field.int(x)).collect()
    }

    #[test]
    fn identity_system() {
        let q = Field::Rationals;
        let sol = solve_affine_system(&Matrix::identity(q, 3), &ints(q, &[1, 2, 3]))
            .unwrap()
            .unwrap();
        assert_eq!(sol.particular, ints(q, &[1, 2, 3]));
        assert!(sol.nullspace.is_empty());
    }

    #[test]
    fn zero_system() {
        let q = Field::Rationals;
        let sol = solve_affine_system(&Matrix::zero(q, 2, 2), &ints(q, &[0, 0]))
            .unwrap()
            .unwrap();
        assert_eq!(sol.particular, ints(q, &[0, 0]));
        assert_eq!(sol.nullspace.len(), 2);
    }

    #[test]
    fn rank_one_system() {
        let q = Field::Rationals;
        let a = Matrix::from_ints(q, &[&[1, 1], &[2, 2]]);
        let sol = solve_affine_system(&a, &ints(q, &[3, 6])).unwrap().unwrap();
        assert_eq!(sol.particular, ints(q, &[3, 0]));
        assert_eq!(sol.nullspace, vec![ints(q, &[-1, 1])]);
        assert_eq!(a.mul_vec(&sol.particular), ints(q, &[3, 6]));
        assert_eq!(a.mul_vec(&sol.nullspace[0]), ints(q, &[0, 0]));
    }

    #[test]
    fn inconsistent_system() {
        let q = Field::Rationals;
        let a = Matrix::from_ints(q, &[&[1, 1], &[2, 2]]);
        assert_eq!(solve_affine_system(&a, &ints(q, &[3, 5])).unwrap(), None);
    }

    #[test]
    fn nullspace_over_f5() {
        let f5 = Field::prime(5).unwrap();
        let a = Matrix::from_ints(f5, &[&[1, 2, 3]]);
        let basis = nullspace_basis(&a);
        assert_eq!(basis.len(), 2);
        for v in &basis {
            assert!(a.mul_vec(v).iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn trivial_nullspaces() {
        let q = Field::Rationals;
        assert!(nullspace_basis(&Matrix::identity(q, 4)).is_empty());
        let zero = nullspace_basis(&Matrix::zero(q, 3, 5));
        assert_eq!(zero.len(), 5);
        for (i, v) in zero.iter().enumerate() {
            assert!(v.iter().enumerate().all(|(j, x)| x.is_one() == (i == j)));
        }
    }

    #[test]
    fn mismatches_are_reported() {
        let q = Field::Rationals;
        let f5 = Field::prime(5).unwrap();
        let a = Matrix::identity(q, 2);
        assert!(matches!(
            solve_affine_system(&a, &ints(q, &[1])),
            Err(LinalgError::DimensionMismatch { .. })
        ));
        assert!(matches!(
            solve_affine_system(&a, &ints(f5, &[1, 1])),
            Err(LinalgError::FieldMismatch { .. })
        ));
    }
}
