//! Dense matrices over [`Rational`].
//!
//! Column-action convention throughout: `m[(r, c)]` is the coefficient of basis
//! vector `r` in the image of basis vector `c`, so applying an operator to a
//! coordinate vector is `m * v` and composing "first X then Y" is `Y * X`.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RepMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RepMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RepMatrix { rows, cols, entries: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, Rational::one())
    }

    pub fn scalar(n: usize, value: Rational) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = value.clone();
        }
        m
    }

    pub fn diag(values: impl IntoIterator<Item = Rational>) -> Self {
        let values: Vec<Rational> = values.into_iter().collect();
        let mut m = Self::zeros(values.len(), values.len());
        for (i, v) in values.into_iter().enumerate() {
            m[(i, i)] = v;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        RepMatrix { rows, cols, entries }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != n_cols) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        Ok(RepMatrix { rows: n_rows, cols: n_cols, entries: rows.into_iter().flatten().collect() })
    }

    /// Rebuilds a matrix from its row-major flattening.
    pub fn from_flat(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!("{} entries for a {rows}x{cols} matrix", entries.len())));
        }
        Ok(RepMatrix { rows, cols, entries })
    }

    /// Small-integer literal, mostly for tests.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let rows = rows.iter().map(|r| r.iter().map(|&x| Rational::from(x)).collect()).collect();
        Self::from_rows(rows).expect("rectangular literal")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Rational> {
        self.entries
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Rational::is_zero)
    }

    pub fn nnz(&self) -> usize {
        self.entries.iter().filter(|x| !x.is_zero()).count()
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).map(|i| &self[(i, i)]).sum()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn scale(&self, s: &Rational) -> Self {
        RepMatrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(|x| x * s).collect() }
    }

    pub fn checked_add(&self, rhs: &RepMatrix) -> Result<Self> {
        self.same_shape(rhs, "add")?;
        Ok(RepMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn checked_sub(&self, rhs: &RepMatrix) -> Result<Self> {
        self.same_shape(rhs, "sub")?;
        Ok(RepMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn checked_mul(&self, rhs: &RepMatrix) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            let out_row = &mut out.entries[i * rhs.cols..(i + 1) * rhs.cols];
            for k in 0..self.cols {
                let a = &self.entries[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for (o, b) in out_row.iter_mut().zip(rhs.row(k)) {
                    if !b.is_zero() {
                        *o += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::ShapeMismatch(format!(
                "vector of length {} for a {}x{} matrix",
                v.len(),
                self.rows,
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|r| self.row(r).iter().zip(v).filter(|(a, b)| !a.is_zero() && !b.is_zero()).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::identity(self.rows);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// `self - value * I`.
    pub fn shift(&self, value: &Rational) -> Self {
        let mut m = self.clone();
        for i in 0..self.rows.min(self.cols) {
            m[(i, i)] -= value;
        }
        m
    }

    /// First `(row, col)` at which the two matrices differ.
    pub fn first_difference(&self, other: &RepMatrix) -> Option<(usize, usize)> {
        if self.rows != other.rows || self.cols != other.cols {
            return Some((0, 0));
        }
        self.entries.iter().zip(&other.entries).position(|(a, b)| a != b).map(|i| (i / self.cols, i % self.cols))
    }

    /// Restriction to the coordinate subspace spanned by the given basis
    /// vectors; fails unless that subspace is invariant.
    pub fn restrict(&self, indices: &[usize]) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("restrict needs a square matrix".into()));
        }
        let mut inside = vec![false; self.rows];
        for &i in indices {
            if i >= self.rows {
                return Err(Error::OutOfRange(format!("index {i} in a space of dimension {}", self.rows)));
            }
            inside[i] = true;
        }
        for &c in indices {
            for r in 0..self.rows {
                if !inside[r] && !self[(r, c)].is_zero() {
                    return Err(Error::PreconditionViolated(format!(
                        "coordinate subspace is not invariant: entry ({r}, {c}) leaves it"
                    )));
                }
            }
        }
        Ok(self.submatrix(indices, indices))
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |r, c| self[(rows[r], cols[c])].clone())
    }

    pub fn rank(&self) -> usize {
        let rows = (0..self.rows).map(|r| self.row(r).to_vec()).collect();
        rref(rows).1.len()
    }

    /// Basis of the kernel, one vector per free column of the reduced
    /// row-echelon form (1 in the free coordinate).
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let rows = (0..self.rows).map(|r| self.row(r).to_vec()).collect();
        let (reduced, pivots) = rref(rows);
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![Rational::zero(); self.cols];
                v[free] = Rational::one();
                for (row, &p) in reduced.iter().zip(&pivots) {
                    v[p] = -&row[free];
                }
                v
            })
            .collect()
    }

    fn same_shape(&self, rhs: &RepMatrix, what: &str) -> Result<()> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::ShapeMismatch(format!(
                "{what}: {}x{} vs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(())
    }
}

impl Index<(usize, usize)> for RepMatrix {
    type Output = Rational;
    fn index(&self, (r, c): (usize, usize)) -> &Rational {
        assert!(r < self.rows && c < self.cols, "index ({r}, {c}) out of bounds");
        &self.entries[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for RepMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Rational {
        assert!(r < self.rows && c < self.cols, "index ({r}, {c}) out of bounds");
        &mut self.entries[r * self.cols + c]
    }
}

// Operator forms panic on shape mismatch; the `checked_*` methods report it.
impl Add for &RepMatrix {
    type Output = RepMatrix;
    fn add(self, rhs: &RepMatrix) -> RepMatrix {
        self.checked_add(rhs).unwrap()
    }
}

impl Sub for &RepMatrix {
    type Output = RepMatrix;
    fn sub(self, rhs: &RepMatrix) -> RepMatrix {
        self.checked_sub(rhs).unwrap()
    }
}

impl Mul for &RepMatrix {
    type Output = RepMatrix;
    fn mul(self, rhs: &RepMatrix) -> RepMatrix {
        self.checked_mul(rhs).unwrap()
    }
}

impl Neg for &RepMatrix {
    type Output = RepMatrix;
    fn neg(self) -> RepMatrix {
        RepMatrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(|x| -x).collect() }
    }
}

impl fmt::Debug for RepMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RepMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Kronecker product on the i-major basis: entry `[(i,j), (i',j')]` is
/// `x[i,i'] * y[j,j']`, with `(i,j)` flattened to `i * y.rows + j`.
pub fn kron(x: &RepMatrix, y: &RepMatrix) -> RepMatrix {
    let rows = x.rows * y.rows;
    let cols = x.cols * y.cols;
    let mut out = RepMatrix::zeros(rows, cols);
    for i in 0..x.rows {
        for ic in 0..x.cols {
            let a = &x[(i, ic)];
            if a.is_zero() {
                continue;
            }
            for j in 0..y.rows {
                for jc in 0..y.cols {
                    let b = &y[(j, jc)];
                    if !b.is_zero() {
                        out[(i * y.rows + j, ic * y.cols + jc)] = a * b;
                    }
                }
            }
        }
    }
    out
}

/// `xy - yx`.
pub fn commutator(x: &RepMatrix, y: &RepMatrix) -> Result<RepMatrix> {
    if !x.is_square() || !y.is_square() || x.rows != y.rows {
        return Err(Error::ShapeMismatch(format!("commutator of {}x{} and {}x{}", x.rows, x.cols, y.rows, y.cols)));
    }
    (x * y).checked_sub(&(y * x))
}

/// Basis of `ker(m - lambda I)`; empty when `lambda` is not an eigenvalue.
pub fn eigenspace_basis(m: &RepMatrix, lambda: &Rational) -> Result<Vec<Vec<Rational>>> {
    if !m.is_square() {
        return Err(Error::ShapeMismatch("eigenspace of a non-square matrix".into()));
    }
    Ok(m.shift(lambda).nullspace())
}

/// Reduced row-echelon form with first-nonzero pivoting. Returns the nonzero
/// rows and their pivot columns.
pub fn rref(mut rows: Vec<Vec<Rational>>) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let n_cols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut lead = 0;
    for col in 0..n_cols {
        if lead == rows.len() {
            break;
        }
        let Some(found) = (lead..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(lead, found);
        let inv = rows[lead][col].inv().expect("pivot is nonzero");
        for x in rows[lead].iter_mut().skip(col) {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let pivot_row = std::mem::take(&mut rows[lead]);
        for (r, row) in rows.iter_mut().enumerate() {
            if r == lead || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                if !p.is_zero() {
                    *x -= &factor * p;
                }
            }
        }
        rows[lead] = pivot_row;
        pivots.push(col);
        lead += 1;
    }
    rows.truncate(lead);
    (rows, pivots)
}
