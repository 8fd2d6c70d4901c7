//! Subspaces of flattened matrices kept in reduced row-echelon form, and the
//! closure that computes the subalgebra generated by a set of matrices.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::matrix::RepMatrix;
use crate::rational::Rational;

/// One reduced basis vector. `support` lists the nonzero coordinates so that
/// elimination only touches those.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Row {
    pivot: usize,
    dense: Vec<Rational>,
    support: Vec<usize>,
}

impl Row {
    fn refresh_support(&mut self) {
        self.support = nonzero_positions(&self.dense);
    }
}

fn nonzero_positions(v: &[Rational]) -> Vec<usize> {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, _)| i).collect()
}

/// Echelon basis of a subspace of `rows x cols` matrices flattened row-major.
///
/// Every basis vector has a 1 at its pivot and every other basis vector has a
/// 0 there; basis vectors are stored in increasing pivot order, so two
/// `SpanBasis` values describe the same subspace iff they compare equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanBasis {
    mat_rows: usize,
    mat_cols: usize,
    basis: Vec<Row>,
}

impl SpanBasis {
    pub fn new(mat_rows: usize, mat_cols: usize) -> Self {
        SpanBasis { mat_rows, mat_cols, basis: Vec::new() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.mat_rows * self.mat_cols
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.basis.iter().map(|r| r.pivot).collect()
    }

    pub fn vectors(&self) -> impl Iterator<Item = &[Rational]> {
        self.basis.iter().map(|r| r.dense.as_slice())
    }

    /// The basis vectors reshaped back into matrices.
    pub fn matrices(&self) -> Vec<RepMatrix> {
        self.basis
            .iter()
            .map(|r| RepMatrix::from_flat(self.mat_rows, self.mat_cols, r.dense.clone()).expect("ambient shape"))
            .collect()
    }

    fn check_shape(&self, m: &RepMatrix) -> Result<()> {
        if m.rows() != self.mat_rows || m.cols() != self.mat_cols {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} matrix in a span of {}x{} matrices",
                m.rows(),
                m.cols(),
                self.mat_rows,
                self.mat_cols
            )));
        }
        Ok(())
    }

    fn reduce(&self, v: &mut [Rational]) {
        for row in &self.basis {
            if v[row.pivot].is_zero() {
                continue;
            }
            let c = v[row.pivot].clone();
            for &i in &row.support {
                v[i] -= &c * &row.dense[i];
            }
        }
    }

    /// Residual of `m` modulo the span; zero iff `m` is in the span.
    pub fn residual(&self, m: &RepMatrix) -> Result<Vec<Rational>> {
        self.check_shape(m)?;
        let mut v = m.entries().to_vec();
        self.reduce(&mut v);
        Ok(v)
    }

    pub fn contains(&self, m: &RepMatrix) -> Result<bool> {
        Ok(self.residual(m)?.iter().all(Rational::is_zero))
    }

    /// Adds `m` to the span. Returns whether the rank grew.
    pub fn insert(&mut self, m: &RepMatrix) -> Result<bool> {
        Ok(self.insert_residual(m)?.is_some())
    }

    /// Adds `m` to the span and, when the rank grew, returns the normalized
    /// residual of `m` that was added as a new basis vector.
    pub fn insert_residual(&mut self, m: &RepMatrix) -> Result<Option<RepMatrix>> {
        let mut v = self.residual(m)?;
        let Some(pivot) = v.iter().position(|x| !x.is_zero()) else {
            return Ok(None);
        };
        let inv = v[pivot].inv()?;
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let added = RepMatrix::from_flat(self.mat_rows, self.mat_cols, v.clone())?;
        let new = Row { pivot, support: nonzero_positions(&v), dense: v };
        for row in &mut self.basis {
            if row.dense[pivot].is_zero() {
                continue;
            }
            let c = row.dense[pivot].clone();
            for &i in &new.support {
                row.dense[i] -= &c * &new.dense[i];
            }
            row.refresh_support();
        }
        let at = self.basis.partition_point(|r| r.pivot < pivot);
        self.basis.insert(at, new);
        Ok(Some(added))
    }
}

/// Dimension and echelon basis of the smallest algebra of matrices containing
/// `generators` (and the identity when `include_identity` is set).
///
/// The span is seeded with the identity and the generators. Each time an
/// element enlarges the span, its reduced residual is queued; queued
/// elements are left-multiplied by every generator until the queue drains.
/// The residuals span the same space as the elements they came from, so
/// every word in the generators is reached.
pub fn span_closure(generators: &[RepMatrix], include_identity: bool) -> Result<(usize, SpanBasis)> {
    let Some(first) = generators.first() else {
        return Err(Error::ShapeMismatch("closure needs at least one generator".into()));
    };
    let n = first.rows();
    if generators.iter().any(|g| !g.is_square() || g.rows() != n) {
        return Err(Error::ShapeMismatch("generators must be square of equal size".into()));
    }
    let mut span = SpanBasis::new(n, n);
    let mut queue = VecDeque::new();
    let seeds = include_identity.then(|| RepMatrix::identity(n)).into_iter().chain(generators.iter().cloned());
    for seed in seeds {
        queue.extend(span.insert_residual(&seed)?);
    }
    while let Some(word) = queue.pop_front() {
        for g in generators {
            queue.extend(span.insert_residual(&(g * &word))?);
        }
    }
    Ok((span.rank(), span))
}
