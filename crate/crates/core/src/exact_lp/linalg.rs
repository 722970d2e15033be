use std::collections::HashMap;

use super::Row;
use crate::scalar::ExactField;

/// Row-echelon basis built one vector at a time.
pub(crate) struct Echelon<T> {
    width: usize,
    // (pivot column, reduced row with 1 at the pivot)
    rows: Vec<(usize, Vec<T>)>,
}

impl<T: ExactField> Echelon<T> {
    pub(crate) fn new(width: usize) -> Self {
        Self {
            width,
            rows: Vec::new(),
        }
    }

    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }

    pub(crate) fn is_full(&self) -> bool {
        self.rows.len() == self.width
    }

    /// Adds `v` if it is independent of what is already stored.
    pub(crate) fn insert(&mut self, mut v: Vec<T>) -> bool {
        debug_assert_eq!(v.len(), self.width);
        for (pivot, row) in &self.rows {
            if v[*pivot].is_zero() {
                continue;
            }
            let factor = v[*pivot].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = x.clone() - factor.clone() * r.clone();
                }
            }
        }
        let Some(pivot) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = T::one() / v[pivot].clone();
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x = x.clone() * inv.clone();
            }
        }
        self.rows.push((pivot, v));
        true
    }
}

/// Rank of a dense matrix given as rows.
pub fn rank<T: ExactField>(matrix: &[Vec<T>]) -> usize {
    let width = matrix.first().map_or(0, Vec::len);
    let mut echelon = Echelon::new(width);
    for row in matrix {
        echelon.insert(row.clone());
        if echelon.is_full() {
            break;
        }
    }
    echelon.rank()
}

/// Column map for the variables not pinned to zero.
pub(crate) fn free_columns(num_vars: usize, zero_vars: &[usize]) -> HashMap<usize, usize> {
    let mut pinned = vec![false; num_vars];
    for &j in zero_vars {
        pinned[j] = true;
    }
    (0..num_vars)
        .filter(|&j| !pinned[j])
        .enumerate()
        .map(|(c, j)| (j, c))
        .collect()
}

/// Row restricted to the free columns, dense.
pub(crate) fn restrict<T: ExactField>(row: &Row<T>, columns: &HashMap<usize, usize>) -> Vec<T> {
    let mut dense = vec![T::zero(); columns.len()];
    for (j, a) in &row.coefficients {
        if let Some(&c) = columns.get(j) {
            dense[c] = a.clone();
        }
    }
    dense
}

/// Rank of `rows` together with the unit normals of `zero_vars`.
///
/// The unit normals span exactly their own coordinates, so the total rank
/// is their count plus the rank of the rows restricted to the rest.
pub(crate) fn constraint_rank<T: ExactField>(
    num_vars: usize,
    rows: &[&Row<T>],
    zero_vars: &[usize],
) -> usize {
    let mut distinct = zero_vars.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    let columns = free_columns(num_vars, &distinct);
    let mut echelon = Echelon::new(columns.len());
    for row in rows {
        if echelon.is_full() {
            break;
        }
        echelon.insert(restrict(row, &columns));
    }
    distinct.len() + echelon.rank()
}
