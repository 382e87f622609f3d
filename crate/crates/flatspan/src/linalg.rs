//! Exact Gauss-Jordan elimination over rational rows.

use num_traits::Zero;

use crate::scalar::Scalar;

pub(crate) type Row = Vec<Scalar>;

pub(crate) fn is_zero_row(row: &[Scalar]) -> bool {
    row.iter().all(Zero::is_zero)
}

pub(crate) fn pivot_col(row: &[Scalar]) -> Option<usize> {
    row.iter().position(|x| !x.is_zero())
}

/// Reduced row-echelon form: leading entries are 1, pivot columns strictly
/// increase, and pivot columns are zero in every other row. Zero rows are
/// dropped, so the result is the unique canonical basis of the row space.
pub(crate) fn rref(mut rows: Vec<Row>) -> Vec<Row> {
    let width = rows.first().map_or(0, Vec::len);
    debug_assert!(rows.iter().all(|r| r.len() == width));
    let mut next = 0usize;
    for col in 0..width {
        let Some(pivot) = (next..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(next, pivot);
        let inv = rows[next][col].recip();
        for x in rows[next].iter_mut() {
            *x *= &inv;
        }
        for r in 0..rows.len() {
            if r == next || rows[r][col].is_zero() {
                continue;
            }
            let factor = rows[r][col].clone();
            for c in 0..width {
                let delta = &rows[next][c] * &factor;
                rows[r][c] -= delta;
            }
        }
        next += 1;
        if next == rows.len() {
            break;
        }
    }
    rows.truncate(next);
    rows
}

pub(crate) fn rank_of(rows: &[Row]) -> usize {
    rref(rows.to_vec()).len()
}

/// Eliminates the pivot components of `v` against an RREF basis.
/// The result is zero exactly when `v` lies in the basis row space.
pub(crate) fn reduce_against(basis: &[Row], v: &mut Row) {
    for row in basis {
        let Some(p) = pivot_col(row) else { continue };
        if v[p].is_zero() {
            continue;
        }
        let factor = v[p].clone();
        for c in 0..v.len() {
            let delta = &row[c] * &factor;
            v[c] -= delta;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn row(vals: &[i64]) -> Row {
        vals.iter().map(|&v| int(v)).collect()
    }

    #[test]
    fn rref_already_echelon() {
        let rows = vec![row(&[1, 0, 0]), row(&[0, 1, 0])];
        assert_eq!(rref(rows.clone()), rows);
    }

    #[test]
    fn rref_collapses_dependent_rows() {
        let rows = vec![row(&[1, 1, 1]), row(&[2, 2, 2])];
        assert_eq!(rref(rows), vec![row(&[1, 1, 1])]);
    }

    #[test]
    fn rref_is_basis_invariant() {
        // Same row space, different presentations.
        let a = vec![row(&[2, 4, 6]), row(&[1, 1, 1])];
        let b = vec![row(&[1, 3, 5]), row(&[3, 5, 7])];
        assert_eq!(rref(a), rref(b));
    }

    #[test]
    fn rank_and_membership() {
        let basis = rref(vec![row(&[1, 0, 2]), row(&[0, 1, 3])]);
        assert_eq!(rank_of(&basis), 2);
        let mut inside = row(&[2, 5, 19]);
        reduce_against(&basis, &mut inside);
        assert!(is_zero_row(&inside));
        let mut outside = row(&[0, 0, 1]);
        reduce_against(&basis, &mut outside);
        assert!(!is_zero_row(&outside));
    }
}
