//! Dense linear algebra over the extension field, used to invert evaluation
//! maps. Matrices are row-major `Vec<Vec<FElem>>`.

use crate::gf::{FElem, FieldTower};
use std::sync::Arc;

/// Matrix-vector product.
pub fn mat_vec(mat: &[Vec<FElem>], v: &[FElem]) -> Vec<FElem> {
    mat.iter()
        .map(|row| {
            let mut acc = row[0].mul(&v[0]);
            for (a, x) in row.iter().zip(v).skip(1) {
                acc = acc.add(&a.mul(x));
            }
            acc
        })
        .collect()
}

/// Inverse of a square matrix by Gauss-Jordan elimination, `None` if singular.
pub fn invert(tower: &Arc<FieldTower>, mat: &[Vec<FElem>]) -> Option<Vec<Vec<FElem>>> {
    let n = mat.len();
    let mut a: Vec<Vec<FElem>> = mat.to_vec();
    let mut inv: Vec<Vec<FElem>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { tower.one() } else { tower.zero() })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let scale = a[col][col].inv().expect("pivot is nonzero");
        for j in 0..n {
            a[col][j] = a[col][j].mul(&scale);
            inv[col][j] = inv[col][j].mul(&scale);
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for j in 0..n {
                a[r][j] = a[r][j].sub(&factor.mul(&a[col][j]));
                inv[r][j] = inv[r][j].sub(&factor.mul(&inv[col][j]));
            }
        }
    }
    Some(inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::build_tower;

    #[test]
    fn invert_round_trip() {
        let t = build_tower(3, 2).unwrap();
        let mat = vec![
            vec![t.one(), t.gen()],
            vec![t.gen(), t.one()],
        ];
        let inv = invert(&t, &mat).unwrap();
        // M * M^{-1} columns are unit vectors
        for j in 0..2 {
            let col: Vec<_> = (0..2).map(|i| inv[i][j].clone()).collect();
            let e = mat_vec(&mat, &col);
            for (i, x) in e.iter().enumerate() {
                assert_eq!(x.is_one(), i == j);
                assert_eq!(x.is_zero(), i != j);
            }
        }
    }

    #[test]
    fn singular_matrix_has_no_inverse() {
        let t = build_tower(3, 2).unwrap();
        let mat = vec![
            vec![t.one(), t.one()],
            vec![t.one(), t.one()],
        ];
        assert!(invert(&t, &mat).is_none());
    }
}
