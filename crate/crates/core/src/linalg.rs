//! Dense exact linear algebra over the scalar field: row reduction,
//! solving, nullspaces. Matrices are plain `Vec<Vec<Scalar>>` row-major;
//! rows must share a length. Everything is field arithmetic, no pivoting
//! heuristics needed for correctness.

use crate::scalar::Scalar;

/// Outcome of solving `A x = b`.
#[derive(Debug, Clone)]
pub enum Solve {
    Unique(Vec<Scalar>),
    /// Solvable with a positive-dimensional solution set.
    Ambiguous {
        particular: Vec<Scalar>,
        kernel: Vec<Vec<Scalar>>,
    },
    Inconsistent,
}

impl Solve {
    pub fn particular(&self) -> Option<&Vec<Scalar>> {
        match self {
            Solve::Unique(x) => Some(x),
            Solve::Ambiguous { particular, .. } => Some(particular),
            Solve::Inconsistent => None,
        }
    }
}

/// In-place reduced row echelon form. Returns the pivot columns in order.
pub fn rref(mat: &mut [Vec<Scalar>]) -> Vec<usize> {
    let cols = mat.first().map(|r| r.len()).unwrap_or(0);
    rref_within(mat, cols)
}

/// Reduced row echelon form restricted to pivots in the first `limit`
/// columns; trailing columns are carried along (augmented systems).
///
/// Elimination is fraction-free (Montante/Bareiss): rows are first scaled
/// to clear denominators, every intermediate entry is then a minor of the
/// scaled matrix, and divisions by the previous pivot are exact. Plain
/// field elimination turns large sparse integer systems into gcd
/// grinders; this keeps coefficient growth polynomial.
pub fn rref_within(mat: &mut [Vec<Scalar>], limit: usize) -> Vec<usize> {
    let rows = mat.len();
    let cols = if rows == 0 { 0 } else { mat[0].len() };
    for r in mat.iter() {
        assert_eq!(r.len(), cols, "ragged matrix");
    }
    assert!(limit <= cols, "pivot limit exceeds width");
    use num_traits::One;
    for row in mat.iter_mut() {
        let mut l = num_bigint::BigInt::one();
        for e in row.iter() {
            l = num_integer::Integer::lcm(&l, &e.den_lcm());
        }
        if !l.is_one() {
            for e in row.iter_mut() {
                *e = e.scale_int(&l);
            }
        }
    }
    let mut pivots = Vec::new();
    let mut prev = Scalar::one(1);
    let mut r = 0;
    for c in 0..limit {
        let Some(p) = (r..rows).find(|&i| !mat[i][c].is_zero()) else {
            continue;
        };
        mat.swap(r, p);
        let pivot = mat[r][c].clone();
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = std::mem::replace(&mut mat[i][c], Scalar::zero(pivot.order()));
            if f.is_zero() {
                for j in 0..cols {
                    if j == c || mat[i][j].is_zero() {
                        continue;
                    }
                    mat[i][j] = pivot.mul(&mat[i][j]).div_exact(&prev);
                }
            } else {
                for j in 0..cols {
                    if j == c {
                        continue;
                    }
                    let t = match (mat[i][j].is_zero(), mat[r][j].is_zero()) {
                        (true, true) => continue,
                        (true, false) => f.mul(&mat[r][j]).neg(),
                        (false, true) => pivot.mul(&mat[i][j]),
                        (false, false) => pivot.mul(&mat[i][j]).sub(&f.mul(&mat[r][j])),
                    };
                    mat[i][j] = t.div_exact(&prev);
                }
            }
        }
        prev = pivot;
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    for (i, &c) in pivots.iter().enumerate() {
        let inv = mat[i][c].inv();
        for j in 0..cols {
            if !mat[i][j].is_zero() {
                mat[i][j] = mat[i][j].mul(&inv);
            }
        }
    }
    pivots
}

pub fn rank(mat: &[Vec<Scalar>]) -> usize {
    let mut m = mat.to_vec();
    rref(&mut m).len()
}

/// Basis of the right kernel `{x : A x = 0}`. `cols` disambiguates the
/// width when `mat` has no rows.
pub fn nullspace(mat: &[Vec<Scalar>], cols: usize) -> Vec<Vec<Scalar>> {
    let mut m = mat.to_vec();
    if let Some(row) = m.first() {
        assert_eq!(row.len(), cols, "cols mismatch");
    }
    let pivots = rref(&mut m);
    let mut basis = Vec::new();
    let mut piv_iter = pivots.iter().copied().peekable();
    let mut pivot_of_col = vec![None; cols];
    for (i, c) in pivots.iter().copied().enumerate() {
        pivot_of_col[c] = Some(i);
    }
    for free in 0..cols {
        if piv_iter.peek() == Some(&free) {
            piv_iter.next();
            continue;
        }
        let mut v = vec![Scalar::zero(1); cols];
        v[free] = Scalar::one(1);
        for (c, slot) in pivot_of_col.iter().enumerate() {
            if let Some(i) = slot {
                v[c] = m[*i][free].neg();
            }
        }
        basis.push(v);
    }
    basis
}

/// Solves `A x = b` exactly.
pub fn solve(a: &[Vec<Scalar>], b: &[Scalar]) -> Solve {
    assert_eq!(a.len(), b.len(), "row count mismatch");
    let cols = a.first().map(|r| r.len()).unwrap_or(0);
    let mut m: Vec<Vec<Scalar>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut m);
    if pivots.last() == Some(&cols) {
        return Solve::Inconsistent;
    }
    let mut particular = vec![Scalar::zero(1); cols];
    for (i, c) in pivots.iter().copied().enumerate() {
        particular[c] = m[i][cols].clone();
    }
    let homogeneous: Vec<Vec<Scalar>> = m
        .iter()
        .take(pivots.len())
        .map(|row| row[..cols].to_vec())
        .collect();
    let kernel = nullspace(&homogeneous, cols);
    if kernel.is_empty() {
        Solve::Unique(particular)
    } else {
        Solve::Ambiguous { particular, kernel }
    }
}

pub fn mat_vec(a: &[Vec<Scalar>], x: &[Scalar]) -> Vec<Scalar> {
    a.iter()
        .map(|row| {
            assert_eq!(row.len(), x.len());
            let mut acc = Scalar::zero(1);
            for (aij, xj) in row.iter().zip(x) {
                acc = acc.add(&aij.mul(xj));
            }
            acc
        })
        .collect()
}
