//! Small exact linear algebra over `Z` and `Q`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type IntMatrix = Vec<Vec<i64>>;

pub fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

pub fn mat_vec(m: &IntMatrix, v: &[i64]) -> Vec<i64> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let n = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| row.iter().enumerate().map(|(k, x)| x * b[k][j]).sum())
                .collect()
        })
        .collect()
}

pub fn transpose(a: &IntMatrix) -> IntMatrix {
    let n = a.first().map_or(0, |r| r.len());
    (0..n)
        .map(|j| a.iter().map(|row| row[j]).collect())
        .collect()
}

/// A `Z`-basis of `{x in Z^n : m x = 0}`.
///
/// Column operations bring `m` to column echelon form while the same
/// operations are recorded in a unimodular `u`; the columns of `u` that end
/// up opposite zero columns span the kernel. The kernel of an integer matrix
/// is saturated, so no extra step is needed.
pub fn integer_kernel(m: &IntMatrix, n: usize) -> Vec<Vec<i64>> {
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut u: Vec<Vec<i128>> = (0..n)
        .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
        .collect();
    let rows = a.len();
    let mut pivot = 0;
    for i in 0..rows {
        if pivot >= n {
            break;
        }
        loop {
            // smallest non-zero entry of row i among columns >= pivot
            let best = (pivot..n)
                .filter(|&j| a[i][j] != 0)
                .min_by_key(|&j| a[i][j].abs());
            let Some(b) = best else { break };
            swap_cols(&mut a, &mut u, pivot, b);
            let mut done = true;
            for j in pivot + 1..n {
                if a[i][j] != 0 {
                    let q = a[i][j].div_euclid(a[i][pivot]);
                    add_col(&mut a, &mut u, j, pivot, -q);
                    if a[i][j] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if (pivot..n).any(|j| a[i][j] != 0) {
            pivot += 1;
        }
    }
    (pivot..n)
        .map(|j| (0..n).map(|r| u[r][j] as i64).collect())
        .collect()
}

fn swap_cols(a: &mut [Vec<i128>], u: &mut [Vec<i128>], x: usize, y: usize) {
    if x == y {
        return;
    }
    for row in a.iter_mut() {
        row.swap(x, y);
    }
    for row in u.iter_mut() {
        row.swap(x, y);
    }
}

/// column `dst += f * column src`
fn add_col(a: &mut [Vec<i128>], u: &mut [Vec<i128>], dst: usize, src: usize, f: i128) {
    for row in a.iter_mut() {
        row[dst] += f * row[src];
    }
    for row in u.iter_mut() {
        row[dst] += f * row[src];
    }
}

fn q(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Rational coordinates of `v` in the linearly independent family `basis`,
/// or `None` if `v` is outside its `Q`-span.
pub fn solve_in_basis(basis: &[Vec<i64>], v: &[i64]) -> Option<Vec<BigRational>> {
    let n = v.len();
    let k = basis.len();
    // augmented system: columns are basis vectors, rhs is v
    let mut rows: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut r: Vec<BigRational> = basis.iter().map(|b| q(b[i])).collect();
            r.push(q(v[i]));
            r
        })
        .collect();
    let mut pivots = Vec::with_capacity(k);
    let mut row = 0;
    for col in 0..k {
        let Some(p) = (row..n).find(|&r| !rows[r][col].is_zero()) else {
            return None; // dependent family
        };
        rows.swap(row, p);
        let inv = rows[row][col].recip();
        for c in col..=k {
            let t = &rows[row][c] * &inv;
            rows[row][c] = t;
        }
        for r in 0..n {
            if r != row && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                for c in col..=k {
                    let t = &rows[row][c] * &f;
                    rows[r][c] -= t;
                }
            }
        }
        pivots.push(row);
        row += 1;
    }
    if rows[row..].iter().any(|r| !r[k].is_zero()) {
        return None;
    }
    Some(pivots.iter().map(|&r| rows[r][k].clone()).collect())
}

/// Integer coordinates of `v` in `basis`, if they exist.
pub fn integer_coordinates(basis: &[Vec<i64>], v: &[i64]) -> Option<Vec<i64>> {
    solve_in_basis(basis, v)?
        .into_iter()
        .map(|c| {
            if c.is_integer() {
                c.to_integer().to_i64()
            } else {
                None
            }
        })
        .collect()
}

/// Determinant of a square rational matrix.
pub fn determinant(m: &[Vec<BigRational>]) -> BigRational {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        det *= a[col][col].clone();
        let inv = a[col][col].recip();
        for r in col + 1..n {
            if !a[r][col].is_zero() {
                let f = &a[r][col] * &inv;
                for c in col..n {
                    let t = &a[col][c] * &f;
                    a[r][c] -= t;
                }
            }
        }
    }
    det
}

/// `|det|` of the integer Gram-type matrix, as an integer.
pub fn int_determinant(m: &IntMatrix) -> BigInt {
    let rat: Vec<Vec<BigRational>> = m
        .iter()
        .map(|r| r.iter().map(|&x| q(x)).collect())
        .collect();
    determinant(&rat).to_integer().abs()
}
