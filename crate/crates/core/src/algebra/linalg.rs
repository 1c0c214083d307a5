//! Exact Gaussian elimination over the rationals.

use num_traits::{One, Zero};

use super::poly::MultiPoly;
use super::Scalar;
use crate::error::{Error, Result};

/// Outcome of [`solve_linear`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinSolveResult {
    /// One particular solution, `None` when the system is inconsistent.
    pub solution: Option<Vec<Scalar>>,
    /// Basis of the null space of the coefficient matrix.
    pub null_space: Vec<Vec<Scalar>>,
}

impl LinSolveResult {
    pub fn is_consistent(&self) -> bool {
        self.solution.is_some()
    }
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut [Vec<Scalar>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == m.len() {
            break;
        }
        let Some(sel) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, sel);
        let inv = m[row][col].recip();
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[row].clone();
        for (r, other) in m.iter_mut().enumerate() {
            if r == row || other[col].is_zero() {
                continue;
            }
            let f = other[col].clone();
            for (x, p) in other.iter_mut().zip(&pivot_row).skip(col) {
                *x -= &f * p;
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

fn check_shape(rows: &[Vec<Scalar>], ncols: usize) -> Result<()> {
    for r in rows {
        if r.len() != ncols {
            return Err(Error::LengthMismatch {
                expected: ncols,
                got: r.len(),
            });
        }
    }
    Ok(())
}

pub fn rank(rows: &[Vec<Scalar>]) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut m = rows.to_vec();
    rref(&mut m, ncols).len()
}

/// Basis of `{v : M v = 0}` for an `rows.len() x ncols` matrix.
pub fn null_space(rows: &[Vec<Scalar>], ncols: usize) -> Vec<Vec<Scalar>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Scalar::zero(); ncols];
            v[f] = Scalar::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[r][f].clone();
            }
            v
        })
        .collect()
}

/// Solves `M v = rhs` exactly, returning a particular solution (free
/// variables set to zero) and a null-space basis.
pub fn solve_linear(rows: &[Vec<Scalar>], rhs: &[Scalar]) -> Result<LinSolveResult> {
    if rows.len() != rhs.len() {
        return Err(Error::LengthMismatch {
            expected: rows.len(),
            got: rhs.len(),
        });
    }
    let ncols = rows.first().map_or(0, Vec::len);
    check_shape(rows, ncols)?;
    let mut aug: Vec<Vec<Scalar>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut r = r.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug, ncols + 1);
    let null_space = null_space(rows, ncols);
    if pivots.last() == Some(&ncols) {
        return Ok(LinSolveResult {
            solution: None,
            null_space,
        });
    }
    let mut sol = vec![Scalar::zero(); ncols];
    for (r, &pc) in pivots.iter().enumerate() {
        sol[pc] = aug[r][ncols].clone();
    }
    Ok(LinSolveResult {
        solution: Some(sol),
        null_space,
    })
}

pub fn mat_vec(rows: &[Vec<Scalar>], v: &[Scalar]) -> Vec<Scalar> {
    rows.iter()
        .map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

/// Determinant of a square scalar matrix by elimination.
pub fn determinant(rows: &[Vec<Scalar>]) -> Scalar {
    let n = rows.len();
    let mut m = rows.to_vec();
    let mut det = Scalar::one();
    for col in 0..n {
        let Some(sel) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Scalar::zero();
        };
        if sel != col {
            m.swap(sel, col);
            det = -det;
        }
        det *= &m[col][col];
        let inv = m[col][col].recip();
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] * &inv;
            for c in col..n {
                let d = &f * &m[col][c];
                m[r][c] -= d;
            }
        }
    }
    det
}

/// Determinant of a square matrix of polynomials by cofactor expansion
/// along the first row. Intended for the small (at most 4x4) matrices used
/// here.
pub fn poly_determinant(rows: &[Vec<MultiPoly>], nvars: usize) -> MultiPoly {
    let n = rows.len();
    let cols: Vec<usize> = (0..n).collect();
    poly_det_rec(rows, 0, &cols, nvars)
}

fn poly_det_rec(rows: &[Vec<MultiPoly>], row: usize, cols: &[usize], nvars: usize) -> MultiPoly {
    if cols.is_empty() {
        return MultiPoly::one(nvars);
    }
    let mut acc = MultiPoly::zero(nvars);
    for (k, &c) in cols.iter().enumerate() {
        let entry = &rows[row][c];
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let minor = poly_det_rec(rows, row + 1, &rest, nvars);
        let t = entry * &minor;
        if k % 2 == 0 {
            acc += &t;
        } else {
            acc -= &t;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, poly::monomials_of_degree};

    fn ints(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn identity_system() {
        let id: Vec<Vec<Scalar>> = (0..4)
            .map(|i| (0..4).map(|j| int((i == j) as i64)).collect())
            .collect();
        let e2 = ints(&[0, 1, 0, 0]);
        let res = solve_linear(&id, &e2).unwrap();
        assert_eq!(res.solution, Some(e2));
        assert!(res.null_space.is_empty());
    }

    #[test]
    fn one_by_two_null_space() {
        let res = solve_linear(&[ints(&[1, 1])], &ints(&[0])).unwrap();
        assert_eq!(res.null_space, vec![ints(&[-1, 1])]);
        // proportional to (1, -1)
        assert_eq!(res.solution, Some(ints(&[0, 0])));
    }

    #[test]
    fn inconsistent_system() {
        let rows = vec![ints(&[1, 1]), ints(&[2, 2])];
        let res = solve_linear(&rows, &ints(&[1, 3])).unwrap();
        assert!(!res.is_consistent());
        assert_eq!(res.null_space.len(), 1);
    }

    #[test]
    fn shape_mismatch() {
        assert!(solve_linear(&[ints(&[1, 1])], &ints(&[0, 1])).is_err());
        assert!(solve_linear(&[ints(&[1, 1]), ints(&[1])], &ints(&[0, 1])).is_err());
    }

    #[test]
    fn rank_of_four_quadrics() {
        let basis = monomials_of_degree(4, 2);
        let qs = ["x1^2", "x1*x2", "x1*x3", "x1*x4"];
        let rows: Vec<Vec<Scalar>> = qs
            .iter()
            .map(|s| MultiPoly::parse(s, 4).unwrap().coefficients_in(&basis))
            .collect();
        assert_eq!(rows[0].len(), 10);
        assert_eq!(rank(&rows), 4);
    }

    #[test]
    fn scalar_determinant() {
        let m = vec![ints(&[2, 1, 0]), ints(&[1, 3, 1]), ints(&[0, 1, 4])];
        // 2(12-1) - 1(4-0) = 18
        assert_eq!(determinant(&m), int(18));
        let sing = vec![ints(&[1, 2]), ints(&[2, 4])];
        assert_eq!(determinant(&sing), int(0));
    }

    #[test]
    fn poly_determinant_matches_scalar_one() {
        let m = vec![ints(&[2, 1, 0]), ints(&[1, 3, 1]), ints(&[0, 1, 4])];
        let pm: Vec<Vec<MultiPoly>> = m
            .iter()
            .map(|r| {
                r.iter()
                    .map(|c| MultiPoly::constant(1, c.clone()))
                    .collect()
            })
            .collect();
        assert_eq!(poly_determinant(&pm, 1), MultiPoly::constant(1, int(18)));
    }
}
