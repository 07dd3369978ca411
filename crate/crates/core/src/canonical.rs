//! Triangular solve for a bar-invariant basis.
//!
//! Given a standard basis `b_0, ..., b_{n-1}` listed along a linear
//! extension of a partial order, and the matrix `R` with
//! `bar(b_y) = Σ_x R[x][y] b_x` (unitriangular), the canonical basis
//! `C_y = Σ_x P[x][y] b_x` is the unique bar-invariant element with
//! `P[y][y] = 1` and `P[x][y] ∈ t^{-1} Z[t^{-1}]` for `x != y`.

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

/// Dense matrix of Laurent polynomials, `m[row][col]`.
pub type PolyMatrix<C> = Vec<Vec<LaurentPoly<C>>>;

/// Solves for every column of `P`. `r` must be square and upper
/// unitriangular in the given order.
pub fn bar_solve<C: Coeff>(r: &PolyMatrix<C>) -> Result<PolyMatrix<C>> {
    let n = r.len();
    let mut p: PolyMatrix<C> = vec![vec![LaurentPoly::zero(); n]; n];
    for y in 0..n {
        if !r[y][y].is_one() {
            return Err(Error::Inconsistent(format!("bar matrix has diagonal {}", r[y][y])));
        }
        p[y][y] = LaurentPoly::one();
        // bar(P[z][y]) for z already solved; filled as we descend.
        let mut barred: Vec<Option<LaurentPoly<C>>> = vec![None; n];
        barred[y] = Some(LaurentPoly::one());
        for x in (0..y).rev() {
            let mut s = LaurentPoly::zero();
            for z in x + 1..=y {
                if r[x][z].is_zero() {
                    continue;
                }
                if let Some(b) = &barred[z] {
                    if !b.is_zero() {
                        s.add_product(&r[x][z], b)?;
                    }
                }
            }
            let neg = s.filter_exponents(|e| e < 0);
            let pos = s.filter_exponents(|e| e > 0);
            if !s.coeff(0).is_zero() || pos != neg.bar().neg()? {
                return Err(Error::Inconsistent(format!(
                    "no bar-invariant solution at ({x}, {y}): residual {s}"
                )));
            }
            barred[x] = Some(neg.bar());
            p[x][y] = neg;
        }
    }
    Ok(p)
}

/// Product of dense matrices.
pub fn mat_mul<C: Coeff>(a: &PolyMatrix<C>, b: &PolyMatrix<C>) -> Result<PolyMatrix<C>> {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    let mut out = vec![vec![LaurentPoly::zero(); m]; n];
    for (i, row) in a.iter().enumerate() {
        for (k, aik) in row.iter().enumerate() {
            if aik.is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[k][j].is_zero() {
                    out[i][j].add_product(aik, &b[k][j])?;
                }
            }
        }
    }
    Ok(out)
}

/// Whether `m` is the identity matrix.
pub fn is_identity<C: Coeff>(m: &PolyMatrix<C>) -> bool {
    m.iter().enumerate().all(|(i, row)| {
        row.iter()
            .enumerate()
            .all(|(j, e)| if i == j { e.is_one() } else { e.is_zero() })
    })
}
