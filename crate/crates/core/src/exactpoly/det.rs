//! Determinants of square matrices with polynomial entries.

use super::coeff::Coeff;
use super::poly::Poly;
use crate::error::{Error, Result};

fn check_square<C>(m: &[Vec<Poly<C>>]) -> Result<()> {
    let n = m.len();
    for (i, row) in m.iter().enumerate() {
        if row.len() != n {
            return Err(Error::NotSquare { rows: n, row: i, cols: row.len() });
        }
    }
    Ok(())
}

/// Exact determinant of a polynomial matrix.
///
/// Small matrices (n ≤ 4) use cofactor expansion; larger ones go through
/// fraction-free Bareiss elimination.
pub fn det_poly_matrix<C: Coeff>(m: &[Vec<Poly<C>>]) -> Result<Poly<C>> {
    check_square(m)?;
    if m.len() <= 4 {
        det_cofactor(m)
    } else {
        det_bareiss(m)
    }
}

/// Fraction-free Bareiss elimination. Every division is an exact polynomial
/// division by the previous pivot (Sylvester's identity).
pub fn det_bareiss<C: Coeff>(m: &[Vec<Poly<C>>]) -> Result<Poly<C>> {
    check_square(m)?;
    let n = m.len();
    let vars = match m.first().and_then(|r| r.first()) {
        Some(p) => p.vars(),
        None => return Err(Error::InvalidArgument("empty matrix".into())),
    };
    let mut a: Vec<Vec<Poly<C>>> = m.to_vec();
    let mut negate = false;
    let mut prev = Poly::one(vars);
    for k in 0..n.saturating_sub(1) {
        // Pivot on the sparsest nonzero entry of column k.
        let pivot = (k..n)
            .filter(|&i| !a[i][k].is_zero())
            .min_by_key(|&i| a[i][k].num_terms());
        let Some(pr) = pivot else {
            return Ok(Poly::zero(vars));
        };
        if pr != k {
            a.swap(pr, k);
            negate = !negate;
        }
        let (top, rest) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in rest.iter_mut() {
            for j in k + 1..n {
                let num = &(&row[j] * &pivot_row[k]) - &(&row[k] * &pivot_row[j]);
                row[j] = if prev.is_constant() {
                    let c = prev.coeff(Default::default());
                    num.scale(&C::one().div_ref(&c))
                } else {
                    num.div_exact(&prev)?
                };
            }
            row[k] = Poly::zero(vars);
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if negate { -&d } else { d })
}

/// Laplace expansion along the first row.
pub fn det_cofactor<C: Coeff>(m: &[Vec<Poly<C>>]) -> Result<Poly<C>> {
    check_square(m)?;
    let n = m.len();
    if n == 0 {
        return Err(Error::InvalidArgument("empty matrix".into()));
    }
    let cols: Vec<usize> = (0..n).collect();
    Ok(cofactor_rec(m, 0, &cols))
}

fn cofactor_rec<C: Coeff>(m: &[Vec<Poly<C>>], row: usize, cols: &[usize]) -> Poly<C> {
    if cols.len() == 1 {
        return m[row][cols[0]].clone();
    }
    let vars = m[0][0].vars();
    let mut acc = Poly::zero(vars);
    for (k, &c) in cols.iter().enumerate() {
        if m[row][c].is_zero() {
            continue;
        }
        let sub: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let minor = cofactor_rec(m, row + 1, &sub);
        let term = &m[row][c] * &minor;
        acc = if k % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}
