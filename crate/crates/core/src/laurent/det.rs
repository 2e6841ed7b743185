use super::{Block, LaurentPoly};
use crate::error::{Error, Result};
use crate::scalar::Field;
use std::collections::BTreeMap;

/// Dense matrix of scalar Laurent polynomials.
pub type LaurentMatrix<F> = Vec<Vec<LaurentPoly<F>>>;

/// Expands a matrix of block polynomials into scalar entries.
pub fn flatten<F: Field, B: Block<F>>(blocks: &[Vec<LaurentPoly<B>>]) -> LaurentMatrix<F> {
    let d = B::DIM;
    let mut out = Vec::with_capacity(blocks.len() * d);
    for row in blocks {
        for i in 0..d {
            out.push(
                row.iter()
                    .flat_map(|p| (0..d).map(move |j| p.entry(i, j)))
                    .collect(),
            );
        }
    }
    out
}

fn check_square<T>(m: &[Vec<T>]) -> Result<usize> {
    let n = m.len();
    if let Some(r) = m.iter().find(|r| r.len() != n) {
        return Err(Error::NonSquare {
            rows: n,
            cols: r.len(),
        });
    }
    Ok(n)
}

/// Determinant of a square block polynomial matrix.
pub fn det_block<F: Field, B: Block<F>>(blocks: &[Vec<LaurentPoly<B>>]) -> Result<LaurentPoly<F>> {
    check_square(blocks)?;
    det(&flatten(blocks))
}

/// Determinant of a square scalar Laurent matrix.
///
/// Exact fields use elimination over the Laurent ring on monomial pivots
/// (which are units, so no fractions arise) and finish the remaining core by
/// cofactor expansion or interpolation. Inexact fields evaluate at roots of
/// unity and interpolate.
pub fn det<F: Field>(m: &LaurentMatrix<F>) -> Result<LaurentPoly<F>> {
    check_square(m)?;
    if F::EXACT {
        det_unit_pivot(m)
    } else {
        det_interpolate(m)
    }
}

/// Cofactor expansion along the first row. Exponential; meant as an oracle
/// for small matrices.
pub fn det_cofactor<F: Field>(m: &LaurentMatrix<F>) -> Result<LaurentPoly<F>> {
    let n = check_square(m)?;
    let rows: Vec<usize> = (0..n).collect();
    let cols: Vec<usize> = (0..n).collect();
    Ok(laplace(m, &rows, &cols))
}

fn laplace<F: Field>(m: &LaurentMatrix<F>, rows: &[usize], cols: &[usize]) -> LaurentPoly<F> {
    match rows.len() {
        0 => LaurentPoly::constant(F::one()),
        1 => m[rows[0]][cols[0]].clone(),
        2 => {
            m[rows[0]][cols[0]].clone() * m[rows[1]][cols[1]].clone()
                - m[rows[0]][cols[1]].clone() * m[rows[1]][cols[0]].clone()
        }
        _ => {
            let mut acc = LaurentPoly::zero();
            for (k, &c) in cols.iter().enumerate() {
                let a = &m[rows[0]][c];
                if a.is_zero() {
                    continue;
                }
                let sub_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                let minor = a.clone() * laplace(m, &rows[1..], &sub_cols);
                acc = if k % 2 == 0 { acc + minor } else { acc - minor };
            }
            acc
        }
    }
}

/// Evaluation at `deg + 1` nodes followed by interpolation.
pub fn det_interpolate<F: Field>(m: &LaurentMatrix<F>) -> Result<LaurentPoly<F>> {
    let n = check_square(m)?;
    if n == 0 {
        return Ok(LaurentPoly::constant(F::one()));
    }
    let row_span = |i: usize| span_of(m[i].iter());
    let col_span = |j: usize| span_of(m.iter().map(|r| &r[j]));
    let rows: Vec<_> = (0..n).map(row_span).collect();
    let cols: Vec<_> = (0..n).map(col_span).collect();
    if rows.iter().any(|r| r.is_none()) || cols.iter().any(|c| c.is_none()) {
        return Ok(LaurentPoly::zero());
    }
    let by_rows: i64 = rows.iter().map(|r| r.unwrap().1 - r.unwrap().0).sum();
    let by_cols: i64 = cols.iter().map(|c| c.unwrap().1 - c.unwrap().0).sum();
    // shift each row (or column) so that its entries are polynomials
    let use_rows = by_rows <= by_cols;
    let shifts: Vec<i64> = if use_rows {
        rows.iter().map(|r| r.unwrap().0).collect()
    } else {
        cols.iter().map(|c| c.unwrap().0).collect()
    };
    let bound = if use_rows { by_rows } else { by_cols } as usize;
    let shifted: LaurentMatrix<F> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| m[i][j].shift(-shifts[if use_rows { i } else { j }]))
                .collect()
        })
        .collect();
    let nodes = F::interpolation_nodes(bound + 1);
    let mut values = Vec::with_capacity(nodes.len());
    for x in &nodes {
        let a: Vec<Vec<F>> = shifted
            .iter()
            .map(|r| r.iter().map(|p| p.eval(x)).collect::<Result<_>>())
            .collect::<Result<_>>()?;
        values.push(det_scalar(a));
    }
    let coeffs = F::interpolate(&values)?;
    Ok(LaurentPoly::new(shifts.iter().sum(), coeffs))
}

fn span_of<'a, F: Field + 'a>(it: impl Iterator<Item = &'a LaurentPoly<F>>) -> Option<(i64, i64)> {
    let mut out: Option<(i64, i64)> = None;
    for p in it {
        if let (Some(lo), Some(hi)) = (p.min_exp(), p.max_exp()) {
            out = Some(match out {
                None => (lo, hi),
                Some((a, b)) => (a.min(lo), b.max(hi)),
            });
        }
    }
    out
}

fn det_unit_pivot<F: Field>(m: &LaurentMatrix<F>) -> Result<LaurentPoly<F>> {
    let n = m.len();
    let mut rows: Vec<BTreeMap<usize, LaurentPoly<F>>> = m
        .iter()
        .map(|r| {
            r.iter()
                .enumerate()
                .filter(|(_, p)| !p.is_zero())
                .map(|(j, p)| (j, p.clone()))
                .collect()
        })
        .collect();
    let mut row_alive = vec![true; n];
    let mut col_alive = vec![true; n];
    let mut acc = LaurentPoly::constant(F::one());
    let mut negate = false;
    loop {
        let mut col_count = vec![0usize; n];
        for (i, r) in rows.iter().enumerate() {
            if row_alive[i] {
                for &j in r.keys() {
                    col_count[j] += 1;
                }
            }
        }
        if (0..n).any(|i| row_alive[i] && rows[i].is_empty())
            || (0..n).any(|j| col_alive[j] && col_count[j] == 0)
        {
            return Ok(LaurentPoly::zero());
        }
        let mut best: Option<(usize, usize, usize)> = None;
        for (i, r) in rows.iter().enumerate() {
            if !row_alive[i] {
                continue;
            }
            for (&j, p) in r {
                if p.is_monomial() {
                    let cost = (r.len() - 1) * (col_count[j] - 1);
                    if best.is_none_or(|b| cost < b.2) {
                        best = Some((i, j, cost));
                    }
                }
            }
        }
        let Some((pr, pc, _)) = best else { break };
        let pos_r = (0..pr).filter(|&i| row_alive[i]).count();
        let pos_c = (0..pc).filter(|&j| col_alive[j]).count();
        if (pos_r + pos_c) % 2 == 1 {
            negate = !negate;
        }
        let pivot_row = std::mem::take(&mut rows[pr]);
        let p = pivot_row[&pc].clone();
        let e = p.min_exp().unwrap();
        let c_inv = p.trailing().unwrap().inv()?;
        for i in 0..n {
            if !row_alive[i] || i == pr {
                continue;
            }
            let Some(a) = rows[i].remove(&pc) else {
                continue;
            };
            let factor = a.map(|x| x.clone() * c_inv.clone()).shift(-e);
            for (&j, v) in &pivot_row {
                if j == pc {
                    continue;
                }
                let updated = rows[i].remove(&j).unwrap_or_else(LaurentPoly::zero)
                    - factor.clone() * v.clone();
                if !updated.is_zero() {
                    rows[i].insert(j, updated);
                }
            }
        }
        acc = acc * p;
        row_alive[pr] = false;
        col_alive[pc] = false;
    }
    let live_rows: Vec<usize> = (0..n).filter(|&i| row_alive[i]).collect();
    let live_cols: Vec<usize> = (0..n).filter(|&j| col_alive[j]).collect();
    let core: LaurentMatrix<F> = live_rows
        .iter()
        .map(|&i| {
            live_cols
                .iter()
                .map(|j| rows[i].get(j).cloned().unwrap_or_else(LaurentPoly::zero))
                .collect()
        })
        .collect();
    let core_det = if core.len() <= 4 {
        det_cofactor(&core)?
    } else {
        det_interpolate(&core)?
    };
    let out = acc * core_det;
    Ok(if negate { -out } else { out })
}

/// Determinant of a scalar matrix by Gaussian elimination with partial pivoting.
pub fn det_scalar<F: Field>(mut a: Vec<Vec<F>>) -> F {
    let n = a.len();
    let mut det = F::one();
    for c in 0..n {
        let p = (c..n).filter(|&i| !a[i][c].is_zero()).max_by(|&i, &j| {
            a[i][c]
                .norm()
                .partial_cmp(&a[j][c].norm())
                .unwrap_or(std::cmp::Ordering::Equal)
        });
        let Some(p) = p else { return F::zero() };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        let inv = a[c][c].inv().expect("nonzero pivot");
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone() * inv.clone();
            for j in c..n {
                let v = f.clone() * a[c][j].clone();
                a[i][j] = a[i][j].clone() - v;
            }
        }
        det = det * a[c][c].clone();
    }
    det
}

/// Solves `a x = b` by Gaussian elimination with partial pivoting.
pub fn solve<F: Field>(mut a: Vec<Vec<F>>, mut b: Vec<F>) -> Result<Vec<F>> {
    let n = a.len();
    for c in 0..n {
        let p = (c..n)
            .filter(|&i| !a[i][c].is_zero())
            .max_by(|&i, &j| {
                a[i][c]
                    .norm()
                    .partial_cmp(&a[j][c].norm())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
            .ok_or(Error::DivisionByZero)?;
        a.swap(p, c);
        b.swap(p, c);
        let inv = a[c][c].inv()?;
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone() * inv.clone();
            for j in c..n {
                let v = f.clone() * a[c][j].clone();
                a[i][j] = a[i][j].clone() - v;
            }
            let v = f * b[c].clone();
            b[i] = b[i].clone() - v;
        }
    }
    let mut x = vec![F::zero(); n];
    for i in (0..n).rev() {
        let mut s = b[i].clone();
        for j in i + 1..n {
            s = s - a[i][j].clone() * x[j].clone();
        }
        x[i] = s * a[i][i].inv()?;
    }
    Ok(x)
}

/// Convenience: determinant of a 2x2 block polynomial (a single block entry).
pub fn det2<F: Field>(p: &LaurentPoly<super::Mat2<F>>) -> LaurentPoly<F> {
    let (a, b, c, d) = (p.entry(0, 0), p.entry(0, 1), p.entry(1, 0), p.entry(1, 1));
    a * d - b * c
}
