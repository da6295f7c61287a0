//! Dense simplex for packing programs `max c·y  s.t.  A y <= b, y >= 0`
//! with `b >= 0`, so the all-slack basis is feasible from the start.
//!
//! The tableau is kept in exchange (Tucker) form: row `i` reads
//! `basic_i = rhs_i - sum_j T[i][j] * nonbasic_j`, so it stays
//! `rows x cols` regardless of how many pivots happen. Bland's rule
//! guarantees termination on degenerate instances.


use crate::scalar::LpField;

#[derive(Debug, Clone, PartialEq)]
pub struct PackingSolution<F> {
    pub optimum: F,
    /// Optimal primal point (one entry per column).
    pub y: Vec<F>,
    /// Optimal dual point (one entry per row): `A^T x >= c`, `b·x = optimum`.
    pub duals: Vec<F>,
}

/// Solves the packing program. Returns `None` when it is unbounded, which
/// happens only if some column with positive cost has no positive entry.
pub fn solve_packing<F: LpField>(a: &[Vec<F>], b: &[F], c: &[F]) -> Option<PackingSolution<F>> {
    let m = a.len();
    let p = c.len();
    assert_eq!(b.len(), m);
    assert!(a.iter().all(|row| row.len() == p));
    assert!(b.iter().all(|x| !x.is_negative_tol()), "packing right-hand side must be >= 0");

    // Last column is the right-hand side; last row is the objective.
    let mut t: Vec<Vec<F>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| row.iter().cloned().chain(std::iter::once(bi.clone())).collect())
        .collect();
    t.push(c.iter().map(|cj| -cj.clone()).chain(std::iter::once(F::zero())).collect());

    // Labels: structural y_j -> j, slack of row i -> p + i.
    let mut col_label: Vec<usize> = (0..p).collect();
    let mut row_label: Vec<usize> = (p..p + m).collect();

    loop {
        let entering = (0..p)
            .filter(|&j| t[m][j].is_negative_tol())
            .min_by_key(|&j| col_label[j]);
        let Some(col) = entering else { break };

        let mut leave: Option<(usize, F)> = None;
        for i in 0..m {
            if !t[i][col].is_positive_tol() {
                continue;
            }
            let ratio = t[i][p].clone() / t[i][col].clone();
            leave = match leave {
                None => Some((i, ratio)),
                Some((r, best)) => {
                    if ratio < best || (ratio == best && row_label[i] < row_label[r]) {
                        Some((i, ratio))
                    } else {
                        Some((r, best))
                    }
                }
            };
        }
        let (row, _) = leave?;
        pivot(&mut t, row, col);
        std::mem::swap(&mut row_label[row], &mut col_label[col]);
    }

    let mut y = vec![F::zero(); p];
    for (i, &label) in row_label.iter().enumerate() {
        if label < p {
            y[label] = t[i][p].clone();
        }
    }
    let mut duals = vec![F::zero(); m];
    for (j, &label) in col_label.iter().enumerate() {
        if label >= p {
            duals[label - p] = t[m][j].clone();
        }
    }
    Some(PackingSolution { optimum: t[m][p].clone(), y, duals })
}

fn pivot<F: LpField>(t: &mut [Vec<F>], r: usize, c: usize) {
    let piv = t[r][c].clone();
    let inv = F::one() / piv;
    let width = t[r].len();
    for j in 0..width {
        if j != c {
            t[r][j] = t[r][j].clone() * inv.clone();
        }
    }
    t[r][c] = inv.clone();
    let pivot_row = t[r].clone();
    for (i, row) in t.iter_mut().enumerate() {
        if i == r || row[c].is_zero() {
            continue;
        }
        let factor = row[c].clone();
        for j in 0..width {
            if j != c {
                row[j] = row[j].clone() - factor.clone() * pivot_row[j].clone();
            }
        }
        row[c] = -(factor * inv.clone());
    }
}
