//! Smith normal form of integer matrices over arbitrary-precision integers.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Diagonal of the Smith normal form: nonnegative elementary divisors with
/// each dividing the next, padded with zeros up to `min(rows, cols)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smith {
    pub diag: Vec<BigInt>,
    pub rows: usize,
    pub cols: usize,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.diag.iter().filter(|d| !d.is_zero()).count()
    }

    /// Elementary divisors different from 1 (the torsion part).
    pub fn nonunit_divisors(&self) -> Vec<BigInt> {
        self.diag
            .iter()
            .filter(|d| !d.is_zero() && **d != BigInt::from(1))
            .cloned()
            .collect()
    }
}

/// Computes the Smith normal form diagonal of `m` (rows x cols).
pub fn smith_normal_form(m: &[Vec<i64>]) -> Smith {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let n = rows.min(cols);
    let mut diag = vec![BigInt::zero(); n];

    let mut t = 0;
    while t < n {
        // Pivot: entry of least nonzero absolute value in the remaining block.
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero()
                    && pivot.map_or(true, |(pi, pj)| a[i][j].abs() < a[pi][pj].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else {
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }

        let mut dirty = true;
        while dirty {
            dirty = false;
            for i in (t + 1)..rows {
                if !a[i][t].is_zero() {
                    let q = &a[i][t] / &a[t][t];
                    for j in t..cols {
                        let s = &a[t][j] * &q;
                        a[i][j] -= s;
                    }
                    if !a[i][t].is_zero() {
                        a.swap(t, i);
                        dirty = true;
                    }
                }
            }
            for j in (t + 1)..cols {
                if !a[t][j].is_zero() {
                    let q = &a[t][j] / &a[t][t];
                    for row in a.iter_mut().take(rows).skip(t) {
                        let s = &row[t] * &q;
                        row[j] -= s;
                    }
                    if !a[t][j].is_zero() {
                        for row in a.iter_mut() {
                            row.swap(t, j);
                        }
                        dirty = true;
                    }
                }
            }
        }

        // Enforce divisibility: the pivot must divide every remaining entry.
        'fold: for i in (t + 1)..rows {
            for j in (t + 1)..cols {
                if (&a[i][j] % &a[t][t]) != BigInt::zero() {
                    for jj in t..cols {
                        let add = a[i][jj].clone();
                        a[t][jj] += add;
                    }
                    break 'fold;
                }
            }
        }
        if ((t + 1)..rows).any(|i| !a[i][t].is_zero())
            || ((t + 1)..cols).any(|j| !a[t][j].is_zero())
        {
            continue; // fold added a row back; re-clear the same pivot slot
        }

        diag[t] = a[t][t].abs();
        t += 1;
    }

    Smith { diag, rows, cols }
}
