//! One-sided Jacobi SVD for small dense matrices.
//!
//! The validator's data matrices are at most a few dozen rows by a
//! handful of columns, so a cyclic one-sided Jacobi sweep is both simple
//! and accurate: it rotates column pairs until all pairs are orthogonal,
//! after which the column norms are the singular values and the
//! accumulated rotations form V. Right singular vectors come out aligned
//! with the values, which is all the null-space test needs.

// Rotations update paired columns in lockstep; indexed loops are the
// clear form here.
#![allow(clippy::needless_range_loop)]

/// Convergence threshold on the normalized column correlation.
const TOL: f64 = 1.0e-15;
const MAX_SWEEPS: usize = 60;

/// Singular values in descending order with matching right singular
/// vectors (`right_vectors[k]` pairs with `singular_values[k]`).
#[derive(Clone, Debug)]
pub struct Svd {
    pub singular_values: Vec<f64>,
    pub right_vectors: Vec<Vec<f64>>,
}

/// Computes the SVD of a matrix given as a list of equal-length columns.
///
/// Panics if columns are empty or ragged; the caller (the validator)
/// guarantees shape.
pub fn jacobi_svd(columns: &[Vec<f64>]) -> Svd {
    let n = columns.len();
    assert!(n > 0, "jacobi_svd requires at least one column");
    let m = columns[0].len();
    assert!(columns.iter().all(|c| c.len() == m), "ragged columns");

    let mut a: Vec<Vec<f64>> = columns.to_vec();
    let mut v: Vec<Vec<f64>> = (0..n)
        .map(|j| (0..n).map(|i| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n.saturating_sub(1) {
            for q in (p + 1)..n {
                let mut app = 0.0;
                let mut aqq = 0.0;
                let mut apq = 0.0;
                for i in 0..m {
                    app += a[p][i] * a[p][i];
                    aqq += a[q][i] * a[q][i];
                    apq += a[p][i] * a[q][i];
                }
                if apq.abs() <= TOL * (app * aqq).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (aqq - app) / (2.0 * apq);
                let t = if zeta == 0.0 {
                    1.0
                } else {
                    zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for i in 0..m {
                    let (ap, aq) = (a[p][i], a[q][i]);
                    a[p][i] = c * ap - s * aq;
                    a[q][i] = s * ap + c * aq;
                }
                for i in 0..n {
                    let (vp, vq) = (v[p][i], v[q][i]);
                    v[p][i] = c * vp - s * vq;
                    v[q][i] = s * vp + c * vq;
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let norms: Vec<f64> = a.iter().map(|col| col.iter().map(|x| x * x).sum::<f64>().sqrt()).collect();
    order.sort_by(|&i, &j| norms[j].partial_cmp(&norms[i]).expect("finite singular values"));
    Svd {
        singular_values: order.iter().map(|&i| norms[i]).collect(),
        right_vectors: order.iter().map(|&i| v[i].clone()).collect(),
    }
}
