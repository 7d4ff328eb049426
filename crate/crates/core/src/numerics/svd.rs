//! Thin singular value decomposition by one-sided (Hestenes) Jacobi rotations.

use super::Matrix;
use crate::error::{ElmError, Result};

const MAX_SWEEPS: usize = 80;

/// Thin SVD `A = U diag(s) Vᵀ` with `k = min(rows, cols)` singular triplets,
/// sorted by decreasing singular value.
#[derive(Clone, Debug)]
pub struct Svd {
    /// Left singular vectors, one `rows`-long vector per triplet.
    pub u: Vec<Vec<f64>>,
    pub singular_values: Vec<f64>,
    /// Right singular vectors, one `cols`-long vector per triplet.
    pub v: Vec<Vec<f64>>,
}

impl Svd {
    pub fn decompose(a: &Matrix) -> Result<Svd> {
        if !a.as_slice().iter().all(|x| x.is_finite()) {
            return Err(ElmError::NonFinite);
        }
        if a.rows() >= a.cols() {
            Ok(jacobi_tall(a))
        } else {
            let t = jacobi_tall(&a.transpose());
            Ok(Svd {
                u: t.v,
                singular_values: t.singular_values,
                v: t.u,
            })
        }
    }

    pub fn max_singular_value(&self) -> f64 {
        self.singular_values.first().copied().unwrap_or(0.0)
    }

    /// Number of singular values above `rcond * σ_max`.
    pub fn rank(&self, rcond: f64) -> usize {
        let cutoff = rcond * self.max_singular_value();
        self.singular_values
            .iter()
            .filter(|&&s| s > cutoff && s > 0.0)
            .count()
    }

    /// Ratio of largest to smallest singular value (infinite when singular).
    pub fn condition_number(&self) -> f64 {
        let min = self.singular_values.last().copied().unwrap_or(0.0);
        if min == 0.0 {
            f64::INFINITY
        } else {
            self.max_singular_value() / min
        }
    }
}

/// Orthogonalizes the columns of a matrix with `rows >= cols`.
fn jacobi_tall(a: &Matrix) -> Svd {
    let (m, n) = a.shape();
    // column-major working copies
    let mut cols: Vec<Vec<f64>> = (0..n).map(|j| (0..m).map(|i| a.get(i, j)).collect()).collect();
    let mut v: Vec<Vec<f64>> = (0..n)
        .map(|j| {
            let mut e = vec![0.0; n];
            e[j] = 1.0;
            e
        })
        .collect();

    let tol = f64::EPSILON * m as f64;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha = dot(&cols[p], &cols[p]);
                let beta = dot(&cols[q], &cols[q]);
                let gamma = dot(&cols[p], &cols[q]);
                if gamma == 0.0 || gamma.abs() <= tol * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + zeta.hypot(1.0));
                let c = 1.0 / t.hypot(1.0);
                let s = c * t;
                rotate(&mut cols, p, q, c, s);
                rotate(&mut v, p, q, c, s);
            }
        }
        if !rotated {
            break;
        }
    }

    let mut triplets: Vec<(f64, Vec<f64>, Vec<f64>)> = cols
        .into_iter()
        .zip(v)
        .map(|(col, vj)| {
            let sigma = norm(&col);
            let u = if sigma > 0.0 {
                col.iter().map(|x| x / sigma).collect()
            } else {
                vec![0.0; m]
            };
            (sigma, u, vj)
        })
        .collect();
    triplets.sort_by(|a, b| b.0.total_cmp(&a.0));

    let mut svd = Svd {
        u: Vec::with_capacity(n),
        singular_values: Vec::with_capacity(n),
        v: Vec::with_capacity(n),
    };
    for (s, u, vj) in triplets {
        svd.singular_values.push(s);
        svd.u.push(u);
        svd.v.push(vj);
    }
    svd
}

fn rotate(vectors: &mut [Vec<f64>], p: usize, q: usize, c: f64, s: f64) {
    let (left, right) = vectors.split_at_mut(q);
    let (vp, vq) = (&mut left[p], &mut right[0]);
    for (x, y) in vp.iter_mut().zip(vq.iter_mut()) {
        let xp = *x;
        *x = c * xp - s * *y;
        *y = s * xp + c * *y;
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    let max = a.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    if max == 0.0 {
        return 0.0;
    }
    max * a.iter().map(|x| (x / max).powi(2)).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reconstruct(svd: &Svd, rows: usize, cols: usize) -> Matrix {
        let mut data = vec![0.0; rows * cols];
        for ((u, s), v) in svd.u.iter().zip(&svd.singular_values).zip(&svd.v) {
            for i in 0..rows {
                for j in 0..cols {
                    data[i * cols + j] += u[i] * s * v[j];
                }
            }
        }
        Matrix::new(rows, cols, data).unwrap()
    }

    #[test]
    fn reconstructs_tall_and_wide() {
        let tall = Matrix::from_rows(&[[1.0, 2.0], [3.0, 4.0], [5.0, 7.0]]).unwrap();
        let wide = tall.transpose();
        for m in [tall, wide] {
            let svd = Svd::decompose(&m).unwrap();
            let r = reconstruct(&svd, m.rows(), m.cols());
            assert!(r.sub(&m).unwrap().frobenius_norm() < 1e-13);
            assert!(svd.singular_values.windows(2).all(|w| w[0] >= w[1]));
        }
    }

    #[test]
    fn known_singular_values() {
        let m = Matrix::from_rows(&[[3.0, 0.0], [0.0, -4.0]]).unwrap();
        let svd = Svd::decompose(&m).unwrap();
        assert_eq!(svd.singular_values, vec![4.0, 3.0]);
        assert_eq!(svd.condition_number(), 4.0 / 3.0);
    }

    #[test]
    fn rank_deficient() {
        let m = Matrix::from_rows(&[[1.0, 2.0, 3.0], [2.0, 4.0, 6.0]]).unwrap();
        let svd = Svd::decompose(&m).unwrap();
        assert_eq!(svd.rank(1e-12), 1);
        assert!(svd.condition_number() > 1e12);
    }
}
