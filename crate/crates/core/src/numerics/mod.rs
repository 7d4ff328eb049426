//! Dense linear algebra backing the output-weight solve: a small row-major
//! [`Matrix`], a Jacobi [`Svd`], the Moore–Penrose pseudoinverse and a
//! minimum-norm (optionally ridge-regularized) least-squares solver.

mod matrix;
mod svd;

pub use matrix::Matrix;
pub use svd::Svd;

use crate::error::{ElmError, Result};

/// Relative singular-value cutoff used when none is given.
pub const DEFAULT_RCOND: f64 = 1e-12;

fn check_nonneg(name: &str, value: f64) -> Result<()> {
    if value.is_finite() && value >= 0.0 {
        Ok(())
    } else {
        Err(ElmError::InvalidConfig(format!(
            "{name} must be a finite nonnegative number, got {value}"
        )))
    }
}

/// Moore–Penrose pseudoinverse of `m` (shape `cols x rows`).
///
/// Singular values `<= rcond * σ_max` are treated as zero.
pub fn pseudoinverse(m: &Matrix, rcond: f64) -> Result<Matrix> {
    check_nonneg("rcond", rcond)?;
    let svd = Svd::decompose(m)?;
    let (rows, cols) = m.shape();
    let cutoff = rcond * svd.max_singular_value();
    let mut data = vec![0.0; cols * rows];
    for ((u, &s), v) in svd.u.iter().zip(&svd.singular_values).zip(&svd.v) {
        if s <= cutoff || s == 0.0 {
            continue;
        }
        for (i, &vi) in v.iter().enumerate() {
            let coeff = vi / s;
            let out = &mut data[i * rows..(i + 1) * rows];
            for (o, &uj) in out.iter_mut().zip(u) {
                *o += coeff * uj;
            }
        }
    }
    Matrix::new(cols, rows, data)
}

/// Least-squares output weights with the default cutoff, see [`lstsq_solve_rcond`].
pub fn lstsq_solve(h: &Matrix, t: &Matrix, ridge: f64) -> Result<Matrix> {
    lstsq_solve_rcond(h, t, ridge, DEFAULT_RCOND)
}

/// Solves `min ‖Hβ − T‖` for `β` (`L x k`).
///
/// With `ridge == 0` this is the minimum-norm solution `β = H†T`. With
/// `ridge > 0` it returns `(HᵀH + ridge·I)⁻¹HᵀT`, evaluated through the SVD
/// as `V diag(σ / (σ² + ridge)) UᵀT`.
pub fn lstsq_solve_rcond(h: &Matrix, t: &Matrix, ridge: f64, rcond: f64) -> Result<Matrix> {
    if h.rows() != t.rows() {
        return Err(ElmError::IncompatibleShapes(format!(
            "design matrix has {} rows, targets have {}",
            h.rows(),
            t.rows()
        )));
    }
    check_nonneg("ridge", ridge)?;
    check_nonneg("rcond", rcond)?;
    let svd = Svd::decompose(h)?;
    if !t.as_slice().iter().all(|x| x.is_finite()) {
        return Err(ElmError::NonFinite);
    }

    let (l, k) = (h.cols(), t.cols());
    let cutoff = rcond * svd.max_singular_value();
    let mut beta = vec![0.0; l * k];
    for ((u, &s), v) in svd.u.iter().zip(&svd.singular_values).zip(&svd.v) {
        let gain = if ridge > 0.0 {
            s / (s * s + ridge)
        } else if s > cutoff && s > 0.0 {
            1.0 / s
        } else {
            continue;
        };
        // uᵀT, one entry per target column
        let mut proj = vec![0.0; k];
        for (i, &ui) in u.iter().enumerate() {
            for (p, &tv) in proj.iter_mut().zip(t.row(i)) {
                *p += ui * tv;
            }
        }
        for (r, &vr) in v.iter().enumerate() {
            for (c, &p) in proj.iter().enumerate() {
                beta[r * k + c] += vr * gain * p;
            }
        }
    }
    Matrix::new(l, k, beta)
}

#[cfg(test)]
pub(crate) mod test_support {
    use super::Matrix;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    pub fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Matrix {
        let data = (0..rows * cols).map(|_| rng.gen_range(-1.0..1.0)).collect();
        Matrix::new(rows, cols, data).unwrap()
    }

    pub fn seeded(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    /// Dense Gaussian elimination with partial pivoting; independent of the SVD path.
    pub fn solve_dense(a: &Matrix, b: &Matrix) -> Matrix {
        let n = a.rows();
        let k = b.cols();
        let mut aug: Vec<Vec<f64>> = (0..n)
            .map(|i| a.row(i).iter().chain(b.row(i)).copied().collect())
            .collect();
        for col in 0..n {
            let piv = (col..n)
                .max_by(|&x, &y| aug[x][col].abs().total_cmp(&aug[y][col].abs()))
                .unwrap();
            aug.swap(col, piv);
            let (upper, lower) = aug.split_at_mut(col + 1);
            let pivot_row = &upper[col];
            for row in lower.iter_mut().take(n - col - 1) {
                let f = row[col] / pivot_row[col];
                for (a, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                    *a -= f * p;
                }
            }
        }
        let mut x = vec![0.0; n * k];
        for c in 0..k {
            for r in (0..n).rev() {
                let mut acc = aug[r][n + c];
                for j in r + 1..n {
                    acc -= aug[r][j] * x[j * k + c];
                }
                x[r * k + c] = acc / aug[r][r];
            }
        }
        Matrix::new(n, k, x).unwrap()
    }

    /// `(HᵀH + ridge·I)⁻¹ HᵀT` by explicit normal equations.
    pub fn normal_equations(h: &Matrix, t: &Matrix, ridge: f64) -> Matrix {
        let ht = h.transpose();
        let gram = ht.matmul(h).unwrap();
        let reg = gram.add(&Matrix::identity(h.cols()).scale(ridge).unwrap()).unwrap();
        solve_dense(&reg, &ht.matmul(t).unwrap())
    }

    /// Largest relative residual among the four Penrose conditions.
    pub fn penrose_error(m: &Matrix, p: &Matrix) -> f64 {
        let rel = |a: &Matrix, b: &Matrix| {
            let scale = b.frobenius_norm().max(f64::MIN_POSITIVE);
            a.sub(b).unwrap().frobenius_norm() / scale
        };
        let mp = m.matmul(p).unwrap();
        let pm = p.matmul(m).unwrap();
        let c1 = rel(&mp.matmul(m).unwrap(), m);
        let c2 = if p.max_abs() == 0.0 {
            0.0
        } else {
            rel(&pm.matmul(p).unwrap(), p)
        };
        let c3 = if mp.max_abs() == 0.0 { 0.0 } else { rel(&mp.transpose(), &mp) };
        let c4 = if pm.max_abs() == 0.0 { 0.0 } else { rel(&pm.transpose(), &pm) };
        c1.max(c2).max(c3).max(c4)
    }
}

#[cfg(test)]
mod tests {
    use super::test_support::*;
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn pinv_identity() {
        let p = pseudoinverse(&Matrix::identity(2), 1e-12).unwrap();
        assert_eq!(p, Matrix::identity(2));
    }

    #[test]
    fn pinv_diagonal_inverts_nonzero_entries() {
        let m = Matrix::diagonal(&[2.0, 0.0]).unwrap();
        let p = pseudoinverse(&m, 1e-12).unwrap();
        assert_eq!(p, Matrix::diagonal(&[0.5, 0.0]).unwrap());
    }

    #[test]
    fn pinv_random_3x2_satisfies_penrose() {
        let m = random_matrix(&mut seeded(7), 3, 2);
        let p = pseudoinverse(&m, 1e-12).unwrap();
        assert_eq!(p.shape(), (2, 3));
        assert!(penrose_error(&m, &p) < 1e-8);
    }

    #[test]
    fn pinv_of_zero_matrix_is_zero() {
        let p = pseudoinverse(&Matrix::zeros(3, 2), 1e-12).unwrap();
        assert_eq!(p, Matrix::zeros(2, 3));
    }

    #[test]
    fn pinv_rejects_bad_rcond() {
        assert!(matches!(
            pseudoinverse(&Matrix::identity(2), -1.0),
            Err(ElmError::InvalidConfig(_))
        ));
    }

    #[test]
    fn lstsq_identity_design() {
        let v = Matrix::column(&[1.5, -2.0, 0.25]).unwrap();
        let beta = lstsq_solve(&Matrix::identity(3), &v, 0.0).unwrap();
        assert_eq!(beta, v);
    }

    #[test]
    fn lstsq_constant_column_gives_mean() {
        let h = Matrix::column(&[1.0, 1.0, 1.0]).unwrap();
        let t = Matrix::column(&[1.0, 2.0, 3.0]).unwrap();
        let beta = lstsq_solve(&h, &t, 0.0).unwrap();
        assert!((beta.get(0, 0) - 2.0).abs() < 1e-14);
    }

    #[test]
    fn lstsq_matches_normal_equations() {
        let mut rng = seeded(11);
        let h = random_matrix(&mut rng, 5, 3);
        let t = random_matrix(&mut rng, 5, 1);
        let beta = lstsq_solve(&h, &t, 0.0).unwrap();
        let oracle = normal_equations(&h, &t, 0.0);
        assert!(beta.sub(&oracle).unwrap().max_abs() < 1e-8);
    }

    #[test]
    fn ridge_matches_regularized_normal_equations() {
        let mut rng = seeded(12);
        for (rows, cols) in [(8, 3), (3, 6)] {
            let h = random_matrix(&mut rng, rows, cols);
            let t = random_matrix(&mut rng, rows, 2);
            let beta = lstsq_solve(&h, &t, 0.3).unwrap();
            let oracle = normal_equations(&h, &t, 0.3);
            assert!(beta.sub(&oracle).unwrap().max_abs() < 1e-10);
        }
    }

    #[test]
    fn lstsq_shape_errors() {
        let h = Matrix::identity(3);
        let t = Matrix::column(&[1.0, 2.0]).unwrap();
        let err = lstsq_solve(&h, &t, 0.0).unwrap_err();
        assert!(err.to_string().starts_with("incompatible shapes"));
    }

    #[test]
    fn minimum_norm_on_rank_deficient_design() {
        // columns 0 and 2 are identical, null space spanned by (1, 0, -1)
        let h = Matrix::from_rows(&[[1.0, 2.0, 1.0], [0.0, 1.0, 0.0], [3.0, -1.0, 3.0], [1.0, 1.0, 1.0]])
            .unwrap();
        let t = Matrix::column(&[1.0, 0.0, 2.0, -1.0]).unwrap();
        let beta = lstsq_solve(&h, &t, 0.0).unwrap();
        let res = h.matmul(&beta).unwrap().sub(&t).unwrap().frobenius_norm();
        let null = Matrix::column(&[1.0, 0.0, -1.0]).unwrap();
        for step in [-1.0, -0.1, 0.01, 0.5, 3.0] {
            let other = beta.add(&null.scale(step).unwrap()).unwrap();
            let other_res = h.matmul(&other).unwrap().sub(&t).unwrap().frobenius_norm();
            assert!((other_res - res).abs() < 1e-10);
            assert!(other.frobenius_norm() > beta.frobenius_norm());
        }
    }

    fn matrix_strategy(max: usize) -> impl Strategy<Value = Matrix> {
        (1..=max, 1..=max, any::<u64>(), 0usize..3).prop_map(|(r, c, seed, kind)| {
            let mut rng = seeded(seed);
            match kind {
                // low-rank product
                0 if r.min(c) > 1 => {
                    let k = 1 + (seed as usize) % (r.min(c) - 1);
                    let a = random_matrix(&mut rng, r, k);
                    let b = random_matrix(&mut rng, k, c);
                    a.matmul(&b).unwrap()
                }
                // widely varying scales
                1 => {
                    let m = random_matrix(&mut rng, r, c);
                    let scale = 10f64.powi((seed % 9) as i32 - 4);
                    m.scale(scale).unwrap()
                }
                _ => random_matrix(&mut rng, r, c),
            }
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn penrose_conditions(m in matrix_strategy(20)) {
            let p = pseudoinverse(&m, 1e-12).unwrap();
            prop_assert_eq!(p.shape(), (m.cols(), m.rows()));
            prop_assert!(penrose_error(&m, &p) < 1e-8);
        }

        #[test]
        fn residual_is_orthogonal_to_columns(h in matrix_strategy(12), seed in any::<u64>()) {
            let t = random_matrix(&mut seeded(seed), h.rows(), 2);
            let beta = lstsq_solve(&h, &t, 0.0).unwrap();
            let resid = h.matmul(&beta).unwrap().sub(&t).unwrap();
            let grad = h.transpose().matmul(&resid).unwrap();
            let scale = h.frobenius_norm() * t.frobenius_norm();
            prop_assert!(grad.max_abs() <= 1e-8 * scale.max(1.0));
        }

        #[test]
        fn square_full_rank_involution(n in 1usize..12, seed in any::<u64>()) {
            let mut rng = seeded(seed);
            let m = random_matrix(&mut rng, n, n).add(&Matrix::identity(n).scale(2.0).unwrap()).unwrap();
            let back = pseudoinverse(&pseudoinverse(&m, 1e-12).unwrap(), 1e-12).unwrap();
            prop_assert!(back.sub(&m).unwrap().max_abs() < 1e-6);
        }
    }
}
