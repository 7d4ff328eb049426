//! Moore-Penrose pseudoinverse and least-squares solves on small matrices.
//!
//! Run with `cargo run --example pseudoinverse`.

use diabetes_elm::numerics::{lstsq_solve, pseudoinverse, Matrix, Svd, DEFAULT_RCOND};

fn main() -> diabetes_elm::Result<()> {
    // rank 1: the second column is twice the first
    let a = Matrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 4.0], vec![3.0, 6.0]])?;
    let svd = Svd::decompose(&a)?;
    println!("A = {a:?}");
    println!("singular values {:?}, rank {}", svd.singular_values, svd.rank(DEFAULT_RCOND));

    let p = pseudoinverse(&a, DEFAULT_RCOND)?;
    println!("pinv(A) = {p:?}");
    let apa = a.matmul(&p)?.matmul(&a)?;
    println!("|A pinv(A) A - A| = {:.2e}", apa.sub(&a)?.frobenius_norm());

    // overdetermined line fit y = c0 + c1 x
    let x = Matrix::from_rows(&[vec![1.0, 0.0], vec![1.0, 1.0], vec![1.0, 2.0], vec![1.0, 3.0]])?;
    let y = Matrix::column(&[1.1, 2.9, 5.2, 6.8])?;
    let coef = lstsq_solve(&x, &y, 0.0)?;
    println!("least squares intercept {:.4}, slope {:.4}", coef[(0, 0)], coef[(1, 0)]);
    let ridge = lstsq_solve(&x, &y, 0.5)?;
    println!("ridge (0.5)   intercept {:.4}, slope {:.4}", ridge[(0, 0)], ridge[(1, 0)]);
    Ok(())
}
