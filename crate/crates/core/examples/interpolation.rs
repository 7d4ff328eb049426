//! With as many hidden nodes as samples, an ELM fits its training targets
//! exactly whenever the hidden-layer matrix is invertible.
//!
//! Run with `cargo run --example interpolation`.

use diabetes_elm::numerics::{Matrix, Svd};
use diabetes_elm::{ActivationKind, ElmConfig, ElmModel};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> diabetes_elm::Result<()> {
    let n = 20;
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let x = Matrix::new(n, 16, (0..n * 16).map(|_| rng.gen_range(0.0..1.0)).collect())?;
    let labels: Vec<u8> = (0..n).map(|_| rng.gen_range(0..=1)).collect();

    for activation in [ActivationKind::Tanh, ActivationKind::Sine, ActivationKind::Gaussian, ActivationKind::MultiQuadric] {
        let config = ElmConfig {
            hidden_count: n,
            activation,
            seed: 1,
            ..ElmConfig::default()
        };
        let model = ElmModel::init_random(config, 16, &x)?;
        let cond = Svd::decompose(&model.hidden_matrix(&x)?)?.condition_number();
        let fitted = model.fit(&x, &labels)?;
        let residual = fitted
            .predict_scores(&x)?
            .iter()
            .zip(&labels)
            .map(|(s, &t)| (s - f64::from(t)).abs())
            .fold(0.0, f64::max);
        println!("{:<13} cond(H) = {cond:10.3e}  max |Hβ - t| = {residual:.3e}", activation.name());
    }
    Ok(())
}
