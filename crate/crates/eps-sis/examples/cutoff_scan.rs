//! A small exact cutoff scan: `cargo run --release --example cutoff_scan`.
//!
//! Mixing times t_mix(N, delta) across N, the fitted slope of
//! t_mix(., 0.25) against log N versus the predicted 1/(2J), and the
//! window widths. The acceptance-scale scan (N up to 1600) lives in the
//! test suite; this one keeps N small so it also runs quickly unoptimized.

use eps_sis::experiments::{cutoff_scan, CutoffOptions};
use eps_sis::ModelParams;

fn main() -> eps_sis::Result<()> {
    let p = ModelParams::new(1.0, 2.0, 0.5, 1)?;
    let report = cutoff_scan(
        &p,
        &[100, 200, 400],
        &[0.9, 0.75, 0.5, 0.25, 0.1],
        &CutoffOptions::default(),
    )?;

    println!("levels: {:?}", report.delta_levels);
    for row in &report.rows {
        println!(
            "N={:4}: t_mix={:?}  window={:.4}  t_N={:.4}",
            row.n,
            row.t_mix.iter().map(|t| (t * 1e4).round() / 1e4).collect::<Vec<_>>(),
            row.window,
            row.t_n
        );
    }
    println!(
        "fitted slope at level {}: {:.5}  (predicted 1/(2J) = {:.5})",
        report.fit_level, report.fitted_slope, report.predicted_slope
    );
    println!("window ratio (largest/smallest N): {:.4}", report.window_ratio);
    Ok(())
}
