//! Closed-form constants of the chain: run with
//! `cargo run --example derived_constants`.

use eps_sis::ModelParams;

fn main() -> eps_sis::Result<()> {
    println!("lambda=1, mu=2, epsilon=0.5:");
    for n in [100usize, 1000, 10_000] {
        let d = ModelParams::new(1.0, 2.0, 0.5, n)?.derived();
        println!(
            "  N={n:6}  J={:.6}  x*={:.6}  x1*={:.6}  t_N={:.6}  k={:.6}",
            d.j, d.x_star, d.x1_star, d.t_n, d.k
        );
    }

    // The fixed point solves lambda x(1-x) + eps(1-x) - mu x = 0.
    let p = ModelParams::new(1.0, 2.0, 0.5, 1000)?;
    let x = p.derived().x_star;
    let drift = p.lambda() * x * (1.0 - x) + p.epsilon() * (1.0 - x) - p.mu() * x;
    println!("drift at x*: {drift:e}");

    // Generator rows at the boundaries and the middle.
    for s in [0usize, 500, 1000] {
        let row = p.generator_row(s)?;
        println!("row {s:4}: down={:9.2} up={:9.2} diag={:10.2}", row.down, row.up, row.diag);
    }
    Ok(())
}
