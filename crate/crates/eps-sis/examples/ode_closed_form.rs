//! The mean-field solution, its exponential envelope, and the perturbed
//! mean envelopes: `cargo run --example ode_closed_form`.

use eps_sis::deterministic::{decay_bound, mean_envelope, ode_solution};
use eps_sis::ModelParams;

fn main() -> eps_sis::Result<()> {
    let p = ModelParams::new(1.0, 2.0, 0.5, 1000)?;
    let xs = p.derived().x_star;

    println!("solution from an empty epidemic (alpha = 0):");
    println!("{:>6} {:>12} {:>12} {:>12}", "t", "x(t)", "|x-x*|", "bound");
    for i in 0..=8 {
        let t = i as f64 * 0.5;
        let x = ode_solution(&p, 0.0, t)?;
        let bound = decay_bound(&p, 0.0 - xs, t)?;
        println!("{t:6.2} {x:12.8} {:12.3e} {bound:12.3e}", (x - xs).abs());
    }

    println!("\nmean envelopes around the fixed point (delta = 0.02, y0 = 0.15):");
    for i in 0..=5 {
        let t = i as f64 * 0.6;
        let e = mean_envelope(&p, 0.15, 0.02, t)?;
        println!("t={t:4.1}  lower={:12.8}  upper={:12.8}", e.lower, e.upper);
    }
    Ok(())
}
