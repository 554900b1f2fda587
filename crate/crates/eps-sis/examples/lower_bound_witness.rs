//! Exact separation witness shortly before the cutoff time:
//! `cargo run --example lower_bound_witness`.
//!
//! Started slightly above the fixed point, the chain's law at t_N - xi
//! still sits almost entirely outside the ball that carries 95% of the
//! stationary mass, so the worst-case TV distance is still near 1.

use eps_sis::experiments::lower_bound_witness;
use eps_sis::ModelParams;

fn main() -> eps_sis::Result<()> {
    let n = 1000;
    let p = ModelParams::new(1.0, 2.0, 0.5, n)?;
    println!("N = {n}, t_N = {:.4}", p.derived().t_n);
    println!(
        "{:>5} {:>8} {:>10} {:>14} {:>12}",
        "xi", "t", "TV", "mass in ball", "ball radius"
    );
    for xi in [0.5, 1.0, 1.5, 1.6] {
        let rep = lower_bound_witness(&p, xi, None)?;
        println!(
            "{xi:5.2} {:8.4} {:10.5} {:14.6} {:12.2}",
            rep.t_eval, rep.tv, rep.mass_in_ball, rep.ball_radius
        );
    }
    Ok(())
}
