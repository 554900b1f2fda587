//! Exact stationary law from detailed balance:
//! `cargo run --example stationary_law`.

use eps_sis::exact::stationary_distribution;
use eps_sis::ModelParams;

fn main() -> eps_sis::Result<()> {
    for n in [100usize, 400, 1600] {
        let p = ModelParams::new(1.0, 2.0, 0.5, n)?;
        let pi = stationary_distribution(&p);
        let center = p.derived().x_star * n as f64;
        let sd = pi.variance().sqrt();
        println!(
            "N={n:5}: mean={:9.3} (x*N = {center:9.3})  sd={sd:7.3}  sd/sqrt(N)={:.4}  mass within 2 sd: {:.4}",
            pi.mean(),
            sd / (n as f64).sqrt(),
            pi.mass_within(center, 2.0 * sd),
        );
    }
    Ok(())
}
